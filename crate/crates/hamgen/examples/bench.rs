use hamgen::generate::{generate, GenConfig, GenMode};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(9);
    let mode = match args.get(2).map(|s| s.as_str()) {
        Some("nonham") => GenMode::NonHamiltonian,
        Some("all") => GenMode::Unrestricted,
        Some(k) if k.starts_with("atmost") => GenMode::AtMost(k[6..].parse().unwrap()),
        _ => GenMode::ExactlyOne,
    };
    let mut cfg = GenConfig::new(n, mode);
    if let Some(g) = args.get(3) {
        if let Ok(g) = g.parse() {
            cfg.girth_min = Some(g);
        }
    }
    let t = Instant::now();
    let stats = generate(&cfg, |_| {}).unwrap();
    println!(
        "n={n} mode={mode:?} emitted={} nodes={} in {:.2}s ({:.0} nodes/s)",
        stats.emitted,
        stats.nodes,
        t.elapsed().as_secs_f64(),
        stats.nodes as f64 / t.elapsed().as_secs_f64()
    );
}
