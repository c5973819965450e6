use hamgen::generate::{generate_parallel, GenConfig, GenMode};
use hamgen::graph::Graph;
use std::time::Instant;

fn main() {
    let kind = std::env::args().nth(1).unwrap_or_default();
    let n: usize = std::env::args().nth(2).unwrap().parse().unwrap();
    let t = Instant::now();
    let mut cfg = GenConfig::new(n, GenMode::ExactlyOne);
    match kind.as_str() {
        "nc" => cfg.nearly_cubic = true,
        "g5" => {
            cfg.girth_min = Some(5);
            cfg.filters.min_degree = Some(3);
        }
        _ => panic!(),
    }
    let stats = generate_parallel(&cfg, 2, |_| |_: &Graph| {}).unwrap();
    println!(
        "{kind} n={n}: emitted={} nodes={} in {:.0}s",
        stats.emitted,
        stats.nodes,
        t.elapsed().as_secs_f64()
    );
}
