//! Batch driver: generation to graph6 streams, per-line cycle counting,
//! and verification suites.
//!
//! Graphs go to standard output; run reports go to standard error. Exit
//! codes: 0 success, 1 internal assertion or failed verification, 2 usage
//! error.

use std::io::{self, BufRead, Write};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hamgen::generate::{self, GenConfig, GenMode, GenStats, OutputFilters, Split};
use hamgen::graph::Graph;
use hamgen::verify::{run_suite, Suite};
use hamgen::{graph6, hamilton};

/// Worker-count environment variable consulted by `generate`.
const WORKERS_ENV: &str = "HAMGEN_WORKERS";

#[derive(Parser)]
#[command(
    name = "hamgen",
    version,
    about = "Exhaustive isomorph-free generation of graphs with a prescribed number of hamiltonian cycles"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate one representative per isomorphism class and stream them
    /// to standard output.
    Generate(GenerateArgs),
    /// Count hamiltonian cycles for each graph6 line on standard input.
    CountHc {
        /// Saturate the count here and print ">=cap" when cut off.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run a verification suite and report machine-readable pass/fail.
    Verify {
        /// One of: bondy-jackson, thomassen, sheehan, cantoni, parity,
        /// extremal, schwenk, oracle.
        suite: String,
        /// Largest order the suite should cover.
        #[arg(long = "max-n")]
        max_n: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Adj,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of vertices.
    #[arg(short = 'n', long = "order")]
    n: usize,

    /// Exactly this many hamiltonian cycles (0 selects the
    /// non-hamiltonian family).
    #[arg(short = 'k', long = "exactly")]
    exactly: Option<u64>,
    /// At most this many hamiltonian cycles (hamiltonian graphs only).
    #[arg(long = "at-most")]
    at_most: Option<u64>,
    /// Graphs with no hamiltonian cycle.
    #[arg(long = "non-hamiltonian")]
    non_hamiltonian: bool,
    /// Every graph of the order.
    #[arg(long = "all")]
    all: bool,

    /// Lower bound on the girth.
    #[arg(short = 'g', long = "girth")]
    girth: Option<usize>,
    /// Planar graphs only.
    #[arg(long = "planar")]
    planar: bool,
    /// Upper bound on any degree.
    #[arg(long = "max-deg")]
    max_deg: Option<usize>,
    /// Keep only graphs with every degree at least this.
    #[arg(long = "min-deg")]
    min_deg: Option<usize>,
    /// Keep only r-regular graphs.
    #[arg(long = "regular")]
    regular: Option<usize>,
    /// Keep only nearly cubic graphs: two vertices of degree 4, rest cubic.
    #[arg(long = "nearly-cubic")]
    nearly_cubic: bool,
    /// Keep only connected graphs.
    #[arg(long = "connected")]
    connected: bool,
    /// Keep only triangle-free graphs.
    #[arg(long = "triangle-free")]
    triangle_free: bool,
    /// Keep only graphs with no cycle of length n-1.
    #[arg(long = "no-n-minus-1-cycle")]
    no_n_minus_1_cycle: bool,

    /// Deterministic work share "res/mod": run residue res of mod parts.
    #[arg(long = "mod", value_parser = parse_share)]
    share: Option<Split>,
    /// Print only the number of graphs that would be emitted.
    #[arg(long = "count-only")]
    count_only: bool,
    #[arg(long = "format", value_enum, default_value = "graph6")]
    format: Format,
}

fn parse_share(s: &str) -> Result<Split, String> {
    let (res, modulus) = s
        .split_once('/')
        .ok_or_else(|| "expected res/mod".to_string())?;
    let residue: u64 = res.trim().parse().map_err(|e| format!("residue: {e}"))?;
    let modulus: u64 = modulus
        .trim()
        .parse()
        .map_err(|e| format!("modulus: {e}"))?;
    if modulus == 0 || residue >= modulus {
        return Err(format!("residue {residue} not below modulus {modulus}"));
    }
    Ok(Split { residue, modulus })
}

fn main() {
    let cli = Cli::parse();
    // Internal assertions must exit 1, distinct from usage errors (2).
    let code = std::panic::catch_unwind(|| match cli.cmd {
        Cmd::Generate(args) => cmd_generate(args),
        Cmd::CountHc { cap } => cmd_count_hc(cap),
        Cmd::Verify { suite, max_n } => cmd_verify(&suite, max_n),
    })
    .unwrap_or(1);
    std::process::exit(code);
}

fn workers_from_env() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

fn build_config(args: &GenerateArgs) -> Result<GenConfig, String> {
    let mode_flags = usize::from(args.exactly.is_some())
        + usize::from(args.at_most.is_some())
        + usize::from(args.non_hamiltonian)
        + usize::from(args.all);
    if mode_flags != 1 {
        return Err("pick exactly one of -k, --at-most, --non-hamiltonian, --all".into());
    }
    let mut filters = OutputFilters {
        connected: args.connected,
        exact_hc: None,
        min_degree: args.min_deg,
        regular: None,
        degree_profile: None,
        triangle_free: args.triangle_free,
        no_nm1_cycle: args.no_n_minus_1_cycle,
    };
    let mode = if let Some(k) = args.exactly {
        match k {
            0 => {
                filters.exact_hc = Some(0);
                GenMode::NonHamiltonian
            }
            1 => GenMode::ExactlyOne,
            k => {
                filters.exact_hc = Some(k);
                GenMode::AtMost(k)
            }
        }
    } else if let Some(k) = args.at_most {
        GenMode::AtMost(k)
    } else if args.non_hamiltonian {
        GenMode::NonHamiltonian
    } else {
        GenMode::Unrestricted
    };
    let mut cfg = GenConfig::new(args.n, mode);
    cfg.girth_min = args.girth;
    cfg.planar_only = args.planar;
    cfg.max_degree = args.max_deg;
    cfg.nearly_cubic = args.nearly_cubic;
    // A regularity filter prunes via the completability bound; the emitted
    // set equals the plain post-filter's.
    cfg.regular_target = args.regular;
    cfg.filters = filters;
    cfg.split = args.share;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn render_adj(g: &Graph, out: &mut String) {
    use std::fmt::Write as _;
    let _ = writeln!(out, "graph n={} m={}", g.n(), g.edge_count());
    for v in g.vertices() {
        let _ = write!(out, "{v}:");
        for u in g.neighbors(v) {
            let _ = write!(out, " {u}");
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(out);
}

/// Worker-local line buffer that drains to the shared writer in whole-line
/// chunks, including whatever remains when the worker finishes.
struct SinkGuard<'a> {
    local: String,
    shared: &'a Mutex<io::BufWriter<io::Stdout>>,
}

impl SinkGuard<'_> {
    fn drain_if_full(&mut self) {
        if self.local.len() >= 1 << 15 {
            self.drain();
        }
    }

    fn drain(&mut self) {
        if self.local.is_empty() {
            return;
        }
        let mut out = self.shared.lock().expect("writer lock");
        out.write_all(self.local.as_bytes()).expect("stdout write");
        self.local.clear();
    }
}

impl Drop for SinkGuard<'_> {
    fn drop(&mut self) {
        self.drain();
    }
}

fn cmd_generate(args: GenerateArgs) -> i32 {
    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let workers = workers_from_env();
    let start = Instant::now();
    let stdout = Mutex::new(io::BufWriter::new(io::stdout()));
    let count_only = args.count_only;
    let format = args.format;

    let result = generate::generate_parallel(&cfg, workers, |_| {
        let mut sink = SinkGuard {
            local: String::with_capacity(1 << 16),
            shared: &stdout,
        };
        move |g: &Graph| {
            if count_only {
                return;
            }
            match format {
                Format::Graph6 => {
                    sink.local.push_str(&graph6::encode_string(g));
                    sink.local.push('\n');
                }
                Format::Adj => render_adj(g, &mut sink.local),
            }
            sink.drain_if_full();
        }
    });
    let stats = match result {
        Ok(stats) => stats,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let wall = start.elapsed();
    if count_only {
        let mut out = stdout.lock().expect("writer lock");
        writeln!(out, "{}", stats.emitted).expect("stdout write");
    }
    report(&stats, wall.as_secs_f64(), workers);
    stdout
        .lock()
        .expect("writer lock")
        .flush()
        .expect("stdout flush");
    0
}

fn report(stats: &GenStats, wall: f64, workers: usize) {
    let r = &stats.rejected;
    eprintln!(
        "# emitted={} nodes={} wall={wall:.3}s workers={workers} \
         rejected{{connected={} exact-hc={} min-degree={} regular={} \
         degree-profile={} triangle-free={} no-n-minus-1-cycle={}}}",
        stats.emitted,
        stats.nodes,
        r.connected,
        r.exact_hc,
        r.min_degree,
        r.regular,
        r.degree_profile,
        r.triangle_free,
        r.no_nm1_cycle,
    );
}

fn cmd_count_hc(cap: Option<u64>) -> i32 {
    let cap = cap.unwrap_or(u64::MAX);
    if cap == 0 {
        eprintln!("error: cap must be at least 1");
        return 2;
    }
    let stdin = io::stdin().lock();
    let mut out = io::BufWriter::new(io::stdout().lock());
    for (i, line) in stdin.lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("line {}: read error: {e}", i + 1);
                return 1;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let g = match graph6::decode(line.trim().as_bytes()) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("line {}: {e}", i + 1);
                return 1;
            }
        };
        if g.n() < 3 {
            writeln!(out, "0").expect("stdout write");
            continue;
        }
        let r = hamilton::count_hc(&g, cap);
        if r.saturated {
            writeln!(out, ">={}", r.count).expect("stdout write");
        } else {
            writeln!(out, "{}", r.count).expect("stdout write");
        }
    }
    out.flush().expect("stdout flush");
    0
}

fn cmd_verify(suite: &str, max_n: Option<usize>) -> i32 {
    let Some(suite) = Suite::from_name(suite) else {
        eprintln!(
            "error: unknown suite '{suite}' (expected bondy-jackson, thomassen, sheehan, \
             cantoni, parity, extremal, schwenk, or oracle)"
        );
        return 2;
    };
    let report = run_suite(suite, max_n);
    print!("{}", report.render());
    if report.passed() {
        0
    } else {
        1
    }
}
