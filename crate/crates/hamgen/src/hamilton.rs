//! Exact hamiltonian cycle and path counting by pruned backtracking.
//!
//! Cycles are counted as edge sets: rotations and reflections of the same
//! cycle count once. Counts saturate at a caller-supplied cap so membership
//! tests such as "at most k" never enumerate more than `k + 1` cycles.

use thiserror::Error;

use crate::graph::{BitIter, Graph, VertexPair};

type CycleCallback<'a> = Option<&'a mut dyn FnMut(&[u8])>;

/// Depth interval between connectivity checks of the unvisited region.
const CONNECTIVITY_CHECK_INTERVAL: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HamiltonError {
    #[error("input graph is not hamiltonian")]
    NotHamiltonian,
}

/// A saturating cycle or path count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamReport {
    pub count: u64,
    /// The search was cut off at the cap; more may exist.
    pub saturated: bool,
}

impl HamReport {
    fn done(count: u64) -> Self {
        HamReport {
            count,
            saturated: false,
        }
    }
}

/// Number of hamiltonian cycles, saturating at `cap`.
pub fn count_hc(g: &Graph, cap: u64) -> HamReport {
    assert!(cap >= 1 && g.n() >= 3);
    let mut search = CycleSearch::new(g, cap, None);
    search.run();
    search.report()
}

/// Number of hamiltonian cycles containing the given edge, saturating at
/// `cap`. A hamiltonian cycle through edge `ab` is exactly a hamiltonian
/// `a`-`b` path plus that edge, so each qualifying cycle is found once.
pub fn count_hc_through_edge(g: &Graph, e: VertexPair, cap: u64) -> HamReport {
    assert!(cap >= 1 && g.n() >= 3);
    debug_assert!(g.has_edge(e.a(), e.b()));
    count_hp_between(g, e.a(), e.b(), cap)
}

/// Number of hamiltonian paths with the given endpoints, saturating at
/// `cap`. For `n >= 3` such a path can never use the edge `st` itself, so
/// the count is unaffected by its presence.
pub fn count_hp_between(g: &Graph, s: usize, t: usize, cap: u64) -> HamReport {
    assert!(cap >= 1 && s != t && s < g.n() && t < g.n());
    if g.n() == 2 {
        return HamReport::done(g.has_edge(s, t) as u64);
    }
    let mut search = PathSearch::new(g, cap, t);
    search.dfs(s, 1 << s, 0);
    search.report()
}

/// Number of hamiltonian paths with free endpoints, up to reversal.
pub fn count_hp(g: &Graph, cap: u64) -> HamReport {
    assert!(cap >= 1 && g.n() >= 2);
    let n = g.n();
    let mut count = 0u64;
    for s in 0..n {
        for t in s + 1..n {
            let r = count_hp_between(g, s, t, cap - count);
            count += r.count;
            if count >= cap {
                return HamReport {
                    count: cap,
                    saturated: true,
                };
            }
        }
    }
    HamReport::done(count)
}

/// Number of cycles of exactly `len` edges, counted as edge sets.
pub fn count_cycles_of_length(g: &Graph, len: usize, cap: u64) -> HamReport {
    assert!(cap >= 1 && (3..=g.n()).contains(&len));
    let mut search = FixedLenSearch {
        g,
        len,
        cap,
        count: 0,
        root: 0,
        second: 0,
    };
    for root in 0..g.n() {
        search.root = root;
        // Only vertices above the root may appear, so the root is the
        // cycle's minimum and each cycle is rooted exactly once.
        for second in BitIter(g.neighbors_mask(root) & !crate::graph::mask_below(root + 1)) {
            search.second = second;
            search.dfs(second, (1 << root) | (1 << second), 2);
            if search.count >= cap {
                return HamReport {
                    count: cap,
                    saturated: true,
                };
            }
        }
    }
    HamReport::done(search.count)
}

/// Per-edge hamiltonian cycle counts (exact, no cap).
#[derive(Debug, Clone)]
pub struct EdgeIncidence {
    /// Edges in lexicographic order, aligned with `counts`.
    pub edges: Vec<VertexPair>,
    pub counts: Vec<u64>,
    /// Total number of hamiltonian cycles.
    pub total: u64,
}

pub fn hc_edge_incidence(g: &Graph) -> EdgeIncidence {
    assert!(g.n() >= 3);
    let edges = g.edges();
    let mut index = vec![usize::MAX; 64 * 64];
    for (i, e) in edges.iter().enumerate() {
        index[e.a() * 64 + e.b()] = i;
    }
    let mut counts = vec![0u64; edges.len()];
    let mut total = 0;
    for_each_hc(g, |path| {
        total += 1;
        let mut prev = path[path.len() - 1] as usize;
        for &v in path {
            let v = v as usize;
            counts[index[prev.min(v) * 64 + prev.max(v)]] += 1;
            prev = v;
        }
    });
    EdgeIncidence {
        edges,
        counts,
        total,
    }
}

/// Enumerate every hamiltonian cycle once, passing its vertex sequence
/// (starting at vertex 0) to the callback.
pub(crate) fn for_each_hc<F: FnMut(&[u8])>(g: &Graph, mut f: F) {
    assert!(g.n() >= 3);
    let mut search = CycleSearch::new(g, u64::MAX, Some(&mut f));
    search.run();
}

pub fn is_hamiltonian(g: &Graph) -> bool {
    g.n() >= 3 && count_hc(g, 1).count == 1
}

pub fn is_uniquely_hamiltonian(g: &Graph) -> bool {
    g.n() >= 3 && count_hc(g, 2).count == 1
}

/// Does some edge `e` leave both `G - e` and `G / e` hamiltonian?
/// Returns the first such edge as a witness.
pub fn thomassen_edge_exists(g: &Graph) -> Result<Option<VertexPair>, HamiltonError> {
    assert!(g.n() >= 4);
    if !is_hamiltonian(g) {
        return Err(HamiltonError::NotHamiltonian);
    }
    let mut work = g.clone();
    for e in g.edges() {
        work.remove_edge_unchecked(e.a(), e.b());
        let removal_ok = is_hamiltonian(&work);
        work.add_edge_unchecked(e.a(), e.b());
        if !removal_ok {
            continue;
        }
        let contracted = g.contract_edge(e).expect("edge present");
        if is_hamiltonian(&contracted) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Backtracking enumeration of hamiltonian cycles, anchored at vertex 0.
/// The cycle 0, a, ..., b is accepted only with a < b, killing reflections.
struct CycleSearch<'a> {
    g: &'a Graph,
    all: u64,
    cap: u64,
    count: u64,
    second: usize,
    on_cycle: CycleCallback<'a>,
    path: [u8; 64],
}

impl<'a> CycleSearch<'a> {
    fn new(g: &'a Graph, cap: u64, on_cycle: CycleCallback<'a>) -> Self {
        CycleSearch {
            g,
            all: g.full_mask(),
            cap,
            count: 0,
            second: 0,
            on_cycle,
            path: [0; 64],
        }
    }

    fn run(&mut self) {
        self.path[0] = 0;
        for second in BitIter(self.g.neighbors_mask(0)) {
            self.second = second;
            self.path[1] = second as u8;
            self.dfs(second, (1 << 0) | (1 << second), 2);
            if self.count >= self.cap {
                return;
            }
        }
    }

    fn report(&self) -> HamReport {
        HamReport {
            count: self.count.min(self.cap),
            saturated: self.count >= self.cap,
        }
    }

    fn dfs(&mut self, u: usize, visited: u64, depth: usize) {
        let n = self.g.n();
        if depth == n {
            if self.g.has_edge(u, 0) && self.second < u {
                self.count += 1;
                if let Some(f) = &mut self.on_cycle {
                    f(&self.path[..n]);
                }
            }
            return;
        }
        let remaining = self.all & !visited;
        let live = remaining | (1 << u) | 1;
        // Every unvisited vertex still needs two live connections; vertex 0
        // is counted as available because it closes the cycle.
        for w in BitIter(remaining) {
            if (self.g.neighbors_mask(w) & live).count_ones() < 2 {
                return;
            }
        }
        if depth.is_multiple_of(CONNECTIVITY_CHECK_INTERVAL) {
            let within = remaining | (1 << u);
            let mut seen = 1u64 << u;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0u64;
                for w in BitIter(frontier) {
                    next |= self.g.neighbors_mask(w);
                }
                frontier = next & within & !seen;
                seen |= frontier;
            }
            if seen & remaining != remaining {
                return;
            }
        }
        for w in BitIter(self.g.neighbors_mask(u) & remaining) {
            self.path[depth] = w as u8;
            self.dfs(w, visited | (1 << w), depth + 1);
            if self.count >= self.cap {
                return;
            }
        }
    }
}

/// Hamiltonian paths from a moving endpoint to a fixed target.
struct PathSearch<'a> {
    g: &'a Graph,
    all: u64,
    cap: u64,
    count: u64,
    target: usize,
}

impl<'a> PathSearch<'a> {
    fn new(g: &'a Graph, cap: u64, target: usize) -> Self {
        PathSearch {
            g,
            all: g.full_mask(),
            cap,
            count: 0,
            target,
        }
    }

    fn report(&self) -> HamReport {
        HamReport {
            count: self.count.min(self.cap),
            saturated: self.count >= self.cap,
        }
    }

    fn dfs(&mut self, u: usize, visited: u64, depth: usize) {
        let remaining = self.all & !visited;
        if remaining == 1 << self.target {
            if self.g.has_edge(u, self.target) {
                self.count += 1;
            }
            return;
        }
        let live = remaining | (1 << u);
        let t_bit = 1u64 << self.target;
        for w in BitIter(remaining & !t_bit) {
            if (self.g.neighbors_mask(w) & live).count_ones() < 2 {
                return;
            }
        }
        if self.g.neighbors_mask(self.target) & (live & !t_bit) == 0 {
            return;
        }
        if depth.is_multiple_of(CONNECTIVITY_CHECK_INTERVAL) {
            let mut seen = 1u64 << u;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0u64;
                for w in BitIter(frontier) {
                    next |= self.g.neighbors_mask(w);
                }
                frontier = next & live & !seen;
                seen |= frontier;
            }
            if seen & remaining != remaining {
                return;
            }
        }
        for w in BitIter(self.g.neighbors_mask(u) & remaining & !t_bit) {
            self.dfs(w, visited | (1 << w), depth + 1);
            if self.count >= self.cap {
                return;
            }
        }
    }
}

/// Cycles of a fixed length, rooted at their minimum vertex.
struct FixedLenSearch<'a> {
    g: &'a Graph,
    len: usize,
    cap: u64,
    count: u64,
    root: usize,
    second: usize,
}

impl FixedLenSearch<'_> {
    fn dfs(&mut self, u: usize, visited: u64, depth: usize) {
        if depth == self.len {
            if self.g.has_edge(u, self.root) && self.second < u {
                self.count += 1;
            }
            return;
        }
        let allowed =
            self.g.neighbors_mask(u) & !visited & !crate::graph::mask_below(self.root + 1);
        for w in BitIter(allowed) {
            self.dfs(w, visited | (1 << w), depth + 1);
            if self.count >= self.cap {
                return;
            }
        }
    }
}
