//! Isomorph-free exhaustive generation by canonical construction paths.
//!
//! The search starts from a root (a cycle for hamiltonian modes, the empty
//! graph otherwise) and recursively inserts one edge per orbit of
//! non-adjacent vertex pairs. A child survives only if the inserted edge is
//! a canonical edge of the child (a reducible edge maximizing a signed
//! invariant tuple, compared lexicographically) and the mode constraint
//! still holds. Together the two rules make the search tree contain exactly
//! one representative of every isomorphism class in the target family.
//!
//! The tuple components are ordered by cost: degree components first, the
//! canonical-labeling component last, evaluated lazily so the expensive
//! canonical run is usually skipped.

use thiserror::Error;

use crate::canon::{CanonEngine, UnionFind};
use crate::graph::{BitIter, DegreeProfile, Graph, GraphError, VertexPair, MAX_VERTICES};
use crate::hamilton;
use crate::planarity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("order {0} invalid for this mode (need {1}..=64)")]
    BadOrder(usize, usize),
    #[error("cycle budget must be at least 1")]
    BadBudget,
    #[error("girth bound {0} conflicts with order {1}")]
    BadGirth(usize, usize),
    #[error("maximum degree bound must be at least 2")]
    BadMaxDegree,
    #[error("split residue {0} not below modulus {1}")]
    BadSplit(u64, u64),
    #[error("split depth {0} must exceed the root size {1}")]
    BadSplitDepth(usize, usize),
    #[error("output filter conflicts with mode: {0}")]
    FilterConflict(&'static str),
}

/// What the generated family is: the constraint maintained at every node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Uniquely hamiltonian graphs, rooted at a cycle.
    ExactlyOne,
    /// Hamiltonian graphs with at most this many hamiltonian cycles.
    /// `AtMost(u64::MAX)` generates all hamiltonian graphs.
    AtMost(u64),
    /// Graphs with no hamiltonian cycle, rooted at the empty graph.
    NonHamiltonian,
    /// Every graph of the given order.
    Unrestricted,
}

impl GenMode {
    fn cycle_rooted(&self) -> bool {
        matches!(self, GenMode::ExactlyOne | GenMode::AtMost(_))
    }

    /// The hamiltonian-cycle-position components x2..x4 are only meaningful
    /// when the anchor cycle is the unique hamiltonian cycle.
    fn uses_full_tuple(&self) -> bool {
        matches!(self, GenMode::ExactlyOne)
    }
}

/// The base hamiltonian cycle as a cyclic vertex order with position
/// lookups. In cycle-rooted modes this is the root cycle and never changes.
#[derive(Debug, Clone)]
pub struct HamAnchor {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl HamAnchor {
    pub fn new(order: Vec<usize>) -> Option<Self> {
        let n = order.len();
        if n < 3 {
            return None;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return None;
            }
            pos[v] = i;
        }
        Some(HamAnchor { order, pos })
    }

    /// The anchor `0, 1, ..., n-1` matching `Graph::new_cycle`.
    pub fn canonical(n: usize) -> Self {
        HamAnchor {
            order: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn next(&self, v: usize) -> usize {
        self.order[(self.pos[v] + 1) % self.len()]
    }

    pub fn prev(&self, v: usize) -> usize {
        self.order[(self.pos[v] + self.len() - 1) % self.len()]
    }

    /// Minimum number of anchor edges between two vertices along the cycle.
    pub fn cyclic_distance(&self, a: usize, b: usize) -> usize {
        let d = self.pos[a].abs_diff(self.pos[b]);
        d.min(self.len() - d)
    }

    pub fn contains_edge(&self, e: VertexPair) -> bool {
        self.cyclic_distance(e.a(), e.b()) == 1
    }
}

/// The signed edge invariant, compared lexicographically; bigger is more
/// canonical. Hamiltonian modes with several cycles drop the components
/// that depend on a unique anchor, leaving (x0, x1, x5, x6, x7, x8).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeTuple {
    vals: [i32; 9],
    len: usize,
}

impl EdgeTuple {
    pub fn components(&self) -> &[i32] {
        &self.vals[..self.len]
    }
}

impl PartialOrd for EdgeTuple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeTuple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.components().cmp(other.components())
    }
}

/// Predicates applied to emitted graphs only; they never prune the tree.
#[derive(Debug, Clone, Default)]
pub struct OutputFilters {
    pub connected: bool,
    /// Keep only graphs with exactly this many hamiltonian cycles.
    pub exact_hc: Option<u64>,
    pub min_degree: Option<usize>,
    pub regular: Option<usize>,
    pub degree_profile: Option<DegreeProfile>,
    pub triangle_free: bool,
    /// Keep only graphs without any cycle of length n-1.
    pub no_nm1_cycle: bool,
}

/// Deterministic partition of the search forest: once a subtree root at
/// `depth` edges is reached, it is explored iff its sequence number is
/// `residue` mod `modulus`. Nodes above the split depth belong to residue 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    pub residue: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub n: usize,
    pub mode: GenMode,
    /// Prune insertions that would create a cycle shorter than this.
    pub girth_min: Option<usize>,
    /// Prune subtrees as soon as the graph is non-planar.
    pub planar_only: bool,
    /// Prune insertions pushing any degree above this.
    pub max_degree: Option<usize>,
    /// Nearly-cubic pruning: at most two vertices above degree 3, none
    /// above 4, and the (4,4,3,...,3) profile enforced on output.
    pub nearly_cubic: bool,
    /// Prune nodes that cannot extend to an r-regular graph on the same
    /// vertex set (degrees only grow), and keep only r-regular output.
    pub regular_target: Option<usize>,
    pub filters: OutputFilters,
    pub split: Option<Split>,
    /// Edge count at which split ownership is decided. Defaults to root
    /// size + 3 for cycle-rooted modes and 6 otherwise.
    pub split_depth: Option<usize>,
    /// Degree-based skip of insertions that provably cannot be canonical.
    pub lookahead: bool,
    /// Re-derive every canonicity decision from full tuples and panic on
    /// disagreement. Test instrumentation; very slow.
    pub cross_check_canonicity: bool,
}

impl GenConfig {
    pub fn new(n: usize, mode: GenMode) -> Self {
        GenConfig {
            n,
            mode,
            girth_min: None,
            planar_only: false,
            max_degree: None,
            nearly_cubic: false,
            regular_target: None,
            filters: OutputFilters::default(),
            split: None,
            split_depth: None,
            lookahead: true,
            cross_check_canonicity: false,
        }
    }

    fn root_size(&self) -> usize {
        if self.mode.cycle_rooted() {
            self.n
        } else {
            0
        }
    }

    fn effective_split_depth(&self) -> usize {
        self.split_depth.unwrap_or(if self.mode.cycle_rooted() {
            self.n + 3
        } else {
            6
        })
    }

    /// Effective degree cap folding in the regular/nearly-cubic targets.
    fn degree_cap(&self) -> usize {
        let mut cap = self.max_degree.unwrap_or(MAX_VERTICES);
        if let Some(r) = self.regular_target {
            cap = cap.min(r);
        }
        if self.nearly_cubic {
            cap = cap.min(4);
        }
        cap
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let min_n = if self.mode.cycle_rooted() { 3 } else { 1 };
        if !(min_n..=MAX_VERTICES).contains(&self.n) {
            return Err(GenError::BadOrder(self.n, min_n));
        }
        if let GenMode::AtMost(0) = self.mode {
            return Err(GenError::BadBudget);
        }
        if let Some(g) = self.girth_min {
            if g < 3 || g > self.n {
                return Err(GenError::BadGirth(g, self.n));
            }
        }
        if self.max_degree.is_some_and(|d| d < 2) {
            return Err(GenError::BadMaxDegree);
        }
        if let Some(s) = self.split {
            if s.modulus == 0 || s.residue >= s.modulus {
                return Err(GenError::BadSplit(s.residue, s.modulus));
            }
            if self.effective_split_depth() <= self.root_size() {
                return Err(GenError::BadSplitDepth(
                    self.effective_split_depth(),
                    self.root_size(),
                ));
            }
        }
        if let Some(k) = self.filters.exact_hc {
            match self.mode {
                GenMode::ExactlyOne if k != 1 => {
                    return Err(GenError::FilterConflict("exactly-one mode emits h = 1"))
                }
                GenMode::AtMost(budget) if k > budget => {
                    return Err(GenError::FilterConflict("exact count above cycle budget"))
                }
                GenMode::NonHamiltonian if k != 0 => {
                    return Err(GenError::FilterConflict("non-hamiltonian mode emits h = 0"))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Work splitting as an operation: refine `cfg` so that `res` of `modulus`
/// equal shares remain. Composes with an existing split.
pub fn split(cfg: &GenConfig, res: u64, modulus: u64) -> Result<GenConfig, GenError> {
    if modulus == 0 || res >= modulus {
        return Err(GenError::BadSplit(res, modulus));
    }
    let mut out = cfg.clone();
    out.split = Some(match cfg.split {
        None => Split {
            residue: res,
            modulus,
        },
        Some(prev) => Split {
            residue: prev.residue + prev.modulus * res,
            modulus: prev.modulus * modulus,
        },
    });
    out.validate()?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RejectionCounts {
    pub connected: u64,
    pub exact_hc: u64,
    pub min_degree: u64,
    pub regular: u64,
    pub degree_profile: u64,
    pub triangle_free: u64,
    pub no_nm1_cycle: u64,
}

impl RejectionCounts {
    pub fn total(&self) -> u64 {
        self.connected
            + self.exact_hc
            + self.min_degree
            + self.regular
            + self.degree_profile
            + self.triangle_free
            + self.no_nm1_cycle
    }

    fn add(&mut self, o: &RejectionCounts) {
        self.connected += o.connected;
        self.exact_hc += o.exact_hc;
        self.min_degree += o.min_degree;
        self.regular += o.regular;
        self.degree_profile += o.degree_profile;
        self.triangle_free += o.triangle_free;
        self.no_nm1_cycle += o.no_nm1_cycle;
    }
}

/// Counters from one generation run. The emitted count is deterministic for
/// a fixed configuration and, summed over a full set of split residues,
/// independent of the split factor. Node counts include the shared prefix
/// each worker re-traverses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenStats {
    pub nodes: u64,
    pub emitted: u64,
    pub rejected: RejectionCounts,
}

impl GenStats {
    pub fn merge(&mut self, o: &GenStats) {
        self.nodes += o.nodes;
        self.emitted += o.emitted;
        self.rejected.add(&o.rejected);
    }
}

/// Run the generation, calling `visitor` once per emitted graph.
pub fn generate<V: FnMut(&Graph)>(cfg: &GenConfig, mut visitor: V) -> Result<GenStats, GenError> {
    cfg.validate()?;
    let root = if cfg.mode.cycle_rooted() {
        Graph::new_cycle(cfg.n)?
    } else {
        Graph::new_empty(cfg.n)?
    };
    if let Some(g) = cfg.girth_min {
        if cfg.mode.cycle_rooted() && g > cfg.n {
            return Err(GenError::BadGirth(g, cfg.n));
        }
    }
    let anchor = cfg.mode.cycle_rooted().then(|| HamAnchor::canonical(cfg.n));
    let mut searcher = Searcher {
        cfg,
        g: root,
        anchor,
        engine: CanonEngine::new(),
        aux_engine: CanonEngine::new(),
        visitor: &mut visitor,
        stats: GenStats::default(),
        split: cfg.split.unwrap_or(Split {
            residue: 0,
            modulus: 1,
        }),
        split_depth: cfg.effective_split_depth(),
        subtree_counter: 0,
        uf: UnionFind::new(0),
        edge_counts: vec![0u32; MAX_VERTICES * MAX_VERTICES],
    };
    let root_count = match cfg.mode {
        GenMode::ExactlyOne | GenMode::AtMost(_) => 1,
        _ => 0,
    };
    searcher.recurse(root_count, false);
    Ok(searcher.stats)
}

/// Run `workers` split shares on separate threads. `make_visitor` builds an
/// independent visitor per worker; statistics are merged.
pub fn generate_parallel<V, F>(
    cfg: &GenConfig,
    workers: usize,
    make_visitor: F,
) -> Result<GenStats, GenError>
where
    V: FnMut(&Graph) + Send,
    F: Fn(usize) -> V + Sync,
{
    let workers = workers.max(1);
    if workers == 1 {
        return generate(cfg, make_visitor(0));
    }
    let mut shares = Vec::with_capacity(workers);
    for w in 0..workers {
        shares.push(split(cfg, w as u64, workers as u64)?);
    }
    let results: Vec<Result<GenStats, GenError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = shares
            .iter()
            .enumerate()
            .map(|(w, share)| {
                let make_visitor = &make_visitor;
                scope.spawn(move || generate(share, make_visitor(w)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut stats = GenStats::default();
    for r in results {
        stats.merge(&r?);
    }
    Ok(stats)
}

/// Edges whose removal keeps the graph inside the mode's family. The anchor
/// is required in cycle-rooted modes.
pub fn reducible_edges(g: &Graph, mode: GenMode, anchor: Option<&HamAnchor>) -> Vec<VertexPair> {
    match mode {
        GenMode::ExactlyOne => {
            let anchor = anchor.expect("anchored mode");
            g.edges()
                .into_iter()
                .filter(|e| !anchor.contains_edge(*e))
                .collect()
        }
        GenMode::AtMost(_) => {
            // Removable exactly when some hamiltonian cycle avoids the edge.
            let mut work = g.clone();
            g.edges()
                .into_iter()
                .filter(|e| {
                    work.remove_edge_unchecked(e.a(), e.b());
                    let ok = hamilton::is_hamiltonian(&work);
                    work.add_edge_unchecked(e.a(), e.b());
                    ok
                })
                .collect()
        }
        GenMode::NonHamiltonian | GenMode::Unrestricted => g.edges(),
    }
}

/// The full invariant tuple of a reducible edge, including the canonical
/// components x7, x8. For modes other than exactly-one the reduced tuple
/// (x0, x1, x5, x6, x7, x8) is returned.
pub fn edge_tuple(
    g: &Graph,
    anchor: Option<&HamAnchor>,
    e: VertexPair,
    mode: GenMode,
) -> EdgeTuple {
    let mut engine = CanonEngine::new();
    engine.run(g);
    let (x7, x8) = canonical_edge_component(g, &mut engine, e);
    let mut t = cheap_tuple(g, anchor, e, mode);
    t.vals[t.len] = x7;
    t.vals[t.len + 1] = x8;
    t.len += 2;
    t
}

/// Was the last inserted edge a canonical edge of the current graph?
/// Standalone form of the check the searcher performs lazily.
pub fn is_canonical_expansion(
    g: &Graph,
    e_last: VertexPair,
    mode: GenMode,
    anchor: Option<&HamAnchor>,
) -> bool {
    let reducible = reducible_edges(g, mode, anchor);
    debug_assert!(
        reducible.contains(&e_last),
        "inserted edge must be reducible"
    );
    let best = reducible
        .iter()
        .map(|&e| edge_tuple(g, anchor, e, mode))
        .max()
        .expect("nonempty");
    edge_tuple(g, anchor, e_last, mode) == best
}

/// The cheap components (everything but x7, x8).
fn cheap_tuple(g: &Graph, anchor: Option<&HamAnchor>, e: VertexPair, mode: GenMode) -> EdgeTuple {
    let (a, b) = (e.a(), e.b());
    let (da, db) = (g.degree(a) as i32, g.degree(b) as i32);
    let mut vals = [0i32; 9];
    let mut len = 0;
    let push = |vals: &mut [i32; 9], len: &mut usize, x: i32| {
        vals[*len] = x;
        *len += 1;
    };
    push(&mut vals, &mut len, da.max(db));
    push(&mut vals, &mut len, da.min(db));
    if mode.uses_full_tuple() {
        let anchor = anchor.expect("anchored mode");
        push(&mut vals, &mut len, -(anchor.cyclic_distance(a, b) as i32));
        let ring_sum = |v: usize| (g.degree(anchor.prev(v)) + g.degree(anchor.next(v))) as i32;
        let (sa, sb) = (ring_sum(a), ring_sum(b));
        push(&mut vals, &mut len, -sa.max(sb));
        push(&mut vals, &mut len, -sa.min(sb));
    }
    push(
        &mut vals,
        &mut len,
        (g.neighbors_mask(a) & g.neighbors_mask(b)).count_ones() as i32,
    );
    let ball = g.ball((1 << a) | (1 << b), 2);
    push(&mut vals, &mut len, -(ball.count_ones() as i32));
    EdgeTuple { vals, len }
}

/// (x7, x8): the lexicographically largest canonically-labeled endpoint
/// pair, larger label first, over the edge orbit of `e`.
fn canonical_edge_component(g: &Graph, engine: &mut CanonEngine, e: VertexPair) -> (i32, i32) {
    let labeling = engine.labeling_raw();
    let mut uf = UnionFind::new(g.n() * g.n());
    let flat = |p: VertexPair| p.a() * g.n() + p.b();
    let edges = g.edges();
    for gen in engine.generators_raw() {
        for edge in &edges {
            uf.union(flat(*edge), flat(edge.map_u8(gen)));
        }
    }
    let root = uf.find(flat(e));
    let mut best = (i32::MIN, i32::MIN);
    for edge in &edges {
        if uf.find(flat(*edge)) != root {
            continue;
        }
        let (la, lb) = (labeling[edge.a()] as i32, labeling[edge.b()] as i32);
        let pair = (la.max(lb), la.min(lb));
        if pair > best {
            best = pair;
        }
    }
    best
}

impl VertexPair {
    /// Image under a raw u8 permutation (canon-internal representation).
    fn map_u8(&self, perm: &[u8; MAX_VERTICES]) -> VertexPair {
        VertexPair::new(perm[self.a()] as usize, perm[self.b()] as usize).expect("injective")
    }
}

struct Searcher<'a> {
    cfg: &'a GenConfig,
    g: Graph,
    anchor: Option<HamAnchor>,
    engine: CanonEngine,
    aux_engine: CanonEngine,
    visitor: &'a mut dyn FnMut(&Graph),
    stats: GenStats,
    split: Split,
    split_depth: usize,
    subtree_counter: u64,
    uf: UnionFind,
    /// Scratch: per-edge hamiltonian cycle incidence, indexed a*64+b.
    edge_counts: Vec<u32>,
}

/// Outcome of the cheap cascade levels.
enum CascadeVerdict {
    Reject,
    Accept,
    /// Survivor edges still tied with the inserted edge; x7, x8 decide.
    Ambiguous(Vec<VertexPair>),
}

impl Searcher<'_> {
    /// Visit the current node: emit it, then try one insertion per orbit of
    /// non-adjacent pairs. `hc_count` is the exact number of hamiltonian
    /// cycles in tracked modes; `canon_current` says whether `self.engine`
    /// already holds this node's canonical run.
    fn recurse(&mut self, hc_count: u64, canon_current: bool) {
        self.stats.nodes += 1;
        if let Some(r) = self.cfg.regular_target {
            if !self.regular_completable(r) {
                return;
            }
        }
        if self.owns_emission() {
            self.maybe_emit(hc_count);
        }
        if !canon_current {
            self.engine.run(&self.g);
        }
        let reps = self.pair_orbit_representatives();
        if reps.is_empty() {
            return;
        }

        // Reducible edges of this node, shared by the at-most reducibility
        // updates and the degree look-ahead.
        let node_reducible = self.node_reducible_edges(hc_count);
        let lookahead_top = self
            .cfg
            .lookahead
            .then(|| top_degree_pairs(&self.g, &node_reducible));

        let degree_cap = self.cfg.degree_cap();
        for e in reps {
            let (a, b) = (e.a(), e.b());
            let (da, db) = (self.g.degree(a), self.g.degree(b));
            if da + 1 > degree_cap || db + 1 > degree_cap {
                continue;
            }
            if self.cfg.nearly_cubic && !self.nearly_cubic_allows(a, b) {
                continue;
            }
            if let Some(girth) = self.cfg.girth_min {
                match self.g.distance(a, b) {
                    Some(d) if d + 1 < girth => continue,
                    _ => {}
                }
            }
            if let Some(top) = &lookahead_top {
                let new_key = ((da.max(db) + 1) as i32, (da.min(db) + 1) as i32);
                if top
                    .iter()
                    .any(|&(key, ea, eb)| ea != a && ea != b && eb != a && eb != b && key > new_key)
                {
                    continue;
                }
            }

            self.g.add_edge_unchecked(a, b);
            self.try_child(e, hc_count, &node_reducible);
            self.g.remove_edge_unchecked(a, b);
        }
    }

    /// The inserted edge `e` is in place; decide canonicity and mode, then
    /// recurse if both hold.
    fn try_child(&mut self, e: VertexPair, parent_hc: u64, parent_reducible: &[VertexPair]) {
        let reducible = self.child_reducible_edges(e, parent_reducible);
        debug_assert!(reducible.contains(&e));
        let cascade = self.cascade(&reducible, e);
        let mut canon_current = false;
        let accepted = match cascade {
            CascadeVerdict::Reject => false,
            CascadeVerdict::Accept => true,
            CascadeVerdict::Ambiguous(_) => true, // resolved below if mode passes
        };
        if self.cfg.cross_check_canonicity {
            self.assert_cascade_consistency(&cascade, &reducible, e);
        }
        if !accepted {
            return;
        }

        let child_hc = match self.mode_check(e, parent_hc) {
            Some(c) => c,
            None => return,
        };
        if self.cfg.planar_only && !planarity::is_planar(&self.g) {
            return;
        }

        if let CascadeVerdict::Ambiguous(survivors) = cascade {
            self.engine.run(&self.g);
            canon_current = true;
            if !self.canonical_among(&survivors, e) {
                return;
            }
        }

        if self.g.edge_count() == self.split_depth {
            let seq = self.subtree_counter;
            self.subtree_counter += 1;
            if seq % self.split.modulus != self.split.residue {
                return;
            }
        }
        self.recurse(child_hc, canon_current);
    }

    /// Exact hamiltonian count of the child, or `None` when the mode
    /// rejects it. Any new hamiltonian cycle must pass through the inserted
    /// edge, so only those are counted.
    fn mode_check(&self, e: VertexPair, parent_hc: u64) -> Option<u64> {
        match self.cfg.mode {
            GenMode::Unrestricted => Some(0),
            GenMode::NonHamiltonian => {
                if self.g.n() < 3 {
                    return Some(0);
                }
                (hamilton::count_hc_through_edge(&self.g, e, 1).count == 0).then_some(0)
            }
            GenMode::ExactlyOne => {
                (hamilton::count_hc_through_edge(&self.g, e, 1).count == 0).then_some(1)
            }
            GenMode::AtMost(u64::MAX) => Some(parent_hc),
            GenMode::AtMost(budget) => {
                let room = budget - parent_hc + 1;
                let through = hamilton::count_hc_through_edge(&self.g, e, room);
                let total = parent_hc + through.count;
                (total <= budget).then_some(total)
            }
        }
    }

    /// One representative per orbit of non-adjacent pairs, lexicographic
    /// first within each orbit. Uses the generators from `self.engine`.
    fn pair_orbit_representatives(&mut self) -> Vec<VertexPair> {
        let pairs = self.g.nonadjacent_pairs();
        let gens = self.engine.generators_raw();
        if gens.is_empty() || pairs.is_empty() {
            return pairs;
        }
        let n = self.g.n();
        self.uf.reset(n * n);
        let flat = |p: &VertexPair| p.a() * n + p.b();
        for gen in gens {
            for p in &pairs {
                let (u, v) = (gen[p.a()] as usize, gen[p.b()] as usize);
                self.uf.union(flat(p), u.min(v) * n + u.max(v));
            }
        }
        let mut reps = Vec::with_capacity(pairs.len());
        for p in &pairs {
            if self.uf.find(flat(p)) == flat(p) {
                reps.push(*p);
            }
        }
        reps
    }

    /// Reducible edges of the current node.
    fn node_reducible_edges(&mut self, hc_count: u64) -> Vec<VertexPair> {
        match self.cfg.mode {
            GenMode::ExactlyOne => {
                let anchor = self.anchor.as_ref().expect("anchored");
                self.g
                    .edges()
                    .into_iter()
                    .filter(|e| !anchor.contains_edge(*e))
                    .collect()
            }
            GenMode::AtMost(u64::MAX) => {
                // Non-anchor edges always leave the anchor cycle intact;
                // anchor edges need a direct hamiltonicity test.
                let anchor = self.anchor.as_ref().expect("anchored").clone();
                let mut out = Vec::with_capacity(self.g.edge_count());
                let edges = self.g.edges();
                for e in edges {
                    if !anchor.contains_edge(e) {
                        out.push(e);
                        continue;
                    }
                    self.g.remove_edge_unchecked(e.a(), e.b());
                    if hamilton::is_hamiltonian(&self.g) {
                        out.push(e);
                    }
                    self.g.add_edge_unchecked(e.a(), e.b());
                }
                out
            }
            GenMode::AtMost(_) => {
                // An edge is reducible iff some hamiltonian cycle avoids
                // it; one enumeration of all cycles answers every edge.
                for e in self.g.edges() {
                    self.edge_counts[e.a() * MAX_VERTICES + e.b()] = 0;
                }
                hamilton::for_each_hc(&self.g, |path| {
                    let mut prev = path[path.len() - 1] as usize;
                    for &v in path {
                        let v = v as usize;
                        let (a, b) = (prev.min(v), prev.max(v));
                        self.edge_counts[a * MAX_VERTICES + b] += 1;
                        prev = v;
                    }
                });
                self.g
                    .edges()
                    .into_iter()
                    .filter(|e| (self.edge_counts[e.a() * MAX_VERTICES + e.b()] as u64) < hc_count)
                    .collect()
            }
            GenMode::NonHamiltonian | GenMode::Unrestricted => self.g.edges(),
        }
    }

    /// Reducible edges of the child `G + e`: reducibility is monotone under
    /// edge insertion, so the parent's set carries over; parent-irreducible
    /// edges are re-tested via cycles through the new edge.
    fn child_reducible_edges(
        &mut self,
        e: VertexPair,
        parent_reducible: &[VertexPair],
    ) -> Vec<VertexPair> {
        match self.cfg.mode {
            GenMode::ExactlyOne => {
                let anchor = self.anchor.as_ref().expect("anchored");
                let mut out: Vec<VertexPair> = parent_reducible.to_vec();
                debug_assert!(!anchor.contains_edge(e));
                out.push(e);
                out
            }
            GenMode::NonHamiltonian | GenMode::Unrestricted => self.g.edges(),
            GenMode::AtMost(_) => {
                let mut out: Vec<VertexPair> = parent_reducible.to_vec();
                out.push(e);
                let mut in_out = [false; MAX_VERTICES * MAX_VERTICES];
                for p in &out {
                    in_out[p.a() * MAX_VERTICES + p.b()] = true;
                }
                for f in self.g.edges() {
                    if in_out[f.a() * MAX_VERTICES + f.b()] || f == e {
                        continue;
                    }
                    // (G + e) - f gains a hamiltonian cycle only through e.
                    self.g.remove_edge_unchecked(f.a(), f.b());
                    let ham = hamilton::count_hc_through_edge(&self.g, e, 1).count > 0;
                    self.g.add_edge_unchecked(f.a(), f.b());
                    if ham {
                        out.push(f);
                    }
                }
                out
            }
        }
    }

    /// Evaluate the cheap tuple components level by level with early accept
    /// and early reject.
    fn cascade(&self, reducible: &[VertexPair], e_last: VertexPair) -> CascadeVerdict {
        debug_assert!(!reducible.is_empty());
        if reducible.len() == 1 {
            return CascadeVerdict::Accept;
        }
        let anchor = self.anchor.as_ref();
        let mode = self.cfg.mode;
        let levels = if mode.uses_full_tuple() { 7 } else { 4 };
        let mut survivors: Vec<VertexPair> = reducible.to_vec();
        let mut scratch: Vec<i32> = Vec::with_capacity(survivors.len());
        for level in 0..levels {
            scratch.clear();
            let mut max = i32::MIN;
            let mut last_val = i32::MIN;
            for &f in &survivors {
                let v = cheap_component(&self.g, anchor, f, mode, level);
                if f == e_last {
                    last_val = v;
                }
                scratch.push(v);
                max = max.max(v);
            }
            debug_assert!(last_val != i32::MIN);
            if last_val < max {
                return CascadeVerdict::Reject;
            }
            let mut kept = 0;
            for i in 0..survivors.len() {
                if scratch[i] == max {
                    survivors[kept] = survivors[i];
                    kept += 1;
                }
            }
            survivors.truncate(kept);
            if survivors.len() == 1 {
                return CascadeVerdict::Accept;
            }
        }
        CascadeVerdict::Ambiguous(survivors)
    }

    /// Resolve an ambiguous cascade with (x7, x8); `self.engine` holds the
    /// child's canonical run.
    fn canonical_among(&mut self, survivors: &[VertexPair], e_last: VertexPair) -> bool {
        let n = self.g.n();
        let labeling = self.engine.labeling_raw();
        let gens = self.engine.generators_raw();
        self.uf.reset(n * n);
        let flat = |p: &VertexPair| p.a() * n + p.b();
        let edges = self.g.edges();
        for gen in gens {
            for p in &edges {
                let (u, v) = (gen[p.a()] as usize, gen[p.b()] as usize);
                self.uf.union(flat(p), u.min(v) * n + u.max(v));
            }
        }
        // Largest canonical pair per orbit root.
        let mut orbit_best = vec![(i32::MIN, i32::MIN); n * n];
        for p in &edges {
            let root = self.uf.find(flat(p));
            let (la, lb) = (labeling[p.a()] as i32, labeling[p.b()] as i32);
            let pair = (la.max(lb), la.min(lb));
            if pair > orbit_best[root] {
                orbit_best[root] = pair;
            }
        }
        let mut best = (i32::MIN, i32::MIN);
        let mut last = (i32::MIN, i32::MIN);
        for &f in survivors {
            let val = orbit_best[self.uf.find(flat(&f))];
            if f == e_last {
                last = val;
            }
            if val > best {
                best = val;
            }
        }
        last == best
    }

    /// Test-mode re-derivation of the cascade decision from full tuples.
    fn assert_cascade_consistency(
        &mut self,
        cascade: &CascadeVerdict,
        reducible: &[VertexPair],
        e_last: VertexPair,
    ) {
        let anchor = self.anchor.as_ref();
        self.aux_engine.run(&self.g);
        let full = |f: VertexPair, engine: &mut CanonEngine| {
            let (x7, x8) = canonical_edge_component(&self.g, engine, f);
            let mut t = cheap_tuple(&self.g, anchor, f, self.cfg.mode);
            t.vals[t.len] = x7;
            t.vals[t.len + 1] = x8;
            t.len += 2;
            t
        };
        let best = reducible
            .iter()
            .map(|&f| full(f, &mut self.aux_engine))
            .max()
            .expect("nonempty");
        let slow_accept = full(e_last, &mut self.aux_engine) == best;
        let fast_accept = match cascade {
            CascadeVerdict::Reject => false,
            CascadeVerdict::Accept => true,
            CascadeVerdict::Ambiguous(survivors) => {
                // Mirror the fast path on a fresh engine run.
                self.engine.run(&self.g);
                self.canonical_among(survivors, e_last)
            }
        };
        assert_eq!(
            fast_accept, slow_accept,
            "lazy cascade disagrees with full tuples on {e_last} in {:?}",
            self.g
        );
    }

    /// Can the node still grow into an r-regular graph? Degrees only grow,
    /// so a failure here is permanent down the subtree.
    fn regular_completable(&self, r: usize) -> bool {
        let mut deficient = 0u64;
        for v in self.g.vertices() {
            let d = self.g.degree(v);
            if d > r {
                return false;
            }
            if d < r {
                deficient |= 1 << v;
            }
        }
        for v in BitIter(deficient) {
            let need = r - self.g.degree(v);
            let candidates = deficient & !self.g.neighbors_mask(v) & !(1 << v);
            if (candidates.count_ones() as usize) < need {
                return false;
            }
        }
        true
    }

    /// Nearly-cubic pruning rule: after the insertion at most two vertices
    /// may exceed degree 3 and none may exceed 4.
    fn nearly_cubic_allows(&self, a: usize, b: usize) -> bool {
        let mut over3 = 0;
        for v in self.g.vertices() {
            let d = self.g.degree(v) + (v == a || v == b) as usize;
            if d > 4 {
                return false;
            }
            if d > 3 {
                over3 += 1;
            }
        }
        over3 <= 2
    }

    fn owns_emission(&self) -> bool {
        self.g.edge_count() >= self.split_depth || self.split.residue == 0
    }

    fn maybe_emit(&mut self, hc_count: u64) {
        let f = &self.cfg.filters;
        let g = &self.g;
        let rejected = &mut self.stats.rejected;
        if f.connected && !g.is_connected() {
            rejected.connected += 1;
            return;
        }
        if let Some(d) = f.min_degree {
            if g.vertices().any(|v| g.degree(v) < d) {
                rejected.min_degree += 1;
                return;
            }
        }
        let regular_want = f.regular.or(self.cfg.regular_target);
        if let Some(r) = regular_want {
            if g.vertices().any(|v| g.degree(v) != r) {
                rejected.regular += 1;
                return;
            }
        }
        let profile_want = if self.cfg.nearly_cubic {
            Some(DegreeProfile::nearly_cubic(g.n()))
        } else {
            f.degree_profile.clone()
        };
        if let Some(p) = profile_want {
            if g.degree_profile() != p {
                rejected.degree_profile += 1;
                return;
            }
        }
        if f.triangle_free && g.has_triangle() {
            rejected.triangle_free += 1;
            return;
        }
        if let Some(k) = f.exact_hc {
            let h = match self.cfg.mode {
                GenMode::ExactlyOne => 1,
                // The unbudgeted hamiltonian mode does not track counts.
                GenMode::AtMost(u64::MAX) | GenMode::Unrestricted => {
                    if g.n() < 3 {
                        0
                    } else {
                        hamilton::count_hc(g, k.saturating_add(1)).count
                    }
                }
                GenMode::AtMost(_) => hc_count,
                GenMode::NonHamiltonian => 0,
            };
            if h != k {
                rejected.exact_hc += 1;
                return;
            }
        }
        if f.no_nm1_cycle {
            let len = g.n() - 1;
            if len >= 3 && hamilton::count_cycles_of_length(g, len, 1).count > 0 {
                rejected.no_nm1_cycle += 1;
                return;
            }
        }
        self.stats.emitted += 1;
        (self.visitor)(g);
    }
}

/// One cheap tuple component by level index (mode-dependent numbering).
fn cheap_component(
    g: &Graph,
    anchor: Option<&HamAnchor>,
    e: VertexPair,
    mode: GenMode,
    level: usize,
) -> i32 {
    let (a, b) = (e.a(), e.b());
    let full = mode.uses_full_tuple();
    let idx = if full || level < 2 { level } else { level + 3 };
    match idx {
        0 => (g.degree(a).max(g.degree(b))) as i32,
        1 => (g.degree(a).min(g.degree(b))) as i32,
        2 => {
            let anchor = anchor.expect("anchored mode");
            -(anchor.cyclic_distance(a, b) as i32)
        }
        3 | 4 => {
            let anchor = anchor.expect("anchored mode");
            let ring_sum = |v: usize| (g.degree(anchor.prev(v)) + g.degree(anchor.next(v))) as i32;
            let (sa, sb) = (ring_sum(a), ring_sum(b));
            if idx == 3 {
                -sa.max(sb)
            } else {
                -sa.min(sb)
            }
        }
        5 => (g.neighbors_mask(a) & g.neighbors_mask(b)).count_ones() as i32,
        6 => -(g.ball((1 << a) | (1 << b), 2).count_ones() as i32),
        _ => unreachable!("cheap levels only"),
    }
}

/// Up to three best (x0, x1) keys among reducible edges, kept with their
/// endpoints so a candidate insertion can skip entries it touches.
fn top_degree_pairs(g: &Graph, reducible: &[VertexPair]) -> Vec<((i32, i32), usize, usize)> {
    let mut top: Vec<((i32, i32), usize, usize)> = Vec::with_capacity(4);
    for e in reducible {
        let (da, db) = (g.degree(e.a()) as i32, g.degree(e.b()) as i32);
        let key = (da.max(db), da.min(db));
        top.push((key, e.a(), e.b()));
        top.sort_unstable_by_key(|x| std::cmp::Reverse(x.0));
        top.truncate(3);
    }
    top
}
