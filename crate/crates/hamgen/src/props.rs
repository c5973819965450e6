//! Named constructions and conjecture verifiers: generalized Petersen
//! graphs, tups and their merges, extremal families, and scan routines over
//! generated graph streams.

use thiserror::Error;

use crate::canon::canonical_form;
use crate::generate::{generate, GenConfig, GenError, GenMode};
use crate::graph::{Graph, GraphError, VertexPair, MAX_VERTICES};
use crate::hamilton;
use crate::planarity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropsError {
    #[error("generalized Petersen parameters out of range: n={0}, k={1}")]
    BadPetersen(usize, usize),
    #[error("expected a cubic graph with exactly three hamiltonian cycles")]
    NotThreeCycleCubic,
    #[error("tup validation failed: {0}")]
    TupInvalid(&'static str),
    #[error("port bijection must permute 0..3")]
    BadBijection,
    #[error("stream element failed revalidation: {0}")]
    InputInvalid(&'static str),
    #[error("parameters out of supported range: {0}")]
    OutOfRange(&'static str),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Generalized Petersen graph GP(n, k): an outer n-cycle `u_0..u_{n-1}`
/// (labels `0..n`), an inner star polygon with step `k` (labels `n..2n`),
/// and spokes between them.
pub fn gp(n: usize, k: usize) -> Result<Graph, PropsError> {
    if n < 3 || k == 0 || 2 * k >= n || 2 * n > MAX_VERTICES {
        return Err(PropsError::BadPetersen(n, k));
    }
    let mut g = Graph::new_empty(2 * n)?;
    for i in 0..n {
        g.add_edge(VertexPair::new(i, (i + 1) % n)?)?;
        g.add_edge(VertexPair::new(i, n + i)?)?;
        g.add_edge(VertexPair::new(n + i, n + (i + k) % n)?)?;
    }
    Ok(g)
}

/// A graph with exactly three 2-valent vertices (the ports), all other
/// vertices cubic, and exactly one hamiltonian path between any two ports.
#[derive(Debug, Clone)]
pub struct Tup {
    graph: Graph,
    ports: [usize; 3],
}

impl Tup {
    /// Validate a candidate tup; ports are the 2-valent vertices in
    /// ascending label order.
    pub fn new(graph: Graph) -> Result<Self, PropsError> {
        let mut ports = Vec::with_capacity(3);
        for v in graph.vertices() {
            match graph.degree(v) {
                2 => ports.push(v),
                3 => {}
                _ => return Err(PropsError::TupInvalid("degrees must be 2 or 3")),
            }
        }
        if ports.len() != 3 {
            return Err(PropsError::TupInvalid("exactly three 2-valent vertices"));
        }
        let ports = [ports[0], ports[1], ports[2]];
        for i in 0..3 {
            for j in i + 1..3 {
                let r = hamilton::count_hp_between(&graph, ports[i], ports[j], 2);
                if r.count != 1 {
                    return Err(PropsError::TupInvalid(
                        "each port pair needs exactly one hamiltonian path",
                    ));
                }
            }
        }
        Ok(Tup { graph, ports })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// Ports in ascending label order.
    pub fn ports(&self) -> [usize; 3] {
        self.ports
    }
}

/// Delete a vertex of a cubic graph with exactly three hamiltonian cycles;
/// the result is a tup whose ports are the deleted vertex's neighbors.
pub fn make_tup(g: &Graph, v: usize) -> Result<Tup, PropsError> {
    if g.vertices().any(|u| g.degree(u) != 3) {
        return Err(PropsError::NotThreeCycleCubic);
    }
    let h = hamilton::count_hc(g, 4);
    if h.count != 3 {
        return Err(PropsError::NotThreeCycleCubic);
    }
    Tup::new(g.delete_vertex(v)?)
}

/// Which two ports the 2-vertex extension bridges, by ascending-port index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendStyle {
    /// Bridge the two lowest ports: p0 - a - b - p1.
    LowPair,
    /// Bridge the highest port back to the lowest: p2 - a - b - p0.
    HighToLow,
}

/// Grow a tup by two fresh vertices forming a path between two ports. Both
/// bridged ports become cubic; the fresh vertices are the new ports.
pub fn extend_tup(t: &Tup, style: ExtendStyle) -> Result<Tup, PropsError> {
    let n = t.order();
    if n + 2 > MAX_VERTICES {
        return Err(PropsError::OutOfRange("tup extension exceeds order 64"));
    }
    let [p0, p1, p2] = t.ports();
    let (x, y) = match style {
        ExtendStyle::LowPair => (p0, p1),
        ExtendStyle::HighToLow => (p2, p0),
    };
    let mut g = Graph::new_empty(n + 2)?;
    for e in t.graph().edges() {
        g.add_edge(e)?;
    }
    let (a, b) = (n, n + 1);
    g.add_edge(VertexPair::new(x, a)?)?;
    g.add_edge(VertexPair::new(a, b)?)?;
    g.add_edge(VertexPair::new(b, y)?)?;
    Tup::new(g)
}

/// The three successive extensions of a base tup used by the girth-5
/// family: orders grow by 2, 4, and 6.
pub fn tup_chain(base: &Tup) -> Result<[Tup; 3], PropsError> {
    let second = extend_tup(base, ExtendStyle::LowPair)?;
    let third = extend_tup(&second, ExtendStyle::HighToLow)?;
    let fourth = extend_tup(&third, ExtendStyle::HighToLow)?;
    Ok([second, third, fourth])
}

/// Merge two tups: join port i of `t1` to port `bijection[i]` of `t2`.
/// The result is cubic of order |t1| + |t2| with exactly three hamiltonian
/// cycles.
pub fn merge(t1: &Tup, t2: &Tup, bijection: [usize; 3]) -> Result<Graph, PropsError> {
    {
        let mut seen = [false; 3];
        for &i in &bijection {
            if i > 2 || seen[i] {
                return Err(PropsError::BadBijection);
            }
            seen[i] = true;
        }
    }
    let (n1, n2) = (t1.order(), t2.order());
    if n1 + n2 > MAX_VERTICES {
        return Err(PropsError::OutOfRange("merge exceeds order 64"));
    }
    let mut g = Graph::new_empty(n1 + n2)?;
    for e in t1.graph().edges() {
        g.add_edge(e)?;
    }
    for e in t2.graph().edges() {
        g.add_edge(VertexPair::new(e.a() + n1, e.b() + n1)?)?;
    }
    let (p1, p2) = (t1.ports(), t2.ports());
    for i in 0..3 {
        g.add_edge(VertexPair::new(p1[i], n1 + p2[bijection[i]])?)?;
    }
    Ok(g)
}

/// Merge a tup with a single vertex adjacent to all three ports.
pub fn merge_vertex(t: &Tup) -> Result<Graph, PropsError> {
    let n = t.order();
    if n + 1 > MAX_VERTICES {
        return Err(PropsError::OutOfRange("merge exceeds order 64"));
    }
    let mut g = Graph::new_empty(n + 1)?;
    for e in t.graph().edges() {
        g.add_edge(e)?;
    }
    for p in t.ports() {
        g.add_edge(VertexPair::new(p, n)?)?;
    }
    Ok(g)
}

/// Replace a cubic vertex by a triangle, one triangle corner per former
/// neighbor. Preserves the number of hamiltonian cycles.
pub fn replace_vertex_with_triangle(g: &Graph, v: usize) -> Result<Graph, PropsError> {
    if v >= g.n() || g.degree(v) != 3 {
        return Err(PropsError::InputInvalid("vertex must be cubic"));
    }
    let n = g.n();
    if n + 2 > MAX_VERTICES {
        return Err(PropsError::OutOfRange("expansion exceeds order 64"));
    }
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    let mut out = Graph::new_empty(n + 2)?;
    for e in g.edges() {
        if e.a() != v && e.b() != v {
            out.add_edge(e)?;
        }
    }
    let (a, b) = (n, n + 1);
    // v keeps its first neighbor; the fresh corners take the other two.
    out.add_edge(VertexPair::new(v, nbrs[0])?)?;
    out.add_edge(VertexPair::new(a, nbrs[1])?)?;
    out.add_edge(VertexPair::new(b, nbrs[2])?)?;
    out.add_edge(VertexPair::new(v, a)?)?;
    out.add_edge(VertexPair::new(a, b)?)?;
    out.add_edge(VertexPair::new(v, b)?)?;
    Ok(out)
}

/// Check a stream of supposedly planar uniquely hamiltonian graphs: each is
/// revalidated, and any member with fewer than two 2-valent vertices is
/// returned as a violation. Expected empty.
pub fn verify_bondy_jackson<I>(stream: I) -> Result<Vec<Graph>, PropsError>
where
    I: IntoIterator<Item = Graph>,
{
    let mut violations = Vec::new();
    for g in stream {
        if !planarity::is_planar(&g) {
            return Err(PropsError::InputInvalid("input graph is not planar"));
        }
        if g.n() < 3 || !hamilton::is_uniquely_hamiltonian(&g) {
            return Err(PropsError::InputInvalid(
                "input graph is not uniquely hamiltonian",
            ));
        }
        let two_valent = g.vertices().filter(|&v| g.degree(v) == 2).count();
        if two_valent < 2 {
            violations.push(g);
        }
    }
    Ok(violations)
}

/// Check the even-degree floor: a graph with one or two hamiltonian cycles
/// has at least `3 - h` vertices of even degree. Returns the violators
/// (expected empty).
pub fn verify_even_degree_floor<I>(stream: I) -> Result<Vec<Graph>, PropsError>
where
    I: IntoIterator<Item = Graph>,
{
    let mut violations = Vec::new();
    for g in stream {
        if g.n() < 3 {
            return Err(PropsError::InputInvalid("graph too small"));
        }
        let h = hamilton::count_hc(&g, 3);
        if h.count == 0 || h.count > 2 {
            return Err(PropsError::InputInvalid(
                "input must have one or two cycles",
            ));
        }
        let even = g.vertices().filter(|&v| g.degree(v) % 2 == 0).count();
        if even < (3 - h.count) as usize {
            violations.push(g);
        }
    }
    Ok(violations)
}

/// Minimum nonzero hamiltonian cycle count over all r-regular graphs of
/// order n, with the number of graphs attaining it.
pub fn scan_regular_min_hc(n: usize, r: usize) -> Result<(u64, u64), PropsError> {
    if !(n * r).is_multiple_of(2) || r < 2 || n <= r {
        return Err(PropsError::OutOfRange("no r-regular graphs of this order"));
    }
    if n > 12 {
        return Err(PropsError::OutOfRange(
            "regular scan supported up to order 12",
        ));
    }
    let mut cfg = GenConfig::new(n, GenMode::Unrestricted);
    cfg.regular_target = Some(r);
    let mut best: Option<(u64, u64)> = None;
    generate(&cfg, |g| {
        if g.n() < 3 {
            return;
        }
        let cap = best.map_or(u64::MAX, |(m, _)| m);
        let h = hamilton::count_hc(g, cap.saturating_add(1)).count;
        if h == 0 {
            return;
        }
        best = Some(match best {
            None => (h, 1),
            Some((m, _c)) if h < m => (h, 1),
            Some((m, c)) if h == m => (m, c + 1),
            Some(cur) => cur,
        });
    })?;
    best.ok_or(PropsError::OutOfRange(
        "no hamiltonian r-regular graph found",
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalKind {
    /// Uniquely hamiltonian graphs of maximum size.
    UniquelyHamiltonian,
    /// Uniquely traceable graphs (exactly one hamiltonian path) of maximum
    /// size.
    UniquelyTraceable,
}

/// Maximum-size record for a family at one order: the size bound and how
/// many graphs attain it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub order: usize,
    pub max_size: usize,
    pub count: u64,
}

/// Size bound floor(n^2/4) + 1 for uniquely hamiltonian graphs.
pub fn uh_size_bound(n: usize) -> usize {
    n * n / 4 + 1
}

/// Size bound floor((n-1)^2/4) + 1 for uniquely traceable graphs.
pub fn ut_size_bound(n: usize) -> usize {
    (n - 1) * (n - 1) / 4 + 1
}

pub fn extremal_counts(n: usize, kind: ExtremalKind) -> Result<ExtremalRecord, PropsError> {
    match kind {
        ExtremalKind::UniquelyHamiltonian => {
            if !(3..=11).contains(&n) {
                return Err(PropsError::OutOfRange("generation-based scan needs 3..=11"));
            }
            let bound = uh_size_bound(n);
            let cfg = GenConfig::new(n, GenMode::ExactlyOne);
            let mut count = 0;
            generate(&cfg, |g| {
                if g.edge_count() == bound {
                    count += 1;
                }
            })?;
            Ok(ExtremalRecord {
                order: n,
                max_size: bound,
                count,
            })
        }
        ExtremalKind::UniquelyTraceable => {
            if !(2..=12).contains(&n) {
                return Err(PropsError::OutOfRange("traceable scan needs 2..=12"));
            }
            let bound = ut_size_bound(n);
            if n <= 3 {
                // The path is the only uniquely traceable graph this small.
                return Ok(ExtremalRecord {
                    order: n,
                    max_size: bound,
                    count: 1,
                });
            }
            // Every maximum-size uniquely traceable graph arises from a
            // maximum-size uniquely hamiltonian graph of order n-1 by
            // splitting a 2-valent vertex into two leaves.
            let prev = extremal_counts(n - 1, ExtremalKind::UniquelyHamiltonian)?;
            let mut forms = std::collections::HashSet::new();
            let cfg = GenConfig::new(n - 1, GenMode::ExactlyOne);
            let mut failure = None;
            generate(&cfg, |g| {
                if g.edge_count() != prev.max_size {
                    return;
                }
                for w in g.vertices().filter(|&w| g.degree(w) == 2) {
                    match split_two_valent(g, w) {
                        Ok(split) => {
                            debug_assert_eq!(split.edge_count(), bound);
                            if hamilton::count_hp(&split, 2).count == 1 {
                                forms.insert(canonical_form(&split));
                            }
                        }
                        Err(e) => failure = Some(e),
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            Ok(ExtremalRecord {
                order: n,
                max_size: bound,
                count: forms.len() as u64,
            })
        }
    }
}

/// Split a 2-valent vertex into two leaves: `w` keeps one neighbor, a fresh
/// vertex takes the other.
fn split_two_valent(g: &Graph, w: usize) -> Result<Graph, PropsError> {
    if g.degree(w) != 2 {
        return Err(PropsError::InputInvalid("vertex must be 2-valent"));
    }
    if g.n() + 1 > MAX_VERTICES {
        return Err(PropsError::OutOfRange("split exceeds order 64"));
    }
    let nbrs: Vec<usize> = g.neighbors(w).collect();
    let mut out = Graph::new_empty(g.n() + 1)?;
    for e in g.edges() {
        out.add_edge(e)?;
    }
    out.remove_edge(VertexPair::new(w, nbrs[1])?)?;
    out.add_edge(VertexPair::new(g.n(), nbrs[1])?)?;
    Ok(out)
}

/// Scan result for planar cubic graphs with exactly three hamiltonian
/// cycles at one (even) order.
#[derive(Debug, Clone)]
pub struct CantoniScan {
    /// All connected cubic graphs with exactly three hamiltonian cycles.
    pub three_cycle_cubic: u64,
    /// The planar, triangle-free members among them; counterexamples if
    /// any exist.
    pub violations: Vec<Graph>,
}

/// Every planar cubic graph with exactly three hamiltonian cycles should
/// contain a triangle; report the ones that do not.
pub fn cantoni_scan(n: usize) -> Result<CantoniScan, PropsError> {
    if !n.is_multiple_of(2) {
        return Err(PropsError::OutOfRange("cubic graphs need even order"));
    }
    if !(4..=16).contains(&n) {
        return Err(PropsError::OutOfRange(
            "cantoni scan supported up to order 16",
        ));
    }
    let mut cfg = GenConfig::new(n, GenMode::AtMost(3));
    cfg.max_degree = Some(3);
    cfg.regular_target = Some(3);
    cfg.filters.exact_hc = Some(3);
    let mut count = 0;
    let mut violations = Vec::new();
    generate(&cfg, |g| {
        count += 1;
        if planarity::is_planar(g) && !g.has_triangle() {
            violations.push(g.clone());
        }
    })?;
    Ok(CantoniScan {
        three_cycle_cubic: count,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_graph_properties() {
        let p = gp(5, 2).unwrap();
        assert_eq!(p.n(), 10);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        assert_eq!(p.girth(), Some(5));
        assert_eq!(hamilton::count_hc(&p, 1).count, 0);
        assert!(gp(5, 3).is_err());
        assert!(gp(40, 2).is_err());
    }

    #[test]
    fn schwenk_three_cycle_criterion() {
        // h(GP(n,2)) = 3 exactly when n = 3 mod 6.
        for n in 5..=13 {
            let g = gp(n, 2).unwrap();
            let h = hamilton::count_hc(&g, 50).count;
            if n % 6 == 3 {
                assert_eq!(h, 3, "GP({n},2)");
            } else {
                assert_ne!(h, 3, "GP({n},2)");
            }
        }
    }

    #[test]
    fn k4_tup_roundtrip() {
        let k4 = Graph::new_complete(4).unwrap();
        let t = make_tup(&k4, 3).unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.ports(), [0, 1, 2]);
        // Re-attaching a vertex to the ports reconstructs K4.
        let back = merge_vertex(&t).unwrap();
        assert_eq!(hamilton::count_hc(&back, 10).count, 3);
        assert_eq!(canonical_form(&back), canonical_form(&k4));
    }

    #[test]
    fn petersen_like_tup_of_order_17() {
        let g = gp(9, 2).unwrap();
        let t = make_tup(&g, 0).unwrap();
        assert_eq!(t.order(), 17);
        let two_valent = t
            .graph()
            .vertices()
            .filter(|&v| t.graph().degree(v) == 2)
            .count();
        assert_eq!(two_valent, 3);
    }

    #[test]
    fn tup_chain_orders_and_girth() {
        let base = make_tup(&gp(9, 2).unwrap(), 0).unwrap();
        let chain = tup_chain(&base).unwrap();
        assert_eq!(
            [chain[0].order(), chain[1].order(), chain[2].order()],
            [19, 21, 23]
        );
        for t in &chain {
            assert_eq!(t.graph().girth(), Some(5));
        }
    }

    #[test]
    fn merges_are_cubic_with_three_cycles() {
        let base = make_tup(&gp(9, 2).unwrap(), 0).unwrap();
        let g = merge(&base, &base, [0, 1, 2]).unwrap();
        assert_eq!(g.n(), 34);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert_eq!(hamilton::count_hc(&g, 10).count, 3);
    }

    #[test]
    fn bad_bijection_rejected() {
        let t = make_tup(&Graph::new_complete(4).unwrap(), 0).unwrap();
        assert!(matches!(
            merge(&t, &t, [0, 0, 2]),
            Err(PropsError::BadBijection)
        ));
    }

    #[test]
    fn triangle_replacement_preserves_cycle_count() {
        let k4 = Graph::new_complete(4).unwrap();
        let g = replace_vertex_with_triangle(&k4, 0).unwrap();
        assert_eq!(g.n(), 6);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert_eq!(hamilton::count_hc(&g, 10).count, 3);
        let p = gp(5, 2).unwrap();
        let h = replace_vertex_with_triangle(&p, 4).unwrap();
        assert_eq!(hamilton::count_hc(&h, 10).count, 0);
    }

    #[test]
    fn bondy_jackson_on_small_streams() {
        // All uniquely hamiltonian planar graphs on 7 vertices comply.
        let mut cfg = GenConfig::new(7, GenMode::ExactlyOne);
        cfg.planar_only = true;
        let mut graphs = Vec::new();
        generate(&cfg, |g| graphs.push(g.clone())).unwrap();
        assert_eq!(graphs.len(), 49);
        assert!(verify_bondy_jackson(graphs).unwrap().is_empty());
        // Non-planar input is rejected.
        assert!(verify_bondy_jackson([Graph::new_complete(5).unwrap()]).is_err());
    }

    #[test]
    fn even_degree_floor_on_small_streams() {
        let c5 = Graph::new_cycle(5).unwrap();
        assert!(verify_even_degree_floor([c5]).unwrap().is_empty());
        // K4 has three cycles: invalid input for this check.
        assert!(verify_even_degree_floor([Graph::new_complete(4).unwrap()]).is_err());
    }

    #[test]
    fn four_regular_minimum_at_small_orders() {
        assert_eq!(scan_regular_min_hc(5, 4).unwrap(), (12, 1));
        assert_eq!(scan_regular_min_hc(6, 4).unwrap(), (16, 1));
        assert!(scan_regular_min_hc(5, 3).is_err());
    }

    #[test]
    fn extremal_uniquely_hamiltonian() {
        // Counts 2^(ceil(n/2) - 4), clamped to 1 below n=7.
        for (n, count) in [(4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (9, 2)] {
            let rec = extremal_counts(n, ExtremalKind::UniquelyHamiltonian).unwrap();
            assert_eq!(rec.max_size, uh_size_bound(n));
            assert_eq!(rec.count, count, "order {n}");
        }
    }

    #[test]
    fn extremal_uniquely_traceable() {
        for (n, count) in [(5, 1), (6, 1), (7, 1), (8, 2), (9, 2)] {
            let rec = extremal_counts(n, ExtremalKind::UniquelyTraceable).unwrap();
            assert_eq!(rec.max_size, ut_size_bound(n));
            assert_eq!(rec.count, count, "order {n}");
        }
    }

    #[test]
    fn cantoni_scan_small_orders() {
        let scan = cantoni_scan(10).unwrap();
        assert_eq!(scan.three_cycle_cubic, 3);
        assert!(scan.violations.is_empty());
        assert!(cantoni_scan(9).is_err());
    }
}
