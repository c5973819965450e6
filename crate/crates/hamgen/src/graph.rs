//! Compact simple-graph value type over fixed vertex labels `0..n`.
//!
//! Adjacency is stored as one 64-bit mask per vertex, so every neighborhood
//! query and intersection is a handful of word operations. The maximum
//! supported order is [`MAX_VERTICES`].

use std::fmt;

use thiserror::Error;

/// Largest supported graph order; adjacency rows fit in one machine word.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Capacity violation: requested order outside the supported range.
    #[error("graph order {0} outside supported range {1}..={2}")]
    OrderOutOfRange(usize, usize, usize),
    /// Contract violation: a vertex label is not in `0..n`.
    #[error("vertex {0} out of range for order {1}")]
    VertexOutOfRange(usize, usize),
    /// Contract violation: the two endpoints of a pair coincide.
    #[error("vertex pair endpoints coincide: {0}")]
    DegeneratePair(usize),
    /// Contract violation: edge already present.
    #[error("edge {0} already present")]
    EdgePresent(VertexPair),
    /// Contract violation: edge not present.
    #[error("edge {0} not present")]
    EdgeAbsent(VertexPair),
}

/// Unordered pair of distinct vertices, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPair {
    a: usize,
    b: usize,
}

impl VertexPair {
    pub fn new(u: usize, v: usize) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::DegeneratePair(u));
        }
        Ok(VertexPair {
            a: u.min(v),
            b: u.max(v),
        })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Image of the pair under a vertex permutation.
    pub fn map(&self, perm: &[usize]) -> VertexPair {
        VertexPair::new(perm[self.a], perm[self.b]).expect("permutation is injective")
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Multiset of vertex degrees, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile(Vec<usize>);

impl DegreeProfile {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|x, y| y.cmp(x));
        DegreeProfile(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Profile `(4, 4, 3, ..., 3)` on `n` vertices.
    pub fn nearly_cubic(n: usize) -> Self {
        let mut v = vec![3; n];
        if n >= 2 {
            v[0] = 4;
            v[1] = 4;
        }
        DegreeProfile(v)
    }

    pub fn regular(n: usize, r: usize) -> Self {
        DegreeProfile(vec![r; n])
    }
}

/// Simple undirected graph on vertices `0..n` with bitmask adjacency rows.
///
/// Invariants (checked after every mutation in debug builds): adjacency is
/// symmetric, loop-free, rows for labels `>= n` are zero, and the cached edge
/// count equals half the total popcount.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// The cycle `C_n` with edges `{i, i+1 mod n}`.
    pub fn new_cycle(n: usize) -> Result<Self, GraphError> {
        if !(3..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::OrderOutOfRange(n, 3, MAX_VERTICES));
        }
        let mut g = Graph {
            n,
            m: 0,
            adj: [0; MAX_VERTICES],
        };
        for i in 0..n {
            g.add_edge_unchecked(i, (i + 1) % n);
        }
        g.debug_check();
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn new_empty(n: usize) -> Result<Self, GraphError> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::OrderOutOfRange(n, 1, MAX_VERTICES));
        }
        Ok(Graph {
            n,
            m: 0,
            adj: [0; MAX_VERTICES],
        })
    }

    /// Graph from an explicit edge list. Duplicate edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new_empty(n)?;
        for &(u, v) in edges {
            g.add_edge(VertexPair::new(u, v)?)?;
        }
        Ok(g)
    }

    /// The complete graph `K_n`.
    pub fn new_complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new_empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g.debug_check();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Neighborhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> BitIter {
        BitIter(self.adj[v])
    }

    /// Mask with one bit per vertex of the graph.
    #[inline]
    pub fn full_mask(&self) -> u64 {
        mask_below(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v, self.n))
        }
    }

    fn check_pair(&self, p: VertexPair) -> Result<(), GraphError> {
        self.check_vertex(p.a)?;
        self.check_vertex(p.b)
    }

    pub fn add_edge(&mut self, p: VertexPair) -> Result<(), GraphError> {
        self.check_pair(p)?;
        if self.has_edge(p.a, p.b) {
            return Err(GraphError::EdgePresent(p));
        }
        self.add_edge_unchecked(p.a, p.b);
        self.debug_check();
        Ok(())
    }

    pub fn remove_edge(&mut self, p: VertexPair) -> Result<(), GraphError> {
        self.check_pair(p)?;
        if !self.has_edge(p.a, p.b) {
            return Err(GraphError::EdgeAbsent(p));
        }
        self.remove_edge_unchecked(p.a, p.b);
        self.debug_check();
        Ok(())
    }

    #[inline]
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n && !self.has_edge(u, v));
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.m += 1;
    }

    #[inline]
    pub(crate) fn remove_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(self.has_edge(u, v));
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.m -= 1;
    }

    /// Contract an edge: merge `b` into `a`, suppressing parallel edges and
    /// loops, then close the label gap. The result is simple, of order `n-1`.
    pub fn contract_edge(&self, p: VertexPair) -> Result<Graph, GraphError> {
        self.check_pair(p)?;
        if !self.has_edge(p.a, p.b) {
            return Err(GraphError::EdgeAbsent(p));
        }
        let mut g = self.clone();
        let merged = (g.adj[p.a] | g.adj[p.b]) & !(1 << p.a) & !(1 << p.b);
        // Detach both endpoints, then rewire the union onto a.
        for v in 0..g.n {
            g.adj[v] &= !(1 << p.a) & !(1 << p.b);
        }
        g.adj[p.a] = merged;
        g.adj[p.b] = 0;
        for v in BitIter(merged) {
            g.adj[v] |= 1 << p.a;
        }
        g.recount();
        g.delete_vertex(p.b)
    }

    /// Delete a vertex, relabeling `v+1..n` down by one (order-preserving).
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        if self.n < 2 {
            return Err(GraphError::OrderOutOfRange(self.n - 1, 1, MAX_VERTICES));
        }
        let mut g = Graph {
            n: self.n - 1,
            m: 0,
            adj: [0; MAX_VERTICES],
        };
        let low = mask_below(v);
        for w in 0..self.n {
            if w == v {
                continue;
            }
            let row = self.adj[w] & !(1 << v);
            let squeezed = (row & low) | ((row >> 1) & !low);
            let dst = if w < v { w } else { w - 1 };
            g.adj[dst] = squeezed;
        }
        g.recount();
        g.debug_check();
        Ok(g)
    }

    /// Replace edge `ab` by the path `a - new - b` through a fresh vertex.
    pub fn subdivide_edge(&self, p: VertexPair) -> Result<Graph, GraphError> {
        self.check_pair(p)?;
        if !self.has_edge(p.a, p.b) {
            return Err(GraphError::EdgeAbsent(p));
        }
        if self.n == MAX_VERTICES {
            return Err(GraphError::OrderOutOfRange(self.n + 1, 1, MAX_VERTICES));
        }
        let mut g = self.clone();
        let w = g.n;
        g.n += 1;
        g.remove_edge_unchecked(p.a, p.b);
        g.add_edge_unchecked(p.a, w);
        g.add_edge_unchecked(w, p.b);
        g.debug_check();
        Ok(g)
    }

    /// Hop count between two vertices, `None` if unreachable.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut seen = 1u64 << u;
        let mut frontier = seen;
        let mut dist = 0;
        while frontier != 0 {
            dist += 1;
            let mut next = 0u64;
            for w in BitIter(frontier) {
                next |= self.adj[w];
            }
            next &= !seen;
            if next >> v & 1 == 1 {
                return Some(dist);
            }
            seen |= next;
            frontier = next;
        }
        None
    }

    /// Vertices within graph distance `radius` of any vertex in `from`.
    pub fn ball(&self, from: u64, radius: usize) -> u64 {
        let mut seen = from;
        let mut frontier = from;
        for _ in 0..radius {
            let mut next = 0u64;
            for w in BitIter(frontier) {
                next |= self.adj[w];
            }
            next &= !seen;
            if next == 0 {
                break;
            }
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Length of a shortest cycle, `None` for forests.
    ///
    /// For every edge `uv`: the shortest cycle through `uv` has length
    /// `1 + dist(u, v)` in the graph without that edge; the girth is the
    /// minimum over all edges.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut g = self.clone();
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !mask_below(u + 1)) {
                g.remove_edge_unchecked(u, v);
                if let Some(d) = g.distance(u, v) {
                    let len = d + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
                g.add_edge_unchecked(u, v);
            }
        }
        best
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.reachable_from(1 << 0) == self.full_mask()
    }

    /// Set of vertices reachable from the seed mask (including it).
    pub fn reachable_from(&self, seed: u64) -> u64 {
        let mut seen = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let mut next = 0u64;
            for w in BitIter(frontier) {
                next |= self.adj[w];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::new((0..self.n).map(|v| self.degree(v)).collect())
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<VertexPair> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !mask_below(u + 1)) {
                out.push(VertexPair { a: u, b: v });
            }
        }
        out
    }

    /// Non-adjacent unordered pairs in lexicographic order.
    pub fn nonadjacent_pairs(&self) -> Vec<VertexPair> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let non = !self.adj[u] & self.full_mask() & !mask_below(u + 1);
            for v in BitIter(non) {
                out.push(VertexPair { a: u, b: v });
            }
        }
        out
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            m: 0,
            adj: [0; MAX_VERTICES],
        };
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !mask_below(u + 1)) {
                g.add_edge_unchecked(perm[u], perm[v]);
            }
        }
        g.debug_check();
        g
    }

    pub fn has_triangle(&self) -> bool {
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !mask_below(u + 1)) {
                if self.adj[u] & self.adj[v] != 0 {
                    return true;
                }
            }
        }
        false
    }

    fn recount(&mut self) {
        self.m = self.adj[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2;
    }

    #[inline]
    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        self.assert_invariants();
    }

    /// Panics unless symmetry, loop-freeness and the cached size hold.
    pub fn assert_invariants(&self) {
        let mut total = 0;
        for v in 0..self.n {
            assert_eq!(self.adj[v] & !self.full_mask(), 0, "stray bits in row {v}");
            assert_eq!(self.adj[v] >> v & 1, 0, "loop at {v}");
            total += self.adj[v].count_ones() as usize;
            for u in BitIter(self.adj[v]) {
                assert!(self.has_edge(u, v), "asymmetric pair ({u},{v})");
            }
        }
        for v in self.n..MAX_VERTICES {
            assert_eq!(self.adj[v], 0, "row {v} beyond order {} not zero", self.n);
        }
        assert_eq!(total, 2 * self.m, "cached edge count wrong");
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=[", self.n, self.m)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Iterator over the set bits of a word, ascending.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Mask of the bits strictly below `k`.
#[inline]
pub fn mask_below(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}
