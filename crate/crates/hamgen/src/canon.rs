//! Canonical labeling, automorphism-group generators, and orbit queries.
//!
//! The engine runs equitable-partition refinement seeded by degree, then
//! backtracks over target cells (individualization-refinement). Leaves are
//! discrete partitions; the canonical labeling is the leaf maximizing the
//! pair (path invariant sequence, relabeled adjacency), and automorphisms
//! are harvested whenever two leaves produce identical relabeled adjacency.
//! Discovered automorphisms prune sibling branches via orbits of the
//! subgroup fixing the individualized prefix, which keeps the recorded
//! generators a generating set of the full automorphism group.

use crate::graph::{mask_below, BitIter, Graph, VertexPair, MAX_VERTICES};
use crate::graph6;

/// Canonical labeling of a graph together with the automorphism generators
/// discovered while computing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalReport {
    /// Permutation mapping input labels to canonical labels.
    pub labeling: Vec<usize>,
    /// graph6 bytes of the canonically relabeled graph. Two graphs receive
    /// equal forms exactly when they are isomorphic.
    pub form: Vec<u8>,
    /// Generating set of the automorphism group (possibly empty).
    pub generators: Vec<Vec<usize>>,
}

/// Partition of a ground set (vertices, edges, or vertex pairs) into orbits
/// under the automorphism group; `ids[i]` is the orbit of element `i` in the
/// ground set's lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub ids: Vec<usize>,
    pub orbit_count: usize,
}

pub fn canonical_report(g: &Graph) -> CanonicalReport {
    CanonEngine::new().report(g)
}

/// Canonical form alone (graph6 bytes of the relabeled graph).
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let mut e = CanonEngine::new();
    e.run(g);
    e.form(g)
}

/// Orbits of the vertex set under `Aut(G)`.
pub fn vertex_orbits(g: &Graph) -> OrbitPartition {
    let mut e = CanonEngine::new();
    e.run(g);
    let mut uf = UnionFind::new(g.n());
    for gen in e.generators_raw() {
        for (v, &img) in gen.iter().enumerate().take(g.n()) {
            uf.union(v, img as usize);
        }
    }
    uf.into_partition()
}

/// Orbits of the edge set (lexicographic edge order) under `Aut(G)`.
pub fn edge_orbits(g: &Graph) -> OrbitPartition {
    let mut e = CanonEngine::new();
    e.run(g);
    pair_orbits(e.generators_raw(), &g.edges())
}

/// One representative per orbit of unordered non-adjacent vertex pairs.
pub fn nonadjacent_pair_orbits(g: &Graph) -> Vec<VertexPair> {
    let mut e = CanonEngine::new();
    e.run(g);
    let pairs = g.nonadjacent_pairs();
    let part = pair_orbits(e.generators_raw(), &pairs);
    let mut seen = vec![false; part.orbit_count];
    let mut reps = Vec::with_capacity(part.orbit_count);
    for (i, &id) in part.ids.iter().enumerate() {
        if !seen[id] {
            seen[id] = true;
            reps.push(pairs[i]);
        }
    }
    reps
}

/// Orbits of an explicit pair list under generators acting componentwise.
pub(crate) fn pair_orbits(
    generators: &[[u8; MAX_VERTICES]],
    pairs: &[VertexPair],
) -> OrbitPartition {
    let mut id_of = vec![usize::MAX; MAX_VERTICES * MAX_VERTICES];
    for (i, p) in pairs.iter().enumerate() {
        id_of[p.a() * MAX_VERTICES + p.b()] = i;
    }
    let mut uf = UnionFind::new(pairs.len());
    for gen in generators {
        for (i, p) in pairs.iter().enumerate() {
            let (u, v) = (gen[p.a()] as usize, gen[p.b()] as usize);
            let j = id_of[u.min(v) * MAX_VERTICES + u.max(v)];
            debug_assert!(j != usize::MAX, "generator must preserve the ground set");
            uf.union(i, j);
        }
    }
    uf.into_partition()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BestCmp {
    Less,
    Equal,
    Greater,
}

/// Reusable search engine; one instance per worker thread.
pub struct CanonEngine {
    n: usize,
    // Ordered partition: lab[i] = vertex at position i, pos[v] = position of
    // v, and cell_end bit i marks the last position of a cell.
    lab: [u8; MAX_VERTICES],
    pos: [u8; MAX_VERTICES],
    cell_end: u64,
    queue: Vec<u64>,
    // Current path state.
    prefix: Vec<u8>,
    path_inv: Vec<u64>,
    // First leaf (automorphism reference) and best leaf (canonical choice).
    have_first: bool,
    first_path: Vec<u64>,
    first_pos: [u8; MAX_VERTICES],
    first_rows: [u64; MAX_VERTICES],
    best_path: Vec<u64>,
    best_pos: [u8; MAX_VERTICES],
    best_rows: [u64; MAX_VERTICES],
    generators: Vec<[u8; MAX_VERTICES]>,
    // Scratch.
    counts: [u8; MAX_VERTICES],
    snapshots: Vec<([u8; MAX_VERTICES], [u8; MAX_VERTICES], u64)>,
    rows_scratch: [u64; MAX_VERTICES],
    uf_scratch: UnionFind,
}

impl Default for CanonEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl CanonEngine {
    pub fn new() -> Self {
        CanonEngine {
            n: 0,
            lab: [0; MAX_VERTICES],
            pos: [0; MAX_VERTICES],
            cell_end: 0,
            queue: Vec::with_capacity(MAX_VERTICES),
            prefix: Vec::with_capacity(MAX_VERTICES),
            path_inv: Vec::with_capacity(MAX_VERTICES + 1),
            have_first: false,
            first_path: Vec::new(),
            first_pos: [0; MAX_VERTICES],
            first_rows: [0; MAX_VERTICES],
            best_path: Vec::new(),
            best_pos: [0; MAX_VERTICES],
            best_rows: [0; MAX_VERTICES],
            generators: Vec::new(),
            counts: [0; MAX_VERTICES],
            snapshots: Vec::with_capacity(MAX_VERTICES),
            rows_scratch: [0; MAX_VERTICES],
            uf_scratch: UnionFind::new(MAX_VERTICES),
        }
    }

    /// Run the search and assemble the full report.
    pub fn report(&mut self, g: &Graph) -> CanonicalReport {
        self.run(g);
        CanonicalReport {
            labeling: self.best_pos[..self.n]
                .iter()
                .map(|&p| p as usize)
                .collect(),
            form: self.form(g),
            generators: self
                .generators
                .iter()
                .map(|gen| gen[..self.n].iter().map(|&v| v as usize).collect())
                .collect(),
        }
    }

    /// Run the search, leaving results readable through the accessors below.
    pub fn run(&mut self, g: &Graph) {
        self.n = g.n();
        self.have_first = false;
        self.generators.clear();
        self.prefix.clear();
        self.path_inv.clear();
        self.queue.clear();
        self.seed_by_degree(g);
        self.search(g, BestCmp::Equal, true);
        debug_assert!(self.have_first);
    }

    /// Canonical labels from the last `run`: `labeling_raw()[v]` is the new
    /// label of `v`.
    pub(crate) fn labeling_raw(&self) -> &[u8; MAX_VERTICES] {
        &self.best_pos
    }

    pub(crate) fn generators_raw(&self) -> &[[u8; MAX_VERTICES]] {
        &self.generators
    }

    /// graph6 form of the canonically relabeled graph.
    pub fn form(&self, g: &Graph) -> Vec<u8> {
        let perm: Vec<usize> = self.best_pos[..self.n]
            .iter()
            .map(|&p| p as usize)
            .collect();
        graph6::encode(&g.apply_permutation(&perm))
    }

    fn seed_by_degree(&mut self, g: &Graph) {
        let n = self.n;
        let mut by_deg: [u64; MAX_VERTICES + 1] = [0; MAX_VERTICES + 1];
        for v in 0..n {
            by_deg[g.degree(v)] |= 1 << v;
        }
        self.cell_end = 0;
        let mut idx = 0;
        for mask in by_deg.iter().take(n + 1) {
            if *mask == 0 {
                continue;
            }
            for v in BitIter(*mask) {
                self.lab[idx] = v as u8;
                self.pos[v] = idx as u8;
                idx += 1;
            }
            self.cell_end |= 1 << (idx - 1);
            self.queue.push(*mask);
        }
        debug_assert_eq!(idx, n);
    }

    /// Split cells against queued splitter masks until equitable.
    fn refine(&mut self, g: &Graph) {
        while let Some(splitter) = self.queue.pop() {
            let mut start = 0;
            while start < self.n {
                let end = self.cell_end_at(start);
                if end > start {
                    self.split_cell(g, start, end, splitter);
                }
                start = end + 1;
            }
        }
    }

    #[inline]
    fn cell_end_at(&self, start: usize) -> usize {
        (self.cell_end >> start).trailing_zeros() as usize + start
    }

    fn split_cell(&mut self, g: &Graph, start: usize, end: usize, splitter: u64) {
        let first_count =
            (g.neighbors_mask(self.lab[start] as usize) & splitter).count_ones() as u8;
        let mut uniform = true;
        for i in start..=end {
            let c = (g.neighbors_mask(self.lab[i] as usize) & splitter).count_ones() as u8;
            self.counts[i] = c;
            uniform &= c == first_count;
        }
        if uniform {
            return;
        }
        // Stable counting sort of the cell by count, ascending; fragment
        // order is therefore label-free.
        let width = end - start + 1;
        let mut order: [(u8, u8); MAX_VERTICES] = [(0, 0); MAX_VERTICES];
        for (i, slot) in order[..width].iter_mut().enumerate() {
            *slot = (self.counts[start + i], self.lab[start + i]);
        }
        order[..width].sort_unstable();
        let mut fragment_start = 0;
        for (i, &(c, v)) in order[..width].iter().enumerate() {
            self.lab[start + i] = v;
            self.pos[v as usize] = (start + i) as u8;
            if i + 1 == width || order[i + 1].0 != c {
                self.cell_end |= 1 << (start + i);
                let mut mask = 0u64;
                for &(_, w) in &order[fragment_start..=i] {
                    mask |= 1 << w;
                }
                self.queue.push(mask);
                fragment_start = i + 1;
            }
        }
    }

    /// Label-free structural hash of the current partition: cell sizes and
    /// per-cell adjacency counts against every cell, in partition order.
    fn node_invariant(&self, g: &Graph) -> u64 {
        let mut cell_masks: [u64; MAX_VERTICES] = [0; MAX_VERTICES];
        let mut cell_count = 0;
        let mut start = 0;
        while start < self.n {
            let end = self.cell_end_at(start);
            let mut mask = 0u64;
            for i in start..=end {
                mask |= 1 << self.lab[i];
            }
            cell_masks[cell_count] = mask;
            cell_count += 1;
            start = end + 1;
        }
        let mut h = 0xcbf29ce484222325u64 ^ (self.n as u64);
        for i in 0..cell_count {
            h = mix(h, cell_masks[i].count_ones() as u64);
            let rep = cell_masks[i].trailing_zeros() as usize;
            for m in cell_masks.iter().take(cell_count) {
                h = mix(h, (g.neighbors_mask(rep) & m).count_ones() as u64);
            }
        }
        h
    }

    fn is_discrete(&self) -> bool {
        self.cell_end == mask_below(self.n)
    }

    /// Adjacency rows of the relabeled graph: row i holds the canonical
    /// neighbors of the vertex at position i.
    fn leaf_rows(&mut self, g: &Graph) {
        for i in 0..self.n {
            let mut row = 0u64;
            for u in BitIter(g.neighbors_mask(self.lab[i] as usize)) {
                row |= 1 << self.pos[u];
            }
            self.rows_scratch[i] = row;
        }
    }

    fn search(&mut self, g: &Graph, mut cmp_best: BestCmp, mut eq_first: bool) {
        self.refine(g);
        let depth = self.prefix.len();
        let inv = self.node_invariant(g);
        self.path_inv.push(inv);

        if self.have_first {
            eq_first = eq_first && depth < self.first_path.len() && inv == self.first_path[depth];
            if cmp_best == BestCmp::Equal {
                if depth >= self.best_path.len() {
                    debug_assert!(false, "equal-prefix paths must share depth");
                    cmp_best = BestCmp::Greater;
                } else if inv > self.best_path[depth] {
                    cmp_best = BestCmp::Greater;
                } else if inv < self.best_path[depth] {
                    cmp_best = BestCmp::Less;
                }
            }
            if cmp_best == BestCmp::Less && !eq_first {
                self.path_inv.pop();
                return;
            }
        }

        if self.is_discrete() {
            self.handle_leaf(g, cmp_best, eq_first);
            self.path_inv.pop();
            return;
        }

        // Target cell: first smallest non-singleton.
        let (mut t_start, mut t_end, mut t_size) = (0, 0, usize::MAX);
        let mut start = 0;
        while start < self.n {
            let end = self.cell_end_at(start);
            let size = end - start + 1;
            if size > 1 && size < t_size {
                (t_start, t_end, t_size) = (start, end, size);
            }
            start = end + 1;
        }
        let mut members: [u8; MAX_VERTICES] = [0; MAX_VERTICES];
        members[..t_size].copy_from_slice(&self.lab[t_start..=t_end]);
        let cell_mask: u64 = members[..t_size].iter().fold(0, |m, &v| m | 1 << v);

        let mut processed = 0u64;
        for &vm in &members[..t_size] {
            let v = vm as usize;
            if processed != 0 && self.in_processed_orbit(v, processed) {
                continue;
            }
            self.snapshots.push((self.lab, self.pos, self.cell_end));
            self.individualize(t_start, v, cell_mask);
            self.prefix.push(v as u8);
            self.search(g, cmp_best, eq_first);
            self.prefix.pop();
            let (lab, pos, cell_end) = self.snapshots.pop().expect("pushed above");
            (self.lab, self.pos, self.cell_end) = (lab, pos, cell_end);
            self.queue.clear();
            processed |= 1 << v;
        }
        self.path_inv.pop();
    }

    /// Move `v` to the front of its cell as a singleton and queue both
    /// fragments as splitters.
    fn individualize(&mut self, start: usize, v: usize, cell_mask: u64) {
        let from = self.pos[v] as usize;
        let displaced = self.lab[start];
        self.lab[start] = v as u8;
        self.lab[from] = displaced;
        self.pos[v] = start as u8;
        self.pos[displaced as usize] = from as u8;
        self.cell_end |= 1 << start;
        self.queue.push(1 << v);
        self.queue.push(cell_mask & !(1 << v));
    }

    /// Orbit pruning: is `v` equivalent to an already-processed sibling under
    /// the discovered automorphisms that fix the current prefix pointwise?
    fn in_processed_orbit(&mut self, v: usize, processed: u64) -> bool {
        let n = self.n;
        self.uf_scratch.reset(n);
        let mut any = false;
        'gens: for gen in &self.generators {
            for &p in &self.prefix {
                if gen[p as usize] != p {
                    continue 'gens;
                }
            }
            any = true;
            for (w, &img) in gen.iter().enumerate().take(n) {
                self.uf_scratch.union(w, img as usize);
            }
        }
        if !any {
            return false;
        }
        let root = self.uf_scratch.find(v);
        BitIter(processed).any(|u| self.uf_scratch.find(u) == root)
    }

    fn handle_leaf(&mut self, g: &Graph, cmp_best: BestCmp, eq_first: bool) {
        self.leaf_rows(g);
        if !self.have_first {
            self.have_first = true;
            self.first_path = self.path_inv.clone();
            self.first_pos = self.pos;
            self.first_rows = self.rows_scratch;
            self.best_path = self.path_inv.clone();
            self.best_pos = self.pos;
            self.best_rows = self.rows_scratch;
            return;
        }
        if eq_first
            && self.path_inv.len() == self.first_path.len()
            && self.rows_scratch[..self.n] == self.first_rows[..self.n]
        {
            let gen = perm_between(&self.first_pos, &self.pos, self.n);
            self.record_generator(g, gen);
        }
        match cmp_best {
            BestCmp::Greater => {
                self.best_path = self.path_inv.clone();
                self.best_pos = self.pos;
                self.best_rows = self.rows_scratch;
            }
            BestCmp::Equal => {
                use std::cmp::Ordering;
                match self.rows_scratch[..self.n].cmp(&self.best_rows[..self.n]) {
                    Ordering::Greater => {
                        self.best_path = self.path_inv.clone();
                        self.best_pos = self.pos;
                        self.best_rows = self.rows_scratch;
                    }
                    Ordering::Equal => {
                        let gen = perm_between(&self.best_pos, &self.pos, self.n);
                        self.record_generator(g, gen);
                    }
                    Ordering::Less => {}
                }
            }
            BestCmp::Less => {}
        }
    }

    fn record_generator(&mut self, g: &Graph, gen: [u8; MAX_VERTICES]) {
        if (0..self.n).all(|v| gen[v] as usize == v) {
            return;
        }
        if self.generators.contains(&gen) {
            return;
        }
        #[cfg(debug_assertions)]
        for u in 0..self.n {
            for w in BitIter(g.neighbors_mask(u)) {
                debug_assert!(
                    g.has_edge(gen[u] as usize, gen[w] as usize),
                    "recorded permutation is not an automorphism"
                );
            }
        }
        let _ = g;
        self.generators.push(gen);
    }
}

/// Permutation g with g(a) = b whenever `pos_a[a] == pos_b[b]`: the
/// automorphism relating two leaves with identical relabeled adjacency.
fn perm_between(
    pos_a: &[u8; MAX_VERTICES],
    pos_b: &[u8; MAX_VERTICES],
    n: usize,
) -> [u8; MAX_VERTICES] {
    let mut lab_b = [0u8; MAX_VERTICES];
    for v in 0..n {
        lab_b[pos_b[v] as usize] = v as u8;
    }
    let mut gen = [0u8; MAX_VERTICES];
    for v in 0..n {
        gen[v] = lab_b[pos_a[v] as usize];
    }
    gen
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z ^ (z >> 27)
}

#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n as u32);
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = x;
        while c != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u32;
        }
    }

    /// Dense orbit ids in first-occurrence order.
    pub fn into_partition(mut self) -> OrbitPartition {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            let r = self.find(i);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            ids[i] = ids[r];
        }
        OrbitPartition {
            ids,
            orbit_count: next,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn canon_eq(a: &Graph, b: &Graph) -> bool {
        canonical_form(a) == canonical_form(b)
    }

    #[test]
    fn cycle_orbits_are_transitive() {
        for n in [3, 5, 6, 8] {
            let g = Graph::new_cycle(n).unwrap();
            assert_eq!(vertex_orbits(&g).orbit_count, 1, "C{n} vertex orbits");
            assert_eq!(edge_orbits(&g).orbit_count, 1, "C{n} edge orbits");
        }
    }

    #[test]
    fn path_has_two_orbit_kinds() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(vertex_orbits(&p4).orbit_count, 2);
        assert_eq!(edge_orbits(&p4).orbit_count, 2);
    }

    #[test]
    fn k4_minus_edge_vertex_orbits() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let orbits = vertex_orbits(&g);
        assert_eq!(orbits.orbit_count, 2);
        // Degree-3 pair {0,1} together, degree-2 pair {2,3} together.
        assert_eq!(orbits.ids[0], orbits.ids[1]);
        assert_eq!(orbits.ids[2], orbits.ids[3]);
        assert_ne!(orbits.ids[0], orbits.ids[2]);
    }

    #[test]
    fn nonadjacent_pair_representatives() {
        let c5 = Graph::new_cycle(5).unwrap();
        assert_eq!(nonadjacent_pair_orbits(&c5).len(), 1);
        let c6 = Graph::new_cycle(6).unwrap();
        assert_eq!(nonadjacent_pair_orbits(&c6).len(), 2);
        let k4 = Graph::new_complete(4).unwrap();
        assert!(nonadjacent_pair_orbits(&k4).is_empty());
    }

    #[test]
    fn form_is_isomorphism_invariant_on_samples() {
        // A fixed, structurally varied sample; randomized coverage lives in
        // the integration suite.
        let graphs = [
            Graph::new_cycle(7).unwrap(),
            Graph::new_complete(5).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
                .unwrap(),
            Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap(),
        ];
        for g in &graphs {
            let n = g.n();
            let perm: Vec<usize> = (1..n).chain([0]).collect();
            let h = g.apply_permutation(&perm);
            assert!(canon_eq(g, &h));
        }
    }

    #[test]
    fn forms_separate_nonisomorphic_graphs() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!canon_eq(&path, &star));
    }

    #[test]
    fn labeling_applied_matches_form() {
        let g = Graph::from_edges(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0), (0, 4)])
            .unwrap();
        let rep = canonical_report(&g);
        let relabeled = g.apply_permutation(&rep.labeling);
        assert_eq!(graph6::encode(&relabeled), rep.form);
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = Graph::new_cycle(6).unwrap();
        let rep = canonical_report(&g);
        assert!(!rep.generators.is_empty());
        for gen in &rep.generators {
            let image = g.apply_permutation(gen);
            assert_eq!(image, g);
        }
    }

    #[test]
    fn single_vertex() {
        let k1 = Graph::new_empty(1).unwrap();
        let rep = canonical_report(&k1);
        assert_eq!(rep.labeling, vec![0]);
        assert_eq!(rep.form, b"@".to_vec());
        assert!(rep.generators.is_empty());
    }

    #[test]
    fn empty_graph_orbit_is_whole_vertex_set() {
        let g = Graph::new_empty(6).unwrap();
        assert_eq!(vertex_orbits(&g).orbit_count, 1);
    }
}
