//! Exact planarity decision with verifiable certificates.
//!
//! The decision runs face-by-face insertion on each biconnected block:
//! start from a cycle, repeatedly take a bridge (attachment fragment) with
//! the fewest admissible faces and embed one of its paths, splitting that
//! face. A bridge with no admissible face proves non-planarity. Faces are
//! kept as closed dart walks, so each split is exact bookkeeping and the
//! final rotation system comes straight out of the face set.
//!
//! Certificates: a planar graph yields a rotation system whose traced faces
//! satisfy Euler's formula per connected component; a non-planar graph
//! yields an edge-minimal non-planar subgraph, which is necessarily a
//! subdivision of K5 or K3,3.

use crate::graph::{BitIter, Graph, VertexPair};

/// Cyclic neighbor order around every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub order: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Number of faces traced from the rotation system, summed over
    /// connected components (each component counts its own outer face; an
    /// isolated vertex sees one face, the plane).
    pub fn face_count(&self, g: &Graph) -> usize {
        let n = g.n();
        let mut next_after = vec![usize::MAX; n * n];
        for (v, cycle) in self.order.iter().enumerate() {
            for (i, &u) in cycle.iter().enumerate() {
                next_after[v * n + u] = cycle[(i + 1) % cycle.len()];
            }
        }
        let mut seen = vec![false; n * n];
        let mut faces = (0..n).filter(|&v| g.degree(v) == 0).count();
        for u in 0..n {
            for v in BitIter(g.neighbors_mask(u)) {
                if seen[u * n + v] {
                    continue;
                }
                faces += 1;
                let (mut a, mut b) = (u, v);
                while !seen[a * n + b] {
                    seen[a * n + b] = true;
                    let c = next_after[b * n + a];
                    debug_assert!(c != usize::MAX, "rotation misses dart");
                    (a, b) = (b, c);
                }
            }
        }
        faces
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Rotation system of a planar embedding.
    Embedding(RotationSystem),
    /// Edge list of a K5 or K3,3 subdivision contained in the graph.
    Kuratowski(Vec<VertexPair>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub certificate: Certificate,
}

/// Planarity decision without certificate construction.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    for block in biconnected_blocks(g) {
        if block.edges.len() >= 3 && embed_block(g, &block).is_none() {
            return false;
        }
    }
    true
}

/// Planarity decision with a checkable certificate.
pub fn verdict(g: &Graph) -> PlanarityVerdict {
    if is_planar(g) {
        PlanarityVerdict {
            planar: true,
            certificate: Certificate::Embedding(build_embedding(g)),
        }
    } else {
        PlanarityVerdict {
            planar: false,
            certificate: Certificate::Kuratowski(kuratowski_witness(g)),
        }
    }
}

/// Edge-minimal non-planar subgraph of a non-planar graph. Minimality
/// forces the edge set to be exactly a Kuratowski subdivision.
fn kuratowski_witness(g: &Graph) -> Vec<VertexPair> {
    debug_assert!(!is_planar(g));
    let mut h = g.clone();
    for e in g.edges() {
        h.remove_edge_unchecked(e.a(), e.b());
        if is_planar(&h) {
            h.add_edge_unchecked(e.a(), e.b());
        }
    }
    h.edges()
}

fn build_embedding(g: &Graph) -> RotationSystem {
    let n = g.n();
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        if block.edges.len() < 3 {
            // A block with one or two edges is a bridge edge (two parallel
            // blocks cannot occur in a simple graph).
            for e in &block.edges {
                order[e.a()].push(e.b());
                order[e.b()].push(e.a());
            }
            continue;
        }
        let faces = embed_block(g, &block).expect("caller checked planarity");
        // At vertex v the face walks define succ: the dart (u, v) followed
        // by (v, w) makes w the successor of u around v. Following that map
        // yields the block's cyclic order at v.
        let mut succ = vec![usize::MAX; n * n];
        for face in &faces {
            let len = face.darts.len();
            for i in 0..len {
                let (u, v) = face.darts[i];
                let (_, w) = face.darts[(i + 1) % len];
                succ[v as usize * n + u as usize] = w as usize;
            }
        }
        for v in BitIter(block.vmask) {
            let first = block
                .adj(g, v)
                .next()
                .expect("block vertex has an incident edge");
            let mut cycle = vec![first];
            let mut cur = first;
            loop {
                let nxt = succ[v * n + cur];
                debug_assert!(nxt != usize::MAX, "face walks miss a corner");
                if nxt == first {
                    break;
                }
                cycle.push(nxt);
                cur = nxt;
            }
            debug_assert_eq!(
                cycle.len(),
                block.degree(g, v),
                "rotation not a single cycle"
            );
            order[v].extend(cycle);
        }
    }
    RotationSystem { order }
}

/// Face of a partial embedding as a closed dart walk.
#[derive(Debug, Clone)]
struct Face {
    darts: Vec<(u8, u8)>,
    vmask: u64,
}

impl Face {
    fn from_darts(darts: Vec<(u8, u8)>) -> Self {
        let vmask = darts.iter().fold(0u64, |m, &(u, _)| m | 1 << u);
        Face { darts, vmask }
    }
}

/// A biconnected block: its edges and the vertices they span.
struct Block {
    edges: Vec<VertexPair>,
    vmask: u64,
}

impl Block {
    fn has_edge(&self, u: usize, v: usize) -> bool {
        // Blocks are small; a linear scan suffices for these callers.
        let p = VertexPair::new(u, v).expect("distinct");
        self.edges.contains(&p)
    }

    fn adj<'a>(&'a self, g: &'a Graph, v: usize) -> impl Iterator<Item = usize> + 'a {
        BitIter(g.neighbors_mask(v) & self.vmask).filter(move |&u| self.has_edge(u, v))
    }

    fn degree(&self, g: &Graph, v: usize) -> usize {
        self.adj(g, v).count()
    }
}

/// Biconnected components by lowpoint search with an edge stack.
fn biconnected_blocks(g: &Graph) -> Vec<Block> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<VertexPair>,
        blocks: Vec<Block>,
    }
    impl State<'_> {
        fn dfs(&mut self, u: usize, parent: usize) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for v in BitIter(self.g.neighbors_mask(u)) {
                if self.disc[v] == 0 {
                    self.stack.push(VertexPair::new(u, v).expect("distinct"));
                    self.dfs(v, u);
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        let marker = VertexPair::new(u, v).expect("distinct");
                        let mut edges = Vec::new();
                        loop {
                            let e = self.stack.pop().expect("marker present");
                            edges.push(e);
                            if e == marker {
                                break;
                            }
                        }
                        let vmask = edges.iter().fold(0u64, |m, e| m | 1 << e.a() | 1 << e.b());
                        self.blocks.push(Block { edges, vmask });
                    }
                } else if v != parent && self.disc[v] < self.disc[u] {
                    self.stack.push(VertexPair::new(u, v).expect("distinct"));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }
    let mut st = State {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..g.n() {
        if st.disc[v] == 0 {
            st.dfs(v, usize::MAX);
        }
    }
    st.blocks
}

/// Bridge of the embedded subgraph: attachments lie on it, the interior
/// does not. A chord is a bridge with empty interior.
struct Bridge {
    attachments: u64,
    interior: u64,
    chord: Option<VertexPair>,
}

/// Run the face-insertion loop on one biconnected block. Returns the face
/// set of a planar embedding, or `None` if the block is non-planar.
fn embed_block(g: &Graph, block: &Block) -> Option<Vec<Face>> {
    let cycle = initial_cycle(g, block);
    let mut embedded = Graph::new_empty(g.n()).expect("same order");
    let mut in_h = 0u64;
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded.add_edge_unchecked(u, v);
        in_h |= 1 << u;
    }
    let forward: Vec<(u8, u8)> = (0..cycle.len())
        .map(|i| (cycle[i] as u8, cycle[(i + 1) % cycle.len()] as u8))
        .collect();
    let backward: Vec<(u8, u8)> = forward.iter().rev().map(|&(u, v)| (v, u)).collect();
    let mut faces = vec![Face::from_darts(forward), Face::from_darts(backward)];

    loop {
        let bridges = find_bridges(g, block, &embedded, in_h);
        if bridges.is_empty() {
            return Some(faces);
        }
        // Bridge with the fewest admissible faces; none admissible proves
        // the block non-planar.
        let mut best: Option<(usize, usize, usize)> = None; // (count, bridge, face)
        for (bi, b) in bridges.iter().enumerate() {
            let mut count = 0;
            let mut first_face = usize::MAX;
            for (fi, f) in faces.iter().enumerate() {
                if b.attachments & !f.vmask == 0 {
                    count += 1;
                    if first_face == usize::MAX {
                        first_face = fi;
                    }
                }
            }
            if count == 0 {
                return None;
            }
            if best.is_none_or(|(c, _, _)| count < c) {
                best = Some((count, bi, first_face));
            }
        }
        let (_, bi, fi) = best.expect("bridges nonempty");
        let path = bridge_path(g, block, &bridges[bi]);
        for w in path.windows(2) {
            embedded.add_edge_unchecked(w[0], w[1]);
        }
        for &v in &path {
            in_h |= 1 << v;
        }
        let face = faces.swap_remove(fi);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
}

/// Some cycle of a biconnected block with at least three edges.
fn initial_cycle(g: &Graph, block: &Block) -> Vec<usize> {
    let start = block.vmask.trailing_zeros() as usize;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut on_path = 0u64;
    loop {
        let u = *path.last().expect("nonempty");
        if on_path >> u & 1 == 1 {
            let cycle_start = path.iter().position(|&v| v == u).expect("revisited");
            return path[cycle_start..path.len() - 1].to_vec();
        }
        on_path |= 1 << u;
        let next = block
            .adj(g, u)
            .find(|&w| w != prev)
            .expect("biconnected block has min degree 2");
        prev = u;
        path.push(next);
    }
}

fn find_bridges(g: &Graph, block: &Block, embedded: &Graph, in_h: u64) -> Vec<Bridge> {
    let mut bridges = Vec::new();
    for e in &block.edges {
        if in_h >> e.a() & 1 == 1 && in_h >> e.b() & 1 == 1 && !embedded.has_edge(e.a(), e.b()) {
            bridges.push(Bridge {
                attachments: 1 << e.a() | 1 << e.b(),
                interior: 0,
                chord: Some(*e),
            });
        }
    }
    // Connected pieces of the block outside the embedded vertex set,
    // together with their attachments on it.
    let mut unseen = block.vmask & !in_h;
    while unseen != 0 {
        let seed = unseen.trailing_zeros() as usize;
        let mut comp = 1u64 << seed;
        let mut frontier = comp;
        let mut attachments = 0u64;
        while frontier != 0 {
            let mut next = 0u64;
            for u in BitIter(frontier) {
                for v in block.adj(g, u) {
                    if in_h >> v & 1 == 1 {
                        attachments |= 1 << v;
                    } else {
                        next |= 1 << v;
                    }
                }
            }
            frontier = next & !comp;
            comp |= frontier;
        }
        unseen &= !comp;
        bridges.push(Bridge {
            attachments,
            interior: comp,
            chord: None,
        });
    }
    bridges
}

/// A path through the bridge between two distinct attachments, interior
/// vertices strictly inside the bridge.
fn bridge_path(g: &Graph, block: &Block, bridge: &Bridge) -> Vec<usize> {
    if let Some(e) = bridge.chord {
        return vec![e.a(), e.b()];
    }
    let start = bridge.attachments.trailing_zeros() as usize;
    let goal = bridge.attachments & !(1 << start);
    debug_assert!(
        goal != 0,
        "a bridge of a biconnected block has >= 2 attachments"
    );
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    // First hop leaves the embedded subgraph into the interior.
    for v in block.adj(g, start) {
        if bridge.interior >> v & 1 == 1 && parent[v] == usize::MAX {
            parent[v] = start;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for v in block.adj(g, u) {
            if goal >> v & 1 == 1 {
                let mut path = vec![v, u];
                let mut w = u;
                while parent[w] != start {
                    w = parent[w];
                    path.push(w);
                }
                path.push(start);
                path.reverse();
                return path;
            }
            if bridge.interior >> v & 1 == 1 && parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    unreachable!("bridge interior connects its attachments");
}

/// Split a face along an embedded path between two of its vertices.
fn split_face(face: &Face, path: &[usize]) -> (Face, Face) {
    let x = path[0] as u8;
    let y = *path.last().expect("path nonempty") as u8;
    let len = face.darts.len();
    let ix = face.darts.iter().position(|d| d.0 == x).expect("x on face");
    let iy = face.darts.iter().position(|d| d.0 == y).expect("y on face");
    let forward: Vec<(u8, u8)> = path.windows(2).map(|w| (w[0] as u8, w[1] as u8)).collect();
    let backward: Vec<(u8, u8)> = forward.iter().rev().map(|&(u, v)| (v, u)).collect();

    // Walk x -> y along the face, then return along the reversed path.
    let mut d1 = Vec::new();
    let mut i = ix;
    while i != iy {
        d1.push(face.darts[i]);
        i = (i + 1) % len;
    }
    d1.extend(backward);

    // Walk y -> x along the face, then return along the forward path.
    let mut d2 = Vec::new();
    let mut i = iy;
    while i != ix {
        d2.push(face.darts[i]);
        i = (i + 1) % len;
    }
    d2.extend(forward);

    (Face::from_darts(d1), Face::from_darts(d2))
}
