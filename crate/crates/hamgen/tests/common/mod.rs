//! Brute-force oracles, independent of the library's algorithms, used to
//! validate canonical labeling, cycle counting, girth, and planarity.

#![allow(dead_code)]

use hamgen::graph::{Graph, VertexPair};
use hamgen::graph6;

use rand::prelude::*;
use rand::rngs::StdRng;

/// All permutations of 0..n (factorial growth; keep n small).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    permute(&mut items, 0, &mut |p| out.push(p.to_vec()));
    out
}

fn permute(items: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    for u in g.vertices() {
        for v in g.neighbors(u) {
            if !g.has_edge(perm[u], perm[v]) {
                return false;
            }
        }
    }
    true
}

/// The full automorphism group by testing every permutation.
pub fn brute_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    all_permutations(g.n())
        .into_iter()
        .filter(|p| is_automorphism(g, p))
        .collect()
}

/// Orbit ids of the vertex set from the full group.
pub fn brute_vertex_orbits(g: &Graph) -> Vec<usize> {
    let autos = brute_automorphisms(g);
    let n = g.n();
    let mut ids = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if ids[v] != usize::MAX {
            continue;
        }
        for a in &autos {
            let w = a[v];
            if ids[w] == usize::MAX {
                ids[w] = next;
            }
        }
        next += 1;
    }
    ids
}

/// Orbits of a pair list (edges or non-edges) from the full group, as a
/// canonical set-of-sets.
pub fn brute_pair_orbits(g: &Graph, pairs: &[VertexPair]) -> Vec<Vec<VertexPair>> {
    let autos = brute_automorphisms(g);
    let mut seen = vec![false; pairs.len()];
    let mut orbits = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for a in &autos {
            let q = p.map(a);
            if let Some(j) = pairs.iter().position(|x| *x == q) {
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(pairs[j]);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits.sort();
    orbits
}

/// Maximum graph6 encoding over all relabelings: a canonical form computed
/// without partition refinement.
pub fn brute_canonical_form(g: &Graph) -> Vec<u8> {
    all_permutations(g.n())
        .into_iter()
        .map(|p| graph6::encode(&g.apply_permutation(&p)))
        .max()
        .expect("at least the identity")
}

/// Hamiltonian cycle count by testing every cyclic vertex order.
pub fn brute_count_hc(g: &Graph) -> u64 {
    let n = g.n();
    if n < 3 {
        return 0;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut count = 0;
    permute(&mut rest, 0, &mut |seq| {
        if seq[0] > seq[n - 2] {
            return; // reflection representative
        }
        let mut ok = g.has_edge(0, seq[0]) && g.has_edge(seq[n - 2], 0);
        for w in seq.windows(2) {
            ok &= g.has_edge(w[0], w[1]);
        }
        if ok {
            count += 1;
        }
    });
    count
}

/// Hamiltonian path count by testing every vertex order up to reversal.
pub fn brute_count_hp(g: &Graph) -> u64 {
    let n = g.n();
    let mut all: Vec<usize> = (0..n).collect();
    let mut count = 0;
    permute(&mut all, 0, &mut |seq| {
        if seq[0] > seq[n - 1] {
            return;
        }
        if seq.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            count += 1;
        }
    });
    count
}

/// Shortest cycle length: minimum over vertices of the shortest cycle
/// through that vertex, found by breadth-first layering.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v && parent[v] != u {
                    let len = dist[u] + dist[v] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// Exhaustive search for a K5 or K3,3 subdivision: pick branch vertices,
/// then route internally disjoint paths through the remaining vertices.
pub fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let n = g.n();
    // K5: five branch vertices, ten connections.
    let mut found = false;
    for_each_subset(n, 5, &mut |branch| {
        if found {
            return;
        }
        let mut links = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                links.push((branch[i], branch[j]));
            }
        }
        if route_all(g, branch, &links) {
            found = true;
        }
    });
    if found {
        return true;
    }
    // K3,3: six branch vertices in two parts, nine connections.
    for_each_subset(n, 6, &mut |branch| {
        if found {
            return;
        }
        // Partition the six chosen vertices into two sides of three.
        for_each_subset(6, 3, &mut |left_idx| {
            if found {
                return;
            }
            if left_idx[0] != 0 {
                return; // fix vertex 0 on the left side: halves the work
            }
            let left: Vec<usize> = left_idx.iter().map(|&i| branch[i]).collect();
            let right: Vec<usize> = (0..6)
                .filter(|i| !left_idx.contains(i))
                .map(|i| branch[i])
                .collect();
            let mut links = Vec::new();
            for &a in &left {
                for &b in &right {
                    links.push((a, b));
                }
            }
            if route_all(g, branch, &links) {
                found = true;
            }
        });
    });
    found
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), f);
}

/// Route vertex-disjoint paths (except at shared branch endpoints) for all
/// required connections.
fn route_all(g: &Graph, branch: &[usize], links: &[(usize, usize)]) -> bool {
    let branch_mask: u64 = branch.iter().fold(0, |m, &v| m | 1 << v);
    fn rec(g: &Graph, branch_mask: u64, links: &[(usize, usize)], used: u64) -> bool {
        let Some(&(s, t)) = links.first() else {
            return true;
        };
        // Enumerate s-t paths whose interior avoids branch vertices and
        // already-used interior vertices.
        fn paths(
            g: &Graph,
            cur: usize,
            t: usize,
            branch_mask: u64,
            used: u64,
            links: &[(usize, usize)],
        ) -> bool {
            if g.has_edge(cur, t) && rec(g, branch_mask, &links[1..], used) {
                return true;
            }
            let free = g.neighbors_mask(cur) & !branch_mask & !used;
            for w in hamgen::graph::BitIter(free) {
                if paths(g, w, t, branch_mask, used | (1 << w), links) {
                    return true;
                }
            }
            false
        }
        paths(g, s, t, branch_mask, used, links)
    }
    rec(g, branch_mask, links, 0)
}

/// Group order by closure over composition, capped to keep tests bounded.
pub fn group_order_by_closure(generators: &[Vec<usize>], n: usize, cap: usize) -> usize {
    use std::collections::HashSet;
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for gen in generators {
            let q: Vec<usize> = (0..n).map(|v| gen[p[v]]).collect();
            if seen.insert(q.clone()) {
                assert!(seen.len() <= cap, "group larger than expected");
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// Erdos-Renyi style random graph.
pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new_empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(VertexPair::new(u, v).unwrap()).unwrap();
            }
        }
    }
    g
}

/// Uniformly random permutation of 0..n.
pub fn random_permutation(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
