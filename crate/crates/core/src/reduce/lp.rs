//! LP-based kernelization for MIS.
//!
//! The relaxation `max Σ x_v  s.t.  x_u + x_v ≤ 1 on edges, x ∈ [0,1]` has a
//! half-integral optimum computable combinatorially: build the bipartite
//! double cover (each vertex split into a left and a right copy, each edge
//! (u,v) becoming (u_L, v_R) and (v_L, u_R)), take a maximum matching, read
//! off a minimum vertex cover à la Kőnig, and set
//! x*_v = 1 − (cover hits among {v_L, v_R}) / 2.
//!
//! Vertices with x*_v = 1 belong to some maximum independent set, so they
//! and their neighbors can be committed and removed:
//! MIS(G) = |ones| + MIS(residual).

use crate::graph::{Graph, Subgraph, VertexSet};

pub struct LpReduction {
    /// Vertices fixed into the solution (x* = 1). Always independent.
    pub ones: VertexSet,
    /// `ones ∪ N(ones)`: everything deleted from the graph.
    pub removed: VertexSet,
    /// Graph induced on the rest, with its mapping back.
    pub residual: Subgraph,
}

pub fn lp_reduce(g: &Graph) -> LpReduction {
    let n = g.n();
    // left adjacency of the double cover is the graph's own adjacency
    let (match_l, match_r) = hopcroft_karp(g);

    // Kőnig: alternate from unmatched left vertices; the cover is
    // (L \ Z_L) ∪ (R ∩ Z_R)
    let mut z_l = vec![false; n];
    let mut z_r = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n {
        if match_l[v].is_none() {
            z_l[v] = true;
            queue.push_back(v as u32);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if z_r[w as usize] {
                continue;
            }
            z_r[w as usize] = true;
            if let Some(x) = match_r[w as usize] {
                if !z_l[x as usize] {
                    z_l[x as usize] = true;
                    queue.push_back(x);
                }
            }
        }
    }

    // x*_v = 1 exactly when neither copy is in the cover: v_L not covered
    // means z_l[v]; v_R not covered means !z_r[v]
    let mut ones = VertexSet::new(n);
    for v in 0..n {
        if z_l[v] && !z_r[v] {
            ones.insert(v as u32);
        }
    }
    let mut removed = VertexSet::new(n);
    for v in ones.iter() {
        removed.insert(v);
        for &w in g.neighbors(v) {
            removed.insert(w);
        }
    }
    let residual = g.induced(&removed.complement_in_host());
    debug_assert!(g.is_independent(&ones));
    LpReduction { ones, removed, residual }
}

/// Maximum matching of the double cover. `g`'s adjacency doubles as the
/// left-to-right edge lists. Returns (left matches, right matches).
fn hopcroft_karp(g: &Graph) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
    let n = g.n();
    let mut match_l: Vec<Option<u32>> = vec![None; n];
    let mut match_r: Vec<Option<u32>> = vec![None; n];
    let mut dist = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();

    loop {
        // BFS layering over free left vertices
        queue.clear();
        for v in 0..n {
            if match_l[v].is_none() {
                dist[v] = 0;
                queue.push_back(v as u32);
            } else {
                dist[v] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                match match_r[w as usize] {
                    None => found = true,
                    Some(x) => {
                        if dist[x as usize] == u32::MAX {
                            dist[x as usize] = dist[v as usize] + 1;
                            queue.push_back(x);
                        }
                    }
                }
            }
        }
        if !found {
            break;
        }
        // DFS along the layering for vertex-disjoint augmenting paths
        for v in 0..n as u32 {
            if match_l[v as usize].is_none() {
                augment(g, v, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
    (match_l, match_r)
}

fn augment(
    g: &Graph,
    v: u32,
    match_l: &mut [Option<u32>],
    match_r: &mut [Option<u32>],
    dist: &mut [u32],
) -> bool {
    for &w in g.neighbors(v) {
        let next = match_r[w as usize];
        let ok = match next {
            None => true,
            Some(x) => {
                dist[x as usize] == dist[v as usize] + 1
                    && augment(g, x, match_l, match_r, dist)
            }
        };
        if ok {
            match_l[v as usize] = Some(w);
            match_r[w as usize] = Some(v);
            return true;
        }
    }
    dist[v as usize] = u32::MAX; // dead end; do not revisit this phase
    false
}
