//! Graph reductions and partition plumbing: LP kernelization, community
//! detection, and the glue that merges per-community solutions back into one
//! independent set (conflict repair across community boundaries, greedy
//! completion to a maximal set).

mod louvain;
mod lp;

pub use louvain::{louvain, modularity, Partition};
pub use lp::{lp_reduce, LpReduction};

use crate::graph::{Graph, VertexSet};
use crate::train::{solve_mis_dnn, TrainConfig};
use rand_chacha::ChaCha8Rng;

/// Edges whose endpoints lie in different communities, as (min, max)
/// pairs in ascending order.
pub fn inter_cluster_edges(g: &Graph, part: &Partition) -> Vec<(u32, u32)> {
    let member = part.membership(g.n());
    g.edges()
        .filter(|&(u, v)| member[u as usize] != member[v as usize])
        .collect()
}

/// The subset of `edges` with both endpoints selected — the conflicts a
/// union of per-community solutions can introduce.
pub fn forbidden_edges(edges: &[(u32, u32)], s: &VertexSet) -> Vec<(u32, u32)> {
    edges
        .iter()
        .copied()
        .filter(|&(u, v)| s.contains(u) && s.contains(v))
        .collect()
}

/// Resolve every conflict in `forbidden`, editing `s` in place.
///
/// Conflicts are visited in ascending (min, max) order. For each edge still
/// violated, first try a size-preserving swap at either endpoint q: replace
/// q by the first neighbor w of q that is outside the set and whose only
/// selected neighbor is q itself. If neither endpoint can be swapped out,
/// delete the endpoint involved in more of the remaining conflicts (ties:
/// larger degree, then larger index).
pub fn repair_forbidden(g: &Graph, s: &mut VertexSet, forbidden: &[(u32, u32)]) {
    let mut conflicts = forbidden.to_vec();
    conflicts.sort_unstable();
    conflicts.dedup();
    for i in 0..conflicts.len() {
        let (u, v) = conflicts[i];
        if !(s.contains(u) && s.contains(v)) {
            continue; // already resolved by an earlier edit
        }
        if try_swap(g, s, u) || try_swap(g, s, v) {
            continue;
        }
        let occurrences = |q: u32| {
            conflicts[i..]
                .iter()
                .filter(|&&(a, b)| {
                    (a == q || b == q) && s.contains(a) && s.contains(b)
                })
                .count()
        };
        let (cu, cv) = (occurrences(u), occurrences(v));
        let drop = if cu != cv {
            if cu > cv { u } else { v }
        } else if g.degree(u) != g.degree(v) {
            if g.degree(u) > g.degree(v) { u } else { v }
        } else {
            v // equal on both counts: the larger index goes
        };
        s.remove(drop);
    }
    debug_assert!(g.is_independent(s));
}

/// Swap q out for a neighbor whose only selected neighbor is q. Keeps the
/// set size and independence, and removes q from every remaining conflict.
fn try_swap(g: &Graph, s: &mut VertexSet, q: u32) -> bool {
    for &w in g.neighbors(q) {
        if s.contains(w) {
            continue;
        }
        let only_q = g.neighbors(w).iter().all(|&x| x == q || !s.contains(x));
        if only_q {
            s.remove(q);
            s.insert(w);
            return true;
        }
    }
    false
}

/// Extend an independent set to a maximal one by solving the subproblem on
/// the vertices it does not dominate.
pub fn complete_to_maximal(
    g: &Graph,
    s: &VertexSet,
    cfg: &TrainConfig,
    rng: &mut ChaCha8Rng,
) -> crate::Result<VertexSet> {
    let mut out = s.clone();
    let free = g.remove_closed_neighborhood(s);
    if free.graph.n() > 0 {
        let extra = solve_mis_dnn(&free.graph, cfg, rng)?;
        out.union_with(&free.lift(&extra));
    }
    debug_assert!(g.is_maximal_independent(&out));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn two_triangles_bridge() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn inter_cluster_edges_are_the_bridges() {
        let g = two_triangles_bridge();
        let part = Partition {
            communities: vec![vec![0, 1, 2], vec![3, 4, 5]],
            resolution: 1.0,
        };
        assert_eq!(inter_cluster_edges(&g, &part), vec![(2, 3)]);
    }

    #[test]
    fn forbidden_edges_need_both_endpoints() {
        let edges = vec![(2, 3), (0, 5)];
        let mut s = VertexSet::new(6);
        s.insert(2);
        s.insert(3);
        s.insert(5);
        assert_eq!(forbidden_edges(&edges, &s), vec![(2, 3)]);
    }

    #[test]
    fn repair_swaps_when_a_free_neighbor_exists() {
        // P4 0-1-2-3 with both middle vertices chosen: swapping replaces
        // 1 by 0 (0's only selected neighbor is 1), keeping size 2
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut s = VertexSet::from_slice(4, &[1, 2]);
        repair_forbidden(&g, &mut s, &[(1, 2)]);
        assert_eq!(s.to_vec(), vec![0, 2]);
        assert!(g.is_independent(&s));
    }

    #[test]
    fn repair_deletes_the_busier_endpoint() {
        // path 1-0-2 fully selected: no swaps exist, and 0 sits in both
        // conflicts, so deleting it resolves everything at cost one
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let mut s = VertexSet::from_slice(3, &[0, 1, 2]);
        repair_forbidden(&g, &mut s, &[(0, 1), (0, 2)]);
        assert_eq!(s.to_vec(), vec![1, 2]);
    }

    #[test]
    fn repair_drops_higher_index_on_full_tie() {
        // triangle: occurrence counts and degrees tie at every step
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut s = VertexSet::from_slice(3, &[0, 1, 2]);
        repair_forbidden(&g, &mut s, &[(0, 1), (0, 2), (1, 2)]);
        assert!(g.is_independent(&s));
        assert_eq!(s.to_vec(), vec![0]);
    }

    #[test]
    fn repair_tie_break_prefers_dropping_the_higher_degree() {
        // one conflict (0,1); both endpoints' free neighbors also touch
        // the selected vertex 4, so no swap applies; occurrence counts tie
        // and deg(1)=3 > deg(0)=2 decides
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        let mut s = VertexSet::from_slice(5, &[0, 1, 4]);
        repair_forbidden(&g, &mut s, &[(0, 1)]);
        assert_eq!(s.to_vec(), vec![0, 4]);
    }

    #[test]
    fn repair_result_is_always_independent_and_no_smaller_than_needed() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let n = rng.gen_range(4..24usize);
            let p = rng.gen_range(0.1..0.5);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            // random vertex subset, usually not independent
            let mut s = VertexSet::new(n);
            for v in 0..n as u32 {
                if rng.gen_bool(0.4) {
                    s.insert(v);
                }
            }
            let before = s.len();
            let all: Vec<(u32, u32)> = g.edges().collect();
            let conflicts = forbidden_edges(&all, &s);
            repair_forbidden(&g, &mut s, &conflicts);
            assert!(g.is_independent(&s));
            // each conflict costs at most one vertex
            assert!(s.len() + conflicts.len() >= before);
        }
    }

    #[test]
    fn completion_reaches_maximality_without_touching_the_seed() {
        let g = two_triangles_bridge();
        let s = VertexSet::from_slice(6, &[0]);
        let cfg = TrainConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let full = complete_to_maximal(&g, &s, &cfg, &mut rng).unwrap();
        assert!(full.contains(0));
        assert!(g.is_maximal_independent(&full));
        assert_eq!(full.len(), 2);
    }

    #[test]
    fn completion_of_a_maximal_set_is_identity() {
        let g = two_triangles_bridge();
        let s = VertexSet::from_slice(6, &[0, 3]);
        let cfg = TrainConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let full = complete_to_maximal(&g, &s, &cfg, &mut rng).unwrap();
        assert_eq!(full.to_vec(), vec![0, 3]);
    }
}
