//! Local search on independent sets.
//!
//! [`two_improvement`] is a (1,2)-swap search: it keeps a count of selected
//! neighbors ("tightness") per vertex, inserts any free vertex, and replaces
//! a solution vertex by two of its 1-tight neighbors whenever a non-adjacent
//! pair exists. When no strictly improving move remains it additionally
//! tries plateau swaps — trade a solution vertex v for a 1-tight neighbor w
//! at equal size — but commits one only if an improving move opens up right
//! behind it, so the search cannot cycle and a locally optimal input passes
//! through unchanged.
//!
//! [`improve`] drives repeated partial restarts: drop a random λ-subset of
//! the solution (biased toward high-degree members, the ones least likely
//! to belong to an optimum), re-solve the freed region, and keep the result
//! only if it beats the best seen. λ resets to its floor after a success
//! and grows after a failure, so the search lingers near paying
//! perturbation sizes until a round budget runs out.

use crate::graph::{Graph, VertexSet};
use crate::reduce::complete_to_maximal;
use crate::train::{solve_mis_dnn, TrainConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;
use std::time::{Duration, Instant};

/// Knobs for [`improve`]. Defaults: start by dropping 5 vertices, one more
/// per failed round; when a perturbation's reach covers all but 20 vertices
/// it has degenerated into a restart, so λ snaps back to its floor. A round
/// budget of 250 bounds the whole search.
#[derive(Debug, Clone)]
pub struct ImproveConfig {
    pub lambda0: usize,
    pub increase_step: usize,
    pub min_residual: usize,
    pub max_rounds: usize,
    pub time_limit: Option<Duration>,
}

impl Default for ImproveConfig {
    fn default() -> Self {
        ImproveConfig {
            lambda0: 5,
            increase_step: 1,
            min_residual: 20,
            max_rounds: 250,
            time_limit: None,
        }
    }
}

/// Grow an independent set with free insertions, 2-swaps, and guarded
/// plateau swaps. The result is maximal, independent, and never smaller
/// than the input; a set that admits no such move comes back unchanged.
pub fn two_improvement(g: &Graph, s: &VertexSet) -> VertexSet {
    debug_assert!(g.is_independent(s));
    let mut ls = LocalSearch::new(g, s);
    loop {
        ls.free_sweep();
        while let Some(v) = ls.pop() {
            ls.try_two_swap_at(v);
        }
        if !ls.plateau_step() {
            break;
        }
        // a plateau move paid off; look at everything again
        ls.requeue_all();
    }
    ls.into_set()
}

struct LocalSearch<'a> {
    g: &'a Graph,
    in_s: Vec<bool>,
    /// number of selected neighbors
    tight: Vec<u32>,
    size: usize,
    queue: VecDeque<u32>,
    in_queue: Vec<bool>,
}

impl<'a> LocalSearch<'a> {
    fn new(g: &'a Graph, s: &VertexSet) -> Self {
        let n = g.n();
        let mut ls = LocalSearch {
            g,
            in_s: vec![false; n],
            tight: vec![0; n],
            size: 0,
            queue: VecDeque::new(),
            in_queue: vec![false; n],
        };
        for v in s.iter() {
            ls.insert(v);
        }
        ls
    }

    fn insert(&mut self, v: u32) {
        debug_assert!(!self.in_s[v as usize] && self.tight[v as usize] == 0);
        self.in_s[v as usize] = true;
        self.size += 1;
        for &u in self.g.neighbors(v) {
            self.tight[u as usize] += 1;
        }
        self.push(v);
    }

    fn remove(&mut self, v: u32) {
        debug_assert!(self.in_s[v as usize]);
        self.in_s[v as usize] = false;
        self.size -= 1;
        for &u in self.g.neighbors(v) {
            self.tight[u as usize] -= 1;
            // u dropping to one tight neighbor re-arms a swap at that neighbor
            if self.tight[u as usize] == 1 && !self.in_s[u as usize] {
                let z = self.sole_selected_neighbor(u);
                self.push(z);
            }
        }
    }

    fn sole_selected_neighbor(&self, u: u32) -> u32 {
        debug_assert_eq!(self.tight[u as usize], 1);
        *self
            .g
            .neighbors(u)
            .iter()
            .find(|&&x| self.in_s[x as usize])
            .expect("tight count out of sync")
    }

    fn push(&mut self, v: u32) {
        if !self.in_queue[v as usize] {
            self.in_queue[v as usize] = true;
            self.queue.push_back(v);
        }
    }

    fn pop(&mut self) -> Option<u32> {
        let v = self.queue.pop_front()?;
        self.in_queue[v as usize] = false;
        Some(v)
    }

    fn requeue_all(&mut self) {
        for v in 0..self.g.n() as u32 {
            if self.in_s[v as usize] {
                self.push(v);
            }
        }
    }

    /// Insert every vertex without selected neighbors, ascending. One pass
    /// suffices: insertions only raise tightness, never create free vertices.
    fn free_sweep(&mut self) {
        for v in 0..self.g.n() as u32 {
            if !self.in_s[v as usize] && self.tight[v as usize] == 0 {
                self.insert(v);
            }
        }
    }

    /// Replace v by its first non-adjacent pair of 1-tight neighbors,
    /// if any. Applies the move (plus any insertions it frees up).
    fn try_two_swap_at(&mut self, v: u32) -> bool {
        if !self.in_s[v as usize] {
            return false;
        }
        let cands: Vec<u32> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.tight[w as usize] == 1)
            .collect();
        for i in 0..cands.len() {
            for j in i + 1..cands.len() {
                if !self.g.has_edge(cands[i], cands[j]) {
                    self.remove(v);
                    self.insert(cands[i]);
                    self.insert(cands[j]);
                    self.free_sweep();
                    return true;
                }
            }
        }
        false
    }

    /// Try every equal-size swap v→w (w a 1-tight neighbor of v) and keep
    /// the first whose aftermath admits an improving move, applying that
    /// move too. Everything else is rolled back. Returns whether the
    /// solution grew.
    fn plateau_step(&mut self) -> bool {
        let members: Vec<u32> =
            (0..self.g.n() as u32).filter(|&v| self.in_s[v as usize]).collect();
        for v in members {
            let nbrs: Vec<u32> = self.g.neighbors(v).to_vec();
            for &w in &nbrs {
                if self.tight[w as usize] != 1 {
                    continue;
                }
                self.remove(v);
                self.insert(w);
                if self.follow_up(v, w) {
                    self.free_sweep();
                    return true;
                }
                self.remove(w);
                self.insert(v);
            }
        }
        false
    }

    /// After swapping v out for w, look for an improvement enabled near v:
    /// a now-free neighbor, or a 2-swap at the solution vertex holding a
    /// now-1-tight neighbor. Applies it when found.
    fn follow_up(&mut self, v: u32, w: u32) -> bool {
        let nbrs: Vec<u32> = self.g.neighbors(v).to_vec();
        for &u in &nbrs {
            if u == w || self.in_s[u as usize] {
                continue;
            }
            if self.tight[u as usize] == 0 {
                self.insert(u);
                return true;
            }
        }
        for &u in &nbrs {
            if u == w || self.in_s[u as usize] || self.tight[u as usize] != 1 {
                continue;
            }
            let z = self.sole_selected_neighbor(u);
            if z != w && self.try_two_swap_at(z) {
                return true;
            }
        }
        false
    }

    fn into_set(self) -> VertexSet {
        let mut out = VertexSet::new(self.g.n());
        for v in 0..self.g.n() as u32 {
            if self.in_s[v as usize] {
                out.insert(v);
            }
        }
        debug_assert!(self.g.is_maximal_independent(&out));
        out
    }
}

/// Iterated partial restarts around [`two_improvement`]. Returns the best
/// set found; never worse than the input.
pub fn improve(
    g: &Graph,
    s: &VertexSet,
    tcfg: &TrainConfig,
    icfg: &ImproveConfig,
    rng: &mut ChaCha8Rng,
) -> crate::Result<VertexSet> {
    improve_traced(g, s, tcfg, icfg, rng).map(|(best, _)| best)
}

/// Like [`improve`], also reporting the best size after the start and each
/// round — a non-decreasing sequence.
pub fn improve_traced(
    g: &Graph,
    s: &VertexSet,
    tcfg: &TrainConfig,
    icfg: &ImproveConfig,
    rng: &mut ChaCha8Rng,
) -> crate::Result<(VertexSet, Vec<usize>)> {
    debug_assert!(g.is_independent(s));
    let start = Instant::now();
    let n = g.n();
    let mut best = s.clone();
    let mut cur = s.clone();
    let mut trace = vec![best.len()];
    let mut lambda = icfg.lambda0;
    // the degree-biased initialization is a funnel: restarted solves land in
    // the same basin almost every time. Restart rounds widen the noise band
    // so they actually explore.
    let mut restart_cfg = tcfg.clone();
    restart_cfg.noise_bound = restart_cfg.noise_bound.max(0.5);

    for _ in 0..icfg.max_rounds {
        if icfg.time_limit.is_some_and(|lim| start.elapsed() >= lim) {
            break;
        }
        let mut child = ChaCha8Rng::seed_from_u64(rng.gen());

        if lambda >= cur.len() {
            // the perturbation would erase the whole solution: do one full
            // fresh restart and come back to small perturbations
            let cand = two_improvement(g, &solve_mis_dnn(g, &restart_cfg, &mut child)?);
            if cand.len() > best.len() {
                best = cand.clone();
                cur = cand;
            }
            trace.push(best.len());
            lambda = icfg.lambda0;
            continue;
        }

        let dropped = weighted_drop(g, &cur, lambda, &mut child);
        let mut keep = cur.clone();
        for &v in &dropped {
            keep.remove(v);
        }

        let cand = two_improvement(g, &complete_to_maximal(g, &keep, tcfg, &mut child)?);
        if cand.len() > best.len() {
            best = cand.clone();
            cur = cand;
            lambda = icfg.lambda0;
        } else {
            cur = best.clone();
            lambda += icfg.increase_step;
        }
        trace.push(best.len());

        // once the dropped region's closed neighborhood covers almost the
        // whole graph, growing λ further just mimics a full restart; snap
        // back to small perturbations instead
        let mut closed = VertexSet::new(n);
        for &v in &dropped {
            closed.insert(v);
            for &u in g.neighbors(v) {
                closed.insert(u);
            }
        }
        if n - closed.len() < icfg.min_residual {
            lambda = icfg.lambda0;
        }
    }
    Ok((best, trace))
}

/// Sample `lambda` distinct members of `s` without replacement, each draw
/// weighted by degree + 1. High-degree members exclude the most neighbors,
/// so freeing them opens the largest region to re-solve.
fn weighted_drop(g: &Graph, s: &VertexSet, lambda: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut pool: Vec<u32> = s.to_vec();
    let mut weights: Vec<f64> =
        pool.iter().map(|&v| g.degree(v) as f64 + 1.0).collect();
    let mut total: f64 = weights.iter().sum();
    let mut out = Vec::with_capacity(lambda);
    while out.len() < lambda && !pool.is_empty() {
        let mut r = rng.gen::<f64>() * total;
        let mut idx = pool.len() - 1;
        for (i, &w) in weights.iter().enumerate() {
            if r < w {
                idx = i;
                break;
            }
            r -= w;
        }
        out.push(pool.swap_remove(idx));
        total -= weights.swap_remove(idx);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::exact_mis;

    fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> =
            (0..n as u32 - 1).map(|v| (v, v + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn plateau_swap_unlocks_the_odd_path() {
        // {1,3} on the 5-path is maximal but one short of optimal; a pure
        // 2-swap cannot fix it, the guarded plateau swap can
        let g = path(5);
        let s = VertexSet::from_slice(5, &[1, 3]);
        let out = two_improvement(&g, &s);
        assert_eq!(out.to_vec(), vec![0, 2, 4]);
    }

    #[test]
    fn optimal_set_on_a_cycle_is_untouched() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let s = VertexSet::from_slice(4, &[0, 2]);
        assert_eq!(two_improvement(&g, &s).to_vec(), vec![0, 2]);
    }

    #[test]
    fn single_edge_solution_is_untouched() {
        // {1} on a single edge: the plateau swap to {0} has no follow-up,
        // so it must be rolled back
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s = VertexSet::from_slice(2, &[1]);
        assert_eq!(two_improvement(&g, &s).to_vec(), vec![1]);
    }

    #[test]
    fn two_swap_splits_a_path_center() {
        let g = path(3);
        let s = VertexSet::from_slice(3, &[1]);
        assert_eq!(two_improvement(&g, &s).to_vec(), vec![0, 2]);
    }

    #[test]
    fn empty_input_greedily_fills() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        let out = two_improvement(&g, &VertexSet::new(5));
        assert!(g.is_maximal_independent(&out));
        // ascending fill takes 0 first; {0,3,4} is maximum here too
        assert_eq!(out.to_vec(), vec![0, 3, 4]);
    }

    #[test]
    fn never_shrinks_and_always_ends_maximal() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let n = rng.gen_range(2..24usize);
            let p = rng.gen_range(0.05..0.6);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            // random maximal independent start: greedy over a shuffle
            let mut order: Vec<u32> = (0..n as u32).collect();
            use rand::seq::SliceRandom;
            order.shuffle(&mut rng);
            let mut s = VertexSet::new(n);
            for &v in &order {
                if g.neighbors(v).iter().all(|&u| !s.contains(u)) {
                    s.insert(v);
                }
            }
            let out = two_improvement(&g, &s);
            assert!(out.len() >= s.len());
            assert!(g.is_maximal_independent(&out));
            assert!(out.len() <= exact_mis(&g).unwrap().size);
        }
    }

    #[test]
    fn improvement_is_deterministic() {
        let g = path(9);
        let s = VertexSet::from_slice(9, &[1, 3, 6]);
        assert_eq!(two_improvement(&g, &s).to_vec(), two_improvement(&g, &s).to_vec());
    }

    #[test]
    fn improve_recovers_the_odd_path_optimum() {
        let g = path(5);
        let s = VertexSet::from_slice(5, &[1, 3]);
        let tcfg = TrainConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let out = improve(&g, &s, &tcfg, &ImproveConfig::default(), &mut rng).unwrap();
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn trace_is_nondecreasing_and_matches_the_result() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let mut edges = Vec::new();
        for u in 0..30u32 {
            for v in u + 1..30 {
                if rng.gen_bool(0.15) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(30, &edges).unwrap();
        let start = two_improvement(&g, &VertexSet::new(30));
        let tcfg = TrainConfig::default();
        let (best, trace) =
            improve_traced(&g, &start, &tcfg, &ImproveConfig::default(), &mut rng)
                .unwrap();
        assert_eq!(trace[0], start.len());
        assert!(trace.windows(2).all(|w| w[0] <= w[1]), "trace {trace:?}");
        assert_eq!(*trace.last().unwrap(), best.len());
        assert!(g.is_maximal_independent(&best));
    }

    #[test]
    fn zero_time_budget_returns_the_input() {
        let g = path(7);
        let s = two_improvement(&g, &VertexSet::new(7));
        let tcfg = TrainConfig::default();
        let icfg = ImproveConfig { time_limit: Some(Duration::ZERO), ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (best, trace) = improve_traced(&g, &s, &tcfg, &icfg, &mut rng).unwrap();
        assert_eq!(best.to_vec(), s.to_vec());
        assert_eq!(trace, vec![s.len()]);
    }

    #[test]
    fn improve_per_seed_reproducibility() {
        let g = path(20);
        let s = VertexSet::from_slice(20, &[0, 3, 6, 9, 12, 15, 18]);
        let tcfg = TrainConfig::default();
        let icfg = ImproveConfig::default();
        let mut a = ChaCha8Rng::seed_from_u64(17);
        let mut b = ChaCha8Rng::seed_from_u64(17);
        let ra = improve(&g, &s, &tcfg, &icfg, &mut a).unwrap();
        let rb = improve(&g, &s, &tcfg, &icfg, &mut b).unwrap();
        assert_eq!(ra.to_vec(), rb.to_vec());
    }
}
