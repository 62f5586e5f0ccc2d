//! The piecewise-linear penalty objectives whose minimizers encode
//! maximum independent sets.
//!
//! For a graph G = (V, E) with |V| = n and σ(x) = max(0, x):
//!
//! ```text
//! f(θ) = − Σ_{v ∈ V} σ(θ_v − 1/2)  +  n · Σ_{(u,v) ∈ E} σ(θ_u + θ_v − 1)
//! h(θ) = f(θ) − Σ_{(u,v) ∈ E(G')} σ(θ_u + θ_v − 1)        (G' = complement)
//! ```
//!
//! over θ ∈ [0, 1]^n. The minimum of f is −k/2 and the minimum of h is
//! −k²/2, where k is the independence number, attained at the 0/1 indicator
//! of a maximum independent set.
//!
//! Nothing here is a dense network: the objective is evaluated straight off
//! the adjacency structure. The complement-edge sum is never materialized
//! either — it is the all-pairs sum minus the edge sum, and the all-pairs
//! term costs O(n log n) via a sorted copy of θ.

use crate::exec;
use crate::graph::Graph;
use crate::{Error, Result};

/// Which objective to build: `F` penalizes edges only, `H` additionally
/// rewards complement edges (tighter landscape, costs all-pairs work).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    F,
    H,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::F => "f",
            Variant::H => "h",
        })
    }
}

/// Vertex limit above which `build` refuses the H variant by default; the
/// all-pairs term makes dense work on bigger graphs a deliberate choice.
pub const DEFAULT_COMPLEMENT_CAP: usize = 5000;

/// Per-vertex scores in [0, 1]; the thing the optimizer moves.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeScores(Vec<f64>);

impl NodeScores {
    /// Wrap raw values, clamping into [0, 1].
    pub fn new(mut values: Vec<f64>) -> NodeScores {
        for x in &mut values {
            *x = x.clamp(0.0, 1.0);
        }
        NodeScores(values)
    }

    /// 0/1 indicator vector of a vertex subset given as a membership test.
    pub fn indicator(n: usize, is_member: impl Fn(u32) -> bool) -> NodeScores {
        NodeScores((0..n as u32).map(|v| if is_member(v) { 1.0 } else { 0.0 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn values_mut(&mut self) -> &mut Vec<f64> {
        &mut self.0
    }
}

/// Sparse term structure of f or h for one graph.
pub struct DnnObjective {
    n: usize,
    variant: Variant,
    /// CSR adjacency of the original edges.
    offsets: Vec<usize>,
    targets: Vec<u32>,
    m: usize,
    m_comp: usize,
    /// Edge penalty weight; n by construction.
    penalty: f64,
}

impl DnnObjective {
    /// Build the objective for `g`. The H variant is refused above
    /// [`DEFAULT_COMPLEMENT_CAP`] vertices; use `build_with_cap` to override.
    pub fn build(g: &Graph, variant: Variant) -> Result<DnnObjective> {
        DnnObjective::build_with_cap(g, variant, DEFAULT_COMPLEMENT_CAP)
    }

    pub fn build_with_cap(g: &Graph, variant: Variant, cap: usize) -> Result<DnnObjective> {
        if variant == Variant::H && g.n() > cap {
            return Err(Error::Capacity(format!(
                "h objective needs the complement of a {}-vertex graph (cap {cap}); \
                 use the f variant instead",
                g.n()
            )));
        }
        let n = g.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * g.m());
        offsets.push(0);
        for v in 0..n as u32 {
            targets.extend_from_slice(g.neighbors(v));
            offsets.push(targets.len());
        }
        let m_comp = match variant {
            Variant::F => 0,
            Variant::H => n * n.saturating_sub(1) / 2 - g.m(),
        };
        Ok(DnnObjective { n, variant, offsets, targets, m: g.m(), m_comp, penalty: n as f64 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Number of penalized edge terms (= |E|).
    pub fn num_edge_terms(&self) -> usize {
        self.m
    }

    /// Number of complement-edge reward terms (0 for the F variant).
    pub fn num_complement_terms(&self) -> usize {
        self.m_comp
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Exact objective value at `scores`.
    pub fn evaluate(&self, scores: &NodeScores) -> f64 {
        assert_eq!(scores.len(), self.n, "score vector size mismatch");
        let th = scores.as_slice();
        // node reward and edge penalty in one pass; each undirected edge is
        // visited once via its higher endpoint
        let base = exec::chunked_sum(self.n, |v| {
            let tv = th[v];
            let mut acc = -relu(tv - 0.5);
            let mut edge = 0.0;
            for &u in self.neighbors(v) {
                if (u as usize) < v {
                    edge += relu(tv + th[u as usize] - 1.0);
                }
            }
            acc += self.penalty * edge;
            acc
        });
        if self.variant == Variant::F || self.m_comp == 0 {
            return base;
        }
        // complement-edge sum = (all pairs) − (edges); both are sums of the
        // same nonnegative σ terms, so clamp away negative rounding dust
        let edge_sum = exec::chunked_sum(self.n, |v| {
            let tv = th[v];
            let mut acc = 0.0;
            for &u in self.neighbors(v) {
                if (u as usize) < v {
                    acc += relu(tv + th[u as usize] - 1.0);
                }
            }
            acc
        });
        let comp = (self.all_pairs_sum(th) - edge_sum).max(0.0);
        base - comp
    }

    /// Σ_{u < v} σ(θ_u + θ_v − 1) over all vertex pairs, via sorting.
    fn all_pairs_sum(&self, th: &[f64]) -> f64 {
        let mut sorted = th.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("scores are finite"));
        let mut suffix = vec![0.0; sorted.len() + 1];
        for i in (0..sorted.len()).rev() {
            suffix[i] = suffix[i + 1] + sorted[i];
        }
        let mut total = 0.0;
        for i in 0..sorted.len() {
            let rest = &sorted[i + 1..];
            // first j > i with sorted[i] + sorted[j] > 1
            let cut = rest.partition_point(|&x| sorted[i] + x <= 1.0);
            let cnt = (rest.len() - cut) as f64;
            if cnt > 0.0 {
                let tail = suffix[i + 1 + cut];
                total += cnt * (sorted[i] - 1.0) + tail;
            }
        }
        total
    }

    /// Subgradient at `scores`, with the convention that σ contributes 0
    /// slope exactly at its kink. Component v:
    ///
    /// ```text
    /// −𝟙[θ_v > 1/2] + n·Σ_{u∈N(v)} 𝟙[θ_v+θ_u > 1] − Σ_{u∈N'(v)} 𝟙[θ_v+θ_u > 1]
    /// ```
    pub fn gradient(&self, scores: &NodeScores) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.gradient_into(scores, &mut out);
        out
    }

    pub fn gradient_into(&self, scores: &NodeScores, out: &mut [f64]) {
        assert_eq!(scores.len(), self.n, "score vector size mismatch");
        assert_eq!(out.len(), self.n, "gradient buffer size mismatch");
        let th = scores.as_slice();
        let comp = self.variant == Variant::H && self.m_comp > 0;
        let sorted: Vec<f64> = if comp {
            let mut s = th.to_vec();
            s.sort_by(|a, b| a.partial_cmp(b).expect("scores are finite"));
            s
        } else {
            Vec::new()
        };
        exec::fill_indexed(out, |v| {
            let tv = th[v];
            let mut grad = if tv > 0.5 { -1.0 } else { 0.0 };
            let mut active_edges = 0u64;
            // complement neighbors use the rearranged test θ_u > 1 − θ_v so
            // the all-vertex count and the neighbor correction cancel exactly
            let t = 1.0 - tv;
            let mut nbrs_above = 0u64;
            for &u in self.neighbors(v) {
                let tu = th[u as usize];
                active_edges += (tv + tu > 1.0) as u64;
                nbrs_above += (tu > t) as u64;
            }
            grad += self.penalty * active_edges as f64;
            if comp {
                let all_above = sorted.len() - sorted.partition_point(|&x| x <= t);
                let self_above = (tv > t) as u64;
                grad -= (all_above as u64 - self_above - nbrs_above) as f64;
            }
            grad
        });
    }

    /// Squared distance of the objective value from `target`.
    pub fn loss(&self, scores: &NodeScores, target: f64) -> f64 {
        let d = self.evaluate(scores) - target;
        d * d
    }

    /// Gradient of `loss`: 2 (value − target) · ∇objective.
    pub fn loss_gradient(&self, scores: &NodeScores, target: f64) -> Vec<f64> {
        let scale = 2.0 * (self.evaluate(scores) - target);
        let mut grad = self.gradient(scores);
        for x in &mut grad {
            *x *= scale;
        }
        grad
    }
}

#[inline]
fn relu(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}
