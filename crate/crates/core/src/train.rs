//! Minimizing the objective: degree-biased noisy initialization, projected
//! ADAM, a plateau-based stopping rule, and extraction of an independent set
//! from the trained scores.

use crate::dnn::{DnnObjective, NodeScores, Variant, DEFAULT_COMPLEMENT_CAP};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Optimizer and extraction knobs. The defaults are the ones every solver
/// entry point uses.
#[derive(Clone, Debug)]
pub struct TrainConfig {
    /// ADAM learning rate.
    pub learning_rate: f64,
    /// Extraction threshold: v is selected when θ_v ≥ alpha.
    pub alpha: f64,
    pub max_iters: usize,
    /// Stop after this many consecutive steps without a loss improvement
    /// of at least `plateau_tol`.
    pub plateau_patience: usize,
    pub plateau_tol: f64,
    /// Initialization noise is uniform on (0, noise_bound].
    pub noise_bound: f64,
    /// Master seed; entry points derive their RNG streams from it.
    pub seed: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    /// Largest graph the H objective is built for; bigger ones fall back to F.
    pub complement_cap: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.1,
            alpha: 0.5,
            max_iters: 3000,
            plateau_patience: 200,
            plateau_tol: 1e-6,
            noise_bound: 0.01,
            seed: 0,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            complement_cap: DEFAULT_COMPLEMENT_CAP,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.learning_rate > 0.0
            && self.alpha > 0.0
            && self.alpha < 1.0
            && self.noise_bound > 0.0
            && self.plateau_tol >= 0.0
            && (0.0..1.0).contains(&self.beta1)
            && (0.0..1.0).contains(&self.beta2)
            && self.eps > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("training configuration out of range".into()))
        }
    }
}

/// First/second moment estimates for ADAM, one pair per coordinate.
pub struct AdamState {
    first_moment: Vec<f64>,
    second_moment: Vec<f64>,
    step: u64,
}

impl AdamState {
    pub fn new(n: usize) -> AdamState {
        AdamState { first_moment: vec![0.0; n], second_moment: vec![0.0; n], step: 0 }
    }

    pub fn step(&self) -> u64 {
        self.step
    }
}

/// Degree-biased start: θ_v = 1 − d(v)/Δ(G) + s_v with s_v uniform on
/// (0, noise_bound] per coordinate, then the whole vector is divided by its
/// maximum. Isolated-vertex-only graphs take d/Δ = 0. All entries land in
/// (0, 1] with the maximum exactly 1.
pub fn init_scores(g: &Graph, cfg: &TrainConfig, rng: &mut ChaCha8Rng) -> NodeScores {
    let n = g.n();
    let max_deg = g.max_degree() as f64;
    let mut raw: Vec<f64> = (0..n as u32)
        .map(|v| {
            let base = if max_deg > 0.0 { 1.0 - g.degree(v) as f64 / max_deg } else { 1.0 };
            // 1 − gen::<f64>() is in (0, 1], so the noise never vanishes
            base + cfg.noise_bound * (1.0 - rng.gen::<f64>())
        })
        .collect();
    let max = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max > 0.0 {
        for x in &mut raw {
            *x /= max;
        }
    }
    NodeScores::new(raw)
}

/// One ADAM update with bias correction, followed by projection onto
/// [0, 1]^n. Rejects non-finite gradients.
pub fn adam_step(
    state: &mut AdamState,
    scores: &mut NodeScores,
    grad: &[f64],
    cfg: &TrainConfig,
) -> Result<()> {
    let n = scores.len();
    if grad.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: grad.len() });
    }
    if grad.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("gradient fed to the optimizer".into()));
    }
    state.step += 1;
    let t = state.step as i32;
    let bc1 = 1.0 - cfg.beta1.powi(t);
    let bc2 = 1.0 - cfg.beta2.powi(t);
    let th = scores.values_mut();
    for v in 0..n {
        let m = &mut state.first_moment[v];
        *m = cfg.beta1 * *m + (1.0 - cfg.beta1) * grad[v];
        let s = &mut state.second_moment[v];
        *s = cfg.beta2 * *s + (1.0 - cfg.beta2) * grad[v] * grad[v];
        let m_hat = *m / bc1;
        let s_hat = *s / bc2;
        th[v] = (th[v] - cfg.learning_rate * m_hat / (s_hat.sqrt() + cfg.eps)).clamp(0.0, 1.0);
    }
    Ok(())
}

/// Squared-loss target the optimizer drives the objective value toward:
/// −n²/2 for H, −n/2 for F (the values a hypothetical everything-is-
/// independent instance would attain).
pub fn loss_target(obj: &DnnObjective) -> f64 {
    let n = obj.n() as f64;
    match obj.variant() {
        Variant::H => -n * n / 2.0,
        Variant::F => -n / 2.0,
    }
}

/// Run ADAM on `(evaluate(θ) − target)²` from a fresh noisy initialization.
/// Returns the scores at the plateau (or after `max_iters` steps).
pub fn train(
    obj: &DnnObjective,
    g: &Graph,
    cfg: &TrainConfig,
    rng: &mut ChaCha8Rng,
) -> Result<NodeScores> {
    let mut scores = init_scores(g, cfg, rng);
    let mut state = AdamState::new(obj.n());
    let target = loss_target(obj);
    let mut best_loss = f64::INFINITY;
    let mut stale = 0usize;
    for _ in 0..cfg.max_iters {
        let value = obj.evaluate(&scores);
        let diff = value - target;
        let loss = diff * diff;
        if best_loss - loss >= cfg.plateau_tol {
            best_loss = loss;
            stale = 0;
        } else {
            stale += 1;
            if stale >= cfg.plateau_patience {
                break;
            }
        }
        let mut grad = obj.gradient(&scores);
        let scale = 2.0 * diff;
        for x in &mut grad {
            *x *= scale;
        }
        adam_step(&mut state, &mut scores, &grad, cfg)?;
    }
    Ok(scores)
}

/// Threshold at `alpha`, then repair into an independent set: scan edges in
/// ascending order and, where both endpoints survived, drop the one with
/// larger degree (ties: farther from score 1, then larger index).
pub fn extract_set(g: &Graph, scores: &NodeScores, alpha: f64) -> VertexSet {
    assert_eq!(scores.len(), g.n(), "score vector size mismatch");
    let th = scores.as_slice();
    let mut s = VertexSet::new(g.n());
    for v in 0..g.n() as u32 {
        if th[v as usize] >= alpha {
            s.insert(v);
        }
    }
    // one ascending pass suffices: dropping an endpoint never creates a new
    // conflict among edges already scanned
    for (u, v) in g.edges() {
        if s.contains(u) && s.contains(v) {
            let key = |x: u32| (g.degree(x), 1.0 - th[x as usize], x);
            let (du, dv) = (key(u), key(v));
            let drop = if dv.0 > du.0
                || (dv.0 == du.0 && (dv.1 > du.1 || (dv.1 == du.1 && dv.2 > du.2)))
            {
                v
            } else {
                u
            };
            s.remove(drop);
        }
    }
    debug_assert!(g.is_independent(&s));
    s
}

/// Objective-based MIS solve of one graph: train, extract, and keep
/// re-solving the still-uncovered remainder until the set is maximal.
/// Uses H when the graph fits under `complement_cap`, otherwise F.
pub fn solve_mis_dnn(g: &Graph, cfg: &TrainConfig, rng: &mut ChaCha8Rng) -> Result<VertexSet> {
    let mut solution = VertexSet::new(g.n());
    let mut region = crate::graph::Subgraph::identity(g);
    loop {
        if region.graph.n() == 0 {
            break;
        }
        let variant =
            if region.graph.n() <= cfg.complement_cap { Variant::H } else { Variant::F };
        let obj = DnnObjective::build_with_cap(&region.graph, variant, usize::MAX)?;
        let scores = train(&obj, &region.graph, cfg, rng)?;
        let mut picked = extract_set(&region.graph, &scores, cfg.alpha);
        if picked.is_empty() {
            // guarantee progress: fall back to the highest-scoring vertex
            // (every remaining vertex is independent of the solution so far)
            let th = scores.as_slice();
            let v = (0..region.graph.n() as u32)
                .max_by(|&a, &b| {
                    th[a as usize]
                        .partial_cmp(&th[b as usize])
                        .expect("scores are finite")
                        .then(b.cmp(&a)) // prefer the lower index on ties
                })
                .expect("region is nonempty");
            picked.insert(v);
        }
        solution.union_with(&region.lift(&picked));
        region = g.remove_closed_neighborhood(&solution);
    }
    debug_assert!(g.is_maximal_independent(&solution));
    Ok(solution)
}
