//! Release gate: one test per published claim, each printing a single
//! PASS/FAIL line (visible with `--nocapture`). Every check here runs the
//! public API end to end; nothing reaches into crate internals.

use dmis::dnn::{DnnObjective, NodeScores, Variant};
use dmis::gen;
use dmis::graph::Graph;
use dmis::oracle::{exact_mis, exact_min_objective};
use dmis::pipeline::{bench, solve, PipelineConfig, ProblemKind, Suite};
use dmis::reduce::lp_reduce;
use dmis::search::{improve_traced, two_improvement};
use dmis::train::{solve_mis_dnn, TrainConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::time::{Duration, Instant};

fn verdict(num: u32, name: &str, pass: bool, detail: &str) {
    println!("criterion {num} ({name}): {} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {num} ({name}) failed: {detail}");
}

fn er(n: usize, p: f64, seed: u64) -> Graph {
    gen::erdos_renyi(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

/// The binary minimum of the F objective is −k/2 and of the H objective
/// −k²/2, with k the maximum independent set size — exactly, over 300
/// seeded graphs on up to 8 vertices.
#[test]
fn c1_exact_objective_minima() {
    let start = Instant::now();
    let ps = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
    let mut checked = 0;
    for i in 0..300u64 {
        let n = 1 + (i as usize % 8);
        let p = ps[i as usize % ps.len()];
        let g = er(n, p, 500 + i);
        let k = exact_mis(&g).unwrap().size as f64;
        let f_min = exact_min_objective(&g, Variant::F).unwrap();
        let h_min = exact_min_objective(&g, Variant::H).unwrap();
        assert_eq!(f_min, -k / 2.0, "instance {i}: F minimum off (n={n}, p={p})");
        assert_eq!(h_min, -k * k / 2.0, "instance {i}: H minimum off (n={n}, p={p})");
        checked += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        1,
        "exact objective minima",
        checked == 300 && secs < 30.0,
        &format!("{checked}/300 exact (both variants) in {secs:.2}s (budget 30s)"),
    );
}

/// Analytic gradients match central finite differences to a relative error
/// of 1e-6 per coordinate on 100 kink-free (graph, θ) pairs.
#[test]
fn c2_gradient_matches_finite_differences() {
    let start = Instant::now();
    const MARGIN: f64 = 1e-3;
    const STEP: f64 = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut accepted = 0;
    let mut worst: f64 = 0.0;
    while accepted < 100 {
        let n = 4 + (accepted % 7); // 4..=10
        let p = if accepted % 2 == 0 { 0.3 } else { 0.5 };
        let g = gen::erdos_renyi(n, p, &mut rng).unwrap();
        let variant = if accepted % 2 == 0 { Variant::H } else { Variant::F };

        // rejection-sample θ at least MARGIN from every kink: the vertex
        // terms bend at θ_v = 1/2 and the pair terms at θ_u + θ_v = 1
        let th: Vec<f64> = loop {
            let cand: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..0.99)).collect();
            let vertex_ok = cand.iter().all(|&x| (x - 0.5).abs() >= MARGIN);
            let pairs_ok = (0..n).all(|u| {
                (u + 1..n).all(|v| (cand[u] + cand[v] - 1.0).abs() >= MARGIN)
            });
            if vertex_ok && pairs_ok {
                break cand;
            }
        };

        let obj = DnnObjective::build(&g, variant).unwrap();
        let scores = NodeScores::new(th.clone());
        let analytic = obj.gradient(&scores);
        for v in 0..n {
            let mut plus = th.clone();
            plus[v] += STEP;
            let mut minus = th.clone();
            minus[v] -= STEP;
            let fd = (obj.evaluate(&NodeScores::new(plus))
                - obj.evaluate(&NodeScores::new(minus)))
                / (2.0 * STEP);
            // relative where the gradient is large, absolute where it is
            // near zero (an exact-zero slope meets FD cancellation noise)
            let rel = (analytic[v] - fd).abs() / fd.abs().max(1.0);
            worst = worst.max(rel);
            assert!(
                rel <= 1e-6,
                "pair {accepted}, coordinate {v}: analytic {} vs fd {fd} (rel {rel:.2e})",
                analytic[v]
            );
        }
        accepted += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        2,
        "gradient vs finite differences",
        secs < 10.0,
        &format!("100/100 pairs, worst relative error {worst:.2e} in {secs:.2}s (budget 10s)"),
    );
}

/// The full pipeline matches the exact optimum on at least 95% of 200
/// seeded instances, never exceeds it, and always returns a valid maximal
/// set.
#[test]
fn c3_pipeline_matches_oracle() {
    let start = Instant::now();
    let ps = [0.1, 0.2, 0.3, 0.5];
    let total = 200;
    let mut optimal = 0;
    for i in 0..total as u64 {
        let n = 8 + (i as usize % 13); // 8..=20
        let p = ps[i as usize % ps.len()];
        let g = er(n, p, 7000 + i);
        let mut cfg = PipelineConfig::default();
        cfg.train.seed = i;
        let (s, report) = solve(&g, "c3", &cfg).unwrap();
        let exact = exact_mis(&g).unwrap().size;
        assert!(s.len() <= exact, "instance {i}: heuristic above the optimum");
        assert!(g.is_independent(&s) && g.is_maximal_independent(&s), "instance {i}: invalid");
        assert!(report.valid && report.maximal, "instance {i}: report contradicts the set");
        optimal += (s.len() == exact) as usize;
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = optimal * 100 >= 95 * total && secs < 300.0;
    verdict(
        3,
        "pipeline vs exact optimum",
        pass,
        &format!(
            "{optimal}/{total} optimal ({}%), 200/200 valid maximal, never above, in {secs:.1}s (budget 300s)",
            optimal * 100 / total
        ),
    );
}

/// LP-based kernelization is exact: the forced vertices plus the optimum of
/// the residual equal the optimum of the whole graph, on all 200 instances.
#[test]
fn c4_lp_reduction_is_exact() {
    let start = Instant::now();
    let ps = [0.05, 0.1, 0.15, 0.2, 0.3, 0.5];
    let total = 200;
    for i in 0..total as u64 {
        let n = 2 + (i as usize % 15); // 2..=16
        let p = ps[i as usize % ps.len()];
        let g = er(n, p, 11_000 + i);
        let red = lp_reduce(&g);
        let whole = exact_mis(&g).unwrap().size;
        let rest = exact_mis(&red.residual.graph).unwrap().size;
        assert_eq!(
            red.ones.len() + rest,
            whole,
            "instance {i} (n={n}, p={p}): {} forced + {rest} residual != {whole}",
            red.ones.len()
        );
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        4,
        "LP kernelization exactness",
        secs < 60.0,
        &format!("{total}/{total} instances decompose exactly in {secs:.2}s (budget 60s)"),
    );
}

/// Mean solution sizes over 2 seeds hit the published window on every
/// synthetic family.
#[test]
fn c5_synthetic_targets() {
    let start = Instant::now();
    let rows = bench(Suite::Synthetic, 2, &PipelineConfig::default(), &PathBuf::from("data"))
        .unwrap();
    let mut all_ok = true;
    let mut details = Vec::new();
    for r in &rows {
        all_ok &= r.within_target;
        details.push(format!(
            "{} mean {:.1} vs {}{}",
            r.instance,
            r.mean_size,
            r.target,
            r.tolerance.map_or("+".into(), |t| format!("±{t}"))
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        5,
        "synthetic size targets",
        all_ok && rows.len() == 6 && secs < 900.0,
        &format!("{} in {secs:.1}s (budget 900s)", details.join("; ")),
    );
}

/// Dataset floors. Needs the graphs downloaded into data/ first (each
/// missing-file error names the source URL); run with --ignored.
#[test]
#[ignore = "needs downloaded datasets in data/; run with --ignored"]
fn c6_dataset_floors() {
    let start = Instant::now();
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let cfg = PipelineConfig::default();
    let mut gating_ok = true;
    let mut lines = Vec::new();
    for suite in [Suite::Citation, Suite::Snap] {
        let rows = bench(suite, 1, &cfg, &data).unwrap();
        for r in &rows {
            if r.gating {
                gating_ok &= r.within_target;
            }
            lines.push(format!(
                "{} best {} target {}{}{}",
                r.instance,
                r.best_size,
                r.target,
                if r.within_target { " ok" } else { " MISSED" },
                if r.gating { "" } else { " (informational)" }
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        6,
        "dataset floors",
        gating_ok && secs < 7200.0,
        &format!("{} in {secs:.0}s (budget 7200s)", lines.join("; ")),
    );
}

/// Clique and vertex-cover solves reduce to the independent-set solve
/// exactly: same sizes as solving the complement, and the cover is always
/// the complement of the independent set.
#[test]
fn c7_problem_mappings() {
    let start = Instant::now();
    let ps = [0.2, 0.3, 0.4];
    let total = 100;
    for i in 0..total as u64 {
        let n = 8 + (i as usize % 9); // 8..=16
        let p = ps[i as usize % ps.len()];
        let g = er(n, p, 23_000 + i);
        let mut cfg = PipelineConfig::default();
        cfg.train.seed = i;

        cfg.problem = ProblemKind::Mc;
        let (clique, _) = solve(&g, "c7", &cfg).unwrap();
        cfg.problem = ProblemKind::Mis;
        let (mis_of_comp, _) = solve(&g.complement(), "c7", &cfg).unwrap();
        let omega = exact_mis(&g.complement()).unwrap().size;
        assert!(g.is_clique(&clique), "instance {i}: clique answer not a clique");
        assert_eq!(clique.len(), mis_of_comp.len(), "instance {i}: mapping mismatch");
        assert_eq!(clique.len(), omega, "instance {i}: clique below the optimum");

        let (mis, _) = solve(&g, "c7", &cfg).unwrap();
        cfg.problem = ProblemKind::Mvc;
        let (cover, _) = solve(&g, "c7", &cfg).unwrap();
        assert!(g.is_vertex_cover(&cover), "instance {i}: cover answer not a cover");
        assert_eq!(cover.len(), n - mis.len(), "instance {i}: cover duality broke");
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        7,
        "problem mappings",
        true,
        &format!("{total}/{total} instances: clique = complement solve = optimum, cover = n − independent set, in {secs:.1}s"),
    );
}

/// Identical seed and configuration give byte-identical reports once the
/// timing fields are zeroed — for every generator family and every problem.
#[test]
fn c8_reports_are_reproducible() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut graphs: Vec<(String, Graph)> = vec![
        ("er-100-p0.1".into(), gen::erdos_renyi(100, 0.1, &mut rng).unwrap()),
        ("er-100-p0.2".into(), gen::erdos_renyi(100, 0.2, &mut rng).unwrap()),
        ("er-200-p0.1".into(), gen::erdos_renyi(200, 0.1, &mut rng).unwrap()),
        ("ba-100-m45".into(), gen::barabasi_albert(100, 45, &mut rng).unwrap()),
        ("hk-100".into(), gen::powerlaw_cluster(100, 30, 0.5, &mut rng).unwrap()),
        ("sbm-250".into(), gen::stochastic_block(&[50; 5], 0.1, 0.05, &mut rng).unwrap()),
    ];
    // also cover all three problems on one instance
    let fig = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
    graphs.push(("fig".into(), fig));

    let mut runs = 0;
    for (name, g) in &graphs {
        let problems: &[ProblemKind] = if name == "fig" {
            &[ProblemKind::Mis, ProblemKind::Mc, ProblemKind::Mvc]
        } else {
            &[ProblemKind::Mis]
        };
        for &problem in problems {
            let mut cfg = PipelineConfig::default();
            cfg.problem = problem;
            cfg.train.seed = 17;
            let (_, ra) = solve(g, name, &cfg).unwrap();
            let (_, rb) = solve(g, name, &cfg).unwrap();
            let ja = serde_json::to_string(&ra.timeless()).unwrap();
            let jb = serde_json::to_string(&rb.timeless()).unwrap();
            assert_eq!(ja, jb, "{name}/{problem}: reports differ between identical runs");
            runs += 1;
        }
    }

    // the benchmark table is deterministic too, modulo its timing column
    let data = PathBuf::from("data");
    let cfg = PipelineConfig::default();
    let strip = |rows: Vec<dmis::pipeline::BenchRow>| -> String {
        let rows: Vec<_> = rows
            .into_iter()
            .map(|mut r| {
                r.mean_seconds = 0.0;
                r
            })
            .collect();
        serde_json::to_string(&rows).unwrap()
    };
    let t1 = strip(bench(Suite::Synthetic, 1, &cfg, &data).unwrap());
    let t2 = strip(bench(Suite::Synthetic, 1, &cfg, &data).unwrap());
    assert_eq!(t1, t2, "benchmark tables differ between identical runs");

    let secs = start.elapsed().as_secs_f64();
    verdict(
        8,
        "seeded reproducibility",
        true,
        &format!("{runs} paired solves plus the benchmark table byte-identical (timing zeroed) in {secs:.1}s"),
    );
}

/// The improvement phase's trace never decreases and its final value is
/// never below the pre-improvement size — on both instance families it
/// gates.
#[test]
fn c9_improvement_traces() {
    let start = Instant::now();
    let tcfg = TrainConfig::default();
    let icfg = dmis::search::ImproveConfig::default();
    let mut checked = 0;

    let mut check = |g: &Graph, seed: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pre = two_improvement(g, &solve_mis_dnn(g, &tcfg, &mut rng).unwrap());
        let (best, trace) = improve_traced(g, &pre, &tcfg, &icfg, &mut rng).unwrap();
        assert_eq!(trace[0], pre.len(), "trace must start at the input size");
        assert!(trace.windows(2).all(|w| w[0] <= w[1]), "trace decreased: {trace:?}");
        assert_eq!(*trace.last().unwrap(), best.len(), "trace end != result");
        assert!(best.len() >= pre.len(), "improvement lost ground");
        checked += 1;
    };

    // the oracle-comparison family
    let ps = [0.1, 0.2, 0.3, 0.5];
    for i in 0..200u64 {
        let n = 8 + (i as usize % 13);
        let p = ps[i as usize % ps.len()];
        check(&er(n, p, 7000 + i), i);
    }
    // the synthetic-target family
    for seed in 0..2u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(31 + seed);
        check(&gen::erdos_renyi(100, 0.1, &mut rng).unwrap(), seed);
        check(&gen::erdos_renyi(100, 0.2, &mut rng).unwrap(), seed);
        check(&gen::erdos_renyi(200, 0.1, &mut rng).unwrap(), seed);
        check(&gen::barabasi_albert(100, 45, &mut rng).unwrap(), seed);
        check(&gen::powerlaw_cluster(100, 30, 0.5, &mut rng).unwrap(), seed);
        check(&gen::stochastic_block(&[50; 5], 0.1, 0.05, &mut rng).unwrap(), seed);
    }

    let secs = start.elapsed().as_secs_f64();
    verdict(
        9,
        "improvement traces",
        checked == 212,
        &format!("{checked}/212 traces nondecreasing, final ≥ start, in {secs:.1}s"),
    );
}

/// Time limits are respected: a tiny budget returns promptly and still
/// yields a valid answer.
#[test]
fn time_limit_cuts_improvement_short() {
    let g = er(150, 0.1, 99);
    let mut cfg = PipelineConfig::default();
    cfg.improve.time_limit = Some(Duration::from_millis(1));
    let t = Instant::now();
    let (s, _) = solve(&g, "tl", &cfg).unwrap();
    assert!(g.is_maximal_independent(&s));
    assert!(t.elapsed() < Duration::from_secs(30));
}
