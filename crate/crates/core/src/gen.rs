//! Seeded random graph generators: Erdős–Rényi G(n,p), Barabási–Albert
//! preferential attachment, the Holme–Kim clustered variant (preferential
//! attachment followed by probabilistic triangle closure), and a planted
//! stochastic block model. All take the RNG by reference, so a fixed seed
//! fixes the graph.

use crate::error::Error;
use crate::graph::Graph;
use crate::Result;
use rand::Rng;

/// G(n,p): each of the C(n,2) pairs becomes an edge independently with
/// probability p.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_prob("p", p)?;
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Preferential attachment: m initially isolated vertices, then each new
/// vertex attaches to m distinct existing vertices drawn proportionally to
/// degree (the first one attaches to all m seeds). Produces exactly
/// (n − m)·m edges and a connected graph.
pub fn barabasi_albert<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    check_attachment(n, m)?;
    let mut edges = Vec::with_capacity((n - m) * m);
    let mut targets: Vec<u32> = (0..m as u32).collect();
    // attachment pool: each vertex appears once per incident edge
    let mut repeated: Vec<u32> = Vec::new();
    for source in m as u32..n as u32 {
        for &t in &targets {
            edges.push((source, t));
        }
        repeated.extend_from_slice(&targets);
        repeated.extend(std::iter::repeat(source).take(m));
        if source + 1 < n as u32 {
            targets = random_subset(&repeated, m, rng);
        }
    }
    Graph::from_edges(n, &edges)
}

/// Clustered preferential attachment: each new vertex makes m attachment
/// steps; after the first, each step closes a triangle with probability
/// `p_t` (linking to a random neighbor of the previous target not already
/// adjacent) and otherwise attaches preferentially. A preferential step can
/// re-draw a vertex the triangle steps already linked, so the final edge
/// count is at most (n − m)·m, with equality when p_t = 0.
pub fn powerlaw_cluster<R: Rng>(
    n: usize,
    m: usize,
    p_t: f64,
    rng: &mut R,
) -> Result<Graph> {
    check_attachment(n, m)?;
    check_prob("p_t", p_t)?;
    let mut nbrs: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    let mut repeated: Vec<u32> = (0..m as u32).collect();
    for source in m as u32..n as u32 {
        let possible = random_subset(&repeated, m, rng);
        let mut cursor = 0;
        let mut target = possible[cursor];
        cursor += 1;
        add_edge(&mut nbrs, &mut edges, source, target);
        repeated.push(target);
        let mut count = 1;
        while count < m {
            if p_t > 0.0 && rng.gen_bool(p_t) {
                let hood: Vec<u32> = nbrs[target as usize]
                    .iter()
                    .copied()
                    .filter(|&w| w != source && !nbrs[source as usize].contains(&w))
                    .collect();
                if !hood.is_empty() {
                    let w = hood[rng.gen_range(0..hood.len())];
                    add_edge(&mut nbrs, &mut edges, source, w);
                    repeated.push(w);
                    count += 1;
                    continue;
                }
            }
            target = possible[cursor];
            cursor += 1;
            add_edge(&mut nbrs, &mut edges, source, target);
            repeated.push(target);
            count += 1;
        }
        repeated.extend(std::iter::repeat(source).take(m));
    }
    Graph::from_edges(n, &edges)
}

/// Planted partition: vertices fall into consecutive blocks of the given
/// sizes; pairs inside a block are joined with probability `p_intra`,
/// pairs across blocks with `q_inter`.
pub fn stochastic_block<R: Rng>(
    blocks: &[usize],
    p_intra: f64,
    q_inter: f64,
    rng: &mut R,
) -> Result<Graph> {
    check_prob("p_intra", p_intra)?;
    check_prob("q_inter", q_inter)?;
    let n: usize = blocks.iter().sum();
    let mut member = Vec::with_capacity(n);
    for (b, &size) in blocks.iter().enumerate() {
        member.extend(std::iter::repeat(b).take(size));
    }
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            let p = if member[u as usize] == member[v as usize] {
                p_intra
            } else {
                q_inter
            };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// m distinct draws from the pool (degree-weighted by repetition), kept in
/// draw order; repeats are rejected and redrawn.
fn random_subset<R: Rng>(pool: &[u32], m: usize, rng: &mut R) -> Vec<u32> {
    debug_assert!(!pool.is_empty());
    let mut out: Vec<u32> = Vec::with_capacity(m);
    while out.len() < m {
        let x = pool[rng.gen_range(0..pool.len())];
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn add_edge(nbrs: &mut [Vec<u32>], edges: &mut Vec<(u32, u32)>, u: u32, v: u32) -> bool {
    if u == v || nbrs[u as usize].contains(&v) {
        return false;
    }
    nbrs[u as usize].push(v);
    nbrs[v as usize].push(u);
    edges.push((u, v));
    true
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "{name} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

fn check_attachment(n: usize, m: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::InvalidInput(format!(
            "attachment count must satisfy 1 <= m < n, got m={m}, n={n}"
        )));
    }
    Ok(())
}
