//! Exact reference solvers for small instances. Deliberately independent of
//! the heuristic pipeline so the two can check each other.

use crate::dnn::{DnnObjective, NodeScores, Variant};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Vertex limit for [`exact_mis`]; bitmask state fits comfortably below it.
pub const EXACT_MIS_MAX_N: usize = 26;

/// Vertex limit for [`exact_min_objective`] (2^n evaluations).
pub const EXACT_OBJECTIVE_MAX_N: usize = 16;

pub struct OracleResult {
    pub size: usize,
    pub witness: VertexSet,
    /// Branch-and-bound nodes visited; a cheap effort indicator.
    pub enumerated: u64,
}

/// Exact maximum independent set by branch and bound over bitmasks.
///
/// Branches on the highest-degree remaining vertex (include and drop its
/// closed neighborhood, or exclude) and prunes when even taking everything
/// left cannot beat the incumbent.
pub fn exact_mis(g: &Graph) -> Result<OracleResult> {
    let n = g.n();
    if n > EXACT_MIS_MAX_N {
        return Err(Error::Capacity(format!(
            "exact search handles at most {EXACT_MIS_MAX_N} vertices, got {n}"
        )));
    }
    let nbr: Vec<u64> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
        .collect();
    let mut best_size = 0usize;
    let mut best_mask = 0u64;
    let mut enumerated = 0u64;
    let full = if n == 64 { !0 } else { (1u64 << n) - 1 };
    branch(&nbr, full, 0, 0, &mut best_size, &mut best_mask, &mut enumerated);
    let witness =
        VertexSet::from_slice(n, &(0..n as u32).filter(|&v| best_mask >> v & 1 == 1).collect::<Vec<_>>());
    debug_assert!(g.is_independent(&witness));
    Ok(OracleResult { size: best_size, witness, enumerated })
}

fn branch(
    nbr: &[u64],
    pool: u64,
    cur_mask: u64,
    cur_size: usize,
    best_size: &mut usize,
    best_mask: &mut u64,
    enumerated: &mut u64,
) {
    *enumerated += 1;
    if pool == 0 {
        if cur_size > *best_size {
            *best_size = cur_size;
            *best_mask = cur_mask;
        }
        return;
    }
    if cur_size + pool.count_ones() as usize <= *best_size {
        return;
    }
    // highest degree within the pool, lowest index on ties
    let mut pick = u32::MAX;
    let mut pick_deg = 0usize;
    let mut scan = pool;
    while scan != 0 {
        let v = scan.trailing_zeros();
        scan &= scan - 1;
        let d = (nbr[v as usize] & pool).count_ones() as usize;
        if pick == u32::MAX || d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    let v = pick;
    let bit = 1u64 << v;
    // include v first: deep solutions early tighten the bound
    branch(nbr, pool & !nbr[v as usize] & !bit, cur_mask | bit, cur_size + 1, best_size, best_mask, enumerated);
    branch(nbr, pool & !bit, cur_mask, cur_size, best_size, best_mask, enumerated);
}

/// Exact minimum of the chosen objective over binary score vectors
/// θ ∈ {0,1}^n, by full enumeration.
pub fn exact_min_objective(g: &Graph, variant: Variant) -> Result<f64> {
    let n = g.n();
    if n > EXACT_OBJECTIVE_MAX_N {
        return Err(Error::Capacity(format!(
            "binary enumeration handles at most {EXACT_OBJECTIVE_MAX_N} vertices, got {n}"
        )));
    }
    let obj = DnnObjective::build(g, variant)?;
    let mut best = f64::INFINITY;
    for mask in 0u32..1 << n {
        let scores = NodeScores::indicator(n, |v| mask >> v & 1 == 1);
        best = best.min(obj.evaluate(&scores));
    }
    Ok(best)
}
