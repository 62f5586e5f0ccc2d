//! Community detection by greedy modularity ascent (two-phase: local moves,
//! then aggregation of communities into super-nodes, repeated until no move
//! helps). The objective is modularity with a resolution knob γ:
//!
//! ```text
//! Q = Σ_c [ in_c / (2m)  −  γ · (tot_c / (2m))² ]
//! ```
//!
//! where `in_c` is twice the weight inside community c and `tot_c` the sum of
//! its members' degrees. γ > 1 favors many small communities, γ < 1 fewer
//! large ones. Node visit order is shuffled once per level from the caller's
//! RNG; everything else is deterministic, so a fixed seed gives a fixed
//! partition.

use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// A partition of the vertices; communities are sorted internally and
/// ordered by their smallest member.
pub struct Partition {
    pub communities: Vec<Vec<u32>>,
    pub resolution: f64,
}

impl Partition {
    /// Community index of each vertex.
    pub fn membership(&self, n: usize) -> Vec<u32> {
        let mut member = vec![0u32; n];
        for (c, com) in self.communities.iter().enumerate() {
            for &v in com {
                member[v as usize] = c as u32;
            }
        }
        member
    }
}

/// Weighted multigraph used for the aggregation levels.
struct Level {
    /// adjacency as (neighbor, weight); parallel edges merged
    adj: Vec<Vec<(u32, f64)>>,
    /// self-loop weight per node (counts twice toward its degree)
    selfw: Vec<f64>,
    /// weighted degree, self-loops double-counted
    degree: Vec<f64>,
    total: f64, // == 2 × total edge weight
}

impl Level {
    fn from_graph(g: &Graph) -> Level {
        let n = g.n();
        let adj: Vec<Vec<(u32, f64)>> = (0..n as u32)
            .map(|v| g.neighbors(v).iter().map(|&w| (w, 1.0)).collect())
            .collect();
        let degree: Vec<f64> = (0..n).map(|v| adj[v].len() as f64).collect();
        let total = degree.iter().sum();
        Level { adj, selfw: vec![0.0; n], degree, total }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }
}

pub fn louvain<R: Rng>(g: &Graph, resolution: f64, rng: &mut R) -> Partition {
    let n = g.n();
    if n == 0 || g.m() == 0 {
        // no edges: modularity is degenerate, keep singletons
        return Partition {
            communities: (0..n as u32).map(|v| vec![v]).collect(),
            resolution,
        };
    }

    // node → community of the original graph, refined level by level
    let mut member: Vec<u32> = (0..n as u32).collect();
    let mut level = Level::from_graph(g);

    loop {
        let (assign, moved) = one_level(&level, resolution, rng);
        if !moved {
            break;
        }
        // compact community ids in order of first appearance by node index,
        // so the relabeling is independent of where the moves ended up
        let mut compact = vec![u32::MAX; level.n()];
        let mut next = 0u32;
        for v in 0..level.n() {
            let c = assign[v] as usize;
            if compact[c] == u32::MAX {
                compact[c] = next;
                next += 1;
            }
        }
        for m in member.iter_mut() {
            *m = compact[assign[*m as usize] as usize];
        }
        if next as usize == level.n() {
            break; // every node kept its own community
        }
        level = aggregate(&level, &assign, &compact, next as usize);
    }

    let mut communities: Vec<Vec<u32>> = Vec::new();
    let ncom = member.iter().copied().max().map_or(0, |c| c as usize + 1);
    communities.resize(ncom, Vec::new());
    for v in 0..n as u32 {
        communities[member[v as usize] as usize].push(v);
    }
    communities.retain(|c| !c.is_empty());
    communities.sort_by_key(|c| c[0]);
    Partition { communities, resolution }
}

/// Local-move phase. Returns (community of each node, whether any node moved).
fn one_level<R: Rng>(level: &Level, gamma: f64, rng: &mut R) -> (Vec<u32>, bool) {
    let n = level.n();
    let mut community: Vec<u32> = (0..n as u32).collect();
    // sum of degrees per community
    let mut tot: Vec<f64> = level.degree.clone();

    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);

    // edge weight from the current node to each community, built sparsely
    let mut w_to: Vec<f64> = vec![0.0; n];
    let mut touched: Vec<u32> = Vec::new();

    let mut moved_any = false;
    loop {
        let mut moved_this_pass = false;
        for &v in &order {
            let v = v as usize;
            let c_old = community[v] as usize;
            for &(w, wt) in &level.adj[v] {
                let c = community[w as usize] as usize;
                if w_to[c] == 0.0 {
                    touched.push(c as u32);
                }
                w_to[c] += wt;
            }
            tot[c_old] -= level.degree[v];
            // gain of joining community c, relative to staying alone:
            //   w_{v,c} − γ · tot_c · deg_v / total
            let base = gamma * level.degree[v] / level.total;
            let mut best_c = c_old;
            let mut best_gain = w_to[c_old] - base * tot[c_old];
            for &c in &touched {
                let c = c as usize;
                let gain = w_to[c] - base * tot[c];
                if gain > best_gain + 1e-12 || (gain > best_gain && c < best_c) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            tot[best_c] += level.degree[v];
            community[v] = best_c as u32;
            if best_c != c_old {
                moved_this_pass = true;
                moved_any = true;
            }
            for &c in &touched {
                w_to[c as usize] = 0.0;
            }
            touched.clear();
        }
        if !moved_this_pass {
            break;
        }
    }
    (community, moved_any)
}

/// Build the next level: one node per community, edge weights summed,
/// intra-community weight folded into self-loops.
fn aggregate(level: &Level, assign: &[u32], compact: &[u32], ncom: usize) -> Level {
    let mut adj_acc: Vec<Vec<(u32, f64)>> = vec![Vec::new(); ncom];
    let mut selfw = vec![0.0; ncom];
    for v in 0..level.n() {
        let cv = compact[assign[v] as usize];
        selfw[cv as usize] += level.selfw[v];
        for &(w, wt) in &level.adj[v] {
            let cw = compact[assign[w as usize] as usize];
            if cv == cw {
                // each intra edge visited from both ends: += wt/2 twice
                selfw[cv as usize] += wt / 2.0;
            } else {
                adj_acc[cv as usize].push((cw, wt));
            }
        }
    }
    let mut adj: Vec<Vec<(u32, f64)>> = Vec::with_capacity(ncom);
    for mut row in adj_acc {
        row.sort_by_key(|&(w, _)| w);
        let mut merged: Vec<(u32, f64)> = Vec::new();
        for (w, wt) in row {
            match merged.last_mut() {
                Some((lw, lwt)) if *lw == w => *lwt += wt,
                _ => merged.push((w, wt)),
            }
        }
        adj.push(merged);
    }
    let degree: Vec<f64> = (0..ncom)
        .map(|c| adj[c].iter().map(|&(_, wt)| wt).sum::<f64>() + 2.0 * selfw[c])
        .collect();
    let total = level.total;
    Level { adj, selfw, degree, total }
}

/// Modularity of a partition at resolution γ (unit edge weights).
pub fn modularity(g: &Graph, communities: &[Vec<u32>], gamma: f64) -> f64 {
    if g.m() == 0 {
        return 0.0;
    }
    let two_m = 2.0 * g.m() as f64;
    let mut member = vec![u32::MAX; g.n()];
    for (c, com) in communities.iter().enumerate() {
        for &v in com {
            member[v as usize] = c as u32;
        }
    }
    let mut inside = vec![0.0f64; communities.len()];
    let mut tot = vec![0.0f64; communities.len()];
    for v in 0..g.n() as u32 {
        let c = member[v as usize] as usize;
        tot[c] += g.degree(v) as f64;
        for &w in g.neighbors(v) {
            if member[w as usize] == c as u32 {
                inside[c] += 1.0; // both directions counted: this is 2×in_c
            }
        }
    }
    (0..communities.len())
        .map(|c| inside[c] / two_m - gamma * (tot[c] / two_m).powi(2))
        .sum()
}
