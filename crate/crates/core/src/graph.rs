//! Simple undirected graphs with dense `u32` vertex ids, plus the vertex-set
//! and subgraph plumbing the solver phases hand around.
//!
//! Adjacency lists are kept sorted so that membership tests are binary
//! searches and every iteration order is deterministic.

use crate::{Error, Result};

/// Set of vertices of a fixed host graph, stored as a bitset.
///
/// Iteration is always in ascending vertex order.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    blocks: Vec<u64>,
    len: usize,
    host_n: usize,
}

impl VertexSet {
    pub fn new(host_n: usize) -> Self {
        VertexSet { blocks: vec![0; host_n.div_ceil(64)], len: 0, host_n }
    }

    /// The full vertex set `0..host_n`.
    pub fn full(host_n: usize) -> Self {
        let mut s = VertexSet::new(host_n);
        for v in 0..host_n as u32 {
            s.insert(v);
        }
        s
    }

    pub fn from_slice(host_n: usize, vs: &[u32]) -> Self {
        let mut s = VertexSet::new(host_n);
        for &v in vs {
            s.insert(v);
        }
        s
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        let v = v as usize;
        v < self.host_n && self.blocks[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns true if `v` was newly inserted.
    pub fn insert(&mut self, v: u32) -> bool {
        assert!((v as usize) < self.host_n, "vertex {v} outside host 0..{}", self.host_n);
        let (b, bit) = (v as usize / 64, 1u64 << (v % 64));
        let fresh = self.blocks[b] & bit == 0;
        self.blocks[b] |= bit;
        self.len += fresh as usize;
        fresh
    }

    /// Returns true if `v` was present.
    pub fn remove(&mut self, v: u32) -> bool {
        if (v as usize) >= self.host_n {
            return false;
        }
        let (b, bit) = (v as usize / 64, 1u64 << (v % 64));
        let had = self.blocks[b] & bit != 0;
        self.blocks[b] &= !bit;
        self.len -= had as usize;
        had
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().enumerate().flat_map(|(b, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(b as u32 * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.host_n, other.host_n, "host size mismatch");
        self.len = 0;
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
            self.len += a.count_ones() as usize;
        }
    }

    /// `host \ self`, e.g. a vertex cover from an independent set.
    pub fn complement_in_host(&self) -> VertexSet {
        let mut out = VertexSet::new(self.host_n);
        for v in 0..self.host_n as u32 {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected graph. Self-loops and duplicate edges are dropped at
/// construction time.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Build from an edge list over vertices `0..n`. Duplicates (in either
    /// orientation) collapse; self-loops vanish. Out-of-range endpoints are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) outside vertex range 0..{n}"
                )));
            }
            if u == v {
                continue;
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2, labels: None })
    }

    /// Attach display labels (one per vertex).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edge density `2m / (n (n-1))`; 0 for graphs with fewer than 2 vertices.
    pub fn density(&self) -> f64 {
        let n = self.n();
        if n < 2 {
            return 0.0;
        }
        2.0 * self.m as f64 / (n as f64 * (n as f64 - 1.0))
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// Display label of `v`: the attached label, or the index rendered as
    /// text when none was attached.
    pub fn label(&self, v: u32) -> String {
        match &self.labels {
            Some(ls) => ls[v as usize].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Complement graph on the same vertices (labels carried over).
    /// Materializes Θ(n²) candidate pairs; callers guard the size.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        for u in 0..n as u32 {
            let nbrs = &self.adj[u as usize];
            let mut it = nbrs.iter().peekable();
            for v in 0..n as u32 {
                if v == u {
                    continue;
                }
                while let Some(&&w) = it.peek() {
                    if w < v {
                        it.next();
                    } else {
                        break;
                    }
                }
                if it.peek() != Some(&&v) {
                    adj[u as usize].push(v);
                }
            }
        }
        let m = n * n.saturating_sub(1) / 2 - self.m;
        Graph { adj, m, labels: self.labels.clone() }
    }

    /// Induced subgraph on `keep`, with the mapping back to this graph.
    pub fn induced(&self, keep: &VertexSet) -> Subgraph {
        assert_eq!(keep.host_n(), self.n(), "set belongs to a different host");
        let to_parent: Vec<u32> = keep.iter().collect();
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in to_parent.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut adj = vec![Vec::new(); to_parent.len()];
        let mut m = 0;
        for (i, &v) in to_parent.iter().enumerate() {
            for &w in &self.adj[v as usize] {
                let lw = local[w as usize];
                if lw != u32::MAX {
                    adj[i].push(lw);
                }
            }
            // parent lists are sorted and `to_parent` is ascending, so the
            // relabeled lists come out sorted too
            m += adj[i].len();
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| to_parent.iter().map(|&v| ls[v as usize].clone()).collect());
        Subgraph {
            graph: Graph { adj, m: m / 2, labels },
            to_parent,
            parent_n: self.n(),
        }
    }

    /// Subgraph induced on `V \ (s ∪ N(s))`.
    pub fn remove_closed_neighborhood(&self, s: &VertexSet) -> Subgraph {
        assert_eq!(s.host_n(), self.n(), "set belongs to a different host");
        let mut keep = VertexSet::full(self.n());
        for v in s.iter() {
            keep.remove(v);
            for &w in &self.adj[v as usize] {
                keep.remove(w);
            }
        }
        self.induced(&keep)
    }

    /// Largest connected component (ties broken toward the component whose
    /// smallest vertex comes first).
    pub fn largest_connected_component(&self) -> Subgraph {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut best: Option<Vec<u32>> = None;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut comp = vec![start];
            seen[start as usize] = true;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            if best.as_ref().map_or(true, |b| comp.len() > b.len()) {
                best = Some(comp);
            }
        }
        let comp = best.unwrap_or_default();
        self.induced(&VertexSet::from_slice(n, &comp))
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v as usize].iter().all(|&w| !s.contains(w)))
    }

    /// Independent and not extendable by any vertex.
    pub fn is_maximal_independent(&self, s: &VertexSet) -> bool {
        if !self.is_independent(s) {
            return false;
        }
        (0..self.n() as u32).all(|v| {
            s.contains(v) || self.adj[v as usize].iter().any(|&w| s.contains(w))
        })
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let vs = s.to_vec();
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_vertex_cover(&self, s: &VertexSet) -> bool {
        self.edges().all(|(u, v)| s.contains(u) || s.contains(v))
    }

    /// Internal consistency check used by tests and the generators.
    #[cfg(test)]
    pub(crate) fn check_consistent(&self) {
        let mut m = 0;
        for (u, list) in self.adj.iter().enumerate() {
            assert!(list.windows(2).all(|w| w[0] < w[1]), "list for {u} not sorted/deduped");
            for &v in list {
                assert_ne!(u as u32, v, "self-loop at {u}");
                assert!(self.adj[v as usize].binary_search(&(u as u32)).is_ok());
            }
            m += list.len();
        }
        assert_eq!(self.m, m / 2);
    }
}

/// An induced subgraph together with the mapping of its vertices back to the
/// graph it was cut from.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `to_parent[i]` is the parent vertex behind local vertex `i` (ascending).
    pub to_parent: Vec<u32>,
    parent_n: usize,
}

impl Subgraph {
    /// The trivial subgraph covering all of `g`.
    pub fn identity(g: &Graph) -> Subgraph {
        Subgraph {
            to_parent: (0..g.n() as u32).collect(),
            parent_n: g.n(),
            graph: g.clone(),
        }
    }

    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    /// Map a set of local vertices back into the parent's index space.
    pub fn lift(&self, s: &VertexSet) -> VertexSet {
        assert_eq!(s.host_n(), self.graph.n(), "set belongs to a different host");
        let mut out = VertexSet::new(self.parent_n);
        for v in s.iter() {
            out.insert(self.to_parent[v as usize]);
        }
        out
    }
}
