//! Undirected simple graphs, degree statistics, edge partitions, and
//! canonical codes for trees.
//!
//! Graphs are stored as per-vertex sorted adjacency lists over the vertex
//! set `0..n`. Trees are the main case throughout the crate, but everything
//! here works for arbitrary simple graphs (the connected-graph scans need
//! that).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected two vertex ids, found {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range for order {n}")]
    OutOfRange { v: usize, n: usize },
    #[error("vertex ids not contiguous: {missing} never appears but {max} does")]
    NonContiguous { missing: usize, max: usize },
    #[error("edge list is empty")]
    Empty,
    #[error("graph has no vertices")]
    NoVertices,
    #[error("not a tree")]
    NotATree,
}

/// Undirected simple graph on vertices `0..n` as sorted adjacency lists.
///
/// Invariants held by construction: adjacency is symmetric, there are no
/// self-loops or duplicate neighbors, and every neighbor index is in
/// `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds a graph of order `n` from an edge list, validating the
    /// simple-graph invariants.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n {
                return Err(GraphError::OutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::OutOfRange { v, n });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(SimpleGraph { adj })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Self {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length must equal graph order");
        let mut adj = vec![Vec::new(); n];
        for (v, nbrs) in self.adj.iter().enumerate() {
            adj[perm[v]] = nbrs.iter().map(|&w| perm[w]).collect();
            adj[perm[v]].sort_unstable();
        }
        SimpleGraph { adj }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == n
    }

    /// True iff the graph is connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edge_count() == self.order() - 1 && self.is_connected()
    }

    pub fn degree_vector(&self) -> DegreeVector {
        let mut counts = BTreeMap::new();
        for nbrs in &self.adj {
            if !nbrs.is_empty() {
                *counts.entry(nbrs.len()).or_insert(0usize) += 1;
            }
        }
        DegreeVector { counts }
    }

    pub fn edge_partition(&self) -> EdgePartition {
        let mut counts = BTreeMap::new();
        for (u, v) in self.edges() {
            let (s, t) = (self.degree(u), self.degree(v));
            let key = (s.min(t), s.max(t));
            *counts.entry(key).or_insert(0usize) += 1;
        }
        EdgePartition { counts }
    }

    /// Canonical code of a tree: two trees get the same code iff they are
    /// isomorphic. Rooted at the centroid; a bicentroid tie is broken by
    /// taking the lexicographically smaller of the two rooted encodings.
    pub fn canonical_code(&self) -> Result<CanonicalCode, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        let code = self
            .centroids()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .expect("a tree has at least one centroid");
        Ok(CanonicalCode(code))
    }

    /// The one or two vertices minimizing the largest component of `T - v`.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.order();
        if n == 1 {
            return vec![0];
        }
        // Subtree sizes by iterative post-order from vertex 0.
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut size = vec![1usize; n];
        let mut max_child = vec![0usize; n];
        for &v in order.iter().rev() {
            if parent[v] != usize::MAX {
                let p = parent[v];
                size[p] += size[v];
                max_child[p] = max_child[p].max(size[v]);
            }
        }
        let mut best = usize::MAX;
        let mut centroids = Vec::new();
        for v in 0..n {
            let max_comp = max_child[v].max(n - size[v]);
            match max_comp.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = max_comp;
                    centroids.clear();
                    centroids.push(v);
                }
                std::cmp::Ordering::Equal => centroids.push(v),
                std::cmp::Ordering::Greater => {}
            }
        }
        centroids
    }

    /// AHU encoding of the tree rooted at `root`: children codes sorted.
    fn rooted_code(&self, root: usize) -> String {
        fn go(g: &SimpleGraph, v: usize, parent: usize) -> String {
            let mut parts: Vec<String> = g.adj[v]
                .iter()
                .filter(|&&w| w != parent)
                .map(|&w| go(g, w, v))
                .collect();
            parts.sort();
            let mut s = String::with_capacity(2 + parts.iter().map(String::len).sum::<usize>());
            s.push('(');
            for p in &parts {
                s.push_str(p);
            }
            s.push(')');
            s
        }
        go(self, root, usize::MAX)
    }
}

/// Counts `n_t` of vertices by degree `t >= 1` (isolated vertices are not
/// counted, so the single-vertex graph has an empty vector).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeVector {
    counts: BTreeMap<usize, usize>,
}

impl DegreeVector {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    /// The degree set: distinct degrees occurring in the graph, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&t, &n)| (t, n))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of all counts (vertices of positive degree).
    pub fn total_vertices(&self) -> usize {
        self.counts.values().sum()
    }

    /// `Σ t·n_t`, which always equals twice the edge count.
    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(&t, &n)| t * n).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }
}

/// Counts `m_{s,t}` of edges by the unordered degree pair of their
/// endpoints, keyed as `(min, max)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgePartition {
    counts: BTreeMap<(usize, usize), usize>,
}

impl EdgePartition {
    pub fn count(&self, s: usize, t: usize) -> usize {
        let key = (s.min(t), s.max(t));
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.counts.iter().map(|(&k, &m)| (k, m))
    }

    /// Total edge count `Σ m_{s,t}`.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Totally ordered key with `code(T1) = code(T2)` iff `T1 ≅ T2`, for trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses the line-oriented edge-list format: one `u v` pair per line,
/// whitespace-separated; `#` starts a comment line; blank lines are
/// skipped. Vertex ids must form `0..n-1`.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph, GraphError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut parts = content.split_whitespace();
        let (a, b, rest) = (parts.next(), parts.next(), parts.next());
        let (a, b) = match (a, b, rest) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(GraphError::MalformedLine {
                    line,
                    found: content.to_string(),
                })
            }
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::MalformedLine {
                line,
                found: content.to_string(),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(GraphError::Empty);
    }
    let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1;
    let mut present = vec![false; n];
    for &(u, v) in &edges {
        present[u] = true;
        present[v] = true;
    }
    if let Some(missing) = present.iter().position(|&p| !p) {
        return Err(GraphError::NonContiguous {
            missing,
            max: n - 1,
        });
    }
    SimpleGraph::from_edges(n, &edges)
}
