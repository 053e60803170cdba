//! Undirected skeleton graphs with per-vertex intervention costs.
//!
//! Vertices are dense `0..n` ids. A [`Graph`] is immutable once built: edges
//! are canonicalized to `(u, v)` with `u < v` and sorted, and adjacency lists
//! are kept sorted so membership queries are a binary search.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightLengthMismatch { expected: usize, got: usize },
    #[error("weight of vertex {vertex} is {weight}; costs must be finite and nonnegative")]
    NegativeWeight { vertex: usize, weight: f64 },
    #[error("expected {expected} intervals, got {got}")]
    IntervalLengthMismatch { expected: usize, got: usize },
    #[error("interval of vertex {vertex} is malformed: [{lo}, {hi}]")]
    MalformedInterval { vertex: usize, lo: f64, hi: f64 },
    #[error("interval representation disagrees with the edge list on pair ({0}, {1})")]
    IntervalMismatch(usize, usize),
}

/// Closed interval `[lo, hi]`. Touching endpoints count as overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Sorted list of distinct vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Largest id in the set.
    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    weights: Vec<f64>,
    intervals: Option<Vec<Interval>>,
}

impl Graph {
    /// Builds a graph, canonicalizing edges and validating weights and the
    /// optional interval representation. Missing weights default to all ones.
    pub fn build(
        n: usize,
        edges: &[(usize, usize)],
        weights: Option<Vec<f64>>,
        intervals: Option<Vec<Interval>>,
    ) -> Result<Self, GraphError> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let weights = match weights {
            Some(w) => {
                if w.len() != n {
                    return Err(GraphError::WeightLengthMismatch {
                        expected: n,
                        got: w.len(),
                    });
                }
                if let Some((vertex, &weight)) = w.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
                    return Err(GraphError::NegativeWeight { vertex, weight });
                }
                w
            }
            None => vec![1.0; n],
        };

        if let Some(iv) = &intervals {
            check_intervals(n, iv)?;
            let derived = intersection_edges(iv);
            if let Some((u, v)) = first_difference(&derived, &canon) {
                return Err(GraphError::IntervalMismatch(u, v));
            }
        }

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        Ok(Graph {
            n,
            edges: canon,
            adj,
            weights,
            intervals,
        })
    }

    /// Interval graph whose edges are derived from pairwise overlap.
    pub fn from_intervals(intervals: Vec<Interval>, weights: Option<Vec<f64>>) -> Result<Self, GraphError> {
        let n = intervals.len();
        check_intervals(n, &intervals)?;
        let edges = intersection_edges(&intervals);
        Graph::build(n, &edges, weights, Some(intervals))
    }

    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Graph::build(n, edges, None, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn weight_of(&self, set: &VertexSet) -> f64 {
        set.iter().map(|v| self.weights[v]).sum()
    }

    pub fn intervals(&self) -> Option<&[Interval]> {
        self.intervals.as_deref()
    }

    /// Same structure with a new cost vector.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self, GraphError> {
        Graph::build(self.n, &self.edges, Some(weights), self.intervals.clone())
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        let s = set.as_slice();
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Induced subgraph on `set`, relabeled `0..|set|` in increasing id order.
    /// The second component maps new ids back to ids of `self`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(vertex) = set.max().filter(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
        }
        let map: Vec<usize> = set.iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); map.len()];
        for (i, &v) in map.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = new_id[u];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        let weights = map.iter().map(|&v| self.weights[v]).collect();
        let intervals = self.intervals.as_ref().map(|iv| map.iter().map(|&v| iv[v]).collect());
        Ok((
            Graph {
                n: map.len(),
                edges,
                adj,
                weights,
                intervals,
            },
            map,
        ))
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::unweighted(n, &edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::unweighted(n, &edges).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n > 2 {
            edges.push((0, n - 1));
        }
        Graph::unweighted(n, &edges).expect("cycle is valid")
    }

    /// Star with center 0 and leaves `1..n`.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::unweighted(n, &edges).expect("star is valid")
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::unweighted(n, &[]).expect("edgeless graph is valid")
    }
}

fn check_intervals(n: usize, iv: &[Interval]) -> Result<(), GraphError> {
    if iv.len() != n {
        return Err(GraphError::IntervalLengthMismatch {
            expected: n,
            got: iv.len(),
        });
    }
    for (vertex, i) in iv.iter().enumerate() {
        if !(i.lo.is_finite() && i.hi.is_finite() && i.lo <= i.hi) {
            return Err(GraphError::MalformedInterval {
                vertex,
                lo: i.lo,
                hi: i.hi,
            });
        }
    }
    Ok(())
}

fn intersection_edges(iv: &[Interval]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..iv.len() {
        for v in u + 1..iv.len() {
            if iv[u].overlaps(&iv[v]) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn first_difference(a: &[(usize, usize)], b: &[(usize, usize)]) -> Option<(usize, usize)> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) => return Some(*x.min(y)),
            (Some(x), None) => return Some(*x),
            (None, Some(y)) => return Some(*y),
            (None, None) => unreachable!(),
        }
    }
    None
}
