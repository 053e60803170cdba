//! Chordal-graph machinery: recognition by maximum cardinality search,
//! perfect elimination orderings, optimal coloring, Frank's maximum-weight
//! independent set, and (for interval graphs) maximum-weight k-colorable
//! induced subgraphs.
//!
//! Orderings follow the "earlier neighbors form a clique" convention: in a
//! [`Peo`] `v_1, ..., v_n`, the neighbors of `v_i` among `v_1..v_{i-1}` are
//! pairwise adjacent. Reversing it gives the classical elimination order.

mod interval;

pub use interval::{max_weight_k_colorable_interval, ColoredSubset};

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordalError {
    #[error("graph is not chordal: chordless cycle {cycle:?} through vertex {vertex}")]
    NotChordal { vertex: usize, cycle: Vec<usize> },
    #[error("ordering is not a perfect elimination ordering of this graph")]
    InvalidPeo,
    #[error("graph carries no interval representation")]
    NoIntervals,
    #[error("k must be at least 1")]
    InvalidK,
}

/// Perfect elimination ordering, validated against the graph it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peo {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Peo {
    /// Wraps `order` after checking it is a permutation and a PEO of `g`.
    pub fn new(g: &Graph, order: Vec<usize>) -> Result<Self, ChordalError> {
        let peo = Peo::from_order(g.n(), order).ok_or(ChordalError::InvalidPeo)?;
        match peo.first_violation(g) {
            None => Ok(peo),
            Some(_) => Err(ChordalError::InvalidPeo),
        }
    }

    fn from_order(n: usize, order: Vec<usize>) -> Option<Self> {
        if order.len() != n {
            return None;
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return None;
            }
            position[v] = i;
        }
        Some(Peo { order, position })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Simplicial-first order (the reverse of [`Peo::order`]).
    pub fn elimination_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().rev().copied()
    }

    /// Neighbors of `v` that precede it in the ordering.
    pub fn earlier_neighbors<'a>(&'a self, g: &'a Graph, v: usize) -> impl Iterator<Item = usize> + 'a {
        let p = self.position[v];
        g.neighbors(v).iter().copied().filter(move |&u| self.position[u] < p)
    }

    /// The ordering restricted to `set`, relabeled to match
    /// `g.induced_subgraph(set)`. Restrictions of a PEO remain PEOs.
    pub fn restrict(&self, set: &VertexSet) -> Peo {
        let mut new_id = vec![usize::MAX; self.order.len()];
        for (i, v) in set.iter().enumerate() {
            new_id[v] = i;
        }
        let order: Vec<usize> = self
            .order
            .iter()
            .filter_map(|&v| (new_id[v] != usize::MAX).then_some(new_id[v]))
            .collect();
        Peo::from_order(set.len(), order).expect("restriction of a permutation is a permutation")
    }

    /// First vertex whose earlier neighbors are not a clique, together with a
    /// nonadjacent pair of those neighbors.
    fn first_violation(&self, g: &Graph) -> Option<(usize, usize, usize)> {
        for &v in &self.order {
            // Latest earlier neighbor must be adjacent to every other one.
            let latest = self.earlier_neighbors(g, v).max_by_key(|&u| self.position[u]);
            if let Some(p) = latest {
                if let Some(u) = self.earlier_neighbors(g, v).find(|&u| u != p && !g.has_edge(u, p)) {
                    return Some((v, u, p));
                }
            }
        }
        None
    }

    fn check(&self, g: &Graph) -> Result<(), ChordalError> {
        if self.order.len() != g.n() || self.first_violation(g).is_some() {
            return Err(ChordalError::InvalidPeo);
        }
        Ok(())
    }
}

/// Proper coloring with contiguous class indices `0..num_classes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    class_of: Vec<usize>,
    num_classes: usize,
}

impl Coloring {
    /// Accepts any class assignment; indices are compacted to `0..c` in order
    /// of first appearance.
    pub fn from_classes(class_of: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let class_of: Vec<usize> = class_of
            .iter()
            .map(|c| {
                let next = remap.len();
                *remap.entry(*c).or_insert(next)
            })
            .collect();
        Coloring {
            num_classes: remap.len(),
            class_of,
        }
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn num_vertices(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        let mut classes = vec![Vec::new(); self.num_classes];
        for (v, &c) in self.class_of.iter().enumerate() {
            classes[c].push(v);
        }
        classes.into_iter().map(VertexSet::from).collect()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.class_of.len() == g.n() && g.edges().iter().all(|&(u, v)| self.class_of[u] != self.class_of[v])
    }
}

/// Maximum cardinality search. Returns a verified PEO, or a chordless cycle
/// when the graph is not chordal. Ties go to the lowest vertex id.
pub fn maximum_cardinality_search(g: &Graph) -> Result<Peo, ChordalError> {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = None;
        for v in 0..n {
            if !visited[v] && best.is_none_or(|b: usize| label[v] > label[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                label[u] += 1;
            }
        }
    }
    let peo = Peo::from_order(n, order).expect("MCS visits every vertex once");
    match peo.first_violation(g) {
        None => Ok(peo),
        Some((vertex, a, b)) => {
            let cycle = chordless_cycle_through(g, vertex, a, b)
                .or_else(|| find_chordless_cycle(g))
                .expect("a graph without a PEO has a chordless cycle");
            Err(ChordalError::NotChordal {
                vertex: cycle[0],
                cycle,
            })
        }
    }
}

pub fn is_chordal(g: &Graph) -> bool {
    maximum_cardinality_search(g).is_ok()
}

/// Shortest `a`-`b` path avoiding `v` and the rest of its closed
/// neighborhood, closed into a cycle through `v`. Such a cycle is chordless.
fn chordless_cycle_through(g: &Graph, v: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &u in g.neighbors(v) {
        if u != a && u != b {
            blocked[u] = true;
        }
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([a]);
    prev[a] = a;
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.push(v);
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if !blocked[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

fn find_chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.has_edge(a, b) {
                    if let Some(c) = chordless_cycle_through(g, v, a, b) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// Chromatic number of a chordal graph: one plus the largest number of
/// earlier neighbors along the PEO (the maximum clique size).
pub fn chromatic_number_chordal(g: &Graph, peo: &Peo) -> Result<usize, ChordalError> {
    peo.check(g)?;
    Ok(chromatic_number_unchecked(g, peo))
}

pub(crate) fn chromatic_number_unchecked(g: &Graph, peo: &Peo) -> usize {
    peo.order()
        .iter()
        .map(|&v| peo.earlier_neighbors(g, v).count() + 1)
        .max()
        .unwrap_or(0)
}

/// Greedy first-fit coloring along the PEO. Uses exactly χ colors.
pub fn greedy_color_chordal(g: &Graph, peo: &Peo) -> Result<Coloring, ChordalError> {
    peo.check(g)?;
    Ok(greedy_color_unchecked(g, peo))
}

pub(crate) fn greedy_color_unchecked(g: &Graph, peo: &Peo) -> Coloring {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut taken = Vec::new();
    let mut num_classes = 0;
    for &v in peo.order() {
        taken.clear();
        taken.resize(num_classes + 1, false);
        for u in peo.earlier_neighbors(g, v) {
            taken[color[u]] = true;
        }
        let c = taken.iter().position(|t| !t).expect("a free color exists");
        color[v] = c;
        num_classes = num_classes.max(c + 1);
    }
    Coloring {
        class_of: color,
        num_classes,
    }
}

/// Frank's maximum-weight independent set for chordal graphs.
///
/// First pass walks the elimination order: a vertex with positive residual
/// weight turns red and its residual is subtracted from its not-yet-processed
/// neighbors. Second pass walks the red vertices in reverse (PEO order) and
/// keeps each one that has no kept neighbor.
pub fn max_weight_independent_set_frank(g: &Graph, peo: &Peo) -> Result<VertexSet, ChordalError> {
    peo.check(g)?;
    Ok(frank_unchecked(g, peo))
}

pub(crate) fn frank_unchecked(g: &Graph, peo: &Peo) -> VertexSet {
    let n = g.n();
    let mut residual = g.weights().to_vec();
    let mut red = vec![false; n];
    for v in peo.elimination_order() {
        let w = residual[v];
        if w <= 0.0 {
            continue;
        }
        red[v] = true;
        residual[v] = 0.0;
        for u in peo.earlier_neighbors(g, v) {
            residual[u] -= w;
        }
    }
    let mut blue = vec![false; n];
    let mut chosen = Vec::new();
    for &v in peo.order() {
        if red[v] && !g.neighbors(v).iter().any(|&u| blue[u]) {
            blue[v] = true;
            chosen.push(v);
        }
    }
    chosen.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted(g: Graph, w: &[f64]) -> Graph {
        g.with_weights(w.to_vec()).unwrap()
    }

    fn best_independent_weight(g: &Graph) -> f64 {
        let n = g.n();
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<VertexSet>())
            .filter(|s| g.is_independent(s))
            .map(|s| g.weight_of(&s))
            .fold(0.0, f64::max)
    }

    #[test]
    fn complete_graph_any_order_is_peo() {
        let g = Graph::complete(3);
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert!(Peo::new(&g, order.to_vec()).is_ok());
        }
        assert!(maximum_cardinality_search(&g).is_ok());
    }

    #[test]
    fn four_cycle_is_rejected_with_witness() {
        let g = Graph::cycle(4);
        match maximum_cardinality_search(&g) {
            Err(ChordalError::NotChordal { cycle, .. }) => {
                assert_eq!(cycle.len(), 4);
                for i in 0..4 {
                    assert!(g.has_edge(cycle[i], cycle[(i + 1) % 4]));
                }
                assert!(!g.has_edge(cycle[0], cycle[2]));
                assert!(!g.has_edge(cycle[1], cycle[3]));
            }
            other => panic!("expected NotChordal, got {other:?}"),
        }
    }

    #[test]
    fn path_ordering() {
        let g = Graph::path(3);
        let peo = maximum_cardinality_search(&g).unwrap();
        assert_eq!(peo.order(), &[0, 1, 2]);
        // Middle vertex last would give it two nonadjacent earlier neighbors.
        assert_eq!(Peo::new(&g, vec![0, 2, 1]), Err(ChordalError::InvalidPeo));
        assert!(Peo::new(&g, vec![1, 2, 0]).is_ok());
    }

    #[test]
    fn peo_rejects_non_permutations() {
        let g = Graph::path(3);
        assert!(Peo::new(&g, vec![0, 1]).is_err());
        assert!(Peo::new(&g, vec![0, 1, 1]).is_err());
        let peo = maximum_cardinality_search(&Graph::path(4)).unwrap();
        assert_eq!(chromatic_number_chordal(&g, &peo), Err(ChordalError::InvalidPeo));
    }

    #[test]
    fn chromatic_numbers() {
        let k3 = Graph::complete(3);
        let p3 = Graph::path(3);
        let e4 = Graph::edgeless(4);
        for (g, chi) in [(&k3, 3), (&p3, 2), (&e4, 1)] {
            let peo = maximum_cardinality_search(g).unwrap();
            assert_eq!(chromatic_number_chordal(g, &peo).unwrap(), chi);
        }
        let empty = Graph::edgeless(0);
        let peo = maximum_cardinality_search(&empty).unwrap();
        assert_eq!(chromatic_number_chordal(&empty, &peo).unwrap(), 0);
    }

    #[test]
    fn greedy_coloring_examples() {
        let k3 = Graph::complete(3);
        let c = greedy_color_chordal(&k3, &maximum_cardinality_search(&k3).unwrap()).unwrap();
        assert_eq!(c.num_classes(), 3);

        let p3 = Graph::path(3);
        let peo = Peo::new(&p3, vec![1, 2, 0]).unwrap();
        let c = greedy_color_chordal(&p3, &peo).unwrap();
        let mut classes = c.classes();
        classes.sort();
        assert_eq!(classes, vec![VertexSet::from([0, 2]), VertexSet::from([1])]);

        let e4 = Graph::edgeless(4);
        let c = greedy_color_chordal(&e4, &maximum_cardinality_search(&e4).unwrap()).unwrap();
        assert_eq!(c.num_classes(), 1);
        assert!(c.is_proper(&e4));
    }

    #[test]
    fn frank_examples() {
        let g = weighted(Graph::path(3), &[1.0, 3.0, 1.0]);
        let s = max_weight_independent_set_frank(&g, &maximum_cardinality_search(&g).unwrap()).unwrap();
        assert_eq!(s, VertexSet::from([1]));
        assert_eq!(best_independent_weight(&g), 3.0);

        let g = weighted(Graph::complete(3), &[3.0, 2.0, 1.0]);
        let s = max_weight_independent_set_frank(&g, &maximum_cardinality_search(&g).unwrap()).unwrap();
        assert_eq!(s, VertexSet::from([0]));

        let g = Graph::star(4);
        let s = max_weight_independent_set_frank(&g, &maximum_cardinality_search(&g).unwrap()).unwrap();
        assert_eq!(s, VertexSet::from([1, 2, 3]));
        assert_eq!(best_independent_weight(&g), 3.0);
    }

    #[test]
    fn frank_ignores_zero_weights() {
        let g = weighted(Graph::path(3), &[0.0, 0.0, 0.0]);
        let s = max_weight_independent_set_frank(&g, &maximum_cardinality_search(&g).unwrap()).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn restricted_peo_matches_induced_subgraph() {
        // Two triangles sharing an edge plus a pendant vertex.
        let g = Graph::unweighted(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let peo = maximum_cardinality_search(&g).unwrap();
        let set = VertexSet::from([0, 2, 3, 4]);
        let (sub, _) = g.induced_subgraph(&set).unwrap();
        assert!(Peo::new(&sub, peo.restrict(&set).order().to_vec()).is_ok());
    }
}
