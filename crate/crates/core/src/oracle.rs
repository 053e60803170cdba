//! Ground-truth learning simulation for small skeletons.
//!
//! A true causal graph is a moral orientation of the skeleton (acyclic, no
//! immorality). An intervention on `I` reveals the direction of every edge
//! with exactly one endpoint in `I`; the pooled evidence is then closed under
//! Meek's orientation rules. A design learns the graph when every edge ends
//! up oriented.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chordal::{self, ChordalError};
use crate::graph::{Graph, VertexSet};
use crate::sepsys::Design;

/// Largest skeleton the exhaustive routines accept.
pub const MAX_ORACLE_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the exhaustive oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("evidence orients edge ({0}, {1}) both ways")]
    InconsistentEvidence(usize, usize),
    #[error("evidence mentions ({0}, {1}), which is not a skeleton edge")]
    NotAnEdge(usize, usize),
    #[error(transparent)]
    Chordal(#[from] ChordalError),
    #[error("design has {rows} rows but the graph has {n} vertices")]
    SizeMismatch { rows: usize, n: usize },
}

/// `from → to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedEdge {
    pub from: usize,
    pub to: usize,
}

impl DirectedEdge {
    pub fn new(from: usize, to: usize) -> Self {
        DirectedEdge { from, to }
    }
}

/// Full orientation of a skeleton. `forward[e]` means edge `e = (u, v)`,
/// `u < v`, points `u → v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dag<'g> {
    skeleton: &'g Graph,
    forward: Vec<bool>,
}

impl<'g> Dag<'g> {
    /// Orients every edge from the endpoint that comes first in `order`.
    pub fn from_order(skeleton: &'g Graph, order: &[usize]) -> Self {
        let mut pos = vec![0; skeleton.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let forward = skeleton.edges().iter().map(|&(u, v)| pos[u] < pos[v]).collect();
        Dag { skeleton, forward }
    }

    pub fn skeleton(&self) -> &'g Graph {
        self.skeleton
    }

    /// Direction flags aligned with [`Graph::edges`]; `true` is `u → v`.
    pub fn orientation(&self) -> &[bool] {
        &self.forward
    }

    pub fn edges(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        self.skeleton.edges().iter().zip(&self.forward).map(|(&(u, v), &f)| {
            if f {
                DirectedEdge::new(u, v)
            } else {
                DirectedEdge::new(v, u)
            }
        })
    }

    pub fn points(&self, from: usize, to: usize) -> bool {
        match self.skeleton.edge_index(from, to) {
            Some(e) => self.forward[e] == (from < to),
            None => false,
        }
    }

    pub fn parents(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.skeleton
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| self.points(u, v))
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.skeleton.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.parents(v).count()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &w in self.skeleton.neighbors(u) {
                if self.points(u, w) {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        stack.push(w);
                    }
                }
            }
        }
        seen == n
    }

    /// True when no vertex has two nonadjacent parents.
    pub fn is_moral(&self) -> bool {
        (0..self.skeleton.n()).all(|v| {
            let parents: Vec<usize> = self.parents(v).collect();
            parents
                .iter()
                .enumerate()
                .all(|(i, &a)| parents[i + 1..].iter().all(|&b| self.skeleton.has_edge(a, b)))
        })
    }
}

/// Every acyclic, immorality-free orientation of `g`, each exactly once.
pub fn enumerate_moral_orientations(g: &Graph) -> Result<Vec<Dag<'_>>, OracleError> {
    let n = g.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            limit: MAX_ORACLE_VERTICES,
        });
    }
    // Every acyclic orientation comes from some permutation.
    let mut seen = BTreeSet::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let dag = Dag::from_order(g, &perm);
        if dag.is_moral() && seen.insert(dag.forward.clone()) {
            out.push(dag);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.sort_by(|a, b| a.forward.cmp(&b.forward));
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// A moral orientation drawn deterministically from `seed`: uniform over all
/// of them for small graphs, otherwise oriented along a maximum cardinality
/// search with random start and random tie-breaking.
pub fn random_moral_orientation(g: &Graph, seed: u64) -> Result<Dag<'_>, OracleError> {
    chordal::maximum_cardinality_search(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if g.n() <= MAX_ORACLE_VERTICES {
        let all = enumerate_moral_orientations(g)?;
        return Ok(all
            .choose(&mut rng)
            .cloned()
            .expect("a chordal graph has a moral orientation"));
    }
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n).filter(|&v| !visited[v]).map(|v| label[v]).max().unwrap_or(0);
        let ties: Vec<usize> = (0..n).filter(|&v| !visited[v] && label[v] == best).collect();
        let v = *ties.choose(&mut rng).expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            label[u] += 1;
        }
    }
    // Parents are earlier MCS neighbors, which form a clique.
    Ok(Dag::from_order(g, &order))
}

/// Edges revealed by intervening on `set`: those crossing the cut.
pub fn simulate_intervention(dag: &Dag<'_>, set: &VertexSet) -> Vec<DirectedEdge> {
    dag.edges()
        .filter(|e| set.contains(e.from) != set.contains(e.to))
        .collect()
}

/// Partially oriented skeleton. `orient[e]` is `Some(true)` for `u → v`,
/// `Some(false)` for `v → u` (with `e = (u, v)`, `u < v`), `None` if
/// undirected.
#[derive(Debug, Clone, PartialEq)]
pub struct Pdag<'g> {
    skeleton: &'g Graph,
    orient: Vec<Option<bool>>,
}

impl<'g> Pdag<'g> {
    pub fn new(skeleton: &'g Graph, evidence: &[DirectedEdge]) -> Result<Self, OracleError> {
        let mut orient = vec![None; skeleton.num_edges()];
        for e in evidence {
            let idx = skeleton
                .edge_index(e.from, e.to)
                .ok_or(OracleError::NotAnEdge(e.from, e.to))?;
            let dir = e.from < e.to;
            match orient[idx] {
                Some(d) if d != dir => {
                    return Err(OracleError::InconsistentEvidence(e.from.min(e.to), e.from.max(e.to)))
                }
                _ => orient[idx] = Some(dir),
            }
        }
        Ok(Pdag { skeleton, orient })
    }

    pub fn directed(&self, a: usize, b: usize) -> bool {
        self.skeleton
            .edge_index(a, b)
            .is_some_and(|e| self.orient[e] == Some(a < b))
    }

    pub fn undirected(&self, a: usize, b: usize) -> bool {
        self.skeleton.edge_index(a, b).is_some_and(|e| self.orient[e].is_none())
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.skeleton.has_edge(a, b)
    }

    fn set(&mut self, a: usize, b: usize) {
        let e = self.skeleton.edge_index(a, b).expect("skeleton edge");
        self.orient[e] = Some(a < b);
    }

    pub fn directed_edges(&self) -> Vec<DirectedEdge> {
        self.skeleton
            .edges()
            .iter()
            .zip(&self.orient)
            .filter_map(|(&(u, v), o)| {
                o.map(|f| {
                    if f {
                        DirectedEdge::new(u, v)
                    } else {
                        DirectedEdge::new(v, u)
                    }
                })
            })
            .collect()
    }

    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        self.skeleton
            .edges()
            .iter()
            .zip(&self.orient)
            .filter(|(_, o)| o.is_none())
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn is_fully_oriented(&self) -> bool {
        self.orient.iter().all(Option::is_some)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeekRule {
    R1,
    R2,
    R3,
    R4,
}

impl MeekRule {
    pub const ALL: [MeekRule; 4] = [MeekRule::R1, MeekRule::R2, MeekRule::R3, MeekRule::R4];
}

/// Closes `evidence` under Meek's rules R1–R4.
pub fn meek_closure<'g>(g: &'g Graph, evidence: &[DirectedEdge]) -> Result<Pdag<'g>, OracleError> {
    meek_closure_ordered(g, evidence, &MeekRule::ALL)
}

/// [`meek_closure`] trying the rules in the given order on each sweep.
pub fn meek_closure_ordered<'g>(
    g: &'g Graph,
    evidence: &[DirectedEdge],
    rules: &[MeekRule],
) -> Result<Pdag<'g>, OracleError> {
    let mut p = Pdag::new(g, evidence)?;
    loop {
        let mut changed = false;
        for &rule in rules {
            for &(u, v) in g.edges() {
                for (a, b) in [(u, v), (v, u)] {
                    if p.undirected(a, b) && rule_applies(&p, rule, a, b) {
                        p.set(a, b);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(p);
        }
    }
}

/// Whether `rule` forces the undirected edge `a − b` to become `a → b`.
fn rule_applies(p: &Pdag<'_>, rule: MeekRule, a: usize, b: usize) -> bool {
    let g = p.skeleton;
    match rule {
        // c → a − b, c and b nonadjacent.
        MeekRule::R1 => g
            .neighbors(a)
            .iter()
            .any(|&c| c != b && p.directed(c, a) && !p.adjacent(c, b)),
        // a → c → b.
        MeekRule::R2 => g.neighbors(a).iter().any(|&c| p.directed(a, c) && p.directed(c, b)),
        // a − c → b, a − d → b, c and d nonadjacent.
        MeekRule::R3 => {
            let mids: Vec<usize> = g
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&c| c != b && p.undirected(a, c) && p.directed(c, b))
                .collect();
            mids.iter()
                .enumerate()
                .any(|(i, &c)| mids[i + 1..].iter().any(|&d| !p.adjacent(c, d)))
        }
        // a − d → c → b, a and c adjacent, b and d nonadjacent.
        MeekRule::R4 => g.neighbors(a).iter().any(|&d| {
            d != b
                && p.undirected(a, d)
                && !p.adjacent(b, d)
                && g.neighbors(d)
                    .iter()
                    .any(|&c| c != a && p.directed(d, c) && p.directed(c, b) && p.adjacent(a, c))
        }),
    }
}

/// Evidence pooled from every intervention in the design.
pub fn design_evidence(dag: &Dag<'_>, design: &Design) -> Vec<DirectedEdge> {
    let mut all = BTreeSet::new();
    for set in design.interventions() {
        all.extend(simulate_intervention(dag, set));
    }
    all.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnFailure {
    /// Ground-truth orientation that is not fully learned.
    pub truth: Vec<DirectedEdge>,
    pub unlearned: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnabilityReport {
    pub orientations_checked: usize,
    pub failure: Option<LearnFailure>,
}

impl LearnabilityReport {
    pub fn learns_all(&self) -> bool {
        self.failure.is_none()
    }
}

/// Whether the design fully orients every moral orientation of `g`.
pub fn design_learns_all(g: &Graph, design: &Design) -> Result<LearnabilityReport, OracleError> {
    if design.num_vertices() != g.n() {
        return Err(OracleError::SizeMismatch {
            rows: design.num_vertices(),
            n: g.n(),
        });
    }
    let dags = enumerate_moral_orientations(g)?;
    learns_all_of(g, design, &dags)
}

/// Same as [`design_learns_all`] against a precomputed orientation list.
pub fn learns_all_of(g: &Graph, design: &Design, dags: &[Dag<'_>]) -> Result<LearnabilityReport, OracleError> {
    for (i, dag) in dags.iter().enumerate() {
        let closed = meek_closure(g, &design_evidence(dag, design))?;
        if let Some(&edge) = closed.undirected_edges().first() {
            return Ok(LearnabilityReport {
                orientations_checked: i + 1,
                failure: Some(LearnFailure {
                    truth: dag.edges().collect(),
                    unlearned: edge,
                }),
            });
        }
    }
    Ok(LearnabilityReport {
        orientations_checked: dags.len(),
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> DirectedEdge {
        DirectedEdge::new(a, b)
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(enumerate_moral_orientations(&Graph::complete(2)).unwrap().len(), 2);
        assert_eq!(enumerate_moral_orientations(&Graph::path(3)).unwrap().len(), 3);
        assert_eq!(enumerate_moral_orientations(&Graph::complete(3)).unwrap().len(), 6);
        let path = Graph::path(3);
        let all = enumerate_moral_orientations(&path).unwrap();
        assert!(!all.iter().any(|d| d.points(0, 1) && d.points(2, 1)));
        assert!(matches!(
            enumerate_moral_orientations(&Graph::path(9)),
            Err(OracleError::TooLarge { n: 9, limit: 8 })
        ));
    }

    #[test]
    fn random_orientation_is_deterministic_and_covers() {
        let path = Graph::path(3);
        assert_eq!(
            random_moral_orientation(&path, 5).unwrap(),
            random_moral_orientation(&path, 5).unwrap()
        );
        let mut seen = BTreeSet::new();
        for seed in 0..10_000 {
            let d = random_moral_orientation(&path, seed).unwrap();
            assert!(d.is_moral() && d.is_acyclic());
            seen.insert(d.forward.clone());
        }
        assert_eq!(seen.len(), 3);
        assert!(random_moral_orientation(&Graph::cycle(4), 0).is_err());
    }

    #[test]
    fn large_random_orientation_is_moral() {
        let g = Graph::path(12);
        for seed in 0..20 {
            let d = random_moral_orientation(&g, seed).unwrap();
            assert!(d.is_moral() && d.is_acyclic());
        }
    }

    #[test]
    fn intervention_reveals_the_cut() {
        let path = Graph::path(3);
        let dag = Dag::from_order(&path, &[0, 1, 2]);
        assert_eq!(
            simulate_intervention(&dag, &VertexSet::from([1])),
            vec![e(0, 1), e(1, 2)]
        );
        assert_eq!(simulate_intervention(&dag, &VertexSet::from([0, 1])), vec![e(1, 2)]);
        assert!(simulate_intervention(&dag, &VertexSet::new()).is_empty());
    }

    #[test]
    fn meek_examples() {
        let path = Graph::path(3);
        let p = meek_closure(&path, &[e(0, 1)]).unwrap();
        assert!(p.directed(1, 2));

        let p = meek_closure(&path, &[e(1, 2)]).unwrap();
        assert!(p.undirected(0, 1));

        let k3 = Graph::complete(3);
        let p = meek_closure(&k3, &[e(0, 1)]).unwrap();
        assert_eq!(p.directed_edges(), vec![e(0, 1)]);

        assert_eq!(
            meek_closure(&path, &[e(0, 1), e(1, 0)]).unwrap_err(),
            OracleError::InconsistentEvidence(0, 1)
        );
        assert_eq!(
            meek_closure(&path, &[e(0, 2)]).unwrap_err(),
            OracleError::NotAnEdge(0, 2)
        );
    }

    #[test]
    fn meek_rule_two_and_three() {
        let k3 = Graph::complete(3);
        let p = meek_closure(&k3, &[e(0, 1), e(1, 2)]).unwrap();
        assert!(p.directed(0, 2));

        // Kite: a adjacent to b, c, d; c and d nonadjacent; c → b ← d.
        let kite = Graph::unweighted(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let p = meek_closure(&kite, &[e(2, 1), e(3, 1)]).unwrap();
        assert!(p.directed(0, 1));
    }

    #[test]
    fn learnability_examples() {
        let path = Graph::path(3);
        let center = Design::from_interventions(3, vec![VertexSet::from([1])]).unwrap();
        assert!(design_learns_all(&path, &center).unwrap().learns_all());

        let end = Design::from_interventions(3, vec![VertexSet::from([0])]).unwrap();
        let report = design_learns_all(&path, &end).unwrap();
        let failure = report.failure.unwrap();
        assert_eq!(failure.unlearned, (1, 2));
        assert!(failure.truth.contains(&e(1, 0)));

        let k2 = Graph::complete(2);
        let none = Design::from_interventions(2, vec![]).unwrap();
        assert!(!design_learns_all(&k2, &none).unwrap().learns_all());
    }

    #[test]
    fn clique_first_order_hides_clique_edges() {
        // Triangle 0-1-2 with pendant 3 on vertex 2; the triangle precedes 3.
        let g = Graph::unweighted(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let dag = Dag::from_order(&g, &[0, 1, 2, 3]);
        let evidence: Vec<_> = dag.edges().filter(|d| d.from != 0 || d.to != 1).collect();
        let closed = meek_closure(&g, &evidence).unwrap();
        // Every other edge known, yet 0 − 1 stays open.
        assert_eq!(closed.undirected_edges(), vec![(0, 1)]);
    }
}
