//! Intervention-design constructions.
//!
//! All of them search over proper colorings of the skeleton and attach a
//! binary label to each color class; the cost of a class is its total weight
//! times the number of ones in its label.
//!
//! - [`design_unbounded_optimal`]: no limit on the number of interventions.
//! - [`design_greedy_chordal`]: repeated maximum-weight independent sets.
//! - [`design_greedy_interval`]: repeated maximum-weight k-colorable subgraphs.
//! - [`design_exact`]: branch-and-bound over labeled colorings.

mod exact;
mod ilp;

pub use exact::{design_exact, ExactLimits};
pub use ilp::{export_ilp, IlpModel};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chordal::{self, chromatic_number_unchecked, frank_unchecked, greedy_color_unchecked, ChordalError, Peo};
use crate::graph::{Graph, VertexSet};
use crate::sepsys::{assign_labels_min_cost, design_cost, label_pool, verify_graph_separating, Design, Label};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DesignError {
    #[error(transparent)]
    Chordal(#[from] ChordalError),
    #[error("{m} interventions cannot separate a graph that needs {required}")]
    InsufficientInterventions { m: usize, required: usize },
    #[error("node budget exhausted after {nodes} nodes; best design found costs {}", best.total_cost)]
    BudgetExceeded { nodes: u64, best: Box<DesignResult> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Unbounded,
    Greedy,
    GreedyInterval,
    Exact,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Unbounded => "unbounded",
            Algorithm::Greedy => "greedy",
            Algorithm::GreedyInterval => "greedy-interval",
            Algorithm::Exact => "exact",
        })
    }
}

/// One labeling step of a construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub chosen: VertexSet,
    pub label: Label,
    /// Uncolored vertices left after this step.
    pub residual: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult {
    pub design: Design,
    pub total_cost: f64,
    pub algorithm: Algorithm,
    pub steps: Vec<Step>,
    pub notes: Vec<String>,
}

impl DesignResult {
    fn finish(g: &Graph, design: Design, algorithm: Algorithm, steps: Vec<Step>, notes: Vec<String>) -> Self {
        let report = verify_graph_separating(g, &design);
        assert!(
            report.is_separating(),
            "{algorithm} produced a non-separating design; unseparated edges {:?}",
            report.unseparated
        );
        DesignResult {
            total_cost: design_cost(&design, g.weights()),
            design,
            algorithm,
            steps,
            notes,
        }
    }
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// `⌈log₂ χ⌉`: the fewest interventions any separating design can use.
pub fn min_separating_size(g: &Graph) -> Result<usize, DesignError> {
    let peo = chordal::maximum_cardinality_search(g)?;
    Ok(ceil_log2(chromatic_number_unchecked(g, &peo)))
}

struct Prepared {
    peo: Peo,
    chi: usize,
}

fn prepare(g: &Graph, m: Option<usize>) -> Result<Prepared, DesignError> {
    let peo = chordal::maximum_cardinality_search(g)?;
    let chi = chromatic_number_unchecked(g, &peo);
    if let Some(m) = m {
        let required = ceil_log2(chi);
        if m < required {
            return Err(DesignError::InsufficientInterventions { m, required });
        }
    }
    Ok(Prepared { peo, chi })
}

/// Coloring state shared by the greedy constructions.
struct Labeler {
    rows: Vec<Option<Label>>,
    uncolored: VertexSet,
    steps: Vec<Step>,
}

impl Labeler {
    fn new(n: usize) -> Self {
        Labeler {
            rows: vec![None; n],
            uncolored: (0..n).collect(),
            steps: Vec::new(),
        }
    }

    fn residual(&self, g: &Graph, peo: &Peo) -> (Graph, Peo, Vec<usize>) {
        let (sub, map) = g
            .induced_subgraph(&self.uncolored)
            .expect("uncolored vertices are in range");
        (sub, peo.restrict(&self.uncolored), map)
    }

    fn assign(&mut self, class: VertexSet, label: Label) {
        for v in class.iter() {
            debug_assert!(self.rows[v].is_none());
            self.rows[v] = Some(label.clone());
        }
        self.uncolored = self.uncolored.iter().filter(|&v| !class.contains(v)).collect();
        self.steps.push(Step {
            chosen: class,
            label,
            residual: self.uncolored.len(),
        });
    }

    /// Colors what is left with the minimum number of colors and matches the
    /// classes to `labels`, heaviest class to lightest label.
    fn finish_with(&mut self, g: &Graph, peo: &Peo, labels: &[Label]) {
        if self.uncolored.is_empty() {
            return;
        }
        let (sub, sub_peo, map) = self.residual(g, peo);
        let coloring = greedy_color_unchecked(&sub, &sub_peo);
        let classes: Vec<VertexSet> = coloring
            .classes()
            .into_iter()
            .map(|c| c.iter().map(|v| map[v]).collect())
            .collect();
        let costs: Vec<f64> = classes.iter().map(|c| g.weight_of(c)).collect();
        let chosen = assign_labels_min_cost(&costs, labels)
            .expect("the loop guard leaves at least χ labels for the final coloring");
        for (class, label) in classes.into_iter().zip(chosen) {
            self.assign(class, label);
        }
    }

    fn into_design(self, m: usize) -> (Design, Vec<Step>) {
        let rows = self
            .rows
            .into_iter()
            .map(|r| r.expect("every vertex is labeled"))
            .collect();
        let design = Design::from_rows(m, rows).expect("labels have length m");
        (design, self.steps)
    }
}

/// Extends an independent set with zero-weight vertices until maximal; the
/// weight is unchanged, so it is still a maximum-weight independent set.
fn make_maximal(g: &Graph, set: VertexSet) -> VertexSet {
    let mut set = set;
    for v in 0..g.n() {
        if !set.contains(v) && g.neighbors(v).iter().all(|&u| !set.contains(u)) {
            set.insert(v);
        }
    }
    set
}

/// Optimal design without a limit on the number of interventions: the
/// maximum-weight independent set is never intervened on, and the rest of
/// the graph is colored with at most χ classes, each intervened on once.
pub fn design_unbounded_optimal(g: &Graph) -> Result<DesignResult, DesignError> {
    let Prepared { peo, .. } = prepare(g, None)?;
    let mwis = frank_unchecked(g, &peo);
    let rest: VertexSet = (0..g.n()).filter(|&v| !mwis.contains(v)).collect();
    let (sub, map) = g.induced_subgraph(&rest).expect("subset of vertices");
    let coloring = greedy_color_unchecked(&sub, &peo.restrict(&rest));
    let m = coloring.num_classes();

    let mut labeler = Labeler::new(g.n());
    if !mwis.is_empty() {
        labeler.assign(mwis, Label::zeros(m));
    }
    for (j, class) in coloring.classes().into_iter().enumerate() {
        let class = class.iter().map(|v| map[v]).collect();
        labeler.assign(class, Label::with_ones(m, [j]));
    }
    let (design, steps) = labeler.into_design(m);
    Ok(DesignResult::finish(g, design, Algorithm::Unbounded, steps, Vec::new()))
}

/// Greedy design with at most `m` interventions for chordal skeletons.
///
/// While more than χ labels remain, the maximum-weight independent set of the
/// uncolored vertices takes the lightest unused label. The rest is then
/// colored with the minimum number of colors and matched to the unused labels
/// by decreasing class cost.
pub fn design_greedy_chordal(g: &Graph, m: usize) -> Result<DesignResult, DesignError> {
    let Prepared { peo, chi } = prepare(g, Some(m))?;
    let pool = label_pool(m, g.n());
    let labels = pool.labels();
    let mut remaining = labels.len();
    let mut next = 0;
    let mut labeler = Labeler::new(g.n());
    while remaining > chi && !labeler.uncolored.is_empty() {
        let (sub, sub_peo, map) = labeler.residual(g, &peo);
        let set = make_maximal(&sub, frank_unchecked(&sub, &sub_peo));
        labeler.assign(set.iter().map(|v| map[v]).collect(), labels[next].clone());
        next += 1;
        remaining -= 1;
    }
    let mut notes = Vec::new();
    if remaining > chi {
        notes.push(format!(
            "every vertex colored after {next} independent sets; {remaining} labels left (χ = {chi})"
        ));
    }
    labeler.finish_with(g, &peo, &labels[next..]);
    let (design, steps) = labeler.into_design(m);
    Ok(DesignResult::finish(g, design, Algorithm::Greedy, steps, notes))
}

/// Greedy design with at most `m` interventions for interval skeletons.
///
/// Round `t` colors a maximum-weight subgraph with as many classes as there
/// are weight-`t` labels, as long as at least χ labels would remain.
pub fn design_greedy_interval(g: &Graph, m: usize) -> Result<DesignResult, DesignError> {
    if g.intervals().is_none() {
        return Err(ChordalError::NoIntervals.into());
    }
    let Prepared { peo, chi } = prepare(g, Some(m))?;
    let pool = label_pool(m, g.n());
    let labels = pool.labels();
    let mut used = vec![false; labels.len()];
    let mut remaining = labels.len();
    let mut next = 0;
    let mut weight = 0;
    let mut labeler = Labeler::new(g.n());
    let mut notes = Vec::new();
    while !labeler.uncolored.is_empty() {
        let block = labels[next..].iter().take_while(|l| l.weight() == weight).count();
        if block == 0 || remaining < block + chi {
            break;
        }
        let (sub, _, map) = labeler.residual(g, &peo);
        let colored = chordal::max_weight_k_colorable_interval(&sub, block)?;
        for (i, class) in colored.classes.into_iter().enumerate() {
            used[next + i] = true;
            labeler.assign(class.iter().map(|v| map[v]).collect(), labels[next + i].clone());
        }
        next += block;
        remaining -= block;
        weight += 1;
    }
    if labeler.uncolored.is_empty() && remaining >= chi {
        notes.push(format!("every vertex colored after {weight} rounds"));
    }
    let unused: Vec<Label> = labels
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(l, _)| l.clone())
        .collect();
    labeler.finish_with(g, &peo, &unused);
    let (design, steps) = labeler.into_design(m);
    Ok(DesignResult::finish(g, design, Algorithm::GreedyInterval, steps, notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Interval;

    fn weighted(g: Graph, w: &[f64]) -> Graph {
        g.with_weights(w.to_vec()).unwrap()
    }

    fn intervals(iv: &[(f64, f64)], w: &[f64]) -> Graph {
        Graph::from_intervals(iv.iter().map(|&(a, b)| Interval::new(a, b)).collect(), Some(w.to_vec())).unwrap()
    }

    fn labels(r: &DesignResult) -> Vec<String> {
        r.design.rows().iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn minimum_size() {
        assert_eq!(min_separating_size(&Graph::complete(3)).unwrap(), 2);
        assert_eq!(min_separating_size(&Graph::complete(2)).unwrap(), 1);
        assert_eq!(min_separating_size(&Graph::path(3)).unwrap(), 1);
        assert_eq!(min_separating_size(&Graph::edgeless(4)).unwrap(), 0);
        assert!(min_separating_size(&Graph::cycle(4)).is_err());
    }

    #[test]
    fn unbounded() {
        let k3 = design_unbounded_optimal(&weighted(Graph::complete(3), &[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(k3.total_cost, 3.0);
        assert_eq!(
            k3.design.nonempty_interventions().cloned().collect::<Vec<_>>(),
            vec![VertexSet::from([1]), VertexSet::from([2])]
        );

        let path = design_unbounded_optimal(&weighted(Graph::path(3), &[1.0, 3.0, 1.0])).unwrap();
        assert_eq!(path.total_cost, 2.0);
        assert_eq!(path.design.interventions(), &[VertexSet::from([0, 2])]);

        let single = design_unbounded_optimal(&Graph::edgeless(1)).unwrap();
        assert_eq!((single.total_cost, single.design.m()), (0.0, 0));
    }

    #[test]
    fn greedy_chordal() {
        let path = design_greedy_chordal(&weighted(Graph::path(3), &[1.0, 3.0, 1.0]), 1).unwrap();
        // r = χ = 2, so no independent-set step runs before the final matching.
        assert_eq!(path.steps.len(), 2);
        assert_eq!(labels(&path), ["1", "0", "1"]);
        assert_eq!(path.total_cost, 2.0);

        let k3 = design_greedy_chordal(&weighted(Graph::complete(3), &[3.0, 2.0, 1.0]), 2).unwrap();
        assert_eq!(k3.steps[0].chosen, VertexSet::from([0]));
        assert_eq!(k3.steps[0].label.to_string(), "00");
        assert_eq!(k3.total_cost, 3.0);

        assert_eq!(
            design_greedy_chordal(&Graph::complete(3), 1).unwrap_err(),
            DesignError::InsufficientInterventions { m: 1, required: 2 }
        );
        assert!(matches!(
            design_greedy_chordal(&Graph::cycle(4), 3),
            Err(DesignError::Chordal(ChordalError::NotChordal { .. }))
        ));
    }

    #[test]
    fn greedy_interval() {
        let path = intervals(&[(0.0, 1.0), (0.5, 2.0), (1.5, 3.0)], &[1.0, 3.0, 1.0]);
        let r = design_greedy_interval(&path, 2).unwrap();
        assert_eq!(r.steps[0].chosen, VertexSet::from([1]));
        assert_eq!(labels(&r), ["01", "00", "01"]);
        assert_eq!(r.total_cost, 2.0);

        let k3 = intervals(&[(0.0, 3.0), (1.0, 2.0), (1.5, 1.8)], &[3.0, 2.0, 1.0]);
        let r = design_greedy_interval(&k3, 2).unwrap();
        assert_eq!(r.steps[0].chosen, VertexSet::from([0]));
        assert_eq!(r.total_cost, 3.0);

        let edgeless = intervals(&[(0.0, 1.0), (2.0, 3.0), (4.0, 5.0)], &[1.0, 1.0, 1.0]);
        let r = design_greedy_interval(&edgeless, 1).unwrap();
        assert_eq!(labels(&r), ["0", "0", "0"]);
        assert_eq!(r.total_cost, 0.0);

        assert_eq!(
            design_greedy_interval(&Graph::path(3), 1).unwrap_err(),
            DesignError::Chordal(ChordalError::NoIntervals)
        );
    }

    #[test]
    fn greedy_early_stop_is_noted() {
        // Two labels remain after the single independent set covers everything.
        let r = design_greedy_chordal(&Graph::edgeless(3), 2).unwrap();
        assert_eq!(r.total_cost, 0.0);
        assert_eq!(r.notes.len(), 1);
    }
}
