//! Separating-system matrices.
//!
//! A [`Design`] of `m` interventions is an `n × m` 0-1 matrix: row `v` is the
//! [`Label`] of vertex `v`, column `j` is the indicator of intervention `j`.
//! The design separates a graph exactly when adjacent vertices get distinct
//! rows, i.e. when "same row" is a proper coloring.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chordal::Coloring;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SepsysError {
    #[error("label {0} is used by more than one color class")]
    DuplicateLabel(Label),
    #[error("label {label} has length {got}, expected {expected}")]
    LabelLengthMismatch { label: Label, expected: usize, got: usize },
    #[error("{classes} color classes need distinct labels but only {labels} are available")]
    NotEnoughLabels { classes: usize, labels: usize },
    #[error("edge ({0}, {1}) is not separated by any intervention")]
    NotSeparating(usize, usize),
    #[error("design has {rows} rows but the graph has {n} vertices")]
    SizeMismatch { rows: usize, n: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid label string {0:?}")]
    BadLabel(String),
}

/// Binary row of length `m`; bit `j` set means membership in intervention `j`.
///
/// Labels order by popcount, then by numeric value reading bit 0 as the most
/// significant digit. This is the canonical consumption order everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label {
    len: usize,
    words: Vec<u64>,
}

impl Label {
    pub fn zeros(len: usize) -> Self {
        Label {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Label with ones exactly at the given column indices.
    pub fn with_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut l = Label::zeros(len);
        for j in ones {
            l.set(j, true);
        }
        l
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, j: usize) -> bool {
        assert!(j < self.len, "column {j} out of range for label of length {}", self.len);
        self.words[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j < self.len, "column {j} out of range for label of length {}", self.len);
        if value {
            self.words[j / 64] |= 1 << (j % 64);
        } else {
            self.words[j / 64] &= !(1 << (j % 64));
        }
    }

    /// Number of ones: how many interventions include a vertex with this row.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&j| self.get(j))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.len.cmp(&other.len))
            .then_with(|| {
                // Column 0 is the most significant digit.
                (0..self.len)
                    .map(|j| self.get(j).cmp(&other.get(j)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Label({self})")
    }
}

impl FromStr for Label {
    type Err = SepsysError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut l = Label::zeros(s.len());
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => l.set(j, true),
                _ => return Err(SepsysError::BadLabel(s.to_string())),
            }
        }
        Ok(l)
    }
}

/// The `min(2^m, n)` lightest labels of length `m`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPool {
    m: usize,
    labels: Vec<Label>,
}

impl LabelPool {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label weights: `[0, 1, .., 1, 2, .., 2, ..]`, weight `i` repeated
    /// `C(m, i)` times except possibly the last block, which is cut at `t`.
    pub fn b(&self) -> Vec<usize> {
        self.labels.iter().map(Label::weight).collect()
    }
}

pub fn label_pool(m: usize, n: usize) -> LabelPool {
    let t = if m >= usize::BITS as usize - 1 {
        n
    } else {
        n.min(1usize << m)
    };
    let mut labels = Vec::with_capacity(t);
    'weights: for weight in 0..=m {
        // Significance positions of the ones, in colex order, which is
        // increasing numeric value. Significance s is column m - 1 - s.
        let mut sig: Vec<usize> = (0..weight).collect();
        loop {
            if labels.len() == t {
                break 'weights;
            }
            labels.push(Label::with_ones(m, sig.iter().map(|&s| m - 1 - s)));
            // Colex successor.
            let mut i = 0;
            while i < weight && (i + 1 < weight && sig[i] + 1 == sig[i + 1]) {
                i += 1;
            }
            if i == weight || sig[i] + 1 >= m {
                break;
            }
            sig[i] += 1;
            for (j, s) in sig.iter_mut().enumerate().take(i) {
                *s = j;
            }
        }
    }
    LabelPool { m, labels }
}

/// Intervention design in both matrix and set form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    m: usize,
    interventions: Vec<VertexSet>,
    rows: Vec<Label>,
}

impl Design {
    /// From per-vertex rows, all of length `m`.
    pub fn from_rows(m: usize, rows: Vec<Label>) -> Result<Self, SepsysError> {
        let mut interventions = vec![Vec::new(); m];
        for (v, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(SepsysError::LabelLengthMismatch {
                    label: row.clone(),
                    expected: m,
                    got: row.len(),
                });
            }
            for j in row.ones() {
                interventions[j].push(v);
            }
        }
        Ok(Design {
            m,
            interventions: interventions.into_iter().map(VertexSet::from).collect(),
            rows,
        })
    }

    /// From intervention sets over `n` vertices; `m` is the number of sets.
    pub fn from_interventions(n: usize, interventions: Vec<VertexSet>) -> Result<Self, SepsysError> {
        let m = interventions.len();
        let mut rows = vec![Label::zeros(m); n];
        for (j, set) in interventions.iter().enumerate() {
            if let Some(vertex) = set.max().filter(|&v| v >= n) {
                return Err(SepsysError::VertexOutOfRange { vertex, n });
            }
            for v in set.iter() {
                rows[v].set(j, true);
            }
        }
        Ok(Design { m, interventions, rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn interventions(&self) -> &[VertexSet] {
        &self.interventions
    }

    /// Interventions that contain at least one vertex.
    pub fn nonempty_interventions(&self) -> impl Iterator<Item = &VertexSet> {
        self.interventions.iter().filter(|s| !s.is_empty())
    }

    pub fn row(&self, v: usize) -> &Label {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[Label] {
        &self.rows
    }
}

pub fn coloring_to_design(coloring: &Coloring, label_of_class: &[Label], m: usize) -> Result<Design, SepsysError> {
    if label_of_class.len() < coloring.num_classes() {
        return Err(SepsysError::NotEnoughLabels {
            classes: coloring.num_classes(),
            labels: label_of_class.len(),
        });
    }
    let labels = &label_of_class[..coloring.num_classes()];
    for l in labels {
        if l.len() != m {
            return Err(SepsysError::LabelLengthMismatch {
                label: l.clone(),
                expected: m,
                got: l.len(),
            });
        }
    }
    let mut sorted: Vec<&Label> = labels.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(SepsysError::DuplicateLabel(w[0].clone()));
    }
    let rows = coloring.assignment().iter().map(|&c| labels[c].clone()).collect();
    Design::from_rows(m, rows)
}

/// Groups vertices by identical rows. Fails on the first unseparated edge.
pub fn design_to_coloring(g: &Graph, design: &Design) -> Result<Coloring, SepsysError> {
    check_size(g, design)?;
    let report = verify_graph_separating(g, design);
    if let Some(&(u, v)) = report.unseparated.first() {
        return Err(SepsysError::NotSeparating(u, v));
    }
    let mut seen: Vec<&Label> = Vec::new();
    let class_of: Vec<usize> = design
        .rows()
        .iter()
        .map(|row| match seen.iter().position(|l| *l == row) {
            Some(c) => c,
            None => {
                seen.push(row);
                seen.len() - 1
            }
        })
        .collect();
    Ok(Coloring::from_classes(&class_of))
}

fn check_size(g: &Graph, design: &Design) -> Result<(), SepsysError> {
    if design.num_vertices() != g.n() {
        return Err(SepsysError::SizeMismatch {
            rows: design.num_vertices(),
            n: g.n(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub unseparated: Vec<(usize, usize)>,
}

impl SeparationReport {
    pub fn is_separating(&self) -> bool {
        self.unseparated.is_empty()
    }
}

/// Every edge must have exactly one endpoint in some intervention.
pub fn verify_graph_separating(g: &Graph, design: &Design) -> SeparationReport {
    let unseparated = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| u >= design.num_vertices() || v >= design.num_vertices() || design.row(u) == design.row(v))
        .collect();
    SeparationReport { unseparated }
}

/// Total intervention cost, computed per row (`Σ_v |row_v|·w_v`) and per
/// intervention (`Σ_j Σ_{v∈I_j} w_v`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub by_rows: f64,
    pub by_interventions: f64,
}

pub fn cost_breakdown(design: &Design, weights: &[f64]) -> CostBreakdown {
    assert_eq!(weights.len(), design.num_vertices(), "one weight per vertex");
    let by_rows = design
        .rows()
        .iter()
        .zip(weights)
        .map(|(row, w)| row.weight() as f64 * w)
        .sum();
    let by_interventions = design
        .interventions()
        .iter()
        .map(|set| set.iter().map(|v| weights[v]).sum::<f64>())
        .sum();
    CostBreakdown {
        by_rows,
        by_interventions,
    }
}

/// Total cost of running every intervention in the design.
///
/// Panics if `weights` has the wrong length or the two cost formulas
/// disagree beyond floating-point summation error.
pub fn design_cost(design: &Design, weights: &[f64]) -> f64 {
    let c = cost_breakdown(design, weights);
    let scale = design.m().max(1) as f64 * weights.iter().sum::<f64>();
    assert!(
        (c.by_rows - c.by_interventions).abs() <= 1e-9 * scale.max(1.0),
        "cost formulas disagree: {} vs {}",
        c.by_rows,
        c.by_interventions
    );
    c.by_rows
}

/// Matches color classes to labels: heaviest class to lightest label.
///
/// Classes are taken in decreasing cost (ties by index), labels in
/// increasing weight (ties by their order in `pool`).
pub fn assign_labels_min_cost(class_costs: &[f64], pool: &[Label]) -> Result<Vec<Label>, SepsysError> {
    if pool.len() < class_costs.len() {
        return Err(SepsysError::NotEnoughLabels {
            classes: class_costs.len(),
            labels: pool.len(),
        });
    }
    let mut classes: Vec<usize> = (0..class_costs.len()).collect();
    classes.sort_by(|&a, &b| class_costs[b].total_cmp(&class_costs[a]).then(a.cmp(&b)));
    let mut labels: Vec<&Label> = pool.iter().collect();
    labels.sort_by_key(|l| l.weight());
    let mut out = vec![Label::zeros(0); class_costs.len()];
    for (c, l) in classes.into_iter().zip(labels) {
        out[c] = l.clone();
    }
    Ok(out)
}
