//! Integer-program export of the labeled-coloring formulation, in CPLEX LP
//! format, for use with external MILP solvers.
//!
//! Binary `x_i_k` says vertex `i` takes the `k`-th lightest label. Minimize
//! `Σ w_i·b(k)·x_i_k` subject to one label per vertex and, for every edge and
//! label, at most one endpoint carrying it.

use std::fmt::Write;

use crate::graph::Graph;
use crate::sepsys::label_pool;

/// Maximum terms per line; LP readers cap line length.
const TERMS_PER_LINE: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct IlpModel {
    pub num_vertices: usize,
    pub num_labels: usize,
    pub b: Vec<usize>,
    pub weights: Vec<f64>,
    pub edges: Vec<(usize, usize)>,
}

impl IlpModel {
    pub fn new(g: &Graph, m: usize) -> Self {
        let b = label_pool(m, g.n()).b();
        IlpModel {
            num_vertices: g.n(),
            num_labels: b.len(),
            b,
            weights: g.weights().to_vec(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn num_variables(&self) -> usize {
        self.num_vertices * self.num_labels
    }

    pub fn num_assignment_constraints(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edge_constraints(&self) -> usize {
        self.edges.len() * self.num_labels
    }

    pub fn objective_coefficient(&self, i: usize, k: usize) -> f64 {
        self.weights[i] * self.b[k] as f64
    }

    fn variable(i: usize, k: usize) -> String {
        format!("x_{i}_{k}")
    }

    /// Evaluates the objective on a 0-1 assignment, `label_of[i] = k`.
    pub fn objective_value(&self, label_of: &[usize]) -> f64 {
        label_of
            .iter()
            .enumerate()
            .map(|(i, &k)| self.objective_coefficient(i, k))
            .sum()
    }

    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ labeled-coloring model: {} vertices, {} labels, {} edges",
            self.num_vertices,
            self.num_labels,
            self.edges.len()
        );
        out.push_str("Minimize\n obj:");
        let mut terms = 0;
        for i in 0..self.num_vertices {
            for k in 0..self.num_labels {
                if terms > 0 && terms % TERMS_PER_LINE == 0 {
                    out.push_str("\n     ");
                }
                let sign = if terms == 0 { "" } else { "+ " };
                let _ = write!(
                    out,
                    " {sign}{} {}",
                    self.objective_coefficient(i, k),
                    Self::variable(i, k)
                );
                terms += 1;
            }
        }
        out.push_str("\nSubject To\n");
        for i in 0..self.num_vertices {
            let _ = write!(out, " assign_{i}:");
            for k in 0..self.num_labels {
                if k > 0 && k % TERMS_PER_LINE == 0 {
                    out.push_str("\n    ");
                }
                let sign = if k == 0 { "" } else { "+ " };
                let _ = write!(out, " {sign}{}", Self::variable(i, k));
            }
            out.push_str(" = 1\n");
        }
        for &(u, v) in &self.edges {
            for k in 0..self.num_labels {
                let _ = writeln!(
                    out,
                    " edge_{u}_{v}_{k}: {} + {} <= 1",
                    Self::variable(u, k),
                    Self::variable(v, k)
                );
            }
        }
        out.push_str("Binary\n");
        for i in 0..self.num_vertices {
            let names: Vec<String> = (0..self.num_labels).map(|k| Self::variable(i, k)).collect();
            for chunk in names.chunks(TERMS_PER_LINE) {
                let _ = writeln!(out, " {}", chunk.join(" "));
            }
        }
        out.push_str("End\n");
        out
    }
}

/// The labeled-coloring integer program for at most `m` interventions, as LP
/// file text.
pub fn export_ilp(g: &Graph, m: usize) -> String {
    IlpModel::new(g, m).to_lp()
}
