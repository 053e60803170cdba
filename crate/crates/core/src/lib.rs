//! Minimum-cost non-adaptive intervention designs for learning causal
//! graphs whose skeleton is chordal.
//!
//! A design is a graph separating system: a family of intervention sets such
//! that every edge has one endpoint in some set and the other outside it.
//! Designs correspond to proper colorings whose classes carry distinct 0-1
//! labels; a vertex pays its cost once per intervention containing it.
//!
//! ```
//! use intervention_design::designer::design_greedy_chordal;
//! use intervention_design::graph::Graph;
//!
//! let g = Graph::path(3).with_weights(vec![1.0, 3.0, 1.0]).unwrap();
//! let result = design_greedy_chordal(&g, 1).unwrap();
//! assert_eq!(result.total_cost, 2.0);
//! ```

pub mod bench;
pub mod chordal;
pub mod designer;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod randgen;
pub mod sepsys;

pub use designer::{Algorithm, DesignError, DesignResult};
pub use graph::{Graph, GraphError, Interval, VertexSet};
pub use sepsys::{Design, Label};
