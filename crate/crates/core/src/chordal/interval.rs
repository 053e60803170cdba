//! Maximum-weight k-colorable induced subgraph of an interval graph, solved
//! as a min-cost flow on the line of sorted interval endpoints.
//!
//! Network: one node per distinct endpoint plus a terminal node, a chain of
//! capacity-`k` zero-cost arcs between consecutive nodes, and for every
//! interval `[lo, hi]` a capacity-1 arc from `node(lo)` to `node(hi) + 1`
//! whose cost is minus the vertex weight. Each unit of flow is a chain of
//! pairwise disjoint intervals, i.e. one color class.

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

use super::{ChordalError, Coloring};
use crate::graph::{Graph, VertexSet};

/// A k-colorable vertex set together with an explicit partition into at
/// most k independent classes. Ids refer to the input graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredSubset {
    pub vertices: VertexSet,
    pub classes: Vec<VertexSet>,
}

impl ColoredSubset {
    /// Coloring of `g.induced_subgraph(&self.vertices)`.
    pub fn coloring(&self) -> Coloring {
        let mut class_of = vec![0; self.vertices.len()];
        for (c, class) in self.classes.iter().enumerate() {
            for v in class.iter() {
                let i = self
                    .vertices
                    .as_slice()
                    .binary_search(&v)
                    .expect("class members are selected vertices");
                class_of[i] = c;
            }
        }
        Coloring::from_classes(&class_of)
    }
}

/// Flow cost ordered lexicographically: total weight first, then the number
/// of selected intervals, so zero-cost vertices are still taken when room
/// remains.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
struct FlowCost {
    weight: f64,
    count: i64,
}

impl FlowCost {
    const ZERO: FlowCost = FlowCost { weight: 0.0, count: 0 };

    fn lt(&self, other: &FlowCost) -> bool {
        match self.weight.total_cmp(&other.weight) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.count < other.count,
        }
    }
}

impl Add for FlowCost {
    type Output = FlowCost;
    fn add(self, o: FlowCost) -> FlowCost {
        FlowCost {
            weight: self.weight + o.weight,
            count: self.count + o.count,
        }
    }
}

impl Sub for FlowCost {
    type Output = FlowCost;
    fn sub(self, o: FlowCost) -> FlowCost {
        self + -o
    }
}

impl Neg for FlowCost {
    type Output = FlowCost;
    fn neg(self) -> FlowCost {
        FlowCost {
            weight: -self.weight,
            count: -self.count,
        }
    }
}

struct Arc {
    to: usize,
    cap: usize,
    cost: FlowCost,
    /// Vertex carried by an interval arc.
    vertex: Option<usize>,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: usize, cost: FlowCost, vertex: Option<usize>) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost, vertex });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
            vertex: None,
        });
    }

    /// Bellman-Ford over the residual network; the residual graph of a
    /// successive-shortest-path flow has no negative cycles.
    fn shortest_path(&self, s: usize, t: usize) -> Option<(FlowCost, Vec<usize>)> {
        let nodes = self.out.len();
        let mut dist: Vec<Option<FlowCost>> = vec![None; nodes];
        let mut via = vec![usize::MAX; nodes];
        dist[s] = Some(FlowCost::ZERO);
        for _ in 0..nodes {
            let mut changed = false;
            for u in 0..nodes {
                let Some(du) = dist[u] else { continue };
                for &a in &self.out[u] {
                    let arc = &self.arcs[a];
                    if arc.cap == 0 {
                        continue;
                    }
                    let cand = du + arc.cost;
                    if dist[arc.to].is_none_or(|d| cand.lt(&d)) {
                        dist[arc.to] = Some(cand);
                        via[arc.to] = a;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let total = dist[t]?;
        let mut path = Vec::new();
        let mut v = t;
        while v != s {
            let a = via[v];
            path.push(a);
            v = self.arcs[a ^ 1].to;
        }
        path.reverse();
        Some((total, path))
    }
}

/// Maximum-total-weight vertex set of an interval graph whose induced
/// subgraph is k-colorable, with an explicit k-coloring.
pub fn max_weight_k_colorable_interval(g: &Graph, k: usize) -> Result<ColoredSubset, ChordalError> {
    let intervals = g.intervals().ok_or(ChordalError::NoIntervals)?;
    if k == 0 {
        return Err(ChordalError::InvalidK);
    }
    let n = g.n();
    if n == 0 {
        return Ok(ColoredSubset {
            vertices: VertexSet::new(),
            classes: Vec::new(),
        });
    }
    let k = k.min(n);

    let mut coords: Vec<f64> = intervals.iter().flat_map(|i| [i.lo, i.hi]).collect();
    coords.sort_by(f64::total_cmp);
    coords.dedup();
    let node_of = |x: f64| {
        coords
            .binary_search_by(|c| c.total_cmp(&x))
            .expect("endpoint was inserted")
    };
    let source = 0;
    let sink = coords.len();
    let mut net = Network::new(coords.len() + 1);
    for i in 0..coords.len() {
        net.add_arc(i, i + 1, k, FlowCost::ZERO, None);
    }
    for (v, iv) in intervals.iter().enumerate() {
        let cost = FlowCost {
            weight: -g.weight(v),
            count: -1,
        };
        net.add_arc(node_of(iv.lo), node_of(iv.hi) + 1, 1, cost, Some(v));
    }

    let mut pushed = 0;
    while pushed < k {
        let Some((cost, path)) = net.shortest_path(source, sink) else {
            break;
        };
        if !cost.lt(&FlowCost::ZERO) {
            break;
        }
        let amount = path.iter().map(|&a| net.arcs[a].cap).min().unwrap_or(0).min(k - pushed);
        for &a in &path {
            net.arcs[a].cap -= amount;
            net.arcs[a ^ 1].cap += amount;
        }
        pushed += amount;
    }

    // Flow on a forward arc is the capacity sitting on its reverse twin.
    let mut flow: Vec<usize> = (0..net.arcs.len())
        .map(|a| if a % 2 == 0 { net.arcs[a ^ 1].cap } else { 0 })
        .collect();
    let mut classes = Vec::new();
    loop {
        let mut u = source;
        let mut class = Vec::new();
        while u != sink {
            let Some(&a) = net.out[u].iter().find(|&&a| a % 2 == 0 && flow[a] > 0) else {
                break;
            };
            flow[a] -= 1;
            if let Some(v) = net.arcs[a].vertex {
                class.push(v);
            }
            u = net.arcs[a].to;
        }
        if u != sink {
            break;
        }
        if !class.is_empty() {
            classes.push(VertexSet::from(class));
        }
    }
    let vertices: VertexSet = classes.iter().flat_map(|c| c.iter()).collect();
    Ok(ColoredSubset { vertices, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Interval;

    fn path_intervals(w: &[f64]) -> Graph {
        Graph::from_intervals(
            vec![
                Interval::new(0.0, 1.0),
                Interval::new(0.5, 2.0),
                Interval::new(1.5, 3.0),
            ],
            Some(w.to_vec()),
        )
        .unwrap()
    }

    fn nested_triangle(w: &[f64]) -> Graph {
        Graph::from_intervals(
            vec![
                Interval::new(0.0, 10.0),
                Interval::new(1.0, 9.0),
                Interval::new(2.0, 8.0),
            ],
            Some(w.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn path_is_two_colorable() {
        let g = path_intervals(&[1.0, 1.0, 1.0]);
        let r = max_weight_k_colorable_interval(&g, 2).unwrap();
        assert_eq!(r.vertices, VertexSet::from([0, 1, 2]));
        assert!(r.classes.len() <= 2);
        let (sub, _) = g.induced_subgraph(&r.vertices).unwrap();
        assert!(r.coloring().is_proper(&sub));
    }

    #[test]
    fn triangle_keeps_two_heaviest() {
        let g = nested_triangle(&[3.0, 2.0, 1.0]);
        let r = max_weight_k_colorable_interval(&g, 2).unwrap();
        assert_eq!(r.vertices, VertexSet::from([0, 1]));
        assert_eq!(g.weight_of(&r.vertices), 5.0);
    }

    #[test]
    fn k_at_least_chromatic_takes_everything() {
        let g = nested_triangle(&[0.0, 2.0, 0.0]);
        let r = max_weight_k_colorable_interval(&g, 3).unwrap();
        assert_eq!(r.vertices.len(), 3);
        let r = max_weight_k_colorable_interval(&g, 7).unwrap();
        assert_eq!(r.vertices.len(), 3);
    }

    #[test]
    fn touching_intervals_need_distinct_classes() {
        let g = Graph::from_intervals(
            vec![Interval::new(0.0, 1.0), Interval::new(1.0, 2.0)],
            Some(vec![1.0, 1.0]),
        )
        .unwrap();
        let r = max_weight_k_colorable_interval(&g, 1).unwrap();
        assert_eq!(r.vertices.len(), 1);
        let r = max_weight_k_colorable_interval(&g, 2).unwrap();
        assert_eq!(r.classes.len(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(
            max_weight_k_colorable_interval(&Graph::path(3), 2),
            Err(ChordalError::NoIntervals)
        );
        assert_eq!(
            max_weight_k_colorable_interval(&path_intervals(&[1.0; 3]), 0),
            Err(ChordalError::InvalidK)
        );
    }
}
