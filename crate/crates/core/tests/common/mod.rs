//! Brute-force reference implementations. Everything here works from the
//! edge list alone, by exhaustive enumeration, and shares no code with the
//! library algorithms it checks.

#![allow(dead_code)]

use intervention_design::graph::{Graph, Interval};
use intervention_design::randgen::{sample_chordal, GenConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Neighborhood bitmasks; graphs here have at most 32 vertices.
pub fn masks(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 32);
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

pub fn is_independent_mask(adj: &[u32], set: u32) -> bool {
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        if adj[v] & set != 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

fn weight_of_mask(w: &[f64], set: u32) -> f64 {
    (0..w.len()).filter(|&v| set >> v & 1 == 1).map(|v| w[v]).sum()
}

/// True if some vertex subset of size at least four induces a cycle.
pub fn has_chordless_cycle(g: &Graph) -> bool {
    let adj = masks(g);
    let n = g.n();
    (0u32..1 << n).any(|set| {
        set.count_ones() >= 4
            && (0..n)
                .filter(|&v| set >> v & 1 == 1)
                .all(|v| (adj[v] & set).count_ones() == 2)
            && connected_mask(&adj, set)
    })
}

fn connected_mask(adj: &[u32], set: u32) -> bool {
    if set == 0 {
        return true;
    }
    let mut seen = 1u32 << set.trailing_zeros();
    loop {
        let mut next = seen;
        for (v, &nb) in adj.iter().enumerate() {
            if seen >> v & 1 == 1 {
                next |= nb & set;
            }
        }
        if next == seen {
            return seen == set;
        }
        seen = next;
    }
}

/// Whether the vertices of `set` can be properly colored with `k` colors.
pub fn k_colorable(adj: &[u32], set: u32, k: usize) -> bool {
    let verts: Vec<usize> = (0..adj.len()).filter(|&v| set >> v & 1 == 1).collect();
    let mut color = vec![usize::MAX; adj.len()];
    fn go(i: usize, verts: &[usize], adj: &[u32], k: usize, color: &mut [usize]) -> bool {
        if i == verts.len() {
            return true;
        }
        let v = verts[i];
        // Colors up to one past the largest used so far; avoids symmetric branches.
        let used = verts[..i].iter().map(|&u| color[u] + 1).max().unwrap_or(0);
        for c in 0..k.min(used + 1) {
            if verts[..i].iter().all(|&u| adj[v] >> u & 1 == 0 || color[u] != c) {
                color[v] = c;
                if go(i + 1, verts, adj, k, color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    go(0, &verts, adj, k, &mut color)
}

pub fn chromatic_number(g: &Graph) -> usize {
    let adj = masks(g);
    let all = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    (0..=g.n()).find(|&k| k_colorable(&adj, all, k)).unwrap()
}

pub fn max_clique(g: &Graph) -> usize {
    let adj = masks(g);
    (0u32..1 << g.n())
        .filter(|&s| {
            (0..g.n())
                .filter(|&v| s >> v & 1 == 1)
                .all(|v| (adj[v] | 1 << v) & s == s)
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn mwis_weight(g: &Graph) -> f64 {
    let adj = masks(g);
    (0u32..1 << g.n())
        .filter(|&s| is_independent_mask(&adj, s))
        .map(|s| weight_of_mask(g.weights(), s))
        .fold(0.0, f64::max)
}

/// Largest weight of a vertex subset whose induced subgraph is `k`-colorable.
pub fn max_weight_k_colorable(g: &Graph, k: usize) -> f64 {
    let adj = masks(g);
    let mut subsets: Vec<u32> = (0u32..1 << g.n()).collect();
    subsets.sort_by(|&a, &b| weight_of_mask(g.weights(), b).total_cmp(&weight_of_mask(g.weights(), a)));
    subsets
        .into_iter()
        .find(|&s| k_colorable(&adj, s, k))
        .map_or(0.0, |s| weight_of_mask(g.weights(), s))
}

/// Every partition of the vertices into independent sets, as class-index
/// vectors, passed to `f`.
pub fn for_each_proper_partition(g: &Graph, max_classes: usize, f: &mut dyn FnMut(&[usize], usize)) {
    let adj = masks(g);
    let n = g.n();
    let mut class_of = vec![0; n];
    let mut members: Vec<u32> = Vec::new();
    fn go(
        v: usize,
        n: usize,
        adj: &[u32],
        max_classes: usize,
        class_of: &mut Vec<usize>,
        members: &mut Vec<u32>,
        f: &mut dyn FnMut(&[usize], usize),
    ) {
        if v == n {
            f(class_of, members.len());
            return;
        }
        for c in 0..members.len() {
            if members[c] & adj[v] == 0 {
                class_of[v] = c;
                members[c] |= 1 << v;
                go(v + 1, n, adj, max_classes, class_of, members, f);
                members[c] &= !(1 << v);
            }
        }
        if members.len() < max_classes {
            class_of[v] = members.len();
            members.push(1 << v);
            go(v + 1, n, adj, max_classes, class_of, members, f);
            members.pop();
        }
    }
    go(0, n, &adj, max_classes, &mut class_of, &mut members, f);
}

/// Popcounts of the `c` lightest vectors in `{0,1}^m`, ascending.
pub fn lightest_label_weights(m: usize, c: usize) -> Vec<usize> {
    assert!(m <= 20);
    let mut all: Vec<usize> = (0u32..1 << m).map(|x| x.count_ones() as usize).collect();
    all.sort_unstable();
    all.truncate(c);
    all
}

/// Minimum total cost of a separating design with `m` interventions, by
/// enumerating proper partitions and labeling each optimally (heaviest class
/// gets the lightest vector). `None` when no design exists.
pub fn min_design_cost(g: &Graph, m: usize) -> Option<f64> {
    let cap = if m >= 20 {
        g.n()
    } else {
        (1usize << m).min(g.n().max(1))
    };
    let b = lightest_label_weights(m.min(20), cap);
    let w = g.weights();
    let mut best: Option<f64> = None;
    for_each_proper_partition(g, cap, &mut |class_of, c| {
        let mut cost = vec![0.0; c];
        for (v, &k) in class_of.iter().enumerate() {
            cost[k] += w[v];
        }
        cost.sort_by(|a, b| b.total_cmp(a));
        let total: f64 = cost.iter().zip(&b).map(|(x, &bw)| x * bw as f64).sum();
        if best.is_none_or(|v| total < v) {
            best = Some(total);
        }
    });
    best
}

/// Minimum cost with no limit on interventions: every class but one is
/// intervened on exactly once.
pub fn min_unbounded_cost(g: &Graph) -> f64 {
    let w = g.weights();
    let total: f64 = w.iter().sum();
    let mut best = f64::INFINITY;
    for_each_proper_partition(g, g.n(), &mut |class_of, c| {
        let mut cost = vec![0.0; c];
        for (v, &k) in class_of.iter().enumerate() {
            cost[k] += w[v];
        }
        let heaviest = cost.iter().copied().fold(0.0, f64::max);
        best = best.min(total - heaviest);
    });
    if g.n() == 0 {
        0.0
    } else {
        best
    }
}

/// Smallest `m` for which some assignment of `m`-bit rows gives adjacent
/// vertices distinct rows, by trying every assignment.
pub fn min_separating_m(g: &Graph) -> usize {
    (0..).find(|&m| exists_separating_rows(g, m)).unwrap()
}

fn exists_separating_rows(g: &Graph, m: usize) -> bool {
    let n = g.n();
    let mut rows = vec![0usize; n];
    fn go(v: usize, g: &Graph, m: usize, rows: &mut [usize]) -> bool {
        if v == g.n() {
            return true;
        }
        for r in 0..1usize << m {
            if g.neighbors(v).iter().all(|&u| u > v || rows[u] != r) {
                rows[v] = r;
                if go(v + 1, g, m, rows) {
                    return true;
                }
            }
        }
        false
    }
    n == 0 || go(0, g, m, &mut rows)
}

/// Orientation flags aligned with `g.edges()` for every acyclic orientation
/// without an immorality.
pub fn moral_orientations(g: &Graph) -> Vec<Vec<bool>> {
    let e = g.num_edges();
    assert!(e <= 20);
    (0u32..1 << e)
        .map(|bits| (0..e).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|o| acyclic(g, o) && no_immorality(g, o))
        .collect()
}

fn points(g: &Graph, o: &[bool], a: usize, b: usize) -> bool {
    g.edges()
        .iter()
        .position(|&e| e == (a.min(b), a.max(b)))
        .is_some_and(|i| o[i] == (a < b))
}

fn acyclic(g: &Graph, o: &[bool]) -> bool {
    // Repeatedly delete sinks.
    let mut alive: Vec<bool> = vec![true; g.n()];
    loop {
        let sink = (0..g.n()).find(|&v| alive[v] && g.neighbors(v).iter().all(|&u| !alive[u] || !points(g, o, v, u)));
        match sink {
            Some(v) => alive[v] = false,
            None => return alive.iter().all(|a| !a),
        }
    }
}

fn no_immorality(g: &Graph, o: &[bool]) -> bool {
    (0..g.n()).all(|v| {
        let parents: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| points(g, o, u, v)).collect();
        parents
            .iter()
            .all(|&a| parents.iter().all(|&b| a == b || g.has_edge(a, b)))
    })
}

/// Per edge of `g.edges()`: the direction shared by every moral orientation
/// consistent with `evidence` (`Some(true)` for `u → v`), or `None`.
pub fn extension_intersection(g: &Graph, evidence: &[(usize, usize)], all: &[Vec<bool>]) -> Vec<Option<bool>> {
    let consistent: Vec<&Vec<bool>> = all
        .iter()
        .filter(|o| evidence.iter().all(|&(a, b)| points(g, o, a, b)))
        .collect();
    assert!(!consistent.is_empty(), "evidence must come from a moral orientation");
    (0..g.num_edges())
        .map(|i| {
            let first = consistent[0][i];
            consistent.iter().all(|o| o[i] == first).then_some(first)
        })
        .collect()
}

/// Edges `(from, to)` of orientation `o` with exactly one endpoint in `set`.
pub fn cut(g: &Graph, o: &[bool], set: &[bool]) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .zip(o)
        .filter(|(&(u, v), _)| set[u] != set[v])
        .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
        .collect()
}

/// All chordal graphs on `n` vertices, one per isomorphism class.
pub fn chordal_graphs(n: usize, connected_only: bool) -> Vec<Graph> {
    enumerate_chordal(n, connected_only, true)
}

/// All chordal graphs on the labeled vertex set `0..n`.
pub fn labeled_chordal_graphs(n: usize, connected_only: bool) -> Vec<Graph> {
    enumerate_chordal(n, connected_only, false)
}

fn enumerate_chordal(n: usize, connected_only: bool, up_to_isomorphism: bool) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::unweighted(n, &edges).unwrap();
        if (connected_only && !g.is_connected()) || has_chordless_cycle(&g) {
            continue;
        }
        if !up_to_isomorphism {
            out.push(g);
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Exponential(1) costs rounded to multiples of 1/1024 so that every sum in
/// the tests is exact in binary floating point.
pub fn dyadic_costs(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed ^ 0xD1AD1C);
    (0..n)
        .map(|_| {
            let x: f64 = Exp1.sample(&mut r);
            (x * 1024.0).round() / 1024.0
        })
        .collect()
}

pub fn random_chordal(n: usize, d: f64, seed: u64) -> Graph {
    let g = sample_chordal(&GenConfig::new(n, d, seed)).unwrap();
    g.with_weights(dyadic_costs(n, seed)).unwrap()
}

pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed ^ 0x7EE);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (r.random_range(0..v), v)).collect();
    Graph::build(n, &edges, Some(dyadic_costs(n, seed)), None).unwrap()
}

/// Interval graph with integer endpoints in `[0, 2n]`.
pub fn random_interval(n: usize, max_len: u32, seed: u64) -> Graph {
    let mut r = rng(seed ^ 0x1A7);
    let intervals = (0..n)
        .map(|_| {
            let lo = r.random_range(0..2 * n as u32);
            let len = r.random_range(0..=max_len);
            Interval::new(lo as f64, (lo + len) as f64)
        })
        .collect();
    Graph::from_intervals(intervals, Some(dyadic_costs(n, seed))).unwrap()
}

/// A random proper coloring: vertices in random order, each taking one of
/// its three smallest free colors at random.
pub fn random_proper_coloring(g: &Graph, seed: u64) -> Vec<usize> {
    let mut r = rng(seed ^ 0xC0105);
    let mut order: Vec<usize> = (0..g.n()).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut r);
    let mut color = vec![usize::MAX; g.n()];
    for &v in &order {
        let mut free: Vec<usize> = (0..=g.n())
            .filter(|&c| g.neighbors(v).iter().all(|&u| color[u] != c))
            .collect();
        free.truncate(3);
        color[v] = free[r.random_range(0..free.len())];
    }
    color
}
