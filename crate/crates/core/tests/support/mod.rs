//! Fixtures and independent oracles for the acceptance suite. Nothing here
//! calls the library's cycle, bond, or polynomial routines.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cyclepoly::{AbelianGroup, EdgeFunction, EdgeId, MultiGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub const MAX_VERTICES: usize = 4;
pub const MAX_EDGES: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
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

fn canonical(pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut mapped: Vec<(usize, usize)> = pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a], p[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            mapped.sort_unstable();
            mapped
        })
        .min()
        .unwrap_or_default()
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in pairs {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn multisets(
    types: &[(usize, usize)],
    size: usize,
    start: usize,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for i in start..types.len() {
        cur.push(types[i]);
        multisets(types, size, i, cur, out);
        cur.pop();
    }
}

/// Every connected multigraph (loops and parallel edges allowed) with
/// `1..=MAX_VERTICES` vertices and `0..=MAX_EDGES` edges, one per
/// isomorphism class, with edges oriented at random.
pub fn fixtures(rng: &mut impl Rng) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for n in 1..=MAX_VERTICES {
        let perms = permutations(n);
        let types: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let mut classes = BTreeSet::new();
        for m in 0..=MAX_EDGES {
            let mut all = Vec::new();
            multisets(&types, m, 0, &mut Vec::new(), &mut all);
            for pairs in all {
                if connected(n, &pairs) {
                    classes.insert(canonical(&pairs, &perms));
                }
            }
        }
        for pairs in classes {
            let oriented: Vec<(usize, usize)> = pairs
                .iter()
                .map(|&(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
                .collect();
            out.push(MultiGraph::from_pairs(n, &oriented).unwrap());
        }
    }
    out
}

pub fn groups() -> Vec<AbelianGroup> {
    ["Z2", "Z3", "Z4", "Z2x2", "Z5"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

pub fn random_f(g: &MultiGraph, group: &AbelianGroup, rng: &mut impl Rng) -> EdgeFunction {
    let values = g
        .edge_ids()
        .map(|e| (e, group.element_at(rng.gen_range(0..group.order()))))
        .collect();
    EdgeFunction::new(group.clone(), values).unwrap()
}

pub fn random_order(g: &MultiGraph, rng: &mut impl Rng) -> Vec<EdgeId> {
    let mut ids: Vec<EdgeId> = g.edge_ids().collect();
    ids.shuffle(rng);
    ids
}

/// Edge subsets forming a connected 2-regular subgraph, as edge-id sets.
pub fn oracle_cycles(g: &MultiGraph) -> Vec<BTreeSet<EdgeId>> {
    let m = g.num_edges();
    let mut out = Vec::new();
    for mask in 1u64..1 << m {
        let edges: Vec<_> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| g.edges()[i])
            .collect();
        let mut degree = vec![0usize; g.num_vertices()];
        for e in &edges {
            degree[e.tail.0] += 1;
            degree[e.head.0] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let start = edges[0].tail.0;
        let mut seen = vec![false; g.num_vertices()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in &edges {
                for (x, y) in [(e.tail.0, e.head.0), (e.head.0, e.tail.0)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if degree.iter().enumerate().all(|(v, &d)| d == 0 || seen[v]) {
            out.push(edges.iter().map(|e| e.id).collect());
        }
    }
    out
}

/// Signed sum of `f` around a cycle, walking from its smallest edge.
pub fn oracle_cycle_is_zero(
    g: &MultiGraph,
    group: &AbelianGroup,
    f: &EdgeFunction,
    cycle: &BTreeSet<EdgeId>,
) -> bool {
    let mut remaining: Vec<_> = cycle.iter().map(|&id| *g.edge(id).unwrap()).collect();
    let first = remaining.remove(0);
    let mut sum = f.get(first.id).unwrap().clone();
    let mut at = first.head;
    while !remaining.is_empty() {
        let i = remaining
            .iter()
            .position(|e| e.tail == at || e.head == at)
            .unwrap();
        let e = remaining.remove(i);
        let v = f.get(e.id).unwrap();
        if e.tail == at {
            sum = group.add(&sum, v).unwrap();
            at = e.head;
        } else {
            sum = group.sub(&sum, v).unwrap();
            at = e.tail;
        }
    }
    sum == group.zero()
}

pub fn is_forest_mask(g: &MultiGraph, mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for (i, e) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a, b) = (find(&mut parent, e.tail.0), find(&mut parent, e.head.0));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

/// Number of α-compatible edge subsets that contain no broken α-compatible
/// cycle. `cycles` pairs every cycle with its value; a broken cycle drops the
/// edge latest in `order`.
pub fn oracle_broken_free_count(
    g: &MultiGraph,
    cycles: &[(BTreeSet<EdgeId>, bool)],
    order: &[EdgeId],
) -> u64 {
    let pos = |e: EdgeId| g.edges().iter().position(|x| x.id == e).unwrap();
    let mask = |s: &BTreeSet<EdgeId>| s.iter().fold(0u64, |m, &e| m | 1 << pos(e));
    let rank = |e: EdgeId| order.iter().position(|&x| x == e).unwrap();
    let ones: Vec<u64> = cycles
        .iter()
        .filter(|(_, v)| *v)
        .map(|(c, _)| mask(c))
        .collect();
    let broken: Vec<u64> = cycles
        .iter()
        .filter(|(_, v)| !*v)
        .map(|(c, _)| {
            let top = *c.iter().max_by_key(|&&e| rank(e)).unwrap();
            let mut b = c.clone();
            b.remove(&top);
            mask(&b)
        })
        .collect();
    (0u64..1 << g.num_edges())
        .filter(|&x| ones.iter().all(|&c| c & !x != 0))
        .filter(|&x| broken.iter().all(|&b| b & !x != 0))
        .count() as u64
}

/// Chromatic polynomial of a simple graph by deletion-contraction,
/// coefficients lowest degree first.
pub fn chromatic(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<i128> {
    let Some(&(a, b)) = edges.iter().next() else {
        let mut p = vec![0; n + 1];
        p[n] = 1;
        return p;
    };
    let mut deleted = edges.clone();
    deleted.remove(&(a, b));
    let minus = chromatic(n, &deleted);
    // merge b into a, relabel vertices above b downward
    let relabel = |v: usize| {
        let v = if v == b { a } else { v };
        if v > b {
            v - 1
        } else {
            v
        }
    };
    let contracted: BTreeSet<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| (relabel(x), relabel(y)))
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    let quotient = chromatic(n - 1, &contracted);
    let mut out = minus;
    for (d, c) in quotient.iter().enumerate() {
        out[d] -= c;
    }
    out
}

/// Underlying simple graph of a loopless multigraph.
pub fn simple_edges(g: &MultiGraph) -> BTreeSet<(usize, usize)> {
    g.edges()
        .iter()
        .map(|e| (e.tail.0.min(e.head.0), e.tail.0.max(e.head.0)))
        .collect()
}

pub fn coefficient_map(p: &[i128]) -> BTreeMap<u32, i128> {
    p.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| (d as u32, c))
        .collect()
}
