//! Cycles, bonds, broken cycles and the bond-compatible edge sets.
//!
//! A cycle is a connected 2-regular subgraph and is identified by its edge
//! set. A loop is a cycle of length one and a pair of parallel edges is a
//! cycle of length two.

use std::collections::{BTreeMap, BTreeSet};

use crate::assigning::Assigning;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, EdgeSet, MultiGraph, VertexId};

/// A cycle together with its signed incidence vector.
///
/// `eta` holds `+1` for edges whose orientation agrees with one traversal
/// direction and `-1` for the others. The direction is chosen so that the
/// smallest edge id gets `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    edges: EdgeSet,
    eta: BTreeMap<EdgeId, i8>,
}

impl Cycle {
    /// Validates that `edges` is a cycle of `g` and computes its signs.
    pub fn new(g: &MultiGraph, edges: EdgeSet) -> Result<Cycle> {
        let eta = traverse(g, &edges)?;
        Ok(Cycle { edges, eta })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sign of `e` in this cycle, `0` when `e` is not on it.
    pub fn sign(&self, e: EdgeId) -> i8 {
        self.eta.get(&e).copied().unwrap_or(0)
    }

    pub fn signs(&self) -> impl Iterator<Item = (EdgeId, i8)> + '_ {
        self.eta.iter().map(|(&e, &s)| (e, s))
    }
}

/// Walks the cycle starting along its smallest edge in that edge's own
/// direction, recording `+1` for every edge traversed tail to head.
fn traverse(g: &MultiGraph, edges: &EdgeSet) -> Result<BTreeMap<EdgeId, i8>> {
    let not_cycle = || Error::NotACycle(edges.iter().copied().collect());
    let Some(&first) = edges.iter().next() else {
        return Err(not_cycle());
    };
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &id in edges {
        let e = g.edge(id)?;
        *degree.entry(e.tail).or_default() += 1;
        *degree.entry(e.head).or_default() += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return Err(not_cycle());
    }

    let start = *g.edge(first)?;
    let mut eta = BTreeMap::from([(first, 1i8)]);
    if start.is_loop() {
        return Ok(eta);
    }
    let mut at = start.head;
    while at != start.tail {
        let next = edges
            .iter()
            .filter(|id| !eta.contains_key(id))
            .map(|&id| g.edge(id).expect("validated above"))
            .find(|e| e.tail == at || e.head == at)
            .ok_or_else(not_cycle)?;
        eta.insert(next.id, if next.tail == at { 1 } else { -1 });
        at = next.other(at);
    }
    // all vertices have degree two, so stopping early means a second component
    if eta.len() != edges.len() {
        return Err(not_cycle());
    }
    Ok(eta)
}

/// Every cycle of `g`, ordered by edge set.
///
/// Loops are reported directly. Longer cycles come from a depth-first search
/// of simple paths that start at the cycle's smallest vertex and only visit
/// larger vertices, so each cycle is found once per traversal direction;
/// duplicates collapse in the edge-set ordering.
pub fn enumerate_cycles(g: &MultiGraph) -> Vec<Cycle> {
    let n = g.num_vertices();
    let mut adjacency: Vec<Vec<(EdgeId, usize)>> = vec![Vec::new(); n];
    let mut found: BTreeSet<EdgeSet> = BTreeSet::new();
    for e in g.edges() {
        if e.is_loop() {
            found.insert(EdgeSet::from([e.id]));
        } else {
            adjacency[e.tail.0].push((e.id, e.head.0));
            adjacency[e.head.0].push((e.id, e.tail.0));
        }
    }

    struct Search<'a> {
        adjacency: &'a [Vec<(EdgeId, usize)>],
        start: usize,
        on_path: Vec<bool>,
        path: Vec<EdgeId>,
        found: &'a mut BTreeSet<EdgeSet>,
    }

    impl Search<'_> {
        fn extend(&mut self, v: usize) {
            for &(e, w) in &self.adjacency[v] {
                if self.path.contains(&e) {
                    continue;
                }
                if w == self.start {
                    let mut cycle: EdgeSet = self.path.iter().copied().collect();
                    cycle.insert(e);
                    self.found.insert(cycle);
                } else if w > self.start && !self.on_path[w] {
                    self.on_path[w] = true;
                    self.path.push(e);
                    self.extend(w);
                    self.path.pop();
                    self.on_path[w] = false;
                }
            }
        }
    }

    for start in 0..n {
        let mut search = Search {
            adjacency: &adjacency,
            start,
            on_path: vec![false; n],
            path: Vec::new(),
            found: &mut found,
        };
        search.on_path[start] = true;
        search.extend(start);
    }

    found
        .into_iter()
        .map(|edges| Cycle::new(g, edges).expect("search yields cycles"))
        .collect()
}

/// Signed incidence of `c` over all edges of `g`, in edge-id order.
pub fn signed_incidence(g: &MultiGraph, c: &Cycle) -> Result<Vec<(EdgeId, i8)>> {
    let checked = Cycle::new(g, c.edges.clone())?;
    if checked != *c {
        return Err(Error::NotACycle(c.edges.iter().copied().collect()));
    }
    Ok(g.edge_ids().map(|e| (e, c.sign(e))).collect())
}

/// A minimal nonempty edge cut.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bond {
    pub edges: EdgeSet,
}

/// Every bond of `g`, ordered by edge set.
///
/// For each component, every split of its vertices into two sides that both
/// induce connected subgraphs gives one bond: the edges running between them.
pub fn enumerate_bonds(g: &MultiGraph) -> Vec<Bond> {
    let (count, labels) = g.components();
    let mut bonds = BTreeSet::new();
    for comp in 0..count {
        let members: Vec<usize> = (0..g.num_vertices())
            .filter(|&v| labels[v] == comp)
            .collect();
        if members.len() < 2 {
            continue;
        }
        assert!(
            members.len() <= 63,
            "bond enumeration supports at most 63 vertices per component"
        );
        // the first member always stays on side A, so each split is seen once
        let rest = members.len() - 1;
        for bits in 0..(1u64 << rest) - 1 {
            let mut side_a = vec![false; g.num_vertices()];
            side_a[members[0]] = true;
            for (i, &v) in members[1..].iter().enumerate() {
                side_a[v] = bits >> i & 1 == 1;
            }
            let in_a: Vec<usize> = members.iter().copied().filter(|&v| side_a[v]).collect();
            let in_b: Vec<usize> = members.iter().copied().filter(|&v| !side_a[v]).collect();
            if induces_connected(g, &in_a) && induces_connected(g, &in_b) {
                let cut: EdgeSet = g
                    .edges()
                    .iter()
                    .filter(|e| side_a[e.tail.0] != side_a[e.head.0])
                    .map(|e| e.id)
                    .collect();
                bonds.insert(Bond { edges: cut });
            }
        }
    }
    bonds.into_iter().collect()
}

fn induces_connected(g: &MultiGraph, vertices: &[usize]) -> bool {
    let Some(&first) = vertices.first() else {
        return false;
    };
    let mut inside = vec![false; g.num_vertices()];
    for &v in vertices {
        inside[v] = true;
    }
    let mut reached = vec![false; g.num_vertices()];
    reached[first] = true;
    let mut stack = vec![first];
    let mut seen = 1;
    while let Some(v) = stack.pop() {
        for e in g.edges() {
            let w = if e.tail.0 == v {
                e.head.0
            } else if e.head.0 == v {
                e.tail.0
            } else {
                continue;
            };
            if inside[w] && !reached[w] {
                reached[w] = true;
                seen += 1;
                stack.push(w);
            }
        }
    }
    seen == vertices.len()
}

/// A total order on the edges of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrder {
    sequence: Vec<EdgeId>,
    rank: BTreeMap<EdgeId, usize>,
}

impl LinearOrder {
    /// Orders edges by the given sequence, smallest first. The sequence must
    /// be a permutation of the edges of `g`.
    pub fn new(g: &MultiGraph, sequence: Vec<EdgeId>) -> Result<Self> {
        let rank: BTreeMap<EdgeId, usize> =
            sequence.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        if rank.len() != sequence.len() {
            return Err(Error::InvalidOrder("edge listed twice".into()));
        }
        for &e in &sequence {
            g.position(e)?;
        }
        if sequence.len() != g.num_edges() {
            return Err(Error::InvalidOrder(format!(
                "order lists {} edges, graph has {}",
                sequence.len(),
                g.num_edges()
            )));
        }
        Ok(LinearOrder { sequence, rank })
    }

    /// Increasing edge id.
    pub fn increasing(g: &MultiGraph) -> Self {
        Self::new(g, g.edge_ids().collect()).expect("edge ids form a permutation")
    }

    /// Parses `e5,e2,e7` or `5,2,7`.
    pub fn parse(g: &MultiGraph, text: &str) -> Result<Self> {
        let sequence = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.trim_start_matches(['e', 'E'])
                    .parse::<usize>()
                    .map(EdgeId)
                    .map_err(|_| Error::InvalidOrder(format!("bad edge id {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, sequence)
    }

    pub fn sequence(&self) -> &[EdgeId] {
        &self.sequence
    }

    pub fn rank_of(&self, e: EdgeId) -> usize {
        self.rank[&e]
    }

    pub fn max_of<'a>(&self, set: impl IntoIterator<Item = &'a EdgeId>) -> Option<EdgeId> {
        set.into_iter().copied().max_by_key(|e| self.rank[e])
    }

    pub fn min_of<'a>(&self, set: impl IntoIterator<Item = &'a EdgeId>) -> Option<EdgeId> {
        set.into_iter().copied().min_by_key(|e| self.rank[e])
    }
}

/// Edge sets `E(C) - max(E(C))` for the cycles `C` with `a(C) = 0`, without
/// duplicates. A loop valued 0 gives the empty set.
pub fn broken_cycles(g: &MultiGraph, a: &Assigning, ord: &LinearOrder) -> Result<Vec<EdgeSet>> {
    let mut broken = BTreeSet::new();
    for c in enumerate_cycles(g) {
        if !a.value(c.edges())? {
            let mut rest = c.edges().clone();
            let top = ord.max_of(c.edges()).expect("cycles are nonempty");
            rest.remove(&top);
            broken.insert(rest);
        }
    }
    Ok(broken.into_iter().collect())
}

/// Iterator over the edge sets `X` with `X ∩ B ≠ {min B}` for every bond `B`.
pub struct CompatibleSets<'g> {
    g: &'g MultiGraph,
    bonds: Vec<(u64, u64)>,
    next: u64,
    end: u64,
}

impl CompatibleSets<'_> {
    /// Masks rather than edge sets; bit `i` is `g.edges()[i]`.
    pub(crate) fn next_mask(&mut self) -> Option<u64> {
        while self.next < self.end {
            let x = self.next;
            self.next += 1;
            if self.bonds.iter().all(|&(bond, min)| x & bond != min) {
                return Some(x);
            }
        }
        None
    }
}

impl Iterator for CompatibleSets<'_> {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        self.next_mask().map(|m| self.g.set_of_mask(m))
    }
}

/// All bond-compatible edge sets in increasing mask order.
///
/// Panics if `g` has 64 or more edges.
pub fn compatible_sets<'g>(g: &'g MultiGraph, ord: &LinearOrder) -> CompatibleSets<'g> {
    assert!(
        g.num_edges() < 64,
        "compatible set enumeration supports fewer than 64 edges"
    );
    let bonds = enumerate_bonds(g)
        .into_iter()
        .map(|b| {
            let mask = g.mask_of(&b.edges).expect("bond edges belong to g");
            let min = ord.min_of(&b.edges).expect("bonds are nonempty");
            (mask, g.mask_of([&min]).expect("edge of g"))
        })
        .collect();
    CompatibleSets {
        g,
        bonds,
        next: 0,
        end: 1u64 << g.num_edges(),
    }
}
