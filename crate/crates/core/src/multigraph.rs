//! Oriented multigraphs with stable edge identities.
//!
//! Loops and parallel edges are allowed. The `(tail, head)` pair of each edge
//! is the fixed reference orientation used by every signed computation in the
//! crate. Graphs are immutable values: [`MultiGraph::delete`] and
//! [`MultiGraph::contract`] return new graphs in which every surviving edge
//! keeps its [`EdgeId`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A set of edges, ordered by id.
pub type EdgeSet = BTreeSet<EdgeId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite to `v`. For a loop this is `v` itself.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// A finite oriented multigraph. Edges are kept sorted by id, so two graphs
/// with the same vertex count and the same edges compare equal regardless of
/// insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for e in &edges {
            for v in [e.tail, e.head] {
                if v.0 >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v.0,
                        num_vertices,
                    });
                }
            }
        }
        edges.sort_by_key(|e| e.id);
        if let Some(w) = edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateEdge(w[0].id));
        }
        Ok(MultiGraph {
            num_vertices,
            edges,
        })
    }

    /// Builds a graph from `(tail, head)` pairs, numbering edges `0..`.
    pub fn from_pairs(num_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            num_vertices,
            pairs.iter().enumerate().map(|(i, &(t, h))| Edge {
                id: EdgeId(i),
                tail: VertexId(t),
                head: VertexId(h),
            }),
        )
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        MultiGraph {
            num_vertices: n,
            edges: Vec::new(),
        }
    }

    /// Directed path `0 → 1 → … → n-1`.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs).expect("path endpoints are in range")
    }

    /// Cyclically oriented cycle on `n ≥ 1` vertices: a loop for `n = 1`, a
    /// digon for `n = 2`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1, "a cycle needs at least one vertex");
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_pairs(n, &pairs).expect("cycle endpoints are in range")
    }

    /// Complete graph, edges oriented from the smaller to the larger vertex.
    pub fn complete(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        Self::from_pairs(n, &pairs).expect("complete graph endpoints are in range")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edge_ids().collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices).map(VertexId)
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.position(id).map(|p| &self.edges[p])
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.position(id).is_ok()
    }

    /// Index of `id` in [`MultiGraph::edges`]. Bit `i` of an edge mask refers
    /// to `edges()[i]`.
    pub fn position(&self, id: EdgeId) -> Result<usize> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map_err(|_| Error::UnknownEdge(id))
    }

    /// Bit mask of an edge set over edge positions.
    ///
    /// Panics if the graph has more than 64 edges.
    pub fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a EdgeId>) -> Result<u64> {
        assert!(
            self.edges.len() <= 64,
            "edge masks support at most 64 edges"
        );
        let mut mask = 0u64;
        for &id in set {
            mask |= 1 << self.position(id)?;
        }
        Ok(mask)
    }

    pub fn set_of_mask(&self, mask: u64) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.id)
            .collect()
    }

    fn check_edges<'a>(&self, set: impl IntoIterator<Item = &'a EdgeId>) -> Result<()> {
        for &id in set {
            self.position(id)?;
        }
        Ok(())
    }

    /// Number of components and a component label for every vertex. Labels
    /// are numbered in order of first appearance by vertex index.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.num_vertices);
        for e in &self.edges {
            uf.union(e.tail.0, e.head.0);
        }
        let mut labels = vec![usize::MAX; self.num_vertices];
        let mut root_label = vec![usize::MAX; self.num_vertices];
        let mut count = 0;
        for (v, label) in labels.iter_mut().enumerate() {
            let r = uf.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            *label = root_label[r];
        }
        (count, labels)
    }

    /// Component count of the spanning subgraph on the positions in `mask`.
    pub(crate) fn component_count_of_mask(&self, mask: u64) -> usize {
        let mut uf = UnionFind::new(self.num_vertices);
        let mut count = self.num_vertices;
        for (i, e) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 && uf.union(e.tail.0, e.head.0) {
                count -= 1;
            }
        }
        count
    }

    /// `true` iff the edges in `mask` contain no cycle (loops count as cycles).
    pub(crate) fn is_forest_mask(&self, mask: u64) -> bool {
        let mut uf = UnionFind::new(self.num_vertices);
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .all(|(_, e)| uf.union(e.tail.0, e.head.0))
    }

    pub fn component_count(&self) -> usize {
        self.components().0
    }

    /// `r(X) = |V| - c(G|X)`.
    pub fn rank(&self, x: &EdgeSet) -> Result<usize> {
        self.check_edges(x)?;
        let mut uf = UnionFind::new(self.num_vertices);
        let mut merged = 0;
        for e in &self.edges {
            if x.contains(&e.id) && uf.union(e.tail.0, e.head.0) {
                merged += 1;
            }
        }
        Ok(merged)
    }

    /// Rank of the whole edge set, `|V| - c(G)`.
    pub fn full_rank(&self) -> usize {
        self.num_vertices - self.component_count()
    }

    pub fn is_loop(&self, e: EdgeId) -> Result<bool> {
        Ok(self.edge(e)?.is_loop())
    }

    pub fn is_bridge(&self, e: EdgeId) -> Result<bool> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(false);
        }
        let without = self.delete(&EdgeSet::from([e]))?;
        Ok(without.component_count() > self.component_count())
    }

    /// `G - S`: same vertices, edges in `removed` dropped.
    pub fn delete(&self, removed: &EdgeSet) -> Result<MultiGraph> {
        self.check_edges(removed)?;
        Ok(MultiGraph {
            num_vertices: self.num_vertices,
            edges: self
                .edges
                .iter()
                .filter(|e| !removed.contains(&e.id))
                .copied()
                .collect(),
        })
    }

    /// `G|X`: the spanning subgraph with edge set `kept`.
    pub fn restrict_to(&self, kept: &EdgeSet) -> Result<MultiGraph> {
        self.check_edges(kept)?;
        Ok(MultiGraph {
            num_vertices: self.num_vertices,
            edges: self
                .edges
                .iter()
                .filter(|e| kept.contains(&e.id))
                .copied()
                .collect(),
        })
    }

    /// `G/e` for a link `e`. The merged vertex takes the smaller endpoint
    /// index; vertices above the larger endpoint shift down by one.
    pub fn contract(&self, e: EdgeId) -> Result<MultiGraph> {
        let edge = *self.edge(e)?;
        if edge.is_loop() {
            return Err(Error::ContractLoop(e));
        }
        let keep = edge.tail.0.min(edge.head.0);
        let gone = edge.tail.0.max(edge.head.0);
        let remap = |v: VertexId| {
            let v = v.0;
            VertexId(match v.cmp(&gone) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => v - 1,
            })
        };
        Ok(MultiGraph {
            num_vertices: self.num_vertices - 1,
            edges: self
                .edges
                .iter()
                .filter(|x| x.id != e)
                .map(|x| Edge {
                    id: x.id,
                    tail: remap(x.tail),
                    head: remap(x.head),
                })
                .collect(),
        })
    }

    /// Same graph with the orientation of `e` reversed.
    pub fn reverse_edge(&self, e: EdgeId) -> Result<MultiGraph> {
        let p = self.position(e)?;
        let mut g = self.clone();
        let edge = &mut g.edges[p];
        std::mem::swap(&mut edge.tail, &mut edge.head);
        Ok(g)
    }

    /// The components as separate graphs, vertices renumbered densely in
    /// increasing order, edge ids kept.
    pub fn split_components(&self) -> Vec<MultiGraph> {
        let (count, labels) = self.components();
        let mut local = vec![0usize; self.num_vertices];
        let mut sizes = vec![0usize; count];
        for v in 0..self.num_vertices {
            local[v] = sizes[labels[v]];
            sizes[labels[v]] += 1;
        }
        let mut parts: Vec<MultiGraph> = sizes.iter().map(|&n| MultiGraph::empty(n)).collect();
        for e in &self.edges {
            let c = labels[e.tail.0];
            parts[c].edges.push(Edge {
                id: e.id,
                tail: VertexId(local[e.tail.0]),
                head: VertexId(local[e.head.0]),
            });
        }
        parts
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.num_vertices)?;
        for e in &self.edges {
            writeln!(f, "edge {} {} {}", e.id.0, e.tail.0, e.head.0)?;
        }
        Ok(())
    }
}

/// Parses the line-oriented text format:
///
/// ```text
/// # comment
/// vertices 3
/// edge 0 0 1
/// edge 1 1 2
/// ```
impl FromStr for MultiGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut num_vertices = None;
        let mut edges = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            let mut words = line.split_whitespace();
            let Some(keyword) = words.next() else {
                continue;
            };
            let nums: Vec<usize> = words
                .map(|w| {
                    w.parse::<usize>().map_err(|_| {
                        Error::parse(line_no, format!("expected an integer, got {w:?}"))
                    })
                })
                .collect::<Result<_>>()?;
            match (keyword, nums.as_slice()) {
                ("vertices", &[n]) => {
                    if num_vertices.replace(n).is_some() {
                        return Err(Error::parse(line_no, "duplicate `vertices` line"));
                    }
                }
                ("edge", &[id, tail, head]) => {
                    if num_vertices.is_none() {
                        return Err(Error::parse(line_no, "`edge` before `vertices`"));
                    }
                    edges.push(Edge {
                        id: EdgeId(id),
                        tail: VertexId(tail),
                        head: VertexId(head),
                    });
                }
                ("vertices", _) => return Err(Error::parse(line_no, "usage: vertices <n>")),
                ("edge", _) => return Err(Error::parse(line_no, "usage: edge <id> <tail> <head>")),
                (other, _) => {
                    return Err(Error::parse(line_no, format!("unknown keyword {other:?}")))
                }
            }
        }
        let n = num_vertices.ok_or_else(|| Error::invalid("missing `vertices` line"))?;
        MultiGraph::new(n, edges).map_err(|e| Error::invalid(e.to_string()))
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
