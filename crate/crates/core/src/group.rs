//! Finite abelian groups `Z_m1 × … × Z_mr`, edge functions, coboundaries and
//! the exhaustive counters for `(A,f)`-colorings and `(A,f)`-tensions.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::cycles::Cycle;
use crate::error::{Error, Result};
use crate::multigraph::{strip_comment, EdgeId, MultiGraph};
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup(
                "need at least one cyclic factor".into(),
            ));
        }
        if moduli.contains(&0) {
            return Err(Error::InvalidGroup("moduli must be at least 1".into()));
        }
        moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        Ok(AbelianGroup { moduli })
    }

    pub fn cyclic(m: u64) -> Self {
        Self::new(vec![m]).expect("positive modulus")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.moduli.len()],
        }
    }

    /// Element from residues, reduced modulo each factor.
    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.moduli.len() {
            return Err(Error::InvalidGroup(format!(
                "element has {} components, group has {}",
                residues.len(),
                self.moduli.len()
            )));
        }
        Ok(GroupElement {
            residues: residues
                .iter()
                .zip(&self.moduli)
                .map(|(r, m)| r % m)
                .collect(),
        })
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        let ok = a.residues.len() == self.moduli.len()
            && a.residues.iter().zip(&self.moduli).all(|(r, m)| r < m);
        if ok {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                expected: self.moduli.clone(),
                found: a.residues.clone(),
            })
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            residues: (0..self.moduli.len())
                .map(|i| (a.residues[i] + b.residues[i]) % self.moduli[i])
                .collect(),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &m)| (m - r) % m)
                .collect(),
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// `a` added to itself `z` times (negated for `z < 0`).
    pub fn scale(&self, a: &GroupElement, z: i64) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &m)| {
                    let m = m as i128;
                    ((r as i128 * z as i128).rem_euclid(m)) as u64
                })
                .collect(),
        })
    }

    /// All elements in odometer order, last factor fastest.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// The `index`-th element in [`AbelianGroup::elements`] order.
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut residues = vec![0; self.moduli.len()];
        for (slot, &m) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = index % m;
            index /= m;
        }
        GroupElement { residues }
    }

    pub fn index_of(&self, a: &GroupElement) -> u64 {
        a.residues
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&r, &m)| acc * m + r)
    }

    /// Every abelian group of order `n` up to isomorphism, as invariant-factor
    /// products `Z_d1 × … × Z_dr` with `d1 | d2 | … | dr`.
    pub fn all_of_order(n: u64) -> Vec<AbelianGroup> {
        fn chains(n: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if n == 1 {
                out.push(acc.clone());
                return;
            }
            let mut d = min.max(2);
            while d <= n {
                let last_ok = acc.last().is_none_or(|&p| d.is_multiple_of(p));
                if n.is_multiple_of(d) && last_ok {
                    let rest = n / d;
                    // remaining factors are multiples of d, so rest must be 1 or divisible by d
                    if rest == 1 || rest.is_multiple_of(d) {
                        acc.push(d);
                        chains(rest, d, acc, out);
                        acc.pop();
                    }
                }
                d += 1;
            }
        }
        if n == 1 {
            return vec![AbelianGroup::cyclic(1)];
        }
        let mut out = Vec::new();
        chains(n, 2, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|m| AbelianGroup::new(m).expect("nonempty positive moduli"))
            .collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
        write!(f, "Z{}", parts.join("x"))
    }
}

/// Parses `Z4`, `Z2x2`, or `Z2xZ2`.
impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroup(format!("expected Z<m1>x<m2>x..., got {s:?}"));
        let body = s.trim().strip_prefix(['Z', 'z']).ok_or_else(bad)?;
        let moduli = body
            .split(['x', 'X'])
            .map(|part| {
                part.trim()
                    .trim_start_matches(['Z', 'z'])
                    .parse::<u64>()
                    .map_err(|_| bad())
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianGroup::new(moduli)
    }
}

/// A map `f: E(G) → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFunction {
    group: AbelianGroup,
    values: BTreeMap<EdgeId, GroupElement>,
}

impl EdgeFunction {
    pub fn new(group: AbelianGroup, values: BTreeMap<EdgeId, GroupElement>) -> Result<Self> {
        for v in values.values() {
            group.check(v)?;
        }
        Ok(EdgeFunction { group, values })
    }

    pub fn zero(g: &MultiGraph, group: &AbelianGroup) -> Self {
        EdgeFunction {
            group: group.clone(),
            values: g.edge_ids().map(|e| (e, group.zero())).collect(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn get(&self, e: EdgeId) -> Result<&GroupElement> {
        self.values.get(&e).ok_or(Error::MissingEdgeValue(e))
    }

    pub fn values(&self) -> &BTreeMap<EdgeId, GroupElement> {
        &self.values
    }

    pub fn set(&mut self, e: EdgeId, value: GroupElement) -> Result<()> {
        self.group.check(&value)?;
        self.values.insert(e, value);
        Ok(())
    }

    /// Fails unless every edge of `g` has a value.
    pub fn check_total(&self, g: &MultiGraph) -> Result<()> {
        for e in g.edge_ids() {
            self.get(e)?;
        }
        Ok(())
    }

    /// The values on the edges of `g` only.
    pub fn restrict(&self, g: &MultiGraph) -> Result<EdgeFunction> {
        Ok(EdgeFunction {
            group: self.group.clone(),
            values: g
                .edge_ids()
                .map(|e| Ok((e, self.get(e)?.clone())))
                .collect::<Result<_>>()?,
        })
    }

    /// Parses lines `f <edge-id> <r1> <r2> ...` against `group`.
    pub fn parse(text: &str, group: &AbelianGroup) -> Result<EdgeFunction> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            let mut words = line.split_whitespace();
            match words.next() {
                None => continue,
                Some("f") => {}
                Some(other) => {
                    return Err(Error::parse(line_no, format!("unknown keyword {other:?}")))
                }
            }
            let nums: Vec<u64> = words
                .map(|w| {
                    w.parse::<u64>().map_err(|_| {
                        Error::parse(line_no, format!("expected an integer, got {w:?}"))
                    })
                })
                .collect::<Result<_>>()?;
            let Some((&id, residues)) = nums.split_first() else {
                return Err(Error::parse(line_no, "usage: f <edge-id> <r1> <r2> ..."));
            };
            if residues.len() != group.moduli().len() {
                return Err(Error::parse(
                    line_no,
                    format!(
                        "{} residues given, group {group} needs {}",
                        residues.len(),
                        group.moduli().len()
                    ),
                ));
            }
            let value = group
                .element(residues)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
            if values.insert(EdgeId(id as usize), value).is_some() {
                return Err(Error::parse(
                    line_no,
                    format!("duplicate value for edge {id}"),
                ));
            }
        }
        Ok(EdgeFunction {
            group: group.clone(),
            values,
        })
    }
}

impl fmt::Display for EdgeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, v) in &self.values {
            write!(f, "f {}", e.0)?;
            for r in v.residues() {
                write!(f, " {r}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `c: V(G) → A`, indexed by vertex.
pub type VertexColoring = Vec<GroupElement>;

/// `δc(e) = c(head) - c(tail)` for links, `0` for loops.
pub fn coboundary(
    g: &MultiGraph,
    group: &AbelianGroup,
    c: &VertexColoring,
) -> Result<EdgeFunction> {
    if c.len() != g.num_vertices() {
        return Err(Error::InvalidGroup(format!(
            "coloring has {} entries, graph has {} vertices",
            c.len(),
            g.num_vertices()
        )));
    }
    let mut values = BTreeMap::new();
    for e in g.edges() {
        let v = if e.is_loop() {
            group.zero()
        } else {
            group.sub(&c[e.head.0], &c[e.tail.0])?
        };
        values.insert(e.id, v);
    }
    Ok(EdgeFunction {
        group: group.clone(),
        values,
    })
}

/// `Σ η(e)·f(e)` over the edges of `c`.
pub fn cycle_sum(g: &MultiGraph, f: &EdgeFunction, c: &Cycle) -> Result<GroupElement> {
    let group = f.group();
    let mut total = group.zero();
    for (e, sign) in c.signs() {
        g.position(e)?;
        total = group.add(&total, &group.scale(f.get(e)?, sign as i64)?)?;
    }
    Ok(total)
}

/// Group elements as dense indices with precomputed subtraction, for the
/// exhaustive counters.
struct IndexedGroup {
    order: usize,
    moduli: Vec<u64>,
    table: Option<Vec<u32>>,
}

impl IndexedGroup {
    const TABLE_LIMIT: usize = 1 << 10;

    fn new(group: &AbelianGroup) -> Self {
        let order = group.order() as usize;
        let mut ig = IndexedGroup {
            order,
            moduli: group.moduli.clone(),
            table: None,
        };
        if order <= Self::TABLE_LIMIT {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = ig.sub_slow(a, b) as u32;
                }
            }
            ig.table = Some(table);
        }
        ig
    }

    fn sub_slow(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut digits = Vec::with_capacity(self.moduli.len());
        for &m in self.moduli.iter().rev() {
            digits.push(((a % m) + m - (b % m)) % m);
            a /= m;
            b /= m;
        }
        digits
            .iter()
            .rev()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&d, &m)| acc * m + d) as usize
    }

    /// Index of `a - b`.
    fn sub(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.sub_slow(a, b),
        }
    }
}

fn coloring_count_needed(g: &MultiGraph, group: &AbelianGroup, budget: &Budget) -> Result<()> {
    let needed = (group.order() as u128).checked_pow(g.num_vertices() as u32);
    match needed {
        Some(n) if n <= budget.max_iterations as u128 => Ok(()),
        _ => Err(Error::BudgetExceeded {
            what: "vertex colorings",
            needed: format!("{}^{}", group.order(), g.num_vertices()),
            limit: budget.max_iterations.to_string(),
        }),
    }
}

/// Walks every coloring `V → A` as a vector of element indices, calling
/// `visit` with the coboundary-minus-f test results precomputed per edge.
fn for_each_coloring(
    g: &MultiGraph,
    group: &AbelianGroup,
    f: &EdgeFunction,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    f.check_total(g)?;
    if f.group() != group {
        return Err(Error::GroupMismatch {
            expected: group.moduli.clone(),
            found: f.group().moduli.clone(),
        });
    }
    let n = g.num_vertices();
    let order = group.order() as usize;
    let mut coloring = vec![0usize; n];
    loop {
        visit(&coloring);
        // odometer, last vertex fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            coloring[i] += 1;
            if coloring[i] < order {
                break;
            }
            coloring[i] = 0;
        }
    }
}

/// Number of colorings `c: V → A` with `c(head) - c(tail) ≠ f(e)` on every
/// edge. A loop with `f(e) = 0` admits none.
pub fn count_colorings(
    g: &MultiGraph,
    group: &AbelianGroup,
    f: &EdgeFunction,
    budget: &Budget,
) -> Result<u64> {
    coloring_count_needed(g, group, budget)?;
    let ig = IndexedGroup::new(group);
    let forbidden = forbidden_indices(g, group, f)?;
    let mut count = 0u64;
    for_each_coloring(g, group, f, |c| {
        let proper = g
            .edges()
            .iter()
            .zip(&forbidden)
            .all(|(e, &bad)| ig.sub(c[e.head.0], c[e.tail.0]) != bad);
        if proper {
            count += 1;
        }
    })?;
    Ok(count)
}

/// Number of distinct coboundaries `δc` that differ from `f` on every edge.
/// Every coloring is visited; coboundaries are deduplicated by value.
pub fn count_tensions(
    g: &MultiGraph,
    group: &AbelianGroup,
    f: &EdgeFunction,
    budget: &Budget,
) -> Result<u64> {
    coloring_count_needed(g, group, budget)?;
    let ig = IndexedGroup::new(group);
    let forbidden = forbidden_indices(g, group, f)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for_each_coloring(g, group, f, |c| {
        let tension: Vec<u32> = g
            .edges()
            .iter()
            .map(|e| ig.sub(c[e.head.0], c[e.tail.0]) as u32)
            .collect();
        if tension
            .iter()
            .zip(&forbidden)
            .all(|(&t, &bad)| t as usize != bad)
        {
            seen.insert(tension);
        }
    })?;
    Ok(seen.len() as u64)
}

fn forbidden_indices(g: &MultiGraph, group: &AbelianGroup, f: &EdgeFunction) -> Result<Vec<usize>> {
    g.edge_ids()
        .map(|e| {
            let v = f.get(e)?;
            group.check(v)?;
            Ok(group.index_of(v) as usize)
        })
        .collect()
}
