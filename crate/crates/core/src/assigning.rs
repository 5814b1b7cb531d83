//! Zero-one assignings on the cycles of a graph.
//!
//! An [`Assigning`] stores one bit per cycle, keyed by the cycle's edge set.
//! It also records whether it is known to be induced by some edge function
//! (admissible); the broken-cycle and bond expansions only hold for those.

use std::collections::BTreeMap;
use std::fmt;

use crate::cycles::enumerate_cycles;
use crate::error::{Error, Result};
use crate::group::{cycle_sum, AbelianGroup, EdgeFunction};
use crate::multigraph::{strip_comment, EdgeId, EdgeSet, MultiGraph};
use crate::Budget;

#[derive(Debug, Clone)]
pub struct Assigning {
    values: BTreeMap<EdgeSet, bool>,
    admissible: bool,
}

/// Equality and hashing look at the values only.
impl PartialEq for Assigning {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for Assigning {}

impl std::hash::Hash for Assigning {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl Assigning {
    /// Checks that `values` covers exactly the cycles of `g`.
    pub fn from_values(g: &MultiGraph, values: BTreeMap<EdgeSet, bool>) -> Result<Self> {
        let cycles = enumerate_cycles(g);
        for c in &cycles {
            if !values.contains_key(c.edges()) {
                return Err(Error::IncompleteAssigning(
                    c.edges().iter().copied().collect(),
                ));
            }
        }
        if values.len() != cycles.len() {
            let extra = values
                .keys()
                .find(|k| !cycles.iter().any(|c| c.edges() == *k))
                .expect("more keys than cycles");
            return Err(Error::UnexpectedCycle(extra.iter().copied().collect()));
        }
        let admissible = values.values().all(|v| !v);
        Ok(Assigning { values, admissible })
    }

    pub fn from_fn(g: &MultiGraph, mut value: impl FnMut(&EdgeSet) -> bool) -> Self {
        let values: BTreeMap<EdgeSet, bool> = enumerate_cycles(g)
            .into_iter()
            .map(|c| {
                let v = value(c.edges());
                (c.edges().clone(), v)
            })
            .collect();
        let admissible = values.values().all(|v| !v);
        Assigning { values, admissible }
    }

    /// `α ≡ 0`, which is always admissible (take `f ≡ 0`).
    pub fn zero(g: &MultiGraph) -> Self {
        Self::from_fn(g, |_| false)
    }

    /// Value of the cycle with edge set `cycle`: `true` means 1.
    pub fn value(&self, cycle: &EdgeSet) -> Result<bool> {
        self.values
            .get(cycle)
            .copied()
            .ok_or_else(|| Error::IncompleteAssigning(cycle.iter().copied().collect()))
    }

    pub fn values(&self) -> &BTreeMap<EdgeSet, bool> {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `true` when the assigning is known to be induced by an edge function.
    pub fn is_known_admissible(&self) -> bool {
        self.admissible
    }

    pub(crate) fn mark_admissible(&mut self) {
        self.admissible = true;
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Assigning) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .all(|(k, &v)| other.values.get(k).is_some_and(|&w| !v || w))
    }

    /// Parses lines `cycle <edge ids...> = <0|1>` and checks totality on `g`.
    pub fn parse(text: &str, g: &MultiGraph) -> Result<Assigning> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let Some(rest) = line.strip_prefix("cycle") else {
                return Err(Error::parse(line_no, "expected `cycle <ids...> = <0|1>`"));
            };
            let Some((ids, value)) = rest.split_once('=') else {
                return Err(Error::parse(line_no, "missing `=`"));
            };
            let edges: EdgeSet = ids
                .split_whitespace()
                .map(|w| {
                    w.parse::<usize>()
                        .map(EdgeId)
                        .map_err(|_| Error::parse(line_no, format!("bad edge id {w:?}")))
                })
                .collect::<Result<_>>()?;
            let value = match value.trim() {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("value must be 0 or 1, got {other:?}"),
                    ))
                }
            };
            if values.insert(edges, value).is_some() {
                return Err(Error::parse(line_no, "cycle listed twice"));
            }
        }
        Assigning::from_values(g, values)
    }
}

impl fmt::Display for Assigning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (cycle, &v) in &self.values {
            write!(f, "cycle")?;
            for e in cycle {
                write!(f, " {}", e.0)?;
            }
            writeln!(f, " = {}", v as u8)?;
        }
        Ok(())
    }
}

/// `α_{D,f}`: a cycle gets 0 exactly when its signed sum of `f` vanishes.
pub fn induced(g: &MultiGraph, group: &AbelianGroup, f: &EdgeFunction) -> Result<Assigning> {
    if f.group() != group {
        return Err(Error::GroupMismatch {
            expected: group.moduli().to_vec(),
            found: f.group().moduli().to_vec(),
        });
    }
    let zero = group.zero();
    let mut values = BTreeMap::new();
    for c in enumerate_cycles(g) {
        let nonzero = cycle_sum(g, f, &c)? != zero;
        values.insert(c.edges().clone(), nonzero);
    }
    Ok(Assigning {
        values,
        admissible: true,
    })
}

/// Assigning of `G - e`: the cycles avoiding `e` keep their values.
pub fn restrict_delete(a: &Assigning, g: &MultiGraph, e: EdgeId) -> Result<Assigning> {
    g.position(e)?;
    Ok(Assigning {
        values: a
            .values
            .iter()
            .filter(|(k, _)| !k.contains(&e))
            .map(|(k, &v)| (k.clone(), v))
            .collect(),
        admissible: a.admissible,
    })
}

/// Assigning of `G/e` for a link `e`. A cycle of `G/e` with edge set `S`
/// is either a cycle of `G` or `S ∪ {e}` is; it takes that cycle's value.
pub fn restrict_contract(a: &Assigning, g: &MultiGraph, e: EdgeId) -> Result<Assigning> {
    let minor = g.contract(e)?;
    restrict_contract_onto(a, &minor, e)
}

pub(crate) fn restrict_contract_onto(
    a: &Assigning,
    minor: &MultiGraph,
    e: EdgeId,
) -> Result<Assigning> {
    let mut values = BTreeMap::new();
    for c in enumerate_cycles(minor) {
        let s = c.edges();
        let v = match a.values.get(s) {
            Some(&v) => v,
            None => {
                let mut with_e = s.clone();
                with_e.insert(e);
                a.value(&with_e)?
            }
        };
        values.insert(s.clone(), v);
    }
    Ok(Assigning {
        values,
        admissible: a.admissible,
    })
}

/// Assigning of the spanning subgraph `G|X`.
pub fn restrict_to(a: &Assigning, kept: &EdgeSet) -> Assigning {
    Assigning {
        values: a
            .values
            .iter()
            .filter(|(k, _)| k.is_subset(kept))
            .map(|(k, &v)| (k.clone(), v))
            .collect(),
        admissible: a.admissible,
    }
}

/// `true` iff no cycle inside `x` has value 1.
pub fn is_compatible(a: &Assigning, g: &MultiGraph, x: &EdgeSet) -> Result<bool> {
    for &id in x {
        g.position(id)?;
    }
    Ok(!a.values.iter().any(|(k, &v)| v && k.is_subset(x)))
}

/// `0` if some cycle inside `x` has value 1, else `1`.
pub fn delta(g: &MultiGraph, a: &Assigning, x: &EdgeSet) -> Result<u8> {
    is_compatible(a, g, x).map(u8::from)
}

/// Masks (over edge positions of `g`) of the cycles valued 1.
pub(crate) fn incompatible_masks(a: &Assigning, g: &MultiGraph) -> Result<Vec<u64>> {
    a.values
        .iter()
        .filter(|(_, &v)| v)
        .map(|(k, _)| g.mask_of(k))
        .collect()
}

/// Searches abelian groups of order `1..=max_order` (every isomorphism
/// class) and every edge function on each for one inducing `a`. Groups are
/// tried in increasing order; edge functions in odometer order.
///
/// `Ok(None)` only means nothing was found within the bound.
pub fn check_admissible(
    g: &MultiGraph,
    a: &Assigning,
    max_order: u64,
    budget: &Budget,
) -> Result<Option<(AbelianGroup, EdgeFunction)>> {
    let cycles = enumerate_cycles(g);
    for c in &cycles {
        a.value(c.edges())?;
    }
    if a.values.values().all(|v| !v) {
        let group = AbelianGroup::cyclic(1);
        let f = EdgeFunction::zero(g, &group);
        return Ok(Some((group, f)));
    }
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let wanted: Vec<bool> = cycles.iter().map(|c| a.values[c.edges()]).collect();
    for order in 1..=max_order {
        for group in AbelianGroup::all_of_order(order) {
            let needed = (order as u128).checked_pow(ids.len() as u32);
            if !matches!(needed, Some(n) if n <= budget.max_iterations as u128) {
                return Err(Error::BudgetExceeded {
                    what: "edge functions",
                    needed: format!("{order}^{}", ids.len()),
                    limit: budget.max_iterations.to_string(),
                });
            }
            let mut digits = vec![0u64; ids.len()];
            loop {
                let values = ids
                    .iter()
                    .zip(&digits)
                    .map(|(&e, &d)| (e, group.element_at(d)))
                    .collect();
                let f = EdgeFunction::new(group.clone(), values)?;
                let zero = group.zero();
                let mut matches = true;
                for (c, &want) in cycles.iter().zip(&wanted) {
                    if (cycle_sum(g, &f, c)? != zero) != want {
                        matches = false;
                        break;
                    }
                }
                if matches {
                    return Ok(Some((group, f)));
                }
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < order {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// Runs [`check_admissible`] and marks `a` admissible when a witness exists.
pub fn certify(
    g: &MultiGraph,
    a: &mut Assigning,
    max_order: u64,
    budget: &Budget,
) -> Result<Option<(AbelianGroup, EdgeFunction)>> {
    let witness = check_admissible(g, a, max_order, budget)?;
    if witness.is_some() {
        a.mark_admissible();
    }
    Ok(witness)
}
