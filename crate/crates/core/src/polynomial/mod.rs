//! Cycle-assigning polynomials `P(G,α;k)` and α-assigning polynomials
//! `τ(G,α;k) = P(G,α;k) / k^{c(G)}`.
//!
//! Four independent routes are provided:
//!
//! * [`poly_subgraph`] / [`tau_subgraph`]: the signed sum over α-compatible
//!   spanning subgraphs;
//! * [`tau_delcon`]: deletion-contraction on `τ`, which keeps every
//!   intermediate result an integer polynomial;
//! * [`poly_broken`]: spanning forests with no broken α-compatible cycle;
//! * [`tau_bond`]: the expansion over bond-compatible edge sets.
//!
//! The broken-cycle and bond routes are only valid for admissible
//! assignings. They still compute something for other inputs; callers can
//! check [`Assigning::is_known_admissible`] first.

mod int_poly;

pub use int_poly::IntPolynomial;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::assigning::{
    incompatible_masks, restrict_contract_onto, restrict_delete, restrict_to, Assigning,
};
use crate::cycles::{broken_cycles, compatible_sets, LinearOrder};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, EdgeSet, MultiGraph};
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Subgraph,
    Delcon,
    Broken,
    Bond,
    Decompose,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Subgraph,
        Method::Delcon,
        Method::Broken,
        Method::Bond,
        Method::Decompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Subgraph => "subgraph",
            Method::Delcon => "delcon",
            Method::Broken => "broken",
            Method::Bond => "bond",
            Method::Decompose => "decompose",
        }
    }

    /// Whether the method's correctness depends on an admissible assigning.
    pub fn needs_admissible(self) -> bool {
        matches!(self, Method::Broken | Method::Bond)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown method {s:?}")))
    }
}

fn check_subset_budget(g: &MultiGraph, budget: &Budget, what: &'static str) -> Result<()> {
    if g.num_edges() > budget.max_subset_edges.min(63) {
        return Err(Error::BudgetExceeded {
            what,
            needed: format!("2^{}", g.num_edges()),
            limit: format!("2^{}", budget.max_subset_edges.min(63)),
        });
    }
    Ok(())
}

fn check_assigning(g: &MultiGraph, a: &Assigning) -> Result<()> {
    for k in a.values().keys() {
        for &e in k {
            g.position(e)?;
        }
    }
    Ok(())
}

/// Signed counts of α-compatible spanning subgraphs by component count.
fn compatible_subgraphs_by_components(
    g: &MultiGraph,
    a: &Assigning,
    budget: &Budget,
) -> Result<Vec<i64>> {
    check_subset_budget(g, budget, "spanning subgraphs")?;
    check_assigning(g, a)?;
    let bad = incompatible_masks(a, g)?;
    let mut by_components = vec![0i64; g.num_vertices() + 1];
    for mask in 0u64..1 << g.num_edges() {
        if bad.iter().any(|&b| b & !mask == 0) {
            continue;
        }
        let c = g.component_count_of_mask(mask);
        by_components[c] += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
    }
    Ok(by_components)
}

/// `Σ (-1)^{|E(H)|} k^{c(H)}` over the α-compatible spanning subgraphs `H`.
pub fn poly_subgraph(g: &MultiGraph, a: &Assigning, budget: &Budget) -> Result<IntPolynomial> {
    let counts = compatible_subgraphs_by_components(g, a, budget)?;
    Ok(IntPolynomial::from_coeffs(&counts))
}

/// `Σ (-1)^{|E(H)|} k^{r(G) - r(H)}` over the α-compatible spanning
/// subgraphs `H`.
pub fn tau_subgraph(g: &MultiGraph, a: &Assigning, budget: &Budget) -> Result<IntPolynomial> {
    let counts = compatible_subgraphs_by_components(g, a, budget)?;
    let base = g.component_count();
    // r(G) - r(H) = c(H) - c(G)
    Ok(IntPolynomial::from_coeffs(&counts[base..]))
}

/// Deletion-contraction on `τ`:
///
/// * no edges: `1`;
/// * loop `e`: `α(e)·τ(G-e)`;
/// * bridge `e`: `(k-1)·τ(G-e)`;
/// * otherwise: `τ(G-e) - τ(G/e)`.
///
/// Loops are removed first, then bridges, then the smallest remaining edge
/// id. Subproblems are memoized on `(graph, assigning)`.
pub fn tau_delcon(g: &MultiGraph, a: &Assigning) -> Result<IntPolynomial> {
    check_assigning(g, a)?;
    let mut memo = HashMap::new();
    delcon(g, a, &mut memo)
}

type Memo = HashMap<(MultiGraph, Assigning), IntPolynomial>;

fn delcon(g: &MultiGraph, a: &Assigning, memo: &mut Memo) -> Result<IntPolynomial> {
    if g.num_edges() == 0 {
        return Ok(IntPolynomial::one());
    }
    let key = (g.clone(), a.clone());
    if let Some(p) = memo.get(&key) {
        return Ok(p.clone());
    }

    let minus = |e: EdgeId| -> Result<(MultiGraph, Assigning)> {
        Ok((g.delete(&EdgeSet::from([e]))?, restrict_delete(a, g, e)?))
    };

    let result = if let Some(lp) = g.edges().iter().find(|e| e.is_loop()) {
        if a.value(&EdgeSet::from([lp.id]))? {
            let (h, b) = minus(lp.id)?;
            delcon(&h, &b, memo)?
        } else {
            IntPolynomial::zero()
        }
    } else if let Some(bridge) = first_bridge(g) {
        let (h, b) = minus(bridge)?;
        IntPolynomial::linear_power(-1, 1) * delcon(&h, &b, memo)?
    } else {
        let e = g.edges()[0].id;
        let (h, b) = minus(e)?;
        let deleted = delcon(&h, &b, memo)?;
        let contracted_graph = g.contract(e)?;
        let contracted_assigning = restrict_contract_onto(a, &contracted_graph, e)?;
        let contracted = delcon(&contracted_graph, &contracted_assigning, memo)?;
        deleted - contracted
    };
    memo.insert(key, result.clone());
    Ok(result)
}

fn first_bridge(g: &MultiGraph) -> Option<EdgeId> {
    let base = g.component_count();
    let all = (1u64 << g.num_edges()).wrapping_sub(1);
    g.edges().iter().enumerate().find_map(|(i, e)| {
        if e.is_loop() {
            return None;
        }
        let without = if g.num_edges() >= 64 {
            g.delete(&EdgeSet::from([e.id])).ok()?.component_count()
        } else {
            g.component_count_of_mask(all & !(1 << i))
        };
        (without > base).then_some(e.id)
    })
}

/// Unsigned coefficients `w_0, …, w_{r(G)}`: `w_i` counts the spanning
/// forests with `i` edges that contain no broken α-compatible cycle.
pub fn broken_coefficients(
    g: &MultiGraph,
    a: &Assigning,
    ord: &LinearOrder,
    budget: &Budget,
) -> Result<Vec<u64>> {
    check_subset_budget(g, budget, "spanning forests")?;
    check_assigning(g, a)?;
    let broken: Vec<u64> = broken_cycles(g, a, ord)?
        .iter()
        .map(|b| g.mask_of(b))
        .collect::<Result<_>>()?;
    let mut w = vec![0u64; g.full_rank() + 1];
    for mask in 0u64..1 << g.num_edges() {
        if broken.iter().any(|&b| b & !mask == 0) || !g.is_forest_mask(mask) {
            continue;
        }
        w[mask.count_ones() as usize] += 1;
    }
    Ok(w)
}

/// `Σ_i (-1)^i w_i k^{|V| - i}` with `w_i` from [`broken_coefficients`].
pub fn poly_broken(
    g: &MultiGraph,
    a: &Assigning,
    ord: &LinearOrder,
    budget: &Budget,
) -> Result<IntPolynomial> {
    let w = broken_coefficients(g, a, ord, budget)?;
    let n = g.num_vertices() as u32;
    let mut p = IntPolynomial::zero();
    for (i, &wi) in w.iter().enumerate() {
        let signed = if i % 2 == 0 {
            BigInt::from(wi)
        } else {
            -BigInt::from(wi)
        };
        p.add_term(n - i as u32, signed);
    }
    Ok(p)
}

/// `Σ δ(G,α;X) (-1)^{|X|} (k-1)^{r(G) - r(X)}` over the bond-compatible sets
/// `X`.
pub fn tau_bond(
    g: &MultiGraph,
    a: &Assigning,
    ord: &LinearOrder,
    budget: &Budget,
) -> Result<IntPolynomial> {
    check_subset_budget(g, budget, "bond-compatible edge sets")?;
    check_assigning(g, a)?;
    let bad = incompatible_masks(a, g)?;
    let base = g.component_count();
    // coefficient of (k-1)^j
    let mut by_power = vec![0i64; g.num_vertices() + 1];
    let mut sets = compatible_sets(g, ord);
    while let Some(x) = sets.next_mask() {
        if bad.iter().any(|&b| b & !x == 0) {
            continue;
        }
        let j = g.component_count_of_mask(x) - base;
        by_power[j] += if x.count_ones() % 2 == 0 { 1 } else { -1 };
    }
    let mut tau = IntPolynomial::zero();
    for (j, &c) in by_power.iter().enumerate() {
        if c != 0 {
            tau = tau + IntPolynomial::constant(c) * IntPolynomial::linear_power(-1, j as u32);
        }
    }
    Ok(tau)
}

/// Product of [`poly_subgraph`] over the components, each with the
/// restricted assigning.
pub fn decompose(g: &MultiGraph, a: &Assigning, budget: &Budget) -> Result<IntPolynomial> {
    check_assigning(g, a)?;
    let mut p = IntPolynomial::one();
    for part in g.split_components() {
        let restricted = restrict_to(a, &part.edge_set());
        p = p * poly_subgraph(&part, &restricted, budget)?;
    }
    Ok(p)
}

pub fn evaluate(p: &IntPolynomial, k: &BigInt) -> BigInt {
    p.evaluate(k)
}

/// `P = k^{c(G)} τ`.
pub fn poly_from_tau(g: &MultiGraph, tau: &IntPolynomial) -> IntPolynomial {
    tau.shift_up(g.component_count() as u32)
}

/// `τ = P / k^{c(G)}`; `None` if `P` is not divisible.
pub fn tau_from_poly(g: &MultiGraph, p: &IntPolynomial) -> Option<IntPolynomial> {
    p.shift_down(g.component_count() as u32)
}

/// `P(G,α;k)` by the chosen method.
pub fn cycle_assigning_polynomial(
    g: &MultiGraph,
    a: &Assigning,
    method: Method,
    ord: &LinearOrder,
    budget: &Budget,
) -> Result<IntPolynomial> {
    match method {
        Method::Subgraph => poly_subgraph(g, a, budget),
        Method::Delcon => Ok(poly_from_tau(g, &tau_delcon(g, a)?)),
        Method::Broken => poly_broken(g, a, ord, budget),
        Method::Bond => Ok(poly_from_tau(g, &tau_bond(g, a, ord, budget)?)),
        Method::Decompose => decompose(g, a, budget),
    }
}

/// `τ(G,α;k)` by the chosen method. Methods that produce `P` are divided by
/// `k^{c(G)}`; a non-divisible result is reported as [`Error::NotDivisible`].
pub fn assigning_polynomial(
    g: &MultiGraph,
    a: &Assigning,
    method: Method,
    ord: &LinearOrder,
    budget: &Budget,
) -> Result<IntPolynomial> {
    match method {
        Method::Subgraph => tau_subgraph(g, a, budget),
        Method::Delcon => tau_delcon(g, a),
        Method::Bond => tau_bond(g, a, ord, budget),
        Method::Broken | Method::Decompose => {
            let p = cycle_assigning_polynomial(g, a, method, ord, budget)?;
            tau_from_poly(g, &p).ok_or(Error::NotDivisible {
                method: method.name(),
                power: g.component_count(),
            })
        }
    }
}

/// `w_i = (-1)^i [k^{|V| - i}] P` for `i = 0..=|V|`.
pub fn unsigned_coefficients(g: &MultiGraph, p: &IntPolynomial) -> Vec<BigInt> {
    let n = g.num_vertices() as u32;
    (0..=n)
        .map(|i| {
            let c = p.coeff(n - i);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}
