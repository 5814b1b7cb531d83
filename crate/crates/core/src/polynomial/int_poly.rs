use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Univariate polynomial in `k` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// The polynomial `k`.
    pub fn k() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, degree: u32) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        IntPolynomial { coeffs }
    }

    /// From coefficients listed lowest degree first.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        let mut p = Self::zero();
        for (d, c) in coeffs.iter().enumerate() {
            p.add_term(d as u32, c.clone().into());
        }
        p
    }

    /// `(k + shift)^n`.
    pub fn linear_power(shift: i64, n: u32) -> Self {
        (Self::k() + Self::constant(shift)).pow(n)
    }

    pub fn add_term(&mut self, degree: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero `(degree, coefficient)` pairs, lowest degree first.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplication by `k^s`.
    pub fn shift_up(&self, s: u32) -> Self {
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d + s, c.clone()))
                .collect(),
        }
    }

    /// Exact division by `k^s`; `None` if some coefficient below degree `s`
    /// is nonzero.
    pub fn shift_down(&self, s: u32) -> Option<Self> {
        if self.coeffs.keys().any(|&d| d < s) {
            return None;
        }
        Some(IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d - s, c.clone()))
                .collect(),
        })
    }

    /// Horner evaluation; negative `k` is fine.
    pub fn evaluate(&self, k: &BigInt) -> BigInt {
        let Some(top) = self.degree() else {
            return BigInt::zero();
        };
        let mut acc = BigInt::zero();
        for d in (0..=top).rev() {
            acc *= k;
            if let Some(c) = self.coeffs.get(&d) {
                acc += c;
            }
        }
        acc
    }

    pub fn evaluate_i64(&self, k: i64) -> BigInt {
        self.evaluate(&BigInt::from(k))
    }

    /// `{"variable": "k", "degree": d, "coefficients": {"<deg>": "<decimal>"}}`
    /// with `degree` null for the zero polynomial.
    pub fn to_json(&self) -> Value {
        let coefficients: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(d, c)| (d.to_string(), Value::String(c.to_string())))
            .collect();
        json!({
            "variable": "k",
            "degree": self.degree(),
            "coefficients": coefficients,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::invalid(format!("polynomial JSON: {m}"));
        if v.get("variable").and_then(Value::as_str) != Some("k") {
            return Err(bad("variable must be \"k\""));
        }
        let coeffs = v
            .get("coefficients")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing coefficients object"))?;
        let mut p = Self::zero();
        for (d, c) in coeffs {
            let d: u32 = d.parse().map_err(|_| bad("degree keys must be integers"))?;
            let c: BigInt = c
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("coefficients must be decimal strings"))?;
            if c.is_zero() {
                return Err(bad("zero coefficients are not stored"));
            }
            p.add_term(d, c);
        }
        let declared = v.get("degree").ok_or_else(|| bad("missing degree"))?;
        let expected = p.degree().map_or(Value::Null, |d| json!(d));
        if *declared != expected {
            return Err(bad("degree does not match coefficients"));
        }
        Ok(p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&d, c)) in self.coeffs.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let show_mag = !mag.is_one() || d == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&d, c) in &rhs.coeffs {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&d, c) in &rhs.coeffs {
            out.add_term(d, -c.clone());
        }
        out
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}
