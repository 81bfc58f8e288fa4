//! Exact integer Laurent polynomials in one variable `u`.
//!
//! Every virtual Poincaré polynomial computed by this crate lives in
//! `Z[u, u^-1]`. Coefficients are `i64` with checked arithmetic: an overflow
//! is reported as [`LaurentError::Overflow`] by the `checked_*` methods and
//! panics through the operator impls. Neither path wraps.
//!
//! The representation is canonical: a sparse map from exponent to a nonzero
//! coefficient, so structural equality is mathematical equality and the zero
//! polynomial is the empty map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("integer overflow in coefficient arithmetic")]
    Overflow,
    #[error("exponent out of range")]
    ExponentOverflow,
    #[error("cannot evaluate a Laurent polynomial at zero")]
    ZeroEvaluation,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
}

pub type Result<T> = std::result::Result<T, LaurentError>;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * u^exp`.
    pub fn monomial(c: i64, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `u^exp`.
    pub fn u_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed; zero coefficients are dropped.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(pairs: I) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.accumulate(e, c)?;
        }
        Ok(out)
    }

    fn accumulate(&mut self, exp: i32, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot.checked_add(c).ok_or(LaurentError::Overflow)?;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum exponent, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Minimum exponent, or `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// `(degree, leading coefficient)`; `None` is the empty signal for zero.
    pub fn degree_and_leading(&self) -> Option<(i32, i64)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.accumulate(e, c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| c.checked_neg().map(|n| (e, n)).ok_or(LaurentError::Overflow))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.accumulate(e, c.checked_neg().ok_or(LaurentError::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                let e = ea.checked_add(eb).ok_or(LaurentError::ExponentOverflow)?;
                let c = ca.checked_mul(cb).ok_or(LaurentError::Overflow)?;
                out.accumulate(e, c)?;
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| c.checked_mul(k).map(|v| (e, v)).ok_or(LaurentError::Overflow))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { terms })
    }

    /// Multiplication by `u^m`.
    pub fn shift(&self, m: i32) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| e.checked_add(m).map(|ne| (ne, c)).ok_or(LaurentError::ExponentOverflow))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { terms })
    }

    /// Exact value at `x`. The result is an integer whenever `x = ±1` or the
    /// polynomial has no negative exponents.
    pub fn evaluate(&self, x: i64) -> Result<Ratio<i128>> {
        if x == 0 {
            return Err(LaurentError::ZeroEvaluation);
        }
        let x = Ratio::from_integer(i128::from(x));
        let mut acc = Ratio::from_integer(0i128);
        for (&e, &c) in &self.terms {
            let p = checked_pow(x, e)?;
            let term = p.checked_mul(&Ratio::from_integer(i128::from(c))).ok_or(LaurentError::Overflow)?;
            acc = acc.checked_add(&term).ok_or(LaurentError::Overflow)?;
        }
        Ok(acc)
    }

    /// Value at `u = -1`, i.e. the compactly supported Euler characteristic
    /// of any set whose virtual Poincaré polynomial this is.
    pub fn euler_characteristic(&self) -> Result<i64> {
        self.terms.iter().try_fold(0i64, |acc, (&e, &c)| {
            let term =
                if e.rem_euclid(2) == 0 { c } else { c.checked_neg().ok_or(LaurentError::Overflow)? };
            acc.checked_add(term).ok_or(LaurentError::Overflow)
        })
    }

    /// Returns `q` with `self = q * divisor`, or an error when no such
    /// Laurent polynomial with integer coefficients exists.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (low_b, _) = match (divisor.low_degree(), divisor.degree()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Err(LaurentError::DivisionByZero),
        };
        let Some(low_a) = self.low_degree() else {
            return Ok(Self::zero());
        };
        // Strip the monomial factors; the rest is long division in Z[u].
        let mut rem = self.shift(-low_a)?;
        let b = divisor.shift(-low_b)?;
        let (deg_b, lead_b) = b.degree_and_leading().expect("nonzero divisor");
        let not_divisible =
            || LaurentError::NotDivisible { dividend: self.to_string(), divisor: divisor.to_string() };
        let mut quotient = Self::zero();
        while let Some((deg_r, lead_r)) = rem.degree_and_leading() {
            if deg_r < deg_b || lead_r % lead_b != 0 {
                return Err(not_divisible());
            }
            let step = Self::monomial(lead_r / lead_b, deg_r - deg_b);
            rem = rem.checked_sub(&step.checked_mul(&b)?)?;
            quotient.accumulate(deg_r - deg_b, lead_r / lead_b)?;
        }
        let exp = low_a.checked_sub(low_b).ok_or(LaurentError::ExponentOverflow)?;
        quotient.shift(exp)
    }
}

fn checked_pow(x: Ratio<i128>, e: i32) -> Result<Ratio<i128>> {
    let base = if e < 0 { x.recip() } else { x };
    let mut acc = Ratio::from_integer(1i128);
    for _ in 0..e.unsigned_abs() {
        acc = acc.checked_mul(&base).ok_or(LaurentError::Overflow)?;
    }
    Ok(acc)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent coefficient overflow")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent coefficient overflow")
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent coefficient overflow")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("Laurent coefficient overflow")
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Decreasing exponents, e.g. `u^2 - 2*u + u^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("u")?,
                (1, m) => write!(f, "{m}*u")?,
                (e, 1) => write!(f, "u^{e}")?,
                (e, m) => write!(f, "{m}*u^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    /// `[[exponent, coefficient], ...]`, decreasing exponent.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, i64)> = self.terms().rev().collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i32, i64)>::deserialize(deserializer)?;
        let mut seen = std::collections::BTreeSet::new();
        for (e, c) in &pairs {
            if *c == 0 {
                return Err(D::Error::custom("zero coefficient in Laurent polynomial"));
            }
            if !seen.insert(*e) {
                return Err(D::Error::custom(format!("repeated exponent {e}")));
            }
        }
        LaurentPoly::from_terms(pairs).map_err(D::Error::custom)
    }
}
