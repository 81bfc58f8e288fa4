//! Realized motivic zeta functions of Brieskorn polynomials.
//!
//! A zeta coefficient lives in an equivariant Grothendieck ring that this
//! crate never represents symbolically. Each coefficient is carried through
//! three realizations instead: the virtual Poincaré polynomial of the
//! underlying set (`bbar`) and of the fibers of the angular component over
//! `+1` and `-1` (`fplus`, `fminus`). For Brieskorn polynomials these three
//! Laurent polynomials already separate the equivalence classes.
//!
//! # Coefficient formula
//!
//! The modified zeta function of one monomial `εx^k` has `n`-th coefficient
//! `-(𝟙 - [εx^k])·𝕃^{-n/k}` when `k | n` and `-𝕃^{-⌊n/k⌋}·𝟙` otherwise. For
//! a sum in separate variables the modified zeta functions combine by
//! `Z̃_{f⊕g} = -Z̃_f ⊛ Z̃_g`, where `⊛` applies the convolution product
//! coefficientwise. The convolution is bilinear over classes of plain sets
//! and has `𝟙` as unit, so the powers of `𝕃` and the signs come out of the
//! `d`-fold product and the factors with `k_i ∤ n` drop:
//!
//! ```text
//! a_n = -𝕃^{-E_n} ∗_{i ∈ S_n} (𝟙 - [ε_i x_i^{k_i}]),
//! S_n = { i : k_i | n },   E_n = Σ_i ⌊n / k_i⌋.
//! ```
//!
//! Expanding the convolution over subsets of `S_n` and using additivity of
//! β gives, with `C(S, c)` the β of `{Σ_{i∈S} ε_i x_i^{k_i} = c}`:
//!
//! ```text
//! bbar_n = u^{-E_n} (u^{|S_n|} - u·C(S_n, 0))
//! fε_n   = u^{-E_n} (C(S_n, ε) - C(S_n, 0))
//! ```
//!
//! An empty `S_n` gives `-𝕃^{-E_n}·𝟙`, the same as the formula.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brieskorn::{BrieskornPoly, Sign, Term};
use crate::fibers::{beta_closed, FiberQuery, Target};
use crate::laurent::{LaurentError, LaurentPoly};

/// Orders beyond this would push `E_n` past the `i32` exponent range.
pub const MAX_ORDER: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("expected a {expected} zeta function, got {found}")]
    KindMismatch { expected: ZetaKind, found: ZetaKind },
    #[error("zeta functions have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("order must be between 1 and {MAX_ORDER}, got {0}")]
    InvalidOrder(u32),
    #[error("monomial exponent must be at least 2, got {0}")]
    InvalidExponent(u32),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZetaKind {
    Modified,
    Plain,
}

impl fmt::Display for ZetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZetaKind::Modified => "modified",
            ZetaKind::Plain => "plain",
        })
    }
}

/// One zeta coefficient seen through `β∘overline`, `β∘F⁺` and `β∘F⁻`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealizedCoefficient {
    pub bbar: LaurentPoly,
    pub fplus: LaurentPoly,
    pub fminus: LaurentPoly,
}

impl RealizedCoefficient {
    pub fn new(bbar: LaurentPoly, fplus: LaurentPoly, fminus: LaurentPoly) -> Self {
        Self { bbar, fplus, fminus }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.bbar.is_zero() && self.fplus.is_zero() && self.fminus.is_zero()
    }

    /// Realization of `c·𝟙` for a scalar `c` with β-value `c`: the unit
    /// `𝟙 = [id : R* → R*]` realizes to `(u - 1, 1, 1)`.
    pub fn scalar_unit(c: &LaurentPoly) -> Result<Self, LaurentError> {
        let u_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)])?;
        Ok(Self::new(c.checked_mul(&u_minus_one)?, c.clone(), c.clone()))
    }

    pub fn fiber(&self, sign: Sign) -> &LaurentPoly {
        match sign {
            Sign::Plus => &self.fplus,
            Sign::Minus => &self.fminus,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        Ok(Self::new(
            self.bbar.checked_add(&other.bbar)?,
            self.fplus.checked_add(&other.fplus)?,
            self.fminus.checked_add(&other.fminus)?,
        ))
    }

    pub fn shift(&self, m: i32) -> Result<Self, LaurentError> {
        Ok(Self::new(self.bbar.shift(m)?, self.fplus.shift(m)?, self.fminus.shift(m)?))
    }
}

impl fmt::Display for RealizedCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.bbar, self.fplus, self.fminus)
    }
}

/// A zeta function truncated at order `N`, coefficients `n = 1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealizedZeta {
    kind: ZetaKind,
    coeffs: Vec<RealizedCoefficient>,
}

impl RealizedZeta {
    pub fn new(kind: ZetaKind, coeffs: Vec<RealizedCoefficient>) -> Self {
        Self { kind, coeffs }
    }

    pub fn kind(&self) -> ZetaKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RealizedCoefficient] {
        &self.coeffs
    }

    /// The coefficient of `T^n`, 1-based.
    pub fn coeff(&self, n: usize) -> Option<&RealizedCoefficient> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RealizedCoefficient::is_zero)
    }

    fn expect_kind(&self, expected: ZetaKind) -> Result<(), ZetaError> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(ZetaError::KindMismatch { expected, found: self.kind })
        }
    }

    /// One row per `n`: `n,bbar,fplus,fminus`, Laurent polynomials in text form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,bbar,fplus,fminus\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", i + 1, c.bbar, c.fplus, c.fminus));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CoefficientRow {
    n: usize,
    bbar: LaurentPoly,
    fplus: LaurentPoly,
    fminus: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ZetaDocument {
    kind: ZetaKind,
    order: usize,
    coeffs: Vec<CoefficientRow>,
}

impl Serialize for RealizedZeta {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ZetaDocument {
            kind: self.kind,
            order: self.order(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| CoefficientRow {
                    n: i + 1,
                    bbar: c.bbar.clone(),
                    fplus: c.fplus.clone(),
                    fminus: c.fminus.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RealizedZeta {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = ZetaDocument::deserialize(deserializer)?;
        if doc.coeffs.len() != doc.order {
            return Err(D::Error::custom("order does not match the number of coefficients"));
        }
        let coeffs = doc
            .coeffs
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                if row.n != i + 1 {
                    Err(D::Error::custom(format!("expected n = {}, got {}", i + 1, row.n)))
                } else {
                    Ok(RealizedCoefficient::new(row.bbar, row.fplus, row.fminus))
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { kind: doc.kind, coeffs })
    }
}

/// `2 · max exponent`, the smallest order that sees every divisor pattern twice.
pub fn default_order(f: &BrieskornPoly) -> u32 {
    2 * f.max_exponent()
}

fn check_order(order: u32) -> Result<(), ZetaError> {
    if order == 0 || order > MAX_ORDER {
        Err(ZetaError::InvalidOrder(order))
    } else {
        Ok(())
    }
}

fn to_exp(v: u64) -> Result<i32, LaurentError> {
    i32::try_from(v).map_err(|_| LaurentError::ExponentOverflow)
}

/// `n`-th coefficient of the modified zeta function of a singular sum.
pub fn modified_coefficient(terms: &[Term], n: u32) -> Result<RealizedCoefficient, LaurentError> {
    let dividing: Vec<Term> = terms.iter().copied().filter(|t| n.is_multiple_of(t.exponent)).collect();
    let e_n: u64 = terms.iter().map(|t| u64::from(n / t.exponent)).sum();
    let c0 = beta_closed(&FiberQuery::new(dividing.clone(), Target::Zero));
    let cp = beta_closed(&FiberQuery::new(dividing.clone(), Target::PlusOne));
    let cm = beta_closed(&FiberQuery::new(dividing.clone(), Target::MinusOne));
    let u = LaurentPoly::u_pow(1);
    let bbar = LaurentPoly::u_pow(to_exp(dividing.len() as u64)?).checked_sub(&u.checked_mul(&c0)?)?;
    let fplus = cp.checked_sub(&c0)?;
    let fminus = cm.checked_sub(&c0)?;
    RealizedCoefficient::new(bbar, fplus, fminus).shift(-to_exp(e_n)?)
}

/// Realized modified zeta function up to `order`. Nonsingular polynomials
/// have the zero series.
pub fn modified_zeta(f: &BrieskornPoly, order: u32) -> Result<RealizedZeta, ZetaError> {
    check_order(order)?;
    if !f.is_singular() {
        return Ok(RealizedZeta::new(ZetaKind::Modified, vec![RealizedCoefficient::zero(); order as usize]));
    }
    let coeffs = (1..=order).map(|n| modified_coefficient(f.terms(), n)).collect::<Result<Vec<_>, _>>()?;
    Ok(RealizedZeta::new(ZetaKind::Modified, coeffs))
}

/// Realized plain zeta function, via the modified one.
pub fn plain_zeta(f: &BrieskornPoly, order: u32) -> Result<RealizedZeta, ZetaError> {
    plain_from_modified(&modified_zeta(f, order)?)
}

/// Real solutions of `sign·x^k = target`.
fn real_roots(sign: Sign, k: u32, target: Sign) -> i64 {
    if k % 2 == 1 {
        1
    } else if sign == target {
        2
    } else {
        0
    }
}

/// Modified zeta function of a single monomial `sign·x^k`, read directly
/// off its closed series.
pub fn monomial_modified_zeta(sign: Sign, k: u32, order: u32) -> Result<RealizedZeta, ZetaError> {
    if k < 2 {
        return Err(ZetaError::InvalidExponent(k));
    }
    check_order(order)?;
    let coeffs = (1..=order)
        .map(|n| {
            let q = -to_exp(u64::from(n / k))?;
            if n % k == 0 {
                let fp = LaurentPoly::constant(real_roots(sign, k, Sign::Plus) - 1);
                let fm = LaurentPoly::constant(real_roots(sign, k, Sign::Minus) - 1);
                RealizedCoefficient::new(LaurentPoly::zero(), fp, fm).shift(q)
            } else {
                let band = RealizedCoefficient::new(
                    LaurentPoly::from_terms([(0, 1), (1, -1)])?,
                    LaurentPoly::constant(-1),
                    LaurentPoly::constant(-1),
                );
                band.shift(q)
            }
        })
        .collect::<Result<Vec<_>, LaurentError>>()?;
    Ok(RealizedZeta::new(ZetaKind::Modified, coeffs))
}

/// `Z_n = Z̃_n + c_n·𝟙` with `c_n = u^{-n} - Σ_{m≤n} bbar_m · u^{m-n-1}`.
pub fn plain_from_modified(z: &RealizedZeta) -> Result<RealizedZeta, ZetaError> {
    z.expect_kind(ZetaKind::Modified)?;
    let mut running = LaurentPoly::zero(); // Σ_{m≤n} bbar_m u^m
    let mut coeffs = Vec::with_capacity(z.order());
    for (i, a) in z.coeffs.iter().enumerate() {
        let n = to_exp(i as u64 + 1)?;
        running = running.checked_add(&a.bbar.shift(n)?)?;
        let c = LaurentPoly::u_pow(-n).checked_sub(&running.shift(-n - 1)?)?;
        coeffs.push(a.checked_add(&RealizedCoefficient::scalar_unit(&c)?)?);
    }
    Ok(RealizedZeta::new(ZetaKind::Plain, coeffs))
}

/// `Z̃_n = Z_n - (1 - Σ_{m≤n} bbar_m)·𝟙`.
pub fn modified_from_plain(z: &RealizedZeta) -> Result<RealizedZeta, ZetaError> {
    z.expect_kind(ZetaKind::Plain)?;
    let mut partial = LaurentPoly::zero();
    let mut coeffs = Vec::with_capacity(z.order());
    for a in &z.coeffs {
        partial = partial.checked_add(&a.bbar)?;
        let c = partial.checked_sub(&LaurentPoly::one())?;
        coeffs.push(a.checked_add(&RealizedCoefficient::scalar_unit(&c)?)?);
    }
    Ok(RealizedZeta::new(ZetaKind::Modified, coeffs))
}

/// `n`-th plain zeta coefficient of `sign·x^k` computed from the truncated
/// arcs themselves. An arc `γ = a_m t^m + … + a_n t^n` with `a_m ≠ 0` has
/// `f(γ) = sign·a_m^k t^{km} + …`, so only `n = km` contributes, with
/// `𝔛_n ≅ R* × R^{n-m}` and angular component `sign·a_m^k`. The class is
/// normalized by `𝕃^{-n}`.
pub fn arc_space_monomial_oracle(sign: Sign, k: u32, n: u32) -> Result<RealizedCoefficient, ZetaError> {
    if k < 2 {
        return Err(ZetaError::InvalidExponent(k));
    }
    check_order(n)?;
    if !n.is_multiple_of(k) {
        return Ok(RealizedCoefficient::zero());
    }
    let m = n / k;
    let free = to_exp(u64::from(n - m))?;
    let normalization = -to_exp(u64::from(n))?;
    // R* × R^{n-m}: β(R*) = u - 1; each angular fiber is r points × R^{n-m}.
    let stratum = LaurentPoly::from_terms([(1, 1), (0, -1)])?.shift(free)?;
    let fiber = |target| LaurentPoly::monomial(real_roots(sign, k, target), free);
    Ok(RealizedCoefficient::new(stratum, fiber(Sign::Plus), fiber(Sign::Minus)).shift(normalization)?)
}

/// Coefficientwise equality of realized zeta functions of the same kind and order.
pub fn zeta_equal(a: &RealizedZeta, b: &RealizedZeta) -> Result<bool, ZetaError> {
    b.expect_kind(a.kind)?;
    if a.order() != b.order() {
        return Err(ZetaError::OrderMismatch(a.order(), b.order()));
    }
    Ok(a.coeffs == b.coeffs)
}
