//! Virtual Poincaré polynomials of the fibers `{Σ ε_i x_i^{k_i} = c}` for
//! `c ∈ {-1, 0, 1}`.
//!
//! Two engines compute the same value:
//!
//! * [`beta_closed`] reduces the sum to pure 2-power exponents and applies
//!   the closed formulas in `(s, σ⁺, σ⁻, m)`.
//! * [`beta_recursive`] never looks at those formulas. It peels the top
//!   exponent level with three local identities:
//!   - a `+x^k - y^k` pair contributes `β(g = 0)·u + (u - 1)·u^{vars(g)}`;
//!   - a pure-sign top level `ε Σ_{i≤r} x_i^{2^N}` gives
//!     `(u^r - 1)·β(rest = -ε) + β(rest = 0)`;
//!   - the `±1` fibers come from adding one more top-level variable `w`:
//!     `β(f + w^{2^N} = 0) = (u - 1)·β(f = -1) + β(f = 0)`, and the mirror
//!     identity with `-w^{2^N}` for `f = 1`.
//!
//! Both engines share [`reduce`]: an odd exponent makes the fiber a graph
//! over the other variables, and an even exponent `2^N·l` with `l` odd can
//! be replaced by `2^N` through the bijection `x ↦ x^l`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brieskorn::{BrieskornPoly, Sign, Term};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("the Euler characteristic formula needs an all-even sum (got {0})")]
    NotTwoPowerForm(&'static str),
    #[error("invalid two-power form: {0}")]
    InvalidForm(&'static str),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Target {
    MinusOne,
    Zero,
    PlusOne,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::MinusOne, Target::Zero, Target::PlusOne];

    pub fn value(self) -> i64 {
        match self {
            Target::MinusOne => -1,
            Target::Zero => 0,
            Target::PlusOne => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            -1 => Some(Target::MinusOne),
            0 => Some(Target::Zero),
            1 => Some(Target::PlusOne),
            _ => None,
        }
    }

    pub fn negated(self) -> Self {
        match self {
            Target::MinusOne => Target::PlusOne,
            Target::Zero => Target::Zero,
            Target::PlusOne => Target::MinusOne,
        }
    }

    /// `ε·1` for a sign `ε`.
    pub fn unit(sign: Sign) -> Self {
        match sign {
            Sign::Plus => Target::PlusOne,
            Sign::Minus => Target::MinusOne,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The set `{Σ ε_i x_i^{k_i} = c}`; an empty sum is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberQuery {
    pub terms: Vec<Term>,
    pub target: Target,
}

impl FiberQuery {
    pub fn new(terms: Vec<Term>, target: Target) -> Self {
        Self { terms, target }
    }

    pub fn of(f: &BrieskornPoly, target: Target) -> Self {
        Self::new(f.terms().to_vec(), target)
    }

    /// `{-f = -c}`, the same set.
    pub fn negated(&self) -> Self {
        Self::new(self.terms.iter().map(|t| t.negated()).collect(), self.target.negated())
    }

    pub fn num_variables(&self) -> usize {
        self.terms.len()
    }
}

/// `A` positive and `B` negative terms of exponent `2^level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PowerGroup {
    pub level: u32,
    pub plus: u32,
    pub minus: u32,
}

impl PowerGroup {
    pub fn new(level: u32, plus: u32, minus: u32) -> Self {
        Self { level, plus, minus }
    }

    fn size(&self) -> u32 {
        self.plus + self.minus
    }

    fn is_empty(&self) -> bool {
        self.size() == 0
    }
}

/// An all-even sum rewritten with exponents `2^level`, grouped by level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoPowerForm {
    groups: Vec<PowerGroup>,
}

impl TwoPowerForm {
    /// Groups must have strictly increasing levels ≥ 1 and be nonempty.
    pub fn new(groups: Vec<PowerGroup>) -> Result<Self, FiberError> {
        if groups.iter().any(|g| g.is_empty()) {
            return Err(FiberError::InvalidForm("empty group"));
        }
        if groups.iter().any(|g| g.level == 0) {
            return Err(FiberError::InvalidForm("level 0 is an odd exponent"));
        }
        if groups.windows(2).any(|w| w[0].level >= w[1].level) {
            return Err(FiberError::InvalidForm("levels must be strictly increasing"));
        }
        Ok(Self { groups })
    }

    pub fn groups(&self) -> &[PowerGroup] {
        &self.groups
    }

    /// `s`, the number of variables.
    pub fn num_variables(&self) -> u32 {
        self.groups.iter().map(PowerGroup::size).sum()
    }

    /// `σ⁺`
    pub fn sigma_plus(&self) -> u32 {
        self.groups.iter().map(|g| g.plus).sum()
    }

    /// `σ⁻`
    pub fn sigma_minus(&self) -> u32 {
        self.groups.iter().map(|g| g.minus).sum()
    }

    /// Index `m` of the first group with `A ≠ B`; `None` stands for `m = ∞`.
    pub fn first_unbalanced(&self) -> Option<usize> {
        self.groups.iter().position(|g| g.plus != g.minus)
    }

    /// Which sign wins at the first unbalanced level, if any.
    pub fn dominant_sign(&self) -> Option<Sign> {
        self.first_unbalanced().map(|m| {
            let g = self.groups[m];
            if g.plus > g.minus {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
    }

    pub fn negated(&self) -> Self {
        Self { groups: self.groups.iter().map(|g| PowerGroup::new(g.level, g.minus, g.plus)).collect() }
    }

    /// Top group and the remaining lower levels.
    pub fn split_top(&self) -> Option<(PowerGroup, TwoPowerForm)> {
        let (top, rest) = self.groups.split_last()?;
        Some((*top, TwoPowerForm { groups: rest.to_vec() }))
    }

    /// Representative terms `±x^{2^level}`.
    pub fn to_terms(&self) -> Vec<Term> {
        self.groups
            .iter()
            .flat_map(|g| {
                let k = 1u32 << g.level;
                std::iter::repeat_n(Term::plus(k), g.plus as usize)
                    .chain(std::iter::repeat_n(Term::minus(k), g.minus as usize))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    EmptySum,
    /// Some exponent is odd; `variables` counts all terms.
    OddPresent {
        variables: usize,
    },
    TwoPower(TwoPowerForm),
}

impl Reduced {
    pub fn describe(&self) -> &'static str {
        match self {
            Reduced::EmptySum => "empty sum",
            Reduced::OddPresent { .. } => "odd exponent present",
            Reduced::TwoPower(_) => "two-power form",
        }
    }
}

pub fn reduce(terms: &[Term]) -> Reduced {
    if terms.is_empty() {
        return Reduced::EmptySum;
    }
    if terms.iter().any(|t| t.exponent % 2 == 1) {
        return Reduced::OddPresent { variables: terms.len() };
    }
    let mut groups: Vec<PowerGroup> = Vec::new();
    for t in terms {
        let level = t.exponent.trailing_zeros();
        let idx = match groups.binary_search_by_key(&level, |g| g.level) {
            Ok(i) => i,
            Err(i) => {
                groups.insert(i, PowerGroup::new(level, 0, 0));
                i
            }
        };
        match t.sign {
            Sign::Plus => groups[idx].plus += 1,
            Sign::Minus => groups[idx].minus += 1,
        }
    }
    Reduced::TwoPower(TwoPowerForm { groups })
}

fn upow(e: u32) -> LaurentPoly {
    LaurentPoly::u_pow(e as i32)
}

fn upow_i(e: i64) -> LaurentPoly {
    LaurentPoly::u_pow(i32::try_from(e).expect("exponent fits in i32"))
}

fn point_or_empty(target: Target) -> LaurentPoly {
    match target {
        Target::Zero => LaurentPoly::one(),
        _ => LaurentPoly::zero(),
    }
}

/// β of a fiber by the closed formulas.
pub fn beta_closed(q: &FiberQuery) -> LaurentPoly {
    match reduce(&q.terms) {
        Reduced::EmptySum => point_or_empty(q.target),
        Reduced::OddPresent { variables } => upow(variables as u32 - 1),
        Reduced::TwoPower(form) => beta_two_power_closed(&form, q.target),
    }
}

/// Closed formulas for a two-power form; deviation from `u^{s-1}` is a
/// difference of two monomials for the 0-fiber and one monomial otherwise.
pub fn beta_two_power_closed(form: &TwoPowerForm, target: Target) -> LaurentPoly {
    if form.groups.is_empty() {
        return point_or_empty(target);
    }
    let s = i64::from(form.num_variables());
    let sp = i64::from(form.sigma_plus());
    let sm = i64::from(form.sigma_minus());
    let dominant = form.dominant_sign();
    let deviation = match target {
        Target::Zero => match dominant {
            Some(Sign::Plus) => upow_i(sm) - upow_i(sp - 1),
            _ => upow_i(sp) - upow_i(sm - 1),
        },
        Target::PlusOne => match dominant {
            Some(Sign::Plus) => upow_i(sm),
            _ => -upow_i(sm - 1),
        },
        Target::MinusOne => match dominant {
            Some(Sign::Minus) => upow_i(sp),
            _ => -upow_i(sp - 1),
        },
    };
    upow_i(s - 1) + deviation
}

/// Compactly supported Euler characteristic of an all-even fiber by the
/// closed parity formula.
pub fn euler_fiber(q: &FiberQuery) -> Result<i64, FiberError> {
    let form = match reduce(&q.terms) {
        Reduced::TwoPower(form) => form,
        other => return Err(FiberError::NotTwoPowerForm(other.describe())),
    };
    let parity = |e: u32| if e.is_multiple_of(2) { 1 } else { -1 };
    let s = form.num_variables();
    let base = -parity(s); // (-1)^(s-1)
    Ok(match q.target {
        Target::Zero => base + parity(form.sigma_plus()) + parity(form.sigma_minus()),
        Target::PlusOne => base + parity(form.sigma_minus()),
        Target::MinusOne => base + parity(form.sigma_plus()),
    })
}

/// Memoizing engine for the peeling recursion. Keys are canonical group
/// lists, so permutations of the same multiset share one entry.
#[derive(Debug, Default)]
pub struct RecursiveEngine {
    memo: HashMap<(Vec<PowerGroup>, Target), LaurentPoly>,
}

impl RecursiveEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn beta_query(&mut self, q: &FiberQuery) -> Result<LaurentPoly, FiberError> {
        match reduce(&q.terms) {
            Reduced::EmptySum => Ok(point_or_empty(q.target)),
            // Solve for one odd-power variable: the fiber is a graph over
            // the remaining n - 1 coordinates.
            Reduced::OddPresent { variables } => Ok(upow(variables as u32 - 1)),
            Reduced::TwoPower(form) => self.beta(&form, q.target),
        }
    }

    pub fn beta(&mut self, form: &TwoPowerForm, target: Target) -> Result<LaurentPoly, FiberError> {
        self.beta_groups(form.groups.clone(), target)
    }

    fn beta_groups(
        &mut self,
        mut groups: Vec<PowerGroup>,
        target: Target,
    ) -> Result<LaurentPoly, FiberError> {
        groups.retain(|g| !g.is_empty());
        let key = (groups, target);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let groups = key.0.clone();
        let value = match target {
            Target::Zero => self.zero_fiber(&groups)?,
            _ => self.unit_fiber(&groups, target)?,
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    fn zero_fiber(&mut self, groups: &[PowerGroup]) -> Result<LaurentPoly, FiberError> {
        let Some((top, rest)) = groups.split_last() else {
            return Ok(LaurentPoly::one());
        };
        let u = LaurentPoly::u_pow(1);
        let one = LaurentPoly::one();
        if top.plus > 0 && top.minus > 0 {
            // cancel one +x^k - y^k pair
            let mut smaller = groups.to_vec();
            let last = smaller.last_mut().expect("nonempty");
            last.plus -= 1;
            last.minus -= 1;
            let remaining: u32 = smaller.iter().map(PowerGroup::size).sum();
            let inner = self.beta_groups(smaller, Target::Zero)?;
            return Ok(&u * &inner + (&u - &one) * upow(remaining));
        }
        // pure-sign top level
        let (r, sign) = if top.plus > 0 { (top.plus, Sign::Plus) } else { (top.minus, Sign::Minus) };
        let opposite = Target::unit(sign.flip());
        let at_opposite = self.beta_groups(rest.to_vec(), opposite)?;
        let at_zero = self.beta_groups(rest.to_vec(), Target::Zero)?;
        Ok((upow(r) - one) * at_opposite + at_zero)
    }

    fn unit_fiber(&mut self, groups: &[PowerGroup], target: Target) -> Result<LaurentPoly, FiberError> {
        let Some(top) = groups.last() else {
            return Ok(LaurentPoly::zero());
        };
        // f = -1 pairs with f + w^{2^N}; f = +1 pairs with f - w^{2^N}.
        let mut extended = groups.to_vec();
        let last = extended.last_mut().expect("nonempty");
        match target {
            Target::MinusOne => last.plus += 1,
            Target::PlusOne => last.minus += 1,
            Target::Zero => unreachable!("zero target handled by zero_fiber"),
        }
        debug_assert_eq!(last.level, top.level);
        let with_w = self.beta_groups(extended, Target::Zero)?;
        let at_zero = self.beta_groups(groups.to_vec(), Target::Zero)?;
        let u_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]).expect("small");
        (with_w - at_zero)
            .div_exact(&u_minus_one)
            .map_err(|e| FiberError::Inconsistent(format!("peeling division failed: {e}")))
    }
}

thread_local! {
    static ENGINE: RefCell<RecursiveEngine> = RefCell::new(RecursiveEngine::new());
}

/// β of a fiber by the peeling recursion, using a per-thread memo table.
pub fn beta_recursive(q: &FiberQuery) -> Result<LaurentPoly, FiberError> {
    ENGINE.with(|e| e.borrow_mut().beta_query(q))
}

/// Checks the three top-level peeling identities for `form = P_{A,B} + R`,
/// where `P_{A,B}` is the top group and `R` the lower levels, against any β
/// oracle. Returns a description of the first violated identity.
pub fn check_peel_identities<F>(form: &TwoPowerForm, mut beta: F) -> Result<(), String>
where
    F: FnMut(&TwoPowerForm, Target) -> LaurentPoly,
{
    let Some((top, rest)) = form.split_top() else {
        return Ok(());
    };
    let (a, b) = (top.plus, top.minus);
    let s = rest.num_variables();
    let r0 = beta(&rest, Target::Zero);
    let rp = beta(&rest, Target::PlusOne);
    let rm = beta(&rest, Target::MinusOne);
    let u = LaurentPoly::u_pow(1);
    let base = upow_i(i64::from(a + b + s) - 1);

    let fib0 = if b >= a {
        (upow(b) - upow(a)) * rp.clone() + upow(a) * r0.clone() - upow_i(i64::from(b + s) - 1)
    } else {
        (upow(a) - upow(b)) * rm.clone() + upow(b) * r0.clone() - upow_i(i64::from(a + s) - 1)
    };
    let fib1 = if b >= a { upow_i(i64::from(b) - 1) * (&u * &rp - upow(s)) } else { upow(b) * (&r0 - &rm) };
    let fibm1 = if a >= b { upow_i(i64::from(a) - 1) * (&u * &rm - upow(s)) } else { upow(a) * (&r0 - &rp) };
    for (target, expected, name) in [
        (Target::Zero, fib0, "zero-fiber peel"),
        (Target::PlusOne, fib1, "(+1)-fiber peel"),
        (Target::MinusOne, fibm1, "(-1)-fiber peel"),
    ] {
        let got = beta(form, target) - base.clone();
        if got != expected {
            return Err(format!(
                "{name} fails for {:?}: β - u^(s-1) = {got}, identity gives {expected}",
                form.groups()
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(pairs.iter().copied()).unwrap()
    }

    fn q(pairs: &[(u32, i8)], c: i64) -> FiberQuery {
        let terms =
            pairs.iter().map(|&(k, s)| Term::new(k, if s < 0 { Sign::Minus } else { Sign::Plus })).collect();
        FiberQuery::new(terms, Target::from_value(c).unwrap())
    }

    fn both(query: &FiberQuery) -> LaurentPoly {
        let closed = beta_closed(query);
        let rec = RecursiveEngine::new().beta_query(query).unwrap();
        assert_eq!(closed, rec, "engines disagree on {query:?}");
        closed
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&q(&[(2, 1), (3, -1)], 0).terms), Reduced::OddPresent { variables: 2 });
        let Reduced::TwoPower(form) = reduce(&q(&[(4, 1), (4, -1), (12, 1)], 0).terms) else {
            panic!("expected two-power form");
        };
        assert_eq!(form.groups(), &[PowerGroup::new(2, 2, 1)]);
        let Reduced::TwoPower(form) = reduce(&q(&[(2, 1)], 0).terms) else {
            panic!("expected two-power form");
        };
        assert_eq!(form.groups(), &[PowerGroup::new(1, 1, 0)]);
        assert_eq!(reduce(&[]), Reduced::EmptySum);
    }

    #[test]
    fn two_power_form_validation() {
        assert!(TwoPowerForm::new(vec![PowerGroup::new(1, 0, 0)]).is_err());
        assert!(TwoPowerForm::new(vec![PowerGroup::new(0, 1, 0)]).is_err());
        assert!(TwoPowerForm::new(vec![PowerGroup::new(2, 1, 0), PowerGroup::new(1, 1, 0)]).is_err());
        let f = TwoPowerForm::new(vec![PowerGroup::new(1, 1, 1), PowerGroup::new(3, 2, 0)]).unwrap();
        assert_eq!(f.num_variables(), 4);
        assert_eq!((f.sigma_plus(), f.sigma_minus()), (3, 1));
        assert_eq!(f.first_unbalanced(), Some(1));
        assert_eq!(f.dominant_sign(), Some(Sign::Plus));
        let balanced = TwoPowerForm::new(vec![PowerGroup::new(2, 1, 1)]).unwrap();
        assert_eq!(balanced.first_unbalanced(), None);
    }

    #[test]
    fn closed_examples() {
        assert_eq!(both(&q(&[(2, 1), (4, 1)], 0)), LaurentPoly::one());
        assert_eq!(both(&q(&[(2, 1), (4, 1)], 1)), lp(&[(1, 1), (0, 1)]));
        assert_eq!(both(&q(&[(4, 1), (4, -1)], 0)), lp(&[(1, 2), (0, -1)]));
        assert_eq!(both(&q(&[(2, -1), (2, -1)], 1)), LaurentPoly::zero());
        for c in [-1, 0, 1] {
            assert_eq!(both(&q(&[(2, 1), (3, 1)], c)), LaurentPoly::u_pow(1));
        }
    }

    #[test]
    fn empty_sum_conventions() {
        assert_eq!(both(&q(&[], 0)), LaurentPoly::one());
        assert_eq!(both(&q(&[], 1)), LaurentPoly::zero());
        assert_eq!(both(&q(&[], -1)), LaurentPoly::zero());
    }

    #[test]
    fn recursive_examples() {
        let mut e = RecursiveEngine::new();
        let mut r = |p: &[(u32, i8)], c| e.beta_query(&q(p, c)).unwrap();
        assert_eq!(r(&[(2, 1), (2, -1)], 0), lp(&[(1, 2), (0, -1)]));
        assert_eq!(r(&[(2, 1), (2, -1), (4, 1)], 0), lp(&[(2, 1)]));
        assert_eq!(r(&[(2, 1), (2, -1), (4, 1)], 1), lp(&[(2, 1), (1, 1)]));
        assert_eq!(beta_closed(&q(&[(2, 1), (2, -1), (4, 1)], 1)), lp(&[(2, 1), (1, 1)]));
        // hand computations: circle, two points, the empty set
        assert_eq!(r(&[(2, 1), (2, 1)], 1), lp(&[(1, 1), (0, 1)]));
        assert_eq!(r(&[(2, 1)], 1), LaurentPoly::constant(2));
        assert_eq!(r(&[(2, 1)], -1), LaurentPoly::zero());
        assert!(e.memo_len() > 0);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_fiber(&q(&[(4, 1), (4, -1)], 0)).unwrap(), -3);
        assert_eq!(euler_fiber(&q(&[(4, 1), (4, -1)], 1)).unwrap(), -2);
        assert_eq!(euler_fiber(&q(&[(2, 1), (2, 1)], -1)).unwrap(), 0);
        assert!(matches!(euler_fiber(&q(&[(2, 1), (3, 1)], 0)), Err(FiberError::NotTwoPowerForm(_))));
        assert!(euler_fiber(&q(&[], 0)).is_err());
    }

    #[test]
    fn negation_duality_small() {
        for pairs in
            [vec![(2, 1), (4, -1), (4, -1)], vec![(6, 1), (2, 1)], vec![(8, -1), (8, 1), (8, 1), (2, -1)]]
        {
            for c in [-1, 0, 1] {
                let query = q(&pairs, c);
                assert_eq!(beta_closed(&query), beta_closed(&query.negated()));
            }
        }
    }

    #[test]
    fn peel_identities_small() {
        let form = TwoPowerForm::new(vec![PowerGroup::new(1, 2, 1), PowerGroup::new(3, 1, 2)]).unwrap();
        check_peel_identities(&form, beta_two_power_closed).unwrap();
        let mut e = RecursiveEngine::new();
        check_peel_identities(&form, |f, t| e.beta(f, t).unwrap()).unwrap();
    }
}
