//! Exhaustive cross-validation sweeps. Each suite compares two independent
//! computations over a bounded family and reports how many cases it checked
//! and which ones failed.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::brieskorn::{classify_pair, BrieskornPoly, Sign, Term};
use crate::enumerate::{normalized_polys, term_multisets};
use crate::fibers::{
    beta_closed, beta_recursive, beta_two_power_closed, check_peel_identities, euler_fiber, reduce,
    FiberQuery, RecursiveEngine, Reduced, Target,
};
use crate::recovery::roundtrip_check;
use crate::table::{generate_table, predicted_class_count, TableBounds};
use crate::zeta::{
    arc_space_monomial_oracle, modified_from_plain, modified_zeta, monomial_modified_zeta,
    plain_from_modified, zeta_equal,
};

/// Failures kept per suite; the count is always exact.
const MAX_SAMPLES: usize = 8;

pub const FIBER_EXPONENTS: [u32; 6] = [2, 4, 6, 8, 12, 16];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub samples: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }

    fn from_outcomes<I>(name: &'static str, outcomes: I) -> Self
    where
        I: IntoParallelIterator<Item = Option<String>>,
    {
        let (checked, mut failed) = outcomes
            .into_par_iter()
            .fold(
                || (0usize, Vec::new()),
                |(n, mut f), o| {
                    if let Some(msg) = o {
                        f.push(msg);
                    }
                    (n + 1, f)
                },
            )
            .reduce(
                || (0, Vec::new()),
                |(a, mut fa), (b, fb)| {
                    fa.extend(fb);
                    (a + b, fa)
                },
            );
        failed.sort();
        let failures = failed.len();
        failed.truncate(MAX_SAMPLES);
        Self { name, checked, failures, samples: failed }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checked, {} failed", self.name, self.checked, self.failures)
    }
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Option<String> {
    bad.then(msg)
}

fn show_terms(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    BrieskornPoly::new(terms.to_vec()).map(|p| p.to_string()).unwrap_or_default()
}

fn fiber_queries(max_vars: usize, exponents: &[u32]) -> Vec<FiberQuery> {
    term_multisets(max_vars, exponents)
        .into_iter()
        .flat_map(|t| Target::ALL.into_iter().map(move |c| FiberQuery::new(t.clone(), c)))
        .collect()
}

pub fn fiber_engine_agreement(max_vars: usize, exponents: &[u32]) -> SuiteReport {
    let queries = fiber_queries(max_vars, exponents);
    SuiteReport::from_outcomes(
        "fiber engine agreement",
        queries.par_iter().map(|q| {
            let closed = beta_closed(q);
            match beta_recursive(q) {
                Ok(rec) => fail_if(rec != closed, || {
                    format!("{} = {}: closed {closed}, recursive {rec}", show_terms(&q.terms), q.target)
                }),
                Err(e) => Some(format!("{} = {}: {e}", show_terms(&q.terms), q.target)),
            }
        }),
    )
}

/// Over the all-even fibers of the sweep, where the parity formula applies.
pub fn euler_specialization(max_vars: usize, exponents: &[u32]) -> SuiteReport {
    let queries: Vec<_> = fiber_queries(max_vars, exponents)
        .into_iter()
        .filter(|q| matches!(reduce(&q.terms), Reduced::TwoPower(_)))
        .collect();
    SuiteReport::from_outcomes(
        "euler specialization",
        queries.par_iter().map(|q| {
            let at_minus_one = beta_closed(q).euler_characteristic();
            match (at_minus_one, euler_fiber(q)) {
                (Ok(a), Ok(b)) if a == b => None,
                (a, b) => Some(format!("{} = {}: {a:?} vs {b:?}", show_terms(&q.terms), q.target)),
            }
        }),
    )
}

/// Real dimension of a nonempty fiber: `n - 1`, except the zero fiber of
/// a definite form, which is the origin alone.
pub fn fiber_dimension(q: &FiberQuery) -> usize {
    let definite =
        q.terms.iter().all(|t| t.exponent % 2 == 0) && q.terms.windows(2).all(|w| w[0].sign == w[1].sign);
    if q.target == Target::Zero && definite {
        0
    } else {
        q.terms.len().saturating_sub(1)
    }
}

/// Nonzero β has degree equal to the fiber dimension and a positive leading
/// coefficient; the zero fiber is never empty.
pub fn dimension_law(max_vars: usize, exponents: &[u32]) -> SuiteReport {
    let queries: Vec<_> =
        fiber_queries(max_vars, exponents).into_iter().filter(|q| !q.terms.is_empty()).collect();
    SuiteReport::from_outcomes(
        "dimension law",
        queries.par_iter().map(|q| {
            let beta = beta_closed(q);
            let name = || format!("{} = {}: {beta}", show_terms(&q.terms), q.target);
            match beta.degree_and_leading() {
                None => fail_if(q.target == Target::Zero, name),
                Some((deg, lead)) => fail_if(deg as usize != fiber_dimension(q) || lead <= 0, name),
            }
        }),
    )
}

pub fn sign_flip_duality(max_vars: usize, exponents: &[u32]) -> SuiteReport {
    let queries = fiber_queries(max_vars, exponents);
    SuiteReport::from_outcomes(
        "sign-flip duality",
        queries.par_iter().map(|q| {
            let a = beta_closed(q);
            let b = beta_closed(&q.negated());
            fail_if(a != b, || format!("{} = {}: {a} vs {b}", show_terms(&q.terms), q.target))
        }),
    )
}

pub fn peel_identities(max_vars: usize, exponents: &[u32]) -> SuiteReport {
    let forms: Vec<_> = term_multisets(max_vars, exponents)
        .into_iter()
        .filter_map(|t| match reduce(&t) {
            Reduced::TwoPower(form) => Some(form),
            _ => None,
        })
        .collect();
    SuiteReport::from_outcomes(
        "peel identities",
        forms.par_iter().map(|form| {
            let closed = check_peel_identities(form, beta_two_power_closed);
            let mut engine = RecursiveEngine::new();
            let recursive = check_peel_identities(form, |g, c| {
                engine.beta(g, c).expect("recursive engine on a valid form")
            });
            closed.and(recursive).err()
        }),
    )
}

/// Plain zeta of `±x^k` from the arc-space stratification against the
/// conversion of the closed modified series, and the closed series against
/// the general coefficient formula.
pub fn monomial_oracle(max_k: u32, max_n: u32) -> SuiteReport {
    let cases: Vec<(Sign, u32)> =
        Sign::BOTH.into_iter().flat_map(|s| (2..=max_k).map(move |k| (s, k))).collect();
    let outcomes: Vec<Option<String>> = cases
        .par_iter()
        .flat_map_iter(|&(sign, k)| {
            let modified = monomial_modified_zeta(sign, k, max_n).expect("valid monomial");
            let general = modified_zeta(&BrieskornPoly::new(vec![Term::new(k, sign)]).unwrap(), max_n)
                .expect("valid monomial");
            let plain = plain_from_modified(&modified).expect("modified input");
            let label = if sign == Sign::Plus { "+" } else { "-" };
            let mut out = vec![fail_if(general != modified, || {
                format!("{label}x^{k}: closed series differs from coefficient formula")
            })];
            out.extend((1..=max_n).map(|n| {
                let oracle = arc_space_monomial_oracle(sign, k, n).expect("valid monomial");
                let got = plain.coeff(n as usize).expect("within order");
                fail_if(*got != oracle, || format!("{label}x^{k} n={n}: {got} vs oracle {oracle}"))
            }));
            out
        })
        .collect();
    SuiteReport::from_outcomes("monomial oracle", outcomes)
}

/// `modified_from_plain ∘ plain_from_modified = id` over all normalized
/// polynomials, nonsingular ones included.
pub fn conversion_roundtrip(max_d: usize, max_exp: u32, order: u32) -> SuiteReport {
    let polys: Vec<_> = (1..=max_d).flat_map(|d| normalized_polys(d, 1, max_exp)).collect();
    SuiteReport::from_outcomes(
        "conversion round-trip",
        polys.par_iter().map(|f| {
            let z = modified_zeta(f, order).expect("bounded order");
            let back = plain_from_modified(&z).and_then(|p| modified_from_plain(&p));
            fail_if(back.as_ref() != Ok(&z), || format!("{f}: {back:?}"))
        }),
    )
}

/// Over ordered pairs with the same number of variables: equal realized
/// zeta functions exactly when the classifier says equivalent.
pub fn completeness(max_d: usize, max_exp: u32, order: u32) -> SuiteReport {
    let mut outcomes: Vec<Option<String>> = Vec::new();
    for d in 1..=max_d {
        let polys = normalized_polys(d, 2, max_exp);
        let zetas: Vec<_> =
            polys.par_iter().map(|f| modified_zeta(f, order).expect("bounded order")).collect();
        outcomes.par_extend((0..polys.len()).into_par_iter().flat_map_iter(|i| {
            let (polys, zetas) = (&polys, &zetas);
            (0..polys.len()).map(move |j| {
                let same_zeta = zeta_equal(&zetas[i], &zetas[j]).expect("same kind and order");
                match classify_pair(&polys[i], &polys[j]) {
                    Ok(v) => fail_if(v.equivalent != same_zeta, || {
                        format!("{} vs {}: classifier {}, zeta equal {same_zeta}", polys[i], polys[j], v)
                    }),
                    Err(e) => Some(format!("{} vs {}: {e}", polys[i], polys[j])),
                }
            })
        }));
    }
    SuiteReport::from_outcomes("completeness", outcomes)
}

pub fn recovery_roundtrip(max_d: usize, max_exp: u32) -> SuiteReport {
    let polys: Vec<_> = (1..=max_d).flat_map(|d| normalized_polys(d, 2, max_exp)).collect();
    SuiteReport::from_outcomes(
        "sign recovery round-trip",
        polys.par_iter().map(|f| match roundtrip_check(f, 2 * f.max_exponent()) {
            Ok(true) => None,
            Ok(false) => Some(format!("{f}: recovered counts differ")),
            Err(e) => Some(format!("{f}: {e}")),
        }),
    )
}

/// Builds the classification table (which checks zeta equality against the
/// partition as it goes) and compares the class count with the
/// combinatorial prediction.
pub fn table_partition(max_d: usize, max_exp: u32, order: u32) -> SuiteReport {
    let bounds = TableBounds::new(1, max_d, 2, max_exp);
    let outcome = match generate_table(bounds, Some(order), |_| Ok(())) {
        Ok(summary) => {
            let predicted = predicted_class_count(bounds);
            fail_if(summary.classes as u64 != predicted, || {
                format!("{} classes, predicted {predicted}", summary.classes)
            })
        }
        Err(e) => Some(e.to_string()),
    };
    SuiteReport::from_outcomes("table partition", vec![outcome])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfCheckBounds {
    pub max_d: usize,
    pub max_exp: u32,
    pub order: u32,
    pub fiber_vars: usize,
    pub recovery_max_d: usize,
    pub recovery_max_exp: u32,
    pub oracle_max_k: u32,
    pub oracle_max_n: u32,
}

impl Default for SelfCheckBounds {
    fn default() -> Self {
        Self {
            max_d: 3,
            max_exp: 8,
            order: 16,
            fiber_vars: 6,
            recovery_max_d: 4,
            recovery_max_exp: 10,
            oracle_max_k: 6,
            oracle_max_n: 40,
        }
    }
}

pub fn run_all(b: &SelfCheckBounds) -> Vec<SuiteReport> {
    vec![
        fiber_engine_agreement(b.fiber_vars, &FIBER_EXPONENTS),
        euler_specialization(b.fiber_vars, &FIBER_EXPONENTS),
        dimension_law(b.fiber_vars, &FIBER_EXPONENTS),
        sign_flip_duality(b.fiber_vars, &FIBER_EXPONENTS),
        peel_identities(b.fiber_vars, &FIBER_EXPONENTS),
        monomial_oracle(b.oracle_max_k, b.oracle_max_n),
        conversion_roundtrip(b.max_d, b.max_exp, b.order),
        completeness(b.max_d, b.max_exp, b.order),
        recovery_roundtrip(b.recovery_max_d, b.recovery_max_exp),
        table_partition(b.max_d, b.max_exp, b.order),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_pass() {
        let b = SelfCheckBounds {
            max_d: 2,
            max_exp: 6,
            order: 12,
            fiber_vars: 3,
            recovery_max_d: 2,
            recovery_max_exp: 8,
            oracle_max_k: 4,
            oracle_max_n: 12,
        };
        for r in run_all(&b) {
            assert!(r.passed(), "{r}: {:?}", r.samples);
        }
    }

    #[test]
    fn completeness_counts_ordered_pairs() {
        let n1 = normalized_polys(1, 2, 4).len();
        let n2 = normalized_polys(2, 2, 4).len();
        assert_eq!(completeness(2, 4, 8).checked, n1 * n1 + n2 * n2);
    }

    #[test]
    fn failures_are_counted() {
        let r = SuiteReport::from_outcomes("t", vec![None, Some("b".into()), Some("a".into())]);
        assert_eq!((r.checked, r.failures), (3, 2));
        assert_eq!(r.samples, vec!["a", "b"]);
        assert!(!r.passed());
        assert_eq!(r.to_string(), "FAIL t: 3 checked, 2 failed");
        assert!(!SuiteReport::from_outcomes("e", Vec::new()).passed());
    }
}
