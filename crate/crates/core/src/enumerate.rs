//! Exhaustive enumeration of normalized Brieskorn polynomials and fiber
//! sums within small bounds.

use itertools::Itertools;

use crate::brieskorn::{BrieskornPoly, Sign, Term};

/// Nondecreasing exponent sequences of length `d` in `min_exp..=max_exp`.
pub fn exponent_multisets(d: usize, min_exp: u32, max_exp: u32) -> impl Iterator<Item = Vec<u32>> {
    (min_exp..=max_exp).combinations_with_replacement(d)
}

/// All normalized sign assignments for a nondecreasing exponent sequence:
/// inside a run of equal exponents only the number of minus signs matters.
pub fn sign_patterns(exponents: &[u32]) -> Vec<BrieskornPoly> {
    let runs: Vec<(u32, usize)> =
        exponents.iter().chunk_by(|&&k| k).into_iter().map(|(k, run)| (k, run.count())).collect();
    runs.iter()
        .map(|&(_, r)| 0..=r)
        .multi_cartesian_product()
        .map(|minus_counts| {
            let terms = runs
                .iter()
                .zip(&minus_counts)
                .flat_map(|(&(k, r), &m)| {
                    std::iter::repeat_n(Term::plus(k), r - m).chain(std::iter::repeat_n(Term::minus(k), m))
                })
                .collect();
            BrieskornPoly::new(terms).expect("valid terms").normalize()
        })
        .collect()
}

/// Every normalized polynomial with `d` terms and exponents in `min_exp..=max_exp`,
/// grouped by exponent sequence.
pub fn normalized_polys(d: usize, min_exp: u32, max_exp: u32) -> Vec<BrieskornPoly> {
    exponent_multisets(d, min_exp, max_exp).flat_map(|e| sign_patterns(&e)).collect()
}

/// Multisets of signed terms of size `0..=max_vars` over the given exponents,
/// in canonical sorted order.
pub fn term_multisets(max_vars: usize, exponents: &[u32]) -> Vec<Vec<Term>> {
    let atoms: Vec<Term> = exponents
        .iter()
        .flat_map(|&k| Sign::BOTH.into_iter().map(move |s| Term::new(k, s)))
        .sorted()
        .dedup()
        .collect();
    (0..=max_vars).flat_map(|n| atoms.iter().copied().combinations_with_replacement(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_multiset_formula() {
        // normalized polynomials are multisets of (exponent, sign) atoms
        for d in 1..=3 {
            let atoms = 2 * 7;
            assert_eq!(normalized_polys(d, 2, 8).len(), binom(atoms + d - 1, d));
        }
        assert_eq!(term_multisets(2, &[2, 4]).len(), 1 + 4 + binom(5, 2));
    }

    #[test]
    fn patterns_are_normalized_and_distinct() {
        let ps = sign_patterns(&[2, 2, 3, 4, 4, 4]);
        assert_eq!(ps.len(), 3 * 2 * 4);
        assert!(ps.iter().all(|p| p.is_normalized()));
        assert!(ps.iter().all(|p| p.terms().windows(2).all(|w| w[0] <= w[1])));
        assert_eq!(ps.iter().unique().count(), ps.len());
    }

    #[test]
    fn small_listing() {
        let texts: Vec<String> = normalized_polys(2, 2, 2).iter().map(|p| p.to_string()).collect();
        assert_eq!(texts, vec!["x1^2 + x2^2", "x1^2 - x2^2", "-x1^2 - x2^2"]);
    }
}
