//! Recovering the sign counts `σ_k^±` for `k ∈ K` from a realized modified
//! zeta function and the exponent vector.
//!
//! For `k ∈ K` the coefficient `a_k` determines
//! `π = β{Σ_{k_i | k} ε_i x_i^{k_i} = 1} = (u·β(F⁺a_k) - β(ā_k))·u^{E_k - 1} + u^{D_k - 1}`
//! with `E_k = Σ ⌊k/k_i⌋` and `D_k = #{i : k_i | k}`. Every exponent dividing
//! `k` is even, so `ρ = π - u^{D_k - 1}` is a single monomial: `+u^{σ⁻}` or
//! `-u^{σ⁻ - 1}`, where `σ⁻` counts negative terms over all divisors of `k`.
//! Processing `K` in increasing order peels off the divisors already seen.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brieskorn::{relevant_exponents, BrieskornPoly};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::zeta::{modified_zeta, RealizedZeta, ZetaError, ZetaKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryError {
    #[error("sign recovery needs the modified zeta function, got {0}")]
    KindMismatch(ZetaKind),
    #[error("zeta function of order {got} is too short, need order {needed}")]
    ZetaTooShort { needed: u32, got: usize },
    #[error("exponents must all be at least 2")]
    InvalidExponent,
    #[error("rho vanishes at k = {0}; the zeta data is not that of a Brieskorn polynomial")]
    ZeroRho(u32),
    #[error("exponent {divisor} divides {k} but is not in K")]
    DivisorClosure { k: u32, divisor: u32 },
    #[error("recovered an impossible sign count at k = {0}")]
    InconsistentCount(u32),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Positive,
    Negative,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Positive => "positive",
            Branch::Negative => "negative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryStep {
    pub k: u32,
    pub sigma_plus: usize,
    pub sigma_minus: usize,
    pub pi: LaurentPoly,
    pub rho: LaurentPoly,
    pub branch: Branch,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignRecovery {
    pub steps: Vec<RecoveryStep>,
}

impl SignRecovery {
    pub fn get(&self, k: u32) -> Option<&RecoveryStep> {
        self.steps.iter().find(|s| s.k == k)
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub fn recover(exponents: &[u32], z: &RealizedZeta) -> Result<SignRecovery, RecoveryError> {
    if z.kind() != ZetaKind::Modified {
        return Err(RecoveryError::KindMismatch(z.kind()));
    }
    if exponents.iter().any(|&k| k < 2) {
        return Err(RecoveryError::InvalidExponent);
    }
    let mut exps = exponents.to_vec();
    exps.sort_unstable();
    let k_set = relevant_exponents(&exps);
    if let Some(&max_k) = k_set.last() {
        if z.order() < max_k as usize {
            return Err(RecoveryError::ZetaTooShort { needed: max_k, got: z.order() });
        }
    }

    let mut steps: Vec<RecoveryStep> = Vec::with_capacity(k_set.len());
    for &k in &k_set {
        let divisors: Vec<u32> = exps.iter().copied().filter(|ki| k % ki == 0).collect();
        if let Some(&bad) = divisors.iter().find(|d| k_set.binary_search(d).is_err()) {
            return Err(RecoveryError::DivisorClosure { k, divisor: bad });
        }
        let e_k: u64 = exps.iter().map(|&ki| u64::from(k / ki)).sum();
        let e_k = i32::try_from(e_k).map_err(|_| LaurentError::ExponentOverflow)?;
        let d_k = divisors.len() as i32;

        let a = z.coeff(k as usize).expect("order checked above");
        let rho = LaurentPoly::u_pow(1).checked_mul(&a.fplus)?.checked_sub(&a.bbar)?.shift(e_k - 1)?;
        let pi = rho.checked_add(&LaurentPoly::u_pow(d_k - 1))?;
        let (deg, lead) = rho.degree_and_leading().ok_or(RecoveryError::ZeroRho(k))?;
        let (branch, total_minus) = if lead > 0 {
            (Branch::Positive, i64::from(deg))
        } else {
            (Branch::Negative, i64::from(deg) + 1)
        };
        // every proper K-divisor of k has been processed already
        let previous: i64 = steps.iter().filter(|s| k % s.k == 0).map(|s| s.sigma_minus as i64).sum();
        let count = exps.iter().filter(|&&ki| ki == k).count() as i64;
        let sigma_minus = total_minus - previous;
        if !(0..=count).contains(&sigma_minus) {
            return Err(RecoveryError::InconsistentCount(k));
        }
        steps.push(RecoveryStep {
            k,
            sigma_plus: (count - sigma_minus) as usize,
            sigma_minus: sigma_minus as usize,
            pi,
            rho,
            branch,
        });
    }
    Ok(SignRecovery { steps })
}

/// Recovers the signs of `f` from its own modified zeta function and
/// compares with the true counts.
pub fn roundtrip_check(f: &BrieskornPoly, order: u32) -> Result<bool, RecoveryError> {
    let f = f.normalize();
    if !f.is_singular() {
        return Err(RecoveryError::InvalidExponent);
    }
    let z = modified_zeta(&f, order)?;
    let rec = recover(&f.exponents(), &z)?;
    let k_set = relevant_exponents(&f.exponents());
    Ok(rec.steps.len() == k_set.len()
        && rec.steps.iter().zip(&k_set).all(|(s, &k)| {
            let truth = f.sign_counts(k);
            s.k == k && s.sigma_plus == truth.plus && s.sigma_minus == truth.minus
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> BrieskornPoly {
        BrieskornPoly::parse(s).unwrap()
    }

    fn run(s: &str) -> SignRecovery {
        let f = poly(s).normalize();
        recover(&f.exponents(), &modified_zeta(&f, 2 * f.max_exponent()).unwrap()).unwrap()
    }

    #[test]
    fn two_quartics_of_opposite_sign() {
        let r = run("x1^4 - x2^4");
        let s = r.get(4).unwrap();
        assert_eq!(s.pi, LaurentPoly::from_terms([(1, 1), (0, -1)]).unwrap());
        assert_eq!(s.rho, LaurentPoly::constant(-1));
        assert_eq!(s.branch, Branch::Negative);
        assert_eq!((s.sigma_plus, s.sigma_minus), (1, 1));
    }

    #[test]
    fn circle() {
        let r = run("x1^2 + x2^2");
        let s = r.get(2).unwrap();
        assert_eq!(s.pi, LaurentPoly::from_terms([(1, 1), (0, 1)]).unwrap());
        assert_eq!(s.rho, LaurentPoly::one());
        assert_eq!(s.branch, Branch::Positive);
        assert_eq!((s.sigma_plus, s.sigma_minus), (2, 0));
    }

    #[test]
    fn no_even_exponents() {
        assert!(run("x1^3 + x2^9").is_empty());
    }

    #[test]
    fn divisor_chain() {
        let r = run("x1^2 - x2^4 - x3^4 + x4^8");
        let got: Vec<_> = r.steps.iter().map(|s| (s.k, s.sigma_plus, s.sigma_minus)).collect();
        assert_eq!(got, vec![(2, 1, 0), (4, 0, 2), (8, 1, 0)]);
    }

    #[test]
    fn roundtrip_examples() {
        assert!(roundtrip_check(&poly("x1^4-x2^4"), 8).unwrap());
        assert!(roundtrip_check(&poly("x1^2+x2^4+x3^4"), 8).unwrap());
        assert!(roundtrip_check(&poly("x1^3-x2^6"), 12).unwrap());
    }

    #[test]
    fn errors() {
        let f = poly("x1^2 + x2^6");
        let z = modified_zeta(&f, 4).unwrap();
        assert_eq!(recover(&f.exponents(), &z), Err(RecoveryError::ZetaTooShort { needed: 6, got: 4 }));
        let plain = crate::zeta::plain_from_modified(&z).unwrap();
        assert_eq!(recover(&[2, 6], &plain), Err(RecoveryError::KindMismatch(ZetaKind::Plain)));
        assert_eq!(recover(&[1, 2], &z), Err(RecoveryError::InvalidExponent));
        // corrupted data: the zero series has rho = 0 at k = 2
        let zero = modified_zeta(&poly("x1^1 + x2^2"), 4).unwrap();
        assert_eq!(recover(&[2, 2], &zero), Err(RecoveryError::ZeroRho(2)));
        assert!(roundtrip_check(&poly("x1^1"), 4).is_err());
    }
}
