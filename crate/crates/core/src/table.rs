//! Classification tables: every normalized singular Brieskorn polynomial
//! within bounds, tagged with its equivalence-class representative.
//!
//! Equivalent polynomials share their exponent sequence, so classes are
//! built one exponent sequence at a time and streamed out. Each group is
//! partitioned with [`classify_pair`] and the partition is checked against
//! realized zeta equality: members must match their representative, and
//! representatives must differ pairwise, across groups too.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brieskorn::{classify_pair, relevant_exponents, BrieskornPoly, MAX_VARIABLES};
use crate::enumerate::{exponent_multisets, sign_patterns};
use crate::zeta::{modified_zeta, zeta_equal, RealizedZeta, ZetaError, MAX_ORDER};

/// Exponents above this are rejected as out of bounds.
pub const MAX_TABLE_EXPONENT: u32 = 1 << 12;

const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("zeta equality disagrees with the classification for {first} and {second}: {detail}")]
    Disagreement { first: String, second: String, detail: &'static str },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("output error: {0}")]
    Output(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableBounds {
    pub min_d: usize,
    pub max_d: usize,
    pub min_exp: u32,
    pub max_exp: u32,
}

impl TableBounds {
    pub fn new(min_d: usize, max_d: usize, min_exp: u32, max_exp: u32) -> Self {
        Self { min_d, max_d, min_exp, max_exp }
    }

    pub fn validate(&self) -> Result<(), TableError> {
        let bad = |m: String| Err(TableError::InvalidBounds(m));
        if self.min_d == 0 || self.min_d > self.max_d {
            return bad(format!("need 1 <= min-d <= max-d, got {}..={}", self.min_d, self.max_d));
        }
        if self.max_d > MAX_VARIABLES {
            return bad(format!("max-d {} exceeds {MAX_VARIABLES}", self.max_d));
        }
        if self.min_exp < 2 || self.min_exp > self.max_exp {
            return bad(format!("need 2 <= min-exp <= max-exp, got {}..={}", self.min_exp, self.max_exp));
        }
        if self.max_exp > MAX_TABLE_EXPONENT {
            return bad(format!("max-exp {} exceeds {MAX_TABLE_EXPONENT}", self.max_exp));
        }
        Ok(())
    }

    /// `2 · max-exp`.
    pub fn default_order(&self) -> u32 {
        2 * self.max_exp
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSignCount {
    pub k: u32,
    pub plus: usize,
    pub minus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub polynomial: String,
    pub representative: String,
    pub k_set: Vec<u32>,
    pub sign_counts: Vec<KSignCount>,
}

impl TableRecord {
    pub fn csv_header() -> &'static str {
        "polynomial,representative,k_set,sign_counts"
    }

    /// Lists inside a field are `;`-separated; sign counts read `k:plus/minus`.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.polynomial,
            self.representative,
            self.k_set.iter().join(";"),
            self.sign_counts.iter().map(|s| format!("{}:{}/{}", s.k, s.plus, s.minus)).join(";")
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub polynomials: usize,
    pub classes: usize,
    pub zeta_comparisons: usize,
}

struct GroupResult {
    d: usize,
    records: Vec<TableRecord>,
    /// (zeta hash, representative polynomial) per class
    representatives: Vec<(u64, BrieskornPoly)>,
    comparisons: usize,
}

fn zeta_hash(z: &RealizedZeta) -> u64 {
    let mut h = DefaultHasher::new();
    z.hash(&mut h);
    h.finish()
}

fn process_group(exponents: &[u32], order: u32) -> Result<GroupResult, TableError> {
    let polys = sign_patterns(exponents);
    let zetas = polys.iter().map(|f| modified_zeta(f, order)).collect::<Result<Vec<_>, _>>()?;
    let k_set = relevant_exponents(exponents);

    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(polys.len());
    for (i, f) in polys.iter().enumerate() {
        let found = reps
            .iter()
            .copied()
            .find(|&r| classify_pair(f, &polys[r]).expect("same number of variables").equivalent);
        match found {
            Some(r) => class_of.push(r),
            None => {
                reps.push(i);
                class_of.push(i);
            }
        }
    }

    let mut comparisons = 0;
    for (i, &r) in class_of.iter().enumerate() {
        comparisons += 1;
        if !zeta_equal(&zetas[i], &zetas[r])? {
            return Err(TableError::Disagreement {
                first: polys[i].to_string(),
                second: polys[r].to_string(),
                detail: "equivalent polynomials with different zeta functions",
            });
        }
    }
    for (a, b) in reps.iter().tuple_combinations() {
        comparisons += 1;
        if zeta_equal(&zetas[*a], &zetas[*b])? {
            return Err(TableError::Disagreement {
                first: polys[*a].to_string(),
                second: polys[*b].to_string(),
                detail: "inequivalent polynomials with equal zeta functions",
            });
        }
    }

    let records = polys
        .iter()
        .zip(&class_of)
        .map(|(f, &r)| TableRecord {
            polynomial: f.to_string(),
            representative: polys[r].to_string(),
            k_set: k_set.clone(),
            sign_counts: k_set
                .iter()
                .map(|&k| {
                    let c = f.sign_counts(k);
                    KSignCount { k, plus: c.plus, minus: c.minus }
                })
                .collect(),
        })
        .collect();
    let representatives = reps.iter().map(|&r| (zeta_hash(&zetas[r]), polys[r].clone())).collect();
    Ok(GroupResult { d: exponents.len(), records, representatives, comparisons })
}

/// Enumerates, classifies and cross-checks every normalized singular
/// polynomial within `bounds`, streaming records to `sink` in a
/// deterministic order (by number of variables, then exponent sequence,
/// then sign pattern). `order` defaults to `2 · max-exp`.
pub fn generate_table<F>(
    bounds: TableBounds,
    order: Option<u32>,
    mut sink: F,
) -> Result<TableSummary, TableError>
where
    F: FnMut(&TableRecord) -> std::io::Result<()>,
{
    bounds.validate()?;
    let order = order.unwrap_or_else(|| bounds.default_order());
    if order == 0 || order > MAX_ORDER {
        return Err(TableError::InvalidBounds(format!("order must be in 1..={MAX_ORDER}")));
    }
    let mut summary = TableSummary::default();
    // classes never span different numbers of variables
    for d in bounds.min_d..=bounds.max_d {
        let mut seen: HashMap<u64, Vec<BrieskornPoly>> = HashMap::new();
        for chunk in &exponent_multisets(d, bounds.min_exp, bounds.max_exp).chunks(CHUNK) {
            let groups: Vec<Vec<u32>> = chunk.collect();
            let results =
                groups.par_iter().map(|e| process_group(e, order)).collect::<Result<Vec<_>, _>>()?;
            for group in results {
                debug_assert_eq!(group.d, d);
                summary.zeta_comparisons += group.comparisons;
                for (hash, rep) in group.representatives {
                    let bucket = seen.entry(hash).or_default();
                    for other in bucket.iter() {
                        summary.zeta_comparisons += 1;
                        if zeta_equal(&modified_zeta(other, order)?, &modified_zeta(&rep, order)?)? {
                            return Err(TableError::Disagreement {
                                first: other.to_string(),
                                second: rep.to_string(),
                                detail: "different exponents with equal zeta functions",
                            });
                        }
                    }
                    bucket.push(rep);
                    summary.classes += 1;
                }
                for record in &group.records {
                    sink(record).map_err(|e| TableError::Output(e.to_string()))?;
                    summary.polynomials += 1;
                }
            }
        }
    }
    Ok(summary)
}

/// Number of classes predicted without classifying anything: one class per
/// exponent sequence and choice of minus-count at each exponent of `K`.
pub fn predicted_class_count(bounds: TableBounds) -> u64 {
    (bounds.min_d..=bounds.max_d)
        .flat_map(|d| exponent_multisets(d, bounds.min_exp, bounds.max_exp))
        .map(|e| {
            relevant_exponents(&e)
                .iter()
                .map(|&k| e.iter().filter(|&&x| x == k).count() as u64 + 1)
                .product::<u64>()
        })
        .sum()
}
