//! Brieskorn polynomials `Σ ε_i x_i^{k_i}` and their arc-analytic classification.
//!
//! Coefficients are stored as signs only: a nonzero real coefficient can be
//! scaled away by a linear change of variables. A polynomial is *normalized*
//! when its exponents are nondecreasing and, inside each run of equal
//! exponents, the positive terms come first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of variables accepted. Fiber coefficients grow like `2^d`,
/// which keeps every computation inside `i64`.
pub const MAX_VARIABLES: usize = 32;

/// Ordered so that `Plus < Minus`: sorting terms puts positives first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// One monomial `±x^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    pub exponent: u32,
    pub sign: Sign,
}

impl Term {
    pub fn new(exponent: u32, sign: Sign) -> Self {
        Self { exponent, sign }
    }

    pub fn plus(exponent: u32) -> Self {
        Self::new(exponent, Sign::Plus)
    }

    pub fn minus(exponent: u32) -> Self {
        Self::new(exponent, Sign::Minus)
    }

    pub fn negated(self) -> Self {
        Self::new(self.exponent, self.sign.flip())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrieskornError {
    #[error("a Brieskorn polynomial needs at least one term")]
    Empty,
    #[error("exponents must be at least 1")]
    ZeroExponent,
    #[error("at most {MAX_VARIABLES} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("the set of relevant exponents is only defined for singular polynomials")]
    Nonsingular,
    #[error("polynomials have different numbers of variables ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at column {}", .position + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("number out of range")]
    NumberOutOfRange,
    #[error("zero coefficient")]
    ZeroCoefficient,
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("variable index must be at least 1")]
    ZeroIndex,
    #[error("variable x{0} appears more than once")]
    RepeatedVariable(u32),
    #[error("more than {MAX_VARIABLES} variables")]
    TooManyVariables,
    #[error("empty polynomial")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrieskornPoly {
    terms: Vec<Term>,
    normalized: bool,
}

impl BrieskornPoly {
    pub fn new(terms: Vec<Term>) -> Result<Self, BrieskornError> {
        if terms.is_empty() {
            return Err(BrieskornError::Empty);
        }
        if terms.len() > MAX_VARIABLES {
            return Err(BrieskornError::TooManyVariables(terms.len()));
        }
        if terms.iter().any(|t| t.exponent == 0) {
            return Err(BrieskornError::ZeroExponent);
        }
        Ok(Self { terms, normalized: false })
    }

    /// Convenience constructor from `(exponent, ±1)` pairs.
    pub fn from_pairs(pairs: &[(u32, i8)]) -> Result<Self, BrieskornError> {
        let terms =
            pairs.iter().map(|&(k, s)| Term::new(k, if s < 0 { Sign::Minus } else { Sign::Plus })).collect();
        Self::new(terms)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).parse()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_variables(&self) -> usize {
        self.terms.len()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.exponent).collect()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.iter().map(|t| t.exponent).max().unwrap_or(1)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Sorts by exponent, positives first among equal exponents.
    pub fn normalize(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.sort();
        Self { terms, normalized: true }
    }

    /// All terms with flipped signs, i.e. `-f`.
    pub fn negated(&self) -> Self {
        let terms = self.terms.iter().map(|t| t.negated()).collect();
        let out = Self { terms, normalized: false };
        if self.normalized {
            out.normalize()
        } else {
            out
        }
    }

    /// Singular at the origin iff no exponent equals 1.
    pub fn is_singular(&self) -> bool {
        self.terms.iter().all(|t| t.exponent >= 2)
    }

    /// Even exponents not divisible by any odd exponent of the polynomial,
    /// sorted and deduplicated.
    pub fn relevant_exponents(&self) -> Result<Vec<u32>, BrieskornError> {
        if !self.is_singular() {
            return Err(BrieskornError::Nonsingular);
        }
        Ok(relevant_exponents(&self.exponents()))
    }

    pub fn sign_counts(&self, k: u32) -> SignCounts {
        sign_counts_of(&self.terms, k)
    }
}

/// The set `K` of even exponents with no odd exponent dividing them.
pub fn relevant_exponents(exponents: &[u32]) -> Vec<u32> {
    let odd: Vec<u32> = exponents.iter().copied().filter(|k| k % 2 == 1).collect();
    let mut out: Vec<u32> =
        exponents.iter().copied().filter(|&k| k % 2 == 0 && !odd.iter().any(|&o| k % o == 0)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of positive and negative coefficients of degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SignCounts {
    pub plus: usize,
    pub minus: usize,
}

pub fn sign_counts_of(terms: &[Term], k: u32) -> SignCounts {
    terms.iter().filter(|t| t.exponent == k).fold(SignCounts::default(), |mut acc, t| {
        match t.sign {
            Sign::Plus => acc.plus += 1,
            Sign::Minus => acc.minus += 1,
        }
        acc
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "cause", rename_all = "kebab-case")]
pub enum VerdictReason {
    BothNonsingular,
    SingularVsNonsingular,
    /// 0-based position in the normalized exponent sequence.
    ExponentMismatch {
        index: usize,
    },
    SignMismatch {
        exponent: u32,
    },
    AllConditionsMet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub reason: VerdictReason,
}

impl EquivalenceVerdict {
    fn from_reason(reason: VerdictReason) -> Self {
        let equivalent = matches!(reason, VerdictReason::BothNonsingular | VerdictReason::AllConditionsMet);
        Self { equivalent, reason }
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.equivalent { "equivalent" } else { "not equivalent" })?;
        match self.reason {
            VerdictReason::BothNonsingular => f.write_str(": both nonsingular"),
            VerdictReason::SingularVsNonsingular => f.write_str(": singular vs nonsingular"),
            VerdictReason::ExponentMismatch { index } => {
                write!(f, ": exponent mismatch at position {}", index + 1)
            }
            VerdictReason::SignMismatch { exponent } => {
                write!(f, ": sign mismatch at exponent {exponent}")
            }
            VerdictReason::AllConditionsMet => f.write_str(": exponents agree and signs agree on K"),
        }
    }
}

/// Decides arc-analytic equivalence of two Brieskorn polynomials in the
/// same number of variables.
pub fn classify_pair(f: &BrieskornPoly, g: &BrieskornPoly) -> Result<EquivalenceVerdict, BrieskornError> {
    if f.num_variables() != g.num_variables() {
        return Err(BrieskornError::DimensionMismatch(f.num_variables(), g.num_variables()));
    }
    let (f, g) = (f.normalize(), g.normalize());
    let reason = match (f.is_singular(), g.is_singular()) {
        (false, false) => VerdictReason::BothNonsingular,
        (true, false) | (false, true) => VerdictReason::SingularVsNonsingular,
        (true, true) => {
            if let Some(index) = f.terms.iter().zip(&g.terms).position(|(a, b)| a.exponent != b.exponent) {
                VerdictReason::ExponentMismatch { index }
            } else {
                relevant_exponents(&f.exponents())
                    .into_iter()
                    .find(|&k| f.sign_counts(k) != g.sign_counts(k))
                    .map_or(VerdictReason::AllConditionsMet, |exponent| VerdictReason::SignMismatch {
                        exponent,
                    })
            }
        }
    };
    Ok(EquivalenceVerdict::from_reason(reason))
}

impl fmt::Display for BrieskornPoly {
    /// `x1^2 - x2^2 - x3^3`; variables are numbered by position.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => f.write_str("-")?,
                (_, Sign::Plus) => f.write_str(" + ")?,
                (_, Sign::Minus) => f.write_str(" - ")?,
            }
            write!(f, "x{}^{}", i + 1, t.exponent)?;
        }
        Ok(())
    }
}

impl FromStr for BrieskornPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => self.err(ParseErrorKind::Unexpected(c)),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    /// Digits with an optional fractional part; returns (start, is_zero, integer value if integral).
    fn number(&mut self) -> Result<(usize, bool, Option<u64>), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = self.pos;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(self.unexpected());
        }
        let int_part = &self.text[start..end];
        let mut frac_part = "";
        if end < bytes.len() && bytes[end] == b'.' {
            let fstart = end + 1;
            let mut fend = fstart;
            while fend < bytes.len() && bytes[fend].is_ascii_digit() {
                fend += 1;
            }
            if fend == fstart {
                self.pos = fstart;
                return Err(self.err(ParseErrorKind::Expected("digits after '.'")));
            }
            frac_part = &self.text[fstart..fend];
            end = fend;
        }
        self.pos = end;
        let is_zero = int_part.bytes().all(|b| b == b'0') && frac_part.bytes().all(|b| b == b'0');
        let value = if frac_part.is_empty() { int_part.parse::<u64>().ok() } else { None };
        Ok((start, is_zero, value))
    }

    fn integer(&mut self) -> Result<(usize, u32), ParseError> {
        let (start, _, value) = self.number()?;
        let v = value
            .and_then(|v| u32::try_from(v).ok())
            .ok_or(ParseError { position: start, kind: ParseErrorKind::NumberOutOfRange })?;
        Ok((start, v))
    }

    /// `[coef *] x N [^ exp]`, after the sign has been consumed.
    fn monomial(&mut self) -> Result<(usize, u32, u32), ParseError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let (start, is_zero, _) = self.number()?;
            if is_zero {
                return Err(ParseError { position: start, kind: ParseErrorKind::ZeroCoefficient });
            }
            if self.peek() == Some('*') {
                self.bump();
            }
        }
        let var_pos = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('x') => {
                self.bump();
            }
            _ => {
                return Err(match self.peek() {
                    Some(_) => self.err(ParseErrorKind::Expected("variable 'xN'")),
                    None => self.err(ParseErrorKind::UnexpectedEnd),
                })
            }
        }
        let (idx_pos, index) = self.integer()?;
        if index == 0 {
            return Err(ParseError { position: idx_pos, kind: ParseErrorKind::ZeroIndex });
        }
        let exponent = if self.peek() == Some('^') {
            self.bump();
            let (exp_pos, e) = self.integer()?;
            if e == 0 {
                return Err(ParseError { position: exp_pos, kind: ParseErrorKind::ZeroExponent });
            }
            e
        } else {
            1
        };
        Ok((var_pos, index, exponent))
    }

    fn parse(mut self) -> Result<BrieskornPoly, ParseError> {
        let mut by_index: Vec<(u32, Term)> = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.err(ParseErrorKind::Empty)),
                None => break,
                Some('+') => {
                    self.bump();
                    Sign::Plus
                }
                Some('-') => {
                    self.bump();
                    Sign::Minus
                }
                Some(_) if first => Sign::Plus,
                Some(_) => return Err(self.unexpected()),
            };
            first = false;
            let (pos, index, exponent) = self.monomial()?;
            if by_index.iter().any(|(i, _)| *i == index) {
                return Err(ParseError { position: pos, kind: ParseErrorKind::RepeatedVariable(index) });
            }
            if by_index.len() == MAX_VARIABLES {
                return Err(ParseError { position: pos, kind: ParseErrorKind::TooManyVariables });
            }
            by_index.push((index, Term::new(exponent, sign)));
        }
        by_index.sort_by_key(|(i, _)| *i);
        Ok(BrieskornPoly { terms: by_index.into_iter().map(|(_, t)| t).collect(), normalized: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(pairs: &[(u32, i8)]) -> BrieskornPoly {
        BrieskornPoly::from_pairs(pairs).unwrap()
    }

    fn parse(s: &str) -> BrieskornPoly {
        BrieskornPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("x1^2 - x2^3").terms(), bp(&[(2, 1), (3, -1)]).terms());
        assert_eq!(parse("-2*x1^3 + x2^2 - x3^2").terms(), bp(&[(3, -1), (2, 1), (2, -1)]).terms());
        let err = BrieskornPoly::parse("x1^2 + 0*x2^4").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroCoefficient);
        assert_eq!(err.position, 7);
    }

    #[test]
    fn parse_variants() {
        assert_eq!(parse("  x2 ^ 4 -x1^6 ").terms(), bp(&[(6, -1), (4, 1)]).terms());
        assert_eq!(parse("2.5*x1^2 - 0.1 * x2^2").terms(), bp(&[(2, 1), (2, -1)]).terms());
        assert_eq!(parse("x1^1+x2^2").terms(), bp(&[(1, 1), (2, 1)]).terms());
        assert_eq!(parse("x1").terms(), bp(&[(1, 1)]).terms());
    }

    #[test]
    fn parse_errors() {
        let kind = |s: &str| BrieskornPoly::parse(s).unwrap_err().kind;
        assert_eq!(kind("x1^2 + x1^3"), ParseErrorKind::RepeatedVariable(1));
        assert_eq!(kind(""), ParseErrorKind::Empty);
        assert_eq!(kind("   "), ParseErrorKind::Empty);
        assert_eq!(kind("x1^0"), ParseErrorKind::ZeroExponent);
        assert_eq!(kind("x0^2"), ParseErrorKind::ZeroIndex);
        assert_eq!(kind("x1^2 +"), ParseErrorKind::UnexpectedEnd);
        assert_eq!(kind("x1^2 x2^2"), ParseErrorKind::Unexpected('x'));
        assert_eq!(kind("y1^2"), ParseErrorKind::Expected("variable 'xN'"));
        assert_eq!(kind("x1^99999999999"), ParseErrorKind::NumberOutOfRange);
        assert_eq!(kind("0.00*x1^2"), ParseErrorKind::ZeroCoefficient);
        let many: Vec<String> = (1..=33).map(|i| format!("x{i}^2")).collect();
        assert_eq!(kind(&many.join("+")), ParseErrorKind::TooManyVariables);
        let e = BrieskornPoly::parse("x1^2 + x1^3").unwrap_err();
        assert_eq!(e.to_string(), "variable x1 appears more than once at column 8");
    }

    #[test]
    fn new_rejects_invalid() {
        assert_eq!(BrieskornPoly::new(vec![]), Err(BrieskornError::Empty));
        assert_eq!(BrieskornPoly::from_pairs(&[(0, 1)]), Err(BrieskornError::ZeroExponent));
    }

    #[test]
    fn normalize_examples() {
        let n = bp(&[(3, -1), (2, 1), (2, -1)]).normalize();
        assert_eq!(n.terms(), bp(&[(2, 1), (2, -1), (3, -1)]).terms());
        assert!(n.is_normalized());
        assert_eq!(bp(&[(2, 1)]).normalize().terms(), bp(&[(2, 1)]).terms());
        assert_eq!(bp(&[(4, -1), (4, 1)]).normalize().terms(), bp(&[(4, 1), (4, -1)]).terms());
        assert_eq!(parse("-2*x1^3 + x2^2 - x3^2").normalize().to_string(), "x1^2 - x2^2 - x3^3");
    }

    #[test]
    fn singularity_examples() {
        assert!(!bp(&[(1, 1), (5, -1)]).is_singular());
        assert!(bp(&[(2, 1)]).is_singular());
        assert!(bp(&[(2, 1), (3, -1)]).is_singular());
    }

    #[test]
    fn relevant_exponent_examples() {
        assert_eq!(bp(&[(2, 1), (3, 1), (12, 1)]).relevant_exponents().unwrap(), vec![2]);
        assert_eq!(bp(&[(4, 1), (4, -1)]).relevant_exponents().unwrap(), vec![4]);
        assert_eq!(bp(&[(3, 1), (9, 1)]).relevant_exponents().unwrap(), Vec::<u32>::new());
        assert_eq!(bp(&[(1, 1), (2, 1)]).relevant_exponents(), Err(BrieskornError::Nonsingular));
    }

    #[test]
    fn sign_count_examples() {
        let sc = |plus, minus| SignCounts { plus, minus };
        assert_eq!(bp(&[(4, 1), (4, -1)]).sign_counts(4), sc(1, 1));
        assert_eq!(bp(&[(2, 1), (4, -1)]).sign_counts(4), sc(0, 1));
        assert_eq!(bp(&[(2, 1)]).sign_counts(6), sc(0, 0));
    }

    #[test]
    fn classify_examples() {
        let v = |a: &str, b: &str| classify_pair(&parse(a), &parse(b)).unwrap();
        assert!(v("x1^2+x2^3", "x1^2-x2^3").equivalent);
        let r = v("x1^2+x2^4+x3^4", "-x1^2-x2^4-x3^4");
        assert_eq!(r.reason, VerdictReason::SignMismatch { exponent: 2 });
        assert!(!r.equivalent);
        assert!(v("x1^3+x2^6", "x1^3-x2^6").equivalent);
        let r = v("x1^2+x2^4", "x1^2+x2^6");
        assert_eq!(r.reason, VerdictReason::ExponentMismatch { index: 1 });
        assert_eq!(v("x1^1+x2^3", "x1^1-x2^8").reason, VerdictReason::BothNonsingular);
        assert_eq!(v("x1^1+x2^3", "x1^2-x2^8").reason, VerdictReason::SingularVsNonsingular);
        assert_eq!(
            classify_pair(&parse("x1^2"), &parse("x1^2+x2^2")),
            Err(BrieskornError::DimensionMismatch(1, 2))
        );
    }

    /// Normalized singular polynomials with `d` terms and exponents in `2..=max_exp`.
    fn enumerate(d: usize, max_exp: u32) -> Vec<BrieskornPoly> {
        let atoms: Vec<Term> =
            (2..=max_exp).flat_map(|k| Sign::BOTH.into_iter().map(move |s| Term::new(k, s))).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; d];
        loop {
            out.push(BrieskornPoly::new(idx.iter().map(|&i| atoms[i]).collect()).unwrap().normalize());
            let mut pos = d;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if idx[pos] + 1 < atoms.len() {
                    idx[pos] += 1;
                    for j in pos + 1..d {
                        idx[j] = idx[pos];
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn classify_is_an_equivalence_relation() {
        for d in 1..=3 {
            let polys = enumerate(d, 6);
            let eq: Vec<Vec<bool>> = polys
                .iter()
                .map(|f| polys.iter().map(|g| classify_pair(f, g).unwrap().equivalent).collect())
                .collect();
            for i in 0..polys.len() {
                assert!(eq[i][i]);
                for j in 0..polys.len() {
                    assert_eq!(eq[i][j], eq[j][i]);
                    if eq[i][j] {
                        for k in 0..polys.len() {
                            if eq[j][k] {
                                assert!(eq[i][k], "{} ~ {} ~ {}", polys[i], polys[j], polys[k]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classify_ignores_odd_flips_and_permutations() {
        for d in 1..=3 {
            for f in enumerate(d, 6) {
                let g = enumerate(d, 6)[0].clone();
                let base = classify_pair(&f, &g).unwrap();
                let mut terms = f.terms().to_vec();
                terms.reverse();
                for t in terms.iter_mut().filter(|t| t.exponent % 2 == 1) {
                    *t = t.negated();
                }
                let h = BrieskornPoly::new(terms).unwrap();
                assert_eq!(classify_pair(&h, &g).unwrap(), base);
                assert!(classify_pair(&h, &f).unwrap().equivalent);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn normalize_idempotent_and_preserves_multiset(
            pairs in proptest::collection::vec((1u32..10, proptest::bool::ANY), 1..8)
        ) {
            let terms: Vec<Term> = pairs
                .iter()
                .map(|&(k, s)| Term::new(k, if s { Sign::Plus } else { Sign::Minus }))
                .collect();
            let f = BrieskornPoly::new(terms.clone()).unwrap();
            let n = f.normalize();
            proptest::prop_assert_eq!(n.normalize(), n.clone());
            let mut sorted = terms;
            sorted.sort();
            proptest::prop_assert_eq!(n.terms(), &sorted[..]);
            proptest::prop_assert!(n.terms().windows(2).all(|w| w[0] <= w[1]));
            let reparsed = BrieskornPoly::parse(&n.to_string()).unwrap();
            proptest::prop_assert_eq!(reparsed.terms(), n.terms());
        }
    }
}
