//! Binomial-expansion growth bounds and Hilbert-sequence predicates.
//!
//! The central object is the i-binomial expansion of an integer, which is the
//! engine behind the Macaulay, Gotzmann and Green growth bounds, and the
//! O-sequence / SI-sequence tests built from them.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// Binomial coefficient under the convention that `C(m, q) = 0` whenever
/// `m < q` or `q < 0`.
fn binomial_shifted(m: i64, q: i64) -> BigUint {
    if q < 0 || m < q {
        BigUint::zero()
    } else {
        binomial(m as u64, q as u64)
    }
}

/// The i-binomial expansion of a positive integer: the unique sum
/// `C(n_i, i) + C(n_{i-1}, i-1) + ... + C(n_j, j)` with strictly decreasing
/// tops `n_i > n_{i-1} > ... > n_j >= j >= 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinomialExpansion {
    value: u64,
    level: u32,
    terms: Vec<(u64, u32)>,
}

impl BinomialExpansion {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The (top, bottom) pairs, bottoms strictly decreasing.
    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    /// Evaluates the shifted sum `sum C(top + b, bottom + a)` under the zero
    /// convention for out-of-range binomials.
    pub fn shift(&self, a: i64, b: i64) -> BigUint {
        let mut acc = BigUint::zero();
        for &(top, bottom) in &self.terms {
            acc += binomial_shifted(top as i64 + b, bottom as i64 + a);
        }
        acc
    }
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, k)| format!("C({},{})", n, k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Computes the i-binomial expansion by the greedy descent.
pub fn binomial_expansion(n: u64, i: u32) -> BinomialExpansion {
    assert!(n >= 1 && i >= 1, "binomial expansion needs n >= 1, i >= 1");
    let mut rem = BigUint::from(n);
    let mut terms = Vec::new();
    let mut level = i;
    while !rem.is_zero() {
        debug_assert!(level >= 1);
        // Largest top with C(top, level) <= rem.
        let mut top = level as u64;
        while binomial(top + 1, level as u64) <= rem {
            top += 1;
        }
        rem -= binomial(top, level as u64);
        terms.push((top, level));
        level -= 1;
    }
    BinomialExpansion { value: n, level: i, terms }
}

/// `(n_(i))_a^b` applied to the expansion of `n` at level `i`.
pub fn expansion_shift(exp: &BinomialExpansion, a: i64, b: i64) -> BigUint {
    exp.shift(a, b)
}

/// Macaulay's bound: the largest admissible `h_{d+1}` given `h_d = n`.
pub fn macaulay_bound(n: u64, d: u32) -> BigUint {
    assert!(d >= 1, "macaulay bound needs d >= 1");
    if n == 0 {
        return BigUint::zero();
    }
    binomial_expansion(n, d).shift(1, 1)
}

/// Green's bound: the largest admissible `h_d` after reduction by a general
/// linear form, given `h_d = n`.
pub fn green_bound(n: u64, d: u32) -> BigUint {
    assert!(d >= 1, "green bound needs d >= 1");
    if n == 0 {
        return BigUint::zero();
    }
    binomial_expansion(n, d).shift(0, -1)
}

/// Gotzmann persistence value after `s` growth steps from `h_d = n`.
pub fn gotzmann_growth(n: u64, d: u32, s: u32) -> BigUint {
    assert!(d >= 1, "gotzmann growth needs d >= 1");
    if s == 0 || n == 0 {
        return BigUint::from(n);
    }
    binomial_expansion(n, d).shift(s as i64, s as i64)
}

/// Errors from Hilbert-sequence predicates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SequenceError {
    /// The sequence does not start with h_0 = 1.
    NotStandard,
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::NotStandard => write!(f, "sequence does not start with 1"),
        }
    }
}

impl std::error::Error for SequenceError {}

/// A finite Hilbert function `h_0, ..., h_e` with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HilbertSeq(Vec<usize>);

impl HilbertSeq {
    pub fn new(mut values: Vec<usize>) -> HilbertSeq {
        while values.last() == Some(&0) {
            values.pop();
        }
        HilbertSeq(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the last nonzero entry.
    pub fn socle_degree(&self) -> usize {
        assert!(!self.0.is_empty(), "empty sequence has no socle degree");
        self.0.len() - 1
    }

    /// Entry at degree `d`, zero beyond the end.
    pub fn get(&self, d: usize) -> usize {
        self.0.get(d).copied().unwrap_or(0)
    }

    /// The first difference, with the degree-0 entry kept as h_0.
    pub fn first_difference(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.0.len());
        for d in 0..self.0.len() {
            let prev = if d == 0 { 0 } else { self.0[d - 1] as i64 };
            out.push(self.0[d] as i64 - prev);
        }
        out
    }

    /// True when the sequence satisfies Macaulay's growth bound in every
    /// degree (h_1 is unconstrained).
    pub fn is_o_sequence(&self) -> Result<bool, SequenceError> {
        if self.get(0) != 1 {
            return Err(SequenceError::NotStandard);
        }
        Ok(o_sequence_growth_ok(&self.0))
    }

    /// True when the first difference is itself an O-sequence.
    pub fn is_differentiable(&self) -> Result<bool, SequenceError> {
        if self.get(0) != 1 {
            return Err(SequenceError::NotStandard);
        }
        let diff = self.first_difference();
        if diff.iter().any(|&c| c < 0) {
            return Ok(false);
        }
        let diff: Vec<usize> = diff.into_iter().map(|c| c as usize).collect();
        Ok(o_sequence_growth_ok(&diff))
    }

    pub fn is_symmetric(&self) -> bool {
        let e = self.0.len();
        (0..e).all(|d| self.0[d] == self.0[e - 1 - d])
    }

    pub fn is_unimodal(&self) -> bool {
        let rising_end = self
            .0
            .windows(2)
            .position(|w| w[0] > w[1])
            .unwrap_or(self.0.len());
        self.0[rising_end..].windows(2).all(|w| w[0] >= w[1])
    }

    /// Symmetric with a differentiable first half (through degree
    /// floor(e/2)); exactly the Gorenstein Hilbert functions in codimension 3.
    pub fn is_si_sequence(&self) -> Result<bool, SequenceError> {
        if self.get(0) != 1 {
            return Err(SequenceError::NotStandard);
        }
        if !self.is_symmetric() {
            return Ok(false);
        }
        let half = self.socle_degree() / 2;
        let first_half = HilbertSeq::new(self.0[..=half].to_vec());
        // Trimming cannot remove interior entries here: a trailing zero in the
        // first half forces zeros everywhere by symmetry.
        if first_half.values().len() < half + 1 {
            return Ok(self.0.len() == 1);
        }
        first_half.is_differentiable()
    }
}

fn o_sequence_growth_ok(values: &[usize]) -> bool {
    for d in 1..values.len().saturating_sub(1) {
        let bound = macaulay_bound(values[d] as u64, d as u32);
        if BigUint::from(values[d + 1]) > bound {
            return false;
        }
    }
    true
}

impl fmt::Display for HilbertSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for HilbertSeq {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = Vec::new();
        for part in s.split(',') {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("invalid sequence entry {:?}", part.trim()))?;
            values.push(v);
        }
        if values.is_empty() {
            return Err("empty sequence".to_string());
        }
        Ok(HilbertSeq::new(values))
    }
}
