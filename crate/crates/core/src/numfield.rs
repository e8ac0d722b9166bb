//! Number fields given by a monic integral defining polynomial, residue
//! field degree sequences of unramified rational primes via factorization
//! of the defining polynomial mod p, and the split classification used by
//! the CM reduction-type rules.
//!
//! Primes dividing the polynomial discriminant are classified
//! `RamifiedOrBad` and excluded from scans, even when they only divide the
//! index; factorization mod p only tracks residue degrees away from the
//! discriminant.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::ffpoly::{factor_mod_p, PolyModP};

/// A number field K = Q[x]/(f) for a monic integral f, irreducible over Q.
///
/// Irreducibility is asserted by the supplier and validated only by a cheap
/// rational-root check; the polynomial discriminant is computed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    label: Option<String>,
    coeffs: Vec<i64>, // constant term first, monic
    degree: usize,
    disc: BigInt,
}

impl NumberField {
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        Self::build(None, coeffs)
    }

    pub fn with_label(label: &str, coeffs: &[i64]) -> Result<Self> {
        Self::build(Some(label.to_string()), coeffs)
    }

    fn build(label: Option<String>, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Domain(
                "defining polynomial must have degree >= 1".into(),
            ));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::Domain("defining polynomial must be monic".into()));
        }
        let degree = coeffs.len() - 1;
        if degree >= 2 {
            if let Some(root) = rational_root(coeffs) {
                return Err(Error::Domain(format!(
                    "defining polynomial has rational root {root}, hence is reducible"
                )));
            }
        }
        let disc = poly_discriminant(coeffs);
        if disc.is_zero() {
            return Err(Error::Domain(
                "defining polynomial has zero discriminant (repeated factors)".into(),
            ));
        }
        Ok(NumberField {
            label,
            coeffs: coeffs.to_vec(),
            degree,
            disc,
        })
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Discriminant of the defining polynomial (not the field discriminant).
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn defining_poly(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn divides_discriminant(&self, p: u64) -> bool {
        (&self.disc % BigInt::from(p)).is_zero()
    }
}

/// Residue field degree multiset of a rational prime in a number field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPattern {
    pub prime_p: u64,
    /// Residue degrees f_i, ascending; empty when ramified.
    pub degrees: Vec<u32>,
    pub ramified: bool,
}

/// Classification of a splitting pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitClass {
    CompletelySplit,
    AlmostNotCompletely,
    Other,
    RamifiedOrBad,
}

impl fmt::Display for SplitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SplitClass::CompletelySplit => "completely-split",
            SplitClass::AlmostNotCompletely => "almost-not-completely",
            SplitClass::Other => "other",
            SplitClass::RamifiedOrBad => "ramified-or-bad",
        };
        f.write_str(s)
    }
}

impl FromStr for SplitClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "completely-split" => Ok(SplitClass::CompletelySplit),
            "almost-not-completely" => Ok(SplitClass::AlmostNotCompletely),
            "other" => Ok(SplitClass::Other),
            "ramified-or-bad" => Ok(SplitClass::RamifiedOrBad),
            _ => Err(Error::Domain(format!("unknown split class {s:?}"))),
        }
    }
}

/// Residue field degree sequence of p in K.
///
/// For p away from the polynomial discriminant the degrees are those of the
/// irreducible factors of the defining polynomial mod p; discriminant
/// divisors come back flagged ramified with no degrees.
pub fn splitting_pattern(k: &NumberField, p: u64) -> Result<SplittingPattern> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if k.divides_discriminant(p) {
        return Ok(SplittingPattern {
            prime_p: p,
            degrees: Vec::new(),
            ramified: true,
        });
    }
    let f = PolyModP::from_signed(p, &k.coeffs)?;
    let factors = factor_mod_p(&f)?;
    let mut degrees = Vec::with_capacity(factors.len());
    for (g, mult) in &factors {
        if *mult != 1 {
            return Err(Error::Consistency(format!(
                "repeated factor mod {p} although {p} does not divide the discriminant"
            )));
        }
        degrees.push(g.degree().unwrap() as u32);
    }
    degrees.sort_unstable();
    Ok(SplittingPattern {
        prime_p: p,
        degrees,
        ramified: false,
    })
}

/// Classifies a splitting pattern against the field degree.
pub fn classify_split(pattern: &SplittingPattern, field_degree: usize) -> Result<SplitClass> {
    if pattern.ramified {
        return Ok(SplitClass::RamifiedOrBad);
    }
    let total: u64 = pattern.degrees.iter().map(|&d| d as u64).sum();
    if total != field_degree as u64 {
        return Err(Error::Consistency(format!(
            "residue degrees sum to {total}, expected {field_degree}"
        )));
    }
    let n = pattern.degrees.len();
    if pattern.degrees.iter().all(|&d| d == 1) {
        return Ok(SplitClass::CompletelySplit);
    }
    if field_degree > 2
        && n == field_degree - 1
        && pattern.degrees[n - 1] == 2
        && pattern.degrees[..n - 1].iter().all(|&d| d == 1)
    {
        return Ok(SplitClass::AlmostNotCompletely);
    }
    Ok(SplitClass::Other)
}

/// Number of primes of K0 above p that stay inert in the quadratic
/// extension K/K0, from the counting identity 2l - n (l primes in K0,
/// n primes in K; each K0 prime is split or inert since p is unramified).
pub fn inert_count_over_p(
    pattern_k: &SplittingPattern,
    pattern_k0: &SplittingPattern,
) -> Result<u32> {
    if pattern_k.ramified || pattern_k0.ramified {
        return Err(Error::Consistency(
            "inert count requires unramified patterns".into(),
        ));
    }
    if pattern_k.prime_p != pattern_k0.prime_p {
        return Err(Error::Consistency(format!(
            "patterns are for different primes {} and {}",
            pattern_k.prime_p, pattern_k0.prime_p
        )));
    }
    let deg_k: u64 = pattern_k.degrees.iter().map(|&d| d as u64).sum();
    let deg_k0: u64 = pattern_k0.degrees.iter().map(|&d| d as u64).sum();
    if deg_k != 2 * deg_k0 {
        return Err(Error::Consistency(format!(
            "degree {deg_k} is not twice the subfield degree {deg_k0}"
        )));
    }
    let l = pattern_k0.degrees.len() as i64;
    let n = pattern_k.degrees.len() as i64;
    let inert = 2 * l - n;
    if inert < 0 || inert > l {
        return Err(Error::Consistency(format!(
            "inconsistent patterns: 2l - n = {inert} outside [0, {l}]"
        )));
    }
    Ok(inert as u32)
}

/// Any rational root of a monic integral polynomial is an integer dividing
/// the constant term; checks divisors found by trial division (cheap
/// screen, not a full irreducibility test).
fn rational_root(coeffs: &[i64]) -> Option<i64> {
    let a0 = coeffs[0];
    if a0 == 0 {
        return Some(0);
    }
    let abs = a0.unsigned_abs();
    let mut candidates: Vec<u64> = Vec::new();
    let mut d = 1u64;
    while d * d <= abs && d <= 1_000_000 {
        if abs.is_multiple_of(d) {
            candidates.push(d);
            candidates.push(abs / d);
        }
        d += 1;
    }
    for c in candidates {
        let c = c as i64;
        for r in [c, -c] {
            if eval_bigint(coeffs, r).is_zero() {
                return Some(r);
            }
        }
    }
    None
}

fn eval_bigint(coeffs: &[i64], x: i64) -> BigInt {
    let x = BigInt::from(x);
    let mut acc = BigInt::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * &x + BigInt::from(c);
    }
    acc
}

/// Discriminant of a monic integral polynomial:
/// (-1)^(n(n-1)/2) * Res(f, f').
fn poly_discriminant(coeffs: &[i64]) -> BigInt {
    let n = coeffs.len() - 1;
    let f: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let fp: Vec<BigInt> = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| BigInt::from(c) * BigInt::from(i as i64 + 1))
        .collect();
    let res = resultant(&f, &fp);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Resultant via the Sylvester matrix (coefficients constant-first).
fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for (row, matrow) in mat.iter_mut().enumerate().take(n) {
        for (k, c) in f.iter().rev().enumerate() {
            matrow[row + k] = c.clone();
        }
    }
    for (row, matrow) in mat.iter_mut().skip(n).enumerate() {
        for (k, c) in g.iter().rev().enumerate() {
            matrow[row + k] = c.clone();
        }
    }
    determinant_bareiss(mat)
}

/// Fraction-free Gaussian elimination; exact over the integers.
fn determinant_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = t;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}
