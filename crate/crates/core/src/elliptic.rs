//! Elliptic curves over Q: good reduction, traces of Frobenius by
//! quadratic-character sums, supersingularity tests and searches, and the
//! reduction type of a product surface E x E'.
//!
//! The character chi(u) = u^((p-1)/2) is evaluated by modular
//! exponentiation (Euler's criterion); the cubic is advanced across F_p by
//! finite differences so the exponentiation is the only multiplication in
//! the inner loop.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{is_prime, Montgomery};
use crate::cm::{product_status, FactorStatus, ReductionType};
use crate::density::primes_up_to;
use crate::error::{Error, Result};

/// Long Weierstrass coefficients over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurveQ {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    label: Option<String>,
    disc: BigInt,
}

impl EllipticCurveQ {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self> {
        let disc = discriminant_big(a1, a2, a3, a4, a6);
        if disc.is_zero() {
            return Err(Error::Domain("curve is singular (discriminant zero)".into()));
        }
        Ok(EllipticCurveQ {
            a1,
            a2,
            a3,
            a4,
            a6,
            label: None,
            disc,
        })
    }

    pub fn from_coeffs(c: [i64; 5]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3], c[4])
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn coeffs(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        !(&self.disc % BigInt::from(p)).is_zero()
    }

    fn b_invariants(&self) -> (BigInt, BigInt, BigInt) {
        let [a1, a2, a3, a4, a6] = self.coeffs().map(BigInt::from);
        let b2 = &a1 * &a1 + BigInt::from(4) * &a2;
        let b4 = BigInt::from(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + BigInt::from(4) * &a6;
        (b2, b4, b6)
    }

    /// c-invariants of the curve; the short model y^2 = x^3 - 27 c4 x - 54 c6
    /// is isomorphic to the curve away from 2 and 3.
    pub fn c_invariants(&self) -> (BigInt, BigInt) {
        let (b2, b4, b6) = self.b_invariants();
        let c4 = &b2 * &b2 - BigInt::from(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + BigInt::from(36) * &b2 * &b4 - BigInt::from(216) * &b6;
        (c4, c6)
    }
}

fn discriminant_big(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> BigInt {
    let [a1, a2, a3, a4, a6] = [a1, a2, a3, a4, a6].map(BigInt::from);
    let b2 = &a1 * &a1 + BigInt::from(4) * &a2;
    let b4 = BigInt::from(2) * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + BigInt::from(4) * &a6;
    let b8 = &a1 * &a1 * &a6 + BigInt::from(4) * &a2 * &a6 - &a1 * &a3 * &a4
        + &a2 * &a3 * &a3
        - &a4 * &a4;
    -(&b2 * &b2 * &b8) - BigInt::from(8) * &b4 * &b4 * &b4 - BigInt::from(27) * &b6 * &b6
        + BigInt::from(9) * &b2 * &b4 * &b6
}

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    let m = v % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    let (_, digits) = m.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

fn check_prime_and_reduction(e: &EllipticCurveQ, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p <= 3 {
        return Err(Error::ExcludedPrime(format!(
            "p = {p}: primes 2 and 3 are excluded from elliptic operations"
        )));
    }
    if !e.has_good_reduction(p) {
        return Err(Error::ExcludedPrime(format!(
            "curve has bad reduction at {p}"
        )));
    }
    Ok(())
}

/// Trace of Frobenius a_p = p + 1 - #E(F_p) for a good prime p > 3.
///
/// Counts points on the short model through the quadratic character:
/// #E(F_p) = p + 1 + sum_x chi(x^3 + Ax + B), so a_p is minus the sum.
pub fn ap(e: &EllipticCurveQ, p: u64) -> Result<i64> {
    check_prime_and_reduction(e, p)?;
    let (c4, c6) = e.c_invariants();
    let a = reduce_mod(&(-27 * c4), p);
    let b = reduce_mod(&(-54 * c6), p);

    let mont = Montgomery::new(p);
    let exp = (p - 1) / 2;
    let one = mont.one();
    let minus_one = mont.to_mont(p - 1);
    // f, d1, d2 track x^3+Ax+B and its first two finite differences; the
    // third difference is the constant 6.
    let mut f = mont.to_mont(b);
    let mut d1 = mont.to_mont((1 + a) % p);
    let mut d2 = mont.to_mont(6 % p);
    let six = d2;
    let madd = |x: u64, y: u64| {
        let s = x + y;
        if s >= p {
            s - p
        } else {
            s
        }
    };

    let mut sum: i64 = 0;
    for _ in 0..p {
        if f != 0 {
            let s = mont.pow(f, exp);
            if s == one {
                sum += 1;
            } else {
                debug_assert_eq!(s, minus_one);
                sum -= 1;
            }
        }
        f = madd(f, d1);
        d1 = madd(d1, d2);
        d2 = madd(d2, six);
    }
    let a_p = -sum;
    assert!(
        (a_p as i128) * (a_p as i128) <= 4 * p as i128,
        "Hasse bound violated: a_{p} = {a_p}"
    );
    Ok(a_p)
}

/// Supersingular iff a_p = 0; valid for p >= 5 since |a_p| <= 2 sqrt(p) < p
/// makes a_p = 0 the only multiple of p in range.
pub fn is_supersingular(e: &EllipticCurveQ, p: u64) -> Result<bool> {
    Ok(ap(e, p)? == 0)
}

pub fn is_ordinary(e: &EllipticCurveQ, p: u64) -> Result<bool> {
    Ok(!is_supersingular(e, p)?)
}

/// Result of a supersingular prime search: the hits, plus the sidecar list
/// of good-range primes skipped for bad reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub primes: Vec<u64>,
    pub skipped: Vec<u64>,
}

fn search_range<F>(bound: u64, workers: usize, per_prime: F) -> SearchOutcome
where
    F: Fn(u64) -> Option<Option<u64>> + Sync,
{
    // Some(Some(p)) hit, Some(None) miss, None skipped
    let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|&p| p >= 5).collect();
    let workers = workers.max(1).min(primes.len().max(1));
    let chunk = primes.len().div_ceil(workers);
    let mut hits = Vec::new();
    let mut skipped = Vec::new();
    if primes.is_empty() {
        return SearchOutcome {
            primes: hits,
            skipped,
        };
    }
    let results: Vec<(Vec<u64>, Vec<u64>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = primes
            .chunks(chunk)
            .map(|part| {
                let per_prime = &per_prime;
                scope.spawn(move || {
                    let mut hits = Vec::new();
                    let mut skipped = Vec::new();
                    for &p in part {
                        match per_prime(p) {
                            Some(Some(hit)) => hits.push(hit),
                            Some(None) => {}
                            None => skipped.push(p),
                        }
                    }
                    (hits, skipped)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (h, s) in results {
        hits.extend(h);
        skipped.extend(s);
    }
    SearchOutcome {
        primes: hits,
        skipped,
    }
}

/// All good primes 5 <= p <= bound at which the curve is supersingular,
/// ascending; exhaustive within the bound.
pub fn supersingular_search(e: &EllipticCurveQ, bound: u64) -> SearchOutcome {
    supersingular_search_with_workers(e, bound, 1)
}

pub fn supersingular_search_with_workers(
    e: &EllipticCurveQ,
    bound: u64,
    workers: usize,
) -> SearchOutcome {
    search_range(bound, workers, |p| {
        if !e.has_good_reduction(p) {
            return None;
        }
        let a_p = ap(e, p).expect("good prime in range");
        Some((a_p == 0).then_some(p))
    })
}

/// Primes where both curves are supersingular, in a single pass that only
/// touches the second curve when the first is already supersingular.
pub fn common_supersingular(e1: &EllipticCurveQ, e2: &EllipticCurveQ, bound: u64) -> SearchOutcome {
    common_supersingular_with_workers(e1, e2, bound, 1)
}

pub fn common_supersingular_with_workers(
    e1: &EllipticCurveQ,
    e2: &EllipticCurveQ,
    bound: u64,
    workers: usize,
) -> SearchOutcome {
    search_range(bound, workers, |p| {
        if !e1.has_good_reduction(p) || !e2.has_good_reduction(p) {
            return None;
        }
        let first = ap(e1, p).expect("good prime in range");
        if first != 0 {
            return Some(None);
        }
        let second = ap(e2, p).expect("good prime in range");
        Some((second == 0).then_some(p))
    })
}

/// Reduction type of the abelian surface E1 x E2 at p through the product
/// criterion: both ordinary, exactly one ordinary, or neither.
pub fn classify_product_surface(
    e1: &EllipticCurveQ,
    e2: &EllipticCurveQ,
    p: u64,
) -> Result<ReductionType> {
    let status = |ordinary| FactorStatus {
        is_ordinary: ordinary,
        is_hodge_witt: true, // curves are always Hodge-Witt
    };
    let s1 = status(is_ordinary(e1, p)?);
    let s2 = status(is_ordinary(e2, p)?);
    let prod = product_status(&[s1, s2])?;
    Ok(match (prod.is_ordinary, prod.is_hodge_witt) {
        (true, _) => ReductionType::Ordinary,
        (false, true) => ReductionType::AlmostOrdinary,
        (false, false) => ReductionType::NonHodgeWitt,
    })
}
