//! Reduction types and densities for Fermat hypersurfaces F_{n,m} in
//! P^{n+1} over Q, driven by a versioned table of exceptional (n, m) rows
//! over a generic congruence rule.
//!
//! Septic surface note: the Hodge-Witt residue set for (n, m) = (2, 7) is
//! {1, 2, 4} mod 7, the quadratic residues; together with the
//! complementary non-Hodge-Witt set {3, 5, 6} it partitions the units
//! mod 7 into the two stated halves.

use num_rational::Rational64;
use std::sync::OnceLock;

use crate::arith::is_prime;
use crate::cm::ReductionType;
use crate::error::{Error, Result};

/// The Fermat hypersurface of dimension n and degree m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermatSpec {
    pub n: u32,
    pub m: u32,
}

impl FermatSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 1 || m < 1 {
            return Err(Error::Domain(
                "Fermat hypersurface needs dimension >= 1 and degree >= 1".into(),
            ));
        }
        Ok(FermatSpec { n, m })
    }
}

/// Limiting densities of primes by reduction type; `ord` is `None` where
/// the ordinary density is not known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermatDensities {
    pub ord: Option<Rational64>,
    pub hw: Rational64,
    pub nonhw: Rational64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowRule {
    /// Every good prime is ordinary.
    AlwaysOrdinary,
    /// Curves: always Hodge-Witt, ordinarity not determined by the table.
    HodgeWittOrdinaryUnknown,
    /// Always Hodge-Witt; ordinary exactly at p = 1 mod m.
    HodgeWittAll,
    /// The septic surface: ordinary at 1, Hodge-Witt at the quadratic
    /// residues {1, 2, 4}, non-Hodge-Witt at {3, 5, 6} (all mod 7).
    Septic,
    /// Ordinary and Hodge-Witt exactly at p = 1 mod m, else non-Hodge-Witt.
    Generic,
}

#[derive(Debug, Clone, Copy)]
struct FermatRow {
    n: Option<u32>,
    m: Option<u32>,
    rule: RowRule,
}

/// The classification table as data, so row corrections are data edits.
#[derive(Debug)]
pub struct FermatTable {
    pub version: u32,
    rows: Vec<FermatRow>,
}

impl FermatTable {
    pub fn current() -> &'static FermatTable {
        static TABLE: OnceLock<FermatTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let row = |n: Option<u32>, m: Option<u32>, rule| FermatRow { n, m, rule };
            FermatTable {
                version: 1,
                rows: vec![
                    row(None, Some(1), RowRule::AlwaysOrdinary),
                    row(None, Some(2), RowRule::AlwaysOrdinary),
                    row(Some(1), None, RowRule::HodgeWittOrdinaryUnknown),
                    row(Some(2), Some(3), RowRule::HodgeWittAll),
                    row(Some(3), Some(3), RowRule::HodgeWittAll),
                    row(Some(3), Some(4), RowRule::HodgeWittAll),
                    row(Some(5), Some(3), RowRule::HodgeWittAll),
                    row(Some(2), Some(7), RowRule::Septic),
                ],
            }
        })
    }

    fn rule_for(&self, spec: FermatSpec) -> RowRule {
        self.rows
            .iter()
            .find(|r| r.n.is_none_or(|n| n == spec.n) && r.m.is_none_or(|m| m == spec.m))
            .map_or(RowRule::Generic, |r| r.rule)
    }
}

/// Reduction data of F_{n,m} at a good prime p (p not dividing m):
/// `(ordinary, reduction)` with `ordinary = None` where unknown.
pub fn classify_fermat(spec: FermatSpec, p: u64) -> Result<(Option<bool>, ReductionType)> {
    FermatSpec::new(spec.n, spec.m)?;
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if (spec.m as u64).is_multiple_of(p) {
        return Err(Error::ExcludedPrime(format!(
            "p = {p} divides the degree m = {}",
            spec.m
        )));
    }
    let r = (p % spec.m as u64) as u32;
    Ok(match FermatTable::current().rule_for(spec) {
        RowRule::AlwaysOrdinary => (Some(true), ReductionType::Ordinary),
        RowRule::HodgeWittOrdinaryUnknown => (None, ReductionType::HodgeWitt),
        RowRule::HodgeWittAll => {
            if r == 1 {
                (Some(true), ReductionType::Ordinary)
            } else {
                (Some(false), ReductionType::HodgeWitt)
            }
        }
        RowRule::Septic => match r {
            1 => (Some(true), ReductionType::Ordinary),
            2 | 4 => (Some(false), ReductionType::HodgeWitt),
            _ => (Some(false), ReductionType::NonHodgeWitt),
        },
        RowRule::Generic => {
            if r == 1 {
                (Some(true), ReductionType::Ordinary)
            } else {
                (Some(false), ReductionType::NonHodgeWitt)
            }
        }
    })
}

/// Limiting densities of ordinary / Hodge-Witt / non-Hodge-Witt primes.
pub fn fermat_densities(spec: FermatSpec) -> Result<FermatDensities> {
    FermatSpec::new(spec.n, spec.m)?;
    let one = Rational64::from_integer(1);
    let zero = Rational64::from_integer(0);
    let d = match FermatTable::current().rule_for(spec) {
        RowRule::AlwaysOrdinary => FermatDensities {
            ord: Some(one),
            hw: one,
            nonhw: zero,
        },
        RowRule::HodgeWittOrdinaryUnknown => FermatDensities {
            ord: None,
            hw: one,
            nonhw: zero,
        },
        RowRule::HodgeWittAll => FermatDensities {
            ord: Some(Rational64::new(1, 2)),
            hw: one,
            nonhw: zero,
        },
        RowRule::Septic => FermatDensities {
            ord: Some(Rational64::new(1, 6)),
            hw: Rational64::new(1, 2),
            nonhw: Rational64::new(1, 2),
        },
        RowRule::Generic => {
            let phi = euler_phi(spec.m) as i64;
            FermatDensities {
                ord: Some(Rational64::new(1, phi)),
                hw: Rational64::new(1, phi),
                nonhw: one - Rational64::new(1, phi),
            }
        }
    };
    debug_assert_eq!(d.hw + d.nonhw, one);
    debug_assert!(d.ord.is_none_or(|o| o <= d.hw));
    Ok(d)
}

fn euler_phi(mut m: u32) -> u32 {
    let mut phi = m;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            phi -= phi / q;
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}
