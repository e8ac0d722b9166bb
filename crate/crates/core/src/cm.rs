//! Reduction-type verdicts for CM abelian varieties from splitting data,
//! the p-rank/slope criterion, and the product rule for Hodge-Witt status.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfield::SplitClass;
use crate::polygons::Polygon;

/// Five-way reduction verdict.
///
/// `AlmostOrdinary` is Hodge-Witt and not ordinary; `HodgeWitt` is
/// Hodge-Witt with ordinarity unknown; `Undetermined` means the splitting
/// rules say nothing (they are sufficient conditions, not a dichotomy).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionType {
    Ordinary,
    AlmostOrdinary,
    HodgeWitt,
    NonHodgeWitt,
    Undetermined,
}

impl ReductionType {
    /// Hodge-Witt status when the verdict decides it.
    pub fn is_hodge_witt(self) -> Option<bool> {
        match self {
            ReductionType::Ordinary | ReductionType::AlmostOrdinary | ReductionType::HodgeWitt => {
                Some(true)
            }
            ReductionType::NonHodgeWitt => Some(false),
            ReductionType::Undetermined => None,
        }
    }

    pub fn is_ordinary(self) -> Option<bool> {
        match self {
            ReductionType::Ordinary => Some(true),
            ReductionType::AlmostOrdinary | ReductionType::NonHodgeWitt => Some(false),
            ReductionType::HodgeWitt | ReductionType::Undetermined => None,
        }
    }
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionType::Ordinary => "ordinary",
            ReductionType::AlmostOrdinary => "almost-ordinary",
            ReductionType::HodgeWitt => "hodge-witt",
            ReductionType::NonHodgeWitt => "non-hodge-witt",
            ReductionType::Undetermined => "undetermined",
        };
        f.write_str(s)
    }
}

impl FromStr for ReductionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(ReductionType::Ordinary),
            "almost-ordinary" => Ok(ReductionType::AlmostOrdinary),
            "hodge-witt" => Ok(ReductionType::HodgeWitt),
            "non-hodge-witt" => Ok(ReductionType::NonHodgeWitt),
            "undetermined" => Ok(ReductionType::Undetermined),
            _ => Err(Error::Domain(format!("unknown reduction type {s:?}"))),
        }
    }
}

/// Verdict from the split class alone: completely split primes give
/// ordinary reduction, almost-split primes give almost ordinary reduction,
/// anything else is undetermined.
pub fn classify_by_splitting(sc: SplitClass) -> Result<ReductionType> {
    match sc {
        SplitClass::CompletelySplit => Ok(ReductionType::Ordinary),
        SplitClass::AlmostNotCompletely => Ok(ReductionType::AlmostOrdinary),
        SplitClass::Other => Ok(ReductionType::Undetermined),
        SplitClass::RamifiedOrBad => Err(Error::ExcludedPrime(
            "ramified or bad primes carry no splitting verdict".into(),
        )),
    }
}

/// Refines the splitting verdict with the count of totally-real-subfield
/// primes inert in K: two or more force non-Hodge-Witt reduction.
pub fn classify_with_inert_count(sc: SplitClass, inert: u32) -> Result<ReductionType> {
    match sc {
        SplitClass::CompletelySplit if inert != 0 => {
            return Err(Error::Consistency(format!(
                "completely split prime cannot have {inert} inert primes below"
            )));
        }
        SplitClass::AlmostNotCompletely if inert != 1 => {
            return Err(Error::Consistency(format!(
                "almost-split prime must have exactly one inert prime below, got {inert}"
            )));
        }
        _ => {}
    }
    if inert >= 2 {
        return Ok(ReductionType::NonHodgeWitt);
    }
    classify_by_splitting(sc)
}

/// Opt-in refinement for galois CM fields with a proven rule table: an
/// `Other` pattern with all residue degrees equal (forced by galois
/// transitivity) is non-Hodge-Witt.
pub fn refine_with_galois_rule(verdict: ReductionType, degrees: &[u32]) -> ReductionType {
    if verdict == ReductionType::Undetermined
        && !degrees.is_empty()
        && degrees.iter().all(|&d| d == degrees[0])
    {
        ReductionType::NonHodgeWitt
    } else {
        verdict
    }
}

/// Verdict of an abelian variety of dimension g from its Frobenius slopes:
/// ordinary iff the slopes are all 0 or 1, almost ordinary iff slope 1/2
/// appears exactly twice and nothing else lies strictly between 0 and 1.
pub fn classify_abelian_from_slopes(np: &Polygon, g: u32) -> Result<ReductionType> {
    if np.width() != 2 * g as u64 {
        return Err(Error::InvalidPolygon(format!(
            "expected width {} for dimension {g}, got {}",
            2 * g,
            np.width()
        )));
    }
    let zero = Rational64::zero();
    let one = Rational64::from_integer(1);
    let half = Rational64::new(1, 2);
    for &(s, m) in np.segments() {
        if s < zero || s > one {
            return Err(Error::InvalidPolygon(format!("slope {s} outside [0, 1]")));
        }
        if np.multiplicity_of(one - s) != m {
            return Err(Error::InvalidPolygon(format!(
                "slopes not symmetric at {s}"
            )));
        }
    }
    let only_0_1 = np
        .segments()
        .iter()
        .all(|&(s, _)| s == zero || s == one);
    if only_0_1 {
        return Ok(ReductionType::Ordinary);
    }
    let only_0_half_1 = np
        .segments()
        .iter()
        .all(|&(s, _)| s == zero || s == half || s == one);
    if only_0_half_1 && np.multiplicity_of(half) == 2 {
        return Ok(ReductionType::AlmostOrdinary);
    }
    Ok(ReductionType::NonHodgeWitt)
}

/// Ordinary/Hodge-Witt status of one factor of a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorStatus {
    pub is_ordinary: bool,
    pub is_hodge_witt: bool,
}

/// Product criterion: a product is ordinary iff every factor is, and
/// Hodge-Witt iff at most one factor is non-ordinary and that factor is
/// itself Hodge-Witt.
pub fn product_status(factors: &[FactorStatus]) -> Result<FactorStatus> {
    if factors.is_empty() {
        return Err(Error::Domain("product of no factors".into()));
    }
    for f in factors {
        if f.is_ordinary && !f.is_hodge_witt {
            return Err(Error::Consistency(
                "ordinary factor must be Hodge-Witt".into(),
            ));
        }
    }
    let non_ordinary: Vec<&FactorStatus> = factors.iter().filter(|f| !f.is_ordinary).collect();
    let is_ordinary = non_ordinary.is_empty();
    let is_hodge_witt = match non_ordinary.as_slice() {
        [] => true,
        [lone] => lone.is_hodge_witt,
        _ => false,
    };
    Ok(FactorStatus {
        is_ordinary,
        is_hodge_witt,
    })
}
