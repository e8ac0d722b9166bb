//! Chebotarev-side computations: theoretical densities read off a table of
//! conjugacy classes, empirical densities from prime scans, and the prime
//! sieve driving every scan.
//!
//! Group tables are inputs. A small built-in library covers the groups the
//! bundled examples need (C2, C4, V4, D4, S3, S4); the tool never computes
//! a Galois group.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::cm::{
    classify_by_splitting, classify_with_inert_count, refine_with_galois_rule, ReductionType,
};
use crate::error::{Error, Result};
use crate::numfield::{
    classify_split, inert_count_over_p, splitting_pattern, NumberField, SplitClass,
};

/// All primes <= bound, ascending (segmented sieve).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let root = (bound as f64).sqrt() as u64 + 1;
    let mut base_sieve = vec![true; (root + 1) as usize];
    let mut base: Vec<u64> = Vec::new();
    for n in 2..=root {
        if base_sieve[n as usize] {
            base.push(n);
            let mut k = n * n;
            while k <= root {
                base_sieve[k as usize] = false;
                k += n;
            }
        }
    }
    let mut primes: Vec<u64> = base.iter().copied().filter(|&p| p <= bound).collect();
    const SEGMENT: u64 = 1 << 16;
    let mut lo = root + 1;
    let mut block = vec![true; SEGMENT as usize];
    while lo <= bound {
        let hi = (lo + SEGMENT - 1).min(bound);
        let len = (hi - lo + 1) as usize;
        block[..len].fill(true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut k = start;
            while k <= hi {
                block[(k - lo) as usize] = false;
                k += p;
            }
        }
        for (i, &is_p) in block[..len].iter().enumerate() {
            if is_p {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
    primes
}

/// One conjugacy class: its size and the cycle type of its elements on the
/// n points of the coset action, as a partition of n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub size: u64,
    pub cycle_type: Vec<u32>,
}

impl ConjugacyClass {
    pub fn is_identity(&self) -> bool {
        self.cycle_type.iter().all(|&c| c == 1)
    }

    pub fn is_single_transposition(&self) -> bool {
        self.cycle_type.iter().filter(|&&c| c == 2).count() == 1
            && self.cycle_type.iter().all(|&c| c == 1 || c == 2)
    }
}

/// Conjugacy-class data of a Galois group acting on n points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupClassTable {
    pub name: Option<String>,
    pub degree_n: u32,
    pub order: u64,
    pub classes: Vec<ConjugacyClass>,
}

impl GroupClassTable {
    pub fn validate(&self) -> Result<()> {
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return Err(Error::Consistency(format!(
                "class sizes sum to {total}, expected group order {}",
                self.order
            )));
        }
        for c in &self.classes {
            if c.size == 0 {
                return Err(Error::Consistency("class of size zero".into()));
            }
            let parts: u64 = c.cycle_type.iter().map(|&x| x as u64).sum();
            if parts != self.degree_n as u64 || c.cycle_type.contains(&0) {
                return Err(Error::Consistency(format!(
                    "cycle type {:?} is not a partition of {}",
                    c.cycle_type, self.degree_n
                )));
            }
        }
        let identities: Vec<&ConjugacyClass> =
            self.classes.iter().filter(|c| c.is_identity()).collect();
        match identities.as_slice() {
            [only] if only.size == 1 => Ok(()),
            [only] => Err(Error::Consistency(format!(
                "identity class has size {}, expected 1",
                only.size
            ))),
            _ => Err(Error::Consistency(
                "table must contain exactly one identity class".into(),
            )),
        }
    }

    /// Built-in tables keyed by name.
    pub fn builtin(name: &str) -> Option<GroupClassTable> {
        let table = |degree_n, order, classes: &[(u64, &[u32])]| GroupClassTable {
            name: Some(name.to_string()),
            degree_n,
            order,
            classes: classes
                .iter()
                .map(|&(size, ct)| ConjugacyClass {
                    size,
                    cycle_type: ct.to_vec(),
                })
                .collect(),
        };
        let t = match name {
            "C2" => table(2, 2, &[(1, &[1, 1]), (1, &[2])]),
            // cyclic of order 4 in its regular action
            "C4" => table(4, 4, &[(1, &[1, 1, 1, 1]), (1, &[4]), (1, &[2, 2]), (1, &[4])]),
            // Klein four group acting transitively on 4 points
            "V4" => table(
                4,
                4,
                &[(1, &[1, 1, 1, 1]), (1, &[2, 2]), (1, &[2, 2]), (1, &[2, 2])],
            ),
            // dihedral of order 8 on the vertices of a square
            "D4" => table(
                4,
                8,
                &[
                    (1, &[1, 1, 1, 1]),
                    (1, &[2, 2]),    // rotation by pi
                    (2, &[4]),       // rotations by pi/2
                    (2, &[2, 1, 1]), // diagonal reflections
                    (2, &[2, 2]),    // edge reflections
                ],
            ),
            "S3" => table(3, 6, &[(1, &[1, 1, 1]), (3, &[2, 1]), (2, &[3])]),
            "S4" => table(
                4,
                24,
                &[
                    (1, &[1, 1, 1, 1]),
                    (6, &[2, 1, 1]),
                    (3, &[2, 2]),
                    (8, &[3, 1]),
                    (6, &[4]),
                ],
            ),
            _ => return None,
        };
        debug_assert!(t.validate().is_ok());
        Some(t)
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["C2", "C4", "V4", "D4", "S3", "S4"]
    }
}

/// Density of Frobenius classes acting as the identity or a single
/// transposition: |G_tr| / |G|. For degree 2 only the identity counts
/// (quadratic fields have no almost-split primes by definition).
pub fn gtr_density(t: &GroupClassTable) -> Result<Rational64> {
    t.validate()?;
    if t.degree_n < 2 {
        return Err(Error::Consistency(
            "permutation degree must be at least 2".into(),
        ));
    }
    let count: u64 = t
        .classes
        .iter()
        .filter(|c| c.is_identity() || (t.degree_n > 2 && c.is_single_transposition()))
        .map(|c| c.size)
        .sum();
    Ok(Rational64::new(count as i64, t.order as i64))
}

/// Density of completely split primes: the identity class over |G|.
pub fn ordinary_density(t: &GroupClassTable) -> Result<Rational64> {
    t.validate()?;
    if t.degree_n < 2 {
        return Err(Error::Consistency(
            "permutation degree must be at least 2".into(),
        ));
    }
    Ok(Rational64::new(1, t.order as i64))
}

/// A number field together with the scan-relevant configuration: the
/// user-supplied totally real subfield, the galois flag, and the opt-in
/// rule table refining `Other` splits of galois fields to non-Hodge-Witt.
#[derive(Debug, Clone)]
pub struct ScanTarget<'a> {
    pub field: &'a NumberField,
    pub k0: Option<&'a NumberField>,
    pub galois: bool,
    pub galois_non_hodge_witt_rule: bool,
}

impl<'a> ScanTarget<'a> {
    pub fn new(field: &'a NumberField) -> Self {
        ScanTarget {
            field,
            k0: None,
            galois: false,
            galois_non_hodge_witt_rule: false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Scan primes in [lo, bound].
    pub lo: u64,
    pub bound: u64,
    pub workers: usize,
}

impl ScanOptions {
    pub fn up_to(bound: u64) -> Self {
        ScanOptions {
            lo: 2,
            bound,
            workers: 1,
        }
    }

    pub fn range(lo: u64, bound: u64) -> Self {
        ScanOptions { lo, bound, workers: 1 }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

/// Per-prime scan record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: u64,
    /// Residue degrees, ascending; empty for excluded primes.
    pub degrees: Vec<u32>,
    pub split_class: SplitClass,
    pub inert_count: Option<u32>,
    pub reduction: Option<ReductionType>,
}

/// Count with its exact fraction of the scanned primes and a decimal
/// rendering of the same value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTally {
    pub count: u64,
    pub fraction: String,
    pub decimal: f64,
}

/// Summary of a scan: counts and fractions per split class and per
/// reduction verdict over the unexcluded primes, plus the excluded primes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub lo: u64,
    pub bound: u64,
    pub scanned: u64,
    pub completely_split: ClassTally,
    pub almost_not_completely: ClassTally,
    pub other: ClassTally,
    pub ordinary: ClassTally,
    pub almost_ordinary: ClassTally,
    pub hodge_witt: ClassTally,
    pub non_hodge_witt: ClassTally,
    pub undetermined: ClassTally,
    pub excluded: Vec<u64>,
}

impl DensityReport {
    pub fn split_count(&self, class: SplitClass) -> u64 {
        match class {
            SplitClass::CompletelySplit => self.completely_split.count,
            SplitClass::AlmostNotCompletely => self.almost_not_completely.count,
            SplitClass::Other => self.other.count,
            SplitClass::RamifiedOrBad => self.excluded.len() as u64,
        }
    }

    pub fn reduction_count(&self, rt: ReductionType) -> u64 {
        match rt {
            ReductionType::Ordinary => self.ordinary.count,
            ReductionType::AlmostOrdinary => self.almost_ordinary.count,
            ReductionType::HodgeWitt => self.hodge_witt.count,
            ReductionType::NonHodgeWitt => self.non_hodge_witt.count,
            ReductionType::Undetermined => self.undetermined.count,
        }
    }

    /// Exact fraction of unexcluded primes in the class.
    pub fn split_fraction(&self, class: SplitClass) -> Rational64 {
        ratio(self.split_count(class), self.scanned)
    }

    pub fn reduction_fraction(&self, rt: ReductionType) -> Rational64 {
        ratio(self.reduction_count(rt), self.scanned)
    }
}

fn ratio(count: u64, total: u64) -> Rational64 {
    if total == 0 {
        Rational64::new(0, 1)
    } else {
        Rational64::new(count as i64, total as i64)
    }
}

fn tally(count: u64, total: u64) -> ClassTally {
    let frac = ratio(count, total);
    ClassTally {
        count,
        fraction: format!("{}/{}", frac.numer(), frac.denom()),
        decimal: if total == 0 {
            0.0
        } else {
            count as f64 / total as f64
        },
    }
}

/// Tallies scan rows into a report; the inverse of nothing, usable both on
/// fresh scans and on rows re-read from a CSV artifact.
pub fn summarize(rows: &[ScanRow], lo: u64, bound: u64) -> DensityReport {
    let mut split = [0u64; 3];
    let mut reduction = [0u64; 5];
    let mut excluded = Vec::new();
    for row in rows {
        match row.split_class {
            SplitClass::CompletelySplit => split[0] += 1,
            SplitClass::AlmostNotCompletely => split[1] += 1,
            SplitClass::Other => split[2] += 1,
            SplitClass::RamifiedOrBad => {
                excluded.push(row.p);
                continue;
            }
        }
        match row.reduction {
            Some(ReductionType::Ordinary) => reduction[0] += 1,
            Some(ReductionType::AlmostOrdinary) => reduction[1] += 1,
            Some(ReductionType::HodgeWitt) => reduction[2] += 1,
            Some(ReductionType::NonHodgeWitt) => reduction[3] += 1,
            Some(ReductionType::Undetermined) | None => reduction[4] += 1,
        }
    }
    let scanned: u64 = split.iter().sum();
    DensityReport {
        lo,
        bound,
        scanned,
        completely_split: tally(split[0], scanned),
        almost_not_completely: tally(split[1], scanned),
        other: tally(split[2], scanned),
        ordinary: tally(reduction[0], scanned),
        almost_ordinary: tally(reduction[1], scanned),
        hodge_witt: tally(reduction[2], scanned),
        non_hodge_witt: tally(reduction[3], scanned),
        undetermined: tally(reduction[4], scanned),
        excluded,
    }
}

/// Scan output: the per-prime rows in ascending order plus the summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    pub report: DensityReport,
}

fn scan_one(target: &ScanTarget, p: u64) -> Result<ScanRow> {
    let bad_for_k0 = target.k0.is_some_and(|k0| k0.divides_discriminant(p));
    if target.field.divides_discriminant(p) || bad_for_k0 {
        return Ok(ScanRow {
            p,
            degrees: Vec::new(),
            split_class: SplitClass::RamifiedOrBad,
            inert_count: None,
            reduction: None,
        });
    }
    let pattern = splitting_pattern(target.field, p)?;
    let class = classify_split(&pattern, target.field.degree())?;
    let inert = match target.k0 {
        Some(k0) => {
            let pattern_k0 = splitting_pattern(k0, p)?;
            Some(inert_count_over_p(&pattern, &pattern_k0)?)
        }
        None => None,
    };
    let mut verdict = match inert {
        Some(i) => classify_with_inert_count(class, i)?,
        None => classify_by_splitting(class)?,
    };
    if target.galois && target.galois_non_hodge_witt_rule {
        verdict = refine_with_galois_rule(verdict, &pattern.degrees);
    }
    Ok(ScanRow {
        p,
        degrees: pattern.degrees,
        split_class: class,
        inert_count: inert,
        reduction: Some(verdict),
    })
}

/// Scans every prime in [opts.lo, opts.bound], classifying each one.
///
/// The prime range is partitioned into contiguous chunks processed on
/// `opts.workers` threads; chunks are merged in order, so the output is
/// identical for every worker count.
pub fn scan(target: &ScanTarget, opts: &ScanOptions) -> Result<ScanOutput> {
    let primes: Vec<u64> = primes_up_to(opts.bound)
        .into_iter()
        .filter(|&p| p >= opts.lo)
        .collect();
    let rows = if primes.is_empty() {
        Vec::new()
    } else {
        let workers = opts.workers.max(1).min(primes.len());
        let chunk = primes.len().div_ceil(workers);
        let chunk_results: Vec<Result<Vec<ScanRow>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = primes
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter().map(|&p| scan_one(target, p)).collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut rows = Vec::with_capacity(primes.len());
        for chunk_rows in chunk_results {
            rows.extend(chunk_rows?);
        }
        rows
    };
    let report = summarize(&rows, opts.lo, opts.bound);
    Ok(ScanOutput { rows, report })
}

/// Scan over all primes up to `bound` with an optional totally real
/// subfield supplied for the inert-prime count.
pub fn empirical_scan(
    k: &NumberField,
    bound: u64,
    k0: Option<&NumberField>,
) -> Result<ScanOutput> {
    let target = ScanTarget {
        field: k,
        k0,
        galois: false,
        galois_non_hodge_witt_rule: false,
    };
    scan(&target, &ScanOptions::up_to(bound))
}
