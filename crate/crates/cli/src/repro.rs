//! Reproduction runs for the bundled examples; each mirrors one acceptance
//! criterion and reports per-check outcomes.

use num_rational::Rational64;
use serde::Serialize;

use reduction_core::catalog;
use reduction_core::cm::ReductionType;
use reduction_core::density::{
    gtr_density, ordinary_density, primes_up_to, scan, GroupClassTable, ScanOptions, ScanTarget,
};
use reduction_core::elliptic::{ap, classify_product_surface, common_supersingular_with_workers};
use reduction_core::fermat::{classify_fermat, FermatSpec};
use reduction_core::numfield::SplitClass;

use crate::CliError;

pub const NAMES: &[&str] = &["zeta5", "d4-field", "e-times-eprime", "fermat-2-7", "j0-37"];

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct ReproOutcome {
    pub example: String,
    pub bound: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

fn check(checks: &mut Vec<Check>, name: &str, pass: bool, detail: String) {
    checks.push(Check {
        name: name.to_string(),
        pass,
        detail,
    });
}

fn within(actual: Rational64, expected: Rational64, tol: Rational64) -> bool {
    let diff = actual - expected;
    let abs = if diff < Rational64::new(0, 1) { -diff } else { diff };
    abs <= tol
}

pub fn run(name: &str, bound: Option<u64>, workers: usize) -> Result<ReproOutcome, CliError> {
    let mut checks = Vec::new();
    let bound = match name {
        "zeta5" | "d4-field" => bound.unwrap_or(1_000_000),
        "e-times-eprime" | "fermat-2-7" | "j0-37" => bound.unwrap_or(100_000),
        _ => {
            return Err(CliError::Config(format!(
                "unknown example {name:?}; expected one of {NAMES:?}"
            )))
        }
    };
    match name {
        "zeta5" => {
            let entry = catalog::zeta5();
            let target = ScanTarget {
                field: &entry.field,
                k0: None,
                galois: entry.galois,
                galois_non_hodge_witt_rule: entry.galois_non_hodge_witt_rule,
            };
            let out = scan(&target, &ScanOptions::range(7, bound).with_workers(workers))
                .map_err(CliError::Core)?;
            let frac = out.report.split_fraction(SplitClass::CompletelySplit);
            check(
                &mut checks,
                "completely split fraction within 0.01 of 1/4",
                within(frac, Rational64::new(1, 4), Rational64::new(1, 100)),
                format!("fraction = {frac}"),
            );
            let exceptions = out
                .rows
                .iter()
                .filter(|r| (r.reduction == Some(ReductionType::Ordinary)) != (r.p % 5 == 1))
                .count();
            check(
                &mut checks,
                "ordinary verdict iff p = 1 mod 5",
                exceptions == 0,
                format!("{exceptions} exceptions"),
            );
        }
        "d4-field" => {
            let table = GroupClassTable::builtin("D4").unwrap();
            let hw = gtr_density(&table).map_err(CliError::Core)?;
            let ord = ordinary_density(&table).map_err(CliError::Core)?;
            check(
                &mut checks,
                "gtr_density(D4) = 3/8",
                hw == Rational64::new(3, 8),
                format!("got {hw}"),
            );
            check(
                &mut checks,
                "ordinary_density(D4) = 1/8",
                ord == Rational64::new(1, 8),
                format!("got {ord}"),
            );
            let entry = catalog::d4_quartic();
            let target = ScanTarget {
                field: &entry.field,
                k0: entry.k0.as_ref(),
                galois: false,
                galois_non_hodge_witt_rule: false,
            };
            let out = scan(&target, &ScanOptions::up_to(bound).with_workers(workers))
                .map_err(CliError::Core)?;
            let cs = out.report.split_fraction(SplitClass::CompletelySplit);
            check(
                &mut checks,
                "completely split fraction within 0.02 of 1/8",
                within(cs, Rational64::new(1, 8), Rational64::new(2, 100)),
                format!("fraction = {cs}"),
            );
            let anc = out.report.split_fraction(SplitClass::AlmostNotCompletely);
            check(
                &mut checks,
                "almost-split fraction within 0.02 of 2/8",
                within(anc, Rational64::new(1, 4), Rational64::new(2, 100)),
                format!("fraction = {anc}"),
            );
            let bad = out
                .rows
                .iter()
                .filter(|r| {
                    r.split_class == SplitClass::AlmostNotCompletely && r.inert_count != Some(1)
                })
                .count();
            check(
                &mut checks,
                "every almost-split prime has inert count 1",
                bad == 0,
                format!("{bad} violations"),
            );
        }
        "fermat-2-7" => {
            let spec = FermatSpec::new(2, 7).map_err(CliError::Core)?;
            let mut counts = (0u64, 0u64, 0u64);
            let mut total = 0u64;
            let mut mismatches = 0u64;
            for p in primes_up_to(bound) {
                if p < 11 {
                    continue;
                }
                let verdict = classify_fermat(spec, p).map_err(CliError::Core)?;
                let expected = match p % 7 {
                    1 => (Some(true), ReductionType::Ordinary),
                    2 | 4 => (Some(false), ReductionType::HodgeWitt),
                    _ => (Some(false), ReductionType::NonHodgeWitt),
                };
                if verdict != expected {
                    mismatches += 1;
                }
                total += 1;
                match verdict.1 {
                    ReductionType::Ordinary => {
                        counts.0 += 1;
                        counts.1 += 1;
                    }
                    ReductionType::HodgeWitt => counts.1 += 1,
                    _ => counts.2 += 1,
                }
            }
            check(
                &mut checks,
                "every verdict matches the residue rule",
                mismatches == 0,
                format!("{mismatches} mismatches over {total} primes"),
            );
            for (count, expected, label) in [
                (counts.0, Rational64::new(1, 6), "ordinary"),
                (counts.1, Rational64::new(1, 2), "hodge-witt"),
                (counts.2, Rational64::new(1, 2), "non-hodge-witt"),
            ] {
                let frac = Rational64::new(count as i64, total as i64);
                check(
                    &mut checks,
                    &format!("{label} frequency within 0.03 of {expected}"),
                    within(frac, expected, Rational64::new(3, 100)),
                    format!("fraction = {frac}"),
                );
            }
        }
        "e-times-eprime" => {
            let e1 = catalog::curve_cm_i();
            let e2 = catalog::curve_cm_zeta3();
            let mut ordinary = 0u64;
            let mut hodge_witt = 0u64;
            let mut total = 0u64;
            let mut mismatches = 0u64;
            for p in primes_up_to(bound) {
                if p < 5 {
                    continue;
                }
                let got = classify_product_surface(&e1, &e2, p).map_err(CliError::Core)?;
                let expected = match (p % 4 == 1, p % 3 == 1) {
                    (true, true) => ReductionType::Ordinary,
                    (false, false) => ReductionType::NonHodgeWitt,
                    _ => ReductionType::AlmostOrdinary,
                };
                if got != expected {
                    mismatches += 1;
                }
                total += 1;
                match got {
                    ReductionType::Ordinary => {
                        ordinary += 1;
                        hodge_witt += 1;
                    }
                    ReductionType::AlmostOrdinary => hodge_witt += 1,
                    _ => {}
                }
            }
            check(
                &mut checks,
                "every verdict matches the (p mod 4, p mod 3) prediction",
                mismatches == 0,
                format!("{mismatches} mismatches over {total} primes"),
            );
            let ord_frac = Rational64::new(ordinary as i64, total as i64);
            check(
                &mut checks,
                "ordinary fraction within 0.02 of 1/4",
                within(ord_frac, Rational64::new(1, 4), Rational64::new(2, 100)),
                format!("fraction = {ord_frac}"),
            );
            let hw_frac = Rational64::new(hodge_witt as i64, total as i64);
            check(
                &mut checks,
                "hodge-witt fraction within 0.02 of 3/4",
                within(hw_frac, Rational64::new(3, 4), Rational64::new(2, 100)),
                format!("fraction = {hw_frac}"),
            );
        }
        "j0-37" => {
            let e1 = catalog::curve_37a1();
            let e2 = catalog::curve_37b1();
            const P: u64 = 18_489_743;
            let a1 = ap(&e1, P).map_err(CliError::Core)?;
            let a2 = ap(&e2, P).map_err(CliError::Core)?;
            check(
                &mut checks,
                "37a1 supersingular at 18489743",
                a1 == 0,
                format!("a_p = {a1}"),
            );
            check(
                &mut checks,
                "37b1 supersingular at 18489743",
                a2 == 0,
                format!("a_p = {a2}"),
            );
            let common = common_supersingular_with_workers(&e1, &e2, bound, workers);
            check(
                &mut checks,
                &format!("no common supersingular prime up to {bound}"),
                common.primes.is_empty(),
                format!("found {:?}", common.primes),
            );
        }
        _ => unreachable!(),
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(ReproOutcome {
        example: name.to_string(),
        bound,
        pass,
        checks,
    })
}
