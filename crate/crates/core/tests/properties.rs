//! Property tests for the classification core: proptest invariants for the
//! pure algebra, plus the empirical-vs-theoretical density agreement on the
//! bundled field/group pairs.

use num_rational::Rational64;
use proptest::prelude::*;

use reduction_core::catalog;
use reduction_core::cm::{
    classify_abelian_from_slopes, classify_by_splitting, classify_with_inert_count,
    product_status, FactorStatus, ReductionType,
};
use reduction_core::density::{
    gtr_density, ordinary_density, scan, GroupClassTable, ScanOptions, ScanTarget,
};
use reduction_core::ffpoly::{factor_mod_p, is_irreducible, PolyModP};
use reduction_core::numfield::SplitClass;
use reduction_core::polygons::{newton_polygon, Polygon, Valuation};

fn small_primes() -> Vec<u64> {
    reduction_core::density::primes_up_to(10_000)
}

proptest! {
    // Round-trip: the factor product reproduces the monic part.
    #[test]
    fn factorization_round_trip(
        prime_idx in 0usize..1229,
        coeffs in proptest::collection::vec(0u64..10_000, 2..=9),
    ) {
        let primes = small_primes();
        let p = primes[prime_idx % primes.len()];
        let f = PolyModP::new(p, &coeffs).unwrap();
        prop_assume!(f.degree().is_some_and(|d| d >= 1));
        let factors = factor_mod_p(&f).unwrap();
        let mut product = PolyModP::new(p, &[1]).unwrap();
        let mut total = 0usize;
        for (g, m) in &factors {
            prop_assert!(is_irreducible(g).unwrap());
            for _ in 0..*m {
                product = product.mul(g);
            }
            total += g.degree().unwrap() * *m as usize;
        }
        prop_assert_eq!(product, f.monic());
        prop_assert_eq!(total, f.degree().unwrap());
    }

    // The hull is convex with the expected endpoints.
    #[test]
    fn newton_polygon_is_convex(vals in proptest::collection::vec(0i64..40, 2..=10)) {
        let points: Vec<(u64, Valuation)> = vals
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as u64, Valuation::Finite(Rational64::from_integer(v))))
            .collect();
        let polygon = newton_polygon(&points).unwrap();
        let slopes: Vec<Rational64> = polygon.segments().iter().map(|&(s, _)| s).collect();
        for pair in slopes.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
        prop_assert_eq!(polygon.width(), vals.len() as u64 - 1);
        // the hull keeps both endpoints, so the total rise is v(c_N) - v(c_0)
        let total = polygon.total_height() + Rational64::from_integer(vals[0]);
        prop_assert_eq!(total, Rational64::from_integer(*vals.last().unwrap()));
    }

    // Product status does not depend on factor order.
    #[test]
    fn product_status_permutation_invariant(
        mut statuses in proptest::collection::vec((any::<bool>(), any::<bool>()), 1..6)
    ) {
        let factors: Vec<FactorStatus> = statuses
            .iter()
            .map(|&(o, h)| FactorStatus { is_ordinary: o, is_hodge_witt: o || h })
            .collect();
        let forward = product_status(&factors).unwrap();
        statuses.reverse();
        let backward: Vec<FactorStatus> = statuses
            .iter()
            .map(|&(o, h)| FactorStatus { is_ordinary: o, is_hodge_witt: o || h })
            .collect();
        prop_assert_eq!(forward, product_status(&backward).unwrap());
    }
}

proptest! {
    // Residue degrees of an unramified prime sum to the field degree.
    #[test]
    fn splitting_degrees_conserve_field_degree(
        coeffs in proptest::collection::vec(-30i64..30, 2..=6),
        prime_idx in 0usize..1229,
    ) {
        let mut coeffs = coeffs;
        coeffs.push(1); // monic
        let field = match reduction_core::NumberField::new(&coeffs) {
            Ok(f) => f,
            Err(_) => return Ok(()), // reducible or degenerate draw
        };
        let primes = small_primes();
        let p = primes[prime_idx % primes.len()];
        let pattern = reduction_core::numfield::splitting_pattern(&field, p).unwrap();
        if !pattern.ramified {
            let total: u64 = pattern.degrees.iter().map(|&d| d as u64).sum();
            prop_assert_eq!(total, field.degree() as u64);
        }
    }
}

#[test]
fn fermat_verdict_frequencies_track_densities() {
    // scan primes below 1e5; frequencies within 3/sqrt(N) of the table
    use reduction_core::fermat::{classify_fermat, fermat_densities, FermatSpec};
    for (n, m) in [(2u32, 7u32), (4, 5)] {
        let spec = FermatSpec::new(n, m).unwrap();
        let densities = fermat_densities(spec).unwrap();
        let mut ord = 0u64;
        let mut hw = 0u64;
        let mut nonhw = 0u64;
        let mut total = 0u64;
        for p in reduction_core::density::primes_up_to(100_000) {
            if (m as u64).is_multiple_of(p) {
                continue;
            }
            let (ordinary, reduction) = classify_fermat(spec, p).unwrap();
            total += 1;
            if ordinary == Some(true) {
                ord += 1;
            }
            match reduction {
                ReductionType::Ordinary | ReductionType::HodgeWitt => hw += 1,
                _ => nonhw += 1,
            }
        }
        let tolerance = 3.0 / (total as f64).sqrt();
        let to_f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        let ord_expected = to_f(densities.ord.unwrap());
        assert!(
            (ord as f64 / total as f64 - ord_expected).abs() < tolerance,
            "({n},{m}) ordinary"
        );
        assert!(
            (hw as f64 / total as f64 - to_f(densities.hw)).abs() < tolerance,
            "({n},{m}) hodge-witt"
        );
        assert!(
            (nonhw as f64 / total as f64 - to_f(densities.nonhw)).abs() < tolerance,
            "({n},{m}) non-hodge-witt"
        );
    }
}

#[test]
fn classify_by_splitting_never_returns_non_hodge_witt() {
    for sc in [
        SplitClass::CompletelySplit,
        SplitClass::AlmostNotCompletely,
        SplitClass::Other,
    ] {
        assert_ne!(
            classify_by_splitting(sc).unwrap(),
            ReductionType::NonHodgeWitt
        );
        // with at most one inert prime the refinement agrees
        for inert in 0..=1u32 {
            let consistent = match sc {
                SplitClass::CompletelySplit => inert == 0,
                SplitClass::AlmostNotCompletely => inert == 1,
                _ => true,
            };
            if consistent {
                assert_eq!(
                    classify_with_inert_count(sc, inert).unwrap(),
                    classify_by_splitting(sc).unwrap()
                );
            }
        }
    }
}

/// All symmetric Newton polygons with integral break points for g <= 3,
/// labelled with their slope-zero multiplicity (the p-rank).
fn abelian_newton_polygons(g: u32) -> Vec<(Polygon, u64)> {
    let r = |n: i64, d: i64| Rational64::new(n, d);
    let configs: Vec<Vec<Rational64>> = match g {
        1 => vec![
            vec![r(0, 1), r(1, 1)],
            vec![r(1, 2), r(1, 2)],
        ],
        2 => vec![
            vec![r(0, 1), r(0, 1), r(1, 1), r(1, 1)],
            vec![r(0, 1), r(1, 2), r(1, 2), r(1, 1)],
            vec![r(1, 2); 4],
        ],
        3 => vec![
            vec![r(0, 1), r(0, 1), r(0, 1), r(1, 1), r(1, 1), r(1, 1)],
            vec![r(0, 1), r(0, 1), r(1, 2), r(1, 2), r(1, 1), r(1, 1)],
            vec![r(0, 1), r(1, 2), r(1, 2), r(1, 2), r(1, 2), r(1, 1)],
            vec![r(1, 2); 6],
            vec![r(1, 3), r(1, 3), r(1, 3), r(2, 3), r(2, 3), r(2, 3)],
        ],
        _ => unreachable!(),
    };
    configs
        .into_iter()
        .map(|slopes| {
            let polygon = Polygon::from_slopes(&slopes).unwrap();
            let p_rank = polygon.multiplicity_of(r(0, 1));
            (polygon, p_rank)
        })
        .collect()
}

#[test]
fn slope_classification_matches_p_rank() {
    // Hodge-Witt (ordinary or almost ordinary) iff p-rank >= g - 1
    for g in 1..=3u32 {
        for (polygon, p_rank) in abelian_newton_polygons(g) {
            let verdict = classify_abelian_from_slopes(&polygon, g).unwrap();
            let hodge_witt = matches!(
                verdict,
                ReductionType::Ordinary | ReductionType::AlmostOrdinary
            );
            assert_eq!(
                hodge_witt,
                p_rank >= (g - 1) as u64,
                "g = {g}, polygon {:?}",
                polygon.segments()
            );
        }
    }
}

#[test]
fn product_square_detects_ordinarity() {
    // for any factor status s: (s x s) is Hodge-Witt iff s is ordinary
    for is_ordinary in [false, true] {
        for is_hodge_witt in [false, true] {
            if is_ordinary && !is_hodge_witt {
                continue;
            }
            let s = FactorStatus {
                is_ordinary,
                is_hodge_witt,
            };
            let square = product_status(&[s, s]).unwrap();
            assert_eq!(square.is_hodge_witt, s.is_ordinary);
        }
    }
}

#[test]
fn group_density_bounds_hold_for_builtins() {
    for name in GroupClassTable::builtin_names() {
        let table = GroupClassTable::builtin(name).unwrap();
        let hw = gtr_density(&table).unwrap();
        let ord = ordinary_density(&table).unwrap();
        assert!(hw >= ord, "{name}");
        assert!(ord >= Rational64::new(1, table.order as i64), "{name}");
    }
}

#[test]
fn fermat_densities_agree_with_residue_enumeration() {
    // exact limiting frequency over residues coprime to m, via the
    // smallest prime representative of each class
    use reduction_core::fermat::{classify_fermat, fermat_densities, FermatSpec};
    let primes = small_primes();
    for (n, m) in [(2u32, 7u32), (4, 5), (3, 3), (2, 3), (6, 7), (4, 4), (2, 5)] {
        let spec = FermatSpec::new(n, m).unwrap();
        let densities = fermat_densities(spec).unwrap();
        let mut ord = 0i64;
        let mut hw = 0i64;
        let mut nonhw = 0i64;
        let mut units = 0i64;
        for r in 1..m as u64 {
            if reduction_core::arith::gcd(r, m as u64) != 1 {
                continue;
            }
            units += 1;
            let p = primes
                .iter()
                .copied()
                .find(|&p| p % m as u64 == r)
                .expect("Dirichlet supplies a prime in every unit class");
            let (ordinary, reduction) = classify_fermat(spec, p).unwrap();
            if ordinary == Some(true) {
                ord += 1;
            }
            match reduction {
                ReductionType::Ordinary | ReductionType::HodgeWitt => hw += 1,
                ReductionType::NonHodgeWitt => nonhw += 1,
                other => panic!("unexpected verdict {other}"),
            }
        }
        if let Some(expected) = densities.ord {
            assert_eq!(Rational64::new(ord, units), expected, "ord for ({n},{m})");
        }
        assert_eq!(Rational64::new(hw, units), densities.hw, "hw for ({n},{m})");
        assert_eq!(
            Rational64::new(nonhw, units),
            densities.nonhw,
            "nonhw for ({n},{m})"
        );
    }
}

#[test]
fn empirical_densities_track_class_table_predictions() {
    // |empirical - theoretical| < 3 / sqrt(N) at bound 1e6 for the bundled
    // field/table pairs
    let bound = 1_000_000;
    let pairs = [catalog::zeta5(), catalog::d4_quartic(), catalog::gaussian()];
    for entry in &pairs {
        let table = GroupClassTable::builtin(entry.group.unwrap()).unwrap();
        let target = ScanTarget {
            field: &entry.field,
            k0: entry.k0.as_ref(),
            galois: entry.galois,
            galois_non_hodge_witt_rule: entry.galois_non_hodge_witt_rule,
        };
        let out = scan(&target, &ScanOptions::up_to(bound)).unwrap();
        let n = out.report.scanned as f64;
        let tolerance = 3.0 / n.sqrt();
        let hw_empirical = out.report.split_fraction(SplitClass::CompletelySplit)
            + out.report.split_fraction(SplitClass::AlmostNotCompletely);
        let hw_theoretical = gtr_density(&table).unwrap();
        let ord_empirical = out.report.split_fraction(SplitClass::CompletelySplit);
        let ord_theoretical = ordinary_density(&table).unwrap();
        let to_f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        assert!(
            (to_f(hw_empirical) - to_f(hw_theoretical)).abs() < tolerance,
            "{:?}: hw {hw_empirical} vs {hw_theoretical}",
            entry.field.label()
        );
        assert!(
            (to_f(ord_empirical) - to_f(ord_theoretical)).abs() < tolerance,
            "{:?}: ord {ord_empirical} vs {ord_theoretical}",
            entry.field.label()
        );
        // galois fields never produce almost-split primes
        if entry.galois {
            assert_eq!(out.report.almost_not_completely.count, 0);
        }
    }
}

#[test]
fn galois_field_has_no_almost_split_primes_to_1e5() {
    let entry = catalog::zeta5();
    let target = ScanTarget {
        field: &entry.field,
        k0: None,
        galois: true,
        galois_non_hodge_witt_rule: true,
    };
    let out = scan(&target, &ScanOptions::up_to(100_000)).unwrap();
    assert_eq!(out.report.almost_not_completely.count, 0);
}

#[test]
fn completely_split_in_k_implies_completely_split_in_k0() {
    let entry = catalog::d4_quartic();
    let k0 = entry.k0.as_ref().unwrap();
    let out = scan(
        &ScanTarget {
            field: &entry.field,
            k0: Some(k0),
            galois: false,
            galois_non_hodge_witt_rule: false,
        },
        &ScanOptions::up_to(50_000),
    )
    .unwrap();
    for row in &out.rows {
        if row.split_class == SplitClass::RamifiedOrBad {
            continue;
        }
        let pattern_k0 =
            reduction_core::numfield::splitting_pattern(k0, row.p).unwrap();
        let class_k0 = reduction_core::numfield::classify_split(&pattern_k0, 2).unwrap();
        match row.split_class {
            SplitClass::CompletelySplit | SplitClass::AlmostNotCompletely => {
                assert_eq!(class_k0, SplitClass::CompletelySplit, "p = {}", row.p);
            }
            _ => {}
        }
        if row.split_class == SplitClass::AlmostNotCompletely {
            assert_eq!(row.inert_count, Some(1), "p = {}", row.p);
        }
    }
}

#[test]
fn abelian_surface_trace_divisibility_on_product_data() {
    // H^2 trace of E1 x E2 is 2p + a_p(E1) a_p(E2); whenever the product is
    // not ordinary the divisibility implication must hold
    use reduction_core::elliptic::{ap, classify_product_surface};
    use reduction_core::polygons::{trace_divisibility_check, TraceDatum};
    let e1 = catalog::curve_cm_i();
    let e2 = catalog::curve_cm_zeta3();
    for p in reduction_core::density::primes_up_to(2_000) {
        if p < 5 {
            continue;
        }
        let verdict = classify_product_surface(&e1, &e2, p).unwrap();
        let a_v = 2 * p as i64 + ap(&e1, p).unwrap() * ap(&e2, p).unwrap();
        let datum = TraceDatum { a_v, p, d: 6 };
        let non_ordinary = verdict != ReductionType::Ordinary;
        assert!(
            trace_divisibility_check(&datum, non_ordinary),
            "p = {p}, verdict {verdict}, a_v = {a_v}"
        );
    }
}
