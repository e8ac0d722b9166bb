//! Bundled example fields and curves used by the reproduction commands and
//! the acceptance suite.

use crate::elliptic::EllipticCurveQ;
use crate::numfield::NumberField;

/// A number field bundled with its scan configuration.
#[derive(Debug, Clone)]
pub struct FieldEntry {
    pub field: NumberField,
    pub k0: Option<NumberField>,
    pub galois: bool,
    pub galois_non_hodge_witt_rule: bool,
    /// Name of a built-in group class table matching the Galois closure.
    pub group: Option<&'static str>,
}

/// Q(zeta_5): cyclic quartic, galois, with the proven rule that every
/// non-split unramified prime p > 5 gives non-Hodge-Witt reduction.
pub fn zeta5() -> FieldEntry {
    FieldEntry {
        field: NumberField::with_label("zeta5", &[1, 1, 1, 1, 1]).unwrap(),
        k0: None,
        galois: true,
        galois_non_hodge_witt_rule: true,
        group: Some("C4"),
    }
}

/// The non-galois quartic CM field Q[x]/(x^4 + 134 x^2 + 89) with Galois
/// closure of group D4 and totally real subfield Q(sqrt(11)).
pub fn d4_quartic() -> FieldEntry {
    FieldEntry {
        field: NumberField::with_label("d4-field", &[89, 0, 134, 0, 1]).unwrap(),
        k0: Some(NumberField::with_label("sqrt11", &[-11, 0, 1]).unwrap()),
        galois: false,
        galois_non_hodge_witt_rule: false,
        group: Some("D4"),
    }
}

/// Q(i), the CM field of y^2 = x^3 - x.
pub fn gaussian() -> FieldEntry {
    FieldEntry {
        field: NumberField::with_label("gaussian", &[1, 0, 1]).unwrap(),
        k0: None,
        galois: true,
        galois_non_hodge_witt_rule: true,
        group: Some("C2"),
    }
}

/// y^2 = x^3 - x, CM by Q(i); ordinary exactly at p = 1 mod 4.
pub fn curve_cm_i() -> EllipticCurveQ {
    EllipticCurveQ::from_coeffs([0, 0, 0, -1, 0])
        .unwrap()
        .with_label("y^2=x^3-x")
}

/// y^2 = x^3 + 1, CM by Q(zeta_3); ordinary exactly at p = 1 mod 3.
pub fn curve_cm_zeta3() -> EllipticCurveQ {
    EllipticCurveQ::from_coeffs([0, 0, 0, 0, 1])
        .unwrap()
        .with_label("y^2=x^3+1")
}

/// Cremona 37a1: y^2 + y = x^3 - x.
pub fn curve_37a1() -> EllipticCurveQ {
    EllipticCurveQ::from_coeffs([0, 0, 1, -1, 0])
        .unwrap()
        .with_label("37a1")
}

/// Cremona 37b1: y^2 + y = x^3 + x^2 - 23x - 50.
pub fn curve_37b1() -> EllipticCurveQ {
    EllipticCurveQ::from_coeffs([0, 1, 1, -23, -50])
        .unwrap()
        .with_label("37b1")
}
