//! Newton and Hodge polygons with exact rational slopes, plus the
//! polygon/trace sanity checks: the Newton-above-Hodge comparison, the
//! Weil bound, the trace divisibility test, and K3 status from slopes.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A convex polygon recorded as its slope multiset: segments of strictly
/// increasing slope, each with a positive horizontal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    segments: Vec<(Rational64, u64)>,
}

impl Polygon {
    /// Builds a polygon from (slope, multiplicity) segments; slopes must be
    /// strictly increasing and multiplicities positive.
    pub fn from_segments(segments: Vec<(Rational64, u64)>) -> Result<Self> {
        for window in segments.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::InvalidPolygon(
                    "segment slopes must strictly increase".into(),
                ));
            }
        }
        if segments.iter().any(|&(_, m)| m == 0) {
            return Err(Error::InvalidPolygon(
                "segment multiplicities must be positive".into(),
            ));
        }
        if segments.is_empty() {
            return Err(Error::InvalidPolygon("polygon has no segments".into()));
        }
        Ok(Polygon { segments })
    }

    /// Builds from an unordered slope list, sorting and merging equal slopes.
    pub fn from_slopes(slopes: &[Rational64]) -> Result<Self> {
        if slopes.is_empty() {
            return Err(Error::InvalidPolygon("polygon has no slopes".into()));
        }
        let mut sorted = slopes.to_vec();
        sorted.sort();
        let mut segments: Vec<(Rational64, u64)> = Vec::new();
        for s in sorted {
            match segments.last_mut() {
                Some(last) if last.0 == s => last.1 += 1,
                _ => segments.push((s, 1)),
            }
        }
        Ok(Polygon { segments })
    }

    pub fn segments(&self) -> &[(Rational64, u64)] {
        &self.segments
    }

    /// Total multiplicity; the horizontal extent of the polygon.
    pub fn width(&self) -> u64 {
        self.segments.iter().map(|&(_, m)| m).sum()
    }

    pub fn multiplicity_of(&self, slope: Rational64) -> u64 {
        self.segments
            .iter()
            .find(|&&(s, _)| s == slope)
            .map_or(0, |&(_, m)| m)
    }

    pub fn min_slope(&self) -> Rational64 {
        self.segments[0].0
    }

    pub fn max_slope(&self) -> Rational64 {
        self.segments[self.segments.len() - 1].0
    }

    /// Slopes expanded with multiplicity, ascending.
    pub fn expanded_slopes(&self) -> Vec<Rational64> {
        let mut out = Vec::with_capacity(self.width() as usize);
        for &(s, m) in &self.segments {
            for _ in 0..m {
                out.push(s);
            }
        }
        out
    }

    /// Height of the polygon above abscissa `x`, with the left endpoint
    /// normalized to height zero.
    pub fn height_at(&self, x: u64) -> Rational64 {
        let mut remaining = x;
        let mut h = Rational64::zero();
        for &(s, m) in &self.segments {
            let take = remaining.min(m);
            h += s * Rational64::from_integer(take as i64);
            remaining -= take;
            if remaining == 0 {
                break;
            }
        }
        h
    }

    pub fn total_height(&self) -> Rational64 {
        self.height_at(self.width())
    }
}

/// Trace of Frobenius on a cohomology group of dimension `d` at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceDatum {
    pub a_v: i64,
    pub p: u64,
    pub d: u32,
}

/// Valuation of a polynomial coefficient; zero coefficients carry the
/// infinite sentinel and are excluded from the hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(Rational64),
    Infinite,
}

/// Lower convex hull of the finite points (index, valuation).
///
/// Slopes of the hull segments become the polygon slopes, with the
/// horizontal length of each segment as multiplicity.
pub fn newton_polygon(vals: &[(u64, Valuation)]) -> Result<Polygon> {
    let mut finite: Vec<(i64, Rational64)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &(i, v) in vals {
        if !seen.insert(i) {
            return Err(Error::Domain(format!("duplicate index {i}")));
        }
        if let Valuation::Finite(r) = v {
            finite.push((i as i64, r));
        }
    }
    match vals.iter().find(|&&(i, _)| i == 0) {
        Some(&(_, Valuation::Infinite)) | None => {
            return Err(Error::Domain(
                "valuation at index 0 must be present and finite".into(),
            ));
        }
        _ => {}
    }
    if finite.len() < 2 {
        return Err(Error::DegenerateInput(
            "need at least two finite valuations".into(),
        ));
    }
    finite.sort_by_key(|&(i, _)| i);

    // Monotone-chain lower hull.
    let mut hull: Vec<(i64, Rational64)> = Vec::new();
    for &(x, y) in &finite {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop middle point when it is on or above the chord
            let lhs = (y2 - y1) * Rational64::from_integer(x - x1);
            let rhs = (y - y1) * Rational64::from_integer(x2 - x1);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }

    let mut segments = Vec::new();
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let slope = (y2 - y1) / Rational64::from_integer(x2 - x1);
        segments.push((slope, (x2 - x1) as u64));
    }
    Polygon::from_segments(segments)
}

/// Polygon with slope j of multiplicity h^j for each Hodge number.
pub fn hodge_polygon(hodge_numbers: &[u64]) -> Result<Polygon> {
    let segments: Vec<(Rational64, u64)> = hodge_numbers
        .iter()
        .enumerate()
        .filter(|&(_, &h)| h > 0)
        .map(|(j, &h)| (Rational64::from_integer(j as i64), h))
        .collect();
    if segments.is_empty() {
        return Err(Error::DegenerateInput(
            "all Hodge numbers are zero".into(),
        ));
    }
    Polygon::from_segments(segments)
}

/// Newton-above-Hodge comparison: `(above, same_endpoints)` where `above`
/// holds when the Newton ordinate is at least the Hodge ordinate at every
/// integer abscissa, and `same_endpoints` compares total heights.
pub fn lies_above(newton: &Polygon, hodge: &Polygon) -> Result<(bool, bool)> {
    let w = newton.width();
    if w != hodge.width() {
        return Err(Error::Domain(format!(
            "width mismatch: newton {} vs hodge {}",
            w,
            hodge.width()
        )));
    }
    let above = (0..=w).all(|x| newton.height_at(x) >= hodge.height_at(x));
    let same_endpoints = newton.total_height() == hodge.total_height();
    Ok((above, same_endpoints))
}

/// |a_v| <= d * p.
pub fn weil_bound_check(t: &TraceDatum) -> bool {
    t.a_v.unsigned_abs() <= t.d as u64 * t.p
}

/// Divisibility implication for non-ordinary reductions: vacuously true
/// for ordinary data, otherwise requires p | a_v.
pub fn trace_divisibility_check(t: &TraceDatum, non_ordinary: bool) -> bool {
    !non_ordinary || t.a_v.rem_euclid(t.p as i64) == 0
}

/// Status of a K3 surface from the Newton polygon of H^2:
/// `(ordinary, finite_height)`.
pub fn k3_status(newton_h2: &Polygon) -> Result<(bool, bool)> {
    if newton_h2.width() != 22 {
        return Err(Error::InvalidPolygon(format!(
            "K3 H^2 polygon must have width 22, got {}",
            newton_h2.width()
        )));
    }
    let zero = Rational64::zero();
    let two = Rational64::from_integer(2);
    for &(s, m) in newton_h2.segments() {
        if s < zero || s > two {
            return Err(Error::InvalidPolygon(format!("slope {s} outside [0, 2]")));
        }
        if newton_h2.multiplicity_of(two - s) != m {
            return Err(Error::InvalidPolygon(format!(
                "polygon not symmetric about 1 at slope {s}"
            )));
        }
    }
    let ordinary = newton_h2.multiplicity_of(zero) == 1;
    let finite_height = newton_h2.min_slope() < Rational64::from_integer(1);
    Ok((ordinary, finite_height))
}
