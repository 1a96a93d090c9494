//! Hom and Ext dimensions, computed two independent ways.
//!
//! Geometric route: the intersection index of two orbits. Crossings of a
//! refined segment with the (unrefined) orbit of another are counted when
//! the crossing point is interior to both segments and the orbit member has
//! the strictly smaller slope reciprocal; a marker/parity condition adds a
//! correction of one (see [`intersection_index`]). By the main equivalence
//! this index is dim Ext^1 between the attached bundles.
//!
//! Algebraic route: Serre duality gives dim Ext^1(O(x), O(y)) =
//! dim R_{x+w-y}, evaluated by the closed four-case floor formula in the
//! (x1-x2, x2, x3) coordinates. Rank-2 arguments are reduced to their
//! line-bundle constituents. The reduction is valid exactly when the Ext
//! group is nonzero; vanishing is decided by the Euler form, since the
//! category is directed (Hom only flows weakly up in slope while the AR
//! translation strictly lowers it, so at most one of Hom(X,Y), Ext^1(X,Y)
//! is nonzero for indecomposables, and Ext^1 is nonzero exactly when the
//! Euler form is negative).
//!
//! All geometry is exact: segment endpoints are half-integers, so crossing
//! predicates are evaluated on doubled integer coordinates.

use num_rational::Rational64;
use std::collections::BTreeSet;

use crate::bundles::{Bundle, BundleSum};
use crate::picard::{ModelContext, PicardElement};
use crate::strip::{Marker, OrbitClass, Segment};

/// A segment of the strip with exact rational endpoints: the realized
/// geometry of a refined combinatorial segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeomSegment {
    /// Endpoints in doubled coordinates (both components multiplied by 2),
    /// so marked points sit at (2i, 0) and (2j, 2) and the midline points at
    /// (kn, 1).
    lo: (i64, i64),
    hi: (i64, i64),
    recip: i64,
}

impl GeomSegment {
    /// The geometry of a refined segment: the full chord, its lower half up
    /// to the midline point, or its upper half from the midline point.
    pub fn of(seg: &Segment) -> GeomSegment {
        let (i, j) = (seg.i(), seg.j());
        let (lo, hi) = match seg.marker() {
            Marker::Full => ((2 * i, 0), (2 * j, 2)),
            Marker::Plus => ((2 * i, 0), (i + j, 1)),
            Marker::Minus => ((i + j, 1), (2 * j, 2)),
        };
        GeomSegment {
            lo,
            hi,
            recip: seg.recip_slope(),
        }
    }

    fn of_full(i: i64, j: i64) -> GeomSegment {
        GeomSegment {
            lo: (2 * i, 0),
            hi: (2 * j, 2),
            recip: j - i,
        }
    }

    /// Endpoints as exact rationals in strip coordinates.
    pub fn endpoints(&self) -> [(Rational64, Rational64); 2] {
        let half = |(x, y): (i64, i64)| (Rational64::new(x, 2), Rational64::new(y, 2));
        [half(self.lo), half(self.hi)]
    }

    /// j - i of the underlying full segment; constant on G-orbits.
    pub fn recip_slope(&self) -> i64 {
        self.recip
    }

    /// Whether the two segments cross in a point interior to both.
    ///
    /// Strictly opposite orientations on both sides; contact at an endpoint
    /// of either segment does not count.
    pub fn crosses_interior(&self, other: &GeomSegment) -> bool {
        fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
            let ax = a.0 - o.0;
            let ay = a.1 - o.1;
            let bx = b.0 - o.0;
            let by = b.1 - o.1;
            (ax * by - ay * bx).signum()
        }
        let d1 = cross(self.lo, self.hi, other.lo);
        let d2 = cross(self.lo, self.hi, other.hi);
        let d3 = cross(other.lo, other.hi, self.lo);
        let d4 = cross(other.lo, other.hi, self.hi);
        d1 * d2 < 0 && d3 * d4 < 0
    }
}

/// All full segments in the G-orbit of `orbit`'s underlying chord whose
/// x-extent can meet `geom`, deduplicated.
fn orbit_candidates(geom: &GeomSegment, orbit: &OrbitClass) -> BTreeSet<(i64, i64)> {
    let rep = orbit.rep();
    let n = rep.n();
    let ax_lo = geom.lo.0.min(geom.hi.0);
    let ax_hi = geom.lo.0.max(geom.hi.0);
    let mut out = BTreeSet::new();
    for (s, t) in [(rep.i(), rep.j()), (-rep.j(), -rep.i())] {
        let b_min = 2 * s.min(t);
        let b_max = 2 * s.max(t);
        // need b_min + 2mn < ax_hi and b_max + 2mn > ax_lo
        let m_lo = (ax_lo - b_max).div_euclid(2 * n);
        let m_hi = (ax_hi - b_min).div_euclid(2 * n) + 1;
        for m in m_lo..=m_hi {
            out.insert((s + m * n, t + m * n));
        }
    }
    out
}

/// Number of positive intersections of the segment `a` with the G-orbit of
/// full segments underlying `b_orbit`: interior crossings with orbit members
/// of strictly smaller slope reciprocal.
pub fn positive_intersections(a: &Segment, b_orbit: &OrbitClass) -> u64 {
    assert_eq!(a.n(), b_orbit.rep().n(), "segments from different contexts");
    let geom = GeomSegment::of(a);
    let mut count = 0;
    for (s, t) in orbit_candidates(&geom, b_orbit) {
        if t - s >= geom.recip_slope() {
            continue;
        }
        if geom.crosses_interior(&GeomSegment::of_full(s, t)) {
            count += 1;
        }
    }
    count
}

/// The positive intersection points of `a` with the orbit underlying
/// `b_orbit`, as exact strip coordinates, sorted.
pub fn positive_crossing_points(
    a: &Segment,
    b_orbit: &OrbitClass,
) -> Vec<(Rational64, Rational64)> {
    let geom = GeomSegment::of(a);
    let mut out = Vec::new();
    for (s, t) in orbit_candidates(&geom, b_orbit) {
        if t - s >= geom.recip_slope() {
            continue;
        }
        let other = GeomSegment::of_full(s, t);
        if geom.crosses_interior(&other) {
            // line intersection in doubled coordinates
            let (p1, p2) = (geom.lo, geom.hi);
            let (q1, q2) = (other.lo, other.hi);
            let d = (p2.0 - p1.0) * (q2.1 - q1.1) - (p2.1 - p1.1) * (q2.0 - q1.0);
            let num = (q1.0 - p1.0) * (q2.1 - q1.1) - (q1.1 - p1.1) * (q2.0 - q1.0);
            let tparam = Rational64::new(num, d);
            let x = Rational64::from(p1.0) + tparam * (p2.0 - p1.0);
            let y = Rational64::from(p1.1) + tparam * (p2.1 - p1.1);
            out.push((x / 2, y / 2));
        }
    }
    out.sort_unstable();
    out
}

/// The intersection index of the orbits of `a` and `b`: the positive
/// intersection count, plus one exactly when the markers are opposite
/// halves, the endpoint sums add to 0 mod 2n, and `a` has the strictly
/// larger slope reciprocal. Independent of the chosen representatives.
pub fn intersection_index(a: &Segment, b: &Segment) -> u64 {
    let base = positive_intersections(a, &OrbitClass::of(b));
    let n = a.n();
    let corrected = a.marker() != Marker::Full
        && a.marker() == b.marker().flipped()
        && (a.endpoint_sum() + b.endpoint_sum()).rem_euclid(2 * n) == 0
        && a.recip_slope() > b.recip_slope();
    base + u64::from(corrected)
}

/// dim Ext^1(O(x), O(y)) through Serre duality: dim R_{x + w - y}.
pub fn ext_dim_line_line(ctx: &ModelContext, x: &PicardElement, y: &PicardElement) -> u64 {
    x.add(&ctx.omega()).sub(y).dim_r()
}

/// The closed four-case formula for dim Ext^1(O(x), O(y)), in the
/// coordinates x = l1*(x1-x2) + l2*x2 + l*x3.
fn ext_line_line_cases(ctx: &ModelContext, x: &PicardElement, y: &PicardElement) -> u64 {
    let n = ctx.n();
    let (l1, l2, l) = x.alt_coords();
    let (k1, k2, k) = y.alt_coords();
    let base = (l - k - 1).div_euclid(n);
    let v = if l2 == k2 {
        if l1 == k1 {
            base
        } else {
            base + 1
        }
    } else if l2 > k2 {
        base + 1
    } else {
        base
    };
    v.max(0) as u64
}

fn euler_pair(ctx: &ModelContext, x: &PicardElement, y: &PicardElement) -> i64 {
    let hom = y.sub(x).dim_r() as i64;
    let ext = x.add(&ctx.omega()).sub(y).dim_r() as i64;
    hom - ext
}

/// The Euler form chi(X, Y) = dim Hom - dim Ext^1, computed on K-classes:
/// bilinear over the constituent line classes.
pub fn euler_form(x: &BundleSum, y: &BundleSum) -> i64 {
    let mut total = 0;
    for bx in x.summands() {
        let ctx = bx.ctx();
        for by in y.summands() {
            for cx in bx.k_class().line_classes() {
                for cy in by.k_class().line_classes() {
                    total += euler_pair(ctx, cx, cy);
                }
            }
        }
    }
    total
}

fn ext_algebraic_pair(x: &Bundle, y: &Bundle) -> u64 {
    let ctx = x.ctx();
    if let (Some(tx), Some(ty)) = (x.line_twist(), y.line_twist()) {
        return ext_line_line_cases(ctx, &tx, &ty);
    }
    // Ext vanishes unless the Euler form is negative (directedness); when it
    // does not vanish the group splits over the constituents of either
    // rank-2 argument.
    if euler_form(&x.into_sum(), &y.into_sum()) >= 0 {
        return 0;
    }
    let constituents = |b: &Bundle| -> Vec<Bundle> {
        b.k_class()
            .line_classes()
            .iter()
            .map(|t| Bundle::line(ctx, *t))
            .collect()
    };
    if x.is_ext() {
        constituents(x)
            .iter()
            .map(|u| ext_algebraic_pair(u, y))
            .sum()
    } else {
        constituents(y)
            .iter()
            .map(|v| ext_algebraic_pair(x, v))
            .sum()
    }
}

/// dim Ext^1 by the algebraic route: four-case floor formulas for line
/// bundle pairs, constituent reductions for extension bundles, additive over
/// direct sums.
pub fn ext_dim_algebraic(x: &BundleSum, y: &BundleSum) -> u64 {
    let mut total = 0;
    for bx in x.summands() {
        for by in y.summands() {
            total += ext_algebraic_pair(bx, by);
        }
    }
    total
}

/// dim Ext^1 by the geometric route: the intersection index of the attached
/// orbits, additive over direct sums.
pub fn ext_dim(x: &BundleSum, y: &BundleSum) -> u64 {
    let mut total = 0;
    for bx in x.summands() {
        for by in y.summands() {
            total += intersection_index(&bx.segment_of().rep(), &by.segment_of().rep());
        }
    }
    total
}

/// dim Hom = chi + dim Ext^1. Panics if the sum is negative, which would
/// contradict the two-term structure of a hereditary category.
pub fn hom_dim(x: &BundleSum, y: &BundleSum) -> u64 {
    let v = euler_form(x, y) + ext_dim(x, y) as i64;
    assert!(
        v >= 0,
        "negative Hom dimension {v} for {x} -> {y}: internal inconsistency"
    );
    v as u64
}

/// Whether some extension of O(y) by O(x) has an extension bundle as its
/// middle term: y - x must be x1 + x2 + k*x3 + l*c in normal form with
/// 1 <= k <= n-1 and l >= -1.
pub fn rank2_middle_criterion(x: &PicardElement, y: &PicardElement) -> bool {
    let d = y.sub(x);
    d.coeff_x1() == 1 && d.coeff_x2() == 1 && d.coeff_x3() >= 1 && d.coeff_c() >= -1
}

/// Outcome of the constituent-additivity check around one extension bundle.
#[derive(Debug, Clone, Default)]
pub struct ConstituentReport {
    pub violations: Vec<String>,
}

impl ConstituentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the splitting of Ext groups through the constituents of an
/// extension bundle E = E_{O(b)}<w*x3> with constituents O(b+w*x3) and
/// O(b+omega):
///
/// - if Ext^1(X, E) != 0 then Hom(X, O(b+w*x3)) = 0 and the dimension is the
///   sum over the constituents;
/// - if Ext^1(E, X) != 0 then Hom(O(b+omega), X) = 0 and dually.
pub fn constituent_additivity_check(x: &Bundle, e: &Bundle) -> ConstituentReport {
    let mut report = ConstituentReport::default();
    let ctx = e.ctx();
    let Some((base, width)) = e.ext_descriptor() else {
        report.violations.push(format!("{e} is not an extension bundle"));
        return report;
    };
    let top = Bundle::line(ctx, base.add(&ctx.x3().scale(width))).into_sum();
    let bot = Bundle::line(ctx, base.add(&ctx.omega())).into_sum();
    let xs = x.into_sum();
    let es = e.into_sum();

    let fwd = ext_dim(&xs, &es);
    if fwd != 0 {
        if hom_dim(&xs, &top) != 0 {
            report
                .violations
                .push(format!("Ext({x},{e}) != 0 but Hom({x}, top constituent) != 0"));
        }
        let split = ext_dim(&xs, &bot) + ext_dim(&xs, &top);
        if fwd != split {
            report.violations.push(format!(
                "Ext({x},{e}) = {fwd} but constituents give {split}"
            ));
        }
    }
    let bwd = ext_dim(&es, &xs);
    if bwd != 0 {
        if hom_dim(&bot, &xs) != 0 {
            report
                .violations
                .push(format!("Ext({e},{x}) != 0 but Hom(bottom constituent, {x}) != 0"));
        }
        let split = ext_dim(&bot, &xs) + ext_dim(&top, &xs);
        if bwd != split {
            report.violations.push(format!(
                "Ext({e},{x}) = {bwd} but constituents give {split}"
            ));
        }
    }
    report
}
