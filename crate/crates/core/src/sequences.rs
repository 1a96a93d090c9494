//! Symbolic short exact sequences with machine-checked additivity.
//!
//! Sequences are terms plus a label, no morphism data: the checkable content
//! at this scale is rank and degree additivity, Euler pairings against probe
//! line bundles, and Hom-probe exactness for distinguished sequences.
//!
//! Constructors:
//! - [`quadrilateral_sequence`]: the two diagonals of a quadrilateral of
//!   marked points.
//! - [`crossing_sequence`]: endpoint recombination across a positive
//!   crossing of two segments.
//! - [`triangle_sequence`]: a segment against a midline point.
//! - [`widen_sequence`], [`shift_sequence`], [`square_sequence`],
//!   [`corner_sequence`]: the ladder of extension-bundle steps by x3 and
//!   their bicartesian squares.
//! - [`projective_cover`] / [`injective_hull`]: the Frobenius-structure
//!   cover and hull of an extension bundle, with their defining sequences.

use serde::ser::SerializeStruct;
use serde::Serialize;
use std::fmt;

use crate::bundles::{gen_ext_bundle, phi_unrefined, Bundle, BundleSum};
use crate::homext::{euler_form, hom_dim, positive_intersections, GeomSegment};
use crate::picard::{ModelContext, PicardElement};
use crate::strip::{Marker, OrbitClass, Segment};
use crate::{ModelError, Result};

/// One term of a sequence: a sum of vector bundles, or a twisted simple
/// torsion sheaf S_index(twist) concentrated at one of the three exceptional
/// points (rank 0, degree = degree of x_index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqTerm {
    Vb(BundleSum),
    Simple { index: u8, twist: PicardElement },
}

impl SeqTerm {
    pub fn rank(&self) -> i64 {
        match self {
            SeqTerm::Vb(s) => s.rank(),
            SeqTerm::Simple { .. } => 0,
        }
    }

    pub fn degree(&self, ctx: &ModelContext) -> i64 {
        match self {
            SeqTerm::Vb(s) => s.degree(),
            SeqTerm::Simple { index, .. } => match index {
                1 => ctx.x1().degree(),
                2 => ctx.x2().degree(),
                _ => ctx.x3().degree(),
            },
        }
    }

    pub fn as_bundles(&self) -> Option<&BundleSum> {
        match self {
            SeqTerm::Vb(s) => Some(s),
            SeqTerm::Simple { .. } => None,
        }
    }
}

impl fmt::Display for SeqTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqTerm::Vb(s) => write!(f, "{s}"),
            SeqTerm::Simple { index, twist } => write!(f, "S{index}({twist})"),
        }
    }
}

impl Serialize for SeqTerm {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SeqTerm::Vb(s) => {
                let mut st = ser.serialize_struct("SeqTerm", 2)?;
                st.serialize_field("type", "bundles")?;
                st.serialize_field("summands", s)?;
                st.end()
            }
            SeqTerm::Simple { index, twist } => {
                let mut st = ser.serialize_struct("SeqTerm", 3)?;
                st.serialize_field("type", "simple")?;
                st.serialize_field("index", index)?;
                st.serialize_field("twist", twist)?;
                st.end()
            }
        }
    }
}

/// A symbolic short exact sequence 0 -> left -> middle -> right -> 0.
///
/// `middle` keeps one entry per displayed summand. `distinguished` marks
/// sequences exact for the Frobenius structure (Hom from every line bundle
/// stays exact).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequence {
    pub left: SeqTerm,
    pub middle: Vec<SeqTerm>,
    pub right: SeqTerm,
    pub provenance: String,
    #[serde(skip)]
    pub distinguished: bool,
}

impl ExactSequence {
    fn new(
        left: SeqTerm,
        middle: Vec<SeqTerm>,
        right: SeqTerm,
        provenance: &str,
    ) -> ExactSequence {
        ExactSequence {
            left,
            middle,
            right,
            provenance: provenance.to_string(),
            distinguished: false,
        }
    }

    pub fn middle_rank(&self) -> i64 {
        self.middle.iter().map(SeqTerm::rank).sum()
    }

    pub fn middle_degree(&self, ctx: &ModelContext) -> i64 {
        self.middle.iter().map(|t| t.degree(ctx)).sum()
    }
}

impl fmt::Display for ExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid: Vec<String> = self.middle.iter().map(SeqTerm::to_string).collect();
        write!(
            f,
            "0 -> {} -> {} -> {} -> 0  [{}]",
            self.left,
            mid.join(" (+) "),
            self.right,
            self.provenance
        )
    }
}

/// Result of [`quadrilateral_sequence`]: the sequence and whether the two
/// middle terms coincide.
#[derive(Debug, Clone)]
pub struct QuadrilateralSequence {
    pub seq: ExactSequence,
    /// True exactly when k1 = k2 and either i+j = 0 (mod n) or k1 = 0
    /// (mod n); equivalent to orbit equality of the middle chords.
    pub middle_coincide: bool,
}

/// The sequence of the two diagonals of the quadrilateral with lower corners
/// (i-k1, 0), (i, 0) and upper corners (j, 1), (j+k2, 1):
///
///   0 -> phi[i,j] -> phi[i-k1,j] (+) phi[i,j+k2] -> phi[i-k1,j+k2] -> 0
pub fn quadrilateral_sequence(
    ctx: &ModelContext,
    i: i64,
    j: i64,
    k1: i64,
    k2: i64,
) -> Result<QuadrilateralSequence> {
    if k1 < 1 || k2 < 1 {
        return Err(ModelError::DomainViolation(format!(
            "side lengths must be positive, got k1={k1}, k2={k2}"
        )));
    }
    let n = ctx.n();
    let seq = ExactSequence::new(
        SeqTerm::Vb(phi_unrefined(ctx, i, j)),
        vec![
            SeqTerm::Vb(phi_unrefined(ctx, i - k1, j)),
            SeqTerm::Vb(phi_unrefined(ctx, i, j + k2)),
        ],
        SeqTerm::Vb(phi_unrefined(ctx, i - k1, j + k2)),
        "quadrilateral",
    );
    let middle_coincide =
        k1 == k2 && ((i + j).rem_euclid(n) == 0 || k1.rem_euclid(n) == 0);
    Ok(QuadrilateralSequence {
        seq,
        middle_coincide,
    })
}

/// The bundle sum attached to the chord between two realized endpoints in
/// doubled coordinates (y = 0 lower boundary, 1 midline, 2 upper boundary).
fn term_between(ctx: &ModelContext, lo: (i64, i64), hi: (i64, i64)) -> BundleSum {
    let n = ctx.n();
    match (lo.1, hi.1) {
        (0, 2) => phi_unrefined(ctx, lo.0 / 2, hi.0 / 2),
        (0, 1) => {
            let i = lo.0 / 2;
            let k = hi.0 / n;
            let seg = Segment::new(ctx, i, k * n - i, Marker::Plus).expect("midline sum");
            Bundle::phi_hat(&OrbitClass::of(&seg), ctx).into_sum()
        }
        (1, 2) => {
            let j = hi.0 / 2;
            let k = lo.0 / n;
            let seg = Segment::new(ctx, k * n - j, j, Marker::Minus).expect("midline sum");
            Bundle::phi_hat(&OrbitClass::of(&seg), ctx).into_sum()
        }
        _ => unreachable!("no chord joins two midline points"),
    }
}

/// The sequence of a positive crossing: a representative of `sub`'s orbit is
/// sought that crosses `quot` in an interior point with strictly smaller
/// slope reciprocal; the crossing recombines the four endpoints:
///
///   0 -> phi(sub) -> phi[lo(quot),hi(sub)] (+) phi[lo(sub),hi(quot)]
///     -> phi(quot) -> 0
pub fn crossing_sequence(quot: &Segment, sub: &Segment) -> Result<ExactSequence> {
    assert_eq!(quot.n(), sub.n(), "segments from different contexts");
    let ctx = ModelContext::new(quot.n());
    let a = GeomSegment::of(quot);
    // Deterministic search over orbit members of `sub` near `quot`.
    let n = quot.n();
    let span = quot.i().abs().max(quot.j().abs()) + sub.i().abs().max(sub.j().abs()) + 2 * n;
    let mut found: Option<Segment> = None;
    let mut members: Vec<Segment> = Vec::new();
    let rep = sub.canonical_rep();
    for m in -(span / n + 2)..=(span / n + 2) {
        members.push(Segment::new(&ctx, rep.i() + m * n, rep.j() + m * n, rep.marker()).unwrap());
        members.push(Segment::new(&ctx, -rep.j() + m * n, -rep.i() + m * n, rep.marker()).unwrap());
    }
    members.sort_unstable();
    members.dedup();
    for cand in members {
        if cand.recip_slope() < quot.recip_slope()
            && a.crosses_interior(&GeomSegment::of(&cand))
        {
            found = Some(cand);
            break;
        }
    }
    let b = found.ok_or(ModelError::NoPositiveIntersection)?;
    let ga = GeomSegment::of(quot).endpoints_doubled();
    let gb = GeomSegment::of(&b).endpoints_doubled();
    Ok(ExactSequence::new(
        SeqTerm::Vb(Bundle::phi_hat(&OrbitClass::of(&b), &full_ctx(quot)).into_sum()),
        vec![
            SeqTerm::Vb(term_between(&full_ctx(quot), ga.0, gb.1)),
            SeqTerm::Vb(term_between(&full_ctx(quot), gb.0, ga.1)),
        ],
        SeqTerm::Vb(Bundle::phi_hat(&OrbitClass::of(quot), &full_ctx(quot)).into_sum()),
        "crossing",
    ))
}

// crossing_sequence works over orbits, so only n matters; bundles are taken
// in the default context of that weight.
fn full_ctx(seg: &Segment) -> ModelContext {
    ModelContext::new(seg.n())
}

impl GeomSegment {
    fn endpoints_doubled(&self) -> ((i64, i64), (i64, i64)) {
        let [p, q] = self.endpoints();
        let d = |(x, y): (num_rational::Rational64, num_rational::Rational64)| {
            ((x * 2).to_integer(), (y * 2).to_integer())
        };
        (d((p.0, p.1)), d((q.0, q.1)))
    }
}

/// The triangle of a full segment [i,j] against the midline point P_k: the
/// two half chords from (i,0) to P_k and from P_k to (j,1) are the sub and
/// quotient, ordered by ascending slope reciprocal:
///
///   0 -> phi(half with smaller recip) -> phi[i,j] -> phi(other half) -> 0
pub fn triangle_sequence(ctx: &ModelContext, i: i64, j: i64, k: i64) -> Result<ExactSequence> {
    let n = ctx.n();
    if k * n == i + j {
        return Err(ModelError::DegeneratePoint { k });
    }
    let seg = Segment::new(ctx, i, j, Marker::Full)
        .map_err(|_| ModelError::InvalidSegment(format!("[{i},{j}] passes through a midline point")))?;
    let lower = Segment::new(ctx, i, k * n - i, Marker::Plus).expect("sum k*n");
    let upper = Segment::new(ctx, k * n - j, j, Marker::Minus).expect("sum k*n");
    // recip(lower) = kn-2i, recip([i,j]) = j-i, recip(upper) = 2j-kn:
    // ascending exactly when kn < i+j, descending when kn > i+j.
    let (green, blue) = if k * n < i + j {
        (lower, upper)
    } else {
        (upper, lower)
    };
    Ok(ExactSequence::new(
        SeqTerm::Vb(Bundle::phi_hat(&OrbitClass::of(&green), ctx).into_sum()),
        vec![SeqTerm::Vb(
            Bundle::phi_hat(&OrbitClass::of(&seg), ctx).into_sum(),
        )],
        SeqTerm::Vb(Bundle::phi_hat(&OrbitClass::of(&blue), ctx).into_sum()),
        "triangle",
    ))
}

fn require_x3_multiple(x: &PicardElement) -> Result<()> {
    if x.coeff_x1() != 0 || x.coeff_x2() != 0 {
        return Err(ModelError::NotAnX3Multiple);
    }
    Ok(())
}

/// Widening an extension by one x3 step, with a twisted simple quotient:
///
///   0 -> E_L<x> -> E_L<x + x3> -> S3(x + x3) -> 0
pub fn widen_sequence(
    ctx: &ModelContext,
    base: PicardElement,
    x: PicardElement,
) -> Result<ExactSequence> {
    require_x3_multiple(&x)?;
    Ok(ExactSequence::new(
        SeqTerm::Vb(gen_ext_bundle(ctx, base, x)?),
        vec![SeqTerm::Vb(gen_ext_bundle(ctx, base, x.add(&ctx.x3()))?)],
        SeqTerm::Simple {
            index: 3,
            twist: x.add(&ctx.x3()),
        },
        "widen",
    ))
}

/// Shifting the base up by x3 while narrowing, with an untwisted simple
/// quotient:
///
///   0 -> E_L<x> -> E_{L(x3)}<x - x3> -> S3 -> 0
pub fn shift_sequence(
    ctx: &ModelContext,
    base: PicardElement,
    x: PicardElement,
) -> Result<ExactSequence> {
    require_x3_multiple(&x)?;
    Ok(ExactSequence::new(
        SeqTerm::Vb(gen_ext_bundle(ctx, base, x)?),
        vec![SeqTerm::Vb(gen_ext_bundle(
            ctx,
            base.add(&ctx.x3()),
            x.sub(&ctx.x3()),
        )?)],
        SeqTerm::Simple {
            index: 3,
            twist: ctx.zero(),
        },
        "shift",
    ))
}

/// The bicartesian square spanned by one widening and one shift:
///
///   0 -> E_L<x> -> E_L<x + x3> (+) E_{L(x3)}<x - x3> -> E_{L(x3)}<x> -> 0
pub fn square_sequence(
    ctx: &ModelContext,
    base: PicardElement,
    x: PicardElement,
) -> Result<ExactSequence> {
    require_x3_multiple(&x)?;
    Ok(ExactSequence::new(
        SeqTerm::Vb(gen_ext_bundle(ctx, base, x)?),
        vec![
            SeqTerm::Vb(gen_ext_bundle(ctx, base, x.add(&ctx.x3()))?),
            SeqTerm::Vb(gen_ext_bundle(ctx, base.add(&ctx.x3()), x.sub(&ctx.x3()))?),
        ],
        SeqTerm::Vb(gen_ext_bundle(ctx, base.add(&ctx.x3()), x)?),
        "square",
    ))
}

/// The corner square linking a line bundle to extension bundles, for
/// x = a*x3 with a >= 0 and y = b*x3 with b >= 1:
///
///   0 -> L(w) -> L(w + y) (+) E_L<x + y> -> E_{L(y)}<x> -> 0
pub fn corner_sequence(
    ctx: &ModelContext,
    base: PicardElement,
    x: PicardElement,
    y: PicardElement,
) -> Result<ExactSequence> {
    require_x3_multiple(&x)?;
    require_x3_multiple(&y)?;
    let a = x.coeff_x3() + ctx.n() * x.coeff_c();
    let b = y.coeff_x3() + ctx.n() * y.coeff_c();
    if a < 0 {
        return Err(ModelError::DomainViolation(format!(
            "x must be a nonnegative multiple of x3, got {a}*x3"
        )));
    }
    if b < 1 {
        return Err(ModelError::DomainViolation(format!(
            "y must be a positive multiple of x3, got {b}*x3"
        )));
    }
    let w = ctx.omega();
    Ok(ExactSequence::new(
        SeqTerm::Vb(Bundle::line(ctx, base.add(&w)).into_sum()),
        vec![
            SeqTerm::Vb(Bundle::line(ctx, base.add(&w).add(&y)).into_sum()),
            SeqTerm::Vb(gen_ext_bundle(ctx, base, x.add(&y))?),
        ],
        SeqTerm::Vb(gen_ext_bundle(ctx, base.add(&y), x)?),
        "corner",
    ))
}

/// A projective cover or injective hull with its defining sequence.
#[derive(Debug, Clone)]
pub struct CoverData {
    /// The four line bundles of the cover (or hull), as two half pairs.
    pub cover: BundleSum,
    /// The second diagonal of the quadrilateral: kernel of the cover map,
    /// cokernel of the hull embedding.
    pub complement: Bundle,
    pub seq: ExactSequence,
}

fn cover_or_hull(x: &Bundle, hull: bool) -> Result<CoverData> {
    let ctx = *x.ctx();
    if !x.is_ext() {
        return Err(ModelError::NotExtensionBundle);
    }
    let rep = x.segment_of().rep();
    let (i, j) = (rep.i(), rep.j());
    let n = ctx.n();
    // canonical full orbits satisfy 0 < i+j < n
    let (lower_chord, upper_chord, diag) = if hull {
        ((i, n - i), (-j, j), (-j, n - i))
    } else {
        ((i, -i), (n - j, j), (n - j, -i))
    };
    let half_a = phi_unrefined(&ctx, lower_chord.0, lower_chord.1);
    let half_b = phi_unrefined(&ctx, upper_chord.0, upper_chord.1);
    let cover = half_a.plus(&half_b);
    let complement = Bundle::phi_hat(
        &OrbitClass::of(&Segment::new(&ctx, diag.0, diag.1, Marker::Full).expect("interior sum")),
        &ctx,
    );
    let (left, right, provenance) = if hull {
        (*x, complement, "injective-hull")
    } else {
        (complement, *x, "projective-cover")
    };
    let mut seq = ExactSequence::new(
        SeqTerm::Vb(left.into_sum()),
        vec![SeqTerm::Vb(half_a), SeqTerm::Vb(half_b)],
        SeqTerm::Vb(right.into_sum()),
        provenance,
    );
    seq.distinguished = true;
    Ok(CoverData {
        cover,
        complement,
        seq,
    })
}

/// The projective cover of an extension bundle in the Frobenius structure:
/// the four line bundles attached to the two chords through the midline
/// points flanking the bundle's segment, with defining sequence
/// 0 -> kernel -> cover -> X -> 0.
pub fn projective_cover(x: &Bundle) -> Result<CoverData> {
    cover_or_hull(x, false)
}

/// The injective hull, dually: 0 -> X -> hull -> cokernel -> 0.
pub fn injective_hull(x: &Bundle) -> Result<CoverData> {
    cover_or_hull(x, true)
}

/// Outcome of checking one sequence.
#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub rank_additive: bool,
    pub degree_additive: bool,
    /// Euler pairing additivity against probe line bundles; `None` when a
    /// torsion term prevents the probe.
    pub euler_additive: Option<bool>,
    /// Hom-probe exactness for distinguished sequences.
    pub hom_probe: Option<bool>,
    pub violations: Vec<String>,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Probe line bundles O(e*(x1-x2) + r*x1 + m*x3) with |m| <= probe_m.
pub fn probe_lines(ctx: &ModelContext, probe_m: i64) -> Vec<Bundle> {
    let mut out = Vec::new();
    for e in 0..2 {
        for r in 0..2 {
            for m in -probe_m..=probe_m {
                let t = ctx.element(e + r, -e, m, 0);
                out.push(Bundle::line(ctx, t));
            }
        }
    }
    out
}

/// Checks rank and degree additivity, Euler-pairing additivity against the
/// probe window (all-bundle sequences only), and, for distinguished
/// sequences, Hom-probe exactness.
pub fn verify_sequence(
    ctx: &ModelContext,
    seq: &ExactSequence,
    probe_m: i64,
) -> SequenceReport {
    let mut violations = Vec::new();
    let rank_additive = seq.middle_rank() == seq.left.rank() + seq.right.rank();
    if !rank_additive {
        violations.push(format!(
            "rank: {} != {} + {}",
            seq.middle_rank(),
            seq.left.rank(),
            seq.right.rank()
        ));
    }
    let degree_additive =
        seq.middle_degree(ctx) == seq.left.degree(ctx) + seq.right.degree(ctx);
    if !degree_additive {
        violations.push(format!(
            "degree: {} != {} + {}",
            seq.middle_degree(ctx),
            seq.left.degree(ctx),
            seq.right.degree(ctx)
        ));
    }
    let all_bundles: Option<(BundleSum, BundleSum, BundleSum)> = (|| {
        let left = seq.left.as_bundles()?.clone();
        let mut middle = BundleSum::new(vec![]);
        for t in &seq.middle {
            middle = middle.plus(t.as_bundles()?);
        }
        let right = seq.right.as_bundles()?.clone();
        Some((left, middle, right))
    })();
    let mut euler_additive = None;
    let mut hom_probe = None;
    if let Some((left, middle, right)) = all_bundles {
        let mut euler_ok = true;
        let mut hom_ok = true;
        for p in probe_lines(ctx, probe_m) {
            let ps = p.into_sum();
            let lhs = euler_form(&ps, &middle);
            let rhs = euler_form(&ps, &left) + euler_form(&ps, &right);
            if lhs != rhs {
                euler_ok = false;
                violations.push(format!("euler probe {p}: {lhs} != {rhs}"));
            }
            if seq.distinguished {
                let hm = hom_dim(&ps, &middle);
                let hs = hom_dim(&ps, &left) + hom_dim(&ps, &right);
                if hm != hs {
                    hom_ok = false;
                    violations.push(format!("hom probe {p}: {hm} != {hs}"));
                }
            }
        }
        euler_additive = Some(euler_ok);
        if seq.distinguished {
            hom_probe = Some(hom_ok);
        }
    }
    SequenceReport {
        rank_additive,
        degree_additive,
        euler_additive,
        hom_probe,
        violations,
    }
}

/// Searches representatives for a positive intersection of the two orbits,
/// mirroring the hypothesis of [`crossing_sequence`].
pub fn orbits_cross(quot: &Segment, sub: &Segment) -> bool {
    positive_intersections(quot, &OrbitClass::of(sub)) > 0
        || crossing_sequence(quot, sub).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homext::ext_dim;

    fn ctx(n: i64) -> ModelContext {
        ModelContext::new(n)
    }

    fn check(ctx: &ModelContext, seq: &ExactSequence) -> SequenceReport {
        let report = verify_sequence(ctx, seq, 2 * ctx.n());
        assert!(report.passed(), "{seq}: {:?}", report.violations);
        report
    }

    #[test]
    fn quadrilateral_examples() {
        let c = ctx(3);
        let q = quadrilateral_sequence(&c, 1, 1, 1, 1).unwrap();
        assert_eq!(q.seq.left.rank(), 2);
        assert_eq!(q.seq.right.rank(), 2);
        check(&c, &q.seq);
        assert!(!q.middle_coincide);
        // coincidence: i+j = 0 mod n with k1 = k2
        let q = quadrilateral_sequence(&c, 1, 2, 1, 1).unwrap();
        assert!(q.middle_coincide);
        assert_eq!(q.seq.middle[0], q.seq.middle[1]);
        check(&c, &q.seq);
        let q = quadrilateral_sequence(&c, 1, 1, 1, 2).unwrap();
        assert!(!q.middle_coincide);
        assert_ne!(q.seq.middle[0], q.seq.middle[1]);
    }

    #[test]
    fn quadrilateral_coincidence_matches_orbits() {
        for n in [2, 3, 4] {
            let c = ctx(n);
            for i in -n..=n {
                for j in -n..=n {
                    for k1 in 1..=2 * n {
                        for k2 in 1..=2 * n {
                            let q = quadrilateral_sequence(&c, i, j, k1, k2).unwrap();
                            assert_eq!(
                                q.middle_coincide,
                                q.seq.middle[0] == q.seq.middle[1],
                                "n={n} i={i} j={j} k1={k1} k2={k2}"
                            );
                            check(&c, &q.seq);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn crossing_example() {
        let c = ctx(3);
        let a = Segment::new(&c, 0, 1, Marker::Full).unwrap();
        let b = Segment::new(&c, 1, 0, Marker::Full).unwrap();
        let seq = crossing_sequence(&a, &b).unwrap();
        // sub is the orbit of [1,0]; quotient the orbit of [0,1]
        assert_eq!(
            seq.left.as_bundles().unwrap().summands()[0],
            Bundle::phi_hat(&OrbitClass::of(&b), &c)
        );
        assert_eq!(seq.middle_rank(), 4);
        check(&c, &seq);
        // disjoint parallels: every orbit member of [3,4] has recip 1
        let p = Segment::new(&c, 3, 4, Marker::Full).unwrap();
        assert_eq!(
            crossing_sequence(&a, &p).unwrap_err(),
            ModelError::NoPositiveIntersection
        );
    }

    #[test]
    fn crossing_with_halves() {
        let c = ctx(3);
        // upper-half quotient against a full sub
        let a = Segment::new(&c, 2, 1, Marker::Minus).unwrap();
        let b = Segment::new(&c, 4, 0, Marker::Full).unwrap();
        let seq = crossing_sequence(&a, &b).unwrap();
        assert_eq!(seq.middle_rank(), 3);
        check(&c, &seq);
        // full quotient against a lower-half sub
        let a = Segment::new(&c, 0, 2, Marker::Full).unwrap();
        let b = Segment::new(&c, 1, -1, Marker::Plus).unwrap();
        let seq = crossing_sequence(&a, &b).unwrap();
        assert_eq!(seq.middle_rank(), 3);
        check(&c, &seq);
    }

    #[test]
    fn triangle_examples() {
        let c = ctx(3);
        let seq = triangle_sequence(&c, 0, 1, 0).unwrap();
        // 0 -> phi([0,0]+) -> phi([0,1]) -> phi([-1,1]-) -> 0
        let green = seq.left.as_bundles().unwrap().summands()[0];
        assert_eq!(green.line_twist().unwrap(), c.element(1, -1, 0, 0));
        let blue = seq.right.as_bundles().unwrap().summands()[0];
        assert_eq!(blue.line_twist().unwrap(), c.x3());
        check(&c, &seq);
        // P_k on the other side mirrors the roles
        let seq = triangle_sequence(&c, 0, 1, 1).unwrap();
        assert_eq!(seq.left.rank(), 1);
        assert_eq!(seq.right.rank(), 1);
        check(&c, &seq);
        assert_eq!(
            triangle_sequence(&c, 0, 3, 1).unwrap_err(),
            ModelError::DegeneratePoint { k: 1 }
        );
        assert!(matches!(
            triangle_sequence(&c, 0, 6, 1).unwrap_err(),
            ModelError::InvalidSegment(_)
        ));
    }

    #[test]
    fn step_sequences() {
        for n in [2, 3, 5] {
            let c = ctx(n);
            for bm in -3..=3 {
                let base = c.element(0, 0, bm, 0);
                for xw in -1..=n {
                    let x = c.x3().scale(xw);
                    check(&c, &widen_sequence(&c, base, x).unwrap());
                    check(&c, &shift_sequence(&c, base, x).unwrap());
                    check(&c, &square_sequence(&c, base, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn widen_decomposable_branch() {
        let c = ctx(4);
        // width n-1 exercises the two-line-bundle case on the left
        let x = c.x3().scale(c.n() - 1);
        let seq = widen_sequence(&c, c.zero(), x).unwrap();
        assert_eq!(seq.left.as_bundles().unwrap().len(), 2);
        assert_eq!(seq.middle[0].as_bundles().unwrap().len(), 1);
        check(&c, &seq);
        assert_eq!(
            widen_sequence(&c, c.zero(), c.x1()).unwrap_err(),
            ModelError::NotAnX3Multiple
        );
    }

    #[test]
    fn corner_example() {
        let c = ctx(3);
        let seq = corner_sequence(&c, c.zero(), c.zero(), c.x3()).unwrap();
        check(&c, &seq);
        assert!(matches!(
            corner_sequence(&c, c.zero(), c.x3().neg(), c.x3()),
            Err(ModelError::DomainViolation(_))
        ));
        assert!(matches!(
            corner_sequence(&c, c.zero(), c.zero(), c.zero()),
            Err(ModelError::DomainViolation(_))
        ));
    }

    #[test]
    fn square_degree_balance() {
        let c = ctx(5);
        for xw in 0..c.n() {
            let x = c.x3().scale(xw);
            let lhs = gen_ext_bundle(&c, c.zero(), x).unwrap().degree()
                + gen_ext_bundle(&c, c.x3(), x).unwrap().degree();
            let rhs = gen_ext_bundle(&c, c.zero(), x.add(&c.x3())).unwrap().degree()
                + gen_ext_bundle(&c, c.x3(), x.sub(&c.x3())).unwrap().degree();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cover_example() {
        let c = ctx(3);
        let x = Bundle::phi_hat(
            &OrbitClass::of(&Segment::new(&c, 0, 1, Marker::Full).unwrap()),
            &c,
        );
        let cover = projective_cover(&x).unwrap();
        // two half pairs: four line bundles, rank 4 = rank kernel + rank X
        assert_eq!(cover.cover.len(), 4);
        assert!(cover.cover.summands().iter().all(Bundle::is_line));
        assert_eq!(cover.complement.rank(), 2);
        let report = check(&c, &cover.seq);
        assert_eq!(report.hom_probe, Some(true));
        assert_eq!(
            projective_cover(&Bundle::line(&c, c.zero())).unwrap_err(),
            ModelError::NotExtensionBundle
        );
    }

    #[test]
    fn cover_kernel_lifting() {
        let c = ctx(3);
        for (i, j) in [(0, 1), (1, 1), (-2, 3)] {
            let x = Bundle::phi_hat(
                &OrbitClass::of(&Segment::new(&c, i, j, Marker::Full).unwrap()),
                &c,
            );
            let cover = projective_cover(&x).unwrap();
            let xs = x.into_sum();
            let ks = cover.complement.into_sum();
            for p in probe_lines(&c, 3 * c.n()) {
                let ps = p.into_sum();
                if hom_dim(&ps, &xs) > 0 {
                    assert_eq!(ext_dim(&ps, &ks), 0, "probe {p} against {x}");
                }
            }
            // cover summands mutually Hom-orthogonal
            let s = cover.cover.summands();
            for (u, a) in s.iter().enumerate() {
                for b in &s[u + 1..] {
                    assert_eq!(hom_dim(&a.into_sum(), &b.into_sum()), 0);
                    assert_eq!(hom_dim(&b.into_sum(), &a.into_sum()), 0);
                }
            }
        }
    }

    #[test]
    fn hull_mirrors_cover() {
        let c = ctx(4);
        let x = Bundle::phi_hat(
            &OrbitClass::of(&Segment::new(&c, 1, 1, Marker::Full).unwrap()),
            &c,
        );
        let hull = injective_hull(&x).unwrap();
        assert_eq!(hull.cover.len(), 4);
        check(&c, &hull.seq);
        // the hull of the cover kernel is the cover itself
        let cover = projective_cover(&x).unwrap();
        let again = injective_hull(&cover.complement).unwrap();
        assert_eq!(again.cover, cover.cover);
    }

    #[test]
    fn corrupted_sequence_fails() {
        let c = ctx(3);
        let good = triangle_sequence(&c, 0, 1, 0).unwrap();
        let mut bad = good.clone();
        let shifted = match &bad.right {
            SeqTerm::Vb(s) => SeqTerm::Vb(s.act(&c.x3())),
            t => t.clone(),
        };
        bad.right = shifted;
        let report = verify_sequence(&c, &bad, c.n());
        assert!(!report.passed());
    }
}
