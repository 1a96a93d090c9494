//! The infinite marked strip and its segment combinatorics.
//!
//! The strip is {(x,y) : 0 <= y <= 1} with marked points (i,0) and (j,1) for
//! all integers i, j, and midline points P_k = (kn/2, 1/2). A segment [i,j]
//! joins (i,0) to (j,1); segments with i+j = 0 (mod n) pass through some P_k
//! and are split into a lower half "[i,j]+" (from (i,0) to P_k) and an upper
//! half "[i,j]-" (from P_k to (j,1)).
//!
//! The group G acting on segments is generated by the n-step translation
//! sigma: [i,j] -> [i+n,j+n] and the point reflection theta: [i,j] -> [-j,-i];
//! markers are carried along unchanged. Each G-orbit contains exactly one
//! segment with 0 <= i+j <= n, the canonical representative: for a sum
//! strictly between 0 and n no other orbit element lands in the range, and
//! for sums 0 and n the reflected candidate coincides with the segment
//! itself.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::picard::{BarElement, ModelContext};
use crate::{ModelError, Result};

/// Marker distinguishing the two halves of a segment through a midline
/// point; `Full` for segments through no midline point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Marker {
    Full,
    Plus,
    Minus,
}

impl Marker {
    /// The involution swapping the two halves and fixing `Full`.
    pub fn flipped(self) -> Marker {
        match self {
            Marker::Full => Marker::Full,
            Marker::Plus => Marker::Minus,
            Marker::Minus => Marker::Plus,
        }
    }
}

/// A (possibly half) segment on the strip, with its weight n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    i: i64,
    j: i64,
    marker: Marker,
    n: i64,
}

/// One generator of the group G acting on the strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GGen {
    Sigma,
    SigmaInv,
    Theta,
}

impl Segment {
    /// Validated segment; the marker must match whether i+j = 0 (mod n).
    pub fn new(ctx: &ModelContext, i: i64, j: i64, marker: Marker) -> Result<Self> {
        let n = ctx.n();
        let through_midline = (i + j).rem_euclid(n) == 0;
        let ok = match marker {
            Marker::Full => !through_midline,
            Marker::Plus | Marker::Minus => through_midline,
        };
        if !ok {
            return Err(ModelError::MarkerMismatch {
                i,
                j,
                n,
                through_midline,
            });
        }
        Ok(Segment { i, j, marker, n })
    }

    /// Segment with the marker inferred: `Full` off the midline points, else
    /// the given half.
    pub fn with_inferred_marker(ctx: &ModelContext, i: i64, j: i64, half: Marker) -> Self {
        let n = ctx.n();
        if (i + j).rem_euclid(n) == 0 {
            Segment { i, j, marker: half, n }
        } else {
            Segment { i, j, marker: Marker::Full, n }
        }
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn marker(&self) -> Marker {
        self.marker
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// i + j, the quantity reduced by the G-action.
    pub fn endpoint_sum(&self) -> i64 {
        self.i + self.j
    }

    /// j - i: the reciprocal of the slope of the underlying full segment.
    /// Invariant under the G-action.
    pub fn recip_slope(&self) -> i64 {
        self.j - self.i
    }

    pub fn is_half(&self) -> bool {
        self.marker != Marker::Full
    }

    /// Applies one generator; the marker is carried unchanged (the action on
    /// refined segments is defined by decree, not pointwise).
    pub fn apply_gen(&self, g: GGen) -> Segment {
        let (i, j) = match g {
            GGen::Sigma => (self.i + self.n, self.j + self.n),
            GGen::SigmaInv => (self.i - self.n, self.j - self.n),
            GGen::Theta => (-self.j, -self.i),
        };
        Segment { i, j, ..*self }
    }

    /// Applies a word in the generators, left factor last.
    pub fn apply_word(&self, word: &[GGen]) -> Segment {
        word.iter().rev().fold(*self, |s, &g| s.apply_gen(g))
    }

    /// The unique orbit element with 0 <= i+j <= n; idempotent.
    pub fn canonical_rep(&self) -> Segment {
        let n = self.n;
        let s = self.i + self.j;
        let r = s.rem_euclid(2 * n);
        if r <= n {
            // sigma^m with target sum r
            let m = (r - s) / (2 * n);
            Segment {
                i: self.i + m * n,
                j: self.j + m * n,
                ..*self
            }
        } else {
            // theta then sigma^m with target sum 2n - r
            let target = 2 * n - r;
            let m = (target + s) / (2 * n);
            Segment {
                i: -self.j + m * n,
                j: -self.i + m * n,
                ..*self
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_rep()
    }

    /// Whether two segments lie in the same G-orbit (markers included).
    pub fn orbit_equal(&self, other: &Segment) -> bool {
        self.n == other.n && self.canonical_rep() == other.canonical_rep()
    }

    /// Parses "[i,j]", "[i,j]+" or "[i,j]-".
    pub fn parse(ctx: &ModelContext, s: &str) -> Result<Segment> {
        let t = s.trim();
        let body = t.strip_prefix('[').ok_or(ModelError::Parse {
            pos: 0,
            msg: "expected '['".into(),
        })?;
        let close = body.find(']').ok_or(ModelError::Parse {
            pos: t.len(),
            msg: "expected ']'".into(),
        })?;
        let inner = &body[..close];
        let comma = inner.find(',').ok_or(ModelError::Parse {
            pos: 1,
            msg: "expected ','".into(),
        })?;
        let i: i64 = inner[..comma].trim().parse().map_err(|_| ModelError::Parse {
            pos: 1,
            msg: format!("invalid integer {:?}", &inner[..comma]),
        })?;
        let j: i64 = inner[comma + 1..].trim().parse().map_err(|_| ModelError::Parse {
            pos: 2 + comma,
            msg: format!("invalid integer {:?}", &inner[comma + 1..]),
        })?;
        let rest = &body[close + 1..];
        let marker = match rest {
            "" => Marker::Full,
            "+" => Marker::Plus,
            "-" => Marker::Minus,
            _ => {
                return Err(ModelError::Parse {
                    pos: 2 + close,
                    msg: format!("unexpected trailing {rest:?}"),
                })
            }
        };
        Segment::new(ctx, i, j, marker)
    }

    pub(crate) fn to_json(self) -> SegmentJson {
        SegmentJson {
            i: self.i,
            j: self.j,
            marker: self.marker,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.marker {
            Marker::Full => "",
            Marker::Plus => "+",
            Marker::Minus => "-",
        };
        write!(f, "[{},{}]{}", self.i, self.j, suffix)
    }
}

impl Serialize for Segment {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(ser)
    }
}

/// Wire form of a segment: {"i": i, "j": j, "marker": "full"|"plus"|"minus"}.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub(crate) struct SegmentJson {
    pub i: i64,
    pub j: i64,
    pub marker: Marker,
}

/// A G-orbit of refined segments, held by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrbitClass {
    rep: Segment,
}

impl OrbitClass {
    pub fn of(segment: &Segment) -> OrbitClass {
        OrbitClass {
            rep: segment.canonical_rep(),
        }
    }

    pub fn rep(&self) -> Segment {
        self.rep
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// An element alpha^k beta^t of the mapping class group of the orbit strip,
/// in the canonical form with k in {0,1} given by alpha^2 = beta^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MCGElement {
    k: i64,
    t: i64,
    n: i64,
}

impl MCGElement {
    pub fn new(ctx: &ModelContext, k: i64, t: i64) -> Self {
        MCGElement {
            k: k.rem_euclid(2),
            t: t + k.div_euclid(2) * ctx.n(),
            n: ctx.n(),
        }
    }

    pub fn identity(ctx: &ModelContext) -> Self {
        Self::new(ctx, 0, 0)
    }

    pub fn alpha(ctx: &ModelContext) -> Self {
        Self::new(ctx, 1, 0)
    }

    pub fn beta(ctx: &ModelContext) -> Self {
        Self::new(ctx, 0, 1)
    }

    pub fn alpha_exp(&self) -> i64 {
        self.k
    }

    pub fn beta_exp(&self) -> i64 {
        self.t
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "MCG elements from different contexts");
        let k = self.k + other.k;
        MCGElement {
            k: k.rem_euclid(2),
            t: self.t + other.t + k.div_euclid(2) * self.n,
            n: self.n,
        }
    }

    pub fn inverse(&self) -> Self {
        // alpha^{-1} = alpha * beta^{-n}
        if self.k == 0 {
            MCGElement { t: -self.t, ..*self }
        } else {
            MCGElement {
                k: 1,
                t: -self.t - self.n,
                n: self.n,
            }
        }
    }

    /// The action on orbits: alpha^k beta^t sends [i,j] to [i-t, j+t+kn].
    /// Each alpha application toggles half markers; beta preserves them.
    pub fn act(&self, orbit: &OrbitClass) -> OrbitClass {
        let rep = orbit.rep();
        assert_eq!(self.n, rep.n(), "MCG element from a different context");
        let marker = if self.k % 2 == 0 {
            rep.marker()
        } else {
            rep.marker().flipped()
        };
        let moved = Segment {
            i: rep.i() - self.t,
            j: rep.j() + self.t + self.k * self.n,
            marker,
            n: self.n,
        };
        OrbitClass::of(&moved)
    }

    /// The isomorphism onto L/Z(x1-x2): alpha -> x1, beta -> x3.
    pub fn to_picard_bar(&self, ctx: &ModelContext) -> BarElement {
        assert_eq!(self.n, ctx.n(), "MCG element from a different context");
        BarElement::new(ctx, self.k, self.t)
    }
}

impl fmt::Display for MCGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha^{} beta^{}", self.k, self.t)
    }
}
