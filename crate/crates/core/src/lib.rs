//! Exact combinatorial model of the category of vector bundles on the
//! weighted projective line of weight type (2,2,n).
//!
//! Everything is integer or rational arithmetic, no floating point:
//!
//! - [`picard`]: the Picard group L(2,2,n) in normal form, with the
//!   dimension function for graded pieces of the coordinate algebra and the
//!   degree homomorphism.
//! - [`strip`]: line segments on an infinite marked strip, the group
//!   generated by the n-step translation and the point reflection, canonical
//!   orbit representatives, and the mapping class group action.
//! - [`bundles`]: indecomposable bundles (line bundles and extension
//!   bundles), the bijection with strip orbits, numerical invariants, the
//!   Picard action, Auslander-Reiten translation and duality.
//! - [`homext`]: dimensions of Hom and Ext spaces, computed two independent
//!   ways: geometrically as intersection indices of segments, and
//!   algebraically through Serre duality and the Euler form.
//! - [`sequences`]: symbolic short exact sequences (quadrilateral, crossing,
//!   triangle, and the step/square family) with machine-checked additivity,
//!   plus projective covers and injective hulls in the Frobenius structure.
//! - [`quiver`]: the folded valued translation quiver of shape ZA_{n+1} and
//!   its automorphisms.
//! - [`suites`]: batch verification sweeps used by the CLI and the
//!   acceptance tests.

pub mod bundles;
pub mod homext;
pub mod picard;
pub mod quiver;
pub mod sequences;
pub mod strip;
pub mod suites;

pub use bundles::{Bundle, BundleSum, KClass};
pub use picard::{BarElement, ModelContext, PicardElement};
pub use sequences::{ExactSequence, SeqTerm};
pub use strip::{Marker, MCGElement, OrbitClass, Segment};

/// Errors raised by model operations on invalid inputs.
///
/// Pure arithmetic never fails; errors come from constructors and from
/// operations whose preconditions depend on the input data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    /// A half marker was requested for a segment not through a midline
    /// point, or a full marker for one that is.
    #[error("marker mismatch: segment [{i},{j}] has i+j {} 0 (mod {n})", if *.through_midline { "=" } else { "!=" })]
    MarkerMismatch {
        i: i64,
        j: i64,
        n: i64,
        through_midline: bool,
    },
    /// The twist is not of the form l3*x3 + l*c in normal form.
    #[error("twist has x1/x2 components: expected a multiple of x3 modulo c")]
    NotAnX3Multiple,
    /// An operation defined only for extension bundles was given a line
    /// bundle.
    #[error("not an extension bundle")]
    NotExtensionBundle,
    /// Requested extension width lies outside 0..=n-2.
    #[error("extension width {width} out of range 0..={max}")]
    InvalidWidth { width: i64, max: i64 },
    /// No representative of the orbit crosses the given segment positively.
    #[error("no positive intersection between the segments' orbits")]
    NoPositiveIntersection,
    /// The chosen midline point lies on the segment itself.
    #[error("midline point P_{k} lies on the segment")]
    DegeneratePoint { k: i64 },
    /// A segment violated a constructor precondition.
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
    /// Numeric argument outside the operation's domain.
    #[error("domain violation: {0}")]
    DomainViolation(String),
    /// A literal could not be parsed; `pos` is the byte offset of the error.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, ModelError>;
