//! Exact arithmetic in the Picard group L(2,2,n).
//!
//! L is the rank-one abelian group on generators x1, x2, x3 subject to
//! 2*x1 = 2*x2 = n*x3 = c. Every element has a unique normal form
//! l1*x1 + l2*x2 + l3*x3 + l*c with 0 <= l1,l2 < 2 and 0 <= l3 < n, which is
//! what [`PicardElement`] stores. Equality of normal forms is group equality.
//!
//! All coefficient arithmetic is checked (overflow checks stay on in release
//! builds, see the workspace profile): wraparound is a panic, never a wrong
//! answer.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::{ModelError, Result};

/// The fixed model data: the weight n >= 2 and the base line bundle twist.
///
/// All elements, segments and bundles are built through a context, and
/// operations on values from different contexts panic. The base twist is the
/// twist `a` of the distinguished line bundle O(a); the default is a = x3,
/// for which the segment-level duality formula holds (see
/// [`ModelContext::duality_compatible`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelContext {
    n: i64,
    base: PicardElement,
}

impl ModelContext {
    /// Context with the default base twist a = x3.
    ///
    /// Panics if n < 2.
    pub fn new(n: i64) -> Self {
        assert!(n >= 2, "weight n must be at least 2, got {n}");
        let base = PicardElement::normalize(0, 0, 1, 0, n);
        ModelContext { n, base }
    }

    /// Context with an explicit base twist.
    pub fn with_base(n: i64, base: PicardElement) -> Self {
        assert!(n >= 2, "weight n must be at least 2, got {n}");
        assert_eq!(base.n, n, "base twist belongs to a different weight");
        ModelContext { n, base }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// The twist of the base line bundle O(a).
    pub fn base_twist(&self) -> PicardElement {
        self.base
    }

    /// Normal form of a1*x1 + a2*x2 + a3*x3 + a*c.
    pub fn element(&self, a1: i64, a2: i64, a3: i64, a: i64) -> PicardElement {
        PicardElement::normalize(a1, a2, a3, a, self.n)
    }

    pub fn zero(&self) -> PicardElement {
        self.element(0, 0, 0, 0)
    }

    pub fn x1(&self) -> PicardElement {
        self.element(1, 0, 0, 0)
    }

    pub fn x2(&self) -> PicardElement {
        self.element(0, 1, 0, 0)
    }

    pub fn x3(&self) -> PicardElement {
        self.element(0, 0, 1, 0)
    }

    /// The canonical element c = 2*x1 = 2*x2 = n*x3.
    pub fn canonical(&self) -> PicardElement {
        self.element(0, 0, 0, 1)
    }

    /// The dualizing element w = c - x1 - x2 - x3; the AR translation is the
    /// shift by w.
    pub fn omega(&self) -> PicardElement {
        self.element(-1, -1, -1, 1)
    }

    /// The dominant element 2w + c = (n-2)*x3.
    pub fn dominant(&self) -> PicardElement {
        self.element(0, 0, self.n - 2, 0)
    }

    /// lcm(2, n), the degree of c.
    pub fn p_bar(&self) -> i64 {
        if self.n % 2 == 0 {
            self.n
        } else {
            2 * self.n
        }
    }

    /// Whether the base twist satisfies 2a = 2*x3 modulo {0, x1-x2}.
    ///
    /// Exactly under this condition the duality of bundles descends to the
    /// endpoint swap on segments. Holds for a = x3 (default) and a = -w.
    pub fn duality_compatible(&self) -> bool {
        let two_a = self.base.scale(2);
        let two_x3 = self.element(0, 0, 2, 0);
        let d = two_a.sub(&two_x3);
        d == self.zero() || d == self.element(1, -1, 0, 0)
    }

    /// Parses the text form "l1,l2,l3,l".
    pub fn parse_element(&self, s: &str) -> Result<PicardElement> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(ModelError::Parse {
                pos: s.len(),
                msg: format!("expected 4 comma-separated integers, got {}", parts.len()),
            });
        }
        let mut vals = [0i64; 4];
        let mut pos = 0usize;
        for (k, part) in parts.iter().enumerate() {
            vals[k] = part.trim().parse().map_err(|_| ModelError::Parse {
                pos,
                msg: format!("invalid integer {part:?}"),
            })?;
            pos += part.len() + 1;
        }
        Ok(self.element(vals[0], vals[1], vals[2], vals[3]))
    }
}

/// An element of L(2,2,n) in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicardElement {
    x1: i64,
    x2: i64,
    x3: i64,
    c: i64,
    n: i64,
}

impl PicardElement {
    fn normalize(a1: i64, a2: i64, a3: i64, a: i64, n: i64) -> Self {
        let l1 = a1.rem_euclid(2);
        let l2 = a2.rem_euclid(2);
        let l3 = a3.rem_euclid(n);
        let carry = a1.div_euclid(2) + a2.div_euclid(2) + a3.div_euclid(n);
        PicardElement {
            x1: l1,
            x2: l2,
            x3: l3,
            c: a + carry,
            n,
        }
    }

    /// Coefficient of x1 in normal form (0 or 1).
    pub fn coeff_x1(&self) -> i64 {
        self.x1
    }

    /// Coefficient of x2 in normal form (0 or 1).
    pub fn coeff_x2(&self) -> i64 {
        self.x2
    }

    /// Coefficient of x3 in normal form (in 0..n).
    pub fn coeff_x3(&self) -> i64 {
        self.x3
    }

    /// Coefficient of c in normal form.
    pub fn coeff_c(&self) -> i64 {
        self.c
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "Picard elements from different contexts (n={} vs n={})",
            self.n, other.n
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        Self::normalize(
            self.x1 + other.x1,
            self.x2 + other.x2,
            self.x3 + other.x3,
            self.c + other.c,
            self.n,
        )
    }

    pub fn neg(&self) -> Self {
        Self::normalize(-self.x1, -self.x2, -self.x3, -self.c, self.n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::normalize(self.x1 * k, self.x2 * k, self.x3 * k, self.c * k, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.x1 == 0 && self.x2 == 0 && self.x3 == 0 && self.c == 0
    }

    /// Whether the element lies in the positive cone, i.e. is a nonnegative
    /// combination of x1, x2, x3. Equivalent to l >= 0 in normal form.
    pub fn is_effective(&self) -> bool {
        self.c >= 0
    }

    /// Dimension of the degree-x piece of the coordinate algebra
    /// k[x1,x2,x3]/(x1^2 + x2^2 + x3^n), which also computes
    /// dim Hom(O(y), O(y+x)) for every y.
    ///
    /// The monomials x1^(l1+2a) x2^(l2+2b) x3^(l3) with a+b = l form a basis
    /// of the piece, so the dimension is l+1 when l >= 0 and 0 otherwise.
    pub fn dim_r(&self) -> u64 {
        if self.c >= 0 {
            (self.c + 1) as u64
        } else {
            0
        }
    }

    /// The degree homomorphism, determined by
    /// deg x1 = deg x2 = lcm(2,n)/2 and deg x3 = lcm(2,n)/n.
    pub fn degree(&self) -> i64 {
        let p = if self.n % 2 == 0 { self.n } else { 2 * self.n };
        (self.x1 + self.x2) * (p / 2) + self.x3 * (p / self.n) + self.c * p
    }

    /// The unique coordinates (e1, e2, m) with
    /// x = e1*(x1-x2) + e2*x2 + m*x3 and e1, e2 in {0,1}.
    pub fn alt_coords(&self) -> (i64, i64, i64) {
        // x = l1*(x1-x2) + (l1+l2)*x2 + (l3 + l*n)*x3, then fold 2*x2 = n*x3.
        let e1 = self.x1;
        let s = self.x1 + self.x2;
        let e2 = s.rem_euclid(2);
        let m = self.x3 + self.n * (self.c + s.div_euclid(2));
        (e1, e2, m)
    }

    /// Inverse of [`alt_coords`](Self::alt_coords).
    pub fn from_alt_coords(ctx: &ModelContext, e1: i64, e2: i64, m: i64) -> Self {
        ctx.element(e1, e2 - e1, m, 0)
    }

    /// The class in the quotient of L by the subgroup generated by x1-x2.
    /// The kernel of this projection is exactly {0, x1-x2}.
    pub fn bar(&self) -> BarElement {
        let (_, e2, m) = self.alt_coords();
        BarElement {
            r: e2,
            m,
            n: self.n,
        }
    }

    pub(crate) fn to_json(self) -> PicardJson {
        PicardJson {
            x1: self.x1,
            x2: self.x2,
            x3: self.x3,
            c: self.c,
        }
    }
}

impl fmt::Display for PicardElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x1, self.x2, self.x3, self.c)
    }
}

impl Serialize for PicardElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(ser)
    }
}

/// Wire form of a Picard element: {"x1": l1, "x2": l2, "x3": l3, "c": l}.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub(crate) struct PicardJson {
    pub x1: i64,
    pub x2: i64,
    pub x3: i64,
    pub c: i64,
}

/// An element r*x1 + m*x3 of the quotient L/Z(x1-x2), with r in {0,1}.
///
/// The quotient is where the Picard group acts faithfully on the stable
/// objects of the folded model; the mapping class group is isomorphic to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BarElement {
    r: i64,
    m: i64,
    n: i64,
}

impl BarElement {
    pub fn new(ctx: &ModelContext, r: i64, m: i64) -> Self {
        // Reduce 2*x1 = n*x3 in the quotient.
        BarElement {
            r: r.rem_euclid(2),
            m: m + r.div_euclid(2) * ctx.n(),
            n: ctx.n(),
        }
    }

    pub fn coeff_x1(&self) -> i64 {
        self.r
    }

    pub fn coeff_x3(&self) -> i64 {
        self.m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "bar elements from different contexts");
        let r = self.r + other.r;
        BarElement {
            r: r.rem_euclid(2),
            m: self.m + other.m + r.div_euclid(2) * self.n,
            n: self.n,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0 && self.m == 0
    }

    /// The canonical lift r*x1 + m*x3 back to L.
    pub fn lift(&self, ctx: &ModelContext) -> PicardElement {
        assert_eq!(self.n, ctx.n(), "bar element from a different context");
        ctx.element(self.r, 0, self.m, 0)
    }
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x1+{}*x3 mod (x1-x2)", self.r, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: i64) -> ModelContext {
        ModelContext::new(n)
    }

    /// Brute-force dimension of the degree-x piece: count monomials
    /// x1^a x2^b x3^e with e < n that equal x in L, using the substitution
    /// x3^n = -(x1^2 + x2^2) implicitly through the normal form.
    fn dim_r_oracle(x: &PicardElement, ctx: &ModelContext) -> u64 {
        let bound = 2 * x.coeff_c().max(0) + 2;
        let mut count = 0;
        for a in 0..=bound {
            for b in 0..=bound {
                for e in 0..ctx.n() {
                    if ctx.element(a, b, e, 0) == *x {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn normal_form_examples() {
        let c3 = ctx(3);
        assert_eq!(c3.element(2, 0, 0, 0), c3.canonical());
        let c4 = ctx(4);
        assert_eq!(c4.element(0, 0, 7, 0), c4.element(0, 0, 3, 1));
        // omega = c - x1 - x2 - x3 has normal form (1,1,n-1,-2).
        for n in 2..=8 {
            let cn = ctx(n);
            let w = cn.omega();
            assert_eq!(
                (w.coeff_x1(), w.coeff_x2(), w.coeff_x3(), w.coeff_c()),
                (1, 1, n - 1, -2)
            );
            let sum = w
                .add(&cn.x1())
                .add(&cn.x2())
                .add(&cn.x3());
            assert_eq!(sum, cn.canonical());
        }
    }

    #[test]
    fn group_op_examples() {
        let c = ctx(5);
        assert_eq!(c.x1().add(&c.x1()), c.canonical());
        let neg_x3 = c.x3().neg();
        assert_eq!(
            (neg_x3.coeff_x3(), neg_x3.coeff_c()),
            (c.n() - 1, -1)
        );
        let delta = c.omega().add(&c.omega()).add(&c.canonical());
        assert_eq!(delta, c.dominant());
    }

    #[test]
    fn special_elements() {
        let c = ctx(4);
        assert_eq!(c.omega(), c.element(1, 1, 3, -2));
        assert_eq!(c.dominant(), c.element(0, 0, 2, 0));
        assert_eq!(c.canonical().coeff_c(), 1);
    }

    #[test]
    fn effectivity() {
        let c = ctx(3);
        assert!(c.x3().is_effective());
        assert!(c.canonical().is_effective());
        assert!(!c.omega().is_effective());
        // Exhaustive search finds no nonnegative expression for omega.
        let w = c.omega();
        for a1 in 0..10 {
            for a2 in 0..10 {
                for a3 in 0..10 {
                    assert_ne!(c.element(a1, a2, a3, 0), w);
                }
            }
        }
    }

    #[test]
    fn dim_r_examples() {
        let c = ctx(3);
        assert_eq!(c.zero().dim_r(), 1);
        assert_eq!(c.canonical().dim_r(), 2);
        assert_eq!(c.omega().dim_r(), 0);
        assert_eq!(dim_r_oracle(&c.canonical(), &c), 2);
        assert_eq!(dim_r_oracle(&c.omega(), &c), 0);
    }

    #[test]
    fn dim_r_matches_oracle_on_windows() {
        for n in 2..=6 {
            let c = ctx(n);
            for l1 in 0..2 {
                for l2 in 0..2 {
                    for l3 in 0..n {
                        for l in -3..=4 {
                            let x = c.element(l1, l2, l3, l);
                            assert_eq!(x.dim_r(), dim_r_oracle(&x, &c), "x={x} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(ctx(4).x3().degree(), 1);
        assert_eq!(ctx(3).x1().degree(), 3);
        for n in 2..=8 {
            let c = ctx(n);
            let p = c.p_bar();
            assert_eq!(c.omega().degree(), -p / n);
            assert_eq!(c.canonical().degree(), p);
        }
    }

    #[test]
    fn alt_coords_examples() {
        let c = ctx(5);
        assert_eq!(c.omega().alt_coords(), (1, 0, -1));
        assert_eq!(c.x1().alt_coords(), (1, 1, 0));
        assert_eq!(c.canonical().alt_coords(), (0, 0, c.n()));
        // omega = (x1-x2) - x3
        assert_eq!(c.element(1, -1, -1, 0), c.omega());
    }

    #[test]
    fn bar_projection() {
        let c = ctx(4);
        let f = c.element(1, -1, 0, 0);
        assert!(f.bar().is_identity());
        assert_eq!(c.x2().bar(), c.x1().bar());
        assert_eq!(c.omega().bar(), c.x3().neg().bar());
        // Kernel is exactly {0, x1-x2}.
        for l1 in 0..2 {
            for l2 in 0..2 {
                for l3 in 0..c.n() {
                    for l in -2..=2 {
                        let x = c.element(l1, l2, l3, l);
                        let in_kernel = x.is_zero() || x == f;
                        assert_eq!(x.bar().is_identity(), in_kernel, "x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn bar_separates_cosets() {
        let c = ctx(5);
        let f = c.element(1, -1, 0, 0);
        let mut elems = Vec::new();
        for l1 in 0..2 {
            for l2 in 0..2 {
                for l3 in 0..c.n() {
                    for l in -2..=2 {
                        elems.push(c.element(l1, l2, l3, l));
                    }
                }
            }
        }
        for x in &elems {
            for y in &elems {
                let same_bar = x.bar() == y.bar();
                let d = x.sub(y);
                assert_eq!(same_bar, d.is_zero() || d == f);
            }
        }
    }

    fn arb_elem(n: i64) -> impl Strategy<Value = PicardElement> {
        (-20i64..20, -20i64..20, -40i64..40, -10i64..10)
            .prop_map(move |(a1, a2, a3, a)| ModelContext::new(n).element(a1, a2, a3, a))
    }

    proptest! {
        #[test]
        fn add_commutes(x in arb_elem(5), y in arb_elem(5)) {
            prop_assert_eq!(x.add(&y), y.add(&x));
        }

        #[test]
        fn add_associates(x in arb_elem(4), y in arb_elem(4), z in arb_elem(4)) {
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        }

        #[test]
        fn neg_is_inverse(x in arb_elem(6)) {
            prop_assert!(x.add(&x.neg()).is_zero());
            prop_assert_eq!(x.neg().neg(), x);
        }

        #[test]
        fn degree_additive(x in arb_elem(3), y in arb_elem(3)) {
            prop_assert_eq!(x.add(&y).degree(), x.degree() + y.degree());
        }

        #[test]
        fn effective_iff_dim_positive(x in arb_elem(7)) {
            prop_assert_eq!(x.is_effective(), x.dim_r() > 0);
        }

        #[test]
        fn alt_coords_round_trip(x in arb_elem(5)) {
            let ctx = ModelContext::new(5);
            let (e1, e2, m) = x.alt_coords();
            prop_assert!(e1 == 0 || e1 == 1);
            prop_assert!(e2 == 0 || e2 == 1);
            prop_assert_eq!(PicardElement::from_alt_coords(&ctx, e1, e2, m), x);
        }
    }
}
