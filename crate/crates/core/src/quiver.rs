//! The folded valued translation quiver of shape ZA_{n+1}.
//!
//! Vertices are pairs (s, row) with row in 0..=n; the vertex (s, row) names
//! the orbit of the chord [-s, s+row], so rows are exactly the canonical
//! endpoint sums. Boundary rows 0 and n carry valuation 2 (their objects
//! split into two line bundles), interior rows valuation 1. Arrows run
//! (s, row) -> (s, row+1) and (s, row) -> (s+1, row-1); the arrow value is
//! the pair (valuation of target, valuation of source).
//!
//! The automorphisms are generated by the translation (s, row) -> (s+1, row)
//! and the flip (s, row) -> (s+row, n-row), subject to flip^2 = translation^n
//! with the two commuting. On bundles the translation is the degree shift by
//! x3 and the flip the shift by x1.

use serde::Serialize;

use crate::bundles::{phi_unrefined, BundleSum};
use crate::picard::ModelContext;

/// A vertex (s, row) of the quiver, row in 0..=n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuiverVertex {
    pub s: i64,
    pub row: i64,
}

impl QuiverVertex {
    /// Valuation: 2 on the boundary rows, 1 inside.
    pub fn valuation(&self, ctx: &ModelContext) -> u8 {
        if self.row == 0 || self.row == ctx.n() {
            2
        } else {
            1
        }
    }

    /// The bundle sum of the orbit [-s, s+row]: a single extension bundle on
    /// interior rows, a pair of line bundles on the boundary rows.
    pub fn bundle(&self, ctx: &ModelContext) -> BundleSum {
        phi_unrefined(ctx, -self.s, self.s + self.row)
    }
}

/// An arrow with its valuation pair (target valuation, source valuation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuiverArrow {
    pub from: QuiverVertex,
    pub to: QuiverVertex,
    pub value: (u8, u8),
}

/// A finite window of the quiver: all vertices with s in s_min..=s_max and
/// the arrows between them.
#[derive(Debug, Clone, Serialize)]
pub struct QuiverWindow {
    pub n: i64,
    pub s_min: i64,
    pub s_max: i64,
    pub vertices: Vec<QuiverVertex>,
    pub arrows: Vec<QuiverArrow>,
}

/// Builds the window for s in s_min..=s_max.
pub fn window(ctx: &ModelContext, s_min: i64, s_max: i64) -> QuiverWindow {
    assert!(s_min <= s_max, "empty window {s_min}..={s_max}");
    let n = ctx.n();
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let value = |from: QuiverVertex, to: QuiverVertex| QuiverArrow {
        from,
        to,
        value: (to.valuation(ctx), from.valuation(ctx)),
    };
    for s in s_min..=s_max {
        for row in 0..=n {
            let v = QuiverVertex { s, row };
            vertices.push(v);
            if row < n {
                arrows.push(value(v, QuiverVertex { s, row: row + 1 }));
            }
            if row > 0 && s < s_max {
                arrows.push(value(v, QuiverVertex { s: s + 1, row: row - 1 }));
            }
        }
    }
    QuiverWindow {
        n,
        s_min,
        s_max,
        vertices,
        arrows,
    }
}

impl QuiverWindow {
    /// Out-neighbours of a vertex inside the window.
    pub fn successors(&self, v: &QuiverVertex) -> Vec<QuiverVertex> {
        self.arrows
            .iter()
            .filter(|a| a.from == *v)
            .map(|a| a.to)
            .collect()
    }

    /// Whether a directed path (possibly empty) runs from `from` to `to`
    /// inside the window.
    pub fn has_path(&self, from: &QuiverVertex, to: &QuiverVertex) -> bool {
        if from == to {
            return true;
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![*from];
        while let Some(v) = stack.pop() {
            for w in self.successors(&v) {
                if w == *to {
                    return true;
                }
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        false
    }
}

/// Applies translation^a flip^b to a vertex, normalizing by
/// flip^2 = translation^n.
pub fn apply_auto(ctx: &ModelContext, a: i64, b: i64, v: &QuiverVertex) -> QuiverVertex {
    let n = ctx.n();
    let a = a + b.div_euclid(2) * n;
    let b = b.rem_euclid(2);
    let mut s = v.s;
    let mut row = v.row;
    if b == 1 {
        s += row;
        row = n - row;
    }
    QuiverVertex { s: s + a, row }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homext::hom_dim;

    fn ctx(n: i64) -> ModelContext {
        ModelContext::new(n)
    }

    #[test]
    fn window_shape() {
        let c = ctx(4);
        let w = window(&c, -2, 2, );
        assert_eq!(w.vertices.len() as i64, 5 * (c.n() + 1));
        for v in &w.vertices {
            let outs = w.successors(v);
            let expected = match (v.row, v.s) {
                (0, _) => 1,
                (r, s) if r == c.n() && s == 2 => 0,
                (r, _) if r == c.n() => 1,
                (_, 2) => 1,
                _ => 2,
            };
            assert_eq!(outs.len(), expected, "vertex {v:?}");
        }
        // interior vertices away from the right edge have 2 in and 2 out
        let v = QuiverVertex { s: 0, row: 2 };
        assert_eq!(w.successors(&v).len(), 2);
        let ins = w.arrows.iter().filter(|a| a.to == v).count();
        assert_eq!(ins, 2);
    }

    #[test]
    fn valuation_pattern() {
        let c = ctx(4);
        let w = window(&c, 0, 3);
        for a in &w.arrows {
            let expect = (a.to.valuation(&c), a.from.valuation(&c));
            assert_eq!(a.value, expect);
            let legal = [(1, 1), (2, 1), (1, 2)];
            assert!(legal.contains(&a.value), "arrow {a:?}");
        }
        // boundary rows are the valuation-2 ones
        for v in &w.vertices {
            assert_eq!(v.valuation(&c) == 2, v.row == 0 || v.row == c.n());
            assert_eq!(
                v.bundle(&c).summands().len(),
                v.valuation(&c) as usize,
                "valuation equals the number of summands"
            );
        }
    }

    #[test]
    fn automorphism_relations() {
        for n in [2, 3, 4, 5] {
            let c = ctx(n);
            for s in -4..=4 {
                for row in 0..=n {
                    let v = QuiverVertex { s, row };
                    // flip^2 = translation^n
                    assert_eq!(apply_auto(&c, 0, 2, &v), apply_auto(&c, n, 0, &v));
                    // generators commute
                    let fr = apply_auto(&c, 1, 0, &apply_auto(&c, 0, 1, &v));
                    let rf = apply_auto(&c, 0, 1, &apply_auto(&c, 1, 0, &v));
                    assert_eq!(fr, rf);
                }
            }
        }
    }

    #[test]
    fn dictionary_compatibility() {
        for n in [3, 4] {
            let c = ctx(n);
            for s in -3..=3 {
                for row in 0..=n {
                    let v = QuiverVertex { s, row };
                    let t = apply_auto(&c, 1, 0, &v);
                    assert_eq!(t.bundle(&c), v.bundle(&c).act(&c.x3()));
                    let r = apply_auto(&c, 0, 1, &v);
                    assert_eq!(r.bundle(&c), v.bundle(&c).act(&c.x1()));
                }
            }
        }
    }

    #[test]
    fn paths_give_hom() {
        let c = ctx(3);
        let w = window(&c, 0, 2 * c.n());
        for v in &w.vertices {
            for u in &w.vertices {
                if w.has_path(v, u) {
                    assert!(
                        hom_dim(&v.bundle(&c), &u.bundle(&c)) > 0,
                        "path {v:?} -> {u:?} but Hom = 0"
                    );
                }
            }
        }
    }
}
