//! Batch verification sweeps.
//!
//! Every suite walks a finite window of canonical orbits (or random
//! parameters from a fixed seed), checks an exact identity, and reports the
//! number of checks plus a sorted counterexample list, which is expected to
//! be empty. Sweeps are deterministic: identical inputs give identical
//! reports.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::bundles::{Bundle, BundleSum};
use crate::homext::{euler_form, ext_dim, ext_dim_algebraic, hom_dim};
use crate::picard::ModelContext;
use crate::sequences::{
    corner_sequence, crossing_sequence, injective_hull, probe_lines, projective_cover,
    quadrilateral_sequence, shift_sequence, square_sequence, triangle_sequence, verify_sequence,
    widen_sequence,
};
use crate::strip::{MCGElement, Marker, OrbitClass, Segment};
use crate::{quiver, ModelError, Result};

/// Seed for the randomized sweeps; fixed so reports are reproducible.
pub const DEFAULT_SEED: u64 = 0x5eed_2218;

const MAX_REPORTED: usize = 50;

/// How wide a window to sweep, either a multiple of n or an absolute bound
/// on |i|, |j|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSpec {
    TimesN(i64),
    Absolute(i64),
}

impl WindowSpec {
    pub fn resolve(&self, n: i64) -> i64 {
        match self {
            WindowSpec::TimesN(k) => k * n,
            WindowSpec::Absolute(w) => *w,
        }
    }

    /// Parses "3n" or "12".
    pub fn parse(s: &str) -> Result<WindowSpec> {
        let t = s.trim();
        if let Some(k) = t.strip_suffix('n') {
            let k: i64 = k.trim().parse().map_err(|_| ModelError::Parse {
                pos: 0,
                msg: format!("invalid window {t:?}"),
            })?;
            Ok(WindowSpec::TimesN(k))
        } else {
            let w: i64 = t.parse().map_err(|_| ModelError::Parse {
                pos: 0,
                msg: format!("invalid window {t:?}"),
            })?;
            Ok(WindowSpec::Absolute(w))
        }
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: u64,
    /// Sorted, truncated to a fixed cap; `total_counterexamples` keeps the
    /// real count.
    pub counterexamples: Vec<String>,
    pub total_counterexamples: u64,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checked: 0,
            counterexamples: Vec::new(),
            total_counterexamples: 0,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.total_counterexamples += 1;
            self.counterexamples.push(describe());
        }
    }

    fn finish(mut self) -> Self {
        self.counterexamples.sort_unstable();
        self.counterexamples.truncate(MAX_REPORTED);
        self
    }

    pub fn passed(&self) -> bool {
        self.total_counterexamples == 0
    }
}

/// All canonical refined orbits with |i|, |j| <= span.
pub fn canonical_orbits(ctx: &ModelContext, span: i64) -> Vec<OrbitClass> {
    let mut out = Vec::new();
    for i in -span..=span {
        for j in -span..=span {
            for marker in [Marker::Full, Marker::Plus, Marker::Minus] {
                if let Ok(s) = Segment::new(ctx, i, j, marker) {
                    if s.is_canonical() {
                        out.push(OrbitClass::of(&s));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Geometric intersection index against the algebraic Serre-duality value,
/// over every ordered pair of window orbits.
pub fn oracle_equivalence(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("oracle-equivalence");
    for &n in ns {
        let ctx = ModelContext::new(n);
        let orbits = canonical_orbits(&ctx, window.resolve(n));
        let bundles: Vec<BundleSum> = orbits
            .iter()
            .map(|o| Bundle::phi_hat(o, &ctx).into_sum())
            .collect();
        for (ia, a) in bundles.iter().enumerate() {
            for (ib, b) in bundles.iter().enumerate() {
                let geo = ext_dim(a, b);
                let alg = ext_dim_algebraic(a, b);
                report.check(geo == alg, || {
                    format!(
                        "n={n} {} vs {}: geometric {geo} != algebraic {alg}",
                        orbits[ia], orbits[ib]
                    )
                });
            }
        }
    }
    report.finish()
}

/// Serre duality: ext(X,Y) = chi(Y, X(w)) + ext(Y, X(w)), both sides through
/// independent paths.
pub fn serre_duality(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("serre-duality");
    for &n in ns {
        let ctx = ModelContext::new(n);
        let orbits = canonical_orbits(&ctx, window.resolve(n));
        let bundles: Vec<BundleSum> = orbits
            .iter()
            .map(|o| Bundle::phi_hat(o, &ctx).into_sum())
            .collect();
        let omega = ctx.omega();
        for (ia, a) in bundles.iter().enumerate() {
            let ta = a.act(&omega);
            for (ib, b) in bundles.iter().enumerate() {
                let lhs = ext_dim(a, b) as i64;
                let rhs = euler_form(b, &ta) + ext_dim(b, &ta) as i64;
                report.check(lhs == rhs, || {
                    format!("n={n} {} vs {}: ext {lhs} != hom-to-translate {rhs}", orbits[ia], orbits[ib])
                });
            }
        }
    }
    report.finish()
}

/// Exceptionality of every window object: no self-extensions, scalar
/// endomorphisms, and the almost-split floor ext(X, tau X) >= 1.
pub fn exceptional(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("exceptional");
    for &n in ns {
        let ctx = ModelContext::new(n);
        for o in canonical_orbits(&ctx, window.resolve(n)) {
            let b = Bundle::phi_hat(&o, &ctx);
            let s = b.into_sum();
            let self_ext = ext_dim(&s, &s);
            report.check(self_ext == 0, || format!("n={n} {o}: self-ext {self_ext}"));
            let endo = euler_form(&s, &s) + self_ext as i64;
            report.check(endo == 1, || format!("n={n} {o}: endo dim {endo}"));
            let floor = ext_dim(&s, &b.tau().into_sum());
            report.check(floor >= 1, || format!("n={n} {o}: ext to translate {floor}"));
        }
    }
    report.finish()
}

/// Hom only flows weakly upward in slope.
pub fn slope_monotone(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("slope-monotone");
    for &n in ns {
        let ctx = ModelContext::new(n);
        let orbits = canonical_orbits(&ctx, window.resolve(n));
        let bundles: Vec<Bundle> = orbits.iter().map(|o| Bundle::phi_hat(o, &ctx)).collect();
        for (ia, a) in bundles.iter().enumerate() {
            for (ib, b) in bundles.iter().enumerate() {
                let ok = hom_dim(&a.into_sum(), &b.into_sum()) == 0 || a.slope() <= b.slope();
                report.check(ok, || {
                    format!("n={n} {} -> {}: hom against the slopes", orbits[ia], orbits[ib])
                });
            }
        }
    }
    report.finish()
}

/// Round trips of the orbit correspondence and the four-way identification
/// of extension-bundle descriptors.
pub fn identifications(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("identifications");
    for &n in ns {
        let ctx = ModelContext::new(n);
        let w = window.resolve(n);
        for o in canonical_orbits(&ctx, w) {
            let b = Bundle::phi_hat(&o, &ctx);
            report.check(b.segment_of() == o, || format!("n={n} {o}: round trip"));
        }
        let f = ctx.element(1, -1, 0, 0);
        for e1 in 0..2 {
            for e2 in 0..2 {
                for m in -w..=w {
                    let base = ctx.element(e1 + e2, -e1, m, 0);
                    for width in 0..=n - 2 {
                        let turn = base.add(&ctx.x3().scale(width + 1));
                        let b0 = Bundle::ext(&ctx, base, width).unwrap();
                        let others = [
                            Bundle::ext(&ctx, base.add(&f), width).unwrap(),
                            Bundle::ext(&ctx, turn.sub(&ctx.x1()), n - 2 - width).unwrap(),
                            Bundle::ext(&ctx, turn.sub(&ctx.x2()), n - 2 - width).unwrap(),
                        ];
                        report.check(others.iter().all(|b| *b == b0), || {
                            format!("n={n} base={base} width={width}: descriptors differ")
                        });
                    }
                }
            }
        }
    }
    report.finish()
}

/// The orbit action of the mapping class group matches the Picard action of
/// its image, for random group elements against every window orbit.
pub fn equivariance(ns: &[i64], window: WindowSpec, elements: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("equivariance");
    let mut rng = StdRng::seed_from_u64(seed);
    for &n in ns {
        let ctx = ModelContext::new(n);
        let orbits = canonical_orbits(&ctx, window.resolve(n));
        for _ in 0..elements {
            let k = rng.gen_range(0..2i64);
            let t = rng.gen_range(-2 * n..=2 * n);
            let g = MCGElement::new(&ctx, k, t);
            let shift = g.to_picard_bar(&ctx).lift(&ctx);
            for o in &orbits {
                let lhs = Bundle::phi_hat(&g.act(o), &ctx);
                let rhs = Bundle::phi_hat(o, &ctx).act(&shift);
                report.check(lhs == rhs, || {
                    format!("n={n} g={g} orbit {o}: {lhs} != {rhs}")
                });
            }
        }
    }
    report.finish()
}

/// Projective covers and injective hulls of every window extension bundle:
/// sequence additivity and Hom probes, lifting of probe maps through the
/// cover, mutual Hom-orthogonality of the cover summands, and the
/// hull-of-kernel identity.
pub fn cover_hull(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("cover-hull");
    for &n in ns {
        let ctx = ModelContext::new(n);
        let w = window.resolve(n);
        let probes = probe_lines(&ctx, w);
        for o in canonical_orbits(&ctx, w) {
            let x = Bundle::phi_hat(&o, &ctx);
            if !x.is_ext() {
                continue;
            }
            let cover = projective_cover(&x).unwrap();
            let hull = injective_hull(&x).unwrap();
            for data in [&cover, &hull] {
                let sr = verify_sequence(&ctx, &data.seq, w);
                report.check(sr.passed(), || {
                    format!("n={n} {o} {}: {:?}", data.seq.provenance, sr.violations)
                });
            }
            let xs = x.into_sum();
            let kernel = cover.complement.into_sum();
            let cokernel = hull.complement.into_sum();
            for p in &probes {
                let ps = p.into_sum();
                if hom_dim(&ps, &xs) > 0 {
                    report.check(ext_dim(&ps, &kernel) == 0, || {
                        format!("n={n} {o}: probe {p} does not lift through the cover")
                    });
                }
                if hom_dim(&xs, &ps) > 0 {
                    report.check(ext_dim(&cokernel, &ps) == 0, || {
                        format!("n={n} {o}: probe {p} does not extend through the hull")
                    });
                }
            }
            let s = cover.cover.summands();
            let mut orthogonal = true;
            for (ia, a) in s.iter().enumerate() {
                for b in &s[ia + 1..] {
                    if hom_dim(&a.into_sum(), &b.into_sum()) != 0
                        || hom_dim(&b.into_sum(), &a.into_sum()) != 0
                    {
                        orthogonal = false;
                    }
                }
            }
            report.check(orthogonal, || {
                format!("n={n} {o}: cover summands not Hom-orthogonal")
            });
            let again = injective_hull(&cover.complement).unwrap();
            report.check(again.cover == cover.cover, || {
                format!("n={n} {o}: hull of the cover kernel differs from the cover")
            });
        }
    }
    report.finish()
}

/// Randomized sweep of every sequence constructor: rank and degree
/// additivity, Euler probes where all terms are bundles, and the
/// quadrilateral coincidence predicate against orbit equality.
pub fn sequences_sweep(ns: &[i64], instances: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("sequences");
    let mut rng = StdRng::seed_from_u64(seed);
    for &n in ns {
        let ctx = ModelContext::new(n);
        let probe_m = 2 * n;
        let verify = |report: &mut SuiteReport, label: &str, seq: &crate::ExactSequence| {
            let sr = verify_sequence(&ctx, seq, probe_m);
            report.check(sr.passed(), || {
                format!("n={n} {label}: {:?}", sr.violations)
            });
        };
        for _ in 0..instances {
            let i = rng.gen_range(-3 * n..=3 * n);
            let j = rng.gen_range(-3 * n..=3 * n);
            let k1 = rng.gen_range(1..=2 * n);
            let k2 = rng.gen_range(1..=2 * n);
            let q = quadrilateral_sequence(&ctx, i, j, k1, k2).unwrap();
            verify(&mut report, "quadrilateral", &q.seq);
            report.check(
                q.middle_coincide == (q.seq.middle[0] == q.seq.middle[1]),
                || format!("n={n} quad i={i} j={j} k1={k1} k2={k2}: coincidence predicate"),
            );

            // triangle needs a chord off the midline points
            let (ti, tj) = loop {
                let ti = rng.gen_range(-3 * n..=3 * n);
                let tj = rng.gen_range(-3 * n..=3 * n);
                if (ti + tj).rem_euclid(n) != 0 {
                    break (ti, tj);
                }
            };
            let k = rng.gen_range(-3..=3);
            verify(
                &mut report,
                "triangle",
                &triangle_sequence(&ctx, ti, tj, k).unwrap(),
            );

            let base = ctx.element(
                rng.gen_range(0..2),
                rng.gen_range(0..2),
                rng.gen_range(-2 * n..=2 * n),
                rng.gen_range(-2..=2),
            );
            let x = ctx.x3().scale(rng.gen_range(-2..=n + 2));
            verify(&mut report, "widen", &widen_sequence(&ctx, base, x).unwrap());
            verify(&mut report, "shift", &shift_sequence(&ctx, base, x).unwrap());
            verify(&mut report, "square", &square_sequence(&ctx, base, x).unwrap());
            let cx = ctx.x3().scale(rng.gen_range(0..=n + 2));
            let cy = ctx.x3().scale(rng.gen_range(1..=n + 2));
            verify(
                &mut report,
                "corner",
                &corner_sequence(&ctx, base, cx, cy).unwrap(),
            );

            // crossing: fixed quotient family crossed by a shifted steeper one
            let qi = rng.gen_range(-2 * n..=2 * n);
            let qj = qi + rng.gen_range(1..=n);
            let quot = Segment::with_inferred_marker(&ctx, qi, qj, Marker::Minus);
            let si = rng.gen_range(qi..=qi + n);
            let sj = si - rng.gen_range(1..=n);
            let sub = Segment::with_inferred_marker(&ctx, si, sj, Marker::Plus);
            match crossing_sequence(&quot, &sub) {
                Ok(seq) => verify(&mut report, "crossing", &seq),
                Err(ModelError::NoPositiveIntersection) => {
                    report.checked += 1;
                }
                Err(e) => report.check(false, || format!("n={n} crossing: {e}")),
            }
        }
    }
    report.finish()
}

/// Quiver window checks: automorphism relations, dictionary compatibility
/// with the degree shifts, valuations against summand counts, and path
/// soundness for Hom.
pub fn quiver_suite(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("quiver");
    for &n in ns {
        let ctx = ModelContext::new(n);
        let w = window.resolve(n).max(2 * n);
        let qw = quiver::window(&ctx, 0, w);
        for v in &qw.vertices {
            report.check(
                quiver::apply_auto(&ctx, 0, 2, v) == quiver::apply_auto(&ctx, n, 0, v),
                || format!("n={n} {v:?}: flip squared is not translation^n"),
            );
            let fr = quiver::apply_auto(&ctx, 1, 0, &quiver::apply_auto(&ctx, 0, 1, v));
            let rf = quiver::apply_auto(&ctx, 0, 1, &quiver::apply_auto(&ctx, 1, 0, v));
            report.check(fr == rf, || format!("n={n} {v:?}: generators do not commute"));
            let b = v.bundle(&ctx);
            report.check(
                quiver::apply_auto(&ctx, 1, 0, v).bundle(&ctx) == b.act(&ctx.x3()),
                || format!("n={n} {v:?}: translation is not the x3 shift"),
            );
            report.check(
                quiver::apply_auto(&ctx, 0, 1, v).bundle(&ctx) == b.act(&ctx.x1()),
                || format!("n={n} {v:?}: flip is not the x1 shift"),
            );
            report.check(
                v.valuation(&ctx) as usize == b.summands().len(),
                || format!("n={n} {v:?}: valuation vs summands"),
            );
        }
        // path soundness on a narrow band to keep the sweep quick
        let band = quiver::window(&ctx, 0, 2 * n);
        for v in &band.vertices {
            for u in &band.vertices {
                if band.has_path(v, u) {
                    report.check(
                        hom_dim(&v.bundle(&ctx), &u.bundle(&ctx)) > 0,
                        || format!("n={n} path {v:?} -> {u:?} without Hom"),
                    );
                }
            }
        }
    }
    report.finish()
}

/// Slope of every window orbit against the closed formula
/// (recip - 2) * lcm(2,n) / 2n + deg(base), for the three distinguished base
/// choices.
pub fn slope_law(ns: &[i64], window: WindowSpec) -> SuiteReport {
    use num_rational::Rational64;
    let mut report = SuiteReport::new("slope-law");
    for &n in ns {
        let plain = ModelContext::new(n);
        let bases = [plain.x3(), plain.omega().neg(), plain.zero()];
        for base in bases {
            let ctx = ModelContext::with_base(n, base);
            let p = ctx.p_bar();
            let mu0 = Rational64::from(base.degree());
            for o in canonical_orbits(&ctx, window.resolve(n)) {
                let b = Bundle::phi_hat(&o, &ctx);
                let expected =
                    Rational64::new((o.rep().recip_slope() - 2) * p, 2 * n) + mu0;
                report.check(b.slope() == expected, || {
                    format!("n={n} base={base} {o}: slope {} != {expected}", b.slope())
                });
            }
        }
    }
    report.finish()
}

/// Duality under the default base: endpoint swap on segments, fixed points
/// exactly on the diagonal.
pub fn duality(ns: &[i64], window: WindowSpec) -> SuiteReport {
    let mut report = SuiteReport::new("duality");
    for &n in ns {
        let ctx = ModelContext::new(n);
        for o in canonical_orbits(&ctx, window.resolve(n)) {
            let rep = o.rep();
            let b = Bundle::phi_hat(&o, &ctx);
            let swapped = OrbitClass::of(
                &Segment::new(&ctx, rep.j(), rep.i(), rep.marker()).expect("sum preserved"),
            );
            report.check(b.dual().segment_of() == swapped, || {
                format!("n={n} {o}: dual not the endpoint swap")
            });
            report.check((b.dual() == b) == (rep.i() == rep.j()), || {
                format!("n={n} {o}: dual fixed-point locus")
            });
        }
    }
    report.finish()
}

/// The suites reachable from the command line.
pub const SUITE_NAMES: [&str; 9] = [
    "oracle-equivalence",
    "serre-duality",
    "exceptional",
    "slope-monotone",
    "identifications",
    "equivariance",
    "cover-hull",
    "sequences",
    "quiver",
];

/// Runs a suite by name with the default randomized-parameter sizes.
pub fn run_suite(name: &str, ns: &[i64], window: WindowSpec) -> Result<SuiteReport> {
    match name {
        "oracle-equivalence" => Ok(oracle_equivalence(ns, window)),
        "serre-duality" => Ok(serre_duality(ns, window)),
        "exceptional" => Ok(exceptional(ns, window)),
        "slope-monotone" => Ok(slope_monotone(ns, window)),
        "identifications" => Ok(identifications(ns, window)),
        "equivariance" => Ok(equivariance(ns, window, 200, DEFAULT_SEED)),
        "cover-hull" => Ok(cover_hull(ns, window)),
        "sequences" => Ok(sequences_sweep(ns, 500, DEFAULT_SEED)),
        "quiver" => Ok(quiver_suite(ns, window)),
        _ => Err(ModelError::DomainViolation(format!(
            "unknown suite {name:?}; available: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}
