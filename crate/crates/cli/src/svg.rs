//! Deterministic SVG rendering of the strip and of quiver windows.
//!
//! Fixed scale: 40 units per integer step on the strip, strip height 80.
//! Every coordinate is computed exactly and formatted through one code
//! path, so identical inputs give identical bytes.

use num_rational::Rational64;
use serde_json::{json, Value};

use wpl_core::homext::positive_crossing_points;
use wpl_core::picard::ModelContext;
use wpl_core::quiver;
use wpl_core::strip::{Marker, OrbitClass, Segment};
use wpl_core::ModelError;

use crate::DrawArgs;

const MARGIN: i64 = 20;
const STEP: i64 = 40;

fn parse_range(spec: &str) -> Result<(i64, i64), ModelError> {
    let bad = || ModelError::Parse {
        pos: 0,
        msg: format!("invalid range {spec:?}, expected \"lo..hi\""),
    };
    let (lo, hi) = spec.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo >= hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Formats a pixel coordinate: integers plainly, otherwise two decimals.
fn px(v: Rational64) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        let f = (*v.numer() as f64) / (*v.denom() as f64);
        format!("{f:.2}")
    }
}

struct StripCanvas {
    lo: i64,
    out: String,
}

impl StripCanvas {
    // strip x in [lo, hi], doubled y in {0,1,2}
    fn x(&self, x: Rational64) -> Rational64 {
        x * STEP - Rational64::from(self.lo * STEP - MARGIN)
    }

    fn y(&self, yd: i64) -> i64 {
        MARGIN + (2 - yd) * STEP
    }

    fn line(&mut self, x1: Rational64, y1: i64, x2: Rational64, y2: i64, style: &str) {
        self.out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
            px(self.x(x1)),
            self.y(y1),
            px(self.x(x2)),
            self.y(y2)
        ));
    }

    fn circle(&mut self, x: Rational64, y: Rational64, r: i64, style: &str) {
        let yy = Rational64::from(MARGIN) + (Rational64::from(2) - y * 2) * STEP;
        self.out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" {style}/>\n",
            px(self.x(x)),
            px(yy)
        ));
    }

    fn segment(&mut self, seg: &Segment, style: &str) {
        let (i, j, s) = (seg.i(), seg.j(), seg.endpoint_sum());
        // halves meet the midline exactly at doubled height 1
        let (p, q) = match seg.marker() {
            Marker::Full => ((Rational64::from(i), 0), (Rational64::from(j), 2)),
            Marker::Plus => ((Rational64::from(i), 0), (Rational64::new(s, 2), 1)),
            Marker::Minus => ((Rational64::new(s, 2), 1), (Rational64::from(j), 2)),
        };
        self.line(p.0, p.1, q.0, q.1, style);
    }
}

fn draw_strip(ctx: &ModelContext, args: &DrawArgs) -> Result<(String, Value), ModelError> {
    let (lo, hi) = parse_range(&args.range)?;
    let n = ctx.n();
    let width = (hi - lo) * STEP + 2 * MARGIN;
    let height = 2 * STEP + 2 * MARGIN;
    let mut canvas = StripCanvas {
        lo,
        out: String::new(),
    };
    canvas.out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n<rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    ));
    // boundaries
    for yd in [0, 2] {
        canvas.line(
            Rational64::from(lo),
            yd,
            Rational64::from(hi),
            yd,
            "stroke=\"#000000\" stroke-width=\"1\"",
        );
    }
    // segments first so points appear on top
    let mut segments = Vec::new();
    for lit in &args.seg {
        let seg = Segment::parse(ctx, lit)?;
        canvas.segment(&seg, "stroke=\"#d02027\" stroke-width=\"2\"");
        segments.push(seg);
    }
    let mut orbit_count = 0usize;
    for lit in &args.orbit {
        let seg = Segment::parse(ctx, lit)?;
        let rep = seg.canonical_rep();
        let span = (hi - lo).abs() + 2 * n;
        let mut members = Vec::new();
        for m in -(span / n + 2)..=(span / n + 2) {
            for (i, j) in [
                (rep.i() + m * n, rep.j() + m * n),
                (-rep.j() + m * n, -rep.i() + m * n),
            ] {
                if i.max(j) < lo || i.min(j) > hi {
                    continue;
                }
                members.push(Segment::new(ctx, i, j, rep.marker()).expect("orbit marker"));
            }
        }
        members.sort_unstable();
        members.dedup();
        for member in members {
            canvas.segment(&member, "stroke=\"#4a90e2\" stroke-width=\"1\"");
            orbit_count += 1;
        }
        // crossing marks against the first --seg overlay
        if let Some(first) = segments.first() {
            for (x, y) in positive_crossing_points(first, &OrbitClass::of(&seg)) {
                canvas.circle(
                    x,
                    y,
                    4,
                    "fill=\"none\" stroke=\"#d02027\" stroke-width=\"1\"",
                );
            }
        }
    }
    // marked points and midline points
    for x in lo..=hi {
        for yd in [0, 2] {
            let y = canvas.y(yd);
            canvas.out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{y}\" r=\"3\" fill=\"#000000\"/>\n",
                px(canvas.x(Rational64::from(x)))
            ));
        }
    }
    let k_lo = (2 * lo).div_euclid(n);
    let k_hi = (2 * hi).div_euclid(n);
    for k in k_lo..=k_hi {
        let x = Rational64::new(k * n, 2);
        if x >= Rational64::from(lo) && x <= Rational64::from(hi) {
            canvas.circle(x, Rational64::new(1, 2), 2, "fill=\"#808080\"");
        }
    }
    canvas.out.push_str("</svg>\n");
    Ok((
        canvas.out,
        json!({ "kind": "strip", "range": [lo, hi], "orbit_members": orbit_count }),
    ))
}

fn draw_quiver(ctx: &ModelContext, args: &DrawArgs) -> Result<(String, Value), ModelError> {
    let (lo, hi) = parse_range(&args.range)?;
    let n = ctx.n();
    let hs = STEP / 2;
    let window = quiver::window(ctx, lo, hi);
    let xpos = |v: &quiver::QuiverVertex| MARGIN + (2 * (v.s - lo) + v.row) * hs;
    let ypos = |v: &quiver::QuiverVertex| MARGIN + (n - v.row) * STEP;
    let width = (2 * (hi - lo) + n) * hs + 2 * MARGIN;
    let height = n * STEP + 2 * MARGIN + 30;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n<rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    );
    let color = |value: (u8, u8)| match value {
        (1, 1) => "#222222",
        (2, 1) => "#b8860b",
        _ => "#1e6eb8",
    };
    for a in &window.arrows {
        let (x1, y1) = (xpos(&a.from), ypos(&a.from));
        let (x2, y2) = (xpos(&a.to), ypos(&a.to));
        let c = color(a.value);
        out.push_str(&format!(
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{c}\" stroke-width=\"1\"/>\n"
        ));
        // arrowhead: a short V at 4/5 of the way, orthogonal offset 3
        let tx = x1 + (x2 - x1) * 4 / 5;
        let ty = y1 + (y2 - y1) * 4 / 5;
        let (dx, dy) = (x2 - x1, y2 - y1);
        // arrows only run diagonally or vertically by construction
        let (ox, oy) = (-dy.signum() * 3, dx.signum() * 3);
        let (bx, by) = (-dx.signum() * 4, -dy.signum() * 4);
        out.push_str(&format!(
            "<polyline points=\"{},{} {},{} {},{}\" fill=\"none\" stroke=\"{c}\" stroke-width=\"1\"/>\n",
            tx + bx + ox,
            ty + by + oy,
            tx,
            ty,
            tx + bx - ox,
            ty + by - oy
        ));
    }
    for v in &window.vertices {
        let r = if v.valuation(ctx) == 2 { 4 } else { 2 };
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"#000000\"/>\n",
            xpos(v),
            ypos(v)
        ));
    }
    // legend
    let ly = n * STEP + 2 * MARGIN + 10;
    let mut lx = MARGIN;
    for (value, label) in [((1, 1), "(1,1)"), ((2, 1), "(2,1)"), ((1, 2), "(1,2)")] {
        let c = color(value);
        out.push_str(&format!(
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{c}\" stroke-width=\"1\"/>\n",
            lx + 20
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#000000\">{label}</text>\n",
            lx + 24,
            ly + 3
        ));
        lx += 80;
    }
    out.push_str("</svg>\n");
    Ok((
        out,
        json!({
            "kind": "quiver",
            "range": [lo, hi],
            "window": window,
        }),
    ))
}

pub fn run_draw(ctx: &ModelContext, args: &DrawArgs) -> Result<Value, ModelError> {
    let (svg, mut payload) = match args.what.as_str() {
        "strip" => draw_strip(ctx, args)?,
        "quiver" => draw_quiver(ctx, args)?,
        other => {
            return Err(ModelError::Parse {
                pos: 0,
                msg: format!("unknown drawing {other:?}; expected strip or quiver"),
            })
        }
    };
    match &args.svg {
        Some(path) => {
            std::fs::write(path, &svg).map_err(|e| {
                ModelError::DomainViolation(format!("cannot write {path}: {e}"))
            })?;
            payload["written"] = json!(path);
            payload["bytes"] = json!(svg.len());
        }
        None => {
            payload["svg"] = json!(svg);
        }
    }
    Ok(payload)
}
