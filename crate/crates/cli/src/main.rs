//! `wpl`: queries and verification sweeps for the (2,2,n) bundle model.
//!
//! Output is a single JSON object per invocation:
//!   {"status": "ok"|"error", "payload": ..., "diagnostics": [...]}
//! Exit codes: 0 ok, 1 domain error, 2 parse error, 3 verification failure.
//!
//! Identical invocations produce identical bytes, including SVG output.

mod svg;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wpl_core::bundles::Bundle;
use wpl_core::homext::{ext_dim, ext_dim_algebraic, euler_form, hom_dim};
use wpl_core::picard::ModelContext;
use wpl_core::sequences::{
    corner_sequence, crossing_sequence, injective_hull, projective_cover,
    quadrilateral_sequence, shift_sequence, square_sequence, triangle_sequence, verify_sequence,
    widen_sequence, CoverData, ExactSequence,
};
use wpl_core::strip::Segment;
use wpl_core::suites::{self, WindowSpec};
use wpl_core::ModelError;

#[derive(Parser)]
#[command(name = "wpl", version, about = "Exact model of vector bundles on a (2,2,n) weighted projective line", disable_help_subcommand = true)]
struct Cli {
    /// Weight n (>= 2); verify also accepts a list like "2..6" or "2,3,4"
    #[arg(long, global = true)]
    n: Option<String>,

    /// Base line bundle twist "l1,l2,l3,l" (default: x3)
    #[arg(long, global = true, allow_hyphen_values = true)]
    base: Option<String>,

    /// Write the JSON result to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a segment or bundle literal: both faces plus invariants
    Classify { literal: String },
    /// dim Ext^1 between two objects
    Ext {
        x: String,
        y: String,
        /// geometric | algebraic | both
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// dim Hom between two objects
    Hom {
        x: String,
        y: String,
        /// geometric | algebraic | both (route for the Ext term)
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Degree shift of an object
    Act {
        x: String,
        /// Picard element "l1,l2,l3,l"
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Vector bundle duality
    Dual { x: String },
    /// Auslander-Reiten translation
    Tau {
        x: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Projective cover of an extension bundle
    Cover { x: String },
    /// Injective hull of an extension bundle
    Hull { x: String },
    /// Construct and check an exact sequence
    Sequence(SequenceArgs),
    /// Run a verification sweep
    Verify {
        #[arg(long)]
        suite: String,
        /// Window bound: "3n" or an absolute integer
        #[arg(long, default_value = "3n")]
        window: String,
    },
    /// Deterministic SVG rendering of the strip or a quiver window
    Draw(DrawArgs),
}

#[derive(Args)]
struct SequenceArgs {
    /// quadrilateral | crossing | triangle | widen | shift | square | corner
    kind: String,
    /// Segment literal "[i,j]" for triangle, quotient for crossing
    #[arg(long)]
    seg: Option<String>,
    /// Sub segment literal for crossing
    #[arg(long)]
    sub: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    i: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k2: Option<i64>,
    /// Midline point index for triangle
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Base twist "l1,l2,l3,l" for the step/square family
    #[arg(long, allow_hyphen_values = true)]
    base_twist: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Probe half-width for the verification report
    #[arg(long, default_value_t = 6)]
    probes: i64,
}

#[derive(Args)]
struct DrawArgs {
    /// strip | quiver
    what: String,
    /// Coordinate range "lo..hi"
    #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
    range: String,
    /// Segment overlays (repeatable); the first is the reference for
    /// crossing marks
    #[arg(long)]
    seg: Vec<String>,
    /// Orbit overlays: all representatives in range (repeatable)
    #[arg(long)]
    orbit: Vec<String>,
    /// Write the SVG here; otherwise it is inlined in the JSON payload
    #[arg(long)]
    svg: Option<String>,
}

/// What the process should report and how it should exit.
enum Outcome {
    Ok(Value),
    DomainError(String),
    ParseError(String),
    VerifyFailure(Value),
}

fn classify_payload(ctx: &ModelContext, b: &Bundle) -> Value {
    json!({
        "orbit": b.segment_of(),
        "bundle": b,
        "rank": b.rank(),
        "degree": b.degree(),
        "slope": b.slope().to_string(),
        "n": ctx.n(),
    })
}

/// Parses a segment or bundle literal into its bundle face.
fn parse_object(ctx: &ModelContext, lit: &str) -> Result<Bundle, ModelError> {
    let t = lit.trim();
    if t.starts_with('[') {
        let seg = Segment::parse(ctx, t)?;
        Ok(Bundle::phi_hat(&wpl_core::OrbitClass::of(&seg), ctx))
    } else {
        Bundle::parse(ctx, t)
    }
}

fn error_outcome(e: ModelError) -> Outcome {
    match e {
        ModelError::Parse { .. } => Outcome::ParseError(e.to_string()),
        _ => Outcome::DomainError(e.to_string()),
    }
}

fn sequence_payload(ctx: &ModelContext, seq: &ExactSequence, probes: i64) -> Value {
    let report = verify_sequence(ctx, seq, probes);
    json!({ "sequence": seq, "report": report, "display": seq.to_string() })
}

fn cover_payload(ctx: &ModelContext, data: &CoverData, hull: bool, probes: i64) -> Value {
    let report = verify_sequence(ctx, &data.seq, probes);
    json!({
        (if hull { "hull" } else { "cover" }): data.cover,
        (if hull { "cokernel" } else { "kernel" }): data.complement,
        "sequence": data.seq,
        "report": report,
        "display": data.seq.to_string(),
    })
}

fn run_sequence(ctx: &ModelContext, args: &SequenceArgs) -> Result<Value, ModelError> {
    let need = |opt: &Option<i64>, name: &str| {
        opt.ok_or_else(|| ModelError::Parse {
            pos: 0,
            msg: format!("missing --{name}"),
        })
    };
    let need_str = |opt: &Option<String>, name: &str| {
        opt.clone().ok_or_else(|| ModelError::Parse {
            pos: 0,
            msg: format!("missing --{name}"),
        })
    };
    let seq = match args.kind.as_str() {
        "quadrilateral" => {
            let q = quadrilateral_sequence(
                ctx,
                need(&args.i, "i")?,
                need(&args.j, "j")?,
                need(&args.k1, "k1")?,
                need(&args.k2, "k2")?,
            )?;
            let mut payload = sequence_payload(ctx, &q.seq, args.probes);
            payload["middle_coincide"] = json!(q.middle_coincide);
            return Ok(payload);
        }
        "crossing" => {
            let quot = Segment::parse(ctx, &need_str(&args.seg, "seg")?)?;
            let sub = Segment::parse(ctx, &need_str(&args.sub, "sub")?)?;
            crossing_sequence(&quot, &sub)?
        }
        "triangle" => {
            let seg = Segment::parse(ctx, &need_str(&args.seg, "seg")?)?;
            triangle_sequence(ctx, seg.i(), seg.j(), need(&args.k, "k")?)?
        }
        "widen" | "shift" | "square" | "corner" => {
            let base = ctx.parse_element(&need_str(&args.base_twist, "base-twist")?)?;
            let x = ctx.parse_element(&need_str(&args.x, "x")?)?;
            match args.kind.as_str() {
                "widen" => widen_sequence(ctx, base, x)?,
                "shift" => shift_sequence(ctx, base, x)?,
                "square" => square_sequence(ctx, base, x)?,
                _ => {
                    let y = ctx.parse_element(&need_str(&args.y, "y")?)?;
                    corner_sequence(ctx, base, x, y)?
                }
            }
        }
        other => {
            return Err(ModelError::Parse {
                pos: 0,
                msg: format!(
                    "unknown sequence kind {other:?}; expected quadrilateral, crossing, triangle, widen, shift, square or corner"
                ),
            })
        }
    };
    Ok(sequence_payload(ctx, &seq, args.probes))
}

fn parse_n_list(spec: &str) -> Result<Vec<i64>, ModelError> {
    let t = spec.trim();
    let bad = |msg: String| ModelError::Parse { pos: 0, msg };
    if let Some((lo, hi)) = t.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| bad(format!("invalid n range {t:?}")))?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad(format!("invalid n range {t:?}")))?;
        if lo < 2 || hi < lo {
            return Err(bad(format!("invalid n range {t:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        t.split(',')
            .map(|p| {
                let v: i64 = p.trim().parse().map_err(|_| bad(format!("invalid n {p:?}")))?;
                if v < 2 {
                    return Err(bad(format!("n must be at least 2, got {v}")));
                }
                Ok(v)
            })
            .collect()
    }
}

fn run(cli: &Cli) -> Outcome {
    let n_spec = match &cli.n {
        Some(s) => s.clone(),
        None => return Outcome::ParseError("missing required --n".into()),
    };
    let ns = match parse_n_list(&n_spec) {
        Ok(ns) => ns,
        Err(e) => return Outcome::ParseError(e.to_string()),
    };

    // verify accepts an n list; every other command needs a single n
    if let Command::Verify { suite, window } = &cli.command {
        if cli.base.is_some() {
            return Outcome::DomainError("--base is not supported for verify sweeps".into());
        }
        let window = match WindowSpec::parse(window) {
            Ok(w) => w,
            Err(e) => return Outcome::ParseError(e.to_string()),
        };
        return match suites::run_suite(suite, &ns, window) {
            Ok(report) => {
                let payload = json!({ "report": report, "passed": report.passed() });
                if report.passed() {
                    Outcome::Ok(payload)
                } else {
                    Outcome::VerifyFailure(payload)
                }
            }
            Err(e) => Outcome::DomainError(e.to_string()),
        };
    }

    if ns.len() != 1 {
        return Outcome::ParseError(format!(
            "this command needs a single --n, got {n_spec:?}"
        ));
    }
    let n = ns[0];
    let plain = ModelContext::new(n);
    let mut diagnostics = Vec::new();
    let ctx = match &cli.base {
        None => plain,
        Some(b) => match plain.parse_element(b) {
            Ok(t) => {
                let ctx = ModelContext::with_base(n, t);
                if !ctx.duality_compatible() {
                    diagnostics.push(
                        "base twist fails the duality compatibility condition (2a = 2*x3 \
                         mod {0, x1-x2}); segment-level duality formulas may not apply"
                            .to_string(),
                    );
                }
                ctx
            }
            Err(e) => return error_outcome(e),
        },
    };

    let result: Result<Value, ModelError> = (|| match &cli.command {
        Command::Classify { literal } => {
            let b = parse_object(&ctx, literal)?;
            Ok(classify_payload(&ctx, &b))
        }
        Command::Ext { x, y, method } => {
            let bx = parse_object(&ctx, x)?.into_sum();
            let by = parse_object(&ctx, y)?.into_sum();
            let mut payload = json!({ "x": x, "y": y, "method": method });
            match method.as_str() {
                "geometric" => payload["ext"] = json!(ext_dim(&bx, &by)),
                "algebraic" => payload["ext"] = json!(ext_dim_algebraic(&bx, &by)),
                "both" => {
                    let g = ext_dim(&bx, &by);
                    let a = ext_dim_algebraic(&bx, &by);
                    payload["geometric"] = json!(g);
                    payload["algebraic"] = json!(a);
                    payload["agree"] = json!(g == a);
                    payload["ext"] = json!(g);
                }
                other => {
                    return Err(ModelError::Parse {
                        pos: 0,
                        msg: format!("unknown method {other:?}"),
                    })
                }
            }
            Ok(payload)
        }
        Command::Hom { x, y, method } => {
            let bx = parse_object(&ctx, x)?.into_sum();
            let by = parse_object(&ctx, y)?.into_sum();
            let chi = euler_form(&bx, &by);
            let mut payload = json!({ "x": x, "y": y, "euler": chi, "method": method });
            match method.as_str() {
                "geometric" => {
                    payload["hom"] = json!(hom_dim(&bx, &by));
                }
                "algebraic" => {
                    payload["hom"] = json!(chi + ext_dim_algebraic(&bx, &by) as i64);
                }
                "both" => {
                    let g = hom_dim(&bx, &by);
                    let a = chi + ext_dim_algebraic(&bx, &by) as i64;
                    payload["geometric"] = json!(g);
                    payload["algebraic"] = json!(a);
                    payload["agree"] = json!(g as i64 == a);
                    payload["hom"] = json!(g);
                }
                other => {
                    return Err(ModelError::Parse {
                        pos: 0,
                        msg: format!("unknown method {other:?}"),
                    })
                }
            }
            Ok(payload)
        }
        Command::Act { x, by } => {
            let b = parse_object(&ctx, x)?;
            let shift = ctx.parse_element(by)?;
            Ok(json!({ "input": x, "by": shift, "result": classify_payload(&ctx, &b.act(&shift)) }))
        }
        Command::Dual { x } => {
            let b = parse_object(&ctx, x)?;
            Ok(json!({ "input": x, "result": classify_payload(&ctx, &b.dual()) }))
        }
        Command::Tau { x, inverse } => {
            let b = parse_object(&ctx, x)?;
            let t = if *inverse { b.tau_inv() } else { b.tau() };
            Ok(json!({ "input": x, "inverse": inverse, "result": classify_payload(&ctx, &t) }))
        }
        Command::Cover { x } => {
            let b = parse_object(&ctx, x)?;
            let data = projective_cover(&b)?;
            Ok(cover_payload(&ctx, &data, false, 3 * n))
        }
        Command::Hull { x } => {
            let b = parse_object(&ctx, x)?;
            let data = injective_hull(&b)?;
            Ok(cover_payload(&ctx, &data, true, 3 * n))
        }
        Command::Sequence(args) => run_sequence(&ctx, args),
        Command::Draw(args) => svg::run_draw(&ctx, args),
        Command::Verify { .. } => unreachable!("handled above"),
    })();

    match result {
        Ok(mut payload) => {
            if let Value::Object(map) = &mut payload {
                if !diagnostics.is_empty() && !map.contains_key("diagnostics_extra") {
                    // surfaced below in the envelope
                }
            }
            Outcome::Ok(json!({ "value": payload, "diagnostics": diagnostics }))
        }
        Err(e) => error_outcome(e),
    }
}

fn main() {
    let cli = Cli::parse();
    let (envelope, code) = match run(&cli) {
        Outcome::Ok(v) => {
            let diagnostics = v
                .get("diagnostics")
                .cloned()
                .unwrap_or_else(|| json!([]));
            let payload = v.get("value").cloned().unwrap_or(v);
            (
                json!({ "status": "ok", "payload": payload, "diagnostics": diagnostics }),
                0,
            )
        }
        Outcome::DomainError(msg) => (
            json!({ "status": "error", "payload": null, "diagnostics": [msg] }),
            1,
        ),
        Outcome::ParseError(msg) => (
            json!({ "status": "error", "payload": null, "diagnostics": [msg] }),
            2,
        ),
        Outcome::VerifyFailure(payload) => (
            json!({ "status": "error", "payload": payload, "diagnostics": ["verification failed"] }),
            3,
        ),
    };
    let text = format!("{}\n", serde_json::to_string_pretty(&envelope).expect("serializable"));
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("cannot write {path}: {e}");
            std::process::exit(1);
        }
    } else {
        print!("{text}");
    }
    std::process::exit(code);
}
