//! Command-line front end. `run` parses arguments, dispatches to the library
//! and returns the exit status together with the rendered report, so the
//! binary is a thin wrapper and tests can call it directly.
//!
//! Exit status: 0 success, 1 a verification came out negative, 2 bad input.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::parse_poly;
use crate::fibers::{self, FiberType, McgWord};
use crate::forms::{self, SymForm};
use crate::homology::{self, Ledger};
use crate::park;
use crate::pencil::{self, CubicPencil, ProjPoint};
use crate::plumbing::{self, CpChain};

#[derive(Parser, Debug)]
#[command(name = "blowdown", about = "Exact computations around the rational blowdown of C7", version)]
struct Cli {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection forms.
    #[command(subcommand)]
    Form(FormCmd),
    /// H1 and boundary of a linear plumbing.
    Chain(ChainArgs),
    /// Hirzebruch-Jung continued fraction of p/q.
    Hj { p: i64, q: i64 },
    /// Cubic pencils.
    #[command(subcommand)]
    Pencil(PencilCmd),
    /// Words in the torus mapping class group.
    #[command(subcommand)]
    Mcg(McgCmd),
    /// Blow-up multiplicity ledgers.
    #[command(subcommand)]
    Ledger(LedgerCmd),
    /// The C7 blowdown pipeline.
    #[command(subcommand)]
    Park7(Park7Cmd),
}

#[derive(Subcommand, Debug)]
enum FormCmd {
    /// Rank, signature, parity, definiteness and smoothability checks.
    Invariants {
        /// Named form (@e8minus, @h, @x7, @cp2_7bar, diag(1,-1^7), <1>) or a JSON matrix.
        #[arg(long)]
        q: String,
    },
    /// Homeomorphism decision for smooth simply-connected closed 4-manifolds.
    Freedman {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
        /// Both manifolds are smooth.
        #[arg(long)]
        smooth: bool,
    },
}

#[derive(Args, Debug)]
struct ChainArgs {
    /// Comma-separated framings, e.g. -9,-2,-2,-2,-2,-2.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', conflicts_with = "p")]
    framings: Option<Vec<i64>>,
    /// Shorthand for the C_p chain.
    #[arg(long)]
    p: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum PencilCmd {
    /// Singular members of t0*p0 + t1*p1.
    Singular {
        #[arg(long, allow_hyphen_values = true)]
        p0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<String>,
        /// Built-in pencil: @e8pencil or @e6pencil.
        #[arg(long, conflicts_with_all = ["p0", "p1"])]
        pencil: Option<String>,
        /// Linear form l with p0 = c*l^3: also count base points on l = 0.
        #[arg(long, allow_hyphen_values = true)]
        line: Option<String>,
    },
    /// Node / cusp / higher at a singular point.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Projective point, e.g. [0:0:1].
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand, Debug)]
enum McgCmd {
    /// Image of a word in SL(2, Z).
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Free reduction of a word.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Verify a monodromy factorization, or just an Euler budget with --types.
    Verify {
        /// Factorization JSON file, or @e6 / @i6 for the built-in ones.
        #[arg(long, conflicts_with = "types")]
        factorization: Option<String>,
        /// Comma-separated fibre types, e.g. E6~,III,I1,I1.
        #[arg(long, value_delimiter = ',')]
        types: Option<Vec<String>>,
        /// Longest conjugator tried by the search.
        #[arg(long, default_value_t = fibers::DEFAULT_SEARCH_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LedgerCmd {
    /// Replay a ledger: a JSON file, or @e8 / @e6.
    Replay { ledger: String },
}

#[derive(Subcommand, Debug)]
enum Park7Cmd {
    /// Full C7 report.
    Report,
}

/// Uniform envelope; keys serialise in sorted order.
#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Value,
    results: Value,
    anchors: Vec<String>,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(bool, Report), Failure>;

fn report(command: &str, inputs: Value, results: impl Serialize, anchors: &[&str]) -> Result<Report, Failure> {
    Ok(Report {
        command: command.into(),
        inputs,
        results: serde_json::to_value(results)?,
        anchors: anchors.iter().map(|s| s.to_string()).collect(),
    })
}

/// Named forms on top of those `SymForm::parse` knows: `@x7` and
/// `@cp2_<n>bar` (CP² # n CP̄²).
pub fn resolve_form(text: &str) -> Result<SymForm, forms::FormError> {
    let t = text.trim();
    if t == "@x7" {
        return Ok(park::x7_form());
    }
    if let Some(n) = t.strip_prefix("@cp2_").and_then(|s| s.strip_suffix("bar")) {
        if let Ok(n) = n.parse::<usize>() {
            return Ok(SymForm::blown_up_cp2(n));
        }
    }
    SymForm::parse(t)
}

fn read_input(spec: &str) -> Result<String, Failure> {
    std::fs::read_to_string(spec).map_err(|e| Failure(format!("{spec}: {e}")))
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Form(FormCmd::Invariants { q }) => {
            let form = resolve_form(q)?;
            let inv = forms::invariants(&form);
            let smooth = if form.is_unimodular() { Some(forms::smoothability_obstructions(&form)?) } else { None };
            let r = json!({ "invariants": inv, "unimodular": form.is_unimodular(), "smoothability": smooth });
            Ok((true, report("form invariants", json!({ "q": q }), r, &["rank, signature, parity, definiteness"])?))
        }
        Command::Form(FormCmd::Freedman { q1, q2, smooth }) => {
            let (a, b) = (resolve_form(q1)?, resolve_form(q2)?);
            let hom = forms::freedman_homeomorphic(&a, &b, *smooth)?;
            let r = json!({
                "q1": forms::invariants(&a),
                "q2": forms::invariants(&b),
                "equivalent": forms::forms_equivalent(&a, &b)?,
                "homeomorphic": hom,
            });
            let inputs = json!({ "q1": q1, "q2": q2, "smooth": smooth });
            Ok((true, report("form freedman", inputs, r, &["equal invariants of indefinite forms"])?))
        }
        Command::Chain(args) => {
            let (framings, chain): (Vec<i64>, Option<CpChain>) = match (&args.framings, args.p) {
                (_, Some(p)) => {
                    let c = plumbing::build_cp(p)?;
                    (c.framings.clone(), Some(c))
                }
                (Some(f), None) => (f.clone(), None),
                (None, None) => return Err(Failure("give --framings or --p".into())),
            };
            let pres = plumbing::SurgeryPresentation::chain(&framings);
            let g = plumbing::h1(&pres)?;
            let mut orders = serde_json::Map::new();
            let mut generators = Vec::new();
            for name in &g.generators {
                orders.insert(name.clone(), serde_json::to_value(plumbing::element_order(&g, name)?)?);
                if g.generates(name)? {
                    generators.push(name.clone());
                }
            }
            let boundary = plumbing::chain_boundary(&framings).ok().map(|l| l.to_string());
            let r = json!({
                "group": g.describe(),
                "torsion": g.torsion().iter().map(crate::json::bigint).collect::<Vec<_>>(),
                "free_rank": g.free_rank(),
                "meridian_orders": orders,
                "generating_meridians": generators,
                "boundary": boundary,
                "gram": chain.map(|c| c.gram.to_json_value()),
            });
            let inputs = json!({ "framings": framings, "p": args.p });
            Ok((true, report("chain", inputs, r, &["H1 of the boundary", "lens space boundary"])?))
        }
        Command::Hj { p, q } => {
            let coeffs = plumbing::hj_expand(*p, *q)?;
            let back = plumbing::hj_evaluate(&coeffs).map(|v| v.to_string());
            let r = json!({ "coefficients": coeffs, "evaluates_to": back });
            Ok((true, report("hj", json!({ "p": p, "q": q }), r, &["[p+2, 2, ..., 2] for p^2/(p-1)"])?))
        }
        Command::Pencil(PencilCmd::Singular { p0, p1, pencil: named, line }) => {
            let pen = match (named, p0, p1) {
                (Some(n), _, _) => CubicPencil::named(n)?,
                (None, Some(a), Some(b)) => CubicPencil::parse(a, b)?,
                _ => return Err(Failure("give --pencil or both --p0 and --p1".into())),
            };
            let rep = pencil::singular_parameters(&pen)?;
            let line_report = match line {
                Some(l) => Some(pencil::base_points_on_line(&pen, &parse_poly(l)?)?),
                None => None,
            };
            let r = json!({ "singular": rep, "line": line_report });
            let inputs = json!({ "p0": pen.p0().to_string(), "p1": pen.p1().to_string(), "line": line });
            Ok((true, report("pencil singular", inputs, r, &["singular members and their points"])?))
        }
        Command::Pencil(PencilCmd::Classify { f, point }) => {
            let poly = parse_poly(f)?;
            let pt = ProjPoint::parse(point)?;
            let t = pencil::classify_point(&poly, &pt)?;
            let r = json!({ "point": pt, "local_type": t });
            Ok((true, report("pencil classify", json!({ "f": f, "point": point }), r, &["node / cusp"])?))
        }
        Command::Mcg(McgCmd::Eval { word }) => {
            let w = McgWord::parse(word)?;
            let m = w.evaluate();
            let r = json!({ "word": w, "matrix": m, "is_identity": m.is_identity(), "trace": crate::json::bigint(&m.trace()) });
            Ok((true, report("mcg eval", json!({ "word": word }), r, &["images of a and b"])?))
        }
        Command::Mcg(McgCmd::Reduce { word }) => {
            let w = McgWord::parse(word)?;
            let red = w.free_reduce();
            let r = json!({ "reduced": red, "length": red.length(), "matrix": red.evaluate() });
            Ok((true, report("mcg reduce", json!({ "word": word }), r, &[])?))
        }
        Command::Mcg(McgCmd::Verify { factorization, types, bound }) => {
            if let Some(ts) = types {
                let parsed: Vec<FiberType> = ts.iter().map(|t| FiberType::parse(t)).collect::<Result<_, _>>()?;
                let b = fibers::euler_budget(&parsed);
                let r = json!({ "types": parsed, "euler": parsed.iter().map(FiberType::euler).collect::<Vec<_>>(), "budget": b });
                let rep = report("mcg verify", json!({ "types": ts }), r, &["Euler budget 12"])?;
                return Ok((b.accepted, rep));
            }
            let spec = factorization.as_deref().ok_or_else(|| Failure("give --factorization or --types".into()))?;
            let f = match spec {
                "@e6" => fibers::e6_factorization(),
                "@i6" => fibers::i6_factorization(),
                path => fibers::Factorization::from_json(&read_input(path)?)?,
            };
            let r = fibers::verify_factorization(&f, *bound);
            let passed = r.passed;
            let rep = report("mcg verify", json!({ "factorization": spec, "bound": bound }), r, &["monodromy factorization"])?;
            Ok((passed, rep))
        }
        Command::Ledger(LedgerCmd::Replay { ledger }) => {
            let l = match ledger.as_str() {
                "@e8" => homology::e8_ledger(),
                "@e6" => homology::e6_ledger(),
                path => Ledger::from_json(&read_input(path)?)?,
            };
            match l.replay() {
                Ok(r) => Ok((true, report("ledger replay", json!({ "ledger": ledger }), r, &["blow-up multiplicities"])?)),
                Err(e @ homology::HomologyError::Ledger { .. }) => {
                    let r = json!({ "error": e.to_string() });
                    Ok((false, report("ledger replay", json!({ "ledger": ledger }), r, &[])?))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Park7(Park7Cmd::Report) => {
            let r = park::park7_report()?;
            let passed = r.passed;
            Ok((passed, report("park7 report", json!({}), r, &["T = P^-1", "K7.w7 functional", "b2 bookkeeping"])?))
        }
    }
}

/// Indented `key: value` text for `--pretty`.
fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object() || e.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        pretty(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli) {
        Ok((passed, rep)) => {
            let v = serde_json::to_value(&rep).expect("reports serialise");
            let text = if cli.pretty {
                let mut s = String::new();
                pretty(&v, 0, &mut s);
                s
            } else {
                serde_json::to_string(&v).expect("reports serialise")
            };
            (if passed { 0 } else { 1 }, text)
        }
        Err(Failure(msg)) => (2, json!({ "error": msg }).to_string()),
    }
}
