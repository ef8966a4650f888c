//! Command dispatch for the `morita` binary.
//!
//! [`run`] parses an argument vector, runs one decision and renders a
//! [`Report`] as text or JSON. Every witness is checked against the library
//! before it is printed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use morita_core::cherednik::{cherednik_decide, CherednikStatus};
use morita_core::exact::{format_rational, parse_rational};
use morita_core::gwa::{apply_group_element, gwa_decide, GwaGroupElement, GwaRoots};
use morita_core::repmod::{
    check_relations, reflect_module, simple_at, Field, PrimeField, Rationals,
};
use morita_core::roots::{classify_parameter, finite_roots};
use morita_core::weyl::{
    apply_word, canonical, decide_product, diagram_automorphisms, same_orbit, simple_reflection_s,
    WeylWord,
};
use morita_core::{Error, ParamVector, QuiverData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "morita",
    version,
    about = "Morita equivalence decisions for symplectic reflection algebra parameters"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Level, commutative, regular and generic flags of a parameter.
    Classify {
        quiver: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Canonical orbit representative and the word reaching it.
    Canon {
        quiver: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Are two parameters in one extended affine Weyl group orbit?
    Orbit {
        quiver: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        other: String,
    },
    /// Orbit decision for products, e.g. "A3:1,0,0;A2:1,0".
    OrbitProduct {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Generalized Weyl algebra decision on two root lists.
    GwaDecide {
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(allow_hyphen_values = true)]
        t_prime: String,
    },
    /// Applies reflection functors to a simple module, printing dimension vectors.
    ReflectModule {
        quiver: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        /// Vertex of the starting simple module (needs λ at that vertex to be 0).
        #[arg(long)]
        simple: usize,
        /// Vertices to reflect at, in order.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
        /// Work over F_p instead of the rationals.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Rational Cherednik algebra decision for S_n.
    Cherednik {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        cprime: String,
    },
    /// Vertices, arrows, δ and symmetry data of an affine quiver.
    QuiverInfo { quiver: String },
}

/// The output schema shared by all commands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub status: String,
    pub witness: Option<String>,
    pub diagnostics: Vec<String>,
    pub result: Value,
}

impl Report {
    fn new(command: &str, inputs: &[(&str, String)]) -> Self {
        Report {
            command: command.to_string(),
            inputs: inputs
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            status: "ok".into(),
            witness: None,
            diagnostics: Vec::new(),
            result: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "  {k}: {v}");
        }
        let _ = writeln!(s, "status: {}", self.status);
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {w}");
        }
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                let shown = match v {
                    Value::String(x) => x.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(s, "{k}: {shown}");
            }
        }
        for d in &self.diagnostics {
            let _ = writeln!(s, "note: {d}");
        }
        s
    }
}

/// What the binary should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn check(ok: bool, what: impl FnOnce() -> String) -> Run<()> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify(what()))
    }
}

/// Errors that are verdicts about the input rather than usage mistakes.
fn unsupported(report: &mut Report, e: &Error) -> bool {
    if matches!(
        e,
        Error::UnsupportedType(_) | Error::UnsupportedParameter(_)
    ) {
        report.status = "unsupported".into();
        report.diagnostics.push(e.to_string());
        true
    } else {
        false
    }
}

fn quiver(name: &str) -> Run<QuiverData> {
    name.parse::<QuiverData>().map_err(Failure::from)
}

/// `None` when the name is well formed but not a supported type.
fn quiver_or_unsupported(r: &mut Report, name: &str) -> Run<Option<QuiverData>> {
    match name.parse::<QuiverData>() {
        Ok(q) => Ok(Some(q)),
        Err(e) if unsupported(r, &e) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn params(q: &QuiverData, text: &str) -> Run<ParamVector> {
    let v = ParamVector::parse(text)?;
    if v.len() != q.num_vertices() {
        return Err(Error::Dimension {
            expected: q.num_vertices(),
            got: v.len(),
        }
        .into());
    }
    Ok(v)
}

fn status(equivalent: bool) -> String {
    if equivalent {
        "equivalent"
    } else {
        "not-equivalent"
    }
    .into()
}

fn classify(q_name: &str, lambda: &str) -> Run<Report> {
    let mut r = Report::new(
        "classify",
        &[("quiver", q_name.into()), ("lambda", lambda.into())],
    );
    let Some(q) = quiver_or_unsupported(&mut r, q_name)? else {
        return Ok(r);
    };
    let l = params(&q, lambda)?;
    let c = classify_parameter(&q, &l);
    r.result = json!({
        "level": c.level.to_string(),
        "commutative": c.commutative,
        "regular": c.regular,
        "generic": c.generic,
    });
    Ok(r)
}

fn canon(q_name: &str, lambda: &str) -> Run<Report> {
    let mut r = Report::new(
        "canon",
        &[("quiver", q_name.into()), ("lambda", lambda.into())],
    );
    let Some(q) = quiver_or_unsupported(&mut r, q_name)? else {
        return Ok(r);
    };
    let l = params(&q, lambda)?;
    let (c, w) = match canonical(&q, &l) {
        Ok(x) => x,
        Err(e) if unsupported(&mut r, &e) => return Ok(r),
        Err(e) => return Err(e.into()),
    };
    let reparsed = WeylWord::parse(&q, &w.to_string())?;
    check(apply_word(&q, &reparsed, &l)? == c, || {
        format!("word {w} does not reach {c}")
    })?;
    r.witness = Some(w.to_string());
    r.result = json!({ "canonical": c.to_string(), "word_length": w.len() });
    Ok(r)
}

fn orbit(q_name: &str, lambda: &str, other: &str) -> Run<Report> {
    let mut r = Report::new(
        "orbit",
        &[
            ("quiver", q_name.into()),
            ("lambda", lambda.into()),
            ("lambda_prime", other.into()),
        ],
    );
    let Some(q) = quiver_or_unsupported(&mut r, q_name)? else {
        return Ok(r);
    };
    let l = params(&q, lambda)?;
    let l2 = params(&q, other)?;
    let v = match same_orbit(&q, &l, &l2) {
        Ok(v) => v,
        Err(e) if unsupported(&mut r, &e) => return Ok(r),
        Err(e) => return Err(e.into()),
    };
    r.status = status(v.equivalent);
    if let Some(w) = &v.witness {
        let reparsed = WeylWord::parse(&q, &w.to_string())?;
        check(apply_word(&q, &reparsed, &l)? == l2, || {
            format!("witness {w} does not map λ to λ'")
        })?;
        r.witness = Some(w.to_string());
    }
    match &v.canonical {
        Some((c1, c2)) => {
            r.result = json!({ "canonical": c1.to_string(), "canonical_prime": c2.to_string() });
        }
        None => r.diagnostics.push(format!(
            "levels differ: {} vs {}",
            q.level(&l),
            q.level(&l2)
        )),
    }
    Ok(r)
}

fn parse_factors(text: &str) -> Run<Vec<(QuiverData, ParamVector)>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|f| {
            let (name, vec) = f
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("factor {f:?} is not QUIVER:λ")))?;
            let q = quiver(name.trim())?;
            let l = params(&q, vec)?;
            Ok((q, l))
        })
        .collect()
}

fn orbit_product(left: &str, right: &str) -> Run<Report> {
    let mut r = Report::new(
        "orbit-product",
        &[("left", left.into()), ("right", right.into())],
    );
    let a = parse_factors(left)?;
    let b = parse_factors(right)?;
    let v = match decide_product(&a, &b) {
        Ok(v) => v,
        Err(e) if unsupported(&mut r, &e) => return Ok(r),
        Err(e) => return Err(e.into()),
    };
    r.status = status(v.equivalent);
    if let Some(matching) = &v.matching {
        let mut parts = Vec::new();
        for (k, (j, w)) in matching.iter().enumerate() {
            let (q, l) = &a[k];
            let reparsed = WeylWord::parse(q, &w.to_string())?;
            check(apply_word(q, &reparsed, l)? == b[*j].1, || {
                format!("factor {k} is not sent to factor {j} by {w}")
            })?;
            parts.push(format!("{k}->{j}: {w}"));
        }
        r.witness = Some(parts.join("; "));
    }
    Ok(r)
}

fn gwa(t: &str, t_prime: &str) -> Run<Report> {
    let mut r = Report::new(
        "gwa-decide",
        &[("t", t.into()), ("t_prime", t_prime.into())],
    );
    let a = GwaRoots::parse(t)?;
    let b = GwaRoots::parse(t_prime)?;
    let v = gwa_decide(&a.0, &b.0);
    r.status = status(v.equivalent);
    if let Some(g) = &v.witness {
        let reparsed = GwaGroupElement::parse(&g.to_string(), a.len())?;
        check(apply_group_element(&reparsed, &a)? == b, || {
            format!("witness {g} does not map t to t'")
        })?;
        r.witness = Some(g.to_string());
    }
    if let Some(reason) = &v.reason {
        r.diagnostics.push(reason.clone());
    }
    for (name, ok) in [("t", v.distinct.0), ("t'", v.distinct.1)] {
        if !ok {
            r.diagnostics
                .push(format!("{name} has roots differing by an integer"));
        }
    }
    Ok(r)
}

fn reflect_chain<F: Field>(
    q: &QuiverData,
    lambda: &ParamVector,
    simple: usize,
    at: &[usize],
    field: F,
) -> Run<(Value, Vec<String>)> {
    let mut m = simple_at(q, field, lambda, simple)?;
    let mut l = lambda.clone();
    let mut steps = vec![json!({ "lambda": l.to_string(), "dims": m.dim_vector().to_string() })];
    let mut notes = Vec::new();
    for &i in at {
        match reflect_module(q, &l, i, &m) {
            Ok((l2, m2)) => {
                let expected = simple_reflection_s(q, i, &m.dim_vector())?;
                check(m2.dim_vector() == expected, || {
                    format!("dimension vector at step {i} is not s_i of the previous one")
                })?;
                check(check_relations(q, &l2, &m2)?.holds, || {
                    format!("relations fail after reflecting at {i}")
                })?;
                l = l2;
                m = m2;
                steps.push(json!({ "vertex": i, "lambda": l.to_string(), "dims": m.dim_vector().to_string() }));
            }
            Err(Error::IdentityFunctor(_)) => {
                notes.push(format!(
                    "reflection at {i} skipped: parameter entry is zero"
                ));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((Value::Array(steps), notes))
}

fn reflect(
    q_name: &str,
    lambda: &str,
    simple: usize,
    at: &[usize],
    prime: Option<u64>,
) -> Run<Report> {
    let at_text: Vec<String> = at.iter().map(|i| i.to_string()).collect();
    let mut inputs = vec![
        ("quiver", q_name.to_string()),
        ("lambda", lambda.to_string()),
        ("simple", simple.to_string()),
        ("at", at_text.join(",")),
    ];
    if let Some(p) = prime {
        inputs.push(("prime", p.to_string()));
    }
    let mut r = Report::new("reflect-module", &inputs);
    let q = quiver(q_name)?;
    let l = params(&q, lambda)?;
    let (steps, notes) = match prime {
        Some(p) => reflect_chain(&q, &l, simple, at, PrimeField::new(p)?)?,
        None => reflect_chain(&q, &l, simple, at, Rationals)?,
    };
    r.result =
        json!({ "field": prime.map_or("Q".to_string(), |p| format!("F_{p}")), "steps": steps });
    r.diagnostics = notes;
    Ok(r)
}

fn cherednik(n: u32, c: &str, c_prime: &str) -> Run<Report> {
    let mut r = Report::new(
        "cherednik",
        &[
            ("n", n.to_string()),
            ("c", c.into()),
            ("c_prime", c_prime.into()),
        ],
    );
    let a = parse_rational(c)?;
    let b = parse_rational(c_prime)?;
    let v = cherednik_decide(n, &a, &b)?;
    r.status = v.status.to_string();
    r.diagnostics.push(v.reason.clone());
    if let Some(cert) = &v.certificate {
        check(cert.verify(n)?, || {
            format!("certificate {cert} fails re-verification")
        })?;
        r.witness = Some(cert.to_string());
        r.result = json!({
            "prime": cert.p,
            "reduced": [format_rational(&cert.c), format_rational(&cert.c_prime)],
            "images": [cert.x, cert.x_prime],
            "aspherical_images": cert.aspherical_images,
            "component": cert.component_string(),
        });
    } else if v.status == CherednikStatus::Equivalent {
        r.diagnostics.push("no certificate was produced".into());
    }
    Ok(r)
}

fn quiver_info(q_name: &str) -> Run<Report> {
    let mut r = Report::new("quiver-info", &[("quiver", q_name.into())]);
    let Some(q) = quiver_or_unsupported(&mut r, q_name)? else {
        return Ok(r);
    };
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|(t, h)| format!("{t}->{h}"))
        .collect();
    r.result = json!({
        "vertices": q.num_vertices(),
        "arrows": arrows,
        "delta": q.delta().to_string(),
        "diagram_automorphisms": diagram_automorphisms(&q).len(),
        "finite_roots": finite_roots(&q).len(),
    });
    Ok(r)
}

fn dispatch(command: &Command) -> Run<Report> {
    match command {
        Command::Classify { quiver, lambda } => classify(quiver, lambda),
        Command::Canon { quiver, lambda } => canon(quiver, lambda),
        Command::Orbit {
            quiver,
            lambda,
            other,
        } => orbit(quiver, lambda, other),
        Command::OrbitProduct { left, right } => orbit_product(left, right),
        Command::GwaDecide { t, t_prime } => gwa(t, t_prime),
        Command::ReflectModule {
            quiver,
            lambda,
            simple,
            at,
            prime,
        } => reflect(quiver, lambda, *simple, at, *prime),
        Command::Cherednik { n, c, cprime } => cherednik(*n, c, cprime),
        Command::QuiverInfo { quiver } => quiver_info(quiver),
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => Outcome {
            stdout: match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            },
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(Failure::Usage(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        },
        Err(Failure::Verify(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("internal error: self-verification failed: {msg}\n"),
            code: EXIT_VERIFY,
        },
    }
}
