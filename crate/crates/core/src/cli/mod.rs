//! Command-line front end: a small expression language over multivectors and
//! analysis subcommands with text or JSON output.
//!
//! Exit status is 0 on success, 1 when evaluation fails and 2 for usage or
//! parse errors.

mod eval;
mod lexer;
mod output;
mod parser;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use eval::{eval, EvalError, Value};
pub use output::{mv_from_json, mv_to_json, parse_json_mv, JsonMultivector, JsonTerm};
pub use parser::{parse, parse_with_warnings, BinOp, Expr, FUNCTIONS};

use crate::fock::supercommutator_closed;
use crate::geometry::{asym_angle_cos, principal_angles};
use crate::grades::{cartan_residual, grade_profile, is_simple, plucker_residuals};
use crate::multiindex::{full_bits, graded_lex_cmp, MultiIndex};
use crate::multivector::{Blade, Multivector, Scalar, DEFAULT_TOL};
use crate::spaces::{carve_minimal, classify_carving, classify_factorization, factorize_maximal, outer_space};
use output::{format_real, space_json, space_text, value_json, value_text};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("parse error at column {}: {msg}", .pos + 1)]
pub struct ParseError {
    /// Character offset into the source.
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionConfig {
    pub n: usize,
    pub field: Field,
    /// Unit scalar `u` in `Ω = u·e₁…ₙ`.
    pub orientation: Scalar,
    /// Output cutoff for coefficients.
    pub tol: f64,
    pub output: OutputFormat,
}

impl SessionConfig {
    pub fn new(n: usize, field: Field) -> Result<Self, String> {
        if n == 0 || n > crate::multiindex::MAX_DIM {
            return Err(format!("dimension {n} outside 1..={}", crate::multiindex::MAX_DIM));
        }
        Ok(SessionConfig { n, field, orientation: Scalar::new(1.0, 0.0), tol: DEFAULT_TOL, output: OutputFormat::Text })
    }

    pub fn with_orientation(mut self, u: Scalar) -> Result<Self, String> {
        if (u.norm() - 1.0).abs() > 1e-9 {
            return Err(format!("orientation {} is not a unit scalar", crate::multivector::format_scalar(u)));
        }
        if self.field == Field::Real && u.im != 0.0 {
            return Err("a real session needs orientation 1 or -1".into());
        }
        self.orientation = u;
        Ok(self)
    }
}

#[derive(Parser, Debug)]
#[command(name = "extalg", version, about = "Exterior algebra calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SessionArgs {
    /// Ambient dimension.
    #[arg(short = 'n', long = "dim")]
    n: usize,
    /// Complex coefficients; the default is real.
    #[arg(long)]
    complex: bool,
    /// Unit scalar u of the orientation element u·e1…n, e.g. -1 or 1i.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    orient: String,
    /// Result coefficients at or below this magnitude are dropped.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression ("-" reads it from stdin).
    Eval {
        #[command(flatten)]
        session: SessionArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Inner and outer spaces and the grade profile.
    Spaces {
        #[command(flatten)]
        session: SessionArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Maximal factorization M = B ^ N.
    Factorize {
        #[command(flatten)]
        session: SessionArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Minimal carving M = N << B.
    Carve {
        #[command(flatten)]
        session: SessionArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Principal angles and the asymmetric angle between two blades.
    Angles {
        #[command(flatten)]
        session: SessionArgs,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Simplicity verdict with Plücker and Cartan residuals.
    Simple {
        #[command(flatten)]
        session: SessionArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Supercommutator of a_I† and a_J applied to e_K (every K when omitted).
    Scom {
        /// Ambient dimension.
        #[arg(short = 'n', long = "dim")]
        n: usize,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Increasing multi-index such as 2347, e{3,10} or {} for the empty one.
        i: String,
        /// Multi-index of the annihilation operator.
        j: String,
        /// Basis blade to apply to; every blade in graded order when omitted.
        k: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Parse { src: String, err: ParseError },
    Eval(String),
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Eval(e.to_string())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Eval(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    /// `-` means the whole of stdin.
    fn source(&mut self, arg: &str) -> Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_used {
            return Err(Failure::Usage("stdin can supply only one expression".into()));
        }
        self.stdin_used = true;
        let mut s = String::new();
        self.stdin.read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(s.trim().to_string())
    }

    fn line(&mut self, s: &str) {
        let _ = writeln!(self.out, "{s}");
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut io = Io { stdin, stdin_used: false, out, err };
    match dispatch(cli.command, &mut io) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.err, "usage error: {msg}");
            2
        }
        Err(Failure::Parse { src, err }) => {
            let _ = writeln!(io.err, "{err}");
            let _ = writeln!(io.err, "  {src}");
            let _ = writeln!(io.err, "  {}^", " ".repeat(err.pos));
            2
        }
        Err(Failure::Eval(msg)) => {
            let _ = writeln!(io.err, "evaluation error: {msg}");
            1
        }
    }
}

fn session(args: &SessionArgs) -> Result<SessionConfig, Failure> {
    let field = if args.complex { Field::Complex } else { Field::Real };
    let mut cfg = SessionConfig::new(args.n, field).map_err(Failure::Usage)?;
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(Failure::Usage("--tol must be non-negative".into()));
    }
    cfg.tol = args.tol;
    cfg.output = if args.json { OutputFormat::Json } else { OutputFormat::Text };
    let u = orientation_scalar(&args.orient)?;
    cfg.with_orientation(u).map_err(Failure::Usage)
}

/// Evaluates the `--orient` argument as a constant scalar expression.
fn orientation_scalar(src: &str) -> Result<Scalar, Failure> {
    let cfg = SessionConfig::new(1, Field::Complex).expect("valid");
    let bad = |m: String| Failure::Usage(format!("--orient: {m}"));
    let e = parse(src, &cfg).map_err(|e| bad(e.to_string()))?;
    match eval(&e, &cfg).map_err(|e| bad(e.to_string()))? {
        Value::Mv(m) if m.terms().all(|(b, _)| b == 0) => Ok(m.scalar_part()),
        _ => Err(bad("expected a scalar".into())),
    }
}

fn evaluate(src: &str, cfg: &SessionConfig, io: &mut Io) -> Result<Value, Failure> {
    let (e, warnings) = parse_with_warnings(src, cfg).map_err(|err| Failure::Parse { src: src.to_string(), err })?;
    for w in warnings {
        let _ = writeln!(io.err, "warning: {w}");
    }
    Ok(match eval(&e, cfg)? {
        Value::Mv(m) => Value::Mv(m.with_tol(cfg.tol)),
        v => v,
    })
}

fn evaluate_mv(arg: &str, cfg: &SessionConfig, io: &mut Io) -> Result<Multivector, Failure> {
    let src = io.source(arg)?;
    match evaluate(&src, cfg, io)? {
        Value::Mv(m) => Ok(m),
        _ => Err(Failure::Eval("expected a multivector".into())),
    }
}

fn emit_json(io: &mut Io, v: serde_json::Value) {
    io.line(&serde_json::to_string(&v).expect("plain data"));
}

fn mv_json(m: &Multivector, cfg: &SessionConfig) -> serde_json::Value {
    serde_json::to_value(mv_to_json(m, cfg.field)).expect("plain data")
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<(), Failure> {
    match cmd {
        Command::Eval { session: s, expr } => {
            let cfg = session(&s)?;
            let src = io.source(&expr)?;
            let v = evaluate(&src, &cfg, io)?;
            match cfg.output {
                OutputFormat::Json => emit_json(io, value_json(&v, &cfg)),
                OutputFormat::Text => io.line(&value_text(&v, &cfg)),
            }
        }
        Command::Spaces { session: s, expr } => {
            let cfg = session(&s)?;
            let m = evaluate_mv(&expr, &cfg, io)?;
            spaces_cmd(&m, &cfg, io);
        }
        Command::Factorize { session: s, expr } => {
            let cfg = session(&s)?;
            let m = evaluate_mv(&expr, &cfg, io)?;
            let f = factorize_maximal(&m)?;
            let flags = classify_factorization(&m, f.b.mv(), &f.n)?;
            let b = f.b.mv().clone().with_tol(cfg.tol);
            let n = f.n.with_tol(cfg.tol);
            let named = [
                ("efficient", flags.efficient),
                ("orthogonal", flags.orthogonal),
                ("maximal", flags.maximal),
                ("optimal", flags.optimal),
            ];
            report_split(io, &cfg, &b, &n, f.residual, &named);
        }
        Command::Carve { session: s, expr } => {
            let cfg = session(&s)?;
            let m = evaluate_mv(&expr, &cfg, io)?;
            let c = carve_minimal(&m)?;
            let flags = classify_carving(&m, c.b.mv(), &c.n)?;
            let b = c.b.mv().clone().with_tol(cfg.tol);
            let n = c.n.with_tol(cfg.tol);
            let named = [
                ("efficient", flags.efficient),
                ("internal", flags.internal),
                ("minimal", flags.minimal),
                ("optimal", flags.optimal),
            ];
            report_split(io, &cfg, &b, &n, c.residual, &named);
        }
        Command::Angles { session: s, a, b } => {
            let cfg = session(&s)?;
            let ma = evaluate_mv(&a, &cfg, io)?;
            let mb = evaluate_mv(&b, &cfg, io)?;
            angles_cmd(&ma, &mb, &cfg, io)?;
        }
        Command::Simple { session: s, expr } => {
            let cfg = session(&s)?;
            let m = evaluate_mv(&expr, &cfg, io)?;
            simple_cmd(&m, &cfg, io)?;
        }
        Command::Scom { n, json, i, j, k } => {
            SessionConfig::new(n, Field::Real).map_err(Failure::Usage)?;
            let i = multi_index_arg(&i, n)?;
            let j = multi_index_arg(&j, n)?;
            let ks: Vec<MultiIndex> = match k {
                Some(k) => vec![multi_index_arg(&k, n)?],
                None => {
                    let mut all: Vec<u32> = (0..=full_bits(n)).collect();
                    all.sort_by(|a, b| graded_lex_cmp(*a, *b));
                    all.into_iter().map(|b| MultiIndex::from_bits(b, n).expect("in range")).collect()
                }
            };
            let single = ks.len() == 1;
            let mut rows = Vec::new();
            for k in ks {
                let r = supercommutator_closed(&i, &j, &k);
                if json {
                    rows.push(json!({
                        "k": k.indices(),
                        "sign": r.map_or(0, |t| t.0),
                        "indices": r.map(|t| t.1.indices()),
                    }));
                } else {
                    let text = match r {
                        None => "0".to_string(),
                        Some((s, idx)) => format!("{}{}", if s > 0 { "+" } else { "-" }, idx),
                    };
                    io.line(&if single { text } else { format!("{k}: {text}") });
                }
            }
            if json {
                emit_json(io, json!({"dimension": n, "i": i.indices(), "j": j.indices(), "results": rows}));
            }
        }
    }
    Ok(())
}

/// `2347`, `e2347`, `{10,2,3}`, `e{10,2,3}`; `{}` is the empty index.
/// Indices must increase.
fn multi_index_arg(s: &str, n: usize) -> Result<MultiIndex, Failure> {
    let bad = |m: String| Failure::Usage(format!("multi-index '{s}': {m}"));
    let body = s.trim().strip_prefix('e').unwrap_or(s.trim());
    let idx: Vec<usize> = if let Some(inner) = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
        let inner = inner.trim();
        if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad(format!("'{t}' is not an index"))))
                .collect::<Result<_, _>>()?
        }
    } else if !body.is_empty() && body.chars().all(|c| c.is_ascii_digit()) {
        body.chars().map(|c| c.to_digit(10).expect("digit") as usize).collect()
    } else {
        return Err(bad("expected digits or a braced list".into()));
    };
    if !idx.windows(2).all(|w| w[0] < w[1]) {
        return Err(bad("indices must be strictly increasing".into()));
    }
    MultiIndex::from_indices(&idx, n).map_err(|e| bad(e.to_string()))
}

fn spaces_cmd(m: &Multivector, cfg: &SessionConfig, io: &mut Io) {
    let g = grade_profile(m);
    let isp = crate::spaces::inner_space(m);
    let osp = outer_space(m);
    if cfg.output == OutputFormat::Json {
        emit_json(
            io,
            json!({
                "dimension": cfg.n,
                "field": cfg.field,
                "inner_space": space_json(&isp),
                "outer_space": space_json(&osp),
                "grades": {"inner": g.inner, "bottom": g.bottom, "top": g.top, "outer": g.outer},
            }),
        );
        return;
    }
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    io.line(&format!("inner space: dim {}, {}", isp.dim(), space_text(&isp, cfg.tol)));
    io.line(&format!("outer space: dim {}, {}", osp.dim(), space_text(&osp, cfg.tol)));
    io.line(&format!("grades: inner {}, bottom {}, top {}, outer {}", g.inner, opt(g.bottom), opt(g.top), g.outer));
}

fn report_split(
    io: &mut Io,
    cfg: &SessionConfig,
    b: &Multivector,
    n: &Multivector,
    residual: f64,
    flags: &[(&str, bool)],
) {
    if cfg.output == OutputFormat::Json {
        let fl: serde_json::Map<String, serde_json::Value> =
            flags.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        emit_json(
            io,
            json!({"dimension": cfg.n, "field": cfg.field, "blade": mv_json(b, cfg), "factor": mv_json(n, cfg), "residual": residual, "flags": fl}),
        );
        return;
    }
    io.line(&format!("B = {b}"));
    io.line(&format!("N = {n}"));
    io.line(&format!("residual: {residual:.3e}"));
    let fl: Vec<String> = flags.iter().map(|(k, v)| format!("{k} {}", if *v { "yes" } else { "no" })).collect();
    io.line(&format!("flags: {}", fl.join(", ")));
}

fn angles_cmd(ma: &Multivector, mb: &Multivector, cfg: &SessionConfig, io: &mut Io) -> Result<(), Failure> {
    let blade = |m: &Multivector, name: &str| -> Result<Blade, Failure> {
        Blade::factorized(m.clone()).map_err(|e| match e {
            crate::Error::NotSimple => Failure::Eval(format!("{name} is not a blade")),
            e => Failure::Eval(e.to_string()),
        })
    };
    let a = blade(ma, "A")?;
    let b = blade(mb, "B")?;
    let (va, vb) = (outer_space(ma), outer_space(mb));
    let pd = principal_angles(cfg.n, va.columns(), vb.columns())?;
    let (oriented, unoriented) = asym_angle_cos(&a, &b)?;
    let contraction = ma.lcontr(mb)?.norm();
    let predicted = ma.norm() * mb.norm() * unoriented;
    let partial = !ma.is_zero() && crate::geometry::partially_orthogonal(&va, &vb);
    if cfg.output == OutputFormat::Json {
        emit_json(
            io,
            json!({
                "dimension": cfg.n,
                "cosines": pd.cosines,
                "angles": pd.angles(),
                "cos_oriented": {"re": oriented.re, "im": oriented.im},
                "cos_unoriented": unoriented,
                "contraction_norm": contraction,
                "norm_product_cos": predicted,
                "partially_orthogonal": partial,
            }),
        );
        return Ok(());
    }
    let list = |xs: &[f64]| {
        if xs.is_empty() {
            "-".to_string()
        } else {
            xs.iter().map(|x| format_real(*x)).collect::<Vec<_>>().join(", ")
        }
    };
    io.line(&format!("principal cosines: {}", list(&pd.cosines)));
    io.line(&format!("principal angles: {}", list(&pd.angles())));
    io.line(&format!("cos oriented: {}", crate::multivector::format_scalar(oriented)));
    io.line(&format!("cos unoriented: {}", format_real(unoriented)));
    io.line(&format!("|A << B| = {}", format_real(contraction)));
    io.line(&format!("|A| |B| cos = {}", format_real(predicted)));
    io.line(&format!("partially orthogonal: {partial}"));
    Ok(())
}

fn simple_cmd(m: &Multivector, cfg: &SessionConfig, io: &mut Io) -> Result<(), Failure> {
    let simple = is_simple(m);
    let homogeneous = m.is_zero() || m.homogeneous_grade().is_some();
    let (plucker, cartan) = if homogeneous {
        let p = plucker_residuals(m)?.iter().map(|r| r.value.norm()).fold(0.0, f64::max);
        (Some(p), Some(cartan_residual(m)?))
    } else {
        (None, None)
    };
    if cfg.output == OutputFormat::Json {
        emit_json(
            io,
            json!({"dimension": cfg.n, "simple": simple, "homogeneous": homogeneous, "plucker_residual": plucker, "cartan_residual": cartan}),
        );
        return Ok(());
    }
    let verdict = if simple { "simple" } else { "non-simple" };
    match (plucker, cartan) {
        (Some(p), Some(c)) => {
            io.line(&format!("{verdict}; plucker residual {}; cartan residual {}", format_real(p), format_real(c)))
        }
        _ => io.line(&format!("{verdict}; not homogeneous")),
    }
    Ok(())
}

/// Result of [`run`] with captured output.
#[derive(Clone, Debug, PartialEq)]
pub struct Transcript {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// [`run`] with in-memory streams; `args` excludes the program name.
pub fn run_captured(args: &[&str], stdin: &str) -> Transcript {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let full = std::iter::once("extalg").chain(args.iter().copied());
    let code = run(full, &mut input, &mut out, &mut err);
    Transcript {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}
