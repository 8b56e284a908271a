use super::parser::{BinOp, Expr};
use super::SessionConfig;
use crate::error::Error;
use crate::geometry::project_blade;
use crate::grades::{grade_profile, is_simple};
use crate::multivector::{convention_contract, re, Blade, Convention, Multivector};
use crate::spaces::{inner_space, outer_space, SubspaceBasis};
use crate::star::{self, Orientation};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Mv(Multivector),
    Space(SubspaceBasis),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Algebra(#[from] Error),
    #[error("{0}")]
    Type(String),
}

fn type_err<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError::Type(msg.into()))
}

fn is_scalar(m: &Multivector) -> bool {
    m.terms().all(|(b, _)| b == 0)
}

impl Value {
    fn mv(self, what: &str) -> Result<Multivector, EvalError> {
        match self {
            Value::Mv(m) => Ok(m),
            Value::Space(_) => type_err(format!("{what} expects a multivector, got a subspace")),
            Value::Bool(_) => type_err(format!("{what} expects a multivector, got a boolean")),
        }
    }
}

fn blade(m: Multivector, what: &str) -> Result<Blade, EvalError> {
    Blade::factorized(m).map_err(|e| match e {
        Error::NotSimple => EvalError::Type(format!("{what} needs a blade, got a non-simple multivector")),
        e => EvalError::Algebra(e),
    })
}

fn int_arg(m: &Multivector, what: &str) -> Result<isize, EvalError> {
    let c = m.scalar_part();
    if !is_scalar(m) || c.im != 0.0 || c.re.fract() != 0.0 {
        return type_err(format!("{what} must be an integer"));
    }
    Ok(c.re as isize)
}

pub fn eval(e: &Expr, cfg: &SessionConfig) -> Result<Value, EvalError> {
    let n = cfg.n;
    Ok(match e {
        Expr::Num { value, imag } => {
            let s = if *imag { crate::multivector::Scalar::new(0.0, *value) } else { re(*value) };
            Value::Mv(Multivector::scalar(n, s))
        }
        Expr::Basis(idx) => Value::Mv(Multivector::e(n, idx)?),
        Expr::Neg(x) => Value::Mv(-eval(x, cfg)?.mv("'-'")?),
        Expr::Binary(op, l, r) => {
            let a = eval(l, cfg)?.mv(op_name(*op))?;
            let b = eval(r, cfg)?.mv(op_name(*op))?;
            Value::Mv(binary(*op, &a, &b, cfg)?)
        }
        Expr::Call(name, args) => call(name, args, cfg)?,
        Expr::Name(s) => return type_err(format!("bare name '{s}' is not a value")),
    })
}

fn op_name(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "'+'",
        BinOp::Sub => "'-'",
        BinOp::Mul => "'*'",
        BinOp::Div => "'/'",
        BinOp::Wedge => "'^'",
        BinOp::LContr => "'<<'",
        BinOp::RContr => "'>>'",
        BinOp::Regressive => "'&'",
    }
}

fn binary(op: BinOp, a: &Multivector, b: &Multivector, cfg: &SessionConfig) -> Result<Multivector, EvalError> {
    Ok(match op {
        BinOp::Add => a + b,
        BinOp::Sub => a - b,
        BinOp::Mul => {
            if is_scalar(a) {
                b.scale(a.scalar_part())
            } else if is_scalar(b) {
                a.scale(b.scalar_part())
            } else {
                return type_err("'*' needs a scalar operand; use '^' for the wedge product");
            }
        }
        BinOp::Div => {
            if !is_scalar(b) {
                return type_err("'/' needs a scalar divisor");
            }
            if b.is_zero() {
                return type_err("division by zero");
            }
            a.scale(b.scalar_part().inv())
        }
        BinOp::Wedge => a.wedge(b)?,
        BinOp::LContr => a.lcontr(b)?,
        BinOp::RContr => a.rcontr(b)?,
        BinOp::Regressive => star::regressive(a, b, &orientation(cfg)?)?,
    })
}

fn orientation(cfg: &SessionConfig) -> Result<Orientation, EvalError> {
    Ok(Orientation::new(cfg.n, cfg.orientation)?)
}

fn call(name: &str, args: &[Expr], cfg: &SessionConfig) -> Result<Value, EvalError> {
    let what = format!("'{name}'");
    let mv_arg = |k: usize| -> Result<Multivector, EvalError> { eval(&args[k], cfg)?.mv(&what) };
    let count = |x: usize| Value::Mv(Multivector::scalar(cfg.n, x as f64));
    Ok(match name {
        "lstar" => Value::Mv(orientation(cfg)?.lstar(&mv_arg(0)?)?),
        "rstar" => Value::Mv(orientation(cfg)?.rstar(&mv_arg(0)?)?),
        "rev" => Value::Mv(mv_arg(0)?.reversion()),
        "ginv" => Value::Mv(mv_arg(0)?.grade_involution()),
        "cconj" => Value::Mv(mv_arg(0)?.clifford_conjugate()),
        "check" => Value::Mv(mv_arg(0)?.check()),
        "grade" => {
            let k = int_arg(&mv_arg(1)?, "grade index")?;
            Value::Mv(mv_arg(0)?.grade_project(k))
        }
        "inner" => Value::Mv(Multivector::scalar(cfg.n, mv_arg(0)?.inner(&mv_arg(1)?)?)),
        "norm" => Value::Mv(Multivector::scalar(cfg.n, mv_arg(0)?.norm())),
        "isp" => Value::Space(inner_space(&mv_arg(0)?)),
        "osp" => Value::Space(outer_space(&mv_arg(0)?)),
        "igrade" => count(grade_profile(&mv_arg(0)?).inner),
        "ograde" => count(grade_profile(&mv_arg(0)?).outer),
        "bgrade" | "tgrade" => {
            let g = grade_profile(&mv_arg(0)?);
            match if name == "bgrade" { g.bottom } else { g.top } {
                Some(x) => count(x),
                None => return type_err(format!("{what} is undefined for zero")),
            }
        }
        "simple" => Value::Bool(is_simple(&mv_arg(0)?)),
        "join" => {
            let a = blade(mv_arg(0)?, &what)?;
            let b = blade(mv_arg(1)?, &what)?;
            Value::Mv(star::join(&a, &b)?.into_mv())
        }
        "meet" => {
            let a = blade(mv_arg(0)?, &what)?;
            let b = blade(mv_arg(1)?, &what)?;
            let j = if args.len() == 3 { blade(mv_arg(2)?, &what)? } else { star::join(&a, &b)? };
            Value::Mv(star::meet(&a, &b, &j)?)
        }
        "proj" => Value::Mv(project_blade(&mv_arg(0)?, &mv_arg(1)?)?),
        "regr" => Value::Mv(star::regressive(&mv_arg(0)?, &mv_arg(1)?, &orientation(cfg)?)?),
        "conv" => {
            let Expr::Name(c) = &args[0] else {
                return type_err("'conv' expects a convention name first");
            };
            let conv = Convention::from_name(c).ok_or_else(|| EvalError::Type(format!("unknown convention '{c}'")))?;
            Value::Mv(convention_contract(conv, &mv_arg(1)?, &mv_arg(2)?)?)
        }
        _ => return type_err(format!("unknown function {what}")),
    })
}
