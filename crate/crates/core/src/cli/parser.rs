use std::fmt;

use super::lexer::{tokenize, Tok, Token};
use super::{Field, ParseError, SessionConfig};
use crate::multivector::Convention;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    /// Scalar multiplication; one side must evaluate to a scalar.
    Mul,
    Div,
    Wedge,
    /// `A << B = A⌋B`.
    LContr,
    /// `A >> B = A⌟B`.
    RContr,
    Regressive,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Wedge => "^",
            BinOp::LContr => "<<",
            BinOp::RContr => ">>",
            BinOp::Regressive => "&",
        }
    }

    fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Wedge | BinOp::LContr | BinOp::RContr | BinOp::Regressive => 2,
            BinOp::Mul | BinOp::Div => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num {
        value: f64,
        imag: bool,
    },
    /// Indices as written; unsorted lists carry the sorting sign.
    Basis(Vec<usize>),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    /// Bare name argument, e.g. the convention in `conv(hestenes, A, B)`.
    Name(String),
}

/// Name, minimum and maximum arity.
pub const FUNCTIONS: &[(&str, usize, usize)] = &[
    ("lstar", 1, 1),
    ("rstar", 1, 1),
    ("rev", 1, 1),
    ("ginv", 1, 1),
    ("cconj", 1, 1),
    ("check", 1, 1),
    ("grade", 2, 2),
    ("inner", 2, 2),
    ("norm", 1, 1),
    ("isp", 1, 1),
    ("osp", 1, 1),
    ("igrade", 1, 1),
    ("ograde", 1, 1),
    ("bgrade", 1, 1),
    ("tgrade", 1, 1),
    ("simple", 1, 1),
    ("join", 2, 2),
    ("meet", 2, 3),
    ("proj", 2, 2),
    ("regr", 2, 2),
    ("conv", 3, 3),
];

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.prec(),
            Expr::Neg(_) => 4,
            _ => 5,
        }
    }
}

struct Child<'a>(&'a Expr, bool);

impl fmt::Display for Child<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    /// Minimal parentheses; the output parses back to the same tree and never
    /// forms a mixed product chain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num { value, imag } => write!(f, "{value}{}", if *imag { "i" } else { "" }),
            Expr::Basis(idx) => {
                if idx.iter().all(|&i| i <= 9) {
                    write!(f, "e{}", idx.iter().map(|i| i.to_string()).collect::<String>())
                } else {
                    let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                    write!(f, "e{{{}}}", list.join(","))
                }
            }
            Expr::Neg(x) => write!(f, "-{}", Child(x, x.prec() < 4)),
            Expr::Binary(op, l, r) => {
                let p = op.prec();
                let mixed = |e: &Expr| p == 2 && matches!(e, Expr::Binary(o, ..) if o.prec() == 2 && o != op);
                let lp = l.prec() < p || mixed(l);
                let rp = r.prec() <= p;
                if p == 3 {
                    write!(f, "{}{}{}", Child(l, lp), op.symbol(), Child(r, rp))
                } else {
                    write!(f, "{} {} {}", Child(l, lp), op.symbol(), Child(r, rp))
                }
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Expr::Name(s) => f.write_str(s),
        }
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    k: usize,
    cfg: &'a SessionConfig,
    warnings: Vec<String>,
}

pub fn parse(src: &str, cfg: &SessionConfig) -> Result<Expr, ParseError> {
    parse_with_warnings(src, cfg).map(|(e, _)| e)
}

/// Also returns warnings, e.g. for product chains mixing operators.
pub fn parse_with_warnings(src: &str, cfg: &SessionConfig) -> Result<(Expr, Vec<String>), ParseError> {
    let mut p = Parser { toks: tokenize(src)?, k: 0, cfg, warnings: Vec::new() };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(ParseError::new(t.pos, "unexpected token after expression"));
    }
    Ok((e, p.warnings))
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.k]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.k].clone();
        if t.tok != Tok::End {
            self.k += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            Err(ParseError::new(t.pos, format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.products()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(e),
            };
            self.next();
            e = Expr::Binary(op, Box::new(e), Box::new(self.products()?));
        }
    }

    fn products(&mut self) -> Result<Expr, ParseError> {
        let start = self.peek().pos;
        let mut e = self.factor()?;
        let mut first: Option<BinOp> = None;
        let mut warned = false;
        loop {
            let op = match self.peek().tok {
                Tok::Wedge => BinOp::Wedge,
                Tok::LContr => BinOp::LContr,
                Tok::RContr => BinOp::RContr,
                Tok::Vee => BinOp::Regressive,
                _ => return Ok(e),
            };
            self.next();
            match first {
                None => first = Some(op),
                Some(f) if f != op && !warned => {
                    warned = true;
                    self.warnings.push(format!(
                        "column {}: products mixing '{}' and '{}' are evaluated left to right; add parentheses",
                        start + 1,
                        f.symbol(),
                        op.symbol()
                    ));
                }
                _ => {}
            }
            e = Expr::Binary(op, Box::new(e), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(e),
            };
            self.next();
            e = Expr::Binary(op, Box::new(e), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Num { value, imag } => {
                if imag && self.cfg.field == Field::Real {
                    return Err(ParseError::new(t.pos, "imaginary literal in a real session (pass --complex)"));
                }
                Ok(Expr::Num { value, imag })
            }
            Tok::Basis(idx) => {
                if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > self.cfg.n) {
                    return Err(ParseError::new(t.pos, format!("index {bad} out of range 1..={}", self.cfg.n)));
                }
                Ok(Expr::Basis(idx))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.call(name, t.pos),
            Tok::End => Err(ParseError::new(t.pos, "unexpected end of input")),
            _ => Err(ParseError::new(t.pos, "expected a number, basis blade, function call or '('")),
        }
    }

    fn call(&mut self, name: String, pos: usize) -> Result<Expr, ParseError> {
        let &(_, lo, hi) = FUNCTIONS
            .iter()
            .find(|f| f.0 == name)
            .ok_or_else(|| ParseError::new(pos, format!("unknown identifier '{name}'")))?;
        self.expect(Tok::LParen, &format!("'(' after '{name}'"))?;
        let mut args = Vec::new();
        if name == "conv" {
            let t = self.next();
            match t.tok {
                Tok::Ident(c) if Convention::from_name(&c).is_some() => args.push(Expr::Name(c)),
                _ => {
                    let names: Vec<&str> = Convention::ALL.iter().map(|c| c.name()).collect();
                    return Err(ParseError::new(t.pos, format!("expected a convention name: {}", names.join(", "))));
                }
            }
            self.expect(Tok::Comma, "','")?;
        }
        loop {
            args.push(self.expr()?);
            let t = self.next();
            match t.tok {
                Tok::Comma => {}
                Tok::RParen => break,
                _ => return Err(ParseError::new(t.pos, "expected ',' or ')'")),
            }
        }
        if args.len() < lo || args.len() > hi {
            let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
            return Err(ParseError::new(pos, format!("'{name}' takes {want} arguments, got {}", args.len())));
        }
        Ok(Expr::Call(name, args))
    }
}
