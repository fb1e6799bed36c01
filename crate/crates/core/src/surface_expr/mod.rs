//! Closed-form surface definitions `F = (f¹, f², f³, f⁴)(u, v)`.
//!
//! Components are parsed from text into an [`Expr`] tree and evaluated as
//! exact 2-jets. Surfaces may also be read from a JSON object
//! `{name, f1, f2, f3, f4, domain: [u0, u1, v0, v1]}`.

mod jet;
mod parser;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use jet::Jet2;
pub use parser::{parse_expr, parse_list};

use crate::linalg4::Vec4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at column {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("{context} takes {expected} argument(s), found {found}")]
    Arity {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown identifier '{name}' at column {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("domain error in '{subexpr}': {reason}")]
    Domain { subexpr: String, reason: String },
    #[error("invalid surface definition: {0}")]
    InvalidDefinition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedConst {
    Pi,
    E,
}

impl NamedConst {
    pub fn value(self) -> f64 {
        match self {
            NamedConst::Pi => std::f64::consts::PI,
            NamedConst::E => std::f64::consts::E,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
    Atan,
}

impl Func {
    const ALL: [(Func, &'static str); 9] = [
        (Func::Sin, "sin"),
        (Func::Cos, "cos"),
        (Func::Tan, "tan"),
        (Func::Exp, "exp"),
        (Func::Log, "log"),
        (Func::Sqrt, "sqrt"),
        (Func::Sinh, "sinh"),
        (Func::Cosh, "cosh"),
        (Func::Atan, "atan"),
    ];

    pub fn from_name(name: &str) -> Option<Func> {
        Self::ALL.iter().find(|(_, n)| *n == name).map(|(f, _)| *f)
    }

    pub fn name(self) -> &'static str {
        Self::ALL
            .iter()
            .find(|(f, _)| *f == self)
            .map(|(_, n)| *n)
            .expect("every function is named")
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Exp => x.exp(),
            Func::Log => x.ln(),
            Func::Sqrt => x.sqrt(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Atan => x.atan(),
        }
    }
}

/// Expression tree for one surface component.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(Variable),
    Num(f64),
    Const(NamedConst),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Value of a variable-free expression, `None` if it mentions `u` or `v`.
    pub fn const_value(&self) -> Option<f64> {
        Some(match self {
            Expr::Var(_) => return None,
            Expr::Num(x) => *x,
            Expr::Const(c) => c.value(),
            Expr::Neg(a) => -a.const_value()?,
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.const_value()?, b.const_value()?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, a) => f.apply(a.const_value()?),
        })
    }

    fn domain_error(&self, reason: impl Into<String>) -> ExprError {
        ExprError::Domain {
            subexpr: self.to_string(),
            reason: reason.into(),
        }
    }

    /// Exact value, first and second partials at `(u, v)`.
    pub fn eval_jet2(&self, u: f64, v: f64) -> Result<Jet2, ExprError> {
        let j = match self {
            Expr::Var(Variable::U) => Jet2::var_u(u),
            Expr::Var(Variable::V) => Jet2::var_v(v),
            Expr::Num(x) => Jet2::constant(*x),
            Expr::Const(c) => Jet2::constant(c.value()),
            Expr::Neg(a) => -a.eval_jet2(u, v)?,
            Expr::Binary(op, a, b) => {
                let ja = a.eval_jet2(u, v)?;
                match op {
                    BinOp::Add => ja + b.eval_jet2(u, v)?,
                    BinOp::Sub => ja - b.eval_jet2(u, v)?,
                    BinOp::Mul => ja * b.eval_jet2(u, v)?,
                    BinOp::Div => {
                        let jb = b.eval_jet2(u, v)?;
                        if jb.val == 0.0 {
                            return Err(self.domain_error("division by zero"));
                        }
                        ja / jb
                    }
                    BinOp::Pow => {
                        let p = b
                            .const_value()
                            .ok_or_else(|| self.domain_error("non-constant exponent"))?;
                        if p.fract() == 0.0 && p.abs() <= f64::from(i32::MAX) {
                            if p < 0.0 && ja.val == 0.0 {
                                return Err(self.domain_error("negative power of zero"));
                            }
                            ja.powi(p as i32)
                        } else {
                            if !(ja.val > 0.0) {
                                return Err(
                                    self.domain_error("non-integer power of a non-positive base")
                                );
                            }
                            ja.powf(p)
                        }
                    }
                }
            }
            Expr::Call(f, a) => {
                let ja = a.eval_jet2(u, v)?;
                match f {
                    Func::Sin => ja.sin(),
                    Func::Cos => ja.cos(),
                    Func::Tan => ja.tan(),
                    Func::Exp => ja.exp(),
                    Func::Log => {
                        if !(ja.val > 0.0) {
                            return Err(self.domain_error("logarithm of a non-positive value"));
                        }
                        ja.ln()
                    }
                    Func::Sqrt => {
                        if !(ja.val > 0.0) {
                            return Err(self.domain_error(
                                "square root of a non-positive value (derivative undefined)",
                            ));
                        }
                        ja.sqrt()
                    }
                    Func::Sinh => ja.sinh(),
                    Func::Cosh => ja.cosh(),
                    Func::Atan => ja.atan(),
                }
            }
        };
        if !j.is_finite() {
            return Err(self.domain_error("non-finite result"));
        }
        Ok(j)
    }

    /// Plain value at `(u, v)`.
    pub fn eval(&self, u: f64, v: f64) -> Result<f64, ExprError> {
        Ok(self.eval_jet2(u, v)?.val)
    }
}

/// Fully parenthesized form; re-parses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(Variable::U) => f.write_str("u"),
            Expr::Var(Variable::V) => f.write_str("v"),
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Const(NamedConst::Pi) => f.write_str("pi"),
            Expr::Const(NamedConst::E) => f.write_str("e"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// Parameter rectangle `[u0, u1] × [v0, v1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Domain {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl From<[f64; 4]> for Domain {
    fn from(d: [f64; 4]) -> Self {
        Domain {
            u0: d[0],
            u1: d[1],
            v0: d[2],
            v1: d[3],
        }
    }
}

impl From<Domain> for [f64; 4] {
    fn from(d: Domain) -> Self {
        [d.u0, d.u1, d.v0, d.v1]
    }
}

impl Domain {
    pub const UNIT_SQUARE: Domain = Domain {
        u0: -1.0,
        u1: 1.0,
        v0: -1.0,
        v1: 1.0,
    };

    pub fn validate(&self) -> Result<(), ExprError> {
        let ok = [self.u0, self.u1, self.v0, self.v1]
            .iter()
            .all(|x| x.is_finite())
            && self.u0 < self.u1
            && self.v0 < self.v1;
        if ok {
            Ok(())
        } else {
            Err(ExprError::InvalidDefinition(format!(
                "domain [{}, {}] x [{}, {}] is empty or not finite",
                self.u0, self.u1, self.v0, self.v1
            )))
        }
    }

    pub fn diameter(&self) -> f64 {
        (self.u1 - self.u0).hypot(self.v1 - self.v0)
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        (self.u0..=self.u1).contains(&u) && (self.v0..=self.v1).contains(&v)
    }
}

/// A surface `F: O → E⁴` given by four component expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceDef {
    pub name: String,
    pub components: [Expr; 4],
    pub domain: Domain,
}

/// Exact 2-jet of `F` at a point, as E⁴ vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceJet {
    pub f: Vec4,
    pub fu: Vec4,
    pub fv: Vec4,
    pub fuu: Vec4,
    pub fuv: Vec4,
    pub fvv: Vec4,
}

impl SurfaceJet {
    pub fn from_components(j: [Jet2; 4]) -> Self {
        let pick = |g: fn(&Jet2) -> f64| Vec4(j.map(|c| g(&c)));
        SurfaceJet {
            f: pick(|c| c.val),
            fu: pick(|c| c.du),
            fv: pick(|c| c.dv),
            fuu: pick(|c| c.duu),
            fuv: pick(|c| c.duv),
            fvv: pick(|c| c.dvv),
        }
    }

    /// `F_ab` for `a, b ∈ {0 = u, 1 = v}`.
    pub fn second(&self, a: usize, b: usize) -> Vec4 {
        match (a, b) {
            (0, 0) => self.fuu,
            (1, 1) => self.fvv,
            _ => self.fuv,
        }
    }

    /// `F_a` for `a ∈ {0 = u, 1 = v}`.
    pub fn first(&self, a: usize) -> Vec4 {
        if a == 0 {
            self.fu
        } else {
            self.fv
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SurfaceJson {
    name: String,
    f1: String,
    f2: String,
    f3: String,
    f4: String,
    domain: Domain,
}

impl SurfaceDef {
    pub fn new(name: &str, components: [Expr; 4], domain: Domain) -> Result<Self, ExprError> {
        domain.validate()?;
        Ok(SurfaceDef {
            name: name.to_string(),
            components,
            domain,
        })
    }

    /// Parses `"f1, f2, f3, f4"` with the given name and domain.
    pub fn parse_with(text: &str, name: &str, domain: Domain) -> Result<Self, ExprError> {
        let items = parse_list(text)?;
        let found = items.len();
        let components: [Expr; 4] = items.try_into().map_err(|_| ExprError::Arity {
            context: "a surface definition".into(),
            expected: 4,
            found,
        })?;
        SurfaceDef::new(name, components, domain)
    }

    pub fn from_json(text: &str) -> Result<Self, ExprError> {
        let js: SurfaceJson =
            serde_json::from_str(text).map_err(|e| ExprError::InvalidDefinition(e.to_string()))?;
        let comp = [&js.f1, &js.f2, &js.f3, &js.f4]
            .map(|s| parse_expr(s));
        let [a, b, c, d] = comp;
        SurfaceDef::new(&js.name, [a?, b?, c?, d?], js.domain)
    }

    pub fn to_json(&self) -> String {
        let [f1, f2, f3, f4] = self.components.each_ref().map(|e| e.to_string());
        serde_json::to_string(&SurfaceJson {
            name: self.name.clone(),
            f1,
            f2,
            f3,
            f4,
            domain: self.domain,
        })
        .expect("surface JSON serializes")
    }

    /// The four components joined as parseable text.
    pub fn source(&self) -> String {
        self.components
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn eval_jets(&self, u: f64, v: f64) -> Result<[Jet2; 4], ExprError> {
        let [a, b, c, d] = self.components.each_ref().map(|e| e.eval_jet2(u, v));
        Ok([a?, b?, c?, d?])
    }

    pub fn eval_surface_jet(&self, u: f64, v: f64) -> Result<SurfaceJet, ExprError> {
        Ok(SurfaceJet::from_components(self.eval_jets(u, v)?))
    }

    pub fn eval_point(&self, u: f64, v: f64) -> Result<Vec4, ExprError> {
        let [a, b, c, d] = self.components.each_ref().map(|e| e.eval(u, v));
        Ok(Vec4([a?, b?, c?, d?]))
    }
}

/// Parses `"f1, f2, f3, f4"` over the default domain `[−1, 1]²`.
pub fn parse(text: &str) -> Result<SurfaceDef, ExprError> {
    SurfaceDef::parse_with(text, "expr", Domain::UNIT_SQUARE)
}

/// Exact 2-jet of a single expression at `(u, v)`.
pub fn eval_jet2(e: &Expr, u: f64, v: f64) -> Result<Jet2, ExprError> {
    e.eval_jet2(u, v)
}

/// Componentwise 2-jets of a surface at `(u, v)`.
pub fn eval_surface_jet(s: &SurfaceDef, u: f64, v: f64) -> Result<[Jet2; 4], ExprError> {
    s.eval_jets(u, v)
}
