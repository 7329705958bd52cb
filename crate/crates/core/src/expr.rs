//! Coefficient expression language: parsing, canonical printing, and
//! evaluation to jets at a point.
//!
//! Grammar: exact rationals `p/q`, integers, decimals (float mode), variable
//! names (plain identifiers or indexed like `x[0,1]`), `+ - * / ^`,
//! parentheses, and the named functions `sin cos exp log` (float mode).
//! `^` binds tightest with an integer exponent; unary minus binds tighter
//! than `*` and `/`.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jet::{Chart, Jet, JetOrder};
use crate::scalar::{Scalar, ScalarMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuncName {
    Sin,
    Cos,
    Exp,
    Log,
}

impl FuncName {
    fn from_ident(s: &str) -> Option<FuncName> {
        match s {
            "sin" => Some(FuncName::Sin),
            "cos" => Some(FuncName::Cos),
            "exp" => Some(FuncName::Exp),
            "log" => Some(FuncName::Log),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            FuncName::Sin => "sin",
            FuncName::Cos => "cos",
            FuncName::Exp => "exp",
            FuncName::Log => "log",
        }
    }
}

/// Parsed arithmetic expression over chart variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Constant(BigRational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Func(FuncName, Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Constant(BigRational::from(BigInt::from(v)))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Constant(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn add(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }

    pub fn mul(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }

    pub fn neg(self) -> Expr {
        match self {
            Expr::Constant(c) => Expr::Constant(-c),
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Constant(c) if c.is_zero())
    }

    /// Collects every variable referenced, without duplicates.
    pub fn variables(&self, out: &mut Vec<String>) {
        match self {
            Expr::Constant(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Func(_, e) => e.variables(out),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }

    /// True when evaluation never needs truncation: no quotients by
    /// non-constants, no negative powers, no named functions.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Constant(_) | Expr::Var(_) => true,
            Expr::Neg(e) => e.is_polynomial(),
            Expr::Add(a, b) | Expr::Mul(a, b) => a.is_polynomial() && b.is_polynomial(),
            Expr::Div(a, b) => a.is_polynomial() && matches!(**b, Expr::Constant(_)),
            Expr::Pow(e, n) => *n >= 0 && e.is_polynomial(),
            Expr::Func(_, _) => false,
        }
    }

    pub fn uses_function(&self) -> bool {
        match self {
            Expr::Constant(_) | Expr::Var(_) => false,
            Expr::Neg(e) | Expr::Pow(e, _) => e.uses_function(),
            Expr::Func(_, _) => true,
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.uses_function() || b.uses_function()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational, bool), // value, came-from-decimal
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let (l0, c0) = (line, col);
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            ' ' | '\t' | '\r' => {}
            '+' => out.push(Spanned { tok: Tok::Plus, line: l0, col: c0 }),
            '-' => out.push(Spanned { tok: Tok::Minus, line: l0, col: c0 }),
            '*' => out.push(Spanned { tok: Tok::Star, line: l0, col: c0 }),
            '/' => out.push(Spanned { tok: Tok::Slash, line: l0, col: c0 }),
            '^' => out.push(Spanned { tok: Tok::Caret, line: l0, col: c0 }),
            '(' => out.push(Spanned { tok: Tok::LParen, line: l0, col: c0 }),
            ')' => out.push(Spanned { tok: Tok::RParen, line: l0, col: c0 }),
            '[' => out.push(Spanned { tok: Tok::LBracket, line: l0, col: c0 }),
            ']' => out.push(Spanned { tok: Tok::RBracket, line: l0, col: c0 }),
            ',' => out.push(Spanned { tok: Tok::Comma, line: l0, col: c0 }),
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut decimal = false;
                if i + 1 < bytes.len() && bytes[i] == '.' && bytes[i + 1].is_ascii_digit() {
                    decimal = true;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let s: String = bytes[start..i].iter().collect();
                let value = if decimal {
                    let (int_part, frac_part) = s.split_once('.').unwrap();
                    let digits = frac_part.len() as u32;
                    let scale = BigInt::from(10u32).pow(digits);
                    let int_v: BigInt = int_part.parse().unwrap_or_else(|_| BigInt::zero());
                    let frac_v: BigInt = frac_part.parse().unwrap();
                    BigRational::new(int_v * &scale + frac_v, scale)
                } else {
                    BigRational::from(s.parse::<BigInt>().unwrap())
                };
                col += i - start;
                out.push(Spanned {
                    tok: Tok::Num(value, decimal),
                    line: l0,
                    col: c0,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                col += i - start;
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line: l0,
                    col: c0,
                });
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    allow_decimals: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs.neg()));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    acc = fold_div(acc, rhs).map_err(|msg| self.err(msg))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.parse_unary()?;
            return Ok(inner.neg());
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exp = self.parse_exponent()?;
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    /// Integer exponent, optionally signed; `a^b^c` nests to the right and is
    /// collapsed in integer arithmetic.
    fn parse_exponent(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let val = match self.bump() {
            Some(Tok::Num(r, false)) if r.is_integer() => r
                .to_integer()
                .to_i64()
                .ok_or_else(|| self.err("exponent out of range"))?,
            _ => return Err(self.err("expected integer exponent after `^`")),
        };
        let mut exp = if negative { -val } else { val };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let rhs = self.parse_exponent()?;
            if !(0..=16).contains(&rhs) {
                return Err(self.err("nested exponent out of range"));
            }
            exp = exp
                .checked_pow(rhs as u32)
                .ok_or_else(|| self.err("exponent overflow"))?;
        }
        Ok(exp)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Tok::Num(r, decimal)) => {
                if decimal && !self.allow_decimals {
                    return Err(self.err("decimal literal requires float mode"));
                }
                Ok(Expr::Constant(r))
            }
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    let func = FuncName::from_ident(&name)
                        .ok_or_else(|| self.err(format!("unknown function `{name}`")))?;
                    self.pos += 1;
                    let arg = self.parse_expr()?;
                    self.expect(Tok::RParen, "`)` closing function argument")?;
                    return Ok(Expr::Func(func, Box::new(arg)));
                }
                if self.peek() == Some(&Tok::LBracket) {
                    self.pos += 1;
                    let mut indices = Vec::new();
                    loop {
                        match self.bump() {
                            Some(Tok::Num(r, false)) if r.is_integer() => {
                                indices.push(r.to_integer().to_string());
                            }
                            _ => return Err(self.err("expected integer index")),
                        }
                        match self.bump() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RBracket) => break,
                            _ => return Err(self.err("expected `,` or `]` in index")),
                        }
                    }
                    return Ok(Expr::Var(format!("{name}[{}]", indices.join(","))));
                }
                Ok(Expr::Var(name))
            }
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err("expected a number, variable, or `(`")),
        }
    }
}

fn fold_div(a: Expr, b: Expr) -> std::result::Result<Expr, String> {
    if let (Expr::Constant(x), Expr::Constant(y)) = (&a, &b) {
        if y.is_zero() {
            return Err("division by zero literal".to_string());
        }
        return Ok(Expr::Constant(x / y));
    }
    Ok(Expr::Div(Box::new(a), Box::new(b)))
}

/// Parses an expression; rational literals only (`p/q`, integers).
pub fn parse_expression(text: &str) -> Result<Expr> {
    parse_expression_with(text, false)
}

/// Parses with explicit control over decimal literals (float mode allows
/// them, rational mode rejects them).
pub fn parse_expression_with(text: &str, allow_decimals: bool) -> Result<Expr> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            line: 1,
            col: 1,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        allow_decimals,
    };
    let e = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Canonical printer
// ---------------------------------------------------------------------------

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(_, _) => 1,
        Expr::Mul(_, _) | Expr::Div(_, _) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(_, _) => 4,
        Expr::Constant(c) if c.is_negative() => 3,
        _ => 5,
    }
}

fn write_at(e: &Expr, parent: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mine = prec(e);
    let parens = mine < parent;
    if parens {
        write!(f, "(")?;
    }
    match e {
        Expr::Constant(c) => {
            if c.denom().is_one() {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())?;
            }
        }
        Expr::Var(v) => write!(f, "{v}")?,
        Expr::Neg(inner) => {
            write!(f, "-")?;
            write_at(inner, 4, f)?;
        }
        Expr::Add(a, b) => {
            write_at(a, 1, f)?;
            match &**b {
                Expr::Neg(inner) => {
                    write!(f, " - ")?;
                    write_at(inner, 2, f)?;
                }
                Expr::Constant(c) if c.is_negative() => {
                    write!(f, " - ")?;
                    let pos = Expr::Constant(-c.clone());
                    write_at(&pos, 2, f)?;
                }
                other => {
                    write!(f, " + ")?;
                    write_at(other, 2, f)?;
                }
            }
        }
        Expr::Mul(a, b) => {
            write_at(a, 2, f)?;
            write!(f, "*")?;
            write_at(b, 3, f)?;
        }
        Expr::Div(a, b) => {
            write_at(a, 2, f)?;
            write!(f, "/")?;
            write_at(b, 3, f)?;
        }
        Expr::Pow(base, n) => {
            write_at(base, 5, f)?;
            if *n < 0 {
                write!(f, "^-{}", -n)?;
            } else {
                write!(f, "^{n}")?;
            }
        }
        Expr::Func(name, arg) => {
            write!(f, "{}(", name.name())?;
            write_at(arg, 0, f)?;
            write!(f, ")")?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

// ---------------------------------------------------------------------------
// Evaluation to jets
// ---------------------------------------------------------------------------

/// Evaluates `expr` at `point`, producing a jet truncated at `order`:
/// each variable is substituted by `point value + formal displacement`.
pub fn evaluate_jet(expr: &Expr, chart: &Chart, point: &[Scalar], order: u32) -> Result<Jet> {
    let j = evaluate_jet_inner(expr, chart, point, JetOrder::Truncated(order))?;
    Ok(j.truncated(JetOrder::Truncated(order)))
}

/// Evaluates keeping exactness when possible; quotients by non-constants and
/// named functions require a concrete truncation order.
pub fn evaluate_jet_inner(
    expr: &Expr,
    chart: &Chart,
    point: &[Scalar],
    order: JetOrder,
) -> Result<Jet> {
    match expr {
        Expr::Constant(c) => Ok(Jet::constant(
            chart,
            Scalar::from_rational(c.clone(), chart.mode()),
        )
        .truncated(order)),
        Expr::Var(name) => {
            let idx = chart
                .var_index(name)
                .ok_or_else(|| Error::UnboundVariable(name.clone()))?;
            Ok(Jet::coordinate(chart, idx, point[idx].clone()).truncated(order))
        }
        Expr::Neg(e) => Ok(evaluate_jet_inner(e, chart, point, order)?.neg()),
        Expr::Add(a, b) => {
            let ja = evaluate_jet_inner(a, chart, point, order)?;
            let jb = evaluate_jet_inner(b, chart, point, order)?;
            ja.add(&jb)
        }
        Expr::Mul(a, b) => {
            let ja = evaluate_jet_inner(a, chart, point, order)?;
            let jb = evaluate_jet_inner(b, chart, point, order)?;
            ja.mul(&jb)
        }
        Expr::Div(a, b) => {
            let ja = evaluate_jet_inner(a, chart, point, order)?;
            let jb = evaluate_jet_inner(b, chart, point, order)?;
            if jb.constant_term().is_negligible(chart.tol()) {
                return Err(Error::DivisionAtPole(format!("denominator `{b}` vanishes")));
            }
            ja.mul(&jb.invert_to(order)?)
        }
        Expr::Pow(base, n) => {
            let jb = evaluate_jet_inner(base, chart, point, order)?;
            if *n >= 0 {
                jb.pow(*n as u32)
            } else {
                if jb.constant_term().is_negligible(chart.tol()) {
                    return Err(Error::DivisionAtPole(format!(
                        "negative power of vanishing `{base}`"
                    )));
                }
                jb.invert_to(order)?.pow((-n) as u32)
            }
        }
        Expr::Func(name, arg) => {
            if chart.mode().is_rational() {
                return Err(Error::FunctionNeedsFloatMode(name.name().to_string()));
            }
            let ja = evaluate_jet_inner(arg, chart, point, order)?;
            apply_function(*name, &ja, order)
        }
    }
}

/// Composes a named analytic function with a jet: Taylor coefficients of the
/// function at the jet's constant term, then Horner in the nilpotent tail.
fn apply_function(name: FuncName, arg: &Jet, order: JetOrder) -> Result<Jet> {
    let chart = arg.chart().clone();
    let n = match arg.order().min(order) {
        JetOrder::Truncated(n) => n,
        JetOrder::Exact => {
            return Err(Error::Invalid(
                "function composition needs an explicit truncation order".into(),
            ))
        }
    };
    let c = match arg.constant_term() {
        Scalar::Float(x) => x,
        Scalar::Rational(_) => unreachable!("float mode enforced by caller"),
    };
    // f^(s)(c) / s! for s = 0..=n.
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut factorial = 1.0f64;
    for s in 0..=n {
        if s > 0 {
            factorial *= s as f64;
        }
        let d = match name {
            FuncName::Exp => c.exp(),
            FuncName::Log => {
                if s == 0 {
                    if c <= 0.0 {
                        return Err(Error::DivisionAtPole("log of non-positive value".into()));
                    }
                    c.ln()
                } else {
                    // d^s/dx^s log x = (-1)^(s-1) (s-1)! / x^s
                    let sign = if (s - 1) % 2 == 0 { 1.0 } else { -1.0 };
                    let mut fact = 1.0;
                    for t in 1..s {
                        fact *= t as f64;
                    }
                    sign * fact / c.powi(s as i32)
                }
            }
            FuncName::Sin => match s % 4 {
                0 => c.sin(),
                1 => c.cos(),
                2 => -c.sin(),
                _ => -c.cos(),
            },
            FuncName::Cos => match s % 4 {
                0 => c.cos(),
                1 => -c.sin(),
                2 => -c.cos(),
                _ => c.sin(),
            },
        };
        coeffs.push(d / factorial);
    }
    let tail = arg
        .sub(&Jet::constant(&chart, Scalar::Float(c)))?
        .truncated(JetOrder::Truncated(n));
    // Horner: (((a_n h + a_{n-1}) h + ...) h + a_0)
    let mut acc = Jet::constant(&chart, Scalar::Float(coeffs[n as usize])).truncated(tail.order());
    for s in (0..n).rev() {
        acc = acc
            .mul(&tail)?
            .add(&Jet::constant(&chart, Scalar::Float(coeffs[s as usize])))?;
    }
    Ok(acc)
}
