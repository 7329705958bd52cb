//! Problem files: the `pair "name" { ... }` format defining an ODE system,
//! a geodesic system by its connection coefficients, or a generic pair of
//! coordinate frames.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::{parse_expression_with, Expr};
use crate::scalar::ScalarMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Ode,
    Generic,
    Geodesic,
}

impl PairKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairKind::Ode => "ode",
            PairKind::Generic => "generic",
            PairKind::Geodesic => "geodesic",
        }
    }
}

/// Generic-kind data: a declared chart, one expression per chart direction
/// for X, and m columns for the V frame.
#[derive(Clone, Debug)]
pub struct GenericFrames {
    pub vars: Vec<String>,
    pub x: Vec<Expr>,
    pub v: Vec<Vec<Expr>>,
}

/// A validated problem definition.
#[derive(Clone, Debug)]
pub struct PairSpec {
    pub name: String,
    pub kind: PairKind,
    pub mode: ScalarMode,
    pub k: usize,
    pub m: usize,
    /// Right-hand sides F_1..F_m (ode kind; derived for geodesic kind).
    pub f: Vec<Expr>,
    /// Symmetrized connection coefficients, `gamma[i][p][q]` (geodesic kind).
    pub gamma: Vec<Vec<Vec<Expr>>>,
    pub generic: Option<GenericFrames>,
}

impl PairSpec {
    /// Builds an ode-kind spec programmatically (used by tests and the
    /// randomized suites).
    pub fn ode(name: &str, k: usize, m: usize, f: Vec<Expr>) -> Result<PairSpec> {
        let spec = PairSpec {
            name: name.to_string(),
            kind: PairKind::Ode,
            mode: ScalarMode::Rational,
            k,
            m,
            f,
            gamma: Vec::new(),
            generic: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn generic(
        name: &str,
        vars: Vec<String>,
        x: Vec<Expr>,
        v: Vec<Vec<Expr>>,
    ) -> Result<PairSpec> {
        let m = v.len();
        let dim = vars.len();
        let spec = PairSpec {
            name: name.to_string(),
            kind: PairKind::Generic,
            mode: ScalarMode::Rational,
            k: derived_generic_k(dim, m)?,
            m,
            f: Vec::new(),
            gamma: Vec::new(),
            generic: Some(GenericFrames { vars, x, v }),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a geodesic spec from (not necessarily symmetric) connection
    /// coefficients `gamma[i][p][q]`, deriving the right-hand sides.
    pub fn geodesic(name: &str, m: usize, gamma: Vec<Vec<Vec<Expr>>>) -> Result<PairSpec> {
        let sym = symmetrize_gamma(&gamma);
        let f = geodesic_rhs(&sym, m);
        let spec = PairSpec {
            name: name.to_string(),
            kind: PairKind::Geodesic,
            mode: ScalarMode::Rational,
            k: 1,
            m,
            f,
            gamma: sym,
            generic: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Chart dimension n = mk + m + 1 (all kinds).
    pub fn dim(&self) -> usize {
        self.m * self.k + self.m + 1
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Schema("m must be positive".into()));
        }
        match self.kind {
            PairKind::Ode | PairKind::Geodesic => {
                if self.k == 0 {
                    return Err(Error::Schema("k must be positive".into()));
                }
                if self.f.len() != self.m {
                    return Err(Error::Schema(format!(
                        "expected {} right-hand sides, found {}",
                        self.m,
                        self.f.len()
                    )));
                }
                for (j, e) in self.f.iter().enumerate() {
                    check_equation_vars(e, self.k, self.m, &format!("F[{}]", j + 1))?;
                    if self.mode.is_rational() && e.uses_function() {
                        return Err(Error::Schema("named functions require float mode".into()));
                    }
                }
                if self.kind == PairKind::Geodesic {
                    if self.k != 1 {
                        return Err(Error::Schema("geodesic kind fixes k = 1".into()));
                    }
                    for (i, block) in self.gamma.iter().enumerate() {
                        for (p, row) in block.iter().enumerate() {
                            for (q, e) in row.iter().enumerate() {
                                check_gamma_vars(
                                    e,
                                    self.m,
                                    &format!("Gamma[{}][{}][{}]", i + 1, p + 1, q + 1),
                                )?;
                            }
                        }
                    }
                }
            }
            PairKind::Generic => {
                let g = self
                    .generic
                    .as_ref()
                    .ok_or_else(|| Error::Schema("generic kind needs vars/X/V".into()))?;
                let dim = g.vars.len();
                if g.x.len() != dim {
                    return Err(Error::Schema(format!(
                        "X needs {dim} coefficient expressions, found {}",
                        g.x.len()
                    )));
                }
                for (j, col) in g.v.iter().enumerate() {
                    if col.len() != dim {
                        return Err(Error::Schema(format!(
                            "V[{}] needs {dim} coefficient expressions, found {}",
                            j + 1,
                            col.len()
                        )));
                    }
                }
                derived_generic_k(dim, self.m)?;
                let check = |e: &Expr, what: &str| -> Result<()> {
                    let mut vars = Vec::new();
                    e.variables(&mut vars);
                    for v in vars {
                        if !g.vars.contains(&v) {
                            return Err(Error::Schema(format!(
                                "{what} references undeclared variable `{v}`"
                            )));
                        }
                    }
                    if self.mode.is_rational() && e.uses_function() {
                        return Err(Error::Schema("named functions require float mode".into()));
                    }
                    Ok(())
                };
                for (i, e) in g.x.iter().enumerate() {
                    check(e, &format!("X[{}]", i + 1))?;
                }
                for (j, col) in g.v.iter().enumerate() {
                    for (i, e) in col.iter().enumerate() {
                        check(e, &format!("V[{}][{}]", j + 1, i + 1))?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn derived_generic_k(dim: usize, m: usize) -> Result<usize> {
    if m == 0 || dim <= 1 + m || (dim - 1) % m != 0 {
        return Err(Error::Schema(format!(
            "chart dimension {dim} is not of the form mk + m + 1 for m = {m}"
        )));
    }
    Ok((dim - 1) / m - 1)
}

/// Equation-chart variables are `t` and `x[i,j]` with 0 <= i <= k, 1 <= j <= m.
fn check_equation_vars(e: &Expr, k: usize, m: usize, what: &str) -> Result<()> {
    let mut vars = Vec::new();
    e.variables(&mut vars);
    for v in vars {
        if v == "t" {
            continue;
        }
        let Some((i, j)) = parse_x_indices(&v) else {
            return Err(Error::Schema(format!(
                "{what} references `{v}`; equation charts allow t and x[i,j]"
            )));
        };
        if i > k {
            return Err(Error::Schema(format!(
                "{what}: derivative index {i} in `{v}` exceeds k = {k}"
            )));
        }
        if j == 0 || j > m {
            return Err(Error::Schema(format!(
                "{what}: component index {j} in `{v}` outside 1..={m}"
            )));
        }
    }
    Ok(())
}

/// Connection coefficients may reference base coordinates `x[0,j]` only.
fn check_gamma_vars(e: &Expr, m: usize, what: &str) -> Result<()> {
    let mut vars = Vec::new();
    e.variables(&mut vars);
    for v in vars {
        match parse_x_indices(&v) {
            Some((0, j)) if j >= 1 && j <= m => {}
            _ => {
                return Err(Error::Schema(format!(
                    "{what} may reference x[0,j] only, found `{v}`"
                )))
            }
        }
    }
    Ok(())
}

pub(crate) fn parse_x_indices(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("x[")?.strip_suffix(']')?;
    let (i, j) = rest.split_once(',')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Item {
    Str(String),
    Int(i64),
    List(Vec<String>),
}

struct FileParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> FileParser<'a> {
    fn new(src: &'a str) -> Self {
        FileParser {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn advance(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied();
        if let Some(c) = c {
            self.pos += 1;
            if c == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        c
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(b' ') | Some(b'\t') | Some(b'\r') | Some(b'\n') => {
                    self.advance();
                }
                Some(b'#') => {
                    while let Some(c) = self.advance() {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.advance();
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.err("expected identifier"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn expect_char(&mut self, ch: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.advance();
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", ch as char)))
        }
    }

    fn string(&mut self) -> Result<String> {
        self.expect_char(b'"')?;
        let mut out = Vec::new();
        loop {
            match self.advance() {
                Some(b'"') => break,
                Some(c) => out.push(c),
                None => return Err(self.err("unterminated string")),
            }
        }
        Ok(String::from_utf8_lossy(&out).into_owned())
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.advance();
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.advance();
            } else {
                break;
            }
        }
        let text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        text.parse().map_err(|_| self.err("expected integer"))
    }

    /// Key with optional `[i]...` index groups, e.g. `F[1]`, `Gamma[1][2][2]`.
    fn key(&mut self) -> Result<String> {
        let base = self.ident()?;
        let mut key = base;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'[') {
                self.advance();
                let i = self.integer()?;
                self.expect_char(b']')?;
                key.push_str(&format!("[{i}]"));
            } else {
                break;
            }
        }
        Ok(key)
    }

    fn value(&mut self) -> Result<Item> {
        self.skip_ws();
        match self.peek() {
            Some(b'"') => Ok(Item::Str(self.string()?)),
            Some(b'[') => {
                self.advance();
                let mut items = Vec::new();
                self.skip_ws();
                if self.peek() == Some(b']') {
                    self.advance();
                    return Ok(Item::List(items));
                }
                loop {
                    items.push(self.string()?);
                    self.skip_ws();
                    match self.advance() {
                        Some(b',') => continue,
                        Some(b']') => break,
                        _ => return Err(self.err("expected `,` or `]` in list")),
                    }
                }
                Ok(Item::List(items))
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => Ok(Item::Int(self.integer()?)),
            _ => Err(self.err("expected a value (string, integer, or list)")),
        }
    }
}

/// Parses a problem file into a validated [`PairSpec`].
pub fn parse_problem_file(text: &str) -> Result<PairSpec> {
    let mut p = FileParser::new(text);
    p.skip_ws();
    let head = p.ident()?;
    if head != "pair" {
        return Err(p.err("problem file must start with `pair \"name\" {`"));
    }
    let name = p.string()?;
    p.expect_char(b'{')?;
    let mut entries: BTreeMap<String, Item> = BTreeMap::new();
    loop {
        p.skip_ws();
        if p.peek() == Some(b'}') {
            p.advance();
            break;
        }
        if p.peek().is_none() {
            return Err(p.err("unterminated pair block"));
        }
        let key = p.key()?;
        p.expect_char(b'=')?;
        let value = p.value()?;
        if entries.insert(key.clone(), value).is_some() {
            return Err(Error::Schema(format!("duplicate key `{key}`")));
        }
    }
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("trailing input after pair block"));
    }
    build_spec(name, entries)
}

fn get_int(entries: &BTreeMap<String, Item>, key: &str) -> Result<Option<usize>> {
    match entries.get(key) {
        None => Ok(None),
        Some(Item::Int(v)) if *v >= 0 => Ok(Some(*v as usize)),
        Some(_) => Err(Error::Schema(format!(
            "`{key}` must be a non-negative integer"
        ))),
    }
}

fn build_spec(name: String, entries: BTreeMap<String, Item>) -> Result<PairSpec> {
    let kind = match entries.get("kind") {
        Some(Item::Str(s)) => match s.as_str() {
            "ode" => PairKind::Ode,
            "generic" => PairKind::Generic,
            "geodesic" => PairKind::Geodesic,
            other => return Err(Error::Schema(format!("unknown kind `{other}`"))),
        },
        _ => return Err(Error::Schema("missing `kind`".into())),
    };
    let mode = match entries.get("mode") {
        None => ScalarMode::Rational,
        Some(Item::Str(s)) => match s.as_str() {
            "rational" => ScalarMode::Rational,
            "float" => ScalarMode::float(),
            other => return Err(Error::Schema(format!("unknown mode `{other}`"))),
        },
        Some(_) => return Err(Error::Schema("`mode` must be a string".into())),
    };
    let allow_decimals = !mode.is_rational();
    let parse = |text: &str, what: &str| -> Result<Expr> {
        parse_expression_with(text, allow_decimals)
            .map_err(|e| Error::Schema(format!("{what}: {e}")))
    };

    let known_scalar_keys = ["kind", "mode", "k", "m", "dim"];
    match kind {
        PairKind::Ode | PairKind::Geodesic => {
            let m = get_int(&entries, "m")?.ok_or_else(|| Error::Schema("missing `m`".into()))?;
            let k = match kind {
                PairKind::Geodesic => {
                    let k = get_int(&entries, "k")?.unwrap_or(1);
                    if k != 1 {
                        return Err(Error::Schema("geodesic kind fixes k = 1".into()));
                    }
                    1
                }
                _ => get_int(&entries, "k")?.ok_or_else(|| Error::Schema("missing `k`".into()))?,
            };
            if m == 0 || k == 0 {
                return Err(Error::Schema("k and m must be positive".into()));
            }
            let mut f: Vec<Expr> = vec![Expr::int(0); m];
            let mut gamma: Vec<Vec<Vec<Expr>>> = vec![vec![vec![Expr::int(0); m]; m]; m];
            for (key, value) in &entries {
                if known_scalar_keys.contains(&key.as_str()) {
                    continue;
                }
                if let Some(j) = key
                    .strip_prefix("F[")
                    .and_then(|r| r.strip_suffix(']'))
                    .and_then(|r| r.parse::<usize>().ok())
                {
                    if kind == PairKind::Geodesic {
                        return Err(Error::Schema(
                            "geodesic kind derives F from Gamma; do not set F".into(),
                        ));
                    }
                    if j == 0 || j > m {
                        return Err(Error::Schema(format!("`{key}` index outside 1..={m}")));
                    }
                    let Item::Str(text) = value else {
                        return Err(Error::Schema(format!("`{key}` must be a string")));
                    };
                    f[j - 1] = parse(text, key)?;
                    continue;
                }
                if let Some(rest) = key.strip_prefix("Gamma[") {
                    if kind != PairKind::Geodesic {
                        return Err(Error::Schema(
                            "Gamma is only valid for geodesic kind".into(),
                        ));
                    }
                    let idx: Vec<usize> = rest
                        .trim_end_matches(']')
                        .split("][")
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| Error::Schema(format!("bad index in `{key}`")))
                        })
                        .collect::<Result<_>>()?;
                    if idx.len() != 3 || idx.iter().any(|&i| i == 0 || i > m) {
                        return Err(Error::Schema(format!(
                            "`{key}` needs three indices in 1..={m}"
                        )));
                    }
                    let Item::Str(text) = value else {
                        return Err(Error::Schema(format!("`{key}` must be a string")));
                    };
                    gamma[idx[0] - 1][idx[1] - 1][idx[2] - 1] = parse(text, key)?;
                    continue;
                }
                return Err(Error::Schema(format!("unknown key `{key}`")));
            }
            let mut spec = PairSpec {
                name,
                kind,
                mode,
                k,
                m,
                f,
                gamma: Vec::new(),
                generic: None,
            };
            if kind == PairKind::Geodesic {
                spec.gamma = symmetrize_gamma(&gamma);
                spec.f = geodesic_rhs(&spec.gamma, m);
            }
            spec.validate()?;
            Ok(spec)
        }
        PairKind::Generic => {
            let dim =
                get_int(&entries, "dim")?.ok_or_else(|| Error::Schema("missing `dim`".into()))?;
            let vars = match entries.get("vars") {
                Some(Item::List(v)) => v.clone(),
                _ => return Err(Error::Schema("missing `vars` list".into())),
            };
            if vars.len() != dim {
                return Err(Error::Schema(format!(
                    "`vars` has {} names but dim = {dim}",
                    vars.len()
                )));
            }
            let x = match entries.get("X") {
                Some(Item::List(v)) => v
                    .iter()
                    .map(|s| parse(s, "X"))
                    .collect::<Result<Vec<_>>>()?,
                _ => return Err(Error::Schema("missing `X` list".into())),
            };
            let mut v_cols: Vec<(usize, Vec<Expr>)> = Vec::new();
            for (key, value) in &entries {
                if let Some(j) = key
                    .strip_prefix("V[")
                    .and_then(|r| r.strip_suffix(']'))
                    .and_then(|r| r.parse::<usize>().ok())
                {
                    let Item::List(items) = value else {
                        return Err(Error::Schema(format!("`{key}` must be a list")));
                    };
                    let col = items
                        .iter()
                        .map(|s| parse(s, key))
                        .collect::<Result<Vec<_>>>()?;
                    v_cols.push((j, col));
                } else if !known_scalar_keys.contains(&key.as_str()) && key != "vars" && key != "X"
                {
                    return Err(Error::Schema(format!("unknown key `{key}`")));
                }
            }
            v_cols.sort_by_key(|(j, _)| *j);
            let m = v_cols.len();
            for (expect, (j, _)) in v_cols.iter().enumerate() {
                if *j != expect + 1 {
                    return Err(Error::Schema("V columns must be V[1]..V[m]".into()));
                }
            }
            let v = v_cols.into_iter().map(|(_, col)| col).collect();
            let spec = PairSpec {
                name,
                kind,
                mode,
                k: derived_generic_k(dim, m)?,
                m,
                f: Vec::new(),
                gamma: Vec::new(),
                generic: Some(GenericFrames { vars, x, v }),
            };
            spec.validate()?;
            Ok(spec)
        }
    }
}

/// Symmetrizes the connection in its lower indices: (G[i][p][q] + G[i][q][p])/2.
fn symmetrize_gamma(gamma: &[Vec<Vec<Expr>>]) -> Vec<Vec<Vec<Expr>>> {
    let m = gamma.len();
    let mut out = vec![vec![vec![Expr::int(0); m]; m]; m];
    for i in 0..m {
        for p in 0..m {
            for q in 0..m {
                let a = &gamma[i][p][q];
                let b = &gamma[i][q][p];
                out[i][p][q] = if a == b {
                    a.clone()
                } else if a.is_zero_literal() {
                    Expr::ratio(1, 2).mul(b.clone())
                } else if b.is_zero_literal() {
                    Expr::ratio(1, 2).mul(a.clone())
                } else {
                    Expr::ratio(1, 2).mul(a.clone().add(b.clone()))
                };
            }
        }
    }
    out
}

/// F_i = - sum_{p,q} Gamma^i_{pq} x[1,p] x[1,q] with Gamma already symmetric.
fn geodesic_rhs(gamma: &[Vec<Vec<Expr>>], m: usize) -> Vec<Expr> {
    let mut f = Vec::with_capacity(m);
    for block in gamma.iter().take(m) {
        let mut acc: Option<Expr> = None;
        for (p, row) in block.iter().enumerate() {
            for (q, g) in row.iter().enumerate() {
                if g.is_zero_literal() {
                    continue;
                }
                let term = g
                    .clone()
                    .mul(Expr::var(&format!("x[1,{}]", p + 1)))
                    .mul(Expr::var(&format!("x[1,{}]", q + 1)));
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(term),
                });
            }
        }
        f.push(match acc {
            None => Expr::int(0),
            Some(e) => e.neg(),
        });
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple_ode_pair() {
        let src = r#"
            pair "xiv_eq_x" {
              kind = "ode"
              k = 3   m = 1
              F[1] = "x[0,1]"
            }
        "#;
        let spec = parse_problem_file(src).unwrap();
        assert_eq!(spec.kind, PairKind::Ode);
        assert_eq!((spec.k, spec.m), (3, 1));
        assert_eq!(spec.f.len(), 1);
        assert_eq!(spec.f[0], Expr::var("x[0,1]"));
        assert_eq!(spec.dim(), 5);
    }

    #[test]
    fn derivative_index_beyond_k_rejected() {
        let src = r#"
            pair "bad" {
              kind = "ode"
              k = 3   m = 1
              F[1] = "x[4,1]"
            }
        "#;
        let err = parse_problem_file(src).unwrap_err();
        assert!(err.to_string().contains("exceeds k"), "{err}");
    }

    #[test]
    fn geodesic_defaults_and_rhs() {
        let src = r#"
            pair "curved" {
              kind = "geodesic"
              m = 2
              Gamma[1][2][2] = "x[0,1]"
            }
        "#;
        let spec = parse_problem_file(src).unwrap();
        assert_eq!(spec.kind, PairKind::Geodesic);
        assert_eq!((spec.k, spec.m), (1, 2));
        // F_1 = -(x[0,1] * x[1,2] * x[1,2]), F_2 = 0.
        let f1 = spec.f[0].to_string();
        assert!(f1.contains("x[0,1]") && f1.contains("x[1,2]"), "{f1}");
        assert!(spec.f[1].is_zero_literal());
        // All other Gamma entries default to zero.
        assert!(spec.gamma[0][0][0].is_zero_literal());
        assert!(spec.gamma[1][0][1].is_zero_literal());
    }

    #[test]
    fn geodesic_gamma_symmetrized() {
        let src = r#"
            pair "asym" {
              kind = "geodesic"
              m = 2
              Gamma[1][1][2] = "x[0,2]"
            }
        "#;
        let spec = parse_problem_file(src).unwrap();
        // gamma[0][0][1] = gamma[0][1][0] = x[0,2]/2
        assert_eq!(spec.gamma[0][0][1], spec.gamma[0][1][0]);
        assert!(!spec.gamma[0][0][1].is_zero_literal());
    }

    #[test]
    fn generic_pair_dimensions() {
        let src = r#"
            pair "gen" {
              kind = "generic"
              dim = 4
              vars = ["t", "a", "b", "c"]
              X = ["1", "b", "c", "0"]
              V[1] = ["0", "0", "0", "1"]
            }
        "#;
        let spec = parse_problem_file(src).unwrap();
        assert_eq!(spec.kind, PairKind::Generic);
        assert_eq!((spec.k, spec.m), (2, 1));
    }

    #[test]
    fn decimal_needs_float_mode_in_files() {
        let src = r#"
            pair "dec" {
              kind = "ode"
              k = 3  m = 1
              F[1] = "0.5*t"
            }
        "#;
        assert!(parse_problem_file(src).is_err());
        let src_float = r#"
            pair "dec" {
              kind = "ode"
              mode = "float"
              k = 3  m = 1
              F[1] = "0.5*t"
            }
        "#;
        assert!(parse_problem_file(src_float).is_ok());
    }

    #[test]
    fn gamma_restricted_to_base_coordinates() {
        let src = r#"
            pair "bad_gamma" {
              kind = "geodesic"
              m = 2
              Gamma[1][2][2] = "x[1,1]"
            }
        "#;
        assert!(parse_problem_file(src).is_err());
    }
}
