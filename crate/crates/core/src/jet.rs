//! Sparse truncated multivariate Taylor (jet) arithmetic.
//!
//! A [`Jet`] is the Taylor expansion of a function at a point, stored as a
//! sparse map from multi-indices (in the displacement variables of a chart)
//! to scalars. Every jet carries its own validity: either `Exact` (the jet
//! is a polynomial equal to the represented function) or `Truncated(n)`
//! (coefficients of total degree > n are unknown). Operations propagate the
//! minimum validity; differentiation consumes one order of a truncated jet
//! and raises `OrderExhausted` at order 0 instead of silently truncating.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarMode};

/// A chart: an ordered list of variable names, the arithmetic mode, and
/// optional per-variable degree caps. Capped arithmetic is computation in
/// the quotient by the monomial ideal generated by `v^(cap+1)`; callers that
/// differentiate capped jets must budget caps above the derivative depth.
#[derive(Debug)]
pub struct ChartData {
    vars: Vec<String>,
    mode: ScalarMode,
    caps: Vec<Option<u8>>,
}

#[derive(Clone, Debug)]
pub struct Chart(Arc<ChartData>);

impl Chart {
    pub fn new(vars: Vec<String>, mode: ScalarMode) -> Chart {
        let caps = vec![None; vars.len()];
        Chart(Arc::new(ChartData { vars, mode, caps }))
    }

    pub fn with_caps(vars: Vec<String>, mode: ScalarMode, caps: Vec<Option<u8>>) -> Chart {
        assert_eq!(vars.len(), caps.len());
        Chart(Arc::new(ChartData { vars, mode, caps }))
    }

    pub fn dim(&self) -> usize {
        self.0.vars.len()
    }

    pub fn mode(&self) -> ScalarMode {
        self.0.mode
    }

    pub fn tol(&self) -> f64 {
        self.0.mode.tol()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.0.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn cap(&self, i: usize) -> Option<u8> {
        self.0.caps[i]
    }

    pub fn same_as(&self, other: &Chart) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vars == other.0.vars
                && self.0.mode == other.0.mode
                && self.0.caps == other.0.caps)
    }

    fn admits(&self, idx: &MultiIndex) -> bool {
        idx.0
            .iter()
            .enumerate()
            .all(|(v, &e)| self.0.caps[v].map_or(true, |c| e <= c))
    }

    /// Builds a point vector from `(name, value)` assignments; unassigned
    /// coordinates default to zero.
    pub fn point_from_assignments(&self, assignments: &[(String, Scalar)]) -> Result<Vec<Scalar>> {
        let mut point = vec![Scalar::zero(self.mode()); self.dim()];
        for (name, value) in assignments {
            let idx = self
                .var_index(name)
                .ok_or_else(|| Error::UnboundVariable(name.clone()))?;
            if !value.mode_matches(self.mode()) {
                return Err(Error::ModeMismatch);
            }
            point[idx] = value.clone();
        }
        Ok(point)
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// Exponent vector of a monomial in the chart's displacement variables.
/// Total ordering is graded lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(SmallVec<[u8; 16]>);

impl MultiIndex {
    pub fn zero(dim: usize) -> MultiIndex {
        MultiIndex(SmallVec::from_elem(0, dim))
    }

    pub fn unit(dim: usize, var: usize) -> MultiIndex {
        let mut m = Self::zero(dim);
        m.0[var] = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> MultiIndex {
        MultiIndex(SmallVec::from_slice(exps))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, var: usize) -> u8 {
        self.0[var]
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.0.len(), other.0.len());
        MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn bump(&self, var: usize, by: u8) -> MultiIndex {
        let mut m = self.clone();
        m.0[var] += by;
        m
    }

    /// Decrements the exponent of `var`; `None` if it is already zero.
    pub fn step_down(&self, var: usize) -> Option<MultiIndex> {
        if self.0[var] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[var] -= 1;
        Some(m)
    }

    /// Remaps this index into a larger chart: entry `i` goes to `map[i]`.
    pub fn embed(&self, target_dim: usize, map: &[usize]) -> MultiIndex {
        let mut m = MultiIndex::zero(target_dim);
        for (i, &e) in self.0.iter().enumerate() {
            m.0[map[i]] = e;
        }
        m
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Validity of a jet: `Exact` polynomials have no unknown tail, `Truncated(n)`
/// jets are valid through total degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetOrder {
    Exact,
    Truncated(u32),
}

impl JetOrder {
    pub fn min(self, other: JetOrder) -> JetOrder {
        match (self, other) {
            (JetOrder::Exact, o) | (o, JetOrder::Exact) => o,
            (JetOrder::Truncated(a), JetOrder::Truncated(b)) => JetOrder::Truncated(a.min(b)),
        }
    }

    pub fn admits(self, degree: u32) -> bool {
        match self {
            JetOrder::Exact => true,
            JetOrder::Truncated(n) => degree <= n,
        }
    }

    pub fn at_least(self, n: u32) -> bool {
        match self {
            JetOrder::Exact => true,
            JetOrder::Truncated(m) => m >= n,
        }
    }

    pub fn decrement(self, what: &str) -> Result<JetOrder> {
        match self {
            JetOrder::Exact => Ok(JetOrder::Exact),
            JetOrder::Truncated(0) => Err(Error::OrderExhausted(what.to_string())),
            JetOrder::Truncated(n) => Ok(JetOrder::Truncated(n - 1)),
        }
    }

    pub fn as_option(self) -> Option<u32> {
        match self {
            JetOrder::Exact => None,
            JetOrder::Truncated(n) => Some(n),
        }
    }
}

impl fmt::Display for JetOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetOrder::Exact => write!(f, "exact"),
            JetOrder::Truncated(n) => write!(f, "{n}"),
        }
    }
}

/// Sparse truncated Taylor expansion at a point; zero coefficients are never
/// stored, and truncated jets never store coefficients above their order.
#[derive(Clone, Debug)]
pub struct Jet {
    chart: Chart,
    order: JetOrder,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl Jet {
    pub fn zero(chart: &Chart, order: JetOrder) -> Jet {
        Jet {
            chart: chart.clone(),
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, value: Scalar) -> Jet {
        let mut coeffs = BTreeMap::new();
        if !value.is_zero() {
            coeffs.insert(MultiIndex::zero(chart.dim()), value);
        }
        Jet {
            chart: chart.clone(),
            order: JetOrder::Exact,
            coeffs,
        }
    }

    pub fn one(chart: &Chart) -> Jet {
        Jet::constant(chart, Scalar::one(chart.mode()))
    }

    pub fn from_i64(chart: &Chart, v: i64) -> Jet {
        Jet::constant(chart, Scalar::from_i64(v, chart.mode()))
    }

    /// Jet of the coordinate function `var` at a point where it takes `value`:
    /// `value + displacement`.
    pub fn coordinate(chart: &Chart, var: usize, value: Scalar) -> Jet {
        let mut jet = Jet::constant(chart, value);
        let unit = MultiIndex::unit(chart.dim(), var);
        if chart.admits(&unit) {
            jet.coeffs.insert(unit, Scalar::one(chart.mode()));
        }
        jet
    }

    pub fn from_terms(chart: &Chart, order: JetOrder, terms: Vec<(MultiIndex, Scalar)>) -> Jet {
        let mut jet = Jet::zero(chart, order);
        for (idx, v) in terms {
            jet.set_coefficient(idx, v);
        }
        jet
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn order(&self) -> JetOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeffs
            .get(&MultiIndex::zero(self.chart.dim()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.chart.mode()))
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Scalar {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.chart.mode()))
    }

    fn set_coefficient(&mut self, idx: MultiIndex, value: Scalar) {
        if value.is_zero() || !self.order.admits(idx.degree()) || !self.chart.admits(&idx) {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, value);
        }
    }

    fn add_to_coefficient(&mut self, idx: MultiIndex, value: &Scalar) {
        if value.is_zero() || !self.order.admits(idx.degree()) || !self.chart.admits(&idx) {
            return;
        }
        match self.coeffs.get_mut(&idx) {
            Some(existing) => {
                *existing = existing.add(value);
                if existing.is_zero() {
                    self.coeffs.remove(&idx);
                }
            }
            None => {
                self.coeffs.insert(idx, value.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Jet, op: &str) -> Result<()> {
        if !self.chart.same_as(&other.chart) {
            if self.chart.mode() != other.chart.mode() {
                return Err(Error::ModeMismatch);
            }
            return Err(Error::ChartMismatch(op.to_string()));
        }
        Ok(())
    }

    /// Lowers the validity to `order`, dropping coefficients above it.
    pub fn truncated(&self, order: JetOrder) -> Jet {
        let order = self.order.min(order);
        let mut out = Jet::zero(&self.chart, order);
        for (idx, v) in &self.coeffs {
            if order.admits(idx.degree()) {
                out.coeffs.insert(idx.clone(), v.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other, "add")?;
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for (idx, v) in &other.coeffs {
            out.add_to_coefficient(idx.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Jet {
        let mut out = Jet::zero(&self.chart, self.order);
        for (idx, v) in &self.coeffs {
            out.coeffs.insert(idx.clone(), v.neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Jet {
        if s.is_zero() {
            return Jet::zero(&self.chart, self.order);
        }
        let mut out = Jet::zero(&self.chart, self.order);
        for (idx, v) in &self.coeffs {
            let w = v.mul(s);
            if !w.is_zero() {
                out.coeffs.insert(idx.clone(), w);
            }
        }
        out
    }

    /// Truncated Cauchy product. Result order is the minimum of the operand
    /// orders; terms beyond the order or a chart cap are dropped.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other, "mul")?;
        let order = self.order.min(other.order);
        let mut out = Jet::zero(&self.chart, order);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(out);
        }
        // Iterate the smaller factor outermost.
        let (small, large) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ia, va) in &small.coeffs {
            let da = ia.degree();
            if !order.admits(da) {
                continue;
            }
            for (ib, vb) in &large.coeffs {
                if !order.admits(da + ib.degree()) {
                    continue;
                }
                let idx = ia.sum(ib);
                if !self.chart.admits(&idx) {
                    continue;
                }
                out.add_to_coefficient(idx, &va.mul(vb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Jet> {
        let mut acc = Jet::one(&self.chart).truncated(self.order);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse to the requested order. The constant term must
    /// be invertible (nonzero exactly in rational mode, above the chart
    /// tolerance in float mode). Inverting an exact constant stays exact.
    pub fn invert_to(&self, order: JetOrder) -> Result<Jet> {
        let c = self.constant_term();
        if c.is_negligible(self.chart.tol()) {
            return Err(Error::NotInvertible(
                "constant term of jet vanishes".to_string(),
            ));
        }
        let c_inv = c.recip()?;
        if self.coeffs.len() <= 1 {
            // Pure constant: reciprocal is exact.
            return Ok(Jet::constant(&self.chart, c_inv).truncated(self.order.min(order)));
        }
        let order = self.order.min(order);
        let n = match order {
            JetOrder::Truncated(n) => n,
            JetOrder::Exact => {
                return Err(Error::Invalid(
                    "inverting a non-constant exact jet needs an explicit truncation order".into(),
                ))
            }
        };
        // 1/a = (1/c) * sum_i (-q)^i with q = (a - c)/c, via Horner.
        let tail = self.sub(&Jet::constant(&self.chart, c))?.truncated(order);
        let q = tail.scale(&c_inv);
        let one = Jet::one(&self.chart).truncated(order);
        let mut acc = one.clone();
        for _ in 0..n {
            acc = one.sub(&q.mul(&acc)?)?;
        }
        Ok(acc.scale(&c_inv))
    }

    /// Inverse at the jet's own order (see [`Jet::invert_to`]).
    pub fn invert(&self) -> Result<Jet> {
        self.invert_to(self.order)
    }

    /// Formal partial derivative. Consumes one order of a truncated jet and
    /// fails with `OrderExhausted` at order zero; exact jets differentiate
    /// freely.
    pub fn partial(&self, var: usize) -> Result<Jet> {
        let order = self.order.decrement("jet_partial on an order-0 jet")?;
        let mut out = Jet::zero(&self.chart, order);
        for (idx, v) in &self.coeffs {
            if let Some(down) = idx.step_down(var) {
                let e = idx.exponent(var) as usize;
                out.add_to_coefficient(down, &v.mul_usize(e));
            }
        }
        Ok(out)
    }

    /// Embeds this jet into a larger chart; variable `i` maps to `map[i]`.
    /// The target chart's caps apply.
    pub fn embed(&self, target: &Chart, map: &[usize]) -> Jet {
        debug_assert_eq!(map.len(), self.chart.dim());
        let mut out = Jet::zero(target, self.order);
        for (idx, v) in &self.coeffs {
            let new_idx = idx.embed(target.dim(), map);
            out.set_coefficient(new_idx, v.clone());
        }
        out
    }

    /// Exact equality of stored coefficients (same chart assumed).
    pub fn same_terms(&self, other: &Jet) -> bool {
        self.coeffs == other.coeffs
    }

    /// Largest absolute value over coefficients (0 for the zero jet).
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .values()
            .map(|v| v.abs_f64())
            .fold(0.0, f64::max)
    }

    /// Drops the constant term, returning only degree >= 1 terms.
    pub fn nonconstant_part(&self) -> Jet {
        let mut out = self.clone();
        out.coeffs.remove(&MultiIndex::zero(self.chart.dim()));
        out
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, v) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", v.to_report_string())?;
            for (i, &e) in idx.exponents().iter().enumerate() {
                if e > 0 {
                    write!(f, "*d{}", self.chart.var_name(i))?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
