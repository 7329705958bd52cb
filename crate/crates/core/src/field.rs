//! Vector-field germs as jets: Lie brackets, iterated adjoints, frame
//! expansion, and pointwise distribution ranks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Chart, Jet, JetOrder};
use crate::jet_linalg::{jet_solve_columns, scalar_nullspace, scalar_rank, scalar_rref};
use crate::scalar::Scalar;

/// A vector-field germ at a point: one coefficient jet per chart direction.
/// The field's valid order is the minimum over its components.
#[derive(Clone, Debug)]
pub struct FieldJet {
    chart: Chart,
    point: Arc<Vec<Scalar>>,
    comps: Vec<Jet>,
}

impl FieldJet {
    pub fn new(chart: Chart, point: Arc<Vec<Scalar>>, comps: Vec<Jet>) -> FieldJet {
        assert_eq!(comps.len(), chart.dim());
        FieldJet {
            chart,
            point,
            comps,
        }
    }

    pub fn zero(chart: &Chart, point: Arc<Vec<Scalar>>) -> FieldJet {
        let comps = vec![Jet::zero(chart, JetOrder::Exact); chart.dim()];
        FieldJet::new(chart.clone(), point, comps)
    }

    /// The constant coordinate field in direction `var`.
    pub fn coordinate_direction(chart: &Chart, point: Arc<Vec<Scalar>>, var: usize) -> FieldJet {
        let mut f = FieldJet::zero(chart, point);
        f.comps[var] = Jet::one(chart);
        f
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn point(&self) -> &Arc<Vec<Scalar>> {
        &self.point
    }

    pub fn comps(&self) -> &[Jet] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Jet {
        &self.comps[i]
    }

    pub fn order(&self) -> JetOrder {
        self.comps
            .iter()
            .map(|c| c.order())
            .fold(JetOrder::Exact, JetOrder::min)
    }

    pub fn value_at_point(&self) -> Vec<Scalar> {
        self.comps.iter().map(|c| c.constant_term()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn check_context(&self, other: &FieldJet, op: &str) -> Result<()> {
        if !self.chart.same_as(&other.chart) {
            return Err(Error::ChartMismatch(op.to_string()));
        }
        if self.point != other.point {
            return Err(Error::Invalid(format!("{op}: fields at different points")));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldJet) -> Result<FieldJet> {
        self.check_context(other, "field add")?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldJet::new(self.chart.clone(), self.point.clone(), comps))
    }

    pub fn sub(&self, other: &FieldJet) -> Result<FieldJet> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldJet {
        let comps = self.comps.iter().map(|c| c.neg()).collect();
        FieldJet::new(self.chart.clone(), self.point.clone(), comps)
    }

    /// Multiplies the field by a scalar-function jet.
    pub fn scale_jet(&self, f: &Jet) -> Result<FieldJet> {
        let comps = self
            .comps
            .iter()
            .map(|c| c.mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldJet::new(self.chart.clone(), self.point.clone(), comps))
    }

    pub fn scale(&self, s: &Scalar) -> FieldJet {
        let comps = self.comps.iter().map(|c| c.scale(s)).collect();
        FieldJet::new(self.chart.clone(), self.point.clone(), comps)
    }

    /// Applies the field to a function jet as a derivation: sum_j X^j d_j f.
    pub fn apply(&self, f: &Jet) -> Result<Jet> {
        let mut acc = Jet::zero(&self.chart, JetOrder::Exact);
        for (j, coef) in self.comps.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            acc = acc.add(&coef.mul(&f.partial(j)?)?)?;
        }
        // An all-zero field must still cost one derivative of f.
        if self.comps.iter().all(|c| c.is_zero()) {
            acc = acc.truncated(f.order().decrement("apply on order-0 jet")?);
        }
        Ok(acc)
    }
}

/// Lie bracket `[X, Y]`: component i is `sum_j (X^j d_j Y^i - Y^j d_j X^i)`.
/// Costs one order of each truncated operand.
pub fn lie_bracket(x: &FieldJet, y: &FieldJet) -> Result<FieldJet> {
    x.check_context(y, "lie_bracket")?;
    let chart = x.chart.clone();
    let dim = chart.dim();
    let mut comps = Vec::with_capacity(dim);
    let order = x
        .order()
        .min(y.order())
        .decrement("lie_bracket needs order >= 1")?;
    for i in 0..dim {
        let mut acc = Jet::zero(&chart, JetOrder::Exact);
        for j in 0..dim {
            if !x.comps[j].is_zero() && !y.comps[i].is_zero() {
                acc = acc.add(&x.comps[j].mul(&y.comps[i].partial(j)?)?)?;
            }
            if !y.comps[j].is_zero() && !x.comps[i].is_zero() {
                acc = acc.sub(&y.comps[j].mul(&x.comps[i].partial(j)?)?)?;
            }
        }
        comps.push(acc.truncated(order));
    }
    Ok(FieldJet::new(chart, x.point.clone(), comps))
}

/// The i-fold left bracket `ad_X^i Y = [X, [X, ... [X, Y]]]`.
pub fn ad_power(x: &FieldJet, y: &FieldJet, i: usize) -> Result<FieldJet> {
    let mut acc = y.clone();
    for _ in 0..i {
        acc = lie_bracket(x, &acc)?;
    }
    Ok(acc)
}

/// Coefficients expanding a target field over a frame.
#[derive(Clone, Debug)]
pub struct FrameExpansion {
    pub coefficients: Vec<Jet>,
}

impl FrameExpansion {
    /// Recombines the coefficients with the frame; equals the target to the
    /// expansion order.
    pub fn reconstruct(&self, frame: &[FieldJet]) -> Result<FieldJet> {
        let chart = frame[0].chart().clone();
        let mut acc = FieldJet::zero(&chart, frame[0].point.clone());
        for (c, member) in self.coefficients.iter().zip(frame) {
            acc = acc.add(&member.scale_jet(c)?)?;
        }
        Ok(acc)
    }
}

/// Expands `target` over `frame` by solving the jet linear system whose
/// columns are the frame coefficients. The frame must have as many members
/// as the chart has dimensions, with an invertible constant-term matrix.
pub fn frame_expand(target: &FieldJet, frame: &[FieldJet]) -> Result<FrameExpansion> {
    let mut out = frame_expand_many(&[target.clone()], frame)?;
    Ok(out.pop().unwrap())
}

/// Batch version of [`frame_expand`]: one elimination, several targets.
pub fn frame_expand_many(targets: &[FieldJet], frame: &[FieldJet]) -> Result<Vec<FrameExpansion>> {
    let chart = frame[0].chart().clone();
    let dim = chart.dim();
    if frame.len() != dim {
        return Err(Error::Invalid(format!(
            "frame has {} members for a {dim}-dimensional chart",
            frame.len()
        )));
    }
    for member in frame {
        frame[0].check_context(member, "frame_expand")?;
    }
    // Row i, column s: component i of frame member s.
    let mut a = vec![Vec::with_capacity(frame.len()); dim];
    for member in frame {
        for (i, row) in a.iter_mut().enumerate() {
            row.push(member.comps[i].clone());
        }
    }
    let cols: Vec<Vec<Jet>> = targets.iter().map(|t| t.comps.clone()).collect();
    let sols = jet_solve_columns(&a, &cols, JetOrder::Exact)?;
    Ok(sols
        .into_iter()
        .map(|coefficients| FrameExpansion { coefficients })
        .collect())
}

/// Rank of the span of the fields' values at the point.
pub fn span_rank(fields: &[FieldJet]) -> usize {
    if fields.is_empty() {
        return 0;
    }
    let mode = fields[0].chart().mode();
    let rows: Vec<Vec<Scalar>> = fields.iter().map(|f| f.value_at_point()).collect();
    scalar_rank(&rows, mode)
}

/// Pointwise Cauchy-characteristic rank of the distribution spanned by
/// `spanning`: the space of constant combinations `Y = sum_s a_s W_s` with
/// `[Y, W_t]` inside the span at the point, for every t. Returns the rank
/// and a basis of coefficient vectors.
pub fn cauchy_characteristic_rank(spanning: &[FieldJet]) -> Result<(usize, Vec<Vec<Scalar>>)> {
    let r = spanning.len();
    if r == 0 {
        return Ok((0, Vec::new()));
    }
    let chart = spanning[0].chart().clone();
    let mode = chart.mode();
    let n = chart.dim();
    // Reduction data for the span of the values at the point.
    let value_rows: Vec<Vec<Scalar>> = spanning.iter().map(|f| f.value_at_point()).collect();
    let (rref, pivots) = scalar_rref(&value_rows, mode);
    let reduce = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &pc) in pivots.iter().enumerate() {
            let factor = out[pc].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..n {
                let delta = factor.mul(&rref[row][c]);
                out[c] = out[c].sub(&delta);
            }
        }
        out
    };
    // Rows of the homogeneous system over the coefficients a_s.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut bracket_values = vec![vec![Vec::new(); r]; r];
    for s in 0..r {
        for t in 0..r {
            let b = lie_bracket(&spanning[s], &spanning[t])?;
            bracket_values[s][t] = reduce(&b.value_at_point());
        }
    }
    for t in 0..r {
        for coord in 0..n {
            let mut row = Vec::with_capacity(r);
            for s in 0..r {
                row.push(bracket_values[s][t][coord].clone());
            }
            if row.iter().any(|v| !v.is_negligible(chart.tol())) {
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        // Fully characteristic: every combination works.
        let mut b = Vec::new();
        for s in 0..r {
            let mut v = vec![Scalar::zero(mode); r];
            v[s] = Scalar::one(mode);
            b.push(v);
        }
        b
    } else {
        scalar_nullspace(&rows, r, mode)
    };
    Ok((basis.len(), basis))
}

/// Realizes the fields named by constant coefficient vectors over `spanning`.
pub fn combine_constant(spanning: &[FieldJet], coeffs: &[Vec<Scalar>]) -> Result<Vec<FieldJet>> {
    let chart = spanning[0].chart().clone();
    let mut out = Vec::with_capacity(coeffs.len());
    for vec in coeffs {
        let mut acc = FieldJet::zero(&chart, spanning[0].point.clone());
        for (a, member) in vec.iter().zip(spanning) {
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&member.scale(a))?;
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarMode;

    fn rat(v: i64) -> Scalar {
        Scalar::from_i64(v, ScalarMode::Rational)
    }

    fn origin(chart: &Chart) -> Arc<Vec<Scalar>> {
        Arc::new(vec![Scalar::zero(chart.mode()); chart.dim()])
    }

    /// Chart (t, x0, x1) with X = d_t + x1 d_x0 (k=1, m=1, F=0).
    fn k1_setup() -> (Chart, Arc<Vec<Scalar>>, FieldJet, FieldJet) {
        let chart = Chart::new(
            vec!["t".into(), "x0".into(), "x1".into()],
            ScalarMode::Rational,
        );
        let p = origin(&chart);
        let mut x = FieldJet::zero(&chart, p.clone());
        x.comps[0] = Jet::one(&chart);
        x.comps[1] = Jet::coordinate(&chart, 2, rat(0));
        let y = FieldJet::coordinate_direction(&chart, p.clone(), 2);
        (chart, p, x, y)
    }

    #[test]
    fn bracket_of_field_with_itself_vanishes() {
        let (_, _, x, _) = k1_setup();
        let b = lie_bracket(&x, &x).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn coordinate_bracket_rule() {
        // X = d_t + x1 d_x0, Y = d_x1 -> [X, Y] = -d_x0.
        let (chart, p, x, y) = k1_setup();
        let b = lie_bracket(&x, &y).unwrap();
        let expected = FieldJet::coordinate_direction(&chart, p, 1).neg();
        for i in 0..3 {
            assert!(b.comps[i].same_terms(&expected.comps[i]), "component {i}");
        }
    }

    /// Trivial system x'''' = 0: chart (t, x0, x1, x2, x3).
    fn trivial_k3() -> (Chart, Arc<Vec<Scalar>>, FieldJet, FieldJet) {
        let chart = Chart::new(
            vec!["t".into(), "x0".into(), "x1".into(), "x2".into(), "x3".into()],
            ScalarMode::Rational,
        );
        let p = origin(&chart);
        let mut x = FieldJet::zero(&chart, p.clone());
        x.comps[0] = Jet::one(&chart);
        for i in 1..=3 {
            x.comps[i] = Jet::coordinate(&chart, i + 1, rat(0));
        }
        let v = FieldJet::coordinate_direction(&chart, p.clone(), 4);
        (chart, p, x, v)
    }

    #[test]
    fn ad_chain_for_trivial_system() {
        // ad^s d_x3 = (-1)^s d_x{3-s} for s <= 3, and ad^4 = 0.
        let (chart, p, x, v) = trivial_k3();
        for s in 0..=3usize {
            let a = ad_power(&x, &v, s).unwrap();
            let mut expected = FieldJet::coordinate_direction(&chart, p.clone(), 4 - s);
            if s % 2 == 1 {
                expected = expected.neg();
            }
            for i in 0..5 {
                assert!(a.comps[i].same_terms(&expected.comps[i]), "s={s} comp {i}");
            }
        }
        assert!(ad_power(&x, &v, 4).unwrap().is_zero());
    }

    #[test]
    fn ad4_equals_v_for_xiv_eq_x() {
        // x'''' = x: the fourth adjoint returns to V.
        let chart = Chart::new(
            vec!["t".into(), "x0".into(), "x1".into(), "x2".into(), "x3".into()],
            ScalarMode::Rational,
        );
        let p = origin(&chart);
        let mut x = FieldJet::zero(&chart, p.clone());
        x.comps[0] = Jet::one(&chart);
        for i in 1..=3 {
            x.comps[i] = Jet::coordinate(&chart, i + 1, rat(0));
        }
        x.comps[4] = Jet::coordinate(&chart, 1, rat(0)); // F = x0
        let v = FieldJet::coordinate_direction(&chart, p.clone(), 4);
        let a4 = ad_power(&x, &v, 4).unwrap();
        for i in 0..5 {
            assert!(a4.comps[i].same_terms(&v.comps[i]), "comp {i}");
        }
    }

    #[test]
    fn ad0_is_identity() {
        let (_, _, x, v) = trivial_k3();
        let a0 = ad_power(&x, &v, 0).unwrap();
        for i in 0..5 {
            assert!(a0.comps[i].same_terms(&v.comps[i]));
        }
    }

    #[test]
    fn expand_frame_member_gives_unit_vector() {
        let (_, _, x, v) = trivial_k3();
        let frame: Vec<FieldJet> = vec![
            x.clone(),
            v.clone(),
            ad_power(&x, &v, 1).unwrap(),
            ad_power(&x, &v, 2).unwrap(),
            ad_power(&x, &v, 3).unwrap(),
        ];
        let exp = frame_expand(&frame[2], &frame).unwrap();
        for (i, c) in exp.coefficients.iter().enumerate() {
            if i == 2 {
                assert!(c.constant_term().rational_is(1, 1));
                assert!(c.nonconstant_part().is_zero());
            } else {
                assert!(c.is_zero(), "coefficient {i} should vanish");
            }
        }
    }

    #[test]
    fn expansion_roundtrip_for_ad4() {
        // x'''' = x: ad^4 V expands to coefficient 1 on V, 0 elsewhere.
        let chart = Chart::new(
            vec!["t".into(), "x0".into(), "x1".into(), "x2".into(), "x3".into()],
            ScalarMode::Rational,
        );
        let p = origin(&chart);
        let mut x = FieldJet::zero(&chart, p.clone());
        x.comps[0] = Jet::one(&chart);
        for i in 1..=3 {
            x.comps[i] = Jet::coordinate(&chart, i + 1, rat(0));
        }
        x.comps[4] = Jet::coordinate(&chart, 1, rat(0));
        let v = FieldJet::coordinate_direction(&chart, p.clone(), 4);
        let frame: Vec<FieldJet> = std::iter::once(x.clone())
            .chain((0..=3).map(|s| ad_power(&x, &v, s).unwrap()))
            .collect();
        let target = ad_power(&x, &v, 4).unwrap();
        let exp = frame_expand(&target, &frame).unwrap();
        assert!(exp.coefficients[1].constant_term().rational_is(1, 1));
        for (i, c) in exp.coefficients.iter().enumerate() {
            if i != 1 {
                assert!(c.is_zero(), "coefficient {i}");
            }
        }
        let rec = exp.reconstruct(&frame).unwrap();
        let diff = rec.sub(&target).unwrap();
        assert!(diff.is_zero());
    }

    #[test]
    fn span_rank_counts_independent_values() {
        let (chart, p, x, v) = trivial_k3();
        assert_eq!(span_rank(&[v.clone(), v.clone()]), 1);
        let fields = vec![
            x.clone(),
            v.clone(),
            ad_power(&x, &v, 1).unwrap(),
            ad_power(&x, &v, 2).unwrap(),
        ];
        assert_eq!(span_rank(&fields), 4);
        let _ = chart;
        let _ = p;
    }

    #[test]
    fn cauchy_rank_of_commuting_frame() {
        let chart = Chart::new(
            vec!["a".into(), "b".into(), "c".into()],
            ScalarMode::Rational,
        );
        let p = origin(&chart);
        let w1 = FieldJet::coordinate_direction(&chart, p.clone(), 1);
        let w2 = FieldJet::coordinate_direction(&chart, p.clone(), 2);
        let (rank, _) = cauchy_characteristic_rank(&[w1, w2]).unwrap();
        assert_eq!(rank, 2);
    }

    #[test]
    fn cauchy_rank_of_contact_distribution() {
        // span{d_q, d_p + q d_z} in (q, p, z): bracket escapes -> rank 0.
        let chart = Chart::new(
            vec!["q".into(), "p".into(), "z".into()],
            ScalarMode::Rational,
        );
        let p = origin(&chart);
        let w1 = FieldJet::coordinate_direction(&chart, p.clone(), 0);
        let mut w2 = FieldJet::zero(&chart, p.clone());
        w2.comps[1] = Jet::one(&chart);
        w2.comps[2] = Jet::coordinate(&chart, 0, rat(0));
        let (rank, _) = cauchy_characteristic_rank(&[w1, w2]).unwrap();
        assert_eq!(rank, 0);
    }

    #[test]
    fn cauchy_of_first_prolongation_for_trivial_system() {
        // V^1 spanned by (X, V, adV): characteristic space is V itself.
        let (_, _, x, v) = trivial_k3();
        let spanning = vec![x.clone(), v.clone(), ad_power(&x, &v, 1).unwrap()];
        let (rank, basis) = cauchy_characteristic_rank(&spanning).unwrap();
        assert_eq!(rank, 1);
        // The single basis vector selects V (index 1) only.
        assert!(basis[0][0].is_zero());
        assert!(!basis[0][1].is_zero());
        assert!(basis[0][2].is_zero());
    }

    #[test]
    fn jacobi_identity_on_polynomial_fields() {
        let chart = Chart::new(
            vec!["a".into(), "b".into(), "c".into()],
            ScalarMode::Rational,
        );
        let p = origin(&chart);
        let mk = |coeffs: [(usize, i64, Option<usize>); 3]| {
            let mut f = FieldJet::zero(&chart, p.clone());
            for (dir, c, var) in coeffs {
                let base = Jet::from_i64(&chart, c);
                f.comps[dir] = match var {
                    None => base,
                    Some(v) => base
                        .mul(&Jet::coordinate(&chart, v, rat(0)))
                        .unwrap(),
                };
            }
            FieldJet::new(
                chart.clone(),
                p.clone(),
                f.comps.iter().map(|c| c.truncated(JetOrder::Truncated(4))).collect(),
            )
        };
        let x = mk([(0, 1, None), (1, 2, Some(0)), (2, -1, Some(1))]);
        let y = mk([(0, 3, Some(2)), (1, 1, None), (2, 2, Some(0))]);
        let z = mk([(0, -2, Some(1)), (1, 5, Some(2)), (2, 1, None)]);
        let j1 = lie_bracket(&x, &lie_bracket(&y, &z).unwrap()).unwrap();
        let j2 = lie_bracket(&y, &lie_bracket(&z, &x).unwrap()).unwrap();
        let j3 = lie_bracket(&z, &lie_bracket(&x, &y).unwrap()).unwrap();
        let total = j1.add(&j2).unwrap().add(&j3).unwrap();
        assert!(total.is_zero());
    }
}
