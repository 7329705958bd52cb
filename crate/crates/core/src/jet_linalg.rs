//! Linear algebra over the jet ring and over plain scalars.
//!
//! Jet systems are solved by Gaussian elimination with `jet_invert` on
//! pivots; pivot admissibility is decided by the constant-term matrix, so a
//! singular constant-term matrix surfaces as `SingularLeadingMatrix` (which
//! downstream signals frame degeneracy / regularity failure).

use crate::error::{Error, Result};
use crate::jet::{Chart, Jet, JetOrder};
use crate::scalar::{Scalar, ScalarMode};

/// Solves `A x = b` over the jet ring for several right-hand sides at once.
/// `a` is row-major square, `b` is a list of columns. Works at the minimum
/// order of all entries unless `order` lowers it further.
pub fn jet_solve_columns(
    a: &[Vec<Jet>],
    b: &[Vec<Jet>],
    order: JetOrder,
) -> Result<Vec<Vec<Jet>>> {
    let n = a.len();
    if n == 0 {
        return Ok(b.to_vec());
    }
    let chart = a[0][0].chart().clone();
    let tol = chart.tol();
    let mut work_order = order;
    for row in a {
        if row.len() != n {
            return Err(Error::Invalid("jet_linear_solve: matrix not square".into()));
        }
        for e in row {
            work_order = work_order.min(e.order());
        }
    }
    for col in b {
        if col.len() != n {
            return Err(Error::Invalid(
                "jet_linear_solve: rhs length mismatch".into(),
            ));
        }
        for e in col {
            work_order = work_order.min(e.order());
        }
    }

    let mut m: Vec<Vec<Jet>> = a
        .iter()
        .map(|row| row.iter().map(|e| e.truncated(work_order)).collect())
        .collect();
    let mut rhs: Vec<Vec<Jet>> = b
        .iter()
        .map(|col| col.iter().map(|e| e.truncated(work_order)).collect())
        .collect();
    let ncols = rhs.len();

    let mut row_of_pivot = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for col in 0..n {
        // Pivot by constant term: first admissible row in rational mode,
        // largest magnitude in float mode.
        let mut pivot_row = None;
        match chart.mode() {
            ScalarMode::Rational => {
                for r in 0..n {
                    if !used[r] && !m[r][col].constant_term().is_zero() {
                        pivot_row = Some(r);
                        break;
                    }
                }
            }
            ScalarMode::Float { .. } => {
                let mut best = tol;
                for r in 0..n {
                    if used[r] {
                        continue;
                    }
                    let mag = m[r][col].constant_term().abs_f64();
                    if mag > best {
                        best = mag;
                        pivot_row = Some(r);
                    }
                }
            }
        }
        let Some(p) = pivot_row else {
            return Err(Error::SingularLeadingMatrix(format!(
                "no invertible pivot in column {col}"
            )));
        };
        used[p] = true;
        row_of_pivot[col] = p;
        let inv = m[p][col].invert_to(work_order)?;
        for c in col..n {
            m[p][c] = m[p][c].mul(&inv)?;
        }
        for rc in rhs.iter_mut() {
            rc[p] = rc[p].mul(&inv)?;
        }
        for r in 0..n {
            if r == p || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let delta = factor.mul(&m[p][c])?;
                m[r][c] = m[r][c].sub(&delta)?;
            }
            for rc in rhs.iter_mut() {
                let delta = factor.mul(&rc[p])?;
                rc[r] = rc[r].sub(&delta)?;
            }
        }
    }

    let mut solutions = Vec::with_capacity(ncols);
    for rc in rhs {
        let mut x = vec![Jet::zero(&chart, work_order); n];
        for col in 0..n {
            x[col] = rc[row_of_pivot[col]].clone();
        }
        solutions.push(x);
    }
    Ok(solutions)
}

/// Solves `A x = b` over the jet ring (single right-hand side) at the common
/// valid order of the inputs.
pub fn jet_linear_solve(a: &[Vec<Jet>], b: &[Jet]) -> Result<Vec<Jet>> {
    let mut out = jet_solve_columns(a, &[b.to_vec()], JetOrder::Exact)?;
    Ok(out.pop().unwrap())
}

/// Matrix-vector product over jets: `A v`.
pub fn jet_mat_vec(a: &[Vec<Jet>], v: &[Jet]) -> Result<Vec<Jet>> {
    let chart = a[0][0].chart().clone();
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        let mut acc = Jet::zero(&chart, JetOrder::Exact);
        for (e, x) in row.iter().zip(v.iter()) {
            acc = acc.add(&e.mul(x)?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Matrix product over jets.
pub fn jet_mat_mul(a: &[Vec<Jet>], b: &[Vec<Jet>]) -> Result<Vec<Vec<Jet>>> {
    let chart = a[0][0].chart().clone();
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![Jet::zero(&chart, JetOrder::Exact); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = Jet::zero(&chart, JetOrder::Exact);
            for l in 0..k {
                acc = acc.add(&a[i][l].mul(&b[l][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub fn jet_mat_scale(a: &[Vec<Jet>], s: &Scalar) -> Vec<Vec<Jet>> {
    a.iter()
        .map(|row| row.iter().map(|e| e.scale(s)).collect())
        .collect()
}

pub fn jet_mat_trace(a: &[Vec<Jet>]) -> Result<Jet> {
    let chart = a[0][0].chart().clone();
    let mut acc = Jet::zero(&chart, JetOrder::Exact);
    for (i, row) in a.iter().enumerate() {
        acc = acc.add(&row[i])?;
    }
    Ok(acc)
}

pub fn jet_identity(chart: &Chart, n: usize) -> Vec<Vec<Jet>> {
    let mut out = vec![vec![Jet::zero(chart, JetOrder::Exact); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = Jet::one(chart);
    }
    out
}

/// Inverse of a square jet matrix (constant-term matrix must be invertible).
pub fn jet_mat_inverse(a: &[Vec<Jet>], order: JetOrder) -> Result<Vec<Vec<Jet>>> {
    let n = a.len();
    let chart = a[0][0].chart().clone();
    let id = jet_identity(&chart, n);
    let cols: Vec<Vec<Jet>> = (0..n).map(|j| (0..n).map(|i| id[i][j].clone()).collect()).collect();
    let sol = jet_solve_columns(a, &cols, order)?;
    let mut inv = vec![vec![Jet::zero(&chart, order); n]; n];
    for (j, col) in sol.iter().enumerate() {
        for i in 0..n {
            inv[i][j] = col[i].clone();
        }
    }
    Ok(inv)
}

/// Rank of a scalar matrix (rows of equal length). Exact elimination in
/// rational mode; column-pivoted elimination with the mode tolerance in
/// float mode, scaled by the largest entry.
pub fn scalar_rank(rows: &[Vec<Scalar>], mode: ScalarMode) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|v| v.abs_f64())
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = mode.tol() * scale;
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let mut pivot = None;
        match mode {
            ScalarMode::Rational => {
                for r in row..m.len() {
                    if !m[r][col].is_zero() {
                        pivot = Some(r);
                        break;
                    }
                }
            }
            ScalarMode::Float { .. } => {
                let mut best = tol;
                for r in row..m.len() {
                    let mag = m[r][col].abs_f64();
                    if mag > best {
                        best = mag;
                        pivot = Some(r);
                    }
                }
            }
        }
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip().expect("pivot invertible");
        for c in col..ncols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..ncols {
                let delta = f.mul(&m[row][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
        rank += 1;
        row += 1;
        if row == m.len() {
            break;
        }
    }
    rank
}

/// Row-reduced echelon form; returns (reduced rows, pivot column per row).
pub fn scalar_rref(rows: &[Vec<Scalar>], mode: ScalarMode) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    if m.is_empty() || m[0].is_empty() {
        return (m, pivots);
    }
    let ncols = m[0].len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|v| v.abs_f64())
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = mode.tol() * scale;
    let mut row = 0;
    for col in 0..ncols {
        let mut pivot = None;
        for r in row..m.len() {
            let mag = m[r][col].abs_f64();
            let ok = match mode {
                ScalarMode::Rational => !m[r][col].is_zero(),
                ScalarMode::Float { .. } => mag > tol,
            };
            if ok {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip().expect("pivot invertible");
        for c in 0..ncols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..ncols {
                let delta = f.mul(&m[row][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

/// Basis of the kernel of the linear map given by `rows` (acting on column
/// vectors of length `ncols`).
pub fn scalar_nullspace(rows: &[Vec<Scalar>], ncols: usize, mode: ScalarMode) -> Vec<Vec<Scalar>> {
    let (rref, pivots) = scalar_rref(rows, mode);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Scalar::zero(mode); ncols];
        v[f] = Scalar::one(mode);
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot row r: x_pc = -sum_{free} rref[r][free] x_free
            v[pc] = rref[r][f].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solves the scalar system `M u = rhs` where the unknowns and right-hand
/// sides are jets but the coefficient matrix is scalar.
pub fn solve_scalar_system_jet_rhs(m: &[Vec<Scalar>], rhs: &[Jet]) -> Result<Vec<Jet>> {
    let n = m.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let chart = rhs[0].chart().clone();
    let mode = chart.mode();
    let tol = chart.tol();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut b: Vec<Jet> = rhs.to_vec();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for col in 0..n {
        let mut pivot = None;
        match mode {
            ScalarMode::Rational => {
                for r in 0..n {
                    if !used[r] && !a[r][col].is_zero() {
                        pivot = Some(r);
                        break;
                    }
                }
            }
            ScalarMode::Float { .. } => {
                let mut best = tol;
                for r in 0..n {
                    if used[r] {
                        continue;
                    }
                    let mag = a[r][col].abs_f64();
                    if mag > best {
                        best = mag;
                        pivot = Some(r);
                    }
                }
            }
        }
        let Some(p) = pivot else {
            return Err(Error::SingularLeadingMatrix(format!(
                "normalization system singular in column {col}"
            )));
        };
        used[p] = true;
        perm[col] = p;
        let inv = a[p][col].recip()?;
        for c in 0..n {
            a[p][c] = a[p][c].mul(&inv);
        }
        b[p] = b[p].scale(&inv);
        for r in 0..n {
            if r == p || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let delta = f.mul(&a[p][c]);
                a[r][c] = a[r][c].sub(&delta);
            }
            let delta = b[p].scale(&f);
            b[r] = b[r].sub(&delta)?;
        }
    }
    let mut x = vec![Jet::zero(&chart, JetOrder::Exact); n];
    for col in 0..n {
        x[col] = b[perm[col]].clone();
    }
    Ok(x)
}

/// Characteristic polynomial coefficients `[c_0 = 1, c_1, ..., c_n]` of a
/// square scalar matrix via the Faddeev–LeVerrier recursion (exact over
/// rationals).
pub fn scalar_charpoly(a: &[Vec<Scalar>], mode: ScalarMode) -> Vec<Scalar> {
    let n = a.len();
    let mut coeffs = vec![Scalar::one(mode)];
    let mut m: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(mode); n]; n];
    for step in 1..=n {
        // M_k = A * (M_{k-1} + c_{k-1} I)
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[i][i] = shifted[i][i].add(coeffs.last().unwrap());
        }
        let mut next = vec![vec![Scalar::zero(mode); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero(mode);
                for l in 0..n {
                    acc = acc.add(&a[i][l].mul(&shifted[l][j]));
                }
                next[i][j] = acc;
            }
        }
        let mut tr = Scalar::zero(mode);
        for i in 0..n {
            tr = tr.add(&next[i][i]);
        }
        let c = tr.mul(&Scalar::from_ratio(-1, step as i64, mode));
        coeffs.push(c);
        m = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::MultiIndex;

    fn chart1() -> Chart {
        Chart::new(vec!["u".into()], ScalarMode::Rational)
    }

    #[test]
    fn identity_system_returns_rhs() {
        let c = chart1();
        let a = jet_identity(&c, 3);
        let b = vec![Jet::from_i64(&c, 3), Jet::from_i64(&c, -1), Jet::from_i64(&c, 7)];
        let x = jet_linear_solve(&a, &b).unwrap();
        for (xi, bi) in x.iter().zip(b.iter()) {
            assert!(xi.same_terms(bi));
        }
    }

    #[test]
    fn one_by_one_geometric_series() {
        // A = [1+u], b = [1], order 2 -> x = 1 - u + u^2 (multiply-back oracle).
        let c = chart1();
        let u = Jet::coordinate(&c, 0, Scalar::zero(ScalarMode::Rational));
        let a = vec![vec![Jet::one(&c).add(&u).unwrap().truncated(JetOrder::Truncated(2))]];
        let b = vec![Jet::one(&c)];
        let x = jet_linear_solve(&a, &b).unwrap();
        let back = a[0][0].mul(&x[0]).unwrap();
        assert!(back.same_terms(&Jet::one(&c).truncated(JetOrder::Truncated(2))));
        let mut expected = Jet::zero(&c, JetOrder::Truncated(2));
        for (deg, s) in [(0u8, 1i64), (1, -1), (2, 1)] {
            expected = expected
                .add(&Jet::from_terms(
                    &c,
                    JetOrder::Truncated(2),
                    vec![(
                        MultiIndex::from_exponents(&[deg]),
                        Scalar::from_i64(s, ScalarMode::Rational),
                    )],
                ))
                .unwrap();
        }
        assert!(x[0].same_terms(&expected));
    }

    #[test]
    fn swapped_pivots() {
        // Constant-term matrix [[0,1],[1,0]]: needs row choice beyond the
        // diagonal; b = (1,0) gives x = (0,1) plus higher terms.
        let c = chart1();
        let u = Jet::coordinate(&c, 0, Scalar::zero(ScalarMode::Rational)).truncated(JetOrder::Truncated(2));
        let a = vec![
            vec![u.clone(), Jet::one(&c).truncated(JetOrder::Truncated(2))],
            vec![Jet::one(&c).truncated(JetOrder::Truncated(2)), u.clone()],
        ];
        let b = vec![Jet::one(&c), Jet::zero(&c, JetOrder::Exact)];
        let x = jet_linear_solve(&a, &b).unwrap();
        // Multiply back.
        let back = jet_mat_vec(&a, &x).unwrap();
        assert!(back[0].same_terms(&b[0].truncated(JetOrder::Truncated(2))));
        assert!(back[1].is_zero());
        assert!(x[1].constant_term().rational_is(1, 1));
        assert!(x[0].constant_term().is_zero());
    }

    #[test]
    fn singular_leading_matrix_detected() {
        let c = chart1();
        let u = Jet::coordinate(&c, 0, Scalar::zero(ScalarMode::Rational)).truncated(JetOrder::Truncated(2));
        let a = vec![vec![u]];
        let b = vec![Jet::one(&c)];
        assert!(matches!(
            jet_linear_solve(&a, &b),
            Err(Error::SingularLeadingMatrix(_))
        ));
    }

    #[test]
    fn charpoly_of_2x2() {
        let mode = ScalarMode::Rational;
        let a = vec![
            vec![Scalar::from_i64(2, mode), Scalar::from_i64(1, mode)],
            vec![Scalar::from_i64(0, mode), Scalar::from_i64(3, mode)],
        ];
        let cp = scalar_charpoly(&a, mode);
        // lambda^2 - 5 lambda + 6
        assert!(cp[0].rational_is(1, 1));
        assert!(cp[1].rational_is(-5, 1));
        assert!(cp[2].rational_is(6, 1));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let mode = ScalarMode::Rational;
        let rows = vec![vec![Scalar::from_i64(1, mode), Scalar::from_i64(2, mode)]];
        let ns = scalar_nullspace(&rows, 2, mode);
        assert_eq!(ns.len(), 1);
        // (x, y) with x + 2y = 0 and y = 1 -> x = -2
        assert!(ns[0][0].rational_is(-2, 1));
        assert!(ns[0][1].rational_is(1, 1));
    }
}
