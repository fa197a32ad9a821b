//! Fraction-free elimination on matrices with polynomial entries and
//! nullspace extraction over the rational function field.

use super::{MultiPoly, RationalFunction};

/// Basis of the right nullspace of a matrix with polynomial entries, as
/// vectors of rational functions (one per non-pivot column).
///
/// Forward elimination is fraction-free in the Bareiss style: each update is
/// `(pivot * row - entry * pivot_row) / previous_pivot`, where the division is
/// exact by the Sylvester minor identity. Back substitution then runs over
/// rational functions, so the result is exact regardless of how much the
/// intermediate entries were reduced.
pub fn bareiss_nullspace(rows: &[Vec<MultiPoly>], cols: usize) -> Vec<Vec<RationalFunction>> {
    let num_vars = rows
        .first()
        .and_then(|r| r.first())
        .map(MultiPoly::num_vars)
        .expect("bareiss_nullspace needs at least one entry");
    assert!(rows.iter().all(|r| r.len() == cols));

    let mut m: Vec<Vec<MultiPoly>> = rows.to_vec();
    let nrows = m.len();
    let mut prev_piv = MultiPoly::one(num_vars);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        // Smallest nonzero entry (by term count) to slow coefficient growth.
        let pivot_row = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].num_terms());
        let Some(p) = pivot_row else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..nrows {
            if m[i][c].is_zero() && prev_piv == MultiPoly::one(num_vars) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..cols {
                let updated = &(&piv * &m[i][j]) - &(&factor * &m[r][j]);
                m[i][j] = updated.exact_div(&prev_piv).unwrap_or(updated);
            }
        }
        pivots.push((r, c));
        prev_piv = piv;
        r += 1;
    }

    let mut is_pivot = vec![false; cols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![RationalFunction::zero(num_vars); cols];
        v[free] = RationalFunction::one(num_vars);
        for &(pr, pc) in pivots.iter().rev() {
            let mut acc = RationalFunction::zero(num_vars);
            for j in pc + 1..cols {
                if m[pr][j].is_zero() || v[j].is_zero() {
                    continue;
                }
                acc = acc.add(&RationalFunction::from_poly(m[pr][j].clone()).mul(&v[j]));
            }
            v[pc] = acc.neg().div(&RationalFunction::from_poly(m[pr][pc].clone()));
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::super::{q_nullspace, QMatrix, Rational};
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn check_annihilates(rows: &[Vec<MultiPoly>], v: &[RationalFunction]) {
        for row in rows {
            let mut acc = RationalFunction::zero(v[0].num_vars());
            for (a, b) in row.iter().zip(v) {
                acc = acc.add(&RationalFunction::from_poly(a.clone()).mul(b));
            }
            assert!(acc.is_zero(), "row does not annihilate nullspace vector");
        }
    }

    #[test]
    fn single_row_two_cols() {
        let rows = vec![vec![x(2, 0), x(2, 1)]];
        let ns = bareiss_nullspace(&rows, 2);
        assert_eq!(ns.len(), 1);
        check_annihilates(&rows, &ns[0]);
        // Ratio v0/v1 = -x2/x1.
        let ratio = ns[0][0].div(&ns[0][1]);
        assert_eq!(ratio, RationalFunction::new(x(2, 1).scale(&rat(-1)), x(2, 0)));
    }

    #[test]
    fn rank_deficient_symbolic() {
        // Second row is x1 times the first: one pivot, two free columns.
        let n = 2;
        let r0 = vec![x(n, 0), x(n, 1), MultiPoly::one(n)];
        let r1: Vec<MultiPoly> = r0.iter().map(|p| p * &x(n, 0)).collect();
        let rows = vec![r0, r1];
        let ns = bareiss_nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            check_annihilates(&rows, v);
        }
    }

    #[test]
    fn matches_rational_nullspace_after_specialization() {
        let n = 2;
        let rows = vec![
            vec![x(n, 0), x(n, 1), &x(n, 0) + &x(n, 1)],
            vec![MultiPoly::one(n), MultiPoly::zero(n), MultiPoly::one(n)],
        ];
        let ns = bareiss_nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            check_annihilates(&rows, v);
        }
        // Specialize at (3, 5) and compare with the dense rational nullspace.
        let pt = [rat(3), rat(5)];
        let qm = QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|p| p.eval(&pt).unwrap()).collect())
                .collect(),
        );
        let qns = q_nullspace(&qm);
        assert_eq!(qns.len(), 1);
        let spec: Vec<Rational> = ns[0]
            .iter()
            .map(|f| f.numerator().eval(&pt).unwrap() / f.denominator().eval(&pt).unwrap())
            .collect();
        // Both one-dimensional: check proportionality.
        let a = &qns[0];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(&spec[i] * &a[j], &spec[j] * &a[i]);
            }
        }
    }
}
