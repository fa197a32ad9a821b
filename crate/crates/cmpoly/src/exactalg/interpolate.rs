//! Exact interpolation of homogeneous polynomials from point evaluations.

use thiserror::Error;

use super::{MultiPoly, QMatrix, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterpolationError {
    /// The sample set does not determine the coefficients uniquely.
    #[error("samples determine only {have} of {need} coefficient constraints")]
    Underdetermined { have: usize, need: usize },
    /// No homogeneous polynomial of the requested degree fits the data.
    #[error("no homogeneous polynomial of degree {degree} fits the samples")]
    Inconsistent { degree: u32 },
}

/// All exponent vectors of total degree d in n variables, lexicographically
/// ordered. There are C(n + d - 1, d) of them.
pub fn monomials_of_degree(num_vars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; num_vars];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(out, cur, pos + 1, left - e);
        }
    }
    if num_vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, d);
    out
}

/// Recovers the unique homogeneous polynomial of degree d matching every
/// sample, or reports why none exists. Sampling at rational points and solving
/// the Vandermonde system exactly means a returned polynomial is certain, not
/// approximate.
pub fn interpolate_homogeneous(
    num_vars: usize,
    degree: u32,
    samples: &[(Vec<Rational>, Rational)],
) -> Result<MultiPoly, InterpolationError> {
    let monos = monomials_of_degree(num_vars, degree);
    let need = monos.len();
    let rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(pt, _)| {
            assert_eq!(pt.len(), num_vars);
            monos
                .iter()
                .map(|m| {
                    let mut acc = Rational::from_integer(1.into());
                    for (x, &e) in pt.iter().zip(m) {
                        for _ in 0..e {
                            acc *= x;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let a = QMatrix::from_rows(rows);
    let b: Vec<Rational> = samples.iter().map(|(_, v)| v.clone()).collect();
    let outcome = a.solve(&b);
    let Some(x) = outcome.particular else {
        return Err(InterpolationError::Inconsistent { degree });
    };
    if !outcome.nullspace.is_empty() {
        return Err(InterpolationError::Underdetermined { have: a.rank(), need });
    }
    Ok(MultiPoly::from_terms(num_vars, monos.into_iter().zip(x)))
}
