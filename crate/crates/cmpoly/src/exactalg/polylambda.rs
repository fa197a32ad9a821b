//! Polynomials in a distinguished variable L whose coefficients are
//! multivariate polynomials in the base-point coordinates.

use std::fmt;

use super::{ExactError, MultiPoly, Rational, UniPoly};

/// Stored with ascending powers of L; the leading coefficient is nonzero
/// unless the whole polynomial is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyLambda {
    num_vars: usize,
    coeffs: Vec<MultiPoly>,
}

impl PolyLambda {
    pub fn zero(num_vars: usize) -> Self {
        PolyLambda { num_vars, coeffs: Vec::new() }
    }

    /// From ascending powers of L.
    pub fn from_ascending(num_vars: usize, mut coeffs: Vec<MultiPoly>) -> Self {
        assert!(coeffs.iter().all(|c| c.num_vars() == num_vars));
        while coeffs.last().is_some_and(MultiPoly::is_zero) {
            coeffs.pop();
        }
        PolyLambda { num_vars, coeffs }
    }

    /// From descending powers of L (leading coefficient first).
    pub fn from_descending(num_vars: usize, mut coeffs: Vec<MultiPoly>) -> Self {
        coeffs.reverse();
        Self::from_ascending(num_vars, coeffs)
    }

    /// The monomial L^d.
    pub fn lambda_pow(num_vars: usize, d: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(num_vars); d + 1];
        coeffs[d] = MultiPoly::one(num_vars);
        PolyLambda { num_vars, coeffs }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of L^i.
    pub fn coeff(&self, i: usize) -> MultiPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| MultiPoly::zero(self.num_vars))
    }

    /// Coefficients with the leading one first.
    pub fn coeffs_descending(&self) -> Vec<MultiPoly> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }

    pub fn leading(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|l| l == &MultiPoly::one(self.num_vars))
    }

    pub fn add(&self, rhs: &PolyLambda) -> PolyLambda {
        assert_eq!(self.num_vars, rhs.num_vars);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_ascending(self.num_vars, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &PolyLambda) -> PolyLambda {
        assert_eq!(self.num_vars, rhs.num_vars);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_ascending(self.num_vars, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &PolyLambda) -> PolyLambda {
        assert_eq!(self.num_vars, rhs.num_vars);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.num_vars);
        }
        let mut out = vec![MultiPoly::zero(self.num_vars); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_ascending(self.num_vars, out)
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> PolyLambda {
        Self::from_ascending(self.num_vars, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Division with remainder; the divisor must be monic in L so that the
    /// quotient stays polynomial.
    pub fn divmod(&self, b: &PolyLambda) -> Result<(PolyLambda, PolyLambda), ExactError> {
        assert_eq!(self.num_vars, b.num_vars);
        if b.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if !b.is_monic() {
            return Err(ExactError::NonMonicDivisor);
        }
        let bd = b.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = PolyLambda::zero(self.num_vars);
        while let Some(rd) = rem.degree() {
            if rd < bd {
                break;
            }
            let lead = rem.leading().unwrap().clone();
            let t = Self::lambda_pow(self.num_vars, rd - bd).scale_poly(&lead);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(b));
        }
        Ok((quot, rem))
    }

    pub fn divisible_by(&self, b: &PolyLambda) -> Result<bool, ExactError> {
        Ok(self.divmod(b)?.1.is_zero())
    }

    /// Specializes the base point, leaving a univariate polynomial in L.
    pub fn eval_point(&self, point: &[Rational]) -> Result<UniPoly, ExactError> {
        let coeffs = self.coeffs.iter().map(|c| c.eval(point)).collect::<Result<_, _>>()?;
        Ok(UniPoly::from_coeffs(coeffs))
    }

    /// True iff the coefficient of L^(d-i) is zero or homogeneous of degree i,
    /// d being the degree in L. This is the grading of an admissible relation.
    pub fn is_admissibly_graded(&self) -> bool {
        let Some(d) = self.degree() else { return true };
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || c.homogeneous_degree() == Some((d - i) as u32))
    }
}

impl fmt::Display for PolyLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == &MultiPoly::one(self.num_vars) && i > 0 {
                // bare power of L
            } else if c.num_terms() == 1 || i == 0 {
                write!(f, "{}", c)?;
                if i > 0 {
                    write!(f, "*")?;
                }
            } else {
                write!(f, "({})", c)?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "L")?;
            } else if i > 1 {
                write!(f, "L^{}", i)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn norm_sq(n: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(n);
        for i in 0..n {
            let x = MultiPoly::var(n, i);
            p = &p + &(&x * &x);
        }
        p
    }

    #[test]
    fn divmod_example() {
        // L^4 divided by L^3 + |x|^2 L: quotient L, remainder -|x|^2 L^2.
        let n = 2;
        let a = PolyLambda::lambda_pow(n, 4);
        let b = PolyLambda::lambda_pow(n, 3)
            .add(&PolyLambda::lambda_pow(n, 1).scale_poly(&norm_sq(n)));
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, PolyLambda::lambda_pow(n, 1));
        let expect_r = PolyLambda::lambda_pow(n, 2).scale_poly(&norm_sq(n).scale(&rat(-1)));
        assert_eq!(r, expect_r);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn divmod_rejects_non_monic() {
        let n = 1;
        let a = PolyLambda::lambda_pow(n, 2);
        let b = PolyLambda::lambda_pow(n, 1).scale_poly(&MultiPoly::var(n, 0));
        assert!(matches!(a.divmod(&b), Err(ExactError::NonMonicDivisor)));
    }

    #[test]
    fn eval_point_specializes() {
        let n = 2;
        let p = PolyLambda::lambda_pow(n, 3)
            .add(&PolyLambda::lambda_pow(n, 1).scale_poly(&norm_sq(n)));
        let u = p.eval_point(&[rat(1), rat(2)]).unwrap();
        // L^3 + 5 L
        assert_eq!(u.coeff(3), rat(1));
        assert_eq!(u.coeff(1), rat(5));
        assert_eq!(u.coeff(0), rat(0));
    }

    #[test]
    fn admissible_grading() {
        let n = 2;
        let good = PolyLambda::lambda_pow(n, 3)
            .add(&PolyLambda::lambda_pow(n, 1).scale_poly(&norm_sq(n)));
        assert!(good.is_admissibly_graded());
        let bad = PolyLambda::lambda_pow(n, 3)
            .add(&PolyLambda::lambda_pow(n, 2).scale_poly(&norm_sq(n)));
        assert!(!bad.is_admissibly_graded());
    }
}
