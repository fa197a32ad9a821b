//! Quotients of multivariate polynomials.
//!
//! Full multivariate GCD is not implemented; representations are kept small by
//! stripping rational content, cancelling the monomial GCD, and attempting
//! exact division of the numerator by the denominator. Equality is decided by
//! cross-multiplication, so the partial reduction never affects correctness.

use std::fmt;

use num_traits::One;

use super::{MultiPoly, Rational};

#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.num_vars();
        RationalFunction { num: p, den: MultiPoly::one(n) }
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert_eq!(num.num_vars(), den.num_vars());
        assert!(!den.is_zero(), "zero denominator");
        let mut f = RationalFunction { num, den };
        f.reduce();
        f
    }

    pub fn zero(num_vars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(num_vars))
    }

    pub fn one(num_vars: usize) -> Self {
        Self::from_poly(MultiPoly::one(num_vars))
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.num_vars());
            return;
        }
        if let Some(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = MultiPoly::one(self.num_vars());
            return;
        }
        let mn = self.num.monomial_gcd();
        let md = self.den.monomial_gcd();
        let common: Vec<u32> = mn.iter().zip(&md).map(|(a, b)| *a.min(b)).collect();
        if common.iter().any(|&e| e > 0) {
            self.num = self.num.div_monomial(&common);
            self.den = self.den.div_monomial(&common);
        }
        let cd = self.den.content().recip();
        self.num = self.num.scale(&cd);
        self.den = self.den.scale(&cd);
        // One more divisibility attempt after monomial cancellation.
        if let Some(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = MultiPoly::one(self.num_vars());
        }
    }

    pub fn add(&self, rhs: &RationalFunction) -> RationalFunction {
        Self::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &RationalFunction) -> RationalFunction {
        Self::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn mul(&self, rhs: &RationalFunction) -> RationalFunction {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.scale(&-Rational::one()), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        use num_traits::Zero;
        if c.is_zero() {
            return Self::zero(self.num_vars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// The underlying polynomial when the denominator divides the numerator.
    pub fn as_polynomial(&self) -> Option<MultiPoly> {
        if self.den == MultiPoly::one(self.num_vars()) {
            return Some(self.num.clone());
        }
        self.num.exact_div(&self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_polynomial().is_some()
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one(self.num_vars()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn reduces_polynomial_quotients() {
        // (x1^2 - x2^2) / (x1 - x2) = x1 + x2
        let num = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let den = &x(0) - &x(1);
        let f = RationalFunction::new(num, den);
        assert!(f.is_polynomial());
        assert_eq!(f.as_polynomial().unwrap(), &x(0) + &x(1));
    }

    #[test]
    fn genuine_fraction_detected() {
        // x1^2 / x2 is not polynomial.
        let f = RationalFunction::new(&x(0) * &x(0), x(1));
        assert!(!f.is_polynomial());
    }

    #[test]
    fn field_arithmetic() {
        let a = RationalFunction::new(x(0), x(1)); // x1/x2
        let b = RationalFunction::new(x(1), x(0)); // x2/x1
        let prod = a.mul(&b);
        assert_eq!(prod, RationalFunction::one(2));
        let s = a.add(&b); // (x1^2 + x2^2)/(x1 x2)
        let expect =
            RationalFunction::new(&(&x(0) * &x(0)) + &(&x(1) * &x(1)), &x(0) * &x(1));
        assert_eq!(s, expect);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.div(&a), RationalFunction::one(2));
    }

    #[test]
    fn equality_is_cross_multiplied() {
        let a = RationalFunction::new(&x(0) * &x(1), &x(1) * &x(1)); // x1 x2 / x2^2
        let b = RationalFunction::new(x(0), x(1)); // x1 / x2
        assert_eq!(a, b);
        assert_eq!(a.scale(&rat(0)), RationalFunction::zero(2));
    }
}
