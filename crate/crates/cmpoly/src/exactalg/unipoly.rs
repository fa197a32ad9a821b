//! Univariate polynomials over the rationals: division, GCD, Sturm chains and
//! exact real-root counting.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::fmt_rat;
use super::{ExactError, Rational};

/// Coefficients in ascending degree order; the leading coefficient is nonzero
/// unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(d: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> UniPoly {
        self.scale(&-Rational::one())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.clone().recip()),
        }
    }

    /// Exact Euclidean division: self = q * b + r with deg r < deg b.
    pub fn divmod(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly), ExactError> {
        if b.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let bl = b.leading().unwrap().clone();
        let bd = b.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < bd {
                break;
            }
            let c = rem.leading().unwrap() / &bl;
            let t = UniPoly::monomial(rd - bd, c);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(b));
        }
        Ok((quot, rem))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(((i + 1) as i64).into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic GCD via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out repeated factors.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.divmod(&g).unwrap().0
    }

    /// True iff b divides self exactly.
    pub fn divisible_by(&self, b: &UniPoly) -> bool {
        self.divmod(b).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 || !abs.is_one() {
                write!(f, "{}", fmt_rat(&abs))?;
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

/// Region of the real line for root counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootRegion {
    AllReals,
    Negatives,
    Positives,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootProfile {
    pub num_distinct_real_roots: usize,
    pub all_simple: bool,
}

fn sign_changes(values: &[Rational]) -> usize {
    let signs: Vec<i8> = values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Exact count of distinct real roots of q in the requested region via Sturm
/// chains, plus a simplicity flag (gcd(q, q') constant). Zero does not count
/// as a negative or positive root.
pub fn sturm_root_profile(q: &UniPoly, region: RootRegion) -> RootProfile {
    assert!(!q.is_zero(), "root profile of the zero polynomial");
    let all_simple = q.gcd(&q.derivative()).degree() == Some(0) || q.degree() == Some(0);

    // Factor out the root at zero so chain evaluations at 0 are sign-definite.
    let mut q0 = q.clone();
    let mut zero_mult = 0usize;
    while q0.coeff(0).is_zero() && !q0.is_zero() {
        q0 = UniPoly::from_coeffs(q0.coeffs()[1..].to_vec());
        zero_mult += 1;
    }
    let p = q0.squarefree_part();
    if p.degree().unwrap_or(0) == 0 {
        let n = match region {
            RootRegion::AllReals => usize::from(zero_mult > 0),
            _ => 0,
        };
        return RootProfile { num_distinct_real_roots: n, all_simple };
    }

    // Sturm chain of the squarefree part.
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].divmod(&chain[n - 1]).unwrap().1;
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }

    let at_minus_inf: Vec<Rational> = chain
        .iter()
        .map(|s| {
            let d = s.degree().unwrap();
            let l = s.leading().unwrap().clone();
            if d % 2 == 0 {
                l
            } else {
                -l
            }
        })
        .collect();
    let at_plus_inf: Vec<Rational> = chain.iter().map(|s| s.leading().unwrap().clone()).collect();
    let at_zero: Vec<Rational> = chain.iter().map(|s| s.coeff(0)).collect();

    let v_neg = sign_changes(&at_minus_inf);
    let v_zero = sign_changes(&at_zero);
    let v_pos = sign_changes(&at_plus_inf);

    let n = match region {
        RootRegion::AllReals => v_neg - v_pos + usize::from(zero_mult > 0),
        RootRegion::Negatives => v_neg - v_zero,
        RootRegion::Positives => v_zero - v_pos,
    };
    RootProfile { num_distinct_real_roots: n, all_simple }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn upoly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divmod_examples() {
        // (L^3 + L) / L = (L^2 + 1, 0)
        let a = upoly(&[0, 1, 0, 1]);
        let (q, r) = a.divmod(&upoly(&[0, 1])).unwrap();
        assert_eq!(q, upoly(&[1, 0, 1]));
        assert!(r.is_zero());
        // (L^3 + L) / (L^2 + 1) = (L, 0)
        let (q, r) = a.divmod(&upoly(&[1, 0, 1])).unwrap();
        assert_eq!(q, upoly(&[0, 1]));
        assert!(r.is_zero());
        // (L^3 + L) / (L + 1) = (L^2 - L + 2, -2)
        let (q, r) = a.divmod(&upoly(&[1, 1])).unwrap();
        assert_eq!(q, upoly(&[2, -1, 1]));
        assert_eq!(r, upoly(&[-2]));
        assert!(a.divmod(&UniPoly::zero()).is_err());
    }

    #[test]
    fn sturm_examples() {
        // mu + 1 on negatives: one simple root at -1.
        let p = upoly(&[1, 1]);
        assert_eq!(
            sturm_root_profile(&p, RootRegion::Negatives),
            RootProfile { num_distinct_real_roots: 1, all_simple: true }
        );
        // (mu + 1)^2: one distinct root, not simple.
        let p2 = p.mul(&p);
        assert_eq!(
            sturm_root_profile(&p2, RootRegion::Negatives),
            RootProfile { num_distinct_real_roots: 1, all_simple: false }
        );
        // mu^2 + 3 mu + 2: roots -1, -2.
        let p3 = upoly(&[2, 3, 1]);
        assert_eq!(
            sturm_root_profile(&p3, RootRegion::Negatives),
            RootProfile { num_distinct_real_roots: 2, all_simple: true }
        );
        assert_eq!(sturm_root_profile(&p3, RootRegion::Positives).num_distinct_real_roots, 0);
        assert_eq!(sturm_root_profile(&p3, RootRegion::AllReals).num_distinct_real_roots, 2);
    }

    #[test]
    fn sturm_with_zero_root() {
        // L^3 + L = L(L^2 + 1): one real root, at zero.
        let p = upoly(&[0, 1, 0, 1]);
        let prof = sturm_root_profile(&p, RootRegion::AllReals);
        assert_eq!(prof.num_distinct_real_roots, 1);
        assert!(prof.all_simple);
        assert_eq!(sturm_root_profile(&p, RootRegion::Negatives).num_distinct_real_roots, 0);
        assert_eq!(sturm_root_profile(&p, RootRegion::Positives).num_distinct_real_roots, 0);
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = upoly(&[1, 1]); // L + 1
        let q = upoly(&[2, 1]); // L + 2
        let prod = p.mul(&p).mul(&q);
        assert_eq!(prod.gcd(&prod.derivative()), p);
        assert_eq!(prod.squarefree_part(), p.mul(&q));
    }
}
