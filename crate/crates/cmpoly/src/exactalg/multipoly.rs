//! Sparse multivariate polynomials over exact rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::fmt_rat;
use super::{ExactError, Rational};

/// A sparse multivariate polynomial with rational coefficients.
///
/// Terms map exponent vectors (one entry per variable) to nonzero
/// coefficients; the zero polynomial has an empty term map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Graded lexicographic order: total degree first, then lex.
pub(crate) fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    /// The coordinate function x_i (0-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars);
        let mut exp = vec![0; num_vars];
        exp[i] = 1;
        let mut p = Self::zero(num_vars);
        p.terms.insert(exp, Rational::one());
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), num_vars);
            p.add_term(exp, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Checked binary arithmetic; mismatched variable counts are a usage error.
    pub fn arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly, ExactError> {
        if a.num_vars != b.num_vars {
            return Err(ExactError::VarMismatch(a.num_vars, b.num_vars));
        }
        Ok(match op {
            PolyOp::Add => a + b,
            PolyOp::Sub => a - b,
            PolyOp::Mul => a * b,
        })
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        MultiPoly { num_vars: self.num_vars, terms }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = Self::one(self.num_vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        if point.len() != self.num_vars {
            return Err(ExactError::PointLength(point.len(), self.num_vars));
        }
        let mut acc = Rational::zero();
        for (exp, c) in &self.terms {
            let mut m = c.clone();
            for (x, &e) in point.iter().zip(exp.iter()) {
                for _ in 0..e {
                    m *= x;
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (exp, c) in &self.terms {
            let mut m = rational_to_f64(c);
            for (x, &e) in point.iter().zip(exp.iter()) {
                m *= x.powi(e as i32);
            }
            acc += m;
        }
        acc
    }

    /// Maximum total degree of a term, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Some(d) if every term has total degree d (conventionally the zero
    /// polynomial is homogeneous of every degree and returns None).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    /// Leading term under graded lex.
    pub(crate) fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Exact division: Some(q) with self = q * d, or None if d does not
    /// divide self. Greedy leading-term cancellation under graded lex; each
    /// step strictly decreases the leading monomial, so this both terminates
    /// and decides divisibility.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.num_vars, d.num_vars);
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dexp, dc) = d.leading_term().unwrap();
        let dexp = dexp.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.num_vars);
        while let Some((rexp, rc)) = rem.leading_term() {
            let mut qexp = vec![0u32; self.num_vars];
            for i in 0..self.num_vars {
                if rexp[i] < dexp[i] {
                    return None;
                }
                qexp[i] = rexp[i] - dexp[i];
            }
            let qc = rc / &dc;
            let mut t = Self::zero(self.num_vars);
            t.terms.insert(qexp.clone(), qc.clone());
            rem = &rem - &(&t * d);
            quot.add_term(qexp, qc);
        }
        Some(quot)
    }

    /// Rational content: gcd of numerators over lcm of denominators, with the
    /// sign of the graded-lex leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut gnum = BigInt::zero();
        let mut lden = BigInt::one();
        for c in self.terms.values() {
            gnum = gnum.gcd(&c.numer().abs());
            lden = lden.lcm(c.denom());
        }
        let c = Rational::new(gnum, lden);
        if self.leading_term().unwrap().1.is_negative() {
            -c
        } else {
            c
        }
    }

    /// Componentwise minimum of all exponent vectors: the largest monomial
    /// dividing every term. Zero vector for the zero polynomial.
    pub fn monomial_gcd(&self) -> Vec<u32> {
        let mut g = vec![u32::MAX; self.num_vars];
        for exp in self.terms.keys() {
            for (gi, &e) in g.iter_mut().zip(exp.iter()) {
                *gi = (*gi).min(e);
            }
        }
        if self.is_zero() {
            vec![0; self.num_vars]
        } else {
            g
        }
    }

    /// Divides every term by the given monomial (must divide all terms).
    pub fn div_monomial(&self, m: &[u32]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let e2: Vec<u32> = e.iter().zip(m.iter()).map(|(&a, &b)| a.checked_sub(b).expect("monomial does not divide")).collect();
                (e2, c.clone())
            })
            .collect();
        MultiPoly { num_vars: self.num_vars, terms }
    }

    /// The squared-norm polynomial of a symmetric Gram matrix: x^T G x.
    pub fn gram_norm_sq(g: &super::QMatrix) -> MultiPoly {
        let n = g.rows();
        let mut p = MultiPoly::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut exp = vec![0u32; n];
                exp[i] += 1;
                exp[j] += 1;
                p.add_term(exp, g.get(i, j).clone());
            }
        }
        p
    }

    /// Serializes as a term list [[exponents], "p/q"] in descending graded lex.
    pub fn to_term_list(&self) -> Vec<(Vec<u32>, String)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        ts.into_iter().map(|(e, c)| (e.clone(), fmt_rat(c))).collect()
    }
}

/// Binary operations for [`MultiPoly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Good enough for the float cross-check path; exact code never uses this.
    let num = r.numer();
    let den = r.denom();
    let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = MultiPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u32> = ea.iter().zip(eb.iter()).map(|(&a, &b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        MultiPoly { num_vars: self.num_vars, terms }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        for (i, (exp, c)) in ts.iter().enumerate() {
            let is_const = exp.iter().all(|&e| e == 0);
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if is_const || !abs.is_one() {
                write!(f, "{}", fmt_rat(&abs))?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (v, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "x{}", v + 1)?;
                } else {
                    write!(f, "x{}^{}", v + 1, e)?;
                }
            }
        }
        Ok(())
    }
}
