//! Square matrices with multivariate-polynomial entries: endomorphism-valued
//! polynomial maps on the tangent space.

use num_traits::Zero;

use super::{ExactError, MultiPoly, QMatrix, Rational};

#[derive(Clone, Debug)]
pub struct PolyMatrix {
    dim: usize,
    num_vars: usize,
    entries: Vec<MultiPoly>,
    declared_degree: Option<u32>,
}

/// Equality of the underlying matrices; the optional homogeneity annotation
/// is bookkeeping, not content.
impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.num_vars == other.num_vars
            && self.entries == other.entries
    }
}

impl Eq for PolyMatrix {}

impl PolyMatrix {
    pub fn zero(dim: usize, num_vars: usize) -> Self {
        PolyMatrix {
            dim,
            num_vars,
            entries: vec![MultiPoly::zero(num_vars); dim * dim],
            declared_degree: None,
        }
    }

    pub fn from_entries(dim: usize, num_vars: usize, entries: Vec<MultiPoly>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        assert!(entries.iter().all(|p| p.num_vars() == num_vars));
        PolyMatrix { dim, num_vars, entries, declared_degree: None }
    }

    pub fn with_declared_degree(mut self, d: u32) -> Self {
        debug_assert!(self.entries.iter().all(|p| p.is_homogeneous_of(d)));
        self.declared_degree = Some(d);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn declared_degree(&self) -> Option<u32> {
        self.declared_degree
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.num_vars(), self.num_vars);
        self.entries[i * self.dim + j] = p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &MultiPoly) {
        let cur = self.get(i, j) + p;
        self.entries[i * self.dim + j] = cur;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &PolyMatrix, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        assert_eq!(self.num_vars, rhs.num_vars);
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        PolyMatrix { dim: self.dim, num_vars: self.num_vars, entries, declared_degree: None }
    }

    /// Scalar multiplication by a polynomial.
    pub fn scale_poly(&self, c: &MultiPoly) -> PolyMatrix {
        assert_eq!(c.num_vars(), self.num_vars);
        let entries = self.entries.iter().map(|p| p * c).collect();
        PolyMatrix { dim: self.dim, num_vars: self.num_vars, entries, declared_degree: None }
    }

    pub fn scale_rat(&self, c: &Rational) -> PolyMatrix {
        let entries = self.entries.iter().map(|p| p.scale(c)).collect();
        PolyMatrix { dim: self.dim, num_vars: self.num_vars, entries, declared_degree: self.declared_degree }
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = PolyMatrix::zero(self.dim, self.num_vars);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.dim, self.num_vars);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Multiplies by a constant rational matrix on the left.
    pub fn lmul_qmatrix(&self, g: &QMatrix) -> PolyMatrix {
        assert_eq!(g.cols(), self.dim);
        let mut out = PolyMatrix::zero(self.dim, self.num_vars);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let c = g.get(i, k);
                if c.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    out.add_to(i, j, &self.get(k, j).scale(c));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> MultiPoly {
        let mut t = MultiPoly::zero(self.num_vars);
        for i in 0..self.dim {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Exact specialization at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<QMatrix, ExactError> {
        let mut m = QMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.get(i, j).eval(point)?);
            }
        }
        Ok(m)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).eval_f64(point)).collect())
            .collect()
    }

    /// Applies the matrix to the identity vector field X = (x_1, ..., x_n).
    /// Only meaningful when dim == num_vars.
    pub fn apply_to_position(&self) -> Vec<MultiPoly> {
        assert_eq!(self.dim, self.num_vars);
        (0..self.dim)
            .map(|i| {
                let mut acc = MultiPoly::zero(self.num_vars);
                for j in 0..self.dim {
                    acc = &acc + &(self.get(i, j) * &MultiPoly::var(self.num_vars, j));
                }
                acc
            })
            .collect()
    }

    /// Row-major flattening of the entries.
    pub fn flatten(&self) -> &[MultiPoly] {
        &self.entries
    }

    /// True iff every nonzero entry is homogeneous of degree d.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.entries.iter().all(|p| p.is_homogeneous_of(d))
    }
}
