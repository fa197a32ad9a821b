//! Curvature data generated from a Lie algebra with a left-invariant metric:
//! the Levi-Civita bilinear map, iterated covariant derivatives of the
//! curvature tensor, and the symmetrized jets as polynomial matrices.

mod catalog;
mod io;
mod tensor;

pub use catalog::{
    catalog, catalog_entries, flat, heisenberg, heisenberg_scaled, parse_space,
    standard_instances, su2_berger, su2_biinvariant, torus, CatalogEntry,
};
pub use io::{load_space_file, parse_space_json};
pub use tensor::SparseTensor;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::{MultiPoly, PolyMatrix, QMatrix, Rational};

#[derive(Debug, Error)]
pub enum LieError {
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFails(usize, usize, usize),
    #[error("metric is not symmetric")]
    MetricNotSymmetric,
    #[error("metric is not positive definite")]
    MetricNotPositiveDefinite,
    #[error("degenerate metric")]
    DegenerateMetric,
    #[error("unknown space '{0}'")]
    UnknownSpace(String),
    #[error("invalid parameters for '{0}': {1}")]
    BadParams(String, String),
    #[error("jet order {requested} exceeds computed order {available}")]
    OrderUnavailable { requested: usize, available: usize },
    #[error("space file: {0}")]
    SpaceFile(String),
}

/// A Lie algebra with structure constants [e_i, e_j] = sum_k c_ij^k e_k and a
/// left-invariant metric given by its Gram matrix in the same basis.
#[derive(Clone, Debug)]
pub struct LiePresentation {
    name: String,
    dim: usize,
    // c[i][j][k]
    brackets: Vec<Vec<Vec<Rational>>>,
    metric: QMatrix,
    positive_definite: bool,
}

impl LiePresentation {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        brackets: Vec<Vec<Vec<Rational>>>,
        metric: QMatrix,
        positive_definite: bool,
    ) -> Result<Self, LieError> {
        assert_eq!(brackets.len(), dim);
        assert!(brackets.iter().all(|r| r.len() == dim && r.iter().all(|c| c.len() == dim)));
        assert_eq!((metric.rows(), metric.cols()), (dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if brackets[i][j][k] != -brackets[j][i][k].clone() {
                        return Err(LieError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        // Jacobi: [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0.
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    for l in 0..dim {
                        let mut acc = Rational::zero();
                        for m in 0..dim {
                            acc += &brackets[j][k][m] * &brackets[i][m][l];
                            acc += &brackets[k][i][m] * &brackets[j][m][l];
                            acc += &brackets[i][j][m] * &brackets[k][m][l];
                        }
                        if !acc.is_zero() {
                            return Err(LieError::JacobiFails(i, j, k));
                        }
                    }
                }
            }
        }
        if !metric.is_symmetric() {
            return Err(LieError::MetricNotSymmetric);
        }
        if positive_definite {
            if !metric.is_positive_definite() {
                return Err(LieError::MetricNotPositiveDefinite);
            }
        } else if metric.determinant().is_zero() {
            return Err(LieError::DegenerateMetric);
        }
        Ok(LiePresentation { name: name.into(), dim, brackets, metric, positive_definite })
    }

    /// Builds the full structure-constant array from a sparse list of
    /// generating relations (i, j, k, c) meaning [e_i, e_j] gains c e_k; the
    /// antisymmetric counterpart is filled in automatically.
    pub fn from_relations(
        name: impl Into<String>,
        dim: usize,
        relations: &[(usize, usize, usize, Rational)],
        metric: QMatrix,
        positive_definite: bool,
    ) -> Result<Self, LieError> {
        let mut brackets = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, k, c) in relations {
            brackets[*i][*j][*k] += c;
            brackets[*j][*i][*k] -= c;
        }
        Self::new(name, dim, brackets, metric, positive_definite)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &QMatrix {
        &self.metric
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    /// Coefficients of [e_i, e_j] in the basis.
    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        &self.brackets[i][j]
    }

    pub fn bracket_vec(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..self.dim {
                    out[k] += &f * &self.brackets[i][j][k];
                }
            }
        }
        out
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let gv = self.metric.matvec(v);
        u.iter().zip(&gv).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// The Levi-Civita connection restricted to left-invariant fields, as the
/// bilinear map alpha(e_i, e_j) = sum_k a_ij^k e_k.
#[derive(Clone, Debug)]
pub struct ConnectionMap {
    dim: usize,
    coeffs: Vec<Vec<Vec<Rational>>>,
}

impl ConnectionMap {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self, i: usize, j: usize) -> &[Rational] {
        &self.coeffs[i][j]
    }

    pub fn alpha_vec(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..self.dim {
                    out[k] += &f * &self.coeffs[i][j][k];
                }
            }
        }
        out
    }

    /// The endomorphism A(v) with A(v) w = alpha(v, w), as a matrix.
    pub fn left_matrix(&self, v: &[Rational]) -> QMatrix {
        let mut m = QMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let val = m.get(k, j) + &(&v[i] * &self.coeffs[i][j][k]);
                    m.set(k, j, val);
                }
            }
        }
        m
    }

    /// Coefficient arrays as f64 for the numeric integrator.
    pub fn coeffs_f64(&self) -> Vec<Vec<Vec<f64>>> {
        self.coeffs
            .iter()
            .map(|a| {
                a.iter()
                    .map(|b| b.iter().map(crate::exactalg::rational_to_f64).collect())
                    .collect()
            })
            .collect()
    }
}

/// Solves 2 <alpha(e_i, e_j), Z> = <[e_i,e_j],Z> - <[e_j,Z],e_i> + <[Z,e_i],e_j>
/// for every basis pair.
pub fn koszul(pres: &LiePresentation) -> Result<ConnectionMap, LieError> {
    let n = pres.dim;
    let g = &pres.metric;
    let ginv = g.inverse().ok_or(LieError::DegenerateMetric)?;
    let half = crate::exactalg::ratio(1, 2);
    // ip[i][j][l] = <[e_i, e_j], e_l>
    let mut ip = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut acc = Rational::zero();
                for m in 0..n {
                    acc += &pres.brackets[i][j][m] * g.get(m, l);
                }
                ip[i][j][l] = acc;
            }
        }
    }
    let mut coeffs = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let w: Vec<Rational> = (0..n)
                .map(|l| (&ip[i][j][l] - &ip[j][l][i] + &ip[l][i][j]) * &half)
                .collect();
            coeffs[i][j] = ginv.matvec(&w);
        }
    }
    Ok(ConnectionMap { dim: n, coeffs })
}

/// The curvature tensor and its covariant derivatives on left-invariant
/// fields. `components[k]` holds nabla^k R with derivative slots first:
/// D_k(W_1..W_k; Y, U, V).
#[derive(Clone, Debug)]
pub struct CurvatureTensor {
    dim: usize,
    components: Vec<SparseTensor>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, k: usize) -> Result<&SparseTensor, LieError> {
        self.components
            .get(k)
            .ok_or(LieError::OrderUnavailable { requested: k, available: self.max_order() })
    }

    /// <D_0(e_y, e_u) e_v, e_z> with respect to the metric g.
    pub fn riem(&self, g: &QMatrix, y: usize, u: usize, v: usize, z: usize) -> Rational {
        let d0 = &self.components[0];
        let mut acc = Rational::zero();
        for a in 0..self.dim {
            let c = d0.get(&[y, u, v], a);
            if c.is_zero() {
                continue;
            }
            acc += &c * g.get(a, z);
        }
        acc
    }

    /// Extends the derivative sequence in place up to the requested order.
    pub fn extend(&mut self, alpha: &ConnectionMap, max_order: usize) {
        let n = self.dim;
        while self.max_order() < max_order {
            let prev = self.components.last().unwrap();
            let slots = prev.num_inputs();
            let mut next = SparseTensor::new(n, slots + 1);
            let mut target = vec![0usize; slots + 1];
            for (inputs, a, v) in prev.iter() {
                for w0 in 0..n {
                    target[0] = w0;
                    target[1..].copy_from_slice(&inputs);
                    // alpha(W0, D_k(...)) routed through the output index.
                    for (m, c) in alpha.alpha(w0, a).iter().enumerate() {
                        if !c.is_zero() {
                            next.add(&target, m, &(c * v));
                        }
                    }
                    // Minus the sum over input slots replaced by alpha(W0, .).
                    for s in 0..slots {
                        let orig = target[s + 1];
                        for b in 0..n {
                            let c = &alpha.alpha(w0, b)[orig];
                            if c.is_zero() {
                                continue;
                            }
                            target[s + 1] = b;
                            next.add(&target, a, &-(c * v));
                        }
                        target[s + 1] = orig;
                    }
                }
            }
            self.components.push(next);
        }
    }
}

/// D_0(Y, U)V = alpha(Y, alpha(U, V)) - alpha(U, alpha(Y, V)) - alpha([Y,U], V)
/// and its covariant derivatives up to the requested order.
pub fn curvature_derivatives(
    pres: &LiePresentation,
    alpha: &ConnectionMap,
    max_order: usize,
) -> CurvatureTensor {
    let n = pres.dim;
    let mut d0 = SparseTensor::new(n, 3);
    for y in 0..n {
        for u in 0..n {
            for v in 0..n {
                let mut w = vec![Rational::zero(); n];
                for (m, c) in alpha.alpha(u, v).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (a, d) in alpha.alpha(y, m).iter().enumerate() {
                        w[a] += c * d;
                    }
                }
                for (m, c) in alpha.alpha(y, v).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (a, d) in alpha.alpha(u, m).iter().enumerate() {
                        w[a] -= c * d;
                    }
                }
                for (m, c) in pres.brackets[y][u].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (a, d) in alpha.alpha(m, v).iter().enumerate() {
                        w[a] -= c * d;
                    }
                }
                for (a, val) in w.into_iter().enumerate() {
                    if !val.is_zero() {
                        d0.add(&[y, u, v], a, &val);
                    }
                }
            }
        }
    }
    let mut tensor = CurvatureTensor { dim: n, components: vec![d0] };
    tensor.extend(alpha, max_order);
    tensor
}

/// Entry (a, y) is the coefficient of e_a in D_k(X..X; e_y, X, X) as a
/// homogeneous polynomial of degree k+2 in the coordinates of X.
pub fn symmetrized_jet(d: &CurvatureTensor, k: usize) -> Result<PolyMatrix, LieError> {
    let n = d.dim;
    let dk = d.component(k)?;
    let mut accum: Vec<BTreeMap<Vec<u32>, Rational>> = vec![BTreeMap::new(); n * n];
    for (inputs, a, v) in dk.iter() {
        let y = inputs[k];
        let mut expo = vec![0u32; n];
        for &w in &inputs[..k] {
            expo[w] += 1;
        }
        expo[inputs[k + 1]] += 1;
        expo[inputs[k + 2]] += 1;
        let slot = accum[a * n + y].entry(expo).or_insert_with(Rational::zero);
        *slot += v;
    }
    let entries = accum
        .into_iter()
        .map(|terms| MultiPoly::from_terms(n, terms.into_iter().filter(|(_, c)| !c.is_zero())))
        .collect();
    Ok(PolyMatrix::from_entries(n, n, entries).with_declared_degree(k as u32 + 2))
}

#[cfg(test)]
mod tests {
    use crate::exactalg::{rat, ratio};

    use super::*;

    fn heisenberg3() -> LiePresentation {
        LiePresentation::from_relations(
            "heisenberg3",
            3,
            &[(0, 1, 2, rat(1))],
            QMatrix::identity(3),
            true,
        )
        .unwrap()
    }

    fn su2() -> LiePresentation {
        LiePresentation::from_relations(
            "su2_biinvariant",
            3,
            &[(0, 1, 2, rat(1)), (1, 2, 0, rat(1)), (2, 0, 1, rat(1))],
            QMatrix::identity(3),
            true,
        )
        .unwrap()
    }

    fn abelian(n: usize) -> LiePresentation {
        LiePresentation::from_relations("flat", n, &[], QMatrix::identity(n), true).unwrap()
    }

    #[test]
    fn jacobi_violation_rejected() {
        // [e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e2 breaks Jacobi.
        let r = LiePresentation::from_relations(
            "bad",
            3,
            &[(0, 1, 2, rat(1)), (0, 2, 1, rat(1)), (1, 2, 1, rat(1))],
            QMatrix::identity(3),
            true,
        );
        assert!(matches!(r, Err(LieError::JacobiFails(..))));
    }

    #[test]
    fn koszul_abelian_is_zero() {
        let pres = abelian(3);
        let a = koszul(&pres).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(a.alpha(i, j).iter().all(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn koszul_biinvariant_is_half_bracket() {
        let pres = su2();
        let a = koszul(&pres).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(a.alpha(i, j)[k], &pres.structure(i, j)[k] * &ratio(1, 2));
                }
            }
        }
    }

    #[test]
    fn koszul_heisenberg_hand_values() {
        let pres = heisenberg3();
        let a = koszul(&pres).unwrap();
        let h = ratio(1, 2);
        assert_eq!(a.alpha(0, 1), &[rat(0), rat(0), h.clone()]);
        assert_eq!(a.alpha(1, 0), &[rat(0), rat(0), -h.clone()]);
        assert_eq!(a.alpha(0, 2), &[rat(0), -h.clone(), rat(0)]);
        assert_eq!(a.alpha(2, 0), &[rat(0), -h.clone(), rat(0)]);
        assert_eq!(a.alpha(1, 2), &[h.clone(), rat(0), rat(0)]);
        assert_eq!(a.alpha(2, 1), &[h.clone(), rat(0), rat(0)]);
        assert_eq!(a.alpha(2, 2), &[rat(0), rat(0), rat(0)]);
    }

    fn check_torsion_and_compat(pres: &LiePresentation, a: &ConnectionMap) {
        let n = pres.dim();
        let basis: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                let t: Vec<Rational> = a
                    .alpha(i, j)
                    .iter()
                    .zip(a.alpha(j, i))
                    .zip(pres.structure(i, j))
                    .map(|((x, y), c)| &(x - y) - c)
                    .collect();
                assert!(t.iter().all(|c| c.is_zero()), "torsion at ({i},{j})");
                for k in 0..n {
                    let lhs = pres.inner(a.alpha(i, j), &basis[k])
                        + pres.inner(&basis[j], a.alpha(i, k));
                    assert!(lhs.is_zero(), "metric compatibility at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn koszul_invariants() {
        for pres in [heisenberg3(), su2(), abelian(4)] {
            let a = koszul(&pres).unwrap();
            check_torsion_and_compat(&pres, &a);
        }
    }

    #[test]
    fn abelian_curvature_vanishes() {
        let pres = abelian(3);
        let a = koszul(&pres).unwrap();
        let d = curvature_derivatives(&pres, &a, 2);
        for k in 0..=2 {
            assert!(d.component(k).unwrap().is_empty());
            assert!(symmetrized_jet(&d, k).unwrap().is_zero());
        }
    }

    #[test]
    fn biinvariant_is_locally_symmetric() {
        let pres = su2();
        let a = koszul(&pres).unwrap();
        let d = curvature_derivatives(&pres, &a, 1);
        // D_0(Y,U)V = -1/4 [[Y,U],V]
        let q = ratio(-1, 4);
        for y in 0..3 {
            for u in 0..3 {
                for v in 0..3 {
                    let br = pres.bracket_vec(pres.structure(y, u), &{
                        let mut e = vec![rat(0); 3];
                        e[v] = rat(1);
                        e
                    });
                    for z in 0..3 {
                        assert_eq!(d.component(0).unwrap().get(&[y, u, v], z), &br[z] * &q);
                    }
                }
            }
        }
        assert!(d.component(1).unwrap().is_empty());
        assert!(symmetrized_jet(&d, 1).unwrap().is_zero());
    }

    #[test]
    fn heisenberg_sectional_and_trace() {
        let pres = heisenberg3();
        let a = koszul(&pres).unwrap();
        let d = curvature_derivatives(&pres, &a, 0);
        let g = pres.metric();
        assert_eq!(d.riem(g, 0, 1, 1, 0), ratio(-3, 4));
        assert_eq!(d.riem(g, 0, 2, 2, 0), ratio(1, 4));
        assert_eq!(d.riem(g, 1, 2, 2, 1), ratio(1, 4));
        let r0 = symmetrized_jet(&d, 0).unwrap();
        let tr = r0.trace();
        let expect = {
            let x = |i| MultiPoly::var(3, i);
            let sq = |p: &MultiPoly| p * p;
            &(&sq(&x(0)).scale(&ratio(-1, 2)) + &sq(&x(1)).scale(&ratio(-1, 2)))
                + &sq(&x(2)).scale(&ratio(1, 2))
        };
        assert_eq!(tr, expect);
    }

    #[test]
    fn d0_symmetries_and_bianchi() {
        for pres in [heisenberg3(), su2()] {
            let a = koszul(&pres).unwrap();
            let d = curvature_derivatives(&pres, &a, 0);
            let g = pres.metric();
            let n = pres.dim();
            for y in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        for z in 0..n {
                            let r = d.riem(g, y, u, v, z);
                            assert_eq!(r, -d.riem(g, u, y, v, z));
                            assert_eq!(r, -d.riem(g, y, u, z, v));
                            assert_eq!(r, d.riem(g, v, z, y, u));
                        }
                        for a_out in 0..n {
                            let d0 = d.component(0).unwrap();
                            let cyc = d0.get(&[y, u, v], a_out)
                                + d0.get(&[u, v, y], a_out)
                                + d0.get(&[v, y, u], a_out);
                            assert!(cyc.is_zero(), "Bianchi fails");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn jet_homogeneity_and_self_adjointness() {
        let pres = heisenberg3();
        let a = koszul(&pres).unwrap();
        let d = curvature_derivatives(&pres, &a, 3);
        for k in 0..=3 {
            let rk = symmetrized_jet(&d, k).unwrap();
            assert!(rk.is_homogeneous_of(k as u32 + 2));
            let grk = rk.lmul_qmatrix(pres.metric());
            assert_eq!(grk, grk.transpose(), "G R^{k} not self-adjoint");
        }
        // R^0(X) X = 0.
        let r0 = symmetrized_jet(&d, 0).unwrap();
        assert!(r0.apply_to_position().iter().all(|p| p.is_zero()));
    }
}
