//! Numeric cross-validation: geodesic and parallel-transport integration on
//! the group, finite-difference recovery of the jets from the backward-
//! transported Jacobi operator, Killing-constancy drift, and the conjugation
//! identity for a skew witness.

use crate::exactalg::{MultiPoly, QMatrix};
use crate::liegroup::{ConnectionMap, CurvatureTensor, LiePresentation};

pub type Mat = Vec<Vec<f64>>;

#[derive(Clone, Debug)]
pub struct TrajectoryState {
    pub t: f64,
    /// Left-trivialized velocity.
    pub v: Vec<f64>,
    /// Left-trivialized parallel transport from 0 to t.
    pub phi: Mat,
}

fn mat_zero(n: usize) -> Mat {
    vec![vec![0.0; n]; n]
}

fn mat_id(n: usize) -> Mat {
    let mut m = mat_zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn mat_axpy(y: &mut Mat, a: f64, x: &Mat) {
    for (yr, xr) in y.iter_mut().zip(x) {
        for (ye, xe) in yr.iter_mut().zip(xr) {
            *ye += a * xe;
        }
    }
}

fn mat_scale(m: &Mat, a: f64) -> Mat {
    m.iter().map(|r| r.iter().map(|x| a * x).collect()).collect()
}

fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn frobenius(m: &Mat) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn mat_inverse(m: &Mat) -> Mat {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.iter().cloned().collect();
    let mut inv = mat_id(n);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())
            .unwrap();
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c];
        assert!(piv.abs() > 1e-300, "singular transport matrix");
        for j in 0..n {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = a[i][c];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    inv
}

/// Matrix exponential by scaling and squaring with a truncated series; terms
/// are added until they drop below 1e-12 relative to the accumulated sum.
pub fn mat_exp(m: &Mat) -> Mat {
    let n = m.len();
    let norm = frobenius(m);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = mat_scale(m, 0.5f64.powi(s as i32));
    let mut sum = mat_id(n);
    let mut term = mat_id(n);
    for k in 1..64 {
        term = mat_scale(&mat_mul(&term, &scaled), 1.0 / k as f64);
        mat_axpy(&mut sum, 1.0, &term);
        if frobenius(&term) < 1e-12 * frobenius(&sum).max(1.0) {
            break;
        }
    }
    for _ in 0..s {
        sum = mat_mul(&sum, &sum);
    }
    sum
}

/// The model pulled down to floating point: connection coefficients, metric,
/// and the curvature component needed for the Jacobi operator.
pub struct Dynamics {
    n: usize,
    // alpha[i][j][k]: coefficient of e_k in alpha(e_i, e_j).
    alpha: Vec<Vec<Vec<f64>>>,
    g: Mat,
    // d0[y][u][v][a]: coefficient of e_a in D_0(e_y, e_u) e_v.
    d0: Vec<Vec<Vec<Vec<f64>>>>,
}

impl Dynamics {
    pub fn new(pres: &LiePresentation, alpha: &ConnectionMap, d: &CurvatureTensor) -> Self {
        let n = pres.dim();
        let mut d0 = vec![vec![vec![vec![0.0; n]; n]; n]; n];
        for (inputs, a, v) in d.component(0).expect("order 0 always present").iter() {
            d0[inputs[0]][inputs[1]][inputs[2]][a] = crate::exactalg::rational_to_f64(v);
        }
        Dynamics { n, alpha: alpha.coeffs_f64(), g: pres.metric().to_f64(), d0 }
    }

    fn alpha_vec(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..self.n {
                let f = u[i] * v[j];
                if f == 0.0 {
                    continue;
                }
                for k in 0..self.n {
                    out[k] += f * self.alpha[i][j][k];
                }
            }
        }
        out
    }

    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                acc += u[i] * self.g[i][j] * v[j];
            }
        }
        acc
    }

    /// One RK4 step of V' = -alpha(V, V), Phi' = -A(V) Phi.
    fn rk4_step(&self, v: &[f64], phi: &Mat, h: f64) -> (Vec<f64>, Mat) {
        let fv = |v: &[f64]| -> Vec<f64> {
            self.alpha_vec(v, v).into_iter().map(|x| -x).collect()
        };
        let fphi = |v: &[f64], phi: &Mat| -> Mat {
            // Column j of A(V) Phi is alpha(V, Phi e_j).
            let mut out = mat_zero(self.n);
            for j in 0..self.n {
                let col: Vec<f64> = (0..self.n).map(|i| phi[i][j]).collect();
                let av = self.alpha_vec(v, &col);
                for i in 0..self.n {
                    out[i][j] = -av[i];
                }
            }
            out
        };
        let add = |a: &[f64], s: f64, b: &[f64]| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| x + s * y).collect()
        };
        let madd = |a: &Mat, s: f64, b: &Mat| -> Mat {
            let mut out = a.clone();
            mat_axpy(&mut out, s, b);
            out
        };
        let k1v = fv(v);
        let k1p = fphi(v, phi);
        let k2v = fv(&add(v, h / 2.0, &k1v));
        let k2p = fphi(&add(v, h / 2.0, &k1v), &madd(phi, h / 2.0, &k1p));
        let k3v = fv(&add(v, h / 2.0, &k2v));
        let k3p = fphi(&add(v, h / 2.0, &k2v), &madd(phi, h / 2.0, &k2p));
        let k4v = fv(&add(v, h, &k3v));
        let k4p = fphi(&add(v, h, &k3v), &madd(phi, h, &k3p));
        let mut vn = v.to_vec();
        for i in 0..self.n {
            vn[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
        let mut pn = phi.clone();
        mat_axpy(&mut pn, h / 6.0, &k1p);
        mat_axpy(&mut pn, h / 3.0, &k2p);
        mat_axpy(&mut pn, h / 3.0, &k3p);
        mat_axpy(&mut pn, h / 6.0, &k4p);
        (vn, pn)
    }

    /// Integrates from t = 0 with fixed step h (sign gives the direction) and
    /// returns the sampled path including the initial state.
    pub fn integrate(&self, x0: &[f64], t_end: f64, h: f64) -> Vec<TrajectoryState> {
        assert!(h != 0.0 && t_end / h > 0.0, "step must advance toward t_end");
        let steps = (t_end / h).round() as usize;
        let mut out = Vec::with_capacity(steps + 1);
        let mut v = x0.to_vec();
        let mut phi = mat_id(self.n);
        out.push(TrajectoryState { t: 0.0, v: v.clone(), phi: phi.clone() });
        for s in 1..=steps {
            let (vn, pn) = self.rk4_step(&v, &phi, h);
            v = vn;
            phi = pn;
            out.push(TrajectoryState { t: s as f64 * h, v: v.clone(), phi: phi.clone() });
        }
        out
    }

    /// Jacobi operator J(t) = D_0(., V(t)) V(t) in the left-trivialized frame.
    fn jacobi(&self, v: &[f64]) -> Mat {
        let mut j = mat_zero(self.n);
        for b in 0..self.n {
            for u in 0..self.n {
                if v[u] == 0.0 {
                    continue;
                }
                for w in 0..self.n {
                    let f = v[u] * v[w];
                    if f == 0.0 {
                        continue;
                    }
                    for a in 0..self.n {
                        j[a][b] += f * self.d0[b][u][w][a];
                    }
                }
            }
        }
        j
    }

    /// Backward-transported Jacobi operator Phi^{-1} J Phi at a state.
    pub fn rtilde_at(&self, state: &TrajectoryState) -> Mat {
        let j = self.jacobi(&state.v);
        mat_mul(&mat_inverse(&state.phi), &mat_mul(&j, &state.phi))
    }

    /// R-tilde at a single time, reached with integration step of size h_int.
    pub fn rtilde(&self, x0: &[f64], t: f64, h_int: f64) -> Mat {
        if t == 0.0 {
            return self.jacobi(x0);
        }
        // Land exactly on t: an integral number of steps no larger than h_int.
        let steps = (t.abs() / h_int).ceil().max(1.0);
        let path = self.integrate(x0, t, t / steps);
        self.rtilde_at(path.last().unwrap())
    }

    /// i-th derivative of R-tilde at t = 0 by an O(h^2) central stencil.
    fn derivative_stencil(&self, x0: &[f64], order: usize, h: f64, h_int: f64) -> Mat {
        let f = |k: i32| -> Mat { self.rtilde(x0, k as f64 * h, h_int) };
        let mut acc = mat_zero(self.n);
        let combine: &[(i32, f64)] = match order {
            1 => &[(1, 0.5), (-1, -0.5)],
            2 => &[(1, 1.0), (0, -2.0), (-1, 1.0)],
            3 => &[(2, 0.5), (1, -1.0), (-1, 1.0), (-2, -0.5)],
            4 => &[(2, 1.0), (1, -4.0), (0, 6.0), (-1, -4.0), (-2, 1.0)],
            _ => panic!("finite differences support orders 1..=4"),
        };
        for &(k, w) in combine {
            mat_axpy(&mut acc, w, &f(k));
        }
        mat_scale(&acc, 1.0 / h.powi(order as i32))
    }

    /// Central differences with two Richardson halvings: O(h^6) accuracy on
    /// smooth data. Orders above 4 are refused, not approximated.
    pub fn finite_difference_jet(
        &self,
        x0: &[f64],
        order: usize,
        base_h: f64,
        h_int: f64,
    ) -> Mat {
        let d1 = self.derivative_stencil(x0, order, base_h, h_int);
        let d2 = self.derivative_stencil(x0, order, base_h / 2.0, h_int);
        let d4 = self.derivative_stencil(x0, order, base_h / 4.0, h_int);
        let r1 = mat_scale(&mat_sub(&mat_scale(&d2, 4.0), &d1), 1.0 / 3.0);
        let r2 = mat_scale(&mat_sub(&mat_scale(&d4, 4.0), &d2), 1.0 / 3.0);
        mat_scale(&mat_sub(&mat_scale(&r2, 16.0), &r1), 1.0 / 15.0)
    }

    /// Max drift of each polynomial evaluated on V(t) along the trajectory.
    pub fn killing_drift(
        &self,
        coefficients: &[MultiPoly],
        x0: &[f64],
        t_end: f64,
        h: f64,
    ) -> Vec<f64> {
        let path = self.integrate(x0, t_end, h);
        coefficients
            .iter()
            .map(|a| {
                let base = a.eval_f64(x0);
                path.iter()
                    .map(|s| (a.eval_f64(&s.v) - base).abs())
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    /// Max over the path of || R-tilde(t) - exp(tC) R-tilde(0) exp(-tC) ||_F.
    pub fn conjugation_residual(&self, x0: &[f64], c: &QMatrix, t_end: f64, h_int: f64) -> f64 {
        self.conjugation_residual_mat(x0, &c.to_f64(), t_end, h_int)
    }

    /// Same check with the witness already in floating point, e.g. rescaled
    /// to match a normalized initial velocity.
    pub fn conjugation_residual_mat(&self, x0: &[f64], cf: &Mat, t_end: f64, h_int: f64) -> f64 {
        let path = self.integrate(x0, t_end, h_int);
        let r0 = self.jacobi(x0);
        let mut worst = 0.0f64;
        for s in path.iter().skip(1) {
            let lhs = self.rtilde_at(s);
            let e = mat_exp(&mat_scale(cf, s.t));
            let einv = mat_exp(&mat_scale(cf, -s.t));
            let rhs = mat_mul(&e, &mat_mul(&r0, &einv));
            worst = worst.max(frobenius(&mat_sub(&lhs, &rhs)));
        }
        worst
    }

    /// Max |<V,V> - <X0,X0>| along the path: the integrator's energy drift.
    pub fn energy_drift(&self, path: &[TrajectoryState]) -> f64 {
        let base = self.inner(&path[0].v, &path[0].v);
        path.iter()
            .map(|s| (self.inner(&s.v, &s.v) - base).abs())
            .fold(0.0, f64::max)
    }

    /// Max || Phi^T G Phi - G ||_F along the path.
    pub fn transport_drift(&self, path: &[TrajectoryState]) -> f64 {
        let mut worst = 0.0f64;
        for s in path {
            let pt: Mat = (0..self.n)
                .map(|i| (0..self.n).map(|j| s.phi[j][i]).collect())
                .collect();
            let ptgp = mat_mul(&pt, &mat_mul(&self.g, &s.phi));
            worst = worst.max(frobenius(&mat_sub(&ptgp, &self.g)));
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use crate::exactalg::rat;
    use crate::jets::JetSequence;
    use crate::liegroup::{
        curvature_derivatives, flat, heisenberg, koszul, su2_biinvariant, LiePresentation,
    };
    use crate::minpoly::c0_witness;

    use super::*;

    fn engine(pres: &LiePresentation) -> Dynamics {
        let alpha = koszul(pres).unwrap();
        let d = curvature_derivatives(pres, &alpha, 0);
        Dynamics::new(pres, &alpha, &d)
    }

    #[test]
    fn abelian_velocity_constant() {
        let dyn_ = engine(&flat(3).unwrap());
        let path = dyn_.integrate(&[1.0, -2.0, 0.5], 1.0, 1e-2);
        for s in &path {
            assert_eq!(s.v, vec![1.0, -2.0, 0.5]);
        }
        assert!(frobenius(&dyn_.rtilde_at(path.last().unwrap())) == 0.0);
    }

    #[test]
    fn biinvariant_geodesics_are_subgroups() {
        let dyn_ = engine(&su2_biinvariant());
        let path = dyn_.integrate(&[0.3, -0.4, 0.8], 1.0, 1e-3);
        let last = &path.last().unwrap().v;
        for (a, b) in last.iter().zip(&[0.3, -0.4, 0.8]) {
            assert!((a - b).abs() < 1e-12, "one-parameter subgroup drifted");
        }
        // Locally symmetric: transported Jacobi operator constant.
        let r0 = dyn_.rtilde_at(&path[0]);
        let r1 = dyn_.rtilde_at(path.last().unwrap());
        assert!(frobenius(&mat_sub(&r0, &r1)) < 1e-9);
    }

    #[test]
    fn heisenberg_energy_and_transport_drift() {
        let dyn_ = engine(&heisenberg(3).unwrap());
        let x0 = [1.0 / 2f64.sqrt(), 0.0, 1.0 / 2f64.sqrt()];
        let path = dyn_.integrate(&x0, 1.0, 1e-3);
        assert!(dyn_.energy_drift(&path) < 1e-10);
        assert!(dyn_.transport_drift(&path) < 1e-10);
        // Fourth-order self-convergence: halving h shrinks drift ~16x. Use a
        // coarse h so the drift is far above roundoff.
        let d1 = dyn_.energy_drift(&dyn_.integrate(&x0, 1.0, 0.2));
        let d2 = dyn_.energy_drift(&dyn_.integrate(&x0, 1.0, 0.1));
        let ratio = d1 / d2;
        assert!(ratio > 8.0 && ratio < 40.0, "not 4th order: ratio {ratio}");
    }

    #[test]
    fn finite_difference_matches_symbolic() {
        let pres = heisenberg(3).unwrap();
        let dyn_ = engine(&pres);
        let seq = JetSequence::from_presentation(&pres).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let x0 = [s, 0.0, s];
        for order in 1..=3 {
            let fd = dyn_.finite_difference_jet(&x0, order, 1e-2, 1e-3);
            let sym = seq.get_jet(order).unwrap().eval_f64(&x0);
            let scale = frobenius(&sym).max(1.0);
            let err = frobenius(&mat_sub(&fd, &sym)) / scale;
            assert!(err < 1e-5, "order {order} relative error {err}");
        }
        // R^3(X0) + |X0|^2 R^1(X0) = 0 with |X0| = 1, numerically.
        let fd3 = dyn_.finite_difference_jet(&x0, 3, 1e-2, 1e-3);
        let fd1 = dyn_.finite_difference_jet(&x0, 1, 1e-2, 1e-3);
        let mut resid = fd3.clone();
        mat_axpy(&mut resid, 1.0, &fd1);
        assert!(frobenius(&resid) < 1e-5);
    }

    #[test]
    fn killing_drift_and_negative_control() {
        let pres = heisenberg(3).unwrap();
        let dyn_ = engine(&pres);
        let s = 1.0 / 2f64.sqrt();
        let x0 = [s, 0.0, s];
        let norm_sq = (0..3).fold(MultiPoly::zero(3), |acc, i| {
            let x = MultiPoly::var(3, i);
            &acc + &(&x * &x)
        });
        let x1 = MultiPoly::var(3, 0);
        let non_killing = &x1 * &x1;
        let drifts = dyn_.killing_drift(&[norm_sq, non_killing], &x0, 1.0, 1e-3);
        assert!(drifts[0] < 1e-8, "metric norm drifted: {}", drifts[0]);
        assert!(drifts[1] > 1e-3, "negative control too quiet: {}", drifts[1]);
    }

    #[test]
    fn conjugation_identity_with_witness() {
        let pres = heisenberg(3).unwrap();
        let dyn_ = engine(&pres);
        let seq = JetSequence::from_presentation(&pres).unwrap();
        let x = vec![rat(1), rat(0), rat(1)];
        let w = c0_witness(&seq, &x, 3).unwrap().expect("H^3 is C0");
        let x0 = [1.0, 0.0, 1.0];
        let resid = dyn_.conjugation_residual(&x0, &w.c, 1.0, 1e-3);
        assert!(resid < 1e-6, "conjugation residual {resid}");
    }

    #[test]
    fn mat_exp_agrees_with_rotation() {
        // exp of a 2x2 rotation generator.
        let theta = 0.7f64;
        let m = vec![vec![0.0, -theta], vec![theta, 0.0]];
        let e = mat_exp(&m);
        assert!((e[0][0] - theta.cos()).abs() < 1e-12);
        assert!((e[1][0] - theta.sin()).abs() < 1e-12);
    }
}
