//! The solver: generic dependence degree, polynomial coefficient
//! reconstruction with exact certification, the rational-function fallback,
//! pointwise minimal polynomials, root-structure and trace diagnostics,
//! divisibility, and skew-witness solving.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactalg::{
    bareiss_nullspace, interpolate_homogeneous, rat, sturm_root_profile, InterpolationError,
    MultiPoly, PolyLambda, PolyMatrix, QMatrix, Rational, RationalFunction, RootRegion, UniPoly,
};
use crate::jets::{JetError, JetSequence};

#[derive(Debug, Error)]
pub enum MinPolyError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("no dependence among the jets up to degree bound {max_k}")]
    DegreeBoundExceeded { max_k: usize },
    #[error("coefficients not polynomial: a_{degree} fails interpolation ({detail})")]
    NotPolynomial { degree: usize, detail: String },
    #[error("witness invalid, resample: lower jets dependent at the witness")]
    WitnessInvalid,
    #[error("residual nonzero at entry ({0}, {1})")]
    ResidualNonzero(usize, usize),
    #[error("diagnostic requires positive-definite metric")]
    IndefiniteMetric,
    #[error("candidate is not in the kernel of the evaluation map")]
    NotInKernel,
    #[error("could not collect enough generic sample points")]
    SamplingExhausted,
}

/// A certified minimal polynomial: admissibility and witness independence
/// have been checked symbolically and exactly.
#[derive(Clone, Debug)]
pub struct MinimalPolynomial {
    pub p: PolyLambda,
    /// Direction with {R^j(witness)} for j < k independent; empty when k = 0.
    pub witness: Vec<Rational>,
    pub verified: bool,
    pub seed: u64,
    pub samples: usize,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }

    /// a_i, the coefficient of lambda^(k-i).
    pub fn coefficient(&self, i: usize) -> MultiPoly {
        self.p.coeff(self.degree() - i)
    }
}

#[derive(Clone, Debug)]
pub struct PointwiseMinimal {
    pub x: Vec<Rational>,
    pub k_x: usize,
    pub p: UniPoly,
}

/// Coefficients in the rational-function field when polynomial ones do not
/// exist; a_i multiplies R^(k-i).
#[derive(Clone, Debug)]
pub struct RationalRelation {
    pub k: usize,
    pub coefficients: Vec<RationalFunction>,
}

impl RationalRelation {
    pub fn all_polynomial(&self) -> bool {
        self.coefficients.iter().all(RationalFunction::is_polynomial)
    }
}

#[derive(Clone, Debug)]
pub struct C0Witness {
    pub x: Vec<Rational>,
    pub c: QMatrix,
    pub orders_satisfied: usize,
}

pub enum MinPolyOutcome {
    Polynomial(MinimalPolynomial),
    RationalOnly(RationalRelation),
}

/// Flattened R^j(x) as a column vector of length n^2.
fn jet_column(seq: &JetSequence, j: usize, x: &[Rational]) -> Result<Vec<Rational>, MinPolyError> {
    let m = seq.get_jet(j)?.eval(x).expect("point length matches dim");
    let n = seq.dim();
    Ok((0..n).flat_map(|i| (0..n).map(move |c| (i, c))).map(|(i, c)| m.get(i, c).clone()).collect())
}

fn columns_matrix(cols: &[Vec<Rational>], rows: usize) -> QMatrix {
    let mut m = QMatrix::zero(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// Exact pointwise minimal polynomial at x: the smallest m with R^m(x) in the
/// span of the lower jets, by incremental elimination. Returns (0, P = 1)
/// when R^0(x) = 0.
pub fn pointwise_min_poly(
    seq: &JetSequence,
    x: &[Rational],
) -> Result<PointwiseMinimal, MinPolyError> {
    let n = seq.dim();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    // The span lives in an n^2-dimensional space, so dependence occurs by n^2.
    for m in 0..=n * n {
        let cm = jet_column(seq, m, x)?;
        let a = columns_matrix(&cols, n * n);
        let outcome = a.solve(&cm);
        if let Some(sol) = outcome.particular {
            let mut coeffs = vec![Rational::zero(); m + 1];
            for (j, c) in sol.into_iter().enumerate() {
                coeffs[j] = -c;
            }
            coeffs[m] = Rational::one();
            return Ok(PointwiseMinimal { x: x.to_vec(), k_x: m, p: UniPoly::from_coeffs(coeffs) });
        }
        cols.push(cm);
    }
    unreachable!("dependence must occur within n^2 + 1 jets");
}

fn sample_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// Smallest degree at which the sampled jets become dependent at every probe
/// direction, with a witness whose lower jets are independent. Probabilistic
/// (Schwartz-Zippel); `verify_exact` later removes the uncertainty.
pub fn generic_degree(
    seq: &JetSequence,
    max_k: usize,
    seed: u64,
    samples: usize,
) -> Result<(usize, Vec<Rational>), MinPolyError> {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Directions come from the RNG sequentially so the result is independent
    // of how the solves are scheduled; the solves themselves fan out.
    let dirs: Vec<Vec<Rational>> =
        (0..samples).map(|_| sample_direction(&mut rng, seq.dim())).collect();
    let solved: Vec<Result<usize, MinPolyError>> =
        crate::par::map(dirs.clone(), |x| Ok(pointwise_min_poly(seq, &x)?.k_x));
    let mut best: Option<(usize, usize)> = None;
    for (i, res) in solved.into_iter().enumerate() {
        let k_x = res?;
        if k_x > max_k {
            return Err(MinPolyError::DegreeBoundExceeded { max_k });
        }
        if best.as_ref().is_none_or(|(k, _)| k_x > *k) {
            best = Some((k_x, i));
        }
    }
    let (k, idx) = best.unwrap();
    Ok((k, if k == 0 { Vec::new() } else { dirs[idx].clone() }))
}

/// Reconstructs each a_i as a homogeneous degree-i polynomial from pointwise
/// solves at generic sample directions.
pub fn solve_coefficients(
    seq: &JetSequence,
    k: usize,
    seed: u64,
) -> Result<Vec<MultiPoly>, MinPolyError> {
    let n = seq.dim();
    if k == 0 {
        return Ok(Vec::new());
    }
    let needed = crate::exactalg::monomials_of_degree(n, k as u32).len() + 8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<(Vec<Rational>, UniPoly)> = Vec::new();
    let mut attempts = 0;
    while points.len() < needed {
        let batch: Vec<Vec<Rational>> = (0..needed - points.len())
            .map(|_| sample_direction(&mut rng, n))
            .filter(|x| !points.iter().any(|(p, _)| p == x))
            .collect();
        attempts += batch.len().max(1);
        if attempts > 64 * needed {
            return Err(MinPolyError::SamplingExhausted);
        }
        let solved = crate::par::map(batch.clone(), |x| pointwise_min_poly(seq, &x));
        for (x, pw) in batch.into_iter().zip(solved) {
            let pw = pw?;
            if pw.k_x == k && !points.iter().any(|(p, _)| p == &x) {
                points.push((x, pw.p));
            }
        }
    }
    let mut out = Vec::with_capacity(k);
    for i in 1..=k {
        // Pointwise, a_i(x) is the coefficient of lambda^(k-i).
        let samples: Vec<(Vec<Rational>, Rational)> =
            points.iter().map(|(x, p)| (x.clone(), p.coeff(k - i))).collect();
        match interpolate_homogeneous(n, i as u32, &samples) {
            Ok(ai) => out.push(ai),
            Err(e @ InterpolationError::Inconsistent { .. }) => {
                return Err(MinPolyError::NotPolynomial { degree: i, detail: e.to_string() })
            }
            Err(InterpolationError::Underdetermined { .. }) => {
                // Coincidences among sample rows; top up with more points.
                let extra = sample_direction(&mut rng, n);
                let pw = pointwise_min_poly(seq, &extra)?;
                if pw.k_x == k {
                    points.push((extra, pw.p));
                }
                return solve_coefficients_with(seq, k, points, rng);
            }
        }
    }
    Ok(out)
}

fn solve_coefficients_with(
    seq: &JetSequence,
    k: usize,
    mut points: Vec<(Vec<Rational>, UniPoly)>,
    mut rng: ChaCha8Rng,
) -> Result<Vec<MultiPoly>, MinPolyError> {
    let n = seq.dim();
    for _round in 0..16 {
        let mut ok = Vec::with_capacity(k);
        let mut retry = false;
        for i in 1..=k {
            let samples: Vec<(Vec<Rational>, Rational)> =
                points.iter().map(|(x, p)| (x.clone(), p.coeff(k - i))).collect();
            match interpolate_homogeneous(n, i as u32, &samples) {
                Ok(ai) => ok.push(ai),
                Err(e @ InterpolationError::Inconsistent { .. }) => {
                    return Err(MinPolyError::NotPolynomial { degree: i, detail: e.to_string() })
                }
                Err(InterpolationError::Underdetermined { .. }) => {
                    retry = true;
                    break;
                }
            }
        }
        if !retry {
            return Ok(ok);
        }
        for _ in 0..8 {
            let extra = sample_direction(&mut rng, n);
            if points.iter().any(|(p, _)| p == &extra) {
                continue;
            }
            let pw = pointwise_min_poly(seq, &extra)?;
            if pw.k_x == k {
                points.push((extra, pw.p));
            }
        }
    }
    Err(MinPolyError::SamplingExhausted)
}

/// Assembles lambda^k + a_1 lambda^(k-1) + ... + a_k.
pub fn assemble(num_vars: usize, coefficients: &[MultiPoly]) -> PolyLambda {
    let mut desc = Vec::with_capacity(coefficients.len() + 1);
    desc.push(MultiPoly::one(num_vars));
    desc.extend_from_slice(coefficients);
    PolyLambda::from_descending(num_vars, desc)
}

/// Turns a candidate into an unconditional result: symbolic admissibility
/// plus exact independence of the lower jets at the witness.
pub fn verify_exact(
    seq: &JetSequence,
    p: &PolyLambda,
    witness: &[Rational],
    seed: u64,
    samples: usize,
) -> Result<MinimalPolynomial, MinPolyError> {
    let report = seq.check_admissible(p)?;
    if !report.is_admissible {
        let n = seq.dim();
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !report.residual.get(i, j).is_zero())
            .unwrap();
        return Err(MinPolyError::ResidualNonzero(i, j));
    }
    let k = p.degree().unwrap();
    if k > 0 {
        let n = seq.dim();
        let cols: Result<Vec<_>, _> = (0..k).map(|j| jet_column(seq, j, witness)).collect();
        if columns_matrix(&cols?, n * n).rank() != k {
            return Err(MinPolyError::WitnessInvalid);
        }
    }
    Ok(MinimalPolynomial { p: p.clone(), witness: witness.to_vec(), verified: true, seed, samples })
}

/// Full pipeline: detect the degree, reconstruct coefficients, certify; on
/// interpolation inconsistency fall back to the rational-function relation.
pub fn min_poly(
    seq: &JetSequence,
    max_k: usize,
    seed: u64,
    samples: usize,
) -> Result<MinPolyOutcome, MinPolyError> {
    let (k, witness) = generic_degree(seq, max_k, seed, samples)?;
    match solve_coefficients(seq, k, seed) {
        Ok(coeffs) => {
            let p = assemble(seq.dim(), &coeffs);
            Ok(MinPolyOutcome::Polynomial(verify_exact(seq, &p, &witness, seed, samples)?))
        }
        Err(MinPolyError::NotPolynomial { .. }) => {
            Ok(MinPolyOutcome::RationalOnly(rational_relation(seq, k)?))
        }
        Err(e) => Err(e),
    }
}

/// Exact relation over the rational-function field: always exists at the
/// generic degree, whether or not the coefficients are polynomial.
pub fn rational_relation(seq: &JetSequence, k: usize) -> Result<RationalRelation, MinPolyError> {
    assert!(k >= 1);
    let n = seq.dim();
    let jets: Vec<_> = (0..=k).map(|j| seq.get_jet(j)).collect::<Result<_, _>>()?;
    // n^2 rows (matrix entries), k+1 columns (jet orders).
    let rows: Vec<Vec<MultiPoly>> = (0..n * n)
        .map(|e| jets.iter().map(|m| m.flatten()[e].clone()).collect())
        .collect();
    let ns = bareiss_nullspace(&rows, k + 1);
    // Prefer a basis vector supported on the top jet; normalize it monic.
    let v = ns
        .iter()
        .find(|v| !v[k].is_zero())
        .expect("dependence at the generic degree includes the top jet");
    let top = &v[k];
    let coefficients: Vec<RationalFunction> =
        (1..=k).map(|i| v[k - i].div(top)).collect();
    // Soundness: clear denominators and expand symbolically.
    let mut common = MultiPoly::one(n);
    for c in &coefficients {
        common = &common * c.denominator();
    }
    let mut acc = PolyMatrix::zero(n, n);
    acc = acc.add(&jets[k].scale_poly(&common));
    for (i, c) in coefficients.iter().enumerate() {
        let scale = &(&common * c.numerator()).exact_div(c.denominator()).unwrap();
        acc = acc.add(&jets[k - 1 - i].scale_poly(scale));
    }
    assert!(acc.is_zero(), "rational relation fails symbolic expansion");
    Ok(RationalRelation { k, coefficients })
}

#[derive(Clone, Copy, Debug)]
pub struct RootStructureReport {
    pub pure_imaginary_simple: bool,
    pub zero_root: bool,
}

/// Certifies that every root of the specialized polynomial is purely
/// imaginary (or zero) and simple, via parity of the coefficients and a Sturm
/// count on the real polynomial obtained by lambda^2 -> mu; the nonzero roots
/// are then exactly the square roots of the negative real roots of q(mu).
pub fn root_structure(
    p: &UniPoly,
    positive_definite: bool,
) -> Result<RootStructureReport, MinPolyError> {
    if !positive_definite {
        return Err(MinPolyError::IndefiniteMetric);
    }
    assert!(!p.is_zero());
    let k = p.degree().unwrap();
    let zero_root = k > 0 && p.coeff(0).is_zero();
    // Coefficients must respect the parity of k for +/- root symmetry.
    if (0..=k).any(|j| !p.coeff(j).is_zero() && (k - j) % 2 != 0) {
        return Ok(RootStructureReport { pure_imaginary_simple: false, zero_root });
    }
    // Strip the zero root; simplicity demands its multiplicity be at most 1.
    let mut coeffs = p.coeffs().to_vec();
    let mut mult0 = 0;
    while coeffs.first().is_some_and(Zero::is_zero) {
        coeffs.remove(0);
        mult0 += 1;
    }
    if mult0 > 1 {
        return Ok(RootStructureReport { pure_imaginary_simple: false, zero_root });
    }
    // Remaining polynomial is even; substitute mu = lambda^2.
    let q = UniPoly::from_coeffs(coeffs.into_iter().step_by(2).collect());
    let deg_q = q.degree().unwrap_or(0);
    let profile = sturm_root_profile(&q, RootRegion::Negatives);
    let pass = profile.all_simple && profile.num_distinct_real_roots == deg_q;
    Ok(RootStructureReport { pure_imaginary_simple: pass, zero_root })
}

#[derive(Clone, Debug)]
pub struct RicciReport {
    /// trace(R^i) == 0 as a polynomial, for i = 1..k.
    pub higher_traces_vanish: Vec<bool>,
    pub ricci_nonzero: bool,
    pub a_k_is_zero: bool,
    pub k_odd: bool,
    pub consistent: bool,
}

/// Trace identities and the nonzero-Ricci consequences: Ric != 0 forces
/// a_k = 0, and on a positive-definite space an odd k.
pub fn ricci_diagnostics(
    seq: &JetSequence,
    mp: &MinimalPolynomial,
) -> Result<RicciReport, MinPolyError> {
    let k = mp.degree();
    let higher_traces_vanish: Vec<bool> =
        (1..=k).map(|i| Ok::<_, MinPolyError>(seq.get_jet(i)?.trace().is_zero())).collect::<Result<_, _>>()?;
    let ricci_nonzero = !seq.get_jet(0)?.trace().is_zero();
    let a_k_is_zero = k == 0 || mp.coefficient(k).is_zero();
    let k_odd = k % 2 == 1;
    let mut consistent = true;
    if ricci_nonzero {
        consistent &= a_k_is_zero;
        if seq.is_positive_definite() {
            consistent &= k_odd;
        }
    }
    Ok(RicciReport { higher_traces_vanish, ricci_nonzero, a_k_is_zero, k_odd, consistent })
}

#[derive(Clone, Debug)]
pub struct DivisionReport {
    pub divisible: bool,
    pub quotient: PolyLambda,
    pub remainder: PolyLambda,
}

/// Division of a kernel element by the minimal polynomial; the remainder must
/// vanish when the kernel is the principal ideal it generates.
pub fn divides(
    seq: &JetSequence,
    q: &PolyLambda,
    p: &MinimalPolynomial,
) -> Result<DivisionReport, MinPolyError> {
    if !seq.eval_map(q)?.is_zero() {
        return Err(MinPolyError::NotInKernel);
    }
    let (quot, rem) = q.divmod(&p.p).map_err(|_| MinPolyError::NotInKernel)?;
    Ok(DivisionReport { divisible: rem.is_zero(), quotient: quot, remainder: rem })
}

/// Basis of the G-skew matrices: G^{-1}(E_pq - E_qp) for p < q.
pub fn skew_basis(g: &QMatrix) -> Vec<QMatrix> {
    let n = g.rows();
    let ginv = g.inverse().expect("nondegenerate metric");
    let mut basis = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let mut e = QMatrix::zero(n, n);
            e.set(p, q, Rational::one());
            e.set(q, p, -Rational::one());
            basis.push(ginv.matmul(&e));
        }
    }
    basis
}

/// Solves [C, R^i(x)] = R^{i+1}(x) for i < orders over the G-skew matrices;
/// `None` certifies the linear system is infeasible at x.
pub fn c0_witness(
    seq: &JetSequence,
    x: &[Rational],
    orders: usize,
) -> Result<Option<C0Witness>, MinPolyError> {
    assert!(orders >= 1);
    let n = seq.dim();
    let basis = skew_basis(seq.metric());
    let d = basis.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(orders * n * n);
    let mut rhs: Vec<Rational> = Vec::with_capacity(orders * n * n);
    for i in 0..orders {
        let ri = seq.get_jet(i)?.eval(x).expect("point length matches dim");
        let ri1 = seq.get_jet(i + 1)?.eval(x).expect("point length matches dim");
        let comms: Vec<QMatrix> =
            basis.iter().map(|a| a.matmul(&ri).sub(&ri.matmul(a))).collect();
        for r in 0..n {
            for c in 0..n {
                rows.push((0..d).map(|b| comms[b].get(r, c).clone()).collect());
                rhs.push(ri1.get(r, c).clone());
            }
        }
    }
    let m = QMatrix::from_rows(rows);
    let Some(sol) = m.solve(&rhs).particular else {
        return Ok(None);
    };
    let mut c = QMatrix::zero(n, n);
    for (b, coef) in sol.iter().enumerate() {
        c = c.add(&basis[b].scale(coef));
    }
    Ok(Some(C0Witness { x: x.to_vec(), c, orders_satisfied: orders }))
}
