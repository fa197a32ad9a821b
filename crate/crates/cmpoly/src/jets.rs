//! The symmetrized jet sequence R^0, R^1, ... at a point, with three backing
//! sources, the evaluation map, and structural validation.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::exactalg::{PolyLambda, PolyMatrix, QMatrix};
use crate::liegroup::{
    curvature_derivatives, koszul, symmetrized_jet, ConnectionMap, CurvatureTensor, LieError,
    LiePresentation,
};

#[derive(Debug, Error)]
pub enum JetError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("jet order {requested} unavailable (explicit list has {available})")]
    OrderUnavailable { requested: usize, available: usize },
    #[error("generator map is not skew-symmetric with respect to the metric")]
    GeneratorNotSkew,
    #[error("candidate polynomial rejected: {0}")]
    BadCandidate(String),
}

enum Source {
    Explicit(Vec<PolyMatrix>),
    LieGroup { alpha: ConnectionMap, tensor: Mutex<CurvatureTensor> },
    C0 { r0: PolyMatrix, c: PolyMatrix },
}

/// The object queried everywhere else: hands out R^k as a homogeneous
/// polynomial matrix of degree k+2 and knows the metric.
pub struct JetSequence {
    dim: usize,
    metric: QMatrix,
    positive_definite: bool,
    source: Source,
    cache: Mutex<BTreeMap<usize, Arc<PolyMatrix>>>,
}

impl JetSequence {
    pub fn from_explicit(
        metric: QMatrix,
        positive_definite: bool,
        jets: Vec<PolyMatrix>,
    ) -> Self {
        let dim = metric.rows();
        assert!(!jets.is_empty());
        assert!(jets.iter().all(|m| m.dim() == dim && m.num_vars() == dim));
        JetSequence {
            dim,
            metric,
            positive_definite,
            source: Source::Explicit(jets),
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn from_presentation(pres: &LiePresentation) -> Result<Self, LieError> {
        let alpha = koszul(pres)?;
        let tensor = curvature_derivatives(pres, &alpha, 0);
        Ok(JetSequence {
            dim: pres.dim(),
            metric: pres.metric().clone(),
            positive_definite: pres.is_positive_definite(),
            source: Source::LieGroup { alpha, tensor: Mutex::new(tensor) },
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// R^0 plus a linear skew generator C; higher jets follow the recursion
    /// R^{k+1}(X) = [C(X), R^k(X)].
    pub fn from_c0_generator(
        metric: QMatrix,
        positive_definite: bool,
        r0: PolyMatrix,
        c: PolyMatrix,
    ) -> Result<Self, JetError> {
        let dim = metric.rows();
        assert!(r0.dim() == dim && c.dim() == dim);
        assert!(r0.is_homogeneous_of(2) && c.is_homogeneous_of(1));
        let gc = c.lmul_qmatrix(&metric);
        if !gc.add(&gc.transpose()).is_zero() {
            return Err(JetError::GeneratorNotSkew);
        }
        Ok(JetSequence {
            dim,
            metric,
            positive_definite,
            source: Source::C0 { r0, c },
            cache: Mutex::new(BTreeMap::new()),
        })
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

    pub fn get_jet(&self, k: usize) -> Result<Arc<PolyMatrix>, JetError> {
        if let Some(m) = self.cache.lock().unwrap().get(&k) {
            return Ok(m.clone());
        }
        let computed = match &self.source {
            Source::Explicit(jets) => jets
                .get(k)
                .cloned()
                .ok_or(JetError::OrderUnavailable { requested: k, available: jets.len() - 1 })?,
            Source::LieGroup { alpha, tensor } => {
                let mut t = tensor.lock().unwrap();
                if t.max_order() < k {
                    t.extend(alpha, k);
                }
                symmetrized_jet(&t, k)?
            }
            Source::C0 { r0, c } => {
                if k == 0 {
                    r0.clone()
                } else {
                    let prev = self.get_jet(k - 1)?;
                    c.matmul(&prev).sub(&prev.matmul(c)).with_declared_degree(k as u32 + 2)
                }
            }
        };
        let mut cache = self.cache.lock().unwrap();
        Ok(cache.entry(k).or_insert_with(|| Arc::new(computed)).clone())
    }

    /// Sum of coeff(lambda^j) * R^j over the candidate's terms.
    pub fn eval_map(&self, p: &PolyLambda) -> Result<PolyMatrix, JetError> {
        let mut acc = PolyMatrix::zero(self.dim, self.dim);
        let Some(deg) = p.degree() else { return Ok(acc) };
        for j in 0..=deg {
            let c = p.coeff(j);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.get_jet(j)?.scale_poly(&c));
        }
        Ok(acc)
    }

    pub fn check_admissible(&self, p: &PolyLambda) -> Result<AdmissibilityReport, JetError> {
        if !p.is_monic() {
            return Err(JetError::BadCandidate("not monic in lambda".into()));
        }
        if !p.is_admissibly_graded() {
            let deg = p.degree().unwrap();
            let bad = (0..=deg)
                .find(|&j| {
                    let c = p.coeff(j);
                    !c.is_zero() && c.homogeneous_degree() != Some((deg - j) as u32)
                })
                .unwrap();
            return Err(JetError::BadCandidate(format!(
                "coefficient of lambda^{bad} is not homogeneous of degree {}",
                deg - bad
            )));
        }
        let residual = self.eval_map(p)?;
        let is_admissible = residual.is_zero();
        Ok(AdmissibilityReport { polynomial: p.clone(), residual, is_admissible })
    }

    /// Structural checks on R^0..R^max_k: declared homogeneity, g-self-
    /// adjointness of G R^k(X), and R^0(X) X = 0.
    pub fn validate(&self, max_k: usize) -> Result<ValidationReport, JetError> {
        let mut violations = Vec::new();
        for k in 0..=max_k {
            let rk = self.get_jet(k)?;
            if !rk.is_homogeneous_of(k as u32 + 2) {
                violations.push(format!("R^{k} is not homogeneous of degree {}", k + 2));
            }
            let grk = rk.lmul_qmatrix(&self.metric);
            if grk != grk.transpose() {
                violations.push(format!("G R^{k}(X) is not symmetric"));
            }
        }
        let r0 = self.get_jet(0)?;
        if r0.apply_to_position().iter().any(|p| !p.is_zero()) {
            violations.push("R^0(X) X is not identically zero".into());
        }
        Ok(ValidationReport { max_k, violations })
    }
}

pub struct AdmissibilityReport {
    pub polynomial: PolyLambda,
    pub residual: PolyMatrix,
    pub is_admissible: bool,
}

pub struct ValidationReport {
    pub max_k: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }
}
