//! Space-description files.

use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;

use crate::exactalg::{parse_rat, QMatrix, Rational};

use super::{LieError, LiePresentation};

#[derive(Deserialize)]
struct SpaceFile {
    name: String,
    dim: usize,
    /// Entries [i, j, [c_1 .. c_n]] with 1-based i, j meaning
    /// [e_i, e_j] = sum_k c_k e_k; the antisymmetric pair is implied.
    brackets: Vec<(usize, usize, Vec<String>)>,
    metric: Vec<Vec<String>>,
    #[serde(default = "default_true")]
    positive_definite: bool,
}

fn default_true() -> bool {
    true
}

pub fn parse_space_json(text: &str) -> Result<LiePresentation, LieError> {
    let file: SpaceFile =
        serde_json::from_str(text).map_err(|e| LieError::SpaceFile(e.to_string()))?;
    let n = file.dim;
    if n == 0 || n > 15 {
        return Err(LieError::SpaceFile(format!("unsupported dimension {n}")));
    }
    let rat_at = |s: &str| -> Result<Rational, LieError> {
        parse_rat(s).map_err(|e| LieError::SpaceFile(e.to_string()))
    };
    let mut brackets = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (i, j, coeffs) in &file.brackets {
        if *i < 1 || *i > n || *j < 1 || *j > n {
            return Err(LieError::SpaceFile(format!("bracket index ({i}, {j}) out of range")));
        }
        if coeffs.len() != n {
            return Err(LieError::SpaceFile(format!(
                "bracket ({i}, {j}) has {} coefficients, expected {n}",
                coeffs.len()
            )));
        }
        for (k, s) in coeffs.iter().enumerate() {
            let c = rat_at(s)?;
            brackets[i - 1][j - 1][k] += &c;
            brackets[j - 1][i - 1][k] -= &c;
        }
    }
    if file.metric.len() != n || file.metric.iter().any(|r| r.len() != n) {
        return Err(LieError::SpaceFile(format!("metric must be {n}x{n}")));
    }
    let mut metric = QMatrix::zero(n, n);
    for (i, row) in file.metric.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            metric.set(i, j, rat_at(s)?);
        }
    }
    LiePresentation::new(file.name, n, brackets, metric, file.positive_definite)
}

pub fn load_space_file(path: &Path) -> Result<LiePresentation, LieError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| LieError::SpaceFile(e.to_string()))?;
    parse_space_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_heisenberg() {
        let text = r#"{
            "name": "h3",
            "dim": 3,
            "brackets": [[1, 2, ["0", "0", "1"]]],
            "metric": [["1","0","0"],["0","1","0"],["0","0","1"]],
            "positive_definite": true
        }"#;
        let pres = parse_space_json(text).unwrap();
        assert_eq!(pres.name(), "h3");
        let builtin = super::super::heisenberg(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pres.structure(i, j), builtin.structure(i, j));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_space_json("{").is_err());
        let bad_jacobi = r#"{
            "name": "bad",
            "dim": 3,
            "brackets": [[1, 2, ["0","0","1"]], [1, 3, ["0","1","0"]], [2, 3, ["0","1","0"]]],
            "metric": [["1","0","0"],["0","1","0"],["0","0","1"]]
        }"#;
        assert!(matches!(parse_space_json(bad_jacobi), Err(LieError::JacobiFails(..))));
        let bad_dims = r#"{
            "name": "bad",
            "dim": 2,
            "brackets": [],
            "metric": [["1","0"]]
        }"#;
        assert!(parse_space_json(bad_dims).is_err());
    }
}
