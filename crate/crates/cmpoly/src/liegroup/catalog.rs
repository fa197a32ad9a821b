//! Built-in model spaces.

use num_traits::Signed;

use crate::exactalg::{parse_rat, rat, QMatrix, Rational};

use super::{LieError, LiePresentation};

pub struct CatalogEntry {
    pub name: &'static str,
    pub signature: &'static str,
    pub description: &'static str,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "flat_n",
            signature: "flat_<n>",
            description: "abelian algebra with the identity metric (flat)",
        },
        CatalogEntry {
            name: "torus_n",
            signature: "torus_<n>",
            description: "flat torus quotient presentation (same algebra as flat_n)",
        },
        CatalogEntry {
            name: "su2_biinvariant",
            signature: "su2_biinvariant",
            description: "su(2) with the bi-invariant round metric (locally symmetric)",
        },
        CatalogEntry {
            name: "su2_berger",
            signature: "su2_berger(t)",
            description: "su(2) with the bi-invariant metric scaled by t^2 along e3; t > 0",
        },
        CatalogEntry {
            name: "heisenberg",
            signature: "heisenberg(2n+1)",
            description: "type-H Heisenberg algebra [e_{2i-1}, e_{2i}] = z, orthonormal basis",
        },
        CatalogEntry {
            name: "heisenberg_scaled",
            signature: "heisenberg_scaled(2n+1, c)",
            description: "Heisenberg algebra with the metric multiplied by 1/c^2; c > 0",
        },
    ]
}

pub fn flat(n: usize) -> Result<LiePresentation, LieError> {
    if n == 0 {
        return Err(LieError::BadParams("flat".into(), "dimension must be positive".into()));
    }
    LiePresentation::from_relations(format!("flat_{n}"), n, &[], QMatrix::identity(n), true)
}

pub fn torus(n: usize) -> Result<LiePresentation, LieError> {
    if n == 0 {
        return Err(LieError::BadParams("torus".into(), "dimension must be positive".into()));
    }
    LiePresentation::from_relations(format!("torus_{n}"), n, &[], QMatrix::identity(n), true)
}

pub fn su2_biinvariant() -> LiePresentation {
    LiePresentation::from_relations(
        "su2_biinvariant",
        3,
        &[(0, 1, 2, rat(1)), (1, 2, 0, rat(1)), (2, 0, 1, rat(1))],
        QMatrix::identity(3),
        true,
    )
    .unwrap()
}

pub fn su2_berger(t: &Rational) -> Result<LiePresentation, LieError> {
    if !t.is_positive() {
        return Err(LieError::BadParams("su2_berger".into(), "t must be positive".into()));
    }
    let mut g = QMatrix::identity(3);
    g.set(2, 2, t * t);
    LiePresentation::from_relations(
        format!("su2_berger({})", crate::exactalg::fmt_rat(t)),
        3,
        &[(0, 1, 2, rat(1)), (1, 2, 0, rat(1)), (2, 0, 1, rat(1))],
        g,
        true,
    )
}

pub fn heisenberg(dim: usize) -> Result<LiePresentation, LieError> {
    if dim < 3 || dim % 2 == 0 {
        return Err(LieError::BadParams(
            "heisenberg".into(),
            "dimension must be odd and at least 3".into(),
        ));
    }
    let relations: Vec<_> =
        (0..dim / 2).map(|i| (2 * i, 2 * i + 1, dim - 1, rat(1))).collect();
    LiePresentation::from_relations(
        format!("heisenberg{dim}"),
        dim,
        &relations,
        QMatrix::identity(dim),
        true,
    )
}

pub fn heisenberg_scaled(dim: usize, c: &Rational) -> Result<LiePresentation, LieError> {
    if !c.is_positive() {
        return Err(LieError::BadParams("heisenberg_scaled".into(), "c must be positive".into()));
    }
    let base = heisenberg(dim)?;
    let g = QMatrix::identity(dim).scale(&(c * c).recip());
    LiePresentation::new(
        format!("heisenberg_scaled({dim},{})", crate::exactalg::fmt_rat(c)),
        dim,
        (0..dim).map(|i| (0..dim).map(|j| base.structure(i, j).to_vec()).collect()).collect(),
        g,
        true,
    )
}

/// Positional-parameter entry point: `catalog("su2_berger", &[t])`.
pub fn catalog(name: &str, params: &[Rational]) -> Result<LiePresentation, LieError> {
    let want = |n: usize| -> Result<(), LieError> {
        if params.len() == n {
            Ok(())
        } else {
            Err(LieError::BadParams(name.into(), format!("expected {n} parameter(s)")))
        }
    };
    let as_dim = |r: &Rational| -> Result<usize, LieError> {
        if r.is_integer() && r.is_positive() {
            r.to_integer().try_into().map_err(|_| {
                LieError::BadParams(name.into(), "dimension out of range".into())
            })
        } else {
            Err(LieError::BadParams(name.into(), "dimension must be a positive integer".into()))
        }
    };
    match name {
        "flat" => {
            want(1)?;
            flat(as_dim(&params[0])?)
        }
        "torus" => {
            want(1)?;
            torus(as_dim(&params[0])?)
        }
        "su2_biinvariant" => {
            want(0)?;
            Ok(su2_biinvariant())
        }
        "su2_berger" => {
            want(1)?;
            su2_berger(&params[0])
        }
        "heisenberg" => {
            want(1)?;
            heisenberg(as_dim(&params[0])?)
        }
        "heisenberg_scaled" => {
            want(2)?;
            heisenberg_scaled(as_dim(&params[0])?, &params[1])
        }
        _ => Err(LieError::UnknownSpace(name.into())),
    }
}

/// Parses a space description such as "heisenberg3", "flat_4",
/// "su2_berger(1/2)" or "heisenberg_scaled(3,2)".
pub fn parse_space(spec: &str) -> Result<LiePresentation, LieError> {
    let spec = spec.trim();
    if spec == "su2_biinvariant" {
        return Ok(su2_biinvariant());
    }
    // Parenthesized or colon-separated parameters.
    if let Some(open) = spec.find('(') {
        let close = spec
            .rfind(')')
            .ok_or_else(|| LieError::UnknownSpace(spec.into()))?;
        let base = &spec[..open];
        let args = &spec[open + 1..close];
        let params = parse_params(spec, args)?;
        return catalog(base, &params);
    }
    if let Some((base, args)) = spec.split_once(':') {
        let params = parse_params(spec, &args.replace(':', ","))?;
        return catalog(base, &params);
    }
    // Trailing number, optionally separated by an underscore: flat_3, heisenberg5.
    let digits = spec.len() - spec.bytes().rev().take_while(u8::is_ascii_digit).count();
    if digits < spec.len() {
        let base = spec[..digits].trim_end_matches('_');
        let n: i64 = spec[digits..]
            .parse()
            .map_err(|_| LieError::UnknownSpace(spec.into()))?;
        return catalog(base, &[rat(n)]);
    }
    Err(LieError::UnknownSpace(spec.into()))
}

fn parse_params(spec: &str, args: &str) -> Result<Vec<Rational>, LieError> {
    if args.trim().is_empty() {
        return Ok(Vec::new());
    }
    args.split(',')
        .map(|s| parse_rat(s.trim()).map_err(|_| LieError::UnknownSpace(spec.into())))
        .collect()
}

/// The instances used by the property and acceptance suites. All of them are
/// C0-spaces: flat and torus presentations are flat, the bi-invariant metric
/// is locally symmetric, Berger spheres are naturally reductive, and the
/// Heisenberg groups are of type H, hence G.O.
pub fn standard_instances() -> Vec<LiePresentation> {
    vec![
        flat(3).unwrap(),
        torus(3).unwrap(),
        su2_biinvariant(),
        su2_berger(&crate::exactalg::ratio(1, 2)).unwrap(),
        su2_berger(&rat(2)).unwrap(),
        heisenberg(3).unwrap(),
        heisenberg(5).unwrap(),
        heisenberg_scaled(3, &rat(2)).unwrap(),
    ]
}
