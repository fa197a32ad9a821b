//! Machine-readable result records. All exact rationals are rendered as
//! "p/q" strings; every floating value travels with the step size or
//! tolerance that produced it.

use serde_json::{json, Value};

use crate::exactalg::{fmt_rat, MultiPoly, PolyLambda, PolyMatrix, RationalFunction, Rational};
use crate::minpoly::{
    C0Witness, DivisionReport, MinimalPolynomial, PointwiseMinimal, RationalRelation,
    RicciReport, RootStructureReport,
};
use crate::singer::SingerReport;

pub fn rat_value(r: &Rational) -> Value {
    Value::String(fmt_rat(r))
}

pub fn rat_vec(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

/// A polynomial as a term list: [[exponents, "p/q"], ...].
pub fn poly_terms(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(exp, c)| json!([exp, fmt_rat(c)]))
            .collect(),
    )
}

pub fn ratfunc_value(f: &RationalFunction) -> Value {
    match f.as_polynomial() {
        Some(p) => poly_terms(&p),
        None => json!({ "num": poly_terms(f.numerator()), "den": poly_terms(f.denominator()) }),
    }
}

pub fn polylambda_value(p: &PolyLambda) -> Value {
    let coeffs: Vec<Value> = p.coeffs_descending().iter().map(poly_terms).collect();
    json!({ "lambda_coeffs_descending": coeffs, "display": p.to_string() })
}

/// Jet dump: {"dim", "order", "entries": [[row, col, term-list], ...]}.
pub fn jet_dump(jet: &PolyMatrix, order: usize) -> Value {
    let n = jet.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = jet.get(i, j);
            if p.terms().next().is_some() {
                entries.push(json!([i, j, poly_terms(p)]));
            }
        }
    }
    json!({ "dim": n, "order": order, "entries": entries })
}

pub fn minpoly_value(p: &MinimalPolynomial) -> Value {
    let k = p.degree();
    let coefficients: Vec<Value> = (1..=k).map(|i| poly_terms(&p.coefficient(i))).collect();
    json!({
        "k": k,
        "polynomial": polylambda_value(&p.p),
        "coefficients": coefficients,
        "witness": rat_vec(&p.witness),
        "verified": p.verified,
        "seed": p.seed,
        "samples": p.samples,
    })
}

pub fn rational_relation_value(r: &RationalRelation) -> Value {
    json!({
        "k": r.k,
        "coefficients": r.coefficients.iter().map(ratfunc_value).collect::<Vec<_>>(),
        "all_polynomial": r.all_polynomial(),
    })
}

pub fn pointwise_value(p: &PointwiseMinimal) -> Value {
    json!({
        "x": rat_vec(&p.x),
        "k_x": p.k_x,
        "polynomial": p.p.coeffs().iter().map(rat_value).collect::<Vec<_>>(),
        "display": p.p.to_string(),
    })
}

pub fn root_structure_value(r: &RootStructureReport) -> Value {
    json!({
        "pure_imaginary_simple": r.pure_imaginary_simple,
        "zero_root": r.zero_root,
    })
}

pub fn ricci_value(r: &RicciReport) -> Value {
    json!({
        "higher_traces_vanish": r.higher_traces_vanish,
        "ricci_nonzero": r.ricci_nonzero,
        "a_k_is_zero": r.a_k_is_zero,
        "k_odd": r.k_odd,
        "consistent": r.consistent,
    })
}

pub fn division_value(d: &DivisionReport) -> Value {
    json!({
        "divisible": d.divisible,
        "quotient": polylambda_value(&d.quotient),
        "remainder": polylambda_value(&d.remainder),
    })
}

pub fn singer_value(s: &SingerReport) -> Value {
    json!({
        "dims": s.dims,
        "k_singer": s.k_singer,
        "k": s.bound_deg_k,
        "bound_holds": s.bound_holds,
    })
}

pub fn c0_witness_value(w: &C0Witness) -> Value {
    let n = w.c.rows();
    let rows: Vec<Value> = (0..n)
        .map(|i| Value::Array((0..n).map(|j| rat_value(w.c.get(i, j))).collect()))
        .collect();
    json!({ "x": rat_vec(&w.x), "c": rows, "orders_satisfied": w.orders_satisfied })
}

pub struct CrosscheckSection {
    pub orders: Vec<(usize, f64)>,
    pub killing_drift: Vec<f64>,
    pub conjugation_residual: Option<f64>,
    pub h: f64,
    pub base_h: f64,
    pub t_end: f64,
    pub energy_drift: f64,
    pub transport_drift: f64,
}

pub fn crosscheck_value(c: &CrosscheckSection) -> Value {
    json!({
        "orders": c.orders.iter().map(|(i, e)| json!({ "i": i, "rel_error": e })).collect::<Vec<_>>(),
        "killing_drift": c.killing_drift,
        "conjugation_residual": c.conjugation_residual,
        "h": c.h,
        "base_h": c.base_h,
        "t_end": c.t_end,
        "energy_drift": c.energy_drift,
        "transport_drift": c.transport_drift,
    })
}

/// The aggregate record written by the CLI. Deterministic for a fixed config.
pub fn result_record(space: &str, config: Value, body: Value, diagnostics: Value) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "space": space,
        "config": config,
        "result": body,
        "diagnostics": diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use crate::exactalg::{rat, ratio};
    use crate::jets::JetSequence;
    use crate::liegroup::heisenberg;
    use crate::minpoly::{min_poly, MinPolyOutcome};

    use super::*;

    #[test]
    fn poly_terms_round_trip_shape() {
        let x = MultiPoly::var(2, 0);
        let p = &(&x * &x) + &MultiPoly::constant(2, ratio(-1, 2));
        let v = poly_terms(&p);
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert!(arr.iter().any(|t| t[1] == "-1/2"));
        assert!(arr.iter().any(|t| t[0] == json!([2, 0]) && t[1] == "1"));
    }

    #[test]
    fn jet_dump_shape() {
        let seq = JetSequence::from_presentation(&heisenberg(3).unwrap()).unwrap();
        let v = jet_dump(&seq.get_jet(0).unwrap(), 0);
        assert_eq!(v["dim"], 3);
        assert_eq!(v["order"], 0);
        assert!(!v["entries"].as_array().unwrap().is_empty());
    }

    #[test]
    fn record_is_deterministic() {
        let seq = JetSequence::from_presentation(&heisenberg(3).unwrap()).unwrap();
        let run = || match min_poly(&seq, 6, 42, 16).unwrap() {
            MinPolyOutcome::Polynomial(p) => serde_json::to_string(&minpoly_value(&p)).unwrap(),
            MinPolyOutcome::RationalOnly(_) => panic!("expected polynomial outcome"),
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn rational_strings_not_floats() {
        let v = rat_vec(&[ratio(1, 3), rat(-4)]);
        assert_eq!(v, json!(["1/3", "-4"]));
    }
}
