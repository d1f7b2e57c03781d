//! Browser bindings. Every entry point takes plain strings and returns a
//! JSON document: the result object, or `{"error": "..."}`.

use serde_json::{json, Value};
use twistalex::dilation::{solve_based_reps, verify_theorem};
use twistalex::invariants::{alexander_report, reciprocity_of, twisted_report, wada_invariant};
use twistalex::knot::{self, BraidWord, Representation, WirtingerPresentation};
use twistalex::parse::{parse_minpoly, parse_scalar};
use twistalex::{Field, Scalar};
use wasm_bindgen::prelude::wasm_bindgen;

type Res<T> = Result<T, String>;

fn finish(r: Res<Value>) -> String {
    let v = r.unwrap_or_else(|e| json!({ "error": e }));
    serde_json::to_string(&v).expect("JSON values serialize")
}

/// A built-in name or a braid literal `"S: w1 w2 …"`.
fn load_knot(src: &str) -> Res<WirtingerPresentation> {
    let src = src.trim();
    if let Some(k) = knot::builtin(src) {
        return Ok(k);
    }
    let word = BraidWord::parse(src).map_err(|e| e.to_string())?;
    knot::from_braid(&word).map_err(|e| e.to_string())
}

/// A rational literal, else a Gaussian one.
fn load_scalar(src: &str) -> Res<Scalar> {
    parse_scalar(src, &Field::rational())
        .or_else(|_| parse_scalar(src, &Field::gaussian()))
        .map_err(|e| format!("'{src}': {e}"))
}

/// A literal, or `root-of <minpoly>` for the generator of `Q[θ]/(minpoly)`.
fn load_alpha(src: &str, inverse: bool) -> Res<Scalar> {
    let src = src.trim();
    let x = match src.strip_prefix("root-of") {
        Some(p) => {
            let minpoly = parse_minpoly(p.trim()).map_err(|e| e.to_string())?;
            Field::extension(&minpoly).map_err(|e| e.to_string())?.generator()
        }
        None => load_scalar(src)?,
    };
    if x.is_zero() {
        return Err("the ratio must be nonzero".into());
    }
    if inverse {
        x.inv().map_err(|e| e.to_string())
    } else {
        Ok(x)
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn knot_json(k: &WirtingerPresentation) -> Value {
    let rels: Vec<String> = k.relations().iter().map(ToString::to_string).collect();
    json!({ "generators": k.num_generators(), "relations": rels })
}

/// Elementary Alexander polynomials of a knot.
#[wasm_bindgen]
pub fn alexander(knot: &str) -> String {
    finish((|| {
        let k = load_knot(knot)?;
        let report = alexander_report(&k, None, false).map_err(|e| e.to_string())?;
        Ok(json!({
            "knot": knot_json(&k),
            "polynomials": strings(&report.polynomials),
        }))
    })())
}

/// Twisted polynomials, Wada quotient and reciprocity for `x_i ↦ c`.
#[wasm_bindgen]
pub fn twist(knot: &str, c: &str) -> String {
    finish((|| {
        let k = load_knot(knot)?;
        let c = load_scalar(c)?;
        let rep = Representation::scalar(&k, &c).map_err(|e| e.to_string())?;
        let report = twisted_report(&k, &rep, None, false).map_err(|e| e.to_string())?;
        let w = wada_invariant(&k, &rep).map_err(|e| e.to_string())?;
        let reciprocal = match reciprocity_of(&report.polynomials[0]) {
            Ok(r) => json!(r.inversion_closed),
            Err(_) => json!(null),
        };
        Ok(json!({
            "knot": knot_json(&k),
            "c": c.to_string(),
            "polynomials": strings(&report.polynomials),
            "wada": { "numerator": w.numerator().to_string(), "denominator": w.denominator().to_string() },
            "inversion_closed": reciprocal,
        }))
    })())
}

/// Dimension of the based dilation representations with ratio `alpha`
/// against the vanishing order of the elementary polynomials at `α⁻¹`.
#[wasm_bindgen]
pub fn verify(knot: &str, alpha: &str, inverse: bool) -> String {
    finish((|| {
        let k = load_knot(knot)?;
        let alpha = load_alpha(alpha, inverse)?;
        let rep = Representation::trivial(&k);
        let check = verify_theorem(&k, &rep, &alpha).map_err(|e| e.to_string())?;
        let space = solve_based_reps(&k, &rep, &alpha).map_err(|e| e.to_string())?;
        let basis: Vec<Vec<String>> = space.basis().iter().map(|v| strings(v)).collect();
        Ok(json!({
            "knot": knot_json(&k),
            "field": space.field().to_string(),
            "alpha": space.alpha().to_string(),
            "nullity": check.nullity,
            "max_r": check.max_r,
            "agree": check.agree,
            "basis": basis,
        }))
    })())
}
