use std::fs;

use serde_json::{json, Value};
use twistalex::derived::{self, DerivedError, FiniteAction};
use twistalex::dilation::{self, DilationError};
use twistalex::invariants::{self, InvariantError, InvariantReport};
use twistalex::knot::{self, BraidWord, KnotError, Representation, WirtingerPresentation};
use twistalex::parse::{parse_minpoly, parse_scalar};
use twistalex::{Field, LaurentPoly, PolyMatrix, Scalar};

use crate::{
    exit, AlexArgs, Command, CrowellArgs, Failure, KnotSource, Output, ReciprocalArgs, RepSource,
    TwistedArgs, VerifyArgs,
};

type CmdResult = Result<String, (String, Failure)>;

fn fail<T>(f: Failure) -> Result<T, (String, Failure)> {
    Err((String::new(), f))
}

fn knot_failure(e: KnotError) -> Failure {
    let code = match e {
        KnotError::RelationViolated { .. }
        | KnotError::SingularMatrix { .. }
        | KnotError::SizeMismatch(_)
        | KnotError::Underdetermined(_) => exit::REPRESENTATION,
        _ => exit::INPUT,
    };
    Failure::new(code, e)
}

fn invariant_failure(e: InvariantError) -> Failure {
    let code = match e {
        InvariantError::OracleMismatch { .. } => exit::ORACLE,
        _ => exit::INPUT,
    };
    Failure::new(code, e)
}

fn dilation_failure(e: DilationError) -> Failure {
    match e {
        DilationError::Invariant(e) => invariant_failure(e),
        DilationError::VerificationFailed { .. } => Failure::new(exit::THEOREM, e),
        e => Failure::input(e),
    }
}

fn derived_failure(e: DerivedError) -> Failure {
    let code = match e {
        DerivedError::ImageNotFinite { .. } => exit::INFINITE_IMAGE,
        _ => exit::INPUT,
    };
    Failure::new(code, e)
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {path}: {e}")))
}

/// Loads the single knot source; exactly one must be given.
pub fn load_knot(src: &KnotSource) -> Result<WirtingerPresentation, Failure> {
    match (&src.builtin, &src.knot, &src.braid) {
        (Some(name), None, None) => knot::builtin(name).ok_or_else(|| {
            Failure::input(format!(
                "unknown built-in knot '{name}' (known: {})",
                knot::BUILTIN_KNOTS.join(", ")
            ))
        }),
        (None, Some(path), None) => knot::parse_presentation(&read(path)?).map_err(knot_failure),
        (None, None, Some(lit)) => {
            let word = BraidWord::parse(lit).map_err(knot_failure)?;
            knot::from_braid(&word).map_err(knot_failure)
        }
        _ => Err(Failure::input(
            "exactly one of --builtin, --knot, --braid is required",
        )),
    }
}

/// A literal over Q if possible, otherwise over Q(i).
fn parse_plain_scalar(src: &str) -> Result<Scalar, Failure> {
    let g = Field::gaussian();
    let s = parse_scalar(src, &g).map_err(|e| Failure::input(format!("'{src}': {e}")))?;
    Ok(match s.to_rational() {
        Some(q) => Field::rational().from_rational(q),
        None => s,
    })
}

/// The representation from `--rep` or `--scalar`, trivial when neither is given.
pub fn load_representation(
    pres: &WirtingerPresentation,
    src: &RepSource,
) -> Result<Representation, Failure> {
    match (&src.rep, &src.scalar) {
        (Some(path), None) => {
            let (_, images) = knot::parse_representation(&read(path)?).map_err(knot_failure)?;
            knot::validate_representation(pres, images).map_err(knot_failure)
        }
        (None, Some(c)) => {
            let c = parse_plain_scalar(c)?;
            Representation::scalar(pres, &c).map_err(knot_failure)
        }
        (None, None) => Ok(Representation::trivial(pres)),
        _ => Err(Failure::input("--rep and --scalar are exclusive")),
    }
}

/// Parses `--alpha`: `root-of <minpoly>` is the generator θ of Q[θ]/(minpoly);
/// other literals are read over the representation's field, or over Q / Q(i).
pub fn load_alpha(
    expr: &str,
    minpoly: Option<&str>,
    inverse: bool,
    field: &Field,
) -> Result<Scalar, Failure> {
    let joined = match minpoly {
        Some(p) if expr.trim() == "root-of" => format!("root-of {p}"),
        Some(p) => return Err(Failure::input(format!("unexpected argument '{p}'"))),
        None => expr.to_string(),
    };
    let text = joined.trim();
    let alpha = if let Some(rest) = text.strip_prefix("root-of") {
        let p = parse_minpoly(rest.trim())
            .map_err(|e| Failure::input(format!("minimal polynomial '{}': {e}", rest.trim())))?;
        Field::extension(&p).map_err(Failure::input)?.generator()
    } else if field.is_rational() {
        parse_plain_scalar(text)?
    } else {
        parse_scalar(text, field).map_err(|e| Failure::input(format!("'{text}': {e}")))?
    };
    if alpha.is_zero() {
        return Err(Failure::input("alpha must be nonzero"));
    }
    if inverse {
        alpha.inv().map_err(Failure::input)
    } else {
        Ok(alpha)
    }
}

pub(crate) fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Alex(a) => cmd_alex(a),
        Command::Twisted(a) => cmd_twisted(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Crowell(a) => cmd_crowell(a),
        Command::Reciprocal(a) => cmd_reciprocal(a),
    }
}

fn finish(text: String, value: Value, out: &Output) -> String {
    if out.json {
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn poly_line(symbol: &str, polys: &[LaurentPoly]) -> String {
    polys
        .iter()
        .enumerate()
        .map(|(r, p)| format!("{symbol}_{} = {p}", r + 1))
        .collect::<Vec<_>>()
        .join(", ")
}

fn matrix_json(m: &PolyMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

fn knot_json(p: &WirtingerPresentation) -> Value {
    json!({
        "name": p.name(),
        "generators": p.num_generators(),
        "relations": p.relations().iter().map(|r| vec![r.i, r.j, r.k]).collect::<Vec<_>>(),
    })
}

fn basing_line(report: &InvariantReport) -> String {
    match report.basing.dropped_relation {
        Some(r) => format!("based matrix (x_0 and relation {r} removed):\n"),
        None => "based matrix (x_0 removed):\n".to_string(),
    }
}

fn report_json(report: &InvariantReport) -> Value {
    json!({
        "polynomials": report.polynomials.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "matrix": matrix_json(&report.matrix),
        "basing": {
            "dropped_generator": report.basing.dropped_generator,
            "dropped_relation": report.basing.dropped_relation,
        },
    })
}

fn cmd_alex(a: &AlexArgs) -> CmdResult {
    let pres = load_knot(&a.source).or_else(fail)?;
    let report = invariants::alexander_report(&pres, a.rmax, a.oracle)
        .map_err(invariant_failure)
        .or_else(fail)?;
    let mut text = poly_line("Δ", &report.polynomials);
    text.push('\n');
    if a.oracle {
        text.push_str("oracle: minors agree\n");
    }
    if a.output.verbose {
        text.push_str(&basing_line(&report));
        text.push_str(&report.matrix.to_string());
    }
    let mut value = report_json(&report);
    value["command"] = json!("alex");
    value["knot"] = knot_json(&pres);
    value["oracle"] = json!(a.oracle);
    Ok(finish(text, value, &a.output))
}

fn rep_json(rep: &Representation) -> Value {
    json!({
        "field": rep.field().to_string(),
        "dim": rep.dim(),
        "images": rep.images().iter().map(|m| {
            (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

fn reciprocity_text(d: &LaurentPoly) -> (String, Value) {
    match invariants::reciprocity_of(d) {
        Ok(r) => (format!("{}", r.inversion_closed), json!(r.inversion_closed)),
        Err(InvariantError::NonRationalCoefficients(_)) => (
            "unsupported (coefficients not rational)".to_string(),
            Value::Null,
        ),
        Err(e) => (format!("unavailable ({e})"), Value::Null),
    }
}

fn cmd_twisted(a: &TwistedArgs) -> CmdResult {
    let pres = load_knot(&a.source).or_else(fail)?;
    let rep = load_representation(&pres, &a.rep).or_else(fail)?;
    let report = invariants::twisted_report(&pres, &rep, a.rmax, a.oracle)
        .map_err(invariant_failure)
        .or_else(fail)?;
    let wada = invariants::wada_invariant(&pres, &rep)
        .map_err(invariant_failure)
        .or_else(fail)?;
    let (recip_text, recip_value) = reciprocity_text(&report.polynomials[0]);
    let mut text = poly_line("D", &report.polynomials);
    text.push('\n');
    text.push_str(&format!("W = {wada}\n"));
    text.push_str(&format!("reciprocal: {recip_text}\n"));
    if a.oracle {
        text.push_str("oracle: minors agree\n");
    }
    if a.output.verbose {
        text.push_str(&format!("field: {}, dim {}\n", rep.field(), rep.dim()));
        text.push_str(&basing_line(&report));
        text.push_str(&report.matrix.to_string());
    }
    let mut value = report_json(&report);
    value["command"] = json!("twisted");
    value["knot"] = knot_json(&pres);
    value["representation"] = rep_json(&rep);
    value["wada"] = json!({
        "numerator": wada.numerator().to_string(),
        "denominator": wada.denominator().to_string(),
    });
    value["inversion_closed"] = recip_value;
    value["oracle"] = json!(a.oracle);
    Ok(finish(text, value, &a.output))
}

fn vector_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let pres = load_knot(&a.source).or_else(fail)?;
    let rep = load_representation(&pres, &a.rep).or_else(fail)?;
    let alpha = load_alpha(&a.alpha, a.minpoly.as_deref(), a.inverse, rep.field()).or_else(fail)?;
    let space = dilation::solve_based_reps(&pres, &rep, &alpha)
        .map_err(dilation_failure)
        .or_else(fail)?;
    let check = dilation::verify_theorem(&pres, &rep, &alpha)
        .map_err(dilation_failure)
        .or_else(fail)?;
    let alpha = space.alpha().clone();
    let alpha_inv = alpha.inv().expect("alpha is nonzero");
    let mut text = format!("field: {}\n", alpha.field());
    text.push_str(&format!("alpha = {alpha}, alpha^-1 = {alpha_inv}\n"));
    text.push_str(&format!(
        "nullity = {}, max_r = {}, agree = {}\n",
        check.nullity, check.max_r, check.agree
    ));
    let mut basis = Vec::new();
    for (n, v) in space.basis().iter().enumerate() {
        text.push_str(&format!("v{} = {}\n", n + 1, vector_text(v)));
        basis.push(v.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    let mut witness = Value::Null;
    let mut witness_ok = true;
    if space.dimension() == 1 {
        // sampled pair: s1 = v1, s2 = 2·v1
        let two = alpha.field().from_int(2);
        let s1 = space.basis()[0].clone();
        let s2 = space.combine(&[two]).map_err(dilation_failure).or_else(fail)?;
        let beta = space.witness(&s1, &s2).map_err(dilation_failure).or_else(fail)?;
        let conj: Vec<_> = space
            .dilations(&s1)
            .iter()
            .map(|d| d.conjugate_by_scaling(&beta))
            .collect::<Result<_, _>>()
            .map_err(dilation_failure)
            .or_else(fail)?;
        witness_ok = conj == space.dilations(&s2);
        text.push_str(&format!(
            "witness: s2 = 2*v1, beta = {beta}, conjugation reproduces s2: {witness_ok}\n"
        ));
        witness = json!({ "s1": "v1", "s2": "2*v1", "beta": beta.to_string(), "reproduces": witness_ok });
    }
    let value = json!({
        "command": "verify",
        "knot": knot_json(&pres),
        "field": alpha.field().to_string(),
        "alpha": alpha.to_string(),
        "alpha_inverse": alpha_inv.to_string(),
        "nullity": check.nullity,
        "max_r": check.max_r,
        "agree": check.agree,
        "basis": basis,
        "witness": witness,
    });
    let out = finish(text, value, &a.output);
    if !check.agree || !witness_ok {
        return Err((
            out,
            Failure::new(
                exit::THEOREM,
                "dimension count disagrees with the elementary polynomials",
            ),
        ));
    }
    Ok(out)
}

fn cmd_crowell(a: &CrowellArgs) -> CmdResult {
    if let Some(path) = &a.action {
        return crowell_words(a, path);
    }
    let pres = load_knot(&a.source).or_else(fail)?;
    let rep = load_representation(&pres, &a.rep).or_else(fail)?;
    let dp = derived::derived_presentation(&pres, &rep, a.cap)
        .map_err(derived_failure)
        .or_else(fail)?;
    let text = format!(
        "{} generators, {} relations\n{}",
        dp.num_generators(),
        dp.relations.len(),
        dp.render()
    );
    let value = json!({
        "command": "crowell",
        "knot": knot_json(&pres),
        "order": dp.order(),
        "generators": dp.num_generators(),
        "relations": dp.relations.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(finish(text, value, &a.output))
}

fn crowell_words(a: &CrowellArgs, path: &str) -> CmdResult {
    let action: FiniteAction = derived::parse_action(&read(path).or_else(fail)?)
        .map_err(derived_failure)
        .or_else(fail)?;
    let Some(src) = &a.word else {
        return fail(Failure::input("--action requires --word"));
    };
    let word = action
        .parse_word(src)
        .map_err(derived_failure)
        .or_else(fail)?;
    let mut result = action
        .normal_form(&word)
        .map_err(derived_failure)
        .or_else(fail)?;
    if a.invert {
        result = action
            .invert_word(&result)
            .map_err(derived_failure)
            .or_else(fail)?;
    }
    if let Some(s) = &a.act {
        let s = action.element(s).map_err(derived_failure).or_else(fail)?;
        result = action
            .s_act(s, &result)
            .map_err(derived_failure)
            .or_else(fail)?;
    }
    let rendered = action.render(&result);
    let value = json!({
        "command": "crowell",
        "input": action.render(&word),
        "result": rendered,
        "normal": action.is_normal(&result),
    });
    Ok(finish(format!("{rendered}\n"), value, &a.output))
}

fn cmd_reciprocal(a: &ReciprocalArgs) -> CmdResult {
    let pres = load_knot(&a.source).or_else(fail)?;
    let rep = load_representation(&pres, &a.rep).or_else(fail)?;
    let report = invariants::reciprocity_report(&pres, &rep)
        .map_err(invariant_failure)
        .or_else(fail)?;
    let text = format!(
        "D_1 = {}\ninversion-closed: {}\n",
        report.polynomial, report.inversion_closed
    );
    let value = json!({
        "command": "reciprocal",
        "knot": knot_json(&pres),
        "polynomial": report.polynomial.to_string(),
        "inversion_closed": report.inversion_closed,
    });
    Ok(finish(text, value, &a.output))
}
