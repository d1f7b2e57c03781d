//! JSON output re-parses to the values computed directly through the library.

use serde_json::Value;
use twistalex::invariants::{alexander_report, twisted_report, wada_invariant};
use twistalex::knot::{self, Representation};
use twistalex::parse::{parse_minpoly, parse_poly, parse_scalar};
use twistalex::{Field, LaurentPoly, PolyMatrix};
use twistalex_cli::{load_representation, run, RepSource};

fn json(args: &[&str]) -> Value {
    let mut full = vec!["twistalex"];
    full.extend_from_slice(args);
    full.push("--json");
    let o = run(full);
    assert_eq!(o.code, 0, "{}", o.stderr);
    serde_json::from_str(&o.stdout).expect("valid JSON")
}

fn polys(v: &Value, field: &Field) -> Vec<LaurentPoly> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| parse_poly(p.as_str().unwrap(), field).unwrap())
        .collect()
}

fn matrix(v: &Value, field: &Field) -> PolyMatrix {
    let rows = v["rows"].as_u64().unwrap() as usize;
    let cols = v["cols"].as_u64().unwrap() as usize;
    let mut m = PolyMatrix::zeros(rows, cols, field);
    for (i, row) in v["entries"].as_array().unwrap().iter().enumerate() {
        for (j, e) in row.as_array().unwrap().iter().enumerate() {
            m.set(i, j, parse_poly(e.as_str().unwrap(), field).unwrap());
        }
    }
    m
}

#[test]
fn alex_round_trip() {
    let q = Field::rational();
    for name in ["unknot", "trefoil", "figure8"] {
        let v = json(&["alex", "--builtin", name]);
        let pres = knot::builtin(name).unwrap();
        let report = alexander_report(&pres, None, true).unwrap();
        assert_eq!(polys(&v["polynomials"], &q), report.polynomials, "{name}");
        let m = matrix(&v["matrix"], &q);
        assert_eq!(m, report.matrix, "{name}");
        assert_eq!(v["knot"]["generators"], pres.num_generators());
    }
}

#[test]
fn twisted_round_trip() {
    let q = Field::rational();
    let cases: [&[&str]; 3] = [
        &["--rep", "tests/data/trefoil_sl2.rep"],
        &["--rep", "tests/data/trefoil_two.rep"],
        &["--scalar", "-1"],
    ];
    let pres = knot::builtin("trefoil").unwrap();
    for extra in cases {
        let mut args = vec!["twisted", "--builtin", "trefoil"];
        args.extend_from_slice(extra);
        let v = json(&args);
        let src = RepSource {
            rep: (extra[0] == "--rep").then(|| extra[1].to_string()),
            scalar: (extra[0] == "--scalar").then(|| extra[1].to_string()),
        };
        let rep: Representation = load_representation(&pres, &src).unwrap();
        let report = twisted_report(&pres, &rep, None, true).unwrap();
        assert_eq!(polys(&v["polynomials"], &q), report.polynomials);
        assert_eq!(matrix(&v["matrix"], &q), report.matrix);
        let w = wada_invariant(&pres, &rep).unwrap();
        let num = parse_poly(v["wada"]["numerator"].as_str().unwrap(), &q).unwrap();
        let den = parse_poly(v["wada"]["denominator"].as_str().unwrap(), &q).unwrap();
        assert_eq!(&num, w.numerator());
        assert_eq!(&den, w.denominator());
    }
}

#[test]
fn verify_basis_round_trip() {
    let v = json(&[
        "verify", "--builtin", "trefoil", "--alpha", "root-of", "t^2-t+1", "--inverse",
    ]);
    let f = Field::extension(&parse_minpoly("t^2-t+1").unwrap()).unwrap();
    let alpha = parse_scalar(v["alpha"].as_str().unwrap(), &f).unwrap();
    let inv = parse_scalar(v["alpha_inverse"].as_str().unwrap(), &f).unwrap();
    assert!(alpha.try_mul(&inv).unwrap().is_one());
    assert_eq!(inv, f.generator());
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), v["nullity"].as_u64().unwrap() as usize);
    let pres = knot::builtin("trefoil").unwrap();
    let rep = Representation::trivial(&pres);
    for b in basis {
        // based vectors omit b_0 = 0
        let mut translations = vec![vec![f.zero()]];
        for s in b.as_array().unwrap() {
            translations.push(vec![parse_scalar(s.as_str().unwrap(), &f).unwrap()]);
        }
        assert_eq!(translations.len(), pres.num_generators());
        let violated =
            twistalex::dilation::satisfies_relations(&pres, &rep, &alpha, &translations).unwrap();
        assert_eq!(violated, None);
    }
}
