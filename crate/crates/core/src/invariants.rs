//! Presentation matrices of (twisted) Alexander modules and the invariants
//! read off them: elementary polynomials, the Wada quotient and the
//! reciprocity test.

use thiserror::Error;

use crate::field::Field;
use crate::knot::{Representation, WirtingerPresentation};
use crate::laurent::{LaurentError, LaurentPoly, RationalFunction};
use crate::matrix::{MatrixError, PolyMatrix, ScalarMatrix, MINORS_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("rmax must be at least 1")]
    InvalidRmax,
    #[error("{0} has non-rational coefficients; only polynomials over Q are supported")]
    NonRationalCoefficients(String),
    #[error("oracle disagreement at r = {r}: Smith form gives {smith}, minors give {minors}")]
    OracleMismatch {
        r: usize,
        smith: String,
        minors: String,
    },
    #[error("relation index {index} out of range")]
    RelationOutOfRange { index: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Which generator column block and which relation row block are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basing {
    pub dropped_generator: Option<usize>,
    pub dropped_relation: Option<usize>,
}

impl Basing {
    /// Drops `x_0` and the last relation.
    pub fn standard(pres: &WirtingerPresentation) -> Basing {
        Basing {
            dropped_generator: Some(0),
            dropped_relation: pres.relations().len().checked_sub(1),
        }
    }

    /// Drops `x_0` and relation `index`.
    pub fn dropping_relation(index: usize) -> Basing {
        Basing {
            dropped_generator: Some(0),
            dropped_relation: Some(index),
        }
    }

    /// Keeps every generator and relation.
    pub fn full() -> Basing {
        Basing {
            dropped_generator: None,
            dropped_relation: None,
        }
    }
}

/// Presentation matrix from the relation `x_i + (t X_i) x_j = x_k + (t X_k) x_i`:
/// the row block of `(i, j, k)` holds `I − tX_k` in column block `i`, `tX_i`
/// in block `j` and `−I` in block `k`, accumulating where indices coincide.
pub fn relation_matrix(
    pres: &WirtingerPresentation,
    images: &[ScalarMatrix],
    field: &Field,
    basing: Basing,
) -> Result<PolyMatrix, InvariantError> {
    let n = pres.num_generators();
    let dim = images.first().map_or(1, |m| m.rows());
    if let Some(index) = basing.dropped_relation {
        if index >= pres.relations().len() {
            return Err(InvariantError::RelationOutOfRange { index });
        }
    }
    let rows: Vec<usize> = (0..pres.relations().len())
        .filter(|&r| Some(r) != basing.dropped_relation)
        .collect();
    let block_col = |g: usize| match basing.dropped_generator {
        Some(d) if g == d => None,
        Some(d) if g > d => Some(g - 1),
        _ => Some(g),
    };
    let kept = n - usize::from(basing.dropped_generator.is_some_and(|d| d < n));
    let mut m = PolyMatrix::zeros(rows.len() * dim, kept * dim, field);
    let ident = ScalarMatrix::identity(dim, field);
    let t = LaurentPoly::t(field);
    let add_block = |m: &mut PolyMatrix, rb: usize, g: usize, block: &PolyMatrix| {
        let Some(cb) = block_col(g) else { return };
        for a in 0..dim {
            for b in 0..dim {
                let (r, c) = (rb * dim + a, cb * dim + b);
                let v = m.get(r, c) + block.get(a, b);
                m.set(r, c, v);
            }
        }
    };
    for (rb, &ri) in rows.iter().enumerate() {
        let rel = pres.relations()[ri];
        let tx_i = images[rel.i].to_poly().map(field, |p| p * &t);
        let tx_k = images[rel.k].to_poly().map(field, |p| p * &t);
        let id = ident.to_poly();
        add_block(&mut m, rb, rel.i, &id.sub(&tx_k)?);
        add_block(&mut m, rb, rel.j, &tx_i);
        add_block(&mut m, rb, rel.k, &id.map(field, |p| -p));
    }
    Ok(m)
}

/// The based Alexander matrix (x_0 column and last relation removed).
pub fn alexander_matrix(pres: &WirtingerPresentation) -> PolyMatrix {
    alexander_matrix_with(pres, Basing::standard(pres)).expect("standard basing is valid")
}

pub fn alexander_matrix_with(
    pres: &WirtingerPresentation,
    basing: Basing,
) -> Result<PolyMatrix, InvariantError> {
    let q = Field::rational();
    let one = vec![ScalarMatrix::identity(1, &q); pres.num_generators()];
    relation_matrix(pres, &one, &q, basing)
}

/// The based twisted matrix `M_γ(t)`, of size `(n·N) × (n·N)` for a
/// presentation with `n + 1` generators and relations.
pub fn twisted_matrix(pres: &WirtingerPresentation, rep: &Representation) -> PolyMatrix {
    twisted_matrix_with(pres, rep, Basing::standard(pres)).expect("standard basing is valid")
}

pub fn twisted_matrix_with(
    pres: &WirtingerPresentation,
    rep: &Representation,
    basing: Basing,
) -> Result<PolyMatrix, InvariantError> {
    relation_matrix(pres, rep.images(), rep.field(), basing)
}

/// `Δ_r = d_1 ⋯ d_{m−r+1}` for `r = 1..=rmax`, where `d` are the invariant
/// factors padded with zeros to `m = cols`. `Δ_r = 1` once `m − r + 1 ≤ 0`.
/// With `oracle`, each value is recomputed as a gcd of minors.
pub fn elementary_polynomials(
    m: &PolyMatrix,
    rmax: usize,
    oracle: bool,
) -> Result<Vec<LaurentPoly>, InvariantError> {
    if rmax == 0 {
        return Err(InvariantError::InvalidRmax);
    }
    let field = m.field();
    let size = m.cols();
    let zero = LaurentPoly::zero(field);
    let mut d = m.smith_normal_form();
    d.resize(size, zero.clone());
    if oracle && m.rows().max(m.cols()) > MINORS_LIMIT {
        return Err(MatrixError::TooLargeForMinors {
            limit: MINORS_LIMIT,
        }
        .into());
    }
    let mut out = Vec::with_capacity(rmax);
    for r in 1..=rmax {
        let k = (size + 1).saturating_sub(r);
        let delta = d[..k]
            .iter()
            .fold(LaurentPoly::one(field), |acc, f| &acc * f)
            .normalized();
        if oracle && k > 0 {
            let minors = if k > m.rows() {
                zero.clone()
            } else {
                m.gcd_of_minors(k)?
            };
            if minors != delta {
                return Err(InvariantError::OracleMismatch {
                    r,
                    smith: delta.to_string(),
                    minors: minors.to_string(),
                });
            }
        }
        out.push(delta);
    }
    Ok(out)
}

/// Default number of elementary polynomials reported for a matrix.
pub fn default_rmax(m: &PolyMatrix) -> usize {
    m.cols().max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub polynomials: Vec<LaurentPoly>,
    pub matrix: PolyMatrix,
    pub basing: Basing,
}

pub fn alexander_report(
    pres: &WirtingerPresentation,
    rmax: Option<usize>,
    oracle: bool,
) -> Result<InvariantReport, InvariantError> {
    let basing = Basing::standard(pres);
    let matrix = alexander_matrix_with(pres, basing)?;
    let rmax = rmax.unwrap_or_else(|| default_rmax(&matrix));
    let polynomials = elementary_polynomials(&matrix, rmax, oracle)?;
    Ok(InvariantReport {
        polynomials,
        matrix,
        basing,
    })
}

pub fn twisted_report(
    pres: &WirtingerPresentation,
    rep: &Representation,
    rmax: Option<usize>,
    oracle: bool,
) -> Result<InvariantReport, InvariantError> {
    let basing = Basing::standard(pres);
    let matrix = twisted_matrix_with(pres, rep, basing)?;
    let rmax = rmax.unwrap_or_else(|| default_rmax(&matrix));
    let polynomials = elementary_polynomials(&matrix, rmax, oracle)?;
    Ok(InvariantReport {
        polynomials,
        matrix,
        basing,
    })
}

/// `det(t X − I)` for a square scalar matrix `X`.
pub fn characteristic_factor(x: &ScalarMatrix) -> Result<LaurentPoly, InvariantError> {
    let field = x.field();
    let t = LaurentPoly::t(field);
    let m = x
        .to_poly()
        .map(field, |p| p * &t)
        .sub(&ScalarMatrix::identity(x.rows(), field).to_poly())?;
    Ok(m.determinant()?)
}

/// `D_{γ,1}(t) / det(t X_0 − I)`, reduced, with both parts in normal form.
pub fn wada_invariant(
    pres: &WirtingerPresentation,
    rep: &Representation,
) -> Result<RationalFunction, InvariantError> {
    let den = characteristic_factor(rep.image(0))?;
    let num = &elementary_polynomials(&twisted_matrix(pres, rep), 1, false)?[0];
    Ok(RationalFunction::new(num, &den)?.normalized())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocityReport {
    pub polynomial: LaurentPoly,
    pub inversion_closed: bool,
}

/// Whether the zero set of `D_{γ,1}` is closed under `z ↦ 1/z`.
pub fn reciprocity_report(
    pres: &WirtingerPresentation,
    rep: &Representation,
) -> Result<ReciprocityReport, InvariantError> {
    let d = elementary_polynomials(&twisted_matrix(pres, rep), 1, false)?.remove(0);
    reciprocity_of(&d)
}

pub fn reciprocity_of(d: &LaurentPoly) -> Result<ReciprocityReport, InvariantError> {
    if !d.has_rational_coeffs() {
        return Err(InvariantError::NonRationalCoefficients(d.to_string()));
    }
    let polynomial = d.to_rational_field()?;
    let inversion_closed = polynomial.inversion_closed()?;
    Ok(ReciprocityReport {
        polynomial,
        inversion_closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{builtin, parse_presentation, validate_representation};
    use crate::parse::{parse_poly, parse_scalar};

    fn q() -> Field {
        Field::rational()
    }

    fn poly(s: &str) -> LaurentPoly {
        parse_poly(s, &q()).unwrap()
    }

    fn hand_trefoil() -> WirtingerPresentation {
        parse_presentation("generators 3\nrel 0 1 2\nrel 1 2 0\nrel 2 0 1\n").unwrap()
    }

    fn pmat(rows: usize, cols: usize, field: &Field, entries: &[&str]) -> PolyMatrix {
        let data = entries
            .iter()
            .map(|s| parse_poly(s, field).unwrap())
            .collect();
        PolyMatrix::from_entries(rows, cols, field, data).unwrap()
    }

    #[test]
    fn alexander_matrix_examples() {
        let m = alexander_matrix(&hand_trefoil());
        assert_eq!(m, pmat(2, 2, &q(), &["t", "-1", "1-t", "t"]));
        let u = alexander_matrix(&builtin("unknot").unwrap());
        assert_eq!((u.rows(), u.cols()), (0, 0));
        let p = parse_presentation("generators 2\nrel 1 1 1\nrel 0 0 0\n").unwrap();
        assert!(alexander_matrix(&p).get(0, 0).is_zero());
    }

    #[test]
    fn classical_polynomials() {
        let tre = elementary_polynomials(&alexander_matrix(&hand_trefoil()), 2, true).unwrap();
        assert_eq!(tre, vec![poly("t^2 - t + 1"), poly("1")]);
        let fig = builtin("figure8").unwrap();
        let d = elementary_polynomials(&alexander_matrix(&fig), 1, true).unwrap();
        assert_eq!(d, vec![poly("t^2 - 3t + 1")]);
        let u = alexander_report(&builtin("unknot").unwrap(), None, true).unwrap();
        assert_eq!(u.polynomials, vec![poly("1")]);
        let b = alexander_report(&builtin("trefoil").unwrap(), None, true).unwrap();
        assert_eq!(b.polynomials, tre);
    }

    #[test]
    fn rectangular_matrices_pad_with_zero() {
        // two generators, one usable relation column count 2: free part
        let m = pmat(1, 2, &q(), &["t", "1"]);
        let d = elementary_polynomials(&m, 3, true).unwrap();
        assert_eq!(d, vec![poly("0"), poly("1"), poly("1")]);
        assert_eq!(elementary_polynomials(&m, 0, false), Err(InvariantError::InvalidRmax));
    }

    fn trefoil_sl2() -> Representation {
        let p = builtin("trefoil").unwrap();
        let a = ScalarMatrix::from_ints(2, 2, &q(), &[1, 1, 0, 1]);
        let b = ScalarMatrix::from_ints(2, 2, &q(), &[1, 0, -1, 1]);
        Representation::propagate(&p, vec![Some(a), Some(b), None]).unwrap()
    }

    #[test]
    fn sl2_twisted_matrix_by_hand() {
        // retained triples (0,1,2) and (2,0,1); x_2 ↦ A B A⁻¹
        let p = builtin("trefoil").unwrap();
        let m = twisted_matrix(&p, &trefoil_sl2());
        let expect = pmat(
            4,
            4,
            &q(),
            &[
                "t", "t", "-1", "0", //
                "0", "t", "0", "-1", //
                "-1", "0", "1-t", "0", //
                "0", "-1", "t", "1-t",
            ],
        );
        assert_eq!(m, expect);
        let d = elementary_polynomials(&m, 4, true).unwrap();
        assert_eq!(d[0], poly("(t^2+1)(t-1)^2"));
        let w = wada_invariant(&p, &trefoil_sl2()).unwrap();
        assert_eq!(w.numerator(), &poly("t^2+1"));
        assert!(w.denominator().is_one());
    }

    #[test]
    fn trivial_representation_reduces() {
        for name in ["unknot", "trefoil", "figure8"] {
            let p = builtin(name).unwrap();
            let rep = Representation::trivial(&p);
            assert_eq!(twisted_matrix(&p, &rep), alexander_matrix(&p));
            let a = alexander_report(&p, Some(4), false).unwrap().polynomials;
            let t = twisted_report(&p, &rep, Some(4), false).unwrap().polynomials;
            assert_eq!(a, t);
        }
    }

    #[test]
    fn scalar_shift_law() {
        let g = Field::gaussian();
        for name in ["trefoil", "figure8"] {
            let p = builtin(name).unwrap();
            let delta = alexander_report(&p, Some(3), false).unwrap().polynomials;
            for c in ["-1", "2", "1/3", "i", "1+i"] {
                let c = parse_scalar(c, &g).unwrap();
                let rep = Representation::scalar(&p, &c).unwrap();
                let d = twisted_report(&p, &rep, Some(3), true).unwrap().polynomials;
                for (dr, ar) in d.iter().zip(&delta) {
                    let shifted = ar.embed(&g).unwrap().substitute_scaled(&c).unwrap();
                    assert_eq!(dr, &shifted.normalized(), "{name}, c = {c}");
                }
            }
        }
    }

    #[test]
    fn divisibility_chain() {
        let mut cases: Vec<(WirtingerPresentation, Representation)> = Vec::new();
        for name in ["unknot", "trefoil", "figure8"] {
            let p = builtin(name).unwrap();
            cases.push((p.clone(), Representation::trivial(&p)));
            let c = q().from_int(-1);
            cases.push((p.clone(), Representation::scalar(&p, &c).unwrap()));
        }
        let p = builtin("trefoil").unwrap();
        cases.push((p, trefoil_sl2()));
        for (p, rep) in cases {
            let d = twisted_report(&p, &rep, Some(6), false).unwrap().polynomials;
            for w in d.windows(2) {
                assert!(w[1].divides(&w[0]), "{} does not divide {}", w[1], w[0]);
            }
        }
    }

    #[test]
    fn basing_independence() {
        for name in ["trefoil", "figure8"] {
            let p = builtin(name).unwrap();
            let std = alexander_report(&p, Some(3), false).unwrap().polynomials;
            let m = alexander_matrix_with(&p, Basing::dropping_relation(0)).unwrap();
            assert_eq!(elementary_polynomials(&m, 3, true).unwrap(), std);
        }
        let m = alexander_matrix_with(&hand_trefoil(), Basing::dropping_relation(0)).unwrap();
        assert_eq!(
            elementary_polynomials(&m, 1, false).unwrap()[0],
            poly("t^2-t+1")
        );
    }

    #[test]
    fn wada_examples() {
        let p = hand_trefoil();
        let w = wada_invariant(&p, &Representation::trivial(&p)).unwrap();
        assert_eq!(w.to_string(), "(t^2 - t + 1) / (t - 1)");
        let u = builtin("unknot").unwrap();
        let w = wada_invariant(&u, &Representation::trivial(&u)).unwrap();
        assert_eq!(w.to_string(), "(1) / (t - 1)");
        let neg = Representation::scalar(&p, &q().from_int(-1)).unwrap();
        let w = wada_invariant(&p, &neg).unwrap();
        assert_eq!(w.numerator(), &poly("t^2 + t + 1"));
        assert_eq!(w.denominator(), &poly("t + 1"));
    }

    #[test]
    fn reciprocity_examples() {
        for name in ["trefoil", "figure8"] {
            let p = builtin(name).unwrap();
            let r = reciprocity_report(&p, &Representation::trivial(&p)).unwrap();
            assert!(r.inversion_closed, "{name}");
        }
        let p = builtin("trefoil").unwrap();
        let two = Representation::scalar(&p, &q().from_int(2)).unwrap();
        let r = reciprocity_report(&p, &two).unwrap();
        assert_eq!(r.polynomial, poly("t^2 - t/2 + 1/4"));
        assert!(!r.inversion_closed);
        let i = Representation::scalar(&p, &Field::gaussian().generator()).unwrap();
        assert!(matches!(
            reciprocity_report(&p, &i),
            Err(InvariantError::NonRationalCoefficients(_))
        ));
    }

    #[test]
    fn invalid_relation_basing() {
        let p = hand_trefoil();
        assert_eq!(
            alexander_matrix_with(&p, Basing::dropping_relation(3)),
            Err(InvariantError::RelationOutOfRange { index: 3 })
        );
        let rep = validate_representation(&p, vec![ScalarMatrix::identity(1, &q()); 3]).unwrap();
        let full = twisted_matrix_with(&p, &rep, Basing::full()).unwrap();
        assert_eq!((full.rows(), full.cols()), (3, 3));
    }
}
