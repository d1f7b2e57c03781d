//! Dilations `z ↦ αz + b` of `F^N`, their operator action by matrices, and
//! the spaces of based dilation representations with a fixed ratio.

use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::invariants::{elementary_polynomials, twisted_matrix, InvariantError};
use crate::knot::{Representation, WirtingerPresentation};
use crate::laurent::LaurentError;
use crate::matrix::{MatrixError, ScalarMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DilationError {
    #[error("dilation ratio must be nonzero")]
    ZeroAlpha,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible coefficient fields: {0}")]
    ContextMismatch(FieldError),
    #[error("vectors are not proportional")]
    NotProportional,
    #[error("the zero vector is the trivial representation")]
    ZeroRepresentation,
    #[error("null vector fails relation {position}")]
    VerificationFailed { position: usize },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

impl From<FieldError> for DilationError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::DivisionByZero => DilationError::ZeroAlpha,
            other => DilationError::ContextMismatch(other),
        }
    }
}

/// `z ↦ ratio·z + translation`, with `ratio ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dilation {
    ratio: Scalar,
    translation: Vec<Scalar>,
}

fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

impl Dilation {
    pub fn new(ratio: Scalar, translation: Vec<Scalar>) -> Result<Dilation, DilationError> {
        if ratio.is_zero() {
            return Err(DilationError::ZeroAlpha);
        }
        let mut field = ratio.field().clone();
        for b in &translation {
            field = field.join(b.field())?;
        }
        let ratio = ratio.embed(&field)?;
        let translation = translation
            .iter()
            .map(|b| b.embed(&field))
            .collect::<Result<_, _>>()?;
        Ok(Dilation { ratio, translation })
    }

    pub fn identity(n: usize, field: &Field) -> Dilation {
        Dilation {
            ratio: field.one(),
            translation: vec![field.zero(); n],
        }
    }

    /// The scaling `z ↦ βz`.
    pub fn scaling(beta: Scalar, n: usize) -> Result<Dilation, DilationError> {
        let zero = beta.field().zero();
        Dilation::new(beta, vec![zero; n])
    }

    pub fn ratio(&self) -> &Scalar {
        &self.ratio
    }

    pub fn translation(&self) -> &[Scalar] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    fn field(&self) -> &Field {
        self.ratio.field()
    }

    fn check_dim(&self, n: usize) -> Result<(), DilationError> {
        if self.dim() != n {
            return Err(DilationError::DimensionMismatch(format!(
                "dimension {} against {n}",
                self.dim()
            )));
        }
        Ok(())
    }

    fn lift(&self, field: &Field) -> Result<Dilation, DilationError> {
        Dilation::new(self.ratio.embed(field)?, self.translation.clone())
    }

    fn lift_pair(&self, other: &Dilation) -> Result<(Dilation, Dilation), DilationError> {
        other.check_dim(self.dim())?;
        let field = self.field().join(other.field())?;
        Ok((self.lift(&field)?, other.lift(&field)?))
    }

    pub fn apply(&self, z: &[Scalar]) -> Result<Vec<Scalar>, DilationError> {
        self.check_dim(z.len())?;
        z.iter()
            .zip(&self.translation)
            .map(|(x, b)| Ok(self.ratio.try_mul(x)?.try_add(b)?))
            .collect()
    }

    /// `self ∘ other`: ratio `α₁α₂`, translation `α₁b₂ + b₁`.
    pub fn compose(&self, other: &Dilation) -> Result<Dilation, DilationError> {
        let (a, b) = self.lift_pair(other)?;
        Ok(Dilation {
            ratio: &a.ratio * &b.ratio,
            translation: vec_add(&vec_scale(&a.ratio, &b.translation), &a.translation),
        })
    }

    pub fn inverse(&self) -> Dilation {
        let inv = self.ratio.inv().expect("ratio is nonzero");
        Dilation {
            translation: vec_scale(&(-&inv), &self.translation),
            ratio: inv,
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate(&self, g: &Dilation) -> Result<Dilation, DilationError> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// `d_β⁻¹ ∘ self ∘ d_β` for `d_β: z ↦ βz`; the translation becomes `β⁻¹b`.
    pub fn conjugate_by_scaling(&self, beta: &Scalar) -> Result<Dilation, DilationError> {
        let g = Dilation::scaling(beta.inv()?, self.dim())?;
        self.conjugate(&g)
    }

    /// The operator action `A·d: z ↦ αz + Ab`.
    pub fn act(&self, a: &ScalarMatrix) -> Result<Dilation, DilationError> {
        if a.rows() != self.dim() || a.cols() != self.dim() {
            return Err(DilationError::DimensionMismatch(format!(
                "{}x{} matrix on dimension {}",
                a.rows(),
                a.cols(),
                self.dim()
            )));
        }
        let field = self.field().join(a.field())?;
        let a = a.embed(&field)?;
        let me = self.lift(&field)?;
        Ok(Dilation {
            translation: a.apply(&me.translation)?,
            ratio: me.ratio,
        })
    }
}

/// Based representations `x_i ↦ (z ↦ αz + b_i)` with `b_0 = 0`, stored as
/// a basis of the concatenated vectors `(b_1, …, b_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasedRepSpace {
    alpha: Scalar,
    block: usize,
    generators: usize,
    basis: Vec<Vec<Scalar>>,
}

impl BasedRepSpace {
    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn field(&self) -> &Field {
        self.alpha.field()
    }

    /// Translation vectors `b_0 = 0, b_1, …, b_n` of a space element.
    pub fn translations(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let zero = vec![self.field().zero(); self.block];
        let mut out = vec![zero];
        out.extend(v.chunks(self.block).map(<[Scalar]>::to_vec));
        out.truncate(self.generators);
        out
    }

    /// The dilations `x_i ↦ (z ↦ αz + b_i)` for a space element.
    pub fn dilations(&self, v: &[Scalar]) -> Vec<Dilation> {
        self.translations(v)
            .into_iter()
            .map(|b| Dilation::new(self.alpha.clone(), b).expect("alpha is nonzero"))
            .collect()
    }

    /// `Σ c_k · basis_k`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Result<Vec<Scalar>, DilationError> {
        if coeffs.len() != self.dimension() {
            return Err(DilationError::DimensionMismatch(format!(
                "{} coefficients for dimension {}",
                coeffs.len(),
                self.dimension()
            )));
        }
        let f = self.field();
        let len = self.block * (self.generators - 1);
        let mut out = vec![f.zero(); len];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            let c = c.embed(f)?;
            out = vec_add(&out, &vec_scale(&c, b));
        }
        Ok(out)
    }

    /// [`conjugacy_witness`] after checking that the space is a line.
    pub fn witness(&self, s1: &[Scalar], s2: &[Scalar]) -> Result<Scalar, DilationError> {
        if self.dimension() != 1 {
            return Err(DilationError::NotProportional);
        }
        conjugacy_witness(s1, s2)
    }
}

/// Checks `α b_i + X_i b_j = α b_k + X_k b_i` for every relation.
pub fn satisfies_relations(
    pres: &WirtingerPresentation,
    rep: &Representation,
    alpha: &Scalar,
    translations: &[Vec<Scalar>],
) -> Result<Option<usize>, DilationError> {
    let field = alpha.field();
    let images: Vec<ScalarMatrix> = rep
        .images()
        .iter()
        .map(|m| m.embed(field))
        .collect::<Result<_, _>>()?;
    for (position, r) in pres.relations().iter().enumerate() {
        let lhs = vec_add(
            &vec_scale(alpha, &translations[r.i]),
            &images[r.i].apply(&translations[r.j])?,
        );
        let rhs = vec_add(
            &vec_scale(alpha, &translations[r.k]),
            &images[r.k].apply(&translations[r.i])?,
        );
        if lhs != rhs {
            return Ok(Some(position));
        }
    }
    Ok(None)
}

/// Null space of the based `M_γ(α⁻¹)`, each basis vector re-checked
/// against every relation including the one dropped by the basing.
pub fn solve_based_reps(
    pres: &WirtingerPresentation,
    rep: &Representation,
    alpha: &Scalar,
) -> Result<BasedRepSpace, DilationError> {
    if alpha.is_zero() {
        return Err(DilationError::ZeroAlpha);
    }
    let field = rep.field().join(alpha.field())?;
    let alpha = alpha.embed(&field)?;
    let m = twisted_matrix(pres, rep).evaluate(&alpha.inv()?)?;
    let basis = m.null_space();
    let space = BasedRepSpace {
        alpha,
        block: rep.dim(),
        generators: pres.num_generators(),
        basis,
    };
    for v in space.basis() {
        let b = space.translations(v);
        if let Some(position) = satisfies_relations(pres, rep, space.alpha(), &b)? {
            return Err(DilationError::VerificationFailed { position });
        }
    }
    Ok(space)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremCheck {
    pub nullity: usize,
    pub max_r: usize,
    pub agree: bool,
}

/// Compares `dim` of the based representation space with
/// `max {r : D_{γ,r}(α⁻¹) = 0}` (0 when no `D_{γ,r}` vanishes).
pub fn verify_theorem(
    pres: &WirtingerPresentation,
    rep: &Representation,
    alpha: &Scalar,
) -> Result<TheoremCheck, DilationError> {
    let space = solve_based_reps(pres, rep, alpha)?;
    let nullity = space.dimension();
    let max_r = vanishing_order(pres, rep, &space.alpha().inv()?)?;
    Ok(TheoremCheck {
        nullity,
        max_r,
        agree: nullity == max_r,
    })
}

/// Largest `r` with `D_{γ,r}(x) = 0`; the zero set is a prefix by the
/// divisibility chain, and `D_{γ,r} = 1` beyond the matrix size.
pub fn vanishing_order(
    pres: &WirtingerPresentation,
    rep: &Representation,
    x: &Scalar,
) -> Result<usize, DilationError> {
    let m = twisted_matrix(pres, rep);
    if m.cols() == 0 {
        return Ok(0);
    }
    let polys = elementary_polynomials(&m, m.cols(), false)?;
    let mut max_r = 0;
    for (idx, d) in polys.iter().enumerate() {
        if d.evaluate(x)?.is_zero() {
            max_r = idx + 1;
        }
    }
    Ok(max_r)
}

/// `β` with `s2 = β⁻¹·s1`, so conjugating the first representation by
/// `z ↦ βz` gives the second.
pub fn conjugacy_witness(s1: &[Scalar], s2: &[Scalar]) -> Result<Scalar, DilationError> {
    if s1.len() != s2.len() {
        return Err(DilationError::DimensionMismatch(format!(
            "vectors of length {} and {}",
            s1.len(),
            s2.len()
        )));
    }
    let p1 = s1.iter().position(|x| !x.is_zero());
    let p2 = s2.iter().position(|x| !x.is_zero());
    let (Some(p), Some(q)) = (p1, p2) else {
        return Err(DilationError::ZeroRepresentation);
    };
    if p != q {
        return Err(DilationError::NotProportional);
    }
    let beta = s1[p].try_div(&s2[p])?;
    let beta_inv = beta.inv()?;
    for (a, b) in s1.iter().zip(s2) {
        if &beta_inv.try_mul(a)? != b {
            return Err(DilationError::NotProportional);
        }
    }
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::builtin;
    use crate::parse::{parse_minpoly, parse_scalar};
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rational()
    }

    fn r(v: i64) -> Scalar {
        q().from_int(v)
    }

    fn dil(a: i64, b: &[i64]) -> Dilation {
        Dilation::new(r(a), b.iter().map(|&x| r(x)).collect()).unwrap()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(dil(2, &[1]).compose(&dil(3, &[5])).unwrap(), dil(6, &[11]));
        let d = dil(-3, &[2, 7]);
        assert_eq!(d.compose(&d.inverse()).unwrap(), Dilation::identity(2, &q()));
        assert!(matches!(
            dil(1, &[1]).compose(&dil(1, &[1, 2])),
            Err(DilationError::DimensionMismatch(_))
        ));
        assert_eq!(Dilation::new(r(0), vec![]), Err(DilationError::ZeroAlpha));
        assert_eq!(d.apply(&[r(1), r(0)]).unwrap(), vec![r(-1), r(7)]);
    }

    #[test]
    fn action_examples() {
        let d = dil(5, &[1, -2]);
        let id = ScalarMatrix::identity(2, &q());
        assert_eq!(d.act(&id).unwrap(), d);
        assert_eq!(d.act(&id.scale(&r(2))).unwrap(), dil(5, &[2, -4]));
    }

    fn small() -> impl Strategy<Value = i64> {
        -4i64..=4
    }

    fn arb_dilation() -> impl Strategy<Value = Dilation> {
        (small().prop_filter("nonzero", |a| *a != 0), small(), small())
            .prop_map(|(a, b0, b1)| dil(a, &[b0, b1]))
    }

    fn arb_matrix() -> impl Strategy<Value = ScalarMatrix> {
        proptest::collection::vec(small(), 4).prop_map(|v| ScalarMatrix::from_ints(2, 2, &q(), &v))
    }

    proptest! {
        #[test]
        fn group_and_operator_axioms(
            d1 in arb_dilation(), d2 in arb_dilation(), d3 in arb_dilation(),
            a in arb_matrix(), b in arb_matrix(),
        ) {
            let left = d1.compose(&d2).unwrap().compose(&d3).unwrap();
            let right = d1.compose(&d2.compose(&d3).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(d1.inverse().compose(&d1).unwrap(), Dilation::identity(2, &q()));
            let c = d1.conjugate(&d2).unwrap();
            prop_assert_eq!(c.ratio(), d1.ratio());
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(d1.act(&ab).unwrap(), d1.act(&b).unwrap().act(&a).unwrap());
            prop_assert_eq!(
                d1.compose(&d2).unwrap().act(&a).unwrap(),
                d1.act(&a).unwrap().compose(&d2.act(&a).unwrap()).unwrap()
            );
        }
    }

    fn theta_field(minpoly: &str) -> Field {
        Field::extension(&parse_minpoly(minpoly).unwrap()).unwrap()
    }

    #[test]
    fn trefoil_spaces() {
        let p = builtin("trefoil").unwrap();
        let rep = Representation::trivial(&p);
        let e = theta_field("x^2 - x + 1");
        let alpha = e.generator().inv().unwrap();
        let space = solve_based_reps(&p, &rep, &alpha).unwrap();
        assert_eq!(space.dimension(), 1);
        let check = verify_theorem(&p, &rep, &alpha).unwrap();
        assert_eq!(check, TheoremCheck { nullity: 1, max_r: 1, agree: true });
        assert_eq!(solve_based_reps(&p, &rep, &r(2)).unwrap().dimension(), 0);
        let check = verify_theorem(&p, &rep, &r(1)).unwrap();
        assert_eq!(check, TheoremCheck { nullity: 0, max_r: 0, agree: true });
        assert_eq!(
            solve_based_reps(&p, &rep, &r(0)).unwrap_err(),
            DilationError::ZeroAlpha
        );
    }

    #[test]
    fn figure8_space() {
        let p = builtin("figure8").unwrap();
        let rep = Representation::trivial(&p);
        let e = theta_field("x^2 - 3x + 1");
        let alpha = e.generator().inv().unwrap();
        let check = verify_theorem(&p, &rep, &alpha).unwrap();
        assert_eq!(check, TheoremCheck { nullity: 1, max_r: 1, agree: true });
    }

    #[test]
    fn unknot_space_is_zero() {
        let p = builtin("unknot").unwrap();
        let rep = Representation::trivial(&p);
        for a in [1, 2, -7] {
            let check = verify_theorem(&p, &rep, &r(a)).unwrap();
            assert_eq!(check, TheoremCheck { nullity: 0, max_r: 0, agree: true });
        }
    }

    #[test]
    fn incompatible_fields_rejected() {
        let p = builtin("trefoil").unwrap();
        let rep = Representation::scalar(&p, &Field::gaussian().generator()).unwrap();
        let alpha = theta_field("x^2 - x + 1").generator();
        assert!(matches!(
            solve_based_reps(&p, &rep, &alpha),
            Err(DilationError::ContextMismatch(_))
        ));
    }

    #[test]
    fn witness_examples() {
        let v = vec![r(2), r(-4), r(0)];
        assert_eq!(conjugacy_witness(&v, &v).unwrap(), r(1));
        let half: Vec<Scalar> = v.iter().map(|x| x / &r(2)).collect();
        assert_eq!(conjugacy_witness(&v, &half).unwrap(), r(2));
        assert_eq!(
            conjugacy_witness(&v, &[r(2), r(4), r(0)]).unwrap_err(),
            DilationError::NotProportional
        );
        assert_eq!(
            conjugacy_witness(&[r(0)], &[r(1)]).unwrap_err(),
            DilationError::ZeroRepresentation
        );
    }

    #[test]
    fn witness_conjugates_representations() {
        let p = builtin("trefoil").unwrap();
        let rep = Representation::trivial(&p);
        let e = theta_field("x^2 - x + 1");
        let space = solve_based_reps(&p, &rep, &e.generator().inv().unwrap()).unwrap();
        let s1 = space.combine(&[parse_scalar("2θ - 3", &e).unwrap()]).unwrap();
        let s2 = space.combine(&[parse_scalar("5/2", &e).unwrap()]).unwrap();
        let beta = space.witness(&s1, &s2).unwrap();
        let conj: Vec<Dilation> = space
            .dilations(&s1)
            .iter()
            .map(|d| d.conjugate_by_scaling(&beta).unwrap())
            .collect();
        assert_eq!(conj, space.dilations(&s2));
    }
}
