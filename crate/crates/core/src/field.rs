//! Exact scalar fields: Q, the Gaussian rationals Q(i), and simple
//! extensions Q(θ) = Q[x]/(p) for a user-supplied minimal polynomial p.
//!
//! Irreducibility of `p` is never checked up front. A reducible `p` shows
//! up as [`FieldError::ZeroDivisorDetected`] the first time an inversion
//! runs into a proper factor.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::qpoly::{self, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have degree at least 1")]
    ConstantMinpoly,
    #[error("minimal polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("minimal polynomial {poly} has the rational root {root}")]
    HasRationalRoot { poly: String, root: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("minimal polynomial {minpoly} is reducible: it shares the factor {factor}")]
    ZeroDivisorDetected { minpoly: String, factor: String },
    #[error("incompatible fields {left} and {right}")]
    ContextMismatch { left: String, right: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Gaussian,
    Extension,
}

#[derive(Debug)]
struct FieldInner {
    kind: FieldKind,
    /// Monic, ascending coefficients. `x` for Q.
    minpoly: QPoly,
}

/// A field context. Cheap to clone; equality is equality of minimal
/// polynomials.
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.minpoly.hash(state);
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Field {
    pub fn rational() -> Field {
        Field(Arc::new(FieldInner {
            kind: FieldKind::Rational,
            minpoly: vec![BigRational::zero(), BigRational::one()],
        }))
    }

    pub fn gaussian() -> Field {
        Field(Arc::new(FieldInner {
            kind: FieldKind::Gaussian,
            minpoly: vec![int(1), int(0), int(1)],
        }))
    }

    /// Builds Q[x]/(p) from the ascending coefficients of `p`.
    ///
    /// Degree one gives back Q, `x^2 + 1` gives the Gaussian context.
    pub fn extension(minpoly: &[BigRational]) -> Result<Field, FieldError> {
        let p = qpoly::trimmed(minpoly.to_vec());
        let deg = match qpoly::degree(&p) {
            None | Some(0) => return Err(FieldError::ConstantMinpoly),
            Some(d) => d,
        };
        if !p[deg].is_one() {
            return Err(FieldError::NotMonic);
        }
        if deg == 1 {
            return Ok(Field::rational());
        }
        if p == [int(1), int(0), int(1)] {
            return Ok(Field::gaussian());
        }
        let shown = qpoly::render(&p, "x");
        if qpoly::degree(&qpoly::gcd(&p, &qpoly::derivative(&p))) != Some(0) {
            return Err(FieldError::NotSquarefree(shown));
        }
        if let Some(root) = qpoly::rational_roots(&p).first() {
            return Err(FieldError::HasRationalRoot {
                poly: shown,
                root: root.to_string(),
            });
        }
        Ok(Field(Arc::new(FieldInner {
            kind: FieldKind::Extension,
            minpoly: p,
        })))
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn is_rational(&self) -> bool {
        self.0.kind == FieldKind::Rational
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    /// Ascending coefficients of the (monic) defining polynomial.
    pub fn minpoly(&self) -> &[BigRational] {
        &self.0.minpoly
    }

    /// The smallest of the two contexts containing both, if one embeds in
    /// the other.
    pub fn join(&self, other: &Field) -> Result<Field, FieldError> {
        if self == other || other.is_rational() {
            Ok(self.clone())
        } else if self.is_rational() {
            Ok(other.clone())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.from_rational(int(v))
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q;
        Scalar {
            field: self.clone(),
            coeffs,
        }
    }

    /// The class of `x`: `i` in the Gaussian context, `θ` in an
    /// extension, and `0` in Q (the root of `x`).
    pub fn generator(&self) -> Scalar {
        if self.is_rational() {
            return self.zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[1] = BigRational::one();
        Scalar {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element with the given coefficients in the power basis of the
    /// generator (reduced modulo the minimal polynomial).
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> Scalar {
        Scalar {
            field: self.clone(),
            coeffs: self.reduce(coeffs),
        }
    }

    fn reduce(&self, mut coeffs: QPoly) -> Vec<BigRational> {
        let d = self.degree();
        if coeffs.len() > d {
            coeffs = qpoly::rem(&coeffs, &self.0.minpoly);
        }
        coeffs.resize(d, BigRational::zero());
        coeffs
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Gaussian => write!(f, "Q(i)"),
            FieldKind::Extension => {
                write!(f, "Q[θ]/({})", qpoly::render(&self.0.minpoly, "θ"))
            }
        }
    }
}

/// An element of a [`Field`], stored as coefficients in the power basis
/// `1, θ, …, θ^(d-1)`.
#[derive(Debug, Clone)]
pub struct Scalar {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.field == other.field {
            return self.coeffs == other.coeffs;
        }
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let mut c = self.coeffs.clone();
        qpoly::trim(&mut c);
        c.hash(state);
    }
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn embed(&self, target: &Field) -> Result<Scalar, FieldError> {
        if &self.field == target {
            return Ok(self.clone());
        }
        match self.to_rational() {
            Some(q) if self.field.is_rational() || target.is_rational() => {
                Ok(target.from_rational(q))
            }
            _ => Err(FieldError::ContextMismatch {
                left: self.field.to_string(),
                right: target.to_string(),
            }),
        }
    }

    fn lift(a: &Scalar, b: &Scalar) -> Result<(Field, Scalar, Scalar), FieldError> {
        let f = a.field.join(&b.field)?;
        Ok((f.clone(), a.embed(&f)?, b.embed(&f)?))
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        let (field, a, b) = Scalar::lift(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Scalar { field, coeffs })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        let (field, a, b) = Scalar::lift(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(Scalar { field, coeffs })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        let (field, a, b) = Scalar::lift(self, other)?;
        if field.degree() == 1 {
            let coeffs = vec![&a.coeffs[0] * &b.coeffs[0]];
            return Ok(Scalar { field, coeffs });
        }
        let prod = qpoly::mul(&a.coeffs, &b.coeffs);
        let coeffs = field.reduce(prod);
        Ok(Scalar { field, coeffs })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        let m = self.field.minpoly();
        let (g, s) = qpoly::inverse_cofactor(&qpoly::trimmed(self.coeffs.clone()), m);
        if g.len() > 1 {
            return Err(FieldError::ZeroDivisorDetected {
                minpoly: qpoly::render(m, "x"),
                factor: qpoly::render(&g, "x"),
            });
        }
        Ok(self.field.from_coeffs(s))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        Ok(acc)
    }

    /// True when the printed form has a single term, so a leading minus
    /// sign can be pulled out when it appears inside a larger expression.
    pub(crate) fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

fn coeff_body(c: &BigRational) -> String {
    if c.abs().is_one() {
        String::new()
    } else {
        c.abs().to_string()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field.kind() {
            FieldKind::Rational => write!(f, "{}", self.coeffs[0]),
            FieldKind::Gaussian => {
                let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
                if b.is_zero() {
                    return write!(f, "{a}");
                }
                let sign = if b.is_negative() { "-" } else { "+" };
                if a.is_zero() {
                    let lead = if b.is_negative() { "-" } else { "" };
                    write!(f, "{lead}{}i", coeff_body(b))
                } else {
                    write!(f, "{a}{sign}{}i", coeff_body(b))
                }
            }
            FieldKind::Extension => {
                let mut out = String::new();
                for (k, c) in self.coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if c.is_negative() {
                        out.push('-');
                    } else if !out.is_empty() {
                        out.push('+');
                    }
                    if k == 0 {
                        out.push_str(&c.abs().to_string());
                    } else {
                        out.push_str(&format!("{}θ^{k}", coeff_body(c)));
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                f.write_str(&out)
            }
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$op(rhs).expect("scalar arithmetic")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$op(&rhs).expect("scalar arithmetic")
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$op(rhs).expect("scalar arithmetic")
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);
scalar_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn eisenstein() -> Field {
        // x^2 - x + 1
        Field::extension(&[int(1), int(-1), int(1)]).unwrap()
    }

    #[test]
    fn make_extension_examples() {
        let f = eisenstein();
        assert_eq!(f.kind(), FieldKind::Extension);
        assert_eq!(f.degree(), 2);
        assert_eq!(
            Field::extension(&[int(1), int(0), int(1)]).unwrap().kind(),
            FieldKind::Gaussian
        );
        assert!(matches!(
            Field::extension(&[int(-1), int(0), int(1)]),
            Err(FieldError::HasRationalRoot { .. })
        ));
        assert_eq!(
            Field::extension(&[int(1), int(2)]).unwrap_err(),
            FieldError::NotMonic
        );
        assert!(Field::extension(&[int(3), int(1)]).unwrap().is_rational());
        // (x^2 + 1)^2
        assert!(matches!(
            Field::extension(&[int(1), int(0), int(2), int(0), int(1)]),
            Err(FieldError::NotSquarefree(_))
        ));
    }

    #[test]
    fn invert_examples() {
        let r = Field::rational();
        assert_eq!(r.from_int(2).inv().unwrap(), r.from_rational(q(1, 2)));
        let g = Field::gaussian();
        let i = g.generator();
        assert_eq!(i.inv().unwrap(), -&i);
        let f = eisenstein();
        let th = f.generator();
        assert_eq!(th.inv().unwrap(), &f.one() - &th);
        assert_eq!(r.zero().inv().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn reducible_minpoly_detected_on_inversion() {
        // (x^2 + 1)(x^2 + 2) has no rational roots and is squarefree.
        let f = Field::extension(&[int(2), int(0), int(3), int(0), int(1)]).unwrap();
        let th = f.generator();
        let z = &(&th * &th) + &f.one();
        match z.inv() {
            Err(FieldError::ZeroDivisorDetected { factor, .. }) => assert_eq!(factor, "x^2 + 1"),
            other => panic!("expected zero divisor, got {other:?}"),
        }
    }

    #[test]
    fn arith_examples() {
        let g = Field::gaussian();
        let i = g.generator();
        let a = &g.one() + &i;
        let b = &g.one() - &i;
        assert_eq!(&a * &b, g.from_int(2));
        let f = eisenstein();
        let th = f.generator();
        assert_eq!(&th * &th, &th - &f.one());
        let r = Field::rational();
        assert_eq!(
            &r.from_rational(q(1, 3)) + &r.from_rational(q(1, 6)),
            r.from_rational(q(1, 2))
        );
        assert!(matches!(
            th.try_add(&i),
            Err(FieldError::ContextMismatch { .. })
        ));
        // rationals embed
        assert_eq!(&i + &r.from_int(1), a);
    }

    #[test]
    fn display_forms() {
        let g = Field::gaussian();
        let i = g.generator();
        assert_eq!((&g.one() - &(&i * &g.from_int(2))).to_string(), "1-2i");
        assert_eq!(i.to_string(), "i");
        assert_eq!((-&i).to_string(), "-i");
        assert_eq!(Field::rational().from_rational(q(3, 2)).to_string(), "3/2");
        let f = eisenstein();
        let th = f.generator();
        assert_eq!((&(&th * &f.from_int(2)) - &f.one()).to_string(), "2θ^1-1");
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.to_string(), "Q[θ]/(θ^2 - θ + 1)");
    }

    fn contexts() -> Vec<Field> {
        vec![
            Field::rational(),
            Field::gaussian(),
            eisenstein(),
            // x^3 - 2
            Field::extension(&[int(-2), int(0), int(0), int(1)]).unwrap(),
        ]
    }

    fn arb_scalar(field: Field) -> impl Strategy<Value = Scalar> {
        let d = field.degree();
        proptest::collection::vec((-20i64..20, 1i64..6), d).prop_map(move |v| {
            field.from_coeffs(v.into_iter().map(|(n, den)| q(n, den)).collect())
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        (0usize..4).prop_flat_map(|k| {
            let f = contexts()[k].clone();
            (arb_scalar(f.clone()), arb_scalar(f.clone()), arb_scalar(f))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                let inv = a.inv().unwrap();
                prop_assert!((&a * &inv).is_one());
                prop_assert_eq!(inv.inv().unwrap(), a.clone());
            }
        }

        #[test]
        fn rational_embedding_commutes(x in (-50i64..50, 1i64..9), y in (-50i64..50, 1i64..9), k in 0usize..4) {
            let f = &contexts()[k];
            let r = Field::rational();
            let (a, b) = (r.from_rational(q(x.0, x.1)), r.from_rational(q(y.0, y.1)));
            let (ea, eb) = (a.embed(f).unwrap(), b.embed(f).unwrap());
            prop_assert_eq!((&a * &b).embed(f).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).embed(f).unwrap(), &ea + &eb);
            prop_assert_eq!((&a - &b).embed(f).unwrap(), &ea - &eb);
        }
    }
}
