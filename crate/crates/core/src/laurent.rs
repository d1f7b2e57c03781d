//! Laurent polynomials in one variable `t` over an exact [`Field`].
//!
//! Λ = F[t, t⁻¹] is a Euclidean domain once units `c·t^m` are treated as
//! free: the Euclidean size of `p` is its span (highest minus lowest
//! exponent). [`LaurentPoly::div_rem`] divides with respect to that size.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("the zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("cannot evaluate a polynomial with negative exponents at 0")]
    ZeroBase,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("polynomial {0} does not have rational coefficients")]
    NonRationalCoefficients(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `Σ coeffs[k]·t^(low + k)`. Nonzero polynomials have nonzero first and
/// last coefficients; zero is the empty vector.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    field: Field,
    low: i64,
    coeffs: Vec<Scalar>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.low == other.low && self.coeffs == other.coeffs
    }
}

impl Eq for LaurentPoly {}

impl std::hash::Hash for LaurentPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.low.hash(state);
        self.coeffs.hash(state);
    }
}

impl LaurentPoly {
    fn from_parts(field: Field, low: i64, mut coeffs: Vec<Scalar>) -> LaurentPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        let low = if coeffs.is_empty() { 0 } else { low + lead as i64 };
        LaurentPoly { field, low, coeffs }
    }

    pub fn zero(field: &Field) -> LaurentPoly {
        LaurentPoly {
            field: field.clone(),
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> LaurentPoly {
        LaurentPoly::constant(field.one())
    }

    /// The indeterminate `t`.
    pub fn t(field: &Field) -> LaurentPoly {
        LaurentPoly::monomial(field.one(), 1)
    }

    pub fn constant(c: Scalar) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, exp: i64) -> LaurentPoly {
        let field = c.field().clone();
        LaurentPoly::from_parts(field, exp, vec![c])
    }

    /// Sum of `c·t^e` over the given terms; coefficients are embedded in
    /// `field` and repeated exponents accumulate.
    pub fn from_terms<I>(field: &Field, terms: I) -> Result<LaurentPoly, LaurentError>
    where
        I: IntoIterator<Item = (i64, Scalar)>,
    {
        let mut acc = LaurentPoly::zero(field);
        for (e, c) in terms {
            acc = acc.try_add(&LaurentPoly::monomial(c.embed(field)?, e))?;
        }
        Ok(acc)
    }

    /// Polynomial with ascending integer coefficients starting at `t^low`.
    pub fn from_ints(field: &Field, low: i64, coeffs: &[i64]) -> LaurentPoly {
        let coeffs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        LaurentPoly::from_parts(field.clone(), low, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Highest minus lowest exponent; `None` for zero.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    /// Polynomial degree of an honest polynomial, i.e. the highest exponent.
    pub fn degree(&self) -> Option<i64> {
        self.high_exp()
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            self.field.zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match (self.low, self.coeffs.len()) {
            (_, 0) => Some(self.field.zero()),
            (0, 1) => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// True for `c·t^m` with `c ≠ 0`, the units of Λ.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn has_rational_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.to_rational().is_some())
    }

    pub fn embed(&self, field: &Field) -> Result<LaurentPoly, LaurentError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(field))
            .collect::<Result<_, _>>()?;
        Ok(LaurentPoly {
            field: field.clone(),
            low: self.low,
            coeffs,
        })
    }

    /// Re-expresses a polynomial whose coefficients are all rational over Q.
    pub fn to_rational_field(&self) -> Result<LaurentPoly, LaurentError> {
        if !self.has_rational_coeffs() {
            return Err(LaurentError::NonRationalCoefficients(self.to_string()));
        }
        let q = Field::rational();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| q.from_rational(c.to_rational().unwrap()))
            .collect();
        Ok(LaurentPoly {
            field: q,
            low: self.low,
            coeffs,
        })
    }

    fn lift(&self, other: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly), LaurentError> {
        let f = self.field.join(&other.field)?;
        Ok((self.embed(&f)?, other.embed(&f)?))
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        let (a, b) = self.lift(other)?;
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        let low = a.low.min(b.low);
        let high = a.high_exp().unwrap().max(b.high_exp().unwrap());
        let coeffs = (low..=high).map(|e| &a.coeff(e) + &b.coeff(e)).collect();
        Ok(LaurentPoly::from_parts(a.field, low, coeffs))
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        let (a, b) = self.lift(other)?;
        if a.is_zero() || b.is_zero() {
            return Ok(LaurentPoly::zero(&a.field));
        }
        let mut coeffs = vec![a.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
        Ok(LaurentPoly::from_parts(a.field, a.low + b.low, coeffs))
    }

    pub fn scale(&self, c: &Scalar) -> Result<LaurentPoly, LaurentError> {
        let field = self.field.join(c.field())?;
        let c = c.embed(&field)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.try_mul(&c))
            .collect::<Result<_, _>>()?;
        Ok(LaurentPoly::from_parts(field, self.low, coeffs))
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            field: self.field.clone(),
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.field);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit `c·t^m`.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        let inv = self.coeffs[0].inv().ok()?;
        Some(LaurentPoly::monomial(inv, -self.low))
    }

    /// `p(c·t)`.
    pub fn substitute_scaled(&self, c: &Scalar) -> Result<LaurentPoly, LaurentError> {
        let field = self.field.join(c.field())?;
        let c = c.embed(&field)?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, x) in self.coeffs.iter().enumerate() {
            let e = self.low + k as i64;
            out.push(x.embed(&field)?.try_mul(&c.pow(e)?)?);
        }
        Ok(LaurentPoly::from_parts(field, self.low, out))
    }

    /// `p(1/t)`.
    pub fn reflect(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            field: self.field.clone(),
            low: -self.high_exp().unwrap(),
            coeffs,
        }
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> LaurentPoly {
        let terms: Vec<Scalar> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = BigInt::from(self.low + k as i64);
                c.scale(&BigRational::from_integer(e))
            })
            .collect();
        LaurentPoly::from_parts(self.field.clone(), self.low - 1, terms)
    }

    /// Euclidean division in Λ: `self = q·d + r` with `span(r) < span(d)`
    /// (or `r = 0`). Panics if `d` is zero.
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (a, d) = self.lift(d).expect("field mismatch in division");
        if a.is_zero() {
            return (a.clone(), a);
        }
        let field = a.field.clone();
        let lead_inv = d.coeffs.last().unwrap().inv().expect("nonzero leading coefficient");
        let dl = d.coeffs.len();
        let mut rem = a.coeffs.clone();
        let mut quot = vec![field.zero(); rem.len().saturating_sub(dl) + 1];
        while rem.len() >= dl {
            let top = rem.len() - dl;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, y) in d.coeffs.iter().enumerate() {
                rem[top + i] = &rem[top + i] - &(&c * y);
            }
            quot[top] = c;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        let q = LaurentPoly::from_parts(field.clone(), a.low - d.low, quot);
        let r = LaurentPoly::from_parts(field, a.low, rem);
        (q, r)
    }

    /// Exact quotient, if `d` divides `self` in Λ.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Canonical associate: returns `(unit, q)` with `q = unit·self`, `unit`
    /// of the form `c·t^m`, and `q` a monic polynomial with `q(0) ≠ 0`.
    pub fn normalize(&self) -> Result<(LaurentPoly, LaurentPoly), LaurentError> {
        let lead = self.coeffs.last().ok_or(LaurentError::ZeroPolynomial)?;
        let c = lead.inv()?;
        let unit = LaurentPoly::monomial(c, -self.low);
        let q = &unit * self;
        Ok((unit, q))
    }

    /// Normal form, with zero mapped to zero.
    pub fn normalized(&self) -> LaurentPoly {
        match self.normalize() {
            Ok((_, q)) => q,
            Err(_) => self.clone(),
        }
    }

    /// Whether `self` and `other` agree up to a unit of Λ.
    pub fn associate(&self, other: &LaurentPoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Normalized gcd; `gcd(p, 0)` is the normal form of `p`.
    pub fn gcd(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if self.is_zero() && other.is_zero() {
            return Err(LaurentError::BothZero);
        }
        let (mut x, mut y) = self.lift(other)?;
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        Ok(x.normalized())
    }

    pub fn evaluate(&self, alpha: &Scalar) -> Result<Scalar, LaurentError> {
        let field = self.field.join(alpha.field())?;
        let alpha = alpha.embed(&field)?;
        if self.is_zero() {
            return Ok(field.zero());
        }
        if alpha.is_zero() && self.low < 0 {
            return Err(LaurentError::ZeroBase);
        }
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &alpha) + &c.embed(&field)?;
        }
        Ok(&acc * &alpha.pow(self.low)?)
    }

    /// `q / gcd(q, q')` for the normal form `q`.
    pub fn squarefree_part(&self) -> Result<LaurentPoly, LaurentError> {
        let (_, q) = self.normalize()?;
        let g = q.gcd(&q.derivative())?;
        Ok(q.div_exact(&g).expect("gcd divides").normalized())
    }

    /// Whether every root of `minpoly` is a root of `self`, i.e. the
    /// monic polynomial `minpoly` divides the normal form of `self`.
    pub fn vanishes_at_algebraic(&self, minpoly: &LaurentPoly) -> bool {
        if self.is_zero() {
            return true;
        }
        let q = self.normalized();
        let m = minpoly.normalized();
        q.div_rem(&m).1.is_zero()
    }

    /// Whether the zero set (ignoring multiplicity) is closed under
    /// `z ↦ 1/z`.
    pub fn inversion_closed(&self) -> Result<bool, LaurentError> {
        let sf = self.squarefree_part()?;
        Ok(sf == sf.reflect().normalized())
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (neg, body, paren) = if c.is_monomial() {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string(), false),
                    None => (false, s, false),
                }
            } else {
                (false, c.to_string(), true)
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = if paren { format!("({body})") } else { body };
            let power = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            match (power.is_empty(), body == "1") {
                (true, _) => f.write_str(&body)?,
                (false, true) => f.write_str(&power)?,
                (false, false) => write!(f, "{body}*{power}")?,
            }
        }
        Ok(())
    }

    /// Rendering with no whitespace, for whitespace-separated file formats.
    pub fn to_compact_string(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "t")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$op(rhs).expect("polynomial arithmetic")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$op(&rhs).expect("polynomial arithmetic")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            field: self.field.clone(),
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// A quotient of Laurent polynomials with common factors removed and the
/// denominator in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: &LaurentPoly, den: &LaurentPoly) -> Result<RationalFunction, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::ZeroDenominator);
        }
        let (num, den) = num.lift(den)?;
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let (unit, den) = den.normalize()?;
        Ok(RationalFunction {
            numerator: &unit * &num,
            denominator: den,
        })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    /// The class up to units of Λ: numerator also in normal form.
    pub fn normalized(&self) -> RationalFunction {
        RationalFunction {
            numerator: self.numerator.normalized(),
            denominator: self.denominator.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(&Field::rational(), low, c)
    }

    fn rat(n: i64, d: i64) -> Scalar {
        Field::rational().from_rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn normalize_examples() {
        let (unit, q) = qp(-1, &[3, -3, 3]).normalize().unwrap();
        assert_eq!(q, qp(0, &[1, -1, 1]));
        assert_eq!(unit, LaurentPoly::monomial(rat(1, 3), 1));

        let (_, q) = qp(5, &[1]).normalize().unwrap();
        assert!(q.is_one());

        // 2t^2 - 2t = -2t(1 - t)
        let (unit, q) = qp(1, &[-2, 2]).normalize().unwrap();
        assert_eq!(q, qp(0, &[-1, 1]));
        assert_eq!(&unit * &qp(1, &[-2, 2]), q);

        assert_eq!(
            LaurentPoly::zero(&Field::rational()).normalize().unwrap_err(),
            LaurentError::ZeroPolynomial
        );
    }

    #[test]
    fn gcd_examples() {
        let g = qp(0, &[-1, 0, 1]).gcd(&qp(0, &[1, -2, 1])).unwrap();
        assert_eq!(g, qp(0, &[-1, 1]));
        assert!(qp(0, &[1, -1, 1]).gcd(&qp(0, &[1])).unwrap().is_one());
        // (t^2 - t + 1)(t - 2) = t^3 - 3t^2 + 3t - 2
        // (t^2 - t + 1)(t + 5) = t^3 + 4t^2 - 4t + 5
        let a = qp(0, &[-2, 3, -3, 1]);
        let b = qp(0, &[5, -4, 4, 1]);
        assert_eq!(a.gcd(&b).unwrap(), qp(0, &[1, -1, 1]));
        let z = LaurentPoly::zero(&Field::rational());
        assert_eq!(a.gcd(&z).unwrap(), a.normalized());
        assert_eq!(z.gcd(&z).unwrap_err(), LaurentError::BothZero);
    }

    #[test]
    fn evaluate_examples() {
        let p = qp(0, &[1, -1, 1]);
        assert!(p.evaluate(&rat(1, 1)).unwrap().is_one());
        let f = Field::extension(&[1i64, -1, 1].map(|v| BigRational::from_integer(v.into())))
            .unwrap();
        assert!(p.evaluate(&f.generator()).unwrap().is_zero());
        assert_eq!(qp(0, &[1, -3, 1]).evaluate(&rat(1, 1)).unwrap(), rat(-1, 1));
        assert_eq!(
            qp(-1, &[1, 1]).evaluate(&rat(0, 1)).unwrap_err(),
            LaurentError::ZeroBase
        );
        assert!(matches!(
            LaurentPoly::constant(Field::gaussian().generator()).evaluate(&f.generator()),
            Err(LaurentError::Field(FieldError::ContextMismatch { .. }))
        ));
    }

    #[test]
    fn vanishing_examples() {
        let m1 = qp(0, &[1, -1, 1]);
        let m2 = qp(0, &[1, 0, 1]);
        assert!(qp(0, &[1, -1, 1]).vanishes_at_algebraic(&m1));
        assert!(!qp(0, &[1, -1, 1]).vanishes_at_algebraic(&m2));
        // (t^2 - t + 1)(t - 3) = t^3 - 4t^2 + 4t - 3
        assert!(qp(0, &[-3, 4, -4, 1]).vanishes_at_algebraic(&m1));
    }

    #[test]
    fn inversion_closed_examples() {
        assert!(qp(0, &[1, -3, 1]).inversion_closed().unwrap());
        assert!(!qp(0, &[-2, 1]).inversion_closed().unwrap());
        // (t-2)^2 (t - 1/2): roots {2, 1/2}
        let p = &qp(0, &[-2, 1]).pow(2) * &LaurentPoly::from_terms(
            &Field::rational(),
            [(1, rat(1, 1)), (0, rat(-1, 2))],
        )
        .unwrap();
        assert!(p.inversion_closed().unwrap());
    }

    #[test]
    fn display_forms() {
        assert_eq!(qp(0, &[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(qp(-1, &[3, 2]).to_string(), "2 + 3*t^-1");
        assert_eq!(qp(0, &[-1]).to_string(), "-1");
        let g = Field::gaussian();
        let p = LaurentPoly::from_terms(
            &g,
            [(2, &g.one() + &g.generator()), (1, -g.generator()), (0, g.from_int(1))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "(1+i)*t^2 - i*t + 1");
        assert_eq!(p.to_compact_string(), "(1+i)*t^2-i*t+1");
    }

    #[test]
    fn rational_function_reduces() {
        let num = qp(0, &[-1, 0, 1]);
        let den = qp(1, &[-2, 2]);
        let w = RationalFunction::new(&num, &den).unwrap();
        assert_eq!(w.denominator(), &LaurentPoly::one(&Field::rational()));
        assert!(w.numerator().associate(&qp(0, &[1, 1])));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, proptest::collection::vec((-6i64..6, 1i64..4), 0..5)).prop_map(|(low, cs)| {
            let f = Field::rational();
            let coeffs = cs
                .into_iter()
                .map(|(n, d)| f.from_rational(BigRational::new(n.into(), d.into())))
                .collect();
            LaurentPoly::from_parts(f, low, coeffs)
        })
    }

    proptest! {
        #[test]
        fn normalize_idempotent(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            let (unit, q) = p.normalize().unwrap();
            prop_assert!(unit.is_unit());
            prop_assert_eq!(q.low_exp(), Some(0));
            prop_assert!(q.leading_coeff().unwrap().is_one());
            prop_assert_eq!(q.normalize().unwrap().1, q.clone());
        }

        #[test]
        fn gcd_divides_and_commutes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b).unwrap();
            prop_assert!(a.div_rem(&g).1.is_zero());
            prop_assert!(b.div_rem(&g).1.is_zero());
            prop_assert_eq!(b.gcd(&a).unwrap(), g.clone());
            if !c.is_zero() {
                let left = g.gcd(&c).unwrap();
                let right = a.gcd(&b.gcd(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_poly(), b in arb_poly(), n in 1i64..7, d in 1i64..7) {
            let x = rat(n, d);
            let lhs = (&a * &b).evaluate(&x).unwrap();
            let rhs = &a.evaluate(&x).unwrap() * &b.evaluate(&x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn div_rem_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            if let Some(s) = r.span() {
                prop_assert!(s < b.span().unwrap());
            }
        }

        #[test]
        fn inversion_closed_reflection_invariant(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            prop_assert_eq!(p.inversion_closed().unwrap(), p.reflect().inversion_closed().unwrap());
        }
    }
}
