//! Dense univariate polynomials over Q, stored as ascending coefficient
//! vectors with no trailing zeros. Only what the field layer needs:
//! reduction modulo a minimal polynomial, extended Euclid and the
//! squarefree / rational-root sanity checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn trimmed(mut p: QPoly) -> QPoly {
    trim(&mut p);
    p
}

/// Degree of a nonzero polynomial; `None` for zero.
pub(crate) fn degree(p: &[BigRational]) -> Option<usize> {
    p.len().checked_sub(1)
}

#[cfg(test)]
pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    trimmed(out)
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trimmed(out)
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

pub(crate) fn scale(a: &[BigRational], c: &BigRational) -> QPoly {
    trimmed(a.iter().map(|x| x * c).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = BigRational::one() / &b[db];
    let mut rem: QPoly = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (trimmed(quot), rem)
}

pub(crate) fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    divrem(a, b).1
}

pub(crate) fn monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = BigRational::one() / lead;
            scale(a, &inv)
        }
    }
}

pub(crate) fn derivative(a: &[BigRational]) -> QPoly {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)` monic.
pub(crate) fn inverse_cofactor(a: &[BigRational], m: &[BigRational]) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (trimmed(m.to_vec()), trimmed(a.to_vec()));
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let lead_inv = BigRational::one() / r0.last().expect("gcd of nonzero inputs");
    (scale(&r0, &lead_inv), scale(&s0, &lead_inv))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All distinct rational roots, in increasing order.
pub(crate) fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let mut p = trimmed(p.to_vec());
    let mut roots = Vec::new();
    if p.is_empty() {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(BigRational::zero());
        let first = p.iter().position(|c| !c.is_zero()).unwrap();
        p.drain(..first);
    }
    if p.len() < 2 {
        return roots;
    }
    // clear denominators
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.last().unwrap();
    for num in divisors(&ints[0]) {
        for den in divisors(lead) {
            for sign in [-1, 1] {
                let cand = BigRational::new(&num * BigInt::from(sign), den.clone());
                if eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Plain rendering in descending powers of `var`.
pub(crate) fn render(p: &[BigRational], var: &str) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = if abs.is_one() && e > 0 {
            String::new()
        } else if e > 0 {
            format!("{abs}*")
        } else {
            abs.to_string()
        };
        out.push_str(&body);
        match e {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{var}^{e}")),
        }
    }
    out
}
