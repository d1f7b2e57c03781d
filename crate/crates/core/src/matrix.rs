//! Dense matrices over the Laurent ring and over exact fields.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::parse::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor order {k} exceeds the matrix size {rows}x{cols}")]
    KTooLarge { k: usize, rows: usize, cols: usize },
    #[error("minor enumeration is limited to matrices of size at most {limit}")]
    TooLargeForMinors { limit: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Ring operations needed by the generic matrix routines.
pub trait RingElem: Clone + PartialEq + fmt::Display {
    fn zero_in(field: &Field) -> Self;
    fn one_in(field: &Field) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl RingElem for Scalar {
    fn zero_in(field: &Field) -> Self {
        field.zero()
    }
    fn one_in(field: &Field) -> Self {
        field.one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.try_div(d).ok()
    }
}

impl RingElem for LaurentPoly {
    fn zero_in(field: &Field) -> Self {
        LaurentPoly::zero(field)
    }
    fn one_in(field: &Field) -> Self {
        LaurentPoly::one(field)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, d)
    }
}

/// Row-major dense matrix whose entries share one field context.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<LaurentPoly>;
pub type ScalarMatrix = Matrix<Scalar>;

impl<T: RingElem> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, field: &Field) -> Self {
        Matrix {
            rows,
            cols,
            field: field.clone(),
            data: vec![T::zero_in(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: &Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, T::one_in(field));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElem::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, &self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = self
            .field
            .join(&other.field)
            .map_err(LaurentError::from)?;
        let mut out = Self::zeros(self.rows, other.cols, &field);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero_in(&field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, T::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, T::sub)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = self
            .field
            .join(&other.field)
            .map_err(LaurentError::from)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field,
            data,
        })
    }

    pub fn map<U: RingElem>(&self, field: &Field, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: field.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len(), &self.field);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<T, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_det(self.to_rows(), &self.field))
    }
}

fn bareiss_det<T: RingElem>(mut a: Vec<Vec<T>>, field: &Field) -> T {
    let n = a.len();
    if n == 0 {
        return T::one_in(field);
    }
    let mut negate = false;
    let mut prev = T::one_in(field);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero_in(field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = T::zero_in(field);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Largest matrix dimension accepted by [`PolyMatrix::gcd_of_minors`].
pub const MINORS_LIMIT: usize = 8;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl PolyMatrix {
    pub fn from_entries(
        rows: usize,
        cols: usize,
        field: &Field,
        data: Vec<LaurentPoly>,
    ) -> Result<PolyMatrix, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data
            .iter()
            .map(|p| p.embed(field))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows,
            cols,
            field: field.clone(),
            data,
        })
    }

    pub fn evaluate(&self, alpha: &Scalar) -> Result<ScalarMatrix, MatrixError> {
        let field = self
            .field
            .join(alpha.field())
            .map_err(LaurentError::from)?;
        let data = self
            .data
            .iter()
            .map(|p| p.evaluate(alpha))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field,
            data,
        })
    }

    /// Invariant factors `d_1 | d_2 | … | d_m`, `m = min(rows, cols)`, each
    /// normalized (or zero).
    pub fn smith_normal_form(&self) -> Vec<LaurentPoly> {
        smith_invariant_factors(self)
    }

    /// Normalized gcd of all k×k minors, by explicit enumeration.
    pub fn gcd_of_minors(&self, k: usize) -> Result<LaurentPoly, MatrixError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(MatrixError::KTooLarge {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows.max(self.cols) > MINORS_LIMIT {
            return Err(MatrixError::TooLargeForMinors {
                limit: MINORS_LIMIT,
            });
        }
        let mut acc = LaurentPoly::zero(&self.field);
        for rs in combinations(self.rows, k) {
            for cs in combinations(self.cols, k) {
                let minor = self.select(&rs, &cs).determinant()?;
                if minor.is_zero() {
                    continue;
                }
                acc = if acc.is_zero() {
                    minor.normalized()
                } else {
                    acc.gcd(&minor)?
                };
                if acc.is_one() {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }

    /// Text form: `rows cols` then the entries row-major, one row per line.
    pub fn render(&self) -> String {
        render_matrix(self, LaurentPoly::to_compact_string)
    }

    pub fn parse(text: &str, field: &Field) -> Result<PolyMatrix, MatrixError> {
        let (rows, cols, toks) = parse_matrix_tokens(text)?;
        let data = toks
            .iter()
            .map(|(line, tok)| {
                parse::parse_poly(tok, field).map_err(|e| syntax(*line, e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::from_entries(rows, cols, field, data)
    }
}

fn syntax(line: usize, e: ParseError) -> MatrixError {
    MatrixError::Syntax {
        line,
        msg: e.to_string(),
    }
}

fn render_matrix<T>(m: &Matrix<T>, show: impl Fn(&T) -> String) -> String {
    let mut out = format!("{} {}\n", m.rows, m.cols);
    for i in 0..m.rows {
        let row: Vec<String> = (0..m.cols).map(|j| show(&m.data[i * m.cols + j])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

type MatrixTokens = (usize, usize, Vec<(usize, String)>);

fn parse_matrix_tokens(text: &str) -> Result<MatrixTokens, MatrixError> {
    let mut toks = Vec::new();
    for (n, line) in text.lines().enumerate() {
        for t in line.split_whitespace() {
            toks.push((n + 1, t.to_string()));
        }
    }
    let dim = |k: usize| -> Result<usize, MatrixError> {
        let (line, tok) = toks.get(k).ok_or(MatrixError::Syntax {
            line: 1,
            msg: "missing `rows cols` header".into(),
        })?;
        tok.parse().map_err(|_| MatrixError::Syntax {
            line: *line,
            msg: format!("bad dimension '{tok}'"),
        })
    };
    let (rows, cols) = (dim(0)?, dim(1)?);
    let entries = toks.split_off(2);
    if entries.len() != rows * cols {
        let line = entries.last().map_or(1, |(l, _)| *l);
        return Err(MatrixError::Syntax {
            line,
            msg: format!("expected {} entries, found {}", rows * cols, entries.len()),
        });
    }
    Ok((rows, cols, entries))
}

impl ScalarMatrix {
    pub fn from_entries(
        rows: usize,
        cols: usize,
        field: &Field,
        data: Vec<Scalar>,
    ) -> Result<ScalarMatrix, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data
            .iter()
            .map(|s| s.embed(field))
            .collect::<Result<_, _>>()
            .map_err(LaurentError::from)?;
        Ok(Matrix {
            rows,
            cols,
            field: field.clone(),
            data,
        })
    }

    pub fn from_ints(rows: usize, cols: usize, field: &Field, v: &[i64]) -> ScalarMatrix {
        let data = v.iter().map(|&x| field.from_int(x)).collect();
        ScalarMatrix::from_entries(rows, cols, field, data).expect("entry count")
    }

    pub fn scale(&self, c: &Scalar) -> ScalarMatrix {
        let field = self.field.join(c.field()).expect("compatible scalar");
        self.map(&field, |x| x * c)
    }

    /// The polynomial matrix `t·self`.
    pub fn times_t(&self) -> PolyMatrix {
        self.map(&self.field, |x| LaurentPoly::monomial(x.clone(), 1))
    }

    pub fn to_poly(&self) -> PolyMatrix {
        self.map(&self.field, |x| LaurentPoly::constant(x.clone()))
    }

    pub fn embed(&self, field: &Field) -> Result<ScalarMatrix, MatrixError> {
        ScalarMatrix::from_entries(self.rows, self.cols, field, self.data.clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("nonzero pivot");
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..self.rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..self.cols {
                    let v = &a[i][j] - &(&f * &a[r][j]);
                    a[i][j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = a.into_iter().flatten().collect();
        let m = Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data,
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self·v = 0}`, one vector per
    /// free column of the reduced echelon form.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn inverse(&self) -> Option<ScalarMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = ScalarMatrix::zeros(n, 2 * n, &self.field);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Some(r.select(&idx, &right))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn render(&self) -> String {
        render_matrix(self, Scalar::to_string)
    }

    pub fn parse(text: &str, field: &Field) -> Result<ScalarMatrix, MatrixError> {
        let (rows, cols, toks) = parse_matrix_tokens(text)?;
        let data = toks
            .iter()
            .map(|(line, tok)| parse::parse_scalar(tok, field).map_err(|e| syntax(*line, e)))
            .collect::<Result<Vec<_>, _>>()?;
        ScalarMatrix::from_entries(rows, cols, field, data)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Euclidean reduction over Λ, pivoting on the nonzero entry of least span
/// (ties broken by row-major position).
fn smith_invariant_factors(m: &PolyMatrix) -> Vec<LaurentPoly> {
    let field = m.field.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_rows();
    // clear negative exponents row by row
    for row in a.iter_mut() {
        if let Some(low) = row.iter().filter_map(LaurentPoly::low_exp).min() {
            for x in row.iter_mut() {
                *x = x.shift(-low);
            }
        }
    }
    let n = rows.min(cols);
    let mut factors = Vec::with_capacity(n);
    for k in 0..n {
        let mut pivot_found = false;
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, x) in row.iter().enumerate().skip(k) {
                    if let Some(s) = x.span() {
                        if best.is_none_or(|(bs, _, _)| s < bs) {
                            best = Some((s, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            pivot_found = true;
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut dirty = false;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].div_rem(&a[k][k]);
                for j in k..cols {
                    let v = &a[i][j] - &(&q * &a[k][j]);
                    a[i][j] = v;
                }
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&a[k][k]);
                for row in a.iter_mut().skip(k) {
                    let v = &row[j] - &(&q * &row[k]);
                    row[j] = v;
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !a[k][k].divides(&a[i][j]))
            });
            match bad {
                Some(i) => {
                    for j in k..cols {
                        let v = &a[k][j] + &a[i][j];
                        a[k][j] = v;
                    }
                }
                None => break,
            }
        }
        if !pivot_found {
            factors.resize(n, LaurentPoly::zero(&field));
            break;
        }
        factors.push(a[k][k].normalized());
    }
    factors
}
