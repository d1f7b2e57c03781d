//! Knot group data: Wirtinger presentations, braid closures, the built-in
//! knot table, and linear representations checked against the relations.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::matrix::{MatrixError, ScalarMatrix};
use crate::parse::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: generator index {index} out of range (have {generators})")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        generators: usize,
    },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("braid closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("empty braid word")]
    EmptyWord,
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("representation size mismatch: {0}")]
    SizeMismatch(String),
    #[error("image of x_{index} is singular")]
    SingularMatrix { index: usize },
    #[error("relation {relation} (number {position}) fails under the representation")]
    RelationViolated { relation: Relation, position: usize },
    #[error("cannot determine the images of generators {0:?} from the relations")]
    Underdetermined(Vec<usize>),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The Wirtinger relation `x_i x_j = x_k x_i`: `x_i` is the over-arc and
/// `x_k = x_i x_j x_i⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Relation {
    pub fn new(i: usize, j: usize, k: usize) -> Relation {
        Relation { i, j, k }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.i, self.j, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerPresentation {
    name: Option<String>,
    num_generators: usize,
    relations: Vec<Relation>,
}

impl WirtingerPresentation {
    pub fn new(
        num_generators: usize,
        relations: Vec<Relation>,
        name: Option<String>,
    ) -> Result<WirtingerPresentation, KnotError> {
        if num_generators == 0 {
            return Err(KnotError::NoGenerators);
        }
        for r in &relations {
            for index in [r.i, r.j, r.k] {
                if index >= num_generators {
                    return Err(KnotError::IndexOutOfRange {
                        line: 0,
                        index,
                        generators: num_generators,
                    });
                }
            }
        }
        Ok(WirtingerPresentation {
            name,
            num_generators,
            relations,
        })
    }

    pub fn unknot() -> WirtingerPresentation {
        WirtingerPresentation {
            name: Some("unknot".into()),
            num_generators: 1,
            relations: Vec::new(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Presentation file text; [`parse_presentation`] reads it back.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("knot {name}\n"));
        }
        out.push_str(&format!("generators {}\n", self.num_generators));
        for r in &self.relations {
            out.push_str(&format!("rel {} {} {}\n", r.i, r.j, r.k));
        }
        out
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> KnotError {
    KnotError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Whitespace-separated words of a line with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((idx, byte)),
            (true, Some((col, b))) => {
                out.push((col + 1, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, b)) = start {
        out.push((col + 1, &line[b..]));
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_index(line: usize, (col, w): (usize, &str)) -> Result<usize, KnotError> {
    w.parse()
        .map_err(|_| syntax(line, col, format!("expected a nonnegative integer, found '{w}'")))
}

/// Reads the line-oriented presentation format:
///
/// ```text
/// knot trefoil        # optional
/// generators 3
/// rel 0 1 2           # x_0 x_1 = x_2 x_0
/// ```
///
/// A `braid <strands> <letters…>` line may replace `generators`/`rel`.
pub fn parse_presentation(text: &str) -> Result<WirtingerPresentation, KnotError> {
    let mut name: Option<String> = None;
    let mut generators: Option<usize> = None;
    let mut braid: Option<(usize, BraidWord)> = None;
    let mut rels: Vec<(usize, Relation)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let ws = words(strip_comment(raw));
        let Some(&(col, head)) = ws.first() else {
            continue;
        };
        match head {
            "knot" => {
                if name.is_some() {
                    return Err(syntax(line, col, "duplicate 'knot' line"));
                }
                if ws.len() != 2 {
                    return Err(syntax(line, col, "expected 'knot <name>'"));
                }
                name = Some(ws[1].1.to_string());
            }
            "generators" => {
                if generators.is_some() {
                    return Err(syntax(line, col, "duplicate 'generators' line"));
                }
                if ws.len() != 2 {
                    return Err(syntax(line, col, "expected 'generators <count>'"));
                }
                let g = parse_index(line, ws[1])?;
                if g == 0 {
                    return Err(syntax(line, ws[1].0, "need at least one generator"));
                }
                generators = Some(g);
            }
            "rel" => {
                if ws.len() != 4 {
                    return Err(syntax(line, col, "expected 'rel <i> <j> <k>'"));
                }
                let i = parse_index(line, ws[1])?;
                let j = parse_index(line, ws[2])?;
                let k = parse_index(line, ws[3])?;
                rels.push((line, Relation::new(i, j, k)));
            }
            "braid" => {
                if braid.is_some() {
                    return Err(syntax(line, col, "duplicate 'braid' line"));
                }
                if ws.len() < 2 {
                    return Err(syntax(line, col, "expected 'braid <strands> <letters...>'"));
                }
                let strands = parse_index(line, ws[1])?;
                let letters = ws[2..]
                    .iter()
                    .map(|&(c, w)| {
                        w.parse::<i32>()
                            .map_err(|_| syntax(line, c, format!("bad braid letter '{w}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let word = BraidWord::new(strands, letters)
                    .map_err(|e| syntax(line, col, e.to_string()))?;
                braid = Some((line, word));
            }
            other => return Err(syntax(line, col, format!("unknown keyword '{other}'"))),
        }
    }
    let pres = match (braid, generators) {
        (Some((line, _)), Some(_)) => {
            return Err(syntax(line, 1, "'braid' cannot be combined with 'generators'"))
        }
        (Some((line, _)), None) if !rels.is_empty() => {
            return Err(syntax(line, 1, "'braid' cannot be combined with 'rel'"))
        }
        (Some((_, word)), None) => from_braid(&word)?,
        (None, None) => return Err(syntax(1, 1, "missing 'generators' line")),
        (None, Some(g)) => {
            for &(line, r) in &rels {
                for index in [r.i, r.j, r.k] {
                    if index >= g {
                        return Err(KnotError::IndexOutOfRange {
                            line,
                            index,
                            generators: g,
                        });
                    }
                }
            }
            WirtingerPresentation {
                name: None,
                num_generators: g,
                relations: rels.into_iter().map(|(_, r)| r).collect(),
            }
        }
    };
    Ok(match name {
        Some(n) => pres.with_name(n),
        None => pres,
    })
}

/// A braid word on `strands` strands; letter `±i` is `σ_i^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord, KnotError> {
        if strands < 2 {
            return Err(KnotError::InvalidBraid("need at least 2 strands".into()));
        }
        for &l in &letters {
            let g = l.unsigned_abs() as usize;
            if l == 0 || g >= strands {
                return Err(KnotError::InvalidBraid(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses the compact form `"S: w1 w2 …"`, e.g. `"2: 1 1 1"`.
    pub fn parse(src: &str) -> Result<BraidWord, KnotError> {
        let (head, rest) = src
            .split_once(':')
            .ok_or_else(|| syntax(1, 1, "expected '<strands>: <letters...>'"))?;
        let strands = head
            .trim()
            .parse()
            .map_err(|_| syntax(1, 1, format!("bad strand count '{}'", head.trim())))?;
        let offset = head.chars().count() + 2;
        let letters = words(rest)
            .into_iter()
            .map(|(c, w)| {
                w.parse::<i32>()
                    .map_err(|_| syntax(1, offset + c - 1, format!("bad braid letter '{w}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Wirtinger presentation of the closure of a braid.
///
/// Strand positions carry arc labels. At `σ_i` with labels `(a, b)` on
/// positions `(i, i+1)` the strand from position `i` passes over: the
/// under-arc `b` ends and a new arc `c = a b a⁻¹` starts, giving the triple
/// `(a, b, c)`. At `σ_i⁻¹` the strand from position `i+1` passes over and
/// `a` continues as `c = b⁻¹ a b`, giving `(b, c, a)`. Closing the braid
/// identifies the final labels with the initial ones; classes are then
/// numbered in order of first appearance in the relation list.
pub fn from_braid(word: &BraidWord) -> Result<WirtingerPresentation, KnotError> {
    if word.letters.is_empty() {
        return Err(KnotError::EmptyWord);
    }
    let s = word.strands;
    // permutation of strands, to count closure components
    let mut strand_at: Vec<usize> = (0..s).collect();
    let mut pos: Vec<usize> = (0..s).collect();
    let mut next_label = s;
    let mut raw: Vec<(usize, usize, usize)> = Vec::with_capacity(word.letters.len());
    for &l in &word.letters {
        let p = l.unsigned_abs() as usize - 1;
        let (a, b) = (pos[p], pos[p + 1]);
        let c = next_label;
        next_label += 1;
        if l > 0 {
            raw.push((a, b, c));
            pos[p] = c;
            pos[p + 1] = a;
        } else {
            raw.push((b, c, a));
            pos[p] = b;
            pos[p + 1] = c;
        }
        strand_at.swap(p, p + 1);
    }
    // strand_at[q] = initial position of the strand now at q
    let mut seen = vec![false; s];
    let mut components = 0;
    for start in 0..s {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut q = start;
        while !seen[q] {
            seen[q] = true;
            q = strand_at[q];
        }
    }
    if components != 1 {
        return Err(KnotError::NotAKnot { components });
    }
    let mut parent: Vec<usize> = (0..next_label).collect();
    for (q, &label) in pos.iter().enumerate() {
        let (x, y) = (find(&mut parent, label), find(&mut parent, q));
        parent[x] = y;
    }
    let mut number: HashMap<usize, usize> = HashMap::new();
    let mut relations = Vec::with_capacity(raw.len());
    for &(i, j, k) in &raw {
        let mut id = |x: usize| {
            let root = find(&mut parent, x);
            let n = number.len();
            *number.entry(root).or_insert(n)
        };
        let (i, j, k) = (id(i), id(j), id(k));
        relations.push(Relation::new(i, j, k));
    }
    Ok(WirtingerPresentation {
        name: None,
        num_generators: number.len(),
        relations,
    })
}

/// Names accepted by [`builtin`].
pub const BUILTIN_KNOTS: [&str; 3] = ["unknot", "trefoil", "figure8"];

/// Built-in knots: `trefoil` is the closure of σ₁³, `figure8` of
/// (σ₁σ₂⁻¹)², and `unknot` has one generator and no relations.
pub fn builtin(name: &str) -> Option<WirtingerPresentation> {
    let word = match name {
        "unknot" => return Some(WirtingerPresentation::unknot()),
        "trefoil" => BraidWord::new(2, vec![1, 1, 1]),
        "figure8" => BraidWord::new(3, vec![1, -2, 1, -2]),
        _ => return None,
    };
    let pres = from_braid(&word.expect("valid built-in braid")).expect("built-in braid is a knot");
    Some(pres.with_name(name))
}

/// A representation `x_i ↦ X_i ∈ GL_N` satisfying every relation.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    dim: usize,
    field: Field,
    images: Vec<ScalarMatrix>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn images(&self) -> &[ScalarMatrix] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &ScalarMatrix {
        &self.images[i]
    }

    /// The trivial 1-dimensional representation over Q.
    pub fn trivial(pres: &WirtingerPresentation) -> Representation {
        Representation::scalar(pres, &Field::rational().one()).expect("1 is invertible")
    }

    /// The 1-dimensional representation sending every generator to `c`.
    pub fn scalar(pres: &WirtingerPresentation, c: &Scalar) -> Result<Representation, KnotError> {
        let f = c.field().clone();
        let m = ScalarMatrix::from_entries(1, 1, &f, vec![c.clone()])?;
        validate_representation(pres, vec![m; pres.num_generators()])
    }

    /// Completes partial generator images using `x_k = x_i x_j x_i⁻¹` and
    /// `x_j = x_i⁻¹ x_k x_i`, then validates.
    pub fn propagate(
        pres: &WirtingerPresentation,
        partial: Vec<Option<ScalarMatrix>>,
    ) -> Result<Representation, KnotError> {
        if partial.len() != pres.num_generators() {
            return Err(KnotError::SizeMismatch(format!(
                "{} images for {} generators",
                partial.len(),
                pres.num_generators()
            )));
        }
        let mut known = partial;
        loop {
            let mut progress = false;
            for r in pres.relations() {
                let Some(xi) = known[r.i].clone() else { continue };
                let inv = xi
                    .inverse()
                    .ok_or(KnotError::SingularMatrix { index: r.i })?;
                match (&known[r.j], &known[r.k]) {
                    (Some(xj), None) => {
                        known[r.k] = Some(xi.mul(xj)?.mul(&inv)?);
                        progress = true;
                    }
                    (None, Some(xk)) => {
                        known[r.j] = Some(inv.mul(xk)?.mul(&xi)?);
                        progress = true;
                    }
                    _ => {}
                }
            }
            if !progress {
                break;
            }
        }
        let missing: Vec<usize> = (0..known.len()).filter(|&i| known[i].is_none()).collect();
        if !missing.is_empty() {
            return Err(KnotError::Underdetermined(missing));
        }
        validate_representation(pres, known.into_iter().map(Option::unwrap).collect())
    }

    /// Representation file text; [`parse_representation`] reads it back.
    pub fn render(&self) -> String {
        let mut out = match self.field.kind() {
            crate::FieldKind::Rational => String::new(),
            crate::FieldKind::Gaussian => "field gaussian\n".to_string(),
            crate::FieldKind::Extension => format!(
                "field ext {}\n",
                crate::qpoly::render(self.field.minpoly(), "x")
            ),
        };
        out.push_str(&format!("dim {}\n", self.dim));
        for (idx, m) in self.images.iter().enumerate() {
            out.push_str(&format!("matrix {idx}\n"));
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }
}

/// Checks sizes, invertibility and every relation `X_i X_j = X_k X_i`.
pub fn validate_representation(
    pres: &WirtingerPresentation,
    images: Vec<ScalarMatrix>,
) -> Result<Representation, KnotError> {
    if images.len() != pres.num_generators() {
        return Err(KnotError::SizeMismatch(format!(
            "{} matrices for {} generators",
            images.len(),
            pres.num_generators()
        )));
    }
    let dim = images[0].rows();
    let mut field = Field::rational();
    for (idx, m) in images.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(KnotError::SizeMismatch(format!(
                "matrix {idx} is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        field = field.join(m.field())?;
    }
    if dim == 0 {
        return Err(KnotError::SizeMismatch("dimension must be positive".into()));
    }
    let images: Vec<ScalarMatrix> = images
        .iter()
        .map(|m| m.embed(&field))
        .collect::<Result<_, _>>()?;
    for (index, m) in images.iter().enumerate() {
        if m.determinant()?.is_zero() {
            return Err(KnotError::SingularMatrix { index });
        }
    }
    for (position, r) in pres.relations().iter().enumerate() {
        let lhs = images[r.i].mul(&images[r.j])?;
        let rhs = images[r.k].mul(&images[r.i])?;
        if lhs != rhs {
            return Err(KnotError::RelationViolated {
                relation: *r,
                position,
            });
        }
    }
    Ok(Representation { dim, field, images })
}

/// `(line, generator, rows)` of a `matrix` block; rows hold `(line, col, token)`.
type MatrixBlock = (usize, usize, Vec<Vec<(usize, usize, String)>>);

/// Reads a representation file:
///
/// ```text
/// field gaussian          # or `field ext <minpoly>`; optional
/// dim 2
/// matrix 0
/// 1 1
/// 0 1
/// matrix 1
/// …
/// ```
///
/// Returns the field and the images in generator order.
pub fn parse_representation(text: &str) -> Result<(Field, Vec<ScalarMatrix>), KnotError> {
    let mut field: Option<Field> = None;
    let mut dim: Option<usize> = None;
    let mut blocks: Vec<MatrixBlock> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = strip_comment(raw);
        let ws = words(body);
        let Some(&(col, head)) = ws.first() else {
            continue;
        };
        match head {
            "field" => {
                if field.is_some() || dim.is_some() {
                    return Err(syntax(line, col, "'field' must come once, before 'dim'"));
                }
                let kind = ws.get(1).map(|w| w.1);
                field = Some(match kind {
                    Some("rational") if ws.len() == 2 => Field::rational(),
                    Some("gaussian") if ws.len() == 2 => Field::gaussian(),
                    Some("ext") if ws.len() > 2 => {
                        let start = ws[2].0;
                        let src: String = body.chars().skip(start - 1).collect();
                        let p = parse::parse_minpoly(&src).map_err(|e| ParseErrorAt(line, start, e))?;
                        Field::extension(&p)?
                    }
                    _ => {
                        return Err(syntax(
                            line,
                            col,
                            "expected 'field rational', 'field gaussian' or 'field ext <minpoly>'",
                        ))
                    }
                });
            }
            "dim" => {
                if dim.is_some() {
                    return Err(syntax(line, col, "duplicate 'dim' line"));
                }
                if ws.len() != 2 {
                    return Err(syntax(line, col, "expected 'dim <N>'"));
                }
                let d = parse_index(line, ws[1])?;
                if d == 0 {
                    return Err(syntax(line, ws[1].0, "dimension must be positive"));
                }
                dim = Some(d);
            }
            "matrix" => {
                if dim.is_none() {
                    return Err(syntax(line, col, "'matrix' before 'dim'"));
                }
                if ws.len() != 2 {
                    return Err(syntax(line, col, "expected 'matrix <index>'"));
                }
                let idx = parse_index(line, ws[1])?;
                blocks.push((line, idx, Vec::new()));
            }
            _ => {
                let Some(block) = blocks.last_mut() else {
                    return Err(syntax(line, col, format!("unexpected '{head}'")));
                };
                block.2.push(
                    ws.iter()
                        .map(|&(c, w)| (line, c, w.to_string()))
                        .collect(),
                );
            }
        }
    }
    let field = field.unwrap_or_else(Field::rational);
    let dim = dim.ok_or_else(|| syntax(1, 1, "missing 'dim' line"))?;
    let mut images: Vec<Option<ScalarMatrix>> = vec![None; blocks.len()];
    for (line, idx, rows) in blocks {
        if idx >= images.len() {
            return Err(syntax(line, 1, format!("matrix index {idx} out of order")));
        }
        if images[idx].is_some() {
            return Err(syntax(line, 1, format!("duplicate matrix {idx}")));
        }
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(syntax(line, 1, format!("matrix {idx} must have {dim} rows of {dim} entries")));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (l, c, w) in rows.into_iter().flatten() {
            data.push(parse::parse_scalar(&w, &field).map_err(|e| ParseErrorAt(l, c, e))?);
        }
        images[idx] = Some(ScalarMatrix::from_entries(dim, dim, &field, data)?);
    }
    Ok((field, images.into_iter().map(Option::unwrap).collect()))
}

struct ParseErrorAt(usize, usize, ParseError);

impl From<ParseErrorAt> for KnotError {
    fn from(ParseErrorAt(line, col, e): ParseErrorAt) -> KnotError {
        syntax(line, col + e.col - 1, e.msg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rels(p: &WirtingerPresentation) -> Vec<(usize, usize, usize)> {
        p.relations().iter().map(|r| (r.i, r.j, r.k)).collect()
    }

    #[test]
    fn parse_examples() {
        let p = parse_presentation("generators 3\nrel 0 1 2\nrel 1 2 0\nrel 2 0 1\n").unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(rels(&p), vec![(0, 1, 2), (1, 2, 0), (2, 0, 1)]);
        let u = parse_presentation("# unknot\ngenerators 1\n").unwrap();
        assert_eq!(u.num_generators(), 1);
        assert!(u.relations().is_empty());
        assert_eq!(
            parse_presentation("generators 3\nrel 0 1 5\n").unwrap_err(),
            KnotError::IndexOutOfRange {
                line: 2,
                index: 5,
                generators: 3
            }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_presentation("generators 3\ngenerators 3\n"),
            Err(KnotError::Syntax { line: 2, col: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("generators 3\nrel 0 x 1\n"),
            Err(KnotError::Syntax { line: 2, col: 7, .. })
        ));
        assert!(matches!(
            parse_presentation("knot a\n  frob 1\n"),
            Err(KnotError::Syntax { line: 2, col: 3, .. })
        ));
        assert!(parse_presentation("rel 0 0 0\n").is_err());
    }

    #[test]
    fn braid_line_in_file() {
        let p = parse_presentation("knot t\nbraid 2 1 1 1\n").unwrap();
        assert_eq!(p.name(), Some("t"));
        assert_eq!(p.relations().len(), 3);
    }

    #[test]
    fn trefoil_from_braid() {
        let p = from_braid(&BraidWord::parse("2: 1 1 1").unwrap()).unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(rels(&p), vec![(0, 1, 2), (2, 0, 1), (1, 2, 0)]);
    }

    #[test]
    fn braid_errors() {
        assert_eq!(
            from_braid(&BraidWord::new(2, vec![]).unwrap()).unwrap_err(),
            KnotError::EmptyWord
        );
        assert_eq!(
            from_braid(&BraidWord::new(2, vec![1, 1]).unwrap()).unwrap_err(),
            KnotError::NotAKnot { components: 2 }
        );
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(1, vec![]).is_err());
        assert!(BraidWord::parse("3 1 2").is_err());
    }

    #[test]
    fn unknot_braid_collapses() {
        let p = from_braid(&BraidWord::parse("2: 1").unwrap()).unwrap();
        assert_eq!(p.num_generators(), 1);
        assert_eq!(rels(&p), vec![(0, 0, 0)]);
    }

    #[test]
    fn builtins_are_well_formed() {
        for name in BUILTIN_KNOTS {
            let p = builtin(name).unwrap();
            assert_eq!(p.name(), Some(name));
            for g in 0..p.num_generators() {
                if !p.relations().is_empty() {
                    assert!(p.relations().iter().any(|r| [r.i, r.j, r.k].contains(&g)));
                }
            }
            assert_eq!(parse_presentation(&p.render()).unwrap(), p);
        }
        assert_eq!(builtin("figure8").unwrap().num_generators(), 4);
        assert!(builtin("nope").is_none());
    }

    fn q() -> Field {
        Field::rational()
    }

    fn sl2_trefoil() -> Vec<ScalarMatrix> {
        let a = ScalarMatrix::from_ints(2, 2, &q(), &[1, 1, 0, 1]);
        let b = ScalarMatrix::from_ints(2, 2, &q(), &[1, 0, -1, 1]);
        let c = a.mul(&b).unwrap().mul(&a.inverse().unwrap()).unwrap();
        vec![a, b, c]
    }

    #[test]
    fn validate_examples() {
        let p = parse_presentation("generators 3\nrel 0 1 2\nrel 1 2 0\nrel 2 0 1\n").unwrap();
        let m = ScalarMatrix::from_ints(1, 1, &q(), &[-1]);
        assert!(validate_representation(&p, vec![m; 3]).is_ok());

        let rep = validate_representation(&p, sl2_trefoil()).unwrap();
        assert_eq!(rep.dim(), 2);

        let a = ScalarMatrix::from_ints(2, 2, &q(), &[1, 1, 0, 1]);
        let id = ScalarMatrix::identity(2, &q());
        assert!(matches!(
            validate_representation(&p, vec![a, id.clone(), id]),
            Err(KnotError::RelationViolated { .. })
        ));
        let z = ScalarMatrix::zeros(1, 1, &q());
        assert_eq!(
            validate_representation(&p, vec![z; 3]).unwrap_err(),
            KnotError::SingularMatrix { index: 0 }
        );
        let one = ScalarMatrix::identity(1, &q());
        assert!(matches!(
            validate_representation(&p, vec![one; 2]),
            Err(KnotError::SizeMismatch(_))
        ));
    }

    #[test]
    fn propagation_fills_images() {
        let p = builtin("trefoil").unwrap();
        let images = sl2_trefoil();
        let rep = Representation::propagate(
            &p,
            vec![Some(images[0].clone()), Some(images[1].clone()), None],
        )
        .unwrap();
        assert_eq!(rep.images(), &images[..]);
        // conjugate meridians share determinant and trace
        for m in rep.images() {
            assert_eq!(m.determinant().unwrap(), images[0].determinant().unwrap());
            assert_eq!(m.trace(), images[0].trace());
        }
    }

    #[test]
    fn representation_file_round_trip() {
        let p = builtin("trefoil").unwrap();
        let rep = validate_representation(&p, sl2_trefoil()).unwrap();
        let (field, images) = parse_representation(&rep.render()).unwrap();
        assert!(field.is_rational());
        assert_eq!(images, rep.images());

        let text = "field gaussian\ndim 1\nmatrix 0\ni\nmatrix 1\ni\nmatrix 2\ni\n";
        let (field, images) = parse_representation(text).unwrap();
        assert_eq!(field, Field::gaussian());
        let rep = validate_representation(&p, images).unwrap();
        assert_eq!(rep.render(), text);

        let text = "field ext x^2 - x + 1\ndim 1\nmatrix 0\nθ\n";
        let (field, _) = parse_representation(text).unwrap();
        assert_eq!(field.degree(), 2);

        assert!(matches!(
            parse_representation("dim 2\nmatrix 0\n1 0\n0\n"),
            Err(KnotError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_representation("dim 1\nmatrix 0\nq\n"),
            Err(KnotError::Syntax { line: 3, col: 1, .. })
        ));
    }
}
