//! Derived groups of right actions `S × G → S`: words in the symbols `^s g`,
//! their reduced forms, the operator action of `S` on words, and the derived
//! presentation of a knot group over a finite image.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::knot::{Relation, Representation, WirtingerPresentation};
use crate::matrix::ScalarMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("unknown element '{0}' of S")]
    UnknownElement(String),
    #[error("S has no monoid structure")]
    NoMonoidStructure,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("image of the representation exceeds {cap} elements")]
    ImageNotFinite { cap: usize },
    #[error("image of x_{index} is singular")]
    SingularElement { index: usize },
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> DerivedError {
    DerivedError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// An element of the base group: a freely reduced word (letters `±(g+1)`)
/// or an index into a finite multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseElem {
    Free(Vec<i32>),
    Finite(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseGroup {
    Free {
        names: Vec<char>,
    },
    /// `table[x][y] = xy`; `identity` is its neutral element.
    Finite {
        names: Vec<char>,
        table: Vec<Vec<usize>>,
        identity: usize,
    },
}

fn free_reduce(word: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl BaseGroup {
    pub fn names(&self) -> &[char] {
        match self {
            BaseGroup::Free { names } | BaseGroup::Finite { names, .. } => names,
        }
    }

    pub fn identity(&self) -> BaseElem {
        match self {
            BaseGroup::Free { .. } => BaseElem::Free(Vec::new()),
            BaseGroup::Finite { identity, .. } => BaseElem::Finite(*identity),
        }
    }

    pub fn is_identity(&self, g: &BaseElem) -> bool {
        *g == self.identity()
    }

    /// The generator or element named `c`.
    pub fn named(&self, c: char) -> Result<BaseElem, DerivedError> {
        let idx = self
            .names()
            .iter()
            .position(|&n| n == c)
            .ok_or_else(|| DerivedError::UnknownGenerator(c.to_string()))?;
        Ok(match self {
            BaseGroup::Free { .. } => BaseElem::Free(vec![idx as i32 + 1]),
            BaseGroup::Finite { .. } => BaseElem::Finite(idx),
        })
    }

    pub fn mul(&self, a: &BaseElem, b: &BaseElem) -> BaseElem {
        match (self, a, b) {
            (BaseGroup::Free { .. }, BaseElem::Free(x), BaseElem::Free(y)) => {
                BaseElem::Free(free_reduce(x.iter().chain(y).copied()))
            }
            (BaseGroup::Finite { table, .. }, BaseElem::Finite(x), BaseElem::Finite(y)) => {
                BaseElem::Finite(table[*x][*y])
            }
            _ => panic!("base element of the wrong kind"),
        }
    }

    pub fn inv(&self, a: &BaseElem) -> BaseElem {
        match (self, a) {
            (BaseGroup::Free { .. }, BaseElem::Free(x)) => {
                BaseElem::Free(x.iter().rev().map(|l| -l).collect())
            }
            (BaseGroup::Finite { table, identity, .. }, BaseElem::Finite(x)) => {
                let y = (0..table.len())
                    .find(|&y| table[*x][y] == *identity)
                    .expect("finite group has inverses");
                BaseElem::Finite(y)
            }
            _ => panic!("base element of the wrong kind"),
        }
    }

    pub fn pow(&self, a: &BaseElem, e: i64) -> BaseElem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        (0..e.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }

    pub fn render(&self, g: &BaseElem) -> String {
        match (self, g) {
            (_, g) if self.is_identity(g) => "1".to_string(),
            (BaseGroup::Free { names }, BaseElem::Free(x)) => {
                let mut out = String::new();
                for &l in x {
                    out.push(names[l.unsigned_abs() as usize - 1]);
                    if l < 0 {
                        out.push_str("^-1");
                    }
                }
                out
            }
            (BaseGroup::Finite { names, .. }, BaseElem::Finite(x)) => names[*x].to_string(),
            _ => panic!("base element of the wrong kind"),
        }
    }

    /// Parses a product of names with optional integer powers, e.g. `ab^-1`.
    pub fn parse(&self, src: &str) -> Result<BaseElem, DerivedError> {
        let chars: Vec<char> = src.chars().collect();
        let mut acc = self.identity();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if c.is_whitespace() {
                k += 1;
                continue;
            }
            if c == '1' {
                k += 1;
                continue;
            }
            let g = self.named(c)?;
            k += 1;
            let mut e = 1i64;
            if chars.get(k) == Some(&'^') {
                let start = k + 1;
                let mut end = start;
                if matches!(chars.get(end), Some('-') | Some('+')) {
                    end += 1;
                }
                while chars.get(end).is_some_and(|d| d.is_ascii_digit()) {
                    end += 1;
                }
                let text: String = chars[start..end].iter().collect();
                e = text.parse().map_err(|_| {
                    syntax(1, start + 1, format!("bad exponent '{text}' in '{src}'"))
                })?;
                k = end;
            }
            acc = self.mul(&acc, &self.pow(&g, e));
        }
        Ok(acc)
    }

    fn check(&self, g: &BaseElem) -> Result<(), DerivedError> {
        let ok = match (self, g) {
            (BaseGroup::Free { names }, BaseElem::Free(x)) => x
                .iter()
                .all(|&l| l != 0 && (l.unsigned_abs() as usize) <= names.len()),
            (BaseGroup::Finite { table, .. }, BaseElem::Finite(x)) => *x < table.len(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(DerivedError::UnknownGenerator(format!("{g:?}")))
        }
    }
}

/// Identity and product table making `S` a monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

/// A right action of the base group on the finite set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    base: BaseGroup,
    sset: Vec<String>,
    /// `gen_act[s][g]`: generators for a free base, elements for a finite one.
    gen_act: Vec<Vec<usize>>,
    /// inverse permutations of the generator actions (free base only)
    inv_act: Vec<Vec<usize>>,
    monoid: Option<Monoid>,
}

impl FiniteAction {
    /// Validates that each generator acts bijectively (free base) or that the
    /// table is an action (finite base), and the operator law
    /// `(st)·g = s(t·g)` when a monoid is given.
    pub fn new(
        base: BaseGroup,
        sset: Vec<String>,
        act: Vec<Vec<usize>>,
        monoid: Option<Monoid>,
    ) -> Result<FiniteAction, DerivedError> {
        let n = sset.len();
        if n == 0 {
            return Err(DerivedError::InvalidAction("S is empty".into()));
        }
        let gens = base.names().len();
        if act.len() != n || act.iter().any(|row| row.len() != gens || row.iter().any(|&x| x >= n))
        {
            return Err(DerivedError::InvalidAction(format!(
                "action table must be {n} x {gens} with entries in S"
            )));
        }
        let mut inv_act = vec![vec![0; gens]; n];
        match &base {
            BaseGroup::Free { .. } => {
                for g in 0..gens {
                    let mut seen = vec![false; n];
                    for s in 0..n {
                        let img = act[s][g];
                        if seen[img] {
                            return Err(DerivedError::InvalidAction(format!(
                                "generator '{}' does not permute S",
                                base.names()[g]
                            )));
                        }
                        seen[img] = true;
                        inv_act[img][g] = s;
                    }
                }
            }
            BaseGroup::Finite {
                table, identity, ..
            } => {
                for s in 0..n {
                    if act[s][*identity] != s {
                        return Err(DerivedError::InvalidAction(
                            "identity must act trivially".into(),
                        ));
                    }
                    for g in 0..gens {
                        for h in 0..gens {
                            if act[s][table[g][h]] != act[act[s][g]][h] {
                                return Err(DerivedError::InvalidAction(format!(
                                    "s·(gh) ≠ (s·g)·h for s = {}",
                                    sset[s]
                                )));
                            }
                        }
                    }
                }
            }
        }
        let action = FiniteAction {
            base,
            sset,
            gen_act: act,
            inv_act,
            monoid: None,
        };
        match monoid {
            None => Ok(action),
            Some(m) => action.with_monoid(m),
        }
    }

    fn with_monoid(mut self, m: Monoid) -> Result<FiniteAction, DerivedError> {
        let n = self.sset.len();
        if m.identity >= n
            || m.table.len() != n
            || m.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(DerivedError::InvalidAction("malformed monoid table".into()));
        }
        for a in 0..n {
            if m.table[m.identity][a] != a || m.table[a][m.identity] != a {
                return Err(DerivedError::InvalidAction("monoid identity fails".into()));
            }
            for b in 0..n {
                for c in 0..n {
                    if m.table[m.table[a][b]][c] != m.table[a][m.table[b][c]] {
                        return Err(DerivedError::InvalidAction("monoid is not associative".into()));
                    }
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                for g in 0..self.base.names().len() {
                    if self.gen_act[m.table[s][t]][g] != m.table[s][self.gen_act[t][g]] {
                        return Err(DerivedError::InvalidAction(format!(
                            "(st)·g ≠ s(t·g) for s = {}, t = {}",
                            self.sset[s], self.sset[t]
                        )));
                    }
                }
            }
        }
        self.monoid = Some(m);
        Ok(self)
    }

    /// `Z/m` with every free generator acting as `+1`, as an additive monoid.
    pub fn cyclic(names: &[char], m: usize) -> FiniteAction {
        let act = (0..m).map(|s| vec![(s + 1) % m; names.len()]).collect();
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        FiniteAction::new(
            BaseGroup::Free {
                names: names.to_vec(),
            },
            (0..m).map(|s| s.to_string()).collect(),
            act,
            Some(Monoid { identity: 0, table }),
        )
        .expect("cyclic action is valid")
    }

    pub fn base(&self) -> &BaseGroup {
        &self.base
    }

    pub fn sset(&self) -> &[String] {
        &self.sset
    }

    pub fn monoid(&self) -> Option<&Monoid> {
        self.monoid.as_ref()
    }

    pub fn element(&self, name: &str) -> Result<usize, DerivedError> {
        self.sset
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| DerivedError::UnknownElement(name.to_string()))
    }

    /// `s·g`.
    pub fn act(&self, s: usize, g: &BaseElem) -> usize {
        match g {
            BaseElem::Free(x) => x.iter().fold(s, |s, &l| {
                let g = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    self.gen_act[s][g]
                } else {
                    self.inv_act[s][g]
                }
            }),
            BaseElem::Finite(x) => self.gen_act[s][*x],
        }
    }

    /// Monoid product `st`.
    pub fn smul(&self, s: usize, t: usize) -> Result<usize, DerivedError> {
        let m = self.monoid.as_ref().ok_or(DerivedError::NoMonoidStructure)?;
        Ok(m.table[s][t])
    }

    fn check_word(&self, w: &DerivedWord) -> Result<(), DerivedError> {
        for l in &w.letters {
            if l.s >= self.sset.len() {
                return Err(DerivedError::UnknownElement(l.s.to_string()));
            }
            self.base.check(&l.g)?;
        }
        Ok(())
    }

    fn mergeable(&self, a: &Letter, b: &Letter) -> bool {
        self.act(a.s, &a.g) == b.s
    }

    /// Reduced form: letters with `g = 1` deleted and `^s g ^{sg} h`
    /// merged into `^s (gh)` until neither applies.
    pub fn normal_form(&self, w: &DerivedWord) -> Result<DerivedWord, DerivedError> {
        self.check_word(w)?;
        let mut stack: Vec<Letter> = Vec::with_capacity(w.letters.len());
        for l in &w.letters {
            let mut cur = l.clone();
            while let Some(top) = stack.last() {
                if !self.mergeable(top, &cur) {
                    break;
                }
                let top = stack.pop().unwrap();
                cur = Letter {
                    s: top.s,
                    g: self.base.mul(&top.g, &cur.g),
                };
            }
            if !self.base.is_identity(&cur.g) {
                stack.push(cur);
            }
        }
        Ok(DerivedWord { letters: stack })
    }

    pub fn is_normal(&self, w: &DerivedWord) -> bool {
        w.letters.iter().all(|l| !self.base.is_identity(&l.g))
            && w.letters.windows(2).all(|p| !self.mergeable(&p[0], &p[1]))
    }

    /// Positions where a single rewriting step applies: `(p, false)` deletes
    /// a trivial letter at `p`, `(p, true)` merges letters `p` and `p + 1`.
    pub fn redexes(&self, w: &DerivedWord) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (p, l) in w.letters.iter().enumerate() {
            if self.base.is_identity(&l.g) {
                out.push((p, false));
            }
            if p + 1 < w.letters.len() && self.mergeable(l, &w.letters[p + 1]) {
                out.push((p, true));
            }
        }
        out
    }

    /// Applies one rewriting step from [`FiniteAction::redexes`].
    pub fn rewrite(&self, w: &DerivedWord, (p, merge): (usize, bool)) -> DerivedWord {
        let mut letters = w.letters.clone();
        if merge {
            let b = letters.remove(p + 1);
            letters[p].g = self.base.mul(&letters[p].g, &b.g);
        } else {
            letters.remove(p);
        }
        DerivedWord { letters }
    }

    pub fn concat(&self, u: &DerivedWord, v: &DerivedWord) -> Result<DerivedWord, DerivedError> {
        let mut letters = u.letters.clone();
        letters.extend(v.letters.iter().cloned());
        self.normal_form(&DerivedWord { letters })
    }

    /// Reversal with `(^s g)⁻¹ = ^{sg}(g⁻¹)`, then reduced.
    pub fn invert_word(&self, w: &DerivedWord) -> Result<DerivedWord, DerivedError> {
        self.check_word(w)?;
        let letters = w
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                s: self.act(l.s, &l.g),
                g: self.base.inv(&l.g),
            })
            .collect();
        self.normal_form(&DerivedWord { letters })
    }

    /// `s·(^{s_1}g_1 ⋯) = ^{ss_1}g_1 ⋯`, reduced.
    pub fn s_act(&self, s: usize, w: &DerivedWord) -> Result<DerivedWord, DerivedError> {
        self.check_word(w)?;
        if self.monoid.is_none() {
            return Err(DerivedError::NoMonoidStructure);
        }
        if s >= self.sset.len() {
            return Err(DerivedError::UnknownElement(s.to_string()));
        }
        let letters = w
            .letters
            .iter()
            .map(|l| {
                Ok(Letter {
                    s: self.smul(s, l.s)?,
                    g: l.g.clone(),
                })
            })
            .collect::<Result<_, DerivedError>>()?;
        self.normal_form(&DerivedWord { letters })
    }

    /// Renders as `^s(g) ^s'(h) …`, or `1` for the empty word.
    pub fn render(&self, w: &DerivedWord) -> String {
        if w.letters.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|l| format!("^{}({})", self.sset[l.s], self.base.render(&l.g)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `^s(g) ^s'(h) …`; `1` or an empty string is the empty word.
    pub fn parse_word(&self, src: &str) -> Result<DerivedWord, DerivedError> {
        let chars: Vec<char> = src.chars().collect();
        let mut letters = Vec::new();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if c.is_whitespace() || c == ',' || c == '·' || c == '*' {
                k += 1;
                continue;
            }
            if c == '1' && letters.is_empty() && src.trim() == "1" {
                break;
            }
            if c != '^' {
                return Err(syntax(1, k + 1, format!("expected '^', found '{c}'")));
            }
            let start = k + 1;
            let open = (start..chars.len())
                .find(|&j| chars[j] == '(')
                .ok_or_else(|| syntax(1, start, "expected '(' after the S label"))?;
            let label: String = chars[start..open].iter().collect();
            let s = self.element(label.trim())?;
            let close = (open..chars.len())
                .find(|&j| chars[j] == ')')
                .ok_or_else(|| syntax(1, open + 1, "unclosed '('"))?;
            let body: String = chars[open + 1..close].iter().collect();
            let g = self.base.parse(&body).map_err(|e| match e {
                DerivedError::Syntax { col, msg, .. } => syntax(1, open + 1 + col, msg),
                other => other,
            })?;
            letters.push(Letter { s, g });
            k = close + 1;
        }
        Ok(DerivedWord { letters })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub s: usize,
    pub g: BaseElem,
}

/// A word `^{s_1}g_1 ⋯ ^{s_k}g_k`; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DerivedWord {
    pub letters: Vec<Letter>,
}

impl DerivedWord {
    pub fn new(letters: Vec<Letter>) -> DerivedWord {
        DerivedWord { letters }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Reads an action file:
///
/// ```text
/// base free a b          # or: base finite e x  with `gmul` lines
/// sset 0 1
/// act 0 a 1
/// act 1 a 0
/// act 0 b 1
/// act 1 b 0
/// sident 0               # optional monoid structure
/// smul 0 0 0
/// ```
pub fn parse_action(text: &str) -> Result<FiniteAction, DerivedError> {
    let mut base_kind: Option<(bool, Vec<char>)> = None;
    let mut sset: Option<Vec<String>> = None;
    let mut gmul: HashMap<(usize, usize), usize> = HashMap::new();
    let mut act: HashMap<(usize, usize), usize> = HashMap::new();
    let mut sident: Option<usize> = None;
    let mut smul: HashMap<(usize, usize), usize> = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        let ws: Vec<&str> = body.split_whitespace().collect();
        let Some(&head) = ws.first() else { continue };
        let col = body.find(head).unwrap_or(0) + 1;
        let name_of = |w: &str| -> Result<char, DerivedError> {
            let mut cs = w.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_alphabetic() => Ok(c),
                _ => Err(syntax(line, col, format!("'{w}' is not a single-letter name"))),
            }
        };
        let gen_index = |w: &str| -> Result<usize, DerivedError> {
            let c = name_of(w)?;
            let names = &base_kind
                .as_ref()
                .ok_or_else(|| syntax(line, col, "'base' must come first"))?
                .1;
            names
                .iter()
                .position(|&x| x == c)
                .ok_or_else(|| DerivedError::UnknownGenerator(w.to_string()))
        };
        let s_index = |w: &str| -> Result<usize, DerivedError> {
            let s = sset
                .as_ref()
                .ok_or_else(|| syntax(line, col, "'sset' must come before use"))?;
            s.iter()
                .position(|x| x == w)
                .ok_or_else(|| DerivedError::UnknownElement(w.to_string()))
        };
        let arity = |k: usize| -> Result<(), DerivedError> {
            if ws.len() == k + 1 {
                Ok(())
            } else {
                Err(syntax(line, col, format!("'{head}' takes {k} arguments")))
            }
        };
        match head {
            "base" => {
                if base_kind.is_some() {
                    return Err(syntax(line, col, "duplicate 'base' line"));
                }
                let free = match ws.get(1) {
                    Some(&"free") => true,
                    Some(&"finite") => false,
                    _ => return Err(syntax(line, col, "expected 'base free' or 'base finite'")),
                };
                let names = ws[2..].iter().map(|w| name_of(w)).collect::<Result<Vec<_>, _>>()?;
                if names.is_empty() {
                    return Err(syntax(line, col, "base needs at least one name"));
                }
                base_kind = Some((free, names));
            }
            "sset" => {
                if sset.is_some() {
                    return Err(syntax(line, col, "duplicate 'sset' line"));
                }
                let elems: Vec<String> = ws[1..].iter().map(|w| w.to_string()).collect();
                if elems.is_empty() {
                    return Err(syntax(line, col, "S must be nonempty"));
                }
                sset = Some(elems);
            }
            "gmul" => {
                arity(3)?;
                let (x, y, z) = (gen_index(ws[1])?, gen_index(ws[2])?, gen_index(ws[3])?);
                gmul.insert((x, y), z);
            }
            "act" => {
                arity(3)?;
                let (s, g, t) = (s_index(ws[1])?, gen_index(ws[2])?, s_index(ws[3])?);
                if act.insert((s, g), t).is_some() {
                    return Err(syntax(line, col, "duplicate 'act' entry"));
                }
            }
            "sident" => {
                arity(1)?;
                sident = Some(s_index(ws[1])?);
            }
            "smul" => {
                arity(3)?;
                let (a, b, c) = (s_index(ws[1])?, s_index(ws[2])?, s_index(ws[3])?);
                smul.insert((a, b), c);
            }
            other => return Err(syntax(line, col, format!("unknown keyword '{other}'"))),
        }
    }
    let (free, names) = base_kind.ok_or_else(|| syntax(1, 1, "missing 'base' line"))?;
    let sset = sset.ok_or_else(|| syntax(1, 1, "missing 'sset' line"))?;
    let (n, g) = (sset.len(), names.len());
    let table_from = |map: &HashMap<(usize, usize), usize>, rows: usize, cols: usize, what: &str| {
        (0..rows)
            .map(|a| {
                (0..cols)
                    .map(|b| {
                        map.get(&(a, b))
                            .copied()
                            .ok_or_else(|| DerivedError::InvalidAction(format!("{what} table is incomplete")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let base = if free {
        if !gmul.is_empty() {
            return Err(DerivedError::InvalidAction("'gmul' requires a finite base".into()));
        }
        BaseGroup::Free { names }
    } else {
        let table = table_from(&gmul, g, g, "group")?;
        let identity = (0..g)
            .find(|&e| (0..g).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| DerivedError::InvalidAction("group table has no identity".into()))?;
        BaseGroup::Finite {
            names,
            table,
            identity,
        }
    };
    let act = table_from(&act, n, g, "action")?;
    let monoid = match sident {
        None if smul.is_empty() => None,
        None => return Err(DerivedError::InvalidAction("'smul' without 'sident'".into())),
        Some(identity) => Some(Monoid {
            identity,
            table: table_from(&smul, n, n, "monoid")?,
        }),
    };
    FiniteAction::new(base, sset, act, monoid)
}

/// Default bound on the size of an enumerated image.
pub const DEFAULT_IMAGE_CAP: usize = 2048;

/// The finite multiplicative closure of the images, as a list starting at
/// the identity in breadth-first order under right multiplication by each
/// `X_i`, together with `next[s][i] = index of s·X_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteImage {
    pub elements: Vec<ScalarMatrix>,
    pub next: Vec<Vec<usize>>,
}

pub fn enumerate_image(images: &[ScalarMatrix], cap: usize) -> Result<FiniteImage, DerivedError> {
    let Some(first) = images.first() else {
        return Err(DerivedError::InvalidAction("no generator images".into()));
    };
    for (index, m) in images.iter().enumerate() {
        let singular = !m.is_square() || m.determinant().map_or(true, |d| d.is_zero());
        if singular {
            return Err(DerivedError::SingularElement { index });
        }
    }
    let field: Field = first.field().clone();
    let mut elements = vec![ScalarMatrix::identity(first.rows(), &field)];
    let mut index: HashMap<Vec<crate::field::Scalar>, usize> = HashMap::new();
    index.insert(elements[0].entries().to_vec(), 0);
    let mut next: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(images.len());
        for x in images {
            let prod = elements[head].mul(x).expect("square images of equal size");
            let key = prod.entries().to_vec();
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if elements.len() == cap {
                        return Err(DerivedError::ImageNotFinite { cap });
                    }
                    elements.push(prod);
                    index.insert(key, elements.len() - 1);
                    elements.len() - 1
                }
            };
            row.push(id);
        }
        next.push(row);
        head += 1;
    }
    Ok(FiniteImage { elements, next })
}

/// `^s x_i ^{sX_i} x_j = ^s x_k ^{sX_k} x_i` for `s ∈ S` and a Wirtinger
/// relation `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedRelation {
    pub s: usize,
    pub relation: Relation,
    pub s_xi: usize,
    pub s_xk: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedPresentation {
    pub image: FiniteImage,
    /// number of base generators `x_0 … x_n`
    pub base_generators: usize,
    pub relations: Vec<DerivedRelation>,
}

impl DerivedPresentation {
    pub fn order(&self) -> usize {
        self.image.elements.len()
    }

    /// Generators `^s x_i`, `i`-major.
    pub fn num_generators(&self) -> usize {
        self.order() * self.base_generators
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "sset {}\ngenerators {}\n",
            self.order(),
            self.num_generators()
        );
        for (idx, m) in self.image.elements.iter().enumerate() {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&format!("element {idx} [{}]\n", rows.join("; ")));
        }
        for r in &self.relations {
            out.push_str(&format!("rel {r}\n"));
        }
        out
    }
}

impl fmt::Display for DerivedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Relation { i, j, k } = self.relation;
        write!(
            f,
            "^{s}x{i} ^{a}x{j} = ^{s}x{k} ^{b}x{i}",
            s = self.s,
            a = self.s_xi,
            b = self.s_xk
        )
    }
}

/// The derived presentation over the image of `rep`: every relation
/// family except the last, indexed by `s ∈ S`.
pub fn derived_presentation(
    pres: &WirtingerPresentation,
    rep: &Representation,
    cap: usize,
) -> Result<DerivedPresentation, DerivedError> {
    let image = enumerate_image(rep.images(), cap)?;
    let retained = pres.relations().len().saturating_sub(1);
    let mut relations = Vec::with_capacity(retained * image.elements.len());
    for &rel in &pres.relations()[..retained] {
        for s in 0..image.elements.len() {
            relations.push(DerivedRelation {
                s,
                relation: rel,
                s_xi: image.next[s][rel.i],
                s_xk: image.next[s][rel.k],
            });
        }
    }
    Ok(DerivedPresentation {
        image,
        base_generators: pres.num_generators(),
        relations,
    })
}

/// Integer relation matrix of the abelianized derived group: row
/// `r·|S| + s`, column `i·|S| + s`, with `+1` at `(s,i)` and `(sX_i,j)`,
/// `−1` at `(s,k)` and `(sX_k,i)`.
pub fn abelianized_derived_matrix(
    pres: &WirtingerPresentation,
    rep: &Representation,
    cap: usize,
) -> Result<ScalarMatrix, DerivedError> {
    let dp = derived_presentation(pres, rep, cap)?;
    let q = Field::rational();
    let order = dp.order();
    let mut m = ScalarMatrix::zeros(dp.relations.len(), dp.num_generators(), &q);
    let mut bump = |row: usize, s: usize, g: usize, v: i64| {
        let col = g * order + s;
        let cur = m.get(row, col) + &q.from_int(v);
        m.set(row, col, cur);
    };
    for (row, r) in dp.relations.iter().enumerate() {
        let Relation { i, j, k } = r.relation;
        bump(row, r.s, i, 1);
        bump(row, r.s_xi, j, 1);
        bump(row, r.s, k, -1);
        bump(row, r.s_xk, i, -1);
    }
    Ok(m)
}
