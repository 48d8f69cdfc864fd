//! The conifold quiver, its path algebra over `Q`, the potential and its
//! cyclic derivatives, and length-truncated Jacobi algebras.
//!
//! Words compose right to left: the word `a1 a2 … an` applies `an` first, so
//! `xyz` starts at the source of `z` and ends at the target of `x`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, show_q, Q};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    V0,
    V1,
}

impl Vertex {
    pub const ALL: [Vertex; 2] = [Vertex::V0, Vertex::V1];

    pub fn index(self) -> usize {
        match self {
            Vertex::V0 => 0,
            Vertex::V1 => 1,
        }
    }

    pub fn from_index(i: usize) -> Vertex {
        if i == 0 {
            Vertex::V0
        } else {
            Vertex::V1
        }
    }

    pub fn other(self) -> Vertex {
        Vertex::from_index(1 - self.index())
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.index())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arrow {
    X,
    Y,
    Z,
    W,
}

impl Arrow {
    pub const ALL: [Arrow; 4] = [Arrow::X, Arrow::Y, Arrow::Z, Arrow::W];

    pub fn source(self) -> Vertex {
        match self {
            Arrow::X | Arrow::Z => Vertex::V0,
            Arrow::Y | Arrow::W => Vertex::V1,
        }
    }

    pub fn target(self) -> Vertex {
        self.source().other()
    }

    pub fn letter(self) -> char {
        match self {
            Arrow::X => 'x',
            Arrow::Y => 'y',
            Arrow::Z => 'z',
            Arrow::W => 'w',
        }
    }

    pub fn from_letter(c: char) -> Option<Arrow> {
        match c {
            'x' => Some(Arrow::X),
            'y' => Some(Arrow::Y),
            'z' => Some(Arrow::Z),
            'w' => Some(Arrow::W),
            _ => None,
        }
    }

    /// Arrows leaving `v`.
    pub fn from_vertex(v: Vertex) -> [Arrow; 2] {
        match v {
            Vertex::V0 => [Arrow::X, Arrow::Z],
            Vertex::V1 => [Arrow::Y, Arrow::W],
        }
    }
}

/// Vertex and arrow data of a quiver. Only the conifold instance is built;
/// the rest of the crate uses the [`Arrow`] and [`Vertex`] enums directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<(Arrow, Vertex, Vertex)>,
}

impl Quiver {
    pub fn conifold() -> Quiver {
        Quiver {
            vertices: Vertex::ALL.to_vec(),
            arrows: Arrow::ALL.iter().map(|&a| (a, a.source(), a.target())).collect(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.vertices.len() == 2
            && self.arrows.len() == 4
            && self
                .arrows
                .iter()
                .all(|&(a, s, t)| a.source() == s && a.target() == t)
    }
}

/// A path in the quiver. The empty path at `v` is the idempotent `e_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: Vertex,
    arrows: Vec<Arrow>,
}

impl Path {
    pub fn idempotent(v: Vertex) -> Path {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(a: Arrow) -> Path {
        Path {
            source: a.source(),
            arrows: vec![a],
        }
    }

    /// Builds a path from arrows in written order; `None` if not composable.
    pub fn from_arrows(arrows: Vec<Arrow>) -> Option<Path> {
        let last = *arrows.last()?;
        for pair in arrows.windows(2) {
            if pair[0].source() != pair[1].target() {
                return None;
            }
        }
        Some(Path {
            source: last.source(),
            arrows,
        })
    }

    /// Parses a word over `xyzw`, or `e0`/`e1` for idempotents.
    pub fn parse(word: &str) -> Result<Path> {
        let w = word.trim();
        match w {
            "e0" => return Ok(Path::idempotent(Vertex::V0)),
            "e1" => return Ok(Path::idempotent(Vertex::V1)),
            _ => {}
        }
        let arrows: Option<Vec<Arrow>> = w.chars().map(Arrow::from_letter).collect();
        let arrows = arrows
            .filter(|a| !a.is_empty())
            .ok_or_else(|| Error::BadInput(format!("not a word over xyzw: {word:?}")))?;
        Path::from_arrows(arrows)
            .ok_or_else(|| Error::BadInput(format!("word is not composable: {word:?}")))
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.arrows.first().map_or(self.source, |a| a.target())
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Path) -> Option<Path> {
        if self.source() != first.target() {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&first.arrows);
        Some(Path {
            source: first.source,
            arrows,
        })
    }

    pub fn word(&self) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source.index())
        } else {
            self.arrows.iter().map(|a| a.letter()).collect()
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.arrows.len(), &self.arrows, self.source).cmp(&(
            other.arrows.len(),
            &other.arrows,
            other.source,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// Finite `Q`-linear combination of paths. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreePathElement {
    terms: BTreeMap<Path, Q>,
}

impl FreePathElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::from_term(p, Q::one())
    }

    pub fn from_term(p: Path, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn arrow(a: Arrow) -> Self {
        Self::from_path(Path::arrow(a))
    }

    pub fn idempotent(v: Vertex) -> Self {
        Self::from_path(Path::idempotent(v))
    }

    /// Parses expressions such as `"yzw - wzy"`, `"2*xy + 1/2*zw"`, `"-e0"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Self::zero();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(out);
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let (coeff, word) = match body.split_once('*') {
                Some((c, w)) => (parse_q(c)?, w),
                None => {
                    let split = body
                        .find(|c: char| c.is_ascii_alphabetic())
                        .ok_or_else(|| Error::BadInput(format!("missing word in {s:?}")))?;
                    let c = &body[..split];
                    let c = if c.is_empty() { Q::one() } else { parse_q(c)? };
                    (c, &body[split..])
                }
            };
            out.add_term(Path::parse(word)?, coeff * q(sign));
        }
        Ok(out)
    }

    pub fn add_term(&mut self, p: Path, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// Common `(source, target)` of all terms, if there is one.
    pub fn grading(&self) -> Option<(Vertex, Vertex)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let g = (first.source(), first.target());
        it.all(|p| (p.source(), p.target()) == g).then_some(g)
    }

    /// Common length of all terms, if there is one.
    pub fn homogeneous_len(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = it.next()?.len();
        it.all(|p| p.len() == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = Self::zero();
        if k.is_zero() {
            return out;
        }
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), c * k);
        }
        out
    }

    /// Product `self · other` (apply `other` first); non-composable pairs give 0.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.after(r) {
                    out.add_term(pr, a * b);
                }
            }
        }
        out
    }

    /// Terms of length at most `n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() <= n)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for FreePathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", show_q(&mag))?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// JSON term `{word, coeff}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

impl FreePathElement {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(p, c)| TermJson {
                word: p.word(),
                coeff: fmt_q(c),
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<Self> {
        let mut out = Self::zero();
        for t in terms {
            out.add_term(Path::parse(&t.word)?, parse_q(&t.coeff)?);
        }
        Ok(out)
    }
}

/// Linear combination of cyclic words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    terms: Vec<(Vec<Arrow>, Q)>,
}

impl Potential {
    /// Builds a potential; every word must be a composable loop.
    pub fn new(terms: Vec<(Vec<Arrow>, Q)>) -> Result<Self> {
        for (w, _) in &terms {
            let p = Path::from_arrows(w.clone())
                .ok_or_else(|| Error::BadInput("potential word not composable".into()))?;
            if p.source() != p.target() {
                return Err(Error::BadInput(format!("potential word {p} is not a loop")));
            }
        }
        Ok(Potential { terms })
    }

    /// `(xyzw)_cyc − (wzyx)_cyc`.
    pub fn conifold() -> Self {
        use Arrow::*;
        Potential::new(vec![(vec![X, Y, Z, W], q(1)), (vec![W, Z, Y, X], q(-1))])
            .expect("conifold potential words are loops")
    }

    pub fn terms(&self) -> &[(Vec<Arrow>, Q)] {
        &self.terms
    }
}

/// Sum over occurrences of `a` of the cyclic word read from just after the
/// occurrence, weighted by the word's coefficient.
pub fn cyclic_derivative(pot: &Potential, a: Arrow) -> FreePathElement {
    let mut out = FreePathElement::zero();
    for (word, c) in pot.terms() {
        let n = word.len();
        for i in (0..n).filter(|&i| word[i] == a) {
            let rest: Vec<Arrow> = (1..n).map(|k| word[(i + k) % n]).collect();
            let path = if rest.is_empty() {
                Path::idempotent(a.source())
            } else {
                Path::from_arrows(rest).expect("rotation of a loop is composable")
            };
            out.add_term(path, c.clone());
        }
    }
    out
}

/// The four relations `∂_xΦ, ∂_yΦ, ∂_zΦ, ∂_wΦ` of the conifold potential.
pub fn relations() -> Vec<FreePathElement> {
    let pot = Potential::conifold();
    Arrow::ALL.iter().map(|&a| cyclic_derivative(&pot, a)).collect()
}

/// All composable words of length `len` starting at `source`, in sorted order.
pub fn words_from(source: Vertex, len: usize) -> Vec<Path> {
    let mut out = vec![Path::idempotent(source)];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 2);
        for p in &out {
            for a in Arrow::from_vertex(p.target()) {
                next.push(Path::arrow(a).after(p).expect("arrow leaves target"));
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CompKey {
    source: Vertex,
    len: usize,
}

/// Triangular basis of the relation span inside one length component.
#[derive(Clone, Debug)]
struct Component {
    words: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Pivot column → row with that leading (largest) column.
    rows: HashMap<usize, BTreeMap<usize, Q>>,
    /// Non-pivot columns, ascending; these words form the basis.
    basis_cols: Vec<usize>,
    /// Column → position in `basis_cols`.
    basis_pos: HashMap<usize, usize>,
    offset: usize,
}

impl Component {
    fn target(&self) -> Vertex {
        self.words[0].target()
    }

    /// Remainder of a sparse vector after triangular reduction.
    fn reduce(&self, mut v: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let mut out = BTreeMap::new();
        while let Some((col, c)) = v.pop_last() {
            match self.rows.get(&col) {
                Some(row) => {
                    let lead = &row[&col];
                    let f = c / lead;
                    for (&j, r) in row.range(..col) {
                        let e = v.entry(j).or_insert_with(Q::zero);
                        *e -= &f * r;
                        if e.is_zero() {
                            v.remove(&j);
                        }
                    }
                }
                None => {
                    out.insert(col, c);
                }
            }
        }
        out
    }

    fn insert(&mut self, v: BTreeMap<usize, Q>) {
        let r = self.reduce(v);
        if let Some((&lead, _)) = r.last_key_value() {
            self.rows.insert(lead, r);
        }
    }
}

/// One row of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub source: Vertex,
    pub target: Vertex,
    pub len: usize,
    pub dim: usize,
}

/// Paths of length `≤ N` modulo the span of `p·r·q` with `|p| + |r| + |q| ≤ N`,
/// computed by exact elimination in each (source, length) component.
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra {
    n: usize,
    comps: BTreeMap<CompKey, Component>,
    basis: Vec<Path>,
}

pub const MAX_TRUNCATION: usize = 12;

impl TruncatedAlgebra {
    /// Truncation of the conifold Jacobi algebra.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_relations(n, &relations())
    }

    /// Truncation of the path algebra modulo the two-sided ideal generated by
    /// `rels`; each relation must be homogeneous in length and endpoints.
    pub fn with_relations(n: usize, rels: &[FreePathElement]) -> Result<Self> {
        if n > MAX_TRUNCATION {
            return Err(Error::TruncationOutOfRange(n));
        }
        for r in rels {
            if !r.is_zero() && (r.grading().is_none() || r.homogeneous_len().is_none()) {
                return Err(Error::BadInput(format!("relation {r} is not homogeneous")));
            }
        }
        let mut comps = BTreeMap::new();
        for source in Vertex::ALL {
            for len in 0..=n {
                let words = words_from(source, len);
                let index = words.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
                comps.insert(
                    CompKey { source, len },
                    Component {
                        words,
                        index,
                        rows: HashMap::new(),
                        basis_cols: Vec::new(),
                        basis_pos: HashMap::new(),
                        offset: 0,
                    },
                );
            }
        }
        for r in rels.iter().filter(|r| !r.is_zero()) {
            let rl = r.homogeneous_len().expect("checked above");
            let (rs, rt) = r.grading().expect("checked above");
            for total in rl..=n {
                for plen in 0..=(total - rl) {
                    let qlen = total - rl - plen;
                    for source in Vertex::ALL {
                        for qp in words_from(source, qlen).into_iter().filter(|w| w.target() == rs) {
                            for pp in words_from(rt, plen) {
                                let comp = comps
                                    .get_mut(&CompKey { source, len: total })
                                    .expect("component exists");
                                let mut v = BTreeMap::new();
                                for (w, c) in r.terms() {
                                    let full = pp.after(w).and_then(|x| x.after(&qp)).expect("composable");
                                    let col = comp.index[&full];
                                    let e = v.entry(col).or_insert_with(Q::zero);
                                    *e += c;
                                }
                                v.retain(|_, c: &mut Q| !c.is_zero());
                                comp.insert(v);
                            }
                        }
                    }
                }
            }
        }
        let mut basis = Vec::new();
        // Global order: by source, then length, then target, then word.
        let mut keys: Vec<CompKey> = comps.keys().cloned().collect();
        keys.sort();
        for key in keys {
            let comp = comps.get_mut(&key).expect("key from map");
            comp.basis_cols = (0..comp.words.len()).filter(|c| !comp.rows.contains_key(c)).collect();
            comp.basis_pos = comp.basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            comp.offset = basis.len();
            basis.extend(comp.basis_cols.iter().map(|&c| comp.words[c].clone()));
        }
        Ok(TruncatedAlgebra { n, comps, basis })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    /// Global basis of coset representatives.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Basis paths from `source` to `target` of length `len`.
    pub fn component_basis(&self, source: Vertex, target: Vertex, len: usize) -> Vec<Path> {
        match self.comps.get(&CompKey { source, len }) {
            Some(c) if c.target() == target => c.basis_cols.iter().map(|&i| c.words[i].clone()).collect(),
            _ => Vec::new(),
        }
    }

    pub fn dim(&self, source: Vertex, target: Vertex, len: usize) -> usize {
        match self.comps.get(&CompKey { source, len }) {
            Some(c) if c.target() == target => c.basis_cols.len(),
            _ => 0,
        }
    }

    pub fn dim_table(&self) -> Vec<DimEntry> {
        self.comps
            .iter()
            .map(|(k, c)| DimEntry {
                source: k.source,
                target: c.target(),
                len: k.len,
                dim: c.basis_cols.len(),
            })
            .collect()
    }

    /// Index of a basis path in the global basis.
    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        let comp = self.comps.get(&CompKey {
            source: p.source(),
            len: p.len(),
        })?;
        let col = comp.index.get(p)?;
        comp.basis_pos.get(col).map(|i| comp.offset + i)
    }

    /// Normal form using only basis paths. Errors on words longer than `N`.
    pub fn normal_form(&self, e: &FreePathElement) -> Result<FreePathElement> {
        if let Some((p, _)) = e.terms().find(|(p, _)| p.len() > self.n) {
            return Err(Error::WordTooLong {
                word: p.word(),
                n: self.n,
            });
        }
        Ok(self.normal_form_truncating(e))
    }

    /// Normal form after discarding words longer than `N` (they are zero).
    pub fn normal_form_truncating(&self, e: &FreePathElement) -> FreePathElement {
        let mut per_comp: BTreeMap<CompKey, BTreeMap<usize, Q>> = BTreeMap::new();
        for (p, c) in e.terms().filter(|(p, _)| p.len() <= self.n) {
            let key = CompKey {
                source: p.source(),
                len: p.len(),
            };
            let col = self.comps[&key].index[p];
            let v = per_comp.entry(key).or_default();
            let entry = v.entry(col).or_insert_with(Q::zero);
            *entry += c;
        }
        let mut out = FreePathElement::zero();
        for (key, mut v) in per_comp {
            v.retain(|_, c| !c.is_zero());
            let comp = &self.comps[&key];
            for (col, c) in comp.reduce(v) {
                out.add_term(comp.words[col].clone(), c);
            }
        }
        out
    }

    /// Coordinates of the coset of `e` in the global basis.
    pub fn reduce(&self, e: &FreePathElement) -> Result<Vec<Q>> {
        let nf = self.normal_form(e)?;
        let mut v = vec![Q::zero(); self.total_dim()];
        for (p, c) in nf.terms() {
            let i = self.basis_index(p).expect("normal forms use basis paths");
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// True iff `e` lies in the relation ideal (within the truncation).
    pub fn is_zero(&self, e: &FreePathElement) -> Result<bool> {
        Ok(self.normal_form(e)?.is_zero())
    }

    /// Product of the `i`-th and `j`-th global basis elements, in coordinates.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Q> {
        let prod = FreePathElement::from_path(self.basis[i].clone())
            .mul(&FreePathElement::from_path(self.basis[j].clone()));
        let nf = self.normal_form_truncating(&prod);
        let mut v = vec![Q::zero(); self.total_dim()];
        for (p, c) in nf.terms() {
            v[self.basis_index(p).expect("basis path")] = c.clone();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fpe(s: &str) -> FreePathElement {
        FreePathElement::parse(s).unwrap()
    }

    #[test]
    fn quiver_shape() {
        let qv = Quiver::conifold();
        assert!(qv.is_valid());
        assert_eq!(Arrow::X.source(), Vertex::V0);
        assert_eq!(Arrow::W.target(), Vertex::V0);
    }

    #[test]
    fn relation_words_are_composable() {
        for w in ["xyz", "zyx", "yzw", "wzy", "zwx", "xwz", "wxy", "yxw"] {
            assert!(Path::parse(w).is_ok(), "{w}");
        }
        assert!(Path::parse("zwy").is_err());
        assert!(Path::parse("xx").is_err());
    }

    #[test]
    fn path_source_target_right_to_left() {
        let p = Path::parse("xyz").unwrap();
        assert_eq!(p.source(), Vertex::V0);
        assert_eq!(p.target(), Vertex::V1);
        let yx = Path::parse("yx").unwrap();
        assert_eq!((yx.source(), yx.target()), (Vertex::V0, Vertex::V0));
    }

    #[test]
    fn cyclic_derivatives_match_listed_relations() {
        let pot = Potential::conifold();
        assert_eq!(cyclic_derivative(&pot, Arrow::X), fpe("yzw - wzy"));
        assert_eq!(cyclic_derivative(&pot, Arrow::Y), fpe("zwx - xwz"));
        assert_eq!(cyclic_derivative(&pot, Arrow::Z), fpe("wxy - yxw"));
        assert_eq!(cyclic_derivative(&pot, Arrow::W), fpe("xyz - zyx"));
        let single = Potential::new(vec![(vec![Arrow::X, Arrow::Y, Arrow::Z, Arrow::W], q(1))]).unwrap();
        assert_eq!(cyclic_derivative(&single, Arrow::X), fpe("yzw"));
    }

    #[test]
    fn relations_shape() {
        let rels = relations();
        assert_eq!(rels.len(), 4);
        assert!(rels.contains(&fpe("xyz - zyx")));
        for r in &rels {
            assert_eq!(r.num_terms(), 2);
            assert_eq!(r.homogeneous_len(), Some(3));
            assert!(r.grading().is_some());
        }
    }

    #[test]
    fn potential_rejects_non_loops() {
        assert!(Potential::new(vec![(vec![Arrow::X, Arrow::Y, Arrow::Z], q(1))]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let e = fpe("2*xy - 1/2*zw + e0");
        assert_eq!(e.num_terms(), 3);
        assert_eq!(FreePathElement::parse(&e.to_string()).unwrap(), e);
        assert_eq!(FreePathElement::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn multiplication_composes_right_to_left() {
        let x = FreePathElement::arrow(Arrow::X);
        let y = FreePathElement::arrow(Arrow::Y);
        assert_eq!(x.mul(&y), fpe("xy"));
        assert!(x.mul(&x).is_zero());
        let e0 = FreePathElement::idempotent(Vertex::V0);
        assert_eq!(x.mul(&e0), x);
        assert!(e0.mul(&x).is_zero());
    }

    #[test]
    fn truncated_dimensions() {
        let a0 = TruncatedAlgebra::new(0).unwrap();
        assert_eq!(a0.total_dim(), 2);
        let a2 = TruncatedAlgebra::new(2).unwrap();
        assert_eq!(a2.dim(Vertex::V0, Vertex::V0, 2), 4);
        let a4 = TruncatedAlgebra::new(4).unwrap();
        assert_eq!(a4.dim(Vertex::V0, Vertex::V0, 4), 9);
        assert_eq!(a4.dim(Vertex::V0, Vertex::V1, 3), 6);
        assert!(TruncatedAlgebra::new(13).is_err());
    }

    #[test]
    fn reduce_kills_relations_and_identifies_words() {
        let a = TruncatedAlgebra::new(4).unwrap();
        assert!(a.reduce(&fpe("xyz - zyx")).unwrap().iter().all(Zero::is_zero));
        assert_eq!(a.reduce(&fpe("yzw")).unwrap(), a.reduce(&fpe("wzy")).unwrap());
        assert!(a.reduce(&FreePathElement::zero()).unwrap().iter().all(Zero::is_zero));
        assert!(matches!(a.reduce(&fpe("xyxyx")), Err(Error::WordTooLong { .. })));
    }

    #[test]
    fn basis_products() {
        let a = TruncatedAlgebra::new(3).unwrap();
        let x = a.basis_index(&Path::parse("x").unwrap()).unwrap();
        let e0 = a.basis_index(&Path::parse("e0").unwrap()).unwrap();
        assert_eq!(a.mul_basis(x, e0), a.reduce(&fpe("x")).unwrap());
        assert!(a.mul_basis(e0, x).iter().all(Zero::is_zero));
    }

    /// Independent oracle: every relation is a difference of two words, so a
    /// component's dimension is the number of word classes under the induced
    /// identifications.
    fn union_find_dim(source: Vertex, len: usize) -> usize {
        let words = words_from(source, len);
        let idx: HashMap<Path, usize> = words.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        let pairs = [("yzw", "wzy"), ("zwx", "xwz"), ("wxy", "yxw"), ("xyz", "zyx")];
        for w in &words {
            let s: String = w.arrows().iter().map(|a| a.letter()).collect();
            for (l, r) in pairs {
                for (pos, _) in s.match_indices(l) {
                    let other = format!("{}{}{}", &s[..pos], r, &s[pos + 3..]);
                    let j = idx[&Path::parse(&other).unwrap()];
                    let (a, b) = (find(&mut parent, idx[w]), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        (0..words.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    #[test]
    fn union_find_oracle_agrees() {
        let a = TruncatedAlgebra::new(8).unwrap();
        for v in Vertex::ALL {
            for len in 0..=8 {
                let t = if len % 2 == 0 { v } else { v.other() };
                assert_eq!(a.dim(v, t, len), union_find_dim(v, len), "{v} len {len}");
            }
        }
    }

    #[test]
    fn hilbert_function_of_conifold_ring() {
        let binom3 = |n: usize| if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
        let a = TruncatedAlgebra::new(10).unwrap();
        for k in 0..=5 {
            assert_eq!(a.dim(Vertex::V0, Vertex::V0, 2 * k), binom3(k + 3) - binom3(k + 1), "k={k}");
        }
    }
}
