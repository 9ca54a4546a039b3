//! String combinatorics over gentle quivers and the 0/1 realizations of
//! string modules.
//!
//! A word `c_1 … c_n` satisfies `s(c_i) = t(c_{i+1})`. Its walk visits
//! `u(0) = t(c_1)`, `u(i) = s(c_i)`; basis vector `b_i` of `M(w)` sits at
//! `u(i)`. A direct letter `c_i = α` acts by `b_i ↦ b_{i−1}`, an inverse letter
//! `c_i = α^{-1}` by `b_{i−1} ↦ b_i`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffla::{Matrix, PrimeField};
use crate::quiver::{require_gentle, ArrowId, BoundQuiver, DimVector, VertexId};
use crate::rep::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    pub fn source(self, q: &BoundQuiver) -> VertexId {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(self, q: &BoundQuiver) -> VertexId {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn display(self, q: &BoundQuiver) -> String {
        if self.inverse {
            format!("{}^-1", q.arrow_name(self.arrow))
        } else {
            q.arrow_name(self.arrow).to_owned()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StringWord {
    Trivial { vertex: VertexId, sign: i8 },
    Letters(Vec<Letter>),
}

impl StringWord {
    pub fn trivial(vertex: VertexId) -> Self {
        StringWord::Trivial { vertex, sign: 1 }
    }

    pub fn len(&self) -> usize {
        match self {
            StringWord::Trivial { .. } => 0,
            StringWord::Letters(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            StringWord::Trivial { .. } => &[],
            StringWord::Letters(l) => l,
        }
    }

    pub fn inverse(&self) -> StringWord {
        match self {
            StringWord::Trivial { vertex, sign } => StringWord::Trivial { vertex: *vertex, sign: -sign },
            StringWord::Letters(l) => StringWord::Letters(l.iter().rev().map(|c| c.inverted()).collect()),
        }
    }

    /// Vertices `u(0), …, u(n)` visited by the walk.
    pub fn walk(&self, q: &BoundQuiver) -> Vec<VertexId> {
        match self {
            StringWord::Trivial { vertex, .. } => vec![*vertex],
            StringWord::Letters(l) => {
                let mut u = vec![l[0].target(q)];
                u.extend(l.iter().map(|c| c.source(q)));
                u
            }
        }
    }

    /// Starting vertex `s(w) = u(n)`.
    pub fn start(&self, q: &BoundQuiver) -> VertexId {
        *self.walk(q).last().expect("non-empty walk")
    }

    /// Ending vertex `t(w) = u(0)`.
    pub fn end(&self, q: &BoundQuiver) -> VertexId {
        self.walk(q)[0]
    }

    pub fn display(&self, q: &BoundQuiver) -> String {
        match self {
            StringWord::Trivial { vertex, sign } => {
                format!("1_({},{})", q.vertex_name(*vertex), if *sign > 0 { "+1" } else { "-1" })
            }
            StringWord::Letters(l) => l.iter().map(|c| c.display(q)).collect::<Vec<_>>().join(" "),
        }
    }

    fn key(&self) -> (usize, Vec<Letter>, i8) {
        match self {
            StringWord::Trivial { vertex, sign } => (*vertex, Vec::new(), -*sign),
            StringWord::Letters(l) => (usize::MAX, l.clone(), 0),
        }
    }
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StringWord {
    /// Trivial strings first (by vertex, `+1` first), then words compared
    /// letterwise by `(arrow index, inverse flag)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StringWord::Trivial { vertex, sign } => write!(f, "1_({vertex},{sign})"),
            StringWord::Letters(l) => {
                let parts: Vec<String> =
                    l.iter().map(|c| format!("{}{}", c.arrow, if c.inverse { "^-1" } else { "" })).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

fn invalid(position: usize, reason: impl Into<String>) -> Error {
    Error::InvalidString { position, reason: reason.into() }
}

/// Validates a letter sequence; `position` in errors is 1-based.
pub fn validate_string(q: &BoundQuiver, letters: &[Letter]) -> Result<StringWord> {
    if letters.is_empty() {
        return Err(invalid(0, "empty letter sequence; use a trivial string"));
    }
    for (i, c) in letters.iter().enumerate() {
        if c.arrow >= q.arrow_count() {
            return Err(invalid(i + 1, "unknown arrow"));
        }
    }
    for i in 0..letters.len() - 1 {
        let (c, d) = (letters[i], letters[i + 1]);
        if c.source(q) != d.target(q) {
            return Err(invalid(i + 1, format!("{} does not start where {} ends", c.display(q), d.display(q))));
        }
        if d == c.inverted() {
            return Err(invalid(i + 1, format!("{} is followed by its inverse", c.display(q))));
        }
    }
    // every maximal run of equally oriented letters must be a nonzero path
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j + 1 < letters.len() && letters[j + 1].inverse == letters[i].inverse {
            j += 1;
        }
        let run: Vec<ArrowId> = letters[i..=j].iter().map(|c| c.arrow).collect();
        let path: Vec<ArrowId> = if letters[i].inverse { run } else { run.into_iter().rev().collect() };
        if !q.is_nonzero_path(&path) {
            // locate the first offending prefix for the report
            let bad = (2..=path.len()).find(|&k| !q.is_nonzero_path(&path[..k])).unwrap_or(path.len());
            let pos = if letters[i].inverse { i + bad - 1 } else { j + 2 - bad };
            return Err(invalid(pos, "subword lies in the relation ideal"));
        }
        i = j + 1;
    }
    Ok(StringWord::Letters(letters.to_vec()))
}

/// Parses `a b^-1 c` against the quiver's arrow names.
pub fn parse_letters(q: &BoundQuiver, text: &str) -> Result<Vec<Letter>> {
    text.split_whitespace()
        .map(|tok| {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            q.arrow_id(name).map(|arrow| Letter { arrow, inverse }).ok_or_else(|| Error::UnknownArrow(name.into()))
        })
        .collect()
}

/// `w ~ v` iff `w = v` or `w = v^{-1}`; trivial strings at one vertex agree.
pub fn string_equiv(v: &StringWord, w: &StringWord) -> bool {
    match (v, w) {
        (StringWord::Trivial { vertex: a, .. }, StringWord::Trivial { vertex: b, .. }) => a == b,
        _ => v == w || *v == w.inverse(),
    }
}

/// Representative of `{w, w^{-1}}`: the smaller in letter order; trivial
/// strings take sign `+1`.
pub fn canonical(w: &StringWord) -> StringWord {
    match w {
        StringWord::Trivial { vertex, .. } => StringWord::trivial(*vertex),
        _ => std::cmp::min(w.clone(), w.inverse()),
    }
}

fn is_string(q: &BoundQuiver, letters: &[Letter]) -> bool {
    validate_string(q, letters).is_ok()
}

/// Closed walk all of whose powers are strings and which is not a proper power.
pub fn is_band(q: &BoundQuiver, w: &StringWord) -> bool {
    let l = match w {
        StringWord::Trivial { .. } => return false,
        StringWord::Letters(l) => l,
    };
    if l[0].target(q) != l[l.len() - 1].source(q) {
        return false;
    }
    let squared: Vec<Letter> = l.iter().chain(l.iter()).copied().collect();
    if !is_string(q, &squared) {
        return false;
    }
    let n = l.len();
    !(1..n).any(|d| n % d == 0 && (0..n).all(|i| l[i] == l[i % d]))
}

pub fn dimv_of_string(q: &BoundQuiver, w: &StringWord) -> DimVector {
    let mut d = DimVector::zero(q.vertex_count());
    for u in w.walk(q) {
        d.0[u] += 1;
    }
    d
}

/// A string word with its explicit module.
#[derive(Clone, Debug)]
pub struct StringModule {
    pub word: StringWord,
    pub rep: Representation,
    pub dim: DimVector,
}

/// Builds `M(w)` with 0/1 matrices; basis at each vertex ordered by walk index.
///
/// Band words are accepted: the result is the string module of the word read
/// as a string (e.g. the projective `P_1` of the Kronecker quiver).
pub fn string_module(q: &Arc<BoundQuiver>, w: &StringWord, field: PrimeField) -> Result<StringModule> {
    if let StringWord::Letters(l) = w {
        validate_string(q, l)?;
    }
    let walk = w.walk(q);
    let n = q.vertex_count();
    let mut dims = vec![0usize; n];
    let mut index = Vec::with_capacity(walk.len());
    for &u in &walk {
        index.push(dims[u]);
        dims[u] += 1;
    }
    let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
    for (i, c) in w.letters().iter().enumerate() {
        let i = i + 1;
        let (from, to) = if c.inverse { (i - 1, i) } else { (i, i - 1) };
        maps[c.arrow].set(index[to], index[from], 1);
    }
    let rep = Representation::new(q.clone(), field, dims, maps)?;
    let dim = dimv_of_string(q, w);
    Ok(StringModule { word: w.clone(), rep, dim })
}

/// Maximal nonzero path (traversal order) starting with `first`.
fn maximal_path_from(q: &BoundQuiver, first: ArrowId) -> Vec<ArrowId> {
    let mut path = vec![first];
    loop {
        let last = *path.last().expect("non-empty");
        let next = q.out_arrows(q.arrow(last).target).into_iter().find(|&b| !q.is_relation(b, last));
        match next {
            Some(b) if path.len() <= q.arrow_count() * 2 => path.push(b),
            _ => return path,
        }
    }
}

/// Maximal nonzero path (traversal order) ending with `last`.
fn maximal_path_into(q: &BoundQuiver, last: ArrowId) -> Vec<ArrowId> {
    let mut rev = vec![last];
    loop {
        let first = *rev.last().expect("non-empty");
        let prev = q.in_arrows(q.arrow(first).source).into_iter().find(|&b| !q.is_relation(first, b));
        match prev {
            Some(b) if rev.len() <= q.arrow_count() * 2 => rev.push(b),
            _ => return rev.into_iter().rev().collect(),
        }
    }
}

/// String of `P_v`: the two maximal paths out of `v` glued at `v`, the one
/// through the lower-indexed arrow read directly.
pub fn projective_string(q: &BoundQuiver, v: VertexId) -> Result<StringWord> {
    require_gentle(q)?;
    let out = q.out_arrows(v);
    let mut letters = Vec::new();
    if let Some(&a) = out.first() {
        letters.extend(maximal_path_from(q, a).into_iter().rev().map(Letter::direct));
    }
    if let Some(&g) = out.get(1) {
        letters.extend(maximal_path_from(q, g).into_iter().map(Letter::inv));
    }
    Ok(if letters.is_empty() { StringWord::trivial(v) } else { validate_string(q, &letters)? })
}

/// String of `I_v`: the two maximal paths into `v`, the one through the
/// lower-indexed arrow read directly.
pub fn injective_string(q: &BoundQuiver, v: VertexId) -> Result<StringWord> {
    require_gentle(q)?;
    let inn = q.in_arrows(v);
    let mut letters = Vec::new();
    if let Some(&b) = inn.get(1) {
        // b_n^{-1} … b_1^{-1} where b_1 ends at v
        letters.extend(maximal_path_into(q, b).into_iter().map(Letter::inv));
    }
    if let Some(&a) = inn.first() {
        letters.extend(maximal_path_into(q, a).into_iter().rev().map(Letter::direct));
    }
    Ok(if letters.is_empty() { StringWord::trivial(v) } else { validate_string(q, &letters)? })
}

/// The maximal nonzero path continuing after `α`, as the string of `R(α) = Λα`.
pub fn radical_summand_string(q: &BoundQuiver, alpha: ArrowId) -> Result<StringWord> {
    require_gentle(q)?;
    let t = q.arrow(alpha).target;
    let next = q.out_arrows(t).into_iter().find(|&b| !q.is_relation(b, alpha));
    Ok(match next {
        None => StringWord::trivial(t),
        Some(b) => {
            let letters: Vec<Letter> = maximal_path_from(q, b).into_iter().rev().map(Letter::direct).collect();
            validate_string(q, &letters)?
        }
    })
}

/// All strings of length `1..=max_len` up to inversion (canonical
/// representatives), preceded by the trivial strings; sorted.
pub fn enumerate_strings(q: &BoundQuiver, max_len: usize) -> Vec<StringWord> {
    let mut out: Vec<StringWord> = (0..q.vertex_count()).map(StringWord::trivial).collect();
    let all: Vec<Letter> = (0..q.arrow_count()).flat_map(|a| [Letter::direct(a), Letter::inv(a)]).collect();
    let mut frontier: Vec<Vec<Letter>> = all.iter().map(|&c| vec![c]).collect();
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in frontier {
            let w = StringWord::Letters(word.clone());
            if canonical(&w) == w && seen.insert(w.clone()) {
                out.push(w);
            }
            for &c in &all {
                let mut ext = word.clone();
                ext.push(c);
                if is_string(q, &ext) {
                    next.push(ext);
                }
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::PrimeField;
    use crate::rep::{injective_module, iso_probable, projective_module, IsoVerdict};
    use crate::samples;

    fn word(q: &BoundQuiver, s: &str) -> Vec<Letter> {
        parse_letters(q, s).unwrap()
    }

    #[test]
    fn validity() {
        let q = samples::n3();
        assert!(validate_string(&q, &word(&q, "gamma")).is_ok());
        let e = validate_string(&q, &word(&q, "beta alpha")).unwrap_err();
        assert!(matches!(e, Error::InvalidString { position: 1, .. }), "{e}");
        assert!(validate_string(&q, &word(&q, "alpha^-1 beta^-1")).is_err());
        assert!(validate_string(&q, &word(&q, "alpha alpha^-1")).is_err());
        assert!(validate_string(&q, &word(&q, "alpha beta")).is_err());
        let k = samples::kronecker();
        assert!(validate_string(&k, &word(&k, "a b^-1")).is_ok());
        let a3 = samples::a3_rel();
        assert!(validate_string(&a3, &word(&a3, "beta alpha")).is_err());
    }

    #[test]
    fn equivalence_and_canonical() {
        let q = samples::n3();
        let a = StringWord::Letters(word(&q, "alpha"));
        let ai = StringWord::Letters(word(&q, "alpha^-1"));
        let b = StringWord::Letters(word(&q, "beta"));
        assert!(string_equiv(&a, &ai));
        assert!(!string_equiv(&a, &b));
        assert!(string_equiv(&StringWord::Trivial { vertex: 1, sign: 1 }, &StringWord::Trivial { vertex: 1, sign: -1 }));
        assert_eq!(canonical(&ai), a);
    }

    #[test]
    fn bands() {
        let q = samples::n3();
        assert!(!is_band(&q, &StringWord::Letters(word(&q, "alpha"))));
        let k = samples::kronecker();
        assert!(is_band(&k, &StringWord::Letters(word(&k, "a b^-1"))));
        assert!(!is_band(&k, &StringWord::Letters(word(&k, "a b^-1 a b^-1"))));
        let a2 = samples::a2();
        assert!(!is_band(&a2, &StringWord::Letters(word(&a2, "alpha"))));
    }

    #[test]
    fn dimension_vectors_and_modules() {
        let q = Arc::new(samples::n3());
        let f = PrimeField::new(101).unwrap();
        let g = StringWord::Letters(word(&q, "gamma"));
        assert_eq!(dimv_of_string(&q, &g).0, vec![1, 0, 1]);
        assert_eq!(dimv_of_string(&q, &StringWord::trivial(1)).0, vec![0, 1, 0]);
        let m = string_module(&q, &g, f).unwrap();
        assert_eq!(m.rep.dims(), &[1, 0, 1]);
        let gi = q.arrow_id("gamma").unwrap();
        assert_eq!(m.rep.map(gi).get(0, 0), 1);
        let p3 = projective_module(&q, f, 2).unwrap().rep;
        assert_eq!(iso_probable(&m.rep, &p3, 16, 0).unwrap(), IsoVerdict::Isomorphic);
        let s1 = string_module(&q, &StringWord::trivial(0), f).unwrap();
        assert_eq!(s1.rep, Representation::simple(q.clone(), f, 0));
    }

    #[test]
    fn inverse_word_gives_isomorphic_module() {
        let q = Arc::new(samples::ct5());
        let f = PrimeField::new(7).unwrap();
        for w in enumerate_strings(&q, 4) {
            let a = string_module(&q, &w, f).unwrap();
            let b = string_module(&q, &w.inverse(), f).unwrap();
            assert_eq!(iso_probable(&a.rep, &b.rep, 16, 1).unwrap(), IsoVerdict::Isomorphic, "{}", w.display(&q));
            assert_eq!(a.dim, a.rep.dim_vector());
        }
    }

    #[test]
    fn distinguished_strings() {
        let q = samples::n3();
        assert_eq!(projective_string(&q, 2).unwrap().display(&q), "gamma");
        assert_eq!(injective_string(&q, 2).unwrap().display(&q), "beta");
        let a = q.arrow_id("alpha").unwrap();
        assert_eq!(radical_summand_string(&q, a).unwrap(), StringWord::trivial(1));
        let a2 = samples::a2();
        assert_eq!(projective_string(&a2, 0).unwrap().display(&a2), "alpha");
        assert_eq!(radical_summand_string(&a2, 0).unwrap(), StringWord::trivial(1));
        let ct5 = samples::ct5();
        let a2i = ct5.arrow_id("a2").unwrap();
        assert_eq!(radical_summand_string(&ct5, a2i).unwrap().display(&ct5), "a4");
    }

    #[test]
    fn distinguished_strings_realize_projectives_and_injectives() {
        let f = PrimeField::new(101).unwrap();
        for q in [samples::n3(), samples::ct5(), samples::a3_rel(), samples::kronecker(), samples::a2()] {
            let q = Arc::new(q);
            for v in 0..q.vertex_count() {
                let ps = string_module(&q, &projective_string(&q, v).unwrap(), f).unwrap();
                let p = projective_module(&q, f, v).unwrap().rep;
                assert!(iso_probable(&ps.rep, &p, 16, 0).unwrap().is_iso());
                let is = string_module(&q, &injective_string(&q, v).unwrap(), f).unwrap();
                let i = injective_module(&q, f, v).unwrap();
                assert!(iso_probable(&is.rep, &i, 16, 0).unwrap().is_iso());
            }
        }
    }

    #[test]
    fn enumeration_is_canonical() {
        let q = samples::n3();
        let ws = enumerate_strings(&q, 6);
        // three trivial strings and the three arrows
        assert_eq!(ws.len(), 6);
        for w in &ws {
            assert_eq!(canonical(w), *w);
        }
    }
}
