//! Bound quivers with monomial relations, gentleness checks, the cycle set
//! `C(Λ)` and the Euler form.
//!
//! Path convention: a relation written `rel beta alpha` is the path "alpha,
//! then beta". Internally every relation is stored in traversal order, first
//! arrow first.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver together with a set of monomial zero relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    name: Option<String>,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    /// Relations in traversal order (first arrow first), as written order.
    relations: Vec<Vec<ArrowId>>,
    /// `rel2[earlier * n + later]` for length-2 relations.
    rel2: Vec<bool>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl BoundQuiver {
    pub fn new(name: Option<&str>) -> Self {
        BoundQuiver {
            name: name.map(str::to_owned),
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            rel2: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::Duplicate { line: 0, kind: "vertex", name: name.into() });
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_owned());
        self.vertex_index.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: VertexId, target: VertexId) -> Result<ArrowId> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::Duplicate { line: 0, kind: "arrow", name: name.into() });
        }
        assert!(source < self.vertices.len() && target < self.vertices.len());
        let id = self.arrows.len();
        self.arrows.push(Arrow { name: name.to_owned(), source, target });
        self.arrow_index.insert(name.to_owned(), id);
        self.rebuild_rel2();
        Ok(id)
    }

    /// Adds a zero relation given in traversal order (first arrow first).
    pub fn add_relation(&mut self, path: &[ArrowId]) -> Result<()> {
        if path.len() < 2 {
            return Err(Error::Parse { line: 0, msg: "relations must have length at least 2".into() });
        }
        for w in path.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NonComposableRelation {
                    line: 0,
                    later: self.arrows[w[1]].name.clone(),
                    earlier: self.arrows[w[0]].name.clone(),
                });
            }
        }
        if !self.relations.iter().any(|r| r == path) {
            self.relations.push(path.to_vec());
            if path.len() == 2 {
                let n = self.arrows.len();
                self.rel2[path[0] * n + path[1]] = true;
            }
        }
        Ok(())
    }

    fn rebuild_rel2(&mut self) {
        let n = self.arrows.len();
        self.rel2 = vec![false; n * n];
        for r in &self.relations {
            if r.len() == 2 {
                self.rel2[r[0] * n + r[1]] = true;
            }
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = Some(name.to_owned());
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    /// Relations in traversal order (first arrow first).
    pub fn relations(&self) -> &[Vec<ArrowId>] {
        &self.relations
    }

    /// True iff "`earlier`, then `later`" is a length-2 relation.
    #[inline]
    pub fn is_relation(&self, later: ArrowId, earlier: ArrowId) -> bool {
        self.rel2[earlier * self.arrows.len() + later]
    }

    pub fn out_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn in_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.source == a.target)
    }

    /// True iff the path (traversal order) contains no relation as a subpath.
    pub fn is_nonzero_path(&self, path: &[ArrowId]) -> bool {
        if path.windows(2).any(|w| self.arrows[w[0]].target != self.arrows[w[1]].source) {
            return false;
        }
        self.relations.iter().all(|r| !path.windows(r.len()).any(|w| w == r.as_slice()))
    }

    /// All nonzero paths starting at `v`, trivial path first, in depth-first
    /// order following arrow indices. Fails on infinite-dimensional algebras.
    pub fn nonzero_paths_from(&self, v: VertexId) -> Result<Vec<Vec<ArrowId>>> {
        let limit = self.path_length_limit();
        let mut out = vec![Vec::new()];
        let mut stack: Vec<Vec<ArrowId>> = vec![Vec::new()];
        while let Some(p) = stack.pop() {
            let end = p.last().map_or(v, |&a| self.arrows[a].target);
            let mut ext = Vec::new();
            for b in self.out_arrows(end) {
                let mut q = p.clone();
                q.push(b);
                if self.is_nonzero_path(&q) {
                    if q.len() > limit {
                        return Err(Error::InfiniteDimensional(self.arrows[b].name.clone()));
                    }
                    ext.push(q);
                }
            }
            for q in ext.into_iter().rev() {
                stack.push(q.clone());
                out.push(q);
            }
        }
        // deterministic order: sort by (first arrow, length-lexicographic)
        out.sort();
        Ok(out)
    }

    fn path_length_limit(&self) -> usize {
        let m = self.relations.iter().map(Vec::len).max().unwrap_or(2);
        self.arrows.len().pow(m.saturating_sub(1).max(1) as u32) * m + 1
    }

    /// Detects infinite-dimensionality: returns an arrow lying on an
    /// arbitrarily long nonzero path, if any.
    pub fn infinite_path_witness(&self) -> Option<ArrowId> {
        let limit = self.path_length_limit();
        for v in 0..self.vertices.len() {
            // bounded DFS; any path longer than the limit revisits a state
            let mut stack: Vec<Vec<ArrowId>> = vec![Vec::new()];
            while let Some(p) = stack.pop() {
                if p.len() > limit {
                    return p.last().copied();
                }
                let end = p.last().map_or(v, |&a| self.arrows[a].target);
                for b in self.out_arrows(end) {
                    let mut q = p.clone();
                    q.push(b);
                    if self.is_nonzero_path(&q) {
                        stack.push(q);
                    }
                }
            }
        }
        None
    }

    /// The opposite bound quiver: arrows reversed, relations reversed.
    pub fn opposite(&self) -> BoundQuiver {
        let mut q = BoundQuiver::new(self.name.as_deref());
        for v in &self.vertices {
            q.add_vertex(v).expect("distinct vertices");
        }
        for a in &self.arrows {
            q.add_arrow(&a.name, a.target, a.source).expect("distinct arrows");
        }
        for r in &self.relations {
            let rev: Vec<ArrowId> = r.iter().rev().copied().collect();
            q.add_relation(&rev).expect("reversed relation composes");
        }
        q
    }

    /// Serializes in the line-oriented bound-quiver format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("quiver {n}\n"));
        }
        for v in &self.vertices {
            s.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            s.push_str(&format!("arrow {} {} {}\n", a.name, self.vertices[a.source], self.vertices[a.target]));
        }
        for r in &self.relations {
            let names: Vec<&str> = r.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
            s.push_str(&format!("rel {}\n", names.join(" ")));
        }
        s
    }
}

/// Parses the bound-quiver text format.
///
/// ```text
/// quiver N3            # optional name
/// vertex 1
/// arrow alpha 1 2
/// rel beta alpha       # alpha, then beta, is zero
/// ```
pub fn parse_quiver(text: &str) -> Result<BoundQuiver> {
    enum Pending<'a> {
        Arrow(usize, &'a str, &'a str, &'a str),
        Rel(usize, Vec<&'a str>),
    }
    let mut q = BoundQuiver::new(None);
    let mut pending = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else { continue };
        match (head, rest.len()) {
            ("quiver", 1) => q.name = Some(rest[0].to_owned()),
            ("vertex", 1) => {
                q.add_vertex(rest[0])
                    .map_err(|_| Error::Duplicate { line, kind: "vertex", name: rest[0].into() })?;
            }
            ("arrow", 3) => pending.push(Pending::Arrow(line, rest[0], rest[1], rest[2])),
            ("rel", n) if n >= 2 => pending.push(Pending::Rel(line, rest.to_vec())),
            _ => return Err(Error::Parse { line, msg: format!("unrecognized directive `{}`", content.trim()) }),
        }
    }
    let lookup_vertex = |q: &BoundQuiver, line, name: &str| {
        q.vertex_id(name).ok_or_else(|| Error::Unknown { line, kind: "vertex", name: name.into() })
    };
    for p in &pending {
        if let Pending::Arrow(line, name, s, t) = *p {
            let (s, t) = (lookup_vertex(&q, line, s)?, lookup_vertex(&q, line, t)?);
            q.add_arrow(name, s, t).map_err(|_| Error::Duplicate { line, kind: "arrow", name: name.into() })?;
        }
    }
    for p in &pending {
        if let Pending::Rel(line, names) = p {
            let mut path = Vec::new();
            for n in names.iter().rev() {
                path.push(q.arrow_id(n).ok_or_else(|| Error::Unknown { line: *line, kind: "arrow", name: (*n).into() })?);
            }
            q.add_relation(&path).map_err(|e| match e {
                Error::NonComposableRelation { later, earlier, .. } => {
                    Error::NonComposableRelation { line: *line, later, earlier }
                }
                other => other,
            })?;
        }
    }
    Ok(q)
}

/// Outcome of a structural check, with one line per violation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl CheckReport {
    fn from_violations(violations: Vec<String>) -> Self {
        CheckReport { ok: violations.is_empty(), violations }
    }
}

pub fn is_special_biserial(q: &BoundQuiver) -> CheckReport {
    let mut v = Vec::new();
    for x in 0..q.vertex_count() {
        let out = q.out_arrows(x).len();
        let inn = q.in_arrows(x).len();
        if out > 2 {
            v.push(format!("vertex {} is the start of {out} arrows", q.vertex_name(x)));
        }
        if inn > 2 {
            v.push(format!("vertex {} is the end of {inn} arrows", q.vertex_name(x)));
        }
    }
    for a in 0..q.arrow_count() {
        let after: Vec<ArrowId> = q
            .out_arrows(q.arrow(a).target)
            .into_iter()
            .filter(|&b| !q.relations().iter().any(|r| r.as_slice() == [a, b]))
            .collect();
        if after.len() > 1 {
            v.push(format!("arrow {} has {} non-zero continuations", q.arrow_name(a), after.len()));
        }
        let before: Vec<ArrowId> = q
            .in_arrows(q.arrow(a).source)
            .into_iter()
            .filter(|&b| !q.relations().iter().any(|r| r.as_slice() == [b, a]))
            .collect();
        if before.len() > 1 {
            v.push(format!("arrow {} has {} non-zero predecessors", q.arrow_name(a), before.len()));
        }
    }
    CheckReport::from_violations(v)
}

pub fn is_gentle(q: &BoundQuiver) -> CheckReport {
    let mut v = is_special_biserial(q).violations;
    for r in q.relations() {
        if r.len() != 2 {
            let names: Vec<&str> = r.iter().rev().map(|&a| q.arrow_name(a)).collect();
            v.push(format!("relation `{}` has length {}", names.join(" "), r.len()));
        }
    }
    for a in 0..q.arrow_count() {
        let after = q.out_arrows(q.arrow(a).target).into_iter().filter(|&b| q.is_relation(b, a)).count();
        if after > 1 {
            v.push(format!("arrow {} starts {after} relations", q.arrow_name(a)));
        }
        let before = q.in_arrows(q.arrow(a).source).into_iter().filter(|&b| q.is_relation(a, b)).count();
        if before > 1 {
            v.push(format!("arrow {} ends {before} relations", q.arrow_name(a)));
        }
    }
    if let Some(a) = q.infinite_path_witness() {
        v.push(format!("algebra is infinite-dimensional (unbounded path through {})", q.arrow_name(a)));
    }
    CheckReport::from_violations(v)
}

pub(crate) fn require_gentle(q: &BoundQuiver) -> Result<()> {
    let r = is_gentle(q);
    if r.ok {
        Ok(())
    } else {
        Err(Error::NotGentle(r.violations.join("; ")))
    }
}

/// An element of `C(Λ)`: a repetition-free cyclic path all of whose
/// consecutive compositions are relations.
///
/// `letters` follows the right-to-left notation, so
/// `(letters[i], letters[i+1])` is a relation "(later, earlier)" for all `i`
/// (indices mod n). It is rotated so the least arrow name comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleClass {
    pub letters: Vec<ArrowId>,
}

impl CycleClass {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The arrows in the order they are traversed.
    pub fn traversal(&self) -> Vec<ArrowId> {
        self.letters.iter().rev().copied().collect()
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.letters.contains(&a)
    }

    pub fn display(&self, q: &BoundQuiver) -> String {
        self.letters.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(" ")
    }
}

/// `C(Λ)` together with the split of arrows into cyclic and non-cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    pub classes: Vec<CycleClass>,
    /// Index into `classes` for each arrow on a cycle.
    pub cycle_of: Vec<Option<usize>>,
}

impl CycleSet {
    pub fn is_cyclic(&self, a: ArrowId) -> bool {
        self.cycle_of[a].is_some()
    }

    pub fn cyclic_arrows(&self) -> Vec<ArrowId> {
        (0..self.cycle_of.len()).filter(|&a| self.is_cyclic(a)).collect()
    }

    pub fn non_cyclic_arrows(&self) -> Vec<ArrowId> {
        (0..self.cycle_of.len()).filter(|&a| !self.is_cyclic(a)).collect()
    }
}

/// Computes `C(Λ)` for a gentle quiver.
pub fn cycles(q: &BoundQuiver) -> Result<CycleSet> {
    require_gentle(q)?;
    let n = q.arrow_count();
    // in a gentle quiver each arrow has at most one relation-successor
    let succ: Vec<Option<ArrowId>> =
        (0..n).map(|a| q.out_arrows(q.arrow(a).target).into_iter().find(|&b| q.is_relation(b, a))).collect();
    let mut cycle_of = vec![None; n];
    let mut found: Vec<Vec<ArrowId>> = Vec::new();
    for start in 0..n {
        if cycle_of[start].is_some() {
            continue;
        }
        let mut walk = vec![start];
        let mut seen = HashSet::from([start]);
        let mut cur = start;
        let closed = loop {
            match succ[cur] {
                Some(nx) if nx == start => break true,
                Some(nx) if seen.insert(nx) => {
                    walk.push(nx);
                    cur = nx;
                }
                _ => break false,
            }
        };
        if closed {
            for &a in &walk {
                assert!(cycle_of[a].is_none(), "arrow {} lies on two cycles", q.arrow_name(a));
                cycle_of[a] = Some(found.len());
            }
            found.push(walk);
        }
    }
    let mut classes: Vec<CycleClass> = found
        .into_iter()
        .map(|traversal| {
            let mut letters: Vec<ArrowId> = traversal.into_iter().rev().collect();
            let k = (0..letters.len()).min_by_key(|&i| q.arrow_name(letters[i])).unwrap_or(0);
            letters.rotate_left(k);
            CycleClass { letters }
        })
        .collect();
    // stable order by least arrow name
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| q.arrow_name(classes[a].letters[0]).cmp(q.arrow_name(classes[b].letters[0])));
    let remap: BTreeMap<usize, usize> = order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    classes = order.iter().map(|&i| classes[i].clone()).collect();
    let cycle_of = cycle_of.into_iter().map(|c| c.map(|i| remap[&i])).collect();
    Ok(CycleSet { classes, cycle_of })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinCheck {
    pub one_gorenstein: bool,
    /// A relation `(later, earlier)` not lying on any cycle.
    pub witness: Option<(ArrowId, ArrowId)>,
    /// Loops are handled literally; reports mention them.
    pub has_loops: bool,
}

/// The cycle criterion for a gentle algebra to be 1-Gorenstein: every
/// relation lies on a cycle of `C(Λ)`.
pub fn is_one_gorenstein(q: &BoundQuiver) -> Result<GorensteinCheck> {
    let cs = cycles(q)?;
    let witness = q.relations().iter().find_map(|r| {
        let (earlier, later) = (r[0], r[1]);
        match (cs.cycle_of[earlier], cs.cycle_of[later]) {
            (Some(a), Some(b)) if a == b => None,
            _ => Some((later, earlier)),
        }
    });
    Ok(GorensteinCheck { one_gorenstein: witness.is_none(), witness, has_loops: q.has_loops() })
}

/// Dimension vector indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, v: VertexId) -> Self {
        let mut d = vec![0; n];
        d[v] = 1;
        DimVector(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entrywise difference, `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(DimVector)
    }

    /// `Σ e_i (d_i - e_i)`, the dimension of the ambient product of Grassmannians.
    pub fn grassmannian_dim(e: &DimVector, d: &DimVector) -> usize {
        e.0.iter().zip(&d.0).map(|(&ei, &di)| ei * di.saturating_sub(ei)).sum()
    }

    /// Renders as `(3,0,3)`.
    pub fn compact(&self) -> String {
        format!("({})", self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }

    /// Renders as `2e_1 + e_3` using vertex names.
    pub fn display(&self, q: &BoundQuiver) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| if c == 1 { format!("e_{}", q.vertex_name(v)) } else { format!("{c}e_{}", q.vertex_name(v)) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

/// `⟨d,e⟩ = Σ_i d_i e_i − Σ_{α:i→j} d_i e_j`.
pub fn euler_form(q: &BoundQuiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    if d.len() != q.vertex_count() || e.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "quiver has {} vertices, got vectors of length {} and {}",
            q.vertex_count(),
            d.len(),
            e.len()
        )));
    }
    let diag: i64 = d.0.iter().zip(&e.0).map(|(&a, &b)| (a * b) as i64).sum();
    let off: i64 = q.arrows().iter().map(|a| (d.0[a.source] * e.0[a.target]) as i64).sum();
    Ok(diag - off)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn parse_n3() {
        let q = samples::n3();
        assert_eq!(q.name(), Some("N3"));
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.arrow_count(), 3);
        assert_eq!(q.relations().len(), 3);
        let (a, b) = (q.arrow_id("alpha").unwrap(), q.arrow_id("beta").unwrap());
        assert!(q.is_relation(b, a));
        assert!(!q.is_relation(a, b));
    }

    #[test]
    fn parse_errors() {
        let e = parse_quiver("vertex 1\nvertex 2\narrow a 1 2\nrel a a\n").unwrap_err();
        assert!(matches!(e, Error::NonComposableRelation { line: 4, .. }), "{e}");
        let e = parse_quiver("vertex 1\nvertex 1\n").unwrap_err();
        assert!(matches!(e, Error::Duplicate { line: 2, kind: "vertex", .. }));
        let e = parse_quiver("vertex 1\narrow a 1 9\n").unwrap_err();
        assert!(matches!(e, Error::Unknown { line: 2, kind: "vertex", .. }));
        let e = parse_quiver("vertex 1\narrow a 1 1\narrow a 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Duplicate { line: 3, kind: "arrow", .. }));
        let e = parse_quiver("vertex 1\nfoo bar\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn text_round_trip() {
        for q in [samples::n3(), samples::ct5(), samples::a3_rel(), samples::kronecker()] {
            let back = parse_quiver(&q.to_text()).unwrap();
            assert_eq!(back, q);
        }
    }

    #[test]
    fn special_biserial_and_gentle() {
        assert!(is_special_biserial(&samples::n3()).ok);
        assert!(is_special_biserial(&samples::a2()).ok);
        let star = parse_quiver("vertex 0\nvertex 1\nvertex 2\nvertex 3\narrow a 0 1\narrow b 0 2\narrow c 0 3\n").unwrap();
        let r = is_special_biserial(&star);
        assert!(!r.ok);
        assert!(r.violations[0].contains("start of 3 arrows"));
        assert!(is_gentle(&samples::n3()).ok);
        assert!(is_gentle(&samples::ct5()).ok);
        let a4 = parse_quiver(
            "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrel c b a\n",
        )
        .unwrap();
        let r = is_gentle(&a4);
        assert!(!r.ok);
        assert!(r.violations.iter().any(|v| v.contains("length 3")));
        assert!(is_special_biserial(&a4).ok);
    }

    #[test]
    fn unbounded_cycle_is_not_gentle() {
        let q = parse_quiver("vertex 1\narrow x 1 1\n").unwrap();
        assert!(!is_gentle(&q).ok);
        let q = parse_quiver("vertex 1\narrow x 1 1\nrel x x\n").unwrap();
        assert!(is_gentle(&q).ok);
    }

    #[test]
    fn cycle_sets() {
        let q = samples::n3();
        let cs = cycles(&q).unwrap();
        assert_eq!(cs.classes.len(), 1);
        assert_eq!(cs.classes[0].display(&q), "alpha gamma beta");
        assert_eq!(cs.cyclic_arrows().len(), 3);
        assert!(cycles(&samples::a2()).unwrap().classes.is_empty());
        let q = samples::ct5();
        let cs = cycles(&q).unwrap();
        assert_eq!(cs.classes.len(), 2);
        let mut sets: Vec<Vec<&str>> = cs
            .classes
            .iter()
            .map(|c| {
                let mut v: Vec<&str> = c.letters.iter().map(|&a| q.arrow_name(a)).collect();
                v.sort();
                v
            })
            .collect();
        sets.sort();
        assert_eq!(sets, vec![vec!["a1", "a2", "a3"], vec!["a4", "a5", "a6"]]);
        for c in &cs.classes {
            let n = c.len();
            for i in 0..n {
                assert!(q.is_relation(c.letters[i], c.letters[(i + 1) % n]));
            }
        }
    }

    #[test]
    fn cycles_ignore_relation_order() {
        let q = samples::ct5();
        let src = q.to_text();
        let mut text: Vec<&str> = src.lines().collect();
        let rels: Vec<&str> = text.iter().filter(|l| l.starts_with("rel")).copied().collect();
        text.retain(|l| !l.starts_with("rel"));
        let mut shuffled = text.join("\n");
        for r in rels.iter().rev() {
            shuffled.push('\n');
            shuffled.push_str(r);
        }
        let q2 = parse_quiver(&shuffled).unwrap();
        assert_eq!(cycles(&q).unwrap().classes, cycles(&q2).unwrap().classes);
    }

    #[test]
    fn one_gorenstein_criterion() {
        assert!(is_one_gorenstein(&samples::n3()).unwrap().one_gorenstein);
        assert!(is_one_gorenstein(&samples::ct5()).unwrap().one_gorenstein);
        let q = samples::a3_rel();
        let g = is_one_gorenstein(&q).unwrap();
        assert!(!g.one_gorenstein);
        let (later, earlier) = g.witness.unwrap();
        assert_eq!((q.arrow_name(later), q.arrow_name(earlier)), ("beta", "alpha"));
        assert!(is_one_gorenstein(&parse_quiver("vertex 1\narrow x 1 1\n").unwrap()).is_err());
    }

    #[test]
    fn euler_form_values() {
        let a2 = samples::a2();
        assert_eq!(euler_form(&a2, &DimVector(vec![1, 1]), &DimVector(vec![1, 1])).unwrap(), 1);
        let n3 = samples::n3();
        let one = DimVector(vec![1, 1, 1]);
        assert_eq!(euler_form(&n3, &one, &one).unwrap(), 0);
        assert_eq!(euler_form(&n3, &DimVector(vec![3, 0, 3]), &DimVector(vec![2, 0, 1])).unwrap(), 3);
        assert!(euler_form(&n3, &DimVector(vec![1]), &one).is_err());
    }

    #[test]
    fn nonzero_paths() {
        let q = samples::ct5();
        let v3 = q.vertex_id("3").unwrap();
        let paths = q.nonzero_paths_from(v3).unwrap();
        assert_eq!(paths.len(), 3);
        let q = samples::a3_rel();
        assert_eq!(q.nonzero_paths_from(0).unwrap().len(), 2);
        assert!(parse_quiver("vertex 1\narrow x 1 1\n").unwrap().nonzero_paths_from(0).is_err());
    }

    #[test]
    fn opposite_is_involution() {
        let q = samples::ct5();
        let back = q.opposite().opposite();
        assert_eq!(back.arrows(), q.arrows());
        assert_eq!(back.relations(), q.relations());
    }
}
