//! Quiver Grassmannians over prime fields: point enumeration, tangent
//! spaces, stratification by isomorphism type, and point counting.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffla::{gaussian_binomial, interpolate_count, next_prime, Polynomial, PrimeField, Subspace};
use crate::gorenstein::gproj_catalog;
use crate::io::string_label;
use crate::quiver::{is_one_gorenstein, DimVector};
use crate::rep::{end_dim, hom_dim, iso_probable, Representation, SubrepPoint, DEFAULT_ISO_TRIALS};
use crate::strings::{enumerate_strings, string_module, StringWord};

pub const DEFAULT_LENGTH_BOUND: usize = 6;
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Partial assignments are expanded breadth-first until this many exist;
/// each is then finished independently.
const MIN_CELLS: usize = 64;

struct Search<'a> {
    m: &'a Representation,
    e: &'a DimVector,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Subspaces admissible at `order[depth]` given the earlier choices.
    fn choices(&self, partial: &[Option<Subspace>], depth: usize) -> Vec<Subspace> {
        let q = self.m.quiver();
        let f = self.m.field();
        let v = self.order[depth];
        let d = self.m.dims()[v];
        let mut lower = Subspace::zero(f, d);
        let mut upper = Subspace::full(f, d);
        let mut loops = Vec::new();
        for a in q.in_arrows(v) {
            let s = q.arrow(a).source;
            if s == v {
                loops.push(a);
            } else if let Some(u) = &partial[s] {
                lower = lower.sum(&u.image_under(self.m.map(a)));
            }
        }
        for a in q.out_arrows(v) {
            let t = q.arrow(a).target;
            if t != v {
                if let Some(u) = &partial[t] {
                    upper = upper.intersection(&u.preimage_under(self.m.map(a)));
                }
            }
        }
        let mut out = lower.extensions_within(&upper, self.e.0[v]);
        if !loops.is_empty() {
            out.retain(|u| loops.iter().all(|&a| u.contains_subspace(&u.image_under(self.m.map(a)))));
        }
        out
    }

    fn finish(&self, partial: &mut Vec<Option<Subspace>>, depth: usize, out: &mut Vec<SubrepPoint>) {
        if depth == self.order.len() {
            out.push(SubrepPoint { spaces: partial.iter().map(|u| u.clone().expect("assigned")).collect() });
            return;
        }
        let v = self.order[depth];
        for u in self.choices(partial, depth) {
            partial[v] = Some(u);
            self.finish(partial, depth + 1, out);
        }
        partial[v] = None;
    }
}

/// All subrepresentations of `M` with dimension vector `e`, each once, in a
/// deterministic order independent of the size of the thread pool.
pub fn enumerate_grassmannian(m: &Representation, e: &DimVector) -> Result<Vec<SubrepPoint>> {
    let n = m.dims().len();
    if e.len() != n {
        return Err(Error::DimensionMismatch(format!("{} entries for {} vertices", e.len(), n)));
    }
    if !e.le(&m.dim_vector()) {
        return Ok(Vec::new());
    }
    // most constrained vertices first
    let p = m.field().order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (gaussian_binomial(m.dims()[v], e.0[v], p), v));
    let search = Search { m, e, order };

    let mut frontier: Vec<Vec<Option<Subspace>>> = vec![vec![None; n]];
    let mut depth = 0;
    while depth < n && frontier.len() < MIN_CELLS {
        let v = search.order[depth];
        frontier = frontier
            .into_iter()
            .flat_map(|partial| {
                search.choices(&partial, depth).into_iter().map(move |u| {
                    let mut next = partial.clone();
                    next[v] = Some(u);
                    next
                })
            })
            .collect();
        depth += 1;
    }
    let cells: Vec<Vec<SubrepPoint>> = frontier
        .into_par_iter()
        .map(|mut partial| {
            let mut out = Vec::new();
            search.finish(&mut partial, depth, &mut out);
            out
        })
        .collect();
    Ok(cells.into_iter().flatten().collect())
}

/// `dim Hom(U, M/U)`, the tangent space of the Grassmannian at `U`.
pub fn tangent_dim(m: &Representation, u: &SubrepPoint) -> Result<usize> {
    let (sub, _) = m.subrepresentation(u)?;
    let (quot, _) = m.quotient(u)?;
    hom_dim(&sub, &quot)
}

/// Test modules for isomorphism fingerprints: the Gorenstein projective
/// catalog when available, and every string up to the length bound.
pub struct FingerprintBasis {
    pub names: Vec<String>,
    pub modules: Vec<Representation>,
    strings: Vec<(String, Representation)>,
}

impl FingerprintBasis {
    pub fn new(m: &Representation, length_bound: usize) -> Result<FingerprintBasis> {
        let q = m.quiver();
        let f = m.field();
        let mut names = Vec::new();
        let mut modules = Vec::new();
        if is_one_gorenstein(q)?.one_gorenstein {
            for e in gproj_catalog(q, f)?.entries {
                names.push(e.label);
                modules.push(e.module.rep);
            }
        }
        let mut strings = Vec::new();
        for w in enumerate_strings(q, length_bound) {
            let rep = string_module(q, &w, f)?.rep;
            names.push(word_name(q, &w));
            modules.push(rep.clone());
            strings.push((string_label(q, &w), rep));
        }
        Ok(FingerprintBasis { names, modules, strings })
    }

    /// `(dim Hom(X, U))_X` followed by `dim End(U)`.
    pub fn fingerprint(&self, u: &Representation) -> Result<Vec<usize>> {
        let mut fp: Vec<usize> = self.modules.iter().map(|x| hom_dim(x, u)).collect::<Result<_>>()?;
        fp.push(end_dim(u));
        Ok(fp)
    }

    /// Writes `u` as a direct sum of string modules up to the length bound,
    /// matching the Hom part of the fingerprint and the dimension vector, and
    /// confirms by an isomorphism test. `None` when no such sum exists.
    pub fn decompose(&self, u: &Representation, fp: &[usize], seed: u64) -> Result<Option<String>> {
        if u.is_zero() {
            return Ok(Some("0".into()));
        }
        let target = u.dim_vector();
        let mut cands: Vec<(usize, DimVector, Vec<usize>)> = Vec::new();
        for (i, (_, rep)) in self.strings.iter().enumerate() {
            let d = rep.dim_vector();
            if d.le(&target) {
                let h: Vec<usize> = self.modules.iter().map(|x| hom_dim(x, rep)).collect::<Result<_>>()?;
                if h.iter().zip(fp).all(|(a, b)| a <= b) {
                    cands.push((i, d, h));
                }
            }
        }
        let hom_part = &fp[..self.modules.len()];
        let mut mult = vec![0usize; cands.len()];
        if !search_sum(&cands, 0, &target, hom_part, &mut mult) {
            return Ok(None);
        }
        let parts: Vec<&Representation> = cands
            .iter()
            .zip(&mult)
            .flat_map(|((i, _, _), &k)| std::iter::repeat(&self.strings[*i].1).take(k))
            .collect();
        let sum = Representation::direct_sum_all(u.quiver().clone(), u.field(), parts)?;
        if iso_probable(u, &sum, DEFAULT_ISO_TRIALS, seed)? == crate::rep::IsoVerdict::NotIsomorphic {
            return Ok(None);
        }
        let mut labels: Vec<(u8, String, usize)> = cands
            .iter()
            .zip(&mult)
            .filter(|(_, &k)| k > 0)
            .map(|((i, _, _), &k)| {
                let l = self.strings[*i].0.clone();
                let rank = match l.chars().next() {
                    Some('P') => 0,
                    Some('R') => 1,
                    Some('I') => 2,
                    Some('S') => 3,
                    _ => 4,
                };
                (rank, l, k)
            })
            .collect();
        labels.sort();
        let text: Vec<String> =
            labels.into_iter().map(|(_, l, k)| if k == 1 { l } else { format!("{l}^{k}") }).collect();
        Ok(Some(text.join("+")))
    }
}

fn word_name(q: &crate::quiver::BoundQuiver, w: &StringWord) -> String {
    match w {
        StringWord::Trivial { vertex, .. } => format!("e_{}", q.vertex_name(*vertex)),
        _ => w.display(q),
    }
}

fn search_sum(cands: &[(usize, DimVector, Vec<usize>)], i: usize, rem_d: &DimVector, rem_h: &[usize], mult: &mut [usize]) -> bool {
    if rem_d.total() == 0 {
        return rem_h.iter().all(|&x| x == 0);
    }
    if i == cands.len() {
        return false;
    }
    // largest multiplicity first, so big summands are tried before small ones
    let (_, d, h) = &cands[i];
    let mut max = 0;
    let mut r = rem_d.clone();
    while let Some(next) = r.checked_sub(d) {
        if h.iter().zip(rem_h).any(|(a, b)| a * (max + 1) > *b) {
            break;
        }
        r = next;
        max += 1;
    }
    for k in (0..=max).rev() {
        let d_k = DimVector(d.0.iter().map(|x| x * k).collect());
        let rd = rem_d.checked_sub(&d_k).expect("bounded above");
        let rh: Vec<usize> = rem_h.iter().zip(h).map(|(b, a)| b - a * k).collect();
        mult[i] = k;
        if search_sum(cands, i + 1, &rd, &rh, mult) {
            return true;
        }
    }
    mult[i] = 0;
    false
}

/// Points of `Gr_e(M)` sharing an isomorphism fingerprint.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub fingerprint: Vec<usize>,
    /// Decomposition into string modules, `None` if unclassified.
    pub label: Option<String>,
    pub representative: SubrepPoint,
    pub module: Representation,
    /// `dim Hom(N, M) − dim End(N)`.
    pub expected_dim: i64,
    pub count: usize,
    /// Indices into the enumerated point list.
    pub members: Vec<usize>,
}

impl Stratum {
    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| "unclassified".into())
    }

    /// Short stable hash of the fingerprint (FNV-1a).
    pub fn fingerprint_hash(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for &x in &self.fingerprint {
            for b in (x as u64).to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        format!("{h:016x}")
    }
}

/// Groups `points` by fingerprint; strata appear in order of first member.
pub fn stratify(m: &Representation, points: &[SubrepPoint], basis: &FingerprintBasis, seed: u64) -> Result<Vec<Stratum>> {
    let fps: Vec<(Vec<usize>, Representation)> = points
        .par_iter()
        .map(|u| {
            let (sub, _) = m.subrepresentation(u)?;
            Ok((basis.fingerprint(&sub)?, sub))
        })
        .collect::<Result<_>>()?;
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut strata: Vec<Stratum> = Vec::new();
    for (i, (fp, sub)) in fps.into_iter().enumerate() {
        match index.get(&fp) {
            Some(&s) => {
                strata[s].count += 1;
                strata[s].members.push(i);
            }
            None => {
                index.insert(fp.clone(), strata.len());
                let expected_dim = hom_dim(&sub, m)? as i64 - *fp.last().expect("End entry") as i64;
                strata.push(Stratum {
                    fingerprint: fp,
                    label: None,
                    representative: points[i].clone(),
                    module: sub,
                    expected_dim,
                    count: 1,
                    members: vec![i],
                });
            }
        }
    }
    let labels: Vec<Option<String>> =
        strata.par_iter().map(|s| basis.decompose(&s.module, &s.fingerprint, seed)).collect::<Result<_>>()?;
    for (s, l) in strata.iter_mut().zip(labels) {
        s.label = l;
    }
    Ok(strata)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericTypes {
    /// Indices of the strata minimal in the Hom order.
    pub indices: Vec<usize>,
    /// Two minimal strata are incomparable with equal expected dimension.
    pub heuristic: bool,
}

fn fp_le(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Strata whose fingerprint is minimal: degenerations only increase Hom
/// dimensions, so an open stratum has no other stratum below it.
pub fn generic_types(strata: &[Stratum]) -> GenericTypes {
    let indices: Vec<usize> = (0..strata.len())
        .filter(|&i| !(0..strata.len()).any(|j| j != i && fp_le(&strata[j].fingerprint, &strata[i].fingerprint)))
        .collect();
    let heuristic = indices
        .iter()
        .enumerate()
        .any(|(k, &i)| indices[k + 1..].iter().any(|&j| strata[i].expected_dim == strata[j].expected_dim));
    GenericTypes { indices, heuristic }
}

/// `Σ_i e_i (d_i − e_i)`, the dimension of the ambient product of Grassmannians.
pub fn degree_bound(d: &DimVector, e: &DimVector) -> usize {
    DimVector::grassmannian_dim(e, d)
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub counts: Vec<(u64, u64)>,
    pub degree_bound: usize,
    /// Primes appended to the requested ones to reach `degree_bound + 1` points.
    pub added_primes: Vec<u64>,
    pub polynomial: Polynomial,
    pub euler: Option<i64>,
}

impl CountReport {
    pub fn count_at(&self, q: u64) -> Option<u64> {
        self.counts.iter().find(|c| c.0 == q).map(|c| c.1)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (q, n) in &self.counts {
            let _ = writeln!(s, "points({q}) = {n}");
        }
        let _ = writeln!(s, "degree bound = {}", self.degree_bound);
        if !self.added_primes.is_empty() {
            let extra: Vec<String> = self.added_primes.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "added primes = {}", extra.join(","));
        }
        let _ = writeln!(s, "polynomial = {}", self.polynomial);
        match self.euler {
            Some(x) => {
                let _ = writeln!(s, "euler characteristic = {x}");
            }
            None => s.push_str("euler characteristic = non-integral\n"),
        }
        s
    }
}

/// Point counts of `Gr_e(M_p)` for each prime, where `build(p)` realises the
/// module over `F_p`, and the interpolating polynomial.
pub fn counting_report<F>(build: F, e: &DimVector, primes: &[u64]) -> Result<CountReport>
where
    F: Fn(PrimeField) -> Result<Representation>,
{
    let first = primes.first().copied().unwrap_or(2);
    let m0 = build(PrimeField::new(first as u32)?)?;
    let bound = degree_bound(&m0.dim_vector(), e);
    let mut ps: Vec<u64> = Vec::new();
    for &p in primes {
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    let mut added = Vec::new();
    let mut next = ps.iter().copied().max().unwrap_or(1);
    while ps.len() < bound + 1 {
        next = next_prime(next);
        ps.push(next);
        added.push(next);
    }
    let mut counts = Vec::new();
    for &p in &ps {
        let m = build(PrimeField::new(p as u32)?)?;
        counts.push((p, enumerate_grassmannian(&m, e)?.len() as u64));
    }
    let polynomial = interpolate_count(&counts, bound)?;
    let euler = polynomial.euler_characteristic();
    Ok(CountReport { counts, degree_bound: bound, added_primes: added, polynomial, euler })
}

/// [`counting_report`] for a module with small integer entries, transported
/// to each prime by [`Representation::reduce_to`].
pub fn counting_report_lifted(m: &Representation, e: &DimVector, primes: &[u64]) -> Result<CountReport> {
    counting_report(|f| m.reduce_to(f), e, primes)
}
