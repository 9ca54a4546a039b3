//! Indecomposable Gorenstein projectives of a gentle algebra, the
//! Gorenstein-projectivity test, and the short exact sequences
//! `0 → R(α) → P_{s(α)} → R(β) → 0` along cycles.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffla::{solve_square, Matrix, PrimeField, Subspace};
use crate::quiver::{cycles, is_one_gorenstein, ArrowId, BoundQuiver, CycleClass, DimVector, VertexId};
use crate::rep::{
    hom_dim, hom_space, iso_probable, morphism_from_projective, projective_module, IsoVerdict, Morphism,
    Representation, SubrepPoint, DEFAULT_ISO_TRIALS,
};
use crate::strings::{projective_string, radical_summand_string, string_equiv, string_module, StringModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Projective(VertexId),
    Radical(ArrowId),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub kind: EntryKind,
    pub module: StringModule,
    /// Labels of later candidates identified with this entry.
    pub aliases: Vec<String>,
}

/// `ind proj Λ ∪ {R(α) : α cyclic}` up to isomorphism.
#[derive(Clone, Debug)]
pub struct GprojCatalog {
    quiver: Arc<BoundQuiver>,
    field: PrimeField,
    pub entries: Vec<CatalogEntry>,
    /// `hom[x][y] = dim Hom(entry x, entry y)`.
    hom: Vec<Vec<usize>>,
}

pub fn projective_label(q: &BoundQuiver, v: VertexId) -> String {
    format!("P{}", q.vertex_name(v))
}

pub fn radical_label(q: &BoundQuiver, a: ArrowId) -> String {
    format!("R({})", q.arrow_name(a))
}

pub fn gproj_catalog(q: &Arc<BoundQuiver>, field: PrimeField) -> Result<GprojCatalog> {
    let cs = cycles(q)?;
    let mut candidates: Vec<(String, EntryKind, StringModule)> = Vec::new();
    for v in 0..q.vertex_count() {
        let m = string_module(q, &projective_string(q, v)?, field)?;
        candidates.push((projective_label(q, v), EntryKind::Projective(v), m));
    }
    for a in cs.cyclic_arrows() {
        let m = string_module(q, &radical_summand_string(q, a)?, field)?;
        candidates.push((radical_label(q, a), EntryKind::Radical(a), m));
    }
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for (label, kind, module) in candidates {
        let mut dup = None;
        for (i, e) in entries.iter().enumerate() {
            if string_equiv(&e.module.word, &module.word)
                || iso_probable(&e.module.rep, &module.rep, DEFAULT_ISO_TRIALS, 0)? == IsoVerdict::Isomorphic
            {
                dup = Some(i);
                break;
            }
        }
        match dup {
            Some(i) => entries[i].aliases.push(label),
            None => entries.push(CatalogEntry { label, kind, module, aliases: Vec::new() }),
        }
    }
    let hom = entries
        .iter()
        .map(|x| entries.iter().map(|y| hom_dim(&x.module.rep, &y.module.rep)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(GprojCatalog { quiver: q.clone(), field, entries, hom })
}

impl GprojCatalog {
    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Looks an entry up by label or alias.
    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label || e.aliases.iter().any(|a| a == label))
    }

    pub fn hom_matrix(&self) -> &[Vec<usize>] {
        &self.hom
    }

    /// Number of non-projective entries.
    pub fn non_projective_count(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.kind, EntryKind::Radical(_))).count()
    }

    /// Aligned table: label, string, dimension vector.
    pub fn table(&self) -> String {
        let q = &self.quiver;
        let rows: Vec<[String; 3]> = self
            .entries
            .iter()
            .map(|e| {
                let mut label = e.label.clone();
                for a in &e.aliases {
                    label.push('=');
                    label.push_str(a);
                }
                [label, e.module.word.display(q), e.module.dim.compact()]
            })
            .collect();
        let w0 = rows.iter().map(|r| r[0].len()).max().unwrap_or(0).max(5);
        let w1 = rows.iter().map(|r| r[1].chars().count()).max().unwrap_or(0).max(6);
        let mut s = format!("{:<w0$}  {:<w1$}  dimv\n", "label", "string");
        for r in rows {
            let pad = w1 - r[1].chars().count();
            s.push_str(&format!("{:<w0$}  {}{}  {}\n", r[0], r[1], " ".repeat(pad), r[2]));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct GprojReport {
    pub verdict: Verdict,
    /// `M` embeds into a finite direct sum of indecomposable projectives.
    pub torsionless: bool,
    /// Multiplicities over the catalog solving the Hom system, if any.
    pub decomposition: Option<Vec<usize>>,
    /// Isomorphism check of `M` against the decomposition.
    pub confirmation: Option<IsoVerdict>,
}

impl GprojReport {
    pub fn describe(&self, cat: &GprojCatalog) -> String {
        match &self.decomposition {
            None => "no decomposition over the catalog".into(),
            Some(m) => describe_multiplicities(cat, m),
        }
    }
}

pub fn describe_multiplicities(cat: &GprojCatalog, m: &[usize]) -> String {
    let parts: Vec<String> = cat
        .entries
        .iter()
        .zip(m)
        .filter(|(_, &k)| k > 0)
        .map(|(e, &k)| if k == 1 { e.label.clone() } else { format!("{}^{k}", e.label) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// True iff the common kernel of all maps `M → P_v` is zero.
pub fn is_torsionless(m: &Representation) -> Result<bool> {
    let q = m.quiver();
    let f = m.field();
    let mut stacks: Vec<Vec<Vec<u32>>> = vec![Vec::new(); q.vertex_count()];
    for v in 0..q.vertex_count() {
        let p = projective_module(q, f, v)?.rep;
        for g in hom_space(m, &p)?.basis {
            for (w, mat) in g.maps.iter().enumerate() {
                for r in 0..mat.rows() {
                    stacks[w].push(mat.row(r).to_vec());
                }
            }
        }
    }
    Ok((0..q.vertex_count())
        .all(|w| Subspace::from_vectors(f, m.dims()[w], &stacks[w]).dim() == m.dims()[w]))
}

/// Solves `H m = h` over the non-negative integers for the square catalog
/// Hom matrix: modular solve, then exact verification.
fn solve_multiplicities(hmat: &[Vec<usize>], h: &[usize]) -> Option<Vec<usize>> {
    let n = hmat.len();
    let big = PrimeField::new(2_147_483_647).expect("Mersenne prime");
    let a = Matrix::from_rows(big, &hmat.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>(), n);
    let b: Vec<u32> = h.iter().map(|&x| big.from_i64(x as i64)).collect();
    let sol = solve_square(&a, &b)?;
    let m: Vec<usize> = sol.iter().map(|&x| usize::try_from(big.to_i64(x)).ok()).collect::<Option<_>>()?;
    let ok = (0..n).all(|x| (0..n).map(|y| hmat[x][y] * m[y]).sum::<usize>() == h[x]);
    ok.then_some(m)
}

/// Bounded search over multiplicity vectors with the right dimension vector.
fn search_multiplicities(cat: &GprojCatalog, target: &DimVector, h: &[usize]) -> Option<Vec<usize>> {
    fn go(
        cat: &GprojCatalog,
        i: usize,
        remaining: &DimVector,
        cur: &mut Vec<usize>,
        h: &[usize],
    ) -> Option<Vec<usize>> {
        if i == cat.entries.len() {
            if remaining.total() != 0 {
                return None;
            }
            let n = cat.entries.len();
            let ok = (0..n).all(|x| (0..n).map(|y| cat.hom[x][y] * cur[y]).sum::<usize>() == h[x]);
            return ok.then(|| cur.clone());
        }
        let d = &cat.entries[i].module.dim;
        let mut rem = remaining.clone();
        let mut k = 0;
        loop {
            cur.push(k);
            let found = go(cat, i + 1, &rem, cur, h);
            cur.pop();
            if found.is_some() {
                return found;
            }
            match rem.checked_sub(d) {
                Some(r) => rem = r,
                None => return None,
            }
            k += 1;
        }
    }
    go(cat, 0, target, &mut Vec::new(), h)
}

/// The direct sum `⊕ Y^{m_Y}` over the catalog.
pub fn catalog_sum(cat: &GprojCatalog, m: &[usize]) -> Result<Representation> {
    let parts: Vec<&Representation> =
        cat.entries.iter().zip(m).flat_map(|(e, &k)| std::iter::repeat(&e.module.rep).take(k)).collect();
    Representation::direct_sum_all(cat.quiver.clone(), cat.field, parts)
}

/// Gorenstein projectivity over a 1-Gorenstein gentle algebra.
///
/// Two independent routes: torsionlessness (an embedding into a free
/// module), and a multiplicity vector over the catalog solving
/// `dim Hom(X, M) = Σ_Y m_Y dim Hom(X, Y)`, confirmed by an isomorphism test.
pub fn is_gorenstein_projective(m: &Representation, cat: &GprojCatalog, seed: u64) -> Result<GprojReport> {
    m.check_compatible(&cat.entries.first().map_or_else(|| m.clone(), |e| e.module.rep.clone()))?;
    if !is_one_gorenstein(m.quiver())?.one_gorenstein {
        return Err(Error::Precondition("algebra is not 1-Gorenstein".into()));
    }
    if m.is_zero() {
        return Ok(GprojReport {
            verdict: Verdict::Yes,
            torsionless: true,
            decomposition: Some(vec![0; cat.len()]),
            confirmation: Some(IsoVerdict::Isomorphic),
        });
    }
    let torsionless = is_torsionless(m)?;
    let h: Vec<usize> = cat.entries.iter().map(|e| hom_dim(&e.module.rep, m)).collect::<Result<_>>()?;
    let decomposition = solve_multiplicities(&cat.hom, &h)
        .filter(|mult| {
            let d = mult.iter().zip(&cat.entries).fold(DimVector::zero(m.dims().len()), |acc, (&k, e)| {
                acc.add(&DimVector(e.module.dim.0.iter().map(|x| x * k).collect()))
            });
            d == m.dim_vector()
        })
        .or_else(|| search_multiplicities(cat, &m.dim_vector(), &h));
    let confirmation = match &decomposition {
        Some(mult) => Some(iso_probable(m, &catalog_sum(cat, mult)?, DEFAULT_ISO_TRIALS, seed)?),
        None => None,
    };
    let verdict = match (torsionless, &decomposition, confirmation) {
        (true, Some(_), Some(IsoVerdict::Isomorphic | IsoVerdict::Undecided)) => Verdict::Yes,
        (false, None, _) | (false, Some(_), Some(IsoVerdict::NotIsomorphic)) => Verdict::No,
        _ => Verdict::Undecided,
    };
    Ok(GprojReport { verdict, torsionless, decomposition, confirmation })
}

/// `R(α) = Λα` as the span of the paths of `P_{s(α)}` beginning with `α`,
/// with its inclusion.
pub fn radical_module(q: &Arc<BoundQuiver>, field: PrimeField, alpha: ArrowId) -> Result<(Representation, Morphism)> {
    let s = q.arrow(alpha).source;
    let p = projective_module(q, field, s)?;
    let u = SubrepPoint {
        spaces: p
            .paths
            .iter()
            .map(|ps| {
                let vecs: Vec<Vec<u32>> = ps
                    .iter()
                    .enumerate()
                    .filter(|(_, path)| path.first() == Some(&alpha))
                    .map(|(k, _)| {
                        let mut v = vec![0u32; ps.len()];
                        v[k] = 1;
                        v
                    })
                    .collect();
                Subspace::from_vectors(field, ps.len(), &vecs)
            })
            .collect(),
    };
    p.rep.subrepresentation(&u)
}

#[derive(Clone, Debug)]
pub struct RadicalSequence {
    /// `α`, cyclic.
    pub arrow: ArrowId,
    /// The arrow `β` with `(α, β)` a relation, i.e. `β` then `α` is zero.
    pub predecessor: ArrowId,
    pub left: Representation,
    pub middle: Representation,
    pub right: Representation,
    pub a: Morphism,
    pub b: Morphism,
}

impl RadicalSequence {
    /// `a` injective, `b` surjective, `b a = 0` and dimensions add up.
    pub fn is_exact(&self) -> bool {
        let ba = self.b.after(&self.a);
        self.a.is_morphism(&self.left, &self.middle)
            && self.b.is_morphism(&self.middle, &self.right)
            && self.a.is_injective()
            && self.b.is_surjective()
            && ba.maps.iter().all(Matrix::is_zero)
            && (0..self.middle.dims().len())
                .all(|v| self.left.dims()[v] + self.right.dims()[v] == self.middle.dims()[v])
    }
}

/// For each arrow `α` of the cycle: `0 → R(α) → P_{s(α)} → R(β) → 0`.
pub fn radical_sequences(q: &Arc<BoundQuiver>, field: PrimeField, cycle: &CycleClass) -> Result<Vec<RadicalSequence>> {
    let mut out = Vec::new();
    for &alpha in &cycle.traversal() {
        let s = q.arrow(alpha).source;
        let beta = q
            .in_arrows(s)
            .into_iter()
            .find(|&b| q.is_relation(alpha, b) && cycle.contains(b))
            .ok_or_else(|| Error::Precondition(format!("{} has no predecessor on its cycle", q.arrow_name(alpha))))?;
        let middle = projective_module(q, field, s)?;
        let (left, a) = radical_module(q, field, alpha)?;
        let (right, incl_right) = radical_module(q, field, beta)?;
        // right multiplication by β, corestricted to R(β) ⊆ P_{s(β)}
        let pb = projective_module(q, field, q.arrow(beta).source)?;
        let mut x = vec![0u32; pb.rep.dims()[s]];
        let k = pb.paths[s].iter().position(|p| p.as_slice() == [beta]).expect("β is a nonzero path");
        x[k] = 1;
        let mult = morphism_from_projective(&middle, &pb.rep, s, &x);
        let b = Morphism {
            maps: mult
                .maps
                .iter()
                .zip(&incl_right.maps)
                .map(|(g, inc)| {
                    let rows: Vec<usize> = (0..inc.cols())
                        .map(|c| (0..inc.rows()).find(|&r| inc.get(r, c) == 1).expect("coordinate basis"))
                        .collect();
                    g.select_rows(&rows)
                })
                .collect(),
        };
        out.push(RadicalSequence { arrow: alpha, predecessor: beta, left, middle: middle.rep, right, a, b });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{injective_module, projective_presentation};
    use crate::samples;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn catalog_sizes() {
        let n3 = Arc::new(samples::n3());
        let cat = gproj_catalog(&n3, f()).unwrap();
        let labels: Vec<&str> = cat.entries.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["P1", "P2", "P3", "R(alpha)", "R(beta)", "R(gamma)"]);
        assert_eq!(cat.get("R(alpha)").unwrap().module.dim.0, vec![0, 1, 0]);
        let a2 = Arc::new(samples::a2());
        assert_eq!(gproj_catalog(&a2, f()).unwrap().len(), 2);
        let ct5 = Arc::new(samples::ct5());
        assert_eq!(gproj_catalog(&ct5, f()).unwrap().len(), 11);
    }

    #[test]
    fn cartan_matrix_is_unimodular() {
        for q in [samples::n3(), samples::ct5()] {
            let cat = gproj_catalog(&Arc::new(q), f()).unwrap();
            let n = cat.len();
            let big = PrimeField::new(2_147_483_647).unwrap();
            let rows: Vec<Vec<i64>> = cat.hom_matrix().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            assert!(Matrix::from_rows(big, &rows, n).is_invertible());
        }
    }

    #[test]
    fn gproj_test_on_examples() {
        let n3 = Arc::new(samples::n3());
        let cat = gproj_catalog(&n3, f()).unwrap();
        let m = crate::io::parse_module(samples::N3_MODULE, &n3, f()).unwrap();
        let r = is_gorenstein_projective(&m, &cat, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.describe(&cat), "P3^2+R(beta)+R(gamma)");

        let ct5 = Arc::new(samples::ct5());
        let cat = gproj_catalog(&ct5, f()).unwrap();
        let m = crate::io::parse_module(samples::CT5_MODULE_SUM, &ct5, f()).unwrap();
        assert_eq!(is_gorenstein_projective(&m, &cat, 0).unwrap().verdict, Verdict::Yes);
        let m = crate::io::parse_module(samples::CT5_MODULE, &ct5, f()).unwrap();
        assert_eq!(is_gorenstein_projective(&m, &cat, 0).unwrap().verdict, Verdict::Yes);
        let i3 = injective_module(&ct5, f(), 2).unwrap();
        let r = is_gorenstein_projective(&i3, &cat, 0).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        assert!(!r.torsionless);
    }

    #[test]
    fn sequences_along_cycles() {
        for q in [samples::n3(), samples::ct5()] {
            let q = Arc::new(q);
            let cs = cycles(&q).unwrap();
            for c in &cs.classes {
                let seqs = radical_sequences(&q, f(), c).unwrap();
                assert_eq!(seqs.len(), c.len());
                for s in &seqs {
                    assert!(s.is_exact());
                    let omega = projective_presentation(&s.right).unwrap().syzygy;
                    assert!(iso_probable(&omega, &s.left, 16, 0).unwrap().is_iso());
                    let rs = string_module(&q, &radical_summand_string(&q, s.arrow).unwrap(), f()).unwrap();
                    assert!(iso_probable(&rs.rep, &s.left, 16, 0).unwrap().is_iso());
                }
            }
        }
        let a2 = Arc::new(samples::a2());
        assert!(cycles(&a2).unwrap().classes.is_empty());
    }

    #[test]
    fn n3_sequences_have_simple_ends() {
        let q = Arc::new(samples::n3());
        let cs = cycles(&q).unwrap();
        let seqs = radical_sequences(&q, f(), &cs.classes[0]).unwrap();
        for s in seqs {
            assert_eq!(s.left.total_dim(), 1);
            assert_eq!(s.middle.total_dim(), 2);
            assert_eq!(s.right.total_dim(), 1);
        }
    }
}
