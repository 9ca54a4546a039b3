//! Representations of bound quivers over prime fields, morphisms, Hom
//! spaces, sub- and quotient representations.

mod homalg;
mod iso;

pub use homalg::{
    ext1_dim, ext1_dim_via_restriction, gldim, id_le, injective_dimension, is_injective, is_projective, pd_le,
    projective_dimension, projective_presentation, GlDim, ProjectivePresentation,
};
pub use iso::{iso_probable, IsoVerdict, DEFAULT_ISO_TRIALS};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffla::{Matrix, PrimeField, Subspace};
use crate::quiver::{ArrowId, BoundQuiver, DimVector, VertexId};

/// A representation `((M_i), (M_α : M_i → M_j))`; `M_α` is stored as a
/// `dim M_j × dim M_i` matrix acting on column vectors.
#[derive(Clone, Debug)]
pub struct Representation {
    quiver: Arc<BoundQuiver>,
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.same_quiver(other) && self.field == other.field && self.dims == other.dims && self.maps == other.maps
    }
}

impl Eq for Representation {}

impl Representation {
    /// Builds a representation, checking matrix shapes and all relations.
    pub fn new(quiver: Arc<BoundQuiver>, field: PrimeField, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions for a quiver with {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a quiver with {} arrows",
                maps.len(),
                quiver.arrow_count()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            let arr = quiver.arrow(a);
            if m.shape() != (dims[arr.target], dims[arr.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix of `{}` is {}x{}, expected {}x{}",
                    arr.name,
                    m.rows(),
                    m.cols(),
                    dims[arr.target],
                    dims[arr.source]
                )));
            }
            if m.field() != field {
                return Err(Error::QuiverMismatch);
            }
        }
        let rep = Representation { quiver, field, dims, maps };
        rep.check_relations()?;
        Ok(rep)
    }

    fn check_relations(&self) -> Result<()> {
        for r in self.quiver.relations() {
            if !self.path_matrix(r).is_zero() {
                return Err(Error::RelationViolated {
                    later: self.quiver.arrow_name(*r.last().unwrap()).to_owned(),
                    earlier: self.quiver.arrow_name(r[r.len() - 2]).to_owned(),
                });
            }
        }
        Ok(())
    }

    pub fn zero(quiver: Arc<BoundQuiver>, field: PrimeField) -> Self {
        let n = quiver.vertex_count();
        Self::with_zero_maps(quiver, field, vec![0; n])
    }

    /// Semisimple representation with the given dimension vector.
    pub fn with_zero_maps(quiver: Arc<BoundQuiver>, field: PrimeField, dims: Vec<usize>) -> Self {
        let maps = quiver.arrows().iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
        Representation { quiver, field, dims, maps }
    }

    pub fn simple(quiver: Arc<BoundQuiver>, field: PrimeField, v: VertexId) -> Self {
        let n = quiver.vertex_count();
        Self::with_zero_maps(quiver, field, DimVector::unit(n, v).0)
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.clone())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: ArrowId) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn same_quiver(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver
    }

    pub(crate) fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.field != other.field || !self.same_quiver(other) {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// The matrix of a path given in traversal order (first arrow first).
    pub fn path_matrix(&self, path: &[ArrowId]) -> Matrix {
        let mut it = path.iter();
        let first = it.next().expect("non-trivial path");
        it.fold(self.maps[*first].clone(), |acc, &a| self.maps[a].mul(&acc))
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_compatible(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Representation { quiver: self.quiver.clone(), field: self.field, dims, maps })
    }

    pub fn direct_sum_all<'a>(
        quiver: Arc<BoundQuiver>,
        field: PrimeField,
        parts: impl IntoIterator<Item = &'a Representation>,
    ) -> Result<Representation> {
        parts.into_iter().try_fold(Representation::zero(quiver, field), |acc, m| acc.direct_sum(m))
    }

    /// The same data viewed over another (equal or relabelled) quiver handle.
    pub fn with_quiver(&self, quiver: Arc<BoundQuiver>) -> Result<Representation> {
        Representation::new(quiver, self.field, self.dims.clone(), self.maps.clone())
    }

    /// Reads every entry as its symmetric integer representative and reduces
    /// it modulo the new prime; relations are re-verified.
    pub fn reduce_to(&self, field: PrimeField) -> Result<Representation> {
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let data = m.data().iter().map(|&x| field.from_i64(self.field.to_i64(x))).collect();
                Matrix::from_data(field, m.rows(), m.cols(), data)
            })
            .collect();
        Representation::new(self.quiver.clone(), field, self.dims.clone(), maps)
    }

    /// Transposes all matrices, giving the dual representation over the
    /// opposite quiver.
    pub fn dualize(&self) -> Representation {
        self.dualize_over(Arc::new(self.quiver.opposite()))
    }

    pub(crate) fn dualize_over(&self, op: Arc<BoundQuiver>) -> Representation {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation { quiver: op, field: self.field, dims: self.dims.clone(), maps }
    }

    /// Top and radical: `rad M_v = Σ_{α→v} Im M_α`.
    pub fn top_and_radical(&self) -> (DimVector, SubrepPoint) {
        let spaces: Vec<Subspace> = (0..self.dims.len())
            .map(|v| {
                let mut s = Subspace::zero(self.field, self.dims[v]);
                for a in self.quiver.in_arrows(v) {
                    s = s.sum(&Subspace::column_space(&self.maps[a]));
                }
                s
            })
            .collect();
        let top = DimVector(self.dims.iter().zip(&spaces).map(|(d, s)| d - s.dim()).collect());
        (top, SubrepPoint { spaces })
    }

    /// Checks that the subspace tuple is arrow-stable.
    pub fn check_stable(&self, u: &SubrepPoint) -> Result<()> {
        if u.spaces.len() != self.dims.len() || u.spaces.iter().zip(&self.dims).any(|(s, &d)| s.ambient() != d) {
            return Err(Error::DimensionMismatch("subspace tuple does not fit the representation".into()));
        }
        for (a, arr) in self.quiver.arrows().iter().enumerate() {
            let img = u.spaces[arr.source].image_under(&self.maps[a]);
            if !u.spaces[arr.target].contains_subspace(&img) {
                return Err(Error::NotStable(arr.name.clone()));
            }
        }
        Ok(())
    }

    /// The subrepresentation on `U` in its echelon bases, with the inclusion.
    pub fn subrepresentation(&self, u: &SubrepPoint) -> Result<(Representation, Morphism)> {
        self.check_stable(u)?;
        let f = self.field;
        let dims: Vec<usize> = u.spaces.iter().map(Subspace::dim).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let src = &u.spaces[arr.source];
                let tgt = &u.spaces[arr.target];
                // images of the source basis, read off at the target pivots
                let img = self.maps[a].mul(&src.basis().transpose());
                img.select_rows(tgt.pivots())
            })
            .collect();
        let sub = Representation { quiver: self.quiver.clone(), field: f, dims, maps };
        let incl = Morphism { maps: u.spaces.iter().map(|s| s.basis().transpose()).collect() };
        Ok((sub, incl))
    }

    /// The quotient `M/U` on the non-pivot coordinates, with the projection.
    pub fn quotient(&self, u: &SubrepPoint) -> Result<(Representation, Morphism)> {
        self.check_stable(u)?;
        let f = self.field;
        let proj: Vec<Matrix> = u
            .spaces
            .iter()
            .zip(&self.dims)
            .map(|(s, &d)| {
                let free = s.non_pivots();
                let mut p = Matrix::zeros(f, free.len(), d);
                for (i, &c) in free.iter().enumerate() {
                    p.set(i, c, 1);
                }
                for (r, &pc) in s.pivots().iter().enumerate() {
                    for (i, &c) in free.iter().enumerate() {
                        p.set(i, pc, f.neg(s.basis().get(r, c)));
                    }
                }
                p
            })
            .collect();
        let lift: Vec<Matrix> = u
            .spaces
            .iter()
            .zip(&self.dims)
            .map(|(s, &d)| {
                let free = s.non_pivots();
                let mut l = Matrix::zeros(f, d, free.len());
                for (i, &c) in free.iter().enumerate() {
                    l.set(c, i, 1);
                }
                l
            })
            .collect();
        let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| proj[arr.target].mul(&self.maps[a]).mul(&lift[arr.source]))
            .collect();
        let q = Representation { quiver: self.quiver.clone(), field: f, dims, maps };
        Ok((q, Morphism { maps: proj }))
    }

    /// The image of a vector of `M_v` under a path (traversal order).
    pub fn act(&self, path: &[ArrowId], x: &[u32]) -> Vec<u32> {
        path.iter().fold(x.to_vec(), |v, &a| self.maps[a].apply(&v))
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.quiver;
        let dims: Vec<String> = (0..self.dims.len()).map(|v| format!("{}:{}", q.vertex_name(v), self.dims[v])).collect();
        writeln!(f, "dims {}", dims.join(" "))?;
        for (a, m) in self.maps.iter().enumerate() {
            if m.rows() == 0 || m.cols() == 0 {
                continue;
            }
            let rows: Vec<String> = (0..m.rows())
                .map(|r| m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            writeln!(f, "{}: [{}]", q.arrow_name(a), rows.join("; "))?;
        }
        Ok(())
    }
}

/// A tuple of subspaces `U_v ⊆ M_v`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubrepPoint {
    pub spaces: Vec<Subspace>,
}

impl SubrepPoint {
    pub fn zero(m: &Representation) -> Self {
        SubrepPoint { spaces: m.dims().iter().map(|&d| Subspace::zero(m.field(), d)).collect() }
    }

    pub fn full(m: &Representation) -> Self {
        SubrepPoint { spaces: m.dims().iter().map(|&d| Subspace::full(m.field(), d)).collect() }
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.spaces.iter().map(Subspace::dim).collect())
    }

    pub fn contains(&self, other: &SubrepPoint) -> bool {
        self.spaces.len() == other.spaces.len()
            && self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.contains_subspace(b))
    }

    /// Compact serialization: one bracketed echelon basis per vertex.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .spaces
            .iter()
            .map(|s| {
                let rows: Vec<String> = (0..s.dim())
                    .map(|r| s.basis().row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
                    .collect();
                format!("<{}>", rows.join(","))
            })
            .collect();
        parts.join(" ")
    }
}

/// A tuple `(f_v : M_v → N_v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub maps: Vec<Matrix>,
}

impl Morphism {
    pub fn identity(m: &Representation) -> Self {
        Morphism { maps: m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect() }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        Morphism { maps: m.dims().iter().zip(n.dims()).map(|(&a, &b)| Matrix::zeros(m.field(), b, a)).collect() }
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&g.maps).map(|(f, g)| f.mul(g)).collect() }
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|f| f.rank() == f.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|f| f.rank() == f.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// Checks `f_j M_α = N_α f_i` for every arrow.
    pub fn is_morphism(&self, m: &Representation, n: &Representation) -> bool {
        m.quiver().arrows().iter().enumerate().all(|(a, arr)| {
            self.maps[arr.target].mul(m.map(a)) == n.map(a).mul(&self.maps[arr.source])
        })
    }

    /// Image as a subspace tuple of the target.
    pub fn image(&self) -> SubrepPoint {
        SubrepPoint { spaces: self.maps.iter().map(Subspace::column_space).collect() }
    }

    /// Kernel as a subspace tuple of the source.
    pub fn kernel(&self) -> SubrepPoint {
        SubrepPoint { spaces: self.maps.iter().map(Matrix::nullspace).collect() }
    }

    fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }
}

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_k basis_k`.
    pub fn combination(&self, coeffs: &[u32], m: &Representation, n: &Representation) -> Morphism {
        let f = m.field();
        let mut out = Morphism::zero(m, n);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, bm) in out.maps.iter_mut().zip(&b.maps) {
                *o = o.add(&bm.scale(c));
            }
        }
        let _ = f;
        out
    }
}

/// Linear system whose kernel is `Hom(M, N)`; unknowns are the entries of
/// the `f_v`, vertex by vertex, row-major.
fn hom_system(m: &Representation, n: &Representation) -> (Matrix, Vec<usize>) {
    let f = m.field();
    let q = m.quiver();
    let mut offset = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for v in 0..m.dims().len() {
        offset.push(total);
        total += m.dims()[v] * n.dims()[v];
    }
    let eqs: usize = q.arrows().iter().map(|a| n.dims()[a.target] * m.dims()[a.source]).sum();
    let mut sys = Matrix::zeros(f, eqs, total);
    let mut row = 0;
    for (a, arr) in q.arrows().iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        let (mi, mj, ni) = (m.dims()[i], m.dims()[j], n.dims()[i]);
        let ma = m.map(a);
        let na = n.map(a);
        for r in 0..n.dims()[j] {
            for c in 0..mi {
                // (f_j M_α)[r][c] - (N_α f_i)[r][c]
                for k in 0..mj {
                    let x = ma.get(k, c);
                    if x != 0 {
                        let col = offset[j] + r * mj + k;
                        sys.set(row, col, f.add(sys.get(row, col), x));
                    }
                }
                for k in 0..ni {
                    let x = na.get(r, k);
                    if x != 0 {
                        let col = offset[i] + k * mi + c;
                        sys.set(row, col, f.sub(sys.get(row, col), x));
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offset)
}

pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_compatible(n)?;
    let (sys, offset) = hom_system(m, n);
    let kernel = sys.nullspace();
    let f = m.field();
    let basis = (0..kernel.dim())
        .map(|r| {
            let v = kernel.basis().row(r);
            let maps = (0..m.dims().len())
                .map(|x| {
                    let (rows, cols) = (n.dims()[x], m.dims()[x]);
                    Matrix::from_data(f, rows, cols, v[offset[x]..offset[x] + rows * cols].to_vec())
                })
                .collect();
            Morphism { maps }
        })
        .collect();
    Ok(HomSpace { basis })
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_compatible(n)?;
    let (sys, _) = hom_system(m, n);
    Ok(sys.cols() - sys.rank())
}

pub fn end_dim(m: &Representation) -> usize {
    hom_dim(m, m).expect("same representation")
}

/// Indecomposable projective `P_v` on the basis of nonzero paths starting at
/// `v`; the basis vector of a path sits at the path's end vertex.
#[derive(Clone, Debug)]
pub struct PathModule {
    pub rep: Representation,
    /// `paths[w][k]` is the path (traversal order) of the k-th basis vector at `w`.
    pub paths: Vec<Vec<Vec<ArrowId>>>,
}

pub fn projective_module(q: &Arc<BoundQuiver>, field: PrimeField, v: VertexId) -> Result<PathModule> {
    let all = q.nonzero_paths_from(v)?;
    let n = q.vertex_count();
    let mut paths: Vec<Vec<Vec<ArrowId>>> = vec![Vec::new(); n];
    for p in all {
        let end = p.last().map_or(v, |&a| q.arrow(a).target);
        paths[end].push(p);
    }
    let dims: Vec<usize> = paths.iter().map(Vec::len).collect();
    let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
    for (b, arr) in q.arrows().iter().enumerate() {
        for (k, p) in paths[arr.source].iter().enumerate() {
            let mut ext = p.clone();
            ext.push(b);
            if let Some(idx) = paths[arr.target].iter().position(|x| *x == ext) {
                maps[b].set(idx, k, 1);
            }
        }
    }
    let rep = Representation::new(q.clone(), field, dims, maps)?;
    Ok(PathModule { rep, paths })
}

/// Indecomposable injective `I_v`, the dual of the projective at `v` over the
/// opposite quiver.
pub fn injective_module(q: &Arc<BoundQuiver>, field: PrimeField, v: VertexId) -> Result<Representation> {
    let op = Arc::new(q.opposite());
    let p = projective_module(&op, field, v)?;
    Ok(p.rep.dualize_over(q.clone()))
}

/// The morphism `P_v → M` sending the trivial path to `x ∈ M_v`.
pub fn morphism_from_projective(p: &PathModule, m: &Representation, v: VertexId, x: &[u32]) -> Morphism {
    let f = m.field();
    let maps = p
        .paths
        .iter()
        .enumerate()
        .map(|(w, ps)| {
            let mut mat = Matrix::zeros(f, m.dims()[w], ps.len());
            for (k, path) in ps.iter().enumerate() {
                let y = if path.is_empty() { x.to_vec() } else { m.act(path, x) };
                for (r, &val) in y.iter().enumerate() {
                    mat.set(r, k, val);
                }
            }
            mat
        })
        .collect();
    let _ = v;
    Morphism { maps }
}
