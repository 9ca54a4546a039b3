use std::fmt;

use super::{Matrix, PrimeField};

/// A subspace of `F_p^n`, stored as the unique reduced row-echelon basis.
///
/// Two subspaces are equal iff their echelon matrices are equal, so the
/// derived `Eq`/`Hash`/`Ord` give set semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, n: usize) -> Self {
        Subspace { basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (r, piv) = m.rref_with_pivots();
        let k = piv.len();
        let idx: Vec<usize> = (0..k).collect();
        Subspace { basis: r.select_rows(&idx), pivots: piv }
    }

    /// Span of the columns of `m` (the image of `m`).
    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn from_vectors(field: PrimeField, n: usize, vecs: &[Vec<u32>]) -> Self {
        Self::row_space(&Matrix::from_row_vectors(field, n, vecs))
    }

    /// Wraps an already-reduced basis; only the invariants are checked in debug builds.
    pub(crate) fn from_rref_unchecked(basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        debug_assert_eq!(basis.rref(), basis);
        Subspace { basis, pivots }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }
    #[inline]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.field();
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut residual = v.to_vec();
        for (r, &a) in coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in self.basis.row(r).iter().enumerate() {
                residual[j] = f.sub(residual[j], f.mul(a, b));
            }
        }
        residual.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Reduces `v` modulo the subspace; the result is zero on pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut residual = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let a = residual[c];
            if a == 0 {
                continue;
            }
            for (j, &b) in self.basis.row(r).iter().enumerate() {
                residual[j] = f.sub(residual[j], f.mul(a, b));
            }
        }
        residual
    }

    /// Standard basis indices complementary to the pivots; they index a basis of the quotient.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Linear forms vanishing exactly on this subspace, as the rows of a matrix.
    pub fn annihilator(&self) -> Matrix {
        let ns = self.basis.nullspace();
        ns.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::row_space(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let constraints = self.annihilator().vstack(&other.annihilator());
        constraints.nullspace()
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient());
        // rows of B * M^T are the images of the basis rows
        Subspace::row_space(&self.basis.mul(&m.transpose()))
    }

    /// Preimage `{x : m x ∈ self}`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient());
        self.annihilator().mul(m).nullspace()
    }

    /// All subspaces `U` of dimension `k` with `self ⊆ U ⊆ upper`.
    pub fn extensions_within(&self, upper: &Subspace, k: usize) -> Vec<Subspace> {
        let f = self.field();
        let l = self.dim();
        let h = upper.dim();
        if k < l || k > h || !upper.contains_subspace(self) {
            return Vec::new();
        }
        // express the lower space in the coordinates of the upper basis
        let lower_coords = self.basis.select_cols(upper.pivots());
        let lc = Subspace::row_space(&lower_coords);
        let complement_rows = lc.non_pivots();
        let complement = upper.basis.select_rows(&complement_rows);
        enumerate_subspaces(h - l, k - l, f)
            .map(|w| {
                let lifted = w.basis.mul(&complement);
                Subspace::row_space(&self.basis.vstack(&lifted))
            })
            .collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim())
            .map(|r| self.basis.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "<{}>", rows.join(" | "))
    }
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Streams every `k`-dimensional subspace of `F_p^n` exactly once.
///
/// Order: pivot patterns in lexicographic order, then the free entries as a
/// base-`p` counter with the last free entry varying fastest.
pub fn enumerate_subspaces(n: usize, k: usize, field: PrimeField) -> SubspaceIter {
    assert!(k <= n, "subspace dimension {k} exceeds ambient {n}");
    let pivots: Vec<usize> = (0..k).collect();
    let mut it = SubspaceIter { field, n, k, pivots, free: Vec::new(), counter: Vec::new(), done: false };
    it.reset_free();
    it
}

pub struct SubspaceIter {
    field: PrimeField,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
}

impl SubspaceIter {
    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &pc) in self.pivots.iter().enumerate() {
            for c in pc + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_pattern(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Subspace {
        let mut m = Matrix::zeros(self.field, self.k, self.n);
        for (r, &pc) in self.pivots.iter().enumerate() {
            m.set(r, pc, 1);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            m.set(r, c, v);
        }
        Subspace::from_rref_unchecked(m, self.pivots.clone())
    }

    fn advance(&mut self) {
        let p = self.field.p();
        for d in self.counter.iter_mut().rev() {
            *d += 1;
            if *d < p {
                return;
            }
            *d = 0;
        }
        if self.next_pattern() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.current();
        if self.k == 0 {
            self.done = true;
        } else {
            self.advance();
        }
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_subspaces(2, 1, f(2)).count(), 3);
        assert_eq!(enumerate_subspaces(3, 2, f(2)).count(), 7);
        assert_eq!(enumerate_subspaces(3, 1, f(3)).count(), 13);
        assert_eq!(enumerate_subspaces(4, 0, f(3)).count(), 1);
        assert_eq!(enumerate_subspaces(0, 0, f(3)).count(), 1);
    }

    #[test]
    fn counts_match_gaussian_binomial_and_are_distinct() {
        for p in [2u32, 3, 5] {
            for n in 0..=5usize {
                for k in 0..=n {
                    if p == 5 && n == 5 && (k == 2 || k == 3) {
                        // 20k+ subspaces; covered by the count-only check below
                        continue;
                    }
                    let all: Vec<Subspace> = enumerate_subspaces(n, k, f(p)).collect();
                    assert_eq!(all.len() as u128, gaussian_binomial(n, k, p as u64), "n={n} k={k} p={p}");
                    let set: HashSet<_> = all.iter().cloned().collect();
                    assert_eq!(set.len(), all.len());
                    for s in &all {
                        assert_eq!(s.dim(), k);
                        assert_eq!(Subspace::row_space(s.basis()), *s);
                    }
                }
            }
        }
        assert_eq!(enumerate_subspaces(5, 2, f(5)).count() as u128, gaussian_binomial(5, 2, 5));
    }

    #[test]
    fn extensions_within_counts() {
        let fld = f(3);
        let lower = Subspace::from_vectors(fld, 4, &[vec![1, 0, 0, 0]]);
        let upper = Subspace::from_vectors(fld, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
        let ext = lower.extensions_within(&upper, 2);
        assert_eq!(ext.len() as u128, gaussian_binomial(2, 1, 3));
        for u in &ext {
            assert!(u.contains_subspace(&lower));
            assert!(upper.contains_subspace(u));
        }
        let set: HashSet<_> = ext.into_iter().collect();
        assert_eq!(set.len(), 4);
        assert!(lower.extensions_within(&Subspace::zero(fld, 4), 1).is_empty());
    }

    #[test]
    fn image_preimage_intersection() {
        let fld = f(5);
        let m = Matrix::from_rows(fld, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]], 3);
        let line = Subspace::from_vectors(fld, 3, &[vec![0, 0, 1]]);
        assert_eq!(line.image_under(&m).dim(), 0);
        let plane = Subspace::from_vectors(fld, 3, &[vec![1, 0, 0], vec![0, 0, 1]]);
        let pre = plane.preimage_under(&m);
        assert_eq!(pre, plane);
        let other = Subspace::from_vectors(fld, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(plane.intersection(&other), line);
        assert_eq!(plane.sum(&other), Subspace::full(fld, 3));
    }
}
