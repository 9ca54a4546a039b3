//! The Cohen-Macaulay Auslander algebra `Γ` of a gentle algebra, the functor
//! `Φ : mod Λ → mod Γ`, restriction `res`, and the string maps `ι`, `π⁻`.
//!
//! Naming: a cyclic arrow `α` contributes the vertex `@α` and the arrows
//! `α+ : s(α) → @α`, `α- : @α → t(α)`. Old vertices keep their ids; the new
//! vertices follow in arrow order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffla::{Matrix, Subspace};
use crate::quiver::{cycles, is_gentle, ArrowId, BoundQuiver, CycleSet, DimVector, VertexId};
use crate::rep::{hom_dim, projective_module, Morphism, Representation};
use crate::strings::{radical_summand_string, string_module, validate_string, Letter, StringWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowImage {
    Same(ArrowId),
    Split { plus: ArrowId, minus: ArrowId },
}

#[derive(Clone, Debug)]
pub struct AuslanderQuiver {
    pub base: Arc<BoundQuiver>,
    pub gamma: Arc<BoundQuiver>,
    pub cycles: CycleSet,
    /// `@α` for each cyclic base arrow.
    pub arrow_vertex: Vec<Option<VertexId>>,
    pub arrow_map: Vec<ArrowImage>,
}

pub fn build_auslander(q: &Arc<BoundQuiver>) -> Result<AuslanderQuiver> {
    let cs = cycles(q)?;
    let mut g = BoundQuiver::new(q.name().map(|n| format!("Aus({n})")).as_deref());
    for v in q.vertices() {
        g.add_vertex(v)?;
    }
    let mut arrow_vertex = vec![None; q.arrow_count()];
    for a in cs.cyclic_arrows() {
        arrow_vertex[a] = Some(g.add_vertex(&format!("@{}", q.arrow_name(a)))?);
    }
    let mut arrow_map = Vec::with_capacity(q.arrow_count());
    for (a, arr) in q.arrows().iter().enumerate() {
        match arrow_vertex[a] {
            None => arrow_map.push(ArrowImage::Same(g.add_arrow(&arr.name, arr.source, arr.target)?)),
            Some(x) => {
                let plus = g.add_arrow(&format!("{}+", arr.name), arr.source, x)?;
                let minus = g.add_arrow(&format!("{}-", arr.name), x, arr.target)?;
                arrow_map.push(ArrowImage::Split { plus, minus });
            }
        }
    }
    for r in q.relations() {
        let (earlier, later) = (r[0], r[1]);
        match (arrow_map[earlier], arrow_map[later]) {
            (ArrowImage::Split { minus, .. }, ArrowImage::Split { plus, .. }) => g.add_relation(&[minus, plus])?,
            (ArrowImage::Same(x), ArrowImage::Same(y)) => g.add_relation(&[x, y])?,
            _ => {
                return Err(Error::Precondition(format!(
                    "relation ({}, {}) mixes cyclic and non-cyclic arrows",
                    q.arrow_name(later),
                    q.arrow_name(earlier)
                )))
            }
        }
    }
    let check = is_gentle(&g);
    if !check.ok {
        return Err(Error::NotGentle(format!("Auslander quiver: {}", check.violations.join("; "))));
    }
    Ok(AuslanderQuiver { base: q.clone(), gamma: Arc::new(g), cycles: cs, arrow_vertex, arrow_map })
}

impl AuslanderQuiver {
    pub fn is_old_vertex(&self, v: VertexId) -> bool {
        v < self.base.vertex_count()
    }

    /// The base arrow `α` whose vertex is `@α`.
    pub fn vertex_arrow(&self, v: VertexId) -> Option<ArrowId> {
        self.arrow_vertex.iter().position(|x| *x == Some(v))
    }

    fn check_base(&self, m: &Representation) -> Result<()> {
        if **m.quiver() != *self.base {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    fn check_gamma(&self, n: &Representation) -> Result<()> {
        if **n.quiver() != *self.gamma {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// `Φ(M)`: `Im M_α` at `@α` in its echelon basis `B`; `α+` reads the
    /// coordinates of `M_α x` at the pivots of `B`, `α-` is `Bᵀ`.
    pub fn phi(&self, m: &Representation) -> Result<Representation> {
        self.check_base(m)?;
        let f = m.field();
        let images: Vec<Option<Subspace>> = (0..self.base.arrow_count())
            .map(|a| self.arrow_vertex[a].map(|_| Subspace::column_space(m.map(a))))
            .collect();
        let mut dims = m.dims().to_vec();
        dims.resize(self.gamma.vertex_count(), 0);
        for (a, img) in images.iter().enumerate() {
            if let (Some(x), Some(img)) = (self.arrow_vertex[a], img) {
                dims[x] = img.dim();
            }
        }
        let mut maps: Vec<Matrix> = vec![Matrix::zeros(f, 0, 0); self.gamma.arrow_count()];
        for a in 0..self.base.arrow_count() {
            match self.arrow_map[a] {
                ArrowImage::Same(x) => maps[x] = m.map(a).clone(),
                ArrowImage::Split { plus, minus } => {
                    let img = images[a].as_ref().expect("cyclic arrow has an image");
                    maps[plus] = m.map(a).select_rows(img.pivots());
                    maps[minus] = img.basis().transpose();
                }
            }
        }
        Representation::new(self.gamma.clone(), f, dims, maps)
    }

    /// `Φ(f)` for a morphism `f : M → N`.
    pub fn phi_on_morphism(&self, f: &Morphism, m: &Representation, n: &Representation) -> Result<Morphism> {
        self.check_base(m)?;
        self.check_base(n)?;
        let field = m.field();
        let mut maps: Vec<Matrix> = f.maps.clone();
        maps.resize(self.gamma.vertex_count(), Matrix::zeros(field, 0, 0));
        for a in 0..self.base.arrow_count() {
            if let Some(x) = self.arrow_vertex[a] {
                let t = self.base.arrow(a).target;
                let im_m = Subspace::column_space(m.map(a));
                let im_n = Subspace::column_space(n.map(a));
                maps[x] = f.maps[t].mul(&im_m.basis().transpose()).select_rows(im_n.pivots());
            }
        }
        Ok(Morphism { maps })
    }

    /// `res(N)`: keep the old vertices, compose `N_{α-} N_{α+}`.
    pub fn restrict(&self, n: &Representation) -> Result<Representation> {
        self.check_gamma(n)?;
        let nb = self.base.vertex_count();
        let maps = (0..self.base.arrow_count())
            .map(|a| match self.arrow_map[a] {
                ArrowImage::Same(x) => n.map(x).clone(),
                ArrowImage::Split { plus, minus } => n.map(minus).mul(n.map(plus)),
            })
            .collect();
        Representation::new(self.base.clone(), n.field(), n.dims()[..nb].to_vec(), maps)
    }

    /// `res` on morphisms: the old-vertex components.
    pub fn restrict_morphism(&self, f: &Morphism) -> Morphism {
        Morphism { maps: f.maps[..self.base.vertex_count()].to_vec() }
    }

    /// `ι`: replace each cyclic `α` by `α- α+` (and `α^{-1}` by `α+^{-1} α-^{-1}`).
    pub fn iota(&self, w: &StringWord) -> Result<StringWord> {
        match w {
            StringWord::Trivial { vertex, sign } => Ok(StringWord::Trivial { vertex: *vertex, sign: *sign }),
            StringWord::Letters(l) => {
                let mut out = Vec::new();
                for c in l {
                    match (self.arrow_map[c.arrow], c.inverse) {
                        (ArrowImage::Same(x), inv) => out.push(Letter { arrow: x, inverse: inv }),
                        (ArrowImage::Split { plus, minus }, false) => {
                            out.push(Letter::direct(minus));
                            out.push(Letter::direct(plus));
                        }
                        (ArrowImage::Split { plus, minus }, true) => {
                            out.push(Letter::inv(plus));
                            out.push(Letter::inv(minus));
                        }
                    }
                }
                validate_string(&self.gamma, &out)
            }
        }
    }

    /// `π⁻`: truncate to the longest substring with both ends at old vertices,
    /// then collapse `α- α+` to `α`. `None` when no old vertex is visited.
    pub fn pi_minus(&self, v: &StringWord) -> Result<Option<StringWord>> {
        let walk = v.walk(&self.gamma);
        let Some(i0) = walk.iter().position(|&u| self.is_old_vertex(u)) else { return Ok(None) };
        let i1 = walk.iter().rposition(|&u| self.is_old_vertex(u)).expect("some old vertex");
        if i0 == i1 {
            let sign = match v {
                StringWord::Trivial { sign, .. } => *sign,
                _ => 1,
            };
            return Ok(Some(StringWord::Trivial { vertex: walk[i0], sign }));
        }
        let letters = &v.letters()[i0..i1];
        let mut out = Vec::new();
        let mut k = 0;
        while k < letters.len() {
            let c = letters[k];
            let base = self
                .arrow_map
                .iter()
                .position(|img| match *img {
                    ArrowImage::Same(x) => x == c.arrow,
                    ArrowImage::Split { plus, minus } => plus == c.arrow || minus == c.arrow,
                })
                .expect("every arrow of Γ comes from a base arrow");
            match self.arrow_map[base] {
                ArrowImage::Same(_) => {
                    out.push(Letter { arrow: base, inverse: c.inverse });
                    k += 1;
                }
                ArrowImage::Split { .. } => {
                    // the walk passes through @α, so the partner letter follows
                    out.push(Letter { arrow: base, inverse: c.inverse });
                    k += 2;
                }
            }
        }
        validate_string(&self.base, &out).map(Some)
    }

    /// Dimension vector of `Φ(N)` from Hom dimensions over `Λ`:
    /// `dim N̂_{@α} = dim Hom(P_{s(α)}, N) − dim Hom(R(β), N)` for the arrow
    /// `β` with `β` then `α` zero. Arrows without such `β` use correction 0
    /// and are returned in the second component.
    pub fn dimv_phi(&self, n: &Representation) -> Result<(DimVector, Vec<ArrowId>)> {
        self.check_base(n)?;
        let q = &self.base;
        let f = n.field();
        let mut d = n.dims().to_vec();
        d.resize(self.gamma.vertex_count(), 0);
        let mut flagged = Vec::new();
        for a in 0..q.arrow_count() {
            let Some(x) = self.arrow_vertex[a] else { continue };
            let s = q.arrow(a).source;
            let p = projective_module(q, f, s)?.rep;
            let mut val = hom_dim(&p, n)?;
            match q.in_arrows(s).into_iter().find(|&b| q.is_relation(a, b)) {
                Some(b) => {
                    let r = string_module(q, &radical_summand_string(q, b)?, f)?.rep;
                    val -= hom_dim(&r, n)?;
                }
                None => flagged.push(a),
            }
            d[x] = val;
        }
        Ok((DimVector(d), flagged))
    }

    /// Lifts a base dimension vector and the `@α` entries into a `Γ` vector.
    pub fn extend_dim_vector(&self, base: &DimVector, extra: &[(ArrowId, usize)]) -> DimVector {
        let mut d = base.0.clone();
        d.resize(self.gamma.vertex_count(), 0);
        for &(a, k) in extra {
            if let Some(x) = self.arrow_vertex[a] {
                d[x] = k;
            }
        }
        DimVector(d)
    }
}
