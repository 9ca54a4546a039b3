//! Randomized isomorphism test with an exhaustive fallback over tiny Hom spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

use super::{hom_dim, hom_space, Representation};

pub const DEFAULT_ISO_TRIALS: usize = 16;

/// Largest `q^{dim Hom}` for which every element of `Hom(M, N)` is tried.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

impl IsoVerdict {
    pub fn is_iso(self) -> bool {
        self == IsoVerdict::Isomorphic
    }
}

/// Looks for an invertible element of `Hom(M, N)`.
///
/// Unequal dimension vectors or Hom/End dimensions give `NotIsomorphic`.
/// Otherwise `trials` random elements are tried; if none is invertible and
/// the Hom space is small, all of it is searched, which settles the answer.
pub fn iso_probable(m: &Representation, n: &Representation, trials: usize, seed: u64) -> Result<IsoVerdict> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic);
    }
    let e = hom_dim(m, m)?;
    if hom_dim(n, n)? != e || hom_dim(n, m)? != e {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let hs = hom_space(m, n)?;
    if hs.dim() != e {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coeffs: Vec<u32> = (0..hs.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        if hs.combination(&coeffs, m, n).is_iso() {
            return Ok(IsoVerdict::Isomorphic);
        }
    }
    let space = (f.order() as u128).checked_pow(hs.dim() as u32);
    if space.is_some_and(|s| s <= EXHAUSTIVE_LIMIT as u128) {
        let mut coeffs = vec![0u32; hs.dim()];
        loop {
            if hs.combination(&coeffs, m, n).is_iso() {
                return Ok(IsoVerdict::Isomorphic);
            }
            // base-p counter
            let mut i = 0;
            while i < coeffs.len() {
                coeffs[i] += 1;
                if coeffs[i] < f.p() {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == coeffs.len() {
                return Ok(IsoVerdict::NotIsomorphic);
            }
        }
    }
    Ok(IsoVerdict::Undecided)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ffla::PrimeField;
    use crate::rep::projective_module;
    use crate::samples;

    #[test]
    fn basic_verdicts() {
        let q = Arc::new(samples::n3());
        for p in [2, 101] {
            let f = PrimeField::new(p).unwrap();
            let p1 = projective_module(&q, f, 0).unwrap().rep;
            assert_eq!(iso_probable(&p1, &p1, 16, 0).unwrap(), IsoVerdict::Isomorphic);
            let s = Representation::simple(q.clone(), f, 0).direct_sum(&Representation::simple(q.clone(), f, 1)).unwrap();
            assert_eq!(iso_probable(&p1, &s, 16, 0).unwrap(), IsoVerdict::NotIsomorphic);
        }
    }

    #[test]
    fn kronecker_parameters_distinguished() {
        // one-parameter family members at different points
        let q = Arc::new(samples::kronecker());
        let f = PrimeField::new(2).unwrap();
        let band = |x: i64, y: i64| {
            Representation::new(
                q.clone(),
                f,
                vec![1, 1],
                vec![crate::ffla::Matrix::from_rows(f, &[vec![x]], 1), crate::ffla::Matrix::from_rows(f, &[vec![y]], 1)],
            )
            .unwrap()
        };
        let (a, b) = (band(1, 0), band(0, 1));
        assert_eq!(iso_probable(&a, &b, 0, 0).unwrap(), IsoVerdict::NotIsomorphic);
        assert_eq!(iso_probable(&a, &a, 0, 0).unwrap(), IsoVerdict::Isomorphic);
    }
}
