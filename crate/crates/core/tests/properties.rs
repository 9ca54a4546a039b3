use std::sync::Arc;

use proptest::prelude::*;

use gentle_core::auslander::build_auslander;
use gentle_core::ffla::{enumerate_subspaces, gaussian_binomial, interpolate_count};
use gentle_core::grassmannian::{enumerate_grassmannian, stratify, FingerprintBasis};
use gentle_core::io::{module_to_text, parse_module};
use gentle_core::quiver::is_gentle;
use gentle_core::random::random_gentle_quiver;
use gentle_core::rep::{ext1_dim, ext1_dim_via_restriction, hom_dim};
use gentle_core::strings::{dimv_of_string, enumerate_strings, string_module};
use gentle_core::{parse_quiver, BoundQuiver, DimVector, Polynomial, PrimeField, Representation};

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn strings_of(q: &Arc<BoundQuiver>, len: usize, field: PrimeField) -> Vec<Representation> {
    enumerate_strings(q, len).iter().map(|w| string_module(q, w, field).unwrap().rep).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subspace_count_is_gaussian_binomial(n in 0usize..5, k in 0usize..5, p in prop::sample::select(vec![2u32, 3])) {
        prop_assume!(k <= n);
        let count = enumerate_subspaces(n, k, f(p)).count() as u128;
        prop_assert_eq!(count, gaussian_binomial(n, k, p as u64));
    }

    #[test]
    fn interpolation_recovers_polynomials(coeffs in prop::collection::vec(0i64..6, 1..5)) {
        let poly = Polynomial::from_integers(&coeffs);
        let pts: Vec<(u64, u64)> = [2u64, 3, 5, 7, 11]
            .iter()
            .map(|&q| (q, coeffs.iter().rev().fold(0i64, |acc, c| acc * q as i64 + c) as u64))
            .collect();
        prop_assert_eq!(interpolate_count(&pts, 4).unwrap(), poly);
    }

    #[test]
    fn auslander_quiver_is_gentle_and_round_trips(seed in 0u64..500) {
        let q = Arc::new(random_gentle_quiver(seed, 6, false));
        let aus = build_auslander(&q).unwrap();
        prop_assert!(is_gentle(&aus.gamma).ok);
        prop_assert_eq!(&parse_quiver(&aus.gamma.to_text()).unwrap(), &*aus.gamma);
    }

    #[test]
    fn iota_and_pi_minus_invert(seed in 0u64..500) {
        let q = Arc::new(random_gentle_quiver(seed, 5, false));
        let aus = build_auslander(&q).unwrap();
        for w in enumerate_strings(&q, 4) {
            let iw = aus.iota(&w).unwrap();
            prop_assert_eq!(aus.pi_minus(&iw).unwrap(), Some(w.clone()));
            let extra = w.letters().iter().filter(|c| aus.cycles.is_cyclic(c.arrow)).count();
            prop_assert_eq!(dimv_of_string(&aus.gamma, &iw).total(), dimv_of_string(&q, &w).total() + extra);
        }
    }

    #[test]
    fn restriction_inverts_phi(seed in 0u64..500) {
        let q = Arc::new(random_gentle_quiver(seed, 5, false));
        let aus = build_auslander(&q).unwrap();
        let mods = strings_of(&q, 3, f(5));
        for m in &mods {
            prop_assert_eq!(&aus.restrict(&aus.phi(m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn hom_is_additive_and_ext_routes_agree(seed in 0u64..200) {
        let q = Arc::new(random_gentle_quiver(seed, 4, false));
        let mods = strings_of(&q, 2, f(7));
        let n = mods.len();
        let (a, b, c) = (&mods[seed as usize % n], &mods[(seed as usize / 3) % n], &mods[(seed as usize / 7) % n]);
        let bc = b.direct_sum(c).unwrap();
        prop_assert_eq!(hom_dim(a, &bc).unwrap(), hom_dim(a, b).unwrap() + hom_dim(a, c).unwrap());
        prop_assert_eq!(ext1_dim(a, b).unwrap(), ext1_dim_via_restriction(a, b).unwrap());
    }

    #[test]
    fn module_files_round_trip(seed in 0u64..200) {
        let q = Arc::new(random_gentle_quiver(seed, 5, false));
        let mods = strings_of(&q, 3, f(3));
        let m = mods[seed as usize % mods.len()].direct_sum(&mods[(seed as usize * 7) % mods.len()]).unwrap();
        let back = parse_module(&module_to_text("M", &m), &q, f(3)).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn strata_partition_the_grassmannian(seed in 0u64..100, pick in 0usize..64) {
        let q = Arc::new(random_gentle_quiver(seed, 4, false));
        let mods = strings_of(&q, 3, f(2));
        let m = mods[pick % mods.len()].direct_sum(&mods[(pick / 3) % mods.len()]).unwrap();
        let e = DimVector(m.dims().iter().map(|&d| d / 2).collect());
        let pts = enumerate_grassmannian(&m, &e).unwrap();
        for u in &pts {
            prop_assert!(m.check_stable(u).is_ok());
        }
        let basis = FingerprintBasis::new(&m, 3).unwrap();
        let strata = stratify(&m, &pts, &basis, 0).unwrap();
        prop_assert_eq!(strata.iter().map(|s| s.count).sum::<usize>(), pts.len());
    }
}
