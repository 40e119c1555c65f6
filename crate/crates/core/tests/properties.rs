//! Property tests over the standard catalog.

use std::sync::OnceLock;

use proptest::prelude::*;
use toric_core::euler::{chi_graded_cohomology, chi_recursive};
use toric_core::{
    chi_hrr, clear_ray_coefficient, is_linearly_equivalent, principal_divisor, restrict_divisor,
    standard_catalog, Character, ChowRing, Fan, Rational, TorusDivisor,
};

fn catalog() -> &'static [Fan] {
    static CATALOG: OnceLock<Vec<Fan>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        standard_catalog()
            .iter()
            .map(|e| e.build().unwrap())
            .collect()
    })
}

/// Catalog fans of dimension at most `max_dim`.
fn fans_up_to(max_dim: usize) -> Vec<usize> {
    (0..catalog().len())
        .filter(|&i| catalog()[i].dim() <= max_dim)
        .collect()
}

fn fan_index(max_dim: usize) -> impl Strategy<Value = usize> {
    prop::sample::select(fans_up_to(max_dim))
}

fn fan_and_divisor(max_dim: usize, bound: i64) -> impl Strategy<Value = (usize, TorusDivisor)> {
    fan_index(max_dim).prop_flat_map(move |i| {
        let r = catalog()[i].num_rays();
        (
            Just(i),
            prop::collection::vec(-bound..=bound, r).prop_map(TorusDivisor::new),
        )
    })
}

fn character(dim: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(-3i64..=3, dim).prop_map(Character)
}

fn fan_divisor_character(
    max_dim: usize,
) -> impl Strategy<Value = (usize, TorusDivisor, Character)> {
    fan_and_divisor(max_dim, 4).prop_flat_map(|(i, d)| {
        let n = catalog()[i].dim();
        (Just(i), Just(d), character(n))
    })
}

fn fan_divisor_ray(max_dim: usize) -> impl Strategy<Value = (usize, TorusDivisor, usize)> {
    fan_and_divisor(max_dim, 4).prop_flat_map(|(i, d)| {
        let r = catalog()[i].num_rays();
        (Just(i), Just(d), 0..r)
    })
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chi_is_a_linear_equivalence_invariant((i, d, m) in fan_divisor_character(3)) {
        let fan = &catalog()[i];
        let moved = &d + &principal_divisor(fan, &m).unwrap();
        prop_assert_eq!(chi_hrr(fan, &d).unwrap(), chi_hrr(fan, &moved).unwrap());
        prop_assert_eq!(chi_recursive(fan, &d).unwrap(), chi_recursive(fan, &moved).unwrap());
    }

    #[test]
    fn cohomology_is_a_linear_equivalence_invariant((i, d, m) in fan_divisor_character(2)) {
        let fan = &catalog()[i];
        let moved = &d + &principal_divisor(fan, &m).unwrap();
        prop_assert_eq!(chi_graded_cohomology(fan, &d).unwrap(), chi_graded_cohomology(fan, &moved).unwrap());
    }

    #[test]
    fn difference_identity((i, d, rho) in fan_divisor_ray(3)) {
        let fan = &catalog()[i];
        let (star, restricted) = restrict_divisor(fan, &d, rho).unwrap();
        let lhs = chi_hrr(fan, &d).unwrap() - chi_hrr(fan, &d.shifted(rho, -1)).unwrap();
        prop_assert_eq!(lhs, int(chi_recursive(&star.fan, &restricted).unwrap()));
    }

    #[test]
    fn ascending_identity((i, d, rho) in fan_divisor_ray(3)) {
        let fan = &catalog()[i];
        let up = d.shifted(rho, 1);
        let (star, restricted) = restrict_divisor(fan, &up, rho).unwrap();
        let lhs = chi_recursive(fan, &up).unwrap() - chi_recursive(fan, &d).unwrap();
        prop_assert_eq!(int(lhs), chi_hrr(&star.fan, &restricted).unwrap());
    }

    #[test]
    fn three_methods_agree((i, d) in fan_and_divisor(3, 3)) {
        let fan = &catalog()[i];
        let rec = chi_recursive(fan, &d).unwrap();
        prop_assert_eq!(chi_hrr(fan, &d).unwrap(), int(rec));
        prop_assert_eq!(chi_graded_cohomology(fan, &d).unwrap(), rec);
    }

    #[test]
    fn move_choice_does_not_change_degrees(
        (i, rays) in fan_index(4).prop_flat_map(|i| {
            let f = &catalog()[i];
            (Just(i), prop::collection::vec(0..f.num_rays(), f.dim()))
        }),
        seed in any::<u64>(),
    ) {
        let fan = &catalog()[i];
        let ring = ChowRing::new(fan).unwrap();
        let mut state = seed;
        let mut choose = |candidates: &[usize]| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % candidates.len()
        };
        let mut c = ring.fundamental_class();
        for &rho in &rays {
            c = ring.multiply_ray_divisor_with(&c, rho, &mut choose);
        }
        prop_assert_eq!(c.degree(), ring.intersection_number(&ring.fundamental_class(), &rays));
    }

    #[test]
    fn monomial_order_does_not_matter(
        (i, rays, perm) in fan_index(4).prop_flat_map(|i| {
            let f = &catalog()[i];
            let n = f.dim();
            (Just(i), prop::collection::vec(0..f.num_rays(), n), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        }),
    ) {
        let fan = &catalog()[i];
        let ring = ChowRing::new(fan).unwrap();
        let permuted: Vec<usize> = perm.iter().map(|&k| rays[k]).collect();
        let x = ring.fundamental_class();
        prop_assert_eq!(ring.intersection_number(&x, &rays), ring.intersection_number(&x, &permuted));
    }

    #[test]
    fn distinct_rays_meet_iff_they_span_a_cone(
        (i, rays) in fan_index(4).prop_flat_map(|i| {
            let f = &catalog()[i];
            (Just(i), prop::sample::subsequence((0..f.num_rays()).collect::<Vec<_>>(), f.dim()))
        }),
    ) {
        let fan = &catalog()[i];
        let ring = ChowRing::new(fan).unwrap();
        let is_cone = fan.maximal_cones().iter().any(|c| rays.iter().all(|&r| c.contains(r)));
        let expected = int(i64::from(is_cone));
        prop_assert_eq!(ring.intersection_number(&ring.fundamental_class(), &rays), expected);
    }

    #[test]
    fn divisor_multiplication_is_linear(
        (i, d1, d2) in fan_index(3).prop_flat_map(|i| {
            let r = catalog()[i].num_rays();
            let div = || prop::collection::vec(-3i64..=3, r).prop_map(TorusDivisor::new);
            (Just(i), div(), div())
        }),
    ) {
        let fan = &catalog()[i];
        let ring = ChowRing::new(fan).unwrap();
        // close the product up to top degree with powers of d2
        let top = |d: &TorusDivisor| {
            let mut c = ring.multiply_divisor(&ring.fundamental_class(), d);
            for _ in 1..fan.dim() {
                c = ring.multiply_divisor(&c, &d2);
            }
            c.degree()
        };
        prop_assert_eq!(top(&(&d1 + &d2)), top(&d1) + top(&d2));
    }

    #[test]
    fn principal_divisors_are_additive((i, m1, m2) in fan_index(4).prop_flat_map(|i| {
        let n = catalog()[i].dim();
        (Just(i), character(n), character(n))
    })) {
        let fan = &catalog()[i];
        let sum = Character(m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect());
        prop_assert_eq!(
            principal_divisor(fan, &sum).unwrap(),
            &principal_divisor(fan, &m1).unwrap() + &principal_divisor(fan, &m2).unwrap()
        );
    }

    #[test]
    fn clearing_a_ray_stays_in_the_class((i, d, rho) in fan_divisor_ray(4)) {
        let fan = &catalog()[i];
        let (m, cleared) = clear_ray_coefficient(fan, &d, rho).unwrap();
        prop_assert_eq!(cleared.coefficient(rho), 0);
        prop_assert_eq!(&cleared + &principal_divisor(fan, &m).unwrap(), d.clone());
        prop_assert_eq!(is_linearly_equivalent(fan, &d, &cleared).unwrap(), Some(m));
    }

    #[test]
    fn restriction_respects_linear_equivalence((i, d, m) in fan_divisor_character(3), pick in any::<prop::sample::Index>()) {
        let fan = &catalog()[i];
        let rho = pick.index(fan.num_rays());
        let moved = &d + &principal_divisor(fan, &m).unwrap();
        let (star, a) = restrict_divisor(fan, &d, rho).unwrap();
        let (_, b) = restrict_divisor(fan, &moved, rho).unwrap();
        prop_assert!(is_linearly_equivalent(&star.fan, &a, &b).unwrap().is_some());
    }

    #[test]
    fn linear_equivalence_witness_is_unique((i, d, m) in fan_divisor_character(4)) {
        let fan = &catalog()[i];
        let moved = &d + &principal_divisor(fan, &m).unwrap();
        prop_assert_eq!(is_linearly_equivalent(fan, &moved, &d).unwrap(), Some(m));
    }

    #[test]
    fn distinct_classes_are_detected((i, d, rho) in fan_divisor_ray(4)) {
        // D and D + D_ρ never differ by a principal divisor on a complete fan
        let fan = &catalog()[i];
        prop_assert_eq!(is_linearly_equivalent(fan, &d, &d.shifted(rho, 1)).unwrap(), None);
    }
}
