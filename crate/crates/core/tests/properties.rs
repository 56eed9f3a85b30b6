//! Module-level invariants: bilinearity, operator characterizations of the
//! identities, power consistency, derivation transport and spectrum
//! invariance.

use nadiv_core::algebra::Identity;
use nadiv_core::constructions::{self, canonical, gcd_extension, mutation, GcdParams};
use nadiv_core::{classify, lie, Algebra};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

fn unit_vec(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> DVector<f64> {
    let v = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
    let norm = v.norm();
    v / norm
}

proptest! {
    #[test]
    fn multiplication_is_bilinear(seed in 0u64..1000, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let o = canonical("O").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = unit_vec(&mut rng, 8);
        let y = unit_vec(&mut rng, 8);
        let z = unit_vec(&mut rng, 8);
        let lhs = o.mul(&(alpha * &x + beta * &y), &z).unwrap();
        let rhs = alpha * o.mul(&x, &z).unwrap() + beta * o.mul(&y, &z).unwrap();
        let scale = 1.0 + lhs.norm();
        prop_assert!((lhs - rhs).norm() / scale < 1e-12);
    }

    #[test]
    fn mutation_composition_law(lam in -2.0f64..2.0, mu in -2.0f64..2.0) {
        let h = canonical("H").unwrap();
        let lhs = mutation(&mutation(&h, lam), mu);
        let rhs = mutation(&h, 2.0 * lam * mu - lam - mu + 1.0);
        prop_assert!(lhs.entrywise_distance(&rhs) < 1e-12);
    }

    #[test]
    fn left_ops_of_octonion_units_are_isometries(seed in 0u64..500) {
        let o = canonical("O").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = unit_vec(&mut rng, 8);
        let l = o.left_op(&x);
        let sv = l.svd(false, false).singular_values;
        prop_assert!((sv.min() - 1.0).abs() < 1e-9 && (sv.max() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn flexibility_matches_operator_commutation() {
    // flexible algebra: [L_x, R_x] = 0 on 100 seeded samples
    let flexible = mutation(&canonical("O").unwrap(), 0.7);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let x = unit_vec(&mut rng, 8);
        let l = flexible.left_op(&x);
        let r = flexible.right_op(&x);
        assert!((&l * &r - &r * &l).norm() <= 1e-9);
    }
    // and a witnessed failure implies a non-commuting pair
    let h = canonical("H").unwrap();
    let broken = gcd_extension(&h, GcdParams::new(-1.0, 1.0, 0.0, 0.0, 1.0).unwrap()).unwrap();
    assert!(!broken.check_identity(Identity::Flexible, 10, 42).unwrap().holds);
    let mut found = false;
    for _ in 0..100 {
        let x = unit_vec(&mut rng, 8);
        let l = broken.left_op(&x);
        let r = broken.right_op(&x);
        if (&l * &r - &r * &l).norm() > 1e-9 {
            found = true;
            break;
        }
    }
    assert!(found);
}

#[test]
fn power_associative_algebras_have_consistent_powers() {
    let m = mutation(&canonical("O").unwrap(), 0.8);
    assert!(m.check_identity(Identity::PowerAssociative, 50, 42).unwrap().holds);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let x = unit_vec(&mut rng, 8);
        for n in 1u32..=5 {
            for mm in 1u32..=(6 - n) {
                let xn = m.left_power(&x, n).unwrap();
                let xm = m.left_power(&x, mm).unwrap();
                let lhs = m.mul(&xn, &xm).unwrap();
                let rhs = m.left_power(&x, n + mm).unwrap();
                assert!((lhs - rhs).norm() <= 1e-9);
            }
        }
    }
}

#[test]
fn alternative_implies_all_moufang_identities() {
    let o = canonical("O").unwrap();
    assert!(o.check_identity(Identity::Alternative, 50, 42).unwrap().holds);
    for id in [Identity::MoufangLeft, Identity::MoufangRight, Identity::MoufangMiddle] {
        assert!(o.check_identity(id, 50, 42).unwrap().holds, "{id} fails on the octonions");
    }
}

#[test]
fn unit_satisfies_operator_equations() {
    for name in ["C", "H", "O", "Hplus"] {
        let a = canonical(name).unwrap();
        let e = a.find_unit().unwrap();
        let n = a.dim();
        let resid = (a.left_op(&e) - DMatrix::<f64>::identity(n, n)).norm()
            + (a.right_op(&e) - DMatrix::<f64>::identity(n, n)).norm();
        assert!(resid <= 1e-9, "{name}: unit residual {resid:.3e}");
    }
}

#[test]
fn generated_subalgebra_commutes_with_mutation() {
    // [S]_{A^(lambda)} = ([S]_A)^(lambda) as subspaces, lambda != 1/2
    let o = canonical("O").unwrap();
    let m = mutation(&o, 0.8);
    let gens = vec![o.basis_element(1), o.basis_element(2)];
    let in_a = o.generated_subalgebra(&gens).unwrap();
    let in_m = m.generated_subalgebra(&gens).unwrap();
    assert_eq!(in_a.ncols(), in_m.ncols());
    // same span: projecting one basis onto the other loses nothing
    let proj = &in_a * (in_a.transpose() * &in_m);
    assert!((proj - &in_m).norm() < 1e-9);
}

#[test]
fn derivations_embed_into_mutations() {
    // Der(A) is contained in Der(A^(lambda)) for every lambda, with equal
    // dimension away from the symmetrization
    let o = canonical("O").unwrap();
    let der = lie::derivation_basis(&o);
    for lam in [0.5, 0.8, 2.0, -1.0] {
        let m = mutation(&o, lam);
        for d in &der.basis {
            assert!(lie::is_derivation(&m, d), "lambda = {lam}");
        }
        if lam != 0.5 {
            assert_eq!(lie::derivation_basis(&m).dim, der.dim, "lambda = {lam}");
        }
    }
}

#[test]
fn derivations_of_quadratic_division_algebras_are_antisymmetric() {
    let e = gcd_extension(
        &canonical("H").unwrap(),
        GcdParams::new(-1.0, 0.8, 0.0, 1.0, 0.0).unwrap(),
    )
    .unwrap();
    let ex = e.extract_quadratic_structure().unwrap();
    let der = lie::derivation_basis(&e);
    assert_eq!(der.dim, 3);
    let gs = 0.5 * (&ex.structure.form + ex.structure.form.transpose());
    for d in &der.basis {
        // maps V to V: D applied to a vector-part basis element stays in V
        for p in 0..7 {
            let img = d * ex.vbasis.column(p);
            let back = &ex.vbasis * (ex.vbasis.transpose() * &img);
            assert!((&img - back).norm() < 1e-7);
        }
        // antisymmetry with respect to (.|.) on V
        let dv = ex.vbasis.transpose() * d * &ex.vbasis;
        let m = &gs * &dv;
        assert!((&m + m.transpose()).norm() < 1e-7);
    }
}

#[test]
fn module_decomposition_sums_and_is_seed_stable() {
    let e = gcd_extension(
        &canonical("H").unwrap(),
        GcdParams::new(-1.0, 0.8, 0.0, 1.0, 0.0).unwrap(),
    )
    .unwrap();
    let d = lie::derivation_basis(&e);
    let base = lie::der_module_decomposition(&e, &d, 42).unwrap();
    assert_eq!(base.iter().sum::<usize>(), 8);
    for seed in [1u64, 7, 99, 12345] {
        assert_eq!(lie::der_module_decomposition(&e, &d, seed).unwrap(), base);
    }
}

#[test]
fn isotopy_spectrum_ignores_orthogonal_factors() {
    let o = canonical("O").unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let phi = DMatrix::<f64>::from_fn(7, 7, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal))
        + 3.0 * DMatrix::<f64>::identity(7, 7);
    // an orthogonal map: plane rotation
    let mut f = DMatrix::<f64>::identity(7, 7);
    let (c, s) = (0.28f64.cos(), 0.28f64.sin());
    f[(2, 2)] = c;
    f[(2, 5)] = -s;
    f[(5, 2)] = s;
    f[(5, 5)] = c;
    let a = constructions::vector_isotope(&o, &phi).unwrap();
    let b = constructions::vector_isotope(&o, &(&phi * &f)).unwrap();
    let ia = classify::invariants(&a, 42).unwrap();
    let ib = classify::invariants(&b, 42).unwrap();
    let sa = ia.isotopy_spectrum.unwrap();
    let sb = ib.isotopy_spectrum.unwrap();
    for (x, y) in sa.iter().zip(&sb) {
        assert!((x - y).abs() < 1e-8);
    }
}

#[test]
fn gcd_with_flexible_transfer_is_noncommutative_jordan() {
    let h = canonical("H").unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let gamma: f64 = if rng.gen_bool(0.5) { -1.0 } else { -2.0 };
        let alpha = rng.gen_range(0.6..1.4);
        let theta = rng.gen_range(-1.0..1.0);
        let delta = rng.gen_range(-1.0..1.0);
        let p = GcdParams::new(gamma, alpha, gamma * theta, delta, theta).unwrap();
        let e = gcd_extension(&h, p).unwrap();
        assert!(e.check_identity(Identity::NcJordan, 25, 42).unwrap().holds);
    }
}

#[test]
fn quadratic_roundtrip_preserves_tensors() {
    let h = canonical("H").unwrap();
    let cases: Vec<Algebra> = vec![
        canonical("O").unwrap(),
        h.clone(),
        mutation(&h, 0.7),
        gcd_extension(&h, GcdParams::classical(-1.0, 1.0).unwrap()).unwrap(),
    ];
    for a in cases {
        let ex = a.extract_quadratic_structure().unwrap();
        let rebuilt = constructions::build_quadratic(&ex.structure).unwrap();
        assert!(a.entrywise_distance(&rebuilt) <= 1e-9);
    }
}
