//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use nadiv_core::algebra::Identity;
use nadiv_core::constructions::{self, canonical, gcd_extension, mutation, GcdParams, Table1Params};
use nadiv_core::division::{self, DivisionStatus};
use nadiv_core::{classify, lie};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

fn criterion(number: u32, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("[acceptance] {number:2}. {name}: PASS"),
        Err(e) => {
            println!("[acceptance] {number:2}. {name}: FAIL");
            resume_unwind(e);
        }
    }
}

#[test]
fn criterion_01_canonical_tables() {
    criterion(1, "canonical table identities", || {
        let o = canonical("O").unwrap();
        for id in [
            Identity::Alternative,
            Identity::Flexible,
            Identity::NcJordan,
            Identity::MoufangLeft,
            Identity::MoufangRight,
            Identity::MoufangMiddle,
        ] {
            assert!(o.check_identity(id, 100, 42).unwrap().holds, "octonions fail {id}");
        }
        let rep = o.check_identity(Identity::Associative, 100, 42).unwrap();
        assert!(!rep.holds);
        let w = rep.witness.expect("associativity witness");
        assert_eq!(w.args[0], o.basis_element(1), "witness x should be i");
        assert_eq!(w.args[1], o.basis_element(2), "witness y should be j");
        assert_eq!(w.args[2], o.basis_element(4), "witness z should be f");
        let assoc = o.associator(&w.args[0], &w.args[1], &w.args[2]).unwrap();
        let mut expected = DVector::zeros(8);
        expected[o.label_index("kf").unwrap()] = 2.0;
        assert!((assoc - expected).norm() <= 1e-9);
        let h = canonical("H").unwrap();
        assert!(h.check_identity(Identity::Associative, 100, 42).unwrap().holds);
    });
}

#[test]
fn criterion_02_mutation_laws() {
    criterion(2, "mutation composition and symmetrization", || {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for base in ["H", "O"] {
            let a = canonical(base).unwrap();
            for _ in 0..20 {
                let lam: f64 = rng.gen_range(-2.0..2.0);
                let mu: f64 = rng.gen_range(-2.0..2.0);
                let lhs = mutation(&mutation(&a, lam), mu);
                let rhs = mutation(&a, 2.0 * lam * mu - lam - mu + 1.0);
                assert!(lhs.entrywise_distance(&rhs) <= 1e-12);
            }
            let half = mutation(&a, 0.5);
            assert!(half.check_identity(Identity::Commutative, 1, 42).unwrap().holds);
        }
    });
}

#[test]
fn criterion_03_division_boundary() {
    criterion(3, "division boundary of the one-parameter doubling", || {
        let h = canonical("H").unwrap();
        for delta in [0.0, 1.0, -1.0, 1.9, -1.9, 2.1, -2.1, 3.0, -3.0] {
            let e = gcd_extension(&h, GcdParams::classical(-1.0, delta).unwrap()).unwrap();
            let v = division::zero_divisor_search(&e, 4000, 42).unwrap();
            let expected = division::e_delta_criterion(delta);
            match v.status {
                DivisionStatus::Division => assert!(expected, "delta = {delta}: spurious division"),
                DivisionStatus::NotDivision => {
                    assert!(!expected, "delta = {delta}: spurious zero divisor");
                    assert!(division::recheck_certificate(&e, &v), "delta = {delta}: bad certificate");
                }
                DivisionStatus::Indeterminate => {
                    panic!("delta = {delta}: indeterminate away from the boundary")
                }
            }
        }
        for delta in [2.0, -2.0] {
            let e = gcd_extension(&h, GcdParams::classical(-1.0, delta).unwrap()).unwrap();
            let v = division::zero_divisor_search(&e, 4000, 42).unwrap();
            assert!(
                v.status != DivisionStatus::Division,
                "delta = {delta} must not probe as division"
            );
        }
    });
}

#[test]
fn criterion_04_isotopy_matrices() {
    criterion(4, "explicit isotopy matrices reproduce the doubling", || {
        let o = canonical("O").unwrap();
        let h = canonical("H").unwrap();
        for alpha in [0.6, 0.8, 1.0] {
            let (phi, psi, delta) = constructions::prop44_isotopy_matrices(alpha).unwrap();
            assert!(
                (delta * delta - 2.0 * (1.0 - alpha) * (2.0 * alpha + 1.0) * (2.0 * alpha + 1.0))
                    .abs()
                    <= 1e-12
            );
            let iso = constructions::vector_isotope(&o, &(&phi * &psi)).unwrap();
            let e = gcd_extension(&h, GcdParams::classical(-1.0, delta).unwrap()).unwrap();
            assert!(iso.entrywise_distance(&e) <= 1e-9, "alpha = {alpha}");
        }
    });
}

#[test]
fn criterion_05_gcd_flexibility() {
    criterion(5, "generalized doubling flexibility transfer", || {
        let h = canonical("H").unwrap();
        // the counterexample first
        let bad = GcdParams::new(-1.0, 1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(!constructions::gcd_flexible_predicate(&bad));
        let e = gcd_extension(&h, bad).unwrap();
        assert!(!e.check_identity(Identity::Flexible, 30, 42).unwrap().holds);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for draw in 0..50 {
            let gamma: f64 = {
                let g: f64 = rng.gen_range(0.3..2.0);
                if rng.gen_bool(0.5) {
                    -g
                } else {
                    g
                }
            };
            let alpha: f64 = rng.gen_range(0.55..1.5);
            let delta: f64 = rng.gen_range(-1.0..1.0);
            let theta: f64 = rng.gen_range(-1.0..1.0);
            let transfer = draw % 2 == 0;
            let beta = if transfer {
                gamma * theta
            } else {
                gamma * theta + rng.gen_range(0.05..0.8) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }
            };
            let p = GcdParams::new(gamma, alpha, beta, delta, theta).unwrap();
            let e = gcd_extension(&h, p).unwrap();
            let flexible = e.check_identity(Identity::Flexible, 30, 42).unwrap().holds;
            assert_eq!(
                flexible,
                constructions::gcd_flexible_predicate(&p),
                "draw {draw}: flexibility must match beta = gamma theta"
            );
        }
    });
}

#[test]
fn criterion_06_derivation_dimensions() {
    criterion(6, "derivation dimensions and rank gaps", || {
        let gap_of = |d: &lie::DerivationAlgebra| -> f64 {
            let n2 = d.algebra_dim * d.algebra_dim;
            if d.dim == 0 || d.dim == n2 {
                f64::INFINITY
            } else {
                d.singular_values[n2 - d.dim - 1] / d.singular_values[n2 - d.dim].max(1e-300)
            }
        };
        for (name, want) in [("R", 0), ("C", 0), ("H", 3), ("O", 14)] {
            let d = lie::derivation_basis(&canonical(name).unwrap());
            assert_eq!(d.dim, want, "{name}");
            assert!(gap_of(&d) >= 1e3, "{name}: rank gap too small");
        }
        let o = canonical("O").unwrap();
        for lam in [0.8, 2.0] {
            let d = lie::derivation_basis(&mutation(&o, lam));
            assert_eq!(d.dim, 14, "mutation {lam}");
            assert!(gap_of(&d) >= 1e3);
        }
        let h = canonical("H").unwrap();
        let e1 = gcd_extension(&h, GcdParams::new(-1.0, 0.8, 0.0, 1.0, 0.0).unwrap()).unwrap();
        let d1 = lie::derivation_basis(&e1);
        assert_eq!(d1.dim, 3);
        assert!(gap_of(&d1) >= 1e3);
        let e0 = gcd_extension(&h, GcdParams::new(-1.0, 0.8, 0.0, 0.0, 0.0).unwrap()).unwrap();
        let d0 = lie::derivation_basis(&e0);
        assert_eq!(d0.dim, 6);
        assert_eq!(d0.label.name(), "su2_plus_su2");
        assert!(gap_of(&d0) >= 1e3);
    });
}

#[test]
fn criterion_07_module_decomposition_answer() {
    criterion(7, "1+1+3+3 module decomposition with division", || {
        let h = canonical("H").unwrap();
        let e = gcd_extension(&h, GcdParams::new(-1.0, 0.8, 0.0, 1.0, 0.0).unwrap()).unwrap();
        let d = lie::derivation_basis(&e);
        assert_eq!(lie::der_module_decomposition(&e, &d, 42).unwrap(), vec![1, 1, 3, 3]);
        // division region: alpha = 0.8 > 1/2 and (2 alpha - 1) delta^2 = 0.6 < 4
        let v = division::zero_divisor_search(&e, 4000, 42).unwrap();
        assert_eq!(v.status, DivisionStatus::Division);
    });
}

#[test]
fn criterion_08_isomorphism_witnesses() {
    criterion(8, "isomorphism witnesses and mutation comparison", || {
        let h = canonical("H").unwrap();
        let em = gcd_extension(&h, GcdParams::classical(-1.0, -1.0).unwrap()).unwrap();
        let ep = gcd_extension(&h, GcdParams::classical(-1.0, 1.0).unwrap()).unwrap();
        let mut f = DMatrix::<f64>::identity(8, 8);
        for i in 4..8 {
            f[(i, i)] = -1.0;
        }
        assert!(lie::is_isomorphism(&em, &ep, &f));
        assert!(nadiv_core::algebra::homomorphism_residual(&em, &ep, &f) <= 1e-9);
        assert!(classify::verify_iso_witness(&em, &ep, &f));
        let a75 = mutation(&h, 0.75);
        let a90 = mutation(&h, 0.9);
        let a25 = mutation(&h, 0.25);
        assert!(matches!(
            classify::compare(&a75, &a90, 42).unwrap(),
            classify::Comparison::Distinguished { .. }
        ));
        assert_eq!(classify::compare(&a75, &a25, 42).unwrap(), classify::Comparison::Compatible);
    });
}

fn draw_table1(rng: &mut rand_chacha::ChaCha8Rng) -> Table1Params {
    let biased = rng.gen_bool(0.5);
    let mut v: Vec<f64> = if biased {
        let mut v: Vec<f64> = vec![
            1.0, 1.0, 1.0, 1.0, 0.0, 0.0, -1.0, 0.0, -1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ];
        for (i, entry) in v.iter_mut().enumerate() {
            let scale = if i < 3 { 0.25 } else { 0.35 };
            *entry += rng.gen_range(-scale..scale);
        }
        for entry in v.iter_mut().take(3) {
            *entry = f64::abs(*entry).max(0.2);
        }
        v
    } else {
        let mut v: Vec<f64> = (0..16).map(|_| rng.gen_range(-1.2..1.2)).collect();
        for entry in v.iter_mut().take(3) {
            *entry = rng.gen_range(0.4..1.6);
        }
        v
    };
    match rng.gen_range(0..4u8) {
        0 => {
            v[11] = 0.0;
            v[14] = 0.0;
        }
        1 => v[11] = 0.0,
        2 => v[14] = 0.0,
        _ => {}
    }
    Table1Params::from_slice(&v).unwrap()
}

#[test]
fn criterion_09_closed_form_vs_numeric() {
    criterion(9, "table criteria agree with the numeric oracle", || {
        // sixteen-parameter family
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260809);
        let mut tested = 0;
        let mut division_draws = 0;
        while tested < 200 {
            let p = draw_table1(&mut rng);
            let (verdict, slack) = division::table1_division_slack(&p);
            if slack <= 1e-3 {
                continue;
            }
            tested += 1;
            let alg = constructions::table1(&p).unwrap();
            let num = division::zero_divisor_search(&alg, 1500, 42).unwrap();
            let numeric = match num.status {
                DivisionStatus::Division => true,
                DivisionStatus::NotDivision => false,
                DivisionStatus::Indeterminate => {
                    panic!("table1 draw {tested}: indeterminate despite slack {slack:.3e}")
                }
            };
            assert_eq!(verdict, numeric, "table1 draw {tested} disagrees (slack {slack:.3e})");
            if verdict {
                division_draws += 1;
            }
        }
        assert!(division_draws >= 20, "too few division draws to be meaningful");

        // seven-parameter family
        let mut tested = 0;
        let mut division_draws = 0;
        while tested < 200 {
            let a = rng.gen_range(0.4..1.6);
            let b = rng.gen_range(0.4..1.6);
            let c = rng.gen_range(0.4..1.6);
            let alpha = rng.gen_range(0.2..1.5);
            let eta = rng.gen_range(-1.5..1.0);
            let lambda = rng.gen_range(-1.0..1.0);
            let rho = rng.gen_range(-2.5..2.5);
            let (verdict, slack) = division::table5_division_slack(eta, b, c, rho);
            if slack <= 1e-3 {
                continue;
            }
            tested += 1;
            let alg = constructions::table5(a, b, c, alpha, eta, lambda, rho).unwrap();
            let num = division::zero_divisor_search(&alg, 1500, 42).unwrap();
            let numeric = match num.status {
                DivisionStatus::Division => true,
                DivisionStatus::NotDivision => false,
                DivisionStatus::Indeterminate => {
                    panic!("table5 draw {tested}: indeterminate despite slack {slack:.3e}")
                }
            };
            assert_eq!(verdict, numeric, "table5 draw {tested} disagrees (slack {slack:.3e})");
            if verdict {
                division_draws += 1;
            }
        }
        assert!(division_draws >= 20);
    });
}

#[test]
fn criterion_10_table5_boundary() {
    criterion(10, "seven-parameter family boundary", || {
        let inside = constructions::table5(1.0, 1.0, 1.0, 1.0, -1.0, 0.0, 1.9).unwrap();
        let v = division::zero_divisor_search(&inside, 4000, 42).unwrap();
        assert_eq!(v.status, DivisionStatus::Division);
        let outside = constructions::table5(1.0, 1.0, 1.0, 1.0, -1.0, 0.0, 2.1).unwrap();
        let v = division::zero_divisor_search(&outside, 4000, 42).unwrap();
        assert_eq!(v.status, DivisionStatus::NotDivision);
        assert!(v.certificate.is_some());
        assert!(division::recheck_certificate(&outside, &v));
    });
}

#[test]
fn criterion_11_trivial_automorphism_group() {
    criterion(11, "trivial automorphism group construction", || {
        let frame = constructions::rotated_vector_frame();
        let vals: Vec<f64> = (1..=7).map(|i| i as f64).collect();
        let vecs: Vec<DVector<f64>> = (0..7).map(|i| frame.column(i).into()).collect();
        assert!(!lie::stabilized_quaternion_test(&vecs, &vals).unwrap());
        let s = constructions::symmetric_from_spectrum(&frame, &vals).unwrap();
        let o = canonical("O").unwrap();
        let os = constructions::vector_isotope(&o, &s).unwrap();
        assert_eq!(lie::derivation_basis(&os).dim, 0);
    });
}

#[test]
fn criterion_12_automorphisms_without_derivations() {
    criterion(12, "reflection without derivations", || {
        let t7 = constructions::table7(1.0, 0.5, 2.0, 0.75, -1.0).unwrap();
        assert_eq!(lie::derivation_basis(&t7).dim, 0);
        let b: Vec<DVector<f64>> = (0..4).map(|i| t7.basis_element(i)).collect();
        let f = lie::reflection_from_subalgebra(&t7, &b).unwrap();
        assert!(lie::is_automorphism(&t7, &f));
        assert!((&f - DMatrix::<f64>::identity(8, 8)).norm() > 1.0, "reflection is trivial");
        let t4 = constructions::table4(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(lie::derivation_basis(&t4).dim >= 1);
    });
}

#[test]
fn criterion_13_canonical_reduction_roundtrip() {
    criterion(13, "canonical reduction round-trip", || {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
        let mut done = 0;
        while done < 10 {
            let p = draw_table1(&mut rng);
            let (verdict, slack) = division::table1_division_slack(&p);
            if !verdict || slack <= 1e-3 {
                continue;
            }
            let alg = constructions::table1(&p).unwrap();
            let red = classify::canonical_table1_reduction(&alg, 42).unwrap();
            assert!(red.residual <= 1e-6, "round-trip residual {:.3e}", red.residual);
            assert!(red.params.a > 0.0 && red.params.b > 0.0 && red.params.c > 0.0);
            done += 1;
        }
    });
}

#[test]
fn criterion_14_quadratic_roundtrip_and_kaidi() {
    criterion(14, "quadratic round-trip and the definiteness test", || {
        let h = canonical("H").unwrap();
        let cases = vec![
            canonical("O").unwrap(),
            h.clone(),
            mutation(&h, 0.7),
            gcd_extension(&h, GcdParams::classical(-1.0, 1.0).unwrap()).unwrap(),
        ];
        for a in cases {
            let ex = a.extract_quadratic_structure().unwrap();
            let rebuilt = constructions::build_quadratic(&ex.structure).unwrap();
            assert!(a.entrywise_distance(&rebuilt) <= 1e-9);
            assert!(division::quadratic_division_negdef(&a).unwrap());
        }
    });
}
