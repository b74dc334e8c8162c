//! Construction-family properties of operator bases and GSIC/SIC POVMs.

use num_complex::Complex64;
use schmidt_scope::matrix::ComplexMatrix;
use schmidt_scope::povm::{a_from_t, builtin_sic_fiducial, HermitianBasis, Povm};
use schmidt_scope::sample;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 20-point t grid strictly inside the valid interval (endpoints included
/// separately below).
fn t_grid(basis: &HermitianBasis) -> Vec<f64> {
    let (t_min, t_max) = basis.t_range().unwrap();
    (0..20)
        .map(|i| t_min + (t_max - t_min) * (i as f64 + 0.5) / 20.0)
        .filter(|t| t.abs() > 1e-9)
        .collect()
}

#[test]
fn gsic_validates_across_t_grid() {
    for d in [2usize, 3, 4] {
        let basis = HermitianBasis::gell_mann(d).unwrap();
        for t in t_grid(&basis) {
            let povm = Povm::gsic_from_basis(&basis, t).unwrap();
            let report = povm.validate(1e-10);
            assert!(
                report.passes(1e-10),
                "d = {d}, t = {t}: {}",
                report.failure_summary(1e-10)
            );
        }
    }
}

#[test]
fn gsic_valid_at_interval_endpoints() {
    for d in [2usize, 3, 4] {
        let basis = HermitianBasis::gell_mann(d).unwrap();
        let (t_min, t_max) = basis.t_range().unwrap();
        for t in [t_min, t_max] {
            let povm = Povm::gsic_from_basis(&basis, t).unwrap();
            // elements touch the PSD boundary at the endpoints
            let report = povm.validate(1e-9);
            assert!(report.passes(1e-9), "d = {d}, t = {t}");
        }
    }
}

#[test]
fn purity_matches_a_from_t_per_element() {
    for d in [2usize, 3, 4] {
        let basis = HermitianBasis::gell_mann(d).unwrap();
        for t in t_grid(&basis) {
            let povm = Povm::gsic_from_basis(&basis, t).unwrap();
            let a = a_from_t(d, t);
            for el in povm.elements() {
                let purity = el.matmul(el).trace().re;
                assert!(
                    (purity - a).abs() < 1e-12,
                    "d = {d}, t = {t}: purity {purity} vs a {a}"
                );
            }
        }
    }
}

#[test]
fn conjugation_and_rotation_preserve_a_and_validity() {
    for d in [2usize, 3, 4] {
        let basis = HermitianBasis::gell_mann(d).unwrap();
        let (t_min, t_max) = basis.t_range().unwrap();
        let t = 0.4 * t_max + 0.1 * t_min;
        let povm = Povm::gsic_from_basis(&basis, t).unwrap();

        let conj = povm.conjugate();
        assert_eq!(conj.a(), povm.a());
        assert!(conj.validate(1e-10).passes(1e-10));

        for seed in 0..5u64 {
            let o = sample::random_orthogonal(d * d - 1, seed);
            let rotated = basis.rotate(&o).unwrap();
            let rpovm = Povm::gsic_from_basis(&rotated, t).unwrap();
            assert_eq!(rpovm.a(), povm.a());
            assert!(
                rpovm.validate(1e-10).passes(1e-10),
                "d = {d}, seed = {seed}"
            );
        }
    }
}

#[test]
fn rotated_basis_satisfies_basis_invariants() {
    let basis = HermitianBasis::gell_mann(3).unwrap();
    for seed in [11u64, 12, 13] {
        let o = sample::random_orthogonal(8, seed);
        let rotated = basis.rotate(&o).unwrap();
        for g in rotated.generators() {
            assert!(g.trace().norm() < 1e-12);
        }
        for (i, gi) in rotated.generators().iter().enumerate() {
            for (j, gj) in rotated.generators().iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gi.hs_inner(gj) - c(expect, 0.0)).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn f_basis_expansion_reconstructs_random_operators() {
    let basis = HermitianBasis::gell_mann(3).unwrap();
    let povm = Povm::gsic_from_basis(&basis, 0.01).unwrap();
    let f = povm.f_basis().unwrap();
    let mut rng = sample::test_rng(21);
    for _ in 0..50 {
        let sigma = sample::random_complex_with(3, 3, &mut rng);
        let mut rebuilt = ComplexMatrix::zeros(3, 3);
        for op in &f {
            let coeff = op.matmul(&sigma).trace();
            rebuilt = rebuilt.add(&op.scale(coeff));
        }
        assert!(rebuilt.max_abs_diff(&sigma) < 1e-10);
    }
}

#[test]
fn dual_frame_reconstruction_sweep() {
    let mut rng = sample::test_rng(22);
    for d in [2usize, 3, 4] {
        let basis = HermitianBasis::gell_mann(d).unwrap();
        let (t_min, t_max) = basis.t_range().unwrap();
        for trial in 0..10 {
            let frac = (trial as f64 + 0.5) / 10.0;
            let t = t_min + (t_max - t_min) * frac;
            if t.abs() < 1e-6 {
                continue;
            }
            let povm = Povm::gsic_from_basis(&basis, t).unwrap();
            let sigma = sample::random_hermitian_with(d, &mut rng);
            assert!(
                povm.reconstruct(&sigma).unwrap().max_abs_diff(&sigma) < 1e-10,
                "d = {d}, t = {t}"
            );
        }
    }
}

/// Generator set in the diagonal-first ordering used by some references,
/// with the permutation that maps it onto this library's
/// symmetric/antisymmetric/diagonal ordering.
fn reference_generators_d3() -> Vec<(usize, ComplexMatrix)> {
    let s = 1.0 / 2.0_f64.sqrt();
    let s6 = 1.0 / 6.0_f64.sqrt();
    let z = c(0.0, 0.0);
    let mat = |rows: [[Complex64; 3]; 3]| {
        ComplexMatrix::from_vec(3, 3, rows.iter().flatten().copied().collect()).unwrap()
    };
    vec![
        // reference index 1..8 -> library index
        (6, mat([[c(s, 0.), z, z], [z, c(-s, 0.), z], [z, z, z]])),
        (0, mat([[z, c(s, 0.), z], [c(s, 0.), z, z], [z, z, z]])),
        (1, mat([[z, z, c(s, 0.)], [z, z, z], [c(s, 0.), z, z]])),
        (3, mat([[z, c(0., -s), z], [c(0., s), z, z], [z, z, z]])),
        (
            7,
            mat([
                [c(s6, 0.), z, z],
                [z, c(s6, 0.), z],
                [z, z, c(-2.0 * s6, 0.)],
            ]),
        ),
        (2, mat([[z, z, z], [z, z, c(s, 0.)], [z, c(s, 0.), z]])),
        (4, mat([[z, z, c(0., -s)], [z, z, z], [c(0., s), z, z]])),
        (5, mat([[z, z, z], [z, z, c(0., -s)], [z, c(0., s), z]])),
    ]
}

#[test]
fn gell_mann_d3_matches_reference_set_up_to_permutation() {
    let basis = HermitianBasis::gell_mann(3).unwrap();
    for (lib_index, reference) in reference_generators_d3() {
        assert!(
            basis.generators()[lib_index].max_abs_diff(&reference) < 1e-15,
            "library generator {lib_index}"
        );
    }
}

#[test]
fn sum_operator_d3_matches_reference_sum() {
    let s = 1.0 / 2.0_f64.sqrt();
    let s6 = 1.0 / 6.0_f64.sqrt();
    let expect = ComplexMatrix::from_vec(
        3,
        3,
        vec![
            c(s + s6, 0.),
            c(s, -s),
            c(s, -s),
            c(s, s),
            c(-s + s6, 0.),
            c(s, -s),
            c(s, s),
            c(s, s),
            c(-(2.0f64 / 3.0).sqrt(), 0.),
        ],
    )
    .unwrap();
    let basis = HermitianBasis::gell_mann(3).unwrap();
    assert!(basis.sum_operator().max_abs_diff(&expect) < 1e-12);
}

#[test]
fn wh_sic_orbit_of_rotated_fiducial_stays_valid() {
    // the d = 3 family (0, 1, -e^{i theta})/sqrt(2) gives a valid SIC for
    // every theta; spot-check a few members
    let s = 1.0 / 2.0_f64.sqrt();
    for k in 0..4 {
        let theta = k as f64 * std::f64::consts::PI / 7.0;
        let f = vec![c(0., 0.), c(s, 0.), -Complex64::from_polar(s, theta)];
        let povm = Povm::sic_weyl_heisenberg(3, &f).unwrap();
        assert!(povm.validate(1e-10).passes(1e-10));
    }
}

#[test]
fn external_depolarized_sic_has_interpolated_purity() {
    let sic = Povm::sic_weyl_heisenberg(3, &builtin_sic_fiducial(3).unwrap()).unwrap();
    let lam: f64 = 0.6;
    let eye = ComplexMatrix::identity(3).scale_re((1.0 - lam) / 9.0);
    let elements: Vec<ComplexMatrix> = sic
        .elements()
        .iter()
        .map(|el| el.scale_re(lam).add(&eye))
        .collect();
    let povm = Povm::external(3, elements).unwrap();
    let expect = lam * lam / 9.0 + (1.0 - lam * lam) / 27.0;
    assert!((povm.a() - expect).abs() < 1e-13);
    assert!(povm.validate(1e-10).passes(1e-10));
}
