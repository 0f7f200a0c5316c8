mod common;

use common::*;
use proptest::prelude::*;
use sectorix::cmat::{
    abs_matrix, det, herm_eigen, herm_eigvals, hpd_power, inverse, loewner_leq, op_norm, singular_values, topk_sv_product,
};
use sectorix::sector::{gen_sector, SectorGenSpec};
use sectorix::{CMatrix, Error, C64};

fn matrix_strategy() -> impl Strategy<Value = CMatrix> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), n * n)
            .prop_map(move |v| CMatrix::from_fn(n, |i, j| C64::new(v[i * n + j].0, v[i * n + j].1)))
    })
}

fn hermitian(a: &CMatrix) -> CMatrix {
    (a + &a.adjoint()).scale(0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigen_matches_reference(a in matrix_strategy()) {
        let h = hermitian(&a);
        let ours = herm_eigvals(&h).unwrap();
        let reference = eigvals(&h);
        let scale = h.norm_fro().max(1.0);
        for (x, y) in ours.iter().zip(&reference) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn eigen_reconstructs_with_unitary_vectors(a in matrix_strategy()) {
        let h = hermitian(&a);
        let e = herm_eigen(&h).unwrap();
        let scale = h.norm_fro().max(1.0);
        prop_assert!((&e.reconstruct() - &h).norm_fro() <= 1e-10 * scale);
        let q = &e.vectors;
        prop_assert!((&(&q.adjoint() * q) - &CMatrix::identity(h.n())).norm_fro() <= 1e-10);
    }

    #[test]
    fn singular_values_match_reference(a in matrix_strategy()) {
        let ours = singular_values(&a).unwrap();
        let reference = svals(&a);
        let s1 = reference[0].max(1.0);
        for (x, y) in ours.values().iter().zip(&reference) {
            prop_assert!((x - y).abs() <= 1e-9 * s1);
        }
        prop_assert!((op_norm(&a).unwrap() - reference[0]).abs() <= 1e-9 * s1);
    }

    #[test]
    fn determinant_matches_reference(a in matrix_strategy()) {
        let ours = det(&a);
        let reference = det_ref(&a);
        prop_assert!((ours - reference).norm() <= 1e-9 * reference.norm().max(1.0));
    }

    #[test]
    fn top_n_product_is_abs_det(a in matrix_strategy()) {
        let n = a.n();
        let p = topk_sv_product(&a, n).unwrap();
        let d = det_ref(&a).norm();
        prop_assert!((p - d).abs() <= 1e-8 * d.max(1e-300) + 1e-12 * svals(&a)[0].powi(n as i32));
    }

    #[test]
    fn unitary_invariance(a in matrix_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = unitary(a.n(), &mut r);
        let v = unitary(a.n(), &mut r);
        let x = singular_values(&a).unwrap();
        let y = singular_values(&(&(&u * &a) * &v)).unwrap();
        let s1 = x.largest().max(1.0);
        for (p, q) in x.values().iter().zip(y.values()) {
            prop_assert!((p - q).abs() <= 1e-10 * s1);
        }
    }

    #[test]
    fn inverse_is_two_sided(a in matrix_strategy()) {
        match inverse(&a) {
            Ok(ai) => {
                let id = CMatrix::identity(a.n());
                let cond = svals(&a)[0] / svals(&a).last().unwrap();
                prop_assert!((&(&a * &ai) - &id).norm_fro() <= 1e-12 * cond.max(1.0) * a.n() as f64);
                prop_assert!(rel_fro(&ai, &inv(&a)) <= 1e-10 * cond.max(1.0));
            }
            Err(Error::Singular { ratio }) => prop_assert!(ratio < 1e-12),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn abs_squares_to_gram(a in matrix_strategy()) {
        let m = abs_matrix(&a).unwrap();
        let gram = &a.adjoint() * &a;
        prop_assert!((&(&m * &m) - &gram).norm_fro() <= 1e-9 * gram.norm_fro().max(1.0));
    }
}

fn det_ref(a: &CMatrix) -> C64 {
    let d = common::det(a);
    C64::new(d.re, d.im)
}

#[test]
fn real_part_singular_values_below_generated_matrix() {
    for seed in 0..200 {
        let n = 2 + (seed as usize % 5);
        let a = gen_sector(&SectorGenSpec::new(n, 1.2, seed)).unwrap().matrix;
        let s = svals(&a);
        let sr = svals(&a.re_part());
        for j in 0..n {
            assert!(sr[j] <= s[j] + 1e-9 * s[0], "seed {seed}, j {j}");
        }
    }
}

#[test]
fn hpd_power_matches_reference() {
    let mut r = rng(5);
    for n in 1..=6 {
        let h = random_hpd(n, 0.1, 20.0, &mut r);
        for p in [-2.0, -0.5, 0.5, 1.0, 2.5] {
            assert!(rel_fro(&hpd_power(&h, p).unwrap(), &hpd_pow(&h, p)) < 1e-11, "n {n} p {p}");
        }
    }
    let indefinite = CMatrix::from_real_diag(&[1.0, -1.0]);
    assert!(matches!(hpd_power(&indefinite, 0.5), Err(Error::NotPositiveDefinite { .. })));
}

#[test]
fn loewner_comparison() {
    let a = CMatrix::from_real_diag(&[1.0, 2.0]);
    let b = CMatrix::from_real_diag(&[1.5, 2.0]);
    let c = loewner_leq(&a, &b, 1e-12).unwrap();
    assert!(c.holds && c.margin.abs() < 1e-15);
    let c = loewner_leq(&b, &a, 1e-12).unwrap();
    assert!(!c.holds && (c.margin + 0.5).abs() < 1e-14);
}

#[test]
fn structural_errors() {
    assert!(matches!(CMatrix::from_row_major(2, vec![C64::new(0.0, 0.0); 3]), Err(Error::DimensionMismatch { expected: 4, got: 3 })));
    assert!(matches!(CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0]]), Err(Error::NotSquare { .. })));
    let bad = CMatrix::from_fn(2, |i, j| if i == 1 && j == 0 { C64::new(f64::NAN, 0.0) } else { C64::new(1.0, 0.0) });
    assert!(matches!(bad.check_finite(), Err(Error::NonFinite { row: 1, col: 0 })));
    let nh = CMatrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
    assert!(matches!(herm_eigen(&nh), Err(Error::NotHermitian { .. })));
    let singular = CMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
    assert!(matches!(inverse(&singular), Err(Error::Singular { .. })));
}
