//! Independent reference computations built on nalgebra.
#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use sectorix::{CMatrix, C64};

pub type NMat = DMatrix<Complex<f64>>;

pub fn to_na(a: &CMatrix) -> NMat {
    let n = a.n();
    NMat::from_fn(n, n, |i, j| {
        let z = a[(i, j)];
        Complex::new(z.re, z.im)
    })
}

pub fn from_na(m: &NMat) -> CMatrix {
    CMatrix::from_fn(m.nrows(), |i, j| {
        let z = m[(i, j)];
        C64::new(z.re, z.im)
    })
}

fn herm(m: &NMat) -> NMat {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Eigenvalues of the Hermitian part, descending.
pub fn eigvals(a: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = herm(&to_na(a)).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

pub fn lambda_min(a: &CMatrix) -> f64 {
    *eigvals(a).last().unwrap()
}

pub fn lambda_max(a: &CMatrix) -> f64 {
    eigvals(a)[0]
}

pub fn svals(a: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_na(a).singular_values().iter().copied().collect();
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

pub fn det(a: &CMatrix) -> Complex<f64> {
    to_na(a).determinant()
}

pub fn inv(a: &CMatrix) -> CMatrix {
    from_na(&to_na(a).try_inverse().expect("invertible"))
}

/// `H^p` for Hermitian positive definite `H`.
pub fn hpd_pow(a: &CMatrix, p: f64) -> CMatrix {
    let e = herm(&to_na(a)).symmetric_eigen();
    let d = NMat::from_diagonal(&e.eigenvalues.map(|l| Complex::new(l.powf(p), 0.0)));
    from_na(&(&e.eigenvectors * d * e.eigenvectors.adjoint()))
}

/// `A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}`.
pub fn geo_hpd(a: &CMatrix, b: &CMatrix, v: f64) -> CMatrix {
    let h = hpd_pow(a, 0.5);
    let mh = hpd_pow(a, -0.5);
    let inner = &(&mh * b) * &mh;
    &(&h * &hpd_pow(&inner, v)) * &h
}

pub fn rel_fro(x: &CMatrix, y: &CMatrix) -> f64 {
    (x - y).norm_fro() / y.norm_fro().max(1e-300)
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Haar-ish unitary from the QR of a Gaussian sample.
pub fn unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let g = NMat::from_fn(n, n, |_, _| Complex::new(gauss(rng), gauss(rng)));
    from_na(&g.qr().q())
}

pub fn gauss(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(n, |_, _| C64::new(gauss(rng), gauss(rng)))
}

/// Hermitian positive definite with spectrum drawn from `[lo, hi]`.
pub fn random_hpd(n: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> CMatrix {
    let u = unitary(n, rng);
    let d: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    (&(&u * &CMatrix::from_real_diag(&d)) * &u.adjoint()).re_part()
}
