//! Dense square complex matrices and the spectral toolkit built on them.
//!
//! Everything here targets small dimensions (n up to a few dozen). Hermitian
//! eigenproblems are solved with cyclic complex Jacobi rotations, singular
//! values come from the eigenvalues of `A* A`, and determinants and inverses
//! use partially pivoted LU.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Relative tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest admissible `s_min / s_max` before a matrix is treated as singular.
pub const SINGULAR_RATIO: f64 = 1e-13;
/// Smallest admissible `lambda_min / lambda_max` for positive definite input.
pub const HPD_RATIO: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense `n x n` complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:>11.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major entries, rejecting wrong lengths and non-finite values.
    pub fn from_row_major(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: data.len() });
        }
        let m = Self { n, data };
        m.check_finite()?;
        Ok(m)
    }

    /// Builds a real matrix from rows.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::from_row_major(n, data)
    }

    pub fn from_diag(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn check_finite(&self) -> Result<()> {
        for (idx, z) in self.data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: idx / self.n, col: idx % self.n });
            }
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Hermitian part `(A + A*)/2`, exactly Hermitian by construction.
    pub fn re_part(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = C64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out
    }

    /// Skew part `(A - A*)/(2i)`, exactly Hermitian by construction.
    pub fn im_part(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        let half_over_i = C64::new(0.0, -0.5);
        for i in 0..n {
            out[(i, i)] = C64::new(self[(i, i)].im, 0.0);
            for j in (i + 1)..n {
                let z = (self[(i, j)] - self[(j, i)].conj()) * half_over_i;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of `(A - A*)/2`.
    pub fn asymmetry(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = (self[(i, j)] - self[(j, i)].conj()) * 0.5;
                let w = if i == j { 1.0 } else { 2.0 };
                acc += w * d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.asymmetry() <= rel_tol * self.norm_fro().max(f64::MIN_POSITIVE)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// `A + c I`.
    pub fn shift(&self, c: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] += c;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> Self {
        let (p, q) = (self.n, other.n);
        let n = p * q;
        let mut out = Self::zeros(n);
        for i1 in 0..p {
            for j1 in 0..p {
                let a = self[(i1, j1)];
                if a == ZERO {
                    continue;
                }
                for i2 in 0..q {
                    for j2 in 0..q {
                        out[(i1 * q + i2, j1 * q + j2)] = a * other[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    /// Matrix 1-norm (maximum column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn assert_same_dim(&self, other: &CMatrix) {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.assert_same_dim(rhs);
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.assert_same_dim(rhs);
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.assert_same_dim(rhs);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for CMatrix {
            type Output = CMatrix;
            fn $method(self, rhs: CMatrix) -> CMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $method(self, rhs: &CMatrix) -> CMatrix {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Re(A), the Hermitian part.
pub fn re_part(a: &CMatrix) -> CMatrix {
    a.re_part()
}

/// Im(A), the skew part divided by i.
pub fn im_part(a: &CMatrix) -> CMatrix {
    a.im_part()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
#[derive(Clone, Debug)]
pub struct HermEigen {
    pub values: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `values`.
    pub vectors: CMatrix,
}

impl HermEigen {
    pub fn reconstruct(&self) -> CMatrix {
        self.map_values(|x| x)
    }

    /// `U f(Λ) U*`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let u = &self.vectors;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &w) in fv.iter().enumerate() {
                    acc += u[(i, k)] * u[(j, k)].conj() * w;
                }
                if i == j {
                    out[(i, i)] = C64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }
}

/// Singular values sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum(pub Vec<f64>);

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn largest(&self) -> f64 {
        self.0[0]
    }

    pub fn smallest(&self) -> f64 {
        *self.0.last().expect("empty spectrum")
    }

    /// Product of the `k` largest singular values.
    pub fn top_k_product(&self, k: usize) -> f64 {
        self.0[..k].iter().product()
    }

    /// Running products `prod_{j<=k} s_j` for `k = 1..=n`.
    pub fn prefix_products(&self) -> Vec<f64> {
        self.0
            .iter()
            .scan(1.0, |acc, &s| {
                *acc *= s;
                Some(*acc)
            })
            .collect()
    }
}

/// Cyclic Jacobi on the Hermitian part of `h`. Returns unsorted eigenvalues
/// and, when requested, the accumulated unitary.
fn jacobi(h: &CMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>)> {
    let n = h.n();
    let mut a = h.re_part();
    let mut v = want_vectors.then(|| CMatrix::identity(n));
    let scale = a.norm_fro();
    if scale == 0.0 || n == 1 {
        let vals = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok((vals, v));
    }
    let threshold = 1e-15 * scale;
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }
    Ok(((0..n).map(|i| a[(i, i)].re).collect(), v))
}

/// One complex Jacobi rotation annihilating `a[p][q]`: `a <- J* a J`, `v <- v J`.
fn rotate(a: &mut CMatrix, v: Option<&mut CMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = a.n();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * jpp + vkq * jqp;
            v[(k, q)] = vkp * jpq + vkq * jqq;
        }
    }
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    let tol = HERMITIAN_TOL * h.norm_fro();
    let asym = h.asymmetry();
    if asym > tol {
        return Err(Error::NotHermitian { asymmetry: asym, tol });
    }
    Ok(())
}

/// Full eigen-decomposition of a Hermitian matrix.
pub fn herm_eigen(h: &CMatrix) -> Result<HermEigen> {
    check_hermitian(h)?;
    sym_eigen(h)
}

/// Eigenvalues (descending) of a Hermitian matrix.
pub fn herm_eigvals(h: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    sym_eigvals(h)
}

/// Eigen-decomposition of the Hermitian part of `h`, no symmetry check.
pub(crate) fn sym_eigen(h: &CMatrix) -> Result<HermEigen> {
    let (vals, vecs) = jacobi(h, true)?;
    let vecs = vecs.expect("vectors requested");
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let values = order.iter().map(|&i| vals[i]).collect();
    let vectors = CMatrix::from_fn(n, |r, c| vecs[(r, order[c])]);
    Ok(HermEigen { values, vectors })
}

/// Eigenvalues (descending) of the Hermitian part of `h`, no symmetry check.
pub(crate) fn sym_eigvals(h: &CMatrix) -> Result<Vec<f64>> {
    let (mut vals, _) = jacobi(h, false)?;
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

pub(crate) fn lambda_min(h: &CMatrix) -> Result<f64> {
    Ok(*sym_eigvals(h)?.last().expect("non-empty"))
}

/// Spectral norm of a Hermitian matrix (largest eigenvalue magnitude).
pub(crate) fn herm_norm(h: &CMatrix) -> Result<f64> {
    let v = sym_eigvals(h)?;
    Ok(v[0].abs().max(v[v.len() - 1].abs()))
}

pub fn singular_values(a: &CMatrix) -> Result<SingularSpectrum> {
    let gram = &a.adjoint() * a;
    let vals = sym_eigvals(&gram)?;
    Ok(SingularSpectrum(vals.into_iter().map(|x| x.max(0.0).sqrt()).collect()))
}

/// Product of the `k` largest singular values.
pub fn topk_sv_product(a: &CMatrix, k: usize) -> Result<f64> {
    if k == 0 || k > a.n() {
        return Err(Error::invalid(format!("k = {k} outside 1..={}", a.n())));
    }
    Ok(singular_values(a)?.top_k_product(k))
}

/// Spectral norm `s_1(A)`.
pub fn op_norm(a: &CMatrix) -> Result<f64> {
    Ok(singular_values(a)?.largest())
}

/// Partially pivoted LU factorization `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    odd_swaps: bool,
    zero_pivot: bool,
}

impl Lu {
    pub fn new(a: &CMatrix) -> Self {
        let n = a.n();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        let mut zero_pivot = false;
        for col in 0..n {
            let (piv, best) = (col..n)
                .map(|r| (r, lu[(r, col)].norm()))
                .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best == 0.0 {
                zero_pivot = true;
                continue;
            }
            if piv != col {
                for j in 0..n {
                    lu.data.swap(piv * n + j, col * n + j);
                }
                perm.swap(piv, col);
                odd_swaps = !odd_swaps;
            }
            let d = lu[(col, col)];
            for r in (col + 1)..n {
                let f = lu[(r, col)] / d;
                lu[(r, col)] = f;
                if f == ZERO {
                    continue;
                }
                for j in (col + 1)..n {
                    let u = lu[(col, j)];
                    lu[(r, j)] -= f * u;
                }
            }
        }
        Self { lu, perm, odd_swaps, zero_pivot }
    }

    pub fn det(&self) -> C64 {
        if self.zero_pivot {
            return ZERO;
        }
        let prod: C64 = (0..self.lu.n()).map(|i| self.lu[(i, i)]).product();
        if self.odd_swaps {
            -prod
        } else {
            prod
        }
    }

    pub fn is_singular(&self) -> bool {
        self.zero_pivot
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        let n = self.lu.n();
        let lu = &self.lu;
        let mut x = CMatrix::from_fn(n, |i, j| b[(self.perm[i], j)]);
        for c in 0..n {
            for i in 0..n {
                let mut acc = x[(i, c)];
                for k in 0..i {
                    acc -= lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = x[(i, c)];
                for k in (i + 1)..n {
                    acc -= lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = acc / lu[(i, i)];
            }
        }
        x
    }
}

pub fn det(a: &CMatrix) -> C64 {
    Lu::new(a).det()
}

fn singular_error(a: &CMatrix) -> Error {
    let ratio = singular_values(a)
        .map(|s| if s.largest() > 0.0 { s.smallest() / s.largest() } else { 0.0 })
        .unwrap_or(0.0);
    Error::Singular { ratio }
}

/// Inverse via LU. Inputs with `s_min / s_max <= 1e-13` are rejected.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let lu = Lu::new(a);
    if lu.is_singular() {
        return Err(singular_error(a));
    }
    let inv = lu.solve(&CMatrix::identity(a.n()));
    inv.check_finite().map_err(|_| singular_error(a))?;
    // cond_1 bounds cond_2 within a factor n; only pay for an SVD near the cutoff.
    let cond1 = a.norm_one() * inv.norm_one();
    if cond1 * (a.n() as f64) > 0.1 / SINGULAR_RATIO {
        let s = singular_values(a)?;
        if s.smallest() <= SINGULAR_RATIO * s.largest() {
            return Err(Error::Singular { ratio: s.smallest() / s.largest() });
        }
    }
    Ok(inv)
}

fn hpd_eigen(h: &CMatrix) -> Result<HermEigen> {
    let eig = herm_eigen(h)?;
    let (lo, hi) = (eig.min(), eig.max());
    if !(lo > 0.0 && lo > HPD_RATIO * hi) {
        return Err(Error::NotPositiveDefinite { lambda_min: lo, lambda_max: hi });
    }
    Ok(eig)
}

/// `H^p` for Hermitian positive definite `H`.
pub fn hpd_power(h: &CMatrix, p: f64) -> Result<CMatrix> {
    let eig = hpd_eigen(h)?;
    if p == 1.0 {
        return Ok(h.re_part());
    }
    if p == 0.0 {
        return Ok(CMatrix::identity(h.n()));
    }
    Ok(eig.map_values(|x| x.powf(p)))
}

/// Applies a scalar function to the spectrum of a Hermitian matrix.
pub fn herm_apply(h: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    Ok(herm_eigen(h)?.map_values(f))
}

/// `|A| = (A* A)^{1/2}`.
pub fn abs_matrix(a: &CMatrix) -> Result<CMatrix> {
    let gram = &a.adjoint() * a;
    Ok(sym_eigen(&gram)?.map_values(|x| x.max(0.0).sqrt()))
}

/// Result of a Loewner-order comparison `A <= B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoewnerComparison {
    pub holds: bool,
    /// `lambda_min(B - A)`.
    pub margin: f64,
}

/// Tests `A <= B` in the Loewner order. Both inputs are symmetrized first.
pub fn loewner_leq(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<LoewnerComparison> {
    let margin = lambda_min(&(b - a))?;
    let scale = 1f64.max(herm_norm(a)?).max(herm_norm(b)?);
    Ok(LoewnerComparison { holds: margin >= -tol * scale, margin })
}
