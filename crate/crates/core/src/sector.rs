//! Accretivity tests, sector-angle certification, numerical-range sampling
//! and seeded generators for sector and positive definite test matrices.
//!
//! A matrix `A` lies in the closed sector of half-angle `alpha` exactly when
//! both rotated real parts `Re(e^{±i(π/2-α)} A)` are positive semidefinite.
//! That criterion is monotone in `alpha`, so the minimal angle is found by
//! bisection.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cmat::{lambda_min, sym_eigen, sym_eigvals, CMatrix, C64};
use crate::error::{Error, Result};
use crate::rng::{haar_unitary, rng_from_seed};

/// Absolute bisection tolerance on the certified angle, in radians.
pub const ANGLE_TOL: f64 = 1e-10;
const ACCRETIVE_REL_TOL: f64 = 1e-14;
const MAX_RESAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Accretivity {
    pub accretive: bool,
    /// `lambda_min(Re A)`.
    pub margin: f64,
}

pub fn is_accretive(a: &CMatrix) -> Result<Accretivity> {
    let margin = lambda_min(&a.re_part())?;
    let accretive = margin > ACCRETIVE_REL_TOL * a.norm_fro();
    Ok(Accretivity { accretive, margin })
}

/// A matrix with its certified (minimal) sector angle and the spectral
/// bounds of its real part.
#[derive(Clone, Debug)]
pub struct SectorCertificate {
    pub matrix: CMatrix,
    pub alpha: f64,
    /// `lambda_min(Re A)`.
    pub re_min: f64,
    /// `lambda_max(Re A)`.
    pub re_max: f64,
    /// `re_max / re_min`.
    pub h: f64,
}

/// `min(lambda_min(Re(e^{i(π/2-α)}A)), lambda_min(Re(e^{-i(π/2-α)}A)))`.
/// Non-negative iff the numerical range lies in the closed sector of half-angle `alpha`.
pub fn cone_margin(a: &CMatrix, alpha: f64) -> Result<f64> {
    let rot = FRAC_PI_2 - alpha;
    let up = lambda_min(&a.scale_c(C64::from_polar(1.0, rot)).re_part())?;
    let down = lambda_min(&a.scale_c(C64::from_polar(1.0, -rot)).re_part())?;
    Ok(up.min(down))
}

/// Smallest `alpha` with `W(A)` inside the closed sector `S_alpha`, to within
/// [`ANGLE_TOL`]. The returned value always satisfies the cone criterion.
pub fn sector_angle(a: &CMatrix) -> Result<f64> {
    let acc = is_accretive(a)?;
    if !acc.accretive {
        return Err(Error::NotAccretive { margin: acc.margin });
    }
    if a.im_part().norm_fro() <= ACCRETIVE_REL_TOL * a.norm_fro() {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    while hi - lo > ANGLE_TOL {
        let mid = 0.5 * (lo + hi);
        if cone_margin(a, mid)? >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Independent estimate of the sector angle from a uniform scan of rotations
/// `β` on the circle: the feasible arc `{β : Re(e^{iβ}A) >= 0}` is located on
/// the grid and each endpoint refined by bisection inside its bracketing cell.
pub fn sector_angle_grid(a: &CMatrix, num_angles: usize) -> Result<f64> {
    if num_angles < 8 {
        return Err(Error::invalid("grid scan needs at least 8 angles"));
    }
    let acc = is_accretive(a)?;
    if !acc.accretive {
        return Err(Error::NotAccretive { margin: acc.margin });
    }
    let step = 2.0 * PI / num_angles as f64;
    let half = (num_angles / 2) as i64;
    let g = |beta: f64| lambda_min(&a.scale_c(C64::from_polar(1.0, beta)).re_part());
    let f = |j: i64| g(j as f64 * step);
    let edge = |dir: i64| -> Result<f64> {
        for j in 1..=half {
            if f(dir * j)? < 0.0 {
                // Refine the sign change inside the bracketing cell.
                let (mut lo, mut hi) = ((j - 1) as f64, j as f64);
                while (hi - lo) * step > 1e-13 {
                    let mid = 0.5 * (lo + hi);
                    if g(dir as f64 * mid * step)? >= 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Ok(dir as f64 * lo * step);
            }
        }
        Ok(dir as f64 * PI)
    };
    let beta_hi = edge(1)?;
    let beta_lo = edge(-1)?;
    Ok((FRAC_PI_2 - beta_hi).max(FRAC_PI_2 + beta_lo).max(0.0))
}

/// Certifies `a` as a sector matrix.
pub fn certify(a: &CMatrix) -> Result<SectorCertificate> {
    let alpha = sector_angle(a)?;
    let spec = sym_eigvals(&a.re_part())?;
    let re_max = spec[0];
    let re_min = spec[spec.len() - 1];
    Ok(SectorCertificate { matrix: a.clone(), alpha, re_min, re_max, h: re_max / re_min })
}

/// Support points of the numerical range: for each direction `θ` on a
/// uniform grid, `x* A x` with `x` a top eigenvector of `Re(e^{-iθ}A)`.
pub fn nr_boundary(a: &CMatrix, num_angles: usize) -> Result<Vec<C64>> {
    if num_angles < 3 {
        return Err(Error::invalid("nr_boundary needs at least 3 angles"));
    }
    let n = a.n();
    (0..num_angles)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / num_angles as f64;
            let eig = sym_eigen(&a.scale_c(C64::from_polar(1.0, -theta)).re_part())?;
            let x: Vec<C64> = (0..n).map(|i| eig.vectors[(i, 0)]).collect();
            let mut z = C64::new(0.0, 0.0);
            for i in 0..n {
                for k in 0..n {
                    z += x[i].conj() * a[(i, k)] * x[k];
                }
            }
            Ok(z)
        })
        .collect()
}

/// Parameters of the sector-matrix generator `A = X diag(e^{iθ_j}) X*`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorGenSpec {
    pub n: usize,
    pub alpha_max: f64,
    pub cond_x: f64,
    pub seed: u64,
    pub force_extremal: bool,
}

impl SectorGenSpec {
    pub fn new(n: usize, alpha_max: f64, seed: u64) -> Self {
        Self { n, alpha_max, cond_x: 10.0, seed, force_extremal: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if !(0.0..FRAC_PI_2).contains(&self.alpha_max) {
            return Err(Error::invalid(format!("alpha_max = {} outside [0, pi/2)", self.alpha_max)));
        }
        if !(self.cond_x >= 1.0 && self.cond_x.is_finite()) {
            return Err(Error::invalid(format!("cond_x = {} must be >= 1", self.cond_x)));
        }
        Ok(())
    }
}

/// Builds `X diag(e^{iθ_j}) X*` and certifies it.
pub fn sector_from_factors(x: &CMatrix, thetas: &[f64]) -> Result<SectorCertificate> {
    if thetas.len() != x.n() {
        return Err(Error::DimensionMismatch { expected: x.n(), got: thetas.len() });
    }
    let z: Vec<C64> = thetas.iter().map(|&t| C64::from_polar(1.0, t)).collect();
    let mut a = &(x * &CMatrix::from_diag(&z)) * &x.adjoint();
    if thetas.iter().all(|&t| t == 0.0) {
        a = a.re_part();
    }
    certify(&a)
}

/// Random sector matrix. `X = Q1 diag(1 + δ d_j) Q2` with Haar `Q1, Q2` and
/// `d_j ~ U[0,1]`, `δ = cond_x - 1`, so `cond(X) <= cond_x`; angles are
/// uniform in `[-alpha_max, alpha_max]`.
pub fn gen_sector(spec: &SectorGenSpec) -> Result<SectorCertificate> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = rng_from_seed(spec.seed);
    let delta = spec.cond_x - 1.0;
    for _ in 0..MAX_RESAMPLES {
        let q1 = haar_unitary(n, &mut rng);
        let q2 = haar_unitary(n, &mut rng);
        let sigma: Vec<f64> = (0..n).map(|_| 1.0 + delta * rng.random::<f64>()).collect();
        let x = &(&q1 * &CMatrix::from_real_diag(&sigma)) * &q2;
        let cond = sigma.iter().cloned().fold(f64::MIN, f64::max)
            / sigma.iter().cloned().fold(f64::MAX, f64::min);
        if cond > spec.cond_x * (1.0 + 1e-12) {
            continue;
        }
        let mut thetas: Vec<f64> = (0..n)
            .map(|_| if spec.alpha_max > 0.0 { rng.random_range(-spec.alpha_max..=spec.alpha_max) } else { 0.0 })
            .collect();
        if spec.force_extremal && spec.alpha_max > 0.0 {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            thetas[0] = sign * spec.alpha_max;
        }
        return sector_from_factors(&x, &thetas);
    }
    Err(Error::Conditioning { attempts: MAX_RESAMPLES })
}

/// Random Hermitian positive definite matrix with spectrum in `[m, M]`,
/// both endpoints attained, conjugated by a Haar unitary.
pub fn gen_hpd(n: usize, m: f64, big_m: f64, seed: u64) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if !(m > 0.0 && m <= big_m && big_m.is_finite()) {
        return Err(Error::invalid(format!("need 0 < m <= M, got m = {m}, M = {big_m}")));
    }
    if n == 1 && m != big_m {
        return Err(Error::invalid("a 1x1 matrix cannot attain both m and M"));
    }
    let mut rng = rng_from_seed(seed);
    let mut lambda: Vec<f64> = (0..n).map(|_| rng.random_range(m..=big_m)).collect();
    lambda[0] = big_m;
    lambda[n - 1] = m;
    if m == big_m {
        return Ok(CMatrix::identity(n).scale(m));
    }
    let u = haar_unitary(n, &mut rng);
    Ok((&(&u * &CMatrix::from_real_diag(&lambda)) * &u.adjoint()).re_part())
}
