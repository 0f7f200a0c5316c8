//! Weighted harmonic, arithmetic and geometric means of accretive matrices,
//! and the Kantorovich constant.
//!
//! The geometric mean of accretive `A`, `B` is
//!
//! ```text
//! A #_v B = sin(vπ)/π ∫_0^∞ t^{v-1} (A^{-1} + t B^{-1})^{-1} dt.
//! ```
//!
//! After `t = e^s` the integrand is `e^{vs} F(s)` with `F(s) = B (B + e^s A)^{-1} A`.
//! Its decay rates, `v` and `1 - v`, make a plain truncated trapezoid rule
//! expensive for weights near 0 or 1, so the model
//! `G(s) = (A + e^s B) / (1 + e^s)^2` is subtracted first. It has the same
//! leading behaviour at both ends and integrates in closed form to the
//! arithmetic mean, leaving a remainder that decays at rate at least one on
//! either side.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cmat::{hpd_power, inverse, CMatrix, Lu, HERMITIAN_TOL};
use crate::error::{Error, Result};
use crate::sector::is_accretive;

/// Weights closer than this to 0 or 1 return the endpoint.
pub const ENDPOINT_EPS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeanKind {
    Harmonic,
    Arithmetic,
    Geometric,
}

impl std::str::FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "harmonic" => Ok(MeanKind::Harmonic),
            "arithmetic" => Ok(MeanKind::Arithmetic),
            "geometric" => Ok(MeanKind::Geometric),
            other => Err(Error::invalid(format!("unknown mean kind `{other}`"))),
        }
    }
}

/// Trapezoid-rule controls for the geometric-mean integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadControls {
    /// Initial node spacing in `s = ln t`.
    pub step: f64,
    /// Truncation threshold relative to the size of the result.
    pub tail_eps: f64,
    pub max_half_range: f64,
    /// Successive halvings stop once results agree to this relative tolerance.
    pub refine_tol: f64,
    pub max_halvings: u32,
}

impl Default for QuadControls {
    fn default() -> Self {
        Self { step: 0.25, tail_eps: 1e-12, max_half_range: 60.0, refine_tol: 1e-10, max_halvings: 10 }
    }
}

impl QuadControls {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= 1.0) {
            return Err(Error::invalid(format!("quadrature step {} outside (0, 1]", self.step)));
        }
        if !(self.tail_eps > 0.0 && self.tail_eps <= 1e-6) {
            return Err(Error::invalid(format!("tail threshold {} outside (0, 1e-6]", self.tail_eps)));
        }
        if !(self.max_half_range >= 1.0 && self.max_half_range.is_finite()) {
            return Err(Error::invalid("max half-range must be a finite value >= 1"));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::invalid("refinement tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanSpec {
    pub kind: MeanKind,
    pub v: f64,
    #[serde(default)]
    pub quad: QuadControls,
}

impl MeanSpec {
    pub fn new(kind: MeanKind, v: f64) -> Self {
        Self { kind, v, quad: QuadControls::default() }
    }

    /// `min(v, 1 - v)`.
    pub fn r_min(&self) -> f64 {
        self.v.min(1.0 - self.v)
    }

    pub fn validate(&self) -> Result<()> {
        check_weight(self.v)?;
        self.quad.validate()
    }

    pub fn apply(&self, a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
        self.validate()?;
        match self.kind {
            MeanKind::Harmonic => harmonic_mean(a, b, self.v),
            MeanKind::Arithmetic => arithmetic_mean(a, b, self.v),
            MeanKind::Geometric => geometric_mean_accretive(a, b, self.v, &self.quad),
        }
    }
}

fn check_weight(v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::invalid(format!("weight v = {v} outside [0, 1]")));
    }
    Ok(())
}

fn check_pair(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), got: b.n() });
    }
    Ok(())
}

fn require_accretive(a: &CMatrix) -> Result<()> {
    let acc = is_accretive(a)?;
    if !acc.accretive {
        return Err(Error::NotAccretive { margin: acc.margin });
    }
    Ok(())
}

/// `(1-v) A + v B`.
pub fn arithmetic_mean(a: &CMatrix, b: &CMatrix, v: f64) -> Result<CMatrix> {
    check_pair(a, b)?;
    check_weight(v)?;
    Ok(&a.scale(1.0 - v) + &b.scale(v))
}

/// `((1-v) A^{-1} + v B^{-1})^{-1}`.
pub fn harmonic_mean(a: &CMatrix, b: &CMatrix, v: f64) -> Result<CMatrix> {
    check_pair(a, b)?;
    check_weight(v)?;
    require_accretive(a)?;
    require_accretive(b)?;
    if v == 0.0 {
        return Ok(a.clone());
    }
    if v == 1.0 {
        return Ok(b.clone());
    }
    harmonic_from_inverses(&inverse(a)?, &inverse(b)?, v)
}

/// Harmonic mean from precomputed inverses.
pub fn harmonic_from_inverses(a_inv: &CMatrix, b_inv: &CMatrix, v: f64) -> Result<CMatrix> {
    inverse(&(&a_inv.scale(1.0 - v) + &b_inv.scale(v)))
}

/// Diagnostics from one quadrature run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadStats {
    pub half_range: f64,
    pub step: f64,
    pub nodes: usize,
}

/// Geometric mean of accretive matrices by quadrature of the integral form.
pub fn geometric_mean_accretive(a: &CMatrix, b: &CMatrix, v: f64, quad: &QuadControls) -> Result<CMatrix> {
    geometric_mean_with_stats(a, b, v, quad).map(|(g, _)| g)
}

pub fn geometric_mean_with_stats(
    a: &CMatrix,
    b: &CMatrix,
    v: f64,
    quad: &QuadControls,
) -> Result<(CMatrix, QuadStats)> {
    check_pair(a, b)?;
    check_weight(v)?;
    quad.validate()?;
    require_accretive(a)?;
    require_accretive(b)?;
    let trivial = QuadStats { half_range: 0.0, step: 0.0, nodes: 0 };
    if v <= ENDPOINT_EPS {
        return Ok((a.clone(), trivial));
    }
    if v >= 1.0 - ENDPOINT_EPS {
        return Ok((b.clone(), trivial));
    }

    let arith = arithmetic_mean(a, b, v)?;
    let scale = arith.norm_fro();
    let pref = (v * PI).sin() / PI;
    let n = a.n();

    // e^{vs} (F(s) - G(s))
    let remainder = |s: f64| -> Result<CMatrix> {
        let t = s.exp();
        let lu = Lu::new(&(b + &a.scale(t)));
        if lu.is_singular() {
            return Err(Error::Quadrature(format!("singular pencil at s = {s}")));
        }
        let f = b * &lu.solve(a);
        let w = 1.0 / ((1.0 + t) * (1.0 + t));
        let g = &a.scale(w) + &b.scale(t * w);
        let r = (&f - &g).scale((v * s).exp());
        r.check_finite().map_err(|_| Error::Quadrature(format!("non-finite integrand at s = {s}")))?;
        Ok(r)
    };

    // Half-range: grow until the remainder at both ends is negligible.
    let tail_ok = |s: f64| -> Result<bool> {
        let hi = remainder(s)?.norm_fro();
        let lo = remainder(-s)?.norm_fro();
        Ok(hi.max(lo) <= quad.tail_eps * scale)
    };
    let mut half = 8.0f64.min(quad.max_half_range);
    while !tail_ok(half)? {
        if half >= quad.max_half_range {
            return Err(Error::Quadrature(format!(
                "integrand tail above {:e} at the maximal half-range {}",
                quad.tail_eps, quad.max_half_range
            )));
        }
        half = (half + 4.0).min(quad.max_half_range);
    }

    // Trapezoid sums, halving the step and reusing the previous nodes.
    let mut h = quad.step;
    let count = (half / h).ceil() as i64;
    let mut sum = CMatrix::zeros(n);
    let mut nodes = 0usize;
    for j in -count..=count {
        sum = &sum + &remainder(j as f64 * h)?;
        nodes += 1;
    }
    let mut estimate = &arith + &sum.scale(pref * h);
    let mut reach = count as f64 * h;
    for _ in 0..quad.max_halvings {
        let half_h = 0.5 * h;
        let odd = (reach / half_h).round() as i64;
        let mut j = -odd + 1;
        while j < odd {
            sum = &sum + &remainder(j as f64 * half_h)?;
            nodes += 1;
            j += 2;
        }
        h = half_h;
        reach = odd as f64 * h;
        let next = &arith + &sum.scale(pref * h);
        let change = (&next - &estimate).norm_fro();
        estimate = next;
        if change <= quad.refine_tol * estimate.norm_fro() {
            return Ok((estimate, QuadStats { half_range: reach, step: h, nodes }));
        }
    }
    Err(Error::Quadrature(format!(
        "no agreement to {:e} after {} step halvings",
        quad.refine_tol, quad.max_halvings
    )))
}

fn require_hpd_input(h: &CMatrix) -> Result<()> {
    let tol = HERMITIAN_TOL * h.norm_fro().max(1.0);
    let asym = h.asymmetry();
    if asym > tol {
        return Err(Error::NotHermitian { asymmetry: asym, tol });
    }
    Ok(())
}

/// `A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}` for Hermitian positive definite inputs.
pub fn geometric_mean_hpd(a: &CMatrix, b: &CMatrix, v: f64) -> Result<CMatrix> {
    check_pair(a, b)?;
    check_weight(v)?;
    require_hpd_input(a)?;
    require_hpd_input(b)?;
    let a = a.re_part();
    let b = b.re_part();
    let a_half = hpd_power(&a, 0.5)?;
    let a_mhalf = hpd_power(&a, -0.5)?;
    hpd_power(&b, 1.0)?;
    if v == 0.0 {
        return Ok(a);
    }
    if v == 1.0 {
        return Ok(b);
    }
    let inner = (&(&a_mhalf * &b) * &a_mhalf).re_part();
    let powered = hpd_power(&inner, v)?;
    Ok((&(&a_half * &powered) * &a_half).re_part())
}

/// `K(h) = (h+1)^2 / (4h)`.
pub fn kantorovich(h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::invalid(format!("Kantorovich ratio h = {h} must be positive")));
    }
    Ok((h + 1.0) * (h + 1.0) / (4.0 * h))
}

/// `max(K(m)^2, K(M)^2)`.
pub fn kappa(m: f64, big_m: f64) -> Result<f64> {
    if !(m > 0.0 && m <= big_m) {
        return Err(Error::invalid(format!("need 0 < m <= M, got m = {m}, M = {big_m}")));
    }
    let km = kantorovich(m)?;
    let kbig = kantorovich(big_m)?;
    Ok((km * km).max(kbig * kbig))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KConstant {
    pub h: f64,
    pub value: f64,
}

impl KConstant {
    pub fn new(h: f64) -> Result<Self> {
        Ok(Self { h, value: kantorovich(h)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> CMatrix {
        CMatrix::from_real_diag(d)
    }

    #[test]
    fn kantorovich_values() {
        assert_eq!(kantorovich(1.0).unwrap(), 1.0);
        assert_eq!(kantorovich(4.0).unwrap(), 1.5625);
        assert!(kantorovich(0.0).is_err());
        assert_eq!(kappa(1.0, 1.0).unwrap(), 1.0);
        assert!((kappa(0.5, 2.0).unwrap() - 81.0 / 64.0).abs() < 1e-15);
        assert!(kappa(2.0, 1.0).is_err());
    }

    #[test]
    fn commuting_means() {
        let a = diag(&[1.0, 4.0]);
        let b = diag(&[4.0, 1.0]);
        let h = harmonic_mean(&a, &b, 0.5).unwrap();
        assert!((&h - &diag(&[1.6, 1.6])).max_abs() < 1e-14);
        let m = arithmetic_mean(&a, &b, 0.5).unwrap();
        assert!((&m - &diag(&[2.5, 2.5])).max_abs() < 1e-15);
        let g = geometric_mean_accretive(&a, &b, 0.5, &QuadControls::default()).unwrap();
        assert!((&g - &diag(&[2.0, 2.0])).max_abs() < 1e-10, "{g:?}");
        let g = geometric_mean_hpd(&a, &b, 0.5).unwrap();
        assert!((&g - &diag(&[2.0, 2.0])).max_abs() < 1e-13);
    }

    #[test]
    fn endpoints_are_exact() {
        let a = diag(&[1.0, 3.0]);
        let b = diag(&[2.0, 5.0]);
        let q = QuadControls::default();
        assert_eq!(geometric_mean_accretive(&a, &b, 0.0, &q).unwrap(), a);
        assert_eq!(geometric_mean_accretive(&a, &b, 1.0, &q).unwrap(), b);
        assert_eq!(harmonic_mean(&a, &b, 0.0).unwrap(), a);
        assert_eq!(harmonic_mean(&a, &b, 1.0).unwrap(), b);
    }

    #[test]
    fn small_weight_scalar() {
        let a = diag(&[1.0]);
        let b = diag(&[100.0]);
        for v in [1e-4, 0.01, 0.3, 0.99, 1.0 - 1e-4] {
            let g = geometric_mean_accretive(&a, &b, v, &QuadControls::default()).unwrap();
            let want = 100f64.powf(v);
            assert!((g[(0, 0)].re - want).abs() < 1e-9 * want, "v = {v}: {}", g[(0, 0)]);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let a = diag(&[1.0, -1.0]);
        let b = CMatrix::identity(2);
        assert!(matches!(harmonic_mean(&a, &b, 0.5), Err(Error::NotAccretive { .. })));
        assert!(geometric_mean_accretive(&b, &a, 0.5, &QuadControls::default()).is_err());
        assert!(arithmetic_mean(&b, &CMatrix::identity(3), 0.5).is_err());
        assert!(arithmetic_mean(&b, &b, 1.5).is_err());
        let bad = QuadControls { tail_eps: 1e-3, ..Default::default() };
        assert!(geometric_mean_accretive(&b, &b, 0.5, &bad).is_err());
    }
}
