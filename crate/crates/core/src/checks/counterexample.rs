//! Built-in instances showing that the naive inverse-sum inequalities fail
//! without a sector hypothesis.

use serde::Serialize;

use crate::cmat::{det, inverse, op_norm, CMatrix};
use crate::error::Result;

use super::result::scalar_slack;

/// Singular-value bundle for the norm inequality
/// `min{‖(A+B)^{-1}‖, ‖I + (A+B)^{-1}‖} <= ‖I + A^{-1}‖ ‖I + B^{-1}‖`.
#[derive(Clone, Debug, Serialize)]
pub struct SvBundle {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    /// `s_1((A+B)^{-1})`.
    pub s1_inv_sum: f64,
    /// `s_1(I + (A+B)^{-1})`.
    pub s1_shifted_inv_sum: f64,
    /// `s_1(I + A^{-1}) s_1(I + B^{-1})`.
    pub product: f64,
    /// Slack of the naive inequality; negative when it is violated.
    pub slack: f64,
    pub violated: bool,
}

/// Determinant bundle for
/// `min{|det (A+B)^{-1}|, |det(I + (A+B)^{-1})|} <= |det(I + A^{-1})| |det(I + B^{-1})|`.
#[derive(Clone, Debug, Serialize)]
pub struct DetBundle {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    pub det_inv_sum: f64,
    pub det_shifted_inv_sum: f64,
    pub product: f64,
    pub slack: f64,
    pub violated: bool,
}

const SV_A: [[f64; 3]; 3] = [[1.0, -1.0, 1.0], [-1.0, 1.0, 3.0], [1.0, 3.0, 20.0]];
const SV_B: [[f64; 3]; 3] = [[100.0, 2.0, -3.0], [2.0, 1.0, 4.0], [-3.0, 4.0, 1.0]];
const DET_A: [[f64; 3]; 3] = [[1.0, -1.0, 2.5], [-1.0, 2.0, -2.0], [2.5, -2.0, 1.0]];
const DET_B: [[f64; 3]; 3] = [[-1.0, 1.0, -3.0], [1.0, -1.0, 1.0], [-3.0, 1.0, -1.0]];

fn rows(m: &[[f64; 3]; 3]) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

struct Parts {
    a: CMatrix,
    b: CMatrix,
    inv_sum: CMatrix,
    shifted: CMatrix,
    id: CMatrix,
}

fn parts(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> Result<Parts> {
    let a = CMatrix::from_real_rows(a)?;
    let b = CMatrix::from_real_rows(b)?;
    let id = CMatrix::identity(3);
    let inv_sum = inverse(&(&a + &b))?;
    let shifted = &id + &inv_sum;
    Ok(Parts { a, b, inv_sum, shifted, id })
}

pub fn sv_bundle() -> Result<SvBundle> {
    let p = parts(&SV_A, &SV_B)?;
    let s1_inv_sum = op_norm(&p.inv_sum)?;
    let s1_shifted_inv_sum = op_norm(&p.shifted)?;
    let product = op_norm(&(&p.id + &inverse(&p.a)?))? * op_norm(&(&p.id + &inverse(&p.b)?))?;
    let slack = scalar_slack(s1_inv_sum.min(s1_shifted_inv_sum), product);
    Ok(SvBundle {
        a: rows(&SV_A),
        b: rows(&SV_B),
        s1_inv_sum,
        s1_shifted_inv_sum,
        product,
        slack,
        violated: s1_inv_sum > product && s1_shifted_inv_sum > product,
    })
}

pub fn det_bundle() -> Result<DetBundle> {
    let p = parts(&DET_A, &DET_B)?;
    let det_inv_sum = det(&p.inv_sum).norm();
    let det_shifted_inv_sum = det(&p.shifted).norm();
    let product = det(&(&p.id + &inverse(&p.a)?)).norm() * det(&(&p.id + &inverse(&p.b)?)).norm();
    let slack = scalar_slack(det_inv_sum.min(det_shifted_inv_sum), product);
    Ok(DetBundle {
        a: rows(&DET_A),
        b: rows(&DET_B),
        det_inv_sum,
        det_shifted_inv_sum,
        product,
        slack,
        violated: det_inv_sum > product && det_shifted_inv_sum > product,
    })
}
