//! Evaluation of catalogue checks on a concrete instance.
//!
//! An [`Evaluator`] caches per-operand data (inverses, real parts, certified
//! angles, spectral bounds) and per-weight geometric means, so a whole
//! catalogue can be run on one instance without recomputation.

use std::cell::{OnceCell, RefCell};
use std::f64::consts::FRAC_PI_2;
use std::rc::Rc;

use crate::cmat::{
    det, herm_norm, hpd_power, inverse, lambda_min, op_norm, singular_values, sym_eigen, sym_eigvals, CMatrix, C64,
    HERMITIAN_TOL, HPD_RATIO,
};
use crate::error::{Error, Result};
use crate::means::{geometric_mean_accretive, harmonic_from_inverses, kantorovich, kappa, QuadControls};
use crate::posmap::MapSpec;
use crate::sector::{is_accretive, sector_angle, ANGLE_TOL};

use super::catalogue::CheckId;
use super::concave::Concave;
use super::result::{scalar_slack, verdict_for, CheckResult, Form, UsedParams, Verdict, DEFAULT_TOL};

/// Relative offset used when probing both sides of an equivalence.
pub const BOUNDARY_DELTA: f64 = 1e-6;
/// Normalization defect above which a map is rejected.
pub const MAP_NORMALIZATION_TOL: f64 = 1e-10;

pub const GA1_R_GRID: [f64; 3] = [1.0, 1.5, 2.0];
pub const AZ2_R_GRID: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
pub const RE1_P_GRID: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 3.0, 4.0];

/// Operands for one evaluation. Only `a` and `b` are required; the other
/// roles fall back to them (or to identity maps) when absent.
#[derive(Clone, Debug)]
pub struct Instance {
    pub a: CMatrix,
    pub b: CMatrix,
    /// Positive semidefinite pair for GA3, GA4, BK1, AZ2, BK3 and DETSUP.
    pub psd: Option<(CMatrix, CMatrix)>,
    /// Arbitrary pair for GA1, GA2, L11S and LIN151 (LIN151 uses the first).
    pub free: Option<(CMatrix, CMatrix)>,
    /// Normalized positive linear map on `M_n`.
    pub map: Option<MapSpec>,
    /// Accretive tuple for the multilinear checks; defaults to `[a]`.
    pub tuple: Vec<CMatrix>,
    /// Multilinear map of arity `tuple.len()`.
    pub multimap: Option<MapSpec>,
    pub witness: String,
}

impl Instance {
    pub fn pair(a: CMatrix, b: CMatrix) -> Self {
        Self { a, b, psd: None, free: None, map: None, tuple: Vec::new(), multimap: None, witness: String::new() }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    fn validate(&self) -> Result<()> {
        let n = self.a.n();
        let mut dims = vec![self.b.n()];
        if let Some((p, q)) = &self.psd {
            dims.extend([p.n(), q.n()]);
        }
        if let Some((x, y)) = &self.free {
            dims.extend([x.n(), y.n()]);
        }
        dims.extend(self.tuple.iter().map(CMatrix::n));
        for d in dims {
            if d != n {
                return Err(Error::DimensionMismatch { expected: n, got: d });
            }
        }
        Ok(())
    }
}

/// Evaluation parameters. Unset `k`, `r`, `p`, `f` loop over their grids.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub v: f64,
    pub k: Option<usize>,
    pub r: Option<f64>,
    pub p: Option<f64>,
    pub f: Option<Concave>,
    /// Sector angle to use instead of the certified one; must not be smaller.
    pub alpha: Option<f64>,
}

impl Default for Params {
    fn default() -> Self {
        Self { v: 0.5, k: None, r: None, p: None, f: None, alpha: None }
    }
}

impl Params {
    pub fn with_v(v: f64) -> Self {
        Self { v, ..Self::default() }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if !(0.0..=1.0).contains(&self.v) {
            return Err(Error::invalid(format!("v = {} outside [0, 1]", self.v)));
        }
        if let Some(k) = self.k {
            if k == 0 || k > n {
                return Err(Error::invalid(format!("k = {k} outside 1..={n}")));
            }
        }
        if let Some(r) = self.r {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::invalid(format!("r = {r} must be positive")));
            }
        }
        if let Some(p) = self.p {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::invalid(format!("p = {p} must be positive")));
            }
        }
        if let Some(a) = self.alpha {
            if !(0.0..FRAC_PI_2).contains(&a) {
                return Err(Error::invalid(format!("alpha = {a} outside [0, pi/2)")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Fault {
    Vacuous(String),
    Failed(String),
}

impl From<Error> for Fault {
    fn from(e: Error) -> Self {
        Fault::Failed(e.to_string())
    }
}

type F<T> = std::result::Result<T, Fault>;

fn vacuous<T>(reason: impl Into<String>) -> F<T> {
    Err(Fault::Vacuous(reason.into()))
}

/// Cached data for one accretive operand.
struct Operand {
    m: CMatrix,
    alpha: f64,
    re: CMatrix,
    re_min: f64,
    re_max: f64,
    inv: CMatrix,
    /// `Re(A^{-1})`.
    re_inv: CMatrix,
    /// `(Re A)^{-1}`.
    inv_re: CMatrix,
}

fn operand(a: &CMatrix, label: &str) -> F<Operand> {
    let acc = is_accretive(a)?;
    if !acc.accretive {
        return vacuous(format!("{label} is not accretive (lambda_min(Re {label}) = {:e})", acc.margin));
    }
    let alpha = sector_angle(a)?;
    let re = a.re_part();
    let spec = sym_eigvals(&re)?;
    let inv = inverse(a)?;
    let re_inv = inv.re_part();
    let inv_re = inverse(&re)?.re_part();
    Ok(Operand { m: a.clone(), alpha, re, re_min: spec[spec.len() - 1], re_max: spec[0], inv, re_inv, inv_re })
}

struct Roots {
    /// `(Re A)^{1/2}`, `(Re A)^{-1/2}`.
    half: CMatrix,
    mhalf: CMatrix,
}

struct Geo {
    /// `Re(A #_v B)`, the mean by quadrature.
    re_g: CMatrix,
    /// `Re A #_v Re B` in closed form.
    re_mean: CMatrix,
}

fn cached<T>(cell: &OnceCell<F<T>>, init: impl FnOnce() -> F<T>) -> F<&T> {
    match cell.get_or_init(init) {
        Ok(v) => Ok(v),
        Err(f) => Err(f.clone()),
    }
}

fn sq(h: &CMatrix) -> CMatrix {
    (h * h).re_part()
}

fn sec2(alpha: f64) -> f64 {
    let c = alpha.cos();
    1.0 / (c * c)
}

fn prefix(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .scan(1.0, |acc, &x| {
            *acc *= x;
            Some(*acc)
        })
        .collect()
}

fn sv(a: &CMatrix) -> F<Vec<f64>> {
    Ok(singular_values(a)?.0)
}

/// `g(|X|)` from the spectral decomposition of `X* X`.
fn abs_apply(x: &CMatrix, g: impl Fn(f64) -> f64) -> F<CMatrix> {
    let gram = &x.adjoint() * x;
    Ok(sym_eigen(&gram)?.map_values(|l| g(l.max(0.0).sqrt())))
}

fn psd_reason(p: &CMatrix, label: &str, tol: f64, strict: bool) -> F<Option<String>> {
    let scale = p.norm_fro().max(1.0);
    if p.asymmetry() > HERMITIAN_TOL * scale {
        return Ok(Some(format!("{label} is not Hermitian")));
    }
    let spec = sym_eigvals(p)?;
    let (lo, hi) = (spec[spec.len() - 1], spec[0]);
    if strict && !(lo > HPD_RATIO * hi && lo > 0.0) {
        return Ok(Some(format!("{label} is not positive definite (lambda_min = {lo:e})")));
    }
    if lo < -tol * hi.abs().max(1.0) {
        return Ok(Some(format!("{label} is not positive semidefinite (lambda_min = {lo:e})")));
    }
    Ok(None)
}

fn block_2x2(r: f64, x: &CMatrix) -> CMatrix {
    let n = x.n();
    CMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) | (false, false) => {
            if i == j {
                C64::new(r, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }
        (true, false) => x[(i, j - n)],
        (false, true) => x[(j, i - n)].conj(),
    })
}

/// Collects results for one check.
struct Emit<'w> {
    id: CheckId,
    tol: f64,
    witness: &'w str,
    cur: UsedParams,
    out: Vec<CheckResult>,
}

impl Emit<'_> {
    fn push(&mut self, link: &str, form: Form, lhs: Vec<f64>, rhs: Vec<f64>, slack: f64) -> F<()> {
        if !slack.is_finite() {
            return Err(Fault::Failed(format!("{} {link}: non-finite slack", self.id)));
        }
        self.out.push(CheckResult {
            id: self.id,
            link: link.to_string(),
            hypotheses_met: true,
            reason: None,
            form,
            lhs,
            rhs,
            slack,
            verdict: verdict_for(slack, self.tol),
            params: self.cur.clone(),
            witness: self.witness.to_string(),
        });
        Ok(())
    }

    fn vacuous(&mut self, link: &str, reason: String) {
        self.out.push(CheckResult {
            id: self.id,
            link: link.to_string(),
            hypotheses_met: false,
            reason: Some(reason),
            form: Form::None,
            lhs: Vec::new(),
            rhs: Vec::new(),
            slack: 0.0,
            verdict: Verdict::Vacuous,
            params: self.cur.clone(),
            witness: self.witness.to_string(),
        });
    }

    /// `L <= R` in the Loewner order.
    fn loewner(&mut self, link: &str, l: &CMatrix, r: &CMatrix) -> F<()> {
        let (l, r) = (l.re_part(), r.re_part());
        let rn = herm_norm(&r)?;
        let slack = lambda_min(&(&r - &l))? / rn.max(1.0);
        self.push(link, Form::Loewner, vec![herm_norm(&l)?], vec![rn], slack)
    }

    /// `lhs <= rhs`.
    fn scalar(&mut self, link: &str, lhs: f64, rhs: f64) -> F<()> {
        self.push(link, Form::Scalar, vec![lhs], vec![rhs], scalar_slack(lhs, rhs))
    }

    /// `lhs_j <= rhs_j` for every `j`.
    fn indexed(&mut self, link: &str, lhs: Vec<f64>, rhs: Vec<f64>) -> F<()> {
        let slack = lhs.iter().zip(&rhs).map(|(&l, &r)| scalar_slack(l, r)).fold(f64::INFINITY, f64::min);
        self.push(link, Form::Indexed, lhs, rhs, slack)
    }

    fn boundary(&mut self, link: &str, slack: f64, lhs: f64, rhs: f64) -> F<()> {
        self.push(link, Form::Boundary, vec![lhs], vec![rhs], slack)
    }
}

/// Evaluates catalogue checks on one instance, caching shared work.
pub struct Evaluator<'a> {
    inst: &'a Instance,
    tol: f64,
    quad: QuadControls,
    a: OnceCell<F<Operand>>,
    b: OnceCell<F<Operand>>,
    roots_a: OnceCell<F<Roots>>,
    half_mean: OnceCell<F<CMatrix>>,
    tuple: OnceCell<F<Vec<Operand>>>,
    identity_map: OnceCell<MapSpec>,
    geo: RefCell<Vec<(u64, Rc<Geo>)>>,
}

/// One-shot evaluation of a check.
pub fn evaluate(id: CheckId, inst: &Instance, params: &Params, tol: f64) -> Result<Vec<CheckResult>> {
    Evaluator::new(inst, tol).evaluate(id, params)
}

impl<'a> Evaluator<'a> {
    pub fn new(inst: &'a Instance, tol: f64) -> Self {
        Self {
            inst,
            tol,
            quad: QuadControls::default(),
            a: OnceCell::new(),
            b: OnceCell::new(),
            roots_a: OnceCell::new(),
            half_mean: OnceCell::new(),
            tuple: OnceCell::new(),
            identity_map: OnceCell::new(),
            geo: RefCell::new(Vec::new()),
        }
    }

    pub fn with_default_tol(inst: &'a Instance) -> Self {
        Self::new(inst, DEFAULT_TOL)
    }

    pub fn with_quad(mut self, quad: QuadControls) -> Self {
        self.quad = quad;
        self
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn evaluate(&self, id: CheckId, params: &Params) -> Result<Vec<CheckResult>> {
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        self.inst.validate()?;
        params.validate(self.inst.n())?;
        let mut e = Emit { id, tol: self.tol, witness: &self.inst.witness, cur: UsedParams::default(), out: Vec::new() };
        if id.uses_v() {
            e.cur.v = Some(params.v);
        }
        match self.dispatch(id, params, &mut e) {
            Ok(()) => Ok(e.out),
            Err(Fault::Vacuous(reason)) => {
                e.out.clear();
                e.vacuous("main", reason);
                Ok(e.out)
            }
            Err(Fault::Failed(message)) => Err(Error::Evaluation { id: id.name().to_string(), message }),
        }
    }

    fn dispatch(&self, id: CheckId, p: &Params, e: &mut Emit) -> F<()> {
        use CheckId::*;
        match id {
            Ga1 => self.ga1(p, e),
            Ga2 => self.ga2(p, e),
            Ga3 => self.ga34(p, e, false),
            Ga4 => self.ga34(p, e, true),
            L11s => self.l11s(e),
            L11d => self.l11d(e),
            L12s => self.l12s(p, e),
            L12d => self.l12d(p, e),
            L13 => self.l13(p, e),
            Bk1 => self.bk1(e),
            Az2 => self.az2(p, e),
            Bk3 => self.bk3(e),
            Lin151 => self.lin151(e),
            Txl => self.txl(p, e),
            Txr => self.txr(p, e),
            Ref9 => self.ref9(p, e),
            Ref7 => self.ref7(p, e),
            Ref8 => self.ref8(p, e),
            Nf1 => self.nf1(p, e),
            Nf11 => self.nf11(p, e),
            R1 => self.r1(p, e),
            Svharm => self.svharm(p, e),
            F6 => self.f6(p, e),
            F7 => self.f7(p, e),
            F90 => self.f90(p, e),
            D2233 => self.d2233(p, e),
            D2244 => self.d2244(p, e),
            D2255 => self.d2255(p, e),
            F10 => self.f10(p, e),
            F212 => self.f212(p, e),
            P22 => self.p22(p, e),
            Detsup => self.detsup(e),
            Sq => self.sq(e),
            P31i => self.p31i(p, e),
            P31ii => self.p31ii(p, e),
            P31iii => self.p31iii(p, e),
            Rim => self.rim(p, e),
            R7 => self.r7(p, e),
            Fff => self.fff(e),
            Ffff => self.ffff(p, e),
            Choi => self.choi(e),
            Choi2 => self.choi2(e),
            Cor8 => self.cor8(p, e),
            Mf12 => self.mf12(e),
            Mf2 => self.mf2(e),
            Mf4 => self.mf4(e),
            Tmm => self.tmm(e),
            Re1 => self.re1(p, e),
            Nat => self.nat(p, e),
        }
    }

    // ----- operands -------------------------------------------------------

    fn op_a(&self) -> F<&Operand> {
        cached(&self.a, || operand(&self.inst.a, "A"))
    }

    fn op_b(&self) -> F<&Operand> {
        cached(&self.b, || operand(&self.inst.b, "B"))
    }

    fn pair(&self) -> F<(&Operand, &Operand)> {
        Ok((self.op_a()?, self.op_b()?))
    }

    fn free(&self) -> (&CMatrix, &CMatrix) {
        match &self.inst.free {
            Some((x, y)) => (x, y),
            None => (&self.inst.a, &self.inst.b),
        }
    }

    fn psd(&self, strict: bool) -> F<(&CMatrix, &CMatrix)> {
        let (p, q) = match &self.inst.psd {
            Some((p, q)) => (p, q),
            None => (&self.inst.a, &self.inst.b),
        };
        for (m, label) in [(p, "P"), (q, "Q")] {
            if let Some(reason) = psd_reason(m, label, self.tol, strict)? {
                return vacuous(reason);
            }
        }
        Ok((p, q))
    }

    fn resolve_alpha(&self, certified: f64, p: &Params, e: &mut Emit) -> F<f64> {
        let alpha = match p.alpha {
            None => certified,
            Some(a) if a + ANGLE_TOL < certified => {
                return vacuous(format!("alpha = {a} is below the certified sector angle {certified}"));
            }
            Some(a) => a,
        };
        e.cur.alpha = Some(alpha);
        Ok(alpha)
    }

    fn pair_alpha(&self, p: &Params, e: &mut Emit) -> F<f64> {
        let (a, b) = self.pair()?;
        self.resolve_alpha(a.alpha.max(b.alpha), p, e)
    }

    /// Spectral bounds of `Re A` and `Re B` together.
    fn pair_bounds(&self, e: &mut Emit) -> F<(f64, f64, f64)> {
        let (a, b) = self.pair()?;
        let m = a.re_min.min(b.re_min);
        let big = a.re_max.max(b.re_max);
        Ok(record_bounds(e, m, big))
    }

    fn ks(&self, p: &Params) -> Vec<usize> {
        match p.k {
            Some(k) => vec![k],
            None => (1..=self.inst.n()).collect(),
        }
    }

    fn roots_a(&self) -> F<&Roots> {
        cached(&self.roots_a, || {
            let a = self.op_a()?;
            Ok(Roots { half: hpd_power(&a.re, 0.5)?, mhalf: hpd_power(&a.re, -0.5)? })
        })
    }

    /// `Re A #_v Re B` in closed form, reusing the roots of `Re A`.
    fn re_mean(&self, v: f64) -> F<CMatrix> {
        let (a, b) = self.pair()?;
        if v == 0.0 {
            return Ok(a.re.clone());
        }
        if v == 1.0 {
            return Ok(b.re.clone());
        }
        let r = self.roots_a()?;
        let inner = (&(&r.mhalf * &b.re) * &r.mhalf).re_part();
        Ok((&(&r.half * &hpd_power(&inner, v)?) * &r.half).re_part())
    }

    fn geo(&self, v: f64) -> F<Rc<Geo>> {
        if let Some((_, g)) = self.geo.borrow().iter().find(|(k, _)| *k == v.to_bits()) {
            return Ok(g.clone());
        }
        let (a, b) = self.pair()?;
        let g = geometric_mean_accretive(&a.m, &b.m, v, &self.quad)?;
        let geo = Rc::new(Geo { re_g: g.re_part(), re_mean: self.re_mean(v)? });
        self.geo.borrow_mut().push((v.to_bits(), geo.clone()));
        Ok(geo)
    }

    fn linear_map(&self) -> F<&MapSpec> {
        let n = self.inst.n();
        let map = match &self.inst.map {
            Some(m) => m,
            None => self.identity_map.get_or_init(|| MapSpec::identity(n)),
        };
        if map.k != 1 {
            return vacuous(format!("map has arity {}, a linear map is required", map.k));
        }
        if map.n != n {
            return Err(Fault::Failed(format!("map acts on M_{}, operands are {n}x{n}", map.n)));
        }
        if map.normalization_defect()? > MAP_NORMALIZATION_TOL {
            return vacuous("map is not normalized");
        }
        Ok(map)
    }

    fn multi(&self) -> F<(&[Operand], &MapSpec)> {
        let ops = cached(&self.tuple, || {
            if self.inst.tuple.is_empty() {
                return Ok(vec![operand(&self.inst.a, "A1")?]);
            }
            self.inst.tuple.iter().enumerate().map(|(i, m)| operand(m, &format!("A{}", i + 1))).collect()
        })?;
        let k = ops.len();
        let n = self.inst.n();
        let map = match &self.inst.multimap {
            Some(m) => m,
            None if k == 1 => self.identity_map.get_or_init(|| MapSpec::identity(n)),
            None => return vacuous(format!("no multilinear map of arity {k} supplied")),
        };
        if map.k != k || map.n != n {
            return Err(Fault::Failed(format!(
                "map has arity {} on M_{}, tuple has {k} matrices of size {n}",
                map.k, map.n
            )));
        }
        if map.normalization_defect()? > MAP_NORMALIZATION_TOL {
            return vacuous("multilinear map is not normalized");
        }
        Ok((ops, map))
    }

    /// Bounds, arity and the images `Φ(Re A_i)`, `Φ(Re(A_i^{-1}))`.
    fn multi_images(&self, e: &mut Emit) -> F<MultiImages> {
        let (ops, map) = self.multi()?;
        let m = ops.iter().map(|o| o.re_min).fold(f64::INFINITY, f64::min);
        let big = ops.iter().map(|o| o.re_max).fold(f64::NEG_INFINITY, f64::max);
        let (m, big, h) = record_bounds(e, m, big);
        let k = ops.len();
        e.cur.k = Some(k);
        let re: Vec<CMatrix> = ops.iter().map(|o| o.re.clone()).collect();
        let re_inv: Vec<CMatrix> = ops.iter().map(|o| o.re_inv.clone()).collect();
        let inv_re: Vec<CMatrix> = ops.iter().map(|o| o.inv_re.clone()).collect();
        Ok(MultiImages {
            k,
            m,
            big,
            hk: h.powi(k as i32),
            phi_re: map.apply(&re)?.re_part(),
            phi_re_inv: map.apply(&re_inv)?.re_part(),
            phi_inv_re: map.apply(&inv_re)?.re_part(),
        })
    }

    // ----- singular-value products ----------------------------------------

    fn ga1(&self, p: &Params, e: &mut Emit) -> F<()> {
        let (x, y) = self.free();
        let s = x + y;
        let rs = p.r.map(|r| vec![r]).unwrap_or_else(|| GA1_R_GRID.to_vec());
        for r in rs {
            e.cur.r = Some(r);
            if !(1.0..=2.0).contains(&r) {
                e.vacuous("main", format!("r = {r} outside [1, 2]"));
                continue;
            }
            let lhs = prefix(&sv(&abs_apply(&s, |t| t.powf(r))?)?);
            let ra = prefix(&sv(&abs_apply(x, |t| 1.0 + t.powf(r))?)?);
            let rb = prefix(&sv(&abs_apply(y, |t| 1.0 + t.powf(r))?)?);
            for k in self.ks(p) {
                e.cur.k = Some(k);
                e.scalar("main", lhs[k - 1], ra[k - 1] * rb[k - 1])?;
            }
        }
        Ok(())
    }

    fn ga2(&self, p: &Params, e: &mut Emit) -> F<()> {
        let (x, y) = self.free();
        let s = x + y;
        let fs = p.f.map(|f| vec![f]).unwrap_or_else(|| Concave::ALL.to_vec());
        for f in fs {
            e.cur.f = Some(f);
            let lhs = prefix(&sv(&abs_apply(&s, |t| 1.0 + f.eval(t))?)?);
            let ra = prefix(&sv(&abs_apply(x, |t| 1.0 + f.eval(t))?)?);
            let rb = prefix(&sv(&abs_apply(y, |t| 1.0 + f.eval(t))?)?);
            for k in self.ks(p) {
                e.cur.k = Some(k);
                e.scalar("main", lhs[k - 1], ra[k - 1] * rb[k - 1])?;
            }
        }
        Ok(())
    }

    fn ga34(&self, p: &Params, e: &mut Emit, shifted: bool) -> F<()> {
        let (a, b) = self.psd(false)?;
        let id = CMatrix::identity(a.n());
        let sum = a + b;
        let lhs = prefix(&sv(&if shifted { &id + &sum } else { sum })?);
        let ra = prefix(&sv(&(&id + a))?);
        let rb = prefix(&sv(&(&id + b))?);
        for k in self.ks(p) {
            e.cur.k = Some(k);
            e.scalar("main", lhs[k - 1], ra[k - 1] * rb[k - 1])?;
        }
        Ok(())
    }

    // ----- single-matrix bounds --------------------------------------------

    fn l11s(&self, e: &mut Emit) -> F<()> {
        let (x, _) = self.free();
        e.indexed("main", sv(&x.re_part())?, sv(x)?)?;
        // With Re A >= 0 the singular values of Re A are its eigenvalues.
        match self.op_a() {
            Ok(a) => e.indexed("accretive", sv(&a.re)?, sv(&a.m)?),
            Err(Fault::Vacuous(reason)) => {
                e.vacuous("accretive", reason);
                Ok(())
            }
            Err(f) => Err(f),
        }
    }

    fn l11d(&self, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        e.scalar("main", det(&a.re).re, det(&a.m).norm())
    }

    fn l12s(&self, p: &Params, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let s2 = sec2(self.resolve_alpha(a.alpha, p, e)?);
        let rhs = sv(&a.re)?.into_iter().map(|s| s2 * s).collect();
        e.indexed("main", sv(&a.m)?, rhs)
    }

    fn l12d(&self, p: &Params, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let alpha = self.resolve_alpha(a.alpha, p, e)?;
        let n = a.m.n() as i32;
        e.scalar("main", det(&a.m).norm(), alpha.cos().recip().powi(n) * det(&a.re).re)
    }

    fn l13(&self, p: &Params, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let s2 = sec2(self.resolve_alpha(a.alpha, p, e)?);
        e.loewner("left", &a.re_inv, &a.inv_re)?;
        e.loewner("right", &a.inv_re, &a.re_inv.scale(s2))
    }

    // ----- norm bounds -------------------------------------------------------

    fn bk1(&self, e: &mut Emit) -> F<()> {
        let (a, b) = self.psd(true)?;
        let s = op_norm(&(a + b))?;
        e.scalar("main", op_norm(&(a * b))?, 0.25 * s * s)
    }

    fn az2(&self, p: &Params, e: &mut Emit) -> F<()> {
        let (a, b) = self.psd(true)?;
        let sum = (a + b).re_part();
        let rs = p.r.map(|r| vec![r]).unwrap_or_else(|| AZ2_R_GRID.to_vec());
        for r in rs {
            e.cur.r = Some(r);
            if r < 1.0 {
                e.vacuous("main", format!("r = {r} below 1"));
                continue;
            }
            let lhs = op_norm(&(&hpd_power(a, r)? + &hpd_power(b, r)?))?;
            e.scalar("main", lhs, op_norm(&hpd_power(&sum, r)?)?)?;
        }
        Ok(())
    }

    /// `A <= rB` iff `‖A^{1/2} B^{-1/2}‖ <= r^{1/2}`, probed just above and
    /// just below the extremal `r`.
    fn bk3(&self, e: &mut Emit) -> F<()> {
        let (a, b) = self.psd(true)?;
        let b_mhalf = hpd_power(b, -0.5)?;
        let r_star = sym_eigvals(&(&(&b_mhalf * a) * &b_mhalf))?[0];
        let norm = op_norm(&(&hpd_power(a, 0.5)? * &b_mhalf))?;
        let margin = |r: f64| -> F<f64> {
            let rb = b.scale(r);
            Ok(lambda_min(&(&rb - a))? / herm_norm(&rb)?.max(1.0))
        };

        // Loewner side holds, so the norm side must too.
        let r = r_star * (1.0 + BOUNDARY_DELTA);
        e.cur.r = Some(r);
        if margin(r)? < 0.0 {
            e.vacuous("forward", "A <= rB does not hold numerically at the probe".into());
        } else {
            e.boundary("forward", (r.sqrt() - norm) / r.sqrt().max(1.0), norm, r.sqrt())?;
        }

        // Norm side holds, so the Loewner side must too.
        let r = norm * norm * (1.0 + BOUNDARY_DELTA);
        e.cur.r = Some(r);
        e.boundary("reverse", margin(r)?, norm, r.sqrt())?;

        // Both sides fail together below the boundary.
        let r = r_star * (1.0 - BOUNDARY_DELTA);
        e.cur.r = Some(r);
        let slack = ((norm - r.sqrt()) / r.sqrt().max(1.0)).min(-margin(r)?);
        e.boundary("below", slack, norm, r.sqrt())
    }

    /// `|X| <= rI` iff `‖X‖ <= r` iff `[[rI, X], [X*, rI]] >= 0`.
    fn lin151(&self, e: &mut Emit) -> F<()> {
        let (x, _) = self.free();
        let n = x.n();
        let norm = op_norm(x)?;
        let abs = abs_apply(x, |t| t)?;
        let abs_margin = |r: f64| -> F<f64> { Ok(lambda_min(&(&CMatrix::identity(n).scale(r) - &abs))? / r.max(1.0)) };
        let block_margin = |r: f64| -> F<f64> {
            let blk = block_2x2(r, x);
            Ok(lambda_min(&blk)? / herm_norm(&blk)?.max(1.0))
        };

        let r = norm * (1.0 + BOUNDARY_DELTA);
        e.cur.r = Some(r);
        e.boundary("abs", abs_margin(r)?, norm, r)?;
        e.boundary("block", block_margin(r)?, norm, r)?;

        let r = norm * (1.0 - BOUNDARY_DELTA);
        e.cur.r = Some(r);
        let slack = (-abs_margin(r)?).min(-block_margin(r)?);
        e.boundary("below", slack, norm, r)
    }

    // ----- means --------------------------------------------------------

    fn txl(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let (a, b) = self.pair()?;
        let h = harmonic_from_inverses(&a.inv, &b.inv, p.v)?;
        let c2 = alpha.cos().powi(2);
        e.loewner("main", &h.re_part().scale(c2), &self.geo(p.v)?.re_g)
    }

    fn txr(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let arith = &a.re.scale(1.0 - p.v) + &b.re.scale(p.v);
        e.loewner("main", &self.geo(p.v)?.re_g, &arith.scale(s2))
    }

    fn ref9(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let lhs = inverse(&(&a.m + &b.m))?.re_part();
        e.loewner("main", &lhs, &(&a.re_inv + &b.re_inv).scale(s2 * s2 / 4.0))
    }

    fn ref7(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let v = p.v;
        let lhs = inverse(&(&a.m.scale(1.0 - v) + &b.m.scale(v)))?.re_part();
        let rhs = (&a.re_inv.scale(1.0 - v) + &b.re_inv.scale(v)).scale(s2);
        e.loewner("main", &lhs, &rhs)
    }

    fn ref8(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let lhs = inverse(&(&a.m + &b.m))?.re_part();
        e.loewner("main", &lhs, &(&a.re_inv + &b.re_inv).scale(s2 / 4.0))
    }

    fn nf1(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let g = self.geo(p.v)?;
        e.loewner("main", &g.re_g, &g.re_mean.scale(s2))
    }

    fn nf11(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let g = self.geo(p.v)?;
        let r_min = p.v.min(1.0 - p.v);
        let half = cached(&self.half_mean, || self.re_mean(0.5))?;
        let am_half = (&a.re + &b.re).scale(0.5);
        let am_v = &a.re.scale(1.0 - p.v) + &b.re.scale(p.v);
        let refined = &am_v.scale(s2) - &(&am_half - half).scale(2.0 * r_min * s2);
        e.loewner("main", &g.re_g, &refined)?;
        e.loewner("refines", &refined, &am_v.scale(s2))
    }

    fn r1(&self, p: &Params, e: &mut Emit) -> F<()> {
        let g = self.geo(p.v)?;
        e.loewner("main", &g.re_mean, &g.re_g)
    }

    fn svharm(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let h = harmonic_from_inverses(&a.inv, &b.inv, p.v)?;
        let arith = &a.m.scale(1.0 - p.v) + &b.m.scale(p.v);
        let sh = prefix(&sv(&h)?);
        let sre_h = prefix(&sv(&h.re_part())?);
        let sre_m = prefix(&sv(&arith.re_part())?);
        let sm = prefix(&sv(&arith)?);
        for k in self.ks(p) {
            e.cur.k = Some(k);
            let c2 = s2.powi(k as i32);
            let c4 = c2 * c2;
            e.scalar("link1", sh[k - 1], c2 * sre_h[k - 1])?;
            e.scalar("link2", c2 * sre_h[k - 1], c4 * sre_m[k - 1])?;
            e.scalar("link3", c4 * sre_m[k - 1], c4 * sm[k - 1])?;
        }
        Ok(())
    }

    // ----- products and determinants with inverses ----------------------

    fn f6(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let id = CMatrix::identity(a.m.n());
        let lhs = prefix(&sv(&inverse(&(&a.m + &b.m))?)?);
        let ra = prefix(&sv(&(&id + &a.inv))?);
        let rb = prefix(&sv(&(&id + &b.inv))?);
        for k in self.ks(p) {
            e.cur.k = Some(k);
            let c = (s2 * s2 / 4.0).powi(k as i32);
            e.scalar("main", lhs[k - 1], c * ra[k - 1] * rb[k - 1])?;
        }
        Ok(())
    }

    fn f7(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let id = CMatrix::identity(a.m.n());
        let lhs = prefix(&sv(&(&id + &inverse(&(&a.m + &b.m))?))?);
        let ra = prefix(&sv(&(&id + &a.inv.scale(s2 / 4.0)))?);
        let rb = prefix(&sv(&(&id + &b.inv.scale(s2 / 4.0)))?);
        for k in self.ks(p) {
            e.cur.k = Some(k);
            e.scalar("main", lhs[k - 1], s2.powi(k as i32) * ra[k - 1] * rb[k - 1])?;
        }
        Ok(())
    }

    fn f90(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (a, b) = self.pair()?;
        let id = CMatrix::identity(a.m.n());
        let lhs = prefix(&sv(&(&a.m + &b.m))?);
        let ra = prefix(&sv(&(&id + &a.m.scale(s2)))?);
        let rb = prefix(&sv(&(&id + &b.m.scale(s2)))?);
        for k in self.ks(p) {
            e.cur.k = Some(k);
            e.scalar("main", lhs[k - 1], ra[k - 1] * rb[k - 1])?;
        }
        Ok(())
    }

    fn dets(&self) -> F<Dets> {
        let (a, b) = self.pair()?;
        Ok(Dets { abs_a: det(&a.m).norm(), abs_b: det(&b.m).norm(), re_a: det(&a.re).re, re_b: det(&b.re).re })
    }

    fn d2233(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let (a, b) = self.pair()?;
        let d = self.dets()?;
        let n = a.m.n() as i32;
        let cn = alpha.cos().powi(n);
        let top = det(&(&a.m + &b.m)).norm();
        let re_sum = det(&(&a.re + &b.re)).re;
        let bottom = cn * (d.abs_a + d.abs_b);
        e.scalar("main", bottom, top)?;
        e.scalar("link1", re_sum, top)?;
        e.scalar("link2", d.re_a + d.re_b, re_sum)?;
        e.scalar("link3", bottom, d.re_a + d.re_b)
    }

    fn d2244(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let d = self.dets()?;
        let secn = alpha.cos().recip().powi(self.inst.n() as i32);
        let hm_abs = harm(d.abs_a, d.abs_b);
        let am_abs = arith(d.abs_a, d.abs_b);
        let hm_re = harm(d.re_a, d.re_b);
        let am_re = arith(d.re_a, d.re_b);
        e.scalar("main", hm_abs, secn * am_abs)?;
        e.scalar("link1", hm_abs, secn * hm_re)?;
        e.scalar("link2", secn * hm_re, secn * am_re)?;
        e.scalar("link3", secn * am_re, secn * am_abs)
    }

    fn d2255(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let (_, _, h) = self.pair_bounds(e)?;
        let d = self.dets()?;
        let k2 = kantorovich(h)?.powi(2);
        let cn = alpha.cos().powi(self.inst.n() as i32);
        let hm_abs = harm(d.abs_a, d.abs_b);
        let am_abs = arith(d.abs_a, d.abs_b);
        let hm_re = harm(d.re_a, d.re_b);
        let am_re = arith(d.re_a, d.re_b);
        e.scalar("main", cn * am_abs / k2, hm_abs)?;
        e.scalar("link1", hm_re, hm_abs)?;
        e.scalar("link2", am_re / k2, hm_re)?;
        e.scalar("link3", cn * am_abs / k2, am_re / k2)
    }

    fn f10(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let (a, b) = self.pair()?;
        let n = a.m.n() as i32;
        let id = CMatrix::identity(a.m.n());
        let lhs = det(&inverse(&(&a.m + &b.m))?).norm();
        let c = alpha.cos().recip().powi(3 * n) / 4f64.powi(n);
        let rhs = c * det(&(&id + &a.inv)).norm() * det(&(&id + &b.inv)).norm();
        e.scalar("main", lhs, rhs)
    }

    fn f212(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let s2 = sec2(alpha);
        let (a, b) = self.pair()?;
        let n = a.m.n() as i32;
        let id = CMatrix::identity(a.m.n());
        let lhs = det(&(&id + &inverse(&(&a.m + &b.m))?)).norm();
        let ra = det(&(&id + &a.inv.scale(s2 / 4.0))).norm();
        let rb = det(&(&id + &b.inv.scale(s2 / 4.0))).norm();
        e.scalar("main", lhs, alpha.cos().recip().powi(n) * ra * rb)
    }

    /// The sandwich constants are read back from the extreme eigenvalues of
    /// `Re(A^{-1})^{-1/2} Re(B^{-1}) Re(A^{-1})^{-1/2}`.
    fn p22(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let (a, b) = self.pair()?;
        let w = match hpd_power(&a.re_inv, -0.5) {
            Ok(w) => w,
            Err(Error::NotPositiveDefinite { .. }) => return vacuous("Re(A^-1) is not positive definite"),
            Err(err) => return Err(err.into()),
        };
        let spec = sym_eigvals(&(&(&w * &b.re_inv) * &w))?;
        let (m, big) = (spec[spec.len() - 1], spec[0]);
        if !(m > 0.0) {
            return vacuous(format!("sandwich lower constant m = {m:e} is not positive"));
        }
        let kap = kappa(m, big)?;
        e.cur.m = Some(m);
        e.cur.big_m = Some(big);
        e.cur.kappa = Some(kap);
        let n = a.m.n() as i32;
        let hm = harmonic_from_inverses(&a.inv, &b.inv, 0.5)?;
        let c = alpha.cos().powi(3 * n) * kap.powi(-n) / 2f64.powi(n);
        let d = self.dets()?;
        e.scalar("main", c * (d.abs_a + d.abs_b), det(&hm).norm())
    }

    fn detsup(&self, e: &mut Emit) -> F<()> {
        let (a, b) = self.psd(false)?;
        e.scalar("main", det(a).re + det(b).re, det(&(a + b)).re)
    }

    // ----- squared and Kantorovich-type inequalities ------------------------

    /// `0 <= X <= Y`, `mI <= X <= MI` gives `X^2 <= K(h) Y^2`; here
    /// `X = Re(A^{-1})` and `Y = (Re A)^{-1}`.
    fn sq(&self, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let (x, y) = (&a.re_inv, &a.inv_re);
        let gap = lambda_min(&(y - x))?;
        if gap < -self.tol * herm_norm(y)?.max(1.0) {
            return vacuous(format!("X <= Y fails (lambda_min(Y - X) = {gap:e})"));
        }
        let spec = sym_eigvals(x)?;
        let (_, _, h) = record_bounds(e, spec[spec.len() - 1], spec[0]);
        e.loewner("main", &sq(x), &sq(y).scale(kantorovich(h)?))
    }

    fn p31i(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let (_, _, h) = self.pair_bounds(e)?;
        let g = self.geo(p.v)?;
        e.loewner("main", &sq(&g.re_g), &sq(&g.re_mean).scale(s2 * s2 * kantorovich(h)?))
    }

    fn p31ii(&self, p: &Params, e: &mut Emit) -> F<()> {
        self.pair()?;
        let (_, _, h) = self.pair_bounds(e)?;
        let g = self.geo(p.v)?;
        e.loewner("main", &sq(&g.re_mean), &sq(&g.re_g).scale(kantorovich(h)?))
    }

    fn p31iii(&self, p: &Params, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let s2 = sec2(self.resolve_alpha(a.alpha, p, e)?);
        let map = self.linear_map()?;
        let (_, _, h) = record_bounds(e, a.re_min, a.re_max);
        let x = map.apply1(&a.inv_re)?.re_part();
        let y = map.apply1(&a.re_inv)?.re_part();
        e.loewner("main", &sq(&x), &sq(&y).scale(s2 * s2 * kantorovich(h)?))
    }

    fn rim(&self, p: &Params, e: &mut Emit) -> F<()> {
        self.pair()?;
        let (_, _, h) = self.pair_bounds(e)?;
        let g = self.geo(p.v)?;
        e.loewner("main", &g.re_mean.scale(kantorovich(h)?.sqrt().recip()), &g.re_g)
    }

    fn r7(&self, p: &Params, e: &mut Emit) -> F<()> {
        let s2 = sec2(self.pair_alpha(p, e)?);
        let g = self.geo(p.v)?;
        e.loewner("left", &g.re_mean, &g.re_g)?;
        e.loewner("right", &g.re_g, &g.re_mean.scale(s2))
    }

    fn fff(&self, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let map = self.linear_map()?;
        let (_, _, h) = record_bounds(e, a.re_min, a.re_max);
        let kh = kantorovich(h)?;
        let x = map.apply1(&a.re_inv)?;
        let y = map.apply1(&a.inv_re)?;
        let z = inverse(&map.apply1(&a.re)?.re_part())?;
        e.loewner("main", &x, &y.scale(kh))?;
        e.loewner("kantorovich", &x, &z.scale(kh))?;
        e.loewner("choi", &z, &y)
    }

    fn ffff(&self, p: &Params, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let s2 = sec2(self.resolve_alpha(a.alpha, p, e)?);
        let map = self.linear_map()?;
        let (_, _, h) = record_bounds(e, a.re_min, a.re_max);
        let x = map.apply1(&a.inv_re)?;
        let y = map.apply1(&a.re_inv)?;
        e.loewner("main", &x, &y.scale(s2 * kantorovich(h)?.sqrt()))
    }

    fn choi(&self, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let map = self.linear_map()?;
        let lhs = inverse(&map.apply1(&a.re_inv)?.re_part())?;
        let rhs = map.apply1(&inverse(&a.re_inv)?)?;
        e.loewner("main", &lhs, &rhs)
    }

    fn choi2(&self, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let map = self.linear_map()?;
        let spec = sym_eigvals(&a.re_inv)?;
        let (_, _, h) = record_bounds(e, spec[spec.len() - 1], spec[0]);
        let x = inverse(&map.apply1(&a.re_inv)?.re_part())?.re_part();
        let y = map.apply1(&inverse(&a.re_inv)?)?.re_part();
        e.loewner("main", &sq(&x), &sq(&y).scale(kantorovich(h)?))
    }

    /// The modulus is read as the operator norm.
    fn cor8(&self, p: &Params, e: &mut Emit) -> F<()> {
        let a = self.op_a()?;
        let s2 = sec2(self.resolve_alpha(a.alpha, p, e)?);
        let map = self.linear_map()?;
        let (_, _, h) = record_bounds(e, a.re_min, a.re_max);
        let c = s2 * kantorovich(h)?.sqrt();
        let x = map.apply1(&a.inv_re)?.re_part();
        let w = inverse(&map.apply1(&a.re_inv)?.re_part())?;
        let xw = &x * &w;
        let wx = &w * &x;
        e.scalar("main", op_norm(&(&xw + &wx))?, 2.0 * c)?;
        e.scalar("product", op_norm(&xw)?, c)
    }

    // ----- multilinear maps ---------------------------------------------

    fn mf12(&self, e: &mut Emit) -> F<()> {
        let (ops, map) = self.multi()?;
        let im = self.multi_images(e)?;
        let invs: Vec<CMatrix> = ops.iter().map(|o| o.inv_re.clone()).collect();
        let lhs = map.apply(&invs)?;
        let rhs = inverse(&im.phi_re)?.scale(kantorovich(im.hk)?);
        e.loewner("main", &lhs, &rhs)
    }

    fn mf2(&self, e: &mut Emit) -> F<()> {
        let im = self.multi_images(e)?;
        let rhs = inverse(&im.phi_re)?.scale(kantorovich(im.hk)?);
        e.loewner("main", &im.phi_re_inv, &rhs)
    }

    fn mf4(&self, e: &mut Emit) -> F<()> {
        let im = self.multi_images(e)?;
        let k = im.k as i32;
        let (mk, bk) = (im.m.powi(k), im.big.powi(k));
        let l = im.phi_re.n();
        let bound = CMatrix::identity(l).scale(mk + bk);
        e.loewner("main", &(&im.phi_inv_re.scale(mk * bk) + &im.phi_re), &bound)?;
        e.loewner("mf6", &(&im.phi_re_inv.scale(mk * bk) + &im.phi_re), &bound)?;
        let prod = op_norm(&(&im.phi_re_inv * &im.phi_re))?;
        e.scalar("mf7", mk * bk * prod, 0.25 * (mk + bk) * (mk + bk))
    }

    fn tmm(&self, e: &mut Emit) -> F<()> {
        let im = self.multi_images(e)?;
        let kh = kantorovich(im.hk)?;
        let rhs = hpd_power(&im.phi_re, -2.0)?.scale(kh * kh);
        e.loewner("main", &sq(&im.phi_re_inv), &rhs)
    }

    fn re1(&self, p: &Params, e: &mut Emit) -> F<()> {
        let im = self.multi_images(e)?;
        let kh = kantorovich(im.hk)?;
        let ps = p.p.map(|p| vec![p]).unwrap_or_else(|| RE1_P_GRID.to_vec());
        for pw in ps {
            e.cur.p = Some(pw);
            let lhs = hpd_power(&im.phi_re_inv, pw)?;
            let rhs = hpd_power(&im.phi_re, -pw)?.scale(kh.powf(pw));
            e.loewner(if pw <= 2.0 { "p<=2" } else { "p>2" }, &lhs, &rhs)?;
        }
        Ok(())
    }

    fn nat(&self, p: &Params, e: &mut Emit) -> F<()> {
        let alpha = self.pair_alpha(p, e)?;
        let (_, _, h) = self.pair_bounds(e)?;
        e.scalar("main", 1.0, kantorovich(h)? / alpha.cos())
    }
}

struct Dets {
    abs_a: f64,
    abs_b: f64,
    re_a: f64,
    re_b: f64,
}

struct MultiImages {
    k: usize,
    m: f64,
    big: f64,
    /// `h^k`.
    hk: f64,
    /// `Φ(Re A_1, ..., Re A_k)`.
    phi_re: CMatrix,
    /// `Φ(Re(A_1^{-1}), ...)`.
    phi_re_inv: CMatrix,
    /// `Φ((Re A_1)^{-1}, ...)`.
    phi_inv_re: CMatrix,
}

fn record_bounds(e: &mut Emit, m: f64, big: f64) -> (f64, f64, f64) {
    let h = big / m;
    e.cur.m = Some(m);
    e.cur.big_m = Some(big);
    e.cur.h = Some(h);
    (m, big, h)
}

fn harm(a: f64, b: f64) -> f64 {
    2.0 * a * b / (a + b)
}

fn arith(a: f64, b: f64) -> f64 {
    0.5 * (a + b)
}
