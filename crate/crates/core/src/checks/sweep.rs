//! Randomized soundness sweeps over the catalogue.
//!
//! Every `(trial, n, alpha)` cell derives its own seed from the base seed,
//! so cells are independent. Cells run in parallel and their partial
//! aggregates are folded in cell order, which keeps reports identical for
//! any worker count.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmat::CMatrix;
use crate::error::{Error, Result};
use crate::posmap::{gen_map, MapKind};
use crate::rng::{derive_seed, ginibre, rng_from_seed};
use crate::sector::{gen_sector, SectorGenSpec};

use super::catalogue::{CheckId, Family};
use super::eval::{Evaluator, Instance, Params};
use super::result::{CheckResult, Verdict, DEFAULT_TOL};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub ids: Vec<CheckId>,
    pub n_min: usize,
    pub n_max: usize,
    pub alphas: Vec<f64>,
    pub v_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// Condition bound for the generator's congruence factor.
    pub cond_x: f64,
    /// Largest arity of generated multilinear maps.
    pub max_k: usize,
    /// Largest output dimension of generated maps.
    pub max_l: usize,
    /// Arity is reduced until `n^k` is at most this.
    pub max_tensor_dim: usize,
    /// Cap on failures and errors kept verbatim in the report.
    pub max_failures: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            ids: CheckId::ALL.to_vec(),
            n_min: 2,
            n_max: 6,
            alphas: vec![0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3],
            v_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            trials: 500,
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
            cond_x: 10.0,
            max_k: 3,
            max_l: 6,
            max_tensor_dim: 64,
            max_failures: 100,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.ids.is_empty() {
            return bad("no check ids".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad(format!("tol = {} must be positive", self.tol));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!("invalid n range {}..={}", self.n_min, self.n_max));
        }
        if self.alphas.is_empty() || self.alphas.iter().any(|a| !(0.0..FRAC_PI_2).contains(a)) {
            return bad("alphas must be non-empty and lie in [0, pi/2)".into());
        }
        if self.v_grid.is_empty() || self.v_grid.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return bad("v grid must be non-empty and lie in [0, 1]".into());
        }
        if !(self.cond_x >= 1.0 && self.cond_x.is_finite()) {
            return bad(format!("cond_x = {} must be >= 1", self.cond_x));
        }
        if self.max_k == 0 || self.max_l == 0 || self.max_tensor_dim < self.n_max {
            return bad("max_k, max_l must be positive and max_tensor_dim >= n_max".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LinkSummary {
    pub link: String,
    pub evaluations: usize,
    pub passes: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub min_slack: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub id: CheckId,
    /// Instances the check was run on.
    pub trials: usize,
    pub evaluations: usize,
    pub passes: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub errors: usize,
    /// Smallest slack among evaluations with met hypotheses.
    pub min_slack: Option<f64>,
    /// Cell seed of the tightest evaluation.
    pub worst_seed: Option<u64>,
    pub worst: Option<CheckResult>,
    pub links: Vec<LinkSummary>,
}

impl CheckSummary {
    fn new(id: CheckId) -> Self {
        Self {
            id,
            trials: 0,
            evaluations: 0,
            passes: 0,
            fails: 0,
            vacuous: 0,
            errors: 0,
            min_slack: None,
            worst_seed: None,
            worst: None,
            links: Vec::new(),
        }
    }

    fn record(&mut self, r: &CheckResult, seed: u64) {
        self.evaluations += 1;
        let link = match self.links.iter_mut().position(|l| l.link == r.link) {
            Some(i) => &mut self.links[i],
            None => {
                self.links.push(LinkSummary { link: r.link.clone(), ..LinkSummary::default() });
                self.links.last_mut().expect("just pushed")
            }
        };
        link.evaluations += 1;
        match r.verdict {
            Verdict::Vacuous => {
                self.vacuous += 1;
                link.vacuous += 1;
                return;
            }
            Verdict::Pass => {
                self.passes += 1;
                link.passes += 1;
            }
            Verdict::Fail => {
                self.fails += 1;
                link.fails += 1;
            }
        }
        if link.min_slack.is_none_or(|m| r.slack < m) {
            link.min_slack = Some(r.slack);
        }
        if self.min_slack.is_none_or(|m| r.slack < m) {
            self.min_slack = Some(r.slack);
            self.worst_seed = Some(seed);
            self.worst = Some(r.clone());
        }
    }

    /// Folds a later partial aggregate into this one; ties keep the earlier.
    fn merge(&mut self, other: CheckSummary) {
        self.trials += other.trials;
        self.evaluations += other.evaluations;
        self.passes += other.passes;
        self.fails += other.fails;
        self.vacuous += other.vacuous;
        self.errors += other.errors;
        if let Some(s) = other.min_slack {
            if self.min_slack.is_none_or(|m| s < m) {
                self.min_slack = Some(s);
                self.worst_seed = other.worst_seed;
                self.worst = other.worst;
            }
        }
        for ol in other.links {
            match self.links.iter_mut().find(|l| l.link == ol.link) {
                Some(l) => {
                    l.evaluations += ol.evaluations;
                    l.passes += ol.passes;
                    l.fails += ol.fails;
                    l.vacuous += ol.vacuous;
                    if let Some(s) = ol.min_slack {
                        if l.min_slack.is_none_or(|m| s < m) {
                            l.min_slack = Some(s);
                        }
                    }
                }
                None => self.links.push(ol),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepError {
    pub id: Option<CheckId>,
    pub seed: u64,
    pub witness: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Totals {
    pub evaluations: usize,
    pub passes: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: SweepConfig,
    pub results: Vec<CheckSummary>,
    pub failures: Vec<CheckResult>,
    pub errors: Vec<SweepError>,
    pub totals: Totals,
}

impl Report {
    /// Genuine violations or evaluation errors occurred.
    pub fn has_findings(&self) -> bool {
        self.totals.fails > 0 || self.totals.errors > 0
    }

    pub fn summary(&self, id: CheckId) -> Option<&CheckSummary> {
        self.results.iter().find(|s| s.id == id)
    }
}

struct Partial {
    by_id: BTreeMap<CheckId, CheckSummary>,
    failures: Vec<CheckResult>,
    errors: Vec<SweepError>,
}

struct Cell {
    trial: usize,
    n: usize,
    alpha_index: usize,
}

/// Runs a sweep on the global rayon pool.
pub fn sweep(config: &SweepConfig) -> Result<Report> {
    config.validate()?;
    let mut cells = Vec::new();
    for trial in 0..config.trials {
        for n in config.n_min..=config.n_max {
            for alpha_index in 0..config.alphas.len() {
                cells.push(Cell { trial, n, alpha_index });
            }
        }
    }
    let partials: Vec<Partial> = cells.par_iter().map(|c| run_cell(config, c)).collect();

    let mut by_id: BTreeMap<CheckId, CheckSummary> = config.ids.iter().map(|&id| (id, CheckSummary::new(id))).collect();
    let mut failures = Vec::new();
    let mut errors = Vec::new();
    for p in partials {
        for (id, s) in p.by_id {
            by_id.get_mut(&id).expect("requested id").merge(s);
        }
        let room = config.max_failures.saturating_sub(failures.len());
        failures.extend(p.failures.into_iter().take(room));
        let room = config.max_failures.saturating_sub(errors.len());
        errors.extend(p.errors.into_iter().take(room));
    }
    let results: Vec<CheckSummary> = by_id.into_values().collect();
    let totals = results.iter().fold(Totals::default(), |mut t, s| {
        t.evaluations += s.evaluations;
        t.passes += s.passes;
        t.fails += s.fails;
        t.vacuous += s.vacuous;
        t.errors += s.errors;
        t
    });
    Ok(Report { config: config.clone(), results, failures, errors, totals })
}

/// Runs a sweep on a dedicated pool of `threads` workers (0 = rayon default).
pub fn sweep_with_threads(config: &SweepConfig, threads: usize) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
    pool.install(|| sweep(config))
}

fn needs(config: &SweepConfig, family: Family) -> bool {
    config.ids.iter().any(|id| id.family() == family)
}

fn build_instance(config: &SweepConfig, cell: &Cell, seed: u64) -> Result<Instance> {
    let n = cell.n;
    let alpha = config.alphas[cell.alpha_index];
    let sector = |tag: u64| -> Result<CMatrix> {
        let spec = SectorGenSpec { n, alpha_max: alpha, cond_x: config.cond_x, seed: derive_seed(seed, &[tag]), force_extremal: true };
        Ok(gen_sector(&spec)?.matrix)
    };
    let mut inst = Instance::pair(sector(0)?, sector(1)?);
    inst.witness = format!(
        "seed={} trial={} n={} alpha={} cell_seed={seed}",
        config.seed, cell.trial, n, alpha
    );

    // Free and PSD operands do not depend on alpha; draw them once per (trial, n).
    if cell.alpha_index == 0 {
        let base = derive_seed(config.seed, &[cell.trial as u64, n as u64]);
        let mut rng = rng_from_seed(derive_seed(base, &[2]));
        if needs(config, Family::Free) {
            inst.free = Some((ginibre(n, &mut rng), ginibre(n, &mut rng)));
        }
        if needs(config, Family::Psd) {
            let g = ginibre(n, &mut rng);
            let h = ginibre(n, &mut rng);
            inst.psd = Some(((&g * &g.adjoint()).re_part(), (&h * &h.adjoint()).re_part()));
        }
    }

    let mut rng = rng_from_seed(derive_seed(seed, &[3]));
    if needs(config, Family::LinearMap) {
        let kind = [MapKind::Compression, MapKind::Kraus, MapKind::Trace][cell.trial % 3];
        let cap = match kind {
            MapKind::Compression => n,
            MapKind::Kraus => 3 * n,
            _ => config.max_l,
        };
        let l = rng.random_range(1..=cap.min(config.max_l));
        inst.map = Some(gen_map(kind, n, l, 1, derive_seed(seed, &[4]))?);
    }
    if needs(config, Family::Multi) {
        let mut k = 1 + (cell.trial + cell.alpha_index) % config.max_k;
        while k > 1 && n.checked_pow(k as u32).is_none_or(|d| d > config.max_tensor_dim) {
            k -= 1;
        }
        let dim = n.pow(k as u32);
        let l = rng.random_range(1..=dim.min(config.max_l));
        let mut tuple = vec![inst.a.clone()];
        for i in 1..k {
            tuple.push(sector(10 + i as u64)?);
        }
        inst.tuple = tuple;
        inst.multimap = Some(gen_map(MapKind::TensorCompression, n, l, k, derive_seed(seed, &[5]))?);
    }
    Ok(inst)
}

fn run_cell(config: &SweepConfig, cell: &Cell) -> Partial {
    let seed = derive_seed(config.seed, &[cell.trial as u64, cell.n as u64, cell.alpha_index as u64]);
    let mut part = Partial { by_id: BTreeMap::new(), failures: Vec::new(), errors: Vec::new() };
    let inst = match build_instance(config, cell, seed) {
        Ok(inst) => inst,
        Err(e) => {
            part.errors.push(SweepError {
                id: None,
                seed,
                witness: format!("seed={} trial={} n={}", config.seed, cell.trial, cell.n),
                message: e.to_string(),
            });
            return part;
        }
    };
    let ev = Evaluator::new(&inst, config.tol);
    for &id in &config.ids {
        let family = id.family();
        if matches!(family, Family::Free | Family::Psd) && cell.alpha_index != 0 {
            continue;
        }
        let summary = part.by_id.entry(id).or_insert_with(|| CheckSummary::new(id));
        summary.trials += 1;
        let vs: Vec<f64> = if id.uses_v() { config.v_grid.clone() } else { vec![0.5] };
        for v in vs {
            match ev.evaluate(id, &Params::with_v(v)) {
                Ok(results) => {
                    for r in results {
                        summary.record(&r, seed);
                        if r.verdict == Verdict::Fail && part.failures.len() < config.max_failures {
                            part.failures.push(r);
                        }
                    }
                }
                Err(e) => {
                    summary.errors += 1;
                    if part.errors.len() < config.max_failures {
                        part.errors.push(SweepError { id: Some(id), seed, witness: inst.witness.clone(), message: e.to_string() });
                    }
                }
            }
        }
    }
    part
}
