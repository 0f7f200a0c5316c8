mod common;

use common::*;
use sectorix::checks::{
    concave_catalogue, evaluate, sweep, CheckId, CheckResult, Concave, Evaluator, Family, Form, Instance, Params,
    SweepConfig, Verdict, DEFAULT_TOL,
};
use sectorix::means::kantorovich;
use sectorix::sector::{gen_hpd, gen_sector, SectorGenSpec};
use sectorix::{CMatrix, C64};

fn sector(n: usize, alpha: f64, seed: u64) -> CMatrix {
    gen_sector(&SectorGenSpec::new(n, alpha, seed)).unwrap().matrix
}

fn run(id: CheckId, inst: &Instance, p: &Params) -> Vec<CheckResult> {
    evaluate(id, inst, p, DEFAULT_TOL).unwrap()
}

fn link<'a>(res: &'a [CheckResult], name: &str) -> &'a CheckResult {
    res.iter().find(|r| r.link == name).unwrap_or_else(|| panic!("no link {name}"))
}

/// Product of the `k` largest eigenvalues of a Hermitian positive definite matrix.
fn top_eig_product(h: &CMatrix, k: usize) -> f64 {
    eigvals(h)[..k].iter().product()
}

fn det_re(h: &CMatrix) -> f64 {
    det(h).re
}

fn slack(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / rhs.abs().max(1.0)
}

#[test]
fn identity_instances() {
    let i3 = CMatrix::identity(3);
    let inst = Instance::pair(i3.clone(), i3.clone());
    for k in 1..=3 {
        let res = run(CheckId::F6, &inst, &Params { k: Some(k), ..Params::default() });
        assert_eq!(res.len(), 1);
        let r = &res[0];
        assert!((r.lhs[0] - 0.5f64.powi(k as i32)).abs() < 1e-14);
        assert!((r.rhs[0] - 1.0).abs() < 1e-14);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.params.alpha, Some(0.0));
    }
    let res = run(CheckId::F6, &inst, &Params { k: Some(2), ..Params::default() });
    assert!((res[0].slack - 0.75).abs() < 1e-14);

    let res = run(CheckId::D2233, &inst, &Params::default());
    let main = link(&res, "main");
    assert_eq!((main.lhs[0], main.rhs[0]), (2.0, 8.0));
    assert!(res.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn tmm_on_diagonal_input() {
    let (m, big) = (0.5, 4.0);
    let a = CMatrix::from_real_diag(&[m, big]);
    let mut inst = Instance::pair(a.clone(), a.clone());
    inst.tuple = vec![a];
    let res = run(CheckId::Tmm, &inst, &Params::default());
    let r = &res[0];
    let k2 = kantorovich(big / m).unwrap().powi(2);
    // rhs - lhs = (K^2 - 1) A^{-2}, smallest at M; ‖rhs‖ = K^2 / m^2.
    let expected = (k2 - 1.0) / (big * big) / (k2 / (m * m)).max(1.0);
    assert_eq!(r.verdict, Verdict::Pass);
    assert!((r.slack - expected).abs() <= 1e-12, "{} vs {expected}", r.slack);
    assert_eq!(r.params.k, Some(1));
    assert_eq!(r.params.h, Some(big / m));
}

#[test]
fn nf1_on_random_sector_pairs() {
    for seed in 0..25u64 {
        let n = 2 + seed as usize % 4;
        let inst = Instance::pair(sector(n, 1.0, seed), sector(n, 0.6, seed + 100));
        let res = run(CheckId::Nf1, &inst, &Params::with_v(0.3));
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].verdict, Verdict::Pass, "seed {seed}: slack {}", res[0].slack);
        assert_eq!(res[0].form, Form::Loewner);
    }
}

#[test]
fn ga3_sweep_passes() {
    let cfg = SweepConfig { ids: vec![CheckId::Ga3], n_min: 3, n_max: 3, trials: 10, ..SweepConfig::default() };
    let report = sweep(&cfg).unwrap();
    let s = report.summary(CheckId::Ga3).unwrap();
    assert_eq!(s.trials, 10);
    assert_eq!((s.fails, s.errors, s.vacuous), (0, 0, 0));
    assert_eq!(s.passes, 30);
}

#[test]
fn p22_with_constructed_sandwich() {
    let mut r = rng(9);
    for seed in 0..20u64 {
        let n = 2 + seed as usize % 4;
        let a = sector(n, 0.8, seed);
        // B^{-1} = A^{-1} + P with P > 0 puts Re(B^{-1}) between Re(A^{-1}) and a multiple of it.
        let p = random_hpd(n, 0.05, 2.0, &mut r);
        let b = inv(&(&inv(&a) + &p));
        let res = run(CheckId::P22, &Instance::pair(a, b), &Params::default());
        let main = link(&res, "main");
        assert!(main.hypotheses_met);
        assert!(main.params.m.unwrap() >= 1.0 - 1e-9, "m = {:?}", main.params.m);
        assert!(main.params.kappa.is_some());
        assert_eq!(main.verdict, Verdict::Pass, "seed {seed}: slack {}", main.slack);
    }
}

#[test]
fn larger_alpha_never_lowers_slack() {
    let ids: Vec<CheckId> = CheckId::ALL.iter().copied().filter(|id| id.uses_alpha()).collect();
    for seed in 0..6u64 {
        let n = 2 + seed as usize % 3;
        let mut inst = Instance::pair(sector(n, 0.7, seed), sector(n, 0.5, seed + 40));
        inst.tuple = vec![inst.a.clone()];
        let ev = Evaluator::with_default_tol(&inst);
        for &id in &ids {
            let base = ev.evaluate(id, &Params::default()).unwrap();
            let alpha = base.iter().find_map(|r| r.params.alpha).unwrap();
            let wider = ev.evaluate(id, &Params { alpha: Some(alpha + 0.1), ..Params::default() }).unwrap();
            assert_eq!(base.len(), wider.len());
            for (x, y) in base.iter().zip(&wider) {
                assert!(
                    y.slack >= x.slack - 1e-12 * x.slack.abs().max(1.0),
                    "{} {} seed {seed}: {} -> {}",
                    id.name(),
                    x.link,
                    x.slack,
                    y.slack
                );
            }
        }
    }
}

#[test]
fn r7_chain_is_consistent() {
    for seed in 0..15u64 {
        let inst = Instance::pair(sector(3, 1.1, seed), sector(3, 0.9, seed + 7));
        for v in [0.25, 0.5, 0.75] {
            let res = run(CheckId::R7, &inst, &Params::with_v(v));
            let (left, right) = (link(&res, "left"), link(&res, "right"));
            assert!(left.holds() && right.holds());
            // Norms along a Loewner chain of positive matrices are ordered.
            assert_eq!(left.rhs[0], right.lhs[0]);
            assert!(left.lhs[0] <= left.rhs[0] * (1.0 + 1e-9));
            assert!(right.lhs[0] <= right.rhs[0] * (1.0 + 1e-9));
        }
    }
}

#[test]
fn nf11_refines_txr() {
    for seed in 0..15u64 {
        let inst = Instance::pair(sector(4, 0.9, seed), sector(4, 1.2, seed + 3));
        let ev = Evaluator::with_default_tol(&inst);
        for v in [0.1, 0.3, 0.5, 0.8] {
            let nf11 = ev.evaluate(CheckId::Nf11, &Params::with_v(v)).unwrap();
            let txr = ev.evaluate(CheckId::Txr, &Params::with_v(v)).unwrap();
            let refined = link(&nf11, "main").rhs[0];
            let plain = txr[0].rhs[0];
            assert!(refined <= plain + 1e-8 * plain.max(1.0), "seed {seed} v {v}");
            assert_eq!(link(&nf11, "refines").verdict, Verdict::Pass);
        }
    }
}

#[test]
fn vacuous_results_never_counted() {
    let bad = CMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(-0.5, 1.0)]);
    let good = sector(2, 0.4, 1);
    let inst = Instance::pair(bad, good);
    for &id in CheckId::ALL {
        if !matches!(id.family(), Family::Pair) {
            continue;
        }
        let res = run(id, &inst, &Params::default());
        assert!(res.iter().all(|r| r.verdict == Verdict::Vacuous && !r.hypotheses_met && r.reason.is_some()), "{}", id.name());
    }
    let res = run(CheckId::Nf1, &Instance::pair(sector(2, 0.8, 2), sector(2, 0.8, 3)), &Params { alpha: Some(0.1), ..Params::default() });
    assert_eq!(res[0].verdict, Verdict::Vacuous);
}

/// At alpha = 0 the sector factors are 1 and the inequalities become their
/// positive definite forms, computed here from eigenvalues alone.
#[test]
fn zero_angle_reductions() {
    for seed in 0..20u64 {
        let n = 2 + seed as usize % 4;
        let a = gen_hpd(n, 0.2, 5.0, seed).unwrap();
        let b = gen_hpd(n, 0.5, 8.0, seed + 50).unwrap();
        let inst = Instance::pair(a.clone(), b.clone());
        let id = CMatrix::identity(n);
        let s = inv(&(&a + &b));
        let (ia, ib) = (inv(&a), inv(&b));
        for k in 1..=n {
            let p = Params { k: Some(k), ..Params::default() };
            let f6 = run(CheckId::F6, &inst, &p)[0].slack;
            let lhs = top_eig_product(&s, k);
            let rhs = 0.25f64.powi(k as i32) * top_eig_product(&(&id + &ia), k) * top_eig_product(&(&id + &ib), k);
            assert!((f6 - slack(lhs, rhs)).abs() <= 1e-8, "F6 seed {seed} k {k}");

            let f7 = run(CheckId::F7, &inst, &p)[0].slack;
            let lhs = top_eig_product(&(&id + &s), k);
            let rhs = top_eig_product(&(&id + &ia.scale(0.25)), k) * top_eig_product(&(&id + &ib.scale(0.25)), k);
            assert!((f7 - slack(lhs, rhs)).abs() <= 1e-8, "F7 seed {seed} k {k}");
        }
        let f10 = run(CheckId::F10, &inst, &Params::default())[0].slack;
        let rhs = det_re(&(&id + &ia)) * det_re(&(&id + &ib)) / 4f64.powi(n as i32);
        assert!((f10 - slack(det_re(&s), rhs)).abs() <= 1e-8, "F10 seed {seed}");
        let f212 = run(CheckId::F212, &inst, &Params::default())[0].slack;
        let rhs = det_re(&(&id + &ia.scale(0.25))) * det_re(&(&id + &ib.scale(0.25)));
        assert!((f212 - slack(det_re(&(&id + &s)), rhs)).abs() <= 1e-8, "F212 seed {seed}");
    }
}

#[test]
fn zero_angle_sweep_of_pair_checks() {
    use CheckId::*;
    let ids = vec![
        Txl, Txr, Ref9, Ref7, Ref8, Nf1, Nf11, Svharm, F6, F7, F90, D2233, D2244, D2255, F10, F212, P22, Detsup,
    ];
    let cfg = SweepConfig { ids, alphas: vec![0.0], trials: 20, ..SweepConfig::default() };
    let report = sweep(&cfg).unwrap();
    assert_eq!(report.totals.errors, 0);
    let failing: Vec<String> = report
        .results
        .iter()
        .filter(|s| s.fails > 0)
        .map(|s| format!("{} ({} of {}, min slack {:?})", s.id.name(), s.fails, s.evaluations, s.min_slack))
        .collect();
    assert!(failing.is_empty(), "failing at alpha = 0: {}", failing.join(", "));
}

#[test]
fn concave_functions_match_eigen_oracle() {
    let mut r = rng(4);
    let h = random_hpd(4, 0.1, 6.0, &mut r);
    let na = to_na(&h).symmetric_eigen();
    for name in ["t", "sqrt", "t/(1+t)", "log1p"] {
        let f = concave_catalogue(name).unwrap();
        let mapped = na.eigenvalues.map(|x| nalgebra::Complex::new(f.eval(x), 0.0));
        let reference = &na.eigenvectors * nalgebra::DMatrix::from_diagonal(&mapped) * na.eigenvectors.adjoint();
        assert!(rel_fro(&f.apply(&h).unwrap(), &from_na(&reference)) <= 1e-12, "{name}");
    }
    let d = Concave::Sqrt.apply(&CMatrix::from_real_diag(&[4.0, 9.0])).unwrap();
    assert!(rel_fro(&d, &CMatrix::from_real_diag(&[2.0, 3.0])) <= 1e-15);
    assert_eq!(Concave::Identity.apply(&CMatrix::from_real_diag(&[2.0, 3.0])).unwrap(), CMatrix::from_real_diag(&[2.0, 3.0]));
    assert!(concave_catalogue("exp").is_err());
}

#[test]
fn catalogue_evaluates_on_generic_instance() {
    let n = 3;
    let mut inst = Instance::pair(sector(n, 0.6, 1), sector(n, 0.6, 2));
    let mut r = rng(5);
    inst.psd = Some((random_hpd(n, 0.1, 3.0, &mut r), random_hpd(n, 0.1, 3.0, &mut r)));
    inst.free = Some((random_matrix(n, &mut r), random_matrix(n, &mut r)));
    let ev = Evaluator::with_default_tol(&inst);
    for &id in CheckId::ALL {
        let res = ev.evaluate(id, &Params::default()).unwrap();
        assert!(!res.is_empty(), "{}", id.name());
        for r in &res {
            assert!(r.slack.is_finite() || r.verdict == Verdict::Vacuous);
            assert_eq!(r.id, id);
        }
    }
}
