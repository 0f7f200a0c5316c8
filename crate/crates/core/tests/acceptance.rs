//! One line per acceptance criterion. Exits non-zero if any criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use sectorix::checks::{
    evaluate, sweep, sweep_with_threads, CheckId, Evaluator, Instance, Params, SweepConfig, Verdict, DEFAULT_TOL,
};
use sectorix::means::{geometric_mean_accretive, geometric_mean_hpd, kantorovich, QuadControls};
use sectorix::posmap::{gen_map, MapKind, MapSpec};
use sectorix::sector::{gen_hpd, gen_sector, sector_angle_grid, sector_from_factors, SectorGenSpec};
use sectorix::CMatrix;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn counterexample_json(id: &str) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sectorix"))
        .args(["counterexample", "--id", id, "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("counterexample --id {id} exited with {:?}", out.status.code()))?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn near(v: &Value, key: &str, target: f64, tol: f64) -> Result<f64, String> {
    let x = v[key].as_f64().ok_or_else(|| format!("missing {key}"))?;
    ensure((x - target).abs() <= tol, || format!("{key} = {x}, expected {target} +- {tol:e}"))?;
    Ok(x)
}

fn counterexamples() -> Outcome {
    let start = Instant::now();
    let sv = counterexample_json("sv")?;
    let det = counterexample_json("det")?;
    let elapsed = start.elapsed();
    let a = near(&sv, "s1_inv_sum", 3.07774, 1e-4)?;
    let b = near(&sv, "s1_shifted_inv_sum", 2.07774, 1e-4)?;
    let c = near(&sv, "product", 1.82851, 1e-4)?;
    let d = near(&det, "det_inv_sum", 4.0, 1e-9)?;
    let e = near(&det, "det_shifted_inv_sum", 2.0, 1e-9)?;
    let f = near(&det, "product", 1.84091, 1e-4)?;
    ensure(sv["violated"] == true && det["violated"] == true, || "naive inequality not flagged".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("runtime {}", secs(elapsed)))?;
    Ok(format!("sv {a:.5} {b:.5} {c:.5}, det {d} {e} {f:.5}, both violated, {}", secs(elapsed)))
}

fn quadrature_oracle() -> Outcome {
    let start = Instant::now();
    let q = QuadControls::default();
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let n = 1 + seed as usize % 6;
        let (m, big) = if n == 1 { (2.0, 2.0) } else { (0.01, 10.0) };
        let a = gen_hpd(n, m, big, seed).map_err(|e| e.to_string())?;
        let b = gen_hpd(n, 1.0, if n == 1 { 1.0 } else { 1000.0 }, seed + 1000).map_err(|e| e.to_string())?;
        for v in [0.25, 0.5, 0.75] {
            let quad = geometric_mean_accretive(&a, &b, v, &q).map_err(|e| format!("seed {seed}: {e}"))?;
            let closed = geometric_mean_hpd(&a, &b, v).map_err(|e| e.to_string())?;
            worst = worst.max(rel_fro(&quad, &closed));
        }
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-8, || format!("worst relative error {worst:e}"))?;
    ensure(elapsed < Duration::from_secs(30), || format!("runtime {}", secs(elapsed)))?;
    Ok(format!("100 pairs x 3 weights, worst relative error {worst:.2e}, {}", secs(elapsed)))
}

fn soundness_sweep() -> Outcome {
    let start = Instant::now();
    let report = sweep(&SweepConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let t = &report.totals;
    let summary = format!(
        "{} evaluations, {} fails, {} vacuous, {} errors, {}",
        t.evaluations,
        t.fails,
        t.vacuous,
        t.errors,
        secs(elapsed)
    );
    let failing: Vec<String> = report
        .results
        .iter()
        .filter(|s| s.fails > 0 || s.errors > 0)
        .map(|s| {
            let links: Vec<String> =
                s.links.iter().filter(|l| l.fails > 0).map(|l| format!("{}:{}", l.link, l.fails)).collect();
            format!("{} [{}] min slack {:.3e}", s.id.name(), links.join(" "), s.min_slack.unwrap_or(f64::NAN))
        })
        .collect();
    ensure(failing.is_empty(), || format!("{summary}; failing: {}", failing.join("; ")))?;
    ensure(elapsed < Duration::from_secs(300), || format!("{summary}; runtime over 5 min"))?;
    Ok(summary)
}

fn angle_certification() -> Outcome {
    let alphas = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3];
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_grid = 0.0f64;
    for i in 0..200u64 {
        let a0 = alphas[i as usize % 3];
        let n = 2 + i as usize % 5;
        let cert = gen_sector(&SectorGenSpec::new(n, a0, i)).map_err(|e| e.to_string())?;
        worst_excess = worst_excess.max(cert.alpha - a0);
        let grid = sector_angle_grid(&cert.matrix, 10_000).map_err(|e| e.to_string())?;
        worst_grid = worst_grid.max((grid - cert.alpha).abs());
    }
    let mut worst_normal = 0.0f64;
    let mut r = rng(77);
    for i in 0..60usize {
        let a0 = alphas[i % 3];
        let n = 1 + i % 6;
        let mut thetas: Vec<f64> = (0..n).map(|_| r.random_range(-a0..=a0)).collect();
        thetas[0] = if i % 2 == 0 { a0 } else { -a0 };
        let cert = sector_from_factors(&unitary(n, &mut r), &thetas).map_err(|e| e.to_string())?;
        worst_normal = worst_normal.max((cert.alpha - a0).abs());
    }
    ensure(worst_excess <= 1e-8, || format!("certified angle exceeds bound by {worst_excess:e}"))?;
    ensure(worst_normal <= 1e-8, || format!("normal instance off by {worst_normal:e}"))?;
    ensure(worst_grid <= 1e-6, || format!("grid disagreement {worst_grid:e}"))?;
    Ok(format!(
        "200 generated: max excess {worst_excess:.1e}, grid gap {worst_grid:.1e}; 60 normal: max error {worst_normal:.1e}"
    ))
}

fn pd_slack(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / rhs.abs().max(1.0)
}

fn degenerate_reductions() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let n = 2 + seed as usize % 5;
        let a = gen_hpd(n, 0.1, 8.0, seed).map_err(|e| e.to_string())?;
        let b = gen_hpd(n, 0.3, 4.0, seed + 500).map_err(|e| e.to_string())?;
        let inst = Instance::pair(a.clone(), b.clone());
        let id = CMatrix::identity(n);
        let s = inv(&(&a + &b));
        let (ia, ib) = (inv(&a), inv(&b));
        let top = |h: &CMatrix, k: usize| -> f64 { eigvals(h)[..k].iter().product() };
        let ev = Evaluator::with_default_tol(&inst);
        let got = |id: CheckId, k: Option<usize>| -> Result<f64, String> {
            let res = ev.evaluate(id, &Params { k, ..Params::default() }).map_err(|e| e.to_string())?;
            Ok(res[0].slack)
        };
        for k in 1..=n {
            let rhs = 0.25f64.powi(k as i32) * top(&(&id + &ia), k) * top(&(&id + &ib), k);
            worst = worst.max((got(CheckId::F6, Some(k))? - pd_slack(top(&s, k), rhs)).abs());
            let rhs = top(&(&id + &ia.scale(0.25)), k) * top(&(&id + &ib.scale(0.25)), k);
            worst = worst.max((got(CheckId::F7, Some(k))? - pd_slack(top(&(&id + &s), k), rhs)).abs());
        }
        let rhs = det(&(&id + &ia)).re * det(&(&id + &ib)).re / 4f64.powi(n as i32);
        worst = worst.max((got(CheckId::F10, None)? - pd_slack(det(&s).re, rhs)).abs());
        let rhs = det(&(&id + &ia.scale(0.25))).re * det(&(&id + &ib.scale(0.25))).re;
        worst = worst.max((got(CheckId::F212, None)? - pd_slack(det(&(&id + &s)).re, rhs)).abs());
    }
    ensure(worst <= 1e-8, || format!("PD reduction mismatch {worst:e}"))?;
    ensure(kantorovich(1.0).ok() == Some(1.0), || "K(1) != 1".into())?;

    let mut nat = 0;
    for seed in 0..200u64 {
        let alpha = [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3][seed as usize % 4];
        let n = 2 + seed as usize % 5;
        let a = gen_sector(&SectorGenSpec::new(n, alpha, seed)).map_err(|e| e.to_string())?.matrix;
        let b = gen_sector(&SectorGenSpec::new(n, alpha, seed + 9000)).map_err(|e| e.to_string())?.matrix;
        let res = evaluate(CheckId::Nat, &Instance::pair(a, b), &Params::default(), DEFAULT_TOL).map_err(|e| e.to_string())?;
        ensure(res[0].verdict == Verdict::Pass, || format!("NAT fails at seed {seed}"))?;
        nat += 1;
    }
    Ok(format!("F6/F7/F10/F212 max deviation {worst:.1e}; K(1) = 1; NAT holds on {nat} instances"))
}

fn multilinear() -> Outcome {
    let alphas = [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3];
    let ids = [CheckId::Tmm, CheckId::Mf4, CheckId::Mf12, CheckId::Re1];
    let mut evaluations = 0usize;
    let mut fails: Vec<String> = Vec::new();
    let mut min_slack = f64::INFINITY;
    for k in 1..=3usize {
        for n in 2..=3usize {
            let mut r = rng((k * 10 + n) as u64);
            for trial in 0..100u64 {
                let alpha = alphas[trial as usize % 4];
                let seed = (k as u64) << 40 | (n as u64) << 32 | trial << 4;
                let tuple: Vec<CMatrix> = (0..k as u64)
                    .map(|i| gen_sector(&SectorGenSpec::new(n, alpha, seed + i)).map(|c| c.matrix))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                let l = r.random_range(1..=n.pow(k as u32).min(6));
                let map = gen_map(MapKind::TensorCompression, n, l, k, seed).map_err(|e| e.to_string())?;
                let mut inst = Instance::pair(tuple[0].clone(), tuple[0].clone());
                inst.tuple = tuple;
                inst.multimap = Some(map);
                let ev = Evaluator::with_default_tol(&inst);
                for id in ids {
                    for res in ev.evaluate(id, &Params::default()).map_err(|e| e.to_string())? {
                        evaluations += 1;
                        min_slack = min_slack.min(res.slack);
                        if res.verdict == Verdict::Fail {
                            fails.push(format!("{}:{} k={k} n={n} trial={trial} slack={:.3e}", id.name(), res.link, res.slack));
                        }
                    }
                }
            }
        }
    }

    // k = 1 with the identity map against an independent computation.
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let n = 2 + seed as usize % 4;
        let a = gen_sector(&SectorGenSpec::new(n, 0.9, seed)).map_err(|e| e.to_string())?.matrix;
        let mut inst = Instance::pair(a.clone(), a.clone());
        inst.tuple = vec![a.clone()];
        inst.multimap = Some(MapSpec::identity(n));
        let got = evaluate(CheckId::Tmm, &inst, &Params::default(), DEFAULT_TOL).map_err(|e| e.to_string())?[0].slack;
        let re = a.re_part();
        let kh = kantorovich(lambda_max(&re) / lambda_min(&re)).map_err(|e| e.to_string())?;
        let x = inv(&a).re_part();
        let rhs = hpd_pow(&re, -2.0).scale(kh * kh);
        let expected = lambda_min(&(&rhs - &(&x * &x))) / lambda_max(&rhs).max(1.0);
        worst = worst.max((got - expected).abs());
    }
    let detail = format!("{evaluations} evaluations, {} fails, min slack {min_slack:.3e}; k=1 TMM deviation {worst:.1e}", fails.len());
    ensure(worst <= 1e-8, || detail.clone())?;
    if !fails.is_empty() {
        let shown: Vec<&String> = fails.iter().take(3).collect();
        return Err(format!("{detail}; e.g. {shown:?}"));
    }
    Ok(detail)
}

fn sweep_cli(threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sectorix"))
        .env("SECTORIX_THREADS", threads)
        .args(["sweep", "--trials", "8", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code().is_some_and(|c| c <= 1), || format!("sweep exited with {:?}", out.status.code()))?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let cfg = SweepConfig { trials: 8, ..SweepConfig::default() };
    let text = |threads: usize| -> Result<String, String> {
        let report = sweep_with_threads(&cfg, threads).map_err(|e| e.to_string())?;
        serde_json::to_string(&report).map_err(|e| e.to_string())
    };
    let first = text(1)?;
    ensure(text(1)? == first, || "two runs differ".into())?;
    ensure(text(4)? == first, || "1 and 4 threads differ".into())?;
    let cli = sweep_cli("1")?;
    ensure(sweep_cli("1")? == cli, || "CLI runs differ".into())?;
    ensure(sweep_cli("4")? == cli, || "CLI 1 and 4 threads differ".into())?;
    Ok(format!("library and CLI reports byte-identical ({} and {} bytes)", first.len(), cli.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("counterexample reproduction", counterexamples),
        ("quadrature oracle", quadrature_oracle),
        ("soundness sweep", soundness_sweep),
        ("sector-angle certification", angle_certification),
        ("degenerate reductions", degenerate_reductions),
        ("multilinear scale check", multilinear),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
