//! One function per subcommand; each returns the JSON document and its CSV projection.

use std::collections::BTreeMap;
use std::str::FromStr;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use twist_core::asympt::{convergence_experiment, ratios};
use twist_core::critical::solve_critical;
use twist_core::fourier::{FourierConfig, FourierIntegrator};
use twist_core::geometry::{mod_pi2_residue, solve_gluing};
use twist_core::jones::jones_exact;
use twist_core::numerics::{I, TAU};
use twist_core::polylog::{phi_n, phi_n_reflection_rhs, q_pochhammer, q_pochhammer_via_phi, RootOfUnity};
use twist_core::potential::{
    det2, f_hessian_xy, h_factor, hess_v, polygon_within, region_contains, threshold_certificate, u_n_vertices_exact,
    ConvexPolygon,
};
use twist_core::{ComplexValue, FourierIndex, KnotSpec, NumericsConfig, PotentialPoint, PrecisionMode, RegionSpec};

use crate::output::{num, CliError, Meta, Record, Report, Table};
use crate::range::NRange;

/// Threshold on `v(t, s)` in the region certificate: `3.509/(2π)`.
const REGION_THRESHOLD: f64 = 3.509 / TAU;

pub struct Context {
    pub cfg: NumericsConfig,
}

impl Context {
    pub fn new(precision: &str) -> Result<Self, CliError> {
        let mode = PrecisionMode::from_str(precision)?;
        let cfg = NumericsConfig::default().with_precision(mode);
        cfg.validate()?;
        Ok(Context { cfg })
    }

    fn meta(&self) -> Meta {
        Meta::from_config(&self.cfg)
    }
}

fn cplx(z: ComplexValue) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// A single object for scalar queries, an array for ranges and windows.
fn report(records: Vec<Record>, as_array: bool, table: Table) -> Result<Report, CliError> {
    if as_array || records.len() != 1 {
        Report::new(&records, table)
    } else {
        Report::new(&records[0], table)
    }
}

pub fn jones(ctx: &Context, p: i64, n: &NRange) -> Result<Report, CliError> {
    let values = n
        .values()
        .par_iter()
        .map(|&big_n| jones_exact(&KnotSpec::new(p, big_n)?, &ctx.cfg).map(|j| (big_n, j)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["p", "N", "re", "im", "log_abs", "arg"]);
    let mut records = Vec::new();
    for (big_n, j) in values {
        table.push(vec![p.to_string(), big_n.to_string(), num(j.value.re), num(j.value.im), num(j.log_abs), num(j.arg)]);
        let data = BTreeMap::from([
            ("log_abs", json!(j.log_abs)),
            ("arg", json!(j.arg)),
            ("term_count", json!(j.term_count)),
            ("rel_error_bound", json!(j.rel_error_bound)),
        ]);
        records.push(Record { p, n: Some(big_n), value: j.value.into(), data, meta: ctx.meta() });
    }
    report(records, n.is_range, table)
}

pub fn critical(ctx: &Context, p: i64) -> Result<Report, CliError> {
    let c = solve_critical(p, &ctx.cfg)?;
    let data = BTreeMap::from([
        ("t0", cplx(c.t0)),
        ("s0", cplx(c.s0)),
        ("x0", cplx(c.x0)),
        ("y0", cplx(c.y0)),
        ("residual", json!(c.residual)),
        ("iterations", json!(c.iterations)),
    ]);
    let mut table = Table::new(&["p", "t0_re", "t0_im", "s0_re", "s0_im", "zeta_re", "zeta_im", "residual"]);
    table.push(vec![
        p.to_string(),
        num(c.t0.re),
        num(c.t0.im),
        num(c.s0.re),
        num(c.s0.im),
        num(c.zeta.re),
        num(c.zeta.im),
        num(c.residual),
    ]);
    let rec = Record { p, n: None, value: c.zeta.into(), data, meta: ctx.meta() };
    report(vec![rec], false, table)
}

pub fn constants(ctx: &Context, p: i64) -> Result<Report, CliError> {
    let c = solve_critical(p, &ctx.cfg)?;
    let z = c.two_pi_zeta();
    let data = BTreeMap::from([
        ("zeta", cplx(c.zeta)),
        ("omega", cplx(c.omega)),
        ("volume", json!(TAU * c.zeta_r)),
        ("det_hess", cplx(c.det_hess)),
    ]);
    let mut table = Table::new(&["p", "two_pi_zeta_re", "two_pi_zeta_im", "omega_re", "omega_im"]);
    table.push(vec![p.to_string(), num(z.re), num(z.im), num(c.omega.re), num(c.omega.im)]);
    let rec = Record { p, n: None, value: z.into(), data, meta: ctx.meta() };
    report(vec![rec], false, table)
}

pub fn volume(ctx: &Context, p: i64) -> Result<Report, CliError> {
    let c = solve_critical(p, &ctx.cfg)?;
    let g = solve_gluing(p, &c, &ctx.cfg)?;
    let z = c.two_pi_zeta();
    let residue = mod_pi2_residue(p, z, g.volcs);
    let data = BTreeMap::from([
        ("w0", cplx(g.w0)),
        ("two_pi_zeta", cplx(z)),
        ("volume_gap", json!((z.re - g.volcs.re).abs())),
        ("mod_pi2_residue", json!(residue)),
        ("gluing_residual", json!(g.residual)),
    ]);
    let mut table = Table::new(&["p", "vol", "cs", "two_pi_zeta_re", "mod_pi2_residue"]);
    table.push(vec![p.to_string(), num(g.volcs.re), num(g.volcs.im), num(z.re), num(residue)]);
    let rec = Record { p, n: None, value: g.volcs.into(), data, meta: ctx.meta() };
    report(vec![rec], false, table)
}

pub fn verify_asymptotics(ctx: &Context, p: i64, n: &NRange) -> Result<Report, CliError> {
    let ns = n.values();
    let rows = convergence_experiment(p, &ns, &ctx.cfg)?;
    let crit = solve_critical(p, &ctx.cfg)?;
    let rs = ratios(&crit, &ns, &ctx.cfg)?;
    let mut table = Table::new(&["N", "re_logJ_scaled", "target", "gap"]);
    let mut records = Vec::new();
    for (row, r) in rows.iter().zip(rs) {
        table.push(vec![row.n.to_string(), num(row.re_log_j_scaled), num(row.target), num(row.gap)]);
        let data = BTreeMap::from([
            ("re_logJ_scaled", json!(row.re_log_j_scaled)),
            ("im_logJ_scaled", json!(row.im_log_j_scaled)),
            ("target", json!(row.target)),
            ("gap", json!(row.gap)),
        ]);
        records.push(Record { p, n: Some(row.n), value: r.into(), data, meta: ctx.meta() });
    }
    report(records, true, table)
}

pub fn fourier(
    ctx: &Context,
    p: i64,
    big_n: u32,
    m: i64,
    n: i64,
    window: Option<i64>,
    eps: f64,
) -> Result<Report, CliError> {
    let spec = KnotSpec::new(p, big_n)?;
    let fcfg = FourierConfig { eps, ..FourierConfig::default() };
    let integ = FourierIntegrator::new(&spec, &fcfg)?;
    let indices: Vec<(i64, i64)> = match window {
        None => vec![(m, n)],
        Some(w) if w >= 0 => (-1..=1).flat_map(|m| (-w - 2..=w).map(move |n| (m, n))).collect(),
        Some(w) => return Err(CliError::Usage(format!("window = {w}: must be non-negative"))),
    };
    let meta = ctx.meta().with_tolerance("fourier_rel_tol", fcfg.rel_tol).with_tolerance("eps", eps);
    let mut table = Table::new(&["p", "N", "m", "n", "re", "im", "quad_error"]);
    let mut records = Vec::new();
    for (m, n) in indices {
        let c = integ.coefficient(FourierIndex::new(m, n))?;
        table.push(vec![
            p.to_string(),
            big_n.to_string(),
            m.to_string(),
            n.to_string(),
            num(c.value.re),
            num(c.value.im),
            num(c.quad_error),
        ]);
        let data = BTreeMap::from([("m", json!(m)), ("n", json!(n)), ("quad_error", json!(c.quad_error))]);
        records.push(Record { p, n: Some(big_n), value: c.value.into(), data, meta: meta.clone() });
    }
    report(records, window.is_some(), table)
}

/// Certificate suites for `lemmas`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Region certificates: threshold grid sweep, U_n vertices, U₀ ⊂ D''₀ ⊂ D_H.
    Region,
    /// Hessian identities and positive-definiteness on D_H.
    Hessian,
    /// Quantum-dilogarithm identities: Pochhammer bridge and reflection.
    Dilog,
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    suite: String,
    status: &'static str,
    checks: Vec<CheckRecord<'a>>,
    meta: Meta,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    name: &'a str,
    status: &'static str,
    detail: &'a str,
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn region_checks(grid: usize) -> Vec<Check> {
    let cert = threshold_certificate(REGION_THRESHOLD, grid);
    let mut checks = vec![Check {
        name: format!("v > 3.509/(2π) implies D'₀ ({grid}² grid)"),
        pass: cert.violations == 0,
        detail: format!("{} points above threshold, {} violations {:?}", cert.tested, cert.violations, cert.examples),
    }];
    let bad: Vec<String> = (6..=20i64)
        .flat_map(|p| (-p..=p - 2).map(move |n| (p, n)))
        .filter(|&(p, n)| !u_n_vertices_exact(p, n))
        .map(|(p, n)| format!("p={p} n={n}"))
        .collect();
    checks.push(Check {
        name: "U_n vertices lie on their defining lines (p = 6..20)".into(),
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "all exact".into() } else { bad.join(", ") },
    });
    for p in 6..=20 {
        let u0 = ConvexPolygon::of_region(RegionSpec::U { n: 0, p });
        let dd = ConvexPolygon::of_region(RegionSpec::DDoublePrime0 { p });
        let a = polygon_within(&u0, RegionSpec::DDoublePrime0 { p }, false, 1e-12);
        let b = polygon_within(&dd, RegionSpec::DH, false, 1e-12);
        checks.push(Check {
            name: format!("U₀ ⊂ D''₀ ⊂ D_H at p = {p}"),
            pass: a && b,
            detail: format!("U₀ ⊂ D''₀: {a}; D''₀ ⊂ D_H: {b}"),
        });
    }
    checks
}

fn hessian_checks(grid: usize) -> Result<Vec<Check>, CliError> {
    let side = grid.clamp(4, 400);
    let mut worst = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let t = c(0.55 + 0.04 * i as f64, 0.15 * (j as f64 / 9.0 - 0.5));
            let s = c(0.35 + 0.03 * j as f64, 0.1 * (i as f64 / 9.0 - 0.5));
            let pt = PotentialPoint::new(t, s);
            let d = det2(&hess_v(6, &pt)?);
            let via = (I * TAU) * (I * TAU) * h_factor(6, pt.x(), pt.y());
            worst = worst.max((d - via).norm() / d.norm());
        }
    }
    let mut failures = 0;
    let mut count = 0;
    for i in 1..side {
        let t = 0.5 + 0.5 * i as f64 / side as f64;
        for j in 1..side {
            let s = j as f64 / side as f64;
            if !region_contains(RegionSpec::DH, t, s) {
                continue;
            }
            let h = f_hessian_xy(t, 0.0, s, 0.0)?;
            count += 1;
            if !(h[0][0] > 0.0 && h[0][0] * h[1][1] - h[0][1] * h[1][0] > 0.0) {
                failures += 1;
            }
        }
    }
    Ok(vec![
        Check {
            name: "det Hess V = (2πi)² H at 100 points".into(),
            pass: worst <= 1e-10,
            detail: format!("max relative deviation {worst:e}"),
        },
        Check {
            name: format!("f-Hessian positive definite on D_H ({side}² grid)"),
            pass: failures == 0,
            detail: format!("{count} points, {failures} failures"),
        },
    ])
}

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

fn dilog_checks(cfg: &NumericsConfig) -> Result<Vec<Check>, CliError> {
    let mut worst = 0.0f64;
    for n in 1..=20u32 {
        let r = RootOfUnity::new(n)?;
        for m in 0..=2 * n {
            let a = q_pochhammer(&r, m)?;
            let b = q_pochhammer_via_phi(&r, m, cfg)?;
            worst = worst.max((a - b).norm() / a.norm());
        }
    }
    let mut refl = 0.0f64;
    for n in [5u32, 12, 30] {
        let r = RootOfUnity::new(n)?;
        for k in 1..=10 {
            let t = c(0.09 * k as f64, 0.02 * (k as f64 - 5.0));
            let lhs = phi_n(&r, t, cfg)? + phi_n(&r, c(1.0, 0.0) - t, cfg)?;
            refl = refl.max((lhs - phi_n_reflection_rhs(&r, t)).norm());
        }
    }
    Ok(vec![
        Check {
            name: "Pochhammer bridge through φ_N (N ≤ 20, n ≤ 2N)".into(),
            pass: worst <= 1e-8,
            detail: format!("max relative deviation {worst:e}"),
        },
        Check {
            name: "φ_N(t) + φ_N(1 − t) reflection identity".into(),
            pass: refl <= 1e-10,
            detail: format!("max deviation {refl:e}"),
        },
    ])
}

pub fn lemmas(ctx: &Context, suite: Suite, grid: usize) -> Result<(Report, bool), CliError> {
    if grid < 2 {
        return Err(CliError::Usage(format!("grid = {grid}: need at least 2 points per axis")));
    }
    let checks = match suite {
        Suite::Region => region_checks(grid),
        Suite::Hessian => hessian_checks(grid)?,
        Suite::Dilog => dilog_checks(&ctx.cfg)?,
    };
    let all_pass = checks.iter().all(|c| c.pass);
    let mut table = Table::new(&["check", "status", "detail"]);
    for ch in &checks {
        table.push(vec![ch.name.clone(), status(ch.pass).into(), ch.detail.clone()]);
    }
    let doc = SuiteReport {
        suite: format!("{suite:?}").to_lowercase(),
        status: status(all_pass),
        checks: checks.iter().map(|c| CheckRecord { name: &c.name, status: status(c.pass), detail: &c.detail }).collect(),
        meta: ctx.meta(),
    };
    Ok((Report::new(&doc, table)?, all_pass))
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

