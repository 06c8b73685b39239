//! Experiment reproductions. Each experiment yields one CSV (as a string, so
//! repeated runs can be compared byte for byte) and a list of assertion-style
//! checks.

use std::path::PathBuf;

use aflaz_core::bounds::{
    benchmark_ye2022, best_bound, chebyshev_q_opt, corollary_closed_forms, dopt_search,
    remark6_optimality_check, theorem1_bounds, weights_b, weights_c, BoundParams, BoundReport,
    ClosedForm, DPolicy, Regime, WeightFamily,
};
use aflaz_core::chu::{
    chu_aaf_closed_form, chu_sequence, theorem3_laz, theorem4_caf_bound, ChuAsymptote,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::fft::FftDoppler;
use crate::par::row_maxima_within;
use crate::report::{bound_record, BOUND_COLUMNS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Table1,
    Fig1a,
    Fig1b,
    Fig3,
    Custom,
}

impl Experiment {
    pub fn stem(self) -> &'static str {
        match self {
            Experiment::Table1 => "table1",
            Experiment::Fig1a => "fig1a",
            Experiment::Fig1b => "fig1b",
            Experiment::Fig3 => "fig3",
            Experiment::Custom => "custom",
        }
    }
}

/// `"zero"`, `"optimal"`/`"auto"`, or a fixed integer D.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DSetting {
    Fixed(usize),
    Named(String),
}

impl DSetting {
    pub fn policy(&self) -> Result<DPolicy> {
        match self {
            DSetting::Fixed(d) => Ok(DPolicy::Fixed(*d)),
            DSetting::Named(s) => match s.as_str() {
                "zero" => Ok(DPolicy::Zero),
                "optimal" | "auto" => Ok(DPolicy::Optimal),
                other => Err(CliError::Config(format!("unknown D policy {other:?}"))),
            },
        }
    }
}

/// One (N, M, Z_x, Z_y) point of a custom bound sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub n: usize,
    pub m: usize,
    pub zx: usize,
    pub zy: usize,
}

/// Overrides for an experiment; every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<Experiment>,
    pub n_eval: Option<usize>,
    pub n_list: Option<Vec<usize>>,
    pub m: Option<usize>,
    pub m_list: Option<Vec<usize>>,
    pub zx_grid: Option<Vec<usize>>,
    pub zy_grid: Option<Vec<usize>>,
    pub roots: Option<Vec<i64>>,
    pub beta: Option<f64>,
    pub d_policy: Option<DSetting>,
    pub points: Option<Vec<BoundPoint>>,
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub experiment: Experiment,
    pub csv: String,
    pub checks: Vec<Check>,
}

impl ExperimentOutput {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.experiment.stem())
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(header)?;
    for r in rows {
        wtr.write_record(r)?;
    }
    Ok(String::from_utf8(wtr.into_inner().map_err(|e| e.into_error())?).expect("ascii"))
}

fn cfg_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn run(experiment: Experiment, cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    if let Some(e) = cfg.experiment {
        if e != experiment {
            return Err(cfg_err(format!(
                "config is for {} but {} was requested",
                e.stem(),
                experiment.stem()
            )));
        }
    }
    match experiment {
        Experiment::Table1 => table1(cfg),
        Experiment::Fig1a => fig1a(cfg),
        Experiment::Fig1b => fig1b(cfg),
        Experiment::Fig3 => fig3(cfg),
        Experiment::Custom => custom(cfg),
    }
}

/// Published 4-decimal coefficients (bound/N) at Z_x = N/4, Z_y = 10:
/// (M, benchmark, uniform q̂, Chebyshev optimal q).
pub const TABLE1_REFERENCE: [(usize, f64, f64, f64); 4] = [
    (1, 0.4000, 0.6349, 0.6488),
    (2, 0.6000, 0.7418, 0.7516),
    (3, 0.6667, 0.7892, 0.7972),
    (4, 0.7000, 0.8174, 0.8244),
];

pub const TABLE1_N: usize = 10_000_000;
pub const TABLE1_ZY: usize = 10;

/// Large-N coefficients of the benchmark and the two closed forms.
pub fn table1_row(n: usize, m: usize) -> Result<(f64, BoundReport, BoundReport)> {
    let p = BoundParams::new(n, m, n / 4, TABLE1_ZY)?;
    let nf = n as f64;
    let bench = benchmark_ye2022(&p)?.value / nf;
    let u = corollary_closed_forms(ClosedForm::UniformOptimalQ, &p, None)?;
    let c = corollary_closed_forms(ClosedForm::ChebyshevOptimalQ, &p, None)?;
    Ok((bench, u, c))
}

fn table1(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let n = cfg.n_eval.unwrap_or(TABLE1_N);
    if !n.is_multiple_of(4) || n < 8 {
        return Err(cfg_err("table1 needs N divisible by 4 and at least 8"));
    }
    let ms = cfg.m_list.clone().unwrap_or_else(|| vec![1, 2, 3, 4, 8]);
    let nf = n as f64;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &m in &ms {
        let (bench, u, c) = table1_row(n, m)?;
        let (uc, cc) = (u.value / nf, c.value / nf);
        rows.push(vec![
            m.to_string(),
            format!("{bench:.4}"),
            format!("{uc:.4}"),
            format!("{cc:.4}"),
            bench.to_string(),
            uc.to_string(),
            cc.to_string(),
            u.applicable.to_string(),
            c.applicable.to_string(),
        ]);
        if let Some(&(_, b, u_ref, c_ref)) = TABLE1_REFERENCE.iter().find(|r| r.0 == m) {
            if n == TABLE1_N {
                let ok = [(bench, b), (uc, u_ref), (cc, c_ref)]
                    .iter()
                    .all(|&(x, r)| format!("{x:.4}") == format!("{r:.4}"));
                checks.push(Check::new(
                    format!("table1_M{m}"),
                    ok,
                    format!("{bench:.4}/{uc:.4}/{cc:.4} vs {b:.4}/{u_ref:.4}/{c_ref:.4}"),
                ));
            }
        } else {
            let mf = m as f64;
            let ue = 1.0 - 2.0 / (30.0 * mf).sqrt();
            let ce = 1.0 - std::f64::consts::PI / (80.0 * mf).sqrt();
            let ok = (uc - ue).abs() < 1e-5 && (cc - ce).abs() < 1e-5;
            checks.push(Check::new(
                format!("table1_M{m}_formula"),
                ok,
                format!("{uc:.6}/{cc:.6} vs {ue:.6}/{ce:.6}"),
            ));
        }
    }
    let header = [
        "M",
        "benchmark",
        "uniform_qhat",
        "chebyshev_qopt",
        "benchmark_exact",
        "uniform_qhat_exact",
        "chebyshev_qopt_exact",
        "uniform_qhat_applicable",
        "chebyshev_qopt_applicable",
    ];
    Ok(ExperimentOutput {
        experiment: Experiment::Table1,
        csv: csv_string(&header, &rows)?,
        checks,
    })
}

/// Sine-weighted bound with q = min(Z_x, ⌊π/γ⌋ + 1) at D = 0.
pub fn fig1a_proposed(n: usize, m: usize, zx: usize, zy: usize) -> Result<BoundReport> {
    let p = BoundParams::new(n, m, zx, zy)?;
    let q = chebyshev_q_opt(n, m, zy)?.min(zx);
    Ok(theorem1_bounds(&weights_b(q, zx, n, m, zy)?, &p)?)
}

pub struct Fig1aPoint {
    pub zx: usize,
    pub zy: usize,
    pub proposed: BoundReport,
    pub best: BoundReport,
    pub benchmark: f64,
    pub dopt_needed: bool,
}

pub fn fig1a_grid(
    n: usize,
    m: usize,
    zxs: &[usize],
    zys: &[usize],
    policy: DPolicy,
) -> Result<Vec<Fig1aPoint>> {
    let cells: Vec<(usize, usize)> = zxs
        .iter()
        .flat_map(|&x| zys.iter().map(move |&y| (x, y)))
        .collect();
    cells
        .par_iter()
        .map(|&(zx, zy)| {
            let proposed = fig1a_proposed(n, m, zx, zy)?;
            let p = BoundParams::new(n, m, zx, zy)?;
            let best = best_bound(
                &p,
                &[WeightFamily::A, WeightFamily::B, WeightFamily::C],
                policy,
            )?;
            let benchmark = benchmark_ye2022(&p)?.value;
            let h = proposed.value.sqrt().floor() as usize;
            let q = proposed.q.unwrap_or(zx);
            Ok(Fig1aPoint {
                zx,
                zy,
                dopt_needed: q + h >= n,
                proposed,
                best,
                benchmark,
            })
        })
        .collect()
}

fn fig1a(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let n = cfg
        .n_list
        .as_ref()
        .and_then(|v| v.first().copied())
        .unwrap_or(128);
    let m = cfg.m.unwrap_or(6);
    let zxs = cfg
        .zx_grid
        .clone()
        .unwrap_or_else(|| vec![8, 16, 32, 64, 128]);
    let zys = cfg.zy_grid.clone().unwrap_or_else(|| vec![2, 4, 8, 16]);
    let policy = cfg
        .d_policy
        .as_ref()
        .map(DSetting::policy)
        .transpose()?
        .unwrap_or(DPolicy::Optimal);
    let pts = fig1a_grid(n, m, &zxs, &zys, policy)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut strict = 0usize;
    for pt in &pts {
        rows.push(vec![
            pt.zx.to_string(),
            pt.zy.to_string(),
            pt.proposed.q.map(|q| q.to_string()).unwrap_or_default(),
            pt.proposed.value.to_string(),
            pt.best.value.to_string(),
            pt.best
                .weight
                .as_ref()
                .map(|w| w.family().as_str())
                .unwrap_or("")
                .to_string(),
            pt.best.q.map(|q| q.to_string()).unwrap_or_default(),
            pt.best.params.d.to_string(),
            pt.benchmark.to_string(),
            pt.dopt_needed.to_string(),
        ]);
        let ok =
            pt.proposed.value >= pt.benchmark - 1e-9 && pt.best.value >= pt.proposed.value - 1e-9;
        if pt.proposed.value > pt.benchmark {
            strict += 1;
        }
        checks.push(Check::new(
            format!("fig1a_dominates_Zx{}_Zy{}", pt.zx, pt.zy),
            ok,
            format!(
                "proposed {} best {} benchmark {}",
                pt.proposed.value, pt.best.value, pt.benchmark
            ),
        ));
    }
    checks.push(Check::new(
        "fig1a_strict_fraction",
        strict * 10 >= pts.len() * 9,
        format!("{strict}/{} strictly above the benchmark", pts.len()),
    ));
    let at = |zx: usize, zy: usize| {
        pts.iter()
            .find(|p| p.zx == zx && p.zy == zy)
            .map(|p| p.proposed.value)
    };
    let mut mono_x = true;
    let mut mono_y = true;
    for w in zxs.windows(2) {
        for &zy in &zys {
            mono_x &= at(w[1], zy) >= at(w[0], zy);
        }
    }
    for w in zys.windows(2) {
        for &zx in &zxs {
            mono_y &= at(zx, w[1]) >= at(zx, w[0]);
        }
    }
    checks.push(Check::new(
        "fig1a_monotone_in_Zx",
        mono_x,
        "proposed bound non-decreasing in Zx",
    ));
    checks.push(Check::new(
        "fig1a_monotone_in_Zy",
        mono_y,
        "proposed bound non-decreasing in Zy",
    ));
    let header = [
        "Zx",
        "Zy",
        "q",
        "proposed",
        "best",
        "best_family",
        "best_q",
        "best_D",
        "benchmark",
        "dopt_needed",
    ];
    Ok(ExperimentOutput {
        experiment: Experiment::Fig1a,
        csv: csv_string(&header, &rows)?,
        checks,
    })
}

pub struct Fig1bPoint {
    pub n: usize,
    pub benchmark: f64,
    pub d0: f64,
    pub dopt: f64,
    pub d_opt: usize,
    pub d_heuristic: usize,
    pub uniform_optimal: bool,
}

pub fn fig1b_point(n: usize, m: usize, zy: usize) -> Result<Fig1bPoint> {
    let p = BoundParams::new(n, m, n, zy)?;
    let out = dopt_search(&weights_c(n)?, &p, Regime::T2)?;
    Ok(Fig1bPoint {
        n,
        benchmark: benchmark_ye2022(&p)?.value,
        d0: out.reference.value,
        dopt: out.best.value,
        d_opt: out.best.params.d,
        d_heuristic: out.heuristic_d,
        uniform_optimal: remark6_optimality_check(n, m, zy),
    })
}

fn fig1b(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let ns = cfg
        .n_list
        .clone()
        .unwrap_or_else(|| vec![8, 16, 32, 64, 128]);
    let m = cfg.m.unwrap_or(1);
    let zy = cfg
        .zy_grid
        .as_ref()
        .and_then(|v| v.first().copied())
        .unwrap_or(2);
    let pts: Vec<Fig1bPoint> = ns
        .par_iter()
        .map(|&n| fig1b_point(n, m, zy))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for pt in &pts {
        rows.push(vec![
            pt.n.to_string(),
            pt.benchmark.to_string(),
            pt.d0.to_string(),
            pt.dopt.to_string(),
            pt.d_opt.to_string(),
            pt.d_heuristic.to_string(),
            pt.uniform_optimal.to_string(),
        ]);
        checks.push(Check::new(
            format!("fig1b_ordering_N{}", pt.n),
            pt.benchmark <= pt.d0 + 1e-9 && pt.d0 <= pt.dopt,
            format!("{} <= {} <= {}", pt.benchmark, pt.d0, pt.dopt),
        ));
        if pt.n >= 8 {
            checks.push(Check::new(
                format!("fig1b_dopt_gain_N{}", pt.n),
                pt.dopt > pt.d0,
                format!("D_opt = {}: {} vs {}", pt.d_opt, pt.dopt, pt.d0),
            ));
        }
    }
    let header = [
        "N",
        "benchmark",
        "d0",
        "dopt",
        "D_opt",
        "D_heuristic",
        "uniform_weights_optimal",
    ];
    Ok(ExperimentOutput {
        experiment: Experiment::Fig1b,
        csv: csv_string(&header, &rows)?,
        checks,
    })
}

/// Above this length the AAF/CAF delay loops are subsampled.
pub const FIG3_FULL_SCAN_LIMIT: usize = 100_000;

pub struct Fig3Point {
    pub n: usize,
    pub z_x: usize,
    pub z_y: usize,
    pub aaf: [f64; 2],
    pub caf: f64,
    pub asymptote: [f64; 2],
    pub theta_c_line: f64,
    pub cap: f64,
    pub tau_stride: usize,
    /// Delays where the in-LAZ CAF row maximum exceeded the delay-dependent cap.
    pub cap_violations: usize,
}

pub fn fig3_point(n: usize, a1: i64, a2: i64, beta: f64) -> Result<Fig3Point> {
    if a1 <= a2 {
        return Err(cfg_err("fig3 needs a1 > a2"));
    }
    let laz = theorem3_laz(n, a1, beta)?;
    let z_y = a2.unsigned_abs() as usize;
    let (zx, hy) = (laz.z_x as i64, z_y as i64 - 1);
    let stride = if n > FIG3_FULL_SCAN_LIMIT {
        n.div_ceil(FIG3_FULL_SCAN_LIMIT)
    } else {
        1
    };
    let taus: Vec<i64> = (-(zx - 1)..=zx - 1).step_by(stride).collect();
    let aaf_max = |a: i64| {
        taus.par_iter()
            .map(|&tau| {
                (-hy..=hy)
                    .filter(|&nu| tau != 0 || nu != 0)
                    .map(|nu| chu_aaf_closed_form(n, a, tau, nu))
                    .fold(0.0f64, f64::max)
            })
            .reduce(|| 0.0, f64::max)
            .sqrt()
    };
    let aaf = [aaf_max(a1), aaf_max(a2)];
    let s1 = chu_sequence(n, a1)?;
    let s2 = chu_sequence(n, a2)?;
    let engine = FftDoppler::new(n);
    let mut caf = 0.0f64;
    let mut cap_violations = 0;
    for (x, y) in [(&s1, &s2), (&s2, &s1)] {
        for (tau, v) in row_maxima_within(x, y, &taus, z_y - 1, &engine) {
            let m = v.sqrt();
            caf = caf.max(m);
            if m > theorem4_caf_bound(n, a1, a2, tau)? {
                cap_violations += 1;
            }
        }
    }
    let c = ChuAsymptote::QUOTED;
    let asymptote = [
        c * (n as f64 / a1 as f64).sqrt(),
        c * (n as f64 / a2 as f64).sqrt(),
    ];
    let p = BoundParams::new(n, 2, laz.z_x, z_y)?;
    let t = corollary_closed_forms(ClosedForm::UniformOptimalQ, &p, None)?
        .tradeoff
        .expect("closed form carries a trade-off");
    let theta_a_sq = asymptote[0] * asymptote[0];
    let theta_c_line = ((t.rhs - t.coef_a * theta_a_sq) / t.coef_c).max(0.0).sqrt();
    Ok(Fig3Point {
        n,
        z_x: laz.z_x,
        z_y,
        aaf,
        caf,
        asymptote,
        theta_c_line,
        cap: theorem4_caf_bound(n, a1, a2, 0)?,
        tau_stride: stride,
        cap_violations,
    })
}

fn fig3(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let ns = cfg
        .n_list
        .clone()
        .unwrap_or_else(|| vec![1000, 2000, 4000, 8000, 16000, 32000]);
    let roots = cfg.roots.clone().unwrap_or_else(|| vec![20, 19]);
    let [a1, a2] = roots[..] else {
        return Err(cfg_err("fig3 needs exactly two roots"));
    };
    let beta = cfg.beta.unwrap_or(ChuAsymptote::DEFAULT_BETA);
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &n in &ns {
        if (n as u64) < 5 * a1.unsigned_abs().max(a2.unsigned_abs()) {
            return Err(cfg_err(format!("N = {n} is below 5 max|a|")));
        }
        let pt = fig3_point(n, a1, a2, beta)?;
        rows.push(vec![
            n.to_string(),
            pt.z_x.to_string(),
            pt.z_y.to_string(),
            pt.aaf[0].to_string(),
            pt.aaf[1].to_string(),
            pt.caf.to_string(),
            pt.asymptote[0].to_string(),
            pt.asymptote[1].to_string(),
            pt.theta_c_line.to_string(),
            pt.cap.to_string(),
            pt.tau_stride.to_string(),
        ]);
        checks.push(Check::new(
            format!("fig3_caf_cap_N{n}"),
            pt.cap_violations == 0,
            format!("max CAF {} vs cap {} at tau = 0", pt.caf, pt.cap),
        ));
    }
    let header = [
        "N",
        "Zx",
        "Zy",
        "aaf1",
        "aaf2",
        "caf",
        "asymptote1",
        "asymptote2",
        "theta_c_line",
        "caf_cap",
        "tau_stride",
    ];
    Ok(ExperimentOutput {
        experiment: Experiment::Fig3,
        csv: csv_string(&header, &rows)?,
        checks,
    })
}

fn custom(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let points = cfg
        .points
        .clone()
        .ok_or_else(|| cfg_err("custom needs `points`"))?;
    let policy = cfg
        .d_policy
        .as_ref()
        .map(DSetting::policy)
        .transpose()?
        .unwrap_or(DPolicy::Optimal);
    let mut rows = Vec::new();
    for pt in points {
        let p = BoundParams::new(pt.n, pt.m, pt.zx, pt.zy)?;
        if let Ok(b) = best_bound(
            &p,
            &[WeightFamily::A, WeightFamily::B, WeightFamily::C],
            policy,
        ) {
            rows.push(bound_record(&b).to_vec());
        }
        if pt.zx >= 2 {
            rows.push(bound_record(&benchmark_ye2022(&p)?).to_vec());
        }
    }
    Ok(ExperimentOutput {
        experiment: Experiment::Custom,
        csv: csv_string(&BOUND_COLUMNS, &rows)?,
        checks: Vec::new(),
    })
}
