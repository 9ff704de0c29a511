//! Sweeps, figure presets and the cross-path validation report behind the
//! `fockchannel` binary.
//!
//! Everything here is deterministic for a fixed input: work is spread over
//! a thread pool but results are collected by index.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{bath_to_channel, BathSpec, ChannelParams};
use crate::charfun::{chi_cat01, chi_number_evolved, propagate, CatPhase};
use crate::error::{Error, Result};
use crate::oracle::{self, FockDensity, IntegratorCtrl};
use crate::par::Execution;
use crate::purity::{
    cat01_discrepancies, default_2d_ctrl, optimal_cat_phase, purity_2d, purity_asymptotic,
    purity_cat01, purity_squeezed, purity_thermal, Cat01Discrepancy, InitialState, Path, PathCurve,
    PuritySeries,
};
use crate::quadrature::Estimate;
use crate::specialfn::PolyOrder;

/// Slack above 1 tolerated before an emitted purity counts as corrupt.
pub const PURITY_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Validation(format!(
                "unknown format {s:?} (csv|json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Oracle settings shared by sweeps and presets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOpts {
    /// Fock truncation; `None` picks [`oracle::recommended_dim`].
    pub dim: Option<usize>,
    pub dt: f64,
    pub tail_tol: f64,
}

impl Default for OracleOpts {
    fn default() -> Self {
        let c = IntegratorCtrl::default();
        OracleOpts {
            dim: None,
            dt: c.dt,
            tail_tol: c.tail_tol,
        }
    }
}

/// One purity sweep: initial state, channel (with `γ = 1`), time grid and
/// paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub initial_state: InitialState,
    pub channel: ChannelParams,
    pub t_max: f64,
    pub points: usize,
    pub paths: Vec<Path>,
    #[serde(default)]
    pub oracle: OracleOpts,
}

impl SweepSpec {
    /// Grid `γt = k·t_max/(points-1)`, `k = 0..points`.
    pub fn times(&self) -> Vec<f64> {
        linspace(self.t_max, self.points)
    }

    /// Rejects malformed grids and path/state combinations that have no
    /// implementation, before anything is computed.
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::Validation(format!(
                "t_max = {} must be positive",
                self.t_max
            )));
        }
        if self.points < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 time points, got {}",
                self.points
            )));
        }
        if self.paths.is_empty() {
            return Err(Error::Validation("at least one path is required".into()));
        }
        for (i, p) in self.paths.iter().enumerate() {
            if self.paths[..i].contains(p) {
                return Err(Error::Validation(format!("path {p} requested twice")));
            }
            check_path(&self.initial_state, &self.channel, *p)?;
        }
        if !(self.oracle.dt > 0.0) {
            return Err(Error::Validation(format!(
                "dt = {} must be positive",
                self.oracle.dt
            )));
        }
        if let Some(d) = self.oracle.dim {
            let need = match self.initial_state {
                InitialState::Number { n } => n.get() as usize + 2,
                InitialState::Cat01 { .. } => 2,
            };
            if d < need {
                return Err(Error::Validation(format!(
                    "dim {d} too small for {}",
                    self.initial_state
                )));
            }
        }
        Ok(())
    }
}

fn check_path(state: &InitialState, channel: &ChannelParams, path: Path) -> Result<()> {
    match (state, path) {
        (InitialState::Number { .. }, Path::ClosedForm) if channel.abs_m() != 0.0 => {
            Err(Error::Validation(
                "closed_form for number states needs a thermal channel (M = 0); use quadrature_1d"
                    .into(),
            ))
        }
        (InitialState::Cat01 { .. }, Path::Quadrature1d) => Err(Error::Validation(
            "quadrature_1d covers number states only; use closed_form or quadrature_2d for cat01"
                .into(),
        )),
        _ => Ok(()),
    }
}

pub fn linspace(t_max: f64, points: usize) -> Vec<f64> {
    let last = points.saturating_sub(1).max(1) as f64;
    (0..points).map(|k| t_max * k as f64 / last).collect()
}

fn n_max(state: &InitialState) -> usize {
    match state {
        InitialState::Number { n } => n.get() as usize,
        InitialState::Cat01 { .. } => 1,
    }
}

fn initial_density(state: &InitialState, dim: usize) -> Result<FockDensity> {
    match state {
        InitialState::Number { n } => oracle::fock_state(n.get() as usize, dim),
        InitialState::Cat01 { theta } => oracle::cat01_state(*theta, dim),
    }
}

/// Truncation used by the oracle for a sweep up to `t_max`.
pub fn oracle_dim(
    state: &InitialState,
    channel: &ChannelParams,
    t_max: f64,
    opts: &OracleOpts,
) -> usize {
    opts.dim.unwrap_or_else(|| {
        oracle::recommended_dim(
            n_max(state),
            channel.n(),
            channel.abs_m(),
            t_max,
            opts.tail_tol,
        )
    })
}

/// Purity of `state` along `times` by one path. The error column is the
/// quadrature estimate, zero for closed forms and the top-level population
/// for the oracle.
pub fn path_curve(
    state: &InitialState,
    channel: &ChannelParams,
    times: &[f64],
    path: Path,
    opts: &OracleOpts,
    exec: Execution,
) -> Result<PathCurve> {
    check_path(state, channel, path)?;
    let unit = ChannelParams::new(1.0, channel.n(), channel.m())?;
    let points: Vec<Estimate> = match path {
        Path::Oracle => {
            let t_max = times.iter().cloned().fold(0.0, f64::max);
            let dim = oracle_dim(state, channel, t_max, opts);
            let rho0 = initial_density(state, dim)?;
            let ctrl = IntegratorCtrl {
                dt: opts.dt,
                t_final: t_max,
                tail_tol: opts.tail_tol,
                ..Default::default()
            };
            log::info!("oracle: {state} at dim {dim}, dt {}", opts.dt);
            let ev = oracle::evolve_sampled(&rho0, channel.n(), channel.m(), &ctrl, times)?;
            ev.snapshots
                .iter()
                .map(|(_, rho)| Estimate {
                    value: rho.purity(),
                    abs_err: rho.tail_population(),
                    converged: true,
                })
                .collect()
        }
        _ => exec.try_map(times, |&t| point(state, &unit, t, path))?,
    };
    Ok(PathCurve {
        path,
        purity: points.iter().map(|e| e.value).collect(),
        err_estimate: points.iter().map(|e| e.abs_err).collect(),
    })
}

fn point(state: &InitialState, unit: &ChannelParams, t: f64, path: Path) -> Result<Estimate> {
    match (state, path) {
        (InitialState::Number { n }, Path::ClosedForm) => {
            purity_thermal(*n, unit.n(), t).map(Estimate::exact)
        }
        (InitialState::Number { n }, Path::Quadrature1d) => {
            purity_squeezed(*n, unit.n(), unit.abs_m(), t)
        }
        (InitialState::Number { n }, Path::Quadrature2d) => {
            purity_2d(&chi_number_evolved(*n, unit, t)?, &default_2d_ctrl())
        }
        (InitialState::Cat01 { theta }, Path::ClosedForm) => {
            purity_cat01(&unit.bath(), *theta, t).map(Estimate::exact)
        }
        (InitialState::Cat01 { theta }, Path::Quadrature2d) => {
            purity_2d(&propagate(&chi_cat01(*theta), unit, t)?, &default_2d_ctrl())
        }
        (_, p) => Err(Error::Validation(format!(
            "path {p} not available for {state}"
        ))),
    }
}

/// Runs every requested path and checks the result range.
pub fn run_sweep(spec: &SweepSpec, exec: Execution) -> Result<PuritySeries> {
    spec.validate()?;
    let times = spec.times();
    let curves = spec
        .paths
        .iter()
        .map(|p| {
            path_curve(
                &spec.initial_state,
                &spec.channel,
                &times,
                *p,
                &spec.oracle,
                exec,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let series = PuritySeries {
        times,
        curves,
        channel: spec.channel,
        initial_state: spec.initial_state,
    };
    series.check(PURITY_SLACK)?;
    Ok(series)
}

#[derive(Serialize)]
struct SweepRow {
    gamma_t: f64,
    path: Path,
    purity: f64,
    err_estimate: f64,
}

/// CSV with header `gamma_t,path,purity,err_estimate`, time-major.
pub fn write_series_csv<W: Write>(series: &PuritySeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (i, t) in series.times.iter().enumerate() {
        for c in &series.curves {
            w.serialize(SweepRow {
                gamma_t: *t,
                path: c.path,
                purity: c.purity[i],
                err_estimate: c.err_estimate[i],
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Both parametrizations of one channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conversion {
    pub channel: ChannelParams,
    pub bath: BathSpec,
    pub mu_inf: f64,
}

pub fn convert(channel: &ChannelParams) -> Conversion {
    Conversion {
        channel: *channel,
        bath: channel.bath(),
        mu_inf: channel.mu_inf(),
    }
}

// --- presets -------------------------------------------------------------

pub const FIG_MU_INF: f64 = 0.5;

/// Grid settings shared by the figure presets.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetOpts {
    pub t_max: f64,
    pub points: usize,
    pub paths: Vec<Path>,
    pub oracle: OracleOpts,
}

impl PresetOpts {
    fn check(&self) -> Result<()> {
        if !(self.t_max > 0.0) || self.points < 2 || self.paths.is_empty() {
            return Err(Error::Validation(
                "preset needs t_max > 0, points >= 2 and a path".into(),
            ));
        }
        Ok(())
    }
}

pub fn fig1_defaults() -> PresetOpts {
    PresetOpts {
        t_max: 1.0,
        points: 200,
        paths: vec![Path::Quadrature1d],
        oracle: OracleOpts::default(),
    }
}

/// One curve of the number-state figure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig1Series {
    pub n: u32,
    pub r: f64,
    pub series: PuritySeries,
}

/// `|1⟩` and `|2⟩` in baths with `μ∞ = 0.5` and `r ∈ {0, 1}`.
pub fn fig1(opts: &PresetOpts, exec: Execution) -> Result<Vec<Fig1Series>> {
    opts.check()?;
    let cases: Vec<(u32, f64)> = [1, 2]
        .iter()
        .flat_map(|&n| [0.0, 1.0].map(move |r| (n, r)))
        .collect();
    let out = cases
        .iter()
        .map(|&(n, r)| {
            let bath = BathSpec::new(FIG_MU_INF, r, 0.0)?;
            let channel = ChannelParams::from_bath(1.0, &bath)?;
            let spec = SweepSpec {
                initial_state: InitialState::Number {
                    n: PolyOrder::new(n)?,
                },
                channel,
                t_max: opts.t_max,
                points: opts.points,
                paths: opts.paths.clone(),
                oracle: opts.oracle,
            };
            Ok(Fig1Series {
                n,
                r,
                series: run_sweep(&spec, exec)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

#[derive(Serialize)]
struct Fig1Row {
    n: u32,
    r: f64,
    gamma_t: f64,
    path: Path,
    purity: f64,
    err_estimate: f64,
}

/// CSV with header `n,r,gamma_t,path,purity,err_estimate`.
pub fn write_fig1_csv<W: Write>(rows: &[Fig1Series], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in rows {
        for (i, t) in s.series.times.iter().enumerate() {
            for c in &s.series.curves {
                w.serialize(Fig1Row {
                    n: s.n,
                    r: s.r,
                    gamma_t: *t,
                    path: c.path,
                    purity: c.purity[i],
                    err_estimate: c.err_estimate[i],
                })?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub const FIG2_SQUEEZINGS: [f64; 3] = [0.1, 0.28, 0.4];

pub fn fig2_defaults() -> PresetOpts {
    PresetOpts {
        t_max: 1.0,
        points: 200,
        paths: vec![Path::ClosedForm],
        oracle: OracleOpts::default(),
    }
}

/// Relative purity gain of the superposition at the optimal phase over the
/// unsqueezed bath with the same `μ∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Series {
    pub r: f64,
    pub path: Path,
    pub times: Vec<f64>,
    pub purity: Vec<f64>,
    pub baseline: Vec<f64>,
    pub relative_gain: Vec<f64>,
}

/// `(|0⟩ + e^{iϑ}|1⟩)/√2` at the optimal phase, `μ∞ = 0.5`,
/// `r ∈ {0.1, 0.28, 0.4}` against `r = 0`.
pub fn fig2(opts: &PresetOpts, exec: Execution) -> Result<Vec<Fig2Series>> {
    opts.check()?;
    let times = linspace(opts.t_max, opts.points);
    let curve = |r: f64, path: Path| -> Result<Vec<f64>> {
        let bath = BathSpec::new(FIG_MU_INF, r, 0.0)?;
        let channel = ChannelParams::from_bath(1.0, &bath)?;
        let state = InitialState::Cat01 {
            theta: optimal_cat_phase(&bath),
        };
        let c = path_curve(&state, &channel, &times, path, &opts.oracle, exec)?;
        Ok(c.purity)
    };
    let mut out = Vec::new();
    for &path in &opts.paths {
        let baseline = curve(0.0, path)?;
        for r in FIG2_SQUEEZINGS {
            let purity = curve(r, path)?;
            let relative_gain = purity
                .iter()
                .zip(&baseline)
                .map(|(p, b)| (p - b) / b)
                .collect();
            out.push(Fig2Series {
                r,
                path,
                times: times.clone(),
                purity,
                baseline: baseline.clone(),
                relative_gain,
            });
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Fig2Row {
    r: f64,
    gamma_t: f64,
    path: Path,
    purity: f64,
    baseline_purity: f64,
    relative_gain: f64,
}

/// CSV with header `r,gamma_t,path,purity,baseline_purity,relative_gain`.
pub fn write_fig2_csv<W: Write>(rows: &[Fig2Series], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in rows {
        for i in 0..s.times.len() {
            w.serialize(Fig2Row {
                r: s.r,
                gamma_t: s.times[i],
                path: s.path,
                purity: s.purity[i],
                baseline_purity: s.baseline[i],
                relative_gain: s.relative_gain[i],
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Squeezing maximizing the optimal-phase superposition purity at `gamma_t`
/// over `r = 0, step, 2·step, ..., ≤ r_max`.
pub fn best_cat_squeezing(mu_inf: f64, gamma_t: f64, r_max: f64, step: f64) -> Result<f64> {
    let count = (r_max / step + 1e-9).floor() as usize;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..=count {
        let r = k as f64 * step;
        let bath = BathSpec::new(mu_inf, r, 0.0)?;
        let v = purity_cat01(&bath, optimal_cat_phase(&bath), gamma_t)?;
        if v > best.0 {
            best = (v, r);
        }
    }
    Ok(best.1)
}

// --- validation report ---------------------------------------------------

pub const THERMAL_ORDERS: [u32; 4] = [0, 1, 2, 3];
pub const THERMAL_OCCUPATIONS: [f64; 3] = [0.1, 0.5, 1.0];
pub const CHECK_TIMES: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
pub const SQUEEZED_ORDERS: [u32; 3] = [0, 1, 2];
pub const SQUEEZINGS: [f64; 2] = [0.5, 1.0];
/// Truncation used for the thermal grid.
pub const THERMAL_DIM: usize = 40;

pub fn tolerance(path: Path) -> f64 {
    match path {
        Path::ClosedForm => 0.0,
        Path::Quadrature1d => 1e-8,
        Path::Quadrature2d => 1e-6,
        Path::Oracle => 1e-4,
    }
}

/// Largest discrepancy of one path against a reference path on one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementRow {
    pub group: String,
    pub case: String,
    pub reference: Path,
    pub path: Path,
    pub max_abs_diff: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub rows: Vec<AgreementRow>,
    /// Points where the uncorrected superposition formula departs from the
    /// verified one by more than `1e-6`.
    pub uncorrected_cat01: Vec<Cat01Discrepancy>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// One validation case: a state in a channel, compared on a time grid.
#[derive(Debug, Clone)]
pub struct Case {
    pub group: &'static str,
    pub label: String,
    pub state: InitialState,
    pub channel: ChannelParams,
    pub times: Vec<f64>,
    pub reference: Path,
    pub oracle: OracleOpts,
}

impl Case {
    /// Compares every path in `paths` (other than the reference) with the
    /// reference path.
    pub fn compare(&self, paths: &[Path], exec: Execution) -> Result<Vec<AgreementRow>> {
        let reference = path_curve(
            &self.state,
            &self.channel,
            &self.times,
            self.reference,
            &self.oracle,
            exec,
        )?;
        paths
            .iter()
            .filter(|p| {
                **p != self.reference && check_path(&self.state, &self.channel, **p).is_ok()
            })
            .map(|&p| {
                let c = path_curve(
                    &self.state,
                    &self.channel,
                    &self.times,
                    p,
                    &self.oracle,
                    exec,
                )?;
                let diff = max_abs_diff(&c.purity, &reference.purity);
                let tol = tolerance(p).max(tolerance(self.reference));
                Ok(AgreementRow {
                    group: self.group.into(),
                    case: self.label.clone(),
                    reference: self.reference,
                    path: p,
                    max_abs_diff: diff,
                    tolerance: tol,
                    pass: diff <= tol,
                })
            })
            .collect()
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn squeezed_channel(mu: f64, r: f64) -> Result<ChannelParams> {
    ChannelParams::from_bath(1.0, &BathSpec::new(mu, r, 0.0)?)
}

/// The agreement grid: thermal number states against the closed form,
/// squeezed number states against the radial integral, superpositions
/// against their closed form, and long-time values against `μ∞`.
pub fn validation_cases(oracle_opts: &OracleOpts) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for n in THERMAL_ORDERS {
        for big_n in THERMAL_OCCUPATIONS {
            cases.push(Case {
                group: "thermal",
                label: format!("n={n} N={big_n}"),
                state: InitialState::Number {
                    n: PolyOrder::new(n)?,
                },
                channel: ChannelParams::thermal(1.0, big_n)?,
                times: CHECK_TIMES.to_vec(),
                reference: Path::ClosedForm,
                oracle: OracleOpts {
                    dim: oracle_opts.dim.or(Some(THERMAL_DIM)),
                    ..*oracle_opts
                },
            });
        }
    }
    for n in SQUEEZED_ORDERS {
        for r in SQUEEZINGS {
            cases.push(Case {
                group: "squeezed",
                label: format!("n={n} mu_inf={FIG_MU_INF} r={r}"),
                state: InitialState::Number {
                    n: PolyOrder::new(n)?,
                },
                channel: squeezed_channel(FIG_MU_INF, r)?,
                times: CHECK_TIMES.to_vec(),
                reference: Path::Quadrature1d,
                oracle: *oracle_opts,
            });
        }
    }
    for r in FIG2_SQUEEZINGS {
        let bath = BathSpec::new(FIG_MU_INF, r, 0.0)?;
        let best = optimal_cat_phase(&bath);
        for (tag, theta) in [
            ("optimal", best),
            ("orthogonal", CatPhase::new(best.get() + FRAC_PI_2)),
        ] {
            cases.push(Case {
                group: "cat01",
                label: format!("mu_inf={FIG_MU_INF} r={r} theta={tag}"),
                state: InitialState::Cat01 { theta },
                channel: ChannelParams::from_bath(1.0, &bath)?,
                times: CHECK_TIMES.to_vec(),
                reference: Path::ClosedForm,
                oracle: *oracle_opts,
            });
        }
    }
    Ok(cases)
}

/// Runs the agreement grid over `paths` and compares the uncorrected
/// superposition formula with the verified one on the same grid.
pub fn validate(
    paths: &[Path],
    oracle_opts: &OracleOpts,
    exec: Execution,
) -> Result<ValidationReport> {
    if paths.is_empty() {
        return Err(Error::Validation("at least one path is required".into()));
    }
    let cases = validation_cases(oracle_opts)?;
    let mut rows = Vec::new();
    for case in &cases {
        rows.extend(case.compare(paths, exec)?);
    }
    let uncorrected_cases: Vec<_> = FIG2_SQUEEZINGS
        .iter()
        .flat_map(|&r| {
            let bath = BathSpec::new(FIG_MU_INF, r, 0.0).expect("fixed bath");
            CHECK_TIMES.map(|t| (bath, optimal_cat_phase(&bath), t))
        })
        .collect();
    let uncorrected_cat01 = cat01_discrepancies(&uncorrected_cases, 1e-6)?;
    for d in &uncorrected_cat01 {
        log::warn!(
            "uncorrected superposition formula off by {:.3e} at r={} gamma_t={}",
            d.abs_diff,
            d.r,
            d.gamma_t
        );
    }
    Ok(ValidationReport {
        rows,
        uncorrected_cat01,
    })
}

/// Purity at `gamma_t` by one path compared with `μ∞`.
pub fn asymptotic_gap(
    state: &InitialState,
    channel: &ChannelParams,
    gamma_t: f64,
    path: Path,
    opts: &OracleOpts,
    exec: Execution,
) -> Result<f64> {
    let c = path_curve(state, channel, &[0.0, gamma_t], path, opts, exec)?;
    Ok((c.purity[1] - purity_asymptotic(channel.n(), channel.abs_m())?).abs())
}

/// CSV with header
/// `group,case,reference,path,max_abs_diff,tolerance,pass`.
pub fn write_report_csv<W: Write>(report: &ValidationReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &report.rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Channel from `(μ∞, r, φ)` with `γ = 1`.
pub fn channel_from_bath(mu_inf: f64, r: f64, phi: f64) -> Result<ChannelParams> {
    let bath = BathSpec::new(mu_inf, r, phi)?;
    let (n, m) = bath_to_channel(&bath);
    ChannelParams::new(1.0, n, m)
}
