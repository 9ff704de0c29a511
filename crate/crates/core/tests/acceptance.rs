//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use common::{close, laguerre_exact, legendre_exact};
use fockchannel::cli::{
    self, asymptotic_gap, best_cat_squeezing, fig1, fig1_defaults, fig2, fig2_defaults, path_curve,
    tolerance, validation_cases, AgreementRow, OracleOpts, CHECK_TIMES, FIG2_SQUEEZINGS,
    FIG_MU_INF, THERMAL_DIM, THERMAL_OCCUPATIONS, THERMAL_ORDERS,
};
use fockchannel::oracle::{
    self, evolve_sampled, lindblad_rhs, squeezed_thermal_state, IntegratorCtrl,
};
use fockchannel::purity::{
    cat01_discrepancies, optimal_cat_phase, purity_asymptotic, purity_squeezed, purity_thermal,
    InitialState, Path, CAT_PHASE_OFFSET,
};
use fockchannel::specialfn::{bessel_i0_scaled, laguerre, legendre, PolyOrder, MAX_ORDER};
use fockchannel::{BathSpec, CatPhase, ChannelParams, Execution};
use proptest::test_runner::{Config, TestRunner};

/// Collects failed checks and summary notes for one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn error(&mut self, context: &str, e: fockchannel::Error) {
        self.checks += 1;
        self.failures.push(format!("{context}: {e}"));
    }
}

fn ord(n: u32) -> PolyOrder {
    PolyOrder::new(n).unwrap()
}

fn bath_channel(mu: f64, r: f64, phi: f64) -> ChannelParams {
    ChannelParams::from_bath(1.0, &BathSpec::new(mu, r, phi).unwrap()).unwrap()
}

fn number(n: u32) -> InitialState {
    InitialState::Number { n: ord(n) }
}

fn applicable(state: &InitialState, ch: &ChannelParams, path: Path) -> bool {
    match (state, path) {
        (InitialState::Number { .. }, Path::ClosedForm) => ch.abs_m() == 0.0,
        (InitialState::Cat01 { .. }, Path::Quadrature1d) => false,
        _ => true,
    }
}

fn record_rows(t: &mut Tally, rows: &[AgreementRow]) {
    for r in rows {
        t.expect(r.pass, || {
            format!(
                "{} {}: {} vs {} differs by {:.3e} > {:.0e}",
                r.group, r.case, r.path, r.reference, r.max_abs_diff, r.tolerance
            )
        });
    }
    for p in Path::ALL {
        let worst = rows
            .iter()
            .filter(|r| r.path == p)
            .map(|r| r.max_abs_diff)
            .fold(None, |a: Option<f64>, d| Some(a.map_or(d, |a| a.max(d))));
        if let (Some(w), Some(r)) = (worst, rows.iter().find(|r| r.path == p)) {
            t.note(format!(
                "max|{} - {}| = {w:.2e} (tol {:.0e})",
                p, r.reference, r.tolerance
            ));
        }
    }
}

fn pure_start() -> Tally {
    let mut t = Tally::default();
    let exec = Execution::default();
    let channels = [
        ChannelParams::thermal(1.0, 0.5).unwrap(),
        bath_channel(0.5, 0.5, 0.3),
        bath_channel(0.5, 1.0, 0.0),
    ];
    let mut states: Vec<InitialState> = (0..=3).map(number).collect();
    states.push(InitialState::Cat01 {
        theta: CatPhase::new(0.0),
    });
    states.push(InitialState::Cat01 {
        theta: CatPhase::new(1.3),
    });
    let mut worst = [0.0f64; 2];
    for ch in &channels {
        for st in &states {
            for path in Path::ALL.into_iter().filter(|p| applicable(st, ch, *p)) {
                match path_curve(st, ch, &[0.0], path, &OracleOpts::default(), exec) {
                    Ok(c) => {
                        let dev = (c.purity[0] - 1.0).abs();
                        let (slot, tol) = if path == Path::Oracle {
                            (1, 1e-6)
                        } else {
                            (0, 1e-9)
                        };
                        worst[slot] = worst[slot].max(dev);
                        t.expect(dev <= tol, || {
                            format!("{st} {path}: mu(0) = {}", c.purity[0])
                        });
                    }
                    Err(e) => t.error(&format!("{st} {path}"), e),
                }
            }
        }
    }
    t.note(format!(
        "max|mu(0)-1|: analytic/quadrature {:.1e} (tol 1e-9), oracle {:.1e} (tol 1e-6)",
        worst[0], worst[1]
    ));
    t
}

fn thermal_agreement() -> Tally {
    let mut t = Tally::default();
    let start = Instant::now();
    let exec = Execution::default();
    let opts = OracleOpts {
        dim: Some(THERMAL_DIM),
        dt: 1e-3,
        ..Default::default()
    };
    let mut rows = Vec::new();
    for case in validation_cases(&opts)
        .unwrap()
        .into_iter()
        .filter(|c| c.group == "thermal")
    {
        match case.compare(&Path::ALL, exec) {
            Ok(r) => rows.extend(r),
            Err(e) => t.error(&case.label, e),
        }
    }
    t.expect(rows.len() == 12 * 3, || {
        format!("expected 36 comparisons, got {}", rows.len())
    });
    for r in &rows {
        let want = tolerance(r.path);
        t.expect(r.tolerance == want, || {
            format!("{} tolerance {} != {want}", r.path, r.tolerance)
        });
    }
    record_rows(&mut t, &rows);
    let secs = start.elapsed().as_secs_f64();
    t.expect(secs <= 300.0, || format!("took {secs:.0}s > 300s"));
    t.note(format!("d={THERMAL_DIM}, dt=1e-3"));
    t
}

fn squeezed_agreement() -> Tally {
    let mut t = Tally::default();
    let exec = Execution::default();
    let mut rows = Vec::new();
    for case in validation_cases(&OracleOpts::default())
        .unwrap()
        .into_iter()
        .filter(|c| c.group == "squeezed")
    {
        match case.compare(
            &[Path::Quadrature1d, Path::Oracle, Path::Quadrature2d],
            exec,
        ) {
            Ok(r) => rows.extend(r),
            Err(e) => t.error(&case.label, e),
        }
    }
    t.expect(
        rows.iter().filter(|r| r.path == Path::Oracle).count() == 6,
        || "missing oracle rows".into(),
    );
    record_rows(&mut t, &rows);
    let mut worst = 0.0f64;
    for n in 0..=3 {
        for big_n in THERMAL_OCCUPATIONS.into_iter().chain([0.0, 3.0]) {
            for gt in CHECK_TIMES.into_iter().chain([0.01, 5.0]) {
                match (
                    purity_squeezed(ord(n), big_n, 0.0, gt),
                    purity_thermal(ord(n), big_n, gt),
                ) {
                    (Ok(q), Ok(c)) => {
                        let d = (q.value - c).abs();
                        worst = worst.max(d);
                        t.expect(d <= 1e-10, || {
                            format!("|M|=0 reduction n={n} N={big_n} gt={gt}: {d:.2e}")
                        });
                    }
                    (Err(e), _) | (_, Err(e)) => t.error("reduction", e),
                }
            }
        }
    }
    t.note(format!("|M|=0 reduction max diff {worst:.1e} (tol 1e-10)"));
    t
}

fn asymptotics() -> Tally {
    let mut t = Tally::default();
    let exec = Execution::default();
    let gt = 20.0;
    let mut cases: Vec<(InitialState, ChannelParams, Vec<Path>, OracleOpts)> = Vec::new();
    let thermal_opts = OracleOpts {
        dim: Some(THERMAL_DIM),
        ..Default::default()
    };
    for n in THERMAL_ORDERS {
        for big_n in THERMAL_OCCUPATIONS {
            cases.push((
                number(n),
                ChannelParams::thermal(1.0, big_n).unwrap(),
                Path::ALL.to_vec(),
                thermal_opts,
            ));
        }
    }
    for r in [0.5, 1.0] {
        for n in 0..=2u32 {
            let mut paths = vec![Path::Quadrature1d, Path::Quadrature2d];
            // the r = 1 oracle needs d ~ 170 and ~60k steps per state; the vacuum stands for all three
            if r < 1.0 || n == 0 {
                paths.push(Path::Oracle);
            }
            cases.push((
                number(n),
                bath_channel(FIG_MU_INF, r, 0.0),
                paths,
                OracleOpts::default(),
            ));
        }
    }
    let cat_bath = BathSpec::new(FIG_MU_INF, 0.28, 0.0).unwrap();
    cases.push((
        InitialState::Cat01 {
            theta: optimal_cat_phase(&cat_bath),
        },
        ChannelParams::from_bath(1.0, &cat_bath).unwrap(),
        vec![Path::ClosedForm, Path::Quadrature2d, Path::Oracle],
        OracleOpts::default(),
    ));
    let mut worst = [0.0f64; 4];
    for (state, ch, paths, opts) in &cases {
        for &p in paths {
            match asymptotic_gap(state, ch, gt, p, opts, exec) {
                Ok(gap) => {
                    let slot = Path::ALL.iter().position(|q| *q == p).unwrap();
                    worst[slot] = worst[slot].max(gap);
                    t.expect(gap <= 1e-3, || {
                        format!(
                            "{state} N={:.3} |M|={:.3} {p}: |mu(20) - mu_inf| = {gap:.2e}",
                            ch.n(),
                            ch.abs_m()
                        )
                    });
                }
                Err(e) => t.error(&format!("{state} {p}"), e),
            }
        }
    }
    let mu_check = purity_asymptotic(0.5, 0.0).unwrap();
    t.expect((mu_check - 0.5).abs() < 1e-15, || {
        "thermal asymptote 1/(2N+1)".into()
    });
    t.note(format!(
        "max gap at gt=20: closed {:.1e}, 1d {:.1e}, 2d {:.1e}, oracle {:.1e} (tol 1e-3)",
        worst[0], worst[1], worst[2], worst[3]
    ));
    t
}

fn fig1_shape() -> Tally {
    let mut t = Tally::default();
    let exec = Execution::default();
    let rows = match fig1(&fig1_defaults(), exec) {
        Ok(r) => r,
        Err(e) => {
            t.error("fig1", e);
            return t;
        }
    };
    let get = |n: u32, r: f64| -> Vec<f64> {
        let s = rows.iter().find(|s| s.n == n && s.r == r).unwrap();
        s.series.curve(Path::Quadrature1d).unwrap().purity.clone()
    };
    let times = rows[0].series.times.clone();
    let pairs = [
        ("mu1(r=0) >= mu1(r=1)", (1, 0.0), (1, 1.0)),
        ("mu2(r=0) >= mu2(r=1)", (2, 0.0), (2, 1.0)),
        ("mu1 >= mu2 at r=0", (1, 0.0), (2, 0.0)),
        ("mu1 >= mu2 at r=1", (1, 1.0), (2, 1.0)),
    ];
    let mut margins = Vec::new();
    for (label, hi, lo) in pairs {
        let (a, b) = (get(hi.0, hi.1), get(lo.0, lo.1));
        for i in 1..times.len() {
            t.expect(a[i] >= b[i], || format!("{label} fails at gt={}", times[i]));
        }
        let at = |n: u32, r: f64| {
            let ch = bath_channel(FIG_MU_INF, r, 0.0);
            purity_squeezed(ord(n), ch.n(), ch.abs_m(), 0.5)
                .unwrap()
                .value
        };
        let margin = at(hi.0, hi.1) - at(lo.0, lo.1);
        t.expect(margin >= 1e-4, || {
            format!("{label}: margin {margin:.2e} at gt=0.5")
        });
        margins.push(margin);
    }
    for (n, r) in [(1, 0.0), (1, 1.0), (2, 0.0), (2, 1.0)] {
        let v = get(n, r);
        let last = v.len() - 1;
        let i = (1..last).min_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap();
        let recovered = v[i + 1..].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let local = v[i] <= v[i - 1] && v[i] <= v[i + 1];
        t.expect(local && v[i] < 0.5 && recovered > v[i], || {
            format!(
                "n={n} r={r}: no interior minimum below 0.5 with recovery (min {} at {})",
                v[i], times[i]
            )
        });
        t.note(format!(
            "n={n},r={r}: min {:.4} at gt={:.3}, recovers to {:.4}",
            v[i], times[i], recovered
        ));
    }
    // closed form and the radial integral draw the same r = 0 curves
    for n in [1, 2] {
        let v = get(n, 0.0);
        let d = times
            .iter()
            .zip(&v)
            .map(|(gt, q)| (purity_thermal(ord(n), 0.5, *gt).unwrap() - q).abs())
            .fold(0.0, f64::max);
        t.expect(d <= 1e-8, || {
            format!("n={n} r=0 curve off closed form by {d:.2e}")
        });
    }
    let min_margin = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    t.note(format!(
        "smallest ordering margin at gt=0.5: {min_margin:.2e}"
    ));
    t
}

fn fig2_shape() -> Tally {
    let mut t = Tally::default();
    let exec = Execution::default();
    match fig2(&fig2_defaults(), exec) {
        Ok(rows) => {
            for s in &rows {
                let bad: Vec<usize> = (1..s.times.len())
                    .filter(|&i| {
                        s.relative_gain[i].partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
                    })
                    .collect();
                t.expect(bad.is_empty(), || {
                    let lowest = bad.iter().map(|&i| s.relative_gain[i]).fold(f64::INFINITY, f64::min);
                    format!(
                        "r={}: relative gain <= 0 at {} grid points in gt [{}, {}] (lowest {lowest:.2e})",
                        s.r,
                        bad.len(),
                        s.times[bad[0]],
                        s.times[*bad.last().unwrap()]
                    )
                });
            }
            t.expect(rows.len() == FIG2_SQUEEZINGS.len(), || {
                "missing fig2 series".into()
            });
        }
        Err(e) => t.error("fig2", e),
    }
    match best_cat_squeezing(FIG_MU_INF, 0.5, 0.6, 0.01) {
        Ok(r) => {
            t.expect((0.26..=0.30).contains(&r), || format!("argmax r = {r}"));
            t.note(format!("argmax r at gt=0.5: {r:.2}"));
        }
        Err(e) => t.error("argmax", e),
    }

    // optimal phase located by the oracle alone
    let bath = BathSpec::new(FIG_MU_INF, 0.28, 0.3).unwrap();
    let ch = ChannelParams::from_bath(1.0, &bath).unwrap();
    let mut scan = Vec::new();
    for k in 0..8 {
        let theta = CatPhase::new(bath.phi() + FRAC_PI_2 + f64::from(k) * PI / 8.0);
        match path_curve(
            &InitialState::Cat01 { theta },
            &ch,
            &[0.0, 0.5],
            Path::Oracle,
            &OracleOpts::default(),
            exec,
        ) {
            Ok(c) => scan.push(c.purity[1]),
            Err(e) => t.error("phase scan", e),
        }
    }
    if scan.len() == 8 {
        let best = (0..8).max_by(|&a, &b| scan[a].total_cmp(&scan[b])).unwrap();
        let offset = f64::from(best as u32) * PI / 8.0;
        let expected = (CAT_PHASE_OFFSET + PI).rem_euclid(PI);
        t.expect((offset - expected).abs() < 1e-12, || {
            format!(
                "oracle optimum at theta = phi + pi/2 + {offset:.4}, library offset {}",
                CAT_PHASE_OFFSET
            )
        });
        t.note(format!(
            "oracle optimum: theta = phi + pi/2 + ({:.4} mod pi)",
            offset
        ));
    }

    let mut rows = Vec::new();
    for case in validation_cases(&OracleOpts::default())
        .unwrap()
        .into_iter()
        .filter(|c| c.group == "cat01")
    {
        match case.compare(&[Path::ClosedForm, Path::Oracle, Path::Quadrature2d], exec) {
            Ok(r) => rows.extend(r),
            Err(e) => t.error(&case.label, e),
        }
    }
    record_rows(&mut t, &rows);

    let uncorrected_cases: Vec<_> = FIG2_SQUEEZINGS
        .iter()
        .flat_map(|&r| {
            let b = BathSpec::new(FIG_MU_INF, r, 0.0).unwrap();
            CHECK_TIMES.map(|gt| (b, optimal_cat_phase(&b), gt))
        })
        .collect();
    match cat01_discrepancies(&uncorrected_cases, 1e-6) {
        Ok(d) => {
            let worst = d.iter().map(|x| x.abs_diff).fold(0.0, f64::max);
            t.note(format!(
                "uncorrected superposition formula: {}/{} points off by > 1e-6 (max {worst:.3}), reported",
                d.len(),
                uncorrected_cases.len()
            ));
        }
        Err(e) => t.error("discrepancy report", e),
    }
    t
}

fn oracle_integrity() -> Tally {
    let mut t = Tally::default();
    let cat_bath = BathSpec::new(FIG_MU_INF, 0.28, 0.0).unwrap();
    let cases: Vec<(&str, InitialState, ChannelParams, Option<usize>)> = vec![
        (
            "thermal n=3 N=1",
            number(3),
            ChannelParams::thermal(1.0, 1.0).unwrap(),
            Some(THERMAL_DIM),
        ),
        (
            "squeezed n=2 r=0.5",
            number(2),
            bath_channel(FIG_MU_INF, 0.5, 0.0),
            None,
        ),
        (
            "squeezed n=2 r=1",
            number(2),
            bath_channel(FIG_MU_INF, 1.0, 0.0),
            None,
        ),
        (
            "cat01 r=0.28",
            InitialState::Cat01 {
                theta: optimal_cat_phase(&cat_bath),
            },
            ChannelParams::from_bath(1.0, &cat_bath).unwrap(),
            None,
        ),
    ];
    let t_final = 2.0;
    let (mut drift, mut min_eig, mut halving, mut bump) = (0.0f64, f64::INFINITY, 0.0f64, 0.0f64);
    for (label, state, ch, dim) in &cases {
        let opts = OracleOpts {
            dim: *dim,
            ..Default::default()
        };
        let d = cli::oracle_dim(state, ch, t_final, &opts);
        let run = |dim: usize, dt: f64| -> fockchannel::Result<(f64, f64, f64)> {
            let rho0 = match state {
                InitialState::Number { n } => oracle::fock_state(n.get() as usize, dim)?,
                InitialState::Cat01 { theta } => oracle::cat01_state(*theta, dim)?,
            };
            let ctrl = IntegratorCtrl {
                dt,
                t_final,
                ..Default::default()
            };
            let ev = evolve_sampled(&rho0, ch.n(), ch.m(), &ctrl, &[t_final])?;
            Ok((
                ev.snapshots[0].1.purity(),
                ev.max_trace_drift(),
                ev.min_eigenvalue(),
            ))
        };
        let base = match run(d, 1e-3) {
            Ok(v) => v,
            Err(e) => {
                t.error(label, e);
                continue;
            }
        };
        drift = drift.max(base.1);
        min_eig = min_eig.min(base.2);
        t.expect(base.1 <= 1e-8, || {
            format!("{label}: trace drift {:.2e}", base.1)
        });
        t.expect(base.2 >= -1e-8, || {
            format!("{label}: min eigenvalue {:.2e}", base.2)
        });
        match run(d, 5e-4) {
            Ok(h) => {
                let c = (h.0 - base.0).abs();
                halving = halving.max(c);
                t.expect(c <= 1e-8, || {
                    format!("{label}: step halving changes purity by {c:.2e}")
                });
            }
            Err(e) => t.error(label, e),
        }
        match run(d + 10, 1e-3) {
            Ok(b) => {
                let c = (b.0 - base.0).abs();
                bump = bump.max(c);
                t.expect(c <= 1e-7, || {
                    format!("{label}: d {d} -> {} changes purity by {c:.2e}", d + 10)
                });
            }
            Err(e) => t.error(label, e),
        }
    }
    // trace over the long window
    let long = IntegratorCtrl {
        t_final: 10.0,
        checkpoint_every: 1000,
        ..Default::default()
    };
    match oracle::evolve(
        &oracle::fock_state(3, THERMAL_DIM).unwrap(),
        1.0,
        fockchannel::Complex64::new(0.0, 0.0),
        &long,
    ) {
        Ok(ev) => {
            drift = drift.max(ev.max_trace_drift());
            min_eig = min_eig.min(ev.min_eigenvalue());
            t.expect(ev.max_trace_drift() <= 1e-8, || {
                "trace drift over gt in [0, 10]".into()
            });
            t.expect(ev.min_eigenvalue() >= -1e-8, || {
                "negative eigenvalue over gt in [0, 10]".into()
            });
        }
        Err(e) => t.error("long run", e),
    }
    let mut stationary = 0.0f64;
    for (mu, r, phi, dim) in [
        (0.5, 0.5, 0.0, 60),
        (0.5, 0.5, 0.7, 60),
        (0.8, 0.3, 1.2, 60),
        (0.5, 1.0, 0.4, 190),
    ] {
        let ch = bath_channel(mu, r, phi);
        match squeezed_thermal_state(ch.n(), ch.m(), dim, 1e-8)
            .and_then(|rho| lindblad_rhs(&rho, ch.n(), ch.m()))
        {
            Ok(rhs) => {
                let worst = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
                stationary = stationary.max(worst);
                t.expect(worst <= 1e-6, || {
                    format!("stationarity mu={mu} r={r} phi={phi}: {worst:.2e}")
                });
            }
            Err(e) => t.error(&format!("stationary state mu={mu} r={r}"), e),
        }
    }
    t.note(format!(
        "trace drift {drift:.1e}, min eig {min_eig:.1e}, halving {halving:.1e}, d+10 {bump:.1e}, stationarity {stationary:.1e}"
    ));
    t
}

fn special_functions() -> Tally {
    let mut t = Tally::default();
    let mut worst = 0.0f64;
    for n in 0..=20u32 {
        for k in 0..=160 {
            let x = f64::from(k) * 0.25;
            let (got, want) = (laguerre(ord(n), x), laguerre_exact(n, x));
            worst = worst.max((got - want).abs() / want.abs().max(1.0));
            t.expect(close(got, want, 1e-10), || {
                format!("L_{n}({x}) = {got} vs {want}")
            });
        }
        for k in -40..=40 {
            let x = f64::from(k) / 20.0;
            let (got, want) = (legendre(ord(n), x), legendre_exact(n, x));
            worst = worst.max((got - want).abs() / want.abs().max(1.0));
            t.expect(close(got, want, 1e-10), || {
                format!("P_{n}({x}) = {got} vs {want}")
            });
        }
    }
    for n in 0..=MAX_ORDER {
        t.expect(laguerre(ord(n), 0.0) == 1.0, || format!("L_{n}(0) != 1"));
        t.expect(legendre(ord(n), 1.0) == 1.0, || format!("P_{n}(1) != 1"));
    }
    let mut runner = TestRunner::new(Config {
        cases: 2000,
        failure_persistence: None,
        ..Config::default()
    });
    let props = [
        runner
            .run(&(0u32..=20, 0.0f64..40.0), |(n, x)| {
                proptest::prop_assert!(close(laguerre(ord(n), x), laguerre_exact(n, x), 1e-10));
                Ok(())
            })
            .map_err(|e| format!("Laguerre vs exact: {e}")),
        runner
            .run(&(0u32..=20, -1.0f64..=1.0), |(n, x)| {
                proptest::prop_assert!(close(legendre(ord(n), x), legendre_exact(n, x), 1e-10));
                Ok(())
            })
            .map_err(|e| format!("Legendre vs exact: {e}")),
        runner
            .run(&(0.0f64..400.0, 1e-3f64..5.0), |(z, dz)| {
                let v = bessel_i0_scaled(z).unwrap();
                proptest::prop_assert!(v > 0.0 && v <= 1.0);
                proptest::prop_assert!(v >= (-z).exp() * (1.0 - 1e-14));
                proptest::prop_assert!(v <= (1.0 + FRAC_PI_2 * z).sqrt().recip() * (1.0 + 1e-14));
                if z >= 1.0 {
                    let ratio = v * (2.0 * PI * z).sqrt();
                    proptest::prop_assert!(ratio >= 1.0 - 1e-14 && ratio <= 1.0 + 0.25 / z);
                }
                proptest::prop_assert!(bessel_i0_scaled(z + dz).unwrap() <= v);
                Ok(())
            })
            .map_err(|e| format!("scaled I0 bounds: {e}")),
    ];
    for p in props {
        t.expect(p.is_ok(), || p.unwrap_err());
    }
    t.note(format!(
        "max relative recurrence error {worst:.1e} (tol 1e-10); 3 property runs x 2000 cases"
    ));
    t
}

type Criterion = (&'static str, fn() -> Tally);

fn main() {
    // cargo passes harness flags through; this runner takes none
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 8] = [
        ("pure start", pure_start),
        ("thermal three-way agreement", thermal_agreement),
        ("squeezed-bath agreement", squeezed_agreement),
        ("asymptotic purity", asymptotics),
        ("number-state figure orderings and revivals", fig1_shape),
        (
            "superposition figure gain and optimal squeezing",
            fig2_shape,
        ),
        ("oracle integrity", oracle_integrity),
        ("special functions", special_functions),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        let status = if out.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {} [{status}] {name} ({} checks, {secs:.1}s): {}",
            i + 1,
            out.checks,
            out.notes.join("; ")
        );
        for f in &out.failures {
            println!("    failed: {f}");
        }
        if !out.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
