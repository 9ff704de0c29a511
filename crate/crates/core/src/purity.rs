//! Purity `μ(t) = Tr ρ²` of states evolving in a Gaussian channel.
//!
//! All routines here take the dimensionless time `gamma_t = γt`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{asymptotic_purity, BathSpec, ChannelParams, POSITIVITY_SLACK};
use crate::charfun::{CatPhase, CharFunction};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_2d, Estimate, QuadCtrl};
use crate::specialfn::{bessel_i0_scaled, laguerre, PolyOrder};

/// Error estimate above which a quadrature result is flagged.
pub const ACCURACY_WARN: f64 = 1e-8;

/// Offset between the optimal superposition phase in our conventions and
/// `φ + π/2`: the purity of `(|0⟩ + e^{iϑ}|1⟩)/√2` is largest at
/// `ϑ = φ + π/2 + CAT_PHASE_OFFSET (mod π)`, i.e. at `ϑ = φ`.
pub const CAT_PHASE_OFFSET: f64 = -FRAC_PI_2;

/// Truncation box half-width in standard deviations of the slowest
/// decaying direction of `|χ|²`.
const BOX_SIGMAS: f64 = 8.0;

fn check_gamma_t(gamma_t: f64) -> Result<()> {
    if !(gamma_t >= 0.0) {
        return Err(Error::domain("gamma_t", gamma_t, "must be non-negative"));
    }
    Ok(())
}

fn check_bath_numbers(n: f64, abs_m: f64) -> Result<()> {
    if !(n >= 0.0 && n.is_finite()) {
        return Err(Error::domain("N", n, "must be non-negative"));
    }
    if !(abs_m >= 0.0) {
        return Err(Error::domain("|M|", abs_m, "must be non-negative"));
    }
    if abs_m * abs_m - n * (n + 1.0) > POSITIVITY_SLACK {
        return Err(Error::Validation(format!(
            "|M|^2 <= N(N+1) violated: |M|^2 = {}, N(N+1) = {}",
            abs_m * abs_m,
            n * (n + 1.0)
        )));
    }
    Ok(())
}

/// `μ = (1/2π) ∬ |χ(x, p)|² dx dp` by nested adaptive quadrature.
///
/// The integration box is centred on the origin with half-width
/// `8 √(2·order + 1) / √(2 λ_min)` where `λ_min` is the smallest eigenvalue
/// of the envelope matrix. `χ(-ξ) = χ(ξ)*`, so only `x ≥ 0` is integrated.
///
/// An estimate whose error exceeds the tolerance but stays below
/// [`ACCURACY_WARN`] is returned with `converged = false`; anything worse
/// is an [`Error::Accuracy`].
pub fn purity_2d(chi: &CharFunction, ctrl: &QuadCtrl) -> Result<Estimate> {
    let (lambda_min, _) = chi.envelope().eigenvalues();
    if !(lambda_min > 0.0) {
        return Err(Error::Validation(format!(
            "envelope of {} is not positive definite",
            chi.description()
        )));
    }
    let half = BOX_SIGMAS * f64::from(2 * chi.order() + 1).sqrt() / (2.0 * lambda_min).sqrt();
    let half_ctrl = QuadCtrl {
        abs_tol: 0.5 * ctrl.abs_tol * 2.0 * PI,
        ..*ctrl
    };
    let e = integrate_2d(
        |x, p| chi.eval(x, p).norm_sqr(),
        (0.0, half),
        (-half, half),
        &half_ctrl,
    );
    let scale = 2.0 / (2.0 * PI);
    let est = Estimate {
        value: e.value * scale,
        abs_err: e.abs_err * scale,
        converged: e.converged,
    };
    if !est.converged {
        if est.abs_err > ACCURACY_WARN {
            return Err(Error::Accuracy {
                what: format!("2D purity of {}", chi.description()),
                estimate: est.value,
                abs_err: est.abs_err,
            });
        }
        log::warn!(
            "2D purity of {} stopped at error {:e}",
            chi.description(),
            est.abs_err
        );
    }
    Ok(est)
}

/// Quadrature control used by [`purity_2d`] when nothing else is requested.
pub fn default_2d_ctrl() -> QuadCtrl {
    QuadCtrl {
        abs_tol: 1e-11,
        rel_tol: 0.0,
        max_intervals: 400,
    }
}

/// Closed-form purity of `|n⟩` in a thermal channel (`M = 0`):
///
/// `μₙ = e^{γt} (ξ-2)ⁿ/ξ^{n+1} Pₙ(1 + 2/(ξ² - 2ξ))`, `ξ = e^{γt}(2N+1) - 2N`.
pub fn purity_thermal(n: PolyOrder, big_n: f64, gamma_t: f64) -> Result<f64> {
    check_gamma_t(gamma_t)?;
    check_bath_numbers(big_n, 0.0)?;
    if gamma_t == 0.0 {
        return Ok(1.0);
    }
    let u = (-gamma_t).exp();
    let xi_scaled = (2.0 * big_n + 1.0) - 2.0 * big_n * u; // ξ e^{-γt}
    let prefactor = 1.0 / xi_scaled; // e^{γt}/ξ
    let xi = xi_scaled / u;
    Ok(prefactor * scaled_legendre(n.get(), xi))
}

// (ξ-2)ⁿ Pₙ(1 + 2/(ξ²-2ξ)) / ξⁿ through the Legendre recurrence written for
// Q_k = w^k P_k(1 + 2/w)/ξ^{2k}, w = ξ(ξ-2). Finite at ξ = 2 and stable for
// every ξ ≥ 1 because the argument of P stays outside (-1, 1).
fn scaled_legendre(n: u32, xi: f64) -> f64 {
    let y = 1.0 - 2.0 / xi;
    let (a, b) = (y + 2.0 / (xi * xi), y * y);
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, a);
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * a * cur - k * b * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Purity of `|n⟩` in a channel with `|M| ≥ 0`, as the radial integral
///
/// `μₙ = e^{γt} ∫₀^∞ e^{-ξs} Lₙ(s)² I₀(2|M|(e^{γt}-1)s) ds`.
///
/// Evaluated after the substitution `s = τ e^{-γt}` with the scaled Bessel
/// function, so the integrand is `e^{-κτ} Lₙ(e^{-γt}τ)² [e^{-cτ} I₀(cτ)]`
/// with `c = 2|M|(1 - e^{-γt})` and `κ = ξe^{-γt} - c > 0`. The upper limit
/// starts at `50/κ` and doubles until a rigorous tail bound drops below
/// `1e-12`; the bound is added to the error estimate.
pub fn purity_squeezed(n: PolyOrder, big_n: f64, abs_m: f64, gamma_t: f64) -> Result<Estimate> {
    purity_squeezed_with(n, big_n, abs_m, gamma_t, &default_1d_ctrl())
}

pub fn default_1d_ctrl() -> QuadCtrl {
    QuadCtrl {
        abs_tol: 1e-14,
        rel_tol: 1e-13,
        max_intervals: 400,
    }
}

pub fn purity_squeezed_with(
    n: PolyOrder,
    big_n: f64,
    abs_m: f64,
    gamma_t: f64,
    ctrl: &QuadCtrl,
) -> Result<Estimate> {
    check_gamma_t(gamma_t)?;
    check_bath_numbers(big_n, abs_m)?;
    let u = (-gamma_t).exp();
    let xi_scaled = (2.0 * big_n + 1.0) - 2.0 * big_n * u;
    let c = 2.0 * abs_m * (1.0 - u);
    let kappa = xi_scaled - c;
    if !(kappa > 0.0) {
        return Err(Error::Validation(format!(
            "radial integrand does not decay (kappa = {kappa:e}) for N = {big_n}, |M| = {abs_m}"
        )));
    }
    let deg = 2.0 * f64::from(n.get());
    // L_n(-x) has the absolute values of the coefficients of L_n(x)
    let tail = |s: f64| {
        if kappa * s <= deg {
            return f64::INFINITY;
        }
        let majorant = laguerre(n, -u * s);
        (-kappa * s).exp() * majorant * majorant / (kappa - deg / s)
    };
    let mut upper = 50.0 / kappa;
    let mut tail_bound = tail(upper);
    while tail_bound > 1e-12 {
        upper *= 2.0;
        tail_bound = tail(upper);
    }
    let e = integrate(
        |tau| {
            let l = laguerre(n, u * tau);
            let bessel = bessel_i0_scaled(c * tau).expect("argument is non-negative");
            (-kappa * tau).exp() * l * l * bessel
        },
        0.0,
        upper,
        ctrl,
    );
    let est = Estimate {
        value: e.value,
        abs_err: e.abs_err + tail_bound,
        converged: e.converged,
    };
    if !est.converged && est.abs_err > ACCURACY_WARN {
        return Err(Error::Accuracy {
            what: format!("radial purity integral n={n}"),
            estimate: est.value,
            abs_err: est.abs_err,
        });
    }
    Ok(est)
}

/// Closed-form purity of `(|0⟩ + e^{iϑ}|1⟩)/√2` in the channel described by
/// `bath`. With `u = e^{-γt}`, `σ(t) = a𝟙 + b R(2φ)` where
/// `a = u/2 + (1-u) cosh 2r/(2μ∞)`, `b = (1-u) sinh 2r/(2μ∞)` and `ν` the
/// vacuum purity `1/(2√(a² - b²))`:
///
/// `μ₀₁ = ν - u ν³ (a - b cos(2ϑ - 2φ)) + u² ν⁵ (2a² + b²)`.
pub fn purity_cat01(bath: &BathSpec, theta: CatPhase, gamma_t: f64) -> Result<f64> {
    check_gamma_t(gamma_t)?;
    let u = (-gamma_t).exp();
    let (ch, sh) = ((2.0 * bath.r()).cosh(), (2.0 * bath.r()).sinh());
    let mu = bath.mu_inf();
    let a = 0.5 * u + (1.0 - u) * ch / (2.0 * mu);
    let b = (1.0 - u) * sh / (2.0 * mu);
    let nu = vacuum_purity(bath, gamma_t)?;
    let cos = (2.0 * theta.get() - 2.0 * bath.phi()).cos();
    let nu3 = nu * nu * nu;
    Ok(nu - u * nu3 * (a - b * cos) + u * u * nu3 * nu * nu * (2.0 * a * a + b * b))
}

/// Purity of the vacuum in the channel, `1/(2 √det σ(t))`.
pub fn vacuum_purity(bath: &BathSpec, gamma_t: f64) -> Result<f64> {
    check_gamma_t(gamma_t)?;
    let u = (-gamma_t).exp();
    let mu = bath.mu_inf();
    let ch = (2.0 * bath.r()).cosh();
    let w = 1.0 - u;
    let four_det = w * w / (mu * mu) + u * u + 2.0 * u * w * ch / mu;
    Ok(1.0 / four_det.sqrt())
}

/// Phase `ϑ` of the superposition that maximises its purity in `bath`.
pub fn optimal_cat_phase(bath: &BathSpec) -> CatPhase {
    CatPhase::new(bath.phi() + FRAC_PI_2 + CAT_PHASE_OFFSET)
}

/// Superposition purity in its uncorrected form, kept only to report how far
/// it is from the verified result.
pub fn purity_cat01_uncorrected(bath: &BathSpec, theta: CatPhase, gamma_t: f64) -> f64 {
    let e = gamma_t.exp();
    let mu = bath.mu_inf();
    let (ch, sh) = ((2.0 * bath.r()).cosh(), (2.0 * bath.r()).sinh());
    let em = (-gamma_t).exp();
    let nu = (1.0 / (mu * mu) * (1.0 - em).powi(2) + em * em + 2.0 / mu * ch).powf(-0.5);
    let cos = (2.0 * theta.get() - 2.0 * bath.phi()).cos();
    4.0 * nu - em * em * nu * nu / (2.0 * mu) * (mu + (e - 1.0) * (ch + cos * sh))
        + em.powi(4) * nu.powi(5) / (2.0 * mu * mu)
            * (4.0 * mu * mu
                + 8.0 * (e - 1.0) * mu * ch
                + (e - 1.0).powi(2) * (3.0 * (4.0 * bath.r()).cosh() + 1.0))
}

/// One row of the uncorrected-versus-verified comparison.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cat01Discrepancy {
    pub mu_inf: f64,
    pub r: f64,
    pub theta: f64,
    pub gamma_t: f64,
    pub uncorrected: f64,
    pub derived: f64,
    pub abs_diff: f64,
}

/// Compares [`purity_cat01_uncorrected`] with [`purity_cat01`]; rows whose
/// difference exceeds `threshold` are returned.
pub fn cat01_discrepancies(
    cases: &[(BathSpec, CatPhase, f64)],
    threshold: f64,
) -> Result<Vec<Cat01Discrepancy>> {
    let mut out = Vec::new();
    for (bath, theta, gt) in cases {
        let derived = purity_cat01(bath, *theta, *gt)?;
        let uncorrected = purity_cat01_uncorrected(bath, *theta, *gt);
        let abs_diff = (uncorrected - derived).abs();
        if !(abs_diff <= threshold) {
            out.push(Cat01Discrepancy {
                mu_inf: bath.mu_inf(),
                r: bath.r(),
                theta: theta.get(),
                gamma_t: *gt,
                uncorrected,
                derived,
                abs_diff,
            });
        }
    }
    Ok(out)
}

/// `1/√((2N+1)² - 4|M|²)`, the purity every state relaxes to.
pub fn purity_asymptotic(big_n: f64, abs_m: f64) -> Result<f64> {
    check_bath_numbers(big_n, abs_m)?;
    Ok(asymptotic_purity(big_n, abs_m))
}

/// Computational route to the purity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    ClosedForm,
    #[serde(rename = "quadrature_1d")]
    Quadrature1d,
    #[serde(rename = "quadrature_2d")]
    Quadrature2d,
    Oracle,
}

impl Path {
    pub const ALL: [Path; 4] = [
        Path::ClosedForm,
        Path::Quadrature1d,
        Path::Quadrature2d,
        Path::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Path::ClosedForm => "closed_form",
            Path::Quadrature1d => "quadrature_1d",
            Path::Quadrature2d => "quadrature_2d",
            Path::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Path {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Path::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Validation(format!("unknown path '{s}'")))
    }
}

/// Initial pure state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialState {
    Number { n: PolyOrder },
    Cat01 { theta: CatPhase },
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::Number { n } => write!(f, "number n={n}"),
            InitialState::Cat01 { theta } => write!(f, "cat01 theta={}", theta.get()),
        }
    }
}

/// Purity values of one path on the series' time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathCurve {
    pub path: Path,
    pub purity: Vec<f64>,
    pub err_estimate: Vec<f64>,
}

/// Purity along a `γt` grid for each requested path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuritySeries {
    pub times: Vec<f64>,
    pub curves: Vec<PathCurve>,
    pub channel: ChannelParams,
    pub initial_state: InitialState,
}

impl PuritySeries {
    pub fn curve(&self, path: Path) -> Option<&PathCurve> {
        self.curves.iter().find(|c| c.path == path)
    }

    /// Fails unless every value lies in `(0, 1 + slack]`.
    pub fn check(&self, slack: f64) -> Result<()> {
        for c in &self.curves {
            for (t, v) in self.times.iter().zip(&c.purity) {
                if !(*v > 0.0 && *v <= 1.0 + slack) {
                    return Err(Error::Integration {
                        time: *t,
                        reason: format!("{} purity {v} outside (0, 1]", c.path),
                    });
                }
            }
        }
        Ok(())
    }
}
