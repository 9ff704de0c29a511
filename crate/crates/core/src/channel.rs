//! Single-mode Gaussian channels.
//!
//! A channel is stored as `(γ, N, M)`: coupling rate, bath excitation number
//! and phase-sensitive correlation. The equivalent bath view `(μ∞, r, φ)`
//! gives the purity, squeezing parameter and squeezing angle of the
//! stationary squeezed thermal state `S(r e^{2iφ}) ρ_th S†`, so that
//!
//! ```text
//! μ∞ = 1/sqrt((2N+1)² - 4|M|²),  sinh 2r = 2 μ∞ |M|,  Arg M = 2φ.
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on `|M|² ≤ N(N+1)` before an input is rejected.
pub const POSITIVITY_SLACK: f64 = 1e-12;

/// Gaussian channel `(γ, N, M)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelRepr", into = "ChannelRepr")]
pub struct ChannelParams {
    gamma: f64,
    n: f64,
    m: Complex64,
}

#[derive(Serialize, Deserialize)]
struct ChannelRepr {
    gamma: f64,
    #[serde(rename = "N")]
    n: f64,
    #[serde(rename = "M_re", default)]
    m_re: f64,
    #[serde(rename = "M_im", default)]
    m_im: f64,
}

impl TryFrom<ChannelRepr> for ChannelParams {
    type Error = Error;
    fn try_from(r: ChannelRepr) -> Result<Self> {
        ChannelParams::new(r.gamma, r.n, Complex64::new(r.m_re, r.m_im))
    }
}

impl From<ChannelParams> for ChannelRepr {
    fn from(c: ChannelParams) -> Self {
        ChannelRepr {
            gamma: c.gamma,
            n: c.n,
            m_re: c.m.re,
            m_im: c.m.im,
        }
    }
}

fn check_positivity(n: f64, m: Complex64) -> Result<()> {
    if !(n.is_finite() && n >= 0.0) {
        return Err(Error::Validation(format!("N = {n} violates N >= 0")));
    }
    if !(m.re.is_finite() && m.im.is_finite()) {
        return Err(Error::Validation(format!("M = {m} is not finite")));
    }
    let excess = m.norm_sqr() - n * (n + 1.0);
    if excess > POSITIVITY_SLACK {
        return Err(Error::Validation(format!(
            "|M|^2 <= N(N+1) violated: |M|^2 = {}, N(N+1) = {}",
            m.norm_sqr(),
            n * (n + 1.0)
        )));
    }
    Ok(())
}

impl ChannelParams {
    pub fn new(gamma: f64, n: f64, m: Complex64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Validation(format!(
                "gamma = {gamma} violates gamma > 0"
            )));
        }
        check_positivity(n, m)?;
        Ok(ChannelParams { gamma, n, m })
    }

    /// Phase-insensitive bath (`M = 0`).
    pub fn thermal(gamma: f64, n: f64) -> Result<Self> {
        Self::new(gamma, n, Complex64::new(0.0, 0.0))
    }

    pub fn from_bath(gamma: f64, bath: &BathSpec) -> Result<Self> {
        let (n, m) = bath_to_channel(bath);
        Self::new(gamma, n, m)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> Complex64 {
        self.m
    }

    pub fn abs_m(&self) -> f64 {
        self.m.norm()
    }

    pub fn bath(&self) -> BathSpec {
        channel_to_bath(self.n, self.m).expect("constructor enforces positivity")
    }

    pub fn mu_inf(&self) -> f64 {
        asymptotic_purity(self.n, self.abs_m())
    }

    pub fn sigma_infinity(&self) -> CovMatrix2 {
        sigma_inf_unchecked(self.n, self.m)
    }

    /// Gaussian envelope matrix at physical time `t` (see [`sigma_t`]).
    pub fn sigma_t(&self, t: f64) -> Result<CovMatrix2> {
        sigma_t(self, t)
    }
}

/// Bath view of a channel: `(μ∞, r, φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BathRepr", into = "BathRepr")]
pub struct BathSpec {
    mu_inf: f64,
    r: f64,
    phi: f64,
}

#[derive(Serialize, Deserialize)]
struct BathRepr {
    mu_inf: f64,
    r: f64,
    #[serde(default)]
    phi: f64,
}

impl TryFrom<BathRepr> for BathSpec {
    type Error = Error;
    fn try_from(b: BathRepr) -> Result<Self> {
        BathSpec::new(b.mu_inf, b.r, b.phi)
    }
}

impl From<BathSpec> for BathRepr {
    fn from(b: BathSpec) -> Self {
        BathRepr {
            mu_inf: b.mu_inf,
            r: b.r,
            phi: b.phi,
        }
    }
}

impl BathSpec {
    /// `phi` is reduced into `[0, π)`; the squeezing angle has period π.
    pub fn new(mu_inf: f64, r: f64, phi: f64) -> Result<Self> {
        if !(mu_inf > 0.0 && mu_inf <= 1.0) {
            return Err(Error::Validation(format!(
                "mu_inf = {mu_inf} outside (0, 1]"
            )));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::Validation(format!("r = {r} violates r >= 0")));
        }
        if !phi.is_finite() {
            return Err(Error::Validation(format!("phi = {phi} is not finite")));
        }
        Ok(BathSpec {
            mu_inf,
            r,
            phi: reduce_angle(phi, PI),
        })
    }

    pub fn mu_inf(&self) -> f64 {
        self.mu_inf
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

pub(crate) fn reduce_angle(x: f64, period: f64) -> f64 {
    let y = x.rem_euclid(period);
    // rem_euclid can round up to exactly `period`
    if y >= period {
        0.0
    } else {
        y
    }
}

/// `(μ∞, r, φ) ↦ (N, M)`.
pub fn bath_to_channel(b: &BathSpec) -> (f64, Complex64) {
    let two_r = 2.0 * b.r;
    let n = 0.5 * (two_r.cosh() / b.mu_inf - 1.0);
    let abs_m = two_r.sinh() / (2.0 * b.mu_inf);
    let m = Complex64::from_polar(abs_m, 2.0 * b.phi);
    debug_assert!(m.norm_sqr() - n * (n + 1.0) <= 1e-9 * (1.0 + n * n));
    (n, m)
}

/// `(N, M) ↦ (μ∞, r, φ)`, with `φ = Arg(M)/2` reduced to `[0, π)`.
pub fn channel_to_bath(n: f64, m: Complex64) -> Result<BathSpec> {
    check_positivity(n, m)?;
    // (2N+1)² - 4|M|² >= 1 under the constraint; clamp the rounding
    let mu_inf = asymptotic_purity(n, m.norm()).min(1.0);
    // sinh 2r = 2μ|M| is the well-conditioned form of cosh 2r = sqrt(1 + 4μ²|M|²)
    let r = 0.5 * (2.0 * mu_inf * m.norm()).asinh();
    let phi = if m.norm() == 0.0 { 0.0 } else { 0.5 * m.arg() };
    BathSpec::new(mu_inf, r, phi)
}

pub(crate) fn asymptotic_purity(n: f64, abs_m: f64) -> f64 {
    // (2N+1)² - 4|M|² = (2N+1-2|M|)(2N+1+2|M|), factored against cancellation
    let two_m = 2.0 * abs_m;
    let d = (2.0 * n + 1.0 - two_m).max(0.0) * (2.0 * n + 1.0 + two_m);
    1.0 / d.sqrt()
}

/// Real symmetric 2×2 matrix `[[xx, xp], [xp, pp]]` acting on phase-space
/// points `(x, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovMatrix2 {
    pub xx: f64,
    pub pp: f64,
    pub xp: f64,
}

impl CovMatrix2 {
    pub fn vacuum() -> Self {
        CovMatrix2 {
            xx: 0.5,
            pp: 0.5,
            xp: 0.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.xx * self.pp - self.xp * self.xp
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.pp
    }

    /// `(x p) σ (x p)ᵀ`
    pub fn quad_form(&self, x: f64, p: f64) -> f64 {
        self.xx * x * x + 2.0 * self.xp * x * p + self.pp * p * p
    }

    /// Eigenvalues `(λ_min, λ_max)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.xx + self.pp);
        let rad = (0.25 * (self.xx - self.pp).powi(2) + self.xp * self.xp).sqrt();
        (mean - rad, mean + rad)
    }

    /// `w·self + (1-w)·other`
    pub fn mix(&self, w: f64, other: &CovMatrix2) -> CovMatrix2 {
        CovMatrix2 {
            xx: w * self.xx + (1.0 - w) * other.xx,
            pp: w * self.pp + (1.0 - w) * other.pp,
            xp: w * self.xp + (1.0 - w) * other.xp,
        }
    }

    pub fn scale(&self, s: f64) -> CovMatrix2 {
        CovMatrix2 {
            xx: s * self.xx,
            pp: s * self.pp,
            xp: s * self.xp,
        }
    }
}

fn sigma_inf_unchecked(n: f64, m: Complex64) -> CovMatrix2 {
    CovMatrix2 {
        xx: 0.5 + n + m.re,
        pp: 0.5 + n - m.re,
        xp: m.im,
    }
}

/// Stationary Gaussian envelope `σ∞` of the channel, with
/// `det σ∞ = 1/(4μ∞²)`.
pub fn sigma_infinity(n: f64, m: Complex64) -> Result<CovMatrix2> {
    check_positivity(n, m)?;
    Ok(sigma_inf_unchecked(n, m))
}

/// `σ(t) = ½𝟙 e^{-γt} + σ∞ (1 - e^{-γt})`.
///
/// This is the Gaussian envelope of an evolved number-state characteristic
/// function, not the covariance matrix of the evolving state.
pub fn sigma_t(params: &ChannelParams, t: f64) -> Result<CovMatrix2> {
    if !(t >= 0.0) {
        return Err(Error::domain("t", t, "time must be non-negative"));
    }
    let u = (-params.gamma * t).exp();
    Ok(CovMatrix2::vacuum().mix(u, &params.sigma_infinity()))
}
