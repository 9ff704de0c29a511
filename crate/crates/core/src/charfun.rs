//! Symmetrically ordered characteristic functions `χ(α) = Tr(ρ D_α)` in
//! quadrature variables `α = (x + ip)/√2`, and their evolution through a
//! Gaussian channel.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{reduce_angle, ChannelParams, CovMatrix2};
use crate::error::{Error, Result};
use crate::specialfn::{laguerre, PolyOrder};

type Eval = dyn Fn(f64, f64) -> Complex64 + Send + Sync;

/// Closed-form evaluator of a characteristic function.
///
/// Besides the evaluator it carries an envelope bound used to size
/// integration domains: `|χ(x, p)| ≤ poly(|ξ|²) · exp(-½ ξᵀ envelope ξ)`
/// with a prefactor of degree `order` in `|ξ|²`.
#[derive(Clone)]
pub struct CharFunction {
    eval: Arc<Eval>,
    description: String,
    envelope: CovMatrix2,
    order: u32,
}

impl fmt::Debug for CharFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharFunction")
            .field("description", &self.description)
            .field("envelope", &self.envelope)
            .field("order", &self.order)
            .finish()
    }
}

impl CharFunction {
    pub fn new<F>(description: impl Into<String>, envelope: CovMatrix2, order: u32, eval: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        CharFunction {
            eval: Arc::new(eval),
            description: description.into(),
            envelope,
            order,
        }
    }

    pub fn eval(&self, x: f64, p: f64) -> Complex64 {
        (self.eval)(x, p)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn envelope(&self) -> CovMatrix2 {
        self.envelope
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

/// Zero-mean Gaussian `exp(-½ ξᵀ σ ξ)`.
pub fn gaussian(sigma: CovMatrix2) -> CharFunction {
    CharFunction::new(format!("gaussian{sigma:?}"), sigma, 0, move |x, p| {
        Complex64::new((-0.5 * sigma.quad_form(x, p)).exp(), 0.0)
    })
}

/// Phase `ϑ` of the superposition `(|0⟩ + e^{iϑ}|1⟩)/√2`, kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct CatPhase(f64);

impl CatPhase {
    pub fn new(theta: f64) -> Self {
        CatPhase(reduce_angle(theta, 2.0 * PI))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<f64> for CatPhase {
    fn from(theta: f64) -> Self {
        CatPhase::new(theta)
    }
}

impl From<CatPhase> for f64 {
    fn from(theta: CatPhase) -> f64 {
        theta.0
    }
}

/// `χₙ(x, p) = e^{-(x²+p²)/4} Lₙ((x²+p²)/2)` for the number state `|n⟩`.
pub fn chi_number(n: PolyOrder) -> CharFunction {
    CharFunction::new(
        format!("number n={n}"),
        CovMatrix2::vacuum(),
        n.get(),
        move |x, p| {
            let a2 = 0.5 * (x * x + p * p);
            Complex64::new((-0.5 * a2).exp() * laguerre(n, a2), 0.0)
        },
    )
}

/// `χ₀₁(α) = ½ e^{-|α|²/2} [2 - |α|² + α e^{-iϑ} - α* e^{iϑ}]` for
/// `(|0⟩ + e^{iϑ}|1⟩)/√2`, from `⟨1|D|0⟩ = α e^{-|α|²/2}` and
/// `⟨0|D|1⟩ = -α* e^{-|α|²/2}`.
pub fn chi_cat01(theta: CatPhase) -> CharFunction {
    let phase = Complex64::from_polar(1.0, -theta.get());
    CharFunction::new(
        format!("cat01 theta={}", theta.get()),
        CovMatrix2::vacuum(),
        1,
        move |x, p| {
            let alpha = Complex64::new(x, p) * FRAC_1_SQRT_2;
            let a2 = alpha.norm_sqr();
            // α e^{-iϑ} - conj(α e^{-iϑ}) = 2i Im(α e^{-iϑ})
            let interference = Complex64::new(0.0, 2.0 * (alpha * phase).im);
            (Complex64::new(2.0 - a2, 0.0) + interference) * (0.5 * (-0.5 * a2).exp())
        },
    )
}

/// Evolves `chi0` for a physical time `t` through the channel:
/// `χ(x, p, t) = χ₀(x e^{-γt/2}, p e^{-γt/2}) exp(-½ ξᵀ σ∞ ξ (1 - e^{-γt}))`.
pub fn propagate(chi0: &CharFunction, params: &ChannelParams, t: f64) -> Result<CharFunction> {
    if !(t >= 0.0) {
        return Err(Error::domain("t", t, "time must be non-negative"));
    }
    let u = (-params.gamma() * t).exp();
    let shrink = u.sqrt();
    let weight = 1.0 - u;
    let sigma_inf = params.sigma_infinity();
    let inner = chi0.clone();
    let envelope = chi0.envelope.mix(u, &sigma_inf);
    Ok(CharFunction::new(
        format!(
            "{} | propagated gamma_t={}",
            chi0.description,
            params.gamma() * t
        ),
        envelope,
        chi0.order,
        move |x, p| {
            let damping = (-0.5 * weight * sigma_inf.quad_form(x, p)).exp();
            inner.eval(shrink * x, shrink * p) * damping
        },
    ))
}

/// Closed form of an evolved number state:
/// `Lₙ((x²+p²) e^{-γt}/2) exp(-½ ξᵀ σ(t) ξ)`.
pub fn chi_number_evolved(n: PolyOrder, params: &ChannelParams, t: f64) -> Result<CharFunction> {
    let sigma = params.sigma_t(t)?;
    let u = (-params.gamma() * t).exp();
    Ok(CharFunction::new(
        format!("number n={n} evolved gamma_t={}", params.gamma() * t),
        sigma,
        n.get(),
        move |x, p| {
            let s = 0.5 * u * (x * x + p * p);
            Complex64::new(laguerre(n, s) * (-0.5 * sigma.quad_form(x, p)).exp(), 0.0)
        },
    ))
}
