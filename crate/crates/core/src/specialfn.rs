//! Laguerre and Legendre polynomials and the exponentially scaled modified
//! Bessel function `e^{-z} I₀(z)`.
//!
//! The polynomials are evaluated by their three-term recurrences. The
//! explicit alternating sums cancel catastrophically for large arguments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest polynomial / Fock order accepted at the API boundary.
pub const MAX_ORDER: u32 = 64;

/// Crossover between the power series and the asymptotic expansion of I₀.
const I0_ASYMPTOTIC_FROM: f64 = 20.0;

/// Polynomial order `n`, also used as the Fock level of a number state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PolyOrder(u32);

impl PolyOrder {
    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::Validation(format!(
                "order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        Ok(PolyOrder(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for PolyOrder {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        PolyOrder::new(n)
    }
}

impl From<PolyOrder> for u32 {
    fn from(n: PolyOrder) -> u32 {
        n.0
    }
}

impl std::fmt::Display for PolyOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `Lₙ(x)` via `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(n: PolyOrder, x: f64) -> f64 {
    let n = n.get();
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Pₙ(x)` via Bonnet's recurrence. Defined for every finite `x`, not only
/// on `[-1, 1]`.
pub fn legendre(n: PolyOrder, x: f64) -> f64 {
    let n = n.get();
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `e^{-z} I₀(z)` for `z ≥ 0`. Bounded in `(0, 1]` and decreasing.
pub fn bessel_i0_scaled(z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::domain("z", z, "bessel_i0_scaled requires z >= 0"));
    }
    if z.is_infinite() {
        return Ok(0.0);
    }
    Ok(if z < I0_ASYMPTOTIC_FROM {
        i0_series(z) * (-z).exp()
    } else {
        i0_asymptotic_scaled(z)
    })
}

// Σ (z/2)^{2k} / (k!)², all terms positive.
fn i0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * k);
        sum += term;
        if term <= f64::EPSILON * 0.5 * sum {
            return sum;
        }
    }
}

// e^{-z} I₀(z) ~ (2πz)^{-1/2} Σ ((2k-1)!!)² / (k! (8z)^k)
fn i0_asymptotic_scaled(z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..200 {
        let k = f64::from(k);
        let next = term * (2.0 * k + 1.0).powi(2) / (8.0 * z * (k + 1.0));
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.5 * sum {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * z).sqrt()
}
