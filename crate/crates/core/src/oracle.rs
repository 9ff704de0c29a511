//! Brute-force reference: the Gaussian-channel master equation integrated
//! on a truncated Fock basis,
//!
//! ```text
//! dρ/d(γt) = ½ [ N L[a†]ρ + (N+1) L[a]ρ + M* D[a]ρ + M D[a†]ρ ]
//! L[O]ρ = 2OρO† - O†Oρ - ρO†O,   D[O]ρ = 2OρO - OOρ - ρOO
//! ```
//!
//! The stationary state of this generator is the squeezed thermal state
//! whose symmetric characteristic function is `exp(-½ ξᵀ σ∞ ξ)` with
//! `σ∞` from [`crate::channel::sigma_infinity`].
//!
//! All operators are the `d × d` truncations of `a` and `a†`, and products
//! are taken between truncated matrices. The resulting artifact at the top
//! level is monitored through the population of the highest 10 % of levels.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::channel::channel_to_bath;
use crate::charfun::CatPhase;
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Smallest truncation handed out by [`recommended_dim`].
pub const MIN_DIM: usize = 40;
pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-8;
pub const MIN_EIGENVALUE_TOL: f64 = -1e-8;

/// Density matrix on the first `dim` Fock levels.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensity {
    matrix: CMatrix,
}

impl FockDensity {
    /// Validates squareness, Hermiticity and unit trace.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() < 2 {
            return Err(Error::Validation(format!(
                "density matrix must be square with dim >= 2, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let rho = FockDensity { matrix };
        let drift = rho.hermiticity_drift();
        if drift > HERMITICITY_TOL {
            return Err(Error::Validation(format!(
                "density matrix not Hermitian (drift {drift:e})"
            )));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::Validation(format!("density matrix trace {tr} != 1")));
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    /// `max |ρ - ρ†|`
    pub fn hermiticity_drift(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for j in 0..d {
            for i in 0..=j {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn symmetrize(&mut self) {
        let d = self.dim();
        for j in 0..d {
            for i in 0..j {
                let avg = 0.5 * (self.matrix[(i, j)] + self.matrix[(j, i)].conj());
                self.matrix[(i, j)] = avg;
                self.matrix[(j, i)] = avg.conj();
            }
            self.matrix[(j, j)].im = 0.0;
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Population of the top `ceil(dim/10)` levels.
    pub fn tail_population(&self) -> f64 {
        let d = self.dim();
        let top = d.div_ceil(10);
        (d - top..d).map(|k| self.matrix[(k, k)].re).sum()
    }

    pub fn purity(&self) -> f64 {
        purity_of(self)
    }

    /// Mean photon number `Tr(a†a ρ)`.
    pub fn mean_photons(&self) -> f64 {
        self.populations()
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }
}

/// `Tr ρ² = Σ |ρᵢⱼ|²`.
pub fn purity_of(rho: &FockDensity) -> f64 {
    rho.matrix.iter().map(|z| z.norm_sqr()).sum()
}

/// Truncated ladder operators with `a[m, m+1] = √(m+1)`.
pub fn ladder_ops(dim: usize) -> Result<(CMatrix, CMatrix)> {
    if dim < 2 {
        return Err(Error::Validation(format!("Fock dimension {dim} < 2")));
    }
    let mut a = CMatrix::zeros(dim, dim);
    for m in 0..dim - 1 {
        a[(m, m + 1)] = Complex64::new(((m + 1) as f64).sqrt(), 0.0);
    }
    let a_dag = a.adjoint();
    Ok((a, a_dag))
}

/// `|n⟩⟨n|` on `dim` levels.
pub fn fock_state(n: usize, dim: usize) -> Result<FockDensity> {
    if dim < 2 || n >= dim {
        return Err(Error::Validation(format!(
            "level {n} does not fit in dim {dim}"
        )));
    }
    let mut m = CMatrix::zeros(dim, dim);
    m[(n, n)] = Complex64::new(1.0, 0.0);
    FockDensity::new(m)
}

/// `|ψ⟩⟨ψ|` for `|ψ⟩ = (|0⟩ + e^{iϑ}|1⟩)/√2`.
pub fn cat01_state(theta: CatPhase, dim: usize) -> Result<FockDensity> {
    if dim < 2 {
        return Err(Error::Validation(format!("Fock dimension {dim} < 2")));
    }
    let mut m = CMatrix::zeros(dim, dim);
    let c = Complex64::from_polar(0.5, theta.get());
    m[(0, 0)] = Complex64::new(0.5, 0.0);
    m[(1, 1)] = Complex64::new(0.5, 0.0);
    m[(1, 0)] = c;
    m[(0, 1)] = c.conj();
    FockDensity::new(m)
}

/// Stationary state of the channel, `S(z) ρ_th S(z)†` with
/// `S(z) = exp[(z* a² - z a†²)/2]`, `z = r e^{2iφ}` and `ρ_th` thermal with
/// purity `μ∞`, all from [`channel_to_bath`].
///
/// The squeeze is applied on a larger working space and cropped, so the
/// truncation artifact of `exp` stays far from the returned levels. Fails
/// when more than `tail_tol` of the population sits above the crop or in
/// its top 10 %.
pub fn squeezed_thermal_state(
    n: f64,
    m: Complex64,
    dim: usize,
    tail_tol: f64,
) -> Result<FockDensity> {
    let bath = channel_to_bath(n, m)?;
    if dim < 2 {
        return Err(Error::Validation(format!("Fock dimension {dim} < 2")));
    }
    let work = 2 * dim + 20;
    let n_th = 0.5 * (1.0 / bath.mu_inf() - 1.0);
    let ratio = n_th / (n_th + 1.0);
    let mut thermal = CMatrix::zeros(work, work);
    let mut p = 1.0 / (n_th + 1.0);
    for k in 0..work {
        thermal[(k, k)] = Complex64::new(p, 0.0);
        p *= ratio;
    }
    let z = Complex64::from_polar(bath.r(), 2.0 * bath.phi());
    let (a, a_dag) = ladder_ops(work)?;
    let generator = (&a * &a * z.conj() - &a_dag * &a_dag * z) * Complex64::new(0.5, 0.0);
    let squeeze = generator.exp();
    let full = &squeeze * thermal * squeeze.adjoint();
    let crop = full.view((0, 0), (dim, dim)).into_owned();
    let lost: f64 = 1.0 - crop.diagonal().iter().map(|z| z.re).sum::<f64>();
    let mut rho = FockDensity { matrix: crop };
    let tail = lost.max(0.0) + rho.tail_population();
    if tail > tail_tol {
        return Err(Error::Truncation {
            dim,
            tail,
            tol: tail_tol,
        });
    }
    let tr = rho.trace();
    rho.matrix /= Complex64::new(tr, 0.0);
    rho.symmetrize();
    Ok(rho)
}

/// The channel generator on a `dim`-level space, applied element-wise using
/// the band structure of `a` and `a†`.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    dim: usize,
    n: f64,
    m: Complex64,
    sqrt: Vec<f64>,
}

impl Liouvillian {
    pub fn new(dim: usize, n: f64, m: Complex64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Validation(format!("Fock dimension {dim} < 2")));
        }
        channel_to_bath(n, m)?;
        let sqrt = (0..dim + 3).map(|k| (k as f64).sqrt()).collect();
        Ok(Liouvillian { dim, n, m, sqrt })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `out = L(rho)` for column-major `dim × dim` buffers.
    pub fn apply(&self, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        debug_assert_eq!(rho.len(), d * d);
        debug_assert_eq!(out.len(), d * d);
        #[cfg(feature = "parallel")]
        if d >= 48 {
            use rayon::prelude::*;
            out.par_chunks_mut(d)
                .enumerate()
                .for_each(|(j, col)| self.column(rho, j, col));
            return;
        }
        for (j, col) in out.chunks_mut(d).enumerate() {
            self.column(rho, j, col);
        }
    }

    fn column(&self, rho: &[Complex64], j: usize, out: &mut [Complex64]) {
        let d = self.dim;
        let s = &self.sqrt;
        let at = |i: usize, j: usize| rho[i + j * d];
        // truncated a a† = diag(1, ..., d-1, 0)
        let nn = |k: usize| if k + 1 < d { (k + 1) as f64 } else { 0.0 };
        let (big_n, m, mc) = (self.n, self.m, self.m.conj());
        let n1 = big_n + 1.0;
        for (i, slot) in out.iter_mut().enumerate() {
            let decay = -0.5 * (n1 * (i + j) as f64 + big_n * (nn(i) + nn(j)));
            let mut acc = at(i, j) * decay;
            if i + 1 < d && j + 1 < d {
                acc += at(i + 1, j + 1) * (n1 * s[i + 1] * s[j + 1]);
            }
            if i >= 1 && j >= 1 {
                acc += at(i - 1, j - 1) * (big_n * s[i] * s[j]);
            }
            // ½ M* D[a]ρ
            let mut da = ZERO;
            if i + 1 < d && j >= 1 {
                da += at(i + 1, j - 1) * (s[i + 1] * s[j]);
            }
            if i + 2 < d {
                da -= at(i + 2, j) * (0.5 * s[i + 1] * s[i + 2]);
            }
            if j >= 2 {
                da -= at(i, j - 2) * (0.5 * s[j - 1] * s[j]);
            }
            // ½ M D[a†]ρ
            let mut dad = ZERO;
            if i >= 1 && j + 1 < d {
                dad += at(i - 1, j + 1) * (s[i] * s[j + 1]);
            }
            if i >= 2 {
                dad -= at(i - 2, j) * (0.5 * s[i] * s[i - 1]);
            }
            if j + 2 < d {
                dad -= at(i, j + 2) * (0.5 * s[j + 1] * s[j + 2]);
            }
            *slot = acc + mc * da + m * dad;
        }
    }

    /// Rough spectral radius from a short power iteration, used to keep the
    /// fixed RK4 step inside its stability region.
    pub fn spectral_radius_estimate(&self) -> f64 {
        let d = self.dim;
        let mut v: Vec<Complex64> = (0..d * d)
            .map(|k| {
                let x = ((k as f64) * 0.618_033_988_75).fract() - 0.5;
                let y = ((k as f64) * 0.414_213_562_37).fract() - 0.5;
                Complex64::new(x, y)
            })
            .collect();
        let mut w = vec![ZERO; d * d];
        let mut est = 0.0;
        for _ in 0..60 {
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|z| *z /= norm);
            self.apply(&v, &mut w);
            est = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            std::mem::swap(&mut v, &mut w);
        }
        est
    }
}

/// Right-hand side of the master equation (time in units of `1/γ`).
pub fn lindblad_rhs(rho: &FockDensity, n: f64, m: Complex64) -> Result<CMatrix> {
    let l = Liouvillian::new(rho.dim(), n, m)?;
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    l.apply(rho.matrix.as_slice(), out.as_mut_slice());
    Ok(out)
}

/// Fixed-step integration controls; times in units of `1/γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorCtrl {
    pub dt: f64,
    pub t_final: f64,
    /// Steps between full invariant checks (including the eigenvalue check).
    pub checkpoint_every: usize,
    /// Largest population tolerated in the top 10 % of levels.
    pub tail_tol: f64,
}

impl Default for IntegratorCtrl {
    fn default() -> Self {
        IntegratorCtrl {
            dt: 1e-3,
            t_final: 1.0,
            checkpoint_every: 100,
            tail_tol: 1e-8,
        }
    }
}

/// Invariant measurements at one checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Checkpoint {
    pub gamma_t: f64,
    pub purity: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
    pub tail_mass: f64,
    pub hermiticity_drift: f64,
}

#[derive(Debug, Clone)]
pub struct Evolution {
    /// `(γt, ρ)` at the requested sample times.
    pub snapshots: Vec<(f64, FockDensity)>,
    pub checkpoints: Vec<Checkpoint>,
    /// Step actually used (at most `ctrl.dt`).
    pub dt_used: f64,
    pub steps: usize,
}

impl Evolution {
    pub fn purities(&self) -> Vec<f64> {
        self.snapshots.iter().map(|(_, r)| r.purity()).collect()
    }

    pub fn max_trace_drift(&self) -> f64 {
        self.checkpoints
            .iter()
            .map(|c| (c.trace - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.checkpoints
            .iter()
            .map(|c| c.min_eigenvalue)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_hermiticity_drift(&self) -> f64 {
        self.checkpoints
            .iter()
            .map(|c| c.hermiticity_drift)
            .fold(0.0, f64::max)
    }
}

/// Integrates to `ctrl.t_final`, keeping a snapshot at every checkpoint.
pub fn evolve(
    rho0: &FockDensity,
    n: f64,
    m: Complex64,
    ctrl: &IntegratorCtrl,
) -> Result<Evolution> {
    let every = ctrl.checkpoint_every.max(1) as f64 * ctrl.dt;
    let count = (ctrl.t_final / every).floor() as usize;
    let mut times: Vec<f64> = (0..=count).map(|k| k as f64 * every).collect();
    if times.last().is_some_and(|&t| ctrl.t_final - t > 1e-12) {
        times.push(ctrl.t_final);
    }
    evolve_sampled(rho0, n, m, ctrl, &times)
}

/// Integrates through the ascending `times`, keeping a snapshot at each.
///
/// Every interval between sample times is covered by equal RK4 steps no
/// longer than `ctrl.dt` (shortened further when the generator's spectral
/// radius requires it). Full invariant checks run every
/// `ctrl.checkpoint_every` steps and at the last sample.
pub fn evolve_sampled(
    rho0: &FockDensity,
    n: f64,
    m: Complex64,
    ctrl: &IntegratorCtrl,
    times: &[f64],
) -> Result<Evolution> {
    if !(ctrl.dt > 0.0) {
        return Err(Error::Validation(format!(
            "dt = {} must be positive",
            ctrl.dt
        )));
    }
    if times.iter().any(|t| !(*t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Validation(
            "sample times must be non-negative and ascending".into(),
        ));
    }
    let tail = rho0.tail_population();
    if tail > ctrl.tail_tol {
        return Err(Error::Truncation {
            dim: rho0.dim(),
            tail,
            tol: ctrl.tail_tol,
        });
    }
    let liouv = Liouvillian::new(rho0.dim(), n, m)?;
    let dt = stable_step(&liouv, ctrl.dt);

    let d = rho0.dim();
    let mut rho = rho0.clone();
    let mut stepper = Rk4::new(d * d);
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut snapshots = Vec::with_capacity(times.len());
    let mut checkpoints = vec![checkpoint(&mut rho, 0.0, ctrl)?];
    let every = ctrl.checkpoint_every.max(1);

    for (idx, &target) in times.iter().enumerate() {
        let span = target - t;
        if span > 0.0 {
            let n_steps = ((span / dt) - 1e-9).ceil().max(1.0) as usize;
            let h = span / n_steps as f64;
            for k in 0..n_steps {
                stepper.step(&liouv, rho.matrix.as_mut_slice(), h);
                steps += 1;
                let now = t + (k + 1) as f64 * h;
                if steps.is_multiple_of(every) {
                    checkpoints.push(checkpoint(&mut rho, now, ctrl)?);
                }
            }
            t = target;
        }
        if idx + 1 == times.len() && checkpoints.last().is_none_or(|c| c.gamma_t != t) {
            checkpoints.push(checkpoint(&mut rho, t, ctrl)?);
        } else {
            quick_check(&rho, t, ctrl)?;
        }
        snapshots.push((target, rho.clone()));
    }
    Ok(Evolution {
        snapshots,
        checkpoints,
        dt_used: dt,
        steps,
    })
}

fn stable_step(liouv: &Liouvillian, dt: f64) -> f64 {
    // RK4 is stable for |hλ| up to ~2.8 on the real and imaginary axes
    let radius = liouv.spectral_radius_estimate();
    let h_max = 2.0 / radius.max(f64::MIN_POSITIVE);
    if dt <= h_max {
        return dt;
    }
    let split = (dt / h_max).ceil();
    log::info!(
        "dim {}: step {dt} exceeds stability bound {h_max:.3e}, using {:.3e}",
        liouv.dim(),
        dt / split
    );
    dt / split
}

fn quick_check(rho: &FockDensity, t: f64, ctrl: &IntegratorCtrl) -> Result<()> {
    let tr = rho.trace();
    if !((tr - 1.0).abs() <= TRACE_TOL) {
        return Err(Error::Integration {
            time: t,
            reason: format!("trace drifted to {tr}"),
        });
    }
    let tail = rho.tail_population();
    if tail > ctrl.tail_tol {
        return Err(Error::Truncation {
            dim: rho.dim(),
            tail,
            tol: ctrl.tail_tol,
        });
    }
    Ok(())
}

fn checkpoint(rho: &mut FockDensity, t: f64, ctrl: &IntegratorCtrl) -> Result<Checkpoint> {
    let drift = rho.hermiticity_drift();
    if drift > HERMITICITY_TOL {
        return Err(Error::Integration {
            time: t,
            reason: format!("Hermiticity drift {drift:e}"),
        });
    }
    rho.symmetrize();
    quick_check(rho, t, ctrl)?;
    let min_eig = rho.min_eigenvalue();
    if min_eig < MIN_EIGENVALUE_TOL {
        return Err(Error::Integration {
            time: t,
            reason: format!("negative eigenvalue {min_eig:e}"),
        });
    }
    Ok(Checkpoint {
        gamma_t: t,
        purity: rho.purity(),
        trace: rho.trace(),
        min_eigenvalue: min_eig,
        tail_mass: rho.tail_population(),
        hermiticity_drift: drift,
    })
}

struct Rk4 {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    tmp: Vec<Complex64>,
}

impl Rk4 {
    fn new(len: usize) -> Self {
        Rk4 {
            k1: vec![ZERO; len],
            k2: vec![ZERO; len],
            k3: vec![ZERO; len],
            k4: vec![ZERO; len],
            tmp: vec![ZERO; len],
        }
    }

    fn step(&mut self, l: &Liouvillian, y: &mut [Complex64], h: f64) {
        l.apply(y, &mut self.k1);
        axpy_into(&mut self.tmp, y, 0.5 * h, &self.k1);
        l.apply(&self.tmp, &mut self.k2);
        axpy_into(&mut self.tmp, y, 0.5 * h, &self.k2);
        l.apply(&self.tmp, &mut self.k3);
        axpy_into(&mut self.tmp, y, h, &self.k3);
        l.apply(&self.tmp, &mut self.k4);
        let w = h / 6.0;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += (self.k1[i] + 2.0 * (self.k2[i] + self.k3[i]) + self.k4[i]) * w;
        }
    }
}

fn axpy_into(out: &mut [Complex64], y: &[Complex64], a: f64, x: &[Complex64]) {
    for ((o, yi), xi) in out.iter_mut().zip(y).zip(x) {
        *o = *yi + *xi * a;
    }
}

/// Truncation for `evolve` runs from a state with at most `n_max`
/// excitations up to `t_final`: the smallest `d ≥ MIN_DIM` whose estimated
/// population in the top 10 % of levels is below `tail_tol / 10`.
///
/// The estimate takes the largest quadrature variance `λ` of `σ(t)` over
/// the run and a negative-binomial tail `C(k+n, n) (1-q)ⁿ qᵏ` with
/// `q = (λ - ½)/(λ + ½)`, `k = 0.9 d`.
pub fn recommended_dim(n_max: usize, n: f64, abs_m: f64, t_final: f64, tail_tol: f64) -> usize {
    let u = (-t_final.max(0.0)).exp();
    let lambda_inf = 0.5 + n + abs_m;
    let lambda = (0.5 * u + (1.0 - u) * lambda_inf).max(0.5);
    let q = (lambda - 0.5) / (lambda + 0.5);
    let target = tail_tol / 10.0;
    let tail = |d: usize| {
        let k = (0.9 * d as f64).floor();
        let mut binom = 1.0;
        for j in 1..=n_max {
            binom *= (k + j as f64) / j as f64;
        }
        binom * (1.0 - q).powi(n_max as i32) * q.powf(k)
    };
    let mut d = MIN_DIM.max(n_max + 10);
    while q > 0.0 && tail(d) > target && d < 2000 {
        d += 2;
    }
    d
}

/// `χ(x, p) = Tr(ρ D_α)` with `α = (x + ip)/√2`, from displaced Fock
/// columns `D|k⟩ = (a† - α*) D|k-1⟩ / √k` built on a padded space.
pub fn characteristic(rho: &FockDensity, x: f64, p: f64) -> Complex64 {
    let alpha = Complex64::new(x, p) * std::f64::consts::FRAC_1_SQRT_2;
    let d = rho.dim();
    let work = d + 40 + (8.0 * alpha.norm_sqr()).ceil() as usize;
    // coherent state |α⟩
    let mut col = vec![ZERO; work];
    col[0] = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for k in 1..work {
        col[k] = col[k - 1] * alpha / (k as f64).sqrt();
    }
    let mut chi = ZERO;
    for k in 0..d {
        if k > 0 {
            let mut next = vec![ZERO; work];
            for i in 0..work {
                let raise = if i >= 1 {
                    col[i - 1] * (i as f64).sqrt()
                } else {
                    ZERO
                };
                next[i] = (raise - alpha.conj() * col[i]) / (k as f64).sqrt();
            }
            col = next;
        }
        // Σ_l ρ[k, l] ⟨l|D|k⟩
        for (l, c) in col.iter().take(d).enumerate() {
            chi += rho.matrix[(k, l)] * c;
        }
    }
    chi
}

/// Writes checkpoint diagnostics as CSV
/// (`gamma_t,purity,trace,min_eigenvalue,tail_mass,hermiticity_drift`).
pub fn write_checkpoints_csv<W: Write>(checkpoints: &[Checkpoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for c in checkpoints {
        w.serialize(c)?;
    }
    w.flush()?;
    Ok(())
}
