//! Exactly stationary fixtures (Blaschke traces, scaling families) and a
//! projected gradient flow onto sphere-valued stationary points.
//!
//! A finite Blaschke product is holomorphic on the disc, so its boundary
//! trace, realified into ℝ², is weakly conformal and therefore an exact
//! stationary point: û(m)·û(n) = 0 for all m, n ≥ 1 after realification.
//! The degree-d trace has energy 2π·d.
//!
//! The flow iterates u ← Π(u − step·P_T(−Δ)^{1/2}u), where P_T v =
//! v − (v·u)u is the pointwise tangential projection and Π the pointwise
//! normalization onto the sphere; the tangential residual ‖P_T(−Δ)^{1/2}u‖
//! is the convergence certificate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::energy::energy_spectral;
use crate::error::{Error, Result};
use crate::hopf::stationarity_residual;
use crate::operators::fractional_laplacian;
use crate::spectral::CircleFunction;

/// Samples with |u| below this cannot be normalized onto the sphere.
pub const PROJECTION_THRESHOLD: f64 = 1e-8;

/// Coefficient-tail bound the Blaschke constructor enforces at bandwidth N.
pub const BLASCHKE_TAIL_BOUND: f64 = 1e-14;

/// ℝ²-valued boundary trace of μ·Π_j (z − a_j)/(ā_j z − 1), sampled and
/// transformed at bandwidth `n`. Errors when some |a_j| ≥ 1 or when the
/// geometric coefficient tail at N is not yet below `BLASCHKE_TAIL_BOUND`.
///
/// With this factor normalization a single zero at the origin gives the
/// trace of −z; the identity trace (cos θ, sin θ) is `zeros = [0]`,
/// `mu = −1`.
pub fn blaschke_trace(zeros: &[Complex64], mu: Complex64, n: usize) -> Result<CircleFunction> {
    for (j, a) in zeros.iter().enumerate() {
        if !(a.norm() < 1.0) {
            return Err(Error::invalid(
                "zeros",
                format!("|a_{j}| = {} must stay below 1", a.norm()),
            ));
        }
    }
    if (mu.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("mu", format!("|mu| = {} must be 1", mu.norm())));
    }
    if n == 0 && !zeros.is_empty() {
        return Err(Error::invalid("n", "bandwidth 0 cannot carry a nonconstant trace"));
    }
    // Sample on a grid wide enough to expose the (N, 2N] tail.
    let m = 4 * n + 5;
    let samples: Vec<Complex64> = (0..m)
        .map(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
            let mut w = mu;
            for a in zeros {
                w *= (z - a) / (a.conj() * z - Complex64::new(1.0, 0.0));
            }
            w
        })
        .collect();
    let check_bw = (2 * n).min((m - 1) / 2);
    let (full, _) = CircleFunction::from_samples_truncated(&samples, 1, check_bw)?;
    let mut tail = 0.0f64;
    for (k, c) in full.iter_coeffs() {
        if k.unsigned_abs() as usize > n {
            tail = tail.max(c[0].norm());
        }
    }
    if tail > BLASCHKE_TAIL_BOUND {
        return Err(Error::TailMass {
            fraction: tail,
            limit: BLASCHKE_TAIL_BOUND,
            bandwidth: n,
        });
    }
    // Realify: u = (Re B, Im B) with the exact coefficient mirror.
    let mut re_entries = Vec::with_capacity(2 * n + 1);
    let mut im_entries = Vec::with_capacity(2 * n + 1);
    let b0 = full.coeff(0)[0];
    re_entries.push((0i64, vec![Complex64::new(b0.re, 0.0)]));
    im_entries.push((0i64, vec![Complex64::new(b0.im, 0.0)]));
    for k in 1..=n as i64 {
        let plus = full.coeff(k)[0];
        let minus = full.coeff(-k)[0];
        let re_k = (plus + minus.conj()) * 0.5;
        let im_k = (plus - minus.conj()) * Complex64::new(0.0, -0.5);
        re_entries.push((k, vec![re_k]));
        re_entries.push((-k, vec![re_k.conj()]));
        im_entries.push((k, vec![im_k]));
        im_entries.push((-k, vec![im_k.conj()]));
    }
    let re = CircleFunction::from_coeff_entries(n, 1, &re_entries)?;
    let im = CircleFunction::from_coeff_entries(n, 1, &im_entries)?;
    CircleFunction::from_components(&[re, im])
}

/// û_r(n) = r^{|n|} û(n): damps toward the mean while preserving
/// stationarity; the Hopf coefficients scale as c_k(u_r) = r^k c_k(u).
pub fn scaling_family(f: &CircleFunction, r: f64) -> Result<CircleFunction> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::invalid("r", format!("{r} outside (0, 1]")));
    }
    let mut entries = Vec::with_capacity(2 * f.bandwidth() + 1);
    for (n, c) in f.iter_coeffs() {
        let damp = r.powi(n.unsigned_abs() as i32);
        entries.push((n, c.iter().map(|z| z * damp).collect()));
    }
    CircleFunction::from_coeff_entries(f.bandwidth(), f.dim(), &entries)
}

/// Result of a pointwise sphere projection.
#[derive(Debug, Clone)]
pub struct Projected {
    pub func: CircleFunction,
    pub tail_fraction: f64,
}

/// Normalizes every sample onto the unit sphere on an oversampled grid and
/// re-truncates to the input bandwidth, reporting the discarded tail.
pub fn sphere_project(f: &CircleFunction, oversample: usize) -> Result<Projected> {
    if !f.is_real() {
        return Err(Error::invalid("f", "sphere projection needs a real-valued function"));
    }
    if oversample < 2 {
        return Err(Error::invalid("oversample", "must be at least 2"));
    }
    let m = oversample * (2 * f.bandwidth() + 1);
    let samples = f.to_samples(m);
    let dim = f.dim();
    let mut normalized = Vec::with_capacity(m * dim);
    for j in 0..m {
        let row = &samples[j * dim..(j + 1) * dim];
        let norm = row.iter().map(|z| z.re * z.re).sum::<f64>().sqrt();
        if norm < PROJECTION_THRESHOLD {
            return Err(Error::ProjectionUndefined { magnitude: norm });
        }
        normalized.extend(row.iter().map(|z| Complex64::new(z.re / norm, 0.0)));
    }
    let (func, tail_fraction) =
        CircleFunction::from_samples_real_truncated(&normalized, dim, f.bandwidth())?;
    Ok(Projected {
        func,
        tail_fraction,
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FlowConfig {
    pub step: f64,
    pub max_iter: usize,
    pub tol: f64,
    pub oversample: usize,
    pub bandwidth: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            step: 0.01,
            max_iter: 50_000,
            tol: 1e-6,
            oversample: 8,
            bandwidth: 48,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step >= 0.0 && self.step.is_finite()) {
            return Err(Error::invalid("step", "must be a finite nonnegative number"));
        }
        if self.step * self.bandwidth as f64 > 1.0 + 1e-12 {
            // explicit-step stability heuristic: the top multiplier is N
            return Err(Error::invalid(
                "step",
                format!("step·bandwidth = {} exceeds 1", self.step * self.bandwidth as f64),
            ));
        }
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tol", "must be positive"));
        }
        if self.oversample < 2 {
            return Err(Error::invalid("oversample", "must be at least 2"));
        }
        if self.bandwidth == 0 {
            return Err(Error::invalid("bandwidth", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FlowRow {
    pub iteration: usize,
    pub energy: f64,
    pub tangential_residual: f64,
    pub stationarity_residual: f64,
    /// Step in force when the row was recorded (halved on rejected steps).
    pub step: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowTrajectory {
    pub rows: Vec<FlowRow>,
    pub converged: bool,
    pub final_function: CircleFunction,
}

/// Projected gradient flow for sphere-valued stationary points. The initial
/// function is resampled to the configured bandwidth and projected onto the
/// sphere before the first iteration. Backtracking halves the step whenever
/// the energy would increase beyond roundoff slack.
pub fn run_flow(f0: &CircleFunction, cfg: &FlowConfig) -> Result<FlowTrajectory> {
    cfg.validate()?;
    let resampled = f0.truncate(cfg.bandwidth);
    let mut u = sphere_project(&resampled, cfg.oversample)?.func;
    let mut step = cfg.step;
    let mut rows = Vec::new();
    let mut converged = false;
    let m = cfg.oversample * (2 * cfg.bandwidth + 1);
    let dim = u.dim();

    for iteration in 0..=cfg.max_iter {
        let lu = fractional_laplacian(&u, 0.5)?;
        let us = u.to_samples(m);
        let ls = lu.to_samples(m);
        let mut tangential = vec![0.0; m * dim];
        let mut residual_sq = 0.0;
        for j in 0..m {
            let urow = &us[j * dim..(j + 1) * dim];
            let lrow = &ls[j * dim..(j + 1) * dim];
            let dot: f64 = urow
                .iter()
                .zip(lrow)
                .map(|(a, b)| a.re * b.re)
                .sum();
            for d in 0..dim {
                let t = lrow[d].re - dot * urow[d].re;
                tangential[j * dim + d] = t;
                residual_sq += t * t;
            }
        }
        let residual = (2.0 * PI / m as f64 * residual_sq).sqrt();
        let energy = energy_spectral(&u);
        rows.push(FlowRow {
            iteration,
            energy,
            tangential_residual: residual,
            stationarity_residual: stationarity_residual(&u),
            step,
        });
        if residual <= cfg.tol {
            converged = true;
            break;
        }
        if iteration == cfg.max_iter {
            break;
        }

        // One explicit step with energy backtracking.
        let slack = 1e-12 * (1.0 + energy.abs());
        let mut vals = vec![0.0f64; dim];
        loop {
            let mut moved = Vec::with_capacity(m * dim);
            for j in 0..m {
                let row = &us[j * dim..(j + 1) * dim];
                let mut norm_sq = 0.0;
                for d in 0..dim {
                    let v = row[d].re - step * tangential[j * dim + d];
                    vals[d] = v;
                    norm_sq += v * v;
                }
                let norm = norm_sq.sqrt();
                if norm < PROJECTION_THRESHOLD {
                    return Err(Error::ProjectionUndefined { magnitude: norm });
                }
                for d in 0..dim {
                    moved.push(Complex64::new(vals[d] / norm, 0.0));
                }
            }
            let (candidate, _) =
                CircleFunction::from_samples_real_truncated(&moved, dim, cfg.bandwidth)?;
            let energy_next = energy_spectral(&candidate);
            if energy_next <= energy + slack || step == 0.0 {
                u = candidate;
                break;
            }
            step *= 0.5;
            if step < 1e-15 {
                return Err(Error::StepTooLarge { step });
            }
        }
    }

    Ok(FlowTrajectory {
        rows,
        converged,
        final_function: u,
    })
}
