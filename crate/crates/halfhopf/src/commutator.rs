//! The bilinear operator D_s(a,b) = (−Δ)^s a·b − (−Δ)^s b·a, the commutator
//! [(−Δ)^s, a], numerical probes of the commutator estimates, and the
//! fractional-divergence pairing with a band-limited surrogate kernel.
//!
//! The surrogate kernel has K̂(0) = 0 and K̂(n) = −|n|^{2s}/(2π) for
//! 0 < |n| ≤ N, so ∫(φ(x)−φ(y))K(x−y)dy reproduces the multiplier |n|^{2s}
//! exactly on trig polynomials of degree ≤ N; this turns the divergence
//! identity into pure algebra and removes singular quadrature entirely.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::energy::{sobolev_norm, wiener_norm};
use crate::error::{Error, Result};
use crate::operators::{derivative, fractional_laplacian};
use crate::spectral::CircleFunction;
use crate::variation::pair_complex;

/// Empirical envelope for the Lemma-A.3 probe ratio. The proof-derived cap
/// (2π√5.5 ≈ 14.7) mixes inhomogeneous norms whose constant is
/// convention-dependent; randomized and adversarial sweeps stay below 6.3
/// (a concentrated triple a = e^{i8θ}, b = e^{−i3θ}, φ = e^{−i5θ} reaches
/// ≈ 4.49), so the suite pins this envelope and fails on anything above it.
pub const LEMMA_A3_ENVELOPE: f64 = 2.0 * PI;

/// Proof constant of the Lemma-A.2 bound: ‖[(−Δ)^s,a]φ‖_{L²} compared to
/// ‖φ′‖_𝔸 [a]_{Ḣ^{2s−1}} stays below 2π·3^{1−2s}·√(1+s²).
pub fn lemma_a2_cap(s: f64) -> f64 {
    2.0 * PI * 3.0f64.powf(1.0 - 2.0 * s) * (1.0 + s * s).sqrt()
}

/// Proof-derived cap for the Lemma-A.3 probe: the two regime bounds (3/2
/// and 4) combine into √(3/2+4), carried against our norm conventions by
/// the 2π of the duality pairing.
pub fn lemma_a3_cap() -> f64 {
    2.0 * PI * (1.5f64 + 4.0).sqrt()
}

/// D_s(a,b) = (−Δ)^s a·b − (−Δ)^s b·a for s ∈ (0, 1/2]; antisymmetric,
/// scalar-valued (vector inputs pair through the non-Hermitian dot).
pub fn d_s(a: &CircleFunction, b: &CircleFunction, s: f64) -> Result<CircleFunction> {
    if !(s > 0.0 && s <= 0.5) {
        return Err(Error::invalid("s", format!("{s} outside (0, 1/2]")));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let first = fractional_laplacian(a, s)?.pointwise_dot(b)?;
    let second = fractional_laplacian(b, s)?.pointwise_dot(a)?;
    first.sub(&second)
}

/// [(−Δ)^s, a]φ = (−Δ)^s(aφ) − a(−Δ)^sφ, by the exact coefficient formula
/// Σ_k (|n|^{2s} − |n−k|^{2s}) â(k) φ̂(n−k); constants commute, so a
/// constant a gives the zero function bit-for-bit.
pub fn commutator_apply(
    a: &CircleFunction,
    phi: &CircleFunction,
    s: f64,
) -> Result<CircleFunction> {
    if a.dim() != 1 || phi.dim() != 1 {
        return Err(Error::invalid("a", "commutator takes scalar inputs"));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::invalid("s", format!("{s} outside (0, 1]")));
    }
    let bw = a.bandwidth() + phi.bandwidth();
    let two_s = 2.0 * s;
    let pow = |n: i64| -> f64 {
        if n == 0 {
            0.0
        } else {
            (n.unsigned_abs() as f64).powf(two_s)
        }
    };
    let mut entries = Vec::with_capacity(2 * bw + 1);
    for n in -(bw as i64)..=(bw as i64) {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in -(a.bandwidth() as i64)..=(a.bandwidth() as i64) {
            let j = n - k;
            if j.unsigned_abs() as usize > phi.bandwidth() {
                continue;
            }
            let gap = pow(n) - pow(j);
            acc += gap * a.coeff(k)[0] * phi.coeff(j)[0];
        }
        entries.push((n, vec![acc]));
    }
    CircleFunction::from_coeff_entries(bw, 1, &entries)
}

/// Leibniz defect (−Δ)^s(aφ) − ((−Δ)^s a)φ: the multiplier-gap operator
/// the commutator estimates actually bound, with coefficients
/// Σ_k â(k)φ̂(n−k)(|n|^{2s} − |k|^{2s}); it differs from the commutator by
/// [(−Δ)^s, a]φ − D_s(a, φ).
pub fn leibniz_defect(
    a: &CircleFunction,
    phi: &CircleFunction,
    s: f64,
) -> Result<CircleFunction> {
    if a.dim() != 1 || phi.dim() != 1 {
        return Err(Error::invalid("a", "leibniz defect takes scalar inputs"));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::invalid("s", format!("{s} outside (0, 1]")));
    }
    let lap_product = fractional_laplacian(&a.pointwise_dot(phi)?, s)?;
    let product_lap = fractional_laplacian(a, s)?.pointwise_dot(phi)?;
    lap_product.sub(&product_lap)
}

/// One probed instance of a commutator estimate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EstimateProbe {
    pub s: f64,
    pub lhs: f64,
    pub rhs_bound: f64,
    pub ratio: f64,
    pub constant_cap: f64,
}

impl EstimateProbe {
    pub const CSV_HEADER: &'static str = "s,lhs,rhs,ratio,cap,seed";

    pub fn csv_row(&self, seed: u64) -> String {
        format!(
            "{},{},{},{},{},{seed}",
            self.s, self.lhs, self.rhs_bound, self.ratio, self.constant_cap
        )
    }

    fn build(s: f64, lhs: f64, rhs_bound: f64, constant_cap: f64) -> Result<Self> {
        if rhs_bound == 0.0 && lhs > 1e-13 {
            return Err(Error::InvariantViolation {
                detail: format!("estimate has lhs {lhs:.3e} with vanishing bound"),
            });
        }
        let ratio = if rhs_bound > 0.0 { lhs / rhs_bound } else { 0.0 };
        Ok(EstimateProbe {
            s,
            lhs,
            rhs_bound,
            ratio,
            constant_cap,
        })
    }

    pub fn within_cap(&self) -> bool {
        self.ratio <= self.constant_cap
    }
}

/// Probe of the estimate ‖(−Δ)^s(a₀φ) − ((−Δ)^s a₀)φ‖_{L²} ≤
/// C‖φ′‖_𝔸 [a]_{Ḣ^{2s−1}}, s ∈ (0, 1/2), where a₀ = a − â(0) is the
/// mean-free part (the seminorm on the right ignores the mean, and
/// constants contribute nothing: lhs = 0 for constant a). The multiplier
/// gap |n|^{2s} − |k|^{2s} over the rough frequency k is what the proof's
/// regime splitting bounds; the plain commutator a(−Δ)^sφ variant is NOT
/// controlled by this right-hand side (a single high mode e^{iKθ} against
/// φ = e^{iθ} makes that ratio grow like K).
pub fn probe_lemma_a2(a: &CircleFunction, phi: &CircleFunction, s: f64) -> Result<EstimateProbe> {
    if !(s > 0.0 && s < 0.5) {
        return Err(Error::invalid("s", format!("{s} outside (0, 1/2)")));
    }
    if phi.bandwidth() == 0 || derivative(phi).max_coeff_norm() == 0.0 {
        return Err(Error::invalid("phi", "probe needs a nonconstant test function"));
    }
    let centered = a.sub(&CircleFunction::from_coeff_entries(
        0,
        1,
        &[(0, vec![a.coeff(0)[0]])],
    )?)?;
    let lhs = leibniz_defect(&centered, phi, s)?.l2_norm();
    let rhs = wiener_norm(&derivative(phi)) * sobolev_norm(a, 2.0 * s - 1.0).seminorm;
    EstimateProbe::build(s, lhs, rhs, lemma_a2_cap(s))
}

/// |∫ D_{1/2}(a,b) φ| against ‖(−Δ)^{3/4}φ‖_𝔸 ‖a‖_{H^{−1/2}} ‖b‖_{H^{1/2}}.
pub fn probe_lemma_a3(
    a: &CircleFunction,
    b: &CircleFunction,
    phi: &CircleFunction,
) -> Result<EstimateProbe> {
    if a.dim() != 1 || b.dim() != 1 || phi.dim() != 1 {
        return Err(Error::invalid("a", "probe takes scalar inputs"));
    }
    let lhs = pair_complex(&d_s(a, b, 0.5)?, phi)?.norm();
    let rhs = wiener_norm(&fractional_laplacian(phi, 0.75)?)
        * sobolev_norm(a, -0.5).norm
        * sobolev_norm(b, 0.5).norm;
    EstimateProbe::build(0.5, lhs, rhs, lemma_a3_cap())
}

/// Band-limited surrogate for the kernel of (−Δ)^s:
/// K̂(0) = 0, K̂(n) = −|n|^{2s}/(2π) for 0 < |n| ≤ N.
pub fn kernel_coeffs(s: f64, n: usize) -> Result<CircleFunction> {
    if !(s > 0.0 && s < 0.5) {
        return Err(Error::invalid("s", format!("{s} outside (0, 1/2)")));
    }
    if n == 0 {
        return Err(Error::invalid("N", "kernel band must be at least 1"));
    }
    let entries: Vec<(i64, Vec<Complex64>)> = (1..=n as i64)
        .flat_map(|k| {
            let v = Complex64::new(-((k as f64).powf(2.0 * s)) / (2.0 * PI), 0.0);
            [(k, vec![v]), (-k, vec![v])]
        })
        .collect();
    CircleFunction::from_coeff_entries(n, 1, &entries)
}

/// ∬ a(x) b(y) (φ(x) − φ(y)) K^s_N(x−y) dx dy by exact trigonometric
/// quadrature with the surrogate kernel at band N_a+N_b+N_φ. For
/// band-limited inputs this equals ∫ D_s(a,b) φ to roundoff; presentations
/// that write the identity as twice a fractional divergence absorb the
/// factor two in the symmetrization of the double integral.
pub fn fractional_divergence_pairing(
    a: &CircleFunction,
    b: &CircleFunction,
    phi: &CircleFunction,
    s: f64,
    m: usize,
) -> Result<Complex64> {
    if a.dim() != 1 || b.dim() != 1 || phi.dim() != 1 {
        return Err(Error::invalid("a", "pairing takes scalar inputs"));
    }
    let band = a.bandwidth() + b.bandwidth() + phi.bandwidth();
    let required = 2 * band + 1;
    if m < required {
        return Err(Error::QuadratureResolution { got: m, required });
    }
    let kernel = kernel_coeffs(s, band.max(1))?;
    let ka = a.to_samples(m);
    let kb = b.to_samples(m);
    let kphi = phi.to_samples(m);
    let kk = kernel.to_samples(m);
    let w = 2.0 * PI / m as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        for l in 0..m {
            let t = (j as i64 - l as i64).rem_euclid(m as i64) as usize;
            acc += ka[j] * kb[l] * (kphi[j] - kphi[l]) * kk[t];
        }
    }
    Ok(acc * w * w)
}
