//! Truncated vector-valued Fourier series on the circle.
//!
//! The coefficient convention is û(n) = (1/2π) ∫₀^{2π} u(θ) e^{−inθ} dθ, so
//! Parseval reads ∫|u|² = 2π Σₙ |û(n)|². Coefficients are stored two-sided
//! for n ∈ [−N, N]; a real-valued function keeps û(−n) = conj(û(n)) exactly
//! (the mirror is enforced bit-for-bit by every constructor that produces
//! real data, and the `real` flag is recomputed from the stored bits).
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to use from many threads.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative out-of-band energy above which strict sampling constructors
/// reject the input as aliased. With M = 2N+1 samples there are no
/// out-of-band bins and aliasing is undetectable; supply more samples to get
/// the check.
pub const ALIASING_TOLERANCE: f64 = 1e-10;

/// Frequency half of the circle, used by `freq_projection`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqPart {
    /// Frequencies n ≥ 1.
    Positive,
    /// Frequencies n ≤ 0.
    Nonpositive,
}

/// A trigonometric polynomial θ ↦ Σ_{|n|≤N} û(n) e^{inθ} with values in ℂ^k.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFunction {
    bandwidth: usize,
    dim: usize,
    real: bool,
    /// Row-major: entry for frequency n, component d sits at
    /// `(n + N) * dim + d`.
    coeffs: Vec<Complex64>,
}

impl CircleFunction {
    // ---------------------------------------------------------------------
    // Constructors
    // ---------------------------------------------------------------------

    pub fn zero(bandwidth: usize, dim: usize) -> Self {
        assert!(dim >= 1, "dim must be at least 1");
        CircleFunction {
            bandwidth,
            dim,
            real: true,
            coeffs: vec![Complex64::new(0.0, 0.0); (2 * bandwidth + 1) * dim],
        }
    }

    /// Constant real function with the given value.
    pub fn constant(value: &[f64]) -> Self {
        let mut f = CircleFunction::zero(0, value.len());
        for (d, v) in value.iter().enumerate() {
            f.coeffs[d] = Complex64::new(*v, 0.0);
        }
        f
    }

    /// Scalar complex exponential e^{inθ}.
    pub fn fourier_mode(n: i64) -> Self {
        let bw = n.unsigned_abs() as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * bw + 1];
        coeffs[(n + bw as i64) as usize] = Complex64::new(1.0, 0.0);
        CircleFunction::from_coeffs(bw, 1, coeffs).expect("valid by construction")
    }

    /// Scalar cos(nθ).
    pub fn cosine(n: u32) -> Self {
        let n = n as i64;
        let mut f = CircleFunction::zero(n as usize, 1);
        if n == 0 {
            f.coeffs[0] = Complex64::new(1.0, 0.0);
        } else {
            let half = Complex64::new(0.5, 0.0);
            f.set_mirrored(n, 0, half);
        }
        f.real = true;
        f
    }

    /// Scalar sin(nθ).
    pub fn sine(n: u32) -> Self {
        let n = n as i64;
        let mut f = CircleFunction::zero(n as usize, 1);
        if n > 0 {
            // sin nθ = (e^{inθ} − e^{−inθ}) / 2i, so û(n) = −i/2.
            f.set_mirrored(n, 0, Complex64::new(0.0, -0.5));
        }
        f.real = true;
        f
    }

    /// Assembles a function from explicit coefficient entries; unlisted
    /// frequencies are zero. The reality flag is detected from the result.
    pub fn from_coeff_entries(
        bandwidth: usize,
        dim: usize,
        entries: &[(i64, Vec<Complex64>)],
    ) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (2 * bandwidth + 1) * dim];
        for (n, v) in entries {
            if n.unsigned_abs() as usize > bandwidth {
                return Err(Error::invalid(
                    "entries",
                    format!("frequency {n} outside bandwidth {bandwidth}"),
                ));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: v.len(),
                    right: dim,
                });
            }
            let base = ((n + bandwidth as i64) as usize) * dim;
            coeffs[base..base + dim].copy_from_slice(v);
        }
        CircleFunction::from_coeffs(bandwidth, dim, coeffs)
    }

    /// Wraps a raw coefficient table (length (2N+1)·k, frequency-major).
    pub fn from_coeffs(bandwidth: usize, dim: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim", "must be at least 1"));
        }
        if coeffs.len() != (2 * bandwidth + 1) * dim {
            return Err(Error::invalid(
                "coeffs",
                format!(
                    "expected {} entries for bandwidth {bandwidth}, dim {dim}, got {}",
                    (2 * bandwidth + 1) * dim,
                    coeffs.len()
                ),
            ));
        }
        let mut f = CircleFunction {
            bandwidth,
            dim,
            real: false,
            coeffs,
        };
        f.real = f.is_hermitian_exact();
        Ok(f)
    }

    /// Discrete Fourier analysis of M ≥ 2N+1 uniform complex samples at
    /// θ_j = 2πj/M (flattened sample-major: `samples[j*dim + d]`). Rejects
    /// inputs whose out-of-band bins carry more than `ALIASING_TOLERANCE` of
    /// the total energy.
    pub fn from_samples(samples: &[Complex64], dim: usize, bandwidth: usize) -> Result<Self> {
        let (f, out_fraction) = Self::from_samples_truncated(samples, dim, bandwidth)?;
        if out_fraction > ALIASING_TOLERANCE {
            return Err(Error::AliasingDetected {
                bandwidth,
                fraction: out_fraction,
            });
        }
        Ok(f)
    }

    /// Same as `from_samples` for real-valued samples; the coefficient
    /// mirror û(−n) = conj(û(n)) is enforced exactly.
    pub fn from_samples_real(samples: &[f64], dim: usize, bandwidth: usize) -> Result<Self> {
        let complex: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let (f, out_fraction) = Self::from_samples_real_truncated(&complex, dim, bandwidth)?;
        if out_fraction > ALIASING_TOLERANCE {
            return Err(Error::AliasingDetected {
                bandwidth,
                fraction: out_fraction,
            });
        }
        Ok(f)
    }

    /// Truncating analysis: returns the bandwidth-N part plus the fraction
    /// of sample energy discarded from out-of-band bins. Used by resampling
    /// operations (composition, pointwise projection) where truncation is
    /// intended and the tail is reported rather than rejected.
    pub fn from_samples_truncated(
        samples: &[Complex64],
        dim: usize,
        bandwidth: usize,
    ) -> Result<(Self, f64)> {
        let spectra = Self::sample_spectra(samples, dim, bandwidth)?;
        let m = samples.len() / dim;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (2 * bandwidth + 1) * dim];
        for (d, spec) in spectra.iter().enumerate() {
            for n in -(bandwidth as i64)..=(bandwidth as i64) {
                let bin = n.rem_euclid(m as i64) as usize;
                coeffs[((n + bandwidth as i64) as usize) * dim + d] = spec[bin];
            }
        }
        let out_fraction = Self::out_of_band_fraction(&spectra, m, bandwidth);
        let f = CircleFunction::from_coeffs(bandwidth, dim, coeffs)?;
        Ok((f, out_fraction))
    }

    /// Real-sample variant of `from_samples_truncated`; coefficients for
    /// n < 0 are stored as exact conjugates of their positive partners.
    pub fn from_samples_real_truncated(
        samples: &[Complex64],
        dim: usize,
        bandwidth: usize,
    ) -> Result<(Self, f64)> {
        let spectra = Self::sample_spectra(samples, dim, bandwidth)?;
        let m = samples.len() / dim;
        let mut f = CircleFunction::zero(bandwidth, dim);
        for (d, spec) in spectra.iter().enumerate() {
            f.coeffs[bandwidth * dim + d] = Complex64::new(spec[0].re, 0.0);
            for n in 1..=bandwidth as i64 {
                let bin = (n as usize) % m;
                f.set_mirrored(n, d, spec[bin]);
            }
        }
        let out_fraction = Self::out_of_band_fraction(&spectra, m, bandwidth);
        f.real = true;
        debug_assert!(f.is_hermitian_exact());
        Ok((f, out_fraction))
    }

    fn sample_spectra(
        samples: &[Complex64],
        dim: usize,
        bandwidth: usize,
    ) -> Result<Vec<Vec<Complex64>>> {
        if dim == 0 || samples.len() % dim != 0 {
            return Err(Error::invalid("samples", "length must be a multiple of dim"));
        }
        let m = samples.len() / dim;
        let required = 2 * bandwidth + 1;
        if m < required {
            return Err(Error::InsufficientSamples {
                bandwidth,
                required,
                got: m,
            });
        }
        let mut spectra = Vec::with_capacity(dim);
        for d in 0..dim {
            let mut buf: Vec<Complex64> = (0..m).map(|j| samples[j * dim + d]).collect();
            dft::forward(&mut buf);
            let scale = 1.0 / m as f64;
            for v in &mut buf {
                *v *= scale;
            }
            spectra.push(buf);
        }
        Ok(spectra)
    }

    fn out_of_band_fraction(spectra: &[Vec<Complex64>], m: usize, bandwidth: usize) -> f64 {
        let mut total = 0.0;
        let mut out = 0.0;
        for spec in spectra {
            for (bin, v) in spec.iter().enumerate() {
                let freq = if bin <= m / 2 { bin } else { m - bin };
                let e = v.norm_sqr();
                total += e;
                if freq > bandwidth {
                    out += e;
                }
            }
        }
        if total > 0.0 {
            out / total
        } else {
            0.0
        }
    }

    // ---------------------------------------------------------------------
    // Accessors
    // ---------------------------------------------------------------------

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Coefficient vector û(n); zero outside [−N, N].
    pub fn coeff(&self, n: i64) -> &[Complex64] {
        if n.unsigned_abs() as usize > self.bandwidth {
            &ZERO_COEFF[..self.dim.min(ZERO_COEFF.len())]
        } else {
            let base = ((n + self.bandwidth as i64) as usize) * self.dim;
            &self.coeffs[base..base + self.dim]
        }
    }

    pub fn coeff_component(&self, n: i64, d: usize) -> Complex64 {
        self.coeff(n)[d]
    }

    /// Iterates (n, û(n)) over n = −N..N.
    pub fn iter_coeffs(&self) -> impl Iterator<Item = (i64, &[Complex64])> {
        let bw = self.bandwidth as i64;
        (-bw..=bw).map(move |n| (n, self.coeff(n)))
    }

    fn set_mirrored(&mut self, n: i64, d: usize, value: Complex64) {
        debug_assert!(n > 0);
        let bw = self.bandwidth as i64;
        self.coeffs[((n + bw) as usize) * self.dim + d] = value;
        self.coeffs[((-n + bw) as usize) * self.dim + d] = value.conj();
    }

    fn is_hermitian_exact(&self) -> bool {
        for d in 0..self.dim {
            if self.coeff_component(0, d).im != 0.0 {
                return false;
            }
            for n in 1..=self.bandwidth as i64 {
                if self.coeff_component(-n, d) != self.coeff_component(n, d).conj() {
                    return false;
                }
            }
        }
        true
    }

    // ---------------------------------------------------------------------
    // Sampling / evaluation
    // ---------------------------------------------------------------------

    /// Evaluates at M uniform angles θ_j = 2πj/M (flattened sample-major).
    /// Exact inverse of `from_samples` when M ≥ 2N+1.
    pub fn to_samples(&self, m: usize) -> Vec<Complex64> {
        assert!(m >= 1, "sample count must be positive");
        let mut out = vec![Complex64::new(0.0, 0.0); m * self.dim];
        for d in 0..self.dim {
            let mut bins = vec![Complex64::new(0.0, 0.0); m];
            // Folding frequencies mod M matches evaluation of the finite
            // series on the grid exactly, for any M.
            for (n, c) in self.iter_coeffs() {
                bins[n.rem_euclid(m as i64) as usize] += c[d];
            }
            dft::inverse(&mut bins);
            for j in 0..m {
                out[j * self.dim + d] = bins[j];
            }
        }
        out
    }

    /// Real samples; requires the reality flag.
    pub fn to_samples_real(&self, m: usize) -> Result<Vec<f64>> {
        if !self.real {
            return Err(Error::invalid("self", "function is not real-valued"));
        }
        Ok(self.to_samples(m).iter().map(|z| z.re).collect())
    }

    /// Pointwise evaluation at an arbitrary angle.
    pub fn eval_at_angle(&self, theta: f64) -> Vec<Complex64> {
        self.eval_at_unit(Complex64::from_polar(1.0, theta))
    }

    /// Evaluates the series at a point w on the unit circle (|w| is
    /// renormalized to 1): Σ û(n) wⁿ with w^{−n} = conj(w)ⁿ.
    pub fn eval_at_unit(&self, w: Complex64) -> Vec<Complex64> {
        let w = if w.norm() > 0.0 { w / w.norm() } else { w };
        let mut acc: Vec<Complex64> = self.coeff(0).to_vec();
        let mut pos = Complex64::new(1.0, 0.0);
        let mut neg = Complex64::new(1.0, 0.0);
        let wc = w.conj();
        for n in 1..=self.bandwidth as i64 {
            pos *= w;
            neg *= wc;
            let cp = self.coeff(n);
            let cm = self.coeff(-n);
            for d in 0..self.dim {
                acc[d] += cp[d] * pos + cm[d] * neg;
            }
        }
        acc
    }

    // ---------------------------------------------------------------------
    // Algebra
    // ---------------------------------------------------------------------

    pub fn add(&self, other: &CircleFunction) -> Result<CircleFunction> {
        self.zip_linear(other, 1.0)
    }

    pub fn sub(&self, other: &CircleFunction) -> Result<CircleFunction> {
        self.zip_linear(other, -1.0)
    }

    fn zip_linear(&self, other: &CircleFunction, sign: f64) -> Result<CircleFunction> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let bw = self.bandwidth.max(other.bandwidth);
        let mut out = CircleFunction::zero(bw, self.dim);
        for n in -(bw as i64)..=(bw as i64) {
            let base = ((n + bw as i64) as usize) * self.dim;
            let a = self.coeff(n);
            let b = other.coeff(n);
            for d in 0..self.dim {
                out.coeffs[base + d] = a[d] + sign * b[d];
            }
        }
        out.real = out.is_hermitian_exact();
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> CircleFunction {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= factor;
        }
        // Scaling by a real factor preserves the exact mirror.
        out
    }

    pub fn scale_complex(&self, factor: Complex64) -> CircleFunction {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= factor;
        }
        out.real = out.is_hermitian_exact();
        out
    }

    /// Restriction to frequencies |n| ≤ new_bandwidth (or zero-padding when
    /// the bandwidth grows).
    pub fn truncate(&self, new_bandwidth: usize) -> CircleFunction {
        let mut out = CircleFunction::zero(new_bandwidth, self.dim);
        let keep = new_bandwidth.min(self.bandwidth) as i64;
        for n in -keep..=keep {
            let base = ((n + new_bandwidth as i64) as usize) * self.dim;
            out.coeffs[base..base + self.dim].copy_from_slice(self.coeff(n));
        }
        out.real = out.is_hermitian_exact();
        out
    }

    /// Extracts component d as a scalar function.
    pub fn component(&self, d: usize) -> CircleFunction {
        assert!(d < self.dim);
        let bw = self.bandwidth;
        let coeffs: Vec<Complex64> = (-(bw as i64)..=bw as i64)
            .map(|n| self.coeff_component(n, d))
            .collect();
        CircleFunction::from_coeffs(bw, 1, coeffs).expect("valid by construction")
    }

    /// Stacks scalar functions into one vector-valued function.
    pub fn from_components(parts: &[CircleFunction]) -> Result<CircleFunction> {
        if parts.is_empty() {
            return Err(Error::invalid("parts", "need at least one component"));
        }
        let bw = parts.iter().map(|p| p.bandwidth).max().unwrap();
        let dim = parts.len();
        let mut out = CircleFunction::zero(bw, dim);
        for (d, p) in parts.iter().enumerate() {
            if p.dim != 1 {
                return Err(Error::DimensionMismatch {
                    left: p.dim,
                    right: 1,
                });
            }
            for n in -(bw as i64)..=(bw as i64) {
                out.coeffs[((n + bw as i64) as usize) * dim + d] = p.coeff_component(n, 0);
            }
        }
        out.real = out.is_hermitian_exact();
        Ok(out)
    }

    /// Scalar-valued pointwise product f·g by exact coefficient convolution
    /// with the non-Hermitian dot on ℂ^k; the result has bandwidth N_f+N_g.
    pub fn pointwise_dot(&self, other: &CircleFunction) -> Result<CircleFunction> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let bw = self.bandwidth + other.bandwidth;
        let mut out = CircleFunction::zero(bw, 1);
        let both_real = self.real && other.real;
        let lo = if both_real { 0 } else { -(bw as i64) };
        for n in lo..=(bw as i64) {
            let mut acc = Complex64::new(0.0, 0.0);
            let m_min = (-(self.bandwidth as i64)).max(n - other.bandwidth as i64);
            let m_max = (self.bandwidth as i64).min(n + other.bandwidth as i64);
            for m in m_min..=m_max {
                let a = self.coeff(m);
                let b = other.coeff(n - m);
                for d in 0..self.dim {
                    acc += a[d] * b[d];
                }
            }
            if both_real && n > 0 {
                out.set_mirrored(n, 0, acc);
            } else if both_real && n == 0 {
                out.coeffs[bw] = Complex64::new(acc.re, 0.0);
            } else {
                out.coeffs[(n + bw as i64) as usize] = acc;
            }
        }
        out.real = if both_real {
            true
        } else {
            out.is_hermitian_exact()
        };
        Ok(out)
    }

    /// Pointwise product of a scalar function with a vector-valued one.
    pub fn scalar_mul(scalar: &CircleFunction, vector: &CircleFunction) -> Result<CircleFunction> {
        if scalar.dim != 1 {
            return Err(Error::DimensionMismatch {
                left: scalar.dim,
                right: 1,
            });
        }
        let parts: Vec<CircleFunction> = (0..vector.dim)
            .map(|d| scalar.pointwise_dot(&vector.component(d)))
            .collect::<Result<_>>()?;
        CircleFunction::from_components(&parts)
    }

    // ---------------------------------------------------------------------
    // Norms
    // ---------------------------------------------------------------------

    /// ‖f‖_{L²} = (∫|f|²)^{1/2} = (2π Σ|û(n)|²)^{1/2}.
    pub fn l2_norm(&self) -> f64 {
        (2.0 * PI * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// Mean value û(0).
    pub fn mean(&self) -> Vec<Complex64> {
        self.coeff(0).to_vec()
    }

    /// Largest coefficient magnitude, componentwise.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

static ZERO_COEFF: [Complex64; 16] = [Complex64::new(0.0, 0.0); 16];

// -------------------------------------------------------------------------
// JSON representation
// -------------------------------------------------------------------------

/// Wire format: {"bandwidth": N, "dim": k, "real": bool,
/// "coeffs": [[n, [[re, im], ...k entries]], ...]} listed for n = −N..N.
#[derive(Serialize, Deserialize)]
struct CircleFunctionWire {
    bandwidth: usize,
    dim: usize,
    real: bool,
    coeffs: Vec<(i64, Vec<[f64; 2]>)>,
}

impl Serialize for CircleFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .iter_coeffs()
            .map(|(n, c)| (n, c.iter().map(|z| [z.re, z.im]).collect()))
            .collect();
        CircleFunctionWire {
            bandwidth: self.bandwidth,
            dim: self.dim,
            real: self.real,
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CircleFunction {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let wire = CircleFunctionWire::deserialize(deserializer)?;
        CircleFunction::try_from_wire(wire).map_err(serde::de::Error::custom)
    }
}

impl CircleFunction {
    fn try_from_wire(wire: CircleFunctionWire) -> Result<Self> {
        let n = wire.bandwidth;
        if wire.dim == 0 {
            return Err(Error::Schema {
                context: "CircleFunction.dim".into(),
                detail: "dim must be at least 1".into(),
            });
        }
        if wire.coeffs.len() != 2 * n + 1 {
            return Err(Error::Schema {
                context: "CircleFunction.coeffs".into(),
                detail: format!("expected {} entries, got {}", 2 * n + 1, wire.coeffs.len()),
            });
        }
        let mut seen = vec![false; 2 * n + 1];
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (2 * n + 1) * wire.dim];
        for (idx, (freq, vals)) in wire.coeffs.iter().enumerate() {
            if freq.unsigned_abs() as usize > n {
                return Err(Error::Schema {
                    context: format!("CircleFunction.coeffs[{idx}]"),
                    detail: format!("frequency {freq} outside [−{n}, {n}]"),
                });
            }
            let slot = (freq + n as i64) as usize;
            if seen[slot] {
                return Err(Error::Schema {
                    context: format!("CircleFunction.coeffs[{idx}]"),
                    detail: format!("duplicate frequency {freq}"),
                });
            }
            seen[slot] = true;
            if vals.len() != wire.dim {
                return Err(Error::Schema {
                    context: format!("CircleFunction.coeffs[{idx}]"),
                    detail: format!("expected {} components, got {}", wire.dim, vals.len()),
                });
            }
            for (d, v) in vals.iter().enumerate() {
                if !v[0].is_finite() || !v[1].is_finite() {
                    return Err(Error::Schema {
                        context: format!("CircleFunction.coeffs[{idx}][{d}]"),
                        detail: "non-finite coefficient".into(),
                    });
                }
                coeffs[slot * wire.dim + d] = Complex64::new(v[0], v[1]);
            }
        }
        let mut f = CircleFunction {
            bandwidth: n,
            dim: wire.dim,
            real: false,
            coeffs,
        };
        if wire.real {
            // Validate approximate symmetry, then enforce the storage
            // convention exactly (positive frequencies win).
            let scale = 1.0_f64.max(f.max_coeff_norm());
            for d in 0..f.dim {
                let z0 = f.coeff_component(0, d);
                if z0.im.abs() > 1e-10 * scale {
                    return Err(Error::Schema {
                        context: "CircleFunction.coeffs".into(),
                        detail: format!("real flag set but û(0)[{d}] has imaginary part {}", z0.im),
                    });
                }
                for freq in 1..=n as i64 {
                    let diff = (f.coeff_component(-freq, d) - f.coeff_component(freq, d).conj())
                        .norm();
                    if diff > 1e-10 * scale {
                        return Err(Error::Schema {
                            context: "CircleFunction.coeffs".into(),
                            detail: format!(
                                "real flag set but û({}) deviates from conj(û({})) by {diff:.3e}",
                                -freq, freq
                            ),
                        });
                    }
                }
            }
            for d in 0..f.dim {
                let z0 = f.coeff_component(0, d);
                f.coeffs[n * f.dim + d] = Complex64::new(z0.re, 0.0);
                for freq in 1..=n as i64 {
                    let v = f.coeff_component(freq, d);
                    f.set_mirrored(freq, d, v);
                }
            }
            f.real = true;
        } else {
            f.real = f.is_hermitian_exact();
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

// -------------------------------------------------------------------------
// FFT plumbing
// -------------------------------------------------------------------------

mod dft {
    use super::*;
    use rustfft::FftPlanner;

    thread_local! {
        static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
    }

    /// Unnormalized forward transform: X[k] = Σ_j x[j] e^{−2πi jk/M}.
    pub fn forward(buf: &mut [Complex64]) {
        PLANNER.with(|p| {
            let fft = p.borrow_mut().plan_fft_forward(buf.len());
            fft.process(buf);
        });
    }

    /// Unnormalized inverse transform: x[j] = Σ_k X[k] e^{+2πi jk/M}.
    pub fn inverse(buf: &mut [Complex64]) {
        PLANNER.with(|p| {
            let fft = p.borrow_mut().plan_fft_inverse(buf.len());
            fft.process(buf);
        });
    }
}

/// Trapezoid (= rectangle, by periodicity) quadrature of ∫|f|² on M uniform
/// samples; exact for trig polynomials when M ≥ 2N+1.
pub fn quadrature_l2_sq(f: &CircleFunction, m: usize) -> f64 {
    let samples = f.to_samples(m);
    let w = 2.0 * PI / m as f64;
    samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * w
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent O(M²) transform used as the oracle for the FFT path.
    fn dft_oracle(samples: &[Complex64], dim: usize, n: i64) -> Vec<Complex64> {
        let m = samples.len() / dim;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for j in 0..m {
            let theta = 2.0 * PI * j as f64 / m as f64;
            let phase = Complex64::from_polar(1.0, -(n as f64) * theta);
            for d in 0..dim {
                out[d] += samples[j * dim + d] * phase;
            }
        }
        for v in &mut out {
            *v /= m as f64;
        }
        out
    }

    fn sample_fn(m: usize, dim: usize, f: impl Fn(f64) -> Vec<Complex64>) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(m * dim);
        for j in 0..m {
            let theta = 2.0 * PI * j as f64 / m as f64;
            out.extend(f(theta));
        }
        out
    }

    #[test]
    fn constant_samples_transform() {
        let samples = sample_fn(8, 2, |_| vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let f = CircleFunction::from_samples(&samples, 2, 2).unwrap();
        assert_eq!(f.coeff(0)[0], Complex64::new(1.0, 0.0));
        assert_eq!(f.coeff(0)[1], Complex64::new(0.0, 0.0));
        for n in [-2i64, -1, 1, 2] {
            assert!(f.coeff(n).iter().all(|c| c.norm() < 1e-15));
        }
        assert!(f.is_real());
    }

    #[test]
    fn cosine_samples_transform() {
        let samples = sample_fn(8, 1, |t| vec![Complex64::new(t.cos(), 0.0)]);
        let f = CircleFunction::from_samples(&samples, 1, 2).unwrap();
        assert_relative_eq!(f.coeff(1)[0].re, 0.5, max_relative = 1e-14);
        assert_relative_eq!(f.coeff(-1)[0].re, 0.5, max_relative = 1e-14);
        assert!(f.coeff(1)[0].im.abs() < 1e-15);
        assert!(f.coeff(2)[0].norm() < 1e-15);
        // Cross-check against the independent direct transform.
        let oracle = dft_oracle(&samples, 1, 1);
        assert_relative_eq!(f.coeff(1)[0].re, oracle[0].re, max_relative = 1e-12);
    }

    #[test]
    fn bandwidth_violation_detected() {
        let samples = sample_fn(8, 1, |t| {
            vec![Complex64::from_polar(1.0, 3.0 * t)]
        });
        let err = CircleFunction::from_samples(&samples, 1, 2).unwrap_err();
        assert!(matches!(err, Error::AliasingDetected { .. }), "{err}");
    }

    #[test]
    fn too_few_samples_rejected() {
        let samples = sample_fn(4, 1, |t| vec![Complex64::new(t.cos(), 0.0)]);
        let err = CircleFunction::from_samples(&samples, 1, 2).unwrap_err();
        assert!(matches!(err, Error::InsufficientSamples { .. }));
    }

    #[test]
    fn to_samples_of_cosine() {
        let f = CircleFunction::cosine(1);
        let s = f.to_samples(4);
        let expected = [1.0, 0.0, -1.0, 0.0];
        for (z, e) in s.iter().zip(expected) {
            assert_relative_eq!(z.re, e, epsilon = 1e-14);
            assert!(z.im.abs() < 1e-14);
        }
    }

    #[test]
    fn to_samples_constant_and_zero() {
        let c = CircleFunction::constant(&[2.0, 3.0]);
        let s = c.to_samples(3);
        for j in 0..3 {
            assert_eq!(s[2 * j].re, 2.0);
            assert_eq!(s[2 * j + 1].re, 3.0);
        }
        let z = CircleFunction::zero(4, 1);
        assert!(z.to_samples(5).iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn pointwise_dot_cos_squared() {
        let f = CircleFunction::cosine(1);
        let p = f.pointwise_dot(&f).unwrap();
        // cos²θ = 1/2 + cos(2θ)/2
        assert_relative_eq!(p.coeff(0)[0].re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(p.coeff(2)[0].re, 0.25, epsilon = 1e-15);
        assert_relative_eq!(p.coeff(-2)[0].re, 0.25, epsilon = 1e-15);
        assert!(p.coeff(1)[0].norm() < 1e-16);
        assert_eq!(p.bandwidth(), 2);
        assert!(p.is_real());
    }

    #[test]
    fn pointwise_dot_orthogonal_frame() {
        let f = CircleFunction::from_components(&[CircleFunction::cosine(1), CircleFunction::sine(1)])
            .unwrap();
        let g = CircleFunction::from_components(&[
            CircleFunction::sine(1).scale(-1.0),
            CircleFunction::cosine(1),
        ])
        .unwrap();
        let p = f.pointwise_dot(&g).unwrap();
        assert!(p.max_coeff_norm() < 1e-16);
    }

    #[test]
    fn pointwise_dot_exponentials() {
        let e1 = CircleFunction::fourier_mode(1);
        let p = e1.pointwise_dot(&e1).unwrap();
        assert_eq!(p.coeff(2)[0], Complex64::new(1.0, 0.0));
        assert!(p.coeff(0)[0].norm() == 0.0);
    }

    #[test]
    fn roundtrip_identity() {
        let f = CircleFunction::from_coeff_entries(
            3,
            2,
            &[
                (0, vec![Complex64::new(0.3, 0.0), Complex64::new(-1.0, 0.0)]),
                (2, vec![Complex64::new(0.1, -0.4), Complex64::new(0.0, 0.2)]),
                (-2, vec![Complex64::new(0.1, 0.4), Complex64::new(0.0, -0.2)]),
            ],
        )
        .unwrap();
        let samples = f.to_samples(2 * 3 + 1);
        let g = CircleFunction::from_samples(&samples, 2, 3).unwrap();
        for (n, c) in f.iter_coeffs() {
            for d in 0..2 {
                assert_relative_eq!(g.coeff(n)[d].re, c[d].re, epsilon = 1e-13);
                assert_relative_eq!(g.coeff(n)[d].im, c[d].im, epsilon = 1e-13);
            }
        }
        assert!(f.is_real());
        assert!(g.is_real());
    }

    #[test]
    fn parseval_against_quadrature() {
        let f = CircleFunction::from_coeff_entries(
            2,
            1,
            &[
                (0, vec![Complex64::new(1.0, 0.0)]),
                (1, vec![Complex64::new(0.5, 0.25)]),
                (-1, vec![Complex64::new(0.5, -0.25)]),
                (2, vec![Complex64::new(-0.3, 0.1)]),
                (-2, vec![Complex64::new(-0.3, -0.1)]),
            ],
        )
        .unwrap();
        let lhs = f.l2_norm().powi(2);
        let rhs = quadrature_l2_sq(&f, 2 * f.bandwidth() + 1);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }

    #[test]
    fn json_roundtrip_and_schema_checks() {
        let f = CircleFunction::from_components(&[CircleFunction::cosine(1), CircleFunction::sine(2)])
            .unwrap();
        let text = f.to_json();
        let g = CircleFunction::from_json(&text).unwrap();
        assert_eq!(f, g);

        // missing frequency
        let bad = r#"{"bandwidth":1,"dim":1,"real":false,"coeffs":[[0,[[1.0,0.0]]],[1,[[0.0,0.0]]]]}"#;
        assert!(CircleFunction::from_json(bad).is_err());
        // duplicate frequency
        let bad = r#"{"bandwidth":1,"dim":1,"real":false,"coeffs":[[0,[[1,0]]],[0,[[0,0]]],[1,[[0,0]]]]}"#;
        assert!(CircleFunction::from_json(bad).is_err());
        // asymmetric but marked real
        let bad = r#"{"bandwidth":1,"dim":1,"real":true,"coeffs":[[-1,[[0.5,0.0]]],[0,[[0,0]]],[1,[[0.25,0.0]]]]}"#;
        assert!(CircleFunction::from_json(bad).is_err());
    }

    #[test]
    fn eval_at_angle_matches_grid() {
        let f = CircleFunction::from_components(&[CircleFunction::cosine(2), CircleFunction::sine(3)])
            .unwrap();
        let m = 9;
        let grid = f.to_samples(m);
        for j in 0..m {
            let theta = 2.0 * PI * j as f64 / m as f64;
            let v = f.eval_at_angle(theta);
            for d in 0..2 {
                assert_relative_eq!(v[d].re, grid[j * 2 + d].re, epsilon = 1e-12);
                assert_relative_eq!(v[d].im, grid[j * 2 + d].im, epsilon = 1e-12);
            }
        }
    }
}
