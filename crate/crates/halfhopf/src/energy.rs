//! The half Dirichlet energy E½(u) = ∫|(−Δ)^{1/4}u|² in spectral and
//! double-integral form, plus the Sobolev and Wiener norms used by the
//! commutator estimates.
//!
//! Norm conventions (the constant inside ‖·‖_{H^s} is ours and is used
//! consistently everywhere): ‖f‖²_{H^s} = Σ (1+|n|²)^s |û(n)|² and
//! [f]²_{Ḣ^s} = Σ_{n≠0} |n|^{2s} |û(n)|², with no 2π factor.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::CircleFunction;

/// E½(u) = 2π Σ |n| |û(n)|² (Parseval applied to ∫|(−Δ)^{1/4}u|²).
pub fn energy_spectral(f: &CircleFunction) -> f64 {
    let mut sum = 0.0;
    for (n, c) in f.iter_coeffs() {
        let weight = n.unsigned_abs() as f64;
        sum += weight * c.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    2.0 * PI * sum
}

/// Gagliardo double-integral form
/// (1/2π) ∬ |u(x)−u(y)|² / |e^{ix}−e^{iy}|² dx dy,
/// with the chordal distance |e^{ix}−e^{iy}|² = 4 sin²((x−y)/2).
///
/// x runs over M uniform angles and y over the half-cell-shifted grid, so
/// the (removable) diagonal singularity is never touched. Converges to
/// `energy_spectral` as M grows.
pub fn energy_gagliardo(f: &CircleFunction, m: usize) -> Result<f64> {
    let required = 4 * f.bandwidth();
    if m < required.max(2) {
        return Err(Error::QuadratureResolution {
            got: m,
            required: required.max(2),
        });
    }
    let dim = f.dim();
    let xs = f.to_samples(m);
    // Half-cell shift: modulate coefficients by e^{inπ/M} and resample.
    let shifted = {
        let bw = f.bandwidth() as i64;
        let entries: Vec<(i64, Vec<Complex64>)> = f
            .iter_coeffs()
            .map(|(n, c)| {
                let phase = Complex64::from_polar(1.0, n as f64 * PI / m as f64);
                (n, c.iter().map(|z| z * phase).collect())
            })
            .collect();
        let _ = bw;
        CircleFunction::from_coeff_entries(f.bandwidth(), dim, &entries)
            .expect("valid by construction")
            .to_samples(m)
    };
    // 4 sin²((x_j − y_l)/2) depends only on j − l.
    let inv_den: Vec<f64> = (0..m as i64)
        .map(|t| {
            let half = PI * (t as f64 - 0.5) / m as f64;
            1.0 / (4.0 * half.sin().powi(2))
        })
        .collect();
    let mut sum = 0.0;
    for j in 0..m {
        for l in 0..m {
            let mut num = 0.0;
            for d in 0..dim {
                num += (xs[j * dim + d] - shifted[l * dim + d]).norm_sqr();
            }
            let t = (j as i64 - l as i64).rem_euclid(m as i64) as usize;
            sum += num * inv_den[t];
        }
    }
    let w = 2.0 * PI / m as f64;
    Ok(sum * w * w / (2.0 * PI))
}

/// Inhomogeneous norm and homogeneous seminorm of order s, returned as a
/// pair (the lemma statements use the norm, the proofs the seminorm).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevNorm {
    pub norm: f64,
    pub seminorm: f64,
}

pub fn sobolev_norm(f: &CircleFunction, s: f64) -> SobolevNorm {
    let mut norm_sq = 0.0;
    let mut semi_sq = 0.0;
    for (n, c) in f.iter_coeffs() {
        let mag = c.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let n_abs = n.unsigned_abs() as f64;
        norm_sq += (1.0 + n_abs * n_abs).powf(s) * mag;
        if n != 0 {
            semi_sq += n_abs.powf(2.0 * s) * mag;
        }
    }
    SobolevNorm {
        norm: norm_sq.sqrt(),
        seminorm: semi_sq.sqrt(),
    }
}

/// Wiener-algebra norm Σ |û(n)| (Euclidean length of each coefficient).
pub fn wiener_norm(f: &CircleFunction) -> f64 {
    f.iter_coeffs()
        .map(|(_, c)| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .sum()
}

/// Norm summary attached to analysis reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormReport {
    pub energy_gagliardo: f64,
    pub energy_spectral: f64,
    /// Entries (s, inhomogeneous, homogeneous seminorm).
    pub sobolev: Vec<(f64, f64, f64)>,
    pub wiener: f64,
}

impl NormReport {
    /// `gagliardo_mult` scales the quadrature grid: M = mult · (2N+1).
    pub fn compute(f: &CircleFunction, gagliardo_mult: usize, s_values: &[f64]) -> Result<Self> {
        let m = (gagliardo_mult.max(4)) * (2 * f.bandwidth() + 1);
        Ok(NormReport {
            energy_gagliardo: energy_gagliardo(f, m)?,
            energy_spectral: energy_spectral(f),
            sobolev: s_values
                .iter()
                .map(|&s| {
                    let v = sobolev_norm(f, s);
                    (s, v.norm, v.seminorm)
                })
                .collect(),
            wiener: wiener_norm(f),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spectral_energy_examples() {
        assert_eq!(energy_spectral(&CircleFunction::constant(&[3.0, -1.0])), 0.0);

        let circle = CircleFunction::from_components(&[
            CircleFunction::cosine(1),
            CircleFunction::sine(1),
        ])
        .unwrap();
        assert_relative_eq!(energy_spectral(&circle), 2.0 * PI, max_relative = 1e-14);

        assert_relative_eq!(
            energy_spectral(&CircleFunction::cosine(1)),
            PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn gagliardo_exact_for_unit_exponential() {
        // |e^{ix} − e^{iy}|² cancels the chordal denominator exactly, so
        // every quadrature node contributes 1 and the value is exact.
        let f = CircleFunction::fourier_mode(1);
        let e = energy_gagliardo(&f, 16).unwrap();
        assert_relative_eq!(e, 2.0 * PI, max_relative = 1e-13);
    }

    #[test]
    fn gagliardo_zero_for_constants() {
        let f = CircleFunction::constant(&[2.5]);
        assert_eq!(energy_gagliardo(&f, 8).unwrap(), 0.0);
    }

    #[test]
    fn gagliardo_converges_to_spectral() {
        let f = CircleFunction::cosine(2);
        let spectral = energy_spectral(&f); // 2π·2·(1/4+1/4) = 2π
        assert_relative_eq!(spectral, 2.0 * PI, max_relative = 1e-14);
        let e = energy_gagliardo(&f, 256).unwrap();
        assert!((e - spectral).abs() / spectral < 0.01);
    }

    #[test]
    fn gagliardo_rejects_coarse_grid() {
        let f = CircleFunction::cosine(4);
        assert!(matches!(
            energy_gagliardo(&f, 8),
            Err(Error::QuadratureResolution { .. })
        ));
    }

    #[test]
    fn sobolev_examples() {
        let c = CircleFunction::constant(&[2.0]);
        let v = sobolev_norm(&c, -0.5);
        assert_relative_eq!(v.norm, 2.0, epsilon = 1e-15);
        assert_eq!(v.seminorm, 0.0);

        let v = sobolev_norm(&CircleFunction::cosine(1), 0.0);
        assert_relative_eq!(v.norm, (0.5f64).sqrt(), epsilon = 1e-15);

        let v = sobolev_norm(&CircleFunction::fourier_mode(2), 0.5);
        assert_relative_eq!(v.seminorm, (2.0f64).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn wiener_examples() {
        assert_relative_eq!(
            wiener_norm(&CircleFunction::constant(&[0.0, 3.0, 4.0])),
            5.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(wiener_norm(&CircleFunction::cosine(1)), 1.0, epsilon = 1e-15);
        let f = CircleFunction::fourier_mode(3)
            .add(&CircleFunction::fourier_mode(-5))
            .unwrap();
        assert_relative_eq!(wiener_norm(&f), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn rotation_leaves_spectral_energy_unchanged() {
        let f = CircleFunction::from_components(&[CircleFunction::cosine(2), CircleFunction::sine(3)])
            .unwrap();
        let alpha = 0.83;
        let rotated: Vec<(i64, Vec<Complex64>)> = f
            .iter_coeffs()
            .map(|(n, c)| {
                let phase = Complex64::from_polar(1.0, n as f64 * alpha);
                (n, c.iter().map(|z| z * phase).collect())
            })
            .collect();
        let g = CircleFunction::from_coeff_entries(f.bandwidth(), f.dim(), &rotated).unwrap();
        assert_relative_eq!(
            energy_spectral(&g),
            energy_spectral(&f),
            max_relative = 1e-14
        );
    }
}
