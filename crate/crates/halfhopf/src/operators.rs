//! Fourier-multiplier operators and disc-interior evaluation of harmonic
//! extensions.
//!
//! (−Δ)^s acts as û(n) ↦ |n|^{2s} û(n); the Hilbert transform as
//! û(n) ↦ −i·sgn(n) û(n). The harmonic extension of a boundary function is
//! ũ(r,θ) = Σ r^{|n|} e^{inθ} û(n), and its radial derivative on the
//! boundary coincides with (−Δ)^{1/2}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{CircleFunction, FreqPart};

/// A point of the closed unit disc in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    r: f64,
    theta: f64,
}

impl DiskPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) || !r.is_finite() || !theta.is_finite() {
            return Err(Error::invalid("r", format!("radius {r} outside [0, 1]")));
        }
        Ok(DiskPoint { r, theta })
    }

    pub fn from_cartesian(x: f64, y: f64) -> Result<Self> {
        DiskPoint::new(x.hypot(y), y.atan2(x))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

/// Applies a frequency multiplier. Reality is preserved exactly whenever
/// m(−n) = conj(m(n)) bit-for-bit, which holds for all multipliers below;
/// the stored flag is recomputed from the result either way.
fn apply_multiplier(f: &CircleFunction, m: impl Fn(i64) -> Complex64) -> CircleFunction {
    let bw = f.bandwidth() as i64;
    let mut entries = Vec::with_capacity((2 * bw + 1) as usize);
    for (n, c) in f.iter_coeffs() {
        let factor = m(n);
        entries.push((n, c.iter().map(|z| z * factor).collect()));
    }
    CircleFunction::from_coeff_entries(f.bandwidth(), f.dim(), &entries)
        .expect("valid by construction")
}

/// |n|^{2s} with exact fast paths for the exponents used throughout
/// (2s = 1 must reproduce |n| bit-for-bit so that the radial-derivative
/// route agrees coefficientwise).
fn power_multiplier(n: i64, two_s: f64) -> f64 {
    let a = n.unsigned_abs() as f64;
    if n == 0 {
        0.0
    } else if two_s == 1.0 {
        a
    } else if two_s == 2.0 {
        a * a
    } else {
        a.powf(two_s)
    }
}

/// The fractional Laplacian (−Δ)^s, s ∈ (0, 1]: û(n) ↦ |n|^{2s} û(n).
pub fn fractional_laplacian(f: &CircleFunction, s: f64) -> Result<CircleFunction> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::invalid("s", format!("{s} outside (0, 1]")));
    }
    let two_s = 2.0 * s;
    Ok(apply_multiplier(f, |n| {
        Complex64::new(power_multiplier(n, two_s), 0.0)
    }))
}

/// Hilbert transform: û(n) ↦ −i·sgn(n) û(n); kills the mean.
pub fn hilbert_transform(f: &CircleFunction) -> CircleFunction {
    apply_multiplier(f, |n| Complex64::new(0.0, -(n.signum() as f64)))
}

/// d/dθ: û(n) ↦ in·û(n).
pub fn derivative(f: &CircleFunction) -> CircleFunction {
    apply_multiplier(f, |n| Complex64::new(0.0, n as f64))
}

/// Zeroes the complementary frequency half; u = u₊ + u₋ exactly.
pub fn freq_projection(f: &CircleFunction, part: FreqPart) -> CircleFunction {
    apply_multiplier(f, |n| {
        let keep = match part {
            FreqPart::Positive => n > 0,
            FreqPart::Nonpositive => n <= 0,
        };
        Complex64::new(if keep { 1.0 } else { 0.0 }, 0.0)
    })
}

/// û(n) ↦ |n|û(n); the boundary value of ∂_r of the harmonic extension,
/// equal to (−Δ)^{1/2} coefficientwise.
pub fn radial_derivative_boundary(f: &CircleFunction) -> CircleFunction {
    apply_multiplier(f, |n| Complex64::new(power_multiplier(n, 1.0), 0.0))
}

/// Evaluates the harmonic extension ũ(r,θ) = Σ r^{|n|} e^{inθ} û(n).
pub fn harmonic_extension_eval(f: &CircleFunction, p: DiskPoint) -> Vec<Complex64> {
    let mut acc: Vec<Complex64> = f.coeff(0).to_vec();
    let w = Complex64::from_polar(1.0, p.theta());
    let wc = w.conj();
    let mut pos = Complex64::new(1.0, 0.0);
    let mut neg = Complex64::new(1.0, 0.0);
    let mut radial = 1.0;
    for n in 1..=f.bandwidth() as i64 {
        pos *= w;
        neg *= wc;
        radial *= p.r();
        let cp = f.coeff(n);
        let cm = f.coeff(-n);
        for d in 0..f.dim() {
            acc[d] += radial * (cp[d] * pos + cm[d] * neg);
        }
    }
    acc
}

/// ∂_z of the harmonic extension at z, |z| ≤ 1: Σ_{n≥1} n z^{n−1} û(n).
/// Antiholomorphic terms contribute nothing, so only positive frequencies
/// enter.
pub fn dz_extension_eval(f: &CircleFunction, z: Complex64) -> Result<Vec<Complex64>> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::invalid("z", format!("|z| = {} exceeds 1", z.norm())));
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); f.dim()];
    let mut zpow = Complex64::new(1.0, 0.0); // z^{n-1}
    for n in 1..=f.bandwidth() as i64 {
        let c = f.coeff(n);
        let factor = zpow * n as f64;
        for d in 0..f.dim() {
            acc[d] += factor * c[d];
        }
        zpow *= z;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::CircleFunction;
    use approx::assert_relative_eq;

    #[test]
    fn laplacian_multipliers() {
        let c = CircleFunction::constant(&[4.0]);
        assert_eq!(fractional_laplacian(&c, 0.5).unwrap().max_coeff_norm(), 0.0);

        let f = CircleFunction::cosine(1);
        let lf = fractional_laplacian(&f, 0.5).unwrap();
        assert_eq!(lf, f); // multiplier |±1| = 1

        let g = CircleFunction::cosine(2);
        let lg = fractional_laplacian(&g, 0.5).unwrap();
        assert_eq!(lg.coeff(2)[0].re, 1.0); // 2 · 1/2
        assert_eq!(lg.coeff(-2)[0].re, 1.0);
        assert!(lg.is_real());
    }

    #[test]
    fn laplacian_rejects_bad_s() {
        let f = CircleFunction::cosine(1);
        assert!(fractional_laplacian(&f, 0.0).is_err());
        assert!(fractional_laplacian(&f, 1.5).is_err());
    }

    #[test]
    fn multiplier_composition() {
        let f = CircleFunction::from_coeff_entries(
            8,
            1,
            &[
                (3, vec![Complex64::new(0.2, -0.7)]),
                (-3, vec![Complex64::new(0.2, 0.7)]),
                (8, vec![Complex64::new(-1.0, 0.1)]),
                (-8, vec![Complex64::new(-1.0, -0.1)]),
            ],
        )
        .unwrap();
        let twice = fractional_laplacian(&fractional_laplacian(&f, 0.25).unwrap(), 0.25).unwrap();
        let once = fractional_laplacian(&f, 0.5).unwrap();
        for (n, c) in twice.iter_coeffs() {
            let e = once.coeff(n)[0];
            assert_relative_eq!(c[0].re, e.re, max_relative = 1e-14, epsilon = 1e-300);
            assert_relative_eq!(c[0].im, e.im, max_relative = 1e-14, epsilon = 1e-300);
        }
    }

    #[test]
    fn hilbert_basics() {
        // H(cos θ) = sin θ
        let h = hilbert_transform(&CircleFunction::cosine(1));
        assert_eq!(h, CircleFunction::sine(1));
        // H(constant) = 0
        let h = hilbert_transform(&CircleFunction::constant(&[3.0]));
        assert_eq!(h.max_coeff_norm(), 0.0);
        // H(sin 2θ) = −cos 2θ
        let h = hilbert_transform(&CircleFunction::sine(2));
        assert_eq!(h, CircleFunction::cosine(2).scale(-1.0));
    }

    #[test]
    fn hilbert_squared_is_negative_meanless_identity() {
        let f = CircleFunction::from_coeff_entries(
            3,
            1,
            &[
                (0, vec![Complex64::new(2.0, 0.0)]),
                (1, vec![Complex64::new(0.5, -0.25)]),
                (-1, vec![Complex64::new(0.5, 0.25)]),
                (3, vec![Complex64::new(-0.1, 0.8)]),
                (-3, vec![Complex64::new(-0.1, -0.8)]),
            ],
        )
        .unwrap();
        let hh = hilbert_transform(&hilbert_transform(&f));
        for (n, c) in hh.iter_coeffs() {
            let expected = if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                -f.coeff(n)[0]
            };
            assert_eq!(c[0], expected);
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            derivative(&CircleFunction::cosine(1)),
            CircleFunction::sine(1).scale(-1.0)
        );
        assert_eq!(
            derivative(&CircleFunction::constant(&[5.0])).max_coeff_norm(),
            0.0
        );
        let d = derivative(&CircleFunction::fourier_mode(3));
        assert_eq!(d.coeff(3)[0], Complex64::new(0.0, 3.0));
    }

    #[test]
    fn projections_split_exactly() {
        let f = CircleFunction::cosine(1);
        let plus = freq_projection(&f, FreqPart::Positive);
        assert_eq!(plus.coeff(1)[0], Complex64::new(0.5, 0.0));
        assert_eq!(plus.coeff(-1)[0], Complex64::new(0.0, 0.0));

        let only_mean = CircleFunction::constant(&[1.5]);
        assert_eq!(
            freq_projection(&only_mean, FreqPart::Positive).max_coeff_norm(),
            0.0
        );

        let s = CircleFunction::sine(1);
        let minus = freq_projection(&s, FreqPart::Nonpositive);
        assert_eq!(minus.coeff(-1)[0], Complex64::new(0.0, 0.5));
        assert_eq!(minus.coeff(1)[0], Complex64::new(0.0, 0.0));

        let sum = plus
            .add(&freq_projection(&f, FreqPart::Nonpositive))
            .unwrap();
        assert_eq!(sum, f);
    }

    #[test]
    fn radial_derivative_equals_half_laplacian() {
        let f = CircleFunction::from_coeff_entries(
            5,
            2,
            &[
                (2, vec![Complex64::new(0.3, 0.4), Complex64::new(0.0, -1.0)]),
                (-2, vec![Complex64::new(0.3, -0.4), Complex64::new(0.0, 1.0)]),
                (5, vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.5)]),
                (-5, vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.5)]),
            ],
        )
        .unwrap();
        assert_eq!(
            radial_derivative_boundary(&f),
            fractional_laplacian(&f, 0.5).unwrap()
        );
        let g = CircleFunction::cosine(2);
        let r = radial_derivative_boundary(&g);
        assert_eq!(r.coeff(2)[0].re, 1.0);
        assert_eq!(
            radial_derivative_boundary(&CircleFunction::constant(&[1.0])).max_coeff_norm(),
            0.0
        );
    }

    #[test]
    fn extension_evaluation() {
        // e^{2iθ} at (r=1/2, θ=0) → 1/4
        let f = CircleFunction::fourier_mode(2);
        let v = harmonic_extension_eval(&f, DiskPoint::new(0.5, 0.0).unwrap());
        assert_relative_eq!(v[0].re, 0.25, epsilon = 1e-15);
        assert!(v[0].im.abs() < 1e-15);

        // constants extend to themselves
        let c = CircleFunction::constant(&[2.0, -1.0]);
        let v = harmonic_extension_eval(&c, DiskPoint::new(0.7, 1.3).unwrap());
        assert_eq!(v[0].re, 2.0);
        assert_eq!(v[1].re, -1.0);

        // cos θ extends to r cos θ
        let f = CircleFunction::cosine(1);
        for (r, theta) in [(0.25, 0.7), (0.9, 4.0)] {
            let v = harmonic_extension_eval(&f, DiskPoint::new(r, theta).unwrap());
            assert_relative_eq!(v[0].re, r * theta.cos(), epsilon = 1e-14);
        }

        // boundary evaluation agrees with the series at r = 1
        let g = CircleFunction::from_components(&[CircleFunction::cosine(2), CircleFunction::sine(1)])
            .unwrap();
        let v = harmonic_extension_eval(&g, DiskPoint::new(1.0, 0.4).unwrap());
        let b = g.eval_at_angle(0.4);
        for d in 0..2 {
            assert_relative_eq!(v[d].re, b[d].re, epsilon = 1e-13);
        }
    }

    #[test]
    fn dz_extension_examples() {
        // ũ(z) = z has ∂_z ≡ 1
        let f = CircleFunction::fourier_mode(1);
        let v = dz_extension_eval(&f, Complex64::new(0.3, 0.2)).unwrap();
        assert_eq!(v[0], Complex64::new(1.0, 0.0));

        let c = CircleFunction::constant(&[7.0]);
        let v = dz_extension_eval(&c, Complex64::new(0.1, 0.0)).unwrap();
        assert_eq!(v[0], Complex64::new(0.0, 0.0));

        // e^{2iθ}: ∂_z(z²) = 2z, at z = 1/2 → 1
        let f = CircleFunction::fourier_mode(2);
        let v = dz_extension_eval(&f, Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(v[0].re, 1.0, epsilon = 1e-15);

        assert!(dz_extension_eval(&f, Complex64::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn extension_is_harmonic_by_stencil() {
        // Five-point discrete Laplacian of the extension decays like h²;
        // Richardson slope across three spacings must be at least 1.9.
        let f = CircleFunction::from_coeff_entries(
            4,
            1,
            &[
                (1, vec![Complex64::new(0.4, -0.1)]),
                (-1, vec![Complex64::new(0.4, 0.1)]),
                (3, vec![Complex64::new(-0.2, 0.3)]),
                (-3, vec![Complex64::new(-0.2, -0.3)]),
                (4, vec![Complex64::new(0.05, 0.0)]),
                (-4, vec![Complex64::new(0.05, 0.0)]),
            ],
        )
        .unwrap();
        let eval = |x: f64, y: f64| -> f64 {
            harmonic_extension_eval(&f, DiskPoint::from_cartesian(x, y).unwrap())[0].re
        };
        let (x0, y0) = (0.31, -0.22);
        let stencil = |h: f64| -> f64 {
            (eval(x0 + h, y0) + eval(x0 - h, y0) + eval(x0, y0 + h) + eval(x0, y0 - h)
                - 4.0 * eval(x0, y0))
                / (h * h)
        };
        let hs = [0.04, 0.02, 0.01];
        let vals: Vec<f64> = hs.iter().map(|&h| stencil(h).abs()).collect();
        for pair in vals.windows(2) {
            let order = (pair[0] / pair[1]).log2();
            assert!(order >= 1.9, "observed order {order}, values {vals:?}");
        }
    }
}
