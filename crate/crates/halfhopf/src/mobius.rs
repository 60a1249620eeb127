//! Disc automorphisms m_{a,μ}(z) = μ(z−a)/(āz−1), their boundary traces,
//! composition of circle functions with the trace diffeomorphisms, and the
//! conformal-invariance checks.
//!
//! Note the sign of the normalization: the identity map is m_{0,−1} and
//! m_{0,1} is z ↦ −z. The formula is taken as normative and disc
//! preservation is verified numerically rather than re-deriving the
//! classical μ(z−a)/(1−āz) form.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::fractional_laplacian;
use crate::spectral::CircleFunction;

/// Holomorphic automorphism of the unit disc.
///
/// JSON form: {"a": [re, im], "mu": [re, im]}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    a: Complex64,
    mu: Complex64,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct MobiusMapWire {
    a: [f64; 2],
    mu: [f64; 2],
}

impl serde::Serialize for MobiusMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MobiusMapWire {
            a: [self.a.re, self.a.im],
            mu: [self.mu.re, self.mu.im],
        }
        .serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for MobiusMap {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let wire = MobiusMapWire::deserialize(deserializer)?;
        MobiusMap::new(
            Complex64::new(wire.a[0], wire.a[1]),
            Complex64::new(wire.mu[0], wire.mu[1]),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl MobiusMap {
    pub fn new(a: Complex64, mu: Complex64) -> Result<Self> {
        if !(a.norm() < 1.0 - 1e-12) {
            return Err(Error::invalid("a", format!("|a| = {} must stay below 1", a.norm())));
        }
        if (mu.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("mu", format!("|mu| = {} must be 1", mu.norm())));
        }
        Ok(MobiusMap { a, mu })
    }

    /// The identity automorphism (a = 0, μ = −1 under this normalization).
    pub fn identity() -> Self {
        MobiusMap {
            a: Complex64::new(0.0, 0.0),
            mu: Complex64::new(-1.0, 0.0),
        }
    }

    /// Rotation by α: boundary trace θ ↦ θ + α.
    pub fn rotation(alpha: f64) -> Self {
        MobiusMap {
            a: Complex64::new(0.0, 0.0),
            mu: -Complex64::from_polar(1.0, alpha),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.mu * (z - self.a) / (self.a.conj() * z - Complex64::new(1.0, 0.0))
    }

    /// Group inverse: m_{a,μ}^{−1} = m_{μa, conj(μ)}.
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.mu * self.a,
            mu: self.mu.conj(),
        }
    }
}

/// Composition of maps: (m1 * m2)(z) = m1(m2(z)).
impl Mul for MobiusMap {
    type Output = MobiusMap;

    fn mul(self, inner: MobiusMap) -> MobiusMap {
        let (a1, mu1) = (self.a, self.mu);
        let (a2, mu2) = (inner.a, inner.mu);
        let denom = mu2 - a1 * a2.conj();
        let a = (mu2 * a2 - a1) / denom;
        let mu = mu1 * denom / (a1.conj() * mu2 * a2 - Complex64::new(1.0, 0.0));
        // the composite stays in the group; renormalize |mu| against drift
        let mu = mu / mu.norm();
        MobiusMap { a, mu }
    }
}

/// Boundary-trace angle arg m(e^{iθ}), reduced to [0, 2π). Computed from
/// the closed-form image rather than by unwinding, so branch cuts of atan2
/// never contaminate the value.
pub fn boundary_trace(m: &MobiusMap, theta: f64) -> f64 {
    let w = m.apply(Complex64::from_polar(1.0, theta));
    debug_assert!((w.norm() - 1.0).abs() < 1e-9, "trace left the circle");
    w.im.atan2(w.re).rem_euclid(2.0 * PI)
}

/// |∂_θ of the boundary trace| = (1−|a|²)/|āe^{iθ}−1|², strictly positive.
pub fn trace_jacobian(m: &MobiusMap, theta: f64) -> f64 {
    let z = Complex64::from_polar(1.0, theta);
    let den = (m.a.conj() * z - Complex64::new(1.0, 0.0)).norm_sqr();
    (1.0 - m.a.norm_sqr()) / den
}

/// Boundary field of the dilation family a_t = e^{iδ}t:
/// the trig polynomial 2 sin(δ−x), bandwidth 1.
pub fn dilation_field(delta: f64) -> CircleFunction {
    // 2 sin(δ−x) = 2 sin δ cos x − 2 cos δ sin x, so X̂(1) = sin δ + i cos δ.
    CircleFunction::from_coeff_entries(
        1,
        1,
        &[
            (1, vec![Complex64::new(delta.sin(), delta.cos())]),
            (-1, vec![Complex64::new(delta.sin(), -delta.cos())]),
        ],
    )
    .expect("valid by construction")
}

/// Result of composing with a boundary trace: the truncated series plus the
/// fraction of sample energy discarded by the truncation.
#[derive(Debug, Clone)]
pub struct Composed {
    pub func: CircleFunction,
    pub tail_fraction: f64,
}

/// u∘φ for φ the boundary trace of m: samples u at the image points on an
/// oversample·(2·n_out+1) grid, transforms, truncates to n_out. Compositions
/// are never band-limited, so the discarded tail is measured and an
/// excessive tail (above `tail_limit` of total energy) is an error.
pub fn compose(
    f: &CircleFunction,
    m: &MobiusMap,
    oversample: usize,
    n_out: usize,
    tail_limit: f64,
) -> Result<Composed> {
    if oversample < 4 {
        return Err(Error::invalid("oversample", "must be at least 4"));
    }
    let grid = oversample * (2 * n_out + 1);
    let mut samples = Vec::with_capacity(grid * f.dim());
    for j in 0..grid {
        let theta = 2.0 * PI * j as f64 / grid as f64;
        let w = m.apply(Complex64::from_polar(1.0, theta));
        samples.extend(f.eval_at_unit(w));
    }
    let (func, tail_fraction) = if f.is_real() {
        CircleFunction::from_samples_real_truncated(&samples, f.dim(), n_out)?
    } else {
        CircleFunction::from_samples_truncated(&samples, f.dim(), n_out)?
    };
    if tail_fraction > tail_limit {
        return Err(Error::TailMass {
            fraction: tail_fraction,
            limit: tail_limit,
            bandwidth: n_out,
        });
    }
    Ok(Composed {
        func,
        tail_fraction,
    })
}

pub const DEFAULT_TAIL_LIMIT: f64 = 1e-3;

/// L² norm of (−Δ)^{1/2}(u∘φ) − |∂_θφ|·((−Δ)^{1/2}u)∘φ, both sides at
/// resolution n_out. Exactly zero for rotations; for general maps it decays
/// with the truncation tail.
pub fn naturality_defect(
    f: &CircleFunction,
    m: &MobiusMap,
    n_out: usize,
    oversample: usize,
) -> Result<f64> {
    let lhs = fractional_laplacian(&compose(f, m, oversample, n_out, DEFAULT_TAIL_LIMIT)?.func, 0.5)?;
    let lu = fractional_laplacian(f, 0.5)?;
    let grid = oversample * (2 * n_out + 1);
    let mut samples = Vec::with_capacity(grid * f.dim());
    for j in 0..grid {
        let theta = 2.0 * PI * j as f64 / grid as f64;
        let w = m.apply(Complex64::from_polar(1.0, theta));
        let jac = trace_jacobian(m, theta);
        samples.extend(lu.eval_at_unit(w).iter().map(|v| v * jac));
    }
    let (rhs, _) = if f.is_real() {
        CircleFunction::from_samples_real_truncated(&samples, f.dim(), n_out)?
    } else {
        CircleFunction::from_samples_truncated(&samples, f.dim(), n_out)?
    };
    Ok(lhs.sub(&rhs)?.l2_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::energy_spectral;
    use approx::assert_relative_eq;

    #[test]
    fn construction_guards() {
        assert!(MobiusMap::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
        assert!(MobiusMap::new(Complex64::new(0.3, 0.0), Complex64::new(0.9, 0.0)).is_err());
    }

    #[test]
    fn json_wire_format() {
        let m = MobiusMap::new(Complex64::new(0.3, -0.1), Complex64::from_polar(1.0, 0.8)).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with("{\"a\":[0.3,-0.1],\"mu\":["));
        let back: MobiusMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        // invalid parameters are rejected on the way in
        assert!(serde_json::from_str::<MobiusMap>("{\"a\":[1.5,0.0],\"mu\":[1.0,0.0]}").is_err());
        assert!(serde_json::from_str::<MobiusMap>("{\"a\":[0.0,0.0],\"mu\":[0.5,0.0]}").is_err());
    }

    #[test]
    fn trace_of_simple_maps() {
        // a = 0, μ = 1: m(z) = −z, so θ ↦ θ + π.
        let m = MobiusMap::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        for theta in [0.0, 1.0, 3.5] {
            let expected = (theta + PI).rem_euclid(2.0 * PI);
            assert_relative_eq!(boundary_trace(&m, theta), expected, epsilon = 1e-12);
        }
        // a = 0, μ = e^{iα}: rotation by α + π.
        let alpha = 0.73;
        let m = MobiusMap::new(Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, alpha)).unwrap();
        let expected = (0.4 + alpha + PI).rem_euclid(2.0 * PI);
        assert_relative_eq!(boundary_trace(&m, 0.4), expected, epsilon = 1e-12);
    }

    #[test]
    fn disc_preservation_and_inverse() {
        let m = MobiusMap::new(Complex64::new(0.4, -0.2), Complex64::from_polar(1.0, 1.1)).unwrap();
        for theta in [0.0, 0.9, 2.7, 5.3] {
            let w = m.apply(Complex64::from_polar(1.0, theta));
            assert_relative_eq!(w.norm(), 1.0, epsilon = 1e-12);
        }
        // interior point stays interior
        assert!(m.apply(Complex64::new(0.5, 0.1)).norm() < 1.0);
        // m ∘ m⁻¹ = id on the boundary
        let inv = m.inverse();
        for theta in [0.2, 1.4, 4.0] {
            let z = Complex64::from_polar(1.0, theta);
            let back = m.apply(inv.apply(z));
            assert_relative_eq!(back.re, z.re, epsilon = 1e-12);
            assert_relative_eq!(back.im, z.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn composition_matches_pointwise() {
        let m1 = MobiusMap::new(Complex64::new(0.3, 0.1), Complex64::from_polar(1.0, 0.4)).unwrap();
        let m2 = MobiusMap::new(Complex64::new(-0.2, 0.25), Complex64::from_polar(1.0, 2.0)).unwrap();
        let comp = m1 * m2;
        assert!(comp.a.norm() < 1.0);
        assert_relative_eq!(comp.mu.norm(), 1.0, epsilon = 1e-12);
        for z in [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.6, -0.3),
            Complex64::from_polar(1.0, 2.2),
        ] {
            let direct = m1.apply(m2.apply(z));
            let viaform = comp.apply(z);
            assert_relative_eq!(direct.re, viaform.re, epsilon = 1e-12);
            assert_relative_eq!(direct.im, viaform.im, epsilon = 1e-12);
        }
        let id = MobiusMap::identity();
        for z in [Complex64::new(0.2, 0.7), Complex64::new(-0.9, 0.0)] {
            let w = id.apply(z);
            assert_relative_eq!(w.re, z.re, epsilon = 1e-15);
            assert_relative_eq!(w.im, z.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn jacobian_closed_form() {
        let m = MobiusMap::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        for theta in [0.0, 2.0] {
            assert_eq!(trace_jacobian(&m, theta), 1.0);
        }
        // a = 1/2, θ = 0 → (1 − 1/4)/|1/2 − 1|² = 3.
        let m = MobiusMap::new(Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(trace_jacobian(&m, 0.0), 3.0, epsilon = 1e-14);
        // degree-1 diffeomorphism: ∫ jacobian = 2π.
        let m = MobiusMap::new(Complex64::new(0.35, -0.1), Complex64::from_polar(1.0, 0.9)).unwrap();
        let grid = 4096;
        let integral: f64 = (0..grid)
            .map(|j| trace_jacobian(&m, 2.0 * PI * j as f64 / grid as f64))
            .sum::<f64>()
            * 2.0
            * PI
            / grid as f64;
        assert_relative_eq!(integral, 2.0 * PI, max_relative = 1e-10);
    }

    #[test]
    fn dilation_field_examples() {
        let x = dilation_field(0.0);
        assert_eq!(x, CircleFunction::sine(1).scale(-2.0));
        let x = dilation_field(PI / 2.0);
        for (n, c) in x.iter_coeffs() {
            let e = CircleFunction::cosine(1).scale(2.0);
            assert_relative_eq!(c[0].re, e.coeff(n)[0].re, epsilon = 1e-15);
            assert!(c[0].im.abs() < 1e-16);
        }
        // the dilation fixes its center: X(δ) = 0.
        let delta = 1.234;
        let x = dilation_field(delta);
        assert!(x.eval_at_angle(delta)[0].norm() < 1e-15);
    }

    #[test]
    fn rotation_composition_preserves_moduli() {
        let f = CircleFunction::from_components(&[CircleFunction::cosine(2), CircleFunction::sine(1)])
            .unwrap();
        let m = MobiusMap::rotation(0.9);
        let c = compose(&f, &m, 8, f.bandwidth(), 1e-12).unwrap();
        assert!(c.tail_fraction < 1e-28);
        for (n, v) in f.iter_coeffs() {
            for d in 0..f.dim() {
                assert_relative_eq!(
                    c.func.coeff(n)[d].norm(),
                    v[d].norm(),
                    epsilon = 1e-13
                );
            }
        }
        // constants compose to themselves under any map.
        let k = CircleFunction::constant(&[2.0, -1.0]);
        let m = MobiusMap::new(Complex64::new(0.3, 0.2), Complex64::from_polar(1.0, 1.0)).unwrap();
        let c = compose(&k, &m, 8, 4, 1e-12).unwrap();
        assert_relative_eq!(c.func.coeff(0)[0].re, 2.0, epsilon = 1e-13);
        assert_relative_eq!(c.func.coeff(0)[1].re, -1.0, epsilon = 1e-13);
    }

    #[test]
    fn energy_invariance_blaschke_like() {
        // f = e^{iθ} composed with m_{a,1} is a degree-1 rational trace;
        // the energy is a conformal invariant.
        let f = CircleFunction::fourier_mode(1);
        let m = MobiusMap::new(Complex64::new(0.3, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        let c = compose(&f, &m, 8, 64, 1e-8).unwrap();
        let e0 = energy_spectral(&f);
        let e1 = energy_spectral(&c.func);
        assert!((e1 - e0).abs() <= 1e-8 * e0, "energy drift {}", (e1 - e0).abs());
    }

    #[test]
    fn naturality_examples() {
        let f = CircleFunction::from_components(&[CircleFunction::cosine(1), CircleFunction::sine(2)])
            .unwrap();
        // rotations are exact.
        let d = naturality_defect(&f, &MobiusMap::rotation(1.3), f.bandwidth() + 2, 8).unwrap();
        assert!(d < 1e-12, "rotation defect {d}");
        // generic map at inflated resolution.
        let g = CircleFunction::cosine(1);
        let m = MobiusMap::new(Complex64::new(0.3, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        let d = naturality_defect(&g, &m, 96, 8).unwrap();
        assert!(d <= 1e-7, "defect {d}");
        // constants: both sides vanish.
        let c = CircleFunction::constant(&[1.0]);
        let d = naturality_defect(&c, &m, 16, 8).unwrap();
        assert!(d < 1e-13);
    }

    #[test]
    fn dilation_generator_matches_mobius_family() {
        // n_t = m_{−t e^{iδ}, −1} is the identity at t = 0 and flows the
        // boundary with velocity 2 sin(δ−θ).
        let delta = 0.6;
        let t = 1e-3;
        let m = MobiusMap::new(
            -Complex64::from_polar(t, delta),
            Complex64::new(-1.0, 0.0),
        )
        .unwrap();
        for theta in [0.0, 1.0, 2.5, 4.8] {
            let traced = boundary_trace(&m, theta);
            let mut diff = traced - theta;
            if diff > PI {
                diff -= 2.0 * PI;
            }
            if diff < -PI {
                diff += 2.0 * PI;
            }
            let expected = 2.0 * (delta - theta).sin();
            assert!(
                (diff / t - expected).abs() < 1e-2,
                "generator mismatch at θ = {theta}: {} vs {expected}",
                diff / t
            );
        }
    }
}
