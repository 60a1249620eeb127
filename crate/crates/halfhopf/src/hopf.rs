//! The Hopf differential of the harmonic extension and its boundary trace.
//!
//! For ũ the harmonic extension of u, 𝓗(ũ)(z) = ∂_zũ · ∂_zũ (non-Hermitian
//! dot), and as a power series 𝓗(ũ)(z) = Σ_{k≥2} c_k z^{k−2} with
//! c_k = Σ_{m+n=k, m,n≥1} m n û(m)·û(n). The boundary trace (the fractional
//! Hopf differential) equals (e^{−i2θ}/2i)(𝒱 + iH(𝒱)) where 𝒱 is the first
//! inner variation; both closed forms are implemented and must agree.
//! u is a stationary point of the half Dirichlet energy iff all c_k vanish
//! iff the extension is weakly conformal.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{dz_extension_eval, hilbert_transform, DiskPoint};
use crate::spectral::CircleFunction;
use crate::variation::inner_variation;

/// c_k for k = 2..=2N, indexed by k−2.
pub fn fractional_hopf_coeffs(f: &CircleFunction) -> Vec<Complex64> {
    let n = f.bandwidth() as i64;
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for k in 2..=2 * n {
        let mut acc = Complex64::new(0.0, 0.0);
        let m_min = 1.max(k - n);
        let m_max = n.min(k - 1);
        for m in m_min..=m_max {
            let a = f.coeff(m);
            let b = f.coeff(k - m);
            let weight = (m * (k - m)) as f64;
            for d in 0..f.dim() {
                acc += weight * a[d] * b[d];
            }
        }
        out.push(acc);
    }
    out
}

/// max_k |c_k| — the stationarity residual in coefficient form.
pub fn stationarity_residual(f: &CircleFunction) -> f64 {
    fractional_hopf_coeffs(f)
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}

/// max_k |c_k|/k² — scale-free variant (raw c_k grows like N² at fixed norm).
pub fn stationarity_residual_weighted(f: &CircleFunction) -> f64 {
    fractional_hopf_coeffs(f)
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm() / ((i + 2) * (i + 2)) as f64)
        .fold(0.0, f64::max)
}

/// The fractional Hopf differential as a (complex scalar) trig polynomial,
/// assembled from the first inner variation:
/// (e^{−i2θ}/2i)(𝒱 + iH(𝒱)). Its coefficient at frequency k−2 is c_k; all
/// strictly negative output frequencies vanish identically.
pub fn fractional_hopf_from_variation(f: &CircleFunction) -> CircleFunction {
    let v = inner_variation(f);
    let hv = hilbert_transform(&v);
    let half_i = Complex64::new(0.0, 0.5); // 1/(2i) = −i/2
    let bw = v.bandwidth() as i64;
    let out_bw = (bw + 2) as usize;
    let mut entries = Vec::with_capacity((2 * bw + 1) as usize);
    for (n, c) in v.iter_coeffs() {
        // (𝒱 + iH𝒱)/(2i), shifted down by two frequencies.
        let val = (c[0] + Complex64::new(0.0, 1.0) * hv.coeff(n)[0]) * -half_i;
        entries.push((n - 2, vec![val]));
    }
    CircleFunction::from_coeff_entries(out_bw, 1, &entries).expect("valid by construction")
}

/// 𝓗(ũ)(z) = ∂_zũ(z)·∂_zũ(z) at an interior point.
pub fn hopf_differential_at(f: &CircleFunction, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::invalid("z", format!("|z| = {} not inside the disc", z.norm())));
    }
    let w = dz_extension_eval(f, z)?;
    Ok(w.iter().map(|v| v * v).sum())
}

/// Polar grid of disc-interior evaluation points: radii r_max·(i+1)/r_res,
/// angles 2πj/theta_res.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DiscGrid {
    pub r_res: usize,
    pub theta_res: usize,
    pub r_max: f64,
}

impl DiscGrid {
    pub fn new(r_res: usize, theta_res: usize, r_max: f64) -> Result<Self> {
        if r_res == 0 || theta_res == 0 {
            return Err(Error::invalid("grid", "resolutions must be positive"));
        }
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(Error::invalid(
                "r_max",
                format!("{r_max} must lie strictly inside (0, 1)"),
            ));
        }
        Ok(DiscGrid {
            r_res,
            theta_res,
            r_max,
        })
    }

    pub fn points(&self) -> impl Iterator<Item = DiskPoint> + '_ {
        (0..self.r_res).flat_map(move |i| {
            let r = self.r_max * (i + 1) as f64 / self.r_res as f64;
            (0..self.theta_res).map(move |j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / self.theta_res as f64;
                DiskPoint::new(r, theta).expect("grid radii lie inside the disc")
            })
        })
    }
}

/// max over the grid of |𝓗(ũ)|, together with the sampled values.
pub fn conformality_defect(
    f: &CircleFunction,
    grid: &DiscGrid,
) -> Result<(f64, Vec<(DiskPoint, Complex64)>)> {
    let mut samples = Vec::with_capacity(grid.r_res * grid.theta_res);
    let mut max = 0.0f64;
    for p in grid.points() {
        let v = hopf_differential_at(f, p.to_complex())?;
        max = max.max(v.norm());
        samples.push((p, v));
    }
    Ok((max, samples))
}

/// Fourier coefficients of the fractional Hopf differential plus sampled
/// disc-interior Hopf values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfReport {
    /// Entries (k, re c_k, im c_k) for k = 2..=2N.
    pub coeffs: Vec<(u32, f64, f64)>,
    /// Rows (r, theta, re, im) of 𝓗(ũ) on the disc grid.
    pub disc_samples: Vec<(f64, f64, f64, f64)>,
    pub max_coeff: f64,
    pub max_coeff_weighted: f64,
    pub max_disc: f64,
}

impl HopfReport {
    pub fn compute(f: &CircleFunction, grid: Option<&DiscGrid>) -> Result<Self> {
        let coeffs = fractional_hopf_coeffs(f);
        let max_coeff = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let max_coeff_weighted = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm() / ((i + 2) * (i + 2)) as f64)
            .fold(0.0, f64::max);
        let (max_disc, disc_samples) = match grid {
            Some(g) => {
                let (max, samples) = conformality_defect(f, g)?;
                (
                    max,
                    samples
                        .iter()
                        .map(|(p, v)| (p.r(), p.theta(), v.re, v.im))
                        .collect(),
                )
            }
            None => (0.0, Vec::new()),
        };
        Ok(HopfReport {
            coeffs: coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| ((i + 2) as u32, c.re, c.im))
                .collect(),
            disc_samples,
            max_coeff,
            max_coeff_weighted,
            max_disc,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::CircleFunction;
    use approx::assert_relative_eq;

    fn circle_pair() -> CircleFunction {
        CircleFunction::from_components(&[CircleFunction::cosine(1), CircleFunction::sine(1)])
            .unwrap()
    }

    fn witness() -> CircleFunction {
        CircleFunction::from_components(&[CircleFunction::cosine(1), CircleFunction::sine(2)])
            .unwrap()
    }

    #[test]
    fn hopf_differential_pointwise() {
        // ũ(z) = z is conformal.
        for z in [Complex64::new(0.0, 0.0), Complex64::new(0.4, -0.3)] {
            let v = hopf_differential_at(&circle_pair(), z).unwrap();
            assert!(v.norm() < 1e-15);
        }
        // components of z²: ∂_z = (z, −iz), dot = z² − z² = 0.
        let f2 = CircleFunction::from_components(&[CircleFunction::cosine(2), CircleFunction::sine(2)])
            .unwrap();
        let v = hopf_differential_at(&f2, Complex64::new(0.3, 0.5)).unwrap();
        assert!(v.norm() < 1e-15);
        // witness: ∂_zũ = (1/2, −iz), dot at 0 = 1/4.
        let v = hopf_differential_at(&witness(), Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 0.25, epsilon = 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn coefficient_examples() {
        // û(1)·û(1) = 1/4 + (−i/2)² = 0 for the circle itself.
        let c = fractional_hopf_coeffs(&circle_pair());
        assert!(c.iter().all(|v| v.norm() < 1e-16));

        // (cos θ, sin 2θ): c₂ = 1/4, c₃ = 0, c₄ = −1.
        let c = fractional_hopf_coeffs(&witness());
        assert_relative_eq!(c[0].re, 0.25, epsilon = 1e-15);
        assert!(c[1].norm() < 1e-16);
        assert_relative_eq!(c[2].re, -1.0, epsilon = 1e-15);
        assert_eq!(c.len(), 2 * witness().bandwidth() - 1);

        assert!(fractional_hopf_coeffs(&CircleFunction::constant(&[1.0, 2.0])).is_empty());
    }

    #[test]
    fn variation_route_matches_convolution_route() {
        // scalar cos θ: the trace is the constant 1/4 = c₂ at frequency 0.
        let g = fractional_hopf_from_variation(&CircleFunction::cosine(1));
        assert_relative_eq!(g.coeff(0)[0].re, 0.25, epsilon = 1e-14);
        assert!(g.coeff(0)[0].im.abs() < 1e-15);
        for (n, c) in g.iter_coeffs() {
            if n != 0 {
                assert!(c[0].norm() < 1e-15, "stray coefficient at {n}");
            }
        }

        // stationary input: identically zero.
        let g = fractional_hopf_from_variation(&circle_pair());
        assert!(g.max_coeff_norm() < 1e-15);

        // generic input: coefficient at k−2 equals c_k, negatives vanish.
        let f = witness();
        let g = fractional_hopf_from_variation(&f);
        let c = fractional_hopf_coeffs(&f);
        for (i, ck) in c.iter().enumerate() {
            let k = (i + 2) as i64;
            let got = g.coeff(k - 2)[0];
            assert_relative_eq!(got.re, ck.re, epsilon = 1e-13);
            assert_relative_eq!(got.im, ck.im, epsilon = 1e-13);
        }
        for n in -(g.bandwidth() as i64)..0 {
            assert!(g.coeff(n)[0].norm() < 1e-14);
        }
    }

    #[test]
    fn conformality_defect_examples() {
        let grid = DiscGrid::new(4, 8, 0.9).unwrap();
        let (max, samples) = conformality_defect(&circle_pair(), &grid).unwrap();
        assert!(max < 1e-14);
        assert_eq!(samples.len(), 32);

        let (max, _) = conformality_defect(&CircleFunction::constant(&[1.0]), &grid).unwrap();
        assert_eq!(max, 0.0);

        // witness has |𝓗(0)| = 1/4; any grid point near 0 sees ≥ a fixed
        // positive value, and the grid max dominates the z = 0 value 1/4
        // whenever small radii are present.
        let v = hopf_differential_at(&witness(), Complex64::new(0.0, 0.0)).unwrap();
        assert!(v.norm() >= 0.25 - 1e-15);
        let (max, _) = conformality_defect(&witness(), &grid).unwrap();
        assert!(max >= 0.25 - 1e-2);
    }

    #[test]
    fn coefficient_bound_controls_disc_values() {
        // |𝓗(z)| ≤ max|c_k| Σ r^{k−2} on any grid with r ≤ r_max < 1.
        let f = witness();
        let grid = DiscGrid::new(8, 16, 0.95).unwrap();
        let (max_disc, _) = conformality_defect(&f, &grid).unwrap();
        let coeffs = fractional_hopf_coeffs(&f);
        let max_coeff = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let geom: f64 = (0..coeffs.len()).map(|i| 0.95f64.powi(i as i32)).sum();
        assert!(max_disc <= max_coeff * geom + 1e-12);
    }

    #[test]
    fn report_shape() {
        let grid = DiscGrid::new(3, 5, 0.5).unwrap();
        let r = HopfReport::compute(&witness(), Some(&grid)).unwrap();
        assert_eq!(r.disc_samples.len(), 15);
        assert_eq!(r.coeffs.len(), 3);
        assert_relative_eq!(r.max_coeff, 1.0, epsilon = 1e-14);
        assert_relative_eq!(r.max_coeff_weighted, 0.25 / 4.0, epsilon = 1e-14);
    }
}
