//! Randomized verification suites behind `halfhopf verify`: each suite
//! draws seeded random inputs, evaluates the identities of one subsystem at
//! pinned tolerances, and reports per-check worst cases. Failures embed the
//! offending seed and input so a violation is reproducible from the report
//! alone.
//!
//! Trials parallelize across threads (capped by HALFHOPF_THREADS); every
//! trial derives its own RNG stream from (seed, trial index), so results do
//! not depend on the thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commutator::{
    commutator_apply, d_s, fractional_divergence_pairing, kernel_coeffs, probe_lemma_a2,
    probe_lemma_a3, LEMMA_A3_ENVELOPE,
};
use crate::energy::{energy_spectral, sobolev_norm, wiener_norm};
use crate::error::Result;
use crate::flows::{blaschke_trace, scaling_family};
use crate::hopf::{fractional_hopf_coeffs, fractional_hopf_from_variation, DiscGrid};
use crate::mobius::{
    boundary_trace, compose, dilation_field, naturality_defect, MobiusMap, DEFAULT_TAIL_LIMIT,
};
use crate::operators::{derivative, fractional_laplacian};
use crate::spectral::CircleFunction;
use crate::variation::{
    inner_variation, noether_conservation_residual, noether_identity_residual, pair_with_field,
    pohozaev_residual, pohozaev_scale, rotation_pohozaev,
};

pub const SUITE_NAMES: [&str; 5] = ["pohozaev", "noether", "mobius", "commutator", "hopf-paths"];

/// Spectral decay exponent of the random ensemble: |û(n)| ∝ (1+|n|)^{−p}
/// Gaussian. p = 1.5 exercises smooth and borderline-H^{1/2} regimes.
pub const DEFAULT_DECAY: f64 = 1.5;

/// Random real trig polynomial with the documented coefficient law.
pub fn random_real(rng: &mut impl Rng, bandwidth: usize, dim: usize, p: f64) -> CircleFunction {
    let mut entries: Vec<(i64, Vec<Complex64>)> = Vec::with_capacity(bandwidth + 1);
    let gauss = |rng: &mut dyn rand::RngCore| -> f64 {
        // Box-Muller; two uniforms per draw keeps the stream simple.
        let u1: f64 = rand::Rng::gen_range(rng, f64::MIN_POSITIVE..1.0);
        let u2: f64 = rand::Rng::gen_range(rng, 0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let mean: Vec<Complex64> = (0..dim).map(|_| Complex64::new(gauss(rng), 0.0)).collect();
    entries.push((0, mean));
    for n in 1..=bandwidth as i64 {
        let sigma = (1.0 + n as f64).powf(-p);
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(sigma * gauss(rng), sigma * gauss(rng)))
            .collect();
        entries.push((n, v.clone()));
        entries.push((-n, v.iter().map(|z| z.conj()).collect()));
    }
    CircleFunction::from_coeff_entries(bandwidth, dim, &entries).expect("valid by construction")
}

/// Random Blaschke trace of the given degree with |a_j| ≤ r_cap.
pub fn random_blaschke(
    rng: &mut impl Rng,
    degree: usize,
    r_cap: f64,
    bandwidth: usize,
) -> Result<CircleFunction> {
    let zeros: Vec<Complex64> = (0..degree)
        .map(|_| {
            let r = r_cap * rng.gen_range(0.0..1.0f64).sqrt();
            Complex64::from_polar(r, rng.gen_range(0.0..2.0 * std::f64::consts::PI))
        })
        .collect();
    let mu = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * std::f64::consts::PI));
    blaschke_trace(&zeros, mu, bandwidth)
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Thread budget: HALFHOPF_THREADS when set, available parallelism otherwise.
pub fn thread_cap() -> usize {
    std::env::var("HALFHOPF_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn run_trials<T: Send>(trials: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = thread_cap().min(trials.max(1));
    if threads <= 1 || trials <= 1 {
        return (0..trials).map(f).collect();
    }
    let mut results: Vec<Option<T>> = (0..trials).map(|_| None).collect();
    let chunk = trials.div_ceil(threads);
    std::thread::scope(|scope| {
        for (i, slots) in results.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (j, slot) in slots.iter_mut().enumerate() {
                    *slot = Some(f(i * chunk + j));
                }
            });
        }
    });
    results.into_iter().map(|o| o.expect("all trials ran")).collect()
}

/// One measured quantity inside a trial: pass iff value ≤ bound.
struct TrialCheck {
    name: &'static str,
    value: f64,
    bound: f64,
    witness: Option<serde_json::Value>,
}

impl TrialCheck {
    fn new(name: &'static str, value: f64, bound: f64, witness: impl Fn() -> serde_json::Value) -> Self {
        let witness = if value > bound || !value.is_finite() {
            Some(witness())
        } else {
            None
        };
        TrialCheck {
            name,
            value,
            bound,
            witness,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub bound: f64,
    pub name: String,
    pub pass: bool,
    pub worst: f64,
    pub worst_trial: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub bound: f64,
    pub check: String,
    pub input: serde_json::Value,
    pub seed: u64,
    pub trial: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
    pub name: String,
    /// CSV table of estimate probes (s, lhs, rhs, ratio, cap, seed);
    /// populated by the commutator suite and written as a separate artifact.
    #[serde(skip)]
    pub probe_csv: Option<String>,
    pub seed: u64,
    pub trials: usize,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    fn collect(name: &str, seed: u64, trials: usize, per_trial: Vec<Vec<TrialCheck>>) -> Self {
        let mut order: Vec<&'static str> = Vec::new();
        let mut summaries: std::collections::BTreeMap<&'static str, CheckSummary> =
            std::collections::BTreeMap::new();
        let mut failures = Vec::new();
        for (trial, checks) in per_trial.into_iter().enumerate() {
            for check in checks {
                if !summaries.contains_key(check.name) {
                    order.push(check.name);
                    summaries.insert(
                        check.name,
                        CheckSummary {
                            bound: check.bound,
                            name: check.name.to_string(),
                            pass: true,
                            worst: f64::NEG_INFINITY,
                            worst_trial: trial,
                        },
                    );
                }
                let entry = summaries.get_mut(check.name).expect("just inserted");
                if check.value > entry.worst {
                    entry.worst = check.value;
                    entry.worst_trial = trial;
                }
                let ok = check.value <= check.bound && check.value.is_finite();
                if !ok {
                    entry.pass = false;
                    failures.push(Failure {
                        bound: check.bound,
                        check: check.name.to_string(),
                        input: check.witness.unwrap_or(serde_json::Value::Null),
                        seed,
                        trial,
                        value: check.value,
                    });
                }
            }
        }
        SuiteOutcome {
            checks: order
                .iter()
                .map(|n| summaries.get(n).expect("present").clone())
                .collect(),
            failures,
            name: name.to_string(),
            probe_csv: None,
            seed,
            trials,
        }
    }
}

fn function_witness(f: &CircleFunction, extra: serde_json::Value) -> serde_json::Value {
    serde_json::json!({ "function": f, "params": extra })
}

// -------------------------------------------------------------------------
// Suites
// -------------------------------------------------------------------------

/// ∫u′(−Δ)^{1/2}u·sin(δ−x) = 0 for every u (16 δ per trial), and the
/// rotation case ∫u′(−Δ)^{1/2}u = 0.
pub fn suite_pohozaev(trials: usize, seed: u64) -> SuiteOutcome {
    let per_trial = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let bandwidth = rng.gen_range(4..=32);
        let dim = rng.gen_range(1..=3);
        let f = random_real(&mut rng, bandwidth, dim, DEFAULT_DECAY);
        let scale = pohozaev_scale(&f);
        let mut worst_delta = 0.0;
        let mut worst = 0.0f64;
        for i in 0..16 {
            let delta = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let v = pohozaev_residual(&f, delta).abs() / scale;
            if v > worst {
                worst = v;
                worst_delta = delta;
            }
            let _ = i;
        }
        let rot = rotation_pohozaev(&f).abs();
        vec![
            TrialCheck::new("pohozaev_normalized", worst, 1e-10, || {
                function_witness(&f, serde_json::json!({ "delta": worst_delta }))
            }),
            TrialCheck::new("rotation_normalized", rot / scale, 1e-10, || {
                function_witness(&f, serde_json::json!({}))
            }),
            TrialCheck::new("rotation_absolute", rot, 1e-12, || {
                function_witness(&f, serde_json::json!({}))
            }),
        ]
    });
    SuiteOutcome::collect("pohozaev", seed, trials, per_trial)
}

/// Noether identity residual R ≡ 0 for conformal fields on arbitrary u;
/// conservation-law residual on stationary fixtures; a non-conformal
/// witness field with visibly nonzero R.
pub fn suite_noether(trials: usize, seed: u64) -> SuiteOutcome {
    let per_trial = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let bandwidth = rng.gen_range(4..=24);
        let dim = rng.gen_range(1..=3);
        let f = random_real(&mut rng, bandwidth, dim, DEFAULT_DECAY);
        let delta = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let fields = [
            CircleFunction::constant(&[1.0]),
            CircleFunction::sine(1),
            CircleFunction::cosine(1),
            dilation_field(delta),
        ];
        let mut identity_worst = 0.0f64;
        for x in &fields {
            let r = noether_identity_residual(&f, x).expect("scalar field");
            identity_worst = identity_worst.max(r.max_coeff_norm());
        }
        let mut checks = vec![TrialCheck::new(
            "identity_conformal",
            identity_worst,
            1e-11,
            || function_witness(&f, serde_json::json!({ "delta": delta })),
        )];

        let degree = rng.gen_range(1..=3);
        match random_blaschke(&mut rng, degree, 0.6, 96) {
            Ok(fixture) => {
                let mut conservation_worst = 0.0f64;
                for x in [CircleFunction::constant(&[1.0]), dilation_field(delta)] {
                    let c = noether_conservation_residual(&fixture, &x).expect("scalar field");
                    conservation_worst = conservation_worst.max(c.l2_norm());
                }
                checks.push(TrialCheck::new(
                    "conservation_stationary",
                    conservation_worst,
                    1e-8,
                    || function_witness(&fixture, serde_json::json!({ "delta": delta })),
                ));
            }
            Err(e) => checks.push(TrialCheck::new("fixture_construction", f64::NAN, 0.0, || {
                serde_json::json!({ "error": e.to_string() })
            })),
        }

        if trial == 0 {
            // one explicit witness: X = sin 2x is not conformal.
            let w = noether_identity_residual(&CircleFunction::cosine(1), &CircleFunction::sine(2))
                .expect("scalar field");
            // pass iff the norm EXCEEDS 1e−3: encode as bound on the negation.
            checks.push(TrialCheck::new(
                "witness_nonconformal_inverted",
                1e-3 - w.l2_norm(),
                0.0,
                || serde_json::json!({ "norm": w.l2_norm() }),
            ));
        }
        checks
    });
    SuiteOutcome::collect("noether", seed, trials, per_trial)
}

/// Möbius group law under composition, energy invariance, naturality of the
/// half Laplacian, and the dilation-generator consistency check.
pub fn suite_mobius(trials: usize, seed: u64) -> SuiteOutcome {
    let per_trial = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let bandwidth = rng.gen_range(2..=16);
        let dim = rng.gen_range(1..=3);
        let f = random_real(&mut rng, bandwidth, dim, DEFAULT_DECAY);
        let n_out = 8 * bandwidth;
        let draw_map = |rng: &mut ChaCha8Rng| -> MobiusMap {
            let r = 0.4 * rng.gen_range(0.0..1.0f64).sqrt();
            let a = Complex64::from_polar(r, rng.gen_range(0.0..2.0 * std::f64::consts::PI));
            let mu = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * std::f64::consts::PI));
            MobiusMap::new(a, mu).expect("|a| < 0.4")
        };
        let m1 = draw_map(&mut rng);
        let m2 = draw_map(&mut rng);

        let mut checks = Vec::new();
        let c1 = compose(&f, &m1, 8, n_out, DEFAULT_TAIL_LIMIT).expect("compose");
        let c12 = compose(&c1.func, &m2, 8, n_out, DEFAULT_TAIL_LIMIT).expect("compose");
        let direct = compose(&f, &(m1 * m2), 8, n_out, DEFAULT_TAIL_LIMIT).expect("compose");
        let group_defect =
            c12.func.sub(&direct.func).expect("same dim").l2_norm() / (1.0 + f.l2_norm());
        checks.push(TrialCheck::new("group_law", group_defect, 1e-6, || {
            function_witness(&f, serde_json::json!({ "a1": [m1.a().re, m1.a().im], "a2": [m2.a().re, m2.a().im] }))
        }));

        let e0 = energy_spectral(&f);
        let e1 = energy_spectral(&c1.func);
        let energy_defect = if e0 > 0.0 { (e1 - e0).abs() / e0 } else { 0.0 };
        checks.push(TrialCheck::new("energy_invariance", energy_defect, 1e-6, || {
            function_witness(&f, serde_json::json!({ "a": [m1.a().re, m1.a().im] }))
        }));

        let lf = fractional_laplacian(&f, 0.5).expect("valid s");
        let nat = naturality_defect(&f, &m1, n_out, 8).expect("naturality") ;
        let nat_rel = nat / 1.0f64.max(lf.l2_norm());
        checks.push(TrialCheck::new("naturality", nat_rel, 1e-6, || {
            function_witness(&f, serde_json::json!({ "a": [m1.a().re, m1.a().im] }))
        }));

        if trial == 0 {
            // dilation family: finite-difference generator vs 2 sin(δ−θ).
            let delta = 0.6;
            let t = 1e-3;
            let m = MobiusMap::new(
                -Complex64::from_polar(t, delta),
                Complex64::new(-1.0, 0.0),
            )
            .expect("small a");
            let mut worst = 0.0f64;
            for k in 0..16 {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
                let mut diff = boundary_trace(&m, theta) - theta;
                if diff > std::f64::consts::PI {
                    diff -= 2.0 * std::f64::consts::PI;
                }
                if diff < -std::f64::consts::PI {
                    diff += 2.0 * std::f64::consts::PI;
                }
                worst = worst.max((diff / t - 2.0 * (delta - theta).sin()).abs());
            }
            checks.push(TrialCheck::new("dilation_generator", worst, 1e-2, || {
                serde_json::json!({ "delta": delta, "t": t })
            }));
        }
        checks
    });
    SuiteOutcome::collect("mobius", seed, trials, per_trial)
}

/// Commutator-estimate probes (caps from the proofs), the divergence
/// identity with the surrogate kernel, antisymmetry, zero mean, and the
/// decomposition of D_s through commutators. Probe values are also
/// collected as CSV rows (s, lhs, rhs, ratio, cap, seed).
pub fn suite_commutator(trials: usize, seed: u64) -> SuiteOutcome {
    let per_trial = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let bw_a = rng.gen_range(1..=32);
        let bw_phi = rng.gen_range(1..=32);
        let a = random_real(&mut rng, bw_a, 1, DEFAULT_DECAY);
        let bw_b = rng.gen_range(1..=16);
        let b = random_real(&mut rng, bw_b, 1, DEFAULT_DECAY);
        let phi = random_real(&mut rng, bw_phi, 1, DEFAULT_DECAY);
        let mut checks = Vec::new();
        let mut rows = Vec::new();
        let trial_seed = seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);

        for (idx, s) in [0.1, 0.25, 0.4].into_iter().enumerate() {
            let probe = probe_lemma_a2(&a, &phi, s).expect("nonconstant phi");
            rows.push(probe.csv_row(trial_seed));
            let name = ["lemma_a2_s0.1", "lemma_a2_s0.25", "lemma_a2_s0.4"][idx];
            checks.push(TrialCheck::new(
                name,
                probe.ratio,
                probe.constant_cap,
                || function_witness(&a, serde_json::json!({ "phi": phi, "s": s })),
            ));
        }

        let probe = probe_lemma_a3(&a, &b, &phi).expect("scalar inputs");
        rows.push(probe.csv_row(trial_seed));
        checks.push(TrialCheck::new(
            "lemma_a3_envelope",
            probe.ratio,
            LEMMA_A3_ENVELOPE,
            || function_witness(&a, serde_json::json!({ "b": b, "phi": phi })),
        ));

        let s = [0.1, 0.25, 0.4][rng.gen_range(0..3)];
        let m = 2 * (a.bandwidth() + b.bandwidth() + phi.bandwidth()) + 1;
        let pairing = fractional_divergence_pairing(&a, &b, &phi, s, m).expect("resolution ok");
        let direct = pair_with_field(&d_s(&a, &b, s).expect("valid s"), &phi).expect("pairing");
        checks.push(TrialCheck::new(
            "divergence_identity",
            (pairing.re - direct).abs().max(pairing.im.abs()),
            1e-10,
            || function_witness(&a, serde_json::json!({ "b": b, "phi": phi, "s": s })),
        ));

        let dab = d_s(&a, &b, s).expect("valid s");
        let dba = d_s(&b, &a, s).expect("valid s");
        let antisym = dab.add(&dba).expect("same dim").max_coeff_norm();
        checks.push(TrialCheck::new("antisymmetry", antisym, 0.0, || {
            function_witness(&a, serde_json::json!({ "b": b, "s": s }))
        }));

        checks.push(TrialCheck::new(
            "zero_mean",
            dab.coeff(0)[0].norm(),
            1e-12,
            || function_witness(&a, serde_json::json!({ "b": b, "s": s })),
        ));

        let via_comm = commutator_apply(&a, &b, s)
            .expect("scalars")
            .sub(&commutator_apply(&b, &a, s).expect("scalars"))
            .expect("same dim");
        let decomp = via_comm.sub(&dab).expect("same dim").max_coeff_norm();
        checks.push(TrialCheck::new("commutator_decomposition", decomp, 1e-12, || {
            function_witness(&a, serde_json::json!({ "b": b, "s": s }))
        }));

        if trial == 0 {
            // surrogate kernel reproduces the multiplier exactly.
            let s = 0.25;
            let kernel = kernel_coeffs(s, 6).expect("valid band");
            let phi = CircleFunction::cosine(2);
            let mut worst = 0.0f64;
            for (n, c) in fractional_laplacian(&phi, s).expect("valid s").iter_coeffs() {
                let paired = -2.0 * std::f64::consts::PI * phi.coeff(n)[0] * kernel.coeff(n)[0];
                worst = worst.max((paired - c[0]).norm());
            }
            checks.push(TrialCheck::new("kernel_multiplier", worst, 1e-13, || {
                serde_json::json!({ "s": s })
            }));
        }
        (checks, rows)
    });
    let (checks, rows): (Vec<_>, Vec<_>) = per_trial.into_iter().unzip();
    let mut outcome = SuiteOutcome::collect("commutator", seed, trials, checks);
    if trials > 0 {
        let mut csv = String::from(crate::commutator::EstimateProbe::CSV_HEADER);
        csv.push('\n');
        for row in rows.into_iter().flatten() {
            csv.push_str(&row);
            csv.push('\n');
        }
        outcome.probe_csv = Some(csv);
    }
    outcome
}

/// Path equivalence of the two fractional-Hopf constructions, the conjugate
/// identity, the scaling law, and the coefficient-to-disc bound.
pub fn suite_hopf_paths(trials: usize, seed: u64) -> SuiteOutcome {
    let per_trial = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let bandwidth = rng.gen_range(1..=16);
        let dim = rng.gen_range(1..=3);
        let f = random_real(&mut rng, bandwidth, dim, DEFAULT_DECAY);
        let mut checks = Vec::new();

        let coeffs = fractional_hopf_coeffs(&f);
        let via_variation = fractional_hopf_from_variation(&f);
        let mut path_defect = 0.0f64;
        for (i, ck) in coeffs.iter().enumerate() {
            let k = (i + 2) as i64;
            path_defect = path_defect.max((via_variation.coeff(k - 2)[0] - ck).norm());
        }
        for n in -(via_variation.bandwidth() as i64)..0 {
            path_defect = path_defect.max(via_variation.coeff(n)[0].norm());
        }
        checks.push(TrialCheck::new("path_equivalence", path_defect, 1e-11, || {
            function_witness(&f, serde_json::json!({}))
        }));

        // H(2𝒱) = |(−Δ)^{1/2}u|² − |u′|², exactly as trig polynomials.
        let v = inner_variation(&f);
        let lhs = crate::operators::hilbert_transform(&v.scale(2.0));
        let lu = fractional_laplacian(&f, 0.5).expect("valid s");
        let du = derivative(&f);
        let rhs = lu
            .pointwise_dot(&lu)
            .expect("same dim")
            .sub(&du.pointwise_dot(&du).expect("same dim"))
            .expect("same dim");
        let conj_defect = lhs.sub(&rhs).expect("same dim").max_coeff_norm();
        checks.push(TrialCheck::new("conjugate_identity", conj_defect, 1e-11, || {
            function_witness(&f, serde_json::json!({}))
        }));

        let r = rng.gen_range(0.2..1.0f64);
        let damped = scaling_family(&f, r).expect("valid r");
        let scaled = fractional_hopf_coeffs(&damped);
        let mut scale_defect = 0.0f64;
        for (i, (got, base)) in scaled.iter().zip(&coeffs).enumerate() {
            let expected = base * r.powi(i as i32 + 2);
            scale_defect = scale_defect.max((got - expected).norm() / (1.0 + expected.norm()));
        }
        checks.push(TrialCheck::new("scaling_law", scale_defect, 1e-12, || {
            function_witness(&f, serde_json::json!({ "r": r }))
        }));

        // max_disc ≤ max_coeff · Σ r_max^{k−2} on an interior grid.
        let grid = DiscGrid::new(4, 8, 0.9).expect("valid grid");
        let (max_disc, _) = crate::hopf::conformality_defect(&f, &grid).expect("grid inside disc");
        let max_coeff = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let geom: f64 = (0..coeffs.len().max(1)).map(|i| 0.9f64.powi(i as i32)).sum();
        checks.push(TrialCheck::new(
            "coefficient_disc_bound",
            max_disc - max_coeff * geom,
            1e-12,
            || function_witness(&f, serde_json::json!({})),
        ));
        checks
    });
    SuiteOutcome::collect("hopf-paths", seed, trials, per_trial)
}

pub fn run_suite(name: &str, trials: usize, seed: u64) -> Option<SuiteOutcome> {
    match name {
        "pohozaev" => Some(suite_pohozaev(trials, seed)),
        "noether" => Some(suite_noether(trials, seed)),
        "mobius" => Some(suite_mobius(trials, seed)),
        "commutator" => Some(suite_commutator(trials, seed)),
        "hopf-paths" => Some(suite_hopf_paths(trials, seed)),
        _ => None,
    }
}

/// Sanity pass over the spectral/operator layer used by `verify all`
/// alongside the named suites: round trip, Parseval, multiplier
/// composition, self-adjointness, Hilbert involution, Wiener embedding.
pub fn suite_spectral_basics(trials: usize, seed: u64) -> SuiteOutcome {
    let per_trial = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let bandwidth = rng.gen_range(1..=64);
        let dim = rng.gen_range(1..=3);
        let f = random_real(&mut rng, bandwidth, dim, DEFAULT_DECAY);
        let mut checks = Vec::new();

        let m = 2 * bandwidth + 1;
        let samples = f.to_samples(m);
        let (back, _) = CircleFunction::from_samples_truncated(&samples, dim, bandwidth)
            .expect("enough samples");
        let mut rt = 0.0f64;
        for (n, c) in f.iter_coeffs() {
            for d in 0..dim {
                rt = rt.max((back.coeff(n)[d] - c[d]).norm());
            }
        }
        let scale = 1.0f64.max(f.max_coeff_norm());
        checks.push(TrialCheck::new("round_trip", rt / scale, 1e-12, || {
            function_witness(&f, serde_json::json!({}))
        }));

        let parseval = {
            let lhs = f.l2_norm().powi(2);
            let rhs = crate::spectral::quadrature_l2_sq(&f, m);
            (lhs - rhs).abs() / 1.0f64.max(lhs)
        };
        checks.push(TrialCheck::new("parseval", parseval, 1e-12, || {
            function_witness(&f, serde_json::json!({}))
        }));

        let quarter = fractional_laplacian(&fractional_laplacian(&f, 0.25).expect("s"), 0.25)
            .expect("s");
        let half = fractional_laplacian(&f, 0.5).expect("s");
        let comp = quarter.sub(&half).expect("same dim").max_coeff_norm()
            / 1.0f64.max(half.max_coeff_norm());
        checks.push(TrialCheck::new("multiplier_composition", comp, 1e-14, || {
            function_witness(&f, serde_json::json!({}))
        }));

        let g = random_real(&mut rng, bandwidth, dim, DEFAULT_DECAY);
        let s = [0.25, 0.5, 0.75][rng.gen_range(0..3)];
        let lf = fractional_laplacian(&f, s).expect("s");
        let lg = fractional_laplacian(&g, s).expect("s");
        let left = pair_with_field(
            &lf.pointwise_dot(&g).expect("dims"),
            &CircleFunction::constant(&[1.0]),
        )
        .expect("pairing");
        let right = pair_with_field(
            &f.pointwise_dot(&lg).expect("dims"),
            &CircleFunction::constant(&[1.0]),
        )
        .expect("pairing");
        checks.push(TrialCheck::new(
            "self_adjointness",
            (left - right).abs() / 1.0f64.max(left.abs()),
            1e-12,
            || function_witness(&f, serde_json::json!({ "s": s })),
        ));

        let hh = crate::operators::hilbert_transform(&crate::operators::hilbert_transform(&f));
        let mut inv = 0.0f64;
        for (n, c) in hh.iter_coeffs() {
            for d in 0..dim {
                let expected = if n == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    -f.coeff(n)[d]
                };
                inv = inv.max((c[d] - expected).norm());
            }
        }
        checks.push(TrialCheck::new("hilbert_involution", inv, 0.0, || {
            function_witness(&f, serde_json::json!({}))
        }));

        // Wiener embedding: ‖f‖_𝔸 ≤ ‖f̂(0)‖ + [f]_{Ḣ^s} (Σ_{0<|k|≤N} |k|^{−2s})^{1/2}, s = 3/4.
        let s_emb = 0.75;
        let mean_norm = f
            .coeff(0)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let tail_const: f64 = (1..=bandwidth as i64)
            .map(|k| 2.0 * (k as f64).powf(-2.0 * s_emb))
            .sum::<f64>()
            .sqrt();
        let bound = mean_norm + sobolev_norm(&f, s_emb).seminorm * tail_const;
        checks.push(TrialCheck::new(
            "wiener_embedding",
            wiener_norm(&f) - bound,
            1e-12,
            || function_witness(&f, serde_json::json!({})),
        ));
        checks
    });
    SuiteOutcome::collect("spectral-basics", seed, trials, per_trial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_modest_trial_counts() {
        for (name, outcome) in [
            ("pohozaev", suite_pohozaev(8, 7)),
            ("noether", suite_noether(4, 7)),
            ("commutator", suite_commutator(8, 7)),
            ("hopf-paths", suite_hopf_paths(8, 7)),
            ("spectral", suite_spectral_basics(8, 7)),
        ] {
            assert!(
                outcome.passed(),
                "suite {name} failed: {:?}",
                outcome
                    .failures
                    .iter()
                    .map(|f| format!("{} = {:.3e} (bound {:.3e}, trial {})", f.check, f.value, f.bound, f.trial))
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn mobius_suite_passes() {
        let outcome = suite_mobius(4, 11);
        assert!(
            outcome.passed(),
            "{:?}",
            outcome
                .failures
                .iter()
                .map(|f| format!("{} = {:.3e}", f.check, f.value))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_trials_is_vacuous_pass() {
        let outcome = suite_pohozaev(0, 1);
        assert!(outcome.passed());
        assert_eq!(outcome.trials, 0);
        assert!(outcome.checks.is_empty());
    }

    #[test]
    fn trial_rng_is_deterministic() {
        let mut a = trial_rng(42, 3);
        let mut b = trial_rng(42, 3);
        assert_eq!(a.gen::<u64>(), b.gen::<u64>());
        let f1 = random_real(&mut trial_rng(1, 0), 8, 2, 1.5);
        let f2 = random_real(&mut trial_rng(1, 0), 8, 2, 1.5);
        assert_eq!(f1, f2);
    }
}
