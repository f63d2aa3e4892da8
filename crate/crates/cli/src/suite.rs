//! The acceptance battery: thirteen pinned property checks at desk
//! scale, each with its own deterministic RNG stream derived from the
//! suite seed. The final criterion reruns the first twelve and demands
//! byte-identical JSON, so every computation here must be exactly
//! reproducible.

use crate::jsonfmt;
use crate::report::LibraryInfo;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use tfzn_core::symbols::{
    eps_perturbation_symbol, gaussian_envelope_symbol, random_banded_matrix, random_signal,
    random_symbol,
};
use tfzn_core::wiener::penrose_residuals;
use tfzn_core::{
    cross_wigner, cv_norm, diagram_check, gabor_matrix, j_map, mod_norm, periodized_gaussian,
    pseudoinverse_riesz, pseudoinverse_svd, sjostrand_norm, stft, symbol_stft, tf_shift,
    twisted_product, weyl_quantize, young_bound_check, Calculus, ContourSpec, Error, GaborMatrix,
    GaborSystem, GroupCtx, Lattice, MixedNormSpec, ModerateWeight, OperatorMatrix, PhasePoint,
    Weight, Window,
};

/// Seed the suite runs with when none is given. The regression
/// baselines of criterion 12 were calibrated at this seed; other seeds
/// still run everything but skip the baseline comparison.
pub const DEFAULT_SUITE_SEED: u64 = 7712;

/// Regression baselines for criterion 12, frozen from the first
/// calibrated run at `DEFAULT_SUITE_SEED`.
const MODSPACE_RATIO_BASELINE: (f64, f64) = (2.942241250073624, 3.0556376427741223);
const GABOR_MATRIX_RATIO_BASELINE: (f64, f64) = (0.0068438966813019015, 0.0071505812660621546);

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub metrics: BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct SuiteSummary<'a> {
    library: LibraryInfo,
    seed: u64,
    criteria: &'a [CriterionOutcome],
    all_passed: bool,
}

pub struct SuiteOutcome {
    pub criteria: Vec<CriterionOutcome>,
    pub all_passed: bool,
    pub summary_json: String,
}

impl SuiteOutcome {
    pub fn failed_names(&self) -> Vec<String> {
        self.criteria
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} ({})", c.index, c.name))
            .collect()
    }
}

fn crit_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_system(n: usize, a: usize, b: usize) -> Result<GaborSystem, Error> {
    let ctx = GroupCtx::new(n)?;
    GaborSystem::build(&periodized_gaussian(ctx), a, b)
}

struct Check {
    passed: bool,
    details: String,
    metrics: BTreeMap<String, f64>,
}

impl Check {
    fn fail(details: impl Into<String>) -> Self {
        Check {
            passed: false,
            details: details.into(),
            metrics: BTreeMap::new(),
        }
    }

    fn metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.into(), value);
        self
    }
}

fn outcome(index: usize, name: &'static str, res: Result<Check, Error>) -> CriterionOutcome {
    match res {
        Ok(check) => CriterionOutcome {
            index,
            name,
            passed: check.passed,
            details: check.details,
            metrics: check.metrics,
        },
        Err(e) => CriterionOutcome {
            index,
            name,
            passed: false,
            details: format!("error: {e}"),
            metrics: BTreeMap::new(),
        },
    }
}

/// Criteria 1 through 12.
pub fn run_battery(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        outcome(1, "stft-oracle", c01_stft_oracle(&mut crit_rng(seed, 1))),
        outcome(2, "frame-reconstruction", c02_frame_reconstruction(&mut crit_rng(seed, 2))),
        outcome(3, "full-lattice-frame-operator", c03_full_lattice()),
        outcome(4, "wigner-intertwining", c04_wigner_intertwining(&mut crit_rng(seed, 4))),
        outcome(5, "fundamental-identity", c05_fundamental_identity(&mut crit_rng(seed, 5))),
        outcome(6, "diagram-identity", c06_diagram(&mut crit_rng(seed, 6))),
        outcome(7, "algebra-identity", c07_algebra(&mut crit_rng(seed, 7))),
        outcome(8, "cv-norm-axioms", c08_cv_axioms(&mut crit_rng(seed, 8))),
        outcome(9, "young-boundedness", c09_young(&mut crit_rng(seed, 9))),
        outcome(10, "pseudoinverse-cross-check", c10_pseudoinverse(&mut crit_rng(seed, 10))),
        outcome(11, "wiener-inverse-decay", c11_wiener(&mut crit_rng(seed, 11))),
        c12_norm_equivalence(seed),
    ]
}

/// The full suite: criteria 1-12 plus the determinism criterion, which
/// reruns the battery and compares JSON bytes.
pub fn run_suite(seed: u64) -> SuiteOutcome {
    let mut criteria = run_battery(seed);
    let first = jsonfmt::to_json_string(&criteria).unwrap_or_default();
    let second_run = run_battery(seed);
    let second = jsonfmt::to_json_string(&second_run).unwrap_or_default();
    let passed = !first.is_empty() && first == second;
    criteria.push(CriterionOutcome {
        index: 13,
        name: "determinism",
        passed,
        details: if passed {
            format!("two runs at seed {seed} produced byte-identical JSON ({} bytes)", first.len())
        } else {
            "reruns differ: JSON summaries are not byte-identical".into()
        },
        metrics: BTreeMap::from([("bytes".to_string(), first.len() as f64)]),
    });
    let all_passed = criteria.iter().all(|c| c.passed);
    let summary_json = jsonfmt::to_json_string(&SuiteSummary {
        library: LibraryInfo::current(),
        seed,
        criteria: &criteria,
        all_passed,
    })
    .expect("suite summary serializes");
    SuiteOutcome {
        criteria,
        all_passed,
        summary_json,
    }
}

fn c01_stft_oracle(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let ctx = GroupCtx::new(64)?;
    let f = random_signal(ctx, rng);
    let g = random_signal(ctx, rng);
    let v = stft(&f, &g)?;
    let mut worst = 0.0f64;
    for x in 0..64usize {
        for xi in 0..64usize {
            let mut acc = Complex64::default();
            for t in 0..64i64 {
                acc += f.get(t) * g.get(t - x as i64).conj() * ctx.root_of_unity(-(xi as i64 * t));
            }
            worst = worst.max((acc - v.get(x, xi)).norm());
        }
    }
    let ok = worst < 1e-10;
    Ok(Check {
        passed: ok,
        details: format!("fft path vs naive O(N^3) oracle at N=64: max deviation {worst:.3e}"),
        metrics: BTreeMap::new(),
    }
    .metric("max_deviation", worst))
}

fn c02_frame_reconstruction(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    match gaussian_system(144, 12, 12) {
        Ok(sys) => {
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let f = random_signal(sys.ctx(), rng);
                for (win_a, win_b) in [
                    (Window::Primary, Window::Dual),
                    (Window::Dual, Window::Primary),
                    (Window::Tight, Window::Tight),
                ] {
                    let r = sys.synthesize(&sys.analyze(&f, win_a)?, win_b)?;
                    worst = worst.max(r.sub(&f).norm() / f.norm());
                }
            }
            let ok = worst < 1e-10;
            Ok(Check {
                passed: ok,
                details: format!(
                    "three reconstruction routes at N=144, a=b=12: max residual {worst:.3e}"
                ),
                metrics: BTreeMap::new(),
            }
            .metric("max_residual", worst))
        }
        Err(Error::NotAFrame { min_eig, threshold }) => Ok(Check::fail(format!(
            "the critically sampled Gaussian system at N=144, a=b=12 is not a frame: the \
             frame operator has an exact zero eigenvalue (computed {min_eig:.3e}, threshold \
             {threshold:.3e}); at a*b = N with even steps the discrete Zak transform of the \
             even window vanishes at the symmetry point, so no dual window exists and the \
             required reconstruction residual of 1e-10 is unattainable at this configuration"
        ))
        .metric("min_eig", min_eig)
        .metric("threshold", threshold)),
        Err(e) => Err(e),
    }
}

fn c03_full_lattice() -> Result<Check, Error> {
    let ctx = GroupCtx::new(32)?;
    let g = periodized_gaussian(ctx);
    let sys = GaborSystem::build(&g, 1, 1)?;
    let scale = 32.0 * g.norm().powi(2);
    let expect = tfzn_core::linalg::CMat::identity(32, 32) * Complex64::new(scale, 0.0);
    let dev = (sys.frame_operator() - expect).norm() / sys.frame_operator().norm();
    Ok(Check {
        passed: dev < 1e-10,
        details: format!("full-lattice frame operator vs N|g|^2 I at N=32: relative deviation {dev:.3e}"),
        metrics: BTreeMap::new(),
    }
    .metric("relative_deviation", dev))
}

fn c04_wigner_intertwining(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let ctx = GroupCtx::new(15)?;
    let inv2 = ctx.inv2()? as i64;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = random_signal(ctx, rng);
        let g = random_signal(ctx, rng);
        let w = PhasePoint::new(ctx, rng.random_range(0..15), rng.random_range(0..15));
        let z = PhasePoint::new(ctx, rng.random_range(0..15), rng.random_range(0..15));
        let base = cross_wigner(&f, &g)?;
        let shifted = cross_wigner(&tf_shift(&f, w), &tf_shift(&g, z))?;
        let dx = inv2 * (w.x + z.x) as i64;
        let dxi = inv2 * (w.xi + z.xi) as i64;
        for x in 0..15usize {
            for xi in 0..15usize {
                let lhs = shifted.get(x, xi).norm();
                let rhs = base
                    .get(ctx.reduce(x as i64 - dx), ctx.reduce(xi as i64 - dxi))
                    .norm();
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    Ok(Check {
        passed: worst < 1e-10,
        details: format!(
            "Wigner shift-covariance moduli at N=15, 50 random tuples: max deviation {worst:.3e}"
        ),
        metrics: BTreeMap::new(),
    }
    .metric("max_deviation", worst))
}

fn c05_fundamental_identity(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let ctx = GroupCtx::new(15)?;
    let g = periodized_gaussian(ctx);
    let inv2 = ctx.inv2()? as i64;
    let mut constant: Option<f64> = None;
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let sigma = random_symbol(ctx, rng);
        let t = weyl_quantize(&sigma)?;
        let v = symbol_stft(&sigma, &g)?;
        for _ in 0..200 {
            let w = PhasePoint::new(ctx, rng.random_range(0..15), rng.random_range(0..15));
            let z = PhasePoint::new(ctx, rng.random_range(0..15), rng.random_range(0..15));
            let lhs = t.apply(&tf_shift(&g, z))?.inner(&tf_shift(&g, w)).norm();
            let u = PhasePoint::new(ctx, inv2 * (w.x + z.x) as i64, inv2 * (w.xi + z.xi) as i64);
            let zeta = j_map(w.sub(z, ctx), ctx);
            let ratio = lhs / v.get(u, zeta).norm();
            match constant {
                None => constant = Some(ratio),
                Some(c0) => worst = worst.max((ratio / c0 - 1.0).abs()),
            }
        }
    }
    let c0 = constant.unwrap_or(f64::NAN);
    Ok(Check {
        passed: worst < 1e-10 && c0.is_finite(),
        details: format!(
            "matrix-entry/symbol-STFT modulus identity at N=15: constant {c0:.12e}, max relative spread {worst:.3e} over 1000 pairs"
        ),
        metrics: BTreeMap::new(),
    }
    .metric("c_prime", c0)
    .metric("max_relative_spread", worst))
}

fn c06_diagram(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let sys = gaussian_system(48, 4, 4)?;
    let n = sys.ctx().n();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut raw = tfzn_core::linalg::CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                raw[(i, j)] = tfzn_core::symbols::complex_gaussian(rng);
            }
        }
        let t = OperatorMatrix::new(sys.ctx(), raw)?;
        let f = random_signal(sys.ctx(), rng);
        worst = worst.max(diagram_check(&t, &sys, &f)?);
    }
    Ok(Check {
        passed: worst < 1e-10,
        details: format!(
            "analysis-of-image vs matrix-times-dual-coefficients at N=48, 50 trials: max residual {worst:.3e}"
        ),
        metrics: BTreeMap::new(),
    }
    .metric("max_residual", worst))
}

fn c07_algebra(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let sys = gaussian_system(63, 3, 3)?;
    let tsys = sys.tight_system()?;
    let ctx = sys.ctx();
    let v = Weight::polynomial(2.0)?;
    let mut worst_residual = 0.0f64;
    let mut worst_excess = 0.0f64;
    for _ in 0..20 {
        let sigma = random_symbol(ctx, rng);
        let tau = random_symbol(ctx, rng);
        let m_sigma = gabor_matrix(&weyl_quantize(&sigma)?, &tsys)?;
        let m_tau = gabor_matrix(&weyl_quantize(&tau)?, &tsys)?;
        let prod = twisted_product(&sigma, &tau, Calculus::Weyl)?;
        let m_prod = gabor_matrix(&weyl_quantize(&prod)?, &tsys)?;
        let denom = m_sigma.frobenius_norm() * m_tau.frobenius_norm();
        let residual = m_prod.sub(&m_sigma.compose(&m_tau)?).frobenius_norm() / denom;
        worst_residual = worst_residual.max(residual);
        let lhs = cv_norm(&m_prod, &v);
        let rhs = cv_norm(&m_sigma, &v) * cv_norm(&m_tau, &v);
        worst_excess = worst_excess.max(lhs / rhs - 1.0);
    }
    let ok = worst_residual < 1e-9 && worst_excess <= 1e-12;
    Ok(Check {
        passed: ok,
        details: format!(
            "twisted-product matrix identity at N=63 (tight window), 20 pairs: max residual {worst_residual:.3e}; C_v submultiplicativity excess {worst_excess:.3e}"
        ),
        metrics: BTreeMap::new(),
    }
    .metric("max_residual", worst_residual)
    .metric("max_submultiplicative_excess", worst_excess))
}

fn c08_cv_axioms(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let ctx = GroupCtx::new(24)?;
    let lat = Lattice::new(ctx, 4, 4)?;
    let v = Weight::polynomial(2.0)?;
    let id_dev = (cv_norm(&GaborMatrix::identity(lat), &v) - 1.0).abs();
    let mu0 = lat.index(2, 3);
    let shift_dev =
        (cv_norm(&GaborMatrix::lattice_shift(lat, mu0), &v) - v.eval(ctx, lat.point(mu0))).abs();
    let mut worst_excess: f64 = 0.0;
    for _ in 0..100 {
        let a = random_banded_matrix(lat, 3.0, rng);
        let b = random_banded_matrix(lat, 4.0, rng);
        let lhs = cv_norm(&a.compose(&b)?, &v);
        let rhs = cv_norm(&a, &v) * cv_norm(&b, &v);
        worst_excess = worst_excess.max(lhs / rhs - 1.0);
    }
    let ok = id_dev < 1e-14 && shift_dev < 1e-12 && worst_excess <= 1e-12;
    Ok(Check {
        passed: ok,
        details: format!(
            "identity -> 1 (dev {id_dev:.3e}), shift -> v(mu0) (dev {shift_dev:.3e}), submultiplicativity excess {worst_excess:.3e} over 100 banded pairs"
        ),
        metrics: BTreeMap::new(),
    }
    .metric("identity_deviation", id_dev)
    .metric("shift_deviation", shift_dev)
    .metric("max_submultiplicative_excess", worst_excess))
}

fn c09_young(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let ctx = GroupCtx::new(48)?;
    let lat = Lattice::new(ctx, 4, 4)?;
    let v = Weight::polynomial(2.0)?;
    let m = random_banded_matrix(lat, 6.0, rng);
    let mut worst_fraction = 0.0f64;
    let mut ok = true;
    for weight in [Weight::constant(), Weight::polynomial(2.0)?] {
        let moderate = ModerateWeight::new(ctx, weight, v.clone())?;
        for &(p, q) in tfzn_core::modspace::pq_grid().iter() {
            let spec = MixedNormSpec::new(p, q, moderate.clone())?;
            let report = young_bound_check(&m, &v, &spec, 200, rng)?;
            ok &= report.holds;
            worst_fraction = worst_fraction.max(report.max_ratio / report.bound);
        }
    }
    Ok(Check {
        passed: ok,
        details: format!(
            "mixed-norm ratios vs C_v bound at N=48, 18 (p,q,m) combinations x 200 trials: worst ratio/bound {worst_fraction:.6}"
        ),
        metrics: BTreeMap::new(),
    }
    .metric("worst_ratio_over_bound", worst_fraction))
}

fn c10_pseudoinverse(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let ctx = GroupCtx::new(12)?;
    let lat = Lattice::new(ctx, 2, 2)?; // K = 36
    let k = lat.count();
    let mut seed_m = tfzn_core::linalg::CMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            seed_m[(i, j)] = tfzn_core::symbols::complex_gaussian(rng);
        }
    }
    let (_, vecs) = tfzn_core::linalg::hermitian_eig(&(&seed_m + seed_m.adjoint()));
    // kernel of dimension 6, nonzero spectrum spread over [1, 4]
    let spectrum: Vec<f64> = (0..k)
        .map(|i| {
            if i < 6 {
                0.0
            } else {
                1.0 + 3.0 * (i - 6) as f64 / (k - 7) as f64
            }
        })
        .collect();
    let mut d = tfzn_core::linalg::CMat::zeros(k, k);
    for (i, &s) in spectrum.iter().enumerate() {
        d[(i, i)] = Complex64::new(s, 0.0);
    }
    let raw = &vecs * d * vecs.adjoint();
    let m = GaborMatrix::new(lat, raw)?;
    let svd = pseudoinverse_svd(&m, 1e-10);
    let contour = ContourSpec::new(Complex64::new(2.5, 0.0), 2.0, 512)?;
    let riesz = pseudoinverse_riesz(&m, &contour)?;
    let dev = riesz.sub(&svd).frobenius_norm() / svd.frobenius_norm();
    let penrose = penrose_residuals(&m, &svd);
    let ok = dev < 1e-6 && penrose < 1e-9;
    Ok(Check {
        passed: ok,
        details: format!(
            "Hermitian PSD rank-30 K=36: contour(512) vs SVD deviation {dev:.3e}; worst Penrose residual {penrose:.3e}"
        ),
        metrics: BTreeMap::new(),
    }
    .metric("riesz_vs_svd", dev)
    .metric("penrose_max_residual", penrose))
}

fn c11_wiener(rng: &mut ChaCha8Rng) -> Result<Check, Error> {
    let sys = gaussian_system(105, 5, 3)?;
    let ctx = sys.ctx();
    let sigma = eps_perturbation_symbol(ctx, 0.3, 10.0, rng)?;
    let v = Weight::polynomial(2.0)?;
    let specs = vec![
        MixedNormSpec::new(2.0, 2.0, ModerateWeight::new(ctx, Weight::constant(), v.clone())?)?,
        MixedNormSpec::new(
            1.0,
            f64::INFINITY,
            ModerateWeight::new(ctx, v.clone(), v.clone())?,
        )?,
    ];
    let report = tfzn_core::wiener_experiment(&sigma, &sys, &v, &specs, 200, rng)?;
    let (_, rho_inv, _, r2_inv) = report.fitted_rates;
    let ok = report.projection_residual < 1e-8
        && report.pseudoinverse_residual < 1e-9
        && report.inverse_tail_ratio < 1e-3
        && rho_inv > 0.0
        && r2_inv > 0.9;
    Ok(Check {
        passed: ok,
        details: format!(
            "perturbation-of-identity at N=105, a=5, b=3: projection residual {:.3e}, inverse tail ratio {:.3e}, rho_inv {:.4}, r2_inv {:.4}",
            report.projection_residual, report.inverse_tail_ratio, rho_inv, r2_inv
        ),
        metrics: BTreeMap::new(),
    }
    .metric("projection_residual", report.projection_residual)
    .metric("pseudoinverse_residual", report.pseudoinverse_residual)
    .metric("inverse_tail_ratio", report.inverse_tail_ratio)
    .metric("rho_inv", rho_inv)
    .metric("r2_inv", r2_inv)
    .metric("forward_cv", report.forward_cv)
    .metric("inverse_cv", report.inverse_cv))
}

fn c12_norm_equivalence(seed: u64) -> CriterionOutcome {
    outcome(12, "norm-equivalence-regression", c12_inner(seed))
}

fn c12_inner(seed: u64) -> Result<Check, Error> {
    let mut rng = crit_rng(seed, 12);

    // window-equivalence of modulation norms at N=48, a=b=4
    let sys = gaussian_system(48, 4, 4)?;
    let ctx = sys.ctx();
    let m = ModerateWeight::new(ctx, Weight::polynomial(2.0)?, Weight::polynomial(2.0)?)?;
    let mut r_lo = f64::INFINITY;
    let mut r_hi = 0.0f64;
    for _ in 0..100 {
        let f = random_signal(ctx, &mut rng);
        for &(p, q) in tfzn_core::modspace::pq_grid().iter() {
            let spec = MixedNormSpec::new(p, q, m.clone())?;
            let ratio = mod_norm(&f, &sys, &spec, Window::Primary)?
                / mod_norm(&f, &sys, &spec, Window::Dual)?;
            r_lo = r_lo.min(ratio);
            r_hi = r_hi.max(ratio);
        }
    }

    // matrix-norm vs symbol-norm equivalence at N=15, a=b=3
    let sys15 = gaussian_system(15, 3, 3)?;
    let ctx15 = sys15.ctx();
    let g15 = periodized_gaussian(ctx15);
    let v = Weight::polynomial(2.0)?;
    let vj = v.compose_j_inv();
    let mut c_lo = f64::INFINITY;
    let mut c_hi = 0.0f64;
    for _ in 0..100 {
        let sigma = gaussian_envelope_symbol(ctx15, 2.0, &mut rng);
        let mat = gabor_matrix(&weyl_quantize(&sigma)?, &sys15)?;
        let ratio = cv_norm(&mat, &v) / sjostrand_norm(&sigma, &g15, &vj)?;
        c_lo = c_lo.min(ratio);
        c_hi = c_hi.max(ratio);
    }

    let spread_ok = r_hi / r_lo < 100.0 && c_hi / c_lo < 100.0;
    let (baseline_ok, baseline_note) = if seed == DEFAULT_SUITE_SEED {
        let within = |x: f64, base: f64| (x / base - 1.0).abs() <= 0.05;
        let ok = within(r_lo, MODSPACE_RATIO_BASELINE.0)
            && within(r_hi, MODSPACE_RATIO_BASELINE.1)
            && within(c_lo, GABOR_MATRIX_RATIO_BASELINE.0)
            && within(c_hi, GABOR_MATRIX_RATIO_BASELINE.1);
        (ok, if ok { "baselines matched to 5%" } else { "baseline drift beyond 5%" })
    } else {
        (true, "baseline comparison skipped (non-calibration seed)")
    };

    Ok(Check {
        passed: spread_ok && baseline_ok,
        details: format!(
            "window-equivalence ratios [{r_lo:.6}, {r_hi:.6}] (spread {:.3}), matrix/symbol norm ratios [{c_lo:.6}, {c_hi:.6}] (spread {:.3}); {baseline_note}",
            r_hi / r_lo,
            c_hi / c_lo
        ),
        metrics: BTreeMap::new(),
    }
    .metric("window_ratio_lo", r_lo)
    .metric("window_ratio_hi", r_hi)
    .metric("window_ratio_spread", r_hi / r_lo)
    .metric("matrix_symbol_ratio_lo", c_lo)
    .metric("matrix_symbol_ratio_hi", c_hi)
    .metric("matrix_symbol_ratio_spread", c_hi / c_lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_and_deterministic() {
        let a1 = crit_rng(1, 4).random_range(0..1_000_000u64);
        let a2 = crit_rng(1, 4).random_range(0..1_000_000u64);
        let b = crit_rng(1, 5).random_range(0..1_000_000u64);
        assert_eq!(a1, a2);
        assert_ne!(a1, b);
    }

    #[test]
    fn fast_criteria_pass() {
        assert!(outcome(3, "x", c03_full_lattice()).passed);
        assert!(outcome(8, "x", c08_cv_axioms(&mut crit_rng(DEFAULT_SUITE_SEED, 8))).passed);
        assert!(outcome(10, "x", c10_pseudoinverse(&mut crit_rng(DEFAULT_SUITE_SEED, 10))).passed);
    }
}
