//! The `run` entry point: dispatches one configured experiment,
//! writes the JSON summary and CSV artifacts, and enforces the
//! experiment's own correctness assertions.
//!
//! All randomness is drawn from one ChaCha8 stream seeded by
//! `config.seed`, in the fixed order the code below reads it.

use crate::config::{ExperimentKind, ResolvedConfig};
use crate::report::{
    write_matrix_csv, write_profile_csv, write_signal_csv, write_summary, Artifacts, LibraryInfo,
    Summary,
};
use crate::{jsonfmt, RunError};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use tfzn_core::symbols::{
    eps_perturbation_symbol, gaussian_envelope_symbol, random_banded_symbol, random_signal,
    random_symbol,
};
use tfzn_core::wiener::fit_decay_rate;
use tfzn_core::{
    boundedness_report, cross_wigner, cv_norm, decay_profile, dequantize, diagram_check,
    gabor_matrix, quantize, stft, tf_shift, twisted_product, wiener_experiment, Calculus,
    GaborSystem, OperatorMatrix, PhasePoint, Symbol, Window,
};

pub struct RunOutput {
    pub summary_json: String,
    pub artifacts: Artifacts,
}

/// Build the configured symbol, drawing randomness from `rng`.
pub fn symbol_from_config(
    cfg: &ResolvedConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Symbol, RunError> {
    let section = &cfg.raw.symbol;
    let ctx = cfg.ctx;
    match section.kind.as_str() {
        "constant" => {
            let [re, im] = section.value.ok_or_else(|| {
                RunError::Config("symbol.value: required for kind = \"constant\"".into())
            })?;
            Ok(Symbol::constant(ctx, Complex64::new(re, im)))
        }
        "random" => Ok(match section.band {
            Some(band) => random_banded_symbol(ctx, band, rng),
            None => random_symbol(ctx, rng),
        }),
        "gaussian-envelope" => {
            let width = section.width.ok_or_else(|| {
                RunError::Config("symbol.width: required for kind = \"gaussian-envelope\"".into())
            })?;
            Ok(gaussian_envelope_symbol(ctx, width, rng))
        }
        "eps-perturbation" => {
            let eps = section.eps.ok_or_else(|| {
                RunError::Config("symbol.eps: required for kind = \"eps-perturbation\"".into())
            })?;
            let width = section.width.ok_or_else(|| {
                RunError::Config("symbol.width: required for kind = \"eps-perturbation\"".into())
            })?;
            Ok(eps_perturbation_symbol(ctx, eps, width, rng)?)
        }
        "table" => {
            let values = section.values.as_ref().ok_or_else(|| {
                RunError::Config("symbol.values: required for kind = \"table\"".into())
            })?;
            let values: Vec<Complex64> = values
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            Ok(Symbol::new(ctx, values)
                .map_err(|e| RunError::Config(format!("symbol.values: {e}")))?)
        }
        other => Err(RunError::Config(format!(
            "symbol.kind: expected constant | random | gaussian-envelope | eps-perturbation | table, got {other:?}"
        ))),
    }
}

fn build_system(cfg: &ResolvedConfig) -> Result<GaborSystem, RunError> {
    GaborSystem::build(&cfg.window, cfg.lattice.a(), cfg.lattice.b()).map_err(RunError::from)
}

pub fn run(cfg: &ResolvedConfig) -> Result<RunOutput, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.raw.seed);
    match cfg.raw.experiment {
        ExperimentKind::Stft => run_stft(cfg, &mut rng),
        ExperimentKind::GaborInfo => run_gabor_info(cfg, &mut rng),
        ExperimentKind::Quantize => run_quantize(cfg, &mut rng),
        ExperimentKind::GaborMatrix => run_gabor_matrix(cfg, &mut rng),
        ExperimentKind::Decay => run_decay(cfg, &mut rng),
        ExperimentKind::Algebra => run_algebra(cfg, &mut rng),
        ExperimentKind::Wiener => run_wiener(cfg, &mut rng),
        ExperimentKind::Bounds => run_bounds(cfg, &mut rng),
        ExperimentKind::Suite => {
            let outcome = crate::suite::run_suite(cfg.raw.seed);
            let dir = cfg.raw.output_dir.clone();
            let path = dir.join("suite_summary.json");
            write_summary(&path, &outcome.summary_json)?;
            if outcome.all_passed {
                Ok(RunOutput {
                    summary_json: outcome.summary_json,
                    artifacts: Artifacts {
                        summary: Some(path),
                        files: Vec::new(),
                    },
                })
            } else {
                Err(RunError::Assertion(format!(
                    "suite failed: {}",
                    outcome.failed_names().join(", ")
                )))
            }
        }
    }
}

fn finish<T: Serialize>(
    cfg: &ResolvedConfig,
    results: T,
    files: Vec<PathBuf>,
) -> Result<RunOutput, RunError> {
    let summary = Summary {
        library: LibraryInfo::current(),
        experiment: cfg.raw.experiment.name(),
        seed: cfg.raw.seed,
        config: &cfg.raw,
        results,
    };
    let json = jsonfmt::to_json_string(&summary)?;
    let path = cfg.raw.output_dir.join("summary.json");
    write_summary(&path, &json)?;
    Ok(RunOutput {
        summary_json: json,
        artifacts: Artifacts {
            summary: Some(path),
            files,
        },
    })
}

#[derive(Serialize)]
struct StftResults {
    parseval_lhs: f64,
    parseval_rhs: f64,
    parseval_rel_dev: f64,
    two_path_max_dev: f64,
    naive_oracle_max_dev: Option<f64>,
}

fn run_stft(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let ctx = cfg.ctx;
    let n = ctx.n();
    let f = random_signal(ctx, rng);
    let g = &cfg.window;
    let v = stft(&f, g)?;

    let lhs = v.sum_abs_sqr();
    let rhs = n as f64 * f.norm().powi(2) * g.norm().powi(2);
    let parseval_rel_dev = (lhs - rhs).abs() / rhs;

    let mut two_path = 0.0f64;
    for _ in 0..cfg.raw.trials.min(64) {
        let z = PhasePoint::new(ctx, rng.random_range(0..n as i64), rng.random_range(0..n as i64));
        let direct = f.inner(&tf_shift(g, z));
        two_path = two_path.max((direct - v.at(z)).norm() / (1.0 + direct.norm()));
    }

    let naive = (n <= 64).then(|| {
        let mut worst = 0.0f64;
        for x in 0..n {
            for xi in 0..n {
                let mut acc = Complex64::default();
                for t in 0..n {
                    acc += f.get(t as i64)
                        * g.get(t as i64 - x as i64).conj()
                        * ctx.root_of_unity(-((xi * t) as i64));
                }
                worst = worst.max((acc - v.get(x, xi)).norm());
            }
        }
        worst
    });

    if parseval_rel_dev > 1e-10 || two_path > 1e-10 || naive.is_some_and(|d| d > 1e-10) {
        return Err(RunError::Assertion(format!(
            "stft identities violated: parseval {parseval_rel_dev:.3e}, two-path {two_path:.3e}, naive {naive:?}"
        )));
    }

    let csv = cfg.raw.output_dir.join("stft.csv");
    write_matrix_csv(&csv, n, n, |x, xi| v.get(x, xi))?;
    finish(
        cfg,
        StftResults {
            parseval_lhs: lhs,
            parseval_rhs: rhs,
            parseval_rel_dev,
            two_path_max_dev: two_path,
            naive_oracle_max_dev: naive,
        },
        vec![csv],
    )
}

#[derive(Serialize)]
struct GaborInfoResults {
    frame_bound_a: f64,
    frame_bound_b: f64,
    condition: f64,
    gamma_residual: f64,
    commutation_residual: f64,
    reconstruction_residual_dual: f64,
    reconstruction_residual_primary: f64,
    reconstruction_residual_tight: f64,
}

fn run_gabor_info(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let sys = build_system(cfg)?;
    let (a, b) = sys.frame_bounds();
    let ctx = cfg.ctx;
    let g = sys.window(Window::Primary);

    let back = sys.apply_frame_operator(sys.window(Window::Dual))?;
    let gamma_residual = back.sub(g).norm() / g.norm();

    let mut commutation = 0.0f64;
    for idx in [1usize, sys.lattice().count() / 2, sys.lattice().count() - 1] {
        let pi = tfzn_core::tf::tf_shift_matrix(ctx, sys.lattice().point(idx));
        let dev = (sys.frame_operator() * &pi - &pi * sys.frame_operator()).norm()
            / sys.frame_operator().norm();
        commutation = commutation.max(dev);
    }

    let mut res = [0.0f64; 3];
    for _ in 0..10 {
        let f = random_signal(ctx, rng);
        let routes = [
            sys.synthesize(&sys.analyze(&f, Window::Primary)?, Window::Dual)?,
            sys.synthesize(&sys.analyze(&f, Window::Dual)?, Window::Primary)?,
            sys.synthesize(&sys.analyze(&f, Window::Tight)?, Window::Tight)?,
        ];
        for (slot, r) in res.iter_mut().zip(routes) {
            *slot = slot.max(r.sub(&f).norm() / f.norm());
        }
    }
    if res.iter().any(|&r| r > 1e-10) {
        return Err(RunError::Assertion(format!(
            "reconstruction residuals {res:?} exceed 1e-10"
        )));
    }

    let dir = &cfg.raw.output_dir;
    let files = vec![
        dir.join("window.csv"),
        dir.join("dual_window.csv"),
        dir.join("tight_window.csv"),
    ];
    write_signal_csv(&files[0], g)?;
    write_signal_csv(&files[1], sys.window(Window::Dual))?;
    write_signal_csv(&files[2], sys.window(Window::Tight))?;
    finish(
        cfg,
        GaborInfoResults {
            frame_bound_a: a,
            frame_bound_b: b,
            condition: b / a,
            gamma_residual,
            commutation_residual: commutation,
            reconstruction_residual_dual: res[0],
            reconstruction_residual_primary: res[1],
            reconstruction_residual_tight: res[2],
        },
        files,
    )
}

#[derive(Serialize)]
struct QuantizeResults {
    kn_roundtrip_residual: f64,
    weyl_roundtrip_residual: Option<f64>,
    pairing_constant_re: Option<f64>,
    pairing_constant_im: Option<f64>,
    pairing_constant_rel_spread: Option<f64>,
    hermitian_residual: Option<f64>,
}

fn run_quantize(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let ctx = cfg.ctx;
    let sigma = symbol_from_config(cfg, rng)?;
    let t = quantize(&sigma, cfg.calculus)?;

    let kn_op = tfzn_core::kn_quantize(&sigma);
    let kn_back = dequantize(&kn_op, Calculus::Kn)?;
    let kn_res = kn_back.sub(&sigma).norm() / sigma.norm().max(1e-300);

    let mut weyl_res = None;
    let mut c_re = None;
    let mut c_im = None;
    let mut c_spread = None;
    let mut herm = None;
    if ctx.n() % 2 == 1 {
        let w_op = tfzn_core::weyl_quantize(&sigma)?;
        let back = dequantize(&w_op, Calculus::Weyl)?;
        weyl_res = Some(back.sub(&sigma).norm() / sigma.norm().max(1e-300));

        // weak pairing <sigma^w f, h> = c <sigma, W(h, f)>: measure the
        // constant over 50 fresh draws and log its spread
        let mut constants = Vec::new();
        for _ in 0..50 {
            let f = random_signal(ctx, rng);
            let h = random_signal(ctx, rng);
            let lhs = w_op.apply(&f)?.inner(&h);
            let rhs = sigma.pair(&cross_wigner(&h, &f)?);
            constants.push(lhs / rhs);
        }
        let c0 = constants[0];
        let spread = constants
            .iter()
            .map(|c| (c - c0).norm() / c0.norm())
            .fold(0.0f64, f64::max);
        c_re = Some(c0.re);
        c_im = Some(c0.im);
        c_spread = Some(spread);

        let re_sigma = Symbol::from_fn(ctx, |x, xi| Complex64::new(sigma.get(x, xi).re, 0.0));
        let ht = tfzn_core::weyl_quantize(&re_sigma)?;
        herm = Some(
            (ht.matrix() - ht.matrix().adjoint()).norm() / ht.matrix().norm().max(1e-300),
        );

        if spread > 1e-12 {
            return Err(RunError::Assertion(format!(
                "weak-pairing constant not stable: spread {spread:.3e}"
            )));
        }
    }
    if kn_res > 1e-12 || weyl_res.is_some_and(|r| r > 1e-12) {
        return Err(RunError::Assertion(format!(
            "quantization round trip failed: kn {kn_res:.3e}, weyl {weyl_res:?}"
        )));
    }

    let csv = cfg.raw.output_dir.join("operator.csv");
    write_matrix_csv(&csv, ctx.n(), ctx.n(), |r, c| t.matrix()[(r, c)])?;
    finish(
        cfg,
        QuantizeResults {
            kn_roundtrip_residual: kn_res,
            weyl_roundtrip_residual: weyl_res,
            pairing_constant_re: c_re,
            pairing_constant_im: c_im,
            pairing_constant_rel_spread: c_spread,
            hermitian_residual: herm,
        },
        vec![csv],
    )
}

#[derive(Serialize)]
struct GaborMatrixResults {
    frobenius_norm: f64,
    diagram_residual_max: f64,
    hermitian_symmetry_residual: f64,
}

fn run_gabor_matrix(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let sys = build_system(cfg)?;
    let sigma = symbol_from_config(cfg, rng)?;
    let t = quantize(&sigma, cfg.calculus)?;
    let m = gabor_matrix(&t, &sys)?;

    let mut diagram = 0.0f64;
    for _ in 0..cfg.raw.trials.min(20) {
        let f = random_signal(cfg.ctx, rng);
        diagram = diagram.max(diagram_check(&t, &sys, &f)?);
    }
    if diagram > 1e-10 {
        return Err(RunError::Assertion(format!(
            "diagram residual {diagram:.3e} exceeds 1e-10"
        )));
    }

    let madj = gabor_matrix(&OperatorMatrix::new(cfg.ctx, t.matrix().adjoint())?, &sys)?;
    let herm = (madj.matrix() - m.matrix().adjoint()).norm() / m.frobenius_norm().max(1e-300);

    let k = sys.lattice().count();
    let csv = cfg.raw.output_dir.join("gabor_matrix.csv");
    write_matrix_csv(&csv, k, k, |r, c| m.matrix()[(r, c)])?;
    finish(
        cfg,
        GaborMatrixResults {
            frobenius_norm: m.frobenius_norm(),
            diagram_residual_max: diagram,
            hermitian_symmetry_residual: herm,
        },
        vec![csv],
    )
}

#[derive(Serialize)]
struct DecayResults {
    cv_norm: f64,
    fitted_rate: f64,
    fit_r2: f64,
    profile_peak: f64,
    tail_ratio: f64,
}

fn run_decay(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let sys = build_system(cfg)?;
    let sigma = symbol_from_config(cfg, rng)?;
    let t = quantize(&sigma, cfg.calculus)?;
    let m = gabor_matrix(&t, &sys)?;
    let h = decay_profile(&m);
    let cv = tfzn_core::cv_norm_profile(&h, &cfg.weight);
    let (rate, r2) = fit_decay_rate(&h);
    let far = h.farthest_offset();
    let csv = cfg.raw.output_dir.join("decay_profile.csv");
    write_profile_csv(&csv, &h)?;
    finish(
        cfg,
        DecayResults {
            cv_norm: cv,
            fitted_rate: rate,
            fit_r2: r2,
            profile_peak: h.get(0),
            tail_ratio: h.get(far) / h.get(0).max(1e-300),
        },
        vec![csv],
    )
}

#[derive(Serialize)]
struct AlgebraResults {
    residual: f64,
    cv_sigma: f64,
    cv_tau: f64,
    cv_product: f64,
    submultiplicative: bool,
}

fn run_algebra(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let sys = build_system(cfg)?;
    let sigma = symbol_from_config(cfg, rng)?;
    let tau = symbol_from_config(cfg, rng)?;
    let residual = tfzn_core::algebra_check(&sigma, &tau, &sys)?;
    if residual > 1e-9 {
        return Err(RunError::Assertion(format!(
            "algebra identity residual {residual:.3e} exceeds 1e-9"
        )));
    }
    let tsys = sys.tight_system()?;
    let m_sigma = gabor_matrix(&tfzn_core::weyl_quantize(&sigma)?, &tsys)?;
    let m_tau = gabor_matrix(&tfzn_core::weyl_quantize(&tau)?, &tsys)?;
    let prod = twisted_product(&sigma, &tau, Calculus::Weyl)?;
    let m_prod = gabor_matrix(&tfzn_core::weyl_quantize(&prod)?, &tsys)?;
    let cv_sigma = cv_norm(&m_sigma, &cfg.weight);
    let cv_tau = cv_norm(&m_tau, &cfg.weight);
    let cv_product = cv_norm(&m_prod, &cfg.weight);
    finish(
        cfg,
        AlgebraResults {
            residual,
            cv_sigma,
            cv_tau,
            cv_product,
            submultiplicative: cv_product <= cv_sigma * cv_tau * (1.0 + 1e-12),
        },
        vec![],
    )
}

#[derive(Serialize)]
struct WienerResults {
    forward_cv: f64,
    inverse_cv: f64,
    rho_fwd: f64,
    rho_inv: f64,
    r2_fwd: f64,
    r2_inv: f64,
    pseudoinverse_residual: f64,
    projection_residual: f64,
    inverse_tail_ratio: f64,
    condition_numbers: BTreeMap<String, f64>,
}

fn run_wiener(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let sys = build_system(cfg)?;
    let sigma = symbol_from_config(cfg, rng)?;
    let report = wiener_experiment(&sigma, &sys, &cfg.weight, &cfg.norms, cfg.raw.trials, rng)?;
    if report.pseudoinverse_residual > 1e-9 {
        return Err(RunError::Assertion(format!(
            "inverse Gabor matrix fails to invert on the frame range: residual {:.3e}",
            report.pseudoinverse_residual
        )));
    }
    let dir = &cfg.raw.output_dir;
    let files = vec![dir.join("forward_profile.csv"), dir.join("inverse_profile.csv")];
    write_profile_csv(&files[0], &report.forward_profile)?;
    write_profile_csv(&files[1], &report.inverse_profile)?;
    let (rho_fwd, rho_inv, r2_fwd, r2_inv) = report.fitted_rates;
    finish(
        cfg,
        WienerResults {
            forward_cv: report.forward_cv,
            inverse_cv: report.inverse_cv,
            rho_fwd,
            rho_inv,
            r2_fwd,
            r2_inv,
            pseudoinverse_residual: report.pseudoinverse_residual,
            projection_residual: report.projection_residual,
            inverse_tail_ratio: report.inverse_tail_ratio,
            condition_numbers: report.condition_numbers,
        },
        files,
    )
}

#[derive(Serialize)]
struct BoundsRow {
    spec: String,
    estimate: f64,
    bound: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct BoundsResults {
    rows: Vec<BoundsRow>,
    all_within_bound: bool,
}

fn run_bounds(cfg: &ResolvedConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    if cfg.norms.is_empty() {
        return Err(RunError::Config(
            "norms: at least one [[norms]] entry is required for the bounds experiment".into(),
        ));
    }
    let sys = build_system(cfg)?;
    let sigma = symbol_from_config(cfg, rng)?;
    let report = boundedness_report(&sigma, &sys, &cfg.norms, cfg.raw.trials, rng)?;
    let rows: Vec<BoundsRow> = report
        .rows
        .iter()
        .map(|r| BoundsRow {
            spec: r.spec_id.clone(),
            estimate: r.estimate,
            bound: r.bound,
            ratio: r.ratio,
        })
        .collect();
    if !report.all_within_bound {
        return Err(RunError::Assertion(
            "an operator-norm estimate exceeded its convolution-dominated bound".into(),
        ));
    }
    finish(
        cfg,
        BoundsResults {
            rows,
            all_within_bound: report.all_within_bound,
        },
        vec![],
    )
}
