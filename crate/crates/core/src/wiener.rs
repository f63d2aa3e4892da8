//! Inverse-closedness experiments: the matrix algebra identity,
//! pseudoinverses by SVD and by contour integral, decay of inverse
//! Gabor matrices, and boundedness reports on weighted coefficient
//! norms.
//!
//! All Gabor matrices in this module are built with the normalized
//! tight window, whose analysis matrix `C` satisfies `C^H C = I`. That
//! makes `M(sigma) = C sigma^w C^H` multiplicative up to the range
//! projection `P = C C^H`, so the algebra and pseudoinverse identities
//! hold exactly in finite dimensions and the residuals sit at rounding
//! level.

use crate::error::{Error, Result};
use crate::gabor::{GaborSystem, Window};
use crate::gabor_matrix::{
    cv_norm, cv_norm_profile, decay_profile, gabor_matrix, DecayProfile, GaborMatrix,
};
use crate::linalg::{hermitian_eig, inverse, op_norm, singular_extremes, svd_pseudoinverse, CMat};
use crate::modspace::{mixed_norm, MixedNormSpec, Weight};
use crate::quantize::{dequantize, twisted_product, weyl_quantize, Calculus, OperatorMatrix, Symbol};
use crate::symbols::random_coeffs;
use num_complex::Complex64;
use rand::Rng;
use std::collections::BTreeMap;

/// Circular contour for the Riesz-projection pseudoinverse. The circle
/// must enclose every nonzero eigenvalue and exclude 0; this is
/// validated against the computed spectrum at call time.
#[derive(Clone, Copy, Debug)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub points: usize,
}

impl ContourSpec {
    pub fn new(center: Complex64, radius: f64, points: usize) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Parameter(format!("contour radius must be positive, got {radius}")));
        }
        if points < 16 {
            return Err(Error::Parameter(format!(
                "contour needs at least 16 nodes, got {points}"
            )));
        }
        Ok(Self {
            center,
            radius,
            points,
        })
    }
}

/// Normalized residual of `M(sigma # tau) = M(sigma) M(tau)` on the
/// tight-window Gabor matrices. Returns 0 for the all-zero pair.
pub fn algebra_check(sigma: &Symbol, tau: &Symbol, sys: &GaborSystem) -> Result<f64> {
    sigma.ctx().check_same(tau.ctx())?;
    let tsys = sys.tight_system()?;
    let prod = twisted_product(sigma, tau, Calculus::Weyl)?;
    let m_prod = gabor_matrix(&weyl_quantize(&prod)?, &tsys)?;
    let m_sigma = gabor_matrix(&weyl_quantize(sigma)?, &tsys)?;
    let m_tau = gabor_matrix(&weyl_quantize(tau)?, &tsys)?;
    let denom = m_sigma.frobenius_norm() * m_tau.frobenius_norm();
    if denom == 0.0 {
        return Ok(0.0);
    }
    let dev = m_prod.sub(&m_sigma.compose(&m_tau)?).frobenius_norm();
    Ok(dev / denom)
}

/// Moore-Penrose pseudoinverse through the SVD; singular values below
/// `tol * sigma_max` are treated as zero.
pub fn pseudoinverse_svd(m: &GaborMatrix, tol: f64) -> GaborMatrix {
    GaborMatrix::new(m.lattice(), svd_pseudoinverse(m.matrix(), tol))
        .expect("pseudoinverse has the same shape")
}

/// Moore-Penrose pseudoinverse of a normal matrix through the Riesz
/// functional calculus: a trapezoidal discretization of
/// `(1 / 2 pi i) \oint z^{-1} (z I - M)^{-1} dz` over the given circle.
pub fn pseudoinverse_riesz(m: &GaborMatrix, contour: &ContourSpec) -> Result<GaborMatrix> {
    let a = m.matrix();
    let k = a.nrows();
    let normal_defect = (a * a.adjoint() - a.adjoint() * a).norm();
    let tol = 1e-10 * a.norm().powi(2).max(1e-300);
    if normal_defect > tol {
        return Err(Error::NotNormal {
            defect: normal_defect,
            tol,
        });
    }
    validate_contour(a, contour)?;
    let mut acc = CMat::zeros(k, k);
    let ident = CMat::identity(k, k);
    for j in 0..contour.points {
        let angle = 2.0 * std::f64::consts::PI * j as f64 / contour.points as f64;
        let dir = Complex64::from_polar(1.0, angle);
        let z = contour.center + contour.radius * dir;
        let resolvent = inverse(&(&ident * z - a)).map_err(|_| {
            Error::Contour(format!("resolvent is singular at node {j} (z = {z})"))
        })?;
        // dz = i r e^{i theta} d theta; the 1/(2 pi i) and the node
        // weight 2 pi / P combine to r dir / (P z)
        acc += resolvent * (dir * contour.radius / (z * contour.points as f64));
    }
    GaborMatrix::new(m.lattice(), acc)
}

fn validate_contour(a: &CMat, contour: &ContourSpec) -> Result<()> {
    // eigenvalues of a normal matrix: Hermitian ones are cheap; in the
    // general normal case fall back to the Schur form
    let herm_defect = (a - a.adjoint()).norm();
    let eigs: Vec<Complex64> = if herm_defect <= 1e-10 * a.norm().max(1e-300) {
        hermitian_eig(a).0.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    } else {
        let schur = a.clone().schur();
        let t = schur.unpack().1;
        (0..t.nrows()).map(|i| t[(i, i)]).collect()
    };
    let scale = eigs.iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    if (contour.center.norm() - contour.radius).abs() < 1e-8 {
        return Err(Error::Contour("0 lies within 1e-8 of the circle".into()));
    }
    if contour.center.norm() < contour.radius {
        return Err(Error::Contour("0 lies inside the circle".into()));
    }
    for e in &eigs {
        let d = (e - contour.center).norm();
        if (d - contour.radius).abs() < 1e-8 {
            return Err(Error::Contour(format!(
                "eigenvalue {e} lies within 1e-8 of the circle"
            )));
        }
        // anything outside must belong to the kernel
        if d > contour.radius && e.norm() > 1e-8 * scale.max(1e-300) {
            return Err(Error::Contour(format!(
                "nonzero eigenvalue {e} is not enclosed"
            )));
        }
    }
    Ok(())
}

/// Diagnostics of a Wiener-property experiment.
#[derive(Clone, Debug)]
pub struct WienerReport {
    pub forward_profile: DecayProfile,
    pub inverse_profile: DecayProfile,
    pub forward_cv: f64,
    pub inverse_cv: f64,
    /// Log-linear decay rates and fit quality: (rho_fwd, rho_inv,
    /// r2_fwd, r2_inv).
    pub fitted_rates: (f64, f64, f64, f64),
    /// Estimated condition numbers of the coefficient-space action,
    /// keyed by the norm spec id.
    pub condition_numbers: BTreeMap<String, f64>,
    /// Largest residual of `M(tau) M(sigma) c - c` over random frame
    /// coefficients.
    pub pseudoinverse_residual: f64,
    /// `|M(tau) M(sigma) - P|_F / |P|_F` against the range projection.
    pub projection_residual: f64,
    /// Ratio `h_tau(mu_max) / h_tau(0)` of the inverse profile.
    pub inverse_tail_ratio: f64,
}

/// Least-squares fit of `log h(mu) = alpha - rho |mu|` over offsets
/// with `h > 1e-14`; returns `(rho, r^2)`. Degenerate fits (fewer than
/// two usable points or zero variance) report `(0, 1)`.
pub fn fit_decay_rate(h: &DecayProfile) -> (f64, f64) {
    let lat = h.lattice();
    let ctx = lat.ctx();
    let pts: Vec<(f64, f64)> = (0..lat.count())
        .filter(|&i| h.get(i) > 1e-14)
        .map(|i| (lat.point(i).signed_len(ctx), h.get(i).ln()))
        .collect();
    if pts.len() < 2 {
        return (0.0, 1.0);
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return (0.0, 1.0);
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (x, y) in &pts {
        ss_res += (y - (intercept + slope * x)).powi(2);
        ss_tot += (y - mean_y).powi(2);
    }
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    (-slope, r2)
}

/// Randomized estimate of the coefficient-space operator norm of `m`
/// on the weighted mixed norm: the best ratio over `trials` random
/// coefficient arrays. A witness lower bound, not an exact norm.
pub fn estimate_op_norm(
    m: &GaborMatrix,
    spec: &MixedNormSpec,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<f64> {
    let mut best = 0.0f64;
    for _ in 0..trials {
        let c = random_coeffs(m.lattice(), rng);
        let denom = mixed_norm(&c, spec);
        if denom == 0.0 {
            continue;
        }
        let ratio = mixed_norm(&m.apply(&c)?, spec) / denom;
        best = best.max(ratio);
    }
    Ok(best)
}

/// Invert `sigma^w`, dequantize the inverse to `tau`, and diagnose how
/// the inverse Gabor matrix inherits off-diagonal decay: profiles,
/// `C_v` norms, fitted decay rates, pseudoinverse residuals on the
/// frame range, and condition-number estimates per requested norm.
pub fn wiener_experiment(
    sigma: &Symbol,
    sys: &GaborSystem,
    v: &Weight,
    specs: &[MixedNormSpec],
    trials: usize,
    rng: &mut impl Rng,
) -> Result<WienerReport> {
    let t = weyl_quantize(sigma)?;
    let (smin, smax) = singular_extremes(t.matrix());
    if smin <= 1e-8 * smax {
        return Err(Error::Singular {
            smin,
            smax,
        });
    }
    let t_inv = OperatorMatrix::new(t.ctx(), inverse(t.matrix())?)?;
    let tau = dequantize(&t_inv, Calculus::Weyl)?;

    let tsys = sys.tight_system()?;
    let m_sigma = gabor_matrix(&t, &tsys)?;
    let m_tau = gabor_matrix(&weyl_quantize(&tau)?, &tsys)?;

    let forward_profile = decay_profile(&m_sigma);
    let inverse_profile = decay_profile(&m_tau);
    let forward_cv = cv_norm_profile(&forward_profile, v);
    let inverse_cv = cv_norm_profile(&inverse_profile, v);
    let (rho_fwd, r2_fwd) = fit_decay_rate(&forward_profile);
    let (rho_inv, r2_inv) = fit_decay_rate(&inverse_profile);

    // M(tau) M(sigma) fixes ran C: check on random frame coefficients
    let product = m_tau.compose(&m_sigma)?;
    let mut pinv_residual = 0.0f64;
    for _ in 0..10 {
        let f = crate::symbols::random_signal(tsys.ctx(), rng);
        let c = tsys.analyze(&f, Window::Primary)?;
        let back = product.apply(&c)?;
        pinv_residual = pinv_residual.max(back.sub(&c).norm() / c.norm());
    }
    let cmat = tsys.analysis_matrix(Window::Primary);
    let projection = &cmat * cmat.adjoint();
    let projection_residual = (product.matrix() - &projection).norm() / projection.norm();

    let mut condition_numbers = BTreeMap::new();
    for spec in specs {
        let nf = estimate_op_norm(&m_sigma, spec, trials, rng)?;
        let ni = estimate_op_norm(&m_tau, spec, trials, rng)?;
        condition_numbers.insert(spec.id(), nf * ni);
    }

    let far = inverse_profile.farthest_offset();
    let inverse_tail_ratio = inverse_profile.get(far) / inverse_profile.get(0);

    Ok(WienerReport {
        forward_profile,
        inverse_profile,
        forward_cv,
        inverse_cv,
        fitted_rates: (rho_fwd, rho_inv, r2_fwd, r2_inv),
        condition_numbers,
        pseudoinverse_residual: pinv_residual,
        projection_residual,
        inverse_tail_ratio,
    })
}

/// One row of a boundedness report.
#[derive(Clone, Debug)]
pub struct BoundednessRow {
    pub spec_id: String,
    pub estimate: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Boundedness of the Gabor-matrix action on weighted mixed norms:
/// randomized operator-norm estimates against the `C_v`-norm bound.
#[derive(Clone, Debug)]
pub struct BoundednessReport {
    pub rows: Vec<BoundednessRow>,
    pub all_within_bound: bool,
}

pub fn boundedness_report(
    sigma: &Symbol,
    sys: &GaborSystem,
    specs: &[MixedNormSpec],
    trials: usize,
    rng: &mut impl Rng,
) -> Result<BoundednessReport> {
    let t = weyl_quantize(sigma)?;
    let m = gabor_matrix(&t, sys)?;
    let mut rows = Vec::with_capacity(specs.len());
    let mut ok = true;
    for spec in specs {
        let bound = cv_norm(&m, spec.m.base()) * spec.m.constant();
        let estimate = estimate_op_norm(&m, spec, trials, rng)?;
        let ratio = if bound == 0.0 {
            if estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            estimate / bound
        };
        ok &= ratio <= 1.0 + 1e-12;
        rows.push(BoundednessRow {
            spec_id: spec.id(),
            estimate,
            bound,
            ratio,
        });
    }
    Ok(BoundednessReport {
        rows,
        all_within_bound: ok,
    })
}

/// Simultaneous invertibility across the weighted norms: operator-norm
/// estimates for `M(sigma)` and `M(tau)` and the residual of
/// `M(tau) M(sigma)` against the range projection.
#[derive(Clone, Debug)]
pub struct SpectralInvarianceReport {
    pub forward_norms: BTreeMap<String, f64>,
    pub inverse_norms: BTreeMap<String, f64>,
    pub projection_residual: f64,
}

pub fn spectral_invariance_check(
    sigma: &Symbol,
    sys: &GaborSystem,
    specs: &[MixedNormSpec],
    trials: usize,
    rng: &mut impl Rng,
) -> Result<SpectralInvarianceReport> {
    let t = weyl_quantize(sigma)?;
    let (smin, smax) = singular_extremes(t.matrix());
    if smin <= 1e-8 * smax {
        return Err(Error::Singular { smin, smax });
    }
    let t_inv = OperatorMatrix::new(t.ctx(), inverse(t.matrix())?)?;
    let tsys = sys.tight_system()?;
    let m_sigma = gabor_matrix(&t, &tsys)?;
    let m_tau = gabor_matrix(&t_inv, &tsys)?;
    let cmat = tsys.analysis_matrix(Window::Primary);
    let projection = &cmat * cmat.adjoint();
    let projection_residual =
        (m_tau.compose(&m_sigma)?.matrix() - &projection).norm() / projection.norm();
    let mut forward_norms = BTreeMap::new();
    let mut inverse_norms = BTreeMap::new();
    for spec in specs {
        forward_norms.insert(spec.id(), estimate_op_norm(&m_sigma, spec, trials, rng)?);
        inverse_norms.insert(spec.id(), estimate_op_norm(&m_tau, spec, trials, rng)?);
    }
    Ok(SpectralInvarianceReport {
        forward_norms,
        inverse_norms,
        projection_residual,
    })
}

/// Largest deviation among the four Penrose identities of a candidate
/// pseudoinverse, each relative to the norms involved.
pub fn penrose_residuals(m: &GaborMatrix, pinv: &GaborMatrix) -> f64 {
    let a = m.matrix();
    let p = pinv.matrix();
    let apa = a * p * a;
    let pap = p * a * p;
    let ap = a * p;
    let pa = p * a;
    let r1 = (&apa - a).norm() / a.norm().max(1e-300);
    let r2 = (&pap - p).norm() / p.norm().max(1e-300);
    let r3 = (&ap - ap.adjoint()).norm() / ap.norm().max(1e-300);
    let r4 = (&pa - pa.adjoint()).norm() / pa.norm().max(1e-300);
    r1.max(r2).max(r3).max(r4)
}

/// `op_norm` of the quantized symbol; convenience for tests and the
/// experiment runner.
pub fn weyl_op_norm(sigma: &Symbol) -> Result<f64> {
    Ok(op_norm(weyl_quantize(sigma)?.matrix()))
}
