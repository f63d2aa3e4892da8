//! Experiment configuration: a TOML file with normative field names.
//!
//! Every referenced parameter is validated up front; invalid configs
//! are rejected with a diagnostic naming the offending field. Exponents
//! accept TOML's `inf` literal for the max-norm.

use crate::RunError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use tfzn_core::{GroupCtx, Lattice, MixedNormSpec, ModerateWeight, Signal, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Stft,
    GaborInfo,
    Quantize,
    GaborMatrix,
    Decay,
    Algebra,
    Wiener,
    Bounds,
    Suite,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Stft => "stft",
            ExperimentKind::GaborInfo => "gabor-info",
            ExperimentKind::Quantize => "quantize",
            ExperimentKind::GaborMatrix => "gabor-matrix",
            ExperimentKind::Decay => "decay",
            ExperimentKind::Algebra => "algebra",
            ExperimentKind::Wiener => "wiener",
            ExperimentKind::Bounds => "bounds",
            ExperimentKind::Suite => "suite",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub n: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSection {
    pub a: usize,
    pub b: usize,
}

/// `kind = "gaussian"` or explicit `samples = [[re, im], ...]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    #[serde(default = "gaussian_kind")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 2]>>,
}

fn gaussian_kind() -> String {
    "gaussian".into()
}

impl Default for WindowSection {
    fn default() -> Self {
        Self {
            kind: gaussian_kind(),
            samples: None,
        }
    }
}

/// Weight family plus parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSection {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grs: Option<bool>,
}

impl Default for WeightSection {
    fn default() -> Self {
        Self {
            kind: "constant".into(),
            s: None,
            a: None,
            b: None,
            table: None,
            grs: None,
        }
    }
}

/// Symbol generator: `constant`, `random` (optionally band-limited),
/// `gaussian-envelope`, `eps-perturbation`, or an explicit table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSection {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<[f64; 2]>>,
}

impl Default for SymbolSection {
    fn default() -> Self {
        Self {
            kind: "random".into(),
            value: None,
            eps: None,
            width: None,
            band: None,
            values: None,
        }
    }
}

/// One weighted mixed norm: exponents plus a reference into `weights`
/// (or the implicit `"v"` for the main weight).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSection {
    pub p: f64,
    pub q: f64,
    #[serde(default = "main_weight_ref")]
    pub weight: String,
}

fn main_weight_ref() -> String {
    "v".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub experiment: ExperimentKind,
    pub group: GroupSection,
    pub lattice: LatticeSection,
    #[serde(default)]
    pub window: WindowSection,
    #[serde(default)]
    pub weight: WeightSection,
    /// Named weights referenced by `norms[].weight`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, WeightSection>,
    #[serde(default)]
    pub symbol: SymbolSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub norms: Vec<NormSection>,
    /// Quantization used where a symbol becomes an operator.
    #[serde(default = "weyl_name")]
    pub calculus: String,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn weyl_name() -> String {
    "weyl".into()
}

fn default_trials() -> usize {
    200
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Everything resolved and validated, ready to run.
pub struct ResolvedConfig {
    pub raw: ExperimentConfig,
    pub ctx: GroupCtx,
    pub lattice: Lattice,
    pub window: Signal,
    pub weight: Weight,
    pub norms: Vec<MixedNormSpec>,
    pub calculus: tfzn_core::Calculus,
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config(format!("config parse error: {e}")))
    }

    pub fn resolve(&self) -> Result<ResolvedConfig, RunError> {
        let ctx = GroupCtx::new(self.group.n)
            .map_err(|e| RunError::Config(format!("group.n: {e}")))?;
        let lattice = Lattice::new(ctx, self.lattice.a, self.lattice.b).map_err(|e| match e {
            tfzn_core::Error::NotADivisor { name, .. } => {
                RunError::Config(format!("lattice.{name}: {e}"))
            }
            other => RunError::Config(format!("lattice: {other}")),
        })?;
        let window = self.resolve_window(ctx)?;
        let weight = resolve_weight(&self.weight, ctx, "weight")?;
        let mut norms = Vec::with_capacity(self.norms.len());
        for (i, norm) in self.norms.iter().enumerate() {
            let m_weight = if norm.weight == "v" {
                weight.clone()
            } else {
                let section = self.weights.get(&norm.weight).ok_or_else(|| {
                    RunError::Config(format!(
                        "norms[{i}].weight: no weight named {:?} in [weights]",
                        norm.weight
                    ))
                })?;
                resolve_weight(section, ctx, &format!("weights.{}", norm.weight))?
            };
            let moderate = ModerateWeight::new(ctx, m_weight, weight.clone())
                .map_err(|e| RunError::Config(format!("norms[{i}]: {e}")))?;
            let spec = MixedNormSpec::new(norm.p, norm.q, moderate)
                .map_err(|e| RunError::Config(format!("norms[{i}]: {e}")))?;
            norms.push(spec);
        }
        let calculus = match self.calculus.as_str() {
            "weyl" => tfzn_core::Calculus::Weyl,
            "kn" => tfzn_core::Calculus::Kn,
            other => {
                return Err(RunError::Config(format!(
                    "calculus: expected \"weyl\" or \"kn\", got {other:?}"
                )))
            }
        };
        if self.trials == 0 {
            return Err(RunError::Config("trials: must be positive".into()));
        }
        Ok(ResolvedConfig {
            raw: self.clone(),
            ctx,
            lattice,
            window,
            weight,
            norms,
            calculus,
        })
    }

    fn resolve_window(&self, ctx: GroupCtx) -> Result<Signal, RunError> {
        match (self.window.kind.as_str(), &self.window.samples) {
            ("gaussian", None) => Ok(tfzn_core::periodized_gaussian(ctx)),
            ("samples", Some(samples)) => {
                let values: Vec<Complex64> = samples
                    .iter()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect();
                Signal::new(ctx, values)
                    .map_err(|e| RunError::Config(format!("window.samples: {e}")))
            }
            ("gaussian", Some(_)) => Err(RunError::Config(
                "window.samples: remove the samples list or set window.kind = \"samples\"".into(),
            )),
            ("samples", None) => Err(RunError::Config(
                "window.samples: required when window.kind = \"samples\"".into(),
            )),
            (other, _) => Err(RunError::Config(format!(
                "window.kind: expected \"gaussian\" or \"samples\", got {other:?}"
            ))),
        }
    }
}

pub fn resolve_weight(
    section: &WeightSection,
    ctx: GroupCtx,
    field: &str,
) -> Result<Weight, RunError> {
    let fail = |e: tfzn_core::Error| RunError::Config(format!("{field}: {e}"));
    match section.kind.as_str() {
        "constant" => Ok(Weight::constant()),
        "polynomial" => {
            let s = section
                .s
                .ok_or_else(|| RunError::Config(format!("{field}.s: required for polynomial")))?;
            Weight::polynomial(s).map_err(fail)
        }
        "subexponential" => {
            let a = section.a.ok_or_else(|| {
                RunError::Config(format!("{field}.a: required for subexponential"))
            })?;
            let b = section.b.ok_or_else(|| {
                RunError::Config(format!("{field}.b: required for subexponential"))
            })?;
            Weight::subexponential(a, b).map_err(fail)
        }
        "custom" => {
            let table = section
                .table
                .clone()
                .ok_or_else(|| RunError::Config(format!("{field}.table: required for custom")))?;
            Weight::custom(ctx, table, section.grs.unwrap_or(false)).map_err(fail)
        }
        other => Err(RunError::Config(format!(
            "{field}.kind: expected constant | polynomial | subexponential | custom, got {other:?}"
        ))),
    }
}
