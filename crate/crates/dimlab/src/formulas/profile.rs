//! Dimension profiles: functions theta -> dimension value, tagged by the
//! dimension notion they compute and how to read the value (exact closed
//! form, or an upper/lower bound).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionKind {
    Hausdorff,
    Intermediate,
    Box,
    AssouadSpectrum,
    QuasiAssouad,
    Assouad,
    Lower,
    QuasiHausdorff,
}

impl DimensionKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "hausdorff" => Ok(DimensionKind::Hausdorff),
            "intermediate" => Ok(DimensionKind::Intermediate),
            "box" => Ok(DimensionKind::Box),
            "assouad_spectrum" => Ok(DimensionKind::AssouadSpectrum),
            "quasi_assouad" => Ok(DimensionKind::QuasiAssouad),
            "assouad" => Ok(DimensionKind::Assouad),
            "lower" => Ok(DimensionKind::Lower),
            "quasi_hausdorff" => Ok(DimensionKind::QuasiHausdorff),
            other => Err(Error::parameter(format!("unknown dimension kind `{other}`"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DimensionKind::Hausdorff => "hausdorff",
            DimensionKind::Intermediate => "intermediate",
            DimensionKind::Box => "box",
            DimensionKind::AssouadSpectrum => "assouad_spectrum",
            DimensionKind::QuasiAssouad => "quasi_assouad",
            DimensionKind::Assouad => "assouad",
            DimensionKind::Lower => "lower",
            DimensionKind::QuasiHausdorff => "quasi_hausdorff",
        }
    }

    /// Whether the profile genuinely depends on theta.
    pub fn is_parametric(&self) -> bool {
        matches!(
            self,
            DimensionKind::Intermediate | DimensionKind::AssouadSpectrum
        )
    }
}

/// How to read a profile value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueTag {
    Exact,
    Upper,
    Lower,
}

#[derive(Clone)]
enum ProfileEval {
    Constant(f64),
    Closed(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    Sampled { thetas: Vec<f64>, values: Vec<f64> },
}

impl fmt::Debug for ProfileEval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileEval::Constant(c) => write!(f, "Constant({c})"),
            ProfileEval::Closed(_) => write!(f, "Closed(..)"),
            ProfileEval::Sampled { thetas, .. } => write!(f, "Sampled({} knots)", thetas.len()),
        }
    }
}

/// A dimension-as-function-of-theta together with its metadata.
#[derive(Debug, Clone)]
pub struct DimensionProfile {
    pub kind: DimensionKind,
    pub ambient_dim: u32,
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub tag: ValueTag,
    /// theta values where the profile switches analytic branch; grid-based
    /// consumers refine their grids with these.
    pub breakpoints: Vec<f64>,
    eval: ProfileEval,
}

impl DimensionProfile {
    pub fn constant(kind: DimensionKind, ambient_dim: u32, value: f64) -> Self {
        DimensionProfile {
            kind,
            ambient_dim,
            family: String::new(),
            params: BTreeMap::new(),
            tag: ValueTag::Exact,
            breakpoints: Vec::new(),
            eval: ProfileEval::Constant(value),
        }
    }

    pub fn closed(
        kind: DimensionKind,
        ambient_dim: u32,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        DimensionProfile {
            kind,
            ambient_dim,
            family: String::new(),
            params: BTreeMap::new(),
            tag: ValueTag::Exact,
            breakpoints: Vec::new(),
            eval: ProfileEval::Closed(Arc::new(f)),
        }
    }

    /// Piecewise-linear profile through sampled knots (thetas strictly
    /// increasing in (0,1]).
    pub fn sampled(
        kind: DimensionKind,
        ambient_dim: u32,
        thetas: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if thetas.len() != values.len() || thetas.is_empty() {
            return Err(Error::parameter("sampled profile needs matching non-empty knots"));
        }
        for w in thetas.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::parameter("sampled profile thetas must increase"));
            }
        }
        if thetas[0] <= 0.0 || *thetas.last().unwrap() > 1.0 {
            return Err(Error::parameter("sampled profile thetas must lie in (0,1]"));
        }
        Ok(DimensionProfile {
            kind,
            ambient_dim,
            family: String::new(),
            params: BTreeMap::new(),
            tag: ValueTag::Exact,
            breakpoints: Vec::new(),
            eval: ProfileEval::Sampled { thetas, values },
        })
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = family.into();
        self
    }

    pub fn with_params<I: IntoIterator<Item = (&'static str, f64)>>(mut self, it: I) -> Self {
        for (k, v) in it {
            self.params.insert(k.to_string(), v);
        }
        self
    }

    pub fn with_tag(mut self, tag: ValueTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn with_breakpoints(mut self, bps: Vec<f64>) -> Self {
        self.breakpoints = bps;
        self
    }

    /// Re-declare the ambient dimension (e.g. a line set viewed inside the
    /// plane); values are unchanged, only the clamp range widens.
    pub fn with_ambient(mut self, n: u32) -> Self {
        self.ambient_dim = n;
        self
    }

    /// Value at theta, clamped into [0, ambient_dim]. theta is clamped into
    /// [1e-12, 1] so endpoint limits are usable; every profile here varies
    /// on the log-theta scale, where 1e-12 is beyond any resolvable regime.
    pub fn eval(&self, theta: f64) -> f64 {
        let theta = theta.clamp(1e-12, 1.0);
        let raw = match &self.eval {
            ProfileEval::Constant(c) => *c,
            ProfileEval::Closed(f) => f(theta),
            ProfileEval::Sampled { thetas, values } => {
                match thetas.binary_search_by(|t| t.partial_cmp(&theta).unwrap()) {
                    Ok(i) => values[i],
                    Err(0) => values[0],
                    Err(i) if i == thetas.len() => *values.last().unwrap(),
                    Err(i) => {
                        let (t0, t1) = (thetas[i - 1], thetas[i]);
                        let frac = (theta - t0) / (t1 - t0);
                        values[i - 1] + frac * (values[i] - values[i - 1])
                    }
                }
            }
        };
        raw.clamp(0.0, self.ambient_dim as f64)
    }

    pub fn sample(&self, grid: &[f64]) -> Vec<(f64, f64)> {
        grid.iter().map(|&t| (t, self.eval(t))).collect()
    }

    /// JSON report: `{kind, family, params, n, samples: [{theta, value, tag}]}`.
    pub fn to_json(&self, grid: &[f64]) -> serde_json::Value {
        let samples: Vec<serde_json::Value> = self
            .sample(grid)
            .into_iter()
            .map(|(t, v)| {
                serde_json::json!({
                    "theta": t,
                    "value": v,
                    "tag": match self.tag {
                        ValueTag::Exact => "exact",
                        ValueTag::Upper => "upper",
                        ValueTag::Lower => "lower",
                    },
                })
            })
            .collect();
        serde_json::json!({
            "kind": self.kind.as_str(),
            "family": self.family,
            "params": self.params,
            "n": self.ambient_dim,
            "samples": samples,
        })
    }
}

/// Log-spaced theta grid in [lo, 1], ascending. Used both by bound scanners
/// and by the CLI's default sampling.
pub fn log_theta_grid(count: usize, lo: f64) -> Vec<f64> {
    let lo = lo.max(1e-12).min(1.0);
    if count <= 1 {
        return vec![1.0];
    }
    let l0 = lo.ln();
    (0..count)
        .map(|i| {
            let frac = i as f64 / (count - 1) as f64;
            (l0 * (1.0 - frac)).exp().min(1.0)
        })
        .collect()
}
