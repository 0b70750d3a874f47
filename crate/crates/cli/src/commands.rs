use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use slicereg::json::{root_report, ExprJson, JsonError, PolyJson, StemJson};
use slicereg::verify::{
    check_extension_roundtrip_seeded, check_grf_invariance, check_identity_suite, check_splitting_independence,
    conj_control, left_mul_control, CheckReport, Sampler,
};
use slicereg::{cauchy_kernel, poly_roots, Quaternion, SliceError, SliceExpr};

use crate::Suite;

/// Units per sphere in the GRF suite.
const GRF_UNIT_PAIRS: usize = 8;
const CHECK_DEGREE: usize = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(SliceError),
    /// Reports already rendered; some failed.
    #[error("check failed")]
    CheckFailed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 3,
            CliError::CheckFailed(_) => 1,
        }
    }
}

impl From<SliceError> for CliError {
    fn from(e: SliceError) -> Self {
        match e {
            SliceError::InvalidArgument(m) => CliError::Usage(m),
            e => CliError::Math(e),
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Slice(e) => e.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("malformed JSON: {e}"))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Format {
    pub pretty: bool,
}

impl Format {
    fn render<T: Serialize>(self, v: &T) -> String {
        let mut s = if self.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }
            .expect("serializable output");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum PointValue {
    Value(Quaternion),
    Error { error: String },
}

fn eval_points(f: &SliceExpr, points: &[Quaternion]) -> Vec<PointValue> {
    points
        .par_iter()
        .map(|&q| match slicereg::eval(f, q) {
            Ok(v) => PointValue::Value(v),
            Err(e) => PointValue::Error { error: e.to_string() },
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalInput {
    expr: ExprJson,
    points: Vec<Quaternion>,
}

pub fn eval(text: &str, grid_step: f64, fmt: Format) -> Result<String, CliError> {
    let input: EvalInput = serde_json::from_str(text)?;
    let f = input.expr.build_with_grid(grid_step)?;
    Ok(fmt.render(&eval_points(&f, &input.points)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtendInput {
    #[serde(default)]
    stem: Option<StemJson>,
    #[serde(default)]
    r: Option<StemJson>,
    #[serde(default)]
    s: Option<StemJson>,
    points: Vec<Quaternion>,
}

pub fn extend(text: &str, grid_step: f64, fmt: Format) -> Result<String, CliError> {
    let input: ExtendInput = serde_json::from_str(text)?;
    let f = ExprJson::Ext { stem: input.stem, r: input.r, s: input.s }.build_with_grid(grid_step)?;
    Ok(fmt.render(&eval_points(&f, &input.points)))
}

pub fn roots(text: &str, tol: f64, fmt: Format) -> Result<String, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let p: PolyJson = serde_json::from_str(text)?;
    let zeros = poly_roots(&p.build(), tol)?;
    Ok(fmt.render(&root_report(&zeros)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelInput {
    s: Quaternion,
    q: Quaternion,
}

pub fn kernel(text: &str, fmt: Format) -> Result<String, CliError> {
    let input: KernelInput = serde_json::from_str(text)?;
    Ok(fmt.render(&cauchy_kernel(input.s, input.q)?))
}

pub fn kernel_args(s: &str, q: &str, fmt: Format) -> Result<String, CliError> {
    let (s, q): (Quaternion, Quaternion) = (serde_json::from_str(s)?, serde_json::from_str(q)?);
    Ok(fmt.render(&cauchy_kernel(s, q)?))
}

fn renamed(mut r: CheckReport, label: &str) -> CheckReport {
    r.name = format!("{}[{label}]", r.name);
    r
}

pub fn check(suite: Suite, seed: u64, samples: usize, control: bool) -> Result<String, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let mut rng = Sampler::new(seed);
    let f = SliceExpr::poly(rng.polynomial(CHECK_DEGREE, 0.0));
    let g = SliceExpr::poly(rng.polynomial(CHECK_DEGREE, 0.0));
    let mut reports = Vec::new();

    if matches!(suite, Suite::Grf | Suite::All) {
        let cases = [("poly", f.clone()), ("star", f.star(&g)), ("conj", f.conj()), ("symm", f.symm())];
        for (label, h) in cases {
            reports.push(renamed(check_grf_invariance(&h, samples, GRF_UNIT_PAIRS, seed)?, label));
        }
        if control {
            for (label, h) in [("control:conj", conj_control()), ("control:left-i", left_mul_control())] {
                reports.push(renamed(check_grf_invariance(&h, samples, GRF_UNIT_PAIRS, seed)?, label));
            }
        }
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        reports.extend(check_identity_suite(&f, &g, samples, seed));
        reports.push(check_splitting_independence(&f, &g, samples, seed)?);
    }
    if matches!(suite, Suite::Extension | Suite::All) {
        let p = rng.polynomial(CHECK_DEGREE, 0.0);
        let unit = rng.unit();
        reports.push(check_extension_roundtrip_seeded(&p, unit, samples, seed)?);
    }

    let out: String = reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("serializable report") + "\n")
        .collect();
    if reports.iter().all(|r| r.passed) {
        Ok(out)
    } else {
        Err(CliError::CheckFailed(out))
    }
}
