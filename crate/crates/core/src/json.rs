//! JSON encodings of quaternions, expressions, domains and root reports.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::domain::{AxialBox, Region, DEFAULT_GRID_STEP};
use crate::error::SliceError;
use crate::expr::{Extension, SliceExpr, StemFunction};
use crate::polynomial::SlicePolynomial;
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::representation::{ext_from_holomorphic_with_grid, extend_with_grid};
use crate::zeros::{SphereZero, ZeroKind};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Slice(#[from] SliceError),
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        if a.iter().any(|v| !v.is_finite()) {
            return Err(D::Error::custom("quaternion components must be finite"));
        }
        Ok(Quaternion::from_array(a))
    }
}

impl Serialize for ImaginaryUnit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.quat().serialize(s)
    }
}

/// Accepts any quaternion with nonzero imaginary part and normalizes it.
impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let q = Quaternion::deserialize(d)?;
        ImaginaryUnit::new(q).map_err(D::Error::custom)
    }
}

/// `f64` that may be infinite or NaN: finite values are numbers, the rest
/// are the strings `"inf"`, `"-inf"`, `"nan"`.
pub mod extended_f64 {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        match *v {
            v if v.is_finite() => s.serialize_f64(v),
            v if v.is_nan() => s.serialize_str("nan"),
            v if v > 0.0 => s.serialize_str("inf"),
            _ => s.serialize_str("-inf"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(D::Error::custom(format!("expected a number, got {s:?}"))),
            },
        }
    }
}

/// Polynomial in powers of `(q - center)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    #[serde(default)]
    pub center: f64,
    pub coeffs: Vec<Quaternion>,
}

impl From<&SlicePolynomial> for PolyJson {
    fn from(p: &SlicePolynomial) -> Self {
        PolyJson { center: p.center(), coeffs: p.coeffs().to_vec() }
    }
}

impl PolyJson {
    pub fn build(&self) -> SlicePolynomial {
        SlicePolynomial::new(self.center, self.coeffs.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscJson {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

/// Region of a slice plane: boxes `[x0, x1] x (-y1, y1)` symmetric about
/// the real axis, plus discs in signed coordinates.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boxes: Vec<AxialBox>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discs: Vec<DiscJson>,
}

impl DomainJson {
    pub fn region(&self) -> Result<Region, JsonError> {
        let mut parts = Vec::new();
        for b in &self.boxes {
            if !(b.x0 < b.x1 && b.y1 > 0.0) || ![b.x0, b.x1, b.y1].iter().all(|v| v.is_finite()) {
                return Err(JsonError::Invalid(format!("degenerate box {b:?}")));
            }
            parts.push(Region::rect(b.x0, b.x1, -b.y1, b.y1));
        }
        for d in &self.discs {
            if ![d.cx, d.cy, d.r].iter().all(|v| v.is_finite()) || d.r <= 0.0 {
                return Err(JsonError::Invalid(format!("degenerate disc {d:?}")));
            }
            parts.push(Region::disc(d.cx, d.cy, d.r));
        }
        match parts.len() {
            0 => Err(JsonError::Invalid("empty domain".into())),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Region::Union(parts)),
        }
    }
}

/// Polynomial stem on the slice of `unit`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StemJson {
    pub unit: ImaginaryUnit,
    #[serde(default)]
    pub center: f64,
    pub coeffs: Vec<Quaternion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainJson>,
}

impl StemJson {
    pub fn build(&self) -> Result<StemFunction, JsonError> {
        let stem = StemFunction::from_poly(SlicePolynomial::new(self.center, self.coeffs.clone()), self.unit);
        Ok(match &self.domain {
            Some(d) => stem.with_region(d.region()?),
            None => stem,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[allow(clippy::large_enum_variant)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum ExprJson {
    Poly {
        #[serde(default)]
        center: f64,
        coeffs: Vec<Quaternion>,
    },
    Star {
        lhs: Box<ExprJson>,
        rhs: Box<ExprJson>,
    },
    Sum {
        lhs: Box<ExprJson>,
        rhs: Box<ExprJson>,
    },
    Conj {
        arg: Box<ExprJson>,
    },
    Symm {
        arg: Box<ExprJson>,
    },
    Recip {
        arg: Box<ExprJson>,
    },
    Deriv {
        arg: Box<ExprJson>,
    },
    Rscale {
        arg: Box<ExprJson>,
        scalar: Quaternion,
    },
    /// Either `stem` alone, or the pair `r`, `s`.
    Ext {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        stem: Option<StemJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<StemJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<StemJson>,
    },
}

impl ExprJson {
    pub fn build(&self) -> Result<SliceExpr, JsonError> {
        self.build_with_grid(DEFAULT_GRID_STEP)
    }

    pub fn build_with_grid(&self, grid_step: f64) -> Result<SliceExpr, JsonError> {
        let sub = |e: &ExprJson| e.build_with_grid(grid_step);
        Ok(match self {
            ExprJson::Poly { center, coeffs } => SlicePolynomial::new(*center, coeffs.clone()).into(),
            ExprJson::Star { lhs, rhs } => sub(lhs)?.star(&sub(rhs)?),
            ExprJson::Sum { lhs, rhs } => sub(lhs)?.sum(&sub(rhs)?),
            ExprJson::Conj { arg } => sub(arg)?.conj(),
            ExprJson::Symm { arg } => sub(arg)?.symm(),
            ExprJson::Recip { arg } => sub(arg)?.recip(),
            ExprJson::Deriv { arg } => sub(arg)?.deriv(),
            ExprJson::Rscale { arg, scalar } => sub(arg)?.rscale(*scalar),
            ExprJson::Ext { stem: Some(f), r: None, s: None } => ext_from_holomorphic_with_grid(f.build()?, grid_step)?,
            ExprJson::Ext { stem: None, r: Some(r), s: Some(s) } => extend_with_grid(r.build()?, s.build()?, grid_step)?,
            ExprJson::Ext { .. } => {
                return Err(JsonError::Invalid("ext takes either \"stem\" or both \"r\" and \"s\"".into()))
            }
        })
    }

    /// Encoding of `f`, when every leaf is a polynomial or a polynomial
    /// stem with a box/disc region.
    pub fn from_expr(f: &SliceExpr) -> Option<ExprJson> {
        let b = |e: &SliceExpr| ExprJson::from_expr(e).map(Box::new);
        Some(match f {
            SliceExpr::Poly(p) => ExprJson::Poly { center: p.center(), coeffs: p.coeffs().to_vec() },
            SliceExpr::Star(l, r) => ExprJson::Star { lhs: b(l)?, rhs: b(r)? },
            SliceExpr::Sum(l, r) => ExprJson::Sum { lhs: b(l)?, rhs: b(r)? },
            SliceExpr::Conj(a) => ExprJson::Conj { arg: b(a)? },
            SliceExpr::Symm(a) => ExprJson::Symm { arg: b(a)? },
            SliceExpr::Recip(a) => ExprJson::Recip { arg: b(a)? },
            SliceExpr::Deriv(a) => ExprJson::Deriv { arg: b(a)? },
            SliceExpr::RightScalar(a, s) => ExprJson::Rscale { arg: b(a)?, scalar: *s },
            SliceExpr::Ext(e) => match &**e {
                Extension::Single { f, .. } => ExprJson::Ext { stem: Some(stem_json(f)?), r: None, s: None },
                Extension::Pair { r, s, .. } => {
                    ExprJson::Ext { stem: None, r: Some(stem_json(r)?), s: Some(stem_json(s)?) }
                }
            },
            SliceExpr::Map(_) => return None,
        })
    }
}

fn stem_json(f: &StemFunction) -> Option<StemJson> {
    let p = f.as_poly()?;
    let domain = match f.region() {
        Region::Plane => None,
        r => Some(domain_json(r)?),
    };
    Some(StemJson { unit: f.unit(), center: p.center(), coeffs: p.coeffs().to_vec(), domain })
}

fn domain_json(r: &Region) -> Option<DomainJson> {
    let mut out = DomainJson::default();
    let mut push = |r: &Region| -> Option<()> {
        match *r {
            Region::Disc { cx, cy, r } => out.discs.push(DiscJson { cx, cy, r }),
            Region::Rect { x0, x1, y0, y1 } if y0 == -y1 => out.boxes.push(AxialBox { x0, x1, y1 }),
            _ => return None,
        }
        Some(())
    };
    match r {
        Region::Union(parts) => parts.iter().try_for_each(&mut push)?,
        r => push(r)?,
    }
    Some(out)
}

pub fn parse_expr(text: &str, grid_step: f64) -> Result<SliceExpr, JsonError> {
    let e: ExprJson = serde_json::from_str(text)?;
    e.build_with_grid(grid_step)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Isolated,
    Spherical,
    None,
}

/// One entry of a root report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootJson {
    pub x: f64,
    pub y: f64,
    pub kind: KindJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<ImaginaryUnit>,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub arbitrary_unit: bool,
}

impl From<&SphereZero> for RootJson {
    fn from(z: &SphereZero) -> Self {
        let (kind, unit) = match z.kind {
            ZeroKind::Isolated(u) => (KindJson::Isolated, Some(u)),
            ZeroKind::Spherical => (KindJson::Spherical, None),
            ZeroKind::None => (KindJson::None, None),
        };
        RootJson { x: z.x, y: z.y, kind, unit, residual: z.residual, arbitrary_unit: z.arbitrary_unit }
    }
}

impl TryFrom<&RootJson> for SphereZero {
    type Error = JsonError;

    fn try_from(r: &RootJson) -> Result<Self, JsonError> {
        let kind = match (r.kind, r.unit) {
            (KindJson::Isolated, Some(u)) => ZeroKind::Isolated(u),
            (KindJson::Isolated, None) => return Err(JsonError::Invalid("isolated zero without unit".into())),
            (KindJson::Spherical, _) => ZeroKind::Spherical,
            (KindJson::None, _) => ZeroKind::None,
        };
        Ok(SphereZero { x: r.x, y: r.y, kind, residual: r.residual, arbitrary_unit: r.arbitrary_unit })
    }
}

pub fn root_report(zeros: &[SphereZero]) -> Vec<RootJson> {
    zeros.iter().map(RootJson::from).collect()
}
