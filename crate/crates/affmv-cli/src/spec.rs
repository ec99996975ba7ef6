//! Crystal-element specifications given on the command line.

use std::fmt;
use std::str::FromStr;

use affmv::linalg::fmt_q;
use affmv::mvpoly::{complete, lowering_word, LatticePoint, LusztigDatum, MVPolytope, Side};
use affmv::paths::FWord;
use affmv::{Path, RootDatum, Vector};
use serde_json::Value;
use thiserror::Error;

use crate::codec::{parse_q, Codec, CodecError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("bad f-word {text:?}: {message}")]
    FWord { text: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Schema { path: String, source: CodecError },
    #[error(transparent)]
    Library(#[from] affmv::Error),
}

/// `f1^3 f0^2 @ Lambda=[a,b,c]`: the factors act right to left on the straight path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FWordSpec {
    pub word: FWord,
    pub shape: Vector,
}

impl FWordSpec {
    pub fn path(&self, datum: &RootDatum) -> Result<Option<Path>, affmv::Error> {
        Ok(self.word.apply(datum, &Path::straight(datum, &self.shape)?))
    }
}

impl fmt::Display for FWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(i, k) in &self.word.0 {
            if k == 1 {
                write!(f, "f{i} ")?;
            } else {
                write!(f, "f{i}^{k} ")?;
            }
        }
        let entries: Vec<String> = self.shape.0.iter().map(fmt_q).collect();
        write!(f, "@ Lambda=[{}]", entries.join(","))
    }
}

impl FromStr for FWordSpec {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<Self, SpecError> {
        let bad = |m: &str| SpecError::FWord { text: text.to_string(), message: m.to_string() };
        let (word, shape) = text.split_once('@').ok_or_else(|| bad("missing \"@ Lambda=[...]\""))?;
        let mut factors = Vec::new();
        for tok in word.split_whitespace() {
            let rest = tok.strip_prefix('f').ok_or_else(|| bad(&format!("factor {tok:?} does not start with f")))?;
            let (i, k) = rest.split_once('^').unwrap_or((rest, "1"));
            let i: usize = i.parse().map_err(|_| bad(&format!("bad index in {tok:?}")))?;
            let k: u32 = k.parse().map_err(|_| bad(&format!("bad exponent in {tok:?}")))?;
            if k == 0 {
                return Err(bad(&format!("exponent of {tok:?} is not positive")));
            }
            factors.push((i, k));
        }
        let shape = shape.trim();
        let inner = shape
            .strip_prefix("Lambda")
            .map(str::trim_start)
            .and_then(|s| s.strip_prefix('='))
            .map(str::trim)
            .and_then(|s| s.strip_prefix('['))
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("expected Lambda=[a,b,c]"))?;
        let entries = inner.split(',').map(parse_q).collect::<Result<Vec<_>, _>>().map_err(|m| bad(&m))?;
        Ok(FWordSpec { word: FWord(factors), shape: Vector(entries) })
    }
}

/// A polytope file holds either a full polytope or one datum with its side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumFile {
    Polytope(MVPolytope),
    Datum { side: Side, datum: LusztigDatum },
}

impl DatumFile {
    pub fn from_json(v: &Value) -> Result<Self, CodecError> {
        let Some(side) = v.get("side") else { return MVPolytope::from_json(v, "").map(DatumFile::Polytope) };
        let side = match side.as_str() {
            Some("left") => Side::Left,
            Some("right") => Side::Right,
            _ => return Err(CodecError { pointer: "/side".into(), message: "expected \"left\" or \"right\"".into() }),
        };
        let d = v
            .get("datum")
            .ok_or_else(|| CodecError { pointer: String::new(), message: "missing field \"datum\"".into() })?;
        Ok(DatumFile::Datum { side, datum: LusztigDatum::from_json(d, "/datum")? })
    }

    pub fn polytope(&self) -> Result<MVPolytope, affmv::Error> {
        match self {
            DatumFile::Polytope(p) => Ok(p.clone()),
            DatumFile::Datum { side, datum } => complete(*side, datum, LatticePoint::ZERO),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    FWord(FWordSpec),
    PathJson(Path),
    DatumJson(DatumFile),
}

impl ElementSpec {
    /// An argument naming an existing file is read as JSON; anything else is an f-word.
    pub fn parse(arg: &str) -> Result<Self, SpecError> {
        let looks_like_word =
            arg.contains('@') || arg.trim_start().starts_with('f') && !std::path::Path::new(arg).exists();
        if looks_like_word {
            return arg.parse().map(ElementSpec::FWord);
        }
        let text = std::fs::read_to_string(arg).map_err(|source| SpecError::Io { path: arg.to_string(), source })?;
        let schema = |source| SpecError::Schema { path: arg.to_string(), source };
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| schema(CodecError { pointer: String::new(), message: e.to_string() }))?;
        if v.get("segments").is_some() {
            Path::from_json(&v, "").map(ElementSpec::PathJson).map_err(schema)
        } else {
            DatumFile::from_json(&v).map(ElementSpec::DatumJson).map_err(schema)
        }
    }

    /// The path of the element; `None` when an f-word annihilates the straight path.
    pub fn path(&self, datum: &RootDatum) -> Result<Option<Path>, affmv::Error> {
        match self {
            ElementSpec::FWord(w) => w.path(datum),
            ElementSpec::PathJson(p) => Ok(Some(p.clone())),
            ElementSpec::DatumJson(d) => {
                let word = lowering_word(&d.polytope()?)?;
                let n = word.len() as i64 + 1;
                let w = FWordSpec {
                    word: FWord(word.iter().rev().map(|&i| (i, 1)).collect()),
                    shape: Vector::from_ints(&[0, n, 4 * n]),
                };
                w.path(datum)
            }
        }
    }
}
