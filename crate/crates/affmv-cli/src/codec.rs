//! JSON codecs. Rationals travel as `"p/q"` strings; JSON numbers are accepted only for integer fields.

use std::collections::BTreeMap;

use affmv::decorations::Zigzag;
use affmv::linalg::fmt_q;
use affmv::mvpoly::{LatticePoint, LusztigDatum, MVPolytope, Partition, ValidationReport};
use affmv::paths::Element;
use affmv::treefold::{FoldedPath, Marker};
use affmv::upsilon::BottomData;
use affmv::{Form, Path, Root, Segment, Vector, Q};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

/// Schema violation at a JSON-pointer location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {message}", if pointer.is_empty() { "/" } else { pointer.as_str() })]
pub struct CodecError {
    pub pointer: String,
    pub message: String,
}

pub type Result<T> = std::result::Result<T, CodecError>;

fn fail<T>(ptr: &str, message: impl Into<String>) -> Result<T> {
    Err(CodecError { pointer: ptr.to_string(), message: message.into() })
}

fn child(ptr: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{ptr}/{key}")
}

/// Values with a JSON form.
pub trait Codec: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, ptr: &str) -> Result<Self>;
}

pub fn decode<T: Codec>(text: &str) -> Result<T> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| CodecError { pointer: String::new(), message: e.to_string() })?;
    T::from_json(&v, "")
}

pub fn encode<T: Codec>(x: &T) -> String {
    serde_json::to_string_pretty(&x.to_json()).expect("serializable")
}

fn field<'a>(v: &'a Value, key: &str, ptr: &str) -> Result<&'a Value> {
    match v {
        Value::Object(m) => match m.get(key) {
            Some(x) => Ok(x),
            None => fail(ptr, format!("missing field \"{key}\"")),
        },
        _ => fail(ptr, "expected an object"),
    }
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| fail(ptr, "expected an array"), Ok)
}

fn list<T>(v: &Value, ptr: &str, f: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    array(v, ptr)?.iter().enumerate().map(|(j, x)| f(x, &child(ptr, j))).collect()
}

fn int(v: &Value, ptr: &str) -> Result<i64> {
    match v {
        Value::Number(n) => n.as_i64().map_or_else(|| fail(ptr, format!("expected an integer, got {n}")), Ok),
        _ => fail(ptr, "expected an integer"),
    }
}

/// Parses `p`, `-p` or `p/q` with decimal integers.
pub fn parse_q(s: &str) -> std::result::Result<Q, String> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let parse = |x: &str| -> std::result::Result<BigInt, String> {
        let digits = x.strip_prefix('-').unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("\"{s}\" is not a rational of the form p/q"));
        }
        x.parse().map_err(|_| format!("\"{s}\" is not a rational"))
    };
    let (n, d) = (parse(n)?, parse(d)?);
    if d == BigInt::from(0) {
        return Err(format!("\"{s}\" has zero denominator"));
    }
    Ok(Q::new(n, d))
}

impl Codec for Q {
    fn to_json(&self) -> Value {
        Value::String(fmt_q(self))
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        match v {
            Value::String(s) => parse_q(s).or_else(|m| fail(ptr, m)),
            Value::Number(n) if n.is_i64() => fail(ptr, format!("rationals are strings, write \"{n}\"")),
            Value::Number(n) => fail(ptr, format!("floats are rejected: {n}")),
            _ => fail(ptr, "expected a rational string \"p/q\""),
        }
    }
}

impl Codec for Vector {
    fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(Codec::to_json).collect())
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        list(v, ptr, Q::from_json).map(Vector)
    }
}

impl Codec for Form {
    fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(Codec::to_json).collect())
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        list(v, ptr, Q::from_json).map(Form)
    }
}

impl Codec for Path {
    fn to_json(&self) -> Value {
        let segs: Vec<Value> =
            self.segments().iter().map(|s| json!({"dir": s.dir.to_json(), "dur": s.dur.to_json()})).collect();
        json!({"start": self.start().to_json(), "segments": segs, "shape": self.shape().to_json()})
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let start = Vector::from_json(field(v, "start", ptr)?, &child(ptr, "start"))?;
        let sp = child(ptr, "segments");
        let segments = list(field(v, "segments", ptr)?, &sp, |s, p| {
            Ok(Segment {
                dir: Vector::from_json(field(s, "dir", p)?, &child(p, "dir"))?,
                dur: Q::from_json(field(s, "dur", p)?, &child(p, "dur"))?,
            })
        })?;
        let shape = Vector::from_json(field(v, "shape", ptr)?, &child(ptr, "shape"))?;
        Path::new(start, segments, shape).or_else(|e| fail(ptr, e.to_string()))
    }
}

impl Codec for LatticePoint {
    fn to_json(&self) -> Value {
        json!([self.c0, self.c1])
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        match list(v, ptr, int)?.as_slice() {
            &[c0, c1] => Ok(LatticePoint::new(c0, c1)),
            _ => fail(ptr, "expected [c0, c1]"),
        }
    }
}

impl Codec for Partition {
    fn to_json(&self) -> Value {
        json!(self.parts())
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        Partition::new(list(v, ptr, int)?).or_else(|e| fail(ptr, e.to_string()))
    }
}

fn sparse_to_json(m: &BTreeMap<usize, i64>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn sparse_from_json(v: &Value, ptr: &str) -> Result<BTreeMap<usize, i64>> {
    let Value::Object(m) = v else { return fail(ptr, "expected an object {\"k\": value}") };
    let mut out = BTreeMap::new();
    for (k, x) in m {
        let p = child(ptr, k);
        let idx: usize = match k.parse() {
            Ok(i) if i >= 1 => i,
            _ => return fail(&p, format!("index \"{k}\" is not a positive integer")),
        };
        match int(x, &p)? {
            0 => {}
            n if n > 0 => {
                out.insert(idx, n);
            }
            n => return fail(&p, format!("entry {n} is negative")),
        }
    }
    Ok(out)
}

impl Codec for LusztigDatum {
    fn to_json(&self) -> Value {
        json!({"bottom": sparse_to_json(&self.bottom), "partition": self.partition.to_json(), "top": sparse_to_json(&self.top)})
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        Ok(LusztigDatum {
            bottom: sparse_from_json(field(v, "bottom", ptr)?, &child(ptr, "bottom"))?,
            partition: Partition::from_json(field(v, "partition", ptr)?, &child(ptr, "partition"))?,
            top: sparse_from_json(field(v, "top", ptr)?, &child(ptr, "top"))?,
        })
    }
}

impl Codec for MVPolytope {
    fn to_json(&self) -> Value {
        json!({"base": self.base.to_json(), "left": self.left.to_json(), "right": self.right.to_json()})
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        Ok(MVPolytope {
            base: LatticePoint::from_json(field(v, "base", ptr)?, &child(ptr, "base"))?,
            left: LusztigDatum::from_json(field(v, "left", ptr)?, &child(ptr, "left"))?,
            right: LusztigDatum::from_json(field(v, "right", ptr)?, &child(ptr, "right"))?,
        })
    }
}

impl Codec for Root {
    fn to_json(&self) -> Value {
        json!({"form": self.form.to_json(), "coroot": self.coroot.to_json()})
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        Ok(Root {
            form: Form::from_json(field(v, "form", ptr)?, &child(ptr, "form"))?,
            coroot: Vector::from_json(field(v, "coroot", ptr)?, &child(ptr, "coroot"))?,
        })
    }
}

impl Codec for FoldedPath {
    fn to_json(&self) -> Value {
        let markers: Vec<Value> = self
            .markers
            .iter()
            .map(|m| json!({"interval": [m.start.to_json(), m.end.to_json()], "level": m.level, "coeff": m.coeff.to_json()}))
            .collect();
        json!({"base": self.base.to_json(), "root": self.root.to_json(), "markers": markers})
    }

    fn from_json(v: &Value, ptr: &str) -> Result<Self> {
        let mp = child(ptr, "markers");
        let markers = list(field(v, "markers", ptr)?, &mp, |m, p| {
            let ip = child(p, "interval");
            let iv = list(field(m, "interval", p)?, &ip, Q::from_json)?;
            let [start, end] = <[Q; 2]>::try_from(iv).or_else(|_| fail(&ip, "expected [start, end]"))?;
            Ok(Marker {
                start,
                end,
                level: int(field(m, "level", p)?, &child(p, "level"))?,
                coeff: Q::from_json(field(m, "coeff", p)?, &child(p, "coeff"))?,
            })
        })?;
        Ok(FoldedPath {
            base: Path::from_json(field(v, "base", ptr)?, &child(ptr, "base"))?,
            root: Root::from_json(field(v, "root", ptr)?, &child(ptr, "root"))?,
            markers,
        })
    }
}

/// `{"left": [...], "right": [...], "zigzags": [...]}`.
pub fn decoration_json(left: &Partition, right: &Partition, zigzags: &[Zigzag]) -> Value {
    let zs: Vec<Value> = zigzags
        .iter()
        .map(|z| {
            json!({"i": z.i, "k": z.k, "interval": [z.s.to_json(), z.v.to_json()], "inner": [z.t.to_json(), z.u.to_json()]})
        })
        .collect();
    json!({"left": left.to_json(), "right": right.to_json(), "zigzags": zs})
}

pub fn bottom_data_json(b: &BottomData) -> Value {
    let vs: Vec<Value> = b.vertices.iter().map(Codec::to_json).collect();
    json!({"side": b.side, "vertices": vs, "multiplicities": b.multiplicities})
}

pub fn report_json(r: &ValidationReport) -> Value {
    let ks = |v: &[(usize, bool)]| -> Value {
        Value::Object(v.iter().map(|(k, ok)| (k.to_string(), json!(ok))).collect::<Map<_, _>>())
    };
    json!({
        "passed": r.passed(),
        "closure": r.closure,
        "bottom": ks(&r.bottom),
        "top": ks(&r.top),
        "parallel": r.parallel,
        "removed_part": r.removed_part,
        "partitions": r.partitions,
        "part_bounds": r.part_bounds,
    })
}

pub fn element_json(e: &Element) -> Value {
    json!({"word": e.word, "depth": e.depth, "path": e.path.to_json()})
}
