//! JSON encodings. Inputs are parsed into the `*Json` structs with serde
//! and then checked against the mathematical invariants; outputs are built
//! as `serde_json::Value`, whose maps keep keys sorted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::btgroup::BTDesc;
use crate::ff::{FFElem, FieldDesc};
use crate::gltheory::ModMatrix;
use crate::mpoly::{MPoly, MPolyRing, DEFAULT_MAX_DEG};
use crate::npoly::NewtonPolygon;
use crate::ring::Ring;
use crate::semilinear::SigmaMat;
use crate::series::{LSeries, SeriesCtx};
use crate::strata::NPgon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {msg}")]
pub struct JsonError {
    pub path: String,
    pub msg: String,
}

fn err<T>(path: &str, msg: impl ToString) -> Result<T, JsonError> {
    Err(JsonError { path: path.to_string(), msg: msg.to_string() })
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u64,
    pub deg: u32,
    /// Checked against the canonical modulus when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

/// A field element: an integer (for prime fields, reduced mod `p`) or a
/// coefficient list in the power basis, constant first.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Coeffs(Vec<i64>),
}

/// `sum_k terms[k] u^{ord + k}`, known modulo `u^prec` (exact when `prec` is null).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub ord: i64,
    pub terms: Vec<ElemJson>,
    #[serde(default)]
    pub prec: Option<i64>,
}

/// `[[coeff, [exponents]], ...]`.
pub type MPolyJson = Vec<(ElemJson, Vec<u32>)>;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BaseJson {
    Field {
        field: FieldJson,
    },
    Series {
        field: FieldJson,
        #[serde(default)]
        e: Option<u32>,
        #[serde(default)]
        prec: Option<i64>,
    },
    Mpoly {
        field: FieldJson,
        nvars: usize,
        #[serde(default)]
        max_deg: Option<u32>,
    },
}

impl BaseJson {
    pub fn kind(&self) -> &'static str {
        match self {
            BaseJson::Field { .. } => "field",
            BaseJson::Series { .. } => "series",
            BaseJson::Mpoly { .. } => "mpoly",
        }
    }
}

/// Just the base of a document, to choose the entry type before the full parse.
#[derive(Deserialize, Clone, Debug)]
pub struct BaseOnly {
    pub base: BaseJson,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BtJson<E> {
    pub c: usize,
    pub d: usize,
    pub base: BaseJson,
    pub entries: Vec<Vec<E>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AdditiveJson {
    pub base: BaseJson,
    /// `a_1, ..., a_c`.
    pub coeffs: Vec<SeriesJson>,
    /// Field searched for a witness; the residue field by default.
    #[serde(default)]
    pub search: Option<FieldJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModMatrixJson {
    pub n: usize,
    pub p: u64,
    pub m: u32,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct NPgonJson {
    pub c: usize,
    pub d: usize,
    pub slopes: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IgusaJson {
    pub field: FieldJson,
    pub a1: SeriesJson,
    pub alpha: SeriesJson,
    pub levels: usize,
    #[serde(default)]
    pub prec: Option<i64>,
}

// ---- decoding

pub fn field(j: &FieldJson, path: &str) -> Result<FieldDesc, JsonError> {
    let f = FieldDesc::new(j.p, j.deg).or_else(|e| err(path, e))?;
    if let Some(m) = &j.modulus {
        if m.as_slice() != f.modulus() {
            return err(&format!("{path}.modulus"), format!("expected the canonical modulus {:?}", f.modulus()));
        }
    }
    Ok(f)
}

pub fn elem(f: &FieldDesc, j: &ElemJson, path: &str) -> Result<FFElem, JsonError> {
    let p = f.p() as i64;
    match j {
        ElemJson::Int(k) => {
            if f.degree() == 1 {
                Ok(f.from_int(*k))
            } else {
                err(path, format!("integer element in {}; use a coefficient list", f.id()))
            }
        }
        ElemJson::Coeffs(c) => {
            if c.len() > f.degree() as usize {
                return err(path, format!("{} coefficients for a degree-{} field", c.len(), f.degree()));
            }
            let mut c: Vec<u64> = c.iter().map(|x| x.rem_euclid(p) as u64).collect();
            c.resize(f.degree() as usize, 0);
            f.elem(&c).or_else(|e| err(path, e))
        }
    }
}

pub fn series_ctx(j: &BaseJson, default_prec: i64, path: &str) -> Result<SeriesCtx, JsonError> {
    match j {
        BaseJson::Series { field: fj, e, prec } => {
            let f = field(fj, &format!("{path}.field"))?;
            SeriesCtx::new(f, e.unwrap_or(1), prec.unwrap_or(default_prec)).or_else(|e| err(path, e))
        }
        other => err(path, format!("expected a series base, got kind {:?}", other.kind())),
    }
}

pub fn series(ctx: &SeriesCtx, j: &SeriesJson, path: &str) -> Result<LSeries, JsonError> {
    let f = ctx.residue();
    let mut terms = Vec::new();
    for (k, t) in j.terms.iter().enumerate() {
        let x = elem(f, t, &format!("{path}.terms[{k}]"))?;
        if !x.is_zero() {
            terms.push((j.ord + k as i64, x));
        }
    }
    ctx.from_terms(&terms, j.prec).or_else(|e| err(path, e))
}

pub fn mpoly(r: &MPolyRing, j: &MPolyJson, path: &str) -> Result<MPoly, JsonError> {
    let mut terms = Vec::new();
    for (k, (c, e)) in j.iter().enumerate() {
        terms.push((elem(r.field(), c, &format!("{path}[{k}][0]"))?, e.clone()));
    }
    r.from_terms(&terms).or_else(|e| err(path, e))
}

fn entries<R: Ring, E>(
    ring: &R,
    rows: &[Vec<E>],
    c: usize,
    mut conv: impl FnMut(&E, &str) -> Result<R::Elem, JsonError>,
) -> Result<SigmaMat<R>, JsonError> {
    if rows.len() != c || rows.iter().any(|r| r.len() != c) {
        return err("entries", format!("expected a {c}x{c} matrix"));
    }
    let mut out = Vec::with_capacity(c);
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(c);
        for (j, x) in row.iter().enumerate() {
            r.push(conv(x, &format!("entries[{i}][{j}]"))?);
        }
        out.push(r);
    }
    SigmaMat::new(ring.clone(), out).or_else(|e| err("entries", e))
}

pub fn bt_field(j: &BtJson<ElemJson>) -> Result<BTDesc<FieldDesc>, JsonError> {
    let BaseJson::Field { field: fj } = &j.base else {
        return err("base", "expected kind \"field\"");
    };
    let f = field(fj, "base.field")?;
    let hw = entries(&f, &j.entries, j.c, |x, p| elem(&f, x, p))?;
    BTDesc::new(j.c, j.d, hw).or_else(|e| err("c", e))
}

pub fn bt_series(j: &BtJson<SeriesJson>, default_prec: i64) -> Result<BTDesc<SeriesCtx>, JsonError> {
    let ctx = series_ctx(&j.base, default_prec, "base")?;
    let hw = entries(&ctx, &j.entries, j.c, |x, p| series(&ctx, x, p))?;
    BTDesc::new(j.c, j.d, hw).or_else(|e| err("c", e))
}

pub fn bt_mpoly(j: &BtJson<MPolyJson>) -> Result<BTDesc<MPolyRing>, JsonError> {
    let BaseJson::Mpoly { field: fj, nvars, max_deg } = &j.base else {
        return err("base", "expected kind \"mpoly\"");
    };
    let f = field(fj, "base.field")?;
    let ring = MPolyRing::new(f, *nvars, max_deg.unwrap_or(DEFAULT_MAX_DEG));
    let hw = entries(&ring, &j.entries, j.c, |x, p| mpoly(&ring, x, p))?;
    BTDesc::new(j.c, j.d, hw).or_else(|e| err("c", e))
}

pub fn mod_matrix(j: &ModMatrixJson) -> Result<ModMatrix, JsonError> {
    ModMatrix::new(j.n, j.p, j.m, &j.rows).or_else(|e| err("rows", e))
}

pub fn npgon(j: &NPgonJson) -> Result<NPgon, JsonError> {
    let mut slopes = Vec::new();
    for (k, &(n, d)) in j.slopes.iter().enumerate() {
        if d == 0 {
            return err(&format!("slopes[{k}]"), "zero denominator");
        }
        slopes.push(BigRational::new(n.into(), d.into()));
    }
    NPgon::new(j.c, j.d, slopes).or_else(|e| err("slopes", e))
}

// ---- encoding

pub fn rat_to_json(r: &BigRational) -> Value {
    let n = r.numer().to_i64().map(Value::from).unwrap_or_else(|| Value::from(r.numer().to_string()));
    let d = r.denom().to_i64().map(Value::from).unwrap_or_else(|| Value::from(r.denom().to_string()));
    json!([n, d])
}

/// An integer when integral, otherwise `[num, den]`.
pub fn rat_compact(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Some(n) = r.numer().to_i64() {
            return Value::from(n);
        }
    }
    rat_to_json(r)
}

pub fn rat_from_pair(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn field_to_json(f: &FieldDesc) -> Value {
    json!({"p": f.p(), "deg": f.degree(), "modulus": f.modulus()})
}

pub fn field_json(f: &FieldDesc) -> FieldJson {
    FieldJson { p: f.p(), deg: f.degree(), modulus: Some(f.modulus().to_vec()) }
}

pub fn elem_to_json(x: &FFElem) -> Value {
    json!(x.coeffs())
}

pub fn series_to_json(s: &LSeries) -> Value {
    let ord = s.ord_bound().unwrap_or(0);
    let top = s.terms().last().map_or(ord, |t| t.0 + 1);
    let terms: Vec<Value> = (ord..top).map(|k| elem_to_json(&s.coeff(k).expect("known"))).collect();
    json!({"ord": ord, "terms": terms, "prec": s.prec()})
}

pub fn ctx_to_json(ctx: &SeriesCtx) -> Value {
    json!({"kind": "series", "field": field_to_json(ctx.residue()), "e": ctx.e(), "prec": ctx.prec()})
}

pub fn np_to_json(np: &NewtonPolygon) -> Value {
    json!({
        "vertices": np.vertices.iter().map(|(x, y)| json!([x, rat_to_json(y)])).collect::<Vec<_>>(),
        "slopes": np.slopes.iter().map(|(s, l)| json!([rat_to_json(s), l])).collect::<Vec<_>>(),
    })
}

pub fn segments_to_json(segs: &[(BigRational, usize)]) -> Value {
    Value::Array(segs.iter().map(|(v, m)| json!({"valuation": rat_to_json(v), "count": m})).collect())
}

pub fn npgon_to_json(b: &NPgon) -> Value {
    json!({"c": b.c(), "d": b.d(), "slopes": b.slopes().iter().map(rat_to_json).collect::<Vec<_>>()})
}

pub fn mod_matrix_to_json(m: &ModMatrix) -> Value {
    json!({"n": m.n(), "p": m.p(), "m": m.m(), "rows": m.rows()})
}

pub fn bt_field_to_json(b: &BTDesc<FieldDesc>) -> Value {
    json!({
        "c": b.c,
        "d": b.d,
        "base": {"kind": "field", "field": field_to_json(b.hw.ring())},
        "entries": b.hw.entries().iter().map(|r| r.iter().map(elem_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn bt_series_to_json(b: &BTDesc<SeriesCtx>) -> Value {
    json!({
        "c": b.c,
        "d": b.d,
        "base": ctx_to_json(b.hw.ring()),
        "entries": b.hw.entries().iter().map(|r| r.iter().map(series_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
