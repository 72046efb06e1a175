//! Curve records, their canonical JSON form and re-verification.
//!
//! Every number is written as a string: rationals as `p/q` in lowest terms and
//! quadratic elements as `a+b*sqrt(d)` with squarefree `d`. Object keys are
//! sorted, so serialisation is byte-deterministic.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::curve::{
    find_isomorphism, small_relation_search, verify_torsion_claim, Curve, CurveError, Point,
    RelationResult, TorsionClaim, DEFAULT_RELATION_BOUND,
};
use crate::field::{FieldDesc, FieldError, QFElem, Rat};
use crate::params::{
    param_z10, param_z14, param_z16, rabarison_z14, z12_member, z14_field, z16_field, Group,
    ParamError, Sign,
};
use crate::sieve::{ScoreKind, SieveScore};

pub const RECORD_FILE_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("record schema violation at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("unsupported record file version {0}")]
    UnsupportedVersion(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> RecordError {
    RecordError::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub group: Group,
    pub params: BTreeMap<String, String>,
    pub source: Option<String>,
}

impl Provenance {
    pub fn new(group: Group) -> Provenance {
        Provenance {
            group,
            params: BTreeMap::new(),
            source: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRecord {
    pub label: String,
    pub curve: Curve,
    pub torsion: TorsionClaim,
    pub provenance: Provenance,
    /// Points expected to be independent of infinite order.
    pub points: Vec<Point>,
    pub score: Option<SieveScore>,
    /// Free-form notes, e.g. rank claims that were not verified here.
    pub annotations: Vec<String>,
}

impl CurveRecord {
    pub fn new(label: String, curve: Curve, torsion: TorsionClaim, provenance: Provenance) -> Self {
        CurveRecord {
            label,
            curve,
            torsion,
            provenance,
            points: Vec::new(),
            score: None,
            annotations: Vec::new(),
        }
    }

    /// `[a1,a2,a3,a4,a6]` with elements written as `a+b*sqrt(d)`.
    pub fn cas_line(&self) -> String {
        let parts: Vec<String> = self.curve.coeffs().iter().map(|c| c.to_compact()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self
            .provenance
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let score = match &self.score {
            None => Value::Null,
            Some(s) => json!({
                "bad_primes": s.bad_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "kind": s.kind.name(),
                "primes_used": s.primes_used.to_string(),
                "score": s.score.to_string(),
            }),
        };
        json!({
            "annotations": self.annotations,
            "curve": {
                "coefficients": self.curve.coeffs().iter().map(|c| c.to_compact()).collect::<Vec<_>>(),
                "field": self.curve.field().to_string(),
            },
            "label": self.label,
            "points": self.points.iter().map(point_json).collect::<Vec<_>>(),
            "provenance": {
                "group": self.provenance.group.name(),
                "params": params,
                "source": self.provenance.source,
            },
            "score": score,
            "torsion": {
                "generator": point_json(&self.torsion.generator),
                "order": self.torsion.order.to_string(),
            },
        })
    }

    pub fn from_json(v: &Value, path: &str) -> Result<CurveRecord, RecordError> {
        let obj = v
            .as_object()
            .ok_or_else(|| schema(path, "expected an object"))?;
        let get = |k: &str| {
            obj.get(k)
                .ok_or_else(|| schema(path, format!("missing key {k:?}")))
        };
        let label = str_of(get("label")?, &format!("{path}.label"))?.to_string();

        let cpath = format!("{path}.curve");
        let cobj = get("curve")?
            .as_object()
            .ok_or_else(|| schema(&cpath, "expected an object"))?;
        let field: FieldDesc = str_of(
            cobj.get("field")
                .ok_or_else(|| schema(&cpath, "missing key \"field\""))?,
            &format!("{cpath}.field"),
        )?
        .parse()?;
        let coeffs = cobj
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| schema(&cpath, "coefficients must be an array"))?;
        if coeffs.len() != 5 {
            return Err(schema(
                &cpath,
                "expected five coefficients [a1,a2,a3,a4,a6]",
            ));
        }
        let mut a: Vec<QFElem> = Vec::with_capacity(5);
        for (i, c) in coeffs.iter().enumerate() {
            a.push(elem_of(c, &field, &format!("{cpath}.coefficients[{i}]"))?);
        }
        let a: [QFElem; 5] = a.try_into().expect("length checked");
        let curve = Curve::over(field.clone(), a)?;

        let tpath = format!("{path}.torsion");
        let tobj = get("torsion")?
            .as_object()
            .ok_or_else(|| schema(&tpath, "expected an object"))?;
        let order: u32 = str_of(
            tobj.get("order")
                .ok_or_else(|| schema(&tpath, "missing key \"order\""))?,
            &format!("{tpath}.order"),
        )?
        .parse()
        .map_err(|_| schema(&tpath, "order must be a positive integer string"))?;
        let generator = point_of(
            tobj.get("generator")
                .ok_or_else(|| schema(&tpath, "missing key \"generator\""))?,
            &field,
            &format!("{tpath}.generator"),
        )?;

        let ppath = format!("{path}.points");
        let points = get("points")?
            .as_array()
            .ok_or_else(|| schema(&ppath, "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, p)| point_of(p, &field, &format!("{ppath}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;

        let vpath = format!("{path}.provenance");
        let pobj = get("provenance")?
            .as_object()
            .ok_or_else(|| schema(&vpath, "expected an object"))?;
        let group: Group = str_of(
            pobj.get("group")
                .ok_or_else(|| schema(&vpath, "missing key \"group\""))?,
            &format!("{vpath}.group"),
        )?
        .parse()
        .map_err(|e: ParamError| schema(&vpath, e.to_string()))?;
        let mut params = BTreeMap::new();
        if let Some(pm) = pobj.get("params") {
            let pm = pm
                .as_object()
                .ok_or_else(|| schema(&vpath, "params must be an object"))?;
            for (k, v) in pm {
                params.insert(
                    k.clone(),
                    str_of(v, &format!("{vpath}.params.{k}"))?.to_string(),
                );
            }
        }
        let source = match pobj.get("source") {
            None | Some(Value::Null) => None,
            Some(v) => Some(str_of(v, &format!("{vpath}.source"))?.to_string()),
        };

        let score = match obj.get("score") {
            None | Some(Value::Null) => None,
            Some(v) => Some(score_of(v, &format!("{path}.score"))?),
        };
        let annotations = match obj.get("annotations") {
            None => Vec::new(),
            Some(v) => v
                .as_array()
                .ok_or_else(|| schema(format!("{path}.annotations"), "expected an array"))?
                .iter()
                .map(|a| str_of(a, &format!("{path}.annotations")).map(str::to_string))
                .collect::<Result<Vec<_>, _>>()?,
        };

        Ok(CurveRecord {
            label,
            curve,
            torsion: TorsionClaim { order, generator },
            provenance: Provenance {
                group,
                params,
                source,
            },
            points,
            score,
            annotations,
        })
    }
}

pub fn point_json(p: &Point) -> Value {
    match p {
        Point::Infinity => Value::String("O".into()),
        Point::Affine { x, y } => json!([x.to_compact(), y.to_compact()]),
    }
}

fn str_of<'a>(v: &'a Value, path: &str) -> Result<&'a str, RecordError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn elem_of(v: &Value, field: &FieldDesc, path: &str) -> Result<QFElem, RecordError> {
    let e: QFElem = str_of(v, path)?.parse()?;
    e.promote(field)
        .map_err(|_| schema(path, format!("{} does not lie in {field}", e.to_compact())))
}

fn point_of(v: &Value, field: &FieldDesc, path: &str) -> Result<Point, RecordError> {
    if v.as_str() == Some("O") {
        return Ok(Point::Infinity);
    }
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| schema(path, "a point is \"O\" or [x, y]"))?;
    Ok(Point::affine(
        elem_of(&arr[0], field, path)?,
        elem_of(&arr[1], field, path)?,
    ))
}

fn score_of(v: &Value, path: &str) -> Result<SieveScore, RecordError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))?;
    let field = |k: &str| {
        obj.get(k)
            .ok_or_else(|| schema(path, format!("missing key {k:?}")))
            .and_then(|v| str_of(v, &format!("{path}.{k}")))
    };
    let bad = |_| schema(path, "malformed score");
    let kind: ScoreKind = field("kind")?
        .parse()
        .map_err(|_| schema(path, "unknown score kind"))?;
    let score: f64 = field("score")?.parse().map_err(bad)?;
    let primes_used: usize = field("primes_used")?
        .parse()
        .map_err(|_| schema(path, "malformed primes_used"))?;
    let bad_primes = obj
        .get("bad_primes")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(path, "bad_primes must be an array"))?
        .iter()
        .map(|p| {
            str_of(p, path)?
                .parse::<u64>()
                .map_err(|_| schema(path, "malformed prime"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SieveScore {
        score,
        primes_used,
        bad_primes,
        kind,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRecordFile {
    pub version: u64,
    pub records: Vec<CurveRecord>,
}

impl CurveRecordFile {
    pub fn new(records: Vec<CurveRecord>) -> Self {
        CurveRecordFile {
            version: RECORD_FILE_VERSION,
            records,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "records": self.records.iter().map(CurveRecord::to_json).collect::<Vec<_>>(),
            "version": self.version,
        })
    }

    pub fn from_json(v: &Value) -> Result<CurveRecordFile, RecordError> {
        let obj = v
            .as_object()
            .ok_or_else(|| schema("$", "expected an object"))?;
        let version = obj
            .get("version")
            .and_then(Value::as_u64)
            .ok_or_else(|| schema("$.version", "expected a non-negative integer"))?;
        if version != RECORD_FILE_VERSION {
            return Err(RecordError::UnsupportedVersion(version));
        }
        let records = obj
            .get("records")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("$.records", "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, r)| CurveRecord::from_json(r, &format!("$.records[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CurveRecordFile { version, records })
    }
}

/// Canonical text of a record file: pretty-printed JSON with sorted keys and
/// a trailing newline.
pub fn serialize_records(file: &CurveRecordFile) -> String {
    let mut s = serde_json::to_string_pretty(&file.to_json()).expect("values serialise");
    s.push('\n');
    s
}

/// Parses a record file. Empty (whitespace-only) input is an empty file.
pub fn parse_records(text: &str) -> Result<CurveRecordFile, RecordError> {
    if text.trim().is_empty() {
        return Ok(CurveRecordFile::new(Vec::new()));
    }
    let v: Value = serde_json::from_str(text).map_err(|e| RecordError::Json(e.to_string()))?;
    CurveRecordFile::from_json(&v)
}

/// The outcome of one check inside [`verify_record`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordReport {
    pub label: String,
    pub checks: Vec<Check>,
}

impl RecordReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.checks.iter().map(|c| json!({
                "detail": c.detail,
                "name": c.name,
                "passed": c.passed,
            })).collect::<Vec<_>>(),
            "label": self.label,
            "passed": self.passed(),
        })
    }
}

fn check(name: &'static str, r: Result<String, String>) -> Check {
    match r {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

/// Re-checks a record from scratch: points on the curve, the torsion claim,
/// absence of small relations among the listed points, agreement of the
/// field with the parameters, and, when parameters are recorded, that they
/// reproduce the curve up to isomorphism.
pub fn verify_record(rec: &CurveRecord) -> RecordReport {
    let c = &rec.curve;
    let mut checks = Vec::new();

    checks.push(check("on_curve", {
        let mut bad = Vec::new();
        if !c.contains(&rec.torsion.generator) {
            bad.push("generator".to_string());
        }
        for (i, p) in rec.points.iter().enumerate() {
            if !c.contains(p) {
                bad.push(format!("P{}", i + 1));
            }
        }
        if bad.is_empty() {
            Ok(format!(
                "generator and {} points lie on the curve",
                rec.points.len()
            ))
        } else {
            Err(format!("not on the curve: {}", bad.join(", ")))
        }
    }));

    checks.push(check(
        "torsion",
        match verify_torsion_claim(c, &rec.torsion) {
            Ok(rep) if rep.is_confirmed() => Ok(format!("generator has order {}", rep.order)),
            Ok(rep) => Err(format!("reduction check failed: {:?}", rep.reduction)),
            Err(e) => Err(e.to_string()),
        },
    ));

    checks.push(check(
        "relations",
        if rec.points.is_empty() {
            Ok("no points listed".into())
        } else {
            match small_relation_search(c, &rec.points, DEFAULT_RELATION_BOUND, &rec.torsion) {
                Ok(RelationResult::NoRelationFound { bound }) => Ok(format!(
                    "no relation with coefficients up to {bound} (heuristic)"
                )),
                Ok(RelationResult::Relation(v)) => Err(format!("relation {v:?} lands in torsion")),
                Err(e) => Err(e.to_string()),
            }
        },
    ));

    checks.push(check("field", field_consistency(rec)));
    checks.push(check("parameters", parameter_consistency(rec)));

    RecordReport {
        label: rec.label.clone(),
        checks,
    }
}

fn param<'a>(rec: &'a CurveRecord, key: &str) -> Option<&'a str> {
    rec.provenance.params.get(key).map(String::as_str)
}

fn parse_rat(rec: &CurveRecord, key: &str) -> Result<Option<Rat>, String> {
    param(rec, key)
        .map(|s| {
            s.parse::<Rat>()
                .map_err(|e| format!("parameter {key}: {e}"))
        })
        .transpose()
}

fn field_consistency(rec: &CurveRecord) -> Result<String, String> {
    let field = rec.curve.field();
    let expected: Option<FieldDesc> = match rec.provenance.group {
        Group::Z10 | Group::Z12 => Some(FieldDesc::Rationals),
        Group::Z14 => match parse_rat(rec, "u")? {
            Some(u) => Some(z14_field(&u).map_err(|e| e.to_string())?.field),
            None => None,
        },
        Group::Z16 => match (parse_rat(rec, "m")?, param(rec, "branch")) {
            (Some(m), Some(b)) => {
                let b: u8 = b.parse().map_err(|_| "branch must be 1 or 2".to_string())?;
                let d = z16_field(&m, b).map_err(|e| e.to_string())?;
                Some(FieldDesc::quadratic(d).map_err(|e| e.to_string())?)
            }
            _ => None,
        },
    };
    match expected {
        Some(f) if &f == field => Ok(format!("curve is over {field} as the parameters predict")),
        Some(f) => Err(format!("curve is over {field}, parameters give {f}")),
        None if field.is_rationals() && rec.provenance.group.order() > 12 => Err(format!(
            "a point of order {} cannot be defined over Q",
            rec.provenance.group.order()
        )),
        None => Ok(format!(
            "curve is over {field}; no field parameter recorded"
        )),
    }
}

fn parameter_consistency(rec: &CurveRecord) -> Result<String, String> {
    let rebuilt: Result<Option<Curve>, ParamError> = (|| {
        let sign = |k: &str| -> Result<Sign, ParamError> {
            param(rec, k).unwrap_or("plus").parse::<Sign>()
        };
        let rat = |k: &str| -> Result<Option<Rat>, ParamError> {
            parse_rat(rec, k).map_err(ParamError::Unsupported)
        };
        Ok(match rec.provenance.group {
            Group::Z10 => match rat("u")? {
                Some(u) => Some(param_z10(&u)?.curve),
                None => None,
            },
            Group::Z12 => match rat("t")? {
                Some(t) => Some(z12_member(&t)?.curve),
                None => None,
            },
            Group::Z14 => match (rat("u")?, param(rec, "form")) {
                (Some(u), Some("rabarison")) => Some(rabarison_z14(&u, sign("w_sign")?)?.curve),
                (Some(u), _) => Some(param_z14(&u, sign("sign")?)?.curve),
                (None, _) => None,
            },
            Group::Z16 => match (rat("m")?, param(rec, "branch")) {
                (Some(m), Some(b)) => {
                    let b: u8 = b
                        .parse()
                        .map_err(|_| ParamError::Unsupported(format!("branch {b}")))?;
                    Some(param_z16(&m, b)?.curve)
                }
                _ => None,
            },
        })
    })();
    match rebuilt {
        Err(e) => Err(format!("parameters do not build a curve: {e}")),
        Ok(None) => Ok("no parameters recorded".into()),
        Ok(Some(built)) => match find_isomorphism(&built, &rec.curve) {
            Ok(Some(_)) => Ok("parameters reproduce the curve up to isomorphism".into()),
            Ok(None) => Err("the parametrised curve is not isomorphic to the record".into()),
            Err(e) => Err(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::param_z12;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn round_trip_is_canonical() {
        let mut rec = param_z12(&r("2")).unwrap();
        rec.annotations.push("test".into());
        let file = CurveRecordFile::new(vec![rec]);
        let text = serialize_records(&file);
        let back = parse_records(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(serialize_records(&back), text);
    }

    #[test]
    fn quadratic_round_trip() {
        let rec = param_z14(&r("11/5"), Sign::Plus).unwrap();
        let file = CurveRecordFile::new(vec![rec]);
        let text = serialize_records(&file);
        assert!(text.contains("sqrt(430)"));
        assert_eq!(parse_records(&text).unwrap(), file);
    }

    #[test]
    fn verify_parametrised_record() {
        let rec = param_z12(&r("3")).unwrap();
        let rep = verify_record(&rec);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn wrong_order_fails() {
        let mut rec = param_z12(&r("3")).unwrap();
        rec.torsion.order = 6;
        assert!(!verify_record(&rec).passed());
    }

    #[test]
    fn empty_input() {
        assert!(parse_records("").unwrap().records.is_empty());
        assert!(parse_records("  \n").unwrap().records.is_empty());
    }

    #[test]
    fn schema_errors_name_the_path() {
        let err = parse_records(r#"{"version": 1, "records": [{"label": "x"}]}"#).unwrap_err();
        match err {
            RecordError::Schema { path, .. } => assert_eq!(path, "$.records[0]"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_records(r#"{"version": 7, "records": []}"#),
            Err(RecordError::UnsupportedVersion(7))
        ));
        assert!(matches!(parse_records("{"), Err(RecordError::Json(_))));
    }

    #[test]
    fn cas_line_format() {
        let rec = param_z12(&r("2")).unwrap();
        let (a, b) = crate::params::z12_coeffs(&r("2"));
        assert_eq!(rec.cas_line(), format!("[0,{a},0,{b},0]"));
    }
}
