//! Exact JSON encodings. Rationals are `"p"` or `"p/q"` strings; a field
//! element is the list of its coordinates; a tower is the list of its
//! radicands, each given by its coordinates in the previous level.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::conic::{HasseReport, PlaceEval, TernaryForm};
use crate::construct::{DoubleCoverData, HyperellipticReport};
use crate::decide::{Certificate, Verdict};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::projline::{Mobius, ProjPoint};
use crate::qfield::{format_rational, parse_rational, FieldElem, FieldTower, Rational};

fn schema(path: &str, msg: impl Into<String>) -> Error {
    Error::schema(path, msg)
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| match e {
            Error::Schema { message, .. } => schema(path, message),
            e => e,
        }),
        _ => Err(schema(path, "expected a rational string")),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| schema(path, format!("missing field {key:?}")))
}

fn join(path: &str, key: impl std::fmt::Display) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn tower_to_json(t: &FieldTower) -> Value {
    Value::Array((0..t.level()).map(|i| Value::Array(t.radicand_coords(i).iter().map(rational_to_json).collect())).collect())
}

pub fn tower_from_json(v: &Value, path: &str) -> Result<FieldTower> {
    let mut rads = Vec::new();
    for (i, step) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let coords = match step {
            Value::String(_) => vec![rational_from_json(step, &p)?],
            _ => array(step, &p)?
                .iter()
                .enumerate()
                .map(|(j, c)| rational_from_json(c, &format!("{p}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        };
        rads.push(coords);
    }
    FieldTower::from_radicands(rads).map_err(|e| match e {
        Error::Schema { message, .. } => schema(path, message),
        e => e,
    })
}

pub fn elem_to_json(x: &FieldElem) -> Value {
    Value::Array(x.coords().iter().map(rational_to_json).collect())
}

/// A bare rational string is accepted as an element of any tower.
pub fn elem_from_json(t: &FieldTower, v: &Value, path: &str) -> Result<FieldElem> {
    match v {
        Value::String(_) => Ok(t.from_rational(rational_from_json(v, path)?)),
        _ => {
            let cs = array(v, path)?;
            if cs.len() != t.degree() {
                return Err(schema(path, format!("expected {} coordinates, found {}", t.degree(), cs.len())));
            }
            let coords =
                cs.iter().enumerate().map(|(j, c)| rational_from_json(c, &format!("{path}[{j}]"))).collect::<Result<_>>()?;
            t.elem(coords)
        }
    }
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    json!([elem_to_json(p.x()), elem_to_json(p.y())])
}

pub fn point_from_json(t: &FieldTower, v: &Value, path: &str) -> Result<ProjPoint> {
    let xy = array(v, path)?;
    if xy.len() != 2 {
        return Err(schema(path, "a point is a pair [x, y]"));
    }
    let x = elem_from_json(t, &xy[0], &format!("{path}[0]"))?;
    let y = elem_from_json(t, &xy[1], &format!("{path}[1]"))?;
    ProjPoint::new(x, y).map_err(|_| schema(path, "the point (0:0) is not projective"))
}

pub fn divisor_to_json(d: &Divisor) -> Value {
    json!({
        "tower": tower_to_json(d.tower()),
        "points": d.points().iter().map(point_to_json).collect::<Vec<_>>(),
    })
}

pub fn divisor_from_json(v: &Value, path: &str) -> Result<Divisor> {
    let t = tower_from_json(field(v, "tower", path)?, &join(path, "tower"))?;
    let pp = join(path, "points");
    let pts = array(field(v, "points", path)?, &pp)?
        .iter()
        .enumerate()
        .map(|(i, p)| point_from_json(&t, p, &format!("{pp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Divisor::new(&t, pts).map_err(|e| match e {
        Error::NotReduced => schema(&pp, "repeated points"),
        e => e,
    })
}

pub fn mobius_to_json(m: &Mobius) -> Value {
    Value::Array(m.entries().iter().map(elem_to_json).collect())
}

pub fn form_to_json(f: &TernaryForm) -> Value {
    Value::Array(f.upper().iter().map(rational_to_json).collect())
}

/// Six rationals: the upper triangle `g00 g01 g02 g11 g12 g22` of the Gram matrix.
pub fn form_from_json(v: &Value, path: &str) -> Result<TernaryForm> {
    let cs = array(v, path)?;
    if cs.len() != 6 {
        return Err(schema(path, format!("expected 6 rationals, found {}", cs.len())));
    }
    let u: Vec<Rational> =
        cs.iter().enumerate().map(|(i, c)| rational_from_json(c, &format!("{path}[{i}]"))).collect::<Result<_>>()?;
    Ok(TernaryForm::from_upper(std::array::from_fn(|i| u[i].clone())))
}

fn ints_to_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn places_to_json(ps: &[PlaceEval]) -> Value {
    Value::Array(ps.iter().map(|p| json!({"place": p.place.to_string(), "symbol": p.symbol})).collect())
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    match c {
        Certificate::P1Model(m) => json!({
            "type": "P1Model",
            "form": m.form.coeffs().iter().map(elem_to_json).collect::<Vec<_>>(),
            "b": mobius_to_json(&m.b),
        }),
        Certificate::PointWitness { conic, point } => {
            json!({"type": "PointWitness", "conic": form_to_json(conic), "point": ints_to_json(point)})
        }
        Certificate::ConicModel { conic, degrees, failing } => json!({
            "type": "ConicModel",
            "conic": form_to_json(conic),
            "degrees": degrees,
            "failing": places_to_json(failing),
        }),
        Certificate::Obstruction { conic, failing, symbols } => json!({
            "type": "Obstruction",
            "conic": form_to_json(conic),
            "failing": places_to_json(failing),
            "symbols": symbols.as_ref().map(|ss| ss.iter().map(|(a, b)| ints_to_json(&[a.clone(), b.clone()])).collect::<Vec<_>>()),
        }),
        Certificate::FastPath(rule) => json!({"type": "FastPath", "rule": rule.as_str()}),
        Certificate::Refusal { reason } => json!({"type": "Refusal", "reason": reason}),
    }
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let compression = v.compression.as_ref().map(|f| {
        json!({
            "form": form_to_json(f),
            "solvable": v.compression_solvable,
            "degrees": v.compressed_degrees,
        })
    });
    json!({
        "outcome": v.outcome.as_str(),
        "fom": tower_to_json(&v.fom),
        "aut": {"order": v.aut_order, "class": v.aut_class.to_string()},
        "h": v.h,
        "defined_over_fom": v.defined_over_fom,
        "compression": compression,
        "certificate": certificate_to_json(&v.certificate),
    })
}

pub fn hasse_to_json(r: &HasseReport, point: Option<&[BigInt; 3]>) -> Value {
    json!({
        "solvable": r.solvable,
        "failing": places_to_json(&r.failing),
        "evaluated": places_to_json(&r.evaluated),
        "symbol": ints_to_json(&[r.symbol.0.clone(), r.symbol.1.clone()]),
        "diagonal": ints_to_json(&r.diagonal.coeffs),
        "point": point.map(|p| ints_to_json(p)),
    })
}

fn plane_to_json(p: &[FieldElem; 3]) -> Value {
    Value::Array(p.iter().map(elem_to_json).collect())
}

pub fn cover_to_json(c: &DoubleCoverData) -> Value {
    json!({
        "a": c.spec.a,
        "b": c.spec.b,
        "n": c.spec.n,
        "seed": c.spec.seed,
        "conic": form_to_json(&c.conic),
        "k_prime": tower_to_json(&c.k_prime),
        "p": plane_to_json(&c.p),
        "p_bar": plane_to_json(&c.p_bar),
        "e": c.e_points.iter().map(plane_to_json).collect::<Vec<_>>(),
        "lines": c.lines.iter().map(|l| ints_to_json(l)).collect::<Vec<_>>(),
        "deck": mobius_to_json(&c.deck),
        "attempts": c.attempts,
    })
}

pub fn hyperelliptic_to_json(r: &HyperellipticReport) -> Value {
    json!({
        "branch": divisor_to_json(&r.branch),
        "genus": r.genus,
        "reduced_group": {"order": r.reduced_order, "class": r.reduced_class.to_string()},
        "divisor_obstruction": r.obstruction,
        "cyclic_condition_holds": r.cyclic_condition_holds,
        "verdict": verdict_to_json(&r.verdict),
        "note": "decides the branch divisor only; descent of the curve itself is not decided",
    })
}

pub fn error_to_json(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), Value::String(e.code().into()));
    m.insert("message".into(), Value::String(e.to_string()));
    if let Error::Schema { path, .. } = e {
        m.insert("path".into(), Value::String(path.clone()));
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_round_trip() {
        let q = FieldTower::rational();
        let t = q.extend(&q.int(2)).unwrap().tower;
        let s = t.root(0);
        let d = Divisor::from_affine(&t, [Some(s.clone()), Some(-&s), None, Some(t.int(3).inv().unwrap())]).unwrap();
        let v = divisor_to_json(&d);
        assert_eq!(divisor_from_json(&v, "").unwrap(), d);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::to_string(&divisor_to_json(&divisor_from_json(&v, "").unwrap())).unwrap(), text);
    }

    #[test]
    fn schema_paths() {
        let v: Value = serde_json::from_str(r#"{"tower": [], "points": [["0","1"], ["1","0"], ["1/0","1"]]}"#).unwrap();
        match divisor_from_json(&v, "").unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "points[2][0]"),
            e => panic!("{e:?}"),
        }
        let v: Value = serde_json::from_str(r#"{"tower": [["2"]], "points": [[["1"], "1"]]}"#).unwrap();
        assert!(matches!(divisor_from_json(&v, "").unwrap_err(), Error::Schema { .. }));
    }
}
