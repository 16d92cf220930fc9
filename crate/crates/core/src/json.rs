//! JSON reading and writing for fields, scalars, maps, groups,
//! constellations, orbits and reports.
//!
//! Rationals are written as strings `"p/q"` (integers as `"p"`). Inputs
//! also accept JSON integers and finite decimals.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::constellation::{Constellation, FiberComponent, Permutation};
use crate::error::{Error, Result};
use crate::galois::{GrowthCertificate, TransformGroup};
use crate::maps::{AlgebraicPointSet, Moebius, RamificationPortrait, RationalMap, SpherePoint};
use crate::orbifold::ClassVerdict;
use crate::orbits::{orbit, OrbitSet, ValueSet, VerificationReport};
use crate::poly::Poly;
use crate::scalar::{parse_rational, rational_to_string, ExactScalar, Field, FieldKind, NumberField};

fn bad(what: &str, v: &Value) -> Error {
    Error::InvalidInput(format!("expected {what}, found {v}"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::InvalidInput(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().and_then(|n| usize::try_from(n).ok()).ok_or_else(|| bad(what, v))
}

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(bad("a rational number", v)),
    }
}

pub fn field_to_json(k: &NumberField) -> Value {
    let spec = k.spec();
    let mut out = Map::new();
    out.insert("kind".into(), json!(spec.kind().as_str()));
    if spec.kind() == FieldKind::Extension {
        out.insert("min_poly".into(), Value::Array(spec.min_poly().iter().map(rational_to_json).collect()));
        let (re, im, rad) = spec.embedding();
        out.insert("embedding".into(), json!({"re": rational_to_json(re), "im": rational_to_json(im), "rad": rational_to_json(rad)}));
    }
    Value::Object(out)
}

/// Reads a field. A missing `rad` selects the root of `min_poly` nearest
/// to `(re, im)`; `{"kind": "cyclotomic", "n": n}` is also accepted.
pub fn field_from_json(v: &Value) -> Result<NumberField> {
    let kind = get(v, "kind")?.as_str().ok_or_else(|| bad("a field kind", v))?;
    match kind {
        "rationals" => Ok(NumberField::rationals()),
        "gaussian-rationals" => Ok(NumberField::gaussian()),
        "cyclotomic" => {
            let n = u32::try_from(usize_of(get(v, "n")?, "a positive integer")?).map_err(|_| bad("a small integer", v))?;
            if n == 0 {
                return Err(Error::InvalidField("cyclotomic order must be positive".into()));
            }
            Ok(NumberField::cyclotomic(n))
        }
        "simple-extension" => {
            let m: Vec<BigRational> = array(get(v, "min_poly")?, "a coefficient list")?.iter().map(rational_from_json).collect::<Result<_>>()?;
            let emb = get(v, "embedding")?;
            let re = rational_from_json(get(emb, "re")?)?;
            let im = rational_from_json(get(emb, "im")?)?;
            match emb.get("rad") {
                Some(rad) => NumberField::with_embedding(&m, re, im, rational_from_json(rad)?),
                None => NumberField::extension(&m, Complex64::new(to_f64(&re), to_f64(&im))),
            }
        }
        other => Err(Error::InvalidField(format!("unknown field kind {other:?}"))),
    }
}

fn to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// The field of a document: its `"field"` entry, or the rationals.
pub fn document_field(doc: &Value) -> Result<NumberField> {
    match doc.get("field") {
        Some(f) => field_from_json(f),
        None => Ok(NumberField::rationals()),
    }
}

pub fn scalar_to_json(k: &NumberField, a: &ExactScalar) -> Value {
    match k.kind() {
        FieldKind::Rationals => rational_to_json(&a.coords[0]),
        FieldKind::Gaussian => json!({"re": rational_to_json(&a.coords[0]), "im": rational_to_json(&a.coords[1])}),
        FieldKind::Extension => json!({"coords": a.coords.iter().map(rational_to_json).collect::<Vec<_>>()}),
    }
}

pub fn scalar_from_json(k: &NumberField, v: &Value) -> Result<ExactScalar> {
    let a = match v {
        Value::String(_) | Value::Number(_) => k.from_rational(&rational_from_json(v)?),
        Value::Object(o) if o.contains_key("coords") => {
            let cs: Vec<BigRational> = array(&o["coords"], "a coordinate list")?.iter().map(rational_from_json).collect::<Result<_>>()?;
            if cs.len() > k.degree() {
                return Err(Error::FieldMismatch);
            }
            let mut padded = cs;
            padded.resize(k.degree(), BigRational::zero());
            k.from_coords(&padded)
        }
        Value::Object(o) if o.contains_key("re") => {
            if k.kind() != FieldKind::Gaussian {
                return Err(Error::FieldMismatch);
            }
            let re = rational_from_json(&o["re"])?;
            let im = o.get("im").map(rational_from_json).transpose()?.unwrap_or_else(BigRational::zero);
            k.from_coords(&[re, im])
        }
        _ => return Err(bad("a field element", v)),
    };
    k.validate(&a)?;
    Ok(a)
}

pub fn point_to_json(k: &NumberField, p: &SpherePoint) -> Value {
    match p {
        SpherePoint::Finite(a) => scalar_to_json(k, a),
        SpherePoint::Infinity => json!("inf"),
    }
}

pub fn point_from_json(k: &NumberField, v: &Value) -> Result<SpherePoint> {
    match v.as_str() {
        Some("inf" | "infinity" | "∞") => Ok(SpherePoint::Infinity),
        _ => Ok(SpherePoint::Finite(scalar_from_json(k, v)?)),
    }
}

fn poly_to_json(k: &NumberField, p: &Poly<NumberField>) -> Value {
    if p.is_zero() {
        return json!([rational_to_json(&BigRational::zero())]);
    }
    Value::Array(p.coeffs().iter().map(|c| scalar_to_json(k, c)).collect())
}

fn poly_from_json(k: &NumberField, v: &Value) -> Result<Poly<NumberField>> {
    let cs = array(v, "a coefficient list")?.iter().map(|c| scalar_from_json(k, c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(k.clone(), cs))
}

/// `{"num": [...], "den": [...]}`, coefficients low to high.
pub fn map_to_json(p: &RationalMap) -> Value {
    let k = p.field();
    json!({"num": poly_to_json(k, p.num()), "den": poly_to_json(k, p.den())})
}

/// Reads a map; `den` defaults to `[1]`.
pub fn map_from_json(k: &NumberField, v: &Value) -> Result<RationalMap> {
    let num = poly_from_json(k, get(v, "num")?)?;
    let den = match v.get("den") {
        Some(d) => poly_from_json(k, d)?,
        None => Poly::one(k.clone()),
    };
    RationalMap::new(num, den)
}

/// The maps of a document: a `"maps"` list, a `"map"` entry, or the
/// document itself, over [`document_field`].
pub fn maps_from_document(doc: &Value) -> Result<(NumberField, Vec<RationalMap>)> {
    let k = document_field(doc)?;
    let maps = if let Some(list) = doc.get("maps") {
        array(list, "a list of maps")?.iter().map(|m| map_from_json(&k, m)).collect::<Result<Vec<_>>>()?
    } else if let Some(m) = doc.get("map") {
        vec![map_from_json(&k, m)?]
    } else {
        vec![map_from_json(&k, doc)?]
    };
    if maps.is_empty() {
        return Err(Error::InvalidInput("no maps given".into()));
    }
    Ok((k, maps))
}

pub fn moebius_to_json(m: &Moebius) -> Value {
    let k = m.field();
    let [a, b, c, d] = m.coefficients();
    json!({"a": scalar_to_json(k, a), "b": scalar_to_json(k, b), "c": scalar_to_json(k, c), "d": scalar_to_json(k, d)})
}

pub fn moebius_from_json(k: &NumberField, v: &Value) -> Result<Moebius> {
    let e = |key| scalar_from_json(k, get(v, key)?);
    Moebius::new(k, e("a")?, e("b")?, e("c")?, e("d")?)
}

pub fn moebius_list_from_json(k: &NumberField, v: &Value) -> Result<Vec<Moebius>> {
    array(v, "a list of transformations")?.iter().map(|m| moebius_from_json(k, m)).collect()
}

pub fn group_to_json(g: &TransformGroup) -> Value {
    let mut out = Map::new();
    out.insert("order".into(), g.order().map_or(Value::Null, |n| json!(n)));
    out.insert("generators".into(), Value::Array(g.generators().iter().map(moebius_to_json).collect()));
    if let Some(es) = g.elements() {
        out.insert("elements".into(), Value::Array(es.iter().map(moebius_to_json).collect()));
    }
    Value::Object(out)
}

pub fn growth_certificate_to_json(c: &GrowthCertificate) -> Value {
    json!({"ball_sizes": c.ball_sizes, "infinite_order_element": moebius_to_json(&c.infinite_order_element)})
}

pub fn portrait_to_json(k: &NumberField, p: &RamificationPortrait) -> Value {
    let entries: Vec<Value> = p
        .entries
        .iter()
        .map(|e| {
            let value = match &e.value {
                AlgebraicPointSet::Point(x) => point_to_json(k, x),
                AlgebraicPointSet::Class(m) => json!({"roots_of": poly_to_json(k, m), "rendered": e.value.render(k)}),
            };
            json!({"value": value, "local_degrees": e.local_degrees})
        })
        .collect();
    json!({"degree": p.degree, "entries": entries})
}

pub fn verdict_to_json(v: &ClassVerdict) -> Value {
    json!({
        "signature": v.signature.values(),
        "chi": rational_to_json(&v.chi),
        "list": v.list_member.map(|t| t.to_string()),
        "verdict": v.genus_bound.to_string(),
    })
}

/// Permutations as one-line image arrays, 1-based.
pub fn constellation_to_json(c: &Constellation) -> Value {
    let perms: Vec<Value> = c.perms().iter().map(|p| json!(p.one_based())).collect();
    json!({"degree": c.degree(), "branch_points": c.branch_points(), "perms": perms})
}

/// Accepts image arrays or cycle strings such as `"(1 2)(3)"`.
pub fn constellation_from_json(v: &Value) -> Result<Constellation> {
    let d = usize_of(get(v, "degree")?, "a degree")?;
    let perms = array(get(v, "perms")?, "a list of permutations")?
        .iter()
        .map(|p| match p {
            Value::String(s) => Permutation::parse_cycles(s, d),
            Value::Array(xs) => {
                let images = xs.iter().map(|x| usize_of(x, "a sheet label")).collect::<Result<Vec<_>>>()?;
                if images.len() != d {
                    return Err(Error::InvalidInput(format!("permutation {p} does not have degree {d}")));
                }
                Permutation::from_one_based(&images)
            }
            _ => Err(bad("a permutation", p)),
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = match v.get("branch_points") {
        Some(b) => array(b, "a list of labels")?
            .iter()
            .map(|l| match l {
                Value::String(s) => Ok(s.clone()),
                other => Ok(other.to_string()),
            })
            .collect::<Result<Vec<_>>>()?,
        None => (1..=perms.len()).map(|i| format!("b{i}")).collect(),
    };
    Constellation::new(d, labels, perms)
}

/// The constellations of a document: a `"constellations"` list or the
/// document itself.
pub fn constellations_from_document(doc: &Value) -> Result<Vec<Constellation>> {
    match doc.get("constellations") {
        Some(list) => array(list, "a list of constellations")?.iter().map(constellation_from_json).collect(),
        None => Ok(vec![constellation_from_json(doc)?]),
    }
}

pub fn fiber_component_to_json(c: &FiberComponent) -> Value {
    let orbit: Vec<Vec<usize>> = c.orbit.iter().map(|t| t.iter().map(|i| i + 1).collect()).collect();
    json!({
        "degree": c.induced.degree(),
        "genus": c.genus,
        "degrees_to_factors": c.degrees_to_factors,
        "orbit": orbit,
        "induced": constellation_to_json(&c.induced),
    })
}

pub fn orbit_to_json(s: &OrbitSet) -> Value {
    let k = s.field();
    let points: Vec<Value> = s.points().map(|(p, w)| json!({"point": point_to_json(k, p), "word_length": w})).collect();
    json!({
        "field": field_to_json(k),
        "base": point_to_json(k, s.base()),
        "generators": s.generators().iter().map(moebius_to_json).collect::<Vec<_>>(),
        "depth": s.depth(),
        "level_sizes": s.level_sizes(),
        "points": points,
    })
}

/// Rebuilds an orbit from its base, generators and depth. A `"points"`
/// list, when present, must agree with the recomputation.
pub fn orbit_from_json(v: &Value, cap: usize) -> Result<OrbitSet> {
    let k = document_field(v)?;
    let base = point_from_json(&k, get(v, "base")?)?;
    let gens = moebius_list_from_json(&k, get(v, "generators")?)?;
    let depth = usize_of(get(v, "depth")?, "a depth")?;
    let s = orbit(&k, base, gens, depth, cap)?;
    if let Some(listed) = v.get("points") {
        let listed = array(listed, "a list of points")?;
        let mut ok = listed.len() == s.len();
        for entry in listed {
            let p = point_from_json(&k, get(entry, "point")?)?;
            let w = usize_of(get(entry, "word_length")?, "a word length")?;
            ok &= s.word_length(&p) == Some(w);
        }
        if !ok {
            return Err(Error::InvalidInput("listed orbit points disagree with the generators".into()));
        }
    }
    Ok(s)
}

pub fn value_set_to_json(k: &NumberField, v: &ValueSet) -> Value {
    json!({"map_index": v.map_index, "values": v.values.iter().map(|p| point_to_json(k, p)).collect::<Vec<_>>()})
}

pub fn value_set_from_json(k: &NumberField, v: &Value) -> Result<ValueSet> {
    let i = usize_of(get(v, "map_index")?, "a map index")?;
    let values = array(get(v, "values")?, "a list of values")?.iter().map(|p| point_from_json(k, p)).collect::<Result<Vec<_>>>()?;
    Ok(ValueSet::new(i, values))
}

pub fn report_to_json(k: &NumberField, r: &VerificationReport) -> Value {
    let pts = |ps: &Vec<SpherePoint>| ps.iter().map(|p| point_to_json(k, p)).collect::<Vec<_>>();
    json!({
        "passed": r.passed(),
        "window_depth": r.window_depth,
        "margin": r.margin,
        "checks": r.checks.iter().map(|c| json!({
            "kind": c.kind.to_string(),
            "passed": c.passed,
            "counterexamples": c.counterexamples,
        })).collect::<Vec<_>>(),
        "window_preimages": r.window_preimages.iter().map(pts).collect::<Vec<_>>(),
        "window_values": r.window_values.iter().map(pts).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn scalars_round_trip() {
        let g = NumberField::gaussian();
        let a = g.from_coords(&[rat(1, 2), rat(-3, 1)]);
        let v = scalar_to_json(&g, &a);
        assert_eq!(v, json!({"re": "1/2", "im": "-3"}));
        assert_eq!(scalar_from_json(&g, &v).unwrap(), a);
        let q = NumberField::rationals();
        assert_eq!(scalar_from_json(&q, &json!(3)).unwrap(), q.from_i64(3));
        assert_eq!(scalar_from_json(&q, &json!("0.25")).unwrap(), q.from_rational(&rat(1, 4)));
        assert!(scalar_from_json(&q, &json!({"re": "1", "im": "1"})).is_err());
    }

    #[test]
    fn fields_round_trip() {
        let k = NumberField::cyclotomic(5);
        let v = field_to_json(&k);
        assert_eq!(v["kind"], "simple-extension");
        assert_eq!(field_from_json(&v).unwrap(), k);
        let approx = json!({"kind": "simple-extension", "min_poly": ["-2", "0", "1"], "embedding": {"re": "1.4", "im": "0"}});
        let r2 = field_from_json(&approx).unwrap();
        assert!((r2.embed_f64(&r2.generator()).re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(field_from_json(&json!({"kind": "simple-extension", "min_poly": ["-4", "0", "1"], "embedding": {"re": "2", "im": "0"}})).is_err());
    }

    #[test]
    fn maps_and_moebius_round_trip() {
        let doc = json!({"maps": [{"num": [0, 0, 1]}, {"num": ["1", "2", "1"], "den": ["1"]}]});
        let (k, maps) = maps_from_document(&doc).unwrap();
        assert_eq!(maps[1].render("z"), "z^2 + 2*z + 1");
        assert_eq!(map_from_json(&k, &map_to_json(&maps[1])).unwrap(), maps[1]);
        let m = Moebius::from_i64s(&k, -1, -2, 0, 1).unwrap();
        assert_eq!(moebius_from_json(&k, &moebius_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn constellations_accept_cycles() {
        let c = constellation_from_json(&json!({"degree": 3, "branch_points": ["0", "inf"], "perms": ["(1 2 3)", [3, 1, 2]]})).unwrap();
        assert_eq!(constellation_to_json(&c)["perms"], json!([[2, 3, 1], [3, 1, 2]]));
        assert!(constellation_from_json(&json!({"degree": 3, "perms": ["(1 2)", "(1 3)"]})).is_err());
    }

    #[test]
    fn orbit_round_trip() {
        let k = NumberField::rationals();
        let s = orbit(&k, SpherePoint::from_i64(&k, 0), vec![Moebius::from_i64s(&k, 1, 1, 0, 1).unwrap()], 3, 100).unwrap();
        let v = orbit_to_json(&s);
        assert_eq!(orbit_from_json(&v, 100).unwrap(), s);
        let mut tampered = v.clone();
        tampered["points"][1]["word_length"] = json!(2);
        assert!(orbit_from_json(&tampered, 100).is_err());
    }
}
