//! JSON reading and writing. Input coordinates are in user generators; output
//! groups are written by their invariants, so written data reads back unchanged.

use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::fgab::{Element, FgAbGroup, GroupHom};
use crate::mackey::{HermitianMackey, MackeyZ2};
use crate::matrix::{Int, IntMatrix};
use crate::ringalg::{FinMonoid, PresRing};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_value(i: &Int) -> Value {
    Value::Number(i.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

pub fn ints_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| ints_value(&m.row_vec(r))).collect())
}

pub fn read_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<Int>()
            .map_err(|_| parse_err(format!("{n} is not an integer"))),
        _ => Err(parse_err(format!("expected an integer, found {v}"))),
    }
}

pub fn read_usize(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(format!("expected a non-negative integer, found {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

pub fn read_ints(v: &Value) -> Result<Vec<Int>> {
    array(v, "coefficient list")?.iter().map(read_int).collect()
}

/// A matrix with the given number of columns; an empty array is allowed.
pub fn read_matrix(v: &Value, cols: usize) -> Result<IntMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(read_ints)
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != cols) {
        return Err(parse_err(format!("matrix rows must have {cols} entries")));
    }
    Ok(IntMatrix::from_rows(cols, rows))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

pub fn group_value(g: &FgAbGroup) -> Value {
    json!({ "free_rank": g.free_rank(), "torsion": ints_value(g.torsion()) })
}

pub fn read_group(v: &Value) -> Result<FgAbGroup> {
    if let Some(n) = v.get("generators") {
        let n = read_usize(n)?;
        let rel = match v.get("relations") {
            Some(r) => read_matrix(r, n)?,
            None => IntMatrix::zeros(0, n),
        };
        return Ok(FgAbGroup::presented(n, &rel));
    }
    let r = read_usize(field(v, "free_rank")?)?;
    let t = match v.get("torsion") {
        Some(t) => read_ints(t)?,
        None => Vec::new(),
    };
    if t.iter().any(|d| *d <= Int::from(0)) {
        return Err(parse_err("torsion orders must be positive"));
    }
    Ok(FgAbGroup::from_invariants(r, &t))
}

/// `{"matrix": ...}` or a bare matrix, `target × source` in user coordinates.
pub fn read_hom(v: &Value, source: &FgAbGroup, target: &FgAbGroup) -> Result<GroupHom> {
    let m = v.get("matrix").unwrap_or(v);
    let mat = read_matrix(m, source.user_generators())?;
    GroupHom::from_user_matrix(source, target, &mat)
}

pub fn hom_value(h: &GroupHom) -> Value {
    json!({ "matrix": matrix_value(h.matrix()) })
}

/// Canonical coordinates, matching the invariants written by [`group_value`].
pub fn element_value(x: &Element) -> Value {
    ints_value(x.coords())
}

pub fn read_element(v: &Value, g: &FgAbGroup) -> Result<Element> {
    let c = read_ints(v)?;
    if c.len() != g.user_generators() {
        return Err(parse_err(format!("element needs {} coordinates", g.user_generators())));
    }
    Ok(g.from_user(&c))
}

pub fn ring_value(r: &PresRing) -> Value {
    let g = r.carrier();
    let n = r.ngens();
    let mul: Vec<Value> = (0..n)
        .map(|i| Value::Array((0..n).map(|j| element_value(r.table(i, j))).collect()))
        .collect();
    let mut obj = Map::new();
    obj.insert("group".into(), group_value(g));
    obj.insert("mul".into(), Value::Array(mul));
    obj.insert("unit".into(), element_value(&r.one()));
    if let Some(w) = r.involution() {
        obj.insert("involution".into(), matrix_value(w.matrix()));
    }
    Value::Object(obj)
}

/// A ring; `carrier` overrides the `group` field when given.
pub fn read_ring(v: &Value, carrier: Option<&FgAbGroup>, default_w: Option<&IntMatrix>) -> Result<PresRing> {
    let g = match carrier {
        Some(g) => g.clone(),
        None => read_group(field(v, "group")?)?,
    };
    let n = g.user_generators();
    let mul = array(field(v, "mul")?, "mul")?
        .iter()
        .map(|row| array(row, "mul row")?.iter().map(read_ints).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
        return Err(parse_err(format!("mul must be {n}×{n}×{n}")));
    }
    let unit = read_ints(field(v, "unit")?)?;
    let w = match v.get("involution") {
        Some(w) => Some(read_matrix(w, n)?),
        None => default_w.cloned(),
    };
    PresRing::from_user(g, &mul, &unit, w.as_ref())
}

pub fn monoid_value(m: &FinMonoid) -> Value {
    json!({
        "elements": m.names(),
        "table": m.table(),
        "anti_involution": (0..m.len()).map(|a| m.iota(a)).collect::<Vec<_>>(),
        "identity": m.identity(),
    })
}

pub fn read_monoid(v: &Value) -> Result<FinMonoid> {
    let names = array(field(v, "elements")?, "elements")?
        .iter()
        .map(|e| match e {
            Value::String(s) => Ok(s.clone()),
            other => Ok(other.to_string()),
        })
        .collect::<Result<Vec<_>>>()?;
    let table = array(field(v, "table")?, "table")?
        .iter()
        .map(|r| array(r, "table row")?.iter().map(read_usize).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let iota = match v.get("anti_involution") {
        Some(a) => array(a, "anti_involution")?.iter().map(read_usize).collect::<Result<Vec<_>>>()?,
        None => (0..names.len()).collect(),
    };
    let identity = read_usize(field(v, "identity")?)?;
    FinMonoid::new(names, table, iota, identity)
}

/// Mackey data, possibly carrying rings, an action and a unit.
#[derive(Clone, Debug)]
pub struct MackeyInput {
    pub mackey: MackeyZ2,
    pub ring_e: Option<PresRing>,
    pub ring_fix: Option<PresRing>,
    pub hermitian: Option<HermitianMackey>,
}

fn has_identity_presentation(g: &FgAbGroup) -> bool {
    g.user_generators() == g.ngens() && g.presentation().to_canonical().is_identity()
}

pub fn read_mackey(v: &Value) -> Result<MackeyInput> {
    let e = read_group(field(v, "level_e")?)?;
    let fix = read_group(field(v, "level_fix")?)?;
    let res = read_hom(field(v, "res")?, &fix, &e)?;
    let tran = read_hom(field(v, "tran")?, &e, &fix)?;
    let w_raw = field(v, "w")?;
    let w = read_hom(w_raw, &e, &e)?;
    let w_user = read_matrix(w_raw.get("matrix").unwrap_or(w_raw), e.user_generators())?;
    let mackey = MackeyZ2::new(e.clone(), fix.clone(), res, tran, w)?;
    let ring_e = v.get("ring_e").map(|r| read_ring(r, Some(&e), Some(&w_user))).transpose()?;
    let ring_fix = v.get("ring_fix").map(|r| read_ring(r, Some(&fix), None)).transpose()?;
    let unit_fix = v.get("unit_fix").map(|u| read_element(u, &fix)).transpose()?;
    let hermitian = match v.get("action") {
        None => None,
        Some(a) => {
            let ring = ring_e
                .clone()
                .ok_or_else(|| Error::Missing("an action needs ring_e".into()))?;
            if !has_identity_presentation(&e) {
                return Err(Error::Unsupported(
                    "an action table needs level_e given by free_rank and torsion".into(),
                ));
            }
            let rows = array(a, "action")?;
            if rows.len() != e.ngens() {
                return Err(parse_err(format!("action needs {} rows", e.ngens())));
            }
            let action = rows
                .iter()
                .map(|row| {
                    let entries = array(row, "action row")?;
                    if entries.len() != fix.user_generators() {
                        return Err(parse_err("action row has the wrong length"));
                    }
                    let by_user: Vec<Element> = entries.iter().map(|x| read_element(x, &fix)).collect::<Result<_>>()?;
                    // values on canonical fixed generators, by linearity in x
                    Ok(fix
                        .generators()
                        .iter()
                        .map(|x| fix.combination(&fix.to_user(x), &by_user))
                        .collect())
                })
                .collect::<Result<Vec<_>>>()?;
            Some(HermitianMackey {
                mackey: mackey.clone(),
                ring_e: ring,
                action,
                unit_fix: unit_fix.clone(),
                ring_fix: ring_fix.clone(),
            })
        }
    };
    Ok(MackeyInput {
        mackey,
        ring_e,
        ring_fix,
        hermitian,
    })
}

pub fn mackey_value(m: &MackeyZ2) -> Value {
    json!({
        "level_e": group_value(&m.level_e),
        "level_fix": group_value(&m.level_fix),
        "res": hom_value(&m.res),
        "tran": hom_value(&m.tran),
        "w": hom_value(&m.w),
    })
}

pub fn hermitian_value(h: &HermitianMackey) -> Value {
    let mut v = mackey_value(&h.mackey);
    let obj = v.as_object_mut().expect("object");
    obj.insert("ring_e".into(), ring_value(&h.ring_e));
    obj.insert(
        "action".into(),
        Value::Array(
            h.action
                .iter()
                .map(|row| Value::Array(row.iter().map(|x| element_value(x)).collect()))
                .collect(),
        ),
    );
    if let Some(u) = &h.unit_fix {
        obj.insert("unit_fix".into(), element_value(u));
    }
    if let Some(r) = &h.ring_fix {
        obj.insert("ring_fix".into(), ring_value(r));
    }
    v
}

/// Deterministic pretty printing (keys sorted).
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{burnside_hermitian, hermitian_from_ring, validate_hermitian};
    use crate::ringalg::{gaussian_integers, group_by_name};

    #[test]
    fn big_integers_survive() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let v = parse(&to_string(&int_value(&big))).unwrap();
        assert_eq!(read_int(&v).unwrap(), big);
    }

    #[test]
    fn presented_groups() {
        let v = parse(r#"{"generators": 2, "relations": [[2, 4]]}"#).unwrap();
        let g = read_group(&v).unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &[Int::from(2)][..]);
        assert!(read_group(&parse(r#"{"free_rank": 0, "torsion": [0]}"#).unwrap()).is_err());
    }

    #[test]
    fn hermitian_roundtrip() {
        for h in [burnside_hermitian(), hermitian_from_ring(&gaussian_integers()).unwrap()] {
            let text = to_string(&hermitian_value(&h));
            let back = read_mackey(&parse(&text).unwrap()).unwrap();
            let h2 = back.hermitian.unwrap();
            assert!(validate_hermitian(&h2).is_valid());
            assert_eq!(to_string(&hermitian_value(&h2)), text);
        }
    }

    #[test]
    fn monoid_roundtrip() {
        let g = group_by_name("s3").unwrap();
        let back = read_monoid(&parse(&to_string(&monoid_value(&g))).unwrap()).unwrap();
        assert_eq!(back.table(), g.table());
    }
}
