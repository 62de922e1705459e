//! Instance files: one ring plus named matrices, modules, maps, arrows,
//! morphisms, finite groups and bracket data.
//!
//! Every entry may refer to an entry of an earlier section by name, so an
//! arrow can use `"A1": "M"` for a module declared under `modules`. Matrices
//! may be written as bare row arrays, and omit `ring` when it is the file's.
//! Loading resolves every reference and runs every well-definedness check;
//! errors carry the JSON path of the offending entry.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::arrow2::{ArrowMorphism, ArrowObject};
use crate::fgmod::{FgModule, ModuleMorphism};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::scg::{FiniteGroup, ScgData};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub ring: Ring,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Matrix>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, FgModule>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub module_maps: BTreeMap<String, ModuleMorphism>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub arrows: BTreeMap<String, ArrowObject>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, ArrowMorphism>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, FiniteGroup>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub scg: BTreeMap<String, ScgData>,
}

const SECTIONS: [&str; 7] = ["matrices", "modules", "module_maps", "arrows", "morphisms", "groups", "scg"];

fn at(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("{path}: {msg}"))
}

fn located(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| at(path, e)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| at(path, format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| at(path, "expected an object"))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| at(path, "expected a non-negative integer"))
}

fn integer(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| at(path, "integers beyond 64 bits must be written as strings")),
        Value::String(s) => s.trim().parse().map_err(|_| at(path, format!("invalid integer `{s}`"))),
        _ => Err(at(path, "expected an integer")),
    }
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, section: &str, name: &str, path: &str) -> Result<&'a T> {
    table.get(name).ok_or_else(|| at(path, format!("no entry `{name}` under `{section}`")))
}

impl Instance {
    pub fn empty(ring: Ring) -> Instance {
        Instance {
            ring,
            matrices: BTreeMap::new(),
            modules: BTreeMap::new(),
            module_maps: BTreeMap::new(),
            arrows: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            groups: BTreeMap::new(),
            scg: BTreeMap::new(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Instance> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))?;
        Instance::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Instance> {
        let root = object(v, "$")?;
        if let Some(k) = root.keys().find(|k| *k != "ring" && !SECTIONS.contains(&k.as_str())) {
            return Err(at("$", format!("unknown section `{k}`")));
        }
        let ring: Ring = serde_json::from_value(field(root, "ring", "$")?.clone()).map_err(|e| at("$.ring", e))?;
        if let Some(m) = ring.modulus() {
            Ring::zmod(m).map_err(located("$.ring"))?;
        }
        let mut inst = Instance::empty(ring);
        let section = |name: &str| -> Result<Vec<(String, &Value)>> {
            match root.get(name) {
                None => Ok(Vec::new()),
                Some(v) => Ok(object(v, &format!("$.{name}"))?.iter().map(|(k, v)| (k.clone(), v)).collect()),
            }
        };
        for (name, v) in section("matrices")? {
            let m = inst.matrix(v, None, None, &format!("$.matrices.{name}"))?;
            inst.matrices.insert(name, m);
        }
        for (name, v) in section("modules")? {
            let m = inst.module_inline(v, &format!("$.modules.{name}"))?;
            inst.modules.insert(name, m);
        }
        for (name, v) in section("module_maps")? {
            let m = inst.module_map_inline(v, &format!("$.module_maps.{name}"))?;
            inst.module_maps.insert(name, m);
        }
        for (name, v) in section("arrows")? {
            let a = inst.arrow_inline(v, &format!("$.arrows.{name}"))?;
            inst.arrows.insert(name, a);
        }
        for (name, v) in section("morphisms")? {
            let f = inst.morphism_inline(v, &format!("$.morphisms.{name}"))?;
            inst.morphisms.insert(name, f);
        }
        for (name, v) in section("groups")? {
            let g = group_inline(v, &format!("$.groups.{name}"))?;
            inst.groups.insert(name, g);
        }
        for (name, v) in section("scg")? {
            let d = inst.scg_inline(v, &format!("$.scg.{name}"))?;
            inst.scg.insert(name, d);
        }
        Ok(inst)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    /// A matrix: a name under `matrices`, an array of rows, or a full matrix object.
    /// An empty row array takes its shape from the hints.
    fn matrix(&self, v: &Value, rows: Option<usize>, cols: Option<usize>, path: &str) -> Result<Matrix> {
        let m = match v {
            Value::String(name) => lookup(&self.matrices, "matrices", name, path)?.clone(),
            Value::Array(data) => {
                let entries = data
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let p = format!("{path}[{i}]");
                        row.as_array()
                            .ok_or_else(|| at(&p, "expected a row array"))?
                            .iter()
                            .enumerate()
                            .map(|(j, x)| integer(x, &format!("{p}[{j}]")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let (r, c) = match entries.first() {
                    Some(first) => (entries.len(), first.len()),
                    None => (rows.unwrap_or(0), cols.unwrap_or(0)),
                };
                if entries.is_empty() && r * c != 0 {
                    return Err(at(path, format!("empty entries cannot form a {r}x{c} matrix")));
                }
                if entries.iter().any(|row| row.len() != c) {
                    return Err(at(path, "rows have different lengths"));
                }
                Matrix::from_vec(self.ring, r, c, entries.into_iter().flatten().collect()).map_err(located(path))?
            }
            Value::Object(obj) => {
                let mut obj = obj.clone();
                obj.entry("ring").or_insert_with(|| serde_json::to_value(self.ring).unwrap());
                serde_json::from_value(Value::Object(obj)).map_err(|e| at(path, e))?
            }
            _ => return Err(at(path, "expected a matrix name, row array or matrix object")),
        };
        if m.ring() != self.ring {
            return Err(at(path, format!("matrix over {} in an instance over {}", m.ring(), self.ring)));
        }
        let (r, c) = m.shape();
        if rows.is_some_and(|x| x != r) || cols.is_some_and(|x| x != c) {
            return Err(at(path, format!("matrix is {r}x{c}, expected {}x{}", fmt_dim(rows), fmt_dim(cols))));
        }
        Ok(m)
    }

    fn module(&self, v: &Value, path: &str) -> Result<FgModule> {
        match v {
            Value::String(name) => Ok(lookup(&self.modules, "modules", name, path)?.clone()),
            _ => self.module_inline(v, path),
        }
    }

    /// `{"generators": g, "relations": …}` (no relations means free) or
    /// `{"invariant_factors": [d1, …]}` with `0` for a free summand.
    fn module_inline(&self, v: &Value, path: &str) -> Result<FgModule> {
        let obj = object(v, path)?;
        if let Some(f) = obj.get("invariant_factors") {
            let fp = format!("{path}.invariant_factors");
            let factors = f
                .as_array()
                .ok_or_else(|| at(&fp, "expected an array"))?
                .iter()
                .enumerate()
                .map(|(i, x)| integer(x, &format!("{fp}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            return Ok(FgModule::from_invariant_factors(self.ring, &factors));
        }
        let g = usize_of(field(obj, "generators", path)?, &format!("{path}.generators"))?;
        let rel = match obj.get("relations") {
            None => Matrix::zeros(self.ring, g, 0),
            Some(r) => self.matrix(r, Some(g), None, &format!("{path}.relations"))?,
        };
        FgModule::new(self.ring, g, rel).map_err(located(path))
    }

    fn module_map_inline(&self, v: &Value, path: &str) -> Result<ModuleMorphism> {
        let obj = object(v, path)?;
        let source = self.module(field(obj, "source", path)?, &format!("{path}.source"))?;
        let target = self.module(field(obj, "target", path)?, &format!("{path}.target"))?;
        let (r, c) = (target.generators(), source.generators());
        let m = self.matrix(field(obj, "matrix", path)?, Some(r), Some(c), &format!("{path}.matrix"))?;
        ModuleMorphism::new(source, target, m).map_err(located(path))
    }

    fn arrow(&self, v: &Value, path: &str) -> Result<ArrowObject> {
        match v {
            Value::String(name) => Ok(lookup(&self.arrows, "arrows", name, path)?.clone()),
            _ => self.arrow_inline(v, path),
        }
    }

    /// `{"A1": …, "A0": …, "a": …}`, or `{"map": …}` naming a module map.
    fn arrow_inline(&self, v: &Value, path: &str) -> Result<ArrowObject> {
        let obj = object(v, path)?;
        if let Some(m) = obj.get("map") {
            let mp = format!("{path}.map");
            let map = match m {
                Value::String(name) => lookup(&self.module_maps, "module_maps", name, &mp)?.clone(),
                _ => self.module_map_inline(m, &mp)?,
            };
            return Ok(ArrowObject::new(map));
        }
        let a1 = self.module(field(obj, "A1", path)?, &format!("{path}.A1"))?;
        let a0 = self.module(field(obj, "A0", path)?, &format!("{path}.A0"))?;
        let (r, c) = (a0.generators(), a1.generators());
        let a = self.matrix(field(obj, "a", path)?, Some(r), Some(c), &format!("{path}.a"))?;
        ArrowObject::from_matrix(a1, a0, a).map_err(located(path))
    }

    fn morphism_inline(&self, v: &Value, path: &str) -> Result<ArrowMorphism> {
        let obj = object(v, path)?;
        let source = self.arrow(field(obj, "source", path)?, &format!("{path}.source"))?;
        let target = self.arrow(field(obj, "target", path)?, &format!("{path}.target"))?;
        let f0 = self.matrix(
            field(obj, "f0", path)?,
            Some(target.a0().generators()),
            Some(source.a0().generators()),
            &format!("{path}.f0"),
        )?;
        let f1 = self.matrix(
            field(obj, "f1", path)?,
            Some(target.a1().generators()),
            Some(source.a1().generators()),
            &format!("{path}.f1"),
        )?;
        ArrowMorphism::from_matrices(&source, &target, f0, f1).map_err(located(path))
    }

    fn group(&self, v: &Value, path: &str) -> Result<FiniteGroup> {
        match v {
            Value::String(name) => Ok(lookup(&self.groups, "groups", name, path)?.clone()),
            _ => group_inline(v, path),
        }
    }

    fn scg_inline(&self, v: &Value, path: &str) -> Result<ScgData> {
        let obj = object(v, path)?;
        let ce = self.group(field(obj, "ce", path)?, &format!("{path}.ce"))?;
        let cee = self.group(field(obj, "cee", path)?, &format!("{path}.cee"))?;
        let boundary: Vec<usize> =
            serde_json::from_value(field(obj, "boundary", path)?.clone()).map_err(|e| at(&format!("{path}.boundary"), e))?;
        let bracket: Vec<Vec<usize>> =
            serde_json::from_value(field(obj, "bracket", path)?.clone()).map_err(|e| at(&format!("{path}.bracket"), e))?;
        ScgData::new(ce, cee, boundary, bracket).map_err(located(path))
    }
}

fn fmt_dim(d: Option<usize>) -> String {
    d.map_or_else(|| "_".to_string(), |x| x.to_string())
}

/// `{"table": […]}`, `{"cyclic": n}` or `{"symmetric": 3}`.
fn group_inline(v: &Value, path: &str) -> Result<FiniteGroup> {
    let obj = object(v, path)?;
    if let Some(n) = obj.get("cyclic") {
        let n = usize_of(n, &format!("{path}.cyclic"))?;
        if n == 0 {
            return Err(at(path, "cyclic group of order 0"));
        }
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = obj.get("symmetric") {
        return match usize_of(n, &format!("{path}.symmetric"))? {
            1 => Ok(FiniteGroup::trivial()),
            2 => Ok(FiniteGroup::cyclic(2)),
            3 => Ok(FiniteGroup::symmetric3()),
            n => Err(at(path, format!("symmetric group on {n} letters is not built in; give a table"))),
        };
    }
    let table: Vec<Vec<usize>> =
        serde_json::from_value(field(obj, "table", path)?.clone()).map_err(|e| at(&format!("{path}.table"), e))?;
    FiniteGroup::from_table(table).map_err(located(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "ring": {"kind": "Zmod", "m": 4},
        "matrices": {"two": [[2]]},
        "modules": {"R": {"generators": 1}, "Z2": {"invariant_factors": [2]}},
        "module_maps": {"double": {"source": "R", "target": "R", "matrix": "two"}},
        "arrows": {
            "a": {"A1": "R", "A0": "R", "a": "two"},
            "b": {"map": "double"},
            "z": {"A1": "Z2", "A0": {"generators": 0}, "a": []}
        },
        "morphisms": {"id": {"source": "a", "target": "b", "f0": [[1]], "f1": [[1]]}},
        "groups": {"C2": {"cyclic": 2}},
        "scg": {"s": {"ce": "C2", "cee": "C2", "boundary": [0, 0], "bracket": [[0, 0], [0, 1]]}}
    }"#;

    #[test]
    fn resolves_references() {
        let inst = Instance::from_json_str(SAMPLE).unwrap();
        assert_eq!(inst.arrows["a"], inst.arrows["b"]);
        assert_eq!(inst.morphisms["id"], ArrowMorphism::identity(&inst.arrows["a"]));
        assert_eq!(inst.arrows["z"].a1().order(), Some(BigInt::from(2)));
        assert_eq!(inst.scg["s"].ce.order, 2);
    }

    #[test]
    fn round_trip() {
        let inst = Instance::from_json_str(SAMPLE).unwrap();
        let back = Instance::from_json_str(&inst.to_json_string()).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn errors_are_located() {
        let bad = SAMPLE.replace(r#""f0": [[1]]"#, r#""f0": [[2]]"#);
        let e = Instance::from_json_str(&bad).unwrap_err().to_string();
        assert!(e.contains("$.morphisms.id"), "{e}");
        let bad = SAMPLE.replace(r#""A1": "R", "A0": "R""#, r#""A1": "Q", "A0": "R""#);
        let e = Instance::from_json_str(&bad).unwrap_err().to_string();
        assert!(e.contains("$.arrows.a.A1") && e.contains("`Q`"), "{e}");
        let e = Instance::from_json_str(r#"{"ring": {"kind": "Z"}, "modulez": {}}"#).unwrap_err().to_string();
        assert!(e.contains("modulez"), "{e}");
    }

    #[test]
    fn shape_checked_against_modules() {
        let js = r#"{"ring": {"kind": "Z"}, "modules": {"M": {"generators": 2, "relations": [[1, 2]]}}}"#;
        assert!(Instance::from_json_str(js).is_err());
    }

    #[test]
    fn big_entries_as_strings() {
        let js = r#"{"ring": {"kind": "Z"}, "matrices": {"m": [["123456789012345678901234567890"]]}}"#;
        let inst = Instance::from_json_str(js).unwrap();
        assert_eq!(inst.matrices["m"].get(0, 0).to_string(), "123456789012345678901234567890");
    }
}
