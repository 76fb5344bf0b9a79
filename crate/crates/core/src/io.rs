//! JSON formats and file helpers.
//!
//! Graph: `{"darts": N, "lambda": [...], "vertices": [[...], ...]}`.
//! Group: `{"order": n, "table": [[...], ...]}`.
//! Voltage: `{"base": graph, "group": group, "xi": [...], "tree": [...]}` (tree optional).
//! Covering: `{"total": graph, "base": graph, "projection": [...]}`.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::covers::{CoveringMap, VoltageAssignment};
use crate::dartgraph::{validate, DartGraph};
use crate::error::{Error, Result};
use crate::jacobian::{GroupElement, Jacobian};
use crate::symmetry::{FiniteGroup, Permutation};

/// A JSON number when the value fits in `i64`, else a decimal string.
pub fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn big_string<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn parse_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    darts: usize,
    lambda: Vec<usize>,
    vertices: Vec<Vec<usize>>,
}

impl GraphJson {
    fn into_graph(self, what: &str) -> Result<DartGraph> {
        let problems = validate(self.darts, &self.lambda, &self.vertices);
        if !problems.is_empty() {
            return Err(Error::InvalidGraph(
                problems.into_iter().map(|p| format!("{what}: {p}")).collect(),
            ));
        }
        DartGraph::new(self.lambda, self.vertices)
    }

    fn from_graph(g: &DartGraph) -> Self {
        GraphJson {
            darts: g.dart_count(),
            lambda: g.lambda().to_vec(),
            vertices: g.vertex_classes().to_vec(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<DartGraph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| parse_error("graph", e))?;
    raw.into_graph("graph")
}

pub fn graph_to_json(g: &DartGraph) -> Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("plain data")
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl GroupJson {
    fn into_group(self, what: &str) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "{what}: order is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_table(self.table)
            .map_err(|e| Error::InvalidGroup(format!("{what}: {}", strip(&e))))
    }
}

fn strip(e: &Error) -> String {
    match e {
        Error::InvalidGroup(m) | Error::InvalidVoltage(m) => m.clone(),
        other => other.to_string(),
    }
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let raw: GroupJson = serde_json::from_str(text).map_err(|e| parse_error("group", e))?;
    raw.into_group("group")
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "table": g.table() })
}

/// Built-in groups: `Z<n>` (or `C<n>`), `D<n>` (order 2n), `S<n>`, `Q8`.
pub fn named_group(name: &str) -> Option<FiniteGroup> {
    let name = name.trim();
    if name.eq_ignore_ascii_case("q8") {
        return Some(FiniteGroup::quaternion());
    }
    let (kind, n) = name.split_at(1.min(name.len()));
    let n: usize = n.parse().ok()?;
    match kind.to_ascii_uppercase().as_str() {
        "Z" | "C" if n >= 1 => Some(FiniteGroup::cyclic(n)),
        "D" if n >= 2 => Some(FiniteGroup::dihedral(n)),
        "S" if (1..=7).contains(&n) => Some(FiniteGroup::symmetric(n)),
        _ => None,
    }
}

/// A JSON image array, or cycle notation on `0..degree`.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let t = text.trim();
    if t.starts_with('[') {
        let image: Vec<usize> =
            serde_json::from_str(t).map_err(|e| parse_error("permutation", e))?;
        if image.len() != degree {
            return Err(Error::InvalidArgument(format!(
                "permutation has {} entries, expected {degree}",
                image.len()
            )));
        }
        Permutation::new(image)
    } else {
        Permutation::parse_cycles(degree, t)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VoltageJson {
    base: GraphJson,
    group: GroupJson,
    xi: Vec<usize>,
    #[serde(default)]
    tree: Option<Vec<usize>>,
}

pub fn parse_voltage(text: &str) -> Result<VoltageAssignment> {
    let raw: VoltageJson = serde_json::from_str(text).map_err(|e| parse_error("voltage", e))?;
    let base = raw.base.into_graph("base")?;
    let group = raw.group.into_group("group")?;
    let v = VoltageAssignment::new(base, group, raw.xi)?;
    match raw.tree {
        Some(t) => v.with_tree(t),
        None => Ok(v),
    }
}

pub fn voltage_to_json(v: &VoltageAssignment) -> Value {
    let mut out = json!({
        "base": graph_to_json(v.base()),
        "group": group_to_json(v.group()),
        "xi": v.xi(),
    });
    if let Some(t) = v.tree() {
        out["tree"] = json!(t);
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoveringJson {
    total: GraphJson,
    base: GraphJson,
    projection: Vec<usize>,
}

pub fn parse_covering(text: &str) -> Result<CoveringMap> {
    let raw: CoveringJson = serde_json::from_str(text).map_err(|e| parse_error("covering", e))?;
    CoveringMap::new(
        raw.total.into_graph("total")?,
        raw.base.into_graph("base")?,
        raw.projection,
    )
}

pub fn covering_to_json(c: &CoveringMap) -> Value {
    json!({
        "total": graph_to_json(c.total()),
        "base": graph_to_json(c.base()),
        "projection": c.projection(),
    })
}

pub fn element_json(a: &GroupElement) -> Value {
    Value::Array(a.coords.iter().map(int_value).collect())
}

/// `{"factors": [...], "order": "<decimal>", "rank": r, "xi": [[...] per D+ dart]}`
pub fn jacobian_report(j: &Jacobian) -> Value {
    json!({
        "factors": j.group.factors().iter().map(int_value).collect::<Vec<_>>(),
        "order": j.group.order().to_string(),
        "rank": j.group.rank(),
        "xi": j.positive_darts.iter().map(|&x| element_json(&j.flow.xi[x])).collect::<Vec<_>>(),
    })
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
