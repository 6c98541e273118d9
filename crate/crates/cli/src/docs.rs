//! JSON document formats: the envelope, loaders that resolve names into
//! internal indices, and canonical writers whose output round-trips
//! byte-identically (`save(load(d)) == d` for canonical documents).
//!
//! Canonical form: objects carry sorted keys (the serializer's map type is
//! ordered), arrays preserve carrier order, `le` lists the transitive
//! reduction of the order, and output ends with a newline.

use affinet::algebra::{Elem, FiniteAlgebra, Hom, Variety};
use affinet::error::Error as CoreError;
use affinet::{AffineSpace, AffineSystem, Budget, SystemMorphism};
use serde_json::{Map, Value};
use std::fmt;
use std::sync::Arc;

pub const DOC_VERSION: &str = "1";
pub const KINDS: [&str; 5] = ["algebra", "space", "system", "morphism", "report"];

#[derive(Debug)]
pub enum DocError {
    /// The input is not JSON at all.
    Parse(String),
    /// The JSON does not have the documented shape.
    Schema(String),
    /// The `le` relation closes into a cycle.
    NotAPartialOrder(String),
    /// The shape is right but the object fails domain validation.
    Validation(CoreError),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Parse(m) => write!(f, "ParseError: {m}"),
            DocError::Schema(m) => write!(f, "SchemaError: {m}"),
            DocError::NotAPartialOrder(m) => write!(f, "NotAPartialOrder: {m}"),
            DocError::Validation(e) => write!(f, "ValidationError: {e}"),
        }
    }
}

impl std::error::Error for DocError {}

impl From<CoreError> for DocError {
    fn from(e: CoreError) -> DocError {
        match e {
            CoreError::NotAPartialOrder { .. } => DocError::NotAPartialOrder(e.to_string()),
            e => DocError::Validation(e),
        }
    }
}

fn schema(msg: impl Into<String>) -> DocError {
    DocError::Schema(msg.into())
}

/// A parsed envelope: checked kind and version, unparsed payload.
pub struct Envelope {
    pub kind: String,
    pub payload: Value,
}

pub fn parse_envelope(text: &str) -> Result<Envelope, DocError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| DocError::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("document is not a JSON object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("missing string field \"kind\""))?;
    if !KINDS.contains(&kind) {
        return Err(schema(format!(
            "unknown kind {kind:?}; expected one of {}",
            KINDS.join(", ")
        )));
    }
    let version = obj
        .get("version")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("missing string field \"version\""))?;
    if version != DOC_VERSION {
        return Err(schema(format!(
            "unsupported version {version:?}; this tool reads version \"{DOC_VERSION}\""
        )));
    }
    let payload = obj
        .get("payload")
        .cloned()
        .ok_or_else(|| schema("missing field \"payload\""))?;
    Ok(Envelope {
        kind: kind.to_string(),
        payload,
    })
}

pub fn envelope(kind: &str, payload: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), Value::String(kind.into()));
    obj.insert("version".into(), Value::String(DOC_VERSION.into()));
    obj.insert("payload".into(), payload);
    Value::Object(obj)
}

/// The canonical byte form of a document.
pub fn to_canonical_string(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------
// Shape helpers
// ---------------------------------------------------------------------

fn as_object<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>, DocError> {
    v.as_object()
        .ok_or_else(|| schema(format!("{what} must be a JSON object")))
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, what: &str) -> Result<&'v Value, DocError> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{what} is missing field {key:?}")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>, DocError> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(format!("{what} must be an array of strings")))?;
    arr.iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema(format!("{what} must contain only strings")))
        })
        .collect()
}

fn resolve(alg: &FiniteAlgebra, name: &str, what: &str) -> Result<Elem, DocError> {
    alg.elem_by_name(name)
        .ok_or_else(|| schema(format!("{what}: no element named {name:?}")))
}

// ---------------------------------------------------------------------
// Algebra documents
// ---------------------------------------------------------------------

pub fn load_algebra(payload: &Value, budget: &Budget) -> Result<Arc<FiniteAlgebra>, DocError> {
    let obj = as_object(payload, "algebra payload")?;
    let variety_tag = field(obj, "variety", "algebra payload")?
        .as_str()
        .ok_or_else(|| schema("\"variety\" must be a string"))?;
    let variety = Variety::parse(variety_tag)
        .ok_or_else(|| schema(format!("unknown variety {variety_tag:?}")))?;
    let names = string_list(field(obj, "elements", "algebra payload")?, "\"elements\"")?;
    let n = names.len();
    let index_of = |name: &str| -> Result<usize, DocError> {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| schema(format!("\"le\"/\"tensor\" references unknown element {name:?}")))
    };

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if let Some(le) = obj.get("le") {
        let arr = le
            .as_array()
            .ok_or_else(|| schema("\"le\" must be an array of [lower, upper] pairs"))?;
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| schema("\"le\" entries must be two-element arrays"))?;
            let a = pair[0]
                .as_str()
                .ok_or_else(|| schema("\"le\" entries must name elements"))?;
            let b = pair[1]
                .as_str()
                .ok_or_else(|| schema("\"le\" entries must name elements"))?;
            pairs.push((index_of(a)?, index_of(b)?));
        }
    }
    // Reject cycles before validation so the failure names the real
    // problem: after reflexive-transitive closure the relation must be
    // antisymmetric.
    let mut le = vec![false; n * n];
    for i in 0..n {
        le[i * n + i] = true;
    }
    for &(a, b) in &pairs {
        le[a * n + b] = true;
    }
    for k in 0..n {
        for a in 0..n {
            if le[a * n + k] {
                for b in 0..n {
                    if le[k * n + b] {
                        le[a * n + b] = true;
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if le[a * n + b] && le[b * n + a] {
                return Err(DocError::NotAPartialOrder(format!(
                    "\"le\" closes into a cycle through {:?} and {:?}",
                    names[a], names[b]
                )));
            }
        }
    }

    let tensor = match obj.get("tensor") {
        None => None,
        Some(t) => {
            let rows = as_object(t, "\"tensor\"")?;
            let mut table = vec![0u32; n * n];
            for (a, name_a) in names.iter().enumerate() {
                let row = as_object(
                    field(rows, name_a, "\"tensor\"")?,
                    &format!("tensor row {name_a:?}"),
                )?;
                for (b, name_b) in names.iter().enumerate() {
                    let cell = field(row, name_b, &format!("tensor row {name_a:?}"))?
                        .as_str()
                        .ok_or_else(|| schema("tensor cells must name elements"))?;
                    table[a * n + b] = index_of(cell)? as u32;
                }
            }
            Some(table)
        }
    };
    let unit = match obj.get("unit") {
        None => None,
        Some(u) => {
            let name = u
                .as_str()
                .ok_or_else(|| schema("\"unit\" must name an element"))?;
            Some(Elem(index_of(name)? as u32))
        }
    };

    FiniteAlgebra::from_le_pairs(variety, names, &pairs, tensor, unit, budget)
        .map_err(DocError::from)
}

pub fn algebra_payload(alg: &FiniteAlgebra) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "variety".into(),
        Value::String(alg.variety().tag().to_string()),
    );
    obj.insert(
        "elements".into(),
        Value::Array(
            alg.names()
                .iter()
                .map(|s| Value::String(s.clone()))
                .collect(),
        ),
    );
    if alg.variety().is_ordered() {
        // Transitive reduction: keep a < b only when nothing sits strictly
        // between them.
        let mut pairs = Vec::new();
        for a in alg.elems() {
            for b in alg.elems() {
                if a == b || !alg.le(a, b) {
                    continue;
                }
                let covered = alg.elems().any(|c| {
                    c != a && c != b && alg.le(a, c) && alg.le(c, b)
                });
                if !covered {
                    pairs.push(Value::Array(vec![
                        Value::String(alg.name(a).to_string()),
                        Value::String(alg.name(b).to_string()),
                    ]));
                }
            }
        }
        obj.insert("le".into(), Value::Array(pairs));
    }
    if alg.variety() == Variety::UQuant {
        let mut rows = Map::new();
        for a in alg.elems() {
            let mut row = Map::new();
            for b in alg.elems() {
                row.insert(
                    alg.name(b).to_string(),
                    Value::String(alg.name(alg.tensor_at(a, b)).to_string()),
                );
            }
            rows.insert(alg.name(a).to_string(), Value::Object(row));
        }
        obj.insert("tensor".into(), Value::Object(rows));
        obj.insert(
            "unit".into(),
            Value::String(alg.name(alg.unit()).to_string()),
        );
    }
    Value::Object(obj)
}

// ---------------------------------------------------------------------
// Space documents
// ---------------------------------------------------------------------

pub fn load_space(payload: &Value, budget: &Budget) -> Result<Arc<AffineSpace>, DocError> {
    let obj = as_object(payload, "space payload")?;
    let base = load_algebra(field(obj, "base", "space payload")?, budget)?;
    let points = string_list(field(obj, "points", "space payload")?, "\"points\"")?;
    let opens = field(obj, "opens", "space payload")?
        .as_array()
        .ok_or_else(|| schema("\"opens\" must be an array of point-to-value objects"))?;
    let mut tables = Vec::with_capacity(opens.len());
    for open in opens {
        let row = as_object(open, "an open")?;
        if row.len() != points.len() {
            return Err(schema(format!(
                "an open lists {} points, the space has {}",
                row.len(),
                points.len()
            )));
        }
        let mut table = Vec::with_capacity(points.len());
        for p in &points {
            let v = field(row, p, "an open")?
                .as_str()
                .ok_or_else(|| schema("open values must name base elements"))?;
            table.push(resolve(&base, v, "an open")?);
        }
        tables.push(table);
    }
    let autoclose = match obj.get("autoclose") {
        None => false,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| schema("\"autoclose\" must be a boolean"))?,
    };
    AffineSpace::new(base, points, tables, autoclose, budget)
        .map(Arc::new)
        .map_err(DocError::from)
}

pub fn space_payload(space: &AffineSpace) -> Value {
    let mut obj = Map::new();
    obj.insert("base".into(), algebra_payload(&space.base));
    obj.insert(
        "points".into(),
        Value::Array(
            space
                .point_names
                .iter()
                .map(|s| Value::String(s.clone()))
                .collect(),
        ),
    );
    let opens: Vec<Value> = space
        .opens()
        .tables()
        .iter()
        .map(|table| {
            let mut row = Map::new();
            for (x, name) in space.point_names.iter().enumerate() {
                row.insert(
                    name.clone(),
                    Value::String(space.base.name(table[x]).to_string()),
                );
            }
            Value::Object(row)
        })
        .collect();
    obj.insert("opens".into(), Value::Array(opens));
    Value::Object(obj)
}

// ---------------------------------------------------------------------
// System documents
// ---------------------------------------------------------------------

pub fn load_system(payload: &Value, budget: &Budget) -> Result<Arc<AffineSystem>, DocError> {
    let obj = as_object(payload, "system payload")?;
    let base = load_algebra(field(obj, "base", "system payload")?, budget)?;
    let points = string_list(field(obj, "points", "system payload")?, "\"points\"")?;
    let algebra = load_algebra(field(obj, "algebra", "system payload")?, budget)?;
    let kappa_obj = as_object(field(obj, "kappa", "system payload")?, "\"kappa\"")?;
    if kappa_obj.len() != algebra.n() {
        return Err(schema(format!(
            "\"kappa\" lists {} elements, the algebra has {}",
            kappa_obj.len(),
            algebra.n()
        )));
    }
    let mut kappa = Vec::with_capacity(algebra.n());
    for a in algebra.elems() {
        let row = as_object(
            field(kappa_obj, algebra.name(a), "\"kappa\"")?,
            &format!("kappa row {:?}", algebra.name(a)),
        )?;
        if row.len() != points.len() {
            return Err(schema(format!(
                "kappa row {:?} lists {} points, the system has {}",
                algebra.name(a),
                row.len(),
                points.len()
            )));
        }
        let mut out = Vec::with_capacity(points.len());
        for p in &points {
            let v = field(row, p, "a kappa row")?
                .as_str()
                .ok_or_else(|| schema("kappa values must name base elements"))?;
            out.push(resolve(&base, v, "a kappa row")?);
        }
        kappa.push(out);
    }
    AffineSystem::new(base, points, algebra, kappa, budget)
        .map(Arc::new)
        .map_err(DocError::from)
}

pub fn system_payload(sys: &AffineSystem) -> Value {
    let mut obj = Map::new();
    obj.insert("base".into(), algebra_payload(&sys.base));
    obj.insert(
        "points".into(),
        Value::Array(
            sys.point_names
                .iter()
                .map(|s| Value::String(s.clone()))
                .collect(),
        ),
    );
    obj.insert("algebra".into(), algebra_payload(&sys.algebra));
    let mut rows = Map::new();
    for a in sys.algebra.elems() {
        let mut row = Map::new();
        for (x, name) in sys.point_names.iter().enumerate() {
            row.insert(
                name.clone(),
                Value::String(sys.base.name(sys.kappa_at(a, x)).to_string()),
            );
        }
        rows.insert(sys.algebra.name(a).to_string(), Value::Object(row));
    }
    obj.insert("kappa".into(), Value::Object(rows));
    Value::Object(obj)
}

// ---------------------------------------------------------------------
// Morphism documents
// ---------------------------------------------------------------------

pub fn load_morphism(payload: &Value, budget: &Budget) -> Result<SystemMorphism, DocError> {
    let obj = as_object(payload, "morphism payload")?;
    let source = load_system(field(obj, "source", "morphism payload")?, budget)?;
    let target = load_system(field(obj, "target", "morphism payload")?, budget)?;
    let points = as_object(field(obj, "points", "morphism payload")?, "\"points\"")?;
    if points.len() != source.n_points() {
        return Err(schema(format!(
            "\"points\" lists {} source points, the source has {}",
            points.len(),
            source.n_points()
        )));
    }
    let mut point_map = Vec::with_capacity(source.n_points());
    for name in &source.point_names {
        let image = field(points, name, "\"points\"")?
            .as_str()
            .ok_or_else(|| schema("point images must name target points"))?;
        let y = target
            .point_names
            .iter()
            .position(|p| p == image)
            .ok_or_else(|| schema(format!("no target point named {image:?}")))?;
        point_map.push(y);
    }
    let alg = as_object(
        field(obj, "algebra_map", "morphism payload")?,
        "\"algebra_map\"",
    )?;
    if alg.len() != target.algebra.n() {
        return Err(schema(format!(
            "\"algebra_map\" lists {} elements, the target algebra has {}",
            alg.len(),
            target.algebra.n()
        )));
    }
    let mut map = Vec::with_capacity(target.algebra.n());
    for a in target.algebra.elems() {
        let image = field(alg, target.algebra.name(a), "\"algebra_map\"")?
            .as_str()
            .ok_or_else(|| schema("algebra images must name source-algebra elements"))?;
        map.push(resolve(&source.algebra, image, "\"algebra_map\"")?);
    }
    let alg_map = Hom::new(
        Arc::clone(&target.algebra),
        Arc::clone(&source.algebra),
        map,
    );
    SystemMorphism::new(source, target, point_map, alg_map).map_err(DocError::from)
}

pub fn morphism_payload(m: &SystemMorphism) -> Value {
    let mut obj = Map::new();
    obj.insert("source".into(), system_payload(&m.source));
    obj.insert("target".into(), system_payload(&m.target));
    let mut points = Map::new();
    for (x, name) in m.source.point_names.iter().enumerate() {
        points.insert(
            name.clone(),
            Value::String(m.target.point_names[m.point_map[x]].clone()),
        );
    }
    obj.insert("points".into(), Value::Object(points));
    let mut alg = Map::new();
    for a in m.target.algebra.elems() {
        alg.insert(
            m.target.algebra.name(a).to_string(),
            Value::String(m.source.algebra.name(m.alg_map.apply(a)).to_string()),
        );
    }
    obj.insert("algebra_map".into(), Value::Object(alg));
    Value::Object(obj)
}

/// A hom between named algebras as a name-to-name object.
pub fn hom_payload(h: &Hom) -> Value {
    let mut obj = Map::new();
    for a in h.source.elems() {
        obj.insert(
            h.source.name(a).to_string(),
            Value::String(h.target.name(h.apply(a)).to_string()),
        );
    }
    Value::Object(obj)
}
