//! JSON documents for fields, groups, categories, gradings, base
//! automorphisms, morphisms and diagrams.
//!
//! Output is canonical: object keys sorted, two-space indentation, a trailing
//! newline, scalars in lowest terms. Parsing then serializing a canonical
//! document reproduces it byte for byte.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::covering::{BaseAutomorphism, CoveringMorphism};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Vector};
use crate::fincat::{CompKey, FinCategory};
use crate::grading::{Extension, Grading, GradingViolation};
use crate::groups::{Elem, FiniteKind, Group, Subgroup};
use crate::pi1::{build_diagram, GradingDiagram};

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn decode<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer = pointer_of(e.path());
        Error::schema(pointer, e.into_inner().to_string())
    })
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::schema("", format!("malformed JSON: {e}")))
}

/// Canonical text of a JSON value.
pub fn to_canonical(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn hom_key(cat: &FinCategory, b: usize, c: usize) -> String {
    format!("{}->{}", cat.object_label(b), cat.object_label(c))
}

fn split_hom_key(cat: &FinCategory, key: &str, pointer: &str) -> Result<(usize, usize)> {
    let bad = || {
        Error::schema(
            pointer,
            format!("{key:?} is not of the form \"src->tgt\" over known objects"),
        )
    };
    let (s, t) = key.split_once("->").ok_or_else(bad)?;
    let b = cat.object_index(s).map_err(|_| bad())?;
    let c = cat.object_index(t).map_err(|_| bad())?;
    Ok((b, c))
}

// ---------------------------------------------------------------- fields

#[derive(Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum FieldDoc {
    Q,
    Fp { p: u64 },
}

fn field_from_doc(doc: FieldDoc) -> Result<Field> {
    match doc {
        FieldDoc::Q => Ok(Field::Rationals),
        FieldDoc::Fp { p } => Field::prime(p).map_err(|e| Error::schema("/field/p", e.to_string())),
    }
}

pub fn field_to_json(k: &Field) -> Value {
    match k {
        Field::Rationals => json!({"type": "Q"}),
        Field::Prime(p) => json!({"type": "Fp", "p": p}),
    }
}

// ---------------------------------------------------------------- groups

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum GroupDoc {
    #[serde(rename = "fg-abelian")]
    FgAbelian {
        free_rank: usize,
        #[serde(default)]
        torsion: Vec<i64>,
    },
    #[serde(rename = "finite-table")]
    FiniteTable {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        /// 0-based point images, kept so permutation groups survive a round trip.
        #[serde(default)]
        permutations: Option<Vec<Vec<usize>>>,
    },
    #[serde(rename = "subgroup")]
    Subgroup {
        ambient: Box<GroupDoc>,
        generators: Vec<Value>,
    },
}

fn group_from_doc(doc: GroupDoc, at: &str) -> Result<Group> {
    let schema = |e: Error| Error::schema(at, e.to_string());
    match doc {
        GroupDoc::FgAbelian { free_rank, torsion } => {
            Group::abelian(free_rank, torsion).map_err(schema)
        }
        GroupDoc::FiniteTable {
            elements,
            table,
            permutations,
        } => {
            let g = match permutations {
                Some(perms) => {
                    Group::from_permutations(perms, Some(elements.clone())).map_err(schema)?
                }
                None => return Group::from_table(elements, table).map_err(schema),
            };
            let f = g.as_finite().expect("permutation groups are finite");
            if f.names() != elements.as_slice() || f.table() != table.as_slice() {
                return Err(Error::schema(at, "table does not match the permutations"));
            }
            Ok(g)
        }
        GroupDoc::Subgroup {
            ambient,
            generators,
        } => {
            let amb = group_from_doc(*ambient, &format!("{at}/ambient"))?;
            let gens = generators
                .iter()
                .enumerate()
                .map(|(i, v)| elem_from_json(&amb, v, &format!("{at}/generators/{i}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Subgroup::generated(&amb, &gens).map_err(schema)?.as_group())
        }
    }
}

pub fn group_from_json(value: &Value) -> Result<Group> {
    group_from_doc(decode(value.clone())?, "")
}

pub fn group_to_json(g: &Group) -> Value {
    match g {
        Group::Abelian(a) => {
            json!({"kind": "fg-abelian", "free_rank": a.free_rank(), "torsion": a.torsion()})
        }
        Group::Finite(f) => {
            let mut m = Map::new();
            m.insert("kind".into(), json!("finite-table"));
            m.insert("elements".into(), json!(f.names()));
            m.insert("table".into(), json!(f.table()));
            if f.kind() == FiniteKind::Permutation {
                m.insert("permutations".into(), json!(f.permutations()));
            }
            Value::Object(m)
        }
        Group::Sub(s) => json!({
            "kind": "subgroup",
            "ambient": group_to_json(s.ambient()),
            "generators": s.generators().iter().map(|x| elem_to_json(s.ambient(), x)).collect::<Vec<_>>(),
        }),
    }
}

/// Integer array for abelian groups, element name for finite ones.
pub fn elem_to_json(g: &Group, x: &Elem) -> Value {
    match x {
        Elem::Vec(v) => json!(v),
        Elem::Idx(_) => json!(g.fmt_elem(x)),
    }
}

pub fn elem_from_json(g: &Group, v: &Value, at: &str) -> Result<Elem> {
    let e = match (g.root(), v) {
        (Group::Abelian(_), Value::Array(items)) => {
            let coords = items
                .iter()
                .map(|t| t.as_i64())
                .collect::<Option<Vec<i64>>>()
                .ok_or_else(|| Error::schema(at, "expected an integer array"))?;
            g.reduce_vec(coords)
                .map_err(|e| Error::schema(at, e.to_string()))?
        }
        (Group::Finite(_), Value::String(s)) => g
            .parse_elem(s)
            .map_err(|e| Error::schema(at, e.to_string()))?,
        (Group::Abelian(_), _) => return Err(Error::schema(at, "expected an integer array")),
        _ => return Err(Error::schema(at, "expected an element name")),
    };
    if !g.contains(&e) {
        return Err(Error::schema(
            at,
            format!("{} is not in the group", g.fmt_elem(&e)),
        ));
    }
    Ok(e)
}

// ---------------------------------------------------------------- categories

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    field: FieldDoc,
    objects: Vec<String>,
    #[serde(default)]
    homs: BTreeMap<String, Vec<String>>,
    identity: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    compose: Vec<ComposeDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComposeDoc {
    g: String,
    f: String,
    result: Vec<(String, String)>,
}

/// Index of the basis vector equal to the identity, when there is one.
fn identity_basis_index(k: &Field, v: &Vector) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != k.zero()).collect();
    match nz.as_slice() {
        [i] if v[*i] == k.one() => Some(*i),
        _ => None,
    }
}

pub fn category_from_json(value: &Value) -> Result<FinCategory> {
    let doc: CategoryDoc = decode(value.clone())?;
    let k = field_from_doc(doc.field)?;
    let n = doc.objects.len();
    if n == 0 {
        return Err(Error::schema(
            "/objects",
            "a category needs at least one object",
        ));
    }
    let obj_index: HashMap<&str, usize> = doc
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    if obj_index.len() != n {
        return Err(Error::schema("/objects", "duplicate object labels"));
    }
    let mut homs = vec![Vec::new(); n * n];
    for (key, labels) in &doc.homs {
        let at = format!("/homs/{}", key.replace('/', "~1"));
        let (s, t) = key
            .split_once("->")
            .and_then(|(s, t)| Some((*obj_index.get(s)?, *obj_index.get(t)?)))
            .ok_or_else(|| {
                Error::schema(
                    &at,
                    format!("{key:?} is not of the form \"src->tgt\" over known objects"),
                )
            })?;
        homs[s * n + t] = labels.clone();
    }
    let mut labels: HashMap<&str, (usize, usize, usize)> = HashMap::new();
    for b in 0..n {
        for c in 0..n {
            for (i, l) in homs[b * n + c].iter().enumerate() {
                if labels.insert(l.as_str(), (b, c, i)).is_some() {
                    return Err(Error::schema(
                        "/homs",
                        format!("basis label {l:?} is used twice"),
                    ));
                }
            }
        }
    }
    let linear = |pairs: &[(String, String)], b: usize, c: usize, at: &str| -> Result<Vector> {
        let mut v = k.zero_vector(homs[b * n + c].len());
        for (j, (l, coeff)) in pairs.iter().enumerate() {
            let &(s, t, i) = labels.get(l.as_str()).ok_or_else(|| {
                Error::schema(format!("{at}/{j}/0"), format!("unknown basis label {l:?}"))
            })?;
            if (s, t) != (b, c) {
                return Err(Error::schema(
                    format!("{at}/{j}/0"),
                    format!("{l:?} lies in the wrong hom-space"),
                ));
            }
            let x = k
                .parse(coeff)
                .map_err(|e| Error::schema(format!("{at}/{j}/1"), e.to_string()))?;
            v[i] = k.add(&v[i], &x);
        }
        Ok(v)
    };
    let mut identity = Vec::with_capacity(n);
    for (b, o) in doc.objects.iter().enumerate() {
        let pairs = doc
            .identity
            .get(o)
            .ok_or_else(|| Error::schema("/identity", format!("missing identity of {o:?}")))?;
        identity.push(linear(pairs, b, b, &format!("/identity/{o}"))?);
    }
    for key in doc.identity.keys() {
        if !obj_index.contains_key(key.as_str()) {
            return Err(Error::schema(format!("/identity/{key}"), "unknown object"));
        }
    }
    let mut compose = BTreeMap::new();
    // composites with an identity basis vector are implied
    for (b, id) in identity.iter().enumerate() {
        let Some(e) = identity_basis_index(&k, id) else {
            continue;
        };
        for x in 0..n {
            for i in 0..homs[b * n + x].len() {
                let v = k.unit_vector(homs[b * n + x].len(), i);
                compose.insert(
                    CompKey {
                        b,
                        c: b,
                        d: x,
                        f: e,
                        g: i,
                    },
                    v,
                );
            }
            for i in 0..homs[x * n + b].len() {
                let v = k.unit_vector(homs[x * n + b].len(), i);
                compose.insert(
                    CompKey {
                        b: x,
                        c: b,
                        d: b,
                        f: i,
                        g: e,
                    },
                    v,
                );
            }
        }
    }
    for (j, entry) in doc.compose.iter().enumerate() {
        let at = format!("/compose/{j}");
        let find = |l: &str, which: &str| {
            labels.get(l).copied().ok_or_else(|| {
                Error::schema(
                    format!("{at}/{which}"),
                    format!("unknown basis label {l:?}"),
                )
            })
        };
        let (fs, ft, fi) = find(&entry.f, "f")?;
        let (gs, gt, gi) = find(&entry.g, "g")?;
        if ft != gs {
            return Err(Error::schema(
                &at,
                format!("{} ∘ {} is not composable", entry.g, entry.f),
            ));
        }
        let v = linear(&entry.result, fs, gt, &format!("{at}/result"))?;
        compose.insert(
            CompKey {
                b: fs,
                c: ft,
                d: gt,
                f: fi,
                g: gi,
            },
            v,
        );
    }
    FinCategory::new(k, doc.objects, homs, identity, compose)
        .map_err(|e| Error::schema("", e.to_string()))
}

fn linear_to_json(k: &Field, labels: &[String], v: &[crate::field::Scalar]) -> Value {
    Value::Array(
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != k.zero())
            .map(|(i, x)| json!([labels[i], k.format(x)]))
            .collect(),
    )
}

pub fn category_to_json(cat: &FinCategory) -> Value {
    let k = cat.field();
    let n = cat.num_objects();
    let mut homs = Map::new();
    for b in 0..n {
        for c in 0..n {
            homs.insert(hom_key(cat, b, c), json!(cat.hom_labels(b, c)));
        }
    }
    let mut identity = Map::new();
    for b in 0..n {
        identity.insert(
            cat.object_label(b).to_string(),
            linear_to_json(k, cat.hom_labels(b, b), cat.identity(b)),
        );
    }
    let id_idx: Vec<Option<usize>> = (0..n)
        .map(|b| identity_basis_index(k, cat.identity(b)))
        .collect();
    let mut compose = Vec::new();
    for (key, v) in cat.structure_constants() {
        let implied =
            (key.b == key.c && id_idx[key.b] == Some(key.f) && *v == k.unit_vector(v.len(), key.g))
                || (key.c == key.d
                    && id_idx[key.c] == Some(key.g)
                    && *v == k.unit_vector(v.len(), key.f));
        if implied {
            continue;
        }
        compose.push(json!({
            "g": cat.hom_labels(key.c, key.d)[key.g],
            "f": cat.hom_labels(key.b, key.c)[key.f],
            "result": linear_to_json(k, cat.hom_labels(key.b, key.d), v),
        }));
    }
    json!({
        "field": field_to_json(k),
        "objects": cat.objects(),
        "homs": homs,
        "identity": identity,
        "compose": compose,
    })
}

// ---------------------------------------------------------------- matrices

fn matrix_to_json(k: &Field, m: &Matrix) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(|x| json!(k.format(x))).collect()))
            .collect(),
    )
}

fn matrix_from_json(k: &Field, rows: &[Vec<String>], dim: usize, at: &str) -> Result<Matrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::schema(at, format!("expected a {dim}×{dim} matrix")));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| {
                    k.parse(s)
                        .map_err(|e| Error::schema(format!("{at}/{i}/{j}"), e.to_string()))
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------- gradings

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingDoc {
    group: Value,
    #[serde(default)]
    basis_change: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    degrees: BTreeMap<String, Vec<Value>>,
}

/// Hom-spaces with no `degrees` entry must be zero.
pub fn grading_from_json(value: &Value, cat: &Arc<FinCategory>) -> Result<Grading> {
    let doc: GradingDoc = decode(value.clone())?;
    let group = group_from_doc(
        decode(doc.group.clone()).map_err(|e| prefix("/group", e))?,
        "/group",
    )?;
    let n = cat.num_objects();
    let k = cat.field();
    let mut bases = vec![None; n * n];
    for (key, rows) in &doc.basis_change {
        let at = format!("/basis_change/{key}");
        let (b, c) = split_hom_key(cat, key, &at)?;
        bases[b * n + c] = Some(matrix_from_json(k, rows, cat.hom_dim(b, c), &at)?);
    }
    let mut degrees = vec![Vec::new(); n * n];
    for (key, payloads) in &doc.degrees {
        let at = format!("/degrees/{key}");
        let (b, c) = split_hom_key(cat, key, &at)?;
        if payloads.len() != cat.hom_dim(b, c) {
            return Err(Error::schema(
                &at,
                format!("expected {} degrees", cat.hom_dim(b, c)),
            ));
        }
        degrees[b * n + c] = payloads
            .iter()
            .enumerate()
            .map(|(i, p)| elem_from_json(&group, p, &format!("{at}/{i}")))
            .collect::<Result<_>>()?;
    }
    for b in 0..n {
        for c in 0..n {
            if degrees[b * n + c].len() != cat.hom_dim(b, c) {
                return Err(Error::schema(
                    "/degrees",
                    format!("missing degrees for {}", hom_key(cat, b, c)),
                ));
            }
        }
    }
    Grading::new(cat.clone(), group, bases, degrees).map_err(|e| Error::schema("", e.to_string()))
}

fn prefix(p: &str, e: Error) -> Error {
    match e {
        Error::Schema { pointer, message } => Error::Schema {
            pointer: format!("{p}{pointer}"),
            message,
        },
        e => e,
    }
}

pub fn grading_to_json(g: &Grading) -> Value {
    let cat = g.category();
    let k = cat.field();
    let n = cat.num_objects();
    let mut basis_change = Map::new();
    let mut degrees = Map::new();
    for b in 0..n {
        for c in 0..n {
            if cat.hom_dim(b, c) == 0 {
                continue;
            }
            let h = g.hom(b, c);
            if !h.is_canonical() {
                basis_change.insert(hom_key(cat, b, c), matrix_to_json(k, h.basis()));
            }
            degrees.insert(
                hom_key(cat, b, c),
                Value::Array(
                    h.degrees()
                        .iter()
                        .map(|d| elem_to_json(g.group(), d))
                        .collect(),
                ),
            );
        }
    }
    let mut m = Map::new();
    m.insert("group".into(), group_to_json(g.group()));
    if !basis_change.is_empty() {
        m.insert("basis_change".into(), Value::Object(basis_change));
    }
    m.insert("degrees".into(), Value::Object(degrees));
    Value::Object(m)
}

pub fn violation_to_json(v: &GradingViolation) -> Value {
    match v {
        GradingViolation::Composite {
            f,
            g,
            target,
            expected,
            found,
        } => {
            json!({"kind": "composite", "f": f, "g": g, "target": target, "expected": expected, "found": found})
        }
        GradingViolation::NonHomogeneousIdentity { object, component } => {
            json!({"kind": "non-homogeneous-identity", "object": object, "component": component})
        }
    }
}

/// `{"status": "extended", "grading": …}` or `{"status": "invalid", "violations": […]}`.
pub fn extension_to_json(e: &Extension) -> Value {
    match e {
        Extension::Extended(g) => json!({"status": "extended", "grading": grading_to_json(g)}),
        Extension::Diagnostic(vs) => json!({
            "status": "invalid",
            "violations": vs.iter().map(violation_to_json).collect::<Vec<_>>(),
        }),
    }
}

// ---------------------------------------------------------------- automorphisms

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomorphismDoc {
    /// Rows are images of basis vectors; absent hom-spaces map identically.
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn automorphism_from_json(value: &Value, cat: &FinCategory) -> Result<BaseAutomorphism> {
    let doc: AutomorphismDoc = decode(value.clone())?;
    let n = cat.num_objects();
    let k = cat.field();
    let mut maps: Vec<Matrix> = (0..n * n)
        .map(|i| k.identity_matrix(cat.hom_dim(i / n, i % n)))
        .collect();
    for (key, rows) in &doc.maps {
        let at = format!("/maps/{key}");
        let (b, c) = split_hom_key(cat, key, &at)?;
        maps[b * n + c] = matrix_from_json(k, rows, cat.hom_dim(b, c), &at)?;
    }
    BaseAutomorphism::new(cat, maps).map_err(|e| Error::schema("/maps", e.to_string()))
}

pub fn automorphism_to_json(j: &BaseAutomorphism, cat: &FinCategory) -> Value {
    let n = cat.num_objects();
    let k = cat.field();
    let mut maps = Map::new();
    for b in 0..n {
        for c in 0..n {
            let m = &j.maps()[b * n + c];
            if cat.hom_dim(b, c) > 0 && *m != k.identity_matrix(cat.hom_dim(b, c)) {
                maps.insert(hom_key(cat, b, c), matrix_to_json(k, m));
            }
        }
    }
    json!({ "maps": maps })
}

// ---------------------------------------------------------------- morphisms

/// Object maps `s ↦ H(b, s)` per base object when the source group is
/// finite, always with the generator images of `λ` and the offsets `h_b`.
pub fn morphism_to_json(m: &CoveringMorphism) -> Value {
    let cat = m.source().category();
    let sg = m.source().group();
    let tg = m.target().group();
    let mut out = Map::new();
    if let Some(maps) = m.object_maps() {
        let mut om = Map::new();
        for (b, pairs) in maps.iter().enumerate() {
            let inner: Map<String, Value> = pairs
                .iter()
                .map(|(s, t)| (sg.fmt_elem(s), json!(tg.fmt_elem(t))))
                .collect();
            om.insert(cat.object_label(b).to_string(), Value::Object(inner));
        }
        out.insert("object_maps".into(), Value::Object(om));
    }
    let offsets: Map<String, Value> = m
        .offsets()
        .iter()
        .enumerate()
        .map(|(b, h)| (cat.object_label(b).to_string(), elem_to_json(tg, h)))
        .collect();
    out.insert("offsets".into(), Value::Object(offsets));
    if let Ok(lambda) = m.lambda() {
        out.insert("lambda".into(), hom_to_json(&lambda));
    }
    out.insert(
        "J".into(),
        match m.j() {
            None => json!("identity"),
            Some(j) => automorphism_to_json(j, cat),
        },
    );
    Value::Object(out)
}

/// Generator images of a homomorphism, as `[[source, image], …]`.
pub fn hom_to_json(h: &crate::groups::GroupHom) -> Value {
    Value::Array(
        h.generator_images()
            .iter()
            .map(|(x, y)| json!([elem_to_json(h.source(), x), elem_to_json(h.target(), y)]))
            .collect(),
    )
}

// ---------------------------------------------------------------- diagrams

/// A diagram document with paths resolved against its own directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSpec {
    pub category: PathBuf,
    pub base_object: String,
    pub gradings: Vec<PathBuf>,
    pub declared_j: Vec<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    category: String,
    base_object: String,
    gradings: Vec<String>,
    #[serde(default, rename = "declared_J")]
    declared_j: Vec<String>,
}

pub fn diagram_spec_from_json(value: &Value, dir: &Path) -> Result<DiagramSpec> {
    let doc: DiagramDoc = decode(value.clone())?;
    Ok(DiagramSpec {
        category: dir.join(doc.category),
        base_object: doc.base_object,
        gradings: doc.gradings.iter().map(|p| dir.join(p)).collect(),
        declared_j: doc.declared_j.iter().map(|p| dir.join(p)).collect(),
    })
}

// ---------------------------------------------------------------- files

pub fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

pub fn read_category(path: &Path) -> Result<FinCategory> {
    category_from_json(&read_json(path)?)
}

pub fn read_grading(path: &Path, cat: &Arc<FinCategory>) -> Result<Grading> {
    grading_from_json(&read_json(path)?, cat)
}

/// Load a diagram file and everything it references, then build the diagram.
/// Nodes are named after the grading file stems.
pub fn read_diagram(path: &Path) -> Result<GradingDiagram> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let spec = diagram_spec_from_json(&read_json(path)?, dir)?;
    let category = Arc::new(read_category(&spec.category)?);
    let base = category.object_index(&spec.base_object).map_err(|_| {
        Error::schema(
            "/base_object",
            format!("unknown object {:?}", spec.base_object),
        )
    })?;
    let mut nodes = Vec::new();
    for p in &spec.gradings {
        let name = p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        nodes.push((name, read_grading(p, &category)?));
    }
    let declared = spec
        .declared_j
        .iter()
        .map(|p| automorphism_from_json(&read_json(p)?, &category))
        .collect::<Result<Vec<_>>>()?;
    build_diagram(&category, base, nodes, &declared)
}

/// Parse then serialize a category document.
pub fn roundtrip_category(text: &str) -> Result<String> {
    Ok(to_canonical(&category_to_json(&category_from_json(
        &parse_json(text)?,
    )?)))
}

pub fn roundtrip_grading(text: &str, cat: &Arc<FinCategory>) -> Result<String> {
    Ok(to_canonical(&grading_to_json(&grading_from_json(
        &parse_json(text)?,
        cat,
    )?)))
}
