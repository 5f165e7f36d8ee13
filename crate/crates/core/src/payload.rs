//! JSON reports for computed objects (subgroups, maps, diagrams, limits).
//! Unlike `schema`, these are output-only.

use serde_json::{json, Map, Value};

use crate::covering::{CoveringMorphism, Obstruction};
use crate::error::Result;
use crate::fincat::{CategoryViolation, FinCategory};
use crate::grading::ConjugationFamily;
use crate::groups::{Elem, Group, GroupHom, Subgroup};
use crate::pi1::{GradingDiagram, KappaReport, LimitGroup, Realization};
use crate::schema::{
    elem_to_json, group_to_json, hom_to_json, morphism_to_json, violation_to_json,
};

pub fn subgroup(sub: &Subgroup) -> Value {
    let amb = sub.ambient();
    let mut m = Map::new();
    m.insert(
        "generators".into(),
        Value::Array(
            sub.generators()
                .iter()
                .map(|x| elem_to_json(amb, x))
                .collect(),
        ),
    );
    m.insert("is_whole".into(), json!(sub.is_whole()));
    if let Some(inv) = sub.invariants() {
        m.insert("free_rank".into(), json!(inv.free_rank));
        m.insert("torsion".into(), json!(inv.torsion));
    }
    if let Some(els) = sub.elements() {
        m.insert("order".into(), json!(els.len()));
        m.insert(
            "elements".into(),
            Value::Array(els.iter().map(|x| elem_to_json(amb, x)).collect()),
        );
    }
    Value::Object(m)
}

pub fn family(cat: &FinCategory, g: &Group, a: &ConjugationFamily) -> Value {
    Value::Object(
        a.values()
            .iter()
            .enumerate()
            .map(|(b, x)| (cat.object_label(b).to_string(), elem_to_json(g, x)))
            .collect(),
    )
}

pub fn hom(h: &GroupHom) -> Value {
    let mut m = Map::new();
    m.insert("generator_images".into(), hom_to_json(h));
    m.insert("identity".into(), json!(h.is_identity_map()));
    m.insert("surjective".into(), json!(h.is_surjective()));
    if let Some(els) = h.source().elements() {
        let values: Map<String, Value> = els
            .iter()
            .map(|x| {
                (
                    h.source().fmt_elem(x),
                    json!(h.target().fmt_elem(&h.apply(x))),
                )
            })
            .collect();
        m.insert("values".into(), Value::Object(values));
    }
    Value::Object(m)
}

pub fn category_violation(v: &CategoryViolation) -> Value {
    match v {
        CategoryViolation::Associativity { h, g, f } => {
            json!({"kind": "associativity", "h": h, "g": g, "f": f})
        }
        CategoryViolation::LeftIdentity { f } => json!({"kind": "left-identity", "f": f}),
        CategoryViolation::RightIdentity { f } => json!({"kind": "right-identity", "f": f}),
        CategoryViolation::Centrality { object, endo } => {
            json!({"kind": "centrality", "object": object, "endo": endo})
        }
    }
}

pub fn obstruction(o: &Obstruction) -> Value {
    let kind = match o {
        Obstruction::NotHomogeneous { .. } => "not-homogeneous",
        Obstruction::InconsistentTransport { .. } => "inconsistent-transport",
        Obstruction::NotHomomorphism(_) => "not-homomorphism",
    };
    json!({"kind": kind, "message": o.to_string()})
}

pub fn diagram(d: &GradingDiagram) -> Value {
    let names = d.names();
    json!({
        "base_object": d.category().object_label(d.base()),
        "nodes": d.nodes().iter().zip(names).map(|(g, n)| json!({
            "name": n,
            "group": group_to_json(g.group()),
        })).collect::<Vec<_>>(),
        "edges": d.edges().iter().map(|e| json!({
            "from": names[e.from],
            "to": names[e.to],
            "mu": hom(&e.mu),
            "J": e.j.map_or(json!("identity"), |j| json!(j)),
        })).collect::<Vec<_>>(),
    })
}

pub fn family_list(groups: &[Group], fam: &[Elem]) -> Value {
    Value::Array(
        groups
            .iter()
            .zip(fam)
            .map(|(g, x)| elem_to_json(g, x))
            .collect(),
    )
}

pub fn limit(l: &LimitGroup) -> Value {
    let groups = &l.system.groups;
    let mut m = Map::new();
    m.insert("kind".into(), json!(l.kind()));
    if let Some(inv) = l.invariants() {
        m.insert(
            "invariant_factors".into(),
            json!({"free_rank": inv.free_rank, "torsion": inv.torsion, "display": inv.to_string()}),
        );
    }
    match &l.realization {
        Realization::Finite { elements, .. } => {
            m.insert(
                "elements".into(),
                Value::Array(elements.iter().map(|f| family_list(groups, f)).collect()),
            );
        }
        Realization::Abelian { generators, .. } => {
            m.insert(
                "generators".into(),
                Value::Array(generators.iter().map(|f| family_list(groups, f)).collect()),
            );
        }
        Realization::Constraints => {}
    }
    Value::Object(m)
}

pub fn morphism(m: &CoveringMorphism) -> Result<Value> {
    let mut v = morphism_to_json(m);
    v["mu"] = hom(&m.canonical_mu()?);
    Ok(v)
}

pub fn kappa(k: &KappaReport, db: &GradingDiagram, dd: &GradingDiagram) -> Value {
    let gb: Vec<Group> = db.nodes().iter().map(|g| g.group().clone()).collect();
    let gd: Vec<Group> = dd.nodes().iter().map(|g| g.group().clone()).collect();
    json!({
        "matches": k.matches.iter().map(|m| json!({"node": m.node, "matched": m.matched})).collect::<Vec<_>>(),
        "unrealized": k.unrealized.iter().map(|u| json!({
            "node": u.node,
            "trivial_extension": match &u.extension {
                Ok(vs) if vs.is_empty() => json!("extends"),
                Ok(vs) => json!(vs.iter().map(violation_to_json).collect::<Vec<_>>()),
                Err(e) => json!(e),
            },
        })).collect::<Vec<_>>(),
        "maps_into_limit": k.maps_into_limit,
        "homomorphism": k.homomorphism,
        "criterion_holds": k.criterion_holds,
        "injective": k.injective,
        "images": k.images.iter().map(|(s, t)| json!([family_list(&gd, s), family_list(&gb, t)])).collect::<Vec<_>>(),
    })
}
