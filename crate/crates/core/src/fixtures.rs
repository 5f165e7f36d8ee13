//! Small named categories and gradings used throughout the tests, the
//! acceptance suite and the shipped JSON corpus.

use std::sync::Arc;

use crate::field::Field;
use crate::fincat::{CategoryBuilder, FinCategory, ObjectSubset};
use crate::grading::Grading;
use crate::groups::{Elem, Group};

fn f2() -> Field {
    Field::Prime(2)
}

fn z(n: i64) -> Elem {
    Elem::Vec(vec![n])
}

/// `k[x]/x²` over F₂, i.e. the group algebra of C₂ with `x = 1 + t`.
pub fn kc2() -> FinCategory {
    CategoryBuilder::new(f2())
        .object("u", "1")
        .morphism("u", "u", "x")
        .product("x", "x", &[])
        .build()
        .unwrap()
}

pub fn kc2_trivial() -> Grading {
    Grading::trivial(Arc::new(kc2()))
}

/// Z-grading in the x-basis, `deg x = 1`.
pub fn kc2_z() -> Grading {
    kc2_z_on(kc2())
}

/// The Z-grading `deg x = 1` on any presentation containing a loop `x`.
pub fn kc2_z_on(cat: FinCategory) -> Grading {
    Grading::from_label_degrees(Arc::new(cat), Group::integers(), &[("x", z(1))]).unwrap()
}

/// Z/2-grading in the x-basis, `deg x = 1`.
pub fn kc2_z2() -> Grading {
    Grading::from_label_degrees(Arc::new(kc2()), Group::cyclic(2), &[("x", z(1))]).unwrap()
}

/// C₂-grading in the group basis `{1, t = 1 + x}`, `deg t = 1`.
pub fn kc2_c2() -> Grading {
    let cat = Arc::new(kc2());
    let k = cat.field().clone();
    let basis = vec![vec![k.one(), k.zero()], vec![k.one(), k.one()]];
    Grading::new(
        cat,
        Group::cyclic(2),
        vec![Some(basis)],
        vec![vec![z(0), z(1)]],
    )
    .unwrap()
}

/// `k[x]/x³` over F₃, the group algebra of C₃ with `x = g - 1`.
pub fn kc3() -> FinCategory {
    CategoryBuilder::new(Field::Prime(3))
        .object("u", "1")
        .morphism("u", "u", "x")
        .morphism("u", "u", "x2")
        .product("x", "x", &[("x2", "1")])
        .product("x", "x2", &[])
        .product("x2", "x", &[])
        .product("x2", "x2", &[])
        .build()
        .unwrap()
}

pub fn kc3_z() -> Grading {
    Grading::from_label_degrees(
        Arc::new(kc3()),
        Group::integers(),
        &[("x", z(1)), ("x2", z(2))],
    )
    .unwrap()
}

pub fn kc3_z3() -> Grading {
    Grading::from_label_degrees(
        Arc::new(kc3()),
        Group::cyclic(3),
        &[("x", z(1)), ("x2", z(2))],
    )
    .unwrap()
}

/// C₃-grading in the group basis `{1, g, g²}` with `g = 1 + x`.
pub fn kc3_c3() -> Grading {
    let cat = Arc::new(kc3());
    let k = cat.field().clone();
    let i = |n| k.from_i64(n);
    let basis = vec![
        vec![i(1), i(0), i(0)],
        vec![i(1), i(1), i(0)],
        vec![i(1), i(2), i(1)],
    ];
    Grading::new(
        cat,
        Group::cyclic(3),
        vec![Some(basis)],
        vec![vec![z(0), z(1), z(2)]],
    )
    .unwrap()
}

/// Two parallel arrows `alpha, beta: a → b` over Q.
pub fn kronecker() -> FinCategory {
    CategoryBuilder::new(Field::Rationals)
        .object("a", "1a")
        .object("b", "1b")
        .morphism("a", "b", "alpha")
        .morphism("a", "b", "beta")
        .build()
        .unwrap()
}

pub fn kronecker_z(alpha: i64, beta: i64) -> Grading {
    Grading::from_label_degrees(
        Arc::new(kronecker()),
        Group::integers(),
        &[("alpha", z(alpha)), ("beta", z(beta))],
    )
    .unwrap()
}

pub fn kronecker_cyclic(n: i64, alpha: i64, beta: i64) -> Grading {
    let g = Group::cyclic(n);
    let e = |d: i64| Elem::Vec(vec![d.rem_euclid(n)]);
    Grading::from_label_degrees(
        Arc::new(kronecker()),
        g,
        &[("alpha", e(alpha)), ("beta", e(beta))],
    )
    .unwrap()
}

/// A single arrow `f: a → b` over Q.
pub fn a2() -> FinCategory {
    CategoryBuilder::new(Field::Rationals)
        .object("a", "1a")
        .object("b", "1b")
        .morphism("a", "b", "f")
        .build()
        .unwrap()
}

/// `x -a-> y -b-> z` over Q, with `b∘a` a basis vector when `nonzero` and
/// zero otherwise.
pub fn a3(nonzero: bool) -> FinCategory {
    let mut b = CategoryBuilder::new(Field::Rationals)
        .object("x", "1x")
        .object("y", "1y")
        .object("z", "1z")
        .morphism("x", "y", "a")
        .morphism("y", "z", "b");
    if nonzero {
        b = b
            .morphism("x", "z", "b.a")
            .product("b", "a", &[("b.a", "1")]);
    } else {
        b = b.product("b", "a", &[]);
    }
    b.build().unwrap()
}

/// `End(u) = kC₂` in the group basis `{1u, t}` and `f: u → v` with `f∘t = f`.
pub fn e3() -> FinCategory {
    CategoryBuilder::new(f2())
        .object("u", "1u")
        .object("v", "1v")
        .morphism("u", "u", "t")
        .morphism("u", "v", "f")
        .product("t", "t", &[("1u", "1")])
        .product("f", "t", &[("f", "1")])
        .build()
        .unwrap()
}

/// The C₂-grading `deg t = 1` of the full subcategory of E3 on `u`.
pub fn e3_u_c2() -> Grading {
    let e3 = e3();
    let u = ObjectSubset::from_labels(&e3, &["u"]).unwrap();
    let d = Arc::new(e3.full_subcategory(&u).unwrap());
    Grading::from_label_degrees(d, Group::cyclic(2), &[("t", z(1))]).unwrap()
}

/// `End(u) = k[x]/x²` and `f: u → v` with `f∘x = 0`.
pub fn e4() -> FinCategory {
    CategoryBuilder::new(f2())
        .object("u", "1u")
        .object("v", "1v")
        .morphism("u", "u", "x")
        .morphism("u", "v", "f")
        .product("x", "x", &[])
        .product("f", "x", &[])
        .build()
        .unwrap()
}

/// Z-grading of E4 with `deg x = 1`, `deg f = 0`.
pub fn e4_z() -> Grading {
    kc2_z_on(e4())
}

/// Oriented 3-cycle `p: a → b`, `q: b → c`, `r: c → a` with all paths of
/// length two zero, over Q.
pub fn cycle3() -> FinCategory {
    CategoryBuilder::new(Field::Rationals)
        .object("a", "1a")
        .object("b", "1b")
        .object("c", "1c")
        .morphism("a", "b", "p")
        .morphism("b", "c", "q")
        .morphism("c", "a", "r")
        .build()
        .unwrap()
}

pub fn cycle3_z(p: i64, q: i64, r: i64) -> Grading {
    Grading::from_label_degrees(
        Arc::new(cycle3()),
        Group::integers(),
        &[("p", z(p)), ("q", z(q)), ("r", z(r))],
    )
    .unwrap()
}

pub fn cycle3_cyclic(n: i64, p: i64, q: i64, r: i64) -> Grading {
    let e = |d: i64| Elem::Vec(vec![d.rem_euclid(n)]);
    Grading::from_label_degrees(
        Arc::new(cycle3()),
        Group::cyclic(n),
        &[("p", e(p)), ("q", e(q)), ("r", e(r))],
    )
    .unwrap()
}

/// Three parallel arrows `alpha, beta, gamma: a → b` over Q.
pub fn kronecker3() -> FinCategory {
    CategoryBuilder::new(Field::Rationals)
        .object("a", "1a")
        .object("b", "1b")
        .morphism("a", "b", "alpha")
        .morphism("a", "b", "beta")
        .morphism("a", "b", "gamma")
        .build()
        .unwrap()
}

/// Connected S₃-grading of [`kronecker3`]: degrees `()`, `(1 2)`, `(1 2 3)`.
pub fn kronecker3_s3() -> Grading {
    let g = Group::symmetric(3);
    let e = |s: &str| g.parse_elem(s).unwrap();
    let degrees = [
        ("alpha", e("()")),
        ("beta", e("(1 2)")),
        ("gamma", e("(1 2 3)")),
    ];
    Grading::from_label_degrees(Arc::new(kronecker3()), g.clone(), &degrees).unwrap()
}

fn full_sub(cat: &FinCategory, labels: &[&str]) -> FinCategory {
    cat.full_subcategory(&ObjectSubset::from_labels(cat, labels).unwrap())
        .unwrap()
}

/// The JSON fixture corpus shipped in `fixtures/`, as `(file name, text)`.
pub fn corpus() -> Vec<(&'static str, String)> {
    use crate::covering::BaseAutomorphism;
    use crate::schema::{automorphism_to_json, category_to_json, grading_to_json, to_canonical};
    use serde_json::json;

    let cat = |c: &FinCategory| to_canonical(&category_to_json(c));
    let grad = |g: &Grading| to_canonical(&grading_to_json(g));
    let diagram = |c: &str, base: &str, gs: &[&str], js: &[&str]| {
        to_canonical(&json!({"category": c, "base_object": base, "gradings": gs, "declared_J": js}))
    };
    let e3_u = full_sub(&e3(), &["u"]);
    let e4_u = full_sub(&e4(), &["u"]);
    let kr = kronecker();
    let k = kr.field().clone();
    let swap = vec![vec![k.zero(), k.one()], vec![k.one(), k.zero()]];
    let n = kr.num_objects();
    let maps = (0..n * n)
        .map(|i| {
            if i == 1 {
                swap.clone()
            } else {
                k.identity_matrix(kr.hom_dim(i / n, i % n))
            }
        })
        .collect();
    let swap_j = BaseAutomorphism::new(&kr, maps).unwrap();

    vec![
        ("kc2.json", cat(&kc2())),
        ("kc2_gtriv.json", grad(&kc2_trivial())),
        ("kc2_gZ.json", grad(&kc2_z())),
        ("kc2_gZ2.json", grad(&kc2_z2())),
        ("kc2_gC2.json", grad(&kc2_c2())),
        (
            "kc2_diagram.json",
            diagram("kc2.json", "u", &["kc2_gtriv.json", "kc2_gZ.json", "kc2_gZ2.json", "kc2_gC2.json"], &[]),
        ),
        ("kc3.json", cat(&kc3())),
        ("kc3_gZ.json", grad(&kc3_z())),
        ("kc3_gZ3.json", grad(&kc3_z3())),
        ("kc3_gC3.json", grad(&kc3_c3())),
        ("kronecker.json", cat(&kr)),
        ("kronecker_g01.json", grad(&kronecker_z(0, 1))),
        ("kronecker_g10.json", grad(&kronecker_z(1, 0))),
        ("kronecker_g02.json", grad(&kronecker_z(0, 2))),
        ("kronecker_swap_J.json", to_canonical(&automorphism_to_json(&swap_j, &kr))),
        (
            "kronecker_diagram.json",
            diagram("kronecker.json", "a", &["kronecker_g01.json", "kronecker_g10.json"], &["kronecker_swap_J.json"]),
        ),
        ("a2.json", cat(&a2())),
        ("a3.json", cat(&a3(true))),
        ("a3_zero.json", cat(&a3(false))),
        ("e3.json", cat(&e3())),
        ("e3_u.json", cat(&e3_u)),
        ("e3_gtriv.json", grad(&Grading::trivial(Arc::new(e3())))),
        ("e3_u_gtriv.json", grad(&Grading::trivial(Arc::new(e3_u.clone())))),
        ("e3_u_gC2.json", grad(&e3_u_c2())),
        ("e3_diagram.json", diagram("e3.json", "u", &["e3_gtriv.json"], &[])),
        ("e3_u_diagram.json", diagram("e3_u.json", "u", &["e3_u_gtriv.json", "e3_u_gC2.json"], &[])),
        ("e4.json", cat(&e4())),
        ("e4_u.json", cat(&e4_u)),
        ("e4_gZ.json", grad(&e4_z())),
        ("e4_u_gZ.json", grad(&kc2_z_on(e4_u.clone()))),
        ("e4_diagram.json", diagram("e4.json", "u", &["e4_gZ.json"], &[])),
        ("e4_u_diagram.json", diagram("e4_u.json", "u", &["e4_u_gZ.json"], &[])),
        ("cycle3.json", cat(&cycle3())),
        ("cycle3_g001.json", grad(&cycle3_z(0, 0, 1))),
        ("kronecker3.json", cat(&kronecker3())),
        ("kronecker3_gS3.json", grad(&kronecker3_s3())),
        (
            "malformed.json",
            "{\n  \"field\": {\"type\": \"Fp\", \"p\": 2},\n  \"objects\": [\"u\"],\n  \"homs\": {\"u->u\": [\"1\", \"x\"]},\n  \"identity\": {\"u\": [[\"1\", 1]]}\n}\n".to_string(),
        ),
    ]
}
