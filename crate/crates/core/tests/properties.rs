mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use gradecat::covering::{
    canonical_mu, enumerate_identity_j_morphisms, find_identity_j_morphism, smash_product,
    MorphismSet, Search,
};
use gradecat::fincat::ObjectSubset;
use gradecat::grading::{extend_trivial, Extension, Grading};
use gradecat::groups::{conjugation_hom, Elem, GroupHom, Subgroup};
use gradecat::pi1::{build_diagram, kappa_relative, relative_pi1, Realization};
use gradecat::random::{self, random_element, random_family, random_graded_quiver, RandomConfig};

fn instance(seed: u64, rebase: bool) -> Grading {
    random_graded_quiver(&mut random::rng(seed), &RandomConfig::default(), rebase)
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

// ------------------------------------------------------------------ groups

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn subgroup_generated_is_closure(seed: u64, k in 0usize..4) {
        let mut r = random::rng(seed);
        let g = random::random_group(&mut r, 8);
        let gens: Vec<Elem> = (0..k).map(|_| random_element(&mut r, &g)).collect();
        let sub = Subgroup::generated(&g, &gens).unwrap();
        let got: BTreeSet<Elem> = sub.elements().unwrap().into_iter().collect();
        prop_assert_eq!(got, common::closure(&g, &gens));
    }

    #[test]
    fn generator_images_give_verified_maps(seed: u64) {
        let mut r = random::rng(seed);
        let src = random::random_group(&mut r, 8);
        let dst = random::random_group(&mut r, 8);
        let images: Vec<Elem> = src.generators().iter().map(|_| random_element(&mut r, &dst)).collect();
        if let Ok(h) = GroupHom::from_generator_images(&src, &dst, images) {
            let els = src.elements().unwrap();
            for x in &els {
                for y in &els {
                    prop_assert_eq!(h.apply(&src.mul(x, y)), dst.mul(&h.apply(x), &h.apply(y)));
                }
            }
        }
    }

    #[test]
    fn conjugation_by_inverse_undoes(seed: u64) {
        let mut r = random::rng(seed);
        let g = random::random_group(&mut r, 8);
        let a = random_element(&mut r, &g);
        let h = conjugation_hom(&g, &a).unwrap().then(&conjugation_hom(&g, &g.inv(&a)).unwrap()).unwrap();
        for x in g.elements().unwrap() {
            prop_assert_eq!(h.apply(&x), x);
        }
    }
}

// ------------------------------------------------------------------ categories

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn validation_matches_reassociation_under_mutation(seed: u64, pick in any::<prop::sample::Index>(), delta in 1i64..3) {
        let g = instance(seed, false);
        let cat = g.category();
        prop_assert!(cat.is_valid());
        prop_assert!(common::associativity_holds(cat));
        let keys: Vec<_> = cat.structure_constants().keys().copied().collect();
        let key = keys[pick.index(keys.len())];
        let k = cat.field();
        let mut v = cat.structure_constants()[&key].clone();
        let i = pick.index(v.len().max(1)).min(v.len().saturating_sub(1));
        if v.is_empty() {
            return Ok(());
        }
        v[i] = k.add(&v[i], &k.from_i64(delta));
        let mutated = cat.with_structure_constant(key, v).unwrap();
        // validation also checks identities, so only one direction is an equivalence
        if !common::associativity_holds(&mutated) {
            prop_assert!(!mutated.is_valid());
        }
        if mutated.is_valid() {
            prop_assert!(common::associativity_holds(&mutated));
        }
    }

    #[test]
    fn restricting_twice_is_restricting_to_intersection(seed: u64, m1 in 1u32..16, m2 in 1u32..16) {
        let g = instance(seed, false);
        let cat = g.category();
        let n = cat.num_objects();
        let pick = |m: u32| -> Vec<usize> { (0..n).filter(|i| m & (1 << i) != 0).collect() };
        let (s, t) = (pick(m1), pick(m2));
        if s.is_empty() || t.is_empty() {
            return Ok(());
        }
        let s = ObjectSubset::new(cat, s).unwrap();
        let t = ObjectSubset::new(cat, t).unwrap();
        let Some(both) = s.intersect(&t) else { return Ok(()) };
        let once = cat.full_subcategory(&both).unwrap();
        let first = cat.full_subcategory(&s).unwrap();
        let inner = ObjectSubset::new(&first, both.indices().iter().map(|&i| s.position(i).unwrap())).unwrap();
        prop_assert_eq!(first.full_subcategory(&inner).unwrap(), once);
    }

    #[test]
    fn everything_is_convex(seed: u64) {
        let g = instance(seed, false);
        let cat = g.category();
        prop_assert!(cat.is_convex(&ObjectSubset::all(cat)).convex);
    }
}

// ------------------------------------------------------------------ gradings

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn coset_law(seed: u64) {
        let g = instance(seed, true);
        let n = g.category().num_objects();
        for b1 in 0..n {
            let (sets, stable) = common::walk_degrees(&g, b1, 64);
            prop_assert!(stable.is_some());
            for (b2, want) in sets.iter().enumerate() {
                let got: BTreeSet<Elem> = g.walk_degree_coset(b1, b2).unwrap().elements().unwrap().into_iter().collect();
                prop_assert_eq!(&got, want);
            }
        }
    }

    #[test]
    fn walk_group_ignores_tree_choice(seed: u64, other: u64) {
        let g = instance(seed, true);
        let (a, _) = g.walk_group_seeded(0, None).unwrap();
        let (b, _) = g.walk_group_seeded(0, Some(other)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn conjugating_back_is_identity(seed: u64) {
        let g = instance(seed, true);
        let a = random_family(&mut random::rng(seed ^ 1), &g, 0, false);
        let back = g.conjugate(&a).unwrap().conjugate(&a.inverse(g.group())).unwrap();
        prop_assert!(back.same_as(&g));
    }

    #[test]
    fn base_component_is_connected_over_walk_group(seed: u64) {
        let g = instance(seed, true);
        let (sub, _) = g.walk_group(0).unwrap();
        let (_, c) = g.base_component(0).unwrap();
        for r in c.homogeneous_refs() {
            prop_assert!(sub.contains(c.degree(r)));
        }
        prop_assert!(c.is_valid());
        prop_assert!(c.is_connected_grading(0).unwrap());
    }

    #[test]
    fn restriction_is_valid(seed: u64, mask in 1u32..16) {
        let g = instance(seed, true);
        let n = g.category().num_objects();
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if idx.is_empty() {
            return Ok(());
        }
        let objs = ObjectSubset::new(g.category(), idx).unwrap();
        prop_assert!(g.restrict(&objs).unwrap().is_valid());
    }

    #[test]
    fn successful_extension_is_connected_and_restricts_back(seed: u64, mask in 1u32..16) {
        let g = instance(seed, true);
        let cat = g.category().clone();
        let n = cat.num_objects();
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if idx.is_empty() {
            return Ok(());
        }
        let objs = ObjectSubset::new(&cat, idx).unwrap();
        let d = cat.full_subcategory(&objs).unwrap();
        if !d.is_connected() || !cat.is_convex(&objs).convex {
            return Ok(());
        }
        let (_, gd) = g.restrict(&objs).unwrap().base_component(0).unwrap();
        if let Extension::Extended(e) = extend_trivial(&gd, &cat, &objs).unwrap() {
            prop_assert!(e.is_valid());
            prop_assert!(e.is_connected_grading(objs.indices()[0]).unwrap());
            prop_assert!(e.restrict(&objs).unwrap().same_as(&gd));
        }
    }
}

// ------------------------------------------------------------------ coverings

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn smash_is_a_covering_with_free_deck_action(seed: u64) {
        let g = instance(seed, true);
        let s = smash_product(&g).unwrap();
        prop_assert!(s.verify_covering().is_empty());
        prop_assert!(s.functor().verify_functor().is_empty());
        let els = s.elements().to_vec();
        for q in &els {
            let act = s.deck_action(q);
            if *q != g.group().identity() {
                prop_assert!(act.iter().enumerate().all(|(x, &y)| x != y));
            }
        }
    }

    #[test]
    fn galois_iff_connected(seed: u64) {
        let g = instance(seed, true);
        let s = smash_product(&g).unwrap();
        let (sets, _) = common::walk_degrees(&g, 0, 64);
        let oracle = sets[0].len() == g.group().order().unwrap();
        prop_assert_eq!(s.verify_galois(0).is_galois(), oracle);
        prop_assert_eq!(g.is_connected_grading(0).unwrap(), oracle);
    }

    #[test]
    fn morphisms_form_one_orbit_with_common_mu(seed: u64) {
        let g = instance(seed, true);
        if !g.is_connected_grading(0).unwrap() {
            return Ok(());
        }
        let a = random_family(&mut random::rng(seed ^ 7), &g, 0, false);
        let y = g.conjugate(&a).unwrap();
        let MorphismSet::Listed(all) = enumerate_identity_j_morphisms(&g, &y, 0).unwrap() else {
            return Err(TestCaseError::fail("conjugate grading must be reachable"));
        };
        let oracle = common::exhaustive_object_maps(&g, &y);
        prop_assert_eq!(all.len(), oracle.len());
        let mu = canonical_mu(&all[0]).unwrap();
        for m in &all {
            prop_assert!(m.lambda().unwrap().is_surjective());
            prop_assert!(canonical_mu(m).unwrap().same_map(&mu));
        }
    }
}

// ------------------------------------------------------------------ diagrams

fn small_diagram(seed: u64) -> Option<gradecat::pi1::GradingDiagram> {
    let g = instance(seed, false);
    if !g.is_connected_grading(0).unwrap() {
        return None;
    }
    let cat = g.category().clone();
    let mut r = random::rng(seed ^ 3);
    let a = random_family(&mut r, &g, 0, false);
    let mut nodes = vec![
        ("g".to_string(), g.clone()),
        ("ag".to_string(), g.conjugate(&a).unwrap()),
        ("triv".to_string(), Grading::trivial(cat.clone())),
    ];
    // a quotient grading when the group has a proper normal subgroup in view
    if let Some(q) = quotient_grading(&g) {
        nodes.push(("quot".to_string(), q));
    }
    build_diagram(&cat, 0, nodes, &[]).ok()
}

/// The grading mod 2 when the group is cyclic of even order.
fn quotient_grading(g: &Grading) -> Option<Grading> {
    let a = g.group().as_abelian()?;
    if a.free_rank() != 0 || a.torsion().len() != 1 || a.torsion()[0] % 2 != 0 {
        return None;
    }
    let z2 = gradecat::groups::Group::cyclic(2);
    let cat = g.category();
    let n = cat.num_objects();
    let mut bases = Vec::new();
    let mut degs = Vec::new();
    for b in 0..n {
        for c in 0..n {
            let h = g.hom(b, c);
            bases.push(Some(h.basis().clone()));
            degs.push(
                h.degrees()
                    .iter()
                    .map(|d| match d {
                        Elem::Vec(v) => Elem::Vec(vec![v[0].rem_euclid(2)]),
                        e => e.clone(),
                    })
                    .collect(),
            );
        }
    }
    Grading::new(cat.clone(), z2, bases, degs).ok()
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn limit_is_a_group(seed: u64) {
        let Some(d) = small_diagram(seed) else { return Ok(()) };
        let l = relative_pi1(&d).unwrap();
        let Realization::Finite { elements, .. } = &l.realization else {
            return Err(TestCaseError::fail("finite nodes give a listed limit"));
        };
        let set: BTreeSet<&Vec<Elem>> = elements.iter().collect();
        prop_assert!(set.contains(&l.system.identity()));
        for a in elements {
            prop_assert!(set.contains(&l.system.inverse(a)));
            for b in elements {
                prop_assert!(set.contains(&l.system.product(a, b)));
            }
        }
    }

    #[test]
    fn composite_edges_agree_with_direct_edges(seed: u64) {
        let Some(d) = small_diagram(seed) else { return Ok(()) };
        for e1 in d.edges() {
            for e2 in d.edges().iter().filter(|e| e.from == e1.to) {
                let direct = d.edges().iter().find(|e| e.from == e1.from && e.to == e2.to && e.j.is_none());
                let direct = direct.expect("composable morphisms give a direct edge");
                let composite = e1.mu.then(&e2.mu).unwrap();
                prop_assert!(composite.same_map(&direct.mu));
            }
        }
    }

    #[test]
    fn kappa_over_everything_is_the_identity(seed: u64) {
        let Some(d) = small_diagram(seed) else { return Ok(()) };
        let all = ObjectSubset::all(d.category());
        let r = kappa_relative(&d, &all, &d).unwrap();
        prop_assert!(r.maps_into_limit && r.homomorphism);
        for m in &r.matches {
            let y = d.node_index(m.matched.as_deref().unwrap()).unwrap();
            let Search::Found(h) = find_identity_j_morphism(&m.component, &d.nodes()[y], 0).unwrap() else {
                return Err(TestCaseError::fail("match without a morphism"));
            };
            prop_assert!(h.canonical_mu().unwrap().is_identity_map());
        }
    }
}

#[test]
fn completeness_on_conjugate_pairs_of_every_fixture() {
    for (name, g) in common::finite_fixture_gradings() {
        if !g.is_connected_grading(0).unwrap() {
            continue;
        }
        let els = g.group().elements().unwrap();
        let n = g.category().num_objects();
        let a = gradecat::grading::ConjugationFamily::new(
            (0..n).map(|b| els[b % els.len()].clone()).collect(),
            0,
        );
        let y = g.conjugate(&a).unwrap();
        let listed = enumerate_identity_j_morphisms(&g, &y, 0).unwrap();
        assert_eq!(
            listed.len(),
            Some(common::exhaustive_object_maps(&g, &y).len()),
            "{name}"
        );
    }
}
