//! Seeded random instances: graded monomial quivers over small finite groups.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Matrix};
use crate::fincat::FinCategory;
use crate::grading::{ConjugationFamily, Grading};
use crate::groups::{Elem, Group};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every group of order at most 8 up to isomorphism, plus `Z/1`.
pub fn small_groups() -> Vec<(&'static str, Group)> {
    let ab = |t: Vec<i64>| Group::abelian(0, t).unwrap();
    vec![
        ("Z/1", Group::trivial()),
        ("Z/2", Group::cyclic(2)),
        ("Z/3", Group::cyclic(3)),
        ("Z/4", Group::cyclic(4)),
        ("Z/2xZ/2", ab(vec![2, 2])),
        ("Z/5", Group::cyclic(5)),
        ("Z/6", Group::cyclic(6)),
        ("S3", Group::symmetric(3)),
        ("Z/7", Group::cyclic(7)),
        ("Z/8", Group::cyclic(8)),
        ("Z/2xZ/4", ab(vec![2, 4])),
        ("Z/2xZ/2xZ/2", ab(vec![2, 2, 2])),
        ("D4", Group::dihedral(4)),
        ("Q8", Group::quaternion()),
    ]
}

#[derive(Debug, Clone)]
pub struct RandomConfig {
    pub max_objects: usize,
    /// Bound on non-identity basis vectors (arrows plus longer paths).
    pub max_basis: usize,
    pub max_group_order: usize,
    /// Force the underlying graph to be connected.
    pub connected: bool,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            max_objects: 4,
            max_basis: 6,
            max_group_order: 8,
            connected: true,
        }
    }
}

pub fn random_group<R: Rng>(rng: &mut R, max_order: usize) -> Group {
    let pool: Vec<Group> = small_groups()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.order().is_some_and(|n| n <= max_order))
        .collect();
    pool.choose(rng).unwrap().clone()
}

pub fn random_element<R: Rng>(rng: &mut R, g: &Group) -> Elem {
    let els = g.elements().expect("random elements need a finite group");
    els.choose(rng).unwrap().clone()
}

fn random_field<R: Rng>(rng: &mut R) -> Field {
    match rng.random_range(0..3) {
        0 => Field::Prime(2),
        1 => Field::Prime(3),
        _ => Field::Rationals,
    }
}

/// A random bound quiver with monomial relations.
pub fn random_quiver<R: Rng>(rng: &mut R, cfg: &RandomConfig) -> FinCategory {
    let n = rng.random_range(1..=cfg.max_objects.max(1));
    let objects: Vec<String> = ["a", "b", "c", "d", "e", "f"]
        .iter()
        .take(n)
        .map(|s| s.to_string())
        .collect();
    let mut ends: Vec<(usize, usize)> = Vec::new();
    if cfg.connected {
        for i in 1..n {
            let j = rng.random_range(0..i);
            ends.push(if rng.random_bool(0.5) { (i, j) } else { (j, i) });
        }
    }
    let budget = cfg.max_basis.max(ends.len());
    let extra = rng.random_range(0..=budget - ends.len());
    for _ in 0..extra {
        ends.push((rng.random_range(0..n), rng.random_range(0..n)));
    }
    let arrows: Vec<(usize, usize, String)> = ends
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| (s, t, format!("x{i}")))
        .collect();
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut room = budget - arrows.len();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for a in 0..arrows.len() {
        for b in 0..arrows.len() {
            if arrows[a].1 == arrows[b].0 {
                candidates.push(vec![a, b]);
            }
        }
    }
    for p in candidates {
        if room > 0 && rng.random_bool(0.35) {
            paths.push(p);
            room -= 1;
        }
    }
    // occasionally one path of length three, when its subpaths are present
    if room > 0 {
        let mut longer = Vec::new();
        for p in &paths {
            for q in &paths {
                if p[1] == q[0] {
                    longer.push(vec![p[0], p[1], q[1]]);
                }
            }
        }
        if let Some(p) = longer.choose(rng) {
            if rng.random_bool(0.5) {
                paths.push(p.clone());
            }
        }
    }
    FinCategory::monomial(random_field(rng), objects, &arrows, &paths)
        .expect("random monomial data is consistent")
}

/// A random grading of a random quiver: arrows get random degrees and paths
/// the product of theirs. With `rebase`, the homogeneous basis is mixed
/// within each degree so it is usually not the canonical one.
pub fn random_graded_quiver<R: Rng>(rng: &mut R, cfg: &RandomConfig, rebase: bool) -> Grading {
    let cat = Arc::new(random_quiver(rng, cfg));
    let group = random_group(rng, cfg.max_group_order);
    let arrow_deg: std::collections::HashMap<String, Elem> = cat
        .basis_refs()
        .map(|r| cat.basis_label(r).to_string())
        .filter(|l| !l.contains('.') && l.starts_with('x'))
        .map(|l| (l, random_element(rng, &group)))
        .collect();
    let n = cat.num_objects();
    let mut degrees: Vec<Vec<Elem>> = vec![Vec::new(); n * n];
    for b in 0..n {
        for c in 0..n {
            for l in cat.hom_labels(b, c) {
                let d = if l.starts_with('1') {
                    group.identity()
                } else {
                    // label "z.y.x" is z∘y∘x, degree deg z · deg y · deg x
                    group.product(l.split('.').map(|a| &arrow_deg[a]).collect::<Vec<_>>())
                };
                degrees[b * n + c].push(d);
            }
        }
    }
    let mut bases: Vec<Option<Matrix>> = vec![None; n * n];
    if rebase {
        let k = cat.field().clone();
        for b in 0..n {
            for c in 0..n {
                let dim = cat.hom_dim(b, c);
                let degs = &degrees[b * n + c];
                let mut m = k.identity_matrix(dim);
                for i in 0..dim {
                    for j in 0..dim {
                        // keep identities canonical so they stay homogeneous
                        let is_id = b == c && (i == 0 || j == 0);
                        if i < j && degs[i] == degs[j] && !is_id {
                            m[i][j] = k.from_i64(rng.random_range(-2..=2));
                        }
                    }
                }
                bases[b * n + c] = Some(m);
            }
        }
    }
    Grading::new(cat, group, bases, degrees).expect("random grading is well formed")
}

/// A random family `a_b` with `a_{b0} = 1` when `pin_base`.
pub fn random_family<R: Rng>(
    rng: &mut R,
    g: &Grading,
    base: usize,
    pin_base: bool,
) -> ConjugationFamily {
    let n = g.category().num_objects();
    let values = (0..n)
        .map(|b| {
            if pin_base && b == base {
                g.group().identity()
            } else {
                random_element(rng, g.group())
            }
        })
        .collect();
    ConjugationFamily::new(values, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_instances_are_valid_and_bounded() {
        let mut r = rng(11);
        let cfg = RandomConfig::default();
        for _ in 0..200 {
            let g = random_graded_quiver(&mut r, &cfg, true);
            let cat = g.category();
            assert!(cat.is_valid());
            assert!(cat.is_connected());
            assert!(cat.num_objects() <= 4);
            let non_identity = cat.basis_refs().count() - cat.num_objects();
            assert!(non_identity <= 6);
            assert!(g.group().order().unwrap() <= 8);
            assert!(g.is_valid(), "{:?}", g.validate());
        }
    }

    #[test]
    fn seeds_reproduce() {
        let cfg = RandomConfig::default();
        let a = random_graded_quiver(&mut rng(5), &cfg, true);
        let b = random_graded_quiver(&mut rng(5), &cfg, true);
        assert!(a.same_as(&b));
        assert_eq!(**a.category(), **b.category());
    }
}
