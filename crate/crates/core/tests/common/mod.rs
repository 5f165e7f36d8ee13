//! Brute-force oracles shared by the integration tests. None of them call
//! the search or spanning-tree code they are compared against.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use gradecat::field::{Field, Matrix, Vector};
use gradecat::fincat::{BasisRef, FinCategory};
use gradecat::grading::Grading;
use gradecat::groups::{Elem, Group};

/// Every homogeneous step `(from, to, degree)` of a grading: each nonzero
/// homogeneous basis vector read forwards, and backwards with inverse degree.
pub fn steps(g: &Grading) -> Vec<(usize, usize, Elem)> {
    let cat = g.category();
    let grp = g.group();
    let mut out = Vec::new();
    for r in cat.basis_refs() {
        let d = g.degree(r).clone();
        out.push((r.src, r.tgt, d.clone()));
        out.push((r.tgt, r.src, grp.inv(&d)));
    }
    out
}

/// Degrees of all walks from `b1` of length at most `len`, grouped by end
/// object, for `len = 0, 1, …`, stopping once a length adds nothing. Returns
/// the final sets and the length at which they stabilized, or `None` when
/// `max_len` is reached first.
pub fn walk_degrees(
    g: &Grading,
    b1: usize,
    max_len: usize,
) -> (Vec<BTreeSet<Elem>>, Option<usize>) {
    let n = g.category().num_objects();
    let grp = g.group();
    let st = steps(g);
    let mut sets: Vec<BTreeSet<Elem>> = vec![BTreeSet::new(); n];
    sets[b1].insert(grp.identity());
    for len in 0..max_len {
        let mut next = sets.clone();
        for (x, y, d) in &st {
            for w in &sets[*x] {
                // the step after the walk: degree d · w
                next[*y].insert(grp.mul(d, w));
            }
        }
        if next == sets {
            return (sets, Some(len));
        }
        sets = next;
    }
    (sets, None)
}

/// Closure of `gens` under products in a finite group.
pub fn closure(g: &Group, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut queue: VecDeque<Elem> = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Coordinates of `v` in the rows of `basis` (row-vector convention).
fn coords_in(k: &Field, basis: &Matrix, v: &[gradecat::field::Scalar]) -> Vector {
    let inv = k.invert(basis).expect("homogeneous bases are invertible");
    k.vec_mat(v, &inv, v.len())
}

/// `Some(d)` when `v` is homogeneous of degree `d` for `g`, `None` otherwise.
pub fn homogeneous_degree(
    g: &Grading,
    b: usize,
    c: usize,
    v: &[gradecat::field::Scalar],
) -> Option<Elem> {
    let k = g.category().field();
    let h = g.hom(b, c);
    let cs = coords_in(k, h.basis(), v);
    let degs: BTreeSet<&Elem> = cs
        .iter()
        .zip(h.degrees())
        .filter(|(x, _)| **x != k.zero())
        .map(|(_, d)| d)
        .collect();
    match degs.len() {
        1 => degs.into_iter().next().cloned(),
        _ => None,
    }
}

/// All object maps `φ_b: Γ_X → Γ_Y` such that `(b, s) ↦ (b, φ_b(s))` with the
/// identity on vectors is a functor `B#X → B#Y`, by backtracking over the
/// pairs `(b, s)`. Each map is returned as `result[b][i]`, the image of the
/// `i`-th element of `Γ_X`.
pub fn exhaustive_object_maps(x: &Grading, y: &Grading) -> Vec<Vec<Vec<Elem>>> {
    let cat = x.category();
    let n = cat.num_objects();
    let gx = x.group();
    let gy = y.group();
    let ex = gx.elements().unwrap();
    let ey = gy.elements().unwrap();
    let idx: HashMap<Elem, usize> = ex
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    // constraints: (b, c, d_x, d_y) for each X-homogeneous vector
    let mut cons = Vec::new();
    for b in 0..n {
        for c in 0..n {
            let h = x.hom(b, c);
            for (row, d) in h.basis().iter().zip(h.degrees()) {
                match homogeneous_degree(y, b, c, row) {
                    Some(dy) => cons.push((b, c, d.clone(), dy)),
                    None => return Vec::new(),
                }
            }
        }
    }
    // a vector of degree d is a morphism (b, s) → (c, s·d⁻¹), so it needs
    // φ_c(s·d⁻¹) = φ_b(s)·d_y⁻¹
    // visit slots in smash breadth-first order so each one meets a constraint early
    let mut slots: Vec<(usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    for b in 0..n {
        for i in 0..ex.len() {
            if !seen.insert((b, i)) {
                continue;
            }
            let mut queue = VecDeque::from([(b, i)]);
            while let Some((c, j)) = queue.pop_front() {
                slots.push((c, j));
                for (p, q, d) in steps(x) {
                    if p == c {
                        let next = (q, idx[&gx.mul(&ex[j], &gx.inv(&d))]);
                        if seen.insert(next) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    let mut assign: Vec<Vec<Option<Elem>>> = vec![vec![None; ex.len()]; n];
    let mut out = Vec::new();
    fn consistent(
        assign: &[Vec<Option<Elem>>],
        cons: &[(usize, usize, Elem, Elem)],
        ex: &[Elem],
        idx: &HashMap<Elem, usize>,
        gx: &Group,
        gy: &Group,
    ) -> bool {
        for (b, c, dx, dy) in cons {
            for (i, s) in ex.iter().enumerate() {
                let t = gx.mul(s, &gx.inv(dx));
                if let (Some(hb), Some(hc)) = (&assign[*b][i], &assign[*c][idx[&t]]) {
                    if *hc != gy.mul(hb, &gy.inv(dy)) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(
        k: usize,
        slots: &[(usize, usize)],
        assign: &mut Vec<Vec<Option<Elem>>>,
        out: &mut Vec<Vec<Vec<Elem>>>,
        cons: &[(usize, usize, Elem, Elem)],
        ex: &[Elem],
        ey: &[Elem],
        idx: &HashMap<Elem, usize>,
        gx: &Group,
        gy: &Group,
    ) {
        if k == slots.len() {
            out.push(
                assign
                    .iter()
                    .map(|r| r.iter().map(|e| e.clone().unwrap()).collect())
                    .collect(),
            );
            return;
        }
        let (b, i) = slots[k];
        for t in ey {
            assign[b][i] = Some(t.clone());
            if consistent(assign, cons, ex, idx, gx, gy) {
                go(k + 1, slots, assign, out, cons, ex, ey, idx, gx, gy);
            }
        }
        assign[b][i] = None;
    }
    go(
        0,
        &slots,
        &mut assign,
        &mut out,
        &cons,
        &ex,
        &ey,
        &idx,
        gx,
        gy,
    );
    out
}

/// Object indices `(b, element index)` of the component of `(b0, 1)` in the
/// smash, found by breadth-first search over homogeneous steps.
pub fn smash_component(g: &Grading, b0: usize) -> HashSet<(usize, Elem)> {
    let grp = g.group();
    let st = steps(g);
    let start = (b0, grp.identity());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((b, s)) = queue.pop_front() {
        // forward along degree d: (b, s) → (c, s·d⁻¹); `steps` already
        // contains the reversed edges with inverse degree
        for (x, y, d) in &st {
            if *x == b {
                let next = (*y, grp.mul(&s, &grp.inv(d)));
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Re-associates every composable triple of basis vectors by hand.
pub fn associativity_holds(cat: &FinCategory) -> bool {
    let k = cat.field();
    let n = cat.num_objects();
    for b in 0..n {
        for c in 0..n {
            for d in 0..n {
                for e in 0..n {
                    for f in 0..cat.hom_dim(b, c) {
                        for g in 0..cat.hom_dim(c, d) {
                            for h in 0..cat.hom_dim(d, e) {
                                let gf = cat.compose_basis(b, c, d, f, g);
                                let hg = cat.compose_basis(c, d, e, g, h);
                                let left =
                                    cat.compose(b, d, e, &gf, &k.unit_vector(cat.hom_dim(d, e), h));
                                let right =
                                    cat.compose(b, c, e, &k.unit_vector(cat.hom_dim(b, c), f), &hg);
                                if left != right {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

pub fn label_of(cat: &FinCategory, r: BasisRef) -> String {
    cat.basis_label(r).to_string()
}

/// Finite-group gradings from the fixture module, keyed by name.
pub fn finite_fixture_gradings() -> Vec<(&'static str, Grading)> {
    use gradecat::fixtures as f;
    vec![
        ("kc2_trivial", f::kc2_trivial()),
        ("kc2_z2", f::kc2_z2()),
        ("kc2_c2", f::kc2_c2()),
        ("kc3_z3", f::kc3_z3()),
        ("kc3_c3", f::kc3_c3()),
        ("kronecker_c2_01", f::kronecker_cyclic(2, 0, 1)),
        ("kronecker_c3_01", f::kronecker_cyclic(3, 0, 1)),
        ("kronecker_c3_12", f::kronecker_cyclic(3, 1, 2)),
        ("kronecker_c4_02", f::kronecker_cyclic(4, 0, 2)),
        ("kronecker_c4_13", f::kronecker_cyclic(4, 1, 3)),
        ("kronecker_c6_05", f::kronecker_cyclic(6, 0, 5)),
        ("kronecker_c6_03", f::kronecker_cyclic(6, 0, 3)),
        ("cycle3_c2_001", f::cycle3_cyclic(2, 0, 0, 1)),
        ("cycle3_c3_111", f::cycle3_cyclic(3, 1, 1, 1)),
        ("cycle3_c4_112", f::cycle3_cyclic(4, 1, 1, 2)),
        ("kronecker3_s3", f::kronecker3_s3()),
        ("e3_u_c2", f::e3_u_c2()),
    ]
}

pub fn check_identity_row(k: &Field, m: &Matrix) -> bool {
    *m == k.identity_matrix(m.len())
}
