//! Group gradings of finite linear categories, presented by a homogeneous
//! basis of every hom-space together with the degree of each basis vector.
//!
//! Walk convention: a walk `e_k ⋯ e_1` starting at `b` has degree
//! `d_k^± ⋯ d_1^±`, where a step along a basis vector of degree `s` counts
//! `s` and a step against it counts `s⁻¹`. This matches the composition
//! order of morphisms.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar, Vector};
use crate::fincat::{BasisRef, FinCategory, ObjectSubset};
use crate::groups::{Elem, Group, Subgroup};

/// Homogeneous data of one hom-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomGrading {
    /// Rows are the homogeneous basis vectors in canonical coordinates.
    basis: Matrix,
    /// Converts canonical coordinates into homogeneous coordinates.
    inverse: Matrix,
    degrees: Vec<Elem>,
    labels: Vec<String>,
}

impl HomGrading {
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn degrees(&self) -> &[Elem] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_canonical(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| {
                if i == j {
                    *x == Scalar::from_integer(1.into())
                } else {
                    *x == Scalar::from_integer(0.into())
                }
            })
        })
    }
}

#[derive(Debug, Clone)]
pub struct Grading {
    category: Arc<FinCategory>,
    group: Group,
    homs: Vec<HomGrading>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingViolation {
    /// `g ∘ f` has a nonzero coefficient on `target`, whose degree is not `deg g · deg f`.
    Composite {
        f: String,
        g: String,
        target: String,
        expected: String,
        found: String,
    },
    /// The identity of `object` has a component of nontrivial degree.
    NonHomogeneousIdentity { object: String, component: String },
}

/// One homogeneous basis vector seen as an edge of the walk graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkEdge {
    pub basis: BasisRef,
    pub degree: Elem,
}

#[derive(Debug, Clone)]
pub struct WalkGraph {
    pub num_vertices: usize,
    pub edges: Vec<WalkEdge>,
}

/// A family of group elements indexed by objects, e.g. `(a_b)` or the tree
/// walk degrees `(v_b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationFamily {
    values: Vec<Elem>,
    base: usize,
}

impl ConjugationFamily {
    pub fn new(values: Vec<Elem>, base: usize) -> Self {
        ConjugationFamily { values, base }
    }

    pub fn constant(n: usize, value: Elem, base: usize) -> Self {
        ConjugationFamily {
            values: vec![value; n],
            base,
        }
    }

    pub fn get(&self, b: usize) -> &Elem {
        &self.values[b]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn base_value(&self) -> &Elem {
        &self.values[self.base]
    }

    pub fn inverse(&self, group: &Group) -> ConjugationFamily {
        ConjugationFamily {
            values: self.values.iter().map(|x| group.inv(x)).collect(),
            base: self.base,
        }
    }

    /// Pointwise product `(a_b · c_b)`.
    pub fn times(&self, other: &ConjugationFamily, group: &Group) -> ConjugationFamily {
        ConjugationFamily {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, c)| group.mul(a, c))
                .collect(),
            base: self.base,
        }
    }
}

/// `representative · subgroup`
#[derive(Debug, Clone)]
pub struct WalkCoset {
    pub representative: Elem,
    pub subgroup: Subgroup,
}

impl WalkCoset {
    pub fn contains(&self, x: &Elem) -> bool {
        let g = self.subgroup.ambient();
        g.contains(x)
            && self
                .subgroup
                .contains(&g.mul(&g.inv(&self.representative), x))
    }

    /// Elements in the group's order, for finite groups.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let g = self.subgroup.ambient();
        let mut out: Vec<Elem> = self
            .subgroup
            .elements()?
            .iter()
            .map(|h| g.mul(&self.representative, h))
            .collect();
        out.sort();
        Some(out)
    }
}

/// Outcome of extending a grading of a full convex subcategory by trivial degrees.
#[derive(Debug, Clone)]
pub enum Extension {
    Extended(Grading),
    /// The candidate failed validation; every offending composite is listed.
    Diagnostic(Vec<GradingViolation>),
}

/// A spanning tree of the walk graph rooted at `root`, with tree walk degrees.
#[derive(Debug, Clone)]
pub struct WalkTree {
    pub root: usize,
    pub degrees: Vec<Option<Elem>>,
    pub tree_edge: Vec<bool>,
}

fn combination_label(field: &crate::field::Field, row: &[Scalar], labels: &[String]) -> String {
    let one = Scalar::from_integer(1.into());
    let mut out = String::new();
    for (c, l) in row.iter().zip(labels) {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let coeff = field.format(c);
        let neg = coeff.starts_with('-');
        if !out.is_empty() {
            out.push(if neg { '-' } else { '+' });
        } else if neg {
            out.push('-');
        }
        let abs = coeff.trim_start_matches('-');
        if *c != one && abs != "1" {
            out.push_str(abs);
            out.push('*');
        }
        out.push_str(l);
    }
    out
}

impl Grading {
    /// Builds a grading. `basis[b*n+c]` is `None` for the canonical basis of
    /// `hom(b, c)`; otherwise its rows are the homogeneous vectors.
    pub fn new(
        category: Arc<FinCategory>,
        group: Group,
        basis: Vec<Option<Matrix>>,
        degrees: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        let n = category.num_objects();
        if basis.len() != n * n || degrees.len() != n * n {
            return Err(Error::MalformedGrading(
                "one entry per ordered object pair is required".into(),
            ));
        }
        let field = category.field().clone();
        let mut homs = Vec::with_capacity(n * n);
        for b in 0..n {
            for c in 0..n {
                let dim = category.hom_dim(b, c);
                let key = format!("{}->{}", category.object_label(b), category.object_label(c));
                let rows = match &basis[b * n + c] {
                    Some(m) => m
                        .iter()
                        .map(|r| r.iter().map(|x| field.normalize(x.clone())).collect())
                        .collect(),
                    None => field.identity_matrix(dim),
                };
                if rows.len() != dim || rows.iter().any(|r: &Vector| r.len() != dim) {
                    return Err(Error::MalformedGrading(format!(
                        "basis change for {key} is not {dim}×{dim}"
                    )));
                }
                let inverse = field.invert(&rows).ok_or_else(|| {
                    Error::MalformedGrading(format!("basis change for {key} is not invertible"))
                })?;
                let degs = degrees[b * n + c].clone();
                if degs.len() != dim {
                    return Err(Error::MalformedGrading(format!(
                        "{key} needs {dim} degrees, got {}",
                        degs.len()
                    )));
                }
                for d in &degs {
                    if !group.contains(d) {
                        return Err(Error::MalformedGrading(format!(
                            "degree {d:?} in {key} is not a group element"
                        )));
                    }
                }
                let canon = category.hom_labels(b, c);
                let labels = rows
                    .iter()
                    .map(|r| combination_label(&field, r, canon))
                    .collect();
                homs.push(HomGrading {
                    basis: rows,
                    inverse,
                    degrees: degs,
                    labels,
                });
            }
        }
        Ok(Grading {
            category,
            group,
            homs,
        })
    }

    pub fn with_canonical_basis(
        category: Arc<FinCategory>,
        group: Group,
        degrees: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        let n = category.num_objects();
        Grading::new(category, group, vec![None; n * n], degrees)
    }

    /// Every basis vector in degree 1 over the trivial group.
    pub fn trivial(category: Arc<FinCategory>) -> Self {
        let group = Group::trivial();
        let n = category.num_objects();
        let degrees = (0..n * n)
            .map(|k| vec![group.identity(); category.hom_dim(k / n, k % n)])
            .collect();
        Grading::with_canonical_basis(category, group, degrees)
            .expect("trivial grading is well formed")
    }

    /// Assigns degrees to canonical basis vectors by label; unnamed vectors
    /// (identities in particular) get degree 1.
    pub fn from_label_degrees(
        category: Arc<FinCategory>,
        group: Group,
        degrees: &[(&str, Elem)],
    ) -> Result<Self> {
        let n = category.num_objects();
        let mut degs: Vec<Vec<Elem>> = (0..n * n)
            .map(|k| vec![group.identity(); category.hom_dim(k / n, k % n)])
            .collect();
        for (label, d) in degrees {
            let r = category
                .find_label(label)
                .ok_or_else(|| Error::domain(format!("unknown basis label {label:?}")))?;
            degs[r.src * n + r.tgt][r.idx] = d.clone();
        }
        Grading::with_canonical_basis(category, group, degs)
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn hom(&self, b: usize, c: usize) -> &HomGrading {
        &self.homs[b * self.category.num_objects() + c]
    }

    pub fn degree(&self, r: BasisRef) -> &Elem {
        &self.hom(r.src, r.tgt).degrees[r.idx]
    }

    pub fn label(&self, r: BasisRef) -> &str {
        &self.hom(r.src, r.tgt).labels[r.idx]
    }

    pub fn homogeneous_vector(&self, r: BasisRef) -> &Vector {
        &self.hom(r.src, r.tgt).basis[r.idx]
    }

    /// Coordinates over the homogeneous basis of `hom(b, c)`.
    pub fn to_homogeneous(&self, b: usize, c: usize, v: &[Scalar]) -> Vector {
        let h = self.hom(b, c);
        self.category.field().vec_mat(v, &h.inverse, h.basis.len())
    }

    pub fn homogeneous_refs(&self) -> impl Iterator<Item = BasisRef> + '_ {
        self.category.basis_refs()
    }

    /// Same category and group elements, same homogeneous bases and degrees.
    pub fn same_as(&self, other: &Grading) -> bool {
        (Arc::ptr_eq(&self.category, &other.category) || *self.category == *other.category)
            && self.group.same_elements(&other.group)
            && self.homs == other.homs
    }

    /// The same homogeneous data viewed over another group containing every degree.
    pub fn reinterpret(&self, group: Group) -> Result<Grading> {
        for h in &self.homs {
            for d in &h.degrees {
                if !group.contains(d) {
                    return Err(Error::Invariant(format!(
                        "degree {} lies outside the target group",
                        self.group.fmt_elem(d)
                    )));
                }
            }
        }
        Ok(Grading {
            category: self.category.clone(),
            group,
            homs: self.homs.clone(),
        })
    }

    /// Every composite-support violation and every non-homogeneous identity.
    pub fn validate(&self) -> Vec<GradingViolation> {
        let cat = &self.category;
        let k = cat.field();
        let g = &self.group;
        let n = cat.num_objects();
        let mut out = Vec::new();
        for b in 0..n {
            let id = self.to_homogeneous(b, b, cat.identity(b));
            let h = self.hom(b, b);
            for (i, c) in id.iter().enumerate() {
                if !num_traits::Zero::is_zero(c) && h.degrees[i] != g.identity() {
                    out.push(GradingViolation::NonHomogeneousIdentity {
                        object: cat.object_label(b).to_string(),
                        component: h.labels[i].clone(),
                    });
                }
            }
        }
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (hf, hg, hgf) = (self.hom(b, c), self.hom(c, d), self.hom(b, d));
                    for (fi, fv) in hf.basis.iter().enumerate() {
                        for (gi, gv) in hg.basis.iter().enumerate() {
                            let comp = cat.compose(b, c, d, fv, gv);
                            if comp.iter().all(num_traits::Zero::is_zero) {
                                continue;
                            }
                            let coords = k.vec_mat(&comp, &hgf.inverse, hgf.basis.len());
                            let expected = g.mul(&hg.degrees[gi], &hf.degrees[fi]);
                            for (ti, x) in coords.iter().enumerate() {
                                if !num_traits::Zero::is_zero(x) && hgf.degrees[ti] != expected {
                                    out.push(GradingViolation::Composite {
                                        f: hf.labels[fi].clone(),
                                        g: hg.labels[gi].clone(),
                                        target: hgf.labels[ti].clone(),
                                        expected: g.fmt_elem(&expected),
                                        found: g.fmt_elem(&hgf.degrees[ti]),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn walk_graph(&self) -> WalkGraph {
        let edges = self
            .homogeneous_refs()
            .map(|r| WalkEdge {
                basis: r,
                degree: self.degree(r).clone(),
            })
            .collect();
        WalkGraph {
            num_vertices: self.category.num_objects(),
            edges,
        }
    }

    /// Breadth-first spanning tree of the walk graph. With a seed the tree is
    /// depth-first instead, exploring incident edges in shuffled order.
    pub fn walk_tree(&self, root: usize, seed: Option<u64>) -> Result<WalkTree> {
        let n = self.category.num_objects();
        if root >= n {
            return Err(Error::domain(format!("object index {root} out of range")));
        }
        let graph = self.walk_graph();
        let g = &self.group;
        // incidence: (edge index, forward?)
        let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for (i, e) in graph.edges.iter().enumerate() {
            incident[e.basis.src].push((i, true));
            if e.basis.src != e.basis.tgt {
                incident[e.basis.tgt].push((i, false));
            }
        }
        if let Some(seed) = seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for inc in &mut incident {
                inc.shuffle(&mut rng);
            }
        }
        let mut degrees: Vec<Option<Elem>> = vec![None; n];
        let mut tree_edge = vec![false; graph.edges.len()];
        degrees[root] = Some(g.identity());
        let step = |ei: usize, forward: bool, vx: &Elem| {
            let e = &graph.edges[ei];
            if forward {
                (e.basis.tgt, g.mul(&e.degree, vx))
            } else {
                (e.basis.src, g.mul(&g.inv(&e.degree), vx))
            }
        };
        if seed.is_none() {
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let vx = degrees[x].clone().unwrap();
                for &(ei, forward) in &incident[x] {
                    let (y, vy) = step(ei, forward, &vx);
                    if degrees[y].is_none() {
                        degrees[y] = Some(vy);
                        tree_edge[ei] = true;
                        queue.push_back(y);
                    }
                }
            }
        } else {
            // depth first, so that e.g. an oriented cycle gets a path as its tree
            let mut stack = vec![(root, 0usize)];
            while let Some((x, next)) = stack.pop() {
                if next >= incident[x].len() {
                    continue;
                }
                stack.push((x, next + 1));
                let (ei, forward) = incident[x][next];
                let vx = degrees[x].clone().unwrap();
                let (y, vy) = step(ei, forward, &vx);
                if degrees[y].is_none() {
                    degrees[y] = Some(vy);
                    tree_edge[ei] = true;
                    stack.push((y, 0));
                }
            }
        }
        Ok(WalkTree {
            root,
            degrees,
            tree_edge,
        })
    }

    /// `Γ_{b0}` together with the tree walk degrees `v_b` (walks from `b0` to `b`).
    pub fn walk_group(&self, b0: usize) -> Result<(Subgroup, ConjugationFamily)> {
        self.walk_group_seeded(b0, None)
    }

    pub fn walk_group_seeded(
        &self,
        b0: usize,
        seed: Option<u64>,
    ) -> Result<(Subgroup, ConjugationFamily)> {
        let tree = self.walk_tree(b0, seed)?;
        let g = &self.group;
        if tree.degrees.iter().any(Option::is_none) {
            return Err(Error::domain("the category is not connected"));
        }
        let v: Vec<Elem> = tree.degrees.into_iter().map(Option::unwrap).collect();
        let graph = self.walk_graph();
        let gens: Vec<Elem> = graph
            .edges
            .iter()
            .zip(&tree.tree_edge)
            .filter(|(_, t)| !**t)
            .map(|(e, _)| g.mul(&g.mul(&g.inv(&v[e.basis.tgt]), &e.degree), &v[e.basis.src]))
            .collect();
        let sub = Subgroup::generated(g, &gens)?;
        Ok((sub, ConjugationFamily::new(v, b0)))
    }

    /// All degrees of homogeneous walks from `b1` to `b2`, as `v_{b2} · Γ_{b1}`.
    pub fn walk_degree_coset(&self, b1: usize, b2: usize) -> Result<WalkCoset> {
        let (sub, v) = self.walk_group(b1)?;
        if b2 >= self.category.num_objects() {
            return Err(Error::domain(format!("object index {b2} out of range")));
        }
        let g = &self.group;
        Ok(WalkCoset {
            representative: g.mul(v.get(b2), &g.inv(v.get(b1))),
            subgroup: sub,
        })
    }

    pub fn is_connected_grading(&self, b0: usize) -> Result<bool> {
        Ok(self.walk_group(b0)?.0.is_whole())
    }

    /// The grading of the full subcategory on `objs`, same group.
    pub fn restrict(&self, objs: &ObjectSubset) -> Result<Grading> {
        let sub = Arc::new(self.category.full_subcategory(objs)?);
        let mut homs = Vec::new();
        for &b in objs.indices() {
            for &c in objs.indices() {
                homs.push(self.hom(b, c).clone());
            }
        }
        Ok(Grading {
            category: sub,
            group: self.group.clone(),
            homs,
        })
    }

    /// `ᵃZ`: a vector of degree `t` from `b` to `c` gets degree `a_c⁻¹ · t · a_b`.
    pub fn conjugate(&self, a: &ConjugationFamily) -> Result<Grading> {
        let n = self.category.num_objects();
        if a.values().len() != n {
            return Err(Error::domain("conjugation family must be total on objects"));
        }
        let g = &self.group;
        for x in a.values() {
            g.check(x)?;
        }
        let mut homs = self.homs.clone();
        for b in 0..n {
            for c in 0..n {
                let h = &mut homs[b * n + c];
                for d in h.degrees.iter_mut() {
                    *d = g.mul(&g.mul(&g.inv(a.get(c)), d), a.get(b));
                }
            }
        }
        Ok(Grading {
            category: self.category.clone(),
            group: self.group.clone(),
            homs,
        })
    }

    /// Connected grading whose smash is the component of `(b0, 1)`:
    /// conjugate by the tree walk degrees and restrict the group to `Γ_{b0}`.
    pub fn base_component(&self, b0: usize) -> Result<(ConjugationFamily, Grading)> {
        self.base_component_seeded(b0, None)
    }

    pub fn base_component_seeded(
        &self,
        b0: usize,
        seed: Option<u64>,
    ) -> Result<(ConjugationFamily, Grading)> {
        let (sub, v) = self.walk_group_seeded(b0, seed)?;
        let conj = self.conjugate(&v)?;
        let out = conj.reinterpret(sub.as_group())?;
        Ok((v, out))
    }
}

pub fn validate_grading(g: &Grading) -> Vec<GradingViolation> {
    g.validate()
}

pub fn walk_group(g: &Grading, b0: usize) -> Result<(Subgroup, ConjugationFamily)> {
    g.walk_group(b0)
}

pub fn walk_degree_coset(g: &Grading, b1: usize, b2: usize) -> Result<WalkCoset> {
    g.walk_degree_coset(b1, b2)
}

pub fn is_connected_grading(g: &Grading, b0: usize) -> Result<bool> {
    g.is_connected_grading(b0)
}

pub fn restrict_grading(g: &Grading, objs: &ObjectSubset) -> Result<Grading> {
    g.restrict(objs)
}

pub fn conjugate_grading(g: &Grading, a: &ConjugationFamily) -> Result<Grading> {
    g.conjugate(a)
}

pub fn base_component_grading(g: &Grading, b0: usize) -> Result<(ConjugationFamily, Grading)> {
    g.base_component(b0)
}

/// Extends a connected grading of the full convex subcategory on `objs` to
/// `cat`, giving every hom-space with an endpoint outside `objs` its
/// canonical basis in degree 1. The candidate is validated, not assumed.
pub fn extend_trivial(
    gd: &Grading,
    cat: &Arc<FinCategory>,
    objs: &ObjectSubset,
) -> Result<Extension> {
    let sub = cat.full_subcategory(objs)?;
    if sub != **gd.category() {
        return Err(Error::domain(
            "grading is not defined on the full subcategory of these objects",
        ));
    }
    if !cat.is_connected() || !sub.is_connected() {
        return Err(Error::Precondition(
            "category and subcategory must be connected".into(),
        ));
    }
    let report = cat.is_convex(objs);
    if let Some((f, g)) = report.witness {
        return Err(Error::Precondition(format!(
            "subcategory is not convex: {} ∘ {} ≠ 0",
            cat.basis_label(g),
            cat.basis_label(f)
        )));
    }
    let base_d = 0;
    if !gd.is_connected_grading(base_d)? {
        return Err(Error::Precondition(
            "grading of the subcategory is not connected".into(),
        ));
    }
    let n = cat.num_objects();
    let group = gd.group().clone();
    let mut basis = Vec::with_capacity(n * n);
    let mut degrees = Vec::with_capacity(n * n);
    for b in 0..n {
        for c in 0..n {
            match (objs.position(b), objs.position(c)) {
                (Some(pb), Some(pc)) => {
                    let h = gd.hom(pb, pc);
                    basis.push(Some(h.basis.clone()));
                    degrees.push(h.degrees.clone());
                }
                _ => {
                    basis.push(None);
                    degrees.push(vec![group.identity(); cat.hom_dim(b, c)]);
                }
            }
        }
    }
    let candidate = Grading::new(cat.clone(), group, basis, degrees)?;
    let violations = candidate.validate();
    if !violations.is_empty() {
        return Ok(Extension::Diagnostic(violations));
    }
    if !candidate.is_connected_grading(objs.indices()[0])? {
        return Err(Error::Invariant(
            "extension of a connected grading is not connected".into(),
        ));
    }
    Ok(Extension::Extended(candidate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z(n: i64) -> Elem {
        Elem::Vec(vec![n])
    }

    #[test]
    fn trivial_grading_is_valid_and_connected() {
        for cat in [fixtures::kc2(), fixtures::kronecker(), fixtures::e3()] {
            let g = Grading::trivial(Arc::new(cat));
            assert!(g.validate().is_empty());
            assert!(g.is_connected_grading(0).unwrap());
        }
    }

    #[test]
    fn kc2_z_grading_is_valid() {
        let g = fixtures::kc2_z();
        assert!(g.validate().is_empty());
        let (sub, v) = g.walk_group(0).unwrap();
        assert!(sub.is_whole());
        assert_eq!(v.values(), &[z(0)]);
    }

    #[test]
    fn e3_with_degree_on_t_is_invalid() {
        let cat = Arc::new(fixtures::e3());
        let g = Grading::from_label_degrees(cat, Group::integers(), &[("t", z(1))]).unwrap();
        let report = g.validate();
        assert!(report.iter().any(|v| matches!(
            v,
            GradingViolation::Composite { f, g, target, expected, found }
                if f == "t" && g == "f" && target == "f" && expected == "1" && found == "0"
        )));
    }

    #[test]
    fn singular_basis_change_is_malformed() {
        let cat = Arc::new(fixtures::kc2());
        let k = cat.field().clone();
        let singular = vec![vec![k.one(), k.one()], vec![k.one(), k.one()]];
        let err = Grading::new(
            cat,
            Group::cyclic(2),
            vec![Some(singular)],
            vec![vec![z(0), z(1)]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedGrading(_)));
    }

    #[test]
    fn kronecker_walk_groups() {
        let g1 = fixtures::kronecker_z(0, 1);
        let (sub, _) = g1.walk_group(0).unwrap();
        assert!(sub.is_whole());
        let g2 = fixtures::kronecker_z(0, 2);
        let (sub, _) = g2.walk_group(0).unwrap();
        assert_eq!(sub.lattice().unwrap(), &vec![vec![2]]);
        assert!(!g2.is_connected_grading(0).unwrap());
    }

    #[test]
    fn cosets_in_kronecker() {
        let g2 = fixtures::kronecker_z(0, 2);
        let c = g2.walk_degree_coset(0, 1).unwrap();
        assert!(c.contains(&z(4)) && c.contains(&z(-2)) && !c.contains(&z(1)));
        let same = g2.walk_degree_coset(0, 0).unwrap();
        assert_eq!(same.representative, z(0));
        let g1 = fixtures::kronecker_z(0, 1);
        let c = g1.walk_degree_coset(0, 1).unwrap();
        assert!(c.subgroup.is_whole());
    }

    #[test]
    fn walk_group_on_disconnected_category_is_domain_error() {
        let cat = FinCategory::monomial(
            crate::field::Field::Rationals,
            vec!["a".into(), "b".into()],
            &[],
            &[],
        )
        .unwrap();
        let g = Grading::trivial(Arc::new(cat));
        assert!(matches!(g.walk_group(0), Err(Error::Domain(_))));
    }

    #[test]
    fn connected_c2_grading_of_kc2() {
        assert!(fixtures::kc2_c2().is_connected_grading(0).unwrap());
        assert!(fixtures::kc2_c2().validate().is_empty());
    }

    #[test]
    fn restriction() {
        let g = fixtures::kc2_z();
        let all = ObjectSubset::all(g.category());
        assert!(g.restrict(&all).unwrap().same_as(&g));

        let e4 = fixtures::e4_z();
        let u = ObjectSubset::from_labels(e4.category(), &["u"]).unwrap();
        let r = e4.restrict(&u).unwrap();
        assert_eq!(r.hom(0, 0).degrees(), &[z(0), z(1)]);
        assert!(r.validate().is_empty());

        let k = fixtures::kronecker_z(0, 1);
        let a = ObjectSubset::from_labels(k.category(), &["a"]).unwrap();
        let r = k.restrict(&a).unwrap();
        assert_eq!(r.hom(0, 0).degrees(), &[z(0)]);
        assert!(!r.is_connected_grading(0).unwrap());
    }

    #[test]
    fn conjugation() {
        let k = fixtures::kronecker_z(0, 1);
        let a = ConjugationFamily::new(vec![z(0), z(1)], 0);
        let c = k.conjugate(&a).unwrap();
        // alpha: 0 -> -1 + 0 + 0, beta: 1 -> -1 + 1 + 0
        assert_eq!(c.hom(0, 1).degrees(), &[z(-1), z(0)]);
        let back = c.conjugate(&a.inverse(k.group())).unwrap();
        assert!(back.same_as(&k));
        let id = ConjugationFamily::constant(2, z(0), 0);
        assert!(k.conjugate(&id).unwrap().same_as(&k));
    }

    #[test]
    fn base_component_of_kronecker_even() {
        let g = fixtures::kronecker_z(0, 2);
        let (v, comp) = g.base_component(0).unwrap();
        assert_eq!(v.values(), &[z(0), z(0)]);
        assert_eq!(comp.hom(0, 1).degrees(), &[z(0), z(2)]);
        assert!(comp.is_connected_grading(0).unwrap());
        assert!(!comp.group().same_elements(g.group()));
    }

    #[test]
    fn base_component_of_a_single_arrow() {
        let cat = Arc::new(fixtures::a2());
        let g = Grading::from_label_degrees(cat, Group::integers(), &[("f", z(5))]).unwrap();
        let (v, comp) = g.base_component(0).unwrap();
        assert_eq!(v.get(1), &z(5));
        assert!(comp.group().is_trivial());
        assert_eq!(comp.hom(0, 1).degrees(), &[z(0)]);
    }

    #[test]
    fn extension_dichotomy() {
        let e4 = Arc::new(fixtures::e4());
        let u = ObjectSubset::from_labels(&e4, &["u"]).unwrap();
        let gd = fixtures::kc2_z_on(e4.full_subcategory(&u).unwrap());
        match extend_trivial(&gd, &e4, &u).unwrap() {
            Extension::Extended(g) => {
                assert!(g.is_valid());
                assert!(g.is_connected_grading(0).unwrap());
                assert!(g.restrict(&u).unwrap().same_as(&gd));
            }
            Extension::Diagnostic(d) => panic!("unexpected diagnostic {d:?}"),
        }

        let e3 = Arc::new(fixtures::e3());
        let gd = fixtures::e3_u_c2();
        match extend_trivial(&gd, &e3, &u).unwrap() {
            Extension::Diagnostic(d) => assert!(d.iter().any(|v| matches!(
                v,
                GradingViolation::Composite { f, g, .. } if f == "t" && g == "f"
            ))),
            Extension::Extended(_) => panic!("extension should fail"),
        }

        let triv = Grading::trivial(Arc::new(e4.full_subcategory(&u).unwrap()));
        assert!(matches!(
            extend_trivial(&triv, &e4, &u).unwrap(),
            Extension::Extended(_)
        ));
    }

    #[test]
    fn extension_requires_convexity() {
        let a3 = Arc::new(fixtures::a3(true));
        let xz = ObjectSubset::from_labels(&a3, &["x", "z"]).unwrap();
        let gd = Grading::trivial(Arc::new(a3.full_subcategory(&xz).unwrap()));
        // {x, z} is not connected in A3 either; both preconditions fail
        assert!(matches!(
            extend_trivial(&gd, &a3, &xz),
            Err(Error::Precondition(_))
        ));
    }
}
