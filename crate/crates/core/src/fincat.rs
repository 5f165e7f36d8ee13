//! Finite linear categories over an exact field, presented by a basis of each
//! hom-space and the structure constants of composition.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::field::{is_zero_vector, Field, Scalar, Vector};

/// A basis vector of some hom-space: `idx`-th basis element of `hom(src, tgt)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisRef {
    pub src: usize,
    pub tgt: usize,
    pub idx: usize,
}

/// Key of a composition structure constant: `g ∘ f` with `f` the `f`-th basis
/// vector of `hom(b, c)` and `g` the `g`-th basis vector of `hom(c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompKey {
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub f: usize,
    pub g: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    field: Field,
    objects: Vec<String>,
    /// `homs[b * n + c]` lists the basis labels of `hom(b, c)`.
    homs: Vec<Vec<String>>,
    identity: Vec<Vector>,
    /// Explicit structure constants; absent keys compose to zero.
    compose: BTreeMap<CompKey, Vector>,
    labels: HashMap<String, BasisRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryViolation {
    Associativity { h: String, g: String, f: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Centrality { object: String, endo: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectSubset {
    indices: Vec<usize>,
}

impl ObjectSubset {
    pub fn new(cat: &FinCategory, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::domain("object subset must be nonempty"));
        }
        if let Some(&bad) = set.iter().find(|&&i| i >= cat.num_objects()) {
            return Err(Error::domain(format!("object index {bad} out of range")));
        }
        Ok(ObjectSubset {
            indices: set.into_iter().collect(),
        })
    }

    pub fn from_labels<S: AsRef<str>>(cat: &FinCategory, labels: &[S]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| cat.object_index(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        ObjectSubset::new(cat, idx)
    }

    pub fn all(cat: &FinCategory) -> Self {
        ObjectSubset {
            indices: (0..cat.num_objects()).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Position of an ambient object inside the subset.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.indices.binary_search(&i).ok()
    }

    pub fn intersect(&self, other: &ObjectSubset) -> Option<ObjectSubset> {
        let indices: Vec<usize> = self
            .indices
            .iter()
            .copied()
            .filter(|&i| other.contains(i))
            .collect();
        (!indices.is_empty()).then_some(ObjectSubset { indices })
    }
}

/// Which summand of the star a basis vector occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarSide {
    Outgoing,
    Incoming,
}

/// The star at an object: all basis vectors of `hom(b, y)` followed by all of
/// `hom(y, b)`; endomorphisms appear once in each family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub object: usize,
    pub vectors: Vec<(StarSide, BasisRef)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityReport {
    pub convex: bool,
    /// `(f, g)` with `f: d → x` leaving the subset, `g: x → d'` returning and `g∘f ≠ 0`.
    pub witness: Option<(BasisRef, BasisRef)>,
}

impl FinCategory {
    /// Builds a category from raw data after structural checks (lengths,
    /// unique labels, key ranges). Axioms are checked by [`FinCategory::validate`].
    pub fn new(
        field: Field,
        objects: Vec<String>,
        homs: Vec<Vec<String>>,
        identity: Vec<Vector>,
        compose: BTreeMap<CompKey, Vector>,
    ) -> Result<Self> {
        let n = objects.len();
        if n == 0 {
            return Err(Error::domain("a category needs at least one object"));
        }
        let distinct: BTreeSet<&String> = objects.iter().collect();
        if distinct.len() != n {
            return Err(Error::domain("duplicate object labels"));
        }
        if homs.len() != n * n {
            return Err(Error::domain("hom table must have n² entries"));
        }
        let mut labels = HashMap::new();
        for b in 0..n {
            for c in 0..n {
                for (idx, l) in homs[b * n + c].iter().enumerate() {
                    if labels
                        .insert(
                            l.clone(),
                            BasisRef {
                                src: b,
                                tgt: c,
                                idx,
                            },
                        )
                        .is_some()
                    {
                        return Err(Error::domain(format!("basis label {l:?} is used twice")));
                    }
                }
            }
        }
        if identity.len() != n {
            return Err(Error::domain("one identity vector per object is required"));
        }
        for (b, v) in identity.iter().enumerate() {
            if v.len() != homs[b * n + b].len() {
                return Err(Error::domain(format!(
                    "identity of {} has the wrong length",
                    objects[b]
                )));
            }
        }
        for (k, v) in &compose {
            if k.b >= n || k.c >= n || k.d >= n {
                return Err(Error::domain("composition key out of range"));
            }
            if k.f >= homs[k.b * n + k.c].len() || k.g >= homs[k.c * n + k.d].len() {
                return Err(Error::domain(
                    "composition key references a missing basis vector",
                ));
            }
            if v.len() != homs[k.b * n + k.d].len() {
                return Err(Error::domain("composition result has the wrong length"));
            }
        }
        let identity = identity
            .into_iter()
            .map(|v| v.into_iter().map(|x| field.normalize(x)).collect())
            .collect();
        let compose = compose
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().map(|x| field.normalize(x)).collect()))
            .collect();
        Ok(FinCategory {
            field,
            objects,
            homs,
            identity,
            compose,
            labels,
        })
    }

    /// Monomial presentation of a bound quiver: the basis of each hom-space
    /// is the set of allowed paths, and the composite of two paths is their
    /// concatenation when allowed and zero otherwise.
    ///
    /// Paths are arrow-index sequences in traversal order (first arrow first)
    /// and must be closed under taking subpaths. A path `[a, b]` is labelled
    /// `"b.a"`.
    pub fn monomial(
        field: Field,
        objects: Vec<String>,
        arrows: &[(usize, usize, String)],
        paths: &[Vec<usize>],
    ) -> Result<Self> {
        let n = objects.len();
        let mut allowed: BTreeSet<Vec<usize>> = BTreeSet::new();
        for p in paths {
            if p.len() < 2 {
                return Err(Error::domain("listed paths must have length at least two"));
            }
            for w in p.windows(2) {
                if arrows[w[0]].1 != arrows[w[1]].0 {
                    return Err(Error::domain(format!("{p:?} is not a path")));
                }
            }
            allowed.insert(p.clone());
        }
        for p in &allowed {
            for len in 2..p.len() {
                for start in 0..=p.len() - len {
                    if !allowed.contains(&p[start..start + len]) {
                        return Err(Error::domain(format!("subpath of {p:?} is not allowed")));
                    }
                }
            }
        }
        let label = |p: &[usize]| -> String {
            p.iter()
                .rev()
                .map(|&a| arrows[a].2.as_str())
                .collect::<Vec<_>>()
                .join(".")
        };
        // basis per hom-space: identity, arrows, then longer paths
        let mut homs: Vec<Vec<String>> = vec![Vec::new(); n * n];
        let mut basis_paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n * n];
        for (b, obj) in objects.iter().enumerate() {
            homs[b * n + b].push(format!("1{obj}"));
            basis_paths[b * n + b].push(Vec::new());
        }
        let all_paths = (0..arrows.len())
            .map(|a| vec![a])
            .chain(allowed.iter().cloned());
        for p in all_paths {
            let (s, t) = (arrows[p[0]].0, arrows[*p.last().unwrap()].1);
            homs[s * n + t].push(label(&p));
            basis_paths[s * n + t].push(p);
        }
        let identity: Vec<Vector> = (0..n)
            .map(|b| field.unit_vector(homs[b * n + b].len(), 0))
            .collect();
        let mut compose = BTreeMap::new();
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for (fi, fp) in basis_paths[b * n + c].iter().enumerate() {
                        for (gi, gp) in basis_paths[c * n + d].iter().enumerate() {
                            let mut cat = fp.clone();
                            cat.extend(gp);
                            if let Some(pos) = basis_paths[b * n + d].iter().position(|q| *q == cat)
                            {
                                let v = field.unit_vector(homs[b * n + d].len(), pos);
                                compose.insert(
                                    CompKey {
                                        b,
                                        c,
                                        d,
                                        f: fi,
                                        g: gi,
                                    },
                                    v,
                                );
                            }
                        }
                    }
                }
            }
        }
        FinCategory::new(field, objects, homs, identity, compose)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn object_index(&self, label: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::domain(format!("unknown object {label:?}")))
    }

    pub fn hom_labels(&self, b: usize, c: usize) -> &[String] {
        &self.homs[b * self.num_objects() + c]
    }

    pub fn hom_dim(&self, b: usize, c: usize) -> usize {
        self.hom_labels(b, c).len()
    }

    pub fn basis_label(&self, r: BasisRef) -> &str {
        &self.hom_labels(r.src, r.tgt)[r.idx]
    }

    pub fn find_label(&self, label: &str) -> Option<BasisRef> {
        self.labels.get(label).copied()
    }

    pub fn identity(&self, b: usize) -> &Vector {
        &self.identity[b]
    }

    pub fn structure_constants(&self) -> &BTreeMap<CompKey, Vector> {
        &self.compose
    }

    /// All basis vectors, ordered by (source, target, index).
    pub fn basis_refs(&self) -> impl Iterator<Item = BasisRef> + '_ {
        let n = self.num_objects();
        (0..n).flat_map(move |src| {
            (0..n).flat_map(move |tgt| {
                (0..self.hom_dim(src, tgt)).map(move |idx| BasisRef { src, tgt, idx })
            })
        })
    }

    /// `g ∘ f` for basis vectors `f: b → c`, `g: c → d`.
    pub fn compose_basis(&self, b: usize, c: usize, d: usize, f: usize, g: usize) -> Vector {
        self.compose
            .get(&CompKey { b, c, d, f, g })
            .cloned()
            .unwrap_or_else(|| self.field.zero_vector(self.hom_dim(b, d)))
    }

    /// Bilinear composite `g ∘ f` of arbitrary vectors in canonical coordinates.
    pub fn compose(&self, b: usize, c: usize, d: usize, f: &[Scalar], g: &[Scalar]) -> Vector {
        let k = &self.field;
        let mut out = k.zero_vector(self.hom_dim(b, d));
        for (fi, fc) in f.iter().enumerate() {
            if fc.is_zero_scalar() {
                continue;
            }
            for (gi, gc) in g.iter().enumerate() {
                if gc.is_zero_scalar() {
                    continue;
                }
                if let Some(v) = self.compose.get(&CompKey {
                    b,
                    c,
                    d,
                    f: fi,
                    g: gi,
                }) {
                    k.axpy(&mut out, &k.mul(fc, gc), v);
                }
            }
        }
        out
    }

    fn unit(&self, b: usize, c: usize, idx: usize) -> Vector {
        self.field.unit_vector(self.hom_dim(b, c), idx)
    }

    /// Every violated axiom; empty when the presentation is a category.
    pub fn validate(&self) -> Vec<CategoryViolation> {
        let n = self.num_objects();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for fi in 0..self.hom_dim(a, b) {
                            for gi in 0..self.hom_dim(b, c) {
                                let gf = self.compose_basis(a, b, c, fi, gi);
                                for hi in 0..self.hom_dim(c, d) {
                                    let left = self.compose(a, c, d, &gf, &self.unit(c, d, hi));
                                    let hg = self.compose_basis(b, c, d, gi, hi);
                                    let right = self.compose(a, b, d, &self.unit(a, b, fi), &hg);
                                    if left != right {
                                        out.push(CategoryViolation::Associativity {
                                            h: self.hom_labels(c, d)[hi].clone(),
                                            g: self.hom_labels(b, c)[gi].clone(),
                                            f: self.hom_labels(a, b)[fi].clone(),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for b in 0..n {
            for c in 0..n {
                for fi in 0..self.hom_dim(b, c) {
                    let f = self.unit(b, c, fi);
                    let label = self.hom_labels(b, c)[fi].clone();
                    if self.compose(b, c, c, &f, &self.identity[c]) != f {
                        out.push(CategoryViolation::LeftIdentity { f: label.clone() });
                    }
                    if self.compose(b, b, c, &self.identity[b], &f) != f {
                        out.push(CategoryViolation::RightIdentity { f: label.clone() });
                    }
                    if b == c {
                        let left = self.compose(b, b, b, &f, &self.identity[b]);
                        let right = self.compose(b, b, b, &self.identity[b], &f);
                        if left != right {
                            out.push(CategoryViolation::Centrality {
                                object: self.objects[b].clone(),
                                endo: label,
                            });
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

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let n = self.num_objects();
        let mut adj = vec![Vec::new(); n];
        for b in 0..n {
            for c in 0..n {
                if b != c && (self.hom_dim(b, c) > 0 || self.hom_dim(c, b) > 0) {
                    adj[b].push(c);
                }
            }
        }
        adj
    }

    /// Connected components of the undirected object graph, each sorted,
    /// listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_objects();
        let adj = self.neighbours();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn full_subcategory(&self, objs: &ObjectSubset) -> Result<FinCategory> {
        let n = self.num_objects();
        let keep = objs.indices();
        if keep.iter().any(|&i| i >= n) {
            return Err(Error::domain(
                "object subset does not belong to this category",
            ));
        }
        let m = keep.len();
        let mut homs = Vec::with_capacity(m * m);
        for &b in keep {
            for &c in keep {
                homs.push(self.hom_labels(b, c).to_vec());
            }
        }
        let identity = keep.iter().map(|&b| self.identity[b].clone()).collect();
        let compose = self
            .compose
            .iter()
            .filter_map(|(k, v)| {
                Some((
                    CompKey {
                        b: objs.position(k.b)?,
                        c: objs.position(k.c)?,
                        d: objs.position(k.d)?,
                        f: k.f,
                        g: k.g,
                    },
                    v.clone(),
                ))
            })
            .collect();
        let objects = keep.iter().map(|&b| self.objects[b].clone()).collect();
        FinCategory::new(self.field.clone(), objects, homs, identity, compose)
    }

    /// Checks that every out-then-in composite through an object outside
    /// `objs` vanishes.
    pub fn is_convex(&self, objs: &ObjectSubset) -> ConvexityReport {
        let n = self.num_objects();
        for &d in objs.indices() {
            for x in (0..n).filter(|&x| !objs.contains(x)) {
                for &d2 in objs.indices() {
                    for fi in 0..self.hom_dim(d, x) {
                        for gi in 0..self.hom_dim(x, d2) {
                            if !is_zero_vector(&self.compose_basis(d, x, d2, fi, gi)) {
                                return ConvexityReport {
                                    convex: false,
                                    witness: Some((
                                        BasisRef {
                                            src: d,
                                            tgt: x,
                                            idx: fi,
                                        },
                                        BasisRef {
                                            src: x,
                                            tgt: d2,
                                            idx: gi,
                                        },
                                    )),
                                };
                            }
                        }
                    }
                }
            }
        }
        ConvexityReport {
            convex: true,
            witness: None,
        }
    }

    pub fn star(&self, b: usize) -> Star {
        let n = self.num_objects();
        let mut vectors = Vec::new();
        for y in 0..n {
            for idx in 0..self.hom_dim(b, y) {
                vectors.push((
                    StarSide::Outgoing,
                    BasisRef {
                        src: b,
                        tgt: y,
                        idx,
                    },
                ));
            }
        }
        for y in 0..n {
            for idx in 0..self.hom_dim(y, b) {
                vectors.push((
                    StarSide::Incoming,
                    BasisRef {
                        src: y,
                        tgt: b,
                        idx,
                    },
                ));
            }
        }
        Star { object: b, vectors }
    }

    /// Replaces one structure constant; used to build mutation fixtures.
    pub fn with_structure_constant(&self, key: CompKey, value: Vector) -> Result<FinCategory> {
        let mut compose = self.compose.clone();
        compose.insert(key, value);
        FinCategory::new(
            self.field.clone(),
            self.objects.clone(),
            self.homs.clone(),
            self.identity.clone(),
            compose,
        )
    }
}

/// Incremental construction by labels. The first basis vector of each
/// endomorphism space is the identity; identity products are filled in.
#[derive(Debug, Clone)]
pub struct CategoryBuilder {
    field: Field,
    objects: Vec<String>,
    morphisms: Vec<(usize, usize, String)>,
    identities: Vec<String>,
    products: Vec<(String, String, Vec<(String, String)>)>,
}

impl CategoryBuilder {
    pub fn new(field: Field) -> Self {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            morphisms: Vec::new(),
            identities: Vec::new(),
            products: Vec::new(),
        }
    }

    pub fn object(mut self, label: &str, identity: &str) -> Self {
        let i = self.objects.len();
        self.objects.push(label.to_string());
        self.identities.push(identity.to_string());
        self.morphisms.push((i, i, identity.to_string()));
        self
    }

    pub fn morphism(mut self, src: &str, tgt: &str, label: &str) -> Self {
        let s = self
            .objects
            .iter()
            .position(|o| o == src)
            .expect("unknown source object");
        let t = self
            .objects
            .iter()
            .position(|o| o == tgt)
            .expect("unknown target object");
        self.morphisms.push((s, t, label.to_string()));
        self
    }

    /// Declares `g ∘ f = Σ coeff·label`; an empty list declares a zero composite.
    pub fn product(mut self, g: &str, f: &str, result: &[(&str, &str)]) -> Self {
        let result = result
            .iter()
            .map(|(l, c)| (l.to_string(), c.to_string()))
            .collect();
        self.products.push((g.to_string(), f.to_string(), result));
        self
    }

    pub fn build(self) -> Result<FinCategory> {
        let n = self.objects.len();
        let k = &self.field;
        let mut homs: Vec<Vec<String>> = vec![Vec::new(); n * n];
        let mut index: HashMap<String, BasisRef> = HashMap::new();
        for (s, t, l) in &self.morphisms {
            let idx = homs[s * n + t].len();
            homs[s * n + t].push(l.clone());
            index.insert(
                l.clone(),
                BasisRef {
                    src: *s,
                    tgt: *t,
                    idx,
                },
            );
        }
        let dim = |b: usize, c: usize| homs[b * n + c].len();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::domain(format!("unknown basis label {l:?}")))
        };
        let identity: Vec<Vector> = (0..n).map(|b| k.unit_vector(dim(b, b), 0)).collect();
        let mut compose = BTreeMap::new();
        for (s, t, _) in &self.morphisms {
            for idx in 0..dim(*s, *t) {
                let v = k.unit_vector(dim(*s, *t), idx);
                compose.insert(
                    CompKey {
                        b: *s,
                        c: *t,
                        d: *t,
                        f: idx,
                        g: 0,
                    },
                    v.clone(),
                );
                compose.insert(
                    CompKey {
                        b: *s,
                        c: *s,
                        d: *t,
                        f: 0,
                        g: idx,
                    },
                    v,
                );
            }
        }
        for (g, f, result) in &self.products {
            let (gr, fr) = (lookup(g)?, lookup(f)?);
            if fr.tgt != gr.src {
                return Err(Error::domain(format!("{g} ∘ {f} is not composable")));
            }
            let mut v = k.zero_vector(dim(fr.src, gr.tgt));
            for (l, c) in result {
                let r = lookup(l)?;
                if (r.src, r.tgt) != (fr.src, gr.tgt) {
                    return Err(Error::domain(format!(
                        "{l} is not in the hom-space of {g} ∘ {f}"
                    )));
                }
                v[r.idx] = k.add(&v[r.idx], &k.parse(c)?);
            }
            compose.insert(
                CompKey {
                    b: fr.src,
                    c: fr.tgt,
                    d: gr.tgt,
                    f: fr.idx,
                    g: gr.idx,
                },
                v,
            );
        }
        FinCategory::new(self.field, self.objects, homs, identity, compose)
    }
}

trait ZeroCheck {
    fn is_zero_scalar(&self) -> bool;
}

impl ZeroCheck for Scalar {
    fn is_zero_scalar(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

pub fn validate_category(cat: &FinCategory) -> Vec<CategoryViolation> {
    cat.validate()
}

pub fn is_connected_category(cat: &FinCategory) -> bool {
    cat.is_connected()
}

pub fn full_subcategory(cat: &FinCategory, objs: &ObjectSubset) -> Result<FinCategory> {
    cat.full_subcategory(objs)
}

pub fn is_convex(cat: &FinCategory, objs: &ObjectSubset) -> ConvexityReport {
    cat.is_convex(objs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn kc2_over_f2_is_valid() {
        let cat = fixtures::kc2();
        assert!(cat.validate().is_empty());
        assert!(cat.is_connected());
    }

    #[test]
    fn single_object_identity_only() {
        let cat = FinCategory::monomial(Field::Rationals, vec!["a".into()], &[], &[]).unwrap();
        assert!(cat.is_valid());
        assert!(cat.is_connected());
    }

    #[test]
    fn broken_associativity_is_named() {
        // k[x]/x^3 with basis 1, x, x.x; force x ∘ (x.x) = 1
        let cat = FinCategory::monomial(
            Field::Rationals,
            vec!["u".into()],
            &[(0, 0, "x".into())],
            &[vec![0, 0]],
        )
        .unwrap();
        assert!(cat.is_valid());
        let x = cat.find_label("x").unwrap();
        let xx = cat.find_label("x.x").unwrap();
        let key = CompKey {
            b: 0,
            c: 0,
            d: 0,
            f: xx.idx,
            g: x.idx,
        };
        let broken = cat
            .with_structure_constant(key, cat.field().unit_vector(3, 0))
            .unwrap();
        let report = broken.validate();
        assert!(report.contains(&CategoryViolation::Associativity {
            h: "x".into(),
            g: "x".into(),
            f: "x".into()
        }));
    }

    #[test]
    fn left_identity_violation() {
        let cat = fixtures::kc2();
        let x = cat.find_label("x").unwrap();
        let one = cat.find_label("1").unwrap();
        let key = CompKey {
            b: 0,
            c: 0,
            d: 0,
            f: x.idx,
            g: one.idx,
        };
        let broken = cat
            .with_structure_constant(key, cat.field().zero_vector(2))
            .unwrap();
        assert!(broken
            .validate()
            .contains(&CategoryViolation::LeftIdentity { f: "x".into() }));
    }

    #[test]
    fn connectivity() {
        assert!(fixtures::a2().is_connected());
        let two = FinCategory::monomial(Field::Rationals, vec!["a".into(), "b".into()], &[], &[])
            .unwrap();
        assert!(!two.is_connected());
    }

    #[test]
    fn full_subcategories() {
        let k = fixtures::kronecker();
        let all = ObjectSubset::all(&k);
        assert_eq!(k.full_subcategory(&all).unwrap(), k);
        let a = ObjectSubset::from_labels(&k, &["a"]).unwrap();
        let sub = k.full_subcategory(&a).unwrap();
        assert_eq!(sub.num_objects(), 1);
        assert_eq!(sub.hom_labels(0, 0), &["1a".to_string()]);

        let e4 = fixtures::e4();
        let u = ObjectSubset::from_labels(&e4, &["u"]).unwrap();
        let d = e4.full_subcategory(&u).unwrap();
        assert_eq!(d.hom_labels(0, 0), &["1u".to_string(), "x".to_string()]);
        assert!(d.is_valid());
        assert!(ObjectSubset::new(&e4, []).is_err());
    }

    #[test]
    fn convexity() {
        let a3z = fixtures::a3(false);
        let xz = ObjectSubset::from_labels(&a3z, &["x", "z"]).unwrap();
        assert!(a3z.is_convex(&xz).convex);

        let a3 = fixtures::a3(true);
        let report = a3.is_convex(&xz);
        assert!(!report.convex);
        let (f, g) = report.witness.unwrap();
        assert_eq!((a3.basis_label(f), a3.basis_label(g)), ("a", "b"));

        // no incoming morphisms into {x} at all
        let x = ObjectSubset::from_labels(&a3, &["x"]).unwrap();
        assert!(a3.is_convex(&x).convex);
        assert!(a3.is_convex(&ObjectSubset::all(&a3)).convex);
    }

    #[test]
    fn star_dimension() {
        let k = fixtures::kronecker();
        let s = k.star(0);
        // hom(a,a)=1, hom(a,b)=2 outgoing; hom(a,a)=1 incoming
        assert_eq!(s.vectors.len(), 4);
    }
}
