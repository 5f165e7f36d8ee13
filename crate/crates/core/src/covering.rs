//! Smash-product coverings `B#X → B`, their verification, deck actions, and
//! morphisms between smash coverings of the same base.
//!
//! A homogeneous vector of degree `d` in `hom(b, c)` is a morphism
//! `(b, s) → (c, s·d⁻¹)` of the smash. A morphism of smash coverings with
//! `J = 1` is recorded as `H(b, s) = (b, λ(s)·h_b)`: every such morphism has
//! this form with `λ = λ_H` and `h_b = H_b(1)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_zero_vector, Matrix, Scalar, Vector};
use crate::fincat::{BasisRef, CompKey, FinCategory, ObjectSubset, StarSide};
use crate::grading::{ConjugationFamily, Grading};
use crate::groups::{Elem, Group, GroupHom};
use crate::intmat;

/// A linear functor `F: source → target` given on objects and, for every
/// source hom-space, by the images of its basis vectors.
#[derive(Debug, Clone)]
pub struct CoveringFunctor {
    pub source: FinCategory,
    pub target: Arc<FinCategory>,
    pub objects: Vec<usize>,
    /// `maps[x * n + y]`: row `i` is the image of the `i`-th basis vector of
    /// `hom(x, y)` in canonical coordinates of `hom(F x, F y)`.
    pub maps: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFailure {
    pub base: String,
    pub fibre: String,
    pub side: StarSide,
}

impl CoveringFunctor {
    fn n(&self) -> usize {
        self.source.num_objects()
    }

    pub fn image(&self, x: usize, y: usize, i: usize) -> &Vector {
        &self.maps[x * self.n() + y][i]
    }

    pub fn apply(&self, x: usize, y: usize, v: &[Scalar]) -> Vector {
        let (b, c) = (self.objects[x], self.objects[y]);
        self.target
            .field()
            .vec_mat(v, &self.maps[x * self.n() + y], self.target.hom_dim(b, c))
    }

    /// Composition and identities are preserved; returns the offending
    /// source basis labels.
    pub fn verify_functor(&self) -> Vec<String> {
        let n = self.n();
        let src = &self.source;
        let tgt = &self.target;
        let mut out = Vec::new();
        for x in 0..n {
            let img = self.apply(x, x, src.identity(x));
            if img != *tgt.identity(self.objects[x]) {
                out.push(format!("identity of {}", src.object_label(x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (b, c, d) = (self.objects[x], self.objects[y], self.objects[z]);
                    for fi in 0..src.hom_dim(x, y) {
                        for gi in 0..src.hom_dim(y, z) {
                            let lhs = self.apply(x, z, &src.compose_basis(x, y, z, fi, gi));
                            let rhs =
                                tgt.compose(b, c, d, self.image(x, y, fi), self.image(y, z, gi));
                            if lhs != rhs {
                                out.push(format!(
                                    "{} ∘ {}",
                                    src.hom_labels(y, z)[gi],
                                    src.hom_labels(x, y)[fi]
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// For every source object `x` over `b`, the induced maps from the
    /// outgoing and incoming halves of the star at `x` to those at `b` must
    /// be bijective.
    pub fn verify_star_isomorphism(&self) -> Vec<StarFailure> {
        let n = self.n();
        let k = self.target.field();
        let m = self.target.num_objects();
        let mut out = Vec::new();
        for x in 0..n {
            let b = self.objects[x];
            for side in [StarSide::Outgoing, StarSide::Incoming] {
                let dim = |c: usize| match side {
                    StarSide::Outgoing => self.target.hom_dim(b, c),
                    StarSide::Incoming => self.target.hom_dim(c, b),
                };
                let offsets: Vec<usize> = (0..m)
                    .scan(0, |acc, c| {
                        let o = *acc;
                        *acc += dim(c);
                        Some(o)
                    })
                    .collect();
                let cols: usize = (0..m).map(dim).sum();
                let mut rows: Matrix = Vec::new();
                for y in 0..n {
                    let (p, q) = match side {
                        StarSide::Outgoing => (x, y),
                        StarSide::Incoming => (y, x),
                    };
                    let c = self.objects[y];
                    for i in 0..self.source.hom_dim(p, q) {
                        let mut row = k.zero_vector(cols);
                        for (j, v) in self.image(p, q, i).iter().enumerate() {
                            row[offsets[c] + j] = v.clone();
                        }
                        rows.push(row);
                    }
                }
                if rows.len() != cols || k.rank(&rows) != cols {
                    out.push(StarFailure {
                        base: self.target.object_label(b).to_string(),
                        fibre: self.source.object_label(x).to_string(),
                        side,
                    });
                }
            }
        }
        out
    }

    /// Restriction to the full subcategory of the source on `objs`.
    pub fn restrict(&self, objs: &ObjectSubset) -> Result<CoveringFunctor> {
        let n = self.n();
        let source = self.source.full_subcategory(objs)?;
        let idx = objs.indices();
        let mut maps = Vec::with_capacity(idx.len() * idx.len());
        for &x in idx {
            for &y in idx {
                maps.push(self.maps[x * n + y].clone());
            }
        }
        Ok(CoveringFunctor {
            source,
            target: self.target.clone(),
            objects: idx.iter().map(|&x| self.objects[x]).collect(),
            maps,
        })
    }

    /// Checks that `objmap` extends to an isomorphism of coverings over the
    /// same base: objects biject over the same base objects and each
    /// hom-space basis is carried to a basis with the same images.
    pub fn is_isomorphic_over(
        &self,
        other: &CoveringFunctor,
        objmap: &[usize],
    ) -> std::result::Result<(), String> {
        let n = self.n();
        if *self.target != *other.target {
            return Err("coverings of different bases".into());
        }
        if other.n() != n || objmap.len() != n {
            return Err(format!("object counts differ: {} and {}", n, other.n()));
        }
        let mut hit = vec![false; n];
        for (x, &y) in objmap.iter().enumerate() {
            if y >= n || hit[y] {
                return Err(format!(
                    "object map is not a bijection at {}",
                    self.source.object_label(x)
                ));
            }
            hit[y] = true;
            if self.objects[x] != other.objects[y] {
                return Err(format!(
                    "{} and {} lie over different objects",
                    self.source.object_label(x),
                    other.source.object_label(y)
                ));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let mine = &self.maps[x * n + y];
                let theirs = &other.maps[objmap[x] * n + objmap[y]];
                if mine.len() != theirs.len() {
                    return Err(format!(
                        "hom({}, {}) has dimension {} but its image has dimension {}",
                        self.source.object_label(x),
                        self.source.object_label(y),
                        mine.len(),
                        theirs.len()
                    ));
                }
                if mine.iter().any(|r| !theirs.contains(r)) {
                    return Err(format!(
                        "hom({}, {}) is not carried onto a basis of the image hom-space",
                        self.source.object_label(x),
                        self.source.object_label(y)
                    ));
                }
            }
        }
        for (name, f) in [("first", self), ("second", other)] {
            let bad = f.verify_functor();
            if let Some(b) = bad.first() {
                return Err(format!("{name} covering is not a functor at {b}"));
            }
        }
        Ok(())
    }
}

/// The homogeneous basis vectors of `hom(b, c)` of degree `t⁻¹·s`, i.e. the
/// basis of `hom((b, s), (c, t))` in the smash. Works for any group.
pub fn smash_hom(g: &Grading, b: usize, s: &Elem, c: usize, t: &Elem) -> Result<Vec<BasisRef>> {
    let grp = g.group();
    grp.check(s)?;
    grp.check(t)?;
    let n = g.category().num_objects();
    if b >= n || c >= n {
        return Err(Error::domain("object index out of range"));
    }
    let d = grp.mul(&grp.inv(t), s);
    Ok(g.hom(b, c)
        .degrees()
        .iter()
        .enumerate()
        .filter(|(_, x)| **x == d)
        .map(|(idx, _)| BasisRef {
            src: b,
            tgt: c,
            idx,
        })
        .collect())
}

/// Materialized smash product of a grading by a finite group.
#[derive(Debug, Clone)]
pub struct SmashCovering {
    grading: Grading,
    elements: Vec<Elem>,
    index: HashMap<Elem, usize>,
    functor: CoveringFunctor,
    /// Homogeneous index in `hom(b, c)` of each smash basis vector.
    lift: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisReport {
    pub connected: bool,
    pub transitive: bool,
    pub free: bool,
    /// Every left translation is an automorphism commuting with the projection.
    pub deck_automorphisms: bool,
}

impl GaloisReport {
    pub fn is_galois(&self) -> bool {
        self.connected && self.transitive && self.free && self.deck_automorphisms
    }
}

/// Connected component of a smash together with its covering functor.
#[derive(Debug, Clone)]
pub struct SmashComponent {
    /// Smash object indices, ascending.
    pub objects: Vec<usize>,
    pub functor: CoveringFunctor,
}

pub fn smash_product(g: &Grading) -> Result<SmashCovering> {
    let grp = g.group();
    let elements = grp.elements().ok_or_else(|| {
        Error::Unsupported(
            "the smash of an infinite group is not materialized; query hom-spaces instead".into(),
        )
    })?;
    if !g.is_valid() {
        return Err(Error::Precondition("the grading is not valid".into()));
    }
    let base = g.category().clone();
    let k = base.field().clone();
    let n = base.num_objects();
    let m = elements.len();
    let index: HashMap<Elem, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let obj = |b: usize, s: usize| b * m + s;
    let objects: Vec<String> = (0..n * m)
        .map(|x| {
            format!(
                "{}⋊{}",
                base.object_label(x / m),
                grp.fmt_elem(&elements[x % m])
            )
        })
        .collect();
    let nn = n * m;
    let mut homs: Vec<Vec<String>> = vec![Vec::new(); nn * nn];
    let mut lift: Vec<Vec<usize>> = vec![Vec::new(); nn * nn];
    let mut maps: Vec<Matrix> = vec![Vec::new(); nn * nn];
    // position of each homogeneous vector inside its smash hom-space, per source fibre element
    let mut slot: HashMap<(usize, BasisRef), (usize, usize)> = HashMap::new();
    for b in 0..n {
        for c in 0..n {
            let h = g.hom(b, c);
            for (idx, d) in h.degrees().iter().enumerate() {
                for (si, s) in elements.iter().enumerate() {
                    let t = grp.mul(s, &grp.inv(d));
                    let (x, y) = (obj(b, si), obj(c, index[&t]));
                    let key = x * nn + y;
                    slot.insert(
                        (
                            si,
                            BasisRef {
                                src: b,
                                tgt: c,
                                idx,
                            },
                        ),
                        (key, homs[key].len()),
                    );
                    homs[key].push(format!("{}@{}", h.labels()[idx], objects[x]));
                    lift[key].push(idx);
                    maps[key].push(h.basis()[idx].clone());
                }
            }
        }
    }
    let mut identity = Vec::with_capacity(nn);
    for x in 0..nn {
        let (b, si) = (x / m, x % m);
        let coords = g.to_homogeneous(b, b, base.identity(b));
        let key = x * nn + x;
        let mut v = k.zero_vector(homs[key].len());
        for (idx, c) in coords.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let (k2, pos) = slot[&(
                si,
                BasisRef {
                    src: b,
                    tgt: b,
                    idx,
                },
            )];
            if k2 != key {
                return Err(Error::Invariant(
                    "identity is not homogeneous of trivial degree".into(),
                ));
            }
            v[pos] = c.clone();
        }
        identity.push(v);
    }
    let mut compose = BTreeMap::new();
    for b in 0..n {
        for c in 0..n {
            for d in 0..n {
                let (hf, hg) = (g.hom(b, c), g.hom(c, d));
                for (fi, fv) in hf.basis().iter().enumerate() {
                    for (gi, gv) in hg.basis().iter().enumerate() {
                        let comp = base.compose(b, c, d, fv, gv);
                        let coords = g.to_homogeneous(b, d, &comp);
                        for si in 0..m {
                            let (kf, pf) = slot[&(
                                si,
                                BasisRef {
                                    src: b,
                                    tgt: c,
                                    idx: fi,
                                },
                            )];
                            let y = kf % nn;
                            let (kg, pg) = slot[&(
                                y % m,
                                BasisRef {
                                    src: c,
                                    tgt: d,
                                    idx: gi,
                                },
                            )];
                            let z = kg % nn;
                            let x = obj(b, si);
                            let key = x * nn + z;
                            let mut v = k.zero_vector(homs[key].len());
                            for (ti, coef) in coords.iter().enumerate() {
                                if num_traits::Zero::is_zero(coef) {
                                    continue;
                                }
                                let (kt, pt) = slot[&(
                                    si,
                                    BasisRef {
                                        src: b,
                                        tgt: d,
                                        idx: ti,
                                    },
                                )];
                                if kt != key {
                                    return Err(Error::Invariant(
                                        "composite leaves its homogeneous component".into(),
                                    ));
                                }
                                v[pt] = coef.clone();
                            }
                            if !is_zero_vector(&v) {
                                compose.insert(
                                    CompKey {
                                        b: x,
                                        c: y,
                                        d: z,
                                        f: pf,
                                        g: pg,
                                    },
                                    v,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let source = FinCategory::new(k, objects, homs, identity, compose)?;
    let functor = CoveringFunctor {
        source,
        target: base,
        objects: (0..nn).map(|x| x / m).collect(),
        maps,
    };
    Ok(SmashCovering {
        grading: g.clone(),
        elements,
        index,
        functor,
        lift,
    })
}

impl SmashCovering {
    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn category(&self) -> &FinCategory {
        &self.functor.source
    }

    pub fn functor(&self) -> &CoveringFunctor {
        &self.functor
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn object(&self, b: usize, s: &Elem) -> usize {
        b * self.elements.len() + self.index[s]
    }

    /// `(b, s)` for a smash object.
    pub fn fibre_coords(&self, x: usize) -> (usize, &Elem) {
        let m = self.elements.len();
        (x / m, &self.elements[x % m])
    }

    /// Homogeneous index in the base hom-space of a smash basis vector.
    pub fn lift(&self, x: usize, y: usize, i: usize) -> usize {
        self.lift[x * self.category().num_objects() + y][i]
    }

    /// Object permutation of the deck transformation `(b, s) ↦ (b, q·s)`.
    pub fn deck_action(&self, q: &Elem) -> Vec<usize> {
        let grp = self.grading.group();
        (0..self.category().num_objects())
            .map(|x| {
                let (b, s) = self.fibre_coords(x);
                self.object(b, &grp.mul(q, s))
            })
            .collect()
    }

    fn deck_preserves_structure(&self, perm: &[usize]) -> bool {
        let cat = self.category();
        let nn = cat.num_objects();
        for x in 0..nn {
            for y in 0..nn {
                if self.lift[x * nn + y] != self.lift[perm[x] * nn + perm[y]] {
                    return false;
                }
            }
        }
        for x in 0..nn {
            if cat.identity(x) != cat.identity(perm[x]) {
                return false;
            }
        }
        cat.structure_constants().iter().all(|(k, v)| {
            let moved = CompKey {
                b: perm[k.b],
                c: perm[k.c],
                d: perm[k.d],
                f: k.f,
                g: k.g,
            };
            cat.structure_constants().get(&moved) == Some(v)
        })
    }

    pub fn verify_covering(&self) -> Vec<StarFailure> {
        let mut out = self.functor.verify_star_isomorphism();
        if !self.functor.verify_functor().is_empty() {
            out.push(StarFailure {
                base: "-".into(),
                fibre: "-".into(),
                side: StarSide::Outgoing,
            });
        }
        out
    }

    /// Connectivity of the smash and the action of the grading group on the
    /// fibre over `b0` by left multiplication.
    pub fn verify_galois(&self, b0: usize) -> GaloisReport {
        let grp = self.grading.group();
        let fibre: Vec<usize> = (0..self.elements.len())
            .map(|i| b0 * self.elements.len() + i)
            .collect();
        let x0 = fibre[0];
        let mut orbit: Vec<usize> = self
            .elements
            .iter()
            .map(|q| self.deck_action(q)[x0])
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        let transitive = orbit == fibre;
        let id = grp.identity();
        let free = self.elements.iter().all(|q| {
            let perm = self.deck_action(q);
            *q == id || fibre.iter().all(|&x| perm[x] != x)
        });
        let deck_automorphisms = self
            .elements
            .iter()
            .all(|q| self.deck_preserves_structure(&self.deck_action(q)));
        GaloisReport {
            connected: self.category().is_connected(),
            transitive,
            free,
            deck_automorphisms,
        }
    }

    /// The connected component containing the smash object `x`.
    pub fn component(&self, x: usize) -> Result<SmashComponent> {
        let comp = self
            .category()
            .components()
            .into_iter()
            .find(|c| c.contains(&x))
            .ok_or_else(|| Error::domain("object index out of range"))?;
        let subset = ObjectSubset::new(self.category(), comp.iter().copied())?;
        Ok(SmashComponent {
            functor: self.functor.restrict(&subset)?,
            objects: comp,
        })
    }

    /// Group elements whose deck transformation maps `objects` onto itself.
    pub fn stabilizer(&self, objects: &[usize]) -> Vec<Elem> {
        let mut set = objects.to_vec();
        set.sort_unstable();
        self.elements
            .iter()
            .filter(|q| {
                let perm = self.deck_action(q);
                let mut img: Vec<usize> = objects.iter().map(|&x| perm[x]).collect();
                img.sort_unstable();
                img == set
            })
            .cloned()
            .collect()
    }
}

pub fn verify_covering(c: &SmashCovering) -> Vec<StarFailure> {
    c.verify_covering()
}

pub fn verify_galois(c: &SmashCovering, b0: usize) -> GaloisReport {
    c.verify_galois(b0)
}

/// Evidence that the component of `(b0, 1)` in `B#g` is the smash of the
/// base-component grading.
#[derive(Debug, Clone)]
pub struct ComponentCheck {
    pub family: ConjugationFamily,
    pub component_grading: Grading,
    pub component_objects: Vec<String>,
    /// `Err` names the first mismatch.
    pub isomorphic: std::result::Result<(), String>,
    pub deck_group: Vec<Elem>,
    pub deck_group_is_walk_group: bool,
}

/// Materializes both sides and compares them under `(b, s) ↦ (b, s·v_b)`.
pub fn check_base_component(g: &Grading, b0: usize) -> Result<ComponentCheck> {
    let (v, comp_grading) = g.base_component(b0)?;
    let grp = g.group();
    let big = smash_product(g)?;
    let small = smash_product(&comp_grading)?;
    let comp = big.component(big.object(b0, &grp.identity()))?;
    let mut objmap = Vec::with_capacity(comp.objects.len());
    let mut bad = None;
    for &x in &comp.objects {
        let (b, s) = big.fibre_coords(x);
        let t = grp.mul(s, v.get(b));
        match small.index.get(&t) {
            Some(_) => objmap.push(small.object(b, &t)),
            None => {
                bad = Some(format!(
                    "{} maps outside the walk-degree subgroup",
                    big.category().object_label(x)
                ));
                break;
            }
        }
    }
    let isomorphic = match bad {
        Some(e) => Err(e),
        None => comp.functor.is_isomorphic_over(&small.functor, &objmap),
    };
    let deck_group = big.stabilizer(&comp.objects);
    let walk = comp_grading.group();
    let deck_group_is_walk_group = deck_group.len() == walk.order().unwrap_or(0)
        && deck_group.iter().all(|q| walk.contains(q));
    Ok(ComponentCheck {
        family: v,
        component_grading: comp_grading,
        component_objects: comp
            .objects
            .iter()
            .map(|&x| big.category().object_label(x).to_string())
            .collect(),
        isomorphic,
        deck_group,
        deck_group_is_walk_group,
    })
}

/// An automorphism of the base category that is the identity on objects,
/// given on each hom-space by the images of the canonical basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseAutomorphism {
    maps: Vec<Matrix>,
}

impl BaseAutomorphism {
    pub fn identity(cat: &FinCategory) -> Self {
        let n = cat.num_objects();
        let k = cat.field();
        BaseAutomorphism {
            maps: (0..n * n)
                .map(|i| k.identity_matrix(cat.hom_dim(i / n, i % n)))
                .collect(),
        }
    }

    /// Checks invertibility, identities and composition.
    pub fn new(cat: &FinCategory, maps: Vec<Matrix>) -> Result<Self> {
        let n = cat.num_objects();
        let k = cat.field();
        if maps.len() != n * n {
            return Err(Error::domain(
                "one matrix per ordered object pair is required",
            ));
        }
        let maps: Vec<Matrix> = maps
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|r| r.into_iter().map(|x| k.normalize(x)).collect())
                    .collect()
            })
            .collect();
        for b in 0..n {
            for c in 0..n {
                let m = &maps[b * n + c];
                let dim = cat.hom_dim(b, c);
                if m.len() != dim || m.iter().any(|r| r.len() != dim) || k.invert(m).is_none() {
                    return Err(Error::domain(format!(
                        "J on hom({}, {}) is not an invertible {dim}×{dim} matrix",
                        cat.object_label(b),
                        cat.object_label(c)
                    )));
                }
            }
        }
        let j = BaseAutomorphism { maps };
        for b in 0..n {
            if j.apply(cat, b, b, cat.identity(b)) != *cat.identity(b) {
                return Err(Error::domain(format!(
                    "J moves the identity of {}",
                    cat.object_label(b)
                )));
            }
        }
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for fi in 0..cat.hom_dim(b, c) {
                        for gi in 0..cat.hom_dim(c, d) {
                            let lhs = j.apply(cat, b, d, &cat.compose_basis(b, c, d, fi, gi));
                            let rhs = cat.compose(
                                b,
                                c,
                                d,
                                &j.maps[b * n + c][fi],
                                &j.maps[c * n + d][gi],
                            );
                            if lhs != rhs {
                                return Err(Error::domain(format!(
                                    "J does not preserve {} ∘ {}",
                                    cat.hom_labels(c, d)[gi],
                                    cat.hom_labels(b, c)[fi]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(j)
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn apply(&self, cat: &FinCategory, b: usize, c: usize, v: &[Scalar]) -> Vector {
        let n = cat.num_objects();
        cat.field()
            .vec_mat(v, &self.maps[b * n + c], cat.hom_dim(b, c))
    }

    pub fn is_identity(&self, cat: &FinCategory) -> bool {
        *self == BaseAutomorphism::identity(cat)
    }

    /// The grading `Y` with `v` homogeneous of degree `d` for `Y` exactly
    /// when `J(v)` is homogeneous of degree `d` for `g`.
    pub fn pull_back(&self, g: &Grading) -> Result<Grading> {
        let cat = g.category();
        let n = cat.num_objects();
        let k = cat.field();
        let mut basis = Vec::with_capacity(n * n);
        let mut degrees = Vec::with_capacity(n * n);
        for b in 0..n {
            for c in 0..n {
                let jinv = k
                    .invert(&self.maps[b * n + c])
                    .ok_or_else(|| Error::domain("J is not invertible"))?;
                let h = g.hom(b, c);
                basis.push(Some(k.mat_mul(h.basis(), &jinv, cat.hom_dim(b, c))));
                degrees.push(h.degrees().to_vec());
            }
        }
        Grading::new(cat.clone(), g.group().clone(), basis, degrees)
    }
}

/// A morphism of smash coverings `B#X → B#X'` over `J`:
/// `H(b, s) = (b, λ(s)·h_b)`, acting on underlying vectors by `J`.
#[derive(Debug, Clone)]
pub struct CoveringMorphism {
    source: Grading,
    target: Grading,
    /// `target` pulled back along `J`; equal to `target` when `J = 1`.
    effective_target: Grading,
    j: Option<BaseAutomorphism>,
    base: usize,
    lambda: GroupHom,
    offsets: Vec<Elem>,
}

/// Why no morphism exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// A source-homogeneous vector spreads over several target degrees.
    NotHomogeneous {
        vector: String,
        degrees: Vec<String>,
    },
    /// Degree transport along `edge` assigns two values to one fibre point.
    InconsistentTransport {
        edge: String,
        object: String,
        fibre: String,
        expected: String,
        found: String,
    },
    /// The forced group map is not a homomorphism.
    NotHomomorphism(String),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NotHomogeneous { vector, degrees } => {
                write!(f, "{vector} is not homogeneous for the target grading (degrees {})", degrees.join(", "))
            }
            Obstruction::InconsistentTransport {
                edge,
                object,
                fibre,
                expected,
                found,
            } => write!(
                f,
                "transport along {edge} sends ({object}, {fibre}) to {found}, already assigned {expected}"
            ),
            Obstruction::NotHomomorphism(m) => write!(f, "forced group map is not a homomorphism: {m}"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Search {
    Found(CoveringMorphism),
    Absent(Obstruction),
}

impl Search {
    pub fn found(self) -> Option<CoveringMorphism> {
        match self {
            Search::Found(m) => Some(m),
            Search::Absent(_) => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

/// How the normalized morphism is searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchRoute {
    /// Propagation for finite source groups, lattice solving otherwise.
    Auto,
    /// Breadth-first degree transport over every fibre point.
    Propagation,
    /// Solve for `λ` on closed-walk degrees (abelian-type source groups).
    Lattice,
}

/// One homogeneous source vector with its source and target degrees.
struct Edge {
    basis: BasisRef,
    label: String,
    d: Elem,
    d2: Elem,
}

fn transport_edges(x: &Grading, y: &Grading) -> std::result::Result<Vec<Edge>, Obstruction> {
    let cat = x.category();
    let mut out = Vec::new();
    for r in cat.basis_refs() {
        let v = x.homogeneous_vector(r);
        let coords = y.to_homogeneous(r.src, r.tgt, v);
        let mut degs: Vec<&Elem> = coords
            .iter()
            .zip(y.hom(r.src, r.tgt).degrees())
            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
            .map(|(_, d)| d)
            .collect();
        degs.sort();
        degs.dedup();
        if degs.len() != 1 {
            return Err(Obstruction::NotHomogeneous {
                vector: x.label(r).to_string(),
                degrees: degs.iter().map(|d| y.group().fmt_elem(d)).collect(),
            });
        }
        out.push(Edge {
            basis: r,
            label: x.label(r).to_string(),
            d: x.degree(r).clone(),
            d2: degs[0].clone(),
        });
    }
    Ok(out)
}

fn check_same_category(x: &Grading, y: &Grading) -> Result<()> {
    if !(Arc::ptr_eq(x.category(), y.category()) || **x.category() == **y.category()) {
        return Err(Error::domain(
            "gradings are defined on different categories",
        ));
    }
    Ok(())
}

/// Searches for the normalized morphism `B#X → B#X'` with `J = 1` and
/// `H_{b0}(1) = 1`.
pub fn find_identity_j_morphism(x: &Grading, y: &Grading, b0: usize) -> Result<Search> {
    find_identity_j_morphism_via(x, y, b0, SearchRoute::Auto)
}

pub fn find_identity_j_morphism_via(
    x: &Grading,
    y: &Grading,
    b0: usize,
    route: SearchRoute,
) -> Result<Search> {
    check_same_category(x, y)?;
    for (name, g) in [("source", x), ("target", y)] {
        if !g.is_connected_grading(b0)? {
            return Err(Error::Precondition(format!(
                "{name} grading is not connected"
            )));
        }
    }
    let edges = match transport_edges(x, y) {
        Ok(e) => e,
        Err(o) => return Ok(Search::Absent(o)),
    };
    let route = match route {
        SearchRoute::Auto if x.group().is_finite() => SearchRoute::Propagation,
        SearchRoute::Auto => SearchRoute::Lattice,
        r => r,
    };
    let found = match route {
        SearchRoute::Propagation => propagate(x, y, b0, &edges)?,
        _ => solve_lattice(x, y, b0, &edges)?,
    };
    Ok(match found {
        Ok((lambda, offsets)) => Search::Found(CoveringMorphism {
            source: x.clone(),
            target: y.clone(),
            effective_target: y.clone(),
            j: None,
            base: b0,
            lambda,
            offsets,
        }),
        Err(o) => Search::Absent(o),
    })
}

type Solution = std::result::Result<(GroupHom, Vec<Elem>), Obstruction>;

fn propagate(x: &Grading, y: &Grading, b0: usize, edges: &[Edge]) -> Result<Solution> {
    let gx = x.group();
    let gy = y.group();
    let cat = x.category();
    let elements = gx
        .elements()
        .ok_or_else(|| Error::Unsupported("propagation needs a finite source group".into()))?;
    let mut value: HashMap<(usize, Elem), Elem> = HashMap::new();
    value.insert((b0, gx.identity()), gy.identity());
    let mut queue = VecDeque::from([(b0, gx.identity())]);
    while let Some((b, s)) = queue.pop_front() {
        let h = value[&(b, s.clone())].clone();
        for e in edges {
            let steps = [
                (
                    e.basis.src == b,
                    e.basis.tgt,
                    gx.mul(&s, &gx.inv(&e.d)),
                    gy.mul(&h, &gy.inv(&e.d2)),
                ),
                (
                    e.basis.tgt == b,
                    e.basis.src,
                    gx.mul(&s, &e.d),
                    gy.mul(&h, &e.d2),
                ),
            ];
            for (applies, c, t, ht) in steps {
                if !applies {
                    continue;
                }
                match value.get(&(c, t.clone())) {
                    Some(old) if *old != ht => {
                        return Ok(Err(Obstruction::InconsistentTransport {
                            edge: e.label.clone(),
                            object: cat.object_label(c).to_string(),
                            fibre: gx.fmt_elem(&t),
                            expected: gy.fmt_elem(old),
                            found: gy.fmt_elem(&ht),
                        }));
                    }
                    Some(_) => {}
                    None => {
                        value.insert((c, t.clone()), ht);
                        queue.push_back((c, t));
                    }
                }
            }
        }
    }
    let n = cat.num_objects();
    if value.len() != n * elements.len() {
        return Err(Error::Invariant(
            "propagation did not reach every fibre point".into(),
        ));
    }
    let lambda = match GroupHom::from_fn(gx, gy, |s| value[&(b0, s.clone())].clone()) {
        Ok(l) => l,
        Err(e) => return Ok(Err(Obstruction::NotHomomorphism(e.to_string()))),
    };
    let offsets: Vec<Elem> = (0..n).map(|b| value[&(b, gx.identity())].clone()).collect();
    for b in 0..n {
        for s in &elements {
            if value[&(b, s.clone())] != gy.mul(&lambda.apply(s), &offsets[b]) {
                return Err(Error::Invariant("propagated map is not equivariant".into()));
            }
        }
    }
    Ok(Ok((lambda, offsets)))
}

/// Tree walk degrees from `b0` for two gradings along the same spanning tree.
fn tree_degrees(
    x: &Grading,
    y: &Grading,
    b0: usize,
    edges: &[Edge],
) -> Result<(Vec<Elem>, Vec<Elem>, Vec<bool>)> {
    let tree = x.walk_tree(b0, None)?;
    let n = x.category().num_objects();
    let (gx, gy) = (x.group(), y.group());
    let mut vx: Vec<Option<Elem>> = vec![None; n];
    let mut vy: Vec<Option<Elem>> = vec![None; n];
    vx[b0] = Some(gx.identity());
    vy[b0] = Some(gy.identity());
    let mut changed = true;
    while changed {
        changed = false;
        for (e, &t) in edges.iter().zip(&tree.tree_edge) {
            if !t {
                continue;
            }
            let (b, c) = (e.basis.src, e.basis.tgt);
            if vx[b].is_some() && vx[c].is_none() {
                vx[c] = Some(gx.mul(&e.d, vx[b].as_ref().unwrap()));
                vy[c] = Some(gy.mul(&e.d2, vy[b].as_ref().unwrap()));
                changed = true;
            } else if vx[c].is_some() && vx[b].is_none() {
                vx[b] = Some(gx.mul(&gx.inv(&e.d), vx[c].as_ref().unwrap()));
                vy[b] = Some(gy.mul(&gy.inv(&e.d2), vy[c].as_ref().unwrap()));
                changed = true;
            }
        }
    }
    if vx.iter().any(Option::is_none) {
        return Err(Error::domain("the category is not connected"));
    }
    Ok((
        vx.into_iter().map(Option::unwrap).collect(),
        vy.into_iter().map(Option::unwrap).collect(),
        tree.tree_edge,
    ))
}

fn solve_lattice(x: &Grading, y: &Grading, b0: usize, edges: &[Edge]) -> Result<Solution> {
    let (gx, gy) = (x.group(), y.group());
    let pres = gx.presentation().ok_or_else(|| {
        Error::Unsupported("lattice solving needs an abelian-type source group".into())
    })?;
    let (vx, vy, tree) = tree_degrees(x, y, b0, edges)?;
    let mut cycles: Vec<(&Edge, Elem, Elem)> = Vec::new();
    for (e, &t) in edges.iter().zip(&tree) {
        if t {
            continue;
        }
        let (b, c) = (e.basis.src, e.basis.tgt);
        let g = gx.mul(&gx.mul(&gx.inv(&vx[c]), &e.d), &vx[b]);
        let g2 = gy.mul(&gy.mul(&gy.inv(&vy[c]), &e.d2), &vy[b]);
        cycles.push((e, g, g2));
    }
    let m = pres.num_gens();
    let mut rows: intmat::IntMatrix = cycles
        .iter()
        .map(|(_, g, _)| {
            pres.coords(g)
                .ok_or_else(|| Error::Invariant("walk degree outside the group".into()))
        })
        .collect::<Result<_>>()?;
    rows.extend(pres.relations().iter().cloned());
    let mut images = Vec::with_capacity(m);
    for i in 0..m {
        let mut unit = vec![0i64; m];
        unit[i] = 1;
        let c = intmat::solve(&rows, m, &unit).ok_or_else(|| {
            Error::Precondition("closed walks do not generate the source group".into())
        })?;
        let img = cycles
            .iter()
            .zip(&c)
            .fold(gy.identity(), |acc, ((_, _, g2), &k)| {
                gy.mul(&acc, &gy.pow(g2, k))
            });
        images.push(img);
    }
    let lambda = match GroupHom::from_generator_images(gx, gy, images) {
        Ok(l) => l,
        Err(e) => return Ok(Err(Obstruction::NotHomomorphism(e.to_string()))),
    };
    for (e, g, g2) in &cycles {
        let got = lambda.apply(g);
        if got != *g2 {
            let c = e.basis.tgt;
            return Ok(Err(Obstruction::InconsistentTransport {
                edge: e.label.clone(),
                object: x.category().object_label(c).to_string(),
                fibre: gx.fmt_elem(g),
                expected: gy.fmt_elem(&got),
                found: gy.fmt_elem(g2),
            }));
        }
    }
    let offsets = vx
        .iter()
        .zip(&vy)
        .map(|(a, b)| gy.mul(&lambda.apply(a), &gy.inv(b)))
        .collect();
    Ok(Ok((lambda, offsets)))
}

/// Morphism search through a declared base automorphism `J`: the target is
/// pulled back along `J`, reducing to the identity case.
pub fn find_morphism_over(
    x: &Grading,
    y: &Grading,
    b0: usize,
    j: &BaseAutomorphism,
) -> Result<Search> {
    check_same_category(x, y)?;
    let pulled = j.pull_back(y)?;
    Ok(match find_identity_j_morphism(x, &pulled, b0)? {
        Search::Found(mut m) => {
            m.target = y.clone();
            m.effective_target = pulled;
            m.j = (!j.is_identity(x.category())).then(|| j.clone());
            Search::Found(m)
        }
        absent => absent,
    })
}

/// All morphisms with a fixed `J`: the orbit `{qH}` of the normalized one.
#[derive(Debug, Clone)]
pub enum MorphismSet {
    Empty(Obstruction),
    /// Target group finite: every member, in the target group's element order.
    Listed(Vec<CoveringMorphism>),
    /// Target group infinite: the orbit of `normalized` under the target group.
    Orbit {
        normalized: CoveringMorphism,
        acting: Group,
    },
}

impl MorphismSet {
    pub fn len(&self) -> Option<usize> {
        match self {
            MorphismSet::Empty(_) => Some(0),
            MorphismSet::Listed(v) => Some(v.len()),
            MorphismSet::Orbit { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, MorphismSet::Empty(_))
    }
}

pub fn enumerate_identity_j_morphisms(x: &Grading, y: &Grading, b0: usize) -> Result<MorphismSet> {
    Ok(match find_identity_j_morphism(x, y, b0)? {
        Search::Absent(o) => MorphismSet::Empty(o),
        Search::Found(h) => match y.group().elements() {
            Some(qs) => MorphismSet::Listed(qs.iter().map(|q| h.deck(q)).collect()),
            None => MorphismSet::Orbit {
                acting: y.group().clone(),
                normalized: h,
            },
        },
    })
}

impl CoveringMorphism {
    pub fn source(&self) -> &Grading {
        &self.source
    }

    pub fn target(&self) -> &Grading {
        &self.target
    }

    pub fn j(&self) -> Option<&BaseAutomorphism> {
        self.j.as_ref()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn offsets(&self) -> &[Elem] {
        &self.offsets
    }

    /// `H_b(s)`
    pub fn object_map(&self, b: usize, s: &Elem) -> Elem {
        self.target
            .group()
            .mul(&self.lambda.apply(s), &self.offsets[b])
    }

    /// Full table `b ↦ [(s, H_b(s))]` for finite source groups.
    pub fn object_maps(&self) -> Option<Vec<Vec<(Elem, Elem)>>> {
        let elems = self.source.group().elements()?;
        Some(
            (0..self.offsets.len())
                .map(|b| {
                    elems
                        .iter()
                        .map(|s| (s.clone(), self.object_map(b, s)))
                        .collect()
                })
                .collect(),
        )
    }

    /// `qH`: post-composition with the deck transformation `q` of the target.
    pub fn deck(&self, q: &Elem) -> CoveringMorphism {
        let gy = self.target.group();
        let qinv = gy.inv(q);
        let lambda = GroupHom::from_fn(self.source.group(), gy, |s| {
            gy.conj(&qinv, &self.lambda.apply(s))
        })
        .expect("conjugate of a homomorphism");
        CoveringMorphism {
            lambda,
            offsets: self.offsets.iter().map(|h| gy.mul(q, h)).collect(),
            ..self.clone()
        }
    }

    /// `H_{b0}(1)⁻¹·H`
    pub fn normalize(&self) -> CoveringMorphism {
        let gy = self.target.group();
        self.deck(&gy.inv(&self.offsets[self.base]))
    }

    pub fn is_normalized(&self) -> bool {
        self.offsets[self.base] == self.target.group().identity()
    }

    /// Checks homogeneity and degree transport on every basis vector.
    pub fn verify(&self) -> std::result::Result<(), Obstruction> {
        let (gx, gy) = (self.source.group(), self.target.group());
        let edges = transport_edges(&self.source, &self.effective_target)?;
        for e in &edges {
            let (b, c) = (e.basis.src, e.basis.tgt);
            // h_c = λ(d)·h_b·d'⁻¹
            let want = gy.mul(
                &gy.mul(&self.lambda.apply(&e.d), &self.offsets[b]),
                &gy.inv(&e.d2),
            );
            if want != self.offsets[c] {
                return Err(Obstruction::InconsistentTransport {
                    edge: e.label.clone(),
                    object: self.source.category().object_label(c).to_string(),
                    fibre: gx.fmt_elem(&gx.inv(&e.d)),
                    expected: gy.fmt_elem(&self.offsets[c]),
                    found: gy.fmt_elem(&want),
                });
            }
        }
        Ok(())
    }

    /// `λ_H(s) = H_{b0}(s)·H_{b0}(1)⁻¹`, checked to be surjective and the
    /// same at every object.
    pub fn lambda(&self) -> Result<GroupHom> {
        self.verify()
            .map_err(|o| Error::Invariant(format!("corrupt covering morphism: {o}")))?;
        let gy = self.target.group();
        if let Some(elems) = self.source.group().elements() {
            for b in 0..self.offsets.len() {
                let h1 = gy.inv(&self.object_map(b, &self.source.group().identity()));
                for s in &elems {
                    if gy.mul(&self.object_map(b, s), &h1) != self.lambda.apply(s) {
                        return Err(Error::Invariant("λ depends on the object".into()));
                    }
                }
            }
        }
        if !self.lambda.is_surjective() {
            return Err(Error::Invariant(
                "λ of a morphism between connected gradings is not surjective".into(),
            ));
        }
        Ok(self.lambda.clone())
    }

    /// `μ = H_{b0}(1)⁻¹·λ_H·H_{b0}(1)`
    pub fn canonical_mu(&self) -> Result<GroupHom> {
        let lambda = self.lambda()?;
        let gy = self.target.group();
        let h = self.offsets[self.base].clone();
        GroupHom::from_fn(self.source.group(), gy, |s| gy.conj(&h, &lambda.apply(s)))
    }
}

pub fn lambda_of(m: &CoveringMorphism) -> Result<GroupHom> {
    m.lambda()
}

pub fn canonical_mu(m: &CoveringMorphism) -> Result<GroupHom> {
    m.canonical_mu()
}

/// `B#X → B#(ᵃX)`, `(b, s) ↦ (b, s·a_b)`, identity on underlying vectors.
pub fn conjugation_covering_morphism(
    x: &Grading,
    a: &ConjugationFamily,
) -> Result<CoveringMorphism> {
    let target = x.conjugate(a)?;
    let m = CoveringMorphism {
        source: x.clone(),
        effective_target: target.clone(),
        target,
        j: None,
        base: a.base(),
        lambda: GroupHom::identity(x.group()),
        offsets: a.values().to_vec(),
    };
    m.verify()
        .map_err(|o| Error::Invariant(format!("conjugation morphism fails verification: {o}")))?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::conjugation_hom;

    fn z(n: i64) -> Elem {
        Elem::Vec(vec![n])
    }

    #[test]
    fn smash_of_connected_c2_grading() {
        let c = smash_product(&fixtures::kc2_c2()).unwrap();
        let cat = c.category();
        assert_eq!(cat.num_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(cat.hom_dim(x, y), 1);
            }
        }
        assert!(cat.is_valid());
        for x in 0..2 {
            for y in 0..2 {
                for w in 0..2 {
                    assert!(!is_zero_vector(&cat.compose_basis(x, y, w, 0, 0)));
                }
            }
        }
        assert!(c.verify_covering().is_empty());
    }

    #[test]
    fn smash_of_trivial_grading_is_the_base() {
        let g = Grading::trivial(Arc::new(fixtures::kronecker()));
        let c = smash_product(&g).unwrap();
        assert_eq!(c.category().num_objects(), 2);
        assert_eq!(c.category().hom_dim(0, 1), 2);
        assert!(c.verify_covering().is_empty());
        assert!(c.verify_galois(0).is_galois());
    }

    #[test]
    fn smash_of_kronecker_mod_two() {
        let c = smash_product(&fixtures::kronecker_cyclic(2, 0, 1)).unwrap();
        let cat = c.category();
        assert_eq!(cat.num_objects(), 4);
        let cross: Vec<usize> = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .filter(|(x, y)| x != y)
            .map(|(x, y)| cat.hom_dim(x, y))
            .filter(|&d| d > 0)
            .collect();
        assert_eq!(cross, vec![1, 1, 1, 1]);
    }

    #[test]
    fn infinite_smash_is_refused() {
        assert!(matches!(
            smash_product(&fixtures::kc2_z()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn smash_hom_queries() {
        let g = fixtures::kc2_z();
        assert!(smash_hom(&g, 0, &z(0), 0, &z(1)).unwrap().is_empty());
        let up = smash_hom(&g, 0, &z(1), 0, &z(0)).unwrap();
        assert_eq!(
            up.iter().map(|r| g.label(*r)).collect::<Vec<_>>(),
            vec!["x"]
        );
        let same = smash_hom(&g, 0, &z(3), 0, &z(3)).unwrap();
        assert_eq!(
            same.iter().map(|r| g.label(*r)).collect::<Vec<_>>(),
            vec!["1"]
        );
        let k = fixtures::kronecker_z(0, 1);
        let h = smash_hom(&k, 0, &z(1), 1, &z(0)).unwrap();
        assert_eq!(
            h.iter().map(|r| k.label(*r)).collect::<Vec<_>>(),
            vec!["beta"]
        );
    }

    #[test]
    fn dropping_a_star_summand_is_detected() {
        let c = smash_product(&fixtures::kronecker_cyclic(2, 0, 1)).unwrap();
        let mut f = c.functor().clone();
        let n = f.source.num_objects();
        let (x, y) = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| x != y && !f.maps[x * n + y].is_empty())
            .unwrap();
        let dim = f.maps[x * n + y][0].len();
        f.maps[x * n + y][0] = f.target.field().zero_vector(dim);
        let failures = f.verify_star_isomorphism();
        assert!(failures
            .iter()
            .any(|s| s.fibre == f.source.object_label(x) && s.side == StarSide::Outgoing));
    }

    #[test]
    fn galois_criterion() {
        assert!(smash_product(&fixtures::kc2_c2())
            .unwrap()
            .verify_galois(0)
            .is_galois());
        let r = smash_product(&fixtures::kronecker_cyclic(4, 0, 2))
            .unwrap()
            .verify_galois(0);
        assert!(!r.connected && r.transitive && r.free);
    }

    #[test]
    fn base_component_of_disconnected_smash() {
        let check = check_base_component(&fixtures::kronecker_cyclic(4, 0, 2), 0).unwrap();
        assert_eq!(check.isomorphic, Ok(()));
        assert!(check.deck_group_is_walk_group);
        assert_eq!(check.deck_group, vec![z(0), z(2)]);
    }

    #[test]
    fn identity_morphism() {
        let g = fixtures::kc2_c2();
        let m = find_identity_j_morphism(&g, &g, 0)
            .unwrap()
            .found()
            .unwrap();
        assert!(m.lambda().unwrap().is_identity_map());
        assert!(m.canonical_mu().unwrap().is_identity_map());
    }

    #[test]
    fn z_to_mod_two() {
        let (gz, g2) = (fixtures::kc2_z(), fixtures::kc2_z2());
        let m = find_identity_j_morphism(&gz, &g2, 0)
            .unwrap()
            .found()
            .unwrap();
        let mu = m.canonical_mu().unwrap();
        for n in -3..4 {
            assert_eq!(mu.apply(&z(n)), z(n.rem_euclid(2)));
        }
        assert!(!find_identity_j_morphism(&g2, &gz, 0).unwrap().is_found());
        match enumerate_identity_j_morphisms(&gz, &g2, 0).unwrap() {
            MorphismSet::Listed(v) => {
                assert_eq!(v.len(), 2);
                for h in &v {
                    assert!(h.canonical_mu().unwrap().same_map(&mu));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn x_basis_and_t_basis_are_unrelated() {
        let (g2, c2) = (fixtures::kc2_z2(), fixtures::kc2_c2());
        for (a, b) in [(&g2, &c2), (&c2, &g2)] {
            match find_identity_j_morphism(a, b, 0).unwrap() {
                Search::Absent(Obstruction::NotHomogeneous { degrees, .. }) => {
                    assert_eq!(degrees.len(), 2)
                }
                other => panic!("{other:?}"),
            }
        }
        assert!(enumerate_identity_j_morphisms(&g2, &c2, 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn self_morphisms_of_c2_grading() {
        let g = fixtures::kc2_c2();
        assert_eq!(
            enumerate_identity_j_morphisms(&g, &g, 0).unwrap().len(),
            Some(2)
        );
    }

    #[test]
    fn infinite_target_gives_symbolic_orbit() {
        let g = fixtures::kronecker_z(0, 1);
        match enumerate_identity_j_morphisms(&g, &g, 0).unwrap() {
            MorphismSet::Orbit { normalized, .. } => assert!(normalized.is_normalized()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn routes_agree_on_finite_abelian_sources() {
        for (x, y) in [
            (fixtures::kc3_z3(), fixtures::kc3_z3()),
            (
                fixtures::kronecker_cyclic(4, 0, 1),
                fixtures::kronecker_cyclic(2, 0, 1),
            ),
            (
                fixtures::cycle3_cyclic(3, 1, 0, 0),
                fixtures::cycle3_cyclic(3, 0, 1, 0),
            ),
        ] {
            let p = find_identity_j_morphism_via(&x, &y, 0, SearchRoute::Propagation).unwrap();
            let l = find_identity_j_morphism_via(&x, &y, 0, SearchRoute::Lattice).unwrap();
            match (p, l) {
                (Search::Found(a), Search::Found(b)) => {
                    assert!(a.lambda().unwrap().same_map(&b.lambda().unwrap()));
                    assert_eq!(a.offsets(), b.offsets());
                }
                (Search::Absent(_), Search::Absent(_)) => {}
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn conjugation_morphism_of_kronecker() {
        let g = fixtures::kronecker_z(0, 1);
        let a = ConjugationFamily::new(vec![z(0), z(1)], 0);
        let m = conjugation_covering_morphism(&g, &a).unwrap();
        assert_eq!(m.object_map(1, &z(5)), z(6));
        assert_eq!(m.object_map(0, &z(5)), z(5));
        assert!(m.canonical_mu().unwrap().is_identity_map());
    }

    #[test]
    fn conjugation_mu_in_s3() {
        let g = fixtures::kronecker3_s3();
        assert!(g.is_connected_grading(0).unwrap());
        let grp = g.group().clone();
        let q = grp.parse_elem("(1 3)").unwrap();
        let a = ConjugationFamily::new(vec![q.clone(), grp.parse_elem("(2 3)").unwrap()], 0);
        let m = conjugation_covering_morphism(&g, &a).unwrap();
        let mu = m.canonical_mu().unwrap();
        assert!(mu.same_map(&conjugation_hom(&grp, &q).unwrap()));
        // the search from X to ᵃX finds the normalized representative, same μ
        let found = find_identity_j_morphism(&g, m.target(), 0)
            .unwrap()
            .found()
            .unwrap();
        assert!(found.canonical_mu().unwrap().same_map(&mu));
        for r in grp.elements().unwrap() {
            assert!(m.deck(&r).canonical_mu().unwrap().same_map(&mu));
        }
    }

    #[test]
    fn declared_j_reduces_to_identity_case() {
        // J swaps alpha and beta on the Kronecker quiver
        let cat = fixtures::kronecker();
        let k = cat.field().clone();
        let mut maps = BaseAutomorphism::identity(&cat).maps().to_vec();
        maps[1] = vec![vec![k.zero(), k.one()], vec![k.one(), k.zero()]];
        let j = BaseAutomorphism::new(&cat, maps).unwrap();
        let x = fixtures::kronecker_z(0, 1);
        let y = fixtures::kronecker_z(1, 0);
        let m = find_morphism_over(&x, &y, 0, &j).unwrap().found().unwrap();
        assert!(m.j().is_some());
        assert!(m.canonical_mu().unwrap().is_identity_map());
    }

    #[test]
    fn different_categories_are_a_domain_error() {
        let r = find_identity_j_morphism(&fixtures::kc2_z(), &fixtures::kc3_z(), 0);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
