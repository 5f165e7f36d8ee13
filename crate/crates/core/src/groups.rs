//! Grading groups: finite groups (Cayley table or permutations), finitely
//! generated abelian groups `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k`, and subgroups of
//! either, which are themselves usable as groups.
//!
//! Elements are plain payloads ([`Elem`]); a subgroup's elements are the
//! payloads of its root group, so degrees keep their values when a grading
//! is reinterpreted over a walk-degree subgroup.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Index into a finite group's element list.
    Idx(usize),
    /// Coordinates in `Z^r ⊕ Z/d_1 ⊕ …`, torsion coordinates reduced.
    Vec(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteKind {
    Table,
    Permutation,
}

#[derive(Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    kind: FiniteKind,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    /// 0-based images, only for the permutation realization.
    perms: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::domain("a group needs at least one element"));
        }
        let distinct: HashSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::domain("duplicate element names"));
        }
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::domain(
                "multiplication table must be n×n over the element list",
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::domain("multiplication table has no identity"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::domain(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::domain(format!("{} has no inverse", names[a])))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            kind: FiniteKind::Table,
            names,
            table,
            identity,
            inverse,
            perms: Vec::new(),
        })
    }

    /// Permutations given as 0-based image lists; product is `(στ)(i) = σ(τ(i))`.
    pub fn from_permutations(perms: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = perms.len();
        let degree = perms.first().map_or(0, Vec::len);
        for p in &perms {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(Error::domain("permutations of different degrees"));
            }
            for &i in p {
                if i >= degree || seen[i] {
                    return Err(Error::domain(format!("{p:?} is not a permutation")));
                }
                seen[i] = true;
            }
        }
        let index: HashMap<&Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != n {
            return Err(Error::domain("duplicate permutations"));
        }
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|i| perms[a][perms[b][i]]).collect();
                table[a][b] = *index.get(&prod).ok_or_else(|| {
                    Error::domain("permutation list is not closed under composition")
                })?;
            }
        }
        let names = names.unwrap_or_else(|| perms.iter().map(|p| cycle_notation(p)).collect());
        if names.len() != n {
            return Err(Error::domain("names and permutations differ in length"));
        }
        let mut g = FiniteGroup::from_table(names, table)?;
        g.kind = FiniteKind::Permutation;
        g.perms = perms;
        Ok(g)
    }

    pub fn kind(&self) -> FiniteKind {
        self.kind
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }
}

/// 1-based cycle notation, e.g. `(1 2)(3 4)`; the identity is `()`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cycle.push(i + 1);
            i = p[i];
        }
        let body: Vec<String> = cycle.iter().map(ToString::to_string).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (x, d) in v[self.free_rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(*d);
        }
        v
    }

    /// Rows `d_i·e_{r+i}` spanning the kernel of `Z^{r+k} → G`.
    fn relation_rows(&self) -> IntMatrix {
        let n = self.dim();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut row = vec![0; n];
                row[self.free_rank + i] = d;
                row
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
enum SubRepr {
    /// Sorted element indices of the finite root group.
    Members(Vec<usize>),
    /// HNF rows of the preimage lattice in `Z^{r+k}` (torsion relations included).
    Lattice(IntMatrix),
}

#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: Group,
    repr: SubRepr,
}

#[derive(Debug, Clone)]
pub enum Group {
    Finite(Arc<FiniteGroup>),
    Abelian(Arc<AbelianGroup>),
    Sub(Arc<Subgroup>),
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Group::Finite(a), Group::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            (Group::Abelian(a), Group::Abelian(b)) => a == b,
            (Group::Sub(a), Group::Sub(b)) => a.ambient == b.ambient && a.same_set(b),
            _ => false,
        }
    }
}

impl Eq for Group {}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.root() == other.ambient.root() && self.same_set(other)
    }
}

impl Eq for Subgroup {}

/// Invariant-factor description `Z^free_rank ⊕ Z/t_1 ⊕ …` with `t_1 | t_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A presentation `Z^m / relations` of an abelian-type group, with generators
/// recorded as root coordinate vectors.
#[derive(Debug, Clone)]
pub struct AbelianPresentation {
    root: Arc<AbelianGroup>,
    gens: IntMatrix,
    relations: IntMatrix,
}

impl AbelianPresentation {
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generator(&self, i: usize) -> Elem {
        Elem::Vec(self.root.reduce(self.gens[i].clone()))
    }

    /// Integer coordinates of `e` over the generators; `None` if `e` lies outside.
    pub fn coords(&self, e: &Elem) -> Option<Vec<i64>> {
        let Elem::Vec(v) = e else { return None };
        if v.len() != self.root.dim() {
            return None;
        }
        let mut rows = self.gens.clone();
        rows.extend(self.root.relation_rows());
        let c = intmat::solve(&rows, self.root.dim(), v)?;
        Some(c[..self.gens.len()].to_vec())
    }

    pub fn element(&self, c: &[i64]) -> Elem {
        let n = self.root.dim();
        let v: Vec<i64> = (0..n)
            .map(|j| c.iter().zip(&self.gens).map(|(ci, g)| ci * g[j]).sum())
            .collect();
        Elem::Vec(self.root.reduce(v))
    }

    pub fn invariants(&self) -> AbelianInvariants {
        let m = self.gens.len();
        let factors = intmat::invariant_factors(&self.relations, m);
        AbelianInvariants {
            free_rank: m - factors.len(),
            torsion: factors.into_iter().filter(|&d| d > 1).collect(),
        }
    }
}

impl Group {
    pub fn integers() -> Self {
        Group::abelian(1, vec![]).unwrap()
    }

    pub fn cyclic(n: i64) -> Self {
        Group::abelian(0, vec![n]).unwrap()
    }

    pub fn trivial() -> Self {
        Group::abelian(0, vec![]).unwrap()
    }

    pub fn abelian(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        if torsion.iter().any(|&d| d < 1) {
            return Err(Error::domain("torsion moduli must be positive"));
        }
        Ok(Group::Abelian(Arc::new(AbelianGroup {
            free_rank,
            torsion,
        })))
    }

    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        Ok(Group::Finite(Arc::new(FiniteGroup::from_table(
            names, table,
        )?)))
    }

    pub fn from_permutations(perms: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        Ok(Group::Finite(Arc::new(FiniteGroup::from_permutations(
            perms, names,
        )?)))
    }

    /// The symmetric group on `n` points, elements in lexicographic image order.
    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        Group::from_permutations(perms, None).unwrap()
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let mut perms = Vec::new();
        for k in 0..n {
            perms.push((0..n).map(|i| (i + k) % n).collect::<Vec<_>>());
        }
        for k in 0..n {
            perms.push((0..n).map(|i| (k + n - i) % n).collect::<Vec<_>>());
        }
        Group::from_permutations(perms, None).unwrap()
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}` as a Cayley table.
    pub fn quaternion() -> Self {
        // encode q = (sign, unit) with unit 0=1,1=i,2=j,3=k
        let names: Vec<String> = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
            .iter()
            .map(ToString::to_string)
            .collect();
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let mut table = vec![vec![0; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (neg, u) = unit_mul(a % 4, b % 4);
                let sign = (a >= 4) ^ (b >= 4) ^ neg;
                table[a][b] = u + if sign { 4 } else { 0 };
            }
        }
        Group::from_table(names, table).unwrap()
    }

    pub fn root(&self) -> &Group {
        match self {
            Group::Sub(s) => s.ambient.root(),
            g => g,
        }
    }

    pub fn is_abelian_type(&self) -> bool {
        matches!(self.root(), Group::Abelian(_))
    }

    fn root_abelian(&self) -> Option<&Arc<AbelianGroup>> {
        match self.root() {
            Group::Abelian(a) => Some(a),
            _ => None,
        }
    }

    pub fn identity(&self) -> Elem {
        match self.root() {
            Group::Finite(f) => Elem::Idx(f.identity),
            Group::Abelian(a) => Elem::Vec(vec![0; a.dim()]),
            Group::Sub(_) => unreachable!(),
        }
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self.root(), x, y) {
            (Group::Finite(f), Elem::Idx(a), Elem::Idx(b)) => Elem::Idx(f.table[*a][*b]),
            (Group::Abelian(g), Elem::Vec(a), Elem::Vec(b)) => {
                Elem::Vec(g.reduce(a.iter().zip(b).map(|(p, q)| p + q).collect()))
            }
            _ => panic!("element {x:?} or {y:?} does not belong to {self:?}"),
        }
    }

    pub fn inv(&self, x: &Elem) -> Elem {
        match (self.root(), x) {
            (Group::Finite(f), Elem::Idx(a)) => Elem::Idx(f.inverse[*a]),
            (Group::Abelian(g), Elem::Vec(a)) => {
                Elem::Vec(g.reduce(a.iter().map(|p| -p).collect()))
            }
            _ => panic!("element {x:?} does not belong to {self:?}"),
        }
    }

    /// `x⁻¹·y·x`
    pub fn conj(&self, x: &Elem, y: &Elem) -> Elem {
        self.mul(&self.mul(&self.inv(x), y), x)
    }

    pub fn pow(&self, x: &Elem, n: i64) -> Elem {
        let base = if n < 0 { self.inv(x) } else { x.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            k >>= 1;
        }
        acc
    }

    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
        xs.into_iter()
            .fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (Group::Finite(f), Elem::Idx(a)) => *a < f.names.len(),
            (Group::Abelian(g), Elem::Vec(v)) => v.len() == g.dim() && g.reduce(v.clone()) == *v,
            (Group::Sub(s), _) => s.ambient.root().contains(x) && s.contains_root(x),
            _ => false,
        }
    }

    pub fn check(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "element {x:?} does not belong to the group"
            )))
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Group::Finite(_) => true,
            Group::Abelian(a) => a.free_rank == 0,
            Group::Sub(s) => match &s.repr {
                SubRepr::Members(_) => true,
                SubRepr::Lattice(l) => {
                    let a = self.root_abelian().unwrap();
                    // finite iff the lattice has no rank beyond the torsion relations
                    intmat::rank(l, a.dim()) == a.torsion.len()
                }
            },
        }
    }

    /// All elements in the group's fixed order; `None` for infinite groups.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        if !self.is_finite() {
            return None;
        }
        match self {
            Group::Finite(f) => Some((0..f.names.len()).map(Elem::Idx).collect()),
            Group::Abelian(a) => {
                let mut out = Vec::new();
                let mut cur = vec![0i64; a.dim()];
                loop {
                    out.push(Elem::Vec(cur.clone()));
                    // odometer, last coordinate fastest
                    let mut i = a.dim();
                    loop {
                        if i == 0 {
                            return Some(out);
                        }
                        i -= 1;
                        cur[i] += 1;
                        if cur[i] < a.torsion[i] {
                            break;
                        }
                        cur[i] = 0;
                    }
                }
            }
            Group::Sub(s) => {
                let all = s.ambient.root().elements_of_finite_root(self)?;
                Some(all.into_iter().filter(|e| s.contains_root(e)).collect())
            }
        }
    }

    fn elements_of_finite_root(&self, sub: &Group) -> Option<Vec<Elem>> {
        match self {
            Group::Finite(_) => self.elements(),
            Group::Abelian(a) => {
                if a.free_rank == 0 {
                    return self.elements();
                }
                // a finite subgroup of a group with free part: only torsion-free
                // coordinates zero, enumerate its presentation instead
                let pres = sub.presentation()?;
                let inv = pres.invariants();
                if inv.free_rank > 0 {
                    return None;
                }
                let m = pres.num_gens();
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                let mut queue = VecDeque::from([sub.identity()]);
                seen.insert(sub.identity());
                while let Some(x) = queue.pop_front() {
                    out.push(x.clone());
                    for i in 0..m {
                        let y = sub.mul(&x, &pres.generator(i));
                        if seen.insert(y.clone()) {
                            queue.push_back(y);
                        }
                    }
                }
                out.sort();
                Some(out)
            }
            Group::Sub(_) => unreachable!(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    /// A generating set, in the group's element order for finite groups.
    pub fn generators(&self) -> Vec<Elem> {
        if let Some(pres) = self.presentation() {
            let id = self.identity();
            return (0..pres.num_gens())
                .map(|i| pres.generator(i))
                .filter(|g| *g != id)
                .collect();
        }
        let elems = self.elements().expect("finite non-abelian group");
        let mut gens: Vec<Elem> = Vec::new();
        let mut closure: HashSet<Elem> = HashSet::from([self.identity()]);
        for e in elems {
            if !closure.contains(&e) {
                gens.push(e);
                closure = close_finite(self, &gens);
            }
        }
        gens
    }

    /// Presentation for abelian-type groups; `None` otherwise.
    pub fn presentation(&self) -> Option<AbelianPresentation> {
        let root = self.root_abelian()?.clone();
        let n = root.dim();
        let gens = match self {
            Group::Abelian(_) => intmat::identity(n),
            Group::Sub(s) => match &s.repr {
                SubRepr::Lattice(l) => l.clone(),
                SubRepr::Members(_) => unreachable!(),
            },
            Group::Finite(_) => unreachable!(),
        };
        let relations = root
            .relation_rows()
            .iter()
            .map(|r| intmat::solve(&gens, n, r).expect("lattice contains torsion relations"))
            .collect();
        Some(AbelianPresentation {
            root,
            gens,
            relations,
        })
    }

    pub fn invariants(&self) -> Option<AbelianInvariants> {
        self.presentation().map(|p| p.invariants())
    }

    /// Root-level lattice (abelian type) describing this group's element set.
    fn lattice(&self) -> Option<IntMatrix> {
        match self {
            Group::Abelian(a) => Some(intmat::identity(a.dim())),
            Group::Sub(s) => match &s.repr {
                SubRepr::Lattice(l) => Some(l.clone()),
                SubRepr::Members(_) => None,
            },
            Group::Finite(_) => None,
        }
    }

    fn member_indices(&self) -> Option<Vec<usize>> {
        match self {
            Group::Finite(f) => Some((0..f.names.len()).collect()),
            Group::Sub(s) => match &s.repr {
                SubRepr::Members(m) => Some(m.clone()),
                SubRepr::Lattice(_) => None,
            },
            Group::Abelian(_) => None,
        }
    }

    /// Same root group and same element set.
    pub fn same_elements(&self, other: &Group) -> bool {
        if self.root() != other.root() {
            return false;
        }
        match (self.lattice(), other.lattice()) {
            (Some(a), Some(b)) => a == b,
            _ => self.member_indices() == other.member_indices(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        if let Some(inv) = self.invariants() {
            return inv.free_rank == 0 && inv.torsion.is_empty();
        }
        self.order() == Some(1)
    }

    pub fn fmt_elem(&self, x: &Elem) -> String {
        match (self.root(), x) {
            (Group::Finite(f), Elem::Idx(i)) => f.names[*i].clone(),
            (Group::Abelian(_), Elem::Vec(v)) => match v.len() {
                0 => "0".to_string(),
                1 => v[0].to_string(),
                _ => {
                    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                    format!("({})", parts.join(","))
                }
            },
            _ => format!("{x:?}"),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let bad = || Error::domain(format!("cannot parse group element {s:?}"));
        let e = match self.root() {
            Group::Finite(f) => Elem::Idx(f.names.iter().position(|n| n == s).ok_or_else(bad)?),
            Group::Abelian(a) => {
                let body = s.trim().trim_start_matches('(').trim_end_matches(')');
                let v: Vec<i64> = if a.dim() == 0 {
                    if body != "0" && !body.is_empty() {
                        return Err(bad());
                    }
                    Vec::new()
                } else {
                    body.split(',')
                        .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
                        .collect::<Result<_>>()?
                };
                if v.len() != a.dim() {
                    return Err(bad());
                }
                Elem::Vec(a.reduce(v))
            }
            Group::Sub(_) => unreachable!(),
        };
        self.check(&e)?;
        Ok(e)
    }

    /// Reduce a raw integer vector into canonical form (abelian roots only).
    pub fn reduce_vec(&self, v: Vec<i64>) -> Result<Elem> {
        let a = self
            .root_abelian()
            .ok_or_else(|| Error::domain("integer payload for a finite group"))?;
        if v.len() != a.dim() {
            return Err(Error::domain(format!(
                "payload {v:?} has length {}, expected {}",
                v.len(),
                a.dim()
            )));
        }
        Ok(Elem::Vec(a.reduce(v)))
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match self {
            Group::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_abelian(&self) -> Option<&AbelianGroup> {
        match self {
            Group::Abelian(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_subgroup(&self) -> Option<&Subgroup> {
        match self {
            Group::Sub(s) => Some(s),
            _ => None,
        }
    }

    pub fn commutes(&self, x: &Elem, y: &Elem) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }
}

fn close_finite(group: &Group, gens: &[Elem]) -> HashSet<Elem> {
    let id = group.identity();
    let mut seen: HashSet<Elem> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = group.mul(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

impl Subgroup {
    /// Smallest subgroup of `group` containing `gens`.
    pub fn generated(group: &Group, gens: &[Elem]) -> Result<Subgroup> {
        for g in gens {
            if !group.contains(g) {
                return Err(Error::domain(format!(
                    "generator {} is not an element of the ambient group",
                    group.fmt_elem_safe(g)
                )));
            }
        }
        let repr = match group.root() {
            Group::Finite(_) => {
                let mut m: Vec<usize> = close_finite(group, gens)
                    .into_iter()
                    .map(|e| match e {
                        Elem::Idx(i) => i,
                        Elem::Vec(_) => unreachable!(),
                    })
                    .collect();
                m.sort_unstable();
                SubRepr::Members(m)
            }
            Group::Abelian(a) => {
                let mut rows: IntMatrix = gens
                    .iter()
                    .map(|g| match g {
                        Elem::Vec(v) => v.clone(),
                        Elem::Idx(_) => unreachable!(),
                    })
                    .collect();
                rows.extend(a.relation_rows());
                SubRepr::Lattice(intmat::hnf(&rows, a.dim()))
            }
            Group::Sub(_) => unreachable!(),
        };
        Ok(Subgroup {
            ambient: group.clone(),
            repr,
        })
    }

    pub fn whole(group: &Group) -> Subgroup {
        let gens = group.generators();
        Subgroup::generated(group, &gens).expect("generators belong to the group")
    }

    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup::generated(group, &[]).unwrap()
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    fn contains_root(&self, x: &Elem) -> bool {
        match (&self.repr, x) {
            (SubRepr::Members(m), Elem::Idx(i)) => m.binary_search(i).is_ok(),
            (SubRepr::Lattice(l), Elem::Vec(v)) => {
                let n = v.len();
                intmat::contains(l, n, v)
            }
            _ => false,
        }
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.ambient.contains(x) && self.contains_root(x)
    }

    fn same_set(&self, other: &Subgroup) -> bool {
        match (&self.repr, &other.repr) {
            (SubRepr::Members(a), SubRepr::Members(b)) => a == b,
            (SubRepr::Lattice(a), SubRepr::Lattice(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_whole(&self) -> bool {
        self.as_group().same_elements(&self.ambient)
    }

    pub fn as_group(&self) -> Group {
        Group::Sub(Arc::new(self.clone()))
    }

    pub fn elements(&self) -> Option<Vec<Elem>> {
        self.as_group().elements()
    }

    pub fn order(&self) -> Option<usize> {
        self.as_group().order()
    }

    /// Generators of the subgroup (nonidentity, deterministic).
    pub fn generators(&self) -> Vec<Elem> {
        self.as_group().generators()
    }

    /// Root-level HNF lattice rows (abelian type only).
    pub fn lattice(&self) -> Option<&IntMatrix> {
        match &self.repr {
            SubRepr::Lattice(l) => Some(l),
            SubRepr::Members(_) => None,
        }
    }

    pub fn invariants(&self) -> Option<AbelianInvariants> {
        self.as_group().invariants()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }
}

impl Group {
    fn fmt_elem_safe(&self, x: &Elem) -> String {
        if self.root().contains(x) {
            self.fmt_elem(x)
        } else {
            format!("{x:?}")
        }
    }
}

#[derive(Debug, Clone)]
enum HomMap {
    /// Finite source: images in the source's element order.
    Table {
        index: HashMap<Elem, usize>,
        images: Vec<Elem>,
    },
    /// Abelian-type source: images of the presentation generators.
    Gens {
        pres: AbelianPresentation,
        images: Vec<Elem>,
    },
}

#[derive(Debug, Clone)]
pub struct GroupHom {
    src: Group,
    dst: Group,
    map: HomMap,
}

/// How a homomorphism is specified to [`hom_build`].
#[derive(Debug, Clone)]
pub enum HomAssignment {
    /// Full element map for a finite source.
    Elementwise(Vec<(Elem, Elem)>),
    /// Images of the presentation generators of an abelian-type source.
    GeneratorImages(Vec<Elem>),
}

pub fn hom_build(src: &Group, dst: &Group, assignment: &HomAssignment) -> Result<GroupHom> {
    match assignment {
        HomAssignment::Elementwise(pairs) => {
            let map: HashMap<&Elem, &Elem> = pairs.iter().map(|(a, b)| (a, b)).collect();
            let elems = src
                .elements()
                .ok_or_else(|| Error::domain("elementwise assignment needs a finite source"))?;
            if let Some(missing) = elems.iter().find(|e| !map.contains_key(e)) {
                return Err(Error::domain(format!(
                    "assignment does not cover {}",
                    src.fmt_elem(missing)
                )));
            }
            GroupHom::from_fn(src, dst, |x| map[x].clone())
        }
        HomAssignment::GeneratorImages(images) => {
            GroupHom::from_generator_images(src, dst, images.clone())
        }
    }
}

impl GroupHom {
    /// Tabulates `f` and verifies multiplicativity (exhaustively for finite
    /// sources, on defining relations otherwise).
    pub fn from_fn(src: &Group, dst: &Group, f: impl Fn(&Elem) -> Elem) -> Result<GroupHom> {
        if let Some(elems) = src.elements() {
            let images: Vec<Elem> = elems.iter().map(&f).collect();
            for img in &images {
                if !dst.contains(img) {
                    return Err(Error::domain(format!(
                        "image {} is not in the target group",
                        dst.fmt_elem_safe(img)
                    )));
                }
            }
            let index: HashMap<Elem, usize> = elems
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, e)| (e, i))
                .collect();
            for (i, x) in elems.iter().enumerate() {
                for (j, y) in elems.iter().enumerate() {
                    let xy = src.mul(x, y);
                    let got = &images[index[&xy]];
                    let expected = dst.mul(&images[i], &images[j]);
                    if *got != expected {
                        return Err(Error::NotHomomorphism {
                            x: src.fmt_elem(x),
                            y: src.fmt_elem(y),
                            got: dst.fmt_elem(got),
                            expected: dst.fmt_elem(&expected),
                        });
                    }
                }
            }
            let map = match src.presentation() {
                Some(pres) => {
                    let images = (0..pres.num_gens())
                        .map(|i| images[index[&pres.generator(i)]].clone())
                        .collect();
                    HomMap::Gens { pres, images }
                }
                None => HomMap::Table { index, images },
            };
            return Ok(GroupHom {
                src: src.clone(),
                dst: dst.clone(),
                map,
            });
        }
        let pres = src
            .presentation()
            .ok_or_else(|| Error::Unsupported("infinite non-abelian source group".into()))?;
        let images = (0..pres.num_gens())
            .map(|i| f(&pres.generator(i)))
            .collect();
        GroupHom::from_generator_images(src, dst, images)
    }

    /// Homomorphism from an abelian-type source fixed by generator images.
    pub fn from_generator_images(src: &Group, dst: &Group, images: Vec<Elem>) -> Result<GroupHom> {
        let pres = src
            .presentation()
            .ok_or_else(|| Error::domain("generator images need an abelian-type source"))?;
        if images.len() != pres.num_gens() {
            return Err(Error::domain(format!(
                "expected {} generator images, got {}",
                pres.num_gens(),
                images.len()
            )));
        }
        for img in &images {
            if !dst.contains(img) {
                return Err(Error::domain(format!(
                    "image {} is not in the target group",
                    dst.fmt_elem_safe(img)
                )));
            }
        }
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if !dst.commutes(&images[i], &images[j]) {
                    let (x, y) = (pres.generator(i), pres.generator(j));
                    return Err(Error::NotHomomorphism {
                        x: src.fmt_elem(&x),
                        y: src.fmt_elem(&y),
                        got: dst.fmt_elem(&dst.mul(&images[j], &images[i])),
                        expected: dst.fmt_elem(&dst.mul(&images[i], &images[j])),
                    });
                }
            }
        }
        let hom = GroupHom {
            src: src.clone(),
            dst: dst.clone(),
            map: HomMap::Gens { pres, images },
        };
        if let Some(elems) = src.elements() {
            // name a failing pair when the source is small enough to enumerate
            for x in &elems {
                for y in &elems {
                    let got = hom.apply(&src.mul(x, y));
                    let expected = dst.mul(&hom.apply(x), &hom.apply(y));
                    if got != expected {
                        return Err(Error::NotHomomorphism {
                            x: src.fmt_elem(x),
                            y: src.fmt_elem(y),
                            got: dst.fmt_elem(&got),
                            expected: dst.fmt_elem(&expected),
                        });
                    }
                }
            }
        }
        if let HomMap::Gens { pres, images } = &hom.map {
            for rel in pres.relations() {
                let val = hom.eval_coords(images, rel);
                if val != dst.identity() {
                    return Err(Error::NotHomomorphism {
                        x: format!("relation {rel:?}"),
                        y: "identity".into(),
                        got: dst.fmt_elem(&val),
                        expected: dst.fmt_elem(&dst.identity()),
                    });
                }
            }
        }
        Ok(hom)
    }

    pub fn identity(group: &Group) -> GroupHom {
        GroupHom::from_fn(group, group, Clone::clone).expect("identity is a homomorphism")
    }

    fn eval_coords(&self, images: &[Elem], c: &[i64]) -> Elem {
        let mut acc = self.dst.identity();
        for (img, &k) in images.iter().zip(c) {
            if k != 0 {
                acc = self.dst.mul(&acc, &self.dst.pow(img, k));
            }
        }
        acc
    }

    pub fn source(&self) -> &Group {
        &self.src
    }

    pub fn target(&self) -> &Group {
        &self.dst
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        match &self.map {
            HomMap::Table { index, images } => {
                let i = index
                    .get(x)
                    .unwrap_or_else(|| panic!("{x:?} is not in the source group"));
                images[*i].clone()
            }
            HomMap::Gens { pres, images } => {
                let c = pres
                    .coords(x)
                    .unwrap_or_else(|| panic!("{x:?} is not in the source group"));
                self.eval_coords(images, &c)
            }
        }
    }

    /// `x ↦ next(self(x))`
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if !self.dst.same_elements(&next.src) {
            return Err(Error::domain("homomorphisms are not composable"));
        }
        GroupHom::from_fn(&self.src, &next.dst, |x| next.apply(&self.apply(x)))
    }

    /// Same source, target and values on a generating set.
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.src.same_elements(&other.src)
            && self.dst.same_elements(&other.dst)
            && self
                .src
                .generators()
                .iter()
                .all(|g| self.apply(g) == other.apply(g))
    }

    /// Source and target have the same elements and every element is fixed.
    pub fn is_identity_map(&self) -> bool {
        self.src.same_elements(&self.dst)
            && self.src.generators().iter().all(|g| self.apply(g) == *g)
    }

    pub fn image(&self) -> Subgroup {
        let imgs: Vec<Elem> = self
            .src
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect();
        Subgroup::generated(&self.dst, &imgs).expect("images lie in the target")
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    /// Images of the source generators, paired with the generators.
    pub fn generator_images(&self) -> Vec<(Elem, Elem)> {
        self.src
            .generators()
            .into_iter()
            .map(|g| {
                let img = self.apply(&g);
                (g, img)
            })
            .collect()
    }
}

/// `s ↦ a⁻¹·s·a`
pub fn conjugation_hom(group: &Group, a: &Elem) -> Result<GroupHom> {
    group.check(a)?;
    GroupHom::from_fn(group, group, |s| group.conj(a, s))
}

pub fn subgroup_generated(group: &Group, gens: &[Elem]) -> Result<Subgroup> {
    Subgroup::generated(group, gens)
}

pub fn is_surjective(h: &GroupHom) -> bool {
    h.is_surjective()
}
