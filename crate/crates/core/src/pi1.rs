//! Finite diagrams of connected gradings, compatible families and the group
//! they form, which stands in for the fundamental group relative to the
//! supplied gradings. The full group needs every connected grading and is
//! not computed.

use std::sync::Arc;

use crate::covering::{find_identity_j_morphism, find_morphism_over, BaseAutomorphism, Search};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, ObjectSubset};
use crate::grading::{extend_trivial, Extension, Grading, GradingViolation};
use crate::groups::{AbelianInvariants, Elem, Group, GroupHom};
use crate::intmat;

/// Cap on brute-force enumeration sizes, from `GRADECAT_MAX_ENUM`.
pub fn max_enum() -> usize {
    std::env::var("GRADECAT_MAX_ENUM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}

#[derive(Debug, Clone)]
pub struct DiagramEdge {
    pub from: usize,
    pub to: usize,
    pub mu: GroupHom,
    /// Index of the declared base automorphism, `None` for `J = 1`.
    pub j: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct GradingDiagram {
    category: Arc<FinCategory>,
    base: usize,
    names: Vec<String>,
    nodes: Vec<Grading>,
    edges: Vec<DiagramEdge>,
}

/// Builds the diagram: every ordered pair of nodes (a node with itself
/// included) is searched with `J = 1` and with each declared `J`.
pub fn build_diagram(
    category: &Arc<FinCategory>,
    base: usize,
    nodes: Vec<(String, Grading)>,
    declared: &[BaseAutomorphism],
) -> Result<GradingDiagram> {
    if base >= category.num_objects() {
        return Err(Error::domain("base object out of range"));
    }
    let (names, nodes): (Vec<String>, Vec<Grading>) = nodes.into_iter().unzip();
    for (name, g) in names.iter().zip(&nodes) {
        if **g.category() != **category {
            return Err(Error::domain(format!(
                "grading {name} is defined on another category"
            )));
        }
        if !g.is_valid() {
            return Err(Error::Precondition(format!("grading {name} is not valid")));
        }
        let (sub, _) = g.walk_group(base)?;
        if !sub.is_whole() {
            let gens: Vec<String> = sub
                .generators()
                .iter()
                .map(|x| g.group().fmt_elem(x))
                .collect();
            return Err(Error::Precondition(format!(
                "grading {name} is not connected: its walk-degree subgroup at {} is generated by [{}]",
                category.object_label(base),
                gens.join(", ")
            )));
        }
    }
    let mut edges = Vec::new();
    for (i, x) in nodes.iter().enumerate() {
        for (k, y) in nodes.iter().enumerate() {
            if let Search::Found(m) = find_identity_j_morphism(x, y, base)? {
                edges.push(DiagramEdge {
                    from: i,
                    to: k,
                    mu: m.canonical_mu()?,
                    j: None,
                });
            }
            for (ji, j) in declared.iter().enumerate() {
                if let Search::Found(m) = find_morphism_over(x, y, base, j)? {
                    edges.push(DiagramEdge {
                        from: i,
                        to: k,
                        mu: m.canonical_mu()?,
                        j: Some(ji),
                    });
                }
            }
        }
    }
    Ok(GradingDiagram {
        category: category.clone(),
        base,
        names,
        nodes,
        edges,
    })
}

/// A family `{g_X}` violating `μ(g_from) = g_to` on one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeViolation {
    pub from: String,
    pub to: String,
    pub expected: String,
    pub found: String,
}

impl GradingDiagram {
    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nodes(&self) -> &[Grading] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn system(&self) -> ConstraintSystem {
        ConstraintSystem {
            groups: self.nodes.iter().map(|g| g.group().clone()).collect(),
            constraints: self
                .edges
                .iter()
                .map(|e| Constraint::Edge {
                    from: e.from,
                    to: e.to,
                    mu: e.mu.clone(),
                })
                .collect(),
        }
    }

    /// First edge on which the family is incompatible, if any.
    pub fn check_family(&self, family: &[Elem]) -> Result<Option<EdgeViolation>> {
        if family.len() != self.nodes.len() {
            return Err(Error::domain("the family must have one element per node"));
        }
        for (x, g) in family.iter().zip(&self.nodes) {
            g.group().check(x)?;
        }
        for e in &self.edges {
            let got = e.mu.apply(&family[e.from]);
            if got != family[e.to] {
                let g = self.nodes[e.to].group();
                return Ok(Some(EdgeViolation {
                    from: self.names[e.from].clone(),
                    to: self.names[e.to].clone(),
                    expected: g.fmt_elem(&got),
                    found: g.fmt_elem(&family[e.to]),
                }));
            }
        }
        Ok(None)
    }
}

pub fn check_compatible_family(
    d: &GradingDiagram,
    family: &[Elem],
) -> Result<Option<EdgeViolation>> {
    d.check_family(family)
}

#[derive(Debug, Clone)]
pub enum Constraint {
    /// `μ(g_from) = g_to`
    Edge {
        from: usize,
        to: usize,
        mu: GroupHom,
    },
    /// `g_node = 1`
    Pin { node: usize },
}

/// Families of group elements, one per node, subject to constraints.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub groups: Vec<Group>,
    pub constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn contains(&self, family: &[Elem]) -> bool {
        family.len() == self.groups.len()
            && family.iter().zip(&self.groups).all(|(x, g)| g.contains(x))
            && self.constraints.iter().all(|c| match c {
                Constraint::Edge { from, to, mu } => mu.apply(&family[*from]) == family[*to],
                Constraint::Pin { node } => family[*node] == self.groups[*node].identity(),
            })
    }

    pub fn identity(&self) -> Vec<Elem> {
        self.groups.iter().map(Group::identity).collect()
    }

    pub fn product(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        self.groups
            .iter()
            .zip(a.iter().zip(b))
            .map(|(g, (x, y))| g.mul(x, y))
            .collect()
    }

    pub fn inverse(&self, a: &[Elem]) -> Vec<Elem> {
        self.groups.iter().zip(a).map(|(g, x)| g.inv(x)).collect()
    }

    pub fn with_pin(&self, node: usize) -> ConstraintSystem {
        let mut out = self.clone();
        out.constraints.push(Constraint::Pin { node });
        out
    }
}

#[derive(Debug, Clone)]
pub enum Realization {
    /// Every compatible family, in lexicographic order of the node groups.
    Finite {
        elements: Vec<Vec<Elem>>,
        invariants: Option<AbelianInvariants>,
    },
    /// Invariant factors plus families generating the group.
    Abelian {
        invariants: AbelianInvariants,
        generators: Vec<Vec<Elem>>,
    },
    /// No classification; membership is decided by the constraints.
    Constraints,
}

#[derive(Debug, Clone)]
pub struct LimitGroup {
    pub system: ConstraintSystem,
    pub realization: Realization,
    pub notes: Vec<String>,
}

impl LimitGroup {
    pub fn kind(&self) -> &'static str {
        match self.realization {
            Realization::Finite { .. } => "finite",
            Realization::Abelian { .. } => "abelian",
            Realization::Constraints => "constraints",
        }
    }

    pub fn contains(&self, family: &[Elem]) -> bool {
        self.system.contains(family)
    }

    pub fn invariants(&self) -> Option<&AbelianInvariants> {
        match &self.realization {
            Realization::Finite { invariants, .. } => invariants.as_ref(),
            Realization::Abelian { invariants, .. } => Some(invariants),
            Realization::Constraints => None,
        }
    }

    pub fn elements(&self) -> Option<&[Vec<Elem>]> {
        match &self.realization {
            Realization::Finite { elements, .. } => Some(elements),
            _ => None,
        }
    }

    /// `None` when only a membership test is available.
    pub fn is_trivial(&self) -> Option<bool> {
        match &self.realization {
            Realization::Finite { elements, .. } => Some(elements.len() == 1),
            Realization::Abelian { invariants, .. } => {
                Some(invariants.free_rank == 0 && invariants.torsion.is_empty())
            }
            Realization::Constraints => None,
        }
    }
}

pub fn relative_pi1(d: &GradingDiagram) -> Result<LimitGroup> {
    solve_system(&d.system())
}

/// The group of families satisfying a constraint system.
pub fn solve_system(system: &ConstraintSystem) -> Result<LimitGroup> {
    let all_abelian = system.groups.iter().all(Group::is_abelian_type);
    let all_finite = system.groups.iter().all(Group::is_finite);
    let mut notes = Vec::new();
    let abelian = if all_abelian {
        Some(abelian_limit(system)?)
    } else {
        None
    };
    if all_finite {
        let size = system
            .groups
            .iter()
            .map(|g| g.order().unwrap_or(usize::MAX))
            .try_fold(1usize, |acc, n| acc.checked_mul(n));
        match size {
            Some(s) if s <= max_enum() => {
                let elements = enumerate_finite(system);
                return Ok(LimitGroup {
                    system: system.clone(),
                    realization: Realization::Finite {
                        elements,
                        invariants: abelian.map(|(inv, _)| inv),
                    },
                    notes,
                });
            }
            _ => notes.push(format!(
                "product of node groups exceeds the enumeration cap {}; elements not listed",
                max_enum()
            )),
        }
    }
    if let Some((invariants, generators)) = abelian {
        return Ok(LimitGroup {
            system: system.clone(),
            realization: Realization::Abelian {
                invariants,
                generators,
            },
            notes,
        });
    }
    notes.push("mixed finite non-abelian and infinite node groups: membership test only".into());
    Ok(LimitGroup {
        system: system.clone(),
        realization: Realization::Constraints,
        notes,
    })
}

fn enumerate_finite(system: &ConstraintSystem) -> Vec<Vec<Elem>> {
    let lists: Vec<Vec<Elem>> = system
        .groups
        .iter()
        .map(|g| g.elements().unwrap())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; lists.len()];
    loop {
        let fam: Vec<Elem> = idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
        if system.contains(&fam) {
            out.push(fam);
        }
        let mut k = lists.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Kernel of `A → T`, `x ↦ (μ_e(x_from) - x_to, x_pinned)`, where `A` is the
/// product of the node groups, as a lattice modulo the relations of `A`.
fn abelian_limit(system: &ConstraintSystem) -> Result<(AbelianInvariants, Vec<Vec<Elem>>)> {
    let pres: Vec<_> = system
        .groups
        .iter()
        .map(|g| {
            g.presentation()
                .ok_or_else(|| Error::Unsupported("non-abelian node group".into()))
        })
        .collect::<Result<_>>()?;
    let offsets: Vec<usize> = pres
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.num_gens();
            Some(o)
        })
        .collect();
    let m: usize = pres.iter().map(|p| p.num_gens()).sum();
    // target blocks, one per constraint
    let blocks: Vec<usize> = system
        .constraints
        .iter()
        .map(|c| match c {
            Constraint::Edge { to, .. } => *to,
            Constraint::Pin { node } => *node,
        })
        .collect();
    let block_off: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, &t| {
            let o = *acc;
            *acc += pres[t].num_gens();
            Some(o)
        })
        .collect();
    let tcols: usize = blocks.iter().map(|&t| pres[t].num_gens()).sum();
    let mut phi: intmat::IntMatrix = vec![vec![0; tcols]; m];
    for (ci, c) in system.constraints.iter().enumerate() {
        let bo = block_off[ci];
        match c {
            Constraint::Edge { from, to, mu } => {
                for j in 0..pres[*from].num_gens() {
                    let img = mu.apply(&pres[*from].generator(j));
                    let coords = pres[*to].coords(&img).ok_or_else(|| {
                        Error::Invariant("edge map leaves its target group".into())
                    })?;
                    for (k, v) in coords.iter().enumerate() {
                        phi[offsets[*from] + j][bo + k] += v;
                    }
                }
                for k in 0..pres[*to].num_gens() {
                    phi[offsets[*to] + k][bo + k] -= 1;
                }
            }
            Constraint::Pin { node } => {
                for k in 0..pres[*node].num_gens() {
                    phi[offsets[*node] + k][bo + k] += 1;
                }
            }
        }
    }
    // relations of the target blocks
    let mut stacked = phi.clone();
    for (ci, &t) in blocks.iter().enumerate() {
        for r in pres[t].relations() {
            let mut row = vec![0; tcols];
            row[block_off[ci]..block_off[ci] + r.len()].copy_from_slice(r);
            stacked.push(row);
        }
    }
    let kernel: intmat::IntMatrix = intmat::left_kernel(&stacked, tcols)
        .into_iter()
        .map(|r| r[..m].to_vec())
        .collect();
    let basis = intmat::hnf(&kernel, m);
    // relations of A, expressed in the kernel basis
    let mut rel_rows = Vec::new();
    for (i, p) in pres.iter().enumerate() {
        for r in p.relations() {
            let mut row = vec![0; m];
            row[offsets[i]..offsets[i] + r.len()].copy_from_slice(r);
            let c = intmat::solve(&basis, m, &row).ok_or_else(|| {
                Error::Invariant("relations of the product are not compatible families".into())
            })?;
            rel_rows.push(c);
        }
    }
    let k = basis.len();
    let factors = intmat::invariant_factors(&rel_rows, k);
    let invariants = AbelianInvariants {
        free_rank: k - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).collect(),
    };
    let generators = basis
        .iter()
        .map(|row| {
            pres.iter()
                .enumerate()
                .map(|(i, p)| p.element(&row[offsets[i]..offsets[i] + p.num_gens()]))
                .collect::<Vec<_>>()
        })
        .filter(|fam: &Vec<Elem>| {
            fam.iter()
                .zip(&system.groups)
                .any(|(x, g)| *x != g.identity())
        })
        .collect();
    Ok((invariants, generators))
}

/// How one node of the diagram on `B` was matched in the diagram on `D`.
#[derive(Debug, Clone)]
pub struct KappaMatch {
    pub node: String,
    /// Matching node of the `D` diagram, if any.
    pub matched: Option<String>,
    /// The base-component grading of the restriction.
    pub component: Grading,
}

#[derive(Debug, Clone)]
pub struct Unrealized {
    pub node: String,
    /// Result of extending the node's grading to `B` by trivial degrees.
    pub extension: std::result::Result<Vec<GradingViolation>, String>,
}

#[derive(Debug, Clone)]
pub struct KappaReport {
    pub matches: Vec<KappaMatch>,
    pub unrealized: Vec<Unrealized>,
    /// Images of compatible families are compatible.
    pub maps_into_limit: bool,
    /// Checked on all pairs when the source limit is listed.
    pub homomorphism: bool,
    /// Every `D` node arises from some node of the `B` diagram.
    pub criterion_holds: bool,
    /// Injectivity of the induced map on these diagrams, when decidable.
    pub injective: Option<bool>,
    /// `κ` on the listed or generating families of the `D` limit.
    pub images: Vec<(Vec<Elem>, Vec<Elem>)>,
}

/// The map from compatible families over `dD` to those over `dB` induced by
/// restriction to the full subcategory on `objs`.
pub fn kappa_relative(
    db: &GradingDiagram,
    objs: &ObjectSubset,
    dd: &GradingDiagram,
) -> Result<KappaReport> {
    let cat = db.category();
    let d = cat.full_subcategory(objs)?;
    if d != **dd.category() {
        return Err(Error::domain(
            "the second diagram is not on the full subcategory of these objects",
        ));
    }
    if !d.is_connected() {
        return Err(Error::Precondition(
            "the subcategory is not connected".into(),
        ));
    }
    let b0d = objs.position(db.base()).ok_or_else(|| {
        Error::Precondition("the subcategory must contain the base object".into())
    })?;
    if dd.base() != b0d {
        return Err(Error::domain("the diagrams use different base objects"));
    }
    let mut matches = Vec::new();
    let mut target_of: Vec<Option<usize>> = Vec::new();
    for (name, x) in db.names().iter().zip(db.nodes()) {
        let (_, comp) = x.restrict(objs)?.base_component(b0d)?;
        let mut found = None;
        for (k, y) in dd.nodes().iter().enumerate() {
            if !comp.group().same_elements(y.group()) {
                continue;
            }
            if let Search::Found(m) = find_identity_j_morphism(&comp, y, b0d)? {
                if m.canonical_mu()?.is_identity_map() {
                    found = Some(k);
                    break;
                }
            }
        }
        target_of.push(found);
        matches.push(KappaMatch {
            node: name.clone(),
            matched: found.map(|k| dd.names()[k].clone()),
            component: comp,
        });
    }
    let missing: Vec<&KappaMatch> = matches.iter().filter(|m| m.matched.is_none()).collect();
    if let Some(m) = missing.first() {
        return Err(Error::Precondition(format!(
            "the restricted component of {} matches no node of the subcategory diagram",
            m.node
        )));
    }
    let target_of: Vec<usize> = target_of.into_iter().map(Option::unwrap).collect();
    let mut unrealized = Vec::new();
    for (k, (name, y)) in dd.names().iter().zip(dd.nodes()).enumerate() {
        if target_of.contains(&k) {
            continue;
        }
        let extension = match extend_trivial(y, cat, objs) {
            Ok(Extension::Diagnostic(v)) => Ok(v),
            Ok(Extension::Extended(_)) => Ok(Vec::new()),
            Err(e) => Err(e.to_string()),
        };
        unrealized.push(Unrealized {
            node: name.clone(),
            extension,
        });
    }
    let kappa = |fam: &[Elem]| -> Vec<Elem> { target_of.iter().map(|&k| fam[k].clone()).collect() };
    let limit_d = relative_pi1(dd)?;
    let limit_b = db.system();
    let sample: Vec<Vec<Elem>> = match &limit_d.realization {
        Realization::Finite { elements, .. } => elements.clone(),
        Realization::Abelian { generators, .. } => generators.clone(),
        Realization::Constraints => Vec::new(),
    };
    let images: Vec<(Vec<Elem>, Vec<Elem>)> =
        sample.iter().map(|f| (f.clone(), kappa(f))).collect();
    let maps_into_limit = images.iter().all(|(_, img)| limit_b.contains(img))
        && limit_b.contains(&kappa(&limit_d.system.identity()))
        && kappa(&limit_d.system.identity()) == limit_b.identity();
    let mut homomorphism = true;
    if let Realization::Finite { elements, .. } = &limit_d.realization {
        if elements.len().saturating_mul(elements.len()) <= max_enum() {
            for a in elements {
                for b in elements {
                    let lhs = kappa(&limit_d.system.product(a, b));
                    let rhs = limit_b.product(&kappa(a), &kappa(b));
                    if lhs != rhs {
                        homomorphism = false;
                    }
                }
            }
        }
    }
    // kernel: families whose realized coordinates are all trivial
    let mut pinned = limit_d.system.clone();
    for &k in &target_of {
        pinned = pinned.with_pin(k);
    }
    let kernel = solve_system(&pinned)?;
    Ok(KappaReport {
        matches,
        criterion_holds: unrealized.is_empty(),
        unrealized,
        maps_into_limit,
        homomorphism,
        injective: kernel.is_trivial(),
        images,
    })
}

#[derive(Debug, Clone)]
pub struct ChoiceReport {
    /// The two spanning trees use different edges.
    pub trees_differ: bool,
    pub morphism_found: bool,
    pub mu_is_identity: bool,
}

impl ChoiceReport {
    pub fn holds(&self) -> bool {
        self.morphism_found && self.mu_is_identity
    }
}

/// Base components of `g↓objs` built from the default tree and from a
/// shuffled one are related by a morphism whose canonical map is the identity.
pub fn verify_choice_independence(
    g: &Grading,
    objs: &ObjectSubset,
    b0: usize,
    seed: u64,
) -> Result<ChoiceReport> {
    let b0d = objs.position(b0).ok_or_else(|| {
        Error::Precondition("the subcategory must contain the base object".into())
    })?;
    let r = g.restrict(objs)?;
    let (_, c1) = r.base_component_seeded(b0d, None)?;
    let (_, c2) = r.base_component_seeded(b0d, Some(seed))?;
    let (morphism_found, mu_is_identity) = match find_identity_j_morphism(&c1, &c2, b0d)? {
        Search::Found(m) => (true, m.canonical_mu()?.is_identity_map()),
        Search::Absent(_) => (false, false),
    };
    let t1 = r.walk_tree(b0d, None)?;
    let t2 = r.walk_tree(b0d, Some(seed))?;
    Ok(ChoiceReport {
        trees_differ: t1.tree_edge != t2.tree_edge,
        morphism_found,
        mu_is_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z(n: i64) -> Elem {
        Elem::Vec(vec![n])
    }

    fn kc2_diagram(names: &[&str]) -> GradingDiagram {
        let all = [
            ("triv", fixtures::kc2_trivial()),
            ("Z", fixtures::kc2_z()),
            ("Z2", fixtures::kc2_z2()),
            ("C2", fixtures::kc2_c2()),
        ];
        let nodes: Vec<(String, Grading)> = all
            .into_iter()
            .filter(|(n, _)| names.contains(n))
            .map(|(n, g)| (n.to_string(), g))
            .collect();
        let cat = nodes[0].1.category().clone();
        build_diagram(&cat, 0, nodes, &[]).unwrap()
    }

    fn edge_pairs(d: &GradingDiagram) -> Vec<(String, String)> {
        d.edges()
            .iter()
            .filter(|e| e.from != e.to)
            .map(|e| (d.names()[e.from].clone(), d.names()[e.to].clone()))
            .collect()
    }

    #[test]
    fn single_trivial_node() {
        let d = kc2_diagram(&["triv"]);
        assert_eq!(d.edges().len(), 1);
        assert!(d.edges()[0].mu.is_identity_map());
        let l = relative_pi1(&d).unwrap();
        assert_eq!(l.is_trivial(), Some(true));
    }

    #[test]
    fn z_and_mod_two() {
        let d = kc2_diagram(&["Z", "Z2"]);
        assert_eq!(edge_pairs(&d), vec![("Z".to_string(), "Z2".to_string())]);
        assert_eq!(d.check_family(&[z(3), z(1)]).unwrap(), None);
        let v = d.check_family(&[z(3), z(0)]).unwrap().unwrap();
        assert_eq!((v.from.as_str(), v.to.as_str()), ("Z", "Z2"));
        assert_eq!(d.check_family(&[z(0), z(0)]).unwrap(), None);
    }

    #[test]
    fn x_basis_and_t_basis_have_no_edges() {
        let d = kc2_diagram(&["Z2", "C2"]);
        assert!(edge_pairs(&d).is_empty());
    }

    #[test]
    fn full_kc2_diagram() {
        let d = kc2_diagram(&["triv", "Z", "Z2", "C2"]);
        let mut pairs = edge_pairs(&d);
        pairs.sort();
        let want: Vec<(String, String)> =
            [("C2", "triv"), ("Z", "Z2"), ("Z", "triv"), ("Z2", "triv")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
        assert_eq!(pairs, want);
        let l = relative_pi1(&d).unwrap();
        assert_eq!(
            l.invariants(),
            Some(&AbelianInvariants {
                free_rank: 1,
                torsion: vec![2]
            })
        );
    }

    #[test]
    fn isolated_finite_nodes() {
        let system = ConstraintSystem {
            groups: vec![Group::cyclic(2), Group::cyclic(3)],
            constraints: vec![],
        };
        let l = solve_system(&system).unwrap();
        assert_eq!(l.elements().unwrap().len(), 6);
        assert_eq!(l.invariants().unwrap().torsion, vec![6]);
    }

    #[test]
    fn non_connected_node_is_rejected() {
        let g = fixtures::kronecker_z(0, 2);
        let cat = g.category().clone();
        let err = build_diagram(&cat, 0, vec![("even".into(), g)], &[]).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("[2]")));
    }

    #[test]
    fn kappa_on_e4() {
        let e4 = Arc::new(fixtures::e4());
        let u = ObjectSubset::from_labels(&e4, &["u"]).unwrap();
        let gd = fixtures::kc2_z_on(e4.full_subcategory(&u).unwrap());
        let ext = match extend_trivial(&gd, &e4, &u).unwrap() {
            Extension::Extended(g) => g,
            Extension::Diagnostic(d) => panic!("{d:?}"),
        };
        let db = build_diagram(&e4, 0, vec![("ext".into(), ext)], &[]).unwrap();
        let dd = build_diagram(&gd.category().clone(), 0, vec![("Z".into(), gd)], &[]).unwrap();
        let r = kappa_relative(&db, &u, &dd).unwrap();
        assert!(r.criterion_holds && r.maps_into_limit && r.homomorphism);
        assert_eq!(r.injective, Some(true));
        assert_eq!(r.matches[0].matched.as_deref(), Some("Z"));
    }

    #[test]
    fn kappa_on_e3_reports_unrealized_node() {
        let e3 = Arc::new(fixtures::e3());
        let u = ObjectSubset::from_labels(&e3, &["u"]).unwrap();
        let c2 = fixtures::e3_u_c2();
        let d_cat = c2.category().clone();
        let triv_d = Grading::trivial(d_cat.clone());
        let db = build_diagram(
            &e3,
            0,
            vec![("triv".into(), Grading::trivial(e3.clone()))],
            &[],
        )
        .unwrap();
        let dd = build_diagram(
            &d_cat,
            0,
            vec![("triv".into(), triv_d), ("C2".into(), c2)],
            &[],
        )
        .unwrap();
        let r = kappa_relative(&db, &u, &dd).unwrap();
        assert!(!r.criterion_holds);
        assert_eq!(r.unrealized.len(), 1);
        assert_eq!(r.unrealized[0].node, "C2");
        let diag = r.unrealized[0].extension.as_ref().unwrap();
        assert!(diag.iter().any(
            |v| matches!(v, GradingViolation::Composite { f, g, .. } if f == "t" && g == "f")
        ));
        assert_eq!(r.injective, Some(false));
    }

    #[test]
    fn kappa_identity_when_subcategory_is_everything() {
        let d = kc2_diagram(&["triv", "Z", "Z2", "C2"]);
        let all = ObjectSubset::all(d.category());
        let r = kappa_relative(&d, &all, &d).unwrap();
        assert!(r.criterion_holds);
        assert_eq!(r.injective, Some(true));
        for (src, img) in &r.images {
            assert_eq!(src, img);
        }
    }

    #[test]
    fn choice_independence_on_kronecker() {
        let g = fixtures::kronecker_z(0, 1);
        let all = ObjectSubset::all(g.category());
        let mut differed = false;
        for seed in 0..16 {
            let r = verify_choice_independence(&g, &all, 0, seed).unwrap();
            assert!(r.holds());
            differed |= r.trees_differ;
        }
        assert!(differed);
    }

    #[test]
    fn choice_independence_single_object() {
        let g = fixtures::kc2_z();
        let all = ObjectSubset::all(g.category());
        let r = verify_choice_independence(&g, &all, 0, 7).unwrap();
        assert!(r.holds() && !r.trees_differ);
    }
}
