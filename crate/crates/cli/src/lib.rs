//! Command-line front end. Every subcommand loads and schema-checks all of
//! its input files first, then calls one library operation and reports the
//! result as `{command, status, payload, warnings}`.
//!
//! Exit codes: 0 ok, 1 mathematical invalidity (or an unsupported request),
//! 2 I/O or schema error.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gradecat::covering::{find_identity_j_morphism, find_morphism_over, smash_product, Search};
use gradecat::error::Error;
use gradecat::fincat::{FinCategory, ObjectSubset};
use gradecat::grading::{extend_trivial, ConjugationFamily, Extension, Grading};
use gradecat::payload;
use gradecat::pi1::{kappa_relative, relative_pi1, verify_choice_independence};
use gradecat::schema::{self, elem_to_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Debug, Parser)]
#[command(
    name = "gradecat",
    version,
    about = "Group-graded finite linear categories and their smash coverings"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CatArg {
    /// Category JSON file.
    #[arg(long)]
    pub category: PathBuf,
}

#[derive(Debug, Args)]
pub struct GradedArgs {
    #[arg(long)]
    pub category: PathBuf,
    /// Grading JSON file.
    #[arg(long)]
    pub grading: PathBuf,
}

#[derive(Debug, Args)]
pub struct BasedArgs {
    #[command(flatten)]
    pub graded: GradedArgs,
    /// Base object label (defaults to the first object).
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category axioms.
    ValidateCategory(CatArg),
    /// Check that a grading is multiplicative on degrees.
    ValidateGrading(GradedArgs),
    /// Is the walk-degree subgroup at the base the whole group?
    Connected(BasedArgs),
    /// Walk-degree subgroup at the base object and the tree walk degrees.
    WalkGroup(BasedArgs),
    /// Degrees of all homogeneous walks between two objects.
    Coset {
        #[command(flatten)]
        graded: GradedArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Restrict a grading to the full subcategory on some objects.
    Restrict {
        #[command(flatten)]
        graded: GradedArgs,
        /// Comma-separated object labels.
        #[arg(long)]
        sub: String,
    },
    /// Conjugate a grading by a family of group elements.
    Conjugate {
        #[command(flatten)]
        graded: GradedArgs,
        /// `object=element`, repeated; unlisted objects get the identity.
        #[arg(long = "value")]
        values: Vec<String>,
    },
    /// Connected grading whose smash is the component of the base object.
    Component(BasedArgs),
    /// Extend a grading of a full convex subcategory by trivial degrees.
    ExtendConvex {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long)]
        sub: String,
        /// Grading of the full subcategory on `--sub`.
        #[arg(long)]
        grading: PathBuf,
    },
    /// Materialize the smash product (finite groups only).
    Smash(GradedArgs),
    /// Check that the smash projection is a Galois covering.
    VerifyGalois(BasedArgs),
    /// Search for a covering morphism between two smash products.
    FindMorphism(MorphismArgs),
    /// Canonical group map of the covering morphism, if one exists.
    Mu(MorphismArgs),
    /// Build the diagram of gradings described by a diagram file.
    Diagram(DiagramArg),
    /// Group of compatible families of a diagram.
    Pi1(DiagramArg),
    /// Map induced by restriction to a full subcategory.
    Kappa {
        /// Diagram on the whole category.
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        sub: String,
        /// Diagram on the full subcategory.
        #[arg(long)]
        sub_diagram: PathBuf,
    },
    /// Is the full subcategory on some objects convex?
    ConvexCheck {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long)]
        sub: String,
    },
    /// Base components built from two spanning trees agree.
    ChoiceIndependence {
        #[command(flatten)]
        based: BasedArgs,
        /// Objects of the full subcategory (defaults to all).
        #[arg(long)]
        sub: Option<String>,
        /// Seed for the second spanning tree.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the canonical serialization of a category or grading file.
    Roundtrip {
        #[arg(long)]
        category: PathBuf,
        /// Grading over `--category`; when given, it is the file round-tripped.
        #[arg(long)]
        grading: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct MorphismArgs {
    #[arg(long)]
    pub category: PathBuf,
    /// Grading of the source smash.
    #[arg(long)]
    pub source: PathBuf,
    /// Grading of the target smash.
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long)]
    pub base: Option<String>,
    /// Base automorphism file; the identity when omitted.
    #[arg(long = "j")]
    pub j: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagramArg {
    #[arg(long)]
    pub diagram: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Invalid,
    Unsupported,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Invalid => "invalid",
            Status::Unsupported => "unsupported",
            Status::Error => "error",
        }
    }
}

pub struct Report {
    pub status: Status,
    pub payload: Value,
    pub warnings: Vec<String>,
}

impl Report {
    fn ok(payload: Value) -> Self {
        Report {
            status: Status::Ok,
            payload,
            warnings: Vec::new(),
        }
    }

    fn check(valid: bool, payload: Value) -> Self {
        Report {
            status: if valid { Status::Ok } else { Status::Invalid },
            payload,
            warnings: Vec::new(),
        }
    }

    fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

pub struct Output {
    pub text: String,
    pub exit_code: i32,
    pub report: Option<Value>,
}

const RELATIVE: &str =
    "computed relative to the supplied gradings and declared base automorphisms; \
the full fundamental group needs every connected grading and is not computed";

pub fn run(cli: &Cli) -> Output {
    if let Command::Roundtrip { category, grading } = &cli.command {
        return match roundtrip(category, grading.as_deref()) {
            Ok(text) => Output {
                text,
                exit_code: 0,
                report: None,
            },
            Err(e) => render(cli, "roundtrip", error_report(&e)),
        };
    }
    let name = command_name(&cli.command);
    let report = dispatch(&cli.command).unwrap_or_else(|e| error_report(&e));
    render(cli, name, report)
}

fn render(cli: &Cli, name: &str, r: Report) -> Output {
    let exit_code = match r.status {
        Status::Ok => 0,
        Status::Invalid | Status::Unsupported => 1,
        Status::Error => 2,
    };
    let value = json!({
        "command": name,
        "status": r.status.as_str(),
        "payload": r.payload,
        "warnings": r.warnings,
    });
    let text = match cli.format {
        Format::Json => schema::to_canonical(&value),
        Format::Human => human(name, &r),
    };
    Output {
        text,
        exit_code,
        report: Some(value),
    }
}

fn human(name: &str, r: &Report) -> String {
    let mut out = format!("{name}: {}\n", r.status.as_str());
    if let Value::Object(m) = &r.payload {
        for (k, v) in m {
            let s = serde_json::to_string(v).unwrap();
            if s.len() <= 100 {
                out.push_str(&format!("  {k}: {s}\n"));
            } else {
                out.push_str(&format!("  {k}:\n"));
                for line in serde_json::to_string_pretty(v).unwrap().lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
    }
    for w in &r.warnings {
        out.push_str(&format!("  warning: {w}\n"));
    }
    out
}

fn error_report(e: &Error) -> Report {
    let (status, kind) = match e {
        Error::Schema { .. } => (Status::Error, "schema"),
        Error::Io(_) => (Status::Error, "io"),
        Error::Domain(_) => (Status::Error, "domain"),
        Error::Unsupported(_) => (Status::Unsupported, "unsupported"),
        Error::Precondition(_) => (Status::Invalid, "precondition"),
        Error::MalformedGrading(_) => (Status::Invalid, "malformed-grading"),
        Error::NotHomomorphism { .. } => (Status::Invalid, "not-homomorphism"),
        Error::Invariant(_) => (Status::Invalid, "invariant"),
    };
    let mut payload = json!({"error": kind, "message": e.to_string()});
    if let Error::Schema { pointer, .. } = e {
        payload["pointer"] = json!(pointer);
    }
    Report {
        status,
        payload,
        warnings: Vec::new(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::ValidateCategory(_) => "validate-category",
        Command::ValidateGrading(_) => "validate-grading",
        Command::Connected(_) => "connected",
        Command::WalkGroup(_) => "walk-group",
        Command::Coset { .. } => "coset",
        Command::Restrict { .. } => "restrict",
        Command::Conjugate { .. } => "conjugate",
        Command::Component(_) => "component",
        Command::ExtendConvex { .. } => "extend-convex",
        Command::Smash(_) => "smash",
        Command::VerifyGalois(_) => "verify-galois",
        Command::FindMorphism(_) => "find-morphism",
        Command::Mu(_) => "mu",
        Command::Diagram(_) => "diagram",
        Command::Pi1(_) => "pi1",
        Command::Kappa { .. } => "kappa",
        Command::ConvexCheck { .. } => "convex-check",
        Command::ChoiceIndependence { .. } => "choice-independence",
        Command::Roundtrip { .. } => "roundtrip",
    }
}

// ---------------------------------------------------------------- loading

fn load_category(p: &Path) -> gradecat::Result<Arc<FinCategory>> {
    schema::read_category(p).map(Arc::new)
}

fn load_graded(a: &GradedArgs) -> gradecat::Result<Grading> {
    let cat = load_category(&a.category)?;
    schema::read_grading(&a.grading, &cat)
}

fn object(cat: &FinCategory, label: Option<&str>) -> gradecat::Result<usize> {
    match label {
        None => Ok(0),
        Some(l) => cat.object_index(l),
    }
}

fn subset(cat: &FinCategory, labels: &str) -> gradecat::Result<ObjectSubset> {
    let ls: Vec<&str> = labels
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    ObjectSubset::from_labels(cat, &ls)
}

// ---------------------------------------------------------------- commands

fn dispatch(c: &Command) -> gradecat::Result<Report> {
    match c {
        Command::ValidateCategory(a) => {
            let cat = load_category(&a.category)?;
            let vs = cat.validate();
            Ok(Report::check(
                vs.is_empty(),
                json!({
                    "valid": vs.is_empty(),
                    "violations": vs.iter().map(payload::category_violation).collect::<Vec<_>>(),
                    "objects": cat.objects(),
                    "connected": cat.is_connected(),
                }),
            ))
        }
        Command::ValidateGrading(a) => {
            let g = load_graded(a)?;
            let vs = g.validate();
            Ok(Report::check(
                vs.is_empty(),
                json!({
                    "valid": vs.is_empty(),
                    "violations": vs.iter().map(schema::violation_to_json).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Connected(a) => {
            let g = load_graded(&a.graded)?;
            let b0 = object(g.category(), a.base.as_deref())?;
            let (sub, _) = g.walk_group(b0)?;
            Ok(Report::ok(
                json!({"connected": sub.is_whole(), "subgroup": payload::subgroup(&sub)}),
            ))
        }
        Command::WalkGroup(a) => {
            let g = load_graded(&a.graded)?;
            let b0 = object(g.category(), a.base.as_deref())?;
            let (sub, v) = g.walk_group(b0)?;
            Ok(Report::ok(json!({
                "subgroup": payload::subgroup(&sub),
                "tree_degrees": payload::family(g.category(), g.group(), &v),
            })))
        }
        Command::Coset { graded, from, to } => {
            let g = load_graded(graded)?;
            let cat = g.category();
            let (b1, b2) = (cat.object_index(from)?, cat.object_index(to)?);
            let coset = g.walk_degree_coset(b1, b2)?;
            let (sub, v) = g.walk_group(b1)?;
            let grp = g.group();
            let mut p = json!({
                "representative": elem_to_json(grp, &grp.mul(v.get(b2), &grp.inv(v.get(b1)))),
                "subgroup": payload::subgroup(&sub),
            });
            if let Some(els) = coset.elements() {
                p["elements"] = Value::Array(els.iter().map(|x| elem_to_json(grp, x)).collect());
            }
            Ok(Report::ok(p))
        }
        Command::Restrict { graded, sub } => {
            let g = load_graded(graded)?;
            let objs = subset(g.category(), sub)?;
            let r = g.restrict(&objs)?;
            Ok(Report::check(
                r.is_valid(),
                json!({
                    "category": schema::category_to_json(r.category()),
                    "grading": schema::grading_to_json(&r),
                    "valid": r.is_valid(),
                }),
            ))
        }
        Command::Conjugate { graded, values } => {
            let g = load_graded(graded)?;
            let cat = g.category();
            let grp = g.group();
            let mut a = vec![grp.identity(); cat.num_objects()];
            for item in values {
                let (o, e) = item.split_once('=').ok_or_else(|| {
                    Error::domain(format!("--value {item:?} is not object=element"))
                })?;
                a[cat.object_index(o.trim())?] = grp.parse_elem(e.trim())?;
            }
            let fam = ConjugationFamily::new(a, 0);
            let c = g.conjugate(&fam)?;
            Ok(Report::ok(json!({
                "family": payload::family(cat, grp, &fam),
                "grading": schema::grading_to_json(&c),
            })))
        }
        Command::Component(a) => {
            let g = load_graded(&a.graded)?;
            let b0 = object(g.category(), a.base.as_deref())?;
            let (v, c) = g.base_component(b0)?;
            let mut p = json!({
                "family": payload::family(g.category(), g.group(), &v),
                "grading": schema::grading_to_json(&c),
                "connected": c.is_connected_grading(b0)?,
            });
            let mut report = Report::ok(Value::Null);
            if g.group().is_finite() {
                let check = gradecat::covering::check_base_component(&g, b0)?;
                p["smash_component"] = json!({
                    "objects": check.component_objects,
                    "isomorphic": check.isomorphic.clone().err().map_or(json!(true), |e| json!(e)),
                    "deck_group": check.deck_group.iter().map(|x| elem_to_json(g.group(), x)).collect::<Vec<_>>(),
                    "deck_group_is_walk_group": check.deck_group_is_walk_group,
                });
                if check.isomorphic.is_err() || !check.deck_group_is_walk_group {
                    report.status = Status::Invalid;
                }
            } else {
                report = report.warn("infinite group: the smash component is not materialized");
            }
            report.payload = p;
            Ok(report)
        }
        Command::ExtendConvex { cat, sub, grading } => {
            let cat = load_category(&cat.category)?;
            let objs = subset(&cat, sub)?;
            let d = Arc::new(cat.full_subcategory(&objs)?);
            let gd = schema::read_grading(grading, &d)?;
            let convex = cat.is_convex(&objs);
            if !convex.convex {
                let (f, g) = convex.witness.unwrap();
                return Ok(Report::check(
                    false,
                    json!({"status": "not-convex", "witness": {"f": cat.basis_label(f), "g": cat.basis_label(g)}}),
                ));
            }
            let ext = extend_trivial(&gd, &cat, &objs)?;
            let mut p = schema::extension_to_json(&ext);
            let r = match &ext {
                Extension::Extended(e) => {
                    p["connected"] = json!(e.is_connected_grading(objs.indices()[0])?);
                    Report::ok(p)
                }
                Extension::Diagnostic(_) => Report::check(false, p)
                    .warn("trivial degrees outside the subcategory are not multiplicative; see violations"),
            };
            Ok(r)
        }
        Command::Smash(a) => {
            let g = load_graded(a)?;
            let s = smash_product(&g)?;
            let failures = s.verify_covering();
            Ok(Report::check(
                failures.is_empty(),
                json!({
                    "category": schema::category_to_json(s.category()),
                    "covering": failures.is_empty(),
                }),
            ))
        }
        Command::VerifyGalois(a) => {
            let g = load_graded(&a.graded)?;
            let b0 = object(g.category(), a.base.as_deref())?;
            let s = smash_product(&g)?;
            let r = s.verify_galois(b0);
            let covering = s.verify_covering().is_empty();
            Ok(Report::check(
                r.is_galois() && covering,
                json!({
                    "galois": r.is_galois(),
                    "connected": r.connected,
                    "transitive": r.transitive,
                    "free": r.free,
                    "deck_automorphisms": r.deck_automorphisms,
                    "star_isomorphism": covering,
                    "grading_connected": g.is_connected_grading(b0)?,
                }),
            ))
        }
        Command::FindMorphism(a) | Command::Mu(a) => {
            let cat = load_category(&a.category)?;
            let x = schema::read_grading(&a.source, &cat)?;
            let y = schema::read_grading(&a.target, &cat)?;
            let j = match &a.j {
                Some(p) => Some(schema::automorphism_from_json(
                    &schema::read_json(p)?,
                    &cat,
                )?),
                None => None,
            };
            let b0 = object(&cat, a.base.as_deref())?;
            let found = match &j {
                Some(j) => find_morphism_over(&x, &y, b0, j)?,
                None => find_identity_j_morphism(&x, &y, b0)?,
            };
            let mu_only = matches!(c, Command::Mu(_));
            Ok(match found {
                Search::Found(m) if mu_only => {
                    Report::ok(json!({"found": true, "mu": payload::hom(&m.canonical_mu()?)}))
                }
                Search::Found(m) => {
                    Report::ok(json!({"found": true, "morphism": payload::morphism(&m)?}))
                }
                Search::Absent(o) => Report::check(
                    !mu_only,
                    json!({"found": false, "obstruction": payload::obstruction(&o)}),
                ),
            })
        }
        Command::Diagram(a) => {
            let d = schema::read_diagram(&a.diagram)?;
            Ok(Report::ok(payload::diagram(&d)).warn(RELATIVE))
        }
        Command::Pi1(a) => {
            let d = schema::read_diagram(&a.diagram)?;
            let l = relative_pi1(&d)?;
            let mut p = payload::diagram(&d);
            p["limit"] = payload::limit(&l);
            let mut r = Report::ok(p).warn(RELATIVE);
            for n in &l.notes {
                r = r.warn(n.clone());
            }
            Ok(r)
        }
        Command::Kappa {
            diagram,
            sub,
            sub_diagram,
        } => {
            let db = schema::read_diagram(diagram)?;
            let dd = schema::read_diagram(sub_diagram)?;
            let objs = subset(db.category(), sub)?;
            let k = kappa_relative(&db, &objs, &dd)?;
            let p = payload::kappa(&k, &db, &dd);
            let mut r = Report::check(k.maps_into_limit && k.homomorphism, p).warn(RELATIVE);
            if !k.criterion_holds {
                r = r.warn("some subcategory gradings are not restrictions of supplied gradings; injectivity is not established by the criterion");
            }
            Ok(r)
        }
        Command::ConvexCheck { cat, sub } => {
            let cat = load_category(&cat.category)?;
            let objs = subset(&cat, sub)?;
            let r = cat.is_convex(&objs);
            let witness = r
                .witness
                .map(|(f, g)| json!({"f": cat.basis_label(f), "g": cat.basis_label(g)}));
            Ok(Report::check(
                r.convex,
                json!({"convex": r.convex, "witness": witness}),
            ))
        }
        Command::ChoiceIndependence { based, sub, seed } => {
            let g = load_graded(&based.graded)?;
            let cat = g.category();
            let b0 = object(cat, based.base.as_deref())?;
            let objs = match sub {
                Some(s) => subset(cat, s)?,
                None => ObjectSubset::all(cat),
            };
            let r = verify_choice_independence(&g, &objs, b0, *seed)?;
            Ok(Report::check(
                r.holds(),
                json!({
                    "seed": seed,
                    "trees_differ": r.trees_differ,
                    "morphism_found": r.morphism_found,
                    "mu_is_identity": r.mu_is_identity,
                }),
            ))
        }
        Command::Roundtrip { .. } => unreachable!("handled before dispatch"),
    }
}

fn roundtrip(category: &Path, grading: Option<&Path>) -> gradecat::Result<String> {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
    };
    let cat_text = read(category)?;
    match grading {
        None => schema::roundtrip_category(&cat_text),
        Some(g) => {
            let cat = Arc::new(schema::category_from_json(&schema::parse_json(&cat_text)?)?);
            schema::roundtrip_grading(&read(g)?, &cat)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn every_command_has_a_name() {
        let cli = Cli::try_parse_from([
            "gradecat",
            "convex-check",
            "--category",
            "x.json",
            "--sub",
            "a",
        ])
        .unwrap();
        assert_eq!(command_name(&cli.command), "convex-check");
    }
}
