//! Subcommand dispatch. Exit codes: 0 all checks pass, 1 violations found,
//! 2 malformed input.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hom3lie::algebra::check_alpha_morphism;
use hom3lie::linalg::fmt_vector;
use hom3lie::report::label_h;
use hom3lie::{
    build_extension_bracket, cohomology_dims, delta_rho, differential_d, generalized_semidirect, semidirect,
    twist_generalized_rep_preconditions, twist_representation_preconditions, validate_extension_triple,
    validate_generalized_rep, validate_hom_algebra, validate_representation, DenseCochain, Flavor, HomAlgebra,
    Report, Representation, Scalar, Violation,
};
use serde_json::{json, Value};

use crate::audit::{audit_dir, fmt_violation, render, Status};
use crate::expr::{fmt_rational, Bindings};
use crate::problem::{load_problem, parse_bindings, Instance, Kind, LoadError};

#[derive(Parser, Debug)]
#[command(name = "hom3lie", version, about = "Exact checks for 3-Hom-Lie algebras, their representations and cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file
    file: PathBuf,
    /// Parameter binding, e.g. `--bind lambda=3` or `--bind s=1/2`
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    bind: Vec<String>,
    /// Print a structured JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Ordinary,
    Generalized,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the (twisted) algebra of a problem file
    CheckAlgebra(Common),
    /// Validate a representation
    CheckRep(Common),
    /// Validate a generalized representation
    CheckGenrep(Common),
    /// Check the preconditions of twisting the written data along (alpha, endo)
    Twist(Common),
    /// Build and validate the semidirect product with a representation
    Semidirect(Common),
    /// Build and validate the semidirect product with a generalized representation
    Gensemidirect(Common),
    /// Apply the coboundary operator to the cochain of a problem file
    DApply(Common),
    /// Dimensions of cocycles, coboundaries and cohomology
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Cohomology degree p in 1..=3
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "generalized")]
        flavor: FlavorArg,
    },
    /// Validate extension data (rho, nu, omega, endo)
    CheckExtension(Common),
    /// Re-check every claim recorded in the fixture files
    AuditPaper {
        /// Directory holding the fixture files
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// Result of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Option<Value>,
}

impl Outcome {
    /// What the binary prints.
    pub fn output(&self) -> String {
        match &self.json {
            Some(v) => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
            None => self.text.clone(),
        }
    }
}

fn rational(x: &Scalar) -> Value {
    Value::String(fmt_rational(x))
}

fn violation_json(v: &Violation) -> Value {
    json!({
        "identity": v.identity,
        "witness": v.witness,
        "left": v.left.iter().map(rational).collect::<Vec<_>>(),
        "right": v.right.iter().map(rational).collect::<Vec<_>>(),
    })
}

fn bindings_json(b: &Bindings) -> Value {
    Value::Object(b.iter().map(|(k, v)| (k.clone(), rational(v))).collect())
}

struct Doc {
    command: &'static str,
    inputs: Vec<String>,
    bindings: Bindings,
    findings: Vec<Value>,
    dims: serde_json::Map<String, Value>,
    text: String,
    failed: bool,
}

impl Doc {
    fn new(command: &'static str, file: &Path, inst: &Instance) -> Self {
        Doc {
            command,
            inputs: vec![file.display().to_string()],
            bindings: inst.bindings.clone(),
            findings: Vec::new(),
            dims: serde_json::Map::new(),
            text: String::new(),
            failed: false,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn report(&mut self, title: &str, r: &Report) {
        if r.passed() {
            self.line(format!("{title}: pass ({} instances checked)", r.checked));
        } else {
            self.failed = true;
            self.line(format!(
                "{title}: fail ({} of {} instances violated)",
                r.violations.len(),
                r.checked
            ));
            for v in &r.violations {
                self.line(format!("  {}", fmt_violation(v)));
                self.findings.push(violation_json(v));
            }
        }
    }

    fn finish(self, json: bool) -> Outcome {
        let doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "bindings": bindings_json(&self.bindings),
            "findings": self.findings,
            "dims": Value::Object(self.dims),
            "passed": !self.failed,
        });
        Outcome {
            code: i32::from(self.failed),
            text: self.text,
            json: json.then_some(doc),
        }
    }
}

fn bracket_lines(a: &HomAlgebra, split: usize) -> Vec<String> {
    let mut out = Vec::new();
    for (k, v) in a.bracket().cells() {
        let labels: Vec<String> = k.iter().map(|&i| label_h(i, split)).collect();
        out.push(format!("  [{}] = {}", labels.join(", "), fmt_vector(v)));
    }
    out
}

fn cochain_lines(c: &DenseCochain) -> Vec<String> {
    c.support()
        .into_iter()
        .map(|(ps, u)| format!("  {} : {}", c.key_labels(&ps, u).join(" "), fmt_vector(c.value(&ps, u))))
        .collect()
}

fn require_kind(inst: &Instance, kinds: &[Kind]) -> Result<(), LoadError> {
    if kinds.contains(&inst.kind) {
        Ok(())
    } else {
        Err(LoadError::Syntax {
            line: 0,
            message: format!("this command does not apply to a {} file", inst.kind.name()),
        })
    }
}

const WITH_REP: &[Kind] = &[Kind::Representation, Kind::Genrep, Kind::Cochain, Kind::Extension];

/// A kernel precondition failure is a mathematical finding; anything else
/// is an input error.
fn precondition(doc: &mut Doc, e: hom3lie::Error) -> Result<(), LoadError> {
    match e {
        hom3lie::Error::Precondition {
            condition,
            witness,
            detail,
        } => {
            doc.failed = true;
            doc.line(format!("precondition `{condition}` fails at {witness}: {detail}"));
            doc.findings.push(json!({"identity": condition, "witness": [witness], "detail": detail}));
            Ok(())
        }
        other => Err(other.into()),
    }
}

fn run_file(name: &'static str, c: &Common, extra: impl FnOnce(&Instance, &mut Doc) -> Result<(), LoadError>) -> Result<Outcome, LoadError> {
    let bindings = parse_bindings(&c.bind)?;
    let inst = load_problem(&c.file, &bindings)?;
    let mut doc = Doc::new(name, &c.file, &inst);
    if !inst.bindings.is_empty() {
        doc.line(format!("bindings: {}", inst.binding_text()));
    }
    extra(&inst, &mut doc)?;
    Ok(doc.finish(c.json))
}

fn dispatch(cmd: Command) -> Result<Outcome, LoadError> {
    match cmd {
        Command::CheckAlgebra(c) => run_file("check-algebra", &c, |inst, doc| {
            let a = inst.algebra();
            doc.dims.insert("algebra".into(), json!(a.dim()));
            doc.line(format!("algebra of dimension {}{}", a.dim(), if inst.twist { " (twisted)" } else { "" }));
            for l in bracket_lines(&a, a.dim()) {
                doc.line(l);
            }
            doc.report("3-Hom-Lie algebra", &validate_hom_algebra(&a));
            Ok(())
        }),
        Command::CheckRep(c) => run_file("check-rep", &c, |inst, doc| {
            require_kind(inst, WITH_REP)?;
            doc.dims.insert("algebra".into(), json!(inst.base_dim()));
            doc.dims.insert("carrier".into(), json!(inst.fiber_dim()));
            doc.report("representation", &validate_representation(&inst.algebra(), &inst.representation()));
            Ok(())
        }),
        Command::CheckGenrep(c) => run_file("check-genrep", &c, |inst, doc| {
            require_kind(inst, WITH_REP)?;
            doc.dims.insert("algebra".into(), json!(inst.base_dim()));
            doc.dims.insert("carrier".into(), json!(inst.fiber_dim()));
            doc.report(
                "generalized representation",
                &validate_generalized_rep(&inst.algebra(), &inst.genrep()),
            );
            Ok(())
        }),
        Command::Twist(c) => run_file("twist", &c, |inst, doc| {
            let pre = match inst.kind {
                Kind::Algebra => check_alpha_morphism(&inst.bracket, &inst.alpha, "alpha-morphism"),
                Kind::Representation => twist_representation_preconditions(
                    &inst.bracket,
                    &Representation::new(inst.base_dim(), inst.fiber_dim(), inst.rho.clone(), inst.endo.clone())?,
                    &inst.alpha,
                )?,
                _ => twist_generalized_rep_preconditions(
                    &inst.untwisted_algebra(),
                    &inst.untwisted_genrep(),
                    &inst.alpha,
                    &inst.endo,
                )?,
            };
            let mut pre = pre;
            for v in &mut pre.violations {
                if v.identity == "beta-morphism" {
                    v.identity = "alpha-morphism".into();
                }
            }
            doc.report("twist preconditions", &pre);
            let mut twisted = inst.clone();
            twisted.twist = true;
            let a = twisted.algebra();
            doc.line("twisted bracket:");
            for l in bracket_lines(&a, a.dim()) {
                doc.line(l);
            }
            if inst.kind != Kind::Algebra {
                let g = twisted.genrep();
                let n = a.dim();
                doc.line("twisted rho:");
                for (k, (i, j)) in hom3lie::linalg::pairs(n).into_iter().enumerate() {
                    for v in 0..g.carrier_dim() {
                        let col = g.rho()[k].column(v);
                        if !hom3lie::linalg::is_zero_vec(&col) {
                            doc.line(format!("  rho(e{}, e{})(v{}) = {}", i + 1, j + 1, v + 1, fmt_vector(&col)));
                        }
                    }
                }
                doc.line("twisted nu:");
                for (x, t) in g.nu().iter().enumerate() {
                    for ((p, q), v) in t.cells() {
                        doc.line(format!("  nu(e{})(v{}, v{}) = {}", x + 1, p + 1, q + 1, fmt_vector(v)));
                    }
                }
            }
            Ok(())
        }),
        Command::Semidirect(c) => run_file("semidirect", &c, |inst, doc| {
            require_kind(inst, WITH_REP)?;
            let s = semidirect(&inst.algebra(), &inst.representation())?;
            doc.dims.insert("total".into(), json!(s.dim()));
            doc.line(format!("semidirect product of dimension {}", s.dim()));
            for l in bracket_lines(&s, inst.base_dim()) {
                doc.line(l);
            }
            doc.report("3-Hom-Lie algebra", &validate_hom_algebra(&s));
            Ok(())
        }),
        Command::Gensemidirect(c) => run_file("gensemidirect", &c, |inst, doc| {
            require_kind(inst, WITH_REP)?;
            let s = generalized_semidirect(&inst.algebra(), &inst.genrep())?;
            doc.dims.insert("total".into(), json!(s.dim()));
            doc.line(format!("generalized semidirect product of dimension {}", s.dim()));
            for l in bracket_lines(&s, inst.base_dim()) {
                doc.line(l);
            }
            doc.report("3-Hom-Lie algebra", &validate_hom_algebra(&s));
            Ok(())
        }),
        Command::DApply(c) => run_file("d-apply", &c, |inst, doc| {
            require_kind(inst, &[Kind::Cochain])?;
            let phi = inst.cochain.as_ref().expect("cochain files carry a cochain");
            let result = match inst.flavor {
                Flavor::Generalized => differential_d(&inst.algebra(), &inst.genrep(), phi),
                Flavor::Ordinary => delta_rho(&inst.algebra(), &inst.representation(), phi),
            };
            match result {
                Ok(d) => {
                    doc.dims.insert("degree".into(), json!(phi.degree()));
                    doc.dims.insert("nonzero_entries".into(), json!(d.support().len()));
                    doc.line(format!("image ({} nonzero entries):", d.support().len()));
                    for l in cochain_lines(&d) {
                        doc.line(l);
                    }
                    Ok(())
                }
                Err(e) => precondition(doc, e),
            }
        }),
        Command::Cohomology { common, degree, flavor } => {
            let flavor = match flavor {
                FlavorArg::Ordinary => Flavor::Ordinary,
                FlavorArg::Generalized => Flavor::Generalized,
            };
            run_file("cohomology", &common, |inst, doc| {
                require_kind(inst, WITH_REP)?;
                match cohomology_dims(&inst.algebra(), &inst.genrep(), degree, flavor) {
                    Ok(d) => {
                        doc.dims.insert("cocycles".into(), json!(d.cocycles));
                        doc.dims.insert("coboundaries".into(), json!(d.coboundaries));
                        doc.dims.insert("cohomology".into(), json!(d.cohomology));
                        doc.line(format!(
                            "dim Z^{degree} = {}, dim B^{degree} = {}, dim H^{degree} = {}",
                            d.cocycles, d.coboundaries, d.cohomology
                        ));
                        Ok(())
                    }
                    Err(e) => precondition(doc, e),
                }
            })
        }
        Command::CheckExtension(c) => run_file("check-extension", &c, |inst, doc| {
            require_kind(inst, &[Kind::Extension])?;
            let e = inst.extension();
            doc.report("extension identities", &validate_extension_triple(&e));
            let total = build_extension_bracket(&e)?;
            let r = validate_hom_algebra(&total);
            doc.line(format!(
                "extension bracket on g + V: {}",
                if r.passed() { "3-Hom-Lie algebra" } else { "not a 3-Hom-Lie algebra" }
            ));
            Ok(())
        }),
        Command::AuditPaper { fixtures, json } => {
            let dir = fixtures.unwrap_or_else(default_fixtures);
            let audits = audit_dir(&dir)?;
            let text = render(&audits);
            let findings: Vec<Value> = audits
                .iter()
                .flat_map(|a| a.findings.iter())
                .map(|f| {
                    json!({
                        "file": f.file,
                        "claim": f.claim,
                        "status": f.status.name(),
                        "violation": f.violation.as_ref().map(violation_json),
                        "binding": f.binding.as_ref().map(bindings_json),
                        "instantiations": f.instantiations,
                        "matches_expectation": f.matches_expectation(),
                    })
                })
                .collect();
            let confirmed = audits
                .iter()
                .flat_map(|a| &a.findings)
                .filter(|f| f.status == Status::Confirmed)
                .count();
            let total: usize = audits.iter().map(|a| a.findings.len()).sum();
            let doc = json!({
                "command": "audit-paper",
                "inputs": audits.iter().map(|a| a.file.clone()).collect::<Vec<_>>(),
                "bindings": {},
                "findings": findings,
                "dims": {"claims": total, "confirmed": confirmed, "discrepant": total - confirmed},
            });
            Ok(Outcome {
                code: 0,
                text,
                json: json.then_some(doc),
            })
        }
    }
}

/// `fixtures/` under the working directory, else the one shipped with the
/// workspace.
fn default_fixtures() -> PathBuf {
    let local = PathBuf::from("fixtures");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Runs the command line `argv` (including the program name).
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                text: e.render().to_string(),
                json: None,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: 2,
            text: format!("error: {e}\n"),
            json: None,
        },
    }
}
