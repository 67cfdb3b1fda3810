//! Re-checks the printed claims recorded in problem files.
//!
//! A claim is CONFIRMED when it holds at every sampled instantiation (the
//! file's GRID, or its defaults when there is none) and DISCREPANT otherwise,
//! with the first failing instantiation, identity and basis witness.
//! Confirmation at sampled points is not a symbolic proof.

use std::path::{Path, PathBuf};

use hom3lie::algebra::check_alpha_morphism;
use hom3lie::linalg::{fmt_vector, zeros};
use hom3lie::{
    differential_d, twist_generalized_rep_preconditions, validate_extension_triple, validate_filippov,
    validate_generalized_rep, validate_hom_algebra, validate_representation, CompatibilityConstraint,
    ComponentCochain2, Report, Scalar, Violation,
};

use crate::expr::Bindings;
use crate::problem::{fmt_bindings, parse_label, read_problem, Claim, ClaimCheck, Expectation, Instance, LoadError, ProblemFile, Row};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Confirmed,
    Discrepant,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Confirmed => "CONFIRMED",
            Status::Discrepant => "DISCREPANT",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub file: String,
    pub claim: String,
    pub status: Status,
    /// The failing instance, for DISCREPANT claims.
    pub violation: Option<Violation>,
    /// Instantiation of the failing instance.
    pub binding: Option<Bindings>,
    pub instantiations: usize,
    pub expected: Expectation,
}

impl Finding {
    pub fn matches_expectation(&self) -> bool {
        match (&self.expected, self.status, &self.violation) {
            (Expectation::Confirmed, Status::Confirmed, _) => true,
            (Expectation::Discrepant { identity, witness }, Status::Discrepant, Some(v)) => {
                identity.as_ref().map_or(true, |id| *id == v.identity) && (witness.is_empty() || *witness == v.witness)
            }
            _ => false,
        }
    }
}

/// Results for one problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileAudit {
    pub file: String,
    pub points: Vec<Bindings>,
    /// Grid points carrying a valid generalized representation (`SELECT genrep`).
    pub valid_points: Option<Vec<Bindings>>,
    pub findings: Vec<Finding>,
}

/// Identity labels naming the same family under another numbering.
pub fn aliases(identity: &str) -> &'static [&'static str] {
    match identity {
        "GenRep-eq2" => &["Def2.2-Eq(7)"],
        "Def2.2-Eq(7)" => &["GenRep-eq2"],
        _ => &[],
    }
}

fn first(report: Report) -> Option<Violation> {
    report.violations.into_iter().next()
}

fn key_indices(row: &Row) -> Vec<usize> {
    row.key.iter().map(|l| parse_label(l).expect("checked at parse time").1).collect()
}

fn holds(inst: &Instance, family: &str) -> Result<Report, LoadError> {
    Ok(match family {
        "algebra" => validate_hom_algebra(&inst.algebra()),
        "filippov" => validate_filippov(&inst.bracket),
        "alpha-morphism" => check_alpha_morphism(&inst.bracket, &inst.alpha, "alpha-morphism"),
        "representation" => validate_representation(&inst.algebra(), &inst.representation()),
        "untwisted-representation" => {
            validate_representation(&inst.untwisted_algebra(), &inst.untwisted_genrep().ordinary())
        }
        "genrep" => validate_generalized_rep(&inst.algebra(), &inst.genrep()),
        "untwisted-genrep" => validate_generalized_rep(&inst.untwisted_algebra(), &inst.untwisted_genrep()),
        "extension" => validate_extension_triple(&inst.extension()),
        "intertwining-rho" | "intertwining-nu" | "intertwining-A" => {
            let full = twist_generalized_rep_preconditions(
                &inst.untwisted_algebra(),
                &inst.untwisted_genrep(),
                &inst.alpha,
                &inst.endo,
            )?;
            let mut r = Report::new();
            r.checked = full.checked;
            r.violations = full.violations.into_iter().filter(|v| v.identity == family).collect();
            r
        }
        _ => {
            return Err(LoadError::Syntax {
                line: 0,
                message: format!("unknown identity family `{family}`"),
            })
        }
    })
}

fn cell(inst: &Instance, table: &str, row: &Row) -> Result<Option<Violation>, LoadError> {
    let k = key_indices(row);
    let computed: Vec<Scalar> = match (table, k.as_slice()) {
        ("bracket", &[i, j, l]) => inst.algebra().br_basis(i, j, l),
        ("rho", &[i, j, v]) => inst.genrep().act(i, j).column(v),
        ("nu", &[x, p, q]) => inst.genrep().nu()[x].get(p, q),
        ("endo", &[v]) => inst.endo.column(v),
        ("alpha", &[i]) => inst.alpha.column(i),
        ("omega", &[i, j, l]) => inst.omega.get(i, j, l),
        _ => {
            return Err(LoadError::Syntax {
                line: 0,
                message: format!("cannot compare `{table}` at `{}`", row.key.join(" ")),
            })
        }
    };
    let printed = row.values.iter().map(|e| e.eval(&inst.bindings)).collect::<Result<Vec<_>, _>>()?;
    if printed.len() != computed.len() {
        return Err(LoadError::Dimension(format!("claim on `{table}` has {} values", printed.len())));
    }
    let identity = if inst.twist { format!("twisted-{table}") } else { table.to_string() };
    Ok((printed != computed).then(|| Violation {
        identity,
        witness: row.key.clone(),
        left: computed,
        right: printed,
    }))
}

fn cocycle(inst: &Instance, component: &str, row: &Row) -> Result<Option<Violation>, LoadError> {
    let (a, g) = (inst.algebra(), inst.genrep());
    let (n, m) = (a.dim(), g.carrier_dim());
    let k = key_indices(row);
    let value = row.values.iter().map(|e| e.eval(&inst.bindings)).collect::<Result<Vec<_>, _>>()?;
    let bad = || LoadError::Dimension(format!("cocycle entry `{component} {}` does not fit", row.key.join(" ")));
    if value.len() != m || k.len() != 3 {
        return Err(bad());
    }
    let pattern = match component {
        "phi1" => [true, true, false],
        "phi2" => [false, false, true],
        "phi3" => [false, false, false],
        _ => return Err(bad()),
    };
    for (label, want) in row.key.iter().zip(pattern) {
        let (fiber, i) = parse_label(label).expect("checked");
        if fiber != want || i >= if fiber { m } else { n } {
            return Err(bad());
        }
    }
    let mut c = ComponentCochain2::zero(n, m);
    let (x, y, z) = (k[0], k[1], k[2]);
    let (key, v) = match (x.cmp(&y), component) {
        (std::cmp::Ordering::Less, _) => ((x, y, z), value),
        (std::cmp::Ordering::Greater, _) => ((y, x, z), value.iter().map(|s| -s).collect()),
        _ => return Err(bad()),
    };
    match component {
        "phi1" => c.phi1.insert(key, v),
        "phi2" => c.phi2.insert(key, v),
        _ => c.phi3.insert(key, v),
    };
    let phi = c.to_dense();
    let constraint = CompatibilityConstraint::new(a.alpha().block_diag(g.endo()), g.endo().clone())?;
    if let Some(v) = first(constraint.check(&phi)?) {
        return Ok(Some(v));
    }
    let d = differential_d(&a, &g, &phi)?;
    Ok(d.support().into_iter().next().map(|(ps, u)| Violation {
        identity: "cocycle".into(),
        witness: d.key_labels(&ps, u),
        left: d.value(&ps, u).to_vec(),
        right: zeros(m),
    }))
}

fn evaluate(inst: &Instance, claim: &Claim) -> Result<Option<Violation>, LoadError> {
    match &claim.check {
        ClaimCheck::Cell { table, row } => cell(inst, table, row),
        ClaimCheck::Holds(family) => Ok(first(holds(inst, family)?)),
        ClaimCheck::Cocycle { component, row } => cocycle(inst, component, row),
    }
}

pub fn audit_problem(file: &str, f: &ProblemFile) -> Result<FileAudit, LoadError> {
    let grid = if f.grid.is_empty() { vec![Bindings::new()] } else { f.grid_points()? };
    let (points, valid_points) = match f.select.as_deref() {
        Some(_) => {
            let mut valid = Vec::new();
            for p in &grid {
                let inst = f.instantiate(p)?;
                if validate_generalized_rep(&inst.algebra(), &inst.genrep()).passed() {
                    valid.push(p.clone());
                }
            }
            (valid.first().cloned().into_iter().collect::<Vec<_>>(), Some(valid))
        }
        None => (grid, None),
    };
    let instances: Vec<Instance> = points.iter().map(|p| f.instantiate(p)).collect::<Result<_, _>>()?;
    let mut findings = Vec::new();
    for claim in &f.claims {
        let mut failure = None;
        for inst in &instances {
            if let Some(v) = evaluate(inst, claim)? {
                failure = Some((v, inst.bindings.clone()));
                break;
            }
        }
        let status = if failure.is_some() || instances.is_empty() {
            Status::Discrepant
        } else {
            Status::Confirmed
        };
        let (violation, binding) = failure.map_or((None, None), |(v, b)| (Some(v), Some(b)));
        findings.push(Finding {
            file: file.to_string(),
            claim: claim.text.clone(),
            status,
            violation,
            binding,
            instantiations: instances.len(),
            expected: claim.expect.clone(),
        });
    }
    Ok(FileAudit {
        file: file.to_string(),
        points,
        valid_points,
        findings,
    })
}

/// Problem files in `dir` that record claims, sorted by name.
pub fn audited_files(dir: &Path) -> Result<Vec<PathBuf>, LoadError> {
    let entries = std::fs::read_dir(dir).map_err(|e| LoadError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut out: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    out.sort();
    let mut with_claims = Vec::new();
    for p in out {
        if !read_problem(&p)?.claims.is_empty() {
            with_claims.push(p);
        }
    }
    Ok(with_claims)
}

pub fn audit_dir(dir: &Path) -> Result<Vec<FileAudit>, LoadError> {
    audited_files(dir)?
        .iter()
        .map(|p| {
            let name = p.file_name().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
            audit_problem(&name, &read_problem(p)?)
        })
        .collect()
}

const CELL_TABLES: &[&str] = &["bracket", "rho", "nu", "endo", "alpha", "omega"];

/// `identity at (witness): left … != right …`; printed-entry comparisons
/// read `computed … vs printed …`.
pub fn fmt_violation(v: &Violation) -> String {
    let mut s = v.identity.clone();
    for a in aliases(&v.identity) {
        s.push_str(&format!(" / {a}"));
    }
    let table = v.identity.strip_prefix("twisted-").unwrap_or(&v.identity);
    let (l, r) = if CELL_TABLES.contains(&table) {
        ("computed", "vs printed")
    } else {
        ("left", "!= right")
    };
    format!(
        "{s} at ({}): {l} {} {r} {}",
        v.witness.join(", "),
        fmt_vector(&v.left),
        fmt_vector(&v.right)
    )
}

fn fmt_expectation(e: &Expectation) -> String {
    match e {
        Expectation::Confirmed => "CONFIRMED".into(),
        Expectation::Discrepant { identity, witness } => {
            let mut s = "DISCREPANT".to_string();
            if let Some(id) = identity {
                s.push(' ');
                s.push_str(id);
            }
            if !witness.is_empty() {
                s.push_str(&format!(" ({})", witness.join(", ")));
            }
            s
        }
    }
}

/// Human-readable report, identical across runs.
pub fn render(audits: &[FileAudit]) -> String {
    let mut out = String::new();
    let (mut confirmed, mut discrepant, mut unexpected) = (0, 0, 0);
    for a in audits {
        out.push_str(&format!("== {} ==\n", a.file));
        if let Some(valid) = &a.valid_points {
            out.push_str(&format!("grid points with a valid generalized representation: {}\n", valid.len()));
            for p in valid {
                out.push_str(&format!("  {}\n", fmt_bindings(p)));
            }
            match valid.first() {
                Some(p) => out.push_str(&format!("selected instantiation: {}\n", fmt_bindings(p))),
                None => out.push_str("no valid instantiation on the grid\n"),
            }
        } else {
            out.push_str(&format!("sampled instantiations: {}\n", a.points.len()));
        }
        for f in &a.findings {
            out.push_str(&format!("{:<10} {}\n", f.status.name(), f.claim));
            match f.status {
                Status::Discrepant => {
                    discrepant += 1;
                    if let (Some(v), Some(b)) = (&f.violation, &f.binding) {
                        out.push_str(&format!("           {} [{}]\n", fmt_violation(v), fmt_bindings(b)));
                    }
                }
                Status::Confirmed => {
                    confirmed += 1;
                    out.push_str(&format!("           holds at {} sampled instantiation(s)\n", f.instantiations));
                }
            }
            if !f.matches_expectation() {
                unexpected += 1;
                out.push_str(&format!("           recorded expectation differs: {}\n", fmt_expectation(&f.expected)));
            }
        }
    }
    out.push_str(&format!(
        "audit: {confirmed} confirmed, {discrepant} discrepant, {unexpected} differing from recorded expectations\n"
    ));
    out
}
