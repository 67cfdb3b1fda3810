//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! KIND genrep                 algebra | representation | genrep | cochain | extension
//! DIM 3 2                     dim g, dim V
//! TWIST                       load the twist along (alpha, endo) of the tables
//! PARAMS
//!   lambda = 3                default value, overridable by a binding
//!   a1                        must be bound
//! END
//! NONZERO
//!   a1*s
//! END
//! GRID                        audit instantiations
//!   lambda = 3, 5/2
//! END
//! TABLE bracket               e1 e2 e3 : [e1,e2,e3]
//!   e1 e2 e3 : lambda, 0, 0
//! END
//! TABLE alpha                 e1 : alpha(e1)          (default identity)
//! TABLE rho                   e1 e2 v2 : rho(e1,e2)(v2)
//! TABLE nu                    e2 v1 v2 : nu(e2)(v1,v2)
//! TABLE endo                  v2 : A(v2)              (default identity)
//! TABLE omega                 e1 e2 e3 : omega(e1,e2,e3)
//! DEGREE 1                    cochain kind: number of pair slots
//! FLAVOR generalized          ordinary | generalized
//! TABLE phi                   x1 y1 ... xk yk z : phi(x1∧y1, ..., z)
//! SELECT genrep               audit: evaluate cocycle claims at the first
//!                             grid point carrying a valid generalized rep
//! CLAIM free text
//!   cell rho e1 e3 v2 : r1*r2*(lambda - 1), -r1
//!   expect DISCREPANT twisted-rho e1 e3 v2
//! END
//! ```
//!
//! Table values are comma-separated expressions. Omitted cells are zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use hom3lie::{
    DenseCochain, ExtensionData, Flavor, GeneralizedRep, HomAlgebra, Matrix, Representation, Scalar, SkewTensor2,
    SkewTensor3,
};
use num::Zero;
use thiserror::Error;

use crate::expr::{fmt_rational, parse_scalar_expr, Bindings, EvalError, ScalarExpr};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}, byte {offset} of the expression: {message}")]
    Expr { line: usize, offset: usize, message: String },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("binding for unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("nonzero condition `{condition}` fails ({value})")]
    NonzeroViolated { condition: String, value: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
    #[error(transparent)]
    Kernel(#[from] hom3lie::Error),
}

impl From<EvalError> for LoadError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Unbound(name) => LoadError::UnboundParameter(name),
            EvalError::DivisionByZero(text) => LoadError::DivisionByZero(text),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Representation,
    Genrep,
    Cochain,
    Extension,
}

impl Kind {
    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "algebra" => Kind::Algebra,
            "representation" => Kind::Representation,
            "genrep" => Kind::Genrep,
            "cochain" => Kind::Cochain,
            "extension" => Kind::Extension,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Representation => "representation",
            Kind::Genrep => "genrep",
            Kind::Cochain => "cochain",
            Kind::Extension => "extension",
        }
    }

    fn tables(self) -> &'static [&'static str] {
        match self {
            Kind::Algebra => &["bracket", "alpha"],
            Kind::Representation => &["bracket", "alpha", "rho", "endo"],
            Kind::Genrep => &["bracket", "alpha", "rho", "nu", "endo"],
            Kind::Cochain => &["bracket", "alpha", "rho", "nu", "endo", "phi"],
            Kind::Extension => &["bracket", "alpha", "rho", "nu", "endo", "omega"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub key: Vec<String>,
    pub values: Vec<ScalarExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimCheck {
    /// A printed table entry of the loaded object.
    Cell { table: String, row: Row },
    /// An identity family holds.
    Holds(String),
    /// A single-entry cochain component (`phi1`, `phi2`, `phi3`) is a cocycle.
    Cocycle { component: String, row: Row },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Confirmed,
    Discrepant { identity: Option<String>, witness: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub text: String,
    pub check: ClaimCheck,
    pub expect: Expectation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub kind: Kind,
    pub base_dim: usize,
    pub fiber_dim: usize,
    pub twist: bool,
    pub params: Vec<(String, Option<ScalarExpr>)>,
    pub nonzero: Vec<ScalarExpr>,
    pub grid: Vec<(String, Vec<ScalarExpr>)>,
    pub degree: Option<usize>,
    pub flavor: Option<Flavor>,
    pub select: Option<String>,
    pub tables: Vec<Table>,
    pub claims: Vec<Claim>,
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError::Syntax {
        line,
        message: message.into(),
    })
}

fn expr_at(line: usize, text: &str) -> Result<ScalarExpr, LoadError> {
    parse_scalar_expr(text).map_err(|e| LoadError::Expr {
        line,
        offset: e.offset,
        message: e.message,
    })
}

fn expr_list(line: usize, text: &str) -> Result<Vec<ScalarExpr>, LoadError> {
    text.split(',').map(|t| expr_at(line, t.trim())).collect()
}

/// `labels : values`
fn parse_row(line: usize, text: &str) -> Result<Row, LoadError> {
    let Some((key, values)) = text.split_once(':') else {
        return syntax(line, "expected `labels : values`");
    };
    let key: Vec<String> = key.split_whitespace().map(str::to_string).collect();
    if key.is_empty() {
        return syntax(line, "empty key");
    }
    for k in &key {
        if parse_label(k).is_none() {
            return syntax(line, format!("`{k}` is not a basis label (e1, e2, ..., v1, v2, ...)"));
        }
    }
    Ok(Row {
        key,
        values: expr_list(line, values)?,
    })
}

/// `e3` → `(false, 2)`, `v1` → `(true, 0)`.
pub fn parse_label(s: &str) -> Option<(bool, usize)> {
    let fiber = match s.as_bytes().first()? {
        b'e' => false,
        b'v' => true,
        _ => return None,
    };
    let i: usize = s[1..].parse().ok()?;
    if i == 0 || s[1..].starts_with('0') {
        return None;
    }
    Some((fiber, i - 1))
}

fn parse_flavor(s: &str) -> Option<Flavor> {
    match s {
        "ordinary" => Some(Flavor::Ordinary),
        "generalized" => Some(Flavor::Generalized),
        _ => None,
    }
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Ordinary => "ordinary",
        Flavor::Generalized => "generalized",
    }
}

fn parse_claim_line(line: usize, text: &str, check: &mut Option<ClaimCheck>, expect: &mut Option<Expectation>) -> Result<(), LoadError> {
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    let slot_taken = |line| syntax(line, "a claim has exactly one check");
    match head {
        "cell" | "cocycle" => {
            if check.is_some() {
                return slot_taken(line);
            }
            let (name, row) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let row = parse_row(line, row)?;
            *check = Some(if head == "cell" {
                ClaimCheck::Cell {
                    table: name.to_string(),
                    row,
                }
            } else {
                ClaimCheck::Cocycle {
                    component: name.to_string(),
                    row,
                }
            });
        }
        "holds" => {
            if check.is_some() {
                return slot_taken(line);
            }
            if rest.is_empty() || rest.contains(char::is_whitespace) {
                return syntax(line, "expected `holds <identity family>`");
            }
            *check = Some(ClaimCheck::Holds(rest.to_string()));
        }
        "expect" => {
            let mut words = rest.split_whitespace();
            *expect = Some(match words.next() {
                Some("CONFIRMED") if words.next().is_none() => Expectation::Confirmed,
                Some("DISCREPANT") => Expectation::Discrepant {
                    identity: words.next().map(str::to_string),
                    witness: words.map(str::to_string).collect(),
                },
                _ => return syntax(line, "expected `expect CONFIRMED` or `expect DISCREPANT [identity [labels]]`"),
            });
        }
        _ => return syntax(line, format!("unknown claim line `{head}`")),
    }
    Ok(())
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, LoadError> {
        let mut kind = None;
        let mut dims = None;
        let mut f = ProblemFile {
            kind: Kind::Algebra,
            base_dim: 0,
            fiber_dim: 0,
            twist: false,
            params: Vec::new(),
            nonzero: Vec::new(),
            grid: Vec::new(),
            degree: None,
            flavor: None,
            select: None,
            tables: Vec::new(),
            claims: Vec::new(),
        };
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut i = 0;
        // collects the body of a block up to its END
        let block = |i: &mut usize, open: usize| -> Result<Vec<(usize, &str)>, LoadError> {
            let mut body = Vec::new();
            loop {
                *i += 1;
                match lines.get(*i) {
                    None => return syntax(open, "block is not closed by END"),
                    Some(&(_, "END")) => return Ok(body),
                    Some(&l) => body.push(l),
                }
            }
        };
        while i < lines.len() {
            let (ln, l) = lines[i];
            let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            let rest = rest.trim();
            match head {
                "KIND" => {
                    if kind.is_some() {
                        return syntax(ln, "KIND given twice");
                    }
                    kind = Some(Kind::parse(rest).ok_or_else(|| LoadError::Syntax {
                        line: ln,
                        message: format!("unknown kind `{rest}`"),
                    })?);
                }
                "DIM" => {
                    let parts: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
                    match parts.as_deref() {
                        Ok([n]) => dims = Some((*n, 0)),
                        Ok([n, m]) => dims = Some((*n, *m)),
                        _ => return syntax(ln, "expected `DIM n` or `DIM n m`"),
                    }
                }
                "TWIST" if rest.is_empty() => f.twist = true,
                "DEGREE" => {
                    f.degree = Some(rest.parse().map_err(|_| LoadError::Syntax {
                        line: ln,
                        message: "expected a degree".into(),
                    })?)
                }
                "FLAVOR" => {
                    f.flavor = Some(parse_flavor(rest).ok_or_else(|| LoadError::Syntax {
                        line: ln,
                        message: format!("unknown flavor `{rest}`"),
                    })?)
                }
                "SELECT" => {
                    if rest != "genrep" {
                        return syntax(ln, "only `SELECT genrep` is supported");
                    }
                    f.select = Some(rest.to_string());
                }
                "PARAMS" => {
                    for (bl, body) in block(&mut i, ln)? {
                        let (name, default) = match body.split_once('=') {
                            Some((n, d)) => (n.trim(), Some(expr_at(bl, d.trim())?)),
                            None => (body, None),
                        };
                        if !is_identifier(name) {
                            return syntax(bl, format!("`{name}` is not a parameter name"));
                        }
                        if f.params.iter().any(|(p, _)| p == name) {
                            return syntax(bl, format!("parameter `{name}` declared twice"));
                        }
                        f.params.push((name.to_string(), default));
                    }
                }
                "NONZERO" => {
                    for (bl, body) in block(&mut i, ln)? {
                        f.nonzero.push(expr_at(bl, body)?);
                    }
                }
                "GRID" => {
                    for (bl, body) in block(&mut i, ln)? {
                        let Some((name, values)) = body.split_once('=') else {
                            return syntax(bl, "expected `name = value, value, ...`");
                        };
                        f.grid.push((name.trim().to_string(), expr_list(bl, values)?));
                    }
                }
                "TABLE" => {
                    if rest.is_empty() || rest.contains(char::is_whitespace) {
                        return syntax(ln, "expected `TABLE name`");
                    }
                    if f.tables.iter().any(|t| t.name == rest) {
                        return syntax(ln, format!("table `{rest}` given twice"));
                    }
                    let mut rows = Vec::new();
                    for (bl, body) in block(&mut i, ln)? {
                        rows.push(parse_row(bl, body)?);
                    }
                    f.tables.push(Table {
                        name: rest.to_string(),
                        rows,
                    });
                }
                "CLAIM" => {
                    let (mut check, mut expect) = (None, None);
                    for (bl, body) in block(&mut i, ln)? {
                        parse_claim_line(bl, body, &mut check, &mut expect)?;
                    }
                    let (Some(check), Some(expect)) = (check, expect) else {
                        return syntax(ln, "a claim needs a check and an `expect` line");
                    };
                    f.claims.push(Claim {
                        text: rest.to_string(),
                        check,
                        expect,
                    });
                }
                _ => return syntax(ln, format!("unknown directive `{head}`")),
            }
            i += 1;
        }
        f.kind = kind.ok_or(LoadError::Syntax {
            line: 0,
            message: "missing KIND".into(),
        })?;
        let (n, m) = dims.ok_or(LoadError::Syntax {
            line: 0,
            message: "missing DIM".into(),
        })?;
        f.base_dim = n;
        f.fiber_dim = m;
        for t in &f.tables {
            if !f.kind.tables().contains(&t.name.as_str()) {
                return syntax(0, format!("table `{}` does not belong to a {} file", t.name, f.kind.name()));
            }
        }
        if f.kind == Kind::Cochain && f.degree.is_none() {
            return syntax(0, "cochain files need DEGREE");
        }
        Ok(f)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// Resolves parameter values: bindings first, then defaults.
    pub fn resolve(&self, overrides: &Bindings) -> Result<Bindings, LoadError> {
        for name in overrides.keys() {
            if !self.params.iter().any(|(p, _)| p == name) {
                return Err(LoadError::UnknownParameter(name.clone()));
            }
        }
        let mut b = Bindings::new();
        for (name, default) in &self.params {
            let v = match (overrides.get(name), default) {
                (Some(v), _) => v.clone(),
                (None, Some(e)) => e.eval(&b)?,
                (None, None) => return Err(LoadError::UnboundParameter(name.clone())),
            };
            b.insert(name.clone(), v);
        }
        for c in &self.nonzero {
            let v = c.eval(&b)?;
            if v.is_zero() {
                return Err(LoadError::NonzeroViolated {
                    condition: c.to_string(),
                    value: fmt_rational(&v),
                });
            }
        }
        Ok(b)
    }

    pub fn instantiate(&self, overrides: &Bindings) -> Result<Instance, LoadError> {
        let b = self.resolve(overrides)?;
        Instance::build(self, b)
    }

    /// Instantiations of the audit grid, in lexicographic grid order.
    /// Parameters without a grid line keep their default; points violating
    /// a nonzero condition are skipped.
    pub fn grid_points(&self) -> Result<Vec<Bindings>, LoadError> {
        let mut points = vec![Bindings::new()];
        for (name, values) in &self.grid {
            let mut next = Vec::new();
            for p in &points {
                for v in values {
                    let mut q = p.clone();
                    q.insert(name.clone(), v.eval(&Bindings::new())?);
                    next.push(q);
                }
            }
            points = next;
        }
        let mut out = Vec::new();
        for p in points {
            match self.resolve(&p) {
                Ok(_) => out.push(p),
                Err(LoadError::NonzeroViolated { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(x) if x.is_ascii_alphabetic() || x == '_') && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

fn join(values: &[ScalarExpr]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_row(r: &Row) -> String {
    format!("{} : {}", r.key.join(" "), join(&r.values))
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "KIND {}", self.kind.name())?;
        if self.fiber_dim > 0 {
            writeln!(f, "DIM {} {}", self.base_dim, self.fiber_dim)?;
        } else {
            writeln!(f, "DIM {}", self.base_dim)?;
        }
        if self.twist {
            writeln!(f, "TWIST")?;
        }
        if let Some(d) = self.degree {
            writeln!(f, "DEGREE {d}")?;
        }
        if let Some(fl) = self.flavor {
            writeln!(f, "FLAVOR {}", flavor_name(fl))?;
        }
        if let Some(s) = &self.select {
            writeln!(f, "SELECT {s}")?;
        }
        if !self.params.is_empty() {
            writeln!(f, "PARAMS")?;
            for (name, d) in &self.params {
                match d {
                    Some(e) => writeln!(f, "  {name} = {e}")?,
                    None => writeln!(f, "  {name}")?,
                }
            }
            writeln!(f, "END")?;
        }
        if !self.nonzero.is_empty() {
            writeln!(f, "NONZERO")?;
            for e in &self.nonzero {
                writeln!(f, "  {e}")?;
            }
            writeln!(f, "END")?;
        }
        if !self.grid.is_empty() {
            writeln!(f, "GRID")?;
            for (name, values) in &self.grid {
                writeln!(f, "  {name} = {}", join(values))?;
            }
            writeln!(f, "END")?;
        }
        for t in &self.tables {
            writeln!(f, "TABLE {}", t.name)?;
            for r in &t.rows {
                writeln!(f, "  {}", fmt_row(r))?;
            }
            writeln!(f, "END")?;
        }
        for c in &self.claims {
            writeln!(f, "CLAIM {}", c.text)?;
            match &c.check {
                ClaimCheck::Cell { table, row } => writeln!(f, "  cell {table} {}", fmt_row(row))?,
                ClaimCheck::Holds(x) => writeln!(f, "  holds {x}")?,
                ClaimCheck::Cocycle { component, row } => writeln!(f, "  cocycle {component} {}", fmt_row(row))?,
            }
            match &c.expect {
                Expectation::Confirmed => writeln!(f, "  expect CONFIRMED")?,
                Expectation::Discrepant { identity, witness } => {
                    write!(f, "  expect DISCREPANT")?;
                    if let Some(id) = identity {
                        write!(f, " {id}")?;
                    }
                    for w in witness {
                        write!(f, " {w}")?;
                    }
                    writeln!(f)?;
                }
            }
            writeln!(f, "END")?;
        }
        Ok(())
    }
}

/// A problem file with every parameter replaced by its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub kind: Kind,
    pub twist: bool,
    pub bindings: Bindings,
    /// The bracket as written (before any twist).
    pub bracket: SkewTensor3,
    pub alpha: Matrix,
    pub rho: Vec<Matrix>,
    pub nu: Vec<SkewTensor2>,
    pub endo: Matrix,
    pub omega: SkewTensor3,
    pub cochain: Option<DenseCochain>,
    pub flavor: Flavor,
}

struct Builder<'a> {
    n: usize,
    m: usize,
    b: &'a Bindings,
}

impl Builder<'_> {
    /// Labels to indices, checking the expected pattern (`'e'` or `'v'`, or
    /// `'h'` for either).
    fn key(&self, table: &str, row: &Row, pattern: &str) -> Result<Vec<usize>, LoadError> {
        if row.key.len() != pattern.len() {
            return Err(LoadError::Dimension(format!(
                "table `{table}` expects keys of {} labels, got `{}`",
                pattern.len(),
                row.key.join(" ")
            )));
        }
        let mut out = Vec::new();
        for (label, p) in row.key.iter().zip(pattern.chars()) {
            let (fiber, i) = parse_label(label).expect("checked at parse time");
            let ok = match p {
                'e' => !fiber,
                'v' => fiber,
                _ => true,
            };
            let bound = if fiber { self.m } else { self.n };
            if !ok || i >= bound {
                return Err(LoadError::Dimension(format!(
                    "label `{label}` does not fit table `{table}` with dim g = {}, dim V = {}",
                    self.n, self.m
                )));
            }
            out.push(if fiber && p == 'h' { self.n + i } else { i });
        }
        Ok(out)
    }

    fn values(&self, table: &str, row: &Row, len: usize) -> Result<Vec<Scalar>, LoadError> {
        if row.values.len() != len {
            return Err(LoadError::Dimension(format!(
                "table `{table}` row `{}` has {} values, expected {len}",
                row.key.join(" "),
                row.values.len()
            )));
        }
        row.values.iter().map(|e| Ok(e.eval(self.b)?)).collect()
    }
}

fn no_duplicates(table: &Table) -> Result<(), LoadError> {
    let mut seen = BTreeSet::new();
    for r in &table.rows {
        let mut k = r.key.clone();
        k.sort();
        if !seen.insert(k) {
            return Err(LoadError::Dimension(format!(
                "table `{}` sets `{}` twice",
                table.name,
                r.key.join(" ")
            )));
        }
    }
    Ok(())
}

impl Instance {
    fn build(f: &ProblemFile, b: Bindings) -> Result<Instance, LoadError> {
        let (n, m) = (f.base_dim, f.fiber_dim);
        if n == 0 {
            return Err(LoadError::Dimension("dim g must be positive".into()));
        }
        if f.kind != Kind::Algebra && m == 0 {
            return Err(LoadError::Dimension(format!("a {} file needs DIM n m with m > 0", f.kind.name())));
        }
        let bl = Builder { n, m, b: &b };
        let empty = Table {
            name: String::new(),
            rows: Vec::new(),
        };
        let table = |name: &str| -> Result<&Table, LoadError> {
            let t = f.table(name).unwrap_or(&empty);
            no_duplicates(t)?;
            Ok(t)
        };
        let mut bracket = SkewTensor3::zero(n, n);
        for r in &table("bracket")?.rows {
            let k = bl.key("bracket", r, "eee")?;
            bracket.set(k[0], k[1], k[2], bl.values("bracket", r, n)?)?;
        }
        let mut alpha = Matrix::identity(n);
        for r in &table("alpha")?.rows {
            let k = bl.key("alpha", r, "e")?;
            for (i, x) in bl.values("alpha", r, n)?.into_iter().enumerate() {
                alpha.set(i, k[0], x);
            }
        }
        let pairs = hom3lie::linalg::pairs(n);
        let mut rho = vec![Matrix::zeros(m, m); pairs.len()];
        for r in &table("rho")?.rows {
            let k = bl.key("rho", r, "eev")?;
            let vals = bl.values("rho", r, m)?;
            let (idx, neg) = hom3lie::linalg::signed_pair(n, k[0], k[1]).ok_or_else(|| {
                LoadError::Dimension(format!("rho at a repeated pair `{}`", r.key.join(" ")))
            })?;
            for (i, x) in vals.into_iter().enumerate() {
                rho[idx].set(i, k[2], if neg { -x } else { x });
            }
        }
        let mut nu = vec![SkewTensor2::zero(m, m); n];
        for r in &table("nu")?.rows {
            let k = bl.key("nu", r, "evv")?;
            nu[k[0]].set(k[1], k[2], bl.values("nu", r, m)?)?;
        }
        let mut endo = Matrix::identity(m);
        for r in &table("endo")?.rows {
            let k = bl.key("endo", r, "v")?;
            for (i, x) in bl.values("endo", r, m)?.into_iter().enumerate() {
                endo.set(i, k[0], x);
            }
        }
        let mut omega = SkewTensor3::zero(n, m);
        for r in &table("omega")?.rows {
            let k = bl.key("omega", r, "eee")?;
            omega.set(k[0], k[1], k[2], bl.values("omega", r, m)?)?;
        }
        let flavor = f.flavor.unwrap_or(Flavor::Generalized);
        let cochain = match f.degree {
            Some(d) if f.kind == Kind::Cochain => {
                let source = match flavor {
                    Flavor::Ordinary => n,
                    Flavor::Generalized => n + m,
                };
                let mut c = DenseCochain::zero(source, m, d);
                if flavor == Flavor::Generalized {
                    c = c.with_split(n);
                }
                let pattern = match flavor {
                    Flavor::Ordinary => "e".repeat(2 * d + 1),
                    Flavor::Generalized => "h".repeat(2 * d + 1),
                };
                for r in &table("phi")?.rows {
                    let k = bl.key("phi", r, &pattern)?;
                    let ps: Vec<(usize, usize)> = (0..d).map(|j| (k[2 * j], k[2 * j + 1])).collect();
                    c.set_basis(&ps, k[2 * d], &bl.values("phi", r, m)?);
                }
                Some(c)
            }
            _ => None,
        };
        Ok(Instance {
            kind: f.kind,
            twist: f.twist,
            bindings: b,
            bracket,
            alpha,
            rho,
            nu,
            endo,
            omega,
            cochain,
            flavor,
        })
    }

    pub fn base_dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.endo.rows()
    }

    /// `(g, [·,·,·], α)` as written, or `(g, α∘[·,·,·], α)` when twisted.
    pub fn algebra(&self) -> HomAlgebra {
        let t = if self.twist {
            self.bracket.map_values(&self.alpha)
        } else {
            self.bracket.clone()
        };
        HomAlgebra::new(t, self.alpha.clone()).expect("dimensions checked at load")
    }

    /// The written bracket with identity twist.
    pub fn untwisted_algebra(&self) -> HomAlgebra {
        HomAlgebra::untwisted(self.bracket.clone()).expect("dimensions checked at load")
    }

    /// `(ρ, ν, A)`, or `(A∘ρ, A∘ν, A)` when twisted.
    pub fn genrep(&self) -> GeneralizedRep {
        let (rho, nu) = if self.twist {
            (
                self.rho.iter().map(|r| self.endo.mul(r)).collect(),
                self.nu.iter().map(|x| x.map_values(&self.endo)).collect(),
            )
        } else {
            (self.rho.clone(), self.nu.clone())
        };
        GeneralizedRep::new(self.base_dim(), self.fiber_dim(), rho, nu, self.endo.clone()).expect("checked")
    }

    /// The written `(ρ, ν)` with identity endomorphism.
    pub fn untwisted_genrep(&self) -> GeneralizedRep {
        let m = self.fiber_dim();
        GeneralizedRep::new(self.base_dim(), m, self.rho.clone(), self.nu.clone(), Matrix::identity(m)).expect("checked")
    }

    pub fn representation(&self) -> Representation {
        self.genrep().ordinary()
    }

    pub fn extension(&self) -> ExtensionData {
        ExtensionData::new(self.algebra(), self.genrep(), self.omega.clone()).expect("dimensions checked at load")
    }

    /// Bindings rendered as `name=value`.
    pub fn binding_text(&self) -> String {
        fmt_bindings(&self.bindings)
    }
}

pub fn fmt_bindings(b: &Bindings) -> String {
    b.iter()
        .map(|(k, v)| format!("{k}={}", fmt_rational(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ProblemFile::parse(&text)
}

/// Reads, parses and instantiates a problem file.
pub fn load_problem(path: &Path, bindings: &Bindings) -> Result<Instance, LoadError> {
    read_problem(path)?.instantiate(bindings)
}

/// Parses `name=expr` binding arguments; later ones override earlier ones.
pub fn parse_bindings<S: AsRef<str>>(args: &[S]) -> Result<Bindings, LoadError> {
    let mut out = BTreeMap::new();
    for a in args {
        let a = a.as_ref();
        let Some((name, value)) = a.split_once('=') else {
            return syntax(0, format!("binding `{a}` is not of the form name=value"));
        };
        let name = name.trim();
        if !is_identifier(name) {
            return syntax(0, format!("`{name}` is not a parameter name"));
        }
        let v = expr_at(0, value.trim())?.eval(&out)?;
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hom3lie::linalg::int;

    const SMALL: &str = "
        KIND genrep   # comment
        DIM 3 2
        TWIST
        PARAMS
          lambda = 3
          r
        END
        NONZERO
          lambda
        END
        TABLE bracket
          e1 e2 e3 : 1, 0, 0
        END
        TABLE alpha
          e1 : lambda, 0, 0
        END
        TABLE rho
          e2 e1 v2 : -1, 0
          e1 e3 v2 : r, 0
        END
        TABLE nu
          e2 v2 v1 : -1, 0
        END
    ";

    fn bind(pairs: &[(&str, i64)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), int(*v))).collect()
    }

    #[test]
    fn loads_and_twists() {
        let f = ProblemFile::parse(SMALL).unwrap();
        let inst = f.instantiate(&bind(&[("r", 2)])).unwrap();
        assert_eq!(inst.algebra().br_basis(0, 1, 2), vec![int(3), int(0), int(0)]);
        let g = inst.genrep();
        // ρ(e1,e2)(v2) = v1 after the sign flip of the key, then twisted by A = id
        assert_eq!(g.act(0, 1).column(1), vec![int(1), int(0)]);
        assert_eq!(g.act(0, 2).column(1), vec![int(2), int(0)]);
        assert_eq!(g.nu()[1].get(0, 1), vec![int(1), int(0)]);
    }

    #[test]
    fn distinct_load_errors() {
        let f = ProblemFile::parse(SMALL).unwrap();
        assert!(matches!(f.instantiate(&Bindings::new()), Err(LoadError::UnboundParameter(p)) if p == "r"));
        assert!(matches!(
            f.instantiate(&bind(&[("r", 1), ("lambda", 0)])),
            Err(LoadError::NonzeroViolated { .. })
        ));
        assert!(matches!(
            f.instantiate(&bind(&[("r", 1), ("mu", 0)])),
            Err(LoadError::UnknownParameter(_))
        ));
        let bad = SMALL.replace("e1 e3 v2 : r, 0", "e1 e3 v2 : r, 0, 0");
        assert!(matches!(
            ProblemFile::parse(&bad).unwrap().instantiate(&bind(&[("r", 1)])),
            Err(LoadError::Dimension(_))
        ));
        let bad = SMALL.replace("e1 e3 v2", "e1 e4 v2");
        assert!(matches!(
            ProblemFile::parse(&bad).unwrap().instantiate(&bind(&[("r", 1)])),
            Err(LoadError::Dimension(_))
        ));
        let bad = SMALL.replace("r, 0", "r +, 0");
        assert!(matches!(ProblemFile::parse(&bad), Err(LoadError::Expr { offset: 3, .. })));
        assert!(matches!(
            ProblemFile::parse(&SMALL.replace("KIND genrep", "KIND ring")),
            Err(LoadError::Syntax { line: 2, .. })
        ));
        assert!(matches!(ProblemFile::parse("KIND algebra\nDIM 3\nPARAMS\n x\n"), Err(LoadError::Syntax { line: 3, .. })));
    }

    #[test]
    fn printing_round_trips() {
        let f = ProblemFile::parse(SMALL).unwrap();
        let again = ProblemFile::parse(&f.to_string()).unwrap();
        assert_eq!(again, f);
        let b = bind(&[("r", 5)]);
        assert_eq!(again.instantiate(&b).unwrap(), f.instantiate(&b).unwrap());
    }

    #[test]
    fn bindings_accept_expressions() {
        let b = parse_bindings(&["a=1/2", "b = a*4"]).unwrap();
        assert_eq!(b["b"], int(2));
        assert!(parse_bindings(&["a"]).is_err());
    }

    #[test]
    fn grid_skips_nonzero_violations() {
        let text = "KIND algebra\nDIM 3\nPARAMS\n a\n b = 1\nEND\nNONZERO\n a - b\nEND\nGRID\n a = 1, 2\n b = 1, 3\nEND\n";
        let f = ProblemFile::parse(text).unwrap();
        let pts = f.grid_points().unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(fmt_bindings(&pts[0]), "a=1, b=3");
    }
}
