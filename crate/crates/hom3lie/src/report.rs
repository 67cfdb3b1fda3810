use std::fmt;

use crate::linalg::{fmt_vector, Scalar};

/// One failed instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    /// Basis labels of the arguments, e.g. `["e1", "e2", "v1"]`.
    pub witness: Vec<String>,
    /// Both sides flattened to coordinates (matrices row-major).
    pub left: Vec<Scalar>,
    pub right: Vec<Scalar>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}): left {} != right {}",
            self.identity,
            self.witness.join(", "),
            fmt_vector(&self.left),
            fmt_vector(&self.right)
        )
    }
}

/// Outcome of a brute-force validation. Passes iff there are no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
    /// Number of identity instances evaluated.
    pub checked: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one instance; a violation is kept when `left != right`.
    pub fn check(&mut self, identity: &str, witness: Vec<String>, left: Vec<Scalar>, right: Vec<Scalar>) {
        self.checked += 1;
        if left != right {
            self.violations.push(Violation {
                identity: identity.to_string(),
                witness,
                left,
                right,
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// Violations of the given identity label.
    pub fn of<'a>(&'a self, identity: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.identity == identity)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass ({} instances checked)", self.checked);
        }
        writeln!(f, "fail ({} of {} instances violated)", self.violations.len(), self.checked)?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

pub fn label_g(i: usize) -> String {
    format!("e{}", i + 1)
}

pub fn label_v(i: usize) -> String {
    format!("v{}", i + 1)
}

/// Label of basis index `i` of `g ⊕ V` where `g` has dimension `n`.
pub fn label_h(i: usize, n: usize) -> String {
    if i < n {
        label_g(i)
    } else {
        label_v(i - n)
    }
}
