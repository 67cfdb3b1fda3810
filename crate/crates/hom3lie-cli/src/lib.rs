//! Problem files, the fixture audit and the `hom3lie` command line.

pub mod audit;
pub mod commands;
pub mod expr;
pub mod problem;

pub use audit::{audit_dir, audit_problem, FileAudit, Finding, Status};
pub use commands::{run_command, Outcome};
pub use expr::{parse_scalar_expr, Bindings, EvalError, ParseError, ScalarExpr};
pub use problem::{load_problem, parse_bindings, Instance, Kind, LoadError, ProblemFile};
