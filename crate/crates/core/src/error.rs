//! Error and budget types shared by every module.
//!
//! All searches in this crate are bounded. When a bound is hit the operation
//! fails with [`Error::BudgetExceeded`] naming the offending quantity; nothing
//! is ever silently truncated.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded in {what}: required {required}, budget {budget}")]
    BudgetExceeded {
        what: String,
        required: u64,
        budget: u64,
    },

    /// Construction data violated an invariant (bad table, bad hom, ...).
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    /// The operation is defined, but not for this class of input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A JSON input could not be parsed. Position is 1-based line/column.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget(what: impl Into<String>, required: u64, budget: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            required,
            budget,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidConstruction(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn from_json(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

/// Search bounds used across the crate.
///
/// A single budget value caps every exhaustive enumeration: hom assignment
/// spaces, lattice point boxes, membership searches. Callers can tighten or
/// relax it per run (the CLI reads `F1GEOM_BUDGET`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate assignments / lattice points visited.
    pub max_steps: u64,
    /// Maximum word length in finitely presented monoid rewriting.
    pub word_bound: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 20_000_000,
            word_bound: 24,
        }
    }
}

impl Budget {
    pub fn with_steps(max_steps: u64) -> Self {
        Budget {
            max_steps,
            ..Budget::default()
        }
    }

    /// Check `required` against the step budget.
    pub fn check(&self, what: &str, required: u64) -> Result<()> {
        if required > self.max_steps {
            Err(Error::budget(what, required, self.max_steps))
        } else {
            Ok(())
        }
    }
}
