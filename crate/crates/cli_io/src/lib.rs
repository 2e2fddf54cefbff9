//! JSON documents, content hashing, reports and the command-line front end.
//!
//! Every document is canonical JSON (sorted keys, no whitespace) with a `format_version` and a
//! `kind`. Cross-references carry the SHA-256 of the referenced document's canonical bytes.

pub mod canonical;
pub mod commands;
pub mod corpus;
pub mod docs;
pub mod report;
pub mod workspace;

use algebra_objects::AlgebraError;
use category_core::CategoryError;
use cp_multipliers::CpError;
use graded_spaces::GradedError;
use representations::RepError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("io: {0}")]
    Io(String),
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("{path}: content hash {found} does not match the reference {expected}")]
    HashMismatch { path: String, expected: String, found: String },
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cp(#[from] CpError),
}

impl CliError {
    /// Stable machine-readable code for the structured error document.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Schema(_) => "schema",
            CliError::HashMismatch { .. } => "hash_mismatch",
            CliError::Unresolved(_) => "unresolved_reference",
            CliError::Unsupported(_) => "unsupported",
            CliError::Category(_) => "category",
            CliError::Algebra(_) => "algebra",
            CliError::Graded(_) => "graded_space",
            CliError::Rep(_) => "representation",
            CliError::Cp(_) => "multiplier",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
