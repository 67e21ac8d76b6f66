//! Error and validation-report types shared across the crate.
//!
//! Structural law violations discovered by the exhaustive validators are not
//! errors; they are collected into a [`ValidationReport`] so that a caller can
//! inspect every broken law together with a witness. Errors proper are
//! reserved for operations that cannot produce a value at all.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A single violated law together with the witnesses that break it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Short name of the law, e.g. `"associativity"`.
    pub law: String,
    /// The elements witnessing the violation, rendered as text.
    pub witnesses: Vec<String>,
    /// Human-readable description of what failed.
    pub message: String,
}

/// Outcome of an exhaustive validator. Empty means every law holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, law: &str, witnesses: Vec<String>, message: String) {
        self.violations.push(Violation {
            law: law.to_string(),
            witnesses,
            message,
        });
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// First violation rendered as a one-line summary, for error payloads.
    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "no violations".to_string(),
            Some(v) => format!(
                "{} ({} violation{} total): {}",
                v.law,
                self.violations.len(),
                if self.violations.len() == 1 { "" } else { "s" },
                v.message
            ),
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "all laws hold");
        }
        for v in &self.violations {
            writeln!(f, "violated {}: {} [{}]", v.law, v.message, v.witnesses.join(", "))?;
        }
        Ok(())
    }
}

/// Errors produced by groupoid, linear-algebra, transfer and text-format
/// operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("arrows not composable: source of {g} is {g_src} but target of {h} is {h_tgt}")]
    NotComposable {
        g: usize,
        h: usize,
        g_src: usize,
        h_tgt: usize,
    },

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular: {0}")]
    SingularMatrix(String),

    #[error("self-map is not invertible: {0}")]
    NotInvertible(String),

    #[error("not a bisection: {0}")]
    InvalidBisection(String),

    #[error("map is not semi-linear: {0}")]
    NotSemilinear(String),

    #[error("representation is not local: {0}")]
    NotLocal(String),

    #[error("not enough bisections: {0}")]
    NotEnoughBisections(String),

    #[error("recovered value depends on the chosen witness: {0}")]
    ChoiceDependent(String),

    #[error("section is not constant on source fibres: {0}")]
    NotConstantOnFibers(String),

    #[error("recovered representation disagrees with input on the base: {0}")]
    AgreementFailure(String),

    #[error("bundle morphism is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("search space of {space} candidates exceeds the bound {bound}")]
    TooLarge { space: u128, bound: u128 },

    #[error("invalid groupoid: {}", .0.summary())]
    InvalidGroupoid(ValidationReport),

    #[error("invalid representation: {}", .0.summary())]
    InvalidRep(ValidationReport),

    #[error("syntax error at line {line}, column {col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },

    #[error("semantic error at line {line}: {message}")]
    Semantic { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
