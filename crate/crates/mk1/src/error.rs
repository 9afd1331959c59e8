use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet arity {0} out of range (need 2..=26)")]
    BadArity(usize),
    #[error("letter index {letter} out of range for a {k}-letter alphabet")]
    BadLetter { letter: u8, k: usize },
    #[error("alphabet mismatch: k={0} vs k={1}")]
    AlphabetMismatch(usize, usize),
    #[error("words {0} and {1} violate the prefix-code condition")]
    NotAntichain(String, String),
    #[error("rewrite rule not applicable: {0}")]
    RuleNotApplicable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("order violation: {0}")]
    OrderViolation(String),
    #[error("search budget exceeded: needed about {needed} evaluations, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
