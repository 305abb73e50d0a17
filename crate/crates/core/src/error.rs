use thiserror::Error;

use crate::numeric::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument {0} lies outside [0,1]")]
    Domain(Rational),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cannot parse {what} from {input:?}")]
    Syntax { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
