use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("α = {at} is excluded: α∈C\\{{0,−1}}")]
    ForbiddenAlpha { at: String },
    #[error("pole: denominator vanishes at α = {at}")]
    Pole { at: String },
    #[error("cannot parse scalar {input:?} at byte {pos}")]
    Parse { input: String, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("invalid parameters for {family}: {constraint}")]
    Parameter {
        family: &'static str,
        constraint: &'static str,
    },
    #[error("basis symbol {symbol:?} does not belong to {family}")]
    ForeignSymbol { symbol: String, family: String },
    #[error("simple root {index} is not isotropic")]
    NotIsotropic { index: usize },
    #[error("simple system does not generate root {root} with coefficients of one sign")]
    Inconsistent { root: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerreError {
    #[error("a[{i}][{j}] = {value} is not a non-positive integer")]
    NonIntegralExponent { i: usize, j: usize, value: String },
    #[error("diagram inconsistency in {case}: {detail}")]
    DiagramConsistency { case: String, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeLieError {
    #[error("inhomogeneous expression: multidegrees {left:?} and {right:?}")]
    Inhomogeneous { left: Vec<u32>, right: Vec<u32> },
    #[error("generator index {index} out of range for rank {rank}")]
    BadGenerator { index: usize, rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("quotient computation did not close below height {max_height}")]
    NotClosed { max_height: u32 },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("unknown format {0:?}; expected one of ascii, json, latex, text")]
    Unknown(String),
    #[error("malformed diagram JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed diagram: {0}")]
    Invalid(String),
}

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Serre(#[from] SerreError),
    #[error(transparent)]
    FreeLie(#[from] FreeLieError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
