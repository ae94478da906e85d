//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("probability {value} outside [0, 1]")]
    InvalidProbability { value: f64 },

    #[error("non-finite input {name} = {value}")]
    NonFiniteInput { name: &'static str, value: f64 },

    #[error("invalid derivative order {order} (supported: {supported})")]
    InvalidOrder { order: u8, supported: &'static str },

    #[error("invalid solver configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("alpha is only defined on [0, p+]; got p1 = {p1}")]
    NoAlphaBranch { p1: f64 },

    #[error("no root: the defining equation has no solution for p1 = {p1}")]
    NoRoot { p1: f64 },

    #[error("no gamma solution for p1 = {p1}: {reason}")]
    NoGamma { p1: f64, reason: String },

    #[error("multiple sign crossings for p1 = {p1}; smallest near p2 = {smallest}")]
    MultiCross {
        p1: f64,
        smallest: f64,
        crossings: Vec<f64>,
    },

    #[error("pair ({p1}, {p2}) lies on the triangle boundary; use the boundary-case analysis")]
    BoundaryCase { p1: f64, p2: f64 },

    #[error("bracket endpoints do not straddle a sign change: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    BracketSignFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("no bracket found: {what}")]
    NoBracket { what: String },

    #[error("domain error: {what}")]
    Domain { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
