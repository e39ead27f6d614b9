//! Concrete rank oracles and their natural operator constructors.

pub mod chain;
pub mod circuit;
pub mod graphic;
pub mod ideal;
pub mod linear;
pub mod trivial;

use thiserror::Error;

use crate::matroid::MatroidError;
use crate::multiindex::IndexError;
use crate::operators::SystemError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BackendError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Big-endian encoding of a signed integer sequence, prefixed by its length.
pub(crate) fn encode_ints(tag: u8, xs: impl ExactSizeIterator<Item = i64>) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 4 + 8 * xs.len());
    out.push(tag);
    out.extend_from_slice(&(xs.len() as u32).to_be_bytes());
    for x in xs {
        out.extend_from_slice(&x.to_be_bytes());
    }
    out
}
