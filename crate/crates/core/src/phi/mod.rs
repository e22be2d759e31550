//! Euler characteristics of varieties of composition series, and the
//! functions `φ_M` on the unipotent group they assemble into.

mod count;
mod eval;

pub use count::{ChiEngine, MemoStats};
pub use eval::{
    phi_eval, positivity_check, verify_multiplication, weight_grading_holds, MultiplicationReport, PhiResult,
    PositivityReport,
};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::laurent::LaurentError;
use crate::nmatrix::NMatrixError;
use crate::prepmod::{PrepmodError, RatRep};

#[derive(Debug, Error)]
pub enum PhiError {
    #[error("χ is undetermined: interpolation did not stabilise within {primes} primes")]
    Undetermined { primes: usize },
    #[error("the exact backend cannot handle this word (a socle step has a choice of subspaces)")]
    NotExact,
    #[error("memo table exceeded its budget of {budget} bytes")]
    ResourceLimit { budget: usize },
    #[error("non-integral value {0} where an integer is required")]
    NonIntegral(String),
    #[error("evaluation point must be strictly positive (coordinate {index} is {value})")]
    NonPositivePoint { index: usize, value: String },
    #[error("point has {found} coordinates, word has {expected} letters")]
    PointLength { found: usize, expected: usize },
    #[error("unknown χ backend `{0}`")]
    UnknownBackend(String),
    #[error(transparent)]
    Prepmod(#[from] PrepmodError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    NMatrix(#[from] NMatrixError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "backend", rename_all = "kebab-case")]
pub enum Provenance {
    ExactEnumeration,
    Interpolated { primes_used: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiValue {
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
    #[serde(flatten)]
    pub provenance: Provenance,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A way of computing `χ_{i,M}`.
pub trait ChiBackend {
    fn name(&self) -> &'static str;
    fn chi(&self, engine: &mut ChiEngine, m: &RatRep, word: &[usize]) -> Result<ChiValue, PhiError>;
}

/// Counts chains over the rationals; only applies when each run of a letter
/// `i` of length `r` meets an `S_i`-socle part of dimension at most `r`, so
/// that every step is forced.
pub struct ExactBackend;

/// Counts points over `F_p` for increasing primes and evaluates the
/// interpolating polynomial at `q = 1`.
pub struct InterpolatedBackend;

/// Exact when possible, interpolated otherwise.
pub struct AutoBackend;

impl ChiBackend for ExactBackend {
    fn name(&self) -> &'static str {
        "exact"
    }
    fn chi(&self, engine: &mut ChiEngine, m: &RatRep, word: &[usize]) -> Result<ChiValue, PhiError> {
        let value = engine.exact(m, word)?.ok_or(PhiError::NotExact)?;
        Ok(ChiValue { value, provenance: Provenance::ExactEnumeration })
    }
}

impl ChiBackend for InterpolatedBackend {
    fn name(&self) -> &'static str {
        "interpolated"
    }
    fn chi(&self, engine: &mut ChiEngine, m: &RatRep, word: &[usize]) -> Result<ChiValue, PhiError> {
        let (value, primes) = engine.interpolate(m, word)?;
        Ok(ChiValue { value, provenance: Provenance::Interpolated { primes_used: primes } })
    }
}

impl ChiBackend for AutoBackend {
    fn name(&self) -> &'static str {
        "auto"
    }
    fn chi(&self, engine: &mut ChiEngine, m: &RatRep, word: &[usize]) -> Result<ChiValue, PhiError> {
        match engine.exact(m, word)? {
            Some(value) => Ok(ChiValue { value, provenance: Provenance::ExactEnumeration }),
            None => InterpolatedBackend.chi(engine, m, word),
        }
    }
}

pub const CHI_BACKENDS: &[&str] = &["auto", "exact", "interpolated"];

pub fn chi_backend(name: &str) -> Result<Box<dyn ChiBackend>, PhiError> {
    match name {
        "auto" => Ok(Box::new(AutoBackend)),
        "exact" => Ok(Box::new(ExactBackend)),
        "interpolated" => Ok(Box::new(InterpolatedBackend)),
        other => Err(PhiError::UnknownBackend(other.to_string())),
    }
}

/// `χ_{i,M}` with the automatic backend and a fresh engine.
pub fn chi(m: &RatRep, word: &[usize]) -> Result<ChiValue, PhiError> {
    AutoBackend.chi(&mut ChiEngine::new(), m, word)
}
