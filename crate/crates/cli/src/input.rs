//! Parsing of command-line values and input files.

use std::path::Path;

use clusterforge::cluster::{builtin_seed, BuiltinSeed, Seed, SeedRecord};
use clusterforge::dynkin::{parse_word, DynkinType};
use clusterforge::phi::ChiEngine;
use clusterforge::prepmod::RatRep;
use num_rational::BigRational;

use crate::error::{invalid, CliError};

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
}

pub fn module(path: &Path) -> Result<RatRep, CliError> {
    RatRep::from_json(&read_file(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

pub fn ty(s: &str) -> Result<DynkinType, CliError> {
    Ok(s.parse::<DynkinType>()?)
}

/// `1,3,1,2` (spaces and empty input allowed).
pub fn word(s: &str) -> Result<Vec<usize>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    parse_word(s).map_err(|e| invalid(format!("bad word `{s}`: {e}")))
}

/// Comma-separated rationals such as `1,1/2,3`.
pub fn point(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',').map(|v| v.trim().parse::<BigRational>().map_err(|_| invalid(format!("bad rational `{v}`")))).collect()
}

/// `builtin:<name>` (with `n` for the quadric) or a seed JSON file.
pub fn seed(source: &str, n: Option<usize>) -> Result<Seed, CliError> {
    if source.starts_with("builtin:")
        || !Path::new(source).exists() && !source.contains('/') && !source.ends_with(".json")
    {
        return Ok(builtin_seed(&BuiltinSeed::parse(source, n)?)?);
    }
    let rec: SeedRecord = serde_json::from_str(&read_file(Path::new(source))?)?;
    Ok(Seed::from_record(&rec)?)
}

pub fn engine() -> Result<ChiEngine, CliError> {
    ChiEngine::from_env().map_err(invalid)
}
