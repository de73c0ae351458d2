//! On-disk scatter cache under `$LADDERREL_CACHE`, keyed by family, n, rho, destination and precision.

use ladderrel::exact::Rational;
use ladderrel::graphs::{Destination, Family};
use ladderrel::zeros::{zero_scatter_to, ZeroSet};
use ladderrel::{Error, Result};
use serde_json::{json, Value};
use std::path::PathBuf;

pub const FORMAT_VERSION: u64 = 1;

fn key(family: Family, n: usize, rho: &Rational, dest: Option<Destination>, precision: Option<u32>) -> String {
    let d = dest.map_or("default".to_string(), |d| format!("{d:?}").to_lowercase());
    let p = precision.map_or("auto".to_string(), |p| p.to_string());
    format!("{}_n{n}_rho{}_{}_{d}_{p}.json", family.short_name(), rho.numer(), rho.denom())
}

fn dir() -> Option<PathBuf> {
    std::env::var_os("LADDERREL_CACHE").filter(|s| !s.is_empty()).map(PathBuf::from)
}

fn read(path: &PathBuf) -> Option<ZeroSet> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).ok()?).ok()?;
    if v["format_version"].as_u64() != Some(FORMAT_VERSION) {
        return None;
    }
    ZeroSet::from_json(&v["zero_set"]).ok()
}

/// Zeros from the cache when present, otherwise computed and stored.
pub fn scatter(family: Family, n: usize, rho: &Rational, dest: Option<Destination>, precision: Option<u32>) -> Result<ZeroSet> {
    let path = dir().map(|d| d.join(key(family, n, rho, dest, precision)));
    if let Some(z) = path.as_ref().and_then(read) {
        return Ok(z);
    }
    let z = zero_scatter_to(family, n, rho, dest.or_else(|| ladderrel::genfunc::builtin_destination(family)), precision)?;
    if let Some(path) = path {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
        std::fs::create_dir_all(path.parent().expect("file in a directory")).map_err(io)?;
        let body = json!({"format_version": FORMAT_VERSION, "zero_set": z.to_json()});
        std::fs::write(&path, serde_json::to_string(&body).expect("serializable")).map_err(io)?;
    }
    Ok(z)
}
