//! Commands behind the `pgc` binary.
//!
//! Each command returns its result as data; `main` only parses flags, prints
//! and maps errors to exit codes:
//! 0 success, 1 verification failure, 2 bad input, 3 internal self-check
//! failure, 4 search exhausted.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use pg_cycles::certificate::{Certificate, Provenance};
use pg_cycles::geometry::{count_lines, count_points};
use pg_cycles::space::{embed_cycle, sigma_anchored_cycle};
use pg_cycles::verifier::{brute_force_cycle_count, VerificationReport};
use pg_cycles::{Error, GeometryContext};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed:\n{0}")]
    Invalid(VerificationReport),
    #[error("{0}")]
    BadInput(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("{0}")]
    SearchExhausted(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::BadInput(_) => 2,
            CliError::SelfCheck(_) => 3,
            CliError::SearchExhausted(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchExhausted(_) => CliError::SearchExhausted(e.to_string()),
            Error::CaseViolation(_)
            | Error::NoValidMove
            | Error::NotInCycle(_)
            | Error::FlagInvalid(_) => CliError::SelfCheck(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Info {
    pub n: usize,
    pub q: u64,
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub points: u128,
    pub lines: u128,
    pub points_per_line: u64,
    pub max_k: u128,
}

pub fn cmd_info(n: usize, q: u64) -> CliResult<Info> {
    let ctx = GeometryContext::from_order(n, q)?;
    let field = ctx.field();
    Ok(Info {
        n,
        q,
        p: field.p(),
        e: field.e(),
        modulus: field.modulus().to_vec(),
        points: count_points(n, q),
        lines: count_lines(n, q),
        points_per_line: q + 1,
        max_k: count_points(n, q),
    })
}

/// Builds a k-cycle and returns its certificate after re-verifying it.
///
/// With `anchored`, the cycle meets the canonical hyperplane in exactly two
/// vertices and one edge, and the certificate records that anchor.
pub fn cmd_embed(n: usize, q: u64, k: usize, seed: u64, anchored: bool) -> CliResult<Certificate> {
    let ctx = GeometryContext::from_order(n, q)?;
    let mut command = format!("embed --n {n} --q {q} --k {k} --seed {seed}");
    let (cycle, anchor) = if anchored {
        command.push_str(" --anchored");
        let h = ctx.canonical_hyperplane();
        (sigma_anchored_cycle(&ctx, &h, k, seed)?, Some(h))
    } else {
        (embed_cycle(&ctx, k, seed)?, None)
    };
    let provenance = Provenance {
        command,
        seed,
        artifact_version: ARTIFACT_VERSION.to_string(),
    };
    let cert = Certificate::from_cycle(&ctx, &cycle, anchor.as_ref(), provenance);
    let reread =
        Certificate::from_json(&cert.to_json()).map_err(|e| CliError::SelfCheck(e.to_string()))?;
    let report = reread
        .verify()
        .map_err(|e| CliError::SelfCheck(e.to_string()))?;
    if !report.valid || reread.k != k {
        return Err(CliError::SelfCheck(report.to_string()));
    }
    Ok(cert)
}

/// Parses and verifies certificate text.
pub fn cmd_verify(text: &str) -> CliResult<VerificationReport> {
    let cert = Certificate::from_json(text)?;
    let report = cert.verify()?;
    if report.valid {
        Ok(report)
    } else {
        Err(CliError::Invalid(report))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub k: usize,
    /// "verified", "invalid" or "error".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub q: u64,
    pub seed: u64,
    pub total: usize,
    pub verified: usize,
    pub results: Vec<SweepEntry>,
}

impl SweepSummary {
    pub fn all_verified(&self) -> bool {
        self.verified == self.total
    }
}

/// Embeds and verifies every length 3..=|PG(n,q)|, in parallel over k.
pub fn cmd_sweep(n: usize, q: u64, seed: u64) -> CliResult<SweepSummary> {
    let ctx = GeometryContext::from_order(n, q)?;
    ctx.enumerate_points()?;
    let max = count_points(n, q) as usize;
    let results: Vec<SweepEntry> = (3..=max)
        .into_par_iter()
        .map(|k| {
            let start = Instant::now();
            let (status, detail) = match cmd_embed(n, q, k, seed, false) {
                Ok(_) => ("verified", None),
                Err(CliError::SelfCheck(d)) => ("invalid", Some(d)),
                Err(e) => ("error", Some(e.to_string())),
            };
            SweepEntry {
                k,
                status: status.to_string(),
                detail,
                millis: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    let verified = results.iter().filter(|r| r.status == "verified").count();
    Ok(SweepSummary {
        n,
        q,
        seed,
        total: results.len(),
        verified,
        results,
    })
}

pub fn cmd_count(n: usize, q: u64, k: usize) -> CliResult<u64> {
    let ctx = GeometryContext::from_order(n, q)?;
    Ok(brute_force_cycle_count(&ctx, k)?)
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, contents)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    fs::rename(&tmp, path).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info_pg32() {
        let info = cmd_info(3, 2).unwrap();
        assert_eq!((info.points, info.lines, info.max_k), (15, 35, 15));
        assert_eq!(cmd_info(2, 4).unwrap().points, 21);
        assert_eq!(cmd_info(3, 6).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn embed_exit_codes() {
        let cert = cmd_embed(3, 2, 15, 0, false).unwrap();
        assert_eq!(cert.vertices.len(), 15);
        assert_eq!(cmd_embed(3, 2, 16, 0, false).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_embed(3, 2, 11, 0, true).unwrap_err().exit_code(), 2);
        assert!(cmd_embed(3, 2, 10, 0, true).unwrap().anchor.is_some());
    }

    #[test]
    fn verify_round_trip() {
        let text = cmd_embed(2, 2, 7, 0, false).unwrap().to_json();
        assert!(cmd_verify(&text).is_ok());
        assert_eq!(
            cmd_verify(&text[..text.len() / 2]).unwrap_err().exit_code(),
            2
        );
    }

    #[test]
    fn count() {
        assert_eq!(cmd_count(2, 2, 3).unwrap(), 28);
        assert_eq!(cmd_count(2, 2, 2).unwrap(), 0);
        assert_eq!(cmd_count(3, 3, 5).unwrap_err().exit_code(), 2);
    }
}
