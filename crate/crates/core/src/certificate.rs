//! Self-contained JSON certificates for embedded cycles.
//!
//! A certificate carries the field (p, e and the modulus itself), the
//! dimension, the vertices as integer coordinates and every edge with its
//! line. [`Certificate::verify`] rebuilds the geometry from the header alone
//! and runs the verifier on the stored data.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::embedding::CycleEmbedding;
use crate::error::{Error, Result};
use crate::geometry::{GeometryContext, Point, Subspace};
use crate::gf::{FieldElement, GaloisField};
use crate::verifier::{verify_cycle, verify_sigma_properties, Failure, VerificationReport};

pub const CERTIFICATE_VERSION: &str = "pgc-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub n: usize,
    /// Constant term first.
    pub modulus: Vec<u32>,
    pub k: usize,
    pub vertices: Vec<Vec<u32>>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<AnchorRecord>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    /// RREF basis of the line.
    pub line: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorRecord {
    /// RREF basis of the anchor hyperplane.
    pub basis: Vec<Vec<u32>>,
    pub expected_vertices: usize,
    pub expected_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub command: String,
    pub seed: u64,
    pub artifact_version: String,
}

impl Certificate {
    pub fn from_cycle(
        ctx: &GeometryContext,
        cycle: &CycleEmbedding,
        anchor: Option<&Subspace>,
        provenance: Provenance,
    ) -> Self {
        let field = ctx.field();
        let k = cycle.len();
        Certificate {
            version: CERTIFICATE_VERSION.to_string(),
            p: field.p(),
            e: field.e(),
            q: field.q(),
            n: ctx.n(),
            modulus: field.modulus().to_vec(),
            k,
            vertices: cycle.vertices.iter().map(Point::to_ints).collect(),
            edges: cycle
                .edge_lines
                .iter()
                .enumerate()
                .map(|(j, l)| EdgeRecord {
                    from: j,
                    to: (j + 1) % k,
                    line: l.to_ints(),
                })
                .collect(),
            anchor: anchor.map(|a| AnchorRecord {
                basis: a.to_ints(),
                expected_vertices: 2,
                expected_edges: 1,
            }),
            provenance,
        }
    }

    /// Pretty JSON with a trailing newline; byte-identical for equal certificates.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// The geometry described by the header.
    pub fn context(&self) -> Result<GeometryContext> {
        if self.version != CERTIFICATE_VERSION {
            return Err(Error::Malformed(format!(
                "unknown version {:?}",
                self.version
            )));
        }
        let field = GaloisField::with_explicit_modulus(self.p as u64, self.e, &self.modulus)
            .map_err(|e| Error::Malformed(format!("field: {e}")))?;
        if field.q() != self.q {
            return Err(Error::Malformed(format!(
                "q = {} but p^e = {}",
                self.q,
                field.q()
            )));
        }
        GeometryContext::new(self.n, Arc::new(field))
            .map_err(|e| Error::Malformed(format!("geometry: {e}")))
    }

    /// Rebuilds the geometry and checks the stored cycle (and anchor counts,
    /// if an anchor is present). Header problems are errors; anything wrong
    /// with the embedding itself is reported as a failure.
    pub fn verify(&self) -> Result<VerificationReport> {
        let ctx = self.context()?;
        let anchor = match &self.anchor {
            Some(a) => {
                let s = ctx
                    .subspace_from_ints(&a.basis)
                    .map_err(|e| Error::Malformed(format!("anchor: {e}")))?;
                if s.to_ints() != a.basis {
                    return Err(Error::Malformed("anchor basis is not in RREF".into()));
                }
                Some((s, (a.expected_vertices, a.expected_edges)))
            }
            None => None,
        };

        let mut shape = Vec::new();
        let in_range = |row: &[u32]| row.len() == ctx.width() && row.iter().all(|&x| x < self.q);
        for (i, v) in self.vertices.iter().enumerate() {
            if !in_range(v) {
                shape.push(format!(
                    "vertex {i} is not a vector of {} elements of GF({})",
                    ctx.width(),
                    self.q
                ));
            }
        }
        for (j, e) in self.edges.iter().enumerate() {
            if e.line.len() != 2 || !e.line.iter().all(|r| in_range(r)) {
                shape.push(format!(
                    "edge {j} line is not a 2×{} matrix over GF({})",
                    ctx.width(),
                    self.q
                ));
            }
        }
        if !shape.is_empty() {
            return Ok(VerificationReport {
                valid: false,
                failures: shape
                    .into_iter()
                    .map(|detail| Failure {
                        check: "shape".into(),
                        detail,
                    })
                    .collect(),
                stats: Default::default(),
            });
        }

        let to_row = |r: &[u32]| r.iter().map(|&x| FieldElement::raw(x)).collect::<Vec<_>>();
        let cycle = CycleEmbedding {
            vertices: self
                .vertices
                .iter()
                .map(|v| Point::unchecked(to_row(v)))
                .collect(),
            edge_lines: self
                .edges
                .iter()
                .map(|e| Subspace::unchecked(e.line.iter().map(|r| to_row(r)).collect()))
                .collect(),
        };
        let mut report = verify_cycle(&ctx, &cycle);
        let k = self.vertices.len();
        let mut extra = VerificationReport {
            valid: true,
            ..Default::default()
        };
        if self.k != k {
            extra.failures.push(Failure {
                check: "length".into(),
                detail: format!("k = {} but {k} vertices", self.k),
            });
        }
        for (j, e) in self.edges.iter().enumerate() {
            if k > 0 && (e.from != j || e.to != (j + 1) % k) {
                extra.failures.push(Failure {
                    check: "edge-order".into(),
                    detail: format!(
                        "edge {j} joins {} and {}, expected {j} and {}",
                        e.from,
                        e.to,
                        (j + 1) % k
                    ),
                });
            }
        }
        report.absorb(extra);
        if let Some((s, expected)) = anchor {
            report.absorb(verify_sigma_properties(&ctx, &cycle, &s, expected));
        }
        Ok(report)
    }
}
