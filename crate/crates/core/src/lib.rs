//! Cycle embeddings in finite projective spaces PG(n,q).
//!
//! A k-cycle embeds in PG(n,q) when its vertices go to k distinct points and
//! its edges to k distinct lines, each edge's line passing through both of
//! its endpoints. This crate builds such embeddings for every length
//! 3 ≤ k ≤ |PG(n,q)| and checks each one with an independent verifier.
//!
//! - [`gf`]: GF(p^e) arithmetic with a canonical modulus.
//! - [`geometry`]: points, RREF subspaces, pencils of hyperplanes, frames.
//! - [`collineations`]: projectivities, flag alignment, endpoint moves.
//! - [`plane`]: cycles and anchored paths in PG(2,q), Singer cycles.
//! - [`space`]: hyperplane-anchored cycles and full pancyclicity in PG(n,q).
//! - [`verifier`]: the independent oracle.
//! - [`certificate`]: the JSON interchange format.

pub mod certificate;
pub mod collineations;
pub mod embedding;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod plane;
pub mod space;
pub mod verifier;

pub use embedding::{CycleEmbedding, Flavor, OpenMode, PathEmbedding};
pub use error::{Error, Result};
pub use geometry::{GeometryContext, Point, Subspace};
pub use gf::{FieldElement, GaloisField};
