use crate::error::{Error, Result};
use crate::linalg::{self, Row};

use super::{GeometryContext, Point, Subspace};

/// Identifies a d-dimensional subspace S of PG(n,q) with PG(d,q).
///
/// The chart is S's RREF basis: small coordinates `c` lift to `c·chart`.
/// Because the chart is in RREF, the preimage of a point of S is read off
/// its pivot columns.
#[derive(Clone, Debug)]
pub struct SubspaceFrame {
    ambient: GeometryContext,
    target: Subspace,
    small: GeometryContext,
    pivots: Vec<usize>,
}

impl SubspaceFrame {
    pub(super) fn new(ambient: GeometryContext, target: Subspace) -> Result<Self> {
        if target.rank() < 2 {
            return Err(Error::WrongDimension {
                expected: 1,
                got: target.projective_dim(),
            });
        }
        if target.rows()[0].len() != ambient.width() {
            return Err(Error::DimensionMismatch {
                expected: ambient.width(),
                got: target.rows()[0].len(),
            });
        }
        let small =
            GeometryContext::any_dimension(target.projective_dim(), ambient.field_arc().clone());
        let pivots = target.pivots();
        Ok(SubspaceFrame {
            ambient,
            target,
            small,
            pivots,
        })
    }

    pub fn ambient(&self) -> &GeometryContext {
        &self.ambient
    }

    pub fn target(&self) -> &Subspace {
        &self.target
    }

    /// PG(d,q) in the frame's own coordinates.
    pub fn small(&self) -> &GeometryContext {
        &self.small
    }

    pub fn chart(&self) -> &[Row] {
        self.target.rows()
    }

    pub fn lift_point(&self, p: &Point) -> Result<Point> {
        if p.coords().len() != self.small.width() {
            return Err(Error::DimensionMismatch {
                expected: self.small.width(),
                got: p.coords().len(),
            });
        }
        let v = linalg::vec_mat(self.ambient.field(), p.coords(), self.chart());
        self.ambient.normalize_point(&v)
    }

    pub fn restrict_point(&self, p: &Point) -> Result<Point> {
        let c = self.restrict_vector(p.coords())?;
        self.small.normalize_point(&c)
    }

    pub fn lift_subspace(&self, s: &Subspace) -> Result<Subspace> {
        let rows = s
            .rows()
            .iter()
            .map(|r| {
                if r.len() != self.small.width() {
                    return Err(Error::DimensionMismatch {
                        expected: self.small.width(),
                        got: r.len(),
                    });
                }
                Ok(linalg::vec_mat(self.ambient.field(), r, self.chart()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.ambient.subspace_from_rows(rows)
    }

    /// Lines of PG(d,q) lift to lines of S.
    pub fn lift_line(&self, line: &Subspace) -> Result<Subspace> {
        self.lift_subspace(line)
    }

    pub fn restrict_subspace(&self, s: &Subspace) -> Result<Subspace> {
        let rows = s
            .rows()
            .iter()
            .map(|r| self.restrict_vector(r))
            .collect::<Result<Vec<_>>>()?;
        self.small.subspace_from_rows(rows)
    }

    fn restrict_vector(&self, v: &[crate::gf::FieldElement]) -> Result<Row> {
        if v.len() != self.ambient.width() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient.width(),
                got: v.len(),
            });
        }
        let c: Row = self.pivots.iter().map(|&j| v[j]).collect();
        if linalg::vec_mat(self.ambient.field(), &c, self.chart()) != v {
            return Err(Error::NotInSubspace);
        }
        Ok(c)
    }
}
