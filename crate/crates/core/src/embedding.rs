//! Embedded paths and cycles: vertex sequences with the line carrying each edge.
//!
//! These types carry data only. Nothing here checks injectivity; that is the
//! verifier's job, and it must be able to see malformed embeddings.

use crate::error::{Error, Result};
use crate::geometry::{GeometryContext, Point, Subspace};

/// A path on `vertices.len()` vertices; `edge_lines[j]` joins vertices j and j+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEmbedding {
    pub vertices: Vec<Point>,
    pub edge_lines: Vec<Subspace>,
}

/// A cycle; `edge_lines[j]` joins vertices j and j+1 (mod k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEmbedding {
    pub vertices: Vec<Point>,
    pub edge_lines: Vec<Subspace>,
}

/// The two shapes a plane cycle may take relative to an origin O and a line
/// at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Flavor {
    /// O is a vertex and some line through O is not an edge.
    A,
    /// O is not a vertex, no line through O is an edge, and (q+1) divides k.
    B,
}

/// How to cut a cycle open.
#[derive(Clone, Copy, Debug)]
pub enum OpenMode<'a> {
    /// Remove one edge; all k vertices stay.
    DropEdge(&'a Subspace),
    /// Remove a vertex with its two edges; the path ends at its former neighbours.
    DropVertex(&'a Point),
    /// `p` and `q` must be adjacent via `line`. Removes that edge and the other
    /// edge at each of `p` and `q`, together with `p` and `q`. The path runs
    /// from p's other neighbour to q's other neighbour.
    DropThreeEdges {
        p: &'a Point,
        q: &'a Point,
        line: &'a Subspace,
    },
}

impl PathEmbedding {
    /// Path through `vertices`, with each edge on the line through its endpoints.
    pub fn through(ctx: &GeometryContext, vertices: Vec<Point>) -> Result<Self> {
        let edge_lines = vertices
            .windows(2)
            .map(|w| ctx.line_through(&w[0], &w[1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(PathEmbedding {
            vertices,
            edge_lines,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn reversed(mut self) -> Self {
        self.vertices.reverse();
        self.edge_lines.reverse();
        self
    }

    /// Appends `other` after a connecting edge on `line`.
    pub fn join(mut self, line: Subspace, other: PathEmbedding) -> Self {
        self.edge_lines.push(line);
        self.vertices.extend(other.vertices);
        self.edge_lines.extend(other.edge_lines);
        self
    }

    /// Closes the path with an edge on `line` from the last vertex back to the first.
    pub fn close(mut self, line: Subspace) -> CycleEmbedding {
        self.edge_lines.push(line);
        CycleEmbedding {
            vertices: self.vertices,
            edge_lines: self.edge_lines,
        }
    }

    pub fn try_map(
        &self,
        mut point: impl FnMut(&Point) -> Result<Point>,
        mut line: impl FnMut(&Subspace) -> Result<Subspace>,
    ) -> Result<Self> {
        Ok(PathEmbedding {
            vertices: self
                .vertices
                .iter()
                .map(&mut point)
                .collect::<Result<_>>()?,
            edge_lines: self
                .edge_lines
                .iter()
                .map(&mut line)
                .collect::<Result<_>>()?,
        })
    }
}

impl CycleEmbedding {
    /// Cycle through `vertices`, with each edge on the line through its endpoints.
    pub fn through(ctx: &GeometryContext, vertices: Vec<Point>) -> Result<Self> {
        let k = vertices.len();
        let edge_lines = (0..k)
            .map(|j| ctx.line_through(&vertices[j], &vertices[(j + 1) % k]))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycleEmbedding {
            vertices,
            edge_lines,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn try_map(
        &self,
        mut point: impl FnMut(&Point) -> Result<Point>,
        mut line: impl FnMut(&Subspace) -> Result<Subspace>,
    ) -> Result<Self> {
        Ok(CycleEmbedding {
            vertices: self
                .vertices
                .iter()
                .map(&mut point)
                .collect::<Result<_>>()?,
            edge_lines: self
                .edge_lines
                .iter()
                .map(&mut line)
                .collect::<Result<_>>()?,
        })
    }

    /// Index of the vertex, if present.
    pub fn position(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn edge_position(&self, line: &Subspace) -> Option<usize> {
        self.edge_lines.iter().position(|l| l == line)
    }

    /// Endpoints of edge `j`.
    pub fn edge_endpoints(&self, j: usize) -> (&Point, &Point) {
        (&self.vertices[j], &self.vertices[(j + 1) % self.len()])
    }

    pub fn open(&self, mode: OpenMode<'_>) -> Result<PathEmbedding> {
        let k = self.len();
        match mode {
            OpenMode::DropEdge(line) => {
                let j = self.edge_position(line).ok_or(Error::NotInCycle("edge"))?;
                Ok(self.walk(j + 1, true, k))
            }
            OpenMode::DropVertex(v) => {
                let i = self.position(v).ok_or(Error::NotInCycle("vertex"))?;
                Ok(self.walk(i + 1, true, k - 1))
            }
            OpenMode::DropThreeEdges { p, q, line } => {
                let j = self.edge_position(line).ok_or(Error::NotInCycle("edge"))?;
                let (a, b) = self.edge_endpoints(j);
                if a == p && b == q {
                    Ok(self.walk(j + k - 1, false, k - 2))
                } else if a == q && b == p {
                    Ok(self.walk(j + 2, true, k - 2))
                } else {
                    Err(Error::NotInCycle(
                        "P and Q are not adjacent via the given line",
                    ))
                }
            }
        }
    }

    /// `count` consecutive vertices starting at `start`, with the edges between them.
    fn walk(&self, start: usize, forward: bool, count: usize) -> PathEmbedding {
        let k = self.len();
        let idx = |t: usize| {
            if forward {
                (start + t) % k
            } else {
                (start + k * count - t) % k
            }
        };
        let vertices = (0..count).map(|t| self.vertices[idx(t)].clone()).collect();
        let edge_lines = (0..count.saturating_sub(1))
            .map(|t| {
                let e = if forward { idx(t) } else { idx(t + 1) };
                self.edge_lines[e].clone()
            })
            .collect();
        PathEmbedding {
            vertices,
            edge_lines,
        }
    }
}
