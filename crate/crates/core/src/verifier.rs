//! Independent checks for embeddings and a brute-force cycle counter.
//!
//! Nothing here calls the constructive modules. Every edge line is recomputed
//! from its endpoints and compared bit-exactly with the stored one.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embedding::{CycleEmbedding, Flavor, PathEmbedding};
use crate::error::{Error, Result};
use crate::geometry::{GeometryContext, Point, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationStats {
    pub vertex_count: usize,
    pub distinct_line_count: usize,
    pub anchor_vertex_count: Option<usize>,
    pub anchor_edge_count: Option<usize>,
}

/// `valid` is true exactly when `failures` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub failures: Vec<Failure>,
    pub stats: VerificationStats,
}

impl VerificationReport {
    fn new(stats: VerificationStats) -> Self {
        VerificationReport {
            valid: true,
            failures: Vec::new(),
            stats,
        }
    }

    fn fail(&mut self, check: &str, detail: impl Into<String>) {
        self.valid = false;
        self.failures.push(Failure {
            check: check.to_string(),
            detail: detail.into(),
        });
    }

    /// Folds another report's failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        for f in other.failures {
            self.fail(&f.check, f.detail);
        }
        if other.stats.anchor_vertex_count.is_some() {
            self.stats.anchor_vertex_count = other.stats.anchor_vertex_count;
            self.stats.anchor_edge_count = other.stats.anchor_edge_count;
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "vertices: {}", self.stats.vertex_count)?;
        writeln!(f, "distinct lines: {}", self.stats.distinct_line_count)?;
        if let (Some(v), Some(e)) = (self.stats.anchor_vertex_count, self.stats.anchor_edge_count) {
            writeln!(f, "anchor vertices: {v}")?;
            writeln!(f, "anchor edges: {e}")?;
        }
        for fail in &self.failures {
            writeln!(f, "FAIL {}: {}", fail.check, fail.detail)?;
        }
        Ok(())
    }
}

fn is_canonical_point(ctx: &GeometryContext, p: &Point) -> bool {
    p.coords().len() == ctx.width()
        && p.coords().iter().all(|x| x.value() < ctx.q())
        && ctx.normalize_point(p.coords()).as_ref() == Ok(p)
}

fn check_sequence(
    ctx: &GeometryContext,
    vertices: &[Point],
    lines: &[Subspace],
    closed: bool,
) -> VerificationReport {
    let k = vertices.len();
    let distinct_lines: HashSet<&Subspace> = lines.iter().collect();
    let mut report = VerificationReport::new(VerificationStats {
        vertex_count: k,
        distinct_line_count: distinct_lines.len(),
        ..Default::default()
    });
    let (min, expected_edges) = if closed {
        (3, k)
    } else {
        (2, k.saturating_sub(1))
    };
    if k < min {
        report.fail("length", format!("{k} vertices, need at least {min}"));
    }
    if lines.len() != expected_edges {
        report.fail(
            "edge-count",
            format!("{} edge lines for {k} vertices", lines.len()),
        );
    }
    let mut all_points_ok = true;
    for (i, v) in vertices.iter().enumerate() {
        if !is_canonical_point(ctx, v) {
            all_points_ok = false;
            report.fail(
                "point",
                format!("vertex {i} {v:?} is not a normalized point of {ctx:?}"),
            );
        }
    }
    let distinct_vertices: HashSet<&Point> = vertices.iter().collect();
    if distinct_vertices.len() != k {
        report.fail(
            "vertex-injective",
            format!("{} distinct among {k} vertices", distinct_vertices.len()),
        );
    }
    if distinct_lines.len() != lines.len() {
        report.fail(
            "line-injective",
            format!(
                "{} distinct among {} edge lines",
                distinct_lines.len(),
                lines.len()
            ),
        );
    }
    if all_points_ok && lines.len() == expected_edges {
        for (j, stored) in lines.iter().enumerate() {
            let (a, b) = (&vertices[j], &vertices[(j + 1) % k]);
            match ctx.line_through(a, b) {
                Ok(line) if &line == stored => {}
                Ok(line) => report.fail(
                    "incidence",
                    format!("edge {j}: stored {stored:?}, recomputed {line:?}"),
                ),
                Err(e) => report.fail("incidence", format!("edge {j}: {e}")),
            }
        }
    }
    report
}

/// Distinct vertices, distinct edge lines, and each stored line equal to the
/// line through its endpoints (including the closing edge).
pub fn verify_cycle(ctx: &GeometryContext, c: &CycleEmbedding) -> VerificationReport {
    check_sequence(ctx, &c.vertices, &c.edge_lines, true)
}

pub fn verify_path(ctx: &GeometryContext, p: &PathEmbedding) -> VerificationReport {
    check_sequence(ctx, &p.vertices, &p.edge_lines, false)
}

/// Number of vertices on `s` and of edge lines contained in `s`.
pub fn anchor_counts(ctx: &GeometryContext, c: &CycleEmbedding, s: &Subspace) -> (usize, usize) {
    let on = |p: &Point| p.coords().len() == ctx.width() && ctx.incident(p, s);
    let vertices = c.vertices.iter().filter(|p| on(p)).count();
    let edges = c
        .edge_lines
        .iter()
        .filter(|l| l.rows().iter().all(|r| r.len() == ctx.width()) && ctx.contains(s, l))
        .count();
    (vertices, edges)
}

/// Valid iff `anchor_counts` equals `expected`.
pub fn verify_sigma_properties(
    ctx: &GeometryContext,
    c: &CycleEmbedding,
    s: &Subspace,
    expected: (usize, usize),
) -> VerificationReport {
    let (v, e) = anchor_counts(ctx, c, s);
    let mut report = VerificationReport::new(VerificationStats {
        vertex_count: c.len(),
        distinct_line_count: c.edge_lines.iter().collect::<HashSet<_>>().len(),
        anchor_vertex_count: Some(v),
        anchor_edge_count: Some(e),
    });
    if v != expected.0 {
        report.fail(
            "anchor-vertices",
            format!("{v} vertices in the anchor, expected {}", expected.0),
        );
    }
    if e != expected.1 {
        report.fail(
            "anchor-edges",
            format!("{e} edges in the anchor, expected {}", expected.1),
        );
    }
    report
}

/// Checks a plane cycle against the shape it claims relative to an origin O
/// and a line at infinity not through O. Also runs [`verify_cycle`].
///
/// Flavor A: O is a vertex and at most q of the q+1 lines through O are edges.
/// Flavor B: O is not a vertex, no line through O is an edge, (q+1) | k.
/// Both: no vertex on the line at infinity.
pub fn verify_flavor(
    ctx: &GeometryContext,
    origin: &Point,
    infinity: &Subspace,
    c: &CycleEmbedding,
    flavor: Flavor,
) -> VerificationReport {
    let mut report = verify_cycle(ctx, c);
    let q = ctx.q() as usize;
    if ctx.incident(origin, infinity) {
        report.fail("frame", "origin lies on the line at infinity");
    }
    if c.vertices
        .iter()
        .any(|v| v.coords().len() == ctx.width() && ctx.incident(v, infinity))
    {
        report.fail("affine", "a vertex lies on the line at infinity");
    }
    let spokes_used = c
        .edge_lines
        .iter()
        .filter(|l| l.rows().iter().all(|r| r.len() == ctx.width()) && ctx.incident(origin, l))
        .collect::<HashSet<_>>()
        .len();
    let has_origin = c.vertices.contains(origin);
    match flavor {
        Flavor::A => {
            if !has_origin {
                report.fail("flavor-a", "origin is not a vertex");
            }
            if spokes_used > q {
                report.fail(
                    "flavor-a",
                    format!("all {spokes_used} lines through the origin are edges"),
                );
            }
        }
        Flavor::B => {
            if has_origin {
                report.fail("flavor-b", "origin is a vertex");
            }
            if spokes_used != 0 {
                report.fail(
                    "flavor-b",
                    format!("{spokes_used} lines through the origin are edges"),
                );
            }
            if !c.len().is_multiple_of(q + 1) {
                report.fail(
                    "flavor-b",
                    format!("q+1 = {} does not divide k = {}", q + 1, c.len()),
                );
            }
        }
    }
    report
}

/// Exact number of embedded k-cycles, counted as vertex cycles up to rotation
/// and reflection whose k edge lines are pairwise distinct.
///
/// Guarded to geometries with at most 15 points and k ≤ 8.
pub fn brute_force_cycle_count(ctx: &GeometryContext, k: usize) -> Result<u64> {
    let n_points = ctx.point_count();
    if n_points > 15 || k > 8 {
        return Err(Error::BudgetExceeded(format!(
            "{n_points} points, k = {k}; limit is 15 points and k ≤ 8"
        )));
    }
    if k < 3 {
        return Ok(0);
    }
    let points = ctx.enumerate_points()?;
    let m = points.len();
    let mut line_ids = vec![vec![usize::MAX; m]; m];
    let mut distinct = Vec::<Subspace>::new();
    for a in 0..m {
        for b in a + 1..m {
            let line = ctx.line_through(&points[a], &points[b])?;
            let id = match distinct.iter().position(|l| *l == line) {
                Some(id) => id,
                None => {
                    distinct.push(line);
                    distinct.len() - 1
                }
            };
            line_ids[a][b] = id;
            line_ids[b][a] = id;
        }
    }
    let mut count = 0;
    for start in 0..m {
        let mut seq = vec![start];
        let mut used_points = vec![false; m];
        used_points[start] = true;
        let mut used_lines = vec![false; distinct.len()];
        extend(
            k,
            &line_ids,
            &mut seq,
            &mut used_points,
            &mut used_lines,
            &mut count,
        );
    }
    Ok(count)
}

/// Sequences start at their smallest vertex; reflection is removed by
/// requiring the second vertex to be smaller than the last.
fn extend(
    k: usize,
    line_ids: &[Vec<usize>],
    seq: &mut Vec<usize>,
    used_points: &mut [bool],
    used_lines: &mut [bool],
    count: &mut u64,
) {
    let start = seq[0];
    let last = *seq.last().expect("nonempty");
    if seq.len() == k {
        let closing = line_ids[last][start];
        if !used_lines[closing] && seq[1] < last {
            *count += 1;
        }
        return;
    }
    for next in start + 1..line_ids.len() {
        if used_points[next] {
            continue;
        }
        let line = line_ids[last][next];
        if used_lines[line] {
            continue;
        }
        used_points[next] = true;
        used_lines[line] = true;
        seq.push(next);
        extend(k, line_ids, seq, used_points, used_lines, count);
        seq.pop();
        used_lines[line] = false;
        used_points[next] = false;
    }
}
