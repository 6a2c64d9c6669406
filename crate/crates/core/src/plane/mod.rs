//! Cycles and anchored paths in PG(2,q).
//!
//! A [`PlaneFrame`] fixes an origin O and a line at infinity ℓ∞ not through
//! O. The q+1 lines through O are the spokes l_i and the points l_i ∩ ℓ∞ are
//! the marks (i).
//!
//! - [`flavored_cycle`]: affine cycles either through O leaving a spoke unused
//!   (flavor A) or avoiding O and every spoke (flavor B), found by search.
//! - [`anchored_path`]: paths on k ≤ q²+2 vertices whose two endpoints, and
//!   no other vertex, lie on ℓ∞. Built from a flavored cycle on k−2 vertices.
//! - [`sigma_cycle_plane`]: the anchored path closed up along ℓ∞.
//! - [`plane_cycle`]: every length 3..=q²+q+1.

mod search;
mod singer;

use std::sync::Arc;

use crate::embedding::{CycleEmbedding, Flavor, OpenMode, PathEmbedding};
use crate::error::{Error, Result};
use crate::geometry::{GeometryContext, Point, Subspace};

use search::{CycleSearch, Incidence};
pub use search::{NODE_BUDGET, RESTARTS};
pub use singer::singer_hamiltonian;

/// Origin, line at infinity, spokes and marks of a projective plane.
#[derive(Clone, Debug)]
pub struct PlaneFrame {
    ctx: GeometryContext,
    origin: Point,
    infinity: Subspace,
    spokes: Vec<Subspace>,
    marks: Vec<Point>,
    incidence: Arc<Incidence>,
}

impl PlaneFrame {
    pub fn new(ctx: &GeometryContext, origin: Point, infinity: Subspace) -> Result<Self> {
        if ctx.n() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                got: ctx.n(),
            });
        }
        if !infinity.is_line() {
            return Err(Error::WrongDimension {
                expected: 1,
                got: infinity.projective_dim(),
            });
        }
        if ctx.incident(&origin, &infinity) {
            return Err(Error::FlagInvalid("origin lies on the line at infinity"));
        }
        let incidence = Arc::new(Incidence::new(ctx)?);
        let mut pairs: Vec<(Subspace, Point)> = ctx
            .points_on(&infinity)
            .into_iter()
            .map(|mark| {
                (
                    ctx.line_through(&origin, &mark).expect("origin is off ℓ∞"),
                    mark,
                )
            })
            .collect();
        pairs.sort();
        let (spokes, marks) = pairs.into_iter().unzip();
        Ok(PlaneFrame {
            ctx: ctx.clone(),
            origin,
            infinity,
            spokes,
            marks,
            incidence,
        })
    }

    /// O = (0,0,1), ℓ∞ = {z = 0}.
    pub fn standard(ctx: &GeometryContext) -> Result<Self> {
        let origin = ctx.point(&[0, 0, 1])?;
        Self::new(ctx, origin, ctx.canonical_hyperplane())
    }

    /// Frame with the given ℓ∞ and O the first point off it in canonical order.
    pub fn with_infinity(ctx: &GeometryContext, infinity: Subspace) -> Result<Self> {
        let origin = ctx
            .enumerate_points()?
            .iter()
            .find(|p| !ctx.incident(p, &infinity))
            .cloned()
            .ok_or(Error::NotInSubspace)?;
        Self::new(ctx, origin, infinity)
    }

    pub fn ctx(&self) -> &GeometryContext {
        &self.ctx
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn line_at_infinity(&self) -> &Subspace {
        &self.infinity
    }

    /// The q+1 lines through O, ascending by RREF.
    pub fn spokes(&self) -> &[Subspace] {
        &self.spokes
    }

    /// `marks()[i]` is `spokes()[i] ∩ ℓ∞`.
    pub fn marks(&self) -> &[Point] {
        &self.marks
    }

    fn q(&self) -> usize {
        self.ctx.q() as usize
    }

    fn spoke_index(&self, line: &Subspace) -> Option<usize> {
        self.spokes.iter().position(|s| s == line)
    }

    fn spoke_of(&self, p: &Point) -> Result<usize> {
        let line = self.ctx.line_through(&self.origin, p)?;
        Ok(self
            .spoke_index(&line)
            .expect("every line through O is a spoke"))
    }

    fn to_cycle(&self, ids: &[usize]) -> Result<CycleEmbedding> {
        let vertices = ids
            .iter()
            .map(|&i| self.incidence.points[i].clone())
            .collect();
        CycleEmbedding::through(&self.ctx, vertices)
    }
}

fn range_check(k: usize, min: usize, max: usize) -> Result<()> {
    if (min..=max).contains(&k) {
        Ok(())
    } else {
        Err(Error::OutOfRange { k, min, max })
    }
}

/// An affine k-cycle (3 ≤ k ≤ q²) of flavor A if one is found, otherwise of
/// flavor B when k = t(q+1) with 1 ≤ t ≤ q−1.
pub fn flavored_cycle(frame: &PlaneFrame, k: usize, seed: u64) -> Result<(CycleEmbedding, Flavor)> {
    let q = frame.q();
    range_check(k, 3, q * q)?;
    match flavored_cycle_with(frame, k, Flavor::A, seed) {
        Ok(c) => Ok((c, Flavor::A)),
        Err(Error::SearchExhausted(trace)) if flavor_b_admissible(q, k) => {
            flavored_cycle_with(frame, k, Flavor::B, seed)
                .map(|c| (c, Flavor::B))
                .map_err(|e| Error::SearchExhausted(format!("flavor A: {trace}; flavor B: {e}")))
        }
        Err(e) => Err(e),
    }
}

fn flavor_b_admissible(q: usize, k: usize) -> bool {
    k.is_multiple_of(q + 1) && (1..q).contains(&(k / (q + 1)))
}

/// Searches for a cycle of one specific flavor.
///
/// Flavor B cycles are additionally required to contain three consecutive
/// vertices whose outer two lie on different spokes, which is what
/// [`anchored_path`] needs to reroute through O.
pub fn flavored_cycle_with(
    frame: &PlaneFrame,
    k: usize,
    flavor: Flavor,
    seed: u64,
) -> Result<CycleEmbedding> {
    let q = frame.q();
    range_check(k, 3, q * q)?;
    let inc = &frame.incidence;
    let origin = inc.point_id(&frame.origin).expect("origin is a point");
    let affine: Vec<bool> = inc
        .points
        .iter()
        .map(|p| !frame.ctx.incident(p, &frame.infinity))
        .collect();
    let is_spoke: Vec<bool> = inc
        .lines
        .iter()
        .map(|l| frame.ctx.incident(&frame.origin, l))
        .collect();
    let infinity = inc.line_id(&frame.infinity).expect("ℓ∞ is a line");
    let mut allowed_lines = vec![true; inc.lines.len()];
    allowed_lines[infinity] = false;

    let ids = match flavor {
        Flavor::A => {
            let accept = |_: &[usize]| true;
            CycleSearch {
                inc,
                k,
                allowed_points: affine,
                allowed_lines,
                limited_class: is_spoke,
                class_limit: q,
                start: Some(origin),
                accept: &accept,
            }
            .run(seed)?
        }
        Flavor::B => {
            if !flavor_b_admissible(q, k) {
                return Err(Error::CaseViolation(format!(
                    "flavor B needs k = t(q+1) with 1 ≤ t ≤ q−1, got k = {k}"
                )));
            }
            let mut allowed_points = affine;
            allowed_points[origin] = false;
            for (l, spoke) in is_spoke.iter().enumerate() {
                if *spoke {
                    allowed_lines[l] = false;
                }
            }
            let spoke_of = |p: usize| inc.line_of[origin][p];
            let accept = |ids: &[usize]| {
                let k = ids.len();
                (0..k).any(|t| spoke_of(ids[(t + k - 1) % k]) != spoke_of(ids[(t + 1) % k]))
            };
            CycleSearch {
                inc,
                k,
                allowed_points,
                allowed_lines,
                limited_class: vec![false; inc.lines.len()],
                class_limit: 0,
                start: None,
                accept: &accept,
            }
            .run(seed)?
        }
    };
    frame.to_cycle(&ids)
}

/// A path on k vertices (3 ≤ k ≤ q²+2) with both endpoints on ℓ∞, every other
/// vertex off ℓ∞, and no edge on ℓ∞.
pub fn anchored_path(frame: &PlaneFrame, k: usize, seed: u64) -> Result<PathEmbedding> {
    let q = frame.q();
    range_check(k, 3, q * q + 2)?;
    let ctx = &frame.ctx;
    let o = &frame.origin;
    match k {
        3 => PathEmbedding::through(
            ctx,
            vec![frame.marks[0].clone(), o.clone(), frame.marks[1].clone()],
        ),
        4 => {
            let p = ctx
                .points_on(&frame.spokes[1])
                .into_iter()
                .find(|p| p != o && !ctx.incident(p, &frame.infinity))
                .expect("a spoke has q ≥ 2 affine points");
            PathEmbedding::through(
                ctx,
                vec![frame.marks[0].clone(), o.clone(), p, frame.marks[2].clone()],
            )
        }
        _ => {
            let (cycle, flavor) = flavored_cycle(frame, k - 2, seed)?;
            match flavor {
                Flavor::A => extend_through_origin(frame, &cycle),
                Flavor::B => reroute_through_origin(frame, &cycle),
            }
        }
    }
}

/// Flavor A: drop the spoke edge O–X, then `(i) –l_i– X … O –l_t– (t)` with
/// l_t a spoke the cycle does not use.
fn extend_through_origin(frame: &PlaneFrame, cycle: &CycleEmbedding) -> Result<PathEmbedding> {
    let ctx = &frame.ctx;
    let o_idx = cycle
        .position(&frame.origin)
        .ok_or(Error::NotInCycle("origin"))?;
    let spoke_i = cycle.edge_lines[o_idx].clone();
    let i = frame.spoke_index(&spoke_i).expect("edges at O are spokes");
    let t = (0..frame.spokes.len())
        .find(|&t| cycle.edge_position(&frame.spokes[t]).is_none())
        .ok_or_else(|| Error::CaseViolation("flavor A cycle uses every spoke".into()))?;
    // runs X, ..., O
    let body = cycle.open(OpenMode::DropEdge(&spoke_i))?;
    debug_assert_eq!(body.last(), &frame.origin);
    let head = PathEmbedding {
        vertices: vec![frame.marks[i].clone()],
        edge_lines: vec![],
    };
    let tail = PathEmbedding {
        vertices: vec![frame.marks[t].clone()],
        edge_lines: vec![],
    };
    let path = head.join(spoke_i, body).join(frame.spokes[t].clone(), tail);
    debug_assert_eq!(
        Ok(path.clone()),
        PathEmbedding::through(ctx, path.vertices.clone())
    );
    Ok(path)
}

/// Flavor B: drop a vertex P_t whose neighbours P_j, P_i sit on different
/// spokes, then `(j) –l_j– P_j … P_i –l_i– O –l_t– (t)`.
fn reroute_through_origin(frame: &PlaneFrame, cycle: &CycleEmbedding) -> Result<PathEmbedding> {
    let k = cycle.len();
    let spokes: Vec<usize> = cycle
        .vertices
        .iter()
        .map(|v| frame.spoke_of(v))
        .collect::<Result<_>>()?;
    let mid = (0..k)
        .find(|&t| spokes[(t + k - 1) % k] != spokes[(t + 1) % k])
        .ok_or_else(|| Error::CaseViolation("no consecutive triple on distinct spokes".into()))?;
    let (j, i, t) = (
        spokes[(mid + 1) % k],
        spokes[(mid + k - 1) % k],
        spokes[mid],
    );
    // runs P_j, ..., P_i
    let body = cycle.open(OpenMode::DropVertex(&cycle.vertices[mid]))?;
    let single = |p: &Point| PathEmbedding {
        vertices: vec![p.clone()],
        edge_lines: vec![],
    };
    Ok(single(&frame.marks[j])
        .join(frame.spokes[j].clone(), body)
        .join(frame.spokes[i].clone(), single(&frame.origin))
        .join(frame.spokes[t].clone(), single(&frame.marks[t])))
}

/// The anchored path closed by ℓ∞: exactly two vertices on ℓ∞ and exactly one
/// edge (ℓ∞ itself) inside it.
pub fn sigma_cycle_plane(frame: &PlaneFrame, k: usize, seed: u64) -> Result<CycleEmbedding> {
    let q = frame.q();
    range_check(k, 3, q * q + 2)?;
    Ok(anchored_path(frame, k, seed)?.close(frame.infinity.clone()))
}

/// A k-cycle in PG(2,q) for any 3 ≤ k ≤ q²+q+1.
///
/// Lengths up to q²+2 come from [`sigma_cycle_plane`] in the standard frame,
/// q²+q+1 from [`singer_hamiltonian`], and the lengths in between from a
/// seeded backtracking search.
pub fn plane_cycle(ctx: &GeometryContext, k: usize, seed: u64) -> Result<CycleEmbedding> {
    if ctx.n() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: ctx.n(),
        });
    }
    let q = ctx.q() as usize;
    let total = q * q + q + 1;
    range_check(k, 3, total)?;
    if k <= q * q + 2 {
        return sigma_cycle_plane(&PlaneFrame::standard(ctx)?, k, seed);
    }
    if k == total {
        return singer_hamiltonian(ctx);
    }
    let inc = Incidence::new(ctx)?;
    let accept = |_: &[usize]| true;
    let ids = CycleSearch {
        inc: &inc,
        k,
        allowed_points: vec![true; inc.points.len()],
        allowed_lines: vec![true; inc.lines.len()],
        limited_class: vec![false; inc.lines.len()],
        class_limit: 0,
        start: None,
        accept: &accept,
    }
    .run(seed)?;
    CycleEmbedding::through(ctx, ids.iter().map(|&i| inc.points[i].clone()).collect())
}
