//! Hyperplane-anchored cycles and cycles of every length in PG(n,q).
//!
//! An anchored cycle for a hyperplane H has exactly two vertices in H and
//! exactly one edge whose line lies in H. In PG(n,q), n = d+1 ≥ 3, they are
//! built from a pencil of hyperplanes Π_1, ..., Π_{q+1} through a
//! codimension-2 subspace Σ ⊂ H. H itself is one member of the pencil and is
//! never used; every other member Π_i is a copy of PG(d,q) in which Σ is a
//! hyperplane, so anchored cycles of Π_i (for Σ) can be glued together along
//! a shared edge ℓ ⊂ Σ. The only vertices of the glued cycle in H are the two
//! ends P, Q of ℓ, and ℓ is its only edge inside H.
//!
//! Everything is first built for the canonical hyperplane {x_n = 0} with
//! Σ = {x_{n-1} = x_n = 0}, where Σ has the same coordinates in every
//! member's frame, and then moved onto the requested anchor by a
//! projectivity.

use std::collections::HashMap;
use std::sync::Arc;

use crate::collineations::{map_flag_to_flag, move_endpoint, Flag, Projectivity};
use crate::embedding::{CycleEmbedding, OpenMode, PathEmbedding};
use crate::error::{Error, Result};
use crate::geometry::{count_points, GeometryContext, PencilDecomposition, Point, Subspace};
use crate::gf::GaloisField;
use crate::linalg;
use crate::plane::{plane_cycle, sigma_cycle_plane, PlaneFrame};

/// Which of the two gluing recipes applies to k = α·q^d + β.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GlueCase {
    /// β ∈ {0, 1, 2} and α ≥ 2: α−1 cycles of length q^d+2 and one of length q^d+β.
    One,
    /// β ≥ 3 and α ≤ q−1: α cycles of length q^d+2 and one of length β.
    Two,
}

/// Bookkeeping for one gluing over a pencil.
#[derive(Clone, Debug)]
pub struct GlueState {
    pub pencil: PencilDecomposition,
    /// The member that is the anchor and receives no cycle.
    pub reserved: Subspace,
    pub k: usize,
    pub alpha: usize,
    pub beta: usize,
    /// Filled in by [`glue_pencil_cycles`].
    pub shared_edge: Option<Subspace>,
    pub p: Option<Point>,
    pub q: Option<Point>,
    /// The open path taken from each member, in gluing order.
    pub paths: Vec<PathEmbedding>,
    /// `connectors[i]` joins the end of `paths[i]` to the start of `paths[i+1]`.
    pub connectors: Vec<Subspace>,
}

impl GlueState {
    /// Decomposes k for the canonical anchor of `ctx` (n ≥ 3); k must exceed
    /// q^d+2 and be at most q^n+2.
    pub fn new(ctx: &GeometryContext, k: usize) -> Result<Self> {
        let n = ctx.n();
        if n < 3 {
            return Err(Error::DimensionTooSmall { min: 3, got: n });
        }
        let q = ctx.q() as u128;
        let qd = q.pow(n as u32 - 1);
        let kk = k as u128;
        if kk <= qd + 2 || kk > qd * q + 2 {
            return Err(Error::CaseViolation(format!(
                "gluing needs q^d+2 < k ≤ q^n+2, got k = {k} with q^d = {qd}"
            )));
        }
        let sigma = canonical_core(ctx)?;
        let pencil = ctx.hyperplane_pencil(&sigma)?;
        Ok(GlueState {
            pencil,
            reserved: ctx.canonical_hyperplane(),
            k,
            alpha: (kk / qd) as usize,
            beta: (kk % qd) as usize,
            shared_edge: None,
            p: None,
            q: None,
            paths: Vec::new(),
            connectors: Vec::new(),
        })
    }

    /// The case dictated by (α, β), if the pair satisfies one.
    pub fn case(&self, q: usize) -> Option<GlueCase> {
        if self.beta <= 2 && self.alpha >= 2 {
            Some(GlueCase::One)
        } else if self.beta >= 3 && self.alpha < q {
            Some(GlueCase::Two)
        } else {
            None
        }
    }

    /// Lengths of the member cycles in gluing order.
    pub fn member_lengths(&self, q: usize, d: usize, case: GlueCase) -> Vec<usize> {
        let full = q.pow(d as u32) + 2;
        match case {
            GlueCase::One => {
                let mut v = vec![full; self.alpha - 1];
                v.push(q.pow(d as u32) + self.beta);
                v
            }
            GlueCase::Two => {
                let mut v = vec![full; self.alpha];
                v.push(self.beta);
                v
            }
        }
    }

    /// The pencil members other than the reserved one, in canonical order.
    pub fn usable_members(&self) -> Vec<&Subspace> {
        self.pencil
            .members
            .iter()
            .filter(|m| **m != self.reserved)
            .collect()
    }
}

/// Σ for the canonical anchor: the first n−1 unit vectors.
fn canonical_core(ctx: &GeometryContext) -> Result<Subspace> {
    let h = ctx.canonical_hyperplane();
    ctx.subspace_from_ints(&h.to_ints()[..ctx.n() - 1])
}

fn check_hyperplane(ctx: &GeometryContext, h: &Subspace) -> Result<()> {
    if h.rank() != ctx.n() || h.rows()[0].len() != ctx.width() {
        return Err(Error::WrongDimension {
            expected: ctx.n() - 1,
            got: h.projective_dim(),
        });
    }
    Ok(())
}

fn max_anchored(n: usize, q: u64) -> u128 {
    (q as u128).pow(n as u32) + 2
}

/// Builds anchored cycles for canonical anchors, one per (dimension, length).
struct Builder {
    field: Arc<GaloisField>,
    seed: u64,
    contexts: HashMap<usize, GeometryContext>,
    cycles: HashMap<(usize, usize), CycleEmbedding>,
}

impl Builder {
    fn new(ctx: &GeometryContext, seed: u64) -> Self {
        let mut contexts = HashMap::new();
        contexts.insert(ctx.n(), ctx.clone());
        Builder {
            field: ctx.field_arc().clone(),
            seed,
            contexts,
            cycles: HashMap::new(),
        }
    }

    fn ctx(&mut self, dim: usize) -> Result<GeometryContext> {
        if let Some(c) = self.contexts.get(&dim) {
            return Ok(c.clone());
        }
        let c = GeometryContext::new(dim, self.field.clone())?;
        self.contexts.insert(dim, c.clone());
        Ok(c)
    }

    /// A k-cycle of PG(dim,q) anchored at its canonical hyperplane.
    fn anchored(&mut self, dim: usize, k: usize) -> Result<CycleEmbedding> {
        if let Some(c) = self.cycles.get(&(dim, k)) {
            return Ok(c.clone());
        }
        let ctx = self.ctx(dim)?;
        let max = max_anchored(dim, ctx.q() as u64);
        if k < 3 || k as u128 > max {
            return Err(Error::OutOfRange {
                k,
                min: 3,
                max: max.min(usize::MAX as u128) as usize,
            });
        }
        let cycle = if dim == 2 {
            sigma_cycle_plane(&PlaneFrame::standard(&ctx)?, k, self.seed)?
        } else if (k as u128) <= max_anchored(dim - 1, ctx.q() as u64) {
            // a cycle inside one member meets the anchor only in Σ
            let state = GlueState::new_unchecked(&ctx)?;
            let member = state.usable_members()[0].clone();
            let inner = self.anchored(dim - 1, k)?;
            let frame = ctx.frame(&member)?;
            inner.try_map(|p| frame.lift_point(p), |l| frame.lift_line(l))?
        } else {
            let mut state = GlueState::new(&ctx, k)?;
            let case = state.case(ctx.q() as usize).ok_or_else(|| {
                Error::CaseViolation(format!(
                    "no case for α = {}, β = {}",
                    state.alpha, state.beta
                ))
            })?;
            self.glue(&ctx, &mut state, case)?
        };
        self.cycles.insert((dim, k), cycle.clone());
        Ok(cycle)
    }

    fn glue(
        &mut self,
        ctx: &GeometryContext,
        state: &mut GlueState,
        case: GlueCase,
    ) -> Result<CycleEmbedding> {
        let q = ctx.q() as usize;
        let d = ctx.n() - 1;
        match (case, state.case(q)) {
            (GlueCase::One, Some(GlueCase::One)) | (GlueCase::Two, Some(GlueCase::Two)) => {}
            _ => {
                return Err(Error::CaseViolation(format!(
                    "{case:?} does not apply to α = {}, β = {}",
                    state.alpha, state.beta
                )))
            }
        }
        let lengths = state.member_lengths(q, d, case);
        let members: Vec<Subspace> = state.usable_members().into_iter().cloned().collect();
        if lengths.len() > members.len() {
            return Err(Error::CaseViolation(format!(
                "{} members needed, {} usable",
                lengths.len(),
                members.len()
            )));
        }
        let sigma = state.pencil.core.clone();
        let small = self.ctx(d)?;
        let h = small.canonical_hyperplane();

        // member cycles in frame coordinates, aligned on one flag of Σ
        let small_cycles = lengths
            .iter()
            .map(|&len| self.anchored(d, len))
            .collect::<Result<Vec<_>>>()?;
        let target = anchor_flag(&small, &small_cycles[0], &h)?;
        let mut lifted = Vec::with_capacity(small_cycles.len());
        for (cycle, member) in small_cycles.iter().zip(&members) {
            let tau = map_flag_to_flag(&small, &h, &anchor_flag(&small, cycle, &h)?, &target)?;
            let aligned = tau.apply(&small, cycle)?;
            let frame = ctx.frame(member)?;
            lifted.push(aligned.try_map(|p| frame.lift_point(p), |l| frame.lift_line(l))?);
        }
        let frame = ctx.frame(&members[0])?;
        let ell = frame.lift_line(&target.line)?;
        let (p, qq) = (
            frame.lift_point(&target.first)?,
            frame.lift_point(&target.second)?,
        );

        // open: first keeps P, last keeps Q, middles keep neither
        let m = lifted.len();
        let mut paths = Vec::with_capacity(m);
        for (i, c) in lifted.iter().enumerate() {
            let path = if i == 0 {
                let t = c.open(OpenMode::DropVertex(&qq))?;
                if *t.first() == p {
                    t
                } else {
                    t.reversed()
                }
            } else if i == m - 1 {
                let t = c.open(OpenMode::DropVertex(&p))?;
                if *t.last() == qq {
                    t
                } else {
                    t.reversed()
                }
            } else {
                c.open(OpenMode::DropThreeEdges {
                    p: &p,
                    q: &qq,
                    line: &ell,
                })?
            };
            paths.push(path);
        }
        let expected = match case {
            GlueCase::One => {
                (q.pow(d as u32) + 1) + (state.alpha - 2) * q.pow(d as u32) + (lengths[m - 1] - 1)
            }
            GlueCase::Two => {
                (q.pow(d as u32) + 1) + (state.alpha - 1) * q.pow(d as u32) + (state.beta - 1)
            }
        };
        let total: usize = paths.iter().map(PathEmbedding::len).sum();
        if expected != state.k || total != state.k {
            return Err(Error::CaseViolation(format!(
                "vertex count {total}, identity gives {expected}, k = {}",
                state.k
            )));
        }

        // connect left to right, moving each member clear of earlier connectors
        let mut paths = paths.into_iter();
        let mut glued = paths.next().expect("at least two members");
        let mut fixed_paths = vec![glued.clone()];
        let mut connectors: Vec<Subspace> = Vec::new();
        for (j, path) in paths.enumerate() {
            let member = &members[j + 1];
            let forbidden: Vec<Point> = connectors
                .iter()
                .filter_map(|c| ctx.meet_line_hyperplane(c, member))
                .collect();
            let moved = move_endpoint(ctx, &sigma, member, &path, path.first(), &forbidden)?;
            let connector = ctx.line_through(glued.last(), moved.first())?;
            if state
                .pencil
                .members
                .iter()
                .any(|m| ctx.contains(m, &connector))
            {
                return Err(Error::CaseViolation(
                    "connector lies in a pencil member".into(),
                ));
            }
            if connectors.contains(&connector) {
                return Err(Error::CaseViolation("connector line repeated".into()));
            }
            connectors.push(connector.clone());
            fixed_paths.push(moved.clone());
            glued = glued.join(connector, moved);
        }
        state.shared_edge = Some(ell.clone());
        state.p = Some(p);
        state.q = Some(qq);
        state.paths = fixed_paths;
        state.connectors = connectors;
        Ok(glued.close(ell))
    }
}

impl GlueState {
    /// The pencil only, for the single-member branch.
    fn new_unchecked(ctx: &GeometryContext) -> Result<Self> {
        let sigma = canonical_core(ctx)?;
        Ok(GlueState {
            pencil: ctx.hyperplane_pencil(&sigma)?,
            reserved: ctx.canonical_hyperplane(),
            k: 0,
            alpha: 0,
            beta: 0,
            shared_edge: None,
            p: None,
            q: None,
            paths: Vec::new(),
            connectors: Vec::new(),
        })
    }
}

/// The unique edge of `c` inside `h`, with its endpoints in cycle order.
fn anchor_flag(ctx: &GeometryContext, c: &CycleEmbedding, h: &Subspace) -> Result<Flag> {
    let j = c
        .edge_lines
        .iter()
        .position(|l| ctx.contains(h, l))
        .ok_or(Error::NotInCycle("edge inside the anchor"))?;
    let (a, b) = c.edge_endpoints(j);
    Ok(Flag::new(c.edge_lines[j].clone(), a.clone(), b.clone()))
}

/// Projectivity taking the canonical hyperplane onto `anchor`.
fn anchor_transport(ctx: &GeometryContext, anchor: &Subspace) -> Result<Projectivity> {
    let units: Vec<_> = (0..ctx.width())
        .map(|i| linalg::unit_vector(ctx.width(), i))
        .collect();
    let basis = linalg::extend_basis(ctx.field(), anchor.rows(), &units);
    Projectivity::from_matrix(ctx, basis)
}

/// A k-cycle (3 ≤ k ≤ q^n+2) with exactly two vertices in the hyperplane
/// `anchor` and exactly one edge whose line lies in it.
pub fn sigma_anchored_cycle(
    ctx: &GeometryContext,
    anchor: &Subspace,
    k: usize,
    seed: u64,
) -> Result<CycleEmbedding> {
    check_hyperplane(ctx, anchor)?;
    let cycle = Builder::new(ctx, seed).anchored(ctx.n(), k)?;
    if *anchor == ctx.canonical_hyperplane() {
        return Ok(cycle);
    }
    anchor_transport(ctx, anchor)?.apply(ctx, &cycle)
}

/// Glues member cycles over the pencil of `state` following `case`, for the
/// canonical anchor. On success `state` records the shared flag, the member
/// paths and the connectors.
pub fn glue_pencil_cycles(
    ctx: &GeometryContext,
    state: &mut GlueState,
    case: GlueCase,
    seed: u64,
) -> Result<CycleEmbedding> {
    Builder::new(ctx, seed).glue(ctx, state, case)
}

/// A k-cycle of PG(n,q) for any 3 ≤ k ≤ |PG(n,q)|.
pub fn embed_cycle(ctx: &GeometryContext, k: usize, seed: u64) -> Result<CycleEmbedding> {
    let max = count_points(ctx.n(), ctx.q() as u64);
    if k < 3 || k as u128 > max {
        return Err(Error::OutOfRange {
            k,
            min: 3,
            max: max.min(usize::MAX as u128) as usize,
        });
    }
    embed_with(&mut Builder::new(ctx, seed), ctx, k)
}

fn embed_with(builder: &mut Builder, ctx: &GeometryContext, k: usize) -> Result<CycleEmbedding> {
    let n = ctx.n();
    if n == 2 {
        return plane_cycle(ctx, k, builder.seed);
    }
    let q = ctx.q() as u64;
    if k as u128 <= max_anchored(n, q) {
        return builder.anchored(n, k);
    }
    let beta = k - q.pow(n as u32) as usize;
    let h = ctx.canonical_hyperplane();
    let frame = ctx.frame(&h)?;
    let inner = embed_with(builder, frame.small(), beta)?;
    let c_beta = inner.try_map(|p| frame.lift_point(p), |l| frame.lift_line(l))?;
    let (p, qq) = c_beta.edge_endpoints(0);
    let target = Flag::new(c_beta.edge_lines[0].clone(), p.clone(), qq.clone());

    let big = builder.anchored(n, k - beta + 2)?;
    let tau = map_flag_to_flag(ctx, &h, &anchor_flag(ctx, &big, &h)?, &target)?;
    let big = tau.apply(ctx, &big)?;
    let outer = big.open(OpenMode::DropEdge(&target.line))?;
    let outer = if *outer.first() == target.first {
        outer
    } else {
        outer.reversed()
    };
    // c_beta without ℓ′ runs Q′, ..., P′
    let inner = c_beta.open(OpenMode::DropEdge(&target.line))?;
    debug_assert!(*outer.last() == target.second && *inner.first() == target.second);

    let mut vertices = outer.vertices;
    vertices.extend_from_slice(&inner.vertices[1..inner.len() - 1]);
    let mut edge_lines = outer.edge_lines;
    edge_lines.extend(inner.edge_lines);
    if vertices.len() != k || edge_lines.len() != k {
        return Err(Error::CaseViolation(format!(
            "union has {} vertices for k = {k}",
            vertices.len()
        )));
    }
    Ok(CycleEmbedding {
        vertices,
        edge_lines,
    })
}

/// Cuts a cycle open; see [`OpenMode`].
pub fn open_cycle(c: &CycleEmbedding, mode: OpenMode<'_>) -> Result<PathEmbedding> {
    c.open(mode)
}
