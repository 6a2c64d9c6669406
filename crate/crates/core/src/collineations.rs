//! Projectivities of PG(n,q): matrix action, flag alignment inside a
//! hyperplane, and the pointwise stabilizer of a codimension-2 subspace used
//! to move path endpoints.
//!
//! Points are row vectors, so a matrix M acts as `x ↦ x·M`.

use std::collections::{BTreeSet, VecDeque};

use crate::embedding::{CycleEmbedding, PathEmbedding};
use crate::error::{Error, Result};
use crate::geometry::{GeometryContext, Point, Subspace};
use crate::gf::FieldElement;
use crate::linalg::{self, Row};

/// An invertible matrix modulo scalars, scaled so its first nonzero entry
/// (row-major) is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Projectivity {
    matrix: Vec<Row>,
}

/// A line with two distinct marked points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub line: Subspace,
    pub first: Point,
    pub second: Point,
}

impl Flag {
    pub fn new(line: Subspace, first: Point, second: Point) -> Self {
        Flag {
            line,
            first,
            second,
        }
    }
}

/// Things a projectivity can act on.
pub trait Transformable: Sized {
    fn transformed(&self, ctx: &GeometryContext, tau: &Projectivity) -> Result<Self>;
}

impl Transformable for Point {
    fn transformed(&self, ctx: &GeometryContext, tau: &Projectivity) -> Result<Self> {
        tau.check(ctx)?;
        if self.coords().len() != ctx.width() {
            return Err(Error::DimensionMismatch {
                expected: ctx.width(),
                got: self.coords().len(),
            });
        }
        ctx.normalize_point(&linalg::vec_mat(ctx.field(), self.coords(), &tau.matrix))
    }
}

impl Transformable for Subspace {
    fn transformed(&self, ctx: &GeometryContext, tau: &Projectivity) -> Result<Self> {
        tau.check(ctx)?;
        if self.rows()[0].len() != ctx.width() {
            return Err(Error::DimensionMismatch {
                expected: ctx.width(),
                got: self.rows()[0].len(),
            });
        }
        ctx.subspace_from_rows(linalg::mat_mul(ctx.field(), self.rows(), &tau.matrix))
    }
}

impl Transformable for PathEmbedding {
    fn transformed(&self, ctx: &GeometryContext, tau: &Projectivity) -> Result<Self> {
        self.try_map(|p| p.transformed(ctx, tau), |l| l.transformed(ctx, tau))
    }
}

impl Transformable for CycleEmbedding {
    fn transformed(&self, ctx: &GeometryContext, tau: &Projectivity) -> Result<Self> {
        self.try_map(|p| p.transformed(ctx, tau), |l| l.transformed(ctx, tau))
    }
}

impl Projectivity {
    pub fn identity(ctx: &GeometryContext) -> Self {
        Projectivity {
            matrix: linalg::identity(ctx.width()),
        }
    }

    /// Fails with `DimensionMismatch` on a non-square or wrongly sized matrix
    /// and `DivisionByZero` on a singular one.
    pub fn from_matrix(ctx: &GeometryContext, matrix: Vec<Row>) -> Result<Self> {
        let w = ctx.width();
        if matrix.len() != w || matrix.iter().any(|r| r.len() != w) {
            return Err(Error::DimensionMismatch {
                expected: w,
                got: matrix.len(),
            });
        }
        if linalg::mat_inv(ctx.field(), &matrix).is_none() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(ctx, matrix))
    }

    /// Matrix from canonical integer entries.
    pub fn from_ints(ctx: &GeometryContext, rows: &[Vec<u32>]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| ctx.field().element(x))
                    .collect::<Result<Row>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrix(ctx, m)
    }

    fn canonical(ctx: &GeometryContext, mut matrix: Vec<Row>) -> Self {
        let f = ctx.field();
        let lead = matrix
            .iter()
            .flatten()
            .copied()
            .find(|x| !x.is_zero())
            .expect("invertible");
        let scale = f.inv(lead).expect("nonzero");
        for x in matrix.iter_mut().flatten() {
            *x = f.mul(*x, scale);
        }
        Projectivity { matrix }
    }

    pub fn matrix(&self) -> &[Row] {
        &self.matrix
    }

    /// Row-major canonical integers (diagnostics only).
    pub fn to_ints(&self) -> Vec<Vec<u32>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|x| x.value()).collect())
            .collect()
    }

    fn check(&self, ctx: &GeometryContext) -> Result<()> {
        if self.matrix.len() == ctx.width() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: ctx.width(),
                got: self.matrix.len(),
            })
        }
    }

    pub fn apply<T: Transformable>(&self, ctx: &GeometryContext, x: &T) -> Result<T> {
        x.transformed(ctx, self)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, ctx: &GeometryContext, other: &Projectivity) -> Result<Self> {
        self.check(ctx)?;
        other.check(ctx)?;
        Ok(Self::canonical(
            ctx,
            linalg::mat_mul(ctx.field(), &other.matrix, &self.matrix),
        ))
    }

    pub fn inverse(&self, ctx: &GeometryContext) -> Result<Self> {
        self.check(ctx)?;
        let inv =
            linalg::mat_inv(ctx.field(), &self.matrix).expect("projectivities are invertible");
        Ok(Self::canonical(ctx, inv))
    }

    /// The map sending row i of `source` to row i of `target` (both bases).
    fn change_of_basis(ctx: &GeometryContext, source: &[Row], target: &[Row]) -> Self {
        let inv = linalg::mat_inv(ctx.field(), source).expect("source rows form a basis");
        Self::canonical(ctx, linalg::mat_mul(ctx.field(), &inv, target))
    }
}

fn units(ctx: &GeometryContext) -> Vec<Row> {
    (0..ctx.width())
        .map(|i| linalg::unit_vector(ctx.width(), i))
        .collect()
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

/// Basis (first, second, completion inside `h`, completion of the space).
fn flag_basis(ctx: &GeometryContext, h: &Subspace, flag: &Flag) -> Result<Vec<Row>> {
    if !flag.line.is_line() || !ctx.contains(h, &flag.line) {
        return Err(Error::FlagInvalid("line is not a line of the hyperplane"));
    }
    if flag.first == flag.second {
        return Err(Error::FlagInvalid("marked points coincide"));
    }
    if !ctx.incident(&flag.first, &flag.line) || !ctx.incident(&flag.second, &flag.line) {
        return Err(Error::FlagInvalid("marked point is not on the line"));
    }
    let start = vec![flag.first.coords().to_vec(), flag.second.coords().to_vec()];
    let in_h = linalg::extend_basis(ctx.field(), &start, h.rows());
    Ok(linalg::extend_basis(ctx.field(), &in_h, &units(ctx)))
}

/// A projectivity stabilizing the hyperplane `h` that maps `source.line` to
/// `target.line`, `source.first` to `target.first` and `source.second` to
/// `target.second`.
pub fn map_flag_to_flag(
    ctx: &GeometryContext,
    h: &Subspace,
    source: &Flag,
    target: &Flag,
) -> Result<Projectivity> {
    check_hyperplane(ctx, h)?;
    let from = flag_basis(ctx, h, source)?;
    let to = flag_basis(ctx, h, target)?;
    Ok(Projectivity::change_of_basis(ctx, &from, &to))
}

/// The subgroup of projectivities fixing `sigma` pointwise and `pi` setwise
/// that `move_endpoint` draws from.
///
/// In a basis `(s_1..s_{n-1}, u, w)` adapted to `sigma ⊂ pi`, its elements
/// fix every `s_i` and `w` and send `u` to `a·u + Σ c_i s_i` with `a ≠ 0`.
#[derive(Clone, Debug)]
pub struct SigmaStabilizer {
    basis: Vec<Row>,
    core_rank: usize,
}

impl SigmaStabilizer {
    pub fn new(ctx: &GeometryContext, sigma: &Subspace, pi: &Subspace) -> Result<Self> {
        check_hyperplane(ctx, pi)?;
        if sigma.rank() + 1 != ctx.n() {
            return Err(Error::WrongDimension {
                expected: ctx.n() - 2,
                got: sigma.projective_dim(),
            });
        }
        if !ctx.contains(pi, sigma) {
            return Err(Error::NotInSubspace);
        }
        let in_pi = linalg::extend_basis(ctx.field(), sigma.rows(), pi.rows());
        let basis = linalg::extend_basis(ctx.field(), &in_pi, &units(ctx));
        Ok(SigmaStabilizer {
            basis,
            core_rank: sigma.rank(),
        })
    }

    fn element(
        &self,
        ctx: &GeometryContext,
        scale: FieldElement,
        shift: &[FieldElement],
    ) -> Projectivity {
        let mut d = linalg::identity(ctx.width());
        let u = self.core_rank;
        d[u][u] = scale;
        d[u][..u].copy_from_slice(shift);
        let inv = linalg::mat_inv(ctx.field(), &self.basis).expect("basis");
        let m = linalg::mat_mul(
            ctx.field(),
            &linalg::mat_mul(ctx.field(), &inv, &d),
            &self.basis,
        );
        Projectivity::canonical(ctx, m)
    }

    /// Homologies `u ↦ a·u` for a ≠ 0, 1 in canonical order.
    pub fn homologies(&self, ctx: &GeometryContext) -> Vec<Projectivity> {
        let zero = vec![FieldElement::ZERO; self.core_rank];
        ctx.field()
            .elements()
            .skip(2)
            .map(|a| self.element(ctx, a, &zero))
            .collect()
    }

    /// Elations `u ↦ u + Σ c_i s_i` for nonzero c in canonical order.
    pub fn elations(&self, ctx: &GeometryContext) -> Vec<Projectivity> {
        let q = ctx.q() as u64;
        let total = q.pow(self.core_rank as u32);
        (1..total)
            .map(|t| {
                let mut v = t;
                let shift: Row = (0..self.core_rank)
                    .map(|_| {
                        let c = ctx.field().element((v % q) as u32).expect("digit < q");
                        v /= q;
                        c
                    })
                    .collect();
                self.element(ctx, FieldElement::ONE, &shift)
            })
            .collect()
    }

    /// Identity, then homologies, then elations.
    pub fn candidates(&self, ctx: &GeometryContext) -> Vec<Projectivity> {
        let mut out = vec![Projectivity::identity(ctx)];
        out.extend(self.homologies(ctx));
        out.extend(self.elations(ctx));
        out
    }

    /// Orbit of `p` under the generated group, by closure, in canonical order.
    pub fn orbit(&self, ctx: &GeometryContext, p: &Point) -> Result<Vec<Point>> {
        let generators: Vec<_> = self.candidates(ctx).into_iter().skip(1).collect();
        let mut seen = BTreeSet::from([p.clone()]);
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.apply(ctx, &x)?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// Moves `path` (lying in `pi`) by an element of the pointwise stabilizer of
/// `sigma` so that `endpoint` lands outside `forbidden`.
///
/// Vertices in `sigma` stay where they are. Candidates are tried in the
/// fixed order identity, homologies, elations; the first success is returned.
pub fn move_endpoint(
    ctx: &GeometryContext,
    sigma: &Subspace,
    pi: &Subspace,
    path: &PathEmbedding,
    endpoint: &Point,
    forbidden: &[Point],
) -> Result<PathEmbedding> {
    let group = SigmaStabilizer::new(ctx, sigma, pi)?;
    if path.is_empty() || (path.first() != endpoint && path.last() != endpoint) {
        return Err(Error::NotInCycle("endpoint is not an end of the path"));
    }
    if ctx.incident(endpoint, sigma) {
        return Err(Error::FlagInvalid("endpoint lies in the fixed subspace"));
    }
    if path.vertices.iter().any(|v| !ctx.incident(v, pi)) {
        return Err(Error::NotInSubspace);
    }
    for tau in group.candidates(ctx) {
        let image = tau.apply(ctx, endpoint)?;
        if !forbidden.contains(&image) {
            return tau.apply(ctx, path);
        }
    }
    Err(Error::NoValidMove)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(n: usize, q: u64) -> GeometryContext {
        GeometryContext::from_order(n, q).unwrap()
    }

    #[test]
    fn identity_and_swap() {
        let g = pg(2, 2);
        let id = Projectivity::identity(&g);
        for p in g.enumerate_points().unwrap() {
            assert_eq!(id.apply(&g, p).unwrap(), *p);
        }
        let swap =
            Projectivity::from_ints(&g, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(
            swap.apply(&g, &g.point(&[1, 0, 0]).unwrap()).unwrap(),
            g.point(&[0, 1, 0]).unwrap()
        );
    }

    #[test]
    fn singular_and_mismatched_matrices_are_rejected() {
        let g = pg(2, 3);
        assert!(
            Projectivity::from_ints(&g, &[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]).is_err()
        );
        let h = pg(3, 3);
        let tau = Projectivity::identity(&h);
        assert!(matches!(
            tau.apply(&g, &g.point(&[1, 0, 0]).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn flag_map_between_lines_of_a_plane() {
        let g = pg(3, 2);
        let h = g
            .subspace_from_ints(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]])
            .unwrap();
        let e = |c: &[u32]| g.point(c).unwrap();
        let (e1, e2, e3) = (e(&[1, 0, 0, 0]), e(&[0, 1, 0, 0]), e(&[0, 0, 1, 0]));
        let src = Flag::new(g.line_through(&e1, &e2).unwrap(), e1.clone(), e2.clone());
        let dst = Flag::new(g.line_through(&e2, &e3).unwrap(), e3.clone(), e2.clone());
        let tau = map_flag_to_flag(&g, &h, &src, &dst).unwrap();
        assert_eq!(tau.apply(&g, &h).unwrap(), h);
        assert_eq!(tau.apply(&g, &src.line).unwrap(), dst.line);
        assert_eq!(tau.apply(&g, &e1).unwrap(), e3);
        assert_eq!(tau.apply(&g, &e2).unwrap(), e2);

        let same = map_flag_to_flag(&g, &h, &src, &src).unwrap();
        assert_eq!(same, Projectivity::identity(&g));

        let off = Flag::new(src.line.clone(), e3.clone(), e2.clone());
        assert!(matches!(
            map_flag_to_flag(&g, &h, &off, &dst),
            Err(Error::FlagInvalid(_))
        ));
    }

    #[test]
    fn group_operations() {
        let g = pg(2, 3);
        let a =
            Projectivity::from_ints(&g, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let id = Projectivity::identity(&g);
        assert_eq!(a.compose(&g, &a.inverse(&g).unwrap()).unwrap(), id);
        assert_eq!(id.inverse(&g).unwrap(), id);
        // compose applies the right operand first
        let b =
            Projectivity::from_ints(&g, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let p = g.point(&[1, 2, 1]).unwrap();
        let ab = a.compose(&g, &b).unwrap();
        assert_eq!(
            ab.apply(&g, &p).unwrap(),
            a.apply(&g, &b.apply(&g, &p).unwrap()).unwrap()
        );
    }

    #[test]
    fn move_with_empty_forbidden_set_is_identity() {
        let g = pg(3, 3);
        let sigma = g
            .subspace_from_ints(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])
            .unwrap();
        let pi = g.canonical_hyperplane();
        let a = g.point(&[0, 0, 1, 0]).unwrap();
        let b = g.point(&[1, 1, 1, 0]).unwrap();
        let path = PathEmbedding::through(&g, vec![a.clone(), b]).unwrap();
        assert_eq!(
            move_endpoint(&g, &sigma, &pi, &path, &a, &[]).unwrap(),
            path
        );
        let moved = move_endpoint(&g, &sigma, &pi, &path, &a, std::slice::from_ref(&a)).unwrap();
        assert_ne!(moved.first(), &a);
        assert!(g.incident(moved.first(), &pi));
    }

    #[test]
    fn orbit_is_whole_affine_part() {
        let g = pg(3, 3);
        let sigma = g
            .subspace_from_ints(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])
            .unwrap();
        let pi = g.canonical_hyperplane();
        let group = SigmaStabilizer::new(&g, &sigma, &pi).unwrap();
        let orbit = group.orbit(&g, &g.point(&[0, 0, 1, 0]).unwrap()).unwrap();
        assert_eq!(orbit.len(), 9);
        assert!(orbit
            .iter()
            .all(|p| g.incident(p, &pi) && !g.incident(p, &sigma)));
    }
}
