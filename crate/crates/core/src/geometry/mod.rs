//! The projective space PG(n,q): points, subspaces, incidence and pencils.
//!
//! Points are normalized homogeneous coordinate vectors (first nonzero
//! coordinate equal to one). Subspaces are carried as RREF basis matrices, so
//! two subspaces are equal exactly when their bases are bit-identical.

mod frame;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, GaloisField};
use crate::linalg::{self, Row};

pub use frame::SubspaceFrame;

/// Largest number of points [`GeometryContext::enumerate_points`] will list.
pub const MAX_POINTS: u128 = 1 << 20;

/// A point of PG(n,q).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Row);

impl Point {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    /// Canonical integer encoding of each coordinate.
    pub fn to_ints(&self) -> Vec<u32> {
        self.0.iter().map(|x| x.value()).collect()
    }

    /// Coordinates taken as given, unnormalized and unchecked. Only for
    /// handing untrusted data to the verifier.
    pub(crate) fn unchecked(coords: Row) -> Self {
        Point(coords)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A projective subspace, stored as its RREF basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    rows: Vec<Row>,
}

impl Subspace {
    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Vector-space dimension (row rank).
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn projective_dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn is_line(&self) -> bool {
        self.rows.len() == 2
    }

    /// Row-major canonical integer encoding.
    pub fn to_ints(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.value()).collect())
            .collect()
    }

    /// Rows taken as given; see [`Point::unchecked`].
    pub(crate) fn unchecked(rows: Vec<Row>) -> Self {
        Subspace { rows }
    }

    pub(crate) fn pivots(&self) -> Vec<usize> {
        linalg::pivots_of(&self.rows)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_ints()).finish()
    }
}

/// Anything that contributes generators to a span.
#[derive(Clone, Copy, Debug)]
pub enum SpanItem<'a> {
    Point(&'a Point),
    Subspace(&'a Subspace),
}

impl<'a> From<&'a Point> for SpanItem<'a> {
    fn from(p: &'a Point) -> Self {
        SpanItem::Point(p)
    }
}

impl<'a> From<&'a Subspace> for SpanItem<'a> {
    fn from(s: &'a Subspace) -> Self {
        SpanItem::Subspace(s)
    }
}

/// The q+1 hyperplanes through a codimension-2 subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilDecomposition {
    pub core: Subspace,
    pub members: Vec<Subspace>,
}

struct PointIndex {
    points: Vec<Point>,
    ids: HashMap<Point, usize>,
}

/// PG(n,q) over a fixed field.
#[derive(Clone)]
pub struct GeometryContext {
    n: usize,
    field: Arc<GaloisField>,
    index: Arc<OnceLock<PointIndex>>,
}

impl fmt::Debug for GeometryContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG({},{})", self.n, self.field.q())
    }
}

impl PartialEq for GeometryContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field
    }
}

impl GeometryContext {
    /// PG(n,q) for n ≥ 2.
    pub fn new(n: usize, field: Arc<GaloisField>) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, got: n });
        }
        Ok(Self::any_dimension(n, field))
    }

    /// PG(n,q) for a prime power q with the canonical field.
    pub fn from_order(n: usize, q: u64) -> Result<Self> {
        Self::new(n, Arc::new(GaloisField::from_order(q)?))
    }

    /// Frames into lines need PG(1,q), which is not a user-facing geometry.
    pub(crate) fn any_dimension(n: usize, field: Arc<GaloisField>) -> Self {
        GeometryContext {
            n,
            field,
            index: Arc::new(OnceLock::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<GaloisField> {
        &self.field
    }

    /// Length of coordinate vectors, n + 1.
    pub fn width(&self) -> usize {
        self.n + 1
    }

    pub fn point_count(&self) -> u128 {
        count_points(self.n, self.q() as u64)
    }

    pub fn line_count(&self) -> u128 {
        count_lines(self.n, self.q() as u64)
    }

    pub fn normalize_point(&self, v: &[FieldElement]) -> Result<Point> {
        self.check_width(v.len())?;
        let lead = *v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
        let scale = self.field.inv(lead)?;
        Ok(Point(v.iter().map(|&x| self.field.mul(x, scale)).collect()))
    }

    /// Point from canonical integer coordinates, normalized.
    pub fn point(&self, coords: &[u32]) -> Result<Point> {
        let v = coords
            .iter()
            .map(|&c| self.field.element(c))
            .collect::<Result<Row>>()?;
        self.normalize_point(&v)
    }

    /// Rebuilds a subspace from integer rows and re-canonicalizes it.
    pub fn subspace_from_ints(&self, rows: &[Vec<u32>]) -> Result<Subspace> {
        let rows = rows
            .iter()
            .map(|r| {
                self.check_width(r.len())?;
                r.iter()
                    .map(|&c| self.field.element(c))
                    .collect::<Result<Row>>()
            })
            .collect::<Result<Vec<Row>>>()?;
        self.subspace_from_rows(rows)
    }

    pub(crate) fn subspace_from_rows(&self, rows: Vec<Row>) -> Result<Subspace> {
        let (rows, _) = linalg::rref(&self.field, rows);
        if rows.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Subspace { rows })
    }

    fn check_width(&self, len: usize) -> Result<()> {
        if len == self.width() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.width(),
                got: len,
            })
        }
    }

    pub fn line_through(&self, a: &Point, b: &Point) -> Result<Subspace> {
        if a == b {
            return Err(Error::EqualPoints);
        }
        self.span(&[a.into(), b.into()])
    }

    /// RREF basis of the joint row space of the items.
    pub fn span(&self, items: &[SpanItem<'_>]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for item in items {
            match item {
                SpanItem::Point(p) => rows.push(p.0.clone()),
                SpanItem::Subspace(s) => rows.extend(s.rows.iter().cloned()),
            }
        }
        if let Some(r) = rows.iter().find(|r| r.len() != self.width()) {
            return Err(Error::DimensionMismatch {
                expected: self.width(),
                got: r.len(),
            });
        }
        self.subspace_from_rows(rows)
    }

    /// The subspace consisting of a single point.
    pub fn point_subspace(&self, p: &Point) -> Subspace {
        Subspace {
            rows: vec![p.0.clone()],
        }
    }

    pub fn incident(&self, p: &Point, s: &Subspace) -> bool {
        linalg::reduce(&self.field, &s.rows, &s.pivots(), &p.0)
            .iter()
            .all(|x| x.is_zero())
    }

    /// Whether `inner ⊆ outer`.
    pub fn contains(&self, outer: &Subspace, inner: &Subspace) -> bool {
        let pivots = outer.pivots();
        inner.rows.iter().all(|r| {
            linalg::reduce(&self.field, &outer.rows, &pivots, r)
                .iter()
                .all(|x| x.is_zero())
        })
    }

    /// All points of `s`, in canonical order.
    pub fn points_on(&self, s: &Subspace) -> Vec<Point> {
        let r = s.rank();
        let q = self.q();
        let mut out = Vec::new();
        // normalized coefficient vectors c ∈ GF(q)^r
        for lead in 0..r {
            let free = r - lead - 1;
            let total = (q as u64).pow(free as u32);
            for t in 0..total {
                let mut coeffs = vec![FieldElement::ZERO; r];
                coeffs[lead] = FieldElement::ONE;
                let mut v = t;
                for c in coeffs.iter_mut().skip(lead + 1) {
                    *c = FieldElement::raw((v % q as u64) as u32);
                    v /= q as u64;
                }
                let vec = linalg::vec_mat(&self.field, &coeffs, &s.rows);
                out.push(Point(vec));
            }
        }
        out.sort();
        out
    }

    /// The unique point of `line ∩ hyperplane`, if the line is not inside it.
    pub fn meet_line_hyperplane(&self, line: &Subspace, hyperplane: &Subspace) -> Option<Point> {
        if self.contains(hyperplane, line) {
            return None;
        }
        self.points_on(line)
            .into_iter()
            .find(|p| self.incident(p, hyperplane))
    }

    /// The hyperplane where the last coordinate vanishes.
    pub fn canonical_hyperplane(&self) -> Subspace {
        Subspace {
            rows: (0..self.n)
                .map(|i| linalg::unit_vector(self.width(), i))
                .collect(),
        }
    }

    /// The q+1 hyperplanes containing `core`, ascending by RREF serialization.
    pub fn hyperplane_pencil(&self, core: &Subspace) -> Result<PencilDecomposition> {
        if core.rank() + 1 != self.n {
            return Err(Error::WrongDimension {
                expected: self.n - 2,
                got: core.projective_dim(),
            });
        }
        let units: Vec<Row> = (0..self.width())
            .map(|i| linalg::unit_vector(self.width(), i))
            .collect();
        let full = linalg::extend_basis(&self.field, &core.rows, &units);
        let (u, w) = (&full[self.n - 1], &full[self.n]);
        // directions a·u + b·w over the points (a:b) of PG(1,q)
        let mut members = Vec::with_capacity(self.q() as usize + 1);
        let mut directions = vec![(FieldElement::ONE, FieldElement::ZERO)];
        directions.extend(self.field.elements().map(|a| (a, FieldElement::ONE)));
        for (a, b) in directions {
            let dir: Row = u
                .iter()
                .zip(w)
                .map(|(&x, &y)| self.field.add(self.field.mul(a, x), self.field.mul(b, y)))
                .collect();
            let mut rows = core.rows.clone();
            rows.push(dir);
            members.push(self.subspace_from_rows(rows)?);
        }
        members.sort();
        Ok(PencilDecomposition {
            core: core.clone(),
            members,
        })
    }

    /// Coordinate frame identifying `s` with PG(d,q), d = dim s.
    pub fn frame(&self, s: &Subspace) -> Result<SubspaceFrame> {
        SubspaceFrame::new(self.clone(), s.clone())
    }

    /// All points in ascending lexicographic order.
    pub fn enumerate_points(&self) -> Result<&[Point]> {
        Ok(&self.index()?.points)
    }

    /// Position of a point in [`enumerate_points`](Self::enumerate_points).
    pub fn point_id(&self, p: &Point) -> Result<Option<usize>> {
        Ok(self.index()?.ids.get(p).copied())
    }

    fn index(&self) -> Result<&PointIndex> {
        let count = self.point_count();
        if count > MAX_POINTS {
            return Err(Error::SizeExceeded {
                what: "point count",
                value: count,
                bound: MAX_POINTS,
            });
        }
        Ok(self.index.get_or_init(|| {
            let width = self.width();
            let whole = Subspace {
                rows: (0..width).map(|i| linalg::unit_vector(width, i)).collect(),
            };
            let points = self.points_on(&whole);
            let ids = points
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            PointIndex { points, ids }
        }))
    }
}

/// (q^(n+1) − 1)/(q − 1).
pub fn count_points(n: usize, q: u64) -> u128 {
    let q = q as u128;
    (q.pow(n as u32 + 1) - 1) / (q - 1)
}

/// (q^(n+1) − 1)(q^n − 1) / ((q² − 1)(q − 1)).
pub fn count_lines(n: usize, q: u64) -> u128 {
    let q = q as u128;
    (q.pow(n as u32 + 1) - 1) * (q.pow(n as u32) - 1) / ((q * q - 1) * (q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(n: usize, q: u64) -> GeometryContext {
        GeometryContext::from_order(n, q).unwrap()
    }

    #[test]
    fn normalization() {
        let g = pg(2, 3);
        assert_eq!(g.point(&[0, 2, 1]).unwrap().to_ints(), vec![0, 1, 2]);
        assert_eq!(g.point(&[1, 0, 0]).unwrap().to_ints(), vec![1, 0, 0]);
        assert_eq!(g.point(&[0, 0, 0]), Err(Error::ZeroVector));
        assert!(matches!(
            g.point(&[1, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lines_through_points() {
        let g = pg(3, 2);
        let l = g
            .line_through(
                &g.point(&[1, 0, 0, 0]).unwrap(),
                &g.point(&[0, 1, 0, 0]).unwrap(),
            )
            .unwrap();
        assert_eq!(l.to_ints(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let pts: Vec<_> = g.points_on(&l).iter().map(Point::to_ints).collect();
        assert_eq!(
            pts,
            vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![1, 1, 0, 0]]
        );

        let h = pg(2, 2);
        let l = h
            .line_through(&h.point(&[1, 1, 0]).unwrap(), &h.point(&[1, 0, 1]).unwrap())
            .unwrap();
        assert_eq!(l.to_ints(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let p = h.point(&[1, 1, 0]).unwrap();
        assert_eq!(h.line_through(&p, &p), Err(Error::EqualPoints));
    }

    #[test]
    fn incidence_examples() {
        let g = pg(3, 2);
        let l = g
            .span(&[
                (&g.point(&[1, 0, 0, 0]).unwrap()).into(),
                (&g.point(&[0, 1, 0, 0]).unwrap()).into(),
            ])
            .unwrap();
        assert!(g.incident(&g.point(&[1, 1, 0, 0]).unwrap(), &l));
        assert!(!g.incident(&g.point(&[0, 0, 1, 0]).unwrap(), &l));

        let h = pg(2, 3);
        let l = h
            .line_through(&h.point(&[1, 0, 0]).unwrap(), &h.point(&[0, 1, 0]).unwrap())
            .unwrap();
        assert!(h.incident(&h.point(&[1, 2, 0]).unwrap(), &l));
        assert_eq!(h.points_on(&l).len(), 4);
    }

    #[test]
    fn spans() {
        let g = pg(3, 2);
        let e1 = g.point(&[1, 0, 0, 0]).unwrap();
        let e2 = g.point(&[0, 1, 0, 0]).unwrap();
        let e3 = g.point(&[0, 0, 1, 0]).unwrap();
        let e12 = g.point(&[1, 1, 0, 0]).unwrap();
        let line = g
            .span(&[(&e1).into(), (&e2).into(), (&e12).into()])
            .unwrap();
        assert_eq!(line, g.line_through(&e1, &e2).unwrap());
        assert_eq!(
            g.span(&[(&e1).into(), (&e2).into(), (&e3).into()])
                .unwrap()
                .projective_dim(),
            2
        );
        let single = g.span(&[(&e3).into()]).unwrap();
        assert_eq!(single, g.point_subspace(&e3));
        assert_eq!(g.points_on(&single), vec![e3]);
    }

    #[test]
    fn pencil_examples() {
        let g = pg(3, 2);
        let sigma = g
            .subspace_from_ints(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])
            .unwrap();
        let pencil = g.hyperplane_pencil(&sigma).unwrap();
        assert_eq!(pencil.members.len(), 3);
        for m in &pencil.members {
            assert_eq!(g.points_on(m).len() - 3, 4);
        }
        let g3 = pg(3, 3);
        let sigma3 = g3
            .subspace_from_ints(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])
            .unwrap();
        assert_eq!(g3.hyperplane_pencil(&sigma3).unwrap().members.len(), 4);
        let plane = g3.canonical_hyperplane();
        assert!(matches!(
            g3.hyperplane_pencil(&plane),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn counts() {
        assert_eq!(count_points(3, 2), 15);
        assert_eq!(count_lines(3, 2), 35);
        assert_eq!(count_points(2, 4), 21);
        for q in [2, 3, 4, 5, 7] {
            assert_eq!(count_points(2, q), (q * q + q + 1) as u128);
            for n in 2..6 {
                assert!(count_lines(n, q) >= count_points(n, q));
            }
        }
    }

    #[test]
    fn enumeration() {
        let g = pg(2, 2);
        let pts = g.enumerate_points().unwrap();
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0].to_ints(), vec![0, 0, 1]);
        assert_eq!(pg(3, 2).enumerate_points().unwrap().len(), 15);
        assert!(matches!(
            GeometryContext::from_order(1, 2),
            Err(Error::DimensionTooSmall { .. })
        ));
    }
}
