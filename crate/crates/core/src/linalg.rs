//! Dense row-vector linear algebra over a [`GaloisField`].
//!
//! Vectors are rows; a matrix acts on the right (`v ↦ v·M`).

use crate::gf::{FieldElement, GaloisField};

pub type Row = Vec<FieldElement>;

/// Reduced row echelon form. Zero rows are dropped; returns the rows and
/// their pivot columns.
pub fn rref(field: &GaloisField, mut rows: Vec<Row>) -> (Vec<Row>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let scale = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, scale);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c];
                let (pivot_row, other) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, &y) in other.iter_mut().zip(pivot_row.iter()) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(field: &GaloisField, rows: Vec<Row>) -> usize {
    rref(field, rows).0.len()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in the span.
pub fn reduce(field: &GaloisField, basis: &[Row], pivots: &[usize], v: &[FieldElement]) -> Row {
    let mut out = v.to_vec();
    for (row, &c) in basis.iter().zip(pivots) {
        let factor = out[c];
        if factor.is_zero() {
            continue;
        }
        for (x, &y) in out.iter_mut().zip(row.iter()) {
            *x = field.sub(*x, field.mul(factor, y));
        }
    }
    out
}

/// Pivot columns of a matrix already in RREF.
pub fn pivots_of(rows: &[Row]) -> Vec<usize> {
    rows.iter()
        .map(|r| {
            r.iter()
                .position(|x| !x.is_zero())
                .expect("RREF rows are nonzero")
        })
        .collect()
}

pub fn vec_mat(field: &GaloisField, v: &[FieldElement], m: &[Row]) -> Row {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![FieldElement::ZERO; cols];
    for (&a, row) in v.iter().zip(m) {
        if a.is_zero() {
            continue;
        }
        for (x, &y) in out.iter_mut().zip(row.iter()) {
            *x = field.add(*x, field.mul(a, y));
        }
    }
    out
}

pub fn mat_mul(field: &GaloisField, a: &[Row], b: &[Row]) -> Vec<Row> {
    a.iter().map(|row| vec_mat(field, row, b)).collect()
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        FieldElement::ONE
                    } else {
                        FieldElement::ZERO
                    }
                })
                .collect()
        })
        .collect()
}

pub fn unit_vector(n: usize, i: usize) -> Row {
    let mut v = vec![FieldElement::ZERO; n];
    v[i] = FieldElement::ONE;
    v
}

/// Inverse of a square matrix, `None` if singular.
pub fn mat_inv(field: &GaloisField, m: &[Row]) -> Option<Vec<Row>> {
    let n = m.len();
    let augmented: Vec<Row> = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().copied().chain(id).collect())
        .collect();
    let (reduced, pivots) = rref(field, augmented);
    if reduced.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(reduced.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Extends `start` (assumed independent) to a basis of the span of
/// `start ∪ candidates`, taking candidates in order and skipping dependents.
pub fn extend_basis(field: &GaloisField, start: &[Row], candidates: &[Row]) -> Vec<Row> {
    let mut basis: Vec<Row> = start.to_vec();
    let (mut echelon, mut pivots) = rref(field, basis.clone());
    for c in candidates {
        if reduce(field, &echelon, &pivots, c)
            .iter()
            .any(|x| !x.is_zero())
        {
            basis.push(c.clone());
            (echelon, pivots) = rref(field, basis.clone());
        }
    }
    basis
}
