//! Hamiltonian cycles of PG(2,q) from a Singer cycle.
//!
//! Points of PG(2,q) are the cosets of GF(q)* in GF(q³)*. With γ primitive in
//! GF(q³), the powers γ^0, ..., γ^(q²+q) hit every coset once, and
//! multiplication by γ is a projectivity acting regularly on points and on
//! lines. The lines through consecutive powers therefore form a single orbit
//! of length q²+q+1, so they are pairwise distinct.

use std::collections::HashMap;

use crate::embedding::CycleEmbedding;
use crate::error::{Error, Result};
use crate::geometry::{GeometryContext, Point};
use crate::gf::{FieldElement, GaloisField};

/// A cycle through all q²+q+1 points of PG(2,q), using every line once.
pub fn singer_hamiltonian(ctx: &GeometryContext) -> Result<CycleEmbedding> {
    if ctx.n() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: ctx.n(),
        });
    }
    let small = ctx.field();
    let big = GaloisField::new(small.p() as u64, 3 * small.e())?;
    let embed = subfield_embedding(small, &big);
    let gamma = big.primitive_element();

    // coordinates of every element of GF(q³) in the GF(q)-basis (1, γ, γ²)
    let gamma2 = big.mul(gamma, gamma);
    let mut coords: HashMap<FieldElement, [FieldElement; 3]> =
        HashMap::with_capacity((big.q()) as usize);
    for a0 in small.elements() {
        for a1 in small.elements() {
            for a2 in small.elements() {
                let v = big.add(
                    embed[a0.value() as usize],
                    big.add(
                        big.mul(embed[a1.value() as usize], gamma),
                        big.mul(embed[a2.value() as usize], gamma2),
                    ),
                );
                coords.insert(v, [a0, a1, a2]);
            }
        }
    }
    debug_assert_eq!(coords.len(), big.q() as usize);

    let q = small.q() as u64;
    let total = q * q + q + 1;
    let mut vertices: Vec<Point> = Vec::with_capacity(total as usize);
    let mut power = big.one();
    for _ in 0..total {
        vertices.push(ctx.normalize_point(&coords[&power])?);
        power = big.mul(power, gamma);
    }
    CycleEmbedding::through(ctx, vertices)
}

/// Images of the elements of `small` inside `big`, indexed by canonical value.
///
/// `small = GF(p)[x]/(m)` embeds by sending x to the first root of m in
/// `big` (canonical order); a prime-field digit c maps to the constant c.
fn subfield_embedding(small: &GaloisField, big: &GaloisField) -> Vec<FieldElement> {
    let m = small.modulus();
    let constant = |c: u32| big.element(c).expect("digits are below p");
    let root = big
        .elements()
        .find(|&r| {
            m.iter()
                .rev()
                .fold(big.zero(), |acc, &c| big.add(big.mul(acc, r), constant(c)))
                .is_zero()
        })
        .expect("the modulus splits in an extension of degree divisible by e");
    small
        .elements()
        .map(|a| {
            small.coeffs(a).iter().rev().fold(big.zero(), |acc, &c| {
                big.add(big.mul(acc, root), constant(c))
            })
        })
        .collect()
}
