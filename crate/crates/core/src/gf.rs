//! Arithmetic in GF(q), q = p^e.
//!
//! Elements are coefficient vectors of polynomials of degree < e over GF(p),
//! reduced modulo a monic irreducible polynomial of degree e. Each element is
//! stored as its canonical integer `Σ coeffs[i]·p^i`, so element 0 is zero,
//! element 1 is one, and for e = 1 the integer is the residue itself.
//!
//! The modulus is the first irreducible monic polynomial when the tuples
//! `(c_0, c_1, ..., c_{e-1})` are enumerated lexicographically with the
//! constant term most significant. For e = 1 that is `x`, so arithmetic is
//! plain arithmetic mod p.
//!
//! Multiplication goes through log/antilog tables built once from the
//! primitive element. The tables are derived from the polynomial product, so
//! they never change an observable result.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`GaloisField::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of some [`GaloisField`], in canonical integer encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical integer `Σ coeffs[i]·p^i`.
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    /// Callers guarantee `value < q`.
    #[inline]
    pub(crate) const fn raw(value: u32) -> Self {
        FieldElement(value)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field GF(p^e) with its canonical modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl GaloisField {
    /// Builds GF(p^e) with the canonical modulus.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroExponent);
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::SizeExceeded {
                what: "field order",
                value: q,
                bound: MAX_FIELD_ORDER as u128,
            });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = canonical_modulus(p, e);
        Ok(Self::with_modulus(p, e, q, modulus))
    }

    /// Builds GF(q) for a prime power q.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e)
    }

    /// Rebuilds a field from an explicit modulus, as stored in a certificate.
    ///
    /// The modulus is checked to be monic of degree `e` and irreducible.
    pub fn with_explicit_modulus(p: u64, e: u32, modulus: &[u32]) -> Result<Self> {
        let reference = Self::new(p, e)?;
        let p = reference.p;
        let valid = modulus.len() == e as usize + 1
            && modulus[e as usize] == 1
            && modulus.iter().all(|&c| c < p)
            && is_irreducible(modulus, p);
        if !valid {
            return Err(Error::InvalidModulus(modulus.to_vec()));
        }
        Ok(Self::with_modulus(p, e, reference.q, modulus.to_vec()))
    }

    fn with_modulus(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mut field = GaloisField {
            p,
            e,
            q,
            modulus,
            primitive: FieldElement::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = field.find_primitive();
        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; q as usize];
        let mut acc = FieldElement::ONE;
        for i in 0..order {
            exp.push(acc.0);
            log[acc.0 as usize] = i as u32;
            acc = field.mul_slow(acc, field.primitive);
        }
        field.exp = exp;
        field.log = log;
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given canonical integer.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    /// Element from its coefficient vector (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::ElementOutOfRange {
                value: u32::MAX,
                q: self.q,
            });
        }
        Ok(FieldElement(
            coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c),
        ))
    }

    /// Coefficient vector of length e, constant term first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    /// The first element in canonical order of multiplicative order q − 1.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        if self.p == 2 {
            return a;
        }
        self.digitwise(a, FieldElement::ZERO, |x, _| (self.p - x) % self.p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.q - 1;
        let s = (self.log[a.0 as usize] + self.log[b.0 as usize]) % order;
        FieldElement(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let s = (order - self.log[a.0 as usize]) % order;
        Ok(FieldElement(self.exp[s as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, m: u64) -> FieldElement {
        if m == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let s = (self.log[a.0 as usize] as u64 * (m % order)) % order;
        FieldElement(self.exp[s as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let mut order = (self.q - 1) as u64;
        for r in prime_factors(order) {
            while order.is_multiple_of(r) && self.pow_slow(a, order / r) == FieldElement::ONE {
                order /= r;
            }
        }
        Some(order)
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        f: impl Fn(u32, u32) -> u32,
    ) -> FieldElement {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += f(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    /// Schoolbook product reduced by the modulus; the tables are built from it.
    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let e = self.e as usize;
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            // subtract c·x^(deg-e)·modulus
            for (k, &m) in self.modulus.iter().enumerate() {
                let idx = deg - e + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let reduced: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        FieldElement(reduced.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    fn pow_slow(&self, a: FieldElement, mut m: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            m >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> FieldElement {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (1..self.q)
            .map(FieldElement)
            .find(|&a| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(a, order / r) != FieldElement::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// Canonical modulus for GF(p^e): first irreducible monic polynomial in the
/// lexicographic order of `(c_0, ..., c_{e-1})`.
fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let count = (p as u64).pow(e as u32);
    for t in 0..count {
        // c_0 is the most significant digit of t
        let mut poly = vec![0u32; e + 1];
        let mut v = t;
        for i in (0..e).rev() {
            poly[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        poly[e] = 1;
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut v = t;
            for c in divisor.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            divisor[d] = 1;
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(poly: &[u32], divisor: &[u32], p: u32) -> bool {
    let p = p as u64;
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let d = divisor.len() - 1;
    for deg in (d..rem.len()).rev() {
        let c = rem[deg] % p;
        if c == 0 {
            continue;
        }
        for (k, &m) in divisor.iter().enumerate() {
            let idx = deg - d + k;
            rem[idx] = (rem[idx] + (p - c) * m as u64) % p;
        }
    }
    rem[..d].iter().all(|&c| c % p == 0)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, e))` when `q = p^e` with p prime and e ≥ 1.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
