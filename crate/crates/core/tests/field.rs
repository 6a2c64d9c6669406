use pg_cycles::gf::{prime_power, FieldElement, GaloisField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn prime_powers_up_to(limit: u64) -> Vec<(u64, u32)> {
    (2..=limit).filter_map(prime_power).collect()
}

/// Schoolbook product of coefficient vectors reduced by the field's modulus,
/// written without the field's own multiplication.
fn naive_mul(f: &GaloisField, a: FieldElement, b: FieldElement) -> Vec<u32> {
    let p = f.p();
    let e = f.e() as usize;
    let (x, y) = (f.coeffs(a), f.coeffs(b));
    let mut prod = vec![0u32; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        }
    }
    let m = f.modulus();
    for d in (e..2 * e).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        // subtract c·x^(d-e)·m, m monic of degree e
        for (i, &mi) in m.iter().enumerate() {
            prod[d - e + i] = (prod[d - e + i] + p - (c * mi) % p) % p;
        }
    }
    prod.truncate(e);
    prod
}

#[test]
fn products_match_schoolbook_arithmetic() {
    for (p, e) in prime_powers_up_to(49) {
        let f = GaloisField::new(p, e).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    f.coeffs(f.mul(a, b)),
                    naive_mul(&f, a, b),
                    "GF({}) {a}·{b}",
                    f.q()
                );
            }
        }
    }
}

#[test]
fn pairwise_axioms() {
    for (p, e) in prime_powers_up_to(49) {
        let f = GaloisField::new(p, e).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert!(f.add(a, f.neg(a)).is_zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            assert_eq!(f.pow(a, f.q() as u64), a, "Frobenius in GF({})", f.q());
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(f.sub(a, b), b), a);
            }
        }
        assert!(f.inv(f.zero()).is_err());
    }
}

#[test]
fn triple_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, e) in prime_powers_up_to(49) {
        let f = GaloisField::new(p, e).unwrap();
        let q = f.q();
        let triples: Vec<[u32; 3]> = if q <= 9 {
            (0..q * q * q)
                .map(|t| [t % q, (t / q) % q, t / (q * q)])
                .collect()
        } else {
            (0..2000)
                .map(|_| {
                    [
                        rng.gen_range(0..q),
                        rng.gen_range(0..q),
                        rng.gen_range(0..q),
                    ]
                })
                .collect()
        };
        for [x, y, z] in triples {
            let (a, b, c) = (
                f.element(x).unwrap(),
                f.element(y).unwrap(),
                f.element(z).unwrap(),
            );
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}

#[test]
fn enumeration_is_the_integer_encoding() {
    for (p, e) in prime_powers_up_to(49) {
        let f = GaloisField::new(p, e).unwrap();
        let values: Vec<u32> = f.elements().map(FieldElement::value).collect();
        assert_eq!(values, (0..f.q()).collect::<Vec<_>>());
        for a in f.elements() {
            let encoded = f
                .coeffs(a)
                .iter()
                .rev()
                .fold(0, |acc, &c| acc * p as u32 + c);
            assert_eq!(encoded, a.value());
        }
        assert_eq!(f.elements().nth(1), Some(f.one()));
    }
}

#[test]
fn construction_is_deterministic() {
    for (p, e) in prime_powers_up_to(49) {
        assert_eq!(
            GaloisField::new(p, e).unwrap().modulus(),
            GaloisField::new(p, e).unwrap().modulus()
        );
    }
}

#[test]
fn primitive_element_has_full_order() {
    for (p, e) in prime_powers_up_to(49) {
        let f = GaloisField::new(p, e).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(g), Some(f.q() as u64 - 1));
        // nothing earlier in canonical order is primitive
        for a in f.elements().skip(1).take_while(|&a| a != g) {
            assert!(f.multiplicative_order(a).unwrap() < f.q() as u64 - 1);
        }
    }
}
