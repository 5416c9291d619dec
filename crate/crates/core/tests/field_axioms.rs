//! Field arithmetic axioms, exercised across the rationals and a spread of
//! prime moduli, plus the Frobenius additivity identity checked
//! exhaustively for every prime up to 101.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use keller_core::field::FieldSpec;

const PRIMES_TO_101: [u64; 26] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101,
];

#[test]
fn ring_and_field_axioms_hold_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240915);
    let mut specs = vec![FieldSpec::rationals()];
    for p in [2u64, 3, 5, 31, 101, 65537] {
        specs.push(FieldSpec::prime(p).unwrap());
    }
    let mut cases = 0usize;
    for spec in &specs {
        for _ in 0..1500 {
            let a = spec.random_element(&mut rng, 40);
            let b = spec.random_element(&mut rng, 40);
            let c = spec.random_element(&mut rng, 40);
            // Additive group.
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.add(&spec.zero()), a);
            assert_eq!(a.add(&a.neg()), spec.zero());
            // Multiplicative structure.
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&spec.one()), a);
            // Distributivity.
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // Inverses and division agree.
            if !b.is_zero() {
                assert!(b.mul(&b.inv()).is_one());
                assert_eq!(a.div(&b).mul(&b), a);
            }
            // Subtraction is addition of the negation.
            assert_eq!(a.sub(&b), a.add(&b.neg()));
            cases += 1;
        }
    }
    assert!(cases >= 10_000, "need at least 10^4 axiom cases, got {cases}");
}

#[test]
fn power_operator_matches_repeated_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for spec in [FieldSpec::rationals(), FieldSpec::prime(13).unwrap()] {
        for _ in 0..200 {
            let a = spec.random_element(&mut rng, 9);
            let mut acc = spec.one();
            for e in 0u64..8 {
                assert_eq!(a.pow(e), acc);
                acc = acc.mul(&a);
            }
        }
    }
}

#[test]
fn frobenius_is_additive_for_every_prime_up_to_101() {
    for p in PRIMES_TO_101 {
        let spec = FieldSpec::prime(p).unwrap();
        for x in 0..p {
            for y in 0..p {
                let a = spec.from_integer(x as i64);
                let b = spec.from_integer(y as i64);
                let lhs = a.add(&b).pow(p);
                let rhs = a.pow(p).add(&b.pow(p));
                assert_eq!(lhs, rhs, "Frobenius failed at p={p}, x={x}, y={y}");
            }
        }
    }
}

#[test]
fn every_nonzero_residue_inverts_exhaustively() {
    for p in PRIMES_TO_101 {
        let spec = FieldSpec::prime(p).unwrap();
        for x in 1..p {
            let a = spec.from_integer(x as i64);
            assert!(a.mul(&a.inv()).is_one(), "inverse failed at p={p}, x={x}");
        }
    }
}

#[test]
fn modulus_validation() {
    assert!(FieldSpec::prime(4).is_err());
    assert!(FieldSpec::prime(1).is_err());
    assert!(FieldSpec::prime(91).is_err()); // 7 * 13
    assert!(FieldSpec::prime(1 << 31).is_err()); // at the modulus cap
    assert!(FieldSpec::prime(2147483647).is_ok()); // 2^31 - 1 is prime and in range
    assert!(FieldSpec::prime(2).is_ok());
}
