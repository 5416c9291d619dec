//! Polynomial ring axioms and calculus identities on random sparse
//! polynomials over Q and small prime fields.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use keller_core::field::FieldSpec;
use keller_core::poly::{Polynomial, PolyRing, RingRef};

fn rings() -> Vec<RingRef> {
    vec![
        PolyRing::new(FieldSpec::rationals(), &["x", "y", "z"]),
        PolyRing::new(FieldSpec::prime(5).unwrap(), &["x", "y", "z"]),
        PolyRing::new(FieldSpec::prime(101).unwrap(), &["x", "y", "z"]),
    ]
}

#[test]
fn ring_axioms_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let mut cases = 0usize;
    for ring in rings() {
        for _ in 0..400 {
            let f = Polynomial::random_sparse(&ring, &mut rng, 3, 4, 9);
            let g = Polynomial::random_sparse(&ring, &mut rng, 3, 4, 9);
            let h = Polynomial::random_sparse(&ring, &mut rng, 3, 4, 9);
            assert_eq!(f.add(&g), g.add(&f));
            assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            assert_eq!(f.mul(&g), g.mul(&f));
            assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            assert_eq!(f.add(&Polynomial::zero(&ring)), f);
            assert_eq!(f.mul(&Polynomial::one(&ring)), f);
            assert!(f.sub(&f).is_zero());
            cases += 1;
        }
    }
    assert!(cases >= 1000, "need at least 10^3 axiom cases, got {cases}");
}

#[test]
fn derivative_satisfies_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    for ring in rings() {
        for _ in 0..150 {
            let f = Polynomial::random_sparse(&ring, &mut rng, 3, 4, 9);
            let g = Polynomial::random_sparse(&ring, &mut rng, 3, 4, 9);
            for j in 0..3 {
                let lhs = f.mul(&g).partial_derivative(j);
                let rhs = f
                    .partial_derivative(j)
                    .mul(&g)
                    .add(&f.mul(&g.partial_derivative(j)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn derivative_satisfies_the_chain_rule_under_substitution() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for ring in rings() {
        for _ in 0..60 {
            let f = Polynomial::random_sparse(&ring, &mut rng, 2, 3, 7);
            let images: Vec<Polynomial> = (0..3)
                .map(|_| Polynomial::random_sparse(&ring, &mut rng, 2, 3, 7))
                .collect();
            let composed = f.substitute(&images);
            for j in 0..3 {
                let lhs = composed.partial_derivative(j);
                let mut rhs = Polynomial::zero(&ring);
                for (k, g) in images.iter().enumerate() {
                    rhs = rhs.add(
                        &f.partial_derivative(k)
                            .substitute(&images)
                            .mul(&g.partial_derivative(j)),
                    );
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn exact_division_recovers_factors_and_rejects_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    for ring in rings() {
        let mut divisions = 0usize;
        while divisions < 120 {
            let f = Polynomial::random_sparse(&ring, &mut rng, 3, 3, 9);
            let g = Polynomial::random_sparse(&ring, &mut rng, 3, 3, 9);
            if f.is_zero() || g.is_zero() || g.is_constant() {
                continue;
            }
            let prod = f.mul(&g);
            let q = prod.try_div_exact(&g).expect("product divides");
            assert_eq!(q, f);
            // A nonzero constant shift breaks divisibility by a
            // nonconstant divisor.
            let shifted = prod.add(&Polynomial::one(&ring));
            assert!(shifted.try_div_exact(&g).is_none());
            divisions += 1;
        }
    }
}

#[test]
fn substitution_composes_associatively() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for ring in rings() {
        for _ in 0..40 {
            let f = Polynomial::random_sparse(&ring, &mut rng, 2, 3, 5);
            let g: Vec<Polynomial> = (0..3)
                .map(|_| Polynomial::random_sparse(&ring, &mut rng, 2, 2, 5))
                .collect();
            let h: Vec<Polynomial> = (0..3)
                .map(|_| Polynomial::random_sparse(&ring, &mut rng, 1, 2, 5))
                .collect();
            let g_after_h: Vec<Polynomial> = g.iter().map(|gi| gi.substitute(&h)).collect();
            assert_eq!(
                f.substitute(&g).substitute(&h),
                f.substitute(&g_after_h)
            );
        }
    }
}

#[test]
fn display_round_trips_basic_shapes() {
    let ring = PolyRing::new(FieldSpec::rationals(), &["X1", "X2"]);
    let f = Polynomial::variable(&ring, 0)
        .pow(2)
        .scale(&ring.field().from_integer(2))
        .sub(&Polynomial::variable(&ring, 1))
        .add(&Polynomial::one(&ring));
    assert_eq!(f.to_string(), "2*X1^2 - X2 + 1");
}
