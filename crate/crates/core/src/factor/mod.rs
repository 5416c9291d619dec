//! Factorization and primality for desk-scale polynomials.
//!
//! Univariate polynomials over F_p factor completely (squarefree, then
//! distinct-degree, then equal-degree splitting); univariate polynomials
//! over Q factor up to degree 12 through a single large prime and subset
//! recombination. Multivariate inputs go through an exact bounded search
//! (`multivariate`). On top of that sit the element-level prime and primary
//! tests and the map-level preservation checks.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::FieldElement;
use crate::groebner::{buchberger, normal_form, MonomialOrder};
use crate::poly::{Degree, Monomial, Polynomial, PolyRing, RingRef};
use crate::analysis::PolyMap;

mod dense;
mod multivariate;
mod rational;

pub use multivariate::{MULTIVARIATE_DEG_BOUND, MULTIVARIATE_P_BOUND, MULTIVARIATE_Q_DEG_BOUND};

/// Hard degree cap for univariate factorization over Q.
pub const UNIVARIATE_Q_DEGREE_BOUND: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot factor a constant")]
    ConstantInput,
    #[error("polynomial involves more than one variable")]
    NotUnivariate,
    #[error("wrong coefficient field: expected {expected}")]
    WrongField { expected: &'static str },
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error("coefficients too large for a single-prime modular factorization")]
    CoefficientHeight,
    #[error("instance out of bounds: {reason}")]
    SizeRefusal { reason: String },
    #[error("search exhausted without a certificate: {reason}")]
    Inconclusive { reason: String },
    #[error("sample prime {index} is not irreducible")]
    SampleNotIrreducible { index: usize },
}

/// A complete factorization: unit times the product of monic irreducible
/// factors raised to their multiplicities reproduces the input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    ring: RingRef,
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Multiply the factorization back out.
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, self.unit.clone());
        for (q, m) in &self.factors {
            acc = acc.mul(&q.pow(*m));
        }
        acc
    }

    pub fn distinct_factor_count(&self) -> usize {
        self.factors.len()
    }

    /// True when the input is a unit times a single prime power.
    pub fn is_primary(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// The one variable a univariate polynomial actually uses, or the canonical
/// first variable for constants.
fn single_variable(f: &Polynomial) -> Result<usize, FactorError> {
    let support = f.support_vars();
    match support.len() {
        0 => Ok(0),
        1 => Ok(support[0]),
        _ => Err(FactorError::NotUnivariate),
    }
}

fn dense_fp(f: &Polynomial, var: usize, d: u32) -> Vec<u64> {
    debug_assert_eq!(f.degree(), Degree::Finite(d));
    let mut coeffs = vec![0u64; d as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(var) as usize] = c.residue();
    }
    coeffs
}

fn from_dense_fp(ring: &RingRef, var: usize, coeffs: &[u64]) -> Polynomial {
    let n = ring.n_vars();
    Polynomial::from_terms(
        ring,
        coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| {
            let mut exps = vec![0u32; n];
            exps[var] = i as u32;
            (Monomial::new(exps), ring.field().from_integer(c as i64))
        }),
    )
}

fn dense_q(f: &Polynomial, var: usize, d: u32) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); d as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(var) as usize] = c.as_rational().clone();
    }
    coeffs
}

fn from_dense_q(ring: &RingRef, var: usize, coeffs: &[BigRational]) -> Polynomial {
    let n = ring.n_vars();
    Polynomial::from_terms(
        ring,
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mut exps = vec![0u32; n];
                exps[var] = i as u32;
                (Monomial::new(exps), FieldElement::Rational(c.clone()))
            }),
    )
}

/// Complete factorization of a univariate polynomial over a prime field.
/// Deterministic for a fixed seed.
pub fn factor_univariate(f: &Polynomial, seed: u64) -> Result<Factorization, FactorError> {
    if f.field().is_rationals() {
        return Err(FactorError::WrongField { expected: "a prime field F_p" });
    }
    let Degree::Finite(d) = f.degree() else {
        return Err(FactorError::ZeroPolynomial);
    };
    if d == 0 {
        return Err(FactorError::ConstantInput);
    }
    let var = single_variable(f)?;
    let p = f.field().characteristic();
    let coeffs = dense_fp(f, var, d);
    let unit = f.ring().field().from_integer(coeffs[d as usize] as i64);
    let monic = dense::monic(&coeffs, p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = dense::factor_monic(&monic, p, &mut rng)
        .into_iter()
        .map(|(q, m)| (from_dense_fp(f.ring(), var, &q), m))
        .collect();
    let fz = Factorization { ring: f.ring().clone(), unit, factors };
    debug_assert_eq!(fz.expand(), *f);
    Ok(fz)
}

/// Complete factorization of a univariate polynomial over Q, up to degree
/// `UNIVARIATE_Q_DEGREE_BOUND`. Deterministic for a fixed seed.
pub fn factor_univariate_q(f: &Polynomial, seed: u64) -> Result<Factorization, FactorError> {
    if !f.field().is_rationals() {
        return Err(FactorError::WrongField { expected: "the rationals" });
    }
    let Degree::Finite(d) = f.degree() else {
        return Err(FactorError::ZeroPolynomial);
    };
    if d == 0 {
        return Err(FactorError::ConstantInput);
    }
    if d > UNIVARIATE_Q_DEGREE_BOUND {
        return Err(FactorError::DegreeBound { degree: d, bound: UNIVARIATE_Q_DEGREE_BOUND });
    }
    let var = single_variable(f)?;
    let coeffs = dense_q(f, var, d);
    let lc = coeffs[d as usize].clone();
    let unit = FieldElement::Rational(lc.clone());
    let monic: Vec<BigRational> = coeffs.iter().map(|c| c / &lc).collect();
    let factors = rational::factor_monic_rational(&monic, seed)?
        .into_iter()
        .map(|(q, m)| (from_dense_q(f.ring(), var, &q), m))
        .collect();
    let fz = Factorization { ring: f.ring().clone(), unit, factors };
    debug_assert_eq!(fz.expand(), *f);
    Ok(fz)
}

/// Complete factorization of any in-bounds polynomial, routing univariate
/// inputs to the dedicated engines.
pub fn factor(f: &Polynomial, seed: u64) -> Result<Factorization, FactorError> {
    match f.support_vars().len() {
        0 | 1 => {
            if f.field().is_rationals() {
                factor_univariate_q(f, seed)
            } else {
                factor_univariate(f, seed)
            }
        }
        _ => multivariate::factor_in_bounds(f, seed),
    }
}

/// Exact irreducibility test with explicit bounds: at most 3 variables,
/// total degree at most 4 over F_p with p ≤ 101, total degree at most 3
/// over Q (univariate inputs follow the univariate engine bounds instead).
/// Out-of-bounds inputs are refused, never guessed.
pub fn is_irreducible_multivariate(f: &Polynomial, seed: u64) -> Result<bool, FactorError> {
    Ok(factor(f, seed)?.is_irreducible())
}

/// True iff f is a unit times a single prime power.
pub fn is_primary_element(f: &Polynomial, seed: u64) -> Result<bool, FactorError> {
    Ok(factor(f, seed)?.is_primary())
}

/// Per-sample outcome of `prime_preservation_check`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeVerdict {
    /// The image is irreducible, hence prime in K[X].
    Prime,
    /// The image is a proper power of a single prime.
    PrimaryNotPrime,
    /// The image has at least two distinct prime factors, or is constant.
    Neither,
    /// The image fell outside the factorization bounds.
    SizeRefusal { reason: String },
}

/// For each sample prime a, factor φ(a) and report whether the image stayed
/// prime. Sample primes must be irreducible themselves; a failing sample is
/// an error, not a verdict.
pub fn prime_preservation_check(
    map: &PolyMap,
    samples: &[Polynomial],
    seed: u64,
) -> Result<Vec<PrimeVerdict>, FactorError> {
    for (index, a) in samples.iter().enumerate() {
        match is_irreducible_multivariate(a, seed) {
            Ok(true) => {}
            Ok(false) => return Err(FactorError::SampleNotIrreducible { index }),
            Err(e) => return Err(e),
        }
    }
    let mut out = Vec::with_capacity(samples.len());
    for a in samples {
        let image = a.substitute(map.images());
        if image.is_constant() {
            // A constant image (necessarily nonzero on a prime input with
            // polynomial images; zero only if a had been zero) is a unit or
            // zero, neither prime nor primary.
            out.push(PrimeVerdict::Neither);
            continue;
        }
        match factor(&image, seed) {
            Ok(fz) => {
                if fz.is_irreducible() {
                    out.push(PrimeVerdict::Prime);
                } else if fz.is_primary() {
                    out.push(PrimeVerdict::PrimaryNotPrime);
                } else {
                    out.push(PrimeVerdict::Neither);
                }
            }
            Err(FactorError::SizeRefusal { reason }) => {
                out.push(PrimeVerdict::SizeRefusal { reason });
            }
            Err(FactorError::Inconclusive { reason }) => {
                out.push(PrimeVerdict::SizeRefusal { reason });
            }
            // Engine caps hit by the image, not by the caller's sample.
            Err(e @ (FactorError::DegreeBound { .. } | FactorError::CoefficientHeight)) => {
                out.push(PrimeVerdict::SizeRefusal { reason: e.to_string() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Default prime samples for preservation checks: every variable, every
/// difference of two variables, and k random irreducibles of degree ≤ 2 in
/// at most two variables. Deterministic for a fixed seed.
pub fn sample_primes(ring: &RingRef, k: usize, seed: u64) -> Vec<Polynomial> {
    let n = ring.n_vars();
    let field = ring.field();
    let mut out: Vec<Polynomial> = Vec::new();
    for j in 0..n {
        out.push(Polynomial::variable(ring, j));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(Polynomial::variable(ring, i).sub(&Polynomial::variable(ring, j)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    let mut added = 0usize;
    while added < k && attempts < 200 * (k + 1) {
        attempts += 1;
        // Keep samples inside the irreducibility bounds: at most two
        // variables, degree at most 2.
        let u = rng.random_range(0..n);
        let v = if n > 1 { rng.random_range(0..n) } else { u };
        let mut cand = Polynomial::zero(ring);
        for (eu, ev) in [(2u32, 0u32), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)] {
            let c = field.random_element(&mut rng, 5);
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; n];
            exps[u] += eu;
            exps[v] += ev;
            cand.add_term(Monomial::new(exps), c);
        }
        if cand.degree() < Degree::Finite(1) {
            continue;
        }
        let cand = cand.monic();
        if out.contains(&cand) {
            continue;
        }
        if matches!(is_irreducible_multivariate(&cand, seed), Ok(true)) {
            out.push(cand);
            added += 1;
        }
    }
    out
}

/// Property test of torsion-freeness of B/A for A the image subalgebra:
/// whenever q = v(F) divides p = u(F) in K[X], the quotient must already
/// lie in A. Membership is decided by normal forms against the graph ideal
/// under an X-eliminating order. Vacuously true when no trial produces a
/// divisible pair.
pub fn bass_torsion_check(map: &PolyMap, trials: usize, seed: u64) -> bool {
    let ring = map.ring();
    let n = map.n();
    let field = ring.field();

    // Big ring K[X, Y] with the graph ideal (Y_i - F_i); X variables are
    // eliminated first, so a normal form supported purely on Y certifies
    // membership in K[F].
    let mut names: Vec<String> = ring.var_names().to_vec();
    for i in 0..n {
        names.push(format!("y#{i}"));
    }
    let big = PolyRing::with_names(field, names);
    let lift = |f: &Polynomial| -> Polynomial {
        Polynomial::from_terms(
            &big,
            f.terms().map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps.extend(std::iter::repeat(0).take(n));
                (Monomial::new(exps), c.clone())
            }),
        )
    };
    let gens: Vec<Polynomial> = (0..n)
        .map(|i| Polynomial::variable(&big, n + i).sub(&lift(&map.images()[i])))
        .collect();
    let order = MonomialOrder::lex(2 * n);
    let gb = buchberger(&gens, &order);
    let in_subalgebra = |f: &Polynomial| -> bool {
        let nf = normal_form(&lift(f), &gb, &order);
        nf.support_vars().iter().all(|&v| v >= n)
    };

    // Sample u, v in the source ring and push them through the map.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let u = Polynomial::random_sparse(ring, &mut rng, 2, 4, 5);
        let v = Polynomial::random_sparse(ring, &mut rng, 2, 3, 5);
        let q = v.substitute(map.images());
        if q.is_constant() {
            continue;
        }
        let p_poly = u.substitute(map.images());
        if let Some(b) = p_poly.try_div_exact(&q) {
            if !in_subalgebra(&b) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q_ring(vars: &[&str]) -> RingRef {
        PolyRing::new(FieldSpec::rationals(), vars)
    }

    fn p_ring(p: u64, vars: &[&str]) -> RingRef {
        PolyRing::new(FieldSpec::prime(p).unwrap(), vars)
    }

    fn parse_terms(ring: &RingRef, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            terms.iter().map(|(c, exps)| {
                (Monomial::new(exps.to_vec()), ring.field().from_integer(*c))
            }),
        )
    }

    #[test]
    fn freshmans_dream_over_f2() {
        let r = p_ring(2, &["X"]);
        let f = parse_terms(&r, &[(1, &[2]), (1, &[0])]);
        let fz = factor_univariate(&f, 7).unwrap();
        assert!(fz.unit.is_one());
        assert_eq!(fz.factors.len(), 1);
        let (q, m) = &fz.factors[0];
        assert_eq!(*m, 2);
        assert_eq!(*q, parse_terms(&r, &[(1, &[1]), (1, &[0])]));
        assert_eq!(fz.expand(), f);
    }

    #[test]
    fn x_minus_x_cubed_over_f3_splits_into_three_lines() {
        let r = p_ring(3, &["X"]);
        let f = parse_terms(&r, &[(1, &[1]), (-1, &[3])]);
        let fz = factor_univariate(&f, 7).unwrap();
        assert_eq!(fz.unit, r.field().from_integer(-1));
        assert_eq!(fz.factors.len(), 3);
        for (_, m) in &fz.factors {
            assert_eq!(*m, 1);
        }
        assert_eq!(fz.expand(), f);
        assert!(!fz.is_primary());
    }

    #[test]
    fn x_squared_plus_one_irreducible_over_f3() {
        let r = p_ring(3, &["X"]);
        let f = parse_terms(&r, &[(1, &[2]), (1, &[0])]);
        let fz = factor_univariate(&f, 7).unwrap();
        assert!(fz.is_irreducible());
    }

    #[test]
    fn rational_textbook_factorizations() {
        let r = q_ring(&["X"]);
        let f = parse_terms(&r, &[(1, &[2]), (-1, &[0])]);
        let fz = factor_univariate_q(&f, 7).unwrap();
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.expand(), f);

        let g = parse_terms(&r, &[(1, &[2]), (1, &[0])]);
        assert!(factor_univariate_q(&g, 7).unwrap().is_irreducible());

        let h = parse_terms(&r, &[(1, &[3]), (-1, &[1])]);
        let hz = factor_univariate_q(&h, 7).unwrap();
        assert_eq!(hz.factors.len(), 3);
        assert_eq!(hz.expand(), h);
    }

    #[test]
    fn univariate_bounds_are_enforced() {
        let r = q_ring(&["X"]);
        let f = parse_terms(&r, &[(1, &[13]), (1, &[1]), (1, &[0])]);
        assert!(matches!(
            factor_univariate_q(&f, 0),
            Err(FactorError::DegreeBound { degree: 13, bound: 12 })
        ));
        let c = parse_terms(&r, &[(5, &[0])]);
        assert!(matches!(factor_univariate_q(&c, 0), Err(FactorError::ConstantInput)));
        assert!(matches!(
            factor_univariate_q(&Polynomial::zero(&r), 0),
            Err(FactorError::ZeroPolynomial)
        ));
        let rp = p_ring(5, &["X"]);
        let g = parse_terms(&rp, &[(1, &[2]), (1, &[0])]);
        assert!(matches!(
            factor_univariate_q(&g, 0),
            Err(FactorError::WrongField { .. })
        ));
        assert!(matches!(
            factor_univariate(&parse_terms(&r, &[(1, &[2])]), 0),
            Err(FactorError::WrongField { .. })
        ));
    }

    #[test]
    fn sum_of_squares_irreducible_over_f3() {
        let r = p_ring(3, &["X1", "X2"]);
        let f = parse_terms(&r, &[(1, &[2, 0]), (1, &[0, 2])]);
        assert_eq!(is_irreducible_multivariate(&f, 11), Ok(true));
    }

    #[test]
    fn product_of_variables_is_reducible() {
        let r = p_ring(3, &["X1", "X2"]);
        let f = parse_terms(&r, &[(1, &[1, 1])]);
        assert_eq!(is_irreducible_multivariate(&f, 11), Ok(false));
        let fz = factor(&f, 11).unwrap();
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.expand(), f);
    }

    #[test]
    fn variable_plus_square_is_irreducible() {
        let r = q_ring(&["X1", "X2"]);
        let f = parse_terms(&r, &[(1, &[1, 0]), (1, &[0, 2])]);
        assert_eq!(is_irreducible_multivariate(&f, 11), Ok(true));
    }

    #[test]
    fn primary_elements() {
        let r = p_ring(5, &["X1", "X2"]);
        let sq = parse_terms(&r, &[(1, &[2, 0])]);
        assert_eq!(is_primary_element(&sq, 3), Ok(true));
        let prod = parse_terms(&r, &[(1, &[1, 1])]);
        assert_eq!(is_primary_element(&prod, 3), Ok(false));
        let r1 = p_ring(3, &["X"]);
        let torsion = parse_terms(&r1, &[(1, &[1]), (-1, &[3])]);
        assert_eq!(is_primary_element(&torsion, 3), Ok(false));
    }

    #[test]
    fn bivariate_quadratic_splits() {
        // (X1 + X2)(X1 - X2) = X1^2 - X2^2 over F_7.
        let r = p_ring(7, &["X1", "X2"]);
        let f = parse_terms(&r, &[(1, &[2, 0]), (-1, &[0, 2])]);
        let fz = factor(&f, 5).unwrap();
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.expand(), f);
    }

    #[test]
    fn quartic_two_plus_two_split_over_f101() {
        // (X1^2 + X2 + 1)(X1^2 + 3 X2^2 + 7) expanded.
        let r = p_ring(101, &["X1", "X2"]);
        let g = parse_terms(&r, &[(1, &[2, 0]), (1, &[0, 1]), (1, &[0, 0])]);
        let h = parse_terms(&r, &[(1, &[2, 0]), (3, &[0, 2]), (7, &[0, 0])]);
        let f = g.mul(&h);
        let fz = factor(&f, 5).unwrap();
        assert_eq!(fz.expand(), f);
        assert_eq!(fz.factors.len(), 2);
        assert!(fz.factors.iter().any(|(q, _)| *q == g));
    }

    #[test]
    fn quartic_irreducible_over_f101() {
        // X1^4 + X2 is linear in X2 with coprime coefficients, so it is
        // irreducible; the cascade has to walk the full kernel family of
        // the top-form system (T = S = X1^2) before concluding.
        let r = p_ring(101, &["X1", "X2"]);
        let f = parse_terms(&r, &[(1, &[4, 0]), (1, &[0, 1])]);
        assert_eq!(is_irreducible_multivariate(&f, 5), Ok(true));
    }

    #[test]
    fn trivariate_quartic_split_small_p() {
        // (X1^2 + X2 X3)(X2^2 + X1 + 1) over F_3.
        let r = p_ring(3, &["X1", "X2", "X3"]);
        let g = parse_terms(&r, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])]);
        let h = parse_terms(&r, &[(1, &[0, 2, 0]), (1, &[1, 0, 0]), (1, &[0, 0, 0])]);
        let f = g.mul(&h);
        let fz = factor(&f, 5).unwrap();
        assert_eq!(fz.expand(), f);
        assert_eq!(fz.factors.len(), 2);
    }

    #[test]
    fn trivariate_quartic_split_large_p() {
        // Plane-section reconstruction path over F_101.
        let r = p_ring(101, &["X1", "X2", "X3"]);
        let g = parse_terms(&r, &[(1, &[2, 0, 0]), (1, &[0, 1, 1]), (2, &[0, 0, 0])]);
        let h = parse_terms(&r, &[(1, &[0, 0, 2]), (5, &[1, 0, 0]), (3, &[0, 0, 0])]);
        let f = g.mul(&h);
        let fz = factor(&f, 5).unwrap();
        assert_eq!(fz.expand(), f);
        assert_eq!(fz.factors.len(), 2);
    }

    #[test]
    fn size_refusals_are_loud() {
        let r = p_ring(103, &["X1", "X2"]);
        let f = parse_terms(&r, &[(1, &[1, 1]), (1, &[0, 0])]);
        assert!(matches!(
            is_irreducible_multivariate(&f, 0),
            Err(FactorError::SizeRefusal { .. })
        ));
        let rq = q_ring(&["X1", "X2"]);
        let f4 = parse_terms(&rq, &[(1, &[4, 0]), (1, &[0, 1])]);
        assert!(matches!(
            is_irreducible_multivariate(&f4, 0),
            Err(FactorError::SizeRefusal { .. })
        ));
        let r4 = p_ring(5, &["X1", "X2", "X3", "X4"]);
        let many = parse_terms(&r4, &[(1, &[1, 1, 1, 1])]);
        assert!(matches!(
            is_irreducible_multivariate(&many, 0),
            Err(FactorError::SizeRefusal { .. })
        ));
    }

    #[test]
    fn prime_preservation_triangular_map() {
        // Map (X1 + X2^2, X2); images of X1, X2, X1 + X2 all stay prime.
        let r = q_ring(&["X1", "X2"]);
        let f1 = parse_terms(&r, &[(1, &[1, 0]), (1, &[0, 2])]);
        let f2 = parse_terms(&r, &[(1, &[0, 1])]);
        let map = PolyMap::new(vec![f1, f2]).unwrap();
        let primes = vec![
            parse_terms(&r, &[(1, &[1, 0])]),
            parse_terms(&r, &[(1, &[0, 1])]),
            parse_terms(&r, &[(1, &[1, 0]), (1, &[0, 1])]),
        ];
        let verdicts = prime_preservation_check(&map, &primes, 9).unwrap();
        assert!(verdicts.iter().all(|v| *v == PrimeVerdict::Prime));
    }

    #[test]
    fn prime_preservation_artin_schreier_counterexample() {
        // X -> X - X^3 over F_3 destroys the prime X.
        let r = p_ring(3, &["X"]);
        let f = parse_terms(&r, &[(1, &[1]), (-1, &[3])]);
        let map = PolyMap::new(vec![f]).unwrap();
        let primes = vec![parse_terms(&r, &[(1, &[1])])];
        let verdicts = prime_preservation_check(&map, &primes, 9).unwrap();
        assert_eq!(verdicts, vec![PrimeVerdict::Neither]);
    }

    #[test]
    fn prime_preservation_rejects_reducible_sample() {
        let r = p_ring(5, &["X1", "X2"]);
        let map = PolyMap::identity(&r);
        let bad = parse_terms(&r, &[(1, &[1, 1])]);
        assert!(matches!(
            prime_preservation_check(&map, &[bad], 0),
            Err(FactorError::SampleNotIrreducible { index: 0 })
        ));
    }

    #[test]
    fn sample_primes_are_irreducible_and_deterministic() {
        let r = p_ring(5, &["X1", "X2"]);
        let a = sample_primes(&r, 4, 42);
        let b = sample_primes(&r, 4, 42);
        assert_eq!(a, b);
        assert!(a.len() >= 3 + 4);
        for s in &a {
            assert_eq!(is_irreducible_multivariate(s, 1), Ok(true));
        }
    }

    #[test]
    fn bass_check_on_identity_and_square() {
        let r = q_ring(&["X"]);
        let id = PolyMap::identity(&r);
        assert!(bass_torsion_check(&id, 8, 3));
        let sq = PolyMap::new(vec![parse_terms(&r, &[(1, &[2])])]).unwrap();
        assert!(bass_torsion_check(&sq, 8, 3));
    }

    #[test]
    fn bass_check_on_invertible_triangular_map() {
        let r = q_ring(&["X1", "X2"]);
        let f1 = parse_terms(&r, &[(1, &[1, 0]), (1, &[0, 2])]);
        let f2 = parse_terms(&r, &[(1, &[0, 1])]);
        let map = PolyMap::new(vec![f1, f2]).unwrap();
        assert!(bass_torsion_check(&map, 6, 3));
    }
}
