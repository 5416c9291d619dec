//! Independent cross-checks for the main engines.
//!
//! Everything in this module is deliberately separate from the production
//! code paths it audits: irreducibility is decided by exhaustive root or
//! divisor enumeration rather than the factorization pipeline, and ideal
//! membership by dense linear algebra on a Macaulay matrix rather than by
//! Gröbner reduction. Each oracle refuses (returns None) outside its small
//! exhaustive range instead of guessing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::FieldElement;
use crate::poly::{Degree, Monomial, Polynomial, RingRef};

/// Exhaustive univariate irreducibility: root search for degree ≤ 3, monic
/// divisor enumeration for degree ≤ 6 over F_p with p ≤ 7, rational root
/// search for degree ≤ 3 over Q. None = out of range.
pub fn univariate_irreducible_oracle(f: &Polynomial) -> Option<bool> {
    let d = f.degree().finite()?;
    if d == 0 {
        return None;
    }
    if d == 1 {
        return Some(true);
    }
    let support = f.support_vars();
    if support.len() != 1 {
        return None;
    }
    let var = support[0];
    if f.field().is_rationals() {
        if d > 3 {
            return None;
        }
        Some(!has_rational_root(f, var))
    } else {
        let p = f.field().characteristic();
        if d <= 3 {
            // Degree 2 and 3 are reducible iff they have a root.
            Some(!has_fp_root(f, var, p))
        } else if d <= 6 && p <= 7 {
            Some(!has_monic_divisor(f, var, d, p))
        } else {
            None
        }
    }
}

fn eval_fp(coeffs: &[u64], x: u64, p: u64) -> u64 {
    // Horner; residues stay below p < 2^31 so u64 products cannot overflow.
    coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p)
}

fn dense_coeffs_fp(f: &Polynomial, var: usize, d: u32) -> Vec<u64> {
    let mut coeffs = vec![0u64; d as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(var) as usize] = c.residue();
    }
    coeffs
}

fn has_fp_root(f: &Polynomial, var: usize, p: u64) -> bool {
    let d = f.degree().finite().unwrap();
    let coeffs = dense_coeffs_fp(f, var, d);
    (0..p).any(|x| eval_fp(&coeffs, x, p) == 0)
}

/// Plain schoolbook remainder of dense polynomials mod p, kept separate
/// from the production division code on purpose.
fn dense_rem_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lc_inv = {
        // Fermat inverse; p is prime and b is monic in practice, but stay
        // general.
        let mut inv = 1u64;
        let mut base = b[db] % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        inv
    };
    let mut rem = a.to_vec();
    while rem.len() >= b.len() {
        let dr = rem.len() - 1;
        let c = rem[dr] * lc_inv % p;
        for k in 0..=db {
            let idx = dr - db + k;
            rem[idx] = (rem[idx] + p - c * b[k] % p) % p;
        }
        while rem.last() == Some(&0) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    rem
}

fn has_monic_divisor(f: &Polynomial, var: usize, d: u32, p: u64) -> bool {
    let coeffs = dense_coeffs_fp(f, var, d);
    for dg in 1..=(d / 2) as usize {
        // All monic divisor candidates of degree dg: p^dg vectors.
        let mut tail = vec![0u64; dg];
        loop {
            let mut cand = tail.clone();
            cand.push(1);
            if dense_rem_fp(&coeffs, &cand, p).is_empty() {
                return true;
            }
            let mut pos = 0;
            loop {
                if pos == dg {
                    break;
                }
                tail[pos] += 1;
                if tail[pos] < p {
                    break;
                }
                tail[pos] = 0;
                pos += 1;
            }
            if pos == dg {
                break;
            }
        }
    }
    false
}

fn positive_divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = 1i128;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            if k != n / k {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out
}

fn has_rational_root(f: &Polynomial, var: usize) -> bool {
    let d = f.degree().finite().unwrap() as usize;
    let mut coeffs = vec![BigRational::zero(); d + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(var) as usize] = c.as_rational().clone();
    }
    // Clear denominators to integer coefficients.
    let mut lcm = BigInt::one();
    for c in &coeffs {
        let den = c.denom();
        lcm = &lcm / num_integer::Integer::gcd(&lcm, den) * den;
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        return true; // root at 0
    }
    // Desk-scale oracle: coefficients beyond i128 do not occur in the
    // suites that call this.
    let a0 = i128::try_from(&ints[0]).expect("constant term fits i128");
    let ad = i128::try_from(&ints[d]).expect("leading term fits i128");
    let eval = |x: &BigRational| -> BigRational {
        ints.iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    };
    for r in positive_divisors(a0) {
        for s in positive_divisors(ad) {
            for sign in [1i128, -1] {
                let cand = BigRational::new(BigInt::from(sign * r), BigInt::from(s));
                if eval(&cand).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Macaulay-matrix ideal membership: is `f` an exact field-linear
/// combination of the shifted generators {m·g : deg(m·g) ≤ degree_bound}?
/// A true answer certifies membership; a false answer only says no
/// representation exists within the bound.
pub fn macaulay_membership(f: &Polynomial, gens: &[Polynomial], degree_bound: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let ring: &RingRef = f.ring();
    let n = ring.n_vars();

    let mut columns: std::collections::BTreeMap<Monomial, usize> = std::collections::BTreeMap::new();
    for m in monomials_up_to(n, degree_bound) {
        let idx = columns.len();
        columns.insert(m, idx);
    }
    let width = columns.len();
    let to_vec = |p: &Polynomial| -> Option<Vec<FieldElement>> {
        let mut v = vec![ring.field().zero(); width];
        for (m, c) in p.terms() {
            let idx = columns.get(m)?;
            v[*idx] = c.clone();
        }
        Some(v)
    };

    // Incremental row reduction: keep one normalized row per pivot column.
    let mut pivots: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    let reduce = |row: &mut Vec<FieldElement>, pivots: &[(usize, Vec<FieldElement>)]| {
        for (pc, prow) in pivots {
            if !row[*pc].is_zero() {
                let factor = row[*pc].clone();
                for (x, y) in row.iter_mut().zip(prow) {
                    *x = x.sub(&factor.mul(y));
                }
            }
        }
    };

    for g in gens {
        let Degree::Finite(dg) = g.degree() else { continue };
        if dg > degree_bound {
            continue;
        }
        for m in monomials_up_to(n, degree_bound - dg) {
            let shifted = g.mul_term(&m, &ring.field().one());
            let Some(mut row) = to_vec(&shifted) else { continue };
            reduce(&mut row, &pivots);
            if let Some(pc) = row.iter().position(|x| !x.is_zero()) {
                let inv = row[pc].inv();
                for x in row.iter_mut() {
                    *x = x.mul(&inv);
                }
                pivots.push((pc, row));
                pivots.sort_by_key(|(c, _)| *c);
            }
        }
    }

    let Some(mut target) = to_vec(f) else {
        return false; // f itself exceeds the bound
    };
    reduce(&mut target, &pivots);
    target.iter().all(|x| x.is_zero())
}

fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == exps.len() {
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            rec(pos + 1, left - e, exps, out);
        }
        exps[pos] = 0;
    }
    rec(0, bound, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::groebner::{ideal_contains, MonomialOrder};
    use crate::poly::PolyRing;

    fn p_ring(p: u64, vars: &[&str]) -> RingRef {
        PolyRing::new(FieldSpec::prime(p).unwrap(), vars)
    }

    fn q_ring(vars: &[&str]) -> RingRef {
        PolyRing::new(FieldSpec::rationals(), vars)
    }

    fn poly(ring: &RingRef, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            terms.iter().map(|(c, exps)| {
                (Monomial::new(exps.to_vec()), ring.field().from_integer(*c))
            }),
        )
    }

    #[test]
    fn fp_root_oracle() {
        let r = p_ring(5, &["X"]);
        // X^2 + 1 over F_5 has roots 2, 3.
        assert_eq!(univariate_irreducible_oracle(&poly(&r, &[(1, &[2]), (1, &[0])])), Some(false));
        // X^2 + 2 over F_5 has no root: squares are 0, 1, 4.
        assert_eq!(univariate_irreducible_oracle(&poly(&r, &[(1, &[2]), (2, &[0])])), Some(true));
    }

    #[test]
    fn divisor_enumeration_oracle() {
        let r = p_ring(2, &["X"]);
        // X^4 + X + 1 is the standard degree-4 primitive polynomial.
        let f = poly(&r, &[(1, &[4]), (1, &[1]), (1, &[0])]);
        assert_eq!(univariate_irreducible_oracle(&f), Some(true));
        // (X^2 + X + 1)^2 = X^4 + X^2 + 1 over F_2.
        let g = poly(&r, &[(1, &[4]), (1, &[2]), (1, &[0])]);
        assert_eq!(univariate_irreducible_oracle(&g), Some(false));
        // Degree 4 with a root but rootless quadratic check would miss it:
        // divisor search still catches X^4 + X^2 = X^2 (X^2 + 1).
        let h = poly(&r, &[(1, &[4]), (1, &[2])]);
        assert_eq!(univariate_irreducible_oracle(&h), Some(false));
    }

    #[test]
    fn rational_root_oracle() {
        let r = q_ring(&["X"]);
        assert_eq!(univariate_irreducible_oracle(&poly(&r, &[(1, &[2]), (-2, &[0])])), Some(true));
        assert_eq!(univariate_irreducible_oracle(&poly(&r, &[(1, &[2]), (-1, &[0])])), Some(false));
        // 6X^2 + X - 1 = (2X + 1)(3X - 1): root 1/3 needs the s | lc loop.
        assert_eq!(
            univariate_irreducible_oracle(&poly(&r, &[(6, &[2]), (1, &[1]), (-1, &[0])])),
            Some(false)
        );
        assert_eq!(univariate_irreducible_oracle(&poly(&r, &[(1, &[3]), (-2, &[0])])), Some(true));
    }

    #[test]
    fn oracle_refusals() {
        let r = p_ring(11, &["X"]);
        let f = poly(&r, &[(1, &[5]), (1, &[1]), (1, &[0])]);
        assert_eq!(univariate_irreducible_oracle(&f), None);
        let rq = q_ring(&["X"]);
        let g = poly(&rq, &[(1, &[4]), (1, &[0])]);
        assert_eq!(univariate_irreducible_oracle(&g), None);
        assert_eq!(univariate_irreducible_oracle(&Polynomial::zero(&rq)), None);
    }

    #[test]
    fn macaulay_finds_explicit_combinations() {
        let r = q_ring(&["x", "y"]);
        let g1 = poly(&r, &[(1, &[2, 0]), (-1, &[0, 1])]); // x^2 - y
        let g2 = poly(&r, &[(1, &[1, 1]), (1, &[0, 0])]); // xy + 1
        // f = y*g1 + x*g2 has an explicit degree-3 representation.
        let f = poly(&r, &[(1, &[2, 1]), (-1, &[0, 2])])
            .add(&poly(&r, &[(1, &[2, 1]), (1, &[1, 0])]));
        assert!(macaulay_membership(&f, &[g1.clone(), g2.clone()], 3));
        // 1 is not in the ideal at any bound the test uses.
        assert!(!macaulay_membership(&Polynomial::one(&r), &[g1, g2], 6));
    }

    #[test]
    fn macaulay_agrees_with_groebner_on_a_small_ideal() {
        let r = p_ring(7, &["x", "y"]);
        let gens = vec![
            poly(&r, &[(1, &[2, 0]), (-1, &[0, 1])]), // x^2 - y
            poly(&r, &[(1, &[0, 2]), (-1, &[1, 0])]), // y^2 - x
        ];
        let ord = MonomialOrder::grevlex(2);
        let member = poly(&r, &[(1, &[4, 0]), (-1, &[1, 0])]); // x^4 - x = (x^2+y)g1 + g2
        let non_member = poly(&r, &[(1, &[1, 0]), (1, &[0, 0])]); // x + 1
        assert!(ideal_contains(&gens, &member, &ord));
        assert!(macaulay_membership(&member, &gens, 4));
        assert!(!ideal_contains(&gens, &non_member, &ord));
        assert!(!macaulay_membership(&non_member, &gens, 8));
    }
}
