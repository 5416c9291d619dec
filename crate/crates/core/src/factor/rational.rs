//! Univariate factorization over Q: Yun's square-free decomposition, then
//! factor recombination against one factorization modulo a prime chosen
//! larger than twice the factor-coefficient bound, so no Hensel lifting is
//! needed at desk scale.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::is_prime_u64;
use super::{dense, FactorError};

pub(crate) fn qtrim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub(crate) fn qdeg(v: &[BigRational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

#[cfg(test)]
pub(crate) fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(out)
}

pub(crate) fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        *o = x - y;
    }
    qtrim(out)
}

pub(crate) fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), qtrim(rem));
    }
    let lc_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let dr = rem.len() - 1;
        let c = &rem[dr] * &lc_inv;
        for (k, bk) in b.iter().enumerate() {
            let v = &c * bk;
            rem[dr - db + k] -= v;
        }
        quot[dr - db] = c;
        rem = qtrim(rem);
    }
    (qtrim(quot), rem)
}

pub(crate) fn qdiv_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (q, r) = qdivrem(a, b);
    assert!(r.is_empty(), "inexact division");
    q
}

pub(crate) fn qmonic(a: &[BigRational]) -> Vec<BigRational> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.recip();
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

pub(crate) fn qgcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = qdivrem(&x, &y).1;
        x = y;
        y = r;
    }
    qmonic(&x)
}

pub(crate) fn qderivative(a: &[BigRational]) -> Vec<BigRational> {
    if a.len() <= 1 {
        return Vec::new();
    }
    qtrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
            .collect(),
    )
}

/// Yun's square-free decomposition of a monic polynomial in char 0.
fn yun_squarefree(f: &[BigRational]) -> Vec<(Vec<BigRational>, u32)> {
    let df = qderivative(f);
    let u = qgcd(f, &df);
    let mut v = qdiv_exact(f, &u);
    let mut w = qdiv_exact(&df, &u);
    let mut out = Vec::new();
    let mut i = 1u32;
    while qdeg(&v) != Some(0) {
        let z = qsub(&w, &qderivative(&v));
        let h = qgcd(&v, &z);
        if qdeg(&h) != Some(0) {
            out.push((h.clone(), i));
        }
        v = qdiv_exact(&v, &h);
        w = qdiv_exact(&z, &h);
        i += 1;
    }
    out
}

/// Primitive integer form: clear denominators, divide by the numerator gcd,
/// make the leading coefficient positive. Returns the integer coefficients.
fn primitive_integer(f: &[BigRational]) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for c in f {
        denom_lcm = denom_lcm.lcm(c.denom());
        numer_gcd = numer_gcd.gcd(c.numer());
    }
    let scale = BigRational::new(denom_lcm, numer_gcd);
    let mut out: Vec<BigInt> = f
        .iter()
        .map(|c| {
            let v = c * &scale;
            assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    if out.last().is_some_and(|lc| lc.is_negative()) {
        for c in &mut out {
            *c = -c.clone();
        }
    }
    out
}

/// Upper bound on the coefficients of lc(G) times any monic rational factor
/// of G: the Mignotte-style bound 2^n * sqrt(n+1) * height(G) * |lc(G)|.
fn factor_coeff_bound(g: &[BigInt]) -> BigInt {
    let n = g.len() - 1;
    let height = g.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    let sqrt_dim = BigInt::from((((n + 1) as f64).sqrt().ceil()) as u64);
    (BigInt::one() << n) * sqrt_dim * height * g.last().unwrap().abs()
}

/// Find a prime exceeding `min`, not dividing lc, keeping g square-free
/// mod p. Exists because disc(g) has finitely many prime divisors.
fn good_prime(g: &[BigInt], min: &BigInt) -> Result<u64, FactorError> {
    let start = if min < &BigInt::from(3u32) {
        3u64
    } else {
        let s: u64 = min.try_into().map_err(|_| FactorError::CoefficientHeight)?;
        s + 1
    };
    let mut p = start | 1;
    loop {
        if p >= crate::field::MAX_MODULUS {
            return Err(FactorError::CoefficientHeight);
        }
        if is_prime_u64(p) {
            let gp = reduce_mod(g, p);
            if dense::deg(&gp) == Some(g.len() - 1) {
                let d = dense::derivative(&gp, p);
                if dense::deg(&dense::gcd(&gp, &d, p)) == Some(0) {
                    return Ok(p);
                }
            }
        }
        p += 2;
    }
}

fn reduce_mod(g: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    dense::trim(
        g.iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                let v: u64 = (&r).try_into().unwrap();
                v
            })
            .collect(),
    )
}

fn symmetric_lift(v: &[u64], p: u64) -> Vec<BigInt> {
    v.iter()
        .map(|&c| {
            if c > p / 2 {
                BigInt::from(c) - BigInt::from(p)
            } else {
                BigInt::from(c)
            }
        })
        .collect()
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|c| BigRational::from(c.clone())).collect()
}

/// Factor a monic square-free integer-primitive polynomial into its monic
/// irreducible rational factors.
fn factor_squarefree_part(g: Vec<BigInt>, seed: u64) -> Result<Vec<Vec<BigRational>>, FactorError> {
    let mut g = g;
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    if g.len() == 2 {
        out.push(qmonic(&to_rational(&g)));
        return Ok(out);
    }
    let bound = factor_coeff_bound(&g) * BigInt::from(2u32);
    let p = good_prime(&g, &bound)?;
    let gp = dense::monic(&reduce_mod(&g, p), p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Vec<u64>> = dense::factor_monic(&gp, p, &mut rng)
        .into_iter()
        .map(|(f, m)| {
            debug_assert_eq!(m, 1, "square-free input");
            f
        })
        .collect();

    // Subset recombination: small candidate subsets first; a verified
    // divisor is committed and the search restarts on the quotient.
    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut found = None;
        'subsets: for combo in subsets(pool.len(), size) {
            let lc = g.last().unwrap().clone();
            let mut cand = vec![reduce_big(&lc, p)];
            for &i in &combo {
                cand = dense::mul(&cand, &pool[i], p);
            }
            let lifted = symmetric_lift(&cand, p);
            let prim = primitive_big(&lifted);
            let (q, r) = qdivrem(&to_rational(&g), &to_rational(&prim));
            if r.is_empty() {
                out.push(qmonic(&to_rational(&prim)));
                g = primitive_integer(&q);
                found = Some(combo);
                break 'subsets;
            }
        }
        match found {
            Some(combo) => {
                for &i in combo.iter().rev() {
                    pool.remove(i);
                }
                // Degree shrank; same size may divide again.
            }
            None => size += 1,
        }
    }
    if g.len() > 1 {
        out.push(qmonic(&to_rational(&g)));
    }
    Ok(out)
}

fn reduce_big(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    (&r).try_into().unwrap()
}

fn primitive_big(v: &[BigInt]) -> Vec<BigInt> {
    let mut gcd = BigInt::zero();
    for c in v {
        gcd = gcd.gcd(c);
    }
    if gcd.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = v.iter().map(|c| c / &gcd).collect();
    if out.last().is_some_and(|lc| lc.is_negative()) {
        for c in &mut out {
            *c = -c.clone();
        }
    }
    out
}

/// Ascending index subsets of {0..n} of the given size.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// Complete factorization of a monic univariate polynomial over Q into
/// monic irreducible factors with multiplicities, deterministic per seed.
pub(crate) fn factor_monic_rational(
    f: &[BigRational],
    seed: u64,
) -> Result<Vec<(Vec<BigRational>, u32)>, FactorError> {
    debug_assert!(f.last().is_some_and(|c| c.is_one()), "input must be monic");
    let mut out: Vec<(Vec<BigRational>, u32)> = Vec::new();
    for (part, mult) in yun_squarefree(f) {
        let prim = primitive_integer(&part);
        for factor in factor_squarefree_part(prim, seed)? {
            out.push((factor, mult));
        }
    }
    // Canonical order: by degree, then coefficient sequence.
    out.sort_by(|a, b| {
        (a.0.len())
            .cmp(&b.0.len())
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(out)
}
