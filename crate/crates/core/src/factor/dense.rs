//! Dense univariate arithmetic over F_p, the engine behind univariate
//! factorization. Polynomials are coefficient vectors (index = exponent)
//! with no trailing zeros; the empty vector is zero. All residues are
//! reduced mod p < 2^31, so products fit in u64.

use rand::Rng;

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    trim(out)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| x * c % p).collect())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid on i128 to dodge sign juggling.
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of a zero divisor");
    t.rem_euclid(p as i128) as u64
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&1) => a.to_vec(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

/// Quotient and remainder; the divisor need not be monic.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lc_inv = inv_mod(b[db], p);
    let mut quot = vec![0u64; rem.len() - db];
    while rem.len() >= b.len() {
        let dr = rem.len() - 1;
        let c = rem[dr] * lc_inv % p;
        quot[dr - db] = c;
        for (k, &bk) in b.iter().enumerate() {
            let idx = dr - db + k;
            rem[idx] = (rem[idx] + p - c * bk % p) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub(crate) fn div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (q, r) = divrem(a, b, p);
    assert!(r.is_empty(), "inexact division");
    q
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return Vec::new();
    }
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut b = rem(base, modulus, p);
    let mut acc = vec![1u64];
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = rem(&mul(&b, &b, p), modulus, p);
        }
    }
    acc
}

/// Square-free decomposition of a monic polynomial: pairwise coprime
/// square-free parts with their multiplicities. Handles the vanishing
/// derivative of characteristic p by extracting p-th roots (Frobenius is
/// the identity on F_p, so a p-th root just reindexes coefficients).
pub(crate) fn squarefree_decomposition(f: &[u64], p: u64) -> Vec<(Vec<u64>, u32)> {
    assert!(deg(f).is_some_and(|d| d >= 1), "square-free part of a constant");
    debug_assert_eq!(*f.last().unwrap(), 1, "input must be monic");
    let df = derivative(f, p);
    if df.is_empty() {
        // f = g(X^p); take the p-th root and scale multiplicities.
        let mut g = Vec::with_capacity(f.len() / p as usize + 1);
        for (i, &c) in f.iter().enumerate() {
            if i as u64 % p == 0 {
                g.push(c);
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        let g = trim(g);
        return squarefree_decomposition(&g, p)
            .into_iter()
            .map(|(q, m)| (q, m * p as u32))
            .collect();
    }
    let mut out: Vec<(Vec<u64>, u32)> = Vec::new();
    let mut c = gcd(f, &df, p);
    let mut w = div_exact(f, &c, p);
    let mut i = 1u32;
    while deg(&w) != Some(0) {
        let y = gcd(&w, &c, p);
        let fac = div_exact(&w, &y, p);
        if deg(&fac) != Some(0) {
            out.push((monic(&fac, p), i));
        }
        w = y;
        c = div_exact(&c, &w, p);
        i += 1;
    }
    if deg(&c) != Some(0) {
        // Remaining p-th power part.
        let mut g = Vec::new();
        for (k, &ck) in c.iter().enumerate() {
            if k as u64 % p == 0 {
                g.push(ck);
            } else {
                debug_assert_eq!(ck, 0, "leftover part must be a p-th power");
            }
        }
        for (q, m) in squarefree_decomposition(&trim(g), p) {
            merge_factor(&mut out, q, m * p as u32);
        }
    }
    out
}

fn merge_factor(out: &mut Vec<(Vec<u64>, u32)>, q: Vec<u64>, m: u32) {
    match out.iter_mut().find(|(g, _)| *g == q) {
        Some((_, old)) => *old += m,
        None => out.push((q, m)),
    }
}

/// Distinct-degree splitting of a monic square-free polynomial: pairs
/// (product of all irreducible factors of degree d, d).
pub(crate) fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut h = vec![0, 1]; // X
    let mut d = 0usize;
    while let Some(df) = deg(&f) {
        if df == 0 {
            break;
        }
        d += 1;
        if 2 * d > df {
            out.push((f.clone(), df));
            break;
        }
        h = pow_mod(&h, p, &f, p);
        let g = gcd(&f, &sub(&h, &[0, 1], p), p);
        if deg(&g) != Some(0) {
            out.push((g.clone(), d));
            f = div_exact(&f, &g, p);
            h = rem(&h, &f, p);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: `f` monic square-free, all
/// irreducible factors of degree `d`. Randomized but fully determined by
/// the caller's RNG state.
pub(crate) fn equal_degree<R: Rng + ?Sized>(
    f: &[u64],
    d: usize,
    p: u64,
    rng: &mut R,
) -> Vec<Vec<u64>> {
    let df = deg(f).expect("equal_degree on zero");
    if df == d {
        return vec![f.to_vec()];
    }
    let splitter = loop {
        let a: Vec<u64> = trim((0..df).map(|_| rng.random_range(0..p)).collect());
        if deg(&a).is_none_or(|da| da < 1) {
            continue;
        }
        let g = gcd(f, &a, p);
        if deg(&g) != Some(0) {
            break g;
        }
        let b = if p == 2 {
            // Trace map over F_2: a + a^2 + a^4 + ... + a^(2^(d-1)).
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let e = (p.pow(d as u32) - 1) / 2;
            sub(&pow_mod(&a, e, f, p), &[1], p)
        };
        let g = gcd(f, &b, p);
        if let Some(dg) = deg(&g) {
            if dg != 0 && dg != df {
                break g;
            }
        }
    };
    let mut out = equal_degree(&splitter, d, p, rng);
    out.extend(equal_degree(&div_exact(f, &splitter, p), d, p, rng));
    out
}

/// Complete factorization of a monic polynomial of degree >= 1 into monic
/// irreducible factors with multiplicities.
pub(crate) fn factor_monic<R: Rng + ?Sized>(f: &[u64], p: u64, rng: &mut R) -> Vec<(Vec<u64>, u32)> {
    let mut out: Vec<(Vec<u64>, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f, p) {
        for (prod, d) in distinct_degree(&part, p) {
            for irr in equal_degree(&prod, d, p, rng) {
                merge_factor(&mut out, irr, mult);
            }
        }
    }
    // Canonical order: by degree, then coefficient vector.
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}
