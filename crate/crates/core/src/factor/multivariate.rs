//! Desk-scale multivariate irreducibility and factorization.
//!
//! Everything here is exact: a "reducible" answer always carries a verified
//! divisor, an "irreducible" answer comes from an exhausted complete search,
//! and anything the bounds cannot cover is refused loudly. The search is
//! layered: linear divisors are found through the linear factors of the top
//! homogeneous form (divisor tops divide the top), and degree-4 inputs with
//! no linear divisor are split 2+2 by solving the graded coefficient system.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::{Degree, Monomial, Polynomial, PolyRing, RingRef};

use super::rational::{qdeg, qgcd, qmonic, qtrim};
use super::{factor_univariate, factor_univariate_q, FactorError, Factorization};

pub const MULTIVARIATE_DEG_BOUND: u32 = 4;
pub const MULTIVARIATE_Q_DEG_BOUND: u32 = 3;
pub const MULTIVARIATE_P_BOUND: u64 = 101;
const ENUMERATION_P_BOUND: u64 = 11;

/// Size gate shared by the multivariate entry points. `support` is the
/// number of variables that actually occur.
pub(crate) fn gate(f: &Polynomial) -> Result<u32, FactorError> {
    let Degree::Finite(d) = f.degree() else {
        return Err(FactorError::ZeroPolynomial);
    };
    if d == 0 {
        return Err(FactorError::ConstantInput);
    }
    let support = f.support_vars().len();
    if support > 3 {
        return Err(FactorError::SizeRefusal {
            reason: format!("{support} variables occur; the bound is 3"),
        });
    }
    let p = f.field().characteristic();
    if p == 0 {
        if d > MULTIVARIATE_Q_DEG_BOUND {
            return Err(FactorError::SizeRefusal {
                reason: format!("degree {d} over Q; the multivariate bound is {MULTIVARIATE_Q_DEG_BOUND}"),
            });
        }
    } else {
        if p > MULTIVARIATE_P_BOUND {
            return Err(FactorError::SizeRefusal {
                reason: format!("characteristic {p}; the bound is {MULTIVARIATE_P_BOUND}"),
            });
        }
        if d > MULTIVARIATE_DEG_BOUND {
            return Err(FactorError::SizeRefusal {
                reason: format!("degree {d}; the multivariate bound is {MULTIVARIATE_DEG_BOUND}"),
            });
        }
    }
    Ok(d)
}

/// Terms of exact total degree `k`.
fn degree_component(f: &Polynomial, k: u32) -> Polynomial {
    Polynomial::from_terms(
        f.ring(),
        f.terms()
            .filter(|(m, _)| m.total_degree() == k)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn top_form(f: &Polynomial) -> Polynomial {
    match f.degree() {
        Degree::MinusInfinity => f.clone(),
        Degree::Finite(d) => degree_component(f, d),
    }
}

/// Factor a homogeneous form in two variables `u < v` into monic irreducible
/// form factors with multiplicities, via the dehomogenization X_u = t,
/// X_v = 1 and univariate factorization.
fn binary_form_factors(
    form: &Polynomial,
    u: usize,
    v: usize,
    seed: u64,
) -> Result<Vec<(Polynomial, u32)>, FactorError> {
    let ring = f_ring(form);
    let d = form.degree().finite().expect("nonzero form");
    let line = PolyRing::new(form.field(), &["t"]);
    let mut uni = Polynomial::zero(&line);
    let mut e = 0u32;
    for (m, c) in form.terms() {
        let k = m.exp(u);
        debug_assert_eq!(m.exp(v), d - k, "input must be homogeneous in (u, v)");
        uni.add_term(Monomial::new(vec![k]), c.clone());
        e = e.max(k);
    }
    let mut out: Vec<(Polynomial, u32)> = Vec::new();
    if e < d {
        out.push((Polynomial::variable(&ring, v), d - e));
    }
    if e == 0 {
        return Ok(out);
    }
    let fz = if form.field().is_rationals() {
        factor_univariate_q(&uni, seed)?
    } else {
        factor_univariate(&uni, seed)?
    };
    for (q, m) in fz.factors {
        let k = q.degree().finite().unwrap();
        let mut homog = Polynomial::zero(&ring);
        for (mono, c) in q.terms() {
            let j = mono.exp(0);
            let mut exps = vec![0u32; ring.n_vars()];
            exps[u] = j;
            exps[v] = k - j;
            homog.add_term(Monomial::new(exps), c.clone());
        }
        out.push((homog, m));
    }
    Ok(out)
}

fn f_ring(f: &Polynomial) -> RingRef {
    f.ring().clone()
}

/// Monic linear forms dividing a nonzero homogeneous form in at most three
/// variables. Directions of affine linear divisors must come from here.
fn linear_form_directions(top: &Polynomial, seed: u64) -> Result<Vec<Polynomial>, FactorError> {
    let ring = f_ring(top);
    let mut out: Vec<Polynomial> = Vec::new();
    // Strip monomial content first: X_s divides the form iff it divides
    // every term.
    let mut core = top.clone();
    let support = top.support_vars();
    for &s in &support {
        let min_exp = top.terms().map(|(m, _)| m.exp(s)).min().unwrap_or(0);
        if min_exp > 0 {
            out.push(Polynomial::variable(&ring, s));
            let divisor = Polynomial::variable(&ring, s).pow(min_exp);
            core = core.try_div_exact(&divisor).expect("monomial content divides");
        }
    }
    let core_support = core.support_vars();
    match core_support.len() {
        0 | 1 => {
            // A pure power of one variable was already handled above; a
            // constant core contributes nothing more.
        }
        2 => {
            let (u, v) = (core_support[0], core_support[1]);
            for (q, _) in binary_form_factors(&core, u, v, seed)? {
                if q.degree() == Degree::Finite(1) {
                    push_unique(&mut out, q);
                }
            }
        }
        3 => {
            let (u, v, w) = (core_support[0], core_support[1], core_support[2]);
            // Restricting X_w to 0 keeps the form nonzero (no monomial
            // content remains) and sends each linear factor with a nonzero
            // (u, v)-part onto a linear factor of the restriction; a factor
            // without one would be a multiple of X_w, which was stripped.
            let restricted = restrict_var_to_zero(&core, w);
            debug_assert!(!restricted.is_zero());
            let d = core.degree().finite().unwrap();
            let restricted = degree_component(&restricted, d);
            if restricted.is_zero() {
                return Ok(out);
            }
            for (q, _) in binary_form_factors(&restricted, u, v, seed)? {
                if q.degree() != Degree::Finite(1) {
                    continue;
                }
                // Candidate ell = q + c*X_w; find the constants c for which
                // it divides the core form.
                for cand in extend_by_scalar_multiples(&core, &q, w, seed)? {
                    push_unique(&mut out, cand);
                }
            }
        }
        _ => unreachable!("gate keeps support at 3 variables or fewer"),
    }
    Ok(out)
}

fn push_unique(out: &mut Vec<Polynomial>, q: Polynomial) {
    if !out.contains(&q) {
        out.push(q);
    }
}

fn restrict_var_to_zero(f: &Polynomial, w: usize) -> Polynomial {
    Polynomial::from_terms(
        f.ring(),
        f.terms()
            .filter(|(m, _)| m.exp(w) == 0)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// All scalars c with (base + c * X_w) dividing `f`, where `base` is monic
/// linear in (u, v). Finite fields enumerate c; over Q the scalar is solved
/// symbolically (see `solve_linear_shift`).
fn extend_by_scalar_multiples(
    f: &Polynomial,
    base: &Polynomial,
    w: usize,
    seed: u64,
) -> Result<Vec<Polynomial>, FactorError> {
    let ring = f_ring(f);
    let field = f.field();
    let mut out = Vec::new();
    if field.is_rationals() {
        let shifted = solve_linear_shift(f, base, &Polynomial::variable(&ring, w), seed)?;
        out.extend(shifted);
    } else {
        let p = field.characteristic();
        let xw = Polynomial::variable(&ring, w);
        for c in 0..p {
            let cand = base.add(&xw.scale(&field.from_integer(c as i64)));
            if f.try_div_exact(&cand).is_some() {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

/// Every monic linear divisor of `f` (affine: direction plus constant).
fn linear_factors(f: &Polynomial, seed: u64) -> Result<Vec<Polynomial>, FactorError> {
    let ring = f_ring(f);
    let field = f.field();
    let top = top_form(f);
    let mut out = Vec::new();
    for dir in linear_form_directions(&top, seed)? {
        if field.is_rationals() {
            for cand in solve_linear_shift(f, &dir, &Polynomial::one(&ring), seed)? {
                push_unique(&mut out, cand);
            }
        } else {
            let p = field.characteristic();
            for c in 0..p {
                let cand = dir.add(&Polynomial::constant(&ring, field.from_integer(c as i64)));
                if f.try_div_exact(&cand).is_some() {
                    push_unique(&mut out, cand);
                }
            }
        }
    }
    Ok(out)
}

/// Solve for the scalars c that make (base + c * step) divide `f`, exactly,
/// over Q: substitute the solved leading variable of `base` with c kept
/// symbolic, collect the result by the remaining monomials, and take the
/// gcd of the univariate coefficient polynomials in c; its rational roots
/// are the only possible scalars, each verified by an exact division.
fn solve_linear_shift(
    f: &Polynomial,
    base: &Polynomial,
    step: &Polynomial,
    seed: u64,
) -> Result<Vec<Polynomial>, FactorError> {
    use num_rational::BigRational;
    use num_traits::Zero;

    let ring = f_ring(f);
    let n = ring.n_vars();
    let lead = *base.support_vars().first().expect("base is linear, not constant");
    debug_assert!(base.coefficient(&Monomial::var(n, lead)).is_one());

    let mut names: Vec<String> = ring.var_names().to_vec();
    names.push("c#".to_string());
    let ext = PolyRing::with_names(ring.field(), names);
    let lift = |p: &Polynomial| -> Polynomial {
        Polynomial::from_terms(
            &ext,
            p.terms().map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps.push(0);
                (Monomial::new(exps), c.clone())
            }),
        )
    };
    // X_lead maps to X_lead - base - c*step, i.e. the root locus of
    // base + c*step viewed as solving for X_lead.
    let c_var = Polynomial::variable(&ext, n);
    let mut images: Vec<Polynomial> = (0..n).map(|j| Polynomial::variable(&ext, j)).collect();
    images[lead] = Polynomial::variable(&ext, lead)
        .sub(&lift(base))
        .sub(&c_var.mul(&lift(step)));
    let r = f.substitute(&images);

    // Group by the non-c monomial part; each group is univariate in c.
    let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<BigRational>> =
        std::collections::BTreeMap::new();
    for (m, coef) in r.terms() {
        let key: Vec<u32> = m.exps()[..n].to_vec();
        let ce = m.exp(n) as usize;
        let entry = groups.entry(key).or_default();
        if entry.len() <= ce {
            entry.resize(ce + 1, BigRational::zero());
        }
        entry[ce] = coef.as_rational().clone();
    }
    let mut common: Vec<BigRational> = Vec::new();
    for v in groups.into_values() {
        let v = qtrim(v);
        common = if common.is_empty() { v } else { qgcd(&common, &v) };
        if qdeg(&common) == Some(0) {
            return Ok(Vec::new());
        }
    }
    if common.is_empty() {
        // The substituted polynomial vanished identically, impossible for
        // a nonzero f with finitely many factors.
        unreachable!("substitution of a nonzero polynomial vanished");
    }

    // Rational roots of the gcd are the only candidate scalars.
    let line = PolyRing::new(FieldSpec::rationals(), &["c"]);
    let g = Polynomial::from_terms(
        &line,
        qmonic(&common)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (Monomial::new(vec![i as u32]), FieldElement::Rational(c))),
    );
    let mut out = Vec::new();
    if let Degree::Finite(dg) = g.degree() {
        if dg >= 1 {
            let fz = factor_univariate_q(&g, seed)?;
            for (q, _) in fz.factors {
                if q.degree() == Degree::Finite(1) {
                    let root = q.coefficient(&Monomial::new(vec![0])).neg();
                    let cand = base.add(&step.scale(&root));
                    if f.try_div_exact(&cand).is_some() {
                        out.push(cand);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Row-reduce an augmented system over F_p. Returns a particular solution
/// and a kernel basis, or None when inconsistent.
fn solve_fp(
    rows: &[Vec<u64>],
    rhs: &[u64],
    p: u64,
) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let n_unknowns = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.clone();
            row.push(b % p);
            row
        })
        .collect();
    let n_rows = aug.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..n_unknowns {
        let Some(pr) = (rank..n_rows).find(|&i| aug[i][col] % p != 0) else {
            continue;
        };
        aug.swap(rank, pr);
        let inv = mod_inv(aug[rank][col], p);
        for x in aug[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n_rows {
            if i != rank && aug[i][col] != 0 {
                let factor = aug[i][col];
                for j in 0..=n_unknowns {
                    let sub = factor * aug[rank][j] % p;
                    aug[i][j] = (aug[i][j] + p - sub) % p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero rhs.
    for row in aug.iter().skip(rank) {
        if row[n_unknowns] % p != 0 {
            return None;
        }
    }
    let mut particular = vec![0u64; n_unknowns];
    for (r, &col) in pivot_cols.iter().enumerate() {
        particular[col] = aug[r][n_unknowns];
    }
    let free_cols: Vec<usize> = (0..n_unknowns).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel = free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; n_unknowns];
            v[fc] = 1;
            for (r, &col) in pivot_cols.iter().enumerate() {
                v[col] = (p - aug[r][fc] % p) % p;
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

fn residue(c: &FieldElement) -> u64 {
    c.residue()
}

/// Coefficient of f on the (u, v)-monomial with exponents (eu, ev).
fn coeff2(f: &Polynomial, u: usize, v: usize, eu: u32, ev: u32) -> u64 {
    let n = f.ring().n_vars();
    let mut exps = vec![0u32; n];
    exps[u] = eu;
    exps[v] = ev;
    residue(&f.coefficient(&Monomial::new(exps)))
}

/// All monic quadratic divisors of a degree-4 polynomial in exactly two
/// variables with no linear divisors, over F_p. Solves the graded
/// coefficient system for each admissible top form, so the search is
/// complete.
fn quadratic_divisors_bivariate(f: &Polynomial, seed: u64) -> Result<Vec<Polynomial>, FactorError> {
    let ring = f_ring(f);
    let field = f.field();
    let p = field.characteristic();
    assert!(p > 0, "the rational path never needs quadratic divisors");
    let support = f.support_vars();
    let (u, v) = (support[0], support[1]);
    debug_assert_eq!(f.degree(), Degree::Finite(4));
    debug_assert!(f.leading_term().unwrap().1.is_one(), "input must be monic");

    let f4 = degree_component(f, 4);
    let form_factors = binary_form_factors(&f4, u, v, seed)?;
    // Candidate top forms: monic degree-2 divisors of the top form.
    let mut tops: Vec<Polynomial> = Vec::new();
    for (i, (qi, mi)) in form_factors.iter().enumerate() {
        match qi.degree().finite().unwrap() {
            2 => push_unique(&mut tops, qi.clone()),
            1 => {
                if *mi >= 2 {
                    push_unique(&mut tops, qi.mul(qi));
                }
                for (qj, _) in form_factors.iter().skip(i + 1) {
                    if qj.degree() == Degree::Finite(1) {
                        push_unique(&mut tops, qi.mul(qj));
                    }
                }
            }
            _ => {}
        }
    }

    let basis1 = [(1u32, 0u32), (0, 1)];
    let basis2 = [(2u32, 0u32), (1, 1), (0, 2)];
    let basis3 = [(3u32, 0u32), (2, 1), (1, 2), (0, 3)];
    let mono = |eu: u32, ev: u32| {
        let mut exps = vec![0u32; ring.n_vars()];
        exps[u] = eu;
        exps[v] = ev;
        Monomial::new(exps)
    };
    let lin_poly = |a: u64, b: u64| {
        let mut q = Polynomial::zero(&ring);
        q.add_term(mono(1, 0), field.from_integer(a as i64));
        q.add_term(mono(0, 1), field.from_integer(b as i64));
        q
    };

    let mut found: Vec<Polynomial> = Vec::new();
    for t in &tops {
        let Some(s) = f4.try_div_exact(t) else { continue };
        // Unknowns (a, b, a', b'): g1 = a X_u + b X_v, h1 = a' X_u + b' X_v,
        // matched against the degree-3 component: T h1 + S g1 = f3.
        let col = |q: &Polynomial, which: usize| -> Vec<u64> {
            // Coefficients of q * basis1[which] on the cubic basis.
            let shifted = q.mul_term(&mono(basis1[which].0, basis1[which].1), &field.one());
            basis3
                .iter()
                .map(|&(eu, ev)| coeff2(&shifted, u, v, eu, ev))
                .collect()
        };
        let cols = [col(&s, 0), col(&s, 1), col(t, 0), col(t, 1)];
        let rows: Vec<Vec<u64>> = (0..4)
            .map(|r| (0..4).map(|c| cols[c][r]).collect())
            .collect();
        let f3 = degree_component(f, 3);
        let rhs: Vec<u64> = basis3.iter().map(|&(eu, ev)| coeff2(&f3, u, v, eu, ev)).collect();
        let Some((particular, kernel)) = solve_fp(&rows, &rhs, p) else {
            continue;
        };
        assert!(kernel.len() <= 2, "degree-3 matching system has tiny kernel");
        let mut combos = vec![particular.clone()];
        expand_kernel(&mut combos, &kernel, p);

        for sol in combos {
            let g1 = lin_poly(sol[0], sol[1]);
            let h1 = lin_poly(sol[2], sol[3]);
            // Remaining unknowns (g0, h0) are scalars, linear in the
            // degree-2 and degree-1 components, with the constant term as
            // the final bilinear check.
            let f2 = degree_component(f, 2).sub(&g1.mul(&h1));
            let f1 = degree_component(f, 1);
            let mut rows2: Vec<Vec<u64>> = Vec::new();
            let mut rhs2: Vec<u64> = Vec::new();
            for &(eu, ev) in &basis2 {
                rows2.push(vec![coeff2(&s, u, v, eu, ev), coeff2(t, u, v, eu, ev)]);
                rhs2.push(coeff2(&f2, u, v, eu, ev));
            }
            for &(eu, ev) in &basis1 {
                rows2.push(vec![coeff2(&h1, u, v, eu, ev), coeff2(&g1, u, v, eu, ev)]);
                rhs2.push(coeff2(&f1, u, v, eu, ev));
            }
            let Some((part2, kern2)) = solve_fp(&rows2, &rhs2, p) else {
                continue;
            };
            let mut scalar_combos = vec![part2.clone()];
            expand_kernel(&mut scalar_combos, &kern2, p);
            let f0 = residue(&f.coefficient(&mono(0, 0)));
            for sc in scalar_combos {
                if sc[0] * sc[1] % p != f0 {
                    continue;
                }
                let g = t
                    .add(&g1)
                    .add(&Polynomial::constant(&ring, field.from_integer(sc[0] as i64)));
                if f.try_div_exact(&g).is_some() {
                    push_unique(&mut found, g);
                }
            }
        }
    }
    Ok(found)
}

/// Extend a particular solution by every kernel combination. Kernel
/// dimensions here are at most 2, so this stays tiny.
fn expand_kernel(combos: &mut Vec<Vec<u64>>, kernel: &[Vec<u64>], p: u64) {
    for k in kernel {
        let mut next = Vec::with_capacity(combos.len() * p as usize);
        for base in combos.iter() {
            for c in 0..p {
                let v: Vec<u64> = base
                    .iter()
                    .zip(k)
                    .map(|(&b, &kv)| (b + c * kv) % p)
                    .collect();
                next.push(v);
            }
        }
        *combos = next;
    }
}

/// One monic quadratic divisor of a degree-4 polynomial in exactly three
/// variables with no linear divisors, over F_p. Small p enumerates top
/// forms directly; larger p works through plane sections and a linear
/// reconstruction, refusing loudly when the sections stay ambiguous.
fn quadratic_divisor_trivariate(
    f: &Polynomial,
    seed: u64,
) -> Result<Option<Polynomial>, FactorError> {
    let field = f.field();
    let p = field.characteristic();
    if p <= ENUMERATION_P_BOUND {
        return Ok(quadratic_divisor_by_enumeration(f, seed)?);
    }
    plane_section_search(f, seed)
}

/// Complete enumeration, feasible for small p: candidate top forms are the
/// monic quadratic form divisors of the top form, and the affine tail is
/// enumerated directly.
fn quadratic_divisor_by_enumeration(
    f: &Polynomial,
    _seed: u64,
) -> Result<Option<Polynomial>, FactorError> {
    let ring = f_ring(f);
    let field = f.field();
    let p = field.characteristic();
    let support = f.support_vars();
    let f4 = top_form(f);

    // Monic quadratic forms in the support variables dividing the top form.
    let deg2_monos: Vec<Monomial> = monomials_of_degree(&ring, &support, 2);
    let mut tops = Vec::new();
    enumerate_monic(&deg2_monos, p, &mut |poly_coeffs| {
        let t = assemble(&ring, field, &deg2_monos, poly_coeffs);
        if f4.try_div_exact(&t).is_some() {
            tops.push(t);
        }
    });

    let low_monos: Vec<Monomial> = {
        let mut v = monomials_of_degree(&ring, &support, 1);
        v.push(Monomial::one(ring.n_vars()));
        v
    };
    for t in tops {
        let mut hit = None;
        enumerate_all(&low_monos, p, &mut |coeffs| {
            if hit.is_some() {
                return;
            }
            let g = t.add(&assemble(&ring, field, &low_monos, coeffs));
            if f.try_div_exact(&g).is_some() {
                hit = Some(g);
            }
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn monomials_of_degree(ring: &RingRef, support: &[usize], d: u32) -> Vec<Monomial> {
    let n = ring.n_vars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; support.len()];
    fn rec(
        pos: usize,
        left: u32,
        exps: &mut Vec<u32>,
        support: &[usize],
        n: usize,
        out: &mut Vec<Monomial>,
    ) {
        if pos == exps.len() {
            if left == 0 {
                let mut full = vec![0u32; n];
                for (k, &s) in support.iter().enumerate() {
                    full[s] = exps[k];
                }
                out.push(Monomial::new(full));
            }
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            rec(pos + 1, left - e, exps, support, n, out);
        }
        exps[pos] = 0;
    }
    rec(0, d, &mut exps, support, n, &mut out);
    out.sort();
    out.reverse(); // descending: canonical leading first
    out
}

/// Visit every coefficient vector whose first nonzero entry is 1.
fn enumerate_monic(monos: &[Monomial], p: u64, visit: &mut dyn FnMut(&[u64])) {
    let k = monos.len();
    for lead in 0..k {
        let free = k - lead - 1;
        let mut coeffs = vec![0u64; k];
        coeffs[lead] = 1;
        let mut counter = vec![0u64; free];
        loop {
            for (i, &c) in counter.iter().enumerate() {
                coeffs[lead + 1 + i] = c;
            }
            visit(&coeffs);
            if !odometer(&mut counter, p) {
                break;
            }
        }
    }
}

fn enumerate_all(monos: &[Monomial], p: u64, visit: &mut dyn FnMut(&[u64])) {
    let mut counter = vec![0u64; monos.len()];
    loop {
        visit(&counter);
        if !odometer(&mut counter, p) {
            break;
        }
    }
}

fn odometer(counter: &mut [u64], p: u64) -> bool {
    for c in counter.iter_mut() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

fn assemble(
    ring: &RingRef,
    field: FieldSpec,
    monos: &[Monomial],
    coeffs: &[u64],
) -> Polynomial {
    Polynomial::from_terms(
        ring,
        monos
            .iter()
            .zip(coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), field.from_integer(c as i64))),
    )
}

/// Plane-section search for p beyond the enumeration bound. An irreducible
/// degree-preserving section certifies irreducibility outright; otherwise
/// the candidate factor is reconstructed linearly from its restrictions to
/// three planes and verified by exact division.
fn plane_section_search(f: &Polynomial, seed: u64) -> Result<Option<Polynomial>, FactorError> {
    let ring = f_ring(f);
    let field = f.field();
    let p = field.characteristic();
    let support = f.support_vars();
    let (u, v, w) = (support[0], support[1], support[2]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);

    struct Section {
        alpha: u64,
        beta: u64,
        gamma: u64,
        divisors: Vec<Polynomial>,
    }
    let mut sections: Vec<Section> = Vec::new();

    for _ in 0..12 {
        let (alpha, beta, gamma) = (
            rng.random_range(0..p),
            rng.random_range(0..p),
            rng.random_range(0..p),
        );
        let plane = plane_poly(&ring, field, u, v, alpha, beta, gamma);
        let fr = substitute_var(f, w, &plane);
        if fr.degree() != Degree::Finite(4) || fr.support_vars().len() != 2 {
            continue;
        }
        let fr = fr.monic();
        if !linear_factors(&fr, seed)?.is_empty() {
            // The section splits 1+3 or further; collect its quadratic
            // divisors from the full factorization.
            let fz = factor_in_bounds(&fr, seed)?;
            let divisors = quadratic_divisors_from_factors(&fz);
            sections.push(Section { alpha, beta, gamma, divisors });
            continue;
        }
        let quads = quadratic_divisors_bivariate(&fr, seed)?;
        if quads.is_empty() {
            // Irreducible section: f cannot split 2+2 (nor 1+3, ruled out
            // before this search), so f is irreducible.
            return Ok(None);
        }
        sections.push(Section { alpha, beta, gamma, divisors: quads });
    }

    if sections.len() < 3 {
        return Err(FactorError::Inconclusive {
            reason: "degree-4 trivariate input: too few degree-preserving plane sections".into(),
        });
    }

    // Reconstruct: a quadratic divisor restricts to one of each section's
    // quadratic divisors up to a scalar; three sections pin its
    // coefficients down linearly.
    let b10: Vec<Monomial> = {
        let mut m = monomials_of_degree(&ring, &support, 2);
        m.extend(monomials_of_degree(&ring, &support, 1));
        m.push(Monomial::one(ring.n_vars()));
        m
    };
    let b6: Vec<Monomial> = {
        let mut m = monomials_of_degree(&ring, &[u, v], 2);
        m.extend(monomials_of_degree(&ring, &[u, v], 1));
        m.push(Monomial::one(ring.n_vars()));
        m
    };
    let restriction_matrix = |s: &Section| -> Vec<Vec<u64>> {
        // Column j: restriction of basis monomial j, in the b6 basis.
        let plane = plane_poly(&ring, field, u, v, s.alpha, s.beta, s.gamma);
        b10.iter()
            .map(|m| {
                let mono_poly = Polynomial::from_terms(&ring, [(m.clone(), field.one())]);
                let restricted = substitute_var(&mono_poly, w, &plane);
                b6.iter()
                    .map(|bm| residue(&restricted.coefficient(bm)))
                    .collect::<Vec<u64>>()
            })
            .collect()
    };
    let coeff_vec = |q: &Polynomial| -> Vec<u64> {
        b6.iter().map(|bm| residue(&q.coefficient(bm))).collect()
    };

    for triple in sections.windows(3).take(4) {
        let mats: Vec<Vec<Vec<u64>>> = triple.iter().map(&restriction_matrix).collect();
        for q1 in &triple[0].divisors {
            for q2 in &triple[1].divisors {
                for q3 in &triple[2].divisors {
                    // Unknowns: 10 coefficients of g, then lambda2, lambda3.
                    let mut rows: Vec<Vec<u64>> = Vec::new();
                    let mut rhs: Vec<u64> = Vec::new();
                    let (c1, c2, c3) = (coeff_vec(q1), coeff_vec(q2), coeff_vec(q3));
                    for r in 0..6 {
                        let mut row = vec![0u64; 12];
                        for (j, col) in mats[0].iter().enumerate() {
                            row[j] = col[r];
                        }
                        rows.push(row);
                        rhs.push(c1[r]);
                    }
                    for r in 0..6 {
                        let mut row = vec![0u64; 12];
                        for (j, col) in mats[1].iter().enumerate() {
                            row[j] = col[r];
                        }
                        row[10] = (p - c2[r] % p) % p;
                        rows.push(row);
                        rhs.push(0);
                    }
                    for r in 0..6 {
                        let mut row = vec![0u64; 12];
                        for (j, col) in mats[2].iter().enumerate() {
                            row[j] = col[r];
                        }
                        row[11] = (p - c3[r] % p) % p;
                        rows.push(row);
                        rhs.push(0);
                    }
                    let Some((part, kernel)) = solve_fp(&rows, &rhs, p) else {
                        continue;
                    };
                    if kernel.len() > 2 {
                        continue;
                    }
                    let mut combos = vec![part];
                    expand_kernel(&mut combos, &kernel, p);
                    for sol in combos {
                        let g = assemble(&ring, field, &b10, &sol[..10]);
                        if g.degree() != Degree::Finite(2) {
                            continue;
                        }
                        if f.try_div_exact(&g.monic()).is_some() {
                            return Ok(Some(g.monic()));
                        }
                    }
                }
            }
        }
    }
    Err(FactorError::Inconclusive {
        reason: "degree-4 trivariate input: all plane sections reducible, reconstruction failed"
            .into(),
    })
}

fn plane_poly(
    ring: &RingRef,
    field: FieldSpec,
    u: usize,
    v: usize,
    alpha: u64,
    beta: u64,
    gamma: u64,
) -> Polynomial {
    Polynomial::variable(ring, u)
        .scale(&field.from_integer(alpha as i64))
        .add(&Polynomial::variable(ring, v).scale(&field.from_integer(beta as i64)))
        .add(&Polynomial::constant(ring, field.from_integer(gamma as i64)))
}

fn substitute_var(f: &Polynomial, var: usize, image: &Polynomial) -> Polynomial {
    let ring = f_ring(f);
    let images: Vec<Polynomial> = (0..ring.n_vars())
        .map(|j| {
            if j == var {
                image.clone()
            } else {
                Polynomial::variable(&ring, j)
            }
        })
        .collect();
    f.substitute(&images)
}

/// Monic quadratic divisors readable off a complete factorization.
fn quadratic_divisors_from_factors(fz: &Factorization) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let fs = &fz.factors;
    for (i, (qi, mi)) in fs.iter().enumerate() {
        match qi.degree().finite().unwrap() {
            2 => push_unique(&mut out, qi.clone()),
            1 => {
                if *mi >= 2 {
                    push_unique(&mut out, qi.mul(qi));
                }
                for (qj, _) in fs.iter().skip(i + 1) {
                    if qj.degree() == Degree::Finite(1) {
                        push_unique(&mut out, qi.mul(qj));
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// Complete factorization of an in-bounds polynomial with at least two
/// support variables.
pub(crate) fn factor_in_bounds(f: &Polynomial, seed: u64) -> Result<Factorization, FactorError> {
    gate(f)?;
    debug_assert!(f.support_vars().len() >= 2);
    let ring = f_ring(f);
    let unit = f.leading_term().unwrap().1.clone();
    let mut work = f.monic();
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    let push = |q: Polynomial, factors: &mut Vec<(Polynomial, u32)>| {
        match factors.iter_mut().find(|(g, _)| *g == q) {
            Some((_, m)) => *m += 1,
            None => factors.push((q, 1)),
        }
    };

    // Strip linear divisors to exhaustion.
    loop {
        let linears = linear_factors(&work, seed)?;
        let Some(l) = linears.into_iter().next() else { break };
        work = work.try_div_exact(&l).expect("verified divisor");
        push(l, &mut factors);
        if work.is_constant() {
            break;
        }
    }

    while !work.is_constant() {
        let d = work.degree().finite().unwrap();
        let support = work.support_vars();
        if support.len() <= 1 {
            // The cofactor collapsed to one variable; the univariate
            // engines finish it.
            let fz = if ring.field().is_rationals() {
                factor_univariate_q(&work, seed)?
            } else {
                factor_univariate(&work, seed)?
            };
            debug_assert!(fz.unit.is_one());
            for (q, m) in fz.factors {
                for _ in 0..m {
                    push(q.clone(), &mut factors);
                }
            }
            break;
        }
        match d {
            1 => {
                push(work.clone(), &mut factors);
                work = Polynomial::one(&ring);
            }
            2 | 3 => {
                // No linear divisors remain, so degree 2 and 3 are
                // irreducible outright.
                push(work.clone(), &mut factors);
                work = Polynomial::one(&ring);
            }
            4 => {
                let divisor = if support.len() == 2 {
                    quadratic_divisors_bivariate(&work, seed)?.into_iter().next()
                } else {
                    quadratic_divisor_trivariate(&work, seed)?
                };
                match divisor {
                    Some(g) => {
                        work = work.try_div_exact(&g).expect("verified divisor");
                        push(g, &mut factors);
                    }
                    None => {
                        push(work.clone(), &mut factors);
                        work = Polynomial::one(&ring);
                    }
                }
            }
            _ => unreachable!("gate bounds the degree at 4"),
        }
    }

    factors.sort_by(|a, b| {
        let da = a.0.degree();
        let db = b.0.degree();
        da.cmp(&db).then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    Ok(Factorization {
        ring,
        unit,
        factors,
    })
}
