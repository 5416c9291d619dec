//! Groebner bases by Buchberger's algorithm.
//!
//! Pair selection follows the normal strategy (smallest lcm first) with the
//! product and chain criteria; output bases are reduced, monic, and sorted,
//! so equal ideals always yield identical bases under a fixed order.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::FieldElement;
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrLex,
    GrevLex,
}

/// Monomial order with a variable priority: `priority[0]` is the most
/// significant variable. Lex with a block of variables up front is how
/// elimination ideals are computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(n_vars: usize) -> Self {
        Self::with_priority(OrderKind::Lex, (0..n_vars).collect())
    }

    pub fn grlex(n_vars: usize) -> Self {
        Self::with_priority(OrderKind::GrLex, (0..n_vars).collect())
    }

    pub fn grevlex(n_vars: usize) -> Self {
        Self::with_priority(OrderKind::GrevLex, (0..n_vars).collect())
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &j in &priority {
            assert!(j < n && !seen[j], "priority must be a permutation of the variables");
            seen[j] = true;
        }
        MonomialOrder { kind, priority }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn n_vars(&self) -> usize {
        self.priority.len()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exps().len(), self.priority.len());
        match self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::GrLex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => self.lex_cmp(a, b),
                ord => ord,
            },
            OrderKind::GrevLex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {
                    for &j in self.priority.iter().rev() {
                        match a.exp(j).cmp(&b.exp(j)) {
                            Ordering::Equal => continue,
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
        }
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &j in &self.priority {
            match a.exp(j).cmp(&b.exp(j)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Leading term under an arbitrary order (the storage order is grevlex, so
/// other orders need a scan).
pub fn leading_term_under<'a>(
    p: &'a Polynomial,
    ord: &MonomialOrder,
) -> Option<(&'a Monomial, &'a FieldElement)> {
    p.terms().max_by(|(ma, _), (mb, _)| ord.compare(ma, mb))
}

/// Remainder of `f` on division by `basis` under `ord`. Zero exactly when
/// `f` lies in the ideal, provided `basis` is a Groebner basis for `ord`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let ring = f.ring().clone();
    let divisors: Vec<(&Polynomial, &Monomial, FieldElement)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (lm, lc) = leading_term_under(g, ord).expect("nonzero divisor");
            (g, lm, lc.inv())
        })
        .collect();

    let mut p = f.clone();
    let mut rem = Polynomial::zero(&ring);
    'outer: while let Some((lm, lc)) = leading_term_under(&p, ord).map(|(m, c)| (m.clone(), c.clone())) {
        for (g, glm, glc_inv) in &divisors {
            if let Some(q_mono) = lm.checked_div(glm) {
                let q_coeff = lc.mul(glc_inv);
                p = p.sub(&g.mul_term(&q_mono, &q_coeff));
                continue 'outer;
            }
        }
        rem.add_term(lm.clone(), lc.clone());
        p = p.sub(&Polynomial::from_terms(&ring, [(lm, lc)]));
    }
    rem
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    let (flm, flc) = leading_term_under(f, ord).expect("s-polynomial of zero");
    let (glm, glc) = leading_term_under(g, ord).expect("s-polynomial of zero");
    let lcm = flm.lcm(glm);
    let mf = lcm.checked_div(flm).unwrap();
    let mg = lcm.checked_div(glm).unwrap();
    let a = f.mul_term(&mf, &flc.inv());
    let b = g.mul_term(&mg, &glc.inv());
    a.sub(&b)
}

/// Scale to a canonical associate: over Q clear denominators, divide by the
/// integer content, and make the leading coefficient positive; over F_p make
/// the polynomial monic. Keeps coefficient growth in check mid-run.
fn content_normalize(p: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    if !p.field().is_rationals() {
        let (_, lc) = leading_term_under(p, ord).unwrap();
        return p.scale(&lc.inv());
    }
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        let r = c.as_rational();
        denom_lcm = denom_lcm.lcm(r.denom());
        numer_gcd = numer_gcd.gcd(r.numer());
    }
    let mut factor = FieldElement::Rational(num_rational::BigRational::new(denom_lcm, numer_gcd));
    let (_, lc) = leading_term_under(p, ord).unwrap();
    if lc.mul(&factor).as_rational().numer().is_negative() {
        factor = factor.neg();
    }
    p.scale(&factor)
}

/// Reduced Groebner basis of the ideal generated by `gens` under `ord`.
/// The result is monic, fully inter-reduced, and sorted by ascending
/// leading monomial, hence canonical for the ideal and order.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| content_normalize(g, ord))
        .collect();
    if basis.is_empty() {
        return Vec::new();
    }

    let mut lms: Vec<Monomial> = basis
        .iter()
        .map(|g| leading_term_under(g, ord).unwrap().0.clone())
        .collect();

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // Normal strategy: smallest pair lcm first, ties by index.
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let lcm_ab = lms[a].lcm(&lms[b]);
                let lcm_cd = lms[c].lcm(&lms[d]);
                ord.compare(&lcm_ab, &lcm_cd).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));

        let lcm = lms[i].lcm(&lms[j]);

        // Product criterion: coprime leading monomials reduce to zero.
        if lcm == lms[i].mul(&lms[j]) {
            continue;
        }
        // Chain criterion: a third element dividing the lcm whose pairs with
        // both ends are already settled makes this pair redundant.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chained {
            continue;
        }

        let spoly = s_polynomial(&basis[i], &basis[j], ord);
        let nf = normal_form(&spoly, &basis, ord);
        if nf.is_zero() {
            continue;
        }
        let nf = content_normalize(&nf, ord);
        let t = basis.len();
        lms.push(leading_term_under(&nf, ord).unwrap().0.clone());
        basis.push(nf);
        for i in 0..t {
            pending.insert((i, t));
        }
    }

    reduce_basis(basis, ord)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Inter-reduce to the unique reduced monic basis, sorted ascending by
/// leading monomial.
fn reduce_basis(mut basis: Vec<Polynomial>, ord: &MonomialOrder) -> Vec<Polynomial> {
    // Drop elements whose leading monomial another element's divides.
    loop {
        let lms: Vec<Monomial> = basis
            .iter()
            .map(|g| leading_term_under(g, ord).unwrap().0.clone())
            .collect();
        let redundant = (0..basis.len()).find(|&i| {
            (0..basis.len()).any(|k| k != i && lms[k].divides(&lms[i]))
        });
        match redundant {
            Some(i) => {
                basis.remove(i);
            }
            None => break,
        }
    }
    // Reduce each tail against the others until stable.
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let g = basis[i].clone();
            let rest: Vec<Polynomial> = basis
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let nf = normal_form(&g, &rest, ord);
            assert!(!nf.is_zero(), "minimal basis element reduced to zero");
            let nf = content_normalize(&nf, ord);
            if nf != basis[i] {
                basis[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for g in &mut basis {
        let (_, lc) = leading_term_under(g, ord).unwrap();
        if !lc.is_one() {
            *g = g.scale(&lc.inv());
        }
    }
    basis.sort_by(|a, b| {
        let la = leading_term_under(a, ord).unwrap().0;
        let lb = leading_term_under(b, ord).unwrap().0;
        ord.compare(la, lb)
    });
    basis
}

/// True when the generated ideal is the whole ring, i.e. the reduced basis
/// is exactly [1].
pub fn is_unit_ideal(gens: &[Polynomial], ord: &MonomialOrder) -> bool {
    let gb = buchberger(gens, ord);
    gb.len() == 1 && gb[0].is_one()
}

/// Membership test: reduce against the basis computed under `ord`.
pub fn ideal_contains(gens: &[Polynomial], f: &Polynomial, ord: &MonomialOrder) -> bool {
    let gb = buchberger(gens, ord);
    normal_form(f, &gb, ord).is_zero()
}

/// Generators of the elimination ideal obtained by discarding the variables
/// in `eliminate`: a lex basis with those variables most significant, kept
/// elements being the ones free of them. Output polynomials still live in
/// the original ring.
pub fn elimination_ideal(gens: &[Polynomial], eliminate: &[usize]) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let n = first.ring().n_vars();
    let elim_set: HashSet<usize> = eliminate.iter().copied().collect();
    let mut priority: Vec<usize> = Vec::with_capacity(n);
    priority.extend((0..n).filter(|j| elim_set.contains(j)));
    priority.extend((0..n).filter(|j| !elim_set.contains(j)));
    let ord = MonomialOrder::with_priority(OrderKind::Lex, priority);
    buchberger(gens, &ord)
        .into_iter()
        .filter(|g| g.support_vars().iter().all(|j| !elim_set.contains(j)))
        .collect()
}

/// Dimension of the quotient ring as a vector space over the coefficient
/// field: finite exactly when every variable has a pure power among the
/// basis leading monomials, in which case the standard monomials under the
/// staircase are counted directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

pub fn quotient_dimension(gens: &[Polynomial], ord: &MonomialOrder) -> QuotientDimension {
    let gb = buchberger(gens, ord);
    if gb.is_empty() {
        return QuotientDimension::Infinite;
    }
    if gb.len() == 1 && gb[0].is_one() {
        return QuotientDimension::Finite(0);
    }
    let n = gb[0].ring().n_vars();
    let lms: Vec<Monomial> = gb
        .iter()
        .map(|g| leading_term_under(g, ord).unwrap().0.clone())
        .collect();

    // Pure power bound per variable; absence of one means infinite dimension.
    let mut bounds = Vec::with_capacity(n);
    for j in 0..n {
        let bound = lms
            .iter()
            .filter(|m| {
                m.exp(j) > 0 && m.exps().iter().enumerate().all(|(k, &e)| k == j || e == 0)
            })
            .map(|m| m.exp(j))
            .min();
        match bound {
            Some(b) => bounds.push(b),
            None => return QuotientDimension::Infinite,
        }
    }

    // Walk the box under the staircase and count monomials no leading
    // monomial divides.
    let mut count = 0u64;
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::new(exps.clone());
        if !lms.iter().any(|lm| lm.divides(&m)) {
            count += 1;
        }
        // Odometer step through the box.
        let mut pos = 0;
        loop {
            if pos == n {
                return QuotientDimension::Finite(count);
            }
            exps[pos] += 1;
            if exps[pos] < bounds[pos] {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}
