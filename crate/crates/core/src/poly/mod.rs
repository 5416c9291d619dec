//! Sparse multivariate polynomial arithmetic over an exact field.
//!
//! Terms are stored in a map keyed by exponent vectors under graded reverse
//! lexicographic order, which fixes one canonical textual form per
//! polynomial independent of how it was built.

mod matrix;

pub use matrix::{discriminant, JacobianMatrix};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("polynomial has degree 0 (or is zero)")]
    ConstantInput,
}

/// Coefficient field plus named variables. Shared behind an `Arc` so clones
/// of polynomials stay cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<String>,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: FieldSpec, vars: &[&str]) -> RingRef {
        assert!(!vars.is_empty(), "a polynomial ring needs at least one variable");
        Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn with_names(field: FieldSpec, vars: Vec<String>) -> RingRef {
        assert!(!vars.is_empty(), "a polynomial ring needs at least one variable");
        Arc::new(PolyRing { field, vars })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, j: usize) -> &str {
        &self.vars[j]
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Exponent vector of one term; its length always equals the ambient
/// ring's variable count. `Ord` is graded reverse lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n_vars: usize) -> Self {
        Monomial { exps: vec![0; n_vars] }
    }

    pub fn var(n_vars: usize, j: usize) -> Self {
        let mut exps = vec![0; n_vars];
        exps[j] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, j: usize) -> u32 {
        self.exps[j]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, or `None` when some exponent of `rhs` exceeds
    /// this one (i.e. `rhs` does not divide `self`).
    pub fn checked_div(&self, rhs: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&rhs.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic: higher total degree wins; on ties the
    /// rightmost differing exponent decides, smaller exponent winning.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree with a distinguished value for the zero polynomial, so the
/// degree of 0 can never be confused with the degree of a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse multivariate polynomial with exact coefficients. No zero
/// coefficient is ever stored, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRef, c: FieldElement) -> Self {
        assert_eq!(c.spec(), ring.field(), "coefficient outside the ring's field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.n_vars()), c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_integer(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, ring.field().from_integer(n))
    }

    pub fn variable(ring: &RingRef, j: usize) -> Self {
        assert!(j < ring.n_vars(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.n_vars(), j), ring.field().one());
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(ring: &RingRef, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut poly = Self::zero(ring);
        for (m, c) in iter {
            poly.add_term(m, c);
        }
        poly
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value when this polynomial is constant (including zero).
    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_zero() {
            Some(self.field().zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Degree in one variable; MinusInfinity for the zero polynomial.
    pub fn degree_in(&self, j: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exp(j))
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Indices of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.n_vars())
            .filter(|&j| self.terms.keys().any(|m| m.exp(j) > 0))
            .collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// Leading term under the canonical (grevlex) storage order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        assert_eq!(m.exps().len(), self.ring.n_vars(), "exponent vector length mismatch");
        assert_eq!(c.spec(), self.field(), "coefficient outside the ring's field");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_ring(&self, rhs: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &rhs.ring) || self.ring == rhs.ring,
            "ring mismatch: {} vs {}",
            self.ring.field(),
            rhs.ring.field()
        );
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `j`. In
    /// characteristic p, terms whose exponent is divisible by p vanish.
    pub fn partial_derivative(&self, j: usize) -> Polynomial {
        assert!(j < self.ring.n_vars(), "variable index out of range");
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(j);
            if e == 0 {
                continue;
            }
            let factor = self.field().from_integer(e as i64);
            if factor.is_zero() {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[j] -= 1;
            out.add_term(Monomial::new(exps), c.mul(&factor));
        }
        out
    }

    /// Replace variable `j` by `images[j]` for every variable, evaluating in
    /// the images' (possibly different) ring. Exact; panics when the image
    /// count does not match this ring's arity or fields disagree.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(
            images.len(),
            self.ring.n_vars(),
            "arity mismatch: {} images for {} variables",
            images.len(),
            self.ring.n_vars()
        );
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .expect("rings have at least one variable");
        for img in images {
            assert!(img.ring() == &target, "images lie in different rings");
        }
        assert_eq!(
            self.field(),
            target.field(),
            "substitution cannot change the coefficient field"
        );

        // Cache powers of each image up to the largest exponent used.
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(images.len());
        for (j, img) in images.iter().enumerate() {
            let max_e = self.terms.keys().map(|m| m.exp(j)).max().unwrap_or(0) as usize;
            let mut table = Vec::with_capacity(max_e + 1);
            table.push(Polynomial::one(&target));
            for e in 1..=max_e {
                let next = table[e - 1].mul(img);
                table.push(next);
            }
            powers.push(table);
        }

        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (j, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[j][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Division cancels grevlex leading terms, which suffices for
    /// exact quotients over a field.
    pub fn try_div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.assert_same_ring(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (div_lm, div_lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let div_lc_inv = div_lc.inv();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((lm, lc)) = rem.leading_term() {
            let q_mono = lm.checked_div(&div_lm)?;
            let q_coeff = lc.mul(&div_lc_inv);
            quot.add_term(q_mono.clone(), q_coeff.clone());
            rem = rem.sub(&divisor.mul_term(&q_mono, &q_coeff));
        }
        Some(quot)
    }

    /// Scale so the grevlex leading coefficient is 1. Panics on zero.
    pub fn monic(&self) -> Polynomial {
        let (_, lc) = self.leading_term().expect("monic() on the zero polynomial");
        self.scale(&lc.inv())
    }

    /// Random sparse polynomial: up to `n_terms` monomials of total degree
    /// at most `max_deg`, nonzero coefficients of bounded height.
    pub fn random_sparse<R: Rng + ?Sized>(
        ring: &RingRef,
        rng: &mut R,
        max_deg: u32,
        n_terms: usize,
        height_bound: u64,
    ) -> Polynomial {
        let n = ring.n_vars();
        let mut poly = Polynomial::zero(ring);
        for _ in 0..n_terms {
            let total = rng.random_range(0..=max_deg);
            let mut exps = vec![0u32; n];
            for _ in 0..total {
                exps[rng.random_range(0..n)] += 1;
            }
            let mut c = ring.field().random_element(rng, height_bound);
            if c.is_zero() {
                c = ring.field().one();
            }
            poly.add_term(Monomial::new(exps), c);
        }
        poly
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: grevlex-descending terms joined with explicit `*`,
    /// re-parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign_negative, abs) = match c {
                FieldElement::Rational(r) if r.numer().sign() == num_bigint::Sign::Minus => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if first {
                if sign_negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }

            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (j, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.var_name(j).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.var_name(j), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
