//! Analysis of polynomial endomorphisms: Jacobian unit test, separability,
//! invertibility with an explicit inverse, geometric degree, and the degree
//! bound that ties them together.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::FieldSpec;
use crate::groebner::{
    buchberger, is_unit_ideal, leading_term_under, MonomialOrder, OrderKind, QuotientDimension,
    quotient_dimension,
};
use crate::poly::{Degree, JacobianMatrix, Monomial, Polynomial, PolyRing, RingRef};

/// Coordinate height bound for random fiber points over Q.
const SAMPLE_HEIGHT: u64 = 50;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("a map needs at least one coordinate image")]
    Empty,
    #[error("expected {expected} images for {expected} variables, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("coordinate images lie in different rings")]
    MixedRings,
    #[error("degenerate map: image {0} is constant")]
    Degenerate(usize),
}

/// Polynomial endomorphism of K[X_1..X_n]: X_i maps to `images[i]`.
/// Constant coordinates are rejected so the map stays a candidate
/// monomorphism between polynomial algebras of equal variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    ring: RingRef,
    images: Vec<Polynomial>,
    max_degree: u32,
}

impl PolyMap {
    pub fn new(images: Vec<Polynomial>) -> Result<PolyMap, MapError> {
        let Some(first) = images.first() else {
            return Err(MapError::Empty);
        };
        let ring = first.ring().clone();
        if images.iter().any(|p| p.ring() != &ring) {
            return Err(MapError::MixedRings);
        }
        if images.len() != ring.n_vars() {
            return Err(MapError::WrongArity {
                expected: ring.n_vars(),
                got: images.len(),
            });
        }
        let mut max_degree = 0;
        for (i, p) in images.iter().enumerate() {
            match p.degree() {
                Degree::Finite(d) if d >= 1 => max_degree = max_degree.max(d),
                _ => return Err(MapError::Degenerate(i)),
            }
        }
        Ok(PolyMap {
            ring,
            images,
            max_degree,
        })
    }

    pub fn identity(ring: &RingRef) -> PolyMap {
        let images = (0..ring.n_vars())
            .map(|j| Polynomial::variable(ring, j))
            .collect();
        PolyMap::new(images).expect("identity map is never degenerate")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Product of the coordinate degrees, the classical fiber-count bound.
    pub fn degree_product(&self) -> u64 {
        self.images
            .iter()
            .map(|p| p.degree().finite().expect("non-constant image") as u64)
            .product()
    }

    /// Composition self after inner: coordinate i becomes
    /// `self.images[i]` evaluated at `inner.images`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, MapError> {
        assert_eq!(self.n(), inner.n(), "composition arity mismatch");
        let images = self
            .images
            .iter()
            .map(|p| p.substitute(inner.images()))
            .collect();
        PolyMap::new(images)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(j, p)| *p == Polynomial::variable(&self.ring, j))
    }
}

/// Determinant of the Jacobian and whether it is a unit, i.e. a nonzero
/// constant of K. For an invertible map the chain rule forces this.
pub fn det_jacobian_unit(map: &PolyMap) -> (Polynomial, bool) {
    let det = JacobianMatrix::of(map.images()).determinant();
    let unit = det.constant_value().is_some_and(|c| !c.is_zero());
    (det, unit)
}

/// Separability of the endomorphism: the maximal minors of the Jacobian
/// (for a square map, just its determinant) must generate the unit ideal.
pub fn separability_check_endo(map: &PolyMap) -> bool {
    let minors = JacobianMatrix::of(map.images()).maximal_minors();
    let ord = MonomialOrder::grevlex(map.ring().n_vars());
    is_unit_ideal(&minors, &ord)
}

/// Separability of a presented algebra map: source relations `a_rels`
/// (consistency only), target relations `b_rels` = P_1..P_r in K[X_1..X_m],
/// and images F_1..F_n of the source generators. Separable iff n + r >= m
/// and the P_i together with the maximal minors of the stacked Jacobian of
/// (F, P) generate the unit ideal.
pub fn separability_check_presented(
    a_rels: &[Polynomial],
    b_rels: &[Polynomial],
    images: &[Polynomial],
) -> Result<bool, MapError> {
    let mut rows: Vec<Polynomial> = images.to_vec();
    rows.extend(b_rels.iter().cloned());
    let Some(first) = rows.first() else {
        // n + r = 0 < m for any actual ring.
        return Ok(false);
    };
    let ring = first.ring().clone();
    if rows.iter().any(|p| p.ring() != &ring) {
        return Err(MapError::MixedRings);
    }
    if let Some(a) = a_rels.first() {
        if a.ring().field() != ring.field() {
            return Err(MapError::MixedRings);
        }
    }
    let m = ring.n_vars();
    if rows.len() < m {
        return Ok(false);
    }
    let minors = JacobianMatrix::of(&rows).maximal_minors();
    let mut gens: Vec<Polynomial> = b_rels.to_vec();
    gens.extend(minors);
    let ord = MonomialOrder::grevlex(m);
    Ok(is_unit_ideal(&gens, &ord))
}

/// Inverse of the map when it is a ring automorphism, by the graph-ideal
/// certificate: the reduced lex basis (X block above Y block) of
/// (Y_i - F_i(X)) consists of X_i - G_i(Y) exactly when the map is
/// invertible, and then G is the inverse. A non-unit Jacobian determinant
/// short-circuits to absent, since invertibility forces a unit.
pub fn invert(map: &PolyMap) -> Option<PolyMap> {
    let (_, unit) = det_jacobian_unit(map);
    if !unit {
        return None;
    }
    let n = map.n();
    let src = map.ring();
    let mut names: Vec<String> = src.var_names().to_vec();
    for i in 0..n {
        // '#' cannot occur in parsed variable names, so these are fresh.
        let y = format!("y#{i}");
        assert!(src.var_index(&y).is_none(), "reserved variable name in source ring");
        names.push(y);
    }
    let big = PolyRing::with_names(src.field(), names);
    let x_in_big: Vec<Polynomial> = (0..n).map(|j| Polynomial::variable(&big, j)).collect();

    let gens: Vec<Polynomial> = (0..n)
        .map(|i| {
            let fi = map.images()[i].substitute(&x_in_big);
            Polynomial::variable(&big, n + i).sub(&fi)
        })
        .collect();
    let ord = MonomialOrder::with_priority(OrderKind::Lex, (0..2 * n).collect());
    let gb = buchberger(&gens, &ord);

    let mut inverse_images: Vec<Option<Polynomial>> = vec![None; n];
    for g in &gb {
        let (lm, _) = leading_term_under(g, &ord).expect("basis elements are nonzero");
        let is_xi = (0..n).find(|&i| {
            lm.exp(i) == 1 && lm.total_degree() == 1
        });
        let Some(i) = is_xi else { continue };
        // g = X_i - G_i(Y); the reduced basis guarantees the tail avoids
        // every X_j once each X_j is itself a leading monomial.
        let tail = Polynomial::variable(&big, i).sub(g);
        let mut ok = true;
        let mut image = Polynomial::zero(src);
        for (m, c) in tail.terms() {
            if (0..n).any(|j| m.exp(j) > 0) {
                ok = false;
                break;
            }
            let exps: Vec<u32> = (0..n).map(|j| m.exp(n + j)).collect();
            image.add_term(Monomial::new(exps), c.clone());
        }
        if ok {
            inverse_images[i] = Some(image);
        }
    }
    let images: Option<Vec<Polynomial>> = inverse_images.into_iter().collect();
    let inverse = PolyMap::new(images?).ok()?;
    debug_assert!(map
        .compose(&inverse)
        .is_ok_and(|c| c.is_identity()));
    Some(inverse)
}

/// Monte Carlo fiber degree. Each trial picks a point a in K^n and measures
/// the vector-space dimension of K[X]/(F_1 - a_1, ..., F_n - a_n), the
/// scheme-theoretic fiber size; at generic points this equals the degree of
/// the induced fraction-field extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeomDegreeOutcome {
    /// Majority value over the finite samples; absent when every sample hit
    /// an infinite fiber.
    pub value: Option<u64>,
    pub samples_used: u32,
    /// True when every single trial produced the same finite dimension.
    pub unanimous: bool,
}

pub fn geometric_degree(map: &PolyMap, trials: u32, seed: u64) -> GeomDegreeOutcome {
    assert!(trials >= 1, "geometric_degree needs at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = map.ring();
    let field = map.field();
    let ord = MonomialOrder::grevlex(ring.n_vars());
    let mut finite: Vec<u64> = Vec::new();
    for _ in 0..trials {
        let point: Vec<_> = (0..map.n())
            .map(|_| field.random_element(&mut rng, SAMPLE_HEIGHT))
            .collect();
        let gens: Vec<Polynomial> = map
            .images()
            .iter()
            .zip(&point)
            .map(|(f, a)| f.sub(&Polynomial::constant(ring, a.clone())))
            .collect();
        if let QuotientDimension::Finite(d) = quotient_dimension(&gens, &ord) {
            finite.push(d);
        }
    }
    if finite.is_empty() {
        return GeomDegreeOutcome {
            value: None,
            samples_used: trials,
            unanimous: false,
        };
    }
    // Majority vote, ties resolved toward the smaller dimension.
    let mut counts: Vec<(u64, usize)> = Vec::new();
    for &d in &finite {
        match counts.iter_mut().find(|(v, _)| *v == d) {
            Some((_, c)) => *c += 1,
            None => counts.push((d, 1)),
        }
    }
    counts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let value = counts[0].0;
    GeomDegreeOutcome {
        value: Some(value),
        samples_used: trials,
        unanimous: finite.len() == trials as usize && counts.len() == 1,
    }
}

/// Everything the analyses produce for one map.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub det_jacobian: Polynomial,
    pub det_jacobian_is_unit: bool,
    pub separable: bool,
    pub invertible: bool,
    pub inverse: Option<PolyMap>,
    /// Fiber-degree estimate; absent means every sample was non-generic.
    pub geometric_degree: Option<u64>,
    pub gdeg_unanimous: bool,
    /// Absent while the degree itself is unknown. In characteristic 0 the
    /// divisibility condition is vacuous and recorded as false.
    pub gdeg_divisible_by_p: Option<bool>,
    pub bezout_bound: u64,
    /// The degree bound is only asserted under the separability hypothesis.
    pub bezout_checked: bool,
    pub bezout_ok: Option<bool>,
    pub samples_used: u32,
}

/// True iff the measured geometric degree respects the product-of-degrees
/// bound. Callers must ensure the degree is finite.
pub fn bezout_check(map: &PolyMap, report: &AnalysisReport) -> bool {
    let d = report
        .geometric_degree
        .expect("bezout_check needs a finite geometric degree");
    d <= map.degree_product()
}

pub fn analyze(map: &PolyMap, trials: u32, seed: u64) -> AnalysisReport {
    let (det_jacobian, det_jacobian_is_unit) = det_jacobian_unit(map);
    let separable = separability_check_endo(map);
    let inverse = invert(map);
    let invertible = inverse.is_some();
    let gd = geometric_degree(map, trials, seed);
    let p = map.field().characteristic();
    let gdeg_divisible_by_p = gd.value.map(|d| p != 0 && d % (p) == 0);
    let bezout_bound = map.degree_product();
    let bezout_checked = separable && gd.value.is_some();
    let bezout_ok = bezout_checked.then(|| gd.value.unwrap() <= bezout_bound);

    if invertible {
        assert!(det_jacobian_is_unit, "invertible map with non-unit Jacobian");
        if let Some(d) = gd.value {
            assert_eq!(d, 1, "invertible map with fiber degree {d}");
        }
    }

    AnalysisReport {
        det_jacobian,
        det_jacobian_is_unit,
        separable,
        invertible,
        inverse,
        geometric_degree: gd.value,
        gdeg_unanimous: gd.unanimous,
        gdeg_divisible_by_p,
        bezout_bound,
        bezout_checked,
        bezout_ok,
        samples_used: gd.samples_used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q_ring(vars: &[&str]) -> RingRef {
        PolyRing::new(FieldSpec::rationals(), vars)
    }

    fn triangular_map() -> PolyMap {
        // (X1 + X2^2, X2) over Q.
        let r = q_ring(&["X1", "X2"]);
        let (x1, x2) = (Polynomial::variable(&r, 0), Polynomial::variable(&r, 1));
        PolyMap::new(vec![&x1 + &x2.pow(2), x2]).unwrap()
    }

    fn artin_schreier_map(p: u64) -> PolyMap {
        // X - X^p over F_p.
        let r = PolyRing::new(FieldSpec::prime(p).unwrap(), &["X"]);
        let x = Polynomial::variable(&r, 0);
        PolyMap::new(vec![&x - &x.pow(p as u32)]).unwrap()
    }

    #[test]
    fn construction_rejects_degenerate_maps() {
        let r = q_ring(&["X1", "X2"]);
        let x1 = Polynomial::variable(&r, 0);
        assert_eq!(
            PolyMap::new(vec![x1.clone(), Polynomial::one(&r)]),
            Err(MapError::Degenerate(1))
        );
        assert_eq!(PolyMap::new(vec![]), Err(MapError::Empty));
        assert_eq!(
            PolyMap::new(vec![x1.clone()]),
            Err(MapError::WrongArity { expected: 2, got: 1 })
        );
        let other = q_ring(&["Z"]);
        assert_eq!(
            PolyMap::new(vec![x1, Polynomial::variable(&other, 0)]),
            Err(MapError::MixedRings)
        );
    }

    #[test]
    fn jacobian_unit_examples() {
        let (det, unit) = det_jacobian_unit(&triangular_map());
        assert!(det.is_one());
        assert!(unit);

        let (det, unit) = det_jacobian_unit(&artin_schreier_map(3));
        assert!(det.is_one(), "1 - 3X^2 = 1 in characteristic 3");
        assert!(unit);

        let r = q_ring(&["X"]);
        let x = Polynomial::variable(&r, 0);
        let squaring = PolyMap::new(vec![x.pow(2)]).unwrap();
        let (det, unit) = det_jacobian_unit(&squaring);
        assert_eq!(det, x.scale(&r.field().from_integer(2)));
        assert!(!unit);
    }

    #[test]
    fn separability_of_endomorphisms() {
        assert!(separability_check_endo(&triangular_map()));
        assert!(separability_check_endo(&artin_schreier_map(3)));
        let r = q_ring(&["X"]);
        let x = Polynomial::variable(&r, 0);
        assert!(!separability_check_endo(&PolyMap::new(vec![x.pow(2)]).unwrap()));
    }

    #[test]
    fn separability_of_presented_algebras() {
        // B = A[T]/(T^2 - 1): separable over Q, not over F_2.
        let rq = q_ring(&["T"]);
        let t = Polynomial::variable(&rq, 0);
        let rel = &t.pow(2) - &Polynomial::one(&rq);
        assert_eq!(separability_check_presented(&[], &[rel], &[]), Ok(true));

        let r2 = PolyRing::new(FieldSpec::prime(2).unwrap(), &["T"]);
        let t = Polynomial::variable(&r2, 0);
        let rel = &t.pow(2) - &Polynomial::one(&r2);
        assert_eq!(separability_check_presented(&[], &[rel], &[]), Ok(false));

        // With no relations the check reduces to the endomorphism one.
        let m = triangular_map();
        assert_eq!(
            separability_check_presented(&[], &[], m.images()),
            Ok(true)
        );
    }

    #[test]
    fn invert_triangular_map() {
        let m = triangular_map();
        let inv = invert(&m).expect("triangular maps are invertible");
        let r = m.ring();
        let (x1, x2) = (Polynomial::variable(r, 0), Polynomial::variable(r, 1));
        assert_eq!(inv.images()[0], &x1 - &x2.pow(2));
        assert_eq!(inv.images()[1], x2);
        assert!(m.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&m).unwrap().is_identity());
    }

    #[test]
    fn invert_identity() {
        let r = q_ring(&["X1", "X2", "X3"]);
        let id = PolyMap::identity(&r);
        assert_eq!(invert(&id), Some(id));
    }

    #[test]
    fn additive_p_power_map_is_not_invertible() {
        for p in [2, 3, 5] {
            assert_eq!(invert(&artin_schreier_map(p)), None, "p = {p}");
        }
    }

    #[test]
    fn invert_rejects_non_unit_jacobian_fast() {
        let r = q_ring(&["X"]);
        let x = Polynomial::variable(&r, 0);
        assert_eq!(invert(&PolyMap::new(vec![x.pow(2)]).unwrap()), None);
    }

    #[test]
    fn geometric_degrees() {
        let r = q_ring(&["X1", "X2"]);
        let id = PolyMap::identity(&r);
        let out = geometric_degree(&id, 5, 42);
        assert_eq!(out.value, Some(1));
        assert!(out.unanimous);

        let out = geometric_degree(&artin_schreier_map(3), 7, 42);
        assert_eq!(out.value, Some(3));
        assert!(out.unanimous);

        let out = geometric_degree(&triangular_map(), 7, 42);
        assert_eq!(out.value, Some(1));

        let x1 = Polynomial::variable(&r, 0);
        let x2 = Polynomial::variable(&r, 1);
        let squares = PolyMap::new(vec![x1.pow(2), x2]).unwrap();
        assert_eq!(geometric_degree(&squares, 7, 42).value, Some(2));
    }

    #[test]
    fn analyze_flags_the_counterexample_signature() {
        let report = analyze(&artin_schreier_map(3), 7, 42);
        assert!(report.det_jacobian_is_unit);
        assert!(!report.invertible);
        assert_eq!(report.geometric_degree, Some(3));
        assert_eq!(report.gdeg_divisible_by_p, Some(true));
        assert_eq!(report.bezout_bound, 3);
        assert_eq!(report.bezout_ok, Some(true));
    }

    #[test]
    fn analyze_triangular_map() {
        let report = analyze(&triangular_map(), 7, 42);
        assert!(report.invertible);
        assert_eq!(report.geometric_degree, Some(1));
        assert_eq!(report.gdeg_divisible_by_p, Some(false));
        assert!(bezout_check(&triangular_map(), &report));
    }

    #[test]
    fn analyze_squaring_map() {
        let r = q_ring(&["X"]);
        let x = Polynomial::variable(&r, 0);
        let report = analyze(&PolyMap::new(vec![x.pow(2)]).unwrap(), 7, 42);
        assert!(!report.det_jacobian_is_unit);
        assert!(!report.invertible);
        assert_eq!(report.geometric_degree, Some(2));
        // Not separable, so the degree bound is reported unchecked.
        assert!(!report.bezout_checked);
        assert_eq!(report.bezout_ok, None);
    }
}
