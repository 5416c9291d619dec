//! Harness for the two endomorphism conjectures on exact fields.
//!
//! An instance fixes (n, p, d, K) and a variant. Condition 1 is the
//! Gröbner inversion certificate; condition 2 is "det J is a unit", with
//! the full variant also requiring the geometric degree to avoid pN. The
//! harness evaluates single maps, runs exhaustive sweeps over all maps of
//! bounded degree over a finite field, and carries a curated registry of
//! known outcomes.

use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::{analyze, AnalysisReport, MapError, PolyMap};
use crate::field::FieldSpec;
use crate::poly::{Monomial, Polynomial, PolyRing, RingRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Full statement: condition 2 includes the degree-divisibility clause.
    Cjc,
    /// Weakened statement: only the Jacobian unit condition.
    Njc,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Cjc => write!(f, "CJC"),
            Variant::Njc => write!(f, "NJC"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureInstance {
    n: usize,
    p: u64,
    d: u32,
    field: FieldSpec,
    variant: Variant,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("invalid instance: {reason}")]
    InvalidInstance { reason: String },
    #[error("map does not match the instance: {reason}")]
    InstanceMismatch { reason: String },
    #[error("sweeps require a finite field")]
    InfiniteField,
    #[error("sweep needs {} map evaluations, budget allows {budget}", fmt_required(.required))]
    BudgetExceeded { required: u128, budget: u128 },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// `u128::MAX` is the overflow sentinel from `checked_pow`, never an exact
/// requirement (no prime power equals 2^128 - 1).
fn fmt_required(required: &u128) -> String {
    if *required == u128::MAX {
        "more than 2^128".into()
    } else {
        required.to_string()
    }
}

impl ConjectureInstance {
    pub fn new(
        n: usize,
        d: u32,
        field: FieldSpec,
        variant: Variant,
    ) -> Result<Self, ConjectureError> {
        if n == 0 {
            return Err(ConjectureError::InvalidInstance { reason: "n must be at least 1".into() });
        }
        if d == 0 {
            return Err(ConjectureError::InvalidInstance { reason: "d must be at least 1".into() });
        }
        let p = field.characteristic();
        Ok(ConjectureInstance { n, p, d, field, variant })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

impl std::fmt::Display for ConjectureInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let field = if self.p == 0 { "Q".to_string() } else { format!("F_{}", self.p) };
        write!(f, "{}({}, {}, {}, {})", self.variant, self.n, self.p, self.d, field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implication {
    Holds,
    Fails,
    /// The premise could not be evaluated confidently (low-confidence
    /// geometric degree).
    Unknown,
}

/// Outcome of evaluating one map against one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureVerdict {
    /// Human-readable map identifier: the image list.
    pub map_id: String,
    /// Condition 1: the map is an automorphism (inversion certificate).
    pub condition1: bool,
    /// Condition 2, assembled per variant; None only if the geometric
    /// degree stayed unknown on a non-invertible map under the full
    /// variant.
    pub condition2: Option<bool>,
    pub det_jacobian_is_unit: bool,
    pub geometric_degree: Option<u64>,
    pub gdeg_in_p_n: Option<bool>,
    pub gdeg_unanimous: bool,
    pub implication_1_to_2: Implication,
    pub implication_2_to_1: Implication,
    pub counterexample: bool,
}

fn map_identifier(map: &PolyMap) -> String {
    let images: Vec<String> = map.images().iter().map(|f| f.to_string()).collect();
    format!("({})", images.join(", "))
}

/// Evaluate one map against an instance. The report's sampled geometric
/// degree feeds the divisibility clause; an inversion certificate replaces
/// sampling entirely (fibers of an automorphism are single points).
pub fn evaluate(
    instance: &ConjectureInstance,
    map: &PolyMap,
    trials: u32,
    seed: u64,
) -> Result<ConjectureVerdict, ConjectureError> {
    if map.n() != instance.n {
        return Err(ConjectureError::InstanceMismatch {
            reason: format!("map has {} coordinates, instance wants {}", map.n(), instance.n),
        });
    }
    if map.field() != instance.field {
        return Err(ConjectureError::InstanceMismatch {
            reason: "coefficient field differs from the instance field".into(),
        });
    }
    if map.max_degree() > instance.d {
        return Err(ConjectureError::InstanceMismatch {
            reason: format!(
                "map degree {} exceeds the instance bound {}",
                map.max_degree(),
                instance.d
            ),
        });
    }
    let report = analyze(map, trials, seed);
    Ok(verdict_from_report(instance, map, &report))
}

pub fn verdict_from_report(
    instance: &ConjectureInstance,
    map: &PolyMap,
    report: &AnalysisReport,
) -> ConjectureVerdict {
    let condition1 = report.invertible;
    let mut gdeg_in_p_n = report.gdeg_divisible_by_p;
    let mut geometric_degree = report.geometric_degree;
    let mut unanimous = report.gdeg_unanimous;
    if condition1 {
        // Certificate-derived: an automorphism has one-point fibers, so the
        // degree is 1 regardless of how sampling went.
        geometric_degree = Some(1);
        gdeg_in_p_n = Some(false);
        unanimous = true;
    }
    let condition2 = match instance.variant {
        Variant::Njc => Some(report.det_jacobian_is_unit),
        Variant::Cjc => {
            if !report.det_jacobian_is_unit {
                // False regardless of the degree clause.
                Some(false)
            } else {
                gdeg_in_p_n.map(|in_pn| !in_pn)
            }
        }
    };

    let implication_1_to_2 = if !condition1 {
        Implication::Holds
    } else {
        match condition2 {
            Some(true) => Implication::Holds,
            Some(false) => Implication::Fails,
            None => unreachable!("condition 1 pins the geometric degree"),
        }
    };

    // The degree clause only carries confidence information when it was
    // actually consulted.
    let degree_clause_used =
        instance.variant == Variant::Cjc && report.det_jacobian_is_unit && !condition1;
    let implication_2_to_1 = match condition2 {
        Some(false) => Implication::Holds,
        Some(true) if condition1 => Implication::Holds,
        Some(true) => {
            if degree_clause_used && !unanimous {
                Implication::Unknown
            } else {
                Implication::Fails
            }
        }
        None => Implication::Unknown,
    };

    let counterexample = matches!(
        (condition1, condition2),
        (false, Some(true)) | (true, Some(false))
    ) && implication_2_to_1 != Implication::Unknown;

    ConjectureVerdict {
        map_id: map_identifier(map),
        condition1,
        condition2,
        det_jacobian_is_unit: report.det_jacobian_is_unit,
        geometric_degree,
        gdeg_in_p_n,
        gdeg_unanimous: unanimous,
        implication_1_to_2,
        implication_2_to_1,
        counterexample,
    }
}

/// Monomials of total degree ≤ d in n variables, in a fixed canonical
/// order (ascending under the intrinsic monomial order).
fn coefficient_basis(n: usize, d: u32) -> Vec<Monomial> {
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
    rec(0, d, &mut exps, &mut out);
    out.sort();
    out
}

fn checked_pow(p: u128, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// Decode one enumeration index into a map. Coefficients run over the
/// canonical basis, image by image, least significant coordinate first.
fn decode_map(
    ring: &RingRef,
    basis: &[Monomial],
    n: usize,
    p: u64,
    mut index: u128,
) -> Option<PolyMap> {
    let field = ring.field();
    let mut images = Vec::with_capacity(n);
    for _ in 0..n {
        let mut f = Polynomial::zero(ring);
        for m in basis {
            let c = (index % p as u128) as u64;
            index /= p as u128;
            if c != 0 {
                f.add_term(m.clone(), field.from_integer(c as i64));
            }
        }
        images.push(f);
    }
    PolyMap::new(images).ok()
}

/// Canonical variable names for sweep rings: X1, X2, ...
fn sweep_ring(field: FieldSpec, n: usize) -> RingRef {
    let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    PolyRing::with_names(field, names)
}

/// Exhaustively evaluate every map with n coordinate images of degree ≤ d
/// over F_p. Degenerate tuples (a constant image) are skipped. Verdicts
/// come back with counterexamples first, canonical enumeration order
/// within each group.
pub fn sweep(
    instance: &ConjectureInstance,
    budget: u128,
    trials: u32,
    seed: u64,
) -> Result<Vec<ConjectureVerdict>, ConjectureError> {
    sweep_with_options(instance, budget, trials, seed, false)
}

pub fn sweep_with_options(
    instance: &ConjectureInstance,
    budget: u128,
    trials: u32,
    seed: u64,
    dedup_permutations: bool,
) -> Result<Vec<ConjectureVerdict>, ConjectureError> {
    if instance.p == 0 {
        return Err(ConjectureError::InfiniteField);
    }
    let basis = coefficient_basis(instance.n, instance.d);
    let coeff_count = (basis.len() * instance.n) as u32;
    let required = checked_pow(instance.p as u128, coeff_count)
        .ok_or(ConjectureError::BudgetExceeded { required: u128::MAX, budget })?;
    if required > budget {
        return Err(ConjectureError::BudgetExceeded { required, budget });
    }

    let ring = sweep_ring(instance.field, instance.n);
    let total = required;
    let verdicts: Vec<ConjectureVerdict> = (0..total as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let map = decode_map(&ring, &basis, instance.n, instance.p, idx as u128)?;
            if dedup_permutations && !is_permutation_minimal(&map, &basis, instance.p) {
                return None;
            }
            // Same seed for every map keeps the sweep reproducible.
            evaluate(instance, &map, trials, seed).ok()
        })
        .collect();

    let (mut cex, rest): (Vec<_>, Vec<_>) =
        verdicts.into_iter().partition(|v| v.counterexample);
    cex.extend(rest);
    Ok(cex)
}

/// Encoding of a map as its canonical coefficient index, used to pick one
/// representative per coordinate-permutation orbit.
fn encode_map(map: &PolyMap, basis: &[Monomial], p: u64) -> u128 {
    let mut digits: Vec<u64> = Vec::with_capacity(basis.len() * map.n());
    for f in map.images() {
        for m in basis {
            digits.push(f.coefficient(m).residue());
        }
    }
    let mut acc: u128 = 0;
    for &c in digits.iter().rev() {
        acc = acc * p as u128 + c as u128;
    }
    acc
}

/// A map is the orbit representative iff no simultaneous permutation of
/// coordinates and variables produces a smaller encoding.
fn is_permutation_minimal(map: &PolyMap, basis: &[Monomial], p: u64) -> bool {
    let n = map.n();
    if n == 1 {
        return true;
    }
    let own = encode_map(map, basis, p);
    let ring = map.ring().clone();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm.iter().enumerate().any(|(i, &j)| i != j) {
            // Conjugated map: sigma o F o sigma^{-1}.
            let renamed: Vec<Polynomial> = (0..n)
                .map(|i| {
                    let src = &map.images()[perm[i]];
                    let images: Vec<Polynomial> =
                        perm.iter().map(|&j| Polynomial::variable(&ring, j)).collect();
                    src.substitute(&images)
                })
                .collect();
            if let Ok(candidate) = PolyMap::new(renamed) {
                if encode_map(&candidate, basis, p) < own {
                    return false;
                }
            }
        }
        if !next_permutation(&mut perm) {
            return true;
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// One curated regression case.
#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub instance: ConjectureInstance,
    pub map: PolyMap,
    pub expected_condition1: bool,
    pub expected_condition2: bool,
    pub expected_counterexample: bool,
}

/// Built-in curated cases with their known outcomes.
pub fn counterexample_registry() -> Vec<RegistryEntry> {
    let mut out = Vec::new();

    // X - X^p over F_p: det J = 1, not injective, geometric degree p.
    for p in [2u64, 3, 5] {
        let field = FieldSpec::prime(p).unwrap();
        let ring = PolyRing::new(field, &["X"]);
        let img = Polynomial::variable(&ring, 0)
            .sub(&Polynomial::variable(&ring, 0).pow(p as u32));
        let map = PolyMap::new(vec![img]).unwrap();
        out.push(RegistryEntry {
            name: "additive-polynomial-njc",
            instance: ConjectureInstance::new(1, p as u32, field, Variant::Njc).unwrap(),
            map: map.clone(),
            expected_condition1: false,
            expected_condition2: true,
            expected_counterexample: true,
        });
        out.push(RegistryEntry {
            name: "additive-polynomial-cjc",
            instance: ConjectureInstance::new(1, p as u32, field, Variant::Cjc).unwrap(),
            map,
            expected_condition1: false,
            expected_condition2: false,
            expected_counterexample: false,
        });
    }

    // Identity maps are consistent everywhere.
    {
        let field = FieldSpec::rationals();
        let ring = PolyRing::new(field, &["X1", "X2"]);
        let map = PolyMap::identity(&ring);
        out.push(RegistryEntry {
            name: "identity-q",
            instance: ConjectureInstance::new(2, 1, field, Variant::Njc).unwrap(),
            map,
            expected_condition1: true,
            expected_condition2: true,
            expected_counterexample: false,
        });
        let f5 = FieldSpec::prime(5).unwrap();
        let ring5 = PolyRing::new(f5, &["X1", "X2"]);
        out.push(RegistryEntry {
            name: "identity-f5",
            instance: ConjectureInstance::new(2, 1, f5, Variant::Cjc).unwrap(),
            map: PolyMap::identity(&ring5),
            expected_condition1: true,
            expected_condition2: true,
            expected_counterexample: false,
        });
    }

    // Triangular automorphisms.
    {
        let field = FieldSpec::rationals();
        let ring = PolyRing::new(field, &["X1", "X2"]);
        let f1 = Polynomial::variable(&ring, 0).add(&Polynomial::variable(&ring, 1).pow(2));
        let f2 = Polynomial::variable(&ring, 1);
        let map = PolyMap::new(vec![f1, f2]).unwrap();
        out.push(RegistryEntry {
            name: "triangular-q",
            instance: ConjectureInstance::new(2, 2, field, Variant::Cjc).unwrap(),
            map,
            expected_condition1: true,
            expected_condition2: true,
            expected_counterexample: false,
        });
        let f7 = FieldSpec::prime(7).unwrap();
        let ring7 = PolyRing::new(f7, &["X1", "X2"]);
        let g1 = Polynomial::variable(&ring7, 0).add(&Polynomial::variable(&ring7, 1).pow(2));
        let g2 = Polynomial::variable(&ring7, 1);
        out.push(RegistryEntry {
            name: "triangular-f7",
            instance: ConjectureInstance::new(2, 2, f7, Variant::Njc).unwrap(),
            map: PolyMap::new(vec![g1, g2]).unwrap(),
            expected_condition1: true,
            expected_condition2: true,
            expected_counterexample: false,
        });
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn artin_schreier(p: u64) -> (ConjectureInstance, ConjectureInstance, PolyMap) {
        let field = FieldSpec::prime(p).unwrap();
        let ring = PolyRing::new(field, &["X"]);
        let img = Polynomial::variable(&ring, 0)
            .sub(&Polynomial::variable(&ring, 0).pow(p as u32));
        let map = PolyMap::new(vec![img]).unwrap();
        let njc = ConjectureInstance::new(1, p as u32, field, Variant::Njc).unwrap();
        let cjc = ConjectureInstance::new(1, p as u32, field, Variant::Cjc).unwrap();
        (njc, cjc, map)
    }

    #[test]
    fn additive_polynomial_is_njc_counterexample_but_not_cjc() {
        let (njc, cjc, map) = artin_schreier(3);
        let vn = evaluate(&njc, &map, 24, 7).unwrap();
        assert!(!vn.condition1);
        assert_eq!(vn.condition2, Some(true));
        assert!(vn.det_jacobian_is_unit);
        assert_eq!(vn.geometric_degree, Some(3));
        assert!(vn.counterexample);
        assert_eq!(vn.implication_1_to_2, Implication::Holds);
        assert_eq!(vn.implication_2_to_1, Implication::Fails);

        let vc = evaluate(&cjc, &map, 24, 7).unwrap();
        assert_eq!(vc.condition2, Some(false));
        assert_eq!(vc.gdeg_in_p_n, Some(true));
        assert!(!vc.counterexample);
        assert_eq!(vc.implication_2_to_1, Implication::Holds);
    }

    #[test]
    fn triangular_automorphism_is_consistent() {
        let field = FieldSpec::rationals();
        let ring = PolyRing::new(field, &["X1", "X2"]);
        let f1 = Polynomial::variable(&ring, 0).add(&Polynomial::variable(&ring, 1).pow(2));
        let f2 = Polynomial::variable(&ring, 1);
        let map = PolyMap::new(vec![f1, f2]).unwrap();
        let inst = ConjectureInstance::new(2, 2, field, Variant::Cjc).unwrap();
        let v = evaluate(&inst, &map, 8, 3).unwrap();
        assert!(v.condition1);
        assert_eq!(v.condition2, Some(true));
        assert!(!v.counterexample);
        assert_eq!(v.geometric_degree, Some(1));
    }

    #[test]
    fn instance_mismatch_is_an_error() {
        let field = FieldSpec::rationals();
        let ring = PolyRing::new(field, &["X1", "X2"]);
        let map = PolyMap::identity(&ring);
        let inst = ConjectureInstance::new(1, 1, field, Variant::Njc).unwrap();
        assert!(matches!(
            evaluate(&inst, &map, 4, 0),
            Err(ConjectureError::InstanceMismatch { .. })
        ));
        let f5 = FieldSpec::prime(5).unwrap();
        let inst5 = ConjectureInstance::new(2, 1, f5, Variant::Njc).unwrap();
        assert!(matches!(
            evaluate(&inst5, &map, 4, 0),
            Err(ConjectureError::InstanceMismatch { .. })
        ));
    }

    #[test]
    fn sweep_njc_f2_finds_the_additive_signature() {
        let field = FieldSpec::prime(2).unwrap();
        let inst = ConjectureInstance::new(1, 2, field, Variant::Njc).unwrap();
        let verdicts = sweep(&inst, 1_000, 16, 11).unwrap();
        // 8 coefficient vectors, 6 with nonconstant image.
        assert_eq!(verdicts.len(), 6);
        // X^2 + X and its constant shift are the two violations: unit
        // derivative, two-point fibers.
        let cex: Vec<&ConjectureVerdict> =
            verdicts.iter().filter(|v| v.counterexample).collect();
        assert_eq!(cex.len(), 2);
        for v in &cex {
            assert!(v.map_id.contains("X1^2"));
            assert!(v.det_jacobian_is_unit);
            assert_eq!(v.geometric_degree, Some(2));
        }
        // Counterexamples sort first.
        assert!(verdicts[0].counterexample && verdicts[1].counterexample);
        assert!(verdicts[2..].iter().all(|v| !v.counterexample));
    }

    #[test]
    fn sweep_cjc_f2_is_clean() {
        let field = FieldSpec::prime(2).unwrap();
        let inst = ConjectureInstance::new(1, 2, field, Variant::Cjc).unwrap();
        let verdicts = sweep(&inst, 1_000, 16, 11).unwrap();
        assert!(verdicts.iter().all(|v| !v.counterexample));
    }

    #[test]
    fn sweep_njc_f3_degree2_is_clean() {
        // d = 2 < p = 3: a unit derivative forces an affine map.
        let field = FieldSpec::prime(3).unwrap();
        let inst = ConjectureInstance::new(1, 2, field, Variant::Njc).unwrap();
        let verdicts = sweep(&inst, 1_000, 16, 11).unwrap();
        assert!(verdicts.iter().all(|v| !v.counterexample));
        assert!(verdicts.iter().all(|v| v.implication_1_to_2 == Implication::Holds));
    }

    #[test]
    fn sweep_budget_refusal_reports_required_size() {
        let field = FieldSpec::prime(101).unwrap();
        let inst = ConjectureInstance::new(1, 3, field, Variant::Njc).unwrap();
        match sweep(&inst, 10_000, 4, 0) {
            Err(ConjectureError::BudgetExceeded { required, budget }) => {
                assert_eq!(budget, 10_000);
                // 4 monomials of degree <= 3 in one variable.
                assert_eq!(required, 101u128.pow(4));
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
        // Enumeration sizes beyond u128 are still a clean refusal.
        let wide = ConjectureInstance::new(3, 4, field, Variant::Njc).unwrap();
        assert!(matches!(
            sweep(&wide, u128::MAX, 4, 0),
            Err(ConjectureError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sweep_is_deterministic() {
        let field = FieldSpec::prime(3).unwrap();
        let inst = ConjectureInstance::new(1, 3, field, Variant::Njc).unwrap();
        let a = sweep(&inst, 1_000, 12, 5).unwrap();
        let b = sweep(&inst, 1_000, 12, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn soundness_direction_on_sweeps() {
        for (p, d) in [(2u64, 2u32), (3, 2), (3, 3)] {
            let field = FieldSpec::prime(p).unwrap();
            for variant in [Variant::Njc, Variant::Cjc] {
                let inst = ConjectureInstance::new(1, d, field, variant).unwrap();
                let verdicts = sweep(&inst, 10_000, 16, 11).unwrap();
                for v in &verdicts {
                    assert_ne!(
                        v.implication_1_to_2,
                        Implication::Fails,
                        "map {} violates the proven direction",
                        v.map_id
                    );
                }
            }
        }
    }

    #[test]
    fn registry_entries_match_their_expected_outcomes() {
        for entry in counterexample_registry() {
            let v = evaluate(&entry.instance, &entry.map, 24, 7).unwrap();
            assert_eq!(v.condition1, entry.expected_condition1, "{}", entry.name);
            assert_eq!(v.condition2, Some(entry.expected_condition2), "{}", entry.name);
            assert_eq!(v.counterexample, entry.expected_counterexample, "{}", entry.name);
        }
    }

    #[test]
    fn dedup_keeps_orbit_representatives() {
        let field = FieldSpec::prime(2).unwrap();
        let inst = ConjectureInstance::new(2, 1, field, Variant::Njc).unwrap();
        let raw = sweep(&inst, 100_000, 8, 3).unwrap();
        let deduped = sweep_with_options(&inst, 100_000, 8, 3, true).unwrap();
        assert!(deduped.len() < raw.len());
        // (X1, X1 + X2) is conjugate to (X1 + X2, X2), which encodes
        // smaller, so only the latter survives deduplication.
        assert!(raw.iter().any(|v| v.map_id == "(X1, X1 + X2)"));
        assert!(raw.iter().any(|v| v.map_id == "(X1 + X2, X2)"));
        assert!(!deduped.iter().any(|v| v.map_id == "(X1, X1 + X2)"));
        assert!(deduped.iter().any(|v| v.map_id == "(X1 + X2, X2)"));
    }
}
