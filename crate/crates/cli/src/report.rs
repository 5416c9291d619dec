//! Serializable report documents. Every field is a JSON-friendly scalar,
//! string, or list; polynomials appear in their canonical display form, so
//! a report round-trips losslessly and serializes byte-identically for
//! fixed inputs and seeds.

use keller_core::analysis::AnalysisReport;
use keller_core::conjecture::{ConjectureInstance, ConjectureVerdict, Implication, Variant};
use keller_core::factor::{Factorization, PrimeVerdict};
use serde::{Deserialize, Serialize};

pub const TOOL_NAME: &str = "keller";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> ToolInfo {
        ToolInfo { name: TOOL_NAME.into(), version: TOOL_VERSION.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub command: String,
    pub seed: u64,
    pub trials: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub field: String,
    pub vars: Vec<String>,
    pub degree_bound: u32,
    pub map: Vec<String>,
}

/// Mirror of [`AnalysisReport`] with polynomials rendered canonically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisSection {
    pub det_jacobian: String,
    pub det_jacobian_is_unit: bool,
    pub separable: bool,
    pub invertible: bool,
    pub inverse: Option<Vec<String>>,
    pub geometric_degree: Option<u64>,
    pub gdeg_unanimous: bool,
    pub gdeg_divisible_by_p: Option<bool>,
    pub bezout_bound: u64,
    pub bezout_checked: bool,
    pub bezout_ok: Option<bool>,
    pub samples_used: u32,
}

impl AnalysisSection {
    pub fn from_report(r: &AnalysisReport) -> AnalysisSection {
        AnalysisSection {
            det_jacobian: r.det_jacobian.to_string(),
            det_jacobian_is_unit: r.det_jacobian_is_unit,
            separable: r.separable,
            invertible: r.invertible,
            inverse: r
                .inverse
                .as_ref()
                .map(|m| m.images().iter().map(|f| f.to_string()).collect()),
            geometric_degree: r.geometric_degree,
            gdeg_unanimous: r.gdeg_unanimous,
            gdeg_divisible_by_p: r.gdeg_divisible_by_p,
            bezout_bound: r.bezout_bound,
            bezout_checked: r.bezout_checked,
            bezout_ok: r.bezout_ok,
            samples_used: r.samples_used,
        }
    }
}

fn implication_name(i: Implication) -> String {
    match i {
        Implication::Holds => "holds".into(),
        Implication::Fails => "fails".into(),
        Implication::Unknown => "unknown".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureSection {
    pub variant: String,
    pub n: usize,
    pub p: u64,
    pub d: u32,
    pub map_id: String,
    pub condition1: bool,
    pub condition2: Option<bool>,
    pub det_jacobian_is_unit: bool,
    pub geometric_degree: Option<u64>,
    pub gdeg_in_p_n: Option<bool>,
    pub gdeg_unanimous: bool,
    pub implication_1_to_2: String,
    pub implication_2_to_1: String,
    pub counterexample: bool,
}

impl ConjectureSection {
    pub fn from_verdict(instance: &ConjectureInstance, v: &ConjectureVerdict) -> ConjectureSection {
        ConjectureSection {
            variant: match instance.variant() {
                Variant::Njc => "NJC".into(),
                Variant::Cjc => "CJC".into(),
            },
            n: instance.n(),
            p: instance.p(),
            d: instance.d(),
            map_id: v.map_id.clone(),
            condition1: v.condition1,
            condition2: v.condition2,
            det_jacobian_is_unit: v.det_jacobian_is_unit,
            geometric_degree: v.geometric_degree,
            gdeg_in_p_n: v.gdeg_in_p_n,
            gdeg_unanimous: v.gdeg_unanimous,
            implication_1_to_2: implication_name(v.implication_1_to_2),
            implication_2_to_1: implication_name(v.implication_2_to_1),
            counterexample: v.counterexample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSample {
    pub sample: String,
    pub verdict: String,
    pub reason: Option<String>,
}

impl PrimeSample {
    pub fn new(sample: &str, verdict: &PrimeVerdict) -> PrimeSample {
        let (verdict, reason) = match verdict {
            PrimeVerdict::Prime => ("prime".into(), None),
            PrimeVerdict::PrimaryNotPrime => ("primary-not-prime".into(), None),
            PrimeVerdict::Neither => ("neither".into(), None),
            PrimeVerdict::SizeRefusal { reason } => ("size-refusal".into(), Some(reason.clone())),
        };
        PrimeSample { sample: sample.into(), verdict, reason }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePreservationSection {
    pub ran: bool,
    pub skipped_reason: Option<String>,
    pub samples: Vec<PrimeSample>,
}

/// Full `analyze` output: analysis, conjecture verdicts, prime-image
/// verdicts, and provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub provenance: Provenance,
    pub input: InputEcho,
    pub analysis: AnalysisSection,
    pub conjecture: Vec<ConjectureSection>,
    pub prime_preservation: PrimePreservationSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepClass {
    pub det_jacobian_is_unit: bool,
    pub invertible: bool,
    pub geometric_degree: Option<u64>,
    pub gdeg_in_p_n: Option<bool>,
    pub representative: String,
    pub members: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub variant: String,
    pub n: usize,
    pub p: u64,
    pub d: u32,
    pub maps_evaluated: u64,
    pub counterexamples: u64,
    pub classes: Vec<SweepClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub tool: ToolInfo,
    pub provenance: Provenance,
    pub budget: u64,
    pub verdicts: Vec<ConjectureSection>,
    pub summaries: Vec<SweepSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertReport {
    pub tool: ToolInfo,
    pub provenance: Provenance,
    pub input: InputEcho,
    pub invertible: bool,
    pub inverse: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub input: String,
    pub unit: Option<String>,
    pub factors: Vec<FactorPower>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPower {
    pub factor: String,
    pub multiplicity: u32,
}

impl FactorEntry {
    pub fn success(input: &str, fz: &Factorization) -> FactorEntry {
        FactorEntry {
            input: input.into(),
            unit: Some(fz.unit.to_string()),
            factors: fz
                .factors
                .iter()
                .map(|(q, m)| FactorPower { factor: q.to_string(), multiplicity: *m })
                .collect(),
            error: None,
        }
    }

    pub fn failure(input: &str, message: String) -> FactorEntry {
        FactorEntry { input: input.into(), unit: None, factors: Vec::new(), error: Some(message) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub tool: ToolInfo,
    pub provenance: Provenance,
    pub input: InputEcho,
    pub images: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryCase {
    pub name: String,
    pub instance: String,
    pub map: String,
    pub expected_condition1: bool,
    pub expected_condition2: bool,
    pub expected_counterexample: bool,
    pub actual_condition1: bool,
    pub actual_condition2: Option<bool>,
    pub actual_counterexample: bool,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryReport {
    pub tool: ToolInfo,
    pub provenance: Provenance,
    pub cases: Vec<RegistryCase>,
    pub all_match: bool,
}

/// Canonical serialized form: pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
