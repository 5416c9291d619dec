//! `keller`: exact analysis of polynomial endomorphisms over Q and F_p.
//!
//! Exit codes: 0 = consistent, 1 = error, 2 = counterexample found.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use keller_core::analysis::{analyze, invert, AnalysisReport};
use keller_core::conjecture::{
    counterexample_registry, evaluate, sweep, verdict_from_report, ConjectureInstance, Variant,
};
use keller_core::factor::{factor, prime_preservation_check, sample_primes, MULTIVARIATE_P_BOUND};
use keller_core::field::FieldSpec;

use keller_cli::mapfile::{parse_map_file, MapFile};
use keller_cli::report::{
    to_json, AnalysisSection, ConjectureSection, FactorEntry, FactorReport, InputEcho,
    InvertReport, PrimePreservationSection, PrimeSample, Provenance, RegistryCase, RegistryReport,
    Report, SweepClass, SweepReport, SweepSummary, ToolInfo,
};

#[derive(Parser)]
#[command(name = "keller", version, about = "Exact analysis of polynomial endomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Fiber samples used for the geometric-degree estimate.
    #[arg(long, global = true, default_value_t = 7)]
    trials: u32,

    /// Seed for every randomized stage; fixed default for reproducibility.
    #[arg(long, global = true, default_value_t = 1729)]
    seed: u64,

    /// Largest enumeration a sweep may attempt.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,

    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Conjecture variants to evaluate.
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Both)]
    variant: VariantArg,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Njc,
    Cjc,
    Both,
}

impl VariantArg {
    fn selected(self) -> Vec<Variant> {
        match self {
            VariantArg::Njc => vec![Variant::Njc],
            VariantArg::Cjc => vec![Variant::Cjc],
            VariantArg::Both => vec![Variant::Njc, Variant::Cjc],
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a map file: jacobian, inversion, degree, prime
    /// images, and conjecture verdicts.
    Analyze { file: PathBuf },
    /// Exhaustively evaluate every map with n images of degree <= d over F_p.
    Sweep { n: usize, p: u64, d: u32 },
    /// Invert the map in a file, if an inverse exists.
    Invert { file: PathBuf },
    /// Factor each image polynomial in a file.
    Factor { file: PathBuf },
    /// Run the curated counterexample suite against its recorded outcomes.
    Registry,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Analyze { file } => run_analyze(&cli, file),
        Command::Sweep { n, p, d } => run_sweep(&cli, *n, *p, *d),
        Command::Invert { file } => run_invert(&cli, file),
        Command::Factor { file } => run_factor(&cli, file),
        Command::Registry => run_registry(&cli),
    }
}

fn load_map_file(path: &PathBuf) -> Result<MapFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_map_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn input_echo(mf: &MapFile) -> InputEcho {
    InputEcho {
        field: mf.field_name(),
        vars: mf.ring.var_names().to_vec(),
        degree_bound: mf.degree_bound,
        map: mf.map.images().iter().map(|f| f.to_string()).collect(),
    }
}

fn provenance(cli: &Cli, command: &str) -> Provenance {
    Provenance { command: command.into(), seed: cli.seed, trials: cli.trials }
}

fn run_analyze(cli: &Cli, path: &PathBuf) -> Result<u8, String> {
    let mf = load_map_file(path)?;
    let field = mf.field();
    let report = analyze(&mf.map, cli.trials, cli.seed);

    let mut sections = Vec::new();
    for variant in cli.variant.selected() {
        let instance = ConjectureInstance::new(mf.map.n(), mf.degree_bound, field, variant)
            .map_err(|e| e.to_string())?;
        let verdict = verdict_from_report(&instance, &mf.map, &report);
        sections.push(ConjectureSection::from_verdict(&instance, &verdict));
    }

    let prime_preservation = prime_stage(&mf, cli.seed)?;

    let doc = Report {
        tool: ToolInfo::current(),
        provenance: provenance(cli, "analyze"),
        input: input_echo(&mf),
        analysis: AnalysisSection::from_report(&report),
        conjecture: sections,
        prime_preservation,
    };

    if cli.json {
        print!("{}", to_json(&doc));
    } else {
        print_analysis_text(&doc, &report);
    }
    Ok(if doc.conjecture.iter().any(|s| s.counterexample) { 2 } else { 0 })
}

/// Prime-image verdicts. File-supplied samples always run (and their
/// failures are hard errors); generated samples are skipped when the field
/// is outside the factorization bounds.
fn prime_stage(mf: &MapFile, seed: u64) -> Result<PrimePreservationSection, String> {
    let p = mf.field().characteristic();
    let samples = if !mf.primes.is_empty() {
        mf.primes.clone()
    } else if p == 0 || p <= MULTIVARIATE_P_BOUND || mf.ring.n_vars() == 1 {
        sample_primes(&mf.ring, 10, seed)
    } else {
        return Ok(PrimePreservationSection {
            ran: false,
            skipped_reason: Some(format!(
                "characteristic {p} is above the factorization bound {MULTIVARIATE_P_BOUND}"
            )),
            samples: Vec::new(),
        });
    };
    let verdicts = prime_preservation_check(&mf.map, &samples, seed).map_err(|e| e.to_string())?;
    let samples = samples
        .iter()
        .zip(&verdicts)
        .map(|(a, v)| PrimeSample::new(&a.to_string(), v))
        .collect();
    Ok(PrimePreservationSection { ran: true, skipped_reason: None, samples })
}

fn print_analysis_text(doc: &Report, report: &AnalysisReport) {
    println!(
        "map over {}, vars {}, degree bound {}",
        doc.input.field,
        doc.input.vars.join(" "),
        doc.input.degree_bound
    );
    for (i, f) in doc.input.map.iter().enumerate() {
        println!("F{} = {}", i + 1, f);
    }
    println!();
    println!("det J = {}", doc.analysis.det_jacobian);
    println!("det J is a unit: {}", doc.analysis.det_jacobian_is_unit);
    println!("separable: {}", doc.analysis.separable);
    match &report.inverse {
        Some(inv) => {
            println!("invertible: true");
            for (i, g) in inv.images().iter().enumerate() {
                println!("  G{} = {}", i + 1, g);
            }
        }
        None => println!("invertible: false"),
    }
    match doc.analysis.geometric_degree {
        Some(g) => println!(
            "geometric degree: {g} ({} over {} samples)",
            if doc.analysis.gdeg_unanimous { "unanimous" } else { "majority" },
            doc.analysis.samples_used
        ),
        None => println!("geometric degree: undetermined"),
    }
    if let Some(in_pn) = doc.analysis.gdeg_divisible_by_p {
        println!("degree divisible by p: {in_pn}");
    }
    println!(
        "bezout bound: {}{}",
        doc.analysis.bezout_bound,
        match doc.analysis.bezout_ok {
            Some(true) => ", satisfied",
            Some(false) => ", violated",
            None => ", not checked",
        }
    );
    println!();
    if doc.prime_preservation.ran {
        println!("prime preservation ({} samples):", doc.prime_preservation.samples.len());
        for s in &doc.prime_preservation.samples {
            match &s.reason {
                Some(reason) => println!("  {} -> {} ({reason})", s.sample, s.verdict),
                None => println!("  {} -> {}", s.sample, s.verdict),
            }
        }
    } else if let Some(reason) = &doc.prime_preservation.skipped_reason {
        println!("prime preservation skipped: {reason}");
    }
    println!();
    for s in &doc.conjecture {
        println!("{}: {}", instance_label(s), status_label(s));
    }
}

fn instance_label(s: &ConjectureSection) -> String {
    let field = if s.p == 0 { "Q".to_string() } else { format!("F_{}", s.p) };
    format!("{}({}, {}, {}, {})", s.variant, s.n, s.p, s.d, field)
}

fn status_label(s: &ConjectureSection) -> String {
    let core = if s.counterexample {
        "counterexample"
    } else if s.implication_2_to_1 == "unknown" {
        "undecided"
    } else {
        "consistent"
    };
    format!(
        "{core}  [condition1: {}, condition2: {}, 1=>2 {}, 2=>1 {}]",
        s.condition1,
        s.condition2.map_or("unknown".to_string(), |b| b.to_string()),
        s.implication_1_to_2,
        s.implication_2_to_1
    )
}

fn plural(n: u64, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else if word.ends_with('s') {
        format!("{n} {word}es")
    } else {
        format!("{n} {word}s")
    }
}

fn run_sweep(cli: &Cli, n: usize, p: u64, d: u32) -> Result<u8, String> {
    let field = FieldSpec::prime(p).map_err(|e| e.to_string())?;
    let mut verdict_sections = Vec::new();
    let mut summaries = Vec::new();

    for variant in cli.variant.selected() {
        let instance =
            ConjectureInstance::new(n, d, field, variant).map_err(|e| e.to_string())?;
        let verdicts =
            sweep(&instance, cli.budget as u128, cli.trials, cli.seed).map_err(|e| e.to_string())?;

        if !cli.json {
            println!("sweep {instance}: {} maps evaluated", verdicts.len());
            for v in &verdicts {
                let tag = if v.counterexample { "counterexample" } else { "consistent" };
                println!("  {} {}", tag, v.map_id);
            }
        }

        let sections: Vec<ConjectureSection> =
            verdicts.iter().map(|v| ConjectureSection::from_verdict(&instance, v)).collect();

        let mut classes: Vec<SweepClass> = Vec::new();
        for s in sections.iter().filter(|s| s.counterexample) {
            let key = (s.det_jacobian_is_unit, s.condition1, s.geometric_degree, s.gdeg_in_p_n);
            match classes.iter_mut().find(|c| {
                (c.det_jacobian_is_unit, c.invertible, c.geometric_degree, c.gdeg_in_p_n) == key
            }) {
                Some(c) => c.members += 1,
                None => classes.push(SweepClass {
                    det_jacobian_is_unit: s.det_jacobian_is_unit,
                    invertible: s.condition1,
                    geometric_degree: s.geometric_degree,
                    gdeg_in_p_n: s.gdeg_in_p_n,
                    representative: s.map_id.clone(),
                    members: 1,
                }),
            }
        }
        let summary = SweepSummary {
            variant: match variant {
                Variant::Njc => "NJC".into(),
                Variant::Cjc => "CJC".into(),
            },
            n,
            p,
            d,
            maps_evaluated: sections.len() as u64,
            counterexamples: sections.iter().filter(|s| s.counterexample).count() as u64,
            classes,
        };
        if !cli.json {
            println!(
                "summary {instance}: {} maps, {}, {}",
                summary.maps_evaluated,
                plural(summary.counterexamples, "counterexample"),
                plural(summary.classes.len() as u64, "class")
            );
            for c in &summary.classes {
                println!(
                    "  class det J unit: {}, invertible: {}, gdeg: {}, in pN: {}  e.g. {} ({} maps)",
                    c.det_jacobian_is_unit,
                    c.invertible,
                    c.geometric_degree.map_or("?".to_string(), |g| g.to_string()),
                    c.gdeg_in_p_n.map_or("?".to_string(), |b| b.to_string()),
                    c.representative,
                    c.members
                );
            }
        }
        verdict_sections.extend(sections);
        summaries.push(summary);
    }

    let any_counterexample = summaries.iter().any(|s| s.counterexamples > 0);
    if cli.json {
        let doc = SweepReport {
            tool: ToolInfo::current(),
            provenance: provenance(cli, "sweep"),
            budget: cli.budget,
            verdicts: verdict_sections,
            summaries,
        };
        print!("{}", to_json(&doc));
    }
    Ok(if any_counterexample { 2 } else { 0 })
}

fn run_invert(cli: &Cli, path: &PathBuf) -> Result<u8, String> {
    let mf = load_map_file(path)?;
    let inverse = invert(&mf.map);
    let doc = InvertReport {
        tool: ToolInfo::current(),
        provenance: provenance(cli, "invert"),
        input: input_echo(&mf),
        invertible: inverse.is_some(),
        inverse: inverse
            .as_ref()
            .map(|m| m.images().iter().map(|f| f.to_string()).collect()),
    };
    if cli.json {
        print!("{}", to_json(&doc));
    } else {
        match &inverse {
            Some(inv) => {
                for (i, g) in inv.images().iter().enumerate() {
                    println!("G{} = {}", i + 1, g);
                }
            }
            None => println!("not invertible"),
        }
    }
    Ok(0)
}

fn run_factor(cli: &Cli, path: &PathBuf) -> Result<u8, String> {
    let mf = load_map_file(path)?;
    let mut entries = Vec::new();
    let mut failures = 0u32;
    for f in mf.map.images() {
        let input = f.to_string();
        match factor(f, cli.seed) {
            Ok(fz) => entries.push(FactorEntry::success(&input, &fz)),
            Err(e) => {
                failures += 1;
                entries.push(FactorEntry::failure(&input, e.to_string()));
            }
        }
    }
    let doc = FactorReport {
        tool: ToolInfo::current(),
        provenance: provenance(cli, "factor"),
        input: input_echo(&mf),
        images: entries,
    };
    if cli.json {
        print!("{}", to_json(&doc));
    } else {
        for (i, entry) in doc.images.iter().enumerate() {
            match &entry.error {
                Some(message) => println!("F{} = {}: {message}", i + 1, entry.input),
                None => {
                    let mut parts = Vec::new();
                    let unit = entry.unit.as_deref().unwrap_or("1");
                    if unit != "1" || entry.factors.is_empty() {
                        parts.push(unit.to_string());
                    }
                    for fp in &entry.factors {
                        if fp.multiplicity == 1 {
                            parts.push(format!("({})", fp.factor));
                        } else {
                            parts.push(format!("({})^{}", fp.factor, fp.multiplicity));
                        }
                    }
                    println!("F{} = {}", i + 1, parts.join(" * "));
                }
            }
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn run_registry(cli: &Cli) -> Result<u8, String> {
    let mut cases = Vec::new();
    for entry in counterexample_registry() {
        let verdict =
            evaluate(&entry.instance, &entry.map, cli.trials, cli.seed).map_err(|e| e.to_string())?;
        let matches = verdict.condition1 == entry.expected_condition1
            && verdict.condition2 == Some(entry.expected_condition2)
            && verdict.counterexample == entry.expected_counterexample;
        cases.push(RegistryCase {
            name: entry.name.into(),
            instance: entry.instance.to_string(),
            map: verdict.map_id.clone(),
            expected_condition1: entry.expected_condition1,
            expected_condition2: entry.expected_condition2,
            expected_counterexample: entry.expected_counterexample,
            actual_condition1: verdict.condition1,
            actual_condition2: verdict.condition2,
            actual_counterexample: verdict.counterexample,
            matches,
        });
    }
    let all_match = cases.iter().all(|c| c.matches);
    let doc = RegistryReport {
        tool: ToolInfo::current(),
        provenance: provenance(cli, "registry"),
        cases,
        all_match,
    };
    if cli.json {
        print!("{}", to_json(&doc));
    } else {
        for c in &doc.cases {
            let mark = if c.matches { "ok" } else { "MISMATCH" };
            println!("{mark} {} {} {}", c.name, c.instance, c.map);
        }
        println!(
            "{} of {} cases match their recorded outcomes",
            doc.cases.iter().filter(|c| c.matches).count(),
            doc.cases.len()
        );
    }
    // A mismatch means the toolchain no longer reproduces known results.
    Ok(if all_match { 0 } else { 1 })
}
