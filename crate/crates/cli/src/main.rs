//! Command-line front door: analyze loop tables, compute central series,
//! verify the structural law battery, emit identity bases, check identities
//! and decompose words.
//!
//! Exit codes: 0 when all checks pass (or the verdict holds), 1 when a check
//! failed or an identity was refuted, 2 on usage or input errors.

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use loopforge::analysis::{analyze, LoopAnalysis};
use loopforge::calculus::CaKind;
use loopforge::catalog;
use loopforge::cayley::CayleyLoop;
use loopforge::error::LoopError;
use loopforge::laws::lemma_battery;
use loopforge::report::{all_passed, CheckRecord};
use loopforge::series::{
    nilpotency_class_cross_validated, series_report, verify_structure, StructureReport,
};
use loopforge::terms::{
    basis_for_class, check_decomposition, decompose, holds_identity, parse_term, print_term,
    print_term_macros, IdentityVerdict, WordKind, DEFAULT_BUDGET,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "loopforge", version, about = "Finite loop calculus on Cayley tables")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mu,
    Alpha,
    Beta,
    AlphaBeta,
}

impl KindArg {
    fn word_kind(self) -> WordKind {
        match self {
            KindArg::Mu => WordKind::Mu,
            KindArg::Alpha => WordKind::Alpha,
            KindArg::Beta => WordKind::Beta,
            KindArg::AlphaBeta => WordKind::AlphaBeta,
        }
    }

    fn ca_kind(self) -> CaKind {
        self.word_kind().ca_kind()
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a loop: property flags, nuclei, centre, series, law checks.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Compute the central series and nilpotency class.
    Series {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "alpha-beta")]
        kind: KindArg,
        /// Also validate the class against the vanishing of weight-graded
        /// word sets (costlier).
        #[arg(long)]
        cross_validate: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the structural verification battery on a loop.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the identity basis for central nilpotency of the given class.
    Basis {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        class: usize,
        /// Print with macro operators folded back in.
        #[arg(long)]
        macros: bool,
    },
    /// Check whether a term is an identity of a loop.
    Check {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Decompose a word into a residual and peel-off factors.
    Decompose {
        #[arg(long)]
        term: String,
        #[arg(long)]
        t: u32,
        /// Print with macro operators folded back in.
        #[arg(long)]
        macros: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the built-in fixtures, or write them as table files.
    Catalog {
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("LOOPFORGE_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_BUDGET)
}

fn load_loop(path: &Path) -> anyhow::Result<CayleyLoop> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "loop".into());
    Ok(CayleyLoop::parse_table(&text)?.with_name(name))
}

fn print_records_text(records: &[CheckRecord]) {
    for r in records {
        println!("{}", r.render_text());
    }
}

fn render_analysis_text(a: &LoopAnalysis) {
    println!(
        "loop {} of order {}, identity at index {}",
        a.name.as_deref().unwrap_or("?"),
        a.order,
        a.identity
    );
    let p = &a.properties;
    println!(
        "properties: group={} commutative={} two-sided-inverses={} IP={} moufang={} a-loop={} power-associative={} diassociative={} alternative={}",
        p.group,
        p.commutative,
        p.two_sided_inverses,
        p.inverse_property,
        p.moufang,
        p.a_loop,
        p.power_associative,
        p.diassociative,
        p.alternative
    );
    println!(
        "moufang forms: left={} right={} middle={} (agreement: {})",
        a.moufang_forms.left_witness.is_none(),
        a.moufang_forms.right_witness.is_none(),
        a.moufang_forms.middle_witness.is_none(),
        a.moufang_forms.agreement
    );
    if let Some(w) = a.moufang_forms.left_witness {
        println!("  left witness: x={} y={} z={}", w[0], w[1], w[2]);
    }
    println!(
        "nuclei: left={:?} middle={:?} right={:?} nucleus={:?}",
        a.nucleus_left, a.nucleus_middle, a.nucleus_right, a.nucleus
    );
    println!("center: {:?}", a.center);
    println!(
        "multiplication group order {}, inner mapping group order {}",
        a.multiplication_group_order, a.inner_mapping_group_order
    );
    println!(
        "lower series sizes: {:?}",
        a.series.lower.iter().map(|m| m.len()).collect::<Vec<_>>()
    );
    println!(
        "upper series sizes: {:?}",
        a.series.upper.iter().map(|m| m.len()).collect::<Vec<_>>()
    );
    match a.series.class {
        Some(c) => println!("centrally nilpotent of class {}", c),
        None => println!("not centrally nilpotent"),
    }
    print_records_text(&a.checks);
}

#[derive(Serialize)]
struct SeriesOut {
    name: Option<String>,
    order: usize,
    kind: String,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    class: Option<usize>,
    cross_validated: Option<bool>,
}

#[derive(Serialize)]
struct VerifyOut {
    name: Option<String>,
    order: usize,
    class: Option<usize>,
    lower_sizes: Vec<usize>,
    upper_sizes: Vec<usize>,
    checks: Vec<CheckRecord>,
    all_passed: bool,
}

#[derive(Serialize)]
struct CheckOut {
    term: String,
    verdict: String,
    cases: Option<u64>,
    samples: Option<u64>,
    seed: Option<u64>,
    witness: Option<Vec<(u32, usize)>>,
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze { file, format } => {
            let q = load_loop(&file)?;
            let a = analyze(&q)?;
            match format {
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&a)?),
                FormatArg::Text => render_analysis_text(&a),
            }
            Ok(if a.all_checks_passed() { 0 } else { 1 })
        }
        Cmd::Series {
            file,
            kind,
            cross_validate,
            format,
            budget,
            seed: _,
        } => {
            let q = load_loop(&file)?;
            let report = series_report(&q, kind.ca_kind())?;
            let cross = if cross_validate {
                let budget = resolve_budget(budget);
                let c = nilpotency_class_cross_validated(&q, budget)?;
                Some(c == report.class)
            } else {
                None
            };
            let out = SeriesOut {
                name: q.name().map(|s| s.to_string()),
                order: q.order(),
                kind: format!("{:?}", kind.word_kind()),
                lower: report
                    .lower
                    .iter()
                    .map(|s| s.members().iter().map(|e| e.index()).collect())
                    .collect(),
                upper: report
                    .upper
                    .iter()
                    .map(|s| s.members().iter().map(|e| e.index()).collect())
                    .collect(),
                class: report.class,
                cross_validated: cross,
            };
            match format {
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&out)?),
                FormatArg::Text => {
                    println!("loop {} of order {}", out.name.as_deref().unwrap_or("?"), out.order);
                    println!(
                        "lower chain sizes: {:?}",
                        out.lower.iter().map(|m| m.len()).collect::<Vec<_>>()
                    );
                    for (i, m) in out.lower.iter().enumerate() {
                        println!("  A_{} = {:?}", i, m);
                    }
                    println!(
                        "upper chain sizes: {:?}",
                        out.upper.iter().map(|m| m.len()).collect::<Vec<_>>()
                    );
                    for (i, m) in out.upper.iter().enumerate() {
                        println!("  Z_{} = {:?}", i, m);
                    }
                    match out.class {
                        Some(c) => println!("centrally nilpotent of class {}", c),
                        None => println!("not centrally nilpotent"),
                    }
                    if let Some(ok) = out.cross_validated {
                        println!("identity-route cross-validation: {}", if ok { "agrees" } else { "DISAGREES" });
                    }
                }
            }
            Ok(if out.cross_validated == Some(false) { 1 } else { 0 })
        }
        Cmd::Verify { file, format, budget } => {
            let q = load_loop(&file)?;
            let budget = resolve_budget(budget);
            let structure: StructureReport = verify_structure(&q, budget)?;
            let mut checks = lemma_battery(&q);
            checks.extend(structure.records.clone());
            let ok = all_passed(&checks);
            let out = VerifyOut {
                name: structure.name.clone(),
                order: structure.order,
                class: structure.class,
                lower_sizes: structure.lower_sizes.clone(),
                upper_sizes: structure.upper_sizes.clone(),
                checks,
                all_passed: ok,
            };
            match format {
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&out)?),
                FormatArg::Text => {
                    println!(
                        "loop {} of order {}: class {:?}, lower sizes {:?}, upper sizes {:?}",
                        out.name.as_deref().unwrap_or("?"),
                        out.order,
                        out.class,
                        out.lower_sizes,
                        out.upper_sizes
                    );
                    print_records_text(&out.checks);
                    println!("{}", if ok { "all checks passed" } else { "SOME CHECKS FAILED" });
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Basis { kind, class, macros } => {
            let words = basis_for_class(kind.word_kind(), class)?;
            for w in &words {
                let rendered = if macros { print_term_macros(w) } else { print_term(w) };
                println!("{} = 1", rendered);
            }
            Ok(0)
        }
        Cmd::Check {
            file,
            term,
            budget,
            seed,
            format,
        } => {
            let q = load_loop(&file)?;
            let t = parse_term(&term)?;
            let budget = resolve_budget(budget);
            let verdict = holds_identity(&q, &t, budget, seed);
            let (code, out) = match &verdict {
                IdentityVerdict::Holds { cases } => (
                    0u8,
                    CheckOut {
                        term: print_term_macros(&t),
                        verdict: "holds (exhaustive)".into(),
                        cases: Some(*cases),
                        samples: None,
                        seed: None,
                        witness: None,
                    },
                ),
                IdentityVerdict::Refuted { witness, sampled } => (
                    1u8,
                    CheckOut {
                        term: print_term_macros(&t),
                        verdict: if *sampled {
                            "refuted (sampled)".into()
                        } else {
                            "refuted".into()
                        },
                        cases: None,
                        samples: None,
                        seed: if *sampled { Some(seed) } else { None },
                        witness: Some(witness.iter().map(|(&v, &e)| (v, e.index())).collect()),
                    },
                ),
                IdentityVerdict::NotRefuted { samples, seed } => (
                    0u8,
                    CheckOut {
                        term: print_term_macros(&t),
                        verdict: "not refuted (sampled)".into(),
                        cases: None,
                        samples: Some(*samples),
                        seed: Some(*seed),
                        witness: None,
                    },
                ),
            };
            match format {
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&out)?),
                FormatArg::Text => {
                    println!("term: {}", out.term);
                    println!("verdict: {}", out.verdict);
                    if let Some(c) = out.cases {
                        println!("cases: {}", c);
                    }
                    if let Some(s) = out.samples {
                        println!("samples: {}", s);
                    }
                    if let Some(s) = out.seed {
                        println!("seed: {}", s);
                    }
                    if let Some(w) = &out.witness {
                        let parts: Vec<String> =
                            w.iter().map(|(v, e)| format!("x{} = {}", v, e)).collect();
                        println!("witness: {}", parts.join(", "));
                    }
                }
            }
            Ok(code)
        }
        Cmd::Decompose {
            term,
            t,
            macros,
            budget,
            seed,
        } => {
            let w = parse_term(&term)?;
            let d = decompose(&w, t)?;
            let render = |x: &loopforge::terms::Term| {
                if macros {
                    print_term_macros(x)
                } else {
                    print_term(x)
                }
            };
            println!("word: {}", render(&w));
            println!("residual u = {}", render(&d.residual));
            for (i, v) in d.factors.iter().enumerate() {
                println!("v_{} = {}", i, render(v));
            }
            // Semantic spot-check on the Moufang / A-loop fixtures of order
            // <= 16.
            let budget = resolve_budget(budget);
            let mut ok = true;
            for q in catalog::all() {
                if q.order() > 16 {
                    continue;
                }
                if !loopforge::classify::is_moufang(&q) && !loopforge::classify::is_a_loop(&q) {
                    continue;
                }
                let c = check_decomposition(&q, &w, t, &d, budget, seed);
                let status = match (&c.failure, c.exhaustive) {
                    (None, true) => format!("ok ({} cases)", c.cases),
                    (None, false) => format!("not refuted ({} samples, seed {})", c.cases, seed),
                    (Some(f), _) => {
                        ok = false;
                        format!("FAILED: {}", f)
                    }
                };
                println!("check on {}: {}", q.name().unwrap_or("?"), status);
            }
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Catalog { emit } => {
            let fixtures = catalog::all();
            match emit {
                None => {
                    for q in &fixtures {
                        println!(
                            "{}  order {}  -> {}",
                            q.name().unwrap_or("?"),
                            q.order(),
                            catalog::file_name(q.name().unwrap_or("loop"))
                        );
                    }
                }
                Some(dir) => {
                    std::fs::create_dir_all(&dir)
                        .with_context(|| format!("cannot create {}", dir.display()))?;
                    for q in &fixtures {
                        let path = dir.join(catalog::file_name(q.name().unwrap_or("loop")));
                        std::fs::write(&path, q.to_table_string())
                            .with_context(|| format!("cannot write {}", path.display()))?;
                        println!("wrote {}", path.display());
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            // Input, parse and precondition problems are usage errors.
            let code = match err.downcast_ref::<LoopError>() {
                Some(LoopError::Internal(_)) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
