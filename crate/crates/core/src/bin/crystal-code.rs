use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crystal_code::codon::{codon_rows, dinucleotide_rows, CodeName};
use crystal_code::enumeration::{count_report, CountModel};
use crystal_code::error_model::{families_at, ClassifiedPair, DoubleFamily, FamilyId};
use crystal_code::expectations::{verify, ExpectationsFile, Status};
use crystal_code::multiplet::{diff_against, ClassStatus, Derivation, WarningKind};
use crystal_code::{Error, ErrorModel, GeneticCodeTable, ModelConfig, Scheme};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "crystal-code", version, about = "Crystal basis model of the genetic code")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = SchemeArg::A)]
    scheme: SchemeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Require level-5 corroboration for level-4 merges.
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    damping: Switch,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    A,
    B,
    B0,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Codons,
    Dinucleotides,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeArg {
    Vmc,
    Suc,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Published,
    Pairings,
}

#[derive(Subcommand)]
enum Command {
    /// Run the level-by-level derivation and print the trace.
    Derive {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=5))]
        level: u8,
        /// Double families allowed to trigger level-5 merges.
        #[arg(long = "trigger", value_name = "FAMILY")]
        triggers: Vec<String>,
    },
    /// Print the computed codon or dinucleotide table.
    Tables {
        #[arg(value_enum)]
        which: Which,
    },
    /// List allowed substitutions.
    Allowed(SetArgs),
    /// List forbidden substitutions.
    Forbidden(SetArgs),
    /// Check an expectations file against the engine.
    Verify { path: PathBuf },
    /// Count alternative patterns and the probability of the observed one.
    Count {
        #[arg(long, value_enum, default_value_t = ModelArg::Published)]
        model: ModelArg,
    },
    /// Compare a derived partition with a genetic code.
    Diff {
        #[arg(long, value_enum, default_value_t = CodeArg::Vmc)]
        code: CodeArg,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=5))]
        level: u8,
    },
}

#[derive(clap::Args)]
struct SetArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    level: Option<u8>,
    #[arg(long)]
    family: Option<String>,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    println!("{text}");
    Ok(())
}

fn config(cli: &Cli) -> ModelConfig {
    let scheme = match cli.scheme {
        SchemeArg::A => Scheme::A,
        SchemeArg::B => Scheme::B,
        SchemeArg::B0 => Scheme::B0,
    };
    let mut config = ModelConfig::new(scheme);
    config.damping = cli.damping == Switch::On;
    config
}

fn derive(cli: &Cli, level: u8, triggers: &[String]) -> Result<(), Failure> {
    let mut config = config(cli);
    if !triggers.is_empty() {
        if level < 5 {
            return Err(Failure::Usage("--trigger only affects level 5".to_string()));
        }
        config.level5_triggers =
            triggers.iter().map(|t| t.parse::<DoubleFamily>()).collect::<Result<_, _>>()?;
    }
    let derivation = Derivation::run(&config, level)?;
    if cli.format == Format::Json {
        return emit_json(&derivation);
    }
    println!("scheme {}, damping {}", config.scheme, if config.damping { "on" } else { "off" });
    for trace in &derivation.levels {
        println!();
        println!("level {} ({:?}): {}", trace.level, trace.rule.criterion, trace.partition.shape_summary());
        for m in &trace.merges {
            let via: Vec<String> =
                m.triggers.iter().map(|t| format!("{}>{} [{}]", t.source, t.target, t.family)).collect();
            println!("  merge {} -> {} via {}", m.merged.join(" + "), m.result, via.join(", "));
        }
        for w in &trace.warnings {
            let kind = match w.kind {
                WarningKind::Contested => "contested",
                WarningKind::Damped => "damped",
            };
            let via: Vec<String> = w.triggers.iter().map(|t| format!("{}>{}", t.source, t.target)).collect();
            println!("  warning ({kind}) {} via {}", w.classes.join(" + "), via.join(", "));
        }
        for a in &trace.partition.annotations {
            println!("  note {} {} ({}>{})", a.class, a.note, a.trigger.source, a.trigger.target);
        }
    }
    println!();
    print!("{}", derivation.final_partition());
    Ok(())
}

fn tables(cli: &Cli, which: Which) -> Result<(), Failure> {
    match which {
        Which::Codons => {
            let rows = codon_rows();
            if cli.format == Format::Json {
                return emit_json(&rows);
            }
            println!("codon  J_H  J_V  mult  J3_H  J3_V  VMC  SUC");
            for r in rows {
                println!(
                    "{:<5}  {:>3}  {:>3}  {:>4}  {:>4}  {:>4}  {}  {}",
                    r.codon, r.jh, r.jv, r.mult, r.m3h, r.m3v, r.vmc_aa, r.suc_aa
                );
            }
        }
        Which::Dinucleotides => {
            let rows = dinucleotide_rows();
            if cli.format == Format::Json {
                return emit_json(&rows);
            }
            println!("dinucl  J_H  J_V  J3_H  J3_V");
            for r in rows {
                println!("{:<6}  {:>3}  {:>3}  {:>4}  {:>4}", r.dinucleotide, r.jh, r.jv, r.m3h, r.m3v);
            }
        }
    }
    Ok(())
}

fn pairs(cli: &Cli, args: &SetArgs, allowed: bool) -> Result<(), Failure> {
    let family = args.family.as_deref().map(str::parse::<FamilyId>).transpose()?;
    let level = match (args.level, family) {
        (Some(l), Some(f)) if f.level() != l => {
            return Err(Failure::Usage(format!("family {f} acts at level {}, not {l}", f.level())));
        }
        (Some(l), _) => l,
        (None, Some(f)) => f.level(),
        (None, None) => return Err(Failure::Usage("give --level or --family".to_string())),
    };
    let model = ErrorModel::new(config(cli));
    let families = match family {
        Some(f) => vec![f],
        None => families_at(level)?,
    };
    // Grouped by family, sources in table row order within each family.
    let mut by_family: Vec<ClassifiedPair> = Vec::new();
    for f in families {
        let mut list: Vec<ClassifiedPair> =
            model.classify(f).into_iter().filter(|p| p.allowed == allowed).collect();
        list.sort_by_key(|p| p.source.table_position());
        by_family.extend(list);
    }
    if cli.format == Format::Json {
        return emit_json(&by_family);
    }
    for p in by_family {
        println!("{:<18} {}>{}", p.family.to_string(), p.source, p.target);
    }
    Ok(())
}

fn run_verify(cli: &Cli, path: &Path) -> Result<(), Failure> {
    let file = ExpectationsFile::load(path)?;
    let report = verify(&file)?;
    if cli.format == Format::Json {
        emit_json(&report)?;
    } else {
        for r in &report.results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Noted => "NOTE",
            };
            println!("{tag} [{}] {}: {}", r.kind, r.cite, r.detail);
        }
        println!(
            "{} passed, {} failed, {} discrepancies noted",
            report.count(Status::Pass),
            report.count(Status::Fail),
            report.count(Status::Noted)
        );
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn count(cli: &Cli, model: ModelArg) -> Result<(), Failure> {
    let model = match model {
        ModelArg::Published => CountModel::Published,
        ModelArg::Pairings => CountModel::Pairings,
    };
    let report = count_report(model);
    if cli.format == Format::Json {
        return emit_json(&report);
    }
    let c = report.counts;
    println!("quartet choices: {}", c.quartet_choices);
    println!("second-stage sextet choices: {}", c.sextet2_choices);
    println!("third-stage sextet choices: {}", c.sextet3_choices);
    println!("probability: {} = {}", report.probability, report.probability_decimal);
    if !report.agrees_with_published {
        println!("note: these counts differ from the published ones");
    }
    Ok(())
}

fn diff(cli: &Cli, code: CodeArg, level: u8) -> Result<(), Failure> {
    let table = GeneticCodeTable::by_name(match code {
        CodeArg::Vmc => CodeName::Vmc,
        CodeArg::Suc => CodeName::Suc,
    });
    let derivation = Derivation::run(&config(cli), level)?;
    let report = diff_against(derivation.final_partition(), &table);
    if cli.format == Format::Json {
        return emit_json(&report);
    }
    println!("{} classes match {}, {} mismatch", report.matches, report.code, report.mismatches);
    for c in &report.classes {
        let status = match c.status {
            ClassStatus::Match => "match",
            ClassStatus::Mismatch => "MISMATCH",
        };
        let aas: Vec<String> = c.amino_acids.iter().map(|a| a.to_string()).collect();
        println!("  {:<10} {:<8} {}", c.class, status, aas.join(","));
    }
    for g in &report.split_groups {
        let codons: Vec<String> = g.codons.iter().map(|c| c.to_string()).collect();
        println!("  split {} ({}) across {}", g.amino_acid, codons.join(" "), g.classes.join(", "));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Derive { level, triggers } => derive(&cli, *level, triggers),
        Command::Tables { which } => tables(&cli, *which),
        Command::Allowed(args) => pairs(&cli, args, true),
        Command::Forbidden(args) => pairs(&cli, args, false),
        Command::Verify { path } => run_verify(&cli, path),
        Command::Count { model } => count(&cli, *model),
        Command::Diff { code, level } => diff(&cli, *code, *level),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(EXIT_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
