use std::path::PathBuf;
use std::process::ExitCode;

use amalgam_core::census::{
    generate_corpus_with, item_from_spec, run_campaign, write_report, CampaignReport, CorpusConfig, Outcome,
    ReportFormat,
};
use amalgam_core::caps::AMALGAM_MAX_ORDER_ENV;
use amalgam_core::injective::self_injectivity;
use amalgam_core::spec::Evaluated;
use amalgam_core::theorems::Statement;
use amalgam_core::{all_ideals, annihilator, idempotent_generator, parse_spec, Caps, Error, FiniteRing, Ideal};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "amalgam", version, about = "Finite commutative rings and amalgamated algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of one ring.
    Check {
        what: What,
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Run verifiers over the corpus or a single instance.
    Verify(VerifyArgs),
    /// List the corpus items.
    Census {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        json: bool,
    },
    /// List the ideals of a ring with their annihilators.
    Ideals {
        spec: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum What {
    SelfInjective,
    Qf,
    Local,
    Idempotents,
    Ideals,
}

#[derive(clap::Args)]
struct CorpusArgs {
    /// Largest n for Z_n (products are capped at the same order unless
    /// --max-product-order is given).
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long)]
    max_product_order: Option<usize>,
    /// Largest |A|·|J| for amalgamation data.
    #[arg(long, env = AMALGAM_MAX_ORDER_ENV)]
    max_amalgam_order: Option<usize>,
    /// Drop isomorphic duplicates from the ring list.
    #[arg(long)]
    dedup: bool,
}

impl CorpusArgs {
    fn config(&self) -> CorpusConfig {
        let mut cfg = match self.max_order {
            Some(n) => CorpusConfig { max_ring_order: n, max_product_order: n, ..CorpusConfig::default() },
            None => CorpusConfig::default(),
        };
        if let Some(p) = self.max_product_order {
            cfg.max_product_order = p;
        }
        if let Some(a) = self.max_amalgam_order {
            cfg.max_amalgam_order = a;
            cfg.caps.max_amalgam_order = cfg.caps.max_amalgam_order.max(a);
        }
        cfg.dedup = self.dedup;
        cfg
    }
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Comma-separated statement ids, or "all".
    #[arg(long, default_value = "all")]
    statements: String,
    /// Run a single statement (overrides --statements).
    #[arg(long)]
    only: Option<String>,
    /// Verify one spec instead of the generated corpus.
    #[arg(long)]
    instance: Option<String>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Print every entry, not only counterexamples.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::ResourceLimit { .. } => 2,
            Error::Parse(_) | Error::InvalidParameter(_) | Error::InvalidRing(_) | Error::InvalidHom { .. } => EXIT_USAGE,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check { what, spec, json } => check(what, &spec, json),
        Command::Verify(args) => verify(&args),
        Command::Census { corpus, json } => census(&corpus, json),
        Command::Ideals { spec, json } => ideals(&spec, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct CheckOutput {
    spec: String,
    what: What,
    order: usize,
    result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample_ideal: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    double_annihilator: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    idempotent_generator: Option<usize>,
    baer_checked: bool,
}

fn check(what: What, text: &str, json: bool) -> Result<u8, Failure> {
    let caps = Caps::from_env();
    let spec = parse_spec(text).map_err(Error::from)?;
    let evaluated = spec.eval(&caps)?;
    let ring = evaluated.ring();
    let mut out = CheckOutput {
        spec: spec.to_string(),
        what,
        order: ring.order(),
        result: serde_json::Value::Null,
        counterexample_ideal: None,
        double_annihilator: None,
        idempotent_generator: None,
        baer_checked: false,
    };
    let mut lines = Vec::new();
    match what {
        What::SelfInjective | What::Qf => {
            let si = self_injectivity(ring, &caps)?;
            out.result = si.self_injective.into();
            out.baer_checked = si.baer_checked;
            lines.push(si.self_injective.to_string());
            if let Some(i) = &si.failing_ideal {
                let aa = annihilator(ring, annihilator(ring, i.elements())?.elements())?;
                lines.push(format!("counterexample ideal: {}", list(i.elements())));
                lines.push(format!("double annihilator: {}", list(aa.elements())));
                out.counterexample_ideal = Some(i.elements().to_vec());
                out.double_annihilator = Some(aa.elements().to_vec());
            }
            if let Evaluated::Amalgam(w) = &evaluated {
                if let Some(e) = idempotent_generator(w.b_ring(), w.j_ideal()) {
                    lines.push(format!("idempotent generator of J: {e}"));
                    out.idempotent_generator = Some(e);
                }
            }
        }
        What::Local => {
            let local = ring.is_local()?;
            out.result = local.into();
            lines.push(local.to_string());
        }
        What::Idempotents => {
            let ids = ring.idempotents();
            lines.push(list(&ids));
            out.result = serde_json::json!(ids);
        }
        What::Ideals => {
            let all = all_ideals(ring)?;
            lines.extend(all.iter().map(|i| list(i.elements())));
            out.result = serde_json::json!(all.iter().map(|i| i.elements().to_vec()).collect::<Vec<_>>());
        }
    }
    if json {
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        lines.iter().for_each(|l| println!("{l}"));
    }
    Ok(0)
}

#[derive(Serialize)]
struct IdealRow {
    elements: Vec<usize>,
    generators: Vec<usize>,
    annihilator: Vec<usize>,
    idempotent_generator: Option<usize>,
}

fn ideal_rows(ring: &FiniteRing) -> Result<Vec<IdealRow>, Error> {
    all_ideals(ring)?
        .iter()
        .map(|i: &Ideal| {
            Ok(IdealRow {
                elements: i.elements().to_vec(),
                generators: i.generators(),
                annihilator: annihilator(ring, i.elements())?.elements().to_vec(),
                idempotent_generator: idempotent_generator(ring, i),
            })
        })
        .collect()
}

fn ideals(text: &str, json: bool) -> Result<u8, Failure> {
    let caps = Caps::from_env();
    let ring = parse_spec(text).map_err(Error::from)?.eval_ring(&caps)?;
    let rows = ideal_rows(&ring)?;
    if json {
        println!("{}", serde_json::to_string(&rows).expect("serializable"));
    } else {
        for r in rows {
            let e = r.idempotent_generator.map_or("-".to_string(), |e| e.to_string());
            println!(
                "{{{}}}\tgenerators {}\tann {{{}}}\tidempotent {e}",
                list(&r.elements),
                list(&r.generators),
                list(&r.annihilator)
            );
        }
    }
    Ok(0)
}

fn census(args: &CorpusArgs, json: bool) -> Result<u8, Failure> {
    let corpus = generate_corpus_with(&args.config())?;
    if json {
        println!("{}", serde_json::to_string_pretty(&corpus).expect("serializable"));
    } else {
        for item in &corpus {
            println!("{}\t{}", item.id, item.tags.join(","));
        }
        eprintln!("{} items", corpus.len());
    }
    Ok(0)
}

fn parse_statements(args: &VerifyArgs) -> Result<Vec<Statement>, Failure> {
    let ids: Vec<&str> = match &args.only {
        Some(id) => vec![id.as_str()],
        None if args.statements.trim() == "all" => return Ok(Statement::ALL.to_vec()),
        None => args.statements.split(',').map(str::trim).filter(|s| !s.is_empty()).collect(),
    };
    if ids.is_empty() {
        return Err(usage("no statements given"));
    }
    ids.into_iter()
        .map(|id| {
            Statement::from_id(id).ok_or_else(|| {
                let known: Vec<&str> = Statement::ALL.iter().map(|s| s.id()).collect();
                usage(format!("unknown statement id '{id}' (known: all, {})", known.join(", ")))
            })
        })
        .collect()
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let statements = parse_statements(args)?;
    let cfg = args.corpus.config();
    let corpus = match &args.instance {
        Some(text) => vec![item_from_spec(text, &cfg.caps)?],
        None => generate_corpus_with(&cfg)?,
    };
    let report = run_campaign(&corpus, &statements);
    print_report(&report, args.verbose);
    if let Some(path) = &args.report {
        let format = match args.format {
            Some(Format::Csv) => ReportFormat::Csv,
            Some(Format::Json) => ReportFormat::Json,
            None if path.extension().is_some_and(|e| e == "csv") => ReportFormat::Csv,
            None => ReportFormat::Json,
        };
        write_report(&report, path, format)?;
    }
    Ok(report.exit_code() as u8)
}

fn print_report(report: &CampaignReport, verbose: bool) {
    for e in &report.entries {
        let line = match &e.outcome {
            Outcome::Verdict { verdict, witness_rechecked } => {
                if !verbose && !verdict.is_counterexample() {
                    continue;
                }
                let status = match (verdict.applicable, verdict.consistent) {
                    (false, _) => "inapplicable",
                    (true, true) => "consistent",
                    (true, false) => "COUNTEREXAMPLE",
                };
                let recheck = match witness_rechecked {
                    Some(true) => " (witness rechecked)",
                    Some(false) => " (witness FAILED recheck)",
                    None => "",
                };
                format!("{}\t{}\t{status}\twitness={}{recheck}", e.statement_id, e.id, verdict.witness_kind())
            }
            Outcome::ResourceLimited { message } => format!("{}\t{}\tresource-limited\t{message}", e.statement_id, e.id),
            Outcome::Error { message } => format!("{}\t{}\terror\t{message}", e.statement_id, e.id),
        };
        println!("{line}");
    }
    let s = &report.summary;
    println!(
        "summary: evaluated={} applicable={} consistent={} inconsistent={} inapplicable={} resource_limited={} errors={}",
        s.evaluated, s.applicable, s.consistent, s.inconsistent, s.inapplicable, s.resource_limited, s.errors
    );
}
