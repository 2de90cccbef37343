//! `tbqa` — treebank annotation QA from the command line.
//!
//! Subcommands: check, score, kappa, stats, design, verify-design, time,
//! extrapolate, diff, adjudicate, report. Exit codes: 0 success, 1
//! findings or violations present, 2 usage/IO/config errors.

mod render;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tbqa_core::{
    adjudication_bundle, attachment_scores, average_scores, bootstrap_stddev, diff_annotations,
    explain_finding, extrapolate_hours, findings_to_tsv, generate_design, load_ruleset,
    pairwise_agreement, parse_document, permutation_test, run_checks, sentence_stats,
    time_summary, token_units, verify_design, AfunInventory, AgreementKind, BootstrapResult,
    DesignTable, Document, ExtrapolationReport, Finding, Metric, Mode, PermutationResult,
    RuleSet, SentenceStat, Severity, TimingLedger,
};

/// Directory searched for `afuns.txt` and `rules.rules` when the
/// corresponding flags are absent.
const CONFIG_DIR_ENV: &str = "TBQA_CONFIG_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Tsv,
    Json,
    Plotdata,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitKind {
    Sentence,
    Token,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Unlabeled,
    Labeled,
    Full,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Uas,
    Las,
    Full,
    All,
}

impl MetricArg {
    fn metrics(self) -> Vec<Metric> {
        match self {
            MetricArg::Uas => vec![Metric::Uas],
            MetricArg::Las => vec![Metric::Las],
            MetricArg::Full => vec![Metric::Full],
            MetricArg::All => Metric::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tbqa", version, about = "Treebank annotation QA toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,

    /// Afun inventory file (one afun per line).
    #[arg(long, global = true)]
    inventory: Option<PathBuf>,

    /// Checking-rule config file.
    #[arg(long, global = true)]
    rules: Option<PathBuf>,

    /// Seed for randomized statistics. Required when $CI is set;
    /// otherwise drawn from entropy and reported in the output.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Replicates for bootstrap / permutation runs.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: usize,

    /// Resampling unit for the stats subcommand.
    #[arg(long, global = true, value_enum, default_value_t = UnitKind::Sentence)]
    unit: UnitKind,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run consistency checks over annotation files.
    Check(CheckArgs),
    /// Score annotations against a gold reference (UAS/LAS/FULL).
    Score(ScoreArgs),
    /// Inter-annotator agreement (three kappa variants).
    Kappa(KappaArgs),
    /// Bootstrap stddev and permutation significance over scores.
    Stats(StatsArgs),
    /// Generate a balanced annotation design.
    Design(DesignArgs),
    /// Verify a design table against its constraints.
    VerifyDesign(VerifyDesignArgs),
    /// Summarize a timing ledger (means and mode ratios).
    Time(TimeArgs),
    /// Extrapolate annotation hours to a target corpus size.
    Extrapolate(ExtrapolateArgs),
    /// Token-wise diff of two parallel annotations.
    Diff(DiffArgs),
    /// Merge parallel annotations into an adjudication worksheet.
    Adjudicate(AdjudicateArgs),
    /// Consolidated experiment report (accuracy, agreement, time, cost).
    Report(report::ReportArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Annotation files to check.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Drop a rule group (repeatable).
    #[arg(long = "disable-group")]
    disable_groups: Vec<String>,
    /// Exit 1 on warnings too, not only on error-severity findings.
    #[arg(long)]
    strict: bool,
    /// Append an explanation line per finding (table format).
    #[arg(long)]
    explain: bool,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Gold reference file.
    #[arg(long)]
    gold: PathBuf,
    /// Annotation files to score.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct KappaArgs {
    /// Two annotation files (one pair).
    #[arg(num_args = 0..=2)]
    files: Vec<PathBuf>,
    /// Explicit pair `A,B` (repeatable); mean kappa is reported over pairs.
    #[arg(long = "pair")]
    pairs: Vec<String>,
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    kind: KindArg,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Default gold for specs without an explicit `:GOLD` part.
    #[arg(long)]
    gold: Option<PathBuf>,
    /// Group A annotations, each `ANN` or `ANN:GOLD`.
    #[arg(required = true)]
    files: Vec<String>,
    /// Group B annotations (enables the permutation test A > B).
    #[arg(long = "against", num_args = 1..)]
    against: Vec<String>,
    #[arg(long, value_enum, default_value_t = MetricArg::All)]
    metric: MetricArg,
}

#[derive(Debug, Args)]
struct DesignArgs {
    /// Comma-separated annotator names, in pair order.
    #[arg(long, value_delimiter = ',', required = true)]
    annotators: Vec<String>,
    #[arg(long)]
    tasks: usize,
    /// Defaults to two per task.
    #[arg(long)]
    datasets: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyDesignArgs {
    design: PathBuf,
}

#[derive(Debug, Args)]
struct TimeArgs {
    ledger: PathBuf,
}

#[derive(Debug, Args)]
struct ExtrapolateArgs {
    /// Mean minutes per dataset; alternatively derive it from --ledger.
    #[arg(long)]
    minutes: Option<f64>,
    /// Timing ledger to take set-up means from.
    #[arg(long)]
    ledger: Option<PathBuf>,
    /// Restrict ledger-driven extrapolation to one task.
    #[arg(long)]
    task: Option<String>,
    /// Restrict ledger-driven extrapolation to one mode.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    dataset_tokens: u64,
    #[arg(long)]
    target_tokens: u64,
}

#[derive(Debug, Args)]
struct DiffArgs {
    file_a: PathBuf,
    file_b: PathBuf,
}

#[derive(Debug, Args)]
struct AdjudicateArgs {
    /// Two or more parallel annotation files.
    #[arg(required = true, num_args = 2..)]
    files: Vec<PathBuf>,
}

pub(crate) struct Ctx {
    inventory: AfunInventory,
    rules_path: Option<PathBuf>,
    format: OutputFormat,
    seed: u64,
    samples: usize,
    unit: UnitKind,
}

impl Ctx {
    fn ruleset(&self) -> Result<RuleSet> {
        match &self.rules_path {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading rules `{}`", path.display()))?;
                Ok(load_ruleset(&text, &self.inventory)?)
            }
            None => Ok(RuleSet::default_rules(&self.inventory)?),
        }
    }

    fn read_doc(&self, path: &Path) -> Result<Document> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading `{}`", path.display()))?;
        let mut doc = parse_document(&text, &self.inventory)
            .with_context(|| format!("parsing `{}`", path.display()))?;
        if doc.doc_id.is_empty() {
            doc.doc_id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
        }
        Ok(doc)
    }
}

fn config_dir_file(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CONFIG_DIR_ENV)?;
    let path = PathBuf::from(dir).join(name);
    path.exists().then_some(path)
}

fn build_ctx(cli: &Cli) -> Result<Ctx> {
    let inventory_path = cli
        .inventory
        .clone()
        .or_else(|| config_dir_file("afuns.txt"));
    let inventory = match inventory_path {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading inventory `{}`", path.display()))?;
            AfunInventory::from_config_text(&text)?
        }
        None => AfunInventory::pdt_default(),
    };
    let rules_path = cli.rules.clone().or_else(|| config_dir_file("rules.rules"));
    let seed = match cli.seed {
        Some(seed) => seed,
        None => {
            if std::env::var_os("CI").is_some() {
                bail!("--seed is required when $CI is set (reproducible runs)");
            }
            entropy_seed()
        }
    };
    Ok(Ctx {
        inventory,
        rules_path,
        format: cli.format,
        seed,
        samples: cli.samples,
        unit: cli.unit,
    })
}

fn entropy_seed() -> u64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    nanos ^ ((std::process::id() as u64) << 32)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let ctx = build_ctx(cli)?;
    match &cli.command {
        Command::Check(args) => cmd_check(&ctx, args),
        Command::Score(args) => cmd_score(&ctx, args),
        Command::Kappa(args) => cmd_kappa(&ctx, args),
        Command::Stats(args) => cmd_stats(&ctx, args),
        Command::Design(args) => cmd_design(&ctx, args),
        Command::VerifyDesign(args) => cmd_verify_design(&ctx, args),
        Command::Time(args) => cmd_time(&ctx, args),
        Command::Extrapolate(args) => cmd_extrapolate(&ctx, args),
        Command::Diff(args) => cmd_diff(&ctx, args),
        Command::Adjudicate(args) => cmd_adjudicate(&ctx, args),
        Command::Report(args) => report::cmd_report(&ctx, args),
    }
}

// ---------------------------------------------------------------------
// check
// ---------------------------------------------------------------------

fn cmd_check(ctx: &Ctx, args: &CheckArgs) -> Result<ExitCode> {
    let mut rules = ctx.ruleset()?;
    for group in &args.disable_groups {
        rules = rules.without_group(group);
    }

    let mut findings: Vec<(String, Finding)> = Vec::new();
    for path in &args.files {
        let doc = ctx.read_doc(path)?;
        let name = path.display().to_string();
        for finding in run_checks(&doc, &rules) {
            findings.push((name.clone(), finding));
        }
    }

    match ctx.format {
        OutputFormat::Table => {
            for (file, finding) in &findings {
                println!(
                    "{}:{}:{}: {} [{}] {}",
                    file,
                    finding.sent_id,
                    finding.token_id,
                    finding.severity,
                    finding.rule_id,
                    finding.message
                );
                if args.explain {
                    println!("    {}", explain_finding(finding, &rules)?);
                }
            }
        }
        OutputFormat::Tsv => {
            let only: Vec<Finding> = findings.iter().map(|(_, f)| f.clone()).collect();
            print!("{}", findings_to_tsv(&only));
        }
        OutputFormat::Json => {
            for (file, finding) in &findings {
                let mut value = serde_json::to_value(finding)?;
                value["file"] = serde_json::Value::String(file.clone());
                println!("{}", serde_json::to_string(&value)?);
            }
        }
        OutputFormat::Plotdata => bail!("check has no plotdata output"),
    }

    let gate = if args.strict {
        !findings.is_empty()
    } else {
        findings.iter().any(|(_, f)| f.severity == Severity::Error)
    };
    Ok(if gate { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

// ---------------------------------------------------------------------
// score
// ---------------------------------------------------------------------

fn cmd_score(ctx: &Ctx, args: &ScoreArgs) -> Result<ExitCode> {
    let gold = ctx.read_doc(&args.gold)?;
    let mut reports = Vec::new();
    for path in &args.files {
        let ann = ctx.read_doc(path)?;
        let report = attachment_scores(&ann, &gold)
            .with_context(|| format!("scoring `{}`", path.display()))?;
        reports.push((path.display().to_string(), report));
    }

    match ctx.format {
        OutputFormat::Table => {
            println!("{}", render::score_table_header());
            for (name, report) in &reports {
                println!("{}", render::score_table_row(name, report));
            }
            if reports.len() > 1 {
                let only: Vec<_> = reports.iter().map(|(_, r)| r.clone()).collect();
                let (uas, las, full) = average_scores(&only)?;
                println!("{}", render::mean_row("mean", uas, las, full));
            }
        }
        OutputFormat::Tsv => {
            for (name, report) in &reports {
                if reports.len() > 1 {
                    println!("# file = {name}");
                }
                print!("{}", report.to_tsv());
            }
        }
        OutputFormat::Json => {
            let value: Vec<serde_json::Value> = reports
                .iter()
                .map(|(name, report)| serde_json::json!({ "file": name, "report": report }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        OutputFormat::Plotdata => bail!("score has no plotdata output"),
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// kappa
// ---------------------------------------------------------------------

fn kappa_kinds(kind: KindArg) -> Vec<AgreementKind> {
    match kind {
        KindArg::Unlabeled => vec![AgreementKind::Unlabeled],
        KindArg::Labeled => vec![AgreementKind::Labeled],
        KindArg::Full => vec![AgreementKind::Full],
        KindArg::All => vec![
            AgreementKind::Unlabeled,
            AgreementKind::Labeled,
            AgreementKind::Full,
        ],
    }
}

fn cmd_kappa(ctx: &Ctx, args: &KappaArgs) -> Result<ExitCode> {
    let mut docs: Vec<Document> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if !args.pairs.is_empty() {
        if !args.files.is_empty() {
            bail!("give either two positional files or --pair options, not both");
        }
        for spec in &args.pairs {
            let (a, b) = spec
                .split_once(',')
                .ok_or_else(|| anyhow!("--pair takes `FILE_A,FILE_B`, got `{spec}`"))?;
            docs.push(ctx.read_doc(Path::new(a))?);
            docs.push(ctx.read_doc(Path::new(b))?);
            pairs.push((docs.len() - 2, docs.len() - 1));
        }
    } else {
        if args.files.len() != 2 {
            bail!("kappa needs exactly two annotation files (or --pair options)");
        }
        docs.push(ctx.read_doc(&args.files[0])?);
        docs.push(ctx.read_doc(&args.files[1])?);
        pairs.push((0, 1));
    }

    let mut results = Vec::new();
    for kind in kappa_kinds(args.kind) {
        results.push(pairwise_agreement(&docs, &pairs, kind, &ctx.inventory)?);
    }

    match ctx.format {
        OutputFormat::Table => {
            println!("{}", render::kappa_table_header());
            for pw in &results {
                for (i, result) in pw.pairs.iter().enumerate() {
                    let label = if pw.pairs.len() > 1 {
                        format!("{}[{}]", pw.kind, i + 1)
                    } else {
                        pw.kind.to_string()
                    };
                    println!("{}", render::kappa_table_row(&label, result));
                }
                if pw.pairs.len() > 1 {
                    println!("{:<12} {:>7.4}  (mean over pairs)", pw.kind, pw.mean_kappa);
                }
            }
        }
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&results)?);
        }
        OutputFormat::Tsv => {
            println!("kind\tpair\tkappa\tp0\tpe\taP\taL\taF\tn\ts_bar");
            for pw in &results {
                for (i, r) in pw.pairs.iter().enumerate() {
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        pw.kind,
                        i + 1,
                        r.kappa,
                        r.p0,
                        r.pe,
                        r.a_p,
                        r.a_l,
                        r.a_f,
                        r.n,
                        r.s_bar.map_or(String::from("-"), |s| s.to_string())
                    );
                }
            }
        }
        OutputFormat::Plotdata => bail!("kappa has no plotdata output"),
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------

/// `ANN` or `ANN:GOLD` spec.
fn parse_spec<'a>(spec: &'a str, default_gold: Option<&'a Path>) -> Result<(&'a Path, &'a Path)> {
    match spec.split_once(':') {
        Some((ann, gold)) => Ok((Path::new(ann), Path::new(gold))),
        None => {
            let gold = default_gold
                .ok_or_else(|| anyhow!("`{spec}` has no `:GOLD` part and --gold is not set"))?;
            Ok((Path::new(spec), gold))
        }
    }
}

fn pooled_records(
    ctx: &Ctx,
    specs: &[String],
    default_gold: Option<&Path>,
    metric: Metric,
) -> Result<Vec<SentenceStat>> {
    let mut pooled = Vec::new();
    for (idx, spec) in specs.iter().enumerate() {
        let (ann_path, gold_path) = parse_spec(spec, default_gold)?;
        let ann = ctx.read_doc(ann_path)?;
        let gold = ctx.read_doc(gold_path)?;
        let report = attachment_scores(&ann, &gold)
            .with_context(|| format!("scoring `{}`", ann_path.display()))?;
        for mut stat in sentence_stats(&report, metric) {
            // Qualify unit ids so pooled records stay distinct per file.
            stat.unit = format!("{}:{}", idx, stat.unit);
            pooled.push(stat);
        }
    }
    Ok(pooled)
}

#[derive(serde::Serialize)]
struct MetricStats {
    metric: String,
    group_a: BootstrapResult,
    group_b: Option<BootstrapResult>,
    permutation: Option<PermutationResult>,
}

fn cmd_stats(ctx: &Ctx, args: &StatsArgs) -> Result<ExitCode> {
    let gold = args.gold.as_deref();
    let mut rows = Vec::new();
    for metric in args.metric.metrics() {
        let mut group_a = pooled_records(ctx, &args.files, gold, metric)?;
        let mut group_b = if args.against.is_empty() {
            None
        } else {
            Some(pooled_records(ctx, &args.against, gold, metric)?)
        };
        if ctx.unit == UnitKind::Token {
            group_a = token_units(&group_a);
            group_b = group_b.map(|g| token_units(&g));
        }

        let boot_a = bootstrap_stddev(&group_a, ctx.samples, ctx.seed)?;
        let (boot_b, perm) = match &group_b {
            Some(b) => (
                Some(bootstrap_stddev(b, ctx.samples, ctx.seed)?),
                Some(permutation_test(&group_a, b, ctx.samples, ctx.seed)?),
            ),
            None => (None, None),
        };
        rows.push(MetricStats {
            metric: metric.to_string(),
            group_a: boot_a,
            group_b: boot_b,
            permutation: perm,
        });
    }

    match ctx.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        OutputFormat::Table => {
            for row in &rows {
                let mut line = format!("{:<6} {}", row.metric, render::score_pm(&row.group_a));
                if let Some(b) = &row.group_b {
                    line.push_str(&format!("  vs {}", render::score_pm(b)));
                }
                if let Some(p) = &row.permutation {
                    line.push_str(&format!(
                        "  diff {:+.2} {}",
                        100.0 * p.observed_diff,
                        render::p_value_pct(p)
                    ));
                }
                println!("{line}");
            }
            println!(
                "# samples = {}, seed = {}, unit = {}",
                ctx.samples,
                ctx.seed,
                match ctx.unit {
                    UnitKind::Sentence => "sentence",
                    UnitKind::Token => "token",
                }
            );
        }
        OutputFormat::Tsv => {
            println!(
                "metric\tscore\tstddev\tscore_b\tstddev_b\tobserved_diff\tp_value\tsamples\tseed"
            );
            for row in &rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    row.metric,
                    row.group_a.statistic,
                    row.group_a.stddev,
                    row.group_b
                        .as_ref()
                        .map_or(String::from("-"), |b| b.statistic.to_string()),
                    row.group_b
                        .as_ref()
                        .map_or(String::from("-"), |b| b.stddev.to_string()),
                    row.permutation
                        .as_ref()
                        .map_or(String::from("-"), |p| p.observed_diff.to_string()),
                    row.permutation
                        .as_ref()
                        .map_or(String::from("-"), |p| p.p_value.to_string()),
                    ctx.samples,
                    ctx.seed,
                );
            }
        }
        OutputFormat::Plotdata => bail!("stats has no plotdata output"),
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// design / verify-design / time / extrapolate
// ---------------------------------------------------------------------

fn cmd_design(ctx: &Ctx, args: &DesignArgs) -> Result<ExitCode> {
    let datasets = args.datasets.unwrap_or(2 * args.tasks);
    let design = generate_design(&args.annotators, args.tasks, datasets)?;
    match ctx.format {
        OutputFormat::Table | OutputFormat::Tsv => print!("{}", design.to_tsv()),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&design)?),
        OutputFormat::Plotdata => bail!("design has no plotdata output"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_design(ctx: &Ctx, args: &VerifyDesignArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.design)
        .with_context(|| format!("reading `{}`", args.design.display()))?;
    let design = DesignTable::from_tsv(&text)?;
    let violations = verify_design(&design);
    match ctx.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&violations)?),
        _ => {
            for v in &violations {
                println!("{v}");
            }
        }
    }
    Ok(if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn load_ledger(path: &Path) -> Result<TimingLedger> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading `{}`", path.display()))?;
    Ok(TimingLedger::from_tsv(&text)?)
}

fn cmd_time(ctx: &Ctx, args: &TimeArgs) -> Result<ExitCode> {
    let ledger = load_ledger(&args.ledger)?;
    let summary = time_summary(&ledger)?;
    match ctx.format {
        OutputFormat::Table => {
            println!(
                "{:<12} {:>12} {:>13} {:>7}",
                "task", "pre-parsed", "from-scratch", "ratio"
            );
            let fmt = |v: Option<f64>| v.map_or(String::from("-"), |m| format!("{m:.2}"));
            for ratio in &summary.per_task_ratio {
                println!(
                    "{:<12} {:>12} {:>13} {:>7}",
                    ratio.task,
                    fmt(summary.setup_mean(&ratio.task, Mode::PreParsed)),
                    fmt(summary.setup_mean(&ratio.task, Mode::FromScratch)),
                    fmt(ratio.ratio)
                );
            }
            println!(
                "{:<12} {:>12} {:>13} {:>7}",
                "overall",
                fmt(summary.pre_parsed_mean),
                fmt(summary.from_scratch_mean),
                fmt(summary.overall_ratio)
            );
        }
        OutputFormat::Tsv => {
            println!("task\tmode\tmean_minutes\tentries");
            for setup in &summary.per_setup {
                println!(
                    "{}\t{}\t{}\t{}",
                    setup.task, setup.mode, setup.mean_minutes, setup.entries
                );
            }
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
        OutputFormat::Plotdata => {
            let series = report::time_series(&ledger);
            print!("{}", render::render_series(&series));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_extrapolate(ctx: &Ctx, args: &ExtrapolateArgs) -> Result<ExitCode> {
    let mut reports: Vec<ExtrapolationReport> = Vec::new();
    match (args.minutes, &args.ledger) {
        (Some(minutes), None) => {
            reports.push(ExtrapolationReport {
                task: args.task.clone(),
                mode: args.mode.as_deref().map(str::parse).transpose()?,
                mean_minutes_per_dataset: minutes,
                tokens_per_dataset: args.dataset_tokens,
                target_tokens: args.target_tokens,
                hours: extrapolate_hours(minutes, args.dataset_tokens, args.target_tokens)?,
            });
        }
        (None, Some(ledger_path)) => {
            let ledger = load_ledger(ledger_path)?;
            let summary = time_summary(&ledger)?;
            let mode_filter: Option<Mode> = args.mode.as_deref().map(str::parse).transpose()?;
            for setup in &summary.per_setup {
                if args.task.as_deref().is_some_and(|t| t != setup.task) {
                    continue;
                }
                if mode_filter.is_some_and(|m| m != setup.mode) {
                    continue;
                }
                reports.push(ExtrapolationReport {
                    task: Some(setup.task.clone()),
                    mode: Some(setup.mode),
                    mean_minutes_per_dataset: setup.mean_minutes,
                    tokens_per_dataset: args.dataset_tokens,
                    target_tokens: args.target_tokens,
                    hours: extrapolate_hours(
                        setup.mean_minutes,
                        args.dataset_tokens,
                        args.target_tokens,
                    )?,
                });
            }
            if reports.is_empty() {
                bail!("no ledger set-up matches the task/mode selection");
            }
        }
        _ => bail!("give exactly one of --minutes or --ledger"),
    }

    match ctx.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
        OutputFormat::Plotdata => bail!("extrapolate has no plotdata output; see report"),
        _ => {
            for r in &reports {
                let selector = match (&r.task, &r.mode) {
                    (Some(t), Some(m)) => format!("{t}/{m}"),
                    (Some(t), None) => t.clone(),
                    (None, Some(m)) => m.to_string(),
                    (None, None) => String::from("input"),
                };
                println!(
                    "{selector}: {:.2} min/dataset, {} tokens/dataset -> {:.1} h for {} tokens",
                    r.mean_minutes_per_dataset, r.tokens_per_dataset, r.hours, r.target_tokens
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// diff / adjudicate
// ---------------------------------------------------------------------

fn cmd_diff(ctx: &Ctx, args: &DiffArgs) -> Result<ExitCode> {
    let a = ctx.read_doc(&args.file_a)?;
    let b = ctx.read_doc(&args.file_b)?;
    let report = diff_annotations(&a, &b)?;
    match ctx.format {
        OutputFormat::Table => {
            for e in &report.entries {
                println!(
                    "{}:{} `{}` {}: {}@{} vs {}@{}",
                    e.sent_id, e.token_id, e.form, e.kind, e.label_a, e.head_a, e.label_b, e.head_b
                );
            }
            println!(
                "# {} disagreements (head {}, label {}, both {})",
                report.summary.total(),
                report.summary.head,
                report.summary.label,
                report.summary.both
            );
        }
        OutputFormat::Tsv => print!("{}", report.to_tsv()),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        OutputFormat::Plotdata => bail!("diff has no plotdata output"),
    }
    Ok(if report.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_adjudicate(ctx: &Ctx, args: &AdjudicateArgs) -> Result<ExitCode> {
    let mut docs = Vec::new();
    for path in &args.files {
        docs.push(ctx.read_doc(path)?);
    }
    let bundle = adjudication_bundle(&docs)?;
    match ctx.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&bundle)?),
        OutputFormat::Plotdata => bail!("adjudicate has no plotdata output"),
        _ => {
            for entry in &bundle.entries {
                let readings: Vec<String> = entry
                    .readings
                    .iter()
                    .map(|r| {
                        let who: Vec<String> = r
                            .annotators
                            .iter()
                            .map(|&i| args.files[i].display().to_string())
                            .collect();
                        format!("{}@{} [{}]", r.label, r.head, who.join(", "))
                    })
                    .collect();
                let split: Vec<String> = entry
                    .readings
                    .iter()
                    .map(|r| r.annotators.len().to_string())
                    .collect();
                println!(
                    "{}:{} `{}` split {}: {}",
                    entry.sent_id,
                    entry.token_id,
                    entry.form,
                    split.join("-vs-"),
                    readings.join(" | ")
                );
            }
            println!("# {} contested tokens", bundle.entries.len());
            println!("# pairwise agreement (head+label identical tokens):");
            for row in &bundle.agreement_matrix {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                println!("#   {}", cells.join("\t"));
            }
        }
    }
    Ok(if bundle.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
