//! The consolidated experiment report: accuracy with uncertainty and
//! significance, agreement, timing, and cost extrapolation in one
//! document, plus plot-series emission.
//!
//! Input is a manifest TSV with header
//! `task	mode	annotator	dataset	ann	gold`; the `ann` and `gold`
//! paths are resolved relative to the manifest file.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;
use tbqa_core::{
    attachment_scores, average_scores, bootstrap_stddev, extrapolate_hours, pairwise_agreement,
    permutation_test, sentence_stats, time_summary, verify_design, AgreementKind,
    BootstrapResult, DesignTable, DesignViolation, Document, ExtrapolationReport, Metric, Mode,
    PermutationResult, ScoreReport, SentenceStat, TimeSummary, TimingLedger,
};

use crate::render::{self, Series};
use crate::{Ctx, OutputFormat};

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Manifest TSV: task, mode, annotator, dataset, ann, gold.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Timing ledger TSV.
    #[arg(long)]
    ledger: Option<PathBuf>,
    /// Design table TSV.
    #[arg(long)]
    design: Option<PathBuf>,
    /// Tokens per dataset; defaults to the mean gold token count.
    #[arg(long)]
    dataset_tokens: Option<u64>,
    /// Corpus size the cost extrapolation targets.
    #[arg(long, default_value_t = 1_000_000)]
    target_tokens: u64,
    /// Baseline task for significance tests.
    #[arg(long, default_value = "no_supp")]
    baseline: String,
    /// Directory for plotdata series files (with --format plotdata).
    #[arg(long)]
    out: Option<PathBuf>,
}

struct ManifestRow {
    task: String,
    mode: Mode,
    annotator: String,
    dataset: String,
    ann: PathBuf,
    gold: PathBuf,
}

fn load_manifest(path: &Path) -> Result<Vec<ManifestRow>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading manifest `{}`", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 6 {
            bail!("manifest line {}: expected 6 columns", idx + 1);
        }
        rows.push(ManifestRow {
            task: f[0].to_owned(),
            mode: f[1].parse()?,
            annotator: f[2].to_owned(),
            dataset: f[3].to_owned(),
            ann: base.join(f[4]),
            gold: base.join(f[5]),
        });
    }
    if rows.is_empty() {
        bail!("manifest `{}` lists no annotations", path.display());
    }
    Ok(rows)
}

#[derive(Serialize)]
struct AccuracyCell {
    metric: String,
    /// Unweighted mean of per-annotator percentages.
    mean_pct: f64,
    bootstrap: BootstrapResult,
    p_vs_baseline: Option<PermutationResult>,
}

#[derive(Serialize)]
struct AccuracyRow {
    task: String,
    mode: Mode,
    annotators: usize,
    cells: Vec<AccuracyCell>,
}

#[derive(Serialize)]
struct AgreementRow {
    task: String,
    mode: Mode,
    kind: AgreementKind,
    pairs: usize,
    mean_kappa: f64,
}

#[derive(Serialize)]
struct ReportDoc {
    accuracy: Vec<AccuracyRow>,
    agreement: Vec<AgreementRow>,
    time: TimeSummary,
    extrapolation: Vec<ExtrapolationReport>,
    design_violations: Vec<DesignViolation>,
    samples: usize,
    seed: u64,
}

/// Per-annotator score reports and pooled per-sentence records for one
/// (task, mode) cell.
struct CellScores {
    task: String,
    mode: Mode,
    reports: Vec<ScoreReport>,
    pooled: HashMap<&'static str, Vec<SentenceStat>>,
}

fn metric_key(metric: Metric) -> &'static str {
    match metric {
        Metric::Uas => "UAS",
        Metric::Las => "LAS",
        Metric::Full => "FULL",
    }
}

pub fn cmd_report(ctx: &Ctx, args: &ReportArgs) -> Result<ExitCode> {
    let Some(manifest_path) = &args.manifest else {
        bail!("incomplete bundle: missing annotations manifest (--manifest)");
    };
    let Some(ledger_path) = &args.ledger else {
        bail!("incomplete bundle: missing timing ledger (--ledger)");
    };
    let Some(design_path) = &args.design else {
        bail!("incomplete bundle: missing design table (--design)");
    };

    let manifest = load_manifest(manifest_path)?;
    let ledger = TimingLedger::from_tsv(
        &std::fs::read_to_string(ledger_path)
            .with_context(|| format!("reading ledger `{}`", ledger_path.display()))?,
    )?;
    let design = DesignTable::from_tsv(
        &std::fs::read_to_string(design_path)
            .with_context(|| format!("reading design `{}`", design_path.display()))?,
    )?;
    let design_violations = verify_design(&design);

    // Documents cached by path: gold files are shared across rows.
    let mut docs: HashMap<PathBuf, Document> = HashMap::new();
    let mut read = |ctx: &Ctx, path: &Path| -> Result<Document> {
        if let Some(doc) = docs.get(path) {
            return Ok(doc.clone());
        }
        let doc = ctx.read_doc(path)?;
        docs.insert(path.to_owned(), doc.clone());
        Ok(doc)
    };

    // Tasks in first-appearance order, modes in fixed order.
    let mut tasks: Vec<String> = Vec::new();
    for row in &manifest {
        if !tasks.contains(&row.task) {
            tasks.push(row.task.clone());
        }
    }

    let mut cells: Vec<CellScores> = Vec::new();
    for task in &tasks {
        for mode in Mode::BOTH {
            let rows: Vec<&ManifestRow> = manifest
                .iter()
                .filter(|r| &r.task == task && r.mode == mode)
                .collect();
            if rows.is_empty() {
                continue;
            }
            let mut reports = Vec::new();
            let mut pooled: HashMap<&'static str, Vec<SentenceStat>> = HashMap::new();
            for (idx, row) in rows.iter().enumerate() {
                let ann = read(ctx, &row.ann)?;
                let gold = read(ctx, &row.gold)?;
                let report = attachment_scores(&ann, &gold).with_context(|| {
                    format!("scoring `{}` for {task}/{mode}", row.ann.display())
                })?;
                for metric in Metric::ALL {
                    let records = sentence_stats(&report, metric);
                    let qualified = records.into_iter().map(|mut s| {
                        s.unit = format!("{idx}:{}", s.unit);
                        s
                    });
                    pooled.entry(metric_key(metric)).or_default().extend(qualified);
                }
                reports.push(report);
            }
            cells.push(CellScores {
                task: task.clone(),
                mode,
                reports,
                pooled,
            });
        }
    }

    // Accuracy with bootstrap stddev and significance vs the baseline task.
    let baseline_task = if tasks.contains(&args.baseline) {
        args.baseline.clone()
    } else {
        tasks[0].clone()
    };
    let mut accuracy: Vec<AccuracyRow> = Vec::new();
    for cell in &cells {
        let (uas, las, full) = average_scores(&cell.reports)?;
        let mut row = AccuracyRow {
            task: cell.task.clone(),
            mode: cell.mode,
            annotators: cell.reports.len(),
            cells: Vec::new(),
        };
        for metric in Metric::ALL {
            let key = metric_key(metric);
            let records = &cell.pooled[key];
            let bootstrap = bootstrap_stddev(records, ctx.samples, ctx.seed)?;
            let p_vs_baseline = if cell.task != baseline_task {
                cells
                    .iter()
                    .find(|c| c.task == baseline_task && c.mode == cell.mode)
                    .map(|base| permutation_test(records, &base.pooled[key], ctx.samples, ctx.seed))
                    .transpose()?
            } else {
                None
            };
            row.cells.push(AccuracyCell {
                metric: key.to_owned(),
                mean_pct: match metric {
                    Metric::Uas => uas,
                    Metric::Las => las,
                    Metric::Full => full,
                },
                bootstrap,
                p_vs_baseline,
            });
        }
        accuracy.push(row);
    }

    // Agreement: pair up the two annotators of each dataset per cell.
    let mut agreement: Vec<AgreementRow> = Vec::new();
    for task in &tasks {
        for mode in Mode::BOTH {
            let rows: Vec<&ManifestRow> = manifest
                .iter()
                .filter(|r| &r.task == task && r.mode == mode)
                .collect();
            if rows.is_empty() {
                continue;
            }
            let mut datasets: Vec<&str> = Vec::new();
            for row in &rows {
                if !datasets.contains(&row.dataset.as_str()) {
                    datasets.push(&row.dataset);
                }
            }
            let mut pair_docs: Vec<Document> = Vec::new();
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for dataset in datasets {
                let members: Vec<&&ManifestRow> =
                    rows.iter().filter(|r| r.dataset == dataset).collect();
                if members.len() != 2 {
                    let who: Vec<&str> =
                        members.iter().map(|r| r.annotator.as_str()).collect();
                    bail!(
                        "agreement needs exactly two annotators per dataset, {task}/{mode} \
                         has [{}] on {dataset}",
                        who.join(", ")
                    );
                }
                pair_docs.push(read(ctx, &members[0].ann)?);
                pair_docs.push(read(ctx, &members[1].ann)?);
                pairs.push((pair_docs.len() - 2, pair_docs.len() - 1));
            }
            for kind in [
                AgreementKind::Unlabeled,
                AgreementKind::Labeled,
                AgreementKind::Full,
            ] {
                let pw = pairwise_agreement(&pair_docs, &pairs, kind, &ctx.inventory)?;
                agreement.push(AgreementRow {
                    task: task.clone(),
                    mode,
                    kind,
                    pairs: pw.pairs.len(),
                    mean_kappa: pw.mean_kappa,
                });
            }
        }
    }

    // Timing and extrapolation.
    let time = time_summary(&ledger)?;
    let dataset_tokens = match args.dataset_tokens {
        Some(t) => t,
        None => {
            let golds: Vec<&Document> = {
                let mut seen: Vec<&Path> = Vec::new();
                let mut out = Vec::new();
                for row in &manifest {
                    if !seen.contains(&row.gold.as_path()) {
                        seen.push(&row.gold);
                        out.push(&docs[&row.gold]);
                    }
                }
                out
            };
            let total: usize = golds.iter().map(|d| d.token_count()).sum();
            (total as f64 / golds.len() as f64).round() as u64
        }
    };
    let mut extrapolation = Vec::new();
    for setup in &time.per_setup {
        extrapolation.push(ExtrapolationReport {
            task: Some(setup.task.clone()),
            mode: Some(setup.mode),
            mean_minutes_per_dataset: setup.mean_minutes,
            tokens_per_dataset: dataset_tokens,
            target_tokens: args.target_tokens,
            hours: extrapolate_hours(setup.mean_minutes, dataset_tokens, args.target_tokens)?,
        });
    }

    let doc = ReportDoc {
        accuracy,
        agreement,
        time,
        extrapolation,
        design_violations,
        samples: ctx.samples,
        seed: ctx.seed,
    };

    match ctx.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&doc)?),
        OutputFormat::Plotdata => emit_plotdata(&doc, &ledger, args.out.as_deref())?,
        _ => print_tables(&doc),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_tables(doc: &ReportDoc) {
    println!("## Accuracy (mean pct, score ±stddev, p vs baseline)");
    println!(
        "{:<12} {:<13} {:<26} {:<26} {:<26}",
        "task", "mode", "UAS", "LAS", "FULL"
    );
    for row in &doc.accuracy {
        let cell = |c: &AccuracyCell| {
            let mut s = render::score_pm(&c.bootstrap);
            if let Some(p) = &c.p_vs_baseline {
                s.push_str(&format!(" {}", render::p_value_pct(p)));
            }
            s
        };
        println!(
            "{:<12} {:<13} {:<26} {:<26} {:<26}",
            row.task,
            row.mode.to_string(),
            cell(&row.cells[0]),
            cell(&row.cells[1]),
            cell(&row.cells[2]),
        );
    }

    println!();
    println!("## Agreement (mean kappa over pairs)");
    println!(
        "{:<12} {:<13} {:>9} {:>9} {:>9}",
        "task", "mode", "unlabeled", "labeled", "full"
    );
    let mut seen: Vec<(String, Mode)> = Vec::new();
    for row in &doc.agreement {
        let key = (row.task.clone(), row.mode);
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let find = |kind: AgreementKind| {
            doc.agreement
                .iter()
                .find(|r| r.task == row.task && r.mode == row.mode && r.kind == kind)
                .map_or(String::from("-"), |r| format!("{:.2}", r.mean_kappa))
        };
        println!(
            "{:<12} {:<13} {:>9} {:>9} {:>9}",
            row.task,
            row.mode.to_string(),
            find(AgreementKind::Unlabeled),
            find(AgreementKind::Labeled),
            find(AgreementKind::Full),
        );
    }

    println!();
    println!("## Time (mean minutes per set-up)");
    println!("{:<12} {:>12} {:>13} {:>7}", "task", "pre-parsed", "from-scratch", "ratio");
    let fmt = |v: Option<f64>| v.map_or(String::from("-"), |m| format!("{m:.2}"));
    for ratio in &doc.time.per_task_ratio {
        println!(
            "{:<12} {:>12} {:>13} {:>7}",
            ratio.task,
            fmt(doc.time.setup_mean(&ratio.task, Mode::PreParsed)),
            fmt(doc.time.setup_mean(&ratio.task, Mode::FromScratch)),
            fmt(ratio.ratio)
        );
    }

    println!();
    println!("## Extrapolated hours");
    for r in &doc.extrapolation {
        println!(
            "{:<12} {:<13} {:>9.1} h  ({} tokens at {:.2} min per {}-token dataset)",
            r.task.as_deref().unwrap_or("-"),
            r.mode.map_or(String::from("-"), |m| m.to_string()),
            r.hours,
            r.target_tokens,
            r.mean_minutes_per_dataset,
            r.tokens_per_dataset
        );
    }

    if !doc.design_violations.is_empty() {
        println!();
        println!("## Design violations");
        for v in &doc.design_violations {
            println!("{v}");
        }
    }
    println!();
    println!("# samples = {}, seed = {}", doc.samples, doc.seed);
}

/// Per-(task, mode) series of per-annotator minutes.
pub fn time_series(ledger: &TimingLedger) -> Vec<Series> {
    let mut series: Vec<Series> = Vec::new();
    for entry in &ledger.entries {
        let name = format!("time/{}/{}", entry.task, entry.mode);
        let point = (entry.annotator.clone(), entry.minutes);
        match series.iter_mut().find(|s| s.name == name) {
            Some(s) => s.points.push(point),
            None => series.push(Series {
                name,
                points: vec![point],
            }),
        }
    }
    series
}

fn emit_plotdata(doc: &ReportDoc, ledger: &TimingLedger, out: Option<&Path>) -> Result<()> {
    let mut accuracy: Vec<Series> = Vec::new();
    for metric in ["UAS", "LAS", "FULL"] {
        for mode in Mode::BOTH {
            let points: Vec<(String, f64)> = doc
                .accuracy
                .iter()
                .filter(|r| r.mode == mode)
                .filter_map(|r| {
                    r.cells
                        .iter()
                        .find(|c| c.metric == metric)
                        .map(|c| (r.task.clone(), c.mean_pct))
                })
                .collect();
            if !points.is_empty() {
                accuracy.push(Series {
                    name: format!("accuracy/{metric}/{mode}"),
                    points,
                });
            }
        }
    }

    let mut kappa: Vec<Series> = Vec::new();
    for kind in [
        AgreementKind::Unlabeled,
        AgreementKind::Labeled,
        AgreementKind::Full,
    ] {
        for mode in Mode::BOTH {
            let points: Vec<(String, f64)> = doc
                .agreement
                .iter()
                .filter(|r| r.kind == kind && r.mode == mode)
                .map(|r| (r.task.clone(), r.mean_kappa))
                .collect();
            if !points.is_empty() {
                kappa.push(Series {
                    name: format!("kappa/{kind}/{mode}"),
                    points,
                });
            }
        }
    }

    let time = time_series(ledger);

    let mut hours: Vec<Series> = Vec::new();
    for mode in Mode::BOTH {
        let points: Vec<(String, f64)> = doc
            .extrapolation
            .iter()
            .filter(|r| r.mode == Some(mode))
            .map(|r| (r.task.clone().unwrap_or_default(), r.hours))
            .collect();
        if !points.is_empty() {
            hours.push(Series {
                name: format!("hours/{mode}"),
                points,
            });
        }
    }

    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating `{}`", dir.display()))?;
            for (name, series) in [
                ("accuracy.tsv", &accuracy),
                ("kappa.tsv", &kappa),
                ("time.tsv", &time),
                ("hours.tsv", &hours),
            ] {
                std::fs::write(dir.join(name), render::render_series(series))
                    .with_context(|| format!("writing `{}`", dir.join(name).display()))?;
            }
        }
        None => {
            for series in [&accuracy, &kappa, &time, &hours] {
                print!("{}", render::render_series(series));
            }
        }
    }
    Ok(())
}
