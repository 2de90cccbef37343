//! Experiment-workflow support: balanced annotation designs, the timing
//! ledger, extrapolation of annotation cost, and adjudication bundles.
//!
//! A design assigns annotators (working in stable pairs) to task x mode
//! x dataset cells so that no annotator sees a dataset twice, every pair
//! works every set-up, and every dataset is annotated equally often in
//! each mode. With two pairs this is the classic 4-annotator layout:
//! per task, one pair takes the odd dataset pre-parsed and the even one
//! from scratch while the other pair mirrors it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diff::{diff_annotations, DisagreementReport};
use crate::error::{Error, Result};
use crate::tree::Document;

/// Canonical task names for a four-task design.
pub const CANONICAL_TASKS: [&str; 4] = ["no_supp", "rules", "annot", "rul_annot"];

/// Annotation input mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    PreParsed,
    FromScratch,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::PreParsed, Mode::FromScratch];
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::PreParsed => "pre-parsed",
            Mode::FromScratch => "from-scratch",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pre-parsed" => Ok(Mode::PreParsed),
            "from-scratch" => Ok(Mode::FromScratch),
            other => Err(Error::InvalidArgument(format!("unknown mode `{other}`"))),
        }
    }
}

/// One assignment: an annotator works one dataset in one task and mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub annotator: String,
    pub pair: String,
    pub task: String,
    pub mode: Mode,
    pub dataset: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignTable {
    pub rows: Vec<Assignment>,
}

impl DesignTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("annotator\tpair\ttask\tmode\tdataset\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.annotator, r.pair, r.task, r.mode, r.dataset
            ));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if idx == 0 || line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 5 {
                return Err(Error::InvalidArgument(format!(
                    "design TSV line {}: expected 5 columns",
                    idx + 1
                )));
            }
            rows.push(Assignment {
                annotator: f[0].to_owned(),
                pair: f[1].to_owned(),
                task: f[2].to_owned(),
                mode: f[3].parse()?,
                dataset: f[4].to_owned(),
            });
        }
        Ok(DesignTable { rows })
    }
}

/// Generates a balanced design. Annotator count must be even, with the
/// pair count even as well unless there is a single pair (a lone pair
/// cannot cover both modes of a dataset without repeats, so per-dataset
/// mode balance is waived there). Datasets must number two per task;
/// they are named D1..Dn, tasks use the canonical four names when
/// `n_tasks` is 4 and `task1..taskN` otherwise.
pub fn generate_design(
    annotators: &[String],
    n_tasks: usize,
    n_datasets: usize,
) -> Result<DesignTable> {
    if annotators.is_empty() || annotators.len() % 2 != 0 {
        return Err(Error::Design(format!(
            "pairing infeasible: need an even number of annotators, got {}",
            annotators.len()
        )));
    }
    if n_tasks == 0 {
        return Err(Error::Design("need at least one task".into()));
    }
    if n_datasets != 2 * n_tasks {
        return Err(Error::Design(format!(
            "need two datasets per task: {n_tasks} tasks require {} datasets, got {n_datasets}",
            2 * n_tasks
        )));
    }
    let n_pairs = annotators.len() / 2;
    if n_pairs > 1 && n_pairs % 2 != 0 {
        return Err(Error::Design(format!(
            "mode balance infeasible with {n_pairs} pairs: use one pair or an even number"
        )));
    }
    {
        let mut unique = annotators.to_vec();
        unique.sort();
        unique.dedup();
        if unique.len() != annotators.len() {
            return Err(Error::Design("duplicate annotator names".into()));
        }
    }

    let pairs: Vec<(String, [&String; 2])> = (0..n_pairs)
        .map(|p| {
            let a = &annotators[2 * p];
            let b = &annotators[2 * p + 1];
            (format!("{a}-{b}"), [a, b])
        })
        .collect();

    let task_name = |t: usize| {
        if n_tasks == 4 {
            CANONICAL_TASKS[t].to_owned()
        } else {
            format!("task{}", t + 1)
        }
    };

    let mut rows = Vec::new();
    for t in 0..n_tasks {
        let task = task_name(t);
        for (d_local, dataset_idx) in [2 * t, 2 * t + 1].into_iter().enumerate() {
            let dataset = format!("D{}", dataset_idx + 1);
            for mode in Mode::BOTH {
                for (p, (pair_name, members)) in pairs.iter().enumerate() {
                    // Even pairs take odd datasets pre-parsed; odd pairs mirror.
                    let pre_on_first = p % 2 == 0;
                    let takes = match mode {
                        Mode::PreParsed => pre_on_first == (d_local == 0),
                        Mode::FromScratch => pre_on_first != (d_local == 0),
                    };
                    if !takes {
                        continue;
                    }
                    for member in members {
                        rows.push(Assignment {
                            annotator: (*member).clone(),
                            pair: pair_name.clone(),
                            task: task.clone(),
                            mode,
                            dataset: dataset.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(DesignTable { rows })
}

/// A named constraint violation found by [`verify_design`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignViolation {
    pub constraint: String,
    pub detail: String,
}

impl std::fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.constraint, self.detail)
    }
}

/// Checks every design invariant; empty means the table is valid.
pub fn verify_design(design: &DesignTable) -> Vec<DesignViolation> {
    let mut violations = Vec::new();
    let violation = |constraint: &str, detail: String| DesignViolation {
        constraint: constraint.to_owned(),
        detail,
    };

    // An annotator never annotates the same data twice.
    let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for row in &design.rows {
        *seen
            .entry((row.annotator.as_str(), row.dataset.as_str()))
            .or_default() += 1;
    }
    for ((annotator, dataset), count) in &seen {
        if *count > 1 {
            violations.push(violation(
                "annotator repeats dataset",
                format!("{annotator} is assigned {dataset} {count} times"),
            ));
        }
    }

    // Pairs are stable: an annotator belongs to exactly one pair, and the
    // pair's members always appear together on a (task, mode, dataset).
    let mut pair_of: BTreeMap<&str, &str> = BTreeMap::new();
    for row in &design.rows {
        match pair_of.get(row.annotator.as_str()) {
            None => {
                pair_of.insert(&row.annotator, &row.pair);
            }
            Some(p) if *p != row.pair => {
                violations.push(violation(
                    "unstable pair",
                    format!("{} appears in pairs {} and {}", row.annotator, p, row.pair),
                ));
            }
            _ => {}
        }
    }
    let mut cell_members: BTreeMap<(&str, &str, Mode, &str), Vec<&str>> = BTreeMap::new();
    for row in &design.rows {
        cell_members
            .entry((row.pair.as_str(), row.task.as_str(), row.mode, row.dataset.as_str()))
            .or_default()
            .push(&row.annotator);
    }
    let pair_size = {
        let mut members: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (annotator, pair) in &pair_of {
            members.entry(pair).or_default().push(annotator);
        }
        members
    };
    for ((pair, task, mode, dataset), present) in &cell_members {
        let expected = pair_size.get(pair).map_or(0, Vec::len);
        if present.len() != expected {
            violations.push(violation(
                "split pair",
                format!(
                    "pair {pair} has {} of {expected} members on {task}/{mode}/{dataset}",
                    present.len()
                ),
            ));
        }
    }

    // Set-up coverage: every pair works every (task, mode) exactly once.
    let tasks: Vec<&str> = {
        let mut t: Vec<&str> = design.rows.iter().map(|r| r.task.as_str()).collect();
        t.sort();
        t.dedup();
        t
    };
    for pair in pair_size.keys() {
        for task in &tasks {
            for mode in Mode::BOTH {
                let datasets: Vec<&str> = cell_members
                    .keys()
                    .filter(|(p, t, m, _)| p == pair && t == task && *m == mode)
                    .map(|(_, _, _, d)| *d)
                    .collect();
                if datasets.len() != 1 {
                    violations.push(violation(
                        "set-up coverage",
                        format!(
                            "pair {pair} has {} datasets on {task}/{mode}, expected 1",
                            datasets.len()
                        ),
                    ));
                }
            }
        }
    }

    // Dataset mode balance: annotated equally often in both modes
    // (waived for single-pair designs, where it is unsatisfiable).
    if pair_size.len() > 1 {
        let mut mode_counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for row in &design.rows {
            let entry = mode_counts.entry(row.dataset.as_str()).or_default();
            match row.mode {
                Mode::PreParsed => entry.0 += 1,
                Mode::FromScratch => entry.1 += 1,
            }
        }
        for (dataset, (pre, scratch)) in &mode_counts {
            if pre != scratch {
                violations.push(violation(
                    "dataset mode balance",
                    format!("{dataset} annotated {pre}x pre-parsed but {scratch}x from-scratch"),
                ));
            }
        }
    }

    violations
}

// ---------------------------------------------------------------------
// Timing
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingEntry {
    pub annotator: String,
    pub task: String,
    pub mode: Mode,
    pub dataset: String,
    pub minutes: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TimingLedger {
    pub entries: Vec<TimingEntry>,
}

impl TimingLedger {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("annotator\ttask\tmode\tdataset\tminutes\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.annotator, e.task, e.mode, e.dataset, e.minutes
            ));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if idx == 0 || line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 5 {
                return Err(Error::Ledger(format!(
                    "ledger TSV line {}: expected 5 columns",
                    idx + 1
                )));
            }
            entries.push(TimingEntry {
                annotator: f[0].to_owned(),
                task: f[1].to_owned(),
                mode: f[2].parse()?,
                dataset: f[3].to_owned(),
                minutes: f[4]
                    .parse()
                    .map_err(|_| Error::Ledger(format!("ledger TSV line {}: bad minutes", idx + 1)))?,
            });
        }
        Ok(TimingLedger { entries })
    }
}

/// Mean minutes for one (task, mode) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetupMean {
    pub task: String,
    pub mode: Mode,
    pub mean_minutes: f64,
    pub entries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRatio {
    pub task: String,
    /// from-scratch mean / pre-parsed mean, when both modes are present.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSummary {
    pub per_setup: Vec<SetupMean>,
    pub per_task_ratio: Vec<TaskRatio>,
    pub pre_parsed_mean: Option<f64>,
    pub from_scratch_mean: Option<f64>,
    /// Overall from-scratch mean / pre-parsed mean.
    pub overall_ratio: Option<f64>,
}

impl TimeSummary {
    pub fn setup_mean(&self, task: &str, mode: Mode) -> Option<f64> {
        self.per_setup
            .iter()
            .find(|s| s.task == task && s.mode == mode)
            .map(|s| s.mean_minutes)
    }
}

/// Mean minutes per set-up plus from-scratch/pre-parsed ratios.
pub fn time_summary(ledger: &TimingLedger) -> Result<TimeSummary> {
    if ledger.entries.is_empty() {
        return Err(Error::EmptyInput("timing ledger has no entries".into()));
    }
    for entry in &ledger.entries {
        if !(entry.minutes > 0.0) {
            return Err(Error::Ledger(format!(
                "non-positive minutes for {} on {}/{}",
                entry.annotator, entry.task, entry.mode
            )));
        }
    }

    // Task order follows first appearance in the ledger.
    let mut tasks: Vec<String> = Vec::new();
    for entry in &ledger.entries {
        if !tasks.contains(&entry.task) {
            tasks.push(entry.task.clone());
        }
    }

    let mean_of = |task: Option<&str>, mode: Mode| -> Option<(f64, usize)> {
        let values: Vec<f64> = ledger
            .entries
            .iter()
            .filter(|e| e.mode == mode && task.is_none_or(|t| e.task == t))
            .map(|e| e.minutes)
            .collect();
        if values.is_empty() {
            None
        } else {
            Some((values.iter().sum::<f64>() / values.len() as f64, values.len()))
        }
    };

    let mut per_setup = Vec::new();
    let mut per_task_ratio = Vec::new();
    for task in &tasks {
        let pre = mean_of(Some(task), Mode::PreParsed);
        let scratch = mean_of(Some(task), Mode::FromScratch);
        for (mode, stats) in [(Mode::PreParsed, pre), (Mode::FromScratch, scratch)] {
            if let Some((mean_minutes, entries)) = stats {
                per_setup.push(SetupMean {
                    task: task.clone(),
                    mode,
                    mean_minutes,
                    entries,
                });
            }
        }
        per_task_ratio.push(TaskRatio {
            task: task.clone(),
            ratio: match (pre, scratch) {
                (Some((p, _)), Some((s, _))) => Some(s / p),
                _ => None,
            },
        });
    }

    let pre_parsed_mean = mean_of(None, Mode::PreParsed).map(|(m, _)| m);
    let from_scratch_mean = mean_of(None, Mode::FromScratch).map(|(m, _)| m);
    let overall_ratio = match (pre_parsed_mean, from_scratch_mean) {
        (Some(p), Some(s)) => Some(s / p),
        _ => None,
    };

    Ok(TimeSummary {
        per_setup,
        per_task_ratio,
        pre_parsed_mean,
        from_scratch_mean,
        overall_ratio,
    })
}

// ---------------------------------------------------------------------
// Extrapolation
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolationReport {
    pub task: Option<String>,
    pub mode: Option<Mode>,
    pub mean_minutes_per_dataset: f64,
    pub tokens_per_dataset: u64,
    pub target_tokens: u64,
    pub hours: f64,
}

/// Linear per-token cost model: hours needed to annotate `target_tokens`
/// once, given the mean minutes a dataset of `tokens_per_dataset` took.
pub fn extrapolate_hours(
    mean_minutes_per_dataset: f64,
    tokens_per_dataset: u64,
    target_tokens: u64,
) -> Result<f64> {
    if !(mean_minutes_per_dataset > 0.0) {
        return Err(Error::InvalidArgument(
            "mean minutes per dataset must be positive".into(),
        ));
    }
    if tokens_per_dataset == 0 || target_tokens == 0 {
        return Err(Error::InvalidArgument("token counts must be positive".into()));
    }
    Ok(mean_minutes_per_dataset / tokens_per_dataset as f64 * target_tokens as f64 / 60.0)
}

// ---------------------------------------------------------------------
// Dataset profiling
// ---------------------------------------------------------------------

/// Shape statistics of one dataset, used to pick datasets of similar
/// difficulty when laying out an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetProfile {
    pub doc_id: String,
    pub sentences: usize,
    pub tokens: usize,
    pub mean_tokens_per_sentence: f64,
    /// Mean over sentences of the deepest node (root children at depth 1).
    pub mean_tree_depth: f64,
}

/// Profiles a dataset for similarity balancing. The document must be a
/// valid tree per sentence.
pub fn dataset_profile(doc: &Document) -> Result<DatasetProfile> {
    if doc.sentences.is_empty() {
        return Err(Error::EmptyInput("document has no sentences".into()));
    }
    let mut depth_sum = 0.0;
    for sentence in &doc.sentences {
        let n = sentence.tokens.len();
        let mut depths = vec![0usize; n + 1];
        let mut max_depth = 0usize;
        // Token ids are 1..n; a token's head may come later in the
        // sentence, so resolve depths iteratively.
        let mut resolved = vec![false; n + 1];
        resolved[0] = true;
        for token in &sentence.tokens {
            if resolved[token.id] {
                continue;
            }
            let mut chain = vec![token.id];
            let mut head = token.head;
            while head != 0 && !resolved[head] {
                chain.push(head);
                head = sentence.tokens[head - 1].head;
                if chain.len() > n {
                    return Err(Error::Degenerate(format!(
                        "sentence `{}` is not a tree",
                        sentence.sent_id
                    )));
                }
            }
            let mut depth = depths[head];
            for &node in chain.iter().rev() {
                depth += 1;
                depths[node] = depth;
                resolved[node] = true;
            }
        }
        for &d in &depths[1..] {
            max_depth = max_depth.max(d);
        }
        depth_sum += max_depth as f64;
    }
    let tokens = doc.token_count();
    Ok(DatasetProfile {
        doc_id: doc.doc_id.clone(),
        sentences: doc.sentences.len(),
        tokens,
        mean_tokens_per_sentence: tokens as f64 / doc.sentences.len() as f64,
        mean_tree_depth: depth_sum / doc.sentences.len() as f64,
    })
}

// ---------------------------------------------------------------------
// Adjudication
// ---------------------------------------------------------------------

/// One annotator's (head, label) reading of a token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenReading {
    pub head: usize,
    pub label: String,
    /// Indices into the annotation list that gave this reading.
    pub annotators: Vec<usize>,
}

/// A token on which at least two annotations disagree, with every
/// distinct reading and its supporters (e.g. a 3-vs-1 split).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjudicationEntry {
    pub sent_id: String,
    pub token_id: usize,
    pub form: String,
    pub readings: Vec<TokenReading>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjudicationBundle {
    pub entries: Vec<AdjudicationEntry>,
    /// Union of pairwise diffs, keyed (i, j) with i < j.
    pub pairwise: Vec<(usize, usize, DisagreementReport)>,
    /// agreement_matrix[i][j] = tokens on which annotations i and j agree
    /// in both head and label; the diagonal holds the token count.
    pub agreement_matrix: Vec<Vec<usize>>,
}

impl AdjudicationBundle {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Merges >= 2 parallel annotations into an adjudication worksheet.
pub fn adjudication_bundle(annotations: &[Document]) -> Result<AdjudicationBundle> {
    if annotations.len() < 2 {
        return Err(Error::EmptyInput(
            "adjudication needs at least two annotations".into(),
        ));
    }
    let n = annotations.len();
    let total_tokens = annotations[0].token_count();

    let mut pairwise = Vec::new();
    let mut agreement_matrix = vec![vec![0usize; n]; n];
    for (i, row) in agreement_matrix.iter_mut().enumerate() {
        row[i] = total_tokens;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let report = diff_annotations(&annotations[i], &annotations[j])?;
            let agree = total_tokens - report.entries.len();
            agreement_matrix[i][j] = agree;
            agreement_matrix[j][i] = agree;
            pairwise.push((i, j, report));
        }
    }

    let mut entries = Vec::new();
    let base = &annotations[0];
    for (s_idx, sentence) in base.sentences.iter().enumerate() {
        for (t_idx, token) in sentence.tokens.iter().enumerate() {
            let mut readings: Vec<TokenReading> = Vec::new();
            for (a_idx, ann) in annotations.iter().enumerate() {
                let t = &ann.sentences[s_idx].tokens[t_idx];
                let head = t.head;
                let label = t.label.to_full_string();
                match readings
                    .iter_mut()
                    .find(|r| r.head == head && r.label == label)
                {
                    Some(reading) => reading.annotators.push(a_idx),
                    None => readings.push(TokenReading {
                        head,
                        label,
                        annotators: vec![a_idx],
                    }),
                }
            }
            if readings.len() > 1 {
                entries.push(AdjudicationEntry {
                    sent_id: sentence.sent_id.clone(),
                    token_id: token.id,
                    form: token.form.clone(),
                    readings,
                });
            }
        }
    }

    Ok(AdjudicationBundle {
        entries,
        pairwise,
        agreement_matrix,
    })
}
