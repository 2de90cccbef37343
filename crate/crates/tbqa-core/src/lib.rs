//! Quality assurance and evaluation for dependency-syntax treebank
//! annotation.
//!
//! The crate covers the measurement side of a manual annotation project
//! over PDT-style dependency trees:
//!
//! * [`inventory`], [`label`], [`tree`], [`format`] — the data model:
//!   afun inventories, labels with affixes, tokens/sentences/documents,
//!   a columnar file format, and structural tree validation;
//! * [`diff`] — token-wise comparison of parallel annotations, feeding
//!   gold-standard adjudication;
//! * [`lint`] — declarative guideline checks loaded from config;
//! * [`metrics`] — UAS / LAS / FULL accuracy against a reference;
//! * [`agreement`] — unlabeled, labeled, and full-label Cohen's kappa;
//! * [`stats`] — seeded bootstrap standard deviations and Monte Carlo
//!   permutation tests over per-sentence records;
//! * [`experiment`] — balanced annotation designs, timing ledgers, and
//!   annotation-cost extrapolation.
//!
//! Everything is deterministic: randomized routines take an explicit
//! seed and produce bit-identical results whether they run sequentially
//! or on the rayon-backed parallel path (the `parallel` feature, on by
//! default).

pub mod agreement;
pub mod diff;
pub mod error;
mod exec;
pub mod experiment;
pub mod format;
pub mod inventory;
pub mod label;
pub mod lint;
pub mod metrics;
pub mod stats;
pub mod tree;

pub use agreement::{
    agreement, full_kappa, labeled_kappa, pairwise_agreement, unlabeled_kappa, AgreementKind,
    AgreementResult, PairwiseAgreement,
};
pub use diff::{diff_annotations, ensure_parallel, DiffEntry, DiffKind, DisagreementReport};
pub use error::{Error, ParseErrorKind, Result};
pub use exec::Execution;
pub use experiment::{
    adjudication_bundle, extrapolate_hours, generate_design, time_summary, verify_design,
    AdjudicationBundle, Assignment, DesignTable, DesignViolation, ExtrapolationReport, Mode,
    TimeSummary, TimingEntry, TimingLedger,
};
pub use format::{parse_document, serialize_document};
pub use inventory::AfunInventory;
pub use label::{AffixSet, Label, Member};
pub use lint::{
    explain_finding, findings_from_tsv, findings_to_tsv, load_ruleset, run_checks, Finding, Rule,
    RuleSet, Severity,
};
pub use metrics::{attachment_scores, average_scores, Metric, ScoreReport, SentenceScore};
pub use stats::{
    bootstrap_stddev, bootstrap_stddev_with, permutation_test, permutation_test_with,
    sentence_stats, token_units, BootstrapResult, PermutationResult, SentenceStat,
};
pub use tree::{validate_tree, AnnotatedSentence, Document, StructuralError, Token};
