//! Token-wise comparison of two parallel annotations.
//!
//! Two documents are parallel when they annotate the same text: same
//! sentence ids in the same order and the same token forms. The diff
//! lists every token whose head or full label differs, which is the
//! input to gold-standard adjudication.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::Document;

/// What differs at a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffKind {
    Head,
    Label,
    Both,
}

impl std::fmt::Display for DiffKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiffKind::Head => "head",
            DiffKind::Label => "label",
            DiffKind::Both => "both",
        })
    }
}

impl std::str::FromStr for DiffKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "head" => Ok(DiffKind::Head),
            "label" => Ok(DiffKind::Label),
            "both" => Ok(DiffKind::Both),
            other => Err(Error::InvalidArgument(format!("unknown diff kind `{other}`"))),
        }
    }
}

/// One differing token. Head and label are given for both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEntry {
    pub sent_id: String,
    pub token_id: usize,
    pub form: String,
    pub kind: DiffKind,
    pub head_a: usize,
    pub head_b: usize,
    pub label_a: String,
    pub label_b: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSummary {
    pub head: usize,
    pub label: usize,
    pub both: usize,
}

impl DiffSummary {
    pub fn total(&self) -> usize {
        self.head + self.label + self.both
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisagreementReport {
    pub entries: Vec<DiffEntry>,
    pub summary: DiffSummary,
}

impl DisagreementReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// TSV export: header plus one row per entry. The summary is derived,
    /// so `from_tsv` recomputes it.
    pub fn to_tsv(&self) -> String {
        let mut out =
            String::from("sent_id\ttoken_id\tform\tkind\thead_a\thead_b\tlabel_a\tlabel_b\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                e.sent_id, e.token_id, e.form, e.kind, e.head_a, e.head_b, e.label_a, e.label_b
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
            if f.len() != 8 {
                return Err(Error::InvalidArgument(format!(
                    "diff TSV line {}: expected 8 columns",
                    idx + 1
                )));
            }
            let bad = |what: &str| {
                Error::InvalidArgument(format!("diff TSV line {}: bad {what}", idx + 1))
            };
            entries.push(DiffEntry {
                sent_id: f[0].to_owned(),
                token_id: f[1].parse().map_err(|_| bad("token_id"))?,
                form: f[2].to_owned(),
                kind: f[3].parse()?,
                head_a: f[4].parse().map_err(|_| bad("head_a"))?,
                head_b: f[5].parse().map_err(|_| bad("head_b"))?,
                label_a: f[6].to_owned(),
                label_b: f[7].to_owned(),
            });
        }
        Ok(report_from_entries(entries))
    }
}

fn report_from_entries(entries: Vec<DiffEntry>) -> DisagreementReport {
    let mut summary = DiffSummary::default();
    for entry in &entries {
        match entry.kind {
            DiffKind::Head => summary.head += 1,
            DiffKind::Label => summary.label += 1,
            DiffKind::Both => summary.both += 1,
        }
    }
    DisagreementReport { entries, summary }
}

/// Verifies the parallel-document precondition shared by diffing,
/// scoring, and agreement.
pub fn ensure_parallel(a: &Document, b: &Document) -> Result<()> {
    if a.sentences.len() != b.sentences.len() {
        return Err(Error::NonParallel(format!(
            "sentence counts differ: {} vs {}",
            a.sentences.len(),
            b.sentences.len()
        )));
    }
    for (sa, sb) in a.sentences.iter().zip(&b.sentences) {
        if sa.sent_id != sb.sent_id {
            return Err(Error::NonParallel(format!(
                "sent_id mismatch: `{}` vs `{}`",
                sa.sent_id, sb.sent_id
            )));
        }
        if sa.tokens.len() != sb.tokens.len() {
            return Err(Error::NonParallel(format!(
                "sentence `{}`: token counts differ: {} vs {}",
                sa.sent_id,
                sa.tokens.len(),
                sb.tokens.len()
            )));
        }
        for (ta, tb) in sa.tokens.iter().zip(&sb.tokens) {
            if ta.form != tb.form {
                return Err(Error::NonParallel(format!(
                    "sentence `{}` token {}: forms differ: `{}` vs `{}`",
                    sa.sent_id, ta.id, ta.form, tb.form
                )));
            }
        }
    }
    Ok(())
}

/// Lists every token where `a` and `b` disagree in head or full label.
pub fn diff_annotations(a: &Document, b: &Document) -> Result<DisagreementReport> {
    ensure_parallel(a, b)?;
    let mut entries = Vec::new();
    for (sa, sb) in a.sentences.iter().zip(&b.sentences) {
        for (ta, tb) in sa.tokens.iter().zip(&sb.tokens) {
            let head_differs = ta.head != tb.head;
            let label_a = ta.label.to_full_string();
            let label_b = tb.label.to_full_string();
            let label_differs = label_a != label_b;
            let kind = match (head_differs, label_differs) {
                (true, true) => DiffKind::Both,
                (true, false) => DiffKind::Head,
                (false, true) => DiffKind::Label,
                (false, false) => continue,
            };
            entries.push(DiffEntry {
                sent_id: sa.sent_id.clone(),
                token_id: ta.id,
                form: ta.form.clone(),
                kind,
                head_a: ta.head,
                head_b: tb.head,
                label_a,
                label_b,
            });
        }
    }
    Ok(report_from_entries(entries))
}
