//! Attachment accuracy of an annotation against a reference.
//!
//! Three scores over all tokens (punctuation included): UAS counts a hit
//! when the head matches, LAS when head and base afun match, FULL when
//! head and the label including affixes match. Each score is the number
//! of agreements divided by the total number of edges. Per-sentence hit
//! counts are kept for downstream resampling statistics.

use serde::{Deserialize, Serialize};

use crate::diff::ensure_parallel;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::tree::Document;

/// Which of the three attachment scores to work with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Uas,
    Las,
    Full,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Uas, Metric::Las, Metric::Full];
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Uas => "UAS",
            Metric::Las => "LAS",
            Metric::Full => "FULL",
        })
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uas" => Ok(Metric::Uas),
            "las" => Ok(Metric::Las),
            "full" => Ok(Metric::Full),
            other => Err(Error::InvalidArgument(format!("unknown metric `{other}`"))),
        }
    }
}

/// Hit counts for one sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceScore {
    pub sent_id: String,
    pub n_tokens: usize,
    pub uas_hits: usize,
    pub las_hits: usize,
    pub full_hits: usize,
}

/// Scores of one annotation against one reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub sentences: Vec<SentenceScore>,
    pub total_tokens: usize,
    pub total_uas_hits: usize,
    pub total_las_hits: usize,
    pub total_full_hits: usize,
    /// Percentages in 0..=100.
    pub uas: f64,
    pub las: f64,
    pub full: f64,
}

impl ScoreReport {
    fn from_sentences(sentences: Vec<SentenceScore>) -> Self {
        let total_tokens = sentences.iter().map(|s| s.n_tokens).sum();
        let total_uas_hits = sentences.iter().map(|s| s.uas_hits).sum();
        let total_las_hits = sentences.iter().map(|s| s.las_hits).sum();
        let total_full_hits = sentences.iter().map(|s| s.full_hits).sum();
        let pct = |hits: usize| {
            if total_tokens == 0 {
                0.0
            } else {
                100.0 * hits as f64 / total_tokens as f64
            }
        };
        ScoreReport {
            uas: pct(total_uas_hits),
            las: pct(total_las_hits),
            full: pct(total_full_hits),
            sentences,
            total_tokens,
            total_uas_hits,
            total_las_hits,
            total_full_hits,
        }
    }

    /// TSV export: one row per sentence plus a TOTAL row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("sent_id\tn_tokens\tuas_hits\tlas_hits\tfull_hits\n");
        for s in &self.sentences {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                s.sent_id, s.n_tokens, s.uas_hits, s.las_hits, s.full_hits
            ));
        }
        out.push_str(&format!(
            "TOTAL\t{}\t{}\t{}\t{}\n",
            self.total_tokens, self.total_uas_hits, self.total_las_hits, self.total_full_hits
        ));
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut sentences = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if idx == 0 || line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 5 {
                return Err(Error::InvalidArgument(format!(
                    "score TSV line {}: expected 5 columns",
                    idx + 1
                )));
            }
            if f[0] == "TOTAL" {
                continue; // derived
            }
            let num = |s: &str, what: &str| -> Result<usize> {
                s.parse().map_err(|_| {
                    Error::InvalidArgument(format!("score TSV line {}: bad {what}", idx + 1))
                })
            };
            sentences.push(SentenceScore {
                sent_id: f[0].to_owned(),
                n_tokens: num(f[1], "n_tokens")?,
                uas_hits: num(f[2], "uas_hits")?,
                las_hits: num(f[3], "las_hits")?,
                full_hits: num(f[4], "full_hits")?,
            });
        }
        Ok(ScoreReport::from_sentences(sentences))
    }
}

/// Scores `ann` against `gold`. The documents must be parallel.
pub fn attachment_scores(ann: &Document, gold: &Document) -> Result<ScoreReport> {
    ensure_parallel(ann, gold)?;
    let pairs: Vec<_> = ann.sentences.iter().zip(&gold.sentences).collect();
    let sentences = Execution::default().map_slice(&pairs, |(sa, sg)| {
        let mut score = SentenceScore {
            sent_id: sa.sent_id.clone(),
            n_tokens: sa.tokens.len(),
            uas_hits: 0,
            las_hits: 0,
            full_hits: 0,
        };
        for (ta, tg) in sa.tokens.iter().zip(&sg.tokens) {
            if ta.head != tg.head {
                continue;
            }
            score.uas_hits += 1;
            if ta.label.afun != tg.label.afun {
                continue;
            }
            score.las_hits += 1;
            if ta.label.affixes == tg.label.affixes {
                score.full_hits += 1;
            }
        }
        score
    });
    Ok(ScoreReport::from_sentences(sentences))
}

/// Unweighted arithmetic mean of report-level percentages, one report per
/// annotator: returns (mean UAS, mean LAS, mean FULL).
pub fn average_scores(reports: &[ScoreReport]) -> Result<(f64, f64, f64)> {
    if reports.is_empty() {
        return Err(Error::EmptyInput("no score reports to average".into()));
    }
    let n = reports.len() as f64;
    Ok((
        reports.iter().map(|r| r.uas).sum::<f64>() / n,
        reports.iter().map(|r| r.las).sum::<f64>() / n,
        reports.iter().map(|r| r.full).sum::<f64>() / n,
    ))
}
