//! Inter-annotator agreement: three chance-corrected kappa variants.
//!
//! All use kappa = 1 - (1 - p0) / (1 - pe), but the agreement and chance
//! terms differ per kind:
//!
//! * unlabeled: p0 = aP / n over all nodes (aP = same head in both
//!   annotations), pe = 1 / s_bar with s_bar the average sentence size in
//!   tokens (a token in a sentence of s tokens has s candidate heads:
//!   s - 1 tokens plus the technical root);
//! * labeled: p0 = aL / aP over the edges common to both annotations,
//!   comparing base afuns, pe = 1 / |inventory|;
//! * full: p0 = aF / aP comparing labels including affixes,
//!   pe = 1 / (8 * |inventory|).
//!
//! Counts are pooled over the whole corpus and one kappa is computed per
//! document pair, never averaged from per-sentence kappas.

use serde::{Deserialize, Serialize};

use crate::diff::ensure_parallel;
use crate::error::{Error, Result};
use crate::inventory::AfunInventory;
use crate::tree::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgreementKind {
    Unlabeled,
    Labeled,
    Full,
}

impl std::fmt::Display for AgreementKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AgreementKind::Unlabeled => "unlabeled",
            AgreementKind::Labeled => "labeled",
            AgreementKind::Full => "full",
        })
    }
}

impl std::str::FromStr for AgreementKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unlabeled" => Ok(AgreementKind::Unlabeled),
            "labeled" => Ok(AgreementKind::Labeled),
            "full" => Ok(AgreementKind::Full),
            other => Err(Error::InvalidArgument(format!(
                "unknown agreement kind `{other}`"
            ))),
        }
    }
}

/// Kappa with its components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementResult {
    pub kind: AgreementKind,
    pub kappa: f64,
    /// Actual agreement.
    pub p0: f64,
    /// Probability of a random agreement.
    pub pe: f64,
    /// Nodes with the same head in both annotations.
    pub a_p: usize,
    /// Of those, nodes with the same base afun.
    pub a_l: usize,
    /// Of those, nodes with the same label including affixes.
    pub a_f: usize,
    /// Total nodes (tokens only, the technical root is not counted).
    pub n: usize,
    /// Average sentence size in tokens; set for the unlabeled kind.
    pub s_bar: Option<f64>,
}

struct PairCounts {
    a_p: usize,
    a_l: usize,
    a_f: usize,
    n: usize,
    sentences: usize,
}

fn count_pair(a: &Document, b: &Document) -> Result<PairCounts> {
    ensure_parallel(a, b)?;
    let mut counts = PairCounts {
        a_p: 0,
        a_l: 0,
        a_f: 0,
        n: 0,
        sentences: a.sentences.len(),
    };
    for (sa, sb) in a.sentences.iter().zip(&b.sentences) {
        counts.n += sa.tokens.len();
        for (ta, tb) in sa.tokens.iter().zip(&sb.tokens) {
            if ta.head != tb.head {
                continue;
            }
            counts.a_p += 1;
            if ta.label.afun != tb.label.afun {
                continue;
            }
            counts.a_l += 1;
            if ta.label.affixes == tb.label.affixes {
                counts.a_f += 1;
            }
        }
    }
    Ok(counts)
}

fn kappa_from(p0: f64, pe: f64) -> f64 {
    1.0 - (1.0 - p0) / (1.0 - pe)
}

/// Head agreement corrected by the chance of picking the same head.
pub fn unlabeled_kappa(a: &Document, b: &Document) -> Result<AgreementResult> {
    let counts = count_pair(a, b)?;
    if counts.n == 0 {
        return Err(Error::EmptyInput("documents contain no tokens".into()));
    }
    let s_bar = counts.n as f64 / counts.sentences as f64;
    let pe = 1.0 / s_bar;
    if pe >= 1.0 {
        return Err(Error::Degenerate(format!(
            "average sentence size {s_bar} yields chance agreement >= 1"
        )));
    }
    let p0 = counts.a_p as f64 / counts.n as f64;
    Ok(AgreementResult {
        kind: AgreementKind::Unlabeled,
        kappa: kappa_from(p0, pe),
        p0,
        pe,
        a_p: counts.a_p,
        a_l: counts.a_l,
        a_f: counts.a_f,
        n: counts.n,
        s_bar: Some(s_bar),
    })
}

fn labeled_like(
    a: &Document,
    b: &Document,
    kind: AgreementKind,
    label_space: usize,
) -> Result<AgreementResult> {
    let counts = count_pair(a, b)?;
    if counts.a_p == 0 {
        return Err(Error::Degenerate(
            "no common edges: label agreement is undefined".into(),
        ));
    }
    let hits = match kind {
        AgreementKind::Labeled => counts.a_l,
        AgreementKind::Full => counts.a_f,
        AgreementKind::Unlabeled => unreachable!("unlabeled handled separately"),
    };
    let p0 = hits as f64 / counts.a_p as f64;
    let pe = 1.0 / label_space as f64;
    Ok(AgreementResult {
        kind,
        kappa: kappa_from(p0, pe),
        p0,
        pe,
        a_p: counts.a_p,
        a_l: counts.a_l,
        a_f: counts.a_f,
        n: counts.n,
        s_bar: None,
    })
}

/// Base-afun agreement on common edges, chance term 1/|inventory|.
pub fn labeled_kappa(
    a: &Document,
    b: &Document,
    inventory: &AfunInventory,
) -> Result<AgreementResult> {
    labeled_like(a, b, AgreementKind::Labeled, inventory.size())
}

/// Full-label agreement on common edges, chance term 1/(8|inventory|).
pub fn full_kappa(
    a: &Document,
    b: &Document,
    inventory: &AfunInventory,
) -> Result<AgreementResult> {
    labeled_like(a, b, AgreementKind::Full, inventory.full_label_space())
}

pub fn agreement(
    a: &Document,
    b: &Document,
    kind: AgreementKind,
    inventory: &AfunInventory,
) -> Result<AgreementResult> {
    match kind {
        AgreementKind::Unlabeled => unlabeled_kappa(a, b),
        AgreementKind::Labeled => labeled_kappa(a, b, inventory),
        AgreementKind::Full => full_kappa(a, b, inventory),
    }
}

/// Agreement for explicitly supplied annotator pairs plus the unweighted
/// mean kappa over pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseAgreement {
    pub kind: AgreementKind,
    pub pairs: Vec<AgreementResult>,
    pub mean_kappa: f64,
}

pub fn pairwise_agreement(
    annotations: &[Document],
    pairs: &[(usize, usize)],
    kind: AgreementKind,
    inventory: &AfunInventory,
) -> Result<PairwiseAgreement> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput("no annotator pairs supplied".into()));
    }
    let mut results = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let get = |k: usize| {
            annotations.get(k).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "pair references document {k}, but only {} supplied",
                    annotations.len()
                ))
            })
        };
        results.push(agreement(get(i)?, get(j)?, kind, inventory)?);
    }
    let mean_kappa = results.iter().map(|r| r.kappa).sum::<f64>() / results.len() as f64;
    Ok(PairwiseAgreement {
        kind,
        pairs: results,
        mean_kappa,
    })
}
