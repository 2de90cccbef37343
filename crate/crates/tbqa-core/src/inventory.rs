//! The afun label inventory.
//!
//! An inventory is the closed set of base dependency-function labels a
//! treebank project annotates with. The shipped default holds the 25
//! analytical functions of PDT-style annotation; other schemes can be
//! loaded from a config file. Chance-agreement constants derive from the
//! inventory size: each base label combines with three independent affix
//! flags, so the full label space is `8 * size` (200 for the default).

use indexmap::IndexSet;

use crate::error::{Error, Result};

/// Base afuns of the default PDT-style label scheme.
pub const DEFAULT_AFUNS: &[&str] = &[
    "Pred", "Sb", "Obj", "Adv", "Atr", "Pnom", "AuxV", "AuxP", "AuxC", "Coord", "Apos", "AuxZ",
    "AuxG", "AuxX", "AuxK", "Denom", "Partl", "ExD", "Atv", "AtvV", "AuxT", "AuxR", "AuxO",
    "AuxY", "AuxS",
];

/// Ordered set of base afun names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfunInventory {
    labels: IndexSet<String>,
}

impl AfunInventory {
    /// Builds an inventory from an ordered label list, rejecting duplicates
    /// and labels that are empty, contain whitespace, or contain `_`
    /// (underscore is reserved for affix suffixes).
    pub fn from_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = IndexSet::new();
        for label in labels {
            let label = label.into();
            if label.is_empty() {
                return Err(Error::Inventory("empty afun name".into()));
            }
            if label.chars().any(char::is_whitespace) || label.contains('_') {
                return Err(Error::Inventory(format!(
                    "afun name `{label}` must not contain whitespace or `_`"
                )));
            }
            if !set.insert(label.clone()) {
                return Err(Error::Inventory(format!("duplicate afun `{label}`")));
            }
        }
        if set.is_empty() {
            return Err(Error::Inventory("inventory has no labels".into()));
        }
        Ok(AfunInventory { labels: set })
    }

    /// The default 25-label PDT-style inventory.
    pub fn pdt_default() -> Self {
        AfunInventory::from_labels(DEFAULT_AFUNS.iter().copied())
            .expect("default inventory is well-formed")
    }

    /// Parses a line-oriented config: one afun per line, `#` comments and
    /// blank lines ignored.
    pub fn from_config_text(text: &str) -> Result<Self> {
        let labels = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_owned);
        AfunInventory::from_labels(labels)
    }

    pub fn contains(&self, afun: &str) -> bool {
        self.labels.contains(afun)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Number of distinct full labels: each base afun combines with the
    /// three affix slots (2^3 combinations).
    pub fn full_label_space(&self) -> usize {
        8 * self.labels.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_has_25_labels_and_200_full_labels() {
        let inv = AfunInventory::pdt_default();
        assert_eq!(inv.size(), 25);
        assert_eq!(inv.full_label_space(), 200);
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(AfunInventory::from_labels(["Sb", "Sb"]).is_err());
        assert!(AfunInventory::from_labels(["Sb", ""]).is_err());
        assert!(AfunInventory::from_labels(["Sb", "Obj_Co"]).is_err());
        assert!(AfunInventory::from_labels(["a b"]).is_err());
        assert!(AfunInventory::from_labels(Vec::<String>::new()).is_err());
    }

    #[test]
    fn config_text_skips_comments_and_blanks() {
        let inv = AfunInventory::from_config_text("# heading\nPred\n\nSb\n").unwrap();
        assert_eq!(inv.size(), 2);
        assert!(inv.contains("Pred"));
        assert!(inv.contains("Sb"));
        assert_eq!(inv.full_label_space(), 16);
    }
}
