//! Dependency-function labels: a base afun plus affix flags.
//!
//! Three affix types mark ellipsis (`_E`), parenthesis (`_P`), and
//! membership in a coordination or apposition structure (`_Co` / `_Ap`).
//! `_Co` and `_Ap` are two surface forms of the single member slot, so a
//! label carries at most one of them. The canonical serialized order is
//! member, then `_P`, then `_E` (e.g. `Atr_Ap_P_E`).

use serde::{Deserialize, Serialize};

use crate::error::ParseErrorKind;
use crate::inventory::AfunInventory;

/// Surface form of the member affix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Member {
    Co,
    Ap,
}

impl Member {
    pub fn suffix(self) -> &'static str {
        match self {
            Member::Co => "_Co",
            Member::Ap => "_Ap",
        }
    }
}

/// The three independent affix slots of a label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffixSet {
    pub member: Option<Member>,
    pub parenthesis: bool,
    pub ellipsis: bool,
}

impl AffixSet {
    pub const EMPTY: AffixSet = AffixSet {
        member: None,
        parenthesis: false,
        ellipsis: false,
    };

    pub fn is_empty(&self) -> bool {
        self.member.is_none() && !self.parenthesis && !self.ellipsis
    }
}

/// A full dependency-function label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub afun: String,
    pub affixes: AffixSet,
}

impl Label {
    pub fn new(afun: impl Into<String>) -> Self {
        Label {
            afun: afun.into(),
            affixes: AffixSet::EMPTY,
        }
    }

    pub fn with_affixes(afun: impl Into<String>, affixes: AffixSet) -> Self {
        Label {
            afun: afun.into(),
            affixes,
        }
    }

    /// Parses a serialized label like `Obj_Co_P`. Affix suffixes are
    /// accepted in any order; duplicates and a `_Co`/`_Ap` clash are
    /// rejected. The base afun must be in the inventory.
    pub fn parse(text: &str, inventory: &AfunInventory) -> Result<Self, (ParseErrorKind, String)> {
        let mut parts = text.split('_');
        let afun = parts.next().unwrap_or("");
        if !inventory.contains(afun) {
            return Err((
                ParseErrorKind::UnknownAfun,
                format!("`{afun}` is not in the inventory"),
            ));
        }
        let mut affixes = AffixSet::EMPTY;
        for part in parts {
            match part {
                "Co" | "Ap" => {
                    if affixes.member.is_some() {
                        return Err((
                            ParseErrorKind::BadAffix,
                            format!("label `{text}` carries more than one member affix"),
                        ));
                    }
                    affixes.member = Some(if part == "Co" { Member::Co } else { Member::Ap });
                }
                "P" => {
                    if affixes.parenthesis {
                        return Err((
                            ParseErrorKind::BadAffix,
                            format!("label `{text}` repeats `_P`"),
                        ));
                    }
                    affixes.parenthesis = true;
                }
                "E" => {
                    if affixes.ellipsis {
                        return Err((
                            ParseErrorKind::BadAffix,
                            format!("label `{text}` repeats `_E`"),
                        ));
                    }
                    affixes.ellipsis = true;
                }
                other => {
                    return Err((
                        ParseErrorKind::BadAffix,
                        format!("unknown affix `_{other}` in label `{text}`"),
                    ));
                }
            }
        }
        Ok(Label {
            afun: afun.to_owned(),
            affixes,
        })
    }

    /// Canonical serialized form: afun, member suffix, `_P`, `_E`.
    pub fn to_full_string(&self) -> String {
        let mut s = self.afun.clone();
        if let Some(member) = self.affixes.member {
            s.push_str(member.suffix());
        }
        if self.affixes.parenthesis {
            s.push_str("_P");
        }
        if self.affixes.ellipsis {
            s.push_str("_E");
        }
        s
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_full_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv() -> AfunInventory {
        AfunInventory::pdt_default()
    }

    #[test]
    fn parses_member_affix() {
        let label = Label::parse("Obj_Co", &inv()).unwrap();
        assert_eq!(label.afun, "Obj");
        assert_eq!(label.affixes.member, Some(Member::Co));
        assert!(!label.affixes.parenthesis);
        assert!(!label.affixes.ellipsis);
    }

    #[test]
    fn canonical_order_is_member_p_e() {
        let label = Label::with_affixes(
            "Atr",
            AffixSet {
                member: Some(Member::Ap),
                parenthesis: true,
                ellipsis: true,
            },
        );
        assert_eq!(label.to_full_string(), "Atr_Ap_P_E");
        // Non-canonical input order still parses to the same label.
        assert_eq!(Label::parse("Atr_E_P_Ap", &inv()).unwrap(), label);
    }

    #[test]
    fn rejects_unknown_afun_and_bad_affixes() {
        assert_eq!(
            Label::parse("Xyz", &inv()).unwrap_err().0,
            ParseErrorKind::UnknownAfun
        );
        assert_eq!(
            Label::parse("Obj_Co_Ap", &inv()).unwrap_err().0,
            ParseErrorKind::BadAffix
        );
        assert_eq!(
            Label::parse("Obj_E_E", &inv()).unwrap_err().0,
            ParseErrorKind::BadAffix
        );
        assert_eq!(
            Label::parse("Obj_Q", &inv()).unwrap_err().0,
            ParseErrorKind::BadAffix
        );
    }
}
