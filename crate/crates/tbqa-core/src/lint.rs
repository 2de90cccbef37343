//! Declarative consistency checks over annotated trees.
//!
//! Rules live in a config file, not in code, so a project can grow its
//! rule set mid-annotation. A rule names a scope (`if` clauses, all of
//! which must hold for a node) and either requirements (`require`, all
//! must hold) or prohibitions (`forbid`, none may hold); a node in scope
//! that fails a requirement or matches a prohibition yields a finding.
//!
//! Config grammar, line oriented (`#` comments, blank lines ignored):
//!
//! ```text
//! ruleset NAME                      (optional, once)
//! group ID "DESCRIPTION"
//! rule ID error|warning "DESCRIPTION"
//!     if CONDITION
//!     require CONDITION
//!     forbid CONDITION
//! ```
//!
//! A condition is optionally negated with `not` and tests one atom:
//!
//! ```text
//! FIELD = VALUE | FIELD in {V1, V2} | FIELD ~ PREFIX*
//! affix E|P|Co|Ap|member|any
//! parent.is_root
//! is_leaf
//! ```
//!
//! where FIELD is one of `afun`, `tag`, `lemma`, `form`, `parent.afun`,
//! `parent.tag`, `parent.lemma`, or `ancestor.afun`. Afun values are
//! checked against the inventory at load time. `parent.*` atoms are
//! false for children of the technical root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::inventory::AfunInventory;
use crate::tree::{AnnotatedSentence, Document, Token};

/// Default rule configuration shipped with the crate.
pub const DEFAULT_RULES: &str = include_str!("../assets/default.rules");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

impl std::fmt::Display for Severity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

impl std::str::FromStr for Severity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "warning" => Ok(Severity::Warning),
            "error" => Ok(Severity::Error),
            other => Err(Error::InvalidArgument(format!(
                "unknown severity `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Subject {
    Own,
    Parent,
    Ancestor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Afun,
    Tag,
    Lemma,
    Form,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum StringTest {
    Equals(String),
    OneOf(Vec<String>),
    Prefix(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AffixTest {
    Ellipsis,
    Parenthesis,
    Co,
    Ap,
    Member,
    Any,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Atom {
    Field {
        subject: Subject,
        field: Field,
        test: StringTest,
    },
    Affix(AffixTest),
    ParentIsRoot,
    IsLeaf,
}

/// One possibly negated atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    negated: bool,
    atom: Atom,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.negated {
            f.write_str("not ")?;
        }
        match &self.atom {
            Atom::Field {
                subject,
                field,
                test,
            } => {
                let subject = match subject {
                    Subject::Own => "",
                    Subject::Parent => "parent.",
                    Subject::Ancestor => "ancestor.",
                };
                let field = match field {
                    Field::Afun => "afun",
                    Field::Tag => "tag",
                    Field::Lemma => "lemma",
                    Field::Form => "form",
                };
                match test {
                    StringTest::Equals(v) => write!(f, "{subject}{field} = {v}"),
                    StringTest::OneOf(vs) => {
                        write!(f, "{subject}{field} in {{{}}}", vs.join(", "))
                    }
                    StringTest::Prefix(p) => write!(f, "{subject}{field} ~ {p}*"),
                }
            }
            Atom::Affix(test) => {
                let name = match test {
                    AffixTest::Ellipsis => "E",
                    AffixTest::Parenthesis => "P",
                    AffixTest::Co => "Co",
                    AffixTest::Ap => "Ap",
                    AffixTest::Member => "member",
                    AffixTest::Any => "any",
                };
                write!(f, "affix {name}")
            }
            Atom::ParentIsRoot => f.write_str("parent.is_root"),
            Atom::IsLeaf => f.write_str("is_leaf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    pub group: String,
    pub severity: Severity,
    pub description: String,
    scope: Vec<Condition>,
    requires: Vec<Condition>,
    forbids: Vec<Condition>,
}

impl Rule {
    /// Human-readable expectation, used in messages.
    fn expectation(&self) -> String {
        let mut parts = Vec::new();
        if !self.requires.is_empty() {
            let reqs: Vec<String> = self.requires.iter().map(Condition::to_string).collect();
            parts.push(format!("expected {}", reqs.join(" and ")));
        }
        if !self.forbids.is_empty() {
            let forb: Vec<String> = self.forbids.iter().map(Condition::to_string).collect();
            parts.push(format!("must not match {}", forb.join(" or ")));
        }
        parts.join("; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleGroup {
    pub id: String,
    pub description: String,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub name: String,
    pub groups: Vec<RuleGroup>,
}

impl RuleSet {
    /// Loads and validates the shipped default configuration.
    pub fn default_rules(inventory: &AfunInventory) -> Result<Self> {
        load_ruleset(DEFAULT_RULES, inventory)
    }

    pub fn rule_count(&self) -> usize {
        self.groups.iter().map(|g| g.rules.len()).sum()
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.groups.iter().flat_map(|g| g.rules.iter())
    }

    pub fn find_rule(&self, rule_id: &str) -> Option<&Rule> {
        self.rules().find(|r| r.id == rule_id)
    }

    /// A copy of this set without the named group.
    pub fn without_group(&self, group_id: &str) -> RuleSet {
        RuleSet {
            name: self.name.clone(),
            groups: self
                .groups
                .iter()
                .filter(|g| g.id != group_id)
                .cloned()
                .collect(),
        }
    }
}

/// One guideline violation, pinned to a node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule_id: String,
    pub severity: Severity,
    pub sent_id: String,
    pub token_id: usize,
    pub form: String,
    pub observed_label: String,
    pub observed_head: usize,
    pub message: String,
}

impl Finding {
    pub fn to_tsv_header() -> &'static str {
        "rule_id\tseverity\tsent_id\ttoken_id\tform\tobserved_label\tobserved_head\tmessage"
    }

    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.rule_id,
            self.severity,
            self.sent_id,
            self.token_id,
            self.form,
            self.observed_label,
            self.observed_head,
            self.message
        )
    }
}

/// TSV export for a findings list, `from_tsv` being its inverse.
pub fn findings_to_tsv(findings: &[Finding]) -> String {
    let mut out = String::from(Finding::to_tsv_header());
    out.push('\n');
    for f in findings {
        out.push_str(&f.to_tsv_row());
        out.push('\n');
    }
    out
}

pub fn findings_from_tsv(text: &str) -> Result<Vec<Finding>> {
    let mut findings = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 8 {
            return Err(Error::InvalidArgument(format!(
                "findings TSV line {}: expected 8 columns",
                idx + 1
            )));
        }
        findings.push(Finding {
            rule_id: f[0].to_owned(),
            severity: f[1].parse()?,
            sent_id: f[2].to_owned(),
            token_id: f[3].parse().map_err(|_| {
                Error::InvalidArgument(format!("findings TSV line {}: bad token_id", idx + 1))
            })?,
            form: f[4].to_owned(),
            observed_label: f[5].to_owned(),
            observed_head: f[6].parse().map_err(|_| {
                Error::InvalidArgument(format!("findings TSV line {}: bad head", idx + 1))
            })?,
            message: f[7].to_owned(),
        });
    }
    Ok(findings)
}

// ---------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------

fn config_err(line: usize, message: impl Into<String>) -> Error {
    Error::RuleConfig {
        line,
        message: message.into(),
    }
}

fn parse_quoted(rest: &str, line: usize) -> Result<String> {
    let rest = rest.trim();
    let inner = rest
        .strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .ok_or_else(|| config_err(line, "expected a double-quoted description"))?;
    if inner.contains('"') {
        return Err(config_err(line, "description must not contain `\"`"));
    }
    Ok(inner.to_owned())
}

fn parse_field(name: &str) -> Option<(Subject, Field)> {
    let (subject, field) = match name.split_once('.') {
        None => (Subject::Own, name),
        Some(("parent", f)) => (Subject::Parent, f),
        Some(("ancestor", f)) => (Subject::Ancestor, f),
        Some(_) => return None,
    };
    let field = match field {
        "afun" => Field::Afun,
        "tag" => Field::Tag,
        "lemma" => Field::Lemma,
        "form" => Field::Form,
        _ => return None,
    };
    if subject == Subject::Ancestor && field != Field::Afun {
        return None; // only afun is tracked up the tree
    }
    Some((subject, field))
}

fn parse_condition(text: &str, line: usize, inventory: &AfunInventory) -> Result<Condition> {
    let mut rest = text.trim();
    let negated = if let Some(stripped) = rest.strip_prefix("not ") {
        rest = stripped.trim_start();
        true
    } else {
        false
    };

    let atom = if rest == "parent.is_root" {
        Atom::ParentIsRoot
    } else if rest == "is_leaf" {
        Atom::IsLeaf
    } else if let Some(affix) = rest.strip_prefix("affix ") {
        let test = match affix.trim() {
            "E" => AffixTest::Ellipsis,
            "P" => AffixTest::Parenthesis,
            "Co" => AffixTest::Co,
            "Ap" => AffixTest::Ap,
            "member" => AffixTest::Member,
            "any" => AffixTest::Any,
            other => {
                return Err(config_err(
                    line,
                    format!("unknown affix test `{other}` (expected E, P, Co, Ap, member, any)"),
                ))
            }
        };
        Atom::Affix(test)
    } else if let Some((field_name, op_rest)) = rest.split_once(' ') {
        let (subject, field) = parse_field(field_name)
            .ok_or_else(|| config_err(line, format!("unknown field `{field_name}`")))?;
        let op_rest = op_rest.trim_start();
        let test = if let Some(value) = op_rest.strip_prefix("= ") {
            StringTest::Equals(value.trim().to_owned())
        } else if let Some(list) = op_rest.strip_prefix("in ") {
            let list = list.trim();
            let inner = list
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| config_err(line, "expected `in {A, B, ...}`"))?;
            let values: Vec<String> = inner
                .split(',')
                .map(|v| v.trim().to_owned())
                .filter(|v| !v.is_empty())
                .collect();
            if values.is_empty() {
                return Err(config_err(line, "empty value set"));
            }
            StringTest::OneOf(values)
        } else if let Some(prefix) = op_rest.strip_prefix("~ ") {
            let prefix = prefix
                .trim()
                .strip_suffix('*')
                .ok_or_else(|| config_err(line, "prefix pattern must end with `*`"))?;
            if prefix.is_empty() {
                return Err(config_err(line, "empty prefix pattern"));
            }
            StringTest::Prefix(prefix.to_owned())
        } else {
            return Err(config_err(
                line,
                format!("cannot parse condition operator in `{rest}`"),
            ));
        };

        if field == Field::Afun {
            match &test {
                StringTest::Equals(v) => {
                    if !inventory.contains(v) {
                        return Err(config_err(line, format!("afun `{v}` is not in the inventory")));
                    }
                }
                StringTest::OneOf(vs) => {
                    for v in vs {
                        if !inventory.contains(v) {
                            return Err(config_err(
                                line,
                                format!("afun `{v}` is not in the inventory"),
                            ));
                        }
                    }
                }
                StringTest::Prefix(p) => {
                    if !inventory.labels().any(|l| l.starts_with(p.as_str())) {
                        return Err(config_err(
                            line,
                            format!("prefix `{p}*` matches no afun in the inventory"),
                        ));
                    }
                }
            }
        }
        Atom::Field {
            subject,
            field,
            test,
        }
    } else {
        return Err(config_err(line, format!("cannot parse condition `{rest}`")));
    };

    Ok(Condition { negated, atom })
}

/// Parses and validates a rule configuration against an inventory.
pub fn load_ruleset(config: &str, inventory: &AfunInventory) -> Result<RuleSet> {
    let mut name = String::from("unnamed");
    let mut groups: Vec<RuleGroup> = Vec::new();
    let mut seen_rule_ids: Vec<String> = Vec::new();

    for (idx, raw) in config.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }

        if let Some(rest) = line.strip_prefix("ruleset ") {
            name = rest.trim().to_owned();
        } else if let Some(rest) = line.strip_prefix("group ") {
            let rest = rest.trim();
            let (id, desc) = rest
                .split_once(' ')
                .ok_or_else(|| config_err(line_no, "expected `group ID \"description\"`"))?;
            groups.push(RuleGroup {
                id: id.to_owned(),
                description: parse_quoted(desc, line_no)?,
                rules: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("rule ") {
            let group = groups
                .last_mut()
                .ok_or_else(|| config_err(line_no, "rule outside of a group"))?;
            let mut parts = rest.trim().splitn(3, ' ');
            let id = parts
                .next()
                .filter(|s| !s.is_empty())
                .ok_or_else(|| config_err(line_no, "missing rule id"))?;
            let severity: Severity = parts
                .next()
                .ok_or_else(|| config_err(line_no, "missing severity"))?
                .parse()
                .map_err(|e: Error| config_err(line_no, e.to_string()))?;
            let desc = parse_quoted(
                parts
                    .next()
                    .ok_or_else(|| config_err(line_no, "missing description"))?,
                line_no,
            )?;
            if seen_rule_ids.iter().any(|r| r == id) {
                return Err(config_err(line_no, format!("duplicate rule id `{id}`")));
            }
            seen_rule_ids.push(id.to_owned());
            group.rules.push(Rule {
                id: id.to_owned(),
                group: group.id.clone(),
                severity,
                description: desc,
                scope: Vec::new(),
                requires: Vec::new(),
                forbids: Vec::new(),
            });
        } else if let Some(rest) = line
            .strip_prefix("if ")
            .map(|r| ("if", r))
            .or_else(|| line.strip_prefix("require ").map(|r| ("require", r)))
            .or_else(|| line.strip_prefix("forbid ").map(|r| ("forbid", r)))
        {
            let (kind, cond_text) = rest;
            let rule = groups
                .last_mut()
                .and_then(|g| g.rules.last_mut())
                .ok_or_else(|| config_err(line_no, format!("`{kind}` outside of a rule")))?;
            let cond = parse_condition(cond_text, line_no, inventory)?;
            match kind {
                "if" => rule.scope.push(cond),
                "require" => rule.requires.push(cond),
                _ => rule.forbids.push(cond),
            }
        } else {
            return Err(config_err(line_no, format!("unrecognized line `{line}`")));
        }
    }

    for rule in groups.iter().flat_map(|g| &g.rules) {
        if rule.requires.is_empty() && rule.forbids.is_empty() {
            return Err(Error::RuleConfig {
                line: 0,
                message: format!("rule `{}` has no require or forbid clause", rule.id),
            });
        }
    }

    Ok(RuleSet { name, groups })
}

// ---------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------

struct NodeCtx<'a> {
    sentence: &'a AnnotatedSentence,
    token: &'a Token,
    child_counts: &'a [usize],
}

impl<'a> NodeCtx<'a> {
    fn parent(&self) -> Option<&'a Token> {
        match self.token.head {
            0 => None,
            h => self.sentence.tokens.get(h - 1),
        }
    }

    fn field_value(token: &'a Token, field: Field) -> &'a str {
        match field {
            Field::Afun => &token.label.afun,
            Field::Tag => &token.tag,
            Field::Lemma => &token.lemma,
            Field::Form => &token.form,
        }
    }
}

impl StringTest {
    fn matches(&self, value: &str) -> bool {
        match self {
            StringTest::Equals(v) => value == v,
            StringTest::OneOf(vs) => vs.iter().any(|v| v == value),
            StringTest::Prefix(p) => value.starts_with(p.as_str()),
        }
    }
}

fn eval_atom(atom: &Atom, ctx: &NodeCtx) -> bool {
    match atom {
        Atom::Field {
            subject,
            field,
            test,
        } => match subject {
            Subject::Own => test.matches(NodeCtx::field_value(ctx.token, *field)),
            Subject::Parent => ctx
                .parent()
                .is_some_and(|p| test.matches(NodeCtx::field_value(p, *field))),
            Subject::Ancestor => {
                let mut cur = ctx.token;
                // Bounded walk: a valid tree never needs more steps than
                // it has tokens, and invalid input must not hang us.
                for _ in 0..ctx.sentence.tokens.len() {
                    match cur.head {
                        0 => return false,
                        h => match ctx.sentence.tokens.get(h - 1) {
                            None => return false,
                            Some(parent) => {
                                if test.matches(NodeCtx::field_value(parent, *field)) {
                                    return true;
                                }
                                cur = parent;
                            }
                        },
                    }
                }
                false
            }
        },
        Atom::Affix(test) => {
            let affixes = &ctx.token.label.affixes;
            match test {
                AffixTest::Ellipsis => affixes.ellipsis,
                AffixTest::Parenthesis => affixes.parenthesis,
                AffixTest::Co => affixes.member == Some(crate::label::Member::Co),
                AffixTest::Ap => affixes.member == Some(crate::label::Member::Ap),
                AffixTest::Member => affixes.member.is_some(),
                AffixTest::Any => !affixes.is_empty(),
            }
        }
        Atom::ParentIsRoot => ctx.token.head == 0,
        Atom::IsLeaf => ctx
            .child_counts
            .get(ctx.token.id)
            .is_none_or(|&c| c == 0),
    }
}

fn eval_condition(cond: &Condition, ctx: &NodeCtx) -> bool {
    eval_atom(&cond.atom, ctx) != cond.negated
}

fn check_sentence(sentence: &AnnotatedSentence, rules: &[&Rule]) -> Vec<Finding> {
    let n = sentence.tokens.len();
    let mut child_counts = vec![0usize; n + 1];
    for token in &sentence.tokens {
        if token.head <= n {
            child_counts[token.head] += 1;
        }
    }
    let mut findings = Vec::new();
    for token in &sentence.tokens {
        let ctx = NodeCtx {
            sentence,
            token,
            child_counts: &child_counts,
        };
        for rule in rules {
            if !rule.scope.iter().all(|c| eval_condition(c, &ctx)) {
                continue;
            }
            let require_failed = rule.requires.iter().any(|c| !eval_condition(c, &ctx));
            let forbid_hit = rule.forbids.iter().any(|c| eval_condition(c, &ctx));
            if require_failed || forbid_hit {
                let observed_label = token.label.to_full_string();
                findings.push(Finding {
                    rule_id: rule.id.clone(),
                    severity: rule.severity,
                    sent_id: sentence.sent_id.clone(),
                    token_id: token.id,
                    form: token.form.clone(),
                    message: format!(
                        "{}: token `{}` carries {} with head {}",
                        rule.description, token.form, observed_label, token.head
                    ),
                    observed_label,
                    observed_head: token.head,
                });
            }
        }
    }
    findings
}

/// Runs every rule over every node, returning findings ordered by
/// (sentence, token, rule id). A conformant document yields none.
pub fn run_checks(doc: &Document, rules: &RuleSet) -> Vec<Finding> {
    let mut sorted_rules: Vec<&Rule> = rules.rules().collect();
    sorted_rules.sort_by(|a, b| a.id.cmp(&b.id));
    let per_sentence = Execution::default().map_slice(&doc.sentences, |sentence| {
        check_sentence(sentence, &sorted_rules)
    });
    per_sentence.into_iter().flatten().collect()
}

/// Expands a finding into an annotator-facing explanation.
pub fn explain_finding(finding: &Finding, rules: &RuleSet) -> Result<String> {
    let rule = rules
        .find_rule(&finding.rule_id)
        .ok_or_else(|| Error::UnknownRule(finding.rule_id.clone()))?;
    let group = rules
        .groups
        .iter()
        .find(|g| g.id == rule.group)
        .map(|g| g.description.as_str())
        .unwrap_or("");
    Ok(format!(
        "rule {} [{} {}], severity {}: {}. Token {} `{}` in sentence {} carries {} with head {}; {}.",
        rule.id,
        rule.group,
        group,
        rule.severity,
        rule.description,
        finding.token_id,
        finding.form,
        finding.sent_id,
        finding.observed_label,
        finding.observed_head,
        rule.expectation()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_document;

    fn inv() -> AfunInventory {
        AfunInventory::pdt_default()
    }

    fn rules() -> RuleSet {
        RuleSet::default_rules(&inv()).unwrap()
    }

    fn doc(text: &str) -> Document {
        parse_document(text, &inv()).unwrap()
    }

    fn check(text: &str) -> Vec<Finding> {
        run_checks(&doc(text), &rules())
    }

    #[test]
    fn default_config_has_nine_groups() {
        let set = rules();
        assert_eq!(set.groups.len(), 9);
        assert!(set.rule_count() >= 9);
        let ids: Vec<&str> = set.groups.iter().map(|g| g.id.as_str()).collect();
        assert_eq!(
            ids,
            ["G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9"]
        );
    }

    #[test]
    fn empty_config_loads_empty_set() {
        let set = load_ruleset("", &inv()).unwrap();
        assert_eq!(set.rule_count(), 0);
    }

    #[test]
    fn unknown_afun_in_pattern_is_rejected() {
        let config = "group X \"x\"\nrule r warning \"d\"\n if afun = Xyz\n require is_leaf\n";
        match load_ruleset(config, &inv()) {
            Err(Error::RuleConfig { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn adv_under_noun_is_flagged_with_atr_expectation() {
        let findings = check("1\tdům\tdům\tN\t0\tDenom\n2\trychle\trychle\tD\t1\tAdv\n\n");
        assert_eq!(findings.len(), 1);
        let f = &findings[0];
        assert_eq!(f.rule_id, "noun-dependent-is-atr");
        assert_eq!(f.token_id, 2);
        assert!(f.message.contains("Atr"), "message: {}", f.message);
    }

    #[test]
    fn pnom_under_byt_is_clean() {
        let findings = check(
            "1\tdům\tdům\tN\t2\tSb\n2\tje\tbýt\tV\t0\tPred\n3\tvelký\tvelký\tA\t2\tPnom\n\n",
        );
        assert!(findings.is_empty(), "unexpected findings: {findings:?}");
    }

    #[test]
    fn pnom_under_other_verb_is_flagged() {
        let findings = check(
            "1\tdům\tdům\tN\t2\tSb\n2\tvypadá\tvypadat\tV\t0\tPred\n3\tvelký\tvelký\tA\t2\tPnom\n\n",
        );
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].rule_id, "pnom-under-byt");
    }

    #[test]
    fn pred_below_root_without_affix_is_flagged() {
        let findings =
            check("1\třekl\tříci\tV\t0\tPred\n2\tpřijde\tpřijít\tV\t1\tPred\n\n");
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].rule_id, "pred-heads-tree");
        assert_eq!(findings[0].token_id, 2);
        // Marked as parenthesis: exempt.
        let ok = check("1\třekl\tříci\tV\t0\tPred\n2\tpřijde\tpřijít\tV\t1\tPred_P\n\n");
        assert!(ok.is_empty());
    }

    #[test]
    fn findings_are_ordered_and_reproducible() {
        let text = "# sent_id = a\n1\tdům\tdům\tN\t0\tSb\n2\trychle\trychle\tD\t1\tAdv\n\n";
        let first = check(text);
        let second = check(text);
        assert_eq!(first, second);
        assert!(first.len() >= 2); // root afun + noun dependent
        let mut sorted = first.clone();
        sorted.sort_by(|a, b| {
            (&a.sent_id, a.token_id, &a.rule_id).cmp(&(&b.sent_id, b.token_id, &b.rule_id))
        });
        assert_eq!(first, sorted);
    }

    #[test]
    fn explain_names_rule_and_expectation() {
        let findings = check("1\tdům\tdům\tN\t0\tDenom\n2\trychle\trychle\tD\t1\tAdv\n\n");
        let text = explain_finding(&findings[0], &rules()).unwrap();
        assert!(text.contains("noun-dependent-is-atr"));
        assert!(text.contains("rychle"));
        assert!(text.contains("expected afun = Atr"));
    }

    #[test]
    fn explain_auxx_affix_cites_no_affix_rule() {
        let findings = check("1\tslovo\tslovo\tN\t0\tDenom\n2\t,\t,\tZ\t1\tAuxX_E\n\n");
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].rule_id, "auxx-auxg-bare");
        let text = explain_finding(&findings[0], &rules()).unwrap();
        assert!(text.contains("take no affixes"), "got: {text}");
    }

    #[test]
    fn explain_unknown_rule_errors() {
        let finding = Finding {
            rule_id: "nope".into(),
            severity: Severity::Warning,
            sent_id: "s1".into(),
            token_id: 1,
            form: "x".into(),
            observed_label: "Atr".into(),
            observed_head: 0,
            message: String::new(),
        };
        assert!(matches!(
            explain_finding(&finding, &rules()),
            Err(Error::UnknownRule(_))
        ));
    }

    #[test]
    fn checks_concatenate_over_sentences() {
        let a = "# sent_id = a\n1\tdům\tdům\tN\t0\tDenom\n2\trychle\trychle\tD\t1\tAdv\n\n";
        let b = "# sent_id = b\n1\tdům\tdům\tN\t0\tDenom\n2\tvelký\tvelký\tA\t1\tAtr\n\n";
        let combined = format!("{a}{b}");
        let merged = check(&combined);
        let mut separate = check(a);
        separate.extend(check(b));
        assert_eq!(merged, separate);
    }

    #[test]
    fn disabling_a_group_removes_exactly_its_findings() {
        let text = "1\tdům\tdům\tN\t0\tSb\n2\trychle\trychle\tD\t1\tAdv\n\n";
        let all = check(text);
        let without_g2 = run_checks(&doc(text), &rules().without_group("G2"));
        let expected: Vec<Finding> = all
            .iter()
            .filter(|f| f.rule_id != "noun-dependent-is-atr")
            .cloned()
            .collect();
        assert_eq!(without_g2, expected);
        assert!(without_g2.len() < all.len());
    }

    #[test]
    fn findings_tsv_round_trip() {
        let findings = check("1\tdům\tdům\tN\t0\tSb\n2\trychle\trychle\tD\t1\tAdv\n\n");
        let parsed = findings_from_tsv(&findings_to_tsv(&findings)).unwrap();
        assert_eq!(parsed, findings);
    }
}
