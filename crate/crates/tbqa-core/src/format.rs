//! The document file format.
//!
//! A document is UTF-8 text with LF line endings. Each sentence is a
//! `# sent_id = ...` header followed by one line per token, six
//! tab-separated columns: ID, FORM, LEMMA, TAG, HEAD, AFUN. ID and HEAD
//! are decimal integers, ID running 1..n within the sentence and HEAD 0
//! for the technical root. A blank line closes every sentence. An
//! optional `# doc_id = ...` line may precede the first sentence.
//!
//! Sentences without a `sent_id` header are assigned positional ids
//! `s1`, `s2`, ... Serialization always emits headers and affix suffixes
//! in canonical order, so parse→serialize is the identity on files that
//! are already in that form.

use crate::error::{Error, ParseErrorKind, Result};
use crate::inventory::AfunInventory;
use crate::label::Label;
use crate::tree::{validate_tree, AnnotatedSentence, Document, StructuralError, Token};

struct PendingSentence {
    sent_id: Option<String>,
    header_line: usize,
    tokens: Vec<Token>,
    token_lines: Vec<usize>,
}

impl PendingSentence {
    fn new(line: usize) -> Self {
        PendingSentence {
            sent_id: None,
            header_line: line,
            tokens: Vec::new(),
            token_lines: Vec::new(),
        }
    }
}

fn parse_err(line: usize, kind: ParseErrorKind, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        kind,
        message: message.into(),
    }
}

/// Parses document text, verifying all structural invariants.
pub fn parse_document(text: &str, inventory: &AfunInventory) -> Result<Document> {
    let mut doc_id = String::new();
    let mut sentences: Vec<AnnotatedSentence> = Vec::new();
    let mut seen_ids: Vec<String> = Vec::new();
    let mut pending: Option<PendingSentence> = None;

    let finalize = |pending: &mut Option<PendingSentence>,
                        sentences: &mut Vec<AnnotatedSentence>,
                        seen_ids: &mut Vec<String>|
     -> Result<()> {
        let Some(sent) = pending.take() else {
            return Ok(());
        };
        if sent.tokens.is_empty() {
            return Err(parse_err(
                sent.header_line,
                ParseErrorKind::EmptySentence,
                "sentence header with no token lines",
            ));
        }
        let sent_id = sent
            .sent_id
            .unwrap_or_else(|| format!("s{}", sentences.len() + 1));
        if seen_ids.contains(&sent_id) {
            return Err(parse_err(
                sent.header_line,
                ParseErrorKind::DuplicateSentId,
                format!("sent_id `{sent_id}` already used"),
            ));
        }
        let sentence = AnnotatedSentence::new(sent_id.clone(), sent.tokens);
        for error in validate_tree(&sentence) {
            let (line, kind) = match &error {
                StructuralError::HeadOutOfRange { token, .. } => (
                    sent.token_lines[token - 1],
                    ParseErrorKind::HeadOutOfRange,
                ),
                StructuralError::SelfLoop { token } => {
                    (sent.token_lines[token - 1], ParseErrorKind::SelfLoop)
                }
                StructuralError::Cycle { tokens } => (
                    sent.token_lines[tokens[0] - 1],
                    ParseErrorKind::InvalidTree,
                ),
                StructuralError::Unreachable { token } => {
                    (sent.token_lines[token - 1], ParseErrorKind::InvalidTree)
                }
            };
            return Err(parse_err(line, kind, error.to_string()));
        }
        seen_ids.push(sent_id);
        sentences.push(sentence);
        Ok(())
    };

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');

        if line.trim().is_empty() {
            finalize(&mut pending, &mut sentences, &mut seen_ids)?;
            continue;
        }

        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(value) = comment.strip_prefix("sent_id") {
                let value = value.trim_start();
                let Some(value) = value.strip_prefix('=') else {
                    continue; // not a sent_id assignment, plain comment
                };
                if pending.as_ref().is_some_and(|p| !p.tokens.is_empty()) {
                    return Err(parse_err(
                        line_no,
                        ParseErrorKind::MalformedLine,
                        "missing blank line before new sentence",
                    ));
                }
                let sent = pending.get_or_insert_with(|| PendingSentence::new(line_no));
                sent.sent_id = Some(value.trim().to_owned());
                sent.header_line = line_no;
            } else if let Some(value) = comment.strip_prefix("doc_id") {
                if let Some(value) = value.trim_start().strip_prefix('=') {
                    if sentences.is_empty() && pending.is_none() {
                        doc_id = value.trim().to_owned();
                    }
                }
            }
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 {
            return Err(parse_err(
                line_no,
                ParseErrorKind::MalformedLine,
                format!("expected 6 tab-separated columns, got {}", fields.len()),
            ));
        }
        let sent = pending.get_or_insert_with(|| PendingSentence::new(line_no));
        let id: usize = fields[0].parse().map_err(|_| {
            parse_err(
                line_no,
                ParseErrorKind::MalformedLine,
                format!("ID `{}` is not a decimal integer", fields[0]),
            )
        })?;
        if id != sent.tokens.len() + 1 {
            return Err(parse_err(
                line_no,
                ParseErrorKind::BadTokenId,
                format!("token id {id} out of sequence, expected {}", sent.tokens.len() + 1),
            ));
        }
        let head: usize = fields[4].parse().map_err(|_| {
            parse_err(
                line_no,
                ParseErrorKind::MalformedLine,
                format!("HEAD `{}` is not a decimal integer", fields[4]),
            )
        })?;
        let label = Label::parse(fields[5], inventory)
            .map_err(|(kind, message)| parse_err(line_no, kind, message))?;
        sent.tokens.push(Token::new(
            id, fields[1], fields[2], fields[3], head, label,
        ));
        sent.token_lines.push(line_no);
    }
    finalize(&mut pending, &mut sentences, &mut seen_ids)?;

    Ok(Document::new(doc_id, sentences))
}

/// Serializes a document in canonical form: optional doc_id header, one
/// `# sent_id` header per sentence, token lines, one blank line after
/// every sentence. An empty document with no doc_id yields "".
pub fn serialize_document(doc: &Document) -> String {
    let mut out = String::new();
    if !doc.doc_id.is_empty() {
        out.push_str("# doc_id = ");
        out.push_str(&doc.doc_id);
        out.push('\n');
    }
    for sentence in &doc.sentences {
        out.push_str("# sent_id = ");
        out.push_str(&sentence.sent_id);
        out.push('\n');
        for token in &sentence.tokens {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                token.id,
                token.form,
                token.lemma,
                token.tag,
                token.head,
                token.label.to_full_string()
            ));
        }
        out.push('\n');
    }
    out
}
