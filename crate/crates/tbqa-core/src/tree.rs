//! Sentence and document data model plus structural tree validation.
//!
//! Every token of a sentence (punctuation included) is a node; node 0 is
//! the technical root and is not a token. A well-formed sentence's head
//! links form a single tree rooted at node 0.

use serde::{Deserialize, Serialize};

use crate::label::Label;

/// One annotated token. `head` is the 1-based id of the governor, 0 for
/// the technical root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub id: usize,
    pub form: String,
    pub lemma: String,
    pub tag: String,
    pub head: usize,
    pub label: Label,
}

impl Token {
    pub fn new(
        id: usize,
        form: impl Into<String>,
        lemma: impl Into<String>,
        tag: impl Into<String>,
        head: usize,
        label: Label,
    ) -> Self {
        Token {
            id,
            form: form.into(),
            lemma: lemma.into(),
            tag: tag.into(),
            head,
            label,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub sent_id: String,
    pub tokens: Vec<Token>,
}

impl AnnotatedSentence {
    pub fn new(sent_id: impl Into<String>, tokens: Vec<Token>) -> Self {
        AnnotatedSentence {
            sent_id: sent_id.into(),
            tokens,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub sentences: Vec<AnnotatedSentence>,
}

impl Document {
    pub fn new(doc_id: impl Into<String>, sentences: Vec<AnnotatedSentence>) -> Self {
        Document {
            doc_id: doc_id.into(),
            sentences,
        }
    }

    /// Total token count over all sentences.
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(AnnotatedSentence::len).sum()
    }
}

/// A violation of the single-rooted-tree structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructuralError {
    /// HEAD outside 0..=n.
    HeadOutOfRange { token: usize, head: usize },
    /// Token is its own head.
    SelfLoop { token: usize },
    /// A head cycle; lists the token ids on the cycle in ascending order.
    Cycle { tokens: Vec<usize> },
    /// Token cannot reach the root (hangs off a cycle or a bad head).
    Unreachable { token: usize },
}

impl std::fmt::Display for StructuralError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructuralError::HeadOutOfRange { token, head } => {
                write!(f, "head {head} out of range at token {token}")
            }
            StructuralError::SelfLoop { token } => write!(f, "self-loop at token {token}"),
            StructuralError::Cycle { tokens } => {
                let ids: Vec<String> = tokens.iter().map(usize::to_string).collect();
                write!(f, "cycle over tokens {{{}}}", ids.join(", "))
            }
            StructuralError::Unreachable { token } => {
                write!(f, "token {token} cannot reach the root")
            }
        }
    }
}

/// Checks that the head links of `sentence` form a single tree under the
/// technical root. Returns one error per violation; empty means valid.
///
/// Assumes token ids are 1..n in order (the parser guarantees this).
pub fn validate_tree(sentence: &AnnotatedSentence) -> Vec<StructuralError> {
    let n = sentence.tokens.len();
    let mut errors = Vec::new();

    // usable[i] = head of token i+1 when it is a sane link.
    let mut usable: Vec<Option<usize>> = vec![None; n];
    for token in &sentence.tokens {
        if token.head > n {
            errors.push(StructuralError::HeadOutOfRange {
                token: token.id,
                head: token.head,
            });
        } else if token.head == token.id {
            errors.push(StructuralError::SelfLoop { token: token.id });
        } else {
            usable[token.id - 1] = Some(token.head);
        }
    }

    // Walk each token towards the root, marking what it reaches.
    // state: 0 = unvisited, 1 = reaches root, 2 = does not.
    let mut state = vec![0u8; n + 1];
    state[0] = 1;
    let mut cycles: Vec<Vec<usize>> = Vec::new();

    for start in 1..=n {
        if state[start] != 0 {
            continue;
        }
        let mut path = vec![start];
        let mut on_path = vec![false; n + 1];
        on_path[start] = true;
        let outcome = loop {
            let cur = *path.last().expect("path is non-empty");
            match usable[cur - 1] {
                None => break 2, // broken link: nothing past this point
                Some(next) => {
                    if state[next] != 0 {
                        break state[next];
                    }
                    if on_path[next] {
                        // Found a new cycle: the path tail from `next`.
                        let pos = path.iter().position(|&t| t == next).expect("on path");
                        let mut cycle: Vec<usize> = path[pos..].to_vec();
                        cycle.sort_unstable();
                        for &t in &cycle {
                            state[t] = 2;
                        }
                        cycles.push(cycle);
                        break 2;
                    }
                    on_path[next] = true;
                    path.push(next);
                }
            }
        };
        for &t in &path {
            if state[t] == 0 {
                state[t] = outcome;
            }
        }
    }

    cycles.sort();
    let in_cycle: Vec<usize> = cycles.iter().flatten().copied().collect();
    for cycle in cycles {
        errors.push(StructuralError::Cycle { tokens: cycle });
    }
    for token in 1..=n {
        // Cycle members and tokens with bad links already have an error.
        if state[token] == 2 && usable[token - 1].is_some() && !in_cycle.contains(&token) {
            errors.push(StructuralError::Unreachable { token });
        }
    }
    errors
}
