//! Seeded generators for random valid documents and parallel pairs.

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tbqa_core::{AffixSet, AfunInventory, AnnotatedSentence, Document, Label, Member, Token};

pub const TAGS: [&str; 6] = ["V", "N", "A", "Z", "D", "R"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_label(rng: &mut ChaCha8Rng, inventory: &AfunInventory) -> Label {
    let afuns: Vec<&str> = inventory.labels().collect();
    let afun = *afuns.choose(rng).unwrap();
    let member = match rng.random_range(0..10) {
        0 => Some(Member::Co),
        1 => Some(Member::Ap),
        _ => None,
    };
    Label::with_affixes(
        afun,
        AffixSet {
            member,
            parenthesis: rng.random_bool(0.15),
            ellipsis: rng.random_bool(0.1),
        },
    )
}

/// Arbitrary-shape valid tree: nodes are attached in a random order, each
/// to the technical root or an already-attached node.
pub fn random_heads(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=n).collect();
    for i in (1..order.len()).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut heads = vec![0usize; n];
    let mut attached: Vec<usize> = vec![0];
    for &node in &order {
        heads[node - 1] = *attached.choose(rng).unwrap();
        attached.push(node);
    }
    heads
}

pub fn random_sentence(
    rng: &mut ChaCha8Rng,
    inventory: &AfunInventory,
    sent_id: &str,
    n_tokens: usize,
) -> AnnotatedSentence {
    let heads = random_heads(rng, n_tokens);
    let tokens = (0..n_tokens)
        .map(|i| {
            let form = format!("w{}{}", i + 1, (b'a' + rng.random_range(0..26u8)) as char);
            let lemma = form.clone();
            let tag = *TAGS.choose(rng).unwrap();
            Token::new(
                i + 1,
                form,
                lemma,
                tag,
                heads[i],
                random_label(rng, inventory),
            )
        })
        .collect();
    AnnotatedSentence::new(sent_id, tokens)
}

pub fn random_document(
    rng: &mut ChaCha8Rng,
    inventory: &AfunInventory,
    doc_id: &str,
    max_sentences: usize,
    max_tokens: usize,
) -> Document {
    let n_sentences = rng.random_range(1..=max_sentences);
    let sentences = (0..n_sentences)
        .map(|s| {
            let n_tokens = rng.random_range(1..=max_tokens);
            random_sentence(rng, inventory, &format!("s{}", s + 1), n_tokens)
        })
        .collect();
    Document::new(doc_id, sentences)
}

/// A parallel variant of `base`: same sentence ids and forms, but some
/// sentences get fresh head structure and some tokens fresh labels.
pub fn mutate_parallel(rng: &mut ChaCha8Rng, inventory: &AfunInventory, base: &Document) -> Document {
    let mut out = base.clone();
    for sentence in &mut out.sentences {
        if rng.random_bool(0.6) {
            let heads = random_heads(rng, sentence.tokens.len());
            for (token, head) in sentence.tokens.iter_mut().zip(heads) {
                token.head = head;
            }
        }
        for token in &mut sentence.tokens {
            if rng.random_bool(0.25) {
                token.label = random_label(rng, inventory);
            }
        }
    }
    out
}
