//! Full and partial reduplication.
//!
//! Partial reduplication comes in two flavours: rhyming pairs of real words
//! (`चलते फिरते`) and echo words whose second half is a phonetic variant
//! absent from the lexicon (`चाय वाय`).

use serde::{Deserialize, Serialize};

use crate::lexicon::Lexicon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RedupKind {
    Full,
    PartialMeaningful,
    PartialNonmeaningful,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RedupEvidence {
    pub shared_suffix_len: usize,
    pub lemma1: Option<String>,
    pub lemma2: Option<String>,
    pub prefix_delta_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduplicationVerdict {
    pub kind: RedupKind,
    pub evidence: RedupEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedupConfig {
    /// Minimum shared suffix as a fraction of the shorter word (rounded up).
    pub min_suffix_frac: f64,
    /// Longest leading span an echo word may replace.
    pub max_prefix_delta: usize,
}

impl Default for RedupConfig {
    fn default() -> Self {
        RedupConfig {
            min_suffix_frac: 0.5,
            max_prefix_delta: 2,
        }
    }
}

/// Minimum lemma suffix agreement for the inflected-pair check.
const MIN_LEMMA_SUFFIX: usize = 2;

pub fn common_suffix_len(a: &str, b: &str) -> usize {
    a.chars()
        .rev()
        .zip(b.chars().rev())
        .take_while(|(x, y)| x == y)
        .count()
}

/// In the lexicon directly, or lemmatizes to at least one lemma.
pub fn is_meaningful(lex: &Lexicon, word: &str) -> bool {
    lex.contains(word) || !lex.lemmatize(word, 0).lemmas.is_empty()
}

pub fn classify_reduplication(lex: &Lexicon, w1: &str, w2: &str, cfg: &RedupConfig) -> ReduplicationVerdict {
    let len1 = w1.chars().count();
    let len2 = w2.chars().count();
    let shared = common_suffix_len(w1, w2);
    let mut evidence = RedupEvidence {
        shared_suffix_len: shared,
        prefix_delta_len: len1.max(len2) - shared,
        ..Default::default()
    };
    let verdict = |kind, evidence| ReduplicationVerdict { kind, evidence };

    if w1 == w2 || w1.to_lowercase() == w2.to_lowercase() {
        evidence.lemma1 = lex.contains(w1).then(|| w1.to_string());
        evidence.lemma2 = lex.contains(w2).then(|| w2.to_string());
        return verdict(RedupKind::Full, evidence);
    }

    let shorter = len1.min(len2);
    let needed = ((cfg.min_suffix_frac * shorter as f64).ceil() as usize).max(1);
    let meaningful1 = is_meaningful(lex, w1);
    let meaningful2 = is_meaningful(lex, w2);

    if shared >= needed && meaningful1 && meaningful2 {
        if lex.contains(w1) && lex.contains(w2) {
            evidence.lemma1 = Some(w1.to_string());
            evidence.lemma2 = Some(w2.to_string());
            return verdict(RedupKind::PartialMeaningful, evidence);
        }
        let l1 = lex.lemmatize(w1, 0).lemmas;
        let l2 = lex.lemmatize(w2, 0).lemmas;
        let pair = l1.iter().find_map(|a| {
            l2.iter()
                .find(|b| common_suffix_len(a, b) >= MIN_LEMMA_SUFFIX)
                .map(|b| (a.clone(), b.clone()))
        });
        if let Some((a, b)) = pair {
            evidence.lemma1 = Some(a);
            evidence.lemma2 = Some(b);
            return verdict(RedupKind::PartialMeaningful, evidence);
        }
    }

    // the echo keeps a non-empty tail of the base word
    let delta = len1 - shared.min(len1);
    if len1 == len2
        && delta >= 1
        && delta < len1
        && delta <= cfg.max_prefix_delta
        && meaningful1
        && !meaningful2
    {
        evidence.lemma1 = lex.lemmatize(w1, 0).lemmas.into_iter().next();
        return verdict(RedupKind::PartialNonmeaningful, evidence);
    }

    verdict(RedupKind::None, evidence)
}
