//! Wordnet relations between the two halves of a bigram.

use serde::{Deserialize, Serialize};

use crate::lexicon::Lexicon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Relation {
    Synonym,
    Antonym,
    Sister,
    None,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Synonym => "SYNONYM",
            Relation::Antonym => "ANTONYM",
            Relation::Sister => "SISTER",
            Relation::None => "NONE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticVerdict {
    pub relation: Relation,
    pub via_lemmas: Option<(String, String)>,
}

fn relation_between(lex: &Lexicon, a: &str, b: &str) -> Relation {
    if lex.are_synonyms(a, b) {
        Relation::Synonym
    } else if lex.are_antonyms(a, b) {
        Relation::Antonym
    } else if lex.are_sister_words(a, b) {
        Relation::Sister
    } else {
        Relation::None
    }
}

/// Surfaces first, then every level-0 lemma pair. Priority is
/// synonym, antonym, sister.
pub fn semantic_relation(lex: &Lexicon, w1: &str, w2: &str) -> SemanticVerdict {
    let direct = relation_between(lex, w1, w2);
    if direct != Relation::None {
        return SemanticVerdict {
            relation: direct,
            via_lemmas: Some((w1.to_string(), w2.to_string())),
        };
    }
    let l1 = lex.lemmatize(w1, 0).lemmas;
    let l2 = lex.lemmatize(w2, 0).lemmas;
    // best relation over all pairs so that priority, not pair order, decides
    let mut best: Option<(Relation, &String, &String)> = None;
    for a in &l1 {
        for b in &l2 {
            let r = relation_between(lex, a, b);
            if r == Relation::None {
                continue;
            }
            if best.map_or(true, |(cur, _, _)| (r as u8) < (cur as u8)) {
                best = Some((r, a, b));
            }
        }
    }
    match best {
        Some((relation, a, b)) => SemanticVerdict {
            relation,
            via_lemmas: Some((a.clone(), b.clone())),
        },
        None => SemanticVerdict {
            relation: Relation::None,
            via_lemmas: None,
        },
    }
}
