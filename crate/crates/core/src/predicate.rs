//! List-free conjunct verb detection from ontological categories.
//!
//! An N+V pair is a conjunct when the verb's selectional preference is not
//! met by the noun, e.g. an action verb taking an abstract noun.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::CoarseTag;
use crate::error::{Error, Result};
use crate::lexicon::Lexicon;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpDecisionRule {
    pub verb_category: String,
    pub noun_category: String,
    pub accept: bool,
}

impl CpDecisionRule {
    pub fn accept(verb: &str, noun: &str) -> Self {
        CpDecisionRule {
            verb_category: verb.to_string(),
            noun_category: noun.to_string(),
            accept: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjunctEvidence {
    pub verb_category: String,
    pub noun_category: String,
}

pub fn default_cp_rules() -> Vec<CpDecisionRule> {
    vec![
        CpDecisionRule::accept("VOA", "ABSTRACT_NOUN"),
        CpDecisionRule::accept("VOO", "ABSTRACT_NOUN"),
    ]
}

/// Parses `VERB_CAT<TAB>NOUN_CAT<TAB>accept|reject` lines.
pub fn parse_cp_rules(text: &str, origin: &Path) -> Result<Vec<CpDecisionRule>> {
    let mut rules: Vec<CpDecisionRule> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [verb, noun, decision] = fields[..] else {
            return Err(Error::malformed(origin, i + 1, "expected VERB_CAT<TAB>NOUN_CAT<TAB>accept|reject"));
        };
        let accept = match decision {
            "accept" => true,
            "reject" => false,
            other => return Err(Error::malformed(origin, i + 1, format!("bad decision `{other}`"))),
        };
        if rules
            .iter()
            .any(|r| r.verb_category == verb && r.noun_category == noun)
        {
            return Err(Error::malformed(origin, i + 1, format!("duplicate rule ({verb}, {noun})")));
        }
        rules.push(CpDecisionRule {
            verb_category: verb.to_string(),
            noun_category: noun.to_string(),
            accept,
        });
    }
    Ok(rules)
}

pub fn load_cp_rules(path: &Path) -> Result<Vec<CpDecisionRule>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_cp_rules(&text, path)
}

/// Categories of `word` with `pos`, falling back to its level-0 lemmas when
/// the surface itself carries none.
pub fn categories_with_fallback(lex: &Lexicon, word: &str, pos: CoarseTag) -> BTreeSet<String> {
    let direct = lex.onto_category(word, pos);
    if !direct.is_empty() {
        return direct;
    }
    lex.lemmatize(word, 0)
        .lemmas
        .iter()
        .flat_map(|l| lex.onto_category(l, pos))
        .collect()
}

pub fn is_conjunct(lex: &Lexicon, noun: &str, verb: &str, rules: &[CpDecisionRule]) -> Option<ConjunctEvidence> {
    if rules.iter().all(|r| !r.accept) {
        return None;
    }
    let verb_cats = categories_with_fallback(lex, verb, CoarseTag::Verb);
    let noun_cats = categories_with_fallback(lex, noun, CoarseTag::Noun);
    rules
        .iter()
        .filter(|r| r.accept)
        .find(|r| verb_cats.contains(&r.verb_category) && noun_cats.contains(&r.noun_category))
        .map(|r| ConjunctEvidence {
            verb_category: r.verb_category.clone(),
            noun_category: r.noun_category.clone(),
        })
}
