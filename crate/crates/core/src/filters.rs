//! Linguistic filters: vector-verb/verbalizer gate, named-entity penalty,
//! hyphenation boost.

use std::collections::HashSet;
use std::path::Path;

use unicode_normalization::UnicodeNormalization;

use crate::candidates::{Candidate, Category};
use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::predicate::{is_conjunct, CpDecisionRule};

pub const PROV_NE: &str = "NE";
pub const PROV_HYPHEN: &str = "HYPHEN";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerbLists {
    pub vector_verbs: HashSet<String>,
    pub verbalizers: HashSet<String>,
}

impl VerbLists {
    pub fn new<'a>(vector: impl IntoIterator<Item = &'a str>, verbalizers: impl IntoIterator<Item = &'a str>) -> Self {
        VerbLists {
            vector_verbs: vector.into_iter().map(|s| s.nfc().collect()).collect(),
            verbalizers: verbalizers.into_iter().map(|s| s.nfc().collect()).collect(),
        }
    }
}

/// One entry per line; blank lines and `#` comments are skipped.
pub fn load_word_list(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.nfc().collect())
        .collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NamedEntityList {
    entities: HashSet<Vec<String>>,
    // tokens that occur inside some multi-token entity
    inner_tokens: HashSet<String>,
    longest: usize,
}

impl NamedEntityList {
    pub fn new<S: AsRef<str>>(entries: impl IntoIterator<Item = S>) -> Self {
        let mut list = NamedEntityList::default();
        for e in entries {
            let toks: Vec<String> = e
                .as_ref()
                .split_whitespace()
                .map(|t| t.nfc().collect())
                .collect();
            if toks.is_empty() {
                continue;
            }
            if toks.len() > 1 {
                list.inner_tokens.extend(toks.iter().cloned());
            }
            list.longest = list.longest.max(toks.len());
            list.entities.insert(toks);
        }
        list
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(NamedEntityList::new(load_word_list(path)?))
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn touches(&self, grams: &[String]) -> bool {
        if self.is_empty() {
            return false;
        }
        if grams.iter().any(|g| self.inner_tokens.contains(g)) {
            return true;
        }
        (1..=self.longest.min(grams.len()))
            .any(|n| grams.windows(n).any(|w| self.entities.contains(w)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterConfig {
    pub ne_penalty: f64,
    pub hyphen_boost: f64,
    /// Drop NE-touching candidates instead of down-weighting them.
    pub ne_drop: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            ne_penalty: 0.5,
            hyphen_boost: 1.5,
            ne_drop: false,
        }
    }
}

fn listed(word: &str, list: &HashSet<String>, lex: &Lexicon) -> bool {
    list.contains(word) || lex.lemmatize(word, 0).lemmas.iter().any(|l| list.contains(l))
}

/// Complex-predicate rules consulted by the conjunct gate; `None` disables
/// the ontology route.
pub type CpRoute<'a> = Option<&'a [CpDecisionRule]>;

/// Keep/drop decision for V+V and N+V candidates. Other categories pass.
/// Accepted conjuncts get their evidence recorded on the candidate.
pub fn verb_gate(c: &mut Candidate, lists: &VerbLists, lex: &Lexicon, cp: CpRoute<'_>) -> bool {
    let Some(last) = c.grams.last() else {
        return true;
    };
    match c.category {
        Category::CompoundVerb => listed(last, &lists.vector_verbs, lex),
        Category::ConjunctVerb => {
            if listed(last, &lists.verbalizers, lex) {
                return true;
            }
            let Some(rules) = cp else {
                return false;
            };
            match is_conjunct(lex, &c.grams[0], last, rules) {
                Some(ev) => {
                    c.provenance.insert(format!("CP:{}+{}", ev.verb_category, ev.noun_category));
                    c.conjunct = Some(ev);
                    true
                }
                None => false,
            }
        }
        _ => true,
    }
}

/// Multiplies the weight by the NE penalty when the candidate overlaps a
/// listed entity. Returns false only when `ne_drop` asks to discard it.
pub fn ne_weight(c: &mut Candidate, nel: &NamedEntityList, cfg: &FilterConfig) -> bool {
    if !nel.touches(&c.grams) {
        return true;
    }
    if cfg.ne_drop {
        return false;
    }
    c.weight *= cfg.ne_penalty;
    c.provenance.insert(PROV_NE.into());
    true
}

pub fn hyphen_weight(c: &mut Candidate, cfg: &FilterConfig) {
    if c.category == Category::Hyphenated {
        c.weight *= cfg.hyphen_boost;
        c.provenance.insert(PROV_HYPHEN.into());
    }
}
