//! Wordnet-style lexicon: synsets, relations, ontology tags and a trie
//! over every lemma for maximal-prefix lemmatization.

mod trie;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::corpus::CoarseTag;
use crate::error::{Error, Result};

pub use trie::{LemmaSuggestion, NodeId, Trie, TrieNode, ROOT};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Synset {
    pub id: String,
    pub pos: CoarseTag,
    pub lemmas: BTreeSet<String>,
    pub hypernym_ids: BTreeSet<String>,
    pub antonym_ids: BTreeSet<String>,
    pub onto_category: Option<String>,
}

impl Synset {
    pub fn new(id: &str, pos: CoarseTag, lemmas: &[&str]) -> Self {
        Synset {
            id: id.to_string(),
            pos,
            lemmas: lemmas.iter().map(|l| l.nfc().collect()).collect(),
            hypernym_ids: BTreeSet::new(),
            antonym_ids: BTreeSet::new(),
            onto_category: None,
        }
    }

    pub fn with_hypernyms(mut self, ids: &[&str]) -> Self {
        self.hypernym_ids.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    pub fn with_antonyms(mut self, ids: &[&str]) -> Self {
        self.antonym_ids.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    pub fn with_category(mut self, cat: &str) -> Self {
        self.onto_category = Some(cat.to_string());
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    synsets: Vec<Synset>,
    by_id: HashMap<String, usize>,
    by_lemma: HashMap<String, Vec<usize>>,
    antonyms: HashSet<(usize, usize)>,
    trie: Trie,
    /// Dangling relation targets found while loading.
    pub warnings: Vec<String>,
}

fn split_list(field: Option<&str>) -> BTreeSet<String> {
    field
        .unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.nfc().collect())
        .collect()
}

impl Lexicon {
    /// Builds a lexicon from synsets. Duplicate ids are rejected; dangling
    /// relation ids are kept out of the relation tables and reported in
    /// [`Lexicon::warnings`].
    pub fn from_synsets(synsets: Vec<Synset>) -> std::result::Result<Self, String> {
        let mut lex = Lexicon::default();
        for s in synsets {
            if lex.by_id.contains_key(&s.id) {
                return Err(format!("duplicate synset id `{}`", s.id));
            }
            if s.lemmas.is_empty() {
                return Err(format!("synset `{}` has no lemmas", s.id));
            }
            let idx = lex.synsets.len();
            lex.by_id.insert(s.id.clone(), idx);
            for lemma in &s.lemmas {
                lex.by_lemma.entry(lemma.clone()).or_default().push(idx);
                lex.trie.insert(lemma, s.pos, &s.id);
            }
            lex.synsets.push(s);
        }
        for (idx, s) in lex.synsets.iter().enumerate() {
            for target in s.hypernym_ids.iter().chain(&s.antonym_ids) {
                if !lex.by_id.contains_key(target) {
                    lex.warnings
                        .push(format!("synset `{}` references unknown id `{}`", s.id, target));
                }
            }
            for target in &s.antonym_ids {
                if let Some(&other) = lex.by_id.get(target) {
                    lex.antonyms.insert((idx, other));
                    lex.antonyms.insert((other, idx));
                }
            }
        }
        Ok(lex)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut synsets = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 3 || fields.len() > 6 {
                return Err(Error::malformed(origin, i + 1, "expected 3 to 6 tab-separated fields"));
            }
            let id = fields[0].trim();
            if id.is_empty() {
                return Err(Error::malformed(origin, i + 1, "empty synset id"));
            }
            let pos = fields[1]
                .trim()
                .parse()
                .map_err(|m: String| Error::malformed(origin, i + 1, m))?;
            let lemmas = split_list(fields.get(2).copied());
            if lemmas.is_empty() {
                return Err(Error::malformed(origin, i + 1, "synset has no lemmas"));
            }
            let onto = fields
                .get(5)
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(str::to_string);
            synsets.push((
                i + 1,
                Synset {
                    id: id.to_string(),
                    pos,
                    lemmas,
                    hypernym_ids: split_list(fields.get(3).copied()),
                    antonym_ids: split_list(fields.get(4).copied()),
                    onto_category: onto,
                },
            ));
        }
        let mut seen = HashSet::new();
        for (line, s) in &synsets {
            if !seen.insert(s.id.clone()) {
                return Err(Error::malformed(origin, *line, format!("duplicate synset id `{}`", s.id)));
            }
        }
        Lexicon::from_synsets(synsets.into_iter().map(|(_, s)| s).collect())
            .map_err(|m| Error::malformed(origin, 0, m))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn synsets(&self) -> &[Synset] {
        &self.synsets
    }

    pub fn synset(&self, id: &str) -> Option<&Synset> {
        self.by_id.get(id).map(|&i| &self.synsets[i])
    }

    pub fn trie(&self) -> &Trie {
        &self.trie
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    fn synsets_of(&self, word: &str) -> &[usize] {
        self.by_lemma.get(word).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn synsets_for(&self, word: &str) -> impl Iterator<Item = &Synset> {
        self.synsets_of(word).iter().map(|&i| &self.synsets[i])
    }

    pub fn contains(&self, word: &str) -> bool {
        self.trie.contains(word)
    }

    pub fn lemmatize(&self, word: &str, backtrack_level: usize) -> LemmaSuggestion {
        self.trie.lemmatize(word, backtrack_level)
    }

    pub fn are_synonyms(&self, w1: &str, w2: &str) -> bool {
        let b = self.synsets_of(w2);
        self.synsets_of(w1).iter().any(|s| b.contains(s))
    }

    pub fn are_antonyms(&self, w1: &str, w2: &str) -> bool {
        let b = self.synsets_of(w2);
        self.synsets_of(w1)
            .iter()
            .any(|&s1| b.iter().any(|&s2| self.antonyms.contains(&(s1, s2))))
    }

    /// Two different synsets of the words share a direct hypernym.
    pub fn are_sister_words(&self, w1: &str, w2: &str) -> bool {
        let b = self.synsets_of(w2);
        self.synsets_of(w1).iter().any(|&s1| {
            b.iter().any(|&s2| {
                s1 != s2
                    && !self.synsets[s1]
                        .hypernym_ids
                        .is_disjoint(&self.synsets[s2].hypernym_ids)
            })
        })
    }

    pub fn onto_category(&self, word: &str, pos: CoarseTag) -> BTreeSet<String> {
        self.synsets_for(word)
            .filter(|s| s.pos == pos)
            .filter_map(|s| s.onto_category.clone())
            .collect()
    }
}
