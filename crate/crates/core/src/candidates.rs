//! POS-pattern candidate generation.
//!
//! Recall-oriented: every contiguous window that matches any rule becomes a
//! candidate, aggregated per `(grams, category)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{CoarseTag, TaggedCorpus, Token};
use crate::error::{Error, Result};
use crate::index::NGramIndex;
use crate::predicate::ConjunctEvidence;
use crate::redup::ReduplicationVerdict;
use crate::semantic::SemanticVerdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Category {
    Redup,
    PartialRedupMeaningful,
    PartialRedupNonmeaningful,
    CompoundNoun,
    CompoundVerb,
    ConjunctVerb,
    AdjNoun,
    NounCompoundNgram,
    Hyphenated,
    Collocation,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::Redup,
        Category::PartialRedupMeaningful,
        Category::PartialRedupNonmeaningful,
        Category::CompoundNoun,
        Category::CompoundVerb,
        Category::ConjunctVerb,
        Category::AdjNoun,
        Category::NounCompoundNgram,
        Category::Hyphenated,
        Category::Collocation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Redup => "REDUP",
            Category::PartialRedupMeaningful => "PARTIAL_REDUP_MEANINGFUL",
            Category::PartialRedupNonmeaningful => "PARTIAL_REDUP_NONMEANINGFUL",
            Category::CompoundNoun => "COMPOUND_NOUN",
            Category::CompoundVerb => "COMPOUND_VERB",
            Category::ConjunctVerb => "CONJUNCT_VERB",
            Category::AdjNoun => "ADJ_NOUN",
            Category::NounCompoundNgram => "NOUN_COMPOUND_NGRAM",
            Category::Hyphenated => "HYPHENATED",
            Category::Collocation => "COLLOCATION",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown category `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub grams: Vec<String>,
    pub tags: Vec<CoarseTag>,
    pub category: Category,
    /// `(sentenceIndex, positionInSentence)`; absent for candidates
    /// enumerated straight from the index.
    pub first_occurrence: Option<(usize, usize)>,
    pub occurrences: u64,
    pub weight: f64,
    pub provenance: BTreeSet<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub redup: Option<ReduplicationVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub semantic: Option<SemanticVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conjunct: Option<ConjunctEvidence>,
}

impl Candidate {
    pub fn new(grams: Vec<String>, tags: Vec<CoarseTag>, category: Category) -> Self {
        debug_assert_eq!(grams.len(), tags.len());
        Candidate {
            grams,
            tags,
            category,
            first_occurrence: None,
            occurrences: 0,
            weight: 1.0,
            provenance: BTreeSet::new(),
            redup: None,
            semantic: None,
            conjunct: None,
        }
    }

    pub fn key(&self) -> (&[String], Category) {
        (&self.grams, self.category)
    }

    pub fn n(&self) -> usize {
        self.grams.len()
    }

    fn sort_key(&self) -> ((usize, usize), Category, &[String]) {
        (
            self.first_occurrence.unwrap_or((usize::MAX, usize::MAX)),
            self.category,
            &self.grams,
        )
    }
}

/// Candidates unique by `(grams, category)`, kept in first-occurrence order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CandidateSet {
    items: Vec<Candidate>,
}

impl CandidateSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Merges candidates sharing a key: occurrences add, the earliest
    /// occurrence wins and provenance is unioned.
    pub fn from_candidates(cands: impl IntoIterator<Item = Candidate>) -> Self {
        let mut pos: HashMap<(Vec<String>, Category), usize> = HashMap::new();
        let mut items: Vec<Candidate> = Vec::new();
        for c in cands {
            match pos.get(&(c.grams.clone(), c.category)) {
                Some(&i) => {
                    let cur = &mut items[i];
                    cur.occurrences += c.occurrences;
                    let earlier = match (c.first_occurrence, cur.first_occurrence) {
                        (Some(a), Some(b)) => a < b,
                        (Some(_), None) => true,
                        _ => false,
                    };
                    if earlier {
                        cur.first_occurrence = c.first_occurrence;
                        cur.tags = c.tags;
                    }
                    cur.provenance.extend(c.provenance);
                }
                None => {
                    pos.insert((c.grams.clone(), c.category), items.len());
                    items.push(c);
                }
            }
        }
        let mut set = CandidateSet { items };
        set.sort();
        set
    }

    fn sort(&mut self) {
        self.items.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Candidate> {
        self.items.iter()
    }

    pub fn iter_mut(&mut self) -> std::slice::IterMut<'_, Candidate> {
        self.items.iter_mut()
    }

    pub fn retain(&mut self, f: impl FnMut(&Candidate) -> bool) {
        self.items.retain(f);
    }

    pub fn extend(&mut self, more: impl IntoIterator<Item = Candidate>) {
        let items = std::mem::take(&mut self.items);
        *self = CandidateSet::from_candidates(items.into_iter().chain(more));
    }

    pub fn get(&self, grams: &[String], category: Category) -> Option<&Candidate> {
        self.items
            .iter()
            .find(|c| c.grams == grams && c.category == category)
    }

    pub fn contains_grams(&self, grams: &[String]) -> bool {
        self.items.iter().any(|c| c.grams == grams)
    }

    pub fn into_vec(self) -> Vec<Candidate> {
        self.items
    }

    pub fn count_by_category(&self) -> HashMap<Category, usize> {
        let mut out = HashMap::new();
        for c in &self.items {
            *out.entry(c.category).or_insert(0) += 1;
        }
        out
    }
}

impl FromIterator<Candidate> for CandidateSet {
    fn from_iter<T: IntoIterator<Item = Candidate>>(iter: T) -> Self {
        CandidateSet::from_candidates(iter)
    }
}

impl<'a> IntoIterator for &'a CandidateSet {
    type Item = &'a Candidate;
    type IntoIter = std::slice::Iter<'a, Candidate>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// One position of a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Tag(CoarseTag),
    Any,
    /// Surface equal (case-folded) to the previous slot.
    Same,
    /// A single token with an internal hyphen.
    Hyphen,
}

impl FromStr for Slot {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ANY" => Ok(Slot::Any),
            "SAME" => Ok(Slot::Same),
            "HYPHEN" => Ok(Slot::Hyphen),
            "OTHER" => Err("OTHER is not a pattern slot".into()),
            other => other.parse().map(Slot::Tag),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRule {
    pub name: String,
    pub slots: Vec<Slot>,
    pub category: Category,
}

fn fold(s: &str) -> String {
    s.to_lowercase()
}

impl PatternRule {
    pub fn new(name: &str, category: Category, slots: Vec<Slot>) -> std::result::Result<Self, String> {
        let ok = match slots.as_slice() {
            [Slot::Hyphen] => true,
            s if (2..=5).contains(&s.len()) => {
                !matches!(s[0], Slot::Same) && !s.contains(&Slot::Hyphen)
            }
            _ => false,
        };
        if !ok {
            return Err(format!("rule `{name}`: arity must be 2..=5 (or a lone HYPHEN slot) and SAME cannot open a pattern"));
        }
        Ok(PatternRule {
            name: name.to_string(),
            slots,
            category,
        })
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn matches(&self, window: &[Token]) -> bool {
        window.len() == self.slots.len()
            && self.slots.iter().enumerate().all(|(i, slot)| match slot {
                Slot::Tag(t) => window[i].coarse_tag == *t,
                Slot::Any => true,
                Slot::Same => i > 0 && fold(&window[i].surface) == fold(&window[i - 1].surface),
                Slot::Hyphen => window[i].has_internal_hyphen,
            })
    }
}

/// The built-in rule table. `adj_noun_bigrams` toggles the `ADJ NOUN` bigram.
pub fn default_rules(adj_noun_bigrams: bool) -> Vec<PatternRule> {
    use CoarseTag::*;
    let t = Slot::Tag;
    let mut rules = vec![
        PatternRule::new("redup", Category::Redup, vec![Slot::Any, Slot::Same]),
        PatternRule::new("compound-noun", Category::CompoundNoun, vec![t(Noun), t(Noun)]),
        PatternRule::new("compound-verb", Category::CompoundVerb, vec![t(Verb), t(Verb)]),
        PatternRule::new("conjunct-verb", Category::ConjunctVerb, vec![t(Noun), t(Verb)]),
    ];
    for n in 3..=5 {
        rules.push(PatternRule::new(
            &format!("noun-compound-{n}"),
            Category::NounCompoundNgram,
            vec![t(Noun); n],
        ));
    }
    let first_adj = if adj_noun_bigrams { 1 } else { 2 };
    for nouns in first_adj..=4 {
        let mut slots = vec![t(Adj)];
        slots.extend(std::iter::repeat(t(Noun)).take(nouns));
        rules.push(PatternRule::new(&format!("adj-noun-{}", nouns + 1), Category::AdjNoun, slots));
    }
    rules.push(PatternRule::new("hyphenated", Category::Hyphenated, vec![Slot::Hyphen]));
    rules.into_iter().map(|r| r.expect("built-in rule")).collect()
}

/// Parses `name<TAB>category<TAB>pattern` lines.
pub fn parse_rules(text: &str, origin: &Path) -> Result<Vec<PatternRule>> {
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |m: String| Error::malformed(origin, i + 1, m);
        let fields: Vec<&str> = line.split('\t').collect();
        let [name, category, pattern] = fields[..] else {
            return Err(bad("expected name<TAB>category<TAB>pattern".into()));
        };
        let category: Category = category.trim().parse().map_err(bad)?;
        let slots = pattern
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<Vec<Slot>, _>>()
            .map_err(bad)?;
        rules.push(PatternRule::new(name.trim(), category, slots).map_err(bad)?);
    }
    Ok(rules)
}

pub fn load_rules(path: &Path) -> Result<Vec<PatternRule>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_rules(&text, path)
}

fn window_candidate(window: &[Token], rule: &PatternRule) -> Candidate {
    let mut c = Candidate::new(
        window.iter().map(|t| t.surface.clone()).collect(),
        window.iter().map(|t| t.coarse_tag).collect(),
        rule.category,
    );
    c.first_occurrence = Some((window[0].sentence_index, window[0].position_in_sentence));
    c.occurrences = 1;
    c.provenance.insert(format!("rule:{}", rule.name));
    c
}

/// Scans every within-sentence window against every rule.
pub fn generate_candidates(corpus: &TaggedCorpus, rules: &[PatternRule]) -> CandidateSet {
    let hits = corpus.sentences.iter().flat_map(|sentence| {
        rules.iter().flat_map(move |rule| {
            sentence
                .windows(rule.arity())
                .filter(|w| rule.matches(w))
                .map(move |w| window_candidate(w, rule))
        })
    });
    CandidateSet::from_candidates(hits)
}

/// Every order-`n` n-gram seen at least `min_count` times, as a
/// `COLLOCATION` candidate.
pub fn all_ngrams_as_collocation_candidates(index: &NGramIndex, n: usize, min_count: u64) -> CandidateSet {
    index
        .grams(n)
        .into_iter()
        .filter(|(_, c)| *c >= min_count)
        .map(|(gram, c)| {
            let mut cand = Candidate::new(
                gram.iter().map(|s| s.to_string()).collect(),
                vec![CoarseTag::Other; gram.len()],
                Category::Collocation,
            );
            cand.occurrences = c;
            cand.provenance.insert("ngram".into());
            cand
        })
        .collect()
}

/// Fills first occurrence and tags of index-derived candidates from the corpus.
pub fn locate_in_corpus(corpus: &TaggedCorpus, set: &mut CandidateSet) {
    let mut wanted: HashMap<Vec<String>, Vec<usize>> = HashMap::new();
    for (i, c) in set.iter().enumerate() {
        if c.first_occurrence.is_none() {
            wanted.entry(c.grams.clone()).or_default().push(i);
        }
    }
    if wanted.is_empty() {
        return;
    }
    let lengths: BTreeSet<usize> = wanted.keys().map(Vec::len).collect();
    let mut found: HashMap<Vec<String>, (Vec<CoarseTag>, (usize, usize))> = HashMap::new();
    'outer: for sentence in &corpus.sentences {
        for &n in &lengths {
            for w in sentence.windows(n) {
                let key: Vec<String> = w.iter().map(|t| t.surface.clone()).collect();
                if wanted.contains_key(&key) && !found.contains_key(&key) {
                    let tags = w.iter().map(|t| t.coarse_tag).collect();
                    found.insert(key, (tags, (w[0].sentence_index, w[0].position_in_sentence)));
                    if found.len() == wanted.len() {
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut items = std::mem::take(set).into_vec();
    for (gram, idxs) in wanted {
        if let Some((tags, first)) = found.get(&gram) {
            for i in idxs {
                items[i].tags = tags.clone();
                items[i].first_occurrence = Some(*first);
            }
        }
    }
    *set = CandidateSet::from_candidates(items);
}
