//! POS-tagged corpus ingestion.
//!
//! One sentence per line, whitespace-separated `word_TAG` tokens. The tag is
//! split off at the rightmost underscore so surfaces may carry underscores of
//! their own.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Coarse part-of-speech class used by the pattern rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CoarseTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Other,
}

impl CoarseTag {
    pub const ALL: [CoarseTag; 5] = [
        CoarseTag::Noun,
        CoarseTag::Verb,
        CoarseTag::Adj,
        CoarseTag::Adv,
        CoarseTag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CoarseTag::Noun => "NOUN",
            CoarseTag::Verb => "VERB",
            CoarseTag::Adj => "ADJ",
            CoarseTag::Adv => "ADV",
            CoarseTag::Other => "OTHER",
        }
    }
}

impl fmt::Display for CoarseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoarseTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "NOUN" => Ok(CoarseTag::Noun),
            "VERB" => Ok(CoarseTag::Verb),
            "ADJ" => Ok(CoarseTag::Adj),
            "ADV" => Ok(CoarseTag::Adv),
            "OTHER" => Ok(CoarseTag::Other),
            other => Err(format!("unknown tag class `{other}`")),
        }
    }
}

/// Maps raw tagger tags onto [`CoarseTag`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagsetMap {
    entries: HashMap<String, CoarseTag>,
    default_class: CoarseTag,
}

impl Default for TagsetMap {
    fn default() -> Self {
        let mut entries = HashMap::new();
        for tag in ["NN", "NNP", "NNC", "NNPC"] {
            entries.insert(tag.to_string(), CoarseTag::Noun);
        }
        for tag in ["VB", "VBD", "VBG", "VBP", "VBN", "VBZ", "VM"] {
            entries.insert(tag.to_string(), CoarseTag::Verb);
        }
        for tag in ["JJ", "JJR", "JJS"] {
            entries.insert(tag.to_string(), CoarseTag::Adj);
        }
        for tag in ["RB", "RBR", "RBS"] {
            entries.insert(tag.to_string(), CoarseTag::Adv);
        }
        TagsetMap {
            entries,
            default_class: CoarseTag::Other,
        }
    }
}

impl TagsetMap {
    pub fn empty(default_class: CoarseTag) -> Self {
        TagsetMap {
            entries: HashMap::new(),
            default_class,
        }
    }

    pub fn insert(&mut self, raw: impl Into<String>, class: CoarseTag) {
        self.entries.insert(raw.into(), class);
    }

    pub fn default_class(&self) -> CoarseTag {
        self.default_class
    }

    pub fn classify(&self, raw_tag: &str) -> CoarseTag {
        self.entries
            .get(raw_tag)
            .copied()
            .unwrap_or(self.default_class)
    }

    /// Loads `RAWTAG<TAB>CLASS` lines. A missing file yields the built-in map.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(TagsetMap::default());
        }
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut map = TagsetMap::empty(CoarseTag::Other);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (raw, class) = line
                .split_once('\t')
                .ok_or_else(|| Error::malformed(path, i + 1, "expected RAWTAG<TAB>CLASS"))?;
            let class = class
                .trim()
                .parse()
                .map_err(|m: String| Error::malformed(path, i + 1, m))?;
            map.insert(raw.trim(), class);
        }
        Ok(map)
    }
}

/// Shorthand for [`TagsetMap::classify`].
pub fn classify_tag(raw_tag: &str, tagset: &TagsetMap) -> CoarseTag {
    tagset.classify(raw_tag)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub raw_tag: String,
    pub coarse_tag: CoarseTag,
    pub sentence_index: usize,
    pub position_in_sentence: usize,
    pub has_internal_hyphen: bool,
}

/// True when some `-` sits strictly between two non-hyphen characters.
pub fn has_internal_hyphen(surface: &str) -> bool {
    let chars: Vec<char> = surface.chars().collect();
    (1..chars.len().saturating_sub(1))
        .any(|i| chars[i] == '-' && chars[i - 1] != '-' && chars[i + 1] != '-')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedCorpus {
    pub sentences: Vec<Vec<Token>>,
    pub language_id: String,
    pub token_count: usize,
}

impl TaggedCorpus {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }

    /// Re-serializes as `surface_rawTag` lines; tokens without a tag are
    /// written as the bare surface.
    pub fn to_tagged_text(&self) -> String {
        let mut out = String::new();
        for sentence in &self.sentences {
            let line: Vec<String> = sentence
                .iter()
                .map(|t| {
                    if t.raw_tag.is_empty() {
                        t.surface.clone()
                    } else {
                        format!("{}_{}", t.surface, t.raw_tag)
                    }
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn split_token(raw: &str) -> (&str, &str) {
    match raw.rfind('_') {
        Some(idx) if idx > 0 => (&raw[..idx], &raw[idx + 1..]),
        _ => (raw, ""),
    }
}

fn parse_line(line: &str, sentence_index: usize, tagset: &TagsetMap) -> Vec<Token> {
    line.split_whitespace()
        .enumerate()
        .map(|(pos, raw)| {
            let (surface, tag) = split_token(raw);
            let surface: String = surface.nfc().collect();
            Token {
                has_internal_hyphen: has_internal_hyphen(&surface),
                surface,
                raw_tag: tag.to_string(),
                coarse_tag: tagset.classify(tag),
                sentence_index,
                position_in_sentence: pos,
            }
        })
        .collect()
}

/// Parses corpus bytes. `origin` is only used in error messages.
pub fn parse_corpus_bytes(
    bytes: &[u8],
    origin: &Path,
    tagset: &TagsetMap,
    language_id: &str,
) -> Result<TaggedCorpus> {
    let mut sentences = Vec::new();
    let mut token_count = 0;
    for (i, raw_line) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = std::str::from_utf8(raw_line).map_err(|_| Error::InvalidUtf8 {
            path: origin.to_path_buf(),
            line: i + 1,
        })?;
        let tokens = parse_line(line, sentences.len(), tagset);
        if tokens.is_empty() {
            continue;
        }
        token_count += tokens.len();
        sentences.push(tokens);
    }
    if token_count == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(TaggedCorpus {
        sentences,
        language_id: language_id.to_string(),
        token_count,
    })
}

pub fn parse_corpus_str(text: &str, tagset: &TagsetMap, language_id: &str) -> Result<TaggedCorpus> {
    parse_corpus_bytes(text.as_bytes(), Path::new("<memory>"), tagset, language_id)
}

pub fn parse_corpus(path: &Path, tagset: &TagsetMap, language_id: &str) -> Result<TaggedCorpus> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_corpus_bytes(&bytes, path, tagset, language_id)
}
