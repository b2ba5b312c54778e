use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::CoarseTag;

pub type NodeId = usize;

pub const ROOT: NodeId = 0;

#[derive(Debug, Clone, Default)]
pub struct TrieNode {
    pub edge_char: Option<char>,
    pub children: BTreeMap<char, NodeId>,
    pub is_end_of_word: bool,
    pub pos_set: BTreeSet<CoarseTag>,
    pub synset_ids: BTreeSet<String>,
    pub parent: Option<NodeId>,
    pub depth: usize,
}

/// Arena-backed character trie over lexicon lemmas with parent links.
#[derive(Debug, Clone)]
pub struct Trie {
    nodes: Vec<TrieNode>,
}

impl Default for Trie {
    fn default() -> Self {
        Trie {
            nodes: vec![TrieNode::default()],
        }
    }
}

/// Stem plus ranked lemma suggestions for a (possibly inflected) word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSuggestion {
    pub stem: String,
    pub lemmas: Vec<String>,
    pub match_depth: usize,
}

impl LemmaSuggestion {
    pub fn empty() -> Self {
        LemmaSuggestion {
            stem: String::new(),
            lemmas: Vec::new(),
            match_depth: 0,
        }
    }
}

impl Trie {
    pub fn insert(&mut self, word: &str, pos: CoarseTag, synset_id: &str) {
        let mut cur = ROOT;
        for ch in word.chars() {
            cur = match self.nodes[cur].children.get(&ch) {
                Some(&next) => next,
                None => {
                    let id = self.nodes.len();
                    let depth = self.nodes[cur].depth + 1;
                    self.nodes.push(TrieNode {
                        edge_char: Some(ch),
                        parent: Some(cur),
                        depth,
                        ..Default::default()
                    });
                    self.nodes[cur].children.insert(ch, id);
                    id
                }
            };
        }
        let node = &mut self.nodes[cur];
        node.is_end_of_word = true;
        node.pos_set.insert(pos);
        node.synset_ids.insert(synset_id.to_string());
    }

    pub fn node(&self, id: NodeId) -> &TrieNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    /// Node reached by following `word` exactly.
    pub fn find(&self, word: &str) -> Option<NodeId> {
        word.chars()
            .try_fold(ROOT, |cur, ch| self.nodes[cur].children.get(&ch).copied())
    }

    pub fn lookup(&self, word: &str) -> Option<&TrieNode> {
        if word.is_empty() {
            return None;
        }
        self.find(word)
            .map(|id| &self.nodes[id])
            .filter(|n| n.is_end_of_word)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.lookup(word).is_some()
    }

    /// Deepest node matching a prefix of `word`.
    pub fn max_match(&self, word: &str) -> NodeId {
        let mut cur = ROOT;
        for ch in word.chars() {
            match self.nodes[cur].children.get(&ch) {
                Some(&next) => cur = next,
                None => break,
            }
        }
        cur
    }

    /// Spells the path from the root down to `id` by tracing parent links.
    pub fn spell(&self, mut id: NodeId) -> String {
        let mut chars = Vec::with_capacity(self.nodes[id].depth);
        while let Some(parent) = self.nodes[id].parent {
            chars.extend(self.nodes[id].edge_char);
            id = parent;
        }
        chars.iter().rev().collect()
    }

    /// Every word stored in the subtree rooted at `id` (including `id`).
    pub fn words_below(&self, id: NodeId) -> Vec<String> {
        let mut out = Vec::new();
        let mut prefix = self.spell(id);
        self.collect(id, &mut prefix, &mut out);
        out
    }

    fn collect(&self, id: NodeId, prefix: &mut String, out: &mut Vec<String>) {
        let node = &self.nodes[id];
        if node.is_end_of_word {
            out.push(prefix.clone());
        }
        for (&ch, &child) in &node.children {
            prefix.push(ch);
            self.collect(child, prefix, out);
            prefix.pop();
        }
    }

    /// Maximal-match stemming with caller-driven backtracking.
    ///
    /// At level 0 an exact hit returns the word itself. Otherwise the deepest
    /// matching node (the word's own node for a known word) is lifted
    /// `backtrack_level` parents, stopping at the root, and every lemma below
    /// it is suggested, closest length first.
    pub fn lemmatize(&self, word: &str, backtrack_level: usize) -> LemmaSuggestion {
        if backtrack_level == 0 && self.contains(word) {
            return LemmaSuggestion {
                stem: word.to_string(),
                lemmas: vec![word.to_string()],
                match_depth: word.chars().count(),
            };
        }
        // a known word backs off from its own node
        let mut node = self.max_match(word);
        if node == ROOT {
            return LemmaSuggestion::empty();
        }
        for _ in 0..backtrack_level {
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => break,
            }
        }
        let word_len = word.chars().count() as isize;
        let mut lemmas = self.words_below(node);
        lemmas.sort_by_cached_key(|l| ((l.chars().count() as isize - word_len).abs(), l.clone()));
        LemmaSuggestion {
            stem: self.spell(node),
            lemmas,
            match_depth: self.nodes[node].depth,
        }
    }
}
