//! Lexicographer-validated gold store, persisted as JSON Lines.
//!
//! Writes are appended; on load later lines replace earlier ones for the
//! same `(grams, category)` key, and [`GoldStore::compact`] rewrites the
//! file in canonical order.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::candidates::Category;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Source {
    RankedList,
    FalseNegative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldEntry {
    pub grams: Vec<String>,
    pub category: Category,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meaning: Option<String>,
    pub added_by: String,
    pub timestamp: String,
    pub source: Source,
}

impl GoldEntry {
    fn key(&self) -> GoldKey {
        (self.grams.clone(), self.category)
    }

    fn same_judgement(&self, other: &GoldEntry) -> bool {
        self.verdict == other.verdict && self.meaning == other.meaning && self.source == other.source
    }
}

pub type GoldKey = (Vec<String>, Category);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Upsert {
    Inserted,
    Updated,
    Unchanged,
}

/// Another session already recorded a different judgement for this key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub existing: GoldEntry,
    pub proposed: GoldEntry,
}

#[derive(Debug, Clone, Default)]
pub struct GoldStore {
    path: Option<PathBuf>,
    entries: BTreeMap<GoldKey, GoldEntry>,
}

impl GoldStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (or starts) a store backed by `path`.
    pub fn open(path: &Path) -> Result<Self> {
        let mut store = if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            Self::import(&text, path)?
        } else {
            GoldStore::default()
        };
        store.path = Some(path.to_path_buf());
        Ok(store)
    }

    pub fn import(text: &str, origin: &Path) -> Result<Self> {
        let mut store = GoldStore::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut entry: GoldEntry = serde_json::from_str(line)
                .map_err(|e| Error::malformed(origin, i + 1, e.to_string()))?;
            if entry.grams.is_empty() {
                return Err(Error::malformed(origin, i + 1, "entry without grams"));
            }
            if entry.source == Source::FalseNegative {
                entry.verdict = Verdict::Accepted;
            }
            store.entries.insert(entry.key(), entry);
        }
        Ok(store)
    }

    /// Canonical JSON Lines, sorted by key.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for e in self.entries.values() {
            out.push_str(&serde_json::to_string(e).expect("gold entry serializes"));
            out.push('\n');
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = &GoldEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, grams: &[String], category: Category) -> Option<&GoldEntry> {
        self.entries.get(&(grams.to_vec(), category))
    }

    /// Exact key first, otherwise any judgement of the same grams.
    pub fn lookup(&self, grams: &[String], category: Category) -> Option<&GoldEntry> {
        self.get(grams, category)
            .or_else(|| self.entries.values().find(|e| e.grams == grams))
    }

    /// Records a judgement. Repeating an identical judgement is a no-op; the
    /// same session may revise its own entry; a differing judgement from
    /// another session is a [`Conflict`].
    pub fn upsert(&mut self, mut entry: GoldEntry) -> Result<std::result::Result<Upsert, Conflict>> {
        if entry.source == Source::FalseNegative {
            entry.verdict = Verdict::Accepted;
        }
        let outcome = match self.entries.get(&entry.key()) {
            None => Upsert::Inserted,
            Some(cur) if cur.same_judgement(&entry) => return Ok(Ok(Upsert::Unchanged)),
            Some(cur) if cur.added_by == entry.added_by => Upsert::Updated,
            Some(cur) => {
                return Ok(Err(Conflict {
                    existing: cur.clone(),
                    proposed: entry,
                }))
            }
        };
        self.append(&entry)?;
        self.entries.insert(entry.key(), entry);
        Ok(Ok(outcome))
    }

    fn append(&self, entry: &GoldEntry) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        let line = serde_json::to_string(entry)?;
        writeln!(file, "{line}").map_err(|e| Error::io(path, e))
    }

    /// Rewrites the backing file in canonical order.
    pub fn compact(&self) -> Result<()> {
        if let Some(path) = &self.path {
            std::fs::write(path, self.export()).map_err(|e| Error::io(path, e))?;
        }
        Ok(())
    }
}
