//! Frequency tables of contiguous within-sentence 1..5-grams.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::corpus::TaggedCorpus;
use crate::error::{Error, Result};

pub const MAX_N: usize = 5;

type Counts = HashMap<Vec<u32>, u64>;

/// Immutable n-gram count table keyed by interned surface ids.
#[derive(Debug, Clone, Default)]
pub struct NGramIndex {
    vocab: HashMap<String, u32>,
    words: Vec<String>,
    // counts[n - 1] holds the n-grams
    counts: Vec<Counts>,
    max_n: usize,
    total_tokens: u64,
    sentence_count: u64,
}

fn check_len(len: usize) -> Result<()> {
    if (1..=MAX_N).contains(&len) {
        Ok(())
    } else {
        Err(Error::GramLength(len))
    }
}

impl NGramIndex {
    pub fn build(corpus: &TaggedCorpus, max_n: usize) -> Result<Self> {
        if corpus.token_count == 0 {
            return Err(Error::EmptyCorpus);
        }
        if !(2..=MAX_N).contains(&max_n) {
            return Err(Error::GramLength(max_n));
        }
        let mut vocab: HashMap<String, u32> = HashMap::new();
        let mut words = Vec::new();
        let ids: Vec<Vec<u32>> = corpus
            .sentences
            .iter()
            .map(|s| {
                s.iter()
                    .map(|t| {
                        *vocab.entry(t.surface.clone()).or_insert_with(|| {
                            words.push(t.surface.clone());
                            (words.len() - 1) as u32
                        })
                    })
                    .collect()
            })
            .collect();

        let counts = ids
            .par_chunks(1024)
            .map(|chunk| {
                let mut local = vec![Counts::new(); max_n];
                for sentence in chunk {
                    for n in 1..=max_n {
                        for window in sentence.windows(n) {
                            *local[n - 1].entry(window.to_vec()).or_insert(0) += 1;
                        }
                    }
                }
                local
            })
            .reduce(
                || vec![Counts::new(); max_n],
                |mut a, b| {
                    for (into, from) in a.iter_mut().zip(b) {
                        for (k, v) in from {
                            *into.entry(k).or_insert(0) += v;
                        }
                    }
                    a
                },
            );

        Ok(NGramIndex {
            vocab,
            words,
            counts,
            max_n,
            total_tokens: corpus.token_count as u64,
            sentence_count: corpus.sentences.len() as u64,
        })
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn sentence_count(&self) -> u64 {
        self.sentence_count
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn ids<S: AsRef<str>>(&self, gram: &[S]) -> Option<Vec<u32>> {
        gram.iter().map(|w| self.vocab.get(w.as_ref()).copied()).collect()
    }

    /// Stored count, 0 when absent or longer than the indexed order.
    pub fn count<S: AsRef<str>>(&self, gram: &[S]) -> Result<u64> {
        check_len(gram.len())?;
        if gram.len() > self.max_n {
            return Ok(0);
        }
        Ok(self
            .ids(gram)
            .and_then(|ids| self.counts[gram.len() - 1].get(&ids).copied())
            .unwrap_or(0))
    }

    /// `count(gram) / N` for every order, following the MLE convention.
    pub fn prob<S: AsRef<str>>(&self, gram: &[S]) -> Result<f64> {
        Ok(self.count(gram)? as f64 / self.total_tokens as f64)
    }

    /// All stored n-grams of order `n` with their counts, sorted by surface.
    pub fn grams(&self, n: usize) -> Vec<(Vec<&str>, u64)> {
        if n == 0 || n > self.max_n {
            return Vec::new();
        }
        let mut out: Vec<(Vec<&str>, u64)> = self.counts[n - 1]
            .iter()
            .map(|(ids, &c)| (ids.iter().map(|&i| self.words[i as usize].as_str()).collect(), c))
            .collect();
        out.sort();
        out
    }

    pub fn distinct(&self, n: usize) -> usize {
        if n == 0 || n > self.max_n {
            0
        } else {
            self.counts[n - 1].len()
        }
    }

    /// Writes the TSV dump: `#N=<total>` header then `n<TAB>tokens<TAB>count`.
    pub fn dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "#N={}", self.total_tokens)?;
        writeln!(out, "#sentences={}", self.sentence_count)?;
        for n in 1..=self.max_n {
            for (gram, c) in self.grams(n) {
                writeln!(out, "{}\t{}\t{}", n, gram.join(" "), c)?;
            }
        }
        Ok(())
    }

    pub fn dump_to_path(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = std::io::BufWriter::new(file);
        self.dump(&mut w)
            .and_then(|_| w.flush())
            .map_err(|e| Error::io(path, e))
    }

    pub fn load_dump(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_dump(&text, path)
    }

    pub fn parse_dump(text: &str, origin: &Path) -> Result<Self> {
        let mut index = NGramIndex {
            counts: vec![Counts::new(); MAX_N],
            ..Default::default()
        };
        let mut seen_total = false;
        let mut max_n = 1;
        for (i, line) in text.lines().enumerate() {
            let bad = |m: &str| Error::malformed(origin, i + 1, m);
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.strip_prefix("N=") {
                    index.total_tokens = v.trim().parse().map_err(|_| bad("bad #N header"))?;
                    seen_total = true;
                } else if let Some(v) = rest.strip_prefix("sentences=") {
                    index.sentence_count = v.trim().parse().map_err(|_| bad("bad #sentences header"))?;
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(n), Some(gram), Some(c), None) =
                (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(bad("expected n<TAB>tokens<TAB>count"));
            };
            let n: usize = n.parse().map_err(|_| bad("bad order"))?;
            let c: u64 = c.parse().map_err(|_| bad("bad count"))?;
            let toks: Vec<&str> = gram.split(' ').collect();
            if toks.len() != n || !(1..=MAX_N).contains(&n) || c == 0 {
                return Err(bad("order does not match token count"));
            }
            let ids = toks
                .iter()
                .map(|w| {
                    let next = index.words.len() as u32;
                    *index.vocab.entry((*w).to_string()).or_insert_with(|| {
                        index.words.push((*w).to_string());
                        next
                    })
                })
                .collect();
            index.counts[n - 1].insert(ids, c);
            max_n = max_n.max(n);
        }
        if !seen_total || index.total_tokens == 0 {
            return Err(Error::malformed(origin, 1, "missing #N header"));
        }
        index.counts.truncate(max_n.max(2));
        index.max_n = max_n.max(2);
        Ok(index)
    }
}
