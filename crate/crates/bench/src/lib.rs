//! Synthetic tagged corpora and lexicons for the benchmarks.

use rand::distributions::{Distribution, WeightedIndex};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use mwe_core::{parse_corpus_str, CoarseTag, Lexicon, Synset, TaggedCorpus, TagsetMap};

const TAGS: [&str; 5] = ["NN", "VM", "JJ", "RB", "PSP"];

fn word(i: usize) -> String {
    // two-letter syllables from a small Devanagari alphabet
    const SYL: [char; 8] = ['क', 'ग', 'च', 'ज', 'त', 'द', 'न', 'म'];
    let mut s = String::new();
    let mut k = i + 1;
    while k > 0 {
        s.push(SYL[k % SYL.len()]);
        s.push('ा');
        k /= SYL.len();
    }
    s
}

/// `sentences` lines over a Zipf-like vocabulary of `vocab` words.
pub fn corpus_text(sentences: usize, vocab: usize, seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let weights: Vec<f64> = (1..=vocab).map(|r| 1.0 / r as f64).collect();
    let zipf = WeightedIndex::new(&weights).expect("positive weights");
    let mut out = String::new();
    for _ in 0..sentences {
        let len = rng.gen_range(4..20);
        for j in 0..len {
            let w = zipf.sample(&mut rng);
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&word(w));
            out.push('_');
            out.push_str(TAGS[w % TAGS.len()]);
        }
        out.push('\n');
    }
    out
}

pub fn corpus(sentences: usize, vocab: usize, seed: u64) -> TaggedCorpus {
    parse_corpus_str(&corpus_text(sentences, vocab, seed), &TagsetMap::default(), "bench").expect("non-empty corpus")
}

/// Every vocabulary word as a verb lemma ending in `ना`.
pub fn lexicon(vocab: usize) -> Lexicon {
    let synsets = (0..vocab)
        .map(|i| {
            let lemma = format!("{}ना", word(i));
            Synset::new(&i.to_string(), CoarseTag::Verb, &[lemma.as_str()])
        })
        .collect();
    Lexicon::from_synsets(synsets).expect("unique ids")
}

pub fn inflected_words(n: usize, vocab: usize, seed: u64) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| format!("{}ते", word(rng.gen_range(0..vocab))))
        .collect()
}
