//! Multiword expression extraction for POS-tagged corpora.
//!
//! Pattern rules propose candidates, lexical filters (reduplication,
//! verb lists, named entities, wordnet relations, ontology-based complex
//! predicates) prune and annotate them, and three association measures
//! (NPMI, bidirectional LLR, Dice) are fused into one ranked list.
//!
//! ```
//! use mwe_core::{parse_corpus_str, NGramIndex, TagsetMap};
//!
//! let corpus = parse_corpus_str("a_NN b_NN c_VB\na_NN b_NN d_VB\n", &TagsetMap::default(), "x")?;
//! let index = NGramIndex::build(&corpus, 5)?;
//! assert_eq!(index.count(&["a", "b"])?, 2);
//! # Ok::<(), mwe_core::Error>(())
//! ```

pub mod candidates;
pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod filters;
pub mod gold;
pub mod index;
pub mod lexicon;
pub mod pipeline;
pub mod predicate;
pub mod rank;
pub mod redup;
pub mod review;
pub mod semantic;
pub mod stats;

pub use candidates::{Candidate, CandidateSet, Category, PatternRule, Slot};
pub use config::{PipelineConfig, StatsScope};
pub use corpus::{parse_corpus, parse_corpus_str, CoarseTag, TaggedCorpus, TagsetMap, Token};
pub use error::{Error, Result};
pub use eval::{evaluate, EvalReport, Measure};
pub use filters::{FilterConfig, NamedEntityList, VerbLists};
pub use gold::{GoldEntry, GoldStore, Source, Verdict};
pub use index::{NGramIndex, MAX_N};
pub use lexicon::{LemmaSuggestion, Lexicon, Synset, Trie};
pub use pipeline::{run_pipeline, Pipeline, PipelineOutput, Resources, RunSummary};
pub use predicate::{is_conjunct, CpDecisionRule};
pub use rank::{combine_and_rank, RankedEntry, RankedList};
pub use redup::{classify_reduplication, RedupConfig, RedupKind, ReduplicationVerdict};
pub use semantic::{semantic_relation, Relation, SemanticVerdict};
pub use stats::{bllr, dice, npmi, RawScores};
