//! End-to-end extraction: ingest, index, candidates, filters, scoring, rank.
//!
//! The filter stages in the middle only drop, re-weight or annotate
//! candidates one at a time, so their relative order does not change the
//! result; [`Pipeline::run_with_order`] exposes that for testing.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::candidates::{
    all_ngrams_as_collocation_candidates, default_rules, generate_candidates, load_rules, locate_in_corpus,
    Candidate, CandidateSet, Category, PatternRule,
};
use crate::config::{PipelineConfig, StatsScope};
use crate::corpus::{parse_corpus, CoarseTag, TaggedCorpus, TagsetMap};
use crate::error::{Error, Result};
use crate::filters::{hyphen_weight, load_word_list, ne_weight, verb_gate, NamedEntityList, VerbLists};
use crate::index::{NGramIndex, MAX_N};
use crate::lexicon::Lexicon;
use crate::predicate::{default_cp_rules, load_cp_rules, CpDecisionRule};
use crate::rank::{combine_and_rank, to_tsv, RankedList, ScoredCandidate};
use crate::redup::{classify_reduplication, RedupKind};
use crate::semantic::{semantic_relation, Relation};
use crate::stats::{score_gram, RawScores};

/// Everything a run reads besides the corpus.
#[derive(Debug, Clone)]
pub struct Resources {
    pub tagset: TagsetMap,
    pub lexicon: Lexicon,
    pub verbs: VerbLists,
    pub named_entities: NamedEntityList,
    pub rules: Vec<PatternRule>,
    pub cp_rules: Vec<CpDecisionRule>,
}

impl Resources {
    /// Built-in rules, no lexicon, empty lists.
    pub fn bare(adj_noun_bigrams: bool) -> Self {
        Resources {
            tagset: TagsetMap::default(),
            lexicon: Lexicon::default(),
            verbs: VerbLists::default(),
            named_entities: NamedEntityList::default(),
            rules: default_rules(adj_noun_bigrams),
            cp_rules: default_cp_rules(),
        }
    }

    pub fn load(cfg: &PipelineConfig) -> Result<Self> {
        let mut res = Resources::bare(cfg.adj_noun_bigrams);
        if let Some(p) = &cfg.tagset {
            res.tagset = TagsetMap::load(p)?;
        }
        if let Some(p) = &cfg.lexicon {
            res.lexicon = Lexicon::load(p)?;
        }
        let list = |p: &Option<std::path::PathBuf>| -> Result<Vec<String>> {
            p.as_deref().map_or(Ok(Vec::new()), load_word_list)
        };
        let vector = list(&cfg.vector_verbs)?;
        let verbalizers = list(&cfg.verbalizers)?;
        res.verbs = VerbLists::new(vector.iter().map(String::as_str), verbalizers.iter().map(String::as_str));
        if let Some(p) = &cfg.named_entities {
            res.named_entities = NamedEntityList::load(p)?;
        }
        if let Some(p) = &cfg.rules {
            res.rules.extend(load_rules(p)?);
        }
        if let Some(p) = &cfg.cp_rules {
            res.cp_rules = load_cp_rules(p)?;
        }
        Ok(res)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageKind {
    Ingest,
    Index,
    /// Adds candidates.
    Generate,
    /// Annotates only.
    Tag,
    /// May remove candidates, never adds.
    Drop,
    /// Changes weights only.
    Weight,
    Score,
    Rank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub name: &'static str,
    pub kind: StageKind,
    pub before: usize,
    pub after: usize,
    pub by_category: BTreeMap<Category, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterStage {
    Reduplication,
    VerbGate,
    NamedEntity,
    Hyphenation,
    Semantic,
}

impl FilterStage {
    pub const DEFAULT_ORDER: [FilterStage; 5] = [
        FilterStage::Reduplication,
        FilterStage::VerbGate,
        FilterStage::NamedEntity,
        FilterStage::Hyphenation,
        FilterStage::Semantic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FilterStage::Reduplication => "reduplication",
            FilterStage::VerbGate => "verb_gate",
            FilterStage::NamedEntity => "named_entity",
            FilterStage::Hyphenation => "hyphenation",
            FilterStage::Semantic => "semantic",
        }
    }

    fn kind(self, ne_drop: bool) -> StageKind {
        match self {
            FilterStage::Reduplication | FilterStage::Semantic => StageKind::Tag,
            FilterStage::VerbGate => StageKind::Drop,
            FilterStage::NamedEntity if ne_drop => StageKind::Drop,
            FilterStage::NamedEntity | FilterStage::Hyphenation => StageKind::Weight,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub language: String,
    pub sentences: usize,
    pub tokens: u64,
    pub candidates: usize,
    pub ranked: usize,
    pub by_category: BTreeMap<Category, usize>,
    pub stages: Vec<StageReport>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub ranked: RankedList,
    pub stages: Vec<StageReport>,
    pub language: String,
    pub sentences: usize,
    pub tokens: u64,
    pub warnings: Vec<String>,
}

impl PipelineOutput {
    pub fn summary(&self) -> RunSummary {
        let mut by_category = BTreeMap::new();
        for e in &self.ranked {
            *by_category.entry(e.candidate.category).or_insert(0) += 1;
        }
        RunSummary {
            language: self.language.clone(),
            sentences: self.sentences,
            tokens: self.tokens,
            candidates: self.ranked.len(),
            ranked: self.ranked.iter().filter(|e| e.combined.is_some()).count(),
            by_category,
            stages: self.stages.clone(),
        }
    }
}

fn is_redup_category(c: Category) -> bool {
    matches!(
        c,
        Category::Redup | Category::PartialRedupMeaningful | Category::PartialRedupNonmeaningful
    )
}

fn category_counts(set: &CandidateSet) -> BTreeMap<Category, usize> {
    set.count_by_category().into_iter().collect()
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage: name,
        source: Box::new(e),
    })
}

fn dump_candidates(set: &CandidateSet) -> String {
    let mut out = String::from("category\tgrams\toccurrences\tweight\tprovenance\tredup\tsemantic\n");
    for c in set {
        let prov: Vec<&str> = c.provenance.iter().map(String::as_str).collect();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            c.category,
            c.grams.join(" "),
            c.occurrences,
            c.weight,
            prov.join(","),
            c.redup.as_ref().map_or("-", |v| redup_name(v.kind)),
            c.semantic.as_ref().map_or("-", |v| v.relation.as_str()),
        );
    }
    out
}

fn dump_scores(scored: &[ScoredCandidate]) -> String {
    let na = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| x.to_string());
    let mut out = String::from("category\tgrams\tcount\tnpmi\tbllr\tdice\n");
    for s in scored {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            s.candidate.category,
            s.candidate.grams.join(" "),
            s.count,
            na(s.raw.npmi),
            na(s.raw.bllr),
            na(s.raw.dice)
        );
    }
    out
}

fn redup_name(k: RedupKind) -> &'static str {
    match k {
        RedupKind::Full => "FULL",
        RedupKind::PartialMeaningful => "PARTIAL_MEANINGFUL",
        RedupKind::PartialNonmeaningful => "PARTIAL_NONMEANINGFUL",
        RedupKind::None => "NONE",
    }
}

pub struct Pipeline {
    pub config: PipelineConfig,
    pub resources: Resources,
}

struct Run<'a> {
    pipeline: &'a Pipeline,
    stages: Vec<StageReport>,
}

impl Run<'_> {
    fn dump(&self, file: &str, body: impl FnOnce() -> String) -> Result<()> {
        let Some(dir) = &self.pipeline.config.dump_dir else {
            return Ok(());
        };
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(file);
        std::fs::write(&path, body()).map_err(|e| Error::io(&path, e))
    }

    fn report(&mut self, name: &'static str, kind: StageKind, before: usize, set: &CandidateSet) -> Result<()> {
        self.stages.push(StageReport {
            name,
            kind,
            before,
            after: set.len(),
            by_category: category_counts(set),
        });
        let file = format!("{:02}-{name}.tsv", self.stages.len());
        self.dump(&file, || dump_candidates(set))
    }

    fn plain(&mut self, name: &'static str, kind: StageKind, size: usize) {
        self.stages.push(StageReport {
            name,
            kind,
            before: size,
            after: size,
            by_category: BTreeMap::new(),
        });
    }
}

impl Pipeline {
    pub fn new(config: PipelineConfig, resources: Resources) -> Self {
        Pipeline { config, resources }
    }

    /// Validates the config and loads every referenced resource.
    pub fn from_config(config: PipelineConfig) -> Result<Self> {
        stage("config", config.validate())?;
        let resources = stage("resources", Resources::load(&config))?;
        Ok(Pipeline::new(config, resources))
    }

    pub fn ingest(&self) -> Result<TaggedCorpus> {
        stage(
            "ingest",
            parse_corpus(&self.config.corpus, &self.resources.tagset, &self.config.language),
        )
    }

    pub fn run(&self) -> Result<PipelineOutput> {
        let corpus = self.ingest()?;
        self.run_on(&corpus)
    }

    pub fn run_on(&self, corpus: &TaggedCorpus) -> Result<PipelineOutput> {
        self.run_with_order(corpus, &FilterStage::DEFAULT_ORDER)
    }

    pub fn run_with_order(&self, corpus: &TaggedCorpus, order: &[FilterStage]) -> Result<PipelineOutput> {
        let cfg = &self.config;
        let res = &self.resources;
        let mut run = Run {
            pipeline: self,
            stages: Vec::new(),
        };

        run.plain("ingest", StageKind::Ingest, corpus.token_count);
        run.dump("01-ingest.txt", || corpus.to_tagged_text())?;

        let index = stage("index", NGramIndex::build(corpus, MAX_N))?;
        run.plain("index", StageKind::Index, index.total_tokens() as usize);
        if cfg.dump_dir.is_some() {
            let mut buf = Vec::new();
            index.dump(&mut buf).map_err(|e| Error::io("index dump", e))?;
            run.dump("02-index.tsv", || String::from_utf8(buf).expect("utf-8 dump"))?;
        }

        let mut set = generate_candidates(corpus, &res.rules);
        set.extend(self.partial_redup_scan(corpus, &index));
        run.report("candidate_gen", StageKind::Generate, 0, &set)?;

        for &f in order {
            let before = set.len();
            self.apply_filter(f, &mut set);
            run.report(f.name(), f.kind(cfg.filters.ne_drop), before, &set)?;
        }

        let before = set.len();
        if cfg.stats_scope == StatsScope::All {
            let mut extra = CandidateSet::new();
            for n in 2..=index.max_n() {
                extra.extend(
                    all_ngrams_as_collocation_candidates(&index, n, cfg.min_count)
                        .into_vec()
                        .into_iter()
                        .filter(|c| !set.contains_grams(&c.grams)),
                );
            }
            locate_in_corpus(corpus, &mut extra);
            set.extend(extra.into_vec());
        }
        let scored = self.score(&index, set.into_vec())?;
        let after_stats = scored.len();
        run.stages.push(StageReport {
            name: "statistics",
            kind: StageKind::Score,
            before,
            after: after_stats,
            by_category: BTreeMap::new(),
        });
        run.dump(&format!("{:02}-statistics.tsv", run.stages.len()), || dump_scores(&scored))?;
        let ranked = combine_and_rank(scored);
        run.plain("rank", StageKind::Rank, after_stats);
        run.dump(&format!("{:02}-rank.tsv", run.stages.len()), || to_tsv(&ranked))?;

        Ok(PipelineOutput {
            ranked,
            stages: run.stages,
            language: corpus.language_id.clone(),
            sentences: corpus.sentences.len(),
            tokens: index.total_tokens(),
            warnings: res.lexicon.warnings.clone(),
        })
    }

    /// Index bigrams classified as partial reduplication become candidates.
    fn partial_redup_scan(&self, corpus: &TaggedCorpus, index: &NGramIndex) -> Vec<Candidate> {
        let lex = &self.resources.lexicon;
        if lex.is_empty() {
            return Vec::new();
        }
        let found: Vec<Candidate> = index
            .grams(2)
            .par_iter()
            .filter_map(|(gram, count)| {
                let verdict = classify_reduplication(lex, gram[0], gram[1], &self.config.redup);
                let category = match verdict.kind {
                    RedupKind::PartialMeaningful => Category::PartialRedupMeaningful,
                    RedupKind::PartialNonmeaningful => Category::PartialRedupNonmeaningful,
                    _ => return None,
                };
                let mut c = Candidate::new(
                    gram.iter().map(|s| s.to_string()).collect(),
                    vec![CoarseTag::Other; 2],
                    category,
                );
                c.occurrences = *count;
                c.provenance.insert("redup-scan".into());
                Some(c)
            })
            .collect();
        let mut set = CandidateSet::from_candidates(found);
        locate_in_corpus(corpus, &mut set);
        set.into_vec()
    }

    fn apply_filter(&self, f: FilterStage, set: &mut CandidateSet) {
        let res = &self.resources;
        let cfg = &self.config;
        match f {
            FilterStage::Reduplication => {
                for c in set.iter_mut() {
                    if is_redup_category(c.category) && c.n() == 2 {
                        c.redup = Some(classify_reduplication(&res.lexicon, &c.grams[0], &c.grams[1], &cfg.redup));
                    }
                }
            }
            FilterStage::VerbGate => {
                let cp = cfg.complex_predicate.then_some(res.cp_rules.as_slice());
                let mut kept = Vec::with_capacity(set.len());
                for mut c in std::mem::take(set).into_vec() {
                    if verb_gate(&mut c, &res.verbs, &res.lexicon, cp) {
                        kept.push(c);
                    }
                }
                *set = CandidateSet::from_candidates(kept);
            }
            FilterStage::NamedEntity => {
                let mut kept = Vec::with_capacity(set.len());
                for mut c in std::mem::take(set).into_vec() {
                    if ne_weight(&mut c, &res.named_entities, &cfg.filters) {
                        kept.push(c);
                    }
                }
                *set = CandidateSet::from_candidates(kept);
            }
            FilterStage::Hyphenation => {
                for c in set.iter_mut() {
                    hyphen_weight(c, &cfg.filters);
                }
            }
            FilterStage::Semantic => {
                if res.lexicon.is_empty() {
                    return;
                }
                for c in set.iter_mut() {
                    if c.n() != 2 || is_redup_category(c.category) {
                        continue;
                    }
                    let v = semantic_relation(&res.lexicon, &c.grams[0], &c.grams[1]);
                    if v.relation != Relation::None {
                        c.provenance.insert(format!("SEMANTIC:{}", v.relation.as_str()));
                        c.semantic = Some(v);
                    }
                }
            }
        }
    }

    fn score(&self, index: &NGramIndex, cands: Vec<Candidate>) -> Result<Vec<ScoredCandidate>> {
        let doubled = self.config.dice_doubled;
        stage(
            "statistics",
            cands
                .into_par_iter()
                .map(|candidate| {
                    let count = index.count(&candidate.grams)?;
                    let raw = if candidate.n() >= 2 {
                        score_gram(index, &candidate.grams, doubled)
                    } else {
                        RawScores {
                            undefined: Some("single token".into()),
                            ..RawScores::default()
                        }
                    };
                    Ok(ScoredCandidate { candidate, raw, count })
                })
                .collect(),
        )
    }
}

/// Loads, runs and (when configured) writes the ranked list.
pub fn run_pipeline(config: PipelineConfig) -> Result<PipelineOutput> {
    let pipeline = Pipeline::from_config(config)?;
    let out = pipeline.run()?;
    if let Some(path) = &pipeline.config.output {
        write_ranked(path, &out.ranked)?;
    }
    Ok(out)
}

pub fn write_ranked(path: &Path, ranked: &RankedList) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, to_tsv(ranked)).map_err(|e| Error::io(path, e))
}
