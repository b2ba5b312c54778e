//! `key=value` pipeline configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::filters::FilterConfig;
use crate::redup::RedupConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StatsScope {
    /// Score only pattern candidates.
    #[default]
    Candidates,
    /// Also score every n-gram above the count threshold.
    All,
}

impl FromStr for StatsScope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "candidates" => Ok(StatsScope::Candidates),
            "all" => Ok(StatsScope::All),
            other => Err(format!("stats scope must be `candidates` or `all`, got `{other}`")),
        }
    }
}

impl fmt::Display for StatsScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatsScope::Candidates => "candidates",
            StatsScope::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub corpus: PathBuf,
    pub language: String,
    pub tagset: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub vector_verbs: Option<PathBuf>,
    pub verbalizers: Option<PathBuf>,
    pub named_entities: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    pub cp_rules: Option<PathBuf>,
    pub gold: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub dump_dir: Option<PathBuf>,
    pub redup: RedupConfig,
    pub filters: FilterConfig,
    pub adj_noun_bigrams: bool,
    pub complex_predicate: bool,
    pub dice_doubled: bool,
    pub min_count: u64,
    pub stats_scope: StatsScope,
    pub top_k: usize,
}

impl PipelineConfig {
    pub fn new(corpus: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            corpus: corpus.into(),
            language: "und".into(),
            tagset: None,
            lexicon: None,
            vector_verbs: None,
            verbalizers: None,
            named_entities: None,
            rules: None,
            cp_rules: None,
            gold: None,
            output: None,
            dump_dir: None,
            redup: RedupConfig::default(),
            filters: FilterConfig::default(),
            adj_noun_bigrams: true,
            complex_predicate: true,
            dice_doubled: false,
            min_count: 2,
            stats_scope: StatsScope::default(),
            top_k: 200,
        }
    }

    /// Parses `key=value` lines; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let path = |v: &str| {
            let p = PathBuf::from(v);
            if p.is_absolute() {
                p
            } else {
                base.join(p)
            }
        };
        let corpus = kv
            .remove("corpus")
            .ok_or_else(|| Error::Config("missing `corpus`".into()))?;
        let mut cfg = PipelineConfig::new(path(&corpus));
        for (k, v) in kv {
            let bad = |e: &dyn fmt::Display| Error::Config(format!("{k}: {e}"));
            match k.as_str() {
                "language" => cfg.language = v,
                "tagset" => cfg.tagset = Some(path(&v)),
                "lexicon" => cfg.lexicon = Some(path(&v)),
                "vector_verbs" => cfg.vector_verbs = Some(path(&v)),
                "verbalizers" => cfg.verbalizers = Some(path(&v)),
                "named_entities" => cfg.named_entities = Some(path(&v)),
                "rules" => cfg.rules = Some(path(&v)),
                "cp_rules" => cfg.cp_rules = Some(path(&v)),
                "gold" => cfg.gold = Some(path(&v)),
                "output" => cfg.output = Some(path(&v)),
                "dump_dir" => cfg.dump_dir = Some(path(&v)),
                "redup.min_suffix_frac" => cfg.redup.min_suffix_frac = v.parse().map_err(|e| bad(&e))?,
                "redup.max_prefix_delta" => cfg.redup.max_prefix_delta = v.parse().map_err(|e| bad(&e))?,
                "filters.ne_penalty" => cfg.filters.ne_penalty = v.parse().map_err(|e| bad(&e))?,
                "filters.hyphen_boost" => cfg.filters.hyphen_boost = v.parse().map_err(|e| bad(&e))?,
                "filters.ne_drop" => cfg.filters.ne_drop = v.parse().map_err(|e| bad(&e))?,
                "candidates.adj_noun_bigrams" => cfg.adj_noun_bigrams = v.parse().map_err(|e| bad(&e))?,
                "complex_predicate.enabled" => cfg.complex_predicate = v.parse().map_err(|e| bad(&e))?,
                "stats.dice_doubled" => cfg.dice_doubled = v.parse().map_err(|e| bad(&e))?,
                "stats.min_count" => cfg.min_count = v.parse().map_err(|e| bad(&e))?,
                "pipeline.stats_scope" => cfg.stats_scope = v.parse().map_err(|e: String| bad(&e))?,
                "pipeline.top_k" => cfg.top_k = v.parse().map_err(|e| bad(&e))?,
                _ => return Err(Error::Config(format!("unknown key `{k}`"))),
            }
        }
        cfg.check_values()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    fn check_values(&self) -> Result<()> {
        if self.top_k == 0 {
            return Err(Error::Config("pipeline.top_k must be at least 1".into()));
        }
        if self.min_count == 0 {
            return Err(Error::Config("stats.min_count must be at least 1".into()));
        }
        if !(self.filters.ne_penalty > 0.0 && self.filters.hyphen_boost > 0.0) {
            return Err(Error::Config("weights must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.redup.min_suffix_frac) {
            return Err(Error::Config("redup.min_suffix_frac must lie in [0, 1]".into()));
        }
        Ok(())
    }

    /// Every referenced input file must exist. The gold store, output and
    /// dump locations are created on demand.
    pub fn validate(&self) -> Result<()> {
        self.check_values()?;
        let inputs = [
            Some(&self.corpus),
            self.lexicon.as_ref(),
            self.vector_verbs.as_ref(),
            self.verbalizers.as_ref(),
            self.named_entities.as_ref(),
            self.rules.as_ref(),
            self.cp_rules.as_ref(),
        ];
        for p in inputs.into_iter().flatten() {
            if !p.exists() {
                return Err(Error::Config(format!("file not found: {}", p.display())));
            }
        }
        Ok(())
    }
}
