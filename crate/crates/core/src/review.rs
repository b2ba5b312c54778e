//! Transport-independent logic behind the validation API.

use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::candidates::Category;
use crate::error::Error;
use crate::gold::{Conflict, GoldEntry, GoldStore, Source, Upsert, Verdict};
use crate::lexicon::{LemmaSuggestion, Lexicon};
use crate::pipeline::RunSummary;
use crate::rank::{RankedEntry, RankedList};

pub const MAX_PAGE: usize = 1000;

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    NotFound(String),
    Conflict(Box<Conflict>),
    Internal(String),
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError::Internal(e.to_string())
    }
}

pub type ApiResult<T> = std::result::Result<T, ApiError>;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidateQuery {
    pub offset: Option<usize>,
    pub limit: Option<usize>,
    pub category: Option<String>,
    pub min_score: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidateView {
    pub rank: usize,
    pub grams: Vec<String>,
    pub category: Category,
    pub combined: Option<f64>,
    pub npmi: Option<f64>,
    pub bllr: Option<f64>,
    pub dice: Option<f64>,
    pub count: u64,
    pub weight: f64,
    pub provenance: Vec<String>,
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidatePage {
    pub total: usize,
    pub offset: usize,
    pub limit: usize,
    pub items: Vec<CandidateView>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictRequest {
    pub grams: Vec<String>,
    pub category: Category,
    pub verdict: Verdict,
    #[serde(default)]
    pub meaning: Option<String>,
    #[serde(default)]
    pub added_by: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FalseNegativeRequest {
    pub grams: Vec<String>,
    #[serde(default)]
    pub category: Option<Category>,
    #[serde(default)]
    pub meaning: Option<String>,
    #[serde(default)]
    pub added_by: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictResponse {
    pub entry: GoldEntry,
    pub outcome: &'static str,
}

type Clock = Box<dyn Fn() -> String + Send + Sync>;

pub struct ReviewService {
    ranked: RankedList,
    summary: RunSummary,
    lexicon: Arc<Lexicon>,
    gold: Mutex<GoldStore>,
    clock: Clock,
}

fn now_iso() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn outcome_name(u: Upsert) -> &'static str {
    match u {
        Upsert::Inserted => "inserted",
        Upsert::Updated => "updated",
        Upsert::Unchanged => "unchanged",
    }
}

impl ReviewService {
    pub fn new(ranked: RankedList, summary: RunSummary, lexicon: Arc<Lexicon>, gold: GoldStore) -> Self {
        ReviewService {
            ranked,
            summary,
            lexicon,
            gold: Mutex::new(gold),
            clock: Box::new(now_iso),
        }
    }

    /// Replaces the wall clock, for reproducible timestamps.
    pub fn with_clock(mut self, clock: impl Fn() -> String + Send + Sync + 'static) -> Self {
        self.clock = Box::new(clock);
        self
    }

    fn gold(&self) -> std::sync::MutexGuard<'_, GoldStore> {
        self.gold.lock().unwrap_or_else(|p| p.into_inner())
    }

    fn view(&self, e: &RankedEntry, gold: &GoldStore) -> CandidateView {
        CandidateView {
            rank: e.rank,
            grams: e.candidate.grams.clone(),
            category: e.candidate.category,
            combined: e.combined,
            npmi: e.raw.npmi,
            bllr: e.raw.bllr,
            dice: e.raw.dice,
            count: e.count,
            weight: e.candidate.weight,
            provenance: e.candidate.provenance.iter().cloned().collect(),
            verdict: gold.get(&e.candidate.grams, e.candidate.category).map(|g| g.verdict),
        }
    }

    pub fn candidates(&self, q: &CandidateQuery) -> ApiResult<CandidatePage> {
        let offset = q.offset.unwrap_or(0);
        let limit = q.limit.unwrap_or(50);
        if limit == 0 || limit > MAX_PAGE {
            return Err(ApiError::BadRequest(format!("limit must be in 1..={MAX_PAGE}")));
        }
        let category = match &q.category {
            Some(s) => Some(s.parse::<Category>().map_err(ApiError::BadRequest)?),
            None => None,
        };
        if q.min_score.is_some_and(f64::is_nan) {
            return Err(ApiError::BadRequest("minScore is not a number".into()));
        }
        let matching: Vec<&RankedEntry> = self
            .ranked
            .iter()
            .filter(|e| category.map_or(true, |c| e.candidate.category == c))
            .filter(|e| q.min_score.map_or(true, |m| e.combined.is_some_and(|s| s >= m)))
            .collect();
        let gold = self.gold();
        Ok(CandidatePage {
            total: matching.len(),
            offset,
            limit,
            items: matching
                .into_iter()
                .skip(offset)
                .take(limit)
                .map(|e| self.view(e, &gold))
                .collect(),
        })
    }

    fn session(added_by: &Option<String>) -> ApiResult<String> {
        match added_by.as_deref().map(str::trim) {
            None => Ok("anonymous".into()),
            Some("") => Err(ApiError::BadRequest("addedBy is empty".into())),
            Some(s) => Ok(s.to_string()),
        }
    }

    fn record(&self, entry: GoldEntry) -> ApiResult<VerdictResponse> {
        match self.gold().upsert(entry.clone())? {
            Ok(outcome) => Ok(VerdictResponse {
                entry,
                outcome: outcome_name(outcome),
            }),
            Err(conflict) => Err(ApiError::Conflict(Box::new(conflict))),
        }
    }

    pub fn verdict(&self, req: VerdictRequest) -> ApiResult<VerdictResponse> {
        let known = self
            .ranked
            .iter()
            .any(|e| e.candidate.grams == req.grams && e.candidate.category == req.category);
        if !known {
            return Err(ApiError::NotFound(format!(
                "no candidate `{}` with category {}",
                req.grams.join(" "),
                req.category
            )));
        }
        let entry = GoldEntry {
            grams: req.grams,
            category: req.category,
            verdict: req.verdict,
            meaning: req.meaning,
            added_by: Self::session(&req.added_by)?,
            timestamp: (self.clock)(),
            source: Source::RankedList,
        };
        self.record(entry)
    }

    pub fn false_negative(&self, req: FalseNegativeRequest) -> ApiResult<VerdictResponse> {
        let grams: Vec<String> = req
            .grams
            .iter()
            .map(|g| g.trim().to_string())
            .filter(|g| !g.is_empty())
            .collect();
        if grams.is_empty() || grams.len() > 5 {
            return Err(ApiError::BadRequest("grams must hold 1 to 5 tokens".into()));
        }
        let entry = GoldEntry {
            category: req.category.unwrap_or(Category::Collocation),
            grams,
            verdict: Verdict::Accepted,
            meaning: req.meaning,
            added_by: Self::session(&req.added_by)?,
            timestamp: (self.clock)(),
            source: Source::FalseNegative,
        };
        self.record(entry)
    }

    pub fn export(&self) -> Vec<GoldEntry> {
        self.gold().entries().cloned().collect()
    }

    pub fn export_jsonl(&self) -> String {
        self.gold().export()
    }

    pub fn lemmatize(&self, word: &str, level: usize) -> ApiResult<LemmaSuggestion> {
        let word = word.trim();
        if word.is_empty() {
            return Err(ApiError::BadRequest("word is empty".into()));
        }
        Ok(self.lexicon.lemmatize(word, level))
    }

    pub fn stats(&self) -> &RunSummary {
        &self.summary
    }
}
