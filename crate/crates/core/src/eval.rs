//! Precision of filters and measures against the gold store.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::candidates::Category;
use crate::error::{Error, Result};
use crate::gold::{GoldStore, Verdict};
use crate::rank::RankedEntry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Combined,
    Npmi,
    Bllr,
    Dice,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Combined, Measure::Npmi, Measure::Bllr, Measure::Dice];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Combined => "combined",
            Measure::Npmi => "npmi",
            Measure::Bllr => "bllr",
            Measure::Dice => "dice",
        }
    }

    fn value(self, e: &RankedEntry) -> Option<f64> {
        match self {
            Measure::Combined => e.combined,
            Measure::Npmi => e.raw.npmi,
            Measure::Bllr => e.raw.bllr,
            Measure::Dice => e.raw.dice,
        }
    }

    /// Best-first comparison; BLLR is better when more negative.
    fn cmp(self, a: f64, b: f64) -> Ordering {
        match self {
            Measure::Bllr => a.total_cmp(&b),
            _ => b.total_cmp(&a),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Tally {
    /// Judged candidates.
    pub hits: usize,
    pub correct: usize,
    pub unjudged: usize,
    pub precision: Option<f64>,
}

impl Tally {
    fn add(&mut self, verdict: Option<Verdict>) {
        match verdict {
            Some(Verdict::Accepted) => {
                self.hits += 1;
                self.correct += 1;
            }
            Some(Verdict::Rejected) => self.hits += 1,
            None => self.unjudged += 1,
        }
        self.precision = (self.hits > 0).then(|| self.correct as f64 / self.hits as f64);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureAtK {
    pub measure: Measure,
    pub n: usize,
    pub tally: Tally,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub k: usize,
    pub per_filter: BTreeMap<Category, Tally>,
    pub per_verbalizer: BTreeMap<String, Tally>,
    pub per_measure: Vec<MeasureAtK>,
    pub unjudged: usize,
}

fn verdict_of(gold: &GoldStore, e: &RankedEntry) -> Option<Verdict> {
    gold.lookup(&e.candidate.grams, e.candidate.category).map(|g| g.verdict)
}

/// Per-filter precision over the whole list, per-verbalizer precision for
/// conjunct verbs, and precision@K for each measure and each order 2..=5.
/// Candidates without a gold judgement are left out of every ratio.
pub fn evaluate(ranked: &[RankedEntry], gold: &GoldStore, k: usize) -> Result<EvalReport> {
    if k == 0 {
        return Err(Error::Config("K must be positive".into()));
    }
    let mut per_filter: BTreeMap<Category, Tally> = BTreeMap::new();
    let mut per_verbalizer: BTreeMap<String, Tally> = BTreeMap::new();
    let mut unjudged = 0;
    for e in ranked {
        let v = verdict_of(gold, e);
        unjudged += usize::from(v.is_none());
        per_filter.entry(e.candidate.category).or_default().add(v);
        if e.candidate.category == Category::ConjunctVerb {
            if let Some(verb) = e.candidate.grams.last() {
                per_verbalizer.entry(verb.clone()).or_default().add(v);
            }
        }
    }

    let mut per_measure = Vec::new();
    for measure in Measure::ALL {
        for n in 2..=5 {
            let mut scored: Vec<(&RankedEntry, f64)> = ranked
                .iter()
                .filter(|e| e.candidate.n() == n)
                .filter_map(|e| measure.value(e).map(|v| (e, v)))
                .collect();
            scored.sort_by(|(a, x), (b, y)| {
                measure
                    .cmp(*x, *y)
                    .then_with(|| b.count.cmp(&a.count))
                    .then_with(|| a.candidate.grams.cmp(&b.candidate.grams))
            });
            let mut tally = Tally::default();
            for (e, _) in scored.into_iter().take(k) {
                tally.add(verdict_of(gold, e));
            }
            per_measure.push(MeasureAtK { measure, n, tally });
        }
    }

    Ok(EvalReport {
        k,
        per_filter,
        per_verbalizer,
        per_measure,
        unjudged,
    })
}

fn pct(p: Option<f64>) -> String {
    p.map_or_else(|| "NA".into(), |p| format!("{:.2}", 100.0 * p))
}

impl EvalReport {
    /// Plain-text tables.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "filter\thits\tcorrect\tunjudged\tprecision%");
        for (cat, t) in &self.per_filter {
            let _ = writeln!(out, "{cat}\t{}\t{}\t{}\t{}", t.hits, t.correct, t.unjudged, pct(t.precision));
        }
        if !self.per_verbalizer.is_empty() {
            let _ = writeln!(out, "\nverbalizer\thits\tcorrect\tunjudged\tprecision%");
            for (verb, t) in &self.per_verbalizer {
                let _ = writeln!(out, "{verb}\t{}\t{}\t{}\t{}", t.hits, t.correct, t.unjudged, pct(t.precision));
            }
        }
        let _ = writeln!(out, "\nmeasure\tn\tjudged@{}\tcorrect\tunjudged\tprecision%", self.k);
        for m in &self.per_measure {
            let t = &m.tally;
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                m.measure.as_str(),
                m.n,
                t.hits,
                t.correct,
                t.unjudged,
                pct(t.precision)
            );
        }
        let _ = writeln!(out, "\nunjudged candidates: {}", self.unjudged);
        out
    }
}
