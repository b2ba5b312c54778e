//! Score fusion and the ranked-list TSV.
//!
//! Each measure is mapped onto [0, 1] with its best candidate at exactly
//! 1.0, the three are summed and the sum is multiplied by the candidate
//! weight. NPMI is mapped affinely (`(x - min) / (max - min)`) since it is
//! usually negative; BLLR is negated and divided by its maximum; Dice is
//! divided by its maximum. Normalization runs separately per n-gram order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::candidates::{Candidate, Category};
use crate::corpus::CoarseTag;
use crate::error::{Error, Result};
use crate::stats::RawScores;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalized {
    pub npmi: f64,
    pub bllr: f64,
    pub dice: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredCandidate {
    pub candidate: Candidate,
    pub raw: RawScores,
    /// Corpus count of the surface n-gram.
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub candidate: Candidate,
    pub raw: RawScores,
    pub count: u64,
    pub normalized: Option<Normalized>,
    /// `None` when the candidate was excluded from fusion.
    pub combined: Option<f64>,
}

pub type RankedList = Vec<RankedEntry>;

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn ratio(x: f64, max: f64) -> f64 {
    if max > 0.0 {
        x / max
    } else {
        1.0
    }
}

fn normalize_group(group: &[(usize, [f64; 3])]) -> Vec<(usize, Normalized)> {
    let (npmi_lo, npmi_hi) = extent(group.iter().map(|(_, s)| s[0]));
    let (_, bllr_hi) = extent(group.iter().map(|(_, s)| -s[1]));
    let (_, dice_hi) = extent(group.iter().map(|(_, s)| s[2]));
    group
        .iter()
        .map(|&(i, s)| {
            let npmi = if npmi_hi > npmi_lo {
                (s[0] - npmi_lo) / (npmi_hi - npmi_lo)
            } else {
                1.0
            };
            (
                i,
                Normalized {
                    npmi,
                    bllr: ratio(-s[1], bllr_hi),
                    dice: ratio(s[2], dice_hi),
                },
            )
        })
        .collect()
}

fn order(a: &RankedEntry, b: &RankedEntry) -> Ordering {
    let fused = |e: &RankedEntry| e.combined.is_some();
    fused(b)
        .cmp(&fused(a))
        .then_with(|| a.candidate.n().cmp(&b.candidate.n()))
        .then_with(|| match (a.combined, b.combined) {
            (Some(x), Some(y)) => y.total_cmp(&x),
            _ => Ordering::Equal,
        })
        .then_with(|| b.count.cmp(&a.count))
        .then_with(|| a.candidate.grams.cmp(&b.candidate.grams))
        .then_with(|| a.candidate.category.cmp(&b.candidate.category))
}

/// Fuses and sorts. Fused entries come first, grouped by ascending order
/// and then by descending combined score; ties fall back to corpus count
/// and then to the grams. Entries lacking any raw score trail the list.
pub fn combine_and_rank(cands: Vec<ScoredCandidate>) -> RankedList {
    let mut groups: BTreeMap<usize, Vec<(usize, [f64; 3])>> = BTreeMap::new();
    for (i, c) in cands.iter().enumerate() {
        if let Some(s) = c.raw.complete() {
            groups.entry(c.candidate.n()).or_default().push((i, s));
        }
    }
    let mut norms: Vec<Option<Normalized>> = vec![None; cands.len()];
    for group in groups.values() {
        for (i, n) in normalize_group(group) {
            norms[i] = Some(n);
        }
    }
    let mut list: RankedList = cands
        .into_iter()
        .zip(norms)
        .map(|(c, norm)| {
            let combined = norm.map(|n| (n.npmi + n.bllr + n.dice) * c.candidate.weight);
            RankedEntry {
                rank: 0,
                candidate: c.candidate,
                raw: c.raw,
                count: c.count,
                normalized: norm,
                combined,
            }
        })
        .collect();
    list.sort_by(order);
    for (i, e) in list.iter_mut().enumerate() {
        e.rank = i + 1;
    }
    list
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

pub const TSV_HEADER: &str = "rank\tcombined\tnpmi\tbllr\tdice\tcount\tcategory\tgrams";

/// `rank combined npmi bllr dice count category grams`, tab-separated,
/// with a header line. Undefined values are written as `NA`.
pub fn to_tsv(list: &[RankedEntry]) -> String {
    let mut out = String::new();
    out.push_str(TSV_HEADER);
    out.push('\n');
    for e in list {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            e.rank,
            fmt_opt(e.combined),
            fmt_opt(e.raw.npmi),
            fmt_opt(e.raw.bllr),
            fmt_opt(e.raw.dice),
            e.count,
            e.candidate.category,
            e.candidate.grams.join(" ")
        );
    }
    out
}

pub fn parse_tsv(text: &str, origin: &Path) -> Result<RankedList> {
    let mut list = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.is_empty() || line == TSV_HEADER {
            continue;
        }
        let bad = |m: &str| Error::malformed(origin, i + 1, m);
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 8 {
            return Err(bad("expected 8 tab-separated fields"));
        }
        let num = |s: &str| -> Result<Option<f64>> {
            if s == "NA" {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| bad("bad number"))
            }
        };
        let grams: Vec<String> = f[7].split(' ').map(str::to_string).collect();
        let category: Category = f[6].parse().map_err(|m: String| bad(&m))?;
        let mut candidate = Candidate::new(grams.clone(), vec![CoarseTag::Other; grams.len()], category);
        let count = f[5].parse().map_err(|_| bad("bad count"))?;
        candidate.occurrences = count;
        list.push(RankedEntry {
            rank: f[0].parse().map_err(|_| bad("bad rank"))?,
            combined: num(f[1])?,
            raw: RawScores {
                npmi: num(f[2])?,
                bllr: num(f[3])?,
                dice: num(f[4])?,
                undefined: None,
            },
            count,
            normalized: None,
            candidate,
        });
    }
    Ok(list)
}

pub fn load_tsv(path: &Path) -> Result<RankedList> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_tsv(&text, path)
}
