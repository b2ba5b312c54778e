//! Association measures for 2..5-grams.
//!
//! All three measures split an n-gram into its length-(n-1) prefix and
//! suffix and compare the joint count against those two constituents:
//!
//! * NPMI: `log2(p(gram)^2 / (p(prefix) * p(suffix)))`, probabilities as
//!   count over the corpus token total.
//! * BLLR: the average of a forward (last token given prefix) and a backward
//!   (first token given suffix) binomial log-likelihood ratio, in bits. It
//!   is never positive; more negative means stronger association.
//! * Dice: `c(gram) / (c(prefix) + c(suffix))`, bounded by 0.5.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::NGramIndex;

fn undefined(gram: &[impl AsRef<str>], reason: impl Into<String>) -> Error {
    Error::UndefinedScore {
        gram: gram.iter().map(|s| s.as_ref().to_string()).collect(),
        reason: reason.into(),
    }
}

fn check_order<S: AsRef<str>>(gram: &[S]) -> Result<()> {
    if (2..=5).contains(&gram.len()) {
        Ok(())
    } else {
        Err(Error::GramLength(gram.len()))
    }
}

struct Parts {
    joint: u64,
    prefix: u64,
    suffix: u64,
}

fn parts<S: AsRef<str>>(index: &NGramIndex, gram: &[S]) -> Result<Parts> {
    check_order(gram)?;
    let n = gram.len();
    Ok(Parts {
        joint: index.count(gram)?,
        prefix: index.count(&gram[..n - 1])?,
        suffix: index.count(&gram[1..])?,
    })
}

pub fn npmi<S: AsRef<str>>(index: &NGramIndex, gram: &[S]) -> Result<f64> {
    let p = parts(index, gram)?;
    if p.joint == 0 {
        return Err(undefined(gram, "n-gram not observed"));
    }
    if p.prefix == 0 || p.suffix == 0 {
        return Err(undefined(gram, "constituent not observed"));
    }
    let n = index.total_tokens() as f64;
    let joint = p.joint as f64 / n;
    let prefix = p.prefix as f64 / n;
    let suffix = p.suffix as f64 / n;
    Ok((joint * joint / (prefix * suffix)).log2())
}

/// One binomial cell: `k` successes out of `n` trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub k: u64,
    pub n: u64,
}

fn log2_binomial(k: u64, n: u64, p: f64) -> f64 {
    let hits = if k == 0 { 0.0 } else { k as f64 * p.log2() };
    let misses = if n == k { 0.0 } else { (n - k) as f64 * (1.0 - p).log2() };
    hits + misses
}

/// `log2(L(same rate) / L(separate rates))` for two binomial cells.
pub fn log_likelihood_ratio(a: Cell, b: Cell) -> Option<f64> {
    if a.n == 0 || b.n == 0 || a.k > a.n || b.k > b.n {
        return None;
    }
    let pooled = (a.k + b.k) as f64 / (a.n + b.n) as f64;
    let same = log2_binomial(a.k, a.n, pooled) + log2_binomial(b.k, b.n, pooled);
    let separate = log2_binomial(a.k, a.n, a.k as f64 / a.n as f64)
        + log2_binomial(b.k, b.n, b.k as f64 / b.n as f64);
    // the separate-rate MLE can never be less likely; clamp rounding noise
    Some((same - separate).min(0.0))
}

/// The forward and backward cell pairs of an n-gram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LlrCells {
    pub forward: (Cell, Cell),
    pub backward: (Cell, Cell),
}

pub fn llr_cells<S: AsRef<str>>(index: &NGramIndex, gram: &[S]) -> Result<LlrCells> {
    let p = parts(index, gram)?;
    if p.joint == 0 {
        return Err(undefined(gram, "n-gram not observed"));
    }
    let total = index.total_tokens();
    let last = index.count(&gram[gram.len() - 1..])?;
    let first = index.count(&gram[..1])?;
    let side = |cond: u64, target: u64| {
        (
            Cell { k: p.joint, n: cond },
            Cell {
                k: target.saturating_sub(p.joint),
                n: total.saturating_sub(cond),
            },
        )
    };
    Ok(LlrCells {
        forward: side(p.prefix, last),
        backward: side(p.suffix, first),
    })
}

pub fn bllr_directions<S: AsRef<str>>(index: &NGramIndex, gram: &[S]) -> Result<(f64, f64)> {
    let cells = llr_cells(index, gram)?;
    let fwd = log_likelihood_ratio(cells.forward.0, cells.forward.1)
        .ok_or_else(|| undefined(gram, format!("degenerate forward cells {:?}", cells.forward)))?;
    let bwd = log_likelihood_ratio(cells.backward.0, cells.backward.1)
        .ok_or_else(|| undefined(gram, format!("degenerate backward cells {:?}", cells.backward)))?;
    Ok((fwd, bwd))
}

pub fn bllr<S: AsRef<str>>(index: &NGramIndex, gram: &[S]) -> Result<f64> {
    let (fwd, bwd) = bllr_directions(index, gram)?;
    Ok((fwd + bwd) / 2.0)
}

pub fn dice<S: AsRef<str>>(index: &NGramIndex, gram: &[S]) -> Result<f64> {
    let p = parts(index, gram)?;
    let denom = p.prefix + p.suffix;
    if denom == 0 {
        return Err(undefined(gram, "constituents not observed"));
    }
    Ok(p.joint as f64 / denom as f64)
}

/// Raw measure values; `None` marks an undefined score.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RawScores {
    pub npmi: Option<f64>,
    pub bllr: Option<f64>,
    pub dice: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub undefined: Option<String>,
}

impl RawScores {
    pub fn complete(&self) -> Option<[f64; 3]> {
        Some([self.npmi?, self.bllr?, self.dice?])
    }
}

pub fn score_gram<S: AsRef<str>>(index: &NGramIndex, gram: &[S], dice_doubled: bool) -> RawScores {
    let mut reasons = Vec::new();
    let mut keep = |r: Result<f64>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            reasons.push(e.to_string());
            None
        }
    };
    let npmi = keep(npmi(index, gram));
    let bllr = keep(bllr(index, gram));
    let dice = keep(dice(index, gram)).map(|d| if dice_doubled { 2.0 * d } else { d });
    reasons.dedup();
    RawScores {
        npmi,
        bllr,
        dice,
        undefined: (!reasons.is_empty()).then(|| reasons.join("; ")),
    }
}
