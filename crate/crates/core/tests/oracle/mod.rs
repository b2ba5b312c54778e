//! Brute-force reference implementation used by the acceptance suite.
//!
//! Shares no code with the engine: its own line parser, window counting
//! over plain vectors, natural-log formulas converted to bits, and its own
//! fusion arithmetic.

use std::collections::{BTreeMap, HashMap};

pub type Gram = Vec<String>;

pub struct Oracle {
    pub sentences: Vec<Vec<String>>,
    pub counts: HashMap<Gram, u64>,
    pub total: u64,
}

impl Oracle {
    /// Surfaces only; tags after the last underscore are dropped.
    pub fn new(text: &str) -> Self {
        let sentences: Vec<Vec<String>> = text
            .lines()
            .map(|l| {
                l.split_whitespace()
                    .map(|t| match t.rfind('_') {
                        Some(i) if i > 0 => t[..i].to_string(),
                        _ => t.to_string(),
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|s| !s.is_empty())
            .collect();
        let mut counts = HashMap::new();
        let mut total = 0;
        for s in &sentences {
            total += s.len() as u64;
            for n in 1..=5 {
                if s.len() < n {
                    break;
                }
                for i in 0..=s.len() - n {
                    *counts.entry(s[i..i + n].to_vec()).or_insert(0) += 1;
                }
            }
        }
        Oracle {
            sentences,
            counts,
            total,
        }
    }

    pub fn count(&self, g: &[String]) -> u64 {
        self.counts.get(g).copied().unwrap_or(0)
    }

    pub fn grams(&self, n: usize) -> Vec<Gram> {
        let mut v: Vec<Gram> = self.counts.keys().filter(|g| g.len() == n).cloned().collect();
        v.sort();
        v
    }

    fn ln_p(&self, g: &[String]) -> f64 {
        (self.count(g) as f64).ln() - (self.total as f64).ln()
    }

    pub fn npmi(&self, g: &[String]) -> Option<f64> {
        let n = g.len();
        if self.count(g) == 0 || self.count(&g[..n - 1]) == 0 || self.count(&g[1..]) == 0 {
            return None;
        }
        Some((2.0 * self.ln_p(g) - self.ln_p(&g[..n - 1]) - self.ln_p(&g[1..])) / std::f64::consts::LN_2)
    }

    pub fn dice(&self, g: &[String]) -> Option<f64> {
        let n = g.len();
        let d = self.count(&g[..n - 1]) + self.count(&g[1..]);
        (d > 0).then(|| self.count(g) as f64 / d as f64)
    }

    /// Forward and backward binomial cells as `((k1, n1), (k2, n2))`.
    pub fn cells(&self, g: &[String]) -> [((u64, u64), (u64, u64)); 2] {
        let n = g.len();
        let joint = self.count(g);
        let prefix = self.count(&g[..n - 1]);
        let suffix = self.count(&g[1..]);
        let last = self.count(&g[n - 1..]);
        let first = self.count(&g[..1]);
        let side = |cond: u64, target: u64| ((joint, cond), (target.saturating_sub(joint), self.total - cond));
        [side(prefix, last), side(suffix, first)]
    }

    pub fn bllr(&self, g: &[String]) -> Option<f64> {
        if self.count(g) == 0 {
            return None;
        }
        let [f, b] = self.cells(g);
        Some((llr(f.0, f.1)? + llr(b.0, b.1)?) / 2.0)
    }
}

/// `ln L(k; n, p)` with the convention `0 * ln 0 = 0`.
fn ln_binom(k: u64, n: u64, p: f64) -> f64 {
    let (k, n) = (k as f64, n as f64);
    let a = if k > 0.0 { k * p.ln() } else { 0.0 };
    let b = if n - k > 0.0 { (n - k) * (1.0 - p).ln() } else { 0.0 };
    a + b
}

pub fn llr((k1, n1): (u64, u64), (k2, n2): (u64, u64)) -> Option<f64> {
    if n1 == 0 || n2 == 0 || k1 > n1 || k2 > n2 {
        return None;
    }
    let p = (k1 + k2) as f64 / (n1 + n2) as f64;
    let p1 = k1 as f64 / n1 as f64;
    let p2 = k2 as f64 / n2 as f64;
    let v = ln_binom(k1, n1, p) + ln_binom(k2, n2, p) - ln_binom(k1, n1, p1) - ln_binom(k2, n2, p2);
    Some(v / std::f64::consts::LN_2)
}

#[derive(Debug, Clone)]
pub struct Fused {
    pub gram: Gram,
    pub combined: f64,
}

/// Fusion reference: per order, affine NPMI, negated BLLR over its max,
/// Dice over its max; sum times weight. Sorted as the engine documents.
pub fn fuse(items: &[(Gram, [f64; 3], f64, u64)]) -> Vec<Fused> {
    let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, it) in items.iter().enumerate() {
        by_order.entry(it.0.len()).or_default().push(i);
    }
    let mut out = Vec::new();
    for idxs in by_order.values() {
        let col = |j: usize| idxs.iter().map(move |&i| items[i].1[j]);
        let lo = col(0).fold(f64::INFINITY, f64::min);
        let hi = col(0).fold(f64::NEG_INFINITY, f64::max);
        let bmax = col(1).map(|b| -b).fold(f64::NEG_INFINITY, f64::max);
        let dmax = col(2).fold(f64::NEG_INFINITY, f64::max);
        let mut group: Vec<(Fused, u64)> = idxs
            .iter()
            .map(|&i| {
                let (g, s, w, c) = &items[i];
                let a = if hi > lo { (s[0] - lo) / (hi - lo) } else { 1.0 };
                let b = if bmax > 0.0 { -s[1] / bmax } else { 1.0 };
                let d = if dmax > 0.0 { s[2] / dmax } else { 1.0 };
                (
                    Fused {
                        gram: g.clone(),
                        combined: (a + b + d) * w,
                    },
                    *c,
                )
            })
            .collect();
        group.sort_by(|(x, cx), (y, cy)| {
            y.combined
                .total_cmp(&x.combined)
                .then(cy.cmp(cx))
                .then(x.gram.cmp(&y.gram))
        });
        out.extend(group.into_iter().map(|(f, _)| f));
    }
    out
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

pub fn gram(s: &str) -> Gram {
    s.split(' ').map(str::to_string).collect()
}
