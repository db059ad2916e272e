//! Gold-standard evaluation of learned ontologies: lexical and taxonomic
//! precision and recall, coverage recall and agreement angles.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::reason::{Taxonomy, BOT, TOP};

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("gold standard is empty; recall is undefined")]
    EmptyGold,
    #[error("learned and gold taxonomies share no concept names")]
    NoSharedNames,
    #[error("no sentences")]
    ZeroSentences,
    #[error("accepted plus tagging faults exceed the sentence count")]
    CountsExceedTotal,
    #[error("agreement angle of a zero vector")]
    ZeroVector,
    #[error("vectors differ in length")]
    LengthMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexicalMetrics {
    pub lp: f64,
    pub lr: f64,
    pub lf1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaxonomicMetrics {
    pub tp: f64,
    pub tr: f64,
    pub tf: f64,
    /// Harmonic mean of lexical precision and `tf`.
    pub tf_prime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub lexical: LexicalMetrics,
    pub taxonomic: TaxonomicMetrics,
}

impl EvalReport {
    /// Seven-feature accuracy vector: LR, LP, LF1, TP, TR, TF, TF'.
    pub fn features(&self) -> [f64; 7] {
        let (l, t) = (self.lexical, self.taxonomic);
        [l.lr, l.lp, l.lf1, t.tp, t.tr, t.tf, t.tf_prime]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coverage {
    pub cr_o: f64,
    pub cr_e: f64,
}

/// 0 when either side is 0.
pub fn harmonic_mean(a: f64, b: f64) -> f64 {
    if a + b == 0.0 {
        0.0
    } else {
        2.0 * a * b / (a + b)
    }
}

fn fold(names: &BTreeSet<String>) -> BTreeSet<String> {
    names.iter().map(|n| n.to_lowercase()).collect()
}

pub fn lexical_metrics(learned: &BTreeSet<String>, gold: &BTreeSet<String>) -> Result<LexicalMetrics, EvalError> {
    let (learned, gold) = (fold(learned), fold(gold));
    if gold.is_empty() {
        return Err(EvalError::EmptyGold);
    }
    let hits = learned.intersection(&gold).count() as f64;
    let lr = hits / gold.len() as f64;
    let lp = if learned.is_empty() { 0.0 } else { hits / learned.len() as f64 };
    Ok(LexicalMetrics { lp, lr, lf1: harmonic_mean(lp, lr) })
}

/// Concept names of a taxonomy, without `top` and `bot`.
pub fn taxonomy_names(t: &Taxonomy) -> BTreeSet<String> {
    t.nodes.iter().filter(|n| *n != TOP && *n != BOT).cloned().collect()
}

/// Case-folded semantic cotopy of every named concept: its subsumers and
/// subsumees, itself included.
fn cotopies(t: &Taxonomy) -> BTreeMap<String, BTreeSet<String>> {
    let closure = t.closure();
    let names = taxonomy_names(t);
    let mut sc: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for n in &names {
        let key = n.to_lowercase();
        for m in closure[n].iter().filter(|m| names.contains(*m)) {
            let m = m.to_lowercase();
            sc.entry(key.clone()).or_default().insert(m.clone());
            sc.entry(m).or_default().insert(key.clone());
        }
    }
    sc
}

/// Common-semantic-cotopy precision, recall and F against `gold`.
pub fn taxonomic_metrics(learned: &Taxonomy, gold: &Taxonomy) -> Result<TaxonomicMetrics, EvalError> {
    let (l, g) = (cotopies(learned), cotopies(gold));
    let shared: BTreeSet<&String> = l.keys().filter(|k| g.contains_key(*k)).collect();
    if shared.is_empty() {
        return Err(EvalError::NoSharedNames);
    }
    let csc =
        |sc: &BTreeSet<String>| -> BTreeSet<String> { sc.iter().filter(|x| shared.contains(x)).cloned().collect() };
    let (mut p, mut r) = (0.0, 0.0);
    for c in &shared {
        let (cl, cg) = (csc(&l[*c]), csc(&g[*c]));
        let common = cl.intersection(&cg).count() as f64;
        p += common / cl.len() as f64;
        r += common / cg.len() as f64;
    }
    let n = shared.len() as f64;
    let (tp, tr) = (p / n, r / n);
    let tf = harmonic_mean(tp, tr);
    let lp = lexical_metrics(&taxonomy_names(learned), &taxonomy_names(gold))?.lp;
    Ok(TaxonomicMetrics { tp, tr, tf, tf_prime: harmonic_mean(lp, tf) })
}

pub fn evaluate(learned: &Taxonomy, gold: &Taxonomy) -> Result<EvalReport, EvalError> {
    Ok(EvalReport {
        lexical: lexical_metrics(&taxonomy_names(learned), &taxonomy_names(gold))?,
        taxonomic: taxonomic_metrics(learned, gold)?,
    })
}

pub fn coverage_recall(n_sentences: usize, n_accept: usize, n_postag_faults: usize) -> Result<Coverage, EvalError> {
    if n_sentences == 0 {
        return Err(EvalError::ZeroSentences);
    }
    if n_accept + n_postag_faults > n_sentences {
        return Err(EvalError::CountsExceedTotal);
    }
    let n = n_sentences as f64;
    Ok(Coverage { cr_o: n_accept as f64 / n, cr_e: (n_accept + n_postag_faults) as f64 / n })
}

/// Angle between two vectors in degrees, clamped to [0, 90].
pub fn agreement_angle(a: &[f64], b: &[f64]) -> Result<f64, EvalError> {
    if a.len() != b.len() || a.is_empty() {
        return Err(EvalError::LengthMismatch);
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    if a.iter().all(|x| *x == 0.0) || b.iter().all(|x| *x == 0.0) {
        return Err(EvalError::ZeroVector);
    }
    // |a||b| sin, by the Lagrange identity; exactly 0 for parallel inputs
    let mut cross = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            cross += (a[i] * b[j] - a[j] * b[i]).powi(2);
        }
    }
    Ok(cross.sqrt().atan2(dot).to_degrees().clamp(0.0, 90.0))
}

/// Mean and population standard deviation.
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// One row per gold standard plus mean and SD rows; columns follow the
/// feature order of [`EvalReport::features`].
pub fn report_tsv(rows: &[(String, EvalReport)]) -> String {
    let mut out = String::from("gold\tLR\tLP\tLF1\tTP\tTR\tTF\tTF'\n");
    let fmt_row = |name: &str, v: &[f64]| {
        let cells: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
        format!("{name}\t{}\n", cells.join("\t"))
    };
    for (name, r) in rows {
        out.push_str(&fmt_row(name, &r.features()));
    }
    if rows.len() > 1 {
        let cols: Vec<Vec<f64>> = (0..7).map(|i| rows.iter().map(|(_, r)| r.features()[i]).collect()).collect();
        let stats: Vec<(f64, f64)> = cols.iter().map(|c| mean_sd(c)).collect();
        out.push_str(&fmt_row("mean", &stats.iter().map(|s| s.0).collect::<Vec<_>>()));
        out.push_str(&fmt_row("sd", &stats.iter().map(|s| s.1).collect::<Vec<_>>()));
    }
    out
}
