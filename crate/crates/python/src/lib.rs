use std::collections::BTreeSet;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::isa2dl::characterize::{self as ch, decompose};
use ::isa2dl::dl::{self, parse_concept, KnowledgeBase};
use ::isa2dl::evaluate as ev;
use ::isa2dl::lexicon::{HypernymLexicon, VariationTables};
use ::isa2dl::pipeline::{self as pl, InputMode, Lexicons};
use ::isa2dl::preprocess::{fallback_tag, ingest_tagged, normalize_tokens, segment, Tag, TokenSeq};
use ::isa2dl::reason::{self, Budget};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn lexicons(hypernyms: Option<&str>) -> PyResult<Lexicons> {
    let hypernyms = match hypernyms {
        Some(text) => HypernymLexicon::parse("hypernyms", text).map_err(value_err)?,
        None => HypernymLexicon::new(),
    };
    hypernyms.validate().map_err(value_err)?;
    Ok(Lexicons { tables: VariationTables::seed(), hypernyms })
}

fn tokens(tagged: &str, tables: &VariationTables) -> PyResult<TokenSeq> {
    Ok(normalize_tokens(&ingest_tagged(tagged).map_err(value_err)?, tables))
}

/// Splits raw text into sentences and tags each as a `surface/TAG` line.
#[pyfunction]
#[pyo3(signature = (text, hypernyms=None))]
fn tag(text: &str, hypernyms: Option<&str>) -> PyResult<Vec<String>> {
    let lex = lexicons(hypernyms)?;
    Ok(segment(text).iter().map(|s| fallback_tag(s, &lex.tables, &lex.hypernyms).render()).collect())
}

/// Shape name and the number of simple clauses of a tagged sentence.
/// Raises ValueError with the rejection code.
#[pyfunction]
fn characterize(tagged: &str) -> PyResult<(String, usize)> {
    let seq = tokens(tagged, &VariationTables::seed())?;
    let form = ch::characterize(&seq).map_err(|r| PyValueError::new_err(r.reason.code()))?;
    Ok((form.shape_name().to_string(), decompose(&form).len()))
}

/// Rule code and canonical lines for every clause of a tagged sentence.
#[pyfunction]
#[pyo3(signature = (tagged, hypernyms=None))]
fn transform(tagged: &str, hypernyms: Option<&str>) -> PyResult<Vec<(String, String)>> {
    let lex = lexicons(hypernyms)?;
    let seq = tokens(tagged, &lex.tables)?;
    let form = ch::characterize(&seq).map_err(|r| PyValueError::new_err(r.reason.code()))?;
    decompose(&form)
        .iter()
        .map(|f| {
            let out = ::isa2dl::transform::transform(f, &lex.hypernyms).map_err(value_err)?;
            Ok((out.rule_id.code().to_string(), out.render()))
        })
        .collect()
}

#[pyfunction]
fn validate_core_pair(subject: &str, object: &str) -> PyResult<bool> {
    let s: Tag = subject.parse().map_err(value_err)?;
    let o: Tag = object.parse().map_err(value_err)?;
    ch::validate_core_pair(s, o).map_err(value_err)
}

/// (CR_O, CR_E)
#[pyfunction]
fn coverage_recall(n_sentences: usize, n_accept: usize, n_postag_faults: usize) -> PyResult<(f64, f64)> {
    let c = ev::coverage_recall(n_sentences, n_accept, n_postag_faults).map_err(value_err)?;
    Ok((c.cr_o, c.cr_e))
}

/// (LP, LR, LF1)
#[pyfunction]
fn lexical_metrics(learned: BTreeSet<String>, gold: BTreeSet<String>) -> PyResult<(f64, f64, f64)> {
    let m = ev::lexical_metrics(&learned, &gold).map_err(value_err)?;
    Ok((m.lp, m.lr, m.lf1))
}

#[pyfunction]
fn agreement_angle(a: Vec<f64>, b: Vec<f64>) -> PyResult<f64> {
    ev::agreement_angle(&a, &b).map_err(value_err)
}

#[pyfunction]
fn make_label(parts: Vec<String>) -> PyResult<String> {
    dl::make_label(&parts).map_err(value_err)
}

/// Negation normal form of an s-expression concept.
#[pyfunction]
fn nnf(concept: &str) -> PyResult<String> {
    Ok(parse_concept(concept).map_err(value_err)?.nnf().to_string())
}

fn reason_err(e: reason::ReasonError) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Satisfiability of `concept` against a serialized knowledge base.
#[pyfunction]
#[pyo3(signature = (concept, kb=""))]
fn is_satisfiable(concept: &str, kb: &str) -> PyResult<bool> {
    let kb = KnowledgeBase::parse(kb).map_err(value_err)?;
    reason::is_satisfiable(&kb, &parse_concept(concept).map_err(value_err)?).map_err(reason_err)
}

#[pyfunction]
#[pyo3(signature = (sub, sup, kb=""))]
fn subsumes(sub: &str, sup: &str, kb: &str) -> PyResult<bool> {
    let kb = KnowledgeBase::parse(kb).map_err(value_err)?;
    let (c, d) = (parse_concept(sub).map_err(value_err)?, parse_concept(sup).map_err(value_err)?);
    reason::subsumes(&kb, &c, &d).map_err(reason_err)
}

/// Incremental compiler; `finish` classifies and returns the results.
#[pyclass(name = "Pipeline", unsendable)]
struct PyPipeline {
    inner: Option<pl::Pipeline>,
    documents: usize,
}

#[pymethods]
impl PyPipeline {
    #[new]
    #[pyo3(signature = (hypernyms=None, revision=true, budget_nodes=100_000, budget_ms=5_000))]
    fn new(hypernyms: Option<&str>, revision: bool, budget_nodes: usize, budget_ms: u64) -> PyResult<Self> {
        let budget = Budget { max_nodes: budget_nodes, max_time: std::time::Duration::from_millis(budget_ms) };
        Ok(PyPipeline { inner: Some(pl::Pipeline::new(lexicons(hypernyms)?, revision, budget)), documents: 0 })
    }

    /// Adds one document; returns (status, detail) for each sentence.
    #[pyo3(signature = (text, tagged=true))]
    fn add(&mut self, text: &str, tagged: bool) -> PyResult<Vec<(String, String)>> {
        let p = self.inner.as_mut().ok_or_else(|| PyRuntimeError::new_err("pipeline already finished"))?;
        let before = p.sentences().len();
        self.documents += 1;
        p.add_document(self.documents, text, if tagged { InputMode::Tagged } else { InputMode::Raw });
        Ok(p.sentences()[before..]
            .iter()
            .map(|s| {
                let code = s.outcome.code();
                let (status, detail) = code.split_once('\t').unwrap_or((&code, ""));
                (status.to_string(), detail.to_string())
            })
            .collect())
    }

    /// The current knowledge base, serialized.
    fn kb(&self) -> PyResult<String> {
        let p = self.inner.as_ref().ok_or_else(|| PyRuntimeError::new_err("pipeline already finished"))?;
        Ok(p.kb().serialize())
    }

    /// Dict with `kb`, `taxonomy`, `report`, `consistent`, `coverage` and
    /// `exit_code`.
    fn finish<'py>(&mut self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let p = self.inner.take().ok_or_else(|| PyRuntimeError::new_err("pipeline already finished"))?;
        let r = p.finish();
        let d = PyDict::new(py);
        d.set_item("kb", r.kb.serialize())?;
        d.set_item("taxonomy", r.taxonomy.serialize())?;
        d.set_item("report", r.report_tsv())?;
        d.set_item("consistent", r.consistency.kb_consistent)?;
        d.set_item("coverage", r.report.coverage().map(|c| (c.cr_o, c.cr_e)))?;
        d.set_item("exit_code", r.exit_code())?;
        Ok(d)
    }
}

#[pymodule]
#[pyo3(name = "isa2dl")]
fn isa2dl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(tag, m)?)?;
    m.add_function(wrap_pyfunction!(characterize, m)?)?;
    m.add_function(wrap_pyfunction!(transform, m)?)?;
    m.add_function(wrap_pyfunction!(validate_core_pair, m)?)?;
    m.add_function(wrap_pyfunction!(coverage_recall, m)?)?;
    m.add_function(wrap_pyfunction!(lexical_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(agreement_angle, m)?)?;
    m.add_function(wrap_pyfunction!(make_label, m)?)?;
    m.add_function(wrap_pyfunction!(nnf, m)?)?;
    m.add_function(wrap_pyfunction!(is_satisfiable, m)?)?;
    m.add_function(wrap_pyfunction!(subsumes, m)?)?;
    m.add_class::<PyPipeline>()?;
    Ok(())
}
