//! End-to-end orchestration: lexicons, preprocessing, characterization,
//! transformation, revision, classification and artifact output.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::characterize::{characterize, decompose, RejectReason};
use crate::dl::KnowledgeBase;
use crate::evaluate::{coverage_recall, evaluate, report_tsv, Coverage, EvalError};
use crate::lexicon::{HypernymLexicon, LexiconError, VariationTables, SEED_MARKERS, SEED_QUANTIFIERS};
use crate::preprocess::{fallback_tag, ingest_tagged, normalize_tokens, segment, SourceId, TokenSeq};
use crate::reason::{Budget, ConsistencyReport, Reasoner, Taxonomy};
use crate::revise::{integrate, RevisionResult};
use crate::transform::{transform, RuleId, RuleOutput};

pub const LEXICON_DIR_ENV: &str = "ISA2DL_LEXICON_DIR";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("{path}: {msg}")]
    Gold { path: PathBuf, msg: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn read(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputMode {
    /// Plain text, segmented and tagged with the built-in heuristic tagger.
    Raw,
    /// One `surface/TAG …` sentence per line.
    #[default]
    Tagged,
}

#[derive(Debug, Clone)]
pub struct Lexicons {
    pub tables: VariationTables,
    pub hypernyms: HypernymLexicon,
}

impl Lexicons {
    /// Seed variation tables and an empty hypernym lexicon.
    pub fn seed() -> Self {
        Lexicons { tables: VariationTables::seed(), hypernyms: HypernymLexicon::new() }
    }

    /// Explicit paths win; otherwise files named `markers.tsv`,
    /// `quantifiers.tsv` and `hypernyms.tsv` in `dir` are used when present;
    /// otherwise the seed tables.
    pub fn load(
        markers: Option<&Path>,
        quantifiers: Option<&Path>,
        hypernyms: &[PathBuf],
        dir: Option<&Path>,
    ) -> Result<Self, PipelineError> {
        let pick = |explicit: Option<&Path>, name: &str| -> Option<PathBuf> {
            explicit.map(Path::to_path_buf).or_else(|| dir.map(|d| d.join(name)).filter(|p| p.is_file()))
        };
        let mut tables = VariationTables::empty();
        match pick(markers, "markers.tsv") {
            Some(p) => tables.load_markers(&p.display().to_string(), &read(&p)?)?,
            None => tables.load_markers("markers.tsv", SEED_MARKERS)?,
        };
        match pick(quantifiers, "quantifiers.tsv") {
            Some(p) => tables.load_quantifiers(&p.display().to_string(), &read(&p)?)?,
            None => tables.load_quantifiers("quantifiers.tsv", SEED_QUANTIFIERS)?,
        };
        let mut paths = hypernyms.to_vec();
        if paths.is_empty() {
            paths.extend(pick(None, "hypernyms.tsv"));
        }
        let mut lex = HypernymLexicon::new();
        for p in &paths {
            lex.extend_from_tsv(&p.display().to_string(), &read(p)?)?;
        }
        lex.validate()?;
        Ok(Lexicons { tables, hypernyms: lex })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Accepted(Vec<RuleId>),
    Rejected(RejectReason),
    /// Characterized, but no transformation rule applies.
    Unmapped(String),
    /// Transformed, but revision could not integrate it.
    Quarantined(String),
}

impl Outcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Outcome::Accepted(_) | Outcome::Quarantined(_))
    }

    pub fn code(&self) -> String {
        match self {
            Outcome::Accepted(rules) => {
                let codes: Vec<&str> = rules.iter().map(|r| r.code()).collect();
                format!("accept\t{}", codes.join(","))
            }
            Outcome::Rejected(r) => format!("reject\t{r}"),
            Outcome::Unmapped(why) => format!("unmapped\t{why}"),
            Outcome::Quarantined(why) => format!("quarantined\t{why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRecord {
    pub id: SourceId,
    pub text: String,
    pub shape: Option<&'static str>,
    pub outcome: Outcome,
    /// Fired revision rules, added and removed line counts.
    pub revision: Option<(String, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub sentences: Vec<SentenceRecord>,
}

impl RunReport {
    pub fn n_sentences(&self) -> usize {
        self.sentences.len()
    }

    pub fn n_accept(&self) -> usize {
        self.sentences.iter().filter(|s| s.outcome.is_accepted()).count()
    }

    pub fn n_postag_faults(&self) -> usize {
        self.sentences.iter().filter(|s| s.outcome == Outcome::Rejected(RejectReason::TaggingFault)).count()
    }

    pub fn n_quarantined(&self) -> usize {
        self.sentences.iter().filter(|s| matches!(s.outcome, Outcome::Quarantined(_))).count()
    }

    pub fn coverage(&self) -> Option<Coverage> {
        coverage_recall(self.n_sentences(), self.n_accept(), self.n_postag_faults()).ok()
    }
}

/// Sequential knowledge-base builder.
pub struct Pipeline {
    lex: Lexicons,
    revision: bool,
    budget: Budget,
    kb: KnowledgeBase,
    sentences: Vec<SentenceRecord>,
    resource_limited: bool,
}

impl Pipeline {
    pub fn new(lex: Lexicons, revision: bool, budget: Budget) -> Self {
        Pipeline { lex, revision, budget, kb: KnowledgeBase::new(), sentences: Vec::new(), resource_limited: false }
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn lexicons(&self) -> &Lexicons {
        &self.lex
    }

    /// Records of every sentence seen so far.
    pub fn sentences(&self) -> &[SentenceRecord] {
        &self.sentences
    }

    /// Processes a whole document. Tagged documents hold one sentence per
    /// line; blank lines and lines starting with `#` are skipped.
    pub fn add_document(&mut self, document: usize, text: &str, mode: InputMode) {
        let sentences: Vec<String> = match mode {
            InputMode::Tagged => {
                text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect()
            }
            InputMode::Raw => segment(text),
        };
        for (i, s) in sentences.iter().enumerate() {
            self.add_sentence(SourceId { document, sentence: i + 1 }, s, mode);
        }
    }

    pub fn add_sentence(&mut self, id: SourceId, text: &str, mode: InputMode) -> &SentenceRecord {
        let mut rec = SentenceRecord {
            id,
            text: text.to_string(),
            shape: None,
            outcome: Outcome::Accepted(vec![]),
            revision: None,
        };
        match self.tokens(text, mode) {
            Err(reason) => rec.outcome = Outcome::Rejected(reason),
            Ok(seq) => self.process(seq.with_source(id), &mut rec),
        }
        self.sentences.push(rec);
        self.sentences.last().expect("just pushed")
    }

    fn tokens(&self, text: &str, mode: InputMode) -> Result<TokenSeq, RejectReason> {
        let seq = match mode {
            InputMode::Tagged => ingest_tagged(text).map_err(|_| RejectReason::TaggingFault)?,
            InputMode::Raw => fallback_tag(text, &self.lex.tables, &self.lex.hypernyms),
        };
        Ok(normalize_tokens(&seq, &self.lex.tables))
    }

    fn process(&mut self, seq: TokenSeq, rec: &mut SentenceRecord) {
        let form = match characterize(&seq) {
            Ok(f) => f,
            Err(r) => {
                rec.outcome = Outcome::Rejected(r.reason);
                return;
            }
        };
        rec.shape = Some(form.shape_name());
        let mut outs: Vec<RuleOutput> = Vec::new();
        for simple in decompose(&form) {
            match transform(&simple, &self.lex.hypernyms) {
                Ok(mut out) => {
                    out.sentence_id = seq.source_id;
                    outs.push(out);
                }
                Err(e) => {
                    rec.outcome = Outcome::Unmapped(e.to_string());
                    return;
                }
            }
        }
        let rules = outs.iter().map(|o| o.rule_id).collect();
        if !self.revision {
            for out in &outs {
                self.kb.tbox.extend(out.tbox_additions.iter().cloned());
                self.kb.abox.extend(out.abox_additions.iter().cloned());
                self.kb.obligations.extend(out.obligations.iter().cloned());
                self.kb.memberships.extend(out.membership.clone());
            }
            rec.outcome = Outcome::Accepted(rules);
            return;
        }
        let mut kb = self.kb.clone();
        let mut fired: Vec<String> = Vec::new();
        let (mut added, mut removed) = (0, 0);
        for out in &outs {
            match integrate(&kb, out, &self.lex.hypernyms, self.budget) {
                Ok(RevisionResult { kb_after, fired: f, removed: r, added: a, resource_limited }) => {
                    kb = kb_after;
                    fired.extend(f.iter().map(|x| x.rule.code().to_string()));
                    added += a.len();
                    removed += r.len();
                    self.resource_limited |= resource_limited;
                }
                Err(e) => {
                    rec.outcome = Outcome::Quarantined(e.to_string());
                    return;
                }
            }
        }
        fired.sort();
        fired.dedup();
        let fired = if fired.is_empty() { "none".to_string() } else { fired.join(",") };
        self.kb = kb;
        rec.revision = Some((fired, added, removed));
        rec.outcome = Outcome::Accepted(rules);
    }

    /// Classifies the knowledge base and checks its consistency.
    pub fn finish(self) -> RunResult {
        let mut reasoner = Reasoner::new(&self.kb, self.budget);
        let consistency = reasoner.check_consistency();
        let taxonomy = reasoner.classify();
        let resource_limited = self.resource_limited || consistency.resource_limited || !taxonomy.unresolved.is_empty();
        RunResult {
            kb: self.kb,
            taxonomy,
            consistency,
            report: RunReport { sentences: self.sentences },
            resource_limited,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub kb: KnowledgeBase,
    pub taxonomy: Taxonomy,
    pub consistency: ConsistencyReport,
    pub report: RunReport,
    pub resource_limited: bool,
}

impl RunResult {
    /// 0 success, 2 inconsistent or quarantined input, 3 budget exhausted.
    pub fn exit_code(&self) -> i32 {
        if self.resource_limited {
            3
        } else if !self.consistency.kb_consistent || self.report.n_quarantined() > 0 {
            2
        } else {
            0
        }
    }

    pub fn report_tsv(&self) -> String {
        let mut out = String::from("sentence\toutcome\tdetail\n");
        for s in &self.report.sentences {
            let _ = writeln!(out, "{}\t{}", s.id, s.outcome.code());
        }
        let r = &self.report;
        let _ = writeln!(out, "# sentences\t{}", r.n_sentences());
        let _ = writeln!(out, "# accept\t{}", r.n_accept());
        let _ = writeln!(out, "# reject\t{}", r.n_sentences() - r.n_accept());
        let _ = writeln!(out, "# postag_faults\t{}", r.n_postag_faults());
        let _ = writeln!(out, "# quarantined\t{}", r.n_quarantined());
        if let Some(c) = r.coverage() {
            let _ = writeln!(out, "# cr_o\t{:.4}", c.cr_o);
            let _ = writeln!(out, "# cr_e\t{:.4}", c.cr_e);
        }
        let c = &self.consistency;
        let _ = writeln!(out, "# kb_consistent\t{}", c.kb_consistent);
        for n in &c.unsatisfiable_names {
            let _ = writeln!(out, "# unsatisfiable\t{n}");
        }
        for n in &c.inconsistent_individuals {
            let _ = writeln!(out, "# inconsistent_individual\t{n}");
        }
        for n in &c.failed_obligations {
            let _ = writeln!(out, "# failed_obligation\t{n}");
        }
        out
    }

    pub fn trace_tsv(&self) -> String {
        let mut out = String::from("sentence\tshape\ttext\n");
        for s in &self.report.sentences {
            let _ = writeln!(out, "{}\t{}\t{}", s.id, s.shape.unwrap_or("-"), s.text);
        }
        out
    }

    pub fn revision_tsv(&self) -> String {
        let mut out = String::from("sentence\trule\tadded\tremoved\n");
        for s in &self.report.sentences {
            if let Some((rule, added, removed)) = &s.revision {
                let _ = writeln!(out, "{}\t{rule}\t{added}\t{removed}", s.id);
            }
        }
        out
    }

    /// Writes `kb.dl`, `taxonomy.txt` and `report.tsv`, plus `trace.tsv`
    /// and `revision.tsv` when `trace` is set.
    pub fn write(&self, dir: &Path, trace: bool) -> Result<(), PipelineError> {
        let io = |path: PathBuf| move |source| PipelineError::Io { path, source };
        fs::create_dir_all(dir).map_err(io(dir.to_path_buf()))?;
        let mut files = vec![
            ("kb.dl", self.kb.serialize()),
            ("taxonomy.txt", self.taxonomy.serialize()),
            ("report.tsv", self.report_tsv()),
        ];
        if trace {
            files.push(("trace.tsv", self.trace_tsv()));
            files.push(("revision.tsv", self.revision_tsv()));
        }
        for (name, text) in files {
            let p = dir.join(name);
            fs::write(&p, text).map_err(io(p.clone()))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub mode: InputMode,
    pub markers: Option<PathBuf>,
    pub quantifiers: Option<PathBuf>,
    pub hypernyms: Vec<PathBuf>,
    pub lexicon_dir: Option<PathBuf>,
    pub revision: bool,
    pub budget: Budget,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            mode: InputMode::Tagged,
            markers: None,
            quantifiers: None,
            hypernyms: Vec::new(),
            lexicon_dir: None,
            revision: true,
            budget: Budget::default(),
        }
    }
}

/// Runs every input, in order, through one pipeline.
pub fn run_pipeline(config: &RunConfig) -> Result<RunResult, PipelineError> {
    let lex = Lexicons::load(
        config.markers.as_deref(),
        config.quantifiers.as_deref(),
        &config.hypernyms,
        config.lexicon_dir.as_deref(),
    )?;
    let mut p = Pipeline::new(lex, config.revision, config.budget);
    for (i, path) in config.inputs.iter().enumerate() {
        p.add_document(i + 1, &read(path)?, config.mode);
    }
    Ok(p.finish())
}

pub fn load_taxonomy(path: &Path) -> Result<Taxonomy, PipelineError> {
    Taxonomy::parse(&read(path)?).map_err(|msg| PipelineError::Gold { path: path.to_path_buf(), msg })
}

/// Metric rows of `learned` against each gold taxonomy, with mean and SD
/// rows when there is more than one.
pub fn evaluate_against(learned: &Taxonomy, golds: &[PathBuf]) -> Result<String, PipelineError> {
    let mut rows = Vec::new();
    for g in golds {
        let gold = load_taxonomy(g)?;
        let name = g.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        rows.push((name, evaluate(learned, &gold)?));
    }
    Ok(report_tsv(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicons {
        Lexicons {
            tables: VariationTables::seed(),
            hypernyms: HypernymLexicon::from_pairs([("John", "Person")], [("Cardiologist", "Doctor")]).unwrap(),
        }
    }

    #[test]
    fn empty_input() {
        let r = Pipeline::new(lex(), true, Budget::default()).finish();
        assert_eq!(r.taxonomy.serialize(), "NODE bot\nNODE top\nEDGE bot top\n");
        assert_eq!(r.report.n_sentences(), 0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn garbage_is_rejected_and_processing_continues() {
        let mut p = Pipeline::new(lex(), true, Budget::default());
        p.add_document(1, "Colorless green ideas sleep furiously. Cat is an animal.", InputMode::Raw);
        let r = p.finish();
        assert_eq!(r.report.n_sentences(), 2);
        assert!(matches!(r.report.sentences[0].outcome, Outcome::Rejected(_)));
        assert!(r.report.sentences[1].outcome.is_accepted());
        assert!(r.kb.serialize().contains("SUB Cat Animal"));
    }

    #[test]
    fn penguin_triad_with_and_without_revision() {
        let text = "Bird/NN is/VBZ a/DT flying/JJ animal/NN\nPenguin/NN is/VBZ a/DT bird/NN\nPenguin/NN is/VBZ not/RB a/DT flying/JJ animal/NN\n";
        let mut p = Pipeline::new(lex(), true, Budget::default());
        p.add_document(1, text, InputMode::Tagged);
        let r = p.finish();
        assert!(r.consistency.kb_consistent);
        assert_eq!(r.exit_code(), 0);
        assert!(r.revision_tsv().contains("1:3\tNM1"));
        assert!(r.taxonomy.nodes.contains("NotFlyingAnimalPenguin"));

        let mut p = Pipeline::new(lex(), false, Budget::default());
        p.add_document(1, text, InputMode::Tagged);
        let r = p.finish();
        assert!(!r.consistency.kb_consistent);
        assert_eq!(r.exit_code(), 2);
    }
}
