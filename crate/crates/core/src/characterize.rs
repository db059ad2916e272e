//! Recognizes IS-A sentence structure and splits complex and compound
//! sentences into simple forms.

use std::fmt;

use thiserror::Error;

use crate::lexicon::{CanonicalQuantifier, IsaMarker, MarkerCategory, QuantKind};
use crate::preprocess::{SourceId, Tag, Token, TokenSeq};

/// A content word: lemma plus one of the five core tags.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub lemma: String,
    pub tag: Tag,
}

impl Term {
    pub fn new(lemma: &str, tag: Tag) -> Self {
        Term { lemma: lemma.to_string(), tag }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.lemma, self.tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Conj,
    Disj,
}

/// A modified head noun phrase, `[M]*[X]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phrase {
    pub mods: Vec<Term>,
    pub head: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhraseList {
    pub items: Vec<Phrase>,
    pub connective: Connective,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermList {
    pub items: Vec<Term>,
    pub connective: Connective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Negation {
    #[default]
    None,
    NoSubject,
    NotObject,
    /// Double or mixed negation; kept so the transform can report it.
    Malformed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleForm {
    pub q1: CanonicalQuantifier,
    pub subject_mods: Vec<Term>,
    pub subject: Term,
    pub marker: IsaMarker,
    pub q2: CanonicalQuantifier,
    pub object_mods: Vec<Term>,
    pub object: Term,
    pub negation: Negation,
    pub such_as_list: Option<TermList>,
    pub subject_list: Option<PhraseList>,
    pub object_list: Option<PhraseList>,
    /// Adverb attached to the marker ("Eventually sun is a black hole").
    pub qualifier: Option<Term>,
}

impl SimpleForm {
    /// A bare `S IS-A O` form, mostly for tests and bindings.
    pub fn basic(subject: Term, marker: IsaMarker, object: Term) -> Self {
        SimpleForm {
            q1: CanonicalQuantifier::NONE,
            subject_mods: Vec::new(),
            subject,
            marker,
            q2: CanonicalQuantifier::NONE,
            object_mods: Vec::new(),
            object,
            negation: Negation::None,
            such_as_list: None,
            subject_list: None,
            object_list: None,
            qualifier: None,
        }
    }

    pub fn subject_phrase(&self) -> Phrase {
        Phrase { mods: self.subject_mods.clone(), head: self.subject.clone() }
    }

    pub fn object_phrase(&self) -> Phrase {
        Phrase { mods: self.object_mods.clone(), head: self.object.clone() }
    }

    pub fn subject_phrases(&self) -> Vec<Phrase> {
        self.subject_list.as_ref().map(|l| l.items.clone()).unwrap_or_else(|| vec![self.subject_phrase()])
    }

    pub fn object_phrases(&self) -> Vec<Phrase> {
        self.object_list.as_ref().map(|l| l.items.clone()).unwrap_or_else(|| vec![self.object_phrase()])
    }

    fn set_subject(&mut self, p: Phrase) {
        self.subject_mods = p.mods;
        self.subject = p.head;
    }

    fn set_object(&mut self, p: Phrase) {
        self.object_mods = p.mods;
        self.object = p.head;
    }

    /// Every subject/object head combination passes the dependency table.
    pub fn core_pairs_valid(&self) -> bool {
        self.subject_phrases()
            .iter()
            .all(|s| self.object_phrases().iter().all(|o| validate_core_pair(s.head.tag, o.head.tag).unwrap_or(false)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexShape {
    /// Two markers and no clausal token; read like form 2.
    Form1,
    /// `[S][ISA][O1][that][ISA][O2]`
    Form2,
    /// `[S][that][ISA][O1][ISA][O2]`, also `but`/`yet` coordination.
    Form3,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SentenceForm {
    Simple(SimpleForm),
    Compound(SimpleForm),
    IsNot(SimpleForm),
    /// `first` is the clause headed by the sentence subject; `second` is the
    /// other clause, already rewritten with its own subject.
    Complex {
        shape: ComplexShape,
        first: SimpleForm,
        second: SimpleForm,
    },
}

impl SentenceForm {
    pub fn shape_name(&self) -> &'static str {
        match self {
            SentenceForm::Simple(_) => "simple",
            SentenceForm::Compound(_) => "compound",
            SentenceForm::IsNot(_) => "is_not",
            SentenceForm::Complex { shape: ComplexShape::Form1, .. } => "complex_form1",
            SentenceForm::Complex { shape: ComplexShape::Form2, .. } => "complex_form2",
            SentenceForm::Complex { shape: ComplexShape::Form3, .. } => "complex_form3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RejectReason {
    NoMarker,
    InvalidPair,
    UnsaturatedClauses,
    TaggingFault,
    Unsupported,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::NoMarker => "no_marker",
            RejectReason::InvalidPair => "invalid_pair",
            RejectReason::UnsaturatedClauses => "unsaturated_clauses",
            RejectReason::TaggingFault => "tagging_fault",
            RejectReason::Unsupported => "unsupported",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectRecord {
    pub sentence_id: SourceId,
    pub reason: RejectReason,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("tag `{0}` is outside the subject/object working set")]
pub struct TagOutsideWorkingSet(pub Tag);

pub const CORE_TAGS: [Tag; 5] = [Tag::NN, Tag::NNP, Tag::JJ, Tag::RB, Tag::VBG];

/// Subject/object dependency table: false for the six impossible pairings.
pub fn validate_core_pair(s: Tag, o: Tag) -> Result<bool, TagOutsideWorkingSet> {
    let (s, o) = (s.core(), o.core());
    for t in [s, o] {
        if !CORE_TAGS.contains(&t) {
            return Err(TagOutsideWorkingSet(t));
        }
    }
    use Tag::*;
    Ok(!matches!((s, o), (NNP, RB) | (RB, NNP) | (NNP, VBG) | (VBG, NNP) | (JJ, RB) | (JJ, VBG)))
}

/// How the structural template is instantiated when counting structures.
/// Each field is the number of alternatives for that slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBasis {
    pub subject_quantifiers: u64,
    pub subject_modifier_arities: u64,
    pub markers: u64,
    pub object_quantifiers: u64,
    pub object_modifier_arities: u64,
}

impl EnumerationBasis {
    pub const SINGLE_PAIR: EnumerationBasis = EnumerationBasis {
        subject_quantifiers: 1,
        subject_modifier_arities: 1,
        markers: 1,
        object_quantifiers: 1,
        object_modifier_arities: 1,
    };

    /// Quantifier slots take {none, a/the, some, only, one-of}, the subject
    /// takes 0 to 3 modifiers, and the marker is one of six categories.
    pub const DEFAULT: EnumerationBasis = EnumerationBasis {
        subject_quantifiers: 5,
        subject_modifier_arities: 4,
        markers: 6,
        object_quantifiers: 5,
        object_modifier_arities: 1,
    };

    fn multiplicity(&self) -> u64 {
        self.subject_quantifiers
            * self.subject_modifier_arities
            * self.markers
            * self.object_quantifiers
            * self.object_modifier_arities
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureCount {
    pub total: u64,
    pub invalid_by_pair: u64,
}

pub fn count_valid_structures(basis: &EnumerationBasis) -> StructureCount {
    let mut total = 0;
    let mut invalid = 0;
    for s in CORE_TAGS {
        for o in CORE_TAGS {
            total += basis.multiplicity();
            if !validate_core_pair(s, o).expect("core tag") {
                invalid += basis.multiplicity();
            }
        }
    }
    StructureCount { total, invalid_by_pair: invalid }
}

/// Adverbs that intensify rather than qualify; dropped during parsing.
const INTENSIFIERS: [&str; 9] = ["very", "really", "quite", "extremely", "so", "too", "rather", "also", "truly"];

fn is_that(t: &Token) -> bool {
    t.tag == Tag::WDT && t.lemma == "that"
}

fn is_main_marker(t: &Token) -> bool {
    t.marker.as_ref().is_some_and(|m| m.category != MarkerCategory::Quantification)
}

fn is_list_separator(t: &Token) -> bool {
    t.tag == Tag::Comma || (t.tag == Tag::CC && matches!(t.lemma.as_str(), "and" | "or" | "nor" | "either" | "&"))
}

fn is_content(t: &Token) -> bool {
    matches!(t.tag, Tag::NN | Tag::NNS | Tag::NNP | Tag::NNPS | Tag::JJ | Tag::RB | Tag::VBG)
        && t.lemma != "not"
        && !INTENSIFIERS.contains(&t.lemma.as_str())
}

/// One side of a clause after parsing.
#[derive(Debug, Default)]
struct Side {
    q: CanonicalQuantifier,
    no: bool,
    nots: usize,
    qualifier: Option<Term>,
    phrases: Vec<Phrase>,
    connective: Option<Connective>,
}

fn term_of(t: &Token) -> Term {
    Term { lemma: t.lemma.clone(), tag: t.tag.core() }
}

fn parse_side(tokens: &[Token]) -> Result<Side, RejectReason> {
    let mut side = Side::default();
    let mut disj = false;
    let mut conj = false;
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        let more_content = tokens[i + 1..].iter().any(is_content);
        if let Some(q) = t.quantifier {
            side.q = q;
        } else if t.tag == Tag::DT && t.lemma == "no" {
            side.no = true;
        } else if t.lemma == "not" {
            side.nots += 1;
        } else if matches!(t.tag, Tag::CC | Tag::DT) && t.lemma == "either" {
            disj = true;
        } else if t.tag == Tag::RB && INTENSIFIERS.contains(&t.lemma.as_str()) {
        } else if t.tag == Tag::RB && more_content && side.qualifier.is_none() {
            side.qualifier = Some(term_of(t));
        } else {
            break;
        }
        i += 1;
    }
    let mut segment: Vec<&Token> = Vec::new();
    let mut segments: Vec<Vec<&Token>> = Vec::new();
    for t in &tokens[i..] {
        if is_list_separator(t) {
            match t.lemma.as_str() {
                "or" | "nor" | "either" => disj = true,
                "and" | "&" => conj = true,
                _ => {}
            }
            segments.push(std::mem::take(&mut segment));
        } else if t.lemma == "not" {
            side.nots += 1;
        } else if t.tag == Tag::RB && INTENSIFIERS.contains(&t.lemma.as_str()) {
        } else {
            segment.push(t);
        }
    }
    segments.push(segment);
    if disj && conj {
        return Err(RejectReason::Unsupported);
    }
    for seg in segments.into_iter().filter(|s| !s.is_empty()) {
        side.phrases.push(parse_phrase(&seg)?);
    }
    if side.phrases.is_empty() {
        return Err(RejectReason::Unsupported);
    }
    if side.phrases.len() > 1 {
        side.connective = Some(if disj { Connective::Disj } else { Connective::Conj });
    }
    Ok(side)
}

fn parse_phrase(tokens: &[&Token]) -> Result<Phrase, RejectReason> {
    let mut terms: Vec<Term> = Vec::new();
    for t in tokens {
        if t.quantifier.is_some_and(|q| matches!(q.kind, QuantKind::Indefinite | QuantKind::Definite | QuantKind::All))
        {
            // "cat, a dog": article inside a list item
            if terms.is_empty() {
                continue;
            }
            return Err(RejectReason::Unsupported);
        }
        if t.tag == Tag::CD {
            return Err(RejectReason::TaggingFault);
        }
        if !is_content(t) {
            return Err(RejectReason::Unsupported);
        }
        let term = term_of(t);
        match terms.last_mut() {
            // multi-word proper names ("Albert Einstein") form one entity
            Some(prev) if prev.tag == Tag::NNP && term.tag == Tag::NNP => {
                prev.lemma.push(' ');
                prev.lemma.push_str(&term.lemma);
            }
            _ => terms.push(term),
        }
    }
    let head = terms.pop().ok_or(RejectReason::Unsupported)?;
    if terms.iter().any(|m| m.tag == Tag::NNP) || (head.tag == Tag::NNP && !terms.is_empty()) {
        return Err(RejectReason::Unsupported);
    }
    Ok(Phrase { mods: terms, head })
}

fn check_tags(phrases: &[Phrase]) -> Result<(), RejectReason> {
    if phrases.iter().all(|p| CORE_TAGS.contains(&p.head.tag)) {
        Ok(())
    } else {
        Err(RejectReason::TaggingFault)
    }
}

/// Builds one clause `[Q][M]*[S] marker [Q][M]*[O]` from its two spans.
fn build_clause(subject: &[Token], marker: &IsaMarker, object: &[Token]) -> Result<SimpleForm, RejectReason> {
    let s = parse_side(subject)?;
    let o = parse_side(object)?;
    check_tags(&s.phrases)?;
    check_tags(&o.phrases)?;
    let negation = match (s.no, s.nots + o.nots) {
        (false, 0) => Negation::None,
        (true, 0) => Negation::NoSubject,
        (false, 1) => Negation::NotObject,
        _ => Negation::Malformed,
    };
    let list = |side: &Side| side.connective.map(|connective| PhraseList { items: side.phrases.clone(), connective });
    let mut form = SimpleForm::basic(s.phrases[0].head.clone(), marker.clone(), o.phrases[0].head.clone());
    form.q1 = s.q;
    form.q2 = o.q;
    form.subject_mods = s.phrases[0].mods.clone();
    form.object_mods = o.phrases[0].mods.clone();
    form.subject_list = list(&s);
    form.object_list = list(&o);
    form.negation = negation;
    form.qualifier = s.qualifier.or(o.qualifier);
    if !form.core_pairs_valid() {
        return Err(RejectReason::InvalidPair);
    }
    Ok(form)
}

/// Pulls a "such as" insertion out of the token stream.
fn extract_such_as(tokens: &[Token]) -> Result<(Vec<Token>, Option<TermList>), RejectReason> {
    let Some(k) =
        tokens.iter().position(|t| t.marker.as_ref().is_some_and(|m| m.category == MarkerCategory::Quantification))
    else {
        return Ok((tokens.to_vec(), None));
    };
    let mut end = k + 1;
    while end < tokens.len() && tokens[end].tag != Tag::Comma && !is_main_marker(&tokens[end]) {
        end += 1;
    }
    let side = parse_side(&tokens[k + 1..end])?;
    if side.phrases.iter().any(|p| p.head.tag != Tag::NNP || !p.mods.is_empty()) {
        return Err(RejectReason::Unsupported);
    }
    let items = side.phrases.into_iter().map(|p| p.head).collect();
    let list = TermList { items, connective: side.connective.unwrap_or(Connective::Conj) };
    let start = if k > 0 && tokens[k - 1].tag == Tag::Comma { k - 1 } else { k };
    if end < tokens.len() && tokens[end].tag == Tag::Comma {
        end += 1;
    }
    let mut rest = tokens[..start].to_vec();
    rest.extend_from_slice(&tokens[end..]);
    Ok((rest, Some(list)))
}

fn reject(seq: &TokenSeq, reason: RejectReason) -> RejectRecord {
    RejectRecord { sentence_id: seq.source_id, reason }
}

/// Classifies a normalized token sequence, or says why it cannot be handled.
pub fn characterize(seq: &TokenSeq) -> Result<SentenceForm, RejectRecord> {
    characterize_inner(seq).map_err(|r| reject(seq, r))
}

fn characterize_inner(seq: &TokenSeq) -> Result<SentenceForm, RejectReason> {
    let (tokens, such_as) = extract_such_as(&seq.tokens)?;
    let markers: Vec<usize> = tokens.iter().enumerate().filter(|(_, t)| is_main_marker(t)).map(|(i, _)| i).collect();
    let marker_at = |i: usize| tokens[i].marker.clone().expect("marker token");
    match markers.as_slice() {
        [] => Err(RejectReason::NoMarker),
        &[m] => {
            let mut form = build_clause(&tokens[..m], &marker_at(m), &tokens[m + 1..])?;
            if tokens.iter().any(is_that) {
                return Err(RejectReason::Unsupported);
            }
            form.such_as_list = such_as;
            if form.negation != Negation::None {
                return Ok(SentenceForm::IsNot(form));
            }
            let one_of = form.q1.kind.is_one_of() || form.q2.kind.is_one_of();
            if (form.subject_list.is_some() || form.object_list.is_some()) && !one_of {
                Ok(SentenceForm::Compound(form))
            } else {
                Ok(SentenceForm::Simple(form))
            }
        }
        &[m1, m2] => {
            if such_as.is_some() {
                return Err(RejectReason::Unsupported);
            }
            let before = tokens[..m1].iter().position(is_that);
            let between = tokens[m1..m2].iter().position(is_that).map(|p| p + m1);
            let coord = tokens[m1..m2]
                .iter()
                .position(|t| t.tag == Tag::CC && matches!(t.lemma.as_str(), "but" | "yet"))
                .map(|p| p + m1);
            let (m1t, m2t) = (marker_at(m1), marker_at(m2));
            match (before, between, coord) {
                (Some(_), Some(_), _) => Err(RejectReason::UnsaturatedClauses),
                (Some(b), None, None) => {
                    let first = build_clause(&tokens[..b], &m1t, &tokens[m1 + 1..m2])?;
                    let second = build_clause(&tokens[..b], &m2t, &tokens[m2 + 1..])?;
                    Ok(SentenceForm::Complex { shape: ComplexShape::Form3, first, second })
                }
                (None, _, Some(c)) => {
                    let first = build_clause(&tokens[..m1], &m1t, &tokens[m1 + 1..c])?;
                    let second = build_clause(&tokens[..m1], &m2t, &tokens[m2 + 1..])?;
                    Ok(SentenceForm::Complex { shape: ComplexShape::Form3, first, second })
                }
                (None, between, None) => {
                    let o1_end = between.unwrap_or(m2);
                    let first = build_clause(&tokens[..m1], &m1t, &tokens[m1 + 1..o1_end])?;
                    let mut o1 = tokens[m1 + 1..o1_end].to_vec();
                    // an article on the first object does not contextualize
                    // it when it becomes the next clause's subject
                    o1.retain(|t| !t.quantifier.is_some_and(|q| q.kind == QuantKind::Indefinite));
                    let second = build_clause(&o1, &m2t, &tokens[m2 + 1..])?;
                    let shape = if between.is_some() { ComplexShape::Form2 } else { ComplexShape::Form1 };
                    Ok(SentenceForm::Complex { shape, first, second })
                }
                (Some(_), None, Some(_)) => Err(RejectReason::Unsupported),
            }
        }
        _ => Err(RejectReason::Unsupported),
    }
}

/// Splits a form into simple forms. Conjunctive lists expand into their
/// cross product; disjunctive lists and one-of lists stay intact.
pub fn decompose(form: &SentenceForm) -> Vec<SimpleForm> {
    match form {
        SentenceForm::Simple(f) | SentenceForm::IsNot(f) | SentenceForm::Compound(f) => split_lists(f),
        SentenceForm::Complex { shape: ComplexShape::Form3, first, second } => {
            let mut out = split_lists(first);
            out.extend(split_lists(second));
            out
        }
        SentenceForm::Complex { first, second, .. } => {
            let mut out = split_lists(second);
            out.extend(split_lists(first));
            out
        }
    }
}

fn split_lists(f: &SimpleForm) -> Vec<SimpleForm> {
    let one_of = f.q1.kind.is_one_of() || f.q2.kind.is_one_of();
    let splittable = |l: &Option<PhraseList>| !one_of && l.as_ref().is_some_and(|l| l.connective == Connective::Conj);
    let subjects: Vec<Option<Phrase>> = if splittable(&f.subject_list) {
        f.subject_list.as_ref().unwrap().items.iter().cloned().map(Some).collect()
    } else {
        vec![None]
    };
    let objects: Vec<Option<Phrase>> = if splittable(&f.object_list) {
        f.object_list.as_ref().unwrap().items.iter().cloned().map(Some).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::with_capacity(subjects.len() * objects.len());
    for s in &subjects {
        for o in &objects {
            let mut g = f.clone();
            if let Some(s) = s {
                g.set_subject(s.clone());
                g.subject_list = None;
            }
            if let Some(o) = o {
                g.set_object(o.clone());
                g.object_list = None;
            }
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::VariationTables;
    use crate::preprocess::{ingest_tagged, normalize_tokens};

    fn run(line: &str) -> Result<SentenceForm, RejectReason> {
        let t = VariationTables::seed();
        characterize(&normalize_tokens(&ingest_tagged(line).unwrap(), &t)).map_err(|r| r.reason)
    }

    fn pair(f: &SimpleForm) -> (String, String) {
        (f.subject.lemma.clone(), f.object.lemma.clone())
    }

    #[test]
    fn core_pair_table() {
        assert!(!validate_core_pair(Tag::NNP, Tag::RB).unwrap());
        assert!(validate_core_pair(Tag::NN, Tag::NN).unwrap());
        let invalid = CORE_TAGS
            .iter()
            .flat_map(|s| CORE_TAGS.iter().map(move |o| (*s, *o)))
            .filter(|(s, o)| !validate_core_pair(*s, *o).unwrap())
            .count();
        assert_eq!(invalid, 6);
        assert!(validate_core_pair(Tag::DT, Tag::NN).is_err());
        assert!(validate_core_pair(Tag::NNS, Tag::NNPS).unwrap());
    }

    #[test]
    fn structure_counts() {
        assert_eq!(
            count_valid_structures(&EnumerationBasis::SINGLE_PAIR),
            StructureCount { total: 25, invalid_by_pair: 6 }
        );
        let c = count_valid_structures(&EnumerationBasis::DEFAULT);
        assert_eq!(c.total, 15000);
        assert_eq!(c.invalid_by_pair * 100, c.total * 24);
    }

    #[test]
    fn simple_cat() {
        let SentenceForm::Simple(f) = run("Cat/NN is/VBZ a/DT mammal/NN").unwrap() else { panic!() };
        assert_eq!(pair(&f), ("cat".into(), "mammal".into()));
        assert_eq!(f.marker.category, MarkerCategory::Hyponymy);
        assert_eq!(f.marker.surface, "is a");
    }

    #[test]
    fn is_not_forms() {
        let SentenceForm::IsNot(f) = run("Man/NN is/VBZ not/RB cat/NN").unwrap() else { panic!() };
        assert_eq!(f.negation, Negation::NotObject);
        let SentenceForm::IsNot(f) = run("No/DT dog/NN is/VBZ a/DT cat/NN").unwrap() else { panic!() };
        assert_eq!(f.negation, Negation::NoSubject);
        let SentenceForm::IsNot(f) = run("Man/NN is/VBZ not/RB not/RB cat/NN").unwrap() else { panic!() };
        assert_eq!(f.negation, Negation::Malformed);
    }

    #[test]
    fn complex_shapes() {
        let form = run("Cat/NN is/VBZ a/DT feline/NN which/WDT is/VBZ an/DT animal/NN").unwrap();
        assert_eq!(form.shape_name(), "complex_form2");
        let parts: Vec<_> = decompose(&form).iter().map(pair).collect();
        assert_eq!(parts, vec![("feline".into(), "animal".into()), ("cat".into(), "feline".into())]);
        assert!(decompose(&form)[0].q1.is_none());

        let form = run("A/DT cat/NN that/WDT is/VBZ Persian/JJ is/VBZ long-haired/JJ").unwrap();
        assert_eq!(form.shape_name(), "complex_form3");
        let parts: Vec<_> = decompose(&form).iter().map(pair).collect();
        assert_eq!(parts, vec![("cat".into(), "persian".into()), ("cat".into(), "long-haired".into())]);

        assert_eq!(
            run("Cat/NN that/WDT is/VBZ a/DT pet/NN is/VBZ a/DT mammal/NN that/WDT is/VBZ furry/JJ"),
            Err(RejectReason::Unsupported)
        );
        assert_eq!(
            run("Cat/NN that/WDT is/VBZ a/DT pet/NN which/WDT is/VBZ furry/JJ"),
            Err(RejectReason::UnsaturatedClauses)
        );
        let form = run("Cat/NN is/VBZ a/DT pet/NN but/CC is/VBZ wild/JJ").unwrap();
        assert_eq!(form.shape_name(), "complex_form3");
        let form = run("Cat/NN is/VBZ a/DT feline/NN is/VBZ an/DT animal/NN").unwrap();
        assert_eq!(form.shape_name(), "complex_form1");
    }

    #[test]
    fn compound_lists() {
        let form = run("Cat/NN ,/, dog/NN ,/, and/CC bull/NN are/VBP mammals/NNS").unwrap();
        assert_eq!(form.shape_name(), "compound");
        assert_eq!(decompose(&form).len(), 3);

        let form = run("Cat/NN is/VBZ either/CC herbivorous/JJ or/CC carnivorous/JJ").unwrap();
        let parts = decompose(&form);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].object_list.as_ref().unwrap().connective, Connective::Disj);

        let form = run("Cat/NN and/CC dog/NN are/VBP pets/NNS and/CC mammals/NNS").unwrap();
        assert_eq!(decompose(&form).len(), 4);

        let form = run("Tomato/NN is/VBZ one/CD of/IN fruit/NN and/CC vegetable/NN").unwrap();
        assert_eq!(form.shape_name(), "simple");
        assert_eq!(decompose(&form).len(), 1);
    }

    #[test]
    fn such_as_insertion() {
        let form = run("Students/NNS ,/, such/JJ as/IN John/NNP and/CC Joe/NNP ,/, are/VBP intelligent/JJ").unwrap();
        let SentenceForm::Simple(f) = form else { panic!() };
        let l = f.such_as_list.clone().unwrap();
        assert_eq!(l.items.len(), 2);
        assert_eq!(l.connective, Connective::Conj);
        assert_eq!(pair(&f), ("student".into(), "intelligent".into()));
        assert_eq!(run("Animals/NNS such/JJ as/IN cats/NNS are/VBP furry/JJ"), Err(RejectReason::Unsupported));
    }

    #[test]
    fn rejections() {
        assert_eq!(run("Cat/NN eats/VBZ fish/NN"), Err(RejectReason::NoMarker));
        assert_eq!(run("John/NNP is/VBZ quickly/RB"), Err(RejectReason::InvalidPair));
        assert_eq!(run("Big/JJ John/NNP is/VBZ a/DT player/NN"), Err(RejectReason::Unsupported));
        assert_eq!(run("Cat/NN is/VBZ 5/CD"), Err(RejectReason::TaggingFault));
    }

    #[test]
    fn modifiers_and_qualifiers() {
        let SentenceForm::Simple(f) = run("Big/JJ wild/JJ cat/NN is/VBZ a/DT mammal/NN").unwrap() else { panic!() };
        assert_eq!(f.subject_mods.len(), 2);
        let SentenceForm::Simple(f) = run("Eventually/RB sun/NN is/VBZ a/DT black_hole/NN").unwrap() else { panic!() };
        assert_eq!(f.qualifier.unwrap().lemma, "eventually");
        assert_eq!(f.subject.lemma, "sun");
        let SentenceForm::Simple(f) = run("Quickly/RB is/VBZ an/DT adverb/NN").unwrap() else { panic!() };
        assert!(f.qualifier.is_none());
        assert_eq!(f.subject.tag, Tag::RB);
        let SentenceForm::Simple(f) = run("Albert/NNP Einstein/NNP is/VBZ a/DT scientist/NN").unwrap() else {
            panic!()
        };
        assert_eq!(f.subject.lemma, "Albert Einstein");
    }
}
