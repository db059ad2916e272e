//! Maps simple IS-A forms to T-Box axioms, A-Box assertions and obligations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::characterize::{Connective, Negation, Phrase, SimpleForm, Term};
use crate::dl::{
    self, make_label, marker, Assertion, Axiom, Concept, DlError, KnowledgeBase, MembershipRecord, ATTRIBUTE,
};
use crate::lexicon::{HypernymLexicon, MarkerCategory, QuantKind, Tense, THING};
use crate::preprocess::{SourceId, Tag};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("no rule maps this structure: {0}")]
    Unmapped(String),
    #[error(transparent)]
    Label(#[from] DlError),
}

fn unmapped<T>(why: &str) -> Result<T, TransformError> {
    Err(TransformError::Unmapped(why.to_string()))
}

/// Identifies the rule family that fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    IsNot,
    SuchAsConj,
    SuchAsDisj,
    Only,
    OneOf,
    Past,
    Qualified,
    Like,
    Gerund,
    Disjunctive,
    Epistemic,
    NominalEquivalence,
    Equivalence,
    Membership,
    Inclusion,
}

impl RuleId {
    pub fn code(self) -> &'static str {
        match self {
            RuleId::IsNot => "is_not",
            RuleId::SuchAsConj => "such_as_conj",
            RuleId::SuchAsDisj => "such_as_disj",
            RuleId::Only => "only",
            RuleId::OneOf => "one_of",
            RuleId::Past => "past",
            RuleId::Qualified => "qualified",
            RuleId::Like => "like",
            RuleId::Gerund => "gerund",
            RuleId::Disjunctive => "disjunctive",
            RuleId::Epistemic => "epistemic",
            RuleId::NominalEquivalence => "nominal_equivalence",
            RuleId::Equivalence => "equivalence",
            RuleId::Membership => "membership",
            RuleId::Inclusion => "inclusion",
        }
    }

    pub const ALL: [RuleId; 15] = [
        RuleId::IsNot,
        RuleId::SuchAsConj,
        RuleId::SuchAsDisj,
        RuleId::Only,
        RuleId::OneOf,
        RuleId::Past,
        RuleId::Qualified,
        RuleId::Like,
        RuleId::Gerund,
        RuleId::Disjunctive,
        RuleId::Epistemic,
        RuleId::NominalEquivalence,
        RuleId::Equivalence,
        RuleId::Membership,
        RuleId::Inclusion,
    ];
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleOutput {
    pub tbox_additions: Vec<Axiom>,
    pub abox_additions: Vec<Assertion>,
    pub obligations: Vec<Concept>,
    pub rule_id: RuleId,
    /// Every label built from more than one part, with its parts.
    pub labels_created: BTreeMap<String, Vec<String>>,
    pub sentence_id: SourceId,
    /// Set by the plain membership rule; used when merging memberships.
    pub membership: Option<MembershipRecord>,
}

impl RuleOutput {
    fn new(rule_id: RuleId) -> Self {
        RuleOutput {
            tbox_additions: Vec::new(),
            abox_additions: Vec::new(),
            obligations: Vec::new(),
            rule_id,
            labels_created: BTreeMap::new(),
            sentence_id: SourceId::default(),
            membership: None,
        }
    }

    pub fn line_count(&self) -> usize {
        self.tbox_additions.len() + self.abox_additions.len() + self.obligations.len()
    }

    /// The additions alone, as a knowledge base.
    pub fn to_kb(&self) -> KnowledgeBase {
        let mut kb = KnowledgeBase::new();
        kb.tbox.extend(self.tbox_additions.iter().cloned());
        kb.abox.extend(self.abox_additions.iter().cloned());
        kb.obligations.extend(self.obligations.iter().cloned());
        kb
    }

    /// Canonical lines of the additions, sorted.
    pub fn render(&self) -> String {
        self.to_kb().serialize().lines().filter(|l| !l.starts_with("ROLE-SUB")).map(|l| format!("{l}\n")).collect()
    }
}

/// A concept together with the label parts it was named from.
#[derive(Debug, Clone)]
struct Named {
    concept: Concept,
    /// Parts of the concept's label, e.g. `["healthy", "Thing"]`.
    parts: Vec<String>,
    /// Parts of the unreified phrase, e.g. `["healthy"]`.
    raw: Vec<String>,
}

impl Named {
    fn name(&self) -> String {
        match &self.concept {
            Concept::Atomic(n) => n.clone(),
            c => c.stem(),
        }
    }
}

/// Where an individual is anchored: its most specific parent when the
/// lexicon knows it, otherwise its own nominal concept.
struct Anchor {
    individual: String,
    /// Label part used inside composites.
    part: String,
    concept: Concept,
}

struct Emitter<'a> {
    lex: &'a HypernymLexicon,
    out: RuleOutput,
}

fn phrase_parts(p: &Phrase) -> Vec<String> {
    p.mods.iter().chain(std::iter::once(&p.head)).map(|t| t.lemma.clone()).collect()
}

fn own<S: AsRef<str>>(parts: &[S]) -> Vec<String> {
    parts.iter().map(|s| s.as_ref().to_string()).collect()
}

impl<'a> Emitter<'a> {
    fn new(lex: &'a HypernymLexicon, rule: RuleId) -> Self {
        Emitter { lex, out: RuleOutput::new(rule) }
    }

    fn label(&mut self, parts: &[String]) -> Result<String, TransformError> {
        let name = make_label(parts)?;
        if parts.len() > 1 {
            self.out.labels_created.entry(name.clone()).or_insert_with(|| parts.to_vec());
        }
        Ok(name)
    }

    fn atom(&mut self, parts: &[String]) -> Result<Concept, TransformError> {
        Ok(Concept::atomic(self.label(parts)?))
    }

    fn sub(&mut self, c: Concept, d: Concept) {
        let ax = Axiom::Subsumption(c, d);
        if !self.out.tbox_additions.contains(&ax) {
            self.out.tbox_additions.push(ax);
        }
    }

    fn eqv(&mut self, c: Concept, d: Concept) {
        let ax = Axiom::Equivalence(c, d);
        if !self.out.tbox_additions.contains(&ax) {
            self.out.tbox_additions.push(ax);
        }
    }

    fn disjoint(&mut self, c: Concept) {
        self.eqv(c, Concept::Bottom);
    }

    fn def(&mut self, name: &str, c: Concept) {
        let ax = Axiom::Definition(name.to_string(), c);
        if !self.out.tbox_additions.contains(&ax) {
            self.out.tbox_additions.push(ax);
        }
    }

    fn mem(&mut self, c: Concept, individual: &str) {
        let a = Assertion::new(c, individual);
        if !self.out.abox_additions.contains(&a) {
            self.out.abox_additions.push(a);
        }
    }

    fn individual(&self, t: &Term) -> Result<String, TransformError> {
        Ok(make_label(&[&t.lemma])?)
    }

    /// `Nom{a}` with its automatic assertion.
    fn nominal(&mut self, t: &Term) -> Result<Named, TransformError> {
        let ind = self.individual(t)?;
        let parts = own(&[marker::NOMINAL, &t.lemma]);
        let c = self.atom(&parts)?;
        self.mem(c.clone(), &ind);
        Ok(Named { concept: c, parts, raw: vec![t.lemma.clone()] })
    }

    fn anchor(&mut self, t: &Term) -> Result<Anchor, TransformError> {
        let individual = self.individual(t)?;
        match self.lex.most_specific_parent(&t.lemma) {
            Some(msp) => {
                let concept = Concept::atomic(make_label(&[&msp])?);
                for (ty, sup) in self.lex.supertype_chain(&msp) {
                    self.sub(Concept::atomic(make_label(&[ty])?), Concept::atomic(make_label(&[sup])?));
                }
                self.mem(concept.clone(), &individual);
                Ok(Anchor { individual, part: msp, concept })
            }
            None => {
                let nom = self.nominal(t)?;
                Ok(Anchor { individual, part: t.lemma.clone(), concept: nom.concept })
            }
        }
    }

    /// Subject concept with modifier unfolding: `[M1 M2 S] ⊑ [M2 S] ⊑ S`.
    fn subject(&mut self, p: &Phrase) -> Result<Named, TransformError> {
        if p.head.tag == Tag::NNP {
            return self.nominal(&p.head);
        }
        self.chain(p)
    }

    fn chain(&mut self, p: &Phrase) -> Result<Named, TransformError> {
        let parts = phrase_parts(p);
        let mut lower = self.atom(&parts[parts.len() - 1..])?;
        for start in (0..parts.len() - 1).rev() {
            let upper = self.atom(&parts[start..])?;
            self.sub(upper.clone(), lower);
            lower = upper;
        }
        Ok(Named { concept: lower, parts: parts.clone(), raw: parts })
    }

    /// Object concept with reification of adjectives and adverbs:
    /// `[O+Thing] := ∀hasState.O` for nominal subjects, `[O+Activity]` for
    /// gerund subjects. Modified noun objects unfold like subjects.
    fn object(&mut self, p: &Phrase, subject_tag: Tag) -> Result<Named, TransformError> {
        match p.head.tag {
            Tag::JJ | Tag::RB => {
                let raw = phrase_parts(p);
                let o = self.atom(&raw)?;
                if subject_tag == Tag::VBG {
                    let mut parts = raw.clone();
                    parts.push(marker::ACTIVITY.into());
                    let c = self.atom(&parts)?;
                    self.sub(c.clone(), Concept::atomic(dl::ACTIVITY));
                    Ok(Named { concept: c, parts, raw })
                } else {
                    let mut parts = raw.clone();
                    parts.push(marker::THING.into());
                    let name = self.label(&parts)?;
                    self.def(&name, Concept::all(dl::ROLE_HAS_STATE, o.clone()));
                    self.sub(o, Concept::atomic(ATTRIBUTE));
                    Ok(Named { concept: Concept::atomic(name), parts, raw })
                }
            }
            Tag::NNP => unmapped("named entity in object position"),
            _ => self.chain(p),
        }
    }

    fn finish(mut self, rule: RuleId) -> RuleOutput {
        self.out.rule_id = rule;
        self.out
    }
}

/// Hypernymy markers ("includes") read right to left.
fn orient(form: &SimpleForm) -> SimpleForm {
    let mut f = form.clone();
    if f.marker.inverse {
        std::mem::swap(&mut f.q1, &mut f.q2);
        std::mem::swap(&mut f.subject_mods, &mut f.object_mods);
        std::mem::swap(&mut f.subject, &mut f.object);
        std::mem::swap(&mut f.subject_list, &mut f.object_list);
    }
    f
}

fn has_lists(f: &SimpleForm) -> bool {
    f.subject_list.is_some() || f.object_list.is_some()
}

/// Picks the single rule family for a form, by fixed precedence.
pub fn select_rule(form: &SimpleForm) -> Result<RuleId, TransformError> {
    let f = orient(form);
    let (k1, k2) = (f.q1.kind, f.q2.kind);
    if f.negation == Negation::Malformed {
        return unmapped("double negation");
    }
    if f.negation != Negation::None {
        return Ok(RuleId::IsNot);
    }
    if let Some(l) = &f.such_as_list {
        return Ok(match l.connective {
            Connective::Conj => RuleId::SuchAsConj,
            Connective::Disj => RuleId::SuchAsDisj,
        });
    }
    if k1 == QuantKind::Only || k2 == QuantKind::Only {
        return Ok(RuleId::Only);
    }
    if k1.is_one_of() || k2.is_one_of() {
        return Ok(RuleId::OneOf);
    }
    if f.marker.tense == Tense::Past {
        return Ok(RuleId::Past);
    }
    if f.qualifier.is_some() {
        return Ok(RuleId::Qualified);
    }
    if f.marker.category == MarkerCategory::Commonality {
        return Ok(RuleId::Like);
    }
    if f.subject.tag == Tag::NN
        && f.subject_mods.last().is_some_and(|m| m.tag == Tag::VBG)
        && matches!(f.object.tag, Tag::JJ | Tag::RB)
    {
        return Ok(RuleId::Gerund);
    }
    if has_lists(&f) {
        let conj = [&f.subject_list, &f.object_list]
            .iter()
            .any(|l| l.as_ref().is_some_and(|l| l.connective == Connective::Conj));
        return if conj { unmapped("undecomposed conjunctive list") } else { Ok(RuleId::Disjunctive) };
    }
    match (f.subject.tag, f.object.tag) {
        (Tag::NNP, Tag::NNP) => return Ok(RuleId::NominalEquivalence),
        (Tag::NNP, _) => return Ok(RuleId::Membership),
        (_, Tag::NNP) => return unmapped("named entity object under a non-inverse marker"),
        _ => {}
    }
    let contextual = matches!(k1, QuantKind::Indefinite | QuantKind::Definite | QuantKind::Some)
        || (k1 == QuantKind::None && matches!(k2, QuantKind::Definite | QuantKind::Some));
    if contextual {
        return Ok(RuleId::Epistemic);
    }
    if f.marker.category == MarkerCategory::Equivalence {
        return Ok(RuleId::Equivalence);
    }
    Ok(RuleId::Inclusion)
}

/// Applies exactly one rule family to a simple form.
pub fn transform(form: &SimpleForm, lex: &HypernymLexicon) -> Result<RuleOutput, TransformError> {
    let rule = select_rule(form)?;
    let f = orient(form);
    let mut em = Emitter::new(lex, rule);
    match rule {
        RuleId::IsNot => is_not(&mut em, &f)?,
        RuleId::SuchAsConj | RuleId::SuchAsDisj => such_as(&mut em, &f)?,
        RuleId::Only => only(&mut em, &f)?,
        RuleId::OneOf => one_of(&mut em, &f)?,
        RuleId::Past => past(&mut em, &f)?,
        RuleId::Qualified => qualified(&mut em, &f)?,
        RuleId::Like => like(&mut em, &f)?,
        RuleId::Gerund => gerund(&mut em, &f)?,
        RuleId::Disjunctive => disjunctive(&mut em, &f)?,
        RuleId::Epistemic => epistemic(&mut em, &f)?,
        RuleId::NominalEquivalence => {
            let s = em.nominal(&f.subject)?;
            let o = em.nominal(&f.object)?;
            em.eqv(s.concept, o.concept);
        }
        RuleId::Equivalence => {
            let s = em.subject(&f.subject_phrase())?;
            let o = em.object(&f.object_phrase(), f.subject.tag)?;
            em.eqv(s.concept, o.concept);
        }
        RuleId::Membership => membership(&mut em, &f)?,
        RuleId::Inclusion => {
            let s = em.subject(&f.subject_phrase())?;
            let o = em.object(&f.object_phrase(), f.subject.tag)?;
            em.sub(s.concept, o.concept);
        }
    }
    Ok(em.finish(rule))
}

fn no_lists(f: &SimpleForm, rule: &str) -> Result<(), TransformError> {
    if has_lists(f) {
        return unmapped(&format!("list under the {rule} rule"));
    }
    Ok(())
}

fn is_not(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    no_lists(f, "negation")?;
    let s = em.subject(&f.subject_phrase())?;
    let o = em.object(&f.object_phrase(), f.subject.tag)?;
    em.sub(s.concept.clone(), Concept::not(o.concept));
    let essence = em.atom(&[s.name(), marker::ESSENCE.into()])?;
    em.eqv(s.concept, Concept::some(dl::ROLE_HAS_PROPERTY, essence.clone()));
    em.sub(essence.clone(), Concept::Top);
    em.out.obligations.push(essence);
    Ok(())
}

fn such_as(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    no_lists(f, "such-as")?;
    if f.subject.tag == Tag::NNP {
        return unmapped("such-as list under a named subject");
    }
    let list = f.such_as_list.as_ref().expect("such-as rule");
    let s = em.subject(&f.subject_phrase())?;
    let o2 = em.object(&f.object_phrase(), f.subject.tag)?;
    let restricted: Vec<String> = o2.raw.iter().chain(&s.parts).cloned().collect();
    let r = em.atom(&restricted)?;
    em.sub(r.clone(), s.concept);
    match list.connective {
        Connective::Conj => {
            let mut parts: Vec<String> = list.items.iter().map(|t| t.lemma.clone()).collect();
            parts.extend(restricted);
            let c = em.atom(&parts)?;
            em.sub(c.clone(), o2.concept);
            em.sub(c.clone(), r);
            for t in &list.items {
                let ind = em.individual(t)?;
                em.mem(c.clone(), &ind);
            }
        }
        Connective::Disj => {
            let mut members = Vec::new();
            for t in &list.items {
                let mut parts = vec![t.lemma.clone()];
                parts.extend(restricted.iter().cloned());
                let c = em.atom(&parts)?;
                em.sub(c.clone(), r.clone());
                let ind = em.individual(t)?;
                em.mem(c.clone(), &ind);
                members.push(c);
            }
            em.sub(Concept::or_all(members), o2.concept);
        }
    }
    Ok(())
}

fn only(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    no_lists(f, "only")?;
    let only_subject = f.q1.kind == QuantKind::Only;
    let only_object = f.q2.kind == QuantKind::Only;
    let (s, o) = if f.subject.tag == Tag::NNP {
        let o = em.object(&f.object_phrase(), Tag::NNP)?;
        let a = em.anchor(&f.subject)?;
        let mut parts = Vec::new();
        if only_object {
            parts.push(marker::ONLY.to_string());
        }
        parts.extend(o.parts.iter().cloned());
        if only_subject {
            parts.push(marker::ONLY.to_string());
        }
        parts.push(a.part.clone());
        let c = em.atom(&parts)?;
        em.mem(c.clone(), &a.individual);
        em.sub(c.clone(), a.concept);
        (c, o.concept)
    } else {
        let s = em.subject(&f.subject_phrase())?;
        let o = em.object(&f.object_phrase(), f.subject.tag)?;
        (s.concept, o.concept)
    };
    em.sub(s.clone(), o.clone());
    if only_object {
        em.disjoint(Concept::and(s.clone(), Concept::not(o.clone())));
    }
    if only_subject {
        em.disjoint(Concept::and(Concept::not(s), o));
    }
    Ok(())
}

fn pairs<T: Clone>(items: &[T]) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            out.push((items[i].clone(), items[j].clone()));
        }
    }
    out
}

fn one_of(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    let subject_side = f.q1.kind.is_one_of();
    let object_side = f.q2.kind.is_one_of();
    let only_one =
        (subject_side && f.q1.kind == QuantKind::OnlyOneOf) || (object_side && f.q2.kind == QuantKind::OnlyOneOf);
    let subjects = f.subject_phrases();
    let objects = f.object_phrases();
    let named = subjects.iter().filter(|p| p.head.tag == Tag::NNP).count();
    if named > 0 {
        if named != subjects.len() || (subject_side && object_side) {
            return unmapped("one-of mixing named entities with concepts");
        }
        return if object_side {
            one_of_named_object(em, &subjects, &objects, only_one)
        } else {
            one_of_named_subjects(em, &subjects, &objects)
        };
    }
    let ss: Vec<Concept> = subjects.iter().map(|p| em.subject(p).map(|n| n.concept)).collect::<Result<_, _>>()?;
    let os: Vec<Concept> =
        objects.iter().map(|p| em.object(p, subjects[0].head.tag).map(|n| n.concept)).collect::<Result<_, _>>()?;
    let s = Concept::or_all(ss.clone());
    let o = Concept::or_all(os.clone());
    em.sub(s.clone(), o.clone());
    if object_side {
        for (oi, oj) in pairs(&os) {
            em.disjoint(Concept::and_all([s.clone(), oi, oj]));
        }
        if only_one {
            em.disjoint(Concept::and(s.clone(), Concept::not(o.clone())));
        }
    }
    if subject_side {
        for (si, sj) in pairs(&ss) {
            em.disjoint(Concept::and(Concept::and(si, sj), Concept::not(o.clone())));
        }
        if only_one {
            em.disjoint(Concept::and(Concept::not(s), Concept::not(o)));
        }
    }
    Ok(())
}

fn one_of_named_object(
    em: &mut Emitter,
    subjects: &[Phrase],
    objects: &[Phrase],
    only_one: bool,
) -> Result<(), TransformError> {
    let [subject] = subjects else {
        return unmapped("one-of over several named subjects and objects");
    };
    let os: Vec<Named> = objects.iter().map(|p| em.object(p, Tag::NNP)).collect::<Result<_, _>>()?;
    let a = em.anchor(&subject.head)?;
    let mut parts = vec![marker::ONE_OF.to_string()];
    parts.extend(os.iter().flat_map(|o| o.parts.iter().cloned()));
    parts.push(a.part.clone());
    let c = em.atom(&parts)?;
    em.mem(c.clone(), &a.individual);
    let mut per_object = Vec::new();
    for o in &os {
        let mut p = o.parts.clone();
        p.push(a.part.clone());
        let pc = em.atom(&p)?;
        em.sub(pc.clone(), a.concept.clone());
        per_object.push(pc);
    }
    em.eqv(Concept::or_all(per_object), c.clone());
    em.sub(c.clone(), a.concept.clone());
    let o_concepts: Vec<Concept> = os.iter().map(|o| o.concept.clone()).collect();
    let union = Concept::or_all(o_concepts.clone());
    em.sub(c.clone(), union.clone());
    for (oi, oj) in pairs(&o_concepts) {
        em.disjoint(Concept::and_all([c.clone(), oi, oj]));
    }
    if only_one {
        em.disjoint(Concept::and(c, Concept::not(union)));
    }
    Ok(())
}

fn one_of_named_subjects(em: &mut Emitter, subjects: &[Phrase], objects: &[Phrase]) -> Result<(), TransformError> {
    let [object] = objects else {
        return unmapped("one-of over several named subjects and objects");
    };
    let o = em.object(object, Tag::NNP)?;
    let names: Vec<&str> = subjects.iter().map(|p| p.head.lemma.as_str()).collect();
    let common = em.lex.least_common_msp(&names).unwrap_or_else(|_| THING.to_string());
    let mut parts = o.parts.clone();
    parts.extend([marker::ONE_OF.to_string(), common]);
    let c = em.atom(&parts)?;
    let mut per_subject = Vec::new();
    for p in subjects {
        let a = em.anchor(&p.head)?;
        let mut pp = o.parts.clone();
        pp.push(a.part.clone());
        let pc = em.atom(&pp)?;
        em.sub(pc.clone(), a.concept);
        em.mem(c.clone(), &a.individual);
        if !per_subject.contains(&pc) {
            per_subject.push(pc);
        }
    }
    em.eqv(Concept::or_all(per_subject.clone()), c.clone());
    em.sub(c, o.concept.clone());
    for (pi, pj) in pairs(&per_subject) {
        em.disjoint(Concept::and(Concept::and(pi, pj), Concept::not(o.concept.clone())));
    }
    Ok(())
}

fn past(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    no_lists(f, "past tense")?;
    let o = em.object(&f.object_phrase(), f.subject.tag)?;
    let pointer = Concept::all(dl::ROLE_PPR, o.concept.clone());
    let s = if f.subject.tag == Tag::NNP {
        let a = em.anchor(&f.subject)?;
        let mut parts = vec![marker::PPR.to_string()];
        parts.extend(o.parts.iter().cloned());
        parts.push(a.part.clone());
        let c = em.atom(&parts)?;
        em.mem(c.clone(), &a.individual);
        em.sub(c.clone(), a.concept);
        c
    } else {
        em.subject(&f.subject_phrase())?.concept
    };
    em.sub(s, Concept::or(o.concept.clone(), pointer.clone()));
    em.disjoint(Concept::and(o.concept, Concept::not(pointer)));
    Ok(())
}

fn qualified(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    no_lists(f, "qualified")?;
    let q = f.qualifier.as_ref().expect("qualified rule");
    let s = if f.subject.tag == Tag::NNP {
        em.atom(std::slice::from_ref(&f.subject.lemma))?
    } else {
        em.subject(&f.subject_phrase())?.concept
    };
    let o = em.object(&f.object_phrase(), f.subject.tag)?;
    let mut parts = vec![q.lemma.clone()];
    parts.extend(o.parts.iter().cloned());
    let mo = em.atom(&parts)?;
    let pointer = Concept::all(dl::ROLE_FPR, o.concept);
    em.sub(s, Concept::or(mo.clone(), pointer.clone()));
    em.disjoint(Concept::and(mo, Concept::not(pointer)));
    Ok(())
}

fn like(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    no_lists(f, "like")?;
    let s = em.subject(&f.subject_phrase())?;
    let o =
        if f.object.tag == Tag::NNP { em.nominal(&f.object)? } else { em.object(&f.object_phrase(), f.subject.tag)? };
    let mut parts = o.parts.clone();
    parts.push(marker::LIKE.into());
    let common = em.atom(&parts)?;
    em.sub(s.concept, common.clone());
    em.sub(o.concept, common);
    Ok(())
}

fn gerund(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    no_lists(f, "gerund")?;
    let o = em.object(&f.object_phrase(), Tag::NN)?;
    let mods: Vec<String> = f.subject_mods.iter().map(|t| t.lemma.clone()).collect();
    let mut parts = o.raw.clone();
    parts.extend(mods.iter().cloned());
    parts.push(f.subject.lemma.clone());
    let c = em.atom(&parts)?;
    let m = em.atom(&mods)?;
    let s = em.atom(std::slice::from_ref(&f.subject.lemma))?;
    em.sub(c.clone(), o.concept);
    em.sub(c, Concept::or(m, s));
    Ok(())
}

fn disjunctive(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    let ss: Vec<Concept> =
        f.subject_phrases().iter().map(|p| em.subject(p).map(|n| n.concept)).collect::<Result<_, _>>()?;
    let os: Vec<Concept> =
        f.object_phrases().iter().map(|p| em.object(p, f.subject.tag).map(|n| n.concept)).collect::<Result<_, _>>()?;
    em.sub(Concept::or_all(ss), Concept::or_all(os));
    Ok(())
}

fn epistemic(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    let s = em.subject(&f.subject_phrase())?;
    let o = em.object(&f.object_phrase(), f.subject.tag)?;
    let mut parts = o.parts.clone();
    parts.extend(s.parts.iter().cloned());
    let c = em.atom(&parts)?;
    em.sub(c.clone(), o.concept);
    em.sub(c, s.concept);
    Ok(())
}

fn membership(em: &mut Emitter, f: &SimpleForm) -> Result<(), TransformError> {
    let o = em.object(&f.object_phrase(), Tag::NNP)?;
    let a = em.anchor(&f.subject)?;
    let mut parts = o.parts.clone();
    parts.push(a.part.clone());
    let c = em.atom(&parts)?;
    em.mem(c.clone(), &a.individual);
    em.sub(c.clone(), o.concept.clone());
    em.sub(c.clone(), a.concept.clone());
    let name = |c: &Concept| c.as_atomic().map(str::to_string).unwrap_or_else(|| c.stem());
    em.out.membership = Some(MembershipRecord {
        individual: a.individual,
        composite: name(&c),
        object: o.name(),
        parent: name(&a.concept),
    });
    Ok(())
}
