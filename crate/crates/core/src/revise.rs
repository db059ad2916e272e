//! Online revision: merges rule outputs into a knowledge base one sentence
//! at a time, repairing conflicts with the non-monotonic split rules and
//! recording monotonic growth.
//!
//! Conflicts are detected on derived knowledge: an output is accepted as is
//! when the knowledge base stays consistent (every name satisfiable, every
//! individual consistent, every obligation satisfiable) after adding it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::dl::{Assertion, Axiom, Concept, KnowledgeBase, MembershipRecord, Provenance};
use crate::lexicon::HypernymLexicon;
use crate::reason::{Budget, ReasonError, Reasoner};
use crate::transform::RuleOutput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RevisionRule {
    /// New `C ⊑ D` while `C ⊑ ¬D` is entailed.
    Nm1,
    /// New `C ⊑ D` while some `P ⊑ C ⊓ ¬D` is entailed.
    Nm2,
    /// New `C(a)` while `¬C(a)` is asserted.
    Nm3,
    /// New `C(a)` while `P(a)` is asserted and `P ⊑ ¬C` is entailed.
    Nm4,
    /// New `C ⊑ Dj` next to a told `C ⊑ Di`.
    M1,
    /// New `C(a)` next to an asserted `C(b)`.
    M2,
    /// A membership replaced by, or kept over, a more specific one.
    Merge,
}

impl RevisionRule {
    pub fn code(self) -> &'static str {
        match self {
            RevisionRule::Nm1 => "NM1",
            RevisionRule::Nm2 => "NM2",
            RevisionRule::Nm3 => "NM3",
            RevisionRule::Nm4 => "NM4",
            RevisionRule::M1 => "M1",
            RevisionRule::M2 => "M2",
            RevisionRule::Merge => "MERGE",
        }
    }

    pub fn is_monotonic(self) -> bool {
        matches!(self, RevisionRule::M1 | RevisionRule::M2)
    }
}

impl fmt::Display for RevisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Firing {
    pub rule: RevisionRule,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionResult {
    pub kb_after: KnowledgeBase,
    pub fired: Vec<Firing>,
    /// Canonical lines retracted from the knowledge base.
    pub removed: Vec<String>,
    /// Canonical lines introduced into the knowledge base.
    pub added: Vec<String>,
    /// Some check ran out of budget and was treated as passing.
    pub resource_limited: bool,
}

impl RevisionResult {
    /// Fired rule codes joined by commas, or `none`.
    pub fn rules(&self) -> String {
        let codes: BTreeSet<&str> = self.fired.iter().map(|f| f.rule.code()).collect();
        if codes.is_empty() {
            "none".into()
        } else {
            codes.into_iter().collect::<Vec<_>>().join(",")
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReviseError {
    #[error("irreparable conflict in sentence {sentence}: {detail}")]
    Irreparable { sentence: String, detail: String },
}

/// Integrates one rule output. On error the input knowledge base is left
/// untouched and the whole output is quarantined.
pub fn integrate(
    kb: &KnowledgeBase,
    out: &RuleOutput,
    lex: &HypernymLexicon,
    budget: Budget,
) -> Result<RevisionResult, ReviseError> {
    let out = relabel(kb, out);
    let mut s = Session::new(kb.clone(), lex, budget, out.sentence_id.to_string());
    s.record_provenance(&out);

    let mut tbox: Vec<Axiom> = Vec::new();
    for ax in &out.tbox_additions {
        if !s.kb.tbox.contains(ax) && !s.kb.superseded.contains(ax) && !tbox.contains(ax) {
            tbox.push(ax.clone());
        }
    }
    let mut abox: Vec<Assertion> = Vec::new();
    for a in &out.abox_additions {
        if !s.kb.abox.contains(a) && !s.kb.retracted.contains(a) && !abox.contains(a) {
            abox.push(a.clone());
        }
    }
    let obligations: Vec<Concept> =
        out.obligations.iter().filter(|c| !s.kb.obligations.contains(*c)).cloned().collect();
    s.merge_membership(&out, &tbox, &mut abox);

    let mut trial = s.kb.clone();
    trial.tbox.extend(tbox.iter().cloned());
    trial.abox.extend(abox.iter().cloned());
    trial.obligations.extend(obligations.iter().cloned());
    if s.consistent(&trial) {
        for ax in tbox {
            s.note_m1(&ax);
            s.add_axiom(ax);
        }
        for a in abox {
            s.note_m2(&a);
            s.add_assertion(a);
        }
        for o in obligations {
            s.add_obligation(o);
        }
        return Ok(s.finish());
    }

    for ax in tbox {
        s.integrate_axiom(ax)?;
    }
    for a in abox {
        s.integrate_assertion(a)?;
    }
    for o in obligations {
        if !s.sat(&s.kb.clone(), &o) {
            return Err(s.irreparable(format!("obligation {o} is unsatisfiable")));
        }
        s.add_obligation(o);
    }
    let after = s.kb.clone();
    if !s.consistent(&after) {
        return Err(s.irreparable("revised knowledge base is still inconsistent".into()));
    }
    Ok(s.finish())
}

/// Renames labels of `out` that clash with an existing label built from
/// different parts. The new name gets the first free numeric suffix.
fn relabel(kb: &KnowledgeBase, out: &RuleOutput) -> RuleOutput {
    let mut out = out.clone();
    let mut taken = kb.concept_names();
    taken.extend(kb.provenance.keys().cloned());
    let mut renames: BTreeMap<String, String> = BTreeMap::new();
    for (label, parts) in &out.labels_created {
        if let Some(p) = kb.provenance.get(label) {
            if &p.parts != parts {
                let fresh = fresh_name(&taken, label);
                taken.insert(fresh.clone());
                renames.insert(label.clone(), fresh);
            }
        }
    }
    for (from, to) in &renames {
        out.tbox_additions = out.tbox_additions.iter().map(|a| a.rename(from, to)).collect();
        out.abox_additions = out
            .abox_additions
            .iter()
            .map(|a| Assertion::new(a.concept.rename(from, to), a.individual.clone()))
            .collect();
        out.obligations = out.obligations.iter().map(|c| c.rename(from, to)).collect();
        if let Some(parts) = out.labels_created.remove(from) {
            out.labels_created.insert(to.clone(), parts);
        }
        if let Some(m) = out.membership.as_mut() {
            if &m.composite == from {
                m.composite = to.clone();
            }
        }
    }
    out
}

fn fresh_name(taken: &BTreeSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (2..).map(|i| format!("{base}{i}")).find(|n| !taken.contains(n)).expect("unbounded")
}

struct Session<'a> {
    kb: KnowledgeBase,
    /// Snapshot taken before the output is integrated.
    before: KnowledgeBase,
    lex: &'a HypernymLexicon,
    budget: Budget,
    sentence: String,
    fired: Vec<Firing>,
    removed: Vec<String>,
    added: Vec<String>,
    limited: bool,
}

impl<'a> Session<'a> {
    fn new(kb: KnowledgeBase, lex: &'a HypernymLexicon, budget: Budget, sentence: String) -> Self {
        Session {
            before: kb.clone(),
            kb,
            lex,
            budget,
            sentence,
            fired: Vec::new(),
            removed: Vec::new(),
            added: Vec::new(),
            limited: false,
        }
    }

    fn finish(self) -> RevisionResult {
        RevisionResult {
            kb_after: self.kb,
            fired: self.fired,
            removed: self.removed,
            added: self.added,
            resource_limited: self.limited,
        }
    }

    fn irreparable(&self, detail: String) -> ReviseError {
        ReviseError::Irreparable { sentence: self.sentence.clone(), detail }
    }

    fn fire(&mut self, rule: RevisionRule, details: String) {
        self.fired.push(Firing { rule, details });
    }

    fn consistent(&mut self, kb: &KnowledgeBase) -> bool {
        let report = Reasoner::new(kb, self.budget).check_consistency();
        self.limited |= report.resource_limited;
        report.kb_consistent
    }

    fn sat(&mut self, kb: &KnowledgeBase, c: &Concept) -> bool {
        match Reasoner::new(kb, self.budget).is_satisfiable(c) {
            Ok(b) => b,
            Err(ReasonError::ResourceLimit) => {
                self.limited = true;
                true
            }
        }
    }

    fn entails(&mut self, kb: &KnowledgeBase, c: &Concept, d: &Concept) -> bool {
        match Reasoner::new(kb, self.budget).is_subsumed_by(c, d) {
            Ok(b) => b,
            Err(ReasonError::ResourceLimit) => {
                self.limited = true;
                false
            }
        }
    }

    fn add_axiom(&mut self, ax: Axiom) {
        let line = ax.to_string();
        if self.kb.tbox.insert(ax) {
            self.added.push(line);
        }
    }

    fn remove_axiom(&mut self, ax: &Axiom) {
        if self.kb.tbox.remove(ax) {
            self.removed.push(ax.to_string());
        }
        self.kb.superseded.insert(ax.clone());
    }

    fn add_assertion(&mut self, a: Assertion) {
        let line = a.to_string();
        if self.kb.abox.insert(a) {
            self.added.push(line);
        }
    }

    fn remove_assertion(&mut self, a: &Assertion) {
        if self.kb.abox.remove(a) {
            self.removed.push(a.to_string());
        }
        self.kb.retracted.insert(a.clone());
    }

    fn add_obligation(&mut self, c: Concept) {
        let line = format!("OBLIGATION {c}");
        if self.kb.obligations.insert(c) {
            self.added.push(line);
        }
    }

    fn record_provenance(&mut self, out: &RuleOutput) {
        for (label, parts) in &out.labels_created {
            self.kb.provenance.entry(label.clone()).or_insert_with(|| Provenance {
                sentence: out.sentence_id.to_string(),
                rule: out.rule_id.code().to_string(),
                parts: parts.clone(),
            });
        }
    }

    fn fresh(&mut self, parts: &[String], rule: RevisionRule) -> String {
        let mut taken = self.kb.concept_names();
        taken.extend(self.kb.provenance.keys().cloned());
        let name = fresh_name(&taken, &parts.concat());
        self.kb.provenance.insert(
            name.clone(),
            Provenance { sentence: self.sentence.clone(), rule: rule.code().to_string(), parts: parts.to_vec() },
        );
        name
    }

    fn note_m1(&mut self, ax: &Axiom) {
        let Axiom::Subsumption(c, d) = ax else { return };
        let others: Vec<String> = self
            .before
            .tbox
            .iter()
            .filter_map(|t| match t {
                Axiom::Subsumption(c2, d2) if c2 == c && d2 != d => Some(d2.to_string()),
                _ => None,
            })
            .collect();
        if !others.is_empty() {
            self.fire(RevisionRule::M1, format!("{c} under {d} and {}", others.join(", ")));
        }
    }

    fn note_m2(&mut self, a: &Assertion) {
        if self.before.abox.iter().any(|b| b.concept == a.concept && b.individual != a.individual) {
            self.fire(RevisionRule::M2, format!("{} gains {}", a.concept, a.individual));
        }
    }

    fn more_specific(&mut self, extra: &[Axiom], sub: &str, sup: &str) -> bool {
        if self.lex.label_is_subtype(sub, sup) {
            return true;
        }
        let mut kb = self.kb.clone();
        kb.tbox.extend(extra.iter().cloned());
        self.entails(&kb, &Concept::atomic(sub), &Concept::atomic(sup))
    }

    /// Keeps a single composite membership per individual and parent when
    /// one object is more specific than the other.
    fn merge_membership(&mut self, out: &RuleOutput, tbox: &[Axiom], abox: &mut Vec<Assertion>) {
        let Some(new) = out.membership.clone() else { return };
        let olds: Vec<MembershipRecord> = self
            .kb
            .memberships
            .iter()
            .filter(|m| m.individual == new.individual && m.parent == new.parent && m.object != new.object)
            .cloned()
            .collect();
        let new_mem = Assertion::named(&new.composite, &new.individual);
        for old in olds {
            if self.more_specific(tbox, &new.object, &old.object) {
                self.remove_assertion(&Assertion::named(&old.composite, &old.individual));
                self.kb.retracted.remove(&new_mem);
                self.kb.memberships.remove(&old);
                self.add_axiom(Axiom::sub_names(&new.object, &old.object));
                self.fire(
                    RevisionRule::Merge,
                    format!("{} moves from {} to {}", new.individual, old.composite, new.composite),
                );
            } else if self.more_specific(tbox, &old.object, &new.object) {
                abox.retain(|a| a != &new_mem);
                self.add_axiom(Axiom::sub_names(&old.object, &new.object));
                self.fire(
                    RevisionRule::Merge,
                    format!("{} stays in {} over {}", new.individual, old.composite, new.composite),
                );
                return;
            }
        }
        self.kb.memberships.insert(new);
    }

    fn integrate_axiom(&mut self, ax: Axiom) -> Result<(), ReviseError> {
        let mut trial = self.kb.clone();
        trial.tbox.insert(ax.clone());
        if self.consistent(&trial) {
            self.note_m1(&ax);
            self.add_axiom(ax);
            return Ok(());
        }
        let kb = self.kb.clone();
        for (c, d) in ax.inclusions() {
            if d == Concept::Bottom || !self.sat(&kb, &c) {
                continue;
            }
            if !self.sat(&kb, &Concept::and(c.clone(), d.clone())) {
                self.nm1(&ax, &c, &d);
                return self.verify(&ax);
            }
            let witness = kb.concept_names().into_iter().map(Concept::atomic).find(|p| {
                *p != c
                    && self.sat(&kb, p)
                    && self.entails(&kb, p, &c)
                    && !self.sat(&kb, &Concept::and(p.clone(), d.clone()))
            });
            if let Some(p) = witness {
                self.nm2(&ax, &c, &d, &p);
                return self.verify(&ax);
            }
        }
        Err(self.irreparable(format!("no revision rule repairs {ax}")))
    }

    fn verify(&mut self, ax: &Axiom) -> Result<(), ReviseError> {
        let kb = self.kb.clone();
        if self.consistent(&kb) {
            Ok(())
        } else {
            Err(self.irreparable(format!("revision of {ax} left the knowledge base inconsistent")))
        }
    }

    /// Split of `c` along `d`: `[D+C] ⊑ D ⊓ C`, `[NOT D+C] ⊑ ¬D ⊓ C`, and every
    /// `c` outside `[D+C]` lies in `[NOT D+C]`.
    fn split(&mut self, c: &Concept, d: &Concept, rule: RevisionRule) -> (Concept, Concept) {
        let nd = Concept::not(d.clone()).nnf();
        let pos = Concept::atomic(self.fresh(&[d.stem(), c.stem()], rule));
        let neg = Concept::atomic(self.fresh(&[nd.stem(), c.stem()], rule));
        self.add_axiom(Axiom::sub(pos.clone(), d.clone()));
        self.add_axiom(Axiom::sub(neg.clone(), nd));
        self.add_axiom(Axiom::sub(pos.clone(), c.clone()));
        self.add_axiom(Axiom::sub(neg.clone(), c.clone()));
        self.add_axiom(Axiom::sub(Concept::and(Concept::not(pos.clone()), c.clone()), neg.clone()));
        (pos, neg)
    }

    fn nm1(&mut self, ax: &Axiom, c: &Concept, d: &Concept) {
        let kb = self.kb.clone();
        let conflicting: Vec<(Axiom, Concept)> = kb
            .tbox
            .iter()
            .filter_map(|t| match t {
                Axiom::Subsumption(l, x) if l == c => Some((t.clone(), x.clone())),
                _ => None,
            })
            .filter(|(_, x)| !self.sat(&kb, &Concept::and(x.clone(), d.clone())))
            .collect();
        let (pos, neg) = self.split(c, d, RevisionRule::Nm1);
        for (told, x) in conflicting {
            self.remove_axiom(&told);
            self.add_axiom(Axiom::sub(neg.clone(), x));
        }
        self.kb.superseded.insert(ax.clone());
        let members: Vec<Assertion> = kb.abox.iter().filter(|a| &a.concept == c).cloned().collect();
        for a in members {
            self.remove_assertion(&a);
            self.add_assertion(Assertion::new(pos.clone(), a.individual.clone()));
        }
        self.fire(RevisionRule::Nm1, format!("{c} split into {pos} and {neg}"));
    }

    fn nm2(&mut self, ax: &Axiom, c: &Concept, d: &Concept, p: &Concept) {
        let (pos, neg) = self.split(c, d, RevisionRule::Nm2);
        self.add_axiom(Axiom::sub(p.clone(), neg.clone()));
        self.kb.superseded.insert(ax.clone());
        self.fire(RevisionRule::Nm2, format!("{c} split into {pos} and {neg}; {p} kept in {neg}"));
    }

    fn integrate_assertion(&mut self, a: Assertion) -> Result<(), ReviseError> {
        let mut trial = self.kb.clone();
        trial.abox.insert(a.clone());
        if self.consistent(&trial) {
            self.note_m2(&a);
            self.add_assertion(a);
            return Ok(());
        }
        let kb = self.kb.clone();
        let c = a.concept.clone();
        if !self.sat(&kb, &c) {
            return Err(self.irreparable(format!("{c} is unsatisfiable")));
        }
        let neg_c = Concept::not(c.clone()).nnf();
        let held: Vec<Concept> = kb.assertions_of(&a.individual).map(|x| x.concept.clone()).collect();
        let rule = if held.iter().any(|x| x.nnf() == neg_c) {
            Some((RevisionRule::Nm3, None))
        } else {
            held.into_iter()
                .find(|x| !self.sat(&kb, &Concept::and(x.clone(), c.clone())))
                .map(|p| (RevisionRule::Nm4, Some(p)))
        };
        let Some((rule, p)) = rule else {
            return Err(self.irreparable(format!("no revision rule repairs {a}")));
        };
        let c1 = Concept::atomic(self.fresh(&[c.stem(), "Pos".into()], rule));
        let c2 = Concept::atomic(self.fresh(&[c.stem(), "Neg".into()], rule));
        self.add_axiom(Axiom::sub(c1.clone(), c.clone()));
        self.add_axiom(Axiom::sub(c2.clone(), neg_c));
        if let Some(p) = &p {
            self.add_axiom(Axiom::sub(p.clone(), Concept::not(c1.clone())));
        }
        self.kb.retracted.insert(a.clone());
        self.add_assertion(Assertion::new(Concept::or(c1.clone(), c2.clone()), a.individual.clone()));
        self.fire(rule, format!("{a} rewritten over {c1} and {c2}"));
        let after = self.kb.clone();
        if self.consistent(&after) {
            Ok(())
        } else {
            Err(self.irreparable(format!("revision of {a} left the knowledge base inconsistent")))
        }
    }
}
