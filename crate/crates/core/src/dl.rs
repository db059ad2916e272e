//! Description logic AST for the AL[U][E][C][H][O] fragment, the knowledge
//! base container, and the canonical line-oriented serialization.
//!
//! Concepts serialize as s-expressions:
//!
//! ```text
//! C ::= name | top | bot | (not C) | (and C C) | (or C C)
//!     | (all role C) | (some role C) | (one ind)
//! ```
//!
//! and a knowledge base as sorted lines of `SUB`, `EQV`, `DEF`, `MEM`,
//! `ROLE-SUB` and `OBLIGATION` records.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub const ROLE_HAS_STATE: &str = "hasState";
pub const ROLE_DOES: &str = "does";
pub const ROLE_HAS_PROPERTY: &str = "hasProperty";
pub const ROLE_PPR: &str = "PPR";
pub const ROLE_FPR: &str = "FPR";

pub const ATTRIBUTE: &str = "Attribute";
pub const ACTIVITY: &str = "Activity";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DlError {
    #[error("cannot build a label from zero parts")]
    EmptyLabel,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("role hierarchy contains a cycle through `{0}`")]
    RoleCycle(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Bottom,
    Atomic(String),
    /// `{a}`, the concept holding exactly the individual `a`.
    Nominal(String),
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    All(String, Box<Concept>),
    Some(String, Box<Concept>),
}

impl Concept {
    pub fn atomic(name: impl Into<String>) -> Self {
        Concept::Atomic(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn and(a: Concept, b: Concept) -> Self {
        Concept::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Concept, b: Concept) -> Self {
        Concept::Or(Box::new(a), Box::new(b))
    }

    pub fn all(role: impl Into<String>, c: Concept) -> Self {
        Concept::All(role.into(), Box::new(c))
    }

    pub fn some(role: impl Into<String>, c: Concept) -> Self {
        Concept::Some(role.into(), Box::new(c))
    }

    /// Right-folded n-ary conjunction. An empty list is `Top`.
    pub fn and_all(items: impl IntoIterator<Item = Concept>) -> Self {
        fold_right(items.into_iter().collect(), Concept::Top, Concept::and)
    }

    /// Right-folded n-ary disjunction. An empty list is `Bottom`.
    pub fn or_all(items: impl IntoIterator<Item = Concept>) -> Self {
        fold_right(items.into_iter().collect(), Concept::Bottom, Concept::or)
    }

    pub fn as_atomic(&self) -> Option<&str> {
        match self {
            Concept::Atomic(n) => Some(n),
            _ => None,
        }
    }

    /// Negation normal form: `Not` only wraps atomic concepts and nominals.
    pub fn nnf(&self) -> Concept {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Nominal(_) => self.clone(),
            Concept::And(a, b) => Concept::and(a.nnf(), b.nnf()),
            Concept::Or(a, b) => Concept::or(a.nnf(), b.nnf()),
            Concept::All(r, c) => Concept::all(r.clone(), c.nnf()),
            Concept::Some(r, c) => Concept::some(r.clone(), c.nnf()),
            Concept::Not(inner) => match inner.as_ref() {
                Concept::Top => Concept::Bottom,
                Concept::Bottom => Concept::Top,
                Concept::Atomic(_) | Concept::Nominal(_) => self.clone(),
                Concept::Not(c) => c.nnf(),
                Concept::And(a, b) => Concept::or(neg_nnf(a), neg_nnf(b)),
                Concept::Or(a, b) => Concept::and(neg_nnf(a), neg_nnf(b)),
                Concept::All(r, c) => Concept::some(r.clone(), neg_nnf(c)),
                Concept::Some(r, c) => Concept::all(r.clone(), neg_nnf(c)),
            },
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Nominal(_) => true,
            Concept::Not(c) => matches!(c.as_ref(), Concept::Atomic(_) | Concept::Nominal(_)),
            Concept::And(a, b) | Concept::Or(a, b) => a.is_nnf() && b.is_nnf(),
            Concept::All(_, c) | Concept::Some(_, c) => c.is_nnf(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Nominal(_) => 1,
            Concept::Not(c) | Concept::All(_, c) | Concept::Some(_, c) => 1 + c.size(),
            Concept::And(a, b) | Concept::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Atomic concept names occurring anywhere in the expression.
    pub fn atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Concept::Atomic(n) => {
                out.insert(n.clone());
            }
            Concept::Top | Concept::Bottom | Concept::Nominal(_) => {}
            Concept::Not(c) | Concept::All(_, c) | Concept::Some(_, c) => c.atoms(out),
            Concept::And(a, b) | Concept::Or(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }

    pub fn roles(&self, out: &mut BTreeSet<String>) {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Nominal(_) => {}
            Concept::Not(c) => c.roles(out),
            Concept::All(r, c) | Concept::Some(r, c) => {
                out.insert(r.clone());
                c.roles(out);
            }
            Concept::And(a, b) | Concept::Or(a, b) => {
                a.roles(out);
                b.roles(out);
            }
        }
    }

    /// Replaces every occurrence of atomic `from` by atomic `to`.
    pub fn rename(&self, from: &str, to: &str) -> Concept {
        match self {
            Concept::Atomic(n) if n == from => Concept::atomic(to),
            Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Nominal(_) => self.clone(),
            Concept::Not(c) => Concept::not(c.rename(from, to)),
            Concept::And(a, b) => Concept::and(a.rename(from, to), b.rename(from, to)),
            Concept::Or(a, b) => Concept::or(a.rename(from, to), b.rename(from, to)),
            Concept::All(r, c) => Concept::all(r.clone(), c.rename(from, to)),
            Concept::Some(r, c) => Concept::some(r.clone(), c.rename(from, to)),
        }
    }

    /// A CamelCase stem usable as a label part, built from the expression's
    /// atoms and roles in reading order.
    pub fn stem(&self) -> String {
        match self {
            Concept::Top => "Thing".into(),
            Concept::Bottom => "Nothing".into(),
            Concept::Atomic(n) => n.clone(),
            Concept::Nominal(a) => format!("Nom{a}"),
            Concept::Not(c) => format!("Not{}", c.stem()),
            Concept::And(a, b) => format!("{}{}", a.stem(), b.stem()),
            Concept::Or(a, b) => format!("{}Or{}", a.stem(), b.stem()),
            Concept::All(r, c) => format!("{r}{}", c.stem()),
            Concept::Some(r, c) => format!("Some{r}{}", c.stem()),
        }
    }
}

fn neg_nnf(c: &Concept) -> Concept {
    Concept::not(c.clone()).nnf()
}

fn fold_right(mut items: Vec<Concept>, empty: Concept, f: fn(Concept, Concept) -> Concept) -> Concept {
    let Some(mut acc) = items.pop() else {
        return empty;
    };
    while let Some(c) = items.pop() {
        acc = f(c, acc);
    }
    acc
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Bottom => f.write_str("bot"),
            Concept::Atomic(n) => f.write_str(n),
            Concept::Nominal(a) => write!(f, "(one {a})"),
            Concept::Not(c) => write!(f, "(not {c})"),
            Concept::And(a, b) => write!(f, "(and {a} {b})"),
            Concept::Or(a, b) => write!(f, "(or {a} {b})"),
            Concept::All(r, c) => write!(f, "(all {r} {c})"),
            Concept::Some(r, c) => write!(f, "(some {r} {c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Subsumption(Concept, Concept),
    Equivalence(Concept, Concept),
    /// `name := C`; reasoned over as an equivalence.
    Definition(String, Concept),
}

impl Axiom {
    pub fn sub(c: Concept, d: Concept) -> Self {
        Axiom::Subsumption(c, d)
    }

    pub fn sub_names(c: &str, d: &str) -> Self {
        Axiom::Subsumption(Concept::atomic(c), Concept::atomic(d))
    }

    /// `(C ⊓ D ⊓ …) ≡ ⊥`
    pub fn disjoint(c: Concept) -> Self {
        Axiom::Equivalence(c, Concept::Bottom)
    }

    /// Both inclusions this axiom stands for.
    pub fn inclusions(&self) -> Vec<(Concept, Concept)> {
        match self {
            Axiom::Subsumption(c, d) => vec![(c.clone(), d.clone())],
            Axiom::Equivalence(c, d) => vec![(c.clone(), d.clone()), (d.clone(), c.clone())],
            Axiom::Definition(n, c) => {
                let a = Concept::atomic(n.clone());
                vec![(a.clone(), c.clone()), (c.clone(), a)]
            }
        }
    }

    pub fn atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Axiom::Subsumption(c, d) | Axiom::Equivalence(c, d) => {
                c.atoms(out);
                d.atoms(out);
            }
            Axiom::Definition(n, c) => {
                out.insert(n.clone());
                c.atoms(out);
            }
        }
    }

    pub fn rename(&self, from: &str, to: &str) -> Axiom {
        match self {
            Axiom::Subsumption(c, d) => Axiom::Subsumption(c.rename(from, to), d.rename(from, to)),
            Axiom::Equivalence(c, d) => Axiom::Equivalence(c.rename(from, to), d.rename(from, to)),
            Axiom::Definition(n, c) => {
                let n = if n == from { to.to_string() } else { n.clone() };
                Axiom::Definition(n, c.rename(from, to))
            }
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Subsumption(c, d) => write!(f, "SUB {c} {d}"),
            Axiom::Equivalence(c, d) => write!(f, "EQV {c} {d}"),
            Axiom::Definition(n, c) => write!(f, "DEF {n} {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assertion {
    pub concept: Concept,
    pub individual: String,
}

impl Assertion {
    pub fn new(concept: Concept, individual: impl Into<String>) -> Self {
        Assertion { concept, individual: individual.into() }
    }

    pub fn named(concept: &str, individual: &str) -> Self {
        Assertion::new(Concept::atomic(concept), individual)
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MEM {} {}", self.concept, self.individual)
    }
}

/// Where a generated label came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Provenance {
    pub sentence: String,
    pub rule: String,
    pub parts: Vec<String>,
}

/// Records which composite concept an individual was asserted into by the
/// membership rule, so later sentences about the same individual can be
/// merged instead of piling up assertions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MembershipRecord {
    pub individual: String,
    pub composite: String,
    pub object: String,
    pub parent: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub tbox: BTreeSet<Axiom>,
    pub abox: BTreeSet<Assertion>,
    /// role -> its declared direct super-roles
    pub roles: BTreeMap<String, BTreeSet<String>>,
    pub obligations: BTreeSet<Concept>,
    pub provenance: BTreeMap<String, Provenance>,
    pub memberships: BTreeSet<MembershipRecord>,
    /// Axioms retracted or replaced by revision; re-adding them is a no-op.
    pub superseded: BTreeSet<Axiom>,
    /// Assertions rewritten by revision; re-adding them is a no-op.
    pub retracted: BTreeSet<Assertion>,
}

impl Default for KnowledgeBase {
    fn default() -> Self {
        Self::new()
    }
}

impl KnowledgeBase {
    pub fn new() -> Self {
        let mut roles: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for r in [ROLE_HAS_STATE, ROLE_DOES, ROLE_PPR, ROLE_FPR] {
            roles.entry(r.to_string()).or_default();
        }
        roles
            .entry(ROLE_HAS_PROPERTY.to_string())
            .or_default()
            .extend([ROLE_HAS_STATE.to_string(), ROLE_DOES.to_string()]);
        KnowledgeBase {
            tbox: BTreeSet::new(),
            abox: BTreeSet::new(),
            roles,
            obligations: BTreeSet::new(),
            provenance: BTreeMap::new(),
            memberships: BTreeSet::new(),
            superseded: BTreeSet::new(),
            retracted: BTreeSet::new(),
        }
    }

    pub fn add_role_sub(&mut self, sub: &str, sup: &str) -> Result<(), DlError> {
        self.roles.entry(sup.to_string()).or_default();
        self.roles.entry(sub.to_string()).or_default().insert(sup.to_string());
        if self.super_roles(sup).contains(sub) {
            self.roles.get_mut(sub).map(|s| s.remove(sup));
            return Err(DlError::RoleCycle(sub.to_string()));
        }
        Ok(())
    }

    /// Reflexive-transitive closure of the super-roles of `role`.
    pub fn super_roles(&self, role: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![role.to_string()];
        while let Some(r) = stack.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            if let Some(sups) = self.roles.get(&r) {
                stack.extend(sups.iter().cloned());
            }
        }
        seen
    }

    /// Named concepts mentioned anywhere in the knowledge base.
    pub fn concept_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for ax in &self.tbox {
            ax.atoms(&mut out);
        }
        for a in &self.abox {
            a.concept.atoms(&mut out);
        }
        for c in &self.obligations {
            c.atoms(&mut out);
        }
        out
    }

    pub fn individuals(&self) -> BTreeSet<String> {
        self.abox.iter().map(|a| a.individual.clone()).collect()
    }

    pub fn assertions_of<'a>(&'a self, individual: &'a str) -> impl Iterator<Item = &'a Assertion> + 'a {
        self.abox.iter().filter(move |a| a.individual == individual)
    }

    pub fn is_empty(&self) -> bool {
        self.tbox.is_empty() && self.abox.is_empty() && self.obligations.is_empty()
    }

    /// Canonical serialization: one record per line, sorted, LF-terminated.
    pub fn serialize(&self) -> String {
        let mut lines: Vec<String> = Vec::new();
        lines.extend(self.tbox.iter().map(|a| a.to_string()));
        lines.extend(self.abox.iter().map(|a| a.to_string()));
        for (sub, sups) in &self.roles {
            lines.extend(sups.iter().map(|sup| format!("ROLE-SUB {sub} {sup}")));
        }
        lines.extend(self.obligations.iter().map(|c| format!("OBLIGATION {c}")));
        sorted_lines(lines)
    }

    /// Parses the canonical serialization. Provenance is not part of the
    /// format and comes back empty.
    pub fn parse(text: &str) -> Result<KnowledgeBase, DlError> {
        let mut kb = KnowledgeBase::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| DlError::Parse { line: i + 1, msg };
            let (kw, rest) = line.split_once(' ').ok_or_else(|| err("missing operands".into()))?;
            let mut p = SexpParser::new(rest);
            match kw {
                "SUB" | "EQV" => {
                    let c = p.concept().map_err(err)?;
                    let d = p.concept().map_err(err)?;
                    p.end().map_err(err)?;
                    kb.tbox.insert(if kw == "SUB" { Axiom::Subsumption(c, d) } else { Axiom::Equivalence(c, d) });
                }
                "DEF" => {
                    let n = p.symbol().map_err(err)?;
                    let c = p.concept().map_err(err)?;
                    p.end().map_err(err)?;
                    kb.tbox.insert(Axiom::Definition(n, c));
                }
                "MEM" => {
                    let c = p.concept().map_err(err)?;
                    let a = p.symbol().map_err(err)?;
                    p.end().map_err(err)?;
                    kb.abox.insert(Assertion::new(c, a));
                }
                "ROLE-SUB" => {
                    let r = p.symbol().map_err(err)?;
                    let s = p.symbol().map_err(err)?;
                    p.end().map_err(err)?;
                    kb.add_role_sub(&r, &s)?;
                }
                "OBLIGATION" => {
                    let c = p.concept().map_err(err)?;
                    p.end().map_err(err)?;
                    kb.obligations.insert(c);
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        Ok(kb)
    }
}

pub(crate) fn sorted_lines(mut lines: Vec<String>) -> String {
    lines.sort();
    lines.dedup();
    let mut out = String::new();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

pub fn parse_concept(text: &str) -> Result<Concept, String> {
    let mut p = SexpParser::new(text);
    let c = p.concept()?;
    p.end()?;
    Ok(c)
}

struct SexpParser<'a> {
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> SexpParser<'a> {
    fn new(text: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match ch {
                '(' | ')' => {
                    if let Some(s) = start.take() {
                        toks.push(&text[s..i]);
                    }
                    toks.push(&text[i..i + 1]);
                }
                c if c.is_whitespace() => {
                    if let Some(s) = start.take() {
                        toks.push(&text[s..i]);
                    }
                }
                _ => {
                    start.get_or_insert(i);
                }
            }
        }
        if let Some(s) = start {
            toks.push(&text[s..]);
        }
        SexpParser { toks, pos: 0 }
    }

    fn next(&mut self) -> Result<&'a str, String> {
        let t = self.toks.get(self.pos).copied().ok_or("unexpected end of input")?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: &str) -> Result<(), String> {
        let t = self.next()?;
        if t == want {
            Ok(())
        } else {
            Err(format!("expected `{want}`, found `{t}`"))
        }
    }

    fn symbol(&mut self) -> Result<String, String> {
        match self.next()? {
            "(" | ")" => Err("expected a name".into()),
            s => Ok(s.to_string()),
        }
    }

    fn end(&self) -> Result<(), String> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(format!("trailing input at `{t}`")),
        }
    }

    fn concept(&mut self) -> Result<Concept, String> {
        match self.next()? {
            "top" => Ok(Concept::Top),
            "bot" => Ok(Concept::Bottom),
            ")" => Err("unbalanced `)`".into()),
            "(" => {
                let op = self.next()?;
                let c = match op {
                    "not" => Concept::not(self.concept()?),
                    "and" => {
                        let a = self.concept()?;
                        Concept::and(a, self.concept()?)
                    }
                    "or" => {
                        let a = self.concept()?;
                        Concept::or(a, self.concept()?)
                    }
                    "all" => {
                        let r = self.symbol()?;
                        Concept::all(r, self.concept()?)
                    }
                    "some" => {
                        let r = self.symbol()?;
                        Concept::some(r, self.concept()?)
                    }
                    "one" => Concept::Nominal(self.symbol()?),
                    other => return Err(format!("unknown constructor `{other}`")),
                };
                self.expect(")")?;
                Ok(c)
            }
            name => Ok(Concept::Atomic(name.to_string())),
        }
    }
}

/// Label parts that render verbatim inside composite names.
pub mod marker {
    pub const ONLY: &str = "Only";
    pub const ONE_OF: &str = "OneOf";
    pub const PPR: &str = "PPR";
    pub const NOT: &str = "Not";
    pub const LIKE: &str = "Like";
    pub const THING: &str = "Thing";
    pub const ACTIVITY: &str = "Activity";
    pub const ESSENCE: &str = "Essence";
    pub const NOMINAL: &str = "Nom";
    pub const POS: &str = "Pos";
    pub const NEG: &str = "Neg";
}

/// Concatenates lemma parts into a CamelCase concept name. Each part is split
/// on whitespace, `_` and `-`; every word gets an upper-case initial and keeps
/// the rest of its spelling, so `PPR` stays `PPR` and `Male_Person` becomes
/// `MalePerson`.
pub fn make_label<S: AsRef<str>>(parts: &[S]) -> Result<String, DlError> {
    let mut out = String::new();
    for part in parts {
        for word in part.as_ref().split(|c: char| c.is_whitespace() || c == '_' || c == '-') {
            let mut chars = word.chars().filter(|c| c.is_alphanumeric());
            if let Some(first) = chars.next() {
                out.extend(first.to_uppercase());
                out.extend(chars);
            }
        }
    }
    if out.is_empty() {
        Err(DlError::EmptyLabel)
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Concept {
        Concept::atomic(n)
    }

    #[test]
    fn labels() {
        assert_eq!(make_label(&["player", "Person"]).unwrap(), "PlayerPerson");
        assert_eq!(make_label(&["John", "Joe", "Intelligent", "Student"]).unwrap(), "JohnJoeIntelligentStudent");
        assert_eq!(make_label(&["Orange", marker::LIKE]).unwrap(), "OrangeLike");
        assert_eq!(make_label(&["PPR", "queen", "Person"]).unwrap(), "PPRQueenPerson");
        assert_eq!(make_label(&["black hole"]).unwrap(), "BlackHole");
        assert_eq!(make_label(&["long-haired"]).unwrap(), "LongHaired");
        assert_eq!(make_label(&["Male_Person"]).unwrap(), "MalePerson");
        assert_eq!(make_label::<&str>(&[]), Err(DlError::EmptyLabel));
        assert_eq!(make_label(&["", "--"]), Err(DlError::EmptyLabel));
    }

    #[test]
    fn nnf_examples() {
        let c = Concept::not(Concept::and(a("A"), a("B")));
        assert_eq!(c.nnf(), Concept::or(Concept::not(a("A")), Concept::not(a("B"))));
        let c = Concept::not(Concept::all("R", a("C")));
        assert_eq!(c.nnf(), Concept::some("R", Concept::not(a("C"))));
        assert_eq!(Concept::not(Concept::not(a("A"))).nnf(), a("A"));
        assert_eq!(Concept::not(Concept::Top).nnf(), Concept::Bottom);
    }

    #[test]
    fn folds_right() {
        let c = Concept::and_all([a("A"), a("B"), a("C")]);
        assert_eq!(c.to_string(), "(and A (and B C))");
        assert_eq!(Concept::or_all([a("A")]), a("A"));
        assert_eq!(Concept::or_all([]), Concept::Bottom);
    }

    #[test]
    fn serialization_is_sorted_and_parses_back() {
        let mut kb = KnowledgeBase::new();
        kb.tbox.insert(Axiom::sub_names("Cat", "Animal"));
        kb.tbox.insert(Axiom::Definition("SweetThing".into(), Concept::all("hasState", a("Sweet"))));
        kb.tbox.insert(Axiom::disjoint(Concept::and(a("A"), Concept::not(a("B")))));
        kb.abox.insert(Assertion::named("Person", "John"));
        kb.abox.insert(Assertion::new(Concept::Nominal("Joe".into()), "Joe"));
        kb.obligations.insert(a("ManEssence"));
        let text = kb.serialize();
        let expected = "\
DEF SweetThing (all hasState Sweet)
EQV (and A (not B)) bot
MEM (one Joe) Joe
MEM Person John
OBLIGATION ManEssence
ROLE-SUB hasProperty does
ROLE-SUB hasProperty hasState
SUB Cat Animal
";
        assert_eq!(text, expected);
        assert_eq!(KnowledgeBase::parse(&text).unwrap(), kb);
    }

    #[test]
    fn parse_errors() {
        assert!(KnowledgeBase::parse("SUB Cat").is_err());
        assert!(KnowledgeBase::parse("FOO a b").is_err());
        assert!(KnowledgeBase::parse("SUB (and A B C) D").is_err());
        assert!(parse_concept("(not A").is_err());
    }

    #[test]
    fn role_cycles_are_rejected() {
        let mut kb = KnowledgeBase::new();
        kb.add_role_sub("r", "s").unwrap();
        assert_eq!(kb.add_role_sub("s", "r"), Err(DlError::RoleCycle("s".into())));
        assert!(kb.super_roles("hasProperty").contains("does"));
    }
}
