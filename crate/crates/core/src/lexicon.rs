//! Closed-class variation tables (IS-A markers, quantifiers) and the
//! hypernym lexicon used to type named entities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dl::make_label;
use crate::preprocess::Token;

pub const SEED_MARKERS: &str = include_str!("../data/markers.tsv");
pub const SEED_QUANTIFIERS: &str = include_str!("../data/quantifiers.tsv");

/// Root of the type hierarchy when no other common ancestor exists.
pub const THING: &str = "Thing";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("{table}:{line}: {msg}")]
    Parse { table: String, line: usize, msg: String },
    #[error("type hierarchy contains a cycle through `{0}`")]
    Cycle(String),
    #[error("entity `{0}` is not in the hypernym lexicon")]
    UnknownEntity(String),
    #[error("least common parent of an empty entity set")]
    EmptyInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkerCategory {
    Hyponymy,
    Hypernymy,
    Membership,
    Commonality,
    Quantification,
    Equivalence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tense {
    Present,
    Past,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsaMarker {
    pub surface: String,
    pub category: MarkerCategory,
    pub tense: Tense,
    pub inverse: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum QuantKind {
    Indefinite,
    Definite,
    Some,
    All,
    Only,
    OneOf,
    AnyOneOf,
    OnlyOneOf,
    #[default]
    None,
}

impl QuantKind {
    pub fn is_one_of(self) -> bool {
        matches!(self, QuantKind::OneOf | QuantKind::AnyOneOf | QuantKind::OnlyOneOf)
    }

    /// Kinds that restrict the reading to part of the subject class.
    pub fn is_contextual(self) -> bool {
        matches!(self, QuantKind::Indefinite | QuantKind::Definite | QuantKind::Some)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Degree {
    High,
    Low,
    Neutral,
    Numeral,
    #[default]
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CanonicalQuantifier {
    pub kind: QuantKind,
    pub degree: Degree,
}

impl CanonicalQuantifier {
    pub const NONE: CanonicalQuantifier = CanonicalQuantifier { kind: QuantKind::None, degree: Degree::NotApplicable };

    pub fn new(kind: QuantKind, degree: Degree) -> Self {
        CanonicalQuantifier { kind, degree }
    }

    pub fn is_none(&self) -> bool {
        self.kind == QuantKind::None
    }

    /// Canonical surface phrase for this kind.
    pub fn surface(&self) -> &'static str {
        match self.kind {
            QuantKind::Indefinite => "a",
            QuantKind::Definite => "the",
            QuantKind::Some => "some",
            QuantKind::All => "all",
            QuantKind::Only => "only",
            QuantKind::OneOf => "one of",
            QuantKind::AnyOneOf => "any one of",
            QuantKind::OnlyOneOf => "only one of",
            QuantKind::None => "",
        }
    }
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, { $($s:literal => $v:expr),* $(,)? }) => {
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($s => Ok($v),)*
                    other => Err(format!(concat!("unknown ", $what, " `{}`"), other)),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                #[allow(unreachable_patterns)]
                let s = match self { $(x if *x == $v => $s,)* _ => unreachable!() };
                f.write_str(s)
            }
        }
    };
}

keyword_enum!(MarkerCategory, "marker category", {
    "hyponymy" => MarkerCategory::Hyponymy,
    "hypernymy" => MarkerCategory::Hypernymy,
    "membership" => MarkerCategory::Membership,
    "commonality" => MarkerCategory::Commonality,
    "quantification" => MarkerCategory::Quantification,
    "equivalence" => MarkerCategory::Equivalence,
});

keyword_enum!(Tense, "tense", {
    "present" => Tense::Present,
    "past" => Tense::Past,
});

keyword_enum!(QuantKind, "quantifier kind", {
    "indefinite" => QuantKind::Indefinite,
    "definite" => QuantKind::Definite,
    "some" => QuantKind::Some,
    "all" => QuantKind::All,
    "only" => QuantKind::Only,
    "one_of" => QuantKind::OneOf,
    "any_one_of" => QuantKind::AnyOneOf,
    "only_one_of" => QuantKind::OnlyOneOf,
    "none" => QuantKind::None,
});

keyword_enum!(Degree, "degree", {
    "high" => Degree::High,
    "low" => Degree::Low,
    "neutral" => Degree::Neutral,
    "numeral" => Degree::Numeral,
    "n/a" => Degree::NotApplicable,
});

fn normalize_phrase(phrase: &str) -> String {
    phrase.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ")
}

/// Splits a TSV table into (line number, fields), skipping blanks and `#` comments.
fn tsv_rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim_end_matches('\r');
        if l.trim().is_empty() || l.trim_start().starts_with('#') {
            None
        } else {
            Some((i + 1, l.split('\t').map(str::trim).collect()))
        }
    })
}

/// The IS-A marker and quantifier variation lists.
#[derive(Debug, Clone)]
pub struct VariationTables {
    markers: BTreeMap<String, IsaMarker>,
    quantifiers: BTreeMap<String, CanonicalQuantifier>,
    max_marker_words: usize,
    max_quantifier_words: usize,
}

impl Default for VariationTables {
    fn default() -> Self {
        Self::seed()
    }
}

impl VariationTables {
    pub fn empty() -> Self {
        VariationTables {
            markers: BTreeMap::new(),
            quantifiers: BTreeMap::new(),
            max_marker_words: 0,
            max_quantifier_words: 0,
        }
    }

    /// The shipped seed tables.
    pub fn seed() -> Self {
        let mut t = Self::empty();
        t.load_markers("markers.tsv", SEED_MARKERS).expect("seed marker table is well formed");
        t.load_quantifiers("quantifiers.tsv", SEED_QUANTIFIERS).expect("seed quantifier table is well formed");
        t
    }

    /// Adds rows from a `surface, category, tense, inverse` table. Later rows
    /// override earlier ones with the same surface.
    pub fn load_markers(&mut self, table: &str, text: &str) -> Result<usize, LexiconError> {
        let mut n = 0;
        for (line, f) in tsv_rows(text) {
            let err = |msg: String| LexiconError::Parse { table: table.to_string(), line, msg };
            if f.len() != 4 {
                return Err(err(format!("expected 4 columns, found {}", f.len())));
            }
            let surface = normalize_phrase(f[0]);
            if surface.is_empty() {
                return Err(err("empty surface".into()));
            }
            let category: MarkerCategory = f[1].parse().map_err(err)?;
            let tense: Tense = f[2].parse().map_err(err)?;
            let inverse: bool = f[3].parse().map_err(|_| err(format!("bad inverse flag `{}`", f[3])))?;
            if (category == MarkerCategory::Hypernymy) != inverse {
                return Err(err("inverse must be true exactly for hypernymy markers".into()));
            }
            self.max_marker_words = self.max_marker_words.max(surface.split(' ').count());
            self.markers.insert(surface.clone(), IsaMarker { surface, category, tense, inverse });
            n += 1;
        }
        Ok(n)
    }

    /// Adds rows from a `surface, kind, degree` table.
    pub fn load_quantifiers(&mut self, table: &str, text: &str) -> Result<usize, LexiconError> {
        let mut n = 0;
        for (line, f) in tsv_rows(text) {
            let err = |msg: String| LexiconError::Parse { table: table.to_string(), line, msg };
            if f.len() != 3 {
                return Err(err(format!("expected 3 columns, found {}", f.len())));
            }
            let surface = normalize_phrase(f[0]);
            if surface.is_empty() {
                return Err(err("empty surface".into()));
            }
            let kind: QuantKind = f[1].parse().map_err(err)?;
            let degree: Degree = f[2].parse().map_err(err)?;
            self.max_quantifier_words = self.max_quantifier_words.max(surface.split(' ').count());
            self.quantifiers.insert(surface, CanonicalQuantifier { kind, degree });
            n += 1;
        }
        Ok(n)
    }

    pub fn markers(&self) -> impl Iterator<Item = &IsaMarker> {
        self.markers.values()
    }

    pub fn quantifiers(&self) -> impl Iterator<Item = (&str, &CanonicalQuantifier)> {
        self.quantifiers.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn marker(&self, surface: &str) -> Option<&IsaMarker> {
        self.markers.get(&normalize_phrase(surface))
    }

    pub fn is_quantifier_word(&self, word: &str) -> bool {
        let w = word.to_lowercase();
        self.quantifiers.keys().any(|k| k.split(' ').next() == Some(w.as_str()))
    }

    pub fn is_marker_word(&self, word: &str) -> bool {
        let w = word.to_lowercase();
        self.markers.keys().any(|k| k.split(' ').any(|p| p == w))
    }

    /// Looks up `phrase`, preferring the longest table entry formed by
    /// extending it with tokens from `following_token_window`.
    pub fn classify_isa_marker(&self, phrase: &str, following_token_window: &[Token]) -> Option<IsaMarker> {
        let mut candidate = normalize_phrase(phrase);
        let mut best = self.markers.get(&candidate).cloned();
        for tok in following_token_window.iter().take(self.max_marker_words) {
            candidate.push(' ');
            candidate.push_str(&tok.surface.to_lowercase());
            if let Some(m) = self.markers.get(&candidate) {
                best = Some(m.clone());
            }
        }
        best
    }

    /// Longest marker entry that is a prefix of `words`, with its length in words.
    pub fn match_marker(&self, words: &[&str]) -> Option<(IsaMarker, usize)> {
        longest_prefix(words, self.max_marker_words, |p| self.markers.get(p).cloned())
    }

    /// Longest quantifier entry that is a prefix of `words`, with its length in words.
    pub fn match_quantifier(&self, words: &[&str]) -> Option<(CanonicalQuantifier, usize)> {
        longest_prefix(words, self.max_quantifier_words, |p| self.quantifiers.get(p).copied())
    }

    /// Maps a quantifier phrase to its canonical kind. A run of quantifiers
    /// collapses to the last one (`[Q]* = [Q]`).
    pub fn normalize_quantifier(&self, phrase: &str) -> Option<CanonicalQuantifier> {
        let norm = normalize_phrase(phrase);
        let words: Vec<&str> = norm.split(' ').filter(|w| !w.is_empty()).collect();
        let mut i = 0;
        let mut last = None;
        while i < words.len() {
            let (q, len) = self.match_quantifier(&words[i..])?;
            last = Some(q);
            i += len;
        }
        last
    }
}

fn longest_prefix<T>(words: &[&str], max: usize, lookup: impl Fn(&str) -> Option<T>) -> Option<(T, usize)> {
    let mut best = None;
    let mut phrase = String::new();
    for (i, w) in words.iter().take(max).enumerate() {
        if i > 0 {
            phrase.push(' ');
        }
        phrase.push_str(&w.to_lowercase());
        if let Some(v) = lookup(&phrase) {
            best = Some((v, i + 1));
        }
    }
    best
}

/// Named-entity typing: entity -> recorded types, plus a type hierarchy.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HypernymLexicon {
    entity_types: BTreeMap<String, BTreeSet<String>>,
    supertypes: BTreeMap<String, BTreeSet<String>>,
}

impl HypernymLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(
        entities: impl IntoIterator<Item = (&'a str, &'a str)>,
        hierarchy: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, LexiconError> {
        let mut lex = Self::new();
        for (e, t) in entities {
            lex.add_entity(e, t);
        }
        for (t, s) in hierarchy {
            lex.add_supertype(t, s);
        }
        lex.validate()?;
        Ok(lex)
    }

    /// Parses rows of `entity<TAB>type`, `ENTITY<TAB>entity<TAB>type` or
    /// `TYPE<TAB>type<TAB>supertype`.
    pub fn parse(table: &str, text: &str) -> Result<Self, LexiconError> {
        let mut lex = Self::new();
        lex.extend_from_tsv(table, text)?;
        Ok(lex)
    }

    pub fn extend_from_tsv(&mut self, table: &str, text: &str) -> Result<(), LexiconError> {
        for (line, f) in tsv_rows(text) {
            match f.as_slice() {
                ["TYPE", t, s] => self.add_supertype(t, s),
                ["ENTITY", e, t] | [e, t] => self.add_entity(e, t),
                _ => {
                    return Err(LexiconError::Parse {
                        table: table.to_string(),
                        line,
                        msg: format!("unrecognised row with {} columns", f.len()),
                    })
                }
            }
        }
        self.validate()
    }

    pub fn add_entity(&mut self, entity: &str, ty: &str) {
        self.entity_types.entry(entity.to_lowercase()).or_default().insert(ty.to_string());
    }

    pub fn add_supertype(&mut self, ty: &str, supertype: &str) {
        self.supertypes.entry(ty.to_string()).or_default().insert(supertype.to_string());
    }

    pub fn is_empty(&self) -> bool {
        self.entity_types.is_empty() && self.supertypes.is_empty()
    }

    pub fn knows_entity(&self, entity: &str) -> bool {
        self.entity_types.contains_key(&entity.to_lowercase())
    }

    /// Fails if the type hierarchy has a cycle.
    pub fn validate(&self) -> Result<(), LexiconError> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: BTreeMap<&str, u8> = BTreeMap::new();
        fn visit<'a>(
            t: &'a str,
            sup: &'a BTreeMap<String, BTreeSet<String>>,
            state: &mut BTreeMap<&'a str, u8>,
        ) -> Result<(), LexiconError> {
            match state.get(t) {
                Some(1) => return Err(LexiconError::Cycle(t.to_string())),
                Some(2) => return Ok(()),
                _ => {}
            }
            state.insert(t, 1);
            if let Some(ss) = sup.get(t) {
                for s in ss {
                    visit(s, sup, state)?;
                }
            }
            state.insert(t, 2);
            Ok(())
        }
        for t in self.supertypes.keys() {
            visit(t, &self.supertypes, &mut state)?;
        }
        Ok(())
    }

    /// Reflexive-transitive supertypes of `ty`.
    pub fn ancestors(&self, ty: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![ty.to_string()];
        while let Some(t) = stack.pop() {
            if seen.insert(t.clone()) {
                if let Some(ss) = self.supertypes.get(&t) {
                    stack.extend(ss.iter().cloned());
                }
            }
        }
        seen
    }

    /// Hierarchy edges reachable upwards from `ty`, as (type, supertype).
    pub fn supertype_chain(&self, ty: &str) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for t in self.ancestors(ty) {
            if let Some(ss) = self.supertypes.get(&t) {
                out.extend(ss.iter().map(|s| (t.clone(), s.clone())));
            }
        }
        out
    }

    /// Most specific recorded type of `entity`. Incomparable candidates are
    /// resolved by taking the lexicographically smallest name.
    pub fn most_specific_parent(&self, entity: &str) -> Option<String> {
        let types = self.entity_types.get(&entity.to_lowercase())?;
        types.iter().filter(|t| !types.iter().any(|u| u != *t && self.ancestors(u).contains(*t))).min().cloned()
    }

    /// Most specific common ancestor of the entities' most specific parents,
    /// or [`THING`] when they share none.
    pub fn least_common_msp<S: AsRef<str>>(&self, entities: &[S]) -> Result<String, LexiconError> {
        let mut common: Option<BTreeSet<String>> = None;
        for e in entities {
            let msp = self
                .most_specific_parent(e.as_ref())
                .ok_or_else(|| LexiconError::UnknownEntity(e.as_ref().to_string()))?;
            let anc = self.ancestors(&msp);
            common = Some(match common {
                None => anc,
                Some(c) => c.intersection(&anc).cloned().collect(),
            });
        }
        let common = common.ok_or(LexiconError::EmptyInput)?;
        let best = common.iter().filter(|c| common.iter().all(|d| self.ancestors(c).contains(d))).min().or_else(|| {
            common.iter().filter(|c| !common.iter().any(|u| u != *c && self.ancestors(u).contains(*c))).min()
        });
        Ok(best.cloned().unwrap_or_else(|| THING.to_string()))
    }

    /// True when the types whose labels are `sub` and `sup` are related in the
    /// hierarchy. Labels are compared after CamelCase normalization.
    pub fn label_is_subtype(&self, sub: &str, sup: &str) -> bool {
        let names: BTreeSet<&String> = self.supertypes.keys().chain(self.supertypes.values().flatten()).collect();
        let same = |a: &str, b: &str| make_label(&[a]).ok().as_deref() == Some(b);
        names.iter().filter(|t| same(t, sub)).any(|t| self.ancestors(t).iter().any(|a| a != *t && same(a, sup)))
    }
}
