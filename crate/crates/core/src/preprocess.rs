//! Turns documents or pre-tagged lines into normalized token sequences.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lexicon::{CanonicalQuantifier, HypernymLexicon, IsaMarker, VariationTables};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PreprocessError {
    #[error("token `{0}` has no `/TAG` suffix")]
    MalformedToken(String),
    #[error("unknown tag `{tag}` on token `{token}`")]
    UnknownTag { token: String, tag: String },
    #[error("empty sentence")]
    Empty,
}

/// Penn Treebank tags in the working set.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    NN,
    NNS,
    NNP,
    NNPS,
    JJ,
    RB,
    VBG,
    DT,
    CD,
    VBZ,
    VBD,
    VBP,
    IN,
    CC,
    WDT,
    WP,
    WRB,
    Comma,
    Stop,
    Colon,
}

impl Tag {
    pub fn code(self) -> &'static str {
        match self {
            Tag::NN => "NN",
            Tag::NNS => "NNS",
            Tag::NNP => "NNP",
            Tag::NNPS => "NNPS",
            Tag::JJ => "JJ",
            Tag::RB => "RB",
            Tag::VBG => "VBG",
            Tag::DT => "DT",
            Tag::CD => "CD",
            Tag::VBZ => "VBZ",
            Tag::VBD => "VBD",
            Tag::VBP => "VBP",
            Tag::IN => "IN",
            Tag::CC => "CC",
            Tag::WDT => "WDT",
            Tag::WP => "WP",
            Tag::WRB => "WRB",
            Tag::Comma => ",",
            Tag::Stop => ".",
            Tag::Colon => ":",
        }
    }

    pub fn is_noun(self) -> bool {
        matches!(self, Tag::NN | Tag::NNS | Tag::NNP | Tag::NNPS)
    }

    pub fn is_copula(self) -> bool {
        matches!(self, Tag::VBZ | Tag::VBD | Tag::VBP)
    }

    pub fn is_punct(self) -> bool {
        matches!(self, Tag::Comma | Tag::Stop | Tag::Colon)
    }

    pub fn is_clausal(self) -> bool {
        matches!(self, Tag::WDT | Tag::WP | Tag::WRB)
    }

    /// The tag a content word takes once plurality is folded into the lemma.
    pub fn core(self) -> Tag {
        match self {
            Tag::NNS => Tag::NN,
            Tag::NNPS => Tag::NNP,
            t => t,
        }
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "NN" => Tag::NN,
            "NNS" => Tag::NNS,
            "NNP" => Tag::NNP,
            "NNPS" => Tag::NNPS,
            "JJ" => Tag::JJ,
            "RB" => Tag::RB,
            "VBG" => Tag::VBG,
            "DT" => Tag::DT,
            "CD" => Tag::CD,
            "VBZ" => Tag::VBZ,
            "VBD" => Tag::VBD,
            "VBP" => Tag::VBP,
            "IN" => Tag::IN,
            "CC" => Tag::CC,
            "WDT" => Tag::WDT,
            "WP" => Tag::WP,
            "WRB" => Tag::WRB,
            "," => Tag::Comma,
            "." => Tag::Stop,
            ":" => Tag::Colon,
            other => return Err(other.to_string()),
        })
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub tag: Tag,
    pub lemma: String,
    /// Set on tokens that normalization collapsed into a quantifier.
    pub quantifier: Option<CanonicalQuantifier>,
    /// Set on tokens that normalization fused into an IS-A marker.
    pub marker: Option<IsaMarker>,
}

impl Token {
    pub fn new(surface: &str, tag: Tag) -> Self {
        Token { surface: surface.to_string(), tag, lemma: lemmatize(surface, tag), quantifier: None, marker: None }
    }

    pub fn is_word(&self, w: &str) -> bool {
        self.surface.eq_ignore_ascii_case(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SourceId {
    pub document: usize,
    pub sentence: usize,
}

impl fmt::Display for SourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.document, self.sentence)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSeq {
    pub tokens: Vec<Token>,
    pub source_id: SourceId,
}

impl TokenSeq {
    pub fn new(tokens: Vec<Token>) -> Self {
        TokenSeq { tokens, source_id: SourceId::default() }
    }

    pub fn with_source(mut self, source_id: SourceId) -> Self {
        self.source_id = source_id;
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Renders back to the `surface/TAG` line format.
    pub fn render(&self) -> String {
        self.tokens.iter().map(|t| format!("{}/{}", t.surface.replace(' ', "_"), t.tag)).collect::<Vec<_>>().join(" ")
    }
}

const COPULAS: [&str; 6] = ["is", "are", "am", "was", "were", "be"];

const PLURAL_EXCEPTIONS: [(&str, &str); 24] = [
    ("men", "man"),
    ("women", "woman"),
    ("children", "child"),
    ("people", "person"),
    ("mice", "mouse"),
    ("geese", "goose"),
    ("teeth", "tooth"),
    ("feet", "foot"),
    ("oxen", "ox"),
    ("wolves", "wolf"),
    ("leaves", "leaf"),
    ("knives", "knife"),
    ("lives", "life"),
    ("halves", "half"),
    ("calves", "calf"),
    ("cacti", "cactus"),
    ("fungi", "fungus"),
    ("species", "species"),
    ("sheep", "sheep"),
    ("deer", "deer"),
    ("fish", "fish"),
    ("series", "series"),
    ("whales", "whale"),
    ("horses", "horse"),
];

/// Rule-based plural stripping with an exceptions table.
pub fn singularize(word: &str) -> String {
    let w = word.to_lowercase();
    if let Some((_, s)) = PLURAL_EXCEPTIONS.iter().find(|(p, _)| *p == w) {
        return s.to_string();
    }
    if let Some(stem) = w.strip_suffix("ies") {
        if stem.len() > 1 {
            return format!("{stem}y");
        }
    }
    for suffix in ["sses", "shes", "ches", "xes", "zes", "oes"] {
        if w.ends_with(suffix) {
            return w[..w.len() - 2].to_string();
        }
    }
    if w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is") && w.len() > 3 {
        return w[..w.len() - 1].to_string();
    }
    w
}

fn lemmatize(surface: &str, tag: Tag) -> String {
    match tag {
        Tag::NNS => singularize(surface),
        Tag::NNPS => {
            let s = singularize(surface);
            let mut c = s.chars();
            c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
        }
        Tag::NNP => surface.to_string(),
        _ if tag.is_copula() && COPULAS.contains(&surface.to_lowercase().as_str()) => "be".to_string(),
        _ => surface.to_lowercase(),
    }
}

/// Splits raw text into sentences on terminal punctuation. Commas, colons and
/// semicolons are kept; quotes, brackets and emphasis marks are dropped.
pub fn segment(document: &str) -> Vec<String> {
    let chars: Vec<char> = document.chars().collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut flush = |cur: &mut String| {
        let s = cur.split_whitespace().collect::<Vec<_>>().join(" ");
        let s = s.trim_end_matches([',', ';', ':', ' ']).to_string();
        if s.chars().any(char::is_alphanumeric) {
            out.push(s);
        }
        cur.clear();
    };
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '.' | '!' | '?' => {
                let at_boundary = chars.get(i + 1).is_none_or(|n| n.is_whitespace() || *n == '"' || *n == '\'');
                if at_boundary {
                    flush(&mut cur);
                } else if c == '.' {
                    cur.push(c);
                }
            }
            '"' | '\u{201c}' | '\u{201d}' | '(' | ')' | '[' | ']' | '*' | '_' => cur.push(' '),
            _ => cur.push(c),
        }
    }
    flush(&mut cur);
    out
}

/// Parses one `surface/TAG surface/TAG …` line. Underscores in a surface stand
/// for spaces, so `black_hole/NN` is a single compound token.
pub fn ingest_tagged(line: &str) -> Result<TokenSeq, PreprocessError> {
    let mut tokens = Vec::new();
    for raw in line.split_whitespace() {
        let (surface, tag) = raw.rsplit_once('/').ok_or_else(|| PreprocessError::MalformedToken(raw.to_string()))?;
        if surface.is_empty() || tag.is_empty() {
            return Err(PreprocessError::MalformedToken(raw.to_string()));
        }
        let tag: Tag = tag.parse().map_err(|tag| PreprocessError::UnknownTag { token: raw.to_string(), tag })?;
        tokens.push(Token::new(&surface.replace('_', " "), tag));
    }
    while tokens.last().is_some_and(|t| t.tag == Tag::Stop) {
        tokens.pop();
    }
    if tokens.is_empty() {
        return Err(PreprocessError::Empty);
    }
    Ok(TokenSeq::new(tokens))
}

/// Clausal-token rewriting, marker fusion and quantifier collapsing.
pub fn normalize_tokens(seq: &TokenSeq, tables: &VariationTables) -> TokenSeq {
    let toks = &seq.tokens;
    let mut out: Vec<Token> = Vec::with_capacity(toks.len());
    let mut i = 0;
    while i < toks.len() {
        let t = &toks[i];
        if t.marker.is_some() || t.quantifier.is_some() {
            out.push(t.clone());
            i += 1;
            continue;
        }
        if t.tag.is_clausal() {
            let mut c = Token::new("that", Tag::WDT);
            c.lemma = "that".into();
            out.push(c);
            i += 1;
            continue;
        }
        let words: Vec<&str> = toks[i..]
            .iter()
            .take_while(|t| t.marker.is_none() && t.quantifier.is_none() && !t.tag.is_punct())
            .map(|t| t.surface.as_str())
            .collect();
        if !t.tag.is_noun() {
            if let Some((m, len)) = tables.match_marker(&words) {
                let surface = m.surface.clone();
                out.push(Token { lemma: surface.clone(), surface, tag: t.tag, quantifier: None, marker: Some(m) });
                i += len;
                continue;
            }
        }
        if matches!(t.tag, Tag::DT | Tag::JJ | Tag::RB | Tag::CD | Tag::IN) {
            if let Some((q, len)) = tables.match_quantifier(&words) {
                let surface = words[..len].join(" ").to_lowercase();
                out.push(Token { lemma: surface.clone(), surface, tag: Tag::DT, quantifier: Some(q), marker: None });
                i += len;
                continue;
            }
        }
        out.push(t.clone());
        i += 1;
    }
    // [Q]* = [Q]: keep the last quantifier of a run
    let mut collapsed: Vec<Token> = Vec::with_capacity(out.len());
    for t in out {
        if t.quantifier.is_some() && collapsed.last().is_some_and(|p| p.quantifier.is_some()) {
            collapsed.pop();
        }
        collapsed.push(t);
    }
    TokenSeq { tokens: collapsed, source_id: seq.source_id }
}

const ADJECTIVES: &[&str] = &[
    "huge",
    "sweet",
    "beautiful",
    "healthy",
    "round",
    "hungry",
    "intelligent",
    "clever",
    "uncivilized",
    "herbivorous",
    "carnivorous",
    "omnivorous",
    "wild",
    "big",
    "small",
    "yellow",
    "red",
    "black",
    "white",
    "brown",
    "long-haired",
    "happy",
    "sad",
    "large",
    "tiny",
    "warm-blooded",
    "cold-blooded",
    "aquatic",
    "nocturnal",
    "domestic",
    "fast",
    "slow",
    "tall",
    "short",
    "heavy",
    "dangerous",
    "poisonous",
    "extinct",
    "green",
    "blue",
    "old",
    "young",
    "rare",
    "common",
    "social",
    "furry",
    "flightless",
    "edible",
    "cute",
    "friendly",
    "loyal",
    "smart",
    "strong",
    "marine",
    "terrestrial",
    "venomous",
    "toxic",
    "ancient",
    "famous",
    "good",
    "bad",
    "same",
    "similar",
    "equivalent",
    "identical",
    "akin",
    "comparable",
    "alike",
    "such",
    "known",
    "called",
    "persian",
    "hairy",
    "fierce",
    "gentle",
    "playful",
    "curious",
    "lazy",
    "brave",
];

const FUNCTION_WORDS: &[(&str, Tag)] = &[
    ("which", Tag::WDT),
    ("who", Tag::WP),
    ("whom", Tag::WP),
    ("where", Tag::WRB),
    ("and", Tag::CC),
    ("or", Tag::CC),
    ("but", Tag::CC),
    ("yet", Tag::CC),
    ("either", Tag::CC),
    ("nor", Tag::CC),
    ("is", Tag::VBZ),
    ("am", Tag::VBP),
    ("are", Tag::VBP),
    ("was", Tag::VBD),
    ("were", Tag::VBD),
    ("includes", Tag::VBZ),
    ("include", Tag::VBP),
    ("included", Tag::VBD),
    ("comprises", Tag::VBZ),
    ("comprise", Tag::VBP),
    ("resembles", Tag::VBZ),
    ("resemble", Tag::VBP),
    ("resembled", Tag::VBD),
    ("not", Tag::RB),
    ("no", Tag::DT),
    ("only", Tag::RB),
    ("of", Tag::IN),
    ("as", Tag::IN),
    ("to", Tag::IN),
    ("for", Tag::IN),
    ("like", Tag::IN),
    ("than", Tag::IN),
    ("among", Tag::IN),
    ("also", Tag::RB),
    ("otherwise", Tag::RB),
];

/// Closed-lexicon tagger for raw-text mode. Best effort: marker and
/// quantifier words first, then capitalization, then word lists and suffixes.
pub fn fallback_tag(sentence: &str, tables: &VariationTables, hypernyms: &HypernymLexicon) -> TokenSeq {
    let mut words: Vec<String> = Vec::new();
    for w in sentence.split_whitespace() {
        let mut w = w;
        let mut trailing = Vec::new();
        while let Some(stripped) = w.strip_suffix([',', ';', ':', '.']) {
            trailing.push(&w[stripped.len()..]);
            w = stripped;
        }
        if !w.is_empty() {
            words.push(w.to_string());
        }
        words.extend(trailing.into_iter().rev().map(str::to_string));
    }
    while words.last().is_some_and(|w| w == ".") {
        words.pop();
    }
    let tokens = words.iter().enumerate().map(|(i, w)| Token::new(w, guess_tag(w, i, tables, hypernyms))).collect();
    TokenSeq::new(tokens)
}

fn guess_tag(word: &str, index: usize, tables: &VariationTables, hypernyms: &HypernymLexicon) -> Tag {
    match word {
        "," | ";" => return Tag::Comma,
        ":" => return Tag::Colon,
        "." => return Tag::Stop,
        _ => {}
    }
    let lw = word.to_lowercase();
    if lw == "that" {
        return if index == 0 { Tag::DT } else { Tag::WDT };
    }
    if let Some((_, t)) = FUNCTION_WORDS.iter().find(|(w, _)| *w == lw) {
        return *t;
    }
    if tables.is_quantifier_word(&lw) {
        let numeral = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];
        return if numeral.contains(&lw.as_str()) { Tag::CD } else { Tag::DT };
    }
    if tables.is_marker_word(&lw) && lw.ends_with('s') && !ADJECTIVES.contains(&lw.as_str()) && lw.len() > 3 {
        // e.g. "resembles"; nouns in marker phrases ("kind", "class") fall through
        if tables.marker(&lw).is_some() {
            return Tag::VBZ;
        }
    }
    let capitalized = word.chars().next().is_some_and(char::is_uppercase);
    if hypernyms.knows_entity(word) || (capitalized && index > 0) {
        return Tag::NNP;
    }
    if ADJECTIVES.contains(&lw.as_str()) {
        return Tag::JJ;
    }
    if lw.ends_with("ly") && lw.len() > 3 {
        return Tag::RB;
    }
    if lw.ends_with("ing") && lw.len() > 4 {
        return Tag::VBG;
    }
    if lw.chars().all(|c| c.is_ascii_digit()) {
        return Tag::CD;
    }
    if lw.len() > 3 && lw.ends_with('s') && !lw.ends_with("ss") && !lw.ends_with("us") && !lw.ends_with("is") {
        return Tag::NNS;
    }
    Tag::NN
}
