//! Independent satisfiability oracle: exhaustive search for a finite model.

use std::collections::{BTreeSet, HashMap};

use isa2dl::dl::{Axiom, Concept, KnowledgeBase};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
pub const ROLES: [&str; 3] = ["r", "hasProperty", "hasState"];

pub fn random_concept(rng: &mut ChaCha8Rng, depth: u32, roles: &[&str]) -> Concept {
    if depth == 0 || rng.gen_bool(0.3) {
        let a = Concept::atomic(ATOMS[rng.gen_range(0..ATOMS.len())]);
        return match rng.gen_range(0..10) {
            0 => Concept::Top,
            1 => Concept::Bottom,
            2..=4 => Concept::not(a),
            _ => a,
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_concept(rng, depth - 1, roles);
    match rng.gen_range(0..5) {
        0 => Concept::not(sub(rng)),
        1 => Concept::and(sub(rng), sub(rng)),
        2 => Concept::or(sub(rng), sub(rng)),
        k => {
            let role = roles[rng.gen_range(0..roles.len())];
            if k == 3 {
                Concept::all(role, sub(rng))
            } else {
                Concept::some(role, sub(rng))
            }
        }
    }
}

/// Two of `ROLES`, so that every generated problem has at most two.
pub fn random_roles(rng: &mut ChaCha8Rng) -> Vec<&'static str> {
    let skip = rng.gen_range(0..ROLES.len());
    ROLES.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| *r).collect()
}

/// A TBox of one to four axioms over `ATOMS`.
pub fn random_kb(rng: &mut ChaCha8Rng, roles: &[&str]) -> KnowledgeBase {
    let mut kb = KnowledgeBase::new();
    let n = rng.gen_range(1..=4);
    for _ in 0..n {
        let ax = match rng.gen_range(0..6) {
            0 => Axiom::Definition(ATOMS[rng.gen_range(0..ATOMS.len())].to_string(), random_concept(rng, 3, roles)),
            1 => {
                Axiom::Equivalence(Concept::atomic(ATOMS[rng.gen_range(0..ATOMS.len())]), random_concept(rng, 3, roles))
            }
            _ => Axiom::sub(random_concept(rng, 3, roles), random_concept(rng, 3, roles)),
        };
        kb.tbox.insert(ax);
    }
    kb
}

pub fn roles_of(kb: &KnowledgeBase, extra: &[&Concept]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for ax in &kb.tbox {
        for (c, d) in ax.inclusions() {
            c.roles(&mut out);
            d.roles(&mut out);
        }
    }
    for c in extra {
        c.roles(&mut out);
    }
    out
}

/// Tseitin encoding of a ground problem over a domain of `n` elements.
struct Encoder {
    n: usize,
    clauses: Vec<Vec<i32>>,
    vars: i32,
    truth: i32,
    memo: HashMap<(Concept, usize), i32>,
    atoms: HashMap<(String, usize), i32>,
    edges: HashMap<(String, usize, usize), i32>,
}

impl Encoder {
    fn new(n: usize) -> Self {
        let mut e = Encoder {
            n,
            clauses: Vec::new(),
            vars: 0,
            truth: 0,
            memo: HashMap::new(),
            atoms: HashMap::new(),
            edges: HashMap::new(),
        };
        e.truth = e.fresh();
        e.clauses.push(vec![e.truth]);
        e
    }

    fn fresh(&mut self) -> i32 {
        self.vars += 1;
        self.vars
    }

    fn edge(&mut self, r: &str, x: usize, y: usize) -> i32 {
        if let Some(&v) = self.edges.get(&(r.to_string(), x, y)) {
            return v;
        }
        let v = self.fresh();
        self.edges.insert((r.to_string(), x, y), v);
        v
    }

    fn and_n(&mut self, lits: &[i32]) -> i32 {
        let v = self.fresh();
        let mut back = vec![v];
        for &l in lits {
            self.clauses.push(vec![-v, l]);
            back.push(-l);
        }
        self.clauses.push(back);
        v
    }

    fn or_n(&mut self, lits: &[i32]) -> i32 {
        -self.and_n(&lits.iter().map(|l| -l).collect::<Vec<_>>())
    }

    fn lit(&mut self, c: &Concept, x: usize) -> i32 {
        if let Some(&v) = self.memo.get(&(c.clone(), x)) {
            return v;
        }
        let v = match c {
            Concept::Top => self.truth,
            Concept::Bottom => -self.truth,
            Concept::Atomic(a) => match self.atoms.get(&(a.clone(), x)) {
                Some(&v) => v,
                None => {
                    let v = self.fresh();
                    self.atoms.insert((a.clone(), x), v);
                    v
                }
            },
            Concept::Nominal(_) => panic!("oracle has no nominals"),
            Concept::Not(d) => -self.lit(d, x),
            Concept::And(a, b) => {
                let (a, b) = (self.lit(a, x), self.lit(b, x));
                self.and_n(&[a, b])
            }
            Concept::Or(a, b) => {
                let (a, b) = (self.lit(a, x), self.lit(b, x));
                self.or_n(&[a, b])
            }
            Concept::All(r, d) => {
                let mut parts = Vec::new();
                for y in 0..self.n {
                    let (e, dy) = (self.edge(r, x, y), self.lit(d, y));
                    parts.push(self.or_n(&[-e, dy]));
                }
                self.and_n(&parts)
            }
            Concept::Some(r, d) => {
                let mut parts = Vec::new();
                for y in 0..self.n {
                    let (e, dy) = (self.edge(r, x, y), self.lit(d, y));
                    parts.push(self.and_n(&[e, dy]));
                }
                self.or_n(&parts)
            }
        };
        self.memo.insert((c.clone(), x), v);
        v
    }
}

#[derive(PartialEq)]
enum Prop {
    Conflict,
    Sat,
    /// Shortest open clause length and a primary literal in it.
    Open(Option<(usize, i32)>),
}

fn propagate(clauses: &[Vec<i32>], primary: &[bool], assign: &mut [i8]) -> Prop {
    let value = |assign: &[i8], l: i32| assign[l.unsigned_abs() as usize] * l.signum() as i8;
    loop {
        let mut changed = false;
        let mut open_left = false;
        let mut pick: Option<(usize, i32)> = None;
        for cl in clauses {
            let (mut n_open, mut open, mut prim) = (0, 0, None);
            if cl.iter().any(|&l| value(assign, l) == 1) {
                continue;
            }
            for &l in cl {
                if value(assign, l) == 0 {
                    n_open += 1;
                    open = l;
                    if primary[l.unsigned_abs() as usize] {
                        prim = Some(l);
                    }
                }
            }
            match n_open {
                0 => return Prop::Conflict,
                1 => {
                    assign[open.unsigned_abs() as usize] = open.signum() as i8;
                    changed = true;
                }
                _ => {
                    open_left = true;
                    if let Some(l) = prim {
                        if pick.is_none_or(|(n, _)| n_open < n) {
                            pick = Some((n_open, l));
                        }
                    }
                }
            }
        }
        if !changed {
            return if open_left { Prop::Open(pick) } else { Prop::Sat };
        }
    }
}

/// DPLL with unit propagation and failed-literal probing; `assign[v]` is
/// 0, 1 or -1. Decisions are made on primary variables only, which fix
/// every gate by propagation.
fn dpll(clauses: &[Vec<i32>], primary: &[bool], assign: &mut Vec<i8>) -> bool {
    let pick = 'outer: loop {
        let pick = match propagate(clauses, primary, assign) {
            Prop::Conflict => return false,
            Prop::Sat => return true,
            Prop::Open(p) => p,
        };
        for v in 1..assign.len() {
            if !primary[v] || assign[v] != 0 {
                continue;
            }
            for sign in [1i8, -1] {
                let mut probe = assign.clone();
                probe[v] = sign;
                if propagate(clauses, primary, &mut probe) == Prop::Conflict {
                    assign[v] = -sign;
                    continue 'outer;
                }
            }
        }
        break pick;
    };
    let l = match pick {
        Some((_, l)) => l,
        None => (1..assign.len()).find(|&v| primary[v] && assign[v] == 0).expect("gates follow primaries") as i32,
    };
    for choice in [l, -l] {
        let mut next = assign.clone();
        next[choice.unsigned_abs() as usize] = choice.signum() as i8;
        if dpll(clauses, primary, &mut next) {
            *assign = next;
            return true;
        }
    }
    false
}

/// Outcome of searching for a model of `kb` with a nonempty `query`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSearch {
    Found(usize),
    NoneUpTo(usize),
}

/// Exhaustive over every interpretation with at most `max_domain` elements.
pub fn find_model(kb: &KnowledgeBase, query: &Concept, max_domain: usize) -> ModelSearch {
    let roles = roles_of(kb, &[query]);
    for n in 1..=max_domain {
        let mut e = Encoder::new(n);
        let q: Vec<i32> = (0..n).map(|x| e.lit(query, x)).collect();
        e.clauses.push(q);
        for ax in &kb.tbox {
            for (c, d) in ax.inclusions() {
                for x in 0..n {
                    let (lc, ld) = (e.lit(&c, x), e.lit(&d, x));
                    e.clauses.push(vec![-lc, ld]);
                }
            }
        }
        for r in &roles {
            for sup in kb.super_roles(r).iter().filter(|s| *s != r && roles.contains(*s)) {
                for x in 0..n {
                    for y in 0..n {
                        let (a, b) = (e.edge(r, x, y), e.edge(sup, x, y));
                        e.clauses.push(vec![-a, b]);
                    }
                }
            }
        }
        let mut primary = vec![false; e.vars as usize + 1];
        for &v in e.atoms.values().chain(e.edges.values()) {
            primary[v as usize] = true;
        }
        let mut assign = vec![0i8; e.vars as usize + 1];
        if dpll(&e.clauses, &primary, &mut assign) {
            return ModelSearch::Found(n);
        }
    }
    ModelSearch::NoneUpTo(max_domain)
}
#[derive(Debug, Default)]
pub struct OracleStats {
    pub kbs: usize,
    pub queries: usize,
    /// Queries the reasoner did not find satisfiable.
    pub refuted: usize,
    pub models_found: usize,
    pub violations: Vec<String>,
    pub order_failures: Vec<String>,
}

/// Random KBs checked against model search, plus reflexivity and
/// transitivity of `subsumes` over their atoms.
pub fn run_oracle(seed: u64, n_kbs: usize) -> OracleStats {
    use isa2dl::reason::{is_satisfiable, subsumes};
    use rand::SeedableRng;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = OracleStats { kbs: n_kbs, ..OracleStats::default() };
    for k in 0..n_kbs {
        let roles = random_roles(&mut rng);
        let kb = random_kb(&mut rng, &roles);
        let mut queries: Vec<Concept> = (0..3).map(|_| random_concept(&mut rng, 3, &roles)).collect();
        queries.extend(ATOMS.iter().map(|a| Concept::atomic(*a)));
        for q in &queries {
            st.queries += 1;
            let verdict = is_satisfiable(&kb, q);
            if verdict != Ok(true) {
                st.refuted += 1;
            }
            if let ModelSearch::Found(_) = find_model(&kb, q, 3) {
                st.models_found += 1;
                if verdict != Ok(true) {
                    st.violations.push(format!("kb #{k}:\n{}query {q}: {verdict:?}", kb.serialize()));
                }
            }
        }
        let names: Vec<Concept> = ATOMS.iter().map(|a| Concept::atomic(*a)).collect();
        let mut rel = vec![vec![false; names.len()]; names.len()];
        for (i, c) in names.iter().enumerate() {
            for (j, d) in names.iter().enumerate() {
                rel[i][j] = subsumes(&kb, c, d) == Ok(true);
            }
            if !rel[i][i] {
                st.order_failures.push(format!("kb #{k}: {c} not reflexive"));
            }
        }
        for i in 0..names.len() {
            for j in 0..names.len() {
                for l in 0..names.len() {
                    if rel[i][j] && rel[j][l] && !rel[i][l] {
                        st.order_failures
                            .push(format!("kb #{k}: {} {} {} not transitive", names[i], names[j], names[l]));
                    }
                }
            }
        }
    }
    st
}

/// Names `N0`..`N11`, for classification checks.
pub fn class_names() -> Vec<String> {
    (0..12).map(|i| format!("N{i}")).collect()
}

/// A TBox shaped like compiled sentences: mostly named inclusions, some
/// definitions, disjointness, disjunctions and existentials.
pub fn random_taxonomy_kb(rng: &mut ChaCha8Rng) -> KnowledgeBase {
    let names = class_names();
    let mut kb = KnowledgeBase::new();
    let n = rng.gen_range(4..=14);
    for _ in 0..n {
        let mut pick = || Concept::atomic(names[rng.gen_range(0..names.len())].clone());
        let (a, b, c) = (pick(), pick(), pick());
        let role = if rng.gen_bool(0.5) { "hasProperty" } else { "hasState" };
        let ax = match rng.gen_range(0..10) {
            0..=3 => Axiom::sub(a, b),
            4 => Axiom::sub(a, Concept::and(b, c)),
            5 => Axiom::Equivalence(a, Concept::and(b, c)),
            6 => Axiom::Definition(a.as_atomic().unwrap().to_string(), Concept::and(b, Concept::some(role, c))),
            7 => Axiom::sub(a, Concept::not(b)),
            8 => Axiom::sub(a, Concept::or(b, c)),
            _ => Axiom::sub(Concept::some(role, b), c),
        };
        kb.tbox.insert(ax);
    }
    kb
}

/// Pairs where the classified taxonomy and pairwise `subsumes` disagree.
pub fn classification_mismatches(kb: &KnowledgeBase) -> Vec<String> {
    use isa2dl::reason::{subsumes, Budget, Reasoner};
    let tax = Reasoner::new(kb, Budget::default()).classify();
    let closure = tax.closure();
    let names = kb.concept_names();
    let mut out = Vec::new();
    for a in &names {
        for b in &names {
            let pairwise = subsumes(kb, &Concept::atomic(a.clone()), &Concept::atomic(b.clone())) == Ok(true);
            let classified = closure.get(a).is_some_and(|s| s.contains(b));
            if pairwise != classified {
                out.push(format!("{a} [= {b}: pairwise {pairwise}, classified {classified}"));
            }
        }
    }
    out
}
