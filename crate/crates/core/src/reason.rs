//! Tableau reasoning for ALCH with general inclusions: satisfiability,
//! subsumption, consistency and classification.
//!
//! Concepts are interned in NNF. Inclusions with an atomic (or partly atomic)
//! left side are absorbed into lazy unfolding rules; everything else is
//! internalized as a global constraint. Without inverse roles a node's
//! satisfiability only depends on its own label and its ancestors, so the
//! completion tree is explored depth first, one successor at a time.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::dl::{Axiom, Concept, KnowledgeBase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: usize,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 100_000, max_time: Duration::from_secs(5) }
    }
}

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum ReasonError {
    #[error("reasoning budget exhausted")]
    ResourceLimit,
}

type Id = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Top,
    Bot,
    Pos(Id),
    Neg(Id),
    And(Vec<Id>),
    Or(Vec<Id>),
    All(Id, Id),
    Some(Id, Id),
}

#[derive(Debug, Default)]
struct Pool {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    names: Vec<String>,
    name_index: HashMap<String, Id>,
    roles: Vec<String>,
    role_index: HashMap<String, Id>,
    negations: HashMap<Id, Id>,
}

fn symbol(table: &mut Vec<String>, index: &mut HashMap<String, Id>, s: &str) -> Id {
    if let Some(&i) = index.get(s) {
        return i;
    }
    let i = table.len() as Id;
    table.push(s.to_string());
    index.insert(s.to_string(), i);
    i
}

impl Pool {
    fn node(&self, id: Id) -> &Node {
        &self.nodes[id as usize]
    }

    fn put(&mut self, n: Node) -> Id {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        let i = self.nodes.len() as Id;
        self.nodes.push(n.clone());
        self.index.insert(n, i);
        i
    }

    fn name(&mut self, s: &str) -> Id {
        symbol(&mut self.names, &mut self.name_index, s)
    }

    fn role(&mut self, s: &str) -> Id {
        symbol(&mut self.roles, &mut self.role_index, s)
    }

    fn top(&mut self) -> Id {
        self.put(Node::Top)
    }

    fn bot(&mut self) -> Id {
        self.put(Node::Bot)
    }

    fn atom(&mut self, s: &str) -> Id {
        let n = self.name(s);
        self.put(Node::Pos(n))
    }

    fn junction(&mut self, conj: bool, items: Vec<Id>) -> Id {
        let (unit, zero) = if conj { (Node::Top, Node::Bot) } else { (Node::Bot, Node::Top) };
        let mut flat: Vec<Id> = Vec::new();
        for i in items {
            match self.node(i) {
                Node::And(cs) if conj => flat.extend(cs.iter().copied()),
                Node::Or(cs) if !conj => flat.extend(cs.iter().copied()),
                n if *n == unit => {}
                n if *n == zero => return self.put(zero),
                _ => flat.push(i),
            }
        }
        flat.sort_unstable();
        flat.dedup();
        match flat.len() {
            0 => self.put(unit),
            1 => flat[0],
            _ if conj => self.put(Node::And(flat)),
            _ => self.put(Node::Or(flat)),
        }
    }

    fn intern(&mut self, c: &Concept) -> Id {
        match c {
            Concept::Top => self.top(),
            Concept::Bottom => self.bot(),
            Concept::Atomic(n) => self.atom(n),
            Concept::Nominal(a) => self.atom(&format!("{{{a}}}")),
            Concept::Not(inner) => {
                let i = self.intern(inner);
                self.neg(i)
            }
            Concept::And(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                self.junction(true, vec![a, b])
            }
            Concept::Or(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                self.junction(false, vec![a, b])
            }
            Concept::All(r, c) => {
                let (r, c) = (self.role(r), self.intern(c));
                self.put(Node::All(r, c))
            }
            Concept::Some(r, c) => {
                let (r, c) = (self.role(r), self.intern(c));
                self.put(Node::Some(r, c))
            }
        }
    }

    /// NNF of the complement.
    fn neg(&mut self, id: Id) -> Id {
        if let Some(&n) = self.negations.get(&id) {
            return n;
        }
        let n = match self.node(id).clone() {
            Node::Top => self.bot(),
            Node::Bot => self.top(),
            Node::Pos(a) => self.put(Node::Neg(a)),
            Node::Neg(a) => self.put(Node::Pos(a)),
            Node::And(cs) => {
                let ns = cs.into_iter().map(|c| self.neg(c)).collect();
                self.junction(false, ns)
            }
            Node::Or(cs) => {
                let ns = cs.into_iter().map(|c| self.neg(c)).collect();
                self.junction(true, ns)
            }
            Node::All(r, c) => {
                let nc = self.neg(c);
                self.put(Node::Some(r, nc))
            }
            Node::Some(r, c) => {
                let nc = self.neg(c);
                self.put(Node::All(r, nc))
            }
        };
        self.negations.insert(id, n);
        self.negations.insert(n, id);
        n
    }

    fn complement_of_literal(&self, id: Id) -> Option<Id> {
        match self.node(id) {
            Node::Pos(a) => self.index.get(&Node::Neg(*a)).copied(),
            Node::Neg(a) => self.index.get(&Node::Pos(*a)).copied(),
            _ => None,
        }
    }

    /// Order in which disjuncts are tried: choices that fire nothing first,
    /// fresh successors last.
    fn branch_rank(&self, id: Id) -> u8 {
        match self.node(id) {
            Node::Neg(_) => 0,
            Node::All(..) => 1,
            Node::Pos(_) => 2,
            Node::Top | Node::Bot | Node::And(_) | Node::Or(_) => 3,
            Node::Some(..) => 4,
        }
    }
}

/// Node label: insertion-ordered members plus a membership bitset.
#[derive(Debug, Clone, Default)]
struct Label {
    items: Vec<Id>,
    bits: Vec<u64>,
}

impl Label {
    fn contains(&self, id: Id) -> bool {
        self.bits.get(id as usize / 64).is_some_and(|w| w >> (id % 64) & 1 == 1)
    }

    fn insert(&mut self, id: Id) -> bool {
        if self.contains(id) {
            return false;
        }
        let w = id as usize / 64;
        if self.bits.len() <= w {
            self.bits.resize(w + 1, 0);
        }
        self.bits[w] |= 1 << (id % 64);
        self.items.push(id);
        true
    }

    fn iter(&self) -> impl Iterator<Item = Id> + '_ {
        self.items.iter().copied()
    }

    fn contains_all(&self, ids: &[Id]) -> bool {
        ids.iter().all(|&i| self.contains(i))
    }
}

/// Tableau reasoner over a frozen snapshot of a knowledge base.
pub struct Reasoner {
    pool: Pool,
    unfold: HashMap<Id, Vec<Id>>,
    /// Rules fired by `¬A` for names absorbed with their definition.
    neg_unfold: HashMap<Id, Vec<Id>>,
    defined: Vec<Id>,
    globals: Vec<Id>,
    /// role -> reflexive-transitive super-roles
    role_sups: HashMap<Id, HashSet<Id>>,
    budget: Budget,
    steps: usize,
    started: Instant,
    unsat_cache: HashSet<Vec<Id>>,
    last_root: Option<Label>,
    kb_names: BTreeSet<String>,
    individuals: BTreeMap<String, Vec<Concept>>,
    obligations: Vec<Concept>,
}

impl Reasoner {
    pub fn new(kb: &KnowledgeBase, budget: Budget) -> Self {
        let mut r = Reasoner {
            pool: Pool::default(),
            unfold: HashMap::new(),
            neg_unfold: HashMap::new(),
            defined: Vec::new(),
            globals: Vec::new(),
            role_sups: HashMap::new(),
            budget,
            steps: 0,
            started: Instant::now(),
            unsat_cache: HashSet::new(),
            last_root: None,
            kb_names: kb.concept_names(),
            individuals: BTreeMap::new(),
            obligations: kb.obligations.iter().cloned().collect(),
        };
        for role in kb.roles.keys() {
            let id = r.pool.role(role);
            let sups = kb.super_roles(role).iter().map(|s| r.pool.role(s)).collect();
            r.role_sups.insert(id, sups);
        }
        let mut plain: Vec<(Id, Id)> = Vec::new();
        let mut defs: Vec<(Id, Id)> = Vec::new();
        for ax in &kb.tbox {
            let def = match ax {
                Axiom::Definition(n, c) => Some((n.as_str(), c)),
                Axiom::Equivalence(a, c) | Axiom::Equivalence(c, a)
                    if a.as_atomic().is_some() && c.as_atomic().is_none() =>
                {
                    a.as_atomic().map(|n| (n, c))
                }
                _ => None,
            };
            match def {
                Some((n, c)) => {
                    let (a, c) = (r.pool.name(n), r.pool.intern(c));
                    defs.push((a, c));
                }
                None => {
                    for (c, d) in ax.inclusions() {
                        let (c, d) = (r.pool.intern(&c), r.pool.intern(&d));
                        plain.push((c, d));
                    }
                }
            }
        }
        let eligible = r.definitorial(&plain, &defs);
        for (c, d) in plain {
            r.absorb(c, d);
        }
        for (i, (a, c)) in defs.into_iter().enumerate() {
            let pa = r.pool.put(Node::Pos(a));
            if eligible[i] {
                let nc = r.pool.neg(c);
                r.unfold.entry(a).or_default().push(c);
                r.neg_unfold.entry(a).or_default().push(nc);
                r.defined.push(a);
            } else {
                r.absorb(pa, c);
                r.absorb(c, pa);
            }
        }
        for a in &kb.abox {
            r.individuals.entry(a.individual.clone()).or_default().push(a.concept.clone());
        }
        r
    }

    /// Which definitions `A ≡ C` can be unfolded both ways (`A → C` and
    /// `¬A → ¬C`): `A` has no other definition, triggers no other rule, and
    /// `C` does not depend on `A` through other such definitions.
    fn definitorial(&self, plain: &[(Id, Id)], defs: &[(Id, Id)]) -> Vec<bool> {
        let mut base = HashSet::new();
        for &(c, _) in plain {
            self.triggers(c, &mut base);
        }
        let mut seen: HashMap<Id, usize> = HashMap::new();
        for &(a, _) in defs {
            *seen.entry(a).or_default() += 1;
        }
        let deps: Vec<HashSet<Id>> = defs.iter().map(|&(_, c)| self.names_in(c)).collect();
        let mut eligible: Vec<bool> = defs.iter().map(|(a, _)| seen[a] == 1).collect();
        loop {
            let mut triggered = base.clone();
            for (i, &(a, c)) in defs.iter().enumerate() {
                if !eligible[i] {
                    triggered.insert(a);
                    self.triggers(c, &mut triggered);
                }
            }
            let by_name: HashMap<Id, usize> =
                defs.iter().enumerate().filter(|(i, _)| eligible[*i]).map(|(i, &(a, _))| (a, i)).collect();
            let mut changed = false;
            for (i, &(a, _)) in defs.iter().enumerate() {
                if !eligible[i] {
                    continue;
                }
                let mut stack: Vec<Id> = deps[i].iter().copied().collect();
                let mut visited = HashSet::new();
                let mut cyclic = false;
                while let Some(n) = stack.pop() {
                    if n == a {
                        cyclic = true;
                        break;
                    }
                    if visited.insert(n) {
                        if let Some(&j) = by_name.get(&n) {
                            stack.extend(deps[j].iter().copied());
                        }
                    }
                }
                if cyclic || triggered.contains(&a) {
                    eligible[i] = false;
                    changed = true;
                }
            }
            if !changed {
                return eligible;
            }
        }
    }

    /// Names whose presence fires the rule that `absorb` files for `c`.
    fn triggers(&self, c: Id, out: &mut HashSet<Id>) {
        match self.pool.node(c) {
            Node::Pos(a) => {
                out.insert(*a);
            }
            Node::Or(cs) => {
                for &ci in cs {
                    self.triggers(ci, out);
                }
            }
            Node::And(cs) => {
                if let Some(Node::Pos(a)) = cs.iter().map(|&x| self.pool.node(x)).find(|n| matches!(n, Node::Pos(_))) {
                    out.insert(*a);
                }
            }
            _ => {}
        }
    }

    fn names_in(&self, c: Id) -> HashSet<Id> {
        let mut out = HashSet::new();
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            match self.pool.node(x) {
                Node::Pos(a) | Node::Neg(a) => {
                    out.insert(*a);
                }
                Node::And(cs) | Node::Or(cs) => stack.extend(cs.iter().copied()),
                Node::All(_, f) | Node::Some(_, f) => stack.push(*f),
                Node::Top | Node::Bot => {}
            }
        }
        out
    }

    /// Files `c ⊑ d` as an unfolding rule when the left side has an atomic
    /// conjunct, otherwise as a global constraint `¬c ⊔ d`.
    fn absorb(&mut self, c: Id, d: Id) {
        match self.pool.node(c).clone() {
            Node::Bot => {}
            Node::Top => self.globals.push(d),
            Node::Pos(a) => self.unfold.entry(a).or_default().push(d),
            Node::Or(cs) => {
                for ci in cs {
                    self.absorb(ci, d);
                }
            }
            Node::And(cs) => {
                if let Some(pos) = cs.iter().position(|&x| matches!(self.pool.node(x), Node::Pos(_))) {
                    let Node::Pos(a) = *self.pool.node(cs[pos]) else { unreachable!() };
                    let rest: Vec<Id> = cs.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, &x)| x).collect();
                    let rest = self.pool.junction(true, rest);
                    let not_rest = self.pool.neg(rest);
                    let rule = self.pool.junction(false, vec![not_rest, d]);
                    self.unfold.entry(a).or_default().push(rule);
                } else {
                    let nc = self.pool.neg(c);
                    let g = self.pool.junction(false, vec![nc, d]);
                    self.globals.push(g);
                }
            }
            _ => {
                let nc = self.pool.neg(c);
                let g = self.pool.junction(false, vec![nc, d]);
                self.globals.push(g);
            }
        }
    }

    fn sups_of(&self, role: Id) -> HashSet<Id> {
        self.role_sups.get(&role).cloned().unwrap_or_else(|| HashSet::from([role]))
    }

    fn tick(&mut self) -> Result<(), ReasonError> {
        self.steps += 1;
        if self.steps > self.budget.max_nodes
            || (self.steps.is_multiple_of(256) && self.started.elapsed() > self.budget.max_time)
        {
            return Err(ReasonError::ResourceLimit);
        }
        Ok(())
    }

    fn sat_id(&mut self, id: Id) -> Result<bool, ReasonError> {
        self.steps = 0;
        self.started = Instant::now();
        self.last_root = None;
        let mut todo = self.globals.clone();
        todo.push(id);
        let key = {
            let mut k = todo.clone();
            k.sort_unstable();
            k.dedup();
            k
        };
        if self.unsat_cache.contains(&key) {
            return Ok(false);
        }
        let ok = self.expand(Label::default(), todo, &mut Vec::new())?;
        if !ok {
            self.unsat_cache.insert(key);
        }
        Ok(ok)
    }

    /// A disjunct that cannot hold next to `label`.
    fn refuted(&self, label: &Label, d: Id) -> bool {
        matches!(self.pool.node(d), Node::Bot) || self.pool.complement_of_literal(d).is_some_and(|n| label.contains(n))
    }

    fn expand(&mut self, mut label: Label, mut todo: Vec<Id>, ancestors: &mut Vec<Label>) -> Result<bool, ReasonError> {
        self.tick()?;
        loop {
            while let Some(c) = todo.pop() {
                if !label.insert(c) {
                    continue;
                }
                match self.pool.node(c) {
                    Node::Bot => return Ok(false),
                    Node::Pos(a) => {
                        if self.pool.complement_of_literal(c).is_some_and(|n| label.contains(n)) {
                            return Ok(false);
                        }
                        if let Some(rules) = self.unfold.get(a) {
                            todo.extend(rules.iter().copied());
                        }
                    }
                    Node::Neg(a) => {
                        if self.pool.complement_of_literal(c).is_some_and(|n| label.contains(n)) {
                            return Ok(false);
                        }
                        if let Some(rules) = self.neg_unfold.get(a) {
                            todo.extend(rules.iter().copied());
                        }
                    }
                    Node::And(cs) => todo.extend(cs.iter().copied()),
                    _ => {}
                }
            }
            // disjunctions left with a single viable disjunct need no branching
            for c in label.iter() {
                let Node::Or(ds) = self.pool.node(c) else { continue };
                if ds.iter().any(|&d| label.contains(d)) {
                    continue;
                }
                let mut viable = ds.iter().copied().filter(|&d| !self.refuted(&label, d));
                match (viable.next(), viable.next()) {
                    (None, _) => return Ok(false),
                    (Some(d), None) => todo.push(d),
                    _ => {}
                }
            }
            if todo.is_empty() {
                break;
            }
        }
        let open_or = label.iter().find(|&c| match self.pool.node(c) {
            Node::Or(ds) => !ds.iter().any(|&d| label.contains(d)),
            _ => false,
        });
        if let Some(or) = open_or {
            let Node::Or(mut ds) = self.pool.node(or).clone() else { unreachable!() };
            ds.retain(|&d| !self.refuted(&label, d));
            ds.sort_by_key(|&d| (self.pool.branch_rank(d), d));
            for i in 0..ds.len() {
                // semantic branching: earlier disjuncts are known to fail
                let mut t = vec![ds[i]];
                for &prev in &ds[..i] {
                    t.push(self.pool.neg(prev));
                }
                if self.expand(label.clone(), t, ancestors)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let somes: Vec<(Id, Id)> = label
            .iter()
            .filter_map(|c| match self.pool.node(c) {
                Node::Some(r, f) => Some((*r, *f)),
                _ => None,
            })
            .collect();
        let alls: Vec<(Id, Id)> = label
            .iter()
            .filter_map(|c| match self.pool.node(c) {
                Node::All(r, f) => Some((*r, *f)),
                _ => None,
            })
            .collect();
        for (r, filler) in somes {
            let sups = self.sups_of(r);
            let mut succ: Vec<Id> = self.globals.clone();
            succ.push(filler);
            succ.extend(alls.iter().filter(|(s, _)| sups.contains(s)).map(|(_, d)| *d));
            succ.sort_unstable();
            succ.dedup();
            if label.contains_all(&succ) || ancestors.iter().any(|a| a.contains_all(&succ)) {
                continue;
            }
            if self.unsat_cache.contains(&succ) {
                return Ok(false);
            }
            ancestors.push(label.clone());
            let ok = self.expand(Label::default(), succ.clone(), ancestors);
            ancestors.pop();
            if !ok? {
                self.unsat_cache.insert(succ);
                return Ok(false);
            }
        }
        if ancestors.is_empty() {
            self.last_root = Some(label);
        }
        Ok(true)
    }

    pub fn is_satisfiable(&mut self, c: &Concept) -> Result<bool, ReasonError> {
        let id = self.pool.intern(c);
        self.sat_id(id)
    }

    /// True when `c ⊑ d` follows from the knowledge base.
    pub fn is_subsumed_by(&mut self, c: &Concept, d: &Concept) -> Result<bool, ReasonError> {
        let q = Concept::and(c.clone(), Concept::not(d.clone()));
        Ok(!self.is_satisfiable(&q)?)
    }

    /// Names that may subsume the root of the last open completion: those
    /// in its label, plus unfolded defined names it does not refute.
    fn root_atoms(&self) -> BTreeSet<String> {
        let Some(label) = &self.last_root else { return BTreeSet::new() };
        let mut out: BTreeSet<String> = label
            .iter()
            .filter_map(|c| match self.pool.node(c) {
                Node::Pos(a) => Some(self.pool.names[*a as usize].clone()),
                _ => None,
            })
            .collect();
        for &a in &self.defined {
            let refuted = self.pool.index.get(&Node::Neg(a)).is_some_and(|&n| label.contains(n));
            if !refuted {
                out.insert(self.pool.names[a as usize].clone());
            }
        }
        out
    }
}

/// `c ⊑ d` with respect to `kb`, using the default budget.
pub fn subsumes(kb: &KnowledgeBase, c: &Concept, d: &Concept) -> Result<bool, ReasonError> {
    Reasoner::new(kb, Budget::default()).is_subsumed_by(c, d)
}

pub fn is_satisfiable(kb: &KnowledgeBase, c: &Concept) -> Result<bool, ReasonError> {
    Reasoner::new(kb, Budget::default()).is_satisfiable(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub kb_consistent: bool,
    pub unsatisfiable_names: BTreeSet<String>,
    pub failed_obligations: BTreeSet<String>,
    /// Individuals whose asserted concepts cannot hold together.
    pub inconsistent_individuals: BTreeSet<String>,
    pub resource_limited: bool,
}

impl Reasoner {
    /// Checks global satisfiability, every individual, every named concept and
    /// every obligation. A knowledge base with an unsatisfiable name is
    /// reported as inconsistent.
    pub fn check_consistency(&mut self) -> ConsistencyReport {
        let mut report = ConsistencyReport::default();
        let mut limited = false;
        let mut check = |r: &mut Reasoner, c: &Concept| match r.is_satisfiable(c) {
            Ok(b) => b,
            Err(ReasonError::ResourceLimit) => {
                limited = true;
                true
            }
        };
        let top_ok = check(self, &Concept::Top);
        for (ind, concepts) in self.individuals.clone() {
            if !check(self, &Concept::and_all(concepts)) {
                report.inconsistent_individuals.insert(ind);
            }
        }
        for name in self.kb_names.clone() {
            if !check(self, &Concept::atomic(name.clone())) {
                report.unsatisfiable_names.insert(name);
            }
        }
        for c in self.obligations.clone() {
            if !check(self, &c) {
                report.failed_obligations.insert(c.to_string());
            }
        }
        report.resource_limited = limited;
        report.kb_consistent = top_ok
            && report.inconsistent_individuals.is_empty()
            && report.unsatisfiable_names.is_empty()
            && report.failed_obligations.is_empty();
        report
    }

    /// Computes the subsumption hierarchy over the knowledge base's names.
    /// Candidate subsumers of `A` come from the root of an open completion
    /// of `A`; each candidate is then confirmed with a subsumption test.
    pub fn classify(&mut self) -> Taxonomy {
        let names = self.kb_names.clone();
        let mut unresolved = BTreeSet::new();
        let mut unsat = BTreeSet::new();
        let mut sups: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();

        let mut top_equiv = BTreeSet::new();
        if let Ok(true) = self.is_satisfiable(&Concept::Top) {
            for b in self.root_atoms().intersection(&names) {
                match self.is_subsumed_by(&Concept::Top, &Concept::atomic(b.clone())) {
                    Ok(true) => {
                        top_equiv.insert(b.clone());
                    }
                    Ok(false) => {}
                    Err(_) => {
                        unresolved.insert(b.clone());
                    }
                }
            }
        }
        for a in &names {
            match self.is_satisfiable(&Concept::atomic(a.clone())) {
                Ok(false) => {
                    unsat.insert(a.clone());
                    continue;
                }
                Err(_) => {
                    unresolved.insert(a.clone());
                    continue;
                }
                Ok(true) => {}
            }
            let candidates: Vec<String> =
                self.root_atoms().into_iter().filter(|b| b != a && names.contains(b)).collect();
            let mut s = BTreeSet::new();
            for b in candidates {
                if top_equiv.contains(&b) {
                    s.insert(b);
                    continue;
                }
                match self.is_subsumed_by(&Concept::atomic(a.clone()), &Concept::atomic(b.clone())) {
                    Ok(true) => {
                        s.insert(b);
                    }
                    Ok(false) => {}
                    Err(_) => {
                        unresolved.insert(a.clone());
                    }
                }
            }
            sups.insert(a.clone(), s);
        }
        Taxonomy::build(&names, &unsat, &top_equiv, &sups, unresolved)
    }
}

pub const TOP: &str = "top";
pub const BOT: &str = "bot";

/// Classified hierarchy. Edges and equivalence classes are stated between
/// class representatives: `bot` and `top` for their classes, otherwise the
/// smallest member name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Taxonomy {
    pub nodes: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
    pub equivalence_classes: Vec<BTreeSet<String>>,
    /// Names whose classification ran out of budget.
    pub unresolved: BTreeSet<String>,
}

impl Taxonomy {
    fn build(
        names: &BTreeSet<String>,
        unsat: &BTreeSet<String>,
        top_equiv: &BTreeSet<String>,
        sups: &BTreeMap<String, BTreeSet<String>>,
        unresolved: BTreeSet<String>,
    ) -> Taxonomy {
        let mut rep: BTreeMap<String, String> = BTreeMap::new();
        for n in names {
            let r = if unsat.contains(n) {
                BOT.to_string()
            } else if top_equiv.contains(n) {
                TOP.to_string()
            } else {
                let empty = BTreeSet::new();
                let mine = sups.get(n).unwrap_or(&empty);
                mine.iter()
                    .filter(|m| sups.get(*m).is_some_and(|s| s.contains(n)))
                    .chain(std::iter::once(n))
                    .min()
                    .cloned()
                    .expect("non-empty")
            };
            rep.insert(n.clone(), r);
        }
        let mut classes: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (n, r) in &rep {
            classes.entry(r.clone()).or_default().insert(n.clone());
        }
        // strict subsumers between representatives
        let mut above: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for r in classes.keys().filter(|r| *r != BOT && *r != TOP) {
            let s: BTreeSet<String> =
                sups.get(r).into_iter().flatten().map(|b| rep[b].clone()).filter(|b| b != r && b != TOP).collect();
            above.insert(r.clone(), s);
        }
        let mut edges = BTreeSet::new();
        for (r, s) in &above {
            let direct: Vec<&String> = s
                .iter()
                .filter(|p| !s.iter().any(|q| q != *p && above.get(q).is_some_and(|qs| qs.contains(*p))))
                .collect();
            if direct.is_empty() {
                edges.insert((r.clone(), TOP.to_string()));
            }
            for p in direct {
                edges.insert((r.clone(), p.clone()));
            }
        }
        let has_child: BTreeSet<&String> = edges.iter().map(|(_, p)| p).collect();
        let leaves: Vec<String> = above.keys().filter(|r| !has_child.contains(r)).cloned().collect();
        if leaves.is_empty() {
            edges.insert((BOT.to_string(), TOP.to_string()));
        }
        for l in leaves {
            edges.insert((BOT.to_string(), l));
        }
        let mut nodes: BTreeSet<String> = names.clone();
        nodes.insert(TOP.to_string());
        nodes.insert(BOT.to_string());
        let equivalence_classes = classes
            .into_iter()
            .filter_map(|(r, mut members)| {
                if r == BOT || r == TOP {
                    members.insert(r);
                }
                (members.len() > 1).then_some(members)
            })
            .collect();
        Taxonomy { nodes, edges, equivalence_classes, unresolved }
    }

    /// Representative of the class containing `name`.
    pub fn representative(&self, name: &str) -> String {
        for class in &self.equivalence_classes {
            if class.contains(name) {
                if class.contains(BOT) {
                    return BOT.to_string();
                }
                if class.contains(TOP) {
                    return TOP.to_string();
                }
                return class.iter().next().cloned().expect("non-empty");
            }
        }
        name.to_string()
    }

    fn class_of(&self, rep: &str) -> BTreeSet<String> {
        self.equivalence_classes
            .iter()
            .find(|c| c.contains(rep))
            .cloned()
            .unwrap_or_else(|| BTreeSet::from([rep.to_string()]))
    }

    /// Every name that subsumes `name`, itself included.
    pub fn subsumers(&self, name: &str) -> BTreeSet<String> {
        let start = self.representative(name);
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(r) = stack.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            if r == BOT {
                return self.nodes.clone();
            }
            stack.extend(self.edges.iter().filter(|(c, _)| *c == r).map(|(_, p)| p.clone()));
        }
        seen.iter().flat_map(|r| self.class_of(r)).collect()
    }

    /// Whether `sub ⊑ sup` holds in the transitive closure.
    pub fn entails(&self, sub: &str, sup: &str) -> bool {
        self.subsumers(sub).contains(sup)
    }

    /// Every node mapped to all of its subsumers, itself included.
    pub fn closure(&self) -> BTreeMap<String, BTreeSet<String>> {
        let mut parents: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (c, p) in &self.edges {
            parents.entry(c).or_default().push(p);
        }
        let mut members: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for n in &self.nodes {
            members.entry(self.representative(n)).or_default().insert(n.clone());
        }
        let mut memo: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        fn up<'t>(
            r: &'t str,
            parents: &BTreeMap<&'t str, Vec<&'t str>>,
            memo: &mut BTreeMap<String, BTreeSet<String>>,
        ) -> BTreeSet<String> {
            if let Some(s) = memo.get(r) {
                return s.clone();
            }
            let mut s = BTreeSet::from([r.to_string()]);
            for p in parents.get(r).into_iter().flatten() {
                s.extend(up(p, parents, memo));
            }
            memo.insert(r.to_string(), s.clone());
            s
        }
        let mut out = BTreeMap::new();
        for n in &self.nodes {
            let r = self.representative(n);
            let sups: BTreeSet<String> = if r == BOT {
                self.nodes.clone()
            } else {
                up(&r, &parents, &mut memo)
                    .iter()
                    .flat_map(|x| members.get(x).cloned().unwrap_or_else(|| BTreeSet::from([x.clone()])))
                    .collect()
            };
            out.insert(n.clone(), sups);
        }
        out
    }

    /// Names below `name`, itself included.
    pub fn subsumees(&self, name: &str) -> BTreeSet<String> {
        self.nodes.iter().filter(|n| self.entails(n, name)).cloned().collect()
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            out.push_str(&format!("NODE {n}\n"));
        }
        for (c, p) in &self.edges {
            out.push_str(&format!("EDGE {c} {p}\n"));
        }
        let mut eq: Vec<String> = self
            .equivalence_classes
            .iter()
            .map(|c| format!("EQUIV {}", c.iter().cloned().collect::<Vec<_>>().join(" ")))
            .collect();
        eq.sort();
        for l in eq {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Taxonomy, String> {
        let mut t = Taxonomy::default();
        for (i, line) in text.lines().enumerate() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                [] => {}
                ["NODE", n] => {
                    t.nodes.insert(n.to_string());
                }
                ["EDGE", c, p] => {
                    t.edges.insert((c.to_string(), p.to_string()));
                }
                ["EQUIV", rest @ ..] if rest.len() > 1 => {
                    t.equivalence_classes.push(rest.iter().map(|s| s.to_string()).collect());
                }
                _ => return Err(format!("line {}: cannot parse `{line}`", i + 1)),
            }
        }
        Ok(t)
    }
}

impl fmt::Display for Taxonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::Axiom;

    fn a(n: &str) -> Concept {
        Concept::atomic(n)
    }

    fn kb(axioms: &[Axiom]) -> KnowledgeBase {
        let mut kb = KnowledgeBase::new();
        kb.tbox.extend(axioms.iter().cloned());
        kb
    }

    #[test]
    fn basic_satisfiability() {
        let empty = KnowledgeBase::new();
        assert!(!is_satisfiable(&empty, &Concept::and(a("A"), Concept::not(a("A")))).unwrap());
        assert!(is_satisfiable(&empty, &a("A")).unwrap());
        assert!(!is_satisfiable(&empty, &Concept::Bottom).unwrap());
        let k = kb(&[Axiom::sub_names("Cat", "Feline"), Axiom::sub_names("Feline", "Animal")]);
        assert!(subsumes(&k, &a("Cat"), &a("Animal")).unwrap());
        assert!(!subsumes(&k, &a("Animal"), &a("Cat")).unwrap());
        assert!(subsumes(&k, &Concept::Bottom, &a("Cat")).unwrap());
    }

    #[test]
    fn role_hierarchy_propagates_universals() {
        let k = KnowledgeBase::new();
        // ∃hasProperty.A ⊓ ∀hasState.¬A is unsat since hasProperty ⊑ hasState
        let c = Concept::and(Concept::some("hasProperty", a("A")), Concept::all("hasState", Concept::not(a("A"))));
        assert!(!is_satisfiable(&k, &c).unwrap());
        let c = Concept::and(Concept::some("hasState", a("A")), Concept::all("hasProperty", Concept::not(a("A"))));
        assert!(is_satisfiable(&k, &c).unwrap());
    }

    #[test]
    fn cyclic_tbox_terminates() {
        let k =
            kb(&[Axiom::sub(a("A"), Concept::some("r", a("A"))), Axiom::sub(Concept::Top, Concept::some("r", a("B")))]);
        assert!(is_satisfiable(&k, &a("A")).unwrap());
    }

    #[test]
    fn penguin_triad() {
        let k = kb(&[
            Axiom::sub_names("Bird", "FlyingAnimal"),
            Axiom::sub_names("Penguin", "Bird"),
            Axiom::sub(a("Penguin"), Concept::not(a("FlyingAnimal"))),
        ]);
        let mut r = Reasoner::new(&k, Budget::default());
        let report = r.check_consistency();
        assert!(!report.kb_consistent);
        assert_eq!(report.unsatisfiable_names, BTreeSet::from(["Penguin".to_string()]));
        let empty = Reasoner::new(&KnowledgeBase::new(), Budget::default()).check_consistency();
        assert!(empty.kb_consistent);
    }

    #[test]
    fn classify_chain_and_equivalence() {
        let k = kb(&[Axiom::sub_names("A", "B"), Axiom::sub_names("B", "C")]);
        let t = Reasoner::new(&k, Budget::default()).classify();
        assert!(t.edges.contains(&("A".into(), "B".into())));
        assert!(t.edges.contains(&("B".into(), "C".into())));
        assert!(!t.edges.contains(&("A".into(), "C".into())));
        assert!(t.edges.contains(&("C".into(), "top".into())));
        assert!(t.edges.contains(&("bot".into(), "A".into())));

        let k = kb(&[Axiom::Equivalence(a("A"), a("B"))]);
        let t = Reasoner::new(&k, Budget::default()).classify();
        assert_eq!(t.equivalence_classes, vec![BTreeSet::from(["A".to_string(), "B".to_string()])]);
        assert_eq!(t.serialize(), "NODE A\nNODE B\nNODE bot\nNODE top\nEDGE A top\nEDGE bot A\nEQUIV A B\n");
        assert_eq!(Taxonomy::parse(&t.serialize()).unwrap(), Taxonomy { unresolved: BTreeSet::new(), ..t });
    }

    #[test]
    fn empty_taxonomy() {
        let t = Reasoner::new(&KnowledgeBase::new(), Budget::default()).classify();
        assert_eq!(t.serialize(), "NODE bot\nNODE top\nEDGE bot top\n");
    }

    #[test]
    fn unsat_names_join_bottom() {
        let k = kb(&[Axiom::sub(a("A"), Concept::Bottom), Axiom::sub_names("B", "C")]);
        let t = Reasoner::new(&k, Budget::default()).classify();
        assert!(t.equivalence_classes.contains(&BTreeSet::from(["A".to_string(), "bot".to_string()])));
        assert!(t.entails("A", "B"));
        let closure = t.closure();
        assert_eq!(closure["B"], BTreeSet::from(["B".to_string(), "C".to_string(), "top".to_string()]));
        assert_eq!(closure["A"].len(), t.nodes.len());
    }

    #[test]
    fn budget_is_enforced() {
        let mut axioms = Vec::new();
        for i in 0..12 {
            axioms.push(Axiom::sub(Concept::Top, Concept::or(a(&format!("P{i}")), a(&format!("Q{i}")))));
        }
        axioms.push(Axiom::sub(Concept::Top, Concept::some("r", Concept::Top)));
        let k = kb(&axioms);
        let mut r = Reasoner::new(&k, Budget { max_nodes: 3, max_time: Duration::from_secs(5) });
        assert_eq!(r.is_satisfiable(&Concept::and(a("P0"), a("Q0"))), Err(ReasonError::ResourceLimit));
        let report = r.check_consistency();
        assert!(report.resource_limited);
    }
}
