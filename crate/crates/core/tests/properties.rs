mod common;

use std::collections::BTreeSet;

use common::oracle::{find_model, ModelSearch};
use isa2dl::dl::{parse_concept, Assertion, Axiom, Concept, KnowledgeBase};
use isa2dl::evaluate::{agreement_angle, coverage_recall, harmonic_mean, lexical_metrics};
use proptest::prelude::*;

fn concept() -> impl Strategy<Value = Concept> {
    let leaf = prop_oneof![
        Just(Concept::Top),
        Just(Concept::Bottom),
        prop::sample::select(vec!["A", "B", "C"]).prop_map(Concept::atomic),
    ];
    leaf.prop_recursive(3, 24, 2, |inner| {
        let role = prop::sample::select(vec!["r", "hasProperty", "hasState"]);
        prop_oneof![
            inner.clone().prop_map(Concept::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Concept::or(a, b)),
            (role.clone(), inner.clone()).prop_map(|(r, c)| Concept::all(r, c)),
            (role, inner).prop_map(|(r, c)| Concept::some(r, c)),
        ]
    })
}

fn kb() -> impl Strategy<Value = KnowledgeBase> {
    let axiom = prop_oneof![
        (concept(), concept()).prop_map(|(c, d)| Axiom::sub(c, d)),
        (concept(), concept()).prop_map(|(c, d)| Axiom::Equivalence(c, d)),
        (prop::sample::select(vec!["A", "B", "C"]), concept()).prop_map(|(n, c)| Axiom::Definition(n.into(), c)),
    ];
    let assertion = (concept(), prop::sample::select(vec!["a", "b"])).prop_map(|(c, i)| Assertion::new(c, i));
    (prop::collection::vec(axiom, 0..4), prop::collection::vec(assertion, 0..3), prop::collection::vec(concept(), 0..2))
        .prop_map(|(ax, ab, ob)| {
            let mut kb = KnowledgeBase::new();
            kb.tbox.extend(ax);
            kb.abox.extend(ab);
            kb.obligations.extend(ob);
            kb
        })
}

fn names() -> impl Strategy<Value = BTreeSet<String>> {
    prop::collection::btree_set(prop::sample::select(vec!["Cat", "Dog", "cat", "Animal", "Bird", "Whale"]), 0..6)
        .prop_map(|s| s.into_iter().map(String::from).collect())
}

proptest! {
    #[test]
    fn nnf_is_normal_and_idempotent(c in concept()) {
        let n = c.nnf();
        prop_assert!(n.is_nnf());
        prop_assert_eq!(n.nnf(), n.clone());
        prop_assert_eq!(Concept::not(Concept::not(c.clone())).nnf(), n);
    }

    #[test]
    fn nnf_preserves_meaning(c in concept()) {
        let empty = KnowledgeBase::new();
        for probe in [Concept::and(c.clone(), Concept::not(c.nnf())), Concept::and(c.nnf(), Concept::not(c.clone()))] {
            prop_assert_eq!(find_model(&empty, &probe, 2), ModelSearch::NoneUpTo(2));
        }
    }

    #[test]
    fn concept_display_round_trips(c in concept()) {
        prop_assert_eq!(parse_concept(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn kb_serialization_round_trips(kb in kb()) {
        let text = kb.serialize();
        let back = KnowledgeBase::parse(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
        prop_assert_eq!(back.tbox, kb.tbox);
        prop_assert_eq!(back.abox, kb.abox);
    }

    #[test]
    fn lexical_metrics_are_bounded(l in names(), g in names()) {
        prop_assume!(!g.is_empty());
        let m = lexical_metrics(&l, &g).unwrap();
        for v in [m.lp, m.lr, m.lf1] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert!(m.lf1 <= m.lp.max(m.lr) + 1e-12 && m.lf1 >= m.lp.min(m.lr) - 1e-12);
        let swapped = lexical_metrics(&g, &l);
        if let Ok(s) = swapped {
            prop_assert!((s.lp - m.lr).abs() < 1e-12 && (s.lr - m.lp).abs() < 1e-12);
        }
    }

    #[test]
    fn harmonic_mean_is_symmetric_and_between(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let h = harmonic_mean(a, b);
        prop_assert_eq!(h, harmonic_mean(b, a));
        prop_assert!(h <= a.max(b) + 1e-12 && (h >= a.min(b) - 1e-12 || a.min(b) == 0.0));
    }

    #[test]
    fn coverage_is_ordered(n in 1usize..500, acc_frac in 0.0f64..=1.0, fault_frac in 0.0f64..=1.0) {
        let acc = (n as f64 * acc_frac) as usize;
        let faults = ((n - acc) as f64 * fault_frac) as usize;
        let c = coverage_recall(n, acc, faults).unwrap();
        prop_assert!(c.cr_o <= c.cr_e && c.cr_e <= 1.0);
    }

    #[test]
    fn angle_is_symmetric_and_bounded(v in prop::collection::vec((0.01f64..1.0, 0.01f64..1.0), 1..8)) {
        let (a, b): (Vec<f64>, Vec<f64>) = v.into_iter().unzip();
        let x = agreement_angle(&a, &b).unwrap();
        prop_assert!((0.0..=90.0).contains(&x));
        prop_assert_eq!(x, agreement_angle(&b, &a).unwrap());
        prop_assert_eq!(agreement_angle(&a, &a).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Feeding the same sentences again changes nothing.
    #[test]
    fn revision_is_idempotent(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..8)) {
        let corpus = common::read(&common::corpus("mini.tagged"));
        let lines: Vec<&str> = corpus.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).collect();
        let text: String = picks.iter().map(|i| format!("{}\n", lines[i.index(lines.len())])).collect();
        let hyp = common::corpus("mini_hypernyms.tsv");
        let lex = isa2dl::pipeline::Lexicons::load(None, None, &[hyp], None).unwrap();
        let run = |t: &str| {
            let mut p = isa2dl::pipeline::Pipeline::new(lex.clone(), true, isa2dl::reason::Budget::default());
            p.add_document(1, t, isa2dl::pipeline::InputMode::Tagged);
            p.finish().kb.serialize()
        };
        let once = run(&text);
        prop_assert_eq!(run(&format!("{text}{text}")), once);
    }
}
