mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use isa2dl::pipeline::Outcome;
use isa2dl::transform::RuleId;

fn mini() -> isa2dl::pipeline::RunResult {
    common::run(&[common::corpus("mini.tagged")], &[common::corpus("mini_hypernyms.tsv")], true)
}

fn mammal() -> isa2dl::pipeline::RunResult {
    common::run(&[common::corpus("mammal109.tagged")], &[common::corpus("mammal109_hypernyms.tsv")], true)
}

#[test]
fn mini_corpus_is_fully_covered_and_consistent() {
    let r = mini();
    let cov = r.report.coverage().unwrap();
    assert_eq!(cov.cr_o, 1.0);
    assert!(r.consistency.kb_consistent);
    assert_eq!(r.exit_code(), 0);
    assert!(r.report.n_sentences() >= 35);
}

#[test]
fn mini_corpus_fires_every_rule_family() {
    let r = mini();
    let fired: BTreeSet<RuleId> = r
        .report
        .sentences
        .iter()
        .filter_map(|s| match &s.outcome {
            Outcome::Accepted(rules) => Some(rules.clone()),
            _ => None,
        })
        .flatten()
        .collect();
    let missing: Vec<_> = RuleId::ALL.iter().filter(|r| !fired.contains(r)).collect();
    assert!(missing.is_empty(), "{missing:?}");
}

#[test]
fn mammal_corpus_is_deterministic_and_fast() {
    let t = Instant::now();
    let a = mammal();
    let elapsed = t.elapsed();
    let b = mammal();
    assert_eq!(a.report.n_sentences(), 109);
    assert!(elapsed.as_secs_f64() < 10.0, "{elapsed:?}");
    assert_eq!(a.kb.serialize(), b.kb.serialize());
    assert_eq!(a.taxonomy.serialize(), b.taxonomy.serialize());
    assert_eq!(a.report_tsv(), b.report_tsv());
    assert_eq!(a.trace_tsv(), b.trace_tsv());
    assert_eq!(a.revision_tsv(), b.revision_tsv());
}

#[test]
fn written_outputs_are_byte_identical() {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    mini().write(d1.path(), true).unwrap();
    mini().write(d2.path(), true).unwrap();
    for f in ["kb.dl", "taxonomy.txt", "report.tsv", "trace.tsv", "revision.tsv"] {
        assert_eq!(common::read(&d1.path().join(f)), common::read(&d2.path().join(f)), "{f}");
    }
}
