mod common;

#[test]
fn fixtures_serialize_exactly() {
    let stems = common::golden_fixtures();
    assert!(stems.len() >= 18, "only {} fixtures", stems.len());
    let mut failures = Vec::new();
    for stem in &stems {
        let (expected, actual) = common::golden_case(stem);
        if expected != actual {
            failures.push(format!("{stem}\n--- expected\n{expected}--- actual\n{actual}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn fixture_kbs_parse_back() {
    for stem in common::golden_fixtures() {
        let text = common::read(&common::golden_dir().join(format!("{stem}.dl")));
        let kb = isa2dl::dl::KnowledgeBase::parse(&text).unwrap();
        assert_eq!(kb.serialize(), text, "{stem}");
    }
}
