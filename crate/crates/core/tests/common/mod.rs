#![allow(dead_code)]

pub mod entailment;
pub mod oracle;

use std::path::{Path, PathBuf};

use isa2dl::pipeline::{run_pipeline, RunConfig, RunResult};

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_dir() -> PathBuf {
    manifest_dir().join("tests/golden")
}

pub fn corpus(name: &str) -> PathBuf {
    manifest_dir().join("corpus").join(name)
}

pub fn run(inputs: &[PathBuf], hypernyms: &[PathBuf], revision: bool) -> RunResult {
    let config = RunConfig { inputs: inputs.to_vec(), hypernyms: hypernyms.to_vec(), revision, ..RunConfig::default() };
    run_pipeline(&config).expect("pipeline run")
}

/// Fixture stems in `tests/golden`, sorted.
pub fn golden_fixtures() -> Vec<String> {
    let mut out: Vec<String> = std::fs::read_dir(golden_dir())
        .expect("golden dir")
        .filter_map(|e| {
            let p = e.ok()?.path();
            if p.extension()? != "tagged" {
                return None;
            }
            Some(p.file_stem()?.to_string_lossy().into_owned())
        })
        .collect();
    out.sort();
    out
}

/// Runs one fixture and returns (expected, actual) serializations.
pub fn golden_case(stem: &str) -> (String, String) {
    let dir = golden_dir();
    let hyp = dir.join(format!("{stem}.hyp"));
    let hyp = if hyp.is_file() { hyp } else { dir.join("hypernyms.tsv") };
    let expected = std::fs::read_to_string(dir.join(format!("{stem}.dl"))).expect("expected .dl");
    let result = run(&[dir.join(format!("{stem}.tagged"))], &[hyp], true);
    (expected, result.kb.serialize())
}

pub fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub const PENGUIN: &str = "Bird/NN is/VBZ a/DT flying/JJ animal/NN ./.
Penguin/NN is/VBZ a/DT bird/NN ./.
Penguin/NN is/VBZ not/RB a/DT flying/JJ animal/NN ./.
";

pub const DOCTOR_THEN_CARDIOLOGIST: &str = "John/NNP is/VBZ a/DT doctor/NN ./.
John/NNP is/VBZ a/DT cardiologist/NN ./.
";

pub fn scenario_lexicons() -> isa2dl::pipeline::Lexicons {
    use isa2dl::lexicon::{HypernymLexicon, VariationTables};
    isa2dl::pipeline::Lexicons {
        tables: VariationTables::seed(),
        hypernyms: HypernymLexicon::from_pairs([("John", "Person")], [("Cardiologist", "Doctor")]).unwrap(),
    }
}

pub fn run_text(text: &str, revision: bool) -> RunResult {
    use isa2dl::pipeline::{InputMode, Pipeline};
    let mut p = Pipeline::new(scenario_lexicons(), revision, isa2dl::reason::Budget::default());
    p.add_document(1, text, InputMode::Tagged);
    p.finish()
}

/// Memberships of `individual` other than in its lexicon class `anchor`.
pub fn composite_memberships(kb: &isa2dl::dl::KnowledgeBase, individual: &str, anchor: &str) -> Vec<String> {
    kb.assertions_of(individual)
        .filter(|a| a.concept.as_atomic() != Some(anchor))
        .map(|a| a.concept.to_string())
        .collect()
}
