use isa2dl::characterize::{count_valid_structures, validate_core_pair, EnumerationBasis, CORE_TAGS};
use isa2dl::preprocess::Tag;

#[test]
fn six_of_twenty_five_pairs_are_rejected() {
    let mut rejected = Vec::new();
    for s in CORE_TAGS {
        for o in CORE_TAGS {
            if !validate_core_pair(s, o).unwrap() {
                rejected.push((s, o));
            }
        }
    }
    use Tag::*;
    let mut want = vec![(NNP, RB), (RB, NNP), (NNP, VBG), (VBG, NNP), (JJ, RB), (JJ, VBG)];
    want.sort();
    rejected.sort();
    assert_eq!(rejected, want);
}

#[test]
fn plural_tags_map_to_core() {
    assert_eq!(validate_core_pair(Tag::NNS, Tag::NN), Ok(true));
    assert_eq!(validate_core_pair(Tag::NNPS, Tag::RB), Ok(false));
    assert!(validate_core_pair(Tag::DT, Tag::NN).is_err());
}

#[test]
fn pair_filter_eliminates_a_quarter_minus_one_percent() {
    let c = count_valid_structures(&EnumerationBasis::DEFAULT);
    assert_eq!((c.invalid_by_pair, c.total), (3600, 15000));
    assert_eq!(c.invalid_by_pair * 100 / c.total, 24);
    let single = count_valid_structures(&EnumerationBasis::SINGLE_PAIR);
    assert_eq!((single.invalid_by_pair, single.total), (6, 25));
}
