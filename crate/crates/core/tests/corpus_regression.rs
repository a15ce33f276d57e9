use superengel::algebra::{Backend, DEFAULT_BUDGET};
use superengel::corpus;
use superengel::identities::{check_alternative_super, check_jordan_super, oracle_verdicts, DEFAULT_ENVELOPE_BUDGET};
use superengel::operators::{engel_check, EngelMode};
use superengel::report::{classify, ClassifyOptions};

#[test]
fn every_entry_matches_its_expectation() {
    for e in corpus::entries() {
        let a = corpus::build(e.spec).unwrap();
        let c = classify(&a, &ClassifyOptions::default());
        assert!(c.validation.is_valid(), "{}", e.spec);
        assert_eq!(c.mismatches(&e.expected), Vec::<&str>::new(), "{}", e.spec);
    }
}

#[test]
fn envelope_oracle_agrees_with_direct_checks() {
    for a in corpus::regression_algebras() {
        let oracle = oracle_verdicts(&a, 4, DEFAULT_ENVELOPE_BUDGET).unwrap();
        assert_eq!(oracle["alternative"], Some(check_alternative_super(&a).verdict), "{}", a.name());
        let jordan = (a.field().characteristic() != 2)
            .then(|| check_jordan_super(&a, None, DEFAULT_ENVELOPE_BUDGET).unwrap().verdict);
        assert_eq!(oracle["jordan"], jordan, "{}", a.name());
    }
}

#[test]
fn engel_backends_agree_on_finite_fields() {
    for a in corpus::regression_algebras().into_iter().filter(|a| a.field().is_finite()) {
        let run = |b| engel_check(&a, EngelMode::RNilpotencyOnly, b, DEFAULT_BUDGET).unwrap().verdict;
        assert_eq!(run(Backend::Enumerate), run(Backend::Symbolic), "{}", a.name());
    }
}

#[test]
fn shestakov_graded_nil_index_and_witness() {
    let a = corpus::shestakov_alt();
    let c = classify(&a, &ClassifyOptions::default());
    assert_eq!(c.graded_nil_index(), Some(2));
    let w = c.engel.unwrap().witness.unwrap();
    assert!(!w.coords()[2].is_zero());
}
