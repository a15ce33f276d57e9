use superengel::algebra::{power_series, Backend, SuperAlgebra, DEFAULT_BUDGET};
use superengel::corpus;
use superengel::engine::{engel_chain, ChainOutcome, FailureWitness};
use superengel::identities::check_alternative_super;
use superengel::operators::{engel_check, EngelMode};

fn passes_filters(a: &SuperAlgebra) -> bool {
    check_alternative_super(a).verdict
        && engel_check(a, EngelMode::RNilpotencyOnly, Backend::Auto, DEFAULT_BUDGET).unwrap().verdict == Some(true)
}

fn assert_chain_nilpotent(a: &SuperAlgebra) {
    let c = engel_chain(a);
    let series = power_series(a).zero_index();
    match c.outcome {
        ChainOutcome::Nilpotent { algebra_index, power_series_index, .. } => {
            assert_eq!(Some(algebra_index), series, "{}", a.name());
            assert_eq!(power_series_index, algebra_index, "{}", a.name());
        }
        ChainOutcome::Failed(w) => panic!("{}: {w:?}", a.name()),
    }
    assert!(c.steps.iter().all(|s| s.qideal.inclusion), "{}", a.name());
}

#[test]
fn corpus_entries_passing_filters_are_nilpotent() {
    let mut n = 0;
    for a in corpus::regression_algebras() {
        if passes_filters(&a) {
            assert_chain_nilpotent(&a);
            n += 1;
        }
    }
    assert!(n >= 14);
}

#[test]
fn random_perturbations_passing_filters_are_nilpotent() {
    let (mut passed, mut perturbed) = (0, 0);
    for (tried, a) in corpus::random_perturbations(2024).take(2000).enumerate() {
        if passes_filters(&a) {
            assert_chain_nilpotent(&a);
            passed += 1;
            perturbed += a.name().starts_with("perturbed") as usize;
            if passed == 100 {
                eprintln!("{} candidates, {perturbed} basis changes, {} sparse tables", tried + 1, passed - perturbed);
                break;
            }
        }
    }
    assert_eq!(passed, 100);
}

#[test]
fn shestakov_chain_fails_in_the_odd_direction() {
    let c = engel_chain(&corpus::shestakov_alt());
    assert!(!c.is_nilpotent());
    match c.outcome {
        ChainOutcome::Failed(FailureWitness::RvNotNilpotent { element, stable_rank }) => {
            assert!(!element.coords()[2].is_zero());
            assert_eq!(stable_rank, (1, 2));
        }
        other => panic!("{other:?}"),
    }
}
