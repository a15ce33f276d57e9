use superengel::corpus;
use superengel::identities::check_alternative_super;
use superengel::operators::check_operator_identities;

#[test]
fn identities_hold_on_alternative_entries() {
    let mut checked = 0;
    for a in corpus::regression_algebras() {
        if !check_alternative_super(&a).verdict {
            continue;
        }
        let r = check_operator_identities(&a);
        assert!(r.verdict, "{}: {:?}", a.name(), r.witness);
        assert_eq!(r.checks.len(), 4);
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn idempotent_control_breaks_an_identity() {
    let a = corpus::build("shestakov-idem").unwrap();
    let r = check_operator_identities(&a);
    assert!(!r.verdict);
    assert!(r.checks.iter().any(|(_, ok)| !ok));
    assert!(r.witness.is_some());
}

#[test]
fn even_right_powers_match_powers_of_right_operators() {
    use superengel::algebra::Parity;
    use superengel::operators::{operator_matrix, OpKind};

    for a in corpus::regression_algebras() {
        if !check_alternative_super(&a).verdict {
            continue;
        }
        let evens = a.basis_of_parity(Parity::Even);
        let mut samples: Vec<Vec<i64>> = evens.iter().map(|&i| (0..a.dim()).map(|j| (i == j) as i64).collect()).collect();
        samples.push((0..a.dim()).map(|j| if a.parity()[j] == 0 { j as i64 % 3 + 1 } else { 0 }).collect());
        for s in samples {
            let e = a.element_from_ints(&s).unwrap();
            let r = operator_matrix(&a, OpKind::RightSigned, e.coords(), Parity::Even);
            let mut power = e.clone();
            for k in 2..=4u32 {
                power = a.mul(&power, &e).unwrap();
                let rk = operator_matrix(&a, OpKind::RightSigned, power.coords(), Parity::Even);
                assert_eq!(r.pow(k).unwrap(), rk, "{} e = {} k = {k}", a.name(), a.describe(&e));
            }
        }
    }
}
