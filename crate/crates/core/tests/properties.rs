use proptest::prelude::*;

use superengel::algebra::Parity;
use superengel::arith::{FieldSpec, Matrix, MultiPoly, Scalar};
use superengel::corpus;
use superengel::operators::{operator_matrix, OpKind};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(3).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::prime(7).unwrap()),
    ]
}

fn scalar(f: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(move |(n, d)| {
        let n = f.from_i64(n);
        match f.from_i64(d).inv() {
            Ok(inv) => &n * &inv,
            Err(_) => n,
        }
    })
}

fn matrix(f: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix<FieldSpec>> {
    proptest::collection::vec(scalar(f), rows * cols)
        .prop_map(move |v| Matrix::from_rows(f, v.chunks(cols).map(<[Scalar]>::to_vec).collect()).unwrap())
}

fn field_and_matrix() -> impl Strategy<Value = Matrix<FieldSpec>> {
    (field(), 1usize..5, 1usize..5).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

fn poly(f: FieldSpec) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((scalar(f), 0u32..3, 0u32..3), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(MultiPoly::zero(f), |acc, (c, a, b)| {
            acc.add(&MultiPoly::var(f, 0).pow(a).mul(&MultiPoly::var(f, 1).pow(b)).scale(&c))
        })
    })
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in field().prop_flat_map(|f| (scalar(f), scalar(f), scalar(f)))) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rref_is_idempotent(m in field_and_matrix()) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(r.rref(), (r.clone(), pivots));
    }

    #[test]
    fn rank_plus_nullity(m in field_and_matrix()) {
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn matrix_product_is_associative((a, b, c) in field().prop_flat_map(|f| (matrix(f, 2, 3), matrix(f, 3, 3), matrix(f, 3, 2)))) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn polynomial_product_is_associative_and_evaluates((p, q, r, x, y) in field().prop_flat_map(|f| (poly(f), poly(f), poly(f), scalar(f), scalar(f)))) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        let point = [x, y];
        prop_assert_eq!(p.mul(&q).evaluate(&point), &p.evaluate(&point) * &q.evaluate(&point));
    }

    #[test]
    fn operators_are_linear((x, y, c) in (proptest::collection::vec(-3i64..=3, 7), proptest::collection::vec(-3i64..=3, 7), -3i64..=3)) {
        let a = corpus::build("grassmann-aug(3)").unwrap();
        let f = a.field();
        let v = |w: &[i64]| w.iter().map(|&n| f.from_i64(n)).collect::<Vec<_>>();
        let (x, y, c) = (v(&x), v(&y), f.from_i64(c));
        let combo: Vec<Scalar> = x.iter().zip(&y).map(|(s, t)| &(s * &c) + t).collect();
        for kind in [OpKind::LeftPlain, OpKind::RightPlain] {
            let lhs = operator_matrix(&a, kind, &combo, Parity::Even);
            let rhs = operator_matrix(&a, kind, &x, Parity::Even).scale(&c).add(&operator_matrix(&a, kind, &y, Parity::Even)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn right_equals_left_when_supercommutative(spec in prop_oneof![Just("grassmann-aug(3)"), Just("plus-of(upper-tri(3,010))"), Just("shestakov-alt")], seed in proptest::collection::vec(-2i64..=2, 7)) {
        let a = corpus::build(spec).unwrap();
        let f = a.field();
        for parity in [Parity::Even, Parity::Odd] {
            let x: Vec<Scalar> = (0..a.dim())
                .map(|i| if a.parity_of(i) == parity { f.from_i64(seed[i]) } else { f.zero() })
                .collect();
            prop_assert_eq!(operator_matrix(&a, OpKind::RightSigned, &x, parity), operator_matrix(&a, OpKind::LeftSigned, &x, parity));
        }
    }
}
