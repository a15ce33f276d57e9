use super::{matrix_nil_index, operator_matrix, plain_right, stable_rank_power, OpKind, OpMatrix, OperatorAlgebra};
use crate::algebra::nil::{find_first_homogeneous, find_nonvanishing_point, generic_element, homogeneous_count, resolve_backend};
use crate::algebra::{Backend, Element, HomogeneousElement, Parity, SuperAlgebra};
use crate::arith::{Matrix, MultiPoly, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::identities::{check_superassociative, Defect, IdentityReport, Witness};

const OPERATOR_IDENTITIES: [&str; 4] = ["rr", "ll", "lr", "rl"];

/// Checks the operator identities
///
/// ```text
/// rr:  R_z R_y = R_{zy} + (-1)^{|y||z|} (R_{yz} - R_y R_z)
/// ll:  L_z L_y = L_{zy} + (-1)^{|y||z|} (L_{yz} - L_y L_z)
/// lr:  L_y R_z = (-1)^{|y||z|} R_z L_y + L_{yz} - L_y L_z
/// rl:  L_y R_z = (-1)^{|y||z|} (R_z L_y + R_z R_y) - R_{yz}
/// ```
///
/// for signed operators on every pair of basis vectors `(y, z)`.
pub fn check_operator_identities(a: &SuperAlgebra) -> IdentityReport {
    let d = a.dim();
    let f = a.field();
    let r = |x: &[crate::arith::Scalar], p: Parity| operator_matrix(a, OpKind::RightSigned, x, p);
    let l = |x: &[crate::arith::Scalar], p: Parity| operator_matrix(a, OpKind::LeftSigned, x, p);
    let mut failures: [Option<Witness>; 4] = Default::default();
    for yi in 0..d {
        for zi in 0..d {
            let (py, pz) = (a.parity_of(yi), a.parity_of(zi));
            let y = a.basis_element(yi);
            let z = a.basis_element(zi);
            let yz = a.product(y.coords(), z.coords());
            let zy = a.product(z.coords(), y.coords());
            let pyz = py.add(pz);
            let sign = if py.sign_flips(pz) { -f.one() } else { f.one() };
            let (ry, rz, ly, lz) = (r(y.coords(), py), r(z.coords(), pz), l(y.coords(), py), l(z.coords(), pz));
            let (r_yz, r_zy, l_yz, l_zy) = (r(&yz, pyz), r(&zy, pyz), l(&yz, pyz), l(&zy, pyz));
            let m = |x: &OpMatrix, y: &OpMatrix| x.mul(y).expect("square");
            let add = |x: &OpMatrix, y: &OpMatrix| x.add(y).expect("square");
            let sub = |x: &OpMatrix, y: &OpMatrix| x.sub(y).expect("square");
            let checks = [
                sub(&m(&rz, &ry), &add(&r_zy, &sub(&r_yz, &m(&ry, &rz)).scale(&sign))),
                sub(&m(&lz, &ly), &add(&l_zy, &sub(&l_yz, &m(&ly, &lz)).scale(&sign))),
                sub(&m(&ly, &rz), &sub(&add(&m(&rz, &ly).scale(&sign), &l_yz), &m(&ly, &lz))),
                sub(&m(&ly, &rz), &sub(&add(&m(&rz, &ly), &m(&rz, &ry)).scale(&sign), &r_yz)),
            ];
            for (n, defect) in checks.into_iter().enumerate() {
                if failures[n].is_none() && !defect.is_zero() {
                    failures[n] = Some(Witness {
                        instance: OPERATOR_IDENTITIES[n].into(),
                        labels: vec![a.basis_names()[yi].clone(), a.basis_names()[zi].clone()],
                        substitution: vec![y.coords().to_vec(), z.coords().to_vec()],
                        defect: Defect::Vector(defect.column_major()),
                    });
                }
            }
        }
    }
    let mut report = IdentityReport { identity: "operator identities".into(), verdict: true, witness: None, checks: vec![] };
    for (n, w) in failures.into_iter().enumerate() {
        report.checks.push((OPERATOR_IDENTITIES[n].into(), w.is_none()));
        if w.is_some() && report.verdict {
            report.verdict = false;
            report.witness = w;
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngelElementReport {
    pub engelian: bool,
    /// Nilpotency index of `alg<R_x, L_x>`.
    pub index: Option<usize>,
    pub dim: usize,
}

/// Whether `alg<R_x, L_x>` (signed operators) is nilpotent.
pub fn engel_element_check(a: &SuperAlgebra, x: &HomogeneousElement) -> Result<EngelElementReport> {
    if x.element().len() != a.dim() {
        return Err(Error::AlgebraMismatch);
    }
    let name = a.describe(x.element());
    let w = OperatorAlgebra::generate(
        a.field(),
        a.dim(),
        vec![
            operator_matrix(a, OpKind::RightSigned, x.coords(), x.parity()),
            operator_matrix(a, OpKind::LeftSigned, x.coords(), x.parity()),
        ],
        vec![format!("R[{name}]"), format!("L[{name}]")],
    );
    let verdict = w.nilpotency().verdict;
    Ok(EngelElementReport { engelian: verdict.is_nilpotent(), index: verdict.index(), dim: w.dim() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngelMode {
    /// Every homogeneous `R_x` is nilpotent.
    RNilpotencyOnly,
    /// Every homogeneous `alg<R_x, L_x>` is nilpotent.
    FullEngel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngelReport {
    pub mode: EngelMode,
    pub backend: Backend,
    /// `None` when the symbolic backend could not decide.
    pub verdict: Option<bool>,
    pub witness: Option<HomogeneousElement>,
    /// For a witness: the smallest `p` with `rank R^p = rank R^{p+1}`, and
    /// that (positive) rank.
    pub stable_rank: Option<(usize, usize)>,
}

fn signed_r(a: &SuperAlgebra, x: &HomogeneousElement) -> OpMatrix {
    operator_matrix(a, OpKind::RightSigned, x.coords(), x.parity())
}

/// Generic signed `R_X` for `X` with indeterminate coordinates of one
/// parity.
pub(crate) fn generic_signed_r(a: &SuperAlgebra, parity: Parity) -> (PolyRing, Vec<usize>, Matrix<PolyRing>) {
    let (ring, support, x) = generic_element(a, parity);
    let d = a.dim();
    let columns = (0..d)
        .map(|c| {
            let mut y = vec![ring.zero(); d];
            y[c] = ring.one();
            let p = a.product_in(&ring, &y, &x);
            if parity.sign_flips(a.parity_of(c)) {
                p.iter().map(MultiPoly::neg).collect()
            } else {
                p
            }
        })
        .collect();
    let m = Matrix::from_columns(ring.clone(), d, columns).expect("square");
    (ring, support, m)
}

pub fn engel_check(a: &SuperAlgebra, mode: EngelMode, backend: Backend, budget: u128) -> Result<EngelReport> {
    let resolved = match (mode, backend) {
        (EngelMode::FullEngel, Backend::Symbolic) => {
            return Err(Error::UnsupportedMode("full Engel checks need the enumeration backend".into()))
        }
        (EngelMode::FullEngel, _) => {
            homogeneous_count(a, budget)?;
            Backend::Enumerate
        }
        (EngelMode::RNilpotencyOnly, b) => resolve_backend(a, b, budget),
    };
    let report = |verdict, witness: Option<HomogeneousElement>| {
        let stable_rank = witness.as_ref().map(|w| stable_rank_power(&signed_r(a, w)));
        EngelReport { mode, backend: resolved, verdict, witness, stable_rank }
    };
    if resolved == Backend::Enumerate {
        let found = match mode {
            EngelMode::RNilpotencyOnly => {
                find_first_homogeneous(a, budget, |x| matrix_nil_index(&signed_r(a, x)).is_none().then_some(()))?
            }
            EngelMode::FullEngel => find_first_homogeneous(a, budget, |x| {
                (!engel_element_check(a, x).expect("same algebra").engelian).then_some(())
            })?,
        };
        return Ok(match found {
            Some((x, ())) => report(Some(false), Some(x)),
            None => report(Some(true), None),
        });
    }
    // R_X^d = 0 as a polynomial identity, for a generic even and a generic
    // odd X; a nilpotent d x d matrix has index at most d.
    let d = a.dim();
    for parity in Parity::both() {
        let (ring, support, r) = generic_signed_r(a, parity);
        if support.is_empty() {
            continue;
        }
        let mut p = r.clone();
        for _ in 1..d {
            if p.is_zero() {
                break;
            }
            p = p.mul(&r)?;
        }
        if p.is_zero() {
            continue;
        }
        let _ = ring;
        return Ok(match find_nonvanishing_point(a.field(), support.len(), p.entries(), budget) {
            Some(pt) => {
                let mut coords = vec![a.field().zero(); d];
                for (c, &i) in pt.into_iter().zip(&support) {
                    coords[i] = c;
                }
                let x = HomogeneousElement::new(a, Element::from_coords(coords)).expect("nonzero point");
                report(Some(false), Some(x))
            }
            None => report(None, None),
        });
    }
    Ok(report(Some(true), None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerIdentityReport {
    /// `R_a^2 = R_{a^2}` for plain operators.
    pub square: bool,
    /// `R_{a^k} = R_a^k` for `k = 1..=dim`, i.e. `R_{a_1...a_k} = R_{a_k}...R_{a_1}`
    /// on equal factors.
    pub powers: bool,
    /// First `k` where the power identity fails.
    pub first_failure: Option<usize>,
}

/// Plain right operators in an associative algebra compose as
/// `R_b R_a = R_{ab}`; checks the resulting power identities for `x`.
pub fn plain_r_power_identity(a: &SuperAlgebra, x: &Element) -> Result<PowerIdentityReport> {
    if x.len() != a.dim() {
        return Err(Error::AlgebraMismatch);
    }
    if !check_superassociative(a).verdict {
        return Err(Error::NotAssociative);
    }
    let r = plain_right(a, x.coords());
    let mut xk = x.coords().to_vec();
    let mut rk = r.clone();
    let mut first_failure = None;
    let mut square = true;
    for k in 1..=a.dim().max(2) {
        if plain_right(a, &xk) != rk {
            first_failure.get_or_insert(k);
            if k == 2 {
                square = false;
            }
        }
        xk = a.product(&xk, x.coords());
        rk = rk.mul(&r)?;
    }
    Ok(PowerIdentityReport { square, powers: first_failure.is_none(), first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_BUDGET;
    use crate::arith::FieldSpec;
    use crate::corpus;

    #[test]
    fn operator_identities_on_shestakov() {
        let r = check_operator_identities(&corpus::shestakov_alt());
        assert!(r.verdict, "{r:?}");
        let r5 = check_operator_identities(&corpus::shestakov_table(FieldSpec::prime(5).unwrap(), "s5"));
        assert!(!r5.verdict);
        let g = check_operator_identities(&corpus::grassmann_aug(3, FieldSpec::Rationals).unwrap());
        assert!(g.verdict);
    }

    #[test]
    fn engel_elements() {
        let a = corpus::shestakov_alt();
        assert!(!engel_element_check(&a, &a.homogeneous_basis_element(2)).unwrap().engelian);
        let e1 = engel_element_check(&a, &a.homogeneous_basis_element(0)).unwrap();
        assert_eq!((e1.engelian, e1.index), (true, Some(2)));
        let z = corpus::zero(1, 1, FieldSpec::Rationals);
        assert!(engel_element_check(&z, &z.homogeneous_basis_element(1)).unwrap().engelian);
    }

    #[test]
    fn r_nilpotency_backends() {
        let a = corpus::shestakov_alt();
        for b in [Backend::Enumerate, Backend::Symbolic] {
            let r = engel_check(&a, EngelMode::RNilpotencyOnly, b, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.verdict, Some(false));
            let w = r.witness.unwrap();
            assert_eq!(w.parity(), Parity::Odd);
            assert!(!w.coords()[2].is_zero());
        }
        let u = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let r = engel_check(&u, EngelMode::RNilpotencyOnly, Backend::Symbolic, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Some(true));
        assert!(engel_check(&u, EngelMode::FullEngel, Backend::Symbolic, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn plain_power_identity() {
        let m = corpus::m11(FieldSpec::Rationals);
        let x = m.element_from_ints(&[0, 1, 1, 0]).unwrap();
        let r = plain_r_power_identity(&m, &x).unwrap();
        assert!(r.square && r.powers);
        assert!(matches!(plain_r_power_identity(&corpus::shestakov_alt(), &corpus::shestakov_alt().zero()), Err(Error::NotAssociative)));
    }
}
