//! Built-in named superalgebras.
//!
//! Every entry is addressed by a spec string `name(arg, ...)`, e.g.
//! `upper-tri(3,010,Q)` or `plus-of(m11(GF3))`. Fields are written `Q`,
//! `GF3` or `GF(3)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraData, SuperAlgebra, TableEntry};
use crate::arith::{FieldSpec, Matrix};
use crate::error::{Error, Result};

fn gf3() -> FieldSpec {
    FieldSpec::prime(3).expect("3 is prime")
}

/// The 3-dimensional table `e1 f2 = f2 e1 = f1`, `f1 f2 = -f2 f1 = e1` with
/// `e1` even and `f1, f2` odd.
pub fn shestakov_table(field: FieldSpec, name: &str) -> SuperAlgebra {
    SuperAlgebra::from_int_table(
        name,
        field,
        &[0, 1, 1],
        &["e1", "f1", "f2"],
        &[(0, 2, 1, 1), (2, 0, 1, 1), (1, 2, 0, 1), (2, 1, 0, -1)],
    )
    .expect("valid table")
}

/// The table over GF(3): an alternative superalgebra that is graded-nil
/// but not nilpotent.
pub fn shestakov_alt() -> SuperAlgebra {
    shestakov_table(gf3(), "shestakov-alt")
}

pub fn shestakov_jordan(field: FieldSpec) -> Result<SuperAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    Ok(shestakov_table(field, &format!("shestakov-jordan({field})")))
}

/// The same table with `e1 e1 = e1` added: a non-alternative control.
pub fn shestakov_idem(field: FieldSpec) -> SuperAlgebra {
    let mut data = shestakov_table(field, "").data();
    data.name = format!("shestakov-idem({field})");
    data.table.push(TableEntry::new(0, 0, 0, field.one()));
    SuperAlgebra::new(data).expect("valid table")
}

pub fn zero(d0: usize, d1: usize, field: FieldSpec) -> SuperAlgebra {
    let parity: Vec<u8> = std::iter::repeat_n(0, d0).chain(std::iter::repeat_n(1, d1)).collect();
    let names = (1..=d0).map(|i| format!("e{i}")).chain((1..=d1).map(|i| format!("f{i}"))).collect();
    SuperAlgebra::new(AlgebraData {
        name: format!("zero({d0},{d1},{field})"),
        field,
        parity,
        basis_names: names,
        table: vec![],
    })
    .expect("empty table is valid")
}

/// Matrix units `E_ij` of an `n x n` matrix algebra with `|E_ij| = p_i + p_j`,
/// restricted to the pairs accepted by `keep`, in row-major order.
fn matrix_units(
    name: String,
    n: usize,
    pattern: &[u8],
    field: FieldSpec,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<SuperAlgebra> {
    if pattern.len() != n || pattern.iter().any(|&p| p > 1) {
        return Err(Error::BadParams(format!("parity pattern must have {n} digits 0/1")));
    }
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).collect();
    let index: BTreeMap<(usize, usize), usize> = units.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let mut table = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(j2, k)) in units.iter().enumerate() {
            if j == j2 {
                if let Some(&c) = index.get(&(i, k)) {
                    table.push(TableEntry::new(a, b, c, field.one()));
                }
            }
        }
    }
    SuperAlgebra::new(AlgebraData {
        name,
        field,
        parity: units.iter().map(|&(i, j)| (pattern[i] + pattern[j]) % 2).collect(),
        basis_names: units.iter().map(|&(i, j)| format!("E{}{}", i + 1, j + 1)).collect(),
        table,
    })
}

/// The 2x2 matrix superalgebra `M_{1|1}` (basis E11, E12, E21, E22; the
/// off-diagonal units are odd).
pub fn m11(field: FieldSpec) -> SuperAlgebra {
    matrix_units(format!("m11({field})"), 2, &[0, 1], field, |_, _| true).expect("valid pattern")
}

/// Strictly upper triangular `n x n` matrices graded by an index parity
/// pattern.
pub fn upper_tri(n: usize, pattern: &[u8], field: FieldSpec) -> Result<SuperAlgebra> {
    if n == 0 {
        return Err(Error::BadParams("upper-tri needs n >= 1".into()));
    }
    let pat: String = pattern.iter().map(|p| p.to_string()).collect();
    matrix_units(format!("upper-tri({n},{pat},{field})"), n, pattern, field, |i, j| i < j)
}

/// Augmentation ideal of the Grassmann algebra on `m` generators: nonempty
/// monomials ordered by length then lexicographically, graded by length.
pub fn grassmann_aug(m: usize, field: FieldSpec) -> Result<SuperAlgebra> {
    if m == 0 || m > 8 {
        return Err(Error::BadParams("grassmann-aug needs 1 <= m <= 8".into()));
    }
    let mut monomials: Vec<u32> = (1..(1u32 << m)).collect();
    monomials.sort_by_key(|&s| (s.count_ones(), (0..m).map(|i| u32::from(s >> i & 1 == 0)).collect::<Vec<_>>()));
    let index: BTreeMap<u32, usize> = monomials.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut table = Vec::new();
    for (a, &s) in monomials.iter().enumerate() {
        for (b, &t) in monomials.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            let c = if grassmann_sign(s, t) { -1 } else { 1 };
            table.push(TableEntry::new(a, b, index[&(s | t)], field.from_i64(c)));
        }
    }
    let name_of = |s: u32| -> String {
        let digits: String = (0..m).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        format!("e{digits}")
    };
    SuperAlgebra::new(AlgebraData {
        name: format!("grassmann-aug({m},{field})"),
        field,
        parity: monomials.iter().map(|s| (s.count_ones() % 2) as u8).collect(),
        basis_names: monomials.iter().map(|&s| name_of(s)).collect(),
        table,
    })
}

/// Sign of `e_S e_T` for disjoint subsets given as bitmasks: negative when
/// the number of pairs `s in S, t in T` with `s > t` is odd.
pub fn grassmann_sign(s: u32, t: u32) -> bool {
    let mut inversions = 0;
    for i in 0..32 {
        if s >> i & 1 == 1 {
            inversions += (t & ((1u32 << i) - 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

/// Parses a field token: `Q`, `GFp` or `GF(p)`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let digits = s
        .strip_prefix("GF")
        .map(|r| r.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(r))
        .ok_or_else(|| Error::BadParams(format!("unknown field {s:?}")))?;
    let p: u64 = digits.parse().map_err(|_| Error::BadParams(format!("unknown field {s:?}")))?;
    FieldSpec::prime(p).map_err(|_| Error::BadParams(format!("{p} is not a supported prime")))
}

/// Splits `name(a, b(c, d))` into `name` and its top-level arguments.
fn split_spec(spec: &str) -> Result<(String, Vec<String>)> {
    let spec = spec.trim();
    let Some(open) = spec.find('(') else {
        return Ok((spec.to_string(), vec![]));
    };
    let inner = spec[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::BadParams(format!("unbalanced parentheses in {spec:?}")))?;
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::BadParams(format!("unbalanced parentheses in {spec:?}")));
        }
        current.push(ch);
    }
    if depth != 0 {
        return Err(Error::BadParams(format!("unbalanced parentheses in {spec:?}")));
    }
    if !current.trim().is_empty() || !args.is_empty() {
        args.push(current.trim().to_string());
    }
    Ok((spec[..open].trim().to_string(), args))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::BadParams(format!("expected a count, got {s:?}")))
}

fn optional_field(args: &[String], at: usize, default: FieldSpec) -> Result<FieldSpec> {
    match args.get(at) {
        Some(s) => parse_field(s),
        None => Ok(default),
    }
}

fn arity(name: &str, args: &[String], min: usize, max: usize) -> Result<()> {
    if args.len() < min || args.len() > max {
        return Err(Error::BadParams(format!("{name} takes {min}..={max} arguments, got {}", args.len())));
    }
    Ok(())
}

/// Builds a corpus algebra from its spec string.
pub fn build(spec: &str) -> Result<SuperAlgebra> {
    let (name, args) = split_spec(spec)?;
    match name.as_str() {
        "shestakov-alt" => {
            arity(&name, &args, 0, 1)?;
            let field = optional_field(&args, 0, gf3())?;
            Ok(if args.is_empty() { shestakov_alt() } else { shestakov_table(field, &format!("shestakov-alt({field})")) })
        }
        "shestakov-jordan" => {
            arity(&name, &args, 0, 1)?;
            shestakov_jordan(optional_field(&args, 0, FieldSpec::Rationals)?)
        }
        "shestakov-idem" => {
            arity(&name, &args, 0, 1)?;
            Ok(shestakov_idem(optional_field(&args, 0, gf3())?))
        }
        "zero" => {
            arity(&name, &args, 2, 3)?;
            Ok(zero(parse_usize(&args[0])?, parse_usize(&args[1])?, optional_field(&args, 2, FieldSpec::Rationals)?))
        }
        "m11" => {
            arity(&name, &args, 0, 1)?;
            Ok(m11(optional_field(&args, 0, FieldSpec::Rationals)?))
        }
        "upper-tri" => {
            arity(&name, &args, 1, 3)?;
            let n = parse_usize(&args[0])?;
            let mut pattern = vec![0u8; n];
            let mut rest = &args[1..];
            if let Some(p) = rest.first().filter(|p| !p.is_empty() && p.chars().all(|c| c == '0' || c == '1')) {
                pattern = p.bytes().map(|b| b - b'0').collect();
                rest = &rest[1..];
            }
            if rest.len() > 1 {
                return Err(Error::BadParams("upper-tri(n[,pattern][,field])".into()));
            }
            upper_tri(n, &pattern, optional_field(rest, 0, FieldSpec::Rationals)?)
        }
        "grassmann-aug" => {
            arity(&name, &args, 1, 2)?;
            grassmann_aug(parse_usize(&args[0])?, optional_field(&args, 1, FieldSpec::Rationals)?)
        }
        "plus-of" => {
            arity(&name, &args, 1, 1)?;
            let inner = build(&args[0])?;
            let plus = crate::engine::plus_functor(&inner)?;
            Ok(plus.with_name(format!("plus-of({})", inner.name())))
        }
        _ => Err(Error::UnknownName(name)),
    }
}

/// Description of a built-in family for listings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub fn families() -> Vec<Family> {
    vec![
        Family { name: "shestakov-alt", params: "[field=GF3]", summary: "3-dim graded-nil, non-nilpotent alternative superalgebra in characteristic 3" },
        Family { name: "shestakov-jordan", params: "[field=Q]", summary: "the same table read as a Jordan superalgebra" },
        Family { name: "shestakov-idem", params: "[field=GF3]", summary: "the same table plus e1*e1 = e1 (non-alternative control)" },
        Family { name: "zero", params: "d0,d1[,field=Q]", summary: "zero product on d0 even and d1 odd basis vectors" },
        Family { name: "m11", params: "[field=Q]", summary: "2x2 matrix superalgebra, off-diagonal units odd" },
        Family { name: "upper-tri", params: "n[,pattern=0..0][,field=Q]", summary: "strictly upper triangular matrices, |E_ij| = p_i + p_j" },
        Family { name: "grassmann-aug", params: "m[,field=Q]", summary: "augmentation ideal of the Grassmann algebra, graded by length" },
        Family { name: "plus-of", params: "spec", summary: "supersymmetrized product of an associative corpus algebra" },
    ]
}

/// Expected classification of a corpus instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub associative: bool,
    pub supercommutative: bool,
    pub alternative: bool,
    /// `None` in characteristic 2.
    pub jordan: Option<bool>,
    pub graded_nil: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub r_nilpotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub spec: &'static str,
    pub expected: Expected,
}

const fn exp(
    associative: bool,
    supercommutative: bool,
    alternative: bool,
    jordan: Option<bool>,
    graded_nil: bool,
    nilpotent: bool,
    solvable: bool,
    r_nilpotent: bool,
) -> Expected {
    Expected { associative, supercommutative, alternative, jordan, graded_nil, nilpotent, solvable, r_nilpotent }
}

/// Regression instances with their expected classification.
pub fn entries() -> Vec<CorpusEntry> {
    let nilpotent_assoc = exp(true, true, true, Some(true), true, true, true, true);
    let nilpotent_noncomm = exp(true, false, true, Some(false), true, true, true, true);
    let e = |spec, expected| CorpusEntry { spec, expected };
    vec![
        e("shestakov-alt", exp(false, true, true, Some(true), true, false, true, false)),
        e("shestakov-alt(GF5)", exp(false, true, false, Some(true), true, false, true, false)),
        e("shestakov-alt(Q)", exp(false, true, false, Some(true), true, false, true, false)),
        e("shestakov-jordan", exp(false, true, false, Some(true), true, false, true, false)),
        e("shestakov-idem", exp(false, true, false, Some(false), false, false, false, false)),
        e("zero(0,1)", nilpotent_assoc.clone()),
        e("zero(1,2,GF3)", nilpotent_assoc.clone()),
        e("zero(2,0,GF2)", exp(true, true, true, None, true, true, true, true)),
        e("m11", exp(true, false, true, Some(false), false, false, false, false)),
        e("m11(GF3)", exp(true, false, true, Some(false), false, false, false, false)),
        e("upper-tri(2,01)", nilpotent_assoc.clone()),
        e("upper-tri(3,010)", nilpotent_noncomm.clone()),
        e("upper-tri(3,010,GF3)", nilpotent_noncomm.clone()),
        e("upper-tri(3,000,GF3)", nilpotent_noncomm.clone()),
        e("upper-tri(4,0110)", nilpotent_noncomm.clone()),
        e("upper-tri(5,01010)", nilpotent_noncomm.clone()),
        e("grassmann-aug(1)", nilpotent_assoc.clone()),
        e("grassmann-aug(2,GF3)", nilpotent_assoc.clone()),
        e("grassmann-aug(3)", nilpotent_assoc.clone()),
        e("grassmann-aug(4)", nilpotent_assoc.clone()),
        e("plus-of(m11(GF3))", exp(false, true, false, Some(true), false, false, false, false)),
        e("plus-of(upper-tri(3,010))", nilpotent_assoc),
    ]
}

/// Every regression instance, built.
pub fn regression_algebras() -> Vec<SuperAlgebra> {
    entries().into_iter().map(|e| build(e.spec).expect("corpus entries build")).collect()
}

const PERTURBATION_BASES: [&str; 8] = [
    "zero(1,2)",
    "upper-tri(3,010)",
    "upper-tri(4,0110)",
    "upper-tri(3,000,GF3)",
    "upper-tri(4,0101,GF3)",
    "grassmann-aug(2)",
    "grassmann-aug(3)",
    "grassmann-aug(2,GF3)",
];

fn random_graded_matrix(rng: &mut ChaCha8Rng, a: &SuperAlgebra) -> Matrix<FieldSpec> {
    let f = a.field();
    let d = a.dim();
    loop {
        let mut p = Matrix::zeros(f, d, d);
        for r in 0..d {
            for c in 0..d {
                if a.parity()[r] == a.parity()[c] {
                    p.set(r, c, f.from_i64(rng.gen_range(-2..=2)));
                }
            }
        }
        if p.inverse().is_some() {
            return p;
        }
    }
}

fn random_sparse_table(rng: &mut ChaCha8Rng, name: String) -> SuperAlgebra {
    let f = gf3();
    let d = rng.gen_range(2..=4);
    let parity: Vec<u8> = (0..d).map(|_| rng.gen_range(0..=1)).collect();
    let mut entries = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=4) {
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        let want = (parity[i] + parity[j]) % 2;
        let targets: Vec<usize> = (0..d).filter(|&k| parity[k] == want).collect();
        if targets.is_empty() {
            continue;
        }
        let k = targets[rng.gen_range(0..targets.len())];
        entries.insert((i, j, k), f.from_i64(rng.gen_range(1..=2)));
    }
    SuperAlgebra::new(AlgebraData {
        name,
        field: f,
        parity,
        basis_names: (1..=d).map(|n| format!("x{n}")).collect(),
        table: entries.into_iter().map(|((i, j, k), c)| TableEntry::new(i, j, k, c)).collect(),
    })
    .expect("random tables are graded")
}

/// Endless seeded stream of random graded algebras: even positions are
/// graded basis changes of nilpotent associative corpus algebras, odd
/// positions are sparse tables over GF(3). Nothing is filtered.
pub fn random_perturbations(seed: u64) -> impl Iterator<Item = SuperAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0usize..).map(move |n| {
        if n % 2 == 0 {
            let base = build(PERTURBATION_BASES[rng.gen_range(0..PERTURBATION_BASES.len())]).expect("bases build");
            let p = random_graded_matrix(&mut rng, &base);
            let name = format!("perturbed-{n}({})", base.name());
            base.change_basis(&p, &name).expect("graded invertible change")
        } else {
            random_sparse_table(&mut rng, format!("random-{n}"))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings() {
        assert_eq!(build("shestakov-alt").unwrap(), shestakov_alt());
        assert_eq!(build("zero(1, 2)").unwrap().dim(), 3);
        assert_eq!(build("upper-tri(3,010,GF(3))").unwrap().parity(), &[1, 0, 1]);
        assert_eq!(build("grassmann-aug(3,Q)").unwrap().dim(), 7);
        assert!(matches!(build("nope"), Err(Error::UnknownName(_))));
        assert!(matches!(build("zero(1)"), Err(Error::BadParams(_))));
        assert!(matches!(build("m11(GF4)"), Err(Error::BadParams(_))));
        assert!(matches!(build("upper-tri(3,01)"), Err(Error::BadParams(_))));
        assert!(matches!(build("shestakov-jordan(GF2)"), Err(Error::CharTwoUnsupported)));
    }

    #[test]
    fn shestakov_entries() {
        let a = shestakov_alt();
        assert_eq!(a.table().len(), 4);
        assert_eq!(a.basis_names(), &["e1", "f1", "f2"]);
    }

    #[test]
    fn grassmann_signs() {
        // e2 e1 = -e12, e1 e2 = e12, e3 e12 = e123 (two transpositions)
        assert!(grassmann_sign(0b10, 0b01));
        assert!(!grassmann_sign(0b01, 0b10));
        assert!(!grassmann_sign(0b100, 0b011));
        let g = grassmann_aug(2, FieldSpec::Rationals).unwrap();
        assert_eq!(g.basis_names(), &["e1", "e2", "e12"]);
        let p = g.mul(&g.basis_element(1), &g.basis_element(0)).unwrap();
        assert_eq!(p, g.basis_element(2).neg());
    }

    #[test]
    fn matrix_units_multiply() {
        let m = m11(FieldSpec::Rationals);
        let p = m.mul(&m.basis_element(1), &m.basis_element(2)).unwrap();
        assert_eq!(p, m.basis_element(0));
    }

    #[test]
    fn perturbations_are_seeded() {
        let a: Vec<_> = random_perturbations(7).take(6).collect();
        let b: Vec<_> = random_perturbations(7).take(6).collect();
        assert_eq!(a, b);
        assert!(a[0].name().starts_with("perturbed-0("));
        assert!(a.iter().all(|x| x.validate().is_valid()));
    }
}
