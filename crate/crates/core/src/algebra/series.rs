use super::subspace::SubSuperspace;
use super::SuperAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    PowerSeries,
    DerivedSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesVerdict {
    /// The term with this index is zero and the previous one is not.
    ReachesZero(usize),
    /// Two consecutive terms agree; `index` is the first of them.
    Stabilizes { index: usize, limit: SubSuperspace },
}

/// A descending series of graded subspaces.
///
/// Power series terms are numbered from 1 (`chain[0] = A^1`), derived series
/// terms from 0 (`chain[0] = A^(0)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub chain: Vec<SubSuperspace>,
    pub verdict: SeriesVerdict,
}

impl SeriesReport {
    fn first_index(&self) -> usize {
        match self.kind {
            SeriesKind::PowerSeries => 1,
            SeriesKind::DerivedSeries => 0,
        }
    }

    /// Term with the series' own numbering.
    pub fn term(&self, n: usize) -> Option<&SubSuperspace> {
        n.checked_sub(self.first_index()).and_then(|i| self.chain.get(i))
    }

    pub fn reaches_zero(&self) -> bool {
        matches!(self.verdict, SeriesVerdict::ReachesZero(_))
    }

    pub fn zero_index(&self) -> Option<usize> {
        match self.verdict {
            SeriesVerdict::ReachesZero(n) => Some(n),
            SeriesVerdict::Stabilizes { .. } => None,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(SubSuperspace::dim).collect()
    }
}

/// `A^1 = A`, `A^k = sum_{i+j=k} A^i A^j`.
pub fn power_series(a: &SuperAlgebra) -> SeriesReport {
    power_series_of(a, &SubSuperspace::whole(a))
}

/// Power series of a subalgebra `B` (its own powers `B^k`, computed inside
/// the ambient algebra).
pub fn power_series_of(a: &SuperAlgebra, b: &SubSuperspace) -> SeriesReport {
    let mut chain = vec![b.clone()];
    loop {
        let k = chain.len() + 1;
        let last = &chain[chain.len() - 1];
        if last.is_zero() {
            return SeriesReport { kind: SeriesKind::PowerSeries, verdict: SeriesVerdict::ReachesZero(k - 1), chain };
        }
        let mut next = SubSuperspace::zero(a);
        for i in 1..k {
            let p = SubSuperspace::product(a, &chain[i - 1], &chain[k - i - 1]);
            next = next.sum(&p);
        }
        if &next == last {
            let limit = next.clone();
            chain.push(next);
            return SeriesReport {
                kind: SeriesKind::PowerSeries,
                verdict: SeriesVerdict::Stabilizes { index: k - 1, limit },
                chain,
            };
        }
        chain.push(next);
    }
}

/// `A^(0) = A`, `A^(k+1) = A^(k) A^(k)`.
pub fn derived_series(a: &SuperAlgebra) -> SeriesReport {
    let mut chain = vec![SubSuperspace::whole(a)];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_zero() {
            let n = chain.len() - 1;
            return SeriesReport { kind: SeriesKind::DerivedSeries, verdict: SeriesVerdict::ReachesZero(n), chain };
        }
        let next = SubSuperspace::product(a, last, last);
        if &next == last {
            let index = chain.len() - 1;
            let limit = next.clone();
            chain.push(next);
            return SeriesReport { kind: SeriesKind::DerivedSeries, verdict: SeriesVerdict::Stabilizes { index, limit }, chain };
        }
        chain.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::corpus;

    #[test]
    fn shestakov_is_solvable_not_nilpotent() {
        let a = corpus::shestakov_alt();
        let p = power_series(&a);
        assert_eq!(p.dims(), vec![3, 2, 2]);
        assert!(matches!(p.verdict, SeriesVerdict::Stabilizes { index: 2, .. }));
        let d = derived_series(&a);
        assert_eq!(d.verdict, SeriesVerdict::ReachesZero(2));
        assert_eq!(d.term(1).unwrap().dim(), 2);
    }

    #[test]
    fn zero_algebra() {
        let a = corpus::zero(1, 2, FieldSpec::Rationals);
        assert_eq!(power_series(&a).verdict, SeriesVerdict::ReachesZero(2));
        assert_eq!(derived_series(&a).verdict, SeriesVerdict::ReachesZero(1));
    }

    #[test]
    fn upper_triangular_three() {
        let a = corpus::upper_tri(3, &[0, 1, 0], FieldSpec::Rationals).unwrap();
        let p = power_series(&a);
        assert_eq!(p.verdict, SeriesVerdict::ReachesZero(3));
        assert_eq!(p.term(2).unwrap().dim(), 1);
    }

    #[test]
    fn matrix_superalgebra_is_not_solvable() {
        let d = derived_series(&corpus::m11(FieldSpec::Rationals));
        assert!(matches!(d.verdict, SeriesVerdict::Stabilizes { index: 0, .. }));
    }
}
