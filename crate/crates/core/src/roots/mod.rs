//! Generalized root systems and their Coxeter matrices.

mod builtin;

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub use builtin::{builtin, builtin_list, cartan_matrix, BuiltinInfo, DiagramKind};

use crate::corevec::{pair, rank, RationalCovector, RationalVector};
use crate::error::{Error, Result};

/// A generalized root: a class `e` together with its coroot `ell`, subject to
/// `ell(e) = -2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub e: RationalVector,
    pub ell: RationalCovector,
    pub label: String,
}

impl Root {
    pub fn new(e: RationalVector, ell: RationalCovector, label: impl Into<String>) -> Self {
        Self { e, ell, label: label.into() }
    }

    pub fn from_i64s(e: &[i64], ell: &[i64], label: impl Into<String>) -> Self {
        Self::new(RationalVector::from_i64s(e), RationalCovector::from_i64s(ell), label)
    }
}

/// A finite, ordered collection of roots in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    rank: usize,
    roots: Vec<Root>,
    pub kind: Option<String>,
}

impl RootSystem {
    /// Checks only that every vector has the ambient rank; the root axioms
    /// are checked by [`RootSystem::validate`].
    pub fn new(rank: usize, roots: Vec<Root>) -> Result<Self> {
        for r in &roots {
            for found in [r.e.rank(), r.ell.rank()] {
                if found != rank {
                    return Err(Error::RankMismatch { expected: rank, found });
                }
            }
        }
        Ok(Self { rank, roots, kind: None })
    }

    pub fn with_kind(mut self, kind: impl Into<String>) -> Self {
        self.kind = Some(kind.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> Result<&Root> {
        self.roots.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.roots.len() })
    }

    /// `ell_i(e_j)`.
    pub fn pairing(&self, i: usize, j: usize) -> BigRational {
        pair(&self.roots[i].ell, &self.roots[j].e).expect("ranks checked at construction")
    }

    /// The full table `ell_i(e_j)`.
    pub fn pairing_table(&self) -> Vec<Vec<BigRational>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.pairing(i, j)).collect()).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_root_system(self)
    }

    /// Fails with [`Error::InvalidSystem`] unless every axiom holds.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate() {
            ValidationReport::Valid => Ok(()),
            ValidationReport::Invalid(v) => Err(Error::InvalidSystem(v.to_string())),
        }
    }
}

/// The root axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `ell_a(e_a) = -2`.
    SelfPairing,
    /// `ell_a(e_b) >= 0` for `a != b`.
    NonNegativePairing,
    /// `ell_a(e_b) = 0` iff `ell_b(e_a) = 0`.
    SymmetricZeros,
    /// `{e_a, e_b}` is linearly independent.
    IndependentRoots,
    /// `{ell_a, ell_b}` is linearly independent (this also makes `a -> ell_a`
    /// injective).
    IndependentCoroots,
}

impl Axiom {
    pub fn number(self) -> usize {
        match self {
            Axiom::SelfPairing => 1,
            Axiom::NonNegativePairing => 2,
            Axiom::SymmetricZeros => 3,
            Axiom::IndependentRoots | Axiom::IndependentCoroots => 4,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Axiom::SelfPairing => "ell_a(e_a) = -2",
            Axiom::NonNegativePairing => "ell_a(e_b) >= 0 for a != b",
            Axiom::SymmetricZeros => "ell_a(e_b) = 0 iff ell_b(e_a) = 0",
            Axiom::IndependentRoots => "e_a, e_b linearly independent",
            Axiom::IndependentCoroots => "ell_a, ell_b linearly independent",
        }
    }
}

/// First violated axiom with the offending indices and pairing values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub values: Vec<BigRational>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} ({}) fails for roots {:?}", self.axiom.number(), self.axiom.description(), self.indices)?;
        if !self.values.is_empty() {
            let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
            write!(f, " with values [{}]", vals.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    Valid,
    Invalid(Violation),
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }
}

fn independent(a: &[BigRational], b: &[BigRational]) -> bool {
    rank(&[a.to_vec(), b.to_vec()]) == 2
}

/// Checks the axioms one at a time, each over indices in lexicographic order,
/// and reports the first failure. Pairwise independence is checked before the
/// pairing axioms so that degenerate input is reported as such.
pub fn validate_root_system(rs: &RootSystem) -> ValidationReport {
    let n = rs.len();
    let two = BigRational::from_integer(2.into());
    let fail = |axiom, indices: Vec<usize>, values| ValidationReport::Invalid(Violation { axiom, indices, values });

    let roots = rs.roots();
    for i in 0..n {
        for j in i + 1..n {
            if !independent(roots[i].e.coords(), roots[j].e.coords()) {
                return fail(Axiom::IndependentRoots, vec![i, j], Vec::new());
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !independent(roots[i].ell.coords(), roots[j].ell.coords()) {
                return fail(Axiom::IndependentCoroots, vec![i, j], Vec::new());
            }
        }
    }
    for i in 0..n {
        let v = rs.pairing(i, i);
        if v != -two.clone() {
            return fail(Axiom::SelfPairing, vec![i], vec![v]);
        }
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let v = rs.pairing(i, j);
            if v.is_negative() {
                return fail(Axiom::NonNegativePairing, vec![i, j], vec![v]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (rs.pairing(i, j), rs.pairing(j, i));
            if a.is_zero() != b.is_zero() {
                return fail(Axiom::SymmetricZeros, vec![i, j], vec![a, b]);
            }
        }
    }
    ValidationReport::Valid
}

/// An entry `m(a, b)` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterEntry {
    Finite(u32),
    Infinite,
}

impl CoxeterEntry {
    /// `m` for a pair of distinct roots from the product of their pairings.
    pub fn from_product(product: &BigRational) -> Self {
        if !product.is_integer() {
            return CoxeterEntry::Infinite;
        }
        match product.to_integer().to_i64() {
            Some(0) => CoxeterEntry::Finite(2),
            Some(1) => CoxeterEntry::Finite(3),
            Some(2) => CoxeterEntry::Finite(4),
            Some(3) => CoxeterEntry::Finite(6),
            _ => CoxeterEntry::Infinite,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            CoxeterEntry::Finite(m) => Some(m),
            CoxeterEntry::Infinite => None,
        }
    }
}

impl fmt::Display for CoxeterEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterEntry::Finite(m) => write!(f, "{m}"),
            CoxeterEntry::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix(Vec<Vec<CoxeterEntry>>);

impl CoxeterMatrix {
    pub fn get(&self, i: usize, j: usize) -> CoxeterEntry {
        self.0[i][j]
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<CoxeterEntry>] {
        &self.0
    }
}

pub fn coxeter_matrix(rs: &RootSystem) -> Result<CoxeterMatrix> {
    rs.ensure_valid()?;
    let n = rs.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CoxeterEntry::Finite(1)
                    } else {
                        CoxeterEntry::from_product(&(rs.pairing(i, j) * rs.pairing(j, i)))
                    }
                })
                .collect()
        })
        .collect();
    Ok(CoxeterMatrix(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(rank: usize, roots: &[(&[i64], &[i64])]) -> RootSystem {
        let roots = roots.iter().enumerate().map(|(i, (e, l))| Root::from_i64s(e, l, format!("r{i}"))).collect();
        RootSystem::new(rank, roots).unwrap()
    }

    #[test]
    fn proportional_roots_are_rejected() {
        let rs = system(2, &[(&[1, 0], &[-2, 1]), (&[2, 0], &[1, -1])]);
        match rs.validate() {
            ValidationReport::Invalid(v) => {
                assert_eq!(v.axiom, Axiom::IndependentRoots);
                assert_eq!(v.indices, vec![0, 1]);
            }
            ValidationReport::Valid => panic!("expected a violation"),
        }
    }

    #[test]
    fn self_pairing_must_be_minus_two() {
        let rs = system(2, &[(&[1, 0], &[-1, 0])]);
        let ValidationReport::Invalid(v) = rs.validate() else { panic!() };
        assert_eq!(v.axiom, Axiom::SelfPairing);
        assert_eq!(v.values, vec![BigRational::from_integer((-1).into())]);
    }

    #[test]
    fn negative_and_asymmetric_pairings() {
        let rs = system(2, &[(&[1, 0], &[-2, -1]), (&[0, 1], &[1, -2])]);
        let ValidationReport::Invalid(v) = rs.validate() else { panic!() };
        assert_eq!((v.axiom, v.indices), (Axiom::NonNegativePairing, vec![0, 1]));

        let rs = system(2, &[(&[1, 0], &[-2, 0]), (&[0, 1], &[1, -2])]);
        let ValidationReport::Invalid(v) = rs.validate() else { panic!() };
        assert_eq!(v.axiom, Axiom::SymmetricZeros);
    }

    #[test]
    fn dependent_coroots_are_rejected() {
        // ell_1 = -ell_0 passes the first three axioms.
        let rs = system(3, &[(&[1, 0, 0], &[-2, 0, 0]), (&[-1, 1, 0], &[2, 0, 0])]);
        let ValidationReport::Invalid(v) = rs.validate() else { panic!() };
        assert_eq!(v.axiom, Axiom::IndependentCoroots);
    }

    #[test]
    fn coxeter_table() {
        let a2 = system(2, &[(&[1, 0], &[-2, 1]), (&[0, 1], &[1, -2])]);
        let m = coxeter_matrix(&a2).unwrap();
        assert_eq!(m.get(0, 1), CoxeterEntry::Finite(3));
        assert_eq!(m.get(0, 0), CoxeterEntry::Finite(1));

        let orth = system(2, &[(&[1, 0], &[-2, 0]), (&[0, 1], &[0, -2])]);
        assert_eq!(coxeter_matrix(&orth).unwrap().get(1, 0), CoxeterEntry::Finite(2));

        let bad = system(2, &[(&[1, 0], &[-1, 0])]);
        assert!(matches!(coxeter_matrix(&bad), Err(Error::InvalidSystem(_))));
    }

    #[test]
    fn product_table() {
        let e = |n: i64| CoxeterEntry::from_product(&BigRational::from_integer(n.into()));
        assert_eq!([e(0), e(1), e(2), e(3)], [2, 3, 4, 6].map(CoxeterEntry::Finite));
        assert_eq!(e(4), CoxeterEntry::Infinite);
        assert_eq!(e(9), CoxeterEntry::Infinite);
        assert_eq!(
            CoxeterEntry::from_product(&BigRational::new(1.into(), 2.into())),
            CoxeterEntry::Infinite
        );
    }

    #[test]
    fn rank_mismatch_rejected() {
        let r = Root::from_i64s(&[1, 0], &[-2, 0, 0], "bad");
        assert!(RootSystem::new(2, vec![r]).is_err());
    }
}
