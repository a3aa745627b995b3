//! Exact rational vectors, covectors and integer matrices.
//!
//! Points of `V` are [`RationalVector`]s, functionals on `V` are
//! [`RationalCovector`]s, and linear maps preserving the lattice are
//! [`IntMatrix`]es. Everything is arbitrary precision.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A primitive integer vector, used as the deduplication key for rays and
/// orbit points.
pub type IntVec = Vec<BigInt>;

macro_rules! rational_coords {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Vec<BigRational>);

        impl $name {
            pub fn new(coords: Vec<BigRational>) -> Self {
                Self(coords)
            }

            pub fn zeros(rank: usize) -> Self {
                Self(vec![BigRational::zero(); rank])
            }

            pub fn from_i64s(coords: &[i64]) -> Self {
                Self(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
            }

            pub fn from_ints(coords: &[BigInt]) -> Self {
                Self(coords.iter().map(|c| BigRational::from_integer(c.clone())).collect())
            }

            /// The `i`-th vector of the standard basis.
            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = Self::zeros(rank);
                v.0[i] = BigRational::one();
                v
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[BigRational] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<BigRational> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            pub fn is_integral(&self) -> bool {
                self.0.iter().all(|c| c.is_integer())
            }

            /// Integer coordinates, if every coordinate is an integer.
            pub fn to_ints(&self) -> Option<IntVec> {
                self.is_integral().then(|| self.0.iter().map(|c| c.to_integer()).collect())
            }

            pub fn scale(&self, factor: &BigRational) -> Self {
                Self(self.0.iter().map(|c| c * factor).collect())
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self> {
                check_rank(self.rank(), other.rank())?;
                Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
            }

            pub fn canonical_primitive(&self) -> Result<IntVec> {
                canonical_primitive(&self.0)
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: Self) -> $name {
                assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: Self) -> $name {
                assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

rational_coords!(RationalVector);
rational_coords!(RationalCovector);

fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected, found })
    }
}

/// Evaluates the functional `ell` at `v`.
pub fn pair(ell: &RationalCovector, v: &RationalVector) -> Result<BigRational> {
    check_rank(ell.rank(), v.rank())?;
    Ok(ell.coords().iter().zip(v.coords()).map(|(a, b)| a * b).sum())
}

/// Integer evaluation `ell(v)` for integer data.
pub fn pair_ints(ell: &[BigInt], v: &[BigInt]) -> BigInt {
    debug_assert_eq!(ell.len(), v.len());
    ell.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// The unique positive multiple of `coords` with coprime integer entries.
pub fn canonical_primitive(coords: &[BigRational]) -> Result<IntVec> {
    if coords.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let denom = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: IntVec = coords.iter().map(|c| (c * &denom).to_integer()).collect();
    Ok(primitive(&scaled))
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Square integer matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        Self { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            check_rank(dim, row.len())?;
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_rank(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(Self { dim: n, entries })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    pub fn apply(&self, v: &RationalVector) -> Result<RationalVector> {
        check_rank(self.dim, v.rank())?;
        Ok(RationalVector::new(
            self.rows()
                .map(|row| row.iter().zip(v.coords()).map(|(a, b)| b * a).sum())
                .collect(),
        ))
    }

    pub fn apply_ints(&self, v: &[BigInt]) -> IntVec {
        debug_assert_eq!(self.dim, v.len());
        self.rows().map(|row| pair_ints(row, v)).collect()
    }

    /// The covector `ell ∘ self`.
    pub fn pullback(&self, ell: &RationalCovector) -> Result<RationalCovector> {
        check_rank(self.dim, ell.rank())?;
        let n = self.dim;
        Ok(RationalCovector::new(
            (0..n)
                .map(|j| (0..n).map(|i| &ell.coords()[i] * self.get(i, j)).sum())
                .collect(),
        ))
    }

    pub fn pullback_ints(&self, ell: &[BigInt]) -> IntVec {
        let n = self.dim;
        (0..n).map(|j| (0..n).map(|i| &ell[i] * self.get(i, j)).sum()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { dim: n, entries }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.rows().map(<[BigInt]>::to_vec).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Inverse over the rationals; `None` when singular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        let n = self.dim;
        let mut a: Vec<Vec<BigRational>> = self
            .rows()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
                r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let d = &f * &a[col][c];
                        a[r][c] -= d;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row.into_iter().skip(n).collect()).collect())
    }

    /// Inverse of a unimodular matrix; `None` when the determinant is not ±1.
    pub fn inverse(&self) -> Option<Self> {
        if !self.det().abs().is_one() {
            return None;
        }
        let inv = self.rational_inverse()?;
        let entries = inv.into_iter().flat_map(|row| row.into_iter().map(|x| x.to_integer())).collect();
        Some(Self { dim: self.dim, entries })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

pub(crate) fn int_to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Rank of a family of rational rows.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    row_echelon(rows).len()
}

/// Reduced row echelon form, zero rows dropped.
pub fn row_echelon(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let pv = a[pivot_row][col].clone();
        for x in a[pivot_row].iter_mut() {
            *x /= &pv;
        }
        for r in 0..a.len() {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let d = &f * &a[pivot_row][c];
                    a[r][c] -= d;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == a.len() {
            break;
        }
    }
    a.truncate(pivot_row);
    a
}

/// Integer rank helper.
pub fn int_rank(rows: &[IntVec]) -> usize {
    let rows: Vec<_> = rows.iter().map(|r| int_to_rational(r)).collect();
    rank(&rows)
}

/// Orthogonal projection of `v` onto the complement of the row space of
/// `basis` (standard inner product), returned as a primitive integer vector.
pub(crate) fn project_out(v: &[BigInt], basis: &[IntVec]) -> IntVec {
    if basis.is_empty() {
        return primitive(v);
    }
    // Gram-Schmidt over the rationals.
    let mut ortho: Vec<Vec<BigRational>> = Vec::with_capacity(basis.len());
    for b in basis {
        let mut u = int_to_rational(b);
        for o in &ortho {
            let c = dot(&u, o) / dot(o, o);
            for (x, y) in u.iter_mut().zip(o) {
                *x -= &c * y;
            }
        }
        if u.iter().any(|x| !x.is_zero()) {
            ortho.push(u);
        }
    }
    let mut w = int_to_rational(v);
    for o in &ortho {
        let c = dot(&w, o) / dot(o, o);
        for (x, y) in w.iter_mut().zip(o) {
            *x -= &c * y;
        }
    }
    if w.iter().all(Zero::is_zero) {
        return vec![BigInt::zero(); v.len()];
    }
    canonical_primitive(&w).expect("nonzero")
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Canonical basis of the span of `rows`: reduced echelon rows scaled to
/// primitive integers.
pub(crate) fn canonical_basis(rows: &[IntVec]) -> Vec<IntVec> {
    let rows: Vec<_> = rows.iter().map(|r| int_to_rational(r)).collect();
    row_echelon(&rows)
        .iter()
        .map(|r| canonical_primitive(r).expect("echelon rows are nonzero"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> IntVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pair_examples() {
        let ell = RationalCovector::from_i64s(&[1, 0, 0, 0]);
        let e1 = RationalVector::from_i64s(&[-2, 2, 2, 2]);
        let e2 = RationalVector::from_i64s(&[2, -2, 2, 2]);
        assert_eq!(pair(&ell, &e1).unwrap(), q(-2, 1));
        assert_eq!(pair(&ell, &e2).unwrap(), q(2, 1));
        assert!(pair(&RationalCovector::zeros(4), &e1).unwrap().is_zero());
        assert_eq!(
            pair(&ell, &RationalVector::zeros(3)),
            Err(Error::RankMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn canonical_primitive_examples() {
        assert_eq!(canonical_primitive(&[q(1, 2), q(3, 2)]).unwrap(), ints(&[1, 3]));
        assert_eq!(canonical_primitive(&[q(2, 1), q(4, 1), q(6, 1)]).unwrap(), ints(&[1, 2, 3]));
        assert_eq!(canonical_primitive(&[q(-1, 1), q(-1, 1)]).unwrap(), ints(&[-1, -1]));
        assert_eq!(canonical_primitive(&[q(0, 1), q(0, 1)]), Err(Error::ZeroVector));
    }

    #[test]
    fn matrix_examples() {
        let v = RationalVector::from_i64s(&[1, 0]);
        assert_eq!(IntMatrix::identity(2).apply(&v).unwrap(), v);
        let s1 = IntMatrix::from_i64_rows(&[&[-1, 1], &[0, 1]]).unwrap();
        assert_eq!(s1.apply(&v).unwrap(), RationalVector::from_i64s(&[-1, 0]));
        assert_eq!(s1.det(), BigInt::from(-1));
        assert!(s1.mul(&s1).unwrap().is_identity());
        assert_eq!(s1.inverse().unwrap(), s1);
        assert!(s1.apply(&RationalVector::zeros(3)).is_err());
    }

    #[test]
    fn det_needs_pivoting() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(m.det(), BigInt::from(-1));
        let m = IntMatrix::from_i64_rows(&[&[2, 3], &[4, 6]]).unwrap();
        assert!(m.det().is_zero());
        assert!(m.inverse().is_none());
        let m = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 1, 0], &[3, 5, -1]]).unwrap();
        assert_eq!(m.det(), BigInt::from(-1));
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn pullback_matches_pairing() {
        let m = IntMatrix::from_i64_rows(&[&[2, 1], &[-1, 3]]).unwrap();
        let ell = RationalCovector::from_i64s(&[5, -2]);
        let v = RationalVector::new(vec![q(1, 3), q(-7, 2)]);
        let lhs = pair(&m.pullback(&ell).unwrap(), &v).unwrap();
        let rhs = pair(&ell, &m.apply(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_and_basis() {
        let basis = canonical_basis(&[ints(&[2, 2, 0]), ints(&[1, 1, 0])]);
        assert_eq!(basis, vec![ints(&[1, 1, 0])]);
        assert_eq!(project_out(&ints(&[1, 0, 0]), &basis), ints(&[1, -1, 0]));
        assert_eq!(project_out(&ints(&[3, 3, 0]), &basis), ints(&[0, 0, 0]));
    }
}
