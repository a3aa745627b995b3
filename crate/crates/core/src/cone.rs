//! Rational polyhedral cones in double description.
//!
//! A [`Cone`] is built from either generators or inequalities and lazily
//! completes the other side with the double-description method. Both sides
//! are kept in a canonical, irredundant form so that cones compare equal
//! exactly when they are equal as sets:
//!
//! * generators: a reduced-echelon basis of the lineality space plus the
//!   extreme rays of the pointed part, projected onto the orthogonal
//!   complement of the lineality space;
//! * inequalities: a reduced-echelon basis of the implicit equations plus
//!   the facet normals, projected onto the complement of the equations.
//!
//! The two sides are the same data structure: the inequality side of a cone
//! is the generator side of its dual.

use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::corevec::{
    canonical_basis, canonical_primitive, int_rank, pair_ints, primitive, project_out, IntMatrix,
    IntVec, RationalCovector, RationalVector,
};
use crate::error::{Error, Result};

/// One side of a double description.
///
/// On the generator side `linear` spans the lineality space and `extreme`
/// holds the extreme rays. On the inequality side `linear` spans the
/// equations and `extreme` holds the facet normals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Description {
    pub linear: Vec<IntVec>,
    pub extreme: Vec<IntVec>,
}

impl Description {
    fn canonical(linear: &[IntVec], extreme: &[IntVec]) -> Self {
        let linear = canonical_basis(linear);
        let mut extreme: Vec<IntVec> = extreme
            .iter()
            .map(|v| project_out(v, &linear))
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        extreme.sort();
        extreme.dedup();
        Self { linear, extreme }
    }

    /// The description read as a list of inequalities `a(x) >= 0`, with
    /// each linear element contributing both signs.
    fn as_constraints(&self) -> Vec<IntVec> {
        let mut out = Vec::with_capacity(2 * self.linear.len() + self.extreme.len());
        for l in &self.linear {
            out.push(l.clone());
            out.push(l.iter().map(|c| -c).collect());
        }
        out.extend(self.extreme.iter().cloned());
        out
    }

    /// Every element, with linear elements listed in both signs.
    pub fn all(&self) -> Vec<IntVec> {
        self.as_constraints()
    }
}

#[derive(Clone, Debug)]
enum Seed {
    Generators(Description),
    Inequalities(Description),
}

/// Where a point sits relative to a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl Membership {
    pub fn is_inside(self) -> bool {
        self != Membership::Outside
    }
}

/// A rational polyhedral cone in `Q^n`.
pub struct Cone {
    rank: usize,
    seed: Seed,
    generators: OnceLock<Description>,
    inequalities: OnceLock<Description>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        let c = Self::lazy(self.rank, self.seed.clone());
        if let Some(g) = self.generators.get() {
            let _ = c.generators.set(g.clone());
        }
        if let Some(h) = self.inequalities.get() {
            let _ = c.inequalities.set(h.clone());
        }
        c
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generators();
        f.debug_struct("Cone")
            .field("rank", &self.rank)
            .field("lineality", &g.linear)
            .field("rays", &g.extreme)
            .finish()
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.generators() == other.generators()
    }
}

impl Eq for Cone {}

fn nonzero_ints(rank: usize, rows: &[IntVec]) -> Result<()> {
    for r in rows {
        if r.len() != rank {
            return Err(Error::RankMismatch { expected: rank, found: r.len() });
        }
        if r.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
    }
    Ok(())
}

impl Cone {
    fn lazy(rank: usize, seed: Seed) -> Self {
        Self { rank, seed, generators: OnceLock::new(), inequalities: OnceLock::new() }
    }

    fn with_both(rank: usize, generators: Description, inequalities: Description) -> Self {
        let c = Self::lazy(rank, Seed::Generators(generators.clone()));
        let _ = c.generators.set(generators);
        let _ = c.inequalities.set(inequalities);
        c
    }

    /// Conic hull of `rays`. An empty list gives the cone `{0}`.
    pub fn from_rays(rank: usize, rays: &[RationalVector]) -> Result<Self> {
        let rays = rays.iter().map(RationalVector::canonical_primitive).collect::<Result<Vec<_>>>()?;
        Self::from_int_rays(rank, rays)
    }

    /// `{x : f(x) >= 0 for every f}`. An empty list gives the whole space.
    pub fn from_facets(rank: usize, facets: &[RationalCovector]) -> Result<Self> {
        let facets =
            facets.iter().map(RationalCovector::canonical_primitive).collect::<Result<Vec<_>>>()?;
        Self::from_int_facets(rank, facets)
    }

    pub fn from_int_rays(rank: usize, rays: Vec<IntVec>) -> Result<Self> {
        Self::from_generators(rank, Vec::new(), rays)
    }

    pub fn from_int_facets(rank: usize, facets: Vec<IntVec>) -> Result<Self> {
        Self::from_inequalities(rank, Vec::new(), facets)
    }

    /// `span(lineality) + cone(rays)`.
    pub fn from_generators(rank: usize, lineality: Vec<IntVec>, rays: Vec<IntVec>) -> Result<Self> {
        nonzero_ints(rank, &lineality)?;
        nonzero_ints(rank, &rays)?;
        let rays = rays.iter().map(|r| primitive(r)).collect();
        Ok(Self::lazy(rank, Seed::Generators(Description { linear: lineality, extreme: rays })))
    }

    /// `{x : e(x) = 0 for e in equations, f(x) >= 0 for f in facets}`.
    pub fn from_inequalities(rank: usize, equations: Vec<IntVec>, facets: Vec<IntVec>) -> Result<Self> {
        nonzero_ints(rank, &equations)?;
        nonzero_ints(rank, &facets)?;
        let facets = facets.iter().map(|r| primitive(r)).collect();
        Ok(Self::lazy(rank, Seed::Inequalities(Description { linear: equations, extreme: facets })))
    }

    pub fn full_space(rank: usize) -> Self {
        Self::from_int_facets(rank, Vec::new()).expect("no input to reject")
    }

    pub fn origin(rank: usize) -> Self {
        Self::from_int_rays(rank, Vec::new()).expect("no input to reject")
    }

    /// The closed half-space `{x : f(x) >= 0}`.
    pub fn half_space(f: &RationalCovector) -> Result<Self> {
        Self::from_facets(f.rank(), std::slice::from_ref(f))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Canonical generators (lineality basis and extreme rays).
    pub fn generators(&self) -> &Description {
        self.generators.get_or_init(|| match &self.seed {
            Seed::Generators(_) => double_description(self.rank, &self.inequalities().as_constraints()),
            Seed::Inequalities(h) => double_description(self.rank, &h.as_constraints()),
        })
    }

    /// Canonical inequalities (equation basis and facet normals).
    pub fn inequalities(&self) -> &Description {
        self.inequalities.get_or_init(|| match &self.seed {
            Seed::Generators(g) => double_description(self.rank, &g.as_constraints()),
            Seed::Inequalities(_) => double_description(self.rank, &self.generators().as_constraints()),
        })
    }

    /// Forces both representations.
    pub fn complete(&self) -> &Self {
        self.generators();
        self.inequalities();
        self
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.generators().extreme
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.generators().linear
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.inequalities().extreme
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.inequalities().linear
    }

    pub fn dimension(&self) -> usize {
        let g = self.generators();
        g.linear.len() + int_rank(&g.extreme)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == self.rank
    }

    pub fn is_origin(&self) -> bool {
        self.dimension() == 0
    }

    pub fn dual(&self) -> Self {
        Self::with_both(self.rank, self.inequalities().clone(), self.generators().clone())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let (a, b) = (self.inequalities(), other.inequalities());
        let linear = a.linear.iter().chain(&b.linear).cloned().collect();
        let extreme = a.extreme.iter().chain(&b.extreme).cloned().collect();
        Ok(Self::lazy(self.rank, Seed::Inequalities(Description { linear, extreme })))
    }

    /// Adds inequalities without completing.
    pub fn with_facets(&self, extra: impl IntoIterator<Item = IntVec>) -> Result<Self> {
        let h = self.inequalities();
        let mut extreme = h.extreme.clone();
        for f in extra {
            if f.len() != self.rank {
                return Err(Error::RankMismatch { expected: self.rank, found: f.len() });
            }
            if f.iter().any(|c| !c.is_zero()) {
                extreme.push(primitive(&f));
            }
        }
        Ok(Self::lazy(self.rank, Seed::Inequalities(Description { linear: h.linear.clone(), extreme })))
    }

    pub fn contains(&self, x: &RationalVector) -> Result<Membership> {
        if x.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: x.rank() });
        }
        let h = self.inequalities();
        if x.is_zero() {
            return Ok(if h.linear.is_empty() && h.extreme.is_empty() {
                Membership::Interior
            } else {
                Membership::Boundary
            });
        }
        let x = x.canonical_primitive()?;
        Ok(self.classify_ints(&x))
    }

    /// Membership for an integer point (any positive multiple of the query).
    pub fn classify_ints(&self, x: &[BigInt]) -> Membership {
        let h = self.inequalities();
        if h.linear.iter().any(|e| !pair_ints(e, x).is_zero()) {
            return Membership::Outside;
        }
        let mut tight = !h.linear.is_empty();
        for f in &h.extreme {
            let v = pair_ints(f, x);
            if v.is_negative() {
                return Membership::Outside;
            }
            tight |= v.is_zero();
        }
        if tight {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    /// Whether the open interiors of two full-dimensional cones meet.
    pub fn interiors_overlap(&self, other: &Self) -> Result<bool> {
        if !self.is_full_dimensional() || !other.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Ok(self.intersect(other)?.is_full_dimensional())
    }

    /// A point in the relative interior: the sum of the extreme rays (the
    /// zero vector when the cone is a linear subspace).
    pub fn relative_interior_point(&self) -> IntVec {
        let g = self.generators();
        let mut sum = vec![BigInt::zero(); self.rank];
        for r in &g.extreme {
            for (s, c) in sum.iter_mut().zip(r) {
                *s += c;
            }
        }
        primitive(&sum)
    }

    /// An interior point when the cone is full-dimensional.
    pub fn interior_point(&self) -> Option<IntVec> {
        self.is_full_dimensional().then(|| self.relative_interior_point())
    }

    /// The image `m(C)` for an invertible `m`.
    pub fn image(&self, m: &IntMatrix) -> Result<Self> {
        if m.dim() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: m.dim() });
        }
        let inv = m.rational_inverse().ok_or_else(|| Error::Precondition("singular matrix".into()))?;
        let g = self.generators();
        let h = self.inequalities();
        let map = |v: &IntVec| m.apply_ints(v);
        let pull = |f: &IntVec| {
            let n = self.rank;
            let row: Vec<_> = (0..n)
                .map(|j| (0..n).map(|i| &inv[i][j] * BigRational::from_integer(f[i].clone())).sum())
                .collect();
            canonical_primitive(&row).expect("invertible map keeps covectors nonzero")
        };
        let gens = Description::canonical(
            &g.linear.iter().map(map).collect::<Vec<_>>(),
            &g.extreme.iter().map(map).collect::<Vec<_>>(),
        );
        let ineqs = Description::canonical(
            &h.linear.iter().map(pull).collect::<Vec<_>>(),
            &h.extreme.iter().map(pull).collect::<Vec<_>>(),
        );
        Ok(Self::with_both(self.rank, gens, ineqs))
    }

    /// Canonical form of `f` as a facet normal of this cone, i.e. `f`
    /// projected off the equation space.
    pub fn normalize_facet(&self, f: &[BigInt]) -> IntVec {
        project_out(f, self.equations())
    }
}

struct Ray {
    v: IntVec,
    zeros: FixedBitSet,
}

/// Generators of `{x : a(x) >= 0 for all a in constraints}`, canonical.
///
/// Incremental double description: starts from the whole space (lineality
/// spanned by the unit vectors) and inserts one half-space at a time. While
/// the lineality space is not contained in the new hyperplane the half-space
/// just trades one lineality direction for a ray; afterwards the classic
/// positive/negative split with the combinatorial adjacency test applies.
pub(crate) fn double_description(rank: usize, constraints: &[IntVec]) -> Description {
    let m = constraints.len();
    let mut lin: Vec<IntVec> = (0..rank)
        .map(|i| (0..rank).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !pair_ints(a, l).is_zero()) {
            let mut l0 = lin.remove(p);
            let mut al0 = pair_ints(a, &l0);
            if al0.is_negative() {
                l0 = l0.iter().map(|c| -c).collect();
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                let al = pair_ints(a, l);
                if !al.is_zero() {
                    *l = primitive(&combine(&al0, l, &al, &l0));
                }
            }
            for r in rays.iter_mut() {
                let ar = pair_ints(a, &r.v);
                if !ar.is_zero() {
                    r.v = primitive(&combine(&al0, &r.v, &ar, &l0));
                }
                r.zeros.insert(k);
            }
            let mut zeros = FixedBitSet::with_capacity(m);
            zeros.insert_range(..k);
            rays.push(Ray { v: l0, zeros });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| pair_ints(a, &r.v)).collect();
        if !vals.iter().any(Signed::is_negative) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != n && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                // (a·p) n - (a·n) p vanishes on a and is a positive combination.
                let v = primitive(&combine(&vals[p], &rays[n].v, &vals[n], &rays[p].v));
                common.insert(k);
                next.push(Ray { v, zeros: common });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(k);
            }
            next.push(r);
        }
        rays = next;
    }

    let extreme: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    Description::canonical(&lin, &extreme)
}

/// `s * u - t * v`.
fn combine(s: &BigInt, u: &[BigInt], t: &BigInt, v: &[BigInt]) -> IntVec {
    u.iter().zip(v).map(|(a, b)| s * a - t * b).collect()
}
