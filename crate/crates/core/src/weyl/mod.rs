//! The Weyl group of a generalized root system acting on `V` by integer
//! matrices.
//!
//! The reflection in the root `(e, ell)` is `x -> x + ell(x) e`. Group
//! elements are compared by matrix; the action is faithful, so matrix
//! equality is group equality.

mod tiling;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use tiling::{tile_check, CoverageSample, OverlapWitness, TilingReport};

use crate::cone::Cone;
use crate::corevec::{pair, pair_ints, IntMatrix, IntVec, RationalCovector, RationalVector};
use crate::error::{Error, Result};
use crate::group::{word_matrix, GroupElement, WordBall, DEFAULT_ELEMENT_LIMIT};
use crate::roots::{coxeter_matrix, CoxeterEntry, RootSystem};

/// Default number of reflections [`make_dominant`] may apply.
pub const DEFAULT_STEP_CAP: usize = 10_000;

/// Matrix of the reflection in root `i`: column `c` is `u_c + ell_i(u_c) e_i`.
pub fn reflection(rs: &RootSystem, i: usize) -> Result<IntMatrix> {
    let root = rs.root(i)?;
    let (Some(e), Some(ell)) = (root.e.to_ints(), root.ell.to_ints()) else {
        return Err(Error::NonIntegral { index: i });
    };
    let n = rs.rank();
    let rows = (0..n)
        .map(|r| (0..n).map(|c| &e[r] * &ell[c] + BigInt::from(u8::from(r == c))).collect())
        .collect();
    IntMatrix::from_rows(rows)
}

pub fn reflections(rs: &RootSystem) -> Result<Vec<IntMatrix>> {
    (0..rs.len()).map(|i| reflection(rs, i)).collect()
}

pub fn word_to_element(rs: &RootSystem, word: &[usize]) -> Result<GroupElement> {
    let gens = reflections(rs)?;
    let matrix = word_matrix(&gens, rs.rank(), word)?;
    Ok(GroupElement { word: word.to_vec(), matrix })
}

/// The outcome for one pair of roots in [`verify_relations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRelation {
    pub first: usize,
    pub second: usize,
    pub expected: CoxeterEntry,
    /// Least `k >= 1` with `(s_a s_b)^k = 1`, if one was found within the
    /// search bound.
    pub observed_order: Option<u32>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub power_bound: u32,
    pub pairs: Vec<PairRelation>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.pairs.iter().all(|p| p.holds)
    }
}

/// Checks that each product `s_a s_b` has order exactly `m(a, b)`, and for
/// `m = inf` that no power up to `power_bound` is the identity.
pub fn verify_relations(rs: &RootSystem, power_bound: u32) -> Result<RelationReport> {
    let m = coxeter_matrix(rs)?;
    let gens = reflections(rs)?;
    let mut pairs = Vec::new();
    for a in 0..rs.len() {
        for b in a + 1..rs.len() {
            let expected = m.get(a, b);
            let product = gens[a].mul(&gens[b])?;
            let bound = expected.finite().unwrap_or(power_bound);
            let observed_order = element_order(&product, bound);
            let holds = match expected {
                CoxeterEntry::Finite(k) => observed_order == Some(k),
                CoxeterEntry::Infinite => observed_order.is_none(),
            };
            pairs.push(PairRelation { first: a, second: b, expected, observed_order, holds });
        }
    }
    Ok(RelationReport { power_bound, pairs })
}

/// Order of `m` if it is at most `bound`.
pub fn element_order(m: &IntMatrix, bound: u32) -> Option<u32> {
    let mut acc = m.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(m).expect("square");
    }
    None
}

/// The closed fundamental chamber `{x : ell_a(x) >= 0 for all a}`.
#[derive(Clone, Debug)]
pub struct Chamber {
    cone: Cone,
}

impl Chamber {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn into_cone(self) -> Cone {
        self.cone
    }
}

pub fn fundamental_chamber(rs: &RootSystem) -> Result<Chamber> {
    let facets: Vec<RationalCovector> = rs.roots().iter().map(|r| r.ell.clone()).collect();
    Ok(Chamber { cone: Cone::from_facets(rs.rank(), &facets)? })
}

/// Whether the open chamber is nonempty, with an interior point if so.
pub fn chamber_nonempty(rs: &RootSystem) -> Result<(bool, Option<RationalVector>)> {
    let chamber = fundamental_chamber(rs)?;
    Ok(match chamber.cone().interior_point() {
        Some(p) => (true, Some(RationalVector::from_ints(&p))),
        None => (false, None),
    })
}

/// The face of the closed chamber containing `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// Roots whose hyperplane contains `x`.
    pub roots: Vec<usize>,
    /// `tight[a]` iff `ell_a(x) = 0`.
    pub tight: Vec<bool>,
}

pub fn stratum(rs: &RootSystem, x: &RationalVector) -> Result<Stratum> {
    let mut tight = Vec::with_capacity(rs.len());
    for root in rs.roots() {
        let v = pair(&root.ell, x)?;
        if v.is_negative() {
            return Err(Error::OutsideChamber);
        }
        tight.push(v.is_zero());
    }
    let roots = (0..tight.len()).filter(|&a| tight[a]).collect();
    Ok(Stratum { roots, tight })
}

/// Which violated root [`make_dominant`] reflects in next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// The violated root of lowest index.
    Lowest,
    /// A uniformly random violated root, from a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// `point` lies in the closed chamber and `word` maps it back to the
    /// input: `x = word_to_element(word) * point`.
    Dominant { point: RationalVector, word: Vec<usize> },
    /// The step cap was reached; `last` is the point after `steps`
    /// reflections.
    Undecided { steps: usize, last: RationalVector },
}

impl Dominance {
    pub fn is_dominant(&self) -> bool {
        matches!(self, Dominance::Dominant { .. })
    }
}

/// Reflects `x` in violated walls until it lands in the closed chamber.
///
/// Terminates for points of the Tits cone; otherwise gives up after
/// `step_cap` reflections. When `xi` is supplied it must be positive on
/// every root, and `xi(x)` then strictly decreases at each step.
pub fn make_dominant(
    rs: &RootSystem,
    x: &RationalVector,
    xi: Option<&RationalCovector>,
    step_cap: usize,
    pivot: PivotRule,
) -> Result<Dominance> {
    if step_cap == 0 {
        return Err(Error::InvalidStepCap);
    }
    if x.rank() != rs.rank() {
        return Err(Error::RankMismatch { expected: rs.rank(), found: x.rank() });
    }
    if let Some(xi) = xi {
        for (a, root) in rs.roots().iter().enumerate() {
            if !pair(xi, &root.e)?.is_positive() {
                return Err(Error::Precondition(format!("xi is not positive on root {}", a + 1)));
            }
        }
    }
    let mut es = Vec::with_capacity(rs.len());
    let mut ells = Vec::with_capacity(rs.len());
    for (a, root) in rs.roots().iter().enumerate() {
        match (root.e.to_ints(), root.ell.to_ints()) {
            (Some(e), Some(l)) => {
                es.push(e);
                ells.push(l);
            }
            _ => return Err(Error::NonIntegral { index: a }),
        }
    }

    // Work with the integer point d*x; positive scaling keeps every sign.
    let denom = x.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut p: IntVec = x.coords().iter().map(|c| (c * &denom).to_integer()).collect();
    let mut rng = match pivot {
        PivotRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        PivotRule::Lowest => None,
    };
    // A positive multiple of xi, so comparisons on it are comparisons on xi.
    let xi_ints = xi.map(RationalCovector::canonical_primitive).transpose()?;
    let mut last_xi = xi_ints.as_ref().map(|f| pair_ints(f, &p));
    let to_point = |p: IntVec| RationalVector::new(p.into_iter().map(|c| BigRational::new(c, denom.clone())).collect());
    let mut word = Vec::new();
    loop {
        let values: Vec<BigInt> = ells.iter().map(|l| pair_ints(l, &p)).collect();
        let violated: Vec<usize> = (0..values.len()).filter(|&a| values[a].is_negative()).collect();
        if violated.is_empty() {
            return Ok(Dominance::Dominant { point: to_point(p), word });
        }
        if word.len() == step_cap {
            return Ok(Dominance::Undecided { steps: word.len(), last: to_point(p) });
        }
        let a = match rng.as_mut() {
            Some(rng) => violated[rng.random_range(0..violated.len())],
            None => violated[0],
        };
        for (pc, ec) in p.iter_mut().zip(&es[a]) {
            *pc += &values[a] * ec;
        }
        word.push(a);
        if let (Some(f), Some(prev)) = (xi_ints.as_ref(), last_xi.as_mut()) {
            let now = pair_ints(f, &p);
            debug_assert!(now < *prev, "xi must decrease along the descent");
            *prev = now;
        }
    }
}

/// Distinct images of `x` under words of length at most `depth`, as
/// canonical primitive vectors in order of discovery.
pub fn orbit(rs: &RootSystem, x: &RationalVector, depth: usize) -> Result<Vec<IntVec>> {
    if x.rank() != rs.rank() {
        return Err(Error::RankMismatch { expected: rs.rank(), found: x.rank() });
    }
    if x.is_zero() {
        return Ok(vec![vec![BigInt::zero(); rs.rank()]]);
    }
    let gens = reflections(rs)?;
    let start = x.canonical_primitive()?;
    let mut seen: HashSet<IntVec> = HashSet::from([start.clone()]);
    let mut out = vec![start.clone()];
    let mut frontier = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for g in &gens {
                let q = crate::corevec::primitive(&g.apply_ints(p));
                if seen.insert(q.clone()) {
                    out.push(q.clone());
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
        if out.len() > DEFAULT_ELEMENT_LIMIT {
            return Err(Error::LimitExceeded { limit: DEFAULT_ELEMENT_LIMIT });
        }
    }
    Ok(out)
}

pub fn group_ball(rs: &RootSystem, depth: usize) -> Result<WordBall> {
    group_ball_with_limit(rs, depth, DEFAULT_ELEMENT_LIMIT)
}

pub fn group_ball_with_limit(rs: &RootSystem, depth: usize, limit: usize) -> Result<WordBall> {
    WordBall::generate(&reflections(rs)?, rs.rank(), depth, limit)
}

/// Number of new group elements at each word length `1..=depth`.
pub fn growth_series(rs: &RootSystem, depth: usize) -> Result<Vec<usize>> {
    if depth == 0 {
        return Err(Error::Precondition("growth series needs depth >= 1".into()));
    }
    Ok(group_ball(rs, depth)?.growth())
}

/// `ambient ∩ closed chamber`.
pub fn intersect_with_chamber(rs: &RootSystem, ambient: &Cone) -> Result<Cone> {
    let chamber = fundamental_chamber(rs)?;
    ambient.intersect(chamber.cone())
}

/// Conic hull of the chamber translates `w * C` over the depth ball; a
/// polyhedral inner approximation of the Tits cone.
pub fn tits_hull(rs: &RootSystem, depth: usize) -> Result<Cone> {
    let chamber = fundamental_chamber(rs)?;
    let g = chamber.cone().generators();
    let ball = group_ball(rs, depth)?;
    let mut lineality = Vec::new();
    let mut rays = Vec::new();
    for el in ball.elements() {
        lineality.extend(g.linear.iter().map(|v| el.matrix.apply_ints(v)));
        rays.extend(g.extreme.iter().map(|v| el.matrix.apply_ints(v)));
    }
    Cone::from_generators(rs.rank(), lineality, rays)
}

/// A random point of the open chamber: a positive integer combination of
/// its extreme rays plus an arbitrary lineality component.
pub fn random_chamber_point(chamber: &Cone, rng: &mut impl Rng) -> RationalVector {
    let g = chamber.generators();
    let mut p = vec![BigInt::zero(); chamber.rank()];
    for r in &g.extreme {
        let c = BigInt::from(rng.random_range(1..=9));
        for (x, y) in p.iter_mut().zip(r) {
            *x += &c * y;
        }
    }
    for l in &g.linear {
        let c = BigInt::from(rng.random_range(-9..=9));
        for (x, y) in p.iter_mut().zip(l) {
            *x += &c * y;
        }
    }
    RationalVector::from_ints(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{builtin, Root};

    fn v(x: &[i64]) -> RationalVector {
        RationalVector::from_i64s(x)
    }

    #[test]
    fn co_reflection() {
        let co = builtin("co2222").unwrap();
        let s1 = reflection(&co, 0).unwrap();
        assert_eq!(s1.apply(&v(&[1, 1, 1, 1])).unwrap(), v(&[-1, 3, 3, 3]));
        assert_eq!(s1.det(), BigInt::from(-1));
        assert!(s1.mul(&s1).unwrap().is_identity());
        assert!(matches!(reflection(&co, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn a2_reflection_and_words() {
        let a2 = builtin("cartan:A2").unwrap();
        assert_eq!(reflection(&a2, 0).unwrap(), IntMatrix::from_i64_rows(&[&[-1, 1], &[0, 1]]).unwrap());
        assert!(word_to_element(&a2, &[]).unwrap().is_identity());
        assert!(word_to_element(&a2, &[1, 1]).unwrap().is_identity());
        assert!(word_to_element(&a2, &[0, 1, 0, 1, 0, 1]).unwrap().is_identity());
        let c = word_to_element(&a2, &[0, 1]).unwrap().matrix;
        assert_eq!(c, IntMatrix::from_i64_rows(&[&[0, -1], &[1, -1]]).unwrap());
        assert!(word_to_element(&a2, &[2]).is_err());
    }

    #[test]
    fn non_integral_roots_have_no_matrix() {
        let half = BigRational::new(1.into(), 2.into());
        let root = Root::new(
            RationalVector::new(vec![BigRational::from_integer(4.into()), BigRational::zero()]),
            RationalCovector::new(vec![-half, BigRational::zero()]),
            "r",
        );
        let rs = RootSystem::new(2, vec![root]).unwrap();
        assert!(rs.validate().is_valid());
        assert_eq!(reflection(&rs, 0), Err(Error::NonIntegral { index: 0 }));
    }

    #[test]
    fn relation_orders() {
        let a2 = builtin("cartan:A2").unwrap();
        let rep = verify_relations(&a2, 50).unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.pairs[0].observed_order, Some(3));

        let co = builtin("co2222").unwrap();
        let rep = verify_relations(&co, 50).unwrap();
        assert_eq!(rep.pairs.len(), 6);
        assert!(rep.all_hold());
        assert!(rep.pairs.iter().all(|p| p.observed_order.is_none()));

        let orth = RootSystem::new(
            2,
            vec![Root::from_i64s(&[1, 0], &[-2, 0], "a"), Root::from_i64s(&[0, 1], &[0, -2], "b")],
        )
        .unwrap();
        let rep = verify_relations(&orth, 50).unwrap();
        assert_eq!(rep.pairs[0].observed_order, Some(2));
    }

    #[test]
    fn chambers() {
        let co = builtin("co2222").unwrap();
        let (nonempty, w) = chamber_nonempty(&co).unwrap();
        assert!(nonempty);
        assert_eq!(w.unwrap(), v(&[1, 1, 1, 1]));

        let a2 = builtin("cartan:A2").unwrap();
        let (nonempty, w) = chamber_nonempty(&a2).unwrap();
        assert!(nonempty);
        assert_eq!(w.unwrap(), v(&[-1, -1]));

        let neg = RootSystem::new(
            2,
            vec![Root::from_i64s(&[1, 0], &[-2, 0], "a"), Root::from_i64s(&[0, 1], &[0, -2], "b")],
        )
        .unwrap();
        let c = fundamental_chamber(&neg).unwrap();
        assert_eq!(c.cone().rays(), &[vec![BigInt::from(-1), BigInt::zero()], vec![BigInt::zero(), BigInt::from(-1)]]);
        assert!(chamber_nonempty(&neg).unwrap().0);
    }

    #[test]
    fn strata() {
        let co = builtin("co2222").unwrap();
        assert!(stratum(&co, &v(&[1, 1, 1, 1])).unwrap().roots.is_empty());
        assert_eq!(stratum(&co, &v(&[0, 1, 1, 1])).unwrap().roots, vec![0]);
        assert_eq!(stratum(&co, &v(&[0, 0, 1, 1])).unwrap().roots, vec![0, 1]);
        assert_eq!(stratum(&co, &v(&[-1, 1, 1, 1])), Err(Error::OutsideChamber));
    }

    #[test]
    fn dominance_examples() {
        let co = builtin("co2222").unwrap();
        let d = make_dominant(&co, &v(&[-1, 3, 3, 3]), None, DEFAULT_STEP_CAP, PivotRule::Lowest).unwrap();
        assert_eq!(d, Dominance::Dominant { point: v(&[1, 1, 1, 1]), word: vec![0] });
        let d = make_dominant(&co, &v(&[1, 1, 1, 1]), None, DEFAULT_STEP_CAP, PivotRule::Lowest).unwrap();
        assert_eq!(d, Dominance::Dominant { point: v(&[1, 1, 1, 1]), word: vec![] });
        assert_eq!(
            make_dominant(&co, &v(&[1, 1, 1, 1]), None, 0, PivotRule::Lowest),
            Err(Error::InvalidStepCap)
        );
        let bad_xi = RationalCovector::from_i64s(&[1, 0, 0, 0]);
        assert!(matches!(
            make_dominant(&co, &v(&[1, 1, 1, 1]), Some(&bad_xi), 10, PivotRule::Lowest),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn negative_co_point_never_becomes_dominant() {
        let co = builtin("co2222").unwrap();
        let xi = RationalCovector::from_i64s(&[1, 1, 1, 1]);
        let d = make_dominant(&co, &v(&[-1, -1, -1, -1]), Some(&xi), DEFAULT_STEP_CAP, PivotRule::Lowest).unwrap();
        assert!(matches!(d, Dominance::Undecided { steps: DEFAULT_STEP_CAP, .. }));
    }

    #[test]
    fn rational_points_descend() {
        let co = builtin("co2222").unwrap();
        let x = RationalVector::new(vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(3.into(), 2.into()),
            BigRational::new(3.into(), 2.into()),
            BigRational::new(3.into(), 2.into()),
        ]);
        let Dominance::Dominant { point, word } =
            make_dominant(&co, &x, None, 100, PivotRule::Lowest).unwrap()
        else {
            panic!("expected a dominant point")
        };
        assert_eq!(word, vec![0]);
        assert_eq!(point, v(&[1, 1, 1, 1]).scale(&BigRational::new(1.into(), 2.into())));
    }
}
