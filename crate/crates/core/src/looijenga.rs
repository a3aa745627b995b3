//! Fundamental domains for integer matrix groups preserving a cone.
//!
//! For a group `G` acting on a cone `C` and a functional `xi` positive on
//! `C`, the orbit-minimum cone is
//!
//! ```text
//! P_xi = { x in C : xi(g x) >= xi(x) for all g in G },
//! ```
//!
//! cut out of `C` by the half-spaces `(xi g - xi)(x) >= 0`. When the
//! stabilizer of `xi` is trivial, `P_xi` is a fundamental domain. For an
//! infinite group only a word ball can be used; [`pi_xi`] reports whether
//! the facet description stopped changing one step further out.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::corevec::{pair_ints, IntMatrix, IntVec, RationalCovector, RationalVector};
use crate::error::{Error, Result};
use crate::group::{WordBall, DEFAULT_ELEMENT_LIMIT};
use crate::roots::RootSystem;
use crate::sampling::sample_in_cones;
use crate::weyl::reflections;

/// A group generated by unimodular integer matrices, together with the
/// closed cone it is meant to preserve.
#[derive(Clone, Debug)]
pub struct ConeAction {
    rank: usize,
    generators: Vec<IntMatrix>,
    cone: Cone,
}

impl ConeAction {
    /// Inverses are adjoined to `generators` (involutions are not
    /// duplicated), so words index into [`ConeAction::generators`].
    pub fn new(cone: Cone, generators: Vec<IntMatrix>) -> Result<Self> {
        let rank = cone.rank();
        let mut all: Vec<IntMatrix> = Vec::with_capacity(2 * generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.dim() });
            }
            if !all.contains(g) {
                all.push(g.clone());
            }
            let inv = g
                .inverse()
                .ok_or_else(|| Error::Precondition(format!("generator {} is not unimodular", i + 1)))?;
            if !all.contains(&inv) && !generators.contains(&inv) {
                all.push(inv);
            }
        }
        Ok(Self { rank, generators: all, cone })
    }

    /// The Weyl group of `rs` acting on `cone`.
    pub fn from_root_system(rs: &RootSystem, cone: Cone) -> Result<Self> {
        if cone.rank() != rs.rank() {
            return Err(Error::RankMismatch { expected: rs.rank(), found: cone.rank() });
        }
        Self::new(cone, reflections(rs)?)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn ball(&self, depth: usize) -> Result<WordBall> {
        WordBall::generate(&self.generators, self.rank, depth, DEFAULT_ELEMENT_LIMIT)
    }

    /// Pairs `(generator, ray)` where the generator maps a ray of the cone
    /// outside it. Empty when every generator preserves the cone.
    pub fn preservation_failures(&self) -> Vec<(usize, usize)> {
        let g = self.cone.generators();
        let mut out = Vec::new();
        for (gi, m) in self.generators.iter().enumerate() {
            for (ri, r) in g.extreme.iter().chain(&g.linear).enumerate() {
                if !self.cone.classify_ints(&m.apply_ints(r)).is_inside() {
                    out.push((gi, ri));
                }
            }
        }
        out
    }

    fn check_xi(&self, xi: &RationalCovector) -> Result<IntVec> {
        if xi.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: xi.rank() });
        }
        let xi = xi.to_ints().ok_or_else(|| Error::Precondition("xi must be integral".into()))?;
        if xi.iter().all(Zero::is_zero) {
            return Err(Error::Precondition("xi must be nonzero".into()));
        }
        // Only the pointed part is checked: with lineality the open dual cone
        // is empty, and a finite group acting on all of V is still allowed.
        if let Some(r) = self.cone.rays().iter().find(|r| !pair_ints(&xi, r).is_positive()) {
            return Err(Error::Precondition(format!(
                "xi is not positive on the ray {:?} of the cone",
                r.iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
        Ok(xi)
    }
}

/// Where a facet of `P_xi` comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetSource {
    /// The half-space `(xi g - xi) >= 0` for the element with this word
    /// (shortlex-least among those giving the facet).
    Word(Vec<usize>),
    /// A facet of the ambient cone.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveFacet {
    pub normal: IntVec,
    pub source: FacetSource,
}

#[derive(Clone, Debug)]
pub struct PiXiResult {
    pub cone: Cone,
    pub depth_used: usize,
    /// The facet description at `depth_used + 1` is identical.
    pub stabilized: bool,
    pub active: Vec<ActiveFacet>,
}

/// A constraint normal with the word that produced it.
type Constraint = (IntVec, Vec<usize>);

fn xi_constraints(ball: &WordBall, xi: &[BigInt], depth: usize) -> Vec<Constraint> {
    ball.elements_up_to(depth)
        .filter(|el| !el.word.is_empty())
        .filter_map(|el| {
            let moved = el.matrix.pullback_ints(xi);
            let diff: IntVec = moved.iter().zip(xi).map(|(a, b)| a - b).collect();
            diff.iter().any(|c| !c.is_zero()).then(|| (diff, el.word.clone()))
        })
        .collect()
}

/// The truncated orbit-minimum cone of `xi` over the word ball of radius
/// `depth`.
pub fn pi_xi(action: &ConeAction, xi: &RationalCovector, depth: usize) -> Result<PiXiResult> {
    let xi = action.check_xi(xi)?;
    let ball = action.ball(depth + 1)?;
    let build = |d: usize| -> Result<(Cone, Vec<Constraint>)> {
        let cons = xi_constraints(&ball, &xi, d);
        let cone = action.cone.with_facets(cons.iter().map(|(f, _)| f.clone()))?;
        cone.complete();
        Ok((cone, cons))
    };
    let (cone, cons) = build(depth)?;
    let (next, _) = build(depth + 1)?;
    let stabilized = cone == next;

    let mut first_word: HashMap<IntVec, Vec<usize>> = HashMap::new();
    for (f, word) in cons {
        // Constraints come in shortlex order, so the first one wins.
        first_word.entry(cone.normalize_facet(&f)).or_insert(word);
    }
    let active = cone
        .facets()
        .iter()
        .map(|f| {
            let source = match first_word.get(f) {
                Some(w) => FacetSource::Word(w.clone()),
                None => FacetSource::Boundary,
            };
            ActiveFacet { normal: f.clone(), source }
        })
        .collect();
    Ok(PiXiResult { cone, depth_used: depth, stabilized, active })
}

/// True iff no non-identity element of the depth ball fixes `xi`.
pub fn stabilizer_trivial(action: &ConeAction, xi: &RationalCovector, depth: usize) -> Result<bool> {
    let xi = action.check_xi(xi)?;
    let ball = action.ball(depth)?;
    let trivial = ball.elements().filter(|el| !el.word.is_empty()).all(|el| el.matrix.pullback_ints(&xi) != xi);
    Ok(trivial)
}

/// Sampled check that the translates `g * pi` over the ball cover the
/// given points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub depth: usize,
    pub samples: Vec<(RationalVector, Option<Vec<usize>>)>,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|(_, w)| w.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = &RationalVector> {
        self.samples.iter().filter(|(_, w)| w.is_none()).map(|(p, _)| p)
    }
}

pub fn polyhedral_type_check(
    action: &ConeAction,
    pi: &Cone,
    depth: usize,
    samples: &[RationalVector],
) -> Result<CoverageReport> {
    if pi.rank() != action.rank {
        return Err(Error::RankMismatch { expected: action.rank, found: pi.rank() });
    }
    let ball = action.ball(depth)?;
    // x in g * pi  iff  f(g^-1 x) >= 0 for the facets f of pi.
    let translates: Vec<(Vec<usize>, Cone)> = ball
        .elements()
        .map(|el| Ok((el.word.clone(), pi.image(&el.matrix)?)))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(samples.len());
    for x in samples {
        let mut hit = None;
        for (word, t) in &translates {
            if t.contains(x)?.is_inside() {
                hit = Some(word.clone());
                break;
            }
        }
        out.push((x.clone(), hit));
    }
    Ok(CoverageReport { depth, samples: out })
}

/// `count` seeded points from the union of the translates `g * base` over
/// the ball of radius `depth`.
pub fn sample_translate_union(
    action: &ConeAction,
    base: &Cone,
    depth: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<RationalVector>> {
    let ball = action.ball(depth)?;
    let translates: Vec<Cone> = ball.elements().map(|el| base.image(&el.matrix)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_in_cones(&translates, count, &mut rng))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveCoverage {
    pub group_order: usize,
    pub covered: bool,
    /// An interior point of the ambient cone outside every translate.
    pub witness: Option<IntVec>,
}

/// Exact coverage test for a finite group: decides whether the translates of
/// `pi` cover the interior of the ambient cone.
///
/// A point escapes every translate iff for each translate it violates one of
/// its facets strictly. The search runs over those choices of one facet per
/// translate, pruning as soon as the chosen open half-spaces (together with
/// the open ambient cone) stop having a common point.
pub fn exhaustive_coverage(action: &ConeAction, pi: &Cone, max_depth: usize) -> Result<ExhaustiveCoverage> {
    if !pi.is_full_dimensional() || !action.cone.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let ball = action.ball(max_depth)?;
    if !ball.is_exhaustive() {
        return Err(Error::Precondition(format!("group not exhausted within depth {max_depth}")));
    }
    let translates: Vec<Cone> = ball.elements().map(|el| pi.image(&el.matrix)).collect::<Result<_>>()?;
    let options: Vec<Vec<IntVec>> = translates
        .iter()
        .map(|t| t.facets().iter().map(|f| f.iter().map(|c| -c).collect()).collect())
        .collect();
    let ambient: Vec<IntVec> = action.cone.facets().to_vec();
    let witness = escape(action.rank, &ambient, &options, 0)?;
    Ok(ExhaustiveCoverage { group_order: translates.len(), covered: witness.is_none(), witness })
}

fn escape(rank: usize, chosen: &[IntVec], options: &[Vec<IntVec>], k: usize) -> Result<Option<IntVec>> {
    let region = Cone::from_int_facets(rank, chosen.to_vec())?;
    if !region.is_full_dimensional() {
        return Ok(None);
    }
    if k == options.len() {
        return Ok(region.interior_point());
    }
    for f in &options[k] {
        let mut next = chosen.to_vec();
        next.push(f.clone());
        if let Some(w) = escape(rank, &next, options, k + 1)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
