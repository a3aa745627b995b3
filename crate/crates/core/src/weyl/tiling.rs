use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{group_ball, make_dominant, fundamental_chamber, Dominance, PivotRule, DEFAULT_STEP_CAP};
use crate::cone::Cone;
use crate::corevec::RationalVector;
use crate::error::{Error, Result};
use crate::roots::RootSystem;
use crate::sampling::sample_in_cones;

/// Two translates `w1 * base` and `w2 * base` whose interiors meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapWitness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub full_dimensional: bool,
}

/// A sampled point and the word `w` with `w^-1 * point` in the base, if one
/// was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageSample {
    pub point: RationalVector,
    pub word: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub depth: usize,
    pub seed: u64,
    pub translate_count: usize,
    pub base_in_chamber: bool,
    pub overlap_witnesses: Vec<OverlapWitness>,
    pub coverage: Vec<CoverageSample>,
}

impl TilingReport {
    pub fn is_clean(&self) -> bool {
        self.overlap_witnesses.is_empty() && self.coverage.iter().all(|c| c.word.is_some())
    }

    pub fn covered_count(&self) -> usize {
        self.coverage.iter().filter(|c| c.word.is_some()).count()
    }
}

/// Audits the translates of `base` over the depth ball: every pair of
/// distinct translates is tested for interior overlap, and `samples` random
/// points of the translate union are mapped back into `base`.
pub fn tile_check(rs: &RootSystem, base: &Cone, depth: usize, samples: usize, seed: u64) -> Result<TilingReport> {
    if base.rank() != rs.rank() {
        return Err(Error::RankMismatch { expected: rs.rank(), found: base.rank() });
    }
    if !base.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let chamber = fundamental_chamber(rs)?;
    let base_in_chamber = base.intersect(chamber.cone())? == *base;

    let ball = group_ball(rs, depth)?;
    let elements: Vec<_> = ball.elements().collect();
    let translates: Vec<Cone> = elements
        .par_iter()
        .map(|el| {
            let t = base.image(&el.matrix)?;
            t.complete();
            Ok(t)
        })
        .collect::<Result<_>>()?;

    let overlap_witnesses: Vec<OverlapWitness> = (0..translates.len())
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in i + 1..translates.len() {
                if translates[i].interiors_overlap(&translates[j]).expect("translates are full-dimensional") {
                    found.push(OverlapWitness {
                        first: elements[i].word.clone(),
                        second: elements[j].word.clone(),
                        full_dimensional: true,
                    });
                }
            }
            found
        })
        .flatten()
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_in_cones(&translates, samples, &mut rng);
    let mut inverses = None;
    let coverage = points
        .into_iter()
        .map(|point| {
            let word = cover_sample(rs, base, &point, &elements, &mut inverses)?;
            Ok(CoverageSample { point, word })
        })
        .collect::<Result<_>>()?;

    Ok(TilingReport {
        depth,
        seed,
        translate_count: translates.len(),
        base_in_chamber,
        overlap_witnesses,
        coverage,
    })
}

fn cover_sample(
    rs: &RootSystem,
    base: &Cone,
    point: &RationalVector,
    elements: &[&crate::group::GroupElement],
    inverses: &mut Option<Vec<crate::corevec::IntMatrix>>,
) -> Result<Option<Vec<usize>>> {
    if let Dominance::Dominant { point: dominant, word } =
        make_dominant(rs, point, None, DEFAULT_STEP_CAP, PivotRule::Lowest)?
    {
        if base.contains(&dominant)?.is_inside() {
            let w = super::word_to_element(rs, &word)?;
            if w.matrix.apply(&dominant)? == *point {
                return Ok(Some(word));
            }
        }
    }
    // The base need not be the chamber: fall back to scanning the ball.
    let inv = inverses.get_or_insert_with(|| {
        elements.iter().map(|el| el.matrix.inverse().expect("reflection words are unimodular")).collect()
    });
    for (el, m) in elements.iter().zip(inv.iter()) {
        if base.contains(&m.apply(point)?)?.is_inside() {
            return Ok(Some(el.word.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::builtin;

    #[test]
    fn a2_chambers_tile_the_plane() {
        let rs = builtin("cartan:A2").unwrap();
        let chamber = fundamental_chamber(&rs).unwrap().into_cone();
        let rep = tile_check(&rs, &chamber, 5, 50, 3).unwrap();
        assert_eq!(rep.translate_count, 6);
        assert!(rep.base_in_chamber);
        assert!(rep.is_clean());
    }

    #[test]
    fn a_too_large_base_overlaps() {
        let rs = builtin("cartan:A2").unwrap();
        let rep = tile_check(&rs, &Cone::full_space(2), 1, 10, 0).unwrap();
        assert!(!rep.base_in_chamber);
        assert!(!rep.overlap_witnesses.is_empty());
    }

    #[test]
    fn lower_dimensional_base_rejected() {
        let rs = builtin("cartan:A2").unwrap();
        assert_eq!(tile_check(&rs, &Cone::origin(2), 1, 1, 0).unwrap_err(), Error::NotFullDimensional);
    }
}
