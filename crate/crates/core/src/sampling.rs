//! Seeded rational sample points inside unions of cones.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::cone::Cone;
use crate::corevec::RationalVector;

/// Largest coefficient and denominator used for sample points.
pub const SAMPLE_BOUND: i64 = 10;

/// One nonzero point of `cone`: a random nonnegative integer combination of
/// its extreme rays plus a signed combination of its lineality basis, divided
/// by a random denominator in `1..=SAMPLE_BOUND`. Returns `None` for `{0}`.
pub fn sample_in_cone(cone: &Cone, rng: &mut impl Rng) -> Option<RationalVector> {
    let g = cone.generators();
    if g.extreme.is_empty() && g.linear.is_empty() {
        return None;
    }
    loop {
        let mut p = vec![BigInt::zero(); cone.rank()];
        for r in &g.extreme {
            let c = BigInt::from(rng.random_range(0..SAMPLE_BOUND));
            for (x, y) in p.iter_mut().zip(r) {
                *x += &c * y;
            }
        }
        for l in &g.linear {
            let c = BigInt::from(rng.random_range(-SAMPLE_BOUND + 1..SAMPLE_BOUND));
            for (x, y) in p.iter_mut().zip(l) {
                *x += &c * y;
            }
        }
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        let d = BigInt::from(rng.random_range(1..=SAMPLE_BOUND));
        return Some(RationalVector::new(p.into_iter().map(|c| BigRational::new(c, d.clone())).collect()));
    }
}

/// `count` points, each from a uniformly chosen nonzero cone of `cones`.
pub fn sample_in_cones(cones: &[Cone], count: usize, rng: &mut impl Rng) -> Vec<RationalVector> {
    let usable: Vec<&Cone> = cones.iter().filter(|c| !c.is_origin()).collect();
    if usable.is_empty() {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let c = usable[rng.random_range(0..usable.len())];
            sample_in_cone(c, rng).expect("nonzero cone")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_lie_in_their_cone_and_are_reproducible() {
        let c = Cone::from_int_facets(3, vec![vec![1.into(), 0.into(), 0.into()], vec![0.into(), 1.into(), (-1).into()]])
            .unwrap();
        let a = sample_in_cones(std::slice::from_ref(&c), 50, &mut ChaCha8Rng::seed_from_u64(7));
        let b = sample_in_cones(std::slice::from_ref(&c), 50, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        for p in &a {
            assert!(c.contains(p).unwrap().is_inside());
            assert!(p.coords().iter().all(|x| x.denom() <= &BigInt::from(SAMPLE_BOUND)));
        }
        assert!(sample_in_cones(&[Cone::origin(3)], 5, &mut ChaCha8Rng::seed_from_u64(0)).is_empty());
    }
}
