//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the cone engine, so it can be used to check it.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use weylcone::weyl::{fundamental_chamber, make_dominant, stratum, word_to_element, Dominance, PivotRule};
use weylcone::{Cone, IntVec, RationalVector, RootSystem};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rank_of(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square rational matrix, `None` when singular.
fn invert(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..2 * n {
                    let d = &f * &m[c][k];
                    m[i][k] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Membership in the conic hull of finitely many generators, by
/// Caratheodory: `x` is in the hull iff it is a nonnegative combination of
/// some subset of generators forming a basis of their span.
pub struct HullOracle {
    rank: usize,
    bases: Vec<(Vec<Vec<BigRational>>, Vec<usize>, Vec<Vec<BigRational>>)>,
}

impl HullOracle {
    pub fn new(rank: usize, gens: &[IntVec]) -> Self {
        let gens: Vec<Vec<BigRational>> =
            gens.iter().map(|g| g.iter().cloned().map(BigRational::from_integer).collect()).collect();
        let d = rank_of(&gens);
        let mut bases = Vec::new();
        if d > 0 {
            for subset in combinations(gens.len(), d) {
                let cols: Vec<Vec<BigRational>> = subset.iter().map(|&i| gens[i].clone()).collect();
                if rank_of(&cols) < d {
                    continue;
                }
                // Pick d coordinates on which the basis is invertible.
                for rows in combinations(rank, d) {
                    let sq: Vec<Vec<BigRational>> =
                        rows.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect();
                    if let Some(inv) = invert(&sq) {
                        bases.push((cols, rows, inv));
                        break;
                    }
                }
            }
        }
        Self { rank, bases }
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        self.bases.iter().any(|(cols, rows, inv)| {
            let lambda: Vec<BigRational> = inv
                .iter()
                .map(|r| r.iter().zip(rows).map(|(a, &i)| a * &x[i]).sum())
                .collect();
            if lambda.iter().any(Signed::is_negative) {
                return false;
            }
            (0..self.rank).all(|k| {
                let s: BigRational = cols.iter().zip(&lambda).map(|(c, l)| &c[k] * l).sum();
                s == x[k]
            })
        })
    }
}

pub fn random_int_vec(rng: &mut impl Rng, rank: usize, bound: i64) -> IntVec {
    loop {
        let v: IntVec = (0..rank).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// A random point for membership tests: a box point, a nonnegative
/// combination of a few generators (often on the boundary), or such a
/// combination nudged off it.
pub fn membership_probe(rng: &mut impl Rng, rank: usize, gens: &[IntVec]) -> Vec<BigRational> {
    match rng.random_range(0..3) {
        0 => random_int_vec(rng, rank, 4).into_iter().map(BigRational::from_integer).collect(),
        k => {
            let mut p = vec![BigRational::zero(); rank];
            for g in gens {
                if rng.random_bool(0.5) {
                    let c = BigRational::new(rng.random_range(0..5).into(), rng.random_range(1..4).into());
                    for (x, y) in p.iter_mut().zip(g) {
                        *x += &c * BigRational::from_integer(y.clone());
                    }
                }
            }
            if k == 2 {
                let i = rng.random_range(0..rank);
                p[i] += BigRational::new(rng.random_range(-2..=2).into(), 3.into());
            }
            p
        }
    }
}

pub fn random_word(rng: &mut impl Rng, letters: usize, max_len: usize) -> Vec<usize> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random_range(0..letters)).collect()
}

/// A point of the closed chamber on a random face: the chamber is cut by
/// `ell_a = 0` for a random subset of roots before sampling.
pub fn random_face_point(rs: &RootSystem, rng: &mut impl Rng) -> Option<RationalVector> {
    let chamber = fundamental_chamber(rs).ok()?.into_cone();
    let mut equations = chamber.equations().to_vec();
    for root in rs.roots() {
        if rng.random_bool(0.3) {
            equations.push(root.ell.canonical_primitive().ok()?);
        }
    }
    let face = Cone::from_inequalities(rs.rank(), equations, chamber.facets().to_vec()).ok()?;
    weylcone::sampling::sample_in_cone(&face, rng)
}

#[derive(Debug, Default)]
pub struct DominanceStats {
    pub points: usize,
    pub boundary_points: usize,
    pub fixing_checks: usize,
}

/// Builds `count` Tits-cone points `w c` from face points `c` and checks
/// that descent returns exactly `c` under several pivot rules, with a word
/// that maps it back; for boundary points also checks that any `w` taking
/// `c` into the closed chamber fixes it.
pub fn dominance_suite(rs: &RootSystem, count: usize, rng: &mut impl Rng) -> Result<DominanceStats, String> {
    let mut stats = DominanceStats::default();
    let n = rs.len();
    while stats.points < count {
        let Some(c) = random_face_point(rs, rng) else { continue };
        let w = random_word(rng, n, 8);
        let x = word_to_element(rs, &w).map_err(|e| e.to_string())?.matrix.apply(&c).map_err(|e| e.to_string())?;
        let seeds = [None, Some(rng.random::<u64>()), Some(rng.random::<u64>())];
        for seed in seeds {
            let pivot = seed.map_or(PivotRule::Lowest, PivotRule::Random);
            match make_dominant(rs, &x, None, weylcone::weyl::DEFAULT_STEP_CAP, pivot).map_err(|e| e.to_string())? {
                Dominance::Dominant { point, word } => {
                    if point != c {
                        return Err(format!("{:?}: x = {x} descended to {point}, expected {c}", pivot));
                    }
                    let back = word_to_element(rs, &word).map_err(|e| e.to_string())?;
                    if back.matrix.apply(&point).map_err(|e| e.to_string())? != x {
                        return Err(format!("{:?}: word {word:?} does not map {point} back to {x}", pivot));
                    }
                }
                Dominance::Undecided { steps, .. } => {
                    return Err(format!("{x} undecided after {steps} steps"));
                }
            }
        }
        stats.points += 1;

        let s = stratum(rs, &c).map_err(|e| e.to_string())?;
        if s.roots.is_empty() {
            continue;
        }
        stats.boundary_points += 1;
        // Words mostly in the parabolic subgroup, so that some of them land
        // back in the chamber.
        for _ in 0..8 {
            let len = rng.random_range(1..=6);
            let word: Vec<usize> = (0..len)
                .map(|_| {
                    if rng.random_bool(0.8) {
                        s.roots[rng.random_range(0..s.roots.len())]
                    } else {
                        rng.random_range(0..n)
                    }
                })
                .collect();
            let y = word_to_element(rs, &word).map_err(|e| e.to_string())?.matrix.apply(&c).map_err(|e| e.to_string())?;
            if stratum(rs, &y).is_ok() {
                stats.fixing_checks += 1;
                if y != c {
                    return Err(format!("word {word:?} moves chamber point {c} to chamber point {y}"));
                }
            }
        }
    }
    Ok(stats)
}
