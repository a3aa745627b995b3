//! Matrix groups given by generators, enumerated by word length.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::corevec::IntMatrix;
use crate::error::{Error, Result};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_LIMIT: usize = 1_000_000;

/// A group element: a word in the generators and its matrix.
///
/// The word `[i1, ..., ik]` stands for the product `g_i1 * ... * g_ik`, so
/// `g_ik` acts first on a column vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub word: Vec<usize>,
    pub matrix: IntMatrix,
}

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        Self { word: Vec::new(), matrix: IntMatrix::identity(dim) }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// Product of the generators named by `word`, in written order.
pub fn word_matrix(generators: &[IntMatrix], dim: usize, word: &[usize]) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(dim);
    for &i in word {
        let g = generators.get(i).ok_or(Error::IndexOutOfRange { index: i, len: generators.len() })?;
        acc = acc.mul(g)?;
    }
    Ok(acc)
}

/// All distinct elements of word length at most `depth`, grouped by the
/// length at which they first appear. Elements are compared by matrix, and
/// each carries the shortlex-least word reaching it.
#[derive(Clone, Debug)]
pub struct WordBall {
    layers: Vec<Vec<GroupElement>>,
}

impl WordBall {
    pub fn generate(generators: &[IntMatrix], dim: usize, depth: usize, limit: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::RankMismatch { expected: dim, found: g.dim() });
        }
        let identity = GroupElement::identity(dim);
        let mut seen: HashSet<IntMatrix> = HashSet::from([identity.matrix.clone()]);
        let mut layers = vec![vec![identity]];
        let mut total = 1usize;
        for _ in 0..depth {
            let prev = layers.last().expect("at least the identity layer");
            // Products are formed in parallel; insertion stays sequential and
            // ordered so the result does not depend on the thread count.
            let candidates: Vec<(usize, usize, IntMatrix)> = prev
                .par_iter()
                .enumerate()
                .flat_map_iter(|(k, el)| {
                    generators
                        .iter()
                        .enumerate()
                        .map(move |(i, g)| (k, i, el.matrix.mul(g).expect("dimensions checked")))
                })
                .collect();
            let mut layer = Vec::new();
            for (k, i, m) in candidates {
                if seen.contains(&m) {
                    continue;
                }
                seen.insert(m.clone());
                let mut word = prev[k].word.clone();
                word.push(i);
                layer.push(GroupElement { word, matrix: m });
                total += 1;
                if total > limit {
                    return Err(Error::LimitExceeded { limit });
                }
            }
            layers.push(layer);
        }
        Ok(Self { layers })
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layers(&self) -> &[Vec<GroupElement>] {
        &self.layers
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.layers.iter().flatten()
    }

    /// Elements of word length at most `depth`.
    pub fn elements_up_to(&self, depth: usize) -> impl Iterator<Item = &GroupElement> {
        self.layers.iter().take(depth + 1).flatten()
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of new elements at each length `1..=depth`.
    pub fn growth(&self) -> Vec<usize> {
        self.layers.iter().skip(1).map(Vec::len).collect()
    }

    /// True once a layer came out empty: the whole (finite) group has been
    /// enumerated.
    pub fn is_exhaustive(&self) -> bool {
        self.layers.iter().skip(1).any(Vec::is_empty)
    }
}
