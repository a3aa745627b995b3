//! Named example systems.
//!
//! Names:
//!
//! * `co2222`: the rank-4 system with four roots whose pairings are `-2` on
//!   the diagonal and `2` elsewhere; its Weyl group is a free product of four
//!   copies of `Z/2`.
//! * `dynkin:<X><n>` / `affine:<X><n>`: a finite or affine Dynkin diagram
//!   with Cartan matrix `A`, realized in rank `2N` (`N` nodes) by
//!   `e_i = (u_i, 0)` and `ell_i = (-A_i, u_i)`, so `ell_i(e_j) = -A_ij`.
//! * `cartan:<X><n>`: a finite type realized in rank `N` by `e_i = u_i` and
//!   `ell_i = -A_i`.
//! * `folded:<D>:<p>`: the diagram `D` (`<X><n>` or `~<X><n>` for affine)
//!   folded along the node permutation `p`, given as 1-based images.

use super::{Root, RootSystem};
use crate::corevec::{RationalCovector, RationalVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramKind {
    Finite,
    Affine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinInfo {
    pub name: String,
    pub provenance: &'static str,
}

const CO_PROVENANCE: &str =
    "Cantat-Oguiso fourfold example: E_i.l_j = 2 for i != j, Weyl group Z2*Z2*Z2*Z2";
const DYNKIN_PROVENANCE: &str = "finite Dynkin diagram: Weyl group of the matching ADE singularity";
const AFFINE_PROVENANCE: &str = "affine Dynkin diagram: infinite Weyl group of an elliptic fibration";
const CARTAN_PROVENANCE: &str = "finite Dynkin diagram realized on its simple roots";
const FOLDED_PROVENANCE: &str = "Dynkin diagram folded by a diagram automorphism";

/// Representative builtin names with a one-line provenance each. Other
/// members of the parametrized families are accepted by [`builtin`].
pub fn builtin_list() -> Vec<BuiltinInfo> {
    let mut out = vec![BuiltinInfo { name: "co2222".into(), provenance: CO_PROVENANCE }];
    for d in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "C3", "D4", "E6", "F4", "G2"] {
        out.push(BuiltinInfo { name: format!("dynkin:{d}"), provenance: DYNKIN_PROVENANCE });
    }
    for d in ["A1", "A2", "A3", "B3", "C2", "D4", "E6", "F4", "G2"] {
        out.push(BuiltinInfo { name: format!("affine:{d}"), provenance: AFFINE_PROVENANCE });
    }
    for d in ["A2", "B2", "G2"] {
        out.push(BuiltinInfo { name: format!("cartan:{d}"), provenance: CARTAN_PROVENANCE });
    }
    for d in ["A3:3,2,1", "D4:3,2,4,1", "A5:5,4,3,2,1"] {
        out.push(BuiltinInfo { name: format!("folded:{d}"), provenance: FOLDED_PROVENANCE });
    }
    out
}

pub fn builtin(name: &str) -> Result<RootSystem> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    if name == "co2222" {
        return Ok(co2222());
    }
    let (family, rest) = name.split_once(':').ok_or_else(unknown)?;
    let rs = match family {
        "dynkin" => doubled(&parse_type(rest, DiagramKind::Finite).ok_or_else(unknown)?)?,
        "affine" => doubled(&parse_type(rest, DiagramKind::Affine).ok_or_else(unknown)?)?,
        "cartan" => on_simple_roots(&parse_type(rest, DiagramKind::Finite).ok_or_else(unknown)?)?,
        "folded" => {
            let (diagram, perm) = rest.split_once(':').ok_or_else(unknown)?;
            let cartan = match diagram.strip_prefix('~') {
                Some(d) => parse_type(d, DiagramKind::Affine),
                None => parse_type(diagram, DiagramKind::Finite),
            }
            .ok_or_else(unknown)?;
            fold(&cartan, perm)?
        }
        _ => return Err(unknown()),
    };
    rs.ensure_valid()?;
    Ok(rs.with_kind(name))
}

fn co2222() -> RootSystem {
    let roots = (0..4)
        .map(|i| {
            let e: Vec<i64> = (0..4).map(|j| if i == j { -2 } else { 2 }).collect();
            let ell: Vec<i64> = (0..4).map(|j| i64::from(i == j)).collect();
            Root::from_i64s(&e, &ell, format!("E{}", i + 1))
        })
        .collect();
    RootSystem::new(4, roots).expect("rank 4").with_kind("co2222")
}

fn parse_type(s: &str, kind: DiagramKind) -> Option<Vec<Vec<i64>>> {
    let mut chars = s.chars();
    let letter = chars.next()?;
    let n: usize = chars.as_str().parse().ok()?;
    cartan_matrix(letter, n, kind)
}

/// Edges `(i, j, a_ij, a_ji)` of a Dynkin diagram, 0-based.
type Edge = (usize, usize, i64, i64);

fn finite_edges(letter: char, n: usize) -> Option<Vec<Edge>> {
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, -1, -1)).collect::<Vec<Edge>>();
    let edges = match (letter, n) {
        ('A', 1..) => chain(n),
        ('B', 2..) => {
            let mut e = chain(n - 1);
            e.push((n - 2, n - 1, -1, -2));
            e
        }
        ('C', 2..) => {
            let mut e = chain(n - 1);
            e.push((n - 2, n - 1, -2, -1));
            e
        }
        ('D', 4..) => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1, -1, -1));
            e
        }
        ('E', 6..=8) => {
            let mut e = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
            e.extend((2..n - 1).map(|i| (i, i + 1, -1, -1)));
            e
        }
        ('F', 4) => vec![(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)],
        ('G', 2) => vec![(0, 1, -3, -1)],
        _ => return None,
    };
    Some(edges)
}

fn affine_edges(letter: char, n: usize) -> Option<Vec<Edge>> {
    // The extra node gets index `n`.
    if (letter, n) == ('A', 1) {
        return Some(vec![(0, 1, -2, -2)]);
    }
    if letter == 'C' && n >= 2 {
        let mut e: Vec<Edge> = (1..n - 1).map(|i| (i, i + 1, -1, -1)).collect();
        e.push((0, 1, -1, -2));
        e.push((n - 1, n, -2, -1));
        return Some(e);
    }
    let attach = match (letter, n) {
        ('A', 2..) => n - 1,
        ('B', 3..) | ('D', 4..) | ('E', 6) => 1,
        ('E', 7) | ('F', 4) => 0,
        ('E', 8) => 7,
        ('G', 2) => 1,
        _ => return None,
    };
    let mut e = finite_edges(letter, n)?;
    e.push((attach, n, -1, -1));
    if letter == 'A' {
        e.push((0, n, -1, -1));
    }
    Some(e)
}

/// Generalized Cartan matrix of a finite or affine Dynkin diagram.
pub fn cartan_matrix(letter: char, n: usize, kind: DiagramKind) -> Option<Vec<Vec<i64>>> {
    let (edges, size) = match kind {
        DiagramKind::Finite => (finite_edges(letter, n)?, n),
        DiagramKind::Affine => (affine_edges(letter, n)?, n + 1),
    };
    let mut a = vec![vec![0i64; size]; size];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j, aij, aji) in edges {
        a[i][j] = aij;
        a[j][i] = aji;
    }
    Some(a)
}

fn doubled(cartan: &[Vec<i64>]) -> Result<RootSystem> {
    let n = cartan.len();
    let roots = (0..n)
        .map(|i| {
            let mut e = vec![0i64; 2 * n];
            e[i] = 1;
            let mut ell: Vec<i64> = cartan[i].iter().map(|a| -a).collect();
            ell.extend((0..n).map(|j| i64::from(i == j)));
            Root::from_i64s(&e, &ell, format!("a{}", i + 1))
        })
        .collect();
    RootSystem::new(2 * n, roots)
}

fn on_simple_roots(cartan: &[Vec<i64>]) -> Result<RootSystem> {
    let n = cartan.len();
    let roots = (0..n)
        .map(|i| {
            let e: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
            let ell: Vec<i64> = cartan[i].iter().map(|a| -a).collect();
            Root::from_i64s(&e, &ell, format!("a{}", i + 1))
        })
        .collect();
    RootSystem::new(n, roots)
}

fn fold(cartan: &[Vec<i64>], perm: &str) -> Result<RootSystem> {
    let n = cartan.len();
    let images: Vec<usize> = perm
        .split(',')
        .map(|s| s.trim().parse::<usize>().ok().filter(|&k| (1..=n).contains(&k)).map(|k| k - 1))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::BadFolding(format!("`{perm}` is not a list of node numbers 1..={n}")))?;
    let mut seen = vec![false; n];
    if images.len() != n || images.iter().any(|&k| std::mem::replace(&mut seen[k], true)) {
        return Err(Error::BadFolding(format!("`{perm}` is not a permutation of {n} nodes")));
    }
    for i in 0..n {
        for j in 0..n {
            if cartan[images[i]][images[j]] != cartan[i][j] {
                return Err(Error::BadFolding(format!("`{perm}` is not a diagram symmetry")));
            }
        }
    }

    let base = doubled(cartan)?;
    let mut done = vec![false; n];
    let mut roots = Vec::new();
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut orbit = vec![start];
        let mut k = images[start];
        while k != start {
            orbit.push(k);
            k = images[k];
        }
        orbit.sort_unstable();
        let mut e = RationalVector::zeros(base.rank());
        for &k in &orbit {
            done[k] = true;
            e = &e + &base.roots()[k].e;
        }
        let ell: RationalCovector = base.roots()[orbit[0]].ell.clone();
        let label = orbit.iter().map(|k| format!("a{}", k + 1)).collect::<Vec<_>>().join("+");
        roots.push(Root::new(e, ell, label));
    }
    let rs = RootSystem::new(base.rank(), roots)?;
    rs.ensure_valid().map_err(|e| Error::BadFolding(format!("folded roots are not a root system: {e}")))?;
    Ok(rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{coxeter_matrix, CoxeterEntry};
    use num_rational::BigRational;
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

fn det(a: &[Vec<i64>]) -> BigInt {
        let rows = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        crate::corevec::IntMatrix::from_rows(rows).expect("square").det()
    }


    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn co2222_pairings() {
        let rs = builtin("co2222").unwrap();
        assert_eq!(rs.roots()[0], Root::from_i64s(&[-2, 2, 2, 2], &[1, 0, 0, 0], "E1"));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(rs.pairing(i, j), q(if i == j { -2 } else { 2 }));
            }
        }
        let m = coxeter_matrix(&rs).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { CoxeterEntry::Finite(1) } else { CoxeterEntry::Infinite };
                assert_eq!(m.get(i, j), want);
            }
        }
    }

    #[test]
    fn a2_and_affine_a1() {
        let a2 = builtin("dynkin:A2").unwrap();
        assert_eq!(a2.len(), 2);
        assert_eq!(coxeter_matrix(&a2).unwrap().get(0, 1), CoxeterEntry::Finite(3));
        let a1 = builtin("affine:A1").unwrap();
        assert_eq!(a1.len(), 2);
        assert_eq!(a1.pairing(0, 1), q(2));
        assert_eq!(a1.pairing(1, 0), q(2));
        assert_eq!(coxeter_matrix(&a1).unwrap().get(0, 1), CoxeterEntry::Infinite);
    }

    #[test]
    fn cartan_a2_is_the_planar_realization() {
        let rs = builtin("cartan:A2").unwrap();
        assert_eq!(rs.roots()[0], Root::from_i64s(&[1, 0], &[-2, 1], "a1"));
        assert_eq!(rs.roots()[1], Root::from_i64s(&[0, 1], &[1, -2], "a2"));
    }

    #[test]
    fn finite_cartan_matrices_are_positive_definite_and_affine_singular() {
        let finite = [('A', 1..=7), ('B', 2..=6), ('C', 2..=6), ('D', 4..=7), ('E', 6..=8), ('F', 4..=4), ('G', 2..=2)];
        for (letter, range) in finite {
            for n in range {
                let a = cartan_matrix(letter, n, DiagramKind::Finite).unwrap();
                // Leading principal minors all positive.
                for k in 1..=n {
                    let minor: Vec<Vec<i64>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
                    assert!(det(&minor).is_positive(), "{letter}{n} minor {k}");
                }
            }
        }
        let affine = [('A', 1..=6), ('B', 3..=6), ('C', 2..=6), ('D', 4..=7), ('E', 6..=8), ('F', 4..=4), ('G', 2..=2)];
        for (letter, range) in affine {
            for n in range {
                let a = cartan_matrix(letter, n, DiagramKind::Affine).unwrap();
                assert!(det(&a).is_zero(), "~{letter}{n}");
                // Deleting the extra node leaves the finite type.
                let minor: Vec<Vec<i64>> = a[..n].iter().map(|r| r[..n].to_vec()).collect();
                assert!(det(&minor).is_positive(), "~{letter}{n}");
            }
        }
    }

    #[test]
    fn every_listed_builtin_is_valid() {
        for info in builtin_list() {
            let rs = builtin(&info.name).unwrap_or_else(|e| panic!("{}: {e}", info.name));
            assert!(rs.validate().is_valid(), "{}", info.name);
        }
    }

    #[test]
    fn folding() {
        let b2 = builtin("folded:A3:3,2,1").unwrap();
        assert_eq!(b2.len(), 2);
        assert_eq!(coxeter_matrix(&b2).unwrap().get(0, 1), CoxeterEntry::Finite(4));
        let g2 = builtin("folded:D4:3,2,4,1").unwrap();
        assert_eq!(coxeter_matrix(&g2).unwrap().get(0, 1), CoxeterEntry::Finite(6));
        assert!(matches!(builtin("folded:A3:2,1,3"), Err(Error::BadFolding(_))));
        assert!(matches!(builtin("folded:A3:1,1,3"), Err(Error::BadFolding(_))));
        // Folding adjacent nodes breaks the self-pairing axiom.
        assert!(matches!(builtin("folded:A2:2,1"), Err(Error::BadFolding(_))));
    }

    #[test]
    fn unknown_names() {
        for name in ["", "co", "dynkin:", "dynkin:Z3", "dynkin:E9", "affine:B2", "folded:A3", "nope:A2"] {
            assert!(matches!(builtin(name), Err(Error::UnknownBuiltin(_))), "{name}");
        }
    }
}
