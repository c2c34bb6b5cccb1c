//! Classical root systems in simple-root coordinates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::gcd;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root system {0}{1}")]
    UnsupportedFamilyRank(char, usize),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("cannot parse root system {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// Simple roots in the Euclidean realization.
    simple_vectors: Vec<Vec<i64>>,
    /// All roots in simple-root coordinates: positive ones by height then
    /// coordinates in decreasing lexicographic order, followed by their negatives.
    roots: Vec<Vec<i64>>,
    vectors: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystem {
    type Err = RootError;

    /// `A2`, `B3`, `c4`, `D5`.
    fn from_str(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            _ => return Err(RootError::Parse(s.to_string())),
        };
        let rank = chars.as_str().parse().map_err(|_| RootError::Parse(s.to_string()))?;
        build_root_system(family, rank)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(dim: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

fn combo(dim: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// Solves `Σ cₖ·basis[k] = v` exactly, returning integer coordinates.
fn coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let n = basis.len();
    let dim = v.len();
    // Rows are Euclidean coordinates, columns are basis vectors plus v.
    let mut m: Vec<Vec<(i128, i128)>> = (0..dim)
        .map(|r| {
            (0..=n)
                .map(|c| (if c < n { basis[c][r] } else { v[r] } as i128, 1))
                .collect()
        })
        .collect();
    fn norm((a, b): (i128, i128)) -> (i128, i128) {
        let g = {
            let (mut x, mut y) = (a.abs(), b.abs());
            while y != 0 {
                (x, y) = (y, x % y);
            }
            x.max(1)
        };
        let s = if b < 0 { -1 } else { 1 };
        (s * a / g, s * b / g)
    }
    let sub = |x: (i128, i128), f: (i128, i128), y: (i128, i128)| norm((x.0 * f.1 * y.1 - f.0 * y.0 * x.1, x.1 * f.1 * y.1));
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(pr) = (row..dim).find(|&r| m[r][col].0 != 0) else {
            return None;
        };
        m.swap(row, pr);
        let piv = m[row][col];
        for c in 0..=n {
            m[row][c] = norm((m[row][c].0 * piv.1, m[row][c].1 * piv.0));
        }
        for r in 0..dim {
            if r != row && m[r][col].0 != 0 {
                let f = m[r][col];
                for c in 0..=n {
                    m[r][c] = sub(m[r][c], f, m[row][c]);
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if (row..dim).any(|r| m[r][n].0 != 0) {
        return None;
    }
    pivots
        .iter()
        .map(|&r| {
            let (a, b) = m[r][n];
            (a % b == 0).then(|| (a / b) as i64)
        })
        .collect()
}

/// Builds A_n (n ≥ 1), B_n and C_n (n ≥ 2) or D_n (n ≥ 3).
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem, RootError> {
    let n = rank;
    let ok = match family {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 3,
    };
    if !ok {
        return Err(RootError::UnsupportedFamilyRank(family.letter(), rank));
    }
    let dim = if family == Family::A { n + 1 } else { n };
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    let pairs = |v: &mut Vec<Vec<i64>>| {
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    v.push(combo(dim, &[(i, 1), (j, -1)]));
                    if i < j && family != Family::A {
                        v.push(combo(dim, &[(i, 1), (j, 1)]));
                        v.push(combo(dim, &[(i, -1), (j, -1)]));
                    }
                }
            }
        }
    };
    pairs(&mut vectors);
    match family {
        Family::B => (0..dim).for_each(|i| {
            vectors.push(unit(dim, i, 1));
            vectors.push(unit(dim, i, -1));
        }),
        Family::C => (0..dim).for_each(|i| {
            vectors.push(unit(dim, i, 2));
            vectors.push(unit(dim, i, -2));
        }),
        _ => {}
    }
    let mut simple: Vec<Vec<i64>> = (0..n - 1).map(|i| combo(dim, &[(i, 1), (i + 1, -1)])).collect();
    simple.push(match family {
        Family::A => combo(dim, &[(n - 1, 1), (n, -1)]),
        Family::B => unit(dim, n - 1, 1),
        Family::C => unit(dim, n - 1, 2),
        Family::D => combo(dim, &[(n - 2, 1), (n - 1, 1)]),
    });

    let mut positive: Vec<(Vec<i64>, Vec<i64>)> = vectors
        .iter()
        .map(|v| (coordinates(&simple, v).expect("roots lie in the root lattice"), v.clone()))
        .filter(|(c, _)| c.iter().all(|&x| x >= 0))
        .collect();
    positive.sort_by(|(a, _), (b, _)| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let mut roots: Vec<Vec<i64>> = positive.iter().map(|(c, _)| c.clone()).collect();
    let mut vecs: Vec<Vec<i64>> = positive.iter().map(|(_, v)| v.clone()).collect();
    roots.extend(positive.iter().map(|(c, _)| c.iter().map(|x| -x).collect::<Vec<_>>()));
    vecs.extend(positive.iter().map(|(_, v)| v.iter().map(|x| -x).collect::<Vec<_>>()));

    let cartan = simple
        .iter()
        .map(|b| simple.iter().map(|a| 2 * dot(b, a) / dot(a, a)).collect())
        .collect();
    Ok(RootSystem {
        family,
        rank,
        simple_vectors: simple,
        roots,
        vectors: vecs,
        cartan,
    })
}

impl RootSystem {
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.roots.len() / 2]
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        unit(self.rank, i, 1)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    fn index_of(&self, beta: &[i64]) -> Result<usize, RootError> {
        self.roots
            .iter()
            .position(|r| r.as_slice() == beta)
            .ok_or_else(|| RootError::NotARoot(beta.to_vec()))
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        self.index_of(beta).is_ok()
    }

    /// Euclidean realization of a root.
    pub fn vector(&self, beta: &[i64]) -> Result<&[i64], RootError> {
        Ok(&self.vectors[self.index_of(beta)?])
    }

    /// `⟨β,α⟩ = 2(β,α)/(α,α)`.
    pub fn pairing(&self, beta: &[i64], alpha: &[i64]) -> Result<i64, RootError> {
        let b = self.vector(beta)?;
        let a = self.vector(alpha)?;
        let (num, den) = (2 * dot(b, a), dot(a, a));
        debug_assert_eq!(num % den, 0, "crystallographic");
        Ok(num / den)
    }

    pub fn height(&self, beta: &[i64]) -> Result<i64, RootError> {
        self.index_of(beta)?;
        Ok(beta.iter().sum())
    }

    pub fn cartan_determinant(&self) -> i64 {
        determinant(&self.cartan)
    }

    /// Integers λ with `Σ_α λ_α⟨β,α⟩ > 0` for every simple β: the solution of
    /// `Σ_α ⟨β,α⟩λ_α = |det C|` for all β, divided by its gcd.
    pub fn lambda_weights(&self) -> Vec<i64> {
        let n = self.rank;
        let det = self.cartan_determinant();
        // λ = |det|·C⁻¹·1 = sign(det)·adj(C)·1.
        let mut lambda: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| cofactor(&self.cartan, j, i)).sum::<i64>() * det.signum())
            .collect();
        let g = lambda.iter().fold(0, |acc, &x| gcd(acc, x)).max(1);
        for x in lambda.iter_mut() {
            *x /= g;
        }
        lambda
    }

    /// `Σ_α λ_α⟨β,α⟩` for a root β.
    pub fn weighted_pairing(&self, lambda: &[i64], beta: &[i64]) -> Result<i64, RootError> {
        let mut total = 0;
        for (i, &l) in lambda.iter().enumerate() {
            total += l * self.pairing(beta, &self.simple_root(i))?;
        }
        Ok(total)
    }

    /// For type A_{n−1}, the pair (i,j) (0-based, i ≠ j) of the root
    /// e_i − e_j, which corresponds to the matrix unit E_ij.
    pub fn type_a_pair(&self, beta: &[i64]) -> Result<(usize, usize), RootError> {
        let v = self.vector(beta)?;
        if self.family != Family::A {
            return Err(RootError::NotARoot(beta.to_vec()));
        }
        let i = v.iter().position(|&x| x == 1).expect("type A root");
        let j = v.iter().position(|&x| x == -1).expect("type A root");
        Ok((i, j))
    }

    /// Inverse of [`RootSystem::type_a_pair`].
    pub fn type_a_root(&self, i: usize, j: usize) -> Result<Vec<i64>, RootError> {
        let dim = self.rank + 1;
        if self.family != Family::A || i == j || i >= dim || j >= dim {
            return Err(RootError::NotARoot(vec![i as i64, j as i64]));
        }
        let v = combo(dim, &[(i, 1), (j, -1)]);
        Ok(coordinates(&self.simple_vectors, &v).expect("in lattice"))
    }
}

fn minor(m: &[Vec<i64>], r: usize, c: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
        .collect()
}

fn cofactor(m: &[Vec<i64>], r: usize, c: usize) -> i64 {
    let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
    sign * determinant(&minor(m, r, c))
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn root_counts() {
        for n in 1..=8 {
            assert_eq!(rs(&format!("A{n}")).positive_roots().len(), n * (n + 1) / 2);
            if n >= 2 {
                assert_eq!(rs(&format!("B{n}")).positive_roots().len(), n * n);
                assert_eq!(rs(&format!("C{n}")).positive_roots().len(), n * n);
            }
            if n >= 3 {
                assert_eq!(rs(&format!("D{n}")).positive_roots().len(), n * (n - 1));
            }
        }
        assert_eq!(rs("A1").roots().len(), 2);
        assert_eq!(rs("A2").roots().len(), 6);
        assert_eq!(rs("B2").roots().len(), 8);
        assert!(matches!(build_root_system(Family::D, 2), Err(RootError::UnsupportedFamilyRank('D', 2))));
        assert!(matches!(build_root_system(Family::B, 1), Err(RootError::UnsupportedFamilyRank('B', 1))));
    }

    #[test]
    fn pairings_and_heights() {
        let a2 = rs("A2");
        let (a1, a2r) = (a2.simple_root(0), a2.simple_root(1));
        assert_eq!(a2.pairing(&a1, &a1).unwrap(), 2);
        assert_eq!(a2.pairing(&a1, &a2r).unwrap(), -1);
        assert_eq!(a2.height(&[1, 1]).unwrap(), 2);
        assert_eq!(a2.height(&a1).unwrap(), 1);

        let b2 = rs("B2");
        assert_eq!(b2.pairing(&[1, 0], &[0, 1]).unwrap(), -2);
        assert_eq!(b2.pairing(&[0, 1], &[1, 0]).unwrap(), -1);
        assert_eq!(b2.height(&[1, 2]).unwrap(), 3);
        assert_eq!(b2.positive_roots().last().unwrap(), &vec![1, 2]);
        assert!(matches!(b2.height(&[2, 1]), Err(RootError::NotARoot(_))));
    }

    #[test]
    fn cartan_determinants() {
        for n in 1..=8 {
            assert_eq!(rs(&format!("A{n}")).cartan_determinant(), n as i64 + 1);
            if n >= 2 {
                assert_eq!(rs(&format!("B{n}")).cartan_determinant(), 2);
                assert_eq!(rs(&format!("C{n}")).cartan_determinant(), 2);
            }
            if n >= 3 {
                assert_eq!(rs(&format!("D{n}")).cartan_determinant(), 4);
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(rs("A1").lambda_weights(), vec![1]);
        assert_eq!(rs("A2").lambda_weights(), vec![1, 1]);
        let b2 = rs("B2");
        let l = b2.lambda_weights();
        assert_eq!(l, vec![4, 3]);
        assert_eq!(b2.weighted_pairing(&l, &[1, 0]).unwrap(), 2);
        assert_eq!(b2.weighted_pairing(&l, &[0, 1]).unwrap(), 2);
        // (3,2) also has positive sums (2 and 1), just not the normalized solution.
        assert_eq!(b2.weighted_pairing(&[3, 2], &[1, 0]).unwrap(), 2);
        assert_eq!(b2.weighted_pairing(&[3, 2], &[0, 1]).unwrap(), 1);
    }

    #[test]
    fn lambda_separates_all_roots() {
        for name in ["A1", "A3", "A7", "B2", "B5", "C3", "C6", "D4", "D8"] {
            let r = rs(name);
            let l = r.lambda_weights();
            for i in 0..r.rank {
                assert!(r.weighted_pairing(&l, &r.simple_root(i)).unwrap() > 0, "{name}");
            }
            for beta in r.roots() {
                assert_ne!(r.weighted_pairing(&l, beta).unwrap(), 0, "{name} {beta:?}");
            }
        }
    }

    #[test]
    fn type_a_dictionary() {
        let r = rs("A3");
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let beta = r.type_a_root(i, j).unwrap();
                    assert_eq!(r.type_a_pair(&beta).unwrap(), (i, j));
                    assert_eq!(r.height(&beta).unwrap(), j as i64 - i as i64);
                }
            }
        }
    }
}
