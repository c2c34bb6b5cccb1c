//! Permutations in cycle notation, the two cycle identities, and
//! factorizations of even permutations through normal subsets.

mod express;
mod identities;

use std::fmt;

use crate::group::GroupError;

pub use express::{class_word_distance, express_even, ExpressPath, Expression};
pub use identities::{cycle_quotient, odd_cycle_merge, verify_identities, IdentitySweep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("points overlap beyond the shared ones")]
    OverlapViolation,
    #[error("cycle lists have different lengths")]
    LengthMismatch,
    #[error("cycle list has even length")]
    EvenLength,
    #[error("cannot parse permutation {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("subset is not normal")]
    NotNormal,
    #[error("subset is not symmetric")]
    NotSymmetric,
    #[error("subset is not thick")]
    NotThick,
    #[error("target is not in P·P")]
    NoFactorization,
    #[error("permutation is odd")]
    NotEven,
    #[error("sigma must not be the identity")]
    IdentitySigma,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A permutation of `{1..n}`, stored 0-based as an image array.
///
/// Composition follows `(σ∘τ)(x) = σ(τ(x))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || std::mem::replace(&mut seen[x as usize], true) {
                return Err(PermError::Parse {
                    text: format!("{images:?}"),
                    reason: "not a bijection".into(),
                });
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Product of the given cycles (1-based points), rightmost applied first.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        let mut out = Self::identity(n);
        for c in cycles.iter().rev() {
            out = Self::cycle(n, c)?.compose(&out);
        }
        Ok(out)
    }

    /// A single cycle `(c₀,c₁,…)` on 1-based points.
    pub fn cycle(n: usize, points: &[u32]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for (k, &x) in points.iter().enumerate() {
            if x == 0 || x as usize > n {
                return Err(PermError::Parse {
                    text: format!("{points:?}"),
                    reason: format!("point {x} outside 1..{n}"),
                });
            }
            if std::mem::replace(&mut seen[x as usize - 1], true) {
                return Err(PermError::OverlapViolation);
            }
            images[x as usize - 1] = points[(k + 1) % points.len()] - 1;
        }
        Ok(Permutation { images })
    }

    /// Accepts cycle notation `(1,2,3)(4,5)`, `()`, or a 1-based image list
    /// `[2,3,1]`. Degree `n` bounds the points.
    pub fn parse(text: &str, n: usize) -> Result<Self, PermError> {
        let t = text.trim();
        let err = |reason: String| PermError::Parse {
            text: t.to_string(),
            reason,
        };
        if t.is_empty() || t.starts_with('(') || t == "e" {
            let mut cycles = Vec::new();
            let mut rest = if t == "e" { "" } else { t };
            while !rest.is_empty() {
                let rest_trim = rest.trim_start();
                if !rest_trim.starts_with('(') {
                    return Err(err(format!("expected '(' at offset {}", t.len() - rest_trim.len())));
                }
                let close = rest_trim
                    .find(')')
                    .ok_or_else(|| err("unclosed cycle".into()))?;
                let body = rest_trim[1..close].trim();
                if !body.is_empty() {
                    let pts = body
                        .split(',')
                        .map(|s| s.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| err(format!("bad point in ({body})")))?;
                    cycles.push(pts);
                }
                rest = rest_trim[close + 1..].trim_start();
            }
            Self::from_cycles(n, &cycles).map_err(|e| match e {
                PermError::OverlapViolation => err("repeated point in a cycle".into()),
                PermError::Parse { reason, .. } => err(reason),
                other => other,
            })
        } else {
            let inner = t.trim_start_matches('[').trim_end_matches(']');
            let imgs = inner
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err("expected cycle notation or an image list".into()))?;
            if imgs.len() != n || imgs.iter().any(|&x| x == 0) {
                return Err(err(format!("image list must have {n} entries in 1..{n}")));
            }
            Self::from_images(imgs.into_iter().map(|x| x - 1).collect()).map_err(|_| err("not a bijection".into()))
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image array.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize - 1] + 1
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Same permutation on a larger point set.
    pub fn extend(&self, n: usize) -> Self {
        assert!(n >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Moved points, 1-based.
    pub fn support(&self) -> Vec<u32> {
        (0..self.degree() as u32)
            .filter(|&i| self.images[i as usize] != i)
            .map(|i| i + 1)
            .collect()
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Lengths of the nontrivial cycles, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse("(1,2,3)(4,5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(p.apply(3), 1);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(!p.is_even());
        assert_eq!(Permutation::parse("()", 4).unwrap(), Permutation::identity(4));
        assert_eq!(Permutation::parse("[2,3,1]", 3).unwrap().to_string(), "(1,2,3)");
        assert_eq!(Permutation::parse("(3,1,2)", 3).unwrap().to_string(), "(1,2,3)");
        assert!(Permutation::parse("(1,6)", 5).is_err());
        assert!(Permutation::parse("(1,2,1)", 5).is_err());
        assert!(Permutation::parse("(1,2", 5).is_err());
    }

    #[test]
    fn composition_convention() {
        // Right factor first: (1,2)∘(2,3) sends 3 → 2 → 1.
        let a = Permutation::parse("(1,2)", 3).unwrap();
        let b = Permutation::parse("(2,3)", 3).unwrap();
        assert_eq!(a.compose(&b).to_string(), "(1,2,3)");
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn products_of_cycles_do_not_commute_in_general() {
        let p = Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).unwrap();
        let q = Permutation::from_cycles(3, &[vec![2, 3], vec![1, 2]]).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)");
        assert_eq!(q.to_string(), "(1,3,2)");
    }
}
