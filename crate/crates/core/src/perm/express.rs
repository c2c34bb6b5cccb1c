use std::collections::HashSet;

use serde::Serialize;

use super::{PermError, Permutation};
use crate::group::{build_group, FiniteGroup, GroupSpec, SubsetMask};
use crate::thick::thickness;

/// How P is known to contain one factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub factor: String,
    /// Positions i < j in the sequence of cycle shapes with `sᵢ⁻¹sⱼ ∈ P`.
    pub pair: (usize, usize),
    /// The element `sᵢ⁻¹sⱼ`, conjugate to the factor inside the group.
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpressPath {
    /// Factors built from the cycle structure; membership of each
    /// nontrivial factor follows from a collision among thickness-many
    /// cycle shapes and normality.
    Constructive { thickness: usize, collisions: Vec<Collision> },
    /// Exhaustive search for q₁ ∈ P with q₁⁻¹σ ∈ P.
    Fallback { thickness: usize, reason: String, tried: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expression {
    pub q1: u32,
    pub q2: u32,
    pub path: ExpressPath,
}

fn alt_degree(a: &FiniteGroup) -> Result<usize, PermError> {
    match a.spec() {
        GroupSpec::Alternating(n) => Ok(*n as usize),
        other => Err(PermError::Group(crate::group::GroupError::InvalidParameters(format!(
            "expected an alternating group, got {other}"
        )))),
    }
}

/// Writes an even permutation σ as q₁·q₂ with both factors in a normal,
/// symmetric, thick subset P of Alt(n).
pub fn express_even(a: &FiniteGroup, p: &SubsetMask, sigma: u32) -> Result<Expression, PermError> {
    let n = alt_degree(a)?;
    if !p.belongs_to(a) {
        return Err(crate::group::GroupError::GroupMismatch.into());
    }
    if !a.is_normal_set(p) {
        return Err(PermError::NotNormal);
    }
    if !a.is_symmetric(p) {
        return Err(PermError::NotSymmetric);
    }
    let thick = thickness(a, p).map_err(|_| PermError::NotSymmetric)?;
    let Some(big_n) = thick.value.finite() else {
        return Err(PermError::NotThick);
    };

    let target = Permutation::parse(&a.format(sigma), n)?;
    let expr = match constructive(a, p, &target, n, big_n) {
        Ok(found) => found,
        Err(reason) => fallback(a, p, sigma, big_n, reason)?,
    };
    // Replay through the independent multiplication path.
    debug_assert!(p.contains(expr.q1) && p.contains(expr.q2));
    if a.mul_by_codes(expr.q1, expr.q2) != sigma || !p.contains(expr.q1) || !p.contains(expr.q2) {
        return Err(PermError::IdentityFailed("factorization does not replay".into()));
    }
    Ok(expr)
}

fn fallback(a: &FiniteGroup, p: &SubsetMask, sigma: u32, big_n: usize, reason: String) -> Result<Expression, PermError> {
    let mut tried = 0;
    for q1 in p.iter() {
        tried += 1;
        let q2 = a.mul(a.inverse(q1), sigma);
        if p.contains(q2) {
            return Ok(Expression {
                q1,
                q2,
                path: ExpressPath::Fallback {
                    thickness: big_n,
                    reason,
                    tried,
                },
            });
        }
    }
    Err(PermError::NoFactorization)
}

/// Splits σ into q₁ = (odd cycles)·∏(x,y,a…) and q₂ = ∏(x,y,b…), pairing
/// its even-length cycles (x,a…), (y,b…) in order.
fn split_even(sigma: &Permutation, n: usize) -> Result<(Permutation, Permutation), PermError> {
    if !sigma.is_even() {
        return Err(PermError::NotEven);
    }
    let mut q1_cycles = Vec::new();
    let mut q2_cycles = Vec::new();
    let mut pending: Option<Vec<u32>> = None;
    for c in sigma.cycles() {
        if c.len() % 2 == 1 {
            q1_cycles.push(c);
        } else if let Some(first) = pending.take() {
            let (x, a) = (first[0], &first[1..]);
            let (y, b) = (c[0], &c[1..]);
            q1_cycles.push([x, y].iter().chain(a).copied().collect());
            q2_cycles.push([x, y].iter().chain(b).copied().collect());
        } else {
            pending = Some(c);
        }
    }
    let q1 = Permutation::from_cycles(n, &q1_cycles)?;
    let q2 = Permutation::from_cycles(n, &q2_cycles)?;
    Ok((q1, q2))
}

fn constructive(
    a: &FiniteGroup,
    p: &SubsetMask,
    sigma: &Permutation,
    n: usize,
    big_n: usize,
) -> Result<Expression, String> {
    let (q1, q2) = split_even(sigma, n).map_err(|e| e.to_string())?;
    if q1.compose(&q2) != *sigma {
        return Err("cycle split does not recompose".into());
    }
    let mut collisions = Vec::new();
    let mut idx = [0u32; 2];
    for (k, q) in [&q1, &q2].into_iter().enumerate() {
        idx[k] = a.parse_element(&q.to_string()).map_err(|e| e.to_string())?;
        if q.is_identity() {
            if !p.contains(a.identity()) {
                return Err("identity factor is not in P".into());
            }
            continue;
        }
        collisions.push(collide(a, p, q, n, big_n)?);
    }
    Ok(Expression {
        q1: idx[0],
        q2: idx[1],
        path: ExpressPath::Constructive {
            thickness: big_n,
            collisions,
        },
    })
}

/// For a product q of disjoint odd cycles of lengths 2mₖ+1, builds N shapes
/// ∏ₖ(xₖ, fresh mₖ points) sharing only the xₖ; thickness forces a pair with
/// quotient in P, and that quotient has the cycle type of q.
fn collide(a: &FiniteGroup, p: &SubsetMask, q: &Permutation, n: usize, big_n: usize) -> Result<Collision, String> {
    let ms: Vec<usize> = q.cycle_type().iter().map(|l| (l - 1) / 2).collect();
    let shape_is_odd = ms.iter().filter(|&&m| m % 2 == 1).count() % 2 == 1;
    let budget: usize = ms.iter().map(|m| 1 + big_n * m).sum::<usize>() + if shape_is_odd { 2 } else { 0 };
    if budget > n {
        return Err(format!("needs {budget} points, degree is {n}"));
    }
    let mut next = 1u32;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let centers: Vec<u32> = ms.iter().map(|_| fresh()).collect();
    let mut shapes = Vec::with_capacity(big_n);
    for _ in 0..big_n {
        let mut cycles: Vec<Vec<u32>> = centers
            .iter()
            .zip(&ms)
            .map(|(&x, &m)| std::iter::once(x).chain((0..m).map(|_| fresh())).collect())
            .collect();
        cycles.retain(|c| c.len() > 1);
        shapes.push(cycles);
    }
    // An odd shape is moved into Alt(n) by one fixed transposition far away;
    // it cancels in every quotient.
    let tail = if shape_is_odd { vec![vec![fresh(), fresh()]] } else { vec![] };
    let elems: Vec<u32> = shapes
        .iter()
        .map(|cycles| {
            let all: Vec<Vec<u32>> = cycles.iter().chain(&tail).cloned().collect();
            let perm = Permutation::from_cycles(n, &all).expect("points within degree");
            a.parse_element(&perm.to_string()).expect("even by construction")
        })
        .collect();
    let distinct: HashSet<u32> = elems.iter().copied().collect();
    debug_assert_eq!(distinct.len(), elems.len());
    for j in 0..elems.len() {
        for i in 0..j {
            let w = a.mul(a.inverse(elems[i]), elems[j]);
            if p.contains(w) {
                let classes = a.classes();
                let qi = a.parse_element(&q.to_string()).map_err(|e| e.to_string())?;
                if classes.class_of(w) != classes.class_of(qi) {
                    return Err("collision lands in the other half of a split class".into());
                }
                return Ok(Collision {
                    factor: q.to_string(),
                    pair: (i, j),
                    element: a.format(w),
                });
            }
        }
    }
    Err("no collision among the shapes; P is not as thick as reported".into())
}

/// Least k ≤ cap with τ ∈ (σ^{Sym(n)})ᵏ, with k = 0 for τ = e.
pub fn class_word_distance(n: usize, sigma: &Permutation, tau: &Permutation, cap: usize) -> Result<Option<usize>, PermError> {
    if sigma.is_identity() {
        return Err(PermError::IdentitySigma);
    }
    let g = build_group(&GroupSpec::Symmetric(n as u32))?;
    let s = g.parse_element(&sigma.extend(n).to_string())?;
    let t = g.parse_element(&tau.extend(n).to_string())?;
    if t == g.identity() {
        return Ok(Some(0));
    }
    let classes = g.classes();
    let c = classes.class_mask(&g, classes.class_of(s));
    let mut acc = c.clone();
    let mut seen = HashSet::new();
    for k in 1..=cap {
        if acc.contains(t) {
            return Ok(Some(k));
        }
        if !seen.insert(acc.clone()) {
            return Ok(None);
        }
        acc = g.product_normal(&acc, &c)?;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alt5_p(a: &FiniteGroup) -> SubsetMask {
        // {e} ∪ double transpositions ∪ 3-cycles.
        SubsetMask::from_indices(
            a,
            (0..a.order() as u32).filter(|&x| {
                let t = Permutation::parse(&a.format(x), 5).unwrap().cycle_type();
                t.is_empty() || t == [2, 2] || t == [3]
            }),
        )
    }

    #[test]
    fn express_all_of_alt5() {
        let a = build_group(&GroupSpec::Alternating(5)).unwrap();
        let p = alt5_p(&a);
        assert_eq!(p.count(), 36);
        assert!(a.product_sets(&p, &p).unwrap().is_full());
        for s in 0..60 {
            let e = express_even(&a, &p, s).unwrap();
            assert_eq!(a.mul(e.q1, e.q2), s);
        }
        let five = a.parse_element("(1,2,3,4,5)").unwrap();
        assert!(express_even(&a, &p, five).is_ok());
        let e = express_even(&a, &p, 0).unwrap();
        assert_eq!((e.q1, e.q2), (0, 0));
    }

    #[test]
    fn express_rejects_non_normal() {
        let a = build_group(&GroupSpec::Alternating(5)).unwrap();
        let x = a.parse_element("(1,2,3)").unwrap();
        let p = a.symmetrize(&SubsetMask::from_indices(&a, [0, x]));
        assert_eq!(express_even(&a, &p, 0).unwrap_err(), PermError::NotNormal);
    }

    #[test]
    fn constructive_path_when_points_suffice() {
        // P = Alt(7) is 2-thick, so two shapes already collide.
        let a = build_group(&GroupSpec::Alternating(7)).unwrap();
        let p = SubsetMask::full(&a);
        for text in ["(1,2,3)", "(1,2,3,4,5)", "(1,2)(3,4)", "(1,2,3,4)(5,6)"] {
            let sigma = a.parse_element(text).unwrap();
            let e = express_even(&a, &p, sigma).unwrap();
            assert_eq!(a.mul(e.q1, e.q2), sigma);
            match e.path {
                ExpressPath::Constructive { thickness, collisions } => {
                    assert_eq!(thickness, 2);
                    assert!(!collisions.is_empty());
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn split_pairs_even_cycles() {
        let s = Permutation::parse("(1,2)(3,4,5,6)(7,8,9)", 9).unwrap();
        let (q1, q2) = split_even(&s, 9).unwrap();
        assert_eq!(q1.compose(&q2), s);
        assert!(q1.is_even() && q2.is_even());
    }

    #[test]
    fn distances() {
        let s = Permutation::parse("(1,2,3,4,5)", 5).unwrap();
        assert_eq!(class_word_distance(5, &s, &Permutation::identity(5), 4).unwrap(), Some(0));
        assert_eq!(class_word_distance(5, &s, &s, 4).unwrap(), Some(1));
        let t = Permutation::parse("(1,2,3)", 5).unwrap();
        let d = class_word_distance(5, &s, &t, 4).unwrap().unwrap();
        assert!(d <= 2);
        // Oracle: (1,2,3) is a product of two 5-cycles.
        let g = build_group(&GroupSpec::Symmetric(5)).unwrap();
        let cls = g.classes();
        let c = cls.class_mask(&g, cls.class_of(g.parse_element("(1,2,3,4,5)").unwrap()));
        assert!(g.product_sets(&c, &c).unwrap().contains(g.parse_element("(1,2,3)").unwrap()));
        assert_eq!(d, 2);
        assert_eq!(
            class_word_distance(5, &Permutation::identity(5), &t, 4).unwrap_err(),
            PermError::IdentitySigma
        );
    }
}
