//! Thick subsets, covering powers, generic sets and simplicity diagnostics.

mod clique;
mod ramsey;
mod simple;

use serde::Serialize;

use crate::group::{FiniteGroup, GroupError, SubsetMask};
use clique::Graph;

pub use ramsey::{ramsey_bound, ramsey_witness_exists, verify_r33};
pub use simple::{
    bounded_simplicity_degree, covering_number, gn_set, is_simple_nonabelian, spread_length, ClassDegree,
    SimplicityDegree, Spread,
};

/// Exact clique search is attempted up to this group order.
pub const EXACT_LIMIT: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThickError {
    #[error("subset is not symmetric")]
    NotSymmetric,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("Ramsey number R({0},{1}) is not in the table")]
    OutOfTable(usize, usize),
    #[error("group is abelian, so every element is central")]
    DegenerateAbelian,
    #[error("group is not simple and nonabelian")]
    NotSimpleNonabelian,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThicknessStatus {
    Exact,
    LowerBoundOnly,
}

/// Least N for which the set is N-thick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Thickness {
    Finite(usize),
    Infinite,
}

impl Thickness {
    pub fn finite(self) -> Option<usize> {
        match self {
            Thickness::Finite(n) => Some(n),
            Thickness::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThicknessResult {
    pub status: ThicknessStatus,
    pub value: Thickness,
    /// A longest sequence whose pairwise quotients all avoid P.
    pub witness: Vec<u32>,
}

fn require_symmetric(g: &FiniteGroup, p: &SubsetMask) -> Result<(), ThickError> {
    if !p.belongs_to(g) {
        return Err(GroupError::GroupMismatch.into());
    }
    if !g.is_symmetric(p) {
        return Err(ThickError::NotSymmetric);
    }
    Ok(())
}

/// Largest set containing `e` whose pairwise quotients `a⁻¹b` all lie in `s`
/// (which must avoid `e`). Returned sorted, `e` first.
fn quotient_clique(g: &FiniteGroup, s: &SubsetMask, cap: usize, exact: bool) -> Vec<u32> {
    let verts = s.to_vec();
    let inv: Vec<u32> = verts.iter().map(|&a| g.inverse(a)).collect();
    let graph = Graph::new(verts.len(), |i, j| s.contains(g.mul(inv[i], verts[j])));
    let inner = if exact {
        graph.max_clique(cap.saturating_sub(1))
    } else {
        graph.greedy_clique()
    };
    std::iter::once(g.identity())
        .chain(inner.into_iter().map(|i| verts[i]))
        .collect()
}

/// Thickness of a symmetric set, as one more than the largest P-free sequence.
pub fn thickness(g: &FiniteGroup, p: &SubsetMask) -> Result<ThicknessResult, ThickError> {
    require_symmetric(g, p)?;
    if !p.contains(g.identity()) {
        // A constant sequence never meets P.
        return Ok(ThicknessResult {
            status: ThicknessStatus::Exact,
            value: Thickness::Infinite,
            witness: vec![g.identity(), g.identity()],
        });
    }
    let exact = g.order() <= EXACT_LIMIT;
    let witness = quotient_clique(g, &p.complement(), usize::MAX, exact);
    Ok(ThicknessResult {
        status: if exact {
            ThicknessStatus::Exact
        } else {
            ThicknessStatus::LowerBoundOnly
        },
        value: Thickness::Finite(witness.len() + 1),
        witness,
    })
}

/// Checks that no two entries of `seq` have quotient in `p`.
pub fn is_free_sequence(g: &FiniteGroup, p: &SubsetMask, seq: &[u32]) -> bool {
    seq.iter().enumerate().all(|(i, &a)| {
        seq[i + 1..]
            .iter()
            .all(|&b| !p.contains(g.mul_by_codes(g.inv_by_codes(a), b)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerCover {
    pub power: Option<usize>,
    /// Order of the subgroup generated by P, reported when no power covers.
    pub generated_order: Option<usize>,
}

/// Least `n ≤ cap` with `Pⁿ = G`.
pub fn power_cover(g: &FiniteGroup, p: &SubsetMask, cap: usize) -> Result<PowerCover, ThickError> {
    let power = g.covering_power(p, cap)?;
    let generated_order = if power.is_none() {
        Some(g.subgroup_closure(p).count())
    } else {
        None
    };
    Ok(PowerCover {
        power,
        generated_order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Genericity {
    pub m: usize,
    pub translators: Vec<u32>,
}

fn right_translate(g: &FiniteGroup, p: &[u32], t: u32) -> SubsetMask {
    SubsetMask::from_indices(g, p.iter().map(|&x| g.mul(x, t)))
}

/// Least `m ≤ cap` with `P·g₁ ∪ … ∪ P·g_m = G`, with translators.
pub fn genericity(g: &FiniteGroup, p: &SubsetMask, cap: usize) -> Result<Option<Genericity>, ThickError> {
    if !p.belongs_to(g) {
        return Err(GroupError::GroupMismatch.into());
    }
    if p.is_empty() {
        return Ok(None);
    }
    let elems = p.to_vec();
    let pinv: Vec<u32> = elems.iter().map(|&x| g.inverse(x)).collect();
    // Translators that put u into P·t, i.e. t ∈ P⁻¹u, ascending.
    let candidates = |u: u32| -> Vec<u32> {
        let mut ts: Vec<u32> = pinv.iter().map(|&x| g.mul(x, u)).collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    };

    // Greedy upper bound: always cover the least uncovered element.
    let mut greedy = Vec::new();
    let mut covered = SubsetMask::empty(g);
    while let Some(u) = covered.complement().first() {
        let t = candidates(u)
            .into_iter()
            .max_by_key(|&t| (right_translate(g, &elems, t).difference(&covered).count(), std::cmp::Reverse(t)))
            .expect("P is nonempty");
        covered.union_with(&right_translate(g, &elems, t));
        greedy.push(t);
    }
    let lower = g.order().div_ceil(elems.len());
    for m in lower..greedy.len().min(cap + 1) {
        let mut chosen = Vec::new();
        if cover_search(g, &elems, &candidates, &SubsetMask::empty(g), m, &mut chosen) {
            return Ok(Some(Genericity { m, translators: chosen }));
        }
    }
    if greedy.len() <= cap {
        Ok(Some(Genericity {
            m: greedy.len(),
            translators: greedy,
        }))
    } else {
        Ok(None)
    }
}

fn cover_search(
    g: &FiniteGroup,
    elems: &[u32],
    candidates: &impl Fn(u32) -> Vec<u32>,
    covered: &SubsetMask,
    left: usize,
    chosen: &mut Vec<u32>,
) -> bool {
    let Some(u) = covered.complement().first() else {
        return true;
    };
    let missing = g.order() - covered.count();
    if left == 0 || missing > left * elems.len() {
        return false;
    }
    for t in candidates(u) {
        chosen.push(t);
        let next = covered.union(&right_translate(g, elems, t));
        if cover_search(g, elems, candidates, &next, left - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericCertificate {
    pub m: usize,
    pub translators: Vec<u32>,
    pub power: usize,
    pub subgroup_order: usize,
    pub is_subgroup: bool,
    pub index: usize,
    pub holds: bool,
    #[serde(skip)]
    pub subgroup: SubsetMask,
}

/// Checks that `P^{3m−2}` is a subgroup of index at most m, where m is the
/// genericity of P.
pub fn generic_subgroup_certificate(g: &FiniteGroup, p: &SubsetMask) -> Result<GenericCertificate, ThickError> {
    if !p.belongs_to(g) {
        return Err(GroupError::GroupMismatch.into());
    }
    if !p.contains(g.identity()) {
        return Err(ThickError::PreconditionViolation("e is not in P".into()));
    }
    if !g.is_symmetric(p) {
        return Err(ThickError::PreconditionViolation("P is not symmetric".into()));
    }
    let gen = genericity(g, p, g.order())?.expect("P contains e, so |G| translates cover");
    let power = 3 * gen.m - 2;
    let sub = g.power_set(p, power)?;
    let is_subgroup = g.is_subgroup(&sub);
    let index = g.order() / sub.count();
    Ok(GenericCertificate {
        m: gen.m,
        translators: gen.translators,
        power,
        subgroup_order: sub.count(),
        is_subgroup,
        index,
        holds: is_subgroup && g.order() % sub.count() == 0 && index <= gen.m,
        subgroup: sub,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn cyc(n: u32) -> FiniteGroup {
        build_group(&GroupSpec::Cyclic(n)).unwrap()
    }

    fn set(g: &FiniteGroup, xs: &[&str]) -> SubsetMask {
        SubsetMask::from_indices(g, xs.iter().map(|x| g.parse_element(x).unwrap()))
    }

    fn labels(g: &FiniteGroup, xs: &[u32]) -> Vec<String> {
        xs.iter().map(|&x| g.format(x)).collect()
    }

    #[test]
    fn thickness_examples() {
        let g = cyc(5);
        let r = thickness(&g, &set(&g, &["0", "1", "4"])).unwrap();
        assert_eq!(r.value, Thickness::Finite(3));
        assert_eq!(labels(&g, &r.witness), ["0", "2"]);

        let g = cyc(12);
        let p = set(&g, &["11", "0", "1"]);
        let r = thickness(&g, &p).unwrap();
        assert_eq!(r.value, Thickness::Finite(7));
        assert_eq!(labels(&g, &r.witness), ["0", "2", "4", "6", "8", "10"]);
        assert!(is_free_sequence(&g, &p, &r.witness));

        for spec in [GroupSpec::Cyclic(7), GroupSpec::Symmetric(3), GroupSpec::Alternating(4)] {
            let g = build_group(&spec).unwrap();
            let e = SubsetMask::singleton(&g, 0);
            assert_eq!(thickness(&g, &e).unwrap().value, Thickness::Finite(g.order() + 1));
        }

        let g = cyc(6);
        let no_e = set(&g, &["1", "5"]);
        assert_eq!(thickness(&g, &no_e).unwrap().value, Thickness::Infinite);
        assert_eq!(thickness(&g, &set(&g, &["1"])).unwrap_err(), ThickError::NotSymmetric);
    }

    #[test]
    fn power_cover_examples() {
        let g = cyc(5);
        assert_eq!(power_cover(&g, &SubsetMask::full(&g), 10).unwrap().power, Some(1));
        assert_eq!(power_cover(&g, &set(&g, &["0", "1", "4"]), 10).unwrap().power, Some(2));
        let g = cyc(12);
        assert_eq!(power_cover(&g, &set(&g, &["11", "0", "1"]), 10).unwrap().power, Some(6));
        let r = power_cover(&g, &set(&g, &["0", "4"]), 10).unwrap();
        assert_eq!((r.power, r.generated_order), (None, Some(3)));
    }

    #[test]
    fn genericity_examples() {
        let g = cyc(6);
        let r = genericity(&g, &SubsetMask::full(&g), 6).unwrap().unwrap();
        assert_eq!(r.m, 1);
        let r = genericity(&g, &set(&g, &["0", "1", "5"]), 6).unwrap().unwrap();
        assert_eq!((r.m, labels(&g, &r.translators)), (2, vec!["0".to_string(), "3".to_string()]));
        let r = genericity(&g, &SubsetMask::singleton(&g, 0), 6).unwrap().unwrap();
        assert_eq!(r.m, 6);
        assert!(genericity(&g, &SubsetMask::singleton(&g, 0), 5).unwrap().is_none());
    }

    #[test]
    fn generic_certificates() {
        let g = cyc(6);
        let c = generic_subgroup_certificate(&g, &set(&g, &["0", "1", "5"])).unwrap();
        assert!(c.holds);
        assert_eq!((c.m, c.power, c.index), (2, 4, 1));

        let g = cyc(4);
        let c = generic_subgroup_certificate(&g, &set(&g, &["0", "2"])).unwrap();
        assert!(c.holds);
        assert_eq!((c.m, c.power, c.index, c.subgroup_order), (2, 4, 2, 2));

        assert!(matches!(
            generic_subgroup_certificate(&g, &set(&g, &["1", "3"])),
            Err(ThickError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn thickness_oracle_on_small_groups() {
        // Brute force: longest sequence of distinct elements avoiding P.
        let g = build_group(&GroupSpec::Symmetric(3)).unwrap();
        for bits in 0u32..64 {
            let mut p = SubsetMask::from_indices(&g, (0..6).filter(|i| bits >> i & 1 == 1));
            p.insert(0);
            let p = g.symmetrize(&p);
            let mut best = 0;
            for sub in 0u32..64 {
                let seq: Vec<u32> = (0..6).filter(|i| sub >> i & 1 == 1).collect();
                if is_free_sequence(&g, &p, &seq) {
                    best = best.max(seq.len());
                }
            }
            assert_eq!(thickness(&g, &p).unwrap().value, Thickness::Finite(best + 1));
        }
    }
}
