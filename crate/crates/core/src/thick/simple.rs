use serde::Serialize;

use super::{quotient_clique, require_symmetric, ThickError, EXACT_LIMIT};
use crate::group::{FiniteGroup, SubsetMask};

/// Least `k ≤ cap` with `(g^G ∪ (g⁻¹)^G)^{≤k} = G` for a class representative,
/// or `None` once the ball stops growing or the cap is hit.
fn class_ball_radius(g: &FiniteGroup, class: u32, cap: usize) -> Option<usize> {
    let classes = g.classes();
    let s = classes
        .class_mask(g, class)
        .union(&classes.class_mask(g, classes.inverse_class(g, class)));
    let mut ball = SubsetMask::singleton(g, g.identity());
    for k in 0..=cap {
        if ball.is_full() {
            return Some(k);
        }
        if k == cap {
            break;
        }
        let next = g.product_normal(&ball, &s).expect("same group").union(&ball);
        if next == ball {
            return None;
        }
        ball = next;
    }
    None
}

/// `G_N(G)`: elements whose class and inverse class cover G within N factors.
pub fn gn_set(g: &FiniteGroup, n: usize) -> SubsetMask {
    let classes = g.classes();
    let mut radius: Vec<Option<Option<usize>>> = vec![None; classes.count()];
    let mut out = SubsetMask::empty(g);
    for c in 0..classes.count() as u32 {
        let r = match radius[c as usize] {
            Some(r) => r,
            None => {
                let r = class_ball_radius(g, c, n);
                // g and g⁻¹ generate the same ball.
                radius[c as usize] = Some(r);
                radius[classes.inverse_class(g, c) as usize] = Some(r);
                r
            }
        };
        if matches!(r, Some(k) if k <= n) {
            out.union_with(&classes.class_mask(g, c));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDegree {
    pub representative: u32,
    pub size: usize,
    pub radius: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityDegree {
    pub degree: Option<usize>,
    /// Least-index noncentral element whose class ball never fills G.
    pub witness: Option<u32>,
    pub classes: Vec<ClassDegree>,
}

/// Least N with `G_N(G) ⊇ G∖Z(G)`.
pub fn bounded_simplicity_degree(g: &FiniteGroup, cap: usize) -> Result<SimplicityDegree, ThickError> {
    if g.is_abelian() {
        return Err(ThickError::DegenerateAbelian);
    }
    let classes = g.classes();
    let mut out = Vec::new();
    let mut degree = Some(0);
    let mut witness = None;
    for c in 0..classes.count() as u32 {
        if classes.size(c) == 1 {
            continue;
        }
        let radius = class_ball_radius(g, c, cap);
        degree = match (degree, radius) {
            (Some(d), Some(r)) => Some(d.max(r)),
            _ => None,
        };
        if radius.is_none() && witness.is_none() {
            witness = Some(classes.representative(c));
        }
        out.push(ClassDegree {
            representative: classes.representative(c),
            size: classes.size(c),
            radius,
        });
    }
    Ok(SimplicityDegree {
        degree,
        witness,
        classes: out,
    })
}

/// Whether G is simple and nonabelian, via normal closures of each class.
pub fn is_simple_nonabelian(g: &FiniteGroup) -> bool {
    if g.is_abelian() {
        return false;
    }
    let classes = g.classes();
    (1..classes.count() as u32).all(|c| {
        g.normal_subgroup_closure(&SubsetMask::singleton(g, classes.representative(c)))
            .is_full()
    })
}

/// Covering number: the largest over noncentral classes C of the least n with
/// `Cⁿ = G`.
pub fn covering_number(g: &FiniteGroup, cap: usize) -> Result<Option<usize>, ThickError> {
    if !is_simple_nonabelian(g) {
        return Err(ThickError::NotSimpleNonabelian);
    }
    let classes = g.classes();
    let mut worst = 0;
    for c in 0..classes.count() as u32 {
        if classes.size(c) == 1 {
            continue;
        }
        match g.covering_power(&classes.class_mask(g, c), cap)? {
            Some(k) => worst = worst.max(k),
            None => return Ok(None),
        }
    }
    Ok(Some(worst))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spread {
    pub length: usize,
    pub exact: bool,
    pub witness: Vec<u32>,
}

/// Longest sequence (up to `cap`) with every pairwise quotient in `s`.
pub fn spread_length(g: &FiniteGroup, s: &SubsetMask, cap: usize) -> Result<Spread, ThickError> {
    require_symmetric(g, s)?;
    if cap == 0 {
        return Ok(Spread { length: 0, exact: true, witness: vec![] });
    }
    if s.contains(g.identity()) {
        // Repeating one element is allowed.
        return Ok(Spread {
            length: cap,
            exact: true,
            witness: vec![g.identity(); cap],
        });
    }
    let exact = g.order() <= EXACT_LIMIT;
    let witness = quotient_clique(g, s, cap, exact);
    Ok(Spread {
        length: witness.len(),
        exact,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec, NormalSource};

    #[test]
    fn gn_examples() {
        let g = build_group(&GroupSpec::Cyclic(6)).unwrap();
        assert!(gn_set(&g, 0).is_empty());
        assert!(gn_set(&g, 1).is_empty());
        let got: Vec<String> = gn_set(&g, 3).iter().map(|x| g.format(x)).collect();
        assert_eq!(got, ["1", "5"]);
    }

    #[test]
    fn gn_monotone_and_normal() {
        let g = build_group(&GroupSpec::Symmetric(4)).unwrap();
        let mut prev = gn_set(&g, 0);
        for n in 1..6 {
            let cur = gn_set(&g, n);
            assert!(prev.is_subset(&cur));
            assert!(g.is_normal_set(&cur) && g.is_symmetric(&cur));
            assert!(!cur.contains(0));
            prev = cur;
        }
    }

    #[test]
    fn simplicity_degrees() {
        let g = build_group(&GroupSpec::Symmetric(3)).unwrap();
        let d = bounded_simplicity_degree(&g, 10).unwrap();
        assert_eq!(d.degree, None);
        assert_eq!(g.format(d.witness.unwrap()), "(1,2,3)");

        let g = build_group(&GroupSpec::Alternating(5)).unwrap();
        let d = bounded_simplicity_degree(&g, 10).unwrap();
        assert!(matches!(d.degree, Some(k) if k <= 6));

        let g = build_group(&GroupSpec::Cyclic(6)).unwrap();
        assert_eq!(bounded_simplicity_degree(&g, 10).unwrap_err(), ThickError::DegenerateAbelian);
    }

    #[test]
    fn covering_numbers() {
        let g = build_group(&GroupSpec::Alternating(5)).unwrap();
        assert_eq!(covering_number(&g, 10).unwrap(), Some(3));
        let g = build_group(&GroupSpec::Cyclic(5)).unwrap();
        assert_eq!(covering_number(&g, 10).unwrap_err(), ThickError::NotSimpleNonabelian);
        let g = build_group(&GroupSpec::Symmetric(4)).unwrap();
        assert_eq!(covering_number(&g, 10).unwrap_err(), ThickError::NotSimpleNonabelian);

        let psl27 = build_group(&GroupSpec::quotient(
            GroupSpec::SpecialLinear { n: 2, p: 7 },
            NormalSource::Center,
        ))
        .unwrap();
        assert_eq!(psl27.order(), 168);
        let cn = covering_number(&psl27, 10).unwrap().unwrap();
        // Oracle: direct products of each class mask.
        let classes = psl27.classes();
        let mut worst = 0;
        for c in 1..classes.count() as u32 {
            let m = classes.class_mask(&psl27, c);
            let mut acc = m.clone();
            let mut k = 1;
            while !acc.is_full() {
                acc = psl27.product_sets(&acc, &m).unwrap();
                k += 1;
            }
            worst = worst.max(k);
        }
        assert_eq!(cn, worst);
    }

    #[test]
    fn spread_examples() {
        let g = build_group(&GroupSpec::Cyclic(5)).unwrap();
        let all = SubsetMask::singleton(&g, 0).complement();
        assert_eq!(spread_length(&g, &all, 100).unwrap().length, 5);
        assert_eq!(spread_length(&g, &SubsetMask::empty(&g), 100).unwrap().length, 1);
        let s = SubsetMask::from_indices(&g, ["2", "3"].iter().map(|x| g.parse_element(x).unwrap()));
        assert_eq!(spread_length(&g, &s, 100).unwrap().length, 2);
    }

    #[test]
    fn spread_of_gn_counts_center_cosets() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let d = bounded_simplicity_degree(&g, 16).unwrap().degree.unwrap();
        let r = spread_length(&g, &gn_set(&g, d), g.order()).unwrap();
        assert_eq!(r.length, g.order() / g.center().count());
        assert!(r.exact);
    }
}
