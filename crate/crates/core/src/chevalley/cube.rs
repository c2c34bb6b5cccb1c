use serde::Serialize;

use super::{is_regular, ChevalleyError, SlMatrix};
use crate::group::{FiniteGroup, GroupSpec, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCube {
    pub class_size: usize,
    /// `C² ⊇ G∖Z(G)`.
    pub square_covers_noncentral: bool,
    /// `C³ = G`.
    pub cube_is_group: bool,
    pub covers: bool,
    pub min_power: Option<usize>,
}

/// Powers of the class `C = t^G` of a regular diagonal t.
pub fn class_cube(group: &FiniteGroup, t: &SlMatrix) -> Result<ClassCube, ChevalleyError> {
    match group.spec() {
        GroupSpec::SpecialLinear { n, p } if *n as usize == t.n() && *p == t.p() => {}
        other => {
            return Err(ChevalleyError::NotSpecialLinear(format!("group {other} does not match t")));
        }
    }
    if !is_regular(t)? {
        return Err(ChevalleyError::NotRegular);
    }
    let idx = group
        .index_of_code(t.entries())
        .ok_or_else(|| ChevalleyError::NotSpecialLinear(t.to_string()))?;
    let classes = group.classes();
    let c = classes.class_mask(group, classes.class_of(idx));
    let c2 = group.product_normal(&c, &c)?;
    let c3 = group.product_normal(&c2, &c)?;
    let center = group.center();
    let noncentral = SubsetMask::full(group).difference(&center);
    let square_covers_noncentral = noncentral.is_subset(&c2);
    let cube_is_group = c3.is_full();
    let min_power = group.covering_power(&c, 64)?;
    Ok(ClassCube {
        class_size: c.count(),
        square_covers_noncentral,
        cube_is_group,
        covers: square_covers_noncentral && cube_is_group,
        min_power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn cube_examples() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let t = SlMatrix::diagonal(5, &[2, 3]).unwrap();
        let r = class_cube(&g, &t).unwrap();
        assert!(r.covers);
        assert!(r.min_power.unwrap() <= 3);
        assert_eq!(
            class_cube(&g, &SlMatrix::identity(2, 5)).unwrap_err(),
            ChevalleyError::NotRegular
        );

        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 7 }).unwrap();
        let t = SlMatrix::diagonal(7, &[3, 5]).unwrap();
        let r = class_cube(&g, &t).unwrap();
        assert!(r.covers && r.min_power.unwrap() <= 3);
    }

    #[test]
    fn cube_against_direct_products() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let t = SlMatrix::diagonal(5, &[2, 3]).unwrap();
        let idx = g.index_of_code(t.entries()).unwrap();
        let c = g.normal_closure_set(&SubsetMask::singleton(&g, idx)).unwrap();
        let c2 = g.product_sets(&c, &c).unwrap();
        let c3 = g.product_sets(&c2, &c).unwrap();
        let r = class_cube(&g, &t).unwrap();
        assert_eq!(r.cube_is_group, c3.is_full());
        assert_eq!(r.class_size, c.count());
    }
}
