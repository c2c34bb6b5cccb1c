use std::sync::Arc;

use crate::arith::prime_factors;

use super::{FiniteGroup, GroupError, GroupSpec, SubsetMask};

/// A homomorphism between two built groups, stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: (u64, usize),
    target: (u64, usize),
    images: Vec<u32>,
}

impl Homomorphism {
    /// Extends generator images along the enumeration tree of `src` and checks
    /// that the result respects every generator relation.
    pub fn from_generator_images(
        src: &FiniteGroup,
        dst: &FiniteGroup,
        gen_images: &[u32],
    ) -> Result<Self, GroupError> {
        if gen_images.len() != src.generators().len() {
            return Err(GroupError::InvalidParameters(format!(
                "expected {} generator images, got {}",
                src.generators().len(),
                gen_images.len()
            )));
        }
        let mut images = vec![0u32; src.order()];
        for x in 1..src.order() as u32 {
            let (parent, k) = src.tree_parent(x).expect("non-identity has a parent");
            images[x as usize] = dst.mul(images[parent as usize], gen_images[k]);
        }
        let hom = Homomorphism {
            source: (src.fingerprint(), src.order()),
            target: (dst.fingerprint(), dst.order()),
            images,
        };
        for x in 0..src.order() as u32 {
            for (k, &g) in gen_images.iter().enumerate() {
                let y = src.right_by_generator(x, k);
                if hom.images[y as usize] != dst.mul(hom.images[x as usize], g) {
                    return Err(GroupError::InvalidParameters(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(hom)
    }

    pub(crate) fn from_table(src: &FiniteGroup, dst: &FiniteGroup, images: Vec<u32>) -> Self {
        debug_assert_eq!(images.len(), src.order());
        Homomorphism {
            source: (src.fingerprint(), src.order()),
            target: (dst.fingerprint(), dst.order()),
            images,
        }
    }

    /// Canonical projection from the parent of a quotient group.
    pub fn quotient_projection(parent: &FiniteGroup, quotient: &FiniteGroup) -> Result<Self, GroupError> {
        let (qp, reps) = quotient.quotient_parts().ok_or_else(|| {
            GroupError::InvalidParameters("target is not a quotient group".into())
        })?;
        if qp.fingerprint() != parent.fingerprint() {
            return Err(GroupError::GroupMismatch);
        }
        let images = (0..parent.order())
            .map(|x| {
                quotient
                    .index_of_code(&[reps[x]])
                    .expect("coset representative is enumerated")
            })
            .collect();
        Ok(Self::from_table(parent, quotient, images))
    }

    /// Projection of a direct product onto its first (`0`) or second factor.
    pub fn product_projection(
        product: &FiniteGroup,
        side: usize,
    ) -> Result<(Self, Arc<FiniteGroup>), GroupError> {
        let (a, b) = product.factors().ok_or_else(|| {
            GroupError::InvalidParameters("source is not a direct product".into())
        })?;
        let factor = Arc::clone(if side == 0 { a } else { b });
        let images = (0..product.order() as u32)
            .map(|x| product.code(x)[side.min(1)])
            .collect();
        Ok((Self::from_table(product, &factor, images), factor))
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image_set(&self, dst: &FiniteGroup, a: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(dst.fingerprint(), self.target.0);
        SubsetMask::from_indices(dst, a.iter().map(|x| self.apply(x)))
    }

    pub fn preimage(&self, src: &FiniteGroup, b: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(src.fingerprint(), self.source.0);
        SubsetMask::from_indices(
            src,
            (0..self.images.len() as u32).filter(|&x| b.contains(self.apply(x))),
        )
    }

    pub fn kernel(&self, src: &FiniteGroup) -> SubsetMask {
        SubsetMask::from_indices(
            src,
            (0..self.images.len() as u32).filter(|&x| self.apply(x) == 0),
        )
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.1];
        for &y in &self.images {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Checks `f(xy) = f(x)f(y)` on all pairs.
    pub fn is_homomorphism(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        let n = src.order() as u32;
        (0..n).all(|x| {
            (0..n).all(|y| self.apply(src.mul(x, y)) == dst.mul(self.apply(x), self.apply(y)))
        })
    }
}

/// A surjection of a nontrivial finite abelian group onto `Z/pZ`, for the
/// least prime `p` dividing its order.
///
/// The kernel is a maximal subgroup containing `pA`, grown one generator at a
/// time until the last step that enlarges it.
pub fn surject_onto_prime_cyclic(a: &FiniteGroup) -> Result<(u32, FiniteGroup, Homomorphism), GroupError> {
    if !a.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    if a.order() == 1 {
        return Err(GroupError::TrivialGroup);
    }
    let p = prime_factors(a.order() as u64)[0] as u32;
    let pa = SubsetMask::from_indices(a, (0..a.order() as u32).map(|x| a.pow(x, p as u64)));
    let mut span = pa.clone();
    let mut before_last = span.clone();
    let mut last = None;
    for &g in a.generators() {
        if !span.contains(g) {
            before_last = span.clone();
            let mut seeds = span.to_vec();
            seeds.push(g);
            span = a.subgroup_generated(&seeds);
            last = Some(g);
        }
    }
    let g = last.expect("A/pA is nontrivial");
    let target = FiniteGroup::build(&GroupSpec::Cyclic(p))?;
    let mut images = vec![u32::MAX; a.order()];
    let mut shift = 0u32;
    for k in 0..p {
        let label = target.parse_element(&k.to_string())?;
        for h in before_last.iter() {
            images[a.mul(shift, h) as usize] = label;
        }
        shift = a.mul(shift, g);
    }
    debug_assert!(images.iter().all(|&x| x != u32::MAX));
    let hom = Homomorphism::from_table(a, &target, images);
    Ok((p, target, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn prime_cyclic_surjections() {
        let g = build_group(&GroupSpec::Cyclic(5)).unwrap();
        let (p, t, f) = surject_onto_prime_cyclic(&g).unwrap();
        assert_eq!(p, 5);
        for x in 0..5 {
            assert_eq!(t.format(f.apply(x)), g.format(x));
        }

        let g = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let (p, t, f) = surject_onto_prime_cyclic(&g).unwrap();
        assert_eq!(p, 2);
        for x in 0..6 {
            let v: u32 = g.format(x).parse().unwrap();
            assert_eq!(t.format(f.apply(x)), (v % 2).to_string());
        }
        assert!(f.is_homomorphism(&g, &t));

        let g = build_group(&GroupSpec::Abelian(vec![4, 2])).unwrap();
        let (p, t, f) = surject_onto_prime_cyclic(&g).unwrap();
        assert_eq!(p, 2);
        assert!(f.is_homomorphism(&g, &t) && f.is_surjective());
        assert_eq!(f.kernel(&g).count(), 4);
    }

    #[test]
    fn surjection_errors() {
        let g = build_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(surject_onto_prime_cyclic(&g).unwrap_err(), GroupError::NotAbelian);
        let g = build_group(&GroupSpec::Cyclic(1)).unwrap();
        assert_eq!(surject_onto_prime_cyclic(&g).unwrap_err(), GroupError::TrivialGroup);
    }

    #[test]
    fn generator_images_and_projections() {
        let c12 = build_group(&GroupSpec::Cyclic(12)).unwrap();
        let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let one = c6.parse_element("1").unwrap();
        let f = Homomorphism::from_generator_images(&c12, &c6, &[one]).unwrap();
        assert!(f.is_surjective() && f.is_homomorphism(&c12, &c6));
        assert_eq!(f.kernel(&c12).count(), 2);
        let c5 = build_group(&GroupSpec::Cyclic(5)).unwrap();
        let bad = c5.parse_element("1").unwrap();
        assert!(Homomorphism::from_generator_images(&c12, &c5, &[bad]).is_err());

        let sl = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let psl = build_group(&GroupSpec::quotient(
            GroupSpec::SpecialLinear { n: 2, p: 5 },
            crate::group::NormalSource::Center,
        ))
        .unwrap();
        let q = Homomorphism::quotient_projection(&sl, &psl).unwrap();
        assert!(q.is_surjective() && q.is_homomorphism(&sl, &psl));
        assert_eq!(q.kernel(&sl).count(), 2);

        let prod = build_group(&GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Symmetric(3))).unwrap();
        let (pr, s3) = Homomorphism::product_projection(&prod, 1).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(pr.is_homomorphism(&prod, &s3));
    }
}
