use super::{FiniteGroup, SubsetMask};

/// Partition of a group into conjugacy classes.
///
/// Classes are numbered in order of their least element, which is also the
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    class_of: Vec<u32>,
    reps: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl ClassPartition {
    pub(crate) fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        let gens = g.generators();
        for x in 0..n as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            class_of[x as usize] = id;
            // Orbit under conjugation by generators is the full class.
            let mut orbit = vec![x];
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for &s in gens {
                    let z = g.conjugate(y, s);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = id;
                        orbit.push(z);
                    }
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        ClassPartition {
            class_of,
            reps,
            members,
        }
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.class_of[x as usize]
    }

    pub fn representative(&self, class: u32) -> u32 {
        self.reps[class as usize]
    }

    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    pub fn members(&self, class: u32) -> &[u32] {
        &self.members[class as usize]
    }

    pub fn size(&self, class: u32) -> usize {
        self.members[class as usize].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn class_mask(&self, g: &FiniteGroup, class: u32) -> SubsetMask {
        SubsetMask::from_indices(g, self.members(class).iter().copied())
    }

    /// Class containing the inverses of the given class.
    pub fn inverse_class(&self, g: &FiniteGroup, class: u32) -> u32 {
        self.class_of(g.inverse(self.representative(class)))
    }
}

/// Conjugacy classes of `g` (deterministic, least-index representatives).
pub fn conjugacy_classes(g: &FiniteGroup) -> ClassPartition {
    g.classes().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn abelian_classes_are_singletons() {
        let g = build_group(&GroupSpec::Cyclic(6)).unwrap();
        assert_eq!(conjugacy_classes(&g).sizes(), vec![1; 6]);
    }

    #[test]
    fn sym3_classes() {
        let g = build_group(&GroupSpec::Symmetric(3)).unwrap();
        let c = conjugacy_classes(&g);
        let mut sizes = c.sizes();
        assert_eq!(sizes[0], 1);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn class_equations() {
        for spec in [
            GroupSpec::SpecialLinear { n: 2, p: 5 },
            GroupSpec::Alternating(5),
            GroupSpec::Semidirect { n: 2, p: 3 },
            GroupSpec::Symmetric(5),
        ] {
            let g = build_group(&spec).unwrap();
            let c = conjugacy_classes(&g);
            assert_eq!(c.sizes().iter().sum::<usize>(), g.order());
            assert!(c.sizes().iter().all(|s| g.order() % s == 0));
            assert_eq!(c.members(c.class_of(0)), &[0]);
            for class in 0..c.count() as u32 {
                let mask = c.class_mask(&g, class);
                assert!(g.is_normal_set(&mask));
            }
        }
    }

    #[test]
    fn sl25_class_count() {
        // Enumeration oracle: SL(2,5) has 9 classes (orders 1,2,3,4,5,5,6,10,10).
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        assert_eq!(conjugacy_classes(&g).count(), 9);
    }
}
