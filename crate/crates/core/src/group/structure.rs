use serde::Serialize;

use crate::arith::prime_factors;

use super::{FiniteGroup, SubsetMask};

/// Center, derived subgroup and abelianization of a group.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub center: SubsetMask,
    pub derived: SubsetMask,
    pub is_perfect: bool,
    /// Invariant factors d₁ | d₂ | … of G/[G,G]; empty when perfect.
    pub abelianization: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StructureSummary {
    pub order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub is_perfect: bool,
    pub abelianization: Vec<u64>,
    pub class_count: usize,
}

impl StructureReport {
    pub fn summary(&self, g: &FiniteGroup) -> StructureSummary {
        StructureSummary {
            order: g.order(),
            center_order: self.center.count(),
            derived_order: self.derived.count(),
            is_perfect: self.is_perfect,
            abelianization: self.abelianization.clone(),
            class_count: g.classes().count(),
        }
    }
}

impl FiniteGroup {
    /// `{g : gx = xg for all x}`.
    pub fn center(&self) -> SubsetMask {
        let gens = self.generators();
        SubsetMask::from_indices(
            self,
            (0..self.order() as u32).filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z))),
        )
    }

    /// `[G,G]`: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> SubsetMask {
        let gens = self.generators();
        let mut seeds = SubsetMask::empty(self);
        for &a in gens {
            for &b in gens {
                seeds.insert(self.commutator(a, b));
            }
        }
        self.normal_subgroup_closure(&seeds)
    }

    /// The set of all commutators `[a,b]`, built class by class:
    /// `{[a,b] : b ∈ G} = a⁻¹·a^G` and the whole set is normal.
    pub fn commutator_set(&self) -> SubsetMask {
        let classes = self.classes();
        let mut seeds = SubsetMask::empty(self);
        for c in 0..classes.count() as u32 {
            let r = classes.representative(c);
            let rinv = self.inverse(r);
            for &y in classes.members(c) {
                seeds.insert(self.mul(rinv, y));
            }
        }
        self.normal_closure_set(&seeds).expect("same group")
    }

    /// Derived subgroup of an arbitrary subgroup `h`.
    pub fn derived_of_subgroup(&self, h: &SubsetMask) -> SubsetMask {
        let elems = h.to_vec();
        let mut comms = SubsetMask::empty(self);
        for &a in &elems {
            for &b in &elems {
                comms.insert(self.commutator(a, b));
            }
        }
        self.subgroup_closure(&comms)
    }

    /// Length of the derived series of a subgroup, or `None` if it
    /// stabilizes above the trivial group.
    pub fn derived_length(&self, h: &SubsetMask) -> Option<usize> {
        let mut current = h.clone();
        let mut len = 0;
        while current.count() > 1 {
            let next = self.derived_of_subgroup(&current);
            if next == current {
                return None;
            }
            current = next;
            len += 1;
        }
        Some(len)
    }

    /// Invariant factors of the abelian group G/N for a normal subgroup N.
    pub fn abelian_invariants_mod(&self, n: &SubsetMask) -> Vec<u64> {
        let reps = self.coset_representatives(n);
        let mut cosets: Vec<u32> = reps.clone();
        cosets.sort_unstable();
        cosets.dedup();
        let m = cosets.len() as u64;
        if m == 1 {
            return Vec::new();
        }
        // Order of each coset in G/N.
        let orders: Vec<u64> = cosets
            .iter()
            .map(|&x| {
                let mut k = 1u64;
                let mut cur = x;
                while !n.contains(cur) {
                    cur = self.mul(cur, x);
                    k += 1;
                }
                k
            })
            .collect();
        let mut parts_by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for p in prime_factors(m) {
            let mut pk = 1u64;
            let mut prev_exp = 0u32;
            let mut counts = Vec::new();
            let mut p_part = 1u64;
            while m % (p_part * p) == 0 {
                p_part *= p;
            }
            loop {
                pk *= p;
                let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let exp = c.ilog(p);
                counts.push(exp - prev_exp);
                prev_exp = exp;
                if c == p_part {
                    break;
                }
            }
            // counts[k-1] = number of cyclic p-parts of exponent ≥ k.
            let r = counts[0] as usize;
            let mut parts = vec![0u32; r];
            for (k, &cnt) in counts.iter().enumerate() {
                for part in parts.iter_mut().take(cnt as usize) {
                    *part = k as u32 + 1;
                }
            }
            parts_by_prime.push((p, parts));
        }
        let width = parts_by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..width)
            .map(|i| {
                parts_by_prime
                    .iter()
                    .map(|(p, parts)| parts.get(i).map_or(1, |&e| p.pow(e)))
                    .product()
            })
            .collect();
        factors.sort_unstable();
        factors
    }

    pub fn structure_report(&self) -> StructureReport {
        let center = self.center();
        let derived = self.derived_subgroup();
        let is_perfect = derived.is_full();
        let abelianization = self.abelian_invariants_mod(&derived);
        StructureReport {
            center,
            derived,
            is_perfect,
            abelianization,
        }
    }

    /// Least n with (commutators)ⁿ ⊇ [G,G]; 0 when [G,G] is trivial.
    pub fn commutator_width(&self) -> usize {
        let derived = self.derived_subgroup();
        if derived.count() == 1 {
            return 0;
        }
        let comms = self.commutator_set();
        let mut acc = comms.clone();
        let mut n = 1;
        while !derived.is_subset(&acc) {
            acc = self.product_normal(&acc, &comms).expect("same group");
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn sl25_structure() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let r = g.structure_report();
        let mut center: Vec<String> = r.center.iter().map(|x| g.format(x)).collect();
        center.sort();
        assert_eq!(center, vec!["1,0,0,1", "4,0,0,4"]);
        assert!(r.is_perfect);
        assert!(r.abelianization.is_empty());
    }

    #[test]
    fn abelian_structure() {
        let g = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let r = g.structure_report();
        assert!(r.center.is_full());
        assert_eq!(r.derived.count(), 1);
        assert_eq!(r.abelianization, vec![6]);
        let g = build_group(&GroupSpec::Abelian(vec![4, 2])).unwrap();
        assert_eq!(g.structure_report().abelianization, vec![2, 4]);
        let g = build_group(&GroupSpec::Abelian(vec![2, 3, 4, 6])).unwrap();
        assert_eq!(g.structure_report().abelianization, vec![2, 6, 12]);
    }

    #[test]
    fn sym3_derived_is_alt3() {
        let g = build_group(&GroupSpec::Symmetric(3)).unwrap();
        let r = g.structure_report();
        let mut derived: Vec<String> = r.derived.iter().map(|x| g.format(x)).collect();
        derived.sort();
        assert_eq!(derived, vec!["()", "(1,2,3)", "(1,3,2)"]);
        assert_eq!(r.abelianization, vec![2]);
        assert!(g.is_normal_set(&r.derived));
    }

    #[test]
    fn sym4_and_semidirect() {
        let g = build_group(&GroupSpec::Symmetric(4)).unwrap();
        let r = g.structure_report();
        assert_eq!(r.derived.count(), 12);
        assert_eq!(r.abelianization, vec![2]);
        let g = build_group(&GroupSpec::Semidirect { n: 2, p: 5 }).unwrap();
        assert!(g.structure_report().is_perfect);
    }

    #[test]
    fn commutator_widths() {
        // Oracle: direct enumeration of all |G|² commutators.
        for (spec, expected) in [
            (GroupSpec::Cyclic(6), 0),
            (GroupSpec::Alternating(5), 1),
            (GroupSpec::SpecialLinear { n: 2, p: 5 }, 1),
            (GroupSpec::Symmetric(4), 1),
        ] {
            let g = build_group(&spec).unwrap();
            let n = g.order() as u32;
            let mut brute = crate::group::SubsetMask::empty(&g);
            for a in 0..n {
                for b in 0..n {
                    brute.insert(g.mul_by_codes(
                        g.mul_by_codes(g.inv_by_codes(a), g.inv_by_codes(b)),
                        g.mul_by_codes(a, b),
                    ));
                }
            }
            assert_eq!(brute, g.commutator_set(), "{spec}");
            assert_eq!(g.commutator_width(), expected, "{spec}");
        }
    }

    #[test]
    fn borel_derived_length() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let t = g.parse_element("2,0,0,3").unwrap();
        let u = g.parse_element("1,1,0,1").unwrap();
        let borel = g.subgroup_generated(&[t, u]);
        assert_eq!(borel.count(), 20);
        assert_eq!(g.derived_length(&borel), Some(2));
        assert_eq!(g.derived_length(&crate::group::SubsetMask::full(&g)), None);
    }
}
