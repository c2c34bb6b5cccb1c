//! Set calculus on a finite group: products, powers, balls, closures.

use super::{FiniteGroup, GroupError, SubsetMask};

impl FiniteGroup {
    fn check(&self, m: &SubsetMask) -> Result<(), GroupError> {
        if m.belongs_to(self) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    /// `A·B = {ab : a ∈ A, b ∈ B}`.
    pub fn product_sets(&self, a: &SubsetMask, b: &SubsetMask) -> Result<SubsetMask, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.product_unchecked(a, b))
    }

    pub(crate) fn product_unchecked(&self, a: &SubsetMask, b: &SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::empty(self);
        if a.is_empty() || b.is_empty() {
            return out;
        }
        let bs: Vec<u32> = b.to_vec();
        let n = self.order();
        let mut filled = 0usize;
        for x in a.iter() {
            for &y in &bs {
                out.insert(self.mul(x, y));
            }
            // A full result cannot grow; skip the remaining rows.
            filled += 1;
            if filled % 16 == 0 && out.count() == n {
                break;
            }
        }
        out
    }

    /// `Aⁿ`, with `A⁰ = {e}`.
    pub fn power_set(&self, a: &SubsetMask, n: usize) -> Result<SubsetMask, GroupError> {
        self.check(a)?;
        let mut acc = SubsetMask::singleton(self, 0);
        for _ in 0..n {
            acc = self.product_unchecked(&acc, a);
        }
        Ok(acc)
    }

    /// `A^{≤n} = ⋃_{i ≤ n} Aⁱ`.
    pub fn ball(&self, a: &SubsetMask, n: usize) -> Result<SubsetMask, GroupError> {
        self.check(a)?;
        let mut acc = SubsetMask::singleton(self, 0);
        for _ in 0..n {
            let next = self.product_unchecked(&acc, a).union(&acc);
            if next == acc {
                break;
            }
            acc = next;
        }
        Ok(acc)
    }

    pub fn inverse_set(&self, a: &SubsetMask) -> SubsetMask {
        SubsetMask::from_indices(self, a.iter().map(|x| self.inverse(x)))
    }

    pub fn is_symmetric(&self, a: &SubsetMask) -> bool {
        a.iter().all(|x| a.contains(self.inverse(x)))
    }

    pub fn symmetrize(&self, a: &SubsetMask) -> SubsetMask {
        a.union(&self.inverse_set(a))
    }

    /// `X^G`: the smallest normal subset containing `X`.
    pub fn normal_closure_set(&self, s: &SubsetMask) -> Result<SubsetMask, GroupError> {
        self.check(s)?;
        let classes = self.classes();
        let mut out = SubsetMask::empty(self);
        for x in s.iter() {
            if !out.contains(x) {
                out.union_with(&classes.class_mask(self, classes.class_of(x)));
            }
        }
        Ok(out)
    }

    /// `X^g = X` for every generator (hence every element) g.
    pub fn is_normal_set(&self, s: &SubsetMask) -> bool {
        s.iter().all(|x| {
            self.generators()
                .iter()
                .all(|&g| s.contains(self.conjugate(x, g)))
        })
    }

    pub fn is_subgroup(&self, s: &SubsetMask) -> bool {
        if !s.contains(0) {
            return false;
        }
        let elems = s.to_vec();
        elems.iter().all(|&x| s.contains(self.inverse(x)))
            && elems
                .iter()
                .all(|&x| elems.iter().all(|&y| s.contains(self.mul(x, y))))
    }

    /// Subgroup generated by `gens` (breadth-first closure).
    pub fn subgroup_generated(&self, gens: &[u32]) -> SubsetMask {
        let mut out = SubsetMask::singleton(self, 0);
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !out.contains(y) {
                    out.insert(y);
                    queue.push(y);
                }
            }
        }
        out
    }

    /// Subgroup generated by a subset, grown from a small generating list.
    pub fn subgroup_closure(&self, s: &SubsetMask) -> SubsetMask {
        let mut gens: Vec<u32> = Vec::new();
        let mut current = SubsetMask::singleton(self, 0);
        for x in s.iter() {
            if !current.contains(x) {
                gens.push(x);
                current = self.subgroup_generated(&gens);
            }
        }
        current
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_subgroup_closure(&self, s: &SubsetMask) -> SubsetMask {
        let mut gens: Vec<u32> = Vec::new();
        let mut current = SubsetMask::singleton(self, 0);
        let mut pending: Vec<u32> = s.to_vec();
        while let Some(x) = pending.pop() {
            if current.contains(x) {
                continue;
            }
            gens.push(x);
            current = self.subgroup_generated(&gens);
            for &g in self.generators() {
                for &h in &gens {
                    let c = self.conjugate(h, g);
                    if !current.contains(c) {
                        pending.push(c);
                    }
                }
            }
        }
        current
    }

    /// For a normal subgroup `n`, maps each element to the least index in
    /// its coset.
    pub fn coset_representatives(&self, n: &SubsetMask) -> Vec<u32> {
        let mut rep = vec![u32::MAX; self.order()];
        let members = n.to_vec();
        for g in 0..self.order() as u32 {
            if rep[g as usize] == u32::MAX {
                for &k in &members {
                    rep[self.mul(g, k) as usize] = g;
                }
            }
        }
        rep
    }

    /// Product of two normal subsets, evaluated one class at a time:
    /// `K·B` is the normal closure of `r·B` for any representative r of K.
    pub fn product_normal(&self, a: &SubsetMask, b: &SubsetMask) -> Result<SubsetMask, GroupError> {
        self.check(a)?;
        self.check(b)?;
        let classes = self.classes();
        let bs = b.to_vec();
        let mut hit = vec![false; classes.count()];
        let mut seen = vec![false; classes.count()];
        for x in a.iter() {
            let c = classes.class_of(x) as usize;
            if seen[c] {
                continue;
            }
            seen[c] = true;
            for &y in &bs {
                hit[classes.class_of(self.mul(x, y)) as usize] = true;
            }
        }
        let mut out = SubsetMask::empty(self);
        for (c, &h) in hit.iter().enumerate() {
            if h {
                out.union_with(&classes.class_mask(self, c as u32));
            }
        }
        Ok(out)
    }

    /// Least k ≤ cap with `Aᵏ = G`, iterating exact powers. Stops early once
    /// a power repeats, since the sequence is then periodic.
    pub fn covering_power(&self, a: &SubsetMask, cap: usize) -> Result<Option<usize>, GroupError> {
        self.check(a)?;
        if a.is_empty() {
            return Ok(None);
        }
        let normal = self.is_normal_set(a);
        let mut seen = std::collections::HashSet::new();
        let mut acc = a.clone();
        for k in 1..=cap {
            if acc.is_full() {
                return Ok(Some(k));
            }
            if !seen.insert(acc.clone()) {
                return Ok(None);
            }
            acc = if normal {
                self.product_normal(&acc, a)?
            } else {
                self.product_unchecked(&acc, a)
            };
        }
        Ok(None)
    }
}
