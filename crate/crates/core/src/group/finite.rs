use std::collections::hash_map::{DefaultHasher, Entry};
use std::collections::HashMap;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use super::classes::ClassPartition;
use super::repr::Repr;
use super::{CocycleSource, GroupError, GroupSpec, NormalSource, SubsetMask};

/// Default cap on the number of elements a group may have.
pub const DEFAULT_ORDER_CAP: usize = 2_000_000;

/// Groups up to this order get a full Cayley table.
pub const TABLE_LIMIT: usize = 4096;

/// An enumerated finite group.
///
/// Elements are numbered `0..order` breadth-first from the identity, trying
/// the canonical generators in order, so index 0 is always the identity and
/// the numbering is a pure function of the spec. Products go through a
/// Cayley table for small groups and through the breadth-first tree
/// (right multiplication by generators) otherwise.
#[derive(Debug)]
pub struct FiniteGroup {
    spec: GroupSpec,
    repr: Repr,
    code_len: usize,
    codes: Vec<u32>,
    lookup: HashMap<Box<[u32]>, u32>,
    generators: Vec<u32>,
    right_gen: Vec<Vec<u32>>,
    parent: Vec<(u32, u8)>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
    fingerprint: u64,
    classes: OnceLock<ClassPartition>,
}

/// Builds a group with the default order cap.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::build_with_cap(spec, DEFAULT_ORDER_CAP)
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self, GroupError> {
        Self::build_with_cap(spec, DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(spec: &GroupSpec, cap: usize) -> Result<Self, GroupError> {
        spec.validate()?;
        if let Some(order) = spec.expected_order() {
            if order > cap as u128 {
                return Err(GroupError::OrderCapExceeded { cap });
            }
        }
        let repr = match spec {
            GroupSpec::Cyclic(k) => Repr::Cyclic(*k),
            GroupSpec::Abelian(ds) => Repr::Abelian(ds.clone()),
            GroupSpec::Symmetric(n) => Repr::Perm {
                n: *n as usize,
                even_only: false,
            },
            GroupSpec::Alternating(n) => Repr::Perm {
                n: *n as usize,
                even_only: true,
            },
            GroupSpec::SpecialLinear { n, p } => Repr::Matrix {
                n: *n as usize,
                p: *p,
            },
            GroupSpec::Semidirect { n, p } => Repr::Affine {
                n: *n as usize,
                p: *p,
            },
            GroupSpec::CocycleExt { p, base, cocycle } => {
                let base = Arc::new(Self::build_with_cap(base, cap)?);
                let table = match cocycle {
                    CocycleSource::Table(t) => t.clone(),
                    CocycleSource::File(path) => {
                        let (fp, table) = crate::ext::read_cocycle_file(path, &base)?;
                        if fp != *p {
                            return Err(GroupError::InvalidParameters(format!(
                                "cocycle file is over Z/{fp}, spec asks for Z/{p}"
                            )));
                        }
                        table
                    }
                };
                let n = base.order();
                if table.len() != n * n {
                    return Err(GroupError::InvalidParameters(format!(
                        "cocycle table has {} entries, expected {}",
                        table.len(),
                        n * n
                    )));
                }
                if table.iter().any(|&v| v >= *p) {
                    return Err(GroupError::InvalidParameters("cocycle value out of range".into()));
                }
                Repr::Extension {
                    p: *p,
                    base,
                    cocycle: Arc::new(table),
                }
            }
            GroupSpec::Quotient { parent, normal } => {
                let parent = Arc::new(Self::build_with_cap(parent, cap)?);
                let mask = match normal {
                    NormalSource::Indices(idx) => {
                        if idx.iter().any(|&i| i as usize >= parent.order()) {
                            return Err(GroupError::InvalidParameters(
                                "normal subgroup index out of range".into(),
                            ));
                        }
                        SubsetMask::from_indices(&parent, idx.iter().copied())
                    }
                    NormalSource::File(path) => parent.read_subset_file(path)?,
                    NormalSource::Center => parent.center(),
                    NormalSource::Derived => parent.derived_subgroup(),
                };
                if !parent.is_subgroup(&mask) || !parent.is_normal_set(&mask) {
                    return Err(GroupError::NotNormalSubgroup);
                }
                let coset_rep = parent.coset_representatives(&mask);
                Repr::Quotient {
                    parent,
                    coset_rep: Arc::new(coset_rep),
                }
            }
            GroupSpec::Product(a, b) => Repr::Product(
                Arc::new(Self::build_with_cap(a, cap)?),
                Arc::new(Self::build_with_cap(b, cap)?),
            ),
        };
        Self::enumerate(spec.clone(), repr, cap)
    }

    fn enumerate(spec: GroupSpec, repr: Repr, cap: usize) -> Result<Self, GroupError> {
        let code_len = repr.code_len();
        let identity = repr.identity();
        let mut gen_codes: Vec<Vec<u32>> = Vec::new();
        for g in repr.generators() {
            if g != identity && !gen_codes.contains(&g) {
                gen_codes.push(g);
            }
        }
        assert!(gen_codes.len() < u8::MAX as usize, "too many generators");

        let mut codes = identity.clone();
        let mut lookup: HashMap<Box<[u32]>, u32> = HashMap::new();
        lookup.insert(identity.into_boxed_slice(), 0);
        let mut parent = vec![(0u32, u8::MAX)];
        let mut right_gen: Vec<Vec<u32>> = vec![Vec::new(); gen_codes.len()];
        let mut count = 1usize;
        let mut i = 0usize;
        while i < count {
            for (k, g) in gen_codes.iter().enumerate() {
                let prod = repr.mul(&codes[i * code_len..(i + 1) * code_len], g);
                let idx = match lookup.entry(prod.into_boxed_slice()) {
                    Entry::Occupied(e) => *e.get(),
                    Entry::Vacant(e) => {
                        if count >= cap {
                            return Err(GroupError::OrderCapExceeded { cap });
                        }
                        codes.extend_from_slice(e.key());
                        parent.push((i as u32, k as u8));
                        e.insert(count as u32);
                        count += 1;
                        (count - 1) as u32
                    }
                };
                right_gen[k].push(idx);
            }
            i += 1;
        }

        let generators: Vec<u32> = gen_codes.iter().map(|g| lookup[g.as_slice()]).collect();
        let mut hasher = DefaultHasher::new();
        format!("{spec:?}").hash(&mut hasher);
        count.hash(&mut hasher);
        let mut group = FiniteGroup {
            spec,
            repr,
            code_len,
            codes,
            lookup,
            generators,
            right_gen,
            parent,
            inverse: Vec::new(),
            table: None,
            fingerprint: hasher.finish(),
            classes: OnceLock::new(),
        };
        group.inverse = (0..count as u32)
            .map(|x| {
                let inv = group.repr.inv(group.code(x));
                group.lookup[inv.as_slice()]
            })
            .collect();
        if count <= TABLE_LIMIT {
            group.table = Some(group.cayley_table());
        }
        Ok(group)
    }

    fn cayley_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            let row = &mut table[i * n..(i + 1) * n];
            row[0] = i as u32;
            for j in 1..n {
                let (par, k) = self.parent[j];
                row[j] = self.right_gen[k as usize][row[par as usize] as usize];
            }
        }
        table
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Indices of the canonical generators, in enumeration order.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Identifies the group for subset compatibility checks; equal for two
    /// builds of the same spec.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn code(&self, x: u32) -> &[u32] {
        let x = x as usize;
        &self.codes[x * self.code_len..(x + 1) * self.code_len]
    }

    pub fn index_of_code(&self, code: &[u32]) -> Option<u32> {
        self.lookup.get(code).copied()
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if let Some(t) = &self.table {
            return t[x as usize * self.order() + y as usize];
        }
        let mut path = Vec::new();
        let mut cur = y;
        while cur != 0 {
            let (par, k) = self.parent[cur as usize];
            path.push(k);
            cur = par;
        }
        let mut acc = x;
        for &k in path.iter().rev() {
            acc = self.right_gen[k as usize][acc as usize];
        }
        acc
    }

    /// Product computed from the concrete element forms, bypassing the
    /// table and the enumeration tree. Used to replay witnesses.
    pub fn mul_by_codes(&self, x: u32, y: u32) -> u32 {
        let prod = self.repr.mul(self.code(x), self.code(y));
        self.lookup[prod.as_slice()]
    }

    /// Inverse computed from the concrete element form.
    pub fn inv_by_codes(&self, x: u32) -> u32 {
        self.lookup[self.repr.inv(self.code(x)).as_slice()]
    }

    pub fn inverse(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    /// `x^g = g⁻¹ x g`.
    pub fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let a = self.mul(self.inverse(x), self.inverse(y));
        self.mul(self.mul(a, x), y)
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let mut acc = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> usize {
        let mut k = 1;
        let mut cur = x;
        while cur != 0 {
            cur = self.mul(cur, x);
            k += 1;
        }
        k
    }

    /// Right multiplication by the `k`-th generator as a lookup.
    pub fn right_by_generator(&self, x: u32, k: usize) -> u32 {
        self.right_gen[k][x as usize]
    }

    /// Parent and generator slot of `x` in the enumeration tree
    /// (`None` for the identity).
    pub fn tree_parent(&self, x: u32) -> Option<(u32, usize)> {
        if x == 0 {
            None
        } else {
            let (p, k) = self.parent[x as usize];
            Some((p, k as usize))
        }
    }

    pub fn format(&self, x: u32) -> String {
        self.repr.format(self.code(x))
    }

    pub fn parse_element(&self, text: &str) -> Result<u32, GroupError> {
        let code = self.repr.parse(text)?;
        self.lookup
            .get(code.as_slice())
            .copied()
            .ok_or_else(|| GroupError::BadElement {
                text: text.trim().to_string(),
                reason: format!("not an element of {}", self.spec),
            })
    }

    /// Reads a subset file: one element form per line; blank lines and
    /// lines starting with `#` are skipped.
    pub fn read_subset_file(&self, path: &Path) -> Result<SubsetMask, GroupError> {
        let text = fs::read_to_string(path).map_err(|e| GroupError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        self.parse_subset_lines(&text)
    }

    pub fn parse_subset_lines(&self, text: &str) -> Result<SubsetMask, GroupError> {
        let mut mask = SubsetMask::empty(self);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            mask.insert(self.parse_element(line)?);
        }
        Ok(mask)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, computed once and cached.
    pub fn classes(&self) -> &ClassPartition {
        self.classes.get_or_init(|| ClassPartition::compute(self))
    }

    pub(crate) fn factors(&self) -> Option<(&Arc<FiniteGroup>, &Arc<FiniteGroup>)> {
        match &self.repr {
            Repr::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub(crate) fn quotient_parts(&self) -> Option<(&Arc<FiniteGroup>, &Arc<Vec<u32>>)> {
        match &self.repr {
            Repr::Quotient { parent, coset_rep } => Some((parent, coset_rep)),
            _ => None,
        }
    }

    pub(crate) fn extension_parts(&self) -> Option<(u32, &Arc<FiniteGroup>, &Arc<Vec<u32>>)> {
        match &self.repr {
            Repr::Extension { p, base, cocycle } => Some((*p, base, cocycle)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_axioms(g: &FiniteGroup, samples: usize) {
        let n = g.order() as u32;
        for x in 0..n {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
            assert_eq!(g.mul(x, g.inverse(x)), 0);
            assert_eq!(g.format(x).len() > 0, true);
            assert_eq!(g.parse_element(&g.format(x)).unwrap(), x);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            assert_eq!(g.mul(a, b), g.mul_by_codes(a, b));
        }
    }

    #[test]
    fn orders_match_closed_forms() {
        let cases = [
            (GroupSpec::Cyclic(6), 6),
            (GroupSpec::Abelian(vec![4, 2]), 8),
            (GroupSpec::Symmetric(4), 24),
            (GroupSpec::Alternating(5), 60),
            (GroupSpec::SpecialLinear { n: 2, p: 5 }, 120),
            (GroupSpec::Semidirect { n: 2, p: 5 }, 3000),
            (GroupSpec::product(GroupSpec::Alternating(5), GroupSpec::Symmetric(3)), 360),
            (GroupSpec::Symmetric(1), 1),
            (GroupSpec::Alternating(2), 1),
            (GroupSpec::SpecialLinear { n: 1, p: 7 }, 1),
        ];
        for (spec, order) in cases {
            let g = build_group(&spec).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            check_axioms(&g, 10_000);
        }
    }

    #[test]
    fn large_group_uses_tree_products() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 3, p: 3 }).unwrap();
        assert_eq!(g.order(), 5616);
        assert!(g.table.is_none());
        check_axioms(&g, 10_000);
    }

    #[test]
    fn quotient_by_center() {
        let spec = GroupSpec::quotient(GroupSpec::SpecialLinear { n: 2, p: 5 }, NormalSource::Center);
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 60);
        check_axioms(&g, 2000);
    }

    #[test]
    fn non_normal_quotient_rejected() {
        let sym3 = build_group(&GroupSpec::Symmetric(3)).unwrap();
        let t = sym3.parse_element("(1,2)").unwrap();
        let spec = GroupSpec::quotient(GroupSpec::Symmetric(3), NormalSource::Indices(vec![0, t]));
        assert_eq!(build_group(&spec).unwrap_err(), GroupError::NotNormalSubgroup);
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::build_with_cap(&GroupSpec::Symmetric(10), DEFAULT_ORDER_CAP).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { cap: DEFAULT_ORDER_CAP });
        let spec = GroupSpec::quotient(GroupSpec::Symmetric(4), NormalSource::Derived);
        let err = FiniteGroup::build_with_cap(&spec, 10).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { cap: 10 });
    }

    #[test]
    fn deterministic_rebuild() {
        let spec = GroupSpec::Semidirect { n: 2, p: 3 };
        let a = build_group(&spec).unwrap();
        let b = build_group(&spec).unwrap();
        assert_eq!(a.codes, b.codes);
        assert_eq!(a.table, b.table);
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn element_forms() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let x = g.parse_element("1,1,0,1").unwrap();
        assert_eq!(g.format(x), "1,1,0,1");
        assert!(g.parse_element("1,1,1,1").is_err());
        let prod = GroupSpec::product(
            GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Symmetric(3)),
            GroupSpec::Cyclic(3),
        );
        let g = build_group(&prod).unwrap();
        for x in 0..g.order() as u32 {
            assert_eq!(g.parse_element(&g.format(x)).unwrap(), x);
        }
        let s = g.format(g.generators()[0]);
        assert!(s.starts_with('['), "{s}");
    }
}
