//! Central extensions of a finite group by Z/p through 2-cocycles.

mod identities;
mod iwasawa;

use std::path::Path;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::group::{build_group, CocycleSource, FiniteGroup, GroupError, GroupSpec, SubsetMask};

pub use identities::{club_identity_check, semidirect_commutator_check, IdentityCheck};
pub use iwasawa::{iwasawa_certificate, IwasawaCertificate, Premise};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtError {
    #[error("cocycle table has {got} entries, expected {expected}")]
    TableIncomplete { expected: usize, got: usize },
    #[error("cocycle value {0} is not reduced mod p")]
    ValueOutOfRange(u32),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    InvalidCocycle(u32, u32, u32),
    #[error("premise violated: {0}")]
    PremiseViolation(String),
    #[error("group is not a cocycle extension")]
    NotExtension,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `h: H×H → Z/p`, indexed by base-group element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub p: u32,
    order: usize,
    values: Vec<u32>,
}

impl Cocycle {
    pub fn new(p: u32, base: &FiniteGroup, values: Vec<u32>) -> Result<Self, ExtError> {
        let order = base.order();
        if values.len() != order * order {
            return Err(ExtError::TableIncomplete {
                expected: order * order,
                got: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= p) {
            return Err(ExtError::ValueOutOfRange(v));
        }
        Ok(Cocycle { p, order, values })
    }

    pub fn zero(p: u32, base: &FiniteGroup) -> Self {
        let order = base.order();
        Cocycle {
            p,
            order,
            values: vec![0; order * order],
        }
    }

    pub fn from_fn(p: u32, base: &FiniteGroup, f: impl Fn(u32, u32) -> u32) -> Self {
        let order = base.order();
        let mut values = Vec::with_capacity(order * order);
        for x in 0..order as u32 {
            for y in 0..order as u32 {
                values.push(f(x, y) % p);
            }
        }
        Cocycle { p, order, values }
    }

    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.values[x as usize * self.order + y as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `im(h)`, sorted.
    pub fn image(&self) -> Vec<u32> {
        let mut seen = vec![false; self.p as usize];
        for &v in &self.values {
            seen[v as usize] = true;
        }
        (0..self.p).filter(|&v| seen[v as usize]).collect()
    }

    /// A valid cocycle: a random coboundary plus a random constant, plus
    /// random multiples of the carry cocycles of cyclic factors of order
    /// divisible by p when the base is Cyc or Ab.
    pub fn random(p: u32, base: &FiniteGroup, rng: &mut impl Rng) -> Self {
        let n = base.order();
        let f: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let c = rng.gen_range(0..p);
        let dims: Vec<u32> = match base.spec() {
            GroupSpec::Cyclic(k) => vec![*k],
            GroupSpec::Abelian(ds) => ds.clone(),
            _ => vec![],
        };
        let carries: Vec<u32> = dims
            .iter()
            .map(|&d| if d % p == 0 { rng.gen_range(0..p) } else { 0 })
            .collect();
        let pp = p as u64;
        Cocycle::from_fn(p, base, |x, y| {
            let xy = base.mul(x, y);
            let mut v = f[x as usize] as u64 + f[y as usize] as u64 + pp - f[xy as usize] as u64 + c as u64;
            if !dims.is_empty() {
                let (cx, cy) = (base.code(x), base.code(y));
                for (k, &d) in dims.iter().enumerate() {
                    if cx[k] + cy[k] >= d {
                        v += carries[k] as u64;
                    }
                }
            }
            (v % pp) as u32
        })
    }
}

/// Reads a cocycle file: a `p <p>` header, then `x y value` lines with x and
/// y in the base group's canonical forms. Every pair must appear once.
pub fn read_cocycle_file(path: &Path, base: &FiniteGroup) -> Result<(u32, Vec<u32>), GroupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_cocycle_text(&text, base)
}

pub fn parse_cocycle_text(text: &str, base: &FiniteGroup) -> Result<(u32, Vec<u32>), GroupError> {
    let bad = |msg: String| GroupError::InvalidParameters(msg);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| bad("empty cocycle file".into()))?;
    let p: u32 = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["p", v] => v.parse().map_err(|_| bad(format!("bad modulus {v:?}")))?,
        _ => return Err(bad(format!("expected `p <prime>` header, found {header:?}"))),
    };
    if !crate::arith::is_prime(p as u64) {
        return Err(bad(format!("{p} is not prime")));
    }
    let n = base.order();
    let mut table: Vec<Option<u32>> = vec![None; n * n];
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [x, y, v] = toks.as_slice() else {
            return Err(bad(format!("line {line_no}: expected `x y value`")));
        };
        let x = base.parse_element(x)?;
        let y = base.parse_element(y)?;
        let v: i64 = v.parse().map_err(|_| bad(format!("line {line_no}: bad value {v:?}")))?;
        let slot = &mut table[x as usize * n + y as usize];
        if slot.is_some() {
            return Err(bad(format!("line {line_no}: pair listed twice")));
        }
        *slot = Some(v.rem_euclid(p as i64) as u32);
    }
    let missing = table.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return Err(bad(format!("cocycle table incomplete: {missing} pairs missing")));
    }
    Ok((p, table.into_iter().map(|v| v.unwrap()).collect()))
}

/// Text form accepted by [`parse_cocycle_text`].
pub fn format_cocycle(base: &FiniteGroup, h: &Cocycle) -> String {
    let mut out = format!("p {}\n", h.p);
    for x in 0..base.order() as u32 {
        for y in 0..base.order() as u32 {
            out.push_str(&format!("{} {} {}\n", base.format(x), base.format(y), h.get(x, y)));
        }
    }
    out
}

/// First triple where `h(x,y) + h(xy,z) = h(y,z) + h(x,yz)` fails.
pub fn cocycle_violation(base: &FiniteGroup, h: &Cocycle) -> Option<(u32, u32, u32)> {
    let n = base.order() as u32;
    let p = h.p as u64;
    for x in 0..n {
        for y in 0..n {
            let xy = base.mul(x, y);
            let left_xy = h.get(x, y) as u64;
            for z in 0..n {
                let l = (left_xy + h.get(xy, z) as u64) % p;
                let r = (h.get(y, z) as u64 + h.get(x, base.mul(y, z)) as u64) % p;
                if l != r {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Whether `(a₁,x₁)(a₂,x₂) = (a₁+a₂+h(x₁,x₂), x₁x₂)` is associative.
pub fn validate_cocycle(p: u32, base: &FiniteGroup, h: &Cocycle) -> Result<bool, ExtError> {
    if h.order != base.order() || h.values.len() != h.order * h.order {
        return Err(ExtError::TableIncomplete {
            expected: base.order() * base.order(),
            got: h.values.len(),
        });
    }
    if h.p != p {
        return Err(GroupError::InvalidParameters(format!("cocycle is over Z/{}, not Z/{p}", h.p)).into());
    }
    Ok(cocycle_violation(base, h).is_none())
}

pub struct ExtensionGroup {
    pub p: u32,
    pub cocycle: Cocycle,
    base: Arc<FiniteGroup>,
    group: FiniteGroup,
}

/// Builds `Z/p ×_h H`.
pub fn build_extension(p: u32, base: &GroupSpec, h: &Cocycle) -> Result<ExtensionGroup, ExtError> {
    let base_group = build_group(base)?;
    if !validate_cocycle(p, &base_group, h)? {
        let (x, y, z) = cocycle_violation(&base_group, h).expect("invalid");
        return Err(ExtError::InvalidCocycle(x, y, z));
    }
    let spec = GroupSpec::CocycleExt {
        p,
        base: Box::new(base.clone()),
        cocycle: CocycleSource::Table(h.values.clone()),
    };
    ExtensionGroup::from_group(build_group(&spec)?)
}

impl ExtensionGroup {
    /// Wraps an already-built `CocycleExt` group.
    pub fn from_group(group: FiniteGroup) -> Result<Self, ExtError> {
        let (p, base, table) = group.extension_parts().ok_or(ExtError::NotExtension)?;
        let cocycle = Cocycle {
            p,
            order: base.order(),
            values: table.to_vec(),
        };
        let base = base.clone();
        Ok(ExtensionGroup {
            p,
            cocycle,
            base,
            group,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn parts(&self, e: u32) -> (u32, u32) {
        let c = self.group.code(e);
        (c[0], c[1])
    }

    pub fn element(&self, a: u32, x: u32) -> u32 {
        self.group.index_of_code(&[a % self.p, x]).expect("every pair is an element")
    }

    /// The projection f: E → H.
    pub fn project(&self, e: u32) -> u32 {
        self.parts(e).1
    }

    pub fn kernel(&self) -> SubsetMask {
        let e = self.base.identity();
        SubsetMask::from_indices(&self.group, (0..self.p).map(|a| self.element(a, e)))
    }

    fn neg(&self, a: u64) -> u64 {
        (self.p as u64 - a % self.p as u64) % self.p as u64
    }

    /// `(−h(1,1), 1)`.
    pub fn formula_identity(&self) -> u32 {
        let e = self.base.identity();
        self.element(self.neg(self.cocycle.get(e, e) as u64) as u32, e)
    }

    /// `(−a − h(x,x⁻¹) − h(1,1), x⁻¹)`.
    pub fn formula_inverse(&self, el: u32) -> u32 {
        let (a, x) = self.parts(el);
        let e = self.base.identity();
        let xi = self.base.inverse(x);
        let s = a as u64 + self.cocycle.get(x, xi) as u64 + self.cocycle.get(e, e) as u64;
        self.element(self.neg(s) as u32, xi)
    }

    /// Identity and inverse formulas against the engine's own identity and
    /// inverses, which are found from the multiplication rule alone.
    pub fn check_formulas(&self) -> FormulaCheck {
        let g = &self.group;
        let identity_ok = self.formula_identity() == g.identity();
        let inverse_failures = (0..g.order() as u32)
            .filter(|&x| {
                let fi = self.formula_inverse(x);
                fi != g.inverse(x) || g.mul_by_codes(x, fi) != g.identity()
            })
            .count();
        FormulaCheck {
            identity_ok,
            checked: g.order(),
            inverse_failures,
        }
    }

    /// f is a surjective homomorphism whose kernel is central of order p.
    pub fn check_projection(&self) -> bool {
        let g = &self.group;
        let n = g.order() as u32;
        let hom = (0..n).all(|x| (0..n).all(|y| self.project(g.mul(x, y)) == self.base.mul(self.project(x), self.project(y))));
        let onto = g.order() == self.p as usize * self.base.order();
        let k = self.kernel();
        let central = k.iter().all(|z| (0..n).all(|x| g.mul(x, z) == g.mul(z, x)));
        let kernel_exact = (0..n).filter(|&x| self.project(x) == self.base.identity()).count() == self.p as usize;
        hom && onto && central && kernel_exact && k.count() == self.p as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub identity_ok: bool,
    pub checked: usize,
    pub inverse_failures: usize,
}

impl FormulaCheck {
    pub fn holds(&self) -> bool {
        self.identity_ok && self.inverse_failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    pub splits: bool,
    /// Element indices of a complement, when one exists.
    pub complement: Option<Vec<u32>>,
    pub tuples_tried: usize,
    pub exhaustive: bool,
}

/// Largest extension searched exhaustively.
pub const SPLIT_LIMIT: usize = 5000;

/// Looks for a subgroup mapping isomorphically onto H. Any complement
/// contains exactly one lift of each generator of H, so running over all
/// lift tuples is exhaustive.
pub fn split_check(ext: &ExtensionGroup) -> SplitResult {
    let g = &ext.group;
    let gens = ext.base.generators().to_vec();
    let exhaustive = g.order() <= SPLIT_LIMIT;
    let total = (ext.p as usize).saturating_pow(gens.len() as u32);
    let budget = if exhaustive { total } else { total.min(4096) };
    let mut digits = vec![0u32; gens.len()];
    for tried in 0..budget {
        let lifts: Vec<u32> = gens.iter().zip(&digits).map(|(&x, &a)| ext.element(a, x)).collect();
        let sub = g.subgroup_generated(&lifts);
        if sub.count() == ext.base.order() {
            return SplitResult {
                splits: true,
                complement: Some(sub.to_vec()),
                tuples_tried: tried + 1,
                exhaustive,
            };
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < ext.p {
                break;
            }
            *d = 0;
        }
    }
    SplitResult {
        splits: false,
        complement: None,
        tuples_tried: budget,
        exhaustive: exhaustive || budget == total,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageBound {
    pub n: usize,
    pub holds: bool,
    /// First coordinates occurring in Pⁿ.
    pub observed: Vec<u32>,
    /// `(2n−1)·im(h) − n·im(h) − n·h(1,1)` as a subset of Z/p.
    pub allowed: Vec<u32>,
}

fn sumset(p: u32, a: &[bool], b: &[bool]) -> Vec<bool> {
    let mut out = vec![false; p as usize];
    for (i, _) in a.iter().enumerate().filter(|(_, &x)| x) {
        for (j, _) in b.iter().enumerate().filter(|(_, &x)| x) {
            out[(i + j) % p as usize] = true;
        }
    }
    out
}

fn multiple(p: u32, a: &[bool], k: usize) -> Vec<bool> {
    let mut acc = vec![false; p as usize];
    acc[0] = true;
    for _ in 0..k {
        acc = sumset(p, &acc, a);
    }
    acc
}

/// With `P' = {0}×H` and `P = P'·P'⁻¹`, checks that the first coordinates of
/// Pⁿ lie in `(2n−1)·im(h) − n·im(h) − n·h(1,1)`.
pub fn image_bound_check(ext: &ExtensionGroup, n: usize) -> Result<ImageBound, ExtError> {
    if n == 0 {
        return Err(GroupError::InvalidParameters("n must be at least 1".into()).into());
    }
    let g = &ext.group;
    let p = ext.p;
    let p_prime = SubsetMask::from_indices(g, (0..ext.base.order() as u32).map(|x| ext.element(0, x)));
    let pp = g.product_sets(&p_prime, &g.inverse_set(&p_prime))?;
    let pn = g.power_set(&pp, n)?;
    let mut im = vec![false; p as usize];
    for v in ext.cocycle.image() {
        im[v as usize] = true;
    }
    let neg_im: Vec<bool> = (0..p as usize).map(|i| im[(p as usize - i) % p as usize]).collect();
    let e = ext.base.identity();
    let shift = (n as u64 * ext.cocycle.get(e, e) as u64 % p as u64) as usize;
    let raw = sumset(p, &multiple(p, &im, 2 * n - 1), &multiple(p, &neg_im, n));
    let allowed: Vec<u32> = (0..p).filter(|&v| raw[(v as usize + shift) % p as usize]).collect();
    let mut observed: Vec<u32> = pn.iter().map(|x| ext.parts(x).0).collect();
    observed.sort_unstable();
    observed.dedup();
    let holds = observed.iter().all(|v| allowed.contains(v));
    Ok(ImageBound {
        n,
        holds,
        observed,
        allowed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2() -> FiniteGroup {
        build_group(&GroupSpec::Cyclic(2)).unwrap()
    }

    fn z4_cocycle(h: &FiniteGroup) -> Cocycle {
        Cocycle::from_fn(2, h, |x, y| u32::from(x == 1 && y == 1))
    }

    #[test]
    fn validation_examples() {
        let h = z2();
        assert!(validate_cocycle(2, &h, &Cocycle::zero(2, &h)).unwrap());
        assert!(validate_cocycle(2, &h, &z4_cocycle(&h)).unwrap());
        let z3 = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let bad = Cocycle::from_fn(3, &z3, |x, y| u32::from(x == 1 && y == 2));
        assert!(!validate_cocycle(3, &z3, &bad).unwrap());
        assert!(matches!(
            Cocycle::new(2, &h, vec![0, 1, 0]),
            Err(ExtError::TableIncomplete { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn z4_from_z2() {
        let h = z2();
        let e = build_extension(2, &GroupSpec::Cyclic(2), &z4_cocycle(&h)).unwrap();
        assert_eq!(e.group().order(), 4);
        let x = e.element(0, 1);
        assert_eq!(e.group().element_order(x), 4);
        assert_eq!(e.group().mul(x, x), e.element(1, 0));
        assert!(e.check_formulas().holds());
        assert!(e.check_projection());
        let s = split_check(&e);
        assert!(!s.splits && s.exhaustive);
    }

    #[test]
    fn zero_cocycle_splits() {
        for (p, base) in [(2, GroupSpec::Cyclic(2)), (3, GroupSpec::Cyclic(3)), (5, GroupSpec::Symmetric(3))] {
            let h = build_group(&base).unwrap();
            let e = build_extension(p, &base, &Cocycle::zero(p, &h)).unwrap();
            assert_eq!(e.group().order(), p as usize * h.order());
            let s = split_check(&e);
            assert!(s.splits);
            let comp = s.complement.unwrap();
            assert!(comp.iter().all(|&x| e.parts(x).0 == 0));
        }
    }

    #[test]
    fn invalid_cocycle_rejected() {
        let z3 = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let bad = Cocycle::from_fn(3, &z3, |x, y| u32::from(x == 1 && y == 2));
        assert!(matches!(
            build_extension(3, &GroupSpec::Cyclic(3), &bad),
            Err(ExtError::InvalidCocycle(..))
        ));
    }

    #[test]
    fn image_bounds() {
        let h = z2();
        let e = build_extension(2, &GroupSpec::Cyclic(2), &z4_cocycle(&h)).unwrap();
        for n in 1..=4 {
            assert!(image_bound_check(&e, n).unwrap().holds);
        }
        let z5 = build_group(&GroupSpec::Cyclic(5)).unwrap();
        let e = build_extension(3, &GroupSpec::Cyclic(5), &Cocycle::zero(3, &z5)).unwrap();
        let b = image_bound_check(&e, 3).unwrap();
        assert_eq!(b.observed, vec![0]);
        assert!(b.holds);
    }

    #[test]
    fn random_cocycles_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in [GroupSpec::Cyclic(6), GroupSpec::Abelian(vec![2, 4]), GroupSpec::Symmetric(3)] {
            let h = build_group(&spec).unwrap();
            for p in [2, 3, 5] {
                let c = Cocycle::random(p, &h, &mut rng);
                assert!(validate_cocycle(p, &h, &c).unwrap());
                let e = build_extension(p, &spec, &c).unwrap();
                assert!(e.check_formulas().holds());
            }
        }
    }

    #[test]
    fn cocycle_text_round_trip() {
        let h = build_group(&GroupSpec::Symmetric(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = Cocycle::random(3, &h, &mut rng);
        let text = format_cocycle(&h, &c);
        let (p, table) = parse_cocycle_text(&text, &h).unwrap();
        assert_eq!((p, table.as_slice()), (3, c.values()));
        assert!(parse_cocycle_text("p 3\n() () 1\n", &h).is_err());
        assert!(parse_cocycle_text("q 3\n", &h).is_err());
    }
}
