use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{PermError, Permutation};

fn check_points(groups: &[&[u32]]) -> Result<usize, PermError> {
    let mut all: Vec<u32> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    if all.iter().any(|&x| x == 0) {
        return Err(PermError::Parse {
            text: format!("{all:?}"),
            reason: "points are 1-based".into(),
        });
    }
    let n = all.iter().copied().max().unwrap_or(1) as usize;
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(PermError::OverlapViolation);
    }
    Ok(n)
}

/// `(x,a₁,…,a_m)⁻¹ ∘ (x,b₁,…,b_m)`, checked against `(x,b₁,…,b_m,a_m,…,a₁)`.
pub fn cycle_quotient(x: u32, a: &[u32], b: &[u32]) -> Result<Permutation, PermError> {
    if a.len() != b.len() {
        return Err(PermError::LengthMismatch);
    }
    let n = check_points(&[&[x], a, b])?;
    let ca: Vec<u32> = std::iter::once(x).chain(a.iter().copied()).collect();
    let cb: Vec<u32> = std::iter::once(x).chain(b.iter().copied()).collect();
    let lhs = Permutation::cycle(n, &ca)?.inverse().compose(&Permutation::cycle(n, &cb)?);
    let rhs_pts: Vec<u32> = cb.iter().copied().chain(a.iter().rev().copied()).collect();
    let rhs = Permutation::cycle(n, &rhs_pts)?;
    if lhs != rhs {
        return Err(PermError::IdentityFailed(format!("{lhs} != {rhs}")));
    }
    Ok(lhs)
}

/// `(x,y,a…) ∘ (x,y,b…)` for odd-length `a`, `b`, checked against
/// `(x,a…) ∘ (y,b…)`.
pub fn odd_cycle_merge(x: u32, y: u32, a: &[u32], b: &[u32]) -> Result<Permutation, PermError> {
    if a.len() % 2 == 0 || b.len() % 2 == 0 {
        return Err(PermError::EvenLength);
    }
    let n = check_points(&[&[x, y], a, b])?;
    let with = |head: &[u32], tail: &[u32]| -> Vec<u32> { head.iter().chain(tail).copied().collect() };
    let lhs = Permutation::cycle(n, &with(&[x, y], a))?.compose(&Permutation::cycle(n, &with(&[x, y], b))?);
    let rhs = Permutation::cycle(n, &with(&[x], a))?.compose(&Permutation::cycle(n, &with(&[y], b))?);
    if lhs != rhs {
        return Err(PermError::IdentityFailed(format!("{lhs} != {rhs}")));
    }
    Ok(lhs)
}

/// Outcome of checking one identity shape over placements of its points.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ShapeResult {
    pub identity: &'static str,
    /// `[m]` for the quotient identity, `[|a|, |b|]` for the merge.
    pub shape: Vec<usize>,
    pub placements: u64,
    pub checked: u64,
    pub failures: u64,
    /// Every placement was enumerated. Otherwise one canonical placement and
    /// a seeded sample were checked; relabeling points conjugates both sides
    /// alike, so the canonical one already settles the whole shape.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IdentitySweep {
    pub degree: usize,
    pub shapes: Vec<ShapeResult>,
}

impl IdentitySweep {
    pub fn all_hold(&self) -> bool {
        self.shapes.iter().all(|s| s.failures == 0 && s.checked > 0)
    }
}

const MAX_DEGREE: usize = 16;
const EXHAUSTIVE_LIMIT: u64 = 4_000_000;
const SAMPLES: usize = 20_000;

type Img = [u8; MAX_DEGREE];

fn ident(n: usize) -> Img {
    let mut a = [0u8; MAX_DEGREE];
    for (i, v) in a.iter_mut().enumerate().take(n) {
        *v = i as u8;
    }
    a
}

/// Cycle on 0-based points.
fn cyc(n: usize, pts: impl Iterator<Item = u8> + Clone) -> Img {
    let mut a = ident(n);
    let first = pts.clone().next();
    let mut prev: Option<u8> = None;
    for p in pts {
        if let Some(q) = prev {
            a[q as usize] = p;
        }
        prev = Some(p);
    }
    if let (Some(f), Some(l)) = (first, prev) {
        a[l as usize] = f;
    }
    a
}

fn comp(n: usize, s: &Img, t: &Img) -> Img {
    let mut a = [0u8; MAX_DEGREE];
    for i in 0..n {
        a[i] = s[t[i] as usize];
    }
    a
}

fn inv(n: usize, s: &Img) -> Img {
    let mut a = [0u8; MAX_DEGREE];
    for i in 0..n {
        a[s[i] as usize] = i as u8;
    }
    a
}

fn quotient_holds(n: usize, m: usize, pts: &[u8]) -> bool {
    let (x, rest) = (pts[0], &pts[1..]);
    let (a, b) = rest.split_at(m);
    let one = std::iter::once(x);
    let lhs = comp(n, &inv(n, &cyc(n, one.clone().chain(a.iter().copied()))), &cyc(n, one.clone().chain(b.iter().copied())));
    let rhs = cyc(n, one.chain(b.iter().copied()).chain(a.iter().rev().copied()));
    lhs == rhs
}

fn merge_holds(n: usize, la: usize, pts: &[u8]) -> bool {
    let (x, y) = (pts[0], pts[1]);
    let (a, b) = pts[2..].split_at(la);
    let xy = [x, y];
    let lhs = comp(
        n,
        &cyc(n, xy.iter().chain(a).copied()),
        &cyc(n, xy.iter().chain(b).copied()),
    );
    let rhs = comp(
        n,
        &cyc(n, std::iter::once(x).chain(a.iter().copied())),
        &cyc(n, std::iter::once(y).chain(b.iter().copied())),
    );
    lhs == rhs
}

fn falling(n: usize, k: usize) -> u64 {
    (0..k).map(|i| (n - i) as u64).product()
}

fn each_placement(n: usize, k: usize, f: &mut impl FnMut(&[u8])) {
    fn rec(n: usize, k: usize, used: &mut [bool; MAX_DEGREE], cur: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for p in 0..n {
            if !used[p] {
                used[p] = true;
                cur.push(p as u8);
                rec(n, k, used, cur, f);
                cur.pop();
                used[p] = false;
            }
        }
    }
    rec(n, k, &mut [false; MAX_DEGREE], &mut Vec::with_capacity(k), f);
}

fn sweep_shape(
    identity: &'static str,
    shape: Vec<usize>,
    n: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
    holds: impl Fn(&[u8]) -> bool,
) -> ShapeResult {
    let placements = falling(n, k);
    let mut checked = 0u64;
    let mut failures = 0u64;
    let exhaustive = placements <= EXHAUSTIVE_LIMIT;
    let mut run = |pts: &[u8]| {
        checked += 1;
        if !holds(pts) {
            failures += 1;
        }
    };
    if exhaustive {
        each_placement(n, k, &mut run);
    } else {
        let canonical: Vec<u8> = (0..k as u8).collect();
        run(&canonical);
        let mut pool: Vec<u8> = (0..n as u8).collect();
        for _ in 0..SAMPLES {
            pool.shuffle(rng);
            run(&pool[..k]);
        }
    }
    ShapeResult {
        identity,
        shape,
        placements,
        checked,
        failures,
        exhaustive,
    }
}

/// Checks both identities for every shape with `m, p, q ≤ max_m` that fits
/// in `degree` points.
pub fn verify_identities(max_m: usize, degree: usize, seed: u64) -> IdentitySweep {
    assert!(degree <= MAX_DEGREE, "degree at most {MAX_DEGREE}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shapes = Vec::new();
    for m in 0..=max_m {
        let k = 2 * m + 1;
        if k <= degree {
            shapes.push(sweep_shape("cycle_quotient", vec![m], degree, k, &mut rng, |pts| {
                quotient_holds(degree, m, pts)
            }));
        }
    }
    for p in 0..=max_m {
        for q in 0..=max_m {
            let (la, lb) = (2 * p + 1, 2 * q + 1);
            let k = 2 + la + lb;
            if k <= degree {
                shapes.push(sweep_shape("odd_cycle_merge", vec![la, lb], degree, k, &mut rng, |pts| {
                    merge_holds(degree, la, pts)
                }));
            }
        }
    }
    IdentitySweep { degree, shapes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_examples() {
        assert_eq!(cycle_quotient(1, &[2, 3], &[4, 5]).unwrap().to_string(), "(1,4,5,3,2)");
        assert_eq!(cycle_quotient(1, &[2], &[3]).unwrap().to_string(), "(1,3,2)");
        assert!(cycle_quotient(1, &[], &[]).unwrap().is_identity());
        assert_eq!(cycle_quotient(1, &[2], &[3, 4]).unwrap_err(), PermError::LengthMismatch);
        assert_eq!(cycle_quotient(1, &[2, 3], &[3, 4]).unwrap_err(), PermError::OverlapViolation);
    }

    #[test]
    fn merge_examples() {
        assert_eq!(odd_cycle_merge(1, 2, &[3], &[4]).unwrap().to_string(), "(1,3)(2,4)");
        assert_eq!(
            odd_cycle_merge(1, 2, &[3, 4, 5], &[6, 7, 8]).unwrap().to_string(),
            "(1,3,4,5)(2,6,7,8)"
        );
        assert_eq!(odd_cycle_merge(1, 2, &[3, 4], &[5]).unwrap_err(), PermError::EvenLength);
        assert_eq!(odd_cycle_merge(1, 2, &[2], &[5]).unwrap_err(), PermError::OverlapViolation);
    }

    #[test]
    fn quotient_is_even() {
        for m in 0..4u32 {
            let a: Vec<u32> = (2..2 + m).collect();
            let b: Vec<u32> = (2 + m..2 + 2 * m).collect();
            assert!(cycle_quotient(1, &a, &b).unwrap().is_even());
        }
    }

    #[test]
    fn fast_checkers_agree_with_permutations() {
        assert!(quotient_holds(5, 2, &[0, 1, 2, 3, 4]));
        assert!(merge_holds(8, 3, &[0, 1, 2, 3, 4, 5, 6, 7]));
        // A deliberately wrong variant must be caught.
        let n = 5;
        let lhs = comp(n, &cyc(n, [0u8, 1, 2].into_iter()), &cyc(n, [0u8, 3, 4].into_iter()));
        assert_ne!(lhs, cyc(n, [0u8, 3, 4, 2, 1].into_iter()));
    }

    #[test]
    fn small_sweep() {
        let sweep = verify_identities(1, 7, 1);
        assert!(sweep.all_hold());
        assert!(sweep.shapes.iter().all(|s| s.exhaustive));
    }
}
