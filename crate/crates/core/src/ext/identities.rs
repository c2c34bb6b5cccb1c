use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ExtError;
use crate::group::{FiniteGroup, GroupError, GroupSpec};
use crate::matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub samples: usize,
    pub failures: usize,
    pub seed: u64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// `[a₁b₁, a₂b₂] = (a₁⁻¹)^{b₁}·(a₂⁻¹a₁)^{b₂b₁}·a₂^{b₂^{b₁}}·[b₁,b₂]` on random
/// quadruples.
pub fn club_identity_check(g: &FiniteGroup, samples: usize, seed: u64) -> IdentityCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order() as u32;
    let mut failures = 0;
    for _ in 0..samples {
        let [a1, b1, a2, b2]: [u32; 4] = std::array::from_fn(|_| rng.gen_range(0..n));
        let lhs = g.commutator(g.mul(a1, b1), g.mul(a2, b2));
        let t1 = g.conjugate(g.inverse(a1), b1);
        let t2 = g.conjugate(g.mul(g.inverse(a2), a1), g.mul(b2, b1));
        let t3 = g.conjugate(a2, g.conjugate(b2, b1));
        let rhs = g.mul(g.mul(g.mul(t1, t2), t3), g.commutator(b1, b2));
        if lhs != rhs {
            failures += 1;
        }
    }
    IdentityCheck { samples, failures, seed }
}

/// In F_pⁿ ⋊ SL_n(F_p): `[(v,f),(u,g)] = (f⁻¹(g⁻¹(v + f(u) − u) − v), f⁻¹g⁻¹fg)`,
/// evaluated on coordinates and compared with the group's commutator.
pub fn semidirect_commutator_check(g: &FiniteGroup, samples: usize, seed: u64) -> Result<IdentityCheck, ExtError> {
    let (n, p) = match g.spec() {
        GroupSpec::Semidirect { n, p } => (*n as usize, *p),
        other => {
            return Err(GroupError::InvalidParameters(format!("{other} is not a semidirect product")).into());
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = g.order() as u32;
    let sub = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect() };
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| (x + y) % p).collect() };
    let mut failures = 0;
    for _ in 0..samples {
        let x = rng.gen_range(0..order);
        let y = rng.gen_range(0..order);
        let (v, f) = g.code(x).split_at(n);
        let (u, gm) = g.code(y).split_at(n);
        let fi = matrix::inverse(n, p, f).expect("invertible");
        let gi = matrix::inverse(n, p, gm).expect("invertible");
        let inner = sub(&add(v, &matrix::apply(n, p, f, u)), u);
        let vec_part = matrix::apply(n, p, &fi, &sub(&matrix::apply(n, p, &gi, &inner), v));
        let mat_part = matrix::mul(n, p, &matrix::mul(n, p, &fi, &gi), &matrix::mul(n, p, f, gm));
        let mut code = vec_part;
        code.extend(mat_part);
        if g.index_of_code(&code) != Some(g.commutator(x, y)) {
            failures += 1;
        }
    }
    Ok(IdentityCheck { samples, failures, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn club_identity_small_groups() {
        for spec in [GroupSpec::Symmetric(4), GroupSpec::SpecialLinear { n: 2, p: 3 }] {
            let g = build_group(&spec).unwrap();
            assert!(club_identity_check(&g, 2000, 1).holds());
        }
    }

    #[test]
    fn exponent_order_matters() {
        // With b₁b₂ in place of b₂b₁ the identity fails somewhere in Sym(4).
        let g = build_group(&GroupSpec::Symmetric(4)).unwrap();
        let n = g.order() as u32;
        let mut broken = false;
        'outer: for a1 in 0..n {
            for b1 in 0..n {
                for b2 in [1, 2, 5] {
                    let a2 = (a1 + 3) % n;
                    let lhs = g.commutator(g.mul(a1, b1), g.mul(a2, b2));
                    let t1 = g.conjugate(g.inverse(a1), b1);
                    let t2 = g.conjugate(g.mul(g.inverse(a2), a1), g.mul(b1, b2));
                    let t3 = g.conjugate(a2, g.conjugate(b2, b1));
                    if lhs != g.mul(g.mul(g.mul(t1, t2), t3), g.commutator(b1, b2)) {
                        broken = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(broken);
    }

    #[test]
    fn semidirect_formula() {
        let g = build_group(&GroupSpec::Semidirect { n: 2, p: 3 }).unwrap();
        assert!(semidirect_commutator_check(&g, 2000, 9).unwrap().holds());
        let s = build_group(&GroupSpec::Symmetric(3)).unwrap();
        assert!(semidirect_commutator_check(&s, 1, 0).is_err());
    }
}
