use serde::Serialize;

use super::{is_regular, root_value, x_raw, ChevalleyError, Root, SlMatrix};
use crate::arith::inv_mod;
use crate::group::{FiniteGroup, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// U, above the diagonal.
    Upper,
    /// U⁻, below the diagonal.
    Lower,
}

impl Side {
    /// Roots of the given height on this side, in row order.
    fn layer(self, n: usize, h: usize) -> impl Iterator<Item = Root> {
        (0..n - h).map(move |i| match self {
            Side::Upper => (i, i + h),
            Side::Lower => (i + h, i),
        })
    }

    fn contains(self, u: &SlMatrix) -> bool {
        match self {
            Side::Upper => u.is_upper_unitriangular(),
            Side::Lower => u.is_lower_unitriangular(),
        }
    }
}

/// `u ↦ [t,u] = t⁻¹u⁻¹tu`.
pub fn transport_map(t: &SlMatrix, u: &SlMatrix) -> SlMatrix {
    t.commutator(u)
}

/// Solves `[t,u'] = u` for u' on the same side as u.
///
/// Works down the central series one height at a time: modulo the next
/// layer, `[t, x_α(c)] ≡ x_α(c·(1 − α(t)⁻¹))`, so the residual at height h
/// is divided entrywise by `1 − α(t)⁻¹`.
pub fn commutator_transport_solve(t: &SlMatrix, u: &SlMatrix) -> Result<SlMatrix, ChevalleyError> {
    t.same_shape(u)?;
    if !t.is_diagonal() {
        return Err(ChevalleyError::NotDiagonal);
    }
    if !is_regular(t)? {
        return Err(ChevalleyError::NotRegular);
    }
    let side = if Side::Upper.contains(u) {
        Side::Upper
    } else if Side::Lower.contains(u) {
        Side::Lower
    } else {
        return Err(ChevalleyError::NotUnitriangular);
    };
    let (n, p) = (t.n, t.p);
    let pp = p as u64;
    let mut sol = SlMatrix::identity(n, p);
    for h in 1..n {
        let residual = transport_map(t, &sol).inverse().mul(u);
        let mut step = SlMatrix::identity(n, p);
        for alpha in side.layer(n, h) {
            let d = residual.entry(alpha.0, alpha.1) as u64;
            let a_inv = inv_mod(root_value(t, alpha)? as u64, pp);
            let factor = (1 + pp - a_inv) % pp;
            if factor == 0 {
                return Err(ChevalleyError::NotRegular);
            }
            let c = d * inv_mod(factor, pp) % pp;
            step = step.mul(&x_raw(n, p, alpha, c as u32));
        }
        sol = sol.mul(&step);
    }
    debug_assert_eq!(&transport_map(t, &sol), u);
    Ok(sol)
}

/// `a = v·d·u` with v lower unitriangular, d diagonal and u upper
/// unitriangular; `None` when a leading principal minor vanishes.
pub fn ldu(a: &SlMatrix) -> Option<(SlMatrix, SlMatrix, SlMatrix)> {
    let (n, p) = (a.n, a.p);
    let pp = p as u64;
    let mut r: Vec<u64> = a.entries.iter().map(|&x| x as u64).collect();
    let mut l = crate::matrix::identity(n);
    for k in 0..n {
        let piv = r[k * n + k];
        if piv == 0 {
            return None;
        }
        let pinv = inv_mod(piv, pp);
        for i in k + 1..n {
            let f = r[i * n + k] * pinv % pp;
            l[i * n + k] = f as u32;
            for j in k..n {
                r[i * n + j] = (r[i * n + j] + pp - f * r[k * n + j] % pp) % pp;
            }
        }
    }
    let mut d = vec![0u32; n * n];
    let mut u = vec![0u32; n * n];
    for i in 0..n {
        let di = r[i * n + i];
        d[i * n + i] = di as u32;
        let dinv = inv_mod(di, pp);
        for j in i..n {
            u[i * n + j] = (r[i * n + j] * dinv % pp) as u32;
        }
    }
    Some((
        SlMatrix::from_raw(n, p, l),
        SlMatrix::from_raw(n, p, d),
        SlMatrix::from_raw(n, p, u),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussTriple {
    pub x: SlMatrix,
    pub v: SlMatrix,
    pub u: SlMatrix,
    /// Conjugators examined, including the accepted one.
    pub tried: usize,
}

impl GaussTriple {
    /// Recomputes `g^x = v·t·u`.
    pub fn verify(&self, g: &SlMatrix, t: &SlMatrix) -> bool {
        self.v.is_lower_unitriangular()
            && self.u.is_upper_unitriangular()
            && g.conjugate_by(&self.x) == self.v.mul(t).mul(&self.u)
    }
}

/// Finds x with `g^x = v·t·u`, scanning conjugators in element-index order
/// of `group`, which must be SL_n(F_p) for the matrices' n and p.
pub fn gauss_prescribed(group: &FiniteGroup, g: &SlMatrix, t: &SlMatrix) -> Result<GaussTriple, ChevalleyError> {
    g.same_shape(t)?;
    match group.spec() {
        GroupSpec::SpecialLinear { n, p } if *n as usize == g.n && *p == g.p => {}
        other => {
            return Err(ChevalleyError::NotSpecialLinear(format!("group {other} does not match the matrices")));
        }
    }
    if !t.is_diagonal() {
        return Err(ChevalleyError::NotDiagonal);
    }
    if g.is_scalar() {
        return Err(ChevalleyError::NoncentralRequired);
    }
    for idx in 0..group.order() as u32 {
        let x = SlMatrix::from_raw(g.n, g.p, group.code(idx).to_vec());
        let h = g.conjugate_by(&x);
        if let Some((v, d, u)) = ldu(&h) {
            if &d == t {
                let triple = GaussTriple {
                    x,
                    v,
                    u,
                    tried: idx as usize + 1,
                };
                debug_assert!(triple.verify(g, t));
                return Ok(triple);
            }
        }
    }
    Err(ChevalleyError::SearchExhausted {
        tried: group.order(),
        exhaustive: true,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{root_generator, torus, GeneratorKind};
    use super::*;
    use crate::group::build_group;

    fn m(n: usize, p: u32, e: &[u32]) -> SlMatrix {
        SlMatrix::new(n, p, e.to_vec()).unwrap()
    }

    #[test]
    fn transport_examples() {
        let t = m(2, 5, &[2, 0, 0, 3]);
        let x1 = root_generator(2, 5, GeneratorKind::X, (0, 1), 1).unwrap();
        let sol = commutator_transport_solve(&t, &x1).unwrap();
        assert_eq!(sol, root_generator(2, 5, GeneratorKind::X, (0, 1), 3).unwrap());
        let id = SlMatrix::identity(2, 5);
        assert_eq!(commutator_transport_solve(&t, &id).unwrap(), id);
        assert_eq!(commutator_transport_solve(&id, &x1).unwrap_err(), ChevalleyError::NotRegular);
    }

    #[test]
    fn transport_lower_mirror() {
        let t = SlMatrix::diagonal(7, &[2, 3, 6]).unwrap();
        let v = m(3, 7, &[1, 0, 0, 4, 1, 0, 5, 2, 1]);
        let sol = commutator_transport_solve(&t, &v).unwrap();
        assert!(sol.is_lower_unitriangular());
        assert_eq!(transport_map(&t, &sol), v);
    }

    #[test]
    fn transport_rejects_mixed() {
        let t = SlMatrix::diagonal(7, &[2, 3, 6]).unwrap();
        let g = m(3, 7, &[1, 1, 0, 1, 2, 0, 0, 0, 1]);
        assert_eq!(commutator_transport_solve(&t, &g).unwrap_err(), ChevalleyError::NotUnitriangular);
    }

    #[test]
    fn ldu_reconstructs() {
        let a = m(3, 5, &[1, 1, 0, 1, 2, 1, 0, 1, 2]);
        let (l, d, u) = ldu(&a).unwrap();
        assert!(l.is_lower_unitriangular() && d.is_diagonal() && u.is_upper_unitriangular());
        assert_eq!(l.mul(&d).mul(&u), a);
        assert!(ldu(&m(2, 5, &[0, 1, 4, 0])).is_none());
    }

    #[test]
    fn gauss_examples() {
        let g = build_group(&GroupSpec::SpecialLinear { n: 2, p: 5 }).unwrap();
        let t = m(2, 5, &[2, 0, 0, 3]);
        let x = m(2, 5, &[1, 1, 0, 1]);
        let tri = gauss_prescribed(&g, &x, &t).unwrap();
        assert!(tri.verify(&x, &t));

        let same = gauss_prescribed(&g, &t, &t).unwrap();
        let id = SlMatrix::identity(2, 5);
        assert_eq!((same.x, same.v, same.u), (id.clone(), id.clone(), id));

        let minus = m(2, 5, &[4, 0, 0, 4]);
        assert_eq!(gauss_prescribed(&g, &minus, &t).unwrap_err(), ChevalleyError::NoncentralRequired);
        for t in torus(2, 5).unwrap() {
            assert!(gauss_prescribed(&g, &x, &t).unwrap().verify(&x, &t));
        }
    }
}
