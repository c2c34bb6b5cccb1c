use std::collections::HashSet;

use serde::Serialize;

use super::transport::{commutator_transport_solve, transport_map, Side};
use super::{
    is_regular, positive_roots, root_generator, root_value, torus, unipotent_factor, unipotent_product, x_raw,
    ChevalleyError, GeneratorKind, Root, SlMatrix,
};
use crate::arith::pow_signed;
use crate::group::GroupError;
use crate::roots::{build_root_system, Family};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub skipped: bool,
}

impl RelationCheck {
    fn new(name: &str) -> Self {
        RelationCheck {
            name: name.to_string(),
            checked: 0,
            failures: 0,
            first_failure: None,
            skipped: false,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationSuite {
    pub n: usize,
    pub p: u32,
    pub checks: Vec<RelationCheck>,
    /// Realized sign N in `[x_α(s), x_β(u)] = x_{α+β}(N·su)`.
    pub signs: Vec<(Root, Root, i8)>,
    pub regular_tori: usize,
}

impl RelationSuite {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }
}

/// Largest U enumerated by the bijectivity checks.
const U_LIMIT: usize = 200_000;

fn all_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every unitriangular matrix on one side, built entrywise.
pub fn enumerate_unitriangular(n: usize, p: u32, side: Side, cap: usize) -> Result<Vec<SlMatrix>, ChevalleyError> {
    let slots: Vec<Root> = all_roots(n)
        .into_iter()
        .filter(|&(i, j)| match side {
            Side::Upper => i < j,
            Side::Lower => i > j,
        })
        .collect();
    let total = (p as usize).checked_pow(slots.len() as u32).filter(|&t| t <= cap);
    let Some(total) = total else {
        return Err(GroupError::OrderCapExceeded { cap }.into());
    };
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0u32; slots.len()];
    for _ in 0..total {
        let mut e = crate::matrix::identity(n);
        for (k, &(i, j)) in slots.iter().enumerate() {
            e[i * n + j] = digits[k];
        }
        out.push(SlMatrix::from_raw(n, p, e));
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// `t·x_α(s)·t⁻¹ = x_α(α(t)·s)` for every torus element, root and scalar.
fn check_torus_action(n: usize, p: u32) -> Result<RelationCheck, ChevalleyError> {
    let mut c = RelationCheck::new("torus action");
    for t in torus(n, p)? {
        let t_inv = t.inverse();
        for alpha in all_roots(n) {
            let a = root_value(&t, alpha)? as u64;
            for s in 0..p {
                let lhs = t.mul(&x_raw(n, p, alpha, s)).mul(&t_inv);
                let rhs = x_raw(n, p, alpha, (a * s as u64 % p as u64) as u32);
                c.record(lhs == rhs, || format!("t={t} alpha={alpha:?} s={s}"));
            }
        }
    }
    Ok(c)
}

/// `t_α(u)·x_β(s)·t_α(u)⁻¹ = x_β(u^{⟨β,α⟩}·s)`, pairings taken from the
/// Euclidean root system.
fn check_coroot_action(n: usize, p: u32) -> Result<RelationCheck, ChevalleyError> {
    let mut c = RelationCheck::new("coroot action");
    let rs = build_root_system(Family::A, n - 1)?;
    let roots = all_roots(n);
    let coords: Vec<Vec<i64>> = roots.iter().map(|&(i, j)| rs.type_a_root(i, j)).collect::<Result<_, _>>()?;
    for (ai, &alpha) in roots.iter().enumerate() {
        for u in 1..p {
            let t = root_generator(n, p, GeneratorKind::T, alpha, u)?;
            let t_inv = t.inverse();
            for (bi, &beta) in roots.iter().enumerate() {
                let k = rs.pairing(&coords[bi], &coords[ai])?;
                let f = pow_signed(u as u64, k, p as u64);
                for s in 0..p {
                    let lhs = t.mul(&x_raw(n, p, beta, s)).mul(&t_inv);
                    let rhs = x_raw(n, p, beta, (f * s as u64 % p as u64) as u32);
                    c.record(lhs == rhs, || format!("alpha={alpha:?} beta={beta:?} u={u} s={s}"));
                }
            }
        }
    }
    Ok(c)
}

/// Signs N_{α,β} realized by matrix commutators at s = u = 1, for pairs
/// whose sum is a root.
pub fn commutator_signs(n: usize, p: u32) -> Result<Vec<(Root, Root, i8)>, ChevalleyError> {
    let rs = build_root_system(Family::A, n - 1)?;
    let mut out = Vec::new();
    for alpha in all_roots(n) {
        for beta in all_roots(n) {
            let Some(gamma) = root_sum(&rs, alpha, beta)? else { continue };
            let c = x_raw(n, p, alpha, 1).commutator(&x_raw(n, p, beta, 1));
            let v = c.entry(gamma.0, gamma.1);
            let sign = if v == 1 { 1 } else if v == p - 1 { -1 } else { 0 };
            out.push((alpha, beta, sign));
        }
    }
    Ok(out)
}

/// α + β as a pair, when it is a root; decided from simple-root coordinates.
fn root_sum(rs: &crate::roots::RootSystem, alpha: Root, beta: Root) -> Result<Option<Root>, ChevalleyError> {
    let a = rs.type_a_root(alpha.0, alpha.1)?;
    let b = rs.type_a_root(beta.0, beta.1)?;
    let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    if rs.is_root(&sum) {
        Ok(Some(rs.type_a_pair(&sum)?))
    } else {
        Ok(None)
    }
}

fn check_chevalley_commutator(n: usize, p: u32, signs: &[(Root, Root, i8)]) -> Result<RelationCheck, ChevalleyError> {
    let mut c = RelationCheck::new("chevalley commutator");
    let rs = build_root_system(Family::A, n - 1)?;
    for alpha in all_roots(n) {
        for beta in all_roots(n) {
            if alpha == (beta.1, beta.0) {
                continue;
            }
            let sum = root_sum(&rs, alpha, beta)?;
            let sign = signs.iter().find(|&&(a, b, _)| a == alpha && b == beta).map(|s| s.2);
            for s in 0..p {
                for u in 0..p {
                    let lhs = x_raw(n, p, alpha, s).commutator(&x_raw(n, p, beta, u));
                    let rhs = match (sum, sign) {
                        (Some(g), Some(sg)) if sg != 0 => {
                            let su = s as i64 * u as i64 * sg as i64;
                            x_raw(n, p, g, crate::arith::reduce(su, p as u64) as u32)
                        }
                        (Some(_), _) => {
                            c.record(false, || format!("no sign for {alpha:?},{beta:?}"));
                            continue;
                        }
                        (None, _) => SlMatrix::identity(n, p),
                    };
                    c.record(lhs == rhs, || format!("alpha={alpha:?} beta={beta:?} s={s} u={u}"));
                }
            }
        }
    }
    Ok(c)
}

/// The ordered product over Σ⁺ hits every unitriangular matrix exactly once.
fn check_factorization(n: usize, p: u32) -> Result<RelationCheck, ChevalleyError> {
    let mut c = RelationCheck::new("unipotent factorization");
    let roots = positive_roots(n)?;
    let Some(total) = (p as usize).checked_pow(roots.len() as u32).filter(|&t| t <= U_LIMIT) else {
        c.skipped = true;
        return Ok(c);
    };
    let mut seen = HashSet::with_capacity(total);
    let mut digits = vec![0u32; roots.len()];
    for _ in 0..total {
        let coeffs: Vec<(Root, u32)> = roots.iter().copied().zip(digits.iter().copied()).collect();
        let u = unipotent_product(n, p, &coeffs)?;
        let ok = u.is_upper_unitriangular() && unipotent_factor(&u)? == coeffs && seen.insert(u.entries().to_vec());
        c.record(ok, || format!("coefficients {digits:?}"));
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    c.record(seen.len() == total, || format!("{} distinct products of {total}", seen.len()));
    Ok(c)
}

/// For each regular t, `u ↦ [t,u]` permutes U and U⁻, and the solver
/// inverts it. Returns the check and the number of regular tori.
pub fn check_transport(n: usize, p: u32) -> Result<(RelationCheck, usize), ChevalleyError> {
    let mut c = RelationCheck::new("transport bijectivity");
    let mut regular = 0;
    let tori: Vec<SlMatrix> = torus(n, p)?.into_iter().filter(|t| is_regular(t).unwrap_or(false)).collect();
    if tori.is_empty() {
        return Ok((c, 0));
    }
    let (upper, lower) = match (
        enumerate_unitriangular(n, p, Side::Upper, U_LIMIT),
        enumerate_unitriangular(n, p, Side::Lower, U_LIMIT),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            c.skipped = true;
            return Ok((c, tori.len()));
        }
    };
    for t in &tori {
        regular += 1;
        for (side, all) in [(Side::Upper, &upper), (Side::Lower, &lower)] {
            let mut images = HashSet::with_capacity(all.len());
            for u in all.iter() {
                let img = transport_map(t, u);
                let on_side = match side {
                    Side::Upper => img.is_upper_unitriangular(),
                    Side::Lower => img.is_lower_unitriangular(),
                };
                images.insert(img.entries().to_vec());
                let back = commutator_transport_solve(t, u)?;
                c.record(on_side && &transport_map(t, &back) == u, || format!("t={t} u={u}"));
            }
            c.record(images.len() == all.len(), || format!("t={t}: {} images of {}", images.len(), all.len()));
        }
    }
    Ok((c, regular))
}

/// Relation suite for SL_n(F_p), n ≥ 2.
pub fn verify_relations(n: usize, p: u32) -> Result<RelationSuite, ChevalleyError> {
    if n < 2 {
        return Err(GroupError::InvalidParameters("relations need n ≥ 2".into()).into());
    }
    super::check_field(p)?;
    let signs = commutator_signs(n, p)?;
    let (transport, regular_tori) = check_transport(n, p)?;
    let checks = vec![
        check_torus_action(n, p)?,
        check_coroot_action(n, p)?,
        check_chevalley_commutator(n, p, &signs)?,
        check_factorization(n, p)?,
        transport,
    ];
    Ok(RelationSuite {
        n,
        p,
        checks,
        signs,
        regular_tori,
    })
}
