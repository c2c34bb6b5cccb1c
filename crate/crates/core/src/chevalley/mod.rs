//! SL_n(F_p) as the type-A Chevalley group.
//!
//! Roots of A_{n−1} are ordered pairs `(i, j)` of distinct 0-based indices:
//! `x_(i,j)(s) = I + s·E_ij`, positive iff `i < j`, and `α(t) = t_i / t_j`.

mod cube;
mod relations;
mod transport;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::arith::{inv_mod, is_prime, mult_order, pow_signed, reduce};
use crate::group::GroupError;
use crate::matrix;
use crate::roots::{Family, RootError, RootSystem};

pub use cube::{class_cube, ClassCube};
pub use relations::{
    check_transport, commutator_signs, enumerate_unitriangular, verify_relations, RelationCheck, RelationSuite,
};
pub use transport::{
    commutator_transport_solve, gauss_prescribed, ldu, transport_map, GaussTriple, Side,
};

pub type Root = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChevalleyError {
    #[error("w and t generators need a nonzero parameter")]
    ZeroParameter,
    #[error("({0},{1}) is not a root for n = {2}")]
    InvalidRoot(usize, usize, usize),
    #[error("matrix is not unitriangular")]
    NotUnitriangular,
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("torus element is not regular")]
    NotRegular,
    #[error("no admissible s in F_{p}^× for m = {m}")]
    FieldTooSmall { p: u32, m: usize },
    #[error("element is central")]
    NoncentralRequired,
    #[error("no conjugator found after {tried} candidates (exhaustive: {exhaustive})")]
    SearchExhausted { tried: usize, exhaustive: bool },
    #[error("not an element of SL_n(F_p): {0}")]
    NotSpecialLinear(String),
    #[error("matrices have different shapes or fields")]
    ShapeMismatch,
    #[error("only type A has a matrix model here, got {0}")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// A residue modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Self {
        debug_assert!(is_prime(p as u64));
        Fp {
            value: reduce(value, p as u64) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp {
            value: inv_mod(self.value as u64, self.p as u64) as u32,
            p: self.p,
        })
    }

    pub fn pow(self, e: i64) -> Fp {
        Fp {
            value: pow_signed(self.value as u64, e, self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp::new(self.value as i64 + o.value as i64, self.p)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp::new(self.value as i64 - o.value as i64, self.p)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp::new(self.value as i64 * o.value as i64 % self.p as i64, self.p)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::new(-(self.value as i64), self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An n×n matrix of determinant 1 over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SlMatrix {
    n: usize,
    p: u32,
    entries: Vec<u32>,
}

fn check_field(p: u32) -> Result<(), ChevalleyError> {
    if !is_prime(p as u64) || p >= 1 << 31 {
        return Err(GroupError::InvalidParameters(format!("{p} is not an admissible prime")).into());
    }
    Ok(())
}

impl SlMatrix {
    pub fn new(n: usize, p: u32, entries: Vec<u32>) -> Result<Self, ChevalleyError> {
        check_field(p)?;
        if n == 0 || entries.len() != n * n {
            return Err(ChevalleyError::NotSpecialLinear(format!("expected {} entries", n * n)));
        }
        if let Some(x) = entries.iter().find(|&&x| x >= p) {
            return Err(ChevalleyError::NotSpecialLinear(format!("{x} is not reduced mod {p}")));
        }
        let d = matrix::det(n, p, &entries);
        if d != 1 {
            return Err(ChevalleyError::NotSpecialLinear(format!("determinant {d}")));
        }
        Ok(SlMatrix { n, p, entries })
    }

    pub(crate) fn from_raw(n: usize, p: u32, entries: Vec<u32>) -> Self {
        debug_assert_eq!(matrix::det(n, p, &entries), 1);
        SlMatrix { n, p, entries }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        SlMatrix {
            n,
            p,
            entries: matrix::identity(n),
        }
    }

    /// `diag(d₀, …, d_{n−1})`; the product of the entries must be 1.
    pub fn diagonal(p: u32, diag: &[u32]) -> Result<Self, ChevalleyError> {
        let n = diag.len();
        let mut e = vec![0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            e[i * n + i] = d % p;
        }
        SlMatrix::new(n, p, e)
    }

    /// Comma-separated row-major residues, optionally bracketed; n is the
    /// square root of the entry count.
    pub fn parse(text: &str, p: u32) -> Result<Self, ChevalleyError> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let vals: Vec<i64> = body
            .split(',')
            .map(|t| t.trim().trim_matches(|c| c == '[' || c == ']').parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| ChevalleyError::NotSpecialLinear(format!("{text:?}: {e}")))?;
        let n = (vals.len() as f64).sqrt().round() as usize;
        if n * n != vals.len() {
            return Err(ChevalleyError::NotSpecialLinear(format!("{} entries is not a square", vals.len())));
        }
        SlMatrix::new(n, p, vals.into_iter().map(|v| reduce(v, p as u64) as u32).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &SlMatrix) -> SlMatrix {
        assert!(self.n == o.n && self.p == o.p, "shape mismatch");
        SlMatrix {
            n: self.n,
            p: self.p,
            entries: matrix::mul(self.n, self.p, &self.entries, &o.entries),
        }
    }

    pub fn inverse(&self) -> SlMatrix {
        SlMatrix {
            n: self.n,
            p: self.p,
            entries: matrix::inverse(self.n, self.p, &self.entries).expect("det 1"),
        }
    }

    /// `a⁻¹b⁻¹ab`.
    pub fn commutator(&self, b: &SlMatrix) -> SlMatrix {
        self.inverse().mul(&b.inverse()).mul(self).mul(b)
    }

    /// `x⁻¹·self·x`.
    pub fn conjugate_by(&self, x: &SlMatrix) -> SlMatrix {
        x.inverse().mul(self).mul(x)
    }

    pub fn is_identity(&self) -> bool {
        matrix::is_identity(self.n, &self.entries)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.entry(i, j) == 0))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && (1..self.n).all(|i| self.entry(i, i) == self.entry(0, 0))
    }

    pub fn diagonal_entries(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.entry(i, i)).collect()
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.entry(i, j) == u32::from(i == j)))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.entry(i, j) == u32::from(i == j)))
    }

    fn same_shape(&self, o: &SlMatrix) -> Result<(), ChevalleyError> {
        if self.n == o.n && self.p == o.p {
            Ok(())
        } else {
            Err(ChevalleyError::ShapeMismatch)
        }
    }
}

impl fmt::Display for SlMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&matrix::format(&self.entries))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    X,
    W,
    T,
}

impl std::str::FromStr for GeneratorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" => Ok(GeneratorKind::X),
            "w" => Ok(GeneratorKind::W),
            "t" => Ok(GeneratorKind::T),
            _ => Err(format!("unknown generator kind {s:?}")),
        }
    }
}

fn check_root(n: usize, (i, j): Root) -> Result<(), ChevalleyError> {
    if i == j || i >= n || j >= n {
        return Err(ChevalleyError::InvalidRoot(i, j, n));
    }
    Ok(())
}

fn x_raw(n: usize, p: u32, (i, j): Root, s: u32) -> SlMatrix {
    let mut e = matrix::identity(n);
    e[i * n + j] = s % p;
    SlMatrix { n, p, entries: e }
}

/// `x_α(s)`, `w_α(u) = x_α(u)x_{−α}(−u⁻¹)x_α(u)` or `t_α(u) = w_α(u)w_α(1)⁻¹`.
pub fn root_generator(n: usize, p: u32, kind: GeneratorKind, alpha: Root, s: u32) -> Result<SlMatrix, ChevalleyError> {
    check_field(p)?;
    check_root(n, alpha)?;
    let s = s % p;
    let w = |u: u32| {
        let neg_inv = p - inv_mod(u as u64, p as u64) as u32;
        let xa = x_raw(n, p, alpha, u);
        xa.mul(&x_raw(n, p, (alpha.1, alpha.0), neg_inv)).mul(&xa)
    };
    match kind {
        GeneratorKind::X => Ok(x_raw(n, p, alpha, s)),
        _ if s == 0 => Err(ChevalleyError::ZeroParameter),
        GeneratorKind::W => Ok(w(s)),
        GeneratorKind::T => Ok(w(s).mul(&w(1).inverse())),
    }
}

/// `α(t) = t_i / t_j` for diagonal t.
pub fn root_value(t: &SlMatrix, (i, j): Root) -> Result<u32, ChevalleyError> {
    if !t.is_diagonal() {
        return Err(ChevalleyError::NotDiagonal);
    }
    check_root(t.n, (i, j))?;
    let p = t.p as u64;
    Ok((t.entry(i, i) as u64 * inv_mod(t.entry(j, j) as u64, p) % p) as u32)
}

/// Positive roots of A_{n−1} ordered by height, then by decreasing
/// simple-root coordinates.
pub fn positive_roots(n: usize) -> Result<Vec<Root>, ChevalleyError> {
    if n < 2 {
        return Ok(vec![]);
    }
    let rs = crate::roots::build_root_system(Family::A, n - 1)?;
    rs.positive_roots().iter().map(|b| Ok(rs.type_a_pair(b)?)).collect()
}

/// Coefficients `s_α` with `u = Π_{α∈Σ⁺} x_α(s_α)` in [`positive_roots`] order.
pub fn unipotent_factor(u: &SlMatrix) -> Result<Vec<(Root, u32)>, ChevalleyError> {
    if !u.is_upper_unitriangular() {
        return Err(ChevalleyError::NotUnitriangular);
    }
    let (n, p) = (u.n, u.p);
    let mut rest = u.clone();
    let mut out = Vec::new();
    for alpha in positive_roots(n)? {
        let s = rest.entry(alpha.0, alpha.1);
        // Everything of lower height is already gone, so this entry is s_α.
        rest = x_raw(n, p, alpha, (p - s) % p).mul(&rest);
        out.push((alpha, s));
    }
    debug_assert!(rest.is_identity());
    Ok(out)
}

/// Ordered product `Π x_α(s_α)`.
pub fn unipotent_product(n: usize, p: u32, coeffs: &[(Root, u32)]) -> Result<SlMatrix, ChevalleyError> {
    let mut acc = SlMatrix::identity(n, p);
    for &(alpha, s) in coeffs {
        check_root(n, alpha)?;
        acc = acc.mul(&x_raw(n, p, alpha, s));
    }
    Ok(acc)
}

/// Regular iff `β(t) ≠ 1` for every positive root, i.e. distinct diagonal entries.
pub fn is_regular(t: &SlMatrix) -> Result<bool, ChevalleyError> {
    if !t.is_diagonal() {
        return Err(ChevalleyError::NotDiagonal);
    }
    for alpha in positive_roots(t.n)? {
        if root_value(t, alpha)? == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Centralizer form of regularity: no nontrivial upper unitriangular matrix
/// commutes with t. Enumerates U, so only for small `p^{n(n−1)/2}`.
pub fn centralizer_meets_u_trivially(t: &SlMatrix) -> Result<bool, ChevalleyError> {
    if !t.is_diagonal() {
        return Err(ChevalleyError::NotDiagonal);
    }
    let all = enumerate_unitriangular(t.n, t.p, Side::Upper, 1 << 20)?;
    Ok(all.iter().all(|u| u.is_identity() || t.mul(u) != u.mul(t)))
}

/// Every diagonal matrix of determinant 1 in SL_n(F_p), in lexicographic
/// order of the first n−1 diagonal entries.
pub fn torus(n: usize, p: u32) -> Result<Vec<SlMatrix>, ChevalleyError> {
    check_field(p)?;
    let mut out = Vec::new();
    let mut d = vec![1u32; n];
    loop {
        let prod = d[..n - 1].iter().fold(1u64, |a, &x| a * x as u64 % p as u64);
        d[n - 1] = inv_mod(prod, p as u64) as u32;
        out.push(SlMatrix::diagonal(p, &d)?);
        let mut k = 0;
        loop {
            if k + 1 >= n {
                return Ok(out);
            }
            d[k] += 1;
            if d[k] < p {
                break;
            }
            d[k] = 1;
            k += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularSequence {
    pub s: u32,
    pub lambda: Vec<i64>,
    pub elements: Vec<SlMatrix>,
}

/// `a(u) = Π_{α∈Π} t_α(u^{λ_α})`.
pub fn torus_weight_element(n: usize, p: u32, lambda: &[i64], u: u32) -> Result<SlMatrix, ChevalleyError> {
    let mut acc = SlMatrix::identity(n, p);
    for (k, &l) in lambda.iter().enumerate() {
        let v = pow_signed(u as u64, l, p as u64) as u32;
        acc = acc.mul(&root_generator(n, p, GeneratorKind::T, (k, k + 1), v)?);
    }
    Ok(acc)
}

/// `(a(sⁱ))_{i<m}` with every quotient `a(sⁱ)⁻¹a(sʲ)` regular, for the least
/// admissible s.
pub fn regular_sequence(r: &RootSystem, p: u32, m: usize) -> Result<RegularSequence, ChevalleyError> {
    check_field(p)?;
    if r.family != Family::A {
        return Err(ChevalleyError::UnsupportedFamily(r.to_string()));
    }
    let n = r.rank + 1;
    let lambda = r.lambda_weights();
    // β(a(s)) = s^{c_β}; quotients need s^{d·c_β} ≠ 1 for 0 < d < m.
    let exponents: Vec<i64> = r
        .positive_roots()
        .iter()
        .map(|b| r.weighted_pairing(&lambda, b))
        .collect::<Result<_, _>>()?;
    let admissible = |s: u64| {
        let ord = mult_order(s, p as u64) as i64;
        (1..m as i64).all(|d| exponents.iter().all(|&c| (d * c) % ord != 0))
    };
    let s = (1..p as u64)
        .find(|&s| admissible(s))
        .ok_or(ChevalleyError::FieldTooSmall { p, m })? as u32;
    let elements: Vec<SlMatrix> = (0..m)
        .map(|i| torus_weight_element(n, p, &lambda, pow_signed(s as u64, i as i64, p as u64) as u32))
        .collect::<Result<_, _>>()?;
    for i in 0..m {
        for j in i + 1..m {
            let q = elements[i].inverse().mul(&elements[j]);
            if !is_regular(&q)? {
                return Err(ChevalleyError::NotRegular);
            }
        }
    }
    Ok(RegularSequence { s, lambda, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, p: u32, e: &[u32]) -> SlMatrix {
        SlMatrix::new(n, p, e.to_vec()).unwrap()
    }

    #[test]
    fn generator_examples() {
        let x = root_generator(2, 5, GeneratorKind::X, (0, 1), 3).unwrap();
        assert_eq!(x, m(2, 5, &[1, 3, 0, 1]));
        let w = root_generator(2, 5, GeneratorKind::W, (0, 1), 1).unwrap();
        assert_eq!(w, m(2, 5, &[0, 1, 4, 0]));
        let t = root_generator(2, 5, GeneratorKind::T, (0, 1), 2).unwrap();
        assert_eq!(t, m(2, 5, &[2, 0, 0, 3]));
        assert_eq!(
            root_generator(2, 5, GeneratorKind::W, (0, 1), 0).unwrap_err(),
            ChevalleyError::ZeroParameter
        );
        assert!(matches!(
            root_generator(2, 5, GeneratorKind::X, (1, 1), 1),
            Err(ChevalleyError::InvalidRoot(1, 1, 2))
        ));
    }

    #[test]
    fn t_generators_are_diagonal() {
        for u in 1..7 {
            for alpha in [(0, 2), (2, 1), (1, 0)] {
                let t = root_generator(3, 7, GeneratorKind::T, alpha, u).unwrap();
                assert!(t.is_diagonal());
                assert_eq!(t.entry(alpha.0, alpha.0), u);
            }
        }
    }

    #[test]
    fn factor_examples() {
        assert!(unipotent_factor(&SlMatrix::identity(3, 5)).unwrap().iter().all(|&(_, s)| s == 0));
        assert_eq!(unipotent_factor(&m(2, 5, &[1, 3, 0, 1])).unwrap(), vec![((0, 1), 3)]);
        let u = m(3, 5, &[1, 1, 0, 0, 1, 1, 0, 0, 1]);
        let f = unipotent_factor(&u).unwrap();
        assert_eq!(f, vec![((0, 1), 1), ((1, 2), 1), ((0, 2), 4)]);
        assert_eq!(unipotent_product(3, 5, &f).unwrap(), u);
        assert_eq!(
            unipotent_factor(&m(2, 5, &[2, 0, 0, 3])).unwrap_err(),
            ChevalleyError::NotUnitriangular
        );
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&m(2, 5, &[2, 0, 0, 3])).unwrap());
        assert!(!is_regular(&SlMatrix::identity(2, 5)).unwrap());
        assert!(!is_regular(&SlMatrix::diagonal(5, &[2, 2, 4]).unwrap()).unwrap());
        assert_eq!(is_regular(&m(2, 5, &[1, 1, 0, 1])).unwrap_err(), ChevalleyError::NotDiagonal);
        for (n, p) in [(2, 5), (2, 7), (3, 5), (3, 3)] {
            for t in torus(n, p).unwrap() {
                assert_eq!(is_regular(&t).unwrap(), centralizer_meets_u_trivially(&t).unwrap(), "{t}");
            }
        }
        assert_eq!(torus(3, 5).unwrap().len(), 16);
        assert!(torus(3, 3).unwrap().iter().all(|t| !is_regular(t).unwrap()));
    }

    #[test]
    fn regular_sequences() {
        let a2: RootSystem = "A2".parse().unwrap();
        let seq = regular_sequence(&a2, 11, 4).unwrap();
        assert_eq!(seq.s, 2);
        assert_eq!(seq.lambda, vec![1, 1]);
        let pow2 = |i: i64| pow_signed(2, i, 11) as u32;
        for (i, a) in seq.elements.iter().enumerate() {
            let i = i as i64;
            assert_eq!(a.diagonal_entries(), vec![pow2(i), 1, pow2(-i)]);
        }
        assert_eq!(
            regular_sequence(&a2, 3, 4).unwrap_err(),
            ChevalleyError::FieldTooSmall { p: 3, m: 4 }
        );
        let a1: RootSystem = "A1".parse().unwrap();
        let seq = regular_sequence(&a1, 5, 2).unwrap();
        assert_eq!(seq.s, 2);
        let q = seq.elements[0].inverse().mul(&seq.elements[1]);
        assert_eq!(root_value(&q, (0, 1)).unwrap(), 4);
        let b2: RootSystem = "B2".parse().unwrap();
        assert!(matches!(regular_sequence(&b2, 11, 2), Err(ChevalleyError::UnsupportedFamily(_))));
    }

    #[test]
    fn parse_round_trip() {
        let x = SlMatrix::parse("[1,4,0,1]", 5).unwrap();
        assert_eq!(SlMatrix::parse(&x.to_string(), 5).unwrap(), x);
        assert!(SlMatrix::parse("1,2,3", 5).is_err());
        assert!(SlMatrix::parse("1,1,1,1", 5).is_err());
    }
}
