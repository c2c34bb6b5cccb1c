use std::fmt;
use std::path::PathBuf;

use crate::arith::is_prime;

use super::GroupError;

/// Description of a concrete finite group.
///
/// The textual form produced by `Display` is the grammar accepted by
/// [`crate::cli::parse_group_spec`]; inline sources (tables and index lists
/// supplied programmatically) have no textual form and print as `<inline>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// Z/kZ.
    Cyclic(u32),
    /// Z/d₁ × … × Z/d_r.
    Abelian(Vec<u32>),
    Symmetric(u32),
    Alternating(u32),
    /// SL_n(F_p).
    SpecialLinear { n: u32, p: u32 },
    /// F_pⁿ ⋊ SL_n(F_p) with (v,f)·(u,g) = (v + f(u), fg).
    Semidirect { n: u32, p: u32 },
    /// Z/p ×_h H for a 2-cocycle h on the base group.
    CocycleExt {
        p: u32,
        base: Box<GroupSpec>,
        cocycle: CocycleSource,
    },
    /// G / N for a normal subgroup N of the parent.
    Quotient {
        parent: Box<GroupSpec>,
        normal: NormalSource,
    },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleSource {
    /// Cocycle file: `p <p>` header then `x y value` lines.
    File(PathBuf),
    /// Values indexed by `x * |H| + y` over base-group element indices.
    Table(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalSource {
    /// Subset file, one element canonical form per line.
    File(PathBuf),
    /// Element indices in the parent group.
    Indices(Vec<u32>),
    Center,
    Derived,
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn quotient(parent: GroupSpec, normal: NormalSource) -> Self {
        GroupSpec::Quotient {
            parent: Box::new(parent),
            normal,
        }
    }

    /// Checks parameter ranges recursively.
    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |msg: String| Err(GroupError::InvalidParameters(msg));
        match self {
            GroupSpec::Cyclic(k) if *k == 0 => bad("Cyc order must be positive".into()),
            GroupSpec::Abelian(ds) if ds.is_empty() => bad("Ab needs at least one factor".into()),
            GroupSpec::Abelian(ds) if ds.contains(&0) => {
                bad("Ab factors must be positive".into())
            }
            GroupSpec::Symmetric(0) | GroupSpec::Alternating(0) => {
                bad("permutation degree must be positive".into())
            }
            GroupSpec::SpecialLinear { n, p } | GroupSpec::Semidirect { n, p } => {
                if *n == 0 {
                    bad("matrix size must be positive".into())
                } else if !is_prime(*p as u64) {
                    bad(format!("{p} is not prime"))
                } else if *p >= 1 << 31 {
                    bad(format!("modulus {p} too large"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::CocycleExt { p, base, .. } => {
                if !is_prime(*p as u64) {
                    return bad(format!("{p} is not prime"));
                }
                base.validate()
            }
            GroupSpec::Quotient { parent, .. } => parent.validate(),
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    /// Group order when it follows from the parameters alone.
    pub fn expected_order(&self) -> Option<u128> {
        let factorial = |n: u32| (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
        match self {
            GroupSpec::Cyclic(k) => Some(*k as u128),
            GroupSpec::Abelian(ds) => ds.iter().try_fold(1u128, |a, &d| a.checked_mul(d as u128)),
            GroupSpec::Symmetric(n) => factorial(*n),
            GroupSpec::Alternating(n) => factorial(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            GroupSpec::SpecialLinear { n, p } => sl_order(*n, *p),
            GroupSpec::Semidirect { n, p } => {
                sl_order(*n, *p)?.checked_mul((*p as u128).checked_pow(*n)?)
            }
            GroupSpec::CocycleExt { p, base, .. } => base.expected_order()?.checked_mul(*p as u128),
            GroupSpec::Quotient { .. } => None,
            GroupSpec::Product(a, b) => a.expected_order()?.checked_mul(b.expected_order()?),
        }
    }
}

/// |SL_n(F_p)| = p^{n(n−1)/2} · ∏_{i=2..n} (pⁱ − 1).
pub fn sl_order(n: u32, p: u32) -> Option<u128> {
    let p = p as u128;
    let mut acc = p.checked_pow(n * n.saturating_sub(1) / 2)?;
    for i in 2..=n {
        acc = acc.checked_mul(p.checked_pow(i)? - 1)?;
    }
    Some(acc)
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "Cyc({k})"),
            GroupSpec::Abelian(ds) => write!(f, "Ab({})", join(ds)),
            GroupSpec::Symmetric(n) => write!(f, "Sym({n})"),
            GroupSpec::Alternating(n) => write!(f, "Alt({n})"),
            GroupSpec::SpecialLinear { n, p } => write!(f, "SL({n},{p})"),
            GroupSpec::Semidirect { n, p } => write!(f, "Semidirect({n},{p})"),
            GroupSpec::CocycleExt { p, base, cocycle } => match cocycle {
                CocycleSource::File(path) => {
                    write!(f, "CocycleExt({p},{base},{})", path.display())
                }
                CocycleSource::Table(_) => write!(f, "CocycleExt({p},{base},<inline>)"),
            },
            GroupSpec::Quotient { parent, normal } => match normal {
                NormalSource::File(path) => write!(f, "Quotient({parent},{})", path.display()),
                NormalSource::Indices(_) => write!(f, "Quotient({parent},<inline>)"),
                NormalSource::Center => write!(f, "Quotient({parent},center)"),
                NormalSource::Derived => write!(f, "Quotient({parent},derived)"),
            },
            GroupSpec::Product(a, b) => write!(f, "Product({a},{b})"),
        }
    }
}
