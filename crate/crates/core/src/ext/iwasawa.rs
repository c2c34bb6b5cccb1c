use serde::Serialize;

use super::ExtError;
use crate::group::{FiniteGroup, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Premise {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IwasawaCertificate {
    pub premises: Vec<Premise>,
    /// Commutator width of G.
    pub n: usize,
    /// Derived length of B.
    pub m: usize,
    pub k_min: usize,
    pub bound: u64,
    pub holds: bool,
}

/// Checks that G is perfect of commutator width N, A is normal and
/// symmetric, B is a solvable subgroup of derived length M and A·B = G, then
/// compares the least k with `Aᵏ = G` against `(4N)^M`.
pub fn iwasawa_certificate(g: &FiniteGroup, a: &SubsetMask, b: &SubsetMask) -> Result<IwasawaCertificate, ExtError> {
    let mut premises = Vec::new();
    let mut require = |name: &str, holds: bool| -> Result<(), ExtError> {
        premises.push(Premise {
            name: name.to_string(),
            holds,
        });
        if holds {
            Ok(())
        } else {
            Err(ExtError::PremiseViolation(name.to_string()))
        }
    };
    require("G is perfect", g.derived_subgroup().is_full())?;
    require("A is normal", g.is_normal_set(a))?;
    require("A is symmetric", g.is_symmetric(a))?;
    require("B is a subgroup", g.is_subgroup(b))?;
    let m = g.derived_length(b);
    require("B is solvable", m.is_some())?;
    require("A·B = G", g.product_sets(a, b)?.is_full())?;
    let n = g.commutator_width();
    let m = m.expect("checked");
    let bound = (4 * n as u64).saturating_pow(m as u32);
    let k_min = g.covering_power(a, g.order() + 1)?;
    let Some(k_min) = k_min else {
        return Err(ExtError::PremiseViolation("A generates G".into()));
    };
    Ok(IwasawaCertificate {
        premises,
        n,
        m,
        k_min,
        bound,
        holds: k_min as u64 <= bound,
    })
}
