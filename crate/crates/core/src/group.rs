//! The root group G = {a : a^(p^s) + a = 0} of T^(p^s) + T inside
//! F_{p^(2s)}, and the subfields F_{p^t}.
//!
//! Each object has a closed-form construction from β-exponents and a
//! brute-force scan over the field; the two are kept independent so they
//! can check each other.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::subgroup::AdditiveSubgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildMethod {
    BruteForce,
    Formula,
}

impl fmt::Display for BuildMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuildMethod::BruteForce => "brute_force",
            BuildMethod::Formula => "formula",
        })
    }
}

/// The group G, with the construction it came from.
#[derive(Clone, Debug)]
pub struct GroupG {
    s: u32,
    built_by: BuildMethod,
    group: AdditiveSubgroup,
}

impl GroupG {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn built_by(&self) -> BuildMethod {
        self.built_by
    }

    pub fn subgroup(&self) -> &AdditiveSubgroup {
        &self.group
    }
}

impl Deref for GroupG {
    type Target = AdditiveSubgroup;

    fn deref(&self) -> &AdditiveSubgroup {
        &self.group
    }
}

fn check_degree(field: &Field, s: u32) -> Result<()> {
    if field.n() != 2 * s || s == 0 {
        return Err(Error::DegreeMismatch { n: field.n(), s });
    }
    Ok(())
}

fn check_divisor(field: &Field, t: u32) -> Result<()> {
    if t == 0 || field.n() % t != 0 {
        return Err(Error::NotADivisor { t, n: field.n() });
    }
    Ok(())
}

/// Scans every element of F_{p^(2s)} for roots of T^(p^s) + T.
pub fn group_g_bruteforce(field: &Arc<Field>, s: u32) -> Result<GroupG> {
    check_degree(field, s)?;
    let roots = field
        .elements()
        .filter(|&a| field.add_fast(field.frobenius_fast(a, s), a).is_zero());
    Ok(GroupG {
        s,
        built_by: BuildMethod::BruteForce,
        group: AdditiveSubgroup::from_elements(field, roots)?,
    })
}

/// Nonzero β-exponents of G for odd p: the odd multiples of (p^s + 1)/2
/// below p^(2s) - 1.
pub fn group_g_exponents(p: u64, s: u32) -> Result<Vec<u64>> {
    if p == 2 {
        return Err(Error::OddPrimeRequired(p));
    }
    let ps = p.pow(s);
    let half = (ps + 1) / 2;
    Ok((0..ps - 1).map(|j| (2 * j + 1) * half).collect())
}

/// Builds G from its exponents, for odd p. Closure of the resulting set is
/// validated, not assumed.
pub fn group_g_formula(field: &Arc<Field>, s: u32) -> Result<GroupG> {
    check_degree(field, s)?;
    let exps = group_g_exponents(field.p(), s)?;
    let elems = std::iter::once(field.zero()).chain(exps.iter().map(|&e| field.exp_fast(e)));
    Ok(GroupG {
        s,
        built_by: BuildMethod::Formula,
        group: AdditiveSubgroup::from_elements(field, elems)?,
    })
}

/// Nonzero β-exponents of F_{p^t} inside F_{p^n}: multiples of
/// (p^n - 1)/(p^t - 1).
pub fn subfield_exponents(field: &Field, t: u32) -> Result<Vec<u64>> {
    check_divisor(field, t)?;
    let sub_order = field.p().pow(t) - 1;
    let step = field.beta_order() / sub_order;
    Ok((0..sub_order).map(|m| m * step).collect())
}

/// The subfield F_{p^t} from its exponent formula.
pub fn subfield(field: &Arc<Field>, t: u32) -> Result<AdditiveSubgroup> {
    let exps = subfield_exponents(field, t)?;
    let elems = std::iter::once(field.zero()).chain(exps.iter().map(|&e| field.exp_fast(e)));
    AdditiveSubgroup::from_elements(field, elems)
}

/// The subfield F_{p^t} as the fixed points of a ↦ a^(p^t).
pub fn subfield_bruteforce(field: &Arc<Field>, t: u32) -> Result<AdditiveSubgroup> {
    check_divisor(field, t)?;
    let fixed = field
        .elements()
        .filter(|&a| field.frobenius_fast(a, t) == a);
    AdditiveSubgroup::from_elements(field, fixed)
}

/// The literal intersection F_{p^t} ∩ G.
///
/// Trivial whenever p is odd and t divides s. In characteristic 2 it is not:
/// 1 is always a root of T^(2^s) + T.
pub fn kt_intersect_g(field: &Arc<Field>, s: u32, t: u32) -> Result<AdditiveSubgroup> {
    let g = group_g_bruteforce(field, s)?;
    subfield_bruteforce(field, t)?.intersect(&g)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}
