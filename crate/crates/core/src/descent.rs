//! Descent decisions: Frobenius action on subgroups of G, stability
//! verdicts, orbit structure, and the p mod 4 case analysis for s = 2.
//!
//! A subgroup H of G has a fixed field that descends to F_{p^t} exactly when
//! φ_t(H) = H, where φ_t(a) = a^(p^t).

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FFElem, Field};
use crate::linearized::subgroup_polynomial;
use crate::poly::pow_mod;
use crate::subgroup::AdditiveSubgroup;

/// Elementwise image φ_t(H).
pub fn frobenius_subgroup(h: &AdditiveSubgroup, t: u32) -> AdditiveSubgroup {
    let f = h.field();
    let gens: Vec<FFElem> = h.generators().iter().map(|&g| f.frobenius_fast(g, t)).collect();
    AdditiveSubgroup::span(f, &gens).expect("generators belong to the field")
}

/// Exponent view of φ_t(H) computed by multiplying discrete logs by p^t.
pub fn frobenius_exponents(h: &AdditiveSubgroup, t: u32) -> Vec<u64> {
    let f = h.field();
    let q1 = f.beta_order();
    let shift = pow_mod(f.p(), t as u64, q1) as u128;
    let mut out: Vec<u64> = h
        .exponents()
        .iter()
        .map(|&e| (e as u128 * shift % q1 as u128) as u64)
        .collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug)]
pub struct DescentVerdict {
    pub subgroup: AdditiveSubgroup,
    pub t: u32,
    pub stable: bool,
    pub image_exponents: Vec<u64>,
    /// p^t when the fixed field descends to F_{p^t}.
    pub descends_to: Option<u64>,
}

/// Decides whether the fixed field of `h` descends to F_{p^t}.
///
/// The verdict comes from the elementwise image. Two further routes must
/// agree with it: the exponent shortcut, and whether every coefficient of
/// the subgroup's linearized polynomial lies in F_{p^t}. Any disagreement
/// is reported as [`Error::OracleMismatch`].
pub fn is_descendable(h: &AdditiveSubgroup, t: u32) -> Result<DescentVerdict> {
    let f = h.field();
    if t == 0 || f.n() % t != 0 {
        return Err(Error::NotADivisor { t, n: f.n() });
    }
    let image = frobenius_subgroup(h, t);
    let stable = image == *h;

    let shortcut = frobenius_exponents(h, t);
    if shortcut != image.exponents() {
        return Err(Error::OracleMismatch(format!(
            "exponent shortcut disagrees with elementwise image of {h}"
        )));
    }
    let coeffs_fixed = subgroup_polynomial(h)
        .coeffs()
        .iter()
        .all(|&c| f.frobenius_fast(c, t) == c);
    if coeffs_fixed != stable {
        return Err(Error::OracleMismatch(format!(
            "polynomial certificate ({coeffs_fixed}) disagrees with set stability ({stable}) for {h}"
        )));
    }
    Ok(DescentVerdict {
        subgroup: h.clone(),
        t,
        stable,
        image_exponents: image.exponents().to_vec(),
        descends_to: stable.then(|| f.p().pow(t)),
    })
}

/// Cycle decomposition of φ_t acting on a list of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStructure {
    #[serde(skip)]
    pub t: u32,
    pub fixed: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// Cycles of length three or more, each starting at its smallest index.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub longer_cycles: Vec<Vec<usize>>,
}

impl OrbitStructure {
    pub fn has_longer_cycles(&self) -> bool {
        !self.longer_cycles.is_empty()
    }
}

/// Splits `subgroups` into φ_t-fixed points, swapped pairs, and (flagged)
/// longer cycles. Every image must itself be in the list.
pub fn orbit_structure(subgroups: &[AdditiveSubgroup], t: u32) -> Result<OrbitStructure> {
    let index: HashMap<&[u64], usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, h)| (h.exponents(), i))
        .collect();
    let mut image = Vec::with_capacity(subgroups.len());
    for (i, h) in subgroups.iter().enumerate() {
        let img = frobenius_exponents(h, t);
        match index.get(img.as_slice()) {
            Some(&j) => image.push(j),
            None => return Err(Error::ImageNotInList { index: i }),
        }
    }

    let mut out = OrbitStructure {
        t,
        fixed: Vec::new(),
        pairs: Vec::new(),
        longer_cycles: Vec::new(),
    };
    let mut seen = vec![false; subgroups.len()];
    for start in 0..subgroups.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = image[start];
        while cur != start {
            if seen[cur] {
                // a map between equal-size finite sets that is not injective
                return Err(Error::ImageNotInList { index: cur });
            }
            seen[cur] = true;
            cycle.push(cur);
            cur = image[cur];
        }
        match cycle.len() {
            1 => out.fixed.push(start),
            2 => out.pairs.push((start, cycle[1])),
            _ => out.longer_cycles.push(cycle),
        }
    }
    Ok(out)
}

/// ((p-1)/2)! mod p when it squares to -1 (p = 1 mod 4), otherwise `None`.
pub fn wilson_sqrt_minus_one(p: u64) -> Result<Option<u64>> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let w = (1..=(p - 1) / 2).fold(1u64, |acc, k| acc * k % p);
    Ok((w * w % p == p - 1).then_some(w))
}

/// Which branch of the s = 2 analysis a prime falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    CharTwo,
    OneModFour { wilson_root: u64 },
    ThreeModFour,
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::CharTwo => "CHAR_TWO",
            CaseTag::OneModFour { .. } => "ONE_MOD_FOUR",
            CaseTag::ThreeModFour => "THREE_MOD_FOUR",
        }
    }

    pub fn wilson_root(&self) -> Option<u64> {
        match self {
            CaseTag::OneModFour { wilson_root } => Some(*wilson_root),
            _ => None,
        }
    }

    /// Both square roots of -1 in F_p, Wilson root first.
    pub fn sqrt_minus_one_pair(&self, p: u64) -> Vec<u64> {
        self.wilson_root().map_or_else(Vec::new, |w| vec![w, p - w])
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_case(p: u64) -> CaseTag {
    if p == 2 {
        return CaseTag::CharTwo;
    }
    match wilson_sqrt_minus_one(p) {
        Ok(Some(w)) if p % 4 == 1 => CaseTag::OneModFour { wilson_root: w },
        _ => CaseTag::ThreeModFour,
    }
}

/// A generator of a φ_1-stable line, with its eigenvalue: φ_1(a) = root · a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StableGenerator {
    pub exp: u64,
    pub root: u64,
}

/// β^((p²+1)(p+1)/4) and β^(3(p²+1)(p+1)/4) in F_{p^4} for p = 1 mod 4.
/// Each spans a φ_1-stable line of G.
pub fn invariant_subgroup_generators(field: &Field) -> Result<(FFElem, FFElem)> {
    let p = field.p();
    if field.n() != 4 || p % 4 != 1 {
        return Err(Error::WrongCaseTag { p, n: field.n() });
    }
    let e = (p * p + 1) * (p + 1) / 4;
    Ok((field.exp_fast(e), field.exp_fast(3 * e)))
}

/// The F_p scalar u with φ_1(a) = u · a, if there is one.
pub fn frobenius_eigenvalue(field: &Field, a: FFElem) -> Option<u64> {
    if a.is_zero() {
        return None;
    }
    let image = field.frobenius_fast(a, 1);
    (0..field.p()).find(|&u| field.scale_fast(u, a) == image)
}

/// The generators from [`invariant_subgroup_generators`] paired with their
/// eigenvalues, each checked to be a square root of -1.
pub fn invariant_generator_roots(field: &Field) -> Result<[StableGenerator; 2]> {
    let (a, b) = invariant_subgroup_generators(field)?;
    let p = field.p();
    let pair = |x: FFElem| -> Result<StableGenerator> {
        let root = frobenius_eigenvalue(field, x)
            .filter(|u| u * u % p == p - 1)
            .ok_or_else(|| {
                Error::OracleMismatch(format!(
                    "β^{} is not an eigenvector of φ_1 with eigenvalue a square root of -1",
                    field.dlog_fast(x)
                ))
            })?;
        Ok(StableGenerator {
            exp: field.dlog_fast(x),
            root,
        })
    };
    Ok([pair(a)?, pair(b)?])
}
