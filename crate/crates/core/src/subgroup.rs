//! F_p-subspaces of F_{p^n}, viewed as additive subgroups.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FFElem, Field};

/// Default bound on the number of subspaces [`all_subspaces`] will produce.
pub const DEFAULT_ENUM_CAP: u64 = 100_000;

/// An additive subgroup of a finite field, i.e. an F_p-subspace.
///
/// Identity is the sorted list of discrete logs of the nonzero elements
/// (the "exponent view"), which is also how subgroups are ordered and printed.
#[derive(Clone)]
pub struct AdditiveSubgroup {
    field: Arc<Field>,
    // sorted by packed index, zero first
    elements: Vec<FFElem>,
    generators: Vec<FFElem>,
    exponents: Vec<u64>,
}

impl AdditiveSubgroup {
    pub fn trivial(field: &Arc<Field>) -> Self {
        Self::assemble(field, vec![field.zero()], Vec::new())
    }

    /// The F_p-span of `gens`. Dependent generators are dropped, so the
    /// stored generator list is always a basis.
    pub fn span(field: &Arc<Field>, gens: &[FFElem]) -> Result<Self> {
        if gens.iter().any(|&g| !field.contains(g)) {
            return Err(Error::FieldMismatch);
        }
        let mut members: HashSet<FFElem> = HashSet::from([field.zero()]);
        let mut elements = vec![field.zero()];
        let mut basis = Vec::new();
        for &g in gens {
            if members.contains(&g) {
                continue;
            }
            extend_span(field, &mut elements, g);
            members.extend(elements.iter().copied());
            basis.push(g);
        }
        Ok(Self::assemble(field, elements, basis))
    }

    /// Validates that `elems` is closed under addition and F_p-scaling and
    /// wraps it. Generators are chosen greedily in increasing exponent order,
    /// so the first one is always the element of smallest discrete log.
    pub fn from_elements(field: &Arc<Field>, elems: impl IntoIterator<Item = FFElem>) -> Result<Self> {
        let set: HashSet<FFElem> = elems.into_iter().collect();
        if set.iter().any(|&a| !field.contains(a)) {
            return Err(Error::FieldMismatch);
        }
        if !set.contains(&field.zero()) {
            return Err(Error::NotASubgroup("missing zero".into()));
        }
        let mut nonzero: Vec<FFElem> = set.iter().copied().filter(|a| !a.is_zero()).collect();
        nonzero.sort_by_key(|&a| field.dlog_fast(a));

        let mut members: HashSet<FFElem> = HashSet::from([field.zero()]);
        let mut elements = vec![field.zero()];
        let mut basis = Vec::new();
        for g in nonzero {
            if members.contains(&g) {
                continue;
            }
            if elements.len() as u64 * field.p() > set.len() as u64 {
                return Err(Error::NotASubgroup(format!(
                    "{} elements is not a power of {}",
                    set.len(),
                    field.p()
                )));
            }
            extend_span(field, &mut elements, g);
            if let Some(stray) = elements.iter().find(|a| !set.contains(a)) {
                return Err(Error::NotASubgroup(format!(
                    "not closed: span reaches element {:?}",
                    field.coeffs_of(*stray)
                )));
            }
            members.extend(elements.iter().copied());
            basis.push(g);
        }
        if elements.len() != set.len() {
            return Err(Error::NotASubgroup("set is not a subspace".into()));
        }
        Ok(Self::assemble(field, elements, basis))
    }

    fn assemble(field: &Arc<Field>, mut elements: Vec<FFElem>, generators: Vec<FFElem>) -> Self {
        elements.sort();
        let mut exponents: Vec<u64> = elements
            .iter()
            .filter(|a| !a.is_zero())
            .map(|&a| field.dlog_fast(a))
            .collect();
        exponents.sort_unstable();
        AdditiveSubgroup {
            field: Arc::clone(field),
            elements,
            generators,
            exponents,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn elements(&self) -> &[FFElem] {
        &self.elements
    }

    pub fn generators(&self) -> &[FFElem] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: the zero element is always present.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Sorted discrete logs of the nonzero elements.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// The nonzero element of smallest discrete log, if any.
    pub fn canonical_generator(&self) -> Option<FFElem> {
        self.exponents.first().map(|&e| self.field.exp_fast(e))
    }

    pub fn contains(&self, a: FFElem) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &AdditiveSubgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn intersect(&self, other: &AdditiveSubgroup) -> Result<AdditiveSubgroup> {
        if !Arc::ptr_eq(&self.field, &other.field) && self.field.spec() != other.field.spec() {
            return Err(Error::FieldMismatch);
        }
        let common: Vec<FFElem> = self
            .elements
            .iter()
            .copied()
            .filter(|&a| other.contains(a))
            .collect();
        AdditiveSubgroup::from_elements(&self.field, common)
    }
}

impl PartialEq for AdditiveSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.field.contains(other.field.zero()) && self.exponents == other.exponents
    }
}

impl Eq for AdditiveSubgroup {}

impl fmt::Debug for AdditiveSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveSubgroup")
            .field("dim", &self.dim())
            .field("exponents", &self.exponents)
            .finish()
    }
}

impl fmt::Display for AdditiveSubgroup {
    /// Appendix style: `{0, β^39, β^195, β^351, β^507}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{0")?;
        for e in &self.exponents {
            write!(f, ", β^{e}")?;
        }
        write!(f, "}}")
    }
}

/// elements <- elements + F_p * g
fn extend_span(field: &Field, elements: &mut Vec<FFElem>, g: FFElem) {
    let base = elements.clone();
    for c in 1..field.p() {
        let cg = field.scale_fast(c, g);
        elements.extend(base.iter().map(|&a| field.add_fast(a, cg)));
    }
}

/// The (p^dim - 1)/(p - 1) subgroups of order p of `group`, each listed with
/// its smallest-exponent element as generator and sorted by that exponent.
pub fn order_p_subgroups(group: &AdditiveSubgroup) -> Vec<AdditiveSubgroup> {
    let field = group.field();
    let mut covered: HashSet<FFElem> = HashSet::new();
    let mut out = Vec::new();
    for &e in group.exponents() {
        let a = field.exp_fast(e);
        if covered.contains(&a) {
            continue;
        }
        let line: Vec<FFElem> = (0..field.p()).map(|c| field.scale_fast(c, a)).collect();
        covered.extend(line.iter().copied());
        out.push(AdditiveSubgroup::assemble(field, line, vec![a]));
    }
    out
}

/// Gaussian binomial coefficient [n choose k]_q, or `None` on overflow.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q.checked_pow(n - i)? - 1;
        let den = q.checked_pow(i + 1)? - 1;
        acc = acc.checked_mul(num)? / den;
    }
    Some(acc)
}

/// All F_p-subspaces of dimension `d` inside `group`, sorted by exponent view.
///
/// Subspaces are enumerated through their reduced row-echelon bases in the
/// coordinates of `group`'s generators, so each appears exactly once.
pub fn all_subspaces(group: &AdditiveSubgroup, d: u32, cap: u64) -> Result<Vec<AdditiveSubgroup>> {
    let s = group.dim() as u32;
    if d > s {
        return Err(Error::InvalidDimension { d, s });
    }
    let p = group.field().p();
    let count = gaussian_binomial(s, d, p).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::EnumerationCapExceeded { count, cap });
    }
    let field = group.field();
    let basis = group.generators();
    let mut out = Vec::with_capacity(count as usize);

    for pivots in combinations(s as usize, d as usize) {
        // free slots: (row, column) with column > pivot[row] and not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                (pc + 1..s as usize)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; s as usize]; d as usize];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&digits) {
                rows[r][c] = v;
            }
            let gens: Vec<FFElem> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(basis)
                        .fold(field.zero(), |acc, (&c, &b)| field.add_fast(acc, field.scale_fast(c, b)))
                })
                .collect();
            let span = AdditiveSubgroup::span(field, &gens)?;
            // regenerate with canonical (smallest-exponent-first) generators
            out.push(AdditiveSubgroup::from_elements(field, span.elements.iter().copied())?);
            if !increment(&mut digits, p) {
                break;
            }
        }
    }
    out.sort_by(|a, b| a.exponents.cmp(&b.exponents));
    Ok(out)
}

fn increment(digits: &mut [u64], base: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
