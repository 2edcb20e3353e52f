//! Linearized (additive) polynomials: sums of c_i T^(p^i).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::field::{FFElem, Field};
use crate::subgroup::AdditiveSubgroup;

/// Σ c_i T^(p^i) over a finite field, stored by the index i.
#[derive(Clone, Debug)]
pub struct LinearizedPoly {
    field: Arc<Field>,
    coeffs: Vec<FFElem>,
}

impl LinearizedPoly {
    /// The polynomial T.
    pub fn identity(field: &Arc<Field>) -> Self {
        LinearizedPoly {
            field: Arc::clone(field),
            coeffs: vec![field.one()],
        }
    }

    /// `coeffs()[i]` is the coefficient of T^(p^i).
    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    /// Nonzero terms keyed by their actual degree p^i.
    pub fn terms(&self) -> BTreeMap<u64, FFElem> {
        let p = self.field.p();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (p.pow(i as u32), c))
            .collect()
    }

    pub fn degree(&self) -> u64 {
        self.field.p().pow(self.coeffs.len() as u32 - 1)
    }

    pub fn eval(&self, a: FFElem) -> FFElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (i, &c)| {
                f.add_fast(acc, f.mul_fast(c, f.frobenius_fast(a, i as u32)))
            })
    }
}

/// The monic polynomial ∏_{h ∈ H} (T - h), built one generator at a time:
/// if A vanishes exactly on V and g ∉ V, then A^p - A(g)^(p-1) A vanishes
/// exactly on V + F_p g.
pub fn subgroup_polynomial(h: &AdditiveSubgroup) -> LinearizedPoly {
    let f = h.field();
    let p = f.p();
    let mut poly = LinearizedPoly::identity(f);
    for &g in h.generators() {
        let scale = f.pow(poly.eval(g), p as i64 - 1).expect("same field");
        let mut next = vec![f.zero(); poly.coeffs.len() + 1];
        for (i, &c) in poly.coeffs.iter().enumerate() {
            next[i + 1] = f.add_fast(next[i + 1], f.frobenius_fast(c, 1));
            next[i] = f.add_fast(next[i], f.neg_fast(f.mul_fast(scale, c)));
        }
        poly.coeffs = next;
    }
    poly
}
