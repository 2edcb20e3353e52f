//! Arithmetic in F_p and F_{p^n} = F_p[x]/(P(x)) backed by a discrete-log
//! table of the primitive root β (the residue class of `x`).
//!
//! Elements are stored as their coefficient vector packed into a single
//! integer, digit `i` (base p) holding the coefficient of `x^i`. This is a
//! bijection with canonical coefficient vectors, so equality of packed values
//! is equality of elements. Every element also carries the identity of the
//! field it was made in, which is how [`Error::FieldMismatch`] is detected.

use std::sync::atomic::{AtomicU32, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{self, pow_mod, FpPoly};

/// Default upper bound on the number of field elements.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 24;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

/// The defining data of F_{p^n}: characteristic, degree and a monic
/// primitive modulus in ascending coefficient order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// The modulus rendered as `x^4+x^3+x+3`.
    pub fn modulus_string(&self) -> String {
        poly::format_poly(&self.modulus, "x")
    }
}

/// An element of a particular [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    field: u32,
    packed: u32,
}

impl FFElem {
    pub fn is_zero(&self) -> bool {
        self.packed == 0
    }

    /// Base-p packing of the coefficient vector; unique within a field.
    pub fn packed(&self) -> u32 {
        self.packed
    }
}

/// Bidirectional map between nonzero elements and exponents of β.
#[derive(Clone, Debug)]
pub struct DLogTable {
    // indexed by packed element; slot 0 (the zero element) is unused
    exp_of: Vec<u32>,
    // indexed by exponent
    elem_of: Vec<u32>,
}

impl DLogTable {
    /// Number of nonzero elements covered, i.e. the order of β.
    pub fn len(&self) -> usize {
        self.elem_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elem_of.is_empty()
    }

    /// Number of distinct elements listed by exponent.
    pub fn distinct_entries(&self) -> usize {
        let mut seen = vec![false; self.exp_of.len()];
        self.elem_of
            .iter()
            .filter(|&&e| !std::mem::replace(&mut seen[e as usize], true))
            .count()
    }
}

/// A finite field F_{p^n} with its discrete-log table. Immutable once built.
#[derive(Clone, Debug)]
pub struct Field {
    id: u32,
    spec: FieldSpec,
    size: u64,
    table: DLogTable,
}

impl Field {
    /// Builds F_{p^n} from a modulus given in ascending coefficient order,
    /// using [`DEFAULT_SIZE_CAP`].
    pub fn new(p: u64, n: u32, modulus: &[i64]) -> Result<Field> {
        Self::with_cap(p, n, modulus, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(p: u64, n: u32, modulus: &[i64], cap: u64) -> Result<Field> {
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::NotMonic {
                degree: n,
                reason: "degree must be at least 1".into(),
            });
        }
        let size = field_size(p, n, cap)?;
        if modulus.len() != n as usize + 1 {
            return Err(Error::NotMonic {
                degree: n,
                reason: format!("expected {} coefficients, got {}", n + 1, modulus.len()),
            });
        }
        let modulus: Vec<u64> = modulus
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        if modulus[n as usize] != 1 {
            return Err(Error::NotMonic {
                degree: n,
                reason: format!("leading coefficient is {}", modulus[n as usize]),
            });
        }
        let spec = FieldSpec { p, n, modulus };
        let table = build_table(&spec, size)?;
        Ok(Field {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            spec,
            size,
            table,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    /// Number of elements, p^n.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Multiplicative order of β, p^n - 1.
    pub fn beta_order(&self) -> u64 {
        self.size - 1
    }

    pub fn table(&self) -> &DLogTable {
        &self.table
    }

    fn wrap(&self, packed: u32) -> FFElem {
        FFElem {
            field: self.id,
            packed,
        }
    }

    fn check(&self, a: FFElem) -> Result<FFElem> {
        if a.field == self.id {
            Ok(a)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn contains(&self, a: FFElem) -> bool {
        a.field == self.id
    }

    pub fn zero(&self) -> FFElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FFElem {
        self.wrap(1)
    }

    /// The primitive root β, the residue class of `x`.
    pub fn beta(&self) -> FFElem {
        self.wrap(self.table.elem_of[1 % self.table.len()])
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, c: i64) -> FFElem {
        self.wrap(c.rem_euclid(self.spec.p as i64) as u32)
    }

    /// Element with the given coefficients (ascending, at most n of them;
    /// missing high coefficients are zero). Coefficients are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FFElem> {
        if coeffs.len() > self.spec.n as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.spec.n
            )));
        }
        let p = self.spec.p as i64;
        let packed = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p as u64 + c.rem_euclid(p) as u64);
        Ok(self.wrap(packed as u32))
    }

    /// Element with packed index `packed` (see [`FFElem::packed`]).
    pub fn from_packed(&self, packed: u32) -> Result<FFElem> {
        if (packed as u64) < self.size {
            Ok(self.wrap(packed))
        } else {
            Err(Error::InvalidElement(format!("packed index {packed} out of range")))
        }
    }

    /// The length-n coefficient vector of `a`.
    pub fn coeffs(&self, a: FFElem) -> Result<Vec<u64>> {
        self.check(a)?;
        Ok(self.coeffs_of(a))
    }

    pub(crate) fn coeffs_of(&self, a: FFElem) -> Vec<u64> {
        let p = self.spec.p;
        let mut rest = a.packed as u64;
        (0..self.spec.n)
            .map(|_| {
                let d = rest % p;
                rest /= p;
                d
            })
            .collect()
    }

    /// All p^n elements in packed order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.size as u32).map(move |i| self.wrap(i))
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_fast(a, b))
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_fast(a, self.neg_fast(b)))
    }

    pub fn neg(&self, a: FFElem) -> Result<FFElem> {
        self.check(a)?;
        Ok(self.neg_fast(a))
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_fast(a, b))
    }

    pub fn inv(&self, a: FFElem) -> Result<FFElem> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q1 = self.beta_order();
        let e = self.dlog_fast(a);
        Ok(self.exp_fast((q1 - e) % q1))
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        let b_inv = self.inv(b)?;
        self.mul(a, b_inv)
    }

    /// `a^k` for any integer `k`; negative powers go through the inverse.
    pub fn pow(&self, a: FFElem, k: i64) -> Result<FFElem> {
        self.check(a)?;
        if a.is_zero() {
            return match k {
                0 => Ok(self.one()),
                k if k > 0 => Ok(self.zero()),
                _ => Err(Error::DivisionByZero),
            };
        }
        let q1 = self.beta_order() as i128;
        let e = (self.dlog_fast(a) as i128 * k as i128).rem_euclid(q1);
        Ok(self.exp_fast(e as u64))
    }

    /// The Frobenius map a ↦ a^(p^t).
    pub fn frobenius(&self, a: FFElem, t: u32) -> Result<FFElem> {
        self.check(a)?;
        Ok(self.frobenius_fast(a, t))
    }

    /// Exponent e in [0, p^n - 2] with β^e = a.
    pub fn dlog(&self, a: FFElem) -> Result<u64> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.dlog_fast(a))
    }

    /// β^e, with e reduced mod p^n - 1.
    pub fn from_exp(&self, e: i64) -> FFElem {
        let q1 = self.beta_order() as i64;
        self.exp_fast(e.rem_euclid(q1) as u64)
    }

    /// Product computed by schoolbook multiplication and reduction modulo
    /// P(x), without the log table.
    pub fn mul_by_reduction(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        let a = FpPoly::new(self.spec.p, self.coeffs(a)?);
        let b = FpPoly::new(self.spec.p, self.coeffs(b)?);
        let m = FpPoly::new(self.spec.p, self.spec.modulus.iter().copied());
        let r = a.mul(&b).rem(&m);
        let coeffs: Vec<i64> = r.coeffs().iter().map(|&c| c as i64).collect();
        self.from_coeffs(&coeffs)
    }

    pub(crate) fn add_fast(&self, a: FFElem, b: FFElem) -> FFElem {
        let p = self.spec.p as u32;
        if p == 2 {
            return self.wrap(a.packed ^ b.packed);
        }
        let (mut x, mut y) = (a.packed, b.packed);
        let mut out = 0u32;
        let mut place = 1u32;
        while x != 0 || y != 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        self.wrap(out)
    }

    pub(crate) fn neg_fast(&self, a: FFElem) -> FFElem {
        self.scale_fast(self.spec.p - 1, a)
    }

    /// Multiplication by an element of the prime field, digit by digit.
    pub(crate) fn scale_fast(&self, c: u64, a: FFElem) -> FFElem {
        let p = self.spec.p as u32;
        let c = (c % p as u64) as u32;
        let mut x = a.packed;
        let mut out = 0u32;
        let mut place = 1u32;
        while x != 0 {
            out += ((x % p) * c % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        self.wrap(out)
    }

    pub(crate) fn mul_fast(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let q1 = self.beta_order();
        self.exp_fast((self.dlog_fast(a) + self.dlog_fast(b)) % q1)
    }

    pub(crate) fn frobenius_fast(&self, a: FFElem, t: u32) -> FFElem {
        if a.is_zero() {
            return a;
        }
        let q1 = self.beta_order();
        let shift = pow_mod(self.spec.p, t as u64, q1);
        self.exp_fast((self.dlog_fast(a) as u128 * shift as u128 % q1 as u128) as u64)
    }

    pub(crate) fn dlog_fast(&self, a: FFElem) -> u64 {
        self.table.exp_of[a.packed as usize] as u64
    }

    pub(crate) fn exp_fast(&self, e: u64) -> FFElem {
        self.wrap(self.table.elem_of[e as usize])
    }
}

fn field_size(p: u64, n: u32, cap: u64) -> Result<u64> {
    let cap = cap.min(u32::MAX as u64);
    match p.checked_pow(n) {
        Some(q) if q <= cap => Ok(q),
        _ => Err(Error::SizeCapExceeded { p, n, cap }),
    }
}

/// Walks the powers of x modulo P, recording each one. Primitivity is
/// certified by visiting all p^n - 1 nonzero residues before returning to 1.
fn build_table(spec: &FieldSpec, size: u64) -> Result<DLogTable> {
    let p = spec.p;
    let n = spec.n as usize;
    let order = size - 1;
    let mut exp_of = vec![u32::MAX; size as usize];
    let mut elem_of = Vec::with_capacity(order as usize);
    let mut cur = vec![0u64; n];
    cur[0] = 1;
    let pack = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32;
    let irreducible = || FpPoly::new(p, spec.modulus.iter().copied()).is_irreducible();

    for e in 0..order {
        let packed = pack(&cur);
        if packed == 0 {
            return Err(Error::NotPrimitive {
                reducible: true,
                order: 0,
                expected: order,
            });
        }
        if exp_of[packed as usize] != u32::MAX {
            return Err(Error::NotPrimitive {
                reducible: !irreducible(),
                order: e,
                expected: order,
            });
        }
        exp_of[packed as usize] = e as u32;
        elem_of.push(packed);

        // cur <- x * cur mod P
        let top = cur[n - 1];
        cur.rotate_right(1);
        cur[0] = 0;
        for (c, &m) in cur.iter_mut().zip(&spec.modulus) {
            *c = (*c + p - top * m % p) % p;
        }
    }
    debug_assert_eq!(pack(&cur), 1);
    Ok(DLogTable { exp_of, elem_of })
}
