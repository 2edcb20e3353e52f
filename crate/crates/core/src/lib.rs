//! Frobenius descent for generalized Artin-Schreier extensions.
//!
//! For y^(p^s) + y = f(x) over K = F_{p^(2s)}, the Galois group is the
//! additive group G of roots of T^(p^s) + T in K. The fixed field of a
//! subgroup H ⊆ G descends to F_{p^t} exactly when H is stable under
//! a ↦ a^(p^t). This crate builds K with a discrete-log table, constructs G
//! and its subgroups explicitly, and decides stability.
//!
//! ```
//! use as_descent::report::{run, RunConfig};
//!
//! let cfg = RunConfig::new(5, 2).with_modulus(&[3, 1, 0, 1, 1]);
//! let report = run(&cfg).unwrap();
//! let mut stable = report.stable_sets(1, 1);
//! stable.sort();
//! assert_eq!(stable, vec![vec![39, 195, 351, 507], vec![117, 273, 429, 585]]);
//! ```

pub mod descent;
pub mod error;
pub mod field;
pub mod group;
pub mod linearized;
pub mod poly;
pub mod report;
pub mod subgroup;

pub use error::{Error, Result};
pub use field::{DLogTable, FFElem, Field, FieldSpec};
pub use subgroup::AdditiveSubgroup;
