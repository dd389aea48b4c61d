//! Affine Cartesian codes over nested subfields of a finite field.
//!
//! The crate builds the evaluation codes AC_q(u, A) for A a product of nested
//! subfields F_1 ⊊ ⋯ ⊊ F_λ ⊆ F_q, computes their parameters, counts their
//! minimum-weight codewords in closed form and enumerates them explicitly as
//! orbits of the group F_q^* × Aff(A).
//!
//! ```
//! use nested_ac::{counting, domain::NestedProduct, gf::FieldCtx};
//! use std::sync::Arc;
//!
//! let f4 = Arc::new(FieldCtx::new(2, 2).unwrap());
//! let prod = NestedProduct::from_spec(f4, "2,2,4").unwrap();
//! let report = counting::count_minwt(&prod, 4).unwrap();
//! assert_eq!(report.total.to_string(), "360");
//! ```

pub mod codes;
pub mod counting;
pub mod domain;
pub mod error;
pub mod gf;
pub mod groups;
pub mod poly;
pub mod cli;

pub use error::{Error, Result};
