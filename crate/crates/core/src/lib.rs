//! Bound states of ultra-short one-dimensional potentials.
//!
//! A particle bound by a potential confined to `[0, dx]` spends at most
//! about 17.4% of its time inside the well, and its binding energy is capped
//! by a constant times `ħ²/(2m·dx²)`. This crate computes those bounds
//! ([`paper_method`]), checks them against exact solvers ([`oracles`],
//! [`fd_solver`]) and maps where they hold ([`validation`]).
//!
//! ```
//! use ultrashort::{paper_method::PaperBounds, units::PhysicalContext};
//!
//! let b = PaperBounds::new(5.0, &PhysicalContext::electron()).unwrap();
//! assert!((b.e_bound_recomputed * 1e3 - 0.43543).abs() < 1e-4);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod fd_solver;
pub mod oracles;
pub mod paper_method;
pub mod potentials;
pub mod units;
pub mod validation;
