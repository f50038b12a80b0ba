//! Exact algebra behind the rational Whitney tower classification of links.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlinalg`]: integer Smith normal form, kernels, cokernels, F_2 rank.
//! * [`freelie`]: the free Lie algebra in the Lyndon basis, `L_1 ⊗ L_{n+1}`,
//!   the bracket map and its kernel `D_n`, the quasi-Lie algebra and the
//!   Levine quotient of `D_{2k}`.
//! * [`treecalc`]: decorated unitrivalent trees, twisted trees, tree sums and
//!   the summation map `eta`.
//! * [`groupwords`]: free group words, Magnus expansion, lower central
//!   series classes and longitude assembly from tree data.
//! * [`milnorlink`]: PD codes, Wirtinger presentations, Milnor invariants and
//!   higher-order Sato-Levine invariants.
//! * [`classify`]: structure tables for the graded quotients and the theorem
//!   checklist used by the `verify` subcommand.

pub mod classify;
pub mod error;
pub mod exactlinalg;
pub mod freelie;
pub mod groupwords;
pub mod limits;
pub mod milnorlink;
pub mod treecalc;

pub use error::{Error, Result};
