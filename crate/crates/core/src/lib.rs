//! Symbolic engine for Z_n-graded Grassmann algebras and the multi-qudit
//! states built from them.

pub mod algebra;
pub mod boson;
pub mod entangle;
pub mod error;
pub mod ledger;
pub mod qstate;

pub use algebra::{Context, Element, GradeConfig, Monomial, PhaseTable, Variable};
pub use error::{Error, Result};
