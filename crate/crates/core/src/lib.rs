//! Finite loop calculus: validated Cayley tables, translation and inner
//! mapping groups, commutator-associator machinery, central series and
//! nilpotency, free-term evaluation and identity checking — everything
//! verifiable by brute force at small orders.

pub mod analysis;
pub mod calculus;
pub mod catalog;
pub mod cayley;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod laws;
pub mod series;
pub mod report;
pub mod terms;
pub mod mappings;

pub use cayley::{chein_double, direct_product, quotient, CayleyLoop, Elem, GroupTable, Quotient, ORDER_CAP};
pub use error::{LoopError, Result};
