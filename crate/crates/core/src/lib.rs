//! Decision procedures for admissibility of finite groups over number fields.
//!
//! The crate is layered bottom-up: exact arithmetic ([`arith`]), number
//! fields and their completions ([`numfield`]), finite groups ([`groups`]),
//! Hasse-invariant bookkeeping ([`brauer`]) and the verdict engine
//! ([`admissibility`]).

pub mod admissibility;
pub mod arith;
pub mod brauer;
pub mod error;
pub mod groups;
pub mod numfield;

pub use arith::modp::{factor_mod_p, FpPoly};
pub use arith::poly::Poly;
pub use brauer::{BrauerClass, LocalDegreeProfile};
pub use error::{Error, Result};
pub use groups::{FiniteGroup, MetacyclicPresentation, Subgroup};
pub use numfield::{LocalPlace, NumberField};
