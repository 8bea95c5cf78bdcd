//! Executable constructions on finitely-presented categories: limits and
//! colimits by exhaustive search, ends of bifunctors, the combinators of a
//! symmetric monoidal closed structure, and the synthesis of a colimit of `d`
//! as the end `Γ = ∫_X X^(Lim X^d)`, with every equation along the way checked
//! at runtime and recorded in a [`Transcript`].

#![allow(clippy::needless_range_loop)]

pub mod category;
pub mod cocompletion;
pub mod diagram;
pub mod ends;
pub mod error;
pub mod fincat;
pub mod instances;
pub mod limits;
pub mod smcc;
pub mod transport;
pub mod transcript;

pub use category::{Category, Enumerable, Opposite};
pub use diagram::{Diagram, FinFunctor, FunctorData};
pub use error::{CategoryViolation, Error, Result};
pub use fincat::{validate_category, ArrIx, FinCategory, FinCategoryBuilder, ObjIx, RawCategory};
pub use limits::{Cocone, Cone, ConeData, LimitingCone, Limits};
pub use smcc::{Element, Smcc};
pub use transcript::{Check, Transcript};
