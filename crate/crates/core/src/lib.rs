//! Exact arithmetic for ambiguous classes, genus theory and class-group
//! structure of quadratic fields.

pub mod arith;
pub mod bernoulli;
pub mod error;
pub mod filtration;
pub mod forms;
pub mod genus;
pub mod linalg;
pub mod module_structure;
pub mod normic;
pub mod quadfield;
pub mod structure;

use serde::{Deserialize, Serialize};

pub use bernoulli::{CyclotomicInt, DirichletCharacter};
pub use error::{Error, Result};
pub use filtration::{compute_filtration, FiltrationReport};
pub use forms::{class_group, FormClassGroup, QuadForm};
pub use module_structure::{DivisorProfile, SimModule};
pub use normic::{Place, SymbolVector};
pub use quadfield::{
    Ideal, PrimeIdeal, PrimeKey, QuadElement, QuadraticField, SplittingType,
};
pub use structure::ClassGroupStructure;

/// Narrow (totally positive principal ideals) or ordinary class group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Narrow,
    Ordinary,
}
