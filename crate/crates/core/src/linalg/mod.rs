//! Small exact linear algebra: F₂ elimination and Smith normal form.

pub mod f2;
pub mod snf;
