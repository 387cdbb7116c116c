//! Concrete institutions: classical propositional logic, finite
//! first-order relational structures, and the affine finite-field site
//! with units coefficients.

pub mod fields;
pub mod fo;
pub mod prop;

pub use fields::{build_field_site, field_object, units_group, FieldSite, PrimeComponent, SPEC_Z};
pub use fo::{
    enumerate_homomorphisms, eval_fo, parse_fo_formula, FoFormula, FoInstitution, RelSignature,
    RelStructure, FO_SIGNATURE,
};
pub use prop::{eval_formula, parse_formula, PropFormula, PropInstitution, Valuation};

#[cfg(test)]
mod tests;
