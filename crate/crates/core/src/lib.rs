//! Homological deviation of structures from theories in pluggable logics.
//!
//! The crate builds slice categories of model categories, assembles the
//! chain and cochain complexes spanned by nondegenerate nerve chains with
//! functor coefficients, computes exact integer homology via Smith normal
//! form, and reports errancy, Euler characteristics, curvature hierarchies
//! and quasi-model verdicts.

pub mod deviation;
pub mod error;
pub mod fincat;
pub mod homalg;
pub mod institution;
pub mod instances;
pub mod simplicial;

pub use error::{Error, Result};
pub use fincat::{CategoryAnalysis, FinCategory, FunctorData, SliceResult};
pub use homalg::{EulerData, HomologyGroup, HomologyResult, IntMatrix, SmithForm};
pub use institution::{Institution, SpectrumView, TheoryState};
pub use simplicial::{ChainComplex, CoefficientSystem, NerveChain, PresentedGroup, Variance};

/// Schema tag carried by every JSON artifact this crate reads or writes.
pub const SCHEMA: &str = "devhom/1";
