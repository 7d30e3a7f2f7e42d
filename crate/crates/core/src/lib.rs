//! Exact characteristic classes of complete intersections in projective space.
//!
//! Fulton-Johnson, Chern-Schwartz-MacPherson and Milnor classes of
//! intersections of hypersurfaces in `P^n`, computed in the Chow ring
//! `Z[H]/(H^{n+1})` with exact rational arithmetic. Each Milnor class can be
//! obtained along several independent routes that are cross-checked against
//! one another.

pub mod bundle_calc;
pub mod chow_ring;
pub mod class_engine;
pub mod error;
pub mod identity_lab;
pub mod variety_model;

pub use bundle_calc::BundleChern;
pub use chow_ring::ChowClass;
pub use class_engine::{compute_report, ClassReport, Route, Verdict};
pub use error::{Error, Result};
pub use variety_model::{validate, CompleteIntersectionSpec, ValidSpec, ValidationErrors};
