//! Mapping classes rel a finite invariant set, translation lengths and axes
//! in the curve graph of the punctured torus.

pub mod word;

pub use word::{act_homology, is_invariant, puncture_permutation, MappingClassRelP};
pub mod tl;

pub use tl::{
    axis_candidates, axis_search, orbit, orbit_brackets, tl_bracket, AxisSearch,
    PuncturedAxisCertificate,
};
