//! Stable translation lengths of torus maps on curve graphs.
//!
//! * [`farey`]: exact Farey-graph backend (distances, geodesics, certified
//!   translation lengths of SL(2,Z)).
//! * [`hypcore`]: bounds shared by every backend.

pub mod dynamics;
pub mod error;
pub mod farey;
pub mod finecurves;
pub mod hypcore;
pub mod lab;
pub mod mapclass;
pub mod rational;
pub mod tricurves;

pub use error::{Error, Result};
