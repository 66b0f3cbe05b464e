//! Curves on the punctured torus as normal coordinates on a triangulation
//! whose vertices are the punctures.

pub mod bracket;
pub mod forget;
pub mod geometry;
pub mod intersection;
pub mod normal;
pub mod punctures;
pub mod straight;
pub mod trace;
pub mod triangulation;

pub use bracket::{
    adjacent, distance_bracket, is_nonseparating, BracketBudget, DistanceBracket, LowerCertificate,
};
pub use forget::{forget_punctures, forget_to, Forgotten};
pub use geometry::V2;
pub use intersection::geometric_intersection;
pub use normal::{NormalCurve, Token};
pub use punctures::PunctureSet;
pub use straight::{straight_curve, straight_curves};
pub use trace::Polyline;
pub use triangulation::{Edge, Side, Triangulation};
