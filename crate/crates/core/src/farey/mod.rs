//! Exact model of the nonseparating curve graph of the torus and of the
//! once-punctured torus: the Farey graph on slopes `p/q`, with edges between
//! slopes of intersection number one.

pub mod axis;
pub mod bfs;
pub mod distance;
pub mod matrix;
pub mod slope;
pub mod thinness;

pub use axis::{
    farey_default_params, farey_tl, farey_tl_with, find_axis, AxisCertificate, FareyTl,
};
pub use bfs::{farey_ball_bfs, BallResult, FareyBall};
pub use distance::{farey_distance, farey_geodesic, farey_ladder};
pub use matrix::{classify_matrix, matrix_act, MatrixClass, ToralMatrix};
pub use slope::{canonicalize, intersection_number, Slope};
pub use thinness::thinness_audit;
