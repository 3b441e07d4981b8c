pub mod certify;
pub mod constants;
pub mod distance;
pub mod error;
pub mod geodesic;
pub mod group;
pub mod hardy;
pub mod oracle;
pub mod plane_gauge;
pub mod polytope;
pub mod scalar;

pub use error::{Error, Result};
pub use geodesic::{cc_distance, cc_distance_origin, cc_distance_to_plane, geodesic_point, ratio_g, GeodesicParams};
pub use group::{group_inv, group_mul, horizontal_frame, kaplan_gauge, tangent_plane, Plane, Point};
pub use hardy::{minimize_quotient, quotient, trial_sequence, Grid, GridFunction, WeightKind};
pub use polytope::{Halfspace, Polytope};
