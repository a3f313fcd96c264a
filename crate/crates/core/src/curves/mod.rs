//! Plane curves over ℚ: sextic branch curves, their singular points, and
//! dimension counts for families of them.

mod echelon;
pub mod families;
pub mod form;
pub mod germ;
pub mod linsys;
pub mod local;
pub mod poly;
pub mod restrict;
pub mod univariate;

pub use echelon::{sparse_rank, Echelon};
pub use families::{verify_family, FamilyError, FamilyReport, FamilyRow};
pub use form::{CurveError, HomogeneousForm, Line, ProjPoint, Projectivity};
pub use germ::{mult_tree, tangent_cone, Direction, MultNode};
pub use linsys::{
    linear_system_dim, orbit_dim_count, stabilizer_constraints, stabilizer_dim, ConditionSystem, Family, Marking,
};
pub use local::{
    an_type_at, an_type_of_germ, detect_33_germ, detect_33_point, intersection_number, milnor_number,
    splitting_invariants, AnType, ThreeThree,
};
pub use poly::Poly;
pub use restrict::{restrict_to_line, LineRestriction};
