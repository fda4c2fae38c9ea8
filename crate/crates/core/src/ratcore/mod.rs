//! Exact rational arithmetic and the linear feasibility kernel shared by
//! every decision procedure.

pub mod linalg;
pub mod rat;
pub mod simplex;
pub mod vertices;

pub use linalg::{in_span, RatMat, RatVec};
pub use rat::{int, parse_rat, rat, Rat};
pub use simplex::{
    lp_feasible, minimize, minimize_linear_over_max, AffineTerm, Feasibility, FeasibilityProblem,
    Infeasibility, LpOutcome, MinMax, VarBound,
};
pub use vertices::box_vertices;
