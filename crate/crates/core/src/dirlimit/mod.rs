//! Direct systems, their colimits on computable models, and the checks
//! that make the standard construction concrete.

mod category;
mod colimit;
mod cone;
mod system;
mod validate;

pub use category::CategoryTag;
pub use colimit::{
    colimit_lattice_op, colimit_norm, elements_equal, find_op_discrepancy, lattice_hom_edges, CertifiedLimit,
    ColimitElement, Discrepancy, EqualityMode, LatticeOp, LatticeOpResult, NormBracket,
};
pub use cone::{
    build_factoring_map, check_factoring, check_psi_ip_iff_zero, degenerate_factoring, degenerate_limit,
    promote_limit, random_ip_chain, small_directed_posets, truncated_psi, validate_cone, verify_structure, Cone,
    ConeLegs, DegenerateLimit, FactoringMap,
};
pub use system::{
    constant_tail_inclusion, inclusion_matrix, model_leg, ChainGenerator, DirectSystem, EdgeFile, FinitePoset,
    IndexFile, IndexKind, SystemFile,
};
pub use validate::validate_system;
