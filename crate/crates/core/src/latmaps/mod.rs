//! Maps between lattices and the procedures that classify them.

mod checks;
mod harness;
mod map;

pub use checks::{
    aip_fails_with, hom_oracle, interval_oracle, is_almost_interval_preserving, is_almost_interval_preserving_with,
    is_contractive, is_injective, is_interval_preserving, is_interval_preserving_with, is_lattice_hom,
    is_lattice_hom_with, is_positive, is_positive_sampled, is_surjective, sample_element, sequence_below, Probe,
    SeparationCertificate, DEFAULT_CAP,
};
pub use harness::{
    check_duality, check_property, maps_cone_onto_cone, random_factoring_instance, random_pushdown_square,
    verify_factoring, verify_pushdown_square, CommSquare, Coverage, Property,
};
pub use map::{adjoint, compose, embed, Element, LatticeMap, MapFile, MapKind, NormIndex, SequenceMap, SpaceDesc};
