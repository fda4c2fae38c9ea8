//! Order continuity witnesses, band projections, and the example bundles.

mod bands;
mod examples;
mod witness;

pub use bands::{band_project, check_band_density, BandProjection, BandSupport};
pub use examples::{
    alternating_modulus_not_in_image, build_example, example_53_lower_bound, example_53_without_cross_term,
    permanence_experiment, random_iplh_chain, run_example, ClaimCheck, ClaimsFile, ExampleBundle, ExpectedClaim,
    EXAMPLE_DEPTH, EXAMPLE_IDS,
};
pub use witness::{verify_disjoint_witness, verify_increasing_non_cauchy, NonOcWitness, TermRule, WitnessKind};
