//! Exact computation of the epimorphism order on 2-bridge knots through
//! parsings of expanded even continued fractions.

pub mod bounds;
pub mod enumeration;
pub mod error;
pub mod parsing;
pub mod rationals;
pub mod seams;
pub mod vectors;
pub mod verify;

pub use bounds::{c_m, crossing_bound, ek_upper_bound};
pub use enumeration::{
    build_catalog, ek, enumerate_knots, EkMode, EkValue, Engine, KnotCatalog, SearchConfig,
};
pub use error::{Error, Result};
pub use parsing::{
    admits_parsing, find_parsings, is_strictly_greater, minimal_upper_bound, smaller_knots,
    two_connector_decompose, Parsing, TwoConnectorForm,
};
pub use rationals::{canonical_fraction, eval_cf, even_expansion, EvenCf, Fraction, KnotClass};
pub use seams::{
    all_negations, find_seams, lift_construction, negate_segments, parsings_wrt, SeamSet,
};
pub use vectors::{
    canonical_vector, connector_vector, contract, crossing_number, expand, phi, phi_inverse,
    torus_vector, SEvenVector, VectorClass,
};
pub use verify::{verify_all, ReproductionReport};
