//! Construction and evaluation of asymmetric CSS stabilizer codes built from
//! BCH and finite-geometry LDPC codes, together with the twirled
//! amplitude-damping/dephasing channel model and a Monte Carlo decoder
//! simulation.

pub mod channel;
pub mod codes;
pub mod css;
pub mod decoder;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod grm;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rng;
pub mod sim;

pub use channel::{
    apply_channel, asymmetry_approx, asymmetry_exact, bsc_crossovers, kraus_ops, pauli_from_total,
    pauli_twirl_closed, pauli_twirl_numeric, DensityMatrix, KrausSet, PauliChannel,
    RelaxationParams,
};
pub use codes::{
    bch_narrow_sense, code_from_defining_set, cyclic_eg_dual_root_set, cyclic_eg_root_set,
    eg_ldpc_type1, min_distance_exact, min_weight_outside, CyclicCode, DistanceInfo, LinearCode,
    Provenance,
};
pub use css::{
    asymmetric_bch_ldpc, asymmetric_eg_ldpc, check_nesting, closed_form_2d_params, css_construct,
    AsymmetricCssCode, ConstructionTag,
};
pub use decoder::{
    bit_flip_decode, bounded_distance_block_error, BitFlipConfig, BitFlipDecoder, DecodeOutcome,
    FlipRule,
};
pub use error::{Error, Result};
pub use fields::{builtin_primitive_poly, cyclotomic_coset, q_ary_weight, Field, FieldTower};
pub use geometry::{a_eg, n_eg, Flat, Geometry, IncidenceMatrix};
pub use grm::{grm_cyclic, grm_dual_order, FieldCode};
pub use io::{read_alist, verify_descriptor, write_alist, CodeDescriptor, VerifyReport};
pub use sim::{
    combine_error_rates, pe_x_closed, simulate_z, sweep, ChannelModel, SimCell, SimPlan,
    SimResult, StopRule, ZOutcome,
};
