//! PAC experiments with exact error, brute-force VC dimension, and the two
//! application studies.

mod apps;
mod pac;
mod targets;
mod vcdim;

pub use apps::{application1_experiment, application2_experiment, App1Config, App1Report, App2Config, App2Report};
pub use pac::{
    binomial_floor, pac_verify, resolve_sample_size, AnyTarget, BoundSource, DistributionSpec, ExperimentConfig,
    LearnerId, PacReport, TargetSpec, TrialResult,
};
pub use targets::{mixture_support, random_circuit, random_dna, random_monomial};
pub use vcdim::{concept_class, vc_cardinality_check, vc_dim_bruteforce, CardinalityCheck, MAX_VC_DOMAIN};
