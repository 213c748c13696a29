//! Model-free measurement error mitigation with subsystem-balanced
//! Pauli twirling.
//!
//! The crate covers the full pipeline at desk scale (up to 12 qubits):
//!
//! - [`pauli`]: Pauli-group indexing, commutator signs, products, and
//!   CX conjugation.
//! - [`noise`]: classical readout-noise transfer matrices (tensor
//!   product, CTMP-correlated, synthetic) and their reduced Pauli
//!   transfer matrices.
//! - [`twirl`]: random and subsystem-balanced twirling sets with their
//!   scaling factors.
//! - [`compile`]: measurement-transformation circuits (weight
//!   reduction, location shift) over nearest-neighbour CX gates.
//! - [`sim`]: statevector / density-matrix evolution with depolarizing
//!   and coherent XX gate noise, plus measurement sampling.
//! - [`mitigate`]: the ratio estimator, the tensor-product inversion
//!   baseline, and twirl-set error bounds.
//! - [`harness`]: a declarative, seeded experiment runner with CSV
//!   output.
//!
//! Conventions: qubit 1 is the least-significant index digit and the
//! leftmost character of operator strings; transfer matrices are
//! column-stochastic with `Lambda[k][j] = P(observe k | ideal j)`.

pub mod circuit;
pub mod compile;
pub mod error;
pub mod harness;
pub mod mitigate;
pub mod noise;
pub mod pauli;
pub mod seeding;
pub mod sim;
pub mod twirl;

pub use circuit::Circuit;
pub use compile::{basis_rotation, compile_mt, compile_to_weight, segment_decompose, MtPlan, Segment};
pub use error::{Error, Result};
pub use harness::{
    aggregate, ptm_dump, run_experiment, write_records_csv, write_summary_csv, ExperimentConfig,
    ExperimentId, Method, ResultRecord, StateKind, SummaryRow,
};
pub use mitigate::{
    error_bound_random, error_bound_subsystem, mitigated_estimate, noisy_expectation,
    tpn_baseline, BoundInputs, BoundReport, EstimatorConfig, ShotBudget,
};
pub use noise::{
    build_ctmp_lambda, build_tpn_lambda, lambda_to_ptm, mean_error_rate, sample_synthetic_lambda,
    split_ptm_by_trigger, tpn_ptm_entry, trigger_set, CtmpPairSpec, NoiseSpec, ReducedPTM,
    SingleQubitReadout, SyntheticNoiseSpec, TransferMatrix,
};
pub use pauli::{conjugate_by_cx, eta, pauli_mul, CxGate, PauliString, ZMask};
pub use sim::{
    basis_state, haar_state, measure_distribution, sample_counts, zero_state, GateNoiseParams,
    OutcomeDistribution, PureState,
};
pub use twirl::{full_twirl_set, random_twirl_set, sbpt_set, scaling_factor, twirled_ptm, TwirlSet};
