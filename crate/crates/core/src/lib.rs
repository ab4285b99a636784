//! Simulation and verification toolkit for a two-particle annihilation
//! interferometer that exhibits a Hardy-type nonlocality contradiction.
//!
//! A positron and an electron each traverse their own Mach-Zehnder-style
//! interferometer. The arms intersect at annihilation points where joint
//! occupancy converts the pair into a photon, and the second beam splitter
//! of each interferometer can be inserted or removed per experiment. The
//! crate evolves the joint state through that optical pipeline, extracts
//! Born-rule outcome statistics, checks the chain of zero-probability
//! exclusions against every deterministic local-hidden-variable strategy,
//! and reproduces the ceiling of the standard two-qubit Hardy scenario for
//! numerical contrast.
//!
//! Modules:
//!
//! - [`statevec`] — sparse two-particle + photon state vectors, Born
//!   probabilities, Schmidt/entanglement analysis.
//! - [`interferometer`] — the optical elements (BS1, removable BS2,
//!   annihilation) and the four canonical experiments.
//! - [`hardy`] — the exclusion checks, exhaustive LHV strategy
//!   enumeration, and the contradiction verdict.
//! - [`bound`] — the nonmaximal two-qubit Hardy ceiling (≈9%) via a
//!   derivative-free penalty search.
//! - [`expfile`] — a strict line-oriented experiment file format.
//!
//! ```
//! use hardy_core::interferometer::{run_canonical, CanonicalExperiment};
//! use hardy_core::statevec::{JointOutcome, Port};
//!
//! // With both second splitters removed, the d detectors never fire
//! // together; with both inserted they do so on a quarter of trials.
//! let dd = JointOutcome::detections(Port::D, Port::D);
//! let removed = run_canonical(CanonicalExperiment::PqOutOut)
//!     .born_distribution()
//!     .unwrap();
//! assert_eq!(removed.probability(dd), 0.0);
//!
//! let inserted = run_canonical(CanonicalExperiment::PqInIn)
//!     .born_distribution()
//!     .unwrap();
//! assert!((inserted.probability(dd) - 0.25).abs() < 1e-12);
//!
//! // No deterministic local strategy survives the three exclusions
//! // while firing both d detectors, so the verdict is a contradiction.
//! let verdict = hardy_core::verify(std::f64::consts::FRAC_1_SQRT_2).unwrap();
//! assert!(verdict.contradiction);
//! assert_eq!(verdict.lhv_max, 0.0);
//! ```

pub mod bound;
pub mod expfile;
pub mod hardy;
pub mod interferometer;
pub mod statevec;

pub use expfile::{parse_experiment, serialize_experiment, ExperimentDoc};
pub use hardy::{verify, Constraints, HardyVerdict, LhvStrategy};
pub use interferometer::{
    run_experiment, BsSetting, CanonicalExperiment, ExperimentConfig, Scheme,
};
pub use statevec::{Amplitude, BasisKet, JointOutcome, OutcomeDistribution, StateVector};
