//! The optical elements and the four canonical experiments.
//!
//! Each particle enters its interferometer on path `s`, meets the fixed
//! 50/50 splitter BS1 (`|s⟩ → (|b⟩ + i|a⟩)/√2`), crosses the annihilation
//! plane, and then meets the removable splitter BS2. With BS2 in place at
//! transmissivity `t` (reflectivity `r = √(1−t²)`):
//!
//! ```text
//! |a⟩ → t|c⟩ + i·r|d⟩        |b⟩ → t|d⟩ + i·r|c⟩
//! ```
//!
//! With BS2 removed the paths continue straight: `a → c`, `b → d`. At the
//! annihilation plane, joint occupancy of `b⁺b⁻` converts to a photon at
//! `Q` and (in scheme A only) `a⁺a⁻` to a photon at `P`, amplitude copied
//! verbatim.
//!
//! The notation `E(P,Q; +out,-out)` names an experiment by its
//! intersection points and per-arm BS2 settings. The four canonical
//! experiments are the configurations `(A, out, out)`, `(B, in, out)`,
//! `(B, out, in)` and `(A, in, in)`, all at `t = 1/√2`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::statevec::{Arm, BasisKet, PathLabel, PhotonSite, StateVector};

/// Whether a removable BS2 is inserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BsSetting {
    In,
    Out,
}

impl fmt::Display for BsSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BsSetting::In => write!(f, "in"),
            BsSetting::Out => write!(f, "out"),
        }
    }
}

/// Interferometer geometry: scheme A intersects at both `P` and `Q`,
/// scheme B only at `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    A,
    B,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::A => write!(f, "A"),
            Scheme::B => write!(f, "B"),
        }
    }
}

/// Errors from the optical operations.
#[derive(Debug, Clone, PartialEq)]
pub enum PipelineError {
    /// A term's path does not belong to the stage the element acts on.
    WrongStage {
        element: &'static str,
        ket: BasisKet,
    },
    /// A photon term reached the annihilation plane a second time.
    InvalidStage { ket: BasisKet },
    /// A numeric parameter is out of range.
    Parameter { name: &'static str, value: f64 },
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::WrongStage { element, ket } => {
                write!(f, "{element}: unexpected support on {ket}")
            }
            PipelineError::InvalidStage { ket } => {
                write!(f, "annihilation input already contains {ket}")
            }
            PipelineError::Parameter { name, value } => {
                write!(f, "parameter {name} out of range: {value}")
            }
        }
    }
}

impl std::error::Error for PipelineError {}

/// One experiment: geometry, per-arm BS2 settings, and BS2 transmissivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub scheme: Scheme,
    pub plus_setting: BsSetting,
    pub minus_setting: BsSetting,
    transmissivity: f64,
}

impl ExperimentConfig {
    /// Configuration at the canonical 50/50 transmissivity `1/√2`.
    pub fn new(scheme: Scheme, plus_setting: BsSetting, minus_setting: BsSetting) -> Self {
        ExperimentConfig {
            scheme,
            plus_setting,
            minus_setting,
            transmissivity: std::f64::consts::FRAC_1_SQRT_2,
        }
    }

    /// Same configuration at a custom transmissivity in `[0, 1]`.
    pub fn with_transmissivity(mut self, t: f64) -> Result<Self, PipelineError> {
        check_transmissivity(t)?;
        self.transmissivity = t;
        Ok(self)
    }

    pub fn transmissivity(&self) -> f64 {
        self.transmissivity
    }

    /// Derived reflectivity `√(1−t²)`.
    pub fn reflectivity(&self) -> f64 {
        reflectivity(self.transmissivity)
    }
}

impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sites = match self.scheme {
            Scheme::A => "P,Q",
            Scheme::B => "Q",
        };
        write!(
            f,
            "E({sites}; +{},-{})",
            self.plus_setting, self.minus_setting
        )
    }
}

fn check_transmissivity(t: f64) -> Result<(), PipelineError> {
    if !(0.0..=1.0).contains(&t) || t.is_nan() {
        return Err(PipelineError::Parameter {
            name: "transmissivity",
            value: t,
        });
    }
    Ok(())
}

fn reflectivity(t: f64) -> f64 {
    (1.0 - t * t).max(0.0).sqrt()
}

/// The four experiments of the nonlocality argument, in their standard
/// order. Aliased `eq1` through `eq4` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalExperiment {
    /// `E(P,Q; +out,-out)` — both splitters removed.
    PqOutOut,
    /// `E(Q; +in,-out)`.
    QInOut,
    /// `E(Q; +out,-in)`.
    QOutIn,
    /// `E(P,Q; +in,-in)` — both splitters inserted.
    PqInIn,
}

impl CanonicalExperiment {
    pub const ALL: [CanonicalExperiment; 4] = [
        CanonicalExperiment::PqOutOut,
        CanonicalExperiment::QInOut,
        CanonicalExperiment::QOutIn,
        CanonicalExperiment::PqInIn,
    ];

    pub fn config(self) -> ExperimentConfig {
        match self {
            CanonicalExperiment::PqOutOut => {
                ExperimentConfig::new(Scheme::A, BsSetting::Out, BsSetting::Out)
            }
            CanonicalExperiment::QInOut => {
                ExperimentConfig::new(Scheme::B, BsSetting::In, BsSetting::Out)
            }
            CanonicalExperiment::QOutIn => {
                ExperimentConfig::new(Scheme::B, BsSetting::Out, BsSetting::In)
            }
            CanonicalExperiment::PqInIn => {
                ExperimentConfig::new(Scheme::A, BsSetting::In, BsSetting::In)
            }
        }
    }

    /// Short command-line alias, `eq1` … `eq4`.
    pub fn alias(self) -> &'static str {
        match self {
            CanonicalExperiment::PqOutOut => "eq1",
            CanonicalExperiment::QInOut => "eq2",
            CanonicalExperiment::QOutIn => "eq3",
            CanonicalExperiment::PqInIn => "eq4",
        }
    }
}

impl fmt::Display for CanonicalExperiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.config())
    }
}

impl FromStr for CanonicalExperiment {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq1" => Ok(CanonicalExperiment::PqOutOut),
            "eq2" => Ok(CanonicalExperiment::QInOut),
            "eq3" => Ok(CanonicalExperiment::QOutIn),
            "eq4" => Ok(CanonicalExperiment::PqInIn),
            _ => Err(()),
        }
    }
}

fn arm_paths(ket: &BasisKet) -> Option<(PathLabel, PathLabel)> {
    match ket {
        BasisKet::Pair { plus, minus } => Some((*plus, *minus)),
        BasisKet::Photon(_) => None,
    }
}

/// The fixed first beam splitters: `|s±⟩ → (|b±⟩ + i|a±⟩)/√2` on both
/// arms at once. Input must be supported on `|s⁺s⁻⟩`.
pub fn bs1(state: &StateVector) -> Result<StateVector, PipelineError> {
    for (ket, _) in state.terms() {
        match arm_paths(ket) {
            Some((PathLabel::S, PathLabel::S)) => {}
            _ => {
                return Err(PipelineError::WrongStage {
                    element: "BS1",
                    ket: *ket,
                })
            }
        }
    }
    let half = Complex64::new(0.5, 0.0);
    let i_half = Complex64::new(0.0, 0.5);
    Ok(state.map_terms(|_, amp| {
        vec![
            (BasisKet::pair(PathLabel::B, PathLabel::B), amp * half),
            (BasisKet::pair(PathLabel::B, PathLabel::A), amp * i_half),
            (BasisKet::pair(PathLabel::A, PathLabel::B), amp * i_half),
            (BasisKet::pair(PathLabel::A, PathLabel::A), amp * -half),
        ]
    }))
}

/// The annihilation plane. Joint occupancy of `b⁺b⁻` becomes a photon at
/// `Q`; in scheme A, `a⁺a⁻` becomes a photon at `P`. Amplitudes transfer
/// without any extra phase; every other term passes through untouched.
pub fn annihilate(state: &StateVector, scheme: Scheme) -> Result<StateVector, PipelineError> {
    for (ket, _) in state.terms() {
        if matches!(ket, BasisKet::Photon(_)) {
            return Err(PipelineError::InvalidStage { ket: *ket });
        }
    }
    Ok(state.map_terms(|ket, amp| match arm_paths(ket) {
        Some((PathLabel::B, PathLabel::B)) => {
            vec![(BasisKet::photon(PhotonSite::Q), amp)]
        }
        Some((PathLabel::A, PathLabel::A)) if scheme == Scheme::A => {
            vec![(BasisKet::photon(PhotonSite::P), amp)]
        }
        _ => vec![(*ket, amp)],
    }))
}

/// A second beam splitter on one arm, with transmissivity `t` and
/// reflectivity `r = √(1−t²)`: `a → t·c + i·r·d`, `b → t·d + i·r·c`.
/// Photon terms and the other arm pass through untouched.
pub fn bs2(state: &StateVector, arm: Arm, t: f64) -> Result<StateVector, PipelineError> {
    check_transmissivity(t)?;
    check_arm_support(state, arm, "BS2")?;
    let r = reflectivity(t);
    let tc = Complex64::new(t, 0.0);
    let ir = Complex64::new(0.0, r);
    Ok(state.map_terms(|ket, amp| match arm_paths(ket) {
        None => vec![(*ket, amp)],
        Some((plus, minus)) => {
            let path = if arm == Arm::Plus { plus } else { minus };
            let (straight, crossed) = match path {
                PathLabel::A => (PathLabel::C, PathLabel::D),
                PathLabel::B => (PathLabel::D, PathLabel::C),
                _ => unreachable!("support checked above"),
            };
            vec![
                (replace_arm(plus, minus, arm, straight), amp * tc),
                (replace_arm(plus, minus, arm, crossed), amp * ir),
            ]
        }
    }))
}

/// A removed second beam splitter: the straight-through relabelling
/// `a → c`, `b → d` on the given arm.
pub fn passthrough(state: &StateVector, arm: Arm) -> Result<StateVector, PipelineError> {
    check_arm_support(state, arm, "passthrough")?;
    Ok(state.map_terms(|ket, amp| match arm_paths(ket) {
        None => vec![(*ket, amp)],
        Some((plus, minus)) => {
            let path = if arm == Arm::Plus { plus } else { minus };
            let renamed = match path {
                PathLabel::A => PathLabel::C,
                PathLabel::B => PathLabel::D,
                _ => unreachable!("support checked above"),
            };
            vec![(replace_arm(plus, minus, arm, renamed), amp)]
        }
    }))
}

fn check_arm_support(
    state: &StateVector,
    arm: Arm,
    element: &'static str,
) -> Result<(), PipelineError> {
    for (ket, _) in state.terms() {
        if let Some((plus, minus)) = arm_paths(ket) {
            let path = if arm == Arm::Plus { plus } else { minus };
            if !matches!(path, PathLabel::A | PathLabel::B) {
                return Err(PipelineError::WrongStage { element, ket: *ket });
            }
        }
    }
    Ok(())
}

fn replace_arm(plus: PathLabel, minus: PathLabel, arm: Arm, path: PathLabel) -> BasisKet {
    match arm {
        Arm::Plus => BasisKet::pair(path, minus),
        Arm::Minus => BasisKet::pair(plus, path),
    }
}

/// Run a full experiment from `|s⁺s⁻⟩`: BS1, annihilation, then the
/// per-arm BS2 or straight-through stage. The output is normalized.
pub fn run_experiment(config: &ExperimentConfig) -> StateVector {
    let state = StateVector::basis(BasisKet::pair(PathLabel::S, PathLabel::S));
    let state = bs1(&state).expect("source state is on the s paths");
    let mut state = annihilate(&state, config.scheme).expect("no photon before annihilation");
    for (arm, setting) in [
        (Arm::Plus, config.plus_setting),
        (Arm::Minus, config.minus_setting),
    ] {
        state = match setting {
            BsSetting::In => bs2(&state, arm, config.transmissivity),
            BsSetting::Out => passthrough(&state, arm),
        }
        .expect("post-annihilation pair support is on the a/b paths");
    }
    state
}

/// Convenience: run a canonical experiment at `1/√2`.
pub fn run_canonical(experiment: CanonicalExperiment) -> StateVector {
    run_experiment(&experiment.config())
}

/// Probability of the joint `(d⁺, d⁻)` detection in `E(P,Q; +in,-in)` as
/// a function of BS2 transmissivity, one `(t, probability)` pair per
/// requested point. Follows the full pipeline rather than the closed form
/// `t²(1−t²)`.
pub fn dd_probability_curve(t_values: &[f64]) -> Result<Vec<(f64, f64)>, PipelineError> {
    use crate::statevec::{JointOutcome, Port};
    let mut curve = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let config = ExperimentConfig::new(Scheme::A, BsSetting::In, BsSetting::In)
            .with_transmissivity(t)?;
        let dist = run_experiment(&config)
            .born_distribution()
            .expect("experiment output is terminal");
        curve.push((
            t,
            dist.probability(JointOutcome::detections(Port::D, Port::D)),
        ));
    }
    Ok(curve)
}
