//! Sparse state vectors over the two-particle path basis plus photon kets.
//!
//! The basis has two kinds of kets: `|p⁺p⁻⟩` pair kets, where each particle
//! occupies one labelled path of its interferometer, and `|γ⟩^{P/Q}` photon
//! kets produced when the pair annihilates at an intersection point. All
//! basis kets are mutually orthogonal, so a state is just a map from kets
//! to complex amplitudes. The canonical iteration order is photons first
//! (P before Q), then pair kets lexicographic by `(plus path, minus path)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

/// Complex amplitude attached to a basis ket.
pub type Amplitude = Complex64;

/// Amplitudes with magnitude at or below this are dropped from states.
pub const PRUNE_TOLERANCE: f64 = 1e-12;

/// Absolute tolerance for zero/equality tests on O(1) amplitudes and
/// probabilities.
pub const ZERO_TOLERANCE: f64 = 1e-9;

/// Which particle's interferometer an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arm {
    /// The positron side, superscript `+`.
    Plus,
    /// The electron side, superscript `−`.
    Minus,
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arm::Plus => write!(f, "+"),
            Arm::Minus => write!(f, "-"),
        }
    }
}

/// Interferometer path labels. `s` is the source path before BS1, `a`/`b`
/// run between BS1 and the BS2 plane, `c`/`d` are the detector paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathLabel {
    S,
    A,
    B,
    C,
    D,
}

impl PathLabel {
    /// True for the detector paths `c` and `d`.
    pub fn is_terminal(self) -> bool {
        matches!(self, PathLabel::C | PathLabel::D)
    }
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PathLabel::S => 's',
            PathLabel::A => 'a',
            PathLabel::B => 'b',
            PathLabel::C => 'c',
            PathLabel::D => 'd',
        };
        write!(f, "{c}")
    }
}

/// Annihilation sites. Paths `b⁺`/`b⁻` intersect at `Q`, paths `a⁺`/`a⁻`
/// at `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhotonSite {
    P,
    Q,
}

impl fmt::Display for PhotonSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhotonSite::P => write!(f, "P"),
            PhotonSite::Q => write!(f, "Q"),
        }
    }
}

/// A detector path, the terminal subset of [`PathLabel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Port {
    C,
    D,
}

impl Port {
    fn from_path(path: PathLabel) -> Option<Port> {
        match path {
            PathLabel::C => Some(Port::C),
            PathLabel::D => Some(Port::D),
            _ => None,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Port::C => write!(f, "c"),
            Port::D => write!(f, "d"),
        }
    }
}

/// One orthonormal basis ket: either a photon at an annihilation site or a
/// pair of occupied paths.
///
/// The derived ordering is the canonical one: `|γ⟩^P`, `|γ⟩^Q`, then pair
/// kets lexicographic by `(plus, minus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKet {
    /// `|γ⟩^{site}` — the pair annihilated into a photon.
    Photon(PhotonSite),
    /// `|p⁺p⁻⟩` — positron on `plus`, electron on `minus`.
    Pair { plus: PathLabel, minus: PathLabel },
}

impl BasisKet {
    pub fn pair(plus: PathLabel, minus: PathLabel) -> BasisKet {
        BasisKet::Pair { plus, minus }
    }

    pub fn photon(site: PhotonSite) -> BasisKet {
        BasisKet::Photon(site)
    }

    /// Plain-ASCII label for machine-readable output, e.g. `gamma_Q` or
    /// `c+d-`.
    pub fn ascii_label(&self) -> String {
        match self {
            BasisKet::Photon(site) => format!("gamma_{site}"),
            BasisKet::Pair { plus, minus } => format!("{plus}+{minus}-"),
        }
    }
}

impl fmt::Display for BasisKet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKet::Photon(site) => write!(f, "|γ⟩^{site}"),
            BasisKet::Pair { plus, minus } => write!(f, "|{plus}⁺{minus}⁻⟩"),
        }
    }
}

/// One trial outcome of a completed experiment: either the photon appeared
/// at a site, or both detectors fired on the stated ports.
///
/// Exactly six values exist; the derived order is `γ@P`, `γ@Q`, then the
/// four detection pairs lexicographic by `(plus, minus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JointOutcome {
    /// The pair annihilated; a photon was registered at the site.
    Photon(PhotonSite),
    /// Both particles survived and hit the stated detector ports.
    Detections { plus: Port, minus: Port },
}

impl JointOutcome {
    /// All six outcomes in canonical order.
    pub const ALL: [JointOutcome; 6] = [
        JointOutcome::Photon(PhotonSite::P),
        JointOutcome::Photon(PhotonSite::Q),
        JointOutcome::Detections {
            plus: Port::C,
            minus: Port::C,
        },
        JointOutcome::Detections {
            plus: Port::C,
            minus: Port::D,
        },
        JointOutcome::Detections {
            plus: Port::D,
            minus: Port::C,
        },
        JointOutcome::Detections {
            plus: Port::D,
            minus: Port::D,
        },
    ];

    pub fn detections(plus: Port, minus: Port) -> JointOutcome {
        JointOutcome::Detections { plus, minus }
    }

    /// Plain-ASCII label, e.g. `gamma_P` or `d+c-`.
    pub fn ascii_label(&self) -> String {
        match self {
            JointOutcome::Photon(site) => format!("gamma_{site}"),
            JointOutcome::Detections { plus, minus } => format!("{plus}+{minus}-"),
        }
    }
}

impl fmt::Display for JointOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JointOutcome::Photon(site) => write!(f, "γ@{site}"),
            JointOutcome::Detections { plus, minus } => write!(f, "({plus}⁺,{minus}⁻)"),
        }
    }
}

/// Errors from state construction and analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum StateError {
    /// An input amplitude was NaN or infinite.
    NonFiniteAmplitude { ket: BasisKet },
    /// The state has support outside the terminal photon/detector basis.
    NotTerminal { ket: BasisKet },
    /// Post-selection on pair survival discards the entire state.
    NothingSurvives,
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::NonFiniteAmplitude { ket } => {
                write!(f, "non-finite amplitude on {ket}")
            }
            StateError::NotTerminal { ket } => {
                write!(f, "state is not terminal: support on {ket}")
            }
            StateError::NothingSurvives => {
                write!(f, "no pair term survives post-selection")
            }
        }
    }
}

impl std::error::Error for StateError {}

/// A sparse state vector: basis kets with nonzero complex amplitudes.
///
/// Construction sums duplicate kets and prunes amplitudes with magnitude
/// at or below [`PRUNE_TOLERANCE`], so a stored term is always genuinely
/// nonzero and iteration is in canonical ket order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StateVector {
    terms: BTreeMap<BasisKet, Amplitude>,
}

impl StateVector {
    /// The empty (zero) state.
    pub fn new() -> StateVector {
        StateVector::default()
    }

    /// Build a state from `(ket, amplitude)` entries.
    ///
    /// Duplicate kets are summed before pruning, so exactly cancelling
    /// entries vanish. Rejects NaN/infinite amplitudes.
    pub fn from_entries<I>(entries: I) -> Result<StateVector, StateError>
    where
        I: IntoIterator<Item = (BasisKet, Amplitude)>,
    {
        let mut terms: BTreeMap<BasisKet, Amplitude> = BTreeMap::new();
        for (ket, amp) in entries {
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(StateError::NonFiniteAmplitude { ket });
            }
            *terms.entry(ket).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        terms.retain(|_, amp| amp.norm() > PRUNE_TOLERANCE);
        Ok(StateVector { terms })
    }

    /// A state with a single unit-amplitude ket.
    pub fn basis(ket: BasisKet) -> StateVector {
        let mut terms = BTreeMap::new();
        terms.insert(ket, Complex64::new(1.0, 0.0));
        StateVector { terms }
    }

    /// Rebuild a state by expanding every term through a linear rule.
    ///
    /// Used by the optical elements; inputs are already finite, so only
    /// summing and pruning apply.
    pub(crate) fn map_terms<F>(&self, rule: F) -> StateVector
    where
        F: Fn(&BasisKet, Amplitude) -> Vec<(BasisKet, Amplitude)>,
    {
        let mut terms: BTreeMap<BasisKet, Amplitude> = BTreeMap::new();
        for (ket, amp) in &self.terms {
            for (out_ket, out_amp) in rule(ket, *amp) {
                *terms.entry(out_ket).or_insert(Complex64::new(0.0, 0.0)) += out_amp;
            }
        }
        terms.retain(|_, amp| amp.norm() > PRUNE_TOLERANCE);
        StateVector { terms }
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Amplitude of a ket, zero if absent.
    pub fn amplitude(&self, ket: &BasisKet) -> Amplitude {
        self.terms
            .get(ket)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Terms in canonical ket order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisKet, &Amplitude)> {
        self.terms.iter()
    }

    /// Sum of squared amplitude magnitudes.
    pub fn norm_squared(&self) -> f64 {
        self.terms.values().map(|amp| amp.norm_sqr()).sum()
    }

    /// Largest amplitude difference against another state, over the union
    /// of their supports.
    pub fn max_term_difference(&self, other: &StateVector) -> f64 {
        let mut worst = 0.0f64;
        for ket in self.terms.keys().chain(other.terms.keys()) {
            let d = (self.amplitude(ket) - other.amplitude(ket)).norm();
            worst = worst.max(d);
        }
        worst
    }

    /// Born-rule outcome distribution of a terminal state.
    ///
    /// The state must be supported only on photon kets and `c`/`d` pair
    /// kets; each outcome's probability is its squared amplitude
    /// magnitude, so a normalized input yields a distribution summing
    /// to one.
    pub fn born_distribution(&self) -> Result<OutcomeDistribution, StateError> {
        let mut probs: BTreeMap<JointOutcome, f64> = BTreeMap::new();
        for (ket, amp) in &self.terms {
            let outcome = match ket {
                BasisKet::Photon(site) => JointOutcome::Photon(*site),
                BasisKet::Pair { plus, minus } => {
                    match (Port::from_path(*plus), Port::from_path(*minus)) {
                        (Some(p), Some(m)) => JointOutcome::detections(p, m),
                        _ => return Err(StateError::NotTerminal { ket: *ket }),
                    }
                }
            };
            *probs.entry(outcome).or_insert(0.0) += amp.norm_sqr();
        }
        Ok(OutcomeDistribution { probs })
    }

    /// Post-select on pair survival and analyse the entanglement of the
    /// surviving two-path state.
    ///
    /// Photon terms are discarded, the remaining 2×2 amplitude matrix
    /// (rows `c⁺`/`d⁺`, columns `c⁻`/`d⁻`) is renormalized, and the
    /// report carries its singular values, entanglement entropy in bits,
    /// the survival probability, and a Bell-state label when the matrix
    /// matches `|Ψ⟩` or `|Φ⟩` up to a global phase.
    pub fn schmidt_report(&self) -> Result<SchmidtReport, StateError> {
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut survival = 0.0f64;
        let mut any_pair = false;
        for (ket, amp) in &self.terms {
            if let BasisKet::Pair { plus, minus } = ket {
                match (Port::from_path(*plus), Port::from_path(*minus)) {
                    (Some(p), Some(q)) => {
                        m[port_index(p)][port_index(q)] = *amp;
                        survival += amp.norm_sqr();
                        any_pair = true;
                    }
                    _ => return Err(StateError::NotTerminal { ket: *ket }),
                }
            }
        }
        if !any_pair || survival <= 0.0 {
            return Err(StateError::NothingSurvives);
        }

        let scale = survival.sqrt();
        for row in &mut m {
            for entry in row.iter_mut() {
                *entry /= scale;
            }
        }

        // Singular values via the 2x2 Hermitian M M† = [[p, q], [q̄, r]].
        // Both degenerate regimes need care: the discriminant
        // (p−r)² + 4|q|² is a sum of non-negative terms, so the Bell case
        // (equal weights) stays exact, and the small eigenvalue comes
        // from the product form λ₊λ₋ = |det M|², so the rank-one case
        // does not cancel to rounding noise.
        let p = m[0][0].norm_sqr() + m[0][1].norm_sqr();
        let r = m[1][0].norm_sqr() + m[1][1].norm_sqr();
        let q = m[0][0] * m[1][0].conj() + m[0][1] * m[1][1].conj();
        let spread = ((p - r) * (p - r) + 4.0 * q.norm_sqr()).sqrt();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let lambda_hi = ((p + r + spread) / 2.0).clamp(0.0, 1.0);
        let lambda_lo = (det.norm_sqr() / lambda_hi).clamp(0.0, lambda_hi);
        let singular_values = [lambda_hi.sqrt(), lambda_lo.sqrt()];

        let entropy_bits = entropy_term(lambda_hi) + entropy_term(lambda_lo);
        let bell_label = bell_label(&m, &singular_values);

        Ok(SchmidtReport {
            singular_values,
            entropy_bits,
            survival_probability: survival,
            bell_label,
        })
    }

    /// Check that every amplitude, multiplied by `scale`, lies on the
    /// `m + n·√2` lattice (integer `m`, `n`) in both its real and
    /// imaginary parts.
    ///
    /// The canonical experiment outputs all satisfy this at scale `2√2`:
    /// the pair coefficients become small integers and the photon
    /// coefficients become integer multiples of `√2`. Coefficients are
    /// searched up to ±64, ample for any state this crate produces.
    pub fn lattice_check(&self, scale: f64) -> bool {
        assert!(scale > 0.0, "lattice scale must be positive");
        self.terms.values().all(|amp| {
            sqrt2_lattice(amp.re * scale).is_some() && sqrt2_lattice(amp.im * scale).is_some()
        })
    }
}

fn port_index(port: Port) -> usize {
    match port {
        Port::C => 0,
        Port::D => 1,
    }
}

fn entropy_term(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        0.0
    } else {
        -lambda * lambda.log2()
    }
}

/// Decompose `x` as `m + n·√2` with integer `|m|, |n| ≤ 64`, within 1e-9.
///
/// Representations are unique at this tolerance and bound, and the search
/// prefers the smallest `|n|`, so exact annotations are canonical.
pub fn sqrt2_lattice(x: f64) -> Option<(i64, i64)> {
    const BOUND: i64 = 64;
    for abs_n in 0..=BOUND {
        for n in if abs_n == 0 {
            vec![0]
        } else {
            vec![abs_n, -abs_n]
        } {
            let rest = x - (n as f64) * std::f64::consts::SQRT_2;
            let m = rest.round();
            if m.abs() <= BOUND as f64 && (rest - m).abs() <= ZERO_TOLERANCE {
                return Some((m as i64, n));
            }
        }
    }
    None
}

fn bell_label(m: &[[Complex64; 2]; 2], singular_values: &[f64; 2]) -> Option<BellLabel> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    if (singular_values[0] - inv_sqrt2).abs() > ZERO_TOLERANCE
        || (singular_values[1] - inv_sqrt2).abs() > ZERO_TOLERANCE
    {
        return None;
    }
    // Remove the global phase by dividing by the largest-magnitude entry
    // (first such entry in canonical order on ties).
    let mut pivot = m[0][0];
    for row in m {
        for entry in row {
            if entry.norm() > pivot.norm() {
                pivot = *entry;
            }
        }
    }
    let normalized = [
        [m[0][0] / pivot, m[0][1] / pivot],
        [m[1][0] / pivot, m[1][1] / pivot],
    ];
    let matches = |pattern: [[f64; 2]; 2]| {
        normalized.iter().zip(pattern.iter()).all(|(row, want)| {
            row.iter()
                .zip(want.iter())
                .all(|(z, w)| (z - Complex64::new(*w, 0.0)).norm() <= ZERO_TOLERANCE)
        })
    };
    if matches([[0.0, 1.0], [1.0, 0.0]]) {
        Some(BellLabel::Psi)
    } else if matches([[1.0, 0.0], [0.0, 1.0]]) {
        Some(BellLabel::Phi)
    } else {
        None
    }
}

/// Bell states recognizable in the survivor matrix: `|Ψ⟩` with equal
/// cross terms `|d⁺c⁻⟩ + |c⁺d⁻⟩`, `|Φ⟩` with equal diagonal terms
/// `|c⁺c⁻⟩ + |d⁺d⁻⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellLabel {
    Psi,
    Phi,
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BellLabel::Psi => write!(f, "Psi"),
            BellLabel::Phi => write!(f, "Phi"),
        }
    }
}

/// Entanglement analysis of the post-selected survivor state.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtReport {
    /// Singular values of the renormalized survivor matrix, descending;
    /// their squares sum to one.
    pub singular_values: [f64; 2],
    /// Entanglement entropy `−Σ λᵢ² log₂ λᵢ²`, in `[0, 1]` bits.
    pub entropy_bits: f64,
    /// Probability that the pair survived annihilation.
    pub survival_probability: f64,
    /// Set when the survivor is a recognized Bell state up to global phase.
    pub bell_label: Option<BellLabel>,
}

/// Born-rule probabilities over the six joint outcomes.
///
/// Stored sparsely; absent outcomes have probability zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutcomeDistribution {
    probs: BTreeMap<JointOutcome, f64>,
}

impl OutcomeDistribution {
    /// Assemble a distribution directly, summing duplicate outcomes.
    /// Callers are responsible for normalization.
    #[cfg(test)]
    pub(crate) fn from_entries<I>(entries: I) -> OutcomeDistribution
    where
        I: IntoIterator<Item = (JointOutcome, f64)>,
    {
        let mut probs: BTreeMap<JointOutcome, f64> = BTreeMap::new();
        for (outcome, p) in entries {
            *probs.entry(outcome).or_insert(0.0) += p;
        }
        OutcomeDistribution { probs }
    }

    /// Probability of an outcome, zero if absent.
    pub fn probability(&self, outcome: JointOutcome) -> f64 {
        self.probs.get(&outcome).copied().unwrap_or(0.0)
    }

    /// Nonzero entries in canonical outcome order.
    pub fn iter(&self) -> impl Iterator<Item = (&JointOutcome, &f64)> {
        self.probs.iter()
    }

    /// Sum of all stored probabilities.
    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }
}
