//! The standard two-qubit Hardy scenario and its ≈9% ceiling.
//!
//! For contrast with the interferometer scheme's 25% target, this module
//! evaluates the textbook Hardy chain on a pure two-qubit state
//! `cosθ|00⟩ + sinθ|11⟩` with planar projective measurements. Each side
//! has two settings; setting `k` measures along the direction
//! `v(φ) = cosφ|0⟩ + sinφ|1⟩` for its angle `φ`, with outcome `1` the
//! projection onto `v` and outcome `0` onto its orthogonal complement.
//!
//! The chain imposes three zero constraints — `P(1,1 | 2,2) = 0`,
//! `P(1,0 | 1,2) = 0`, `P(0,1 | 2,1) = 0` — and asks how large the target
//! `P(1,1 | 1,1)` can get. The supremum over states and measurements is
//! `(5√5 − 11)/2 ≈ 0.09017`, attained at partial entanglement; at `θ = 0`
//! (product state) and `θ = π/4` (maximal entanglement) the feasible
//! target collapses to zero.
//!
//! [`optimize_bound`] reproduces the ceiling with a deterministic staged
//! search: an outer grid over `θ`, cyclic coordinate descent over the
//! four angles under a quadratic penalty on the constraint residuals, and
//! a weight-escalation polish that drives the residuals far below the
//! feasibility cutoff.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

/// A returned point counts as feasible when every residual is below this.
pub const FEASIBLE_TOLERANCE: f64 = 1e-6;

/// Penalty weight on the residual sum during the descent stage.
pub const PENALTY_WEIGHT: f64 = 1e3;

/// Errors from parameter validation.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundError {
    Parameter { name: &'static str, value: f64 },
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::Parameter { name, value } => {
                write!(f, "parameter {name} out of range: {value}")
            }
        }
    }
}

impl std::error::Error for BoundError {}

/// State and measurement angles for one run of the chain: the Schmidt
/// angle `θ ∈ [0, π/4]` and the four measurement angles in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyBoundParams {
    pub theta: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl HardyBoundParams {
    pub fn new(
        theta: f64,
        alpha1: f64,
        alpha2: f64,
        beta1: f64,
        beta2: f64,
    ) -> Result<HardyBoundParams, BoundError> {
        let params = HardyBoundParams {
            theta,
            alpha1,
            alpha2,
            beta1,
            beta2,
        };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<(), BoundError> {
        if !(0.0..=FRAC_PI_4).contains(&self.theta) || self.theta.is_nan() {
            return Err(BoundError::Parameter {
                name: "theta",
                value: self.theta,
            });
        }
        for (name, value) in [
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("beta1", self.beta1),
            ("beta2", self.beta2),
        ] {
            if !(0.0..PI).contains(&value) || value.is_nan() {
                return Err(BoundError::Parameter { name, value });
            }
        }
        Ok(())
    }
}

/// Target probability, the three constraint residuals, and the point that
/// produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyBoundResult {
    /// `P(1,1 | settings 1,1)`.
    pub target: f64,
    /// `[P(1,1 | 2,2), P(1,0 | 1,2), P(0,1 | 2,1)]`.
    pub residuals: [f64; 3],
    pub params: HardyBoundParams,
}

impl HardyBoundResult {
    pub fn is_feasible(&self) -> bool {
        self.residuals.iter().all(|r| *r < FEASIBLE_TOLERANCE)
    }
}

// Probability amplitude ⟨x ⊗ y | cosθ|00⟩ + sinθ|11⟩⟩ for measurement
// directions x, y given by (cos, sin) pairs.
fn joint_amplitude(cos_t: f64, sin_t: f64, x: (f64, f64), y: (f64, f64)) -> f64 {
    cos_t * x.0 * y.0 + sin_t * x.1 * y.1
}

fn one_direction(angle: f64) -> (f64, f64) {
    (angle.cos(), angle.sin())
}

fn zero_direction(angle: f64) -> (f64, f64) {
    (-angle.sin(), angle.cos())
}

/// Full four-outcome Born distribution for one setting pair, as
/// `[P(1,1), P(1,0), P(0,1), P(0,0)]`.
pub fn setting_distribution(theta: f64, a_angle: f64, b_angle: f64) -> [f64; 4] {
    let (cos_t, sin_t) = (theta.cos(), theta.sin());
    let a1 = one_direction(a_angle);
    let a0 = zero_direction(a_angle);
    let b1 = one_direction(b_angle);
    let b0 = zero_direction(b_angle);
    [
        joint_amplitude(cos_t, sin_t, a1, b1).powi(2),
        joint_amplitude(cos_t, sin_t, a1, b0).powi(2),
        joint_amplitude(cos_t, sin_t, a0, b1).powi(2),
        joint_amplitude(cos_t, sin_t, a0, b0).powi(2),
    ]
}

fn evaluate(theta: f64, angles: [f64; 4]) -> (f64, [f64; 3]) {
    let [alpha1, alpha2, beta1, beta2] = angles;
    let (cos_t, sin_t) = (theta.cos(), theta.sin());
    let target = joint_amplitude(cos_t, sin_t, one_direction(alpha1), one_direction(beta1)).powi(2);
    let residuals = [
        joint_amplitude(cos_t, sin_t, one_direction(alpha2), one_direction(beta2)).powi(2),
        joint_amplitude(cos_t, sin_t, one_direction(alpha1), zero_direction(beta2)).powi(2),
        joint_amplitude(cos_t, sin_t, zero_direction(alpha2), one_direction(beta1)).powi(2),
    ];
    (target, residuals)
}

/// Evaluate the chain at one point.
pub fn hardy_probability(params: &HardyBoundParams) -> Result<HardyBoundResult, BoundError> {
    params.validate()?;
    let (target, residuals) = evaluate(
        params.theta,
        [params.alpha1, params.alpha2, params.beta1, params.beta2],
    );
    Ok(HardyBoundResult {
        target,
        residuals,
        params: *params,
    })
}

/// Maximize the feasible target over the full Schmidt range `[0, π/4]`.
///
/// Deterministic for fixed arguments; `grid_density ≥ 8` controls the
/// per-axis sampling and `refinement_rounds ≥ 1` the number of shrinking
/// passes of the outer `θ` grid.
pub fn optimize_bound(
    grid_density: usize,
    refinement_rounds: usize,
) -> Result<HardyBoundResult, BoundError> {
    optimize_bound_over(grid_density, refinement_rounds, 0.0, FRAC_PI_4)
}

/// [`optimize_bound`] restricted to a sub-range of Schmidt angles.
/// Locking `theta_lo = theta_hi = π/4` demonstrates that the chain dies
/// at maximal entanglement.
pub fn optimize_bound_over(
    grid_density: usize,
    refinement_rounds: usize,
    theta_lo: f64,
    theta_hi: f64,
) -> Result<HardyBoundResult, BoundError> {
    if grid_density < 8 {
        return Err(BoundError::Parameter {
            name: "grid_density",
            value: grid_density as f64,
        });
    }
    if refinement_rounds < 1 {
        return Err(BoundError::Parameter {
            name: "refinement_rounds",
            value: refinement_rounds as f64,
        });
    }
    if !(0.0..=FRAC_PI_4).contains(&theta_lo) || theta_lo.is_nan() {
        return Err(BoundError::Parameter {
            name: "theta_lo",
            value: theta_lo,
        });
    }
    if !(theta_lo..=FRAC_PI_4).contains(&theta_hi) || theta_hi.is_nan() {
        return Err(BoundError::Parameter {
            name: "theta_hi",
            value: theta_hi,
        });
    }

    // Feasible fallback with zero target: measure 1-directions that can
    // never coincide with the state's support pattern.
    let trivial_angles = [0.0, FRAC_PI_2, FRAC_PI_2, 0.0];
    let (target, residuals) = evaluate(theta_lo, trivial_angles);
    let mut best = HardyBoundResult {
        target,
        residuals,
        params: HardyBoundParams {
            theta: theta_lo,
            alpha1: trivial_angles[0],
            alpha2: trivial_angles[1],
            beta1: trivial_angles[2],
            beta2: trivial_angles[3],
        },
    };
    debug_assert!(best.is_feasible());

    let (mut lo, mut hi) = (theta_lo, theta_hi);
    let mut warm: Option<[f64; 4]> = None;
    for _ in 0..refinement_rounds {
        let thetas: Vec<f64> = if hi - lo < 1e-15 {
            vec![lo]
        } else {
            (0..grid_density)
                .map(|k| lo + (hi - lo) * k as f64 / (grid_density - 1) as f64)
                .collect()
        };
        let mut round_best_theta = thetas[0];
        for &theta in &thetas {
            let candidate = solve_at_theta(theta, grid_density, warm);
            let p = candidate.params;
            warm = Some([p.alpha1, p.alpha2, p.beta1, p.beta2]);
            if candidate.is_feasible() && candidate.target > best.target {
                best = candidate;
                round_best_theta = theta;
            }
        }
        // Shrink the window to two grid cells around the round's winner.
        let cell = if thetas.len() > 1 {
            (hi - lo) / (thetas.len() - 1) as f64
        } else {
            0.0
        };
        lo = (round_best_theta - 2.0 * cell).max(theta_lo);
        hi = (round_best_theta + 2.0 * cell).min(theta_hi);
    }
    Ok(best)
}

/// Penalty-based inner solve at one Schmidt angle: multi-start cyclic
/// coordinate descent under an ascending penalty schedule, then
/// weight-escalation polish.
fn solve_at_theta(theta: f64, grid_density: usize, warm: Option<[f64; 4]>) -> HardyBoundResult {
    const START_POINTS: usize = 6;
    const NUM_STARTS: usize = 4;
    const DESCENT_SWEEPS: usize = 8;

    let penalized = |angles: [f64; 4], weight: f64| -> f64 {
        let (target, residuals) = evaluate(theta, angles);
        weight * (residuals[0] + residuals[1] + residuals[2]) - target
    };

    // Coarse product scan to seed the starts.
    let mut starts: Vec<([f64; 4], f64)> = Vec::new();
    let start_angle = |j: usize| (j as f64 + 0.5) * PI / START_POINTS as f64;
    for i in 0..START_POINTS {
        for j in 0..START_POINTS {
            for k in 0..START_POINTS {
                for l in 0..START_POINTS {
                    let angles = [
                        start_angle(i),
                        start_angle(j),
                        start_angle(k),
                        start_angle(l),
                    ];
                    let score = penalized(angles, PENALTY_WEIGHT);
                    starts.push((angles, score));
                }
            }
        }
    }
    starts.sort_by(|a, b| a.1.total_cmp(&b.1));
    starts.truncate(NUM_STARTS);
    if let Some(angles) = warm {
        starts.push((angles, f64::NAN));
    }

    let mut best: Option<HardyBoundResult> = None;
    for (mut angles, _) in starts {
        // A soft penalty lets the iterate slide along the constraint
        // surface toward high targets before feasibility tightens;
        // cyclic descent under a fixed stiff penalty zigzags instead.
        for weight in [
            PENALTY_WEIGHT / 100.0,
            PENALTY_WEIGHT / 10.0,
            PENALTY_WEIGHT,
        ] {
            for _ in 0..DESCENT_SWEEPS {
                for axis in 0..4 {
                    line_minimize(
                        &mut angles,
                        axis,
                        grid_density,
                        PI / grid_density as f64,
                        |a| penalized(a, weight),
                    );
                }
            }
        }
        // Polish: escalate the penalty weight so the residuals collapse
        // far below the feasibility cutoff while the target barely moves.
        for (weight, width) in [(1e6, 3e-2), (1e9, 1e-3), (1e12, 1e-5)] {
            for _ in 0..2 {
                for axis in 0..4 {
                    line_refine(&mut angles, axis, width, |a| penalized(a, weight));
                }
            }
        }
        let (target, residuals) = evaluate(theta, angles);
        let candidate = HardyBoundResult {
            target,
            residuals,
            params: HardyBoundParams {
                theta,
                alpha1: angles[0],
                alpha2: angles[1],
                beta1: angles[2],
                beta2: angles[3],
            },
        };
        let better = match &best {
            None => true,
            Some(current) => match (candidate.is_feasible(), current.is_feasible()) {
                (true, false) => true,
                (false, true) => false,
                _ => candidate.target > current.target,
            },
        };
        if better {
            best = Some(candidate);
        }
    }
    best.expect("at least one start is always processed")
}

/// Per-axis scan over `[0, π)` followed by a golden-section refinement of
/// the best cell. Never accepts a worse point than the incumbent.
fn line_minimize<F: Fn([f64; 4]) -> f64>(
    angles: &mut [f64; 4],
    axis: usize,
    scan_points: usize,
    half_width: f64,
    objective: F,
) {
    let eval_at = |phi: f64| {
        let mut probe = *angles;
        probe[axis] = phi;
        objective(probe)
    };
    let mut best_phi = angles[axis];
    let mut best_f = eval_at(best_phi);
    for k in 0..scan_points {
        let phi = k as f64 * PI / scan_points as f64;
        let f = eval_at(phi);
        if f < best_f {
            best_f = f;
            best_phi = phi;
        }
    }
    let refined = golden_section(best_phi - half_width, best_phi + half_width, &eval_at);
    if eval_at(refined) < best_f {
        best_phi = refined;
    }
    angles[axis] = wrap_angle(best_phi);
}

/// Golden-section refinement around the incumbent only.
fn line_refine<F: Fn([f64; 4]) -> f64>(
    angles: &mut [f64; 4],
    axis: usize,
    half_width: f64,
    objective: F,
) {
    let eval_at = |phi: f64| {
        let mut probe = *angles;
        probe[axis] = phi;
        objective(probe)
    };
    let current = angles[axis];
    let refined = golden_section(current - half_width, current + half_width, &eval_at);
    if eval_at(refined) < eval_at(current) {
        angles[axis] = wrap_angle(refined);
    }
}

fn golden_section<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, f: &F) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    const ITERATIONS: usize = 48;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..ITERATIONS {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

fn wrap_angle(phi: f64) -> f64 {
    let mut x = phi % PI;
    if x < 0.0 {
        x += PI;
    }
    if x >= PI {
        x = 0.0;
    }
    x
}
