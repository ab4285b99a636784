//! Subcommand implementations.

use std::fmt::Write as _;
use std::path::Path;

use hardy_core::bound::optimize_bound_over;
use hardy_core::hardy::{lhv_admissible, lhv_max_target, verify, Constraints};
use hardy_core::interferometer::{
    dd_probability_curve, run_experiment, CanonicalExperiment, ExperimentConfig,
};
use hardy_core::parse_experiment;
use hardy_core::statevec::{JointOutcome, StateVector};

use crate::report::{escape_json, exact_amplitude, exact_probability, json_opt_str, num};
use crate::{CliError, CmdOutput};

const LATTICE_SCALE: f64 = 2.0 * std::f64::consts::SQRT_2;

fn resolve_source(source: &str) -> Result<(String, ExperimentConfig), CliError> {
    if let Ok(experiment) = source.parse::<CanonicalExperiment>() {
        return Ok((experiment.alias().to_string(), experiment.config()));
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| CliError::usage(format!("cannot read `{source}`: {e}")))?;
    let doc = parse_experiment(&text).map_err(|e| CliError::usage(format!("{source}: {e}")))?;
    Ok((doc.name, doc.config))
}

fn terminal_distribution(state: &StateVector) -> Result<hardy_core::OutcomeDistribution, CliError> {
    state
        .born_distribution()
        .map_err(|e| CliError::pipeline(e.to_string()))
}

/// `evolve` — final-state amplitude table.
pub fn evolve(source: &str, json: bool) -> Result<CmdOutput, CliError> {
    let (name, config) = resolve_source(source)?;
    let state = run_experiment(&config);
    let on_lattice = state.lattice_check(LATTICE_SCALE);
    let mut out = String::new();
    if json {
        for (ket, amp) in state.terms() {
            let exact = if on_lattice {
                exact_amplitude(*amp)
            } else {
                None
            };
            let _ = writeln!(
                out,
                "{{\"experiment\":\"{}\",\"ket\":\"{}\",\"re\":{},\"im\":{},\"probability\":{},\"exact\":{}}}",
                escape_json(&name),
                ket.ascii_label(),
                num(amp.re),
                num(amp.im),
                num(amp.norm_sqr()),
                json_opt_str(&exact),
            );
        }
    } else {
        let _ = writeln!(
            out,
            "{name}: {config} at t = {}",
            num(config.transmissivity())
        );
        let _ = writeln!(
            out,
            "{:<12} {:<32} {:<16} exact",
            "ket", "amplitude (re, im)", "probability"
        );
        for (ket, amp) in state.terms() {
            let exact = if on_lattice {
                exact_amplitude(*amp)
            } else {
                None
            };
            let _ = writeln!(
                out,
                "{:<12} {:<32} {:<16} {}",
                ket.to_string(),
                format!("({}, {})", num(amp.re), num(amp.im)),
                num(amp.norm_sqr()),
                exact.as_deref().unwrap_or("-"),
            );
        }
        let _ = writeln!(out, "norm² = {}", num(state.norm_squared()));
    }
    Ok(CmdOutput::success(out))
}

/// `distribution` — Born probabilities over all six joint outcomes.
pub fn distribution(source: &str, json: bool) -> Result<CmdOutput, CliError> {
    let (name, config) = resolve_source(source)?;
    let dist = terminal_distribution(&run_experiment(&config))?;
    let mut out = String::new();
    if !json {
        let _ = writeln!(
            out,
            "{name}: {config} at t = {}",
            num(config.transmissivity())
        );
        let _ = writeln!(out, "{:<12} {:<16} exact", "outcome", "probability");
    }
    for outcome in JointOutcome::ALL {
        let p = dist.probability(outcome);
        let exact = exact_probability(p);
        if json {
            let _ = writeln!(
                out,
                "{{\"experiment\":\"{}\",\"outcome\":\"{}\",\"probability\":{},\"exact\":{}}}",
                escape_json(&name),
                outcome.ascii_label(),
                num(p),
                json_opt_str(&exact),
            );
        } else {
            let _ = writeln!(
                out,
                "{:<12} {:<16} {}",
                outcome.to_string(),
                num(p),
                exact.as_deref().unwrap_or("-"),
            );
        }
    }
    Ok(CmdOutput::success(out))
}

/// `verify` — the four experiments, the exclusion checks, and the
/// local-realism verdict. Exit code 0 when the contradiction is shown,
/// 1 otherwise.
pub fn verify_cmd(t: f64, json: bool) -> Result<CmdOutput, CliError> {
    let verdict = verify(t).map_err(|e| CliError::usage(e.to_string()))?;
    let mut out = String::new();
    let mut dists = Vec::new();
    for experiment in CanonicalExperiment::ALL {
        let config = experiment
            .config()
            .with_transmissivity(t)
            .expect("validated by verify");
        dists.push((experiment, terminal_distribution(&run_experiment(&config))?));
    }

    let checks = [
        ("eq5", "P(d⁺,d⁻ | +out,-out)", verdict.eq5_holds),
        ("eq6", "P(d⁺,c⁻ | +in,-out)", verdict.eq6_holds),
        ("eq7", "P(c⁺,d⁻ | +out,-in)", verdict.eq7_holds),
    ];

    if json {
        for (experiment, dist) in &dists {
            for outcome in JointOutcome::ALL {
                let _ = writeln!(
                    out,
                    "{{\"experiment\":\"{}\",\"outcome\":\"{}\",\"probability\":{}}}",
                    experiment.alias(),
                    outcome.ascii_label(),
                    num(dist.probability(outcome)),
                );
            }
        }
        for (label, _, holds) in checks {
            let _ = writeln!(out, "{{\"check\":\"{label}\",\"holds\":{holds}}}");
        }
        let _ = writeln!(
            out,
            "{{\"t\":{},\"target\":{},\"lhv_max\":{},\"gap\":{},\"contradiction\":{}}}",
            num(t),
            num(verdict.target_probability),
            num(verdict.lhv_max),
            num(verdict.gap()),
            verdict.contradiction,
        );
    } else {
        let _ = writeln!(out, "Hardy verification at t = {}", num(t));
        for (experiment, dist) in &dists {
            let _ = writeln!(out, "{} [{}]", experiment.config(), experiment.alias());
            for outcome in JointOutcome::ALL {
                let p = dist.probability(outcome);
                let _ = writeln!(
                    out,
                    "  {:<10} {:<16} {}",
                    outcome.to_string(),
                    num(p),
                    exact_probability(p).as_deref().unwrap_or("-"),
                );
            }
        }
        let _ = writeln!(out, "exclusion checks:");
        for (_, what, holds) in checks {
            let _ = writeln!(
                out,
                "  {} = 0  ... {}",
                what,
                if holds { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "target P(d⁺,d⁻ | +in,-in) = {}",
            num(verdict.target_probability)
        );
        let _ = writeln!(
            out,
            "LHV ceiling under certified exclusions = {}",
            num(verdict.lhv_max)
        );
        if verdict.contradiction {
            let _ = writeln!(
                out,
                "verdict: CONTRADICTION - no local hidden-variable model reaches the target (gap {})",
                num(verdict.gap())
            );
        } else {
            let _ = writeln!(out, "verdict: no contradiction at this transmissivity");
        }
    }
    Ok(CmdOutput {
        stdout: out,
        exit_code: if verdict.contradiction { 0 } else { 1 },
    })
}

fn parse_constraints(selector: &str) -> Result<Constraints, CliError> {
    match selector {
        "all" => Ok(Constraints::ALL),
        "none" => Ok(Constraints::NONE),
        _ => {
            let mut constraints = Constraints::NONE;
            for token in selector.split(',') {
                match token.trim() {
                    "eq5" => constraints.eq5 = true,
                    "eq6" => constraints.eq6 = true,
                    "eq7" => constraints.eq7 = true,
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown constraint `{other}` (expected eq5, eq6, eq7, all, or none)"
                        )))
                    }
                }
            }
            Ok(constraints)
        }
    }
}

/// `lhv` — list the admissible deterministic strategies and their
/// ceiling.
pub fn lhv(constraint_spec: &str, json: bool) -> Result<CmdOutput, CliError> {
    let constraints = parse_constraints(constraint_spec)?;
    let admissible = lhv_admissible(&constraints);
    let ceiling = lhv_max_target(&constraints);
    let mut out = String::new();
    if json {
        for strategy in &admissible {
            let bits = strategy.bits().map(u8::from);
            let _ = writeln!(
                out,
                "{{\"d_plus_in\":{},\"d_plus_out\":{},\"d_minus_in\":{},\"d_minus_out\":{},\"target\":{}}}",
                bits[0], bits[1], bits[2], bits[3],
                u8::from(strategy.target()),
            );
        }
        let _ = writeln!(
            out,
            "{{\"admissible\":{},\"lhv_max\":{}}}",
            admissible.len(),
            num(ceiling)
        );
    } else {
        let _ = writeln!(out, "constraints: {constraint_spec}");
        let _ = writeln!(out, "d+in d+out d-in d-out | target");
        for strategy in &admissible {
            let bits = strategy.bits().map(u8::from);
            let _ = writeln!(
                out,
                "   {}     {}    {}     {}  |      {}",
                bits[0],
                bits[1],
                bits[2],
                bits[3],
                u8::from(strategy.target()),
            );
        }
        let _ = writeln!(out, "admissible strategies: {}", admissible.len());
        let _ = writeln!(
            out,
            "max target over admissible strategies: {}",
            num(ceiling)
        );
    }
    Ok(CmdOutput::success(out))
}

/// `sweep` — tabulate the both-in joint detection probability against
/// transmissivity, as CSV (or JSON-lines with `--json`).
pub fn sweep(
    t_min: f64,
    t_max: f64,
    steps: usize,
    out_path: Option<&Path>,
    json: bool,
) -> Result<CmdOutput, CliError> {
    for (name, value) in [("t_min", t_min), ("t_max", t_max)] {
        if !(0.0..=1.0).contains(&value) || value.is_nan() {
            return Err(CliError::usage(format!(
                "{name} must lie in [0, 1], got {value}"
            )));
        }
    }
    if t_min > t_max {
        return Err(CliError::usage(format!(
            "t_min ({t_min}) must not exceed t_max ({t_max})"
        )));
    }
    if steps < 2 {
        return Err(CliError::usage(format!(
            "steps must be at least 2, got {steps}"
        )));
    }

    let ts: Vec<f64> = if t_max - t_min < 1e-15 {
        vec![t_min]
    } else {
        (0..steps)
            .map(|k| t_min + (t_max - t_min) * k as f64 / (steps - 1) as f64)
            .collect()
    };
    let curve = dd_probability_curve(&ts).expect("grid already validated");

    let mut body = String::new();
    if !json {
        let _ = writeln!(body, "t,p_dd,contradiction");
    }
    for (t, p_dd) in &curve {
        let contradiction = verify(*t).expect("validated").contradiction;
        if json {
            let _ = writeln!(
                body,
                "{{\"t\":{},\"p_dd\":{},\"contradiction\":{}}}",
                num(*t),
                num(*p_dd),
                contradiction,
            );
        } else {
            let _ = writeln!(body, "{},{},{}", num(*t), num(*p_dd), contradiction);
        }
    }

    match out_path {
        Some(path) => {
            std::fs::write(path, &body)
                .map_err(|e| CliError::usage(format!("cannot write `{}`: {e}", path.display())))?;
            Ok(CmdOutput::success(format!(
                "wrote {} rows to {}\n",
                curve.len(),
                path.display()
            )))
        }
        None => Ok(CmdOutput::success(body)),
    }
}

/// `bound` — search the two-qubit Hardy ceiling and print the contrast
/// against the interferometer scheme's target.
pub fn bound(
    grid: usize,
    rounds: usize,
    theta: Option<f64>,
    json: bool,
) -> Result<CmdOutput, CliError> {
    let (lo, hi) = match theta {
        Some(theta) => (theta, theta),
        None => (0.0, std::f64::consts::FRAC_PI_4),
    };
    let result =
        optimize_bound_over(grid, rounds, lo, hi).map_err(|e| CliError::usage(e.to_string()))?;
    let scheme_target = verify(std::f64::consts::FRAC_1_SQRT_2)
        .expect("canonical transmissivity is valid")
        .target_probability;
    let ratio = if result.target > 1e-300 {
        Some(scheme_target / result.target)
    } else {
        None
    };

    let p = result.params;
    let mut out = String::new();
    if json {
        let _ = writeln!(
            out,
            "{{\"grid\":{grid},\"rounds\":{rounds},\"target\":{},\"r1\":{},\"r2\":{},\"r3\":{},\"theta\":{},\"alpha1\":{},\"alpha2\":{},\"beta1\":{},\"beta2\":{},\"feasible\":{},\"scheme_target\":{},\"ratio\":{}}}",
            num(result.target),
            num(result.residuals[0]),
            num(result.residuals[1]),
            num(result.residuals[2]),
            num(p.theta),
            num(p.alpha1),
            num(p.alpha2),
            num(p.beta1),
            num(p.beta2),
            result.is_feasible(),
            num(scheme_target),
            match ratio {
                Some(r) => num(r),
                None => "null".to_string(),
            },
        );
    } else {
        let _ = writeln!(
            out,
            "two-qubit Hardy ceiling search (grid {grid}, rounds {rounds}, theta in [{}, {}])",
            num(lo),
            num(hi)
        );
        let _ = writeln!(out, "best feasible target: {}", num(result.target));
        let _ = writeln!(
            out,
            "residuals: ({}, {}, {})",
            num(result.residuals[0]),
            num(result.residuals[1]),
            num(result.residuals[2])
        );
        let _ = writeln!(
            out,
            "params: theta {}, alpha1 {}, alpha2 {}, beta1 {}, beta2 {}",
            num(p.theta),
            num(p.alpha1),
            num(p.alpha2),
            num(p.beta1),
            num(p.beta2)
        );
        let _ = writeln!(
            out,
            "feasible: {}",
            if result.is_feasible() { "yes" } else { "no" }
        );
        let _ = writeln!(
            out,
            "interferometer target at t = 1/√2: {}",
            num(scheme_target)
        );
        match ratio {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "ratio: {} / {} = {}",
                    num(scheme_target),
                    num(result.target),
                    num(r)
                );
            }
            None => {
                let _ = writeln!(out, "ratio: undefined (ceiling is zero here)");
            }
        }
    }
    Ok(CmdOutput::success(out))
}
