//! Scenario execution: each subcommand maps onto the corresponding
//! library operations and fills a result table plus summary scalars.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use oqsim_core::channels::{
    amplitude_damping, apply, apply_to_subsystem, correlated_amplitude_damping, depolarizing,
    phase_damping,
};
use oqsim_core::dynamics::{
    collision_apply, em_resonance_sweep, find_esd, find_first_zero, spatial_decoherence_factor,
    CollisionModel, EMOscillatorModel, EsdMeasure, ScatteringEnvironment,
};
use oqsim_core::measures::{
    concurrence, l1_coherence, negativity, purity, thermal_steady_concurrence, ThermalParams,
};
use oqsim_core::protection::{optimize_qmr, run_scheme_on};
use oqsim_core::qmat::ComplexMatrix;
use oqsim_core::states::{bell_state, maximally_entangled, maximally_mixed, pure_state, BellKind};
use oqsim_core::Complex64;
use oqsim_core::{DensityMatrix, KrausChannel, Scheme};
use serde_json::Value;

use crate::config::{
    ChannelSweepConfig, CollisionConfig, EmSweepConfig, EnvironmentSpec, EsdConfig, ProtectConfig,
    Scenario, SpatialConfig, StateSpec, ThermalConfig,
};
use crate::output::{Cell, RunReport};
use crate::CliError;

pub fn run(scenario: &Scenario) -> Result<RunReport, CliError> {
    let echo = scenario.echo();
    match scenario {
        Scenario::ChannelSweep(c) => channel_sweep(c, echo),
        Scenario::Esd(c) => esd(c, echo),
        Scenario::Thermal(c) => thermal(c, echo),
        Scenario::Collision(c) => collision(c, echo),
        Scenario::Spatial(c) => spatial(c, echo),
        Scenario::EmSweep(c) => em_sweep(c, echo),
        Scenario::Protect(c) => protect(c, echo),
    }
}

fn build_state(spec: &StateSpec) -> Result<DensityMatrix, CliError> {
    match spec {
        StateSpec::Builtin(name) => match name.as_str() {
            "bell-phi-plus" => Ok(bell_state(BellKind::PhiPlus)),
            "bell-phi-minus" => Ok(bell_state(BellKind::PhiMinus)),
            "bell-psi-plus" => Ok(bell_state(BellKind::PsiPlus)),
            "bell-psi-minus" => Ok(bell_state(BellKind::PsiMinus)),
            "qutrit-max-entangled" => maximally_entangled(3).map_err(CliError::from),
            "qubit-plus" => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                pure_state(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)], &[2])
                    .map_err(CliError::from)
            }
            "qubit-zero" => pure_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], &[2])
                .map_err(CliError::from),
            "qubit-mixed" => maximally_mixed(&[2]).map_err(CliError::from),
            other => unreachable!("builtin {other} passed validation"),
        },
        StateSpec::Custom(json) => DensityMatrix::try_from(json.clone())
            .map_err(|e| CliError::Config(format!("inline state is not physical: {e}"))),
    }
}

fn build_channel(
    kind: &str,
    x: f64,
    fixed: &BTreeMap<String, f64>,
) -> Result<KrausChannel, CliError> {
    match kind {
        "amplitude-damping" => amplitude_damping(x),
        "phase-damping" => phase_damping(x),
        "depolarizing" => depolarizing(x),
        "cad" => correlated_amplitude_damping(x, fixed.get("d2").copied().unwrap_or(0.0)),
        other => unreachable!("channel {other} passed validation"),
    }
    .map_err(CliError::from)
}

fn apply_channel(
    channel: &KrausChannel,
    rho: &DensityMatrix,
    target: usize,
) -> Result<DensityMatrix, CliError> {
    if rho.dims().len() == 1 {
        apply(channel, rho).map_err(CliError::from)
    } else {
        apply_to_subsystem(channel, rho, target).map_err(CliError::from)
    }
}

fn measure_value(name: &str, rho: &DensityMatrix) -> Result<f64, CliError> {
    match name {
        "concurrence" => concurrence(rho).map_err(CliError::from),
        "negativity" => negativity(rho, 1).map_err(CliError::from),
        "coherence" => Ok(l1_coherence(rho)),
        "purity" => Ok(purity(rho)),
        other => unreachable!("measure {other} passed validation"),
    }
}

fn default_measures(dims: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    if dims == [2, 2] {
        out.push("concurrence".into());
    }
    if dims.len() >= 2 {
        out.push("negativity".into());
    }
    out.push("coherence".into());
    out.push("purity".into());
    out
}

fn max_offdiag(m: &ComplexMatrix) -> f64 {
    let mut best = 0.0f64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                best = best.max(m[(i, j)].norm());
            }
        }
    }
    best
}

fn channel_sweep(cfg: &ChannelSweepConfig, echo: Value) -> Result<RunReport, CliError> {
    let rho0 = build_state(&cfg.state)?;
    let measures = cfg
        .measures
        .clone()
        .unwrap_or_else(|| default_measures(rho0.dims()));
    let mut columns = vec!["param".to_string()];
    columns.extend(measures.iter().cloned());

    let mut rows = Vec::with_capacity(cfg.param.steps);
    for x in cfg.param.points() {
        let channel = build_channel(&cfg.channel, x, &cfg.fixed)?;
        let out = apply_channel(&channel, &rho0, cfg.target)?;
        let mut row = vec![Cell::Num(x)];
        for name in &measures {
            row.push(Cell::Num(measure_value(name, &out)?));
        }
        rows.push(row);
    }
    Ok(RunReport::new(
        echo,
        columns.iter().map(String::as_str).collect(),
        rows,
        BTreeMap::new(),
    ))
}

fn esd(cfg: &EsdConfig, echo: Value) -> Result<RunReport, CliError> {
    let rho0 = build_state(&cfg.state)?;
    let family = |x: f64| -> oqsim_core::Result<DensityMatrix> {
        let channel = match cfg.channel.as_str() {
            "amplitude-damping" => amplitude_damping(x),
            "phase-damping" => phase_damping(x),
            "depolarizing" => depolarizing(x),
            "cad" => correlated_amplitude_damping(x, cfg.fixed.get("d2").copied().unwrap_or(0.0)),
            other => unreachable!("channel {other} passed validation"),
        }?;
        if rho0.dims().len() == 1 {
            apply(&channel, &rho0)
        } else {
            apply_to_subsystem(&channel, &rho0, cfg.target)
        }
    };

    let mut rows = Vec::with_capacity(cfg.param.steps);
    for x in cfg.param.points() {
        let out = family(x).map_err(CliError::from)?;
        rows.push(vec![
            Cell::Num(x),
            Cell::Num(measure_value(&cfg.measure, &out)?),
        ]);
    }

    let measure = match cfg.measure.as_str() {
        "concurrence" => EsdMeasure::Concurrence,
        _ => EsdMeasure::Negativity,
    };
    let p_star = if cfg.param.start < cfg.param.stop {
        find_esd(family, measure, cfg.param.start, cfg.param.stop).map_err(CliError::from)?
    } else {
        None
    };
    let summary = BTreeMap::from([(
        "p_star".to_string(),
        p_star.map_or(Value::Null, |x| serde_json::json!(x)),
    )]);
    Ok(RunReport::new(echo, vec!["param", "value"], rows, summary))
}

fn thermal(cfg: &ThermalConfig, echo: Value) -> Result<RunReport, CliError> {
    let at = |n_bar: f64| {
        thermal_steady_concurrence(ThermalParams {
            n_bar,
            omega_bar: cfg.omega_bar,
            delta: cfg.delta,
        })
    };

    let mut rows = Vec::with_capacity(cfg.n_bar.steps);
    for n in cfg.n_bar.points() {
        let out = at(n).map_err(CliError::from)?;
        rows.push(vec![
            Cell::Num(n),
            Cell::Num(out.raw),
            Cell::Num(out.clamped),
            Cell::Int(out.out_of_range as i64),
        ]);
    }

    let n_bar_star = if cfg.n_bar.start < cfg.n_bar.stop {
        find_first_zero(
            |n| at(n).map(|out| out.clamped),
            cfg.n_bar.start,
            cfg.n_bar.stop,
        )
        .map_err(CliError::from)?
    } else {
        None
    };
    let summary = BTreeMap::from([(
        "n_bar_star".to_string(),
        n_bar_star.map_or(Value::Null, |x| serde_json::json!(x)),
    )]);
    Ok(RunReport::new(
        echo,
        vec!["n_bar", "raw", "clamped", "out_of_range"],
        rows,
        summary,
    ))
}

fn rotation(angle: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => Complex64::new(angle.cos(), 0.0),
        (0, 1) => Complex64::new(-angle.sin(), 0.0),
        _ => Complex64::new(angle.sin(), 0.0),
    })
}

fn collision(cfg: &CollisionConfig, echo: Value) -> Result<RunReport, CliError> {
    let rho0 = build_state(&cfg.state)?;
    let model = match &cfg.environment {
        EnvironmentSpec::Rotation { overlap } => {
            let theta = overlap.acos();
            let branches = (0..rho0.dim())
                .map(|n| rotation(n as f64 * theta))
                .collect();
            CollisionModel::new(
                branches,
                vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            )
        }
        EnvironmentSpec::Custom { unitaries, psi_in } => {
            let branches = unitaries
                .iter()
                .enumerate()
                .map(|(i, m)| m.to_matrix(&format!("$.environment.unitaries[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            CollisionModel::new(branches, psi_in.to_vec("$.environment.psi_in")?)
        }
    }
    .map_err(CliError::from)?;

    let mut rows = Vec::with_capacity(cfg.k_max as usize + 1);
    for k in 0..=cfg.k_max {
        let state = collision_apply(&model, &rho0, k).map_err(CliError::from)?;
        rows.push(vec![
            Cell::Int(k as i64),
            Cell::Num(l1_coherence(&state)),
            Cell::Num(max_offdiag(state.matrix())),
        ]);
    }

    let mut max_factor: f64 = 0.0;
    for m in 0..model.pointer_count() {
        for n in 0..model.pointer_count() {
            if m != n {
                max_factor = max_factor.max(model.factor(m, n).map_err(CliError::from)?.norm());
            }
        }
    }
    let summary = BTreeMap::from([("max_factor_abs".to_string(), serde_json::json!(max_factor))]);
    Ok(RunReport::new(
        echo,
        vec!["k", "coherence", "max_offdiag"],
        rows,
        summary,
    ))
}

fn spatial(cfg: &SpatialConfig, echo: Value) -> Result<RunReport, CliError> {
    let env = ScatteringEnvironment::new(cfg.n0, cfg.v, cfg.f0, cfg.q0).map_err(CliError::from)?;
    let rows = cfg
        .dx
        .points()
        .into_iter()
        .map(|dx| {
            vec![
                Cell::Num(dx),
                Cell::Num(spatial_decoherence_factor(&env, dx)),
            ]
        })
        .collect();

    let mut summary = BTreeMap::from([(
        "rate_plateau".to_string(),
        serde_json::json!(4.0 * PI * cfg.n0 * cfg.v * cfg.f0 * cfg.f0),
    )]);
    if let Some(evolve) = &cfg.evolve {
        let rho0 = match &evolve.state {
            Some(spec) => build_state(spec)?,
            None => {
                let n = evolve.grid.len();
                let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
                pure_state(&vec![amp; n], &[n]).map_err(CliError::from)?
            }
        };
        let out = oqsim_core::dynamics::evolve_positional(&rho0, &evolve.grid, &env, evolve.t)
            .map_err(CliError::from)?;
        summary.insert(
            "evolve_coherence".to_string(),
            serde_json::json!(l1_coherence(&out)),
        );
        summary.insert("evolve_purity".to_string(), serde_json::json!(purity(&out)));
    }
    Ok(RunReport::new(echo, vec!["dx", "rate"], rows, summary))
}

fn em_sweep(cfg: &EmSweepConfig, echo: Value) -> Result<RunReport, CliError> {
    let model = EMOscillatorModel::new(cfg.omega, cfg.omega, cfg.beta, cfg.n_max)
        .map_err(CliError::from)?;
    let t_max = cfg.t_max.unwrap_or(PI / cfg.beta);
    let times = crate::config::RangeSpec {
        start: 0.0,
        stop: t_max,
        steps: cfg.t_steps,
    }
    .points();
    let detunings = cfg.detuning.points();
    let sweep = em_resonance_sweep(&model, &detunings, &times).map_err(CliError::from)?;

    let mut rows = Vec::with_capacity(detunings.len() * times.len());
    for (i, &detuning) in sweep.detunings.iter().enumerate() {
        for (j, &t) in sweep.times.iter().enumerate() {
            rows.push(vec![
                Cell::Num(detuning),
                Cell::Num(t),
                Cell::Num(sweep.negativity[i][j]),
            ]);
        }
    }

    let best = sweep
        .max_negativity
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.total_cmp(b))
        .map(|(i, _)| i)
        .expect("detuning grid is nonempty");
    let overall = sweep.max_negativity[best];
    let summary = BTreeMap::from([
        (
            "best_detuning".to_string(),
            serde_json::json!(sweep.detunings[best]),
        ),
        ("max_negativity".to_string(), serde_json::json!(overall)),
        (
            "conservation_error".to_string(),
            serde_json::json!(sweep.conservation_error),
        ),
    ]);
    Ok(RunReport::new(
        echo,
        vec!["detuning", "t", "negativity"],
        rows,
        summary,
    ))
}

fn scheme_name(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::None => "none",
        Scheme::WmQmr => "wm-qmr",
        Scheme::EamQmr => "eam-qmr",
    }
}

fn protect(cfg: &ProtectConfig, echo: Value) -> Result<RunReport, CliError> {
    let rho0 = build_state(&cfg.state)?;
    let mut rows = Vec::with_capacity(cfg.schemes.len());
    let mut best: Option<(Scheme, f64)> = None;
    for &scheme in &cfg.schemes {
        let report = if cfg.optimize {
            optimize_qmr(scheme, &rho0, cfg.d1, cfg.d2, &cfg.strengths)
                .map_err(CliError::from)?
                .1
        } else {
            run_scheme_on(scheme, &rho0, cfg.d1, cfg.d2, &cfg.strengths).map_err(CliError::from)?
        };
        rows.push(vec![
            Cell::Str(scheme_name(scheme).into()),
            Cell::Num(report.negativity),
            Cell::Num(report.success_probability),
            Cell::Num(report.strengths.p1),
            Cell::Num(report.strengths.p2),
            Cell::Num(report.strengths.q1),
            Cell::Num(report.strengths.q2),
        ]);
        if best.is_none_or(|(_, n)| report.negativity > n) {
            best = Some((scheme, report.negativity));
        }
    }
    let (best_scheme, best_negativity) = best.expect("schemes list is nonempty");
    let summary = BTreeMap::from([
        (
            "best_scheme".to_string(),
            serde_json::json!(scheme_name(best_scheme)),
        ),
        (
            "best_negativity".to_string(),
            serde_json::json!(best_negativity),
        ),
    ]);
    Ok(RunReport::new(
        echo,
        vec![
            "scheme",
            "negativity",
            "success_probability",
            "p1",
            "p2",
            "q1",
            "q2",
        ],
        rows,
        summary,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::load_scenario;

    fn run_json(kind: &str, text: &str) -> RunReport {
        run(&load_scenario(kind, text).unwrap()).unwrap()
    }

    #[test]
    fn esd_of_depolarized_bell_summarizes_p_star() {
        let report = run_json("esd", "{}");
        assert_eq!(report.rows.len(), 65);
        let p_star = report.summary["p_star"].as_f64().unwrap();
        assert!((p_star - 0.5).abs() <= 1e-6, "p_star = {p_star}");
    }

    #[test]
    fn esd_of_damped_bell_has_no_death() {
        let report = run_json(
            "esd",
            r#"{"channel": "amplitude-damping",
                "param": {"start": 0.0, "stop": 0.99, "steps": 20}}"#,
        );
        assert!(report.summary["p_star"].is_null());
        assert_eq!(report.rows.len(), 20);
    }

    #[test]
    fn channel_sweep_rows_match_direct_evaluation() {
        let report = run_json(
            "channel-sweep",
            r#"{"param": {"start": 0.0, "stop": 0.36, "steps": 4}}"#,
        );
        assert_eq!(report.rows.len(), 4);
        assert_eq!(
            report.columns,
            ["param", "concurrence", "negativity", "coherence", "purity"]
        );
        let Cell::Num(x) = report.rows[3][0] else {
            panic!("param cell is numeric")
        };
        let Cell::Num(c) = report.rows[3][1] else {
            panic!("measure cell is numeric")
        };
        assert_eq!(x, 0.36);
        assert!((c - (1.0f64 - 0.36).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn thermal_defaults_locate_the_death_point() {
        let report = run_json("thermal", "{}");
        let star = report.summary["n_bar_star"].as_f64().unwrap();
        assert!((star - 0.264_715_006_165_965_66).abs() < 1e-4, "{star}");
    }

    #[test]
    fn collision_coherence_follows_the_overlap_power() {
        let report = run_json("collision", r#"{"k_max": 20}"#);
        assert_eq!(report.rows.len(), 21);
        let Cell::Num(last) = report.rows[20][1] else {
            panic!("coherence cell is numeric")
        };
        assert!((last - 0.9f64.powi(20)).abs() < 1e-12);
    }

    #[test]
    fn em_sweep_prefers_zero_detuning() {
        let report = run_json(
            "em-sweep",
            r#"{"detuning": {"start": -5.0, "stop": 5.0, "steps": 5}}"#,
        );
        assert_eq!(report.summary["best_detuning"].as_f64().unwrap(), 0.0);
        let max = report.summary["max_negativity"].as_f64().unwrap();
        assert!((max - 0.5).abs() < 1e-6);
    }

    #[test]
    fn protect_table_ranks_the_assisted_scheme_first() {
        let report = run_json("protect", "{}");
        assert_eq!(report.rows.len(), 3);
        assert_eq!(report.summary["best_scheme"].as_str().unwrap(), "eam-qmr");
        let best = report.summary["best_negativity"].as_f64().unwrap();
        assert!((best - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spatial_evolve_summary_reports_the_final_coherence() {
        let report = run_json(
            "spatial",
            r#"{"evolve": {"grid": [0.0, 0.5, 1.0], "t": 0.5}}"#,
        );
        assert!(report.summary.contains_key("evolve_coherence"));
        let c = report.summary["evolve_coherence"].as_f64().unwrap();
        assert!(c > 0.0 && c < 2.0, "coherence {c} should have decayed");
    }
}
