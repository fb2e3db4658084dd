//! Scenario configuration: JSON documents with snake_case keys, one
//! scenario per invocation. Parsing happens in three passes so the
//! diagnostics stay sharp: a key walk that rejects unknown keys with a
//! nearest-key suggestion, a typed deserialization, and structural checks
//! (ranges, known names) with field paths.

use std::collections::BTreeMap;

use oqsim_core::qmat::ComplexMatrix;
use oqsim_core::states::StateJson;
use oqsim_core::Complex64;
use oqsim_core::{Scheme, Strengths};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub const CHANNEL_KINDS: [&str; 4] = ["amplitude-damping", "phase-damping", "depolarizing", "cad"];

pub const MEASURES: [&str; 4] = ["concurrence", "negativity", "coherence", "purity"];

pub const BUILTIN_STATES: [&str; 8] = [
    "bell-phi-plus",
    "bell-phi-minus",
    "bell-psi-plus",
    "bell-psi-minus",
    "qutrit-max-entangled",
    "qubit-plus",
    "qubit-zero",
    "qubit-mixed",
];

/// Linear grid start + i (stop - start) / (steps - 1); a single step
/// collapses to the start point.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl RangeSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        (0..self.steps)
            .map(|i| {
                // the closed form can overshoot stop by an ulp, which would
                // break parameter domain gates like gamma <= 1
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }

    fn check(&self, path: &str) -> Result<(), CliError> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(CliError::Config(format!(
                "invalid range at {path}: start and stop must be finite"
            )));
        }
        if self.steps < 1 {
            return Err(CliError::Config(format!(
                "invalid range at {path}: steps must be >= 1 (got {})",
                self.steps
            )));
        }
        if self.start > self.stop {
            return Err(CliError::Config(format!(
                "invalid range at {path}: start ({}) > stop ({})",
                self.start, self.stop
            )));
        }
        Ok(())
    }
}

/// Either the name of a builtin state or an inline serialized density
/// matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Builtin(String),
    Custom(StateJson),
}

/// Dense complex matrix as separate real and imaginary row lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn to_matrix(&self, path: &str) -> Result<ComplexMatrix, CliError> {
        let rows = self.re.len();
        if rows == 0 || self.im.len() != rows {
            return Err(CliError::Config(format!(
                "invalid matrix at {path}: re and im must hold the same nonzero number of rows"
            )));
        }
        let cols = self.re[0].len();
        for (r, im) in self.re.iter().zip(&self.im) {
            if r.len() != cols || im.len() != cols {
                return Err(CliError::Config(format!(
                    "invalid matrix at {path}: ragged rows (expected {cols} columns)"
                )));
            }
        }
        Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

/// Complex vector as separate real and imaginary parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl VectorJson {
    pub fn to_vec(&self, path: &str) -> Result<Vec<Complex64>, CliError> {
        if self.re.len() != self.im.len() {
            return Err(CliError::Config(format!(
                "invalid vector at {path}: re has {} entries, im has {}",
                self.re.len(),
                self.im.len()
            )));
        }
        Ok(self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect())
    }
}

/// Collision environment: a one-knob rotation preset or explicit branch
/// unitaries with the incoming environment vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EnvironmentSpec {
    /// Branch n rotates the two-level environment by n*theta with
    /// cos(theta) = overlap, so one collision scales the (0,1) coherence
    /// by exactly `overlap`.
    Rotation { overlap: f64 },
    Custom {
        unitaries: Vec<MatrixJson>,
        psi_in: VectorJson,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ChannelSweepConfig {
    pub state: StateSpec,
    pub channel: String,
    pub fixed: BTreeMap<String, f64>,
    pub param: RangeSpec,
    pub target: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measures: Option<Vec<String>>,
}

impl Default for ChannelSweepConfig {
    fn default() -> Self {
        Self {
            state: StateSpec::Builtin("bell-phi-plus".into()),
            channel: "amplitude-damping".into(),
            fixed: BTreeMap::new(),
            param: RangeSpec {
                start: 0.0,
                stop: 1.0,
                steps: 11,
            },
            target: 1,
            measures: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct EsdConfig {
    pub state: StateSpec,
    pub channel: String,
    pub fixed: BTreeMap<String, f64>,
    pub measure: String,
    pub param: RangeSpec,
    pub target: usize,
}

impl Default for EsdConfig {
    fn default() -> Self {
        Self {
            state: StateSpec::Builtin("bell-phi-plus".into()),
            channel: "depolarizing".into(),
            fixed: BTreeMap::new(),
            measure: "concurrence".into(),
            param: RangeSpec {
                start: 0.0,
                stop: 1.0,
                steps: 65,
            },
            target: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ThermalConfig {
    pub omega_bar: f64,
    pub delta: f64,
    pub n_bar: RangeSpec,
}

impl Default for ThermalConfig {
    fn default() -> Self {
        Self {
            omega_bar: 0.5,
            delta: 0.4,
            n_bar: RangeSpec {
                start: 0.0,
                stop: 1.0,
                steps: 65,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct CollisionConfig {
    pub state: StateSpec,
    pub environment: EnvironmentSpec,
    pub k_max: u32,
}

impl Default for CollisionConfig {
    fn default() -> Self {
        Self {
            state: StateSpec::Builtin("qubit-plus".into()),
            environment: EnvironmentSpec::Rotation { overlap: 0.9 },
            k_max: 20,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct EvolveSpec {
    pub grid: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
    pub t: f64,
}

impl Default for EvolveSpec {
    fn default() -> Self {
        Self {
            grid: vec![0.0, 0.5, 1.0],
            state: None,
            t: 1.0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SpatialConfig {
    pub n0: f64,
    pub v: f64,
    pub f0: f64,
    pub q0: f64,
    pub dx: RangeSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveSpec>,
}

impl Default for SpatialConfig {
    fn default() -> Self {
        Self {
            n0: 1.0,
            v: 1.0,
            f0: 1.0,
            q0: 1.0,
            dx: RangeSpec {
                start: 0.0,
                stop: 5.0,
                steps: 65,
            },
            evolve: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct EmSweepConfig {
    pub omega: f64,
    pub beta: f64,
    pub n_max: usize,
    pub detuning: RangeSpec,
    /// Defaults to pi / beta, one exchange period.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    pub t_steps: usize,
}

impl Default for EmSweepConfig {
    fn default() -> Self {
        Self {
            omega: 5.0,
            beta: 1.0,
            n_max: 2,
            detuning: RangeSpec {
                start: -5.0,
                stop: 5.0,
                steps: 5,
            },
            t_max: None,
            t_steps: 65,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ProtectConfig {
    pub state: StateSpec,
    pub d1: f64,
    pub d2: f64,
    pub schemes: Vec<Scheme>,
    pub strengths: Strengths,
    pub optimize: bool,
}

impl Default for ProtectConfig {
    fn default() -> Self {
        Self {
            state: StateSpec::Builtin("qutrit-max-entangled".into()),
            d1: 0.3,
            d2: 0.5,
            schemes: vec![Scheme::None, Scheme::WmQmr, Scheme::EamQmr],
            strengths: Strengths::default(),
            optimize: true,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Scenario {
    ChannelSweep(ChannelSweepConfig),
    Esd(EsdConfig),
    Thermal(ThermalConfig),
    Collision(CollisionConfig),
    Spatial(SpatialConfig),
    EmSweep(EmSweepConfig),
    Protect(ProtectConfig),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::ChannelSweep(_) => "channel-sweep",
            Scenario::Esd(_) => "esd",
            Scenario::Thermal(_) => "thermal",
            Scenario::Collision(_) => "collision",
            Scenario::Spatial(_) => "spatial",
            Scenario::EmSweep(_) => "em-sweep",
            Scenario::Protect(_) => "protect",
        }
    }

    /// Effective config echoed into the report, defaults applied.
    pub fn echo(&self) -> Value {
        let mut value = match self {
            Scenario::ChannelSweep(c) => serde_json::to_value(c),
            Scenario::Esd(c) => serde_json::to_value(c),
            Scenario::Thermal(c) => serde_json::to_value(c),
            Scenario::Collision(c) => serde_json::to_value(c),
            Scenario::Spatial(c) => serde_json::to_value(c),
            Scenario::EmSweep(c) => serde_json::to_value(c),
            Scenario::Protect(c) => serde_json::to_value(c),
        }
        .expect("config structs serialize");
        value
            .as_object_mut()
            .expect("config echo is an object")
            .insert("kind".into(), Value::String(self.kind().into()));
        value
    }
}

#[derive(Clone, Copy)]
enum Schema {
    /// Object with a closed key set.
    Object(&'static [(&'static str, Schema)]),
    /// Builtin state name or inline state object.
    State,
    /// Collision environment, discriminated on "kind".
    Environment,
    /// Anything; keys below this point belong to free-form data.
    Free,
}

const RANGE: Schema = Schema::Object(&[
    ("start", Schema::Free),
    ("stop", Schema::Free),
    ("steps", Schema::Free),
]);

const STATE_KEYS: Schema = Schema::Object(&[
    ("dims", Schema::Free),
    ("re", Schema::Free),
    ("im", Schema::Free),
]);

fn schema_for(kind: &str) -> Schema {
    match kind {
        "channel-sweep" => Schema::Object(&[
            ("kind", Schema::Free),
            ("state", Schema::State),
            ("channel", Schema::Free),
            ("fixed", Schema::Free),
            ("param", RANGE),
            ("target", Schema::Free),
            ("measures", Schema::Free),
        ]),
        "esd" => Schema::Object(&[
            ("kind", Schema::Free),
            ("state", Schema::State),
            ("channel", Schema::Free),
            ("fixed", Schema::Free),
            ("measure", Schema::Free),
            ("param", RANGE),
            ("target", Schema::Free),
        ]),
        "thermal" => Schema::Object(&[
            ("kind", Schema::Free),
            ("omega_bar", Schema::Free),
            ("delta", Schema::Free),
            ("n_bar", RANGE),
        ]),
        "collision" => Schema::Object(&[
            ("kind", Schema::Free),
            ("state", Schema::State),
            ("environment", Schema::Environment),
            ("k_max", Schema::Free),
        ]),
        "spatial" => Schema::Object(&[
            ("kind", Schema::Free),
            ("n0", Schema::Free),
            ("v", Schema::Free),
            ("f0", Schema::Free),
            ("q0", Schema::Free),
            ("dx", RANGE),
            (
                "evolve",
                Schema::Object(&[
                    ("grid", Schema::Free),
                    ("state", Schema::State),
                    ("t", Schema::Free),
                ]),
            ),
        ]),
        "em-sweep" => Schema::Object(&[
            ("kind", Schema::Free),
            ("omega", Schema::Free),
            ("beta", Schema::Free),
            ("n_max", Schema::Free),
            ("detuning", RANGE),
            ("t_max", Schema::Free),
            ("t_steps", Schema::Free),
        ]),
        "protect" => Schema::Object(&[
            ("kind", Schema::Free),
            ("state", Schema::State),
            ("d1", Schema::Free),
            ("d2", Schema::Free),
            ("schemes", Schema::Free),
            (
                "strengths",
                Schema::Object(&[
                    ("p1", Schema::Free),
                    ("p2", Schema::Free),
                    ("q1", Schema::Free),
                    ("q2", Schema::Free),
                ]),
            ),
            ("optimize", Schema::Free),
        ]),
        other => unreachable!("no schema for subcommand {other}"),
    }
}

pub fn nearest<'a>(bad: &str, candidates: &[&'a str]) -> Option<&'a str> {
    candidates
        .iter()
        .map(|&c| (strsim::levenshtein(bad, c), c))
        .min_by_key(|&(d, _)| d)
        .filter(|&(d, _)| d <= 3)
        .map(|(_, c)| c)
}

fn unknown_key(key: &str, path: &str, candidates: &[&str]) -> String {
    match nearest(key, candidates) {
        Some(best) => {
            format!("unknown key \"{key}\" at {path} (nearest valid key: \"{best}\")")
        }
        None => format!("unknown key \"{key}\" at {path}"),
    }
}

fn check_keys(value: &Value, schema: &Schema, path: &str, diags: &mut Vec<String>) {
    match schema {
        Schema::Free => {}
        Schema::Object(allowed) => {
            let Some(obj) = value.as_object() else {
                return; // wrong type, reported by the typed pass
            };
            let names: Vec<&str> = allowed.iter().map(|&(n, _)| n).collect();
            for (key, sub_value) in obj {
                match allowed.iter().find(|&&(n, _)| n == key) {
                    Some((_, sub_schema)) => {
                        check_keys(sub_value, sub_schema, &format!("{path}.{key}"), diags)
                    }
                    None => diags.push(unknown_key(key, path, &names)),
                }
            }
        }
        Schema::State => match value {
            Value::String(_) => {}
            Value::Object(_) => check_keys(value, &STATE_KEYS, path, diags),
            _ => {}
        },
        Schema::Environment => {
            let Some(obj) = value.as_object() else {
                return;
            };
            let branch = match obj.get("kind").and_then(Value::as_str) {
                Some("rotation") => &[("kind", Schema::Free), ("overlap", Schema::Free)][..],
                Some("custom") => &[
                    ("kind", Schema::Free),
                    ("unitaries", Schema::Free),
                    ("psi_in", Schema::Free),
                ][..],
                Some(other) => {
                    let suggestion = nearest(other, &["rotation", "custom"])
                        .map(|s| format!(" (nearest valid kind: \"{s}\")"))
                        .unwrap_or_default();
                    diags.push(format!(
                        "unknown environment kind \"{other}\" at {path}.kind{suggestion}"
                    ));
                    return;
                }
                None => {
                    diags.push(format!(
                        "missing key \"kind\" at {path} (expected \"rotation\" or \"custom\")"
                    ));
                    return;
                }
            };
            check_keys(value, &Schema::Object(branch), path, diags);
        }
    }
}

fn typed<T: for<'de> Deserialize<'de>>(kind: &str, mut value: Value) -> Result<T, CliError> {
    if let Some(obj) = value.as_object_mut() {
        obj.remove("kind");
    }
    serde_json::from_value(value)
        .map_err(|e| CliError::Config(format!("config does not match the {kind} schema: {e}")))
}

/// Parse and validate a scenario config for the given subcommand.
pub fn load_scenario(kind: &str, text: &str) -> Result<Scenario, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("config is not valid JSON: {e}")))?;
    let Some(obj) = value.as_object() else {
        return Err(CliError::Config("config root must be a JSON object".into()));
    };
    if let Some(k) = obj.get("kind") {
        match k.as_str() {
            Some(s) if s == kind => {}
            Some(s) => {
                return Err(CliError::Config(format!(
                    "config kind \"{s}\" does not match subcommand \"{kind}\""
                )))
            }
            None => {
                return Err(CliError::Config(
                    "\"kind\" must be a string naming the subcommand".into(),
                ))
            }
        }
    }

    let mut diags = Vec::new();
    check_keys(&value, &schema_for(kind), "$", &mut diags);
    if !diags.is_empty() {
        return Err(CliError::Config(diags.join("\n")));
    }

    let scenario = match kind {
        "channel-sweep" => Scenario::ChannelSweep(typed(kind, value)?),
        "esd" => Scenario::Esd(typed(kind, value)?),
        "thermal" => Scenario::Thermal(typed(kind, value)?),
        "collision" => Scenario::Collision(typed(kind, value)?),
        "spatial" => Scenario::Spatial(typed(kind, value)?),
        "em-sweep" => Scenario::EmSweep(typed(kind, value)?),
        "protect" => Scenario::Protect(typed(kind, value)?),
        other => unreachable!("no scenario for subcommand {other}"),
    };
    validate(&scenario)?;
    Ok(scenario)
}

fn check_name(value: &str, candidates: &[&str], what: &str, path: &str) -> Result<(), CliError> {
    if candidates.contains(&value) {
        return Ok(());
    }
    let suggestion = nearest(value, candidates)
        .map(|s| format!(" (nearest valid {what}: \"{s}\")"))
        .unwrap_or_default();
    Err(CliError::Config(format!(
        "unknown {what} \"{value}\" at {path}{suggestion}"
    )))
}

fn check_state(spec: &StateSpec, path: &str) -> Result<(), CliError> {
    match spec {
        StateSpec::Builtin(name) => check_name(name, &BUILTIN_STATES, "state", path),
        StateSpec::Custom(_) => Ok(()),
    }
}

fn allowed_fixed(channel: &str) -> &'static [&'static str] {
    match channel {
        "cad" => &["d2"],
        _ => &[],
    }
}

fn check_channel(channel: &str, fixed: &BTreeMap<String, f64>, path: &str) -> Result<(), CliError> {
    check_name(
        channel,
        &CHANNEL_KINDS,
        "channel",
        &format!("{path}.channel"),
    )?;
    let allowed = allowed_fixed(channel);
    for key in fixed.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::Config(format!(
                "channel \"{channel}\" takes no fixed parameter \"{key}\" at {path}.fixed \
                 (the swept range drives its parameter{})",
                if allowed.is_empty() {
                    String::new()
                } else {
                    format!("; allowed: {allowed:?}")
                }
            )));
        }
    }
    Ok(())
}

fn validate(scenario: &Scenario) -> Result<(), CliError> {
    match scenario {
        Scenario::ChannelSweep(c) => {
            check_state(&c.state, "$.state")?;
            check_channel(&c.channel, &c.fixed, "$")?;
            c.param.check("$.param")?;
            if let Some(measures) = &c.measures {
                for m in measures {
                    check_name(m, &MEASURES, "measure", "$.measures")?;
                }
            }
            Ok(())
        }
        Scenario::Esd(c) => {
            check_state(&c.state, "$.state")?;
            check_channel(&c.channel, &c.fixed, "$")?;
            check_name(
                &c.measure,
                &["concurrence", "negativity"],
                "measure",
                "$.measure",
            )?;
            c.param.check("$.param")
        }
        Scenario::Thermal(c) => c.n_bar.check("$.n_bar"),
        Scenario::Collision(c) => {
            check_state(&c.state, "$.state")?;
            if let EnvironmentSpec::Rotation { overlap } = &c.environment {
                if !overlap.is_finite() || overlap.abs() > 1.0 {
                    return Err(CliError::Config(format!(
                        "overlap must lie in [-1, 1] at $.environment.overlap (got {overlap})"
                    )));
                }
            }
            Ok(())
        }
        Scenario::Spatial(c) => {
            c.dx.check("$.dx")?;
            if let Some(evolve) = &c.evolve {
                if evolve.grid.is_empty() {
                    return Err(CliError::Config(
                        "evolve grid must be nonempty at $.evolve.grid".into(),
                    ));
                }
                if let Some(state) = &evolve.state {
                    check_state(state, "$.evolve.state")?;
                }
            }
            Ok(())
        }
        Scenario::EmSweep(c) => {
            c.detuning.check("$.detuning")?;
            if c.t_steps < 1 {
                return Err(CliError::Config("t_steps must be >= 1 at $.t_steps".into()));
            }
            match c.t_max {
                Some(t) if !(t.is_finite() && t > 0.0) => Err(CliError::Config(format!(
                    "t_max must be positive and finite at $.t_max (got {t})"
                ))),
                None if !(c.beta.is_finite() && c.beta > 0.0) => Err(CliError::Config(format!(
                    "the default t_max = pi/beta needs beta > 0 at $.beta (got {})",
                    c.beta
                ))),
                _ => Ok(()),
            }
        }
        Scenario::Protect(c) => {
            check_state(&c.state, "$.state")?;
            if c.schemes.is_empty() {
                return Err(CliError::Config(
                    "schemes must list at least one scheme at $.schemes".into(),
                ));
            }
            Ok(())
        }
    }
}

/// Self-describing document for the `schema` subcommand: per scenario the
/// full default config plus one-line field notes.
pub fn schema_document() -> Value {
    fn entry(kind: &str, defaults: Value, notes: &[(&str, &str)]) -> Value {
        let mut defaults = defaults;
        defaults
            .as_object_mut()
            .expect("defaults serialize to an object")
            .insert("kind".into(), Value::String(kind.into()));
        let notes: BTreeMap<&str, &str> = notes.iter().copied().collect();
        serde_json::json!({ "defaults": defaults, "notes": notes })
    }

    let doc: BTreeMap<&str, Value> = [
        (
            "channel-sweep",
            entry(
                "channel-sweep",
                serde_json::to_value(ChannelSweepConfig::default()).unwrap(),
                &[
                    ("state", "builtin name or inline {dims, re, im} object"),
                    ("channel", "amplitude-damping | phase-damping | depolarizing | cad; the range sweeps its parameter (d1 for cad)"),
                    ("fixed", "extra fixed parameters; cad accepts {\"d2\": x}, default 0"),
                    ("param", "swept range {start, stop, steps}, steps >= 1, start <= stop"),
                    ("target", "subsystem index the channel acts on; ignored for single-system states"),
                    ("measures", "subset of concurrence | negativity | coherence | purity; omit to pick every measure the state shape supports"),
                ],
            ),
        ),
        (
            "esd",
            entry(
                "esd",
                serde_json::to_value(EsdConfig::default()).unwrap(),
                &[
                    ("measure", "concurrence | negativity"),
                    ("param", "scan range; the summary p_star is the first zero of the measure, null when the measure never dies"),
                ],
            ),
        ),
        (
            "thermal",
            entry(
                "thermal",
                serde_json::to_value(ThermalConfig::default()).unwrap(),
                &[
                    ("n_bar", "occupation grid; rows list raw, clamped and the out-of-range flag"),
                    ("summary", "n_bar_star is the first zero of the clamped value, null when it stays positive"),
                ],
            ),
        ),
        (
            "collision",
            entry(
                "collision",
                serde_json::to_value(CollisionConfig::default()).unwrap(),
                &[
                    ("environment", "{kind: \"rotation\", overlap} preset or {kind: \"custom\", unitaries, psi_in}"),
                    ("k_max", "rows cover k = 0 ..= k_max collisions"),
                ],
            ),
        ),
        (
            "spatial",
            entry(
                "spatial",
                serde_json::to_value(SpatialConfig::default()).unwrap(),
                &[
                    ("dx", "separation grid for the decoherence rate table"),
                    ("evolve", "optional {grid, state, t}: evolve a state on position grid points for time t; state defaults to the uniform superposition over the grid"),
                ],
            ),
        ),
        (
            "em-sweep",
            entry(
                "em-sweep",
                serde_json::to_value(EmSweepConfig::default()).unwrap(),
                &[
                    ("detuning", "oscillator frequency offsets; omega_c = omega + detuning"),
                    ("t_max", "time grid end, default pi / beta"),
                    ("t_steps", "time grid point count"),
                ],
            ),
        ),
        (
            "protect",
            entry(
                "protect",
                serde_json::to_value(ProtectConfig::default()).unwrap(),
                &[
                    ("schemes", "subset of none | wm-qmr | eam-qmr, one table row each"),
                    ("strengths", "base strengths {p1, p2, q1, q2}; all four fields required when given"),
                    ("optimize", "true replaces q1, q2 with the grid + pattern-search optimum per scheme"),
                ],
            ),
        ),
    ]
    .into_iter()
    .collect();

    serde_json::json!({
        "scenarios": doc,
        "output": {
            "csv": "result table only; header row then one row per grid point",
            "json": "full report: scenario echo, columns, rows, summary, tool_version; wall_time_s only with --timing",
            "exit_codes": { "0": "success", "2": "invalid config", "3": "numeric failure", "4": "io failure" },
        },
    })
}
