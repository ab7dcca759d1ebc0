//! Scenario selection and flat `section.key=value` configuration.
//!
//! A run is configured in layers, later layers overriding earlier ones:
//! the named scenario preset, the lines of an optional config file, the
//! repeatable `--set key=value` flags (in order), and finally the `--dt`
//! and `--duration` convenience flags. Config files are plain text, one
//! `key=value` per line; blank lines and lines starting with `#` are
//! ignored.
//!
//! Recognized keys (see the README for the full table):
//!
//! - `params.sigma`, `params.beta`, `params.theta` (integer), `params.K`,
//!   `params.d0`, `params.d1`, `params.delta`; `params.alpha` is a
//!   deprecated alias for `params.sigma`.
//! - `integrator.scheme` (`euler`|`rk4`), `integrator.dt`,
//!   `integrator.duration`.
//! - `limits.enabled` (`true`|`false`), `limits.max_acceleration`,
//!   `limits.max_speed`.
//! - `scenario.agentN.pos_x|pos_y|orientation_deg|speed` for agent `N`
//!   (0-based); `scenario.leader.enabled|switch_time|amplitude`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use flock_core::ControlLawKind;
use flock_dynamics::{InitialAgent, LeaderScript, ScenarioSpec};

/// Built-in scenario presets plus a build-your-own escape hatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioName {
    /// Three governed agents, no leader.
    Leaderless3,
    /// A scripted leader and one follower with a wide distance window.
    LeaderFollower2,
    /// No preset agents: the initial flock comes entirely from
    /// `scenario.agentN.*` keys (leader optional, always agent 0).
    Custom,
}

impl ScenarioName {
    /// The base spec this name stands for, before any overrides.
    fn base_spec(self) -> ScenarioSpec {
        match self {
            ScenarioName::Leaderless3 => ScenarioSpec::leaderless_three(),
            ScenarioName::LeaderFollower2 => ScenarioSpec::leader_follower_pair(),
            ScenarioName::Custom => ScenarioSpec {
                initial: Vec::new(),
                leader_script: None,
                ..ScenarioSpec::leaderless_three()
            },
        }
    }
}

impl std::fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScenarioName::Leaderless3 => "leaderless3",
            ScenarioName::LeaderFollower2 => "leader_follower2",
            ScenarioName::Custom => "custom",
        })
    }
}

impl std::str::FromStr for ScenarioName {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leaderless3" => Ok(ScenarioName::Leaderless3),
            "leader_follower2" => Ok(ScenarioName::LeaderFollower2),
            "custom" => Ok(ScenarioName::Custom),
            other => Err(ConfigError::UnknownScenario {
                name: other.to_string(),
            }),
        }
    }
}

/// Which control law(s) a command executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawChoice {
    /// One law.
    Single(ControlLawKind),
    /// All four laws on identical initial conditions.
    All,
}

impl std::str::FromStr for LawChoice {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(LawChoice::All);
        }
        s.parse::<ControlLawKind>()
            .map(LawChoice::Single)
            .map_err(|_| ConfigError::UnknownLaw {
                name: s.to_string(),
            })
    }
}

/// A fully resolved and validated run request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// The preset the resolved scenario was derived from.
    pub scenario: ScenarioName,
    /// Law(s) to execute.
    pub law: LawChoice,
    /// The resolved scenario. For [`LawChoice::All`] its `law` field is a
    /// placeholder; the comparison substitutes each law in turn.
    pub spec: ScenarioSpec,
    /// Directory that receives all emitted files.
    pub output_dir: PathBuf,
}

/// Anything wrong with the requested configuration.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    /// The config file could not be read.
    #[error("cannot read config file {path}: {source}")]
    Io {
        /// Offending path.
        path: PathBuf,
        /// Underlying I/O error.
        source: std::io::Error,
    },
    /// A config-file line is not `key=value`.
    #[error("config line {line_no} is not of the form key=value: `{content}`")]
    BadLine {
        /// 1-based line number.
        line_no: usize,
        /// The offending line.
        content: String,
    },
    /// The scenario name is not one of the presets.
    #[error("unknown scenario `{name}` (expected leaderless3, leader_follower2, or custom)")]
    UnknownScenario {
        /// The rejected name.
        name: String,
    },
    /// The law name is not recognized.
    #[error("unknown law `{name}` (expected proposed, model1, model2, model3, or all)")]
    UnknownLaw {
        /// The rejected name.
        name: String,
    },
    /// `all` was requested where only a single law is meaningful.
    #[error("`run` executes a single law; use the `compare` subcommand to run all four")]
    AllLawsInSingleRun,
    /// A key that no section defines.
    #[error("unknown config key `{key}`")]
    UnknownKey {
        /// The rejected key.
        key: String,
    },
    /// A value that does not parse as its key's type.
    #[error("invalid value `{value}` for `{key}`: expected {expected}")]
    BadValue {
        /// The key being set.
        key: String,
        /// The rejected value.
        value: String,
        /// Human description of the expected type.
        expected: &'static str,
    },
    /// An `agentN` index outside the preset's flock.
    #[error("`{key}` refers to agent {index}, but the scenario defines only {count} agents")]
    AgentOutOfRange {
        /// The key being set.
        key: String,
        /// The out-of-range index.
        index: usize,
        /// Number of agents in the scenario.
        count: usize,
    },
    /// Custom agents must be numbered 0, 1, 2, … without gaps.
    #[error("custom agents must be numbered contiguously from 0; agent {index} is missing")]
    NonContiguousAgents {
        /// First missing index.
        index: usize,
    },
    /// A custom agent needs all four of its fields.
    #[error("agent {index} is missing `scenario.agent{index}.{field}`")]
    IncompleteAgent {
        /// The incomplete agent.
        index: usize,
        /// The missing field name.
        field: &'static str,
    },
    /// The assembled scenario failed validation.
    #[error(transparent)]
    Invalid(#[from] flock_dynamics::ScenarioError),
}

/// Raw command-line/request inputs to [`load_config`].
#[derive(Debug, Clone)]
pub struct ConfigInputs<'a> {
    /// Scenario preset name.
    pub scenario: &'a str,
    /// `proposed`, `model1`…`model3`, or `all`.
    pub law: &'a str,
    /// Whether `all` is acceptable (true for `compare`).
    pub allow_all: bool,
    /// Optional `key=value` config file.
    pub config_path: Option<&'a Path>,
    /// Repeatable `--set key=value` overrides, applied in order.
    pub sets: &'a [String],
    /// `--dt` flag, applied last.
    pub dt: Option<f64>,
    /// `--duration` flag, applied last.
    pub duration: Option<f64>,
    /// Output directory.
    pub out_dir: &'a Path,
}

/// Agent fields accumulated from `scenario.agentN.*` keys.
#[derive(Debug, Clone, Copy, Default)]
struct PartialAgent {
    pos_x: Option<f64>,
    pos_y: Option<f64>,
    orientation_deg: Option<f64>,
    speed: Option<f64>,
}

impl PartialAgent {
    fn from_agent(a: &InitialAgent) -> Self {
        PartialAgent {
            pos_x: Some(a.position.x()),
            pos_y: Some(a.position.y()),
            orientation_deg: Some(a.orientation_deg),
            speed: Some(a.speed),
        }
    }

    fn build(self, index: usize) -> Result<InitialAgent, ConfigError> {
        let missing = |field| ConfigError::IncompleteAgent { index, field };
        Ok(InitialAgent::new(
            self.pos_x.ok_or_else(|| missing("pos_x"))?,
            self.pos_y.ok_or_else(|| missing("pos_y"))?,
            self.orientation_deg.ok_or_else(|| missing("orientation_deg"))?,
            self.speed.ok_or_else(|| missing("speed"))?,
        ))
    }
}

/// Mutable assembly state while overrides are applied.
struct Builder {
    scenario: ScenarioName,
    spec: ScenarioSpec,
    agents: BTreeMap<usize, PartialAgent>,
    leader_enabled: Option<bool>,
    leader_switch_time: Option<f64>,
    leader_amplitude: Option<f64>,
    warnings: Vec<String>,
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    value.parse::<f64>().map_err(|_| ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        expected: "a number",
    })
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(ConfigError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
            expected: "`true` or `false`",
        }),
    }
}

fn parse_theta(key: &str, value: &str) -> Result<u32, ConfigError> {
    let bad = |expected| ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        expected,
    };
    let v = value
        .parse::<f64>()
        .map_err(|_| bad("a positive integer"))?;
    if !(v.fract() == 0.0 && v >= 0.0 && v <= u32::MAX as f64) {
        return Err(bad("a positive integer"));
    }
    Ok(v as u32)
}

impl Builder {
    fn new(scenario: ScenarioName) -> Self {
        let spec = scenario.base_spec();
        let agents = spec
            .initial
            .iter()
            .enumerate()
            .map(|(i, a)| (i, PartialAgent::from_agent(a)))
            .collect();
        Builder {
            scenario,
            spec,
            agents,
            leader_enabled: None,
            leader_switch_time: None,
            leader_amplitude: None,
            warnings: Vec::new(),
        }
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let unknown = || ConfigError::UnknownKey {
            key: key.to_string(),
        };
        if let Some(field) = key.strip_prefix("params.") {
            let p = &mut self.spec.params;
            match field {
                "sigma" => p.sigma = parse_f64(key, value)?,
                "alpha" => {
                    self.warnings.push(
                        "`params.alpha` is deprecated; use `params.sigma`".to_string(),
                    );
                    p.sigma = parse_f64(key, value)?;
                }
                "beta" => p.beta = parse_f64(key, value)?,
                "theta" => p.theta = parse_theta(key, value)?,
                "K" => p.gain = parse_f64(key, value)?,
                "d0" => p.d0 = parse_f64(key, value)?,
                "d1" => p.d1 = parse_f64(key, value)?,
                "delta" => p.delta = parse_f64(key, value)?,
                _ => return Err(unknown()),
            }
        } else if let Some(field) = key.strip_prefix("integrator.") {
            let i = &mut self.spec.integrator;
            match field {
                "scheme" => {
                    i.scheme = value.parse().map_err(|_| ConfigError::BadValue {
                        key: key.to_string(),
                        value: value.to_string(),
                        expected: "`euler` or `rk4`",
                    })?;
                }
                "dt" => i.dt = parse_f64(key, value)?,
                "duration" => i.duration = parse_f64(key, value)?,
                _ => return Err(unknown()),
            }
        } else if let Some(field) = key.strip_prefix("limits.") {
            let l = &mut self.spec.limits;
            match field {
                "enabled" => l.enabled = parse_bool(key, value)?,
                "max_acceleration" => l.max_acceleration = parse_f64(key, value)?,
                "max_speed" => l.max_speed = parse_f64(key, value)?,
                _ => return Err(unknown()),
            }
        } else if let Some(field) = key.strip_prefix("scenario.leader.") {
            match field {
                "enabled" => self.leader_enabled = Some(parse_bool(key, value)?),
                "switch_time" => self.leader_switch_time = Some(parse_f64(key, value)?),
                "amplitude" => self.leader_amplitude = Some(parse_f64(key, value)?),
                _ => return Err(unknown()),
            }
        } else if let Some(rest) = key.strip_prefix("scenario.agent") {
            let (index_str, field) = rest.split_once('.').ok_or_else(unknown)?;
            let index: usize = index_str.parse().map_err(|_| unknown())?;
            if self.scenario != ScenarioName::Custom && index >= self.agents.len() {
                return Err(ConfigError::AgentOutOfRange {
                    key: key.to_string(),
                    index,
                    count: self.agents.len(),
                });
            }
            let v = parse_f64(key, value)?;
            let agent = self.agents.entry(index).or_default();
            match field {
                "pos_x" => agent.pos_x = Some(v),
                "pos_y" => agent.pos_y = Some(v),
                "orientation_deg" => agent.orientation_deg = Some(v),
                "speed" => agent.speed = Some(v),
                _ => return Err(unknown()),
            }
        } else {
            return Err(unknown());
        }
        Ok(())
    }

    fn finish(mut self) -> Result<(ScenarioSpec, Vec<String>), ConfigError> {
        // Materialize agents, demanding contiguous indices.
        let mut initial = Vec::with_capacity(self.agents.len());
        for (expected, (&index, partial)) in self.agents.iter().enumerate() {
            if index != expected {
                return Err(ConfigError::NonContiguousAgents { index: expected });
            }
            initial.push(partial.build(index)?);
        }
        self.spec.initial = initial;

        // Resolve the leader script.
        match self.leader_enabled {
            Some(true) if self.spec.leader_script.is_none() => {
                self.spec.leader_script = Some(LeaderScript::default());
            }
            Some(false) => self.spec.leader_script = None,
            _ => {}
        }
        match &mut self.spec.leader_script {
            Some(script) => {
                if let Some(t) = self.leader_switch_time {
                    script.switch_time = t;
                }
                if let Some(a) = self.leader_amplitude {
                    script.amplitude = a;
                }
            }
            None => {
                for (set, key) in [
                    (self.leader_switch_time.is_some(), "scenario.leader.switch_time"),
                    (self.leader_amplitude.is_some(), "scenario.leader.amplitude"),
                ] {
                    if set {
                        self.warnings.push(format!(
                            "`{key}` is ignored because the scenario has no leader \
                             (set `scenario.leader.enabled=true` to add one)"
                        ));
                    }
                }
            }
        }

        for w in self.spec.params.warnings() {
            self.warnings.push(w.to_string());
        }
        Ok((self.spec, self.warnings))
    }
}

/// Splits a `key=value` item, trimming surrounding whitespace.
fn split_pair(item: &str) -> Option<(&str, &str)> {
    let (key, value) = item.split_once('=')?;
    let (key, value) = (key.trim(), value.trim());
    if key.is_empty() {
        return None;
    }
    Some((key, value))
}

/// Resolves scenario, overrides, and flags into a validated [`RunConfig`],
/// along with any advisory warnings.
///
/// # Errors
///
/// Any unreadable file, malformed line, unknown key or value, or scenario
/// that fails validation for the requested law(s).
pub fn load_config(inputs: &ConfigInputs<'_>) -> Result<(RunConfig, Vec<String>), ConfigError> {
    let scenario: ScenarioName = inputs.scenario.parse()?;
    let law: LawChoice = inputs.law.parse()?;
    if law == LawChoice::All && !inputs.allow_all {
        return Err(ConfigError::AllLawsInSingleRun);
    }

    let mut builder = Builder::new(scenario);

    if let Some(path) = inputs.config_path {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = split_pair(line).ok_or_else(|| ConfigError::BadLine {
                line_no: line_no + 1,
                content: raw.to_string(),
            })?;
            builder.apply(key, value)?;
        }
    }

    for item in inputs.sets {
        let (key, value) = split_pair(item).ok_or_else(|| ConfigError::BadLine {
            line_no: 0,
            content: item.clone(),
        })?;
        builder.apply(key, value)?;
    }

    if let Some(dt) = inputs.dt {
        builder.spec.integrator.dt = dt;
    }
    if let Some(duration) = inputs.duration {
        builder.spec.integrator.duration = duration;
    }

    if let LawChoice::Single(kind) = law {
        builder.spec.law = kind;
    }
    let (spec, warnings) = builder.finish()?;

    // Validate before any run; `all` must be viable for every law.
    match law {
        LawChoice::Single(_) => spec.validate()?,
        LawChoice::All => {
            for kind in ControlLawKind::ALL {
                let mut candidate = spec.clone();
                candidate.law = kind;
                candidate.validate()?;
            }
        }
    }

    Ok((
        RunConfig {
            scenario,
            law,
            spec,
            output_dir: inputs.out_dir.to_path_buf(),
        },
        warnings,
    ))
}
