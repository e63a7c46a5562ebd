//! Experiment configuration: TOML schema, validation, defaults, hashing.
//!
//! A config file names one experiment and four sections:
//!
//! ```toml
//! experiment = "driven_qubit"   # or "field_sensing" | "gaussian_force"
//!
//! [model]                       # fields depend on the experiment; all optional
//! omega = 1.0
//! epsilon = 0.1
//! gamma0 = 0.05
//! # temperature defaults to omega/ln 3 (thermal occupation n̄ = 1/2)
//!
//! [grid]                        # required: the time (or sweep) axis
//! t_final = 100.0
//! dt = 0.01
//!
//! [ensemble]                    # optional
//! n_trajs = 5000
//! master_seed = 42
//!
//! [output]                      # optional
//! directory = "runs/driven_qubit"
//! formats = ["csv", "json"]
//! dump_trajectories = false
//! max_dumped = 10
//! ```
//!
//! Unknown keys anywhere are rejected. Every validation error names the
//! offending field by its dotted path (`grid.dt`, `model.epsilon`, …).
//!
//! The grid is the **time** axis for `driven_qubit` and `gaussian_force`
//! (interrogation time), and the **transverse-field sweep** axis for
//! `field_sensing` (θ from 0 to `t_final` in steps of `dt`; that experiment
//! is deterministic and ignores the ensemble section).

use std::path::{Path, PathBuf};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lindblad::grid_steps;
use crate::models::driven_qubit::DrivenQubitParams;
use crate::models::gaussian::GaussianState;

/// Ratio ε/ω above which the rotating-frame reduction of the driven qubit
/// is not trusted; configs beyond it are rejected.
pub const MAX_DRIVE_RATIO: f64 = 0.2;

/// Which physical experiment a config drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Stochastic quantum-jump ensemble of the driven thermal qubit.
    DrivenQubit,
    /// Closed-form vs generic-pipeline sweep of the thermal field sensor.
    FieldSensing,
    /// Closed-form vs quadrature sweep of Gaussian force sensing.
    GaussianForce,
}

impl ExperimentKind {
    /// The config-file spelling, also used for default output directories.
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::DrivenQubit => "driven_qubit",
            ExperimentKind::FieldSensing => "field_sensing",
            ExperimentKind::GaussianForce => "gaussian_force",
        }
    }
}

/// Data-table formats the runner can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// One CSV per table, 17-significant-digit floats (lossless round-trip).
    Csv,
    /// All tables combined into a single `tables.json`.
    Json,
}

/// The time (or sweep) grid: `n+1` points `0, dt, …, t_final`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Grid {
    /// End of the axis (inclusive).
    pub t_final: f64,
    /// Step; must divide `t_final` to within 1e-9 relative.
    pub dt: f64,
}

impl Grid {
    /// Number of grid points including both endpoints.
    pub fn n_points(&self) -> Result<usize> {
        Ok(grid_steps(self.t_final, self.dt)? + 1)
    }

    /// Materialize the axis values.
    pub fn times(&self) -> Result<Vec<f64>> {
        let n = self.n_points()?;
        Ok((0..n).map(|i| i as f64 * self.dt).collect())
    }
}

/// Trajectory-ensemble settings.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Ensemble {
    /// Number of stochastic trajectories (≥ 1).
    pub n_trajs: usize,
    /// Master seed; trajectory `i` uses stream `i` of this seed.
    pub master_seed: u64,
}

/// Output destination and formats.
#[derive(Debug, Clone, Serialize)]
pub struct Output {
    /// Directory the run writes into (created if absent).
    pub directory: PathBuf,
    /// Which data-table formats to emit (the audit report is always written).
    pub formats: Vec<OutputFormat>,
    /// Whether to write per-trajectory files for the first few trajectories.
    pub dump_trajectories: bool,
    /// Cap on the number of dumped trajectories.
    pub max_dumped: usize,
}

/// Field-sensing settings: the transverse field θ is swept by the grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FieldSensingSettings {
    /// Longitudinal gap Δ > 0.
    pub delta: f64,
    /// Inverse temperature β ≥ 0.
    pub beta: f64,
}

/// Gaussian force-sensing settings: probe moments plus the weak position
/// monitor and the trap used for the moment-flow columns.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GaussianForceSettings {
    /// Initial `(⟨x̂⟩, ⟨p̂⟩)`.
    pub mean: [f64; 2],
    /// Initial covariance `[[V_x, V_xp], [V_xp, V_p]]`; `det ≥ 1/4`.
    pub covariance: [[f64; 2]; 2],
    /// Measurement strength k > 0.
    pub measurement_rate: f64,
    /// Measurement window Δt > 0.
    pub window: f64,
    /// Position outcome α conditioned on in the sweep.
    pub outcome: f64,
    /// Constant force θ for the moment-flow columns.
    pub theta: f64,
    /// Trap frequency ω > 0 for the moment-flow columns.
    pub omega: f64,
}

impl GaussianForceSettings {
    /// The validated probe state.
    pub fn state(&self) -> Result<GaussianState> {
        GaussianState::new(self.mean, self.covariance)
    }
}

/// Per-experiment model settings, already validated.
#[derive(Debug, Clone)]
pub enum ModelSettings {
    /// Driven thermal qubit (trajectory experiment).
    DrivenQubit(DrivenQubitParams),
    /// Thermal field sensor (deterministic sweep).
    FieldSensing(FieldSensingSettings),
    /// Gaussian force sensing (deterministic sweep).
    GaussianForce(GaussianForceSettings),
}

impl Serialize for ModelSettings {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ModelSettings::DrivenQubit(p) => {
                let mut m = s.serialize_map(Some(4))?;
                m.serialize_entry("omega", &p.omega)?;
                m.serialize_entry("epsilon", &p.epsilon)?;
                m.serialize_entry("gamma0", &p.gamma0)?;
                m.serialize_entry("temperature", &p.temperature)?;
                m.end()
            }
            ModelSettings::FieldSensing(p) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("delta", &p.delta)?;
                m.serialize_entry("beta", &p.beta)?;
                m.end()
            }
            ModelSettings::GaussianForce(p) => {
                let mut m = s.serialize_map(Some(7))?;
                m.serialize_entry("mean", &p.mean)?;
                m.serialize_entry("covariance", &p.covariance)?;
                m.serialize_entry("measurement_rate", &p.measurement_rate)?;
                m.serialize_entry("window", &p.window)?;
                m.serialize_entry("outcome", &p.outcome)?;
                m.serialize_entry("theta", &p.theta)?;
                m.serialize_entry("omega", &p.omega)?;
                m.end()
            }
        }
    }
}

/// A fully parsed, defaulted, and validated experiment configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    /// Which experiment to run.
    pub experiment: ExperimentKind,
    /// Validated model settings.
    pub model: ModelSettings,
    /// Time / sweep grid.
    pub grid: Grid,
    /// Trajectory-ensemble settings (ignored by the deterministic sweeps).
    pub ensemble: Ensemble,
    /// Output settings.
    pub output: Output,
    /// SHA-256 of the raw config text, for provenance.
    #[serde(skip)]
    pub sha256: String,
}

/// Echo of any command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default, Serialize)]
pub struct OverrideEcho {
    /// `--seed` value, if given.
    pub master_seed: Option<u64>,
    /// `--n-trajs` value, if given.
    pub n_trajs: Option<u64>,
    /// `--out` value, if given.
    pub directory: Option<PathBuf>,
}

impl OverrideEcho {
    /// True when no override was supplied.
    pub fn is_empty(&self) -> bool {
        self.master_seed.is_none() && self.n_trajs.is_none() && self.directory.is_none()
    }
}

impl ExperimentConfig {
    /// Apply CLI overrides (`--seed`, `--n-trajs`, `--out`).
    pub fn apply_overrides(&mut self, overrides: &OverrideEcho) -> Result<()> {
        if let Some(seed) = overrides.master_seed {
            self.ensemble.master_seed = seed;
        }
        if let Some(n) = overrides.n_trajs {
            self.ensemble.n_trajs = check_n_trajs(n)?;
        }
        if let Some(dir) = &overrides.directory {
            self.output.directory = dir.clone();
        }
        Ok(())
    }

    /// Serialize the effective (defaulted) configuration back to TOML.
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("effective config is always serializable")
    }
}

// ---------------------------------------------------------------------------
// Raw (pre-validation) schema
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: ExperimentKind,
    #[serde(default)]
    model: Option<toml::Table>,
    #[serde(default)]
    grid: Option<RawGrid>,
    #[serde(default)]
    ensemble: RawEnsemble,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    t_final: Option<f64>,
    dt: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnsemble {
    n_trajs: Option<u64>,
    master_seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    directory: Option<PathBuf>,
    formats: Option<Vec<OutputFormat>>,
    dump_trajectories: Option<bool>,
    max_dumped: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDrivenQubit {
    omega: Option<f64>,
    epsilon: Option<f64>,
    gamma0: Option<f64>,
    temperature: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFieldSensing {
    delta: Option<f64>,
    beta: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGaussianForce {
    mean: Option<[f64; 2]>,
    covariance: Option<[[f64; 2]; 2]>,
    measurement_rate: Option<f64>,
    window: Option<f64>,
    outcome: Option<f64>,
    theta: Option<f64>,
    omega: Option<f64>,
}

// ---------------------------------------------------------------------------
// Parsing and validation
// ---------------------------------------------------------------------------

/// Read and validate a config file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

/// Parse and validate config text.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let de = toml::Deserializer::parse(text).map_err(|e| Error::ConfigInvalid {
        path: "<config>".into(),
        message: e.message().to_string(),
    })?;
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::ConfigInvalid {
            path: if path == "." { "<config>".into() } else { path },
            message: e.inner().message().to_string(),
        }
    })?;

    let grid = validate_grid(raw.grid)?;
    let model = validate_model(raw.experiment, raw.model)?;

    let n_trajs = check_n_trajs(raw.ensemble.n_trajs.unwrap_or(5000))?;
    let ensemble = Ensemble { n_trajs, master_seed: raw.ensemble.master_seed.unwrap_or(42) };

    let formats = raw.output.formats.unwrap_or_else(|| vec![OutputFormat::Csv, OutputFormat::Json]);
    if formats.is_empty() {
        return Err(Error::ConfigInvalid {
            path: "output.formats".into(),
            message: "at least one of \"csv\", \"json\" is required".into(),
        });
    }
    let output = Output {
        directory: raw
            .output
            .directory
            .unwrap_or_else(|| PathBuf::from("runs").join(raw.experiment.as_str())),
        formats,
        dump_trajectories: raw.output.dump_trajectories.unwrap_or(false),
        max_dumped: raw.output.max_dumped.unwrap_or(10) as usize,
    };

    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let sha256 = hex_digest(&hasher.finalize());

    Ok(ExperimentConfig { experiment: raw.experiment, model, grid, ensemble, output, sha256 })
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

fn check_n_trajs(n: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::ConfigInvalid {
            path: "ensemble.n_trajs".into(),
            message: "at least one trajectory is required".into(),
        });
    }
    Ok(n as usize)
}

fn validate_grid(raw: Option<RawGrid>) -> Result<Grid> {
    let raw = raw.ok_or_else(|| Error::ConfigInvalid {
        path: "grid".into(),
        message: "section is required (t_final and dt)".into(),
    })?;
    let t_final = raw.t_final.ok_or_else(|| Error::ConfigInvalid {
        path: "grid.t_final".into(),
        message: "field is required".into(),
    })?;
    let dt = raw.dt.ok_or_else(|| Error::ConfigInvalid {
        path: "grid.dt".into(),
        message: "field is required".into(),
    })?;
    let grid = Grid { t_final, dt };
    grid.n_points()?;
    Ok(grid)
}

fn model_table<T: serde::de::DeserializeOwned + Default>(table: Option<toml::Table>) -> Result<T> {
    match table {
        None => Ok(T::default()),
        Some(table) => serde_path_to_error::deserialize(table).map_err(|e| {
            let p = e.path().to_string();
            Error::ConfigInvalid {
                path: if p == "." { "model".into() } else { format!("model.{p}") },
                message: e.inner().message().to_string(),
            }
        }),
    }
}

fn validate_model(kind: ExperimentKind, table: Option<toml::Table>) -> Result<ModelSettings> {
    match kind {
        ExperimentKind::DrivenQubit => {
            let raw: RawDrivenQubit = model_table(table)?;
            let omega = raw.omega.unwrap_or(1.0);
            // Default bath temperature puts the thermal occupation at
            // n̄ = 1/2 (ω/T = ln 3).
            let temperature = raw.temperature.unwrap_or(omega / 3f64.ln());
            let params = DrivenQubitParams {
                omega,
                epsilon: raw.epsilon.unwrap_or(0.1),
                gamma0: raw.gamma0.unwrap_or(0.05),
                temperature,
            };
            params.validate()?;
            let ratio = params.epsilon / params.omega;
            if ratio > MAX_DRIVE_RATIO {
                return Err(Error::ConfigInvalid {
                    path: "model.epsilon".into(),
                    message: format!(
                        "drive-to-splitting ratio ε/ω = {ratio:.3} exceeds {MAX_DRIVE_RATIO} \
                         (the rotating-frame model assumes a perturbative drive)"
                    ),
                });
            }
            Ok(ModelSettings::DrivenQubit(params))
        }
        ExperimentKind::FieldSensing => {
            let raw: RawFieldSensing = model_table(table)?;
            let settings =
                FieldSensingSettings { delta: raw.delta.unwrap_or(1.0), beta: raw.beta.unwrap_or(1.0) };
            if !(settings.delta > 0.0) || !settings.delta.is_finite() {
                return Err(Error::ConfigInvalid {
                    path: "model.delta".into(),
                    message: format!("gap must be positive and finite, got {}", settings.delta),
                });
            }
            if !(settings.beta >= 0.0) || !settings.beta.is_finite() {
                return Err(Error::ConfigInvalid {
                    path: "model.beta".into(),
                    message: format!(
                        "inverse temperature must be ≥ 0 and finite, got {}",
                        settings.beta
                    ),
                });
            }
            Ok(ModelSettings::FieldSensing(settings))
        }
        ExperimentKind::GaussianForce => {
            let raw: RawGaussianForce = model_table(table)?;
            let settings = GaussianForceSettings {
                mean: raw.mean.unwrap_or([0.0, 0.0]),
                covariance: raw.covariance.unwrap_or([[0.5, 0.0], [0.0, 0.5]]),
                measurement_rate: raw.measurement_rate.unwrap_or(1.0),
                window: raw.window.unwrap_or(0.1),
                outcome: raw.outcome.unwrap_or(0.0),
                theta: raw.theta.unwrap_or(0.5),
                omega: raw.omega.unwrap_or(1.0),
            };
            settings.state()?;
            for (path, value, strict) in [
                ("model.measurement_rate", settings.measurement_rate, true),
                ("model.window", settings.window, true),
                ("model.omega", settings.omega, true),
                ("model.outcome", settings.outcome, false),
                ("model.theta", settings.theta, false),
            ] {
                let ok = value.is_finite() && (!strict || value > 0.0);
                if !ok {
                    return Err(Error::ConfigInvalid {
                        path: path.into(),
                        message: format!(
                            "must be {} finite, got {value}",
                            if strict { "positive and" } else { "" }
                        ),
                    });
                }
            }
            Ok(ModelSettings::GaussianForce(settings))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_driven_qubit_config_gets_all_defaults() {
        let cfg = parse_config(
            "experiment = \"driven_qubit\"\n[grid]\nt_final = 100.0\ndt = 0.01\n",
        )
        .unwrap();
        let ModelSettings::DrivenQubit(p) = &cfg.model else { panic!("wrong model kind") };
        assert_eq!(p.omega, 1.0);
        assert_eq!(p.epsilon, 0.1);
        assert_eq!(p.gamma0, 0.05);
        // Default temperature puts n̄ exactly at 1/2.
        assert!((p.nbar() - 0.5).abs() < 1e-15);
        assert_eq!(cfg.ensemble.n_trajs, 5000);
        assert_eq!(cfg.ensemble.master_seed, 42);
        assert_eq!(cfg.output.directory, PathBuf::from("runs/driven_qubit"));
        assert_eq!(cfg.output.formats, vec![OutputFormat::Csv, OutputFormat::Json]);
        assert!(!cfg.output.dump_trajectories);
        assert_eq!(cfg.output.max_dumped, 10);
        assert_eq!(cfg.grid.n_points().unwrap(), 10001);
        assert_eq!(cfg.sha256.len(), 64);
    }

    #[test]
    fn missing_dt_names_the_field() {
        let err =
            parse_config("experiment = \"driven_qubit\"\n[grid]\nt_final = 10.0\n").unwrap_err();
        match err {
            Error::ConfigInvalid { path, .. } => assert_eq!(path, "grid.dt"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn zero_dt_is_rejected() {
        let err = parse_config(
            "experiment = \"driven_qubit\"\n[grid]\nt_final = 10.0\ndt = 0.0\n",
        )
        .unwrap_err();
        match err {
            Error::ConfigInvalid { path, .. } => assert_eq!(path, "grid.dt"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected_with_their_name() {
        let err = parse_config(
            "experiment = \"driven_qubit\"\nbogus = 1\n[grid]\nt_final = 1.0\ndt = 0.1\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = parse_config(
            "experiment = \"driven_qubit\"\n[model]\nfrequency = 2.0\n[grid]\nt_final = 1.0\ndt = 0.1\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("frequency"), "{err}");
    }

    #[test]
    fn oversized_drive_ratio_is_rejected() {
        let err = parse_config(
            "experiment = \"driven_qubit\"\n[model]\nepsilon = 0.5\n[grid]\nt_final = 1.0\ndt = 0.1\n",
        )
        .unwrap_err();
        match err {
            Error::ConfigInvalid { path, message } => {
                assert_eq!(path, "model.epsilon");
                assert!(message.contains("0.2"), "{message}");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn zero_trajectories_is_rejected_and_overrides_are_checked_too() {
        let err = parse_config(
            "experiment = \"driven_qubit\"\n[grid]\nt_final = 1.0\ndt = 0.1\n[ensemble]\nn_trajs = 0\n",
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConfigInvalid { ref path, .. } if path == "ensemble.n_trajs"));

        let mut cfg =
            parse_config("experiment = \"driven_qubit\"\n[grid]\nt_final = 1.0\ndt = 0.1\n")
                .unwrap();
        let overrides = OverrideEcho { n_trajs: Some(0), ..Default::default() };
        assert!(cfg.apply_overrides(&overrides).is_err());
        let overrides = OverrideEcho {
            master_seed: Some(7),
            n_trajs: Some(12),
            directory: Some(PathBuf::from("elsewhere")),
        };
        cfg.apply_overrides(&overrides).unwrap();
        assert_eq!(cfg.ensemble.master_seed, 7);
        assert_eq!(cfg.ensemble.n_trajs, 12);
        assert_eq!(cfg.output.directory, PathBuf::from("elsewhere"));
    }

    #[test]
    fn field_sensing_defaults_and_validation() {
        let cfg =
            parse_config("experiment = \"field_sensing\"\n[grid]\nt_final = 3.0\ndt = 0.05\n")
                .unwrap();
        let ModelSettings::FieldSensing(s) = &cfg.model else { panic!("wrong model kind") };
        assert_eq!((s.delta, s.beta), (1.0, 1.0));
        assert_eq!(cfg.output.directory, PathBuf::from("runs/field_sensing"));

        let err = parse_config(
            "experiment = \"field_sensing\"\n[model]\ndelta = -1.0\n[grid]\nt_final = 1.0\ndt = 0.1\n",
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConfigInvalid { ref path, .. } if path == "model.delta"));
    }

    #[test]
    fn gaussian_covariance_is_validated() {
        let err = parse_config(
            "experiment = \"gaussian_force\"\n[model]\ncovariance = [[0.1, 0.0], [0.0, 0.1]]\n[grid]\nt_final = 1.0\ndt = 0.1\n",
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnphysicalCovariance { .. }), "{err}");

        let cfg =
            parse_config("experiment = \"gaussian_force\"\n[grid]\nt_final = 10.0\ndt = 0.1\n")
                .unwrap();
        let ModelSettings::GaussianForce(s) = &cfg.model else { panic!("wrong model kind") };
        assert_eq!(s.covariance, [[0.5, 0.0], [0.0, 0.5]]);
        assert_eq!(s.measurement_rate, 1.0);
    }

    #[test]
    fn effective_config_round_trips_through_toml() {
        let cfg = parse_config(
            "experiment = \"driven_qubit\"\n[grid]\nt_final = 2.0\ndt = 0.01\n[ensemble]\nn_trajs = 17\nmaster_seed = 5\n",
        )
        .unwrap();
        let echoed = cfg.to_toml();
        let reparsed = parse_config(&echoed).unwrap();
        assert_eq!(reparsed.ensemble.n_trajs, 17);
        assert_eq!(reparsed.ensemble.master_seed, 5);
        assert_eq!(reparsed.grid.dt, cfg.grid.dt);
        let ModelSettings::DrivenQubit(p) = &reparsed.model else { panic!("wrong model kind") };
        assert!((p.nbar() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_toml_input_is_a_config_error() {
        let err = parse_config("this is not toml ===").unwrap_err();
        assert!(matches!(err, Error::ConfigInvalid { .. }), "{err}");
    }
}
