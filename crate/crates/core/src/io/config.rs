//! Run configuration. Every physical quantity carries its unit in the key
//! name and unknown keys are rejected.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::BalazsOptions;
use crate::fields::{BeamProfileKind, Envelope};
use crate::interferometer::{recoil_velocity, ArmIllumination, ArmMotion, GeometryA, GeometryB, Misalignment};
use crate::physics::{AtomSpecies, LaserSpec, SpeciesData};
use crate::sensitivity::{PerturbationSpec, Scheme, DEFAULT_TRUNCATION_SIGMAS};
use crate::{Error, Result};

use super::check::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Check,
    Balazs,
    PhaseA,
    PhaseB,
    Sweep,
    Sensitivity,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Check,
        Scenario::Balazs,
        Scenario::PhaseA,
        Scenario::PhaseB,
        Scenario::Sweep,
        Scenario::Sensitivity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Check => "check",
            Scenario::Balazs => "balazs",
            Scenario::PhaseA => "phase_a",
            Scenario::PhaseB => "phase_b",
            Scenario::Sweep => "sweep",
            Scenario::Sensitivity => "sensitivity",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format '{s}' (expected csv or json)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileName {
    #[default]
    Gaussian,
    SuperGaussian,
    FlatTop,
}

fn default_sg_order() -> u32 {
    2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserConfig {
    pub wavelength_m: f64,
    pub power_w: f64,
    pub waist_m: f64,
    #[serde(default)]
    pub profile: ProfileName,
    #[serde(default = "default_sg_order")]
    pub super_gaussian_order: u32,
}

impl Default for LaserConfig {
    fn default() -> Self {
        let l = LaserSpec::co2_50w();
        LaserConfig {
            wavelength_m: l.wavelength,
            power_w: l.power,
            waist_m: l.waist,
            profile: ProfileName::Gaussian,
            super_gaussian_order: 2,
        }
    }
}

impl LaserConfig {
    pub fn profile_kind(&self) -> BeamProfileKind {
        match self.profile {
            ProfileName::Gaussian => BeamProfileKind::Gaussian,
            ProfileName::SuperGaussian => BeamProfileKind::SuperGaussian {
                order: self.super_gaussian_order,
            },
            ProfileName::FlatTop => BeamProfileKind::FlatTop,
        }
    }

    pub fn spec(&self) -> Result<LaserSpec> {
        LaserSpec::new(self.wavelength_m, self.power_w, self.waist_m, self.profile_kind())
    }
}

fn default_speed() -> f64 {
    1000.0
}
fn default_length() -> f64 {
    0.05
}
fn default_recoils() -> i64 {
    400
}
fn default_steps() -> usize {
    crate::interferometer::DEFAULT_STEPS
}
fn default_separation() -> f64 {
    1e-3
}
fn tolerance_theta() -> f64 {
    0.02_f64.to_radians()
}
fn tolerance_offset() -> f64 {
    0.02
}

/// Parameters of the reference-number table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    #[serde(default = "default_speed")]
    pub speed_m_per_s: f64,
    #[serde(default = "default_length")]
    pub length_m: f64,
    #[serde(default = "default_recoils")]
    pub n_recoils: i64,
    #[serde(default = "tolerance_theta")]
    pub theta_rad: f64,
    #[serde(default = "tolerance_offset")]
    pub offset_waists: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    /// Replacements for entries of the default tolerance table, by row name.
    #[serde(default)]
    pub tolerances: std::collections::BTreeMap<String, Tolerance>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            speed_m_per_s: default_speed(),
            length_m: default_length(),
            n_recoils: default_recoils(),
            theta_rad: tolerance_theta(),
            offset_waists: tolerance_offset(),
            steps: default_steps(),
            tolerances: Default::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeName {
    Square,
    Gaussian,
    #[default]
    SmoothstepEdges,
}

fn default_duration() -> f64 {
    1e-6
}
fn default_edge() -> f64 {
    2e-7
}
fn default_sigma() -> f64 {
    2e-7
}
fn default_steps_per_feature() -> usize {
    crate::dynamics::MIN_STEPS_PER_FEATURE
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BalazsConfig {
    #[serde(default)]
    pub envelope: EnvelopeName,
    /// Square and smoothstep pulses.
    #[serde(default = "default_duration")]
    pub duration_s: f64,
    /// Smoothstep edge length.
    #[serde(default = "default_edge")]
    pub edge_s: f64,
    /// Square rise time.
    #[serde(default)]
    pub rise_time_s: f64,
    #[serde(default = "default_sigma")]
    pub sigma_s: f64,
    #[serde(default = "default_steps_per_feature")]
    pub steps_per_feature: usize,
    #[serde(default)]
    pub t_end_s: Option<f64>,
}

impl Default for BalazsConfig {
    fn default() -> Self {
        BalazsConfig {
            envelope: EnvelopeName::SmoothstepEdges,
            duration_s: default_duration(),
            edge_s: default_edge(),
            rise_time_s: 0.0,
            sigma_s: default_sigma(),
            steps_per_feature: default_steps_per_feature(),
            t_end_s: None,
        }
    }
}

impl BalazsConfig {
    pub fn envelope(&self) -> Result<Envelope> {
        let e = match self.envelope {
            EnvelopeName::Square => Envelope::Square {
                duration: self.duration_s,
                rise_time: self.rise_time_s,
            },
            EnvelopeName::Gaussian => Envelope::Gaussian { sigma: self.sigma_s },
            EnvelopeName::SmoothstepEdges => Envelope::SmoothstepEdges {
                duration: self.duration_s,
                edge: self.edge_s,
            },
        };
        e.validate()?;
        Ok(e)
    }

    pub fn options(&self) -> BalazsOptions {
        BalazsOptions {
            steps_per_feature: self.steps_per_feature,
            t_end: self.t_end_s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseAConfig {
    #[serde(default = "default_length")]
    pub length_m: f64,
    #[serde(default = "default_speed")]
    pub speed_m_per_s: f64,
    #[serde(default = "default_separation")]
    pub arm_separation_m: f64,
    #[serde(default)]
    pub intensity_imbalance: f64,
    #[serde(default)]
    pub theta_rad: f64,
    #[serde(default)]
    pub offset_waists: f64,
    #[serde(default)]
    pub illumination: ArmIllumination,
    #[serde(default)]
    pub reverse_beams: bool,
    #[serde(default)]
    pub motion: ArmMotion,
    #[serde(default = "default_steps")]
    pub steps: usize,
}

impl PhaseAConfig {
    pub fn geometry(&self, laser: LaserSpec) -> GeometryA {
        GeometryA {
            laser,
            arm_separation: self.arm_separation_m,
            length: self.length_m,
            speed: self.speed_m_per_s,
            intensity_imbalance: self.intensity_imbalance,
            misalignment: Misalignment::new(self.theta_rad, self.offset_waists),
            illumination: self.illumination,
            reverse_beams: self.reverse_beams,
            motion: self.motion,
            steps: self.steps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseBConfig {
    #[serde(default = "default_recoils")]
    pub n_recoils: i64,
    /// Defaults to the atomic transition wavelength.
    #[serde(default)]
    pub splitting_wavelength_m: Option<f64>,
    /// Defaults to a 5 cm axial path per arm.
    #[serde(default)]
    pub interaction_time_s: Option<f64>,
    #[serde(default)]
    pub theta_rad: f64,
    #[serde(default)]
    pub offset_waists: f64,
    #[serde(default)]
    pub motion: ArmMotion,
    #[serde(default = "default_steps")]
    pub steps: usize,
}

impl PhaseBConfig {
    pub fn geometry(&self, laser: LaserSpec, atom: &AtomSpecies) -> Result<GeometryB> {
        let mut g = GeometryB::new(laser, atom, self.n_recoils)?;
        if let Some(lambda) = self.splitting_wavelength_m {
            g.recoil_velocity = recoil_velocity(atom, lambda)?;
            g.interaction_time = crate::interferometer::DEFAULT_PATH_LENGTH / g.arm_speed().abs();
        }
        if let Some(t) = self.interaction_time_s {
            g.interaction_time = t;
        }
        g.misalignment = Misalignment::new(self.theta_rad, self.offset_waists);
        g.motion = self.motion;
        g.steps = self.steps;
        g.validate()?;
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryName {
    A,
    B,
}

impl GeometryName {
    fn block(&self) -> &'static str {
        match self {
            GeometryName::A => "phase_a",
            GeometryName::B => "phase_b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// The base geometry is read from the [phase_a] or [phase_b] block.
    pub geometry: GeometryName,
    pub velocities_m_per_s: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityConfig {
    /// The base geometry is read from the [phase_a] or [phase_b] block.
    pub geometry: GeometryName,
    pub theta_sigma_rad: f64,
    pub offset_sigma_waists: f64,
    #[serde(default)]
    pub intensity_imbalance_sigma: f64,
    pub n_samples: usize,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default = "default_truncation")]
    pub truncation_sigmas: f64,
}

fn default_truncation() -> f64 {
    DEFAULT_TRUNCATION_SIGMAS
}

impl SensitivityConfig {
    pub fn spec(&self) -> PerturbationSpec {
        PerturbationSpec {
            theta_sigma_rad: self.theta_sigma_rad,
            offset_sigma_waists: self.offset_sigma_waists,
            intensity_imbalance_sigma: self.intensity_imbalance_sigma,
            n_samples: self.n_samples,
            rng_seed: self.rng_seed,
            truncation_sigmas: self.truncation_sigmas,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Must match the scenario given on the command line when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    /// Species data file; relative paths resolve against the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub species_file: Option<PathBuf>,
    /// Inline species data; takes precedence over `species_file`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub species: Option<SpeciesData>,
    #[serde(default)]
    pub laser: LaserConfig,
    /// Fixed polarizability; computed from the two-level model when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_c2_m_per_n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balazs: Option<BalazsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_a: Option<PhaseAConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_b: Option<PhaseBConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivityConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

fn missing(block: &str) -> Error {
    Error::Config(format!("missing [{block}] block"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().replace('\n', " ")))
    }

    /// Reads a TOML config, or the `inputs` echoed into a JSON result file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = if path.extension().is_some_and(|e| e == "json") {
            #[derive(Deserialize)]
            struct Echo {
                inputs: RunConfig,
            }
            serde_json::from_str::<Echo>(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
                .inputs
        } else {
            Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        };
        if let (Some(file), Some(dir)) = (&cfg.species_file, path.parent()) {
            if file.is_relative() {
                cfg.species_file = Some(dir.join(file));
            }
        }
        Ok(cfg)
    }

    /// Fails unless the block required by `scenario` is present, and
    /// unless a `scenario` key, if given, agrees.
    pub fn require(&self, scenario: Scenario) -> Result<()> {
        if let Some(s) = self.scenario {
            if s != scenario {
                return Err(Error::Config(format!("config is for scenario '{s}', not '{scenario}'")));
            }
        }
        let geometry_block = |g: GeometryName| -> Result<()> {
            let present = match g {
                GeometryName::A => self.phase_a.is_some(),
                GeometryName::B => self.phase_b.is_some(),
            };
            if present {
                Ok(())
            } else {
                Err(missing(g.block()))
            }
        };
        match scenario {
            Scenario::Check => Ok(()),
            Scenario::Balazs => self.balazs.map(|_| ()).ok_or_else(|| missing("balazs")),
            Scenario::PhaseA => self.phase_a.map(|_| ()).ok_or_else(|| missing("phase_a")),
            Scenario::PhaseB => self.phase_b.map(|_| ()).ok_or_else(|| missing("phase_b")),
            Scenario::Sweep => geometry_block(self.sweep.as_ref().ok_or_else(|| missing("sweep"))?.geometry),
            Scenario::Sensitivity => geometry_block(self.sensitivity.ok_or_else(|| missing("sensitivity"))?.geometry),
        }
    }

    /// Species data in effect: inline table, then file, then bundled ⁷Li.
    pub fn species_data(&self) -> Result<SpeciesData> {
        if let Some(s) = &self.species {
            return Ok(s.clone());
        }
        match &self.species_file {
            Some(path) => SpeciesData::load(path),
            None => Ok(SpeciesData::lithium7()),
        }
    }

    pub fn scheme(&self, g: GeometryName, atom: &AtomSpecies) -> Result<Scheme> {
        let laser = self.laser.spec()?;
        match g {
            GeometryName::A => Ok(Scheme::A(
                self.phase_a.ok_or_else(|| missing("phase_a"))?.geometry(laser),
            )),
            GeometryName::B => Ok(Scheme::B(
                self.phase_b.ok_or_else(|| missing("phase_b"))?.geometry(laser, atom)?,
            )),
        }
    }
}
