//! Result envelopes and their JSON / CSV encodings.
//!
//! Floats in JSON are written with 17 significant digits, so a parsed file
//! reproduces every value bit for bit.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::dynamics::{BalazsResult, ForceModel, Recoil};
use crate::interferometer::InterferometerResult;
use crate::sensitivity::{SweepResult, VelocityFit};
use crate::{Error, Result, Vec3};

use super::check::CheckTable;
use super::config::{Format, RunConfig, Scenario};

pub const SCHEMA_VERSION: u32 = 1;

/// Pretty JSON with every f64 as `{:.16e}`.
struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Config(format!("serializing output: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalazsRun {
    pub force_model: ForceModel,
    pub displacement_m: Vec3,
    pub net_impulse_kg_m_per_s: Vec3,
    pub peak_impulse_kg_m_per_s: f64,
    pub sign: Recoil,
    pub steps: usize,
}

impl BalazsRun {
    pub fn new(force_model: ForceModel, r: &BalazsResult) -> Self {
        BalazsRun {
            force_model,
            displacement_m: r.displacement,
            net_impulse_kg_m_per_s: r.net_impulse,
            peak_impulse_kg_m_per_s: r.peak_impulse,
            sign: r.sign,
            steps: r.trajectory.states.len() - 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalazsOutput {
    pub alpha_c2_m_per_n: f64,
    pub field_amplitude_n_per_c: f64,
    pub effective_duration_s: f64,
    /// Leading-order Abraham displacement.
    pub closed_form_displacement_m: Vec3,
    pub runs: Vec<BalazsRun>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum Outputs {
    Check(CheckTable),
    Balazs(BalazsOutput),
    Interferometer(InterferometerResult),
    Sweep(VelocityFit),
    Sensitivity(SweepResult),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunOutput {
    pub schema_version: u32,
    pub scenario: Scenario,
    pub seed: Option<u64>,
    /// Fully resolved configuration; rerunning it reproduces `outputs`.
    pub inputs: RunConfig,
    pub outputs: Outputs,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Num(_) => String::new(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

fn snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

impl RunOutput {
    /// False only for a check table with a failing row.
    pub fn passed(&self) -> bool {
        match &self.outputs {
            Outputs::Check(t) => t.all_pass(),
            _ => true,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_json_string(self)
    }

    pub fn table(&self) -> Table {
        match &self.outputs {
            Outputs::Check(t) => Table {
                headers: vec!["name", "unit", "computed", "reference", "tolerance", "pass", "method"],
                rows: t
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.name.as_str().into(),
                            r.unit.as_str().into(),
                            r.computed.into(),
                            r.reference.into(),
                            Cell::Text(r.tolerance.describe()),
                            Cell::Bool(r.pass),
                            r.method.as_str().into(),
                        ]
                    })
                    .collect(),
            },
            Outputs::Balazs(b) => Table {
                headers: vec![
                    "force_model",
                    "displacement_x_m",
                    "displacement_y_m",
                    "displacement_z_m",
                    "net_impulse_x_kg_m_per_s",
                    "peak_impulse_kg_m_per_s",
                    "sign",
                    "steps",
                ],
                rows: b
                    .runs
                    .iter()
                    .map(|r| {
                        vec![
                            Cell::Text(snake(&r.force_model)),
                            r.displacement_m.x.into(),
                            r.displacement_m.y.into(),
                            r.displacement_m.z.into(),
                            r.net_impulse_kg_m_per_s.x.into(),
                            r.peak_impulse_kg_m_per_s.into(),
                            Cell::Text(snake(&r.sign)),
                            Cell::Int(r.steps as i64),
                        ]
                    })
                    .collect(),
            },
            Outputs::Interferometer(r) => Table {
                headers: vec!["arm", "kinetic_rad", "stark_rad", "ohmw_rad", "total_rad"],
                rows: [("R", &r.phase_r), ("L", &r.phase_l), ("R-L", &r.delta)]
                    .into_iter()
                    .map(|(arm, p)| {
                        vec![
                            arm.into(),
                            p.kinetic.into(),
                            p.stark.into(),
                            p.ohmw.into(),
                            p.total.into(),
                        ]
                    })
                    .collect(),
            },
            Outputs::Sweep(f) => Table {
                headers: vec!["velocity_m_per_s", "phase_rad", "fitted_rad"],
                rows: f
                    .velocities_m_per_s
                    .iter()
                    .zip(&f.phases_rad)
                    .map(|(&v, &p)| vec![v.into(), p.into(), (f.fit_a_over_v / v + f.fit_const).into()])
                    .collect(),
            },
            Outputs::Sensitivity(s) => Table {
                headers: vec![
                    "index",
                    "theta_rad",
                    "offset_waists",
                    "intensity_imbalance",
                    "stark_residual_rad",
                    "ohmw_signal_rad",
                    "error",
                ],
                rows: s
                    .samples
                    .iter()
                    .map(|x| {
                        vec![
                            Cell::Int(x.index as i64),
                            x.inputs.theta_rad.into(),
                            x.inputs.offset_waists.into(),
                            x.inputs.intensity_imbalance.into(),
                            x.stark_residual_rad.into(),
                            x.ohmw_signal_rad.into(),
                            x.error.as_deref().unwrap_or("").into(),
                        ]
                    })
                    .collect(),
            },
        }
    }

    /// Everything a CSV row set leaves out: inputs, column list and scalars.
    pub fn meta(&self) -> Value {
        let scalars = match &self.outputs {
            Outputs::Check(t) => serde_json::json!({
                "tolerance_table_version": t.tolerance_table_version,
                "alpha_c2_m_per_n": t.alpha_c2_m_per_n,
                "all_pass": t.all_pass(),
            }),
            Outputs::Balazs(b) => serde_json::json!({
                "alpha_c2_m_per_n": b.alpha_c2_m_per_n,
                "field_amplitude_n_per_c": b.field_amplitude_n_per_c,
                "effective_duration_s": b.effective_duration_s,
                "closed_form_displacement_m": b.closed_form_displacement_m,
            }),
            Outputs::Interferometer(r) => serde_json::json!({
                "stark_residual_rad": r.stark_residual_rad,
                "ohmw_signal_rad": r.ohmw_signal_rad,
                "diagnostics": r.diagnostics,
            }),
            Outputs::Sweep(f) => serde_json::json!({
                "fit_a_over_v": f.fit_a_over_v,
                "fit_const": f.fit_const,
                "residual_norm": f.residual_norm,
            }),
            Outputs::Sensitivity(s) => serde_json::json!({
                "nominal": s.nominal,
                "worst_case": s.worst_case,
                "summary": s.summary,
            }),
        };
        serde_json::json!({
            "schema_version": self.schema_version,
            "scenario": self.scenario,
            "seed": self.seed,
            "inputs": self.inputs,
            "columns": self.table().headers,
            "scalars": scalars,
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let table = self.table();
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Config(format!("writing csv: {e}"));
        w.write_record(&table.headers).map_err(csv_err)?;
        for row in &table.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(format!("writing csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv of UTF-8 cells is UTF-8"))
    }

    /// Writes to `path`, or to stdout when it is `None`. A CSV file gets a
    /// `.meta.json` sidecar next to it. Returns the paths written.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<Vec<PathBuf>> {
        let body = match format {
            Format::Json => self.to_json()?,
            Format::Csv => self.to_csv()?,
        };
        let Some(path) = path else {
            io::stdout().write_all(body.as_bytes()).map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
            return Ok(Vec::new());
        };
        write_file(path, &body)?;
        let mut written = vec![path.to_path_buf()];
        if format == Format::Csv {
            let meta = path.with_extension("meta.json");
            write_file(&meta, &to_json_string(&self.meta())?)?;
            written.push(meta);
        }
        Ok(written)
    }
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    fs::write(path, body).map_err(io_err)
}
