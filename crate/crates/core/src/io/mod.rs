//! Configuration files, the scenario runner and result output.

mod check;
mod config;
mod output;
mod run;

pub use check::{default_tolerances, reference_check, CheckRow, CheckTable, Tolerance, TOLERANCE_TABLE_VERSION};
pub use config::{
    BalazsConfig, CheckConfig, EnvelopeName, Format, GeometryName, LaserConfig, OutputConfig, PhaseAConfig,
    PhaseBConfig, ProfileName, RunConfig, Scenario, SensitivityConfig, SweepConfig,
};
pub use output::{to_json_string, BalazsOutput, BalazsRun, Cell, Outputs, RunOutput, Table, SCHEMA_VERSION};
pub use run::{resolve_alpha, run};
