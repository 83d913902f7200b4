//! CW models, the scenario registry, reports and charts.

mod build;
mod chart;
pub mod cw;
mod morphism_file;
mod report;
mod run;
mod spec;

pub use build::{build_algebra, build_models, Models};
pub use chart::{render_chart, ChartFormat, ChartRequest, ChartSs, Slice};
pub use cw::{is_k_minimal, CwModel};
pub use morphism_file::{analyze_file, MorphismFile};
pub use report::{CheckRecord, DRecord, EntryRecord, PageRecord, Report, SequenceRecord, Status, TriRecord};
pub use run::{execute, run_scenario, Overrides, ScenarioRun};
pub use spec::{field_name, parse_field, AlgebraSpec, AnalysisSpec, CellFiltration, CheckSpec, ModuleSpec, Prelude, ScenarioBounds, ScenarioSpec, Sequence, YSpec};

use crate::error::{Error, Result};

const SOURCES: &[(&str, &str)] = &[
    ("hopf-ndec", include_str!("../../scenarios/hopf-ndec.toml")),
    ("hopf-e3", include_str!("../../scenarios/hopf-e3.toml")),
    ("hopf-e3-nonminimal", include_str!("../../scenarios/hopf-e3-nonminimal.toml")),
    ("hopf-loops", include_str!("../../scenarios/hopf-loops.toml")),
    ("product-s2", include_str!("../../scenarios/product-s2.toml")),
    ("product-s3", include_str!("../../scenarios/product-s3.toml")),
    ("bz2", include_str!("../../scenarios/bz2.toml")),
    ("bz3", include_str!("../../scenarios/bz3.toml")),
    ("bz3-regular", include_str!("../../scenarios/bz3-regular.toml")),
    ("sphere-loop", include_str!("../../scenarios/sphere-loop.toml")),
    ("quillen-d8", include_str!("../../scenarios/quillen-d8.toml")),
    ("quillen-q8", include_str!("../../scenarios/quillen-q8.toml")),
    ("su2-torus", include_str!("../../scenarios/su2-torus.toml")),
    ("su3-torus", include_str!("../../scenarios/su3-torus.toml")),
    ("ustinovskii", include_str!("../../scenarios/ustinovskii.toml")),
];

/// Names of the registered scenarios, in registry order.
pub fn scenario_names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

/// The TOML source of a registered scenario.
pub fn scenario_source(name: &str) -> Result<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).ok_or_else(|| Error::UnknownScenario(name.into()))
}

pub fn scenario(name: &str) -> Result<ScenarioSpec> {
    ScenarioSpec::parse(scenario_source(name)?)
}

pub fn registry() -> Vec<ScenarioSpec> {
    SOURCES.iter().map(|(_, s)| ScenarioSpec::parse(s).expect("registered scenarios parse")).collect()
}
