//! End-to-end analysis driven by a TOML configuration.

mod config;
mod report;
mod run;
mod simulate;

pub use config::{
    analysis_variables, AdfSettings, GrangerSettings, JohansenSettings, PcaSettings, PipelineConfig,
    RegressionSettings, ScreenSettings, WhiteSettings, BASE_VARIABLES, DEPENDENT,
};
pub use report::{emit_report, report_csv, report_json, report_text, ReportFormat};
pub use run::{
    run_pipeline, run_pipeline_file, CointegrationReport, CorrelationReport, DescriptiveRow, IngestSummary,
    PcaReport, RegressionReport, RegressorSource, ReportBundle, RunMetadata, StageOutcome, StationarityRow,
    Transform, VolatilityReport, STAGES,
};
pub use simulate::{
    simulate_dataset, simulate_series, simulated_price_params, Scenario, SimulatedDataset, SimulatedSeries,
    MIN_SIMULATED_OBS, PAPER_LIKE_FX_BOND_CORRELATION,
};
