use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use filterfn::sim::{simulate_with, Execution};
use filterfn::{ExperimentConfig, LabeledFilter, SamplingReport, Universe};

use crate::error::{CliError, Result};
use crate::eval::{fmt_value, Column, EventSelector};
use crate::model::Model;

pub const PLOT_HEADER: &str = "Varname lower median upper";
pub const STATS_HEADER: [&str; 11] = [
    "filter", "varname", "event", "true", "mean", "bias", "median", "q25", "q75", "q025", "q975",
];

#[derive(Debug, Clone)]
pub struct SimulateOptions {
    pub filters: Vec<Column>,
    pub sample_sizes: Vec<u64>,
    pub replications: usize,
    pub seed: u64,
    pub events: EventSelector,
    pub include_empty: bool,
    pub execution: Execution,
}

/// Filename-safe form of a filter name: `bel+` becomes `belplus`, and any
/// other character outside `[A-Za-z0-9_]` becomes `_`.
pub fn slug(name: &str) -> String {
    let mut out = String::new();
    for c in name.chars() {
        match c {
            '+' => out.push_str("plus"),
            c if c.is_ascii_alphanumeric() || c == '_' => out.push(c),
            _ => out.push('_'),
        }
    }
    out
}

/// `data{slug}{nobs}.csv`, with `_n` between the two when the slug ends in a
/// digit so the sample size stays readable.
pub fn plot_file_name(label: &str, nobs: u64) -> String {
    let s = slug(label);
    if s.ends_with(|c: char| c.is_ascii_digit()) {
        format!("data{s}_n{nobs}.csv")
    } else {
        format!("data{s}{nobs}.csv")
    }
}

pub fn stats_file_name(nobs: u64) -> String {
    format!("stats{nobs}.csv")
}

pub fn render_plot_data(report: &SamplingReport, label: &str) -> String {
    let mut out = String::from(PLOT_HEADER);
    out.push('\n');
    for r in report.rows_for(label) {
        out.push_str(&format!(
            "{} {} {} {}\n",
            r.varname,
            fmt_value(r.q025),
            fmt_value(r.median),
            fmt_value(r.q975)
        ));
    }
    out
}

pub fn render_stats_csv(report: &SamplingReport, universe: &Universe) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Config(format!("csv: {e}"));
    w.write_record(STATS_HEADER).map_err(csv_err)?;
    for r in &report.rows {
        let nums = [
            r.true_value,
            r.mean,
            r.bias,
            r.median,
            r.q25,
            r.q75,
            r.q025,
            r.q975,
        ];
        let mut rec = vec![
            r.filter_label.clone(),
            r.varname.to_string(),
            universe.render(r.event),
        ];
        rec.extend(nums.iter().map(|&v| fmt_value(v)));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn build_config(model: &Model, opts: &SimulateOptions, nobs: u64) -> Result<ExperimentConfig> {
    if !matches!(opts.events, EventSelector::All | EventSelector::Nonempty) {
        return Err(CliError::Config(
            "simulate reports every nonempty event; use --events all or nonempty".into(),
        ));
    }
    let filters = opts
        .filters
        .iter()
        .map(|c| match c {
            Column::Mass(f) => Ok(LabeledFilter::named(*f)),
            other => Err(CliError::Config(format!(
                "`{other}` does not depend on the mass function and cannot be simulated"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut slugs = HashSet::new();
    for f in &filters {
        if !slugs.insert(slug(&f.label)) {
            return Err(CliError::Config(format!(
                "filter `{}` repeats or clashes with another file name",
                f.label
            )));
        }
    }
    let mut cfg = ExperimentConfig::new(model.mass.clone(), filters, nobs);
    cfg.replications = opts.replications;
    cfg.seed = opts.seed;
    cfg.include_empty_event = opts.include_empty;
    cfg.validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(cfg)
}

/// Runs one simulation per sample size and writes the plot-data files and the
/// full statistics CSV for each. Returns the paths written.
pub fn cmd_simulate(model: &Model, opts: &SimulateOptions, out_dir: &Path) -> Result<Vec<PathBuf>> {
    if opts.sample_sizes.is_empty() {
        return Err(CliError::Config("no sample sizes given".into()));
    }
    // validate everything before the first (possibly long) run
    let configs = opts
        .sample_sizes
        .iter()
        .map(|&n| build_config(model, opts, n))
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut written = Vec::new();
    for cfg in &configs {
        let report = simulate_with(cfg, opts.execution)?;
        let nobs = cfg.sample_size;
        for label in &report.labels {
            let path = out_dir.join(plot_file_name(label, nobs));
            fs::write(&path, render_plot_data(&report, label))
                .map_err(|e| CliError::io(&path, e))?;
            written.push(path);
        }
        let path = out_dir.join(stats_file_name(nobs));
        fs::write(&path, render_stats_csv(&report, &model.universe)?)
            .map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
