//! Sampling distributions of filter estimates.
//!
//! Each replication draws `N` response patterns multinomially from the true
//! mass function, estimates the mass by relative frequencies and evaluates
//! every configured filter on every event. Replication `r` uses its own
//! ChaCha8 stream (key from `seed`, stream id `r`), so results do not depend
//! on scheduling or thread count.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filters::NamedFilter;
use crate::mass::{estimate_mass, MassFunction, ObservationCounts};
use crate::universe::{enumerate_subsets, NeighbourhoodFamily, SubsetMask};

pub const DEFAULT_REPLICATIONS: usize = 10_000;

/// The random stream of replication `r`: ChaCha8 keyed by `seed` (expanded
/// through `seed_from_u64`), with `r` as the stream id.
pub fn replication_rng(seed: u64, r: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r);
    rng
}

/// Draws patterns by inverse-CDF lookup over the focal elements, in the
/// family's canonical order. Members without mass are never drawn.
#[derive(Debug, Clone)]
pub struct PatternSampler {
    family: Arc<NeighbourhoodFamily>,
    slots: Vec<usize>,
    cumulative: Vec<f64>,
}

impl PatternSampler {
    pub fn new(m: &MassFunction) -> Self {
        let mut slots = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        for (i, &v) in m.values().iter().enumerate() {
            if v > 0.0 {
                acc += v;
                slots.push(i);
                cumulative.push(acc);
            }
        }
        PatternSampler {
            family: m.family().clone(),
            slots,
            cumulative,
        }
    }

    /// Index of one drawn member.
    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self
            .cumulative
            .last()
            .expect("a mass function has a focal element");
        let target = rng.random::<f64>() * total;
        let j = self.cumulative.partition_point(|&c| c <= target);
        self.slots[j.min(self.slots.len() - 1)]
    }

    pub fn sample<R: Rng + ?Sized>(&self, n_obs: u64, rng: &mut R) -> ObservationCounts {
        let mut counts = vec![0u64; self.family.len()];
        for _ in 0..n_obs {
            counts[self.draw(rng)] += 1;
        }
        ObservationCounts::new(self.family.clone(), counts)
    }
}

/// One multinomial sample of `n_obs` patterns.
pub fn sample_counts<R: Rng + ?Sized>(
    m: &MassFunction,
    n_obs: u64,
    rng: &mut R,
) -> ObservationCounts {
    PatternSampler::new(m).sample(n_obs, rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledFilter {
    pub label: String,
    pub filter: NamedFilter,
}

impl LabeledFilter {
    /// Labelled by the filter's own name.
    pub fn named(filter: NamedFilter) -> Self {
        LabeledFilter {
            label: filter.to_string(),
            filter,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// The true model the patterns are drawn from.
    pub mass: MassFunction,
    pub filters: Vec<LabeledFilter>,
    pub sample_size: u64,
    pub replications: usize,
    pub seed: u64,
    pub include_empty_event: bool,
}

impl ExperimentConfig {
    pub fn new(mass: MassFunction, filters: Vec<LabeledFilter>, sample_size: u64) -> Self {
        ExperimentConfig {
            mass,
            filters,
            sample_size,
            replications: DEFAULT_REPLICATIONS,
            seed: 0,
            include_empty_event: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_size == 0 {
            return Err(Error::Config("sample size must be at least 1".into()));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.filters.is_empty() {
            return Err(Error::Config("no filters configured".into()));
        }
        let mut seen = HashSet::new();
        for f in &self.filters {
            if !seen.insert(f.label.as_str()) {
                return Err(Error::Config(format!(
                    "duplicate filter label `{}`",
                    f.label
                )));
            }
            f.filter.validate(self.mass.family())?;
        }
        Ok(())
    }

    /// Events in canonical order; position `i` has varname `i + 1`.
    pub fn events(&self) -> Vec<SubsetMask> {
        enumerate_subsets(self.mass.family().universe(), self.include_empty_event)
    }
}

/// How replications are scheduled. Both produce identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool; sequential when the `parallel` feature is off.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Filter estimates from every replication.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationSamples {
    pub events: Vec<SubsetMask>,
    pub labels: Vec<String>,
    replications: usize,
    // [filter][event][replication]
    values: Vec<f64>,
}

impl ReplicationSamples {
    pub fn replications(&self) -> usize {
        self.replications
    }

    /// Estimates of filter `f` on event index `e`, one per replication.
    pub fn get(&self, f: usize, e: usize) -> &[f64] {
        let start = (f * self.events.len() + e) * self.replications;
        &self.values[start..start + self.replications]
    }
}

fn replicate(
    cfg: &ExperimentConfig,
    sampler: &PatternSampler,
    events: &[SubsetMask],
    r: usize,
    out: &mut [f64],
) -> Result<()> {
    let mut rng = replication_rng(cfg.seed, r as u64);
    let counts = sampler.sample(cfg.sample_size, &mut rng);
    let estimate = estimate_mass(&counts)?;
    let mut slot = out.iter_mut();
    for f in &cfg.filters {
        for &e in events {
            *slot.next().expect("row sized to filters x events") = f.filter.eval(&estimate, e)?;
        }
    }
    Ok(())
}

pub fn run_replications(cfg: &ExperimentConfig) -> Result<ReplicationSamples> {
    run_replications_with(cfg, Execution::default())
}

pub fn run_replications_with(
    cfg: &ExperimentConfig,
    exec: Execution,
) -> Result<ReplicationSamples> {
    cfg.validate()?;
    let events = cfg.events();
    let sampler = PatternSampler::new(&cfg.mass);
    let width = cfg.filters.len() * events.len();
    let reps = cfg.replications;

    // replication-major scratch, one preallocated row per replication
    let mut rows = vec![0.0; width * reps];
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            rows.par_chunks_mut(width)
                .enumerate()
                .try_for_each(|(r, row)| replicate(cfg, &sampler, &events, r, row))?;
        }
        _ => {
            for (r, row) in rows.chunks_mut(width).enumerate() {
                replicate(cfg, &sampler, &events, r, row)?;
            }
        }
    }

    let mut values = vec![0.0; width * reps];
    for (r, row) in rows.chunks(width).enumerate() {
        for (j, &v) in row.iter().enumerate() {
            values[j * reps + r] = v;
        }
    }
    Ok(ReplicationSamples {
        events,
        labels: cfg.filters.iter().map(|f| f.label.clone()).collect(),
        replications: reps,
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub bias: f64,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    pub q025: f64,
    pub q975: f64,
}

/// Quantile of sorted data by linear interpolation between order
/// statistics at position `h = (len - 1)·q`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn summarize(samples: &[f64], true_value: f64) -> Result<Summary> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    // running mean: exact on constant samples
    let mut mean = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        mean += (x - mean) / (i + 1) as f64;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q = |p| quantile_sorted(&sorted, p);
    Ok(Summary {
        mean,
        bias: mean - true_value,
        median: q(0.5),
        q25: q(0.25),
        q75: q(0.75),
        q025: q(0.025),
        q975: q(0.975),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub event: SubsetMask,
    /// 1-based position of the event in canonical order.
    pub varname: usize,
    pub filter_label: String,
    pub true_value: f64,
    pub mean: f64,
    pub bias: f64,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    pub q025: f64,
    pub q975: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingReport {
    pub sample_size: u64,
    pub replications: usize,
    pub seed: u64,
    pub include_empty_event: bool,
    pub labels: Vec<String>,
    /// Grouped by filter in configuration order, then by varname.
    pub rows: Vec<StatsRow>,
}

impl SamplingReport {
    pub fn rows_for<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a StatsRow> + 'a {
        self.rows.iter().filter(move |r| r.filter_label == label)
    }
}

/// Runs the replications and summarizes every (filter, event) pair.
pub fn simulate(cfg: &ExperimentConfig) -> Result<SamplingReport> {
    simulate_with(cfg, Execution::default())
}

pub fn simulate_with(cfg: &ExperimentConfig, exec: Execution) -> Result<SamplingReport> {
    let samples = run_replications_with(cfg, exec)?;
    let mut rows = Vec::with_capacity(cfg.filters.len() * samples.events.len());
    for (fi, f) in cfg.filters.iter().enumerate() {
        for (ei, &event) in samples.events.iter().enumerate() {
            let true_value = f.filter.eval(&cfg.mass, event)?;
            let s = summarize(samples.get(fi, ei), true_value)?;
            rows.push(StatsRow {
                event,
                varname: ei + 1,
                filter_label: f.label.clone(),
                true_value,
                mean: s.mean,
                bias: s.bias,
                median: s.median,
                q25: s.q25,
                q75: s.q75,
                q025: s.q025,
                q975: s.q975,
            });
        }
    }
    Ok(SamplingReport {
        sample_size: cfg.sample_size,
        replications: cfg.replications,
        seed: cfg.seed,
        include_empty_event: cfg.include_empty_event,
        labels: samples.labels,
        rows,
    })
}
