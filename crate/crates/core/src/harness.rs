//! Frame-level Monte Carlo experiments.
//!
//! For every `(seed, K)` pair a warm-up window of user drops estimates the
//! channel statistics and calibrates the noise floor. Each scored frame then
//! redraws the users and the rate weights, and every scheme schedules the
//! frame's slots. Slots are always scored with the true weighted sum-rate,
//! i.e. with the instantaneous interference, whatever payoff the scheme used
//! to decide.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{
    initial_switchpoints, opt_schedule, stdd_schedule, switchpoint_schedule, SwitchpointScope,
};
use crate::error::{Error, Result};
use crate::game::{build_payoff_table, sample_modes, solve_msne, EquilibriumReport, PayoffTable, SolverOptions};
use crate::inputs::FrameInputs;
use crate::interference::{reference_interference, InterferenceParams, ModeVector, ReferenceInterference};
use crate::power::{allocate_power, PowerBudget, WeightSet};
use crate::rate::{wsr_cell, PayoffFlavor};
use crate::stats::{empirical_quantiles, mean};
use crate::topology::{
    generate_channels, generate_deployment_with_rng, ChannelSet, ChannelStatsAccumulator,
    Deployment, TopologyConfig,
};

/// Number of quantile levels in the emitted CDF tables.
pub const CDF_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Sip,
    App,
    Opt,
    Stdd,
    Switch,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Sip, Scheme::App, Scheme::Opt, Scheme::Stdd, Scheme::Switch];

    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Sip => "SIP",
            Scheme::App => "APP",
            Scheme::Opt => "OPT",
            Scheme::Stdd => "STDD",
            Scheme::Switch => "SWITCH",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sip" => Ok(Scheme::Sip),
            "app" => Ok(Scheme::App),
            "opt" => Ok(Scheme::Opt),
            "stdd" => Ok(Scheme::Stdd),
            "switch" => Ok(Scheme::Switch),
            other => Err(Error::InvalidConfig(format!("unknown scheme {other:?}"))),
        }
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0) / 1000.0
}

/// Transmit limits and noise offset before calibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PowerTemplate {
    pub alpha0_dbm: f64,
    pub alpha1_dbm: f64,
    /// Noise power relative to the mean per-user downlink received power.
    pub noise_offset_db: f64,
}

impl Default for PowerTemplate {
    fn default() -> Self {
        Self {
            alpha0_dbm: 23.0,
            alpha1_dbm: 23.0,
            noise_offset_db: -10.0,
        }
    }
}

/// Sets the noise floor `noise_offset_db` below the mean received downlink
/// power of a served user under an equal split of `alpha1`.
pub fn calibrate_noise(dep: &Deployment, ch: &ChannelSet, template: &PowerTemplate) -> PowerBudget {
    let alpha0 = dbm_to_watts(template.alpha0_dbm);
    let alpha1 = dbm_to_watts(template.alpha1_dbm);
    let per_user = alpha1 / dep.users_per_cell() as f64;
    let mean_rx = (0..dep.num_users())
        .map(|k| ch.h[(dep.serving_cell[k], k)] * per_user)
        .sum::<f64>()
        / dep.num_users() as f64;
    PowerBudget {
        alpha0,
        alpha1,
        sigma2: 10f64.powf(template.noise_offset_db / 10.0) * mean_rx,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScenarioConfig {
    pub topology: TopologyConfig,
    /// Cross-interference factor sweep, with `c1 = c2 = c`.
    pub c_values: Vec<f64>,
    /// Users-per-cell sweep; empty means `topology.users_per_cell` only.
    /// The noise floor is calibrated for `topology.users_per_cell` and held
    /// fixed per block across the sweep.
    pub k_values: Vec<usize>,
    pub power: PowerTemplate,
    pub slots_per_frame: usize,
    pub frames: usize,
    /// Warm-up drops averaged into the channel statistics.
    pub stats_window: usize,
    pub schemes: Vec<Scheme>,
    pub seeds: Vec<u64>,
    pub switchpoint_scope: SwitchpointScope,
    pub solver: SolverOptions,
    pub max_enumerable: usize,
    pub dump_slots: bool,
    pub dump_equilibria: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            topology: TopologyConfig::default(),
            c_values: vec![0.3],
            k_values: Vec::new(),
            power: PowerTemplate::default(),
            slots_per_frame: 10,
            frames: 20,
            stats_window: 50,
            schemes: Scheme::ALL.to_vec(),
            seeds: vec![0],
            switchpoint_scope: SwitchpointScope::PerCell,
            solver: SolverOptions::default(),
            max_enumerable: crate::game::DEFAULT_MAX_ENUMERABLE,
            dump_slots: false,
            dump_equilibria: false,
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.topology.validate()?;
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.schemes.is_empty() {
            return bad("at least one scheme is required");
        }
        if self.seeds.is_empty() {
            return bad("at least one seed is required");
        }
        if self.c_values.is_empty() {
            return bad("at least one c value is required");
        }
        if self.frames == 0 {
            return bad("frames must be >= 1");
        }
        if self.stats_window == 0 {
            return bad("stats_window must be >= 1");
        }
        if self.slots_per_frame == 0 {
            return bad("slots_per_frame must be >= 1");
        }
        if self.k_values.contains(&0) {
            return bad("users per cell must be >= 1");
        }
        for &c in &self.c_values {
            InterferenceParams::symmetric(c)?;
        }
        Ok(())
    }

    pub fn k_sweep(&self) -> Vec<usize> {
        if self.k_values.is_empty() {
            vec![self.topology.users_per_cell]
        } else {
            self.k_values.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub scheme: Scheme,
    pub c: f64,
    pub k: usize,
    pub avg_network_wsr: f64,
    pub per_cell_wsr: Vec<f64>,
    pub wallclock_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub seed: u64,
    pub scheme: Scheme,
    pub c: f64,
    pub k: usize,
    pub frame: usize,
    /// Mean true network WSR over the frame's slots.
    pub avg_wsr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotRecord {
    pub seed: u64,
    pub scheme: Scheme,
    pub c: f64,
    pub k: usize,
    pub frame: usize,
    pub slot: usize,
    pub modes: String,
    pub network_wsr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfRow {
    pub scheme: Scheme,
    pub c: f64,
    pub k: usize,
    pub quantile: f64,
    pub wsr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumDump {
    pub seed: u64,
    pub scheme: Scheme,
    pub c: f64,
    pub k: usize,
    pub frame: usize,
    pub report: EquilibriumReport,
}

/// One frame's drop together with the scheduling state carried across frames.
#[derive(Debug)]
pub struct FrameState<'a> {
    pub frame_index: usize,
    pub dep: &'a Deployment,
    pub ch: &'a ChannelSet,
    pub weights: &'a WeightSet,
    pub reference: &'a ReferenceInterference,
    pub budget: PowerBudget,
    pub params: InterferenceParams,
    /// Switching points of the previous frame.
    pub switch_points: Vec<usize>,
    pub sampling_seed: u64,
}

impl<'a> FrameState<'a> {
    pub fn inputs(&self) -> FrameInputs<'_> {
        FrameInputs {
            dep: self.dep,
            ch: self.ch,
            reference: self.reference,
            weights: self.weights,
            budget: &self.budget,
            params: &self.params,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeFrame {
    pub scheme: Scheme,
    pub slots: Vec<ModeVector>,
    /// True network WSR of every slot.
    pub slot_wsr: Vec<f64>,
    /// True per-cell WSR averaged over the slots.
    pub per_cell_wsr: Vec<f64>,
    pub equilibrium: Option<EquilibriumReport>,
    pub elapsed_s: f64,
}

impl SchemeFrame {
    pub fn mean_wsr(&self) -> f64 {
        mean(&self.slot_wsr)
    }
}

/// Per-cell true WSR of mode profiles, memoized within a frame.
struct TrueScorer<'a> {
    inputs: FrameInputs<'a>,
    cache: HashMap<usize, Vec<f64>>,
}

impl<'a> TrueScorer<'a> {
    fn new(inputs: FrameInputs<'a>, sip: Option<&PayoffTable>) -> Self {
        let mut cache = HashMap::new();
        if let Some(t) = sip {
            for idx in 0..t.num_profiles() {
                cache.insert(idx, t.profile(idx).to_vec());
            }
        }
        Self { inputs, cache }
    }

    fn score(&mut self, z: &ModeVector) -> &[f64] {
        let inputs = self.inputs;
        self.cache.entry(z.index()).or_insert_with(|| {
            let p = allocate_power(z, &inputs);
            (0..inputs.num_cells())
                .map(|n| wsr_cell(n, z, &p, &inputs, PayoffFlavor::Sip))
                .collect()
        })
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Schedules and scores one frame for every configured scheme.
pub fn run_frame(cfg: &ScenarioConfig, state: &mut FrameState<'_>) -> Result<Vec<SchemeFrame>> {
    let frame = state.frame_index;
    let wrap = |e: Error| Error::Frame {
        frame,
        source: Box::new(e),
    };
    let (budget, params) = (state.budget, state.params);
    let inputs = FrameInputs {
        dep: state.dep,
        ch: state.ch,
        reference: state.reference,
        weights: state.weights,
        budget: &budget,
        params: &params,
    };
    let cells = inputs.num_cells();
    let slots = cfg.slots_per_frame;
    let wants = |s: Scheme| cfg.schemes.contains(&s);

    let timed_table = |flavor| -> Result<(PayoffTable, f64)> {
        let t0 = Instant::now();
        let t = build_payoff_table(flavor, &inputs, cfg.max_enumerable)?;
        Ok((t, t0.elapsed().as_secs_f64()))
    };
    let sip = if wants(Scheme::Sip) || wants(Scheme::Opt) {
        Some(timed_table(PayoffFlavor::Sip).map_err(wrap)?)
    } else {
        None
    };
    let app = if wants(Scheme::App) || (wants(Scheme::Switch) && cells <= cfg.max_enumerable) {
        Some(timed_table(PayoffFlavor::App).map_err(wrap)?)
    } else {
        None
    };

    let mut scorer = TrueScorer::new(inputs, sip.as_ref().map(|(t, _)| t));
    let mut out = Vec::with_capacity(cfg.schemes.len());
    for &scheme in &cfg.schemes {
        let t0 = Instant::now();
        let mut table_time = 0.0;
        let mut equilibrium = None;
        let schedule: Vec<ModeVector> = match scheme {
            Scheme::Sip | Scheme::App => {
                let (table, secs) = if scheme == Scheme::Sip { &sip } else { &app }
                    .as_ref()
                    .expect("table built for game schemes");
                table_time = *secs;
                let report = solve_msne(table, &cfg.solver).map_err(wrap)?;
                let mut rng = stream_rng(state.sampling_seed, scheme.stream());
                let modes = sample_modes(report.q.as_slice(), slots, &mut rng);
                equilibrium = Some(report);
                modes
            }
            Scheme::Opt => {
                let (table, secs) = sip.as_ref().expect("SIP table built for OPT");
                table_time = *secs;
                vec![opt_schedule(table); slots]
            }
            Scheme::Stdd => stdd_schedule(cells, slots).map_err(wrap)?.slots,
            Scheme::Switch => {
                let payoff = |n: usize, z: &ModeVector| match &app {
                    Some((t, _)) => t.payoff(n, z),
                    None => wsr_cell(n, z, &allocate_power(z, &inputs), &inputs, PayoffFlavor::App),
                };
                if let Some((_, secs)) = &app {
                    table_time = *secs;
                }
                let (frame_schedule, points) = switchpoint_schedule(
                    payoff,
                    cells,
                    slots,
                    &state.switch_points,
                    cfg.switchpoint_scope,
                )
                .map_err(wrap)?;
                state.switch_points = points;
                frame_schedule.slots
            }
        };

        let mut per_cell = vec![0.0; cells];
        let mut slot_wsr = Vec::with_capacity(slots);
        for z in &schedule {
            let scores = scorer.score(z);
            for (acc, s) in per_cell.iter_mut().zip(scores) {
                *acc += s / slots as f64;
            }
            slot_wsr.push(scores.iter().sum());
        }
        out.push(SchemeFrame {
            scheme,
            slots: schedule,
            slot_wsr,
            per_cell_wsr: per_cell,
            equilibrium,
            elapsed_s: t0.elapsed().as_secs_f64() + table_time,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub records: Vec<RunRecord>,
    pub frames: Vec<FrameRecord>,
    pub cdf: Vec<CdfRow>,
    pub slots: Vec<SlotRecord>,
    pub equilibria: Vec<EquilibriumDump>,
}

/// Purposes of the independent random streams of one `(seed, K)` unit.
#[derive(Clone, Copy)]
enum Stream {
    Warmup = 1,
    Frame = 2,
    Sampling = 3,
}

fn unit_seed(seed: u64, k: usize, stream: Stream, index: usize) -> u64 {
    // splitmix64 finalizer over the packed identifiers
    let mut x = seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add((k as u64) << 40)
        .wrapping_add((stream as u64) << 32)
        .wrapping_add(index as u64);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

struct Drop {
    dep: Deployment,
    ch: ChannelSet,
    weights: WeightSet,
}

fn draw_frame(topo: &TopologyConfig, seed: u64, k: usize, frame: usize) -> Drop {
    let mut rng = ChaCha8Rng::seed_from_u64(unit_seed(seed, k, Stream::Frame, frame));
    let dep = generate_deployment_with_rng(topo, &mut rng);
    let ch = generate_channels(&dep, topo);
    // uniform on (0, 1]
    let mut draw = || 1.0 - rng.gen::<f64>();
    let users = dep.num_users();
    let uplink = (0..users).map(|_| draw()).collect();
    let downlink = (0..users).map(|_| draw()).collect();
    Drop {
        dep,
        ch,
        weights: WeightSet { uplink, downlink },
    }
}

fn run_unit(cfg: &ScenarioConfig, seed: u64, k: usize) -> Result<ExperimentResult> {
    let topo = TopologyConfig {
        users_per_cell: k,
        ..cfg.topology.clone()
    };
    let mut acc = ChannelStatsAccumulator::new(topo.num_cells);
    let mut budget = None;
    for i in 0..cfg.stats_window {
        let mut rng = ChaCha8Rng::seed_from_u64(unit_seed(seed, k, Stream::Warmup, i));
        let dep = generate_deployment_with_rng(&topo, &mut rng);
        let ch = generate_channels(&dep, &topo);
        if budget.is_none() {
            // noise per block stays at its base-K level across a K sweep
            let mut b = calibrate_noise(&dep, &ch, &cfg.power);
            b.sigma2 *= k as f64 / cfg.topology.users_per_cell as f64;
            budget = Some(b);
        }
        acc.add(&ch, &dep)?;
    }
    let stats = acc.finish()?;
    let budget = budget.ok_or(Error::NoChannelSamples)?;
    let drops: Vec<Drop> = (0..cfg.frames).map(|f| draw_frame(&topo, seed, k, f)).collect();

    let mut out = ExperimentResult::default();
    for &c in &cfg.c_values {
        let params = InterferenceParams::symmetric(c)?;
        let reference = reference_interference(&stats, &params, &budget, k);
        let mut switch_points = initial_switchpoints(topo.num_cells, cfg.slots_per_frame);
        let mut totals: HashMap<Scheme, (f64, Vec<f64>, f64)> = HashMap::new();
        for (f, d) in drops.iter().enumerate() {
            let mut state = FrameState {
                frame_index: f,
                dep: &d.dep,
                ch: &d.ch,
                weights: &d.weights,
                reference: &reference,
                budget,
                params,
                switch_points,
                sampling_seed: unit_seed(seed, k, Stream::Sampling, f),
            };
            let frames = run_frame(cfg, &mut state)?;
            switch_points = state.switch_points;
            for sf in frames {
                let entry = totals
                    .entry(sf.scheme)
                    .or_insert_with(|| (0.0, vec![0.0; topo.num_cells], 0.0));
                entry.0 += sf.mean_wsr();
                for (a, v) in entry.1.iter_mut().zip(&sf.per_cell_wsr) {
                    *a += v;
                }
                entry.2 += sf.elapsed_s;
                out.frames.push(FrameRecord {
                    seed,
                    scheme: sf.scheme,
                    c,
                    k,
                    frame: f,
                    avg_wsr: sf.mean_wsr(),
                });
                if cfg.dump_slots {
                    for (slot, (z, w)) in sf.slots.iter().zip(&sf.slot_wsr).enumerate() {
                        out.slots.push(SlotRecord {
                            seed,
                            scheme: sf.scheme,
                            c,
                            k,
                            frame: f,
                            slot,
                            modes: z.to_string(),
                            network_wsr: *w,
                        });
                    }
                }
                if cfg.dump_equilibria {
                    if let Some(report) = sf.equilibrium {
                        out.equilibria.push(EquilibriumDump {
                            seed,
                            scheme: sf.scheme,
                            c,
                            k,
                            frame: f,
                            report,
                        });
                    }
                }
            }
        }
        let frames = cfg.frames as f64;
        for &scheme in &cfg.schemes {
            let (sum, cells, secs) = &totals[&scheme];
            out.records.push(RunRecord {
                seed,
                scheme,
                c,
                k,
                avg_network_wsr: sum / frames,
                per_cell_wsr: cells.iter().map(|v| v / frames).collect(),
                wallclock_s: *secs,
            });
        }
    }
    Ok(out)
}

/// Runs the full sweep: seeds x K values in parallel, then c values and
/// schemes within each unit, and summarizes the per-frame distribution.
pub fn run_experiment(cfg: &ScenarioConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let units: Vec<(usize, u64)> = cfg
        .k_sweep()
        .into_iter()
        .flat_map(|k| cfg.seeds.iter().map(move |&s| (k, s)))
        .collect();
    let parts = units
        .par_iter()
        .map(|&(k, seed)| run_unit(cfg, seed, k))
        .collect::<Result<Vec<_>>>()?;

    let mut result = ExperimentResult::default();
    for p in parts {
        result.records.extend(p.records);
        result.frames.extend(p.frames);
        result.slots.extend(p.slots);
        result.equilibria.extend(p.equilibria);
    }
    result.cdf = cdf_table(&result.frames, cfg);
    Ok(result)
}

/// Per-frame average WSR samples of one `(scheme, c, k)` cell of the sweep.
pub fn frame_samples(frames: &[FrameRecord], scheme: Scheme, c: f64, k: usize) -> Vec<f64> {
    frames
        .iter()
        .filter(|f| f.scheme == scheme && f.c == c && f.k == k)
        .map(|f| f.avg_wsr)
        .collect()
}

fn cdf_table(frames: &[FrameRecord], cfg: &ScenarioConfig) -> Vec<CdfRow> {
    let mut rows = Vec::new();
    for k in cfg.k_sweep() {
        for &c in &cfg.c_values {
            for &scheme in &cfg.schemes {
                let samples = frame_samples(frames, scheme, c, k);
                if samples.is_empty() {
                    continue;
                }
                for (quantile, wsr) in empirical_quantiles(&samples, CDF_POINTS) {
                    rows.push(CdfRow {
                        scheme,
                        c,
                        k,
                        quantile,
                        wsr,
                    });
                }
            }
        }
    }
    rows
}

impl ExperimentResult {
    pub fn write_summary_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["seed", "scheme", "c", "k", "avg_network_wsr", "wallclock_s"])?;
        for r in &self.records {
            w.write_record([
                r.seed.to_string(),
                r.scheme.to_string(),
                r.c.to_string(),
                r.k.to_string(),
                r.avg_network_wsr.to_string(),
                r.wallclock_s.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_cdf_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["scheme", "c", "k", "quantile", "wsr"])?;
        for r in &self.cdf {
            w.write_record([
                r.scheme.to_string(),
                r.c.to_string(),
                r.k.to_string(),
                r.quantile.to_string(),
                r.wsr.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_slots_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["seed", "scheme", "c", "k", "frame", "slot", "modes", "network_wsr"])?;
        for r in &self.slots {
            w.write_record([
                r.seed.to_string(),
                r.scheme.to_string(),
                r.c.to_string(),
                r.k.to_string(),
                r.frame.to_string(),
                r.slot.to_string(),
                r.modes.clone(),
                r.network_wsr.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_equilibria_json(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, serde_json::to_string_pretty(&self.equilibria)?)?;
        Ok(())
    }

    /// Writes `summary.csv` and `cdf.csv`, plus `slots.csv` and
    /// `equilibria.json` when those were collected.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        self.write_summary_csv(dir.join("summary.csv"))?;
        self.write_cdf_csv(dir.join("cdf.csv"))?;
        if !self.slots.is_empty() {
            self.write_slots_csv(dir.join("slots.csv"))?;
        }
        if !self.equilibria.is_empty() {
            self.write_equilibria_json(dir.join("equilibria.json"))?;
        }
        Ok(())
    }
}
