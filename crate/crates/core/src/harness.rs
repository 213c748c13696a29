//! Declarative experiment runner with seeded replicates, shared
//! per-replicate state and noise across methods, and CSV emission.
//!
//! Seed streams: replicate seed = derive(master, replicate); states,
//! synthetic noise, twirl sets, and estimator sampling each draw from
//! fixed sub-streams of the replicate seed (see `seeding`), so a record
//! set is reproducible from the master seed alone. Replicates run in
//! parallel and are merged in replicate order, making the output
//! independent of scheduling.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::compile::{compile_mt, MtPlan};
use crate::error::{Error, Result};
use crate::mitigate::{
    mitigated_estimate, tpn_baseline, EstimatorConfig, ShotBudget,
};
use crate::noise::{device_like_spec, lambda_to_ptm, write_ptm_csv, NoiseSpec, TransferMatrix};
use crate::pauli::ZMask;
use crate::seeding::derive_seed;
use crate::sim::{
    basis_state_index, haar_state, measure_distribution, sample_counts, zero_state,
    GateNoiseParams, OutcomeDistribution, PureState,
};
use crate::twirl::{random_twirl_set, sbpt_set};

const STREAM_STATE: u64 = 1;
const STREAM_NOISE: u64 = 2;
const STREAM_TWIRL: u64 = 3;
const STREAM_MT_TWIRL: u64 = 4;
const STREAM_EST: u64 = 5;
const STREAM_SAMPLE: u64 = 6;

/// Bundled experiment presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    /// Twirl-size sweep comparing random and subsystem-balanced twirling.
    Fig2,
    /// Two-point twirl-size comparison on computational-basis states.
    Fig3a,
    /// Two-point twirl-size comparison on Haar-random states.
    Fig3b,
    /// Qubit-number sweep with synthetic noise.
    Fig3c,
    /// Shot-number sweep.
    Fig3d,
    /// Twirl-size sweep for the transformation-based methods.
    Fig3e,
    /// Circuit-depth / effective-weight trade-off.
    Fig4,
    /// Noise-knob sweep.
    NoiseSweep,
    /// Reduced-PTM magnitude dump (use `ptm_dump`).
    PtmDump,
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExperimentId::Fig2 => "fig2",
            ExperimentId::Fig3a => "fig3a",
            ExperimentId::Fig3b => "fig3b",
            ExperimentId::Fig3c => "fig3c",
            ExperimentId::Fig3d => "fig3d",
            ExperimentId::Fig3e => "fig3e",
            ExperimentId::Fig4 => "fig4",
            ExperimentId::NoiseSweep => "noise-sweep",
            ExperimentId::PtmDump => "ptm-dump",
        };
        write!(f, "{s}")
    }
}

/// Estimation methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Direct noisy measurement.
    Noisy,
    /// Tensor-product inversion from single-qubit marginals.
    Tpn,
    /// Model-free mitigation with random twirling.
    Mf,
    /// Model-free mitigation with subsystem-balanced twirling.
    MfSub,
    /// Measurement transformation with random twirling.
    MtRnd,
    /// Measurement transformation with subsystem-balanced twirling.
    MtSub,
}

impl Method {
    pub fn uses_transformation(&self) -> bool {
        matches!(self, Method::MtRnd | Method::MtSub)
    }

    pub fn uses_twirl(&self) -> bool {
        !matches!(self, Method::Noisy | Method::Tpn)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Noisy => "noisy",
            Method::Tpn => "tpn",
            Method::Mf => "mf",
            Method::MfSub => "mf-sub",
            Method::MtRnd => "mt-rnd",
            Method::MtSub => "mt-sub",
        };
        write!(f, "{s}")
    }
}

/// Input-state family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    Haar,
    BasisRandom,
    Zero,
}

/// Shot schedule: "infinite" or an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Shots {
    Word(String),
    One(u64),
    Many(Vec<u64>),
}

impl Default for Shots {
    fn default() -> Self {
        Shots::Word("infinite".into())
    }
}

impl Shots {
    fn validate(&self) -> Result<()> {
        match self {
            Shots::Word(w) if w == "infinite" => Ok(()),
            Shots::Word(w) => Err(Error::InvalidConfig(format!(
                "shots must be \"infinite\" or a list, got \"{w}\""
            ))),
            Shots::One(0) => Err(Error::InvalidConfig("shots must be positive".into())),
            Shots::One(_) => Ok(()),
            Shots::Many(v) if v.is_empty() || v.contains(&0) => {
                Err(Error::InvalidConfig("shot list must be non-empty and positive".into()))
            }
            Shots::Many(_) => Ok(()),
        }
    }

    fn single(&self) -> Result<ShotBudget> {
        match self {
            Shots::Word(_) => Ok(ShotBudget::Infinite),
            Shots::One(s) => Ok(ShotBudget::Finite(*s)),
            Shots::Many(v) if v.len() == 1 => Ok(ShotBudget::Finite(v[0])),
            Shots::Many(_) => Err(Error::InvalidConfig(
                "this experiment takes a single shot budget; use the fig3d sweep for lists".into(),
            )),
        }
    }

    fn list(&self) -> Result<Vec<u64>> {
        match self {
            Shots::Many(v) => Ok(v.clone()),
            Shots::One(s) => Ok(vec![*s]),
            Shots::Word(_) => Err(Error::InvalidConfig(
                "a shot-sweep experiment needs an explicit shot list".into(),
            )),
        }
    }
}

/// Measurement-transformation request in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MtTarget {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_weight: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
}

impl MtTarget {
    fn plan(&self, source: &ZMask) -> Result<MtPlan> {
        match (&self.target_weight, &self.targets) {
            (Some(k), None) => MtPlan::to_weight(*source, *k),
            (None, Some(t)) => MtPlan::with_targets(*source, t),
            _ => Err(Error::InvalidConfig(
                "mt entry needs exactly one of target_weight / targets".into(),
            )),
        }
    }

    fn label(&self, source: &ZMask) -> f64 {
        match (&self.target_weight, &self.targets) {
            (Some(k), _) => *k as f64,
            (_, Some(t)) => t.len() as f64,
            _ => source.weight() as f64,
        }
    }
}

/// Noise-knob sweep description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSweep {
    pub knob: SweepKnob,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKnob {
    /// Mean of the correlated (CTMP) strengths in the synthetic model.
    CorrMer,
    /// Coherent XX angle in the gate-noise model.
    CoherentGer,
}

impl SweepKnob {
    fn param_name(&self) -> &'static str {
        match self {
            SweepKnob::CorrMer => "corr_mer",
            SweepKnob::CoherentGer => "coherent_ger",
        }
    }
}

fn default_replicates() -> usize {
    100
}

/// Declarative description of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    pub n: usize,
    /// Observable strings over {I, Z}; the token "global" means Z on
    /// every qubit of the current system size.
    pub observables: Vec<String>,
    pub methods: Vec<Method>,
    #[serde(default)]
    pub ri: Vec<usize>,
    #[serde(default)]
    pub shots: Shots,
    pub state: StateKind,
    pub noise: NoiseSpec,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    pub seed: u64,
    #[serde(default)]
    pub mt: Vec<MtTarget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_noise: Option<GateNoiseParams>,
    #[serde(default)]
    pub qubit_sweep: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_sweep: Option<NoiseSweep>,
}

/// One replicate's output row for one method at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub experiment: ExperimentId,
    pub observable: String,
    pub method: Method,
    pub replicate: usize,
    pub param_name: String,
    pub param_value: f64,
    pub estimate: f64,
    pub ideal: f64,
    pub abs_error: f64,
    pub wall_ms: u64,
}

#[derive(Debug, Clone)]
struct ParamPoint {
    name: &'static str,
    value: f64,
    n: usize,
    ri: usize,
    shots: ShotBudget,
    mt_idx: usize,
    knob: Option<(SweepKnob, f64)>,
}

fn resolve_observable(template: &str, n: usize) -> Result<ZMask> {
    if template == "global" {
        return Ok(ZMask::full(n));
    }
    let z: ZMask = template.parse()?;
    if z.n() != n {
        return Err(Error::LengthMismatch(z.n(), n));
    }
    Ok(z)
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("methods must be non-empty".into()));
        }
        if self.observables.is_empty() {
            return Err(Error::InvalidConfig("observables must be non-empty".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidConfig("replicates must be at least 1".into()));
        }
        self.shots.validate()?;
        let needs_mt = self.methods.iter().any(Method::uses_transformation);
        if needs_mt && self.mt.is_empty() {
            return Err(Error::InvalidConfig(
                "mt-rnd / mt-sub methods need an [[mt]] plan entry".into(),
            ));
        }
        if self.methods.iter().any(Method::uses_twirl) && self.ri.is_empty() {
            return Err(Error::InvalidConfig("twirled methods need an ri list".into()));
        }
        Ok(())
    }

    fn points(&self) -> Result<Vec<ParamPoint>> {
        let single = || self.shots.single();
        let mut points = Vec::new();
        match self.experiment {
            ExperimentId::Fig2 | ExperimentId::Fig3a | ExperimentId::Fig3b | ExperimentId::Fig3e => {
                for &ri in &self.ri {
                    points.push(ParamPoint {
                        name: "ri",
                        value: ri as f64,
                        n: self.n,
                        ri,
                        shots: single()?,
                        mt_idx: 0,
                        knob: None,
                    });
                }
            }
            ExperimentId::Fig3c => {
                if self.qubit_sweep.is_empty() {
                    return Err(Error::InvalidConfig("fig3c needs qubit_sweep".into()));
                }
                for &n in &self.qubit_sweep {
                    points.push(ParamPoint {
                        name: "n",
                        value: n as f64,
                        n,
                        ri: self.ri[0],
                        shots: single()?,
                        mt_idx: 0,
                        knob: None,
                    });
                }
            }
            ExperimentId::Fig3d => {
                for s in self.shots.list()? {
                    points.push(ParamPoint {
                        name: "shots",
                        value: s as f64,
                        n: self.n,
                        ri: self.ri[0],
                        shots: ShotBudget::Finite(s),
                        mt_idx: 0,
                        knob: None,
                    });
                }
            }
            ExperimentId::Fig4 => {
                if self.mt.is_empty() {
                    return Err(Error::InvalidConfig("fig4 needs [[mt]] entries".into()));
                }
                for (idx, mt) in self.mt.iter().enumerate() {
                    points.push(ParamPoint {
                        name: "tau_eff",
                        value: mt.label(&ZMask::full(self.n)),
                        n: self.n,
                        ri: self.ri.first().copied().unwrap_or(4),
                        shots: single()?,
                        mt_idx: idx,
                        knob: None,
                    });
                }
            }
            ExperimentId::NoiseSweep => {
                let sweep = self
                    .noise_sweep
                    .as_ref()
                    .ok_or_else(|| Error::InvalidConfig("noise-sweep needs noise_sweep".into()))?;
                for &v in &sweep.values {
                    points.push(ParamPoint {
                        name: sweep.knob.param_name(),
                        value: v,
                        n: self.n,
                        ri: self.ri.first().copied().unwrap_or(4),
                        shots: single()?,
                        mt_idx: 0,
                        knob: Some((sweep.knob, v)),
                    });
                }
            }
            ExperimentId::PtmDump => {
                return Err(Error::InvalidConfig(
                    "ptm-dump produces a matrix, not records; use ptm_dump / the ptm subcommand"
                        .into(),
                ));
            }
        }
        if points.is_empty() {
            return Err(Error::InvalidConfig("experiment resolves to no parameter points".into()));
        }
        Ok(points)
    }

    fn noise_for(&self, point: &ParamPoint, rep_seed: u64) -> Result<NoiseSpec> {
        let mut spec = self.noise.clone();
        if let NoiseSpec::Synthetic(s) = &mut spec {
            s.n = point.n;
            s.seed = derive_seed(derive_seed(rep_seed, STREAM_NOISE), point.n as u64);
        } else if spec.n() != point.n {
            return Err(Error::LengthMismatch(spec.n(), point.n));
        }
        if let Some((SweepKnob::CorrMer, v)) = point.knob {
            match &mut spec {
                NoiseSpec::Synthetic(s) => s.mean_corr = v,
                _ => {
                    return Err(Error::InvalidConfig(
                        "corr-mer sweeps need synthetic noise".into(),
                    ))
                }
            }
        }
        Ok(spec)
    }

    fn gate_noise_for(&self, point: &ParamPoint) -> GateNoiseParams {
        let mut g = self.gate_noise.unwrap_or_default();
        if let Some((SweepKnob::CoherentGer, v)) = point.knob {
            g.beta = v;
        }
        g
    }

    fn state_for(&self, n: usize, rep_seed: u64) -> Result<PureState> {
        let seed = derive_seed(derive_seed(rep_seed, STREAM_STATE), n as u64);
        match self.state {
            StateKind::Haar => haar_state(n, seed),
            StateKind::BasisRandom => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(basis_state_index(n, rng.gen_range(0..1usize << n)))
            }
            StateKind::Zero => Ok(zero_state(n)),
        }
    }
}

type CompiledMt = HashMap<(String, usize, usize), (Circuit, ZMask)>;

/// Runs every replicate of the configured experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let points = cfg.points()?;

    // Compile transformation circuits once per (observable, plan, n).
    let mut compiled: CompiledMt = HashMap::new();
    if cfg.methods.iter().any(Method::uses_transformation) {
        for point in &points {
            for template in &cfg.observables {
                let z = resolve_observable(template, point.n)?;
                let mt = cfg.mt.get(point.mt_idx).ok_or_else(|| {
                    Error::InvalidConfig(format!("missing mt entry {}", point.mt_idx))
                })?;
                if let std::collections::hash_map::Entry::Vacant(slot) =
                    compiled.entry((template.clone(), point.mt_idx, point.n))
                {
                    slot.insert(compile_mt(&mt.plan(&z)?)?);
                }
            }
        }
    }

    // Fixed (non-synthetic) noise is shared across replicates.
    let mut fixed_lams: HashMap<usize, TransferMatrix> = HashMap::new();
    if !matches!(cfg.noise, NoiseSpec::Synthetic(_)) {
        for point in &points {
            if let std::collections::hash_map::Entry::Vacant(slot) = fixed_lams.entry(point.n) {
                slot.insert(cfg.noise_for(point, 0)?.build()?);
            }
        }
    }

    let replicate_results: Result<Vec<Vec<ResultRecord>>> = (0..cfg.replicates)
        .into_par_iter()
        .map(|rep| run_replicate(cfg, &points, &compiled, &fixed_lams, rep))
        .collect();
    Ok(replicate_results?.into_iter().flatten().collect())
}

fn run_replicate(
    cfg: &ExperimentConfig,
    points: &[ParamPoint],
    compiled: &CompiledMt,
    fixed_lams: &HashMap<usize, TransferMatrix>,
    rep: usize,
) -> Result<Vec<ResultRecord>> {
    let rep_seed = derive_seed(cfg.seed, rep as u64);
    let mut out = Vec::new();
    for (p_idx, point) in points.iter().enumerate() {
        let state = cfg.state_for(point.n, rep_seed)?;
        let corr_sweep = matches!(point.knob, Some((SweepKnob::CorrMer, _)));
        let lam_owned: Option<TransferMatrix> = match fixed_lams.get(&point.n) {
            Some(_) if !corr_sweep => None,
            _ => Some(cfg.noise_for(point, rep_seed)?.build()?),
        };
        let lam = match &lam_owned {
            Some(l) => l,
            None => &fixed_lams[&point.n],
        };
        let gnoise = cfg.gate_noise_for(point);
        for (o_idx, template) in cfg.observables.iter().enumerate() {
            let z = resolve_observable(template, point.n)?;
            let ideal = state.z_expectation(&z);
            let mix = ((p_idx as u64) << 16) | o_idx as u64;
            for &method in &cfg.methods {
                let start = Instant::now();
                let estimate = run_method(
                    method, point, template, &z, &state, lam, compiled, gnoise, rep_seed, mix,
                )?;
                let wall_ms = start.elapsed().as_millis() as u64;
                out.push(ResultRecord {
                    experiment: cfg.experiment,
                    observable: template.clone(),
                    method,
                    replicate: rep,
                    param_name: point.name.to_string(),
                    param_value: point.value,
                    estimate,
                    ideal,
                    abs_error: (estimate - ideal).abs(),
                    wall_ms,
                });
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn run_method(
    method: Method,
    point: &ParamPoint,
    template: &str,
    z: &ZMask,
    state: &PureState,
    lam: &TransferMatrix,
    compiled: &CompiledMt,
    gnoise: GateNoiseParams,
    rep_seed: u64,
    mix: u64,
) -> Result<f64> {
    let sample_seed = derive_seed(derive_seed(rep_seed, STREAM_SAMPLE), mix);
    match method {
        Method::Noisy => {
            let dist = measure_distribution(&state.diagonal(), lam)?;
            Ok(direct_expectation(&dist, z, point.shots, sample_seed)?)
        }
        Method::Tpn => {
            let dist = measure_distribution(&state.diagonal(), lam)?;
            let dist = match point.shots {
                ShotBudget::Infinite => dist,
                ShotBudget::Finite(s) => {
                    OutcomeDistribution::from_counts(z.n(), &sample_counts(&dist, s, sample_seed))?
                }
            };
            let (_, e) = tpn_baseline(&dist, &lam.marginal_readouts(), z)?;
            Ok(e)
        }
        Method::Mf | Method::MfSub => {
            let seed = derive_seed(derive_seed(rep_seed, STREAM_TWIRL), mix);
            let twirl = match method {
                Method::Mf => random_twirl_set(point.n, point.ri, seed)?,
                _ => sbpt_set(z, point.n, point.ri, seed)?,
            };
            let est_cfg = EstimatorConfig {
                twirl: &twirl,
                circuit: None,
                gnoise: None,
                shots: point.shots,
                seed: derive_seed(derive_seed(rep_seed, STREAM_EST), mix),
            };
            mitigated_estimate(state, z, lam, &est_cfg)
        }
        Method::MtRnd | Method::MtSub => {
            let key = (template.to_string(), point.mt_idx, point.n);
            let (circuit, z_eff) = compiled
                .get(&key)
                .ok_or_else(|| Error::InvalidConfig("missing compiled plan".into()))?;
            let seed = derive_seed(derive_seed(rep_seed, STREAM_MT_TWIRL), mix);
            let twirl = match method {
                Method::MtRnd => random_twirl_set(point.n, point.ri, seed)?,
                _ => sbpt_set(z_eff, point.n, point.ri, seed)?,
            };
            let est_cfg = EstimatorConfig {
                twirl: &twirl,
                circuit: Some(circuit),
                gnoise: Some(gnoise),
                shots: point.shots,
                seed: derive_seed(derive_seed(rep_seed, STREAM_EST), mix),
            };
            mitigated_estimate(state, z_eff, lam, &est_cfg)
        }
    }
}

fn direct_expectation(
    dist: &OutcomeDistribution,
    z: &ZMask,
    shots: ShotBudget,
    seed: u64,
) -> Result<f64> {
    match shots {
        ShotBudget::Infinite => Ok(dist.z_expectation(z)),
        ShotBudget::Finite(s) => {
            let counts = sample_counts(dist, s, seed);
            Ok(OutcomeDistribution::from_counts(z.n(), &counts)?.z_expectation(z))
        }
    }
}

/// Mean and standard-error summary per (observable, method, point).
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub observable: String,
    pub method: Method,
    pub param_name: String,
    pub param_value: f64,
    pub mean_abs_error: f64,
    pub sem: f64,
    pub count: usize,
}

/// Aggregates records; SEM = sample std / sqrt(count).
pub fn aggregate(records: &[ResultRecord]) -> Vec<SummaryRow> {
    let mut order: Vec<(String, Method, String, u64)> = Vec::new();
    let mut groups: HashMap<(String, Method, String, u64), Vec<f64>> = HashMap::new();
    for r in records {
        let key = (
            r.observable.clone(),
            r.method,
            r.param_name.clone(),
            r.param_value.to_bits(),
        );
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(r.abs_error);
    }
    order
        .into_iter()
        .map(|key| {
            let vals = &groups[&key];
            let count = vals.len();
            let mean = vals.iter().sum::<f64>() / count as f64;
            let sem = if count > 1 {
                let var =
                    vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count as f64 - 1.0);
                (var / count as f64).sqrt()
            } else {
                0.0
            };
            SummaryRow {
                observable: key.0,
                method: key.1,
                param_name: key.2,
                param_value: f64::from_bits(key.3),
                mean_abs_error: mean,
                sem,
                count,
            }
        })
        .collect()
}

/// log(mean mitigated error / mean unmitigated error) per parameter
/// point, relative to the `noisy` rows of the same observable.
pub fn relative_log_errors(summary: &[SummaryRow]) -> Vec<(String, Method, f64, f64)> {
    let mut out = Vec::new();
    for row in summary {
        if row.method == Method::Noisy {
            continue;
        }
        if let Some(base) = summary.iter().find(|b| {
            b.method == Method::Noisy
                && b.observable == row.observable
                && b.param_value == row.param_value
        }) {
            if base.mean_abs_error > 0.0 && row.mean_abs_error > 0.0 {
                out.push((
                    row.observable.clone(),
                    row.method,
                    row.param_value,
                    (row.mean_abs_error / base.mean_abs_error).ln(),
                ));
            }
        }
    }
    out
}

/// Writes records with the fixed column set. Floats use Rust's shortest
/// round-trip formatting; wall_ms is timing data and is the one column
/// excluded from the byte-for-byte determinism contract.
pub fn write_records_csv(records: &[ResultRecord], out: &mut impl Write) -> Result<()> {
    writeln!(
        out,
        "experiment,method,replicate,param_name,param_value,estimate,ideal,abs_error,wall_ms"
    )?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.experiment,
            r.method,
            r.replicate,
            r.param_name,
            r.param_value,
            r.estimate,
            r.ideal,
            r.abs_error,
            r.wall_ms
        )?;
    }
    Ok(())
}

/// Writes summary rows (not part of the fixed-format contract).
pub fn write_summary_csv(summary: &[SummaryRow], out: &mut impl Write) -> Result<()> {
    writeln!(out, "observable,method,param_name,param_value,mean_abs_error,sem,count")?;
    for s in summary {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.observable, s.method, s.param_name, s.param_value, s.mean_abs_error, s.sem, s.count
        )?;
    }
    Ok(())
}

/// Dumps reduced-PTM magnitudes for a noise spec as labelled CSV.
pub fn ptm_dump(spec: &NoiseSpec, out: &mut impl Write) -> Result<()> {
    let ptm = lambda_to_ptm(&spec.build()?);
    write_ptm_csv(&ptm, true, out)
}

/// The bundled device-style noise used by default configs.
pub fn bundled_device_noise() -> NoiseSpec {
    device_like_spec()
}
