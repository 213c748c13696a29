//! The model-free estimator: twirled noisy expectations, ratio
//! calibration, the tensor-product inversion baseline, and the
//! twirl-set error-bound calculators.
//!
//! Each twirl member is applied physically before the measurement
//! circuit and virtually afterwards by flipping outcome bits where the
//! member carries X or Y. With a measurement-transformation circuit U
//! the physically applied operator is the member conjugated through the
//! inverse circuit, U^dagger P U, which is what commutes the member past
//! U so that the average twirls the combined circuit-plus-readout noise
//! channel. Calibration reruns the identical pipeline on |0...0> and
//! divides.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::noise::{ReducedPTM, SingleQubitReadout, TransferMatrix};
use crate::pauli::{PauliString, ZMask};
use crate::seeding::derive_seed;
use crate::sim::{
    apply_pauli, evolve_coherent, evolve_density, measure_distribution, parity_sign, zero_state,
    GateNoiseParams, OutcomeDistribution, PureState, DENSITY_CAP,
};
use crate::twirl::TwirlSet;

/// Shot budget for one estimator run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShotBudget {
    /// Exact outcome distributions, no sampling.
    Infinite,
    /// Total shots, split evenly across twirl members (remainder to the
    /// first members).
    Finite(u64),
}

/// Everything an estimator run needs besides the state and noise.
///
/// When `circuit` is present, the observable handed to the estimator
/// must be the circuit's compiled effective observable; the original
/// expectation value is recovered because the circuit conjugates one
/// into the other.
#[derive(Debug, Clone, Copy)]
pub struct EstimatorConfig<'a> {
    pub twirl: &'a TwirlSet,
    pub circuit: Option<&'a Circuit>,
    pub gnoise: Option<GateNoiseParams>,
    pub shots: ShotBudget,
    pub seed: u64,
}

impl<'a> EstimatorConfig<'a> {
    pub fn infinite(twirl: &'a TwirlSet, seed: u64) -> Self {
        Self { twirl, circuit: None, gnoise: None, shots: ShotBudget::Infinite, seed }
    }
}

fn validate(state: &PureState, z_eff: &ZMask, lam: &TransferMatrix, cfg: &EstimatorConfig) -> Result<()> {
    let n = state.n();
    for m in [z_eff.n(), lam.n(), cfg.twirl.n()] {
        if m != n {
            return Err(Error::LengthMismatch(m, n));
        }
    }
    if let Some(c) = cfg.circuit {
        if c.n() != n {
            return Err(Error::LengthMismatch(c.n(), n));
        }
    }
    if let Some(g) = cfg.gnoise {
        g.validate()?;
    }
    if let ShotBudget::Finite(s) = cfg.shots {
        if (s as usize) < cfg.twirl.len() {
            return Err(Error::ShotsTooFew { shots: s, members: cfg.twirl.len() });
        }
    }
    Ok(())
}

/// The operator physically applied for a twirl member: the member
/// itself, or its conjugate through the inverse measurement circuit.
fn physical_member(member: &PauliString, circuit: Option<&Circuit>) -> Result<PauliString> {
    match circuit {
        Some(c) => c.inverted().conjugate_pauli(member),
        None => Ok(member.clone()),
    }
}

/// The twirled noisy expectation v for Z_eff on `state`.
pub fn noisy_expectation(
    state: &PureState,
    z_eff: &ZMask,
    lam: &TransferMatrix,
    cfg: &EstimatorConfig,
) -> Result<f64> {
    validate(state, z_eff, lam, cfg)?;
    match cfg.shots {
        ShotBudget::Infinite => infinite_shot_v(state, z_eff, lam, cfg),
        ShotBudget::Finite(shots) => finite_shot_v(state, z_eff, lam, cfg, shots),
    }
}

fn infinite_shot_v(
    state: &PureState,
    z_eff: &ZMask,
    lam: &TransferMatrix,
    cfg: &EstimatorConfig,
) -> Result<f64> {
    let dim = state.dim();
    // Pull the Z_eff parity vector back through the readout noise once;
    // each member is then a dot product against its population vector.
    let s_base: Vec<f64> = (0..dim).map(|o| parity_sign(o, z_eff.mask())).collect();
    let weights = lam.apply_transpose(&s_base)?;
    let gnoise = cfg.gnoise.unwrap_or_else(GateNoiseParams::none);
    let needs_density = cfg.circuit.is_some() && gnoise.has_incoherent();
    if needs_density && state.n() > DENSITY_CAP {
        return Err(Error::SizeCap { n: state.n(), cap: DENSITY_CAP });
    }
    let mut total = 0.0;
    for member in cfg.twirl.members() {
        let flip = parity_sign(member.x_mask(), z_eff.mask());
        let phys = physical_member(member, cfg.circuit)?;
        let prepared = apply_pauli(state, &phys)?;
        let diag = match (cfg.circuit, needs_density) {
            (None, _) => prepared.diagonal(),
            (Some(c), false) => evolve_coherent(&prepared, c, &gnoise)?.diagonal(),
            (Some(c), true) => evolve_density(&prepared.density(), c, &gnoise)?.diagonal(),
        };
        let dot: f64 = diag.iter().zip(&weights).map(|(d, w)| d * w).sum();
        total += flip * dot;
    }
    Ok(total / cfg.twirl.len() as f64)
}

fn finite_shot_v(
    state: &PureState,
    z_eff: &ZMask,
    lam: &TransferMatrix,
    cfg: &EstimatorConfig,
    shots: u64,
) -> Result<f64> {
    let members = cfg.twirl.members();
    let gnoise = cfg.gnoise.unwrap_or_else(GateNoiseParams::none);
    let base = shots / members.len() as u64;
    let extra = (shots % members.len() as u64) as usize;
    let q_any = cfg
        .circuit
        .map(|c| 1.0 - (1.0 - gnoise.p2).powi(c.len() as i32))
        .unwrap_or(0.0);
    let mut total = 0.0;
    for (k, member) in members.iter().enumerate() {
        let member_shots = base + u64::from(k < extra);
        let flip = parity_sign(member.x_mask(), z_eff.mask());
        let phys = physical_member(member, cfg.circuit)?;
        let prepared = apply_pauli(state, &phys)?;
        let clean = match cfg.circuit {
            Some(c) => evolve_coherent(&prepared, c, &gnoise)?,
            None => prepared.clone(),
        };
        let clean_dist = measure_distribution(&clean.diagonal(), lam)?;
        let mut noise_rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 2 * k as u64));
        let mut shot_rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 2 * k as u64 + 1));
        let noisy_shots = if q_any > 0.0 {
            rand_distr::Distribution::sample(
                &rand_distr::Binomial::new(member_shots, q_any).expect("valid binomial"),
                &mut noise_rng,
            )
        } else {
            0
        };
        let mut parity_sum = 0.0f64;
        let counts =
            crate::sim::sample_counts_rng(clean_dist.probs(), member_shots - noisy_shots, &mut shot_rng);
        for (&o, &c) in &counts {
            parity_sum += c as f64 * parity_sign(o, z_eff.mask());
        }
        if noisy_shots > 0 {
            let circuit = cfg.circuit.expect("noisy shots imply a circuit");
            for _ in 0..noisy_shots {
                let pattern = sample_insertions(circuit.len(), gnoise.p2, &mut noise_rng);
                let traj = evolve_with_insertions(&prepared, circuit, &gnoise, &pattern)?;
                let ideal = sample_index(&traj.diagonal(), &mut shot_rng);
                let observed = sample_lambda_column(lam, ideal, &mut shot_rng);
                parity_sum += parity_sign(observed, z_eff.mask());
            }
        }
        total += flip * parity_sum / member_shots as f64;
    }
    Ok(total / members.len() as f64)
}

/// Per-gate insertion pattern conditioned on at least one insertion,
/// drawn by rejection so the conditional law is exact.
fn sample_insertions(gates: usize, p2: f64, rng: &mut ChaCha8Rng) -> Vec<Option<u8>> {
    loop {
        let pattern: Vec<Option<u8>> = (0..gates)
            .map(|_| (rng.gen::<f64>() < p2).then(|| rng.gen_range(1..16u8)))
            .collect();
        if pattern.iter().any(Option::is_some) {
            return pattern;
        }
    }
}

fn evolve_with_insertions(
    state: &PureState,
    circuit: &Circuit,
    gnoise: &GateNoiseParams,
    pattern: &[Option<u8>],
) -> Result<PureState> {
    let mut cur = state.clone();
    for (g, ins) in circuit.gates().iter().zip(pattern) {
        let one_gate = Circuit::new(circuit.n(), vec![*g])?;
        cur = evolve_coherent(&cur, &one_gate, gnoise)?;
        if let Some(code) = ins {
            let mut digits = vec![0u8; circuit.n()];
            digits[g.control - 1] = code & 3;
            digits[g.target - 1] = code >> 2;
            cur = apply_pauli(&cur, &PauliString::from_digits(digits)?)?;
        }
    }
    Ok(cur)
}

fn sample_index(probs: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let mut cum = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        cum += p.max(0.0);
        if u < cum {
            return i;
        }
    }
    probs.len() - 1
}

fn sample_lambda_column(lam: &TransferMatrix, ideal: usize, rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let mut cum = 0.0;
    for k in 0..lam.dim() {
        cum += lam.entry(k, ideal).max(0.0);
        if u < cum {
            return k;
        }
    }
    lam.dim() - 1
}

/// The mitigated estimate a = v(rho) / v(rho_0); both runs share the
/// twirl set, circuit, noise, and per-member seeds.
pub fn mitigated_estimate(
    state: &PureState,
    z_eff: &ZMask,
    lam: &TransferMatrix,
    cfg: &EstimatorConfig,
) -> Result<f64> {
    let v = noisy_expectation(state, z_eff, lam, cfg)?;
    let v0 = noisy_expectation(&zero_state(state.n()), z_eff, lam, cfg)?;
    if v0.abs() <= 1e-12 {
        return Err(Error::VanishingCalibration(v0));
    }
    Ok(v / v0)
}

/// Tensor-product inversion baseline: applies the per-qubit inverse
/// factors to a distribution and evaluates the Z_r expectation. The
/// corrected quasi-distribution may go negative; no projection is done.
pub fn tpn_baseline(
    dist: &OutcomeDistribution,
    readouts: &[SingleQubitReadout],
    z: &ZMask,
) -> Result<(Vec<f64>, f64)> {
    if readouts.len() != dist.n() || z.n() != dist.n() {
        return Err(Error::LengthMismatch(readouts.len(), dist.n()));
    }
    let mut q = dist.probs().to_vec();
    for (k, r) in readouts.iter().enumerate() {
        let det = r.a + r.b - 1.0;
        if det.abs() < 1e-12 {
            return Err(Error::SingularFactor(k + 1));
        }
        let bit = 1usize << k;
        for o in 0..q.len() {
            if o & bit == 0 {
                let p0 = q[o];
                let p1 = q[o | bit];
                q[o] = (r.b * p0 + (r.b - 1.0) * p1) / det;
                q[o | bit] = ((r.a - 1.0) * p0 + r.a * p1) / det;
            }
        }
    }
    let expectation = q
        .iter()
        .enumerate()
        .map(|(o, &p)| parity_sign(o, z.mask()) * p)
        .sum();
    Ok((q, expectation))
}

/// Inputs shared by both bound calculators.
#[derive(Debug, Clone, Copy)]
pub struct BoundInputs<'a> {
    pub ptm: &'a ReducedPTM,
    pub r: ZMask,
    pub set_size: usize,
    pub delta: f64,
}

/// Structured bound report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub kappa: f64,
    pub off_diag_sum: f64,
    pub diag: f64,
    pub dominance: bool,
    pub bound: f64,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kappa = {}", self.kappa)?;
        writeln!(f, "off_diag_sum = {}", self.off_diag_sum)?;
        writeln!(f, "diag = {}", self.diag)?;
        writeln!(f, "dominance = {}", self.dominance)?;
        write!(f, "bound = {}", self.bound)
    }
}

fn check_inputs(b: &BoundInputs) -> Result<()> {
    if b.r.n() != b.ptm.n() {
        return Err(Error::LengthMismatch(b.r.n(), b.ptm.n()));
    }
    if !(b.delta > 0.0 && b.delta < 1.0) {
        return Err(Error::InvalidDelta(b.delta));
    }
    if b.set_size == 0 {
        return Err(Error::InvalidTwirlSize { size: 0, tau: 0 });
    }
    Ok(())
}

fn assemble(kappa: f64, off: f64, diag: f64) -> BoundReport {
    let dominance = diag.abs() > kappa * off;
    let denom = (diag - kappa * off).abs();
    let bound = if off == 0.0 { 0.0 } else { 2.0 * kappa * off / denom };
    BoundReport { kappa, off_diag_sum: off, diag, dominance, bound }
}

/// Error bound for a uniformly random twirl set of the given size:
/// kappa = sqrt((2/|S|)(2 n ln 2 + ln(2/delta))), off-diagonal row mass
/// over every column except phi(r).
pub fn error_bound_random(b: &BoundInputs) -> Result<BoundReport> {
    check_inputs(b)?;
    let n = b.ptm.n();
    let kappa =
        (2.0 / b.set_size as f64 * (2.0 * n as f64 * 2f64.ln() + (2.0 / b.delta).ln())).sqrt();
    let row = b.ptm.row(b.r.index());
    let off: f64 = row
        .iter()
        .enumerate()
        .filter(|&(s, _)| s != b.r.index())
        .map(|(_, v)| v.abs())
        .sum();
    Ok(assemble(kappa, off, row[b.r.index()]))
}

/// Error bound for a subsystem-balanced set: m = n - tau(r) replaces n
/// in kappa, and columns whose support lies inside supp(Z_r) are
/// excluded from the row mass (they cancel exactly).
pub fn error_bound_subsystem(b: &BoundInputs) -> Result<BoundReport> {
    check_inputs(b)?;
    let n = b.ptm.n();
    let m = n - b.r.weight();
    let kappa =
        (2.0 / b.set_size as f64 * (2.0 * m as f64 * 2f64.ln() + (2.0 / b.delta).ln())).sqrt();
    let row = b.ptm.row(b.r.index());
    let off: f64 = row
        .iter()
        .enumerate()
        .filter(|&(s, _)| s & !b.r.mask() != 0)
        .map(|(_, v)| v.abs())
        .sum();
    Ok(assemble(kappa, off, row[b.r.index()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::compile_to_weight;
    use crate::noise::{build_tpn_lambda, lambda_to_ptm, NoiseSpec};
    use crate::sim::haar_state;
    use crate::twirl::{full_twirl_set, random_twirl_set, sbpt_set, TwirlSet};

    fn readouts(n: usize) -> Vec<SingleQubitReadout> {
        (0..n)
            .map(|k| {
                SingleQubitReadout::new(0.99 - 0.01 * k as f64, 0.96 - 0.005 * k as f64).unwrap()
            })
            .collect()
    }

    fn identity_set(n: usize) -> TwirlSet {
        TwirlSet::custom(vec![PauliString::identity(n)]).unwrap()
    }

    #[test]
    fn trivial_twirl_on_zero_state_gives_one() {
        let lam = TransferMatrix::identity(3).unwrap();
        let set = identity_set(3);
        let cfg = EstimatorConfig::infinite(&set, 0);
        for r in 1..8 {
            let z = ZMask::new(3, r).unwrap();
            let v = noisy_expectation(&zero_state(3), &z, &lam, &cfg).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn full_weight_zero_state_full_twirl_gives_omega_product() {
        let ro = readouts(3);
        let lam = build_tpn_lambda(&ro).unwrap();
        let set = full_twirl_set(3, 1);
        let cfg = EstimatorConfig::infinite(&set, 0);
        let z = ZMask::full(3);
        let v = noisy_expectation(&zero_state(3), &z, &lam, &cfg).unwrap();
        let want: f64 = ro.iter().map(SingleQubitReadout::omega).product();
        assert!((v - want).abs() < 1e-12);
    }

    #[test]
    fn x_member_flips_the_parity_sign() {
        let lam = TransferMatrix::identity(1).unwrap();
        let set = TwirlSet::custom(vec!["X".parse().unwrap()]).unwrap();
        let cfg = EstimatorConfig::infinite(&set, 0);
        let z = ZMask::full(1);
        // Physical X maps |0> to |1> (parity -1); the virtual bit flip
        // maps the outcome back, so the member still reports +1.
        let v = noisy_expectation(&zero_state(1), &z, &lam, &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_twirl_recovers_ideal_expectation_under_classical_noise() {
        let spec = NoiseSpec::Tpn {
            a: vec![0.97, 0.985],
            b: vec![0.93, 0.95],
            ctmp: vec![crate::noise::CtmpPairSpec::new(1, [0.01, 0.008, 0.004, 0.006])],
        };
        let lam = spec.build().unwrap();
        let set = full_twirl_set(2, 3);
        let cfg = EstimatorConfig::infinite(&set, 0);
        let z: ZMask = "ZZ".parse().unwrap();
        for seed in 0..20 {
            let state = haar_state(2, seed).unwrap();
            let a = mitigated_estimate(&state, &z, &lam, &cfg).unwrap();
            assert!((a - state.z_expectation(&z)).abs() < 1e-10);
        }
    }

    #[test]
    fn noiseless_pipeline_is_exact() {
        let lam = TransferMatrix::identity(3).unwrap();
        let set = random_twirl_set(3, 5, 7).unwrap();
        let cfg = EstimatorConfig::infinite(&set, 0);
        let z: ZMask = "ZIZ".parse().unwrap();
        let state = haar_state(3, 2).unwrap();
        let a = mitigated_estimate(&state, &z, &lam, &cfg).unwrap();
        assert!((a - state.z_expectation(&z)).abs() < 1e-12);
    }

    #[test]
    fn balanced_set_with_transformation_circuit_is_exact_under_tpn() {
        // Exact cancellation must survive conjugating the members
        // through a multi-gate circuit; this pins the inverse-circuit
        // direction of the physical operator.
        let ro = readouts(4);
        let lam = build_tpn_lambda(&ro).unwrap();
        let source: ZMask = "ZZZZ".parse().unwrap();
        let (circuit, z_eff) = compile_to_weight(&source, 1).unwrap();
        let set = sbpt_set(&z_eff, 4, 4, 5).unwrap();
        let cfg = EstimatorConfig {
            twirl: &set,
            circuit: Some(&circuit),
            gnoise: None,
            shots: ShotBudget::Infinite,
            seed: 0,
        };
        for seed in 0..10 {
            let state = haar_state(4, seed).unwrap();
            let a = mitigated_estimate(&state, &z_eff, &lam, &cfg).unwrap();
            assert!(
                (a - state.z_expectation(&source)).abs() < 1e-10,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn estimate_is_invariant_under_member_permutation() {
        let ro = readouts(3);
        let lam = build_tpn_lambda(&ro).unwrap();
        let set = random_twirl_set(3, 16, 9).unwrap();
        let permuted = set.permuted(4);
        let z: ZMask = "ZZI".parse().unwrap();
        let state = haar_state(3, 8).unwrap();
        let a = mitigated_estimate(&state, &z, &lam, &EstimatorConfig::infinite(&set, 0)).unwrap();
        let b =
            mitigated_estimate(&state, &z, &lam, &EstimatorConfig::infinite(&permuted, 0)).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn shots_below_member_count_are_rejected() {
        let lam = TransferMatrix::identity(2).unwrap();
        let set = random_twirl_set(2, 8, 1).unwrap();
        let cfg = EstimatorConfig {
            twirl: &set,
            circuit: None,
            gnoise: None,
            shots: ShotBudget::Finite(4),
            seed: 0,
        };
        let z = ZMask::full(2);
        assert!(matches!(
            noisy_expectation(&zero_state(2), &z, &lam, &cfg),
            Err(Error::ShotsTooFew { .. })
        ));
    }

    #[test]
    fn finite_shots_converge_to_infinite_value() {
        let ro = readouts(2);
        let lam = build_tpn_lambda(&ro).unwrap();
        let set = sbpt_set(&ZMask::full(2), 2, 16, 3).unwrap();
        let z = ZMask::full(2);
        let state = haar_state(2, 5).unwrap();
        let exact =
            mitigated_estimate(&state, &z, &lam, &EstimatorConfig::infinite(&set, 0)).unwrap();
        let cfg = EstimatorConfig {
            twirl: &set,
            circuit: None,
            gnoise: None,
            shots: ShotBudget::Finite(2_000_000),
            seed: 11,
        };
        let sampled = mitigated_estimate(&state, &z, &lam, &cfg).unwrap();
        assert!((sampled - exact).abs() < 5e-3, "sampled {sampled} exact {exact}");
    }

    #[test]
    fn vanishing_calibration_is_reported() {
        // a = b = 0.5 makes omega = 0, so v(rho_0) for a weight-1
        // observable collapses to zero under any twirl.
        let lam = build_tpn_lambda(&[SingleQubitReadout::new(0.5, 0.5).unwrap()]).unwrap();
        let set = full_twirl_set(1, 0);
        let cfg = EstimatorConfig::infinite(&set, 0);
        let z = ZMask::full(1);
        let state = haar_state(1, 1).unwrap();
        assert!(matches!(
            mitigated_estimate(&state, &z, &lam, &cfg),
            Err(Error::VanishingCalibration(_))
        ));
    }

    #[test]
    fn tpn_baseline_examples() {
        let z: ZMask = "ZZ".parse().unwrap();
        let ideal = [SingleQubitReadout::ideal(); 2];
        let state = haar_state(2, 3).unwrap();
        let dist = OutcomeDistribution::new(2, state.diagonal()).unwrap();
        let (q, e) = tpn_baseline(&dist, &ideal, &z).unwrap();
        assert!((e - state.z_expectation(&z)).abs() < 1e-12);
        for (a, b) in q.iter().zip(state.diagonal()) {
            assert!((a - b).abs() < 1e-12);
        }

        let ro = readouts(2);
        let lam = build_tpn_lambda(&ro).unwrap();
        let noisy = measure_distribution(&state.diagonal(), &lam).unwrap();
        let (_, e) = tpn_baseline(&noisy, &ro, &z).unwrap();
        assert!((e - state.z_expectation(&z)).abs() < 1e-10);

        let singular = [SingleQubitReadout::new(0.6, 0.4).unwrap(); 2];
        assert!(tpn_baseline(&noisy, &singular, &z).is_err());
    }

    #[test]
    fn tpn_baseline_leaves_residual_under_correlated_noise() {
        let spec = NoiseSpec::Tpn {
            a: vec![0.98, 0.97, 0.99],
            b: vec![0.94, 0.95, 0.93],
            ctmp: vec![crate::noise::CtmpPairSpec::new(1, [0.02, 0.015, 0.01, 0.012])],
        };
        let lam = spec.build().unwrap();
        let z: ZMask = "ZZI".parse().unwrap();
        let mut worst = 0.0f64;
        for seed in 0..10 {
            let state = haar_state(3, seed).unwrap();
            let noisy = measure_distribution(&state.diagonal(), &lam).unwrap();
            let (_, e) = tpn_baseline(&noisy, &lam.marginal_readouts(), &z).unwrap();
            worst = worst.max((e - state.z_expectation(&z)).abs());
        }
        assert!(worst > 1e-6, "correlated part should not invert exactly");
    }

    #[test]
    fn bound_reports_behave() {
        let ptm = ReducedPTM::identity(3);
        let r: ZMask = "ZZI".parse().unwrap();
        let b = BoundInputs { ptm: &ptm, r, set_size: 64, delta: 0.05 };
        let rep = error_bound_random(&b).unwrap();
        assert_eq!(rep.bound, 0.0);
        assert!(rep.dominance);

        let want = (2.0 / 64.0 * (6.0 * 2f64.ln() + (2.0 / 0.05f64).ln())).sqrt();
        assert!((rep.kappa - want).abs() < 1e-15);

        let rep_sub = error_bound_subsystem(&b).unwrap();
        let want_sub = (2.0 / 64.0 * (2.0 * 2f64.ln() + (2.0 / 0.05f64).ln())).sqrt();
        assert!((rep_sub.kappa - want_sub).abs() < 1e-15);
        assert!(rep_sub.kappa < rep.kappa);

        // Six-qubit set of 64 at delta 0.05:
        // kappa = sqrt((2/64)(12 ln 2 + ln 40)).
        let ptm6 = ReducedPTM::identity(6);
        let b6 = BoundInputs {
            ptm: &ptm6,
            r: ZMask::new(6, 0b1).unwrap(),
            set_size: 64,
            delta: 0.05,
        };
        let rep6 = error_bound_random(&b6).unwrap();
        let want6 = (2.0 / 64.0 * (12.0 * 2f64.ln() + 40f64.ln())).sqrt();
        assert!((rep6.kappa - want6).abs() < 1e-15);

        assert!(matches!(
            error_bound_random(&BoundInputs { delta: 1.0, ..b }),
            Err(Error::InvalidDelta(_))
        ));
    }

    #[test]
    fn full_weight_subsystem_bound_is_zero_under_classical_noise() {
        let ro = readouts(3);
        let ptm = lambda_to_ptm(&build_tpn_lambda(&ro).unwrap());
        let b = BoundInputs { ptm: &ptm, r: ZMask::full(3), set_size: 64, delta: 0.05 };
        let rep = error_bound_subsystem(&b).unwrap();
        assert!(rep.off_diag_sum.abs() < 1e-12);
        assert_eq!(rep.bound, 0.0);
    }

    #[test]
    fn dominance_flag_reports_failure() {
        // A tiny diagonal with large off-diagonal mass.
        let mut ent = vec![0.0; 4];
        ent[0] = 1.0;
        ent[2] = 0.9; // row 1: [0.9, 0.05]
        ent[3] = 0.05;
        let ptm = ReducedPTM::from_entries(1, ent).unwrap();
        let b = BoundInputs {
            ptm: &ptm,
            r: ZMask::full(1),
            set_size: 4,
            delta: 0.05,
        };
        let rep = error_bound_random(&b).unwrap();
        assert!(!rep.dominance);
        let text = rep.to_string();
        assert!(text.contains("dominance = false"));
        assert!(text.contains("kappa = "));
    }
}
