//! Statevector and density-matrix kernels: state preparation, ideal and
//! noisy CX-circuit evolution, and measurement through a classical
//! transfer matrix.
//!
//! Gate noise follows each CX in time order: the coherent
//! exp(-i beta/2 XX) rotation on the gate's qubit pair, then two-qubit
//! depolarizing with rate p2 (trajectory mode inserts a uniformly random
//! non-identity pair Pauli with probability p2; density mode applies the
//! exact channel). Single-qubit layers take the analogous p1 treatment.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::noise::TransferMatrix;
use crate::pauli::{PauliString, ZMask};

/// Statevector caps at 2^14 amplitudes.
pub const STATE_CAP: usize = 14;
/// Exact-density evolution caps at 2^10.
pub const DENSITY_CAP: usize = 10;
/// Channel-matrix extraction caps at 4^5 x 4^5.
pub const CHANNEL_CAP: usize = 5;

const NORM_TOL: f64 = 1e-10;

/// Per-gate noise strengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateNoiseParams {
    /// Depolarizing rate per single-qubit gate.
    pub p1: f64,
    /// Depolarizing rate per two-qubit gate.
    pub p2: f64,
    /// Coherent XX rotation angle applied after each CX.
    pub beta: f64,
}

impl Default for GateNoiseParams {
    fn default() -> Self {
        Self { p1: 5e-4, p2: 5e-3, beta: 0.01 }
    }
}

impl GateNoiseParams {
    pub fn none() -> Self {
        Self { p1: 0.0, p2: 0.0, beta: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for p in [self.p1, self.p2] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidProbability(self.beta));
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.beta == 0.0
    }

    /// Whether any non-unitary component is present.
    pub fn has_incoherent(&self) -> bool {
        self.p1 > 0.0 || self.p2 > 0.0
    }
}

/// A normalized pure state on n qubits; qubit i is bit i-1 of the index.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amp: Vec<Complex64>,
}

impl PureState {
    pub fn new(n: usize, amp: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > STATE_CAP {
            return Err(Error::SizeCap { n, cap: STATE_CAP });
        }
        if amp.len() != 1 << n {
            return Err(Error::DimensionMismatch(amp.len(), 1 << n));
        }
        let state = Self { n, amp };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidProbability(norm));
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Computational-basis populations |amp|^2.
    pub fn diagonal(&self) -> Vec<f64> {
        self.amp.iter().map(|a| a.norm_sqr()).collect()
    }

    /// <Z_r> evaluated directly on the populations.
    pub fn z_expectation(&self, z: &ZMask) -> f64 {
        self.amp
            .iter()
            .enumerate()
            .map(|(o, a)| parity_sign(o, z.mask()) * a.norm_sqr())
            .sum()
    }

    pub fn density(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut ent = vec![Complex64::default(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                ent[i * dim + j] = self.amp[i] * self.amp[j].conj();
            }
        }
        DensityMatrix { n: self.n, dim, ent }
    }
}

#[inline]
pub(crate) fn parity_sign(outcome: usize, mask: usize) -> f64 {
    if (outcome & mask).count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// |0...0>.
pub fn zero_state(n: usize) -> PureState {
    let mut amp = vec![Complex64::default(); 1 << n];
    amp[0] = Complex64::new(1.0, 0.0);
    PureState { n, amp }
}

/// Basis state from a bit string; leftmost character is qubit 1.
pub fn basis_state(bits: &str) -> Result<PureState> {
    let n = bits.len();
    if n == 0 || n > STATE_CAP {
        return Err(Error::SizeCap { n, cap: STATE_CAP });
    }
    let mut index = 0usize;
    for (i, c) in bits.chars().enumerate() {
        match c {
            '0' => {}
            '1' => index |= 1 << i,
            other => return Err(Error::Parse(format!("invalid bit '{other}'"))),
        }
    }
    Ok(basis_state_index(n, index))
}

/// Basis state |index> with qubit i at bit i-1.
pub fn basis_state_index(n: usize, index: usize) -> PureState {
    let mut amp = vec![Complex64::default(); 1 << n];
    amp[index] = Complex64::new(1.0, 0.0);
    PureState { n, amp }
}

/// Haar-random pure state: a normalized complex-Gaussian vector.
pub fn haar_state(n: usize, seed: u64) -> Result<PureState> {
    if n == 0 || n > STATE_CAP {
        return Err(Error::SizeCap { n, cap: STATE_CAP });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = rand_distr::StandardNormal;
    let mut amp: Vec<Complex64> = (0..1usize << n)
        .map(|_| {
            let re: f64 = normal.sample(&mut rng);
            let im: f64 = normal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amp.iter_mut() {
        *a /= norm;
    }
    Ok(PureState { n, amp })
}

/// Exact unitary action of a signed Pauli string, phases included.
pub fn apply_pauli(state: &PureState, p: &PauliString) -> Result<PureState> {
    if p.n() != state.n {
        return Err(Error::LengthMismatch(p.n(), state.n));
    }
    let dim = state.dim();
    let flip = p.x_mask();
    let phase_mask = p.z_mask();
    let y_count = (p.x_mask() & p.z_mask()).count_ones();
    let y_phase = Complex64::i().powu(y_count);
    let sign = Complex64::new(p.sign() as f64, 0.0);
    let mut amp = vec![Complex64::default(); dim];
    for o in 0..dim {
        let ph = y_phase * sign * parity_sign(o, phase_mask);
        amp[o ^ flip] = ph * state.amp[o];
    }
    Ok(PureState { n: state.n, amp })
}

fn cx_state(amp: &mut [Complex64], control: usize, target: usize) {
    let cbit = 1usize << (control - 1);
    let tbit = 1usize << (target - 1);
    for o in 0..amp.len() {
        if o & cbit != 0 && o & tbit == 0 {
            amp.swap(o, o | tbit);
        }
    }
}

fn xx_state(amp: &mut [Complex64], qa: usize, qb: usize, theta: f64) {
    let pm = (1usize << (qa - 1)) | (1usize << (qb - 1));
    let top = 1usize << (qa.max(qb) - 1);
    let (c, s) = (theta.cos(), theta.sin());
    let ms = Complex64::new(0.0, -s);
    for o in 0..amp.len() {
        if o & top == 0 {
            let u = amp[o];
            let v = amp[o ^ pm];
            amp[o] = c * u + ms * v;
            amp[o ^ pm] = ms * u + c * v;
        }
    }
}

fn apply_pair_pauli_state(amp: &mut [Complex64], n: usize, qa: usize, qb: usize, code: u8) {
    let mut digits = vec![0u8; n];
    digits[qa - 1] = code & 3;
    digits[qb - 1] = code >> 2;
    let p = PauliString::from_digits(digits).expect("digits in range");
    let tmp = PureState { n, amp: amp.to_vec() };
    let out = apply_pauli(&tmp, &p).expect("lengths match");
    amp.copy_from_slice(&out.amp);
}

/// One noisy trajectory of a CX circuit: deterministic CX and coherent
/// XX parts, with probability-p2 Pauli insertions drawn from `rng`.
pub fn evolve_trajectory(
    state: &PureState,
    circuit: &Circuit,
    gnoise: &GateNoiseParams,
    rng: &mut ChaCha8Rng,
) -> Result<PureState> {
    if circuit.n() != state.n {
        return Err(Error::LengthMismatch(circuit.n(), state.n));
    }
    gnoise.validate()?;
    let mut amp = state.amp.clone();
    for g in circuit.gates() {
        cx_state(&mut amp, g.control, g.target);
        if gnoise.beta != 0.0 {
            xx_state(&mut amp, g.control, g.target, gnoise.beta / 2.0);
        }
        if gnoise.p2 > 0.0 && rng.gen::<f64>() < gnoise.p2 {
            let code = rng.gen_range(1..16u8);
            apply_pair_pauli_state(&mut amp, state.n, g.control, g.target, code);
        }
    }
    Ok(PureState { n: state.n, amp })
}

/// The ideal circuit plus coherent XX parts, with no stochastic noise.
pub fn evolve_coherent(
    state: &PureState,
    circuit: &Circuit,
    gnoise: &GateNoiseParams,
) -> Result<PureState> {
    if circuit.n() != state.n {
        return Err(Error::LengthMismatch(circuit.n(), state.n));
    }
    let mut amp = state.amp.clone();
    for g in circuit.gates() {
        cx_state(&mut amp, g.control, g.target);
        if gnoise.beta != 0.0 {
            xx_state(&mut amp, g.control, g.target, gnoise.beta / 2.0);
        }
    }
    Ok(PureState { n: state.n, amp })
}

/// A density operator (or any square operator fed through the same
/// channel machinery).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    dim: usize,
    ent: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.ent
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.ent[i * self.dim + i].re).collect()
    }

    pub fn z_expectation(&self, z: &ZMask) -> f64 {
        (0..self.dim)
            .map(|o| parity_sign(o, z.mask()) * self.ent[o * self.dim + o].re)
            .sum()
    }
}

fn cx_rho(ent: &mut [Complex64], dim: usize, control: usize, target: usize) {
    let cbit = 1usize << (control - 1);
    let tbit = 1usize << (target - 1);
    let perm = |o: usize| if o & cbit != 0 { o ^ tbit } else { o };
    // Row permutation then column permutation; each is an involution.
    for a in 0..dim {
        let pa = perm(a);
        if pa > a {
            for b in 0..dim {
                ent.swap(a * dim + b, pa * dim + b);
            }
        }
    }
    for b in 0..dim {
        let pb = perm(b);
        if pb > b {
            for a in 0..dim {
                ent.swap(a * dim + b, a * dim + pb);
            }
        }
    }
}

fn xx_rho(ent: &mut [Complex64], dim: usize, qa: usize, qb: usize, theta: f64) {
    let pm = (1usize << (qa - 1)) | (1usize << (qb - 1));
    let top = 1usize << (qa.max(qb) - 1);
    let (c, s) = (theta.cos(), theta.sin());
    let ms = Complex64::new(0.0, -s);
    let ps = Complex64::new(0.0, s);
    for a in 0..dim {
        if a & top == 0 {
            for b in 0..dim {
                let u = ent[a * dim + b];
                let v = ent[(a ^ pm) * dim + b];
                ent[a * dim + b] = c * u + ms * v;
                ent[(a ^ pm) * dim + b] = ms * u + c * v;
            }
        }
    }
    for b in 0..dim {
        if b & top == 0 {
            for a in 0..dim {
                let u = ent[a * dim + b];
                let v = ent[a * dim + (b ^ pm)];
                ent[a * dim + b] = c * u + ps * v;
                ent[a * dim + (b ^ pm)] = ps * u + c * v;
            }
        }
    }
}

/// Exact two-qubit depolarizing with rate p on the adjacent pair
/// (q, q+1): rho -> (1-g) rho + g (Tr_pair rho) (x) I/4 with g = 16p/15.
fn depol2_rho(ent: &mut [Complex64], dim: usize, q: usize, p: f64) {
    let g = 16.0 * p / 15.0;
    let lo = 1usize << (q - 1);
    let hi = 1usize << q;
    let configs = [0usize, lo, hi, lo | hi];
    let rest_dim = dim / 4;
    let expand = |r: usize| (r & (lo - 1)) | ((r >> (q - 1)) << (q + 1));
    let keep = Complex64::new(1.0 - g, 0.0);
    let mix = Complex64::new(g / 4.0, 0.0);
    for ar in 0..rest_dim {
        let ea = expand(ar);
        for br in 0..rest_dim {
            let eb = expand(br);
            let mut tr = Complex64::default();
            for &c in &configs {
                tr += ent[(ea | c) * dim + (eb | c)];
            }
            for &ca in &configs {
                for &cb in &configs {
                    let idx = (ea | ca) * dim + (eb | cb);
                    ent[idx] *= keep;
                    if ca == cb {
                        ent[idx] += mix * tr;
                    }
                }
            }
        }
    }
}

/// Exact single-qubit depolarizing with rate p on `q`:
/// rho -> (1-g) rho + g (Tr_q rho) (x) I/2 with g = 4p/3.
fn depol1_rho(ent: &mut [Complex64], dim: usize, q: usize, p: f64) {
    let g = 4.0 * p / 3.0;
    let bit = 1usize << (q - 1);
    let rest_dim = dim / 2;
    let expand = |r: usize| (r & (bit - 1)) | ((r >> (q - 1)) << q);
    let keep = Complex64::new(1.0 - g, 0.0);
    let mix = Complex64::new(g / 2.0, 0.0);
    for ar in 0..rest_dim {
        let ea = expand(ar);
        for br in 0..rest_dim {
            let eb = expand(br);
            let tr = ent[ea * dim + eb] + ent[(ea | bit) * dim + (eb | bit)];
            for ca in [0, bit] {
                for cb in [0, bit] {
                    let idx = (ea | ca) * dim + (eb | cb);
                    ent[idx] *= keep;
                    if ca == cb {
                        ent[idx] += mix * tr;
                    }
                }
            }
        }
    }
}

/// Exact noisy-channel evolution of a density operator.
pub fn evolve_density(
    rho: &DensityMatrix,
    circuit: &Circuit,
    gnoise: &GateNoiseParams,
) -> Result<DensityMatrix> {
    if circuit.n() != rho.n {
        return Err(Error::LengthMismatch(circuit.n(), rho.n));
    }
    if rho.n > DENSITY_CAP {
        return Err(Error::SizeCap { n: rho.n, cap: DENSITY_CAP });
    }
    gnoise.validate()?;
    let mut ent = rho.ent.clone();
    for g in circuit.gates() {
        cx_rho(&mut ent, rho.dim, g.control, g.target);
        if gnoise.beta != 0.0 {
            xx_rho(&mut ent, rho.dim, g.control, g.target, gnoise.beta / 2.0);
        }
        if gnoise.p2 > 0.0 {
            depol2_rho(&mut ent, rho.dim, g.control.min(g.target), gnoise.p2);
        }
    }
    Ok(DensityMatrix { n: rho.n, dim: rho.dim, ent })
}

/// Evolution mode selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvolveMode {
    Trajectory { seed: u64 },
    ExactDensity,
}

/// Trajectory or exact-density evolution of a pure input state.
pub enum Evolved {
    Pure(PureState),
    Density(DensityMatrix),
}

pub fn evolve_noisy(
    state: &PureState,
    circuit: &Circuit,
    gnoise: &GateNoiseParams,
    mode: EvolveMode,
) -> Result<Evolved> {
    match mode {
        EvolveMode::Trajectory { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Evolved::Pure(evolve_trajectory(state, circuit, gnoise, &mut rng)?))
        }
        EvolveMode::ExactDensity => {
            Ok(Evolved::Density(evolve_density(&state.density(), circuit, gnoise)?))
        }
    }
}

/// Single-qubit basis-change labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation1q {
    /// No gate.
    Id,
    /// Hadamard; maps X to Z.
    H,
    /// S-dagger then Hadamard; maps Y to Z.
    HSdg,
}

fn apply_1q(amp: &mut [Complex64], q: usize, m: [[Complex64; 2]; 2]) {
    let bit = 1usize << (q - 1);
    for o in 0..amp.len() {
        if o & bit == 0 {
            let u = amp[o];
            let v = amp[o | bit];
            amp[o] = m[0][0] * u + m[0][1] * v;
            amp[o | bit] = m[1][0] * u + m[1][1] * v;
        }
    }
}

fn rotation_matrix(r: Rotation1q) -> Option<[[Complex64; 2]; 2]> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match r {
        Rotation1q::Id => None,
        Rotation1q::H => Some([
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ]),
        // H * S-dagger as a single matrix.
        Rotation1q::HSdg => Some([
            [Complex64::new(h, 0.0), Complex64::new(0.0, -h)],
            [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
        ]),
    }
}

/// Applies a noiseless layer of basis rotations (qubit 1 first).
pub fn apply_rotation_layer(state: &PureState, layer: &[Rotation1q]) -> Result<PureState> {
    if layer.len() != state.n {
        return Err(Error::LengthMismatch(layer.len(), state.n));
    }
    let mut amp = state.amp.clone();
    for (i, &r) in layer.iter().enumerate() {
        if let Some(m) = rotation_matrix(r) {
            apply_1q(&mut amp, i + 1, m);
        }
    }
    Ok(PureState { n: state.n, amp })
}

/// Trajectory form of a noisy rotation layer: each non-identity gate is
/// followed by single-qubit depolarizing at rate p1.
pub fn apply_rotation_layer_trajectory(
    state: &PureState,
    layer: &[Rotation1q],
    gnoise: &GateNoiseParams,
    rng: &mut ChaCha8Rng,
) -> Result<PureState> {
    if layer.len() != state.n {
        return Err(Error::LengthMismatch(layer.len(), state.n));
    }
    let mut amp = state.amp.clone();
    for (i, &r) in layer.iter().enumerate() {
        if let Some(m) = rotation_matrix(r) {
            apply_1q(&mut amp, i + 1, m);
            if gnoise.p1 > 0.0 && rng.gen::<f64>() < gnoise.p1 {
                let code = rng.gen_range(1..4u8);
                let mut digits = vec![0u8; state.n];
                digits[i] = code;
                let p = PauliString::from_digits(digits).expect("digits in range");
                let tmp = PureState { n: state.n, amp };
                amp = apply_pauli(&tmp, &p)?.amp;
            }
        }
    }
    Ok(PureState { n: state.n, amp })
}

/// Exact-density form of a noisy rotation layer.
pub fn apply_rotation_layer_density(
    rho: &DensityMatrix,
    layer: &[Rotation1q],
    gnoise: &GateNoiseParams,
) -> Result<DensityMatrix> {
    if layer.len() != rho.n {
        return Err(Error::LengthMismatch(layer.len(), rho.n));
    }
    let mut ent = rho.ent.clone();
    for (i, &r) in layer.iter().enumerate() {
        if let Some(m) = rotation_matrix(r) {
            // Left-multiply rows, then right-multiply columns by m-dagger.
            let bit = 1usize << i;
            for a in 0..rho.dim {
                if a & bit == 0 {
                    for b in 0..rho.dim {
                        let u = ent[a * rho.dim + b];
                        let v = ent[(a | bit) * rho.dim + b];
                        ent[a * rho.dim + b] = m[0][0] * u + m[0][1] * v;
                        ent[(a | bit) * rho.dim + b] = m[1][0] * u + m[1][1] * v;
                    }
                }
            }
            for b in 0..rho.dim {
                if b & bit == 0 {
                    for a in 0..rho.dim {
                        let u = ent[a * rho.dim + b];
                        let v = ent[a * rho.dim + (b | bit)];
                        ent[a * rho.dim + b] = u * m[0][0].conj() + v * m[0][1].conj();
                        ent[a * rho.dim + (b | bit)] = u * m[1][0].conj() + v * m[1][1].conj();
                    }
                }
            }
            if gnoise.p1 > 0.0 {
                depol1_rho(&mut ent, rho.dim, i + 1, gnoise.p1);
            }
        }
    }
    Ok(DensityMatrix { n: rho.n, dim: rho.dim, ent })
}

/// Measurement-outcome distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1 << n {
            return Err(Error::DimensionMismatch(probs.len(), 1 << n));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL || probs.iter().any(|&p| p < -NORM_TOL) {
            return Err(Error::InvalidProbability(sum));
        }
        Ok(Self { n, probs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Empirical distribution from a counts map.
    pub fn from_counts(n: usize, counts: &BTreeMap<usize, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::InvalidConfig("empty counts".into()));
        }
        let mut probs = vec![0.0; 1 << n];
        for (&o, &c) in counts {
            if o >= probs.len() {
                return Err(Error::QubitOutOfRange { index: o, n });
            }
            probs[o] = c as f64 / total as f64;
        }
        Self::new(n, probs)
    }

    /// Parity expectation of Z_r under this distribution.
    pub fn z_expectation(&self, z: &ZMask) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(o, &p)| parity_sign(o, z.mask()) * p)
            .sum()
    }
}

/// probs = Lambda * diag; `diag` is a computational-basis population
/// vector from either a pure state or a density matrix.
pub fn measure_distribution(diag: &[f64], lam: &TransferMatrix) -> Result<OutcomeDistribution> {
    let probs = lam.apply(diag)?;
    OutcomeDistribution::new(lam.n(), probs)
}

/// Multinomial counts, deterministic under the seed; absent outcomes are
/// omitted from the map.
pub fn sample_counts(dist: &OutcomeDistribution, shots: u64, seed: u64) -> BTreeMap<usize, u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_counts_rng(dist.probs(), shots, &mut rng)
}

pub(crate) fn sample_counts_rng(
    probs: &[f64],
    shots: u64,
    rng: &mut ChaCha8Rng,
) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::new();
    let mut remaining = shots;
    let mut rem_prob = 1.0f64;
    for (o, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let p = p.max(0.0);
        let k = if o + 1 == probs.len() || rem_prob <= p {
            remaining
        } else {
            let frac = (p / rem_prob).clamp(0.0, 1.0);
            Binomial::new(remaining, frac).expect("valid binomial").sample(rng)
        };
        if k > 0 {
            counts.insert(o, k);
        }
        remaining -= k;
        rem_prob = (rem_prob - p).max(0.0);
    }
    counts
}

/// Writes counts as `bitstring,count` lines; leftmost bit is qubit 1.
pub fn write_counts_csv(
    counts: &BTreeMap<usize, u64>,
    n: usize,
    out: &mut impl Write,
) -> Result<()> {
    writeln!(out, "outcome,count")?;
    for (&o, &c) in counts {
        let bits: String = (0..n)
            .map(|i| if o >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        writeln!(out, "{bits},{c}")?;
    }
    Ok(())
}

/// Pauli transfer matrix of the channel defined by `apply`, computed by
/// feeding every Pauli basis operator through it.
fn channel_ptm(n: usize, apply: impl Fn(&mut [Complex64])) -> Vec<f64> {
    let dim = 1usize << n;
    let pdim = dim * dim;
    let mut ptm = vec![0.0; pdim * pdim];
    for q in 0..pdim {
        let pq = PauliString::from_index(n, q);
        let mut m = pauli_matrix(&pq, dim);
        apply(&mut m);
        for p in 0..pdim {
            let pp = PauliString::from_index(n, p);
            ptm[p * pdim + q] = (trace_with_pauli(&m, dim, &pp) / dim as f64).re;
        }
    }
    ptm
}

fn pauli_matrix(p: &PauliString, dim: usize) -> Vec<Complex64> {
    let flip = p.x_mask();
    let phase_mask = p.z_mask();
    let y_phase = Complex64::i().powu((p.x_mask() & p.z_mask()).count_ones());
    let mut m = vec![Complex64::default(); dim * dim];
    for b in 0..dim {
        m[(b ^ flip) * dim + b] = y_phase * parity_sign(b, phase_mask);
    }
    m
}

fn trace_with_pauli(m: &[Complex64], dim: usize, p: &PauliString) -> Complex64 {
    let flip = p.x_mask();
    let phase_mask = p.z_mask();
    let y_phase = Complex64::i().powu((p.x_mask() & p.z_mask()).count_ones());
    let mut tr = Complex64::default();
    for b in 0..dim {
        tr += y_phase * parity_sign(b, phase_mask) * m[b * dim + (b ^ flip)];
    }
    tr
}

fn ptm_mul(a: &[f64], b: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik != 0.0 {
                for j in 0..dim {
                    out[i * dim + j] += aik * b[k * dim + j];
                }
            }
        }
    }
    out
}

/// The effective gate-error channel C of a noisy circuit, defined by
/// noisy = C * U in the PTM picture with U the ideal circuit unitary.
/// Returned as a 4^n x 4^n row-major real matrix.
pub fn effective_gate_channel(circuit: &Circuit, gnoise: &GateNoiseParams) -> Result<Vec<f64>> {
    let n = circuit.n();
    if n > CHANNEL_CAP {
        return Err(Error::SizeCap { n, cap: CHANNEL_CAP });
    }
    gnoise.validate()?;
    let dim = 1usize << n;
    let noisy = channel_ptm(n, |m| {
        for g in circuit.gates() {
            cx_rho(m, dim, g.control, g.target);
            if gnoise.beta != 0.0 {
                xx_rho(m, dim, g.control, g.target, gnoise.beta / 2.0);
            }
            if gnoise.p2 > 0.0 {
                depol2_rho(m, dim, g.control.min(g.target), gnoise.p2);
            }
        }
    });
    let ideal = channel_ptm(n, |m| {
        for g in circuit.gates() {
            cx_rho(m, dim, g.control, g.target);
        }
    });
    // PTMs of unitary channels are orthogonal, so U^-1 = U^T.
    let pdim = dim * dim;
    let mut ideal_t = vec![0.0; pdim * pdim];
    for i in 0..pdim {
        for j in 0..pdim {
            ideal_t[j * pdim + i] = ideal[i * pdim + j];
        }
    }
    Ok(ptm_mul(&noisy, &ideal_t, pdim))
}

/// PTM of the single-gate noise channel (coherent XX then depolarizing)
/// on a gate's qubit pair; used to verify the propagation identity.
pub fn gate_noise_ptm(n: usize, gate: crate::pauli::CxGate, gnoise: &GateNoiseParams) -> Vec<f64> {
    let dim = 1usize << n;
    channel_ptm(n, |m| {
        if gnoise.beta != 0.0 {
            xx_rho(m, dim, gate.control, gate.target, gnoise.beta / 2.0);
        }
        if gnoise.p2 > 0.0 {
            depol2_rho(m, dim, gate.control.min(gate.target), gnoise.p2);
        }
    })
}

/// PTM of a single ideal CX gate.
pub fn cx_ptm(n: usize, gate: crate::pauli::CxGate) -> Vec<f64> {
    let dim = 1usize << n;
    channel_ptm(n, |m| cx_rho(m, dim, gate.control, gate.target))
}

/// Multiplies two 4^n x 4^n PTMs.
pub fn ptm_compose(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    ptm_mul(a, b, 1usize << (2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::CxGate;

    fn cx(c: usize, t: usize) -> CxGate {
        CxGate::new(c, t).unwrap()
    }

    #[test]
    fn zero_and_basis_states() {
        let z = zero_state(3);
        assert_eq!(z.amplitudes()[0], Complex64::new(1.0, 0.0));
        assert_eq!(z.z_expectation(&"ZZZ".parse().unwrap()), 1.0);
        let b = basis_state("101").unwrap();
        assert_eq!(b.amplitudes()[0b101].re, 1.0);
        for r in 0..8 {
            let z = ZMask::new(3, r).unwrap();
            assert_eq!(zero_state(3).z_expectation(&z), 1.0);
        }
    }

    #[test]
    fn haar_state_is_normalized_and_deterministic() {
        let a = haar_state(4, 5).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-10);
        assert_eq!(a, haar_state(4, 5).unwrap());
        assert!(haar_state(STATE_CAP + 1, 0).is_err());
    }

    #[test]
    fn haar_marginals_are_uniform_on_average() {
        let n = 3;
        let mut mean = vec![0.0; 1 << n];
        let reps = 1000;
        for seed in 0..reps {
            let s = haar_state(n, seed).unwrap();
            for (m, a) in mean.iter_mut().zip(s.amplitudes()) {
                *m += a.norm_sqr();
            }
        }
        for m in mean {
            assert!((m / reps as f64 - 0.125).abs() < 0.011);
        }
    }

    #[test]
    fn pauli_application_examples() {
        let x: PauliString = "X".parse().unwrap();
        let out = apply_pauli(&zero_state(1), &x).unwrap();
        assert_eq!(out.amplitudes()[1].re, 1.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PureState::new(1, vec![Complex64::new(h, 0.0); 2]).unwrap();
        let z: PauliString = "Z".parse().unwrap();
        let minus = apply_pauli(&plus, &z).unwrap();
        assert!((minus.amplitudes()[0].re - h).abs() < 1e-12);
        assert!((minus.amplitudes()[1].re + h).abs() < 1e-12);

        let y: PauliString = "YX".parse().unwrap();
        let s = haar_state(2, 9).unwrap();
        let twice = apply_pauli(&apply_pauli(&s, &y).unwrap(), &y).unwrap();
        for (a, b) in twice.diagonal().iter().zip(s.diagonal()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((apply_pauli(&s, &y).unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn noiseless_trajectory_equals_ideal_evolution() {
        let circ = Circuit::new(3, vec![cx(3, 2), cx(2, 1)]).unwrap();
        let s = haar_state(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = evolve_trajectory(&s, &circ, &GateNoiseParams::none(), &mut rng).unwrap();
        let ideal = evolve_coherent(&s, &circ, &GateNoiseParams::none()).unwrap();
        assert_eq!(out, ideal);
        assert!((out.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn coherent_error_excites_both_bits() {
        let beta = 0.01;
        let g = GateNoiseParams { p1: 0.0, p2: 0.0, beta };
        let circ = Circuit::new(2, vec![cx(1, 2)]).unwrap();
        let out = evolve_coherent(&zero_state(2), &circ, &g).unwrap();
        let p11 = out.diagonal()[0b11];
        assert!((p11 - (beta / 2.0).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn density_and_pure_evolution_agree_without_incoherent_noise() {
        let g = GateNoiseParams { p1: 0.0, p2: 0.0, beta: 0.07 };
        let circ = Circuit::new(3, vec![cx(1, 2), cx(2, 3), cx(3, 2)]).unwrap();
        let s = haar_state(3, 17).unwrap();
        let pure = evolve_coherent(&s, &circ, &g).unwrap();
        let rho = evolve_density(&s.density(), &circ, &g).unwrap();
        for (a, b) in pure.diagonal().iter().zip(rho.diagonal()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn measurement_distribution_examples() {
        let lam = TransferMatrix::identity(2).unwrap();
        let d = measure_distribution(&zero_state(2).diagonal(), &lam).unwrap();
        assert_eq!(d.probs()[0], 1.0);

        let lam = crate::noise::build_tpn_lambda(&[
            crate::noise::SingleQubitReadout::new(0.99, 0.97).unwrap(),
        ])
        .unwrap();
        let one = basis_state("1").unwrap();
        let d = measure_distribution(&one.diagonal(), &lam).unwrap();
        assert!((d.probs()[0] - 0.03).abs() < 1e-12);
        assert!((d.probs()[1] - 0.97).abs() < 1e-12);

        let h = 0.5f64.sqrt();
        let sup = PureState::new(1, vec![Complex64::new(h, 0.0); 2]).unwrap();
        let d = measure_distribution(&sup.diagonal(), &lam).unwrap();
        assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn counts_sampling_behaviour() {
        let dist = OutcomeDistribution::new(1, vec![1.0, 0.0]).unwrap();
        assert!(sample_counts(&dist, 0, 1).is_empty());
        let c = sample_counts(&dist, 100, 1);
        assert_eq!(c.get(&0), Some(&100));

        let dist = OutcomeDistribution::new(2, vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        let shots = 1_000_000u64;
        let counts = sample_counts(&dist, shots, 7);
        assert_eq!(counts.values().sum::<u64>(), shots);
        let mut chi2 = 0.0;
        for (o, &p) in dist.probs().iter().enumerate() {
            let expect = p * shots as f64;
            let got = *counts.get(&o).unwrap_or(&0) as f64;
            chi2 += (got - expect).powi(2) / expect;
        }
        // 99.9% quantile of chi-squared with 3 degrees of freedom.
        assert!(chi2 < 16.266, "chi2 = {chi2}");
    }

    #[test]
    fn counts_csv_uses_qubit_one_first_bitstrings() {
        let mut counts = BTreeMap::new();
        counts.insert(0b001usize, 3u64);
        let mut buf = Vec::new();
        write_counts_csv(&counts, 3, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "outcome,count\n100,3\n");
    }

    #[test]
    fn effective_channel_edge_cases() {
        // Noiseless circuit: the effective channel is the identity.
        let circ = Circuit::new(2, vec![cx(1, 2), cx(2, 1)]).unwrap();
        let channel = effective_gate_channel(&circ, &GateNoiseParams::none()).unwrap();
        for p in 0..16 {
            for q in 0..16 {
                let want = if p == q { 1.0 } else { 0.0 };
                assert!((channel[p * 16 + q] - want).abs() < 1e-12);
            }
        }

        // One gate: the effective channel equals that gate's noise
        // channel, conjugated by nothing.
        let g = GateNoiseParams { p1: 0.0, p2: 0.03, beta: 0.04 };
        let one = Circuit::new(2, vec![cx(1, 2)]).unwrap();
        let channel = effective_gate_channel(&one, &g).unwrap();
        let noise = gate_noise_ptm(2, cx(1, 2), &g);
        for (a, b) in channel.iter().zip(&noise) {
            assert!((a - b).abs() < 1e-12);
        }

        assert!(effective_gate_channel(&Circuit::empty(CHANNEL_CAP + 1), &g).is_err());
    }

    #[test]
    fn rotation_layers_map_x_and_y_to_z() {
        // <X> on |+> becomes <Z> after H.
        let h = 0.5f64.sqrt();
        let plus = PureState::new(1, vec![Complex64::new(h, 0.0); 2]).unwrap();
        let rot = apply_rotation_layer(&plus, &[Rotation1q::H]).unwrap();
        assert!((rot.z_expectation(&"Z".parse().unwrap()) - 1.0).abs() < 1e-12);

        // <Y> on the +i eigenstate becomes <Z> after H S-dagger.
        let plus_i =
            PureState::new(1, vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)]).unwrap();
        let rot = apply_rotation_layer(&plus_i, &[Rotation1q::HSdg]).unwrap();
        assert!((rot.z_expectation(&"Z".parse().unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_layer_trajectories_match_density_with_p1() {
        let g = GateNoiseParams { p1: 0.05, p2: 0.0, beta: 0.0 };
        let layer = [Rotation1q::H, Rotation1q::HSdg];
        let s = haar_state(2, 4).unwrap();
        let rho = apply_rotation_layer_density(&s.density(), &layer, &g).unwrap();
        let z: ZMask = "ZZ".parse().unwrap();
        let exact = rho.z_expectation(&z);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let reps = 200_000;
        let mut mean = 0.0;
        for _ in 0..reps {
            let t = apply_rotation_layer_trajectory(&s, &layer, &g, &mut rng).unwrap();
            mean += t.z_expectation(&z);
        }
        mean /= reps as f64;
        assert!((mean - exact).abs() < 3.0 / (reps as f64).sqrt() + 1e-3);
    }
}
