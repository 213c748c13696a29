//! Classical measurement-noise models and their reduced Pauli transfer
//! matrices.
//!
//! A noise instance is a column-stochastic transfer matrix Lambda with
//! `Lambda[k][j] = P(observe k | ideal j)`; outcome indices place qubit
//! i at bit i-1. The reduced PTM `R_Z` is its Walsh-conjugated form on
//! the {I,Z}^n operator subset: entry (r, s) pairs r with the observed
//! index and s with the ideal index, which puts the single-qubit matrix
//! in the form [[1, 0], [zeta, omega]] with omega = a + b - 1 on the
//! diagonal and zeta = a - b as the I -> Z leakage.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::ZMask;

/// Dense transfer matrices are capped at 4096 x 4096 reals.
pub const DENSE_CAP: usize = 12;

const COLUMN_TOL: f64 = 1e-12;

/// Per-qubit assignment fidelities: a = P(0|0), b = P(1|1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleQubitReadout {
    pub a: f64,
    pub b: f64,
}

impl SingleQubitReadout {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for p in [a, b] {
            if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidProbability(p));
            }
        }
        Ok(Self { a, b })
    }

    pub fn ideal() -> Self {
        Self { a: 1.0, b: 1.0 }
    }

    /// Z-damping factor omega = a + b - 1.
    pub fn omega(&self) -> f64 {
        self.a + self.b - 1.0
    }

    /// I -> Z leakage factor zeta = a - b.
    pub fn zeta(&self) -> f64 {
        self.a - self.b
    }

    /// Symmetric assignment error ((1-a) + (1-b)) / 2.
    pub fn error_rate(&self) -> f64 {
        ((1.0 - self.a) + (1.0 - self.b)) / 2.0
    }
}

/// Column-stochastic readout transfer matrix on n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    n: usize,
    dim: usize,
    ent: Vec<f64>,
}

impl TransferMatrix {
    /// Validates shape, non-negativity, and column normalization.
    pub fn new(n: usize, ent: Vec<f64>) -> Result<Self> {
        if n == 0 || n > DENSE_CAP {
            return Err(Error::SizeCap { n, cap: DENSE_CAP });
        }
        let dim = 1usize << n;
        if ent.len() != dim * dim {
            return Err(Error::DimensionMismatch(ent.len(), dim * dim));
        }
        for j in 0..dim {
            let mut sum = 0.0;
            for k in 0..dim {
                let v = ent[k * dim + j];
                if v < -COLUMN_TOL {
                    return Err(Error::InvalidProbability(v));
                }
                sum += v;
            }
            if (sum - 1.0).abs() > COLUMN_TOL {
                return Err(Error::InvalidProbability(sum));
            }
        }
        Ok(Self { n, dim, ent })
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 || n > DENSE_CAP {
            return Err(Error::SizeCap { n, cap: DENSE_CAP });
        }
        let dim = 1usize << n;
        let mut ent = vec![0.0; dim * dim];
        for k in 0..dim {
            ent[k * dim + k] = 1.0;
        }
        Ok(Self { n, dim, ent })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// P(observe k | ideal j).
    pub fn entry(&self, k: usize, j: usize) -> f64 {
        self.ent[k * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.ent
    }

    /// Lambda * v for a probability (or diagonal) vector.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(v.len(), self.dim));
        }
        let mut out = vec![0.0; self.dim];
        for (k, row) in self.ent.chunks_exact(self.dim).enumerate() {
            out[k] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        Ok(out)
    }

    /// Lambda^T * v; used to pull parity vectors back through the noise.
    pub fn apply_transpose(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(v.len(), self.dim));
        }
        let mut out = vec![0.0; self.dim];
        for (k, row) in self.ent.chunks_exact(self.dim).enumerate() {
            let vk = v[k];
            if vk != 0.0 {
                for (o, r) in out.iter_mut().zip(row) {
                    *o += r * vk;
                }
            }
        }
        Ok(out)
    }

    /// Per-qubit (a, b) read from the all-zeros and one-hot ideal columns.
    pub fn marginal_readouts(&self) -> Vec<SingleQubitReadout> {
        (1..=self.n)
            .map(|q| {
                let bit = 1usize << (q - 1);
                let mut a = 0.0;
                let mut b = 0.0;
                for k in 0..self.dim {
                    if k & bit == 0 {
                        a += self.entry(k, 0);
                    } else {
                        b += self.entry(k, bit);
                    }
                }
                SingleQubitReadout { a, b }
            })
            .collect()
    }
}

/// Tensor product of per-qubit 2x2 column-stochastic factors.
pub fn build_tpn_lambda(readouts: &[SingleQubitReadout]) -> Result<TransferMatrix> {
    let n = readouts.len();
    if n == 0 || n > DENSE_CAP {
        return Err(Error::SizeCap { n, cap: DENSE_CAP });
    }
    for r in readouts {
        SingleQubitReadout::new(r.a, r.b)?;
    }
    let mut ent = vec![1.0f64];
    let mut dim = 1usize;
    for r in readouts {
        // Local factor [[a, 1-b], [1-a, b]]; the new qubit becomes the
        // next-higher bit of both indices.
        let local = [[r.a, 1.0 - r.b], [1.0 - r.a, r.b]];
        let ndim = dim * 2;
        let mut next = vec![0.0; ndim * ndim];
        for (kb, local_row) in local.iter().enumerate() {
            for (jb, &f) in local_row.iter().enumerate() {
                if f == 0.0 {
                    continue;
                }
                for k in 0..dim {
                    let row = ((kb << n_bits(dim)) | k) * ndim;
                    for j in 0..dim {
                        next[row + ((jb << n_bits(dim)) | j)] = f * ent[k * dim + j];
                    }
                }
            }
        }
        ent = next;
        dim = ndim;
    }
    TransferMatrix::new(n, ent)
}

#[inline]
fn n_bits(dim: usize) -> usize {
    dim.trailing_zeros() as usize
}

/// Strengths for the four two-qubit readout-error generators on an
/// adjacent pair, ordered (01->10, 10->01, 00->11, 11->00). In the
/// two-character labels the first character is the lower-indexed qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CtmpPairSpec {
    pub pair: [usize; 2],
    pub strengths: [f64; 4],
}

impl CtmpPairSpec {
    pub fn new(low: usize, strengths: [f64; 4]) -> Self {
        Self { pair: [low, low + 1], strengths }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let [i, j] = self.pair;
        if j != i + 1 {
            return Err(Error::NonAdjacentGate(i, j));
        }
        if i == 0 || j > n {
            return Err(Error::QubitOutOfRange { index: j, n });
        }
        if self.strengths.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidProbability(f64::NAN));
        }
        Ok(())
    }

    /// exp(sum of lambda_g G_g) as a 4x4 column-stochastic matrix.
    /// Local basis index is b_i + 2 b_{i+1}.
    fn local_exponential(&self) -> [[f64; 4]; 4] {
        let mut gen = [[0.0f64; 4]; 4];
        // (column, row) pairs receiving +1; the matching diagonal gets -1.
        let moves = [(2usize, 1usize), (1, 2), (0, 3), (3, 0)];
        for (l, &(from, to)) in self.strengths.iter().zip(&moves) {
            gen[to][from] += l;
            gen[from][from] -= l;
        }
        expm4(&gen)
    }
}

/// Scaling-and-squaring Taylor exponential for 4x4 generators.
fn expm4(m: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let norm: f64 = m
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let mut scaled = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            scaled[i][j] = m[i][j] * scale;
        }
    }
    let mut out = [[0.0; 4]; 4];
    let mut term = [[0.0; 4]; 4];
    for i in 0..4 {
        out[i][i] = 1.0;
        term[i][i] = 1.0;
    }
    for k in 1..=24 {
        term = mat4_mul(&term, &scaled);
        let inv_k = 1.0 / k as f64;
        let mut max = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                term[i][j] *= inv_k;
                out[i][j] += term[i][j];
                max = max.max(term[i][j].abs());
            }
        }
        if max < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        out = mat4_mul(&out, &out);
    }
    out
}

fn mat4_mul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            if aik != 0.0 {
                for j in 0..4 {
                    out[i][j] += aik * b[k][j];
                }
            }
        }
    }
    out
}

/// Left-multiplies `ent` (row-major `dim` x `dim`) by the embedding of a
/// 4x4 matrix acting on bits (q-1, q) for the adjacent pair (q, q+1).
fn apply_pair_factor_left(ent: &mut [f64], dim: usize, q: usize, local: &[[f64; 4]; 4]) {
    let lo = 1usize << (q - 1);
    let hi = 1usize << q;
    let pm = lo | hi;
    for col in 0..dim {
        let mut base = 0usize;
        loop {
            if base & pm == 0 {
                let idx = [base, base | lo, base | hi, base | pm];
                let vals = [
                    ent[idx[0] * dim + col],
                    ent[idx[1] * dim + col],
                    ent[idx[2] * dim + col],
                    ent[idx[3] * dim + col],
                ];
                for (r, &k) in idx.iter().enumerate() {
                    ent[k * dim + col] = (0..4).map(|c| local[r][c] * vals[c]).sum();
                }
            }
            base += 1;
            if base == dim {
                break;
            }
        }
    }
}

/// Product of embedded pair exponentials in ascending pair order (the
/// pair-1 factor acts first). Returns the matrix and a flag that is set
/// when column drift exceeded 1e-12 and renormalization was applied.
pub fn build_ctmp_lambda(n: usize, pairs: &[CtmpPairSpec]) -> Result<(TransferMatrix, bool)> {
    if n == 0 || n > DENSE_CAP {
        return Err(Error::SizeCap { n, cap: DENSE_CAP });
    }
    let dim = 1usize << n;
    let mut ent = vec![0.0; dim * dim];
    for k in 0..dim {
        ent[k * dim + k] = 1.0;
    }
    let mut sorted: Vec<&CtmpPairSpec> = pairs.iter().collect();
    sorted.sort_by_key(|p| p.pair[0]);
    for spec in sorted {
        spec.validate(n)?;
        apply_pair_factor_left(&mut ent, dim, spec.pair[0], &spec.local_exponential());
    }
    let mut renormalized = false;
    for j in 0..dim {
        let sum: f64 = (0..dim).map(|k| ent[k * dim + j]).sum();
        if (sum - 1.0).abs() > COLUMN_TOL {
            renormalized = true;
            for k in 0..dim {
                ent[k * dim + j] /= sum;
            }
        }
    }
    Ok((TransferMatrix::new(n, ent)?, renormalized))
}

/// Synthetic noise: per-qubit assignment errors (one draw per readout
/// direction, so a and b differ) and CTMP pair strengths drawn from
/// normal distributions, clamped to [0, 0.5). The draws must be
/// asymmetric: with a = b every pair generator preserves total parity
/// and full-weight observables would see a perfectly diagonal reduced
/// PTM, which defeats the model's purpose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticNoiseSpec {
    pub n: usize,
    pub mean_ind: f64,
    pub std_ind: f64,
    pub mean_corr: f64,
    pub std_corr: f64,
    pub seed: u64,
}

impl SyntheticNoiseSpec {
    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > DENSE_CAP {
            return Err(Error::SizeCap { n: self.n, cap: DENSE_CAP });
        }
        for std in [self.std_ind, self.std_corr] {
            if std < 0.0 || !std.is_finite() {
                return Err(Error::InvalidProbability(std));
            }
        }
        for mean in [self.mean_ind, self.mean_corr] {
            if !(0.0..1.0).contains(&mean) {
                return Err(Error::InvalidProbability(mean));
            }
        }
        Ok(())
    }
}

const STRENGTH_CLAMP: f64 = 0.5 - 1e-9;

fn draw_clamped(rng: &mut ChaCha8Rng, mean: f64, std: f64) -> f64 {
    let raw = if std == 0.0 {
        mean
    } else {
        Normal::new(mean, std).expect("finite normal parameters").sample(rng)
    };
    raw.clamp(0.0, STRENGTH_CLAMP)
}

/// Lambda = Lambda_corr * Lambda_ind, deterministic under the configured seed.
pub fn sample_synthetic_lambda(spec: &SyntheticNoiseSpec) -> Result<TransferMatrix> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let readouts: Vec<SingleQubitReadout> = (0..spec.n)
        .map(|_| {
            let eps_a = draw_clamped(&mut rng, spec.mean_ind, spec.std_ind);
            let eps_b = draw_clamped(&mut rng, spec.mean_ind, spec.std_ind);
            SingleQubitReadout { a: 1.0 - eps_a, b: 1.0 - eps_b }
        })
        .collect();
    let pairs: Vec<CtmpPairSpec> = (1..spec.n)
        .map(|q| {
            let mut s = [0.0; 4];
            for v in s.iter_mut() {
                *v = draw_clamped(&mut rng, spec.mean_corr, spec.std_corr);
            }
            CtmpPairSpec::new(q, s)
        })
        .collect();
    let ind = build_tpn_lambda(&readouts)?;
    let dim = ind.dim();
    let mut ent = ind.ent;
    let mut sorted: Vec<&CtmpPairSpec> = pairs.iter().collect();
    sorted.sort_by_key(|p| p.pair[0]);
    for spec in sorted {
        apply_pair_factor_left(&mut ent, dim, spec.pair[0], &spec.local_exponential());
    }
    TransferMatrix::new(spec.n, ent)
}

/// The 2^n x 2^n restriction of a classical noise channel's PTM to the
/// {I,Z}^n subset, indexed by ZMask integers.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPTM {
    n: usize,
    dim: usize,
    ent: Vec<f64>,
}

impl ReducedPTM {
    pub fn from_entries(n: usize, ent: Vec<f64>) -> Result<Self> {
        let dim = 1usize << n;
        if ent.len() != dim * dim {
            return Err(Error::DimensionMismatch(ent.len(), dim * dim));
        }
        Ok(Self { n, dim, ent })
    }

    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut ent = vec![0.0; dim * dim];
        for r in 0..dim {
            ent[r * dim + r] = 1.0;
        }
        Self { n, dim, ent }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, s: usize) -> f64 {
        self.ent[r * self.dim + s]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.ent[r * self.dim..(r + 1) * self.dim]
    }

    pub fn entries(&self) -> &[f64] {
        &self.ent
    }
}

/// In-place unnormalized Walsh transform of the virtual vector
/// data[base + i*stride], i in 0..len.
fn fwht(data: &mut [f64], base: usize, stride: usize, len: usize) {
    let mut h = 1;
    while h < len {
        let mut i = 0;
        while i < len {
            for j in i..i + h {
                let x = data[base + j * stride];
                let y = data[base + (j + h) * stride];
                data[base + j * stride] = x + y;
                data[base + (j + h) * stride] = x - y;
            }
            i += 2 * h;
        }
        h *= 2;
    }
}

/// R_Z[r][s] = 2^-n * sum_j (-1)^(s.j) sum_k Lambda[k][j] (-1)^(r.k),
/// computed as two fast Walsh transforms.
pub fn lambda_to_ptm(lam: &TransferMatrix) -> ReducedPTM {
    let dim = lam.dim();
    let mut ent = lam.ent.clone();
    for j in 0..dim {
        fwht(&mut ent, j, dim, dim);
    }
    for r in 0..dim {
        fwht(&mut ent, r * dim, 1, dim);
    }
    let scale = 1.0 / dim as f64;
    for v in ent.iter_mut() {
        *v *= scale;
    }
    ReducedPTM { n: lam.n(), dim, ent }
}

/// Closed-form reduced-PTM entry for tensor-product noise: zero unless
/// supp(Z_s) is contained in supp(Z_r), else the product of omega over
/// jointly measured qubits and zeta over qubits only Z_r measures.
pub fn tpn_ptm_entry(r: &ZMask, s: &ZMask, readouts: &[SingleQubitReadout]) -> Result<f64> {
    if r.n() != s.n() || r.n() != readouts.len() {
        return Err(Error::LengthMismatch(r.n(), readouts.len()));
    }
    if s.mask() & !r.mask() != 0 {
        return Ok(0.0);
    }
    let mut out = 1.0;
    for (q, ro) in readouts.iter().enumerate() {
        if r.bit(q + 1) {
            out *= if s.bit(q + 1) { ro.omega() } else { ro.zeta() };
        }
    }
    Ok(out)
}

/// All s different from r with supp(Z_s) inside supp(Z_r); the set has
/// 2^tau(r) - 1 elements.
pub fn trigger_set(r: &ZMask) -> Vec<ZMask> {
    let m = r.mask();
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity((1usize << r.weight()) - 1);
    let mut sub = (m - 1) & m;
    loop {
        out.push(ZMask::new(r.n(), sub).expect("submask fits"));
        if sub == 0 {
            break;
        }
        sub = sub.wrapping_sub(1) & m;
    }
    out
}

/// Whether (r, s) lies in the tensor-product-noise index subset.
#[inline]
pub fn in_tpn_subset(r: usize, s: usize) -> bool {
    s & !r == 0
}

/// Splits entries by membership in the tensor-product-noise subset;
/// the two parts sum back to the input exactly.
pub fn split_ptm_by_trigger(ptm: &ReducedPTM) -> (ReducedPTM, ReducedPTM) {
    let dim = ptm.dim;
    let mut inside = vec![0.0; dim * dim];
    let mut outside = vec![0.0; dim * dim];
    for r in 0..dim {
        for s in 0..dim {
            let v = ptm.ent[r * dim + s];
            if in_tpn_subset(r, s) {
                inside[r * dim + s] = v;
            } else {
                outside[r * dim + s] = v;
            }
        }
    }
    (
        ReducedPTM { n: ptm.n, dim, ent: inside },
        ReducedPTM { n: ptm.n, dim, ent: outside },
    )
}

/// Mean over qubits of the symmetric assignment error.
pub fn mean_error_rate(readouts: &[SingleQubitReadout]) -> f64 {
    if readouts.is_empty() {
        return 0.0;
    }
    readouts.iter().map(|r| r.error_rate()).sum::<f64>() / readouts.len() as f64
}

/// Mean error rate of a dense matrix, read from its single-qubit marginals.
pub fn mean_error_rate_lambda(lam: &TransferMatrix) -> f64 {
    mean_error_rate(&lam.marginal_readouts())
}

/// Writes reduced-PTM magnitudes as CSV with ZMask-integer labels.
pub fn write_ptm_csv(ptm: &ReducedPTM, absolute: bool, out: &mut impl Write) -> Result<()> {
    write!(out, "r\\s")?;
    for s in 0..ptm.dim() {
        write!(out, ",{s}")?;
    }
    writeln!(out)?;
    for r in 0..ptm.dim() {
        write!(out, "{r}")?;
        for s in 0..ptm.dim() {
            let v = ptm.entry(r, s);
            write!(out, ",{}", if absolute { v.abs() } else { v })?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Declarative noise description consumed by config files and the
/// experiment harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NoiseSpec {
    /// Noiseless readout.
    Ideal { n: usize },
    /// Per-qubit {a, b} factors plus optional CTMP pair terms applied
    /// after the independent part.
    Tpn {
        a: Vec<f64>,
        b: Vec<f64>,
        #[serde(default)]
        ctmp: Vec<CtmpPairSpec>,
    },
    /// Seeded random model with independent and correlated components.
    Synthetic(SyntheticNoiseSpec),
    /// Bundled six-qubit profile with mean error rate 0.0452 and mild
    /// correlated pair terms.
    DeviceLike,
}

impl NoiseSpec {
    pub fn n(&self) -> usize {
        match self {
            NoiseSpec::Ideal { n } => *n,
            NoiseSpec::Tpn { a, .. } => a.len(),
            NoiseSpec::Synthetic(s) => s.n,
            NoiseSpec::DeviceLike => 6,
        }
    }

    /// Re-seeds the synthetic variant; other variants are returned as-is.
    pub fn with_seed(&self, seed: u64) -> NoiseSpec {
        match self {
            NoiseSpec::Synthetic(s) => NoiseSpec::Synthetic(SyntheticNoiseSpec { seed, ..*s }),
            other => other.clone(),
        }
    }

    pub fn build(&self) -> Result<TransferMatrix> {
        match self {
            NoiseSpec::Ideal { n } => TransferMatrix::identity(*n),
            NoiseSpec::Tpn { a, b, ctmp } => {
                if a.len() != b.len() {
                    return Err(Error::LengthMismatch(a.len(), b.len()));
                }
                let readouts: Vec<SingleQubitReadout> = a
                    .iter()
                    .zip(b)
                    .map(|(&a, &b)| SingleQubitReadout::new(a, b))
                    .collect::<Result<_>>()?;
                let ind = build_tpn_lambda(&readouts)?;
                if ctmp.is_empty() {
                    return Ok(ind);
                }
                let dim = ind.dim();
                let n = ind.n();
                let mut ent = ind.ent;
                let mut sorted: Vec<&CtmpPairSpec> = ctmp.iter().collect();
                sorted.sort_by_key(|p| p.pair[0]);
                for spec in sorted {
                    spec.validate(n)?;
                    apply_pair_factor_left(&mut ent, dim, spec.pair[0], &spec.local_exponential());
                }
                TransferMatrix::new(n, ent)
            }
            NoiseSpec::Synthetic(s) => sample_synthetic_lambda(s),
            NoiseSpec::DeviceLike => device_like_spec().build(),
        }
    }
}

/// The bundled six-qubit noise profile as an explicit Tpn spec.
pub fn device_like_spec() -> NoiseSpec {
    NoiseSpec::Tpn {
        a: vec![0.975, 0.9626, 0.981, 0.966, 0.978, 0.970],
        b: vec![0.952, 0.9220, 0.945, 0.930, 0.940, 0.936],
        ctmp: vec![
            CtmpPairSpec::new(1, [0.009, 0.006, 0.0045, 0.004]),
            CtmpPairSpec::new(2, [0.007, 0.0105, 0.005, 0.0035]),
            CtmpPairSpec::new(3, [0.0085, 0.008, 0.003, 0.006]),
            CtmpPairSpec::new(4, [0.0065, 0.009, 0.0055, 0.0045]),
            CtmpPairSpec::new(5, [0.010, 0.007, 0.004, 0.005]),
        ],
    }
}
