//! Random and subsystem-balanced twirling sets, scaling factors, and
//! twirled reduced PTMs.
//!
//! A subsystem-balanced set of size c * 4^tau enumerates every Pauli
//! pattern on the observable's support exactly c times (order shuffled)
//! and draws the remaining qubits i.i.d. uniformly; sizes below 4^tau
//! use non-repeating on-support patterns instead.

use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::noise::ReducedPTM;
use crate::pauli::{eta_masks, PauliString, ZMask};

/// How a twirling set was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwirlKind {
    Random,
    SubsystemBalanced,
}

/// An ordered collection of twirling operators.
#[derive(Debug, Clone, PartialEq)]
pub struct TwirlSet {
    n: usize,
    members: Vec<PauliString>,
    kind: TwirlKind,
    support: Option<ZMask>,
    multiplier: usize,
}

impl TwirlSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[PauliString] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn kind(&self) -> TwirlKind {
        self.kind
    }

    /// Balanced support, when subsystem-balanced.
    pub fn support(&self) -> Option<&ZMask> {
        self.support.as_ref()
    }

    /// The integer c for balanced sets of size c * 4^tau; 0 in the
    /// non-repeating regime.
    pub fn multiplier(&self) -> usize {
        self.multiplier
    }

    /// Sorted copy used to check order-invariance of downstream averages.
    pub fn permuted(&self, seed: u64) -> TwirlSet {
        let mut out = self.clone();
        out.members.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        out
    }

    /// Writes one Pauli string per line.
    pub fn export(&self, out: &mut impl Write) -> Result<()> {
        for m in &self.members {
            writeln!(out, "{m}")?;
        }
        Ok(())
    }

    /// Wraps an explicit member list (kind recorded as random).
    pub fn custom(members: Vec<PauliString>) -> Result<TwirlSet> {
        let n = members
            .first()
            .map(PauliString::n)
            .ok_or(Error::InvalidTwirlSize { size: 0, tau: 0 })?;
        if let Some(bad) = members.iter().find(|m| m.n() != n) {
            return Err(Error::LengthMismatch(bad.n(), n));
        }
        Ok(TwirlSet { n, members, kind: TwirlKind::Random, support: None, multiplier: 0 })
    }

    /// Parses the one-string-per-line format written by [`TwirlSet::export`].
    pub fn import(reader: impl BufRead) -> Result<TwirlSet> {
        let mut members = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            members.push(line.parse::<PauliString>()?);
        }
        if members.is_empty() {
            return Err(Error::Parse("empty twirl-set file".into()));
        }
        TwirlSet::custom(members)
    }
}

/// Members drawn i.i.d. uniformly from the 4^n Pauli strings.
pub fn random_twirl_set(n: usize, size: usize, seed: u64) -> Result<TwirlSet> {
    if size == 0 {
        return Err(Error::InvalidTwirlSize { size, tau: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..size)
        .map(|_| {
            let digits = (0..n).map(|_| rng.gen_range(0..4u8)).collect();
            PauliString::from_digits(digits).expect("digits in range")
        })
        .collect();
    Ok(TwirlSet { n, members, kind: TwirlKind::Random, support: None, multiplier: 0 })
}

/// Subsystem-balanced set on `support`.
///
/// Size c * 4^tau enumerates all on-support patterns c times; a size
/// below 4^tau samples distinct patterns without replacement; anything
/// else is rejected. Off-support digits are i.i.d. uniform.
pub fn sbpt_set(support: &ZMask, n: usize, size: usize, seed: u64) -> Result<TwirlSet> {
    if support.n() != n {
        return Err(Error::LengthMismatch(support.n(), n));
    }
    let tau = support.weight();
    let patterns = 1usize << (2 * tau);
    if size == 0 || (size > patterns && !size.is_multiple_of(patterns)) {
        return Err(Error::InvalidTwirlSize { size, tau });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<usize> = if size < patterns {
        rand::seq::index::sample(&mut rng, patterns, size).into_vec()
    } else {
        let c = size / patterns;
        let mut all: Vec<usize> = (0..patterns).cycle().take(c * patterns).collect();
        all.shuffle(&mut rng);
        all
    };
    let support_qubits = support.support();
    let members = chosen
        .into_iter()
        .map(|mut pattern| {
            let mut digits = vec![0u8; n];
            for &q in &support_qubits {
                digits[q - 1] = (pattern & 3) as u8;
                pattern >>= 2;
            }
            for q in 1..=n {
                if !support.bit(q) {
                    digits[q - 1] = rng.gen_range(0..4u8);
                }
            }
            PauliString::from_digits(digits).expect("digits in range")
        })
        .collect();
    Ok(TwirlSet {
        n,
        members,
        kind: TwirlKind::SubsystemBalanced,
        support: Some(*support),
        multiplier: size / patterns,
    })
}

/// The full n-qubit Pauli group as a balanced set (c = 1 on all qubits).
pub fn full_twirl_set(n: usize, seed: u64) -> TwirlSet {
    sbpt_set(&ZMask::full(n), n, 1usize << (2 * n), seed).expect("full group size is 4^n")
}

/// alpha_ij(S): mean commutator sign of the members against P_i P_j.
///
/// Balanced cancellations are exact because the ±1 terms are summed as
/// integers before the final division.
pub fn scaling_factor(set: &TwirlSet, i: &PauliString, j: &PauliString) -> Result<f64> {
    if i.n() != set.n || j.n() != set.n {
        return Err(Error::LengthMismatch(i.n(), set.n));
    }
    let xw = i.x_mask() ^ j.x_mask();
    let zw = i.z_mask() ^ j.z_mask();
    Ok(scaling_factor_masks(set, xw, zw))
}

pub(crate) fn scaling_factor_masks(set: &TwirlSet, xw: usize, zw: usize) -> f64 {
    let sum: i64 = set
        .members
        .iter()
        .map(|q| eta_masks(q.x_mask(), q.z_mask(), xw, zw) as i64)
        .sum();
    sum as f64 / set.members.len() as f64
}

/// Entrywise product of a reduced PTM with the alpha matrix on Z-index
/// pairs.
pub fn twirled_ptm(ptm: &ReducedPTM, set: &TwirlSet) -> Result<ReducedPTM> {
    if ptm.n() != set.n {
        return Err(Error::LengthMismatch(ptm.n(), set.n));
    }
    let dim = ptm.dim();
    let mut ent = vec![0.0; dim * dim];
    for r in 0..dim {
        let zr = ZMask::new(ptm.n(), r).expect("index fits");
        for s in 0..dim {
            let zs = ZMask::new(ptm.n(), s).expect("index fits");
            // P_phi(r) P_phi(s) is the Z string on the symmetric
            // difference of the two masks.
            let alpha = scaling_factor_masks(set, 0, zr.mask() ^ zs.mask());
            ent[r * dim + s] = alpha * ptm.entry(r, s);
        }
    }
    ReducedPTM::from_entries(ptm.n(), ent)
}
