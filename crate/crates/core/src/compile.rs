//! Compiles Pauli-Z observables into nearest-neighbour CX measurement
//! circuits that realize a lower-weight effective observable.
//!
//! The deterministic plan works per block: isolated Z's (length-1 runs)
//! are relocated with two-gate location shifts, longer runs are merged
//! by extending across the gap with one CX per gap qubit, and the final
//! contiguous run is compressed onto the target qubit by CX chains.
//! Every compiled circuit is verified symbolically before it is
//! returned.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{CxGate, PauliString, ZMask, DIGIT_X, DIGIT_Y};
use crate::sim::Rotation1q;

/// A maximal run of equal symbols in a Pauli-Z observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    /// Z-run or I-run.
    pub is_z: bool,
    /// First qubit (1-based, inclusive).
    pub start: usize,
    /// Last qubit (inclusive).
    pub end: usize,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Maximal alternating Z-run / I-run partition of [1, n].
pub fn segment_decompose(r: &ZMask) -> Vec<Segment> {
    let mut out = Vec::new();
    let mut start = 1;
    let mut kind = r.bit(1);
    for q in 2..=r.n() {
        if r.bit(q) != kind {
            out.push(Segment { is_z: kind, start, end: q - 1 });
            start = q;
            kind = r.bit(q);
        }
    }
    out.push(Segment { is_z: kind, start, end: r.n() });
    out
}

/// Chain of CX gates walking from `i` to `j`; the far-endpoint gate acts
/// first in time. Empty when i == j.
pub fn chain_cx(n: usize, i: usize, j: usize) -> Result<Circuit> {
    for q in [i, j] {
        if q == 0 || q > n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
    }
    let mut c = Circuit::empty(n);
    if i < j {
        for k in i..j {
            c.push(CxGate::new(k, k + 1)?)?;
        }
    } else {
        for k in (j..i).rev() {
            c.push(CxGate::new(k + 1, k)?)?;
        }
    }
    Ok(c)
}

/// Compresses a contiguous Z-run onto `target`: the chain from the run
/// start acts first, then the chain from the run end. Gate count is the
/// run length minus one.
pub fn weight_reduce(seg: &Segment, target: usize, n: usize) -> Result<Circuit> {
    if !seg.is_z {
        return Err(Error::UnachievablePlan("weight reduction needs a Z-run".into()));
    }
    if target < seg.start || target > seg.end {
        return Err(Error::QubitOutOfRange { index: target, n });
    }
    let mut c = chain_cx(n, seg.start, target)?;
    c.extend(&chain_cx(n, seg.end, target)?);
    Ok(c)
}

/// Direction of a location shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Left,
    Right,
}

/// Two-gate shift moving a Z from `i` to the neighbour in `direction`.
/// The operation is unconditional on the operator; planning is
/// responsible for never shifting onto a qubit that already carries Z.
pub fn location_shift(i: usize, direction: ShiftDirection, n: usize) -> Result<Circuit> {
    let j = match direction {
        ShiftDirection::Right => {
            if i >= n {
                return Err(Error::QubitOutOfRange { index: i + 1, n });
            }
            i + 1
        }
        ShiftDirection::Left => {
            if i <= 1 {
                return Err(Error::QubitOutOfRange { index: 0, n });
            }
            i - 1
        }
    };
    // U_S(i, j) = CX_{i,j} CX_{j,i}; the j-controlled gate acts first.
    Circuit::new(n, vec![CxGate::new(j, i)?, CxGate::new(i, j)?])
}

/// A measurement-transformation request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtPlan {
    pub source: ZMask,
    pub target_effective: ZMask,
    /// Inclusive (start, end) blocks partitioning [1, n], one target
    /// qubit each; derived from target midpoints when absent.
    pub partition: Option<Vec<(usize, usize)>>,
}

impl MtPlan {
    /// Plan with explicit target qubits; blocks split at midpoints
    /// between consecutive targets.
    pub fn with_targets(source: ZMask, targets: &[usize]) -> Result<Self> {
        let n = source.n();
        let mut mask = 0usize;
        for &t in targets {
            if t == 0 || t > n {
                return Err(Error::QubitOutOfRange { index: t, n });
            }
            if mask >> (t - 1) & 1 == 1 {
                return Err(Error::UnachievablePlan(format!("duplicate target qubit {t}")));
            }
            mask |= 1 << (t - 1);
        }
        if mask == 0 {
            return Err(Error::UnachievablePlan("no target qubits".into()));
        }
        Ok(Self {
            source,
            target_effective: ZMask::new(n, mask)?,
            partition: None,
        })
    }

    /// Deterministic plan reducing `source` to effective weight `k`:
    /// the source's Z-runs are split into k contiguous groups (remainder
    /// groups last) and each group targets the leftmost qubit of its
    /// first run.
    pub fn to_weight(source: ZMask, k: usize) -> Result<Self> {
        let runs: Vec<Segment> = segment_decompose(&source)
            .into_iter()
            .filter(|s| s.is_z)
            .collect();
        if k == 0 || k > runs.len() {
            return Err(Error::UnachievablePlan(format!(
                "cannot reduce {} Z-runs to weight {k}",
                runs.len()
            )));
        }
        let base = runs.len() / k;
        let extra = runs.len() % k;
        let mut targets = Vec::with_capacity(k);
        let mut blocks = Vec::with_capacity(k);
        let mut idx = 0usize;
        let mut block_start = 1usize;
        for g in 0..k {
            let size = base + usize::from(g >= k - extra);
            let group = &runs[idx..idx + size];
            targets.push(group[0].start);
            let block_end = if g + 1 == k {
                source.n()
            } else {
                runs[idx + size].start - 1
            };
            blocks.push((block_start, block_end));
            block_start = block_end + 1;
            idx += size;
        }
        let mut mask = 0usize;
        for &t in &targets {
            mask |= 1 << (t - 1);
        }
        Ok(Self {
            source,
            target_effective: ZMask::new(source.n(), mask)?,
            partition: Some(blocks),
        })
    }

    fn blocks(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.source.n();
        if let Some(blocks) = &self.partition {
            let mut expected = 1usize;
            for &(s, e) in blocks {
                if s != expected || e < s || e > n {
                    return Err(Error::UnachievablePlan(format!(
                        "blocks must partition 1..={n}, got ({s}, {e})"
                    )));
                }
                expected = e + 1;
            }
            if expected != n + 1 {
                return Err(Error::UnachievablePlan("blocks do not cover all qubits".into()));
            }
            return Ok(blocks.clone());
        }
        let targets = self.target_effective.support();
        let mut blocks = Vec::with_capacity(targets.len());
        let mut start = 1usize;
        for (i, &t) in targets.iter().enumerate() {
            let end = if i + 1 == targets.len() {
                n
            } else {
                (t + targets[i + 1]) / 2
            };
            blocks.push((start, end));
            start = end + 1;
        }
        Ok(blocks)
    }
}

/// Compiles a plan into a circuit and its verified effective observable.
pub fn compile_mt(plan: &MtPlan) -> Result<(Circuit, ZMask)> {
    let n = plan.source.n();
    if plan.target_effective.n() != n {
        return Err(Error::LengthMismatch(plan.target_effective.n(), n));
    }
    let blocks = plan.blocks()?;
    let mut circuit = Circuit::empty(n);
    for &(lo, hi) in &blocks {
        let targets: Vec<usize> =
            (lo..=hi).filter(|&q| plan.target_effective.bit(q)).collect();
        let sources: Vec<usize> = (lo..=hi).filter(|&q| plan.source.bit(q)).collect();
        match (targets.len(), sources.is_empty()) {
            (1, false) => compile_block(&mut circuit, targets[0], &sources)?,
            (0, true) => {}
            (0, false) => {
                return Err(Error::UnachievablePlan(format!(
                    "block ({lo}, {hi}) has source Z's but no target qubit"
                )))
            }
            (1, true) => {
                return Err(Error::UnachievablePlan(format!(
                    "block ({lo}, {hi}) has a target but no source Z"
                )))
            }
            _ => {
                return Err(Error::UnachievablePlan(format!(
                    "block ({lo}, {hi}) holds {} target qubits",
                    targets.len()
                )))
            }
        }
    }
    let conjugated = circuit.conjugate_pauli(&plan.source.phi())?;
    let want = plan.target_effective.phi();
    if conjugated.digits() != want.digits() || conjugated.sign() != 1 {
        return Err(Error::UnachievablePlan(format!(
            "compiled circuit maps {} to {} instead of {}",
            plan.source, conjugated, want
        )));
    }
    Ok((circuit, plan.target_effective))
}

/// Convenience wrapper: compile `source` down to weight `k`.
pub fn compile_to_weight(source: &ZMask, k: usize) -> Result<(Circuit, ZMask)> {
    compile_mt(&MtPlan::to_weight(*source, k)?)
}

fn compile_block(circuit: &mut Circuit, target: usize, sources: &[usize]) -> Result<()> {
    let n = circuit.n();
    // Maximal runs of the block-local support.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &q in sources {
        match runs.last_mut() {
            Some((_, end)) if *end + 1 == q => *end = q,
            _ => runs.push((q, q)),
        }
    }
    // Anchor: the run containing the target, else the nearest run
    // (ties toward lower index).
    let anchor_idx = runs
        .iter()
        .position(|&(s, e)| s <= target && target <= e)
        .unwrap_or_else(|| {
            let dist = |&(s, e): &(usize, usize)| {
                if target < s {
                    s - target
                } else {
                    target.saturating_sub(e)
                }
            };
            runs.iter()
                .enumerate()
                .min_by_key(|(i, r)| (dist(r), *i))
                .map(|(i, _)| i)
                .expect("block has at least one run")
        });
    let mut merged = runs.remove(anchor_idx);
    // Merge remaining runs, nearest to the consolidated interval first,
    // ties toward the left side.
    while !runs.is_empty() {
        let (idx, _) = runs
            .iter()
            .enumerate()
            .min_by_key(|(i, &(s, e))| {
                let d = if e < merged.0 { merged.0 - e } else { s - merged.1 };
                (d, *i)
            })
            .expect("non-empty");
        let (s, e) = runs.remove(idx);
        if e < merged.0 {
            if s == e {
                // Isolated Z: shift right until adjacent to the interval.
                for pos in s..merged.0 - 1 {
                    circuit.extend(&location_shift(pos, ShiftDirection::Right, n)?);
                }
                merged.0 -= 1;
            } else {
                // Extend across the gap, walking toward the interval.
                for g in e + 1..merged.0 {
                    circuit.push(CxGate::new(g, g - 1)?)?;
                }
                merged.0 = s;
            }
        } else if s == e {
            // Isolated Z on the right: shift left to the interval edge.
            for pos in (merged.1 + 2..=s).rev() {
                circuit.extend(&location_shift(pos, ShiftDirection::Left, n)?);
            }
            merged.1 += 1;
        } else {
            for g in (merged.1 + 1..s).rev() {
                circuit.push(CxGate::new(g, g + 1)?)?;
            }
            merged.1 = e;
        }
    }
    // Compress onto the target (or the nearest endpoint, then shift).
    let wr_target = target.clamp(merged.0, merged.1);
    let seg = Segment { is_z: true, start: merged.0, end: merged.1 };
    circuit.extend(&weight_reduce(&seg, wr_target, n)?);
    if target < wr_target {
        for pos in (target + 1..=wr_target).rev() {
            circuit.extend(&location_shift(pos, ShiftDirection::Left, n)?);
        }
    } else {
        for pos in wr_target..target {
            circuit.extend(&location_shift(pos, ShiftDirection::Right, n)?);
        }
    }
    Ok(())
}

/// Per-qubit rotations mapping an arbitrary Pauli observable to Z-form,
/// together with the resulting Z mask.
pub fn basis_rotation(p: &PauliString) -> (Vec<Rotation1q>, ZMask) {
    let layer = p
        .digits()
        .iter()
        .map(|&d| match d {
            DIGIT_X => Rotation1q::H,
            DIGIT_Y => Rotation1q::HSdg,
            _ => Rotation1q::Id,
        })
        .collect();
    let mask = p
        .digits()
        .iter()
        .enumerate()
        .fold(0usize, |m, (i, &d)| m | usize::from(d != 0) << i);
    (layer, ZMask::new(p.n(), mask).expect("mask fits"))
}
