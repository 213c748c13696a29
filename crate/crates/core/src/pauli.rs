//! Pauli-group indexing, commutator signs, products, and supports.
//!
//! Conventions used throughout the crate:
//! - Qubits are numbered 1..=n. Qubit 1 is the least-significant base-4
//!   digit of a Pauli index, the least-significant bit of an outcome
//!   index, and the leftmost character of operator strings like
//!   `"ZZIIII"`.
//! - Per-qubit symbols are encoded as digits 0..=3 for I, X, Y, Z.
//! - Signs are restricted to ±1; global phases beyond that are dropped.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Digit code for the identity.
pub const DIGIT_I: u8 = 0;
/// Digit code for Pauli X.
pub const DIGIT_X: u8 = 1;
/// Digit code for Pauli Y.
pub const DIGIT_Y: u8 = 2;
/// Digit code for Pauli Z.
pub const DIGIT_Z: u8 = 3;

const SYMBOLS: [char; 4] = ['I', 'X', 'Y', 'Z'];

/// An n-qubit Pauli operator with a ±1 sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    digits: Vec<u8>,
    sign: i8,
}

impl PauliString {
    /// The identity operator on `n` qubits.
    pub fn identity(n: usize) -> Self {
        Self { digits: vec![0; n], sign: 1 }
    }

    /// Builds from per-qubit digits (qubit 1 first); digits must be in 0..=3.
    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > 3) {
            return Err(Error::Parse(format!("pauli digit {d} out of range")));
        }
        Ok(Self { digits, sign: 1 })
    }

    /// Decodes a base-4 Pauli index; inverse of [`PauliString::index`].
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut digits = vec![0u8; n];
        for d in digits.iter_mut() {
            *d = (index & 3) as u8;
            index >>= 2;
        }
        Self { digits, sign: 1 }
    }

    /// Base-4 index: sum of digit_i * 4^(i-1) over qubits i.
    pub fn index(&self) -> usize {
        self.digits
            .iter()
            .rev()
            .fold(0usize, |acc, &d| (acc << 2) | d as usize)
    }

    pub fn n(&self) -> usize {
        self.digits.len()
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Digit of `qubit` (1-based).
    pub fn digit(&self, qubit: usize) -> u8 {
        self.digits[qubit - 1]
    }

    pub(crate) fn set_digit(&mut self, qubit: usize, d: u8) {
        self.digits[qubit - 1] = d;
    }

    /// Bit mask of qubits carrying an X component (X or Y), qubit i at bit i-1.
    pub fn x_mask(&self) -> usize {
        self.digits.iter().enumerate().fold(0, |m, (i, &d)| {
            m | usize::from(d == DIGIT_X || d == DIGIT_Y) << i
        })
    }

    /// Bit mask of qubits carrying a Z component (Z or Y).
    pub fn z_mask(&self) -> usize {
        self.digits.iter().enumerate().fold(0, |m, (i, &d)| {
            m | usize::from(d == DIGIT_Z || d == DIGIT_Y) << i
        })
    }

    /// Number of non-identity qubits.
    pub fn weight(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }

    /// True when every non-identity digit lies inside `support`.
    pub fn supported_within(&self, support: &ZMask) -> bool {
        self.digits
            .iter()
            .enumerate()
            .all(|(i, &d)| d == 0 || support.bit(i + 1))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        for &d in &self.digits {
            write!(f, "{}", SYMBOLS[d as usize])?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `"XZI"`-style strings; leftmost character is qubit 1.
    fn from_str(s: &str) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            let d = match c.to_ascii_uppercase() {
                'I' => DIGIT_I,
                'X' => DIGIT_X,
                'Y' => DIGIT_Y,
                'Z' => DIGIT_Z,
                other => return Err(Error::Parse(format!("invalid Pauli character '{other}'"))),
            };
            digits.push(d);
        }
        if digits.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        Ok(Self { digits, sign: 1 })
    }
}

/// An element of the {I,Z}^n subgroup, stored as a bit mask (qubit i at bit i-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZMask {
    n: usize,
    mask: usize,
}

impl ZMask {
    pub fn new(n: usize, mask: usize) -> Result<Self> {
        if n == 0 || n > 32 || mask >> n != 0 {
            return Err(Error::Parse(format!("mask {mask:#x} does not fit {n} qubits")));
        }
        Ok(Self { n, mask })
    }

    /// All-identity mask.
    pub fn zero(n: usize) -> Self {
        Self { n, mask: 0 }
    }

    /// Z on every qubit.
    pub fn full(n: usize) -> Self {
        Self { n, mask: (1 << n) - 1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The subgroup index r; equals the bit mask itself.
    pub fn index(&self) -> usize {
        self.mask
    }

    pub fn mask(&self) -> usize {
        self.mask
    }

    /// Whether `qubit` (1-based) carries a Z.
    pub fn bit(&self, qubit: usize) -> bool {
        (self.mask >> (qubit - 1)) & 1 == 1
    }

    /// Hamming weight tau(r).
    pub fn weight(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Supported qubit indices in ascending order.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&q| self.bit(q)).collect()
    }

    /// Embeds into the full Pauli group: digits are 3 where bits are 1.
    pub fn phi(&self) -> PauliString {
        let digits = (1..=self.n)
            .map(|q| if self.bit(q) { DIGIT_Z } else { DIGIT_I })
            .collect();
        PauliString { digits, sign: 1 }
    }

    /// Full-group index phi(r) = sum of 3 r_i 4^(i-1).
    pub fn phi_index(&self) -> usize {
        let mut out = 0usize;
        let mut bits = self.mask;
        let mut shift = 0;
        while bits != 0 {
            out |= ((bits & 1) * 3) << shift;
            bits >>= 1;
            shift += 2;
        }
        out
    }
}

impl fmt::Display for ZMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 1..=self.n {
            write!(f, "{}", if self.bit(q) { 'Z' } else { 'I' })?;
        }
        Ok(())
    }
}

impl FromStr for ZMask {
    type Err = Error;

    /// Parses `"ZIZ"`-style strings; X and Y are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let mut mask = 0usize;
        let mut n = 0usize;
        for (i, c) in s.chars().enumerate() {
            match c.to_ascii_uppercase() {
                'Z' => mask |= 1 << i,
                'I' => {}
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character '{other}' in Z-observable string"
                    )))
                }
            }
            n += 1;
        }
        if n == 0 {
            return Err(Error::Parse("empty observable string".into()));
        }
        Ok(Self { n, mask })
    }
}

/// A nearest-neighbour CX gate; `control` and `target` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CxGate {
    pub control: usize,
    pub target: usize,
}

impl CxGate {
    pub fn new(control: usize, target: usize) -> Result<Self> {
        if control == target || control.abs_diff(target) != 1 {
            return Err(Error::NonAdjacentGate(control, target));
        }
        if control == 0 || target == 0 {
            return Err(Error::QubitOutOfRange { index: 0, n: 0 });
        }
        Ok(Self { control, target })
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        for q in [self.control, self.target] {
            if q == 0 || q > n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
        }
        Ok(())
    }
}

/// Commutator sign: P_q P P_q^dagger = eta(P_q, P) P.
///
/// Equals -1 exactly when the two operators anticommute, i.e. an odd
/// number of qubits carry different non-identity symbols.
pub fn eta(q: &PauliString, p: &PauliString) -> Result<i8> {
    if q.n() != p.n() {
        return Err(Error::LengthMismatch(q.n(), p.n()));
    }
    Ok(eta_masks(q.x_mask(), q.z_mask(), p.x_mask(), p.z_mask()))
}

/// Symplectic-form commutator sign on raw bit masks.
#[inline]
pub(crate) fn eta_masks(xq: usize, zq: usize, xp: usize, zp: usize) -> i8 {
    let parity = ((xq & zp).count_ones() + (zq & xp).count_ones()) & 1;
    if parity == 0 {
        1
    } else {
        -1
    }
}

/// Phase-free Pauli product: componentwise symplectic-bit addition.
///
/// The result always carries sign +1; only commutation signs enter any
/// downstream formula, so the i/-i bookkeeping is intentionally dropped.
pub fn pauli_mul(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch(a.n(), b.n()));
    }
    let digits = a
        .digits
        .iter()
        .zip(&b.digits)
        .map(|(&da, &db)| mul_digit(da, db))
        .collect();
    Ok(PauliString { digits, sign: 1 })
}

#[inline]
fn mul_digit(a: u8, b: u8) -> u8 {
    let (xa, za) = digit_bits(a);
    let (xb, zb) = digit_bits(b);
    bits_digit(xa ^ xb, za ^ zb)
}

#[inline]
pub(crate) fn digit_bits(d: u8) -> (u8, u8) {
    match d {
        0 => (0, 0),
        1 => (1, 0),
        2 => (1, 1),
        _ => (0, 1),
    }
}

#[inline]
pub(crate) fn bits_digit(x: u8, z: u8) -> u8 {
    match (x, z) {
        (0, 0) => 0,
        (1, 0) => 1,
        (1, 1) => 2,
        _ => 3,
    }
}

/// Conjugates `p` by a single CX gate, tracking the ±1 sign.
///
/// Standard Clifford action: X_c -> X_c X_t, Z_t -> Z_c Z_t, with the
/// sign flipping exactly when the control carries X and the target
/// carries Z while x_t == z_c.
pub fn conjugate_by_cx(p: &PauliString, g: CxGate) -> Result<PauliString> {
    g.check_range(p.n())?;
    let mut out = p.clone();
    let (xc, zc) = digit_bits(p.digit(g.control));
    let (xt, zt) = digit_bits(p.digit(g.target));
    if xc & zt & (1 ^ xt ^ zc) == 1 {
        out.sign = -out.sign;
    }
    out.set_digit(g.control, bits_digit(xc, zc ^ zt));
    out.set_digit(g.target, bits_digit(xt ^ xc, zt));
    Ok(out)
}
