//! Dense-matrix oracles shared by the integration suites. Everything
//! here is built from first principles (explicit matrix elements and
//! naive products) so it stays independent of the library's own
//! bit-twiddling paths.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use memtwirl::{Circuit, CxGate, PauliString, TransferMatrix, ZMask};

pub const C0: Complex64 = Complex64::new(0.0, 0.0);
pub const C1: Complex64 = Complex64::new(1.0, 0.0);

/// <out|sigma_d|inp> for a single-qubit Pauli digit.
fn single_element(d: u8, out: usize, inp: usize) -> Complex64 {
    match d {
        0 => {
            if out == inp {
                C1
            } else {
                C0
            }
        }
        1 => {
            if out != inp {
                C1
            } else {
                C0
            }
        }
        2 => match (out, inp) {
            (1, 0) => Complex64::new(0.0, 1.0),
            (0, 1) => Complex64::new(0.0, -1.0),
            _ => C0,
        },
        _ => {
            if out == inp {
                if inp == 0 {
                    C1
                } else {
                    -C1
                }
            } else {
                C0
            }
        }
    }
}

/// Dense matrix of a signed Pauli string; qubit 1 is bit 0 of the index.
pub fn pauli_dense(p: &PauliString) -> Vec<Complex64> {
    let n = p.n();
    let dim = 1usize << n;
    let mut m = vec![C0; dim * dim];
    for inp in 0..dim {
        for out in 0..dim {
            let mut val = Complex64::new(p.sign() as f64, 0.0);
            for q in 1..=n {
                let e = single_element(p.digit(q), (out >> (q - 1)) & 1, (inp >> (q - 1)) & 1);
                val *= e;
                if val == C0 {
                    break;
                }
            }
            m[out * dim + inp] = val;
        }
    }
    m
}

/// Dense CX unitary (a basis permutation).
pub fn cx_dense(n: usize, g: CxGate) -> Vec<Complex64> {
    let dim = 1usize << n;
    let mut m = vec![C0; dim * dim];
    for b in 0..dim {
        let out = if b >> (g.control - 1) & 1 == 1 { b ^ (1 << (g.target - 1)) } else { b };
        m[out * dim + b] = C1;
    }
    m
}

pub fn mat_mul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![C0; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik != C0 {
                for j in 0..dim {
                    out[i * dim + j] += aik * b[k * dim + j];
                }
            }
        }
    }
    out
}

pub fn dagger(a: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![C0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = a[i * dim + j].conj();
        }
    }
    out
}

/// Circuit unitary with the first-listed gate rightmost (acting first).
pub fn circuit_dense(c: &Circuit) -> Vec<Complex64> {
    let dim = 1usize << c.n();
    let mut u = vec![C0; dim * dim];
    for i in 0..dim {
        u[i * dim + i] = C1;
    }
    for &g in c.gates() {
        u = mat_mul(&cx_dense(c.n(), g), &u, dim);
    }
    u
}

/// U M U^dagger.
pub fn conjugate_dense(u: &[Complex64], m: &[Complex64], dim: usize) -> Vec<Complex64> {
    mat_mul(&mat_mul(u, m, dim), &dagger(u, dim), dim)
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Random nearest-neighbour circuit with up to `max_gates` gates.
pub fn random_circuit(n: usize, max_gates: usize, rng: &mut ChaCha8Rng) -> Circuit {
    let count = rng.gen_range(0..=max_gates);
    let mut c = Circuit::empty(n);
    for _ in 0..count {
        let low = rng.gen_range(1..n);
        let (control, target) = if rng.gen() { (low, low + 1) } else { (low + 1, low) };
        c.push(CxGate::new(control, target).unwrap()).unwrap();
    }
    c
}

pub fn random_pauli(n: usize, rng: &mut ChaCha8Rng) -> PauliString {
    PauliString::from_index(n, rng.gen_range(0..1usize << (2 * n)))
}

/// Random column-stochastic transfer matrix with a dominant diagonal.
pub fn random_lambda(n: usize, rng: &mut ChaCha8Rng) -> TransferMatrix {
    let dim = 1usize << n;
    let mut ent = vec![0.0f64; dim * dim];
    for j in 0..dim {
        let mut col: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect();
        col[j] += dim as f64; // keep it looking like readout noise
        let sum: f64 = col.iter().sum();
        for k in 0..dim {
            ent[k * dim + j] = col[k] / sum;
        }
    }
    TransferMatrix::new(n, ent).unwrap()
}

/// Brute-force reduced-PTM entry: (1/2^n) Tr(Z_r E(Z_s)) with E the
/// dephase-then-stochastic channel, evaluated with explicit loops over
/// matrix storage.
pub fn channel_oracle_entry(lam: &TransferMatrix, r: &ZMask, s: &ZMask) -> f64 {
    let dim = lam.dim();
    // Dephasing keeps the diagonal of Z_s: entries (-1)^(s . j).
    let mut moved = vec![0.0f64; dim];
    for (k, m) in moved.iter_mut().enumerate() {
        for j in 0..dim {
            let sj = if (s.mask() & j).count_ones() & 1 == 0 { 1.0 } else { -1.0 };
            *m += lam.entry(k, j) * sj;
        }
    }
    let mut total = 0.0;
    for (k, v) in moved.iter().enumerate() {
        let rk = if (r.mask() & k).count_ones() & 1 == 0 { 1.0 } else { -1.0 };
        total += rk * v;
    }
    total / dim as f64
}

/// Naive dense matrix exponential by scaled Taylor series.
pub fn expm_dense(m: &[f64], dim: usize) -> Vec<f64> {
    let norm: f64 = (0..dim)
        .map(|i| (0..dim).map(|j| m[i * dim + j].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled: Vec<f64> = m.iter().map(|v| v * scale).collect();
    let mut out = vec![0.0; dim * dim];
    let mut term = vec![0.0; dim * dim];
    for i in 0..dim {
        out[i * dim + i] = 1.0;
        term[i * dim + i] = 1.0;
    }
    for k in 1..=30 {
        let mut next = vec![0.0; dim * dim];
        for i in 0..dim {
            for l in 0..dim {
                let t = term[i * dim + l];
                if t != 0.0 {
                    for j in 0..dim {
                        next[i * dim + j] += t * scaled[l * dim + j];
                    }
                }
            }
        }
        let inv_k = 1.0 / k as f64;
        let mut max = 0.0f64;
        for (o, v) in next.iter_mut().enumerate() {
            *v *= inv_k;
            out[o] += *v;
            max = max.max(v.abs());
        }
        term = next;
        if max < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        let mut sq = vec![0.0; dim * dim];
        for i in 0..dim {
            for l in 0..dim {
                let t = out[i * dim + l];
                if t != 0.0 {
                    for j in 0..dim {
                        sq[i * dim + j] += t * out[l * dim + j];
                    }
                }
            }
        }
        out = sq;
    }
    out
}
