//! End-to-end estimator properties: exact recovery regimes, bound
//! ordering, coverage, and an algebraic transfer-matrix oracle for the
//! full estimation pipeline.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use memtwirl::sim::{cx_ptm, effective_gate_channel, ptm_compose};
use memtwirl::{
    build_tpn_lambda, compile_to_weight, error_bound_random, error_bound_subsystem,
    full_twirl_set, haar_state, lambda_to_ptm, mitigated_estimate, noisy_expectation,
    random_twirl_set, sbpt_set, BoundInputs, CtmpPairSpec, EstimatorConfig, GateNoiseParams,
    NoiseSpec, PauliString, ShotBudget, SingleQubitReadout, ZMask,
};

fn random_readouts(n: usize, rng: &mut ChaCha8Rng) -> Vec<SingleQubitReadout> {
    (0..n)
        .map(|_| {
            SingleQubitReadout::new(rng.gen_range(0.93..1.0), rng.gen_range(0.9..1.0)).unwrap()
        })
        .collect()
}

fn random_classical_noise(n: usize, rng: &mut ChaCha8Rng) -> NoiseSpec {
    let readouts = random_readouts(n, rng);
    let ctmp = (1..n)
        .map(|q| {
            let mut s = [0.0; 4];
            for v in s.iter_mut() {
                *v = rng.gen_range(0.0..0.02);
            }
            CtmpPairSpec::new(q, s)
        })
        .collect();
    NoiseSpec::Tpn {
        a: readouts.iter().map(|r| r.a).collect(),
        b: readouts.iter().map(|r| r.b).collect(),
        ctmp,
    }
}

#[test]
fn full_twirl_group_is_exact_for_any_classical_noise() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3usize {
        let lam = random_classical_noise(n, &mut rng).build().unwrap();
        let set = full_twirl_set(n, 1);
        let cfg = EstimatorConfig::infinite(&set, 0);
        for mask in 1..1usize << n {
            let z = ZMask::new(n, mask).unwrap();
            for seed in 0..5 {
                let state = haar_state(n, seed).unwrap();
                let a = mitigated_estimate(&state, &z, &lam, &cfg).unwrap();
                assert!((a - state.z_expectation(&z)).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn balanced_sets_are_exact_under_exact_tpn() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let n = 6usize;
    let readouts = random_readouts(n, &mut rng);
    let lam = build_tpn_lambda(&readouts).unwrap();
    for mask in [0b000001usize, 0b010010, 0b110100] {
        let z = ZMask::new(n, mask).unwrap();
        let size = 1usize << (2 * z.weight());
        let set = sbpt_set(&z, n, size, rng.gen()).unwrap();
        let cfg = EstimatorConfig::infinite(&set, 0);
        for seed in 0..5 {
            let state = haar_state(n, seed).unwrap();
            let a = mitigated_estimate(&state, &z, &lam, &cfg).unwrap();
            assert!(
                (a - state.z_expectation(&z)).abs() <= 1e-10,
                "mask {mask:b} seed {seed}"
            );
        }
    }
}

/// Commutator-sign diagonal of a Pauli in the 4^n transfer-matrix basis.
fn eta_diagonal(q: &PauliString, n: usize) -> Vec<f64> {
    let pdim = 1usize << (2 * n);
    (0..pdim)
        .map(|idx| {
            let p = PauliString::from_index(n, idx);
            memtwirl::eta(q, &p).unwrap() as f64
        })
        .collect()
}

#[test]
fn estimator_matches_the_algebraic_channel_pipeline() {
    // v must equal (1/|S|) sum_q <<Z_eff| P_q R C U P'_q |rho>> with
    // P'_q the member conjugated through the inverse circuit, R the
    // embedded classical readout channel, C the effective gate-error
    // channel, and U the ideal circuit. Built here entirely from dense
    // transfer-matrix algebra.
    let n = 3usize;
    let pdim = 1usize << (2 * n);
    let dim = 1usize << n;
    let mut rng = ChaCha8Rng::seed_from_u64(61);

    let lam = random_classical_noise(n, &mut rng).build().unwrap();
    let source = ZMask::full(n);
    let (circuit, z_eff) = compile_to_weight(&source, 1).unwrap();
    let gnoise = GateNoiseParams { p1: 0.0, p2: 0.02, beta: 0.05 };
    let set = sbpt_set(&z_eff, n, 16, 9).unwrap();
    let state = haar_state(n, 4).unwrap();

    let cfg = EstimatorConfig {
        twirl: &set,
        circuit: Some(&circuit),
        gnoise: Some(gnoise),
        shots: ShotBudget::Infinite,
        seed: 0,
    };
    let v_est = noisy_expectation(&state, &z_eff, &lam, &cfg).unwrap();

    // State vector in the Pauli basis: rho_j = Tr(rho P_j) / 2^n.
    let rho_vec: Vec<f64> = (0..pdim)
        .map(|idx| {
            let pm = common::pauli_dense(&PauliString::from_index(n, idx));
            let mut tr = common::C0;
            for a in 0..dim {
                for b in 0..dim {
                    tr += state.amplitudes()[a].conj() * pm[a * dim + b] * state.amplitudes()[b];
                }
            }
            tr.re / dim as f64
        })
        .collect();

    // Readout channel embedded in the full Pauli basis: nonzero only on
    // the Z-subset index pairs.
    let rz = lambda_to_ptm(&lam);
    let mut r_full = vec![0.0; pdim * pdim];
    for r in 0..dim {
        for s in 0..dim {
            let pr = ZMask::new(n, r).unwrap().phi_index();
            let ps = ZMask::new(n, s).unwrap().phi_index();
            r_full[pr * pdim + ps] = rz.entry(r, s);
        }
    }

    let c_ptm = effective_gate_channel(&circuit, &gnoise).unwrap();
    let mut u_ptm = vec![0.0; pdim * pdim];
    for i in 0..pdim {
        u_ptm[i * pdim + i] = 1.0;
    }
    for &g in circuit.gates() {
        u_ptm = ptm_compose(&cx_ptm(n, g), &u_ptm, n);
    }

    let inverse = circuit.inverted();
    let mut v_alg = 0.0;
    for member in set.members() {
        let phys = inverse.conjugate_pauli(member).unwrap();
        let phys_diag = eta_diagonal(&phys, n);
        let virt_diag = eta_diagonal(member, n);
        // Row vector e_{phi(z_eff)} P_q applied through R C U P'_q.
        let mut vec_in: Vec<f64> = (0..pdim).map(|j| phys_diag[j] * rho_vec[j]).collect();
        vec_in = mat_vec(&u_ptm, &vec_in, pdim);
        vec_in = mat_vec(&c_ptm, &vec_in, pdim);
        vec_in = mat_vec(&r_full, &vec_in, pdim);
        let idx = z_eff.phi_index();
        v_alg += virt_diag[idx] * vec_in[idx] * dim as f64;
    }
    v_alg /= set.len() as f64;

    assert!(
        (v_est - v_alg).abs() < 1e-10,
        "estimator {v_est} vs algebraic {v_alg}"
    );
}

fn mat_vec(m: &[f64], v: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for i in 0..dim {
        let row = &m[i * dim..(i + 1) * dim];
        out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

#[test]
fn finite_shot_transformation_pipeline_converges() {
    // Sampled trajectories through a noisy measurement circuit must
    // agree with the exact density-channel value up to shot noise.
    let n = 3usize;
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let lam = random_classical_noise(n, &mut rng).build().unwrap();
    let source = ZMask::full(n);
    let (circuit, z_eff) = compile_to_weight(&source, 1).unwrap();
    let gnoise = GateNoiseParams { p1: 0.0, p2: 0.05, beta: 0.02 };
    let set = sbpt_set(&z_eff, n, 4, 2).unwrap();
    let state = haar_state(n, 12).unwrap();

    let exact_cfg = EstimatorConfig {
        twirl: &set,
        circuit: Some(&circuit),
        gnoise: Some(gnoise),
        shots: ShotBudget::Infinite,
        seed: 0,
    };
    let exact = mitigated_estimate(&state, &z_eff, &lam, &exact_cfg).unwrap();

    let sampled_cfg = EstimatorConfig { shots: ShotBudget::Finite(400_000), ..exact_cfg };
    let sampled = mitigated_estimate(&state, &z_eff, &lam, &sampled_cfg).unwrap();
    assert!(
        (sampled - exact).abs() < 1e-2,
        "sampled {sampled} vs exact {exact}"
    );

    // Identical seeds reproduce the sampled value bit for bit.
    let again = mitigated_estimate(&state, &z_eff, &lam, &sampled_cfg).unwrap();
    assert_eq!(sampled, again);
}

#[test]
fn subsystem_bound_never_exceeds_random_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let n = 4usize;
    let r: ZMask = "ZZII".parse().unwrap();
    for trial in 0..1000 {
        let lam = random_classical_noise(n, &mut rng).build().unwrap();
        let ptm = lambda_to_ptm(&lam);
        let inputs = BoundInputs { ptm: &ptm, r, set_size: 64, delta: 0.05 };
        let t1 = error_bound_random(&inputs).unwrap();
        let t3 = error_bound_subsystem(&inputs).unwrap();
        assert!(t3.kappa < t1.kappa);
        assert!(t3.off_diag_sum <= t1.off_diag_sum + 1e-15);
        if t1.dominance && t3.dominance {
            assert!(t3.bound <= t1.bound + 1e-15, "trial {trial}");
        }
    }
}

#[test]
fn random_bound_covers_realized_errors() {
    // Smaller sibling of the acceptance-level coverage run.
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let n = 4usize;
    let lam = random_classical_noise(n, &mut rng).build().unwrap();
    let ptm = lambda_to_ptm(&lam);
    let r: ZMask = "ZZII".parse().unwrap();
    let inputs = BoundInputs { ptm: &ptm, r, set_size: 64, delta: 0.05 };
    let report = error_bound_random(&inputs).unwrap();
    assert!(report.dominance);
    let trials = 200usize;
    let mut exceed = 0usize;
    for seed in 0..trials {
        let set = random_twirl_set(n, 64, seed as u64).unwrap();
        let cfg = EstimatorConfig::infinite(&set, 0);
        let state = haar_state(n, 1000 + seed as u64).unwrap();
        let a = mitigated_estimate(&state, &r, &lam, &cfg).unwrap();
        if (a - state.z_expectation(&r)).abs() > report.bound {
            exceed += 1;
        }
    }
    assert!(
        (exceed as f64) / (trials as f64) <= 0.05 + 0.03,
        "{exceed}/{trials} above the bound"
    );
}
