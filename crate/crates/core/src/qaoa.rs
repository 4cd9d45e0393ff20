//! Ideal statevector simulation of MAXCUT QAOA.
//!
//! The phase separator multiplies amplitude `z` by `exp(-i * gamma * cut(z))`
//! — the cost operator is the cut-value diagonal itself, so the same table
//! drives phase application, expectation, sampling, and correlation
//! extraction. The mixer applies `exp(-i * beta * X)` per qubit as a
//! two-point butterfly. Bit `i` of a basis index is node `i`'s side.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::neldermead;
use crate::seeds;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Hard cap on simulated qubits (amplitude storage doubles per qubit).
pub const MAX_QUBITS: usize = 26;

/// QAOA angles, one `(gamma, beta)` pair per layer.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Self {
        assert_eq!(gammas.len(), betas.len(), "gamma/beta length mismatch");
        assert!(!gammas.is_empty(), "depth must be >= 1");
        QaoaParams { gammas, betas }
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    /// Flat `[gammas..., betas...]` layout used by the optimizer.
    fn from_flat(x: &[f64]) -> Self {
        let p = x.len() / 2;
        QaoaParams::new(x[..p].to_vec(), x[p..].to_vec())
    }
}

/// Cut value of every bitstring: entry `z` is the cut of the assignment
/// whose node `i` sits on side `bit_i(z)`.
#[derive(Debug, Clone)]
pub struct CostDiagonal {
    values: Vec<f64>,
    n: usize,
}

impl CostDiagonal {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }
}

/// Builds the cut-value diagonal by adding each edge's weight to the two
/// quadrant patterns where the endpoint bits differ (one block-add per edge
/// instead of a per-bitstring edge scan).
pub fn cost_diagonal(g: &WeightedGraph) -> Result<CostDiagonal> {
    let n = g.node_count();
    if n > MAX_QUBITS {
        return Err(Error::Capacity { n, max: MAX_QUBITS });
    }
    let len = 1usize << n;
    let mut values = vec![0.0f64; len];
    for e in g.edges() {
        let (u, v) = (e.u.min(e.v), e.u.max(e.v));
        let (su, sv) = (1usize << u, 1usize << v);
        let mut base_v = 0;
        while base_v < len {
            let mut base_u = 0;
            while base_u < sv {
                // bit_u = 1, bit_v = 0 run, then bit_u = 0, bit_v = 1 run.
                for z in (base_v + base_u + su)..(base_v + base_u + 2 * su) {
                    values[z] += e.w;
                }
                for z in (base_v + sv + base_u)..(base_v + sv + base_u + su) {
                    values[z] += e.w;
                }
                base_u += 2 * su;
            }
            base_v += 2 * sv;
        }
    }
    Ok(CostDiagonal { values, n })
}

/// `2^n` complex amplitudes.
#[derive(Debug, Clone)]
pub struct StateVector {
    amps: Vec<Complex64>,
    n: usize,
}

impl StateVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn uniform_amps(n: usize) -> Vec<Complex64> {
    let len = 1usize << n;
    vec![Complex64::new(1.0 / (len as f64).sqrt(), 0.0); len]
}

/// Qubits at or below this index are rotated inside one cache-resident
/// block (2^13 amplitudes = 128 KiB); higher qubits get strided passes.
const BLOCK_BITS: usize = 13;

fn apply_phase(amps: &mut [Complex64], values: &[f64], gamma: f64) {
    for (a, &v) in amps.iter_mut().zip(values) {
        let (s, c) = crate::fastmath::sin_cos(-gamma * v);
        *a *= Complex64::new(c, s);
    }
}

/// Rotates `qubit` (must index inside `slice`) by the X-rotation butterfly
/// `a' = cos b * a - i sin b * partner`.
fn rotate_qubit(slice: &mut [Complex64], qubit: usize, cos: f64, sin: f64) {
    let stride = 1usize << qubit;
    for block in slice.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let na = Complex64::new(cos * a.re + sin * b.im, cos * a.im - sin * b.re);
            let nb = Complex64::new(cos * b.re + sin * a.im, cos * b.im - sin * a.re);
            *a = na;
            *b = nb;
        }
    }
}

/// Rotates two high qubits `u < v` in a single pass (radix-4: half the
/// memory traffic of two strided passes).
fn rotate_qubit_pair(amps: &mut [Complex64], u: usize, v: usize, cos: f64, sin: f64) {
    let (su, sv) = (1usize << u, 1usize << v);
    let mut base_v = 0;
    while base_v < amps.len() {
        let mut base_u = 0;
        while base_u < sv {
            let start = base_v + base_u;
            for off in start..start + su {
                let i00 = off;
                let i01 = off + su;
                let i10 = off + sv;
                let i11 = off + sv + su;
                let (a00, a01, a10, a11) = (amps[i00], amps[i01], amps[i10], amps[i11]);
                // qubit u on (a00,a01) and (a10,a11), then qubit v.
                let b00 = Complex64::new(cos * a00.re + sin * a01.im, cos * a00.im - sin * a01.re);
                let b01 = Complex64::new(cos * a01.re + sin * a00.im, cos * a01.im - sin * a00.re);
                let b10 = Complex64::new(cos * a10.re + sin * a11.im, cos * a10.im - sin * a11.re);
                let b11 = Complex64::new(cos * a11.re + sin * a10.im, cos * a11.im - sin * a10.re);
                amps[i00] = Complex64::new(cos * b00.re + sin * b10.im, cos * b00.im - sin * b10.re);
                amps[i10] = Complex64::new(cos * b10.re + sin * b00.im, cos * b10.im - sin * b00.re);
                amps[i01] = Complex64::new(cos * b01.re + sin * b11.im, cos * b01.im - sin * b11.re);
                amps[i11] = Complex64::new(cos * b11.re + sin * b01.im, cos * b11.im - sin * b01.re);
            }
            base_u += 2 * su;
        }
        base_v += 2 * sv;
    }
}

/// One transverse-field mixer layer: `exp(-i beta X)` on every qubit.
fn apply_mixer(amps: &mut [Complex64], n: usize, beta: f64) {
    let (sin, cos) = beta.sin_cos();
    let low = n.min(BLOCK_BITS);
    for chunk in amps.chunks_exact_mut(1usize << low) {
        for qubit in 0..low {
            rotate_qubit(chunk, qubit, cos, sin);
        }
    }
    let mut qubit = low;
    while qubit + 2 <= n {
        rotate_qubit_pair(amps, qubit, qubit + 1, cos, sin);
        qubit += 2;
    }
    if qubit < n {
        rotate_qubit(amps, qubit, cos, sin);
    }
}

fn evolve_in_place(amps: &mut [Complex64], cd: &CostDiagonal, params: &QaoaParams) {
    let n = cd.n;
    let low = n.min(BLOCK_BITS);
    let block = 1usize << low;
    for layer in 0..params.depth() {
        let gamma = params.gammas[layer];
        let (sin, cos) = params.betas[layer].sin_cos();
        // Phase and the low-qubit rotations share one pass over memory.
        for (idx, chunk) in amps.chunks_exact_mut(block).enumerate() {
            let voff = idx * block;
            apply_phase(chunk, &cd.values[voff..voff + block], gamma);
            for qubit in 0..low {
                rotate_qubit(chunk, qubit, cos, sin);
            }
        }
        let mut qubit = low;
        while qubit + 2 <= n {
            rotate_qubit_pair(amps, qubit, qubit + 1, cos, sin);
            qubit += 2;
        }
        if qubit < n {
            rotate_qubit(amps, qubit, cos, sin);
        }
    }
}

/// Prepares `U_M(beta_p) U_P(gamma_p) ... U_M(beta_1) U_P(gamma_1) |+>^n`.
pub fn qaoa_state(cd: &CostDiagonal, params: &QaoaParams) -> StateVector {
    let mut amps = uniform_amps(cd.n);
    evolve_in_place(&mut amps, cd, params);
    StateVector { amps, n: cd.n }
}

/// `sum_z |amp_z|^2 * values[z]`, chunked for summation stability.
pub fn expectation(state: &StateVector, cd: &CostDiagonal) -> f64 {
    assert_eq!(state.n, cd.n, "state/diagonal qubit count mismatch");
    expectation_raw(&state.amps, &cd.values)
}

fn expectation_raw(amps: &[Complex64], values: &[f64]) -> f64 {
    let mut total = 0.0;
    for (achunk, vchunk) in amps.chunks(4096).zip(values.chunks(4096)) {
        let mut partial = 0.0;
        for (a, &v) in achunk.iter().zip(vchunk) {
            partial += a.norm_sqr() * v;
        }
        total += partial;
    }
    total
}

/// Measurement outcome of [`sample`].
#[derive(Debug, Clone)]
pub struct SampleOutcome {
    /// Sampled bitstring -> occurrence count.
    pub counts: BTreeMap<u64, u32>,
    /// Sampled bitstring with the largest cut (lowest index on ties).
    pub best_bitstring: u64,
    pub best_cut: f64,
}

/// Draws `shots` bitstrings from `|amp|^2` (sorted-uniform sweep, so one
/// pass over the amplitudes regardless of shot count).
pub fn sample(state: &StateVector, cd: &CostDiagonal, shots: u32, seed: u64) -> SampleOutcome {
    assert_eq!(state.n, cd.n, "state/diagonal qubit count mismatch");
    assert!(shots >= 1, "shots must be >= 1");
    let total: f64 = state.amps.iter().map(|a| a.norm_sqr()).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws: Vec<f64> = (0..shots).map(|_| rng.gen_range(0.0..total)).collect();
    draws.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
    let mut cum = 0.0;
    let mut next = 0usize;
    let mut last_nonzero = 0u64;
    for (z, a) in state.amps.iter().enumerate() {
        let p = a.norm_sqr();
        if p > 0.0 {
            last_nonzero = z as u64;
        }
        cum += p;
        while next < draws.len() && draws[next] < cum {
            *counts.entry(z as u64).or_insert(0) += 1;
            next += 1;
        }
        if next == draws.len() {
            break;
        }
    }
    // Rounding tail: park any unassigned draws on the last nonzero entry.
    if next < draws.len() {
        *counts.entry(last_nonzero).or_insert(0) += (draws.len() - next) as u32;
    }

    let (&best_bitstring, _) = counts
        .iter()
        .max_by(|(za, _), (zb, _)| {
            let ca = cd.values[**za as usize];
            let cb = cd.values[**zb as usize];
            ca.partial_cmp(&cb).unwrap().then(zb.cmp(za))
        })
        .expect("at least one shot");
    SampleOutcome {
        counts,
        best_bitstring,
        best_cut: cd.values[best_bitstring as usize],
    }
}

/// `<Z_i>` for every node and `<Z_i Z_j>` for every requested edge, with the
/// spin convention `Z|0> = +|0>`.
pub fn pauli_correlations(
    state: &StateVector,
    edges: &[(usize, usize)],
) -> (Vec<f64>, Vec<f64>) {
    let n = state.n;
    let mut z = vec![0.0f64; n];
    for (idx, a) in state.amps.iter().enumerate() {
        let p = a.norm_sqr();
        for (i, zi) in z.iter_mut().enumerate() {
            if (idx >> i) & 1 == 0 {
                *zi += p;
            } else {
                *zi -= p;
            }
        }
    }
    let zz = edges
        .iter()
        .map(|&(u, v)| {
            assert!(u < n && v < n, "edge endpoint out of range");
            let mask = (1u64 << u) | (1u64 << v);
            state
                .amps
                .iter()
                .enumerate()
                .map(|(idx, a)| {
                    let p = a.norm_sqr();
                    if (idx as u64 & mask).count_ones() % 2 == 0 {
                        p
                    } else {
                        -p
                    }
                })
                .sum()
        })
        .collect();
    (z, zz)
}

/// Maximizes the expectation with multistart simplex descent.
///
/// Depths are optimized progressively: the depth-`d` round starts once from
/// the best depth-`(d-1)` parameters padded with a zero layer (at depth 1
/// that start is all zeros, whose expectation is exactly `W/2`) plus
/// `multistarts - 1` seeded random starts with `gamma in [0, pi)`,
/// `beta in [0, pi/2)`. Each start spends at most `eval_budget` evaluations
/// and stops early once the simplex objective spread is below 1e-6.
pub fn optimize_params(
    cd: &CostDiagonal,
    p: usize,
    multistarts: usize,
    eval_budget: usize,
    seed: u64,
) -> (QaoaParams, f64) {
    assert!(p >= 1, "depth must be >= 1");
    assert!(multistarts >= 1, "multistarts must be >= 1");
    let mut scratch = uniform_amps(cd.n);
    let mut eval = |x: &[f64]| -> f64 {
        let params = QaoaParams::from_flat(x);
        scratch
            .iter_mut()
            .for_each(|a| *a = Complex64::new(1.0 / (scratch_len(cd.n) as f64).sqrt(), 0.0));
        evolve_in_place(&mut scratch, cd, &params);
        expectation_raw(&scratch, &cd.values)
    };

    let mut best_prev: Option<(Vec<f64>, f64)> = None; // flat params of depth d-1
    for depth in 1..=p {
        let mut best_here: Option<(Vec<f64>, f64, usize)> = None;
        for start_idx in 0..multistarts {
            let x0 = if start_idx == 0 {
                // Padded start: previous depth's optimum with a zero layer.
                match &best_prev {
                    Some((flat, _)) => {
                        let d = depth - 1;
                        let mut x = Vec::with_capacity(2 * depth);
                        x.extend_from_slice(&flat[..d]);
                        x.push(0.0);
                        x.extend_from_slice(&flat[d..]);
                        x.push(0.0);
                        x
                    }
                    None => vec![0.0; 2 * depth],
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seeds::mix2(
                    seed,
                    depth as u64,
                    start_idx as u64,
                ));
                let gammas: Vec<f64> =
                    (0..depth).map(|_| rng.gen_range(0.0..std::f64::consts::PI)).collect();
                let betas: Vec<f64> = (0..depth)
                    .map(|_| rng.gen_range(0.0..std::f64::consts::FRAC_PI_2))
                    .collect();
                let mut x = gammas;
                x.extend(betas);
                x
            };
            let result = neldermead::minimize(|x| -eval(x), &x0, 0.25, eval_budget, 1e-6);
            let value = -result.value;
            let candidate = (result.x, value, start_idx);
            let better = match &best_here {
                None => true,
                Some((_, bv, bi)) => value > *bv || (value == *bv && start_idx < *bi),
            };
            if better {
                best_here = Some(candidate);
            }
        }
        let (flat, value, _) = best_here.expect("at least one start");
        best_prev = Some((flat, value));
    }
    let (flat, value) = best_prev.expect("depth >= 1");
    (QaoaParams::from_flat(&flat), value)
}

fn scratch_len(n: usize) -> usize {
    1usize << n
}
