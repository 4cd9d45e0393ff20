//! Classical baseline solvers: exact enumeration for small graphs and
//! multistart steepest-ascent flip search for the coarsest level.

use crate::error::{Error, Result};
use crate::graph::{apply_flip, cut_value, gain_vector, CutAssignment, WeightedGraph};
use crate::seeds;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest node count brute force will enumerate (2^(n-1) assignments).
pub const BRUTE_FORCE_MAX: usize = 24;

/// Multistart local-search configuration.
#[derive(Debug, Clone)]
pub struct LsConfig {
    pub restarts: usize,
    /// Flip cap per restart; `None` means `50 * n`.
    pub max_flips: Option<usize>,
    pub seed: u64,
}

impl Default for LsConfig {
    fn default() -> Self {
        LsConfig {
            restarts: 64,
            max_flips: None,
            seed: 0,
        }
    }
}

/// Exact maximum cut by enumeration with node 0 pinned to side 0 (the cut is
/// invariant under global complement). Walks assignments in Gray-code order
/// so each step is an `O(deg)` flip update.
pub fn brute_force(g: &WeightedGraph) -> Result<(CutAssignment, f64)> {
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::Capacity {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    if n == 0 {
        return Ok((CutAssignment::zeros(0), 0.0));
    }
    let mut x = CutAssignment::zeros(n);
    let mut gains = gain_vector(g, &x);
    let mut cut = 0.0;
    let mut best_cut = 0.0;
    let mut best_code: u64 = 0;
    let steps: u64 = if n == 1 { 0 } else { 1u64 << (n - 1) };
    for step in 1..steps {
        // Gray code over nodes 1..n: node flipped at `step` is trailing_zeros + 1.
        let node = step.trailing_zeros() as usize + 1;
        cut += gains.gain(node);
        apply_flip(g, &mut x, &mut gains, node);
        if cut > best_cut {
            best_cut = cut;
            best_code = step ^ (step >> 1);
        }
    }
    let mut best = CutAssignment::zeros(n);
    for node in 1..n {
        if (best_code >> (node - 1)) & 1 == 1 {
            best.flip(node);
        }
    }
    // Report the directly evaluated cut; the accumulator only ranks.
    let exact = cut_value(g, &best);
    debug_assert!((exact - best_cut).abs() <= 1e-9 * (1.0 + best_cut.abs()));
    Ok((best, exact))
}

/// Steepest-ascent 1-flip search: repeatedly flips the max-gain node while
/// the max gain is positive (ties to the lowest id). Returns a 1-flip-local
/// optimum unless the flip cap is hit first.
pub fn steepest_flip(g: &WeightedGraph, x: &CutAssignment) -> CutAssignment {
    steepest_flip_capped(g, x, 50 * g.node_count().max(1))
}

pub fn steepest_flip_capped(
    g: &WeightedGraph,
    x: &CutAssignment,
    max_flips: usize,
) -> CutAssignment {
    let mut x = x.clone();
    let mut gains = gain_vector(g, &x);
    for _ in 0..max_flips {
        let mut best_node = None;
        let mut best_gain = 0.0;
        for (node, &gain) in gains.gains().iter().enumerate() {
            if gain > best_gain {
                best_gain = gain;
                best_node = Some(node);
            }
        }
        match best_node {
            Some(node) => apply_flip(g, &mut x, &mut gains, node),
            None => break,
        }
    }
    x
}

/// Best of `restarts` steepest-ascent runs from seeded random assignments.
/// The winner is picked by `(cut, restart index)` so results do not depend
/// on evaluation order.
pub fn multistart_ls(g: &WeightedGraph, cfg: &LsConfig) -> (CutAssignment, f64) {
    assert!(cfg.restarts >= 1, "restarts must be >= 1");
    let n = g.node_count();
    let max_flips = cfg.max_flips.unwrap_or(50 * n.max(1));
    let mut best: Option<(f64, CutAssignment)> = None;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds::mix2(cfg.seed, 0x4c53, restart as u64));
        let start = CutAssignment::new((0..n).map(|_| rng.gen_range(0..=1u8)).collect());
        let local = steepest_flip_capped(g, &start, max_flips);
        let cut = cut_value(g, &local);
        if best.as_ref().map_or(true, |(bc, _)| cut > *bc) {
            best = Some((cut, local));
        }
    }
    let (cut, x) = best.expect("at least one restart");
    (x, cut)
}
