//! Benchmark-graph generators.

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Karloff intersection graph: vertices are all `b`-subsets of `{1..2b}`,
/// with a unit-weight edge between subsets whose intersection has size
/// exactly `t`. These instances are adversarial for SDP-rounding heuristics.
pub fn karloff_generate(b: usize, t: usize) -> Result<WeightedGraph> {
    if b < 2 {
        return Err(Error::InvalidParam(format!("b must be >= 2, got {b}")));
    }
    if t >= b {
        return Err(Error::InvalidParam(format!(
            "intersection size t={t} must be < b={b}"
        )));
    }
    if b > 12 {
        return Err(Error::InvalidParam(format!(
            "b={b} exceeds the supported range (C(2b,b) vertices grow too fast)"
        )));
    }
    let universe = 2 * b;
    let mut subsets: Vec<u32> = Vec::new();
    // Enumerate b-subsets of {0..2b} as bitmasks in lexicographic order.
    let mut cur: u32 = (1u32 << b) - 1;
    let limit: u32 = 1u32 << universe;
    while cur < limit {
        subsets.push(cur);
        // Gosper's hack: next bitmask with the same popcount.
        let low = cur & cur.wrapping_neg();
        let carry = cur + low;
        cur = (((carry ^ cur) >> 2) / low) | carry;
    }
    let n = subsets.len();
    let mut builder = GraphBuilder::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if (subsets[i] & subsets[j]).count_ones() as usize == t {
                builder.add(i, j, 1.0)?;
            }
        }
    }
    Ok(builder.finish())
}

/// Seeded Erdős–Rényi graph with weights uniform in `[0, weight_upper)`.
///
/// Connectivity is enforced: up to 100 resamples, then a random path is
/// threaded across the remaining components.
pub fn random_weighted_graph(
    n: usize,
    edge_probability: f64,
    weight_upper: f64,
    seed: u64,
) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("n must be >= 2, got {n}")));
    }
    if !(edge_probability > 0.0 && edge_probability <= 1.0) {
        return Err(Error::InvalidParam(format!(
            "edge probability must be in (0, 1], got {edge_probability}"
        )));
    }
    if weight_upper <= 0.0 {
        return Err(Error::InvalidParam(format!(
            "weight upper bound must be > 0, got {weight_upper}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..100 {
        let g = sample_er(n, edge_probability, weight_upper, &mut rng)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    // Still disconnected: keep the last sample and stitch the components
    // together with a random path.
    let g = sample_er(n, edge_probability, weight_upper, &mut rng)?;
    let mut components = g.components();
    components.shuffle(&mut rng);
    let mut builder = GraphBuilder::new(n);
    for e in g.edges() {
        builder.add(e.u, e.v, e.w)?;
    }
    for pair in components.windows(2) {
        let u = pair[0][rng.gen_range(0..pair[0].len())];
        let v = pair[1][rng.gen_range(0..pair[1].len())];
        builder.add(u, v, rng.gen_range(0.0..weight_upper))?;
    }
    Ok(builder.finish())
}

fn sample_er(
    n: usize,
    p: f64,
    weight_upper: f64,
    rng: &mut ChaCha8Rng,
) -> Result<WeightedGraph> {
    let mut builder = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                builder.add(u, v, rng.gen_range(0.0..weight_upper))?;
            }
        }
    }
    Ok(builder.finish())
}
