//! Coarsening hierarchy: sphere-embedding relaxation, nearest-neighbor
//! matching, and algebraic coarse-graph assembly.
//!
//! Each level embeds its nodes on a unit sphere, spreads weighted neighbors
//! apart with node-wise correction sweeps, pairs nodes with their nearest
//! embedded neighbor, and contracts every pair. The coarse adjacency is the
//! restriction-operator product `P^T A P` with intra-pair self-loops dropped.

use crate::error::{Error, Result};
use crate::graph::{CutAssignment, GraphBuilder, WeightedGraph};
use crate::kdtree::KdTree;
use crate::seeds;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Unit-sphere positions, one row per node.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereEmbedding {
    positions: Vec<Vec<f64>>,
    dim: usize,
}

impl SphereEmbedding {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        &self.positions
    }

    pub fn position(&self, node: usize) -> &[f64] {
        &self.positions[node]
    }
}

/// Disjoint node pairs covering the graph, plus at most one leftover node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub singleton: Option<usize>,
}

/// Fine-to-coarse node map for one hierarchy level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMap {
    fine_to_coarse: Vec<usize>,
    coarse_count: usize,
}

impl LevelMap {
    pub fn coarse_of(&self, fine: usize) -> usize {
        self.fine_to_coarse[fine]
    }

    pub fn fine_count(&self) -> usize {
        self.fine_to_coarse.len()
    }

    pub fn coarse_count(&self) -> usize {
        self.coarse_count
    }
}

/// Coarsening hierarchy: `levels[0]` is the finest graph; `maps[l]` connects
/// level `l` to level `l + 1`.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    pub levels: Vec<WeightedGraph>,
    pub maps: Vec<LevelMap>,
    /// Wall-clock seconds spent coarsening each level (diagnostics only).
    pub level_seconds: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct LevelStats {
    pub n: usize,
    pub m: usize,
    pub seconds: f64,
}

impl Hierarchy {
    pub fn coarsest(&self) -> &WeightedGraph {
        self.levels.last().expect("hierarchy has at least one level")
    }

    /// Diagnostic JSON: `{"levels":[{"n":..,"m":..,"seconds":..}]}`.
    pub fn stats_json(&self) -> String {
        #[derive(Serialize)]
        struct Stats<'a> {
            levels: &'a [LevelStats],
        }
        let levels: Vec<LevelStats> = self
            .levels
            .iter()
            .enumerate()
            .map(|(l, g)| LevelStats {
                n: g.node_count(),
                m: g.edge_count(),
                seconds: self.level_seconds.get(l).copied().unwrap_or(0.0),
            })
            .collect();
        serde_json::to_string(&Stats { levels: &levels }).expect("stats serialize")
    }
}

/// Relaxation knobs. The defaults are cheap and empirically sufficient for
/// halving-quality matchings.
#[derive(Debug, Clone)]
pub struct RelaxConfig {
    pub dim: usize,
    pub max_sweeps: usize,
    pub tolerance: f64,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        RelaxConfig {
            dim: 5,
            max_sweeps: 30,
            tolerance: 1e-3,
        }
    }
}

/// Places every node uniformly in `[-1, 1]^d` projected to the unit sphere.
/// Near-zero draws are resampled.
pub fn init_embedding(g: &WeightedGraph, dim: usize, seed: u64) -> Result<SphereEmbedding> {
    if dim < 2 {
        return Err(Error::InvalidParam(format!(
            "embedding dimension must be >= 2, got {dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = Vec::with_capacity(g.node_count());
    for _ in 0..g.node_count() {
        loop {
            let mut p: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = norm2(&p);
            if norm > 1e-12 {
                for c in &mut p {
                    *c /= norm;
                }
                positions.push(p);
                break;
            }
        }
    }
    Ok(SphereEmbedding { positions, dim })
}

/// Node-wise correction sweeps pushing each node to the antipode of its
/// weighted neighbor centroid — the closed-form maximizer of
/// `sum w_ij * |p_i - p_j|^2` over the unit sphere. Sweeps run in node-id
/// order (Gauss-Seidel) and stop when the largest position change in a sweep
/// drops below `tolerance` or after `max_sweeps`.
pub fn relax_embedding(
    g: &WeightedGraph,
    emb: &SphereEmbedding,
    max_sweeps: usize,
    tolerance: f64,
) -> SphereEmbedding {
    assert_eq!(emb.positions.len(), g.node_count(), "embedding shape");
    let dim = emb.dim;
    let mut pos = emb.positions.clone();
    let mut centroid = vec![0.0; dim];
    for _ in 0..max_sweeps {
        let mut max_change: f64 = 0.0;
        for i in 0..g.node_count() {
            centroid.iter_mut().for_each(|c| *c = 0.0);
            for &(j, w) in g.neighbors(i) {
                for (c, pj) in centroid.iter_mut().zip(&pos[j]) {
                    *c += w * pj;
                }
            }
            let norm = norm2(&centroid);
            if norm <= 1e-12 {
                continue; // isolated or perfectly balanced: keep position
            }
            let mut change = 0.0;
            for (pi, c) in pos[i].iter_mut().zip(&centroid) {
                let next = -c / norm;
                change += (next - *pi) * (next - *pi);
                *pi = next;
            }
            max_change = max_change.max(change.sqrt());
        }
        if max_change < tolerance {
            break;
        }
    }
    SphereEmbedding {
        positions: pos,
        dim,
    }
}

/// Pairs each node (in a seeded random visit order) with its Euclidean
/// nearest unmatched node; adjacency is not required. Distance ties break to
/// the lowest node id. An odd leftover becomes the singleton.
pub fn match_nodes(g: &WeightedGraph, emb: &SphereEmbedding, seed: u64) -> Matching {
    assert_eq!(emb.positions.len(), g.node_count(), "embedding shape");
    let n = g.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let tree = KdTree::build(&emb.positions);
    let mut matched = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    let mut singleton = None;
    for &i in &order {
        if matched[i] {
            continue;
        }
        let found = tree.nearest_filtered(emb.position(i), &|j| j != i && !matched[j]);
        match found {
            Some((j, _)) => {
                matched[i] = true;
                matched[j] = true;
                pairs.push((i, j));
            }
            None => {
                matched[i] = true;
                singleton = Some(i);
            }
        }
    }
    Matching { pairs, singleton }
}

/// Contracts a matching: coarse adjacency is `P^T A P` with intra-pair
/// self-loops dropped and parallel edges merged; coarse volumes are sums.
/// Coarse ids follow pair order, then the singleton.
pub fn coarsen_once(g: &WeightedGraph, m: &Matching) -> Result<(WeightedGraph, LevelMap)> {
    let n = g.node_count();
    let mut fine_to_coarse = vec![usize::MAX; n];
    for (q, &(i, j)) in m.pairs.iter().enumerate() {
        if i >= n || j >= n {
            return Err(Error::NodeOutOfRange {
                node: i.max(j),
                count: n,
            });
        }
        fine_to_coarse[i] = q;
        fine_to_coarse[j] = q;
    }
    let mut coarse_count = m.pairs.len();
    if let Some(s) = m.singleton {
        if s >= n {
            return Err(Error::NodeOutOfRange { node: s, count: n });
        }
        fine_to_coarse[s] = coarse_count;
        coarse_count += 1;
    }
    if let Some(missing) = fine_to_coarse.iter().position(|&c| c == usize::MAX) {
        return Err(Error::MatchingIncomplete(format!(
            "node {missing} not covered"
        )));
    }

    let mut builder = GraphBuilder::new(coarse_count);
    for e in g.edges() {
        let (cu, cv) = (fine_to_coarse[e.u], fine_to_coarse[e.v]);
        if cu != cv {
            builder.add(cu, cv, e.w)?;
        }
    }
    let mut coarse = builder.finish();
    let mut volumes = vec![0u64; coarse_count];
    for (fine, &c) in fine_to_coarse.iter().enumerate() {
        volumes[c] += g.volume(fine);
    }
    coarse.set_volumes(volumes);
    Ok((
        coarse,
        LevelMap {
            fine_to_coarse,
            coarse_count,
        },
    ))
}

/// Repeats embed/relax/match/contract until the node count reaches
/// `coarsest_size` (or a level drops below 2 nodes). Level `l` derives its
/// randomness from `seed ^ l`.
pub fn build_hierarchy(
    g: &WeightedGraph,
    coarsest_size: usize,
    relax: &RelaxConfig,
    seed: u64,
) -> Result<Hierarchy> {
    if coarsest_size < 2 {
        return Err(Error::InvalidParam(format!(
            "coarsest size must be >= 2, got {coarsest_size}"
        )));
    }
    let mut levels = vec![g.clone()];
    let mut maps = Vec::new();
    let mut level_seconds = Vec::new();
    while levels.last().unwrap().node_count() > coarsest_size {
        let start = std::time::Instant::now();
        let level = levels.len() - 1;
        let cur = levels.last().unwrap();
        if cur.node_count() < 2 {
            break;
        }
        let level_seed = seed ^ level as u64;
        let emb = init_embedding(cur, relax.dim, seeds::mix(level_seed, 0x1e17))?;
        let emb = relax_embedding(cur, &emb, relax.max_sweeps, relax.tolerance);
        let matching = match_nodes(cur, &emb, seeds::mix(level_seed, 0x3a7c));
        let (coarse, map) = coarsen_once(cur, &matching)?;
        level_seconds.push(start.elapsed().as_secs_f64());
        maps.push(map);
        levels.push(coarse);
    }
    level_seconds.push(0.0); // coarsest level: nothing coarsened from it
    Ok(Hierarchy {
        levels,
        maps,
        level_seconds,
    })
}

/// Copies each coarse node's side to all fine nodes it aggregates.
pub fn interpolate(coarse_x: &CutAssignment, map: &LevelMap) -> CutAssignment {
    assert_eq!(
        coarse_x.len(),
        map.coarse_count(),
        "coarse assignment length {} does not match coarse node count {}",
        coarse_x.len(),
        map.coarse_count()
    );
    CutAssignment::new(
        map.fine_to_coarse
            .iter()
            .map(|&c| coarse_x.side(c))
            .collect(),
    )
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_value;

    #[test]
    fn init_embedding_unit_rows_and_determinism() {
        let g = WeightedGraph::from_edges(6, &[(0, 1, 1.0)]).unwrap();
        let a = init_embedding(&g, 5, 3).unwrap();
        let b = init_embedding(&g, 5, 3).unwrap();
        assert_eq!(a, b);
        for p in a.positions() {
            assert!((norm2(p) - 1.0).abs() < 1e-9);
        }
        assert!(init_embedding(&g, 1, 0).is_err());
    }

    #[test]
    fn init_embedding_rows_distinct() {
        let g = WeightedGraph::from_edges(1000, &[(0, 1, 1.0)]).unwrap();
        let emb = init_embedding(&g, 5, 17).unwrap();
        let mut rows: Vec<_> = emb
            .positions()
            .iter()
            .map(|p| p.iter().map(|c| c.to_bits()).collect::<Vec<_>>())
            .collect();
        rows.sort();
        rows.dedup();
        assert_eq!(rows.len(), 1000);
    }

    #[test]
    fn relax_two_nodes_antipodal() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        let emb = init_embedding(&g, 3, 5).unwrap();
        let relaxed = relax_embedding(&g, &emb, 50, 1e-9);
        let p0 = relaxed.position(0);
        let p1 = relaxed.position(1);
        for (a, b) in p0.iter().zip(p1) {
            assert!((a + b).abs() < 1e-6, "positions should be antipodal");
        }
    }

    #[test]
    fn relax_zero_weights_is_identity() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 0.0), (1, 2, 0.0)]).unwrap();
        let emb = init_embedding(&g, 4, 9).unwrap();
        let relaxed = relax_embedding(&g, &emb, 10, 1e-6);
        assert_eq!(emb, relaxed);
    }

    #[test]
    fn relax_objective_monotone_for_nonnegative_weights() {
        let g = crate::generate::random_weighted_graph(20, 0.3, 2.0, 4).unwrap();
        let mut emb = init_embedding(&g, 5, 4).unwrap();
        let objective = |e: &SphereEmbedding| -> f64 {
            g.edges()
                .iter()
                .map(|edge| {
                    let d2: f64 = e
                        .position(edge.u)
                        .iter()
                        .zip(e.position(edge.v))
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    edge.w * d2
                })
                .sum()
        };
        let mut prev = objective(&emb);
        for _ in 0..10 {
            emb = relax_embedding(&g, &emb, 1, 0.0);
            let cur = objective(&emb);
            assert!(cur >= prev - 1e-9);
            prev = cur;
        }
    }

    #[test]
    fn relax_rows_stay_unit_norm() {
        let g = crate::generate::random_weighted_graph(15, 0.4, 3.0, 8).unwrap();
        let emb = init_embedding(&g, 5, 8).unwrap();
        let relaxed = relax_embedding(&g, &emb, 30, 1e-3);
        for p in relaxed.positions() {
            assert!((norm2(p) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn match_two_nodes() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        let emb = init_embedding(&g, 2, 0).unwrap();
        let m = match_nodes(&g, &emb, 0);
        assert_eq!(m.pairs.len(), 1);
        assert_eq!(m.singleton, None);
    }

    #[test]
    fn match_five_nodes_has_singleton() {
        let g = WeightedGraph::from_edges(5, &[(0, 1, 1.0)]).unwrap();
        let emb = init_embedding(&g, 3, 1).unwrap();
        let m = match_nodes(&g, &emb, 1);
        assert_eq!(m.pairs.len(), 2);
        assert!(m.singleton.is_some());
    }

    #[test]
    fn match_is_partition() {
        let g = crate::generate::random_weighted_graph(31, 0.2, 1.0, 6).unwrap();
        let emb = init_embedding(&g, 5, 6).unwrap();
        let m = match_nodes(&g, &emb, 6);
        let mut seen = vec![0; 31];
        for &(i, j) in &m.pairs {
            assert_ne!(i, j);
            seen[i] += 1;
            seen[j] += 1;
        }
        if let Some(s) = m.singleton {
            seen[s] += 1;
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn match_agrees_with_quadratic_oracle() {
        // Same visit order, same (dist2, id) rule, scanning all unmatched.
        let g = WeightedGraph::from_edges(16, &[(0, 1, 1.0)]).unwrap();
        let emb = init_embedding(&g, 4, 12).unwrap();
        let m = match_nodes(&g, &emb, 12);

        let mut order: Vec<usize> = (0..16).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(12));
        let mut matched = vec![false; 16];
        let mut pairs = Vec::new();
        for &i in &order {
            if matched[i] {
                continue;
            }
            let best = (0..16)
                .filter(|&j| j != i && !matched[j])
                .map(|j| {
                    let d2: f64 = emb
                        .position(i)
                        .iter()
                        .zip(emb.position(j))
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    (d2, j)
                })
                .min_by(|a, b| a.partial_cmp(b).unwrap());
            if let Some((_, j)) = best {
                matched[i] = true;
                matched[j] = true;
                pairs.push((i, j));
            }
        }
        assert_eq!(m.pairs, pairs);
    }

    #[test]
    fn coarsen_p4_pairs() {
        let g =
            WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let m = Matching {
            pairs: vec![(0, 1), (2, 3)],
            singleton: None,
        };
        let (coarse, map) = coarsen_once(&g, &m).unwrap();
        assert_eq!(coarse.node_count(), 2);
        assert_eq!(coarse.edge_count(), 1);
        assert_eq!(coarse.edges()[0].w, 1.0);
        assert_eq!(map.coarse_of(0), 0);
        assert_eq!(map.coarse_of(3), 1);
        assert_eq!(coarse.volumes(), &[2, 2]);
    }

    #[test]
    fn coarsen_triangle_with_singleton() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let m = Matching {
            pairs: vec![(0, 1)],
            singleton: Some(2),
        };
        let (coarse, _) = coarsen_once(&g, &m).unwrap();
        assert_eq!(coarse.node_count(), 2);
        assert_eq!(coarse.edge_count(), 1);
        assert_eq!(coarse.edges()[0].w, 2.0); // w02 + w12 accumulated
    }

    #[test]
    fn coarsen_requires_cover() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.0)]).unwrap();
        let m = Matching {
            pairs: vec![(0, 1)],
            singleton: None,
        };
        assert!(coarsen_once(&g, &m).is_err());
    }

    #[test]
    fn interpolate_preserves_cut() {
        let g =
            WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let m = Matching {
            pairs: vec![(0, 1), (2, 3)],
            singleton: None,
        };
        let (coarse, map) = coarsen_once(&g, &m).unwrap();
        let coarse_x = CutAssignment::new(vec![0, 1]);
        let fine_x = interpolate(&coarse_x, &map);
        assert_eq!(fine_x.sides(), &[0, 0, 1, 1]);
        assert_eq!(cut_value(&coarse, &coarse_x), cut_value(&g, &fine_x));
    }

    #[test]
    fn hierarchy_shapes_and_determinism() {
        let g = crate::generate::random_weighted_graph(100, 0.1, 1.0, 2).unwrap();
        let h1 = build_hierarchy(&g, 12, &RelaxConfig::default(), 7).unwrap();
        let h2 = build_hierarchy(&g, 12, &RelaxConfig::default(), 7).unwrap();
        assert_eq!(h1.levels.len(), h2.levels.len());
        for (a, b) in h1.levels.iter().zip(&h2.levels) {
            assert_eq!(a, b);
        }
        assert_eq!(h1.levels.len(), h1.maps.len() + 1);
        // |V_{l+1}| = ceil(|V_l| / 2) at every level.
        for w in h1.levels.windows(2) {
            assert_eq!(w[1].node_count(), w[0].node_count().div_ceil(2));
        }
        assert!(h1.coarsest().node_count() <= 12);
        // Volume conservation at every level.
        for level in &h1.levels {
            assert_eq!(level.volumes().iter().sum::<u64>(), 100);
        }
    }

    #[test]
    fn hierarchy_single_level_when_small() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0)]).unwrap();
        let h = build_hierarchy(&g, 10, &RelaxConfig::default(), 0).unwrap();
        assert_eq!(h.levels.len(), 1);
        assert!(h.maps.is_empty());
    }
}
