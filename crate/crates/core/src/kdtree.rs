//! Small K-D tree over low-dimensional points with masked nearest-neighbor
//! queries.
//!
//! The matching pass needs "nearest point whose id passes a filter", with
//! ties broken by lowest id so results are reproducible. Off-the-shelf trees
//! don't expose that combination, and the tree here is a few dozen lines.

/// Static K-D tree over `n` points of fixed dimension.
pub struct KdTree<'a> {
    points: &'a [Vec<f64>],
    dim: usize,
    /// Point ids arranged in tree order; the midpoint of each subrange is
    /// that subtree's split point (implicit layout, no heap nodes).
    order: Vec<usize>,
    split_dim: Vec<usize>,
}

impl<'a> KdTree<'a> {
    pub fn build(points: &'a [Vec<f64>]) -> Self {
        let dim = points.first().map_or(0, |p| p.len());
        let mut tree = KdTree {
            points,
            dim,
            order: (0..points.len()).collect(),
            split_dim: vec![0; points.len()],
        };
        if !points.is_empty() {
            tree.build_range(0, points.len(), 0);
        }
        tree
    }

    fn build_range(&mut self, lo: usize, hi: usize, depth: usize) {
        if hi - lo <= 1 {
            if hi > lo {
                self.split_dim[lo] = depth % self.dim;
            }
            return;
        }
        let d = depth % self.dim;
        let mid = lo + (hi - lo) / 2;
        let points = self.points;
        self.order[lo..hi].select_nth_unstable_by(mid - lo, |&a, &b| {
            points[a][d]
                .partial_cmp(&points[b][d])
                .unwrap()
                .then(a.cmp(&b))
        });
        self.split_dim[mid] = d;
        self.build_range(lo, mid, depth + 1);
        self.build_range(mid + 1, hi, depth + 1);
    }

    /// Nearest point to `query` among those with `accept(id) == true`,
    /// ranked by `(squared distance, id)`. Returns `(id, dist2)`.
    pub fn nearest_filtered<F: Fn(usize) -> bool>(
        &self,
        query: &[f64],
        accept: &F,
    ) -> Option<(usize, f64)> {
        let mut best: Option<(f64, usize)> = None;
        if !self.order.is_empty() {
            self.search(0, self.order.len(), query, accept, &mut best);
        }
        best.map(|(d2, id)| (id, d2))
    }

    fn search<F: Fn(usize) -> bool>(
        &self,
        lo: usize,
        hi: usize,
        query: &[f64],
        accept: &F,
        best: &mut Option<(f64, usize)>,
    ) {
        if hi <= lo {
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let id = self.order[mid];
        if accept(id) {
            let d2 = dist2(query, &self.points[id]);
            let cand = (d2, id);
            if best.map_or(true, |b| cand < b) {
                *best = Some(cand);
            }
        }
        if hi - lo == 1 {
            return;
        }
        let d = self.split_dim[mid];
        let delta = query[d] - self.points[id][d];
        let (near, far) = if delta <= 0.0 {
            ((lo, mid), (mid + 1, hi))
        } else {
            ((mid + 1, hi), (lo, mid))
        };
        self.search(near.0, near.1, query, accept, best);
        // Visit the far side whenever the splitting plane is within the best
        // radius; `<=` keeps equal-distance candidates reachable so the
        // lowest-id tie rule stays exact.
        if best.map_or(true, |(bd2, _)| delta * delta <= bd2) {
            self.search(far.0, far.1, query, accept, best);
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_nearest<F: Fn(usize) -> bool>(
        points: &[Vec<f64>],
        query: &[f64],
        accept: F,
    ) -> Option<(usize, f64)> {
        points
            .iter()
            .enumerate()
            .filter(|(i, _)| accept(*i))
            .map(|(i, p)| (dist2(query, p), i))
            .min_by(|a, b| a.partial_cmp(b).unwrap())
            .map(|(d2, i)| (i, d2))
    }

    #[test]
    fn matches_naive_scan_with_filters() {
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..50 {
            let n = rng.gen_range(1..60);
            let dim = rng.gen_range(2..6);
            let points: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let tree = KdTree::build(&points);
            let mask: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.6)).collect();
            let query: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let got = tree.nearest_filtered(&query, &|i| mask[i]);
            let want = naive_nearest(&points, &query, |i| mask[i]);
            assert_eq!(got, want);
        }
    }

    #[test]
    fn tie_breaks_by_lowest_id() {
        let points = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
        ];
        let tree = KdTree::build(&points);
        let (id, _) = tree.nearest_filtered(&[0.0, 0.0], &|_| true).unwrap();
        assert_eq!(id, 0);
        let (id, _) = tree.nearest_filtered(&[0.0, 0.0], &|i| i != 0).unwrap();
        assert_eq!(id, 1);
    }

    #[test]
    fn empty_filter_returns_none() {
        let points = vec![vec![0.0, 0.0]];
        let tree = KdTree::build(&points);
        assert_eq!(tree.nearest_filtered(&[1.0, 1.0], &|_| false), None);
    }

    #[test]
    fn duplicate_points_handled() {
        let points = vec![vec![0.5, 0.5]; 17];
        let tree = KdTree::build(&points);
        let (id, d2) = tree.nearest_filtered(&[0.5, 0.5], &|i| i >= 5).unwrap();
        assert_eq!((id, d2), (5, 0.0));
    }
}
