//! Derivative-free simplex descent (Nelder-Mead) with an evaluation budget.
//!
//! Used to polish QAOA angles. Maximization is handled by the callers
//! negating their objective.

/// Outcome of one simplex run.
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Minimizes `f` starting from `x0`, spending at most `eval_budget`
/// evaluations. Converges when the simplex's objective spread drops below
/// `tolerance`. Standard reflection/expansion/contraction/shrink
/// coefficients (1, 2, 0.5, 0.5).
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    initial_step: f64,
    eval_budget: usize,
    tolerance: f64,
) -> SimplexResult {
    let dim = x0.len();
    assert!(dim >= 1, "objective must have at least one variable");
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        f(x)
    };

    // Simplex of dim+1 vertices: x0 plus one step along each axis.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = x0.to_vec();
    let f0 = eval(&v0, &mut evals);
    simplex.push((v0, f0));
    for d in 0..dim {
        if evals >= eval_budget {
            break;
        }
        let mut v = x0.to_vec();
        v[d] += initial_step;
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }
    let mut converged = false;
    while simplex.len() == dim + 1 && evals < eval_budget {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let spread = simplex[dim].1 - simplex[0].1;
        if spread.abs() <= tolerance {
            converged = true;
            break;
        }
        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; dim];
        for (v, _) in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        for c in &mut centroid {
            *c /= dim as f64;
        }
        let worst = simplex[dim].clone();
        let combine = |a: f64, b: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| a * c + b * w)
                .collect()
        };

        let reflected = combine(2.0, -1.0);
        let f_reflected = eval(&reflected, &mut evals);
        if f_reflected < simplex[0].1 {
            // Try stretching further in the same direction.
            if evals < eval_budget {
                let expanded = combine(3.0, -2.0);
                let f_expanded = eval(&expanded, &mut evals);
                simplex[dim] = if f_expanded < f_reflected {
                    (expanded, f_expanded)
                } else {
                    (reflected, f_reflected)
                };
            } else {
                simplex[dim] = (reflected, f_reflected);
            }
            continue;
        }
        if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
            continue;
        }
        if evals >= eval_budget {
            break;
        }
        let contracted = combine(0.5, 0.5);
        let f_contracted = eval(&contracted, &mut evals);
        if f_contracted < worst.1 {
            simplex[dim] = (contracted, f_contracted);
            continue;
        }
        // Shrink everything toward the best vertex.
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            if evals >= eval_budget {
                break;
            }
            for (x, b) in vertex.0.iter_mut().zip(&best) {
                *x = 0.5 * (*x + *b);
            }
            vertex.1 = eval(&vertex.0, &mut evals);
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let (x, value) = simplex.swap_remove(0);
    SimplexResult {
        x,
        value,
        evals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic_bowl() {
        let r = minimize(
            |x| (x[0] - 1.5) * (x[0] - 1.5) + (x[1] + 0.5) * (x[1] + 0.5),
            &[0.0, 0.0],
            0.5,
            300,
            1e-10,
        );
        assert!((r.x[0] - 1.5).abs() < 1e-4);
        assert!((r.x[1] + 0.5).abs() < 1e-4);
        assert!(r.value < 1e-8);
    }

    #[test]
    fn respects_eval_budget() {
        let mut count = 0;
        let r = minimize(
            |x| {
                count += 1;
                x[0] * x[0]
            },
            &[10.0],
            1.0,
            25,
            0.0,
        );
        assert!(count <= 25);
        assert_eq!(r.evals, count);
    }

    #[test]
    fn never_returns_worse_than_start() {
        let start = [3.0, -2.0, 1.0];
        let f = |x: &[f64]| x.iter().map(|v| v.abs()).sum::<f64>();
        let r = minimize(f, &start, 0.3, 120, 1e-9);
        assert!(r.value <= f(&start) + 1e-12);
    }

    #[test]
    fn converges_on_rosenbrock_like() {
        let f = |x: &[f64]| {
            let a = 1.0 - x[0];
            let b = x[1] - x[0] * x[0];
            a * a + 10.0 * b * b
        };
        let r = minimize(f, &[-1.0, 1.0], 0.4, 500, 1e-12);
        assert!(r.value < 1e-3, "got {}", r.value);
    }
}
