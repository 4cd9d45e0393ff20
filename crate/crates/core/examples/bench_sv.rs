use mlcut_core::{generate, qaoa};
use std::time::Instant;

fn main() {
    let g = generate::random_weighted_graph(22, 0.5, 1.0, 1).unwrap();
    let t0 = Instant::now();
    let cd = qaoa::cost_diagonal(&g).unwrap();
    println!("cost_diagonal(22, m={}): {:.3}s", g.edge_count(), t0.elapsed().as_secs_f64());

    let params = qaoa::QaoaParams::new(vec![0.3, 0.5, 0.7], vec![0.2, 0.3, 0.1]);
    let t1 = Instant::now();
    let state = qaoa::qaoa_state(&cd, &params);
    println!("qaoa_state p=3: {:.3}s", t1.elapsed().as_secs_f64());

    let t2 = Instant::now();
    let e = qaoa::expectation(&state, &cd);
    println!("expectation: {:.3}s (value {:.4})", t2.elapsed().as_secs_f64(), e);

    let t3 = Instant::now();
    let out = qaoa::sample(&state, &cd, 10240, 3);
    println!("sample 10240: {:.3}s (best {:.4})", t3.elapsed().as_secs_f64(), out.best_cut);

    // Full p=3 optimize pass with 2 starts, budget 100
    let t4 = Instant::now();
    let (_, val) = qaoa::optimize_params(&cd, 3, 2, 100, 7);
    println!("optimize p=3 x2 starts x100 evals: {:.1}s (exp {:.4}, maxcut {:.4})",
        t4.elapsed().as_secs_f64(), val, cd.max_value());
}
