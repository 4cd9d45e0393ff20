use mlcut_core::{generate, qaoa};
use std::time::Instant;

fn main() {
    let g = generate::random_weighted_graph(22, 0.5, 1.0, 1).unwrap();
    let cd = qaoa::cost_diagonal(&g).unwrap();
    // p=1 with gamma=0 isolates the mixer; beta=0 isolates the phase.
    let phase_only = qaoa::QaoaParams::new(vec![0.37], vec![0.0]);
    let mixer_only = qaoa::QaoaParams::new(vec![0.0], vec![0.21]);
    for (name, p) in [("phase", &phase_only), ("mixer", &mixer_only)] {
        let t = Instant::now();
        for _ in 0..3 { let _ = qaoa::qaoa_state(&cd, p); }
        println!("{name}: {:.3}s per layer(+alloc)", t.elapsed().as_secs_f64() / 3.0);
    }
}
