use lefschetz_core::*;
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let r = experiment_init_deg2(100, 8, 1, true).unwrap();
    println!("init_deg2 100 trials: {:?} failures={}", t.elapsed(), r.failures);
    let t = Instant::now();
    let r = experiment_small_s(50, 2, true).unwrap();
    println!("small_s 50 trials: {:?} failures={}", t.elapsed(), r.failures);
    let t = Instant::now();
    let r = experiment_socle_bounds(3, true).unwrap();
    println!("socle_bounds: {:?} trials={} failures={}", t.elapsed(), r.trials, r.failures);
    let t = Instant::now();
    let r = probe_open_question(20, 6, 4, true).unwrap();
    println!("probe 20 trials: {:?} failures={}", t.elapsed(), r.failures);
}
