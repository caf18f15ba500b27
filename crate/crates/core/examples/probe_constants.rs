//! Scratch probe for the renormalisation-constant quadratures.

use she_renorm::kernels::{KernelSuite, QuadratureSpec};
use she_renorm::par::Exec;
use std::time::Instant;

fn main() {
    let suite = KernelSuite::new(Exec::Parallel);
    let spec = QuadratureSpec {
        base_resolution: 256,
        tolerance: 1e-5,
    };
    let t0 = Instant::now();
    let a = suite.target_a(&spec);
    println!("A = {a:.9}   ({:?})", t0.elapsed());
    let t0 = Instant::now();
    let b = suite.target_b(&spec);
    println!("B = {b:.9}   ({:?})", t0.elapsed());
    println!("|A-B|/A = {:.3e}", (a - b).abs() / a);
    for eps in [0.2, 0.1, 0.05, 0.025] {
        let t0 = Instant::now();
        let c1 = suite.constant_c1(eps).unwrap();
        let c2 = suite.constant_c2(eps).unwrap();
        println!(
            "eps={eps:<6} C1={:.6} (dir {:.6})  C2={:.6} (dir {:.6})  eC1={:.9} eC1-A={:+.3e}  eC2={:.9} eC2-B={:+.3e}   ({:?})",
            c1.value,
            c1.direct,
            c2.value,
            c2.direct,
            eps * c1.value,
            eps * c1.value - a,
            eps * c2.value,
            eps * c2.value - b,
            t0.elapsed()
        );
    }
}
