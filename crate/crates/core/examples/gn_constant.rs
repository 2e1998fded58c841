//! Optimal Gagliardo–Nirenberg constant C_{α,s} = 1/J(Q) along s.

use std::f64::consts::PI;

use fracgs::groundstate::{default_grid, gn_constant};
use fracgs::ModelParams;

fn main() -> fracgs::Result<()> {
    let alpha = 1.0;
    for i in 3..=10 {
        let s = i as f64 / 10.0;
        let grid = default_grid(&ModelParams::new(s, alpha, 1.0)?)?;
        let c = gn_constant(s, alpha, &grid, 1e-10)?;
        println!("s = {s:.1}  C = {:.8}  (±{:.1e})", c.value, c.error_estimate);
    }
    println!("closed form at s = 1/2: 3/(2√π) = {:.8}", 3.0 / (2.0 * PI.sqrt()));
    Ok(())
}
