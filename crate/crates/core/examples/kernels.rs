//! Heat kernel of (-Δ)^s and the resolvent kernel of (-Δ)^s + λ.
//!
//! `cargo run --release --example kernels -- 0.7`

use std::f64::consts::PI;

use fracgs::kernels::{check_heat_kernel_bounds, heat_kernel, log_abscissae, resolvent_kernel, resolvent_mass};

fn main() -> fracgs::Result<()> {
    let s: f64 = std::env::args().nth(1).map(|a| a.parse().expect("numeric argument")).unwrap_or(0.7);
    let xs = log_abscissae(0.05, 40.0, 12);
    let heat = heat_kernel(s, 1.0, &xs)?;
    let bounds = check_heat_kernel_bounds(&heat);
    println!("{:>10} {:>16} {:>12}", "x", "K_1(x)", "x K_1(x)");
    for (x, v) in xs.iter().zip(&heat.values) {
        println!("{x:>10.4} {v:>16.10e} {:>12.6}", x * v);
    }
    println!("max |x K| = {:.6} against 1/π = {:.6}; all bounds hold: {}", bounds.max_xk, 1.0 / PI, bounds.passed());

    let g = resolvent_kernel(s, 1.0, &log_abscissae(0.1, 20.0, 8))?;
    for i in 0..g.abscissae.len() {
        println!("G({:.3}) = {:.10e}  (routes differ by {:.1e})", g.abscissae[i], g.values[i], g.deviation[i]);
    }
    println!("∫G = {:.12} (1/λ = 1)", resolvent_mass(s, 1.0)?);
    Ok(())
}
