//! Solve for the ground state and print its certificates.
//!
//! `cargo run --release --example ground_state -- 0.4 2`

use fracgs::groundstate::{check_symmetry_monotonicity, default_grid};
use fracgs::{solve_ground_state, ModelParams, SolverOptions};

fn main() -> fracgs::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let s = args.first().copied().unwrap_or(0.5);
    let alpha = args.get(1).copied().unwrap_or(1.0);
    let params = ModelParams::new(s, alpha, 1.0)?;
    let grid = default_grid(&params)?;
    let sol = solve_ground_state(&params, &grid, None, &SolverOptions::default())?;

    println!("s = {s}, α = {alpha} on L = {}, N = {}", grid.length(), grid.points());
    println!("Q(0)            {:.12}", sol.q.values()[grid.origin()]);
    println!("iterations      {}", sol.iterations);
    println!("Pohozaev        {:.2e}  {:.2e}", sol.pohozaev_residuals.0, sol.pohozaev_residuals.1);
    println!("decay exponent  {:.4} (expected {:.4})", sol.decay.exponent, sol.decay.expected_exponent);
    println!("Weinstein J(Q)  {:.10}", sol.weinstein_value);
    let sym = check_symmetry_monotonicity(&sol.q);
    println!("even, positive, decreasing: {}", sym.passed());
    if s == 0.5 && alpha == 1.0 {
        let x = 1.0;
        let j = grid.origin() + (x / grid.spacing()).round() as usize;
        println!("Q(1) = {:.10} against 2/(1+x²) = 1", sol.q.values()[j]);
    }
    Ok(())
}
