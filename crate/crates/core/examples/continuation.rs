//! Follow the ground state from s₀ towards s = 1 and compare with the
//! classical sech profile.
//!
//! `cargo run --release --example continuation -- 0.9 2`

use fracgs::continuation::{continue_branch, verify_limit, ContinuationConfig};
use fracgs::{solve_ground_state, Grid, ModelParams, SolverOptions};

fn main() -> fracgs::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let s0 = args.first().copied().unwrap_or(0.9);
    let alpha = args.get(1).copied().unwrap_or(2.0);
    let grid = Grid::new(64.0, 2048)?;
    let params = ModelParams::new(s0, alpha, 1.0)?;
    let start = solve_ground_state(&params, &grid, None, &SolverOptions { tol: 1e-12, ..Default::default() })?;
    let branch = continue_branch(&start, &ContinuationConfig::default())?;

    for p in &branch.points {
        println!(
            "s {:.5}  λ {:.10}  ∫Q² {:.8}  Newton {}  gap {:.3}",
            p.s, p.lambda, p.monitors.l2_norm_sq, p.newton_iterations, p.monitors.even_gap
        );
    }
    println!("termination {:?}", branch.termination);
    if branch.last().s >= 0.99 {
        let limit = verify_limit(&branch)?;
        println!("λ_* = {:.8}, relative gap {:.2e}", limit.lambda_star, limit.lambda_deviation);
        println!("distance to λ_*^(1/α) P(λ_*^(1/2) x): {:.2e}", limit.field_deviation);
    }
    Ok(())
}
