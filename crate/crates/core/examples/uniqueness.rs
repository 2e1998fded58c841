//! Three different initial fields at s = 1/2, α = 1: the ground states and
//! their branches in s coincide.

use fracgs::continuation::{default_seeds, uniqueness_experiment, ContinuationConfig};
use fracgs::Grid;

fn main() -> fracgs::Result<()> {
    let grid = Grid::new(64.0, 2048)?;
    let config = ContinuationConfig::default();
    let rep = uniqueness_experiment(1.0, 0.5, 1.0, &default_seeds(&grid), &config)?;
    println!("seeds                    {}", rep.seeds);
    println!("ground state spread      {:.2e}", rep.ground_state_deviation);
    println!("branch spread            {:.2e} over {} shared points", rep.branch_deviation, rep.shared_points);
    println!("all branches reach s = {} : {}", config.target_s, rep.branches_complete);
    Ok(())
}
