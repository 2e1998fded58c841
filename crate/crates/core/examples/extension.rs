//! Extension of the ground state to the half-plane: energy identity, Neumann
//! data, and nodal domains of the linearized eigenfields.
//!
//! `cargo run --release --example extension -- 0.4`

use fracgs::extension::{
    c_constant, default_levels, dirichlet_energy, extend, neumann_trace, nodal_domains, DEFAULT_LEVELS,
};
use fracgs::groundstate::spectral_grid;
use fracgs::linearization::{build_lplus, spectrum, Sector, SIGN_THRESHOLD};
use fracgs::spectral::hs_seminorm_sq;
use fracgs::{solve_ground_state, ModelParams, SolverOptions};

fn main() -> fracgs::Result<()> {
    let s: f64 = std::env::args().nth(1).map(|a| a.parse().expect("numeric argument")).unwrap_or(0.4);
    let params = ModelParams::new(s, 1.0, 1.0)?;
    let grid = spectral_grid(&params)?;
    let q = solve_ground_state(&params, &grid, None, &SolverOptions::periodic())?.q;
    let levels = default_levels(&grid, DEFAULT_LEVELS);

    let a = 1.0 - 2.0 * s;
    let u = extend(&q, s, &levels)?;
    let ratio = dirichlet_energy(&u)? / (c_constant(a)? * hs_seminorm_sq(&q, s)?);
    println!("a = {a:.2}, c_a = {:.8}", c_constant(a)?);
    println!("energy / (c_a ‖(-Δ)^(s/2) Q‖²) = {ratio:.10}");

    let neumann = neumann_trace(&q, s, &[1e-1, 1e-2, 1e-3])?;
    println!("Neumann data against (-Δ)^s Q: {:.3?}", neumann.deviations);

    let even = spectrum(&build_lplus(&q, &params, Sector::Even)?, 3)?;
    for (n, psi) in even.eigenfields.iter().enumerate() {
        let domains = nodal_domains(&extend(psi, s, &levels)?, SIGN_THRESHOLD);
        println!("eigenvalue {:>10.6}: {domains} nodal domain(s) in the half-plane", even.eigenvalues[n]);
    }
    Ok(())
}
