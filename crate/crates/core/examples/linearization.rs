//! Spectrum of L₊ = (-Δ)^s + λ - (α+1)Q^α in the even and odd sectors.
//!
//! `cargo run --release --example linearization -- 0.6 1`

use fracgs::groundstate::spectral_grid;
use fracgs::linearization::{build_lplus, coercivity_minimum, kernel_residual, perron_checks, spectrum, Sector};
use fracgs::{solve_ground_state, ModelParams, SolverOptions};

fn main() -> fracgs::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let params = ModelParams::new(args.first().copied().unwrap_or(0.6), args.get(1).copied().unwrap_or(1.0), 1.0)?;
    let grid = spectral_grid(&params)?;
    let q = solve_ground_state(&params, &grid, None, &SolverOptions::periodic())?.q;

    let even = spectrum(&build_lplus(&q, &params, Sector::Even)?, 4)?;
    let odd = spectrum(&build_lplus(&q, &params, Sector::Odd)?, 3)?;
    println!("even eigenvalues {:.6?}", even.eigenvalues);
    println!("odd eigenvalues  {:.3?}", odd.eigenvalues);
    println!("even Morse index {}", even.morse_index);
    let changes: Vec<usize> = even.sign_change_counts.iter().map(|c| c.positive_axis).collect();
    println!("sign changes on x > 0 {changes:?}");

    let kr = kernel_residual(&q, &params)?;
    println!("‖L₊Q′‖/‖Q′‖ {:.2e}, even gap {:.4}", kr.residual, kr.even_gap);
    println!("Perron property {}", perron_checks(&even, &odd)?.passed());
    let c = coercivity_minimum(&q, &params, true)?;
    println!("coercivity δ {:.4} (even {:.4}, odd {:.4})", c.delta(), c.even_minimum, c.odd_minimum);
    Ok(())
}
