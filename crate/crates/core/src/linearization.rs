//! The linearized operator `L₊ = (-Δ)^s + λ - (α+1)Q^α` around a ground
//! state, assembled in the even (cosine) and odd (sine) sectors and
//! diagonalized densely.
//!
//! Grid products of trigonometric modes reduce to cosine coefficients of the
//! potential, `cos a cos b = (cos(a-b) + cos(a+b))/2`, so assembly costs one
//! FFT and the Galerkin matrix is exact on the grid.

use faer::{Mat, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groundstate::{fixed_point_residual, power_integral, ModelParams};
use crate::spectral::{Field, Grid, Parity, SymbolSpec};

/// Largest sector handed to the dense eigensolver.
pub const DENSE_CAP: usize = 4097;

/// Default threshold for [`sign_changes`], relative to `max |ψ|`.
pub const SIGN_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Even,
    Odd,
}

impl Sector {
    /// Wavenumber indices `k` of the basis: `cos(2πkx/L)`, `k = 0..=N/2`, or
    /// `sin(2πkx/L)`, `k = 1..N/2`.
    pub fn modes(self, points: usize) -> Vec<usize> {
        match self {
            Sector::Even => (0..=points / 2).collect(),
            Sector::Odd => (1..points / 2).collect(),
        }
    }

    pub fn dimension(self, points: usize) -> usize {
        match self {
            Sector::Even => points / 2 + 1,
            Sector::Odd => points / 2 - 1,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Sector::Even => Parity::Even,
            Sector::Odd => Parity::Odd,
        }
    }
}

/// Grid norm of the mode `k` in the sector.
fn mode_norm(grid: &Grid, sector: Sector, k: usize) -> f64 {
    let n = grid.points();
    let full = sector == Sector::Even && (k == 0 || k == n / 2);
    (if full { grid.length() } else { 0.5 * grid.length() }).sqrt()
}

/// Coordinates of `f` in the orthonormal sector basis.
pub fn project(grid: &Grid, sector: Sector, f: &[f64]) -> Vec<f64> {
    let c = grid.fft(f);
    let h = grid.spacing();
    sector
        .modes(grid.points())
        .into_iter()
        .map(|k| {
            // x_j = -L/2 + jh turns the DFT phase into a factor (-1)^k
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let raw = match sector {
                Sector::Even => c[k].re,
                Sector::Odd => -c[k].im,
            };
            h * sign * raw / mode_norm(grid, sector, k)
        })
        .collect()
}

/// Node values of `Σ a_k b_k` for sector coordinates `a`.
pub fn synthesize(grid: &Grid, sector: Sector, coords: &[f64]) -> Vec<f64> {
    let n = grid.points();
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    for (&k, &a) in sector.modes(n).iter().zip(coords) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let amp = sign * a * n as f64 / mode_norm(grid, sector, k);
        match sector {
            Sector::Even if k == 0 || k == n / 2 => c[k] += amp,
            Sector::Even => {
                c[k] += 0.5 * amp;
                c[n - k] += 0.5 * amp;
            }
            Sector::Odd => {
                c[k] += Complex64::new(0.0, -0.5 * amp);
                c[n - k] += Complex64::new(0.0, 0.5 * amp);
            }
        }
    }
    grid.ifft_real(c)
}

/// Dense matrix of `(-Δ)^s + λ + V` in the sector basis.
pub fn sector_operator(grid: &Grid, s: f64, lambda: f64, potential: &[f64], sector: Sector) -> Result<Mat<f64>> {
    let n = grid.points();
    let dim = sector.dimension(n);
    if dim > DENSE_CAP {
        return Err(Error::SectorTooLarge { dim, cap: DENSE_CAP });
    }
    let h = grid.spacing();
    let c = grid.fft(potential);
    // vhat[m] = h Σ_j V_j cos(2πm x_j / L), m = 0..=N
    let vhat: Vec<f64> = (0..=n)
        .map(|m| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            h * sign * c[m % n].re
        })
        .collect();
    let modes = sector.modes(n);
    let norms: Vec<f64> = modes.iter().map(|&k| mode_norm(grid, sector, k)).collect();
    let spec = SymbolSpec::operator(s, lambda);
    let pm = match sector {
        Sector::Even => 1.0,
        Sector::Odd => -1.0,
    };
    let mut m = Mat::from_fn(dim, dim, |i, j| {
        let (k, l) = (modes[i], modes[j]);
        0.5 * (vhat[k.abs_diff(l)] + pm * vhat[k + l]) / (norms[i] * norms[j])
    });
    for (i, &k) in modes.iter().enumerate() {
        m[(i, i)] += spec.multiplier(grid.wavenumber(k).abs());
    }
    Ok(m)
}

pub fn lplus_potential(q: &Field, params: &ModelParams) -> Vec<f64> {
    q.values().iter().map(|v| -(params.alpha + 1.0) * v.abs().powf(params.alpha)).collect()
}

/// `L₊u` by FFT.
pub fn apply_lplus(q: &Field, params: &ModelParams, u: &[f64]) -> Result<Vec<f64>> {
    let grid = q.grid();
    let mult = SymbolSpec::operator(params.s, params.lambda).multipliers(grid)?;
    let mut out = grid.apply_multipliers(u, &mult);
    for (o, (v, ui)) in out.iter_mut().zip(lplus_potential(q, params).iter().zip(u)) {
        *o += v * ui;
    }
    Ok(out)
}

/// `L₊` restricted to a parity sector.
pub struct SectorMatrix {
    pub sector: Sector,
    pub dimension: usize,
    pub entries: Mat<f64>,
    pub params: ModelParams,
    pub q: Field,
}

impl SectorMatrix {
    /// Largest `|M_ij - M_ji|` relative to the largest entry.
    pub fn symmetry_defect(&self) -> f64 {
        let d = self.dimension;
        let (mut asym, mut big) = (0.0f64, 0.0f64);
        for i in 0..d {
            for j in 0..d {
                asym = asym.max((self.entries[(i, j)] - self.entries[(j, i)]).abs());
                big = big.max(self.entries[(i, j)].abs());
            }
        }
        asym / big
    }
}

pub fn build_lplus(q: &Field, params: &ModelParams, sector: Sector) -> Result<SectorMatrix> {
    let m = q.max_abs();
    if !(m > 0.0) {
        return Err(Error::Precondition("L₊ needs a nonzero state".into()));
    }
    if q.parity_defect(Parity::Even) > 1e-8 || q.values().iter().any(|&v| v < -1e-10 * m) {
        return Err(Error::Precondition("L₊ is assembled around an even, positive state".into()));
    }
    let entries = sector_operator(q.grid(), params.s, params.lambda, &lplus_potential(q, params), sector)?;
    Ok(SectorMatrix { sector, dimension: entries.nrows(), entries, params: *params, q: q.clone() })
}

/// Ascending eigenvalues and eigenvector columns of a symmetric matrix.
pub(crate) fn eigen(m: &Mat<f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::LinearAlgebra(format!("symmetric eigensolver: {e:?}")))?;
    let vals: Vec<f64> = evd.S().column_vector().iter().copied().collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("eigenvalues".into()));
    }
    Ok((vals, evd.U().to_owned()))
}

/// `max(1e-6, 10³ · fixed-point residual)`.
pub fn zero_tolerance(residual: f64) -> f64 {
    (1e3 * residual).max(1e-6)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignChanges {
    pub total: usize,
    pub positive_axis: usize,
}

/// Sign changes between nodes where `|ψ| > threshold · max|ψ|`; smaller
/// values are skipped, so grazing zeros do not count.
pub fn sign_changes(psi: &Field, threshold: f64) -> SignChanges {
    let grid = psi.grid();
    let cut = threshold * psi.max_abs();
    let count = |range: std::ops::Range<usize>| {
        let mut last = 0.0f64;
        let mut n = 0;
        for j in range {
            let v = psi.values()[j];
            if v.abs() > cut {
                if last != 0.0 && v.signum() != last {
                    n += 1;
                }
                last = v.signum();
            }
        }
        n
    };
    SignChanges { total: count(0..grid.points()), positive_axis: count(grid.origin() + 1..grid.points()) }
}

/// No node below `-threshold · max|ψ|` once the sign is fixed by the
/// largest value.
fn fixed_sign(values: &[f64], threshold: f64) -> bool {
    let peak = values.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
    values.iter().all(|&v| v * peak.signum() >= -threshold * peak.abs())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub sector: Sector,
    /// The lowest eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenfields: Vec<Field>,
    /// Sector coordinates of the eigenfields.
    #[serde(skip)]
    pub coordinates: Vec<Vec<f64>>,
    /// Eigenvalues below `-ε_zero` over the whole sector.
    pub morse_index: usize,
    pub zero_modes: Vec<f64>,
    /// Eigenvalue of smallest magnitude over the whole sector.
    pub nearest_zero: f64,
    pub sign_change_counts: Vec<SignChanges>,
    pub fixed_sign: Vec<bool>,
    /// Below `λ`: candidate discrete spectrum. The rest approximates the
    /// essential spectrum `[λ, ∞)`.
    pub below_continuum: Vec<bool>,
    pub eps_zero: f64,
}

pub fn spectrum(m: &SectorMatrix, k: usize) -> Result<SpectrumReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("spectrum needs k ≥ 1".into()));
    }
    let eps_zero = zero_tolerance(fixed_point_residual(&m.q, &m.params)?);
    let (vals, vecs) = eigen(&m.entries)?;
    let grid = m.q.grid();
    let k = k.min(vals.len());
    let mut eigenfields = Vec::with_capacity(k);
    let mut coordinates = Vec::with_capacity(k);
    for i in 0..k {
        let coords: Vec<f64> = vecs.col(i).iter().copied().collect();
        let mut values = synthesize(grid, m.sector, &coords);
        // sign convention: positive where |ψ| peaks on x ≥ 0
        let o = grid.origin();
        let peak = values[o..].iter().copied().fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
        let flip = if peak < 0.0 { -1.0 } else { 1.0 };
        values.iter_mut().for_each(|v| *v *= flip);
        eigenfields.push(Field::new(grid, values, m.sector.parity())?);
        coordinates.push(coords.into_iter().map(|c| flip * c).collect());
    }
    let nearest_zero = vals.iter().copied().fold(f64::INFINITY, |a, v| if v.abs() < a.abs() { v } else { a });
    Ok(SpectrumReport {
        sector: m.sector,
        eigenvalues: vals[..k].to_vec(),
        sign_change_counts: eigenfields.iter().map(|f| sign_changes(f, SIGN_THRESHOLD)).collect(),
        fixed_sign: eigenfields.iter().map(|f| fixed_sign(f.values(), SIGN_THRESHOLD)).collect(),
        below_continuum: vals[..k].iter().map(|&v| v < m.params.lambda).collect(),
        morse_index: vals.iter().filter(|&&v| v < -eps_zero).count(),
        zero_modes: vals.iter().copied().filter(|v| v.abs() <= eps_zero).collect(),
        nearest_zero,
        eigenfields,
        coordinates,
        eps_zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelResidual {
    /// `‖L₊Q′‖ / ‖Q′‖`.
    pub residual: f64,
    /// Smallest `|e|` in the even sector.
    pub even_gap: f64,
    /// Second smallest `|e|` in the odd sector; the smallest belongs to `Q′`.
    pub odd_gap: f64,
    /// Eigenvalue of smallest magnitude in the odd sector.
    pub odd_nearest_zero: f64,
}

pub fn kernel_residual(q: &Field, params: &ModelParams) -> Result<KernelResidual> {
    let dq = q.derivative();
    let lq = apply_lplus(q, params, dq.values())?;
    let residual = q.grid().dot(&lq, &lq).sqrt() / dq.l2_norm();
    let mut even = magnitudes(&build_lplus(q, params, Sector::Even)?)?;
    let mut odd = magnitudes(&build_lplus(q, params, Sector::Odd)?)?;
    even.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    odd.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(KernelResidual { residual, even_gap: even[0].abs(), odd_gap: odd[1].abs(), odd_nearest_zero: odd[0] })
}

fn magnitudes(m: &SectorMatrix) -> Result<Vec<f64>> {
    m.entries
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::LinearAlgebra(format!("symmetric eigensolver: {e:?}")))
}

/// Smooth cutoff: 1 on `|x| ≤ 0.3L`, 0 beyond `0.4L`.
pub fn window(grid: &Grid) -> Vec<f64> {
    let bump = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
    let l = grid.length();
    grid.nodes()
        .into_iter()
        .map(|x| {
            let t = (x.abs() - 0.3 * l) / (0.1 * l);
            bump(1.0 - t) / (bump(1.0 - t) + bump(t))
        })
        .collect()
}

/// `(rQ, rR)`: relative defects of `L₊Q = -αQ^{α+1}` and `L₊R = -2sλQ` with
/// `R = (2s/α)Q + xQ′`, the second term windowed by [`window`].
pub fn identity_residuals(q: &Field, params: &ModelParams) -> Result<(f64, f64)> {
    if !(q.max_abs() > 0.0) {
        return Err(Error::Precondition("identities are degenerate at Q = 0".into()));
    }
    let (s, alpha) = (params.s, params.alpha);
    let grid = q.grid();
    let rel = |a: &[f64], b: &[f64]| {
        let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        (grid.dot(&d, &d) / grid.dot(b, b)).sqrt()
    };
    let lq = apply_lplus(q, params, q.values())?;
    let target: Vec<f64> = q.values().iter().map(|v| -alpha * v.abs().powf(alpha) * v).collect();
    let r_q = rel(&lq, &target);
    let dq = q.derivative();
    let r: Vec<f64> = q
        .values()
        .iter()
        .zip(dq.values())
        .zip(grid.nodes().iter().zip(window(grid)))
        .map(|((v, d), (x, w))| 2.0 * s / alpha * v + w * x * d)
        .collect();
    let lr = apply_lplus(q, params, &r)?;
    let target: Vec<f64> = q.values().iter().map(|v| -2.0 * s * params.lambda * v).collect();
    Ok((r_q, rel(&lr, &target)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerronReport {
    /// The lowest eigenvalue overall sits in the even sector.
    pub ground_is_even: bool,
    pub ground_simple: bool,
    pub ground_fixed_sign: bool,
    /// The lowest odd eigenfield keeps one sign on `x > 0`.
    pub odd_fixed_sign_on_half: bool,
}

impl PerronReport {
    pub fn passed(&self) -> bool {
        self.ground_is_even && self.ground_simple && self.ground_fixed_sign && self.odd_fixed_sign_on_half
    }
}

pub fn perron_checks(even: &SpectrumReport, odd: &SpectrumReport) -> Result<PerronReport> {
    if even.sector != Sector::Even || odd.sector != Sector::Odd || even.eigenvalues.len() < 2 || odd.eigenvalues.is_empty() {
        return Err(Error::Precondition("need the two lowest even and the lowest odd eigenpairs".into()));
    }
    let e0 = even.eigenvalues[0];
    let next = even.eigenvalues[1].min(odd.eigenvalues[0]);
    let psi = &odd.eigenfields[0];
    let half = &psi.values()[psi.grid().origin() + 1..];
    Ok(PerronReport {
        ground_is_even: e0 < odd.eigenvalues[0],
        ground_simple: next - e0 > even.eps_zero,
        ground_fixed_sign: even.fixed_sign[0],
        odd_fixed_sign_on_half: fixed_sign(half, SIGN_THRESHOLD),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coercivity {
    pub even_minimum: f64,
    pub odd_minimum: f64,
}

impl Coercivity {
    pub fn delta(&self) -> f64 {
        self.even_minimum.min(self.odd_minimum)
    }
}

/// Minimum of `⟨η, L₊η⟩ / ‖η‖²_{H^s}` over `η ⊥ φ` (the ground eigenfield)
/// and, when `exclude_translation`, also `η ⊥ Q′`.
pub fn coercivity_minimum(q: &Field, params: &ModelParams, exclude_translation: bool) -> Result<Coercivity> {
    let grid = q.grid();
    let even = build_lplus(q, params, Sector::Even)?;
    let (_, vecs) = eigen(&even.entries)?;
    let phi: Vec<f64> = vecs.col(0).iter().copied().collect();
    let even_minimum = constrained_minimum(grid, params.s, &even.entries, Sector::Even, Some(&phi))?;
    let odd = build_lplus(q, params, Sector::Odd)?;
    let dq = project(grid, Sector::Odd, q.derivative().values());
    let odd_minimum = constrained_minimum(grid, params.s, &odd.entries, Sector::Odd, exclude_translation.then_some(&dq[..]))?;
    Ok(Coercivity { even_minimum, odd_minimum })
}

/// [`coercivity_minimum`] asserted positive; returns `δ`.
pub fn coercivity_check(q: &Field, params: &ModelParams) -> Result<f64> {
    let delta = coercivity_minimum(q, params, true)?.delta();
    if delta > 0.0 {
        Ok(delta)
    } else {
        Err(Error::Property(format!("coercivity minimum {delta:e} is not positive")))
    }
}

/// Lowest eigenvalue of `B^{-1/2} A B^{-1/2}` on the complement of
/// `B^{-1/2} c`, with `B = diag(1 + |ξ_k|^{2s})` the `H^s` Gram matrix.
fn constrained_minimum(grid: &Grid, s: f64, a: &Mat<f64>, sector: Sector, exclude: Option<&[f64]>) -> Result<f64> {
    let binv: Vec<f64> = sector
        .modes(grid.points())
        .into_iter()
        .map(|k| (1.0 + grid.wavenumber(k).abs().powf(2.0 * s)).powf(-0.5))
        .collect();
    let d = binv.len();
    let mut c = Mat::from_fn(d, d, |i, j| binv[i] * a[(i, j)] * binv[j]);
    if let Some(dir) = exclude {
        let mut v: Vec<f64> = dir.iter().zip(&binv).map(|(x, b)| x * b).collect();
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= nv);
        // P C P + σ v vᵀ with P = I - v vᵀ and σ above the spectrum
        let cv: Vec<f64> = (0..d).map(|i| (0..d).map(|j| c[(i, j)] * v[j]).sum()).collect();
        let vcv: f64 = v.iter().zip(&cv).map(|(a, b)| a * b).sum();
        let sigma = 1.0 + c.norm_l2();
        c = Mat::from_fn(d, d, |i, j| c[(i, j)] - v[i] * cv[j] - cv[i] * v[j] + (vcv + sigma) * v[i] * v[j]);
    }
    let vals = c
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::LinearAlgebra(format!("symmetric eigensolver: {e:?}")))?;
    Ok(vals[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondOrderReport {
    pub trials: usize,
    /// Smallest `⟨η, L₊η⟩ / ‖η‖²` seen.
    pub min_quotient: f64,
    pub violations: usize,
    pub eps_zero: f64,
}

impl SecondOrderReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// `⟨η, L₊η⟩ ≥ -ε_zero ‖η‖²` for random even `η ⊥ Q^{α+1}`.
pub fn second_order_condition(q: &Field, params: &ModelParams, trials: usize, seed: u64) -> Result<SecondOrderReport> {
    let grid = q.grid();
    let eps_zero = zero_tolerance(fixed_point_residual(q, params)?);
    let n: Vec<f64> = q.values().iter().map(|v| v.abs().powf(params.alpha + 1.0)).collect();
    let nn = grid.dot(&n, &n);
    let scale = params.lambda.powf(-0.5 / params.s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_quotient = f64::INFINITY;
    let mut violations = 0;
    for _ in 0..trials {
        let bumps: Vec<(f64, f64, f64)> = (0..4)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.0..5.0) * scale, rng.gen_range(0.3..3.0) * scale))
            .collect();
        let mut eta: Vec<f64> = grid
            .nodes()
            .into_iter()
            .map(|x| {
                bumps
                    .iter()
                    .map(|&(c, a, w)| c * ((-((x - a) / w).powi(2)).exp() + (-((x + a) / w).powi(2)).exp()))
                    .sum()
            })
            .collect();
        let t = grid.dot(&eta, &n) / nn;
        eta.iter_mut().zip(&n).for_each(|(e, m)| *e -= t * m);
        let le = apply_lplus(q, params, &eta)?;
        let quotient = grid.dot(&eta, &le) / grid.dot(&eta, &eta);
        min_quotient = min_quotient.min(quotient);
        if quotient < -eps_zero {
            violations += 1;
        }
    }
    Ok(SecondOrderReport { trials, min_quotient, violations, eps_zero })
}

/// `⟨Q, L₊Q⟩ = -α ∫|Q|^{α+2}` as a check on assembled quantities.
pub fn ground_state_quadratic_form(q: &Field, params: &ModelParams) -> Result<(f64, f64)> {
    let lq = apply_lplus(q, params, q.values())?;
    Ok((q.grid().dot(q.values(), &lq), -params.alpha * power_integral(q, params.alpha + 2.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sech_state(l: f64, n: usize) -> (Field, ModelParams) {
        let g = Grid::new(l, n).unwrap();
        let q = g.sample(|x| 2f64.sqrt() / x.cosh()).with_parity(Parity::Even);
        (q, ModelParams::new(1.0, 2.0, 1.0).unwrap())
    }

    #[test]
    fn free_operator_is_diagonal() {
        let g = Grid::new(20.0, 64).unwrap();
        let m = sector_operator(&g, 0.6, 1.5, &vec![0.0; 64], Sector::Even).unwrap();
        for (i, k) in Sector::Even.modes(64).into_iter().enumerate() {
            let xi = g.wavenumber(k).abs();
            assert!((m[(i, i)] - xi.powf(1.2) - 1.5).abs() < 1e-12);
            for j in 0..m.ncols() {
                if j != i {
                    assert!(m[(i, j)].abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn basis_round_trip() {
        let g = Grid::new(10.0, 32).unwrap();
        let f = g.sample(|x| (-x * x).exp() * (1.0 + 0.3 * x));
        let even = f.symmetrized(Parity::Even);
        let odd = f.symmetrized(Parity::Odd);
        let back_e = synthesize(&g, Sector::Even, &project(&g, Sector::Even, even.values()));
        let back_o = synthesize(&g, Sector::Odd, &project(&g, Sector::Odd, odd.values()));
        for j in 0..32 {
            assert!((back_e[j] - even.values()[j]).abs() < 1e-13);
            // the odd part loses only its Nyquist content, which is zero for odd data
            assert!((back_o[j] - odd.values()[j]).abs() < 1e-13);
        }
    }

    #[test]
    fn poschl_teller_spectrum() {
        let (q, p) = sech_state(40.0, 512);
        let even = spectrum(&build_lplus(&q, &p, Sector::Even).unwrap(), 3).unwrap();
        let odd = spectrum(&build_lplus(&q, &p, Sector::Odd).unwrap(), 2).unwrap();
        assert!((even.eigenvalues[0] + 3.0).abs() < 1e-6, "{:?}", even.eigenvalues);
        assert!(odd.eigenvalues[0].abs() < 1e-6, "{:?}", odd.eigenvalues);
        assert_eq!(even.morse_index, 1);
        assert!(perron_checks(&even, &odd).unwrap().passed());
        // ground eigenfield ∝ sech²
        let phi = &even.eigenfields[0];
        let o = q.grid().origin();
        for j in (o..o + 200).step_by(7) {
            let x = q.grid().node(j);
            let expect = phi.values()[o] / x.cosh().powi(2);
            assert!((phi.values()[j] - expect).abs() < 1e-8);
        }
        let m = build_lplus(&q, &p, Sector::Even).unwrap();
        assert!(m.symmetry_defect() <= 1e-12);
    }

    #[test]
    fn lplus_on_sech_squared() {
        let (q, p) = sech_state(40.0, 512);
        let u = q.grid().sample(|x| 1.0 / x.cosh().powi(2));
        let lu = apply_lplus(&q, &p, u.values()).unwrap();
        for (a, b) in lu.iter().zip(u.values()) {
            assert!((a + 3.0 * b).abs() < 1e-8);
        }
    }

    #[test]
    fn sech_identities_and_kernel() {
        // the window starts at 0.3L, where xQ′ must already be negligible
        let (q, p) = sech_state(80.0, 1024);
        let (rq, rr) = identity_residuals(&q, &p).unwrap();
        assert!(rq < 1e-7 && rr < 1e-7, "{rq} {rr}");
        let k = kernel_residual(&q, &p).unwrap();
        assert!(k.residual < 1e-8 && k.even_gap > 0.1, "{k:?}");
        let bad = q.hadamard(&q.grid().sample(|x| 1.0 + 0.05 * (-x * x).exp()).with_parity(Parity::Even));
        assert!(kernel_residual(&bad, &p).unwrap().residual > 1e-2);
        let g = q.grid().clone();
        assert!(identity_residuals(&Field::zeros(&g, Parity::Even), &p).is_err());
    }

    #[test]
    fn coercivity_needs_the_translation_mode_removed() {
        let (q, p) = sech_state(30.0, 256);
        let delta = coercivity_check(&q, &p).unwrap();
        assert!(delta > 0.0);
        let loose = coercivity_minimum(&q, &p, false).unwrap();
        assert!(loose.odd_minimum.abs() < 1e-6, "{loose:?}");
    }

    #[test]
    fn second_order_and_quadratic_form() {
        let (q, p) = sech_state(30.0, 256);
        let rep = second_order_condition(&q, &p, 100, 7).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let (form, expect) = ground_state_quadratic_form(&q, &p).unwrap();
        assert!(form < 0.0 && (form - expect).abs() < 1e-8 * expect.abs());
    }

    #[test]
    fn sign_change_counts() {
        let g = Grid::new(20.0, 256).unwrap();
        let a = sign_changes(&g.sample(|x| x * (-x * x).exp()), SIGN_THRESHOLD);
        assert_eq!(a.total, 1);
        let b = sign_changes(&g.sample(|x| (1.0 - x * x) * (-x * x).exp()), SIGN_THRESHOLD);
        assert_eq!((b.total, b.positive_axis), (2, 1));
    }
}
