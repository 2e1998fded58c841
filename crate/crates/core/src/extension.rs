//! Extension of a field on the line to the upper half-plane with weight
//! `y^a`, `a = 1 - 2s`: each Fourier mode is carried by the profile
//! `m_a(r) = (2/Γ(s)) (r/2)^s K_s(r)` at `r = |ξ| y`.
//!
//! The box is periodic in `x`, so the half-plane becomes a half-cylinder. The
//! zero mode has `m_a(0) = 1` and is carried unchanged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{ensure, Error, Result};
use crate::kernels::image_sums;
use crate::quadrature::{integrate, QuadOptions};
use crate::spectral::{apply_symbol, hs_seminorm_sq, Field, Grid, Parity, SymbolSpec};

/// Weight exponent `a = 1 - 2s`.
pub fn weight_exponent(s: f64) -> Result<f64> {
    ensure(s > 0.0 && s < 1.0, || format!("the extension needs 0 < s < 1, got {s}"))?;
    Ok(1.0 - 2.0 * s)
}

/// Exponent of the profile used by [`extend`]. `s = 1` is admitted there: the
/// profile `r K_1(r)` is regular even though `c_a` has a pole at `a = -1`.
fn profile_exponent(s: f64) -> Result<f64> {
    ensure(s > 0.0 && s <= 1.0, || format!("need 0 < s <= 1, got {s}"))?;
    Ok(1.0 - 2.0 * s)
}

/// `c_a = 2^a Γ((1+a)/2) / Γ((1-a)/2)`.
pub fn c_constant(a: f64) -> Result<f64> {
    ensure(a > -1.0 && a < 1.0, || format!("c_a has a pole at a = ±1, got a = {a}"))?;
    Ok(2f64.powf(a) * gamma(0.5 * (1.0 + a)) / gamma(0.5 * (1.0 - a)))
}

/// `e^r K_ν(r)` from `∫₀^∞ e^{-r(cosh t - 1)} cosh(νt) dt`. The integrand
/// decays double-exponentially, so the trapezoid rule converges
/// geometrically in the step.
pub fn bessel_k_scaled(nu: f64, r: f64) -> f64 {
    let h = if r > 25.0 { 0.5 / r.sqrt() } else { 0.1 };
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let term = (-r * (t.cosh() - 1.0)).exp() * (nu * t).cosh();
        sum += term;
        if t > 1.0 && term < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    h * sum
}

fn profile_direct(nu: f64, r: f64) -> (f64, f64) {
    if r == 0.0 {
        return (1.0, f64::NEG_INFINITY);
    }
    let pre = 2.0 / gamma(nu) * (0.5 * r).powf(nu) * (-r).exp();
    (pre * bessel_k_scaled(nu, r), -pre * bessel_k_scaled(1.0 - nu, r))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileTable {
    pub a: f64,
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

/// `m_a` and `m_a′` at the given `r ≥ 0`, by direct quadrature.
pub fn profile_m(a: f64, rs: &[f64]) -> Result<ProfileTable> {
    ensure(a > -1.0 && a < 1.0, || format!("need -1 < a < 1, got {a}"))?;
    ensure(rs.iter().all(|&r| r >= 0.0), || "abscissae must be nonnegative".into())?;
    let nu = 0.5 * (1.0 - a);
    let (values, derivatives) = rs.iter().map(|&r| if r > 750.0 { (0.0, 0.0) } else { profile_direct(nu, r) }).unzip();
    Ok(ProfileTable { a, abscissae: rs.to_vec(), values, derivatives })
}

/// `m_a` by cubic Hermite interpolation in `log r` on `[1e-10, 750]`; the
/// two-term expansion `1 - Γ(1-ν)/Γ(1+ν) (r/2)^{2ν}` below, zero above.
pub struct Profile {
    pub a: f64,
    nu: f64,
    small: f64,
    log_lo: f64,
    step: f64,
    values: Vec<f64>,
    /// `d m / d log r`.
    slopes: Vec<f64>,
}

impl Profile {
    const LO: f64 = 1e-10;
    const HI: f64 = 750.0;
    const NODES: usize = 6000;

    pub fn new(a: f64) -> Result<Self> {
        ensure(a >= -1.0 && a < 1.0, || format!("need -1 <= a < 1, got {a}"))?;
        let nu = 0.5 * (1.0 - a);
        let log_lo = Self::LO.ln();
        let step = (Self::HI.ln() - log_lo) / (Self::NODES - 1) as f64;
        let (values, slopes) = (0..Self::NODES)
            .map(|i| {
                let r = (log_lo + i as f64 * step).exp();
                let (m, dm) = profile_direct(nu, r);
                (m, r * dm)
            })
            .unzip();
        // at ν = 1 the correction is O(r² log r), below 1e-19 on [0, LO]
        let small = if nu < 1.0 { gamma(1.0 - nu) / gamma(1.0 + nu) } else { 0.0 };
        Ok(Profile { a, nu, small, log_lo, step, values, slopes })
    }

    pub fn value(&self, r: f64) -> f64 {
        if r < Self::LO {
            return 1.0 - self.small * (0.5 * r).powf(2.0 * self.nu);
        }
        if r >= Self::HI {
            return 0.0;
        }
        let x = (r.ln() - self.log_lo) / self.step;
        let i = (x.floor() as usize).min(Self::NODES - 2);
        let t = x - i as f64;
        let (p0, p1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i] * self.step, self.slopes[i + 1] * self.step);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * p0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * p1 + (t3 - t2) * m1
    }

    /// `m_a′(r)` by direct quadrature.
    pub fn derivative(&self, r: f64) -> f64 {
        if r > Self::HI {
            0.0
        } else {
            profile_direct(self.nu, r).1
        }
    }
}

/// `∫₀^∞ r^a (m_a′² + m_a²) dr`, computed in `log r` with the small-`r`
/// behaviour `m_a′ ≈ -c_a r^{-a}`, `m_a ≈ 1` integrated analytically.
pub fn profile_energy(a: f64) -> Result<f64> {
    let ca = c_constant(a)?;
    let nu = 0.5 * (1.0 - a);
    let lo: f64 = 1e-12;
    let mut f = |t: f64| {
        let r = t.exp();
        let (m, dm) = profile_direct(nu, r);
        r.powf(a + 1.0) * (dm * dm + m * m)
    };
    let opts = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-13, ..Default::default() };
    let body = integrate(&mut f, lo.ln(), 60f64.ln(), opts)?.value;
    Ok(body + ca * ca * lo.powf(1.0 - a) / (1.0 - a) + lo.powf(1.0 + a) / (1.0 + a))
}

/// Log-spaced levels from `1e-4 L/N` to `2L`.
pub fn default_levels(grid: &Grid, count: usize) -> Vec<f64> {
    let lo = 1e-4 * grid.spacing();
    let hi = 2.0 * grid.length();
    let step = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|m| lo * (m as f64 * step).exp()).collect()
}

pub const DEFAULT_LEVELS: usize = 256;

#[derive(Debug, Clone)]
pub struct ExtensionField {
    pub grid: Grid,
    /// Increasing, log-spaced.
    pub levels: Vec<f64>,
    /// `samples[m][j] = u(x_j, y_m)`.
    pub samples: Vec<Vec<f64>>,
    pub a: f64,
}

impl ExtensionField {
    pub fn slice(&self, m: usize) -> Field {
        Field::new(&self.grid, self.samples[m].clone(), Parity::None).expect("slice length matches the grid")
    }

    /// Multiply level `y` by `factor(y)`.
    pub fn scale_levels<F: Fn(f64) -> f64>(&self, factor: F) -> ExtensionField {
        let samples = self
            .levels
            .iter()
            .zip(&self.samples)
            .map(|(&y, row)| row.iter().map(|v| factor(y) * v).collect())
            .collect();
        ExtensionField { samples, ..self.clone() }
    }

    fn log_step(&self) -> Result<f64> {
        let t: Vec<f64> = self.levels.iter().map(|y| y.ln()).collect();
        ensure(t.len() >= 5, || "need at least five levels".into())?;
        let dt = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
        ensure(t.windows(2).all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.max(1.0)), || {
            "levels must be log-spaced".into()
        })?;
        Ok(dt)
    }

    /// `∂u/∂(log y)` at every level, fourth order.
    fn log_derivative(&self, dt: f64) -> Vec<Vec<f64>> {
        let n = self.levels.len();
        let u = &self.samples;
        let stencil = |m: usize| -> (usize, [f64; 5]) {
            // Fornberg weights on five equispaced nodes, shifted at the ends
            match m {
                0 => (0, [-25.0, 48.0, -36.0, 16.0, -3.0]),
                1 => (0, [-3.0, -10.0, 18.0, -6.0, 1.0]),
                _ if m == n - 2 => (n - 5, [-1.0, 6.0, -18.0, 10.0, 3.0]),
                _ if m == n - 1 => (n - 5, [3.0, -16.0, 36.0, -48.0, 25.0]),
                _ => (m - 2, [1.0, -8.0, 0.0, 8.0, -1.0]),
            }
        };
        (0..n)
            .map(|m| {
                let (start, w) = stencil(m);
                (0..self.grid.points())
                    .map(|j| (0..5).map(|k| w[k] * u[start + k][j]).sum::<f64>() / (12.0 * dt))
                    .collect()
            })
            .collect()
    }
}

/// `u(x, y) = Σ_k f̂_k m_a(|ξ_k| y) e^{iξ_k x}` at every level.
pub fn extend(f: &Field, s: f64, levels: &[f64]) -> Result<ExtensionField> {
    let a = profile_exponent(s)?;
    ensure(levels.iter().all(|&y| y > 0.0), || "levels must be positive".into())?;
    let grid = f.grid().clone();
    let profile = Profile::new(a)?;
    let xi = grid.abs_wavenumbers();
    let c = grid.fft(f.values());
    let samples = levels
        .iter()
        .map(|&y| {
            let cy: Vec<Complex64> = c.iter().zip(&xi).map(|(ck, &k)| ck * profile.value(k * y)).collect();
            grid.ifft_real(cy)
        })
        .collect();
    let u = ExtensionField { grid, levels: levels.to_vec(), samples, a };
    let dev = cross_check(f, &u, 3, 0)?;
    if dev > 1e-5 {
        return Err(Error::Numerical(format!("extension and kernel convolution differ by {dev:e}")));
    }
    Ok(u)
}

/// Extension with an arbitrary per-mode profile `ρ(|ξ|y)`, `ρ(0) = 1`. The
/// trace is `f`; for `ρ ≠ m_a` the result is not an extension.
pub fn profile_field<R: Fn(f64) -> f64>(f: &Field, s: f64, levels: &[f64], rho: R) -> Result<ExtensionField> {
    let a = profile_exponent(s)?;
    let grid = f.grid().clone();
    let xi = grid.abs_wavenumbers();
    let c = grid.fft(f.values());
    let samples = levels
        .iter()
        .map(|&y| grid.ifft_real(c.iter().zip(&xi).map(|(ck, &k)| ck * rho(k * y)).collect()))
        .collect();
    Ok(ExtensionField { grid, levels: levels.to_vec(), samples, a })
}

/// Normalizing constant of `P_a(x) = C (1 + x²)^{-(2-a)/2}`.
pub fn poisson_constant(a: f64) -> f64 {
    gamma(0.5 * (2.0 - a)) / (std::f64::consts::PI.sqrt() * gamma(0.5 * (1.0 - a)))
}

pub fn poisson_kernel(a: f64, x: f64) -> f64 {
    poisson_constant(a) * (1.0 + x * x).powf(-0.5 * (2.0 - a))
}

/// `∫ P_a`, by quadrature on `[0, 1e3]` plus the algebraic tail.
pub fn poisson_mass(a: f64) -> Result<f64> {
    let p = 2.0 - a;
    let cut: f64 = 1e3;
    let opts = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-13, ..Default::default() };
    let body = integrate(&mut |x: f64| poisson_kernel(a, x), 0.0, cut, opts)?.value;
    // (1+x²)^{-p/2} = x^{-p} (1 - (p/2) x^{-2} + …)
    let c = poisson_constant(a);
    let tail = c * (cut.powf(1.0 - p) / (p - 1.0) - 0.5 * p * cut.powf(-1.0 - p) / (p + 1.0));
    Ok(2.0 * (body + tail))
}

/// `y^{-1} P_a(z/y)` summed over the periodic images.
fn periodic_poisson(a: f64, y: f64, z: f64, l: f64) -> f64 {
    let p = 2.0 - a;
    let c = poisson_constant(a);
    // far images: (y² + w²)^{-p/2} = Σ_k binom(-p/2, k) y^{2k} w^{-p-2k}, w ≥ L/2 ≥ 4y
    let mut coeffs = Vec::new();
    let mut ps = Vec::new();
    let mut b = 1.0;
    for k in 0..14 {
        coeffs.push(b * y.powi(2 * k as i32));
        ps.push(p + 2.0 * k as f64);
        b *= (-0.5 * p - k as f64) / (k as f64 + 1.0);
    }
    let images: f64 = image_sums(z, l, &ps, 0.5).iter().zip(&coeffs).map(|(s, c)| s * c).sum();
    c * y.powf(p - 1.0) * images + poisson_kernel(a, z / y) / y
}

/// Largest relative L² gap between `u` and the periodic `P_a` convolution of
/// `f` on `count` levels drawn with `seed` from `y ∈ [10h, L/8]`.
pub fn cross_check(f: &Field, u: &ExtensionField, count: usize, seed: u64) -> Result<f64> {
    let grid = f.grid();
    let (lo, hi) = (10.0 * grid.spacing(), grid.length() / 8.0);
    let eligible: Vec<usize> = (0..u.levels.len()).filter(|&m| u.levels[m] >= lo && u.levels[m] <= hi).collect();
    if eligible.is_empty() {
        return Ok(0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.points();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let m = eligible[rng.gen_range(0..eligible.len())];
        let y = u.levels[m];
        let kernel: Vec<f64> = (0..n)
            .map(|j| {
                let z = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 } * grid.spacing();
                periodic_poisson(u.a, y, z, grid.length())
            })
            .collect();
        let kh = grid.fft(&kernel);
        let fh = grid.fft(f.values());
        let h = grid.spacing();
        let conv = grid.ifft_real(fh.iter().zip(&kh).map(|(a, b)| a * b * h).collect());
        let d: Vec<f64> = conv.iter().zip(&u.samples[m]).map(|(a, b)| a - b).collect();
        let scale = grid.dot(&conv, &conv).sqrt().max(f64::MIN_POSITIVE);
        worst = worst.max(grid.dot(&d, &d).sqrt() / scale);
    }
    Ok(worst)
}

/// `∬ (|∂_x u|² + |∂_y u|²) y^a dx dy`.
///
/// `∂_x` is spectral on each level, `∂_y` a fourth-order difference in
/// `log y`, and the `y` integral a trapezoid rule in `log y`. Below the first
/// level the integrand follows `y^a` (the `x` part) and `y^{-a}` (the `y`
/// part), which are integrated exactly.
pub fn dirichlet_energy(u: &ExtensionField) -> Result<f64> {
    let dt = u.log_step()?;
    let dlog = u.log_derivative(dt);
    let grid = &u.grid;
    let a = u.a;
    let mut ex = Vec::with_capacity(u.levels.len());
    let mut ey = Vec::with_capacity(u.levels.len());
    for (m, &y) in u.levels.iter().enumerate() {
        ex.push(hs_seminorm_sq(&u.slice(m), 1.0)?);
        ey.push(grid.dot(&dlog[m], &dlog[m]) / (y * y));
    }
    let last = u.levels.len() - 1;
    let mut total = 0.0;
    for (m, &y) in u.levels.iter().enumerate() {
        let w = if m == 0 || m == last { 0.5 } else { 1.0 };
        total += w * (ex[m] + ey[m]) * y.powf(a + 1.0);
    }
    total *= dt;
    let y0 = u.levels[0];
    total += ex[0] * y0.powf(a + 1.0) / (a + 1.0) + ey[0] * y0.powf(a + 1.0) / (1.0 - a);
    Ok(total)
}

/// `dirichlet_energy(extend(f)) / (c_a ‖(-Δ)^{s/2} f‖²)`.
pub fn energy_ratio(f: &Field, s: f64) -> Result<f64> {
    let u = extend(f, s, &default_levels(f.grid(), DEFAULT_LEVELS))?;
    Ok(dirichlet_energy(&u)? / (c_constant(u.a)? * hs_seminorm_sq(f, s)?))
}

/// Discrete residual of `div(y^a ∇u) = 0` relative to `|y^a u_xx|`, over
/// interior levels, with second-order differences in `log y`.
pub fn harmonicity_residual(u: &ExtensionField) -> Result<f64> {
    let dt = u.log_step()?;
    let lap = SymbolSpec::fractional_laplacian(1.0).multipliers(&u.grid)?;
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for m in 1..u.levels.len() - 1 {
        let y = u.levels[m];
        let uxx: Vec<f64> = u.grid.apply_multipliers(&u.samples[m], &lap).into_iter().map(|v| -v).collect();
        for j in 0..u.grid.points() {
            let (lo, mid, hi) = (u.samples[m - 1][j], u.samples[m][j], u.samples[m + 1][j]);
            let ut = (hi - lo) / (2.0 * dt);
            let utt = (hi - 2.0 * mid + lo) / (dt * dt);
            // y^a (u_xx + u_yy + (a/y) u_y) with u_yy = (u_tt - u_t)/y²
            let r = uxx[j] + (utt + (u.a - 1.0) * ut) / (y * y);
            num = num.max(y.powf(u.a) * r.abs());
            den = den.max(y.powf(u.a) * uxx[j].abs());
        }
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NeumannReport {
    pub eps: Vec<f64>,
    /// `‖-c_a^{-1} ε^a ∂_y u(·,ε) - (-Δ)^s f‖ / ‖(-Δ)^s f‖`.
    pub deviations: Vec<f64>,
    pub decreasing: bool,
}

/// Weighted Neumann data of `extend(f)` at `y = ε`, with `∂_y` taken on the
/// profile.
pub fn neumann_trace(f: &Field, s: f64, eps: &[f64]) -> Result<NeumannReport> {
    let a = weight_exponent(s)?;
    let ca = c_constant(a)?;
    let grid = f.grid();
    let profile = Profile::new(a)?;
    let target = apply_symbol(f, &SymbolSpec::fractional_laplacian(s))?;
    let tn = target.l2_norm();
    let xi = grid.abs_wavenumbers();
    let c = grid.fft(f.values());
    let mut deviations = Vec::with_capacity(eps.len());
    for &e in eps {
        let dy: Vec<Complex64> = c
            .iter()
            .zip(&xi)
            .map(|(ck, &k)| if k == 0.0 { Complex64::new(0.0, 0.0) } else { ck * (k * profile.derivative(k * e)) })
            .collect();
        let trace: Vec<f64> = grid.ifft_real(dy).into_iter().map(|v| -e.powf(a) * v / ca).collect();
        let d: Vec<f64> = trace.iter().zip(target.values()).map(|(a, b)| a - b).collect();
        deviations.push(if tn == 0.0 { grid.dot(&d, &d).sqrt() } else { grid.dot(&d, &d).sqrt() / tn });
    }
    let decreasing = deviations.windows(2).all(|w| w[1] < w[0]);
    Ok(NeumannReport { eps: eps.to_vec(), deviations, decreasing })
}

/// `|c_a^{-1} E(extend ψ) + ∫V ψ² - λ_claimed|` for a normalized eigenfield
/// `ψ` of `(-Δ)^s + V` with eigenvalue `λ_claimed`.
pub fn rayleigh_eigen_check(psi: &Field, potential: &Field, lambda_claimed: f64, s: f64) -> Result<f64> {
    let a = weight_exponent(s)?;
    if (psi.l2_norm() - 1.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!("ψ must be normalized, ‖ψ‖ = {}", psi.l2_norm())));
    }
    let u = extend(psi, s, &default_levels(psi.grid(), DEFAULT_LEVELS))?;
    let kinetic = dirichlet_energy(&u)? / c_constant(a)?;
    let pot = psi.grid().dot(potential.values(), &psi.values().iter().map(|v| v * v).collect::<Vec<_>>());
    Ok((kinetic + pot - lambda_claimed).abs())
}

/// Components of `{u > t}` and `{u < -t}`, `t = threshold · max|u|`, under
/// 4-connectivity; `x` wraps around.
pub fn nodal_domains(u: &ExtensionField, threshold: f64) -> usize {
    let rows = u.levels.len();
    let cols = u.grid.points();
    let peak = u.samples.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let cut = threshold * peak;
    let sign = |m: usize, j: usize| {
        let v = u.samples[m][j];
        if v > cut {
            1i8
        } else if v < -cut {
            -1
        } else {
            0
        }
    };
    let mut seen = vec![false; rows * cols];
    let mut count = 0;
    let mut stack = Vec::new();
    for m0 in 0..rows {
        for j0 in 0..cols {
            let sg = sign(m0, j0);
            if sg == 0 || seen[m0 * cols + j0] {
                continue;
            }
            count += 1;
            seen[m0 * cols + j0] = true;
            stack.push((m0, j0));
            while let Some((m, j)) = stack.pop() {
                let mut next = vec![(m, (j + 1) % cols), (m, (j + cols - 1) % cols)];
                if m > 0 {
                    next.push((m - 1, j));
                }
                if m + 1 < rows {
                    next.push((m + 1, j));
                }
                for (mm, jj) in next {
                    if !seen[mm * cols + jj] && sign(mm, jj) == sg {
                        seen[mm * cols + jj] = true;
                        stack.push((mm, jj));
                    }
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceReport {
    pub trials: usize,
    /// Smallest `E(u) / (c_a ‖(-Δ)^{s/2} Tu‖²) - 1`.
    pub min_excess: f64,
    pub strict: bool,
}

/// Energy of random fields with the profile `e^{-βr}(1+γr)` against the
/// trace bound.
pub fn trace_inequality_trials(grid: &Grid, s: f64, trials: usize, seed: u64) -> Result<TraceReport> {
    let a = weight_exponent(s)?;
    let ca = c_constant(a)?;
    let levels = default_levels(grid, DEFAULT_LEVELS);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_excess = f64::INFINITY;
    for _ in 0..trials {
        let bumps: Vec<(f64, f64, f64)> = (0..3)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-3.0..3.0), rng.gen_range(0.5..2.0)))
            .collect();
        let f = grid.sample(|x| bumps.iter().map(|&(c, x0, w)| c * (-((x - x0) / w).powi(2)).exp()).sum());
        let beta = rng.gen_range(0.5..2.0);
        let gam = rng.gen_range(0.3..1.0);
        let u = profile_field(&f, s, &levels, |r| (-beta * r).exp() * (1.0 + gam * r))?;
        let excess = dirichlet_energy(&u)? / (ca * hs_seminorm_sq(&f, s)?) - 1.0;
        min_excess = min_excess.min(excess);
    }
    Ok(TraceReport { trials, min_excess, strict: min_excess > 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trace_constants() {
        assert!((c_constant(0.0).unwrap() - 1.0).abs() < 1e-14);
        let expect = 2f64.sqrt() * gamma(0.75) / gamma(0.25);
        assert!((c_constant(0.5).unwrap() - expect).abs() < 1e-14);
        assert!((expect - 0.477989).abs() < 1e-5);
        for a in [0.3, 0.6] {
            assert!((c_constant(a).unwrap() * c_constant(-a).unwrap() - 1.0).abs() < 1e-13);
        }
        assert!(c_constant(1.0).is_err() && c_constant(-1.0).is_err());
    }

    #[test]
    fn half_integer_profile_is_exponential() {
        let rs: Vec<f64> = (0..200).map(|i| 0.05 * i as f64).collect();
        let t = profile_m(0.0, &rs).unwrap();
        for (r, m) in rs.iter().zip(&t.values) {
            assert!((m - (-r).exp()).abs() < 1e-10, "{r} {m}");
        }
        for a in [-0.5, 0.0, 0.5] {
            assert_eq!(profile_m(a, &[0.0]).unwrap().values[0], 1.0);
        }
        let a = 0.4;
        let r: f64 = 1e-4;
        let dm = profile_m(a, &[r]).unwrap().derivatives[0];
        assert!((r.powf(a) * dm + c_constant(a).unwrap()).abs() < 1e-3);
    }

    #[test]
    fn profile_table_invariants() {
        for a in [-0.6, 0.0, 0.4] {
            let p = Profile::new(a).unwrap();
            let rs: Vec<f64> = (0..400).map(|i| 1e-12 * 1.1f64.powi(i)).filter(|&r| r < 700.0).collect();
            let direct = profile_m(a, &rs).unwrap();
            let mut last = 1.0;
            for (r, m) in rs.iter().zip(&direct.values) {
                let v = p.value(*r);
                assert!((v - m).abs() < 1e-9, "{a} {r} {v} {m}");
                assert!(*m > 0.0 && *m <= 1.0 + 1e-14 && *m <= last + 1e-14, "{a} {r} {m} {last}");
                last = *m;
            }
        }
    }

    #[test]
    fn scalar_energy_identity() {
        for a in [-0.4, 0.0, 0.4] {
            let e = profile_energy(a).unwrap();
            assert!((e - c_constant(a).unwrap()).abs() < 1e-6, "{a} {e}");
        }
    }

    #[test]
    fn poisson_extension_of_a_cosine() {
        let g = Grid::new(10.0, 64).unwrap();
        let k = 2.0 * PI / 10.0;
        let f = g.sample(|x| (k * x).cos());
        let levels = default_levels(&g, 64);
        let u = extend(&f, 0.5, &levels).unwrap();
        for (m, &y) in levels.iter().enumerate() {
            for j in 0..64 {
                let expect = (-k * y).exp() * (k * g.node(j)).cos();
                assert!((u.samples[m][j] - expect).abs() < 1e-10);
            }
        }
        let zero = extend(&Field::zeros(&g, Parity::Even), 0.5, &levels).unwrap();
        assert!(zero.samples.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn kernel_mass_and_cross_check() {
        for s in [0.3, 0.5, 0.7] {
            let a = 1.0 - 2.0 * s;
            assert!((poisson_mass(a).unwrap() - 1.0).abs() < 1e-9);
            let g = Grid::new(40.0, 512).unwrap();
            let f = g.sample(|x| (-x * x).exp());
            let u = extend(&f, s, &default_levels(&g, 128)).unwrap();
            assert!(cross_check(&f, &u, 5, 3).unwrap() < 1e-5);
        }
    }

    #[test]
    fn energy_identity() {
        let g = Grid::new(40.0, 512).unwrap();
        let fs = [
            g.sample(|x| (-x * x).exp()),
            g.sample(|x| 1.0 / (1.0 + x * x)),
            g.sample(|x| (-(x - 2.0).powi(2)).exp() + 0.5 * (-(x + 3.0).powi(2) / 2.0).exp()),
        ];
        for s in [0.3, 0.5, 0.7] {
            for f in &fs {
                let ratio = energy_ratio(f, s).unwrap();
                assert!((ratio - 1.0).abs() < 1e-3, "{s} {ratio}");
            }
        }
    }

    #[test]
    fn random_profiles_are_strictly_above_the_trace_bound() {
        let g = Grid::new(40.0, 256).unwrap();
        let rep = trace_inequality_trials(&g, 0.5, 20, 11).unwrap();
        assert!(rep.strict && rep.trials == 20);
        // e^{-r}(1+γr) exceeds by γ²/2 at s = 1/2
        let f = g.sample(|x| (-x * x).exp());
        let u = profile_field(&f, 0.5, &default_levels(&g, DEFAULT_LEVELS), |r| (-r).exp() * (1.0 + 0.6 * r)).unwrap();
        let excess = dirichlet_energy(&u).unwrap() / hs_seminorm_sq(&f, 0.5).unwrap() - 1.0;
        assert!((excess - 0.18).abs() < 1e-4, "{excess}");
    }

    #[test]
    fn harmonicity_is_second_order() {
        let g = Grid::new(20.0, 256).unwrap();
        let f = g.sample(|x| (-x * x).exp());
        let res: Vec<f64> = [64, 128, 256]
            .iter()
            .map(|&n| {
                let lv: Vec<f64> = (0..n).map(|m| 0.01 * (m as f64 * 1000f64.ln() / (n - 1) as f64).exp()).collect();
                harmonicity_residual(&extend(&f, 0.3, &lv).unwrap()).unwrap()
            })
            .collect();
        for w in res.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order > 1.8 && order < 2.2, "{res:?}");
        }
    }

    #[test]
    fn unit_power_has_the_local_profile() {
        let g = Grid::new(10.0, 64).unwrap();
        let f = g.sample(|x| (2.0 * PI * x / 10.0).cos());
        let u = extend(&f, 1.0, &[0.5]).unwrap();
        let k = 2.0 * PI / 10.0;
        // K_1(π/10) = 2.89955878185295 (arbitrary-precision reference)
        let r = 0.5 * k;
        assert!((u.samples[0][g.origin()] - r * 2.89955878185295).abs() < 1e-9);
        assert!(c_constant(-1.0).is_err());
    }

    #[test]
    fn damped_field_exceeds_the_trace_bound() {
        let g = Grid::new(40.0, 512).unwrap();
        let f = g.sample(|x| (-x * x).exp());
        let u = extend(&f, 0.4, &default_levels(&g, DEFAULT_LEVELS)).unwrap();
        let damped = u.scale_levels(|y| 1.0 + y / (1.0 + y));
        let bound = c_constant(u.a).unwrap() * hs_seminorm_sq(&f, 0.4).unwrap();
        assert!(dirichlet_energy(&damped).unwrap() > bound);
    }

    #[test]
    fn neumann_data_of_a_cosine() {
        let g = Grid::new(10.0, 64).unwrap();
        let f = g.sample(|x| (2.0 * PI * x / 10.0).cos());
        let rep = neumann_trace(&f, 0.5, &[1e-1, 1e-2, 1e-3]).unwrap();
        assert!(rep.decreasing);
        // relative error O(ε)
        assert!(rep.deviations[2] < 1e-3 * 2.0 * PI / 10.0 * 2.0);
        let gauss = Grid::new(40.0, 512).unwrap().sample(|x| (-x * x).exp());
        assert!(neumann_trace(&gauss, 0.7, &[1e-1, 1e-2, 1e-3]).unwrap().decreasing);
        let zero = neumann_trace(&Field::zeros(&g, Parity::Even), 0.5, &[1e-2]).unwrap();
        assert_eq!(zero.deviations[0], 0.0);
    }

    #[test]
    fn boundary_slice_converges() {
        let g = Grid::new(40.0, 512).unwrap();
        let f = g.sample(|x| 1.0 / (1.0 + x * x));
        let eps = [1e-1, 1e-2, 1e-3];
        let u = extend(&f, 0.3, &eps).unwrap();
        let errs: Vec<f64> = (0..3).map(|m| u.slice(m).axpy(-1.0, &f).l2_norm()).collect();
        assert!(errs[1] < errs[0] && errs[2] < errs[1], "{errs:?}");
    }

    #[test]
    fn checkerboard_domains() {
        let g = Grid::new(8.0, 16).unwrap();
        let levels: Vec<f64> = (0..8).map(|m| 2f64.powi(m)).collect();
        // 4 columns by 2 bands: 8 blocks, alternating in x, wrapping in x
        let samples = (0..8)
            .map(|m| (0..16).map(|j| if ((j / 4) + (m / 4)) % 2 == 0 { 1.0 } else { -1.0 }).collect())
            .collect();
        let u = ExtensionField { grid: g, levels, samples, a: 0.0 };
        assert_eq!(nodal_domains(&u, 1e-6), 8);
    }
}
