//! Fractional heat kernel and resolvent kernel on ℝ, mass-one convention:
//!
//! ```text
//! K_t(x) = (1/π) ∫₀^∞ e^{-t u^{2s}} cos(ux) du,      ∫ K_t = 1
//! G(x)   = (1/π) ∫₀^∞ cos(ux) / (u^{2s} + λ) du  = ∫₀^∞ e^{-λt} K_t(x) dt
//! ```

use crate::error::{ensure, Error, Result};
use crate::quadrature::{fourier_cosine, integrate, QuadOptions};
use crate::spectral::Grid;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, ln_gamma};
use std::f64::consts::PI;
use std::path::Path;

const DENSITY_TOL: f64 = 1e-12;

fn check_order(s: f64) -> Result<()> {
    ensure(s > 0.0 && s <= 1.0, || format!("order s must lie in (0, 1], got {s}"))
}

/// Large-`z` expansion of `K_1(z)`:
/// `(1/π) Σ_k (-1)^{k+1} Γ(2sk+1) sin(πsk)/k! z^{-2sk-1}`.
/// Returns `None` unless the terms fall below `1e-16` of the sum before
/// they start to grow.
fn density_series(s: f64, z: f64) -> Option<f64> {
    let lz = z.ln();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let mag = (ln_gamma(2.0 * s * kf + 1.0) - ln_gamma(kf + 1.0) - (2.0 * s * kf + 1.0) * lz).exp();
        if mag > prev {
            return None;
        }
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * mag * (PI * s * kf).sin() / PI;
        if mag <= 1e-16 * sum.abs() || mag < 1e-300 {
            return Some(sum);
        }
        prev = mag;
    }
    None
}

/// `K_1(z)` for `z ≥ 0`.
pub fn unit_heat_kernel(s: f64, z: f64) -> Result<f64> {
    check_order(s)?;
    let z = z.abs();
    if z == 0.0 {
        return Ok(gamma(1.0 / (2.0 * s)) / (2.0 * PI * s));
    }
    if z >= 8.0 {
        if let Some(v) = density_series(s, z) {
            return Ok(v);
        }
    }
    let r = fourier_cosine(|u: f64| (-u.powf(2.0 * s)).exp(), z, DENSITY_TOL)?;
    Ok(r.value / PI)
}

/// `K_t(x) = t^{-1/2s} K_1(t^{-1/2s} x)`.
pub fn heat_kernel_value(s: f64, t: f64, x: f64) -> Result<f64> {
    ensure(t > 0.0, || format!("time must be positive, got {t}"))?;
    let c = t.powf(-1.0 / (2.0 * s));
    Ok(c * unit_heat_kernel(s, c * x)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatKernelTable {
    pub s: f64,
    pub t: f64,
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
}

/// `n` log-spaced abscissae on `[lo, hi]`.
pub fn log_abscissae(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp()).collect()
}

pub fn heat_kernel(s: f64, t: f64, xs: &[f64]) -> Result<HeatKernelTable> {
    check_order(s)?;
    ensure(t > 0.0, || format!("time must be positive, got {t}"))?;
    let values = xs.iter().map(|&x| heat_kernel_value(s, t, x)).collect::<Result<Vec<_>>>()?;
    Ok(HeatKernelTable { s, t, abscissae: xs.to_vec(), values })
}

impl HeatKernelTable {
    /// Trapezoid mass over `[-x_max, x_max]`, with the piece below the
    /// first abscissa taken as a rectangle at `K_t(0)`.
    pub fn tabulated_mass(&self) -> Result<f64> {
        let k0 = heat_kernel_value(self.s, self.t, 0.0)?;
        Ok(2.0 * trapezoid_from_origin(&self.abscissae, &self.values, k0))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["x", "value"])?;
        for (x, v) in self.abscissae.iter().zip(&self.values) {
            w.write_record([format!("{x:.17e}"), format!("{v:.17e}")])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn trapezoid_from_origin(xs: &[f64], vs: &[f64], v0: f64) -> f64 {
    let mut acc = 0.5 * xs[0] * (v0 + vs[0]);
    for i in 1..xs.len() {
        acc += 0.5 * (xs[i] - xs[i - 1]) * (vs[i] + vs[i - 1]);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatKernelBounds {
    pub positive: bool,
    pub monotone: bool,
    /// `max |x K_t(x)|` over the table
    pub max_xk: f64,
    pub xk_bound_holds: bool,
    pub peak: f64,
    pub peak_bound_holds: bool,
    /// abscissae at which any assertion fails
    pub offending: Vec<f64>,
}

impl HeatKernelBounds {
    pub fn passed(&self) -> bool {
        self.positive && self.monotone && self.xk_bound_holds && self.peak_bound_holds
    }
}

/// Positivity, strict decay in `|x|`, `|x K_t(x)| ≤ 1/π` and
/// `K_t(x) ≤ K_t(0) = Γ(1/2s) t^{-1/2s} / (2πs)`.
pub fn check_heat_kernel_bounds(table: &HeatKernelTable) -> HeatKernelBounds {
    let s = table.s;
    let peak = gamma(1.0 / (2.0 * s)) * table.t.powf(-1.0 / (2.0 * s)) / (2.0 * PI * s);
    let mut idx: Vec<usize> = (0..table.abscissae.len()).collect();
    idx.sort_by(|&a, &b| table.abscissae[a].abs().total_cmp(&table.abscissae[b].abs()));
    let mut offending = Vec::new();
    let (mut positive, mut monotone, mut xk_ok, mut peak_ok) = (true, true, true, true);
    let mut max_xk: f64 = 0.0;
    for (pos, &i) in idx.iter().enumerate() {
        let (x, v) = (table.abscissae[i], table.values[i]);
        let mut bad = false;
        if !(v > 0.0) {
            positive = false;
            bad = true;
        }
        if pos > 0 {
            let j = idx[pos - 1];
            if table.abscissae[j].abs() < x.abs() && !(v < table.values[j]) {
                monotone = false;
                bad = true;
            }
        }
        let xk = (x * v).abs();
        max_xk = max_xk.max(xk);
        if xk > 1.0 / PI * (1.0 + 1e-12) {
            xk_ok = false;
            bad = true;
        }
        if v > peak * (1.0 + 1e-12) {
            peak_ok = false;
            bad = true;
        }
        if bad {
            offending.push(x);
        }
    }
    HeatKernelBounds {
        positive,
        monotone,
        max_xk,
        xk_bound_holds: xk_ok,
        peak,
        peak_bound_holds: peak_ok,
        offending,
    }
}

/// `max_{|x| ≤ L/4} |(K_{t1} ∗ K_{t2})(x) - K_{t1+t2}(x)|`, the convolution
/// taken by the trapezoid rule over the grid nodes `|y| ≤ L/2`.
pub fn semigroup_check(s: f64, t1: f64, t2: f64, grid: &Grid) -> Result<f64> {
    check_order(s)?;
    ensure(t1 > 0.0 && t2 > 0.0, || "times must be positive".into())?;
    let n = grid.points();
    let h = grid.spacing();
    let half = n / 2;
    let k1 = (0..=n).map(|m| heat_kernel_value(s, t1, m as f64 * h)).collect::<Result<Vec<_>>>()?;
    let k2 = (0..=half).map(|m| heat_kernel_value(s, t2, m as f64 * h)).collect::<Result<Vec<_>>>()?;
    let quarter = n / 4;
    let mut worst: f64 = 0.0;
    for i in 0..=quarter as i64 {
        let mut acc = 0.0;
        for j in -(half as i64)..=half as i64 {
            let w = if j.unsigned_abs() as usize == half { 0.5 } else { 1.0 };
            acc += w * k1[(i - j).unsigned_abs() as usize] * k2[j.unsigned_abs() as usize];
        }
        let exact = heat_kernel_value(s, t1 + t2, i as f64 * h)?;
        worst = worst.max((h * acc - exact).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolventKernelTable {
    pub s: f64,
    pub lambda: f64,
    pub abscissae: Vec<f64>,
    /// Laplace-route values
    pub values: Vec<f64>,
    /// direct Fourier-route values
    pub route_b: Vec<f64>,
    /// relative route disagreement per abscissa
    pub deviation: Vec<f64>,
}

/// Laplace route: `∫₀^∞ e^{-λt} K_t(x) dt`, split at `t = 1` with
/// `t = e^{∓v}` on either side.
pub fn resolvent_laplace(s: f64, lambda: f64, x: f64) -> Result<f64> {
    let opts = QuadOptions { abs_tol: 1e-16, rel_tol: 1e-11, max_intervals: 2000 };
    let mut err = None;
    let mut kt = |t: f64| match heat_kernel_value(s, t, x) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            0.0
        }
    };
    let lower = integrate(
        |v: f64| {
            let t = (-v).exp();
            (-lambda * t).exp() * kt(t) * t
        },
        0.0,
        60.0,
        opts,
    )?;
    let vmax = (200.0 / lambda).ln().max(1.0);
    let upper = integrate(
        |v: f64| {
            let t = v.exp();
            (-lambda * t).exp() * kt(t) * t
        },
        0.0,
        vmax,
        opts,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(lower.value + upper.value)
}

/// Fourier route: `(1/π) ∫₀^∞ cos(ux)/(u^{2s} + λ) du`, `x ≠ 0`.
pub fn resolvent_fourier(s: f64, lambda: f64, x: f64) -> Result<f64> {
    let r = fourier_cosine(|u: f64| 1.0 / (u.powf(2.0 * s) + lambda), x.abs(), 1e-12)?;
    Ok(r.value / PI)
}

pub fn resolvent_kernel(s: f64, lambda: f64, xs: &[f64]) -> Result<ResolventKernelTable> {
    check_order(s)?;
    ensure(lambda > 0.0, || format!("λ must be positive, got {lambda}"))?;
    ensure(xs.iter().all(|&x| x != 0.0), || "the resolvent table needs nonzero abscissae".into())?;
    let mut values = Vec::with_capacity(xs.len());
    let mut route_b = Vec::with_capacity(xs.len());
    let mut deviation = Vec::with_capacity(xs.len());
    for &x in xs {
        let a = resolvent_laplace(s, lambda, x)?;
        let b = resolvent_fourier(s, lambda, x)?;
        let d = (a - b).abs() / b.abs();
        if (0.1..=20.0).contains(&x.abs()) && d > 1e-5 {
            return Err(Error::Numerical(format!(
                "resolvent routes disagree at x = {x}: Laplace {a:e}, Fourier {b:e}"
            )));
        }
        values.push(a);
        route_b.push(b);
        deviation.push(d);
    }
    Ok(ResolventKernelTable { s, lambda, abscissae: xs.to_vec(), values, route_b, deviation })
}

impl ResolventKernelTable {
    /// `sup λ|x| G(x)` over the table.
    pub fn max_scaled_decay(&self) -> f64 {
        self.abscissae.iter().zip(&self.values).map(|(x, g)| self.lambda * x.abs() * g).fold(0.0, f64::max)
    }

    /// Trapezoid mass over `[-x_max, x_max]`, with the piece below the
    /// first abscissa from the local power law.
    pub fn tabulated_mass(&self) -> f64 {
        let x0 = self.abscissae[0];
        let head = x0 * self.values[0] / (2.0 * self.s).min(1.0);
        let mut acc = head;
        for i in 1..self.abscissae.len() {
            acc += 0.5 * (self.abscissae[i] - self.abscissae[i - 1]) * (self.values[i] + self.values[i - 1]);
        }
        2.0 * acc
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["x", "value", "route_b", "deviation"])?;
        for i in 0..self.abscissae.len() {
            w.write_record([
                format!("{:.17e}", self.abscissae[i]),
                format!("{:.17e}", self.values[i]),
                format!("{:.17e}", self.route_b[i]),
                format!("{:.3e}", self.deviation[i]),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Terms `(c_k, p_k)` of the large-`|x|` expansion `G(x) ~ Σ c_k |x|^{-p_k}`,
/// `c_k = (-1)^{k+1} Γ(1+2sk) sin(πsk) / (π λ^{k+1})`, `p_k = 1 + 2sk`.
pub fn resolvent_tail_series(s: f64, lambda: f64, terms: usize) -> Vec<(f64, f64)> {
    (1..=terms)
        .map(|k| {
            let kf = k as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let mut sn = (PI * s * kf).sin();
            if sn.abs() < 1e-12 {
                sn = 0.0;
            }
            let c = sign * (ln_gamma(1.0 + 2.0 * s * kf) - (kf + 1.0) * lambda.ln()).exp() * sn / PI;
            (c, 1.0 + 2.0 * s * kf)
        })
        .collect()
}

/// Constant of the off-diagonal kernel of `(-Δ)^s`:
/// `(-Δ)^s f(x) = C_s p.v.∫ (f(x) - f(y)) / |x-y|^{1+2s} dy`, zero at `s = 1`.
pub fn fractional_laplacian_constant(s: f64) -> f64 {
    if s >= 1.0 {
        0.0
    } else {
        gamma(1.0 + 2.0 * s) * (PI * s).sin() / PI
    }
}

/// Hurwitz zeta `Σ_{n≥0} (n+a)^{-p}` for `p > 1`, `a > 0`, by Euler–Maclaurin.
pub fn hurwitz_zeta(p: f64, a: f64) -> f64 {
    hurwitz_zeta_many(&[p], a)[0]
}

/// [`hurwitz_zeta`] for several exponents at one shift, sharing the logs.
pub fn hurwitz_zeta_many(ps: &[f64], a: f64) -> Vec<f64> {
    const M: usize = 12;
    // B_{2j}/(2j)!
    const B: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    let logs: Vec<f64> = (0..M).map(|n| (n as f64 + a).ln()).collect();
    let b = M as f64 + a;
    let lb = b.ln();
    ps.iter()
        .map(|&p| {
            let mut sum: f64 = logs.iter().map(|l| (-p * l).exp()).sum();
            let bp = (-p * lb).exp();
            sum += b * bp / (p - 1.0) + 0.5 * bp;
            // rising factorial p (p+1) ... (p+2j-2), times b^{-p-2j+1}
            let mut rising = p;
            let mut pw = bp / b;
            for (j, bj) in B.iter().enumerate() {
                sum += bj * rising * pw;
                rising *= (p + 2.0 * j as f64 + 1.0) * (p + 2.0 * j as f64 + 2.0);
                pw /= b * b;
            }
            sum
        })
        .collect()
}

/// `Σ_{n≠0} |z + nL|^{-p}` for `|z| < L`.
pub fn periodic_image_sum(z: f64, length: f64, p: f64) -> f64 {
    image_sums(z, length, &[p], 0.0)[0]
}

/// `Σ_{n≠0} |z + nL|^{-p}` for each `p`, `|z| < L`. The nearest image
/// distance is floored at `gap·L`; see [`ImageConvolution`] for why that is
/// harmless there.
pub fn image_sums(z: f64, length: f64, ps: &[f64], gap: f64) -> Vec<f64> {
    let u = z.abs() / length;
    let near = hurwitz_zeta_many(ps, (1.0 - u).max(gap));
    let far = hurwitz_zeta_many(ps, 1.0 + u);
    ps.iter().zip(near.iter().zip(far)).map(|(p, (a, b))| length.powf(-p) * (a + b)).collect()
}

/// Linear convolution `h Σ_j E(x_i - x_j) f_j` on the grid nodes, through a
/// zero-padded transform of length `2N`.
///
/// Used with `E(z) = Σ_{n≠0} k(z + nL)` to turn a periodic convolution with
/// `k` into the free-space one. Such `E` is singular only at `z = ±L`,
/// which couples the two ends of the box where the fields are pure tail;
/// flooring the image distance there changes nothing measurable.
pub struct ImageConvolution {
    points: usize,
    spacing: f64,
    kernel_hat: Vec<Complex64>,
    /// `E(x_i - L/2) - E(x_i + L/2)`: the node `-L/2` stands for both ends
    /// of the box, each with half weight, so parity is preserved.
    edge: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl ImageConvolution {
    pub fn new<E: Fn(f64) -> f64>(grid: &Grid, kernel: E) -> Self {
        let n = grid.points();
        let h = grid.spacing();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(2 * n);
        let inverse = planner.plan_fft_inverse(2 * n);
        let mut e = vec![Complex64::new(0.0, 0.0); 2 * n];
        for m in 0..n {
            let v = kernel(m as f64 * h);
            e[m] = Complex64::new(v, 0.0);
            if m > 0 {
                e[2 * n - m] = Complex64::new(kernel(-(m as f64) * h), 0.0);
            }
        }
        let edge = (0..n).map(|i| kernel((i as f64 - n as f64) * h) - kernel(i as f64 * h)).collect();
        forward.process(&mut e);
        ImageConvolution { points: n, spacing: h, kernel_hat: e, edge, forward, inverse }
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        let n = self.points;
        let mut buf = vec![Complex64::new(0.0, 0.0); 2 * n];
        for (b, v) in buf.iter_mut().zip(f) {
            *b = Complex64::new(*v, 0.0);
        }
        self.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_hat) {
            *b *= k;
        }
        self.inverse.process(&mut buf);
        let c = self.spacing / (2 * n) as f64;
        let f0 = 0.5 * self.spacing * f[0];
        buf[..n].iter().zip(&self.edge).map(|(v, d)| v.re * c + f0 * d).collect()
    }
}

/// Images of the resolvent kernel, `E(z) = Σ_{n≠0} G(z + nL)`, from the
/// tail expansion of `G`. Exponentially small at `s = 1`.
pub fn resolvent_image_convolution(s: f64, lambda: f64, grid: &Grid) -> ImageConvolution {
    const GAP: f64 = 0.125;
    let l = grid.length();
    let w = GAP * l;
    let mut terms = Vec::new();
    let mut prev = f64::INFINITY;
    let mut first = None;
    for (c, p) in resolvent_tail_series(s, lambda, 80) {
        if c == 0.0 {
            continue;
        }
        let size = c.abs() * w.powf(-p);
        if size > prev {
            break;
        }
        let f = *first.get_or_insert(size);
        terms.push((c, p));
        prev = size;
        if size < 1e-17 * f {
            break;
        }
    }
    let (cs, ps): (Vec<f64>, Vec<f64>) = terms.into_iter().unzip();
    ImageConvolution::new(grid, |z| {
        if cs.is_empty() {
            return 0.0;
        }
        image_sums(z, l, &ps, GAP).iter().zip(&cs).map(|(v, c)| c * v).sum()
    })
}

/// `∫_ℝ G = 1/λ` evaluated numerically: Fourier-route values integrated in
/// `log x` over `[1e-10, X]`, a power-law head below and the tail expansion
/// beyond `X`.
pub fn resolvent_mass(s: f64, lambda: f64) -> Result<f64> {
    check_order(s)?;
    ensure(lambda > 0.0, || format!("λ must be positive, got {lambda}"))?;
    let x_lo: f64 = 1e-10;
    // far field where the expansion is accurate, in units of the core width
    let x_hi: f64 = 100.0 * lambda.powf(-1.0 / (2.0 * s));
    let g_lo = resolvent_fourier(s, lambda, x_lo)?;
    let head = if s < 0.5 {
        x_lo * g_lo / (2.0 * s)
    } else if s == 0.5 {
        x_lo * (g_lo + 1.0 / (PI * lambda))
    } else {
        x_lo * g_lo
    };
    let mut err = None;
    let body = integrate(
        |t: f64| {
            let x = t.exp();
            match resolvent_fourier(s, lambda, x) {
                Ok(g) => g * x,
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            }
        },
        x_lo.ln(),
        x_hi.ln(),
        QuadOptions { abs_tol: 1e-13, rel_tol: 1e-10, max_intervals: 500 },
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    let mut tail = 0.0;
    let mut prev = f64::INFINITY;
    for (c, p) in resolvent_tail_series(s, lambda, 60) {
        let term = c * x_hi.powf(1.0 - p) / (p - 1.0);
        // sin(πsk) vanishes identically for some k when s is rational
        if term == 0.0 {
            continue;
        }
        if term.abs() > prev {
            break;
        }
        tail += term;
        prev = term.abs();
        if prev < 1e-18 {
            break;
        }
    }
    Ok(2.0 * (head + body.value + tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_kernel() {
        for &x in &[0.0, 0.3, 1.0, 5.0, 30.0, 49.0] {
            for &t in &[0.1, 1.0, 10.0] {
                let v = heat_kernel_value(0.5, t, x).unwrap();
                let exact = t / (PI * (t * t + x * x));
                assert!((v - exact).abs() < 1e-10, "x={x} t={t}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn gaussian_kernel() {
        for &x in &[0.0, 0.5, 2.0, 7.0] {
            let t = 1.3;
            let v = heat_kernel_value(1.0, t, x).unwrap();
            let exact = (-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt();
            assert!((v - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn series_and_quadrature_overlap() {
        for &s in &[0.3, 0.6, 0.9] {
            let z = 12.0;
            let series = density_series(s, z).unwrap();
            let quad = fourier_cosine(|u: f64| (-u.powf(2.0 * s)).exp(), z, 1e-13).unwrap().value / PI;
            assert!((series - quad).abs() < 1e-11 * quad.abs().max(1e-3), "s={s}: {series} vs {quad}");
        }
    }

    #[test]
    fn flipped_sample_is_reported() {
        let xs = log_abscissae(0.1, 20.0, 30);
        let mut table = heat_kernel(0.75, 1.0, &xs).unwrap();
        assert!(check_heat_kernel_bounds(&table).passed());
        table.values[7] = -table.values[7];
        let rep = check_heat_kernel_bounds(&table);
        assert!(!rep.positive);
        assert!(rep.offending.contains(&xs[7]));
    }

    #[test]
    fn classical_resolvent() {
        for &x in &[0.1, 1.0, 4.0] {
            let a = resolvent_laplace(1.0, 1.0, x).unwrap();
            let b = resolvent_fourier(1.0, 1.0, x).unwrap();
            let exact = 0.5 * (-x as f64).exp();
            assert!((a - exact).abs() < 1e-8 && (b - exact).abs() < 1e-8, "{a} {b} {exact}");
        }
    }

    #[test]
    fn image_convolution_is_linear_convolution() {
        let g = Grid::new(10.0, 16).unwrap();
        let kern = |z: f64| 1.0 / (1.0 + z * z);
        let conv = ImageConvolution::new(&g, kern);
        let f: Vec<f64> = (0..16).map(|j| ((j * 7) % 5) as f64 - 2.0).collect();
        let out = conv.apply(&f);
        let half = g.length() / 2.0;
        for i in 0..16 {
            let x = g.node(i);
            let ends = 0.5 * (kern(x + half) + kern(x - half)) * f[0];
            let direct = (ends + (1..16).map(|j| kern(x - g.node(j)) * f[j]).sum::<f64>()) * g.spacing();
            assert!((out[i] - direct).abs() < 1e-13);
        }
        // even data stay even
        let even = g.sample(|x| (-x * x / 4.0).exp());
        let out = conv.apply(even.values());
        for i in 1..16 {
            assert!((out[i] - out[g.mirror(i)]).abs() < 1e-15);
        }
    }

    #[test]
    fn hurwitz_zeta_matches_riemann() {
        assert!((hurwitz_zeta(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        // ζ(2, 1/2) = π²/2
        assert!((hurwitz_zeta(2.0, 0.5) - PI * PI / 2.0).abs() < 1e-13);
        let direct: f64 = (1..200000).map(|n| (n as f64 + 0.3).powf(-3.5)).sum();
        assert!((hurwitz_zeta(3.5, 1.3) - direct).abs() < 1e-12);
    }
}
