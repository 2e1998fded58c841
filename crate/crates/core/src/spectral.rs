//! Periodic Fourier grid, grid fields and Fourier multipliers.
//!
//! Nodes are `x_j = -L/2 + j h`, `h = L/N`, wavenumbers `ξ_k = 2πk/L` for
//! `k = -N/2, …, N/2 - 1`. The continuous transform is approximated by
//! `f̂(ξ_k) = h Σ_j f_j e^{-i ξ_k x_j}`; every multiplier here depends on
//! `|ξ|` only, so the phase from the offset `x_0` cancels.

use crate::error::{ensure, Error, Result};
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

struct GridInner {
    length: f64,
    points: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Uniform periodic grid on `[-L/2, L/2)`. Cheap to clone.
#[derive(Clone)]
pub struct Grid(Arc<GridInner>);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "N")]
    pub points: usize,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid(L = {}, N = {})", self.0.length, self.0.points)
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.0.length == other.0.length && self.0.points == other.0.points
    }
}

pub fn make_grid(length: f64, points: usize) -> Result<Grid> {
    Grid::new(length, points)
}

impl Grid {
    pub fn new(length: f64, points: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidGrid(format!("length must be positive, got {length}")));
        }
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("N must be a power of two ≥ 8, got {points}")));
        }
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(points);
        let inverse = planner.plan_fft_inverse(points);
        Ok(Grid(Arc::new(GridInner { length, points, forward, inverse })))
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec { length: self.0.length, points: self.0.points }
    }

    pub fn length(&self) -> f64 {
        self.0.length
    }

    pub fn points(&self) -> usize {
        self.0.points
    }

    pub fn spacing(&self) -> f64 {
        self.0.length / self.0.points as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        -0.5 * self.0.length + j as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points()).map(|j| self.node(j)).collect()
    }

    /// Index of the node at the origin.
    pub fn origin(&self) -> usize {
        self.points() / 2
    }

    /// Index of the node at `-x_j`.
    pub fn mirror(&self, j: usize) -> usize {
        (self.points() - j) % self.points()
    }

    /// Signed wavenumber of FFT bin `k`; the Nyquist bin maps to `-πN/L`.
    pub fn wavenumber(&self, k: usize) -> f64 {
        let n = self.points();
        let m = if k < n / 2 { k as isize } else { k as isize - n as isize };
        2.0 * PI * m as f64 / self.length()
    }

    /// `|ξ_k|` in FFT order.
    pub fn abs_wavenumbers(&self) -> Vec<f64> {
        (0..self.points()).map(|k| self.wavenumber(k).abs()).collect()
    }

    pub fn max_wavenumber(&self) -> f64 {
        PI * self.points() as f64 / self.length()
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Field {
        Field::new(self, self.nodes().into_iter().map(f).collect(), Parity::None)
            .expect("length matches by construction")
    }

    /// Unnormalized forward DFT of real node values.
    pub fn fft(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.0.forward.process(&mut buf);
        buf
    }

    /// Inverse of [`Grid::fft`], keeping the real part.
    pub fn ifft_real(&self, mut coeffs: Vec<Complex64>) -> Vec<f64> {
        self.0.inverse.process(&mut coeffs);
        let inv = 1.0 / self.points() as f64;
        coeffs.into_iter().map(|c| c.re * inv).collect()
    }

    /// Multiply by a real, radially symmetric multiplier given in FFT order.
    pub fn apply_multipliers(&self, values: &[f64], mult: &[f64]) -> Vec<f64> {
        let mut c = self.fft(values);
        for (ck, m) in c.iter_mut().zip(mult) {
            *ck *= *m;
        }
        self.ifft_real(c)
    }

    /// Grid inner product `h Σ f g`.
    pub fn dot(&self, f: &[f64], g: &[f64]) -> f64 {
        self.spacing() * f.iter().zip(g).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn integral(&self, f: &[f64]) -> f64 {
        self.spacing() * f.iter().sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::None => Parity::None,
        }
    }
}

/// Real node values on a grid with a parity tag.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
    parity: Parity,
}

impl Field {
    pub fn new(grid: &Grid, values: Vec<f64>, parity: Parity) -> Result<Self> {
        if values.len() != grid.points() {
            return Err(Error::InvalidGrid(format!(
                "field has {} values, grid has {} nodes",
                values.len(),
                grid.points()
            )));
        }
        Ok(Field { grid: grid.clone(), values, parity })
    }

    pub fn zeros(grid: &Grid, parity: Parity) -> Self {
        Field { grid: grid.clone(), values: vec![0.0; grid.points()], parity }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// Largest `|f(x) - f(-x)|` (even) or `|f(x) + f(-x)|` (odd) relative to `max |f|`.
    pub fn parity_defect(&self, parity: Parity) -> f64 {
        let sign = match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::None => return 0.0,
        };
        let m = self.max_abs().max(f64::MIN_POSITIVE);
        (0..self.values.len())
            .map(|j| (self.values[j] - sign * self.values[self.grid.mirror(j)]).abs())
            .fold(0.0, f64::max)
            / m
    }

    /// Project onto the even or odd part and tag it.
    pub fn symmetrized(&self, parity: Parity) -> Field {
        let sign = match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::None => return self.clone(),
        };
        let values = (0..self.values.len())
            .map(|j| 0.5 * (self.values[j] + sign * self.values[self.grid.mirror(j)]))
            .collect();
        Field { grid: self.grid.clone(), values, parity }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn dot(&self, other: &Field) -> f64 {
        self.grid.dot(&self.values, &other.values)
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn l2_norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn integral(&self) -> f64 {
        self.grid.integral(&self.values)
    }

    pub fn map<F: Fn(f64) -> f64>(&self, f: F, parity: Parity) -> Field {
        Field { grid: self.grid.clone(), values: self.values.iter().map(|&v| f(v)).collect(), parity }
    }

    pub fn scaled(&self, c: f64) -> Field {
        self.map(|v| c * v, self.parity)
    }

    /// `self + c other`; the parity survives only if both agree.
    pub fn axpy(&self, c: f64, other: &Field) -> Field {
        let parity = if self.parity == other.parity { self.parity } else { Parity::None };
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + c * b).collect();
        Field { grid: self.grid.clone(), values, parity }
    }

    pub fn hadamard(&self, other: &Field) -> Field {
        let parity = match (self.parity, other.parity) {
            (Parity::None, _) | (_, Parity::None) => Parity::None,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        };
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Field { grid: self.grid.clone(), values, parity }
    }

    /// Spectral derivative `d/dx`. The Nyquist mode is dropped.
    pub fn derivative(&self) -> Field {
        let n = self.grid.points();
        let mut c = self.grid.fft(&self.values);
        for (k, ck) in c.iter_mut().enumerate() {
            *ck *= if k == n / 2 { Complex64::new(0.0, 0.0) } else { Complex64::new(0.0, self.grid.wavenumber(k)) };
        }
        Field { grid: self.grid.clone(), values: self.grid.ifft_real(c), parity: self.parity.flip() }
    }

    /// Values `f(b x_j)` of the trigonometric interpolant, for `b > 0`.
    ///
    /// The interpolant is refined by zero padding and then evaluated with
    /// local Lagrange interpolation. Points with `|b x| > L/2` wrap around
    /// periodically. Fails when compressing (`b > 1`) would push significant
    /// spectral content past the grid's Nyquist wavenumber.
    pub fn resample_scaled(&self, b: f64) -> Result<Field> {
        ensure(b > 0.0 && b.is_finite(), || format!("scale factor must be positive, got {b}"))?;
        let grid = &self.grid;
        let n = grid.points();
        let coeffs = grid.fft(&self.values);
        if b > 1.0 {
            let cutoff = grid.max_wavenumber() / b;
            let peak = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let lost = (0..n)
                .filter(|&k| grid.wavenumber(k).abs() > cutoff)
                .map(|k| coeffs[k].norm())
                .fold(0.0, f64::max);
            if lost > 1e-10 * peak {
                return Err(Error::Aliasing(format!(
                    "compressing by {b} needs wavenumbers up to {:.3}, spectral content {:.2e} of peak remains there",
                    b * grid.max_wavenumber(),
                    lost / peak
                )));
            }
        }
        const UP: usize = 16;
        const STENCIL: usize = 10;
        let m = n * UP;
        let mut padded = vec![Complex64::new(0.0, 0.0); m];
        for k in 0..n / 2 {
            padded[k] = coeffs[k];
        }
        // split the Nyquist bin evenly between ±N/2
        padded[n / 2] = 0.5 * coeffs[n / 2];
        padded[m - n / 2] = 0.5 * coeffs[n / 2];
        for k in n / 2 + 1..n {
            padded[m - n + k] = coeffs[k];
        }
        let mut planner = FftPlanner::new();
        planner.plan_fft_inverse(m).process(&mut padded);
        let fine: Vec<f64> = padded.iter().map(|c| c.re / n as f64).collect();
        let hf = grid.spacing() / UP as f64;
        let x0 = grid.node(0);
        let values = grid
            .nodes()
            .iter()
            .map(|&x| {
                let t = (b * x - x0) / hf;
                let base = t.floor() as i64 - (STENCIL as i64 / 2 - 1);
                let nodes: Vec<f64> = (0..STENCIL).map(|i| (base + i as i64) as f64).collect();
                let mut acc = 0.0;
                for i in 0..STENCIL {
                    let mut w = 1.0;
                    for j in 0..STENCIL {
                        if j != i {
                            w *= (t - nodes[j]) / (nodes[i] - nodes[j]);
                        }
                    }
                    let idx = (base + i as i64).rem_euclid(m as i64) as usize;
                    acc += w * fine[idx];
                }
                acc
            })
            .collect();
        Field::new(grid, values, self.parity)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["x", "value"])?;
        for (j, v) in self.values.iter().enumerate() {
            w.write_record([format!("{:.17e}", self.grid.node(j)), format!("{v:.17e}")])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Read a field written by [`Field::write_csv`]; the grid is recovered from
    /// the abscissae.
    pub fn read_csv(path: &Path) -> Result<Field> {
        let mut r = csv::Reader::from_path(path)?;
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                rec.get(i)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::InvalidGrid(format!("bad csv record {rec:?}")))
            };
            xs.push(parse(0)?);
            vs.push(parse(1)?);
        }
        ensure(xs.len() >= 8, || "csv field needs at least 8 rows".into())?;
        let length = -2.0 * xs[0];
        let grid = Grid::new(length, xs.len())?;
        for (j, &x) in xs.iter().enumerate() {
            if (x - grid.node(j)).abs() > 1e-9 * length {
                return Err(Error::InvalidGrid(format!("row {j}: abscissa {x} is off the grid")));
            }
        }
        let mut f = Field::new(&grid, vs, Parity::None)?;
        if f.parity_defect(Parity::Even) < 1e-12 {
            f.parity = Parity::Even;
        } else if f.parity_defect(Parity::Odd) < 1e-12 {
            f.parity = Parity::Odd;
        }
        Ok(f)
    }
}

/// Radial Fourier multiplier
/// `m(ξ) = (|ξ|^{2s} + λ)^p`, or with the log flag
/// `m(ξ) = |ξ|^{2s} log(ξ²) (|ξ|^{2s} + λ)^p`, set to zero at `ξ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub order: f64,
    pub shift: f64,
    pub power: f64,
    pub log: bool,
}

impl SymbolSpec {
    /// `(-Δ)^s`.
    pub fn fractional_laplacian(s: f64) -> Self {
        SymbolSpec { order: s, shift: 0.0, power: 1.0, log: false }
    }

    /// `(-Δ)^s + λ`.
    pub fn operator(s: f64, lambda: f64) -> Self {
        SymbolSpec { order: s, shift: lambda, power: 1.0, log: false }
    }

    /// `((-Δ)^s + λ)^{-1}`.
    pub fn resolvent(s: f64, lambda: f64) -> Self {
        SymbolSpec { order: s, shift: lambda, power: -1.0, log: false }
    }

    /// `(-Δ)^s log(-Δ)`, the `s`-derivative of `(-Δ)^s`.
    pub fn log_laplacian(s: f64) -> Self {
        SymbolSpec { order: s, shift: 0.0, power: 0.0, log: true }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.order > 0.0 && self.order <= 1.0, || format!("order s must lie in (0, 1], got {}", self.order))?;
        ensure(self.shift >= 0.0 && self.shift.is_finite(), || format!("shift λ must be ≥ 0, got {}", self.shift))?;
        ensure(self.power.is_finite(), || "power must be finite".into())?;
        if self.power < 0.0 && self.shift == 0.0 {
            return Err(Error::SingularSymbol(format!("power {} with zero shift", self.power)));
        }
        Ok(())
    }

    pub fn multiplier(&self, xi_abs: f64) -> f64 {
        let w = xi_abs.powf(2.0 * self.order);
        let base = if self.power == 0.0 { 1.0 } else { (w + self.shift).powf(self.power) };
        if self.log {
            if xi_abs == 0.0 {
                0.0
            } else {
                w * (xi_abs * xi_abs).ln() * base
            }
        } else {
            base
        }
    }

    /// Multipliers in FFT order for `grid`.
    pub fn multipliers(&self, grid: &Grid) -> Result<Vec<f64>> {
        self.validate()?;
        Ok(grid.abs_wavenumbers().into_iter().map(|k| self.multiplier(k)).collect())
    }
}

pub fn apply_symbol(f: &Field, spec: &SymbolSpec) -> Result<Field> {
    let mult = spec.multipliers(f.grid())?;
    let values = f.grid().apply_multipliers(f.values(), &mult);
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("apply_symbol output".into()));
    }
    Field::new(f.grid(), values, f.parity())
}

/// `‖(-Δ)^{s/2} f‖² = (1/L) Σ_k |ξ_k|^{2s} |f̂_k|²`.
pub fn hs_seminorm_sq(f: &Field, s: f64) -> Result<f64> {
    ensure(s > 0.0 && s <= 1.0, || format!("order s must lie in (0, 1], got {s}"))?;
    let grid = f.grid();
    let h = grid.spacing();
    let c = grid.fft(f.values());
    let sum: f64 = c
        .iter()
        .enumerate()
        .map(|(k, ck)| grid.wavenumber(k).abs().powf(2.0 * s) * ck.norm_sqr())
        .sum();
    Ok(sum * h * h / grid.length())
}

/// `(h Σ |f_j|^p)^{1/p}`.
pub fn lp_norm(f: &Field, p: f64) -> Result<f64> {
    ensure(p >= 1.0 && p.is_finite(), || format!("Lebesgue exponent must be ≥ 1, got {p}"))?;
    let h = f.grid().spacing();
    Ok((h * f.values().iter().map(|v| v.abs().powf(p)).sum::<f64>()).powf(1.0 / p))
}
