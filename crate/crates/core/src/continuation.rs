//! Branches `s ↦ (Q_s, λ_s)` with the power norm `∫|Q_s|^{α+2}` held fixed,
//! traced by a tangent predictor and a bordered Newton corrector.
//!
//! Unknowns are an even field and `λ`; the equations are
//! `F₁ = Q - ((-Δ)^s + λ)^{-1}|Q|^αQ` and `F₂ = ∫|Q|^{α+2} - c₀`.
//! Linear solves factor `1 + K = ((-Δ)^s + λ)^{-1} L₊` densely in the cosine
//! basis of the periodic problem; free-space branches refine that solve
//! iteratively against the image-corrected resolvent.

use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::groundstate::{
    alpha_max, check_symmetry_monotonicity, energies, fit_decay_with, pohozaev_residuals_with, power_integral,
    solve_ground_state, Boundary, GroundStateSolution, ModelParams, ResolventMap, SolverOptions,
};
use crate::linearization::{lplus_potential, project, sector_operator, synthesize, zero_tolerance, Sector};
use crate::quadrature::{integrate, QuadOptions};
use crate::spectral::{apply_symbol, Field, Grid, Parity, SymbolSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuationConfig {
    pub ds_init: f64,
    pub ds_min: f64,
    pub ds_max: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Monitor windows are the range over the first points widened by this
    /// factor.
    pub safety: f64,
    /// Points used to calibrate the windows.
    pub calibration_points: usize,
    /// Smallest admissible `|e|/λ` in the even spectrum of `L₊`.
    pub gap_min: f64,
    pub target_s: f64,
    pub boundary: Boundary,
    /// Allow `s` to decrease. No a-priori bounds cover that direction.
    pub experimental: bool,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        ContinuationConfig {
            ds_init: 0.01,
            ds_min: 1e-5,
            ds_max: 0.05,
            newton_tol: 1e-10,
            newton_max_iter: 12,
            safety: 10.0,
            calibration_points: 5,
            gap_min: 1e-3,
            target_s: 0.999,
            boundary: Boundary::FreeSpace,
            experimental: false,
        }
    }
}

impl ContinuationConfig {
    pub fn validate(&self) -> Result<()> {
        ensure(0.0 < self.ds_min && self.ds_min <= self.ds_init && self.ds_init <= self.ds_max, || {
            format!("need 0 < ds_min ≤ ds_init ≤ ds_max, got {} {} {}", self.ds_min, self.ds_init, self.ds_max)
        })?;
        ensure(self.newton_tol > 0.0, || "newton_tol must be positive".into())?;
        ensure(self.newton_max_iter > 0, || "newton_max_iter must be positive".into())?;
        ensure(self.target_s > 0.0 && self.target_s <= 1.0, || format!("target s must lie in (0, 1], got {}", self.target_s))
    }
}

/// The equations of a branch: exponent, conserved power norm, boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchSystem {
    pub alpha: f64,
    pub c0: f64,
    pub boundary: Boundary,
}

fn nonlinearity(q: &Field, alpha: f64) -> Vec<f64> {
    q.values().iter().map(|v| v.abs().powf(alpha) * v).collect()
}

/// `(F₁, F₂)`.
pub fn residual_f(q: &Field, lambda: f64, s: f64, sys: &BranchSystem) -> Result<(Field, f64)> {
    ensure(lambda > 0.0, || format!("λ must be positive, got {lambda}"))?;
    let params = ModelParams::new(s, sys.alpha, lambda)?;
    let map = ResolventMap::new(&params, q.grid(), sys.boundary)?;
    let rn = map.apply(&nonlinearity(q, sys.alpha));
    let f1 = q.values().iter().zip(&rn).map(|(a, b)| a - b).collect();
    Ok((Field::new(q.grid(), f1, q.parity())?, power_integral(q, sys.alpha + 2.0) - sys.c0))
}

/// `max(‖F₁‖/‖Q‖, |F₂|/c₀)`.
pub fn residual_norm(q: &Field, lambda: f64, s: f64, sys: &BranchSystem) -> Result<f64> {
    let (f1, f2) = residual_f(q, lambda, s, sys)?;
    Ok((f1.l2_norm() / q.l2_norm()).max(f2.abs() / sys.c0))
}

/// Factored Jacobian of the branch equations at one `(Q, λ, s)`.
pub struct BorderedSolver {
    grid: Grid,
    alpha: f64,
    lu: PartialPivLu<f64>,
    map: ResolventMap,
    /// `(α+1)|Q|^α`.
    weight: Vec<f64>,
    /// `|Q|^αQ`.
    n: Vec<f64>,
    /// `(1+K)^{-1} g` with `g = ((-Δ)^s + λ)^{-2}|Q|^αQ`, the `λ`-column.
    ug: Vec<f64>,
    /// `⟨|Q|^αQ, (1+K)^{-1}g⟩`.
    pub structural_constant: f64,
}

impl BorderedSolver {
    pub fn new(q: &Field, lambda: f64, s: f64, sys: &BranchSystem) -> Result<Self> {
        let grid = q.grid().clone();
        let params = ModelParams::new(s, sys.alpha, lambda)?;
        let lplus = sector_operator(&grid, s, lambda, &lplus_potential(q, &params), Sector::Even)?;
        let spec = SymbolSpec::resolvent(s, lambda);
        let modes = Sector::Even.modes(grid.points());
        let r: Vec<f64> = modes.iter().map(|&k| spec.multiplier(grid.wavenumber(k).abs())).collect();
        let m = Mat::from_fn(r.len(), r.len(), |i, j| r[i] * lplus[(i, j)]);
        let lu = m.partial_piv_lu();
        let map = ResolventMap::new(&params, &grid, sys.boundary)?;
        let weight = q.values().iter().map(|v| (sys.alpha + 1.0) * v.abs().powf(sys.alpha)).collect();
        let n = nonlinearity(q, sys.alpha);
        let mut solver = BorderedSolver { grid, alpha: sys.alpha, lu, map, weight, n, ug: Vec::new(), structural_constant: 0.0 };
        let g = solver.map.apply(&solver.map.apply(&solver.n));
        solver.ug = solver.solve_field(&g)?;
        solver.structural_constant = solver.grid.dot(&solver.n, &solver.ug);
        let scale = (solver.grid.dot(&solver.n, &solver.n) * solver.grid.dot(&solver.ug, &solver.ug)).sqrt();
        if !(solver.structural_constant.abs() > 1e-12 * scale) {
            return Err(Error::Numerical(format!(
                "⟨|Q|^αQ, (1+K)^{{-1}}g⟩ = {:e} vanishes; the λ-direction is lost",
                solver.structural_constant
            )));
        }
        Ok(solver)
    }

    /// `(1 + K)η = η - R(α+1)|Q|^α η` with the branch's resolvent.
    pub fn apply(&self, eta: &[f64]) -> Vec<f64> {
        let w: Vec<f64> = eta.iter().zip(&self.weight).map(|(e, w)| e * w).collect();
        eta.iter().zip(self.map.apply(&w)).map(|(e, k)| e - k).collect()
    }

    fn dense_solve(&self, f: &[f64]) -> Vec<f64> {
        let c = project(&self.grid, Sector::Even, f);
        let mut b = Mat::from_fn(c.len(), 1, |i, _| c[i]);
        self.lu.solve_in_place(b.as_mut());
        let x: Vec<f64> = (0..c.len()).map(|i| b[(i, 0)]).collect();
        synthesize(&self.grid, Sector::Even, &x)
    }

    /// `(1 + K)^{-1} f` for even `f`, refined to a backward error of `1e-12`.
    pub fn solve_field(&self, f: &[f64]) -> Result<Vec<f64>> {
        // round-off leaves an odd part that the even sector cannot reach
        let f = &(0..f.len()).map(|j| 0.5 * (f[j] + f[self.grid.mirror(j)])).collect::<Vec<f64>>()[..];
        let norm = |v: &[f64]| self.grid.dot(v, v).sqrt();
        let fnorm = norm(f);
        if fnorm == 0.0 {
            return Ok(vec![0.0; f.len()]);
        }
        let mut x = self.dense_solve(f);
        for _ in 0..30 {
            let ax = self.apply(&x);
            let r: Vec<f64> = f.iter().zip(&ax).map(|(a, b)| a - b).collect();
            let rn = norm(&r);
            if rn <= 1e-12 * fnorm {
                return Ok(x);
            }
            let dx = self.dense_solve(&r);
            x.iter_mut().zip(dx).for_each(|(a, b)| *a += b);
        }
        let ax = self.apply(&x);
        let rn = norm(&f.iter().zip(&ax).map(|(a, b)| a - b).collect::<Vec<_>>());
        if rn <= 1e-10 * fnorm {
            Ok(x)
        } else {
            Err(Error::Numerical(format!("bordered solve stalled at backward error {:e}", rn / fnorm)))
        }
    }

    /// `(1+K)η + γg = f`, `(α+2)⟨|Q|^αQ, η⟩ = β`.
    pub fn solve(&self, f: &[f64], beta: f64) -> Result<(Vec<f64>, f64)> {
        let uf = self.solve_field(f)?;
        let k = self.alpha + 2.0;
        let gamma = (k * self.grid.dot(&self.n, &uf) - beta) / (k * self.structural_constant);
        let eta = uf.iter().zip(&self.ug).map(|(a, b)| a - gamma * b).collect();
        Ok((eta, gamma))
    }
}

/// One bordered solve at `(Q, λ, s)`.
pub fn solve_bordered(
    q: &Field,
    lambda: f64,
    s: f64,
    sys: &BranchSystem,
    rhs_field: &Field,
    rhs_scalar: f64,
) -> Result<(Field, f64)> {
    let solver = BorderedSolver::new(q, lambda, s, sys)?;
    let (eta, gamma) = solver.solve(rhs_field.values(), rhs_scalar)?;
    Ok((Field::new(q.grid(), eta, Parity::Even)?.symmetrized(Parity::Even), gamma))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monitors {
    pub l2_norm_sq: f64,
    pub hs_seminorm_sq: f64,
    pub power_norm: f64,
    pub lambda_l2: f64,
    pub positive: bool,
    pub monotone: bool,
    pub decay_constant: f64,
    pub morse_even: usize,
    /// Smallest `|e|` in the even spectrum of `L₊`.
    pub even_gap: f64,
    pub newton_residual: f64,
    /// `⟨Q, (-Δ)^s log(-Δ) Q⟩`.
    pub log_energy: f64,
    /// `sup |x| Q(x)` over `|x| ≥ R₀`.
    pub decay_envelope: f64,
    pub pohozaev: (f64, f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchPoint {
    pub s: f64,
    pub lambda: f64,
    #[serde(skip)]
    pub q: Option<Field>,
    pub monitors: Monitors,
    pub newton_iterations: usize,
}

impl BranchPoint {
    pub fn field(&self) -> &Field {
        self.q.as_ref().expect("branch points carry their field until serialized")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "cause")]
pub enum Termination {
    ReachedTarget,
    MonitorFailure { monitor: String, s: f64, detail: String },
    NewtonFailure { s: f64, detail: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Branch {
    pub alpha: f64,
    pub s0: f64,
    pub c0: f64,
    pub boundary: Boundary,
    pub grid: crate::spectral::GridSpec,
    pub points: Vec<BranchPoint>,
    pub termination: Termination,
}

impl Branch {
    pub fn last(&self) -> &BranchPoint {
        self.points.last().expect("a branch has at least its starting point")
    }

    pub fn reached_target(&self) -> bool {
        self.termination == Termination::ReachedTarget
    }
}

/// Tangent step `(dQ, dλ)` for `ds`, from `∂F₁/∂s = (-Δ)^s log(-Δ) ((-Δ)^s+λ)^{-2} |Q|^αQ`.
pub fn predictor(q: &Field, lambda: f64, s: f64, ds: f64, sys: &BranchSystem) -> Result<(Field, f64)> {
    if ds == 0.0 {
        return Ok((q.clone(), lambda));
    }
    let n = Field::new(q.grid(), nonlinearity(q, sys.alpha), Parity::Even)?;
    let spec = SymbolSpec { order: s, shift: lambda, power: -2.0, log: true };
    let ds_f = apply_symbol(&n, &spec)?.scaled(-ds);
    let (dq, dl) = solve_bordered(q, lambda, s, sys, &ds_f, 0.0)?;
    Ok((q.axpy(1.0, &dq).symmetrized(Parity::Even), lambda + dl))
}

/// Newton on the branch equations at fixed `s`. Returns the root, `λ`, the
/// iteration count and the final residual.
pub fn newton(q: &Field, lambda: f64, s: f64, sys: &BranchSystem, config: &ContinuationConfig) -> Result<(Field, f64, usize, f64)> {
    let mut q = q.symmetrized(Parity::Even);
    let mut lambda = lambda;
    for it in 0..=config.newton_max_iter {
        let (f1, f2) = residual_f(&q, lambda, s, sys)?;
        let res = (f1.l2_norm() / q.l2_norm()).max(f2.abs() / sys.c0);
        if !res.is_finite() {
            break;
        }
        if res <= config.newton_tol {
            return Ok((q, lambda, it, res));
        }
        if it == config.newton_max_iter {
            return Err(Error::NewtonFailure { s, detail: format!("residual {res:e} after {it} iterations") });
        }
        let (eta, gamma) = solve_bordered(&q, lambda, s, sys, &f1.scaled(-1.0), -f2)
            .map_err(|e| Error::NewtonFailure { s, detail: e.to_string() })?;
        q = q.axpy(1.0, &eta).symmetrized(Parity::Even);
        lambda += gamma;
        if !(lambda > 0.0) {
            break;
        }
    }
    Err(Error::NewtonFailure { s, detail: format!("iterate left the admissible set (λ = {lambda})") })
}

fn half_width(q: &Field) -> f64 {
    let grid = q.grid();
    let o = grid.origin();
    let peak = q.values()[o];
    let j = (o..grid.points()).find(|&j| q.values()[j] < 0.5 * peak).unwrap_or(grid.points() - 1);
    grid.node(j)
}

/// All monitors of a corrected point.
pub fn assemble_monitors(q: &Field, lambda: f64, s: f64, sys: &BranchSystem, newton_residual: f64, r0: f64) -> Result<Monitors> {
    let params = ModelParams::new(s, sys.alpha, lambda)?;
    let grid = q.grid();
    let e = energies(q, &params, sys.boundary)?;
    let sym = check_symmetry_monotonicity(q);
    let lplus = sector_operator(grid, s, lambda, &lplus_potential(q, &params), Sector::Even)?;
    let eig = lplus
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|err| Error::LinearAlgebra(format!("symmetric eigensolver: {err:?}")))?;
    let eps = zero_tolerance(newton_residual);
    let log_q = apply_symbol(q, &SymbolSpec::log_laplacian(s))?;
    let decay_envelope = grid
        .nodes()
        .iter()
        .zip(q.values())
        .filter(|(x, _)| x.abs() >= r0)
        .map(|(x, v)| x.abs() * v.abs())
        .fold(0.0, f64::max);
    Ok(Monitors {
        l2_norm_sq: e.mass,
        hs_seminorm_sq: e.seminorm,
        power_norm: power_integral(q, sys.alpha + 2.0),
        lambda_l2: lambda * e.mass,
        positive: sym.positive,
        monotone: sym.monotone,
        decay_constant: fit_decay_with(q, s, sys.boundary).map(|f| f.constant).unwrap_or(f64::NAN),
        morse_even: eig.iter().filter(|&&v| v < -eps).count(),
        even_gap: eig.iter().fold(f64::INFINITY, |m, v| m.min(v.abs())),
        newton_residual,
        log_energy: q.dot(&log_q),
        decay_envelope,
        pohozaev: pohozaev_residuals_with(q, &params, sys.boundary)?,
    })
}

/// Windows calibrated on the first points of a branch.
struct Windows {
    lambda: (f64, f64),
    lambda_l2: (f64, f64),
    mass: (f64, f64),
    log_energy: f64,
    log_derivative: f64,
    envelope: f64,
}

impl Windows {
    fn calibrate(points: &[BranchPoint], safety: f64) -> Self {
        let range = |f: &dyn Fn(&BranchPoint) -> f64| {
            let lo = points.iter().map(f).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
            (lo / safety, hi * safety)
        };
        let max_abs = |f: &dyn Fn(&BranchPoint) -> f64| points.iter().map(|p| f(p).abs()).fold(0.0, f64::max);
        let derivs = points.windows(2).map(|w| log_derivative(&w[0], &w[1]).abs()).fold(0.0, f64::max);
        Windows {
            lambda: range(&|p| p.lambda),
            lambda_l2: range(&|p| p.monitors.lambda_l2),
            mass: range(&|p| p.monitors.l2_norm_sq),
            log_energy: safety * max_abs(&|p| p.monitors.log_energy),
            log_derivative: safety * derivs.max(1.0),
            envelope: safety * max_abs(&|p| p.monitors.decay_envelope),
        }
    }

    fn check(&self, prev: &BranchPoint, p: &BranchPoint) -> std::result::Result<(), (String, String)> {
        let inside = |v: f64, (lo, hi): (f64, f64)| v >= lo && v <= hi;
        let m = &p.monitors;
        if !inside(p.lambda, self.lambda) {
            return Err(("lambda-window".into(), format!("λ = {} outside {:?}", p.lambda, self.lambda)));
        }
        if !inside(m.lambda_l2, self.lambda_l2) {
            return Err(("lambda-mass-window".into(), format!("λ∫Q² = {} outside {:?}", m.lambda_l2, self.lambda_l2)));
        }
        if !inside(m.l2_norm_sq, self.mass) {
            return Err(("mass-window".into(), format!("∫Q² = {} outside {:?}", m.l2_norm_sq, self.mass)));
        }
        let d = log_derivative(prev, p);
        if d.abs() > self.log_derivative {
            return Err(("mass-log-derivative".into(), format!("d log∫Q²/ds = {d} beyond {}", self.log_derivative)));
        }
        if m.log_energy.abs() > self.log_energy {
            return Err(("log-energy".into(), format!("⟨Q, (-Δ)^s log(-Δ)Q⟩ = {} beyond {}", m.log_energy, self.log_energy)));
        }
        if m.decay_envelope > self.envelope {
            return Err(("decay-envelope".into(), format!("sup |x|Q = {} beyond {}", m.decay_envelope, self.envelope)));
        }
        Ok(())
    }
}

fn log_derivative(a: &BranchPoint, b: &BranchPoint) -> f64 {
    (b.monitors.l2_norm_sq.ln() - a.monitors.l2_norm_sq.ln()) / (b.s - a.s)
}

/// Checks that hold at every point regardless of calibration.
fn pointwise_check(p: &BranchPoint, sys: &BranchSystem, config: &ContinuationConfig) -> std::result::Result<(), (String, String)> {
    let m = &p.monitors;
    if !m.positive {
        return Err(("positivity".into(), "Q_s has a negative value".into()));
    }
    if !m.monotone {
        return Err(("monotonicity".into(), "Q_s is not decreasing in |x|".into()));
    }
    if m.morse_even != 1 {
        return Err(("morse-even".into(), format!("{} negative even eigenvalues", m.morse_even)));
    }
    if m.even_gap < config.gap_min * p.lambda {
        return Err(("even-gap".into(), format!("even spectrum of L₊ within {:e} of 0", m.even_gap)));
    }
    let drift = (m.power_norm - sys.c0).abs() / sys.c0;
    if drift > 10.0 * config.newton_tol {
        return Err(("conservation".into(), format!("∫|Q|^(α+2) drifted by {drift:e}")));
    }
    Ok(())
}

/// Corrects `(Q_pred, λ_pred)` at `s` and attaches monitors.
pub fn corrector(
    q_pred: &Field,
    lambda_pred: f64,
    s: f64,
    sys: &BranchSystem,
    config: &ContinuationConfig,
    r0: f64,
) -> Result<BranchPoint> {
    let (q, lambda, iterations, res) = newton(q_pred, lambda_pred, s, sys, config)?;
    let monitors = assemble_monitors(&q, lambda, s, sys, res, r0)?;
    let point = BranchPoint { s, lambda, q: Some(q), monitors, newton_iterations: iterations };
    pointwise_check(&point, sys, config).map_err(|(monitor, detail)| Error::MonitorFailure { monitor, s, detail })?;
    Ok(point)
}

/// Marches from `start` to `config.target_s`.
pub fn continue_branch(start: &GroundStateSolution, config: &ContinuationConfig) -> Result<Branch> {
    config.validate()?;
    let ModelParams { s: s0, alpha, lambda: lambda0 } = start.params;
    let target = config.target_s;
    let direction = if target >= s0 { 1.0 } else { -1.0 };
    if direction < 0.0 {
        ensure(config.experimental, || "decreasing s is only available in experimental mode".into())?;
        ensure(alpha < alpha_max(target)?, || format!("α = {alpha} is not below α_max at s = {target}"))?;
    }
    let c0 = power_integral(&start.q, alpha + 2.0);
    let sys = BranchSystem { alpha, c0, boundary: config.boundary };
    let r0 = (8.0 * half_width(&start.q)).min(0.25 * start.q.grid().length());
    let first = corrector(&start.q, lambda0, s0, &sys, config, r0)
        .map_err(|e| Error::Precondition(format!("start point rejected: {e}")))?;
    let mut branch = Branch {
        alpha,
        s0,
        c0,
        boundary: config.boundary,
        grid: start.q.grid().spec(),
        points: vec![first],
        termination: Termination::ReachedTarget,
    };
    let mut windows: Option<Windows> = None;
    let mut ds = config.ds_init;
    loop {
        let prev = branch.last();
        let remaining = (target - prev.s) * direction;
        if remaining <= 1e-12 {
            break;
        }
        let step = ds.min(remaining);
        let s_next = prev.s + direction * step;
        let (q_pred, l_pred) = predictor(prev.field(), prev.lambda, prev.s, direction * step, &sys)
            .unwrap_or_else(|_| (prev.field().clone(), prev.lambda));
        match corrector(&q_pred, l_pred, s_next, &sys, config, r0) {
            Ok(point) => {
                if let Some(w) = &windows {
                    if let Err((monitor, detail)) = w.check(prev, &point) {
                        branch.termination = Termination::MonitorFailure { monitor, s: s_next, detail };
                        break;
                    }
                }
                let fast = point.newton_iterations <= 3;
                branch.points.push(point);
                if windows.is_none() && branch.points.len() >= config.calibration_points {
                    windows = Some(Windows::calibrate(&branch.points, config.safety));
                }
                if fast {
                    ds = (ds * 1.3).min(config.ds_max);
                }
            }
            Err(Error::MonitorFailure { monitor, s, detail }) => {
                branch.termination = Termination::MonitorFailure { monitor, s, detail };
                break;
            }
            Err(e) => {
                ds *= 0.5;
                if ds < config.ds_min {
                    branch.termination = Termination::NewtonFailure { s: s_next, detail: e.to_string() };
                    break;
                }
            }
        }
    }
    Ok(branch)
}

/// `∫|P′|²` for `P(x) = (σ+1)^{1/2σ} sech^{1/σ}(σx)`, `σ = α/2`.
pub fn classical_gradient_energy(alpha: f64) -> Result<f64> {
    let sigma = 0.5 * alpha;
    let p = 2.0 / sigma;
    // ∫ sech^p(u) tanh²(u) du over ℝ, with x = u/σ
    let mut f = |u: f64| {
        let c = 1.0 / u.cosh();
        c.powf(p) * u.tanh().powi(2)
    };
    let cut = 40.0 / p + 40.0;
    let opts = QuadOptions { abs_tol: 1e-16, rel_tol: 1e-13, ..Default::default() };
    let half = integrate(&mut f, 0.0, cut, opts)?.value;
    Ok((sigma + 1.0).powf(1.0 / sigma) * 2.0 * half / sigma)
}

/// The classical ground state `λ^{1/α} P(λ^{1/2} x)`.
pub fn classical_profile(alpha: f64, lambda: f64, x: f64) -> f64 {
    let sigma = 0.5 * alpha;
    let y = lambda.sqrt() * x;
    lambda.powf(1.0 / alpha) * (sigma + 1.0).powf(0.5 / sigma) / (sigma * y).cosh().powf(1.0 / sigma)
}

/// `λ_* = (α/(2(α+2)) · c₀ / ∫|P′|²)^{2α/(α+4)}`.
pub fn lambda_star(alpha: f64, c0: f64) -> Result<f64> {
    ensure(alpha > 0.0 && c0 > 0.0, || format!("need α > 0 and c₀ > 0, got {alpha}, {c0}"))?;
    let base = alpha / (2.0 * (alpha + 2.0)) * c0 / classical_gradient_energy(alpha)?;
    Ok(base.powf(2.0 * alpha / (alpha + 4.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub s_end: f64,
    pub lambda_end: f64,
    pub lambda_star: f64,
    pub lambda_deviation: f64,
    /// Relative L² distance to `λ_*^{1/α} P(λ_*^{1/2} x)`.
    pub field_deviation: f64,
    /// `|∫|Q′|² - α/(2(α+2)) ∫Q^{α+2}|` relative to the second term.
    pub classical_pohozaev: f64,
}

impl LimitReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.lambda_deviation <= tol && self.field_deviation <= tol
    }
}

pub fn verify_limit(branch: &Branch) -> Result<LimitReport> {
    let end = branch.last();
    if end.s < 0.99 {
        return Err(Error::Precondition(format!("branch ends at s = {} < 0.99", end.s)));
    }
    let q = end.field();
    let alpha = branch.alpha;
    let ls = lambda_star(alpha, branch.c0)?;
    let limit = q.grid().sample(|x| classical_profile(alpha, ls, x));
    let field_deviation = q.axpy(-1.0, &limit).l2_norm() / limit.l2_norm();
    let dq = q.derivative();
    let grad = dq.norm_sq();
    let pot = alpha / (2.0 * (alpha + 2.0)) * power_integral(q, alpha + 2.0);
    Ok(LimitReport {
        s_end: end.s,
        lambda_end: end.lambda,
        lambda_star: ls,
        lambda_deviation: (end.lambda - ls).abs() / ls,
        field_deviation,
        classical_pohozaev: (grad - pot).abs() / pot,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub seeds: usize,
    /// Largest `‖Q_i - Q_0‖/‖Q_0‖` among the solved ground states.
    pub ground_state_deviation: f64,
    /// Largest relative field or `λ` difference at shared `s` values.
    pub branch_deviation: f64,
    pub shared_points: usize,
    pub branches_complete: bool,
    #[serde(skip)]
    pub branches: Vec<Branch>,
}

impl UniquenessReport {
    pub fn passed(&self, ground_tol: f64, branch_tol: f64) -> bool {
        self.ground_state_deviation <= ground_tol && self.branch_deviation <= branch_tol && self.shared_points > 1
    }
}

/// Ground states and branches from several initial fields.
pub fn uniqueness_experiment(
    alpha: f64,
    s0: f64,
    lambda: f64,
    seeds: &[Field],
    config: &ContinuationConfig,
) -> Result<UniquenessReport> {
    if seeds.len() < 2 {
        return Err(Error::Precondition("uniqueness needs at least two seeds".into()));
    }
    let params = ModelParams::new(s0, alpha, lambda)?;
    // the seeds' c₀ differ by the solver tolerance, and so do their branches
    let opts = SolverOptions { boundary: config.boundary, tol: 1e-2 * config.newton_tol, ..Default::default() };
    let states: Vec<GroundStateSolution> = seeds
        .iter()
        .map(|seed| solve_ground_state(&params, seed.grid(), Some(seed), &opts))
        .collect::<Result<_>>()?;
    let reference = &states[0].q;
    let ground_state_deviation = states[1..]
        .iter()
        .map(|st| st.q.axpy(-1.0, reference).l2_norm() / reference.l2_norm())
        .fold(0.0, f64::max);
    let branches: Vec<Branch> = states.iter().map(|st| continue_branch(st, config)).collect::<Result<_>>()?;
    let mut branch_deviation: f64 = 0.0;
    let mut shared_points = usize::MAX;
    for b in &branches[1..] {
        let mut shared = 0;
        for p in &b.points {
            if let Some(r) = branches[0].points.iter().find(|r| (r.s - p.s).abs() <= 1e-12) {
                shared += 1;
                let dq = p.field().axpy(-1.0, r.field()).l2_norm() / r.field().l2_norm();
                let dl = (p.lambda - r.lambda).abs() / r.lambda;
                branch_deviation = branch_deviation.max(dq).max(dl);
            }
        }
        shared_points = shared_points.min(shared);
    }
    Ok(UniquenessReport {
        seeds: seeds.len(),
        ground_state_deviation,
        branch_deviation,
        shared_points,
        branches_complete: branches.iter().all(Branch::reached_target),
        branches,
    })
}

/// The three initial fields used by default: `e^{-x²}`, `e^{-x²/9}`, `1/(1+x⁴)`.
pub fn default_seeds(grid: &Grid) -> Vec<Field> {
    vec![
        grid.sample(|x| (-x * x).exp()),
        grid.sample(|x| (-x * x / 9.0).exp()),
        grid.sample(|x| 1.0 / (1.0 + x.powi(4))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sech_system(l: f64, n: usize) -> (Field, BranchSystem) {
        let g = Grid::new(l, n).unwrap();
        let q = g.sample(|x| 2f64.sqrt() / x.cosh()).with_parity(Parity::Even);
        (q, BranchSystem { alpha: 2.0, c0: 16.0 / 3.0, boundary: Boundary::Periodic })
    }

    #[test]
    fn residual_of_exact_states() {
        let (q, sys) = sech_system(60.0, 1024);
        assert!(residual_norm(&q, 1.0, 1.0, &sys).unwrap() <= 1e-10);
        let (f1, f2) = residual_f(&q.scaled(1.1), 1.0, 1.0, &sys).unwrap();
        assert!(f1.l2_norm() > 0.0);
        assert!((f2 - (1.1f64.powi(4) - 1.0) * sys.c0).abs() < 1e-9);
        let g = Grid::new(2048.0, 1 << 16).unwrap();
        let bo = g.sample(|x| 2.0 / (1.0 + x * x)).with_parity(Parity::Even);
        let sys = BranchSystem { alpha: 1.0, c0: 3.0 * PI, boundary: Boundary::FreeSpace };
        assert!(residual_norm(&bo, 1.0, 0.5, &sys).unwrap() <= 1e-5);
    }

    #[test]
    fn structural_constant_and_homogeneous_solve() {
        let (q, sys) = sech_system(40.0, 512);
        let solver = BorderedSolver::new(&q, 1.0, 1.0, &sys).unwrap();
        assert!((solver.structural_constant + 2.0).abs() < 1e-6 * 2.0, "{}", solver.structural_constant);
        let (eta, gamma) = solver.solve(&vec![0.0; 512], 0.0).unwrap();
        assert_eq!(gamma, 0.0);
        assert!(eta.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn newton_converges_quadratically() {
        let (q, sys) = sech_system(40.0, 512);
        let bump = q.grid().sample(|x| 1.0 + 0.05 * (-x * x).exp()).with_parity(Parity::Even);
        let mut u = q.hadamard(&bump);
        let mut lambda = 1.02;
        let mut history = vec![residual_norm(&u, lambda, 1.0, &sys).unwrap()];
        for _ in 0..3 {
            let (f1, f2) = residual_f(&u, lambda, 1.0, &sys).unwrap();
            let (eta, gamma) = solve_bordered(&u, lambda, 1.0, &sys, &f1.scaled(-1.0), -f2).unwrap();
            u = u.axpy(1.0, &eta);
            lambda += gamma;
            history.push(residual_norm(&u, lambda, 1.0, &sys).unwrap());
        }
        assert!(history[1] <= 0.1 * history[0] && history[2] <= 0.1 * history[1], "{history:?}");
        assert!((lambda - 1.0).abs() < 1e-8);
    }

    #[test]
    fn corrector_at_a_root_and_outside_the_basin() {
        let (q, sys) = sech_system(40.0, 512);
        let config = ContinuationConfig { boundary: Boundary::Periodic, ..Default::default() };
        let p = corrector(&q, 1.0, 1.0, &sys, &config, 8.0).unwrap();
        assert!(p.newton_iterations <= 2);
        let tight = ContinuationConfig { newton_max_iter: 3, ..config };
        assert!(matches!(newton(&q.scaled(2.0), 1.0, 1.0, &sys, &tight), Err(Error::NewtonFailure { .. })));
    }

    #[test]
    fn predictor_steps_are_reversible() {
        let (q, sys) = sech_system(40.0, 512);
        let config = ContinuationConfig { boundary: Boundary::Periodic, ..Default::default() };
        let (same, l) = predictor(&q, 1.0, 1.0, 0.0, &sys).unwrap();
        assert_eq!((same.values(), l), (q.values(), 1.0));
        let (qb, lb) = predictor(&q, 1.0, 1.0, -0.01, &sys).unwrap();
        let (qb, lb, _, _) = newton(&qb, lb, 0.99, &sys, &config).unwrap();
        let (qf, lf) = predictor(&qb, lb, 0.99, 0.01, &sys).unwrap();
        let (qf, lf, _, _) = newton(&qf, lf, 1.0, &sys, &config).unwrap();
        assert!((lf - 1.0).abs() < 1e-8);
        assert!(qf.axpy(-1.0, &q).l2_norm() < 1e-8 * q.l2_norm());
    }

    #[test]
    fn lambda_star_values() {
        assert!((lambda_star(2.0, 16.0 / 3.0).unwrap() - 1.0).abs() < 1e-12);
        // c₀ ↦ μ^{(α+4)/(2α)} c₀ sends λ_* ↦ μ λ_*
        let base = lambda_star(1.0, 3.0 * PI).unwrap();
        let mu: f64 = 1.7;
        let scaled = lambda_star(1.0, mu.powf(2.5) * 3.0 * PI).unwrap();
        assert!((scaled - mu * base).abs() < 1e-12 * scaled);
        assert!(base.is_finite() && base > 0.0);
    }

    #[test]
    fn single_point_branch_at_the_classical_limit() {
        let g = Grid::new(40.0, 512).unwrap();
        let params = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        let start = solve_ground_state(&params, &g, None, &SolverOptions::periodic()).unwrap();
        let config = ContinuationConfig { target_s: 1.0, boundary: Boundary::Periodic, ..Default::default() };
        let branch = continue_branch(&start, &config).unwrap();
        assert_eq!(branch.points.len(), 1);
        assert!(branch.reached_target());
        let rep = verify_limit(&branch).unwrap();
        assert!(rep.passed(1e-8), "{rep:?}");
    }
}
