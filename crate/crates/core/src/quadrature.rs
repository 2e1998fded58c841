//! One-dimensional quadrature: adaptive Gauss–Kronrod, Wynn's epsilon
//! algorithm and a Fourier cosine integral built from the two.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_996,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];
// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// 21-point Kronrod rule on `[a, b]`; returns (integral, |K21 - G10|).
pub fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[10] * fc;
    let mut g = 0.0;
    for i in 0..10 {
        let dx = hw * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * hw, ((k - g) * hw).abs())
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0 });
    }
    let (v, e) = gauss_kronrod(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    while err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if heap.len() >= opts.max_intervals {
            break;
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(p);
            break;
        }
        let (v1, e1) = gauss_kronrod(&mut f, p.a, m);
        let (v2, e2) = gauss_kronrod(&mut f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.error;
        heap.push(Piece { a: p.a, b: m, value: v1, error: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, error: e2 });
    }
    // resum to shed the drift of the running totals
    total = heap.iter().map(|p| p.value).sum();
    err = heap.iter().map(|p| p.error).sum();
    if !total.is_finite() {
        return Err(Error::NonFinite(format!("integral over [{a}, {b}]")));
    }
    if err > 10.0 * opts.abs_tol.max(opts.rel_tol * total.abs()) {
        return Err(Error::Quadrature { what: format!("adaptive integral over [{a}, {b}]"), estimate: err });
    }
    Ok(QuadResult { value: total, error: err })
}

/// Wynn's epsilon algorithm applied to the tail of a sequence of partial sums.
///
/// Returns the highest even-column entry of the epsilon table built from the
/// last `window` terms.
pub fn wynn_epsilon(partial: &[f64], window: usize) -> f64 {
    let n = partial.len();
    if n < 3 {
        return *partial.last().unwrap_or(&0.0);
    }
    let start = n.saturating_sub(window.max(3));
    let mut prev: Vec<f64> = vec![0.0; n - start + 1];
    let mut cur: Vec<f64> = partial[start..].to_vec();
    let mut best = *partial.last().unwrap();
    let mut col = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == 0.0 || !d.is_finite() {
                // the column has converged exactly
                return if col % 2 == 0 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        col += 1;
        prev = cur;
        cur = next;
        if col % 2 == 0 {
            let v = *cur.last().unwrap();
            if v.is_finite() {
                best = v;
            }
        }
    }
    best
}

/// `∫₀^∞ g(u) cos(u x) du` for `g` decaying (possibly only algebraically) at
/// infinity.
///
/// The first quarter period is integrated adaptively; afterwards the integral
/// is split at the zeros of `cos(u x)` and the alternating panel sums are
/// accelerated with Wynn's epsilon algorithm.
pub fn fourier_cosine<G: FnMut(f64) -> f64>(mut g: G, x: f64, tol: f64) -> Result<QuadResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("fourier_cosine needs x > 0, got {x}")));
    }
    let half = std::f64::consts::PI / x;
    let a0 = 0.5 * half;
    let opts = QuadOptions { abs_tol: tol * 1e-3, rel_tol: tol * 1e-2, max_intervals: 2000 };
    let first = integrate(|u| g(u) * (u * x).cos(), 0.0, a0, opts)?;
    let mut sums = vec![first.value];
    let mut estimates: Vec<f64> = Vec::new();
    let mut scale = first.value.abs();
    let mut lo = a0;
    let max_panels = 20_000;
    for k in 0..max_panels {
        let hi = lo + half;
        let (p, _) = gauss_kronrod(&mut |u: f64| g(u) * (u * x).cos(), lo, hi);
        lo = hi;
        let s = sums.last().unwrap() + p;
        scale = scale.max(s.abs());
        sums.push(s);
        if !s.is_finite() {
            return Err(Error::NonFinite("fourier_cosine panel sum".into()));
        }
        // exponentially small panels: the plain sum has converged
        if p.abs() <= 1e-17 * scale && k > 2 {
            return Ok(QuadResult { value: s, error: p.abs() + first.error });
        }
        if sums.len() >= 5 {
            let e = wynn_epsilon(&sums, 41);
            estimates.push(e);
            let m = estimates.len();
            if m >= 3 {
                let d1 = (estimates[m - 1] - estimates[m - 2]).abs();
                let d2 = (estimates[m - 2] - estimates[m - 3]).abs();
                let thr = tol * estimates[m - 1].abs().max(1e-300) + 1e-18 * scale;
                if d1 <= thr && d2 <= thr {
                    return Ok(QuadResult { value: e, error: d1.max(d2) + first.error });
                }
            }
        }
    }
    let m = estimates.len();
    Err(Error::Quadrature {
        what: format!("oscillatory cosine integral at x = {x}"),
        estimate: if m >= 2 { (estimates[m - 1] - estimates[m - 2]).abs() } else { f64::NAN },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_is_exact_for_polynomials() {
        let (v, _) = gauss_kronrod(&mut |x: f64| x.powi(10) - 3.0 * x.powi(3), -1.0, 2.0);
        let exact = (2f64.powi(11) + 1.0) / 11.0 - 0.75 * (16.0 - 1.0);
        assert!((v - exact).abs() < 1e-12 * exact.abs());
    }

    #[test]
    fn adaptive_handles_endpoint_cusp() {
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, QuadOptions::default()).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn wynn_sums_alternating_harmonic() {
        let mut s = 0.0;
        let mut partial = Vec::new();
        for k in 1..=20 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            partial.push(s);
        }
        assert!((wynn_epsilon(&partial, 41) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn cosine_transform_of_lorentzian() {
        // ∫₀^∞ cos(ux)/(1+u²) du = (π/2) e^{-x}
        for &x in &[0.1, 1.0, 7.5] {
            let r = fourier_cosine(|u| 1.0 / (1.0 + u * u), x, 1e-12).unwrap();
            assert!((r.value - 0.5 * PI * (-x as f64).exp()).abs() < 1e-10, "x = {x}: {}", r.value);
        }
    }

    #[test]
    fn cosine_transform_of_gaussian() {
        let x = 2.0;
        let r = fourier_cosine(|u: f64| (-u * u).exp(), x, 1e-12).unwrap();
        let exact = 0.5 * PI.sqrt() * (-x * x / 4.0f64).exp();
        assert!((r.value - exact).abs() < 1e-13);
    }
}
