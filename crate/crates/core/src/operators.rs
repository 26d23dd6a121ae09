//! Approximation operators on `V_n^m` and their Lebesgue functions.
//!
//! * `S_n^m`  ([`fourier_proj`]): orthogonal projection, inner products by
//!   Gauss-Chebyshev quadrature.
//! * `S~_n^m` ([`discrete_proj`]): the discrete projection built from samples
//!   at `X_n`.
//! * `V_n^m`  ([`vp_interp`]): VP interpolation at `X_n`.
//!
//! The Lebesgue function of `S` is `lambda(x) = int_0^pi |s(x, cos t)| dt`.
//! [`lebesgue_fn`] integrates it exactly between the sign changes of the
//! integrand, using the closed-form antiderivative of the cosine series;
//! [`lebesgue_fn_panels`] is the composite Gauss-Legendre reference.

use std::f64::consts::PI;
use std::fmt;

use crate::bases::{scatter_q, scaling_to_cheb, ScalingCoeffs};
use crate::cheb::{p_at_node, p_scale, p_values, probe_grid, sup_error_expansion, ChebExpansion, ChebGrid};
use crate::coeffs::{LevelTables, VpLevel};
use crate::dct::{dct, idct};
use crate::error::{check_domain, check_len, Result, VpError};
use crate::transforms::t_inv_with;

/// Default Gauss-Chebyshev size for [`fourier_proj`]: `16 (n + m)`.
pub fn default_quad_size(level: VpLevel) -> usize {
    16 * (level.n() + level.m())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    VpInterp,
    FourierProj,
    DiscreteProj,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::VpInterp => "vp",
            Self::FourierProj => "fourier",
            Self::DiscreteProj => "discrete",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LebesgueKind {
    /// `lambda`: the projection `S_n^m`.
    Lambda,
    /// `lambda~`: the discrete projection `S~_n^m`.
    LambdaTilde,
    /// `lambda-bar`: VP interpolation `V_n^m`.
    LambdaBar,
}

impl fmt::Display for LebesgueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lambda => "lambda",
            Self::LambdaTilde => "lambda-tilde",
            Self::LambdaBar => "lambda-bar",
        })
    }
}

/// `[q_0(x), ..., q_{n-1}(x)]`.
fn q_values(tables: &LevelTables, x: f64) -> Vec<f64> {
    let (n, m) = (tables.level.n(), tables.level.m());
    let p = p_values(n + m, x);
    (0..n)
        .map(|r| {
            if r <= n - m {
                p[r]
            } else {
                tables.mu[r] * p[r] - tables.mu[2 * n - r] * p[2 * n - r]
            }
        })
        .collect()
}

/// The kernel `s_n^m(x, y) = sum_r q_r(x) q_r(y) / nu_r`.
pub fn kernel_s(level: VpLevel, x: f64, y: f64) -> Result<f64> {
    check_domain(x)?;
    check_domain(y)?;
    let tables = level.tables();
    let (qx, qy) = (q_values(&tables, x), q_values(&tables, y));
    Ok(qx.iter().zip(&qy).zip(&tables.nu).map(|((a, b), nu)| a * b / nu).sum())
}

/// `s(x, .)` as a Chebyshev expansion in the second variable.
fn kernel_expansion(tables: &LevelTables, x: f64) -> ChebExpansion {
    let n = tables.level.n();
    let q = q_values(tables, x);
    let mut out = vec![0.0; n + tables.level.m()];
    for r in 0..n {
        scatter_q(tables, r, q[r] / tables.nu[r], &mut out);
    }
    ChebExpansion::new(out)
}

/// Orthogonal projection `S_n^m f`, with `<f, p_j>` computed by the
/// `n_quad`-point Gauss-Chebyshev rule.
pub fn fourier_proj<F: Fn(f64) -> f64>(f: F, level: VpLevel, n_quad: usize) -> Result<ScalingCoeffs> {
    let (n, m) = (level.n(), level.m());
    if n_quad < n {
        return Err(VpError::InvalidArgument(format!(
            "quadrature size {n_quad} is below the resolution {n}"
        )));
    }
    let grid = ChebGrid::new(n_quad)?;
    let samples = grid.sample(&f);
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(VpError::NonFinite(grid.nodes()[i]));
    }
    let w = (PI / n_quad as f64).sqrt();
    let mut fj: Vec<f64> = dct(&samples)?.into_iter().map(|v| w * v).collect();
    fj.truncate(n + m);
    for j in fj.len()..n + m {
        let s: f64 = (1..=n_quad)
            .map(|k| samples[k - 1] * p_at_node(j, k, n_quad))
            .sum();
        fj.push(PI / n_quad as f64 * s);
    }
    let tables = level.tables();
    let fq: Vec<f64> = (0..n)
        .map(|r| {
            if r <= n - m {
                fj[r]
            } else {
                tables.mu[r] * fj[r] - tables.mu[2 * n - r] * fj[2 * n - r]
            }
        })
        .collect();
    ScalingCoeffs::new(level, t_inv_with(&fq, &tables)?)
}

/// Discrete projection `S~_n^m f` from samples at `X_n`.
pub fn discrete_proj(samples: &[f64], level: VpLevel) -> Result<ScalingCoeffs> {
    let n = level.n();
    check_len(samples.len(), n)?;
    let tables = level.tables();
    let mut w = dct(samples)?;
    for (x, s) in w.iter_mut().zip(&tables.sqrt_nu) {
        *x /= s;
    }
    let scale = (PI / n as f64).sqrt();
    ScalingCoeffs::new(level, idct(&w)?.into_iter().map(|x| scale * x).collect())
}

/// VP interpolant `V_n^m f = sum_i f(x_i) Phi_{n,i}`.
pub fn vp_interp(samples: &[f64], level: VpLevel) -> Result<ChebExpansion> {
    let (n, m) = (level.n(), level.m());
    check_len(samples.len(), n)?;
    let d = dct(samples)?;
    let s = (PI / n as f64).sqrt();
    let coeffs = (0..n + m)
        .map(|r| {
            let mu = level.mu(r);
            if r < n {
                s * mu * d[r]
            } else if r == n {
                0.0
            } else {
                -s * mu * d[2 * n - r]
            }
        })
        .collect();
    Ok(ChebExpansion::new(coeffs))
}

/// Builds the chosen approximant of `f`. `FourierProj` uses `n_quad` nodes.
pub fn approximate_with<F: Fn(f64) -> f64>(
    f: F,
    kind: OperatorKind,
    level: VpLevel,
    n_quad: usize,
) -> Result<ChebExpansion> {
    let sample = || -> Result<Vec<f64>> {
        let grid = ChebGrid::new(level.n())?;
        let s = grid.sample(&f);
        match s.iter().position(|v| !v.is_finite()) {
            Some(i) => Err(VpError::NonFinite(grid.nodes()[i])),
            None => Ok(s),
        }
    };
    match kind {
        OperatorKind::VpInterp => vp_interp(&sample()?, level),
        OperatorKind::DiscreteProj => Ok(scaling_to_cheb(&discrete_proj(&sample()?, level)?)),
        OperatorKind::FourierProj => Ok(scaling_to_cheb(&fourier_proj(&f, level, n_quad)?)),
    }
}

/// [`approximate_with`] using [`default_quad_size`].
pub fn approximate<F: Fn(f64) -> f64>(f: F, kind: OperatorKind, level: VpLevel) -> Result<ChebExpansion> {
    approximate_with(f, kind, level, default_quad_size(level))
}

/// Cosine series `g(t) = sum_j d_j cos(j t)` with its derivative and
/// antiderivative.
struct CosSeries {
    d: Vec<f64>,
    // e[k] = d_{k+1} / (k+1)
    e: Vec<f64>,
    // f[k] = (k+1) d_{k+1}
    f: Vec<f64>,
}

/// `sum_k a_k U_k(x)` by Clenshaw.
fn clenshaw_u(a: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ak in a.iter().rev() {
        let b0 = ak + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1
}

/// Root of `f` in `[a, b]` by the Illinois variant of regula falsi, given
/// opposite signs at the ends.
fn illinois<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    if fa.signum() == fb.signum() {
        return 0.5 * (a + b);
    }
    let mut side = 0;
    for _ in 0..100 {
        let c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            break;
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if b - a < 1e-14 * (1.0 + a.abs()) {
            break;
        }
    }
    (a * fb - b * fa) / (fb - fa)
}

impl CosSeries {
    fn from_cheb(c: &ChebExpansion) -> Self {
        let d: Vec<f64> = c.coeffs.iter().enumerate().map(|(j, v)| v * p_scale(j)).collect();
        let e = d.iter().enumerate().skip(1).map(|(j, v)| v / j as f64).collect();
        let f = d.iter().enumerate().skip(1).map(|(j, v)| v * j as f64).collect();
        Self { d, e, f }
    }

    fn eval(&self, t: f64) -> f64 {
        let x = t.cos();
        let (mut b1, mut b2) = (0.0, 0.0);
        for &dj in self.d[1..].iter().rev() {
            let b0 = dj + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.d[0] + x * b1 - b2
    }

    fn derivative(&self, t: f64) -> f64 {
        -t.sin() * clenshaw_u(&self.f, t.cos())
    }

    /// `G(t) = d_0 t + sum_{j>=1} d_j sin(j t) / j`.
    fn antiderivative(&self, t: f64) -> f64 {
        self.d[0] * t + t.sin() * clenshaw_u(&self.e, t.cos())
    }
}

/// Oversampling factor of the sign scan in [`abs_integral`].
const SCAN_FACTOR: usize = 8;

/// `int_0^pi |g(t)| dt` for a cosine series, exact up to root location.
fn abs_integral(c: &ChebExpansion) -> Result<f64> {
    abs_integral_scan(c, SCAN_FACTOR)
}

fn abs_integral_scan(c: &ChebExpansion, factor: usize) -> Result<f64> {
    let series = CosSeries::from_cheb(c);
    // samples of g at the Chebyshev angles (2j-1) pi / (2K), plus both ends
    let k = factor * c.coeffs.len().max(2);
    let mut padded = c.coeffs.clone();
    padded.resize(k, 0.0);
    let scale = (k as f64 / PI).sqrt();
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(k + 2);
    pts.push((0.0, series.eval(0.0)));
    for (j, v) in idct(&padded)?.iter().enumerate() {
        pts.push(((2 * j + 1) as f64 * PI / (2 * k) as f64, scale * v));
    }
    pts.push((PI, series.eval(PI)));

    let g = |t: f64| series.eval(t);
    let dg = |t: f64| series.derivative(t);
    let mut roots = Vec::new();
    for w in pts.windows(2) {
        let ((ta, ga), (tb, gb)) = (w[0], w[1]);
        if ga == 0.0 {
            roots.push(ta);
        } else if ga * gb < 0.0 {
            roots.push(illinois(g, ta, tb));
        }
    }
    // a close pair of roots can hide between two samples of equal sign; it
    // shows up as a sampled local minimum of |g| with an interior extremum
    // of opposite sign on one side
    for i in 1..pts.len() - 1 {
        let ((_, ga), (tm, gm), (_, gb)) = (pts[i - 1], pts[i], pts[i + 1]);
        let same = ga * gm > 0.0 && gm * gb > 0.0;
        if !(same && gm.abs() <= ga.abs() && gm.abs() <= gb.abs()) {
            continue;
        }
        for (ta, tb) in [(pts[i - 1].0, tm), (tm, pts[i + 1].0)] {
            if dg(ta) * dg(tb) >= 0.0 {
                continue;
            }
            let t_ext = illinois(dg, ta, tb);
            if g(t_ext) * gm < 0.0 {
                roots.push(illinois(g, ta, t_ext));
                roots.push(illinois(g, t_ext, tb));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup();

    let mut breaks = Vec::with_capacity(roots.len() + 2);
    breaks.push(0.0);
    breaks.extend(roots.into_iter().filter(|&t| t > 0.0 && t < PI));
    breaks.push(PI);
    let big_g: Vec<f64> = breaks.iter().map(|&t| series.antiderivative(t)).collect();
    Ok(big_g.windows(2).map(|w| (w[1] - w[0]).abs()).sum())
}

/// Lebesgue function of the chosen operator at `x`.
pub fn lebesgue_fn(level: VpLevel, kind: LebesgueKind, x: f64) -> Result<f64> {
    check_domain(x)?;
    let tables = level.tables();
    lebesgue_with(&tables, kind, x)
}

fn lebesgue_with(tables: &LevelTables, kind: LebesgueKind, x: f64) -> Result<f64> {
    let n = tables.level.n();
    let s = (PI / n as f64).sqrt();
    match kind {
        LebesgueKind::Lambda => abs_integral(&kernel_expansion(tables, x)),
        LebesgueKind::LambdaTilde => {
            let w: Vec<f64> = q_values(tables, x).iter().zip(&tables.nu).map(|(q, nu)| q / nu).collect();
            Ok(s * idct(&w)?.iter().map(|v| v.abs()).sum::<f64>())
        }
        LebesgueKind::LambdaBar => Ok(s * idct(&q_values(tables, x))?.iter().map(|v| v.abs()).sum::<f64>()),
    }
}

const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

/// Panel settings and outcome of [`lebesgue_fn_panels`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelOutcome {
    pub value: f64,
    pub panels: usize,
    pub relative_change: f64,
}

/// `lambda(x)` by composite 8-point Gauss-Legendre panels on `[0, pi]`,
/// starting from `10 (n + m)` panels and doubling until the relative change
/// drops below `tol`.
pub fn lebesgue_fn_panels(level: VpLevel, x: f64, tol: f64, max_doublings: usize) -> Result<PanelOutcome> {
    check_domain(x)?;
    let series = CosSeries::from_cheb(&kernel_expansion(&level.tables(), x));
    let integrate = |panels: usize| -> f64 {
        let h = PI / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            for &(node, weight) in &GL8 {
                let dx = 0.5 * h * node;
                acc += weight * (series.eval(mid - dx).abs() + series.eval(mid + dx).abs());
            }
        }
        0.5 * h * acc
    };
    let mut panels = 10 * (level.n() + level.m());
    let mut prev = integrate(panels);
    let mut change = f64::INFINITY;
    for _ in 0..max_doublings {
        panels *= 2;
        let next = integrate(panels);
        change = (next - prev).abs() / next.abs();
        prev = next;
        if change < tol {
            return Ok(PanelOutcome { value: next, panels, relative_change: change });
        }
    }
    Err(VpError::NoConvergence { achieved: change, panels })
}

/// Maximum of a Lebesgue function over the probe grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueReport {
    pub kind: LebesgueKind,
    pub n: usize,
    pub m: usize,
    pub value: f64,
    pub argmax: f64,
    pub grid_size: usize,
    pub quad_spec: String,
}

fn quad_spec(kind: LebesgueKind, level: VpLevel) -> String {
    match kind {
        LebesgueKind::Lambda => format!(
            "exact antiderivative between sign changes; sign scan on {} Chebyshev angles",
            SCAN_FACTOR * (level.n() + level.m())
        ),
        LebesgueKind::LambdaTilde => format!("finite sum over {} nodes", level.n()),
        LebesgueKind::LambdaBar => format!("finite sum over {} nodes", level.n()),
    }
}

/// Lebesgue constant on the grid `cos(j pi / M)`, `j = 0..=M`. All three
/// Lebesgue functions are even, so only `x >= 0` is evaluated.
pub fn lebesgue_const(level: VpLevel, kind: LebesgueKind, grid: usize) -> Result<LebesgueReport> {
    if grid < 1000 {
        return Err(VpError::InvalidArgument(format!("Lebesgue constants need M >= 1000, got {grid}")));
    }
    let tables = level.tables();
    let xs = probe_grid(grid);
    let (mut value, mut argmax) = (f64::NEG_INFINITY, 1.0);
    for &x in &xs[..=grid / 2] {
        let v = lebesgue_with(&tables, kind, x)?;
        if v > value {
            value = v;
            argmax = x;
        }
    }
    Ok(LebesgueReport {
        kind,
        n: level.n(),
        m: level.m(),
        value,
        argmax,
        grid_size: grid,
        quad_spec: quad_spec(kind, level),
    })
}

/// Weighted discrete norm on `X_n`: `max |f_k|` for `p = inf`, otherwise
/// `((pi/n) sum |f_k|^p)^(1/p)`.
pub fn discrete_norm(samples: &[f64], p: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(VpError::InvalidArgument("no samples".into()));
    }
    if p.is_nan() || p < 1.0 {
        return Err(VpError::InvalidArgument(format!("norm order must be >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(samples.iter().map(|v| v.abs()).fold(0.0, f64::max));
    }
    let w = PI / samples.len() as f64;
    Ok((w * samples.iter().map(|v| v.abs().powf(p)).sum::<f64>()).powf(1.0 / p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPoint {
    pub n: usize,
    pub m: usize,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorCurve {
    pub points: Vec<ErrorPoint>,
    /// Resolutions with no valid `m = floor(theta n)`.
    pub skipped: Vec<usize>,
}

/// Sup-norm errors `E_n^m` of the chosen approximant for each `n`, with
/// `m = floor(theta n)`, measured on the probe grid of size `grid`.
pub fn error_curve<F: Fn(f64) -> f64>(
    f: F,
    kind: OperatorKind,
    theta: f64,
    ns: &[usize],
    grid: usize,
) -> Result<ErrorCurve> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(VpError::InvalidArgument(format!("theta must lie in (0, 1), got {theta}")));
    }
    let mut curve = ErrorCurve::default();
    for &n in ns {
        let Ok(level) = VpLevel::from_theta(n, theta) else {
            curve.skipped.push(n);
            continue;
        };
        let approx = approximate(&f, kind, level)?;
        curve.points.push(ErrorPoint {
            n,
            m: level.m(),
            error: sup_error_expansion(&f, &approx, grid)?,
        });
    }
    Ok(curve)
}
