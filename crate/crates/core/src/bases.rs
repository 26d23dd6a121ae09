//! The six basis families and the maps between them.
//!
//! | family | space        | index        | role                      |
//! |--------|--------------|--------------|---------------------------|
//! | `q`    | `V_n^m`      | `0..n`       | orthogonal, norms `nu`    |
//! | `q~`   | `W_n^m`      | `n..3n`      | orthogonal, norms `v`     |
//! | `Phi`  | `V_n^m`      | `1..=n`      | interpolating at `X_n`    |
//! | `phi~` | `V_n^m`      | `1..=n`      | orthonormal               |
//! | `psi`  | `W_n^m`      | `1..=2n`     | interpolating at `Y`      |
//! | `psi~` | `W_n^m`      | `1..=2n`     | orthonormal               |
//!
//! Every element is exported as a [`ChebExpansion`]; pointwise evaluation
//! goes through that export.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::cheb::{p_at_node, ChebExpansion, ChebGrid};
use crate::coeffs::{mu, rho, LevelTables, VpLevel};
use crate::dct::{dct, idct, CosTable};
use crate::error::{check_domain, check_len, Result, VpError};
use crate::transforms::{sig_fwd, t_fwd_with};

/// Coefficients in the orthonormal scaling basis `{phi~_{n,k}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCoeffs {
    pub level: VpLevel,
    pub a: Vec<f64>,
}

impl ScalingCoeffs {
    pub fn new(level: VpLevel, a: Vec<f64>) -> Result<Self> {
        check_len(a.len(), level.n())?;
        Ok(Self { level, a })
    }

    pub fn zeros(level: VpLevel) -> Self {
        Self { level, a: vec![0.0; level.n()] }
    }

    /// Unit impulse at 1-based `k`.
    pub fn unit(level: VpLevel, k: usize) -> Result<Self> {
        check_index("scaling", k, level.n())?;
        let mut c = Self::zeros(level);
        c.a[k - 1] = 1.0;
        Ok(c)
    }

    pub fn energy(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum()
    }

    pub fn to_cheb(&self) -> ChebExpansion {
        scaling_to_cheb(self)
    }
}

/// Coefficients in the orthonormal wavelet basis `{psi~_{n,k}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailCoeffs {
    pub level: VpLevel,
    pub b: Vec<f64>,
}

impl DetailCoeffs {
    pub fn new(level: VpLevel, b: Vec<f64>) -> Result<Self> {
        check_len(b.len(), 2 * level.n())?;
        Ok(Self { level, b })
    }

    pub fn zeros(level: VpLevel) -> Self {
        Self { level, b: vec![0.0; 2 * level.n()] }
    }

    /// Unit impulse at 1-based `k`.
    pub fn unit(level: VpLevel, k: usize) -> Result<Self> {
        check_index("detail", k, 2 * level.n())?;
        let mut d = Self::zeros(level);
        d.b[k - 1] = 1.0;
        Ok(d)
    }

    pub fn energy(&self) -> f64 {
        self.b.iter().map(|x| x * x).sum()
    }

    pub fn to_cheb(&self) -> ChebExpansion {
        detail_to_cheb(self)
    }
}

fn check_index(what: &str, k: usize, count: usize) -> Result<()> {
    if k == 0 || k > count {
        Err(VpError::InvalidArgument(format!(
            "{what} index {k} outside [1, {count}]"
        )))
    } else {
        Ok(())
    }
}

fn check_range(what: &str, r: usize, lo: usize, hi: usize) -> Result<()> {
    if r < lo || r >= hi {
        Err(VpError::InvalidArgument(format!(
            "{what} index {r} outside [{lo}, {hi})"
        )))
    } else {
        Ok(())
    }
}

/// Adds `c q_r` to a Chebyshev coefficient buffer of length `>= n + m`.
pub(crate) fn scatter_q(tables: &LevelTables, r: usize, c: f64, out: &mut [f64]) {
    let (n, m) = (tables.level.n(), tables.level.m());
    if r <= n - m {
        out[r] += c;
    } else {
        out[r] += c * tables.mu[r];
        out[2 * n - r] -= c * tables.mu[2 * n - r];
    }
}

/// Adds `c q~_r` to a Chebyshev coefficient buffer of length `>= 3n + m`.
pub(crate) fn scatter_qtilde(level: VpLevel, r: usize, c: f64, out: &mut [f64]) {
    let (n, m) = (level.n(), level.m());
    if r < n + m {
        out[2 * n - r] += c * mu(level, r);
        out[r] += c * mu(level, 2 * n - r);
    } else if r <= 3 * n - m {
        out[r] += c;
    } else {
        let fine = level.finer();
        out[r] += c * mu(fine, r);
        out[6 * n - r] -= c * mu(fine, 6 * n - r);
    }
}

/// `q_{n,r}` as a Chebyshev expansion of length `n + m`.
pub fn q_expansion(level: VpLevel, r: usize) -> Result<ChebExpansion> {
    check_range("q", r, 0, level.n())?;
    let mut out = vec![0.0; level.n() + level.m()];
    scatter_q(&level.tables(), r, 1.0, &mut out);
    Ok(ChebExpansion::new(out))
}

/// `q~_{n,r}` as a Chebyshev expansion of length `3n + m`.
pub fn qtilde_expansion(level: VpLevel, r: usize) -> Result<ChebExpansion> {
    check_range("q~", r, level.n(), 3 * level.n())?;
    let mut out = vec![0.0; 3 * level.n() + level.m()];
    scatter_qtilde(level, r, 1.0, &mut out);
    Ok(ChebExpansion::new(out))
}

/// `Phi_{n,k}^m = (pi/n) sum_r mu_r p_r(x_k) p_r`.
pub fn scaling_interp_expansion(level: VpLevel, k: usize) -> Result<ChebExpansion> {
    let n = level.n();
    check_index("scaling", k, n)?;
    let w = PI / n as f64;
    Ok(ChebExpansion::new(
        (0..n + level.m())
            .map(|r| w * mu(level, r) * p_at_node(r, k, n))
            .collect(),
    ))
}

/// `phi~_{n,k}^m`.
pub fn scaling_ortho_expansion(level: VpLevel, k: usize) -> Result<ChebExpansion> {
    Ok(scaling_to_cheb(&ScalingCoeffs::unit(level, k)?))
}

/// `psi_{n,k}^m = (pi/3n) sum_r rho_{r,k} q~_r`.
pub fn wavelet_interp_expansion(level: VpLevel, k: usize) -> Result<ChebExpansion> {
    let n = level.n();
    check_index("wavelet", k, 2 * n)?;
    let w = PI / (3 * n) as f64;
    let mut out = vec![0.0; 3 * n + level.m()];
    for r in n..3 * n {
        scatter_qtilde(level, r, w * rho(level, r, k)?, &mut out);
    }
    Ok(ChebExpansion::new(out))
}

/// `psi~_{n,k}^m`.
pub fn wavelet_ortho_expansion(level: VpLevel, k: usize) -> Result<ChebExpansion> {
    Ok(detail_to_cheb(&DetailCoeffs::unit(level, k)?))
}

fn eval_checked(e: Result<ChebExpansion>, x: f64) -> Result<f64> {
    check_domain(x)?;
    e?.eval(x)
}

pub fn eval_q(level: VpLevel, r: usize, x: f64) -> Result<f64> {
    eval_checked(q_expansion(level, r), x)
}

pub fn eval_qtilde(level: VpLevel, r: usize, x: f64) -> Result<f64> {
    eval_checked(qtilde_expansion(level, r), x)
}

pub fn eval_scaling_interp(level: VpLevel, k: usize, x: f64) -> Result<f64> {
    eval_checked(scaling_interp_expansion(level, k), x)
}

pub fn eval_scaling_ortho(level: VpLevel, k: usize, x: f64) -> Result<f64> {
    eval_checked(scaling_ortho_expansion(level, k), x)
}

pub fn eval_wavelet_interp(level: VpLevel, k: usize, x: f64) -> Result<f64> {
    eval_checked(wavelet_interp_expansion(level, k), x)
}

pub fn eval_wavelet_ortho(level: VpLevel, k: usize, x: f64) -> Result<f64> {
    eval_checked(wavelet_ortho_expansion(level, k), x)
}

/// Chebyshev coefficients of `sum_k c_k phi~_k`, length `n + m`.
pub fn scaling_to_cheb(c: &ScalingCoeffs) -> ChebExpansion {
    let tables = c.level.tables();
    let t = t_fwd_with(&c.a, &tables).expect("length checked at construction");
    let n = c.level.n();
    let mut out = vec![0.0; n + c.level.m()];
    for (r, &tr) in t.iter().enumerate() {
        scatter_q(&tables, r, tr, &mut out);
    }
    ChebExpansion::new(out)
}

/// Chebyshev coefficients of `sum_k d_k psi~_k`, length `3n + m`.
pub fn detail_to_cheb(d: &DetailCoeffs) -> ChebExpansion {
    let level = d.level;
    let n = level.n();
    let tables = level.tables();
    let s = sig_fwd(&d.b, level).expect("length checked at construction");
    let mut out = vec![0.0; 3 * n + level.m()];
    for (i, &si) in s.iter().enumerate() {
        scatter_qtilde(level, n + i, si / tables.sqrt_v[i], &mut out);
    }
    ChebExpansion::new(out)
}

/// Orthonormal coefficients of the VP interpolant of `samples` (values at
/// `X_n`, decreasing node order).
pub fn values_to_ortho(samples: &[f64], level: VpLevel) -> Result<ScalingCoeffs> {
    let n = level.n();
    check_len(samples.len(), n)?;
    let tables = level.tables();
    let mut w = dct(samples)?;
    for (x, s) in w.iter_mut().zip(&tables.sqrt_nu) {
        *x *= s;
    }
    let scale = (PI / n as f64).sqrt();
    let a = idct(&w)?.into_iter().map(|x| scale * x).collect();
    ScalingCoeffs::new(level, a)
}

/// Values at `X_n` of `sum_k c_k phi~_k`; inverse of [`values_to_ortho`].
pub fn ortho_to_values(c: &ScalingCoeffs) -> Result<Vec<f64>> {
    let n = c.level.n();
    let tables = c.level.tables();
    let mut w = dct(&c.a)?;
    for (x, s) in w.iter_mut().zip(&tables.sqrt_nu) {
        *x /= s;
    }
    let scale = (n as f64 / PI).sqrt();
    Ok(idct(&w)?.into_iter().map(|x| scale * x).collect())
}

/// Change-of-basis matrices inside `V_n^m`.
///
/// `forward[(k, h)]` expands `phi~_k = sum_h forward[(k,h)] Phi_h`;
/// `backward[(h, k)]` expands `Phi_h = sum_k backward[(h,k)] phi~_k`.
pub fn change_of_basis_matrices(level: VpLevel) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = level.n();
    let tables = level.tables();
    let table = CosTable::new(n);
    let kernel = |k: usize, h: usize, weight: &dyn Fn(usize) -> f64| -> f64 {
        (0..n)
            .map(|r| weight(r) * table.p(r, k + 1) * table.p(r, h + 1))
            .sum()
    };
    let fw = (PI / n as f64).sqrt();
    let bw = (PI / n as f64).powf(1.5);
    let forward = DMatrix::from_fn(n, n, |k, h| fw * kernel(k, h, &|r| 1.0 / tables.sqrt_nu[r]));
    let backward = DMatrix::from_fn(n, n, |h, k| bw * kernel(k, h, &|r| tables.sqrt_nu[r]));
    (forward, backward)
}

/// Gram matrix `<left_i, right_j>` by the Gauss-Chebyshev rule with `n_quad`
/// nodes.
pub fn gram_matrix(
    left: &[ChebExpansion],
    right: &[ChebExpansion],
    n_quad: usize,
) -> Result<DMatrix<f64>> {
    let grid = ChebGrid::new(n_quad)?;
    let sample = |fs: &[ChebExpansion]| {
        DMatrix::from_fn(fs.len(), n_quad, |i, j| fs[i].eval_unchecked(grid.nodes()[j]))
    };
    let (l, r) = (sample(left), sample(right));
    Ok((l * r.transpose()) * (PI / n_quad as f64))
}
