//! The four coefficient transforms behind decomposition and reconstruction.
//!
//! * `t_fwd`:   `t_r = sum_k u_k tau_{r,k}`,        length `n -> n`
//! * `t_inv`:   `u_k = sum_r t_r tau_{r,k}`,        length `n -> n`
//! * `sig_fwd`: `s_r = sum_h u_h sigma_{r,h}`,      length `2n -> 2n`, `r = n..3n`
//! * `sig_inv`: `u_h = sum_r s_r sigma_{r,h}`,      length `2n -> 2n`
//!
//! Fast versions cost one DCT of length `n` (or `3n`) each. The `*_dense`
//! versions evaluate the defining sums directly and are O(n^2).

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::cheb::YGrid;
use crate::coeffs::{LevelTables, VpLevel};
use crate::dct::{dct, idct, CosTable};
use crate::error::{check_len, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

fn sqrt_3() -> f64 {
    3f64.sqrt()
}

fn sqrt_3_2() -> f64 {
    1.5f64.sqrt()
}

/// Fast `T_n`.
pub fn t_fwd(u: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    t_fwd_with(u, &level.tables())
}

pub(crate) fn t_fwd_with(u: &[f64], tables: &LevelTables) -> Result<Vec<f64>> {
    let (n, m) = (tables.level.n(), tables.level.m());
    check_len(u.len(), n)?;
    let mut t = dct(u)?;
    for r in (n - m + 1)..n {
        t[r] /= tables.sqrt_nu[r];
    }
    Ok(t)
}

/// Fast `T'_n`.
pub fn t_inv(t: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    t_inv_with(t, &level.tables())
}

pub(crate) fn t_inv_with(t: &[f64], tables: &LevelTables) -> Result<Vec<f64>> {
    let n = tables.level.n();
    check_len(t.len(), n)?;
    let w: Vec<f64> = t.iter().zip(&tables.sqrt_nu).map(|(x, s)| x / s).collect();
    idct(&w)
}

/// Fast `Sigma_n`. Output entry `i` holds `s_{n+i}`.
pub fn sig_fwd(u: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    let n = level.n();
    check_len(u.len(), 2 * n)?;
    let mut w = vec![0.0; 3 * n];
    for k in 0..n {
        w[3 * k] = u[2 * k];
        w[3 * k + 2] = u[2 * k + 1];
    }
    let x = dct(&w)?;
    let mut s = vec![0.0; 2 * n];
    s[0] = x[n];
    for r in (n + 1)..(2 * n) {
        s[r - n] = (x[r] + x[2 * n - r]) * FRAC_1_SQRT_2;
    }
    s[n] = (x[2 * n] + SQRT_2 * x[0]) / sqrt_3();
    for r in (2 * n + 1)..(3 * n) {
        s[r - n] = sqrt_3_2() * x[r];
    }
    Ok(s)
}

/// Fast `Sigma'_n`. Input entry `i` holds `s_{n+i}`.
pub fn sig_inv(s: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    let n = level.n();
    check_len(s.len(), 2 * n)?;
    let at = |r: usize| s[r - n];
    let mut w = vec![0.0; 3 * n];
    w[0] = (2.0f64 / 3.0).sqrt() * at(2 * n);
    for k in 1..n {
        w[k] = at(2 * n - k) * FRAC_1_SQRT_2;
    }
    w[n] = at(n);
    for k in (n + 1)..(2 * n) {
        w[k] = at(k) * FRAC_1_SQRT_2;
    }
    w[2 * n] = at(2 * n) / sqrt_3();
    for k in (2 * n + 1)..(3 * n) {
        w[k] = sqrt_3_2() * at(k);
    }
    let x = idct(&w)?;
    let mut u = vec![0.0; 2 * n];
    for k in 0..n {
        u[2 * k] = x[3 * k];
        u[2 * k + 1] = x[3 * k + 2];
    }
    Ok(u)
}

/// Entry tables for the dense transforms at one level.
pub(crate) struct DenseKernel {
    level: VpLevel,
    coarse: CosTable,
    fine: CosTable,
    inv_sqrt_nu: Vec<f64>,
}

impl DenseKernel {
    pub(crate) fn new(level: VpLevel) -> Self {
        let n = level.n();
        let tables = level.tables();
        Self {
            level,
            coarse: CosTable::new(n),
            fine: CosTable::new(3 * n),
            inv_sqrt_nu: tables.sqrt_nu.iter().map(|s| 1.0 / s).collect(),
        }
    }

    /// `tau_{r,k}`, 1-based `k`.
    #[inline]
    pub(crate) fn tau(&self, r: usize, k: usize) -> f64 {
        let n = self.level.n();
        (PI / n as f64).sqrt() * self.inv_sqrt_nu[r] * self.coarse.p(r, k)
    }

    /// `sigma_{r,h}`, 1-based `h`.
    #[inline]
    pub(crate) fn sigma(&self, r: usize, h: usize) -> f64 {
        let n = self.level.n();
        let j = YGrid::fine_index_of(h);
        let p = |d: usize| self.fine.p(d, j);
        let branch = if r == n {
            p(n)
        } else if r < 2 * n {
            (p(r) + p(2 * n - r)) * FRAC_1_SQRT_2
        } else if r == 2 * n {
            (p(2 * n) + SQRT_2 * p(0)) / sqrt_3()
        } else {
            sqrt_3_2() * p(r)
        };
        (PI / (3 * n) as f64).sqrt() * branch
    }

    pub(crate) fn t_fwd(&self, u: &[f64]) -> Result<Vec<f64>> {
        let n = self.level.n();
        check_len(u.len(), n)?;
        Ok((0..n)
            .map(|r| (1..=n).map(|k| u[k - 1] * self.tau(r, k)).sum())
            .collect())
    }

    pub(crate) fn t_inv(&self, t: &[f64]) -> Result<Vec<f64>> {
        let n = self.level.n();
        check_len(t.len(), n)?;
        Ok((1..=n)
            .map(|k| (0..n).map(|r| t[r] * self.tau(r, k)).sum())
            .collect())
    }

    pub(crate) fn sig_fwd(&self, u: &[f64]) -> Result<Vec<f64>> {
        let n = self.level.n();
        check_len(u.len(), 2 * n)?;
        Ok((n..3 * n)
            .map(|r| (1..=2 * n).map(|h| u[h - 1] * self.sigma(r, h)).sum())
            .collect())
    }

    pub(crate) fn sig_inv(&self, s: &[f64]) -> Result<Vec<f64>> {
        let n = self.level.n();
        check_len(s.len(), 2 * n)?;
        Ok((1..=2 * n)
            .map(|h| (n..3 * n).map(|r| s[r - n] * self.sigma(r, h)).sum())
            .collect())
    }
}

/// Dense `T_n`.
pub fn t_fwd_dense(u: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    DenseKernel::new(level).t_fwd(u)
}

/// Dense `T'_n`.
pub fn t_inv_dense(t: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    DenseKernel::new(level).t_inv(t)
}

/// Dense `Sigma_n`.
pub fn sig_fwd_dense(u: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    DenseKernel::new(level).sig_fwd(u)
}

/// Dense `Sigma'_n`.
pub fn sig_inv_dense(s: &[f64], level: VpLevel) -> Result<Vec<f64>> {
    DenseKernel::new(level).sig_inv(s)
}
