//! Closed-form coefficient families of the VP construction.
//!
//! Every basis and transform is parameterized by a [`VpLevel`] `(n, m)` with
//! `0 < m < n`. The families are:
//!
//! * `mu(r)`: the trapezoidal VP filter, 1 up to `n - m`, linear ramp to 0 at `n + m`;
//! * `nu(r)`: squared norms of the orthogonal scaling basis `q_{n,r}`;
//! * `vcoef(r)`: squared norms of the orthogonal detail basis `q~_{n,r}`;
//! * `tau(r, k)`, `sigma(r, k)`: orthonormal scaling / wavelet synthesis weights;
//! * `rho(r, k)`: weights of the interpolating wavelets.
//!
//! `tau` depends on `m` through `nu`, so it takes the level explicitly.

use std::f64::consts::PI;

use crate::cheb::{p_at_node, p_scale, YGrid};
use crate::error::{Result, VpError};

/// Resolution `n` and VP parameter `m`, with `0 < m < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VpLevel {
    n: usize,
    m: usize,
}

impl VpLevel {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(VpError::InvalidArgument(format!(
                "VP level requires 0 < m < n, got n = {n}, m = {m}"
            )));
        }
        Ok(Self { n, m })
    }

    /// `m = floor(theta n)`.
    pub fn from_theta(n: usize, theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(VpError::InvalidArgument(format!(
                "theta must lie in (0, 1), got {theta}"
            )));
        }
        Self::new(n, (theta * n as f64).floor() as usize)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The level `(3n, m)` this level nests into.
    pub fn finer(&self) -> Self {
        Self { n: 3 * self.n, m: self.m }
    }

    /// The level `(n/3, m)`, if it exists.
    pub fn coarser(&self) -> Result<Self> {
        if !self.n.is_multiple_of(3) {
            return Err(VpError::InvalidArgument(format!(
                "resolution {} is not divisible by 3",
                self.n
            )));
        }
        Self::new(self.n / 3, self.m)
    }

    pub fn mu(&self, r: usize) -> f64 {
        mu(*self, r)
    }

    pub fn nu(&self, r: usize) -> Result<f64> {
        nu(*self, r)
    }

    pub fn vcoef(&self, r: usize) -> Result<f64> {
        vcoef(*self, r)
    }

    pub fn tables(&self) -> LevelTables {
        LevelTables::new(*self)
    }
}

/// VP filter `mu_{n,r}^m`.
pub fn mu(level: VpLevel, r: usize) -> f64 {
    let (n, m) = (level.n, level.m);
    if r <= n - m {
        1.0
    } else if r < n + m {
        (m + n - r) as f64 / (2 * m) as f64
    } else {
        0.0
    }
}

fn ramp(m: usize, d: usize) -> f64 {
    let (m, d) = (m as f64, d as f64);
    (m * m + d * d) / (2.0 * m * m)
}

/// `nu_{n,r}^m = <q_{n,r}, q_{n,r}>`, `0 <= r < n`.
pub fn nu(level: VpLevel, r: usize) -> Result<f64> {
    let (n, m) = (level.n, level.m);
    if r >= n {
        return Err(VpError::InvalidArgument(format!("nu index {r} outside [0, {n})")));
    }
    Ok(if r <= n - m { 1.0 } else { ramp(m, n - r) })
}

/// `v_{n,r}^m = <q~_{n,r}, q~_{n,r}>`, `n <= r < 3n`.
pub fn vcoef(level: VpLevel, r: usize) -> Result<f64> {
    let (n, m) = (level.n, level.m);
    if r < n || r >= 3 * n {
        return Err(VpError::InvalidArgument(format!(
            "v index {r} outside [{n}, {})",
            3 * n
        )));
    }
    Ok(if r > n && r < n + m {
        ramp(m, r - n)
    } else if r > 3 * n - m {
        ramp(m, 3 * n - r)
    } else {
        1.0
    })
}

/// `tau_{r,k} = sqrt(pi / (n nu_r)) p_r(x_k^n)`.
pub fn tau(level: VpLevel, r: usize, k: usize) -> Result<f64> {
    let n = level.n;
    if k == 0 || k > n {
        return Err(VpError::InvalidArgument(format!("tau node index {k} outside [1, {n}]")));
    }
    let nu_r = nu(level, r)?;
    Ok((PI / (n as f64 * nu_r)).sqrt() * p_at_node(r, k, n))
}

fn check_detail_indices(level: VpLevel, r: usize, k: usize) -> Result<()> {
    let n = level.n;
    if r < n || r >= 3 * n {
        return Err(VpError::InvalidArgument(format!(
            "detail degree index {r} outside [{n}, {})",
            3 * n
        )));
    }
    if k == 0 || k > 2 * n {
        return Err(VpError::InvalidArgument(format!(
            "detail node index {k} outside [1, {}]",
            2 * n
        )));
    }
    Ok(())
}

#[inline]
fn p_y(r: usize, k: usize, n: usize) -> f64 {
    p_at_node(r, YGrid::fine_index_of(k), 3 * n)
}

/// Orthonormal wavelet weights `sigma_{r,k}`, `n <= r < 3n`, `1 <= k <= 2n`.
pub fn sigma(level: VpLevel, r: usize, k: usize) -> Result<f64> {
    check_detail_indices(level, r, k)?;
    let n = level.n;
    let branch = if r == n {
        p_y(n, k, n)
    } else if r < 2 * n {
        (p_y(r, k, n) + p_y(2 * n - r, k, n)) / 2f64.sqrt()
    } else if r == 2 * n {
        (p_y(2 * n, k, n) + 2f64.sqrt() * p_y(0, k, n)) / 3f64.sqrt()
    } else {
        1.5f64.sqrt() * p_y(r, k, n)
    };
    Ok((PI / (3 * n) as f64).sqrt() * branch)
}

/// Interpolating wavelet weights `rho_{r,k}`, `n <= r < 3n`, `1 <= k <= 2n`.
pub fn rho(level: VpLevel, r: usize, k: usize) -> Result<f64> {
    check_detail_indices(level, r, k)?;
    let (n, m) = (level.n, level.m);
    Ok(if r == n {
        p_y(n, k, n)
    } else if r == 2 * n {
        p_y(2 * n, k, n) + 2f64.sqrt() * p_scale(0)
    } else if r <= 3 * n - m {
        p_y(r, k, n) + p_y(r.abs_diff(2 * n), k, n)
    } else {
        p_y(r, k, n) + level.mu(r - 2 * n) * p_y(r - 2 * n, k, n)
            - level.mu(4 * n - r) * p_y(4 * n - r, k, n)
    })
}

/// Dense per-level caches of `mu`, `nu` and `v`, with square roots.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTables {
    pub level: VpLevel,
    /// `mu_r`, `r = 0..n+m`.
    pub mu: Vec<f64>,
    /// `nu_r`, `r = 0..n`.
    pub nu: Vec<f64>,
    pub sqrt_nu: Vec<f64>,
    /// `v_r` stored at offset `r - n`, `r = n..3n`.
    pub v: Vec<f64>,
    pub sqrt_v: Vec<f64>,
}

impl LevelTables {
    pub fn new(level: VpLevel) -> Self {
        let n = level.n;
        let mu_t: Vec<f64> = (0..n + level.m).map(|r| mu(level, r)).collect();
        let nu_t: Vec<f64> = (0..n).map(|r| nu(level, r).unwrap()).collect();
        let v_t: Vec<f64> = (n..3 * n).map(|r| vcoef(level, r).unwrap()).collect();
        Self {
            level,
            sqrt_nu: nu_t.iter().map(|x| x.sqrt()).collect(),
            sqrt_v: v_t.iter().map(|x| x.sqrt()).collect(),
            mu: mu_t,
            nu: nu_t,
            v: v_t,
        }
    }

    /// `mu_r` for any `r >= 0` (zero beyond the table).
    #[inline]
    pub fn mu_at(&self, r: usize) -> f64 {
        self.mu.get(r).copied().unwrap_or(0.0)
    }

    #[inline]
    pub fn v_at(&self, r: usize) -> f64 {
        self.v[r - self.level.n]
    }

    #[inline]
    pub fn sqrt_v_at(&self, r: usize) -> f64 {
        self.sqrt_v[r - self.level.n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::cheb_nodes;
    use approx::assert_abs_diff_eq;

    fn l(n: usize, m: usize) -> VpLevel {
        VpLevel::new(n, m).unwrap()
    }

    #[test]
    fn level_validation() {
        assert!(VpLevel::new(5, 0).is_err());
        assert!(VpLevel::new(5, 5).is_err());
        assert!(VpLevel::new(5, 4).is_ok());
        assert_eq!(VpLevel::from_theta(64, 0.7).unwrap().m(), 44);
        assert!(VpLevel::from_theta(10, 0.05).is_err());
        assert!(VpLevel::from_theta(10, 1.0).is_err());
        assert!(l(27, 13).coarser().is_err());
        assert_eq!(l(27, 8).coarser().unwrap(), l(9, 8));
        assert_eq!(l(9, 8).finer(), l(27, 8));
    }

    #[test]
    fn mu_examples() {
        let lv = l(13, 6);
        assert_eq!(mu(lv, 5), 1.0);
        assert_eq!(mu(lv, 13), 0.5);
        assert_abs_diff_eq!(mu(lv, 18), 1.0 / 12.0, epsilon = 1e-16);
        assert_eq!(mu(lv, 19), 0.0);
        assert_eq!(mu(lv, 500), 0.0);
    }

    #[test]
    fn nu_examples() {
        let lv = l(13, 6);
        assert_eq!(nu(lv, 7).unwrap(), 1.0);
        assert_abs_diff_eq!(nu(lv, 12).unwrap(), 37.0 / 72.0, epsilon = 1e-16);
        assert_abs_diff_eq!(nu(lv, 8).unwrap(), 61.0 / 72.0, epsilon = 1e-16);
        assert!(nu(lv, 13).is_err());
    }

    #[test]
    fn v_examples() {
        let lv = l(13, 6);
        assert_eq!(vcoef(lv, 13).unwrap(), 1.0);
        assert_abs_diff_eq!(vcoef(lv, 14).unwrap(), 37.0 / 72.0, epsilon = 1e-16);
        assert_abs_diff_eq!(vcoef(lv, 38).unwrap(), 37.0 / 72.0, epsilon = 1e-16);
        assert_eq!(vcoef(lv, 19).unwrap(), 1.0);
        assert!(vcoef(lv, 12).is_err());
        assert!(vcoef(lv, 39).is_err());
    }

    #[test]
    fn filter_identities() {
        for (n, m) in [(13, 6), (40, 20), (10, 9), (7, 1)] {
            let lv = l(n, m);
            for r in (n - m + 1)..n {
                assert_abs_diff_eq!(mu(lv, r) + mu(lv, 2 * n - r), 1.0, epsilon = 1e-15);
                let sq = mu(lv, r).powi(2) + mu(lv, 2 * n - r).powi(2);
                assert_abs_diff_eq!(nu(lv, r).unwrap(), sq, epsilon = 1e-15);
            }
            let fine = lv.finer();
            for r in (3 * n - m + 1)..3 * n {
                assert_eq!(vcoef(lv, r).unwrap(), nu(fine, r).unwrap());
            }
            for r in n..3 * n {
                let v = vcoef(lv, r).unwrap();
                assert!(v > 0.0 && v <= 1.0);
            }
        }
    }

    #[test]
    fn tau_examples() {
        let lv = l(4, 2);
        for k in 1..=4 {
            assert_abs_diff_eq!(tau(lv, 0, k).unwrap(), 0.5, epsilon = 1e-15);
        }
        let lv = l(13, 6);
        let x1 = cheb_nodes(13).unwrap().node(1);
        let want = (PI / (13.0 * 37.0 / 72.0)).sqrt() * crate::cheb::eval_p(12, x1).unwrap();
        assert_abs_diff_eq!(tau(lv, 12, 1).unwrap(), want, epsilon = 1e-14);
        assert!(tau(lv, 13, 1).is_err());
        assert!(tau(lv, 0, 0).is_err());
    }

    #[test]
    fn tau_rows_orthogonal_with_scaled_norms() {
        let lv = l(13, 6);
        for r in 0..13 {
            for s in 0..13 {
                let dot: f64 = (1..=13)
                    .map(|k| tau(lv, r, k).unwrap() * tau(lv, s, k).unwrap())
                    .sum();
                let want = if r == s { 1.0 / nu(lv, r).unwrap() } else { 0.0 };
                assert_abs_diff_eq!(dot, want, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn sigma_examples() {
        assert_abs_diff_eq!(sigma(l(2, 1), 2, 1).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(sigma(l(13, 6), 26, 1).unwrap(), (1.0 / 26.0f64).sqrt(), epsilon = 1e-15);
        assert!(sigma(l(13, 6), 12, 1).is_err());
        assert!(sigma(l(13, 6), 13, 27).is_err());
    }

    #[test]
    fn sigma_matrix_orthogonal() {
        for (n, m) in [(13, 6), (4, 3), (9, 2)] {
            let lv = l(n, m);
            for r in n..3 * n {
                for s in n..3 * n {
                    let dot: f64 = (1..=2 * n)
                        .map(|k| sigma(lv, r, k).unwrap() * sigma(lv, s, k).unwrap())
                        .sum();
                    let want = if r == s { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(dot, want, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn rho_branches() {
        let lv = l(13, 6);
        let y = YGrid::new(13).unwrap();
        for k in 1..=26 {
            let yk = y.node(k);
            let p = |r| crate::cheb::eval_p(r, yk).unwrap();
            assert_abs_diff_eq!(rho(lv, 13, k).unwrap(), p(13), epsilon = 1e-13);
            assert_abs_diff_eq!(
                rho(lv, 26, k).unwrap(),
                p(26) + 2f64.sqrt() / PI.sqrt(),
                epsilon = 1e-13
            );
            assert_abs_diff_eq!(rho(lv, 20, k).unwrap(), p(20) + p(6), epsilon = 1e-13);
            assert_abs_diff_eq!(rho(lv, 30, k).unwrap(), p(30) + p(4), epsilon = 1e-13);
        }
        assert!(rho(lv, 39, 1).is_err());
    }

    #[test]
    fn tables_match_closed_forms() {
        let lv = l(40, 20);
        let t = lv.tables();
        assert_eq!(t.mu.len(), 60);
        assert_eq!(t.nu.len(), 40);
        assert_eq!(t.v.len(), 80);
        for r in 0..70 {
            assert_eq!(t.mu_at(r), mu(lv, r));
        }
        for r in 40..120 {
            assert_eq!(t.v_at(r), vcoef(lv, r).unwrap());
        }
    }
}
