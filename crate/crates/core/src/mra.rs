//! One decomposition / reconstruction step between `V_{3n}^m` and
//! `V_n^m + W_n^m`.
//!
//! Both steps work on coefficients in the orthonormal bases: `a_{3n}` in
//! `{phi~_{3n,j}}`, `a_n` in `{phi~_{n,k}}` and `b_n` in `{psi~_{n,h}}`.
//! The fast path chains the DCT-based transforms; [`decompose_step_direct`]
//! runs the same algorithm with O(n^2) transforms, and [`analysis_matrices`]
//! builds the two-scale matrices `A` and `B` entry by entry.

use nalgebra::{DMatrix, DVector};

use crate::bases::{DetailCoeffs, ScalingCoeffs};
use crate::coeffs::{sigma, tau, LevelTables, VpLevel};
use crate::error::{Result, VpError};
use crate::transforms::{sig_fwd, sig_inv, t_fwd_with, t_inv_with, DenseKernel};

struct StepTables {
    coarse: LevelTables,
    fine: LevelTables,
}

impl StepTables {
    fn new(coarse: VpLevel) -> Self {
        Self {
            coarse: coarse.tables(),
            fine: coarse.finer().tables(),
        }
    }
}

/// Splits fine coefficients `t = T_{3n}(a_{3n})` into the inputs `w` of
/// `T'_n` and `u` of `Sigma'_n`.
fn split(t: &[f64], tab: &StepTables) -> (Vec<f64>, Vec<f64>) {
    let level = tab.coarse.level;
    let (n, m) = (level.n(), level.m());
    let mu = |r: usize| tab.coarse.mu_at(r);

    let mut w = t[..n].to_vec();
    for r in (n - m + 1)..n {
        w[r] = mu(r) * t[r] - mu(2 * n - r) * t[2 * n - r];
    }

    let mut u = t[n..3 * n].to_vec();
    for r in (n + 1)..(n + m) {
        u[r - n] = (mu(r) * t[2 * n - r] + mu(2 * n - r) * t[r]) / tab.coarse.sqrt_v_at(r);
    }
    for r in (3 * n - m + 1)..(3 * n) {
        u[r - n] *= tab.coarse.sqrt_v_at(r);
    }
    (w, u)
}

/// Inverse of [`split`]: merges `alpha = T_n(a_n)` and `s = Sigma_n(b_n)`
/// into the input of `T'_{3n}`.
fn merge(alpha: &[f64], s: &[f64], tab: &StepTables) -> Vec<f64> {
    let level = tab.coarse.level;
    let (n, m) = (level.n(), level.m());
    let mu = |r: usize| tab.coarse.mu_at(r);
    let beta = |r: usize| s[r - n] / tab.coarse.sqrt_v_at(r);

    let mut g = vec![0.0; 3 * n];
    g[..=n - m].copy_from_slice(&alpha[..=n - m]);
    for r in (n - m + 1)..n {
        g[r] = mu(r) * alpha[r] + mu(2 * n - r) * beta(2 * n - r);
    }
    g[n] = beta(n);
    for r in (n + 1)..(n + m) {
        g[r] = mu(2 * n - r) * beta(r) - mu(r) * alpha[2 * n - r];
    }
    g[(n + m)..=(3 * n - m)].copy_from_slice(&s[m..=(2 * n - m)]);
    for r in (3 * n - m + 1)..(3 * n) {
        g[r] = s[r - n] * tab.coarse.sqrt_v_at(r);
    }
    g
}

fn coarse_of(a3n: &ScalingCoeffs) -> Result<VpLevel> {
    let fine = a3n.level;
    if !fine.n().is_multiple_of(3) {
        return Err(VpError::InvalidArgument(format!(
            "fine resolution {} is not divisible by 3",
            fine.n()
        )));
    }
    VpLevel::new(fine.n() / 3, fine.m())
}

fn check_pair(a: &ScalingCoeffs, b: &DetailCoeffs) -> Result<()> {
    if a.level != b.level {
        return Err(VpError::InvalidArgument(format!(
            "scaling level {:?} does not match detail level {:?}",
            a.level, b.level
        )));
    }
    Ok(())
}

/// Fast decomposition `a_{3n} -> (a_n, b_n)`.
pub fn decompose_step(a3n: &ScalingCoeffs) -> Result<(ScalingCoeffs, DetailCoeffs)> {
    let coarse = coarse_of(a3n)?;
    let tab = StepTables::new(coarse);
    let t = t_fwd_with(&a3n.a, &tab.fine)?;
    let (w, u) = split(&t, &tab);
    Ok((
        ScalingCoeffs::new(coarse, t_inv_with(&w, &tab.coarse)?)?,
        DetailCoeffs::new(coarse, sig_inv(&u, coarse)?)?,
    ))
}

/// Fast reconstruction `(a_n, b_n) -> a_{3n}`.
pub fn reconstruct_step(a: &ScalingCoeffs, b: &DetailCoeffs) -> Result<ScalingCoeffs> {
    check_pair(a, b)?;
    let tab = StepTables::new(a.level);
    let alpha = t_fwd_with(&a.a, &tab.coarse)?;
    let s = sig_fwd(&b.b, a.level)?;
    let g = merge(&alpha, &s, &tab);
    ScalingCoeffs::new(a.level.finer(), t_inv_with(&g, &tab.fine)?)
}

/// Decomposition with the four transforms evaluated as direct O(n^2) sums.
pub fn decompose_step_direct(a3n: &ScalingCoeffs) -> Result<(ScalingCoeffs, DetailCoeffs)> {
    let coarse = coarse_of(a3n)?;
    let tab = StepTables::new(coarse);
    let (kc, kf) = (DenseKernel::new(coarse), DenseKernel::new(coarse.finer()));
    let t = kf.t_fwd(&a3n.a)?;
    let (w, u) = split(&t, &tab);
    Ok((
        ScalingCoeffs::new(coarse, kc.t_inv(&w)?)?,
        DetailCoeffs::new(coarse, kc.sig_inv(&u)?)?,
    ))
}

/// Reconstruction with the four transforms evaluated as direct O(n^2) sums.
pub fn reconstruct_step_direct(a: &ScalingCoeffs, b: &DetailCoeffs) -> Result<ScalingCoeffs> {
    check_pair(a, b)?;
    let tab = StepTables::new(a.level);
    let (kc, kf) = (DenseKernel::new(a.level), DenseKernel::new(a.level.finer()));
    let alpha = kc.t_fwd(&a.a)?;
    let s = kc.sig_fwd(&b.b)?;
    let g = merge(&alpha, &s, &tab);
    ScalingCoeffs::new(a.level.finer(), kf.t_inv(&g)?)
}

/// Two-scale matrices of a level: `A` is `n x 3n`, `B` is `2n x 3n`, so
/// that `a_n = A a_{3n}` and `b_n = B a_{3n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisMatrices {
    pub level: VpLevel,
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
}

impl AnalysisMatrices {
    /// The stacked `3n x 3n` matrix `Q = [A; B]`.
    pub fn q(&self) -> DMatrix<f64> {
        let n = self.level.n();
        let mut q = DMatrix::zeros(3 * n, 3 * n);
        q.rows_mut(0, n).copy_from(&self.a);
        q.rows_mut(n, 2 * n).copy_from(&self.b);
        q
    }

    pub fn decompose(&self, a3n: &ScalingCoeffs) -> Result<(ScalingCoeffs, DetailCoeffs)> {
        if a3n.level != self.level.finer() {
            return Err(VpError::InvalidArgument(format!(
                "coefficients at {:?} do not match matrices for {:?}",
                a3n.level, self.level
            )));
        }
        let x = DVector::from_column_slice(&a3n.a);
        Ok((
            ScalingCoeffs::new(self.level, (&self.a * &x).as_slice().to_vec())?,
            DetailCoeffs::new(self.level, (&self.b * &x).as_slice().to_vec())?,
        ))
    }

    pub fn reconstruct(&self, a: &ScalingCoeffs, b: &DetailCoeffs) -> Result<ScalingCoeffs> {
        check_pair(a, b)?;
        if a.level != self.level {
            return Err(VpError::InvalidArgument(format!(
                "coefficients at {:?} do not match matrices for {:?}",
                a.level, self.level
            )));
        }
        let y = self.a.tr_mul(&DVector::from_column_slice(&a.a))
            + self.b.tr_mul(&DVector::from_column_slice(&b.b));
        ScalingCoeffs::new(self.level.finer(), y.as_slice().to_vec())
    }
}

/// Builds `A` and `B` from the closed-form `tau`, `sigma`, `mu` and `v`.
///
/// `A[k, j] = sum_r tau^n_{r,k} sum_s W[r, s] tau^{3n}_{s,j}` and
/// `B[h, j] = sum_r sigma_{r,h} sum_s U[r, s] tau^{3n}_{s,j}`, where `W`
/// and `U` hold the filter weights of the scaling and wavelet branches.
pub fn analysis_matrices(level: VpLevel) -> Result<AnalysisMatrices> {
    let (n, m) = (level.n(), level.m());
    let fine = level.finer();
    let tab = StepTables::new(level);
    let mu = |r: usize| tab.coarse.mu_at(r);

    let tau_c = DMatrix::from_fn(n, n, |k, r| tau(level, r, k + 1).unwrap());
    let tau_f = DMatrix::from_fn(3 * n, 3 * n, |s, j| tau(fine, s, j + 1).unwrap());
    let sig = DMatrix::from_fn(2 * n, 2 * n, |h, i| sigma(level, n + i, h + 1).unwrap());

    let mut wm = DMatrix::zeros(n, 3 * n);
    for r in 0..n {
        if r <= n - m {
            wm[(r, r)] = 1.0;
        } else {
            wm[(r, r)] = mu(r);
            wm[(r, 2 * n - r)] = -mu(2 * n - r);
        }
    }
    let mut um = DMatrix::zeros(2 * n, 3 * n);
    for r in n..3 * n {
        let i = r - n;
        let sv = tab.coarse.sqrt_v_at(r);
        if r > n && r < n + m {
            um[(i, 2 * n - r)] = mu(r) / sv;
            um[(i, r)] = mu(2 * n - r) / sv;
        } else if r > 3 * n - m {
            um[(i, r)] = sv;
        } else {
            um[(i, r)] = 1.0;
        }
    }
    Ok(AnalysisMatrices {
        level,
        a: tau_c * wm * &tau_f,
        b: sig * um * &tau_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{gram_matrix, scaling_ortho_expansion, scaling_to_cheb};
    use crate::cheb::{eval_p, ChebGrid};
    use crate::operators::discrete_proj;
    use rand::{Rng, SeedableRng};

    fn lv(n: usize, m: usize) -> VpLevel {
        VpLevel::new(n, m).unwrap()
    }

    fn random_scaling(level: VpLevel, seed: u64) -> ScalingCoeffs {
        let mut g = rand::rngs::StdRng::seed_from_u64(seed);
        ScalingCoeffs::new(level, (0..level.n()).map(|_| g.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    fn random_detail(level: VpLevel, seed: u64) -> DetailCoeffs {
        let mut g = rand::rngs::StdRng::seed_from_u64(seed);
        DetailCoeffs::new(level, (0..2 * level.n()).map(|_| g.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn q_is_orthogonal_and_blocks_cross_orthogonal() {
        for (n, m) in [(13, 6), (27, 13), (81, 40)] {
            let mats = analysis_matrices(lv(n, m)).unwrap();
            let q = mats.q();
            let dev = (&q * q.transpose() - DMatrix::<f64>::identity(3 * n, 3 * n)).amax();
            assert!(dev < 1e-11, "({n},{m}) dev={dev:e}");
            assert!((&mats.a * mats.b.transpose()).amax() < 1e-11);
        }
    }

    #[test]
    fn rows_of_a_are_two_scale_inner_products() {
        let level = lv(13, 6);
        let mats = analysis_matrices(level).unwrap();
        let coarse: Vec<_> = (1..=13).map(|k| scaling_ortho_expansion(level, k).unwrap()).collect();
        let fine: Vec<_> = (1..=39)
            .map(|j| scaling_ortho_expansion(level.finer(), j).unwrap())
            .collect();
        let g = gram_matrix(&coarse, &fine, 4 * 45).unwrap();
        assert!((g - &mats.a).amax() < 1e-10);
    }

    #[test]
    fn fast_direct_and_matrix_paths_agree() {
        for (n, m, seed) in [(27, 13, 1), (13, 6, 2), (81, 40, 3)] {
            let level = lv(n, m);
            let x = random_scaling(level.finer(), seed);
            let (a, b) = decompose_step(&x).unwrap();
            let (ad, bd) = decompose_step_direct(&x).unwrap();
            let mats = analysis_matrices(level).unwrap();
            let (am, bm) = mats.decompose(&x).unwrap();
            assert!(max_diff(&a.a, &am.a) < 1e-11 && max_diff(&b.b, &bm.b) < 1e-11);
            assert!(max_diff(&a.a, &ad.a) < 1e-11 && max_diff(&b.b, &bd.b) < 1e-11);

            let ra = random_scaling(level, seed + 100);
            let rb = random_detail(level, seed + 200);
            let y = reconstruct_step(&ra, &rb).unwrap();
            assert!(max_diff(&y.a, &mats.reconstruct(&ra, &rb).unwrap().a) < 1e-11);
            assert!(max_diff(&y.a, &reconstruct_step_direct(&ra, &rb).unwrap().a) < 1e-11);
        }
    }

    #[test]
    fn perfect_reconstruction_and_energy() {
        let level = lv(27, 13);
        for seed in 0..5 {
            let x = random_scaling(level.finer(), seed);
            let (a, b) = decompose_step(&x).unwrap();
            let back = reconstruct_step(&a, &b).unwrap();
            assert!(max_diff(&back.a, &x.a) < 1e-11);
            let split = a.energy() + b.energy();
            assert!((split - x.energy()).abs() / x.energy() < 1e-11);

            let (a2, b2) = decompose_step(&reconstruct_step(&a, &b).unwrap()).unwrap();
            assert!(max_diff(&a2.a, &a.a) < 1e-11 && max_diff(&b2.b, &b.b) < 1e-11);
        }
    }

    #[test]
    fn coarse_content_has_no_detail() {
        let level = lv(13, 6);
        let mats = analysis_matrices(level).unwrap();
        let a = random_scaling(level, 9);
        let x = mats.a.tr_mul(&DVector::from_column_slice(&a.a));
        let x = ScalingCoeffs::new(level.finer(), x.as_slice().to_vec()).unwrap();
        let (an, bn) = decompose_step(&x).unwrap();
        assert!(max_diff(&an.a, &a.a) < 1e-11);
        assert!(bn.b.iter().all(|v| v.abs() < 1e-11));

        let up = reconstruct_step(&a, &DetailCoeffs::zeros(level)).unwrap();
        assert!(scaling_to_cheb(&up).max_coeff_diff(&scaling_to_cheb(&a)) < 1e-11);
    }

    #[test]
    fn low_degree_polynomials_have_no_detail() {
        let level = lv(13, 6);
        let grid = ChebGrid::new(39).unwrap();
        for r in 0..=7 {
            let x = discrete_proj(&grid.sample(|x| eval_p(r, x).unwrap()), level.finer()).unwrap();
            let (_, b) = decompose_step(&x).unwrap();
            assert!(b.b.iter().all(|v| v.abs() < 1e-11), "r={r}");
        }
    }

    #[test]
    fn level_errors() {
        let x = random_scaling(lv(26, 6), 1);
        assert!(decompose_step(&x).is_err());
        let x = random_scaling(lv(39, 20), 1);
        assert!(decompose_step(&x).is_err());
        let a = random_scaling(lv(13, 6), 1);
        let b = random_detail(lv(13, 5), 1);
        assert!(reconstruct_step(&a, &b).is_err());
    }
}
