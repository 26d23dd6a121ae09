//! Orthonormal DCT-II / DCT-III pair expressed on the Chebyshev grid:
//!
//! `dct(v)_r = sqrt(pi/N) sum_k v_k p_r(x_k^N)` and
//! `idct(v)_k = sqrt(pi/N) sum_r v_r p_r(x_k^N)`.
//!
//! The matrix of `dct` is orthogonal, so `idct` is both its transpose and its
//! inverse. The fast path runs a length-2N complex FFT; the dense path sums
//! directly from an exact cosine table and is kept as the reference.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::rc::Rc;
use std::sync::Arc;

use nalgebra::DMatrix;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Result, VpError};

struct DctPlan {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    // e^{-i pi r / (2N)}, r = 0..N
    twiddle: Vec<Complex64>,
}

impl DctPlan {
    fn new(n: usize, planner: &mut FftPlanner<f64>) -> Self {
        let twiddle = (0..n)
            .map(|r| Complex64::from_polar(1.0, -PI * r as f64 / (2 * n) as f64))
            .collect();
        Self {
            n,
            forward: planner.plan_fft_forward(2 * n),
            inverse: planner.plan_fft_inverse(2 * n),
            twiddle,
        }
    }

    fn scales(&self) -> (f64, f64) {
        let n = self.n as f64;
        ((1.0 / n).sqrt(), (2.0 / n).sqrt())
    }

    fn dct(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut buf: Vec<Complex64> = Vec::with_capacity(2 * n);
        buf.extend(v.iter().map(|&x| Complex64::new(x, 0.0)));
        buf.extend(v.iter().rev().map(|&x| Complex64::new(x, 0.0)));
        self.forward.process(&mut buf);
        let (s0, s) = self.scales();
        (0..n)
            .map(|r| {
                let c = (self.twiddle[r] * buf[r]).re * 0.5;
                if r == 0 {
                    s0 * c
                } else {
                    s * c
                }
            })
            .collect()
    }

    fn idct(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        let (s0, s) = self.scales();
        let mut buf = vec![Complex64::new(0.0, 0.0); 2 * n];
        for r in 0..n {
            let scale = if r == 0 { s0 } else { s };
            buf[r] = self.twiddle[r].conj() * (scale * v[r]);
        }
        self.inverse.process(&mut buf);
        buf[..n].iter().map(|c| c.re).collect()
    }
}

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<usize, Rc<DctPlan>>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn plan(n: usize) -> Rc<DctPlan> {
    PLANS.with(|cell| {
        let mut guard = cell.borrow_mut();
        let (planner, cache) = &mut *guard;
        cache
            .entry(n)
            .or_insert_with(|| Rc::new(DctPlan::new(n, planner)))
            .clone()
    })
}

fn non_empty(v: &[f64]) -> Result<()> {
    if v.is_empty() {
        Err(VpError::InvalidArgument("transform input is empty".into()))
    } else {
        Ok(())
    }
}

/// Fast orthonormal DCT-II in Chebyshev-node form.
pub fn dct(v: &[f64]) -> Result<Vec<f64>> {
    non_empty(v)?;
    Ok(plan(v.len()).dct(v))
}

/// Fast orthonormal DCT-III, the inverse of [`dct`].
pub fn idct(v: &[f64]) -> Result<Vec<f64>> {
    non_empty(v)?;
    Ok(plan(v.len()).idct(v))
}

/// `cos(j pi / (2N))` for `j = 0..4N`, so that `cos(r (2k-1) pi / (2N))`
/// is a single lookup at `(r (2k-1)) mod 4N`.
pub(crate) struct CosTable {
    n: usize,
    table: Vec<f64>,
}

impl CosTable {
    pub(crate) fn new(n: usize) -> Self {
        let table = (0..4 * n)
            .map(|j| (j as f64 * PI / (2 * n) as f64).cos())
            .collect();
        Self { n, table }
    }

    /// `p_r(x_k^N)` for 1-based `k`.
    #[inline]
    pub(crate) fn p(&self, r: usize, k: usize) -> f64 {
        let j = (r * (2 * k - 1)) % (4 * self.n);
        crate::cheb::p_scale(r) * self.table[j]
    }
}

/// Dense O(N^2) reference for [`dct`].
pub fn dct_dense(v: &[f64]) -> Result<Vec<f64>> {
    non_empty(v)?;
    let n = v.len();
    let table = CosTable::new(n);
    let s = (PI / n as f64).sqrt();
    Ok((0..n)
        .map(|r| s * (1..=n).map(|k| v[k - 1] * table.p(r, k)).sum::<f64>())
        .collect())
}

/// Dense O(N^2) reference for [`idct`].
pub fn idct_dense(v: &[f64]) -> Result<Vec<f64>> {
    non_empty(v)?;
    let n = v.len();
    let table = CosTable::new(n);
    let s = (PI / n as f64).sqrt();
    Ok((1..=n)
        .map(|k| s * (0..n).map(|r| v[r] * table.p(r, k)).sum::<f64>())
        .collect())
}

/// The `N x N` matrix of [`dct`], rows indexed by degree.
pub fn dct_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(VpError::InvalidArgument("transform size must be positive".into()));
    }
    let table = CosTable::new(n);
    let s = (PI / n as f64).sqrt();
    Ok(DMatrix::from_fn(n, n, |r, k| s * table.p(r, k + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn random(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn constant_input_concentrates_in_first_entry() {
        let out = dct(&[1.0; 8]).unwrap();
        assert_abs_diff_eq!(out[0], 8f64.sqrt(), epsilon = 1e-14);
        for &c in &out[1..] {
            assert_abs_diff_eq!(c, 0.0, epsilon = 1e-14);
        }
        let dense = dct_dense(&[1.0; 8]).unwrap();
        assert!(max_diff(&out, &dense) < 1e-14);
    }

    #[test]
    fn impulse_inverse() {
        let out = idct(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        for c in out {
            assert_abs_diff_eq!(c, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn round_trips() {
        let v = random(27, 1);
        assert!(max_diff(&dct(&idct(&v).unwrap()).unwrap(), &v) < 1e-12);
        let v = random(81, 2);
        assert!(max_diff(&idct(&dct(&v).unwrap()).unwrap(), &v) < 1e-12);
    }

    #[test]
    fn fast_matches_dense() {
        for (n, seed) in [(1, 3), (2, 4), (243, 5), (729, 6), (1000, 7)] {
            let v = random(n, seed);
            assert!(max_diff(&dct(&v).unwrap(), &dct_dense(&v).unwrap()) < 1e-12, "dct n={n}");
            assert!(max_diff(&idct(&v).unwrap(), &idct_dense(&v).unwrap()) < 1e-12, "idct n={n}");
        }
    }

    #[test]
    fn matrix_is_orthogonal() {
        for n in [5, 64, 243] {
            let m = dct_matrix(n).unwrap();
            let dev = (&m * m.transpose() - DMatrix::<f64>::identity(n, n)).amax();
            assert!(dev < 1e-12, "n={n} dev={dev:e}");
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(dct(&[]).is_err());
        assert!(idct_dense(&[]).is_err());
        assert!(dct_matrix(0).is_err());
    }
}
