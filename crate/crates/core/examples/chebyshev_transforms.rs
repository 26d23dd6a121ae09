//! Fast cosine transforms, the T and Sigma coefficient transforms, and
//! Gauss-Chebyshev quadrature.

use std::error::Error;

use vpwave::cheb::{gauss_cheb_quad, ChebGrid};
use vpwave::dct::{dct, dct_dense, idct};
use vpwave::prelude::*;
use vpwave::transforms::{sig_fwd, sig_inv, t_fwd, t_fwd_dense, t_inv};

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn main() -> Result<(), Box<dyn Error>> {
    let grid = ChebGrid::new(12)?;
    let samples = grid.sample(|x| (3.0 * x).exp());

    let fast = dct(&samples)?;
    println!("dct fast vs dense:   {:.2e}", max_diff(&fast, &dct_dense(&samples)?));
    println!("dct round trip:      {:.2e}", max_diff(&idct(&fast)?, &samples));

    let level = VpLevel::new(9, 4)?;
    let u = ChebGrid::new(level.n())?.sample(f64::cos);
    let t = t_fwd(&u, level)?;
    println!("T fast vs dense:     {:.2e}", max_diff(&t, &t_fwd_dense(&u, level)?));
    // T' is the transpose of T: <T u, w> = <u, T' w>
    let w = ChebGrid::new(level.n())?.sample(|x| x * x - 0.3);
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let gap = dot(&t, &w) - dot(&u, &t_inv(&w, level)?);
    println!("T adjoint gap:       {:.2e}", gap.abs());

    // values on the 2n nodes of X_{3n} that are not in X_n
    let y = YGrid::new(level.n())?;
    let v: Vec<f64> = y.nodes().iter().map(|x| x.cos()).collect();
    let s = sig_fwd(&v, level)?;
    println!("sigma round trip:    {:.2e}", max_diff(&sig_inv(&s, level)?, &v));

    // int_{-1}^{1} x^4 / sqrt(1 - x^2) dx = 3 pi / 8
    let q = gauss_cheb_quad(|x| x.powi(4), 3)?;
    println!("quadrature of x^4:   {q:.15} (3 pi / 8 = {:.15})", 3.0 * std::f64::consts::PI / 8.0);
    Ok(())
}
