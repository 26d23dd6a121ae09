//! Chebyshev nodes, orthonormal Chebyshev polynomials, Gauss-Chebyshev
//! quadrature and expansion evaluation on [-1, 1].
//!
//! Throughout the crate `p_r` denotes the Chebyshev polynomial of the first
//! kind normalized to unit norm under the weight `w(x) = 1/sqrt(1 - x^2)`:
//! `p_0 = 1/sqrt(pi)` and `p_r = sqrt(2/pi) cos(r arccos x)` for `r >= 1`.

use std::f64::consts::PI;

use crate::error::{check_domain, Result, VpError};

/// Default number of probe intervals used for sup-norm measurements.
pub const DEFAULT_PROBE: usize = 10_000;

/// Normalization factor of `p_r` relative to `T_r`.
#[inline]
pub fn p_scale(r: usize) -> f64 {
    if r == 0 {
        1.0 / PI.sqrt()
    } else {
        (2.0 / PI).sqrt()
    }
}

/// `cos(num * pi / den)` with the argument reduced in exact integer
/// arithmetic: modulo `2 den`, folded into `[0, pi]`, put in lowest terms and
/// reflected about `pi/2`. Equal angles give bit-identical results, the node
/// sets are exactly symmetric and `cos(pi/2)` is exactly zero.
#[inline]
pub(crate) fn cos_pi_ratio(num: u64, den: u64) -> f64 {
    let mut j = num % (2 * den);
    if j > den {
        j = 2 * den - j;
    }
    let g = gcd(j, den);
    let (j, den) = (j / g, den / g);
    if 2 * j == den {
        0.0
    } else if 2 * j > den {
        -((den - j) as f64 * PI / den as f64).cos()
    } else {
        (j as f64 * PI / den as f64).cos()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Value of `p_r` at the node `cos((2k-1) pi / (2n))`, 1-based `k`.
#[inline]
pub(crate) fn p_at_node(r: usize, k: usize, n: usize) -> f64 {
    p_scale(r) * cos_pi_ratio((r as u64) * (2 * k as u64 - 1), 2 * n as u64)
}

/// `[p_0(x), ..., p_{len-1}(x)]` by the three-term recurrence.
pub(crate) fn p_values(len: usize, x: f64) -> Vec<f64> {
    let mut t = Vec::with_capacity(len);
    if len > 0 {
        t.push(1.0);
    }
    if len > 1 {
        t.push(x);
    }
    for r in 2..len {
        let next = 2.0 * x * t[r - 1] - t[r - 2];
        t.push(next);
    }
    let s = p_scale(1);
    for (r, v) in t.iter_mut().enumerate() {
        *v *= if r == 0 { p_scale(0) } else { s };
    }
    t
}

/// The zeros `x_k = cos((2k-1) pi / (2n))`, `k = 1..n`, of the degree-`n`
/// Chebyshev polynomial, stored in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    n: usize,
    nodes: Vec<f64>,
}

impl ChebGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(VpError::InvalidArgument("grid size must be positive".into()));
        }
        let nodes = (1..=n)
            .map(|k| cos_pi_ratio(2 * k as u64 - 1, 2 * n as u64))
            .collect();
        Ok(Self { n, nodes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Node `x_k`, 1-based.
    pub fn node(&self, k: usize) -> f64 {
        self.nodes[k - 1]
    }

    /// `p_r(x_k)` evaluated through the exact trigonometric argument.
    pub fn p_at(&self, r: usize, k: usize) -> f64 {
        p_at_node(r, k, self.n)
    }

    /// Samples a function at every node, in node order.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}

/// Builds the Chebyshev grid `X_n`.
pub fn cheb_nodes(n: usize) -> Result<ChebGrid> {
    ChebGrid::new(n)
}

/// The `2n` nodes of `X_{3n}` that are not in `X_n`, interleaved so that
/// `y_{2k-1} = x_{3k-2}^{3n}` and `y_{2k} = x_{3k}^{3n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct YGrid {
    n: usize,
    nodes: Vec<f64>,
}

impl YGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(VpError::InvalidArgument("grid size must be positive".into()));
        }
        let nodes = (1..=2 * n)
            .map(|h| cos_pi_ratio(2 * Self::fine_index_of(h) as u64 - 1, 6 * n as u64))
            .collect();
        Ok(Self { n, nodes })
    }

    /// Index into `X_{3n}` (1-based) of `y_h` (1-based).
    #[inline]
    pub fn fine_index_of(h: usize) -> usize {
        let k = h.div_ceil(2);
        if h % 2 == 1 {
            3 * k - 2
        } else {
            3 * k
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Node `y_h`, 1-based.
    pub fn node(&self, h: usize) -> f64 {
        self.nodes[h - 1]
    }

    /// `p_r(y_h)` evaluated through the exact trigonometric argument.
    pub fn p_at(&self, r: usize, h: usize) -> f64 {
        p_at_node(r, Self::fine_index_of(h), 3 * self.n)
    }
}

/// Evaluates the orthonormal Chebyshev polynomial `p_r` at `x`.
pub fn eval_p(r: usize, x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(p_scale(r) * (r as f64 * x.acos()).cos())
}

/// `sum_r c_r p_r(x)`: the exchange format for every polynomial the crate
/// produces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChebExpansion {
    pub coeffs: Vec<f64>,
}

impl ChebExpansion {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        Self { coeffs: vec![0.0; len] }
    }

    /// Expansion with a single unit coefficient on `p_r`.
    pub fn unit(r: usize) -> Self {
        let mut coeffs = vec![0.0; r + 1];
        coeffs[r] = 1.0;
        Self { coeffs }
    }

    /// Nominal degree, `len - 1`. Trailing zeros are not trimmed.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Largest index whose coefficient exceeds `tol` in magnitude.
    pub fn effective_degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.abs() > tol)
    }

    pub fn coeff(&self, r: usize) -> f64 {
        self.coeffs.get(r).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    /// Clenshaw recurrence on the `T_r` basis; `x` must lie in [-1, 1].
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        match c.len() {
            0 => 0.0,
            1 => c[0] * p_scale(0),
            len => {
                let s = p_scale(1);
                let two_x = 2.0 * x;
                let (mut b1, mut b2) = (0.0, 0.0);
                for r in (1..len).rev() {
                    let b0 = c[r] * s + two_x * b1 - b2;
                    b2 = b1;
                    b1 = b0;
                }
                c[0] * p_scale(0) + x * b1 - b2
            }
        }
    }

    pub fn eval_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// Weighted L2 norm squared, exact by orthonormality of `p_r`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..len).map(|r| self.coeff(r) + other.coeff(r)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..len).map(|r| self.coeff(r) - other.coeff(r)).collect(),
        }
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| alpha * c).collect(),
        }
    }

    /// Largest coefficient difference, padding the shorter side with zeros.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|r| (self.coeff(r) - other.coeff(r)).abs())
            .fold(0.0, f64::max)
    }
}

/// Gauss-Chebyshev rule `(pi/N) sum f(x_i^N)`, exact for polynomials of
/// degree at most `2N - 1` against the Chebyshev weight.
pub fn gauss_cheb_quad<F: Fn(f64) -> f64>(f: F, n: usize) -> Result<f64> {
    let grid = ChebGrid::new(n)?;
    let mut acc = 0.0;
    for &x in grid.nodes() {
        let v = f(x);
        if !v.is_finite() {
            return Err(VpError::NonFinite(x));
        }
        acc += v;
    }
    Ok(acc * PI / n as f64)
}

/// Chebyshev-distributed probe grid `cos(j pi / M)`, `j = 0..=M`,
/// endpoints included.
pub fn probe_grid(m: usize) -> Vec<f64> {
    (0..=m).map(|j| cos_pi_ratio(j as u64, m as u64)).collect()
}

/// `max |f - g|` over the probe grid of size `m`.
pub fn sup_error<F, G>(f: F, g: G, m: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if m < 2 {
        return Err(VpError::InvalidArgument("probe grid needs M >= 2".into()));
    }
    let mut worst: f64 = 0.0;
    for x in probe_grid(m) {
        let d = (f(x) - g(x)).abs();
        if d.is_nan() {
            return Err(VpError::NonFinite(x));
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Sup distance between a closed-form function and an expansion.
pub fn sup_error_expansion<F: Fn(f64) -> f64>(f: F, e: &ChebExpansion, m: usize) -> Result<f64> {
    sup_error(f, |x| e.eval_unchecked(x), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nodes_small_cases() {
        assert_eq!(cheb_nodes(1).unwrap().nodes(), &[0.0]);
        let g = cheb_nodes(2).unwrap();
        assert_abs_diff_eq!(g.node(1), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(g.node(2), -(0.5f64.sqrt()), epsilon = 1e-15);
        assert!(cheb_nodes(0).is_err());
    }

    #[test]
    fn nodes_decreasing_and_interior() {
        let g = cheb_nodes(37).unwrap();
        for w in g.nodes().windows(2) {
            assert!(w[0] > w[1]);
        }
        assert!(g.nodes().iter().all(|x| x.abs() < 1.0));
    }

    #[test]
    fn nodes_nest_into_triple_grid() {
        for n in [4, 13, 40] {
            let coarse = cheb_nodes(n).unwrap();
            let fine = cheb_nodes(3 * n).unwrap();
            for k in 1..=n {
                assert_eq!(coarse.node(k), fine.node(3 * k - 1));
            }
        }
    }

    #[test]
    fn y_grid_is_complement() {
        let n = 7;
        let y = YGrid::new(n).unwrap();
        let fine = cheb_nodes(3 * n).unwrap();
        let coarse = cheb_nodes(n).unwrap();
        for k in 1..=n {
            assert_eq!(y.node(2 * k - 1), fine.node(3 * k - 2));
            assert_eq!(y.node(2 * k), fine.node(3 * k));
        }
        let mut all: Vec<f64> = y.nodes().iter().chain(coarse.nodes()).copied().collect();
        all.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(all, fine.nodes());
    }

    #[test]
    fn eval_p_values() {
        assert_abs_diff_eq!(eval_p(0, 0.3).unwrap(), 0.564189583547756, epsilon = 1e-15);
        assert_abs_diff_eq!(eval_p(7, 1.0).unwrap(), 0.797884560802865, epsilon = 1e-15);
        assert_abs_diff_eq!(eval_p(2, 0.0).unwrap(), -(2.0 / PI).sqrt(), epsilon = 1e-15);
        assert!(matches!(eval_p(1, 1.5), Err(VpError::Domain(_))));
    }

    #[test]
    fn node_reflection_identity() {
        for n in [5, 13, 30] {
            let g = cheb_nodes(n).unwrap();
            for r in 1..n {
                for k in 1..=n {
                    let lhs = eval_p(2 * n - r, g.node(k)).unwrap();
                    let rhs = -eval_p(r, g.node(k)).unwrap();
                    assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn exact_node_values_match_arccos_form() {
        let g = cheb_nodes(13).unwrap();
        for r in 0..40 {
            for k in 1..=13 {
                assert_abs_diff_eq!(g.p_at(r, k), eval_p(r, g.node(k)).unwrap(), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn quadrature_examples() {
        for n in [1, 5, 17] {
            assert_abs_diff_eq!(gauss_cheb_quad(|_| 1.0, n).unwrap(), PI, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(gauss_cheb_quad(|x| x * x, 2).unwrap(), PI / 2.0, epsilon = 1e-14);
        let p3 = |x: f64| eval_p(3, x).unwrap();
        assert_abs_diff_eq!(gauss_cheb_quad(|x| p3(x) * p3(x), 4).unwrap(), 1.0, epsilon = 1e-14);
        assert!(matches!(
            gauss_cheb_quad(|x| 1.0 / x, 1),
            Err(VpError::NonFinite(_))
        ));
    }

    #[test]
    fn quadrature_exactness_on_products() {
        let n = 9;
        for r in 0..2 * n {
            for s in 0..2 * n {
                if r + s > 2 * n - 1 {
                    continue;
                }
                let v = gauss_cheb_quad(|x| eval_p(r, x).unwrap() * eval_p(s, x).unwrap(), n).unwrap();
                let want = if r == s { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(v, want, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn expansion_evaluation() {
        let e = ChebExpansion::new(vec![PI.sqrt()]);
        for x in [-1.0, -0.2, 0.0, 0.7, 1.0] {
            assert_abs_diff_eq!(e.eval(x).unwrap(), 1.0, epsilon = 1e-15);
        }
        let u = ChebExpansion::unit(5);
        for j in 0..100 {
            let x = -1.0 + 2.0 * (j as f64 + 0.37) / 100.0;
            assert_abs_diff_eq!(u.eval(x).unwrap(), eval_p(5, x).unwrap(), epsilon = 1e-14);
        }
        assert!(u.eval(-1.0000001).is_err());
    }

    #[test]
    fn sup_error_examples() {
        assert_eq!(sup_error(f64::sin, f64::sin, 100).unwrap(), 0.0);
        assert_eq!(sup_error(|x| x, |_| 0.0, 7).unwrap(), 1.0);
        assert!(sup_error(|x| x, |_| 0.0, 1).is_err());
        // refinement never loses grid points, so the measured sup cannot drop
        let f = |x: f64| (3.0 * x).sin();
        let g = |x: f64| x * 0.9;
        let mut last = 0.0;
        for m in [8, 16, 32, 64, 128] {
            let e = sup_error(f, g, m).unwrap();
            assert!(e >= last);
            last = e;
        }
    }
}
