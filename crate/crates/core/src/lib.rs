//! Polynomial multiresolution analysis on `[-1, 1]` built from de la
//! Vallée Poussin (VP) means of Chebyshev expansions.
//!
//! A level is a pair `(n, m)` with `0 < m < n`. The scaling space `V_n^m`
//! holds polynomials of degree below `n + m`, spanned by `n` interpolating
//! scaling functions at the Chebyshev nodes `X_n`. Refining `n -> 3n` keeps
//! `m` and adds the detail space `W_n^m`. Splitting and merging between
//! levels costs `O(n log n)` through fast cosine transforms.
//!
//! ```
//! use vpwave::prelude::*;
//!
//! let level = VpLevel::new(27, 9).unwrap();
//! let samples = ChebGrid::new(81).unwrap().sample(f64::sin);
//! let fine = discrete_proj(&samples, level.finer()).unwrap();
//! let (coarse, detail) = decompose_step(&fine).unwrap();
//! let back = reconstruct_step(&coarse, &detail).unwrap();
//! let dev = back.a.iter().zip(&fine.a).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
//! assert!(dev < 1e-12);
//! ```

pub mod bases;
pub mod cheb;
pub mod cli;
pub mod coeffs;
pub mod dct;
pub mod error;
pub mod functions;
pub mod mra;
pub mod operators;
pub mod pyramid;
pub mod transforms;

pub use error::{Result, VpError};

/// The types and functions most programs need.
pub mod prelude {
    pub use crate::bases::{ortho_to_values, values_to_ortho, DetailCoeffs, ScalingCoeffs};
    pub use crate::cheb::{probe_grid, sup_error, ChebExpansion, ChebGrid, YGrid};
    pub use crate::coeffs::VpLevel;
    pub use crate::error::VpError;
    pub use crate::functions::FunctionSpec;
    pub use crate::mra::{decompose_step, reconstruct_step};
    pub use crate::operators::{
        approximate, discrete_proj, fourier_proj, lebesgue_const, lebesgue_fn, vp_interp, LebesgueKind,
        OperatorKind,
    };
    pub use crate::pyramid::{decompose_multi, reconstruct_multi, MPolicy, MultiDecomposition};
}
