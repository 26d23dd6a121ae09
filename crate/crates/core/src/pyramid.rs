//! Multilevel pyramids with scale factor 3, detail thresholding and the
//! JSON exchange format.

use serde::{Deserialize, Serialize};

use crate::bases::{DetailCoeffs, ScalingCoeffs};
use crate::cheb::ChebExpansion;
use crate::coeffs::VpLevel;
use crate::error::{Result, VpError};
use crate::mra::{decompose_step, reconstruct_step};
use crate::operators::discrete_proj;

/// How the VP parameter `m` is chosen along the chain `n_l = 3^l n_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MPolicy {
    /// `m = floor(theta n_0)` at every level. The pyramid is then an exact
    /// splitting of one function: `f_top = f_0 + g_0 + ... + g_{L-1}`.
    #[default]
    Uniform,
    /// `m_l = floor(theta n_l)`. Each step is exact on coefficients, but the
    /// scaling space changes between steps.
    PerLevel,
}

impl MPolicy {
    pub fn m_for(&self, theta: f64, n0: usize, n: usize) -> usize {
        let base = match self {
            Self::Uniform => n0,
            Self::PerLevel => n,
        };
        (theta * base as f64).floor() as usize
    }
}

fn pow3(levels: usize) -> Result<usize> {
    3usize
        .checked_pow(levels as u32)
        .ok_or_else(|| VpError::InvalidArgument(format!("{levels} levels overflow")))
}

/// Levels `(n_l, m_l)`, `l = 0..L`, of the detail spaces of a pyramid, and
/// the top scaling level.
pub fn level_chain(n0: usize, levels: usize, theta: f64, policy: MPolicy) -> Result<(Vec<VpLevel>, VpLevel)> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(VpError::InvalidArgument(format!("theta must lie in (0, 1), got {theta}")));
    }
    let chain = (0..levels)
        .map(|l| {
            let n = n0 * pow3(l)?;
            VpLevel::new(n, policy.m_for(theta, n0, n))
        })
        .collect::<Result<Vec<_>>>()?;
    let top = match chain.last() {
        Some(l) => l.finer(),
        None => VpLevel::new(n0, policy.m_for(theta, n0, n0))?,
    };
    Ok((chain, top))
}

/// `f_top = f_{n_0} + g_{n_0} + g_{3 n_0} + ... `, stored as the base
/// scaling coefficients and the details from coarse to fine.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiDecomposition {
    pub theta: f64,
    pub n0: usize,
    pub policy: MPolicy,
    pub base: ScalingCoeffs,
    pub details: Vec<DetailCoeffs>,
}

impl MultiDecomposition {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn top_level(&self) -> VpLevel {
        self.details.last().map_or(self.base.level, |d| d.level.finer())
    }

    pub fn energy(&self) -> f64 {
        self.base.energy() + self.details.iter().map(DetailCoeffs::energy).sum::<f64>()
    }

    pub fn detail_count(&self) -> usize {
        self.details.iter().map(|d| d.b.len()).sum()
    }

    /// Chebyshev expansions of `f_{n_0}` and each `g_{n_l}`.
    pub fn parts(&self) -> (ChebExpansion, Vec<ChebExpansion>) {
        (
            self.base.to_cheb(),
            self.details.iter().map(DetailCoeffs::to_cheb).collect(),
        )
    }

    /// Sum of all parts as one expansion.
    pub fn synthesis(&self) -> ChebExpansion {
        let (base, details) = self.parts();
        details.iter().fold(base, |acc, g| acc.add(g))
    }

    /// Checks that levels triple from `n0` and that `m` follows the policy
    /// between consecutive levels.
    pub fn validate(&self) -> Result<()> {
        let chain_err = |msg: String| Err(VpError::LevelChain(msg));
        if self.base.level.n() != self.n0 {
            return chain_err(format!("base resolution {} differs from n0 = {}", self.base.level.n(), self.n0));
        }
        let mut n = self.n0;
        for (l, d) in self.details.iter().enumerate() {
            if d.level.n() != n {
                return chain_err(format!("detail {l} has resolution {}, expected {n}", d.level.n()));
            }
            n *= 3;
        }
        if let Some(first) = self.details.first() {
            if first.level.m() != self.base.level.m() {
                return chain_err(format!(
                    "base m = {} differs from first detail m = {}",
                    self.base.level.m(),
                    first.level.m()
                ));
            }
        }
        if self.policy == MPolicy::Uniform {
            let m = self.base.level.m();
            if let Some(d) = self.details.iter().find(|d| d.level.m() != m) {
                return chain_err(format!("uniform policy but detail at n = {} has m = {}", d.level.n(), d.level.m()));
            }
        }
        Ok(())
    }
}

/// Projects samples at `X_{n_0 3^L}` with the discrete projection and splits
/// the result into `L` detail levels.
pub fn decompose_multi(
    samples: &[f64],
    n0: usize,
    levels: usize,
    theta: f64,
    policy: MPolicy,
) -> Result<MultiDecomposition> {
    let (_, top) = level_chain(n0, levels, theta, policy)?;
    if samples.len() != top.n() {
        return Err(VpError::InvalidArgument(format!(
            "{} samples do not match n0 3^L = {}",
            samples.len(),
            top.n()
        )));
    }
    decompose_coeffs(&discrete_proj(samples, top)?, n0, levels, theta, policy)
}

/// Splits scaling coefficients at the top level of the chain.
pub fn decompose_coeffs(
    top: &ScalingCoeffs,
    n0: usize,
    levels: usize,
    theta: f64,
    policy: MPolicy,
) -> Result<MultiDecomposition> {
    let (chain, top_level) = level_chain(n0, levels, theta, policy)?;
    if top.level != top_level {
        return Err(VpError::LevelChain(format!(
            "coefficients at {:?}, chain expects {:?}",
            top.level, top_level
        )));
    }
    let mut a = top.clone();
    let mut details = Vec::with_capacity(levels);
    for level in chain.iter().rev() {
        a.level = level.finer();
        let (coarse, detail) = decompose_step(&a)?;
        details.push(detail);
        a = coarse;
    }
    details.reverse();
    Ok(MultiDecomposition { theta, n0, policy, base: a, details })
}

/// Inverse of the pyramid stage of [`decompose_multi`].
pub fn reconstruct_multi(d: &MultiDecomposition) -> Result<ScalingCoeffs> {
    d.validate()?;
    let mut a = d.base.clone();
    for detail in &d.details {
        a.level = detail.level;
        a = reconstruct_step(&a, detail)?;
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdRule {
    /// Zero every detail coefficient with `|b| < tau`.
    Hard(f64),
    /// Keep the largest `ceil(fraction * count)` detail coefficients.
    KeepTop(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub retained: usize,
    pub total: usize,
    pub energy_retained: f64,
    pub energy_total: f64,
}

/// Applies a thresholding rule to the detail coefficients; the base is left
/// untouched. Ties in [`ThresholdRule::KeepTop`] go to the coarser, earlier
/// coefficient.
pub fn threshold(d: &MultiDecomposition, rule: ThresholdRule) -> Result<(MultiDecomposition, ThresholdReport)> {
    let total = d.detail_count();
    let keep: Box<dyn Fn(usize, f64) -> bool> = match rule {
        ThresholdRule::Hard(tau) => {
            if !(tau >= 0.0) {
                return Err(VpError::InvalidArgument(format!("threshold must be >= 0, got {tau}")));
            }
            Box::new(move |_, b: f64| b.abs() >= tau)
        }
        ThresholdRule::KeepTop(fraction) => {
            if !(fraction > 0.0 && fraction <= 1.0) {
                return Err(VpError::InvalidArgument(format!(
                    "fraction must lie in (0, 1], got {fraction}"
                )));
            }
            let count = ((fraction * total as f64).ceil() as usize).min(total);
            let flat: Vec<f64> = d.details.iter().flat_map(|x| x.b.iter().copied()).collect();
            let mut order: Vec<usize> = (0..total).collect();
            order.sort_by(|&i, &j| flat[j].abs().total_cmp(&flat[i].abs()).then(i.cmp(&j)));
            let mut mask = vec![false; total];
            for &i in &order[..count] {
                mask[i] = true;
            }
            Box::new(move |i, _| mask[i])
        }
    };
    let mut out = d.clone();
    let mut idx = 0;
    let (mut retained, mut energy_retained) = (0, 0.0);
    for detail in &mut out.details {
        for b in &mut detail.b {
            if keep(idx, *b) {
                retained += 1;
                energy_retained += *b * *b;
            } else {
                *b = 0.0;
            }
            idx += 1;
        }
    }
    let base_energy = d.base.energy();
    Ok((
        out,
        ThresholdReport {
            retained,
            total,
            energy_retained: base_energy + energy_retained,
            energy_total: d.energy(),
        },
    ))
}

#[derive(Serialize, Deserialize)]
struct DetailDoc {
    n: usize,
    m: usize,
    b: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PyramidDoc {
    theta: String,
    n0: usize,
    #[serde(rename = "L")]
    levels: usize,
    m0: usize,
    policy: MPolicy,
    base: Vec<String>,
    details: Vec<DetailDoc>,
}

fn fmt_reals(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| format!("{x:?}")).collect()
}

fn parse_reals(v: &[String]) -> Result<Vec<f64>> {
    v.iter()
        .map(|s| s.parse::<f64>().map_err(|_| VpError::Malformed(format!("not a real number: {s:?}"))))
        .collect()
}

fn malformed<E: std::fmt::Display>(e: E) -> VpError {
    VpError::Malformed(e.to_string())
}

/// Serializes a pyramid. Reals are written as shortest round-trip decimal
/// strings, so [`pyramid_from_json`] restores them bit for bit.
pub fn pyramid_to_json(d: &MultiDecomposition) -> String {
    let doc = PyramidDoc {
        theta: format!("{:?}", d.theta),
        n0: d.n0,
        levels: d.levels(),
        m0: d.base.level.m(),
        policy: d.policy,
        base: fmt_reals(&d.base.a),
        details: d
            .details
            .iter()
            .map(|x| DetailDoc { n: x.level.n(), m: x.level.m(), b: fmt_reals(&x.b) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn pyramid_from_json(text: &str) -> Result<MultiDecomposition> {
    let doc: PyramidDoc = serde_json::from_str(text).map_err(malformed)?;
    if doc.details.len() != doc.levels {
        return Err(VpError::LevelChain(format!(
            "L = {} but {} detail levels present",
            doc.levels,
            doc.details.len()
        )));
    }
    let theta: f64 = doc.theta.parse().map_err(|_| VpError::Malformed(format!("bad theta {:?}", doc.theta)))?;
    let base_level = VpLevel::new(doc.n0, doc.m0).map_err(|e| VpError::LevelChain(e.to_string()))?;
    let base = ScalingCoeffs::new(base_level, parse_reals(&doc.base)?).map_err(malformed)?;
    let details = doc
        .details
        .iter()
        .map(|x| {
            let level = VpLevel::new(x.n, x.m).map_err(|e| VpError::LevelChain(e.to_string()))?;
            DetailCoeffs::new(level, parse_reals(&x.b)?).map_err(malformed)
        })
        .collect::<Result<Vec<_>>>()?;
    let d = MultiDecomposition { theta, n0: doc.n0, policy: doc.policy, base, details };
    d.validate()?;
    Ok(d)
}
