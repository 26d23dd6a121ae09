//! Named test functions on [-1, 1].

use std::fmt;
use std::str::FromStr;

use crate::error::VpError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionSpec {
    /// `sin(x)`
    Sin,
    /// `sin(6x) + sign(sin(x + exp(2x)))`, with `sign(0) = 0`
    Sin6Sign,
    /// `|x|`
    Abs,
    /// `|x|^0.3`, evaluated as `exp(0.3 ln|x|)` and `0` at the origin
    Abs03,
    /// `1 / (1 + 0.25 x^2)`
    Runge,
}

impl FunctionSpec {
    pub const ALL: [FunctionSpec; 5] = [Self::Sin, Self::Sin6Sign, Self::Abs, Self::Abs03, Self::Runge];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sin => "sin",
            Self::Sin6Sign => "sin6sign",
            Self::Abs => "abs",
            Self::Abs03 => "abs03",
            Self::Runge => "runge",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Sin => x.sin(),
            Self::Sin6Sign => (6.0 * x).sin() + sign((x + (2.0 * x).exp()).sin()),
            Self::Abs => x.abs(),
            Self::Abs03 => {
                if x == 0.0 {
                    0.0
                } else {
                    (0.3 * x.abs().ln()).exp()
                }
            }
            Self::Runge => 1.0 / (1.0 + 0.25 * x * x),
        }
    }
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionSpec {
    type Err = VpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .find(|f| f.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|f| f.name()).collect();
                VpError::InvalidArgument(format!("unknown function {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_values() {
        assert_eq!(FunctionSpec::Abs03.eval(0.0), 0.0);
        assert!((FunctionSpec::Abs03.eval(-0.5) - 0.5f64.powf(0.3)).abs() < 1e-15);
        assert_eq!(FunctionSpec::Runge.eval(2.0), 0.5);
        assert_eq!(FunctionSpec::Abs.eval(-0.25), 0.25);
        assert_eq!(sign(0.0), 0.0);
        let x = 0.3f64;
        let expect = (6.0 * x).sin() + 1.0;
        assert_eq!(FunctionSpec::Sin6Sign.eval(x), expect);
    }

    #[test]
    fn names_round_trip() {
        for f in FunctionSpec::ALL {
            assert_eq!(f.name().parse::<FunctionSpec>().unwrap(), f);
        }
        assert!("cosh".parse::<FunctionSpec>().is_err());
    }
}
