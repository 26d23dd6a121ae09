//! Sup-norm errors of the three VP approximants against the degree of the
//! test function's smoothness.

use std::error::Error;

use vpwave::operators::error_curve;
use vpwave::prelude::*;

fn main() -> Result<(), Box<dyn Error>> {
    let ns = [10, 20, 40, 80, 160];
    let theta = 0.5;
    for f in [FunctionSpec::Runge, FunctionSpec::Abs, FunctionSpec::Sin6Sign] {
        println!("{f}");
        for kind in [OperatorKind::FourierProj, OperatorKind::DiscreteProj, OperatorKind::VpInterp] {
            let curve = error_curve(|x| f.eval(x), kind, theta, &ns, 4000)?;
            let errs: Vec<String> = curve.points.iter().map(|p| format!("{:9.2e}", p.error)).collect();
            println!("  {:>9}: {}", kind.to_string(), errs.join(" "));
        }
    }
    Ok(())
}
