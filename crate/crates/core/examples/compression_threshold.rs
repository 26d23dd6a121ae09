//! Keeps a fraction of the detail coefficients and reports the error of the
//! compressed approximation.

use std::error::Error;

use vpwave::prelude::*;
use vpwave::pyramid::{threshold, ThresholdRule};

fn main() -> Result<(), Box<dyn Error>> {
    let f = FunctionSpec::Abs03;
    let samples = ChebGrid::new(27 * 32)?.sample(|x| f.eval(x));
    let d = decompose_multi(&samples, 32, 3, 0.5, MPolicy::Uniform)?;
    let full = reconstruct_multi(&d)?.to_cheb();

    println!("{:>8} {:>9} {:>12} {:>12}", "keep", "retained", "energy", "sup error");
    for fraction in [1.0, 0.5, 0.2, 0.1, 0.05, 0.01] {
        let (kept, report) = threshold(&d, ThresholdRule::KeepTop(fraction))?;
        let approx = reconstruct_multi(&kept)?.to_cheb();
        let err = sup_error(|x| full.eval(x).unwrap(), |x| approx.eval(x).unwrap(), 4000)?;
        println!(
            "{fraction:>8} {:>9} {:>12.6} {err:>12.3e}",
            report.retained,
            report.energy_retained / report.energy_total
        );
    }

    let (_, hard) = threshold(&d, ThresholdRule::Hard(1e-4))?;
    println!("hard 1e-4 keeps {} of {}", hard.retained, hard.total);
    Ok(())
}
