//! Lebesgue constants of the three operators stay bounded in n for fixed
//! theta.

use std::error::Error;

use vpwave::prelude::*;

fn main() -> Result<(), Box<dyn Error>> {
    println!("{:>5} {:>4} {:>10} {:>10} {:>10}", "n", "m", "lambda", "lambda~", "lambda-");
    for n in (10..=100).step_by(15) {
        let level = VpLevel::from_theta(n, 0.5)?;
        let v: Vec<f64> = [LebesgueKind::Lambda, LebesgueKind::LambdaTilde, LebesgueKind::LambdaBar]
            .into_iter()
            .map(|k| lebesgue_const(level, k, 2000).map(|r| r.value))
            .collect::<vpwave::Result<_>>()?;
        println!("{n:>5} {:>4} {:>10.6} {:>10.6} {:>10.6}", level.m(), v[0], v[1], v[2]);
    }

    let level = VpLevel::new(40, 20)?;
    println!("\nlambda(x) near x = 1 for (40, 20):");
    for x in [1.0, 0.99, 0.9, 0.5] {
        println!("  {x:5}: {:.8}", lebesgue_fn(level, LebesgueKind::Lambda, x)?);
    }
    Ok(())
}
