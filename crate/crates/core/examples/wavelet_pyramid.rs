//! Three-level decomposition of 1728 samples of a discontinuous function.
//! Detail energy concentrates near the jumps, and the parts add back up to
//! the top-level approximation.

use std::error::Error;

use vpwave::prelude::*;

fn main() -> Result<(), Box<dyn Error>> {
    let f = FunctionSpec::Sin6Sign;
    let samples = ChebGrid::new(1728)?.sample(|x| f.eval(x));
    let d = decompose_multi(&samples, 64, 3, 0.7, MPolicy::Uniform)?;

    println!("base: n = {}, m = {}", d.base.level.n(), d.base.level.m());
    for detail in &d.details {
        let big = detail.b.iter().filter(|b| b.abs() > 1e-3).count();
        println!(
            "detail n = {:4}: energy {:.3e}, {big} of {} above 1e-3",
            detail.level.n(),
            detail.energy(),
            detail.b.len()
        );
    }

    let top = discrete_proj(&samples, d.top_level())?.to_cheb();
    let (base, details) = d.parts();
    let sum = details.iter().fold(base, |acc, g| acc.add(g));
    let dev = sup_error(|x| top.eval(x).unwrap(), |x| sum.eval(x).unwrap(), 2000)?;
    println!("max |f_top - sum of parts| = {dev:.2e}");

    let back = reconstruct_multi(&d)?;
    let coeff_dev = back.to_cheb().max_coeff_diff(&top);
    println!("reconstruction coefficient deviation = {coeff_dev:.2e}");
    Ok(())
}
