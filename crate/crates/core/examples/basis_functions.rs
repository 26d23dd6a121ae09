//! Scaling functions and wavelets at one level, sampled on a few points.
//! The interpolating scaling functions are cardinal at the nodes.

use std::error::Error;

use vpwave::bases::{
    scaling_interp_expansion, scaling_ortho_expansion, wavelet_interp_expansion, wavelet_ortho_expansion,
};
use vpwave::prelude::*;

fn main() -> Result<(), Box<dyn Error>> {
    let level = VpLevel::new(13, 6)?;
    let grid = ChebGrid::new(level.n())?;

    let phi = scaling_interp_expansion(level, 4)?;
    let at_nodes: Vec<String> = grid.nodes().iter().map(|&x| Ok(format!("{:+.1e}", phi.eval(x)?))).collect::<vpwave::Result<_>>()?;
    println!("Phi_4 at the nodes: {}", at_nodes.join(" "));

    let families = [
        ("phi", scaling_interp_expansion(level, 7)?),
        ("phi~", scaling_ortho_expansion(level, 7)?),
        ("psi", wavelet_interp_expansion(level, 13)?),
        ("psi~", wavelet_ortho_expansion(level, 13)?),
    ];
    println!("{:>6} {:>7} {:>10} {:>12}", "family", "degree", "norm^2", "value at 0");
    for (name, e) in &families {
        println!("{name:>6} {:>7} {:>10.6} {:>12.6}", e.degree(), e.norm_sq(), e.eval(0.0)?);
    }
    Ok(())
}
