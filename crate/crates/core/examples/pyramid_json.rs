//! Writes a pyramid to JSON, reads it back, and checks the round trip is
//! bit-exact.

use std::error::Error;

use vpwave::prelude::*;
use vpwave::pyramid::{pyramid_from_json, pyramid_to_json};

fn main() -> Result<(), Box<dyn Error>> {
    let samples = ChebGrid::new(81)?.sample(|x| 1.0 / (1.0 + 25.0 * x * x));
    let d = decompose_multi(&samples, 9, 2, 0.4, MPolicy::Uniform)?;

    let text = pyramid_to_json(&d);
    let path = std::env::temp_dir().join("vpwave_pyramid_example.json");
    std::fs::write(&path, &text)?;
    let back = pyramid_from_json(&std::fs::read_to_string(&path)?)?;

    println!("wrote {} ({} bytes)", path.display(), text.len());
    println!("bit-exact round trip: {}", back == d);
    println!("{}", text.lines().take(8).collect::<Vec<_>>().join("\n"));
    Ok(())
}
