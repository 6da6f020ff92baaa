//! Running minimum of `q |q|_D ||q x||` for a rational and a quadratic surd.
//! The rational hits zero; the surd keeps a positive, shrinking minimum.
//!
//! ```text
//! cargo run --example liminf_scan
//! ```

use mixedbad::dnorm::DigitSequence;
use mixedbad::verify::{liminf_scan, scan_csv, QuadraticSurd};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seq: DigitSequence = "per:2".parse()?;
    for x in ["1/3", "surd:0,1,2,1"] {
        let x: QuadraticSurd = x.parse()?;
        println!("x = {x}");
        print!("{}", scan_csv(&liminf_scan(&x, &seq, 10_000)));
        println!();
    }
    Ok(())
}
