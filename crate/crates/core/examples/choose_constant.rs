//! The admissibility thresholds for `c` and the constant A actually uses,
//! across the exponent splits and a few digit sequences.
//!
//! ```text
//! cargo run --example choose_constant
//! ```

use mixedbad::dangerous::MultiNormParams;
use mixedbad::exactnum::{RInterval, Rational};
use mixedbad::strategy::{c_is_admissible, c_thresholds, choose_c};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha: Rational = "1/4".parse()?;
    let b1: RInterval = "0,1".parse()?;
    for beta in ["1/2", "1/4"] {
        let beta: Rational = beta.parse()?;
        for (i, j) in [("1/3", "2/3"), ("1/2", "1/2"), ("2/3", "1/3")] {
            let target = MultiNormParams::single(&i.parse()?, &j.parse()?, "per:2".parse()?)?;
            let bounds: Vec<String> = c_thresholds(&target, &alpha, &beta, &b1)
                .iter()
                .map(|t| t.to_string())
                .collect();
            let c = choose_c(&target, &alpha, &beta, &b1);
            // choose_c halves the first admissible power of two
            let doubled = &c * Rational::from_integer(2);
            assert!(c_is_admissible(&target, &alpha, &beta, &b1, &doubled));
            println!("beta={beta} i={i} j={j}: c < {} -> c = {c}", bounds.join(" and "));
        }
    }
    Ok(())
}
