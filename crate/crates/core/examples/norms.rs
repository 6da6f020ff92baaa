//! `omega(q)`, `D_omega(q)` and `|q|_D` for a few digit sequences. A constant
//! sequence `p` gives the `p`-adic norm.
//!
//! ```text
//! cargo run --example norms
//! ```

use mixedbad::dnorm::DigitSequence;
use num_bigint::BigUint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["per:2", "per:3", "per:2,3", "pre:5|per:2"] {
        let seq: DigitSequence = spec.parse()?;
        let row: Vec<String> = [1u64, 6, 12, 36, 60, 72, 360]
            .iter()
            .map(|&q| {
                let n = seq.d_norm_u64(q).expect("q >= 1");
                format!("|{q}|={}", n.value)
            })
            .collect();
        println!("{spec:<12} {}", row.join("  "));
    }

    // arbitrary precision takes the same path
    let seq: DigitSequence = "per:2,3".parse()?;
    let q = BigUint::from(6u32).pow(40) * 7u32;
    let n = seq.d_norm(&q)?;
    println!("omega(7 * 6^40) = {}, D = {}", n.level, seq.capital_d(n.level));
    Ok(())
}
