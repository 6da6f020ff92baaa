//! Several norms at once: `q` is dangerous only when every weighted norm
//! is small, so adding a norm can only shrink the dangerous set.
//!
//! ```text
//! cargo run --release --example multi_norm
//! ```

use mixedbad::dangerous::{MultiNormParams, NormTerm, QRange};
use mixedbad::exactnum::{Exponent, Rational};
use mixedbad::game::GameParams;
use mixedbad::strategy::{play_recorded, AdversaryKind, PaperA};
use mixedbad::verify::{verify_transcript, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let third = Exponent::new(1, 3)?;
    let term = |s: &str| -> Result<NormTerm, Box<dyn std::error::Error>> {
        Ok(NormTerm {
            seq: s.parse()?,
            exponent: third,
        })
    };
    let one = MultiNormParams::new(vec![term("per:2")?], Exponent::new(2, 3)?)?;
    let two = MultiNormParams::new(vec![term("per:2")?, term("per:3")?], third)?;

    let c = Rational::frac(1, 64);
    let range = QRange::up_to(1 << 20);
    let a = one.with_c(c.clone())?.dangerous_qs(range);
    let b = two.with_c(c)?.dangerous_qs(range);
    println!("dangerous q <= 2^20: {} with |.|_2 alone, {} with |.|_2 and |.|_3", a.len(), b.len());
    println!("first few with both: {:?}", &b[..b.len().min(12)]);

    let game = GameParams::new("1/4".parse()?, "1/2".parse()?, "0,1".parse()?)?;
    let transcript = play_recorded(game, vec![PaperA::new(two)], AdversaryKind::Greedy, 0, 12)?;
    let report = verify_transcript(&transcript, &VerifyOptions::default())?;
    println!("c = {}, passed = {}, final = {}", transcript.c, report.passed, report.final_interval);
    Ok(())
}
