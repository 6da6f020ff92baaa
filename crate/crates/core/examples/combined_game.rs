//! Two targets won at once: A alternates between two delegates, each of
//! which sees a game with a smaller `beta`.
//!
//! ```text
//! cargo run --release --example combined_game
//! ```

use mixedbad::dangerous::MultiNormParams;
use mixedbad::exactnum::Rational;
use mixedbad::game::GameParams;
use mixedbad::strategy::{play_recorded, AdversaryKind, PaperA};
use mixedbad::verify::{verify_transcript, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let game = GameParams::new("1/4".parse()?, "1/2".parse()?, "0,1".parse()?)?;
    let first = MultiNormParams::single(&Rational::frac(1, 3), &Rational::frac(2, 3), "per:2".parse()?)?;
    let second = MultiNormParams::single(&Rational::frac(2, 3), &Rational::frac(1, 3), "per:3".parse()?)?;
    let delegates = vec![PaperA::new(first), PaperA::new(second)];
    let transcript = play_recorded(game, delegates, AdversaryKind::Random(5), 5, 12)?;
    println!("{} with final interval [{}, {}]", transcript.strategy, transcript.final_interval.lo, transcript.final_interval.hi);

    let report = verify_transcript(&transcript, &VerifyOptions::default())?;
    for t in &report.targets {
        println!(
            "delegate {} ({} i={} j={}): c={} R={} horizon={} passed={}",
            t.delegate,
            t.seqs.join(";"),
            t.i.join(";"),
            t.j,
            t.c,
            t.r,
            t.horizon,
            t.avoidance.passed(),
        );
    }
    Ok(())
}
