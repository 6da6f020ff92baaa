//! One game of A's strategy against a greedy B, then a check of the final
//! interval at the horizon.
//!
//! ```text
//! cargo run --example play_game
//! ```

use mixedbad::dangerous::MultiNormParams;
use mixedbad::exactnum::Rational;
use mixedbad::game::GameParams;
use mixedbad::strategy::{play_recorded, AdversaryKind, PaperA};
use mixedbad::verify::{verify_transcript, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let game = GameParams::new("1/4".parse()?, "1/2".parse()?, "0,1".parse()?)?;
    let target = MultiNormParams::single(&Rational::frac(1, 2), &Rational::frac(1, 2), "per:2".parse()?)?;
    let transcript = play_recorded(game, vec![PaperA::new(target)], AdversaryKind::Greedy, 0, 12)?;
    println!("c = {}", transcript.c);
    for (k, m) in transcript.moves.iter().enumerate() {
        println!("{:>3} {} [{}, {}]", k + 1, m.player, m.lo, m.hi);
    }

    let report = verify_transcript(&transcript, &VerifyOptions::default())?;
    let t = &report.targets[0];
    println!(
        "horizon {}: {} candidates, {} meet the final interval; c_eff = {}",
        t.horizon,
        t.avoidance.candidates,
        t.avoidance.violation_count,
        t.c_eff.as_deref().unwrap_or("none"),
    );
    Ok(())
}
