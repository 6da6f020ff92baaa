//! Plays a game, saves its transcript as JSON, tampers with a copy, and
//! runs the checker on both.
//!
//! ```text
//! cargo run --example verify_transcript
//! ```

use mixedbad::dangerous::MultiNormParams;
use mixedbad::exactnum::{RInterval, Rational};
use mixedbad::game::{GameParams, IntervalRecord, Transcript};
use mixedbad::strategy::{play_recorded, AdversaryKind, PaperA};
use mixedbad::verify::{verify_transcript, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let game = GameParams::new("1/4".parse()?, "1/2".parse()?, "0,1".parse()?)?;
    let target = MultiNormParams::single(&Rational::frac(1, 2), &Rational::frac(1, 2), "per:2".parse()?)?;
    let played = play_recorded(game, vec![PaperA::new(target)], AdversaryKind::Leftmost, 0, 16)?;
    let json = played.to_json();
    println!("transcript: {} bytes, {} moves", json.len(), played.moves.len());

    let honest = Transcript::from_json(&json)?;
    let opts = VerifyOptions {
        q_max: Some(1 << 40),
        ..VerifyOptions::default()
    };
    let report = verify_transcript(&honest, &opts)?;
    println!("honest: passed={} final={}", report.passed, report.final_interval);

    // keep every length but recentre the tail on 1/8192, which is dangerous
    let mut forged = honest.clone();
    let centre = Rational::frac(1, 8192);
    for m in &mut forged.moves[9..] {
        let old: RInterval = format!("{},{}", m.lo, m.hi).parse()?;
        let half = old.length() / Rational::from_integer(2);
        m.lo = (&centre - &half).to_string();
        m.hi = (&centre + &half).to_string();
    }
    let last = forged.moves.last().expect("moves");
    forged.final_interval = IntervalRecord {
        lo: last.lo.clone(),
        hi: last.hi.clone(),
    };
    let report = verify_transcript(&forged, &VerifyOptions::default())?;
    match report.witness() {
        Some((d, w)) => println!("forged: caught, witness {}/{} (delegate {d})", w.r, w.q),
        None => println!("forged: not caught"),
    }
    Ok(())
}
