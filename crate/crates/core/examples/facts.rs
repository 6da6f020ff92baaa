//! Per-band structure of the dangerous rationals: each `Delta` is short,
//! denominators in a band share large factors, and members are spread out.
//!
//! ```text
//! cargo run --release --example facts
//! ```

use mixedbad::dangerous::ApproxParams;
use mixedbad::game::GameParams;
use mixedbad::strategy::choose_c;
use mixedbad::dangerous::MultiNormParams;
use mixedbad::exactnum::Rational;
use mixedbad::verify::facts_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let game = GameParams::new("1/4".parse()?, "1/2".parse()?, "0,1".parse()?)?;
    let target = MultiNormParams::single(&Rational::frac(1, 2), &Rational::frac(1, 2), "per:2".parse()?)?;
    let c = choose_c(&target, game.alpha(), game.beta(), game.b1());
    let params: ApproxParams = target.with_c(c)?;

    let report = facts_check(&params, &game, 16, 100_000);
    println!("c = {}, R = {}", report.c, report.r);
    for b in &report.bands {
        println!(
            "band {:>2}  q in [{}, {}]  dangerous q: {:<4} members: {:<3} min gcd: {:<6} min gap: {}",
            b.band,
            b.q_lo,
            b.q_hi,
            b.dangerous_qs,
            b.members,
            b.min_gcd.map_or("-".into(), |g| g.to_string()),
            b.min_gap.as_deref().unwrap_or("-"),
        );
    }
    println!("skipped bands: {:?}", report.skipped);
    println!("{}", if report.passed() { "all facts hold" } else { "FAILED" });

    // too large a constant breaks the first fact
    let loose = ApproxParams::new(&Rational::frac(1, 2), &Rational::frac(1, 2), Rational::one(), "per:2".parse()?)?;
    let report = facts_check(&loose, &game, 6, 1000);
    println!("with c = 1: {} fact-1 failures", report.fact1_failures());
    Ok(())
}
