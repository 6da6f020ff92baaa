//! Player A's avoidance strategy, adversaries for player B, and the
//! round-robin combinator for intersections of targets.
//!
//! A's rule at move `n + 1`: list the dangerous rationals of band `n` whose
//! forbidden interval meets `B_(n+1)`, cut `B_(n+1)` into `2^k` equal
//! cells, and play the left end of the leftmost run of free cells long
//! enough to hold a move. Every test is exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dangerous::{ApproxParams, DangerError, DangerousRational, MultiNormParams, QRange};
use crate::exactnum::{cmp_products, Exponent, PowerProduct, RInterval, Rational};
use crate::game::{play, GameParams, GameState, PlayError, Strategy, StrategyError, TargetRecord, Transcript};

/// Finest cell partition tried is `2^MAX_CELL_BITS`.
pub const MAX_CELL_BITS: u32 = 12;

/// Granularity of the random adversary's offsets.
pub const RANDOM_STEPS: u64 = 1 << 16;

/// `1/(2|B_1|)^(1/i) * (1/R)^(1/(1+j))`, the second bound on `c` for one
/// norm weight `i`.
fn second_threshold(i: Exponent, j: Exponent, r: &Rational, len: &Rational) -> PowerProduct {
    let two_b = Rational::from_integer(2) * len;
    let one_plus_j = Exponent::ONE.checked_add(j).expect("small exponent");
    PowerProduct::new(vec![
        (two_b.recip().expect("|B_1| > 0"), i.inverse().expect("i > 0")),
        (r.recip().expect("R > 0"), one_plus_j.inverse().expect("1 + j > 0")),
    ])
}

/// The bounds `c` must stay strictly below: first `(|B_1|/(4R))^(1/j)`,
/// then one `(2 R^(i/(1+j)) |B_1|)^(-1/i)` per norm weight.
pub fn c_thresholds(
    target: &MultiNormParams,
    alpha: &Rational,
    beta: &Rational,
    b1: &RInterval,
) -> Vec<PowerProduct> {
    let r = (alpha * beta).recip().expect("alpha, beta > 0");
    let len = b1.length();
    let j = target.j();
    let first = &len / (Rational::from_integer(4) * &r);
    let mut out = vec![PowerProduct::new(vec![(first, j.inverse().expect("j > 0"))])];
    for n in target.norms() {
        out.push(second_threshold(n.exponent, j, &r, &len));
    }
    out
}

/// The smallest of [`c_thresholds`].
pub fn c_threshold_min(
    target: &MultiNormParams,
    alpha: &Rational,
    beta: &Rational,
    b1: &RInterval,
) -> PowerProduct {
    c_thresholds(target, alpha, beta, b1)
        .into_iter()
        .min_by(|a, b| a.cmp_product(b))
        .expect("at least two thresholds")
}

/// Whether `c` satisfies every constant condition strictly:
/// `c^j < |B_1|/(4R)` and `c^i * 2|B_1| * R^(i/(1+j)) < 1` for each weight.
pub fn c_is_admissible(
    target: &MultiNormParams,
    alpha: &Rational,
    beta: &Rational,
    b1: &RInterval,
    c: &Rational,
) -> bool {
    let r = (alpha * beta).recip().expect("alpha, beta > 0");
    let len = b1.length();
    let j = target.j();
    let quarter = &len / (Rational::from_integer(4) * &r);
    if cmp_products(&[(c, j)], &[(&quarter, Exponent::ONE)]) != Ordering::Less {
        return false;
    }
    let two_b = Rational::from_integer(2) * &len;
    let one = Rational::one();
    let one_plus_j = Exponent::ONE.checked_add(j).expect("small exponent");
    target.norms().iter().all(|n| {
        let e = n.exponent.checked_div(one_plus_j).expect("small exponent");
        cmp_products(&[(c, n.exponent), (&two_b, Exponent::ONE), (&r, e)], &[(&one, Exponent::ONE)])
            == Ordering::Less
    })
}

/// `2^-(t+1)` for the smallest `t` with `2^-t` admissible.
pub fn choose_c(target: &MultiNormParams, alpha: &Rational, beta: &Rational, b1: &RInterval) -> Rational {
    let mut t = 0u32;
    while !c_is_admissible(target, alpha, beta, b1, &Rational::pow2_neg(t)) {
        t += 1;
    }
    Rational::pow2_neg(t + 1)
}

/// Splits `b` into `2^k` cells and returns the left-aligned interval of
/// length `len` at the start of the leftmost run of cells none of whose
/// closures meets a listed `Delta`. Tries `k = 2, ..., MAX_CELL_BITS`.
pub fn plan_a_move(
    params: &ApproxParams,
    b: &RInterval,
    len: &Rational,
    bad: &[DangerousRational],
) -> Option<RInterval> {
    if bad.is_empty() {
        return RInterval::with_length(b.lo().clone(), len).ok();
    }
    let total = b.length();
    for k in 2..=MAX_CELL_BITS {
        let cells = 1u64 << k;
        let cell_len = &total / Rational::from_integer(cells);
        let need = (len / &cell_len).ceil();
        let need: u64 = match u64::try_from(need) {
            Ok(n) if n <= cells => n.max(1),
            _ => return None,
        };
        let mut run = 0u64;
        for idx in 0..cells {
            let lo = b.lo() + &cell_len * Rational::from_integer(idx);
            let cell = RInterval::with_length(lo, &cell_len).expect("positive cell");
            let free = !bad.iter().any(|d| params.interval_meets_delta(&d.r, d.q, &cell));
            run = if free { run + 1 } else { 0 };
            if run == need {
                let start = b.lo() + &cell_len * Rational::from_integer(idx + 1 - need);
                return RInterval::with_length(start, len).ok();
            }
        }
    }
    None
}

/// When A re-checks the full avoidance condition after its own move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecheckCadence {
    /// Re-check after every move while the horizon is at most this.
    pub every_round_below: u64,
    /// Otherwise re-check every this many A-moves (0 disables).
    pub period: u32,
}

impl Default for RecheckCadence {
    fn default() -> Self {
        RecheckCadence {
            every_round_below: 10_000,
            period: 5,
        }
    }
}

impl RecheckCadence {
    pub const NEVER: RecheckCadence = RecheckCadence {
        every_round_below: 0,
        period: 0,
    };

    fn due(&self, horizon: u64, move_index: u32) -> bool {
        horizon <= self.every_round_below || (self.period > 0 && move_index.is_multiple_of(self.period))
    }
}

/// Player A's avoidance strategy for one target.
#[derive(Clone, Debug)]
pub struct PaperA {
    target: MultiNormParams,
    c: Option<Rational>,
    recheck: RecheckCadence,
    allow_wide_alpha: bool,
}

impl PaperA {
    /// `c` is recomputed from `B_1` with [`choose_c`] at each move.
    pub fn new(target: MultiNormParams) -> Self {
        PaperA {
            target,
            c: None,
            recheck: RecheckCadence::default(),
            allow_wide_alpha: false,
        }
    }

    pub fn with_c(mut self, c: Rational) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_recheck(mut self, recheck: RecheckCadence) -> Self {
        self.recheck = recheck;
        self
    }

    /// Accept `alpha > 1/4`; the cell sweep then simply reports failure
    /// when no run is long enough.
    pub fn allow_wide_alpha(mut self) -> Self {
        self.allow_wide_alpha = true;
        self
    }

    pub fn target(&self) -> &MultiNormParams {
        &self.target
    }

    /// The constant used in a game with these parameters.
    pub fn constant(&self, game: &GameParams) -> Rational {
        self.c
            .clone()
            .unwrap_or_else(|| choose_c(&self.target, game.alpha(), game.beta(), game.b1()))
    }

    pub fn approx_params(&self, game: &GameParams) -> ApproxParams {
        self.target.with_c(self.constant(game)).expect("c > 0")
    }
}

fn danger_err(e: DangerError) -> StrategyError {
    StrategyError::Unsupported(e.to_string())
}

/// The move A makes at `state`, given the full parameter set.
pub fn a_winning_move(state: &GameState, params: &ApproxParams) -> Result<RInterval, StrategyError> {
    let n = state.a_moves_played();
    let len = state.next_length();
    let b = state.current();
    if n == 0 {
        return Ok(state.leftmost_move());
    }
    let r = state.params().r();
    let bad = params.enumerate_dangerous_in(&r, n, b).map_err(danger_err)?;
    plan_a_move(params, b, &len, &bad).ok_or_else(|| StrategyError::NoValidInterval {
        move_index: n + 1,
        detail: format!(
            "B = {b:?}, band {n}, meeting: [{}]",
            bad.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
    })
}

/// [`a_winning_move`] for several norms. Identical code path: the
/// dangerous test already requires every norm term to be small.
pub fn multi_norm_winning_move(
    state: &GameState,
    target: &MultiNormParams,
    c: &Rational,
) -> Result<RInterval, StrategyError> {
    let params = target.with_c(c.clone()).map_err(danger_err)?;
    a_winning_move(state, &params)
}

impl Strategy for PaperA {
    fn propose(&self, state: &GameState) -> Result<RInterval, StrategyError> {
        let game = state.params();
        if !self.allow_wide_alpha && game.alpha() > &Rational::frac(1, 4) {
            return Err(StrategyError::Unsupported(format!(
                "alpha = {} exceeds 1/4",
                game.alpha()
            )));
        }
        let params = self.approx_params(game);
        let chosen = a_winning_move(state, &params)?;
        let move_index = state.a_moves_played() + 1;
        let horizon = params.horizon(&game.r(), move_index).map_err(danger_err)?;
        if self.recheck.due(horizon, move_index) {
            if let Some(w) = params.any_dangerous_meeting(QRange::up_to(horizon), &chosen) {
                return Err(StrategyError::InvariantViolation {
                    move_index,
                    witness: w.to_string(),
                });
            }
        }
        Ok(chosen)
    }

    fn label(&self) -> String {
        "paper-a".into()
    }
}

/// B's behaviours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversaryKind {
    Leftmost,
    Rightmost,
    Random(u64),
    Greedy,
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryKind::Leftmost => write!(f, "adv:leftmost"),
            AdversaryKind::Rightmost => write!(f, "adv:rightmost"),
            AdversaryKind::Random(s) => write!(f, "adv:random:{s}"),
            AdversaryKind::Greedy => write!(f, "adv:greedy"),
        }
    }
}

impl FromStr for AdversaryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.strip_prefix("adv:").unwrap_or(s);
        match body {
            "leftmost" => Ok(AdversaryKind::Leftmost),
            "rightmost" => Ok(AdversaryKind::Rightmost),
            "greedy" => Ok(AdversaryKind::Greedy),
            _ => body
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(AdversaryKind::Random)
                .ok_or_else(|| format!("unknown adversary {s:?}")),
        }
    }
}

/// A strategy for player B.
#[derive(Clone, Debug)]
pub struct Adversary {
    kind: AdversaryKind,
    targets: Vec<MultiNormParams>,
}

/// Builds B's strategy. `targets` is only consulted by the greedy kind.
pub fn adversary_b(kind: AdversaryKind, targets: Vec<MultiNormParams>) -> Adversary {
    Adversary { kind, targets }
}

impl Adversary {
    fn start_at(state: &GameState, start: Rational) -> RInterval {
        RInterval::with_length(start, &state.next_length()).expect("length >= 0")
    }

    /// Start point for a move of length `len` centred as near `x` as
    /// possible inside `a`.
    fn clamp_centre(a: &RInterval, len: &Rational, x: &Rational) -> Rational {
        let half = len / Rational::from_integer(2);
        let start = x - &half;
        let max_start = a.hi() - len;
        start.max(a.lo().clone()).min(max_start)
    }

    fn greedy_target(&self, state: &GameState) -> Option<Rational> {
        let game = state.params();
        let a = state.current();
        let mid = a.midpoint();
        let n = state.a_moves_played();
        let r = game.r();
        let mut best: Option<(Rational, Rational)> = None;
        for target in &self.targets {
            let c = choose_c(target, game.alpha(), game.beta(), game.b1());
            let params = target.with_c(c).ok()?;
            for band in [n, n + 1] {
                let Ok(found) = params.enumerate_dangerous_in(&r, band.max(1), a) else {
                    continue;
                };
                for d in found {
                    let v = d.value();
                    let dist = (&v - &mid).abs();
                    if best.as_ref().is_none_or(|(bd, _)| &dist < bd) {
                        best = Some((dist, v));
                    }
                }
            }
        }
        best.map(|(_, v)| v)
    }
}

impl Strategy for Adversary {
    fn propose(&self, state: &GameState) -> Result<RInterval, StrategyError> {
        let a = state.current();
        let len = state.next_length();
        let slack = a.length() - &len;
        let start = match self.kind {
            AdversaryKind::Leftmost => a.lo().clone(),
            AdversaryKind::Rightmost => a.lo() + &slack,
            AdversaryKind::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(state.moves().len() as u64);
                let k = rng.gen_range(0..=RANDOM_STEPS);
                a.lo() + slack * Rational::new(k, RANDOM_STEPS).expect("nonzero")
            }
            AdversaryKind::Greedy => {
                let x = self.greedy_target(state).unwrap_or_else(|| a.midpoint());
                Self::clamp_centre(a, &len, &x)
            }
        };
        Ok(Self::start_at(state, start))
    }

    fn label(&self) -> String {
        self.kind.to_string()
    }
}

/// Round-robin delegation: delegate `t` of `k` makes A-moves
/// `t, t + k, t + 2k, ...` (0-based).
pub struct Combined {
    delegates: Vec<Box<dyn Strategy>>,
}

pub fn intersect_strategies(delegates: Vec<Box<dyn Strategy>>) -> Combined {
    assert!(!delegates.is_empty(), "at least one delegate");
    Combined { delegates }
}

/// The game as delegate `t` of `k` sees it: `alpha` unchanged,
/// `beta_eff = beta (alpha beta)^(k-1)`, opening interval `B_(t+1)`, and
/// only its own A-moves and the B-moves handed to it.
pub fn delegate_view(state: &GameState, t: usize, k: usize) -> Option<GameState> {
    let game = state.params();
    let ab = game.alpha() * game.beta();
    let beta_eff = game.beta() * ab.pow(k as u32 - 1);
    let moves = state.moves();
    let b1 = moves.get(2 * t)?.clone();
    let params = GameParams::new(game.alpha().clone(), beta_eff, b1).ok()?;
    let mut view = GameState::start(params);
    let mut idx = 2 * t + 1;
    while idx < moves.len() {
        view.apply_move(moves[idx].clone()).ok()?;
        let next_b = idx + 1 + 2 * (k - 1);
        if next_b >= moves.len() {
            break;
        }
        view.apply_move(moves[next_b].clone()).ok()?;
        idx = next_b + 1;
    }
    Some(view)
}

impl Strategy for Combined {
    fn propose(&self, state: &GameState) -> Result<RInterval, StrategyError> {
        let k = self.delegates.len();
        let t = state.a_moves_played() as usize % k;
        let view = delegate_view(state, t, k).ok_or_else(|| StrategyError::Delegate {
            index: t,
            source: Box::new(StrategyError::Unsupported("inconsistent delegate view".into())),
        })?;
        self.delegates[t].propose(&view).map_err(|e| StrategyError::Delegate {
            index: t,
            source: Box::new(e),
        })
    }

    fn label(&self) -> String {
        format!(
            "combine:{}",
            self.delegates.iter().map(|d| d.label()).collect::<Vec<_>>().join("+")
        )
    }
}

/// The transcript description of a target with constant `c`.
pub fn target_record(target: &MultiNormParams, c: &Rational) -> TargetRecord {
    TargetRecord {
        seqs: target.norms().iter().map(|n| n.seq.to_string()).collect(),
        i: target.norms().iter().map(|n| n.exponent.to_string()).collect(),
        j: target.j().to_string(),
        c: c.to_string(),
    }
}

/// Plays `delegates` (round-robin when there are several) against `kind`
/// for `rounds` rounds and records the transcript. The adversary sees
/// every delegate's target; `seed` is recorded as given.
pub fn play_recorded(
    game: GameParams,
    delegates: Vec<PaperA>,
    kind: AdversaryKind,
    seed: u64,
    rounds: u32,
) -> Result<Transcript, PlayError> {
    assert!(!delegates.is_empty(), "at least one delegate");
    let combined = delegates.len() > 1;
    let a: Box<dyn Strategy> = if combined {
        Box::new(intersect_strategies(
            delegates.iter().cloned().map(|d| Box::new(d) as Box<dyn Strategy>).collect(),
        ))
    } else {
        Box::new(delegates[0].clone())
    };
    let b = adversary_b(kind, delegates.iter().map(|d| d.target().clone()).collect());
    let state = play(game, a.as_ref(), &b, rounds)?;
    let k = delegates.len();
    let records: Vec<TargetRecord> = delegates
        .iter()
        .enumerate()
        .map(|(t, d)| {
            let view = delegate_view(&state, t, k).expect("every delegate moved");
            target_record(d.target(), &d.constant(view.params()))
        })
        .collect();
    let mut transcript = Transcript::record(&state, &records[0]);
    transcript.strategy = a.label();
    transcript.adversary = b.label();
    transcript.seed = seed;
    if combined {
        transcript.delegates = records;
    }
    Ok(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnorm::DigitSequence;
    use crate::game::play;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn iv(s: &str) -> RInterval {
        s.parse().unwrap()
    }

    fn single(i: &str, j: &str, seq: &str) -> MultiNormParams {
        MultiNormParams::single(&q(i), &q(j), seq.parse::<DigitSequence>().unwrap()).unwrap()
    }

    #[test]
    fn choose_c_examples() {
        let t = single("1/2", "1/2", "per:2");
        let th: Vec<_> = c_thresholds(&t, &q("1/4"), &q("1/2"), &iv("0,1"))
            .iter()
            .map(|p| p.to_rational().unwrap())
            .collect();
        assert_eq!(th, [q("1/1024"), q("1/16")]);
        assert_eq!(choose_c(&t, &q("1/4"), &q("1/2"), &iv("0,1")), q("1/4096"));

        let th: Vec<_> = c_thresholds(&t, &q("1/4"), &q("1/2"), &iv("0,2"))
            .iter()
            .map(|p| p.to_rational().unwrap())
            .collect();
        assert_eq!(th, [q("1/256"), q("1/64")]);
        assert_eq!(choose_c(&t, &q("1/4"), &q("1/2"), &iv("0,2")), q("1/1024"));
    }

    #[test]
    fn chosen_c_is_admissible_and_threshold_is_tight() {
        let t = single("1/2", "1/2", "per:2");
        let (a, b, b1) = (q("1/4"), q("1/2"), iv("0,1"));
        assert!(c_is_admissible(&t, &a, &b, &b1, &q("1/4096")));
        assert!(c_is_admissible(&t, &a, &b, &b1, &q("1/2048")));
        assert!(!c_is_admissible(&t, &a, &b, &b1, &q("1/1024")));
        for (i, j) in [("1/3", "2/3"), ("2/3", "1/3")] {
            for beta in ["1/2", "2/3", "9/10"] {
                let t = single(i, j, "per:3");
                let c = choose_c(&t, &a, &q(beta), &b1);
                assert!(c_is_admissible(&t, &a, &q(beta), &b1, &c));
                let min = c_threshold_min(&t, &a, &q(beta), &b1);
                assert_eq!(min.cmp_rational(&c), Ordering::Greater);
            }
        }
    }

    #[test]
    fn cell_sweep_examples() {
        let p = single("1/2", "1/2", "per:2").with_c(q("1/4096")).unwrap();
        let b = iv("0,1");
        let quarter = q("1/4");
        assert_eq!(plan_a_move(&p, &b, &quarter, &[]), Some(iv("0,1/4")));

        // a Delta at the midpoint with |Delta| < |B|/2 leaves the first quarter
        let mid = DangerousRational::new(1.into(), 2);
        let p_mid = single("1/2", "1/2", "per:2").with_c(q("1/16")).unwrap();
        let got = plan_a_move(&p_mid, &b, &quarter, std::slice::from_ref(&mid)).unwrap();
        assert_eq!(got, iv("0,1/4"));
        assert!(!p_mid.interval_meets_delta(&mid.r, mid.q, &got));

        // a Delta covering the first three quarters: half-width 5/16 at 3/8
        // needs c^(1/2) / 8^(3/2) = 5/16, i.e. c = 25 * 8^3 / 256 = 50
        let wide = DangerousRational::new(3.into(), 8);
        let p_wide = single("1/2", "1/2", "per:2").with_c(q("50")).unwrap();
        let got = plan_a_move(&p_wide, &b, &quarter, std::slice::from_ref(&wide)).unwrap();
        assert_eq!(got, iv("3/4,1"));
        assert!(p_wide.interval_meets_delta(&wide.r, wide.q, &iv("1/2,3/4")));
        assert!(!p_wide.interval_meets_delta(&wide.r, wide.q, &iv("3/4,1")));
    }

    #[test]
    fn adversary_examples() {
        let game = GameParams::new(q("1/4"), q("1/2"), iv("0,1")).unwrap();
        let mut s = GameState::start(game);
        s.apply_move(iv("0,1/4")).unwrap();
        let left = adversary_b(AdversaryKind::Leftmost, vec![]);
        let right = adversary_b(AdversaryKind::Rightmost, vec![]);
        assert_eq!(left.propose(&s).unwrap(), iv("0,1/8"));
        assert_eq!(right.propose(&s).unwrap(), iv("1/8,1/4"));
        let rnd = adversary_b(AdversaryKind::Random(9), vec![]);
        let m = rnd.propose(&s).unwrap();
        assert_eq!(m, rnd.propose(&s).unwrap());
        assert!(s.clone().apply_move(m).is_ok());
        for s in ["adv:leftmost", "adv:rightmost", "adv:greedy", "adv:random:42"] {
            assert_eq!(s.parse::<AdversaryKind>().unwrap().to_string(), s);
        }
        assert!("adv:random:x".parse::<AdversaryKind>().is_err());
    }

    #[test]
    fn greedy_aims_at_dangerous_rationals() {
        // c = 1/4: q = 8 is dangerous, 1/8 lies in A = [0, 1/4]
        let t = single("1/2", "1/2", "per:2");
        let game = GameParams::new(q("1/4"), q("1/2"), iv("0,1")).unwrap();
        let mut s = GameState::start(game);
        s.apply_move(iv("0,1/4")).unwrap();
        let p = t.with_c(q("1/4")).unwrap();
        let found = p.enumerate_dangerous_in(&q("8"), 2, &iv("0,1/4")).unwrap();
        assert!(found.iter().any(|d| d.value() == q("1/8")));
        let greedy = adversary_b(AdversaryKind::Greedy, vec![t]);
        let m = greedy.propose(&s).unwrap();
        assert!(s.clone().apply_move(m).is_ok());
    }

    #[test]
    fn paper_a_rejects_wide_alpha() {
        let t = single("1/2", "1/2", "per:2");
        let game = GameParams::new(q("1/3"), q("1/2"), iv("0,1")).unwrap();
        let s = GameState::start(game);
        assert!(matches!(PaperA::new(t).propose(&s), Err(StrategyError::Unsupported(_))));
    }

    #[test]
    fn paper_a_wins_short_games() {
        let t = single("1/2", "1/2", "per:2");
        let a = PaperA::new(t.clone());
        for kind in [AdversaryKind::Leftmost, AdversaryKind::Greedy, AdversaryKind::Random(3)] {
            let game = GameParams::new(q("1/4"), q("1/2"), iv("0,1")).unwrap();
            let b = adversary_b(kind, vec![t.clone()]);
            let s = play(game.clone(), &a, &b, 8).unwrap();
            let p = a.approx_params(&game);
            let h = p.horizon(&game.r(), 8).unwrap();
            assert!(p.dangerous_meeting(QRange::up_to(h), s.current()).is_empty());
        }
    }

    #[test]
    fn delegate_views() {
        let t = single("1/2", "1/2", "per:2");
        let game = GameParams::new(q("1/4"), q("1/2"), iv("0,1")).unwrap();
        let left = adversary_b(AdversaryKind::Leftmost, vec![]);
        let one = intersect_strategies(vec![Box::new(PaperA::new(t.clone()))]);
        let s1 = play(game.clone(), &one, &left, 6).unwrap();
        let s0 = play(game.clone(), &PaperA::new(t.clone()), &left, 6).unwrap();
        assert_eq!(s1, s0);

        let two = intersect_strategies(vec![Box::new(PaperA::new(t.clone())), Box::new(PaperA::new(t))]);
        let s = play(game, &two, &left, 6).unwrap();
        for d in 0..2 {
            let v = delegate_view(&s, d, 2).unwrap();
            assert_eq!(v.params().beta(), &q("1/16"));
            assert_eq!(v.params().r(), q("64"));
            assert_eq!(v.a_moves_played(), 3);
        }
    }
}
