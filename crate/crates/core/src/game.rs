//! The Schmidt `(alpha, beta)`-game on closed rational intervals.
//!
//! Player B opens with `B_1`; then A and B alternate, A choosing
//! `A_m ⊂ B_m` with `|A_m| = alpha |B_m|` and B choosing `B_(m+1) ⊂ A_m`
//! with `|B_(m+1)| = beta |A_m|`. Lengths are checked exactly, so
//! `|B_m| R^(m-1) = |B_1|` holds as a rational identity with
//! `R = 1/(alpha beta)`.
//!
//! The engine knows nothing about the target set. Strategies supply moves
//! and verifiers read the resulting [`Transcript`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{NumError, RInterval, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::B => "B",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("{name} must lie strictly between 0 and 1, got {value}")]
    RatioRange { name: &'static str, value: Rational },
    #[error("the opening interval must have positive length, got [{0}]")]
    DegenerateStart(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("[{proposed}] is not contained in [{current}]")]
    NotNested { current: String, proposed: String },
    #[error("[{proposed}] has length {got}, expected {expected}")]
    WrongLength { proposed: String, expected: String, got: String },
}

/// Failure reported by a strategy instead of a move.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("no admissible interval at A-move {move_index}: {detail}")]
    NoValidInterval { move_index: u32, detail: String },
    #[error("avoidance invariant broken at A-move {move_index}: {witness} meets the chosen interval")]
    InvariantViolation { move_index: u32, witness: String },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("delegate {index}: {source}")]
    Delegate {
        index: usize,
        #[source]
        source: Box<StrategyError>,
    },
}

/// `alpha`, `beta` and the opening interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameParams {
    alpha: Rational,
    beta: Rational,
    b1: RInterval,
}

impl GameParams {
    pub fn new(alpha: Rational, beta: Rational, b1: RInterval) -> Result<Self, GameError> {
        for (name, value) in [("alpha", &alpha), ("beta", &beta)] {
            if !value.is_positive() || value >= &Rational::one() {
                return Err(GameError::RatioRange { name, value: value.clone() });
            }
        }
        if b1.length().is_zero() {
            return Err(GameError::DegenerateStart(b1.to_string()));
        }
        Ok(GameParams { alpha, beta, b1 })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn b1(&self) -> &RInterval {
        &self.b1
    }

    /// `R = 1/(alpha beta)`.
    pub fn r(&self) -> Rational {
        (&self.alpha * &self.beta).recip().expect("alpha, beta > 0")
    }
}

/// The alternating record `B_1, A_1, B_2, A_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    params: GameParams,
    moves: Vec<RInterval>,
}

impl GameState {
    pub fn start(params: GameParams) -> Self {
        let b1 = params.b1.clone();
        GameState { params, moves: vec![b1] }
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn moves(&self) -> &[RInterval] {
        &self.moves
    }

    pub fn current(&self) -> &RInterval {
        self.moves.last().expect("B_1 is always present")
    }

    /// The player to move next.
    pub fn turn(&self) -> Player {
        if self.moves.len() % 2 == 1 {
            Player::A
        } else {
            Player::B
        }
    }

    /// Number of A-moves made so far.
    pub fn a_moves_played(&self) -> u32 {
        (self.moves.len() / 2) as u32
    }

    /// `B_m` for `m >= 1`.
    pub fn b_move(&self, m: usize) -> Option<&RInterval> {
        self.moves.get(2 * (m.checked_sub(1)?))
    }

    /// `A_m` for `m >= 1`.
    pub fn a_move(&self, m: usize) -> Option<&RInterval> {
        self.moves.get(2 * m.checked_sub(1)? + 1)
    }

    /// Length the next move must have.
    pub fn next_length(&self) -> Rational {
        let ratio = match self.turn() {
            Player::A => &self.params.alpha,
            Player::B => &self.params.beta,
        };
        self.current().length() * ratio
    }

    /// Leftmost interval of the required length for the next move.
    pub fn leftmost_move(&self) -> RInterval {
        RInterval::with_length(self.current().lo().clone(), &self.next_length()).expect("length >= 0")
    }

    pub fn apply_move(&mut self, proposed: RInterval) -> Result<(), MoveError> {
        let current = self.current();
        if !current.contains(&proposed) {
            return Err(MoveError::NotNested {
                current: current.to_string(),
                proposed: proposed.to_string(),
            });
        }
        let expected = self.next_length();
        let got = proposed.length();
        if got != expected {
            return Err(MoveError::WrongLength {
                proposed: proposed.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
        self.moves.push(proposed);
        Ok(())
    }
}

/// A player's move rule. Implementations must be deterministic functions
/// of the state (and of any seed fixed at construction).
pub trait Strategy: Send + Sync {
    fn propose(&self, state: &GameState) -> Result<RInterval, StrategyError>;

    fn label(&self) -> String;
}

/// What went wrong during [`play`], and whose fault it was.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlayError {
    #[error("round count must be at least 1")]
    NoRounds,
    #[error("player {player} failed in round {round}: {source}")]
    Strategy {
        player: Player,
        round: u32,
        #[source]
        source: StrategyError,
    },
    #[error("player {player} made an illegal move in round {round}: {source}")]
    IllegalMove {
        player: Player,
        round: u32,
        #[source]
        source: MoveError,
    },
}

impl PlayError {
    pub fn player(&self) -> Option<Player> {
        match self {
            PlayError::NoRounds => None,
            PlayError::Strategy { player, .. } | PlayError::IllegalMove { player, .. } => Some(*player),
        }
    }
}

/// Plays `rounds` full `(A, B)` exchanges; the last interval is `B_(rounds+1)`.
pub fn play(
    params: GameParams,
    a: &dyn Strategy,
    b: &dyn Strategy,
    rounds: u32,
) -> Result<GameState, PlayError> {
    if rounds == 0 {
        return Err(PlayError::NoRounds);
    }
    let mut state = GameState::start(params);
    for round in 1..=rounds {
        for (player, strat) in [(Player::A, a), (Player::B, b)] {
            let proposed = strat
                .propose(&state)
                .map_err(|source| PlayError::Strategy { player, round, source })?;
            state
                .apply_move(proposed)
                .map_err(|source| PlayError::IllegalMove { player, round, source })?;
        }
    }
    Ok(state)
}

/// One recorded move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub player: Player,
    pub lo: String,
    pub hi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lo: String,
    pub hi: String,
}

impl IntervalRecord {
    pub fn of(i: &RInterval) -> Self {
        IntervalRecord {
            lo: i.lo().to_string(),
            hi: i.hi().to_string(),
        }
    }

    pub fn parse(&self) -> Result<RInterval, NumError> {
        RInterval::new(self.lo.parse()?, self.hi.parse()?)
    }
}

/// Target description carried by a transcript: digit sequences, their
/// weights, `j` and the constant `c`, all in literal syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRecord {
    pub seqs: Vec<String>,
    pub i: Vec<String>,
    pub j: String,
    pub c: String,
}

/// Serializable game record. For combined games the top-level target is
/// delegate 0 and `delegates` lists every delegate in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub alpha: String,
    pub beta: String,
    pub b1: String,
    pub seqs: Vec<String>,
    pub i: Vec<String>,
    pub j: String,
    pub c: String,
    pub moves: Vec<MoveRecord>,
    #[serde(rename = "final")]
    pub final_interval: IntervalRecord,
    #[serde(default)]
    pub rounds: u32,
    #[serde(default)]
    pub strategy: String,
    #[serde(default)]
    pub adversary: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delegates: Vec<TargetRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("malformed transcript JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad literal in transcript: {0}")]
    Literal(#[from] NumError),
    #[error("bad game parameters: {0}")]
    Params(#[from] GameError),
    #[error("transcript has no moves")]
    Empty,
    #[error("move {index} is attributed to {claimed} but {expected} was to move")]
    WrongPlayer { index: usize, claimed: Player, expected: Player },
    #[error("move {index} is illegal: {source}")]
    IllegalMove {
        index: usize,
        #[source]
        source: MoveError,
    },
    #[error("first move [{0}] does not match b1")]
    OpeningMismatch(String),
    #[error("recorded final interval [{recorded}] differs from the last move [{last}]")]
    FinalMismatch { recorded: String, last: String },
    #[error("recorded round count {recorded} differs from {played} A-moves")]
    RoundMismatch { recorded: u32, played: u32 },
}

impl TranscriptError {
    /// Whether the file parsed but records a game that breaks the rules.
    pub fn is_rule_violation(&self) -> bool {
        matches!(
            self,
            TranscriptError::WrongPlayer { .. }
                | TranscriptError::IllegalMove { .. }
                | TranscriptError::OpeningMismatch(_)
                | TranscriptError::FinalMismatch { .. }
                | TranscriptError::RoundMismatch { .. }
        )
    }
}

impl Transcript {
    /// Records a finished game; the target fields are taken from `target`.
    pub fn record(state: &GameState, target: &TargetRecord) -> Self {
        let p = state.params();
        let moves = state
            .moves()
            .iter()
            .enumerate()
            .map(|(k, m)| MoveRecord {
                player: if k % 2 == 0 { Player::B } else { Player::A },
                lo: m.lo().to_string(),
                hi: m.hi().to_string(),
            })
            .collect();
        Transcript {
            alpha: p.alpha().to_string(),
            beta: p.beta().to_string(),
            b1: p.b1().to_string(),
            seqs: target.seqs.clone(),
            i: target.i.clone(),
            j: target.j.clone(),
            c: target.c.clone(),
            moves,
            final_interval: IntervalRecord::of(state.current()),
            rounds: state.a_moves_played(),
            strategy: String::new(),
            adversary: String::new(),
            seed: 0,
            delegates: Vec::new(),
            annotations: Vec::new(),
        }
    }

    pub fn params(&self) -> Result<GameParams, TranscriptError> {
        Ok(GameParams::new(
            self.alpha.parse()?,
            self.beta.parse()?,
            self.b1.parse()?,
        )?)
    }

    /// Re-applies every move through validation.
    pub fn replay(&self) -> Result<GameState, TranscriptError> {
        let params = self.params()?;
        let (first, rest) = self.moves.split_first().ok_or(TranscriptError::Empty)?;
        let opening = RInterval::new(first.lo.parse()?, first.hi.parse()?)?;
        if first.player != Player::B || &opening != params.b1() {
            return Err(TranscriptError::OpeningMismatch(opening.to_string()));
        }
        let mut state = GameState::start(params);
        for (k, m) in rest.iter().enumerate() {
            let index = k + 1;
            let expected = state.turn();
            if m.player != expected {
                return Err(TranscriptError::WrongPlayer {
                    index,
                    claimed: m.player,
                    expected,
                });
            }
            let interval = RInterval::new(m.lo.parse()?, m.hi.parse()?)?;
            state
                .apply_move(interval)
                .map_err(|source| TranscriptError::IllegalMove { index, source })?;
        }
        let recorded: RInterval = self.final_interval.parse()?;
        if &recorded != state.current() {
            return Err(TranscriptError::FinalMismatch {
                recorded: recorded.to_string(),
                last: state.current().to_string(),
            });
        }
        if self.rounds != state.a_moves_played() {
            return Err(TranscriptError::RoundMismatch {
                recorded: self.rounds,
                played: state.a_moves_played(),
            });
        }
        Ok(state)
    }

    pub fn target(&self) -> TargetRecord {
        TargetRecord {
            seqs: self.seqs.clone(),
            i: self.i.clone(),
            j: self.j.clone(),
            c: self.c.clone(),
        }
    }

    /// Every target in the transcript: the delegates if present, else the
    /// top-level one.
    pub fn targets(&self) -> Vec<TargetRecord> {
        if self.delegates.is_empty() {
            vec![self.target()]
        } else {
            self.delegates.clone()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("transcripts serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, TranscriptError> {
        Ok(serde_json::from_str(s)?)
    }
}

impl FromStr for Transcript {
    type Err = TranscriptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_json(s)
    }
}
