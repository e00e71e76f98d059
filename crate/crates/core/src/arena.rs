//! The backtracking game protocol over a formula.
//!
//! A play is a list of moves, each pointing at an earlier move. Move 0 is
//! the start move landing on the root. A move answers the node its pointee
//! landed on: Eloise chooses disjuncts and may point at any
//! disjunction-landing move in her current view (this is backtracking),
//! Abelard chooses conjuncts and must answer Eloise's most recent move. A
//! family indexed by functions is answered with a function payload.
//!
//! Leaf landings resolve the game: Eloise wins when play lands on `1`,
//! Abelard when Eloise lands on `0`. Abelard landing on `0` leaves the game
//! running, since Eloise may still revise an earlier choice.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::formula::{Formula, Kind};

/// A playable total function: a constant base with finitely many point
/// updates. Reads through [`FunctionHandle::get`] are logged so that an
/// opponent's use of the function can be audited for continuity; the engine
/// resolves leaf truth through [`FunctionHandle::get_quiet`], which is not.
#[derive(Clone)]
pub struct FunctionHandle {
    pub base: u64,
    pub updates: Vec<(u64, u64)>,
    log: Arc<Mutex<BTreeSet<u64>>>,
}

impl FunctionHandle {
    pub fn constant(base: u64) -> FunctionHandle {
        FunctionHandle { base, updates: Vec::new(), log: Arc::new(Mutex::new(BTreeSet::new())) }
    }

    pub fn with_updates(base: u64, updates: Vec<(u64, u64)>) -> FunctionHandle {
        FunctionHandle { base, updates, log: Arc::new(Mutex::new(BTreeSet::new())) }
    }

    /// The function extended with one more point update (later updates
    /// override earlier ones). The new handle gets a fresh query log.
    pub fn updated(&self, x: u64, y: u64) -> FunctionHandle {
        let mut updates = self.updates.clone();
        updates.push((x, y));
        FunctionHandle::with_updates(self.base, updates)
    }

    /// A logged read: the access is recorded in the query log.
    pub fn get(&self, x: u64) -> u64 {
        self.log.lock().unwrap().insert(x);
        self.get_quiet(x)
    }

    /// An unlogged read, for engine-internal truth resolution.
    pub fn get_quiet(&self, x: u64) -> u64 {
        self.updates.iter().rev().find(|(p, _)| *p == x).map(|(_, v)| *v).unwrap_or(self.base)
    }

    pub fn query_log(&self) -> BTreeSet<u64> {
        self.log.lock().unwrap().clone()
    }

    /// Structural identity, ignoring the query log.
    pub fn same_map(&self, other: &FunctionHandle) -> bool {
        self.base == other.base && self.updates == other.updates
    }
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "const {}", self.base)?;
        if !self.updates.is_empty() {
            let ups: Vec<String> =
                self.updates.iter().map(|(x, y)| format!("{x}->{y}")).collect();
            write!(f, " [{}]", ups.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    Eloise,
    Abelard,
    Start,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eloise => Player::Abelard,
            Player::Abelard => Player::Eloise,
            Player::Start => Player::Start,
        }
    }
}

/// What a move does to the node its pointee landed on.
#[derive(Clone, Debug)]
pub enum Payload {
    /// Open the start position (move 0 only).
    Start,
    /// Choose disjunct `i` of a disjunction.
    Disjunct(u64),
    /// Choose conjunct `j` of a conjunction.
    Conjunct(u64),
    /// Choose the member of a function-indexed family named by the handle.
    Function(FunctionHandle),
    /// Assert victory on a leaf the pointee landed on.
    ClaimLeaf,
}

impl Payload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Payload::Start => "start",
            Payload::Disjunct(_) => "disjunct",
            Payload::Conjunct(_) => "conjunct",
            Payload::Function(_) => "function",
            Payload::ClaimLeaf => "claim",
        }
    }

    pub fn nat_index(&self) -> Option<u64> {
        match self {
            Payload::Disjunct(i) | Payload::Conjunct(i) => Some(*i),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Move {
    pub index: usize,
    pub player: Player,
    pub payload: Payload,
    pub pointer: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Running,
    EloiseWins,
    AbelardWins,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("game is over")]
    GameOver,
    #[error("not {0:?}'s turn")]
    StaleTurn(Player),
    #[error("pointer {0} is outside the mover's view")]
    PointerOutsideView(usize),
    #[error("pointer {0} does not address a move")]
    PointerOutOfRange(usize),
    #[error("abelard must answer eloise's most recent move {expected}, not {got}")]
    AbelardMustAnswerLast { expected: usize, got: usize },
    #[error("payload kind does not match the addressed node: {0}")]
    PayloadMismatch(String),
    #[error("child index {0} is outside the family")]
    NoSuchChild(u64),
    #[error("family `{0}` is opaque and cannot be played into")]
    OpaqueFamily(String),
    #[error("claim on a leaf that is not a win for the claimant")]
    BadClaim,
}

/// A single-board game in progress.
#[derive(Clone)]
pub struct GameState {
    root: Formula,
    moves: Vec<Move>,
    /// Node each move landed on; parallel to `moves`.
    landings: Vec<Formula>,
    status: Status,
    to_move: Player,
}

impl GameState {
    pub fn new(root: Formula) -> GameState {
        let to_move = match root.kind() {
            Kind::Disj => Player::Eloise,
            Kind::Conj => Player::Abelard,
        };
        let status = match root.leaf_value() {
            Some(true) => Status::EloiseWins,
            Some(false) => Status::AbelardWins,
            None => Status::Running,
        };
        GameState {
            moves: vec![Move { index: 0, player: Player::Start, payload: Payload::Start, pointer: 0 }],
            landings: vec![root.clone()],
            root,
            status,
            to_move,
        }
    }

    pub fn root(&self) -> &Formula {
        &self.root
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn landing(&self, i: usize) -> Option<&Formula> {
        self.landings.get(i)
    }

    pub fn next_index(&self) -> usize {
        self.moves.len()
    }

    /// Pointer map of the play so far: entry `k` is the pointer of move `k+1`.
    pub fn phi(&self) -> Vec<usize> {
        self.moves.iter().skip(1).map(|m| m.pointer).collect()
    }

    /// The view at the next stage, per the descent through the pointers.
    pub fn view(&self) -> Vec<usize> {
        view_of_phi(&self.phi(), self.next_index())
    }

    fn eloise_last(&self) -> Option<usize> {
        self.moves.iter().rev().find(|m| m.player == Player::Eloise).map(|m| m.index)
    }

    /// Resolves the node a payload lands on when applied at `pointer`,
    /// checking player-payload-node compatibility.
    fn resolve(&self, player: Player, pointer: usize, payload: &Payload) -> Result<Formula, MoveError> {
        let target = self.landings.get(pointer).ok_or(MoveError::PointerOutOfRange(pointer))?;
        let want_kind = match player {
            Player::Eloise => Kind::Disj,
            Player::Abelard => Kind::Conj,
            Player::Start => return Err(MoveError::PayloadMismatch("start cannot move".into())),
        };
        match payload {
            Payload::Start => Err(MoveError::PayloadMismatch("start payload after move 0".into())),
            Payload::Disjunct(i) | Payload::Conjunct(i) => {
                let node_kind = match payload {
                    Payload::Disjunct(_) => Kind::Disj,
                    _ => Kind::Conj,
                };
                if node_kind != want_kind {
                    return Err(MoveError::PayloadMismatch(format!(
                        "{:?} cannot answer a {:?} family",
                        player, node_kind
                    )));
                }
                if target.is_leaf() || target.kind() != node_kind {
                    return Err(MoveError::PayloadMismatch(format!(
                        "move {pointer} landed on {}, not a {:?}",
                        describe(target),
                        node_kind
                    )));
                }
                if let Some(tag) = &target.children().opaque {
                    if target.nat_family_size().is_none() && target.children().head.is_empty() {
                        return Err(MoveError::OpaqueFamily(tag.name.clone()));
                    }
                }
                target.child_nat(*i).ok_or(MoveError::NoSuchChild(*i))
            }
            Payload::Function(h) => {
                if target.is_leaf() || target.kind() != want_kind {
                    return Err(MoveError::PayloadMismatch(format!(
                        "move {pointer} landed on {}, not a {:?} for {:?}",
                        describe(target),
                        want_kind,
                        player
                    )));
                }
                target
                    .child_fun(h)
                    .ok_or_else(|| MoveError::PayloadMismatch("family is not function-indexed".into()))
            }
            Payload::ClaimLeaf => {
                let Some(v) = target.leaf_value() else {
                    return Err(MoveError::PayloadMismatch("claim on a non-leaf".into()));
                };
                let wins = match player {
                    Player::Eloise => v,
                    Player::Abelard => !v,
                    Player::Start => false,
                };
                if !wins {
                    return Err(MoveError::BadClaim);
                }
                Ok(target.clone())
            }
        }
    }

    /// All currently legal moves for `player`, exploring generated families
    /// up to `width` children. Function-indexed families admit unboundedly
    /// many moves and are not enumerated here; `apply` accepts any handle.
    pub fn legal_moves(&self, player: Player, width: u64) -> Vec<Move> {
        let mut out = Vec::new();
        if self.status != Status::Running || player != self.to_move {
            return out;
        }
        let n = self.next_index();
        let pointers: Vec<usize> = match player {
            Player::Abelard => vec![n - 1],
            _ => self.view(),
        };
        for p in pointers {
            let target = &self.landings[p];
            if let Some(v) = target.leaf_value() {
                let claim_ok = match player {
                    Player::Eloise => v,
                    _ => !v,
                };
                if claim_ok {
                    out.push(Move { index: n, player, payload: Payload::ClaimLeaf, pointer: p });
                }
                continue;
            }
            let want = match player {
                Player::Eloise => Kind::Disj,
                _ => Kind::Conj,
            };
            if target.kind() != want {
                continue;
            }
            let limit = target.nat_family_size().unwrap_or(width).min(width);
            for i in 0..limit {
                if target.child_nat(i).is_some() {
                    let payload = match want {
                        Kind::Disj => Payload::Disjunct(i),
                        Kind::Conj => Payload::Conjunct(i),
                    };
                    out.push(Move { index: n, player, payload, pointer: p });
                }
            }
        }
        out
    }

    /// Applies a move, updating turn and resolving leaf landings: Eloise
    /// wins on `1`, Abelard when Eloise lands on `0`; Abelard landing on `0`
    /// keeps the game running.
    pub fn apply(&mut self, player: Player, pointer: usize, payload: Payload) -> Result<(), MoveError> {
        if self.status != Status::Running {
            return Err(MoveError::GameOver);
        }
        if player != self.to_move {
            return Err(MoveError::StaleTurn(player));
        }
        let n = self.next_index();
        match player {
            Player::Abelard => {
                let expected = n - 1;
                if pointer != expected {
                    return Err(MoveError::AbelardMustAnswerLast { expected, got: pointer });
                }
                debug_assert!(self.eloise_last().is_none_or(|e| e == expected || expected == 0));
            }
            Player::Eloise => {
                if !self.view().contains(&pointer) {
                    return Err(MoveError::PointerOutsideView(pointer));
                }
            }
            Player::Start => return Err(MoveError::StaleTurn(player)),
        }
        let landing = self.resolve(player, pointer, &payload)?;
        let is_claim = matches!(payload, Payload::ClaimLeaf);
        self.moves.push(Move { index: n, player, payload, pointer });
        self.landings.push(landing.clone());
        if is_claim {
            self.status = match player {
                Player::Eloise => Status::EloiseWins,
                _ => Status::AbelardWins,
            };
            return Ok(());
        }
        match (landing.leaf_value(), player) {
            (Some(true), _) => self.status = Status::EloiseWins,
            (Some(false), Player::Eloise) => self.status = Status::AbelardWins,
            _ => {}
        }
        if self.status == Status::Running {
            self.to_move = player.opponent();
        }
        Ok(())
    }
}

fn describe(f: &Formula) -> String {
    match f.leaf_value() {
        Some(true) => "leaf 1".into(),
        Some(false) => "leaf 0".into(),
        None => match f.kind() {
            Kind::Conj => "a conjunction".into(),
            Kind::Disj => "a disjunction".into(),
        },
    }
}

/// View descent shared by games, debates and the pointer analysis: the view
/// before move `n` is `{n-1, phi(n-1)-1, ...}`, stopping at position 0 or
/// when a pointer hits the start move.
pub(crate) fn view_of_phi(phi: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut m = n - 1;
    loop {
        out.push(m);
        if m == 0 {
            break;
        }
        let p = phi[m - 1];
        if p == 0 {
            break;
        }
        m = p - 1;
    }
    out
}

/// What a seat (a player in a game, or a role in a debate) can see when
/// asked to move: the moves so far with their landings translated to the
/// seat's own board, the current view, and the anchor its root-level answers
/// should point at.
pub struct SeatView {
    pub next_index: usize,
    /// Positions visible at this stage.
    pub view: Vec<usize>,
    /// The move that opened this seat's root; root-level answers point here.
    pub anchor: usize,
    pub moves: Vec<VisibleMove>,
}

pub struct VisibleMove {
    pub index: usize,
    pub mine: bool,
    pub pointer: usize,
    pub payload: Payload,
    /// The node this move landed on, oriented to the seat's own board;
    /// `None` when the move lies outside it.
    pub landing: Option<Formula>,
}

impl SeatView {
    pub fn my_moves(&self) -> impl DoubleEndedIterator<Item = &VisibleMove> {
        self.moves.iter().filter(|m| m.mine && m.index > 0)
    }

    pub fn env_moves(&self) -> impl DoubleEndedIterator<Item = &VisibleMove> {
        self.moves.iter().filter(|m| !m.mine && m.index > 0)
    }

    /// The environment's latest function move, if any.
    pub fn newest_env_function(&self) -> Option<&VisibleMove> {
        self.env_moves().rev().find(|m| matches!(m.payload, Payload::Function(_)))
    }

    /// My latest function move, if any.
    pub fn newest_my_function(&self) -> Option<&VisibleMove> {
        self.my_moves().rev().find(|m| matches!(m.payload, Payload::Function(_)))
    }
}

/// A decision procedure for one seat. Implementations must be deterministic
/// given the same visible history; returning `None` concedes.
pub trait Strategy {
    fn name(&self) -> &str;
    fn propose(&self, seat: &SeatView) -> Option<ProposedMove>;
}

#[derive(Clone, Debug)]
pub struct ProposedMove {
    pub pointer: usize,
    pub payload: Payload,
    /// Optional annotation carried into exports (e.g. a re-entry note).
    pub note: Option<&'static str>,
}

impl ProposedMove {
    pub fn new(pointer: usize, payload: Payload) -> ProposedMove {
        ProposedMove { pointer, payload, note: None }
    }
}

/// Outcome of driving two strategies through a single-board game.
pub struct GameRecord {
    pub state: GameState,
    pub steps: usize,
    /// `None` while running (budget exhausted or a quit).
    pub winner: Option<Player>,
    pub notes: Vec<(usize, &'static str)>,
}

#[derive(Debug, thiserror::Error)]
pub enum GameError {
    #[error("{player:?} emitted an illegal move at step {step}: {source}")]
    Illegal { player: Player, step: usize, source: MoveError },
}

/// Runs `elo` (Eloise) against `abe` (Abelard) on `root` until a win or the
/// step budget. A seat that returns no move concedes.
pub fn run_game(
    root: &Formula,
    elo: &dyn Strategy,
    abe: &dyn Strategy,
    budget: usize,
) -> Result<GameRecord, GameError> {
    let mut state = GameState::new(root.clone());
    let mut notes = Vec::new();
    let mut steps = 0;
    while state.status() == Status::Running && steps < budget {
        let player = state.to_move();
        let seat = seat_view_of_game(&state, player);
        let strat = match player {
            Player::Eloise => elo,
            _ => abe,
        };
        let Some(mv) = strat.propose(&seat) else {
            state.status = match player {
                Player::Eloise => Status::AbelardWins,
                _ => Status::EloiseWins,
            };
            notes.push((state.next_index(), "conceded"));
            break;
        };
        let step = state.next_index();
        state
            .apply(player, mv.pointer, mv.payload)
            .map_err(|source| GameError::Illegal { player, step, source })?;
        if let Some(note) = mv.note {
            notes.push((step, note));
        }
        steps += 1;
    }
    let winner = match state.status() {
        Status::EloiseWins => Some(Player::Eloise),
        Status::AbelardWins => Some(Player::Abelard),
        Status::Running => None,
    };
    Ok(GameRecord { state, steps, winner, notes })
}

/// The seat view a player of a single-board game sees: landings are absolute
/// (everyone plays on the same board).
pub fn seat_view_of_game(state: &GameState, player: Player) -> SeatView {
    let moves = state
        .moves()
        .iter()
        .map(|m| VisibleMove {
            index: m.index,
            mine: m.player == player,
            pointer: m.pointer,
            payload: m.payload.clone(),
            landing: state.landing(m.index).cloned(),
        })
        .collect();
    SeatView { next_index: state.next_index(), view: state.view(), anchor: 0, moves }
}

/// Replays a recorded move list through a fresh state, checking legality and
/// reproducing the landings and status bit for bit.
pub fn replay(root: &Formula, moves: &[Move]) -> Result<GameState, GameError> {
    let mut state = GameState::new(root.clone());
    for m in moves.iter().skip(1) {
        let step = state.next_index();
        state
            .apply(m.player, m.pointer, m.payload.clone())
            .map_err(|source| GameError::Illegal { player: m.player, step, source })?;
    }
    Ok(state)
}

/// Result of a continuity audit: either every replayed decision of the
/// audited seat agreed with the record, or a perturbation off the query log
/// changed an answer, witnessing a read the log does not account for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditVerdict {
    ConsistentWithContinuity,
    Violation {
        witness_base: u64,
        witness_updates: Vec<(u64, u64)>,
        perturbed_move: usize,
        diverged_at: usize,
        trial: usize,
    },
}

/// Audits the environment seat of a recorded game: replays it against the
/// record with each of the other side's function payloads perturbed at a
/// point outside its query log. A deterministic seat that reads only through
/// the handles cannot tell the difference.
pub fn continuity_audit_game(
    record: &GameRecord,
    audited: Player,
    fresh: &dyn Strategy,
    trials: usize,
    seed: u64,
) -> AuditVerdict {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let env_functions: Vec<(usize, FunctionHandle)> = record
        .state
        .moves()
        .iter()
        .filter(|m| m.player != audited)
        .filter_map(|m| match &m.payload {
            Payload::Function(h) => Some((m.index, h.clone())),
            _ => None,
        })
        .collect();
    if env_functions.is_empty() {
        return AuditVerdict::ConsistentWithContinuity;
    }
    for trial in 0..trials {
        let (at_move, handle) = &env_functions[trial % env_functions.len()];
        let log = handle.query_log();
        let horizon = log
            .iter()
            .max()
            .copied()
            .max(handle.updates.iter().map(|(x, _)| *x).max())
            .unwrap_or(0)
            + 16;
        let mut point = rng.gen_range(0..=horizon);
        let mut guard = 0;
        while log.contains(&point) && guard < 200 {
            point = rng.gen_range(0..=horizon);
            guard += 1;
        }
        if log.contains(&point) {
            continue;
        }
        let flipped = if handle.get_quiet(point) == 0 { 1 } else { 0 };
        if let Some(at) = game_replay_perturbed(record, audited, fresh, *at_move, point, flipped) {
            let mut updates = handle.updates.clone();
            updates.push((point, flipped));
            return AuditVerdict::Violation {
                witness_base: handle.base,
                witness_updates: updates,
                perturbed_move: *at_move,
                diverged_at: at,
                trial,
            };
        }
    }
    AuditVerdict::ConsistentWithContinuity
}

fn game_replay_perturbed(
    record: &GameRecord,
    audited: Player,
    fresh: &dyn Strategy,
    perturbed_move: usize,
    point: u64,
    value: u64,
) -> Option<usize> {
    let mut state = GameState::new(record.state.root().clone());
    for recorded in record.state.moves().iter().skip(1) {
        if state.status() != Status::Running {
            return None;
        }
        let (pointer, payload) = if recorded.player == audited {
            let seat = seat_view_of_game(&state, audited);
            let mv = fresh.propose(&seat)?;
            let agree = mv.pointer == recorded.pointer
                && match (&mv.payload, &recorded.payload) {
                    (Payload::Disjunct(x), Payload::Disjunct(y))
                    | (Payload::Conjunct(x), Payload::Conjunct(y)) => x == y,
                    (Payload::ClaimLeaf, Payload::ClaimLeaf) => true,
                    (Payload::Function(x), Payload::Function(y)) => x.same_map(y),
                    _ => false,
                };
            if !agree {
                return Some(recorded.index);
            }
            (mv.pointer, mv.payload)
        } else {
            let mut payload = recorded.payload.clone();
            if recorded.index == perturbed_move {
                if let Payload::Function(h) = &payload {
                    let mut updates = h.updates.clone();
                    updates.push((point, value));
                    payload = Payload::Function(FunctionHandle::with_updates(h.base, updates));
                }
            }
            (recorded.pointer, payload)
        };
        if state.apply(recorded.player, pointer, payload).is_err() {
            return None; // the perturbation ended the play early
        }
    }
    None
}


#[cfg(test)]
mod audit_tests {
    use super::*;
    use crate::formula::examples;
    use crate::strategies::{self, opponents};

    #[test]
    fn window_challengers_audit_clean() {
        let board = examples::star();
        for w in [1, 3, 8] {
            let abe = opponents::continuous_star_opponent(w);
            let rec = run_game(&board, strategies::star_strategy().as_ref(), abe.as_ref(), 64)
                .unwrap();
            let fresh = opponents::continuous_star_opponent(w);
            let verdict =
                continuity_audit_game(&rec, Player::Abelard, fresh.as_ref(), 24, 42 + w);
            assert_eq!(verdict, AuditVerdict::ConsistentWithContinuity, "window {w}");
        }
    }

    #[test]
    fn zero_seeker_is_caught() {
        let board = examples::star();
        let abe = opponents::discontinuous_zero_seeker();
        let rec =
            run_game(&board, strategies::star_strategy().as_ref(), abe.as_ref(), 64).unwrap();
        let fresh = opponents::discontinuous_zero_seeker();
        let verdict = continuity_audit_game(&rec, Player::Abelard, fresh.as_ref(), 24, 7);
        assert!(
            matches!(verdict, AuditVerdict::Violation { .. }),
            "expected a violation, got {verdict:?}"
        );
    }

    #[test]
    fn ignoring_the_function_audits_clean_with_empty_log() {
        // An environment that never reads the played function.
        struct Blind;
        impl Strategy for Blind {
            fn name(&self) -> &str {
                "blind"
            }
            fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
                Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(5)))
            }
        }
        let board = examples::star();
        let rec = run_game(&board, strategies::star_strategy().as_ref(), &Blind, 64).unwrap();
        for (_, h) in rec
            .state
            .moves()
            .iter()
            .filter_map(|m| match &m.payload {
                Payload::Function(h) => Some((m.index, h)),
                _ => None,
            })
        {
            assert!(h.query_log().is_empty());
        }
        let verdict = continuity_audit_game(&rec, Player::Abelard, &Blind, 16, 3);
        assert_eq!(verdict, AuditVerdict::ConsistentWithContinuity);
    }
}
