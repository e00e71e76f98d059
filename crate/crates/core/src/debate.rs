//! Strategy-versus-strategy debates across a cut formula.
//!
//! Role A defends the cut formula; role B defends its negation, optionally
//! disjoined with a goal. Both roles answer disjunctions on their own board
//! and may revise earlier answers, so each looks like a mind-changing
//! environment to the other. The shared record is one interaction sequence:
//! every move points at an earlier move, subject to the view discipline,
//! with strict role alternation after the shared start move.
//!
//! A debate ends when a move lands on a leaf that is false on the mover's
//! own board (the claim is refuted on the spot), when the role to move has
//! nothing to say (it concedes), when the trace becomes periodic (a lasso,
//! the finite certificate of an infinite debate), or at the step budget.

pub mod export;

use crate::arena::{AuditVerdict, Payload, ProposedMove, SeatView, Strategy, VisibleMove};
use crate::formula::{canonicalize, negate, Formula, Kind};
use crate::pointer::{self, FiniteSeq, LassoSeq, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Role {
    A,
    B,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::A => Role::B,
            Role::B => Role::A,
        }
    }
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Role::A => write!(f, "A"),
            Role::B => write!(f, "B"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DebateMove {
    pub index: usize,
    /// `None` for the shared start move.
    pub role: Option<Role>,
    /// Payload in the mover's own board orientation.
    pub payload: Payload,
    pub pointer: usize,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Outcome {
    AWins,
    BWins,
    Lasso { prefix: usize, period: usize },
    BudgetExhausted(usize),
}

/// How a debate is sourced back from a trace file.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaSpec {
    Named {
        name: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        f: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        h: Option<String>,
    },
    Sexpr(String),
}

/// The full record of a debate: the boards, the interleaved moves, and how
/// it ended.
pub struct DebateTrace {
    pub cut: Formula,
    pub goal: Option<Formula>,
    pub cut_spec: FormulaSpec,
    pub goal_spec: Option<FormulaSpec>,
    pub a_name: String,
    pub b_name: String,
    pub moves: Vec<DebateMove>,
    pub outcome: Outcome,
    /// Follows each move's landing on board B.
    pub landings_b: Vec<Formula>,
    /// Whether each landing lies in the contested (cut) part of board B.
    pub contested: Vec<bool>,
    /// Anchor for role A's root-level answers.
    pub a_anchor: usize,
    pub board_b: Formula,
}

impl DebateTrace {
    /// Pointers `phi(1..)` of the interleaved record.
    pub fn phi(&self) -> Vec<usize> {
        self.moves.iter().skip(1).map(|m| m.pointer).collect()
    }

    pub fn finite_seq(&self) -> FiniteSeq {
        FiniteSeq::new(self.phi())
    }

    /// The lasso of an infinite debate, available on `Lasso` outcomes.
    pub fn lasso_seq(&self) -> Option<LassoSeq> {
        let Outcome::Lasso { prefix, period } = self.outcome else {
            return None;
        };
        let phi = self.phi();
        let cs = prefix.max(1);
        if phi.len() < cs - 1 + 2 * period {
            return None;
        }
        let prefix_phi = phi[..cs - 1].to_vec();
        let c1 = &phi[cs - 1..cs - 1 + period];
        let c2 = &phi[cs - 1 + period..cs - 1 + 2 * period];
        LassoSeq::from_cycles(prefix_phi, c1, c2).ok()
    }

    /// Role of the mover at a position (position 0 is the start move).
    pub fn role_at(&self, position: usize) -> Option<Role> {
        self.moves.get(position).and_then(|m| m.role)
    }

    /// Maps the blamed parity of the lasso analysis back to a role.
    pub fn blame(&self) -> Result<(Role, pointer::Blame), pointer::SeqError> {
        let lasso = self.lasso_seq().ok_or(pointer::SeqError::NoChain)?;
        let blame = pointer::blame(&lasso)?;
        let probe = match blame.blamed_parity {
            Parity::Odd => 1,
            Parity::Even => 2,
        };
        let role = self.role_at(probe).ok_or(pointer::SeqError::NoChain)?;
        Ok((role, blame))
    }

    /// The function payloads played so far, in order.
    pub fn function_moves(&self) -> Vec<(usize, crate::arena::FunctionHandle)> {
        self.moves
            .iter()
            .filter_map(|m| match &m.payload {
                Payload::Function(h) => Some((m.index, h.clone())),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DebateError {
    #[error("role {role} emitted an illegal move at step {step}: {reason}")]
    Illegal { role: Role, step: usize, reason: String },
    #[error("board construction failed: {0}")]
    Board(String),
}

/// When to attempt lasso detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LassoMode {
    /// Detect only when the debate involves function moves, whose round
    /// parameters make eventual periodicity meaningful.
    #[default]
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone)]
pub struct RunOpts {
    pub step_budget: usize,
    pub lasso: LassoMode,
    /// Moves to accumulate before attempting detection.
    pub warm_up: usize,
}

impl Default for RunOpts {
    fn default() -> Self {
        RunOpts { step_budget: 256, lasso: LassoMode::Auto, warm_up: 4 }
    }
}

struct Table {
    moves: Vec<DebateMove>,
    landings_b: Vec<Formula>,
    contested: Vec<bool>,
    /// Number of board-B root children that belong to the negated cut.
    cut_children: usize,
    has_goal: bool,
    a_anchor: usize,
}

impl Table {
    fn phi(&self) -> Vec<usize> {
        self.moves.iter().skip(1).map(|m| m.pointer).collect()
    }

    fn view(&self) -> Vec<usize> {
        crate::arena::view_of_phi(&self.phi(), self.moves.len())
    }

    /// The node a landing shows to a role: board B directly for B, the dual
    /// for A inside the contested part, nothing outside it.
    fn landing_for(&self, role: Role, index: usize) -> Option<Formula> {
        let node = self.landings_b.get(index)?;
        match role {
            Role::B => Some(node.clone()),
            Role::A => {
                if !self.contested[index] {
                    return None;
                }
                if index == 0 && self.has_goal {
                    // Board B's root is not A's root; A enters at the cut
                    // disjunct.
                    return None;
                }
                Some(negate(node))
            }
        }
    }

    fn seat_view(&self, role: Role) -> SeatView {
        let anchor = match role {
            Role::A => self.a_anchor,
            Role::B => 0,
        };
        let moves = self
            .moves
            .iter()
            .map(|m| VisibleMove {
                index: m.index,
                mine: m.role == Some(role),
                pointer: m.pointer,
                payload: m.payload.clone(),
                landing: self.landing_for(role, m.index),
            })
            .collect();
        SeatView { next_index: self.moves.len(), view: self.view(), anchor, moves }
    }

    /// Applies a proposed move for `role`, returning the landing's truth on
    /// the mover's board when it is a leaf.
    fn apply(&mut self, role: Role, mv: &ProposedMove) -> Result<Option<bool>, String> {
        let n = self.moves.len();
        let view = self.view();
        if !view.contains(&mv.pointer) {
            return Err(format!("pointer {} outside view {:?}", mv.pointer, view));
        }
        let target_b = self.landings_b[mv.pointer].clone();
        // Both roles answer existential families of their own boards, so a
        // role-A disjunct choice addresses a board-B conjunction.
        let want = match role {
            Role::B => Kind::Disj,
            Role::A => Kind::Conj,
        };
        let (landing_b, claim) = match &mv.payload {
            Payload::Start => return Err("start payload after move 0".into()),
            Payload::Conjunct(_) => {
                return Err("debate roles answer their own existential families".into());
            }
            Payload::Disjunct(i) => {
                if target_b.is_leaf() || target_b.kind() != want {
                    return Err(format!(
                        "move {} did not land on a {:?} on board B",
                        mv.pointer, want
                    ));
                }
                if role == Role::A && !self.contested[mv.pointer] {
                    return Err("role A cannot answer outside the contested part".into());
                }
                let child = target_b
                    .child_nat(*i)
                    .ok_or_else(|| format!("no child {} at move {}", i, mv.pointer))?;
                (child, false)
            }
            Payload::Function(h) => {
                if target_b.is_leaf() || target_b.kind() != want {
                    return Err(format!(
                        "move {} did not land on a {:?} on board B",
                        mv.pointer, want
                    ));
                }
                if role == Role::A && !self.contested[mv.pointer] {
                    return Err("role A cannot answer outside the contested part".into());
                }
                let child = target_b
                    .child_fun(h)
                    .ok_or_else(|| "family is not function-indexed".to_string())?;
                (child, false)
            }
            Payload::ClaimLeaf => {
                let Some(v) = target_b.leaf_value() else {
                    return Err("claim on a non-leaf".into());
                };
                let true_for_mover = match role {
                    Role::B => v,
                    Role::A => !v,
                };
                if !true_for_mover {
                    return Err("claim on a leaf that is false for the claimant".into());
                }
                if role == Role::A && !self.contested[mv.pointer] {
                    return Err("role A cannot claim outside the contested part".into());
                }
                (target_b.clone(), true)
            }
        };
        let contested = if mv.pointer == 0 && self.has_goal {
            match mv.payload.nat_index() {
                Some(i) => (i as usize) < self.cut_children,
                None => self.contested[mv.pointer],
            }
        } else {
            self.contested[mv.pointer]
        };
        if contested && self.a_anchor == 0 && self.has_goal && role == Role::B && mv.pointer == 0 {
            self.a_anchor = n;
        }
        self.moves.push(DebateMove {
            index: n,
            role: Some(role),
            payload: mv.payload.clone(),
            pointer: mv.pointer,
            note: mv.note,
        });
        self.landings_b.push(landing_b.clone());
        self.contested.push(contested);
        if claim {
            return Ok(Some(true));
        }
        Ok(landing_b.leaf_value().map(|v| match role {
            Role::B => v,
            Role::A => !v,
        }))
    }
}

/// Runs strategy `a` (for `cut`) against strategy `b` (for the canonical
/// disjunction of the negated cut with `goal`).
pub fn run_debate(
    a: &dyn Strategy,
    b: &dyn Strategy,
    cut: &Formula,
    goal: Option<&Formula>,
    opts: &RunOpts,
) -> Result<DebateTrace, DebateError> {
    let neg_cut = canonicalize(&negate(cut));
    let (board_b, cut_children) = match goal {
        Some(g) => {
            // Splice the negated cut and the goal into one root disjunction
            // and remember how many root children came from the cut side.
            let board = canonicalize(&Formula::disj(vec![neg_cut.clone(), g.clone()]));
            let cut_children = if neg_cut.kind() == Kind::Disj && !neg_cut.is_leaf() {
                neg_cut.children().head.len()
            } else {
                1
            };
            (board, cut_children)
        }
        None => (neg_cut, usize::MAX),
    };
    let has_goal = goal.is_some();
    let mut table = Table {
        moves: vec![DebateMove { index: 0, role: None, payload: Payload::Start, pointer: 0, note: None }],
        landings_b: vec![board_b.clone()],
        contested: vec![!has_goal],
        cut_children,
        has_goal,
        a_anchor: 0,
    };
    // B opens when its root is a disjunction; otherwise the first move is
    // A's (the environment answering B's root conjunction).
    let mut to_move = if board_b.kind() == Kind::Disj { Role::B } else { Role::A };
    let mut outcome = None;
    let mut any_function_move = false;
    while outcome.is_none() {
        let steps = table.moves.len() - 1;
        if steps >= opts.step_budget {
            outcome = Some(Outcome::BudgetExhausted(opts.step_budget));
            break;
        }
        let strat: &dyn Strategy = match to_move {
            Role::A => a,
            Role::B => b,
        };
        let seat = table.seat_view(to_move);
        let Some(mv) = strat.propose(&seat) else {
            outcome = Some(match to_move {
                Role::A => Outcome::BWins,
                Role::B => Outcome::AWins,
            });
            break;
        };
        if matches!(mv.payload, Payload::Function(_)) {
            any_function_move = true;
        }
        let step = table.moves.len();
        let landed = table
            .apply(to_move, &mv)
            .map_err(|reason| DebateError::Illegal { role: to_move, step, reason })?;
        if landed == Some(false) {
            // The mover landed on a leaf its own board refutes.
            outcome = Some(match to_move {
                Role::A => Outcome::BWins,
                Role::B => Outcome::AWins,
            });
            break;
        }
        let detect = match opts.lasso {
            LassoMode::Always => true,
            LassoMode::Never => false,
            LassoMode::Auto => any_function_move,
        };
        if detect && table.moves.len() > opts.warm_up {
            if let Some((prefix, period)) = detect_lasso_in(&table.moves) {
                outcome = Some(Outcome::Lasso { prefix, period });
                break;
            }
        }
        to_move = to_move.other();
    }
    Ok(DebateTrace {
        cut: cut.clone(),
        goal: goal.cloned(),
        cut_spec: FormulaSpec::Sexpr(cut.to_string()),
        goal_spec: goal.map(|g| FormulaSpec::Sexpr(g.to_string())),
        a_name: a.name().to_string(),
        b_name: b.name().to_string(),
        moves: table.moves,
        outcome: outcome.unwrap(),
        landings_b: table.landings_b,
        contested: table.contested,
        a_anchor: table.a_anchor,
        board_b,
    })
}

/// Numeric parameters of a payload, for periodicity comparison: payloads a
/// fixed offset apart round after round count as repeating.
fn payload_params(m: &DebateMove, prev_fn: Option<&crate::arena::FunctionHandle>) -> Option<Vec<i64>> {
    match &m.payload {
        Payload::Start => Some(vec![]),
        Payload::ClaimLeaf => Some(vec![]),
        Payload::Disjunct(i) | Payload::Conjunct(i) => Some(vec![*i as i64]),
        Payload::Function(h) => {
            // A function move must extend the previous function by exactly
            // one update to count as a round parameter.
            let prev = prev_fn?;
            if h.base != prev.base || h.updates.len() != prev.updates.len() + 1 {
                return None;
            }
            if h.updates[..prev.updates.len()] != prev.updates[..] {
                return None;
            }
            let (x, y) = *h.updates.last().unwrap();
            Some(vec![x as i64, y as i64])
        }
    }
}

/// Finds the least `(period, prefix)` such that from move `prefix` on, the
/// moves repeat with fixed pointer shifts and fixed payload-parameter
/// increments, across at least four periods (a candidate pair of blocks
/// verified by replaying two further periods). The prefix counts positions
/// before the cycle, the start move included.
pub fn detect_lasso(trace: &DebateTrace) -> Option<(usize, usize)> {
    detect_lasso_in(&trace.moves)
}

fn detect_lasso_in(moves: &[DebateMove]) -> Option<(usize, usize)> {
    let n = moves.len();
    for period in 1..=n.saturating_sub(1) / 4 {
        for prefix in 1..=(n - 4 * period) {
            if lasso_matches(moves, prefix, period) {
                return Some((prefix, period));
            }
        }
    }
    None
}

/// Checks full periodicity of `moves[prefix..]` with the given period: per
/// position class, the role and payload kind repeat, payload parameters
/// advance by a fixed delta each block, and pointers are either fixed or
/// shift by the period. Deltas are fixed by the first two blocks and must
/// hold through every later (complete or partial) block.
fn lasso_matches(moves: &[DebateMove], prefix: usize, period: usize) -> bool {
    let n = moves.len();
    if n < prefix + 4 * period {
        return false;
    }
    let prev_function_before = |idx: usize| {
        moves[..idx].iter().rev().find_map(|m| match &m.payload {
            Payload::Function(h) => Some(h.clone()),
            _ => None,
        })
    };
    let params = |m: &DebateMove| payload_params(m, prev_function_before(m.index).as_ref());
    for j in 0..period {
        let m0 = &moves[prefix + j];
        let m1 = &moves[prefix + period + j];
        let (Some(p0), Some(p1)) = (params(m0), params(m1)) else { return false };
        if p0.len() != p1.len() {
            return false;
        }
        let deltas: Vec<(i64, i64)> = p0.iter().zip(&p1).map(|(a, b)| (*a, b - a)).collect();
        let ptr_shift = if m1.pointer == m0.pointer {
            0
        } else if m1.pointer == m0.pointer + period {
            period
        } else {
            return false;
        };
        let mut b = 1;
        while prefix + b * period + j < n {
            let mb = &moves[prefix + b * period + j];
            if mb.role != m0.role || mb.payload.kind_name() != m0.payload.kind_name() {
                return false;
            }
            let Some(pb) = params(mb) else { return false };
            if pb.len() != deltas.len() {
                return false;
            }
            for (k, &(base, d)) in deltas.iter().enumerate() {
                if pb[k] != base + d * b as i64 {
                    return false;
                }
            }
            if mb.pointer != m0.pointer + ptr_shift * b {
                return false;
            }
            b += 1;
        }
    }
    true
}

/// Replays a recorded debate against the engine rules, returning the
/// reconstructed trace. Both sides are scripted; the outcome must be
/// reproduced exactly for wins, and budget/lasso outcomes are recomputed.
pub fn replay(trace: &DebateTrace, opts: &RunOpts) -> Result<DebateTrace, DebateError> {
    let a = Scripted::new(Role::A, &trace.moves);
    let b = Scripted::new(Role::B, &trace.moves);
    run_debate(&a, &b, &trace.cut, trace.goal.as_ref(), opts)
}

/// Plays back one role's recorded moves in order.
pub struct Scripted {
    name: String,
    moves: Vec<(usize, ProposedMove)>,
}

impl Scripted {
    pub fn new(role: Role, moves: &[DebateMove]) -> Scripted {
        let moves = moves
            .iter()
            .filter(|m| m.role == Some(role))
            .map(|m| {
                (m.index, ProposedMove { pointer: m.pointer, payload: m.payload.clone(), note: m.note })
            })
            .collect();
        Scripted { name: format!("scripted-{role:?}"), moves }
    }
}

impl Strategy for Scripted {
    fn name(&self) -> &str {
        &self.name
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        self.moves
            .iter()
            .find(|(idx, _)| *idx == seat.next_index)
            .map(|(_, mv)| mv.clone())
    }
}

/// Replays the audited role's strategy against the recorded opponent script,
/// with every opponent function payload perturbed off its query log; a
/// divergence in the audited side's decisions witnesses a read outside the
/// log.
pub fn continuity_audit(
    trace: &DebateTrace,
    audited: Role,
    fresh: &dyn Strategy,
    trials: usize,
    seed: u64,
) -> AuditVerdict {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let env_functions: Vec<(usize, crate::arena::FunctionHandle)> = trace
        .moves
        .iter()
        .filter(|m| m.role == Some(audited.other()))
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
        let known: Vec<u64> = handle.updates.iter().map(|(x, _)| *x).collect();
        let horizon = log
            .iter()
            .max()
            .copied()
            .max(known.iter().max().copied())
            .unwrap_or(0)
            + 16;
        let mut point = rng.gen_range(0..=horizon);
        let mut guard = 0;
        while log.contains(&point) {
            point = rng.gen_range(0..=horizon);
            guard += 1;
            if guard > 200 {
                break;
            }
        }
        if log.contains(&point) {
            continue; // log covers the whole probe range
        }
        let flipped = if handle.get_quiet(point) == 0 { 1 } else { 0 };
        if let Some(divergence) =
            replay_perturbed(trace, audited, fresh, *at_move, point, flipped)
        {
            return AuditVerdict::Violation {
                witness_base: handle.base,
                witness_updates: {
                    let mut u = handle.updates.clone();
                    u.push((point, flipped));
                    u
                },
                perturbed_move: *at_move,
                diverged_at: divergence,
                trial,
            };
        }
    }
    AuditVerdict::ConsistentWithContinuity
}

/// Drives the audited strategy through the recorded history with one
/// function payload perturbed; returns the index of the first move where
/// its decision changed.
fn replay_perturbed(
    trace: &DebateTrace,
    audited: Role,
    fresh: &dyn Strategy,
    perturbed_move: usize,
    point: u64,
    value: u64,
) -> Option<usize> {
    let neg_cut = canonicalize(&negate(&trace.cut));
    let (board_b, cut_children) = match &trace.goal {
        Some(g) => {
            let board = canonicalize(&Formula::disj(vec![neg_cut.clone(), g.clone()]));
            let cc = if neg_cut.kind() == Kind::Disj && !neg_cut.is_leaf() {
                neg_cut.children().head.len()
            } else {
                1
            };
            (board, cc)
        }
        None => (neg_cut, usize::MAX),
    };
    let has_goal = trace.goal.is_some();
    let mut table = Table {
        moves: vec![DebateMove { index: 0, role: None, payload: Payload::Start, pointer: 0, note: None }],
        landings_b: vec![board_b],
        contested: vec![!has_goal],
        cut_children,
        has_goal,
        a_anchor: 0,
    };
    for recorded in trace.moves.iter().skip(1) {
        let role = recorded.role.expect("non-start moves have roles");
        let mv = if role == audited {
            let seat = table.seat_view(role);
            match fresh.propose(&seat) {
                Some(mv) => {
                    let same_pointer = mv.pointer == recorded.pointer;
                    let same_payload = payloads_agree(&mv.payload, &recorded.payload);
                    if !same_pointer || !same_payload {
                        return Some(recorded.index);
                    }
                    mv
                }
                None => return Some(recorded.index),
            }
        } else {
            let mut payload = recorded.payload.clone();
            if recorded.index == perturbed_move {
                if let Payload::Function(h) = &payload {
                    let mut updates = h.updates.clone();
                    updates.push((point, value));
                    payload =
                        Payload::Function(crate::arena::FunctionHandle::with_updates(h.base, updates));
                }
            }
            ProposedMove { pointer: recorded.pointer, payload, note: None }
        };
        match table.apply(role, &mv) {
            Ok(Some(false)) => return None, // ended early under perturbation
            Ok(_) => {}
            Err(_) => return None, // script no longer legal: ended early
        }
    }
    None
}

fn payloads_agree(a: &Payload, b: &Payload) -> bool {
    match (a, b) {
        (Payload::Disjunct(x), Payload::Disjunct(y)) => x == y,
        (Payload::Conjunct(x), Payload::Conjunct(y)) => x == y,
        (Payload::ClaimLeaf, Payload::ClaimLeaf) => true,
        (Payload::Start, Payload::Start) => true,
        (Payload::Function(x), Payload::Function(y)) => {
            // The audited side's own function moves must be the same map on
            // the points that matter; structural identity is the criterion.
            x.base == y.base && x.updates == y.updates
        }
        _ => false,
    }
}

/// Build a trace object from raw pointers only, for synthetic analyses.
pub fn synthetic_trace(phi: &[usize]) -> DebateTrace {
    let mut moves =
        vec![DebateMove { index: 0, role: None, payload: Payload::Start, pointer: 0, note: None }];
    for (i, &p) in phi.iter().enumerate() {
        let role = if (i + 1) % 2 == 1 { Role::A } else { Role::B };
        moves.push(DebateMove {
            index: i + 1,
            role: Some(role),
            payload: Payload::Disjunct(0),
            pointer: p,
            note: None,
        });
    }
    let board = Formula::zero();
    DebateTrace {
        cut: Formula::one(),
        goal: None,
        cut_spec: FormulaSpec::Sexpr("(leaf 1)".into()),
        goal_spec: None,
        a_name: "synthetic-a".into(),
        b_name: "synthetic-b".into(),
        landings_b: vec![board.clone(); moves.len()],
        contested: vec![true; moves.len()],
        moves,
        outcome: Outcome::BudgetExhausted(phi.len()),
        a_anchor: 0,
        board_b: board,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::examples;
    use crate::formula::OracleFn;
    use crate::strategies;

    fn sample_f() -> OracleFn {
        OracleFn::List { vals: vec![10, 8, 3, 27], default: 27 }
    }

    /// The minimum-value debate: the refuting side concludes with u = 2.
    #[test]
    fn minimum_vs_epsilon_reproduces_the_worked_trace() {
        let cut = examples::minimum(sample_f());
        let goal = examples::descent_goal(sample_f());
        let a = strategies::minimum_strategy(sample_f());
        let b = strategies::epsilon_strategy(sample_f());
        let trace =
            run_debate(a.as_ref(), b.as_ref(), &cut, Some(&goal), &RunOpts::default()).unwrap();
        assert_eq!(trace.outcome, Outcome::BWins);
        assert_eq!(trace.phi()[..6], [0, 1, 2, 1, 4, 1]);
        // The winning move names u = 2: root child 1 + 2.
        let last = trace.moves.last().unwrap();
        assert_eq!(last.role, Some(Role::B));
        assert_eq!(last.payload.nat_index(), Some(3));
        assert_eq!(trace.board_b.nat_index_name(3), "u=2");
        trace.finite_seq().validate().unwrap();
    }

    #[test]
    fn star_debate_reproduces_the_eleven_pointers_and_lassos() {
        let cut = examples::star();
        let a = strategies::star_strategy();
        let b = strategies::star_refuter();
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
        assert_eq!(trace.outcome, Outcome::Lasso { prefix: 3, period: 4 });
        assert_eq!(trace.phi()[..11], [0, 1, 0, 3, 4, 3, 0, 7, 8, 7, 0]);
        // The function moves: constant 1, then one more zeroed point each
        // round.
        let fns = trace.function_moves();
        assert!(fns.len() >= 3);
        let (idx, f0) = &fns[0];
        assert_eq!(*idx, 1);
        assert_eq!((f0.base, f0.updates.as_slice()), (1, &[][..]));
        let (_, f1) = &fns[1];
        assert_eq!((f1.base, f1.updates.as_slice()), (1, &[(0, 0)][..]));
        let (_, f2) = &fns[2];
        assert_eq!((f2.base, f2.updates.as_slice()), (1, &[(0, 0), (1, 0)][..]));
        trace.finite_seq().validate().unwrap();
        // The lasso analysis blames the defender of the false formula.
        let (role, blame) = trace.blame().unwrap();
        assert_eq!(role, Role::A);
        assert_eq!(blame.chain.elements_below(15), vec![0, 2, 6, 10, 14]);
    }

    #[test]
    fn star_debate_budget_cut_short() {
        let cut = examples::star();
        let a = strategies::star_strategy();
        let b = strategies::star_refuter();
        let opts = RunOpts { step_budget: 5, ..RunOpts::default() };
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &opts).unwrap();
        assert_eq!(trace.outcome, Outcome::BudgetExhausted(5));
        assert_eq!(trace.moves.len(), 6);
    }

    #[test]
    fn ackermann_debate_ends_at_the_third_challenge() {
        let cut = examples::ackermann_bound(OracleFn::AckermannDiag);
        let a = strategies::soloviev_enumerator();
        let b = strategies::pr_opponent(strategies::PrFamily::square_plus_3());
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
        assert_eq!(trace.outcome, Outcome::AWins);
        // Challenges x = 0, 1, 2; the answer y = 7 > A(2,2) fails since
        // A(2,2) = 7.
        let xs: Vec<u64> = trace
            .moves
            .iter()
            .filter(|m| m.role == Some(Role::A))
            .filter_map(|m| m.payload.nat_index())
            .collect();
        assert_eq!(xs, vec![0, 1, 2]);
        let last = trace.moves.last().unwrap();
        assert_eq!(last.role, Some(Role::B));
        assert_eq!(last.payload.nat_index(), Some(7));
    }

    #[test]
    fn zero_answers_lose_immediately() {
        let cut = examples::ackermann_bound(OracleFn::AckermannDiag);
        let a = strategies::soloviev_enumerator();
        let b = strategies::pr_opponent(strategies::PrFamily::constant(0));
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
        assert_eq!(trace.outcome, Outcome::AWins);
        // One challenge: x = 0 refutes y = 0 at once (0 <= A(0,0)).
        assert_eq!(trace.moves.len(), 3);
    }

    #[test]
    fn identity_bound_never_ends() {
        let cut = examples::ackermann_bound(OracleFn::Identity);
        let a = strategies::soloviev_enumerator();
        let b = strategies::pr_opponent(strategies::PrFamily::successor());
        let opts = RunOpts { step_budget: 40, ..RunOpts::default() };
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &opts).unwrap();
        // No function moves, so periodicity is not analyzed and the budget
        // is the only stop.
        assert_eq!(trace.outcome, Outcome::BudgetExhausted(40));
    }

    #[test]
    fn lasso_detection_cases() {
        // Terminating debate: no lasso.
        let cut = examples::minimum(sample_f());
        let goal = examples::descent_goal(sample_f());
        let a = strategies::minimum_strategy(sample_f());
        let b = strategies::epsilon_strategy(sample_f());
        let trace =
            run_debate(a.as_ref(), b.as_ref(), &cut, Some(&goal), &RunOpts::default()).unwrap();
        assert_eq!(detect_lasso(&trace), None);
        // Synthetic immediate answers: periodic from the first move; the
        // strict role alternation makes the least period 2.
        let phi: Vec<usize> = (0..12).collect();
        let synth = synthetic_trace(&phi);
        assert_eq!(detect_lasso(&synth), Some((1, 2)));
    }

    #[test]
    fn replay_reproduces_outcomes() {
        // Lasso outcome.
        let cut = examples::star();
        let a = strategies::star_strategy();
        let b = strategies::star_refuter();
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
        let replayed = replay(&trace, &RunOpts::default()).unwrap();
        assert_eq!(replayed.outcome, trace.outcome);
        assert_eq!(replayed.phi(), trace.phi());
        // A win for either role.
        let cut = examples::minimum(sample_f());
        let goal = examples::descent_goal(sample_f());
        let a = strategies::minimum_strategy(sample_f());
        let b = strategies::epsilon_strategy(sample_f());
        let trace =
            run_debate(a.as_ref(), b.as_ref(), &cut, Some(&goal), &RunOpts::default()).unwrap();
        let replayed = replay(&trace, &RunOpts::default()).unwrap();
        assert_eq!(replayed.outcome, Outcome::BWins);
        assert_eq!(replayed.phi(), trace.phi());
        let cut = examples::ackermann_bound(OracleFn::AckermannDiag);
        let a = strategies::soloviev_enumerator();
        let b = strategies::pr_opponent(strategies::PrFamily::square_plus_3());
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
        let replayed = replay(&trace, &RunOpts::default()).unwrap();
        assert_eq!(replayed.outcome, Outcome::AWins);
        assert_eq!(replayed.phi(), trace.phi());
    }
}

#[cfg(test)]
mod audit_tests {
    use super::*;
    use crate::formula::examples;
    use crate::strategies;

    #[test]
    fn refuter_audits_clean_on_the_star_debate() {
        let cut = examples::star();
        let a = strategies::star_strategy();
        let b = strategies::star_refuter();
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
        let fresh = strategies::star_refuter();
        let verdict = continuity_audit(&trace, Role::B, fresh.as_ref(), 24, 11);
        assert_eq!(verdict, AuditVerdict::ConsistentWithContinuity);
    }
}

#[cfg(test)]
mod edge_tests {
    use super::*;
    use crate::formula::examples;
    use crate::formula::OracleFn;
    use crate::strategies;

    #[test]
    fn zero_budget_trace_has_only_the_start_move() {
        let cut = examples::star();
        let a = strategies::star_strategy();
        let b = strategies::star_refuter();
        let opts = RunOpts { step_budget: 0, ..RunOpts::default() };
        let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &opts).unwrap();
        assert_eq!(trace.outcome, Outcome::BudgetExhausted(0));
        assert_eq!(trace.moves.len(), 1);
        let json = export::to_json(&trace);
        let doc = export::parse_json(&json).unwrap();
        assert_eq!(doc.moves.len(), 1);
        assert_eq!(doc.moves[0].kind, "start");
    }

    #[test]
    fn illegal_moves_are_attributed() {
        struct Cheater;
        impl crate::arena::Strategy for Cheater {
            fn name(&self) -> &str {
                "cheater"
            }
            fn propose(&self, seat: &crate::arena::SeatView) -> Option<crate::arena::ProposedMove> {
                // Points at its own previous move's landing, which is a
                // conjunction on its board: not answerable by it.
                Some(crate::arena::ProposedMove::new(
                    seat.next_index.saturating_sub(1),
                    crate::arena::Payload::Disjunct(0),
                ))
            }
        }
        let cut = examples::minimum(OracleFn::Const(3));
        let goal = examples::descent_goal(OracleFn::Const(3));
        let b = strategies::epsilon_strategy(OracleFn::Const(3));
        let err = match run_debate(&Cheater, b.as_ref(), &cut, Some(&goal), &RunOpts::default()) {
            Err(e) => e,
            Ok(_) => panic!("expected an illegal-move error"),
        };
        match err {
            DebateError::Illegal { role, .. } => assert_eq!(role, Role::A),
            other => panic!("expected an illegal-move error, got {other}"),
        }
    }
}
