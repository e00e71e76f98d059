//! Built-in strategies and opponent families.
//!
//! Each constructor returns a [`Strategy`] that re-derives its decision from
//! the visible history every turn, so instances are pure and deterministic.
//! The same implementation drives a seat whether the opponent is a strict
//! game environment or the other role of a debate.

use crate::arena::{FunctionHandle, Payload, ProposedMove, SeatView, Strategy, VisibleMove};
use crate::formula::{canonicalize, negate, Formula, Kind, OracleFn, PredOracle};

pub type BoxStrategy = Box<dyn Strategy + Send + Sync>;

/// `a or not-a` in canonical form: the board the copy-cat strategy wins.
pub fn excluded_middle(a: &Formula) -> Formula {
    canonicalize(&Formula::disj(vec![a.clone(), negate(a)]))
}

/// Mirrors the environment between the two dual halves of
/// `excluded_middle(a)`: every answer the environment gives on one side is
/// replayed on the other, until a leaf pair resolves in this seat's favor.
pub fn copycat(a: &Formula) -> BoxStrategy {
    Box::new(Copycat { base: canonicalize(a) })
}

struct Copycat {
    base: Formula,
}

impl Strategy for Copycat {
    fn name(&self) -> &str {
        "copycat"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let my_first = seat.my_moves().next().map(|m| m.index);
        let Some(first) = my_first else {
            // Opening move. Leaf bases resolve immediately; otherwise open
            // the universal half so the environment commits first.
            if self.base.is_leaf() {
                let root = seat.moves.first()?.landing.as_ref()?;
                let size = root.nat_family_size()?;
                for i in 0..size {
                    if root.child_nat(i)?.leaf_value() == Some(true) {
                        return Some(ProposedMove::new(0, Payload::Disjunct(i)));
                    }
                }
                return None;
            }
            let idx = match self.base.kind() {
                // Root children: [base, spliced duals...]
                Kind::Conj => 0,
                // Root children: [spliced base children..., dual]
                Kind::Disj => self.base.children().head.len() as u64,
            };
            return Some(ProposedMove::new(0, Payload::Disjunct(idx)));
        };
        // Mirror the environment's last answer.
        let env = seat.env_moves().last()?;
        let j = env.payload.nat_index()?;
        let answered_my = env.pointer;
        if answered_my == first {
            let dual_base = match self.base.kind() {
                Kind::Conj => 1,
                Kind::Disj => 0,
            };
            return Some(ProposedMove::new(0, Payload::Disjunct(dual_base + j)));
        }
        // My earlier move at `answered_my` mirrored the environment move
        // just before it; answer the same index there.
        if answered_my == 0 {
            return None;
        }
        Some(ProposedMove::new(answered_my - 1, Payload::Disjunct(j)))
    }
}

/// Defends `or_x and_y f(x) <= f(y)`: starts at `x = 0` and, each time the
/// environment exhibits a smaller value, moves the claim there. The number
/// of choices is bounded by one plus the strict descents of `f` along the
/// play.
pub fn minimum_strategy(f: OracleFn) -> BoxStrategy {
    Box::new(Minimum { f })
}

struct Minimum {
    f: OracleFn,
}

impl Strategy for Minimum {
    fn name(&self) -> &str {
        "minimum"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let my_claims: Vec<&VisibleMove> =
            seat.my_moves().filter(|m| m.pointer == seat.anchor).collect();
        let Some(current) = my_claims.last() else {
            return Some(ProposedMove::new(seat.anchor, Payload::Disjunct(0)));
        };
        let x_cur = current.payload.nat_index()?;
        // The environment's newest leaf answer on my board.
        let refutation = seat
            .env_moves()
            .rev()
            .find(|m| m.landing.as_ref().is_some_and(|l| l.is_leaf()))?;
        let y = refutation.payload.nat_index()?;
        let smaller = match (self.f.eval(y), self.f.eval(x_cur)) {
            (Some(fy), Some(fx)) => fy < fx,
            _ => false,
        };
        if smaller {
            Some(ProposedMove::new(seat.anchor, Payload::Disjunct(y)))
        } else {
            None
        }
    }
}

/// Plays `(and_n or_m f(n) > f(m)) or or_u f(u) <= f(u+1)`: asks for `n`,
/// then either names the descent witness `u = a` at the root or answers
/// `m = a + 1`, winning within two choices.
pub fn epsilon_strategy(f: OracleFn) -> BoxStrategy {
    Box::new(Epsilon { f })
}

struct Epsilon {
    f: OracleFn,
}

impl Strategy for Epsilon {
    fn name(&self) -> &str {
        "epsilon"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let Some(ask) = seat.my_moves().next() else {
            return Some(ProposedMove::new(seat.anchor, Payload::Disjunct(0)));
        };
        let ask_index = ask.index;
        let answer = seat
            .env_moves()
            .rev()
            .find(|m| m.pointer == ask_index && !seat.my_moves().any(|r| r.pointer == m.index))?;
        let a = answer.payload.nat_index()?;
        let decreasing = match (self.f.eval(a), self.f.eval(a + 1)) {
            (Some(fa), Some(fa1)) => fa > fa1,
            _ => false,
        };
        if decreasing {
            Some(ProposedMove::new(answer.index, Payload::Disjunct(a + 1)))
        } else {
            // Root re-entry at the goal family: child 0 is the conjunction
            // asking for n, the descent witnesses follow.
            let mv = ProposedMove::new(seat.anchor, Payload::Disjunct(1 + a));
            Some(ProposedMove { note: Some("re-entry at the goal family"), ..mv })
        }
    }
}

/// Defends the choice formula: plays the zero function, opens the
/// counterexample side at each challenged point to learn its witness, and
/// folds the witnesses back into the function until the environment must
/// concede a point it already answered.
pub fn countable_choice_strategy(p: PredOracle) -> BoxStrategy {
    Box::new(Choice { _p: p })
}

struct Choice {
    _p: PredOracle,
}

impl Strategy for Choice {
    fn name(&self) -> &str {
        "choice"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let my_fns: Vec<&VisibleMove> = seat
            .my_moves()
            .filter(|m| matches!(m.payload, Payload::Function(_)))
            .collect();
        if my_fns.is_empty() {
            return Some(ProposedMove::new(seat.anchor, Payload::Function(FunctionHandle::constant(0))));
        }
        let env = seat.env_moves().last()?;
        let fn_indices: Vec<usize> = my_fns.iter().map(|m| m.index).collect();
        if fn_indices.contains(&env.pointer) {
            // A fresh challenge x: open the counterexample family there.
            let x = env.payload.nat_index()?;
            return Some(ProposedMove::new(seat.anchor, Payload::Disjunct(x)));
        }
        // A witness y for one of my openings: extend the function.
        let opened = seat.my_moves().find(|m| m.index == env.pointer)?;
        let x = opened.payload.nat_index()?;
        let y = env.payload.nat_index()?;
        let Payload::Function(cur) = &my_fns.last()?.payload else { return None };
        Some(ProposedMove::new(seat.anchor, Payload::Function(cur.updated(x, y))))
    }
}

/// Defends `or_f and_x or_y (f(x) = 0 and f(y) != 0)`: plays the constant-1
/// function and, at round `k`, either wins with `y = k` when challenged
/// below `k` or zeroes one more point.
pub fn star_strategy() -> BoxStrategy {
    Box::new(Star)
}

struct Star;

impl Strategy for Star {
    fn name(&self) -> &str {
        "star"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let my_fns: Vec<&VisibleMove> = seat
            .my_moves()
            .filter(|m| matches!(m.payload, Payload::Function(_)))
            .collect();
        if my_fns.is_empty() {
            return Some(ProposedMove::new(seat.anchor, Payload::Function(FunctionHandle::constant(1))));
        }
        let round = my_fns.len() as u64 - 1;
        let fn_indices: Vec<usize> = my_fns.iter().map(|m| m.index).collect();
        let challenge = seat.env_moves().rev().find(|m| fn_indices.contains(&m.pointer))?;
        let x = challenge.payload.nat_index()?;
        if x < round {
            Some(ProposedMove::new(challenge.index, Payload::Disjunct(round)))
        } else {
            let Payload::Function(cur) = &my_fns.last()?.payload else { return None };
            Some(ProposedMove::new(seat.anchor, Payload::Function(cur.updated(round, 0))))
        }
    }
}

/// Refutes the same formula from the dual side: after the environment plays
/// `f = g`, asks `x = 0`, and either the answer refutes itself or one
/// backtrack to `x = y0` does, within two choices.
pub fn star_refuter() -> BoxStrategy {
    Box::new(StarRefuter)
}

struct StarRefuter;

impl Strategy for StarRefuter {
    fn name(&self) -> &str {
        "star-refuter"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let g_move = seat.newest_env_function()?;
        let Payload::Function(g) = &g_move.payload else { return None };
        let my_xs: Vec<&VisibleMove> =
            seat.my_moves().filter(|m| m.pointer == g_move.index).collect();
        let Some(last_x) = my_xs.last() else {
            return Some(ProposedMove::new(g_move.index, Payload::Disjunct(0)));
        };
        let x = last_x.payload.nat_index()?;
        let answer = seat.env_moves().rev().find(|m| m.pointer == last_x.index)?;
        let y0 = answer.payload.nat_index()?;
        if g.get(x) != 0 || g.get(y0) == 0 {
            // The answered leaf already holds on this board.
            return Some(ProposedMove::new(answer.index, Payload::ClaimLeaf));
        }
        if my_xs.len() == 1 {
            Some(ProposedMove::new(g_move.index, Payload::Disjunct(y0)))
        } else {
            None
        }
    }
}

/// Plays `x = 0, 1, 2, ...` for `or_x and_y y <= f(x)`, waiting for the
/// environment's bound to fall below `f`.
pub fn soloviev_enumerator() -> BoxStrategy {
    Box::new(Enumerator)
}

struct Enumerator;

impl Strategy for Enumerator {
    fn name(&self) -> &str {
        "soloviev"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let next = seat.my_moves().count() as u64;
        Some(ProposedMove::new(seat.anchor, Payload::Disjunct(next)))
    }
}

/// A designated primitive-recursive answer family for the dual board
/// `and_x or_y y > f(x)`: each challenge `x = n` is answered `y = fam(n)`.
#[derive(Clone)]
pub struct PrFamily {
    pub name: String,
    f: std::sync::Arc<dyn Fn(u64) -> u64 + Send + Sync>,
}

impl PrFamily {
    pub fn new(name: impl Into<String>, f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> PrFamily {
        PrFamily { name: name.into(), f: std::sync::Arc::new(f) }
    }

    pub fn square_plus_3() -> PrFamily {
        PrFamily::new("n^2+3", |n| n * n + 3)
    }

    pub fn successor() -> PrFamily {
        PrFamily::new("n+1", |n| n + 1)
    }

    pub fn constant(k: u64) -> PrFamily {
        PrFamily::new(format!("const {k}"), move |_| k)
    }

    pub fn at(&self, n: u64) -> u64 {
        (self.f)(n)
    }

    pub fn parse(spec: &str) -> Result<PrFamily, String> {
        match spec {
            "square-plus-3" | "n^2+3" => Ok(PrFamily::square_plus_3()),
            "succ" | "n+1" => Ok(PrFamily::successor()),
            other => match other.strip_prefix("const:") {
                Some(k) => {
                    let k = k.parse().map_err(|_| format!("bad constant in `{other}`"))?;
                    Ok(PrFamily::constant(k))
                }
                None => Err(format!("unknown primitive-recursive family `{other}`")),
            },
        }
    }
}

pub fn pr_opponent(family: PrFamily) -> BoxStrategy {
    Box::new(PrOpponent { family })
}

struct PrOpponent {
    family: PrFamily,
}

impl Strategy for PrOpponent {
    fn name(&self) -> &str {
        "pr-opponent"
    }

    fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
        let challenge = seat
            .env_moves()
            .rev()
            .find(|m| m.pointer == seat.anchor && !seat.my_moves().any(|r| r.pointer == m.index))?;
        let n = challenge.payload.nat_index()?;
        Some(ProposedMove::new(challenge.index, Payload::Disjunct(self.family.at(n))))
    }
}

/// Opponent families for single-board games (the environment seat).
pub mod opponents {
    use super::*;

    /// Continuous challenger for the constant-then-zeroed function game:
    /// reads the played function on the window `0..window` only, answering
    /// the least nonzero point it sees, or the first point past the window
    /// once the window is all zero. Wins are therefore forced by round
    /// `window + 1`.
    pub fn continuous_star_opponent(window: u64) -> BoxStrategy {
        Box::new(WindowChallenger { window })
    }

    struct WindowChallenger {
        window: u64,
    }

    impl Strategy for WindowChallenger {
        fn name(&self) -> &str {
            "window-challenger"
        }

        fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
            let last = seat.moves.last()?;
            let Payload::Function(h) = &last.payload else { return None };
            let mut x = self.window;
            for p in 0..self.window {
                if h.get(p) != 0 {
                    x = p;
                    break;
                }
            }
            Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(x)))
        }
    }

    /// Continuous challenger for the choice game, intending the choice
    /// function `h`: challenges the least window point where the played
    /// function disagrees with `h`, and witnesses counterexample openings
    /// with `h` itself.
    pub fn continuous_choice_opponent(h: OracleFn, window: u64) -> BoxStrategy {
        Box::new(ChoiceChallenger { h, window })
    }

    struct ChoiceChallenger {
        h: OracleFn,
        window: u64,
    }

    impl ChoiceChallenger {
        fn h_at(&self, x: u64) -> u64 {
            self.h.eval(x).and_then(|v| v.try_into().ok()).unwrap_or(0)
        }
    }

    impl Strategy for ChoiceChallenger {
        fn name(&self) -> &str {
            "choice-challenger"
        }

        fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
            let last = seat.moves.last()?;
            match &last.payload {
                Payload::Function(f) => {
                    let mut x = 0;
                    for p in 0..self.window {
                        if f.get(p) != self.h_at(p) {
                            x = p;
                            break;
                        }
                    }
                    Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(x)))
                }
                _ => {
                    // The seat opened a counterexample family at some x;
                    // answer its intended witness.
                    let x = last.payload.nat_index()?;
                    Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(self.h_at(x))))
                }
            }
        }
    }

    /// Discontinuous challenger: scans the played function for its least
    /// zero through unlogged reads, so its answers depend on points no
    /// query log accounts for.
    pub fn discontinuous_zero_seeker() -> BoxStrategy {
        Box::new(ZeroSeeker)
    }

    struct ZeroSeeker;

    impl Strategy for ZeroSeeker {
        fn name(&self) -> &str {
            "zero-seeker"
        }

        fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
            let last = seat.moves.last()?;
            let Payload::Function(h) = &last.payload else { return None };
            let x = (0..10_000).find(|&p| h.get_quiet(p) == 0).unwrap_or(9_999);
            Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(x)))
        }
    }

    /// Environment playing a fixed function `g` at the root and then doing
    /// its best to falsify each opening: it answers `y` with `g(y)` nonzero
    /// whenever the opening point has `g(x) = 0`.
    pub fn fixed_function_abe(g: FunctionHandle) -> BoxStrategy {
        Box::new(FixedFunction { g })
    }

    struct FixedFunction {
        g: FunctionHandle,
    }

    impl Strategy for FixedFunction {
        fn name(&self) -> &str {
            "fixed-function"
        }

        fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
            let last = seat.moves.last()?;
            if matches!(last.payload, Payload::Start) {
                return Some(ProposedMove::new(0, Payload::Function(self.g.clone())));
            }
            let x = last.payload.nat_index()?;
            if self.g.get_quiet(x) != 0 {
                // Every witness leaf holds for the opponent; concede the
                // point gracefully.
                return Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(0)));
            }
            // Find y with g(y) != 0.
            let y = if self.g.base != 0 {
                let past = self.g.updates.iter().map(|(p, _)| p + 1).max().unwrap_or(0);
                Some(past)
            } else {
                self.g.updates.iter().find(|(_, v)| *v != 0).map(|(p, _)| *p)
            };
            Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(y.unwrap_or(0))))
        }
    }

    /// Pseudo-random but deterministic environment: answers conjunctions
    /// with an index derived from the seed and the stage.
    pub fn random_abe(seed: u64) -> BoxStrategy {
        Box::new(RandomAbe { seed })
    }

    struct RandomAbe {
        seed: u64,
    }

    fn mix(seed: u64, n: u64) -> u64 {
        let mut x = seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        x ^= x >> 30;
        x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x ^= x >> 27;
        x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^ (x >> 31)
    }

    impl Strategy for RandomAbe {
        fn name(&self) -> &str {
            "random-abe"
        }

        fn propose(&self, seat: &SeatView) -> Option<ProposedMove> {
            let last = seat.moves.last()?;
            let landing = last.landing.as_ref()?;
            let r = mix(self.seed, seat.next_index as u64);
            if landing.children().fun.is_some() && landing.nat_family_size() == Some(0) {
                let base = r % 2;
                let updates = vec![(r % 5, (r >> 8) % 3)];
                return Some(ProposedMove::new(
                    seat.next_index - 1,
                    Payload::Function(FunctionHandle::with_updates(base, updates)),
                ));
            }
            let limit = landing.nat_family_size().unwrap_or(32).max(1);
            Some(ProposedMove::new(seat.next_index - 1, Payload::Conjunct(r % limit)))
        }
    }
}
