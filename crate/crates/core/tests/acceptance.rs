//! Acceptance suite: one test per criterion, each printing a pass line when
//! its assertions hold. Tolerances are exact; the random corpora are seeded
//! and admit zero violations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use debate_core::arena::{
    continuity_audit_game, run_game, AuditVerdict, FunctionHandle, Payload, Player,
};
use debate_core::debate::{self, run_debate, Outcome, Role, RunOpts};
use debate_core::formula::examples::{self, build_example, ExampleName, ExampleOracle};
use debate_core::formula::{
    eval_finite, is_classically_valid, is_intuitionistically_valid, Budget, Formula, OracleFn,
    PredOracle, Validity3,
};
use debate_core::pointer::{self, nest_check, Parity};
use debate_core::strategies::{self, opponents};

fn pass(n: u32, what: &str) {
    println!("PASS criterion {n}: {what}");
}

fn descent_f() -> OracleFn {
    OracleFn::List { vals: vec![10, 8, 3, 27], default: 27 }
}

/// Criterion 1: the minimum-value debate ends with the refuter naming
/// u = 2 after exactly the recorded six pointers.
#[test]
fn criterion_01_minimum_debate_reproduction() {
    let cut = examples::minimum(descent_f());
    let goal = examples::descent_goal(descent_f());
    let a = strategies::minimum_strategy(descent_f());
    let b = strategies::epsilon_strategy(descent_f());
    let trace =
        run_debate(a.as_ref(), b.as_ref(), &cut, Some(&goal), &RunOpts::default()).unwrap();
    assert_eq!(trace.outcome, Outcome::BWins);
    assert_eq!(trace.phi()[..6], [0, 1, 2, 1, 4, 1]);
    let winning = trace.moves.last().unwrap();
    assert_eq!(winning.role, Some(Role::B));
    assert_eq!(trace.board_b.nat_index_name(winning.payload.nat_index().unwrap()), "u=2");
    pass(1, "phi(1..6) = 0,1,2,1,4,1 and B wins with u=2");
}

/// Criterion 2: the function-update debate reproduces the eleven pointers,
/// the first three played functions, and closes as a lasso of period 4
/// after a prefix of 3.
#[test]
fn criterion_02_star_debate_reproduction() {
    let cut = examples::star();
    let a = strategies::star_strategy();
    let b = strategies::star_refuter();
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
    assert_eq!(trace.phi()[..11], [0, 1, 0, 3, 4, 3, 0, 7, 8, 7, 0]);
    assert_eq!(trace.outcome, Outcome::Lasso { prefix: 3, period: 4 });
    let fns = trace.function_moves();
    assert_eq!((fns[0].1.base, fns[0].1.updates.clone()), (1, vec![]));
    assert_eq!((fns[1].1.base, fns[1].1.updates.clone()), (1, vec![(0, 0)]));
    assert_eq!((fns[2].1.base, fns[2].1.updates.clone()), (1, vec![(0, 0), (1, 0)]));
    pass(2, "phi(1..11) exact, Lasso(3,4), functions 1, 1[0->0], 1[0->0,1->0]");
}

/// Criterion 3: definite segments of random valid sequences always nest.
#[test]
fn criterion_03_nest_over_random_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e65_7374);
    let mut checked = 0usize;
    for _ in 0..10_000 {
        let len = 2 + (rand::Rng::gen_range(&mut rng, 0..199));
        let seq = pointer::random_valid_seq(&mut rng, len);
        seq.validate().unwrap();
        let definite = seq.definite_segments(seq.positions());
        assert!(
            nest_check(&definite.segments).is_ok(),
            "nest violation in {:?}",
            seq.phi()
        );
        checked += 1;
    }
    assert_eq!(checked, 10_000);
    pass(3, "definite segments nest on 10^4 random sequences (len <= 200)");
}

/// Criterion 4: at every stage of the same corpus the canonical partition
/// tiles `[0, n)` and its right endpoints are exactly the view.
#[test]
fn criterion_04_partition_view_coherence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7669_6577);
    for _ in 0..10_000 {
        let len = 2 + (rand::Rng::gen_range(&mut rng, 0..199));
        let seq = pointer::random_valid_seq(&mut rng, len);
        for n in 1..seq.positions() {
            let segs = seq.segments_partition(n).unwrap();
            let mut covered = vec![false; n];
            for s in &segs {
                for i in s.lo..=s.hi {
                    assert!(!covered[i], "overlap at stage {n}");
                    covered[i] = true;
                }
            }
            assert!(covered.into_iter().all(|c| c), "gap at stage {n}");
            let endpoints: Vec<usize> = segs.iter().map(|s| s.hi).collect();
            assert_eq!(endpoints, seq.view(n).unwrap(), "endpoints != view at stage {n}");
        }
    }
    pass(4, "partitions tile [0,n) with right endpoints equal to the view");
}

/// Criterion 5: the star lasso has the unique even chain 0, 2, 6, 10, ...;
/// exhaustive search over unrollings up to length 60 finds no second full
/// chain; blame names role A.
#[test]
fn criterion_05_unique_chain_and_blame() {
    let cut = examples::star();
    let a = strategies::star_strategy();
    let b = strategies::star_refuter();
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
    let lasso = trace.lasso_seq().unwrap();
    let chain = pointer::omega_chain(&lasso).unwrap();
    assert_eq!(chain.elements_below(19), vec![0, 2, 6, 10, 14, 18]);
    assert_eq!(chain.parity(), Some(Parity::Even));

    // Independent exhaustive oracle: sweep every unrolling up to length 60,
    // tracking the chains that stay full (maximal, partitioning, reaching
    // within one period of the window end) from the smallest window on.
    // Branches that die drop out as the window grows past them; what a
    // finite window cannot decide is its own final two periods, so
    // uniqueness is read below that margin.
    let full_at = |window: usize| -> Vec<Vec<usize>> {
        pointer::brute_force_chains(&lasso.unroll(window), window)
            .into_iter()
            .filter(|c| c.partitions_upto.is_some())
            .filter(|c| c.elements.last().unwrap() + lasso.period() >= window)
            .map(|c| c.elements)
            .collect()
    };
    let windows: Vec<usize> =
        (2..).map(|k| lasso.cycle_start() + k * lasso.period()).take_while(|&w| w <= 60).collect();
    let mut tracked = full_at(windows[0]);
    for &w in &windows[1..] {
        let now = full_at(w);
        let mut next: Vec<Vec<usize>> = now
            .into_iter()
            .filter(|s2| tracked.iter().any(|s1| s2.starts_with(s1)))
            .collect();
        next.dedup();
        tracked = next;
    }
    let last_window = *windows.last().unwrap();
    let margin = last_window - 2 * lasso.period();
    let mut courses: Vec<Vec<usize>> = tracked
        .iter()
        .map(|s| s.iter().copied().filter(|&e| e < margin).collect())
        .collect();
    courses.sort();
    courses.dedup();
    assert_eq!(courses.len(), 1, "exactly one full chain, got {tracked:?}");
    assert_eq!(courses[0], chain.elements_below(margin));

    let (blamed, blame) = trace.blame().unwrap();
    assert_eq!(blame.blamed_parity, Parity::Odd);
    assert_eq!(blamed, Role::A);
    pass(5, "unique even chain 0,2,6,10,...; exhaustive search agrees; blame = A");
}

/// Criterion 6: extending the star lasso at n = 2 yields the view
/// {w, 1, 0} at w+1, and the extended sequence still validates.
#[test]
fn criterion_06_transfinite_extension() {
    let cut = examples::star();
    let a = strategies::star_strategy();
    let b = strategies::star_refuter();
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
    let lasso = trace.lasso_seq().unwrap();
    let ext = pointer::extend_transfinite(&lasso, 2).unwrap();
    let view = match ext.view(pointer::Position { limit: 1, offset: 1 }) {
        pointer::ViewSet::Finite(v) => v,
        _ => panic!("the view after the limit is finite"),
    };
    assert_eq!(
        view,
        vec![
            pointer::Position::omega(),
            pointer::Position::finite(1),
            pointer::Position::finite(0)
        ]
    );
    ext.validate().unwrap();
    pass(6, "V(w+1) = {w, 1, 0} after choosing n = 2; extended sequence validates");
}

/// Criterion 7: copy-cat, the minimum defender, and the refuter never lose
/// across their corpora.
#[test]
fn criterion_07_strategy_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x736f_756e);
    // Copy-cat over 100 random finite formulas.
    for i in 0..100 {
        let a = random_finite_formula(&mut rng, 3);
        let board = strategies::excluded_middle(&a);
        let rec = run_game(
            &board,
            strategies::copycat(&a).as_ref(),
            opponents::random_abe(i as u64).as_ref(),
            128,
        )
        .unwrap();
        assert_eq!(rec.winner, Some(Player::Eloise), "copycat lost on {a}");
    }
    // Minimum defender: 20 finite-support oracles x 100 fuzzed environments.
    for fi in 0..20 {
        let vals: Vec<u64> =
            (0..5).map(|_| rand::Rng::gen_range(&mut rng, 0..50)).collect();
        let default = *vals.last().unwrap();
        let f = OracleFn::List { vals, default };
        let board = examples::minimum(f.clone());
        for gi in 0..100 {
            let rec = run_game(
                &board,
                strategies::minimum_strategy(f.clone()).as_ref(),
                opponents::random_abe(fi * 100 + gi).as_ref(),
                64,
            )
            .unwrap();
            assert_eq!(rec.winner, Some(Player::Eloise), "minimum lost on {f}");
            // Choice count bounded by one plus the strict descents.
            let xs: Vec<u64> = rec
                .state
                .moves()
                .iter()
                .filter(|m| m.player == Player::Eloise)
                .filter_map(|m| m.payload.nat_index())
                .collect();
            let descents = xs
                .windows(2)
                .filter(|w| f.eval(w[1]).unwrap() < f.eval(w[0]).unwrap())
                .count();
            assert_eq!(xs.len(), 1 + descents);
        }
    }
    // The refuter against a 100-function corpus, within two choices.
    let board = examples::star_negation();
    for i in 0..100u64 {
        let base = i % 3;
        let updates: Vec<(u64, u64)> =
            (0..(i % 7)).map(|k| (k, (i / 7 + k) % 4)).collect();
        let g = FunctionHandle::with_updates(base, updates);
        let rec = run_game(
            &board,
            strategies::star_refuter().as_ref(),
            opponents::fixed_function_abe(g.clone()).as_ref(),
            32,
        )
        .unwrap();
        assert_eq!(rec.winner, Some(Player::Eloise), "refuter lost on {g}");
        let x_choices = rec
            .state
            .moves()
            .iter()
            .filter(|m| {
                m.player == Player::Eloise && matches!(m.payload, Payload::Disjunct(_))
            })
            .count();
        assert!(x_choices <= 2, "refuter used {x_choices} choices on {g}");
    }
    pass(7, "copycat 100/100, minimum 20x100 within the descent bound, refuter 100/100 in <= 2 choices");
}

/// Criterion 8: both function-playing strategies beat the whole shipped
/// continuous family within documented bounds, and the audit separates the
/// continuous opponents from the discontinuous one.
#[test]
fn criterion_08_continuity_claims() {
    let star_board = examples::star();
    for w in 1..=8 {
        let abe = opponents::continuous_star_opponent(w);
        let rec = run_game(&star_board, strategies::star_strategy().as_ref(), abe.as_ref(), 128)
            .unwrap();
        assert_eq!(rec.winner, Some(Player::Eloise), "window {w}");
        let final_y = rec
            .state
            .moves()
            .iter()
            .rev()
            .find(|m| m.player == Player::Eloise)
            .and_then(|m| m.payload.nat_index())
            .unwrap();
        assert!(final_y <= w + 1, "window {w}: won by y = {final_y} > {}", w + 1);
        // The audit clears every continuous opponent.
        let fresh = opponents::continuous_star_opponent(w);
        assert_eq!(
            continuity_audit_game(&rec, Player::Abelard, fresh.as_ref(), 32, 1000 + w),
            AuditVerdict::ConsistentWithContinuity,
            "window {w} flagged"
        );
    }
    // Choice games: h differs from zero on d window points; the defender
    // needs at most d + 1 function moves.
    for w in 1..=8 {
        let h_vals: Vec<u64> = (0..w).map(|k| if k % 2 == 0 { k + 3 } else { 0 }).collect();
        let h = OracleFn::List { vals: h_vals.clone(), default: 0 };
        let p = PredOracle::graph_of(h.clone());
        let board = examples::choice(p.clone());
        let abe = opponents::continuous_choice_opponent(h.clone(), w);
        let rec = run_game(
            &board,
            strategies::countable_choice_strategy(p).as_ref(),
            abe.as_ref(),
            128,
        )
        .unwrap();
        assert_eq!(rec.winner, Some(Player::Eloise), "choice window {w}");
        let fn_moves = rec
            .state
            .moves()
            .iter()
            .filter(|m| matches!(m.payload, Payload::Function(_)))
            .count();
        let disagreements = h_vals.iter().filter(|&&v| v != 0).count();
        assert!(
            fn_moves <= disagreements + 1,
            "choice window {w}: {fn_moves} function moves > {} + 1",
            disagreements
        );
        let fresh = opponents::continuous_choice_opponent(h, w);
        assert_eq!(
            continuity_audit_game(&rec, Player::Abelard, fresh.as_ref(), 32, 2000 + w),
            AuditVerdict::ConsistentWithContinuity,
            "choice window {w} flagged"
        );
    }
    // The discontinuous opponent is flagged with a witness.
    let abe = opponents::discontinuous_zero_seeker();
    let rec =
        run_game(&star_board, strategies::star_strategy().as_ref(), abe.as_ref(), 64).unwrap();
    let fresh = opponents::discontinuous_zero_seeker();
    let verdict = continuity_audit_game(&rec, Player::Abelard, fresh.as_ref(), 32, 99);
    assert!(matches!(verdict, AuditVerdict::Violation { .. }), "zero seeker not flagged");
    pass(8, "continuous family beaten within bounds and audited clean; zero-seeker flagged");
}

/// Criterion 9: against the Ackermann diagonal the enumerator wins at
/// n = 2 (A(2,2) = 7 and the answer 2^2+3 = 7 is not above it); against the
/// identity the debate runs out of budget.
#[test]
fn criterion_09_dominating_bound() {
    let cut = examples::ackermann_bound(OracleFn::AckermannDiag);
    let a = strategies::soloviev_enumerator();
    let b = strategies::pr_opponent(strategies::PrFamily::square_plus_3());
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
    assert_eq!(trace.outcome, Outcome::AWins);
    let xs: Vec<u64> = trace
        .moves
        .iter()
        .filter(|m| m.role == Some(Role::A))
        .filter_map(|m| m.payload.nat_index())
        .collect();
    assert_eq!(xs, vec![0, 1, 2]);

    let cut = examples::ackermann_bound(OracleFn::Identity);
    let b = strategies::pr_opponent(strategies::PrFamily::successor());
    let a = strategies::soloviev_enumerator();
    let opts = RunOpts { step_budget: 40, ..RunOpts::default() };
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &opts).unwrap();
    assert_eq!(trace.outcome, Outcome::BudgetExhausted(40));
    pass(9, "Ackermann diagonal beaten at n = 2; identity bound exhausts the budget");
}

/// Criterion 10: the two validity checkers and boolean evaluation agree on
/// 500 random finite formulas.
#[test]
fn criterion_10_validity_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7661_6c69);
    let budget = Budget::default();
    for i in 0..500 {
        let a = random_finite_formula(&mut rng, 4);
        let truth = eval_finite(&a).unwrap();
        let want = if truth { Validity3::Valid } else { Validity3::Invalid };
        assert_eq!(is_intuitionistically_valid(&a, budget), want, "case {i}: {a}");
        assert_eq!(is_classically_valid(&a, budget), want, "case {i}: {a}");
    }
    pass(10, "intuitionistic, classical and boolean verdicts agree on 500 formulas");
}

/// Exercises the named-formula constructor used throughout: each name
/// resolves with its oracle.
#[test]
fn named_formulas_build() {
    let f = ExampleOracle::with_f(descent_f());
    for name in [ExampleName::Minimum, ExampleName::EpsilonGoal] {
        build_example(name, &f).unwrap();
    }
    build_example(ExampleName::Star, &ExampleOracle::default()).unwrap();
    build_example(ExampleName::StarNegation, &ExampleOracle::default()).unwrap();
    build_example(
        ExampleName::AckermannBound,
        &ExampleOracle::with_f(OracleFn::AckermannDiag),
    )
    .unwrap();
    build_example(
        ExampleName::Choice,
        &ExampleOracle::with_pred(PredOracle::graph_of(OracleFn::Const(0))),
    )
    .unwrap();
    assert!(build_example(ExampleName::Choice, &ExampleOracle::default()).is_err());
}

/// The epsilon board arises both as a named formula and as the canonical
/// negated-cut-plus-goal construction; the trees agree.
#[test]
fn epsilon_board_is_the_negated_cut_with_goal() {
    let f = descent_f();
    let named = examples::epsilon_goal(f.clone());
    let built = debate_core::formula::or2(
        &debate_core::formula::negate(&examples::minimum(f.clone())),
        &examples::descent_goal(f),
    );
    assert!(debate_core::formula::equal_explored(&named, &built, 6, 6));
}

/// Debate traces survive the JSON round trip and replay to the identical
/// outcome.
#[test]
fn trace_round_trip() {
    let cut = examples::star();
    let a = strategies::star_strategy();
    let b = strategies::star_refuter();
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
    let json = debate::export::to_json(&trace);
    let doc = debate::export::parse_json(&json).unwrap();
    let moves = debate::export::moves_from_doc(&doc).unwrap();
    assert_eq!(moves.len(), trace.moves.len());
    let outcome = debate::export::outcome_from_doc(&doc).unwrap();
    assert_eq!(outcome, trace.outcome);
    // Replay the imported moves through the engine.
    let replayed = {
        let a = debate::Scripted::new(Role::A, &moves);
        let b = debate::Scripted::new(Role::B, &moves);
        run_debate(&a, &b, &trace.cut, None, &RunOpts::default()).unwrap()
    };
    assert_eq!(replayed.outcome, trace.outcome);
    assert_eq!(replayed.phi(), trace.phi());
}

fn random_finite_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    use rand::Rng;
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) { Formula::one() } else { Formula::zero() };
    }
    let width = rng.gen_range(0..4);
    let children = (0..width).map(|_| random_finite_formula(rng, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        Formula::conj(children)
    } else {
        Formula::disj(children)
    }
}

/// Every completed game's pointer structure is a valid interaction
/// sequence, and replaying its moves reproduces the record exactly.
#[test]
fn game_records_validate_and_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x67616d65);
    for i in 0..50 {
        let a = random_finite_formula(&mut rng, 3);
        let board = strategies::excluded_middle(&a);
        let rec = run_game(
            &board,
            strategies::copycat(&a).as_ref(),
            opponents::random_abe(900 + i).as_ref(),
            64,
        )
        .unwrap();
        let seq = debate_core::pointer::FiniteSeq::new(rec.state.phi());
        seq.validate().unwrap();
        let replayed = debate_core::arena::replay(rec.state.root(), rec.state.moves()).unwrap();
        assert_eq!(replayed.phi(), rec.state.phi());
        assert_eq!(replayed.status(), rec.state.status());
    }
}

/// Restricting a debate to either role yields only view-legal answers to
/// nodes of that role's own orientation.
#[test]
fn debate_interleaving_soundness() {
    use debate_core::formula::Kind;
    let cut = examples::star();
    let a = strategies::star_strategy();
    let b = strategies::star_refuter();
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
    let seq = trace.finite_seq();
    seq.validate().unwrap();
    for m in trace.moves.iter().skip(1) {
        // Pointer inside the mover's view.
        assert!(seq.view(m.index).unwrap().contains(&m.pointer), "move {}", m.index);
        // The pointee's landing answers the mover's own board orientation:
        // role B addresses board-B disjunctions, role A its conjunctions.
        let node = &trace.landings_b[m.pointer];
        if matches!(m.payload, Payload::Disjunct(_) | Payload::Function(_)) {
            let want = match m.role.unwrap() {
                Role::B => Kind::Disj,
                Role::A => Kind::Conj,
            };
            assert_eq!(node.kind(), want, "move {}", m.index);
            assert!(!node.is_leaf());
        }
    }
}

/// Direct periodicity detection on the recorded star trace.
#[test]
fn detect_lasso_directly() {
    let cut = examples::star();
    let a = strategies::star_strategy();
    let b = strategies::star_refuter();
    let trace = run_debate(a.as_ref(), b.as_ref(), &cut, None, &RunOpts::default()).unwrap();
    assert_eq!(debate::detect_lasso(&trace), Some((3, 4)));
}
