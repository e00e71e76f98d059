//! `debate play`: take one seat of a game against a built-in strategy.
//!
//! The prompt shows the current view with each visible landing, then reads
//! one move. Environment seats answer the latest move with an index;
//! existential seats pick a listed move by number, enter a function, claim,
//! or quit. Illegal input re-prompts; quitting writes the running trace.

use anyhow::{Context, Result};
use clap::Args;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use debate_core::arena::{
    seat_view_of_game, FunctionHandle, GameRecord, GameState, Payload, Player, Status,
};
use debate_core::debate::export;
use debate_core::debate::FormulaSpec;
use debate_core::formula::{Formula, Kind, OracleFn};
use debate_core::strategies;

use crate::spec::{self, Oracles};

#[derive(Args)]
pub struct PlayArgs {
    /// The board: a formula name or file. With `--vs copycat` this is the
    /// base formula a; the board becomes `a or not-a`.
    #[arg(long)]
    pub cut: String,
    /// Seat to take: `abe` answers conjunctions, `elo` disjunctions.
    #[arg(long = "as", value_parser = ["abe", "elo"])]
    pub seat: String,
    /// The built-in playing the other seat (e.g. `minimum`, `star`,
    /// `window:4`, `random:7`).
    #[arg(long)]
    pub vs: String,
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub h: Option<String>,
    /// Trace file written at the end of the session.
    #[arg(long, default_value = "play-trace.json")]
    pub out: PathBuf,
    #[arg(long)]
    pub budget: Option<usize>,
}

pub fn main(args: PlayArgs) -> Result<i32> {
    let oracles = Oracles {
        f: args.f.as_deref().map(OracleFn::parse).transpose().map_err(anyhow::Error::msg)?,
        h: args.h.as_deref().map(OracleFn::parse).transpose().map_err(anyhow::Error::msg)?,
    };
    let human = match args.seat.as_str() {
        "abe" => Player::Abelard,
        _ => Player::Eloise,
    };
    let (board, cut_spec, machine) = if args.vs == "copycat" {
        let (base, _) = spec::resolve_formula(&args.cut, &oracles)?;
        let board = strategies::excluded_middle(&base);
        let rendered = board.to_string();
        (board, FormulaSpec::Sexpr(rendered), strategies::copycat(&base))
    } else {
        let (board, spec_) = spec::resolve_formula(&args.cut, &oracles)?;
        (board, spec_, spec::resolve_opponent(&args.vs, &oracles)?)
    };
    let budget = args.budget.unwrap_or_else(crate::default_budget);
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut state = GameState::new(board);
    let mut steps = 0usize;
    let mut quit = false;
    while state.status() == Status::Running && steps < budget {
        let player = state.to_move();
        if player == human {
            match human_turn(&mut state, player, &mut input)? {
                TurnResult::Moved => {}
                TurnResult::Quit => {
                    quit = true;
                    break;
                }
            }
        } else {
            let seat = seat_view_of_game(&state, player);
            let Some(mv) = machine.propose(&seat) else {
                println!("{} has nothing to play and concedes.", machine.name());
                break;
            };
            println!(
                "{} plays {} answering move {}.",
                machine.name(),
                payload_display(&state, mv.pointer, &mv.payload),
                mv.pointer
            );
            state
                .apply(player, mv.pointer, mv.payload)
                .map_err(|e| anyhow::anyhow!("machine move rejected: {e}"))?;
        }
        steps += 1;
    }
    match state.status() {
        Status::EloiseWins => println!("Eloise wins."),
        Status::AbelardWins => println!("Abelard wins."),
        Status::Running => {
            if quit {
                println!("session ended; trace is still running.");
            } else {
                println!("step budget reached; trace is still running.");
            }
        }
    }
    let record = GameRecord {
        steps,
        winner: match state.status() {
            Status::EloiseWins => Some(Player::Eloise),
            Status::AbelardWins => Some(Player::Abelard),
            Status::Running => None,
        },
        state,
        notes: vec![],
    };
    let doc = export::game_to_doc(&record, cut_spec);
    std::fs::write(&args.out, serde_json::to_string_pretty(&doc)?)
        .with_context(|| format!("writing {:?}", args.out))?;
    println!("trace: {}", args.out.display());
    Ok(0)
}

enum TurnResult {
    Moved,
    Quit,
}

fn human_turn(
    state: &mut GameState,
    player: Player,
    input: &mut impl BufRead,
) -> Result<TurnResult> {
    loop {
        show_position(state, player);
        let legal = state.legal_moves(player, 8);
        if player == Player::Eloise {
            for (i, m) in legal.iter().enumerate() {
                println!(
                    "  [{i}] {} answering move {}",
                    payload_display(state, m.pointer, &m.payload),
                    m.pointer
                );
            }
            println!("move: a number, `d <ptr> <index>`, `f <ptr> <base> [x->y ...]`, or q");
        } else {
            let target = state.next_index() - 1;
            let landing = state.landing(target).expect("previous move landed");
            match landing.children().fun {
                Some(_) => println!("enter the function to play: f <base> [x->y ...], or q"),
                None => println!(
                    "answer move {target}: enter an index for {}, or q",
                    family_var(landing)
                ),
            }
        }
        print!("> ");
        std::io::stdout().flush().ok();
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Ok(TurnResult::Quit);
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "q" || line == "quit" {
            return Ok(TurnResult::Quit);
        }
        let attempt = parse_human_move(line, player, state, &legal);
        match attempt {
            Ok((pointer, payload)) => match state.apply(player, pointer, payload) {
                Ok(()) => return Ok(TurnResult::Moved),
                Err(e) => println!("illegal: {e}"),
            },
            Err(msg) => println!("{msg}"),
        }
    }
}

fn parse_human_move(
    line: &str,
    player: Player,
    state: &GameState,
    legal: &[debate_core::arena::Move],
) -> std::result::Result<(usize, Payload), String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    match words.as_slice() {
        [n] if player == Player::Eloise => {
            let i: usize = n.parse().map_err(|_| format!("not a move number: {n}"))?;
            let m = legal.get(i).ok_or_else(|| format!("no listed move {i}"))?;
            Ok((m.pointer, m.payload.clone()))
        }
        [n] => {
            let i: u64 = n.parse().map_err(|_| format!("not an index: {n}"))?;
            Ok((state.next_index() - 1, Payload::Conjunct(i)))
        }
        ["d", ptr, idx] => {
            let pointer: usize = ptr.parse().map_err(|_| "bad pointer".to_string())?;
            let i: u64 = idx.parse().map_err(|_| "bad index".to_string())?;
            let payload = match player {
                Player::Eloise => Payload::Disjunct(i),
                _ => Payload::Conjunct(i),
            };
            Ok((pointer, payload))
        }
        ["c", ptr] => {
            let pointer: usize = ptr.parse().map_err(|_| "bad pointer".to_string())?;
            Ok((pointer, Payload::ClaimLeaf))
        }
        ["f", rest @ ..] if !rest.is_empty() => {
            let (pointer, spec) = if player == Player::Eloise {
                let pointer: usize =
                    rest[0].parse().map_err(|_| "bad pointer".to_string())?;
                (pointer, &rest[1..])
            } else {
                (state.next_index() - 1, rest)
            };
            if spec.is_empty() {
                return Err("function needs a base value".into());
            }
            let base: u64 = spec[0].parse().map_err(|_| "bad base".to_string())?;
            let mut updates = Vec::new();
            for up in &spec[1..] {
                let (x, y) = up
                    .split_once("->")
                    .ok_or_else(|| format!("bad update `{up}`, expected x->y"))?;
                updates.push((
                    x.parse().map_err(|_| "bad update point".to_string())?,
                    y.parse().map_err(|_| "bad update value".to_string())?,
                ));
            }
            Ok((pointer, Payload::Function(FunctionHandle::with_updates(base, updates))))
        }
        _ => Err("unrecognized input".into()),
    }
}

fn show_position(state: &GameState, player: Player) {
    println!();
    println!(
        "--- move {} | {} to play ---",
        state.next_index(),
        match player {
            Player::Eloise => "Eloise (you)",
            Player::Abelard => "Abelard (you)",
            Player::Start => "start",
        }
    );
    let view = state.view();
    for &p in &view {
        let landing = state.landing(p).expect("in range");
        println!("  view {p}: {}", landing_display(landing));
    }
}

fn landing_display(f: &Formula) -> String {
    if let Some(atom) = f.atom_label() {
        return format!("leaf {} `{}`", if f.leaf_value() == Some(true) { 1 } else { 0 }, atom.text);
    }
    if let Some(v) = f.leaf_value() {
        return format!("leaf {}", if v { 1 } else { 0 });
    }
    let kind = match f.kind() {
        Kind::Conj => "and",
        Kind::Disj => "or",
    };
    format!("({kind} over {})", family_var(f))
}

fn family_var(f: &Formula) -> String {
    let c = f.children();
    let mut parts = Vec::new();
    if !c.head.is_empty() {
        parts.push(format!("{} listed", c.head.len()));
    }
    if let Some(t) = &c.tail {
        parts.push(t.var.clone());
    }
    if let Some(fun) = &c.fun {
        parts.push(format!("functions {}", fun.var));
    }
    if parts.is_empty() {
        parts.push("empty".into());
    }
    parts.join(" + ")
}

fn payload_display(state: &GameState, pointer: usize, payload: &Payload) -> String {
    match payload {
        Payload::Start => "start".into(),
        Payload::ClaimLeaf => "claim".into(),
        Payload::Function(h) => format!("f = {h}"),
        Payload::Disjunct(i) | Payload::Conjunct(i) => state
            .landing(pointer)
            .map(|l| l.nat_index_name(*i))
            .unwrap_or_else(|| format!("#{i}")),
    }
}
