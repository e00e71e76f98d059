//! `debate run`: drive two strategies across a cut formula and report.

use anyhow::{Context, Result};
use clap::Args;
use std::path::PathBuf;

use debate_core::arena::Payload;
use debate_core::debate::{export, run_debate, DebateTrace, Outcome, Role, RunOpts};
use debate_core::formula::OracleFn;

use crate::spec::{self, Oracles};

#[derive(Args)]
pub struct RunArgs {
    /// Cut formula: a name (minimum, star, choice, ackermann-bound, ...) or
    /// a file.
    #[arg(long)]
    pub cut: String,
    /// Goal formula disjoined onto the negated cut for role B: `descent`, a
    /// name, or a file. `--b epsilon` implies `descent`.
    #[arg(long)]
    pub goal: Option<String>,
    /// Strategy for role A (defends the cut).
    #[arg(long)]
    pub a: String,
    /// Strategy for role B (defends the negated cut, plus the goal).
    #[arg(long)]
    pub b: String,
    /// Oracle for `f`: comma list with optional default, `const:K`,
    /// `identity`, or `ackermann-diag`.
    #[arg(long)]
    pub f: Option<String>,
    /// Oracle for the intended choice function `h` (P(x,y) is y = h(x)).
    #[arg(long)]
    pub h: Option<String>,
    /// Step budget; defaults to $DEBATE_BUDGET or 256.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Write the trace as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a DOT nest diagram.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the pointer structure in `n: phi` lines.
    #[arg(long)]
    pub phi: Option<PathBuf>,
}

pub fn main(args: RunArgs) -> Result<i32> {
    let oracles = Oracles {
        f: args.f.as_deref().map(OracleFn::parse).transpose().map_err(anyhow::Error::msg)?,
        h: args.h.as_deref().map(OracleFn::parse).transpose().map_err(anyhow::Error::msg)?,
    };
    let (cut, cut_spec) = spec::resolve_formula(&args.cut, &oracles)?;
    let goal_name = match (&args.goal, args.b.as_str()) {
        (Some(g), _) => Some(g.clone()),
        (None, "epsilon") => Some("descent".to_string()),
        (None, _) => None,
    };
    let goal = goal_name
        .map(|g| spec::resolve_formula(&g, &oracles))
        .transpose()?;
    let a = spec::resolve_strategy(&args.a, &oracles)?;
    let b = spec::resolve_strategy(&args.b, &oracles)?;
    let opts = RunOpts {
        step_budget: args.budget.unwrap_or_else(crate::default_budget),
        ..RunOpts::default()
    };
    let mut trace = run_debate(
        a.as_ref(),
        b.as_ref(),
        &cut,
        goal.as_ref().map(|(g, _)| g),
        &opts,
    )?;
    trace.cut_spec = cut_spec;
    trace.goal_spec = goal.map(|(_, s)| s);

    println!("{}", outcome_line(&trace));
    println!("phi: {}", export::phi_inline(&trace));
    if let Some(path) = &args.out {
        std::fs::write(path, export::to_json(&trace)).with_context(|| format!("writing {path:?}"))?;
        println!("trace: {}", path.display());
    }
    if let Some(path) = &args.dot {
        std::fs::write(path, export::to_dot(&trace)).with_context(|| format!("writing {path:?}"))?;
    }
    if let Some(path) = &args.phi {
        std::fs::write(path, export::to_phi_lines(&trace))
            .with_context(|| format!("writing {path:?}"))?;
    }
    Ok(match trace.outcome {
        Outcome::BudgetExhausted(_) => 2,
        _ => 0,
    })
}

pub fn outcome_line(trace: &DebateTrace) -> String {
    match trace.outcome {
        Outcome::AWins | Outcome::BWins => {
            let winner = if trace.outcome == Outcome::AWins { Role::A } else { Role::B };
            let last = trace.moves.last().expect("non-empty trace");
            let desc = move_display(trace, last.index);
            if last.role == Some(winner) {
                format!("{winner} wins: {desc}")
            } else {
                format!("{winner} wins: refuted {desc}")
            }
        }
        Outcome::Lasso { prefix, period } => {
            let blame = trace
                .blame()
                .map(|(role, _)| format!("; blame: {role}"))
                .unwrap_or_default();
            format!("Lasso({prefix},{period}){blame}")
        }
        Outcome::BudgetExhausted(steps) => format!("budget exhausted after {steps} steps"),
    }
}

/// Human display of a move: the indexed variable of the family it answers,
/// or the played function.
pub fn move_display(trace: &DebateTrace, index: usize) -> String {
    let m = &trace.moves[index];
    match &m.payload {
        Payload::Start => "start".into(),
        Payload::ClaimLeaf => "claim".into(),
        Payload::Function(h) => format!("f = {h}"),
        Payload::Disjunct(i) | Payload::Conjunct(i) => {
            match trace.landings_b.get(m.pointer) {
                Some(node) => node.nat_index_name(*i),
                None => format!("#{i}"),
            }
        }
    }
}
