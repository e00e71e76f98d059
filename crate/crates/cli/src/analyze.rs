//! `debate analyze`: views, partitions, definite segments, nesting, and the
//! limit analysis of lasso traces.

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use std::path::PathBuf;

use debate_core::debate::export::{self, TraceDoc};
use debate_core::debate::Role;
use debate_core::pointer::{
    self, extend_transfinite, nest_check, omega_chain, FiniteSeq, LassoSeq, ParsedSeq, Parity,
    Position, ViewSet,
};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Trace file: JSON from `run`/`play`, or `n: phi` lines.
    #[arg(long)]
    pub trace: PathBuf,
    /// Report the view and segment partition at this stage.
    #[arg(long)]
    pub at: Option<usize>,
    /// On lasso traces: the ascending chain, its parity, blame, and a
    /// transfinite extension preview.
    #[arg(long)]
    pub omega: bool,
}

struct Loaded {
    seq: FiniteSeq,
    lasso: Option<LassoSeq>,
    /// Role by position parity, from a debate trace.
    roles: Option<(Role, Role)>,
}

fn load(path: &PathBuf) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
    if text.trim_start().starts_with('{') {
        let doc: TraceDoc = export::parse_json(&text)?;
        let seq = export::doc_finite_seq(&doc);
        let lasso = doc.lasso.as_ref().and_then(|l| {
            let phi = seq.phi();
            let cs = l.prefix.max(1);
            if phi.len() < cs - 1 + 2 * l.period {
                return None;
            }
            LassoSeq::from_cycles(
                phi[..cs - 1].to_vec(),
                &phi[cs - 1..cs - 1 + l.period],
                &phi[cs - 1 + l.period..cs - 1 + 2 * l.period],
            )
            .ok()
        });
        let moves = export::moves_from_doc(&doc)?;
        let roles = match (moves.get(1).and_then(|m| m.role), moves.get(2).and_then(|m| m.role)) {
            (Some(odd), Some(even)) => Some((odd, even)),
            _ => None,
        };
        return Ok(Loaded { seq, lasso, roles });
    }
    match pointer::parse_phi_lines(&text).map_err(|e| anyhow!("{e}"))? {
        ParsedSeq::Finite(seq) => Ok(Loaded { seq, lasso: None, roles: None }),
        ParsedSeq::Lasso(lasso) => {
            let seq = lasso.unroll(lasso.cycle_start() + 3 * lasso.period());
            Ok(Loaded { seq, lasso: Some(lasso), roles: None })
        }
    }
}

pub fn main(args: AnalyzeArgs) -> Result<i32> {
    let loaded = load(&args.trace)?;
    let seq = &loaded.seq;
    println!("positions: {}", seq.positions());
    match seq.validate() {
        Ok(()) => println!("valid: yes"),
        Err(e) => {
            println!("valid: no ({e})");
            bail!("invalid interaction sequence");
        }
    }
    if let Some(n) = args.at {
        let view = seq.view(n).map_err(|e| anyhow!("{e}"))?;
        println!("V({n}) = {}", set_display(&view));
        let parts = seq.segments_partition(n).map_err(|e| anyhow!("{e}"))?;
        let parts: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
        println!("partition: {}", parts.join(""));
    }
    let definite = match &loaded.lasso {
        Some(lasso) => lasso.definite_segments(seq.positions()),
        None => seq.definite_segments(seq.positions()),
    };
    let rendered: Vec<String> =
        definite.segments.iter().map(|s| format!("S({})={s}", s.owner)).collect();
    println!(
        "definite segments ({}): {}",
        if definite.provisional { "provisional" } else { "exact" },
        rendered.join(" ")
    );
    match nest_check(&definite.segments) {
        Ok(()) => println!("nest: ok"),
        Err((a, b)) => println!("nest: violated by {a} and {b}"),
    }
    if args.omega {
        let Some(lasso) = &loaded.lasso else {
            println!(
                "omega: not a lasso trace; the limit analysis needs an infinite \
                 (eventually periodic) debate"
            );
            return Ok(0);
        };
        let chain = omega_chain(lasso).map_err(|e| anyhow!("omega analysis: {e}"))?;
        let parity = chain.parity();
        let parity_str = match parity {
            Some(Parity::Even) => "even",
            Some(Parity::Odd) => "odd",
            None => "mixed",
        };
        print!("chain: {chain}; parity {parity_str}");
        if let (Some(p), Some((odd_role, even_role))) = (parity, loaded.roles) {
            let blamed = match p.opposite() {
                Parity::Odd => odd_role,
                Parity::Even => even_role,
            };
            print!("; blame {blamed}");
        }
        println!();
        // Transfinite preview: answer the first chain element past 0.
        let elems = chain.elements_below(64);
        if let Some(&choice) = elems.iter().find(|&&e| e > 0) {
            let ext = extend_transfinite(lasso, choice).map_err(|e| anyhow!("{e}"))?;
            if let ViewSet::Finite(v) = ext.view(Position { limit: 1, offset: 1 }) {
                let v: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                println!("extension preview: choose n={choice} -> V(w+1) = {{{}}}", v.join(", "));
            }
        }
    }
    Ok(0)
}

fn set_display(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
