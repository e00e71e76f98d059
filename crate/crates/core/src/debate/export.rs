//! Trace serialization: a versioned JSON schema, a DOT nest diagram, and
//! the `n: phi` line format.

use serde::{Deserialize, Serialize};

use super::{DebateMove, DebateTrace, FormulaSpec, Outcome, Role};
use crate::arena::{FunctionHandle, Payload};
use crate::formula::sexpr;
use crate::pointer::{self, nest_check, FiniteSeq};

pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct TraceDoc {
    pub version: u32,
    pub mode: String,
    pub cut: FormulaSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub goal: Option<FormulaSpec>,
    pub a: String,
    pub b: String,
    pub moves: Vec<MoveDoc>,
    pub outcome: OutcomeDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lasso: Option<LassoDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MoveDoc {
    pub i: usize,
    pub role: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<PayloadDoc>,
    pub phi: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PayloadDoc {
    Index(u64),
    Function { base: u64, updates: Vec<(u64, u64)>, queried: Vec<u64> },
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct OutcomeDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LassoDoc {
    pub prefix: usize,
    pub period: usize,
    pub shift: usize,
}

pub fn to_doc(trace: &DebateTrace) -> TraceDoc {
    let moves = trace
        .moves
        .iter()
        .map(|m| MoveDoc {
            i: m.index,
            role: match m.role {
                None => "start".into(),
                Some(Role::A) => "a".into(),
                Some(Role::B) => "b".into(),
            },
            kind: m.payload.kind_name().into(),
            payload: match &m.payload {
                Payload::Start | Payload::ClaimLeaf => None,
                Payload::Disjunct(i) | Payload::Conjunct(i) => Some(PayloadDoc::Index(*i)),
                Payload::Function(h) => Some(PayloadDoc::Function {
                    base: h.base,
                    updates: h.updates.clone(),
                    queried: h.query_log().into_iter().collect(),
                }),
            },
            phi: m.pointer,
            note: m.note.map(|s| s.to_string()),
        })
        .collect();
    let (outcome, lasso) = match trace.outcome {
        Outcome::AWins => (OutcomeDoc { kind: "a-wins".into(), steps: None }, None),
        Outcome::BWins => (OutcomeDoc { kind: "b-wins".into(), steps: None }, None),
        Outcome::Lasso { prefix, period } => (
            OutcomeDoc { kind: "lasso".into(), steps: None },
            Some(LassoDoc { prefix, period, shift: period }),
        ),
        Outcome::BudgetExhausted(steps) => {
            (OutcomeDoc { kind: "budget-exhausted".into(), steps: Some(steps) }, None)
        }
    };
    TraceDoc {
        version: TRACE_VERSION,
        mode: "debate".into(),
        cut: trace.cut_spec.clone(),
        goal: trace.goal_spec.clone(),
        a: trace.a_name.clone(),
        b: trace.b_name.clone(),
        moves,
        outcome,
        lasso,
    }
}

pub fn to_json(trace: &DebateTrace) -> String {
    serde_json::to_string_pretty(&to_doc(trace)).expect("trace serializes")
}

/// The interleaved pointer list in the `n: phi` line format.
pub fn to_phi_lines(trace: &DebateTrace) -> String {
    match trace.lasso_seq() {
        Some(lasso) => pointer::to_phi_lines(None, Some(&lasso)),
        None => pointer::to_phi_lines(Some(&trace.finite_seq()), None),
    }
}

/// One-line rendering `1:0 2:1 ...` used by command output.
pub fn phi_inline(trace: &DebateTrace) -> String {
    trace
        .phi()
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{}:{}", i + 1, p))
        .collect::<Vec<_>>()
        .join(" ")
}

/// DOT rendering: positions as nodes, pointer arcs, and the definite
/// segments as nested clusters (their nest structure makes the containment
/// forest well defined).
pub fn to_dot(trace: &DebateTrace) -> String {
    let seq = trace.finite_seq();
    let n = seq.positions();
    let definite = seq.definite_segments(n);
    let mut out = String::from("digraph trace {\n  rankdir=LR;\n  node [shape=circle];\n");
    let segs = {
        let mut s = definite.segments.clone();
        s.sort_by_key(|x| (x.lo, std::cmp::Reverse(x.hi)));
        if nest_check(&s).is_err() {
            s.clear();
        }
        s
    };
    // Innermost containing segment per position, and parent per segment.
    let innermost = |pos: usize| -> Option<usize> {
        segs.iter()
            .enumerate()
            .filter(|(_, s)| s.lo <= pos && pos <= s.hi)
            .min_by_key(|(_, s)| s.hi - s.lo)
            .map(|(i, _)| i)
    };
    let parent: Vec<Option<usize>> = segs
        .iter()
        .map(|s| {
            segs.iter()
                .enumerate()
                .filter(|(_, o)| s.well_inside(o))
                .min_by_key(|(_, o)| o.hi - o.lo)
                .map(|(i, _)| i)
        })
        .collect();
    fn emit_cluster(
        i: usize,
        segs: &[pointer::Segment],
        parent: &[Option<usize>],
        members: &[Vec<usize>],
        out: &mut String,
        depth: usize,
    ) {
        let indent = "  ".repeat(depth + 1);
        let s = &segs[i];
        out.push_str(&format!(
            "{indent}subgraph cluster_s{} {{ label=\"S({}) = [{},{}]\";\n",
            s.owner, s.owner, s.lo, s.hi
        ));
        for &pos in &members[i] {
            out.push_str(&format!("{indent}  n{pos};\n"));
        }
        for (j, p) in parent.iter().enumerate() {
            if *p == Some(i) {
                emit_cluster(j, segs, parent, members, out, depth + 1);
            }
        }
        out.push_str(&format!("{indent}}}\n"));
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); segs.len()];
    let mut loose: Vec<usize> = Vec::new();
    for pos in 0..n {
        match innermost(pos) {
            Some(i) => members[i].push(pos),
            None => loose.push(pos),
        }
    }
    for (i, p) in parent.iter().enumerate() {
        if p.is_none() {
            emit_cluster(i, &segs, &parent, &members, &mut out, 0);
        }
    }
    for pos in loose {
        out.push_str(&format!("  n{pos};\n"));
    }
    for m in trace.moves.iter().skip(1) {
        let label = match &m.payload {
            Payload::Function(h) => format!("{h}"),
            Payload::Disjunct(i) | Payload::Conjunct(i) => format!("{i}"),
            Payload::ClaimLeaf => "claim".into(),
            Payload::Start => String::new(),
        };
        out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", m.index, m.pointer, label));
    }
    out.push_str("}\n");
    out
}

/// A single-board game in the same document schema, with roles `elo` and
/// `abe` and mode `game`.
pub fn game_to_doc(record: &crate::arena::GameRecord, cut: FormulaSpec) -> TraceDoc {
    use crate::arena::{Player, Status};
    let moves = record
        .state
        .moves()
        .iter()
        .map(|m| MoveDoc {
            i: m.index,
            role: match m.player {
                Player::Start => "start".into(),
                Player::Eloise => "elo".into(),
                Player::Abelard => "abe".into(),
            },
            kind: m.payload.kind_name().into(),
            payload: match &m.payload {
                Payload::Start | Payload::ClaimLeaf => None,
                Payload::Disjunct(i) | Payload::Conjunct(i) => Some(PayloadDoc::Index(*i)),
                Payload::Function(h) => Some(PayloadDoc::Function {
                    base: h.base,
                    updates: h.updates.clone(),
                    queried: h.query_log().into_iter().collect(),
                }),
            },
            phi: m.pointer,
            note: None,
        })
        .collect();
    let outcome = match record.state.status() {
        Status::EloiseWins => OutcomeDoc { kind: "elo-wins".into(), steps: None },
        Status::AbelardWins => OutcomeDoc { kind: "abe-wins".into(), steps: None },
        Status::Running => OutcomeDoc { kind: "running".into(), steps: Some(record.steps) },
    };
    TraceDoc {
        version: TRACE_VERSION,
        mode: "game".into(),
        cut,
        goal: None,
        a: "elo".into(),
        b: "abe".into(),
        moves,
        outcome,
        lasso: None,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ImportError {
    #[error("unsupported trace version {0}")]
    Version(u32),
    #[error("malformed trace: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Rebuilds the raw move list of a JSON trace; formulas are reconstructed
/// from their specs by the caller (named specs need the oracle registry).
pub fn moves_from_doc(doc: &TraceDoc) -> Result<Vec<DebateMove>, ImportError> {
    let mut out = Vec::with_capacity(doc.moves.len());
    for m in &doc.moves {
        let role = match m.role.as_str() {
            "start" => None,
            "a" | "elo" => Some(Role::A),
            "b" | "abe" => Some(Role::B),
            other => return Err(ImportError::Malformed(format!("role `{other}`"))),
        };
        let payload = match (m.kind.as_str(), &m.payload) {
            ("start", _) => Payload::Start,
            ("claim", _) => Payload::ClaimLeaf,
            ("disjunct", Some(PayloadDoc::Index(i))) => Payload::Disjunct(*i),
            ("conjunct", Some(PayloadDoc::Index(i))) => Payload::Conjunct(*i),
            ("function", Some(PayloadDoc::Function { base, updates, .. })) => {
                Payload::Function(FunctionHandle::with_updates(*base, updates.clone()))
            }
            (kind, _) => {
                return Err(ImportError::Malformed(format!("kind `{kind}` without payload")))
            }
        };
        out.push(DebateMove { index: m.i, role, payload, pointer: m.phi, note: None });
    }
    Ok(out)
}

pub fn outcome_from_doc(doc: &TraceDoc) -> Result<Outcome, ImportError> {
    match (doc.outcome.kind.as_str(), &doc.lasso, doc.outcome.steps) {
        ("a-wins", _, _) => Ok(Outcome::AWins),
        ("b-wins", _, _) => Ok(Outcome::BWins),
        ("lasso", Some(l), _) => Ok(Outcome::Lasso { prefix: l.prefix, period: l.period }),
        ("budget-exhausted", _, Some(steps)) => Ok(Outcome::BudgetExhausted(steps)),
        (kind, _, _) => Err(ImportError::Malformed(format!("outcome `{kind}`"))),
    }
}

pub fn parse_json(input: &str) -> Result<TraceDoc, ImportError> {
    let doc: TraceDoc = serde_json::from_str(input)?;
    if doc.version != TRACE_VERSION {
        return Err(ImportError::Version(doc.version));
    }
    Ok(doc)
}

/// The pointer structure of a parsed trace document.
pub fn doc_finite_seq(doc: &TraceDoc) -> FiniteSeq {
    FiniteSeq::new(doc.moves.iter().skip(1).map(|m| m.phi).collect())
}

/// Round-trips a formula spec through the sexpr parser when it is inline.
pub fn formula_of_spec(spec: &FormulaSpec) -> Option<crate::formula::Formula> {
    match spec {
        FormulaSpec::Sexpr(src) => sexpr::parse(src).ok(),
        FormulaSpec::Named { .. } => None,
    }
}
