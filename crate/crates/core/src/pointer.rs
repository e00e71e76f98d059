//! Interaction sequences: pointer structures and their geometry.
//!
//! An interaction sequence assigns each position `n > 0` a pointer
//! `phi(n) < n` subject to the view discipline `phi(n) ∈ V(n)`, where
//! `V(1) = {0}` and `V(n+1) = {n} ∪ V(phi(n))`. The view at any stage equals
//! the right endpoints of the canonical partition of `[0, n)` into segments
//! `S(k) = [phi(k), k]` (with `S(0) = [0, 0]`), obtained by descending
//! `m0 = n-1`, `m_{k+1} = phi(m_k) - 1` until the interval is covered.
//!
//! Segments whose owner is never pointed at later are *definite*; any two
//! definite segments are disjoint or strictly nested. For an infinite
//! sequence, represented here as a lasso (finite prefix plus a repeating
//! pointer pattern), there is an ascending chain `n_0 < n_1 < ...` with
//! `phi(n_{k+1}) = n_k + 1` whose segments partition `[0, ω)`; when unique,
//! its parity singles out the player responsible for the infinite play, and
//! the sequence extends past `ω` by answering a chain element.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arena::view_of_phi;

/// A position, possibly beyond the first limit: `limit` counts limit stages
/// passed, `offset` steps after the last one. Ordering is lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position {
    pub limit: u32,
    pub offset: usize,
}

impl Position {
    pub fn finite(offset: usize) -> Position {
        Position { limit: 0, offset }
    }

    pub fn omega() -> Position {
        Position { limit: 1, offset: 0 }
    }

    pub fn is_finite(&self) -> bool {
        self.limit == 0
    }
}

impl From<usize> for Position {
    fn from(n: usize) -> Position {
        Position::finite(n)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.limit, self.offset) {
            (0, n) => write!(f, "{n}"),
            (1, 0) => write!(f, "w"),
            (1, n) => write!(f, "w+{n}"),
            (k, 0) => write!(f, "{k}w"),
            (k, n) => write!(f, "{k}w+{n}"),
        }
    }
}

/// The interval `[phi(k), k]` owned by position `k`; `S(0) = [0, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: usize,
    pub hi: usize,
    pub owner: usize,
}

impl Segment {
    pub fn disjoint(&self, other: &Segment) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Strict containment at both endpoints.
    pub fn well_inside(&self, other: &Segment) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("position {position}: pointer {pointer} is not below the position")]
    PointerNotBelow { position: usize, pointer: usize },
    #[error("position {position}: pointer {pointer} is outside the view {view:?}")]
    PointerOutsideView { position: usize, pointer: usize, view: Vec<usize> },
    #[error("position {0} is not represented")]
    Unrepresented(usize),
    #[error("lasso cycle must be non-empty")]
    EmptyCycle,
    #[error("no ascending chain partitions the sequence")]
    NoChain,
    #[error("more than one full chain survives: {0:?}")]
    Ambiguous(Vec<Chain>),
    #[error("chain elements do not share one parity")]
    MixedParity,
    #[error("chosen position {0} is not in the chain")]
    NotInChain(usize),
    #[error("limit round {0} exceeds the configured cap {1}")]
    LimitCap(u32, u32),
}

/// A finite interaction sequence: positions `0..=len`, with `phi[k]` the
/// pointer of position `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSeq {
    phi: Vec<usize>,
}

impl FiniteSeq {
    pub fn new(phi: Vec<usize>) -> FiniteSeq {
        FiniteSeq { phi }
    }

    /// Number of represented positions (the start move included).
    pub fn positions(&self) -> usize {
        self.phi.len() + 1
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn phi_of(&self, n: usize) -> Option<usize> {
        if n == 0 || n > self.phi.len() {
            None
        } else {
            Some(self.phi[n - 1])
        }
    }

    /// The view at stage `n`: what the player about to make move `n` sees.
    pub fn view(&self, n: usize) -> Result<Vec<usize>, SeqError> {
        if n > self.positions() {
            return Err(SeqError::Unrepresented(n));
        }
        Ok(view_of_phi(&self.phi, n))
    }

    /// Checks `phi(n) < n` and `phi(n) ∈ V(n)` everywhere, reporting the
    /// first violation.
    pub fn validate(&self) -> Result<(), SeqError> {
        validate_phi(&self.phi)
    }

    /// The canonical partition of `[0, n)` into segments, right endpoints
    /// descending. Requires `n >= 1`.
    pub fn segments_partition(&self, n: usize) -> Result<Vec<Segment>, SeqError> {
        if n == 0 || n > self.positions() {
            return Err(SeqError::Unrepresented(n));
        }
        Ok(partition_of_phi(&self.phi, n))
    }

    /// Segments `S(k)` for `0 < k < upto` whose owner is not in the image of
    /// `phi` below `upto`. Flagged provisional: a later move can still point
    /// into this prefix.
    pub fn definite_segments(&self, upto: usize) -> DefiniteSegments {
        let upto = upto.min(self.positions());
        let image: BTreeSet<usize> = self.phi.iter().take(upto.saturating_sub(1)).copied().collect();
        let segments = (1..upto)
            .filter(|k| !image.contains(k))
            .map(|k| Segment { lo: self.phi[k - 1], hi: k, owner: k })
            .collect();
        DefiniteSegments { segments, provisional: true }
    }
}

#[derive(Debug, Clone)]
pub struct DefiniteSegments {
    pub segments: Vec<Segment>,
    /// True when later moves could still destroy definiteness (finite
    /// prefixes); lasso analysis is exact.
    pub provisional: bool,
}

fn validate_phi(phi: &[usize]) -> Result<(), SeqError> {
    for (i, &p) in phi.iter().enumerate() {
        let n = i + 1;
        if p >= n {
            return Err(SeqError::PointerNotBelow { position: n, pointer: p });
        }
        let view = view_of_phi(phi, n);
        if !view.contains(&p) {
            return Err(SeqError::PointerOutsideView { position: n, pointer: p, view });
        }
    }
    Ok(())
}

fn partition_of_phi(phi: &[usize], n: usize) -> Vec<Segment> {
    let mut out = Vec::new();
    let mut m = n - 1;
    loop {
        if m == 0 {
            out.push(Segment { lo: 0, hi: 0, owner: 0 });
            break;
        }
        let p = phi[m - 1];
        out.push(Segment { lo: p, hi: m, owner: m });
        if p == 0 {
            break;
        }
        m = p - 1;
    }
    out
}

/// Checks that every two distinct segments are disjoint or one is well
/// inside the other, reporting the first violating pair.
pub fn nest_check(segments: &[Segment]) -> Result<(), (Segment, Segment)> {
    let mut sorted: Vec<&Segment> = segments.iter().collect();
    sorted.sort_by_key(|s| (s.lo, std::cmp::Reverse(s.hi)));
    let mut stack: Vec<&Segment> = Vec::new();
    for seg in sorted {
        while let Some(top) = stack.last() {
            if top.hi < seg.lo {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(top) = stack.last() {
            // top.lo <= seg.lo and they intersect; only strict nesting is
            // acceptable.
            if !seg.well_inside(top) {
                return Err((**top, *seg));
            }
        }
        stack.push(seg);
    }
    Ok(())
}

/// One slot of a lasso's repeating pointer pattern: either every occurrence
/// points at the same fixed position, or each points a fixed distance back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatEntry {
    Abs(usize),
    Rel(usize),
}

/// An eventually periodic infinite sequence: concrete pointers for the
/// prefix, then a repeating per-position pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoSeq {
    prefix: Vec<usize>,
    pattern: Vec<PatEntry>,
}

impl LassoSeq {
    /// `prefix` holds `phi(1..cycle_start)`; `pattern[j]` governs positions
    /// `cycle_start + j + k * period`.
    pub fn new(prefix: Vec<usize>, pattern: Vec<PatEntry>) -> Result<LassoSeq, SeqError> {
        if pattern.is_empty() {
            return Err(SeqError::EmptyCycle);
        }
        let lasso = LassoSeq { prefix, pattern };
        lasso.validate()?;
        Ok(lasso)
    }

    /// Infers the pattern from two consecutive unrolled cycles: a pointer
    /// that stayed fixed is absolute, one that advanced by the period is
    /// relative.
    pub fn from_cycles(
        prefix: Vec<usize>,
        cycle1: &[usize],
        cycle2: &[usize],
    ) -> Result<LassoSeq, SeqError> {
        if cycle1.is_empty() || cycle1.len() != cycle2.len() {
            return Err(SeqError::EmptyCycle);
        }
        let cs = prefix.len() + 1;
        let p = cycle1.len();
        let mut pattern = Vec::with_capacity(p);
        for (j, (&a, &b)) in cycle1.iter().zip(cycle2).enumerate() {
            let pos = cs + j;
            if b == a + p {
                pattern.push(PatEntry::Rel(pos - a));
            } else if b == a {
                pattern.push(PatEntry::Abs(a));
            } else {
                return Err(SeqError::PointerOutsideView {
                    position: pos + p,
                    pointer: b,
                    view: vec![],
                });
            }
        }
        LassoSeq::new(prefix, pattern)
    }

    pub fn cycle_start(&self) -> usize {
        self.prefix.len() + 1
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    /// The pointer shift applied to relative entries when unrolling one
    /// period.
    pub fn shift(&self) -> usize {
        self.pattern.len()
    }

    pub fn pattern(&self) -> &[PatEntry] {
        &self.pattern
    }

    /// Whether the pattern slot of in-cycle position `n` is relative.
    fn entry_is_rel(&self, n: usize) -> bool {
        if n < self.cycle_start() {
            return false;
        }
        matches!(self.pattern[(n - self.cycle_start()) % self.period()], PatEntry::Rel(_))
    }

    pub fn phi_of(&self, n: usize) -> Option<usize> {
        if n == 0 {
            return None;
        }
        if n <= self.prefix.len() {
            return Some(self.prefix[n - 1]);
        }
        let idx = (n - self.cycle_start()) % self.period();
        match self.pattern[idx] {
            PatEntry::Abs(a) => Some(a),
            PatEntry::Rel(d) => n.checked_sub(d),
        }
    }

    /// A finite unrolling covering positions `0..=len`.
    pub fn unroll(&self, len: usize) -> FiniteSeq {
        FiniteSeq::new((1..=len).map(|n| self.phi_of(n).unwrap()).collect())
    }

    pub fn view(&self, n: usize) -> Vec<usize> {
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
            let p = self.phi_of(m).unwrap();
            if p == 0 {
                break;
            }
            m = p - 1;
        }
        out
    }

    /// Valid when the prefix plus two full cycles validates; views within a
    /// cycle depend only on the pattern, so this decides validity of every
    /// unrolling.
    pub fn validate(&self) -> Result<(), SeqError> {
        let len = self.cycle_start() + 3 * self.period();
        let probe: Vec<usize> = (1..=len)
            .map(|n| {
                self.phi_of(n).ok_or(SeqError::PointerNotBelow { position: n, pointer: 0 })
            })
            .collect::<Result<_, _>>()?;
        validate_phi(&probe)
    }

    /// Whether finite position `k` is ever pointed at, across all cycles.
    pub fn in_pointer_image(&self, k: usize) -> bool {
        if self.prefix.contains(&k) {
            return true;
        }
        let cs = self.cycle_start();
        let p = self.period();
        for (idx, entry) in self.pattern.iter().enumerate() {
            let first = cs + idx;
            match entry {
                PatEntry::Abs(a) => {
                    if *a == k {
                        return true;
                    }
                }
                PatEntry::Rel(d) => {
                    // Targets k = pos - d for pos = first, first + p, ...
                    if k + d >= first && (k + d - first) % p == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Exact definite segments with owner below `upto`.
    pub fn definite_segments(&self, upto: usize) -> DefiniteSegments {
        let segments = (1..upto)
            .filter(|&k| !self.in_pointer_image(k))
            .map(|k| Segment { lo: self.phi_of(k).unwrap(), hi: k, owner: k })
            .collect();
        DefiniteSegments { segments, provisional: false }
    }

    pub fn segments_partition(&self, n: usize) -> Result<Vec<Segment>, SeqError> {
        if n == 0 {
            return Err(SeqError::Unrepresented(0));
        }
        let probe = self.unroll(n);
        probe.segments_partition(n)
    }
}

/// A strictly increasing sequence `n_0 < n_1 < ...` with
/// `phi(n_{k+1}) = n_k + 1`: finite, or a head followed by a periodic tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub head: Vec<usize>,
    pub tail: Option<ChainTail>,
}

/// Periodic continuation: elements `offsets`, `offsets + period`,
/// `offsets + 2 * period`, ... (offsets absolute, ascending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTail {
    pub offsets: Vec<usize>,
    pub period: usize,
}

impl Chain {
    pub fn finite(elements: Vec<usize>) -> Chain {
        Chain { head: elements, tail: None }
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    /// Elements below `limit`, in order.
    pub fn elements_below(&self, limit: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.head.iter().copied().filter(|&e| e < limit).collect();
        if let Some(t) = &self.tail {
            if t.offsets.is_empty() || t.period == 0 {
                return out;
            }
            let mut base = 0;
            'outer: loop {
                for &o in &t.offsets {
                    let e = o + base;
                    if e >= limit {
                        break 'outer;
                    }
                    out.push(e);
                }
                base += t.period;
            }
        }
        out
    }

    pub fn contains(&self, n: usize) -> bool {
        if self.head.contains(&n) {
            return true;
        }
        match &self.tail {
            Some(t) if t.period > 0 => t
                .offsets
                .iter()
                .any(|&o| n >= o && (n - o) % t.period == 0),
            _ => false,
        }
    }

    /// Uniform parity of the elements, when they have one.
    pub fn parity(&self) -> Option<Parity> {
        let sample = self.elements_below(self.sample_horizon());
        let first = *sample.first()?;
        let parity = Parity::of(first);
        if sample.iter().all(|&e| Parity::of(e) == parity) {
            // A periodic tail preserves parity only for even periods.
            if let Some(t) = &self.tail {
                if t.period % 2 != 0 {
                    return None;
                }
            }
            Some(parity)
        } else {
            None
        }
    }

    fn sample_horizon(&self) -> usize {
        match &self.tail {
            Some(t) => t.offsets.last().copied().unwrap_or(0) + 2 * t.period + 1,
            None => self.head.last().copied().unwrap_or(0) + 1,
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.head.iter().map(|e| e.to_string()).collect();
        match &self.tail {
            None => write!(f, "{}", parts.join(", ")),
            Some(t) => {
                for &o in &t.offsets {
                    parts.push(o.to_string());
                }
                for &o in &t.offsets {
                    parts.push((o + t.period).to_string());
                }
                write!(f, "{}, +{}...", parts.join(", "), t.period)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn opposite(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A maximal chain found by exhaustive search, with the initial interval its
/// segments partition (always `[0, last + 1)` for chains that start
/// properly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteChain {
    pub elements: Vec<usize>,
    pub partitions_upto: Option<usize>,
}

/// Exhaustively enumerates all maximal chains inside `[0, n)`.
///
/// A chain extends backward deterministically (the predecessor of `e` must
/// be `phi(e) - 1`), so maximal chains start at 0 or at an element whose
/// pointer is 0; forward extension branches over every position pointing at
/// `e + 1`.
pub fn brute_force_chains(seq: &FiniteSeq, n: usize) -> Vec<BruteChain> {
    let n = n.min(seq.positions());
    let phi = seq.phi();
    let mut starts: Vec<usize> = vec![0];
    starts.extend((1..n).filter(|&s| phi[s - 1] == 0));
    let mut out = Vec::new();
    let successors = |e: usize| -> Vec<usize> {
        ((e + 1)..n).filter(|&m| phi[m - 1] == e + 1).collect()
    };
    fn extend(
        chain: &mut Vec<usize>,
        successors: &dyn Fn(usize) -> Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *chain.last().unwrap();
        let succ = successors(last);
        if succ.is_empty() {
            out.push(chain.clone());
            return;
        }
        for s in succ {
            chain.push(s);
            extend(chain, successors, out);
            chain.pop();
        }
    }
    let mut raw = Vec::new();
    for s in starts {
        let mut chain = vec![s];
        extend(&mut chain, &successors, &mut raw);
    }
    for elements in raw {
        // Segments tile contiguously by construction; the covered interval
        // is initial exactly when the first segment starts at 0.
        let first = elements[0];
        let covered_from = if first == 0 { 0 } else { phi[first - 1] };
        let partitions_upto =
            if covered_from == 0 { Some(elements.last().unwrap() + 1) } else { None };
        out.push(BruteChain { elements, partitions_upto });
    }
    out
}

/// The unique ascending chain whose segments partition `[0, ω)`, computed by
/// walking chain seeds forward through the pointer pattern and certifying
/// periodic continuation.
///
/// A maximal in-window chain that reaches the window's edge without a
/// periodicity certificate leaves its fate open, so the window grows until
/// every such chain either dies, certifies, or merely re-branches within the
/// final two periods of the unique certified chain (the recurrent edge noise
/// of a periodic pattern).
///
/// Errors: [`SeqError::NoChain`] when no chain continues through the cycle,
/// [`SeqError::Ambiguous`] when several do or the horizon cap is reached
/// with the analysis still open.
pub fn omega_chain(seq: &LassoSeq) -> Result<Chain, SeqError> {
    let cs = seq.cycle_start();
    let p = seq.period();
    let mut cycles = 8;
    loop {
        match omega_chain_window(seq, cs + cycles * p) {
            WindowOutcome::Unique(c) => return Ok(c),
            WindowOutcome::Ambiguous(cs_) => return Err(SeqError::Ambiguous(cs_)),
            WindowOutcome::Dead => return Err(SeqError::NoChain),
            WindowOutcome::Grow => {
                if cycles >= 64 {
                    return Err(SeqError::Ambiguous(
                        match omega_chain_window(seq, cs + cycles * p) {
                            WindowOutcome::Ambiguous(cs_) => cs_,
                            _ => Vec::new(),
                        },
                    ));
                }
                cycles *= 2;
            }
        }
    }
}

enum WindowOutcome {
    Unique(Chain),
    Ambiguous(Vec<Chain>),
    Dead,
    Grow,
}

fn omega_chain_window(seq: &LassoSeq, window: usize) -> WindowOutcome {
    let p = seq.period();
    // A chain extends backward deterministically, so every chain starts at 0
    // or at a position pointing at 0.
    let mut seeds = vec![0usize];
    seeds.extend((1..window).filter(|&s| seq.phi_of(s) == Some(0)));
    let successors = |e: usize| -> Vec<usize> {
        ((e + 2)..window).filter(|&m| seq.phi_of(m) == Some(e + 1)).collect()
    };
    let mut certified: Vec<Chain> = Vec::new();
    let mut open_edges: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = seeds.into_iter().map(|s| vec![s]).collect();
    let mut visited = 0usize;
    while let Some(chain) = stack.pop() {
        visited += 1;
        if visited > 200_000 {
            return WindowOutcome::Ambiguous(certified);
        }
        let last = *chain.last().unwrap();
        let succ = successors(last);
        if succ.is_empty() {
            match certify_periodic(&chain, seq, window) {
                Some(c) => {
                    if !certified.contains(&c) {
                        certified.push(c);
                    }
                }
                None => {
                    if last + 2 * p >= window {
                        open_edges.push(chain);
                    }
                }
            }
            continue;
        }
        for s in succ {
            let mut ext = chain.clone();
            ext.push(s);
            stack.push(ext);
        }
    }
    match certified.len() {
        0 => {
            if open_edges.is_empty() {
                WindowOutcome::Dead
            } else {
                WindowOutcome::Grow
            }
        }
        1 => {
            let cert = certified.pop().unwrap();
            let margin = window.saturating_sub(2 * p);
            let cert_cut = cert.elements_below(margin);
            let harmless = open_edges.iter().all(|s| {
                let cut: Vec<usize> = s.iter().copied().filter(|&e| e < margin).collect();
                cert_cut.starts_with(&cut)
            });
            if harmless {
                WindowOutcome::Unique(cert)
            } else {
                WindowOutcome::Grow
            }
        }
        _ => {
            certified.sort_by_key(|c| c.elements_below(window));
            WindowOutcome::Ambiguous(certified)
        }
    }
}

/// Certifies that a maximal finite chain continues forever: it must contain
/// two elements a multiple of the period apart such that every link between
/// them is resolved by a relative pattern entry, which then repeats shifted
/// by the period.
fn certify_periodic(elements: &[usize], seq: &LassoSeq, window: usize) -> Option<Chain> {
    let cs = seq.cycle_start();
    let p = seq.period();
    let last = *elements.last()?;
    if last + 2 * p < window {
        // The chain died well before the horizon: not infinite.
        return None;
    }
    // Find the earliest element a with a + m*p also in the chain and every
    // link in between periodic.
    for (i, &a) in elements.iter().enumerate() {
        if a < cs {
            continue;
        }
        for (j, &b) in elements.iter().enumerate().skip(i + 1) {
            if (b - a) % p != 0 {
                continue;
            }
            let links_periodic = elements[i + 1..=j].iter().all(|&e| seq.entry_is_rel(e));
            if !links_periodic {
                continue;
            }
            let step = b - a;
            let offsets: Vec<usize> = elements[i..j].to_vec();
            let head: Vec<usize> = elements[..i].to_vec();
            return Some(Chain { head, tail: Some(ChainTail { offsets, period: step }) });
        }
    }
    None
}

/// The chain together with the blamed side: the player who moves at the
/// parity absent from the chain (the responder to the chain's moves owns
/// the view at `ω`).
#[derive(Debug, Clone)]
pub struct Blame {
    pub chain: Chain,
    pub chain_parity: Parity,
    pub blamed_parity: Parity,
}

pub fn blame(seq: &LassoSeq) -> Result<Blame, SeqError> {
    let chain = omega_chain(seq)?;
    let chain_parity = chain.parity().ok_or(SeqError::MixedParity)?;
    Ok(Blame { chain, chain_parity, blamed_parity: chain_parity.opposite() })
}

/// Maximum supported limit rounds.
pub const DEFAULT_LIMIT_ROUNDS: u32 = 3;

/// A lasso extended past `ω`: the limit move answers a chain element and
/// finite moves after it follow the ordinary recurrence. The start position
/// stays visible at and after the limit.
#[derive(Debug, Clone)]
pub struct TransfiniteSeq {
    pub base: LassoSeq,
    pub chain: Chain,
    /// Pointer of the move at `ω` (a chain element).
    pub omega_pointer: usize,
    /// Pointers of positions `ω+1, ω+2, ...`.
    pub post: Vec<Position>,
    pub limit_cap: u32,
}

/// The view at a position of a transfinite sequence. Finite positions and
/// the first successors of the limit have finite views; the limit itself
/// sees the whole ascending chain, and any later position whose descent
/// passes through a pointer at the limit inherits it.
#[derive(Debug, Clone, PartialEq)]
pub enum ViewSet {
    Finite(Vec<Position>),
    /// Finitely many positions at or above the limit, plus every chain
    /// element below it.
    Infinite { above: Vec<Position>, chain: Chain },
}

impl ViewSet {
    pub fn contains(&self, p: Position) -> bool {
        match self {
            ViewSet::Finite(v) => v.contains(&p),
            ViewSet::Infinite { above, chain } => {
                above.contains(&p) || (p.is_finite() && chain.contains(p.offset))
            }
        }
    }
}

enum Tail {
    Chain,
    Done,
}

/// Appends position `ω` with pointer `choice`, which must be a chain
/// element.
pub fn extend_transfinite(seq: &LassoSeq, choice: usize) -> Result<TransfiniteSeq, SeqError> {
    let chain = omega_chain(seq)?;
    if !chain.contains(choice) {
        return Err(SeqError::NotInChain(choice));
    }
    Ok(TransfiniteSeq {
        base: seq.clone(),
        chain,
        omega_pointer: choice,
        post: Vec::new(),
        limit_cap: DEFAULT_LIMIT_ROUNDS,
    })
}

impl TransfiniteSeq {
    pub fn phi_of(&self, pos: Position) -> Option<Position> {
        match (pos.limit, pos.offset) {
            (0, n) => self.base.phi_of(n).map(Position::finite),
            (1, 0) => Some(Position::finite(self.omega_pointer)),
            (1, k) => self.post.get(k - 1).copied(),
            _ => None,
        }
    }

    /// Appends one more finite move after the limit.
    ///
    /// Only the first limit round is constructible from lasso data.
    // TODO: represent eventually periodic play after the first limit so a
    // second limit round becomes constructible up to `limit_cap`.
    pub fn append(&mut self, pointer: Position) -> Result<(), SeqError> {
        if pointer.limit > 1 {
            return Err(SeqError::LimitCap(pointer.limit, self.limit_cap));
        }
        let next = Position { limit: 1, offset: self.post.len() + 1 };
        if !self.view(next).contains(pointer) {
            return Err(SeqError::PointerOutsideView {
                position: next.offset,
                pointer: pointer.offset,
                view: vec![],
            });
        }
        self.post.push(pointer);
        Ok(())
    }

    /// The view per the recurrence, extended across the limit: the limit
    /// position sees the chain, its successor sees `{ω} ∪ V(phi(ω))`, and a
    /// descent that passes through a pointer at the limit picks the chain
    /// back up. Positions at or past the limit also retain the start move:
    /// the debate topic stays answerable forever.
    pub fn view(&self, pos: Position) -> ViewSet {
        match (pos.limit, pos.offset) {
            (0, n) => ViewSet::Finite(
                self.base.view(n).into_iter().map(Position::finite).collect(),
            ),
            (1, 0) => ViewSet::Infinite { above: Vec::new(), chain: self.chain.clone() },
            (1, k) => {
                let mut above: Vec<Position> = Vec::new();
                let mut j = k - 1;
                let finish = |mut above: Vec<Position>, tail: Tail, this: &TransfiniteSeq| {
                    match tail {
                        Tail::Chain => {
                            if !above.contains(&Position::finite(0))
                                && !this.chain.contains(0)
                            {
                                above.push(Position::finite(0));
                            }
                            ViewSet::Infinite { above, chain: this.chain.clone() }
                        }
                        Tail::Done => {
                            if !above.contains(&Position::finite(0)) {
                                above.push(Position::finite(0));
                            }
                            ViewSet::Finite(above)
                        }
                    }
                };
                loop {
                    above.push(Position { limit: 1, offset: j });
                    let q = match self.phi_of(Position { limit: 1, offset: j }) {
                        Some(q) => q,
                        None => return finish(above, Tail::Done, self),
                    };
                    if j == 0 {
                        // phi(ω) = n_j: continue as the finite view there.
                        above.extend(self.base.view(q.offset).into_iter().map(Position::finite));
                        return finish(above, Tail::Done, self);
                    }
                    match (q.limit, q.offset) {
                        (1, 0) => return finish(above, Tail::Chain, self),
                        (1, i) => j = i - 1,
                        (0, 0) => return finish(above, Tail::Done, self),
                        (0, f) => {
                            above.extend(self.base.view(f).into_iter().map(Position::finite));
                            return finish(above, Tail::Done, self);
                        }
                        _ => return finish(above, Tail::Done, self),
                    }
                }
            }
            _ => ViewSet::Finite(Vec::new()),
        }
    }

    pub fn validate(&self) -> Result<(), SeqError> {
        self.base.validate()?;
        if !self.chain.contains(self.omega_pointer) {
            return Err(SeqError::NotInChain(self.omega_pointer));
        }
        for (i, &ptr) in self.post.iter().enumerate() {
            let pos = Position { limit: 1, offset: i + 1 };
            if ptr >= pos {
                return Err(SeqError::PointerNotBelow { position: pos.offset, pointer: ptr.offset });
            }
            if !self.view(pos).contains(ptr) {
                return Err(SeqError::PointerOutsideView {
                    position: pos.offset,
                    pointer: ptr.offset,
                    view: vec![],
                });
            }
        }
        Ok(())
    }
}

/// Line format: `n: phi` per position, one per line. Lassos carry a header
/// naming `cycle_start`, `cycle_len` and the pointer `shift`, and list two
/// full cycles so the pattern is recoverable.
pub fn to_phi_lines(finite: Option<&FiniteSeq>, lasso: Option<&LassoSeq>) -> String {
    let mut out = String::new();
    match (finite, lasso) {
        (Some(seq), None) => {
            for (i, p) in seq.phi().iter().enumerate() {
                out.push_str(&format!("{}: {}\n", i + 1, p));
            }
        }
        (None, Some(seq)) => {
            out.push_str(&format!("cycle_start: {}\n", seq.cycle_start()));
            out.push_str(&format!("cycle_len: {}\n", seq.period()));
            out.push_str(&format!("shift: {}\n", seq.shift()));
            let upto = seq.cycle_start() + 2 * seq.period();
            for n in 1..upto {
                out.push_str(&format!("{}: {}\n", n, seq.phi_of(n).unwrap()));
            }
        }
        _ => {}
    }
    out
}

pub enum ParsedSeq {
    Finite(FiniteSeq),
    Lasso(LassoSeq),
}

pub fn parse_phi_lines(input: &str) -> Result<ParsedSeq, String> {
    let mut cycle_start = None;
    let mut cycle_len = None;
    let mut entries: Vec<(usize, usize)> = Vec::new();
    for tok in input.split_whitespace().collect::<Vec<_>>().chunks(2) {
        if tok.len() != 2 {
            return Err(format!("dangling token `{}`", tok[0]));
        }
        let key = tok[0].trim_end_matches(':');
        let val: usize = tok[1].parse().map_err(|_| format!("bad number `{}`", tok[1]))?;
        match key {
            "cycle_start" => cycle_start = Some(val),
            "cycle_len" => cycle_len = Some(val),
            "shift" => {}
            pos => {
                let n: usize = pos.parse().map_err(|_| format!("bad position `{pos}`"))?;
                entries.push((n, val));
            }
        }
    }
    entries.sort();
    for (i, (n, _)) in entries.iter().enumerate() {
        if *n != i + 1 {
            return Err(format!("positions must be contiguous from 1; missing {}", i + 1));
        }
    }
    let phi: Vec<usize> = entries.into_iter().map(|(_, p)| p).collect();
    match (cycle_start, cycle_len) {
        (Some(cs), Some(cl)) => {
            if cs < 1 || cl == 0 || phi.len() < cs - 1 + 2 * cl {
                return Err("cycle header does not match the listed pointers".into());
            }
            let prefix = phi[..cs - 1].to_vec();
            let cycle1 = &phi[cs - 1..cs - 1 + cl];
            let cycle2 = &phi[cs - 1 + cl..cs - 1 + 2 * cl];
            LassoSeq::from_cycles(prefix, cycle1, cycle2)
                .map(ParsedSeq::Lasso)
                .map_err(|e| e.to_string())
        }
        (None, None) => Ok(ParsedSeq::Finite(FiniteSeq::new(phi))),
        _ => Err("lasso header requires both cycle_start and cycle_len".into()),
    }
}

/// Draws a uniformly random valid interaction sequence of the given length:
/// each pointer is sampled from the view at its stage.
pub fn random_valid_seq<R: Rng>(rng: &mut R, positions: usize) -> FiniteSeq {
    let mut phi: Vec<usize> = Vec::with_capacity(positions.saturating_sub(1));
    for n in 1..positions {
        let view = view_of_phi(&phi, n);
        let pick = view[rng.gen_range(0..view.len())];
        phi.push(pick);
    }
    FiniteSeq::new(phi)
}

/// Draws a random valid lasso by rejection: a random valid prefix plus a
/// random pointer pattern, kept when the unrolling stays valid.
pub fn random_valid_lasso<R: Rng>(rng: &mut R, tries: usize) -> Option<LassoSeq> {
    for _ in 0..tries {
        let prefix_positions = rng.gen_range(1..12);
        let base = random_valid_seq(rng, prefix_positions);
        let cs = base.positions();
        let p = rng.gen_range(1..=4usize);
        let pattern: Vec<PatEntry> = (0..p)
            .map(|j| {
                let pos = cs + j;
                if rng.gen_bool(0.3) {
                    PatEntry::Abs(rng.gen_range(0..cs))
                } else {
                    PatEntry::Rel(rng.gen_range(1..=pos))
                }
            })
            .collect();
        if let Ok(lasso) = LassoSeq::new(base.phi().to_vec(), pattern) {
            return Some(lasso);
        }
    }
    None
}
