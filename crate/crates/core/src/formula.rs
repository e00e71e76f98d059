//! Infinitary and/or formulas.
//!
//! A formula is a tree whose nodes are conjunctions or disjunctions over an
//! indexed family of children. Families may be finite lists, countable
//! generators over the naturals, or function-indexed (children obtained by
//! applying a played function). The leaves are the empty conjunction (truth,
//! written `1`) and the empty disjunction (falsity, written `0`); an
//! arithmetic atom such as `f(2) <= f(3)` is resolved to one of these at
//! construction time and keeps its reading as a display label.

pub mod examples;
pub mod oracle;
pub mod sexpr;
mod validity;

use std::fmt;
use std::sync::Arc;

use crate::arena::FunctionHandle;

pub use oracle::{OracleFn, PredOracle};
pub use validity::{Budget, Validity3};

/// Node connective. A leaf is an empty family: `Conj` with no children is
/// truth, `Disj` with no children is falsity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Conj,
    Disj,
}

impl Kind {
    pub fn dual(self) -> Kind {
        match self {
            Kind::Conj => Kind::Disj,
            Kind::Disj => Kind::Conj,
        }
    }
}

/// Display label for an oracle-resolved leaf, together with the label of its
/// complement so that negation can keep the arithmetic reading.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub text: String,
    pub dual_text: String,
}

/// Countable child family generated from the naturals.
///
/// `bound` is the family size when `Some`; `None` means a genuinely infinite
/// family that checkers may only explore up to a budgeted width.
#[derive(Clone)]
pub struct NatGen {
    pub var: String,
    pub bound: Option<u64>,
    gen: Arc<dyn Fn(u64) -> Formula + Send + Sync>,
}

impl NatGen {
    pub fn new(
        var: impl Into<String>,
        bound: Option<u64>,
        gen: impl Fn(u64) -> Formula + Send + Sync + 'static,
    ) -> Self {
        NatGen { var: var.into(), bound, gen: Arc::new(gen) }
    }

    pub fn child(&self, i: u64) -> Option<Formula> {
        match self.bound {
            Some(b) if i >= b => None,
            _ => Some((self.gen)(i)),
        }
    }
}

/// Function-indexed child family: a child per playable function.
#[derive(Clone)]
pub struct FunGen {
    pub var: String,
    gen: Arc<dyn Fn(&FunctionHandle) -> Formula + Send + Sync>,
}

impl FunGen {
    pub fn new(
        var: impl Into<String>,
        gen: impl Fn(&FunctionHandle) -> Formula + Send + Sync + 'static,
    ) -> Self {
        FunGen { var: var.into(), gen: Arc::new(gen) }
    }

    pub fn child(&self, handle: &FunctionHandle) -> Formula {
        (self.gen)(handle)
    }
}

/// Placeholder family parsed from `(gen bound "name")`. Its children are not
/// constructible; checkers answer `Unknown` and the game rejects moves into
/// it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpaqueTag {
    pub name: String,
    pub bound: Option<u64>,
    pub negations: bool,
}

/// The indexed child family of a node. Natural-number indices address `head`
/// first and then the generated `tail`; function payloads address `fun`.
#[derive(Clone, Default)]
pub struct Children {
    pub head: Vec<Formula>,
    pub tail: Option<NatGen>,
    pub fun: Option<FunGen>,
    pub opaque: Option<OpaqueTag>,
}

impl Children {
    fn is_empty(&self) -> bool {
        self.head.is_empty() && self.tail.is_none() && self.fun.is_none() && self.opaque.is_none()
    }
}

struct Node {
    kind: Kind,
    children: Children,
    atom: Option<Atom>,
}

/// An immutable and/or formula. Cheap to clone and safe to share across
/// threads; generator closures must be pure.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("formula is not finite: {0}")]
    NotFinite(String),
    #[error("unknown example name: {0}")]
    UnknownExample(String),
    #[error("missing oracle: {0}")]
    MissingOracle(String),
    #[error("oracle value out of evaluable range at {0}")]
    OracleRange(String),
    #[error("opaque generator family `{0}` cannot be elaborated")]
    Opaque(String),
}

impl Formula {
    pub fn new(kind: Kind, children: Children) -> Formula {
        Formula(Arc::new(Node { kind, children, atom: None }))
    }

    /// Truth: the empty conjunction.
    pub fn one() -> Formula {
        Formula::new(Kind::Conj, Children::default())
    }

    /// Falsity: the empty disjunction.
    pub fn zero() -> Formula {
        Formula::new(Kind::Disj, Children::default())
    }

    pub fn leaf(value: bool) -> Formula {
        if value {
            Formula::one()
        } else {
            Formula::zero()
        }
    }

    /// An oracle-resolved atom: a 0/1 leaf that remembers its reading and the
    /// reading of its complement.
    pub fn atom(value: bool, text: impl Into<String>, dual_text: impl Into<String>) -> Formula {
        Formula(Arc::new(Node {
            kind: if value { Kind::Conj } else { Kind::Disj },
            children: Children::default(),
            atom: Some(Atom { text: text.into(), dual_text: dual_text.into() }),
        }))
    }

    pub fn conj(children: Vec<Formula>) -> Formula {
        Formula::new(Kind::Conj, Children { head: children, ..Children::default() })
    }

    pub fn disj(children: Vec<Formula>) -> Formula {
        Formula::new(Kind::Disj, Children { head: children, ..Children::default() })
    }

    pub fn kind(&self) -> Kind {
        self.0.kind
    }

    pub fn children(&self) -> &Children {
        &self.0.children
    }

    pub fn atom_label(&self) -> Option<&Atom> {
        self.0.atom.as_ref()
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// The truth value of a leaf; `None` on inner nodes.
    pub fn leaf_value(&self) -> Option<bool> {
        if self.is_leaf() {
            Some(self.0.kind == Kind::Conj)
        } else {
            None
        }
    }

    /// Child under a natural-number index: `head` first, then the generated
    /// tail. `None` when the index is outside the family.
    pub fn child_nat(&self, i: u64) -> Option<Formula> {
        let c = &self.0.children;
        if (i as usize) < c.head.len() {
            return Some(c.head[i as usize].clone());
        }
        let rest = i - c.head.len() as u64;
        c.tail.as_ref().and_then(|t| t.child(rest))
    }

    /// Child under a function payload, for function-indexed families.
    pub fn child_fun(&self, handle: &FunctionHandle) -> Option<Formula> {
        self.0.children.fun.as_ref().map(|f| f.child(handle))
    }

    /// Number of natural-number-indexed children, when that is finite.
    pub fn nat_family_size(&self) -> Option<u64> {
        let c = &self.0.children;
        if c.opaque.is_some() {
            return None;
        }
        match &c.tail {
            None => Some(c.head.len() as u64),
            Some(t) => t.bound.map(|b| c.head.len() as u64 + b),
        }
    }

    pub fn has_function_family(&self) -> bool {
        self.0.children.fun.is_some()
    }

    /// Display name for the natural index at offset `i`, e.g. `x=3`; listed
    /// leaf children show their reading instead.
    pub fn nat_index_name(&self, i: u64) -> String {
        let c = &self.0.children;
        if (i as usize) < c.head.len() {
            let child = &c.head[i as usize];
            match (child.atom_label(), child.leaf_value()) {
                (Some(atom), _) => atom.text.clone(),
                (None, Some(v)) => format!("{}", if v { 1 } else { 0 }),
                _ => format!("#{i}"),
            }
        } else {
            let rest = i - c.head.len() as u64;
            match &c.tail {
                Some(t) => format!("{}={}", t.var, rest),
                None => format!("#{i}"),
            }
        }
    }

    /// True when the formula is a finite tree of listed children.
    pub fn is_finite(&self) -> bool {
        let c = &self.0.children;
        c.tail.is_none()
            && c.fun.is_none()
            && c.opaque.is_none()
            && c.head.iter().all(|f| f.is_finite())
    }

    /// Node count of a finite formula.
    pub fn size(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        let mut n = 1;
        for ch in &self.0.children.head {
            n += ch.size()?;
        }
        Some(n)
    }
}

/// De Morgan negation: connectives swap recursively, atoms are replaced by
/// their complements.
pub fn negate(a: &Formula) -> Formula {
    let node = &a.0;
    if let Some(atom) = &node.atom {
        return Formula(Arc::new(Node {
            kind: node.kind.dual(),
            children: Children::default(),
            atom: Some(Atom { text: atom.dual_text.clone(), dual_text: atom.text.clone() }),
        }));
    }
    let c = &node.children;
    let children = Children {
        head: c.head.iter().map(negate).collect(),
        tail: c.tail.as_ref().map(|t| {
            let inner = t.clone();
            NatGen {
                var: t.var.clone(),
                bound: t.bound,
                gen: Arc::new(move |i| negate(&(inner.gen)(i))),
            }
        }),
        fun: c.fun.as_ref().map(|f| {
            let inner = f.clone();
            FunGen { var: f.var.clone(), gen: Arc::new(move |h| negate(&(inner.gen)(h))) }
        }),
        opaque: c.opaque.as_ref().map(|o| OpaqueTag { negations: !o.negations, ..o.clone() }),
    };
    Formula(Arc::new(Node { kind: node.kind.dual(), children, atom: None }))
}

/// Flattens nested same-connective nodes so that no listed child of a
/// conjunction is a non-leaf conjunction and dually for disjunctions. Leaves
/// are atomic and never spliced. Generated families are canonicalized lazily
/// and not spliced across the generator boundary; the built-in formulas all
/// alternate below their generators already.
pub fn canonicalize(a: &Formula) -> Formula {
    let node = &a.0;
    if a.is_leaf() {
        return a.clone();
    }
    let kind = node.kind;
    let c = &node.children;
    let mut head: Vec<Formula> = Vec::with_capacity(c.head.len());
    let mut tail = c.tail.clone();
    let mut fun = c.fun.clone();
    for ch in &c.head {
        let ch = canonicalize(ch);
        if ch.kind() == kind && !ch.is_leaf() && ch.0.children.opaque.is_none() {
            let cc = &ch.0.children;
            head.extend(cc.head.iter().cloned());
            if let Some(t) = &cc.tail {
                if tail.is_none() {
                    tail = Some(t.clone());
                } else {
                    // Two generated tails cannot be merged into one index
                    // space; keep the child unspliced instead.
                    head.push(ch.clone());
                    continue;
                }
            }
            if let Some(f) = &cc.fun {
                if fun.is_none() {
                    fun = Some(f.clone());
                }
            }
        } else {
            head.push(ch);
        }
    }
    let tail = tail.map(|t| {
        let inner = t.clone();
        NatGen {
            var: t.var.clone(),
            bound: t.bound,
            gen: Arc::new(move |i| canonicalize(&(inner.gen)(i))),
        }
    });
    let fun = fun.map(|f| {
        let inner = f.clone();
        FunGen { var: f.var.clone(), gen: Arc::new(move |h| canonicalize(&(inner.gen)(h))) }
    });
    Formula(Arc::new(Node {
        kind,
        children: Children { head, tail, fun, opaque: c.opaque.clone() },
        atom: None,
    }))
}

/// Binary disjunction followed by canonicalization.
pub fn or2(a: &Formula, b: &Formula) -> Formula {
    canonicalize(&Formula::disj(vec![a.clone(), b.clone()]))
}

/// Standard boolean evaluation of a finite formula: a conjunction holds when
/// all children do, a disjunction when some child does.
pub fn eval_finite(a: &Formula) -> Result<bool, FormulaError> {
    let c = &a.0.children;
    if let Some(o) = &c.opaque {
        return Err(FormulaError::Opaque(o.name.clone()));
    }
    if c.fun.is_some() {
        return Err(FormulaError::NotFinite("function-indexed family".into()));
    }
    if let Some(t) = &c.tail {
        let Some(b) = t.bound else {
            return Err(FormulaError::NotFinite(format!("unbounded family over {}", t.var)));
        };
        let mut all = true;
        let mut any = false;
        for i in 0..b {
            let v = eval_finite(&t.child(i).expect("within bound"))?;
            all &= v;
            any |= v;
        }
        for ch in &c.head {
            let v = eval_finite(ch)?;
            all &= v;
            any |= v;
        }
        return Ok(match a.kind() {
            Kind::Conj => all,
            Kind::Disj => any,
        });
    }
    match a.kind() {
        Kind::Conj => {
            for ch in &c.head {
                if !eval_finite(ch)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Kind::Disj => {
            for ch in &c.head {
                if eval_finite(ch)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

pub use validity::{is_classically_valid, is_intuitionistically_valid};

impl PartialEq for Formula {
    /// Structural equality. Generated families compare by variable name,
    /// bound and generator identity; fully listed formulas compare by shape.
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        let (a, b) = (&self.0, &other.0);
        a.kind == b.kind
            && a.atom == b.atom
            && a.children.head == b.children.head
            && match (&a.children.tail, &b.children.tail) {
                (None, None) => true,
                (Some(x), Some(y)) => {
                    x.var == y.var && x.bound == y.bound && Arc::ptr_eq(&x.gen, &y.gen)
                }
                _ => false,
            }
            && match (&a.children.fun, &b.children.fun) {
                (None, None) => true,
                (Some(x), Some(y)) => x.var == y.var && Arc::ptr_eq(&x.gen, &y.gen),
                _ => false,
            }
            && a.children.opaque == b.children.opaque
    }
}

impl Eq for Formula {}

impl std::hash::Hash for Formula {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state);
        self.0.atom.hash(state);
        self.0.children.head.hash(state);
        if let Some(t) = &self.0.children.tail {
            t.var.hash(state);
            t.bound.hash(state);
            (Arc::as_ptr(&t.gen) as *const () as usize).hash(state);
        }
        if let Some(f) = &self.0.children.fun {
            f.var.hash(state);
            (Arc::as_ptr(&f.gen) as *const () as usize).hash(state);
        }
        self.0.children.opaque.hash(state);
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", sexpr::to_sexpr(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", sexpr::to_sexpr(self))
    }
}

/// Compares two formulas by exploring generated families side by side up to
/// `width` children and `depth` levels. Intended for tests and diagnostics
/// where generator identity differs but the trees should agree.
pub fn equal_explored(a: &Formula, b: &Formula, width: u64, depth: u32) -> bool {
    if depth == 0 {
        return true;
    }
    if a.kind() != b.kind() || a.is_leaf() != b.is_leaf() {
        return false;
    }
    if a.is_leaf() {
        return a.leaf_value() == b.leaf_value();
    }
    let (ca, cb) = (a.children(), b.children());
    if ca.opaque.is_some() || cb.opaque.is_some() {
        return ca.opaque == cb.opaque;
    }
    if ca.fun.is_some() != cb.fun.is_some() {
        return false;
    }
    let na = a.nat_family_size();
    let nb = b.nat_family_size();
    if na != nb {
        return false;
    }
    let limit = na.unwrap_or(width).min(width);
    for i in 0..limit {
        match (a.child_nat(i), b.child_nat(i)) {
            (Some(x), Some(y)) => {
                if !equal_explored(&x, &y, width, depth - 1) {
                    return false;
                }
            }
            (None, None) => break,
            _ => return false,
        }
    }
    if let (Some(fa), Some(fb)) = (&ca.fun, &cb.fun) {
        let probe = FunctionHandle::constant(0);
        if !equal_explored(&fa.child(&probe), &fb.child(&probe), width, depth - 1) {
            return false;
        }
    }
    true
}
