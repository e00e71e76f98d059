//! Budgeted membership checks for the two inductive validity sets.
//!
//! Intuitionistic validity is the least set containing `1`, closed under
//! conjunctions of valid formulas and disjunctions with a valid member.
//! Classical validity keeps the first two clauses and replaces the third: a
//! disjunction is valid when some disjunct is `1`, or is a conjunction each
//! of whose conjuncts, disjoined back onto the whole disjunction, is valid.
//!
//! Neither set is decidable over generated families, so both checkers are
//! tri-state: `Unknown` is returned exactly when an enumeration or fuel
//! budget was hit before a conclusive answer.

use std::collections::{BTreeSet, HashMap};

use super::{Formula, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity3 {
    Valid,
    Invalid,
    Unknown,
}

/// Exploration budget: `fuel` bounds visited nodes, `width` bounds how many
/// children of an unbounded generated family are explored.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub fuel: u64,
    pub width: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { fuel: 200_000, width: 16 }
    }
}

struct Fuel {
    left: u64,
    width: u64,
}

impl Fuel {
    fn tick(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}

/// How far a family can be enumerated: all of it, or a budgeted prefix of an
/// unbounded generator.
enum Coverage {
    Full(u64),
    Partial(u64),
}

fn nat_coverage(a: &Formula, fuel: &Fuel) -> Coverage {
    match a.nat_family_size() {
        Some(n) => Coverage::Full(n),
        None => Coverage::Partial(fuel.width),
    }
}

pub fn is_intuitionistically_valid(a: &Formula, budget: Budget) -> Validity3 {
    let mut fuel = Fuel { left: budget.fuel, width: budget.width };
    iv(a, &mut fuel)
}

fn iv(a: &Formula, fuel: &mut Fuel) -> Validity3 {
    if !fuel.tick() {
        return Validity3::Unknown;
    }
    if let Some(v) = a.leaf_value() {
        return if v { Validity3::Valid } else { Validity3::Invalid };
    }
    if a.children().opaque.is_some() {
        return Validity3::Unknown;
    }
    let (full, limit) = match nat_coverage(a, fuel) {
        Coverage::Full(n) => (true, n),
        Coverage::Partial(n) => (false, n),
    };
    // A function-indexed part can never be exhausted.
    let full = full && !a.has_function_family();
    let mut saw_unknown = !full;
    match a.kind() {
        Kind::Conj => {
            for i in 0..limit {
                let Some(ch) = a.child_nat(i) else { break };
                match iv(&ch, fuel) {
                    Validity3::Invalid => return Validity3::Invalid,
                    Validity3::Unknown => saw_unknown = true,
                    Validity3::Valid => {}
                }
            }
            if saw_unknown {
                Validity3::Unknown
            } else {
                Validity3::Valid
            }
        }
        Kind::Disj => {
            for i in 0..limit {
                let Some(ch) = a.child_nat(i) else { break };
                match iv(&ch, fuel) {
                    Validity3::Valid => return Validity3::Valid,
                    Validity3::Unknown => saw_unknown = true,
                    Validity3::Invalid => {}
                }
            }
            if saw_unknown {
                Validity3::Unknown
            } else {
                Validity3::Invalid
            }
        }
    }
}

/// Classical validity. The input is canonicalized first, since the
/// disjunction clause inspects disjuncts that are `1` or conjunctions.
/// Memoized on the set of disjuncts in play; membership is a least fixed
/// point, so derivations that merely revisit an in-progress disjunct set
/// refute nothing and that branch fails.
pub fn is_classically_valid(a: &Formula, budget: Budget) -> Validity3 {
    let a = super::canonicalize(a);
    let mut fuel = Fuel { left: budget.fuel, width: budget.width };
    let mut memo = Memo::default();
    cv(&a, &mut fuel, &mut memo)
}

type DisjunctSet = BTreeSet<FormulaKey>;

/// Ordering key wrapping structural equality; generated families order by
/// their display form, which is stable for the built-in formulas.
#[derive(PartialEq, Eq, Hash, Clone)]
struct FormulaKey(Formula);

impl Ord for FormulaKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self == other {
            return std::cmp::Ordering::Equal;
        }
        format!("{:?}", self.0).cmp(&format!("{:?}", other.0))
    }
}

impl PartialOrd for FormulaKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Default)]
struct Memo {
    done: HashMap<Vec<FormulaKey>, Validity3>,
    in_progress: Vec<Vec<FormulaKey>>,
}

fn cv(a: &Formula, fuel: &mut Fuel, memo: &mut Memo) -> Validity3 {
    if !fuel.tick() {
        return Validity3::Unknown;
    }
    if let Some(v) = a.leaf_value() {
        return if v { Validity3::Valid } else { Validity3::Invalid };
    }
    if a.children().opaque.is_some() {
        return Validity3::Unknown;
    }
    match a.kind() {
        Kind::Conj => {
            let (full, limit) = match nat_coverage(a, fuel) {
                Coverage::Full(n) => (true, n),
                Coverage::Partial(n) => (false, n),
            };
            let full = full && !a.has_function_family();
            let mut saw_unknown = !full;
            for i in 0..limit {
                let Some(ch) = a.child_nat(i) else { break };
                match cv(&ch, fuel, memo) {
                    Validity3::Invalid => return Validity3::Invalid,
                    Validity3::Unknown => saw_unknown = true,
                    Validity3::Valid => {}
                }
            }
            if saw_unknown {
                Validity3::Unknown
            } else {
                Validity3::Valid
            }
        }
        Kind::Disj => {
            let mut set = DisjunctSet::new();
            let mut exhaustive = collect_disjuncts(a, fuel, &mut set);
            if a.has_function_family() {
                exhaustive = false;
            }
            let (v, _tainted) = cv_disjunction(&set, exhaustive, fuel, memo);
            v
        }
    }
}

/// Flattens a disjunction into its set of disjuncts, splicing nested
/// disjunctions. Returns whether the set is exhaustive.
fn collect_disjuncts(a: &Formula, fuel: &Fuel, out: &mut DisjunctSet) -> bool {
    let (full, limit) = match nat_coverage(a, fuel) {
        Coverage::Full(n) => (true, n),
        Coverage::Partial(n) => (false, n),
    };
    let mut exhaustive = full;
    for i in 0..limit {
        let Some(ch) = a.child_nat(i) else { break };
        if ch.kind() == Kind::Disj && !ch.is_leaf() {
            exhaustive &= collect_disjuncts(&ch, fuel, out);
        } else {
            out.insert(FormulaKey(ch));
        }
    }
    exhaustive
}

/// Decides membership for a set of disjuncts. The boolean in the result
/// marks answers computed under an in-progress assumption: a "tainted"
/// failure is not cached, since the assumption may later be discharged.
/// Successes are always sound and cacheable.
fn cv_disjunction(
    set: &DisjunctSet,
    exhaustive: bool,
    fuel: &mut Fuel,
    memo: &mut Memo,
) -> (Validity3, bool) {
    let key: Vec<FormulaKey> = set.iter().cloned().collect();
    if let Some(v) = memo.done.get(&key) {
        return (*v, false);
    }
    if memo.in_progress.contains(&key) {
        // Least fixed point: a cyclic derivation establishes nothing.
        return (Validity3::Invalid, true);
    }
    memo.in_progress.push(key.clone());
    let mut tainted = false;
    let mut result = Validity3::Invalid;
    let mut saw_unknown = !exhaustive;
    'candidates: for cand in set {
        let d = &cand.0;
        if d.leaf_value() == Some(true) {
            result = Validity3::Valid;
            break;
        }
        if d.is_leaf() || d.kind() != Kind::Conj {
            continue; // a 0 leaf or (non-canonical) disjunct cannot witness
        }
        if d.children().opaque.is_some() || d.has_function_family() {
            saw_unknown = true;
            continue;
        }
        let (full, limit) = match nat_coverage(d, fuel) {
            Coverage::Full(n) => (true, n),
            Coverage::Partial(n) => (false, n),
        };
        if !full {
            // An infinite conjunction can be refuted but never certified.
            for j in 0..limit {
                let Some(cj) = d.child_nat(j) else { break };
                if branch_fails_conclusively(&cj, set, exhaustive, fuel, memo, &mut tainted) {
                    continue 'candidates;
                }
            }
            saw_unknown = true;
            continue;
        }
        let mut all_valid = true;
        for j in 0..limit {
            if !fuel.tick() {
                saw_unknown = true;
                all_valid = false;
                break;
            }
            let Some(cj) = d.child_nat(j) else { break };
            let mut extended = set.clone();
            let mut ext_exhaustive = exhaustive;
            if cj.kind() == Kind::Disj && !cj.is_leaf() {
                ext_exhaustive &= collect_disjuncts(&cj, fuel, &mut extended);
            } else {
                extended.insert(FormulaKey(cj));
            }
            let (v, t) = cv_disjunction(&extended, ext_exhaustive, fuel, memo);
            tainted |= t;
            match v {
                Validity3::Valid => {}
                Validity3::Invalid => {
                    all_valid = false;
                    break;
                }
                Validity3::Unknown => {
                    all_valid = false;
                    saw_unknown = true;
                    break;
                }
            }
        }
        if all_valid {
            result = Validity3::Valid;
            break;
        }
    }
    if result != Validity3::Valid && saw_unknown {
        result = Validity3::Unknown;
    }
    memo.in_progress.pop();
    let cacheable = result == Validity3::Valid || !tainted;
    if cacheable {
        memo.done.insert(key, result);
        tainted = false;
    }
    (result, tainted)
}

fn branch_fails_conclusively(
    cj: &Formula,
    set: &DisjunctSet,
    exhaustive: bool,
    fuel: &mut Fuel,
    memo: &mut Memo,
    tainted: &mut bool,
) -> bool {
    let mut extended = set.clone();
    let mut ext_exhaustive = exhaustive;
    if cj.kind() == Kind::Disj && !cj.is_leaf() {
        ext_exhaustive &= collect_disjuncts(cj, fuel, &mut extended);
    } else {
        extended.insert(FormulaKey(cj.clone()));
    }
    let (v, t) = cv_disjunction(&extended, ext_exhaustive, fuel, memo);
    *tainted |= t;
    v == Validity3::Invalid && !t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{canonicalize, negate, or2, Formula};

    #[test]
    fn base_cases() {
        let b = Budget::default();
        assert_eq!(is_intuitionistically_valid(&Formula::one(), b), Validity3::Valid);
        assert_eq!(is_classically_valid(&Formula::one(), b), Validity3::Valid);
        assert_eq!(
            is_intuitionistically_valid(&Formula::conj(vec![Formula::one(), Formula::zero()]), b),
            Validity3::Invalid
        );
        assert_eq!(
            is_classically_valid(&Formula::disj(vec![Formula::zero()]), b),
            Validity3::Invalid
        );
    }

    #[test]
    fn excluded_middle_for_a_finite_conjunction() {
        let a = Formula::conj(vec![Formula::zero(), Formula::one()]);
        let lem = canonicalize(&or2(&a, &negate(&a)));
        assert_eq!(is_classically_valid(&lem, Budget::default()), Validity3::Valid);
        // The same formula is intuitionistically decided here too, since the
        // negation is explicit.
        assert_eq!(is_intuitionistically_valid(&lem, Budget::default()), Validity3::Valid);
    }

    #[test]
    fn recursive_clause_reaches_nested_truth() {
        // or { and { or { 1 } } } is valid via the recursive clause.
        let f = Formula::disj(vec![Formula::conj(vec![Formula::disj(vec![Formula::one()])])]);
        assert_eq!(is_classically_valid(&f, Budget::default()), Validity3::Valid);
    }

    #[test]
    fn cyclic_derivations_refute() {
        // or { and { 0 } }: the only candidate loops back on itself with
        // nothing new and fails.
        let f = Formula::disj(vec![Formula::conj(vec![Formula::zero()])]);
        assert_eq!(is_classically_valid(&f, Budget::default()), Validity3::Invalid);
    }

    #[test]
    fn unknown_only_under_budget_pressure() {
        use crate::formula::{Children, NatGen};
        let inf = Formula::new(
            Kind::Conj,
            Children {
                tail: Some(NatGen::new("x", None, |_| Formula::one())),
                ..Children::default()
            },
        );
        // All explored children valid, but the family is unbounded.
        assert_eq!(is_intuitionistically_valid(&inf, Budget::default()), Validity3::Unknown);
        // A refutation inside the window is conclusive.
        let inf_bad = Formula::new(
            Kind::Conj,
            Children {
                tail: Some(NatGen::new("x", None, |i| Formula::leaf(i != 3))),
                ..Children::default()
            },
        );
        assert_eq!(is_intuitionistically_valid(&inf_bad, Budget::default()), Validity3::Invalid);
    }
}
