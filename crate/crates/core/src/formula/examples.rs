//! Built-in formula constructors.
//!
//! Each builds the and/or tree of a named statement with its atoms resolved
//! through the supplied oracles:
//!
//! * `minimum` — `or_x and_y f(x) <= f(y)`: "f takes a minimum value".
//! * `epsilon-goal` — `(and_n or_m f(n) > f(m)) or or_u f(u) <= f(u+1)`.
//! * `choice` — `or_f and_x P(x, f(x))  or  or_x and_y not P(x, y)`.
//! * `star` — `or_f and_x or_y (f(x) = 0 and f(y) != 0)`: false, yet
//!   defensible against any opponent that reads only finitely many values.
//! * `star-negation` — its de Morgan dual.
//! * `ackermann-bound` — `or_x and_y y <= f(x)`.
//!
//! Function-quantified families (`or_f`, `and_f`) are function-indexed:
//! they are answered with a played function, not a natural number.

use std::str::FromStr;

use super::oracle::{OracleFn, PredOracle};
use super::{Children, Formula, FormulaError, FunGen, Kind, NatGen};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleName {
    Minimum,
    EpsilonGoal,
    Choice,
    Star,
    StarNegation,
    AckermannBound,
}

impl ExampleName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExampleName::Minimum => "minimum",
            ExampleName::EpsilonGoal => "epsilon-goal",
            ExampleName::Choice => "choice",
            ExampleName::Star => "star",
            ExampleName::StarNegation => "star-negation",
            ExampleName::AckermannBound => "ackermann-bound",
        }
    }
}

impl FromStr for ExampleName {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimum" => Ok(ExampleName::Minimum),
            "epsilon-goal" => Ok(ExampleName::EpsilonGoal),
            "choice" => Ok(ExampleName::Choice),
            "star" => Ok(ExampleName::Star),
            "star-negation" => Ok(ExampleName::StarNegation),
            "ackermann-bound" => Ok(ExampleName::AckermannBound),
            other => Err(FormulaError::UnknownExample(other.to_string())),
        }
    }
}

/// Oracles a named formula may draw on.
#[derive(Clone, Default)]
pub struct ExampleOracle {
    pub f: Option<OracleFn>,
    pub pred: Option<PredOracle>,
}

impl ExampleOracle {
    pub fn with_f(f: OracleFn) -> ExampleOracle {
        ExampleOracle { f: Some(f), pred: None }
    }

    pub fn with_pred(p: PredOracle) -> ExampleOracle {
        ExampleOracle { f: None, pred: Some(p) }
    }

    fn f(&self) -> Result<OracleFn, FormulaError> {
        self.f.clone().ok_or_else(|| FormulaError::MissingOracle("f".into()))
    }

    fn pred(&self) -> Result<PredOracle, FormulaError> {
        self.pred.clone().ok_or_else(|| FormulaError::MissingOracle("P".into()))
    }
}

pub fn build_example(name: ExampleName, oracle: &ExampleOracle) -> Result<Formula, FormulaError> {
    match name {
        ExampleName::Minimum => Ok(minimum(oracle.f()?)),
        ExampleName::EpsilonGoal => Ok(epsilon_goal(oracle.f()?)),
        ExampleName::Choice => Ok(choice(oracle.pred()?)),
        ExampleName::Star => Ok(star()),
        ExampleName::StarNegation => Ok(star_negation()),
        ExampleName::AckermannBound => Ok(ackermann_bound(oracle.f()?)),
    }
}

fn leq_atom(f: &OracleFn, x: u64, y: u64) -> Formula {
    let holds = match (f.eval(x), f.eval(y)) {
        (Some(a), Some(b)) => a <= b,
        // Non-materializable values only arise for the Ackermann diagonal,
        // which is strictly increasing.
        _ => x <= y,
    };
    Formula::atom(holds, format!("f({x}) <= f({y})"), format!("f({x}) > f({y})"))
}

/// `or_x and_y f(x) <= f(y)`.
pub fn minimum(f: OracleFn) -> Formula {
    Formula::new(
        Kind::Disj,
        Children {
            tail: Some(NatGen::new("x", None, move |x| {
                let f = f.clone();
                Formula::new(
                    Kind::Conj,
                    Children {
                        tail: Some(NatGen::new("y", None, move |y| leq_atom(&f, x, y))),
                        ..Children::default()
                    },
                )
            })),
            ..Children::default()
        },
    )
}

/// The goal `or_u f(u) <= f(u+1)`.
pub fn descent_goal(f: OracleFn) -> Formula {
    Formula::new(
        Kind::Disj,
        Children {
            tail: Some(NatGen::new("u", None, move |u| leq_atom(&f, u, u + 1))),
            ..Children::default()
        },
    )
}

/// `(and_n or_m f(n) > f(m)) or or_u f(u) <= f(u+1)`: the negated minimum
/// statement disjoined with the descent goal, in canonical form. One listed
/// disjunct (the conjunction asking for `n`) followed by the goal family.
pub fn epsilon_goal(f: OracleFn) -> Formula {
    let neg_min = super::negate(&minimum(f.clone()));
    super::or2(&neg_min, &descent_goal(f))
}

/// `or_f and_x P(x, f(x))  or  or_x and_y not P(x, y)`. The first family is
/// function-indexed, the second ranges over naturals.
pub fn choice(p: PredOracle) -> Formula {
    let pf = p.clone();
    Formula::new(
        Kind::Disj,
        Children {
            fun: Some(FunGen::new("f", move |h| {
                let p = pf.clone();
                let h = h.clone();
                Formula::new(
                    Kind::Conj,
                    Children {
                        tail: Some(NatGen::new("x", None, move |x| {
                            let y = h.get_quiet(x);
                            Formula::atom(
                                p.holds(x, y),
                                format!("P({x}, f({x})={y})"),
                                format!("~P({x}, f({x})={y})"),
                            )
                        })),
                        ..Children::default()
                    },
                )
            })),
            tail: Some(NatGen::new("x", None, move |x| {
                let p = p.clone();
                Formula::new(
                    Kind::Conj,
                    Children {
                        tail: Some(NatGen::new("y", None, move |y| {
                            Formula::atom(
                                !p.holds(x, y),
                                format!("~P({x}, {y})"),
                                format!("P({x}, {y})"),
                            )
                        })),
                        ..Children::default()
                    },
                )
            })),
            ..Children::default()
        },
    )
}

/// `or_f and_x or_y (f(x) = 0 and f(y) != 0)`.
pub fn star() -> Formula {
    Formula::new(
        Kind::Disj,
        Children {
            fun: Some(FunGen::new("f", |h| {
                let h = h.clone();
                Formula::new(
                    Kind::Conj,
                    Children {
                        tail: Some(NatGen::new("x", None, move |x| {
                            let h = h.clone();
                            Formula::new(
                                Kind::Disj,
                                Children {
                                    tail: Some(NatGen::new("y", None, move |y| {
                                        let fx = h.get_quiet(x);
                                        let fy = h.get_quiet(y);
                                        Formula::atom(
                                            fx == 0 && fy != 0,
                                            format!("f({x})=0 & f({y})!=0"),
                                            format!("f({x})!=0 | f({y})=0"),
                                        )
                                    })),
                                    ..Children::default()
                                },
                            )
                        })),
                        ..Children::default()
                    },
                )
            })),
            ..Children::default()
        },
    )
}

/// `and_f or_x and_y (f(x) != 0 or f(y) = 0)`, the dual of [`star`].
pub fn star_negation() -> Formula {
    super::negate(&star())
}

/// `or_x and_y y <= f(x)`.
pub fn ackermann_bound(f: OracleFn) -> Formula {
    Formula::new(
        Kind::Disj,
        Children {
            tail: Some(NatGen::new("x", None, move |x| {
                let f = f.clone();
                Formula::new(
                    Kind::Conj,
                    Children {
                        tail: Some(NatGen::new("y", None, move |y| {
                            Formula::atom(
                                f.leq_at(y, x),
                                format!("{y} <= f({x})"),
                                format!("{y} > f({x})"),
                            )
                        })),
                        ..Children::default()
                    },
                )
            })),
            ..Children::default()
        },
    )
}
