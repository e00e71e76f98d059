//! Oracle functions over the naturals and the Ackermann diagonal.
//!
//! Formula builders resolve their arithmetic atoms through an [`OracleFn`].
//! Oracles are finitely described: a comma list with a final default value,
//! a constant, the identity, or the Ackermann diagonal.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

/// A total map from naturals to naturals given by a finite description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleFn {
    /// Listed initial values, then a constant default.
    List { vals: Vec<u64>, default: u64 },
    Const(u64),
    Identity,
    /// `x ↦ A(x, x)`; values explode past `x = 3`, see [`ackermann_diag`].
    AckermannDiag,
}

impl OracleFn {
    /// Evaluates the oracle. `None` when the value is too large to
    /// materialize (the Ackermann diagonal past 3).
    pub fn eval(&self, x: u64) -> Option<BigUint> {
        match self {
            OracleFn::List { vals, default } => {
                Some(BigUint::from(*vals.get(x as usize).unwrap_or(default)))
            }
            OracleFn::Const(c) => Some(BigUint::from(*c)),
            OracleFn::Identity => Some(BigUint::from(x)),
            OracleFn::AckermannDiag => ackermann_diag(x),
        }
    }

    /// Evaluates and compares without materializing: `y <= oracle(x)`.
    pub fn leq_at(&self, y: u64, x: u64) -> bool {
        match self {
            OracleFn::AckermannDiag => ackermann_diag_at_least(x, y),
            _ => BigUint::from(y) <= self.eval(x).expect("small oracle"),
        }
    }

    /// Parses `10,8,3,27`, `10,8,3,27,default=27`, `const:5`, `identity`,
    /// or `ackermann-diag`. A bare comma list defaults to its last value.
    pub fn parse(spec: &str) -> Result<OracleFn, String> {
        let spec = spec.trim();
        match spec {
            "identity" | "id" => return Ok(OracleFn::Identity),
            "ackermann-diag" | "ackermann" => return Ok(OracleFn::AckermannDiag),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("const:") {
            let c = rest.parse().map_err(|_| format!("bad constant in `{spec}`"))?;
            return Ok(OracleFn::Const(c));
        }
        let mut vals = Vec::new();
        let mut default = None;
        for part in spec.split(',') {
            let part = part.trim();
            if let Some(d) = part.strip_prefix("default=") {
                default = Some(d.parse().map_err(|_| format!("bad default in `{spec}`"))?);
            } else {
                vals.push(part.parse().map_err(|_| format!("bad value `{part}` in `{spec}`"))?);
            }
        }
        if vals.is_empty() {
            return Err(format!("empty oracle spec `{spec}`"));
        }
        let default = default.unwrap_or(*vals.last().unwrap());
        Ok(OracleFn::List { vals, default })
    }
}

impl fmt::Display for OracleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleFn::List { vals, default } => {
                let vals: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
                write!(f, "{},default={}", vals.join(","), default)
            }
            OracleFn::Const(c) => write!(f, "const:{c}"),
            OracleFn::Identity => write!(f, "identity"),
            OracleFn::AckermannDiag => write!(f, "ackermann-diag"),
        }
    }
}

/// Binary relation oracle for choice-style formulas.
#[derive(Clone)]
pub struct PredOracle {
    pub name: String,
    pred: Arc<dyn Fn(u64, u64) -> bool + Send + Sync>,
}

impl PredOracle {
    pub fn new(name: impl Into<String>, pred: impl Fn(u64, u64) -> bool + Send + Sync + 'static) -> Self {
        PredOracle { name: name.into(), pred: Arc::new(pred) }
    }

    /// The graph of `h`: `P(x, y)` holds exactly when `y = h(x)`.
    pub fn graph_of(h: OracleFn) -> PredOracle {
        let name = format!("y = h(x) with h = {h}");
        PredOracle::new(name, move |x, y| match h.eval(x) {
            Some(v) => BigUint::from(y) == v,
            None => false,
        })
    }

    pub fn holds(&self, x: u64, y: u64) -> bool {
        (self.pred)(x, y)
    }
}

impl fmt::Debug for PredOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PredOracle({})", self.name)
    }
}

/// `A(m, n)` by the standard recursion, with closed forms below level 4 and
/// a step budget above. `None` when the budget is exhausted.
pub fn ackermann(m: u64, n: u64, step_budget: u64) -> Option<BigUint> {
    fn closed(m: u64, n: u64) -> Option<BigUint> {
        match m {
            0 => Some(BigUint::from(n) + 1u32),
            1 => Some(BigUint::from(n) + 2u32),
            2 => Some(BigUint::from(2u32) * n + 3u32),
            3 => Some((BigUint::from(1u32) << (n + 3)) - 3u32),
            _ => None,
        }
    }
    if let Some(v) = closed(m, n) {
        return Some(v);
    }
    // m >= 4: A(m, n) = A(m-1, A(m, n-1)). Only tiny arguments terminate
    // within any practical budget; the budget makes the failure explicit.
    let mut steps = 0u64;
    fn go(m: u64, n: BigUint, steps: &mut u64, budget: u64) -> Option<BigUint> {
        *steps += 1;
        if *steps > budget {
            return None;
        }
        if m <= 3 {
            let n_small: u64 = n.clone().try_into().ok()?;
            return match m {
                0 => Some(n + 1u32),
                1 => Some(n + 2u32),
                2 => Some(BigUint::from(2u32) * n_small + 3u32),
                3 => {
                    if n_small > 4096 {
                        return None;
                    }
                    Some((BigUint::from(1u32) << (n_small + 3)) - 3u32)
                }
                _ => unreachable!(),
            };
        }
        if n == BigUint::from(0u32) {
            return go(m - 1, BigUint::from(1u32), steps, budget);
        }
        let inner = go(m, n - 1u32, steps, budget)?;
        go(m - 1, inner, steps, budget)
    }
    go(m, BigUint::from(n), &mut steps, step_budget)
}

/// `A(x, x)`, materialized only up to `x = 3` (`A(3,3) = 61`).
pub fn ackermann_diag(x: u64) -> Option<BigUint> {
    if x <= 3 {
        ackermann(x, x, 1 << 20)
    } else {
        None
    }
}

/// `A(x, x) >= y` without materializing huge values: past level 3 the
/// diagonal dominates every `u64`.
pub fn ackermann_diag_at_least(x: u64, y: u64) -> bool {
    match ackermann_diag(x) {
        Some(v) => v >= BigUint::from(y),
        None => true,
    }
}
