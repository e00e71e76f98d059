//! Parsing of formula and strategy specifications from the command line.

use anyhow::{anyhow, bail, Context, Result};
use std::path::Path;

use debate_core::debate::FormulaSpec;
use debate_core::formula::examples::{self, build_example, ExampleName, ExampleOracle};
use debate_core::formula::{sexpr, Formula, OracleFn, PredOracle};
use debate_core::strategies::{self, opponents, BoxStrategy, PrFamily};

pub struct Oracles {
    pub f: Option<OracleFn>,
    pub h: Option<OracleFn>,
}

impl Oracles {
    pub fn pred(&self) -> Option<PredOracle> {
        self.h.clone().map(PredOracle::graph_of)
    }

    fn example_oracle(&self) -> ExampleOracle {
        ExampleOracle { f: self.f.clone(), pred: self.pred() }
    }
}

/// A cut or goal source: a named builder or a file of sexpr text.
pub fn resolve_formula(spec: &str, oracles: &Oracles) -> Result<(Formula, FormulaSpec)> {
    if let Ok(name) = spec.parse::<ExampleName>() {
        let formula = build_example(name, &oracles.example_oracle())
            .with_context(|| format!("building `{spec}`"))?;
        return Ok((
            formula,
            FormulaSpec::Named {
                name: spec.to_string(),
                f: oracles.f.as_ref().map(|f| f.to_string()),
                h: oracles.h.as_ref().map(|h| h.to_string()),
            },
        ));
    }
    if spec == "descent" {
        let f = oracles.f.clone().ok_or_else(|| anyhow!("the descent goal needs --f"))?;
        return Ok((
            examples::descent_goal(f.clone()),
            FormulaSpec::Named {
                name: "descent".into(),
                f: Some(f.to_string()),
                h: None,
            },
        ));
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let formula = sexpr::parse(&text).map_err(|e| anyhow!("parsing {spec}: {e}"))?;
        let rendered = formula.to_string();
        return Ok((formula, FormulaSpec::Sexpr(rendered)));
    }
    bail!(
        "unknown formula `{spec}`: expected minimum | epsilon-goal | choice | star | \
         star-negation | ackermann-bound | descent | a readable file"
    )
}

/// Debate-seat strategies, addressable by name plus oracle flags.
pub fn resolve_strategy(spec: &str, oracles: &Oracles) -> Result<BoxStrategy> {
    let need_f = || {
        oracles
            .f
            .clone()
            .ok_or_else(|| anyhow!("strategy `{spec}` needs --f <oracle>"))
    };
    match spec {
        "minimum" => Ok(strategies::minimum_strategy(need_f()?)),
        "epsilon" => Ok(strategies::epsilon_strategy(need_f()?)),
        "star" => Ok(strategies::star_strategy()),
        "star-refuter" => Ok(strategies::star_refuter()),
        "choice" => {
            let p = oracles.pred().ok_or_else(|| anyhow!("strategy `choice` needs --h <oracle>"))?;
            Ok(strategies::countable_choice_strategy(p))
        }
        "soloviev" => Ok(strategies::soloviev_enumerator()),
        other => {
            if let Some(fam) = other.strip_prefix("pr:") {
                let fam = PrFamily::parse(fam).map_err(|e| anyhow!(e))?;
                return Ok(strategies::pr_opponent(fam));
            }
            bail!(
                "unknown strategy `{other}`: expected minimum | epsilon | star | star-refuter | \
                 choice | soloviev | pr:<family>"
            )
        }
    }
}

/// Environment-seat strategies for interactive play.
pub fn resolve_opponent(spec: &str, oracles: &Oracles) -> Result<BoxStrategy> {
    if let Some(w) = spec.strip_prefix("window:") {
        let w: u64 = w.parse().context("window size")?;
        return Ok(opponents::continuous_star_opponent(w));
    }
    if let Some(rest) = spec.strip_prefix("choice-window:") {
        let w: u64 = rest.parse().context("window size")?;
        let h = oracles.h.clone().ok_or_else(|| anyhow!("choice-window needs --h"))?;
        return Ok(opponents::continuous_choice_opponent(h, w));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed.parse().context("seed")?;
        return Ok(opponents::random_abe(seed));
    }
    match spec {
        "zero-seeker" => Ok(opponents::discontinuous_zero_seeker()),
        _ => resolve_strategy(spec, oracles),
    }
}
