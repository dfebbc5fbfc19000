//! Scenario files: a vocabulary, a world list, a prior and optional operator,
//! input and explicit trace, in TOML.
//!
//! ```toml
//! atoms = ["A", "B"]
//! prior = "2 < 1"
//! operator = "circledast:natural"
//! input = "A => B"
//! worlds = [
//!   { id = "1", valuation = { A = true, B = true } },
//!   { id = "2", valuation = { A = true, B = false } },
//! ]
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::conditional::{Conditional, Operator};
use crate::error::{Error, Result};
use crate::logic::{Atom, ConditionalInput, Universe, Vocabulary, World};
use crate::oracle::trace::TraceInput;
use crate::tpo::Tpo;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorld {
    id: String,
    valuation: BTreeMap<String, bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    atoms: Vec<String>,
    worlds: Vec<RawWorld>,
    prior: String,
    operator: Option<String>,
    input: Option<String>,
    step1: Option<String>,
    result: Option<String>,
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub universe: Universe,
    pub prior: Tpo,
    pub operator: Option<Operator>,
    pub input: Option<String>,
    pub step1: Option<Tpo>,
    pub result: Option<Tpo>,
}

fn located(what: &str, e: Error) -> Error {
    Error::Scenario(format!("{what}: {e}"))
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        let atoms = raw
            .atoms
            .iter()
            .map(Atom::new)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| located("atoms", e))?;
        let vocab = Vocabulary::new(atoms).map_err(|e| located("atoms", e))?;
        let mut worlds = Vec::with_capacity(raw.worlds.len());
        for (i, w) in raw.worlds.iter().enumerate() {
            let at = format!("worlds[{i}] (id `{}`)", w.id);
            if let Some(extra) = w.valuation.keys().find(|k| vocab.lookup(k).is_none()) {
                return Err(located(&at, Error::UnknownAtom(extra.clone())));
            }
            let valuation = vocab
                .atoms()
                .iter()
                .map(|a| {
                    w.valuation.get(a.name()).copied().ok_or_else(|| Error::IncompleteValuation {
                        world: w.id.clone(),
                        atom: a.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| located(&at, e))?;
            worlds.push(World {
                id: w.id.clone(),
                valuation,
            });
        }
        let universe = Universe::new(vocab, worlds).map_err(|e| located("worlds", e))?;
        let order = |field: &str, text: &str| Tpo::parse(text, &universe).map_err(|e| located(field, e));
        let prior = order("prior", &raw.prior)?;
        let step1 = raw.step1.as_deref().map(|t| order("step1", t)).transpose()?;
        let result = raw.result.as_deref().map(|t| order("result", t)).transpose()?;
        let operator = raw
            .operator
            .as_deref()
            .map(str::parse)
            .transpose()
            .map_err(|e| located("operator", e))?;
        if let Some(input) = &raw.input {
            universe.parse_input(input).map_err(|e| located("input", e))?;
        }
        Ok(Scenario {
            universe,
            prior,
            operator,
            input: raw.input,
            step1,
            result,
        })
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
        Scenario::parse(&text).map_err(|e| match e {
            Error::Scenario(m) => Error::Scenario(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Model sets of a parsed input over this scenario's worlds.
    pub fn trace_input(&self, input: &ConditionalInput) -> Result<TraceInput> {
        match input {
            ConditionalInput::Plain(f) => {
                let s = self.universe.models(f);
                if s.is_empty() {
                    return Err(Error::InconsistentInput("input has no model".into()));
                }
                Ok(TraceInput::Plain(s))
            }
            ConditionalInput::Ramsey {
                antecedent,
                consequent,
            } => Ok(TraceInput::Conditional(Conditional::new(
                self.universe.models(antecedent),
                self.universe.models(consequent),
            )?)),
        }
    }

    /// Serializes back to the file format.
    pub fn to_toml(&self) -> String {
        let q = |s: &str| toml::Value::String(s.to_string()).to_string();
        let vocab = self.universe.vocabulary();
        let mut out = String::new();
        let atoms: Vec<String> = vocab.atoms().iter().map(|a| q(a.name())).collect();
        let _ = writeln!(out, "atoms = [{}]", atoms.join(", "));
        let _ = writeln!(out, "prior = {}", q(&self.prior.render(&self.universe)));
        if let Some(op) = self.operator {
            let _ = writeln!(out, "operator = {}", q(&op.to_string()));
        }
        if let Some(input) = &self.input {
            let _ = writeln!(out, "input = {}", q(input));
        }
        if let Some(t) = &self.step1 {
            let _ = writeln!(out, "step1 = {}", q(&t.render(&self.universe)));
        }
        if let Some(t) = &self.result {
            let _ = writeln!(out, "result = {}", q(&t.render(&self.universe)));
        }
        out.push_str("worlds = [\n");
        for w in self.universe.worlds() {
            let vals: Vec<String> = vocab
                .atoms()
                .iter()
                .zip(&w.valuation)
                .map(|(a, v)| format!("{} = {v}", a.name()))
                .collect();
            let _ = writeln!(out, "  {{ id = {}, valuation = {{ {} }} }},", q(&w.id), vals.join(", "));
        }
        out.push_str("]\n");
        out
    }
}
