//! Finite traces of a `Γ` computation and their replay.
//!
//! A trace records, for every call of `Y` made while computing
//! `G(Y, s, N₀)` at the stabilization depth, the positions `Y` read with
//! their values and the answer it gave. That table is the whole
//! computational content: replaying `G` against a stub `Y` that may only
//! answer from the table must reproduce the result.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::seq::FinSeq;
use crate::Nat;

use super::approx::{g_eval, stabilize};
use super::session::EvalSession;

/// Which black box a probe was put to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    Apply,
    Modulus,
    Theta,
}

/// One oracle call: the `(position, value)` pairs read, sorted by position,
/// and the answer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Probe {
    pub reads: Vec<(Nat, Nat)>,
    pub answer: Nat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HerbrandWitness {
    pub functional: String,
    pub seq: FinSeq,
    pub probes: BTreeMap<Oracle, Vec<Probe>>,
    pub depth: Nat,
    pub result: Nat,
}

impl HerbrandWitness {
    pub fn probe_count(&self) -> usize {
        self.probes.values().map(Vec::len).sum()
    }

    pub fn apply_probes(&self) -> &[Probe] {
        self.probes
            .get(&Oracle::Apply)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// Computes `Γ(Y, s)` and records every `Y`-call of the run at the
/// stabilization depth.
pub fn herbrand_trace(
    y: &Functional,
    s: &FinSeq,
    session: &EvalSession,
) -> Result<HerbrandWitness> {
    let stable = stabilize(y, s, session)?;
    let table: Rc<RefCell<Vec<Probe>>> = Rc::default();
    let sink = table.clone();
    let inner = y.clone();
    let recording = Functional::new(y.name(), move |p| {
        let (observed, log) = p.observed();
        let answer = inner.apply(&observed)?;
        let mut reads = log.borrow().clone();
        reads.sort_unstable();
        sink.borrow_mut().push(Probe { reads, answer });
        Ok(answer)
    });
    let result = g_eval(&recording, s, stable.depth, &session.fresh())?;
    if result != stable.value {
        return Err(Error::InvariantViolation(format!(
            "recorded run at depth {} gave {result}, stabilized value is {}",
            stable.depth, stable.value
        )));
    }
    let mut probes = table.take();
    probes.sort();
    probes.dedup();
    Ok(HerbrandWitness {
        functional: y.name().to_string(),
        seq: s.clone(),
        probes: BTreeMap::from([(Oracle::Apply, probes)]),
        depth: stable.depth,
        result,
    })
}

/// A functional that answers only from `probes`: the first entry whose
/// reads all agree with the argument. A point matching no entry raises
/// [`Error::OutOfTableQuery`].
pub fn table_functional(name: &str, probes: Vec<Probe>) -> Functional {
    Functional::new(format!("table({name})"), move |p| {
        'entries: for probe in &probes {
            for &(i, v) in &probe.reads {
                match p.at(i) {
                    Ok(x) if x == v => {}
                    Ok(_) | Err(Error::OutOfTableQuery) => continue 'entries,
                    Err(e) => return Err(e),
                }
            }
            return Ok(probe.answer);
        }
        Err(Error::OutOfTableQuery)
    })
}

/// Re-runs `G(·, s, w.depth)` against the table in `w`; true iff the run
/// stays inside the table and reproduces `w.result`.
pub fn replay_check(w: &HerbrandWitness, s: &FinSeq, session: &EvalSession) -> Result<bool> {
    let stub = table_functional(&w.functional, w.apply_probes().to_vec());
    let value = g_eval(&stub, s, w.depth, &session.fresh())?;
    Ok(value == w.result)
}
