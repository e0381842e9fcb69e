//! Bounded verification of the uniform approximation principle: from some
//! depth on, `H(Y, s, N)` already equals `Γ(Y, s)` for every `s` that looks
//! like `α` up to that depth.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::point::Point;
use crate::seq::{all_up_to_length, FinSeq};
use crate::Nat;

use super::approx::{gamma_eval, h_eval};
use super::session::EvalSession;

/// Sequences `s` with `pad(s, 0)` agreeing with `α` below `m`: the prefixes
/// of `α` whose zero-padding reaches `m`, and `ᾱm` followed by a tail of at
/// most `window` entries, each `≤ value_cap`. Only the tail is capped; the
/// entries copied from `α` are whatever `α` holds.
pub fn ghs_candidates(alpha: &Point, m: Nat, session: &EvalSession) -> Result<Vec<FinSeq>> {
    let config = session.config();
    let prefix = alpha.take(m as usize)?;
    let mut out = Vec::new();
    for j in 0..prefix.len() {
        if prefix.items()[j..].iter().all(|&x| x == 0) {
            out.push(prefix.truncate_to(j));
        }
    }
    let room = config.nmax.saturating_sub(m).min(config.window) as usize;
    for tail in all_up_to_length(room, config.value_cap + 1) {
        out.push(prefix.concat(&tail));
    }
    Ok(out)
}

/// Least `K ≤ nmax` such that `H(Y, s, N) = Γ(Y, s)` for all `M, N` in
/// `[K, K + window]` and every candidate `s` for `α` at `M`.
pub fn ghs_witness(y: &Functional, alpha: &Point, session: &EvalSession) -> Result<Nat> {
    let config = *session.config();
    // A pair (M, N) holds or fails independently of K; Γ-values are shared
    // between the overlapping candidate sets.
    let mut pairs: HashMap<(Nat, Nat), bool> = HashMap::new();
    let mut gammas: HashMap<FinSeq, Nat> = HashMap::new();
    'k: for k in 0..=config.nmax {
        for m in k..=k + config.window {
            for n in k..=k + config.window {
                let holds = match pairs.get(&(m, n)) {
                    Some(&holds) => holds,
                    None => {
                        let holds = pair_holds(y, alpha, m, n, &mut gammas, session)?;
                        pairs.insert((m, n), holds);
                        holds
                    }
                };
                if !holds {
                    continue 'k;
                }
            }
        }
        return Ok(k);
    }
    Err(Error::StabilizationFailed { nmax: config.nmax })
}

fn pair_holds(
    y: &Functional,
    alpha: &Point,
    m: Nat,
    n: Nat,
    gammas: &mut HashMap<FinSeq, Nat>,
    session: &EvalSession,
) -> Result<bool> {
    for s in ghs_candidates(alpha, m, session)? {
        let gamma = match gammas.get(&s) {
            Some(&g) => g,
            None => {
                let g = gamma_eval(y, &s, session)?;
                gammas.insert(s.clone(), g);
                g
            }
        };
        if h_eval(y, &s, n, session)? != gamma {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A pointwise modulus of continuity for `Y` at `f`, read off the GHS
/// witness.
pub fn modulus_from_ghs(y: &Functional, f: &Point, session: &EvalSession) -> Result<Nat> {
    ghs_witness(y, f, session)
}
