//! The acceptance suite: eight properties, each with a runtime limit.
//!
//! Shared by `gh check-all` and the `acceptance` test target. Where a check
//! compares against a reference value, the reference comes from a small
//! brute-force oracle in [`oracle`], written without sessions, memo tables
//! or the bar-search machinery.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::associate::{flag_point, modulus_from_associate, Associate};
use crate::catalog;
use crate::error::{Error, Result};
use crate::fan::{fan_modulus, muc_holds, scf_check, special_fan, BinTree, MAX_THETA_BOUND};
use crate::functional::{mu, Fuel, Functional};
use crate::gh::{
    associate_ext_witness, certified_depth_bounded, g_eval, gamma_eval, gh_check, h_eval,
    h_hat_eval, herbrand_trace, modulus_from_ghs, modulus_from_mu, mu_from_gh_ext, mu_from_modulus,
    replay_check, stabilize, EvalSession, Oracle, SessionConfig,
};
use crate::point::Point;
use crate::seq::{all_up_to_length, decode, FinSeq};
use crate::Nat;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} {} ({} ms, limit {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

type Check = fn(&SessionConfig) -> Result<String>;

const CRITERIA: [(u32, &str, u64, Check); 8] = [
    (1, "golden values", 1, golden_values),
    (
        2,
        "fixed point and canonical approximations",
        10,
        fixed_point,
    ),
    (
        3,
        "special fan functional on all small trees",
        30,
        special_fan_trees,
    ),
    (
        4,
        "fan modulus soundness and minimality",
        5,
        fan_modulus_sound,
    ),
    (5, "mu round trips", 5, mu_round_trips),
    (
        6,
        "herbrand replay and fault injection",
        10,
        herbrand_replay,
    ),
    (7, "cross-operation coherence", 10, coherence),
    (8, "foundation laws", 5, foundation_laws),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based).
pub fn run_one(id: u32, config: &SessionConfig) -> Option<Outcome> {
    let &(id, title, limit_s, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = check(config);
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_s);
    let (passed, detail) = match result {
        Ok(detail) if elapsed < limit => (true, detail),
        Ok(detail) => (false, format!("{detail}; over the time limit")),
        Err(e) => (false, e.to_string()),
    };
    Some(Outcome {
        id,
        title,
        passed,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
        detail,
    })
}

pub fn run_all(config: &SessionConfig) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .filter_map(|c| run_one(c.0, config))
        .collect()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation(what()))
    }
}

/// All sequences over `{0, 1, 2}` of length at most 3.
pub fn grid() -> Vec<FinSeq> {
    all_up_to_length(3, 3)
}

fn golden_values(config: &SessionConfig) -> Result<String> {
    let session = EvalSession::new(*config);
    for m0 in 3..=5 {
        let y = catalog::flag_functional(m0);
        let gamma = gamma_eval(&y, &FinSeq::empty(), &session)?;
        ensure(gamma == 0, || format!("Γ(γ, ⟨⟩) = {gamma} for m₀ = {m0}"))?;
        let hat = h_hat_eval(&y, &FinSeq::empty(), m0 - 2, &session)?;
        ensure(hat == 1, || format!("Ĥ(γ, ⟨⟩, m₀−2) = {hat} for m₀ = {m0}"))?;
        let flag = Associate::gamma_flag(&flag_point(m0));
        let at_zero = flag.apply(&Point::step(0), config.fuel)?;
        let at_m0 = flag.apply(&Point::step(m0), config.fuel)?;
        ensure((at_zero, at_m0) == (0, m0), || {
            format!("γ(β₀), γ(β_m₀) = {at_zero}, {at_m0} for m₀ = {m0}")
        })?;
    }
    Ok("m₀ = 3, 4, 5: Γ = 0, Ĥ = 1, γ(β₀) = 0, γ(β_m₀) = m₀".into())
}

fn fixed_point(config: &SessionConfig) -> Result<String> {
    let session = EvalSession::new(*config);
    let mut checked = 0;
    let mut deepest = 0;
    for y in catalog::core_functionals() {
        for s in grid() {
            let stable = stabilize(&y, &s, &session)?;
            ensure(stable.depth <= 32, || {
                format!("{} at {s}: N₀ = {}", y.name(), stable.depth)
            })?;
            deepest = deepest.max(stable.depth);
            for n in stable.depth..=stable.depth + 4 {
                let (h, g) = (h_eval(&y, &s, n, &session)?, g_eval(&y, &s, n, &session)?);
                ensure(h == stable.value && g == stable.value, || {
                    format!(
                        "{} at {s}, N = {n}: H = {h}, G = {g}, stable {}",
                        y.name(),
                        stable.value
                    )
                })?;
            }
            let gamma = gamma_eval(&y, &s, &session)?;
            let reference = oracle::gamma(&y, &s)?;
            ensure(gamma == reference, || {
                format!("{} at {s}: Γ = {gamma}, oracle {reference}", y.name())
            })?;
            let (y2, session2) = (y.clone(), session.clone());
            let holds = gh_check(move |t| gamma_eval(&y2, t, &session2), &y, &s)?;
            ensure(holds, || format!("{} at {s}: equation fails", y.name()))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} (functional, sequence) pairs, largest N₀ = {deepest}"
    ))
}

fn special_fan_trees(_: &SessionConfig) -> Result<String> {
    let counts: Vec<usize> = (0..=3).map(|h| BinTree::enumerate(h).len()).collect();
    let mut t = 2;
    for (h, &count) in counts.iter().enumerate() {
        ensure(count == t, || {
            format!("{count} trees of height ≤ {h}, recurrence gives {t}")
        })?;
        t = 1 + t * t;
    }
    let trees = BinTree::enumerate(3);
    ensure(trees.len() == 677, || format!("{} trees", trees.len()))?;
    for tree in &trees {
        ensure(tree.is_downward_closed(4), || {
            format!("{} not downward closed", tree.name())
        })?;
    }
    let fuel = Fuel(1 << 16);
    let mut checks = 0;
    for g in catalog::scf_functionals() {
        let theta = special_fan(|g| fan_modulus(g, fuel), &g)?;
        for tree in &trees {
            ensure(scf_check(&theta, &g, tree, MAX_THETA_BOUND)?, || {
                format!("{} on {}", g.name(), tree.name())
            })?;
            checks += 1;
        }
    }
    Ok(format!("677 trees × 4 g's = {checks} implications"))
}

fn fan_modulus_sound(_: &SessionConfig) -> Result<String> {
    let fuel = Fuel(1 << 16);
    let mut found = Vec::new();
    for y in catalog::core_functionals() {
        let n = fan_modulus(&y, fuel)?;
        let reference = oracle::binary_uniform_modulus(&y, 8)?;
        ensure(n == reference, || {
            format!("{}: modulus {n}, oracle {reference}", y.name())
        })?;
        ensure(muc_holds(&y, n as usize, 3)?, || {
            format!("{}: fails at N = {n}", y.name())
        })?;
        if n > 0 {
            ensure(!muc_holds(&y, n as usize - 1, 3)?, || {
                format!("{}: already holds at N − 1", y.name())
            })?;
        }
        found.push(format!("{}={n}", y.name()));
    }
    Ok(found.join(", "))
}

/// Fifty points with least zero at `k mod 21`, non-zero values before it
/// and a mix of zeros after.
pub fn crafted_points() -> Vec<(Nat, Point)> {
    (0..50)
        .map(|k: Nat| {
            let z = k % 21;
            let f = Point::from_fn(move |n| match n.cmp(&z) {
                std::cmp::Ordering::Less => 1 + (n * 7 + k) % 5,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => (n + k) % 3,
            });
            (z, f)
        })
        .collect()
}

/// `Γ(a, ⟨⟩)` with small fixed budgets, for the extensionality route to μ.
pub fn gamma_on_associates(a: &Associate) -> Result<Nat> {
    let session = EvalSession::new(SessionConfig {
        fuel: Fuel(1 << 14),
        ..Default::default()
    });
    gamma_eval(&a.to_functional(Fuel(1 << 10)), &FinSeq::empty(), &session)
}

fn mu_round_trips(config: &SessionConfig) -> Result<String> {
    let fuel = config.fuel;
    for (z, f) in crafted_points() {
        let scan = oracle::least_zero(&f)?;
        ensure(scan == z, || {
            format!("crafted point has least zero {scan}, wanted {z}")
        })?;
        let a = mu_from_modulus(modulus_from_associate, &f, fuel)?;
        let b = mu_from_gh_ext(gamma_on_associates, associate_ext_witness, &f, fuel)?;
        ensure(a == scan && b == scan, || {
            format!("zero at {scan}: modulus route {a}, extensionality route {b}")
        })?;
    }
    let ones = Point::constant(1);
    let small = Fuel(1 << 12);
    let a = mu_from_modulus(modulus_from_associate, &ones, small);
    ensure(matches!(a, Err(Error::FuelExhausted { .. })), || {
        format!("zero-free input gave {a:?}")
    })?;
    let b = mu_from_gh_ext(gamma_on_associates, associate_ext_witness, &ones, small)?;
    ensure(ones.at(b)? != 0, || {
        "zero-free input produced a zero".into()
    })?;
    Ok("50 crafted points agree with a linear scan; zero-free input exhausts fuel".into())
}

/// Every named functional fixture, flags at `m₀ ∈ {3, 4, 5}`.
fn traced_functionals() -> Result<Vec<Functional>> {
    let mut out = Vec::new();
    for name in catalog::functional_names() {
        if name.ends_with("-flag") {
            for m0 in 3..=5 {
                out.push(catalog::functional(name, m0)?);
            }
        } else {
            out.push(catalog::functional(name, 0)?);
        }
    }
    Ok(out)
}

fn herbrand_replay(config: &SessionConfig) -> Result<String> {
    let session = EvalSession::new(*config);
    let (mut traces, mut mutations) = (0, 0);
    for y in traced_functionals()? {
        for s in grid() {
            let w = herbrand_trace(&y, &s, &session)?;
            ensure(replay_check(&w, &s, &session)?, || {
                format!("{} at {s}: replay differs", y.name())
            })?;
            for i in 0..w.apply_probes().len() {
                let mut bad = w.clone();
                bad.probes.get_mut(&Oracle::Apply).expect("apply probes")[i].answer += 1;
                let caught = match replay_check(&bad, &s, &session) {
                    Ok(same) => !same,
                    Err(Error::OutOfTableQuery) => true,
                    Err(e) => return Err(e),
                };
                ensure(caught, || {
                    format!("{} at {s}: mutation of probe {i} undetected", y.name())
                })?;
                mutations += 1;
            }
            traces += 1;
        }
    }
    Ok(format!(
        "{traces} traces replayed, {mutations} mutations detected"
    ))
}

fn coherence(config: &SessionConfig) -> Result<String> {
    let session = EvalSession::new(*config);
    let fuel = config.fuel;
    let mut compared = 0;
    for a in catalog::associates() {
        let y = a.to_functional(catalog::ASSOCIATE_FUEL);
        for f in catalog::sample_points() {
            let ghs = modulus_from_ghs(&y, &f, &session)?;
            let assoc = modulus_from_associate(&a, &f, fuel)?;
            let from_mu = modulus_from_mu(mu, &a, &f, fuel)?;
            ensure(ghs == assoc && assoc == from_mu, || {
                format!(
                    "{} at {:?}: ghs {ghs}, associate {assoc}, μ {from_mu}",
                    a.name(),
                    f.take(6)
                )
            })?;
            compared += 1;
        }
    }
    let (mut applicable, mut skipped) = (0, 0);
    for y in catalog::core_functionals() {
        for s in grid() {
            match certified_depth_bounded(&y, &s, &Point::constant(2), &session) {
                Ok(n) => {
                    let stable = stabilize(&y, &s, &session)?;
                    ensure(n >= stable.depth, || {
                        format!("{} at {s}: certified {n} < N₀ {}", y.name(), stable.depth)
                    })?;
                    applicable += 1;
                }
                Err(Error::BoundExceeded { .. }) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    ensure(applicable > 0, || "certificate never applicable".into())?;
    Ok(format!(
        "{compared} associate/point triples equal; certified depth ≥ N₀ in {applicable} cases ({skipped} outside the bound)"
    ))
}

fn foundation_laws(config: &SessionConfig) -> Result<String> {
    for a in catalog::associates() {
        let law = a.check_neighbourhood(5, 3)?;
        let reference = oracle::neighbourhood_law(&a, 5, 3)?;
        ensure(law && reference, || {
            format!("{}: law {law}, oracle {reference}", a.name())
        })?;
    }
    for code in 0..10_000 {
        ensure(decode(code).code()? == code, || {
            format!("code {code} does not round trip")
        })?;
    }
    let with = EvalSession::new(SessionConfig {
        memoize: true,
        ..*config
    });
    let without = EvalSession::new(SessionConfig {
        memoize: false,
        ..*config
    });
    for y in catalog::core_functionals() {
        for s in grid() {
            let (a, b) = (stabilize(&y, &s, &with)?, stabilize(&y, &s, &without)?);
            ensure(a == b, || format!("{} at {s}: {a:?} vs {b:?}", y.name()))?;
            for n in [0, 2, a.depth + 4] {
                let (h1, h2) = (h_eval(&y, &s, n, &with)?, h_eval(&y, &s, n, &without)?);
                let (g1, g2) = (g_eval(&y, &s, n, &with)?, g_eval(&y, &s, n, &without)?);
                ensure(h1 == h2 && g1 == g2, || {
                    format!("{} at {s}, N = {n}: memo changes the value", y.name())
                })?;
            }
            ensure(
                gamma_eval(&y, &s, &with)? == gamma_eval(&y, &s, &without)?,
                || format!("{} at {s}", y.name()),
            )?;
        }
    }
    Ok("7 associates × 364 sequences, codes < 10⁴, memo on/off agree on 240 pairs".into())
}

/// Reference computations kept deliberately naive.
pub mod oracle {
    use super::*;

    /// `Γ(Y, s)` by unmemoized recursion on the defining equation; only
    /// terminates for functionals that read finitely deep.
    pub fn gamma(y: &Functional, s: &FinSeq) -> Result<Nat> {
        let (y2, s2) = (y.clone(), s.clone());
        let len = s.len() as Nat;
        let point = Point::from_fallible(move |i| {
            if i < len {
                Ok(s2.items()[i as usize])
            } else if i == len {
                Ok(0)
            } else {
                gamma(&y2, &s2.append(i - len))
            }
        });
        y.apply(&point)
    }

    /// Least `n ≤ max` such that `y` on binary sequences of length `max`
    /// (padded with zeros) depends only on the first `n` entries.
    pub fn binary_uniform_modulus(y: &Functional, max: usize) -> Result<Nat> {
        let table: Vec<(FinSeq, Nat)> = crate::seq::all_of_length(max, 2)
            .into_iter()
            .map(|s| Ok((s.clone(), y.apply(&Point::pad(&s, 0))?)))
            .collect::<Result<_>>()?;
        'n: for n in 0..=max {
            let mut seen = std::collections::HashMap::new();
            for (s, v) in &table {
                if *seen.entry(s.truncate_to(n)).or_insert(*v) != *v {
                    continue 'n;
                }
            }
            return Ok(n as Nat);
        }
        Ok(max as Nat)
    }

    pub fn least_zero(f: &Point) -> Result<Nat> {
        let mut n = 0;
        while f.at(n)? != 0 {
            n += 1;
        }
        Ok(n)
    }

    /// Every decided `σ` forces the same answer on every extension.
    pub fn neighbourhood_law(a: &Associate, depth: usize, width: Nat) -> Result<bool> {
        let all = all_up_to_length(depth, width);
        for s in &all {
            let v = a.query(s)?;
            if v == 0 {
                continue;
            }
            for t in &all {
                if s.is_prefix_of(t) && a.query(t)? != v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
