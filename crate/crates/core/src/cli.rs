//! Command-line front end. Every command produces one [`ResultRecord`],
//! printed to stdout as JSON and optionally written with `--json`.
//!
//! Exit codes: 0 success, 1 property failure, 2 usage error, 3 fuel or
//! stabilization failure.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::acceptance::{self, gamma_on_associates};
use crate::associate::modulus_from_associate;
use crate::catalog;
use crate::dsl::parse_spec;
use crate::error::{Error, Result};
use crate::fan::{fan_modulus, full_fan_modulus, pwc_bound, scf_check, special_fan};
use crate::functional::{mu, Fuel, Functional};
use crate::gh::{
    associate_ext_witness, g_eval, g_eval_bounded, gamma_eval, ghs_witness, h_eval, h_hat_eval,
    herbrand_trace, modulus_from_ghs, mu_from_gh_ext, mu_from_modulus, replay_check, stabilize,
    EvalSession, HerbrandWitness, SessionConfig,
};
use crate::point::Point;
use crate::record::{emit_json, ResultRecord};
use crate::seq::FinSeq;
use crate::Nat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gh",
    version,
    about = "Gandy-Hyland functional, fan functionals and friends"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Knobs shared by every command. All caps are strictly positive.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Step budget per top-level evaluation.
    #[arg(long, global = true, default_value_t = 1 << 22, value_parser = clap::value_parser!(u64).range(1..))]
    pub fuel: u64,
    /// Largest depth tried when stabilizing.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub nmax: u64,
    /// Extra depths a value must survive to count as stable.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub window: u64,
    /// Largest free entry of GHS candidate sequences.
    #[arg(long = "value-cap", global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub value_cap: u64,
    /// Depth cap for tree searches (scf-check).
    #[arg(long = "depth-cap", global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth_cap: u64,
    /// Also write the record as a JSON file (header line plus record).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Named functional from the catalog.
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// Functional written in the expression language, e.g. `f(0)+f(1)`.
    #[arg(long, global = true, conflicts_with = "fixture")]
    pub expr: Option<String>,
    /// Finite sequence, comma separated.
    #[arg(long, global = true, default_value = "")]
    pub seq: String,
    /// Flag position for the gamma/epsilon flag fixtures.
    #[arg(long, global = true, default_value_t = 3)]
    pub m0: Nat,
    /// Tree name: `full-N`, `no-11` or `empty`.
    #[arg(long, global = true)]
    pub tree: Option<String>,
    /// Depth argument of `h` and `g`.
    #[arg(long, global = true)]
    pub depth: Option<Nat>,
    /// Use the ones-padded variant in `h`.
    #[arg(long, global = true)]
    pub hat: bool,
    /// Constant bound: the fan height for full-fan and pwc, the read bound for `g`.
    #[arg(long, global = true)]
    pub bound: Option<Nat>,
    /// Point given by a prefix, continued with `--pad`.
    #[arg(long, global = true, default_value = "")]
    pub point: String,
    /// Value repeated after the `--point` prefix.
    #[arg(long, global = true, default_value_t = 0)]
    pub pad: Nat,
    /// Trace file written by `trace` and read by `replay`.
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    /// Construction used by `mu`.
    #[arg(long, global = true, value_enum, default_value_t = MuRoute::Plain)]
    pub via: MuRoute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MuRoute {
    /// Linear search.
    Plain,
    /// Through the associate modulus.
    Modulus,
    /// Through the extensionality witness of the Gandy-Hyland functional.
    GhExt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Γ(Y, s) through stabilized canonical approximations.
    EvalGh,
    /// H(Y, s, M), or Ĥ with --hat.
    H,
    /// G(Y, s, N); with --bound every read is checked against it.
    G,
    /// Least stable depth of G(Y, s, ·) and its value.
    Stabilize,
    /// Fan modulus over binary points.
    Fan,
    /// Fan modulus over points below the constant --bound (default 1).
    FullFan,
    /// Special fan functional Θ applied to Y.
    SpecialFan,
    /// Checks the special-fan implication for Y against --tree.
    ScfCheck,
    /// Weak continuity bound at --point below the constant --bound.
    Pwc,
    /// GHS witness and derived modulus at --point.
    Ghs,
    /// Records a Herbrand trace of Γ(Y, s).
    Trace,
    /// Replays the trace in --trace.
    Replay,
    /// Least zero of --point via --via.
    Mu,
    /// Runs the acceptance suite.
    CheckAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::EvalGh => "eval-gh",
            Command::H => "h",
            Command::G => "g",
            Command::Stabilize => "stabilize",
            Command::Fan => "fan",
            Command::FullFan => "full-fan",
            Command::SpecialFan => "special-fan",
            Command::ScfCheck => "scf-check",
            Command::Pwc => "pwc",
            Command::Ghs => "ghs",
            Command::Trace => "trace",
            Command::Replay => "replay",
            Command::Mu => "mu",
            Command::CheckAll => "check-all",
        }
    }
}

impl RunConfig {
    pub fn session(&self) -> SessionConfig {
        SessionConfig {
            fuel: Fuel(self.fuel),
            nmax: self.nmax,
            window: self.window,
            value_cap: self.value_cap,
            memoize: true,
        }
    }

    fn functional(&self) -> Result<Functional> {
        match (&self.expr, &self.fixture) {
            (Some(text), _) => Ok(parse_spec(text)?.to_functional(text.as_str())),
            (None, Some(name)) => catalog::functional(name, self.m0),
            (None, None) => Err(Error::Usage("give --fixture NAME or --expr TEXT".into())),
        }
    }

    fn seq(&self) -> Result<FinSeq> {
        self.seq.parse()
    }

    fn point(&self) -> Result<Point> {
        Ok(Point::pad(&self.point.parse()?, self.pad))
    }

    fn depth(&self) -> Result<Nat> {
        self.depth
            .ok_or_else(|| Error::Usage("give --depth N".into()))
    }

    fn trace_path(&self) -> Result<&PathBuf> {
        self.trace
            .as_ref()
            .ok_or_else(|| Error::Usage("give --trace PATH".into()))
    }
}

/// Exit code for a failed operation.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_)
        | Error::Parse { .. }
        | Error::Arity { .. }
        | Error::Io(_)
        | Error::Json(_) => EXIT_USAGE,
        e if e.is_resource_limit() => EXIT_RESOURCE,
        _ => EXIT_PROPERTY,
    }
}

/// Runs one command. Operation errors end up in the record; the second
/// component is the exit code.
pub fn run_command(cmd: Command, cfg: &RunConfig) -> (ResultRecord, i32) {
    let mut record = ResultRecord::new(cmd.name());
    for (k, v) in [
        ("expr", &cfg.expr),
        ("fixture", &cfg.fixture),
        ("tree", &cfg.tree),
    ] {
        if let Some(v) = v {
            record = record.input(k, v);
        }
    }
    record = record.input("seq", &cfg.seq).input("m0", cfg.m0);
    let start = Instant::now();
    let mut probes = 0;
    let result = dispatch(cmd, cfg, &mut record, &mut probes);
    record.probes = probes;
    record.wall_micros = start.elapsed().as_micros() as u64;
    let code = match result {
        Ok((output, holds)) => {
            record.output = Some(output);
            if holds {
                EXIT_OK
            } else {
                EXIT_PROPERTY
            }
        }
        Err(e) => {
            record.error = Some((&e).into());
            exit_code(&e)
        }
    };
    (record, code)
}

/// Output value plus whether the checked property (if any) held.
fn dispatch(
    cmd: Command,
    cfg: &RunConfig,
    record: &mut ResultRecord,
    probes: &mut u64,
) -> Result<(Value, bool)> {
    let session = EvalSession::new(cfg.session());
    let fuel = Fuel(cfg.fuel);
    if cmd == Command::CheckAll {
        let outcomes = acceptance::run_all(&cfg.session());
        for o in &outcomes {
            eprintln!("{o}");
        }
        let passed = outcomes.iter().all(|o| o.passed);
        return Ok((json!({ "passed": passed, "criteria": outcomes }), passed));
    }
    if cmd == Command::Replay {
        let path = cfg.trace_path()?;
        *record = record.clone().input("trace", path.display());
        let w: HerbrandWitness = serde_json::from_str(&fs::read_to_string(path)?)?;
        let s = if cfg.seq.is_empty() {
            w.seq.clone()
        } else {
            cfg.seq()?
        };
        *probes = w.probe_count() as u64;
        let same = replay_check(&w, &s, &session)?;
        return Ok((
            json!({ "matches": same, "depth": w.depth, "result": w.result }),
            same,
        ));
    }
    if cmd == Command::Mu {
        *record = record
            .clone()
            .input("point", &cfg.point)
            .input("pad", cfg.pad)
            .input(
                "via",
                cfg.via
                    .to_possible_value()
                    .expect("no skipped routes")
                    .get_name(),
            );
        let f = cfg.point()?;
        let z = match cfg.via {
            MuRoute::Plain => mu(&f, fuel)?,
            MuRoute::Modulus => mu_from_modulus(modulus_from_associate, &f, fuel)?,
            MuRoute::GhExt => mu_from_gh_ext(gamma_on_associates, associate_ext_witness, &f, fuel)?,
        };
        return Ok((json!({ "value": z, "is_zero": f.at(z)? == 0 }), true));
    }

    let (y, calls) = cfg.functional()?.counting();
    let s = cfg.seq()?;
    let out = match cmd {
        Command::EvalGh => json!({ "value": gamma_eval(&y, &s, &session)? }),
        Command::H => {
            let m = cfg.depth()?;
            *record = record.clone().input("depth", m).input("hat", cfg.hat);
            let v = if cfg.hat {
                h_hat_eval(&y, &s, m, &session)?
            } else {
                h_eval(&y, &s, m, &session)?
            };
            json!({ "value": v })
        }
        Command::G => {
            let n = cfg.depth()?;
            *record = record.clone().input("depth", n);
            let v = match cfg.bound {
                Some(b) => {
                    *record = record.clone().input("bound", b);
                    g_eval_bounded(&y, &s, n, &Point::constant(b), &session)?
                }
                None => g_eval(&y, &s, n, &session)?,
            };
            json!({ "value": v })
        }
        Command::Stabilize => serde_json::to_value(stabilize(&y, &s, &session)?)?,
        Command::Fan => json!({ "modulus": fan_modulus(&y, fuel)? }),
        Command::FullFan => {
            let b = cfg.bound.unwrap_or(1);
            *record = record.clone().input("bound", b);
            json!({ "modulus": full_fan_modulus(&y, &Point::constant(b), fuel)? })
        }
        Command::SpecialFan => {
            let theta = special_fan(|g| fan_modulus(g, fuel), &y)?;
            let points: Vec<String> = theta.prefixes.iter().map(|t| t.to_string()).collect();
            json!({ "bound": theta.bound, "points": points })
        }
        Command::ScfCheck => {
            let name = cfg
                .tree
                .as_deref()
                .ok_or_else(|| Error::Usage("give --tree NAME".into()))?;
            let tree = catalog::tree(name)?;
            let theta = special_fan(|g| fan_modulus(g, fuel), &y)?;
            let holds = scf_check(&theta, &y, &tree, cfg.depth_cap)?;
            *probes = calls.get();
            return Ok((json!({ "holds": holds, "bound": theta.bound }), holds));
        }
        Command::Pwc => {
            let b = cfg.bound.unwrap_or(1);
            *record = record
                .clone()
                .input("point", &cfg.point)
                .input("pad", cfg.pad)
                .input("bound", b);
            json!({ "bound": pwc_bound(&y, &cfg.point()?, &Point::constant(b), fuel)? })
        }
        Command::Ghs => {
            *record = record
                .clone()
                .input("point", &cfg.point)
                .input("pad", cfg.pad);
            let f = cfg.point()?;
            json!({
                "witness": ghs_witness(&y, &f, &session)?,
                "modulus": modulus_from_ghs(&y, &f, &session)?,
            })
        }
        Command::Trace => {
            let w = herbrand_trace(&y, &s, &session)?;
            if let Some(path) = &cfg.trace {
                *record = record.clone().input("trace", path.display());
                fs::write(path, serde_json::to_string_pretty(&w)?)?;
            }
            serde_json::to_value(&w)?
        }
        Command::Replay | Command::Mu | Command::CheckAll => unreachable!("handled above"),
    };
    *probes = calls.get();
    Ok((out, true))
}

/// Parses `args`, runs the command, prints the record; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (record, mut code) = run_command(cli.command, &cli.config);
    match serde_json::to_string(&record) {
        Ok(line) => println!("{line}"),
        Err(e) => eprintln!("{e}"),
    }
    if let Some(path) = &cli.config.json {
        if let Err(e) = emit_json(std::slice::from_ref(&record), path) {
            eprintln!("{e}");
            code = code.max(EXIT_USAGE);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (ResultRecord, i32) {
        let cli = Cli::try_parse_from(std::iter::once("gh").chain(args.iter().copied())).unwrap();
        run_command(cli.command, &cli.config)
    }

    #[test]
    fn eval_gh_on_sum() {
        let (r, code) = run(&["eval-gh", "--expr", "f(0)+f(1)"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(r.output, Some(json!({ "value": 1 })));
        assert!(r.probes > 0);
    }

    #[test]
    fn special_fan_on_constant() {
        let (r, code) = run(&["special-fan", "--fixture", "const-2"]);
        assert_eq!(code, EXIT_OK);
        let out = r.output.unwrap();
        assert_eq!(out["bound"], 2);
        assert_eq!(out["points"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn h_and_g() {
        let (r, _) = run(&["h", "--expr", "f(0)", "--seq", "5,7", "--depth", "1"]);
        assert_eq!(r.output, Some(json!({ "value": 5 })));
        let (r, code) = run(&[
            "g", "--expr", "f(0)", "--seq", "9", "--depth", "4", "--bound", "2",
        ]);
        assert_eq!(code, EXIT_PROPERTY);
        assert_eq!(r.error.unwrap().kind, "BoundExceeded");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["eval-gh"]).1, EXIT_USAGE);
        assert_eq!(run(&["eval-gh", "--fixture", "nope"]).1, EXIT_USAGE);
        assert_eq!(run(&["eval-gh", "--expr", "f(0)+"]).1, EXIT_USAGE);
        assert_eq!(run(&["h", "--fixture", "const-2"]).1, EXIT_USAGE);
        assert_eq!(run(&["scf-check", "--fixture", "const-2"]).1, EXIT_USAGE);
        assert_eq!(
            Cli::try_parse_from(["gh", "--fuel", "0", "fan"])
                .unwrap_err()
                .exit_code(),
            EXIT_USAGE
        );
    }

    #[test]
    fn mu_routes_agree() {
        for via in ["plain", "modulus", "gh-ext"] {
            let (r, code) = run(&["mu", "--point", "3,1,4,0,2", "--pad", "1", "--via", via]);
            assert_eq!(code, EXIT_OK, "{via}: {r:?}");
            assert_eq!(r.output.unwrap()["value"], 3, "{via}");
        }
        let (r, code) = run(&[
            "mu", "--point", "1", "--pad", "1", "--via", "modulus", "--fuel", "4096",
        ]);
        assert_eq!(code, EXIT_RESOURCE);
        assert_eq!(r.error.unwrap().kind, "FuelExhausted");
    }

    #[test]
    fn scf_check_holds() {
        let (r, code) = run(&["scf-check", "--fixture", "sum01", "--tree", "no-11"]);
        assert_eq!(code, EXIT_OK, "{r:?}");
    }
}
