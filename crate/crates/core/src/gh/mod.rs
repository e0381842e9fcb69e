//! The Gandy-Hyland functional and its finite approximations.

mod approx;
mod extract;
mod ghs;
mod herbrand;
mod session;

pub use approx::{g_eval, g_eval_bounded, gamma_eval, gh_check, h_eval, h_hat_eval, stabilize};
pub use extract::{
    associate_ext_witness, certified_depth_bounded, ext_witness, modulus_from_mu, mu_from_gh_ext,
    mu_from_modulus, zero_indicator,
};
pub use ghs::{ghs_candidates, ghs_witness, modulus_from_ghs};
pub use herbrand::{
    herbrand_trace, replay_check, table_functional, HerbrandWitness, Oracle, Probe,
};
pub use session::{EvalSession, SessionConfig, Stable};
