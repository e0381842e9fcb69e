//! Record a Herbrand trace, replay it, and watch a tampered trace fail.

use gandy_hyland::catalog;
use gandy_hyland::gh::{herbrand_trace, replay_check, EvalSession, Oracle};
use gandy_hyland::seq::FinSeq;
use gandy_hyland::Error;

fn main() -> gandy_hyland::Result<()> {
    let session = EvalSession::default();
    let y = catalog::functional("sum01", 0)?;
    let s = FinSeq::empty();
    let w = herbrand_trace(&y, &s, &session)?;
    println!("{}", serde_json::to_string_pretty(&w)?);
    println!("replay: {}", replay_check(&w, &s, &session)?);
    let mut bad = w.clone();
    bad.probes.get_mut(&Oracle::Apply).expect("probes")[0].answer += 1;
    match replay_check(&bad, &s, &session) {
        Ok(same) => println!("tampered replay matches: {same}"),
        Err(Error::OutOfTableQuery) => println!("tampered replay left the table"),
        Err(e) => return Err(e),
    }
    Ok(())
}
