//! Canonical approximations H, Ĥ, G and the stabilized value Γ(Y, s).

use gandy_hyland::catalog;
use gandy_hyland::gh::{g_eval, gamma_eval, h_eval, h_hat_eval, stabilize, EvalSession};
use gandy_hyland::seq::FinSeq;

fn main() -> gandy_hyland::Result<()> {
    let session = EvalSession::default();
    let s: FinSeq = "1".parse()?;
    for name in ["const-2", "sum01", "nested", "gamma-flag"] {
        let y = catalog::functional(name, 3)?;
        let row: Vec<String> = (0..5)
            .map(|n| {
                Ok(format!(
                    "{}/{}/{}",
                    h_eval(&y, &s, n, &session)?,
                    h_hat_eval(&y, &s, n, &session)?,
                    g_eval(&y, &s, n, &session)?
                ))
            })
            .collect::<gandy_hyland::Result<_>>()?;
        let st = stabilize(&y, &s, &session)?;
        println!(
            "{name:>10} at {s}: H/Ĥ/G for N=0..4 {row:?}; stable from {} with {}; Γ = {}",
            st.depth,
            st.value,
            gamma_eval(&y, &s, &session)?
        );
    }
    println!("memo entries: {}", session.memo_len());
    Ok(())
}
