//! GHS witnesses and the modulus of continuity they induce.

use gandy_hyland::catalog;
use gandy_hyland::gh::{ghs_witness, modulus_from_ghs, EvalSession};

fn main() -> gandy_hyland::Result<()> {
    let session = EvalSession::default();
    let points = catalog::sample_points();
    for name in ["const-2", "proj-2", "sum01", "nested"] {
        let y = catalog::functional(name, 0)?;
        let mut row = Vec::new();
        for f in points.iter().take(5) {
            row.push((
                ghs_witness(&y, f, &session)?,
                modulus_from_ghs(&y, f, &session)?,
            ));
        }
        println!("{name:>8}: (witness, modulus) on five sample points {row:?}");
    }
    Ok(())
}
