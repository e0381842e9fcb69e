//! Fan modulus, special fan functional and the weak continuity bound.

use gandy_hyland::catalog;
use gandy_hyland::fan::{
    fan_modulus, full_fan_modulus, pwc_bound, scf_check, special_fan, BinTree,
};
use gandy_hyland::functional::Fuel;
use gandy_hyland::point::Point;

fn main() -> gandy_hyland::Result<()> {
    let fuel = Fuel::default();
    for name in ["const-2", "proj-3", "sum01", "nested"] {
        let y = catalog::functional(name, 0)?;
        let theta = special_fan(|g| fan_modulus(g, fuel), &y)?;
        println!(
            "{name:>8}: fan {} full fan (≤2) {} Θ bound {} pwc at 0̄ {}",
            fan_modulus(&y, fuel)?,
            full_fan_modulus(&y, &Point::constant(2), fuel)?,
            theta.bound,
            pwc_bound(&y, &Point::zeros(), &Point::constant(2), fuel)?
        );
    }
    let trees = BinTree::enumerate(3);
    let g = catalog::functional("sum01", 0)?;
    let theta = special_fan(|g| fan_modulus(g, fuel), &g)?;
    let ok = trees
        .iter()
        .filter(|t| scf_check(&theta, &g, t, 16).unwrap_or(false))
        .count();
    println!(
        "{} trees of height ≤ 3, special fan implication holds on {ok}",
        trees.len()
    );
    Ok(())
}
