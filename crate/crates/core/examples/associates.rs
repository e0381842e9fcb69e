//! Kleene associates: the flags, and the round trip through functionals.

use gandy_hyland::associate::{
    associate_from_functional, flag_point, modulus_from_associate, Associate,
};
use gandy_hyland::catalog::ASSOCIATE_FUEL;
use gandy_hyland::functional::Functional;
use gandy_hyland::point::Point;

fn main() -> gandy_hyland::Result<()> {
    let h = flag_point(3);
    let alpha = Point::from_fn(|n| 10 + n);
    for a in [Associate::gamma_flag(&h), Associate::epsilon_flag(&h)] {
        println!(
            "{}: value {} at α, modulus {}",
            a.name(),
            a.apply(&alpha, ASSOCIATE_FUEL)?,
            modulus_from_associate(&a, &alpha, ASSOCIATE_FUEL)?
        );
    }
    let y = Functional::reading("f(0)+f(1)", |p| Ok(p.at(0)? + p.at(1)?));
    let a = associate_from_functional(&y)?;
    println!(
        "{} through its associate at α: {}",
        y.name(),
        a.apply(&alpha, ASSOCIATE_FUEL)?
    );
    Ok(())
}
