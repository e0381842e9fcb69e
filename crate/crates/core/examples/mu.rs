//! The least-zero operator three ways: search, associate modulus, and the
//! extensionality witness of Γ.

use gandy_hyland::acceptance::gamma_on_associates;
use gandy_hyland::associate::modulus_from_associate;
use gandy_hyland::functional::{mu, Fuel};
use gandy_hyland::gh::{associate_ext_witness, mu_from_gh_ext, mu_from_modulus};
use gandy_hyland::point::Point;
use gandy_hyland::seq::FinSeq;

fn main() -> gandy_hyland::Result<()> {
    let fuel = Fuel(1 << 16);
    let f = Point::pad(&FinSeq::from([4, 2, 7, 0, 1]), 1);
    println!("plain     {}", mu(&f, fuel)?);
    println!(
        "modulus   {}",
        mu_from_modulus(modulus_from_associate, &f, fuel)?
    );
    println!(
        "gh-ext    {}",
        mu_from_gh_ext(gamma_on_associates, associate_ext_witness, &f, fuel)?
    );
    let ones = Point::constant(1);
    println!(
        "no zero:  {:?}",
        mu_from_modulus(modulus_from_associate, &ones, Fuel(1 << 10))
    );
    Ok(())
}
