//! The expression language: parse, render, evaluate with a syntactic modulus.

use gandy_hyland::dsl::{parse_spec, render};
use gandy_hyland::point::Point;

fn main() -> gandy_hyland::Result<()> {
    let alpha = Point::from_fn(|n| (n * 7 + 3) % 5);
    for text in [
        "f(0)+f(1)",
        "f(f(0))",
        "ifz(f(0), 2, f(1)*3)",
        "least(6, f(i))",
        "f(0)+",
    ] {
        match parse_spec(text) {
            Ok(e) => {
                let (v, reach) = e.eval(&alpha)?;
                let y = e.to_functional(text);
                println!(
                    "{text:<22} → {:<22} value {v}, reads below {reach}, modulus {}",
                    render(&e),
                    y.modulus(&alpha)?
                );
            }
            Err(e) => println!("{text:<22} → {e}"),
        }
    }
    Ok(())
}
