//! Finite sequences, their codes, and lazy points.

use gandy_hyland::point::Point;
use gandy_hyland::seq::{decode, FinSeq};

fn main() -> gandy_hyland::Result<()> {
    let s: FinSeq = "3,1,4".parse()?;
    let code = s.code()?;
    println!("{s} has code {code}, decodes to {}", decode(code));
    for n in 0..8 {
        println!("  {n} ↦ {}", decode(n));
    }
    let alpha = Point::pad(&s, 0);
    println!("pad({s}, 0) starts {}", alpha.take(6)?);
    let squares = Point::from_fn(|n| n * n);
    println!(
        "squares start {}, {} entries evaluated",
        squares.take(5)?,
        squares.evaluated()
    );
    Ok(())
}
