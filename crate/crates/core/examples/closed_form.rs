//! Closed-form targets, plus the j-invariant of the Hesse pencil at a few
//! rational parameters.

use lg_moonshine::emit::{series_table, short_value};
use lg_moonshine::{hesse_j, ClosedFormTarget, PointKind, Rational};

fn main() -> lg_moonshine::Result<()> {
    for kind in PointKind::ALL {
        let target = ClosedFormTarget::new(kind);
        println!("{kind}: {}", target.description());
        print!("{}", series_table(&target.expand(12)?, "t"));
    }
    for t in [Rational::zero(), Rational::one(), Rational::from(3), Rational::new(-1, 2)] {
        println!("hesse_j({}) = {}", short_value(&t), short_value(&hesse_j(&t)?));
    }
    match hesse_j(&Rational::from(-1)) {
        Err(e) => println!("hesse_j(-1): {e}"),
        Ok(v) => println!("hesse_j(-1) = {v}"),
    }
    Ok(())
}
