//! Repeated derivatives of j = E4^3 / Delta in the ring Q[E2*, E4, E6, 1/Delta].

use lg_moonshine::{DerivationRules, QPolynomial};

fn main() -> lg_moonshine::Result<()> {
    let rules = DerivationRules::ramanujan();
    let tower = rules.tower(&QPolynomial::j_invariant(), 4);
    println!("a = E2*, b = E4, c = E6, d = 1/Delta");
    for (n, p) in tower.iter().enumerate() {
        println!("P_{n} (weight {:>2}, {} terms) = {p}", p.weight()?, p.len());
    }
    Ok(())
}
