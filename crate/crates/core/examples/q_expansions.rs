//! Exact q-expansions of the Eisenstein series, Delta and j.

use lg_moonshine::emit::series_table;
use lg_moonshine::numerics::{delta_qexp, divisor_sigma, eisenstein_qexp, j_qexp};

fn main() -> lg_moonshine::Result<()> {
    let sigmas: Vec<String> = (1..=10).map(|n| divisor_sigma(3, n).to_string()).collect();
    println!("sigma_3(1..10) = {}", sigmas.join(", "));
    for k in [2, 4, 6] {
        println!("E{k}:");
        print!("{}", series_table(&eisenstein_qexp(k, 4)?, "q"));
    }
    println!("Delta:");
    print!("{}", series_table(&delta_qexp(5)?, "q"));
    println!("j:");
    print!("{}", series_table(&j_qexp(4)?, "q"));
    Ok(())
}
