// Currying the square polynomial into the exponential and back.

use std::error::Error;
use std::sync::Arc;

use finpoly::bij::{build_exp, build_exp_set, TruncationConfig};
use finpoly::closure::{curry, uncurry};
use finpoly::poly::{enumerate_self_equivalences, monomial, search_equivalence, Caps};

fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let cfg = TruncationConfig::new(4);
    let square = monomial(2);
    // Split the single source color off as J, leaving an empty I.
    let exp = build_exp(square.source(), cfg);
    let curried = Arc::new(curry(&square, 0, &exp)?);
    let back = uncurry(&curried, &exp, square.target())?;
    let round_trip = search_equivalence(&back, &square, &Caps::default())?;
    let caps = Caps::default();
    let set_level = curry(&square, 0, &build_exp_set(square.source(), cfg))?;
    Ok(vec![
        format!("curried operations: {}", curried.op_count()),
        format!("uncurry(curry(X^2)) equivalent to X^2: {}", round_trip.is_found()),
        format!("automorphisms of curry(X^2): {}", enumerate_self_equivalences(&curried, &caps)?.len()),
        format!("over the set-level exponential: {}", enumerate_self_equivalences(&set_level, &caps)?.len()),
    ])
}

fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
