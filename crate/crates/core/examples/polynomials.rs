// The square polynomial: evaluation, composition and its symmetries.

use std::error::Error;
use std::sync::Arc;

use finpoly::fam::Family;
use finpoly::poly::{compose, enumerate_self_equivalences, eval, is_finitary, monomial, Caps};
use finpoly::FiniteGroupoid;

fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let square = Arc::new(monomial(2));
    let caps = Caps::default();
    let three = Family::constant(square.source().clone(), Arc::new(FiniteGroupoid::discrete(3)));
    let values = eval(&square, &three, caps.candidates)?;
    let fourth = compose(&square, &square, caps.candidates)?;
    let autos = enumerate_self_equivalences(&square, &caps)?;
    Ok(vec![
        format!("X^2 at 3: {} elements", values.family.fiber(0).object_count()),
        format!("X^2 then X^2: arities {:?}", is_finitary(&fourth.poly).arities()),
        format!("self-equivalences of X^2: {}", autos.len()),
    ])
}

fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
