// Building finite groupoids, checking them and comparing them up to
// equivalence.

use std::error::Error;

use finpoly::grpd::{check_groupoid_equivalence, validate_groupoid, DEFAULT_AUT_CAP};
use finpoly::{FiniteGroupoid, Rational};

fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let z2 = FiniteGroupoid::deloop(&[vec![0, 1], vec![1, 0]])?;
    let pair = FiniteGroupoid::codiscrete(2);
    let mixed = z2.coproduct(&pair);
    if let Some(v) = validate_groupoid(&mixed).first() {
        return Err(v.to_string().into());
    }
    let mut lines = vec![format!(
        "Z/2 + codiscrete(2): {} objects, {} morphisms, cardinality {}",
        mixed.object_count(),
        mixed.morphism_count(),
        mixed.cardinality()
    )];
    // codiscrete(2) is a single isomorphism class with no automorphisms.
    let outcome = check_groupoid_equivalence(&pair, &FiniteGroupoid::discrete(1), DEFAULT_AUT_CAP);
    lines.push(format!("codiscrete(2) vs point: {outcome}"));
    let outcome = check_groupoid_equivalence(&z2, &FiniteGroupoid::discrete(1), DEFAULT_AUT_CAP);
    lines.push(format!("Z/2 vs point: {outcome}"));
    assert_eq!(mixed.cardinality(), Rational::new(3, 2));
    Ok(lines)
}

fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
