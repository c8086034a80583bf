// Pairing into a coproduct of colors and splitting back apart.

use std::error::Error;
use std::sync::Arc;

use finpoly::cart::{bang_poly, pair_poly, unpair_poly};
use finpoly::fam::check_family_equivalence;
use finpoly::poly::{discrete_poly, Caps, DiscreteOp, Polynomial};

fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let cap = Caps::default().candidates;
    let p = discrete_poly(1, 1, &[DiscreteOp { color: 0, param_colors: vec![0, 0] }]);
    let q = discrete_poly(1, 2, &[DiscreteOp { color: 1, param_colors: vec![] }]);
    let paired = Arc::new(pair_poly(&p, &q)?);
    let (left, right) = unpair_poly(&paired, p.target().object_count(), cap)?;
    let same = |a: &Polynomial, b: &Polynomial| check_family_equivalence(a.ops(), b.ops(), cap).is_equivalent();
    let bang = bang_poly(p.source());
    Ok(vec![
        format!("paired target: {} colors", paired.target().object_count()),
        format!("left component recovers P: {}", same(&left.poly, &p)),
        format!("right component recovers Q: {}", same(&right.poly, &q)),
        format!("operations of the map to the empty groupoid: {}", bang.op_count()),
    ])
}

fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
