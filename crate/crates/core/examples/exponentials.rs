// Finite sets and bijections, and the exponential of a groupoid of colors.

use std::error::Error;
use std::sync::Arc;

use finpoly::bij::{build_bij, build_exp, build_exp_skeletal, realize, skeletize, TruncationConfig};
use finpoly::FiniteGroupoid;

fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let cfg = TruncationConfig::new(4);
    let bij = build_bij(cfg);
    let (n, _) = skeletize(&Arc::new(realize(3)))?;
    let point = Arc::new(FiniteGroupoid::discrete(1));
    let exp = build_exp(&point, cfg);
    let two_colors = Arc::new(FiniteGroupoid::discrete(2));
    let skeletal = build_exp_skeletal(&two_colors, cfg);
    Ok(vec![
        format!("bijections up to 4: {} morphisms", bij.groupoid.morphism_count()),
        format!("skeletize(realize(3)) = {n}"),
        format!("cardinality of Exp(1) up to 4: {}", exp.groupoid.cardinality()),
        format!("skeletal Exp(2) up to 4: {} points", skeletal.points().len()),
    ])
}

fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
