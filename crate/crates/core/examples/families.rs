// A family over the circle-like groupoid Z/2 whose transport swaps two
// points; its total groupoid, sections and finiteness.

use std::error::Error;
use std::sync::Arc;

use finpoly::fam::{homotopy_pi, is_finite_family, validate_family, Family, DEFAULT_SECTION_CAP};
use finpoly::{FiniteGroupoid, GroupoidFunctor};

fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let base = Arc::new(FiniteGroupoid::cyclic(2));
    let two = Arc::new(FiniteGroupoid::discrete(2));
    let swap = GroupoidFunctor::new(two.clone(), two.clone(), vec![1, 0], vec![1, 0]);
    let family = Family::new(base, vec![two.clone()], vec![GroupoidFunctor::identity(two), swap]);
    if let Some(v) = validate_family(&family).first() {
        return Err(v.to_string().into());
    }
    let total = family.tot();
    let sections = homotopy_pi(&family, DEFAULT_SECTION_CAP)?;
    Ok(vec![
        format!("total: {} objects, {} morphisms", total.groupoid.object_count(), total.groupoid.morphism_count()),
        format!("finite total: {:?}", is_finite_family(&family).cardinality()),
        format!("sections: {}", sections.groupoid.object_count()),
    ])
}

fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
