// Unit, associativity and coherence laws on a few generated instances.

use std::error::Error;

use finpoly::laws::{run_law_suite, Verdict};
use finpoly::poly::Caps;

fn run_example() -> Result<Vec<String>, Box<dyn Error>> {
    let records = run_law_suite(7, 3, &Caps::default());
    let mut lines = Vec::new();
    for r in &records {
        match &r.verdict {
            Verdict::Pass => lines.push(format!("instance {} {}: pass", r.instance, r.law)),
            Verdict::Fail(why) | Verdict::Capped(why) => {
                return Err(format!("instance {} {}: {why}", r.instance, r.law).into())
            }
        }
    }
    Ok(lines)
}

fn main() -> Result<(), Box<dyn Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
