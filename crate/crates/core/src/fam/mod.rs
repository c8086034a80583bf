//! Families of finite groupoids over a base groupoid with strictly
//! functorial transport, and the constructions built from them: total
//! spaces, homotopy fibers, groupoids of sections, finiteness and
//! equivalence of families.

mod equiv;
mod family;
mod fiber;
mod finite;
mod sections;
mod total;

pub use equiv::{
    check_family_equivalence, validate_family_morphism, FamilyEquivalence, FamilyMorphism, FamilyMorphismViolation,
};
pub use family::{validate_family, Family, FamilyViolation};
pub use fiber::fiber_family;
pub use finite::{is_finite_family, FiniteVerdict};
pub use sections::{homotopy_pi, FunctorGroupoid, SectionError, DEFAULT_SECTION_CAP};
pub use total::{sigma_family, sigma_first, tot_map, SigmaFamily, Total};
