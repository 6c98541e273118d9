//! Finite affine spaces and affine (topological) systems over ordered algebras.
//!
//! The library works over five hard-coded varieties of algebras: plain sets,
//! join-semilattices with bottom (`supsl`), frames, complete Boolean algebras
//! (`cbalg`, finite here, so "complete" is automatic), and unital quantales
//! (`uquant`). Everything is finite and extensional: an algebra is a carrier
//! with an explicit order relation plus whatever extra operations its variety
//! demands, a homomorphism is a map stored as an array, and every categorical
//! claim in scope is checked by brute-force enumeration at desk scale.
//!
//! Layering, bottom to top:
//!
//! * [`algebra`] — carriers, validation, homomorphism enumeration, powers,
//!   products, and the finite Birkhoff duality used to code frame coproducts;
//! * [`free`] — free algebras on one generator, the extension operator, and
//!   the symbolic free unital quantale (finite subsets of the naturals under
//!   Minkowski addition);
//! * [`coproduct`] — variety-specific coproducts with universal-property
//!   audits;
//! * [`space`] — affine spaces (a set of points plus a set of `L`-valued
//!   opens closed under the variety's operations) and their maps;
//! * [`system`] — affine systems, the space/system adjunction, the Sierpinski
//!   system, powers of it (materialized or lazily coded), separation and
//!   sobriety predicates, and the injectivity search machinery;
//! * [`verify`] — seeded instance generators, the named verification suites
//!   exposed by the CLI, negative controls, and counterexample shrinking.

pub mod algebra;
pub mod budget;
pub mod catalog;
pub mod coproduct;
pub mod error;
pub mod free;
pub mod space;
pub mod system;
// stubs pending
pub mod verify;

pub use algebra::{
    enumerate_homs, enumerate_homs_naive, generated_subalgebra, join_irreducibles,
    power_algebra, product_algebras, Elem, FiniteAlgebra, Hom, Poset, PowerAlgebra,
    ProductAlgebra, Subalgebra, Variety,
};
pub use budget::Budget;
pub use error::Error;
pub use space::{
    enumerate_continuous_maps, is_continuous, is_t0_space, sierpinski_space,
    sober_space_report, AffineSpace, SpaceMap,
};
pub use system::{
    adjunction_hom_bijection, counit, embed_space, embed_space_map,
    enumerate_system_morphisms, initiality_check, is_t0_system, mono_source_check,
    sober_system_report, spatialize, spatialize_morphism, transpose, AffineSystem,
    InitialityReport, MonoSourceReport, SystemMorphism,
};
pub use system::inject::{
    extend_along, find_retraction, is_sober_mono, minjective_search, mono_report,
    restrict_system, Extension, ExtensionStrategy, MInjectivityVerdict, MonoReport,
};
pub use system::power::{
    audit_canonical_power, audit_product_universal, canonical_to_power,
    lazy_sober_mono_audit, materialize_canonical, pair_into_product, product_systems,
    CanonicalPowerReport, CanonicalToPower, ProductSystem, SoberMonoReport,
};
pub use system::sierpinski::{
    audit_counit_comparison, audit_morphisms_to_s, canonical_morphism_to_s,
    free_generator, sierpinski_kappa_uquant, sierpinski_system, theta_comparison,
    CounitComparisonReport, MorphismsToSAudit, ThetaReport,
};
pub use verify::{run_suite, Failure, GenConfig, SuiteId, SuiteReport};
