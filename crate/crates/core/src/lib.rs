//! Exact computations in fibered Burnside rings B^Cn(G) for finite groups G
//! and cyclic fiber groups C_n.
//!
//! The crate covers the standard monomial basis and its multiplication, the
//! ghost ring and mark morphism, species and primitive idempotents with
//! their conductors, elementary and general biset operations, and fiber
//! change maps, all over exact cyclotomic arithmetic. The `verify` module
//! bundles the identity sweeps exposed by the `fbr` command line tool.
//!
//! ```
//! use fbr_core::group::{load_group, GroupSpec, SubgroupLattice};
//! use fbr_core::FiberedRing;
//!
//! let g = load_group(&GroupSpec::catalog("S3"), 128).unwrap();
//! let ring = FiberedRing::new(SubgroupLattice::new(g), 6);
//! assert_eq!(ring.rank(), 7);
//! for rep in ring.conductors() {
//!     assert_eq!(rep.c, rep.rhs); // exp(S3)/6 is coprime to 6
//! }
//! ```

pub mod biset;
pub mod cyclotomic;
pub mod fibered;
pub mod group;
pub mod linalg;
pub mod report;
pub mod verify;

pub use cyclotomic::{denominator_lcm, divisors, euler_phi, squarefree_part, CycField, CycNum, Int, Rat};
pub use biset::{
    conjugate, deflate, fiber_change, fiber_change_injective, fiber_change_iso, idempotent_image,
    induce, inflate, isomorph, naturality_defect, restrict, transitive_biset_apply, BisetError,
    BisetSpec, FiberMap, GroupEnv, GroupIso,
};
pub use fibered::{ConductorReport, FBElement, FiberHom, FiberedRing, GhostElement, MonomialPair, SpeciesPoint};
pub use group::{load_group, FiniteGroup, GroupError, GroupSpec, Subgroup, SubgroupLattice};
