//! Exact computational algebra for Yetter-Drinfel'd Hopf algebras over groups
//! of prime order and the ordinary Hopf algebras derived from them.
//!
//! The crate builds finite-dimensional algebras from structure data (finite
//! groups and rings, characters, group cocycles), represents them through
//! sparse structure-constant tables over cyclotomic number fields, and
//! machine-verifies every axiom and closed-form identity it relies on:
//!
//! - [`cyclo`]: the scalar layer, exact arithmetic in Q(zeta_N) in the power
//!   basis modulo the cyclotomic polynomial Phi_N.
//! - [`finite`]: finite groups, finite rings, abelian characters, and the
//!   structure-data validation they need.
//! - [`cohomology`]: group 1- and 2-cocycles, coboundaries, cohomology
//!   class representatives, and cocycle extension groups.
//! - [`linalg`]: dense exact linear algebra over a cyclotomic field.
//! - [`hopf`]: the core representation of a Yetter-Drinfel'd Hopf algebra
//!   (an ordinary Hopf algebra is the special case of a trivial acting
//!   group), axiom verification suites, an antipode solver, grouplike
//!   enumeration, integrals, and the invariant bilinear form.
//! - [`construct`]: the concrete families built from structure data over a
//!   group and a ring, the two four-dimensional sign algebras, biproducts,
//!   the dual with modified structure, adjoint and coadjoint actions, the
//!   construction on A (x) H (x) A-dual, and both Hopf algebra extension
//!   pictures, each with entrywise comparison of its independent routes.
//! - [`classify`]: morphism categories, isomorphism tests and normal
//!   forms, structure-data recovery from an abstract presentation, and the
//!   orbit counts behind the classification results.
//! - [`clifford`]: Clifford theory for biproducts of commutative
//!   semisimple algebras: primitive idempotents, orbits, simple modules,
//!   characters, linkage, and the prime-pair arithmetic screens.
//! - [`recipe`]: the JSON recipe format used by the command-line
//!   interface and the canonical JSON encoding of results.

pub mod cyclo;
pub mod finite;
pub mod cohomology;
pub mod linalg;
pub mod hopf;
pub mod construct;
pub mod classify;
pub mod clifford;
pub mod recipe;

pub use classify::{
    BpDistinguished, BpIso, BpOrbitCount, BpParams, ClassRep, ClassifyError, Decomposition,
    EvenData, EvenIso, FamilyClassification, MorphismData, RecoveredData,
};
pub use clifford::{
    CliffordData, CliffordError, LinkageReport, ModuleTable, PqArithmetic, PqCaseTable,
    PqResidueCase, PqScreen, SimpleModule,
};
pub use construct::{AgData, ConstructError, Discrepancy, FrameworkData, ModifiedDual};
pub use cyclo::{Cyc, CycError, CycField};
pub use finite::{AbelianCharacter, FiniteError, FiniteGroup, FiniteRing, GroupHom};
pub use hopf::{HopfError, SparseVec, Term, VerifyReport, YdHopf};
