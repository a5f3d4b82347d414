//! Exact computations with finite-dimensional differential graded algebras.

pub mod auslander;
pub mod complex;
pub mod derived;
pub mod dga;
pub mod endo;
pub mod error;
pub mod filtration;
pub mod hochschild;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod radical;
pub mod resolution;
pub mod scalar;

pub use complex::{cohomology_of_complex, CohomologyEntry, CohomologyTable, Complex};
pub use dga::{builtin_example, DgaMorphism, FdDga, Violation};
pub use error::{Error, Result};
pub use module::{cone, random_module, strict_hom, strict_tensor, DgModule, ModuleMap, Side};
pub use radical::{dg_ideals, subspace_cohomology, is_separable, quotient_dga, underlying_radical, DgIdeal, Quotient, SeparabilityIdempotent};
pub use scalar::{FieldSpec, Fp, Rational, Scalar};

pub use auslander::{auslander_dga, keylemma_witness, Auslander};
pub use derived::{
    contradual_perfection_check, derived_hom, simple_modules, derived_tensor, ext_tor_duality_check, gorenstein_check, nakayama_witness,
    perfect_dual, perfection_check, serre_duality_check, smoothness_check, Status, Verdict, Window,
};
pub use hochschild::hochschild_homology;
pub use koszul::{koszul_dual, KoszulDual};
pub use resolution::{resolve, resolve_minimal, BettiTable, TruncatedResolution};
pub type QDga = FdDga<Rational>;
pub type QModule = DgModule<Rational>;
pub type QResolution = TruncatedResolution<Rational>;

