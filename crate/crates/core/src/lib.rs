//! Exact higher-order cohomology of finite permutation groups over ℚ and 𝔽_p.

pub mod algebra;
pub mod cocycle;
pub mod error;
pub mod ext;
pub mod field;
pub mod group;
pub mod les;
pub mod matrix;
pub mod module;
pub mod resolution;
pub mod subspace;

pub use algebra::{GroupAlgebra, IdealFiltration};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rational, Rationals};
pub use group::{FiniteGroup, NormalSubgroup, Permutation};
pub use matrix::{EchelonBuilder, Matrix, Rref};
pub use module::{GammaModule, ModuleMap};
pub use subspace::{Subquotient, Subspace};
pub use ext::{bar_oracle, ext, higher_cohomology, ExtGroup, HigherCohomology};
pub use resolution::{lift_chain_map, CandidateOrder, FreeResolution, ResolutionCache};
