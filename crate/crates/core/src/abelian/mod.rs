//! Exact integer linear algebra and finitely generated abelian groups.

mod exterior;
mod group;
mod hermite;
mod hom;
mod matrix;
mod smith;
mod subgroup;

pub use exterior::{exterior_power, lex_subsets};
pub use group::{cokernel, kernel_basis, CokernelPresentation, FgAbGroup};
pub use hermite::{hermite_column_form, hermite_solve, solve_columns, solve_with, HermiteForm};
pub use hom::AbHom;
pub use matrix::{IntMatrix, JsonInt};
pub use smith::{smith_normal_form, unimodular_inverse, SmithDecomposition};
pub use subgroup::Subgroup;
