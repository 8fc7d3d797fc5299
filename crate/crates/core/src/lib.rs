//! Exact-arithmetic engine for twisted (co)homology of finite cyclic
//! groups: Smith normal form over Z, group rings Z[Z_m] and their modules,
//! free resolutions with contracting homotopies, diagonal approximations
//! built by homotopy lifting, cup/cross products, Berstein-Schwarz classes
//! and their certified vanishing on products of lens spaces, and
//! number-theoretic lens-space classification. Every nontrivial result is
//! emitted as an independently re-checkable certificate.

pub mod abelian;
pub mod complex;
pub mod error;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod snf;

pub use abelian::{subquotient, AbelianPresentation, ElementOrder};
pub use error::{Error, Result};
pub use matrix::{Int, IntMatrix, Triplets};
pub use module::{GModule, ModuleHom, SesModules};
pub use ring::CyclicRingElement;
pub use snf::{kernel_basis, smith, solve, solve_multi, SmithDecomposition};
