//! Exact computer algebra for left bialgebroids and left Hopf algebroids.
//!
//! The crate builds finite-dimensional (or PBW-presented) instances of these
//! structures over the rationals and verifies their defining identities and
//! the higher structure on their (co)chain complexes: simplicial and cyclic
//! operators, endomorphism-style and coalgebra-style operads with
//! multiplication, cup products, Gerstenhaber brackets, Batalin-Vilkovisky
//! generators, Lie derivatives and cap products, Poisson differentials,
//! shuffle products and Koszul brackets, next to a classical polyvector
//! calculus used as an independent oracle.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, spaces
//! are quotients of labeled free modules computed by sparse elimination, and
//! every identity check reduces to literal equality of normal forms.

pub mod algebra;
pub mod bialgebroid;
pub mod coefficients;
pub mod complexes;
pub mod hom;
pub mod operad;
pub mod instances;
pub mod calculus;
pub mod scalar;
pub mod tensor;
pub mod freevec;
pub mod matrix;
pub mod rowred;

pub use freevec::FreeVector;
pub use scalar::Scalar;
