//! Exact symbolic computations around Segal-Sugawara vectors for the classical
//! Lie algebras: symmetrizer traces in the enveloping algebra of the loop
//! algebra, their Harish-Chandra images, classical W-algebras defined by
//! screening operators, characters of the associated tensor representations,
//! harmonic polynomial bases and Casimir elements.
//!
//! All arithmetic is exact. The containers are generic over a [`Scalar`] field;
//! the aliases below fix it to arbitrary-precision rationals.

pub mod error;
pub mod foundations;
pub mod liealg;
pub mod poly;
pub mod envu;
pub mod walg;
pub mod linalg;
pub mod tensor;
pub mod sugawara;
pub mod characters;
pub mod harmonic;
pub mod casimir;
pub mod text;
pub mod suite;

pub use error::{Error, Result};
pub use foundations::Scalar;
pub use liealg::{AlgebraSpec, Family, Generator};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Element of an enveloping algebra over [`Rational`].
pub type UElement = envu::UElem<Rational>;
/// Multiplication context over [`Rational`].
pub type UAlgebra = envu::Algebra<Rational>;
/// Polynomial in the variables `mu_i[r]` over [`Rational`].
pub type Pi0Element = walg::pi0::Pi0<Rational>;
/// `sum_k P_k tau^k` over [`Rational`].
pub type Pi0TauElement = walg::pi0::TauOp<Rational>;
