//! Prime-characteristic commutative algebra over `F_p`.
//!
//! The layers build on each other:
//!
//! * [`field`], [`monomial`], [`poly`], [`ring`], [`parse`]: exact sparse arithmetic.
//! * [`groebner`]: Buchberger's algorithm, normal forms, combinatorial dimension.
//! * [`ideal`]: sums, products, bracket powers, colons, saturation, intersection,
//!   elimination and heights.
//! * [`divisorial`]: ring presentations, canonical ideals by linkage, symbolic powers
//!   of height-one ideals and the Q-Gorenstein index.
//! * [`fsingular`]: Fedder's criterion and Frobenius splitting ideals.
//! * [`cyclic`]: presentations of cyclic covers.

pub mod cyclic;
pub mod divisorial;
pub mod error;
pub mod field;
pub mod fsingular;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod random;
pub mod ring;

pub use error::{AlgebraError, PolyError};
pub use field::{FieldElem, PrimeField};
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::Poly;
pub use ring::{Budget, Ring};
