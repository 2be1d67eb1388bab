//! Exact commutative-algebra foundations for the minprime workspace: base
//! rings with decidable equality, nested polynomial arithmetic, residue
//! fields with factorization, and triangular prime-ideal representations.

pub mod arith;
pub mod error;
pub mod factor;
pub mod field;
pub mod kpoly;
pub mod poly;
pub mod prime;
pub mod render;
pub mod ring;

pub use error::{AlgebraError, Result};
pub use kpoly::{KFrac, KPoly, SmallField, ValueVector};
pub use poly::{Ambient, GenList, Value, VarIdx};
pub use prime::PrimeRep;
pub use ring::{BasePrime, Elem, Ring, ValRing};
