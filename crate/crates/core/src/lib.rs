//! Serre-type presentations of the finite-dimensional contragredient Lie
//! superalgebras relative to every Borel subalgebra, and an exact engine that
//! checks them by building the presented algebra weight by weight.

pub mod cartan;
pub mod dynkin;
pub mod error;
pub mod freelie;
pub mod linalg;
pub mod quotient;
pub mod rootdata;
pub mod scalar;
pub mod serre;
pub mod verify;

pub use error::{Error, Result};
pub use freelie::{FreeLie, LieExpr, LiePoly, LieTree};
pub use rootdata::{Family, PositiveRoot, RootDatum, SimpleSystem, Weight};
pub use scalar::{Poly, Scalar};
