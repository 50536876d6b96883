//! Equivariant codes over group algebras of finite abelian groups.

pub mod blackbox;
pub mod code;
pub mod conv;
pub mod decode;
pub mod error;
pub mod ff;
pub mod galg;
pub mod io;
pub mod kgmat;
pub mod linalg;

pub use code::{EquivariantCode, Message, ResidueVector};
pub use decode::{DecoderData, DecodeOutcome, PadeApproximant};
pub use error::{Error, Result};
pub use ff::{Fe, Field};
pub use galg::{AbelianGroup, FourierImage, GroupAlgebra, GroupAlgebraElement};
pub use kgmat::KGMatrix;
pub use linalg::Matrix;
