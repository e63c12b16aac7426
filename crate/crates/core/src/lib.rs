//! Exact computations in the first Weyl algebra `A1 = k[t, D]` over `Q`,
//! where `D t - t D = 1`.
//!
//! The crate covers primary decomposable subspaces `V` of `k[t]` (with a
//! power of `t` as conductor), the right ideals `D(R, V)` of operators
//! mapping `k[t]` into `V`, their characteristic elements, and the
//! exponential automorphisms `exp(ad p)` together with the invariants used
//! to compare Stafford subgroups.

pub mod automorphism;
pub mod error;
pub mod exact;
pub mod ideal;
pub mod pd;
mod render;
pub mod sample;
pub mod stafford;
pub mod weyl;

pub use automorphism::{AutomorphismWord, Generator};
pub use error::{Error, Result};
pub use exact::{LaurentPoly, Poly, Rational, Var};
pub use ideal::CharPair;
pub use pd::PdSubspace;
pub use weyl::{EulerForm, WeylElement};
