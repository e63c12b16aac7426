//! Normal-ordered arithmetic in `k[t, t^-1][D]`, degrees, the action on
//! Laurent polynomials and the Euler form.

mod element;
mod euler;

pub use element::WeylElement;
pub use euler::{from_euler, to_euler, EulerForm};
