//! Exact arithmetic for integer-valued polynomials on matrix rings over a
//! discrete valuation ring: the properly integral construction, null ideals of
//! `M_n(V/π^k)`, membership in `Int_K(M_n(V))` and its integral closure,
//! π-sequences and the quaternion transfer.

pub mod construct;
pub mod dvr;
pub mod error;
pub mod matrix;
pub mod membership;
pub mod nullideal;
pub mod parallel;
pub mod poly;
pub mod quat;

pub use error::{Error, Result};
