//! Weighted q-Genocchi numbers and polynomials, fermionic p-adic q-integrals
//! and Dedekind-type DC sums, with exact symbolic and fixed-precision p-adic
//! evaluation and an identity verifier.

pub mod arith;
pub mod dedekind;
pub mod error;
pub mod measure;
pub mod padic;
pub mod qgenocchi;
pub mod regime;
pub mod verifier;

pub use arith::{BigRational, Poly, RatFunc};
pub use error::{Error, Result};
pub use measure::IntegralResult;
pub use padic::{PadicContext, PadicInt};
pub use regime::{Regime, Value};
