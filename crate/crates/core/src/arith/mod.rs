//! Exact rational, polynomial and rational-function arithmetic.

mod poly;
mod ratfunc;
pub(crate) mod zpoly;

pub use num_rational::BigRational;
pub use poly::Poly;
pub use ratfunc::{parse_rational, rational_to_string, RatFunc};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Binary operation on rational functions, aligning root orders first.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Binomial coefficient as an exact integer-valued rational.
pub fn binomial(n: u64, k: u64) -> BigRational {
    use num_bigint::BigInt;
    use num_traits::One;
    if k > n {
        return BigRational::from_integer(BigInt::from(0));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}
