use thiserror::Error;

use crate::measure::IntegralResult;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("rational function has a pole at {0}")]
    PoleAtPoint(String),
    #[error("rational function is not regular at the p-adic evaluation point")]
    PadicPole,
    #[error("coefficient {0} is not p-integral")]
    CoefficientNotIntegral(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision must be positive")]
    ZeroPrecision,
    #[error("p^K = {p}^{k} exceeds the supported modulus range")]
    PrecisionTooLarge { p: u64, k: u32 },
    #[error("operands have different (p, K): ({0}, {1}) vs ({2}, {3})")]
    PrecisionMismatch(u64, u32, u64, u32),
    #[error("divisor is not a p-adic unit")]
    NonunitDivisor,
    #[error("quotient leaves Z_p (numerator valuation {num} < divisor valuation {den})")]
    NotIntegral { num: u32, den: u32 },
    #[error("argument must be a p-adic unit")]
    NonunitArgument,
    #[error("base must be congruent to 1 mod p")]
    BaseNotPrincipalUnit,
    #[error("q is congruent to 1 modulo p^K; 1 - q^alpha vanishes at this precision")]
    DegenerateQ,
    #[error("q must be congruent to 1 mod p")]
    QNotPrincipal,
    #[error("rational {0} has a denominator divisible by p")]
    NotPIntegral(String),

    #[error("index {a} out of range [0, {bound})")]
    RangeViolation { a: u64, bound: u64 },
    #[error("target valuation {target} not reached within {levels} levels (achieved {achieved})")]
    PrecisionNotReached { target: u32, levels: u32, achieved: u32, best: Box<IntegralResult> },

    #[error("splitting modulus d = {0} must be odd")]
    EvenD(u64),
    #[error("gcd(h, k) = gcd({h}, {k}) is not 1")]
    NoncoprimeHK { h: u64, k: u64 },
    #[error("a = {0} is divisible by p")]
    NonunitA(u64),
    #[error("series terms stopped gaining valuation at index {0}")]
    NonconvergentSeries(u64),
    #[error("N = {0} is not divisible by p")]
    NNotDivisibleByP(u64),
    #[error("p divides k = {0}")]
    PDividesK(u64),
    #[error("s is not an integer m with m + 1 = 0 mod p - 1")]
    UnsupportedPadicS,
    #[error("p is not invertible modulo {0}")]
    PNotInvertible(u64),
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
