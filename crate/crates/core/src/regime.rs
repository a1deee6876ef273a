//! Symbolic and p-adic evaluation regimes and the values they produce.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::RatFunc;
use crate::error::{Error, Result};
use crate::padic::{unit_pow, PadicContext, PadicInt};

/// Where a q-expression is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime<'a> {
    /// Exact rational function of `q`.
    Symbolic,
    /// Residue modulo `p^K` at the context's `q`.
    Padic(&'a PadicContext),
}

/// A value produced in one of the two regimes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Padic(PadicInt),
    Symbolic(RatFunc),
}

impl Value {
    pub fn zero_like(&self) -> Value {
        match self {
            Value::Symbolic(_) => Value::Symbolic(RatFunc::zero()),
            Value::Padic(z) => Value::Padic(z.zero_like()),
        }
    }

    pub fn add(&self, o: &Value) -> Result<Value> {
        match (self, o) {
            (Value::Symbolic(a), Value::Symbolic(b)) => Ok(Value::Symbolic(a + b)),
            (Value::Padic(a), Value::Padic(b)) => Ok(Value::Padic(a.checked_add(b)?)),
            _ => Err(Error::HypothesisViolation("mixed regimes".into())),
        }
    }

    pub fn sub(&self, o: &Value) -> Result<Value> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Symbolic(a) => Value::Symbolic(-a),
            Value::Padic(a) => Value::Padic(-*a),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Symbolic(a) => a.is_zero(),
            Value::Padic(a) => a.is_zero(),
        }
    }

    pub fn as_symbolic(&self) -> Option<&RatFunc> {
        match self {
            Value::Symbolic(a) => Some(a),
            Value::Padic(_) => None,
        }
    }

    pub fn as_padic(&self) -> Option<&PadicInt> {
        match self {
            Value::Padic(a) => Some(a),
            Value::Symbolic(_) => None,
        }
    }

    /// Sum of a nonempty term list.
    pub fn sum(terms: &[Value]) -> Result<Value> {
        let mut it = terms.iter();
        let first = it.next().expect("empty term list").clone();
        it.try_fold(first, |acc, t| acc.add(t))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Symbolic(a) => write!(f, "{a}"),
            Value::Padic(a) => write!(f, "{a}"),
        }
    }
}

/// `q^(1/D)`; requires `p` not dividing `D`.
pub fn root_of_q(ctx: &PadicContext, d: u32) -> Result<PadicInt> {
    if d == 1 {
        return Ok(ctx.q());
    }
    let e = BigRational::new(BigInt::from(1), BigInt::from(d));
    unit_pow(&ctx.q(), &ctx.rational(&e)?)
}

fn eval_int_poly(coeffs: &[BigInt], t: &PadicInt) -> PadicInt {
    let mut acc = t.zero_like();
    for c in coeffs.iter().rev() {
        acc = acc * *t + PadicInt::from_bigint(t.p(), t.precision(), c).unwrap();
    }
    acc
}

/// Evaluates a rational function at `t = q^(1/D)`, cancelling any common
/// power of `p` between numerator and denominator values.
pub fn eval_ratfunc(f: &RatFunc, ctx: &PadicContext) -> Result<PadicInt> {
    if f.is_zero() {
        return Ok(ctx.zero());
    }
    let (cn, zn) = f.num().to_primitive();
    let (cd, zd) = f.den().to_primitive();
    let c = cn / cd;
    let p = BigInt::from(ctx.p());
    let mut pv_den = 0u32;
    let mut b = c.denom().clone();
    while (&b % &p).is_zero() {
        b /= &p;
        pv_den += 1;
    }
    let t = root_of_q(ctx, f.root_order())?;
    let dv = eval_int_poly(&zd, &t).valuation();
    if dv >= ctx.precision() {
        return Err(Error::PadicPole);
    }
    let w = ctx.with_precision(ctx.precision() + dv + pv_den)?;
    let tw = root_of_q(&w, f.root_order())?;
    let a = PadicInt::from_bigint(ctx.p(), w.precision(), c.numer())? * eval_int_poly(&zn, &tw);
    let bb = PadicInt::from_bigint(ctx.p(), w.precision(), c.denom())? * eval_int_poly(&zd, &tw);
    match a.div_cancel(&bb) {
        Ok(v) => v.with_precision(ctx.precision()),
        Err(Error::NotIntegral { .. }) => Err(Error::PadicPole),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;

    #[test]
    fn eval_matches_direct_arithmetic() {
        let ctx = PadicContext::from_parts(5, 4, 6).unwrap();
        // (1 - q^2)/(1 - q) = 1 + q
        let f = RatFunc::new(Poly::from_ints(&[1, 0, -1]), Poly::from_ints(&[1, -1]), 1).unwrap();
        assert_eq!(eval_ratfunc(&f, &ctx).unwrap(), ctx.int(7));
        // 1/(1 - q) is not p-integral at q = 6
        let g = RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, -1]), 1).unwrap();
        assert!(eval_ratfunc(&g, &ctx).is_err());
        // q/5 is not integral; (q-1)/5 is
        let h = RatFunc::new(Poly::from_ints(&[-1, 1]), Poly::from_ints(&[5]), 1).unwrap();
        assert_eq!(eval_ratfunc(&h, &ctx).unwrap(), ctx.int(1));
    }

    #[test]
    fn root_order_two() {
        let ctx = PadicContext::from_parts(5, 4, 6).unwrap();
        // t with t^2 = q
        let f = RatFunc::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[1]), 2).unwrap();
        let t = eval_ratfunc(&f, &ctx).unwrap();
        assert_eq!(t * t, ctx.q());
    }
}
