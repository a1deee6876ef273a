//! The q-Haar distribution `mu_q(a + p^n Z_p) = (-q)^a (1+q) / (1 + q^(p^n))`
//! and fermionic integrals computed as level-`n` Riemann sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Poly, RatFunc};
use crate::error::{Error, Result};
use crate::padic::{checked_prime_power, PadicContext, PadicInt};

/// Outcome of a fermionic integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: PadicInt,
    /// Valuation of the last inter-level difference (K if they agree).
    pub achieved_valuation: u32,
    pub levels_used: u32,
    /// `v_p(S_n - S_(n-1))` for `n = 2..=levels_used`.
    pub history: Vec<u32>,
}

/// `mu_q(a + p^n Z_p)` modulo `p^K`.
pub fn mu_q(a: u64, n: u32, ctx: &PadicContext) -> Result<PadicInt> {
    let bound = checked_prime_power(ctx.p(), n).ok_or(Error::PrecisionTooLarge { p: ctx.p(), k: n })?;
    if a >= bound {
        return Err(Error::RangeViolation { a, bound });
    }
    let q = ctx.q();
    let neg_q = -q;
    let den = ctx.one() + q.pow(bound);
    Ok(neg_q.pow(a) * (ctx.one() + q) * den.inv()?)
}

/// `mu_q(a + p^n Z_p)` as an exact rational function of `q`.
pub fn mu_q_symbolic(a: u64, n: u32, p: u64) -> Result<RatFunc> {
    let bound = p.checked_pow(n).ok_or(Error::PrecisionTooLarge { p, k: n })?;
    if a >= bound {
        return Err(Error::RangeViolation { a, bound });
    }
    let sign = if a.is_multiple_of(2) { 1 } else { -1 };
    let one = BigRational::one();
    let num = Poly::monomial(BigRational::from_integer(BigInt::from(sign)), a as usize)
        * Poly::from_coeffs(vec![one.clone(), one.clone()]);
    let den = Poly::monomial(one.clone(), bound as usize) + Poly::constant(one);
    RatFunc::new(num, den, 1)
}

/// Function on the nonnegative integers with values in `Z/p^K`, the input of
/// a fermionic Riemann sum.
pub trait Integrand: Sync {
    fn eval(&self, a: u64) -> PadicInt;

    /// `sum_{a in [start, end)} (-Q)^a f(a)` where `weight = (-Q)^start` and
    /// `neg_q = -Q`.
    fn weighted_sum(&self, start: u64, end: u64, neg_q: PadicInt, weight: PadicInt) -> PadicInt {
        let mut w = weight;
        let mut acc = weight.zero_like();
        for a in start..end {
            acc = acc + w * self.eval(a);
            w = w * neg_q;
        }
        acc
    }
}

/// Integrand given by a closure.
pub struct FnIntegrand<F>(pub F);

impl<F: Fn(u64) -> PadicInt + Sync> Integrand for FnIntegrand<F> {
    fn eval(&self, a: u64) -> PadicInt {
        (self.0)(a)
    }
}

#[derive(Clone, Debug)]
enum Kernel {
    /// `v(a) = (1 - w z^a) / (1 - y)`; the lifted values live at `K + guard`
    /// so `v(a0)` is exact mod `p^K` at any chunk start.
    Q {
        w: PadicInt,
        z: PadicInt,
        y_gap: PadicInt,
        /// `(1 - z)/(1 - y)` at K.
        ratio: PadicInt,
        k: u32,
    },
    /// `q = 1`: `v(a) = v0 + a * inc`.
    Classical { v0: PadicInt, inc: PadicInt },
}

/// `f(xi) = ((1 - q^(shift + step*xi)) / (1 - q^base))^power`, or at `q = 1`
/// its limit `((shift + step*xi) / base)^power`.
#[derive(Clone, Debug)]
pub struct QPowerIntegrand {
    kernel: Kernel,
    power: u32,
}

impl QPowerIntegrand {
    pub fn new(ctx: &PadicContext, base: u64, step: u64, shift: &BigRational, power: u32) -> Result<Self> {
        assert!(base >= 1, "base exponent must be positive");
        let kernel = if ctx.q_is_one() {
            let b = BigRational::from_integer(BigInt::from(base));
            let v0 = ctx.rational(&(shift / &b))?;
            let inc = ctx.rational(&(BigRational::from_integer(BigInt::from(step)) / &b))?;
            Kernel::Classical { v0, inc }
        } else {
            let g = ctx.bracket_valuation(base)?;
            let wctx = ctx.with_precision(ctx.precision() + g)?;
            let w = wctx.q_pow(shift)?;
            let z = wctx.q().pow(step);
            let y_gap = wctx.one() - wctx.q().pow(base);
            let ratio = (wctx.one() - z).div_cancel(&y_gap)?.with_precision(ctx.precision())?;
            // v(a) = v(0) + ratio * (...), so integrality at 0 covers every a
            (wctx.one() - w).div_cancel(&y_gap)?;
            Kernel::Q { w, z, y_gap, ratio, k: ctx.precision() }
        };
        Ok(QPowerIntegrand { kernel, power })
    }

    /// The base value `v(a)` before raising to `power`.
    fn bracket(&self, a: u64) -> PadicInt {
        match &self.kernel {
            Kernel::Q { w, z, y_gap, k, .. } => {
                let top = w.one_like() - *w * z.pow(a);
                top.div_cancel(y_gap).unwrap().with_precision(*k).unwrap()
            }
            Kernel::Classical { v0, inc } => *v0 + *inc * v0.with_residue(a),
        }
    }
}

impl Integrand for QPowerIntegrand {
    fn eval(&self, a: u64) -> PadicInt {
        self.bracket(a).pow(self.power as u64)
    }

    fn weighted_sum(&self, start: u64, end: u64, neg_q: PadicInt, weight: PadicInt) -> PadicInt {
        let mut acc = weight.zero_like();
        if start >= end {
            return acc;
        }
        let mut v = self.bracket(start);
        let mut w = weight;
        let power = self.power as u64;
        match &self.kernel {
            Kernel::Q { w: shift, z, ratio, k, .. } => {
                // v(a+1) = v(a) + ratio * w * z^a
                let zk = z.with_precision(*k).unwrap();
                let mut inc = *ratio * (*shift * z.pow(start)).with_precision(*k).unwrap();
                for _ in start..end {
                    acc = acc + w * v.pow(power);
                    v = v + inc;
                    inc = inc * zk;
                    w = w * neg_q;
                }
            }
            Kernel::Classical { inc, .. } => {
                for _ in start..end {
                    acc = acc + w * v.pow(power);
                    v = v + *inc;
                    w = w * neg_q;
                }
            }
        }
        acc
    }
}

/// Stopping rule and parallelism for [`fermionic_integral`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegralConfig {
    pub target_valuation: u32,
    pub max_level: u32,
    /// Number of index partitions summed independently; 0 means one per
    /// rayon thread.
    pub workers: usize,
}

impl IntegralConfig {
    pub fn for_precision(k: u32) -> Self {
        IntegralConfig { target_valuation: k, max_level: k + 2, workers: 0 }
    }
}

/// Level-`n` Riemann sum `sum_{a < p^n} f(a) mu_q(a + p^n Z_p)`.
pub fn riemann_sum(f: &dyn Integrand, ctx: &PadicContext, n: u32, workers: usize) -> Result<PadicInt> {
    let len = checked_prime_power(ctx.p(), n).ok_or(Error::PrecisionTooLarge { p: ctx.p(), k: n })?;
    let q = ctx.q();
    let neg_q = -q;
    let parts = if workers == 0 { rayon::current_num_threads() } else { workers } as u64;
    let parts = parts.clamp(1, len);
    let chunk = len.div_ceil(parts);
    let partial = |i: u64| {
        let start = i * chunk;
        let end = (start + chunk).min(len);
        if start >= end {
            return ctx.zero();
        }
        f.weighted_sum(start, end, neg_q, neg_q.pow(start))
    };
    let total = if parts == 1 {
        partial(0)
    } else {
        (0..parts).into_par_iter().map(partial).reduce(|| ctx.zero(), |a, b| a + b)
    };
    let den = ctx.one() + q.pow(len);
    Ok(total * (ctx.one() + q) * den.inv()?)
}

/// Raises the level until two consecutive Riemann sums agree to
/// `target_valuation` digits.
pub fn fermionic_integral(f: &dyn Integrand, ctx: &PadicContext, cfg: &IntegralConfig) -> Result<IntegralResult> {
    let target = cfg.target_valuation.min(ctx.precision());
    let max_level = cfg.max_level.max(2);
    let mut prev = riemann_sum(f, ctx, 1, cfg.workers)?;
    let mut history = Vec::new();
    for n in 2..=max_level {
        let cur = riemann_sum(f, ctx, n, cfg.workers)?;
        let v = (cur - prev).valuation();
        history.push(v);
        prev = cur;
        if v >= target {
            return Ok(IntegralResult { value: cur, achieved_valuation: v, levels_used: n, history });
        }
    }
    let achieved = *history.last().unwrap();
    Err(Error::PrecisionNotReached {
        target,
        levels: max_level,
        achieved,
        best: Box::new(IntegralResult { value: prev, achieved_valuation: achieved, levels_used: max_level, history }),
    })
}

/// Like [`fermionic_integral`] but returns the best approximant when the
/// target is missed.
pub fn fermionic_integral_best(f: &dyn Integrand, ctx: &PadicContext, cfg: &IntegralConfig) -> Result<IntegralResult> {
    match fermionic_integral(f, ctx, cfg) {
        Err(Error::PrecisionNotReached { best, .. }) => Ok(*best),
        other => other,
    }
}

/// Sum of the symbolic measure over all residues of level `n`.
pub fn mu_q_symbolic_total(n: u32, p: u64) -> Result<RatFunc> {
    let bound = p.checked_pow(n).ok_or(Error::PrecisionTooLarge { p, k: n })?;
    let mut num = vec![BigRational::zero(); bound as usize];
    for (a, c) in num.iter_mut().enumerate() {
        *c = BigRational::from_integer(BigInt::from(if a % 2 == 0 { 1 } else { -1 }));
    }
    // Common denominator: sum (-q)^a (1+q) / (1+q^(p^n)).
    let one = BigRational::one();
    let num = Poly::from_coeffs(num) * Poly::from_coeffs(vec![one.clone(), one.clone()]);
    let den = Poly::monomial(one.clone(), bound as usize) + Poly::constant(one);
    RatFunc::new(num, den, 1)
}
