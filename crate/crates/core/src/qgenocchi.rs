//! Weighted q-Genocchi numbers and polynomials `G~_{n,q}^(alpha)(x)`:
//!
//! ```text
//! G~_n(x) = n (1+q) / (1-q^a)^(n-1) * sum_{l<n} C(n-1,l) (-1)^l q^(a l x) / (1 + q^(a l + 1))
//! ```
//!
//! with `G~_0 = 0`, its integral representation
//! `n * int [x + xi]_{q^a}^(n-1) dmu_q(xi)`, the addition formula and the
//! distribution relation, together with the classical Genocchi numbers they
//! specialise to at `q = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{binomial, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::measure::{fermionic_integral, IntegralConfig, IntegralResult, QPowerIntegrand};
use crate::padic::{PadicContext, PadicInt};
use crate::regime::{Regime, Value};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Index, weight and (optional) argument of `G~_{n,q}^(alpha)(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGenocchiParams {
    pub alpha: u32,
    pub n: u32,
    pub x: Option<BigRational>,
}

impl QGenocchiParams {
    pub fn number(n: u32, alpha: u32) -> Self {
        QGenocchiParams { alpha, n, x: None }
    }

    pub fn poly(n: u32, alpha: u32, x: BigRational) -> Self {
        QGenocchiParams { alpha, n, x: Some(x) }
    }

    fn check(&self) -> Result<()> {
        if self.alpha == 0 {
            return Err(Error::HypothesisViolation("alpha must be positive".into()));
        }
        Ok(())
    }

    fn x_or_zero(&self) -> BigRational {
        self.x.clone().unwrap_or_else(BigRational::zero)
    }
}

// ---------------------------------------------------------------------------
// Classical layer

/// Genocchi numbers from `(e^t + 1) G(t) = 2t`:
/// `2 G_n + sum_{k<n} C(n,k) G_k = 2 [n = 1]`.
pub fn classical_genocchi_table(n_max: u32) -> Vec<BigRational> {
    let mut g: Vec<BigRational> = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max as u64 {
        let mut s = BigRational::zero();
        for (k, gk) in g.iter().enumerate() {
            s += binomial(n, k as u64) * gk;
        }
        let delta = if n == 1 { rat(2) } else { rat(0) };
        g.push((delta - s) / rat(2));
    }
    g
}

pub fn classical_genocchi(n: u32) -> BigRational {
    classical_genocchi_table(n).pop().unwrap()
}

/// `G_n(x) = sum_k C(n,k) G_k x^(n-k)` from `2t e^(xt) / (e^t + 1)`.
pub fn classical_genocchi_poly(n: u32) -> Poly {
    let g = classical_genocchi_table(n);
    let coeffs = (0..=n as u64).map(|j| binomial(n as u64, n as u64 - j) * &g[(n as u64 - j) as usize]).collect();
    Poly::from_coeffs(coeffs)
}

// ---------------------------------------------------------------------------
// Symbolic regime

fn q_pow(e: &BigRational) -> RatFunc {
    RatFunc::q_power(e)
}

fn one_plus_q_pow(e: i64) -> RatFunc {
    RatFunc::one() + RatFunc::q_power_int(e)
}

/// `(1 - q^(y b)) / (1 - q^b)`.
pub fn q_bracket_symbolic(y: &BigRational, b: u32) -> RatFunc {
    let top = RatFunc::one() - q_pow(&(y * rat(b as i64)));
    let bottom = RatFunc::one() - RatFunc::q_power_int(b as i64);
    top.checked_div(&bottom).expect("1 - q^b is nonzero")
}

/// `G~_{n,q}^(alpha)(x)` as a rational function of `q`.
pub fn gbar_symbolic(n: u32, alpha: u32, x: &BigRational) -> RatFunc {
    if n == 0 {
        return RatFunc::zero();
    }
    let a = alpha as i64;
    let sum: RatFunc = (0..n as i64)
        .map(|l| {
            let mut c = binomial(n as u64 - 1, l as u64);
            if l % 2 == 1 {
                c = -c;
            }
            let top = q_pow(&(x * rat(a * l))).scale(&c);
            top.checked_div(&one_plus_q_pow(a * l + 1)).unwrap()
        })
        .sum();
    let pref = one_plus_q_pow(1).scale(&rat(n as i64))
        * (RatFunc::one() - RatFunc::q_power_int(a)).pow(-(n as i64 - 1)).unwrap();
    pref * sum
}

// ---------------------------------------------------------------------------
// p-adic regime

/// `G~_{n,Q}^(alpha)(x)` at the context's `Q`, with
/// `(n-1) v(1 - Q^alpha)` guard digits for the final cancellation.
pub fn gbar_padic(n: u32, alpha: u32, x: &BigRational, ctx: &PadicContext) -> Result<PadicInt> {
    if n == 0 {
        return Ok(ctx.zero());
    }
    let a = alpha as u64;
    let g = ctx.bracket_valuation(a)?;
    let w = ctx.with_precision(ctx.precision() + (n - 1) * g)?;
    let q = w.q();
    let mut sum = w.zero();
    for l in 0..n as u64 {
        let c = w.rational(&binomial(n as u64 - 1, l))?;
        let term = c * w.q_pow(&(x * rat((a * l) as i64)))? * (w.one() + q.pow(a * l + 1)).inv()?;
        sum = if l % 2 == 0 { sum + term } else { sum - term };
    }
    let top = w.int(n as i64) * (w.one() + q) * sum;
    let bottom = (w.one() - q.pow(a)).pow(n as u64 - 1);
    top.div_cancel(&bottom)?.with_precision(ctx.precision())
}

/// `(1 - Q^(alpha y)) / (1 - Q^alpha)` to full precision.
fn bracket_padic(y: &BigRational, alpha: u32, ctx: &PadicContext) -> Result<PadicInt> {
    ctx.q_ratio(&(y * rat(alpha as i64)), alpha as u64)
}

// ---------------------------------------------------------------------------
// Regime-generic API

/// `G~_{n,q}^(alpha)`.
pub fn qgenocchi_number(params: &QGenocchiParams, regime: Regime) -> Result<Value> {
    qgenocchi_poly(&QGenocchiParams { x: None, ..params.clone() }, regime)
}

/// `G~_{n,q}^(alpha)(x)`; a missing `x` means `x = 0`.
pub fn qgenocchi_poly(params: &QGenocchiParams, regime: Regime) -> Result<Value> {
    qgenocchi_poly_at_base(params, 1, regime)
}

/// `G~_{n,q^d}^(alpha)(x)`: symbolically by substituting `q -> q^d`, p-adically
/// in the context shifted to `q^d`.
pub fn qgenocchi_poly_at_base(params: &QGenocchiParams, d: u32, regime: Regime) -> Result<Value> {
    params.check()?;
    let x = params.x_or_zero();
    match regime {
        Regime::Symbolic => Ok(Value::Symbolic(gbar_symbolic(params.n, params.alpha, &x).substitute_power(d))),
        Regime::Padic(ctx) => {
            let c = ctx.shifted(d as u64);
            Ok(Value::Padic(gbar_padic(params.n, params.alpha, &x, &c)?))
        }
    }
}

/// Terms `l = 0..=n` of the addition formula
/// `G~_n(x) = sum_l C(n,l) q^(alpha (l-1) x) G~_l [x]_{q^alpha}^(n-l)`.
pub fn qgenocchi_addition_terms(params: &QGenocchiParams, regime: Regime) -> Result<Vec<Value>> {
    params.check()?;
    let (n, alpha) = (params.n, params.alpha);
    let x = params.x_or_zero();
    let a = alpha as i64;
    let mut out = Vec::with_capacity(n as usize + 1);
    match regime {
        Regime::Symbolic => {
            let br = q_bracket_symbolic(&x, alpha);
            for l in 0..=n {
                let gl = gbar_symbolic(l, alpha, &BigRational::zero());
                if gl.is_zero() {
                    out.push(Value::Symbolic(RatFunc::zero()));
                    continue;
                }
                let t = q_pow(&(&x * rat(a * (l as i64 - 1)))).scale(&binomial(n as u64, l as u64))
                    * gl
                    * br.pow((n - l) as i64).unwrap();
                out.push(Value::Symbolic(t));
            }
        }
        Regime::Padic(ctx) => {
            let br = bracket_padic(&x, alpha, ctx)?;
            for l in 0..=n {
                let gl = gbar_padic(l, alpha, &BigRational::zero(), ctx)?;
                let c = ctx.rational(&binomial(n as u64, l as u64))?;
                let qe = ctx.q_pow(&(&x * rat(a * (l as i64 - 1))))?;
                out.push(Value::Padic(c * qe * gl * br.pow((n - l) as u64)));
            }
        }
    }
    Ok(out)
}

pub fn qgenocchi_addition_rhs(params: &QGenocchiParams, regime: Regime) -> Result<Value> {
    Value::sum(&qgenocchi_addition_terms(params, regime)?)
}

/// Terms `a = 0..d` of the distribution relation
/// `G~_n(dx) = (1+q)/(1+q^d) [d]_{q^alpha}^(n-1) sum_a (-q)^a G~_{n,q^d}(x + a/d)`.
pub fn qgenocchi_distribution_terms(params: &QGenocchiParams, d: u32, regime: Regime) -> Result<Vec<Value>> {
    params.check()?;
    if d.is_multiple_of(2) {
        return Err(Error::EvenD(d as u64));
    }
    let (n, alpha) = (params.n, params.alpha);
    let x = params.x_or_zero();
    let shifted = |a: u32| QGenocchiParams::poly(n, alpha, &x + BigRational::new(a.into(), d.into()));
    let mut out = Vec::with_capacity(d as usize);
    match regime {
        Regime::Symbolic => {
            let pref = one_plus_q_pow(1).checked_div(&one_plus_q_pow(d as i64)).unwrap()
                * q_bracket_symbolic(&rat(d as i64), alpha).pow(n as i64 - 1)?;
            for a in 0..d {
                let g = match qgenocchi_poly_at_base(&shifted(a), d, Regime::Symbolic)? {
                    Value::Symbolic(g) => g,
                    Value::Padic(_) => unreachable!(),
                };
                let w = RatFunc::q_power_int(a as i64).scale(&rat(if a % 2 == 0 { 1 } else { -1 }));
                out.push(Value::Symbolic(&pref * &(w * g)));
            }
        }
        Regime::Padic(ctx) => {
            let q = ctx.q();
            if n == 0 {
                // Every G~_0 vanishes; the reciprocal prefactor multiplies zero.
                return Ok((0..d).map(|_| Value::Padic(ctx.zero())).collect());
            }
            let pref = (ctx.one() + q)
                * (ctx.one() + q.pow(d as u64)).inv()?
                * ctx.q_int(d as i64, alpha as u64)?.pow(n as u64 - 1);
            for a in 0..d {
                let g = match qgenocchi_poly_at_base(&shifted(a), d, regime)? {
                    Value::Padic(g) => g,
                    Value::Symbolic(_) => unreachable!(),
                };
                out.push(Value::Padic(pref * (-q).pow(a as u64) * g));
            }
        }
    }
    Ok(out)
}

pub fn qgenocchi_distribution_rhs(params: &QGenocchiParams, d: u32, regime: Regime) -> Result<Value> {
    Value::sum(&qgenocchi_distribution_terms(params, d, regime)?)
}

/// `n * int [x + xi]_{q^alpha}^(n-1) dmu_q(xi)` as a fermionic Riemann sum.
pub fn qgenocchi_integral(
    params: &QGenocchiParams,
    ctx: &PadicContext,
    cfg: &IntegralConfig,
) -> Result<IntegralResult> {
    params.check()?;
    let n = params.n;
    if n == 0 {
        return Ok(IntegralResult {
            value: ctx.zero(),
            achieved_valuation: ctx.precision(),
            levels_used: 1,
            history: Vec::new(),
        });
    }
    let a = params.alpha as u64;
    let shift = params.x_or_zero() * rat(a as i64);
    let f = QPowerIntegrand::new(ctx, a, a, &shift, n - 1)?;
    let mut r = fermionic_integral(&f, ctx, cfg)?;
    r.value = r.value * ctx.int(n as i64);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regime::eval_ratfunc;
    use num_traits::One;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// `2t / (e^t + 1)` by truncated power-series division.
    fn series_genocchi(n_max: usize) -> Vec<BigRational> {
        let len = n_max + 2;
        let mut fact = vec![BigRational::one(); len];
        for i in 1..len {
            fact[i] = &fact[i - 1] * rat(i as i64);
        }
        // e^t + 1
        let den: Vec<BigRational> =
            (0..len).map(|i| if i == 0 { rat(2) } else { BigRational::one() / &fact[i] }).collect();
        let mut num = vec![BigRational::zero(); len];
        num[1] = rat(2);
        let mut quo = vec![BigRational::zero(); len];
        for i in 0..len {
            let mut s = num[i].clone();
            for j in 0..i {
                s -= &quo[j] * &den[i - j];
            }
            quo[i] = s / &den[0];
        }
        (0..=n_max).map(|i| &quo[i] * &fact[i]).collect()
    }

    #[test]
    fn classical_numbers_match_series() {
        let s = series_genocchi(14);
        assert_eq!(classical_genocchi_table(14), s);
        assert_eq!(s[0], rat(0));
        assert_eq!(s[1], rat(1));
        assert_eq!(s[2], rat(-1));
        assert_eq!(s[4], rat(1));
        assert_eq!(s[6], rat(-3));
        for n in (3..=13).step_by(2) {
            assert!(s[n].is_zero());
        }
    }

    #[test]
    fn classical_poly_examples() {
        // G_2(x) = 2x - 1
        assert_eq!(classical_genocchi_poly(2), Poly::from_ints(&[-1, 2]));
    }

    #[test]
    fn number_examples() {
        assert!(gbar_symbolic(0, 1, &rat(0)).is_zero());
        assert_eq!(gbar_symbolic(1, 3, &rat(0)), RatFunc::one());
        // -2q / (1 + q^2)
        let g2 = RatFunc::new(Poly::from_ints(&[0, -2]), Poly::from_ints(&[1, 0, 1]), 1).unwrap();
        assert_eq!(gbar_symbolic(2, 1, &rat(0)), g2);
        assert_eq!(g2.eval_at_q_one().unwrap(), rat(-1));
    }

    #[test]
    fn poly_examples() {
        let g = gbar_symbolic(2, 1, &rat(1));
        assert_eq!(g.eval_at_q_one().unwrap(), rat(1));
        let h = gbar_symbolic(2, 1, &r(1, 2));
        assert_eq!(h.root_order(), 2);
        assert_eq!(h.eval_at_q_one().unwrap(), rat(0));
    }

    #[test]
    fn addition_examples() {
        let p0 = QGenocchiParams::poly(0, 1, r(1, 2));
        assert!(qgenocchi_addition_rhs(&p0, Regime::Symbolic).unwrap().is_zero());
        let p1 = QGenocchiParams::poly(1, 2, r(5, 3));
        assert_eq!(qgenocchi_addition_rhs(&p1, Regime::Symbolic).unwrap(), Value::Symbolic(RatFunc::one()));
        let p3 = QGenocchiParams::poly(3, 2, r(1, 3));
        assert_eq!(
            qgenocchi_addition_rhs(&p3, Regime::Symbolic).unwrap(),
            qgenocchi_poly(&p3, Regime::Symbolic).unwrap()
        );
    }

    #[test]
    fn addition_with_q_power_alpha_l_x_is_off_by_q_alpha_x() {
        // Weighting term l by q^(alpha l x) instead of q^(alpha (l-1) x)
        // yields q^(alpha x) G~_n(x).
        for (n, alpha, x) in [(3u32, 2u32, r(1, 3)), (4, 1, r(1, 2)), (2, 1, rat(1))] {
            let br = q_bracket_symbolic(&x, alpha);
            let other: RatFunc = (0..=n)
                .map(|l| {
                    q_pow(&(&x * rat((alpha * l) as i64))).scale(&binomial(n as u64, l as u64))
                        * gbar_symbolic(l, alpha, &rat(0))
                        * br.pow((n - l) as i64).unwrap()
                })
                .sum();
            let g = gbar_symbolic(n, alpha, &x);
            assert_ne!(other, g);
            assert_eq!(other, q_pow(&(&x * rat(alpha as i64))) * g);
        }
    }

    #[test]
    fn distribution_examples() {
        let p = QGenocchiParams::poly(3, 2, r(1, 3));
        assert_eq!(
            qgenocchi_distribution_rhs(&p, 1, Regime::Symbolic).unwrap(),
            qgenocchi_poly(&p, Regime::Symbolic).unwrap()
        );
        let p1 = QGenocchiParams::poly(1, 1, r(2, 7));
        assert_eq!(qgenocchi_distribution_rhs(&p1, 3, Regime::Symbolic).unwrap(), Value::Symbolic(RatFunc::one()));
        let p4 = QGenocchiParams::poly(4, 1, r(1, 2));
        let lhs = qgenocchi_poly(&QGenocchiParams::poly(4, 1, r(3, 2)), Regime::Symbolic).unwrap();
        assert_eq!(qgenocchi_distribution_rhs(&p4, 3, Regime::Symbolic).unwrap(), lhs);
        assert_eq!(qgenocchi_distribution_rhs(&p4, 2, Regime::Symbolic), Err(Error::EvenD(2)));
    }

    #[test]
    fn regimes_agree() {
        let ctx = PadicContext::parse_q(5, 6, "1+p").unwrap();
        for n in 0..=8 {
            for alpha in [1, 2] {
                for x in [rat(0), r(1, 2), r(2, 3)] {
                    let sym = gbar_symbolic(n, alpha, &x);
                    let pad = gbar_padic(n, alpha, &x, &ctx).unwrap();
                    assert_eq!(eval_ratfunc(&sym, &ctx).unwrap(), pad, "n={n} alpha={alpha} x={x}");
                }
            }
        }
    }

    #[test]
    fn padic_errors() {
        let ctx = PadicContext::from_parts(5, 4, 1).unwrap();
        assert_eq!(gbar_padic(2, 1, &rat(0), &ctx), Err(Error::DegenerateQ));
        let ctx = PadicContext::from_parts(5, 4, 6).unwrap();
        assert!(matches!(gbar_padic(2, 1, &r(1, 5), &ctx), Err(Error::NotPIntegral(_))));
    }

    #[test]
    fn integral_matches_closed_form() {
        let ctx = PadicContext::parse_q(3, 5, "1+p").unwrap();
        let cfg = IntegralConfig::for_precision(5);
        let p = QGenocchiParams::poly(3, 1, r(1, 2));
        let res = qgenocchi_integral(&p, &ctx, &cfg);
        let value = match res {
            Ok(r) => r.value,
            Err(Error::PrecisionNotReached { best, .. }) => best.value,
            Err(e) => panic!("{e}"),
        };
        let closed = gbar_padic(3, 1, &r(1, 2), &ctx).unwrap();
        assert!((value - closed).valuation() >= 3);
    }
}
