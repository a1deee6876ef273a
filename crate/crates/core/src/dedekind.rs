//! Euler polynomials, classical DC sums `S_m(h,k)`, their q-extension
//! `S~_{m,q}^(alpha)(h,k : q^l)`, the interpolation function
//! `E~_q^(alpha)(s,a,N : q^N)` and p-adic Dedekind-type DC sums.
//!
//! Brackets are `[y]_{Q} = (1 - Q^y)/(1 - Q)`. The fermionic moments
//! `I_j = int [xi]_{Q^alpha}^j dmu_Q(xi)` come from
//! `Q int f(xi+1) dmu_Q + int f dmu_Q = (1+Q) f(0)`, which gives
//! `I_j (1 + Q^(alpha j + 1)) = (1+Q) [j = 0] - Q sum_{i<j} C(j,i) Q^(alpha i) I_i`
//! with only unit divisions. `I_j = G~_{j+1,Q}^(alpha) / (j+1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, Poly};
use crate::error::{Error, Result};
use crate::measure::{fermionic_integral_best, IntegralConfig, IntegralResult, QPowerIntegrand};
use crate::padic::{angle_bracket, teichmuller, unit_pow, BinomialRun, PadicContext, PadicInt};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Classical layer

/// `E_m(x)` from `E_m(x+1) + E_m(x) = 2 x^m`:
/// `E_m(x) = x^m - 1/2 sum_{k<m} C(m,k) E_k(x)`.
pub fn euler_polynomials(m_max: u32) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::with_capacity(m_max as usize + 1);
    let half = BigRational::new(1.into(), 2.into());
    for m in 0..=m_max as u64 {
        let mut acc = Poly::monomial(BigRational::one(), m as usize);
        for (k, ek) in out.iter().enumerate() {
            acc = &acc - &ek.scale(&(binomial(m, k as u64) * &half));
        }
        out.push(acc);
    }
    out
}

pub fn euler_polynomial(m: u32) -> Poly {
    euler_polynomials(m).pop().unwrap()
}

/// `E-bar_m(x) = (-1)^floor(x) E_m({x})`.
pub fn periodic_euler(m: u32, x: &BigRational) -> BigRational {
    periodic_euler_with(&euler_polynomial(m), x)
}

fn periodic_euler_with(em: &Poly, x: &BigRational) -> BigRational {
    let fl = x.floor();
    let frac = x - &fl;
    let v = em.eval(&frac);
    if fl.to_integer().is_odd() {
        -v
    } else {
        v
    }
}

/// Parameters of `S_m(h,k)` and `S~_{m,q}^(alpha)(h,k : q^l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DCSumParams {
    pub h: u64,
    pub k: u64,
    pub m: u32,
    pub alpha: u32,
    pub l: u64,
}

impl DCSumParams {
    pub fn classical(m: u32, h: u64, k: u64) -> Self {
        DCSumParams { h, k, m, alpha: 1, l: k }
    }

    fn check(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::ZeroModulus);
        }
        if self.h.gcd(&self.k) != 1 {
            return Err(Error::NoncoprimeHK { h: self.h, k: self.k });
        }
        if self.alpha == 0 || self.l == 0 {
            return Err(Error::HypothesisViolation("alpha and l must be positive".into()));
        }
        Ok(())
    }
}

/// `S_m(h,k) = sum_{M=1}^{k-1} (-1)^(M-1) (M/k) E-bar_m(hM/k)`.
pub fn dc_sum_classical(params: &DCSumParams) -> Result<BigRational> {
    params.check()?;
    let em = euler_polynomial(params.m);
    let k = params.k as i64;
    let mut s = BigRational::zero();
    for mm in 1..k {
        let t = BigRational::new(mm.into(), k.into())
            * periodic_euler_with(&em, &BigRational::new((params.h as i64 * mm).into(), k.into()));
        if mm % 2 == 1 {
            s += t;
        } else {
            s -= t;
        }
    }
    Ok(s)
}

/// Least nonnegative residue of `value` modulo `modulus`.
pub fn mod_representative(value: i64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(value.rem_euclid(modulus as i64) as u64)
}

/// `(p^-1 a)_N`: the `x` in `[0, N)` with `p x = a (mod N)`.
pub fn mod_representative_p_inverse(p: u64, a: i64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if modulus == 1 {
        return Ok(0);
    }
    let inv = crate::padic::invmod(p % modulus, modulus).ok_or(Error::PNotInvertible(modulus))?;
    let a = mod_representative(a, modulus)?;
    Ok(((inv as u128 * a as u128) % modulus as u128) as u64)
}

// ---------------------------------------------------------------------------
// Fermionic moments and bracket integrals

/// `I_j = int [xi]_{Q^alpha}^j dmu_Q(xi)` for `j <= j_max`, at the context's
/// `Q` (which may be 1).
pub fn fermionic_moments(j_max: u32, alpha: u32, ctx: &PadicContext) -> Result<Vec<PadicInt>> {
    let q = ctx.q();
    let a = alpha as u64;
    let mut out: Vec<PadicInt> = Vec::with_capacity(j_max as usize + 1);
    for j in 0..=j_max as u64 {
        let mut s = if j == 0 { ctx.one() + q } else { ctx.zero() };
        for (i, ii) in out.iter().enumerate() {
            let c = ctx.rational(&binomial(j, i as u64))?;
            s = s - q * c * q.pow(a * i as u64) * *ii;
        }
        out.push(s * (ctx.one() + q.pow(a * j + 1)).inv()?);
    }
    Ok(out)
}

/// `int [c + N xi]_{q^alpha}^m dmu_{q^N}(xi)` by expanding
/// `[c + N xi] = [c] + q^(alpha c) [N] [xi]_{q^(alpha N)}` against the moments.
pub fn bracket_moment(m: u32, c: &BigRational, n: u64, alpha: u32, ctx: &PadicContext) -> Result<PadicInt> {
    let a = alpha as u64;
    let ac = c * rat(a as i64);
    let bc = ctx.q_ratio(&ac, a)?;
    let bn = ctx.q_int(n as i64, a)?;
    let qc = ctx.q_pow(&ac)?;
    let moments = fermionic_moments(m, alpha, &ctx.shifted(n))?;
    let mut s = ctx.zero();
    for (j, ij) in moments.iter().enumerate() {
        let j = j as u64;
        let c = ctx.rational(&binomial(m as u64, j))?;
        s = s + c * bc.pow(m as u64 - j) * (qc * bn).pow(j) * *ij;
    }
    Ok(s)
}

/// The same integral as a fermionic Riemann sum at base `q^N`.
pub fn bracket_integral(
    m: u32,
    c: &BigRational,
    n: u64,
    alpha: u32,
    ctx: &PadicContext,
    cfg: &IntegralConfig,
) -> Result<IntegralResult> {
    let a = alpha as u64;
    let f = QPowerIntegrand::new(ctx, a, a * n, &(c * rat(a as i64)), m)?;
    fermionic_integral_best(&f, &ctx.shifted(n), cfg)
}

// ---------------------------------------------------------------------------
// Interpolation function

/// Exponent argument of `E~`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EtildeS {
    Int(u64),
    Padic(PadicInt),
}

/// `(s, a, N, alpha)` of `E~_q^(alpha)(s, a, N : q^N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtildeQuery {
    pub s: EtildeS,
    pub a: u64,
    pub n: u64,
    pub alpha: u32,
}

fn check_unit_a(a: u64, ctx: &PadicContext) -> Result<()> {
    if a.is_multiple_of(ctx.p()) {
        return Err(Error::NonunitA(a));
    }
    Ok(())
}

/// Integer-`m` form
/// `[a]^m sum_{j<=m} C(m,j) q^(alpha a j) ([N]/[a])^j I_j(q^N)`
/// with brackets at `q^alpha` and `I_j` the fermionic moments at `q^N`.
pub fn etilde_int(m: u32, a: u64, n: u64, alpha: u32, ctx: &PadicContext) -> Result<PadicInt> {
    check_unit_a(a, ctx)?;
    if n == 0 {
        return Err(Error::HypothesisViolation("N must be positive".into()));
    }
    bracket_moment(m, &rat(a as i64), n, alpha, ctx)
}

/// `w^-1(a) <a : q^alpha>^s sum_j C(s,j) q^(alpha a j) ([N]/[a])^j I_j(q^N)`.
///
/// Integer `s` gives a finite sum for any `N`; p-adic `s` needs `p | N` so
/// the ratio has positive valuation, and the series stops once
/// `j * v(ratio) >= K`.
pub fn etilde(query: &EtildeQuery, ctx: &PadicContext) -> Result<PadicInt> {
    let EtildeQuery { s, a, n, alpha } = *query;
    check_unit_a(a, ctx)?;
    if n == 0 {
        return Err(Error::HypothesisViolation("N must be positive".into()));
    }
    let al = alpha as u64;
    let qa = ctx.q().pow(al);
    let a_z = ctx.int(a as i64);
    let pref = teichmuller(&a_z)?.inv()?;
    let br = angle_bracket(&a_z, &qa)?;
    let ratio = ctx.q().pow(al * a) * ctx.q_int(n as i64, al)? * ctx.q_int(a as i64, al)?.inv()?;
    let (s_res, j_max, power) = match s {
        EtildeS::Int(m) => (m as u128, m, br.pow(m)),
        EtildeS::Padic(sp) => {
            if n % ctx.p() != 0 {
                return Err(Error::NNotDivisibleByP(n));
            }
            let v = ratio.valuation();
            if v == 0 {
                return Err(Error::NonconvergentSeries(1));
            }
            let terms = ctx.precision().div_ceil(v) as u64;
            (sp.residue() as u128, terms - 1, unit_pow(&br, &sp)?)
        }
    };
    let moments = fermionic_moments(j_max as u32, alpha, &ctx.shifted(n))?;
    let mut binom = BinomialRun::new(s_res, &ctx.q());
    let mut sum = moments[0];
    let mut rj = ctx.one();
    for ij in &moments[1..] {
        binom.step();
        rj = rj * ratio;
        sum = sum + binom.value() * rj * *ij;
    }
    Ok(pref * power * sum)
}

/// `E~` at a p-adic `s`.
pub fn etilde_padic(s: &PadicInt, a: u64, n: u64, alpha: u32, ctx: &PadicContext) -> Result<PadicInt> {
    etilde(&EtildeQuery { s: EtildeS::Padic(*s), a, n, alpha }, ctx)
}

// ---------------------------------------------------------------------------
// q-extension of the DC sums

fn combine(parts: Vec<(PadicInt, IntegralResult)>, ctx: &PadicContext) -> IntegralResult {
    let mut value = ctx.zero();
    let mut achieved = ctx.precision();
    let mut levels = 1;
    let mut history = Vec::new();
    for (c, r) in parts {
        value = value + c * r.value;
        levels = levels.max(r.levels_used);
        if r.achieved_valuation <= achieved {
            achieved = r.achieved_valuation;
            history = r.history;
        }
    }
    IntegralResult { value, achieved_valuation: achieved, levels_used: levels, history }
}

/// `int [xi + {hM/k}]_{q^(alpha l)}^m dmu_{q^l}(xi)` for `M = 1..k`, or with
/// `absorb` and `l = k` the p-integral `int [(hM)_k + k xi]_{q^alpha}^m dmu_{q^k}`,
/// which is the former times `[k]_{q^alpha}^m`.
fn dc_integrals(
    params: &DCSumParams,
    ctx: &PadicContext,
    cfg: &IntegralConfig,
    absorb: bool,
) -> Result<Vec<IntegralResult>> {
    let DCSumParams { h, k, m, alpha, l } = *params;
    let al = alpha as u64 * l;
    let mctx = ctx.shifted(l);
    (1..k)
        .into_par_iter()
        .map(|mm| {
            let r = mod_representative((h as i64) * (mm as i64), k)?;
            let shift = BigRational::new(BigInt::from(al) * BigInt::from(r), BigInt::from(k));
            let base = if absorb { alpha as u64 } else { al };
            let f = QPowerIntegrand::new(ctx, base, al, &shift, m)?;
            fermionic_integral_best(&f, &mctx, cfg)
        })
        .collect()
}

/// `S~_{m,q}^(alpha)(h,k : q^l)`; each integral is a fermionic Riemann sum
/// at base `q^l`. Requires `[M]_{q^alpha}/[k]_{q^alpha}` to be p-integral,
/// i.e. `p` not dividing `k` in practice.
pub fn q_dc_sum(params: &DCSumParams, ctx: &PadicContext, cfg: &IntegralConfig) -> Result<IntegralResult> {
    params.check()?;
    let a = params.alpha as u64;
    let ints = dc_integrals(params, ctx, cfg, false)?;
    let mut parts = Vec::with_capacity(ints.len());
    for (i, r) in ints.into_iter().enumerate() {
        let mm = i as u64 + 1;
        let mut c = ctx.q_ratio(&rat((a * mm) as i64), a * params.k)?;
        if mm.is_multiple_of(2) {
            c = -c;
        }
        parts.push((c, r));
    }
    if parts.is_empty() {
        return Ok(IntegralResult {
            value: ctx.zero(),
            achieved_valuation: ctx.precision(),
            levels_used: 1,
            history: Vec::new(),
        });
    }
    Ok(combine(parts, ctx))
}

/// `([k]_{q^alpha})^(m+1) S~_{m,q}^(alpha)(h,k : q^l)`; p-integral for every `k`
/// when `l = k`, otherwise needs `p` not dividing `k`.
pub fn q_dc_sum_scaled(params: &DCSumParams, ctx: &PadicContext, cfg: &IntegralConfig) -> Result<IntegralResult> {
    params.check()?;
    let a = params.alpha as u64;
    let absorb = params.l == params.k;
    let bk = if absorb { ctx.one() } else { ctx.q_int(params.k as i64, a)?.pow(params.m as u64) };
    let ints = dc_integrals(params, ctx, cfg, absorb)?;
    let mut parts = Vec::with_capacity(ints.len());
    for (i, r) in ints.into_iter().enumerate() {
        let mm = i as u64 + 1;
        let mut c = ctx.q_int(mm as i64, a)? * bk;
        if mm.is_multiple_of(2) {
            c = -c;
        }
        parts.push((c, r));
    }
    if parts.is_empty() {
        return Ok(IntegralResult {
            value: ctx.zero(),
            achieved_valuation: ctx.precision(),
            levels_used: 1,
            history: Vec::new(),
        });
    }
    Ok(combine(parts, ctx))
}

/// `sum_{M=1}^{k-1} (-1)^(M-1) [M]_{q^alpha} E~(m, (hM)_k, k : q^k)`.
pub fn etilde_dc_sum(m: u32, h: u64, k: u64, alpha: u32, ctx: &PadicContext) -> Result<PadicInt> {
    let a = alpha as u64;
    let mut s = ctx.zero();
    for mm in 1..k {
        let r = mod_representative((h * mm) as i64, k)?;
        let t = ctx.q_int(mm as i64, a)? * etilde_int(m, r, k, alpha, ctx)?;
        s = if mm % 2 == 1 { s + t } else { s - t };
    }
    Ok(s)
}

/// `S~_{p,q}^(alpha)(s : h,k : q^k)` for an integer `s = m` with
/// `m + 1 = 0 (mod p-1)` and `p` not dividing `k`.
pub fn padic_dc_sum(s: &EtildeS, params: &DCSumParams, ctx: &PadicContext) -> Result<PadicInt> {
    params.check()?;
    if params.k.is_multiple_of(ctx.p()) {
        return Err(Error::PDividesK(params.k));
    }
    let m = match *s {
        EtildeS::Int(m) if (m + 1) % (ctx.p() - 1) == 0 => m,
        _ => return Err(Error::UnsupportedPadicS),
    };
    let m: u32 = m.try_into().map_err(|_| Error::UnsupportedPadicS)?;
    etilde_dc_sum(m, params.h, params.k, params.alpha, ctx)
}

/// `[k]^(m+1) S~(h,k : q^k) - [k]^(m+1) [kp]/[k] S~((p^-1 h)_k, k : q^(pk))`.
pub fn theorem1_rhs(params: &DCSumParams, ctx: &PadicContext, cfg: &IntegralConfig) -> Result<IntegralResult> {
    params.check()?;
    let (p, k) = (ctx.p(), params.k);
    let first = q_dc_sum_scaled(&DCSumParams { l: k, ..*params }, ctx, cfg)?;
    let hp = mod_representative_p_inverse(p, params.h as i64, k)?;
    let second_params = DCSumParams { h: hp, l: p * k, ..*params };
    let second = q_dc_sum_scaled(&second_params, ctx, cfg)?;
    let ratio = ctx.q_int(p as i64, params.alpha as u64 * k)?;
    Ok(combine(vec![(ctx.one(), first), (-ratio, second)], ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgenocchi::gbar_padic;
    use num_traits::Signed;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Raw-definition sum with Euler values from
    /// `E_m(x) = sum_k C(m,k) E_k(0) x^(m-k)`, `E_k(0)` from `E_k(1) + E_k(0) = 2 [k = 0]`.
    fn dc_sum_reference(m: u32, h: u64, k: u64) -> BigRational {
        // E_j(0): sum_{i<=j} C(j,i) E_i(0) + E_j(0) = 2 [j = 0]
        let mut e0: Vec<BigRational> = Vec::new();
        for j in 0..=m as u64 {
            let mut s = if j == 0 { rat(2) } else { rat(0) };
            for (i, ei) in e0.iter().enumerate() {
                s -= binomial(j, i as u64) * ei;
            }
            e0.push(s / rat(2));
        }
        let eval = |x: &BigRational| -> BigRational {
            let mut acc = BigRational::zero();
            for (i, ei) in e0.iter().enumerate() {
                let mut pw = BigRational::one();
                for _ in 0..(m as usize - i) {
                    pw *= x;
                }
                acc += binomial(m as u64, i as u64) * ei * pw;
            }
            acc
        };
        let mut s = BigRational::zero();
        for mm in 1..k as i64 {
            let y = BigRational::new((h as i64 * mm).into(), (k as i64).into());
            let n = y.floor();
            let sign = if n.to_integer().abs().is_odd() { -1 } else { 1 };
            let v = eval(&(&y - &n)) * rat(sign) * BigRational::new(mm.into(), (k as i64).into());
            s += if mm % 2 == 1 { v } else { -v };
        }
        s
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_polynomial(0), Poly::from_ints(&[1]));
        assert_eq!(euler_polynomial(1), Poly::from_coeffs(vec![r(-1, 2), r(1, 1)]));
        assert_eq!(euler_polynomial(2), Poly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn periodic_examples() {
        assert_eq!(periodic_euler(1, &r(1, 3)), r(-1, 6));
        assert_eq!(periodic_euler(1, &r(4, 3)), r(1, 6));
        assert_eq!(periodic_euler(3, &r(0, 1)), euler_polynomial(3).eval(&r(0, 1)));
        assert_eq!(periodic_euler(2, &r(-1, 3)), -euler_polynomial(2).eval(&r(2, 3)));
    }

    #[test]
    fn dc_examples() {
        assert_eq!(dc_sum_classical(&DCSumParams::classical(1, 1, 1)).unwrap(), r(0, 1));
        assert_eq!(dc_sum_classical(&DCSumParams::classical(1, 1, 2)).unwrap(), r(0, 1));
        assert_eq!(dc_sum_classical(&DCSumParams::classical(1, 1, 3)).unwrap(), r(-1, 6));
        assert_eq!(dc_sum_classical(&DCSumParams::classical(2, 1, 3)).unwrap(), r(2, 27));
        assert_eq!(dc_sum_classical(&DCSumParams::classical(1, 2, 4)), Err(Error::NoncoprimeHK { h: 2, k: 4 }));
    }

    #[test]
    fn representatives() {
        assert_eq!(mod_representative(12, 5).unwrap(), 2);
        assert_eq!(mod_representative(0, 7).unwrap(), 0);
        assert_eq!(mod_representative(-1, 7).unwrap(), 6);
        assert_eq!(mod_representative_p_inverse(5, 2, 3).unwrap(), 1);
        assert_eq!(mod_representative_p_inverse(5, 2, 10), Err(Error::PNotInvertible(10)));
        assert_eq!(mod_representative(3, 0), Err(Error::ZeroModulus));
    }

    #[test]
    fn moments_are_scaled_genocchi_numbers() {
        let ctx = PadicContext::parse_q(5, 6, "1+p").unwrap();
        for alpha in [1, 2] {
            let mo = fermionic_moments(8, alpha, &ctx).unwrap();
            for j in 0..=8u32 {
                let g = gbar_padic(j + 1, alpha, &r(0, 1), &ctx).unwrap();
                assert_eq!(mo[j as usize] * ctx.int(j as i64 + 1), g, "j={j}");
            }
        }
        // q = 1: I_j = E_j(0)
        let one = PadicContext::from_parts(5, 6, 1).unwrap();
        let mo = fermionic_moments(6, 1, &one).unwrap();
        for j in 0..=6 {
            assert_eq!(mo[j as usize], one.rational(&euler_polynomial(j).eval(&r(0, 1))).unwrap());
        }
    }

    #[test]
    fn etilde_int_examples() {
        let ctx = PadicContext::parse_q(5, 5, "1+p").unwrap();
        assert_eq!(etilde_int(0, 2, 5, 1, &ctx).unwrap(), ctx.one());
        // m = 1, a = 1: 1 + q [N]_q I_1(q^N)
        let qn = ctx.shifted(5);
        let i1 = fermionic_moments(1, 1, &qn).unwrap()[1];
        let expected = ctx.one() + ctx.q() * ctx.q_int(5, 1).unwrap() * i1;
        assert_eq!(etilde_int(1, 1, 5, 1, &ctx).unwrap(), expected);
        assert_eq!(etilde_int(3, 5, 5, 1, &ctx), Err(Error::NonunitA(5)));
        let integral = bracket_integral(3, &r(2, 1), 5, 1, &ctx, &IntegralConfig::for_precision(5)).unwrap();
        assert!((integral.value - etilde_int(3, 2, 5, 1, &ctx).unwrap()).valuation() >= 4);
    }

    #[test]
    fn etilde_series_examples() {
        let ctx = PadicContext::parse_q(5, 6, "1+p").unwrap();
        assert!(
            etilde_padic(&ctx.int(0), 2, 5, 1, &ctx).unwrap()
                == ctx.one() * teichmuller(&ctx.int(2)).unwrap().inv().unwrap()
        );
        let v = etilde_padic(&ctx.int(3), 2, 5, 1, &ctx).unwrap();
        assert_eq!(v, etilde_int(3, 2, 5, 1, &ctx).unwrap());
        assert_eq!(etilde_padic(&ctx.int(3), 2, 3, 1, &ctx), Err(Error::NNotDivisibleByP(3)));
    }

    #[test]
    fn q_dc_sum_m0_is_closed_sum() {
        let ctx = PadicContext::parse_q(5, 6, "1+p").unwrap();
        let params = DCSumParams { h: 1, k: 3, m: 0, alpha: 1, l: 3 };
        let got = q_dc_sum(&params, &ctx, &IntegralConfig::for_precision(6)).unwrap();
        let expected = ctx.q_ratio(&r(1, 1), 3).unwrap() - ctx.q_ratio(&r(2, 1), 3).unwrap();
        assert_eq!(got.value, expected);
        let empty = DCSumParams { h: 1, k: 1, m: 3, alpha: 1, l: 1 };
        assert!(q_dc_sum(&empty, &ctx, &IntegralConfig::for_precision(6)).unwrap().value.is_zero());
    }

    #[test]
    fn padic_dc_sum_gates() {
        let ctx = PadicContext::parse_q(5, 6, "1+p").unwrap();
        let p = DCSumParams { h: 1, k: 5, m: 3, alpha: 1, l: 5 };
        assert_eq!(padic_dc_sum(&EtildeS::Int(3), &p, &ctx), Err(Error::PDividesK(5)));
        let p = DCSumParams { h: 1, k: 3, m: 3, alpha: 1, l: 3 };
        assert_eq!(padic_dc_sum(&EtildeS::Int(2), &p, &ctx), Err(Error::UnsupportedPadicS));
        let p1 = DCSumParams { h: 1, k: 1, m: 3, alpha: 1, l: 1 };
        assert!(padic_dc_sum(&EtildeS::Int(3), &p1, &ctx).unwrap().is_zero());
    }

    #[test]
    fn classical_matches_reference() {
        for k in 1..=12u64 {
            for h in 1..=k {
                if h.gcd(&k) != 1 {
                    continue;
                }
                for m in 0..=4 {
                    assert_eq!(dc_sum_classical(&DCSumParams::classical(m, h, k)).unwrap(), dc_sum_reference(m, h, k));
                }
            }
        }
    }
}
