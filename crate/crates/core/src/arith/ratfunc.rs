//! Rational functions in `t = q^(1/D)` over the rationals.
//!
//! Values are kept canonical: numerator and denominator coprime, denominator
//! monic, and `D` as small as the exponents allow. Two equal functions
//! therefore have identical representations once aligned to a common `D`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{fmt_poly, Poly};
use super::zpoly;
use crate::error::{Error, Result};

/// Canonical forms carry the minimal root order, so equal functions agree
/// field by field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    root_order: u32,
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (_, za) = a.to_primitive();
    let (_, zb) = b.to_primitive();
    Poly::from_primitive(&BigRational::one(), &zpoly::gcd_primitive(&za, &zb))
}

/// `a / g` where `g` is known to divide `a`.
fn poly_div_exact(a: &Poly, g: &Poly) -> Poly {
    if g.degree() == Some(0) {
        return a.scale(&g.coeff(0).recip());
    }
    let (ca, za) = a.to_primitive();
    let (cg, zg) = g.to_primitive();
    let q = zpoly::exact_div(&za, &zg).expect("gcd must divide its argument");
    Poly::from_primitive(&(ca / cg), &q)
}

impl RatFunc {
    /// Builds `num / den` with `t^root_order = q`, reducing to canonical form.
    pub fn new(num: Poly, den: Poly, root_order: u32) -> Result<Self> {
        assert!(root_order >= 1, "root order must be positive");
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den);
        if g.degree() == Some(0) {
            return Ok(Self::from_coprime(num, den, root_order));
        }
        Ok(Self::from_coprime(poly_div_exact(&num, &g), poly_div_exact(&den, &g), root_order))
    }

    /// Normalizes a pair already known to be coprime.
    fn from_coprime(num: Poly, den: Poly, root_order: u32) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading().unwrap().clone();
        let (mut num, mut den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = lc.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        let mut d = root_order;
        let e = num.exponent_gcd().gcd(&den.exponent_gcd());
        let r = if e == 0 { d as usize } else { e.gcd(&(d as usize)) };
        if r > 1 {
            num = num.compress(r);
            den = den.compress(r);
            d /= r as u32;
        }
        RatFunc { num, den, root_order: d }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one(), root_order: 1 }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(c.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: Poly::constant(c), den: Poly::one(), root_order: 1 }
    }

    pub fn from_poly(num: Poly, root_order: u32) -> Self {
        Self::from_coprime(num, Poly::one(), root_order)
    }

    /// `q^e` for a rational exponent `e` (negative allowed).
    pub fn q_power(e: &BigRational) -> Self {
        let d = e.denom().to_u32().expect("exponent denominator too large");
        let k = e.numer().abs().to_usize().expect("exponent too large");
        let mono = Poly::monomial(BigRational::one(), k);
        if e.is_negative() {
            Self::from_coprime(Poly::one(), mono, d)
        } else {
            Self::from_coprime(mono, Poly::one(), d)
        }
    }

    /// `q^k` for an integer exponent.
    pub fn q_power_int(k: i64) -> Self {
        Self::q_power(&BigRational::from_integer(k.into()))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Re-expresses the function over `t' = q^(1/new_order)`; `new_order`
    /// must be a multiple of the current root order. The result is not
    /// reduced back, so it is only meant for internal alignment and display.
    pub(crate) fn lift(&self, new_order: u32) -> RatFunc {
        assert!(new_order.is_multiple_of(self.root_order), "lift target must be a multiple of root order");
        let m = (new_order / self.root_order) as usize;
        RatFunc { num: self.num.substitute_power(m), den: self.den.substitute_power(m), root_order: new_order }
    }

    fn aligned(a: &RatFunc, b: &RatFunc) -> (RatFunc, RatFunc, u32) {
        let l = a.root_order.lcm(&b.root_order);
        (a.lift(l), b.lift(l), l)
    }

    /// `q -> q^d`, i.e. `t -> t^d` at fixed root order.
    pub fn substitute_power(&self, d: u32) -> RatFunc {
        assert!(d >= 1, "substitution power must be positive");
        // Coprimality survives t -> t^d, so only the normalization step runs.
        Self::from_coprime(
            self.num.substitute_power(d as usize),
            self.den.substitute_power(d as usize),
            self.root_order,
        )
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone(), self.root_order))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone(), root_order: self.root_order }
    }

    /// Exact value at `t = point`.
    pub fn eval_regular(&self, point: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(point.to_string()));
        }
        Ok(self.num.eval(point) / d)
    }

    /// Exact value at `q = 1` (equivalently `t = 1`).
    pub fn eval_at_q_one(&self) -> Result<BigRational> {
        self.eval_regular(&BigRational::one())
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, d) = RatFunc::aligned(self, rhs);
        if a.den == b.den {
            let num = &a.num + &b.num;
            return RatFunc::new(num, a.den, d).unwrap();
        }
        let g = poly_gcd(&a.den, &b.den);
        if g.degree() == Some(0) {
            let num = &(&a.num * &b.den) + &(&b.num * &a.den);
            return RatFunc::from_coprime(num, &a.den * &b.den, d);
        }
        let ad = poly_div_exact(&a.den, &g);
        let bd = poly_div_exact(&b.den, &g);
        let num = &(&a.num * &bd) + &(&b.num * &ad);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g2 = poly_gcd(&num, &g);
        let (num, gq) =
            if g2.degree() == Some(0) { (num, g) } else { (poly_div_exact(&num, &g2), poly_div_exact(&g, &g2)) };
        let den = &(&ad * &bd) * &gq;
        RatFunc::from_coprime(num, den, d)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let (a, b, d) = RatFunc::aligned(self, rhs);
        let g1 = poly_gcd(&a.num, &b.den);
        let g2 = poly_gcd(&b.num, &a.den);
        let an = poly_div_exact(&a.num, &g1);
        let bd = poly_div_exact(&b.den, &g1);
        let bn = poly_div_exact(&b.num, &g2);
        let ad = poly_div_exact(&a.den, &g2);
        RatFunc::from_coprime(&an * &bn, &ad * &bd, d)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone(), root_order: self.root_order }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] to get an error.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.root_order == 1 { "q".to_string() } else { "t".to_string() };
        struct P<'a>(&'a Poly, &'a str);
        impl fmt::Display for P<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_poly(self.0, self.1, f)
            }
        }
        if self.den.degree() == Some(0) {
            write!(f, "{}", P(&self.num, &var))?;
        } else {
            write!(f, "({})/({})", P(&self.num, &var), P(&self.den, &var))?;
        }
        if self.root_order > 1 {
            write!(f, " [t^{} = q]", self.root_order)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON: {"root_order": D, "num": ["p/q", ...], "den": [...]}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    root_order: u32,
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncJson {
            root_order: self.root_order,
            num: self.num.coeffs().iter().map(rational_to_string).collect(),
            den: self.den.coeffs().iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RatFuncJson::deserialize(d)?;
        if raw.root_order == 0 {
            return Err(D::Error::custom("root_order must be positive"));
        }
        let parse = |v: &[String]| -> std::result::Result<Poly, D::Error> {
            v.iter()
                .map(|c| parse_rational(c).map_err(D::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Poly::from_coeffs)
        };
        RatFunc::new(parse(&raw.num)?, parse(&raw.den)?, raw.root_order).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den), 1).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn construction_cancels_common_factors() {
        let f = rf(&[1, 0, -1], &[1, -1]);
        assert_eq!(f, rf(&[1, 1], &[1]));
        assert_eq!(&f + &RatFunc::zero(), rf(&[1, 1], &[1]));
    }

    #[test]
    fn field_inverse() {
        let f = rf(&[1, 2], &[-2, 0, 0, 1]);
        assert_eq!(&f * &f.inv().unwrap(), RatFunc::one());
    }

    #[test]
    fn hand_cross_multiplication() {
        // 1/(1-t) + 1/(1+t) = ((1+t) + (1-t)) / ((1-t)(1+t)) = 2/(1-t^2)
        let s = &rf(&[1], &[1, -1]) + &rf(&[1], &[1, 1]);
        assert_eq!(s, rf(&[2], &[1, 0, -1]));
        // monic denominator: 2/(1-t^2) = -2/(t^2-1)
        assert_eq!(s.den(), &Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(s.num(), &Poly::from_ints(&[-2]));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(rf(&[1], &[1, -1]).substitute_power(2), rf(&[1], &[1, 0, -1]));
        let f = rf(&[1, 1], &[1, 0, 0, -1]);
        assert_eq!(f.substitute_power(1), f);
        let mut num9 = vec![0i64; 10];
        num9[0] = 1;
        num9[9] = -1;
        assert_eq!(f.substitute_power(3), rf(&[1, 0, 0, 1], &num9));
    }

    #[test]
    fn regular_evaluation() {
        assert_eq!(rf(&[1, 0, -1], &[1, -1]).eval_regular(&r(1, 1)).unwrap(), r(2, 1));
        assert_eq!(rf(&[0, -2], &[1, 0, 1]).eval_regular(&r(1, 1)).unwrap(), r(-1, 1));
        assert!(matches!(rf(&[1], &[1, -1]).eval_regular(&r(1, 1)), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RatFunc::new(Poly::one(), Poly::zero(), 1), Err(Error::DivisionByZeroFunction));
        assert_eq!(RatFunc::one().checked_div(&RatFunc::zero()), Err(Error::DivisionByZeroFunction));
    }

    #[test]
    fn root_order_is_minimal() {
        // q^(2/4) = q^(1/2)
        let f = RatFunc::q_power(&r(2, 4));
        assert_eq!(f.root_order(), 2);
        let g = RatFunc::from_poly(Poly::from_ints(&[1, 0, 0, 1]), 3); // 1 + t^3 with t^3 = q
        assert_eq!(g, rf(&[1, 1], &[1]));
        // q^(1/2) * q^(1/2) = q
        assert_eq!(&f * &f, RatFunc::q_power_int(1));
    }

    #[test]
    fn negative_powers() {
        let f = rf(&[1, 1], &[1]);
        assert_eq!(&f.pow(-2).unwrap() * &f.pow(2).unwrap(), RatFunc::one());
        assert_eq!(&RatFunc::q_power_int(-3) * &RatFunc::q_power_int(3), RatFunc::one());
    }

    #[test]
    fn json_shape() {
        let f = &rf(&[1], &[1, -1]) + &rf(&[1], &[1, 1]);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"root_order":1,"num":["-2"],"den":["-1","0","1"]}"#);
        let back: RatFunc = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
        let half: RatFunc = serde_json::from_str(r#"{"root_order":2,"num":["1/2","0","1"],"den":["1"]}"#).unwrap();
        assert_eq!(half.root_order(), 1);
    }
}
