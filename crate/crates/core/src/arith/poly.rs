use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::{self, ZPoly};

/// Univariate polynomial with exact rational coefficients, ascending degree.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^deg`
    pub fn monomial(c: BigRational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `f(t) -> f(t^d)`.
    pub fn substitute_power(&self, d: usize) -> Poly {
        assert!(d >= 1, "substitution power must be positive");
        if d == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        Poly { coeffs }
    }

    /// Gcd of the exponents carrying nonzero coefficients (0 for constants).
    pub fn exponent_gcd(&self) -> usize {
        let mut g = 0usize;
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                g = g.gcd(&i);
                if g == 1 {
                    break;
                }
            }
        }
        g
    }

    /// Inverse of `substitute_power`: requires every exponent divisible by `g`.
    pub(crate) fn compress(&self, g: usize) -> Poly {
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, c)| i % g == 0 || c.is_zero()));
        Poly { coeffs: self.coeffs.iter().step_by(g).cloned().collect() }
    }

    /// Splits `self = content * prim` with `prim` a primitive integer polynomial
    /// with positive leading coefficient.
    pub(crate) fn to_primitive(&self) -> (BigRational, ZPoly) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: ZPoly = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let mut g = zpoly::content(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, l), prim)
    }

    pub(crate) fn from_primitive(content: &BigRational, prim: &[BigInt]) -> Poly {
        if content.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(prim.iter().map(|c| BigRational::from_integer(c.clone()) * content).collect())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Derivative in `t`.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (ca, za) = self.to_primitive();
        let (cb, zb) = rhs.to_primitive();
        Poly::from_primitive(&(ca * cb), &zpoly::mul(&za, &zb))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, "t", f)
    }
}

pub(crate) fn fmt_poly(p: &Poly, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let show_coeff = i == 0 || !mag.is_one();
        if show_coeff {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "{}{var}", if show_coeff { "*" } else { "" })?,
            _ => write!(f, "{}{var}^{i}", if show_coeff { "*" } else { "" })?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(Poly::from_ints(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(Poly::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn rational_multiplication() {
        let a = Poly::from_coeffs(vec![BigRational::new(1.into(), 2.into()), BigRational::one()]);
        let b = Poly::from_ints(&[-1, 2]);
        // (1/2 + t)(-1 + 2t) = -1/2 + 0 t + 2 t^2
        let p = &a * &b;
        assert_eq!(
            p,
            Poly::from_coeffs(vec![
                BigRational::new((-1).into(), 2.into()),
                BigRational::zero(),
                BigRational::from_integer(2.into()),
            ])
        );
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[1, -1, 0, 3]).to_string(), "1 - t + 3*t^3");
    }

    #[test]
    fn primitive_split_roundtrip() {
        let p = Poly::from_coeffs(vec![BigRational::new(3.into(), 4.into()), BigRational::new((-9).into(), 2.into())]);
        let (c, z) = p.to_primitive();
        assert_eq!(Poly::from_primitive(&c, &z), p);
        assert!(z.last().unwrap().is_positive());
    }
}
