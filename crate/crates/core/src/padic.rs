//! Fixed-precision p-adic integers `Z/p^K`, the Teichmüller character,
//! principal-unit powers and the `<x : q>` projection.
//!
//! A [`PadicInt`] stores its residue in `[0, p^K)`. Every residue is also read
//! as an exact integer, which is how values move to a higher working
//! precision ([`PadicInt::with_precision`]): the integer is kept, not
//! re-approximated. Operations that divide by a power of `p`
//! ([`PadicInt::div_cancel`]) lose that many top digits; callers that need
//! full precision compute at `K + guard` and reduce.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::zpoly::is_prime;
use crate::error::{Error, Result};

/// Largest supported `p^K`; products are formed in `u128`.
pub const MAX_MODULUS: u64 = 1 << 62;

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        (a * b) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

#[inline]
pub(crate) fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub(crate) fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// `p^k`, or `None` if it exceeds [`MAX_MODULUS`].
pub fn checked_prime_power(p: u64, k: u32) -> Option<u64> {
    let mut m = 1u64;
    for _ in 0..k {
        m = m.checked_mul(p)?;
        if m > MAX_MODULUS {
            return None;
        }
    }
    Some(m)
}

/// Largest `K` with `p^K <= MAX_MODULUS`.
pub fn max_precision(p: u64) -> u32 {
    let mut k = 0;
    while checked_prime_power(p, k + 1).is_some() {
        k += 1;
    }
    k
}

/// v_p(n) for a nonzero integer.
pub(crate) fn int_valuation(mut n: u128, p: u64) -> u32 {
    debug_assert!(n != 0);
    let p = p as u128;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Element of `Z/p^K` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    k: u32,
    modulus: u64,
    residue: u64,
}

impl PadicInt {
    pub fn new(p: u64, k: u32, residue: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroPrecision);
        }
        let modulus = checked_prime_power(p, k).ok_or(Error::PrecisionTooLarge { p, k })?;
        Ok(PadicInt { p, k, modulus, residue: residue % modulus })
    }

    pub fn from_i64(p: u64, k: u32, v: i64) -> Result<Self> {
        let z = Self::new(p, k, 0)?;
        Ok(z.with_residue(v.rem_euclid(z.modulus as i64) as u64))
    }

    pub fn from_bigint(p: u64, k: u32, v: &BigInt) -> Result<Self> {
        let z = Self::new(p, k, 0)?;
        let r = v.mod_floor(&BigInt::from(z.modulus)).to_u64().unwrap();
        Ok(z.with_residue(r))
    }

    /// Image of a p-integral rational.
    pub fn from_rational(p: u64, k: u32, r: &BigRational) -> Result<Self> {
        let z = Self::new(p, k, 0)?;
        z.rational_like(r)
    }

    /// Same `(p, K)`, different residue.
    #[inline]
    pub fn with_residue(&self, residue: u64) -> Self {
        PadicInt { residue: residue % self.modulus, ..*self }
    }

    pub fn int_like(&self, v: i64) -> Self {
        self.with_residue(v.rem_euclid(self.modulus as i64) as u64)
    }

    pub fn zero_like(&self) -> Self {
        self.with_residue(0)
    }

    pub fn one_like(&self) -> Self {
        self.with_residue(1)
    }

    pub fn rational_like(&self, r: &BigRational) -> Result<Self> {
        let m = BigInt::from(self.modulus);
        let d = r.denom().mod_floor(&m).to_u64().unwrap();
        let dinv = invmod(d, self.modulus).ok_or_else(|| Error::NotPIntegral(r.to_string()))?;
        let n = r.numer().mod_floor(&m).to_u64().unwrap();
        Ok(self.with_residue(mulmod(n, dinv, self.modulus)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// `min(v_p(residue), K)`; `K` means indistinguishable from zero.
    pub fn valuation(&self) -> u32 {
        if self.residue == 0 {
            self.k
        } else {
            int_valuation(self.residue as u128, self.p)
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.residue.is_multiple_of(self.p)
    }

    fn same_ring(&self, o: &PadicInt) -> Result<()> {
        if self.p != o.p || self.k != o.k {
            return Err(Error::PrecisionMismatch(self.p, self.k, o.p, o.k));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &PadicInt) -> Result<PadicInt> {
        self.same_ring(o)?;
        Ok(self.with_residue(addmod(self.residue, o.residue, self.modulus)))
    }

    pub fn checked_sub(&self, o: &PadicInt) -> Result<PadicInt> {
        self.same_ring(o)?;
        Ok(self.with_residue(submod(self.residue, o.residue, self.modulus)))
    }

    pub fn checked_mul(&self, o: &PadicInt) -> Result<PadicInt> {
        self.same_ring(o)?;
        Ok(self.with_residue(mulmod(self.residue, o.residue, self.modulus)))
    }

    /// Division by a unit.
    pub fn checked_div(&self, o: &PadicInt) -> Result<PadicInt> {
        self.same_ring(o)?;
        self.checked_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<PadicInt> {
        invmod(self.residue, self.modulus).map(|r| self.with_residue(r)).ok_or(Error::NonunitDivisor)
    }

    /// `self / o` after cancelling the common power of `p`; only the lowest
    /// `K - v(o)` digits of the result are determined.
    pub fn div_cancel(&self, o: &PadicInt) -> Result<PadicInt> {
        self.same_ring(o)?;
        let vo = o.valuation();
        if vo == 0 {
            return self.checked_div(o);
        }
        if vo >= self.k {
            return Err(Error::NonunitDivisor);
        }
        if self.residue == 0 {
            return Ok(self.zero_like());
        }
        let vs = self.valuation();
        if vs < vo {
            return Err(Error::NotIntegral { num: vs, den: vo });
        }
        let pv = checked_prime_power(self.p, vo).unwrap();
        let a = self.residue / pv;
        let b = o.residue / pv;
        let binv = invmod(b, self.modulus).expect("unit part is invertible");
        Ok(self.with_residue(mulmod(a, binv, self.modulus)))
    }

    pub fn pow(&self, mut e: u64) -> PadicInt {
        let mut acc = self.one_like();
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow_i64(&self, e: i64) -> Result<PadicInt> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Same integer residue at another precision (reducing if lower).
    pub fn with_precision(&self, k: u32) -> Result<PadicInt> {
        let z = PadicInt::new(self.p, k, 0)?;
        Ok(z.with_residue(self.residue % z.modulus))
    }

    /// Residue as a signed integer in `(-p^K/2, p^K/2]`.
    pub fn symmetric(&self) -> i64 {
        if self.residue > self.modulus / 2 {
            self.residue as i64 - self.modulus as i64
        } else {
            self.residue as i64
        }
    }

    /// Base-`p` digits, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        let mut r = self.residue;
        (0..self.k)
            .map(|_| {
                let d = r % self.p;
                r /= self.p;
                d
            })
            .collect()
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    /// Panics on mismatched `(p, K)`.
    fn add(self, o: PadicInt) -> PadicInt {
        self.checked_add(&o).expect("p-adic precision mismatch")
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, o: PadicInt) -> PadicInt {
        self.checked_sub(&o).expect("p-adic precision mismatch")
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, o: PadicInt) -> PadicInt {
        self.checked_mul(&o).expect("p-adic precision mismatch")
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        self.with_residue(submod(0, self.residue, self.modulus))
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.k)
    }
}

#[derive(Serialize, Deserialize)]
struct PadicJson {
    p: u64,
    #[serde(rename = "K")]
    k: u32,
    residue: String,
}

impl Serialize for PadicInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicJson { p: self.p, k: self.k, residue: self.residue.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PadicJson::deserialize(d)?;
        let r: u64 = raw.residue.parse().map_err(D::Error::custom)?;
        let z = PadicInt::new(raw.p, raw.k, 0).map_err(D::Error::custom)?;
        if r >= z.modulus {
            return Err(D::Error::custom("residue out of range"));
        }
        Ok(z.with_residue(r))
    }
}

// ---------------------------------------------------------------------------

/// Teichmüller representative: the fixed point of `x -> x^p` congruent to `x`.
pub fn teichmuller(x: &PadicInt) -> Result<PadicInt> {
    if !x.is_unit() {
        return Err(Error::NonunitArgument);
    }
    let mut y = *x;
    for _ in 0..=x.k {
        let next = y.pow(x.p);
        if next == y {
            return Ok(y);
        }
        y = next;
    }
    unreachable!("x -> x^p stabilizes after at most K steps")
}

/// Running binomial coefficient `C(s, n)` for an exact nonnegative integer
/// `s`, kept as `p^val * unit mod p^K`.
pub(crate) struct BinomialRun {
    s: u128,
    n: u64,
    unit: PadicInt,
    val: u32,
    vanished: bool,
}

impl BinomialRun {
    pub(crate) fn new(s: u128, ring: &PadicInt) -> Self {
        BinomialRun { s, n: 0, unit: ring.one_like(), val: 0, vanished: false }
    }

    /// Advance from `C(s, n-1)` to `C(s, n)`.
    pub(crate) fn step(&mut self) {
        self.n += 1;
        if self.vanished {
            return;
        }
        let n = self.n as u128;
        if n > self.s {
            self.vanished = true;
            return;
        }
        let top = self.s - n + 1;
        let p = self.unit.p;
        let (vt, vb) = (int_valuation(top, p), int_valuation(n, p));
        let pp = p as u128;
        let ut = top / pp.pow(vt);
        let ub = n / pp.pow(vb);
        let m = self.unit.modulus as u128;
        let ut = self.unit.with_residue((ut % m) as u64);
        let ub = self.unit.with_residue((ub % m) as u64);
        self.unit = self.unit * ut * ub.inv().expect("unit");
        self.val = self.val + vt - vb;
    }

    pub(crate) fn value(&self) -> PadicInt {
        if self.vanished || self.val >= self.unit.k {
            return self.unit.zero_like();
        }
        self.unit * self.unit.with_residue(checked_prime_power(self.unit.p, self.val).unwrap())
    }
}

/// `z^s` for a principal unit `z` by the binomial series
/// `sum C(s, n) (z - 1)^n`, truncated once `n * v(z - 1) >= K`.
pub fn unit_pow(z: &PadicInt, s: &PadicInt) -> Result<PadicInt> {
    z.same_ring(s)?;
    if z.residue % z.p != 1 % z.p {
        return Err(Error::BaseNotPrincipalUnit);
    }
    let y = *z - z.one_like();
    if y.is_zero() {
        return Ok(z.one_like());
    }
    let vy = y.valuation();
    let terms = z.k.div_ceil(vy) as u64;
    let mut binom = BinomialRun::new(s.residue as u128, z);
    let mut acc = z.one_like();
    let mut ypow = z.one_like();
    for _ in 1..terms {
        binom.step();
        ypow = ypow * y;
        acc = acc + binom.value() * ypow;
    }
    Ok(acc)
}

/// `z^m` for a principal unit and an integer exponent (negative allowed).
pub fn unit_pow_int(z: &PadicInt, m: i64) -> Result<PadicInt> {
    unit_pow(z, &z.int_like(m))
}

/// `<x : qa> = w(x)^(-1) (1 - qa^x) / (1 - qa)`.
pub fn angle_bracket(x: &PadicInt, qa: &PadicInt) -> Result<PadicInt> {
    x.same_ring(qa)?;
    if !x.is_unit() {
        return Err(Error::NonunitArgument);
    }
    if qa.residue % qa.p != 1 {
        return Err(Error::BaseNotPrincipalUnit);
    }
    let d = qa.one_like() - *qa;
    let g = d.valuation();
    if g >= qa.k {
        return Err(Error::DegenerateQ);
    }
    // Work with g guard digits so the cancelled quotient keeps K digits.
    let w = x.k + g;
    let xw = x.with_precision(w)?;
    let qw = qa.with_precision(w)?;
    let omega = teichmuller(&xw)?;
    let ratio = (qw.one_like() - unit_pow(&qw, &xw)?).div_cancel(&(qw.one_like() - qw))?;
    (omega.inv()? * ratio).with_precision(x.k)
}

// ---------------------------------------------------------------------------

/// Prime, precision and the distinguished principal unit `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicContext {
    q: PadicInt,
}

impl PadicContext {
    pub fn new(q: PadicInt) -> Result<Self> {
        if q.residue % q.p != 1 {
            return Err(Error::QNotPrincipal);
        }
        Ok(PadicContext { q })
    }

    pub fn from_parts(p: u64, k: u32, q_residue: u64) -> Result<Self> {
        Self::new(PadicInt::new(p, k, q_residue)?)
    }

    /// Parses `1+p`, `1+p^t` or an explicit residue.
    pub fn parse_q(p: u64, k: u32, spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid q {spec:?}; expected 1+p, 1+p^t or a residue"));
        let residue = if let Some(rest) = s.strip_prefix("1+p") {
            let t: u32 = match rest.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            let m = checked_prime_power(p, k).ok_or(Error::PrecisionTooLarge { p, k })?;
            let pt = if t >= k { 0 } else { checked_prime_power(p, t).unwrap() };
            (1 + pt) % m
        } else {
            s.parse::<u64>().map_err(|_| bad())?
        };
        let q = PadicInt::new(p, k, residue)?;
        Self::new(q)
    }

    pub fn p(&self) -> u64 {
        self.q.p
    }

    pub fn precision(&self) -> u32 {
        self.q.k
    }

    pub fn q(&self) -> PadicInt {
        self.q
    }

    pub fn modulus(&self) -> u64 {
        self.q.modulus
    }

    pub fn int(&self, v: i64) -> PadicInt {
        self.q.int_like(v)
    }

    pub fn one(&self) -> PadicInt {
        self.q.one_like()
    }

    pub fn zero(&self) -> PadicInt {
        self.q.zero_like()
    }

    pub fn rational(&self, r: &BigRational) -> Result<PadicInt> {
        self.q.rational_like(r)
    }

    /// Same integer `q` carried at precision `k`.
    pub fn with_precision(&self, k: u32) -> Result<PadicContext> {
        Ok(PadicContext { q: self.q.with_precision(k)? })
    }

    /// Context whose distinguished unit is `q^n`.
    pub fn shifted(&self, n: u64) -> PadicContext {
        PadicContext { q: self.q.pow(n) }
    }

    /// Is `q = 1` at this precision?
    pub fn q_is_one(&self) -> bool {
        self.q.residue == 1
    }

    /// `q^e` for an integer or p-integral rational exponent.
    pub fn q_pow(&self, e: &BigRational) -> Result<PadicInt> {
        if e.is_integer() {
            let n = e.numer();
            if let Some(n) = n.to_i64() {
                return self.q.pow_i64(n);
            }
        }
        unit_pow(&self.q, &self.rational(e)?)
    }

    pub fn q_pow_int(&self, e: i64) -> PadicInt {
        self.q.pow_i64(e).expect("q is a unit")
    }

    /// v_p(1 - q^d) for a positive integer `d`, or `DegenerateQ` when it
    /// vanishes at this precision.
    pub fn bracket_valuation(&self, d: u64) -> Result<u32> {
        let v = (self.one() - self.q.pow(d)).valuation();
        if v >= self.precision() {
            return Err(Error::DegenerateQ);
        }
        Ok(v)
    }

    /// `(1 - q^e) / (1 - q^d)` for a p-integral exponent `e` and a positive
    /// integer `d`, correct to full precision.
    pub fn q_ratio(&self, e: &BigRational, d: u64) -> Result<PadicInt> {
        let g = self.bracket_valuation(d)?;
        let w = self.with_precision(self.precision() + g)?;
        let num = w.one() - w.q_pow(e)?;
        let den = w.one() - w.q.pow(d);
        num.div_cancel(&den)?.with_precision(self.precision())
    }

    /// `(1 - q^(a d)) / (1 - q^d)` for integer `a`, the q-integer `[a]` at
    /// base `q^d`.
    pub fn q_int(&self, a: i64, d: u64) -> Result<PadicInt> {
        self.q_ratio(&BigRational::from_integer(BigInt::from(a) * BigInt::from(d)), d)
    }
}

/// `s` as a p-adic integer equal to an exact nonnegative integer, if it is one
/// below `bound`; used to recognise integer exponents.
pub fn small_integer(s: &PadicInt, bound: u64) -> Option<u64> {
    (s.residue < bound).then_some(s.residue)
}

/// Parses a decimal (possibly negative) integer into a `PadicInt`.
pub fn parse_padic(p: u64, k: u32, s: &str) -> Result<PadicInt> {
    let v: BigInt = s.trim().parse().map_err(|_| Error::Parse(format!("invalid integer {s:?}")))?;
    if v.sign() == Sign::Minus {
        let z = PadicInt::new(p, k, 0)?;
        let r = v.mod_floor(&BigInt::from(z.modulus)).to_u64().unwrap();
        return Ok(z.with_residue(r));
    }
    PadicInt::from_bigint(p, k, &v)
}

impl PadicInt {
    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.residue)
    }

    pub fn is_one(&self) -> bool {
        self.residue == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, k: u32, r: i64) -> PadicInt {
        PadicInt::from_i64(p, k, r).unwrap()
    }

    #[test]
    fn div_by_two_mod_125() {
        // extended Euclid: 2 * 63 = 126 = 1 mod 125
        assert_eq!(z(5, 3, 1).checked_div(&z(5, 3, 2)).unwrap().residue(), 63);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(z(5, 3, 50).valuation(), 2);
        assert_eq!(z(5, 3, 0).valuation(), 3);
        assert_eq!(z(5, 3, 7).valuation(), 0);
    }

    #[test]
    fn additive_identity() {
        let x = z(5, 3, 77);
        assert_eq!(x + x.zero_like(), x);
    }

    #[test]
    fn error_paths() {
        assert_eq!(z(5, 3, 1).checked_div(&z(5, 3, 10)), Err(Error::NonunitDivisor));
        assert!(matches!(z(5, 3, 1).checked_add(&z(5, 4, 1)), Err(Error::PrecisionMismatch(..))));
        assert_eq!(PadicInt::new(4, 3, 0), Err(Error::NotOddPrime(4)));
        assert_eq!(PadicInt::new(2, 3, 0), Err(Error::NotOddPrime(2)));
        assert!(matches!(PadicInt::new(5, 40, 0), Err(Error::PrecisionTooLarge { .. })));
        assert_eq!(teichmuller(&z(5, 3, 10)), Err(Error::NonunitArgument));
        assert_eq!(unit_pow(&z(5, 3, 2), &z(5, 3, 3)), Err(Error::BaseNotPrincipalUnit));
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(&z(5, 3, 1)).unwrap().residue(), 1);
        let w = teichmuller(&z(5, 3, 2)).unwrap();
        // oracle: iterate x -> x^5 mod 125 from 2
        let mut x = 2u64;
        loop {
            let nx = (0..5).fold(1u64, |a, _| a * x % 125);
            if nx == x {
                break;
            }
            x = nx;
        }
        assert_eq!(w.residue(), x);
        assert_eq!(x, 57);
        assert_eq!((w * w).residue(), 124);
        assert_eq!(teichmuller(&z(5, 3, -1)).unwrap().residue(), 124);
    }

    #[test]
    fn unit_pow_examples() {
        let six = z(5, 3, 6);
        assert_eq!(unit_pow(&six, &z(5, 3, 0)).unwrap().residue(), 1);
        assert_eq!(unit_pow(&six, &z(5, 3, 5)).unwrap().residue(), 7776 % 125);
        assert_eq!(unit_pow(&z(5, 3, 1), &z(5, 3, 93)).unwrap().residue(), 1);
        // negative exponent through the residue
        assert_eq!(unit_pow_int(&six, -1).unwrap(), six.inv().unwrap());
    }

    #[test]
    fn angle_bracket_examples() {
        let q = z(5, 3, 6);
        assert_eq!(angle_bracket(&z(5, 3, 1), &q).unwrap().residue(), 1);
        let w2 = teichmuller(&z(5, 3, 2)).unwrap();
        // (1 - 36)/(1 - 6) = 7
        let expected = w2.inv().unwrap() * z(5, 3, 7);
        assert_eq!(angle_bracket(&z(5, 3, 2), &q).unwrap(), expected);
        assert_eq!(angle_bracket(&z(5, 3, 2), &z(5, 3, 1)), Err(Error::DegenerateQ));
    }

    #[test]
    fn div_cancel_keeps_low_digits() {
        // 50 / 10 = 5
        assert_eq!(z(5, 3, 50).div_cancel(&z(5, 3, 10)).unwrap().residue(), 5);
        assert_eq!(z(5, 3, 3).div_cancel(&z(5, 3, 10)), Err(Error::NotIntegral { num: 0, den: 1 }));
    }

    #[test]
    fn q_spec_grammar() {
        assert_eq!(PadicContext::parse_q(5, 6, "1+p").unwrap().q().residue(), 6);
        assert_eq!(PadicContext::parse_q(5, 6, "1+p^2").unwrap().q().residue(), 26);
        assert_eq!(PadicContext::parse_q(5, 6, "11").unwrap().q().residue(), 11);
        assert_eq!(PadicContext::parse_q(5, 6, "7"), Err(Error::QNotPrincipal));
        assert!(PadicContext::parse_q(5, 6, "1+x").is_err());
    }

    #[test]
    fn json_shape() {
        let w = teichmuller(&z(5, 3, 2)).unwrap();
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(j, r#"{"p":5,"K":3,"residue":"57"}"#);
        assert_eq!(serde_json::from_str::<PadicInt>(&j).unwrap(), w);
        assert!(serde_json::from_str::<PadicInt>(r#"{"p":5,"K":3,"residue":"125"}"#).is_err());
    }

    #[test]
    fn q_ratio_full_precision() {
        let ctx = PadicContext::from_parts(5, 4, 6).unwrap();
        // (1 - 6^10)/(1 - 6^5) = 1 + 6^5
        let r = ctx.q_int(2, 5).unwrap();
        assert_eq!(r.residue(), (1 + 7776) % 625);
    }
}
