//! Dense integer polynomials (ascending coefficients, no trailing zeros) and
//! the modular gcd used to canonicalize rational functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive(p: &[BigInt]) -> ZPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut g = content(p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    if g.is_one() {
        return p.to_vec();
    }
    p.iter().map(|c| c / &g).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    let bnz: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for &(j, bj) in &bnz {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

/// Quotient `a / b` if `b` divides `a` in Z[t], else `None`.
pub(crate) fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let bnz: Vec<(usize, &BigInt)> = b[..db].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut rem: ZPoly = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for i in (0..quo.len()).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for &(j, bj) in &bnz {
            rem[i + j] -= &q * bj;
        }
        rem[i + db] = BigInt::zero();
        quo[i] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quo);
    Some(quo)
}

// ---------------------------------------------------------------------------
// Arithmetic modulo word-sized primes.

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

/// Primes just below 2^62, descending.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> =
        a.iter().map(|c| if c.is_zero() { 0 } else { c.mod_floor(&pb).to_u64().unwrap() }).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd over F_p (inputs nonzero).
fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !b.is_empty() {
        // a <- a mod b
        let db = b.len() - 1;
        let inv = invmod(b[db], p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mulmod(*a.last().unwrap(), inv, p);
            if f != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    if bj != 0 {
                        let t = mulmod(f, bj, p);
                        let slot = &mut a[shift + j];
                        *slot = if *slot >= t { *slot - t } else { *slot + p - t };
                    }
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = invmod(*a.last().unwrap(), p);
    a.iter().map(|&c| mulmod(c, inv, p)).collect()
}

/// Gcd of two nonzero integer polynomials: primitive with positive leading
/// coefficient, times the gcd of the contents.
#[cfg(test)]
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    assert!(!a.is_empty() && !b.is_empty(), "gcd of zero polynomial");
    let cg = content(a).gcd(&content(b));
    let pa = primitive(a);
    let pb = primitive(b);
    let g = gcd_primitive(&pa, &pb);
    if cg.is_one() {
        g
    } else {
        g.into_iter().map(|c| c * &cg).collect()
    }
}

/// Gcd of primitive polynomials; result primitive with positive leading term.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    // Factor out common powers of t first.
    let va = a.iter().position(|c| !c.is_zero()).unwrap();
    let vb = b.iter().position(|c| !c.is_zero()).unwrap();
    let vt = va.min(vb);
    let a = &a[va..];
    let b = &b[vb..];
    let mut core = gcd_no_t(a, b);
    if vt > 0 {
        let mut shifted = vec![BigInt::zero(); vt];
        shifted.append(&mut core);
        core = shifted;
    }
    core
}

fn exponent_gcd(p: &[BigInt], mut g: usize) -> usize {
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() && i > 0 {
            g = g.gcd(&i);
            if g == 1 {
                break;
            }
        }
    }
    g
}

pub(crate) fn compress(p: &[BigInt], g: usize) -> ZPoly {
    p.iter().step_by(g).cloned().collect()
}

pub(crate) fn expand(p: &[BigInt], g: usize) -> ZPoly {
    if g == 1 || p.is_empty() {
        return p.to_vec();
    }
    let mut out = vec![BigInt::zero(); (p.len() - 1) * g + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * g] = c.clone();
    }
    out
}

fn gcd_no_t(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    // gcd(f(t^g), h(t^g)) = gcd(f, h)(t^g)
    let g = exponent_gcd(b, exponent_gcd(a, 0));
    if g > 1 {
        let h = modular_gcd(&compress(a, g), &compress(b, g));
        return expand(&h, g);
    }
    modular_gcd(a, b)
}

/// Dense modular gcd with CRT reconstruction; the candidate is accepted only
/// after it divides both inputs exactly over Z.
fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let la = a.last().unwrap();
    let lb = b.last().unwrap();
    let gamma = la.gcd(lb);
    let mut deg_bound = a.len().min(b.len()) - 1;
    let mut acc: Option<(ZPoly, BigInt)> = None;
    let mut last_candidate: Option<ZPoly> = None;

    for p in PrimeStream::new() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let gp = gcd_mod(reduce_mod(a, p), reduce_mod(b, p), p);
        let d = gp.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > deg_bound {
            continue;
        }
        if d < deg_bound || acc.is_none() {
            deg_bound = d;
            acc = None;
            last_candidate = None;
        }
        let gm = gamma.mod_floor(&pb).to_u64().unwrap();
        let scaled: Vec<u64> = gp.iter().map(|&c| mulmod(c, gm, p)).collect();

        let (coeffs, modulus) = match acc.take() {
            None => (scaled.iter().map(|&c| BigInt::from(c)).collect::<ZPoly>(), pb.clone()),
            Some((prev, m)) => {
                let m_mod_p = m.mod_floor(&pb).to_u64().unwrap();
                let inv = invmod(m_mod_p, p);
                let combined = prev
                    .iter()
                    .zip(&scaled)
                    .map(|(c, &r)| {
                        let c_mod = c.mod_floor(&pb).to_u64().unwrap();
                        let diff = if r >= c_mod { r - c_mod } else { r + p - c_mod };
                        let k = mulmod(diff, inv, p);
                        c + &m * BigInt::from(k)
                    })
                    .collect();
                (combined, m * &pb)
            }
        };
        let half = &modulus >> 1;
        let sym: ZPoly = coeffs.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect();
        let cand = primitive(&sym);
        acc = Some((coeffs, modulus));
        if last_candidate.as_ref() == Some(&cand) && exact_div(a, &cand).is_some() && exact_div(b, &cand).is_some() {
            return cand;
        }
        last_candidate = Some(cand);
    }
    unreachable!("prime stream is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - t^6) and (1 - t^4) share (1 - t^2)
        let g = gcd(&z(&[1, 0, 0, 0, 0, 0, -1]), &z(&[1, 0, 0, 0, -1]));
        assert_eq!(g, z(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_with_t_powers_and_content() {
        let a = mul(&z(&[0, 0, 6]), &z(&[1, 1]));
        let b = mul(&z(&[0, 4]), &z(&[1, 1, 1]));
        assert_eq!(gcd(&a, &b), z(&[0, 2]));
    }

    #[test]
    fn gcd_large_coefficients() {
        let f = z(&[123456789, -987654321, 1]);
        let g = z(&[7, 0, 0, 31]);
        let h = z(&[-5, 1]);
        let a = mul(&mul(&f, &g), &h);
        let b = mul(&mul(&f, &h), &z(&[3, 3, 3, 2]));
        assert_eq!(gcd(&a, &b), primitive(&mul(&f, &h)));
    }

    #[test]
    fn exact_div_detects_remainders() {
        assert_eq!(exact_div(&z(&[-1, 0, 1]), &z(&[-1, 1])), Some(z(&[1, 1])));
        assert_eq!(exact_div(&z(&[1, 0, 1]), &z(&[-1, 1])), None);
        assert_eq!(exact_div(&z(&[1, 2]), &z(&[0, 2])), None);
    }

    #[test]
    fn primality() {
        assert!(is_prime(5) && is_prime(3) && !is_prime(9) && !is_prime(1));
        assert!(is_prime((1u64 << 61) - 1));
    }
}
