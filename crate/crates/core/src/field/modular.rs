//! Residue arithmetic for GF(p) and GF(p²).
//!
//! All primes are below 2³¹, so products of two reduced residues fit in a
//! `u64` without widening.

use crate::error::{Error, Result};

pub(crate) const PRIME_BOUND: u64 = 1 << 31;

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

#[inline]
pub(crate) fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Result<u64> {
    if a.is_multiple_of(p) {
        return Err(Error::DivisionByZero);
    }
    Ok(pow_mod(a, p - 2, p))
}

/// Reduce a signed integer into `[0, p)`.
pub(crate) fn reduce_i64(x: i64, p: u64) -> u64 {
    (x.rem_euclid(p as i64)) as u64
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors by trial division.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_quadratic_residue(a: u64, p: u64) -> bool {
    a.is_multiple_of(p) || pow_mod(a, (p - 1) / 2, p) == 1
}

pub(crate) fn smallest_non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&c| !is_quadratic_residue(c, p))
        .expect("odd prime has a non-residue")
}

/// Smallest generator of the multiplicative group of GF(p).
pub(crate) fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_divisors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime field has a primitive root")
}

/// Square root in GF(p) for odd p (Tonelli–Shanks), smaller representative.
pub(crate) fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if !is_quadratic_residue(a, p) {
        return None;
    }
    let mut q = p - 1;
    let mut e = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        e += 1;
    }
    let z = smallest_non_residue(p);
    let mut m = e;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// GF(p²) presented on the basis {1, ζ} with ζ a primitive element.
///
/// The field is first built as GF(p)[w]/(w² − c) for the non-residue `c`; the
/// generator ζ = a + b·w is stored so files can carry the exact presentation.
/// Elements are pairs `(x, y)` meaning x + y·ζ, with ζ² = s + t·ζ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    p: u64,
    c: u64,
    zeta_w: (u64, u64),
    s: u64,
    t: u64,
}

impl QuadraticField {
    /// The pinned presentation: smallest non-residue `c`, and ζ the first
    /// primitive element a + b·w in lexicographic (a, b) order.
    pub fn standard(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) || p >= PRIME_BOUND {
            return Err(Error::InvalidField(format!("{p} is not an odd prime below 2^31")));
        }
        let c = smallest_non_residue(p);
        let order = p * p - 1;
        let mut factors = prime_divisors(p - 1);
        for q in prime_divisors(p + 1) {
            if !factors.contains(&q) {
                factors.push(q);
            }
        }
        for a in 0..p {
            for b in 1..p {
                let z = (a, b);
                if factors.iter().all(|&q| w_pow(z, order / q, p, c) != (1, 0)) {
                    return Self::from_parts(p, c, a, b);
                }
            }
        }
        unreachable!("GF(p^2) has a primitive element outside GF(p)")
    }

    /// Rebuild a presentation from its defining data.
    pub fn from_parts(p: u64, c: u64, zeta_a: u64, zeta_b: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) || p >= PRIME_BOUND {
            return Err(Error::InvalidField(format!("{p} is not an odd prime below 2^31")));
        }
        if c >= p || is_quadratic_residue(c, p) {
            return Err(Error::InvalidField(format!("{c} is not a non-residue mod {p}")));
        }
        if zeta_a >= p || zeta_b == 0 || zeta_b >= p {
            return Err(Error::InvalidField("generator must lie outside GF(p)".into()));
        }
        // ζ² = (b²c − a²) + 2a·ζ
        let s = sub_mod(
            mul_mod(mul_mod(zeta_b, zeta_b, p), c, p),
            mul_mod(zeta_a, zeta_a, p),
            p,
        );
        let t = mul_mod(2, zeta_a, p);
        Ok(QuadraticField {
            p,
            c,
            zeta_w: (zeta_a, zeta_b),
            s,
            t,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn non_residue(&self) -> u64 {
        self.c
    }

    /// Coordinates (a, b) of ζ = a + b·w where w² = c.
    pub fn zeta_coordinates(&self) -> (u64, u64) {
        self.zeta_w
    }

    /// (s, t) with ζ² = s + t·ζ.
    pub fn zeta_square(&self) -> (u64, u64) {
        (self.s, self.t)
    }

    pub fn is_primitive(&self, x: (u64, u64)) -> bool {
        let order = self.p * self.p - 1;
        if x == (0, 0) {
            return false;
        }
        let mut factors = prime_divisors(self.p - 1);
        for q in prime_divisors(self.p + 1) {
            if !factors.contains(&q) {
                factors.push(q);
            }
        }
        self.pow(x, order) == (1, 0) && factors.iter().all(|&q| self.pow(x, order / q) != (1, 0))
    }

    #[inline]
    pub(crate) fn add(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        (add_mod(x.0, y.0, self.p), add_mod(x.1, y.1, self.p))
    }

    #[inline]
    pub(crate) fn sub(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        (sub_mod(x.0, y.0, self.p), sub_mod(x.1, y.1, self.p))
    }

    #[inline]
    pub(crate) fn neg(&self, x: (u64, u64)) -> (u64, u64) {
        (neg_mod(x.0, self.p), neg_mod(x.1, self.p))
    }

    #[inline]
    pub(crate) fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let p = self.p;
        let (a, b) = x;
        let (u, v) = y;
        let bv = (b * v) % p;
        let re = (a * u + bv * self.s) % p;
        let im = (a * v + b * u + bv * self.t) % p;
        (re, im)
    }

    pub(crate) fn inv(&self, x: (u64, u64)) -> Result<(u64, u64)> {
        let p = self.p;
        let (a, b) = x;
        // conjugate of ζ is t − ζ
        let conj = (add_mod(a, mul_mod(b, self.t, p), p), neg_mod(b, p));
        let norm = sub_mod(
            add_mod(mul_mod(a, a, p), mul_mod(mul_mod(a, b, p), self.t, p), p),
            mul_mod(mul_mod(b, b, p), self.s, p),
            p,
        );
        let ninv = inv_mod(norm, p)?;
        Ok((mul_mod(conj.0, ninv, p), mul_mod(conj.1, ninv, p)))
    }

    pub(crate) fn pow(&self, mut base: (u64, u64), mut exp: u64) -> (u64, u64) {
        let mut acc = (1, 0);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Tonelli–Shanks in GF(p²) with ζ as the non-square.
    pub(crate) fn sqrt(&self, x: (u64, u64)) -> Option<(u64, u64)> {
        if x == (0, 0) {
            return Some(x);
        }
        let q = self.p * self.p;
        if self.pow(x, (q - 1) / 2) != (1, 0) {
            return None;
        }
        let mut odd = q - 1;
        let mut e = 0u32;
        while odd.is_multiple_of(2) {
            odd /= 2;
            e += 1;
        }
        let mut m = e;
        let mut c = self.pow((0, 1), odd);
        let mut t = self.pow(x, odd);
        let mut r = self.pow(x, odd.div_ceil(2));
        while t != (1, 0) {
            let mut i = 0;
            let mut t2 = t;
            while t2 != (1, 0) {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        let other = self.neg(r);
        Some(if r <= other { r } else { other })
    }
}

fn w_pow(mut base: (u64, u64), mut exp: u64, p: u64, c: u64) -> (u64, u64) {
    let mul =
        |x: (u64, u64), y: (u64, u64)| ((x.0 * y.0 + (x.1 * y.1) % p * c) % p, (x.0 * y.1 + x.1 * y.0) % p);
    let mut acc = (1, 0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_residues() {
        assert!(is_prime(2) && is_prime(7) && is_prime(2_147_483_647));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(91));
        assert_eq!(smallest_non_residue(7), 3);
        assert_eq!(smallest_non_residue(3), 2);
        assert_eq!(prime_divisors(48), vec![2, 3]);
        assert_eq!(smallest_primitive_root(7), 3);
    }

    #[test]
    fn gf9_presentation() {
        let f = QuadraticField::standard(3).unwrap();
        assert_eq!(f.non_residue(), 2);
        assert_eq!(f.zeta_coordinates(), (1, 1));
        // ζ = 1 + w, ζ² = 2w = 1 + 2ζ
        assert_eq!(f.zeta_square(), (1, 2));
        assert!(f.is_primitive((0, 1)));
    }

    #[test]
    fn sqrt_mod_small() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            for a in 0..p {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a),
                    None => assert!(!is_quadratic_residue(a, p)),
                }
            }
        }
    }

    #[test]
    fn gf_p2_sqrt_every_square() {
        for p in [3u64, 5, 7, 13] {
            let f = QuadraticField::standard(p).unwrap();
            let mut squares = 0;
            for a in 0..p {
                for b in 0..p {
                    if let Some(r) = f.sqrt((a, b)) {
                        assert_eq!(f.mul(r, r), (a, b));
                        squares += 1;
                    }
                }
            }
            assert_eq!(squares, (p * p - 1) / 2 + 1);
        }
    }
}
