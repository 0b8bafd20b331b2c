//! Multi-quadratic extensions ℚ(√d₁, …, √d_k).
//!
//! An element is a rational combination of the 2^k square-root monomials
//! ∏_{d∈S} √d, stored sparsely as `(mask, coefficient)` pairs sorted by mask.
//! Bit `i` of a mask refers to the i-th radical of the sorted radical list.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The radical set of a rational tower, kept in canonical form.
///
/// Canonical form: every radical is squarefree and ≠ 0, 1; the positive ones
/// are pairwise coprime; −1 appears whenever any negative square root was
/// requested, and then no other radical is negative; the list is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tower {
    radicals: Arc<[i64]>,
}

/// Squarefree part of a nonzero integer, sign included.
pub fn squarefree_part(d: i64) -> i64 {
    assert!(d != 0, "squarefree part of zero");
    let sign = d.signum();
    let mut m = d.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out *= m;
    sign * out as i64
}

fn insert_coprime(base: &mut Vec<u64>, x: u64) {
    let mut pending = vec![x];
    while let Some(mut x) = pending.pop() {
        if x == 1 {
            continue;
        }
        let mut i = 0;
        while i < base.len() {
            let g = base[i].gcd(&x);
            if g > 1 {
                let y = base.swap_remove(i);
                for part in [y / g, g] {
                    if part > 1 {
                        pending.push(part);
                    }
                }
                x /= g;
                if x == 1 {
                    break;
                }
                continue;
            }
            i += 1;
        }
        if x > 1 {
            base.push(x);
        }
    }
}

impl Tower {
    /// Smallest canonical tower containing √d for every requested d.
    pub fn with_square_roots(requests: &[i64]) -> Tower {
        Tower::empty().extended(requests)
    }

    pub fn empty() -> Tower {
        Tower {
            radicals: Arc::from(Vec::new()),
        }
    }

    /// This tower enlarged to also contain √d for each requested d.
    pub fn extended(&self, requests: &[i64]) -> Tower {
        let mut negative = self.radicals.contains(&-1);
        let mut base: Vec<u64> = self
            .radicals
            .iter()
            .filter(|&&r| r > 0)
            .map(|&r| r as u64)
            .collect();
        for &d in requests {
            if d == 0 {
                continue;
            }
            let s = squarefree_part(d);
            if s < 0 {
                negative = true;
            }
            insert_coprime(&mut base, s.unsigned_abs());
        }
        let mut radicals: Vec<i64> = base.into_iter().map(|r| r as i64).collect();
        if negative {
            radicals.push(-1);
        }
        radicals.sort_unstable();
        radicals.dedup();
        Tower {
            radicals: Arc::from(radicals),
        }
    }

    /// Accept an explicit radical list only if it is already canonical.
    pub fn from_radicals(radicals: &[i64]) -> Result<Tower> {
        for &r in radicals {
            if r == 0 || r == 1 || squarefree_part(r) != r {
                return Err(Error::InvalidField(format!(
                    "radical {r} is not squarefree and ≠ 0, 1"
                )));
            }
        }
        let canonical = Tower::with_square_roots(radicals);
        if canonical.radicals() != radicals {
            return Err(Error::InvalidField(format!(
                "radicals {radicals:?} are not in canonical form {:?}",
                canonical.radicals()
            )));
        }
        Ok(canonical)
    }

    pub fn radicals(&self) -> &[i64] {
        &self.radicals
    }

    pub fn degree(&self) -> usize {
        1 << self.radicals.len()
    }

    /// Is `other` a refinement of this tower (every radical here a product of radicals there)?
    pub fn embeds_into(&self, other: &Tower) -> bool {
        self.radicals.iter().all(|&r| other.monomial_for(r).is_some())
    }

    /// Mask of the monomial equal to √r, when r is a product of radicals of this tower.
    fn monomial_for(&self, r: i64) -> Option<u32> {
        let mut mask = 0u32;
        let mut rest = r;
        if rest < 0 {
            let i = self.radicals.iter().position(|&x| x == -1)?;
            mask |= 1 << i;
            rest = -rest;
        }
        for (i, &d) in self.radicals.iter().enumerate() {
            if d > 1 && rest % d == 0 {
                mask |= 1 << i;
                rest /= d;
            }
        }
        (rest == 1).then_some(mask)
    }

    fn mask_product(&self, mask: u32) -> BigInt {
        let mut acc = BigInt::one();
        for (i, &d) in self.radicals.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc *= d;
            }
        }
        acc
    }

    pub fn zero(&self) -> TowerElement {
        TowerElement { terms: Vec::new() }
    }

    pub fn from_rational(&self, q: BigRational) -> TowerElement {
        if q.is_zero() {
            self.zero()
        } else {
            TowerElement { terms: vec![(0, q)] }
        }
    }

    pub fn from_int(&self, v: i64) -> TowerElement {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// The monomial √r, if r is a product of this tower's radicals.
    pub fn radical(&self, r: i64) -> Option<TowerElement> {
        self.monomial_for(r).map(|mask| TowerElement {
            terms: vec![(mask, BigRational::one())],
        })
    }

    pub fn contains(&self, x: &TowerElement) -> bool {
        let limit = 1u32 << self.radicals.len();
        x.terms.windows(2).all(|w| w[0].0 < w[1].0) && x.terms.iter().all(|(m, q)| *m < limit && !q.is_zero())
    }

    pub fn add(&self, x: &TowerElement, y: &TowerElement) -> TowerElement {
        let mut terms = Vec::with_capacity(x.terms.len() + y.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < x.terms.len() && j < y.terms.len() {
            let (ma, qa) = &x.terms[i];
            let (mb, qb) = &y.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    terms.push((*ma, qa.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push((*mb, qb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = qa + qb;
                    if !s.is_zero() {
                        terms.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(x.terms[i..].iter().cloned());
        terms.extend(y.terms[j..].iter().cloned());
        TowerElement { terms }
    }

    pub fn neg(&self, x: &TowerElement) -> TowerElement {
        TowerElement {
            terms: x.terms.iter().map(|(m, q)| (*m, -q)).collect(),
        }
    }

    pub fn sub(&self, x: &TowerElement, y: &TowerElement) -> TowerElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &TowerElement, y: &TowerElement) -> TowerElement {
        if x.terms.is_empty() || y.terms.is_empty() {
            return self.zero();
        }
        if x.terms.len() == 1 && x.terms[0].0 == 0 {
            return self.scale(y, &x.terms[0].1);
        }
        if y.terms.len() == 1 && y.terms[0].0 == 0 {
            return self.scale(x, &y.terms[0].1);
        }
        let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (ma, qa) in &x.terms {
            for (mb, qb) in &y.terms {
                let common = ma & mb;
                let mut q = qa * qb;
                if common != 0 {
                    q *= BigRational::from_integer(self.mask_product(common));
                }
                let e = acc.entry(ma ^ mb).or_insert_with(BigRational::zero);
                *e += q;
            }
        }
        TowerElement {
            terms: acc.into_iter().filter(|(_, q)| !q.is_zero()).collect(),
        }
    }

    fn scale(&self, x: &TowerElement, q: &BigRational) -> TowerElement {
        TowerElement {
            terms: x.terms.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    /// Flip the sign of √d for the i-th radical.
    fn conjugate(&self, x: &TowerElement, i: usize) -> TowerElement {
        TowerElement {
            terms: x
                .terms
                .iter()
                .map(|(m, q)| (*m, if m & (1 << i) != 0 { -q } else { q.clone() }))
                .collect(),
        }
    }

    pub fn inv(&self, x: &TowerElement) -> Result<TowerElement> {
        if x.terms.is_empty() {
            return Err(Error::DivisionByZero);
        }
        // x · ∏ conjugates is rational; peel one radical at a time.
        let mut y = x.clone();
        let mut numerator = self.from_int(1);
        for i in 0..self.radicals.len() {
            if y.terms.iter().any(|(m, _)| m & (1 << i) != 0) {
                let c = self.conjugate(&y, i);
                numerator = self.mul(&numerator, &c);
                y = self.mul(&y, &c);
            }
        }
        debug_assert!(y.terms.len() == 1 && y.terms[0].0 == 0);
        let norm = y.terms[0].1.clone();
        Ok(self.scale(&numerator, &norm.recip()))
    }

    /// A square root of `x` inside the tower, if one exists.
    ///
    /// Canonical choice: the root whose lowest-mask coefficient is positive.
    pub fn sqrt(&self, x: &TowerElement) -> Option<TowerElement> {
        let root = self.sqrt_in(x, self.radicals.len())?;
        Some(match root.terms.first() {
            Some((_, q)) if q.is_negative() => self.neg(&root),
            _ => root,
        })
    }

    /// Square root inside the subfield generated by the first `level` radicals.
    fn sqrt_in(&self, x: &TowerElement, level: usize) -> Option<TowerElement> {
        if x.terms.is_empty() {
            return Some(self.zero());
        }
        if level == 0 {
            return rational_sqrt(&x.terms[0].1).map(|q| self.from_rational(q));
        }
        let bit = 1u32 << (level - 1);
        let d = self.radicals[level - 1];
        let (a, b) = self.split(x, bit);
        let radical = TowerElement {
            terms: vec![(bit, BigRational::one())],
        };
        let two = self.from_int(2);
        if b.terms.is_empty() {
            if let Some(r) = self.sqrt_in(&a, level - 1) {
                return Some(r);
            }
            // a = d·e² gives √a = e·√d
            let e = self.sqrt_in(&self.mul(&a, &self.from_int(d).inv_unchecked(self)), level - 1)?;
            return Some(self.mul(&e, &radical));
        }
        // (u + v√d)² = a + b√d ⇔ u² + d v² = a, 2uv = b.
        let norm = self.sub(&self.mul(&a, &a), &self.mul(&self.from_int(d), &self.mul(&b, &b)));
        let n = self.sqrt_in(&norm, level - 1)?;
        let half = self.inv(&two).ok()?;
        for cand in [self.add(&a, &n), self.sub(&a, &n)] {
            let u2 = self.mul(&cand, &half);
            if let Some(u) = self.sqrt_in(&u2, level - 1) {
                if u.terms.is_empty() {
                    continue;
                }
                let v = self.mul(&b, &self.inv(&self.mul(&two, &u)).ok()?);
                return Some(self.add(&u, &self.mul(&v, &radical)));
            }
        }
        None
    }

    /// Split x = a + b·√d along one radical bit (a, b free of that bit).
    fn split(&self, x: &TowerElement, bit: u32) -> (TowerElement, TowerElement) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (m, q) in &x.terms {
            if m & bit == 0 {
                a.push((*m, q.clone()));
            } else {
                b.push((m & !bit, q.clone()));
            }
        }
        (TowerElement { terms: a }, TowerElement { terms: b })
    }

    /// Re-express an element of this tower inside a refining tower.
    pub fn embed(&self, x: &TowerElement, target: &Tower) -> Result<TowerElement> {
        let mut images = Vec::with_capacity(self.radicals.len());
        for &r in self.radicals.iter() {
            images.push(target.monomial_for(r).ok_or(Error::FieldMismatch)?);
        }
        let mut terms: Vec<(u32, BigRational)> = x
            .terms
            .iter()
            .map(|(m, q)| {
                let mut out = 0u32;
                for (i, img) in images.iter().enumerate() {
                    if m & (1 << i) != 0 {
                        out |= img;
                    }
                }
                (out, q.clone())
            })
            .collect();
        terms.sort_by_key(|(m, _)| *m);
        Ok(TowerElement { terms })
    }

    /// The radicals named by a mask, ascending.
    pub fn mask_radicals(&self, mask: u32) -> Vec<i64> {
        self.radicals
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &d)| d)
            .collect()
    }

    /// Mask for an explicit radical subset; each must be one of the tower's radicals.
    pub fn mask_of(&self, subset: &[i64]) -> Option<u32> {
        let mut mask = 0u32;
        for d in subset {
            let i = self.radicals.iter().position(|r| r == d)?;
            if mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
        }
        Some(mask)
    }

    pub fn from_terms(&self, mut terms: Vec<(u32, BigRational)>) -> Result<TowerElement> {
        terms.retain(|(_, q)| !q.is_zero());
        terms.sort_by_key(|(m, _)| *m);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("repeated radical monomial".into()));
        }
        let x = TowerElement { terms };
        if !self.contains(&x) {
            return Err(Error::Parse("monomial outside the tower".into()));
        }
        Ok(x)
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// An element of a [`Tower`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerElement {
    terms: Vec<(u32, BigRational)>,
}

impl TowerElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    /// The rational value, if the element has no radical part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    fn inv_unchecked(&self, tower: &Tower) -> TowerElement {
        tower.inv(self).expect("nonzero radical")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_radicals() {
        assert_eq!(Tower::with_square_roots(&[-1, 8]).radicals(), &[-1, 2]);
        assert_eq!(Tower::with_square_roots(&[-2]).radicals(), &[-1, 2]);
        assert_eq!(Tower::with_square_roots(&[6, 2]).radicals(), &[2, 3]);
        assert_eq!(Tower::with_square_roots(&[-24, 15]).radicals(), &[-1, 2, 3, 5]);
        assert_eq!(Tower::with_square_roots(&[4, 9]).radicals(), &[] as &[i64]);
        assert_eq!(squarefree_part(-48), -3);
        assert!(Tower::from_radicals(&[-1, 2]).is_ok());
        assert!(Tower::from_radicals(&[2, 6]).is_err());
        assert!(Tower::from_radicals(&[-2]).is_err());
    }

    #[test]
    fn conjugate_product() {
        let t = Tower::with_square_roots(&[2]);
        let r2 = t.radical(2).unwrap();
        let one = t.from_int(1);
        let x = t.add(&one, &r2);
        let y = t.sub(&one, &r2);
        assert_eq!(t.mul(&x, &y), t.from_int(-1));
    }

    #[test]
    fn inverse_in_three_radicals() {
        let t = Tower::with_square_roots(&[-1, 2, 3]);
        let x = t
            .from_terms(vec![
                (0, q(1, 2)),
                (0b011, q(-3, 1)),
                (0b110, q(2, 7)),
                (0b111, q(1, 1)),
            ])
            .unwrap();
        let inv = t.inv(&x).unwrap();
        assert_eq!(t.mul(&x, &inv), t.from_int(1));
    }

    #[test]
    fn square_roots() {
        let t = Tower::with_square_roots(&[-1, 2]);
        let r = t.sqrt(&t.from_int(-2)).unwrap();
        assert_eq!(r, t.radical(-2).unwrap());
        assert_eq!(t.mask_radicals(r.terms()[0].0), vec![-1, 2]);
        // (1 + √2)² = 3 + 2√2
        let x = t.add(&t.from_int(1), &t.radical(2).unwrap());
        let sq = t.mul(&x, &x);
        assert_eq!(t.sqrt(&sq).unwrap(), x);
        assert!(t.sqrt(&t.from_int(3)).is_none());
        assert_eq!(
            t.sqrt(&t.from_rational(q(9, 4))).unwrap(),
            t.from_rational(q(3, 2))
        );
    }

    #[test]
    fn embedding_into_refinement() {
        let small = Tower::with_square_roots(&[6]);
        let big = small.extended(&[2, -1]);
        assert_eq!(big.radicals(), &[-1, 2, 3]);
        let r6 = small.radical(6).unwrap();
        let img = small.embed(&r6, &big).unwrap();
        assert_eq!(big.mul(&img, &img), big.from_int(6));
        assert!(small.embeds_into(&big));
        assert!(!big.embeds_into(&small));
    }
}
