//! Exact scalar arithmetic for the splitting fields the constructions need.
//!
//! A [`FieldDescriptor`] names the field; [`FieldElement`]s are plain values
//! interpreted under exactly one descriptor. All arithmetic goes through the
//! descriptor, so elements stay small and context-free. Mixing elements of
//! different fields is a contract violation and panics.

mod modular;
mod text;
mod tower;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub use modular::QuadraticField;
pub use tower::{squarefree_part, Tower, TowerElement};

use crate::error::{Error, Result};
use modular::{
    add_mod, inv_mod, is_prime, mul_mod, neg_mod, pow_mod, reduce_i64, smallest_primitive_root, sqrt_mod,
    sub_mod, PRIME_BOUND,
};

/// A splitting field: GF(2), GF(p), GF(p²) or a multi-quadratic tower over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Char2,
    Prime(u64),
    Quadratic(QuadraticField),
    RationalTower(Tower),
}

/// A scalar. `Residue` serves GF(2) and GF(p); `Pair(a, b)` is a + b·ζ in GF(p²).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Residue(u64),
    Pair(u64, u64),
    Tower(TowerElement),
}

/// Build the splitting field for a characteristic.
///
/// Characteristic 2 gives GF(2); an odd prime p gives GF(p²) in its pinned
/// presentation (which already holds √x for every x ∈ GF(p), so the request
/// list is ignored); characteristic 0 gives the smallest canonical tower
/// holding √d for each requested d.
pub fn make_field(characteristic: i64, needs_square_roots_of: &[i64]) -> Result<FieldDescriptor> {
    match characteristic {
        0 => Ok(FieldDescriptor::RationalTower(Tower::with_square_roots(
            needs_square_roots_of,
        ))),
        2 => Ok(FieldDescriptor::Char2),
        p if p > 2 && (p as u64) < PRIME_BOUND && is_prime(p as u64) => {
            Ok(FieldDescriptor::Quadratic(QuadraticField::standard(p as u64)?))
        }
        other => Err(Error::InvalidField(format!(
            "characteristic {other} is not 0, 2 or an odd prime below 2^31"
        ))),
    }
}

impl FieldDescriptor {
    /// GF(p) for an odd prime p.
    pub fn prime(p: u64) -> Result<FieldDescriptor> {
        if p == 2 {
            return Ok(FieldDescriptor::Char2);
        }
        if !is_prime(p) || p >= PRIME_BOUND {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldDescriptor::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Char2 => 2,
            FieldDescriptor::Prime(p) => *p,
            FieldDescriptor::Quadratic(q) => q.p(),
            FieldDescriptor::RationalTower(_) => 0,
        }
    }

    /// Number of elements, or `None` for characteristic 0.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldDescriptor::Char2 => Some(2),
            FieldDescriptor::Prime(p) => Some(*p),
            FieldDescriptor::Quadratic(q) => Some(q.p() * q.p()),
            FieldDescriptor::RationalTower(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldDescriptor::Char2 | FieldDescriptor::Prime(_) => FieldElement::Residue(0),
            FieldDescriptor::Quadratic(_) => FieldElement::Pair(0, 0),
            FieldDescriptor::RationalTower(t) => FieldElement::Tower(t.zero()),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.int_scalar(1)
    }

    /// The image of an integer under ℤ → K.
    pub fn int_scalar(&self, mu: i64) -> FieldElement {
        match self {
            FieldDescriptor::Char2 => FieldElement::Residue(reduce_i64(mu, 2)),
            FieldDescriptor::Prime(p) => FieldElement::Residue(reduce_i64(mu, *p)),
            FieldDescriptor::Quadratic(q) => FieldElement::Pair(reduce_i64(mu, q.p()), 0),
            FieldDescriptor::RationalTower(t) => FieldElement::Tower(t.from_int(mu)),
        }
    }

    /// Does `x` belong to this field (right variant, reduced, canonical)?
    pub fn contains(&self, x: &FieldElement) -> bool {
        match (self, x) {
            (FieldDescriptor::Char2, FieldElement::Residue(a)) => *a < 2,
            (FieldDescriptor::Prime(p), FieldElement::Residue(a)) => a < p,
            (FieldDescriptor::Quadratic(q), FieldElement::Pair(a, b)) => *a < q.p() && *b < q.p(),
            (FieldDescriptor::RationalTower(t), FieldElement::Tower(e)) => t.contains(e),
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &FieldElement) -> bool {
        x.is_zero()
    }

    #[inline]
    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, x, y) {
            (FieldDescriptor::Char2, Residue(a), Residue(b)) => Residue(a ^ b),
            (FieldDescriptor::Prime(p), Residue(a), Residue(b)) => Residue(add_mod(*a, *b, *p)),
            (FieldDescriptor::Quadratic(q), Pair(a, b), Pair(c, d)) => {
                let (u, v) = q.add((*a, *b), (*c, *d));
                Pair(u, v)
            }
            (FieldDescriptor::RationalTower(t), Tower(a), Tower(b)) => Tower(t.add(a, b)),
            _ => mixed(),
        }
    }

    #[inline]
    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, x, y) {
            (FieldDescriptor::Char2, Residue(a), Residue(b)) => Residue(a ^ b),
            (FieldDescriptor::Prime(p), Residue(a), Residue(b)) => Residue(sub_mod(*a, *b, *p)),
            (FieldDescriptor::Quadratic(q), Pair(a, b), Pair(c, d)) => {
                let (u, v) = q.sub((*a, *b), (*c, *d));
                Pair(u, v)
            }
            (FieldDescriptor::RationalTower(t), Tower(a), Tower(b)) => Tower(t.sub(a, b)),
            _ => mixed(),
        }
    }

    #[inline]
    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, x) {
            (FieldDescriptor::Char2, Residue(a)) => Residue(*a),
            (FieldDescriptor::Prime(p), Residue(a)) => Residue(neg_mod(*a, *p)),
            (FieldDescriptor::Quadratic(q), Pair(a, b)) => {
                let (u, v) = q.neg((*a, *b));
                Pair(u, v)
            }
            (FieldDescriptor::RationalTower(t), Tower(a)) => Tower(t.neg(a)),
            _ => mixed(),
        }
    }

    #[inline]
    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, x, y) {
            (FieldDescriptor::Char2, Residue(a), Residue(b)) => Residue(a & b),
            (FieldDescriptor::Prime(p), Residue(a), Residue(b)) => Residue(mul_mod(*a, *b, *p)),
            (FieldDescriptor::Quadratic(q), Pair(a, b), Pair(c, d)) => {
                let (u, v) = q.mul((*a, *b), (*c, *d));
                Pair(u, v)
            }
            (FieldDescriptor::RationalTower(t), Tower(a), Tower(b)) => Tower(t.mul(a, b)),
            _ => mixed(),
        }
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        use FieldElement::*;
        match (self, x) {
            (FieldDescriptor::Char2, Residue(a)) => {
                if *a == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Residue(1))
                }
            }
            (FieldDescriptor::Prime(p), Residue(a)) => Ok(Residue(inv_mod(*a, *p)?)),
            (FieldDescriptor::Quadratic(q), Pair(a, b)) => {
                let (u, v) = q.inv((*a, *b))?;
                Ok(Pair(u, v))
            }
            (FieldDescriptor::RationalTower(t), Tower(a)) => Ok(Tower(t.inv(a)?)),
            _ => mixed(),
        }
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// The chosen generator ζ of the multiplicative group (finite fields only).
    pub fn primitive_element(&self) -> Option<FieldElement> {
        match self {
            FieldDescriptor::Char2 => Some(FieldElement::Residue(1)),
            FieldDescriptor::Prime(p) => Some(FieldElement::Residue(smallest_primitive_root(*p))),
            FieldDescriptor::Quadratic(_) => Some(FieldElement::Pair(0, 1)),
            FieldDescriptor::RationalTower(_) => None,
        }
    }

    /// A deterministic square root of `x`.
    ///
    /// GF(p²) and GF(p): the root with the lexicographically smaller
    /// coordinates; tower: the root whose lowest monomial has positive
    /// coefficient (for a monomial target, the monomial itself).
    pub fn square_root(&self, x: &FieldElement) -> Result<FieldElement> {
        let missing = || Error::NoSquareRootInField(self.format_element(x));
        match (self, x) {
            (FieldDescriptor::Char2, FieldElement::Residue(a)) => Ok(FieldElement::Residue(*a)),
            (FieldDescriptor::Prime(p), FieldElement::Residue(a)) => {
                sqrt_mod(*a, *p).map(FieldElement::Residue).ok_or_else(missing)
            }
            (FieldDescriptor::Quadratic(q), FieldElement::Pair(a, b)) => q
                .sqrt((*a, *b))
                .map(|(u, v)| FieldElement::Pair(u, v))
                .ok_or_else(missing),
            (FieldDescriptor::RationalTower(t), FieldElement::Tower(e)) => {
                t.sqrt(e).map(FieldElement::Tower).ok_or_else(missing)
            }
            _ => mixed(),
        }
    }

    /// A primitive fourth root of unity ω.
    ///
    /// In GF(p²) this is ζ^((p²−1)/4) for the pinned primitive ζ, and in GF(p)
    /// (p ≡ 1 mod 4) g^((p−1)/4) for the smallest primitive root g. In a tower
    /// it is the monomial √−1.
    pub fn fourth_root_of_unity(&self) -> Result<FieldElement> {
        match self {
            FieldDescriptor::Char2 => Err(Error::NoPrimitiveFourthRoot),
            FieldDescriptor::Prime(p) => {
                if p % 4 != 1 {
                    return Err(Error::NoPrimitiveFourthRoot);
                }
                let g = smallest_primitive_root(*p);
                Ok(FieldElement::Residue(pow_mod(g, (p - 1) / 4, *p)))
            }
            FieldDescriptor::Quadratic(q) => {
                let (u, v) = q.pow((0, 1), (q.p() * q.p() - 1) / 4);
                Ok(FieldElement::Pair(u, v))
            }
            FieldDescriptor::RationalTower(t) => t
                .radical(-1)
                .map(FieldElement::Tower)
                .ok_or(Error::NoPrimitiveFourthRoot),
        }
    }

    /// A uniformly random element for finite fields; a small integer
    /// combination of the radical monomials for towers.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        match self {
            FieldDescriptor::Char2 => FieldElement::Residue(rng.random_range(0..2)),
            FieldDescriptor::Prime(p) => FieldElement::Residue(rng.random_range(0..*p)),
            FieldDescriptor::Quadratic(q) => {
                FieldElement::Pair(rng.random_range(0..q.p()), rng.random_range(0..q.p()))
            }
            FieldDescriptor::RationalTower(t) => {
                let terms = (0..t.degree() as u32)
                    .filter_map(|m| {
                        // mostly rational, occasionally touching a radical
                        if m != 0 && rng.random_range(0..4) != 0 {
                            return None;
                        }
                        let c: i64 = rng.random_range(-3..=3);
                        Some((m, BigRational::from_integer(BigInt::from(c))))
                    })
                    .collect();
                FieldElement::Tower(t.from_terms(terms).expect("masks within the tower"))
            }
        }
    }

    /// Smallest field of this kind that also contains √d for each requested d.
    ///
    /// GF(p) grows to GF(p²); towers gain radicals; GF(2) and GF(p²) are
    /// returned unchanged.
    pub fn extended_for(&self, square_roots: &[i64]) -> FieldDescriptor {
        match self {
            FieldDescriptor::Prime(p) => {
                let needs = square_roots
                    .iter()
                    .any(|&d| sqrt_mod(reduce_i64(d, *p), *p).is_none());
                if needs {
                    FieldDescriptor::Quadratic(QuadraticField::standard(*p).expect("odd prime below bound"))
                } else {
                    self.clone()
                }
            }
            FieldDescriptor::RationalTower(t) => FieldDescriptor::RationalTower(t.extended(square_roots)),
            _ => self.clone(),
        }
    }

    /// Map an element of this field into a field that contains it.
    pub fn embed(&self, x: &FieldElement, target: &FieldDescriptor) -> Result<FieldElement> {
        if self == target {
            return Ok(x.clone());
        }
        match (self, target, x) {
            (FieldDescriptor::Prime(p), FieldDescriptor::Quadratic(q), FieldElement::Residue(a))
                if q.p() == *p =>
            {
                Ok(FieldElement::Pair(*a, 0))
            }
            (
                FieldDescriptor::RationalTower(small),
                FieldDescriptor::RationalTower(big),
                FieldElement::Tower(e),
            ) => Ok(FieldElement::Tower(small.embed(e, big)?)),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn tower(&self) -> Option<&Tower> {
        match self {
            FieldDescriptor::RationalTower(t) => Some(t),
            _ => None,
        }
    }

    /// Short human-readable name, e.g. `GF(9)` or `Q(√-1,√2)`.
    pub fn name(&self) -> String {
        match self {
            FieldDescriptor::Char2 => "GF(2)".into(),
            FieldDescriptor::Prime(p) => format!("GF({p})"),
            FieldDescriptor::Quadratic(q) => format!("GF({}^2)", q.p()),
            FieldDescriptor::RationalTower(t) => {
                let parts: Vec<String> = t.radicals().iter().map(|d| format!("√{d}")).collect();
                if parts.is_empty() {
                    "Q".into()
                } else {
                    format!("Q({})", parts.join(","))
                }
            }
        }
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Residue(a) => *a == 0,
            FieldElement::Pair(a, b) => *a == 0 && *b == 0,
            FieldElement::Tower(t) => t.is_zero(),
        }
    }
}

#[cold]
fn mixed() -> ! {
    panic!("arithmetic on elements of different fields")
}
