//! Representations of the double covers and relation-level checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::matrix::Matrix;
use crate::recipe::{Modifier, Recipe};

/// Which double cover the generators are meant for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cover {
    /// S̃ₙ: tᵢ² = z, (tᵢtⱼ)² = z for |i−j| > 1.
    Tilde,
    /// Ŝₙ: sᵢ² = 1, sᵢsⱼ = z·sⱼsᵢ for |i−j| > 1.
    Hat,
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cover::Tilde => "tilde",
            Cover::Hat => "hat",
        })
    }
}

impl std::str::FromStr for Cover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cover> {
        match s {
            "tilde" => Ok(Cover::Tilde),
            "hat" => Ok(Cover::Hat),
            _ => Err(Error::Parse(format!("cover must be tilde or hat, got '{s}'"))),
        }
    }
}

/// Generator images (T₁,…,Tₙ₋₁) of a matrix representation.
///
/// z acts as `z_sign`·I: +1 in characteristic 2, −1 otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    n: usize,
    field: FieldDescriptor,
    gens: Vec<Matrix>,
    z_sign: i8,
    recipe: Recipe,
    cover: Cover,
}

impl Representation {
    pub fn new(
        n: usize,
        field: FieldDescriptor,
        gens: Vec<Matrix>,
        recipe: Recipe,
        cover: Cover,
    ) -> Result<Representation> {
        if n < 2 {
            return Err(Error::OutOfDomain(format!("n = {n}; need n >= 2")));
        }
        if gens.len() != n - 1 {
            return Err(Error::InvalidRepresentation(format!(
                "{} generators for n = {n}",
                gens.len()
            )));
        }
        let d = gens[0].rows();
        for (i, g) in gens.iter().enumerate() {
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if g.rows() != d || g.cols() != d {
                return Err(Error::InvalidRepresentation(format!(
                    "generator {} is {}x{}, expected {d}x{d}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
        }
        if recipe.characteristic() != field.characteristic() {
            return Err(Error::InvalidRepresentation(
                "recipe characteristic differs from the field".into(),
            ));
        }
        if cover == Cover::Hat && field.characteristic() == 2 {
            return Err(Error::TwistUndefined);
        }
        recipe.validate(n)?;
        let z_sign = if field.characteristic() == 2 { 1 } else { -1 };
        Ok(Representation {
            n,
            field,
            gens,
            z_sign,
            recipe,
            cover,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    /// Tᵢ with the 1-based index used in the presentations.
    pub fn gen(&self, i: usize) -> &Matrix {
        &self.gens[i - 1]
    }

    pub fn degree(&self) -> usize {
        self.gens[0].rows()
    }

    pub fn z_sign(&self) -> i8 {
        self.z_sign
    }

    pub fn z_matrix(&self) -> Matrix {
        Matrix::scalar(&self.field, self.degree(), i64::from(self.z_sign))
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn cover(&self) -> Cover {
        self.cover
    }

    pub fn with_recipe(mut self, recipe: Recipe) -> Result<Representation> {
        recipe.validate(self.n)?;
        self.recipe = recipe;
        Ok(self)
    }

    /// The same matrices over a larger field.
    pub fn base_change(&self, target: &FieldDescriptor) -> Result<Representation> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.base_change(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            field: target.clone(),
            gens,
            ..self.clone()
        })
    }

    /// Block-diagonal sum; the result has an unspecified recipe.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.n != other.n || self.cover != other.cover {
            return Err(Error::DimensionMismatch("direct sum of different groups".into()));
        }
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                Matrix::block2x2(
                    a,
                    &Matrix::zero(&self.field, a.rows(), b.cols()),
                    &Matrix::zero(&self.field, b.rows(), a.cols()),
                    b,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(
            self.n,
            self.field.clone(),
            gens,
            Recipe::unspecified(self.characteristic()),
            self.cover,
        )
    }
}

/// δ(S̃ₙ): the degree of a basic spin representation in characteristic p.
pub fn delta_degree(n: usize, p: u64) -> Result<usize> {
    if n < 4 {
        return Err(Error::OutOfDomain(format!(
            "delta is defined for n >= 4, got {n}"
        )));
    }
    let k = n / 2;
    let halved = n.is_multiple_of(2) || (p != 0 && (n as u64).is_multiple_of(p));
    Ok(if halved { 1 << (k - 1) } else { 1 << k })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Z² = I
    ZSquare,
    /// Tᵢ² = Z, or Sᵢ² = I for Ŝₙ
    GenSquare,
    /// (TᵢTᵢ₊₁)³ = Z, or (SᵢSᵢ₊₁)³ = I for Ŝₙ
    Braid,
    /// (TᵢTⱼ)² = Z for |i−j| > 1
    FarCommute,
    /// SᵢSⱼ = −SⱼSᵢ for |i−j| > 1
    FarAnticommute,
    /// (ZTᵢTᵢ₊₁)² + ZTᵢTᵢ₊₁ + I = 0
    Delta,
    /// J² is the prescribed scalar, for the prefix of length m
    ComplemmaSquare,
    /// JTᵢ + TᵢJ = 0
    ComplemmaAnticommute,
    /// JTₘ₋₁ + Tₘ₋₁J = −m·I
    ComplemmaLast,
    /// Tₙ₋₁² = Z
    LastSquare,
    /// Tₙ₋₁Tᵢ + TᵢTₙ₋₁ = 0 for i ≤ n−3
    LastAnticommute,
    /// Tₙ₋₁Tₙ₋₂ + Tₙ₋₂Tₙ₋₁ = I
    LastAdjacent,
    /// X² + ZX + I = 0 and X³ = Z for X = Tₙ₋₂Tₙ₋₁
    LastCubic,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::ZSquare => "z_square",
            Relation::GenSquare => "gen_square",
            Relation::Braid => "braid",
            Relation::FarCommute => "far_commute",
            Relation::FarAnticommute => "far_anticommute",
            Relation::Delta => "delta",
            Relation::ComplemmaSquare => "complemma_square",
            Relation::ComplemmaAnticommute => "complemma_anticommute",
            Relation::ComplemmaLast => "complemma_last",
            Relation::LastSquare => "last_square",
            Relation::LastAnticommute => "last_anticommute",
            Relation::LastAdjacent => "last_adjacent",
            Relation::LastCubic => "last_cubic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub relation: Relation,
    pub indices: Vec<usize>,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(
            f,
            "{}({}): {}",
            self.relation,
            idx.join(","),
            if self.passed { "ok" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    fn record(&mut self, relation: Relation, indices: Vec<usize>, passed: bool) {
        self.checks.push(Check {
            relation,
            indices,
            passed,
        });
    }
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).expect("generators share shape and field")
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.add(b).expect("generators share shape and field")
}

/// The S̃ₙ presentation, with Z = z_sign·I.
pub fn check_relations_tilde(r: &Representation) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let z = r.z_matrix();
    let id = Matrix::identity(r.field(), r.degree());
    rep.record(Relation::ZSquare, vec![], mul(&z, &z) == id);
    let m = r.n - 1;
    for i in 1..=m {
        rep.record(Relation::GenSquare, vec![i], mul(r.gen(i), r.gen(i)) == z);
    }
    for i in 1..m {
        let p = mul(r.gen(i), r.gen(i + 1));
        rep.record(Relation::Braid, vec![i, i + 1], mul(&mul(&p, &p), &p) == z);
    }
    for i in 1..=m {
        for j in i + 2..=m {
            let p = mul(r.gen(i), r.gen(j));
            rep.record(Relation::FarCommute, vec![i, j], mul(&p, &p) == z);
        }
    }
    rep
}

/// The Ŝₙ presentation with z ↦ −I.
pub fn check_relations_hat(r: &Representation) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let id = Matrix::identity(r.field(), r.degree());
    let z = id.neg();
    rep.record(Relation::ZSquare, vec![], mul(&z, &z) == id);
    let m = r.n - 1;
    for i in 1..=m {
        rep.record(Relation::GenSquare, vec![i], mul(r.gen(i), r.gen(i)) == id);
    }
    for i in 1..m {
        let p = mul(r.gen(i), r.gen(i + 1));
        rep.record(Relation::Braid, vec![i, i + 1], mul(&mul(&p, &p), &p) == id);
    }
    for i in 1..=m {
        for j in i + 2..=m {
            let a = mul(r.gen(i), r.gen(j));
            let b = mul(r.gen(j), r.gen(i));
            rep.record(Relation::FarAnticommute, vec![i, j], a == b.neg());
        }
    }
    rep
}

/// Dispatch on the cover tag.
pub fn check_relations(r: &Representation) -> VerificationReport {
    match r.cover {
        Cover::Tilde => check_relations_tilde(r),
        Cover::Hat => check_relations_hat(r),
    }
}

/// Condition Δ for every i. For Ŝₙ the element ZTᵢTᵢ₊₁ is SᵢSᵢ₊₁.
pub fn check_delta(r: &Representation) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let id = Matrix::identity(r.field(), r.degree());
    for i in 1..r.n - 1 {
        let mut x = mul(r.gen(i), r.gen(i + 1));
        if r.cover == Cover::Tilde && r.z_sign < 0 {
            x = x.neg();
        }
        let lhs = add(&add(&mul(&x, &x), &x), &id);
        rep.record(Relation::Delta, vec![i], lhs.is_zero());
    }
    rep
}

/// Relations, Δ, then the identities for J = Σ k·Tₖ on every prefix
/// (T₁,…,Tₘ₋₁) with 2 ≤ m ≤ min(upto, n).
///
/// With N = m + 1: J² = (−(N−2)² + Σ_{k=1}^{N−3} k)·I, JTᵢ + TᵢJ = 0 for
/// i ≤ N−3, and JT_{N−2} + T_{N−2}J = (1−N)·I.
pub fn check_complemma(r: &Representation, upto: usize) -> Result<VerificationReport> {
    if r.cover != Cover::Tilde {
        return Err(Error::PreconditionViolated(
            "complemma applies to S̃ₙ representations".into(),
        ));
    }
    let mut rep = check_relations_tilde(r);
    rep.extend(check_delta(r));
    if !rep.passed() {
        return Ok(rep);
    }
    let f = r.field();
    let d = r.degree();
    let mut j = Matrix::zero(f, d, d);
    for m in 2..=upto.min(r.n) {
        let top = m - 1;
        j = add(&j, &r.gen(top).scale_int(top as i64));
        let big_n = (m + 1) as i64;
        let scalar = -(big_n - 2) * (big_n - 2) + (big_n - 3) * (big_n - 2) / 2;
        rep.record(
            Relation::ComplemmaSquare,
            vec![m],
            mul(&j, &j) == Matrix::scalar(f, d, scalar),
        );
        for i in 1..top {
            let s = add(&mul(&j, r.gen(i)), &mul(r.gen(i), &j));
            rep.record(Relation::ComplemmaAnticommute, vec![m, i], s.is_zero());
        }
        let s = add(&mul(&j, r.gen(top)), &mul(r.gen(top), &j));
        rep.record(
            Relation::ComplemmaLast,
            vec![m],
            s == Matrix::scalar(f, d, 1 - big_n),
        );
    }
    Ok(rep)
}

/// Σ_{k=1}^{count} k·Tₖ.
pub fn weighted_sum(r: &Representation, count: usize) -> Matrix {
    let d = r.degree();
    let mut j = Matrix::zero(r.field(), d, d);
    for k in 1..=count {
        j = add(&j, &r.gen(k).scale_int(k as i64));
    }
    j
}

/// The equations an appended generator Tₙ₋₁ must satisfy on top of a
/// representation of S̃ₙ₋₁ that already meets Δ, plus their consequence for
/// X = Tₙ₋₂Tₙ₋₁.
pub fn check_last_generator(r: &Representation) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let n = r.n;
    if n < 3 {
        return rep;
    }
    let z = r.z_matrix();
    let id = Matrix::identity(r.field(), r.degree());
    let last = r.gen(n - 1);
    rep.record(Relation::LastSquare, vec![n - 1], mul(last, last) == z);
    for i in 1..n - 2 {
        let s = add(&mul(last, r.gen(i)), &mul(r.gen(i), last));
        rep.record(Relation::LastAnticommute, vec![n - 1, i], s.is_zero());
    }
    let s = add(&mul(last, r.gen(n - 2)), &mul(r.gen(n - 2), last));
    rep.record(Relation::LastAdjacent, vec![n - 1, n - 2], s == id);
    let x = mul(r.gen(n - 2), last);
    let x2 = mul(&x, &x);
    let quadratic = add(&add(&x2, &mul(&z, &x)), &id).is_zero();
    rep.record(
        Relation::LastCubic,
        vec![n - 2, n - 1],
        quadratic && mul(&x2, &x) == z,
    );
    rep
}

/// sgn ⊗ R: every generator negated.
pub fn associate(r: &Representation) -> Representation {
    Representation {
        gens: r.gens.iter().map(Matrix::neg).collect(),
        recipe: r.recipe.with_modifier(Modifier::Associate),
        ..r.clone()
    }
}

/// Sᵢ = ω·Tᵢ, a representation of Ŝₙ.
pub fn twist_to_hat(r: &Representation) -> Result<Representation> {
    if r.characteristic() == 2 {
        return Err(Error::TwistUndefined);
    }
    if r.cover != Cover::Tilde {
        return Err(Error::PreconditionViolated(
            "input is already an Ŝₙ representation".into(),
        ));
    }
    let omega = r.field.fourth_root_of_unity()?;
    Ok(Representation {
        gens: r.gens.iter().map(|g| g.scale(&omega)).collect(),
        recipe: r.recipe.with_modifier(Modifier::Twist),
        cover: Cover::Hat,
        ..r.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn gf2_triple() -> Representation {
        let f = FieldDescriptor::Char2;
        let u = Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let s = Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]).unwrap();
        Representation::new(
            4,
            f.clone(),
            vec![u.clone(), s, u],
            Recipe::unspecified(2),
            Cover::Tilde,
        )
        .unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_degree(4, 0).unwrap(), 2);
        assert_eq!(delta_degree(7, 7).unwrap(), 4);
        assert_eq!(delta_degree(7, 5).unwrap(), 8);
        assert!(matches!(delta_degree(3, 0), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn gf2_triple_checks() {
        let r = gf2_triple();
        assert!(check_relations_tilde(&r).passed());
        assert!(check_delta(&r).passed());
        assert!(check_complemma(&r, 4).unwrap().passed());
        assert_eq!(associate(&r).gens(), r.gens());
        assert_eq!(twist_to_hat(&r), Err(Error::TwistUndefined));
    }

    #[test]
    fn identity_generators_fail() {
        let f = make_field(5, &[]).unwrap();
        let i = Matrix::identity(&f, 2);
        let r = Representation::new(
            4,
            f,
            vec![i.clone(), i.clone(), i],
            Recipe::unspecified(5),
            Cover::Tilde,
        )
        .unwrap();
        let rep = check_relations_tilde(&r);
        assert!(!rep.passed());
        assert!(rep
            .failures()
            .any(|c| c.relation == Relation::GenSquare && c.indices == [1]));
    }

    #[test]
    fn scalar_omega_fails_delta() {
        let f = make_field(5, &[]).unwrap();
        let w = Matrix::scalar_element(&f, 1, &f.fourth_root_of_unity().unwrap());
        let r = Representation::new(
            4,
            f,
            vec![w.clone(), w.clone(), w],
            Recipe::unspecified(5),
            Cover::Tilde,
        )
        .unwrap();
        assert!(!check_delta(&r).passed());
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        let f = make_field(3, &[]).unwrap();
        let a = Matrix::identity(&f, 2);
        let b = Matrix::identity(&f, 3);
        assert!(Representation::new(
            3,
            f.clone(),
            vec![a.clone(), b],
            Recipe::unspecified(3),
            Cover::Tilde
        )
        .is_err());
        assert!(Representation::new(4, f, vec![a], Recipe::unspecified(3), Cover::Tilde).is_err());
    }
}
