//! The inductive constructions 𝔖, 𝔖₁, 𝔖₂, 𝔖₃ and the dispatcher chaining them.
//!
//! The public `extend_*` functions check their inputs (relations and Δ
//! included) before building. The dispatcher skips those input checks since
//! every stage it feeds forward was produced by the previous step.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{make_field, FieldDescriptor, FieldElement};
use crate::matrix::Matrix;
use crate::recipe::{Recipe, SignChoice, Step};
use crate::spin::{check_delta, check_relations_tilde, weighted_sum, Cover, Representation};

/// The S̃₂ starting point: ([1]) in characteristic 2, ([ω]) otherwise.
pub fn seed(field: &FieldDescriptor) -> Result<Representation> {
    let field = match field {
        FieldDescriptor::RationalTower(_) => field.extended_for(&[-1]),
        _ => field.clone(),
    };
    let entry = if field.characteristic() == 2 {
        field.one()
    } else {
        field.fourth_root_of_unity()?
    };
    let g = Matrix::scalar_element(&field, 1, &entry);
    let p = field.characteristic();
    Representation::new(2, field, vec![g], Recipe::seed(p), Cover::Tilde)
}

pub(crate) fn require_tilde(t: &Representation) -> Result<()> {
    if t.cover() != Cover::Tilde {
        return Err(Error::PreconditionViolated(
            "constructions take S̃ₙ representations".into(),
        ));
    }
    Ok(())
}

fn require_delta_rep(t: &Representation) -> Result<()> {
    require_tilde(t)?;
    let mut rep = check_relations_tilde(t);
    rep.extend(check_delta(t));
    if let Some(bad) = rep.failures().next() {
        return Err(Error::PreconditionViolated(format!("input fails {bad}")));
    }
    Ok(())
}

fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    Matrix::block2x2(a, b, c, d).expect("blocks of equal size")
}

/// 𝔖: a representation of S̃ₙ from one of S̃ₙ₋₁, doubling the degree.
pub fn double_s(t: &Representation) -> Result<Representation> {
    require_tilde(t)?;
    Ok(double_s_unchecked(t))
}

fn double_s_unchecked(t: &Representation) -> Representation {
    let f = t.field();
    let d = t.degree();
    let n = t.n() + 1;
    let id = Matrix::identity(f, d);
    let zero = Matrix::zero(f, d, d);
    let mut gens = Vec::with_capacity(n - 1);
    for i in 1..=n - 3 {
        let g = t.gen(i);
        gens.push(block(g, &zero, &zero, &g.neg()));
    }
    let g = t.gen(n - 2);
    gens.push(block(g, &id.neg(), &zero, &g.neg()));
    gens.push(block(&zero, &id, &id.neg(), &zero));
    Representation::new(
        n,
        f.clone(),
        gens,
        t.recipe().with_step(Step::DoubleS),
        Cover::Tilde,
    )
    .expect("doubling preserves shape")
}

/// 𝔖₁: append Tₙ₋₁ = J (or J + I when p = 2 and n ≡ 2 mod 4), J = Σ k·Tₖ.
pub fn extend_s1(t: &Representation, n: usize) -> Result<Representation> {
    if n != t.n() + 1 {
        return Err(Error::PreconditionViolated(format!(
            "extend_s1 to n = {n} needs a representation of S̃{}",
            n - 1
        )));
    }
    let p = t.characteristic();
    if p == 0 || !(n as u64).is_multiple_of(p) {
        return Err(Error::PreconditionViolated(format!(
            "characteristic {p} does not divide n = {n}"
        )));
    }
    require_delta_rep(t)?;
    Ok(extend_s1_unchecked(t))
}

fn extend_s1_unchecked(t: &Representation) -> Representation {
    let n = t.n() + 1;
    let mut j = weighted_sum(t, n - 2);
    if t.characteristic() == 2 && n % 4 == 2 {
        j = j
            .add(&Matrix::identity(t.field(), t.degree()))
            .expect("same shape");
    }
    let mut gens = t.gens().to_vec();
    gens.push(j);
    Representation::new(
        n,
        t.field().clone(),
        gens,
        t.recipe().with_step(Step::ExtendS1),
        Cover::Tilde,
    )
    .expect("same shape")
}

/// The constant α of 𝔖₂ at n: (n−1)⁻¹(1 ± ω·√(n(n−2)⁻¹)).
///
/// ω·√(n(n−2)⁻¹) is a square root of −n(n−2)⁻¹; writing it through ω keeps
/// the n = 4 case in the form 3⁻¹(1 ± ω√2).
pub fn s2_alpha(field: &FieldDescriptor, n: usize, sign: SignChoice) -> Result<FieldElement> {
    let n = n as i64;
    let ratio = field.div(&field.int_scalar(n), &field.int_scalar(n - 2))?;
    let mut root = field.mul(&field.fourth_root_of_unity()?, &field.square_root(&ratio)?);
    if sign == SignChoice::Minus {
        root = field.neg(&root);
    }
    field.div(&field.add(&field.one(), &root), &field.int_scalar(n - 1))
}

/// The field an 𝔖₂ step at n needs on top of `field`.
pub(crate) fn s2_field(field: &FieldDescriptor, n: usize) -> FieldDescriptor {
    let n = n as i64;
    field.extended_for(&[-1, n * (n - 2)])
}

/// 𝔖₂: from S̃ₙ₋₂, form 𝔖(S) and append Tₙ₋₁ = [−αJ, (β−1)I; βI, αJ] with
/// J = Σ_{k=1}^{n−3} k·Sₖ and β = (n−2)α.
///
/// The field is enlarged when it lacks α.
pub fn extend_s2(s: &Representation, n: usize, sign: SignChoice) -> Result<Representation> {
    if n != s.n() + 2 {
        return Err(Error::PreconditionViolated(format!(
            "extend_s2 to n = {n} needs a representation of S̃{}",
            n.saturating_sub(2)
        )));
    }
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::PreconditionViolated(format!(
            "extend_s2 needs even n >= 4, got {n}"
        )));
    }
    let p = s.characteristic();
    if p != 0 && [n, n - 1, n - 2].iter().any(|&v| (v as u64).is_multiple_of(p)) {
        return Err(Error::PreconditionViolated(format!(
            "characteristic {p} divides n(n-1)(n-2) for n = {n}"
        )));
    }
    require_delta_rep(s)?;
    let target = s2_field(s.field(), n);
    let s = s.base_change(&target)?;
    extend_s2_unchecked(&s, sign).map(|(_, r)| r)
}

/// Returns (𝔖(S), 𝔖₂(S)).
pub(crate) fn extend_s2_unchecked(
    s: &Representation,
    sign: SignChoice,
) -> Result<(Representation, Representation)> {
    let n = s.n() + 2;
    let f = s.field();
    let d = s.degree();
    let doubled = double_s_unchecked(s);
    let alpha = s2_alpha(f, n, sign)?;
    let beta = f.mul(&f.int_scalar(n as i64 - 2), &alpha);
    let j = weighted_sum(s, n - 3);
    let aj = j.scale(&alpha);
    let id = Matrix::identity(f, d);
    let last = block(
        &aj.neg(),
        &id.scale(&f.sub(&beta, &f.one())),
        &id.scale(&beta),
        &aj,
    );
    let mut gens = doubled.gens().to_vec();
    gens.push(last);
    let recipe = doubled.recipe().with_step(Step::ExtendS2(sign));
    let out = Representation::new(n, f.clone(), gens, recipe, Cover::Tilde)?;
    Ok((doubled, out))
}

/// 𝔖₃: from S̃ₙ₋₄, build 𝔖(T), 𝔖₁𝔖(T), 𝔖𝔖₁𝔖(T) and append
/// Tₙ₋₁ = [J, −I; 0, −J] with J = ±ω·[J∘, 2I; 2I, −J∘], J∘ = Σ_{k=1}^{n−5} k·Tₖ.
pub fn extend_s3(t: &Representation, n: usize, sign: SignChoice) -> Result<Representation> {
    if n != t.n() + 4 {
        return Err(Error::PreconditionViolated(format!(
            "extend_s3 to n = {n} needs a representation of S̃{}",
            n.saturating_sub(4)
        )));
    }
    let p = t.characteristic();
    if n < 8 || !n.is_multiple_of(2) || p < 3 || !(n as u64 - 2).is_multiple_of(p) {
        return Err(Error::PreconditionViolated(format!(
            "extend_s3 needs even n >= 8 and an odd characteristic dividing n-2; got n = {n}, p = {p}"
        )));
    }
    require_delta_rep(t)?;
    let target = t.field().extended_for(&[-1]);
    let t = t.base_change(&target)?;
    extend_s3_unchecked(&t, sign).map(|(_, r)| r)
}

/// Returns the three intermediate stages and the result.
fn extend_s3_unchecked(
    t: &Representation,
    sign: SignChoice,
) -> Result<([Representation; 3], Representation)> {
    let n = t.n() + 4;
    let f = t.field();
    let d = t.degree();
    let a = double_s_unchecked(t);
    let b = extend_s1_unchecked(&a);
    let c = double_s_unchecked(&b);
    let mut omega = f.fourth_root_of_unity()?;
    if sign == SignChoice::Minus {
        omega = f.neg(&omega);
    }
    let jc = weighted_sum(t, n - 5);
    let two = Matrix::scalar(f, d, 2);
    let j = block(&jc, &two, &two, &jc.neg()).scale(&omega);
    let id = Matrix::identity(f, 2 * d);
    let last = block(&j, &id.neg(), &Matrix::zero(f, 2 * d, 2 * d), &j.neg());
    let mut gens = c.gens().to_vec();
    gens.push(last);
    let recipe = c.recipe().with_step(Step::ExtendS3(sign));
    let out = Representation::new(n, f.clone(), gens, recipe, Cover::Tilde)?;
    Ok(([a, b, c], out))
}

/// Which construction produces S̃ₘ from earlier stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Row {
    Double,
    S1,
    S2,
    S3,
}

/// The row of the construction table for (m, p), m ≥ 4.
pub fn table_row(m: usize, p: u64) -> Row {
    let m64 = m as u64;
    let parity = if m % 2 == 1 { Row::Double } else { Row::S2 };
    match p {
        0 => parity,
        2 => {
            if m % 2 == 1 {
                Row::Double
            } else {
                Row::S1
            }
        }
        _ if m64.is_multiple_of(p) => Row::S1,
        _ if (m64 - 1).is_multiple_of(p) => Row::Double,
        _ if m.is_multiple_of(2) && (m64 - 2).is_multiple_of(p) => Row::S3,
        _ => parity,
    }
}

/// The field every stage up to n is built over.
pub fn chain_field(n: usize, characteristic: u64) -> Result<FieldDescriptor> {
    let p = i64::try_from(characteristic).map_err(|_| Error::InvalidField(characteristic.to_string()))?;
    if p != 0 {
        return make_field(p, &[]);
    }
    let mut radicals = vec![-1];
    for m in (4..=n as i64).step_by(2) {
        radicals.push(m * (m - 2));
    }
    make_field(0, &radicals)
}

fn sign_at(signs: &BTreeMap<usize, SignChoice>, m: usize) -> SignChoice {
    signs.get(&m).copied().unwrap_or_default()
}

/// All stages S̃₂,…,S̃ₙ of the chain (index m−2 holds S̃ₘ).
pub fn build_stages(
    n: usize,
    characteristic: u64,
    signs: &BTreeMap<usize, SignChoice>,
) -> Result<Vec<Representation>> {
    if n < 2 {
        return Err(Error::OutOfDomain(format!("n = {n}; need n >= 2")));
    }
    let p = characteristic;
    let field = chain_field(n, p)?;
    let mut signed = Vec::new();
    for m in 4..=n {
        if matches!(table_row(m, p), Row::S2 | Row::S3) {
            signed.push(m);
        }
    }
    if let Some(&m) = signs.keys().find(|m| !signed.contains(m)) {
        return Err(Error::PreconditionViolated(format!(
            "no sign choice at position {m} for characteristic {p}"
        )));
    }
    let mut stages = vec![seed(&field)?];
    if n >= 3 {
        let s3 = if p == 3 {
            extend_s1_unchecked(&stages[0])
        } else {
            double_s_unchecked(&stages[0])
        };
        stages.push(s3);
    }
    let mismatch = |m: usize, k: usize| {
        Error::InternalChainMismatch(format!(
            "stage {k} differs from the one forced by the step at {m}"
        ))
    };
    for m in 4..=n {
        let next = match table_row(m, p) {
            Row::Double => double_s_unchecked(&stages[m - 3]),
            Row::S1 => extend_s1_unchecked(&stages[m - 3]),
            Row::S2 => {
                let (doubled, out) = extend_s2_unchecked(&stages[m - 4], sign_at(signs, m))?;
                if doubled != stages[m - 3] {
                    return Err(mismatch(m, m - 1));
                }
                out
            }
            Row::S3 => {
                if m < 8 {
                    return Err(Error::InternalChainMismatch(format!("s3 row at m = {m}")));
                }
                let (mid, out) = extend_s3_unchecked(&stages[m - 6], sign_at(signs, m))?;
                for (k, stage) in mid.iter().enumerate() {
                    if stage != &stages[m - 5 + k] {
                        return Err(mismatch(m, m - 3 + k));
                    }
                }
                out
            }
        };
        stages.push(next);
    }
    Ok(stages)
}

/// A basic spin representation of S̃ₙ built by chaining the constructions.
pub fn build_chain(
    n: usize,
    characteristic: u64,
    signs: &BTreeMap<usize, SignChoice>,
) -> Result<Representation> {
    if n < 4 {
        return Err(Error::OutOfDomain(format!("build_chain needs n >= 4, got {n}")));
    }
    let mut stages = build_stages(n, characteristic, signs)?;
    Ok(stages.pop().expect("at least one stage"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> BTreeMap<usize, SignChoice> {
        BTreeMap::new()
    }

    #[test]
    fn gf2_chain_is_the_known_triple() {
        let f = FieldDescriptor::Char2;
        let r = build_chain(4, 2, &none()).unwrap();
        let u = Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let s = Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(r.gens(), &[u.clone(), s, u]);
        assert_eq!(r.recipe().steps(), &[Step::Seed, Step::DoubleS, Step::ExtendS1]);
    }

    #[test]
    fn gf9_bootstrap() {
        let stages = build_stages(3, 3, &none()).unwrap();
        let f = stages[0].field().clone();
        let w = f.fourth_root_of_unity().unwrap();
        assert_eq!(
            stages[1].gens(),
            &[
                Matrix::scalar_element(&f, 1, &w),
                Matrix::scalar_element(&f, 1, &w)
            ]
        );
    }

    #[test]
    fn table_rows() {
        assert_eq!(table_row(5, 5), Row::S1);
        assert_eq!(table_row(6, 5), Row::Double);
        assert_eq!(table_row(12, 5), Row::S3);
        assert_eq!(table_row(8, 3), Row::S3);
        assert_eq!(table_row(8, 7), Row::Double);
        assert_eq!(table_row(10, 7), Row::S2);
        assert_eq!(table_row(10, 0), Row::S2);
        assert_eq!(table_row(6, 2), Row::S1);
    }

    #[test]
    fn preconditions_are_typed() {
        let r = build_chain(4, 7, &none()).unwrap();
        assert!(matches!(extend_s1(&r, 5), Err(Error::PreconditionViolated(_))));
        let s = seed(r.field()).unwrap();
        assert!(extend_s2(&s, 4, SignChoice::Plus).is_ok());
        let s5 = seed(&make_field(5, &[]).unwrap()).unwrap();
        assert!(extend_s2(&s5, 4, SignChoice::Plus).is_ok());
        let s3 = seed(&make_field(3, &[]).unwrap()).unwrap();
        assert!(matches!(
            extend_s2(&s3, 4, SignChoice::Plus),
            Err(Error::PreconditionViolated(_))
        ));
        let mut signs = none();
        signs.insert(5, SignChoice::Minus);
        assert!(matches!(
            build_chain(6, 0, &signs),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn char0_tower_for_twelve() {
        let f = chain_field(12, 0).unwrap();
        assert_eq!(f.tower().unwrap().radicals(), &[-1, 2, 3, 5]);
    }
}
