//! The splitting of 𝔖(𝔖(R)) at even n into the two 𝔖₂ extensions.

use super::SubmoduleBasis;
use crate::construct::{extend_s2_unchecked, s2_field};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::recipe::{Recipe, SignChoice};
use crate::spin::{check_delta, check_relations_tilde, Cover, Representation};

#[derive(Debug, Clone)]
pub struct CaseIIDecomposition {
    /// Rows of [I, −T⁺ₙ₋₁].
    pub plus: SubmoduleBasis,
    /// Rows of [I, −T⁻ₙ₋₁].
    pub minus: SubmoduleBasis,
    /// The 𝔖₂ extensions of 𝔖(R) with either sign.
    pub t_plus: Representation,
    pub t_minus: Representation,
    /// V, over the field that contains both α±.
    pub module: Representation,
}

fn top_left(m: &Matrix, size: usize) -> Matrix {
    m.submatrix(0, 0, size, size)
}

/// Given V = 𝔖(𝔖(R)) for a representation R of S̃ₙ₋₂ (n even), return the
/// submodules spanned by the rows of [I, −T±ₙ₋₁] where T±ₙ₋₁ are the
/// matrices appended by 𝔖₂ with either sign.
pub fn decompose_case_ii(v: &Representation) -> Result<CaseIIDecomposition> {
    let n = v.n();
    let p = v.characteristic();
    let violated = |why: String| Err(Error::PreconditionViolated(why));
    if v.cover() != Cover::Tilde || n < 4 || !n.is_multiple_of(2) {
        return violated(format!("need an S̃ₙ representation with even n >= 4, got n = {n}"));
    }
    if p != 0 && [n, n - 1, n - 2].iter().any(|&m| (m as u64).is_multiple_of(p)) {
        return violated(format!("characteristic {p} divides n(n-1)(n-2) for n = {n}"));
    }
    if !v.degree().is_multiple_of(4) {
        return violated("degree is not a multiple of 4".into());
    }
    let d = v.degree() / 4;
    let t_gens: Vec<Matrix> = v.gens()[..n - 2].iter().map(|g| top_left(g, 2 * d)).collect();
    let r_gens: Vec<Matrix> = t_gens[..n - 3].iter().map(|g| top_left(g, d)).collect();
    let steps = v.recipe().steps();
    let recipe = if steps.len() == n - 1 {
        Recipe::new(p, steps[..n - 3].to_vec(), Vec::new())
    } else {
        Recipe::unspecified(p)
    };
    let r = Representation::new(n - 2, v.field().clone(), r_gens, recipe, Cover::Tilde)?;
    let rebuilt = crate::construct::double_s(&crate::construct::double_s(&r)?)?;
    if rebuilt.gens() != v.gens() {
        return violated("input is not a doubling of a doubling".into());
    }
    let mut rep = check_relations_tilde(&r);
    rep.extend(check_delta(&r));
    if let Some(bad) = rep.failures().next() {
        return violated(format!("inner representation fails {bad}"));
    }
    let field = s2_field(r.field(), n);
    let r = r.base_change(&field)?;
    let module = rebuilt.base_change(&field)?;
    let (_, t_plus) = extend_s2_unchecked(&r, SignChoice::Plus)?;
    let (_, t_minus) = extend_s2_unchecked(&r, SignChoice::Minus)?;
    let id = Matrix::identity(&field, 2 * d);
    let basis = |t: &Representation| -> Result<SubmoduleBasis> {
        SubmoduleBasis::from_rows(&Matrix::hstack(&id, &t.gen(n - 1).neg())?)
    };
    let plus = basis(&t_plus)?;
    let minus = basis(&t_minus)?;
    for (name, b) in [("plus", &plus), ("minus", &minus)] {
        if !b.is_invariant(module.gens()) {
            return Err(Error::InternalChainMismatch(format!(
                "{name} basis is not invariant"
            )));
        }
    }
    let both = Matrix::vstack(plus.matrix(), minus.matrix())?;
    if both.rank() != module.degree() {
        return Err(Error::InternalChainMismatch(
            "the two submodules are not complementary".into(),
        ));
    }
    Ok(CaseIIDecomposition {
        plus,
        minus,
        t_plus,
        t_minus,
        module,
    })
}
