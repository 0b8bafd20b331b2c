//! Intertwiners and equivalence.

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

use super::norton::{is_irreducible, AlgebraWord, DEFAULT_RNG_SEED, SAMPLE_LIMIT};
use super::poly::{charpoly, roots_in_field};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::matrix::{EchelonBasis, Matrix};
use crate::spin::Representation;

/// Degrees up to this use the intertwiner solver in [`is_equivalent`].
pub const HOM_DEGREE_LIMIT: usize = 32;

/// Matrices M with M·Tᵢ^A = Tᵢ^B·M for all i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomResult {
    pub dim: usize,
    pub basis: Vec<Matrix>,
}

fn compatible(a: &Representation, b: &Representation) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.n() != b.n() || a.cover() != b.cover() {
        return Err(Error::DimensionMismatch(
            "representations of different groups".into(),
        ));
    }
    Ok(())
}

/// Rows normalized at their pivot; each row is reduced against all earlier
/// ones, so earlier rows never change and reduction coefficients stay valid.
struct SemiEchelon {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl SemiEchelon {
    fn reduce(
        &self,
        f: &FieldDescriptor,
        v: &[FieldElement],
    ) -> (Vec<(usize, FieldElement)>, Vec<FieldElement>) {
        let mut v = v.to_vec();
        let mut coeffs = Vec::new();
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            coeffs.push((k, c));
        }
        (coeffs, v)
    }

    /// Normalize and append a nonzero remainder; returns the scale used.
    fn push(&mut self, f: &FieldDescriptor, mut r: Vec<FieldElement>) -> FieldElement {
        let p = r.iter().position(|x| !x.is_zero()).expect("nonzero remainder");
        let lambda = r[p].clone();
        let inv = f.inv(&lambda).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push(r);
        self.pivots.push(p);
        lambda
    }
}

enum Origin {
    /// The k-th seed.
    Seed(usize),
    /// rows[k]·B_g.
    Image(usize, usize),
}

/// How a new row arose: origin minus Σ coeffs, all divided by `scale`.
struct RowRecord {
    origin: Origin,
    coeffs: Vec<(usize, FieldElement)>,
    scale: FieldElement,
}

/// rows[k]·B_g equals Σ coeffs, which φ must respect.
struct Constraint {
    k: usize,
    g: usize,
    coeffs: Vec<(usize, FieldElement)>,
}

/// Basis of Hom by spinning B and tracking φ on the spun basis.
///
/// φ(v) = v·M is pinned down by its values on the seeds (t·d_A unknowns);
/// every closing relation rows[k]·B_g = Σ cᵢ·rows[i] becomes the linear
/// condition φ(rows[k])·A_g = Σ cᵢ·φ(rows[i]).
pub fn hom_space(a: &Representation, b: &Representation) -> Result<HomResult> {
    compatible(a, b)?;
    let f = a.field();
    let (da, db) = (a.degree(), b.degree());
    let bg = b.gens();
    let ag = a.gens();

    let mut se = SemiEchelon {
        rows: Vec::new(),
        pivots: Vec::new(),
    };
    let mut records = Vec::new();
    let mut constraints = Vec::new();
    let mut seeds = 0;
    let mut next = 0;
    for i in 0..db {
        let mut unit = vec![f.zero(); db];
        unit[i] = f.one();
        let (coeffs, r) = se.reduce(f, &unit);
        if r.iter().all(FieldElement::is_zero) {
            continue;
        }
        let scale = se.push(f, r);
        records.push(RowRecord {
            origin: Origin::Seed(seeds),
            coeffs,
            scale,
        });
        seeds += 1;
        while next < se.rows.len() {
            for (g, m) in bg.iter().enumerate() {
                let img = m.vec_mul(&se.rows[next]);
                let (coeffs, r) = se.reduce(f, &img);
                if r.iter().all(FieldElement::is_zero) {
                    constraints.push(Constraint { k: next, g, coeffs });
                } else {
                    let scale = se.push(f, r);
                    records.push(RowRecord {
                        origin: Origin::Image(next, g),
                        coeffs,
                        scale,
                    });
                }
            }
            next += 1;
        }
    }

    // φ(rows[k]) = y·C_k with y ∈ K^unknowns
    let unknowns = seeds * da;
    let combine = |base: Matrix, coeffs: &[(usize, FieldElement)], cs: &[Matrix]| -> Matrix {
        coeffs
            .iter()
            .fold(base, |acc, (i, c)| acc.sub(&cs[*i].scale(c)).expect("same shape"))
    };
    let mut cs: Vec<Matrix> = Vec::with_capacity(db);
    for rec in &records {
        let base = match rec.origin {
            Origin::Seed(s) => {
                let mut m = Matrix::zero(f, unknowns, da);
                for j in 0..da {
                    m.set(s * da + j, j, f.one());
                }
                m
            }
            Origin::Image(k, g) => cs[k].mul(&ag[g])?,
        };
        let inv = f.inv(&rec.scale)?;
        cs.push(combine(base, &rec.coeffs, &cs).scale(&inv));
    }
    let mut conditions = EchelonBasis::new(f, unknowns);
    for c in &constraints {
        if conditions.dim() == unknowns {
            break;
        }
        let dmat = combine(cs[c.k].mul(&ag[c.g])?, &c.coeffs, &cs);
        for col in 0..da {
            let v: Vec<FieldElement> = (0..unknowns).map(|u| dmat.get(u, col).clone()).collect();
            conditions.insert(&v);
        }
    }
    let solutions = match conditions.to_matrix() {
        Some(m) => m.right_nullspace_rows(),
        None => (0..unknowns)
            .map(|u| {
                let mut v = vec![f.zero(); unknowns];
                v[u] = f.one();
                v
            })
            .collect(),
    };
    if solutions.is_empty() {
        return Ok(HomResult {
            dim: 0,
            basis: Vec::new(),
        });
    }
    let e = Matrix::from_rows(f.clone(), se.rows.clone())?;
    let e_inv = e.inverse()?;
    let mut basis = Vec::with_capacity(solutions.len());
    for y in &solutions {
        let phi_rows = cs.iter().map(|c| c.vec_mul(y)).collect();
        let phi = Matrix::from_rows(f.clone(), phi_rows)?;
        basis.push(e_inv.mul(&phi)?);
    }
    Ok(HomResult {
        dim: basis.len(),
        basis,
    })
}

/// dim End(R).
pub fn end_dim(r: &Representation) -> Result<usize> {
    Ok(hom_space(r, r)?.dim)
}

/// Equivalence of irreducible representations.
///
/// Reducible inputs are rejected with `NotIrreducible`. Degrees up to
/// [`HOM_DEGREE_LIMIT`] (and every characteristic-0 case) use the
/// intertwiner dimension; larger finite-field cases compare standard bases.
pub fn is_equivalent(a: &Representation, b: &Representation) -> Result<bool> {
    compatible(a, b)?;
    for (name, r) in [("first", a), ("second", b)] {
        if !is_irreducible(r, DEFAULT_RNG_SEED)?.is_irreducible() {
            return Err(Error::NotIrreducible(format!(
                "{name} representation is reducible"
            )));
        }
    }
    equivalent_irreducibles(a, b)
}

/// [`is_equivalent`] without re-checking irreducibility.
pub(crate) fn equivalent_irreducibles(a: &Representation, b: &Representation) -> Result<bool> {
    if a.degree() != b.degree() {
        return Ok(false);
    }
    if a.degree() <= HOM_DEGREE_LIMIT || !a.field().is_finite() {
        return Ok(hom_space(a, b)?.dim >= 1);
    }
    standard_basis_equivalent(a, b)
}

/// Spin `seed` recording which (row, generator) pair produced each new
/// vector. Rows are kept raw so the schedule can be replayed elsewhere.
fn standard_basis(seed: &[FieldElement], gens: &[Matrix]) -> (Vec<Vec<FieldElement>>, Vec<(usize, usize)>) {
    let f = gens[0].field();
    let d = gens[0].rows();
    let mut e = EchelonBasis::new(f, d);
    e.insert(seed);
    let mut raw = vec![seed.to_vec()];
    let mut schedule = Vec::new();
    let mut k = 0;
    while k < raw.len() && raw.len() < d {
        for (g, m) in gens.iter().enumerate() {
            let v = m.vec_mul(&raw[k]);
            if e.insert(&v).is_some() {
                raw.push(v);
                schedule.push((k, g));
            }
        }
        k += 1;
    }
    (raw, schedule)
}

fn in_basis(basis: &Matrix, basis_inv: &Matrix, g: &Matrix) -> Matrix {
    basis.mul(g).and_then(|m| m.mul(basis_inv)).expect("square")
}

/// Compare both modules in the standard basis spun from the nullspace of a
/// shared algebra element with a simple eigenvalue.
fn standard_basis_equivalent(a: &Representation, b: &Representation) -> Result<bool> {
    let f = a.field();
    let d = a.degree();
    let mut rng = SplitMix64::seed_from_u64(DEFAULT_RNG_SEED);
    for _ in 0..SAMPLE_LIMIT {
        let word = AlgebraWord::random(f, a.gens().len(), &mut rng);
        let xa = word.evaluate(a.gens());
        let roots = roots_in_field(f, &charpoly(&xa), &mut rng);
        for lambda in roots {
            let shift = Matrix::scalar_element(f, d, &lambda);
            let na = xa.sub(&shift)?.left_nullspace_rows();
            if na.len() != 1 {
                continue;
            }
            let nb = word.evaluate(b.gens()).sub(&shift)?.left_nullspace_rows();
            if nb.len() != 1 {
                return Ok(false);
            }
            let (sa, schedule) = standard_basis(&na[0], a.gens());
            if sa.len() < d {
                return Err(Error::NotIrreducible("first representation is reducible".into()));
            }
            let mut sb = vec![nb[0].clone()];
            for &(k, g) in &schedule {
                let v = b.gens()[g].vec_mul(&sb[k]);
                sb.push(v);
            }
            let ma = Matrix::from_rows(f.clone(), sa)?;
            let mb = Matrix::from_rows(f.clone(), sb)?;
            let Ok(mb_inv) = mb.inverse() else {
                return Ok(false);
            };
            let ma_inv = ma.inverse()?;
            return Ok(a
                .gens()
                .iter()
                .zip(b.gens())
                .all(|(ga, gb)| in_basis(&ma, &ma_inv, ga) == in_basis(&mb, &mb_inv, gb)));
        }
    }
    Err(Error::Inconclusive(format!(
        "no algebra element with a simple eigenvalue in {SAMPLE_LIMIT} samples"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::recipe::Recipe;
    use crate::spin::Cover;

    #[test]
    fn hom_between_scalar_modules() {
        let f = make_field(7, &[]).unwrap();
        let w = f.fourth_root_of_unity().unwrap();
        let g = Matrix::scalar_element(&f, 1, &w);
        let r = Representation::new(
            2,
            f.clone(),
            vec![g.clone()],
            Recipe::unspecified(7),
            Cover::Tilde,
        )
        .unwrap();
        let s =
            Representation::new(2, f.clone(), vec![g.neg()], Recipe::unspecified(7), Cover::Tilde).unwrap();
        assert_eq!(end_dim(&r).unwrap(), 1);
        assert_eq!(hom_space(&r, &s).unwrap().dim, 0);
        let sum = r.direct_sum(&r).unwrap();
        assert_eq!(end_dim(&sum).unwrap(), 4);
        let mixed = r.direct_sum(&s).unwrap();
        assert_eq!(end_dim(&mixed).unwrap(), 2);
        assert_eq!(hom_space(&mixed, &r).unwrap().dim, 1);
    }
}
