//! Submodules, irreducibility, composition factors and intertwiners.
//!
//! Vectors are rows and act on the right: the submodule spun from `v` is the
//! span of all `v·g₁⋯g_k`.

mod chop;
mod decompose;
mod hom;
mod norton;
pub mod poly;

pub use chop::{chop, ChopReport, Factor};
pub use decompose::{decompose_case_ii, CaseIIDecomposition};
pub use hom::{end_dim, hom_space, is_equivalent, HomResult};
pub use norton::{is_irreducible, Verdict, DEFAULT_RNG_SEED, SAMPLE_LIMIT};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::matrix::{EchelonBasis, Matrix};

/// An invariant subspace held as a reduced echelon row basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmoduleBasis {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl SubmoduleBasis {
    fn from_echelon(e: &EchelonBasis) -> SubmoduleBasis {
        SubmoduleBasis {
            basis: e.to_matrix().expect("nonzero subspace"),
            pivots: e.pivots().to_vec(),
        }
    }

    /// The row space of `rows`, echelonized. Invariance is not checked here.
    pub fn from_rows(rows: &Matrix) -> Result<SubmoduleBasis> {
        let mut e = EchelonBasis::new(rows.field(), rows.cols());
        for i in 0..rows.rows() {
            e.insert(rows.row(i));
        }
        if e.dim() == 0 {
            return Err(Error::DimensionMismatch("zero subspace".into()));
        }
        Ok(SubmoduleBasis::from_echelon(&e))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_proper(&self) -> bool {
        self.dim() < self.ambient_dim()
    }

    fn echelon(&self) -> EchelonBasis {
        let mut e = EchelonBasis::new(self.basis.field(), self.ambient_dim());
        for i in 0..self.dim() {
            e.insert(self.basis.row(i));
        }
        e
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.echelon().contains(v)
    }

    /// Whether row-space·g ⊆ row-space for every g.
    pub fn is_invariant(&self, gens: &[Matrix]) -> bool {
        let e = self.echelon();
        gens.iter()
            .all(|g| (0..self.dim()).all(|i| e.contains(&g.vec_mul(self.basis.row(i)))))
    }

    /// Matrices of the generators on the submodule, in the basis rows.
    pub fn restrict(&self, gens: &[Matrix]) -> Vec<Matrix> {
        let f = self.basis.field();
        gens.iter()
            .map(|g| {
                let rows = (0..self.dim())
                    .map(|i| {
                        let img = g.vec_mul(self.basis.row(i));
                        self.pivots.iter().map(|&p| img[p].clone()).collect()
                    })
                    .collect();
                Matrix::from_rows(f.clone(), rows).expect("square block")
            })
            .collect()
    }

    /// Matrices of the generators on the quotient, in the images of the
    /// unit vectors at non-pivot positions.
    pub fn quotient(&self, gens: &[Matrix]) -> Vec<Matrix> {
        let f = self.basis.field();
        let e = self.echelon();
        let d = self.ambient_dim();
        let free: Vec<usize> = (0..d).filter(|c| !self.pivots.contains(c)).collect();
        gens.iter()
            .map(|g| {
                let rows = free
                    .iter()
                    .map(|&q| {
                        let r = e.reduce(g.row(q));
                        free.iter().map(|&c| r[c].clone()).collect()
                    })
                    .collect();
                Matrix::from_rows(f.clone(), rows).expect("square block")
            })
            .collect()
    }
}

/// The smallest subspace containing `seeds` and closed under every generator.
pub fn spin_many(
    field: &FieldDescriptor,
    dim: usize,
    seeds: &[Vec<FieldElement>],
    gens: &[Matrix],
) -> EchelonBasis {
    let mut e = EchelonBasis::new(field, dim);
    let mut queue = Vec::new();
    for s in seeds {
        if let Some(r) = e.insert(s) {
            queue.push(r);
        }
    }
    let mut next = 0;
    while next < queue.len() && e.dim() < dim {
        let v = queue[next].clone();
        next += 1;
        for g in gens {
            if let Some(r) = e.insert(&g.vec_mul(&v)) {
                queue.push(r);
            }
        }
    }
    e
}

/// Spin a nonzero seed under the generators.
pub fn spin(seed: &[FieldElement], gens: &[Matrix]) -> Result<SubmoduleBasis> {
    let g = gens
        .first()
        .ok_or_else(|| Error::DimensionMismatch("no generators".into()))?;
    if seed.len() != g.rows() {
        return Err(Error::DimensionMismatch("seed length differs from degree".into()));
    }
    if seed.iter().all(FieldElement::is_zero) {
        return Err(Error::PreconditionViolated("spin seed must be nonzero".into()));
    }
    let e = spin_many(g.field(), g.rows(), &[seed.to_vec()], gens);
    Ok(SubmoduleBasis::from_echelon(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn spin_under_identity_is_the_line() {
        let f = make_field(5, &[]).unwrap();
        let v = vec![f.int_scalar(2), f.zero(), f.one()];
        let s = spin(&v, &[Matrix::identity(&f, 3)]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v));
    }

    #[test]
    fn spin_gf2_triple_fills() {
        let f = FieldDescriptor::Char2;
        let u = Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let s = Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]).unwrap();
        let gens = [u.clone(), s, u];
        let sub = spin(&[f.one(), f.zero()], &gens).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(sub.is_invariant(&gens));
    }

    #[test]
    fn restrict_and_quotient_of_triangular() {
        let f = make_field(0, &[]).unwrap();
        let g = Matrix::from_ints(&f, &[&[2, 0], &[3, 5]]).unwrap();
        // e₁·g = 2e₁, so e₁ spans an invariant line
        let sub = spin(&[f.one(), f.zero()], std::slice::from_ref(&g)).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(
            sub.restrict(std::slice::from_ref(&g))[0],
            Matrix::from_ints(&f, &[&[2]]).unwrap()
        );
        assert_eq!(sub.quotient(&[g])[0], Matrix::from_ints(&f, &[&[5]]).unwrap());
    }
}
