//! Irreducibility testing.
//!
//! Finite fields use Norton's criterion on random algebra elements. In
//! characteristic 0 a module satisfying the group relations is semisimple, so
//! it is irreducible exactly when its endomorphism algebra is one-dimensional.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::poly::{charpoly, degree, eval_matrix, isolated_factors, minimal_polynomial};
use super::{hom_space, spin_many, SubmoduleBasis};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::matrix::Matrix;
use crate::spin::{check_relations, Representation};

pub const DEFAULT_RNG_SEED: u64 = 20240001;

/// Random algebra elements tried before giving up.
pub const SAMPLE_LIMIT: usize = 200;

const TERMS: usize = 6;
const MAX_WORD: usize = 12;
const MAX_FACTOR_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(SubmoduleBasis),
}

impl Verdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible)
    }
}

/// A linear combination of random words in the generators plus a scalar.
#[derive(Debug, Clone)]
pub(crate) struct AlgebraWord {
    scalar: FieldElement,
    terms: Vec<(FieldElement, Vec<usize>)>,
}

fn random_nonzero<R: Rng>(f: &FieldDescriptor, rng: &mut R) -> FieldElement {
    loop {
        let x = f.random_element(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

impl AlgebraWord {
    pub(crate) fn random<R: Rng>(f: &FieldDescriptor, ngens: usize, rng: &mut R) -> AlgebraWord {
        let scalar = f.random_element(rng);
        let terms = (0..TERMS)
            .map(|_| {
                let len = rng.random_range(1..=MAX_WORD);
                let word = (0..len).map(|_| rng.random_range(0..ngens)).collect();
                (random_nonzero(f, rng), word)
            })
            .collect();
        AlgebraWord { scalar, terms }
    }

    pub(crate) fn evaluate(&self, gens: &[Matrix]) -> Matrix {
        let f = gens[0].field();
        let d = gens[0].rows();
        let mut acc = Matrix::scalar_element(f, d, &self.scalar);
        for (c, word) in &self.terms {
            let mut w = gens[word[0]].clone();
            for &i in &word[1..] {
                w = w.mul(&gens[i]).expect("square generators");
            }
            acc = acc.add(&w.scale(c)).expect("same shape");
        }
        acc
    }
}

/// The annihilator {u : u·wᵀ = 0 for all rows w of `dual`}.
fn annihilator(dual: &SubmoduleBasis) -> Result<SubmoduleBasis> {
    let rows = dual.matrix().transpose().left_nullspace_rows();
    let f = dual.matrix().field().clone();
    SubmoduleBasis::from_rows(&Matrix::from_rows(f, rows)?)
}

/// Norton's test over a finite field.
pub(crate) fn norton(gens: &[Matrix], rng_seed: u64) -> Result<Verdict> {
    let f = gens[0].field();
    let d = gens[0].rows();
    if d == 1 {
        return Ok(Verdict::Irreducible);
    }
    let transposed: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    let mut rng = SplitMix64::seed_from_u64(rng_seed);
    let proper = |seeds: &[Vec<FieldElement>], g: &[Matrix]| {
        let e = spin_many(f, d, seeds, g);
        (e.dim() < d).then(|| SubmoduleBasis::from_echelon(&e))
    };
    for _ in 0..SAMPLE_LIMIT {
        let a = AlgebraWord::random(f, gens.len(), &mut rng).evaluate(gens);
        for factor in isolated_factors(f, &charpoly(&a), MAX_FACTOR_DEGREE, &mut rng) {
            let b = eval_matrix(&factor, &a);
            let left = b.left_nullspace_rows();
            if left.is_empty() {
                continue;
            }
            let right = b.right_nullspace_rows();
            if let Some(sub) = proper(&left[..1], gens) {
                return Ok(Verdict::Reducible(sub));
            }
            if let Some(dual) = proper(&right[..1], &transposed) {
                return Ok(Verdict::Reducible(annihilator(&dual)?));
            }
            if Some(left.len()) == degree(&factor) {
                return Ok(Verdict::Irreducible);
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "no decisive algebra element in {SAMPLE_LIMIT} samples"
    )))
}

fn is_scalar(m: &Matrix) -> bool {
    *m == Matrix::scalar_element(m.field(), m.rows(), m.get(0, 0))
}

/// Eigenvalues of `m` visible from a minimal polynomial of degree ≤ 2, or
/// the root 0.
fn easy_eigenvalues(m: &Matrix) -> Vec<FieldElement> {
    let f = m.field();
    let mp = minimal_polynomial(m);
    let mut out = Vec::new();
    if mp[0].is_zero() {
        out.push(f.zero());
    }
    if mp.len() == 3 {
        let (c0, c1) = (&mp[0], &mp[1]);
        let disc = f.sub(&f.mul(c1, c1), &f.mul(&f.int_scalar(4), c0));
        if let Ok(s) = f.square_root(&disc) {
            let two = f.int_scalar(2);
            for root in [f.sub(&s, c1), f.sub(&f.neg(&s), c1)] {
                out.push(f.div(&root, &two).expect("characteristic 0"));
            }
        }
    }
    out
}

fn endomorphism_test(r: &Representation, rng_seed: u64) -> Result<Verdict> {
    if !check_relations(r).passed() {
        return Err(Error::Inconclusive(
            "the characteristic-0 test needs matrices satisfying the group relations".into(),
        ));
    }
    let end = hom_space(r, r)?;
    if end.dim == 1 {
        return Ok(Verdict::Irreducible);
    }
    let f = r.field();
    let d = r.degree();
    let mut rng = SplitMix64::seed_from_u64(rng_seed);
    let mut candidates = end.basis.clone();
    for _ in 0..SAMPLE_LIMIT / 10 {
        let mut m = Matrix::zero(f, d, d);
        for b in &end.basis {
            m = m.add(&b.scale_int(rng.random_range(-3..=3)))?;
        }
        candidates.push(m);
    }
    for m in candidates.iter().filter(|m| !is_scalar(m)) {
        for lambda in easy_eigenvalues(m) {
            let null = m
                .sub(&Matrix::scalar_element(f, d, &lambda))?
                .left_nullspace_rows();
            if !null.is_empty() && null.len() < d {
                let rows = Matrix::from_rows(f.clone(), null)?;
                return Ok(Verdict::Reducible(SubmoduleBasis::from_rows(&rows)?));
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "endomorphism algebra has dimension {} but no split element was found",
        end.dim
    )))
}

/// Decide irreducibility; `Inconclusive` is an error, distinct from a verdict.
pub fn is_irreducible(r: &Representation, rng_seed: u64) -> Result<Verdict> {
    if r.degree() == 1 {
        return Ok(Verdict::Irreducible);
    }
    if r.field().is_finite() {
        norton(r.gens(), rng_seed)
    } else {
        endomorphism_test(r, rng_seed)
    }
}
