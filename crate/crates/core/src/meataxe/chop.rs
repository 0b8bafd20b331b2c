//! Composition factors.

use super::hom::equivalent_irreducibles;
use super::norton::{is_irreducible, Verdict};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::recipe::Modifier;
use crate::spin::{check_delta, Representation};

#[derive(Debug, Clone)]
pub struct Factor {
    pub rep: Representation,
    pub degree: usize,
    pub delta_pass: bool,
}

/// Composition factors, bottom of the series first.
#[derive(Debug, Clone)]
pub struct ChopReport {
    pub factors: Vec<Factor>,
    /// `equivalent[i][j]` says whether factors i and j are equivalent.
    pub equivalent: Vec<Vec<bool>>,
}

impl ChopReport {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree).collect()
    }
}

fn with_gens(r: &Representation, gens: Vec<Matrix>) -> Result<Representation> {
    Representation::new(r.n(), r.field().clone(), gens, r.recipe().clone(), r.cover())
}

fn split(r: &Representation, rng_seed: u64, out: &mut Vec<Representation>) -> Result<()> {
    match is_irreducible(r, rng_seed)? {
        Verdict::Irreducible => out.push(r.clone()),
        Verdict::Reducible(sub) => {
            split(&with_gens(r, sub.restrict(r.gens()))?, rng_seed, out)?;
            split(&with_gens(r, sub.quotient(r.gens()))?, rng_seed, out)?;
        }
    }
    Ok(())
}

/// Split `r` recursively along submodule witnesses.
pub fn chop(r: &Representation, rng_seed: u64) -> Result<ChopReport> {
    let mut reps = Vec::new();
    split(r, rng_seed, &mut reps)?;
    let factors: Vec<Factor> = reps
        .into_iter()
        .enumerate()
        .map(|(k, rep)| {
            let recipe = r.recipe().with_modifier(Modifier::Factor(k));
            let rep = rep.with_recipe(recipe).expect("same n");
            Factor {
                degree: rep.degree(),
                delta_pass: check_delta(&rep).passed(),
                rep,
            }
        })
        .collect();
    let mut equivalent = vec![vec![false; factors.len()]; factors.len()];
    for i in 0..factors.len() {
        equivalent[i][i] = true;
        for j in i + 1..factors.len() {
            let e = equivalent_irreducibles(&factors[i].rep, &factors[j].rep)?;
            equivalent[i][j] = e;
            equivalent[j][i] = e;
        }
    }
    Ok(ChopReport { factors, equivalent })
}
