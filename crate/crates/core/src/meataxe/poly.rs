//! Dense univariate polynomials, coefficients low to high.

use rand::Rng;

use crate::field::{FieldDescriptor, FieldElement};
use crate::matrix::{EchelonBasis, Matrix};

pub type Poly = Vec<FieldElement>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(FieldElement::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn sub(f: &FieldDescriptor, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = f.zero();
    trim(
        (0..n)
            .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect(),
    )
}

fn mul(f: &FieldDescriptor, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
fn rem(f: &FieldDescriptor, a: &Poly, m: &Poly) -> Poly {
    let dm = degree(m).expect("nonzero modulus");
    let lead_inv = f.inv(&m[dm]).expect("nonzero leading coefficient");
    let mut r = trim(a.clone());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - dm;
        for (i, mc) in m.iter().enumerate().take(dm + 1) {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, mc));
        }
        r = trim(r);
    }
    r
}

fn monic(f: &FieldDescriptor, p: Poly) -> Poly {
    match degree(&p) {
        None => p,
        Some(d) => {
            let inv = f.inv(&p[d]).expect("nonzero");
            p.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd.
pub fn gcd(f: &FieldDescriptor, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while degree(&b).is_some() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

fn pow_mod(f: &FieldDescriptor, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = vec![f.one()];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    acc
}

pub fn eval(f: &FieldDescriptor, p: &Poly, x: &FieldElement) -> FieldElement {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Characteristic polynomial via reduction to Hessenberg form.
pub fn charpoly(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    let mut h = m.to_rows();
    for k in 1..n.saturating_sub(1) {
        let Some(i) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else {
            continue;
        };
        if i != k {
            h.swap(i, k);
            for row in h.iter_mut() {
                row.swap(i, k);
            }
        }
        let t_inv = f.inv(&h[k][k - 1]).expect("nonzero pivot");
        for i in k + 1..n {
            if h[i][k - 1].is_zero() {
                continue;
            }
            let u = f.mul(&h[i][k - 1], &t_inv);
            let (top, bottom) = h.split_at_mut(i);
            let pivot_row = &top[k];
            for (x, y) in bottom[0].iter_mut().zip(pivot_row) {
                *x = f.sub(x, &f.mul(&u, y));
            }
            for row in h.iter_mut() {
                let add = f.mul(&u, &row[i]);
                row[k] = f.add(&row[k], &add);
            }
        }
    }
    // p_m = (x − h_mm)·p_{m−1} − Σ_{i<m} h_im·(h_{m,m−1}⋯h_{i+1,i})·p_{i−1}
    let mut ps: Vec<Poly> = vec![vec![f.one()]];
    for m in 0..n {
        let mut next = mul(f, &vec![f.neg(&h[m][m]), f.one()], &ps[m]);
        let mut t = f.one();
        for i in (0..m).rev() {
            t = f.mul(&t, &h[i + 1][i]);
            let c = f.mul(&h[i][m], &t);
            if !c.is_zero() {
                next = sub(f, &next, &ps[i].iter().map(|x| f.mul(x, &c)).collect());
            }
        }
        ps.push(next);
    }
    ps.pop().expect("n + 1 polynomials")
}

/// The distinct roots of `p` in a finite field.
pub fn roots_in_field<R: Rng + ?Sized>(f: &FieldDescriptor, p: &Poly, rng: &mut R) -> Vec<FieldElement> {
    let q = f.order().expect("finite field");
    if degree(p).is_none_or(|d| d == 0) {
        return Vec::new();
    }
    if q == 2 {
        return [f.zero(), f.one()]
            .into_iter()
            .filter(|x| eval(f, p, x).is_zero())
            .collect();
    }
    let x = vec![f.zero(), f.one()];
    let xq = pow_mod(f, &x, q, p);
    let g = gcd(f, p, &sub(f, &xq, &x));
    let mut out = Vec::new();
    split_linear(f, g, q, rng, &mut out);
    out
}

/// Irreducible factors of `p` of degree at most `max_degree` that can be
/// isolated cheaply: every linear factor, and each higher-degree factor that
/// is the only one of its degree.
pub fn isolated_factors<R: Rng + ?Sized>(
    f: &FieldDescriptor,
    p: &Poly,
    max_degree: usize,
    rng: &mut R,
) -> Vec<Poly> {
    let mut out: Vec<Poly> = roots_in_field(f, p, rng)
        .into_iter()
        .map(|r| vec![f.neg(&r), f.one()])
        .collect();
    let Some(dp) = degree(p) else {
        return out;
    };
    let q = f.order().expect("finite field");
    let x = vec![f.zero(), f.one()];
    // exact[e] = product of the distinct irreducible factors of degree e
    let mut exact: Vec<Poly> = vec![vec![f.one()]];
    let mut h = pow_mod(f, &x, q, p);
    exact.push(gcd(f, p, &sub(f, &h, &x)));
    for e in 2..=max_degree.min(dp) {
        h = pow_mod(f, &h, q, p);
        let mut g = gcd(f, p, &sub(f, &h, &x));
        for (k, factor) in exact.iter().enumerate().skip(1) {
            if e % k == 0 && degree(factor).unwrap_or(0) > 0 {
                g = divide_exact(f, &g, factor);
            }
        }
        if degree(&g) == Some(e) {
            out.push(g.clone());
        }
        exact.push(g);
    }
    out
}

/// p(M) by Horner's rule.
pub fn eval_matrix(p: &Poly, m: &Matrix) -> Matrix {
    let f = m.field();
    let d = m.rows();
    let mut acc = Matrix::zero(f, d, d);
    for c in p.iter().rev() {
        acc = acc
            .mul(m)
            .and_then(|a| a.add(&Matrix::scalar_element(f, d, c)))
            .expect("square");
    }
    acc
}

/// Split a product of distinct monic linear factors (odd q).
fn split_linear<R: Rng + ?Sized>(
    f: &FieldDescriptor,
    g: Poly,
    q: u64,
    rng: &mut R,
    out: &mut Vec<FieldElement>,
) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(&f.div(&g[0], &g[1]).expect("linear"))),
        Some(d) => loop {
            let shift = vec![f.random_element(rng), f.one()];
            let h = pow_mod(f, &shift, (q - 1) / 2, &g);
            let h = gcd(f, &g, &sub(f, &h, &vec![f.one()]));
            let dh = degree(&h).unwrap_or(0);
            if dh > 0 && dh < d {
                let other = divide_exact(f, &g, &h);
                split_linear(f, h, q, rng, out);
                split_linear(f, other, q, rng, out);
                return;
            }
        },
    }
}

fn divide_exact(f: &FieldDescriptor, a: &Poly, b: &Poly) -> Poly {
    let db = degree(b).expect("nonzero");
    let lead_inv = f.inv(&b[db]).expect("nonzero");
    let mut r = trim(a.clone());
    let da = degree(&r).expect("nonzero");
    let mut quot = vec![f.zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        quot[dr - db] = c.clone();
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + dr - db] = f.sub(&r[i + dr - db], &f.mul(&c, bc));
        }
        r = trim(r);
    }
    quot
}

/// Monic minimal polynomial of a square matrix, from the first linear
/// dependency among I, M, M², …
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    let f = m.field();
    let d = m.rows();
    let mut powers: Vec<Vec<FieldElement>> = Vec::new();
    let mut basis = EchelonBasis::new(f, d * d);
    let mut current = Matrix::identity(f, d);
    loop {
        let flat = current.entries().to_vec();
        if basis.contains(&flat) {
            powers.push(flat);
            let k = powers.len();
            let stacked = Matrix::from_rows(f.clone(), powers).expect("equal lengths");
            let null = stacked.left_nullspace_rows();
            let coeffs = null.into_iter().next().expect("dependent rows");
            debug_assert_eq!(coeffs.len(), k);
            return monic(f, trim(coeffs));
        }
        basis.insert(&flat);
        powers.push(flat);
        current = current.mul(m).expect("square");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    #[test]
    fn charpoly_of_companion() {
        let f = make_field(7, &[]).unwrap();
        // x³ − 2x + 5 has companion with last row (−5, 2, 0)
        let c = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[-5, 2, 0]]).unwrap();
        let p = charpoly(&c);
        let expected: Poly = [5, -2, 0, 1].iter().map(|&v| f.int_scalar(v)).collect();
        assert_eq!(p, expected);
        assert_eq!(minimal_polynomial(&c), expected);
    }

    #[test]
    fn charpoly_annihilates() {
        let f = make_field(5, &[]).unwrap();
        let mut rng = SplitMix64::seed_from_u64(3);
        for _ in 0..20 {
            let entries = (0..16).map(|_| f.random_element(&mut rng)).collect();
            let m = Matrix::from_entries(f.clone(), 4, 4, entries).unwrap();
            let p = charpoly(&m);
            assert_eq!(degree(&p), Some(4));
            let mut acc = Matrix::zero(&f, 4, 4);
            for c in p.iter().rev() {
                acc = acc
                    .mul(&m)
                    .unwrap()
                    .add(&Matrix::scalar_element(&f, 4, c))
                    .unwrap();
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn roots_found() {
        let mut rng = SplitMix64::seed_from_u64(9);
        for f in [
            make_field(2, &[]).unwrap(),
            make_field(3, &[]).unwrap(),
            make_field(11, &[]).unwrap(),
        ] {
            let a = f.int_scalar(1);
            let b = f.primitive_element().unwrap_or(f.zero());
            // (x − a)(x − b)(x² + 1)·x
            let p = mul(&f, &vec![f.neg(&a), f.one()], &vec![f.neg(&b), f.one()]);
            let p = mul(&f, &p, &vec![f.one(), f.zero(), f.one()]);
            let p = mul(&f, &p, &vec![f.zero(), f.one()]);
            let roots = roots_in_field(&f, &p, &mut rng);
            for r in &roots {
                assert!(eval(&f, &p, r).is_zero());
            }
            assert!(roots.contains(&a) && roots.contains(&b) && roots.contains(&f.zero()));
        }
    }
}
