//! Text grammar for field elements.
//!
//! ```text
//! GF(2), GF(p):   residue          := decimal in [0, p)
//! GF(p²):         pair             := "0" | a | bz | a "+" bz
//!                 bz               := "z" | b "*z"          (a, b decimal in [0, p), b ≠ 0)
//! tower:          element          := "0" | term (("+" | "-") term)*
//!                 term             := ["-"] rational ["*r{" d ("," d)* "}"]
//!                 rational         := num ["/" den]         (lowest terms, den > 1)
//! ```
//!
//! Tower terms appear in increasing monomial order and `r{…}` lists the
//! radicals of the monomial in ascending order, so every element has exactly
//! one spelling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

impl FieldDescriptor {
    pub fn format_element(&self, x: &FieldElement) -> String {
        match (self, x) {
            (_, FieldElement::Residue(a)) => a.to_string(),
            (_, FieldElement::Pair(a, b)) => match (*a, *b) {
                (a, 0) => a.to_string(),
                (0, 1) => "z".into(),
                (0, b) => format!("{b}*z"),
                (a, 1) => format!("{a}+z"),
                (a, b) => format!("{a}+{b}*z"),
            },
            (FieldDescriptor::RationalTower(t), FieldElement::Tower(e)) => {
                if e.is_zero() {
                    return "0".into();
                }
                let mut out = String::new();
                for (k, (mask, q)) in e.terms().iter().enumerate() {
                    if k == 0 {
                        if q.is_negative() {
                            out.push('-');
                        }
                    } else {
                        out.push(if q.is_negative() { '-' } else { '+' });
                    }
                    out.push_str(&format_rational(&q.abs()));
                    if *mask != 0 {
                        let names: Vec<String> =
                            t.mask_radicals(*mask).iter().map(|d| d.to_string()).collect();
                        out.push_str(&format!("*r{{{}}}", names.join(",")));
                    }
                }
                out
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("'{s}' in {}: {why}", self.name()));
        match self {
            FieldDescriptor::Char2 | FieldDescriptor::Prime(_) => {
                let v: u64 = s.parse().map_err(|_| bad("expected a decimal residue"))?;
                let x = FieldElement::Residue(v);
                if !self.contains(&x) {
                    return Err(bad("residue out of range"));
                }
                Ok(x)
            }
            FieldDescriptor::Quadratic(q) => {
                let mut a: Option<u64> = None;
                let mut b: Option<u64> = None;
                for part in s.split('+') {
                    if part == "z" {
                        if b.replace(1).is_some() {
                            return Err(bad("repeated z term"));
                        }
                    } else if let Some(coef) = part.strip_suffix("*z") {
                        let v: u64 = coef.parse().map_err(|_| bad("bad z coefficient"))?;
                        if v == 0 || v == 1 || b.replace(v).is_some() {
                            return Err(bad("non-canonical z term"));
                        }
                    } else {
                        let v: u64 = part.parse().map_err(|_| bad("bad constant"))?;
                        if b.is_some() || a.replace(v).is_some() {
                            return Err(bad("constant must come first, once"));
                        }
                    }
                }
                let a = a.unwrap_or(0);
                let b = b.unwrap_or(0);
                if a >= q.p() || b >= q.p() {
                    return Err(bad("coordinate out of range"));
                }
                let x = FieldElement::Pair(a, b);
                if self.format_element(&x) != s {
                    return Err(bad("non-canonical spelling"));
                }
                Ok(x)
            }
            FieldDescriptor::RationalTower(t) => {
                if s == "0" {
                    return Ok(FieldElement::Tower(t.zero()));
                }
                let mut terms = Vec::new();
                for (neg, body) in split_signed_terms(s).map_err(&bad)? {
                    let (coef, mask) = match body.split_once("*r{") {
                        Some((c, rest)) => {
                            let inner = rest.strip_suffix('}').ok_or_else(|| bad("unclosed r{"))?;
                            let mut rads = Vec::new();
                            for d in inner.split(',') {
                                rads.push(d.trim().parse::<i64>().map_err(|_| bad("bad radical"))?);
                            }
                            let mask = t.mask_of(&rads).ok_or_else(|| bad("radical not in tower"))?;
                            if mask == 0 {
                                return Err(bad("empty radical list"));
                            }
                            (c, mask)
                        }
                        None => (body, 0),
                    };
                    let mut q = parse_rational(coef).ok_or_else(|| bad("bad rational"))?;
                    if neg {
                        q = -q;
                    }
                    terms.push((mask, q));
                }
                let x = FieldElement::Tower(t.from_terms(terms)?);
                if self.format_element(&x) != s {
                    return Err(bad("non-canonical spelling"));
                }
                Ok(x)
            }
        }
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) || !d.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Split at top-level '+'/'-' (outside braces) into (negative, body) pairs.
fn split_signed_terms(s: &str) -> std::result::Result<Vec<(bool, &str)>, &'static str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut neg = false;
    if bytes.first() == Some(&b'-') {
        neg = true;
        start = 1;
    }
    for (i, &b) in bytes.iter().enumerate().skip(start) {
        match b {
            b'{' => depth += 1,
            b'}' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i == start {
                    return Err("empty term");
                }
                out.push((neg, &s[start..i]));
                neg = b == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced braces");
    }
    if start >= bytes.len() {
        return Err("empty term");
    }
    out.push((neg, &s[start..]));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::make_field;
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    #[test]
    fn quadratic_spellings() {
        let f = make_field(5, &[]).unwrap();
        assert_eq!(f.format_element(&FieldElement::Pair(0, 1)), "z");
        assert_eq!(f.format_element(&FieldElement::Pair(2, 0)), "2");
        assert_eq!(f.format_element(&FieldElement::Pair(1, 2)), "1+2*z");
        assert_eq!(f.format_element(&FieldElement::Pair(0, 0)), "0");
        assert_eq!(f.parse_element("3+z").unwrap(), FieldElement::Pair(3, 1));
        assert!(f.parse_element("5").is_err());
        assert!(f.parse_element("1*z").is_err());
        assert!(f.parse_element("z+1").is_err());
    }

    #[test]
    fn tower_spellings() {
        let f = make_field(0, &[-1, 2]).unwrap();
        let t = f.tower().unwrap();
        let x = FieldElement::Tower(
            t.from_terms(vec![
                (0, BigRational::new(1.into(), 3.into())),
                (0b11, BigRational::new((-2).into(), 3.into())),
            ])
            .unwrap(),
        );
        let s = f.format_element(&x);
        assert_eq!(s, "1/3-2/3*r{-1,2}");
        assert_eq!(f.parse_element(&s).unwrap(), x);
        assert_eq!(
            f.parse_element("-1*r{-1}").unwrap(),
            f.neg(&f.fourth_root_of_unity().unwrap())
        );
        assert!(f.parse_element("1*r{3}").is_err());
        assert!(f.parse_element("2/4").is_err());
        assert!(f.parse_element("1*r{2}+1").is_err());
    }

    #[test]
    fn reparse_is_identity() {
        let mut rng = SplitMix64::seed_from_u64(7);
        for f in [
            make_field(2, &[]).unwrap(),
            make_field(11, &[]).unwrap(),
            make_field(0, &[-1, 2, 3, 5]).unwrap(),
        ] {
            for _ in 0..1000 {
                let a = f.random_element(&mut rng);
                let b = f.random_element(&mut rng);
                let x = f.div(&a, &b).unwrap_or(a);
                let s = f.format_element(&x);
                let y = f.parse_element(&s).unwrap();
                assert_eq!(x, y);
                assert_eq!(f.format_element(&y), s);
            }
        }
    }
}
