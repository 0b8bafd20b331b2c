use std::collections::BTreeMap;

use spinrep::construct::{build_stages, table_row, Row};
use spinrep::recipe::Step;
use spinrep::spin::{check_last_generator, weighted_sum};
use spinrep::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn no_signs() -> BTreeMap<usize, SignChoice> {
    BTreeMap::new()
}

fn max_n(p: u64) -> usize {
    if p == 0 {
        12
    } else {
        14
    }
}

#[test]
fn grid_relations_delta_degree() {
    for p in std::iter::once(0).chain(PRIMES) {
        let stages = build_stages(max_n(p), p, &no_signs()).unwrap();
        for r in stages.iter().filter(|r| r.n() >= 4) {
            let n = r.n();
            let rel = check_relations_tilde(r);
            assert!(
                rel.passed(),
                "relations fail at n={n} p={p}: {:?}",
                rel.failures().next()
            );
            assert!(check_delta(r).passed(), "delta fails at n={n} p={p}");
            assert_eq!(r.degree(), delta_degree(n, p).unwrap(), "degree at n={n} p={p}");
        }
    }
}

#[test]
fn extension_steps_meet_last_generator_equations() {
    for p in std::iter::once(0).chain(PRIMES) {
        let stages = build_stages(max_n(p), p, &no_signs()).unwrap();
        for r in &stages {
            let n = r.n();
            if let Some(Step::ExtendS1 | Step::ExtendS2(_) | Step::ExtendS3(_)) = r.recipe().step_at(n) {
                assert!(check_last_generator(r).passed(), "n={n} p={p}");
            }
            if let Some(Step::ExtendS3(_)) = r.recipe().step_at(n) {
                let t = &stages[n - 6];
                let jc = weighted_sum(t, n - 5);
                let d = t.degree();
                assert_eq!(jc.mul(&jc).unwrap(), Matrix::scalar(t.field(), d, -3));
            }
        }
    }
}

#[test]
fn both_signs_build_valid_chains() {
    for (n, p) in [(6, 0), (8, 0), (6, 7), (8, 3), (12, 5), (10, 11)] {
        let mut signs = BTreeMap::new();
        for m in 4..=n {
            if matches!(table_row(m, p), Row::S2 | Row::S3) {
                signs.insert(m, SignChoice::Minus);
            }
        }
        let plus = build_chain(n, p, &no_signs()).unwrap();
        let minus = build_chain(n, p, &signs).unwrap();
        assert_ne!(plus, minus);
        for r in [&plus, &minus] {
            assert!(check_relations_tilde(r).passed());
            assert!(check_delta(r).passed());
        }
    }
}

#[test]
fn replay_is_deterministic() {
    for (n, p) in [(9, 3), (10, 0), (12, 5)] {
        assert_eq!(
            build_chain(n, p, &no_signs()).unwrap(),
            build_chain(n, p, &no_signs()).unwrap()
        );
    }
}

#[test]
fn public_extensions_agree_with_the_dispatcher() {
    let stages = build_stages(8, 3, &no_signs()).unwrap();
    let s8 = extend_s3(&stages[2], 8, SignChoice::Plus).unwrap();
    assert_eq!(s8, stages[6]);
    let stages = build_stages(6, 7, &no_signs()).unwrap();
    assert_eq!(extend_s2(&stages[2], 6, SignChoice::Plus).unwrap(), stages[4]);
    let stages = build_stages(7, 7, &no_signs()).unwrap();
    assert_eq!(extend_s1(&stages[4], 7).unwrap(), stages[5]);
}

#[test]
fn gf2_n6_takes_the_shifted_branch() {
    let r = build_chain(6, 2, &no_signs()).unwrap();
    assert_eq!(r.recipe().step_at(6), Some(Step::ExtendS1));
    assert!(check_relations_tilde(&r).passed());
    assert!(check_delta(&r).passed());
    assert_ne!(r.gen(5), &weighted_sum(&r, 4));
}
