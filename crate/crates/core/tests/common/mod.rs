//! Test stock shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashSet;

use ecom_core::catalog::{standard_entries, CatalogSpec};
use ecom_core::group::{cycle_notation, DEFAULT_ORDER_LIMIT};
use ecom_core::{Error, FiniteGroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn spec_label(spec: &CatalogSpec) -> String {
    std::iter::once(spec.name.clone()).chain(spec.params.iter().map(u64::to_string)).collect::<Vec<_>>().join(",")
}

/// Every catalog group, realized the fast way.
pub fn catalog_groups() -> Vec<(String, FiniteGroup)> {
    standard_entries()
        .iter()
        .map(|s| (spec_label(s), s.realize(DEFAULT_ORDER_LIMIT).expect("catalog groups realize")))
        .collect()
}

/// `count` pairwise distinct permutation groups of order 6 to `max_order`,
/// each generated by two random permutations of 4 to 8 points. Groups are
/// told apart by order, center order and element-order profile.
pub fn random_permutation_groups(count: usize, max_order: usize, seed: u64) -> Vec<(String, FiniteGroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let degree = rng.gen_range(4..=8);
        let gens: Vec<Vec<usize>> = (0..2)
            .map(|_| {
                let mut p: Vec<usize> = (0..degree).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        match FiniteGroup::from_permutation_generators(&gens, max_order) {
            Ok(g) if g.order() >= 6 => {
                let mut profile = g.order_profile();
                profile.sort_unstable();
                if !seen.insert((g.order(), g.center().order(), profile)) {
                    continue;
                }
                let label = gens
                    .iter()
                    .map(|p| cycle_notation(&p.iter().map(|&x| x as u32).collect::<Vec<_>>()))
                    .collect::<Vec<_>>()
                    .join(";");
                out.push((format!("<{label}>"), g));
            }
            Ok(_) | Err(Error::OrderLimitExceeded { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with_last = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut all = subsets(n - 1, k);
    all.extend(with_last);
    all
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all `k x k` minors, by direct enumeration.
pub fn minor_gcd(m: &[Vec<i64>], k: usize) -> i64 {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut g = 0;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}
