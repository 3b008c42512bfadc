//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ecom_core::abelian::{oracle, MaxAbelianFamily};
use ecom_core::catalog::{
    make_binary_icosahedral, make_binary_octahedral, make_dihedral_type, make_p_prime, make_quaternion, make_small,
    standard_entries,
};
use ecom_core::group::DEFAULT_ORDER_LIMIT;
use ecom_core::poset::DEFAULT_POSET_NODE_LIMIT;
use ecom_core::snf::{smith_normal_form, IntMatrix};
use ecom_core::{
    analyze, build_coset_poset, homology, is_height1, maximal_abelian_subgroups, order_complex, parse_presentation,
    poset_isomorphic, product_poset, todd_coxeter, verify_relators, FiniteGroup, HomotopyReport, Limits,
    SimplicialComplex, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{catalog_groups, minor_gcd, random_matrix, random_permutation_groups};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(g: &FiniteGroup, label: &str) -> Result<HomotopyReport, String> {
    analyze(g, label, &Limits::default()).map_err(|e| format!("{label}: {e}"))
}

fn wedge(r: &HomotopyReport) -> Option<usize> {
    match r.verdict {
        Verdict::WedgeOfCircles { circles } => Some(circles),
        _ => None,
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("{what} took {t:.2?}, budget {budget:?}"))
}

fn quaternion_formula() -> Outcome {
    let start = Instant::now();
    for n in 2..=6usize {
        let r = run(&make_quaternion(n).unwrap(), &format!("Q,{n}"))?;
        let k = n * n - 1;
        ensure(wedge(&r) == Some(k), || format!("n={n}: verdict {:?}", r.verdict))?;
        ensure(r.evidence.euler_circles == Some(k as i64), || format!("n={n}: euler {:?}", r.evidence.euler_circles))?;
        ensure(r.evidence.betti == vec![1, k] && r.evidence.torsion.iter().all(Vec::is_empty), || {
            format!("n={n}: homology {:?} {:?}", r.evidence.betti, r.evidence.torsion)
        })?;
    }
    within(start, Duration::from_secs(10), "Q_4n sweep")?;
    Ok(format!("n^2-1 by Euler count and homology for n=2..6 in {:.2?}", start.elapsed()))
}

fn quaternion_census() -> Outcome {
    for n in 2..=6usize {
        let p = build_coset_poset(&make_quaternion(n).unwrap(), DEFAULT_POSET_NODE_LIMIT).map_err(|e| e.to_string())?;
        let got = (p.maximal_count, p.node_count(), p.hasse_edges().len());
        let want = (n + 1, n * n + 2 * n + 2, 2 * n * n + 2 * n);
        ensure(got == want, || format!("n={n}: (maximals, vertices, edges) {got:?}, expected {want:?}"))?;
    }
    Ok("vertices n^2+2n+2 and edges 2n^2+2n for n=2..6".into())
}

fn binary_polyhedral(which: u32) -> Outcome {
    let start = Instant::now();
    let (g, order, circles, budget) = match which {
        48 => (make_binary_octahedral(), 48, 167, Duration::from_secs(60)),
        _ => (make_binary_icosahedral(), 120, 1079, Duration::from_secs(300)),
    };
    let g = g.map_err(|e| e.to_string())?.group;
    ensure(g.order() == order, || format!("order {}", g.order()))?;
    ensure(is_height1(&g), || "is_height1 is false".into())?;
    let r = run(&g, &format!("P{order}"))?;
    ensure(wedge(&r) == Some(circles), || format!("verdict {:?}", r.verdict))?;
    ensure(r.evidence.euler_circles == Some(circles as i64), || format!("euler {:?}", r.evidence.euler_circles))?;
    within(start, budget, &format!("P{order}"))?;
    Ok(format!(
        "order {order}, height 1, {circles} circles ({} nodes, {} edges) in {:.2?}",
        r.poset.nodes,
        r.poset.hasse_edges,
        start.elapsed()
    ))
}

fn dihedral_type() -> Outcome {
    let mut seen = Vec::new();
    for (m, n, want) in [(2, 1, 8), (3, 1, 8), (2, 2, 24), (3, 2, 24)] {
        let r = run(&make_dihedral_type(m, n).unwrap(), &format!("D,{m},{n}"))?;
        ensure(wedge(&r) == Some(want), || format!("({m},{n}): verdict {:?}", r.verdict))?;
        seen.push((m, n, wedge(&r)));
    }
    for n in [1, 2] {
        let counts: Vec<_> = seen.iter().filter(|s| s.1 == n).map(|s| s.2).collect();
        ensure(counts.windows(2).all(|w| w[0] == w[1]), || format!("n={n}: count depends on m: {counts:?}"))?;
    }
    Ok("8 for (2,1) and (3,1), 24 for (2,2) and (3,2); independent of m".into())
}

fn p_prime() -> Outcome {
    let pp = make_p_prime(1).map_err(|e| e.to_string())?;
    let g = &pp.group;
    ensure(g.order() == 24, || format!("order {}", g.order()))?;
    let (x, y) = (pp.generator_ids["x"], pp.generator_ids["y"]);
    ensure(g.mul(x, y) != g.mul(y, x), || "x and y commute".into())?;
    let r = run(g, "Pprime,1")?;
    ensure(wedge(&r) == Some(39), || format!("verdict {:?}", r.verdict))?;
    Ok("order 24, xy != yx, 39 circles".into())
}

fn test_groups() -> Vec<(String, FiniteGroup)> {
    let mut all = catalog_groups();
    all.extend(random_permutation_groups(20, 64, 0x5eed));
    all
}

fn center_law() -> Outcome {
    let groups = test_groups();
    for (label, g) in &groups {
        let family = MaxAbelianFamily::new(g);
        ensure(family.total_intersection() == g.center(), || format!("{label}: meet of maximals is not the center"))?;
    }
    Ok(format!("{} groups (catalog plus 20 random of order <= 64)", groups.len()))
}

fn connectivity() -> Outcome {
    let groups = test_groups();
    for (label, g) in &groups {
        let p = build_coset_poset(g, DEFAULT_POSET_NODE_LIMIT).map_err(|e| format!("{label}: {e}"))?;
        let k = order_complex(&p.poset, usize::MAX).map_err(|e| format!("{label}: {e}"))?;
        ensure(k.connected_components() == 1, || format!("{label}: {} components", k.connected_components()))?;
    }
    Ok(format!("{} order complexes connected", groups.len()))
}

fn product_theorem() -> Outcome {
    let stock = [
        ("Z2", make_small("Z2").unwrap()),
        ("Z3", make_small("Z3").unwrap()),
        ("S3", make_small("S3").unwrap()),
        ("Q8", make_quaternion(2).unwrap()),
        ("D12", make_dihedral_type(2, 1).unwrap()),
    ];
    let mut pairs = 0;
    for (i, (a, g1)) in stock.iter().enumerate() {
        for (b, g2) in &stock[i..] {
            let whole = g1.direct_product(g2, DEFAULT_ORDER_LIMIT).map_err(|e| e.to_string())?;
            let left = build_coset_poset(&whole, DEFAULT_POSET_NODE_LIMIT).map_err(|e| e.to_string())?;
            let p1 = build_coset_poset(g1, DEFAULT_POSET_NODE_LIMIT).unwrap();
            let p2 = build_coset_poset(g2, DEFAULT_POSET_NODE_LIMIT).unwrap();
            let right = product_poset(&p1.poset, &p2.poset, DEFAULT_POSET_NODE_LIMIT).map_err(|e| e.to_string())?;
            ensure(poset_isomorphic(&left.poset, &right), || format!("{a} x {b}: not isomorphic"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs isomorphic"))
}

fn oracle_equivalence() -> Outcome {
    let mut stock: Vec<(String, FiniteGroup)> = catalog_groups().into_iter().filter(|(_, g)| g.order() <= 48).collect();
    stock.extend(random_permutation_groups(20, 48, 0x0ac1e));
    for (label, g) in &stock {
        let fast = maximal_abelian_subgroups(g);
        let slow = oracle::maximal_abelian_subgroups(g);
        ensure(fast == slow, || format!("{label}: {} vs {} maximal abelians", fast.len(), slow.len()))?;
    }
    Ok(format!("{} groups of order <= 48 agree with the all-subgroups oracle", stock.len()))
}

fn synthetic_complexes() -> Vec<(String, SimplicialComplex)> {
    let sc = |s: &[&[u32]]| SimplicialComplex::from_simplices(s.iter().copied()).unwrap();
    vec![
        ("triangle".into(), sc(&[&[0, 1, 2]])),
        ("circle".into(), sc(&[&[0, 1], &[1, 2], &[0, 2]])),
        ("sphere".into(), sc(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])),
        (
            "projective plane".into(),
            sc(&[
                &[0, 1, 2],
                &[0, 2, 3],
                &[0, 3, 4],
                &[0, 4, 5],
                &[0, 1, 5],
                &[1, 2, 4],
                &[2, 3, 5],
                &[1, 3, 4],
                &[2, 4, 5],
                &[1, 3, 5],
            ]),
        ),
        ("solid tetrahedron".into(), sc(&[&[0, 1, 2, 3]])),
    ]
}

fn homology_self_checks() -> Outcome {
    let mut complexes = synthetic_complexes();
    let s3 = make_small("S3").unwrap();
    let extra = [
        ("S4".to_string(), make_small("S4").unwrap()),
        ("S3xS3".to_string(), s3.direct_product(&s3, DEFAULT_ORDER_LIMIT).unwrap()),
        ("Q8xS3".to_string(), make_quaternion(2).unwrap().direct_product(&s3, DEFAULT_ORDER_LIMIT).unwrap()),
    ];
    for (label, g) in catalog_groups().into_iter().chain(extra) {
        let p = build_coset_poset(&g, DEFAULT_POSET_NODE_LIMIT).unwrap();
        complexes.push((label, order_complex(&p.poset, usize::MAX).unwrap()));
    }
    for (label, k) in &complexes {
        for d in 2..k.levels().len() {
            let composed = k.boundary_matrix(d - 1).mul(&k.boundary_matrix(d));
            ensure(composed.is_zero(), || format!("{label}: boundary squared nonzero at d={d}"))?;
        }
        let before = homology(k).map_err(|e| e.to_string())?.trimmed();
        let after = homology(&k.collapse_free_faces().0).map_err(|e| e.to_string())?.trimmed();
        ensure(before == after, || format!("{label}: collapse changed homology {before:?} -> {after:?}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..100 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let dense = random_matrix(&mut rng, r, c, 5);
        let snf = smith_normal_form(&IntMatrix::from_dense(&dense)).map_err(|e| e.to_string())?;
        for k in 1..=3.min(r).min(c) {
            let product: i64 = snf.invariant_factors.iter().take(k).map(|&d| d as i64).product();
            let expected = if k <= snf.rank { product } else { 0 };
            let oracle = minor_gcd(&dense, k);
            ensure(expected == oracle, || {
                format!("matrix {t} {dense:?}: k={k} product {expected}, minor gcd {oracle}")
            })?;
        }
    }
    Ok(format!("{} complexes: boundary squared zero, collapse keeps homology; 100 SNF minor checks", complexes.len()))
}

fn todd_coxeter_closes() -> Outcome {
    let mut checked = 0;
    for spec in standard_entries() {
        let entry = spec.entry().map_err(|e| e.to_string())?;
        let p = parse_presentation(&entry.presentation_text).map_err(|e| e.to_string())?;
        let pg = todd_coxeter(&p, Limits::default().max_cosets).map_err(|e| format!("{}: {e}", entry.name))?;
        ensure(pg.group.order() == entry.expected_order, || format!("{}: order {}", entry.name, pg.group.order()))?;
        ensure(verify_relators(&pg.group, &p, &pg.generator_ids), || format!("{}: relators fail", entry.name))?;
        checked += 1;
    }
    // The normal-form tables satisfy the same relators with x = x^1 y^0, y = x^0 y^1.
    for n in 2..=6usize {
        let p = parse_presentation(&ecom_core::catalog::quaternion_presentation(n)).unwrap();
        let ids = [("x".to_string(), 2 * n), ("y".to_string(), 1)].into();
        ensure(verify_relators(&make_quaternion(n).unwrap(), &p, &ids), || format!("Q,{n} table fails its relators"))?;
    }
    for (m, n) in [(2u32, 1usize), (2, 2), (3, 1), (3, 2)] {
        let p = parse_presentation(&ecom_core::catalog::dihedral_type_presentation(m, n)).unwrap();
        let ids = [("x".to_string(), 2 * n + 1), ("y".to_string(), 1)].into();
        ensure(verify_relators(&make_dihedral_type(m, n).unwrap(), &p, &ids), || {
            format!("D,{m},{n} table fails its relators")
        })?;
    }
    Ok(format!("{checked} presentations close at the expected order; relators verify"))
}

fn main() -> ExitCode {
    type Criterion = fn() -> Outcome;
    let criteria: [(&str, Criterion); 12] = [
        ("Q_4n circle formula", quaternion_formula),
        ("Q_4n poset census", quaternion_census),
        ("P48", || binary_polyhedral(48)),
        ("P120", || binary_polyhedral(120)),
        ("dihedral type", dihedral_type),
        ("P'_24", p_prime),
        ("center law", center_law),
        ("connectivity", connectivity),
        ("product theorem", product_theorem),
        ("oracle equivalence", oracle_equivalence),
        ("homology self-checks", homology_self_checks),
        ("Todd-Coxeter", todd_coxeter_closes),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
