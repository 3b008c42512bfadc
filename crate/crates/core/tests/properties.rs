mod common;

use ecom_core::abelian::{circles_from_indices, oracle, pairwise_intersections};
use ecom_core::catalog::{make_quaternion, make_small, standard_entries};
use ecom_core::group::DEFAULT_ORDER_LIMIT;
use ecom_core::poset::DEFAULT_POSET_NODE_LIMIT;
use ecom_core::{
    analyze, build_coset_poset, circles_from_euler, classify_homotopy, homology, order_complex, poset_isomorphic,
    FiniteGroup, Limits, SimplicialComplex, Verdict,
};
use proptest::prelude::*;

use common::{catalog_groups, random_permutation_groups};

fn stock() -> Vec<(String, FiniteGroup)> {
    let mut all = catalog_groups();
    all.extend(random_permutation_groups(12, 64, 7));
    all
}

#[test]
fn lagrange_and_coset_partitions() {
    for (label, g) in stock() {
        let poset = build_coset_poset(&g, DEFAULT_POSET_NODE_LIMIT).unwrap();
        for h in &poset.subgroups {
            assert_eq!(g.order() % h.order(), 0, "{label}");
            let cosets = g.left_cosets(h);
            assert_eq!(cosets.len(), g.order() / h.order());
            assert_eq!(cosets[0].members, *h.members());
            let mut covered = vec![false; g.order()];
            for c in &cosets {
                for x in c.members.iter() {
                    assert!(!covered[x], "{label}: cosets overlap");
                    covered[x] = true;
                }
            }
            assert!(covered.into_iter().all(|c| c));
        }
        // exactly [G:B] nodes for every B in the family
        for (s, h) in poset.subgroups.iter().enumerate() {
            assert_eq!(poset.nodes.iter().filter(|n| n.subgroup == s).count(), h.index_in(&g));
        }
    }
}

#[test]
fn center_is_normal_and_abelian() {
    for (label, g) in stock() {
        let z = g.center();
        assert!(z.is_abelian(&g), "{label}");
        for x in 0..g.order() {
            for c in z.members().iter() {
                assert_eq!(g.mul(g.mul(x, c), g.inv(x)), c, "{label}");
            }
        }
    }
}

#[test]
fn every_maximal_contains_the_center_and_covers_the_group() {
    for (label, g) in stock() {
        let z = g.center();
        let maximals = ecom_core::maximal_abelian_subgroups(&g);
        assert!(maximals.iter().all(|m| z.is_subgroup_of(m)), "{label}");
        for x in 0..g.order() {
            assert!(maximals.iter().any(|m| m.contains(x)), "{label}: {x} in no maximal");
        }
    }
}

#[test]
fn height_one_counts_agree() {
    for (label, g) in stock() {
        let poset = build_coset_poset(&g, DEFAULT_POSET_NODE_LIMIT).unwrap();
        let maximals = ecom_core::maximal_abelian_subgroups(&g);
        let height1 = pairwise_intersections(&maximals).iter().all(|s| *s == g.center());
        assert_eq!(height1, poset.height() <= 1, "{label}");
        if !height1 {
            continue;
        }
        let euler = circles_from_euler(&poset).unwrap();
        assert_eq!(circles_from_indices(&g).unwrap(), euler, "{label}");
        let k = order_complex(&poset.poset, usize::MAX).unwrap();
        assert_eq!(homology(&k).unwrap().betti.get(1).copied().unwrap_or(0) as i64, euler, "{label}");
    }
}

#[test]
fn abelian_iff_single_point() {
    for (label, g) in stock() {
        let r = analyze(&g, &label, &Limits::default()).unwrap();
        assert_eq!(g.is_abelian(), r.poset.nodes == 1, "{label}");
        assert_eq!(g.is_abelian(), r.verdict == Verdict::Contractible, "{label}");
    }
}

#[test]
fn order_complex_dimension_is_height() {
    let s3 = make_small("S3").unwrap();
    let mut groups = stock();
    groups.push(("S3xS3".into(), s3.direct_product(&s3, DEFAULT_ORDER_LIMIT).unwrap()));
    for (label, g) in groups {
        let poset = build_coset_poset(&g, DEFAULT_POSET_NODE_LIMIT).unwrap();
        let k = order_complex(&poset.poset, usize::MAX).unwrap();
        assert_eq!(k.dim(), Some(poset.height()), "{label}");
        let h = homology(&k).unwrap();
        assert_eq!(h.euler_characteristic(), k.euler_characteristic(), "{label}");
    }
}

/// The poset over all abelian subgroups is homotopy equivalent to the
/// maximal-abelian one, so the homology must match.
#[test]
fn all_abelian_poset_has_the_same_homology() {
    let mut groups: Vec<_> = stock().into_iter().filter(|(_, g)| g.order() <= 24).collect();
    groups.push(("S4".into(), make_small("S4").unwrap()));
    for (label, g) in groups {
        let small = build_coset_poset(&g, DEFAULT_POSET_NODE_LIMIT).unwrap();
        let big = oracle::all_abelian_coset_poset(&g, DEFAULT_POSET_NODE_LIMIT).unwrap();
        let hs = homology(&order_complex(&small.poset, usize::MAX).unwrap()).unwrap().trimmed();
        let hb = homology(&order_complex(&big.poset, usize::MAX).unwrap()).unwrap().trimmed();
        assert_eq!(hs, hb, "{label}");
    }
}

#[test]
fn s4_is_a_wedge_of_95_circles() {
    // Height two, so only homology and collapse apply; the all-abelian test
    // above checks the same homology on an independent poset.
    let r = analyze(&make_small("S4").unwrap(), "S4", &Limits::default()).unwrap();
    assert_eq!(r.poset.height, 2);
    assert_eq!(r.verdict, Verdict::WedgeOfCircles { circles: 95 });
}

#[test]
fn both_constructions_give_isomorphic_posets() {
    for spec in standard_entries() {
        let table = spec.realize(DEFAULT_ORDER_LIMIT).unwrap();
        let presented = spec.realize_from_presentation(DEFAULT_ORDER_LIMIT).unwrap().group;
        let a = build_coset_poset(&table, DEFAULT_POSET_NODE_LIMIT).unwrap();
        let b = build_coset_poset(&presented, DEFAULT_POSET_NODE_LIMIT).unwrap();
        assert!(poset_isomorphic(&a.poset, &b.poset), "{spec:?}");
    }
}

#[test]
fn quaternion_census_to_n8() {
    for n in 2..=8 {
        let p = build_coset_poset(&make_quaternion(n).unwrap(), DEFAULT_POSET_NODE_LIMIT).unwrap();
        assert_eq!(p.maximal_count, n + 1);
        assert_eq!(p.node_count(), n * n + 2 * n + 2);
        assert_eq!(p.hasse_edges().len(), 2 * n * n + 2 * n);
    }
}

#[test]
fn quaternion_times_z3_collapses_without_changing_homology() {
    let g = make_quaternion(2).unwrap().direct_product(&make_small("Z3").unwrap(), DEFAULT_ORDER_LIMIT).unwrap();
    let k = order_complex(&build_coset_poset(&g, DEFAULT_POSET_NODE_LIMIT).unwrap().poset, usize::MAX).unwrap();
    let (collapsed, _) = k.collapse_free_faces();
    assert!(collapsed.dim() <= k.dim());
    assert_eq!(homology(&collapsed).unwrap().trimmed(), homology(&k).unwrap().trimmed());
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=4), 1..8).prop_map(|faces| {
        SimplicialComplex::from_simplices(faces.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap()
    })
}

proptest! {
    #[test]
    fn boundary_squares_to_zero(k in random_complex()) {
        for d in 2..k.levels().len() {
            prop_assert!(k.boundary_matrix(d - 1).mul(&k.boundary_matrix(d)).is_zero());
        }
    }

    #[test]
    fn collapse_preserves_homology(k in random_complex()) {
        let (c, log) = k.collapse_free_faces();
        prop_assert_eq!(homology(&c).unwrap().trimmed(), homology(&k).unwrap().trimmed());
        prop_assert_eq!(c.euler_characteristic(), k.euler_characteristic());
        prop_assert_eq!(c.total() + 2 * log.steps.len(), k.total());
    }

    #[test]
    fn euler_poincare(k in random_complex()) {
        prop_assert_eq!(homology(&k).unwrap().euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn connected_complexes_classify_consistently(k in random_complex()) {
        if k.connected_components() == 1 {
            let c = classify_homotopy(&k).unwrap();
            if let Verdict::WedgeOfCircles { circles } = c.verdict {
                prop_assert_eq!(c.homology.betti[1], circles);
                prop_assert_eq!(c.collapsed_graph_circles, Some(circles as i64));
            }
        }
    }

    #[test]
    fn centralizer_of_union_is_intersection(seed in 0u64..1000, a in 0usize..24, b in 0usize..24) {
        let groups = random_permutation_groups(1, 64, seed);
        let g = &groups[0].1;
        let (a, b) = (a % g.order(), b % g.order());
        prop_assert_eq!(g.centralizer([a, b]), g.centralizer([a]).intersection(&g.centralizer([b])));
        let c = g.subgroup_closure([a, b]);
        prop_assert_eq!(g.subgroup_closure(c.members().iter()), c);
    }
}
