//! The library against independent brute-force computations.

mod common;

use std::collections::BTreeSet;

use qcat::builders::{
    chain_quantale, discrete_category, faithful_to_vcat, free_quantaloid, preorder_category, sheafify_with_details, two_quantale,
    vcat_to_faithful, ChainLaw, FaithfulFunctor, FiniteSite, PresheafOfSets,
};
use qcat::completion::{cauchy_completion, cocompletion, enumerate_presheaves, is_left_adjoint_presheaf, Family, WeightClass};
use qcat::enriched::Presheaf;
use qcat::propcheck::{random_vcategory, rng};

fn point_pair() -> FiniteSite {
    let cat = common::category(&["a", "b", "X"], &[("i", "a", "X"), ("j", "b", "X")]);
    let (i, j) = (cat.find_arrow("i").unwrap(), cat.find_arrow("j").unwrap());
    FiniteSite::generated(cat, vec![vec![], vec![], vec![vec![i, j]]]).unwrap()
}

#[test]
fn enumeration_matches_the_column_scan() {
    let bases = [two_quantale(), chain_quantale(3, ChainLaw::Frame), chain_quantale(3, ChainLaw::Lukasiewicz)];
    let mut r = rng(11);
    for k in 0..30 {
        let a = random_vcategory(&bases[k % 3], &mut r, 3, 1);
        let got: BTreeSet<Presheaf> = enumerate_presheaves(&a, None, 10_000).unwrap().into_iter().collect();
        assert_eq!(got, common::brute_presheaves(&a));
    }
}

#[test]
fn left_adjoint_test_matches_the_copresheaf_scan() {
    let mut r = rng(12);
    let base = chain_quantale(3, ChainLaw::Lukasiewicz);
    for _ in 0..20 {
        let a = random_vcategory(&base, &mut r, 3, 1);
        for p in common::brute_presheaves(&a) {
            assert_eq!(is_left_adjoint_presheaf(&a, &p).is_some(), common::has_right_adjoint(&a, &p), "{p:?}");
        }
    }
}

#[test]
fn top_column_on_the_discrete_pair_has_no_right_adjoint() {
    let a = discrete_category(&two_quantale(), &["a", "b"]);
    let top = Presheaf { extent: 0, col: vec![1, 1] };
    assert!(!common::has_right_adjoint(&a, &top));
    assert!(is_left_adjoint_presheaf(&a, &top).is_none());
}

#[test]
fn half_distance_pair_gains_no_unexpected_objects() {
    let base = chain_quantale(3, ChainLaw::Frame);
    let l = base.hom(0, 0);
    let half = l.lookup("1/2").unwrap();
    let objects = vec![("x".to_string(), 0), ("y".to_string(), 0)];
    let a = std::sync::Arc::new(qcat::enriched::VCategory::new(base.clone(), objects, vec![l.top(), half, half, l.top()]).unwrap());
    let got: BTreeSet<Presheaf> = cauchy_completion(&a, 10_000).unwrap().members.into_iter().collect();
    let scanned: BTreeSet<Presheaf> = common::brute_presheaves(&a).into_iter().filter(|p| common::has_right_adjoint(&a, p)).collect();
    assert_eq!(got, scanned);
}

#[test]
fn down_sets_count_the_full_cocompletion() {
    let two = two_quantale();
    let cases = [
        discrete_category(&two, &["a", "b"]),
        preorder_category(&two, &["a", "b", "c"], &[(0, 1), (1, 2)]),
        preorder_category(&two, &["a", "b", "c", "d"], &[(0, 2), (1, 2), (1, 3)]),
    ];
    for a in &cases {
        let (r, _) = cocompletion(a, &WeightClass::Family(Family::All), 10_000).unwrap();
        assert_eq!(r.psh.len(), common::down_set_count(a));
    }
}

#[test]
fn plus_construction_rejects_and_repairs() {
    let site = point_pair();
    let f = PresheafOfSets::from_generators(
        site.category.clone(),
        common::sets(&[&["0", "1"], &["0", "1"], &["00", "11"]]),
        &[("i".into(), vec![0, 1]), ("j".into(), vec![0, 1])],
    )
    .unwrap();
    assert!(!common::is_sheaf(&site, &f));
    let (g, unit) = common::plus_plus(&site, &f);
    assert!(common::is_sheaf(&site, &g));
    assert_eq!(g.sets[2].len(), 4);
    let d = sheafify_with_details(&site, &f).unwrap();
    assert!(common::isomorphic_under(&d.sheaf, &d.unit, &g, &unit));
}

#[test]
fn isomorphism_search_respects_the_unit() {
    let site = point_pair();
    let f = PresheafOfSets::from_generators(
        site.category.clone(),
        common::sets(&[&["0", "1"], &["0", "1"], &["0", "1"]]),
        &[("i".into(), vec![0, 1]), ("j".into(), vec![0, 1])],
    )
    .unwrap();
    let (g, unit) = common::plus_plus(&site, &f);
    // swapping everywhere is the automorphism exchanging 0 and 1; swapping at one object is not natural
    let everywhere: Vec<Vec<usize>> = unit.iter().map(|u| u.iter().rev().copied().collect()).collect();
    let mut swapped = unit.clone();
    swapped[0].reverse();
    assert!(common::isomorphic_under(&g, &unit, &g, &everywhere));
    assert!(common::isomorphic_under(&g, &unit, &g, &unit));
    assert!(!common::isomorphic_under(&g, &unit, &g, &swapped));
}

#[test]
fn sheaf_on_the_trivial_site_is_left_alone() {
    let cat = common::category(&["a", "X"], &[("i", "a", "X")]);
    let site = FiniteSite::trivial(cat.clone());
    let f = PresheafOfSets::from_generators(cat, common::sets(&[&["0", "1"], &["p"]]), &[("i".into(), vec![1])]).unwrap();
    assert!(common::is_sheaf(&site, &f));
    let d = sheafify_with_details(&site, &f).unwrap();
    assert_eq!(d.sheaf, f);
}

#[test]
fn final_lifts_fail_before_cocompletion_and_hold_after() {
    let b = common::category(&["0", "1", "2"], &[("f", "0", "1"), ("g", "1", "2")]);
    let q = free_quantaloid(&b).unwrap();
    let gf = b.compose(b.find_arrow("g").unwrap(), b.find_arrow("f").unwrap()).unwrap();
    let arrows = [(0, 0, b.identity(0)), (1, 1, b.identity(2)), (0, 1, gf)].into_iter().collect();
    let inst = FaithfulFunctor::new(b.clone(), vec![("u".into(), 0), ("v".into(), 2)], arrows).unwrap();
    let (_, bad) = common::sinks_without_final_lift(&inst, &[0, 1]);
    assert!(!bad.is_empty(), "nothing lies over the middle object");
    let c = faithful_to_vcat(&inst, &q).unwrap();
    let (r, y) = cocompletion(&c, &WeightClass::Family(Family::All), 10_000).unwrap();
    let top = vcat_to_faithful(&r.psh, &b).unwrap();
    let all: Vec<usize> = (0..top.objects.len()).collect();
    assert!(common::sinks_without_final_lift(&top, &all).1.is_empty());
    assert!(common::sinks_without_final_lift(&top, y.map()).1.is_empty());
}
