//! Small worked examples with values computed by hand.

use std::sync::Arc;

use qcat::analysis::{is_dense, is_fully_faithful};
use qcat::builders::{chain_quantale, discrete_category, free_quantaloid, preorder_category, two_quantale, ChainLaw, FiniteCategory, Presentation, DEFAULT_PATH_CAP};
use qcat::completion::{colimit_closure, completion, enumerate_presheaves, presheaf_object, Family, LimitClass, WeightClass};
use qcat::enriched::{
    companion, compose_dist, conjoint, enumerate_functors, ext_dist, identity_distributor, lift_dist, restrict, star_category,
    weighted_colimit, weighted_limit, Copresheaf, Presheaf, VDistributor, VFunctor, Weight,
};
use qcat::propcheck::{random_distributor, random_functor, random_vcategory, rng};
use qcat::quantaloid::{join, meet, right_extension, right_lift, OneCell};

fn cell(elt: usize) -> OneCell {
    OneCell { src: 0, dst: 0, elt }
}

#[test]
fn joins_meets_and_lifts_on_small_chains() {
    let two = two_quantale();
    let (bot, top) = (two.hom(0, 0).bottom(), two.hom(0, 0).top());
    assert_eq!(join(&two, 0, 0, &[bot, top]).unwrap(), top);
    assert_eq!(meet(&two, 0, 0, &[]).unwrap(), top);
    assert_eq!(right_lift(&two, cell(bot), cell(top)).unwrap().elt, bot);
    assert_eq!(right_extension(&two, cell(bot), cell(top)).unwrap().elt, bot);
    for x in [bot, top] {
        assert_eq!(right_lift(&two, cell(top), cell(x)).unwrap().elt, top);
    }

    let c3 = chain_quantale(3, ChainLaw::Frame);
    let l = c3.hom(0, 0);
    let (zero, half, one) = (l.lookup("0").unwrap(), l.lookup("1/2").unwrap(), l.lookup("1").unwrap());
    assert_eq!(join(&c3, 0, 0, &[zero, half]).unwrap(), half);
    assert_eq!(right_lift(&c3, cell(half), cell(one)).unwrap().elt, half);
}

#[test]
fn commutative_extensions_are_lifts() {
    let q = chain_quantale(3, ChainLaw::Lukasiewicz);
    for h in q.hom(0, 0).elements() {
        for f in q.hom(0, 0).elements() {
            assert_eq!(right_extension(&q, cell(h), cell(f)).unwrap(), right_lift(&q, cell(h), cell(f)).unwrap());
        }
    }
}

#[test]
fn extensions_in_a_free_quantaloid_by_scan() {
    let p = Presentation {
        objects: vec!["0".into(), "1".into()],
        arrows: vec![("f".into(), "0".into(), "1".into()), ("g".into(), "0".into(), "1".into())],
        relations: vec![],
    };
    let q = free_quantaloid(&FiniteCategory::from_presentation(&p, DEFAULT_PATH_CAP).unwrap()).unwrap();
    for (x, y, z) in [(0, 0, 1), (0, 1, 1), (1, 1, 1)] {
        for h in q.hom(x, z).elements() {
            for f in q.hom(x, y).elements() {
                let e = right_extension(&q, OneCell { src: x, dst: z, elt: h }, OneCell { src: x, dst: y, elt: f }).unwrap().elt;
                let scan = q.hom(y, z).elements().filter(|&r| q.hom(x, z).leq(q.compose(x, y, z, r, f), h));
                assert_eq!(e, q.hom(y, z).join_all(scan));
            }
        }
    }
}

#[test]
fn one_object_distributors_are_hom_elements() {
    let q = free_quantaloid(&FiniteCategory::discrete(&["u", "v"])).unwrap();
    for v in 0..2 {
        for w in 0..2 {
            let (sv, sw) = (star_category(&q, v), star_category(&q, w));
            let valid = q.hom(v, w).elements().filter(|&e| VDistributor::new(sv.clone(), sw.clone(), vec![e]).is_ok()).count();
            assert_eq!(valid, q.hom(v, w).len());
        }
    }
    let s = star_category(&two_quantale(), 0);
    assert_eq!(identity_distributor(&s).matrix(), &[1]);
}

#[test]
fn restriction_and_composition_laws() {
    let base = chain_quantale(3, ChainLaw::Lukasiewicz);
    let mut r = rng(5);
    for _ in 0..20 {
        let (a, b, c) = (random_vcategory(&base, &mut r, 3, 1), random_vcategory(&base, &mut r, 3, 1), random_vcategory(&base, &mut r, 2, 1));
        let p = random_distributor(&b, &a, &mut r);
        let q = random_distributor(&c, &b, &mut r);
        let s = random_distributor(&c, &c, &mut r);
        assert_eq!(restrict(&p, &VFunctor::identity(&a), &VFunctor::identity(&b)).unwrap(), p);
        assert_eq!(compose_dist(&p, &identity_distributor(&b)).unwrap(), p);
        assert_eq!(compose_dist(&identity_distributor(&a), &p).unwrap(), p);
        let left = compose_dist(&compose_dist(&p, &q).unwrap(), &s).unwrap();
        let right = compose_dist(&p, &compose_dist(&q, &s).unwrap()).unwrap();
        assert_eq!(left, right);
        if let Some(f) = random_functor(&a, &a, &mut r) {
            assert_eq!(restrict(&identity_distributor(&a), &f, &VFunctor::identity(&a)).unwrap(), conjoint(&f));
            // counit: companion then conjoint stays below the identity
            let counit = compose_dist(&companion(&f), &conjoint(&f)).unwrap();
            let id = identity_distributor(&a);
            for x in 0..a.len() {
                for y in 0..a.len() {
                    assert!(base.hom(a.extent(y), a.extent(x)).leq(counit.get(x, y), id.get(x, y)));
                }
            }
        }
    }
}

#[test]
fn extensions_reduce_one_step_at_a_time() {
    let base = two_quantale();
    let mut r = rng(8);
    for _ in 0..20 {
        let (x, y, z, w) = (
            random_vcategory(&base, &mut r, 3, 1),
            random_vcategory(&base, &mut r, 3, 1),
            random_vcategory(&base, &mut r, 2, 1),
            random_vcategory(&base, &mut r, 2, 1),
        );
        let p1 = random_distributor(&x, &y, &mut r);
        let p2 = random_distributor(&z, &x, &mut r);
        let q = random_distributor(&z, &w, &mut r);
        let chain = [p1.clone(), p2.clone()];
        assert_eq!(ext_dist(&chain, &q).unwrap(), ext_dist(&[p1], &ext_dist(&[p2], &q).unwrap()).unwrap());
        assert_eq!(ext_dist(&[], &q).unwrap(), q);
    }
}

#[test]
fn lifts_between_representables_on_the_discrete_pair() {
    let a = discrete_category(&two_quantale(), &["a", "b"]);
    let ya = Presheaf::representable(&a, 0).to_distributor(&a);
    let yb = Presheaf::representable(&a, 1).to_distributor(&a);
    assert_eq!(lift_dist(&yb, &[ya.clone()]).unwrap().matrix(), &[0]);
    assert_eq!(lift_dist(&ya, &[ya.clone()]).unwrap().matrix(), &[1]);
}

#[test]
fn top_weighted_colimit_and_limit_in_the_down_sets() {
    let two = two_quantale();
    let a = discrete_category(&two, &["a", "b"]);
    let all = enumerate_presheaves(&a, None, 100).unwrap();
    let r = presheaf_object(&a, all).unwrap();
    let y = r.yoneda.clone().unwrap();
    let top = Weight::unary(Presheaf { extent: 0, col: vec![1, 1] }.to_distributor(&a));
    let c = weighted_colimit(&top, &y).unwrap().functor().unwrap();
    assert_eq!(r.members[c.apply(0)].col, vec![1, 1]);
    let cotop = Copresheaf { extent: 0, row: vec![1, 1] }.to_distributor(&a);
    let l = weighted_limit(&[cotop], &y).unwrap().functor().unwrap();
    assert_eq!(r.members[l.apply(0)].col, vec![0, 0]);
}

#[test]
fn presheaf_object_on_a_point_is_a_two_chain() {
    let s = star_category(&two_quantale(), 0);
    let r = presheaf_object(&s, enumerate_presheaves(&s, None, 100).unwrap()).unwrap();
    assert_eq!(r.psh.len(), 2);
    let (lo, hi) = if r.members[0].col == [0] { (0, 1) } else { (1, 0) };
    assert_eq!((r.psh.hom(lo, hi), r.psh.hom(hi, lo)), (1, 0));
}

#[test]
fn closure_of_the_top_weight_skips_the_empty_down_set() {
    let a = discrete_category(&two_quantale(), &["a", "b"]);
    let top = Presheaf { extent: 0, col: vec![1, 1] };
    let got = colimit_closure(&a, &WeightClass::Weights(vec![Weight::unary(top.to_distributor(&a))]), 100).unwrap();
    assert_eq!(got.len(), 3);
    assert!(got.contains(&top));
    assert!(!got.contains(&Presheaf { extent: 0, col: vec![0, 0] }));
}

#[test]
fn completion_of_the_discrete_pair_is_the_up_sets() {
    let a = discrete_category(&two_quantale(), &["a", "b"]);
    let c = completion(&a, &LimitClass::Family(Family::All), 100).unwrap();
    assert_eq!(c.cat.len(), 4);
    assert!(is_fully_faithful(&c.embedding).passed());
    let empty = completion(&a, &LimitClass::empty(), 100).unwrap();
    assert_eq!(empty.cat.len(), 2);
}

#[test]
fn functors_from_a_point_pick_objects_of_that_extent() {
    let q = free_quantaloid(&FiniteCategory::discrete(&["u", "v"])).unwrap();
    let objects = vec![("x".to_string(), 0), ("y".to_string(), 1), ("z".to_string(), 0)];
    let hom = vec![1, 0, 0, 0, 1, 0, 0, 0, 1];
    let a = Arc::new(qcat::enriched::VCategory::new(q.clone(), objects, hom).unwrap());
    let fs = enumerate_functors(&star_category(&q, 0), &a, 100).unwrap();
    let mut picked: Vec<usize> = fs.iter().map(|f| f.apply(0)).collect();
    picked.sort();
    assert_eq!(picked, vec![0, 2]);
}

#[test]
fn pi_of_a_preorder_completion_with_a_duplicate_is_dense() {
    let two = two_quantale();
    let a = preorder_category(&two, &["a", "b", "c"], &[(0, 1), (1, 0), (1, 2)]);
    let r = presheaf_object(&a, enumerate_presheaves(&a, None, 100).unwrap()).unwrap();
    assert!(is_dense(&r.pi).passed());
    assert_eq!(r.psh.len(), 3);
}
