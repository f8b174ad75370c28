//! Deligne–Lusztig reduction: independence of the pivot strategy and
//! structural properties of class polynomials and dimensions.

use std::sync::Arc;

use alcove_newton::affine_weyl::AffineWeylGroup;
use alcove_newton::alcove::sigma_support;
use alcove_newton::dl_reduction::{ClassPolynomial, Minimality, PivotOrder, Reducer, ReductionTree};
use alcove_newton::linalg::RatVec;
use alcove_newton::newton_kottwitz::{Scope, SigmaGroup};
use alcove_newton::verify::{run_sweep, Check, GroupSpec, SweepConfig};
use rayon::prelude::*;

fn data() -> Vec<(&'static str, Arc<AffineWeylGroup>)> {
    [
        ("A1 sc", "A1", "sc", None),
        ("A1 ad", "A1", "ad", None),
        ("GL2", "A1", "gl", None),
        ("A1xA1 swap", "A1xA1", "sc", Some(vec![2, 1])),
        ("A2 sc", "A2", "sc", None),
        ("A2 flip", "A2", "sc", Some(vec![2, 1])),
        ("C2", "C2", "sc", None),
        ("G2", "G2", "sc", None),
    ]
    .into_iter()
    .map(|(n, t, l, s)| (n, GroupSpec::new(t, l, s).build().unwrap()))
    .collect()
}

fn reducer(g: &Arc<AffineWeylGroup>, order: PivotOrder) -> Reducer {
    Reducer::with_order(SigmaGroup::new(g.clone(), Scope::Ambient), order)
}

#[test]
fn results_do_not_depend_on_pivot_order() {
    data().par_iter().for_each(|(name, g)| {
        let asc = reducer(g, PivotOrder::Ascending);
        let desc = reducer(g, PivotOrder::Descending);
        for x in g.elements_up_to_length(8, 1) {
            let a = asc.summary(&x).unwrap();
            let d = desc.summary(&x).unwrap();
            assert_eq!(a.polys, d.polys, "{name}: class polynomials of {x:?}");
            assert_eq!(a.dims, d.dims, "{name}: dimensions of {x:?}");
            assert_eq!(asc.b_of_x(&x).unwrap(), desc.b_of_x(&x).unwrap(), "{name}");
        }
    });
}

#[test]
fn polynomials_are_consistent() {
    for (name, g) in data() {
        let r = reducer(&g, PivotOrder::Ascending);
        let sg = r.sigma_group();
        for x in g.elements_up_to_length(7, 1) {
            let s = r.summary(&x).unwrap();
            let total = s.polys.values().fold(ClassPolynomial::new(vec![]), |acc, f| acc.add(f));
            assert_eq!(total.eval(1), 1, "{name}: {x:?}");
            let kappa = sg.kottwitz_point(&x);
            for (c, f) in &s.polys {
                assert!(!f.is_zero());
                assert!(f.degree().unwrap() <= g.length(&x), "{name}");
                assert_eq!(c.kappa, kappa, "{name}");
                let d = s.dims[c];
                assert!(d >= 0 && d as usize <= g.length(&x), "{name}: dim {d} for {x:?}");
            }
        }
    }
}

#[test]
fn spherical_support_gives_only_the_basic_class() {
    for (name, g) in data() {
        let r = reducer(&g, PivotOrder::Ascending);
        let sg = r.sigma_group();
        for x in g.elements_up_to_length(7, 1) {
            if !sigma_support(&g, &x).spherical {
                continue;
            }
            let classes = r.b_of_x(&x).unwrap();
            let basic = sg.basic_class(&sg.kottwitz_point(&x));
            assert_eq!(classes, vec![basic], "{name}: {x:?}");
        }
    }
}

#[test]
fn dominant_translations_are_single_leaves() {
    for (name, g) in data() {
        let r = reducer(&g, PivotOrder::Ascending);
        let sg = r.sigma_group();
        for x in g.elements_up_to_length(6, 1).into_iter().filter(|x| x.is_translation()) {
            if !g.datum().is_dominant(&RatVec::from_integers(x.lambda())) {
                continue;
            }
            assert!(matches!(r.minimality(&x), Minimality::Minimal(_)), "{name}");
            let c = sg.class_of(&x).unwrap();
            let s = r.summary(&x).unwrap();
            assert_eq!(s.polys.len(), 1);
            assert_eq!(s.polys[&c], ClassPolynomial::one(), "{name}");
            assert_eq!(s.dims[&c], 0, "{name}");
        }
    }
}

#[test]
fn reduction_tree_leaves_cover_the_classes() {
    for (name, g) in data() {
        let r = reducer(&g, PivotOrder::Ascending);
        for x in g.elements_up_to_length(6, 1) {
            let tree = r.reduce(&x).unwrap();
            let mut from_tree: Vec<_> = tree.leaves().into_iter().map(|(_, c)| c.clone()).collect();
            from_tree.sort();
            from_tree.dedup();
            assert_eq!(from_tree, r.b_of_x(&x).unwrap(), "{name}: {x:?}");
            if let ReductionTree::Split { step, .. } = &tree {
                assert_eq!(g.length(&step.y), g.length(&x));
                assert_eq!(g.length(&step.conjugate) + 2, g.length(&x));
                assert_eq!(g.length(&step.shortened) + 1, g.length(&x));
            }
        }
    }
}

#[test]
fn memo_is_transparent() {
    for (name, g) in data() {
        let warm = reducer(&g, PivotOrder::Ascending);
        let elements = g.elements_up_to_length(6, 1);
        for x in &elements {
            warm.summary(x).unwrap();
        }
        for x in elements.iter().rev() {
            let cold = reducer(&g, PivotOrder::Ascending);
            assert_eq!(*warm.summary(x).unwrap(), *cold.summary(x).unwrap(), "{name}: {x:?}");
        }
    }
}

#[test]
fn gl2_translation_sweep() {
    let spec = GroupSpec::new("A1", "gl", None);
    let report = run_sweep(&SweepConfig::new(spec, 4, Check::ALL.to_vec())).unwrap();
    assert!(report.passed());
    let t1 = report.checks.iter().find(|c| c.name == "theorem1").unwrap();
    let verdict = t1
        .verdicts
        .iter()
        .find(|v| v["element"]["lambda"] == serde_json::json!([1, 0]) && v["element"]["u"] == serde_json::json!([]))
        .expect("t^(1,0) swept");
    assert_eq!(verdict["pass"], serde_json::Value::Bool(true));
}

#[test]
fn c2_corollary_sweep() {
    let spec = GroupSpec::new("C2", "sc", None);
    let report = run_sweep(&SweepConfig::new(spec, 6, vec![Check::Corollary])).unwrap();
    assert!(report.passed(), "{}", report.to_value());
    assert!(report.aggregate.alcove_pairs > 0);
}

#[test]
fn classpoly_fixture_in_gl2() {
    let g = GroupSpec::new("A1", "gl", None).build().unwrap();
    let r = reducer(&g, PivotOrder::Ascending);
    let s = g.simples().iter().find(|s| s.node.is_none()).unwrap().element.clone();
    let x = g.mul(&g.mul(&s, &g.simples().iter().find(|s| s.node == Some(0)).unwrap().element), &s);
    let polys = r.class_polynomials(&x).unwrap();
    let mut coeffs: Vec<Vec<i64>> = polys.values().map(|f| f.coefficients().to_vec()).collect();
    coeffs.sort();
    assert_eq!(coeffs, vec![vec![-1, 1], vec![0, 1]]);
    let generic = r.generic_class(&x).unwrap();
    assert_eq!(r.dimension_table(&x).unwrap()[&generic], g.length(&x) as i64 - 2);
}
