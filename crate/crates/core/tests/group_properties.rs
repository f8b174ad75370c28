//! Root datum and extended affine Weyl group invariants, checked
//! exhaustively on small data and by proptest on random samples.

use std::sync::Arc;

use alcove_newton::affine_weyl::{AffineRoot, AffineWeylGroup, ExtAffineElement};
use alcove_newton::linalg::RatVec;
use alcove_newton::root_datum::{parse_cartan_type, DiagramAutomorphism, LatticeChoice, RootDatum, WeylElement};
use num_rational::Rational64;
use proptest::prelude::*;

fn group(t: &str, l: LatticeChoice, perm: Option<&[usize]>) -> Arc<AffineWeylGroup> {
    let d = Arc::new(RootDatum::build(&parse_cartan_type(t).unwrap(), &l).unwrap());
    let delta = match perm {
        Some(p) => DiagramAutomorphism::from_node_permutation(&d, p).unwrap(),
        None => DiagramAutomorphism::identity(&d),
    };
    Arc::new(AffineWeylGroup::new(d, delta).unwrap())
}

fn small_groups() -> Vec<Arc<AffineWeylGroup>> {
    vec![
        group("A1", LatticeChoice::SimplyConnected, None),
        group("A1", LatticeChoice::Adjoint, None),
        group("A1", LatticeChoice::GlStyle, None),
        group("A1xA1", LatticeChoice::SimplyConnected, Some(&[1, 0])),
        group("A2", LatticeChoice::SimplyConnected, None),
        group("A2", LatticeChoice::SimplyConnected, Some(&[1, 0])),
        group("C2", LatticeChoice::SimplyConnected, None),
        group("G2", LatticeChoice::SimplyConnected, None),
    ]
}

/// `s_α(v) = v - ⟨v, α⟩ α∨`.
fn reflect(d: &RootDatum, i: usize, v: &[i64]) -> Vec<i64> {
    let p: i64 = v.iter().zip(d.simple_root(i)).map(|(a, b)| a * b).sum();
    v.iter().zip(d.simple_coroot(i)).map(|(a, c)| a - p * c).collect()
}

#[test]
fn weyl_matrices_match_reflection_formula() {
    for g in small_groups() {
        let d = g.datum();
        for w in d.weyl().elements() {
            let word = d.reduced_word(w);
            for k in 0..d.lattice_rank() {
                let mut e = vec![0; d.lattice_rank()];
                e[k] = 1;
                let mut v = e.clone();
                for &i in word.iter().rev() {
                    v = reflect(d, i, &v);
                }
                assert_eq!(d.weyl().act(w, &e), v);
            }
        }
    }
}

#[test]
fn pairing_is_weyl_equivariant() {
    for g in small_groups() {
        let d = g.datum();
        for w in d.weyl().elements() {
            for r in 0..d.num_roots() {
                let image = d.weyl().act_root(w, r);
                for k in 0..d.lattice_rank() {
                    let mut v = vec![0; d.lattice_rank()];
                    v[k] = 1;
                    assert_eq!(d.pair_root(&d.weyl().act(w, &v), image), d.pair_root(&v, r));
                }
            }
        }
    }
}

#[test]
fn twice_rho_pairs_to_two_with_simple_coroots() {
    for g in small_groups() {
        let d = g.datum();
        for i in 0..d.rank() {
            let p: i64 = d.simple_coroot(i).iter().zip(d.rho2()).map(|(a, b)| a * b).sum();
            assert_eq!(p, 2);
        }
    }
}

#[test]
fn dominant_representative_matches_orbit_search() {
    let g = group("G2", LatticeChoice::SimplyConnected, None);
    let d = g.datum();
    for a in -3..=3 {
        for b in -3..=3 {
            let v = RatVec::new(vec![a, b], 2);
            let (dom, w) = d.dominant_representative(&v);
            assert_eq!(d.weyl_action(w, &v).unwrap(), dom);
            let dominant_images: Vec<RatVec> = d
                .weyl()
                .elements()
                .map(|u| d.weyl_action(u, &v).unwrap())
                .filter(|x| d.is_dominant(x))
                .collect();
            assert!(dominant_images.iter().all(|x| *x == dom));
            assert!(!dominant_images.is_empty());
        }
    }
}

#[test]
fn min_coset_representative_is_coset_minimum() {
    for g in small_groups() {
        let d = g.datum();
        let n = d.rank();
        for mask in 0u32..1 << n {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let parabolic: Vec<WeylElement> = d.weyl().elements().filter(|&v| d.in_parabolic(v, &subset)).collect();
            for w in d.weyl().elements() {
                let m = d.min_coset_representative(w, &subset);
                let coset: Vec<WeylElement> = parabolic.iter().map(|&v| d.weyl().mul(w, v)).collect();
                assert!(coset.contains(&m));
                let min = coset.iter().map(|&v| d.weyl().length(v)).min().unwrap();
                assert_eq!(d.weyl().length(m), min);
                assert!(d.is_min_coset_representative(m, &subset));
            }
        }
    }
}

#[test]
fn levi_of_g2_short_root() {
    let d = Arc::new(RootDatum::build(&parse_cartan_type("G2").unwrap(), &LatticeChoice::SimplyConnected).unwrap());
    let pair = |i: usize, j: usize| d.simple_root(i).iter().zip(d.simple_coroot(j)).map(|(a, b)| a * b).sum::<i64>();
    let short = (0..2).find(|&i| pair(1 - i, i) == -3).unwrap();
    let levi = d.build_levi(&[short]).unwrap();
    assert_eq!(levi.positive_roots().len(), 1);
    assert_eq!(levi.rho2(), d.simple_root(short));
}

#[test]
fn lengths_agree_with_separation_and_symmetries() {
    for g in small_groups() {
        for x in g.elements_up_to_length(6, 1) {
            let l = g.length(&x);
            assert_eq!(l, g.length_by_separation(&x));
            assert_eq!(l, g.length(&g.inverse(&x)));
            assert_eq!(l, g.length(&g.frobenius_apply(&x)));
            for s in g.simples() {
                let ls = g.length(&g.mul(&s.element, &x));
                assert!(ls + 1 == l || ls == l + 1);
            }
        }
    }
}

#[test]
fn simple_reflections_and_omega() {
    for g in small_groups() {
        for s in g.simples() {
            assert_eq!(g.length(&s.element), 1);
            assert_eq!(g.mul(&s.element, &s.element), g.identity());
        }
        for omega in g.omega_representatives(1) {
            assert_eq!(g.length(&omega), 0);
            let mut images: Vec<usize> = g.simples().iter().map(|s| g.omega_conjugate_label(&omega, s.label)).collect();
            images.sort_unstable();
            let mut labels: Vec<usize> = g.simples().iter().map(|s| s.label).collect();
            labels.sort_unstable();
            assert_eq!(images, labels);
        }
    }
}

#[test]
fn omega_words_round_trip() {
    for g in small_groups() {
        for x in g.elements_up_to_length(6, 1) {
            let (omega, word) = g.omega_word(&x);
            assert_eq!(g.length(&omega), 0);
            assert_eq!(word.len(), g.length(&x));
            assert_eq!(g.from_omega_word(&omega, &word).unwrap(), x);
            let (omega_r, word_r) = g.omega_word_right(&x);
            assert_eq!(omega_r, omega);
            assert_eq!(g.from_omega_word(&omega_r, &word_r).unwrap(), x);
        }
    }
}

#[test]
fn long_reflection_word_by_multiplication() {
    let g = group("A1", LatticeChoice::SimplyConnected, None);
    let s0 = g.simples()[0].element.clone();
    let s1 = g.simples()[1].element.clone();
    let product = g.mul(&g.mul(&s0, &s1), &s0);
    let x = ExtAffineElement::new(vec![-2], g.datum().weyl().simple_reflection(0));
    assert_eq!(product, x);
    assert_eq!(g.omega_word(&x), (g.identity(), vec![0, 1, 0]));
}

fn arb_element(g: Arc<AffineWeylGroup>) -> impl Strategy<Value = ExtAffineElement> {
    let r = g.datum().lattice_rank();
    let order = g.datum().weyl().order();
    (proptest::collection::vec(-5i64..=5, r), 0..order).prop_map(|(l, u)| ExtAffineElement::new(l, WeylElement(u as u32)))
}

fn arb_group_and_elements() -> impl Strategy<Value = (Arc<AffineWeylGroup>, ExtAffineElement, ExtAffineElement, ExtAffineElement)> {
    (0..8usize).prop_flat_map(|i| {
        let g = small_groups().swap_remove(i);
        (Just(g.clone()), arb_element(g.clone()), arb_element(g.clone()), arb_element(g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_laws((g, x, y, z) in arb_group_and_elements()) {
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
        prop_assert_eq!(g.frobenius_apply(&g.mul(&x, &y)), g.mul(&g.frobenius_apply(&x), &g.frobenius_apply(&y)));
        prop_assert_eq!(g.length(&x), g.length_by_separation(&x));
    }

    #[test]
    fn affine_root_action_is_an_action((g, x, y, _z) in arb_group_and_elements(), level in -4i64..=4, seed in 0usize..64) {
        let root = seed % g.datum().num_roots();
        let a = AffineRoot { root, level };
        prop_assert_eq!(g.affine_root_action(&g.mul(&x, &y), a), g.affine_root_action(&x, g.affine_root_action(&y, a)));
        prop_assert_eq!(g.affine_root_action(&g.identity(), a), a);
    }

    #[test]
    fn action_on_points_is_compatible((g, x, y, _z) in arb_group_and_elements()) {
        let p = g.base_point().clone();
        prop_assert_eq!(g.act_point(&g.mul(&x, &y), &p), g.act_point(&x, &g.act_point(&y, &p)));
    }

    #[test]
    fn dominant_representative_is_weyl_invariant((g, x, _y, _z) in arb_group_and_elements(), den in 1i64..5) {
        let d = g.datum();
        let v = RatVec::new(x.lambda().to_vec(), den);
        let (dom, _) = d.dominant_representative(&v);
        let moved = d.weyl_action(x.finite_part(), &v).unwrap();
        prop_assert_eq!(d.dominant_representative(&moved).0, dom.clone());
        prop_assert_eq!(d.dominant_representative(&dom).0, dom.clone());
        for i in 0..d.rank() {
            prop_assert!(dom.pair(d.simple_root(i)) >= Rational64::from_integer(0));
        }
    }
}
