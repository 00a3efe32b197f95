use std::sync::OnceLock;

use proptest::prelude::*;

use cremona::abelianisation::{phi_circ, phi_word, AbelVector};
use cremona::birmap::{compose, maps_equal};
use cremona::exactalg::parse::{parse_hom, parse_uni};
use cremona::exactalg::scalar::{gi, rat};
use cremona::exactalg::{HomPoly3, Rational};
use cremona::generators::linear::int_matrix;
use cremona::generators::{linear_map, quadratic_jcirc, sigma0, sigma1_jcirc, standard_quintic, Generator, Letter, Word};
use cremona::plane::{nu_key, p1, p2, NuKey, P1Point, ProjPoint};
use cremona::relations::{rational_grid, verify_q_positivity};
use cremona::spinor::{product_norm, RtVector};

/// Built once: the quintics are slow to certify.
fn alphabet() -> &'static [Generator] {
    static GENS: OnceLock<Vec<Generator>> = OnceLock::new();
    GENS.get_or_init(|| vec![
        sigma0(),
        sigma1_jcirc(),
        linear_map(&int_matrix([[1, 2, 0], [0, 1, 0], [0, 1, 1]])).unwrap(),
        quadratic_jcirc(1, &ProjPoint::real([1, 2, 3])).unwrap(),
        quadratic_jcirc(2, &ProjPoint::real([2, 1, 1])).unwrap(),
        standard_quintic(&[p1(), p2(), ProjPoint::from_gauss([(1, 0), (1, 0), (0, 1)])]).unwrap(),
        standard_quintic(&[p1(), p2(), ProjPoint::from_gauss([(1, 0), (2, 0), (0, 1)])]).unwrap(),
    ])
}

fn word(gens: &[Generator], picks: &[(usize, bool)]) -> Word {
    Word::new(
        picks
            .iter()
            .map(|&(i, inv)| {
                let l = Letter::new(gens[i % gens.len()].clone());
                if inv { l.inverse() } else { l }
            })
            .collect(),
    )
}

fn small_ratio() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn cubic_form() -> impl Strategy<Value = HomPoly3<Rational>> {
    prop::collection::vec(small_ratio(), 10).prop_map(|cs| {
        let exps = [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2], [0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]];
        HomPoly3::from_terms(3, exps.into_iter().zip(cs))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn words_times_their_inverse_vanish(picks in prop::collection::vec((0usize..7, any::<bool>()), 0..=6)) {
        let gens = alphabet();
        let w = word(gens, &picks);
        prop_assert!(phi_word(&w.concat(&w.inverse())).unwrap().is_zero());
        prop_assert_eq!(phi_word(&w.inverse()).unwrap(), phi_word(&w).unwrap());
    }

    #[test]
    fn phi_is_additive_on_concatenation(a in prop::collection::vec((0usize..7, any::<bool>()), 0..=4),
                                        b in prop::collection::vec((0usize..7, any::<bool>()), 0..=4)) {
        let gens = alphabet();
        let (u, v) = (word(gens, &a), word(gens, &b));
        prop_assert_eq!(phi_word(&u.concat(&v)).unwrap(), phi_word(&u).unwrap().add(&phi_word(&v).unwrap()));
    }

    #[test]
    fn abel_vectors_form_an_f2_space(a in prop::collection::btree_set((1i64..30, 1i64..30), 0..5),
                                     b in prop::collection::btree_set((1i64..30, 1i64..30), 0..5)) {
        let v = |s: &std::collections::BTreeSet<(i64, i64)>| AbelVector::from_keys(s.iter().map(|&(n, d)| NuKey::from_kappa(rat(n.min(d), n.max(d)))));
        let (x, y) = (v(&a), v(&b));
        prop_assert!(x.add(&x).is_zero());
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(AbelVector::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn key_ignores_real_scaling_and_conjugation(a in -9i64..=9, b in 1i64..=9, c in -9i64..=9, s in 1i64..=7) {
        prop_assume!(c != 0);
        let v = P1Point::new(gi(a, b), gi(c, 0)).unwrap();
        let scaled = P1Point::new(gi(a * s, b * s), gi(c * s, 0)).unwrap();
        let k = nu_key(&v).unwrap();
        prop_assert_eq!(nu_key(&scaled).unwrap(), k.clone());
        prop_assert_eq!(nu_key(&v.conj()).unwrap(), k.clone());
        prop_assert!(k.kappa() >= &rat(0, 1) && k.kappa() <= &rat(1, 1));
    }

    #[test]
    fn forms_print_and_parse_back(f in cubic_form()) {
        prop_assert_eq!(parse_hom::<Rational>(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn q_is_a_scaled_square(rho in small_ratio(), nu in small_ratio()) {
        prop_assume!(nu != rat(0, 1));
        let q = verify_q_positivity(&rho, &nu, &rational_grid(&rat(-3, 1), &rat(3, 1), 5)).unwrap();
        prop_assert!(q.square_identity);
        prop_assert!(q.leading_positive);
    }

    #[test]
    fn repeated_reflections_cancel(a in -5i64..=5, b in -5i64..=5, c in 1i64..=5) {
        prop_assume!(a != 0 || b != 0);
        let p = |s: String| parse_uni::<Rational>(&s, "t").unwrap();
        let v = RtVector::new(p(format!("{a}*t + 1")), p(format!("{b}")), p(format!("{c}")));
        prop_assert!(product_norm(&[v.clone(), v]).unwrap().is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn quintics_agree_with_their_inverses(re in -3i64..=3, im in 1i64..=3, x in -3i64..=3) {
        let q = ProjPoint::from_gauss([(1, 0), (x, 0), (re, im)]);
        if let Ok(t) = standard_quintic(&[p1(), p2(), q]) {
            let inv = t.inverse().unwrap();
            prop_assert!(compose(t.map(), inv.map()).is_identity());
            prop_assert_eq!(phi_circ(&inv).unwrap(), phi_circ(&t).unwrap());
        }
    }

    #[test]
    fn words_survive_json(picks in prop::collection::vec((0usize..7, any::<bool>()), 0..=4)) {
        let w = word(alphabet(), &picks);
        let back = Word::from_json(&w.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), w.to_json());
    }

    #[test]
    fn composition_is_associative(i in 0usize..7, j in 0usize..7, k in 0usize..5) {
        let g = alphabet();
        let (a, b, c) = (g[i].map(), g[j].map(), g[k].map());
        prop_assert!(maps_equal(&compose(a, &compose(b, c)), &compose(&compose(a, b), c)));
    }
}
