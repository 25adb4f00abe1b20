use num_complex::Complex;
use proptest::prelude::*;
use zk_parafermion::affine::monodromy_charge;
use zk_parafermion::coset::{coset_s_compact, field_identify, from_lm, to_lm};
use zk_parafermion::interferometry::sigma_xx_curve;
use zk_parafermion::lie::{cartan_data, weight_inner_product, weyl_group};
use zk_parafermion::{CosetWeight, LmLabel, Rational, Weight};

fn weight_strategy(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-4i64..5, rank).prop_map(|v| Weight::from_integers(&v))
}

fn coset_weight() -> impl Strategy<Value = CosetWeight> {
    (2usize..=8).prop_flat_map(|k| (0..k as i64, 0..k as i64).prop_map(move |(m, n)| CosetWeight::new(m, n, k).unwrap()))
}

proptest! {
    #[test]
    fn weyl_action_is_isometric(k in 2usize..=5, seed in any::<prop::sample::Index>(), a in weight_strategy(4), b in weight_strategy(4)) {
        let rank = k - 1;
        let a = Weight::new(a.dynkin()[..rank].to_vec());
        let b = Weight::new(b.dynkin()[..rank].to_vec());
        let cd = cartan_data(k).unwrap();
        let group = weyl_group(k).unwrap();
        let w = &group.elements()[seed.index(group.size())];
        let before = weight_inner_product(&a, &b, &cd).unwrap();
        let after = weight_inner_product(&w.act(&a), &w.act(&b), &cd).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn inner_product_bilinear_symmetric(a in weight_strategy(3), b in weight_strategy(3), c in weight_strategy(3)) {
        let cd = cartan_data(4).unwrap();
        let ip = |x: &Weight, y: &Weight| weight_inner_product(x, y, &cd).unwrap();
        prop_assert_eq!(ip(&a, &b), ip(&b, &a));
        prop_assert_eq!(ip(&a.add(&b).unwrap(), &c), ip(&a, &c) + ip(&b, &c));
    }

    #[test]
    fn lm_round_trip(w in coset_weight()) {
        prop_assert_eq!(from_lm(&to_lm(&w)).unwrap(), w);
    }

    #[test]
    fn identification_is_idempotent(k in 2usize..=8, l in 0i64..=8, m in -20i64..20) {
        prop_assume!(l <= k as i64 && (l - m).rem_euclid(2) == 0);
        let once = field_identify(&LmLabel::new(l, m, k).unwrap()).unwrap();
        prop_assert!(once.m() >= 0 && once.m() <= once.l());
        prop_assert_eq!(field_identify(&once).unwrap(), once);
    }

    #[test]
    fn monodromy_charge_bounded(w in coset_weight(), p in 0i64..8) {
        let q = monodromy_charge(p, &w).unwrap();
        prop_assert!(q <= Rational::from_integer(0) && q > Rational::from_integer(-1));
        // Q_J is additive mod 1 along a J-orbit.
        let r = monodromy_charge(1, &w.apply_current(p)).unwrap() - monodromy_charge(1, &w).unwrap();
        let expected = monodromy_charge(1, &CosetWeight::vacuum(w.k()).apply_current(p)).unwrap();
        prop_assert_eq!((r - expected).fract(), Rational::from_integer(0));
    }

    #[test]
    fn curve_mean_and_swing(k in 2usize..=5, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(),
                            t1 in (-2.0f64..2.0, -2.0f64..2.0), t2 in (-2.0f64..2.0, -2.0f64..2.0)) {
        let s = coset_s_compact::<f64>(k).unwrap().s;
        let a = s.labels()[i.index(s.dim())];
        let b = s.labels()[j.index(s.dim())];
        let (t1, t2) = (Complex::new(t1.0, t1.1), Complex::new(t2.0, t2.1));
        let p = sigma_xx_curve(&s, &a, &b, t1, t2, 64).unwrap();
        prop_assert!((p.mean() - (t1.norm_sqr() + t2.norm_sqr())).abs() < 1e-10);
        prop_assert!(p.sigma_xx.iter().all(|x| *x >= 0.0));
        let dense = sigma_xx_curve(&s, &a, &b, t1, t2, 4096).unwrap();
        let max = dense.sigma_xx.iter().cloned().fold(f64::MIN, f64::max);
        let min = dense.sigma_xx.iter().cloned().fold(f64::MAX, f64::min);
        prop_assert!((max - min - 4.0 * p.contrast()).abs() < 1e-4);
    }
}
