use proptest::prelude::*;

use surdsym_core::cf;
use surdsym_core::oracle::h0_cycle_walk;
use surdsym_core::period::{self, canonical_rotation, is_primitive_period};
use surdsym_core::reduction::{self, is_reduced};
use surdsym_core::{is_square, Form, Generator, Int};

fn indefinite_nonsquare() -> impl Strategy<Value = Form> {
    (-80i128..=80, -80i128..=80, -80i128..=80)
        .prop_map(|(m, n, k)| Form::new(m, n, k))
        .prop_filter("Δ > 0, non-square", |f| {
            let d = f.discriminant().unwrap();
            d > 0 && !is_square(d)
        })
}

/// Forms in the same class as `f` share an `H⁰` cycle.
fn same_class(a: &Form, b: &Form) -> bool {
    let (ha, _) = period::h0_member(a).unwrap();
    let (hb, _) = period::h0_member(b).unwrap();
    h0_cycle_walk(&ha).unwrap().0.contains(&hb)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn reduce_to_h0_stays_in_class(f in indefinite_nonsquare()) {
        let r = reduction::reduce_to_h0(&f).unwrap();
        prop_assert!(r.form.m * r.form.n <= 0);
        prop_assert_eq!(f.apply_word(&r.word).unwrap(), r.form);
        prop_assert_eq!(r.form.discriminant().unwrap(), f.discriminant().unwrap());
    }

    #[test]
    fn h0_walk_matches_counts(f in indefinite_nonsquare()) {
        let (h, _) = period::h0_member(&f).unwrap();
        let (cycle, word) = h0_cycle_walk(&h).unwrap();
        let report = period::classify_class(&f).unwrap();
        prop_assert_eq!(cycle.len() as Int, report.t);
        prop_assert_eq!(word.exponent_sum(Generator::B) as Int, report.t_up);
        prop_assert_eq!(word.exponent_sum(Generator::A) as Int, report.t_down);
        prop_assert_eq!(h.apply_word(&word).unwrap(), h);
    }

    #[test]
    fn reduced_cycle_is_a_cycle(f in indefinite_nonsquare()) {
        let c = reduction::reduced_cycle(&f).unwrap();
        prop_assert!(c.forms.iter().all(is_reduced));
        prop_assert!(reduction::all_distinct(&c.forms));
        prop_assert_eq!(c.forms.len(), c.modular_period.len());
        prop_assert!(c.modular_period.iter().all(|&x| x >= 2));
        let mut h = c.forms[0];
        for (i, &b) in c.modular_period.iter().enumerate() {
            prop_assert_eq!(h, c.forms[i]);
            h = h.apply_pow(Generator::A, b as u64).unwrap().apply(Generator::R).unwrap();
        }
        prop_assert_eq!(h, c.forms[0]);
        prop_assert!(same_class(&c.forms[0], &f));
    }

    #[test]
    fn modular_conversion_matches_cycle(f in indefinite_nonsquare()) {
        let c = reduction::reduced_cycle(&f).unwrap();
        let converted = reduction::modular_period_from_gamma(&f).unwrap();
        prop_assert_eq!(canonical_rotation(&converted), canonical_rotation(&c.modular_period));
    }

    #[test]
    fn classical_reduction_reaches_reduced_form(m in 1i128..60, n in 1i128..60, k in -200i128..0) {
        let f = Form::new(m, n, k);
        let d = f.discriminant().unwrap();
        prop_assume!(d > 0 && !is_square(d));
        let pre = cf::modular_cf_surd(&f).unwrap().preperiod.len() as u64;
        let (g, word) = reduction::reduce_classical(&f).unwrap();
        prop_assert!(is_reduced(&g));
        prop_assert_eq!(f.apply_word(&word).unwrap(), g);
        prop_assert_eq!(word.exponent_sum(Generator::R), pre);
        prop_assert!(same_class(&f, &g));
    }

    #[test]
    fn periods_are_primitive(f in indefinite_nonsquare()) {
        let g = if f.m == 0 { f.apply(Generator::R).unwrap() } else { f };
        prop_assert!(is_primitive_period(&cf::period_of_class(&g).unwrap()));
    }

    #[test]
    fn period_to_forms_round_trip(s in prop::collection::vec(1i128..6, 1..7)) {
        prop_assume!(is_primitive_period(&s));
        let (f, g) = cf::period_to_forms(&s).unwrap();
        prop_assert_eq!(cf::cf_surd(&f).unwrap().period, s.clone());
        prop_assert!(cf::cf_surd(&f).unwrap().preperiod.is_empty());
        let gamma_g = cf::period_of_class(&g).unwrap();
        prop_assert_eq!(canonical_rotation(&gamma_g), canonical_rotation(&s));
        if s.len() % 2 == 1 {
            prop_assert!(same_class(&f, &g));
        }
    }
}
