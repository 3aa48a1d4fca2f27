use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratser::automata::{
    automaton_to_term, behavior_coefficients, brute_force_difference, check_simulation, compile_term,
    equivalent, nat_difference, search_simulation, Direction, EquivSemiring,
};
use ratser::harness::random::{random_automaton_pair, random_simulation, random_term, TermShape};
use ratser::par::Execution;
use ratser::semiring::{ExtendedNat, ExtendedNaturals, Naturals, OrderedSemiring, Semiring, StarSemiring, ValueText};
use ratser::series::{Alphabet, SeriesSemiring, TruncatedSeries};
use ratser::term::{eval_term, normalize, normalize_disjoint};

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

fn extnat() -> impl Strategy<Value = ExtendedNat> {
    prop_oneof![4 => (0u64..5).prop_map(ExtendedNat::fin), 1 => Just(ExtendedNat::Inf)]
}

fn table<S: ValueText>(s: &S, x: &TruncatedSeries<S::Elem>) -> BTreeMap<String, String> {
    x.iter()
        .filter(|(_, v)| !s.is_zero(v))
        .map(|(w, v)| (x.alphabet().render(w), s.render(v)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extended_naturals_laws(a in extnat(), b in extnat(), c in extnat()) {
        let s = ExtendedNaturals;
        prop_assert_eq!(s.add(&a, &b), s.add(&b, &a));
        prop_assert_eq!(s.mul(&a, &b), s.mul(&b, &a));
        prop_assert_eq!(s.mul(&a, &s.add(&b, &c)), s.add(&s.mul(&a, &b), &s.mul(&a, &c)));
        prop_assert_eq!(s.mul(&s.mul(&a, &b), &c), s.mul(&a, &s.mul(&b, &c)));
        prop_assert!(s.is_zero(&s.mul(&a, &s.zero())));
        let star = s.star(&a).unwrap();
        prop_assert_eq!(&star, &s.add(&s.one(), &s.mul(&a, &star)));
        prop_assert!(s.le(&a, &s.add(&a, &b)));
    }

    #[test]
    fn compiled_automaton_has_the_term_series(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, &ab(), TermShape { depth: 4, ..TermShape::default() });
        let s = ExtendedNaturals;
        let m = compile_term(&t, &s, &ab()).unwrap();
        let direct = eval_term(&t, &SeriesSemiring::new(s, ab(), 4)).unwrap();
        prop_assert_eq!(table(&s, &behavior_coefficients(&s, &m, 4)), table(&s, &direct), "{}", t);
    }

    #[test]
    fn term_round_trips_through_automaton(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, &ab(), TermShape { depth: 4, ..TermShape::default() });
        let back = automaton_to_term(&ExtendedNaturals, &compile_term(&t, &ExtendedNaturals, &ab()).unwrap());
        prop_assert_eq!(equivalent(&t, &back, EquivSemiring::Ninf, &ab()).unwrap(), None, "{} vs {}", t, back);
    }

    #[test]
    fn normal_forms_are_equivalent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, &ab(), TermShape::default());
        for nf in [normalize(&t), normalize_disjoint(&t, &ab()).unwrap()] {
            prop_assert_eq!(equivalent(&t, &nf.to_term(), EquivSemiring::Ninf, &ab()).unwrap(), None, "{}", nf);
        }
    }

    #[test]
    fn nat_decider_agrees_with_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m1, m2) = random_automaton_pair(&mut rng, &ab(), 3).unwrap();
        let decided = nat_difference(&m1, &m2).unwrap();
        let window = m1.dim() + m2.dim();
        prop_assert_eq!(decided, brute_force_difference(&Naturals, &m1, &m2, window).unwrap());
    }

    #[test]
    fn simulation_search_matches_across_schedules(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_simulation(&mut rng, &ab(), 4, 2).unwrap();
        prop_assert!(check_simulation(&Naturals, &inst.a, &inst.b, &inst.rho, Direction::Forward).unwrap());
        let seq = search_simulation(&Naturals, &inst.a, &inst.b, 1 << 20, Execution::Sequential).unwrap();
        let par = search_simulation(&Naturals, &inst.a, &inst.b, 1 << 20, Execution::Parallel).unwrap();
        prop_assert!(seq.is_some());
        prop_assert_eq!(
            seq.map(|w| (w.direction, w.rho.map().to_vec())),
            par.map(|w| (w.direction, w.rho.map().to_vec()))
        );
    }
}

#[test]
fn proper_terms_agree_over_naturals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shape = TermShape { depth: 4, inf: false, proper_stars: true };
    for _ in 0..40 {
        let t = random_term(&mut rng, &ab(), shape);
        let m = compile_term(&t, &Naturals, &ab()).unwrap();
        let direct = eval_term(&t, &SeriesSemiring::new(Naturals, ab(), 4)).unwrap();
        assert_eq!(table(&Naturals, &behavior_coefficients(&Naturals, &m, 4)), table(&Naturals, &direct), "{t}");
        assert_eq!(equivalent(&t, &t, EquivSemiring::N, &ab()).unwrap(), None);
    }
}
