use cybe_core::io::{parse, serialize, Document};
use cybe_core::lie::{sl, BasisIndex, Tensor2};
use cybe_core::manin::{residue_pairing, LaurentLoop};
use cybe_core::poly::{bracket_slots, embed, flip, Factor, MLaurent, Monomial, RatFun, SlotPair, Var};
use cybe_core::scalars::{rat, Cyclotomic, Ring};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = cybe_core::scalars::Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn cyclotomic(order: u32) -> impl Strategy<Value = Cyclotomic> {
    let phi = cybe_core::scalars::euler_phi(order);
    prop::collection::vec(small_rational(), phi).prop_map(move |c| Cyclotomic::from_coeffs(order, c).unwrap())
}

fn laurent() -> impl Strategy<Value = MLaurent> {
    prop::collection::vec(((-1i32..=2, -1i32..=2), small_rational()), 0..4).prop_map(|terms| {
        let mut p = MLaurent::default();
        for ((ex, ey), c) in terms {
            p.add_term(Monomial::var(Var::X, ex).mul(&Monomial::var(Var::Y, ey)), Cyclotomic::from_rational(c));
        }
        p
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (laurent(), 0u32..=2, any::<bool>()).prop_map(|(num, m, swap)| {
        let f = if swap { Factor::Diff(Var::Y, Var::X) } else { Factor::Diff(Var::X, Var::Y) };
        RatFun::new(num, [(f, m)]).unwrap()
    })
}

fn basis_index(n: usize) -> impl Strategy<Value = BasisIndex> {
    let b = sl(n).basis().to_vec();
    (0..b.len()).prop_map(move |i| b[i])
}

fn tensor(n: usize) -> impl Strategy<Value = Tensor2<RatFun>> {
    prop::collection::vec((basis_index(n), basis_index(n), ratfun()), 0..5).prop_map(move |entries| {
        let mut t = Tensor2::zero(n);
        for (a, b, c) in entries {
            t.add_term(a, b, c);
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic(5), b in cyclotomic(5), c in cyclotomic(5)) {
        prop_assert_eq!(a.plus(&b).times(&c), a.times(&c).plus(&b.times(&c)));
        prop_assert_eq!(a.times(&b), b.times(&a));
        if !a.is_zero() {
            prop_assert_eq!(a.times(&a.inv().unwrap()), Cyclotomic::one());
        }
    }

    #[test]
    fn ratfun_ring_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero());
    }

    #[test]
    fn ratfun_evaluation_is_a_homomorphism(a in ratfun(), b in ratfun()) {
        let pt = [(Var::X, Cyclotomic::int(3)), (Var::Y, Cyclotomic::from_rational(rat(-2, 5)))].into();
        let (ea, eb) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
        prop_assert_eq!(a.times(&b).eval(&pt).unwrap(), ea.times(&eb));
        prop_assert_eq!(a.plus(&b).eval(&pt).unwrap(), ea.plus(&eb));
    }

    #[test]
    fn flip_is_an_involution(t in tensor(2)) {
        prop_assert_eq!(flip(&flip(&t)), t.clone());
        prop_assert!(t.minus(&t).is_zero());
    }

    #[test]
    fn slot_bracket_is_bilinear(t in tensor(2), s in tensor(2), u in tensor(2)) {
        let e = |x: &Tensor2<RatFun>, p| embed(x, p, &[(Var::X, Var::X1), (Var::Y, Var::X2)]).unwrap();
        let lhs = bracket_slots(&e(&t.plus(&s), SlotPair::S12), &e(&u, SlotPair::S13)).unwrap();
        let rhs = bracket_slots(&e(&t, SlotPair::S12), &e(&u, SlotPair::S13)).unwrap()
            .plus(&bracket_slots(&e(&s, SlotPair::S12), &e(&u, SlotPair::S13)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn residue_pairing_symmetric(
        f in prop::collection::vec((basis_index(3), -3i32..=3, -4i64..=4), 0..5),
        g in prop::collection::vec((basis_index(3), -3i32..=3, -4i64..=4), 0..5),
    ) {
        let build = |v: &[(BasisIndex, i32, i64)]| v.iter().fold(LaurentLoop::zero(3), |acc, &(b, e, c)| {
            acc.plus(&LaurentLoop::monomial(3, b, e).scaled(&Cyclotomic::int(c)))
        });
        let (f, g) = (build(&f), build(&g));
        prop_assert_eq!(residue_pairing(&f, &g), residue_pairing(&g, &f));
        prop_assert!(residue_pairing(&f.regular_part(), &g.regular_part()).is_zero());
    }

    #[test]
    fn tensor_documents_round_trip(t in tensor(2)) {
        let text = serialize(&Document::Tensor2(t.clone()));
        prop_assert_eq!(parse(&text).unwrap(), Document::Tensor2(t));
    }
}
