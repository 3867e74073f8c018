mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2star::coalg::Bialgebra;
use sl2star::frontend::{parse, Expr, Symbol};
use sl2star::ncalg::{default_x_system, Generator};
use sl2star::series::rational::rat;
use sl2star::series::{EpsSeries, Rational};

const N: i32 = 5;

fn series() -> impl Strategy<Value = EpsSeries> {
    prop::collection::vec((-6i64..=6, 1i64..=5), 0..=6)
        .prop_map(|cs| EpsSeries::from_coefficients(&cs.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<_>>(), N))
}

fn unit_series() -> impl Strategy<Value = EpsSeries> {
    (prop_oneof![-3i64..=-1, 1i64..=3], series()).prop_map(|(c0, s)| {
        let eps = EpsSeries::eps(N);
        EpsSeries::constant(Rational::from_integer(c0.into()), N)
            .checked_add(&s.checked_mul(&eps).unwrap())
            .unwrap()
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..=9, 1i64..=4).prop_map(|(n, d)| Expr::Number(rat(n, d))),
        prop::sample::select(vec![
            Symbol::X(Generator::X1),
            Symbol::X(Generator::X2),
            Symbol::X(Generator::X3),
            Symbol::X(Generator::EPlus),
            Symbol::X(Generator::EMinus),
            Symbol::Xi(Generator::X2),
            Symbol::Xi(Generator::EMinus),
            Symbol::Eps,
            Symbol::H,
        ])
        .prop_map(Expr::Symbol),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sum(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Difference(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Star(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, n)| Expr::Power(Box::new(a), n)),
        ]
    })
}

proptest! {
    #[test]
    fn series_multiplication_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.checked_mul(&a).unwrap());
        prop_assert_eq!(ab.checked_mul(&c).unwrap(), a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn series_distributive(a in series(), b in series(), c in series()) {
        let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_inverse(u in unit_series()) {
        let inv = u.invert().unwrap();
        prop_assert_eq!(u.checked_mul(&inv).unwrap(), EpsSeries::one(N));
    }

    #[test]
    fn flip_is_an_involutive_ring_map(a in series(), b in series()) {
        prop_assert_eq!(a.flip().flip(), a.clone());
        prop_assert_eq!(a.checked_mul(&b).unwrap().flip(), a.flip().checked_mul(&b.flip()).unwrap());
    }

    #[test]
    fn printed_expressions_parse_back(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coproduct_is_multiplicative(seed in any::<u64>()) {
        let bi = Bialgebra::new(default_x_system(N));
        let sys = bi.system();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_element(sys, &mut rng, 2, 3, N);
        let g = common::random_element(sys, &mut rng, 2, 3, N);
        let lhs = bi.coproduct(&sys.star(&f, &g));
        let rhs = bi.star_tensor(&bi.coproduct(&f), &bi.coproduct(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eps_flip_is_an_involution(seed in any::<u64>()) {
        let sys = default_x_system(N);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_element(&sys, &mut rng, 3, 4, N);
        prop_assert_eq!(sys.eps_flip(&sys.eps_flip(&f)), f);
    }

    #[test]
    fn normal_forms_print_and_parse_back(seed in any::<u64>()) {
        use sl2star::frontend::{Config, Evaluator};
        let ev = Evaluator::new(Config { order: N, ..Config::default() });
        let sys = ev.x_bialgebra().unwrap().system();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_element(sys, &mut rng, 3, 4, N);
        let again = ev.normalize(&f.to_string()).unwrap();
        prop_assert_eq!(again, sl2star::frontend::Value::X(f));
    }
}
