use motivic_core::milnor::milnor_number;
use motivic_core::motives::BetaPoly;
use motivic_core::parse::parse_germ;
use motivic_core::poly::{Order, Polynomial};
use motivic_core::rational::{q, qi, Q};
use motivic_core::resolve::embedded_resolution;
use motivic_core::zeta::{acampo_lefschetz, acampo_period, motivic_fibre, AcampoVariant};
use motivic_core::{Error, Symbol};
use proptest::prelude::*;

fn germ_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..4, 0u32..4), -3i64..=3), 1..6).prop_map(|terms| {
        Polynomial::from_terms(&["x", "y"], terms.into_iter().map(|((i, j), c)| (vec![i, j], qi(c))))
    })
}

fn beta_poly() -> impl Strategy<Value = BetaPoly> {
    prop::collection::vec((-3i32..4, -4i64..=4, 1i64..4), 0..4).prop_map(|ts| {
        ts.into_iter().map(|(k, n, d)| BetaPoly::monomial(q(n, d), k)).sum()
    })
}

/// Invertible rational 2×2 matrix with small entries.
fn linear_map() -> impl Strategy<Value = [Q; 4]> {
    prop::array::uniform4(-3i64..=3)
        .prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|m| [qi(m[0]), qi(m[1]), qi(m[2]), qi(m[3])])
}

fn apply(f: &Polynomial, a: &[Q; 4]) -> Polynomial {
    let x = Polynomial::var_in(f.vars(), 0);
    let y = Polynomial::var_in(f.vars(), 1);
    let c = |v: &Q| Polynomial::constant_in(f.vars(), v.clone());
    f.compose(&[&(&c(&a[0]) * &x) + &(&c(&a[1]) * &y), &(&c(&a[2]) * &x) + &(&c(&a[3]) * &y)])
}

fn fibres(f: &Polynomial) -> Result<Vec<BetaPoly>, Error> {
    let r = embedded_resolution(f)?;
    Symbol::ALL.iter().map(|&e| motivic_fibre(&r, e)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn beta_ring_axioms(a in beta_poly(), b in beta_poly(), c in beta_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, BetaPoly::zero());
        prop_assert_eq!(&a * &BetaPoly::one(), a.clone());
        // β is a ring map to Q[u, u^-1]: evaluation commutes with products
        let u = qi(-1);
        prop_assert_eq!((&a * &b).eval(&u), a.eval(&u) * b.eval(&u));
    }

    #[test]
    fn polynomial_ring_axioms(f in germ_poly(), g in germ_poly(), h in germ_poly()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(parse_germ(&f.to_string()).unwrap(), f.clone());
    }

    #[test]
    fn order_is_additive(f in germ_poly(), g in germ_poly()) {
        let of = f.order_at_origin();
        let og = g.order_at_origin();
        let expect = match (of, og) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        };
        prop_assert_eq!((&f * &g).order_at_origin(), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn milnor_number_is_linear_invariant(a in linear_map(), which in 0usize..5) {
        let g = ["x^2 + y^2", "y^2 - x^3", "x^3 + y^4", "x*y*(x - y)", "x^2*y + y^4"][which];
        let f = parse_germ(g).unwrap();
        prop_assert_eq!(milnor_number(&apply(&f, &a)).unwrap(), milnor_number(&f).unwrap());
    }

    #[test]
    fn fibres_are_linear_invariant(a in linear_map(), which in 0usize..4) {
        let g = ["x*y", "x^2 + y^2", "y^2 - x^3", "x^2 - y^2"][which];
        let f = parse_germ(g).unwrap();
        match fibres(&apply(&f, &a)) {
            Ok(b) => prop_assert_eq!(b, fibres(&f).unwrap()),
            Err(Error::IrrationalCenter(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn lefschetz_numbers_are_periodic() {
    for g in ["y^2 - x^3", "x^2 + y^2", "x^3 + y^4", "x*y*(x - y)", "y^3 - x^5"] {
        let r = embedded_resolution(&parse_germ(g).unwrap()).unwrap();
        let p = acampo_period(&r);
        for v in [AcampoVariant::Single, AcampoVariant::Subset] {
            for k in 0..=24 {
                assert_eq!(acampo_lefschetz(&r, k, v), acampo_lefschetz(&r, k + p, v), "{g} k={k}");
            }
        }
    }
}

#[test]
fn lefschetz_zero_is_euler_characteristic_of_fibre() {
    // Λ(h^0) = χ(F) = 1 − μ
    for g in ["x^2 + y^2", "y^2 - x^3", "x^3 + y^4", "x*y*(x - y)", "y^3 - x^5", "x^2*y + y^4"] {
        let f = parse_germ(g).unwrap();
        let r = embedded_resolution(&f).unwrap();
        let Order::Finite(mu) = milnor_number(&f).unwrap() else { panic!() };
        assert_eq!(acampo_lefschetz(&r, 0, AcampoVariant::Single), 1 - mu as i64, "{g}");
    }
}

#[test]
fn motivic_fibres_have_integral_euler_characteristic() {
    for g in ["x^2 + y^2", "x*y", "y^2 - x^3", "x^3 + y^4", "x*y*(x - y)", "y^2 - 2*x^4", "x^2*y"] {
        for b in fibres(&parse_germ(g).unwrap()).unwrap() {
            assert!(b.chi_c().is_integer(), "{g}: {b}");
        }
    }
}
