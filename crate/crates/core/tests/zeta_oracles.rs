use motivic_core::arcs::naive_coefficient;
use motivic_core::motives::BetaPoly;
use motivic_core::parse::parse_germ;
use motivic_core::resolve::embedded_resolution;
use motivic_core::zeta::{series_expand, zeta_rational};
use motivic_core::Symbol;

#[test]
fn monomial_series_match_truncated_arcs() {
    for (a, b) in [(1, 1), (2, 1), (2, 3), (1, 3), (3, 2)] {
        let germ = parse_germ(&format!("x^{a}*y^{b}")).unwrap();
        let res = embedded_resolution(&germ).unwrap();
        for e in Symbol::ALL {
            let z = zeta_rational(&res, e).unwrap();
            let series = series_expand(&z, 10);
            for k in 1..=10 {
                assert_eq!(series[k as usize - 1], naive_coefficient(a, b, k, e), "x^{a} y^{b}, {e}, T^{k}");
            }
        }
    }
}

#[test]
fn node_spot_values() {
    let res = embedded_resolution(&parse_germ("x*y").unwrap()).unwrap();
    let s = series_expand(&zeta_rational(&res, Symbol::Plus1).unwrap(), 3);
    assert_eq!(s[1], BetaPoly::parse("u^-1 - u^-2").unwrap());
    assert_eq!(s[2], BetaPoly::parse("2*u^-2 - 2*u^-3").unwrap());
}

#[test]
fn circle_has_only_even_powers() {
    let res = embedded_resolution(&parse_germ("x^2 + y^2").unwrap()).unwrap();
    let s = series_expand(&zeta_rational(&res, Symbol::Plus1).unwrap(), 9);
    for k in (1..=9).step_by(2) {
        assert!(s[k - 1].is_zero());
    }
    assert!(!s[1].is_zero());
}

#[test]
fn coefficients_vanish_off_the_numerical_semigroup() {
    // cusp: N = 2, 3, 6 on E, plus 1 on the branch (only reachable with E)
    let res = embedded_resolution(&parse_germ("y^2 - x^3").unwrap()).unwrap();
    for e in Symbol::ALL {
        let s = series_expand(&zeta_rational(&res, e).unwrap(), 12);
        assert!(s[0].is_zero(), "{e}");
    }
}

#[test]
fn euler_identity_on_suite() {
    use motivic_core::fibre::{default_data, verify_cf412, DEFAULT_MAX_GRID};
    for g in ["x^2 + y^2", "x*y", "x^2 - y^2", "y^2 - x^3"] {
        let f = parse_germ(g).unwrap();
        let (d, eta) = default_data(&f);
        for entry in verify_cf412(&f, &d, &eta, DEFAULT_MAX_GRID).unwrap() {
            assert!(entry.pass, "{g}: {entry:?}");
        }
    }
}
