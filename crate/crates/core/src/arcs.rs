//! Naive computation of `[X_{k,f}^ε] 𝕃^{-2k}` for monomial germs
//! `f = x^a y^b` by stratifying truncated arcs by the orders of their
//! coordinates.

use crate::motives::BetaPoly;
use crate::symbol::Symbol;
use num_integer::Integer;
use serde::Serialize;

/// Arcs with `ord x = i`, `ord y = j`, truncated at order `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedArcStratum {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub free_dims: u32,
    pub torus_condition: (u32, u32),
}

/// β of `{(ξ, η) ∈ (R*)² : ξ^a η^b ε 1}`.
///
/// The unimodular monomial change with first row `(a/g, b/g)` turns this into
/// `{z^g ε 1} × R*`.
pub fn torus_class(a: u32, b: u32, e: Symbol) -> BetaPoly {
    assert!(a > 0 && b > 0);
    let g = a.gcd(&b);
    let t = BetaPoly::torus();
    let even = g % 2 == 0;
    match e {
        Symbol::Plus1 => t.scale(&crate::rational::qi(if even { 2 } else { 1 })),
        Symbol::Minus1 if even => BetaPoly::zero(),
        Symbol::Minus1 => t,
        Symbol::Pos if even => t.pow(2),
        Symbol::Neg if even => BetaPoly::zero(),
        Symbol::Pos | Symbol::Neg => t.pow(2).scale(&BetaPoly::half()),
    }
}

pub fn strata(a: u32, b: u32, k: u32) -> Vec<TruncatedArcStratum> {
    let mut out = Vec::new();
    for i in 1..=k {
        if a * i >= k {
            break;
        }
        let rest = k - a * i;
        if rest % b == 0 {
            let j = rest / b;
            out.push(TruncatedArcStratum {
                i,
                j,
                k,
                free_dims: (k - i) + (k - j),
                torus_condition: (a, b),
            });
        }
    }
    out
}

/// Coefficient of `T^k` in the naive zeta function of `x^a y^b`.
pub fn naive_coefficient(a: u32, b: u32, k: u32, e: Symbol) -> BetaPoly {
    let tc = torus_class(a, b, e);
    strata(a, b, k)
        .iter()
        .map(|s| tc.shift(s.free_dims as i32 - 2 * k as i32))
        .sum()
}

/// Coefficients of `T^1 … T^K`.
pub fn naive_series(a: u32, b: u32, max_order: u32, e: Symbol) -> Vec<BetaPoly> {
    (1..=max_order).map(|k| naive_coefficient(a, b, k, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BetaPoly {
        BetaPoly::parse(s).unwrap()
    }

    #[test]
    fn torus_examples() {
        assert_eq!(torus_class(1, 1, Symbol::Plus1), b("u - 1"));
        assert_eq!(torus_class(2, 2, Symbol::Plus1), b("2*u - 2"));
        assert_eq!(torus_class(2, 2, Symbol::Minus1), b("0"));
        assert_eq!(torus_class(2, 3, Symbol::Pos), b("1/2*u^2 - u + 1/2"));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(naive_coefficient(1, 1, 2, Symbol::Plus1), b("u^-1 - u^-2"));
        assert_eq!(naive_coefficient(1, 1, 3, Symbol::Plus1), b("2*u^-2 - 2*u^-3"));
        assert_eq!(naive_coefficient(2, 1, 1, Symbol::Plus1), b("0"));
    }

    /// Second route: `{t^b s^a = ±1}` over `s ≠ 0` as a superelliptic curve,
    /// and the tubes fibrewise over `s`.
    #[test]
    fn torus_matches_curve_route() {
        use crate::motives::{beta_positive_locus, superelliptic_beta, SignSemantics};
        use crate::rational::qi;
        use crate::upoly::{RealRoot, UPoly};
        for a in 1..=6 {
            for bb in 1..=6 {
                let w = UPoly::monomial(qi(1), a as usize);
                let p0 = [RealRoot::Rational(qi(0))];
                for (e, c) in [(Symbol::Plus1, 1), (Symbol::Minus1, -1)] {
                    let curve = superelliptic_beta(bb, &w, &qi(c), &p0).unwrap();
                    assert_eq!(torus_class(a, bb, e), curve, "{a} {bb} {e}");
                }
                for (e, sign) in [(Symbol::Pos, 1), (Symbol::Neg, -1)] {
                    let tube = if bb % 2 == 0 {
                        let p = w.scale(&qi(sign));
                        &beta_positive_locus(&p, &p0, SignSemantics::Literal) * &BetaPoly::torus()
                    } else {
                        BetaPoly::torus().pow(2).scale(&BetaPoly::half())
                    };
                    assert_eq!(torus_class(a, bb, e), tube, "{a} {bb} {e}");
                }
            }
        }
    }

    #[test]
    fn torus_relation_closure() {
        for (a, b) in [(1, 1), (2, 1), (2, 3), (4, 6), (3, 9)] {
            let sum = &torus_class(a, b, Symbol::Pos) + &torus_class(a, b, Symbol::Neg);
            assert_eq!(sum, BetaPoly::torus().pow(2));
        }
    }
}
