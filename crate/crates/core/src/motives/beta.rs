//! Laurent polynomials in `u` with dyadic rational coefficients.

use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_power_of_two, parse_q, Q};
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// An element of `Z[1/2][u, 1/u]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BetaPoly(BTreeMap<i32, Q>);

impl BetaPoly {
    pub fn zero() -> Self {
        BetaPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Q::from_integer(n.into()))
    }

    pub fn monomial(c: Q, k: i32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        BetaPoly(m)
    }

    /// `u^k`.
    pub fn u_pow(k: i32) -> Self {
        Self::monomial(Q::one(), k)
    }

    /// `u`, the class of the affine line.
    pub fn u() -> Self {
        Self::u_pow(1)
    }

    /// `u - 1`, the class of the punctured line.
    pub fn torus() -> Self {
        &Self::u() - &Self::one()
    }

    pub fn half() -> Q {
        Q::new(1.into(), 2.into())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: i32) -> Q {
        self.0.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Q)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BetaPoly(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    pub fn shift(&self, k: i32) -> Self {
        BetaPoly(self.0.iter().map(|(e, v)| (e + k, v.clone())).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, k: i32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn eval(&self, u: &Q) -> Q {
        let mut acc = Q::zero();
        for (k, c) in &self.0 {
            let p = if *k >= 0 {
                crate::rational::pow_q(u, *k as u32)
            } else {
                Q::one() / crate::rational::pow_q(u, (-*k) as u32)
            };
            acc += c * p;
        }
        acc
    }

    /// Compactly supported Euler characteristic: the value at `u = -1`.
    pub fn chi_c(&self) -> Q {
        self.eval(&-Q::one())
    }

    /// True iff every denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        self.0.values().all(|c| is_power_of_two(c.denom()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_beta(text)
    }
}

pub fn chi_c(b: &BetaPoly) -> Q {
    b.chi_c()
}

impl<'a> std::ops::Add<&'a BetaPoly> for &'a BetaPoly {
    type Output = BetaPoly;
    fn add(self, o: &BetaPoly) -> BetaPoly {
        let mut r = self.clone();
        for (k, c) in &o.0 {
            r.add_term(*k, c.clone());
        }
        r
    }
}

impl<'a> std::ops::Sub<&'a BetaPoly> for &'a BetaPoly {
    type Output = BetaPoly;
    fn sub(self, o: &BetaPoly) -> BetaPoly {
        let mut r = self.clone();
        for (k, c) in &o.0 {
            r.add_term(*k, -c.clone());
        }
        r
    }
}

impl<'a> std::ops::Mul<&'a BetaPoly> for &'a BetaPoly {
    type Output = BetaPoly;
    fn mul(self, o: &BetaPoly) -> BetaPoly {
        let mut r = BetaPoly::zero();
        for (i, a) in &self.0 {
            for (j, b) in &o.0 {
                r.add_term(i + j, a * b);
            }
        }
        r
    }
}

impl std::ops::Neg for &BetaPoly {
    type Output = BetaPoly;
    fn neg(self) -> BetaPoly {
        self.scale(&-Q::one())
    }
}

impl std::ops::AddAssign<&BetaPoly> for BetaPoly {
    fn add_assign(&mut self, o: &BetaPoly) {
        for (k, c) in &o.0 {
            self.add_term(*k, c.clone());
        }
    }
}

impl std::iter::Sum for BetaPoly {
    fn sum<I: Iterator<Item = BetaPoly>>(iter: I) -> Self {
        let mut acc = BetaPoly::zero();
        for b in iter {
            acc += &b;
        }
        acc
    }
}

/// Descending powers, e.g. `1/2*u^2 - u + 1/2`, `u^-2 - u^-3`.
impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let pw = match *k {
                0 => String::new(),
                1 => "u".to_string(),
                k => format!("u^{k}"),
            };
            if *k == 0 {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{pw}")?;
            } else {
                write!(f, "{}*{pw}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}

fn parse_beta(text: &str) -> Result<BetaPoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('−', "-");
    let err = |msg: &str| Error::Syntax {
        pos: 0,
        msg: format!("{msg} in `{text}`"),
    };
    if s.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut out = BetaPoly::zero();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = Q::one();
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(err("expected + or -"));
        }
        // term ends at the next +/- that is not an exponent sign
        let start = i;
        while i < bytes.len() && !((bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^') {
            i += 1;
        }
        let term: String = bytes[start..i].iter().collect();
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let (coef, power) = match term.find('u') {
            None => (term.as_str(), None),
            Some(p) => {
                let c = term[..p].trim_end_matches('*');
                (c, Some(&term[p + 1..]))
            }
        };
        let c = if coef.is_empty() {
            Q::one()
        } else {
            parse_q(coef).ok_or_else(|| err("bad coefficient"))?
        };
        let k = match power {
            None => 0,
            Some("") => 1,
            Some(p) => p
                .strip_prefix('^')
                .and_then(|e| e.parse::<i32>().ok())
                .ok_or_else(|| err("bad exponent"))?,
        };
        out.add_term(k, sign * c);
    }
    Ok(out)
}

impl Serialize for BetaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // keys sorted as strings so output is byte-stable
        let entries: BTreeMap<String, String> = self
            .0
            .iter()
            .map(|(k, c)| (format!("u^{k}"), fmt_q(c)))
            .collect();
        let mut m = s.serialize_map(Some(entries.len()))?;
        for (k, v) in &entries {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for BetaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = BetaPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from \"u^k\" to rational strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<BetaPoly, A::Error> {
                let mut out = BetaPoly::zero();
                while let Some((k, v)) = a.next_entry::<String, String>()? {
                    let e = k
                        .strip_prefix("u^")
                        .and_then(|e| e.parse::<i32>().ok())
                        .ok_or_else(|| de::Error::custom(format!("bad key {k}")))?;
                    let c = parse_q(&v).ok_or_else(|| de::Error::custom(format!("bad value {v}")))?;
                    out.add_term(e, c);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn b(s: &str) -> BetaPoly {
        BetaPoly::parse(s).unwrap()
    }

    #[test]
    fn printing() {
        assert_eq!(BetaPoly::torus().to_string(), "u - 1");
        assert_eq!((&BetaPoly::one() - &BetaPoly::u()).to_string(), "-u + 1");
        let h = BetaPoly::torus().pow(2).scale(&q(-1, 2));
        assert_eq!(h.to_string(), "-1/2*u^2 + u - 1/2");
        assert_eq!(BetaPoly::torus().shift(-2).to_string(), "u^-1 - u^-2");
        assert_eq!(BetaPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["u - 1", "-1/2*u^2 + u - 1/2", "u^-1 - u^-2", "0", "3", "2*u^-3 - 2*u^-4", "-u"] {
            assert_eq!(b(s).to_string(), s);
        }
        assert_eq!(b("u^2-1"), &BetaPoly::u_pow(2) - &BetaPoly::one());
        assert!(BetaPoly::parse("u^").is_err());
        assert!(BetaPoly::parse("").is_err());
    }

    #[test]
    fn chi_c_values() {
        assert_eq!(b("u - 1").chi_c(), q(-2, 1));
        assert_eq!(b("1/2*u - 1/2").chi_c(), q(-1, 1));
        assert_eq!(b("u + 1").chi_c(), q(0, 1));
        assert_eq!(b("u^-2").chi_c(), q(1, 1));
    }

    #[test]
    fn json_encoding() {
        let x = b("-1/2*u^2 + u - 1/2");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"u^0":"-1/2","u^1":"1","u^2":"-1/2"}"#);
        let back: BetaPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }
}
