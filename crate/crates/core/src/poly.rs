//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so printing and hashing are deterministic.

use crate::rational::{fmt_q, pow_q, Q};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Order of vanishing at the origin; `Infinite` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_owned(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in(vars: &[String], c: Q) -> Self {
        let mut p = Self::zero_owned(vars.to_vec());
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The variable `vars[i]` as a polynomial.
    pub fn var_in(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero_owned(vars.to_vec());
        p.add_term(e, Q::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        assert_eq!(exps.len(), self.vars.len(), "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(Monomial(exps)) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials live in different rings");
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero_owned(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant_in(&self.vars, Q::one());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Minimal total degree of a term.
    pub fn order_at_origin(&self) -> Order {
        match self.terms.keys().next() {
            Some(m) => Order::Finite(m.degree()),
            None => Order::Infinite,
        }
    }

    /// Homogeneous part of degree `d`.
    pub fn form(&self, d: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn lowest_form(&self) -> Self {
        match self.order_at_origin() {
            Order::Finite(d) => self.form(d),
            Order::Infinite => self.clone(),
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                p.add_term(e, c * Q::from_integer(k.into()));
            }
        }
        p
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= pow_q(x, e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes every variable by a polynomial; all images must share a ring.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].vars.clone();
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant_in(&target, Q::one()), p.clone()])
            .collect();
        let mut out = Polynomial::zero_owned(target.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant_in(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes `vars[i] = value` and drops that variable.
    pub fn specialize(&self, i: usize, value: &Q) -> Polynomial {
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut p = Polynomial::zero_owned(vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(i);
            p.add_term(e, c * pow_q(value, k));
        }
        p
    }

    /// Renames the ring without touching exponents.
    pub fn with_vars(&self, vars: &[&str]) -> Polynomial {
        assert_eq!(vars.len(), self.nvars());
        Polynomial {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Exact division by `x_i^k`; `None` if some term is not divisible.
    pub fn div_var_power(&self, i: usize, k: u32) -> Option<Polynomial> {
        let mut p = Polynomial::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            if m.0[i] < k {
                return None;
            }
            let mut e = m.0.clone();
            e[i] -= k;
            p.add_term(e, c.clone());
        }
        Some(p)
    }

    /// Largest `k` with `x_i^k` dividing the polynomial.
    pub fn var_valuation(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Polynomial {
        let mut p = Polynomial::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            p.add_term(m.0.clone(), f(c));
        }
        p
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(fmt_q(&mag));
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                *acc.entry(Monomial(e)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial {
            vars: self.vars.clone(),
            terms: acc,
        }
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn grlex_printing() {
        let p = Polynomial::from_terms(&["x", "y"], [(vec![3, 1], q(1, 2)), (vec![0, 5], q(-1, 1))]);
        assert_eq!(p.to_string(), "-y^5 + 1/2*x^3*y");
        let p = Polynomial::from_terms(&["x", "y"], [(vec![2, 0], q(1, 1)), (vec![0, 2], q(1, 1))]);
        assert_eq!(p.to_string(), "x^2 + y^2");
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = Polynomial::var_in(&xy(), 0);
        let y = Polynomial::var_in(&xy(), 1);
        let p = &(&x * &y) - &(&y * &x);
        assert!(p.is_zero());
        assert_eq!(p.order_at_origin(), Order::Infinite);
    }

    #[test]
    fn orders() {
        let x = Polynomial::var_in(&xy(), 0);
        let y = Polynomial::var_in(&xy(), 1);
        assert_eq!((&x.pow(2) + &y.pow(3)).order_at_origin(), Order::Finite(2));
        assert_eq!((&x * &y).order_at_origin(), Order::Finite(2));
    }

    #[test]
    fn compose_blowup_substitution() {
        let v = xy();
        let x = Polynomial::var_in(&v, 0);
        let y = Polynomial::var_in(&v, 1);
        let f = &x.pow(2) + &y.pow(2);
        let ab = vec!["a".to_string(), "b".to_string()];
        let a = Polynomial::var_in(&ab, 0);
        let b = Polynomial::var_in(&ab, 1);
        let g = f.compose(&[a.clone(), &a * &b]);
        assert_eq!(g.to_string(), "a^2*b^2 + a^2");
        assert_eq!(g.var_valuation(0), 2);
    }
}
