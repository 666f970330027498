//! Dense univariate polynomials over the rationals, with exact real-root
//! isolation by Sturm sequences.

use crate::poly::Polynomial;
use crate::rational::{fmt_q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Coefficients from the constant term upwards, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The monomial `c * s^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `s - r`
    pub fn linear_root(r: &Q) -> Self {
        Self::new(vec![-r.clone(), Q::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Q::from_integer(v.into())).collect())
    }

    /// Converts a polynomial in one variable (ring of any size, only the
    /// variable `var` may occur).
    pub fn from_poly(p: &Polynomial, var: usize) -> Self {
        let mut v = Vec::new();
        for (m, c) in p.terms() {
            debug_assert!(m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0));
            let k = m.0[var] as usize;
            if v.len() <= k {
                v.resize(k + 1, Q::zero());
            }
            v[k] += c;
        }
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Q) -> Ordering {
        self.eval(x).cmp(&Q::zero())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lc()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `p(-s)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `s^d p(1/s)` with `d` the degree.
    pub fn reverse(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        Self::new(v)
    }

    /// `p(s + h)`
    pub fn shift(&self, h: &Q) -> Self {
        let lin = Self::new(vec![h.clone(), Q::one()]);
        let mut acc = Self::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.deg();
        if r.len() < d.0.len() {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        let lc = d.lc();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics on a nonzero remainder.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Squarefree part, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.is_constant() {
            return Self::one();
        }
        self.div_exact(&self.gcd(&self.derivative())).monic()
    }

    /// Yun decomposition: `p = lc * prod a_i^i`, returned as `(i, a_i)` with
    /// `a_i` monic and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, UPoly)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let f1 = f.derivative();
        let a = f.gcd(&f1);
        let mut b = f.div_exact(&a);
        let mut c = f1.div_exact(&a);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let g = b.gcd(&d);
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            if !g.is_constant() {
                out.push((i, g));
            }
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Number of distinct complex roots.
    pub fn distinct_complex_roots(&self) -> usize {
        self.squarefree().deg()
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Q {
        let lc = self.lc().abs();
        let m = self.0[..self.0.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Q::zero);
        m + Q::one() + Q::one()
    }

    /// Scales to a primitive integer polynomial.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Q::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn to_poly(&self, vars: &[String], var: usize) -> Polynomial {
        let mut p = Polynomial::zero_owned(vars.to_vec());
        for (k, c) in self.0.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly(&["s".to_string()], 0);
        write!(f, "{p}")
    }
}

impl<'a> std::ops::Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> std::ops::Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> std::ops::Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Q::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl std::ops::Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        self.scale(&-Q::one())
    }
}

/// Sturm chain of a polynomial.
#[derive(Clone, Debug)]
pub struct Sturm(Vec<UPoly>);

impl Sturm {
    pub fn new(p: &UPoly) -> Self {
        let mut chain = vec![p.clone()];
        if p.is_constant() {
            return Sturm(chain);
        }
        chain.push(p.derivative());
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        Sturm(chain)
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    fn var_at(&self, x: &Q) -> usize {
        Self::variations(self.0.iter().map(|p| p.sign_at(x)))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Q, b: &Q) -> usize {
        self.var_at(a).saturating_sub(self.var_at(b))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        let at_inf = |neg: bool| {
            Self::variations(self.0.iter().map(|p| {
                let s = p.lc().cmp(&Q::zero());
                if neg && p.deg() % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }))
        };
        at_inf(true).saturating_sub(at_inf(false))
    }
}

/// A real algebraic number: either rational, or the unique root of a
/// squarefree polynomial inside an open interval whose endpoints are not roots.
#[derive(Clone, Debug)]
pub enum RealRoot {
    Rational(Q),
    Isolated { poly: UPoly, lo: Q, hi: Q },
}

impl RealRoot {
    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            RealRoot::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            RealRoot::Isolated { poly, lo, hi } => {
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                let slo = poly.sign_at(&lo);
                let two = Q::from_integer(2.into());
                for _ in 0..60 {
                    let mid = (&lo + &hi) / &two;
                    let s = poly.sign_at(&mid);
                    if s == Ordering::Equal {
                        return mid.to_f64().unwrap_or(f64::NAN);
                    }
                    if s == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                ((&lo + &hi) / two).to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// Sign of `q` at this root.
    pub fn sign_of(&self, q: &UPoly) -> Ordering {
        match self {
            RealRoot::Rational(r) => q.sign_at(r),
            RealRoot::Isolated { poly, lo, hi } => {
                let g = poly.gcd(q);
                if !g.is_constant() && Sturm::new(&g).count(lo, hi) > 0 {
                    return Ordering::Equal;
                }
                // refine until q has no root in the interval
                let sq = Sturm::new(&q.squarefree());
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                let slo = poly.sign_at(&lo);
                let two = Q::from_integer(2.into());
                loop {
                    if sq.count(&lo, &hi) == 0 && q.sign_at(&hi) != Ordering::Equal {
                        return q.sign_at(&hi);
                    }
                    let mid = (&lo + &hi) / &two;
                    let s = poly.sign_at(&mid);
                    if s == Ordering::Equal {
                        return q.sign_at(&mid);
                    }
                    if s == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
            }
        }
    }

    /// Comparison with a rational number.
    pub fn cmp_q(&self, x: &Q) -> Ordering {
        match self {
            RealRoot::Rational(r) => r.cmp(x),
            RealRoot::Isolated { poly, lo, hi } => {
                if x <= lo {
                    Ordering::Greater
                } else if x >= hi {
                    Ordering::Less
                } else {
                    let slo = poly.sign_at(lo);
                    let sx = poly.sign_at(x);
                    if sx == Ordering::Equal {
                        Ordering::Equal
                    } else if sx == slo {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RealRoot::Rational(q) => fmt_q(q),
            RealRoot::Isolated { poly, .. } => {
                format!("root of {} near {:.6}", poly, self.approx())
            }
        }
    }

    /// A rational strictly between the previous and next roots (used to pick
    /// sample points); for rational roots returns the root itself.
    pub fn interval(&self) -> (Q, Q) {
        match self {
            RealRoot::Rational(q) => (q.clone(), q.clone()),
            RealRoot::Isolated { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    if let Some(m) = n.to_u64() {
        let mut d = 1u64;
        while d * d <= m {
            if m % d == 0 {
                out.push(BigInt::from(d));
                if d * d != m {
                    out.push(BigInt::from(m / d));
                }
            }
            d += 1;
            if d > 2_000_000 {
                break;
            }
        }
    } else {
        out.push(BigInt::one());
        out.push(n);
    }
    out.sort();
    out
}

/// Distinct real roots of a nonzero polynomial, sorted ascending. Rational
/// roots are reported exactly.
pub fn real_roots(p: &UPoly) -> Vec<RealRoot> {
    if p.is_constant() {
        return Vec::new();
    }
    let sf = p.squarefree();
    let sturm = Sturm::new(&sf);
    let b = sf.root_bound();
    let mut out = Vec::new();
    isolate(&sf, &sturm, -b.clone(), b, &mut out);
    // detect rational roots inside isolating intervals
    let ints = sf.to_integer_coeffs();
    let lc = ints.last().cloned().unwrap_or_else(BigInt::one);
    let dens = divisors(&lc);
    for r in out.iter_mut() {
        if let RealRoot::Isolated { poly, lo, hi } = r {
            'found: for d in &dens {
                // candidates p/d with lo < p/d < hi
                let dq = Q::from_integer(d.clone());
                let lo_n = (&*lo * &dq).floor().to_integer();
                let hi_n = (&*hi * &dq).ceil().to_integer();
                if &hi_n - &lo_n > BigInt::from(64) {
                    continue;
                }
                let mut n = lo_n;
                while n <= hi_n {
                    let c = Q::new(n.clone(), d.clone());
                    if &c > lo && &c < hi && poly.eval(&c).is_zero() {
                        *r = RealRoot::Rational(c);
                        break 'found;
                    }
                    n += 1;
                }
            }
        }
    }
    // any remaining interval may still hold a rational root with a wide
    // candidate window; shrink and retry once
    for r in out.iter_mut() {
        if let RealRoot::Isolated { poly, lo, hi } = r {
            let two = Q::from_integer(2.into());
            let slo = poly.sign_at(lo);
            for _ in 0..64 {
                let mid = (&*lo + &*hi) / &two;
                let s = poly.sign_at(&mid);
                if s == Ordering::Equal {
                    *r = RealRoot::Rational(mid);
                    break;
                }
                if s == slo {
                    *lo = mid;
                } else {
                    *hi = mid;
                }
            }
        }
        if let RealRoot::Isolated { poly, lo, hi } = r {
            for d in &dens {
                let dq = Q::from_integer(d.clone());
                let c = Q::new(((&*lo + &*hi) / Q::from_integer(2.into()) * &dq).round().to_integer(), d.clone());
                if &c > lo && &c < hi && poly.eval(&c).is_zero() {
                    *r = RealRoot::Rational(c);
                    break;
                }
            }
        }
    }
    out
}

fn isolate(p: &UPoly, sturm: &Sturm, lo: Q, hi: Q, out: &mut Vec<RealRoot>) {
    // invariant: lo and hi are not roots
    let n = sturm.count(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealRoot::Isolated {
            poly: p.clone(),
            lo,
            hi,
        });
        return;
    }
    let two = Q::from_integer(2.into());
    let mid = (&lo + &hi) / &two;
    if p.eval(&mid).is_zero() {
        // split around an exact rational root
        let mut eps = (&hi - &lo) / Q::from_integer(4.into());
        loop {
            let l = &mid - &eps;
            let r = &mid + &eps;
            if !p.eval(&l).is_zero()
                && !p.eval(&r).is_zero()
                && sturm.count(&l, &r) == 1
            {
                isolate(p, sturm, lo, l, out);
                out.push(RealRoot::Rational(mid));
                isolate(p, sturm, r, hi, out);
                return;
            }
            eps /= &two;
        }
    }
    isolate(p, sturm, lo, mid.clone(), out);
    isolate(p, sturm, mid, hi, out);
}

/// Rational roots (distinct, ascending).
pub fn rational_roots(p: &UPoly) -> Vec<Q> {
    real_roots(p)
        .into_iter()
        .filter_map(|r| r.as_rational().cloned())
        .collect()
}

/// Multiplicity of `r` as a root of `p`.
pub fn root_multiplicity(p: &UPoly, r: &Q) -> u32 {
    let lin = UPoly::linear_root(r);
    let mut q = p.clone();
    let mut m = 0;
    while !q.is_zero() {
        let (d, rem) = q.div_rem(&lin);
        if !rem.is_zero() {
            break;
        }
        q = d;
        m += 1;
    }
    m
}

/// Lagrange interpolation through the given nodes.
pub fn interpolate(points: &[(Q, Q)]) -> UPoly {
    let mut acc = UPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UPoly::one();
        let mut denom = Q::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &UPoly::linear_root(xj);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

/// Determinant over the rationals by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

/// Resultant via the Sylvester matrix with formal degrees `da >= deg a`,
/// `db >= deg b`.
pub fn resultant_formal(a: &UPoly, da: usize, b: &UPoly, db: usize) -> Q {
    let n = da + db;
    if n == 0 {
        return Q::one();
    }
    let mut m = vec![vec![Q::zero(); n]; n];
    for i in 0..db {
        for k in 0..=da {
            m[i][i + k] = a.coeff(da - k);
        }
    }
    for i in 0..da {
        for k in 0..=db {
            m[db + i][i + k] = b.coeff(db - k);
        }
    }
    determinant(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn sturm_counts() {
        // (s-1)(s+2)(s^2+1)
        let p = &(&UPoly::from_ints(&[-1, 1]) * &UPoly::from_ints(&[2, 1])) * &UPoly::from_ints(&[1, 0, 1]);
        let st = Sturm::new(&p);
        assert_eq!(st.count_all(), 2);
        assert_eq!(st.count(&qi(0), &qi(5)), 1);
        assert_eq!(st.count(&qi(-5), &qi(5)), 2);
    }

    #[test]
    fn rational_and_irrational_roots() {
        // (2s - 1)(s^2 - 2)
        let p = &UPoly::from_ints(&[-1, 2]) * &UPoly::from_ints(&[-2, 0, 1]);
        let roots = real_roots(&p);
        assert_eq!(roots.len(), 3);
        assert!(roots[1].as_rational() == Some(&q(1, 2)));
        assert!(roots[0].as_rational().is_none());
        assert!((roots[2].approx() - 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(roots[2].sign_of(&UPoly::from_ints(&[-1, 1])), Ordering::Greater);
        assert_eq!(roots[0].sign_of(&UPoly::from_ints(&[0, 1])), Ordering::Less);
        assert_eq!(roots[2].sign_of(&UPoly::from_ints(&[-2, 0, 1])), Ordering::Equal);
    }

    #[test]
    fn roots_with_multiplicity() {
        let p = &UPoly::from_ints(&[0, 1]).pow(3) * &UPoly::from_ints(&[-3, 1]).pow(2);
        assert_eq!(rational_roots(&p), vec![qi(0), qi(3)]);
        assert_eq!(root_multiplicity(&p, &qi(0)), 3);
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (2, UPoly::from_ints(&[-3, 1])));
        assert_eq!(dec[1], (3, UPoly::from_ints(&[0, 1])));
    }

    #[test]
    fn resultant_detects_common_root() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[-1, 1]);
        assert!(resultant_formal(&a, 2, &b, 1).is_zero());
        let c = UPoly::from_ints(&[-2, 1]);
        assert_eq!(resultant_formal(&a, 2, &c, 1), qi(3));
    }

    #[test]
    fn interpolation_recovers() {
        let p = UPoly::from_ints(&[1, -2, 0, 5]);
        let pts: Vec<(Q, Q)> = (0..4).map(|i| (qi(i), p.eval(&qi(i)))).collect();
        assert_eq!(interpolate(&pts), p);
    }
}
