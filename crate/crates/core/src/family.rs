//! One-parameter germ families `f_t(x, y)`.

use crate::error::{Error, Result};
use crate::milnor::milnor_number;
use crate::motives::BetaPoly;
use crate::parse::parse_poly;
use crate::poly::{Order, Polynomial};
use crate::rational::{fmt_q, qi, Q};
use crate::resolve::embedded_resolution;
use crate::upoly::{interpolate, rational_roots, resultant_formal, UPoly};
use crate::zeta::motivic_fibre;
use crate::Symbol;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;

/// A polynomial in `(t, x, y)` with `f(t, 0, 0) = 0` for every `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct GermFamily {
    body: Polynomial,
}

impl GermFamily {
    pub fn new(body: Polynomial) -> Result<Self> {
        if body.vars() != ["t", "x", "y"] {
            return Err(Error::InvalidInput("family must be a polynomial in t, x, y".into()));
        }
        // vanishing on x = y = 0 means every term involves x or y
        if body.terms().any(|(m, c)| !c.is_zero() && m.0[1] == 0 && m.0[2] == 0) {
            return Err(Error::NotAGerm(format!("{body} does not vanish on x = y = 0")));
        }
        Ok(GermFamily { body })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_poly(text, &["t", "x", "y"])?)
    }

    pub fn body(&self) -> &Polynomial {
        &self.body
    }

    /// `F(t, x, y)` with `t` replaced by `-t`.
    pub fn mirrored(&self) -> Self {
        GermFamily {
            body: self.body.compose(&[
                -&Polynomial::var_in(self.body.vars(), 0),
                Polynomial::var_in(self.body.vars(), 1),
                Polynomial::var_in(self.body.vars(), 2),
            ]),
        }
    }
}

pub fn specialize(family: &GermFamily, t0: &Q) -> Polynomial {
    family.body.specialize(0, t0)
}

/// Coefficients `c_i(t)` of `x^i y^{d-i}` in the lowest form in `(x, y)`.
fn lowest_form_coefficients(f: &GermFamily) -> (u32, Vec<UPoly>) {
    let d = f
        .body
        .terms()
        .map(|(m, _)| m.0[1] + m.0[2])
        .min()
        .unwrap_or(0);
    let mut cs = vec![UPoly::zero(); d as usize + 1];
    for (m, c) in f.body.terms() {
        if m.0[1] + m.0[2] == d {
            let i = m.0[1] as usize;
            cs[i] = &cs[i] + &UPoly::monomial(c.clone(), m.0[0] as usize);
        }
    }
    (d, cs)
}

/// Multiplicity pattern of the lowest form of `f_t` over the complex
/// numbers: its degree, `(multiplicity, number of roots)` pairs of the affine
/// roots of `L(s, 1)`, and the multiplicity of the root at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Signature {
    order: Option<u32>,
    roots: Vec<(u32, usize)>,
    infinity: usize,
}

fn signature(f: &GermFamily, t0: &Q) -> Signature {
    let g = specialize(f, t0);
    let Order::Finite(d) = g.order_at_origin() else {
        return Signature { order: None, roots: vec![], infinity: 0 };
    };
    let p = UPoly::from_poly(&g.lowest_form().specialize(1, &Q::one()), 0);
    let roots = p
        .squarefree_decomposition()
        .into_iter()
        .filter(|(_, h)| !h.is_constant())
        .map(|(k, h)| (k, h.deg()))
        .collect();
    Signature { order: Some(d), roots, infinity: d as usize - p.deg() }
}

/// Candidate parameters where the lowest form of `f_t` degenerates: common
/// zeros of its coefficients, zeros of the `x^d` coefficient, and rational
/// roots of the discriminant of its squarefree part; kept only where the
/// complex multiplicity pattern actually changes.
pub fn detect_breakpoints(f: &GermFamily) -> Vec<Q> {
    let (d, cs) = lowest_form_coefficients(f);
    let mut cand: BTreeSet<Q> = BTreeSet::new();
    let common = cs.iter().fold(UPoly::zero(), |g, c| g.gcd(c));
    cand.extend(rational_roots(&common));
    cand.extend(rational_roots(&cs[d as usize]));
    // P(t, s) = L_t(s, 1)
    let mut p = Polynomial::zero(&["t", "s"]);
    for (i, c) in cs.iter().enumerate() {
        for (e, a) in c.coeffs().iter().enumerate() {
            p.add_term(vec![e as u32, i as u32], a.clone());
        }
    }
    if !p.is_zero() {
        let mut r = Polynomial::constant_in(p.vars(), Q::one());
        for (_, g) in crate::bivar::squarefree_decomposition(&p) {
            if g.degree_in(1).unwrap_or(0) > 0 {
                r = &r * &g;
            } else {
                cand.extend(rational_roots(&UPoly::from_poly(&g.specialize(1, &Q::zero()), 0)));
            }
        }
        let n = r.degree_in(1).unwrap_or(0) as usize;
        let m = r.degree_in(0).unwrap_or(0) as usize;
        if n >= 2 {
            let rs = r.derivative(1);
            let nodes: Vec<(Q, Q)> = (0..=(2 * n - 1) * m)
                .map(|k| {
                    let t = qi(k as i64);
                    let a = UPoly::from_poly(&r.specialize(0, &t), 0);
                    let b = UPoly::from_poly(&rs.specialize(0, &t), 0);
                    (t, resultant_formal(&a, n, &b, n - 1))
                })
                .collect();
            let disc = interpolate(&nodes);
            if !disc.is_zero() {
                cand.extend(rational_roots(&disc));
            }
        }
    }
    if cand.is_empty() {
        return vec![];
    }
    let mut generic = cand.iter().next_back().unwrap() + Q::one();
    while cand.contains(&generic) {
        generic += Q::one();
    }
    let base = signature(f, &generic);
    cand.into_iter().filter(|t| signature(f, t) != base).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sample {
    #[serde(serialize_with = "ser_q")]
    pub t: Q,
    pub beta: Option<BetaPoly>,
    /// `ok`, or the error kind of a failed evaluation.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "ser_q")]
    pub left: Q,
    #[serde(serialize_with = "ser_q")]
    pub right: Q,
    pub beta: BetaPoly,
}

/// A candidate stratification: sampling cannot prove constancy between samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub symbol: Symbol,
    pub samples: Vec<Sample>,
    pub intervals: Vec<Interval>,
    #[serde(serialize_with = "ser_qs")]
    pub breakpoints: Vec<Q>,
    #[serde(serialize_with = "ser_qs")]
    pub detected: Vec<Q>,
}

fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(q))
}

fn ser_qs<S: Serializer>(q: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(q.iter().map(fmt_q))
}

/// `β(S^ε(f_t))`, with non-isolated germs rejected up front.
pub fn evaluate(f: &GermFamily, t: &Q, e: Symbol) -> Result<BetaPoly> {
    let g = specialize(f, t);
    if g.is_zero() {
        return Err(Error::ZeroGerm);
    }
    if matches!(milnor_number(&g)?, Order::Infinite) {
        return Err(Error::NotIsolated);
    }
    motivic_fibre(&embedded_resolution(&g)?, e)
}

pub fn scan(f: &GermFamily, lo: &Q, hi: &Q, n: usize, e: Symbol) -> Result<ScanReport> {
    if lo >= hi || n < 2 {
        return Err(Error::InvalidInput("scan needs lo < hi and at least 2 samples".into()));
    }
    let detected = detect_breakpoints(f);
    let step = (hi - lo) / qi(n as i64 - 1);
    let mut ts: BTreeSet<Q> = (0..n).map(|i| lo + &step * qi(i as i64)).collect();
    let inside: Vec<Q> = detected.iter().filter(|b| *b >= lo && *b <= hi).cloned().collect();
    ts.extend(inside.iter().cloned());
    let two = qi(2);
    for b in &inside {
        if let Some(l) = ts.range(..b.clone()).next_back() {
            ts.insert((l + b) / &two);
        }
        if let Some(r) = ts.range((std::ops::Bound::Excluded(b.clone()), std::ops::Bound::Unbounded)).next() {
            ts.insert((r + b) / &two);
        }
    }
    let ts: Vec<Q> = ts.into_iter().collect();
    let samples: Vec<Sample> = ts
        .par_iter()
        .map(|t| match evaluate(f, t, e) {
            Ok(b) => Sample { t: t.clone(), beta: Some(b), status: "ok".into() },
            Err(err) => Sample { t: t.clone(), beta: None, status: err.kind().into() },
        })
        .collect();
    let mut breakpoints: BTreeSet<Q> = BTreeSet::new();
    let mut intervals: Vec<Interval> = Vec::new();
    let mut prev: Option<&Sample> = None;
    for s in &samples {
        match &s.beta {
            None => {
                breakpoints.insert(s.t.clone());
                prev = None;
                continue;
            }
            Some(b) => {
                match (prev, intervals.last_mut()) {
                    (Some(p), Some(iv)) if p.beta.as_ref() == Some(b) => iv.right = s.t.clone(),
                    (p, _) => {
                        if let Some(p) = p {
                            let between: Vec<&Q> = inside.iter().filter(|x| **x > p.t && **x < s.t).collect();
                            if between.is_empty() {
                                breakpoints.insert((&p.t + &s.t) / &two);
                            } else {
                                breakpoints.extend(between.into_iter().cloned());
                            }
                        }
                        intervals.push(Interval { left: s.t.clone(), right: s.t.clone(), beta: b.clone() });
                    }
                }
            }
        }
        prev = Some(s);
    }
    Ok(ScanReport {
        symbol: e,
        samples,
        intervals,
        breakpoints: breakpoints.into_iter().collect(),
        detected,
    })
}

impl ScanReport {
    /// Distinct β values over the intervals, in order of first appearance.
    pub fn plateaus(&self) -> Vec<BetaPoly> {
        let mut out: Vec<BetaPoly> = Vec::new();
        for iv in &self.intervals {
            if !out.contains(&iv.beta) {
                out.push(iv.beta.clone());
            }
        }
        out
    }

    /// `t,beta,status` rows.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["t", "beta", "status"]).expect("in-memory write");
        for s in &self.samples {
            let b = s.beta.as_ref().map(|b| b.to_string()).unwrap_or_default();
            w.write_record([fmt_q(&s.t), b, s.status.clone()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_germ;
    use crate::rational::qi;

    #[test]
    fn specialization_examples() {
        let f = GermFamily::parse("x^2 - t*y^2").unwrap();
        assert_eq!(specialize(&f, &qi(1)), parse_germ("x^2 - y^2").unwrap());
        assert_eq!(specialize(&f, &qi(0)), parse_germ("x^2").unwrap());
        let g = GermFamily::parse("x*(x - y)*(x - t*y)").unwrap();
        assert_eq!(specialize(&g, &qi(2)), parse_germ("x^3 - 3*x^2*y + 2*x*y^2").unwrap());
    }

    #[test]
    fn rejects_non_germ_family() {
        assert!(GermFamily::parse("t + x").is_err());
        assert!(GermFamily::parse("x^2 + 0*t").is_ok());
    }

    #[test]
    fn mirror() {
        let f = GermFamily::parse("x^2 - t*y^2").unwrap();
        assert_eq!(f.mirrored(), GermFamily::parse("x^2 + t*y^2").unwrap());
    }

    #[test]
    fn breakpoint_detection() {
        let f = GermFamily::parse("x^2 - t*y^2").unwrap();
        assert_eq!(detect_breakpoints(&f), vec![qi(0)]);
        let g = GermFamily::parse("x*(x - y)*(x - t*y)").unwrap();
        assert_eq!(detect_breakpoints(&g), vec![qi(0), qi(1)]);
        let c = GermFamily::parse("x^2 + y^2 + 0*t").unwrap();
        assert!(detect_breakpoints(&c).is_empty());
        // order jump: the lowest form vanishes at t = 3
        let h = GermFamily::parse("(t - 3)*x^2 + y^3").unwrap();
        assert_eq!(detect_breakpoints(&h), vec![qi(3)]);
    }

    #[test]
    fn quadratic_family_scan() {
        let f = GermFamily::parse("x^2 - t*y^2").unwrap();
        let r = scan(&f, &qi(-2), &qi(2), 9, Symbol::Plus1).unwrap();
        assert_eq!(r.breakpoints, vec![qi(0)]);
        assert_eq!(r.intervals.len(), 2);
        assert_eq!(r.plateaus().len(), 2);
        assert_eq!(r.intervals[0].beta.to_string(), "u + 1");
        assert_eq!(r.intervals[1].beta.to_string(), "-u + 1");
        assert!(r.to_csv().contains("\n0,,NotIsolated\n"));
    }

    #[test]
    fn constant_family_scan() {
        let f = GermFamily::parse("x^2 + y^2 + 0*t").unwrap();
        let r = scan(&f, &qi(-1), &qi(1), 5, Symbol::Pos).unwrap();
        assert!(r.breakpoints.is_empty());
        assert_eq!(r.intervals.len(), 1);
    }
}
