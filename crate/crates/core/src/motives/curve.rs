//! β of real superelliptic curves `{(s, t) : t^N w(s) = c}` over a punctured
//! line, and of one-variable sign loci.
//!
//! The curve is a disjoint union of open arcs (graphs over the intervals cut
//! out by the real roots of `w`). Its smooth projective model adds one real
//! point for every pair of arc ends glued by a real branch at a root of `w` or
//! at infinity; then `β = circles·(u+1) − arcs`.

use super::BetaPoly;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::upoly::{real_roots, RealRoot, UPoly};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// How sign conditions `p > 0` are turned into curve classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignSemantics {
    /// Strip even-multiplicity factors (their roots become punctures) and
    /// root-free factors before applying the recursion.
    #[default]
    Reduced,
    /// Apply the recursion to `p` as written.
    Literal,
}

/// Connectivity of the real smooth projective model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaceGraph {
    pub arcs: usize,
    pub circles: usize,
}

impl PlaceGraph {
    pub fn beta(&self) -> BetaPoly {
        let circle = &BetaPoly::u() + &BetaPoly::one();
        &circle.scale(&Q::from_integer((self.circles as i64).into())) - &BetaPoly::int(self.arcs as i64)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
    fn count(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// A rational strictly between two consecutive roots (either may be absent).
pub fn sample_between(left: Option<&RealRoot>, right: Option<&RealRoot>) -> Q {
    let lo = left.map(|r| r.interval().1);
    let hi = right.map(|r| r.interval().0);
    match (lo, hi) {
        (None, None) => Q::zero(),
        (Some(l), None) => l + Q::one(),
        (None, Some(h)) => h - Q::one(),
        (Some(l), Some(h)) => {
            if l < h {
                (l + h) / Q::from_integer(2.into())
            } else {
                l
            }
        }
    }
}

/// Multiplicity of a real root of `w`.
pub fn multiplicity_at(w: &UPoly, r: &RealRoot) -> u32 {
    for (k, g) in w.squarefree_decomposition() {
        if r.sign_of(&g) == Ordering::Equal {
            return k;
        }
    }
    0
}

fn sgn(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Place graph of `{t^n w(s) = c}` over the line minus the real roots of `w`.
pub fn place_graph(n: u32, w: &UPoly, c: &Q) -> PlaceGraph {
    assert!(n >= 1 && !w.is_zero() && !c.is_zero());
    let roots = real_roots(w);
    // places: 0 = infinity, i + 1 = roots[i]
    let mut mult = vec![w.deg() as u32];
    mult.extend(roots.iter().map(|r| multiplicity_at(w, r)));
    // ends: (place, sx, sy); arcs: pair of end indices
    let mut ends: Vec<(usize, i8, i8)> = Vec::new();
    let mut arcs = 0;
    for i in 0..=roots.len() {
        let left = if i == 0 { None } else { Some(&roots[i - 1]) };
        let right = roots.get(i);
        let ws = sgn(&w.eval(&sample_between(left, right)));
        let ratio = sgn(c) * ws;
        let signs: Vec<i8> = if n % 2 == 1 {
            vec![ratio]
        } else if ratio > 0 {
            vec![1, -1]
        } else {
            vec![]
        };
        let lp = if i == 0 { 0 } else { i };
        let rp = if i == roots.len() { 0 } else { i + 1 };
        for sy in signs {
            // the left end approaches s -> -inf (sigma < 0) or a root from the right
            let lsx = if i == 0 { -1 } else { 1 };
            let rsx = if i == roots.len() { 1 } else { -1 };
            ends.push((lp, lsx, sy));
            ends.push((rp, rsx, sy));
            arcs += 1;
        }
    }
    let mut dsu = Dsu::new(ends.len());
    for a in 0..arcs {
        dsu.union(2 * a, 2 * a + 1);
    }
    for (idx, &(p, sx, sy)) in ends.iter().enumerate() {
        let m = mult[p];
        let g = n.gcd(&m);
        let (n1, m1) = (n / g, m / g);
        let px = if n1 % 2 == 1 { -sx } else { sx };
        let py = if m1 % 2 == 1 { -sy } else { sy };
        let partner = ends
            .iter()
            .position(|&e| e == (p, px, py))
            .expect("every real branch has two half-branches");
        dsu.union(idx, partner);
    }
    PlaceGraph {
        arcs,
        circles: dsu.count(),
    }
}

/// Number of points of `{t^n w(s0) = c}` in the fibre over a single point.
pub fn fibre_size(n: u32, w: &UPoly, c: &Q, s0: &RealRoot) -> i64 {
    let ws = match s0.sign_of(w) {
        Ordering::Equal => return 0,
        Ordering::Greater => 1,
        Ordering::Less => -1,
    };
    if n % 2 == 1 {
        1
    } else if ws * sgn(c) > 0 {
        2
    } else {
        0
    }
}

/// Removes duplicates from a puncture list (exact comparison).
pub fn dedup_points(pts: &[RealRoot]) -> Vec<RealRoot> {
    let mut out: Vec<RealRoot> = Vec::new();
    for p in pts {
        if !out.iter().any(|q| same_point(p, q)) {
            out.push(p.clone());
        }
    }
    out
}

pub fn same_point(a: &RealRoot, b: &RealRoot) -> bool {
    match (a, b) {
        (RealRoot::Rational(x), _) => b.cmp_q(x) == Ordering::Equal,
        (_, RealRoot::Rational(y)) => a.cmp_q(y) == Ordering::Equal,
        (RealRoot::Isolated { poly: p, .. }, RealRoot::Isolated { .. }) => {
            // equal iff b is a root of a's defining polynomial inside a's interval
            b.sign_of(p) == Ordering::Equal && {
                let (lo, hi) = a.interval();
                b.cmp_q(&lo) == Ordering::Greater && b.cmp_q(&hi) == Ordering::Less
            }
        }
    }
}

/// β of `{(s, t) : s ∉ punctures, t^n w(s) = c}`.
pub fn superelliptic_beta(n: u32, w: &UPoly, c: &Q, punctures: &[RealRoot]) -> Result<BetaPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("cover degree must be positive".into()));
    }
    if w.is_zero() {
        return Err(Error::UnitVanishesOnStratum("w is identically zero".into()));
    }
    if c.is_zero() {
        return Ok(BetaPoly::zero());
    }
    let g = place_graph(n, w, c);
    let removed: i64 = dedup_points(punctures)
        .iter()
        .map(|p| fibre_size(n, w, c, p))
        .sum();
    Ok(&g.beta() - &BetaPoly::int(removed))
}

/// Sign pattern actually tested: `p` itself or its reduction.
pub fn reduce_sign_poly(p: &UPoly, sem: SignSemantics) -> (UPoly, Vec<RealRoot>) {
    if sem == SignSemantics::Literal || p.is_constant() {
        return (p.clone(), Vec::new());
    }
    let mut red = UPoly::constant(p.lc());
    let mut extra = Vec::new();
    for (k, g) in p.squarefree_decomposition() {
        let rr = real_roots(&g);
        if k % 2 == 0 {
            extra.extend(rr);
        } else if !rr.is_empty() {
            red = &red * &g;
        }
        // odd factors without real roots are positive (monic): dropped
    }
    (red, extra)
}

/// β of `{s ∈ line ∖ punctures : p(s) > 0}` through
/// `¼β(p = z²) − ¼β(p = −z²) + ½β(p ≠ 0)`.
pub fn beta_positive_locus(p: &UPoly, punctures: &[RealRoot], sem: SignSemantics) -> BetaPoly {
    let (p, extra) = reduce_sign_poly(p, sem);
    let mut punct = punctures.to_vec();
    punct.extend(extra);
    let punct = dedup_points(&punct);
    let base = &BetaPoly::u() - &BetaPoly::int(punct.len() as i64);
    if p.is_zero() {
        return BetaPoly::zero();
    }
    // roots of p that survive in the base
    let z0 = real_roots(&p)
        .into_iter()
        .filter(|r| !punct.iter().any(|q| same_point(q, r)))
        .count() as i64;
    let nonzero = &base - &BetaPoly::int(z0);
    let sq = |c: i64| {
        &superelliptic_beta(2, &p, &Q::from_integer(c.into()), &punct).expect("valid curve")
            + &BetaPoly::int(z0)
    };
    let quarter = Q::new(1.into(), 4.into());
    let a = sq(1).scale(&quarter);
    let b = sq(-1).scale(&quarter);
    &(&a - &b) + &nonzero.scale(&BetaPoly::half())
}

/// Number of connected components of `{p > 0}` minus the punctures (as a
/// subset of the real line); used as an independent χ_c check.
pub fn positive_interval_count(p: &UPoly, punctures: &[Q]) -> usize {
    let mut cuts: Vec<Q> = punctures.to_vec();
    let roots = real_roots(p);
    // sample each interval between consecutive cut points, where cut points are
    // roots of p and punctures; count maximal runs of positive samples
    let mut pts: Vec<RealRoot> = roots;
    pts.extend(cuts.drain(..).map(RealRoot::Rational));
    let mut pts = dedup_points(&pts);
    pts.sort_by(|a, b| {
        if same_point(a, b) {
            Ordering::Equal
        } else {
            let (alo, ahi) = a.interval();
            let (blo, bhi) = b.interval();
            if ahi <= blo {
                Ordering::Less
            } else if bhi <= alo {
                Ordering::Greater
            } else {
                a.approx().partial_cmp(&b.approx()).unwrap()
            }
        }
    });
    let mut count = 0;
    for i in 0..=pts.len() {
        let left = if i == 0 { None } else { Some(&pts[i - 1]) };
        let s = sample_between(left, pts.get(i));
        if p.sign_at(&s) == Ordering::Greater {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn b(s: &str) -> BetaPoly {
        BetaPoly::parse(s).unwrap()
    }
    fn up(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn hand_checked_curves() {
        // t^2 s = 1 is a punctured line
        assert_eq!(superelliptic_beta(2, &up(&[0, 1]), &qi(1), &[]).unwrap(), b("u - 1"));
        // t^2 (1 + s^2) = 1 is a hyperbola
        assert_eq!(superelliptic_beta(2, &up(&[1, 0, 1]), &qi(1), &[]).unwrap(), b("u - 1"));
        assert_eq!(superelliptic_beta(2, &up(&[1, 0, 1]), &qi(-1), &[]).unwrap(), b("0"));
        // xy = 1
        assert_eq!(superelliptic_beta(1, &up(&[0, 1]), &qi(1), &[]).unwrap(), b("u - 1"));
        // t^2 = 1: two lines
        assert_eq!(superelliptic_beta(2, &up(&[1]), &qi(1), &[]).unwrap(), b("2*u"));
        // with a puncture at a point where w != 0
        let p0 = [RealRoot::Rational(qi(0))];
        assert_eq!(superelliptic_beta(2, &up(&[1]), &qi(1), &p0).unwrap(), b("2*u - 2"));
        assert_eq!(superelliptic_beta(2, &up(&[1, 0, 1]), &qi(1), &p0).unwrap(), b("u - 3"));
        // circle t^2 = s(1 - s)
        assert_eq!(superelliptic_beta(2, &up(&[0, 1, -1]), &qi(1), &[]).unwrap(), b("u - 1"));
    }

    #[test]
    fn sign_recursion_examples() {
        let lit = SignSemantics::Literal;
        assert_eq!(beta_positive_locus(&up(&[0, 1]), &[], lit), b("1/2*u - 1/2"));
        assert_eq!(beta_positive_locus(&up(&[1]), &[], lit), b("u"));
        assert_eq!(beta_positive_locus(&up(&[-1]), &[], lit), b("0"));
        // formula dependence of the literal recursion
        assert_eq!(beta_positive_locus(&up(&[1, 0, 1]), &[], lit), b("3/4*u - 1/4"));
        assert_eq!(beta_positive_locus(&up(&[1, 0, 1]), &[], SignSemantics::Reduced), b("u"));
        // bounded interval
        assert_eq!(beta_positive_locus(&up(&[0, 1, -1]), &[], lit), b("1/2*u - 1/2"));
    }

    #[test]
    fn reduction_strips_squares() {
        let p = &up(&[0, 1]) * &up(&[-1, 1]).pow(2);
        let r = beta_positive_locus(&p, &[], SignSemantics::Reduced);
        // (0,1) and (1,inf) as {s > 0} minus the point 1
        assert_eq!(r.chi_c(), qi(-2));
        assert_eq!(positive_interval_count(&p, &[]), 2);
        assert_eq!(r, &b("1/2*u - 1/2") - &b("1"));
    }

    #[test]
    fn irrational_roots() {
        // t^2 (s^2 - 2) = 1: two arcs pairs outside ±sqrt 2
        let w = up(&[-2, 0, 1]);
        let g = place_graph(2, &w, &qi(1));
        assert_eq!(g.arcs, 4);
        assert_eq!(superelliptic_beta(2, &w, &qi(1), &[]).unwrap().chi_c(), qi(-4));
    }
}
