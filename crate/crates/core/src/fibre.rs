//! Grid-based topology of real Milnor fibres `f = ±η` and tubes `0 < ±f < η`
//! inside the open disk of radius `δ`.
//!
//! Node signs are exact: coordinates are rationals `δ·a/D` with integer `a`,
//! and `f` is evaluated after clearing denominators. Node columns sit at odd
//! multiples of 3 and rows at `2 mod 3`, so neither axis ever contains a node
//! and the origin lies inside a grid face. Tubes are assembled from the level
//! curve and the two open sets `±f > 0`, `±f > η` by additivity of `χ_c`.

use crate::error::{Error, Result};
use crate::milnor::milnor_number;
use crate::poly::{Order, Polynomial};
use crate::rational::{fmt_q, Q};
use crate::symbol::Symbol;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_MAX_GRID: usize = 512;
const START_GRID: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibreReport {
    pub symbol: Symbol,
    #[serde(serialize_with = "ser_q")]
    pub delta: Q,
    #[serde(serialize_with = "ser_q")]
    pub eta: Q,
    pub components_arcs: usize,
    pub components_circles: usize,
    pub regions: usize,
    pub chi_c: i64,
    pub grid_resolution: usize,
    pub stabilized: bool,
    /// The radii are not certified to be Milnor data.
    pub heuristic: bool,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(q))
}

/// Counts that must agree between refinements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Counts {
    arcs: usize,
    circles: usize,
    regions: usize,
    chi_c: i64,
}

/// `δ = 1/2`, `η = δ^deg / 100`.
pub fn default_data(f: &Polynomial) -> (Q, Q) {
    let delta = Q::new(1.into(), 2.into());
    let deg = f.total_degree().unwrap_or(1);
    let eta = crate::rational::pow_q(&delta, deg) / Q::from_integer(100.into());
    (delta, eta)
}

/// `MM_MAX_GRID` or the default cap.
pub fn max_grid_from_env() -> usize {
    std::env::var("MM_MAX_GRID")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n >= START_GRID)
        .unwrap_or(DEFAULT_MAX_GRID)
}

/// Refines the grid from 32 upwards until two consecutive resolutions agree.
pub fn fibre_topology(f: &Polynomial, e: Symbol, delta: &Q, eta: &Q, max_grid: usize) -> Result<FibreReport> {
    if !delta.is_positive() || !eta.is_positive() {
        return Err(Error::InvalidInput("delta and eta must be positive".into()));
    }
    if matches!(milnor_number(f)?, Order::Infinite) {
        return Err(Error::NotIsolated);
    }
    let mut n = START_GRID;
    let mut prev = count_at(f, e, delta, eta, n)?;
    loop {
        let next_n = n * 2;
        if next_n > max_grid.max(START_GRID) {
            return Ok(report(e, delta, eta, prev, n, false));
        }
        let next = count_at(f, e, delta, eta, next_n)?;
        if next == prev {
            return Ok(report(e, delta, eta, next, next_n, true));
        }
        prev = next;
        n = next_n;
    }
}

/// Counts at a single grid resolution `n` (must be even).
pub fn fibre_topology_at(f: &Polynomial, e: Symbol, delta: &Q, eta: &Q, n: usize) -> Result<FibreReport> {
    let c = count_at(f, e, delta, eta, n)?;
    Ok(report(e, delta, eta, c, n, false))
}

fn report(e: Symbol, delta: &Q, eta: &Q, c: Counts, n: usize, stabilized: bool) -> FibreReport {
    FibreReport {
        symbol: e,
        delta: delta.clone(),
        eta: eta.clone(),
        components_arcs: c.arcs,
        components_circles: c.circles,
        regions: c.regions,
        chi_c: c.chi_c,
        grid_resolution: n,
        stabilized,
        heuristic: true,
    }
}

fn count_at(f: &Polynomial, e: Symbol, delta: &Q, eta: &Q, n: usize) -> Result<Counts> {
    // retry with perturbed row offsets when a node hits a level set exactly
    let mut last = None;
    for attempt in 0..6 {
        let grid = Grid::new(f, delta, eta, n + 2 * attempt, attempt);
        let r = if e.is_tube() {
            grid.tube(e.sign())
        } else {
            grid.fibre(e.sign())
        };
        match r {
            Ok(c) => return Ok(c),
            Err(err) => last = Some(err),
        }
    }
    Err(last.unwrap())
}

/// Integer form of `f(δa/D, δb/D)·L` and of `η·L`.
struct Grid {
    d: i64,
    cols: Vec<i64>,
    rows: Vec<i64>,
    terms: Vec<(u32, u32, BigInt)>,
    terms128: Option<Vec<(u32, u32, i128)>>,
    eta: BigInt,
}

enum Val {
    Small(i128),
    Big(BigInt),
}

impl Val {
    fn big(&self) -> BigInt {
        match self {
            Val::Small(v) => BigInt::from(*v),
            Val::Big(v) => v.clone(),
        }
    }
}

impl Grid {
    fn new(f: &Polynomial, delta: &Q, eta: &Q, n: usize, attempt: usize) -> Grid {
        assert!(n % 2 == 0);
        let d = 3 * n as i64;
        let deg = f.total_degree().unwrap_or(0);
        // column offset 3 (odd multiples of 3), row offset 2 mod 3 shifted per attempt
        let row_off = [2i64, 1, 2, 1, 2, 1][attempt] + 6 * (attempt as i64 / 2);
        let cols: Vec<i64> = (-1..=n as i64 + 1).map(|i| 6 * i + 3 - d).collect();
        let rows: Vec<i64> = (-2..=n as i64 + 1).map(|j| 6 * j + row_off - d).collect();
        let dq = Q::from_integer(d.into());
        let mut scaled: Vec<(u32, u32, Q)> = Vec::new();
        for (m, c) in f.terms() {
            let (k, l) = (m.0[0], m.0[1]);
            let s = c * crate::rational::pow_q(delta, k + l) * crate::rational::pow_q(&dq, deg - k - l);
            scaled.push((k, l, s));
        }
        let eta_s = eta * crate::rational::pow_q(&dq, deg);
        let mut lcm = BigInt::one();
        for (_, _, s) in &scaled {
            lcm = lcm.lcm(s.denom());
        }
        lcm = lcm.lcm(eta_s.denom());
        let l = Q::from_integer(lcm);
        let terms: Vec<(u32, u32, BigInt)> = scaled
            .into_iter()
            .map(|(k, l2, s)| (k, l2, (s * &l).to_integer()))
            .collect();
        let eta = (eta_s * &l).to_integer();
        let terms128 = terms
            .iter()
            .map(|(k, l, c)| c.to_i128().map(|c| (*k, *l, c)))
            .collect::<Option<Vec<_>>>();
        Grid { d, cols, rows, terms, terms128, eta }
    }

    fn eval(&self, a: i64, b: i64) -> Val {
        if let Some(t) = &self.terms128 {
            let small = || -> Option<i128> {
                let mut acc: i128 = 0;
                for (k, l, c) in t {
                    let mut v = *c;
                    for _ in 0..*k {
                        v = v.checked_mul(a as i128)?;
                    }
                    for _ in 0..*l {
                        v = v.checked_mul(b as i128)?;
                    }
                    acc = acc.checked_add(v)?;
                }
                Some(acc)
            };
            if let Some(v) = small() {
                return Val::Small(v);
            }
        }
        let mut acc = BigInt::zero();
        for (k, l, c) in &self.terms {
            acc += c * BigInt::from(a).pow(*k) * BigInt::from(b).pow(*l);
        }
        Val::Big(acc)
    }

    fn values(&self) -> Vec<Vec<BigInt>> {
        self.cols
            .par_iter()
            .map(|&a| self.rows.iter().map(|&b| self.eval(a, b).big()).collect())
            .collect()
    }

    fn inside(&self, a: &Q, b: &Q) -> bool {
        a * a + b * b < Q::from_integer((self.d * self.d).into())
    }

    fn node_inside(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.cols[i], self.rows[j]);
        a * a + b * b < self.d * self.d
    }

    /// Curve `f = sign·η`.
    fn fibre(&self, sign: i8) -> Result<Counts> {
        let target = if sign > 0 { self.eta.clone() } else { -self.eta.clone() };
        let vals = self.values();
        let (nc, nr) = (self.cols.len(), self.rows.len());
        let g: Vec<Vec<BigInt>> = vals.iter().map(|c| c.iter().map(|v| v - &target).collect()).collect();
        if g.iter().flatten().any(|v| v.is_zero()) {
            return Err(Error::GridDegeneracy("level set passes through a grid node".into()));
        }
        // vertices on sign-changing edges, keyed by (i, j, horizontal?)
        let mut vid = std::collections::HashMap::new();
        let mut verts: Vec<(Q, Q)> = Vec::new();
        let mut vertex = |i0: usize, j0: usize, i1: usize, j1: usize| -> usize {
            let key = (i0, j0, i1, j1);
            if let Some(&v) = vid.get(&key) {
                return v;
            }
            let (gp, gq) = (&g[i0][j0], &g[i1][j1]);
            let lam = Q::new(gp.clone(), gp - gq);
            let a0 = Q::from_integer(self.cols[i0].into());
            let a1 = Q::from_integer(self.cols[i1].into());
            let b0 = Q::from_integer(self.rows[j0].into());
            let b1 = Q::from_integer(self.rows[j1].into());
            let p = (&a0 + &lam * (a1 - &a0), &b0 + &lam * (b1 - &b0));
            verts.push(p);
            vid.insert(key, verts.len() - 1);
            verts.len() - 1
        };
        let mut segs: Vec<(usize, usize)> = Vec::new();
        for i in 0..nc - 1 {
            for j in 0..nr - 1 {
                let s = |ii: usize, jj: usize| g[ii][jj].is_positive();
                let (s00, s10, s11, s01) = (s(i, j), s(i + 1, j), s(i + 1, j + 1), s(i, j + 1));
                let bottom = (i, j, i + 1, j);
                let right = (i + 1, j, i + 1, j + 1);
                let top = (i, j + 1, i + 1, j + 1);
                let left = (i, j, i, j + 1);
                let mut cross = Vec::new();
                if s00 != s10 {
                    cross.push(bottom);
                }
                if s10 != s11 {
                    cross.push(right);
                }
                if s01 != s11 {
                    cross.push(top);
                }
                if s00 != s01 {
                    cross.push(left);
                }
                let mut v = |e: (usize, usize, usize, usize)| vertex(e.0, e.1, e.2, e.3);
                match cross.len() {
                    0 => {}
                    2 => segs.push((v(cross[0]), v(cross[1]))),
                    4 => {
                        let c = self.eval(self.cols[i] + 3, self.rows[j] + 3).big() - &target;
                        if c.is_zero() {
                            return Err(Error::GridDegeneracy("saddle cell centre on the level set".into()));
                        }
                        if c.is_positive() == s00 {
                            // s00's region runs through the centre: cut off the other corners
                            segs.push((v(bottom), v(right)));
                            segs.push((v(left), v(top)));
                        } else {
                            segs.push((v(bottom), v(left)));
                            segs.push((v(right), v(top)));
                        }
                    }
                    _ => unreachable!("a cell has an even number of sign changes"),
                }
            }
        }
        let inside: Vec<bool> = verts.iter().map(|(a, b)| self.inside(a, b)).collect();
        let v_in = inside.iter().filter(|&&x| x).count();
        let mut dsu = Dsu::new(verts.len());
        let mut ends = vec![0usize; verts.len()];
        let mut pieces = 0usize;
        let mut chords = 0usize;
        for &(p, q) in &segs {
            match (inside[p], inside[q]) {
                (true, true) => {
                    dsu.union(p, q);
                    pieces += 1;
                }
                (true, false) => {
                    ends[p] += 1;
                    pieces += 1;
                }
                (false, true) => {
                    ends[q] += 1;
                    pieces += 1;
                }
                (false, false) => {
                    if self.chord_meets_disk(&verts[p], &verts[q]) {
                        chords += 1;
                        pieces += 1;
                    }
                }
            }
        }
        let mut comp_ends = std::collections::BTreeMap::new();
        for v in 0..verts.len() {
            if inside[v] {
                *comp_ends.entry(dsu.find(v)).or_insert(0usize) += ends[v];
            }
        }
        let circles = comp_ends.values().filter(|&&e| e == 0).count();
        let arcs = comp_ends.values().map(|&e| e.div_ceil(2)).sum::<usize>() + chords;
        Ok(Counts {
            arcs,
            circles,
            regions: 0,
            chi_c: v_in as i64 - pieces as i64,
        })
    }

    fn chord_meets_disk(&self, p: &(Q, Q), q: &(Q, Q)) -> bool {
        let (dx, dy) = (&q.0 - &p.0, &q.1 - &p.1);
        let len2 = &dx * &dx + &dy * &dy;
        if len2.is_zero() {
            return false;
        }
        let mut t = -(&p.0 * &dx + &p.1 * &dy) / len2;
        if t.is_negative() {
            t = Q::zero();
        } else if t > Q::one() {
            t = Q::one();
        }
        self.inside(&(&p.0 + &t * &dx), &(&p.1 + &t * &dy))
    }

    /// Radius (in grid units) of the ball cut out of `{±f > 0}`, where the set
    /// is a cone: `U ∩ B̄_ρ ≅ (0, ρ] × arcs` has `χ_c = 0`. The radius grows
    /// like `√n` cells, so edges eventually stop bridging sectors.
    fn core_radius(&self, n: usize) -> i64 {
        6 * ((n as f64).sqrt() / 2.0).ceil().max(1.0) as i64
    }

    /// Region `0 < sign·f < η`, by additivity of `χ_c`:
    /// `χ_c(0 < f < η) = χ(f > 0) − χ(f > η) − χ_c(f = η)`, the two open
    /// surfaces approximated by full subcomplexes on the nodes they contain.
    /// The strip `0 < f < η` itself is far too thin to sample directly.
    fn tube(&self, sign: i8) -> Result<Counts> {
        let vals = self.values();
        let (nc, nr) = (self.cols.len(), self.rows.len());
        let rho = self.core_radius(nc);
        let mut positive = vec![vec![false; nr]; nc];
        let mut above = vec![vec![false; nr]; nc];
        for i in 0..nc {
            for j in 0..nr {
                let v = if sign > 0 { vals[i][j].clone() } else { -vals[i][j].clone() };
                if v.is_zero() || v == self.eta {
                    return Err(Error::GridDegeneracy("tube boundary passes through a grid node".into()));
                }
                let inside = self.node_inside(i, j);
                let (a, b) = (self.cols[i], self.rows[j]);
                positive[i][j] = inside && v.is_positive() && a * a + b * b >= rho * rho;
                above[i][j] = inside && v > self.eta;
            }
        }
        let (chi_pos, regions) = subcomplex(&positive);
        let (chi_above, _) = subcomplex(&above);
        let level = self.fibre(sign)?;
        Ok(Counts {
            arcs: 0,
            circles: 0,
            regions,
            chi_c: chi_pos - chi_above - level.chi_c,
        })
    }
}

/// Euler characteristic and component count of the full cubical subcomplex
/// on the marked nodes.
fn subcomplex(mark: &[Vec<bool>]) -> (i64, usize) {
    let nc = mark.len();
    let nr = mark.first().map_or(0, |c| c.len());
    let idx = |i: usize, j: usize| i * nr + j;
    let mut dsu = Dsu::new(nc * nr);
    let (mut v, mut e, mut faces) = (0i64, 0i64, 0i64);
    for i in 0..nc {
        for j in 0..nr {
            if !mark[i][j] {
                continue;
            }
            v += 1;
            if i + 1 < nc && mark[i + 1][j] {
                e += 1;
                dsu.union(idx(i, j), idx(i + 1, j));
            }
            if j + 1 < nr && mark[i][j + 1] {
                e += 1;
                dsu.union(idx(i, j), idx(i, j + 1));
            }
            if i + 1 < nc && j + 1 < nr && mark[i + 1][j] && mark[i][j + 1] && mark[i + 1][j + 1] {
                faces += 1;
            }
        }
    }
    let mut roots = std::collections::BTreeSet::new();
    for i in 0..nc {
        for j in 0..nr {
            if mark[i][j] {
                roots.insert(dsu.find(idx(i, j)));
            }
        }
    }
    (v - e + faces, roots.len())
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// One symbol of the comparison `χ_c(S^ε) = −χ_c(fibre)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cf412Entry {
    pub symbol: Symbol,
    /// `χ_c` of the motivic fibre computed from the resolution.
    pub motivic: i64,
    /// `χ_c` of the sampled fibre or tube.
    pub oracle: i64,
    pub stabilized: bool,
    /// Counts unchanged after halving `η`.
    pub eta_stable: bool,
    pub pass: bool,
}

/// Compares both sides of the Euler-characteristic identity for every symbol.
pub fn verify_cf412(f: &Polynomial, delta: &Q, eta: &Q, max_grid: usize) -> Result<Vec<Cf412Entry>> {
    let res = crate::resolve::embedded_resolution(f)?;
    let half = eta / Q::from_integer(2.into());
    Symbol::ALL
        .par_iter()
        .map(|&e| {
            let s = crate::zeta::motivic_fibre(&res, e)?;
            let motivic = crate::zeta::chi_tilde(&s)?;
            let r = fibre_topology(f, e, delta, eta, max_grid)?;
            let r2 = fibre_topology(f, e, delta, &half, max_grid)?;
            let same = |a: &FibreReport, b: &FibreReport| {
                (a.components_arcs, a.components_circles, a.regions, a.chi_c)
                    == (b.components_arcs, b.components_circles, b.regions, b.chi_c)
            };
            let eta_stable = r2.stabilized && same(&r, &r2);
            Ok(Cf412Entry {
                symbol: e,
                motivic,
                oracle: r.chi_c,
                stabilized: r.stabilized,
                eta_stable,
                pass: r.stabilized && eta_stable && motivic == -r.chi_c,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_germ;
    use crate::rational::q;

    fn run(f: &str, e: Symbol, eta: Q) -> FibreReport {
        fibre_topology(&parse_germ(f).unwrap(), e, &q(1, 2), &eta, 512).unwrap()
    }

    #[test]
    fn circle_fibre() {
        let r = run("x^2 + y^2", Symbol::Plus1, q(1, 8));
        assert!(r.stabilized);
        assert_eq!((r.components_circles, r.components_arcs, r.chi_c), (1, 0, 0));
    }

    #[test]
    fn hyperbola_fibre_and_tube() {
        let r = run("x*y", Symbol::Plus1, q(1, 100));
        assert!(r.stabilized);
        assert_eq!((r.components_arcs, r.chi_c), (2, -2));
        let t = run("x*y", Symbol::Pos, q(1, 100));
        assert!(t.stabilized);
        assert_eq!((t.regions, t.chi_c), (2, 2));
    }

    #[test]
    fn punctured_disk_tube() {
        let t = run("x^2 + y^2", Symbol::Pos, q(1, 400));
        assert_eq!((t.regions, t.chi_c), (1, 0));
        let t = run("x^2 + y^2", Symbol::Neg, q(1, 400));
        assert_eq!((t.regions, t.chi_c), (0, 0));
    }

    #[test]
    fn non_isolated_rejected() {
        let r = fibre_topology(&parse_germ("x^2*y").unwrap(), Symbol::Plus1, &q(1, 2), &q(1, 100), 64);
        assert_eq!(r, Err(Error::NotIsolated));
    }
}
