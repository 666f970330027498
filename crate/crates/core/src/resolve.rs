//! Embedded resolution of plane-curve germs by point blowups.
//!
//! Every chart carries local coordinates `(a, b)` and the factorization
//!
//! ```text
//! f∘σ = c · U · a^{N_a} · b^{N_b} · ∏ G_k^k
//! ```
//!
//! where `a = 0` / `b = 0` are exceptional components (when present), `U` is a
//! unit on the exceptional points of the chart, and the `G_k` are the
//! squarefree, pairwise coprime multiplicity groups of the strict transform.
//!
//! An exceptional component `E` born by blowing up a point is presented in two
//! charts: chart A (`E = {a = 0}`, all of `E` except one point) and chart B
//! (`E = {b = 0}`, which contributes only its origin). Chart A is responsible
//! for every point of its line, chart B for its origin; blown-up points are
//! recorded as centers and become punctures of `E`.

use crate::bivar;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{fmt_q, Q};
use crate::upoly::{rational_roots, real_roots, root_multiplicity, RealRoot, UPoly};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub const MAX_BLOWUPS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    Base,
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub id: usize,
    pub parent: Option<usize>,
    pub kind: ChartKind,
    /// `b`-coordinate of the parent point that was blown up.
    pub center: Q,
    /// Composed map from chart coordinates to `(x, y)`.
    pub x: Polynomial,
    pub y: Polynomial,
    pub comp_a: Option<usize>,
    pub comp_b: Option<usize>,
    pub n_a: u32,
    pub n_b: u32,
    pub j_a: u32,
    pub j_b: u32,
    pub constant: Q,
    pub unit: Polynomial,
    pub groups: Vec<(u32, Polynomial)>,
    /// Exceptional component created together with this chart.
    pub born: Option<usize>,
    /// Points of the responsible locus that were blown up.
    pub centers: Vec<Q>,
    pub children: Vec<usize>,
}

fn ring() -> Vec<String> {
    vec!["a".to_string(), "b".to_string()]
}

fn var(i: usize) -> Polynomial {
    Polynomial::var_in(&ring(), i)
}

fn cst(c: Q) -> Polynomial {
    Polynomial::constant_in(&ring(), c)
}

/// Restriction to `a = 0` (as a polynomial in `b`) or `b = 0` (in `a`).
fn restrict(p: &Polynomial, to_a_zero: bool) -> UPoly {
    if to_a_zero {
        UPoly::from_poly(&p.specialize(0, &Q::zero()), 0)
    } else {
        UPoly::from_poly(&p.specialize(1, &Q::zero()), 0)
    }
}

impl Chart {
    fn product_of_groups(&self, skip: Option<usize>) -> Polynomial {
        let mut p = cst(Q::one());
        for (idx, (k, g)) in self.groups.iter().enumerate() {
            if Some(idx) != skip {
                p = &p * &g.pow(*k);
            }
        }
        p
    }

    /// `c · U · ∏ G_k^k`, the non-monomial factor.
    pub fn nonmonomial(&self) -> Polynomial {
        (&self.unit * &self.product_of_groups(None)).scale(&self.constant)
    }

    pub fn pullback(&self) -> Polynomial {
        let mono = &var(0).pow(self.n_a) * &var(1).pow(self.n_b);
        &self.nonmonomial() * &mono
    }

    pub fn reduced_strict(&self) -> Polynomial {
        let mut p = cst(Q::one());
        for (_, g) in &self.groups {
            p = &p * g;
        }
        p
    }

    /// The chart's substitution as text.
    pub fn substitution(&self) -> String {
        let s = fmt_q(&self.center);
        let shift = if self.center.is_zero() {
            String::new()
        } else if self.center.is_negative() {
            format!(" - {}", fmt_q(&-self.center.clone()))
        } else {
            format!(" + {s}")
        };
        match self.kind {
            ChartKind::Base => "(x, y) = (a, b)".to_string(),
            ChartKind::A => format!("(a, b) <- (a, a*b{shift})"),
            ChartKind::B => format!("(a, b) <- (a*b, b{shift})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorComponent {
    pub id: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
    pub exceptional: bool,
}

/// Presentation of a one-dimensional stratum `E^0`.
#[derive(Clone, Debug)]
pub struct LineData {
    pub chart_a: usize,
    pub chart_b: usize,
    /// Restriction of `f∘σ / a^N` to `E` in chart A (variable `b`).
    pub w_a: UPoly,
    /// Restriction of `f∘σ / b^N` to `E` in chart B (variable `a`).
    pub w_b: UPoly,
    /// Finite real punctures in the chart-A coordinate.
    pub punctures: Vec<RealRoot>,
    /// Blown-up points of chart A (all rational).
    pub centers: Vec<Q>,
    pub infinity_punctured: bool,
    /// Number of points of `E` met by other components over the complex numbers.
    pub complex_punctures: usize,
}

impl LineData {
    /// Punctures in chart-B coordinates `s' = 1/s`, excluding the roots of
    /// `w_b` (which the cover equations exclude anyway).
    pub fn chart_b_punctures(&self) -> Vec<RealRoot> {
        let mut out: Vec<RealRoot> = self
            .centers
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| RealRoot::Rational(Q::one() / c))
            .collect();
        if self.infinity_punctured {
            out.push(RealRoot::Rational(Q::zero()));
        }
        out.extend(real_roots(&self.w_b));
        crate::motives::dedup_points(&out)
    }
}

/// Presentation of a point stratum.
#[derive(Clone, Debug)]
pub struct PointData {
    pub chart: usize,
    /// Coordinate along the exceptional line in `chart`.
    pub location: RealRoot,
    /// Unit as a function of the line coordinate; evaluate at `location`.
    pub unit_poly: UPoly,
    pub unit_sign: i8,
}

impl PointData {
    pub fn unit_value(&self) -> Option<Q> {
        self.location.as_rational().map(|r| self.unit_poly.eval(r))
    }
}

#[derive(Clone, Debug)]
pub struct Stratum {
    /// Sorted component ids.
    pub components: Vec<usize>,
    pub dim: u8,
    pub n_i: u32,
    pub line: Option<LineData>,
    pub point: Option<PointData>,
}

impl Stratum {
    pub fn puncture_labels(&self) -> Vec<String> {
        match &self.line {
            None => vec![],
            Some(l) => {
                let mut v: Vec<String> = l.punctures.iter().map(|p| p.describe()).collect();
                if l.infinity_punctured {
                    v.push("inf".to_string());
                }
                v
            }
        }
    }
}

impl Serialize for Stratum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Stratum", 5)?;
        st.serialize_field("I", &self.components)?;
        st.serialize_field("N_I", &self.n_i)?;
        st.serialize_field("dim", &self.dim)?;
        match &self.point {
            Some(p) => st.serialize_field("point", &p.location.describe())?,
            None => st.serialize_field("point", &Option::<String>::None)?,
        }
        st.serialize_field("punctures", &self.puncture_labels())?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionData {
    pub germ: Polynomial,
    pub charts: Vec<Chart>,
    pub components: Vec<DivisorComponent>,
    pub strata: Vec<Stratum>,
    pub dual_graph: BTreeMap<usize, Vec<usize>>,
    pub blowups: usize,
    exceptional_count: usize,
}

impl ResolutionData {
    pub fn component(&self, id: usize) -> &DivisorComponent {
        &self.components[id]
    }

    pub fn exceptional(&self) -> impl Iterator<Item = &DivisorComponent> {
        self.components.iter().filter(|c| c.exceptional)
    }

    pub fn is_exceptional(&self, id: usize) -> bool {
        self.components[id].exceptional
    }

    /// Strata meeting the exceptional locus.
    pub fn exceptional_strata(&self) -> impl Iterator<Item = &Stratum> {
        self.strata
            .iter()
            .filter(|s| s.components.iter().any(|&i| self.components[i].exceptional))
    }

    pub fn dual_graph_edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (&i, adj) in &self.dual_graph {
            for &j in adj {
                if i < j {
                    e.push((i, j));
                }
            }
        }
        e
    }

    /// `(N, ν)` pairs of the exceptional components in birth order.
    pub fn exceptional_data(&self) -> Vec<(u32, u32)> {
        self.exceptional().map(|c| (c.n, c.nu)).collect()
    }
}

impl Serialize for ResolutionData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ResolutionData", 5)?;
        st.serialize_field("blowups", &self.blowups)?;
        st.serialize_field("charts", &self.charts.iter().map(ChartJson).collect::<Vec<_>>())?;
        st.serialize_field("components", &self.components)?;
        st.serialize_field("dual_graph", &self.dual_graph_edges())?;
        st.serialize_field("strata", &self.strata)?;
        st.end()
    }
}

struct ChartJson<'a>(&'a Chart);

impl Serialize for ChartJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.0;
        let mut m = s.serialize_map(None)?;
        let mut div = BTreeMap::new();
        let mut jac = BTreeMap::new();
        if let Some(i) = c.comp_a {
            div.insert(i.to_string(), (c.n_a, 0));
            jac.insert(i.to_string(), (c.j_a, 0));
        }
        if let Some(i) = c.comp_b {
            div.insert(i.to_string(), (0, c.n_b));
            jac.insert(i.to_string(), (0, c.j_b));
        }
        m.serialize_entry("divisor_exponents", &div)?;
        m.serialize_entry("id", &c.id)?;
        m.serialize_entry("jac_exponents", &jac)?;
        m.serialize_entry("kind", &c.kind)?;
        m.serialize_entry("map", &format!("x = {}, y = {}", c.x, c.y))?;
        m.serialize_entry("parent", &c.parent)?;
        m.serialize_entry("substitution", &c.substitution())?;
        m.serialize_entry("unit", &c.nonmonomial().to_string())?;
        m.end()
    }
}

struct Builder {
    germ: Polynomial,
    charts: Vec<Chart>,
    exceptional: Vec<(u32, u32)>,
    blowups: usize,
}

impl Builder {
    fn new(f: &Polynomial) -> Result<Self> {
        if f.nvars() != 2 {
            return Err(Error::InvalidInput("germ must be a polynomial in x, y".into()));
        }
        if f.is_zero() {
            return Err(Error::ZeroGerm);
        }
        if !f.constant_term().is_zero() {
            return Err(Error::NotAGerm(fmt_q(&f.constant_term())));
        }
        let parts = bivar::squarefree_decomposition(f);
        let constant = bivar::decomposition_constant(f, &parts);
        let groups = parts.into_iter().map(|(k, g)| (k, g.with_vars(&["a", "b"]))).collect();
        let base = Chart {
            id: 0,
            parent: None,
            kind: ChartKind::Base,
            center: Q::zero(),
            x: var(0),
            y: var(1),
            comp_a: None,
            comp_b: None,
            n_a: 0,
            n_b: 0,
            j_a: 0,
            j_b: 0,
            constant,
            unit: cst(Q::one()),
            groups,
            born: None,
            centers: vec![],
            children: vec![],
        };
        let b = Builder {
            germ: f.clone(),
            charts: vec![base],
            exceptional: vec![],
            blowups: 0,
        };
        b.check_pullback(0)?;
        Ok(b)
    }

    fn check_pullback(&self, id: usize) -> Result<()> {
        let c = &self.charts[id];
        let lhs = self.germ.compose(&[c.x.clone(), c.y.clone()]);
        let lhs = lhs.with_vars(&["a", "b"]);
        if lhs != c.pullback() {
            return Err(Error::InvalidInput(format!(
                "internal error: pullback identity fails in chart {id}"
            )));
        }
        Ok(())
    }

    /// Blows up `(0, s0)` of chart `id` (for B charts only the origin).
    fn blowup(&mut self, id: usize, s0: &Q) -> Result<(usize, usize)> {
        self.blowups += 1;
        if self.blowups > MAX_BLOWUPS {
            return Err(Error::ResolutionDiverged(MAX_BLOWUPS));
        }
        let parent = self.charts[id].clone();
        let e_id = self.exceptional.len();
        let through_b = s0.is_zero();
        let mut ids = [0usize; 2];
        let mut n_new = 0;
        let mut j_new = 0;
        for (slot, kind) in [ChartKind::A, ChartKind::B].into_iter().enumerate() {
            let (pa, pb) = match kind {
                ChartKind::A => (var(0), &cst(s0.clone()) + &(&var(0) * &var(1))),
                _ => (&var(0) * &var(1), &cst(s0.clone()) + &var(1)),
            };
            let phi = [pa, pb.clone()];
            // the new divisor is a = 0 in chart A and b = 0 in chart B
            let e_var = if kind == ChartKind::A { 0 } else { 1 };
            let mut unit = parent.unit.compose(&phi);
            if !through_b && parent.n_b > 0 {
                unit = &unit * &pb.pow(parent.n_b);
            }
            let mut from_groups = 0;
            let groups: Vec<(u32, Polynomial)> = parent
                .groups
                .iter()
                .map(|(k, g)| {
                    let h = g.compose(&phi);
                    let m = h.var_valuation(e_var);
                    from_groups += k * m;
                    (*k, h.div_var_power(e_var, m).expect("valuation divides"))
                })
                .collect();
            let (nb_in, jb_in) = if through_b { (parent.n_b, parent.j_b) } else { (0, 0) };
            n_new = parent.n_a + nb_in + from_groups;
            j_new = parent.j_a + jb_in + 1;
            let cid = self.charts.len();
            let mut chart = Chart {
                id: cid,
                parent: Some(id),
                kind,
                center: s0.clone(),
                x: parent.x.compose(&phi),
                y: parent.y.compose(&phi),
                comp_a: None,
                comp_b: None,
                n_a: 0,
                n_b: 0,
                j_a: 0,
                j_b: 0,
                constant: parent.constant.clone(),
                unit,
                groups,
                born: Some(e_id),
                centers: vec![],
                children: vec![],
            };
            if kind == ChartKind::A {
                chart.comp_a = Some(e_id);
                chart.n_a = n_new;
                chart.j_a = j_new;
                if through_b {
                    chart.comp_b = parent.comp_b;
                    chart.n_b = parent.n_b;
                    chart.j_b = parent.j_b;
                }
            } else {
                chart.comp_a = parent.comp_a;
                chart.n_a = parent.n_a;
                chart.j_a = parent.j_a;
                chart.comp_b = Some(e_id);
                chart.n_b = n_new;
                chart.j_b = j_new;
            }
            self.charts.push(chart);
            self.check_pullback(cid)?;
            ids[slot] = cid;
        }
        self.exceptional.push((n_new, j_new + 1));
        let p = &mut self.charts[id];
        p.centers.push(s0.clone());
        p.children.extend(ids);
        Ok((ids[0], ids[1]))
    }

    /// Points of the chart's responsible locus where the total transform is
    /// not normal crossings.
    fn bad_points(&self, id: usize) -> Result<Vec<Q>> {
        let c = &self.charts[id];
        let g = c.reduced_strict();
        match c.kind {
            ChartKind::Base => Ok(vec![]),
            ChartKind::A => {
                let line = restrict(&g, true);
                let mut bad = Vec::new();
                if !line.is_constant() {
                    let multiple = line.gcd(&line.derivative());
                    if !multiple.is_constant() {
                        let sf = multiple.squarefree();
                        let rr = rational_roots(&sf);
                        if rr.len() < sf.deg() {
                            return Err(Error::IrrationalCenter(format!(
                                "{sf} in chart {id}"
                            )));
                        }
                        bad.extend(rr);
                    }
                }
                if c.comp_b.is_some() && line.eval(&Q::zero()).is_zero() && !bad.contains(&Q::zero()) {
                    bad.push(Q::zero());
                }
                bad.retain(|s| !c.centers.contains(s));
                bad.sort();
                Ok(bad)
            }
            ChartKind::B => {
                let line = restrict(&g, false);
                let at0 = line.eval(&Q::zero()).is_zero();
                let bad = at0 && (c.comp_a.is_some() || root_multiplicity(&line, &Q::zero()) >= 2);
                if bad && !c.centers.contains(&Q::zero()) {
                    Ok(vec![Q::zero()])
                } else {
                    Ok(vec![])
                }
            }
        }
    }

    fn run(&mut self, start: Vec<usize>) -> Result<()> {
        let mut queue: VecDeque<usize> = start.into();
        while let Some(id) = queue.pop_front() {
            for s0 in self.bad_points(id)? {
                let (a, b) = self.blowup(id, &s0)?;
                queue.push_back(a);
                queue.push_back(b);
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<ResolutionData> {
        assemble(self.germ, self.charts, self.exceptional, self.blowups)
    }
}

fn sign_of_q(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_at(p: &UPoly, r: &RealRoot) -> i8 {
    match r.sign_of(p) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

fn assemble(
    germ: Polynomial,
    charts: Vec<Chart>,
    exceptional: Vec<(u32, u32)>,
    blowups: usize,
) -> Result<ResolutionData> {
    let mut components: Vec<DivisorComponent> = exceptional
        .iter()
        .enumerate()
        .map(|(id, &(n, nu))| DivisorComponent { id, n, nu, exceptional: true })
        .collect();
    let mut strata: Vec<Stratum> = Vec::new();
    let mut points: Vec<(usize, usize, PointData)> = Vec::new();
    let mut strict_points: Vec<(usize, u32, PointData)> = Vec::new();
    for e in 0..exceptional.len() {
        let ca = charts
            .iter()
            .find(|c| c.born == Some(e) && c.kind == ChartKind::A)
            .expect("chart A of every component");
        let cb = &charts[ca.id + 1];
        debug_assert!(cb.born == Some(e) && cb.kind == ChartKind::B);
        // restriction of the non-monomial part times the other axis
        let rest_a = &ca.nonmonomial() * &var(1).pow(ca.n_b);
        let w_a = restrict(&rest_a, true);
        let rest_b = &cb.nonmonomial() * &var(0).pow(cb.n_a);
        let w_b = restrict(&rest_b, false);
        let roots = real_roots(&w_a);
        let mut punct = roots.clone();
        punct.extend(ca.centers.iter().cloned().map(RealRoot::Rational));
        let punct = crate::motives::dedup_points(&punct);
        let infinity = w_b.eval(&Q::zero()).is_zero() || !cb.centers.is_empty();
        let extra_centers = ca.centers.iter().filter(|c| !w_a.eval(c).is_zero()).count();
        let complex = w_a.distinct_complex_roots() + extra_centers + infinity as usize;
        strata.push(Stratum {
            components: vec![e],
            dim: 1,
            n_i: exceptional[e].0,
            line: Some(LineData {
                chart_a: ca.id,
                chart_b: cb.id,
                w_a,
                w_b,
                punctures: punct,
                centers: ca.centers.clone(),
                infinity_punctured: infinity,
                complex_punctures: complex,
            }),
            point: None,
        });
        // chart A: corner at 0 and strict branches along the line
        let nm_a = ca.nonmonomial();
        if let Some(other) = ca.comp_b {
            if !ca.centers.contains(&Q::zero()) {
                let u = restrict(&nm_a, true);
                let v = u.eval(&Q::zero());
                debug_assert!(!v.is_zero());
                points.push((e, other, PointData {
                    chart: ca.id,
                    location: RealRoot::Rational(Q::zero()),
                    unit_sign: sign_of_q(&v),
                    unit_poly: u,
                }));
            }
        }
        let gline = restrict(&ca.reduced_strict(), true);
        for r in real_roots(&gline) {
            if let Some(q) = r.as_rational() {
                if ca.centers.contains(q) || (q.is_zero() && ca.comp_b.is_some()) {
                    continue;
                }
            }
            let k_idx = ca
                .groups
                .iter()
                .position(|(_, g)| sign_at(&restrict(g, true), &r) == 0)
                .expect("branch lies on some group");
            let k = ca.groups[k_idx].0;
            let rest = &(&ca.unit * &ca.product_of_groups(Some(k_idx))).scale(&ca.constant)
                * &var(1).pow(ca.n_b);
            let u = restrict(&rest, true);
            let sg = sign_at(&u, &r);
            debug_assert!(sg != 0);
            strict_points.push((e, k, PointData { chart: ca.id, location: r, unit_poly: u, unit_sign: sg }));
        }
        // chart B: its origin
        if !cb.centers.contains(&Q::zero()) {
            let nm_b = cb.nonmonomial();
            if let Some(other) = cb.comp_a {
                let u = restrict(&nm_b, false);
                let v = u.eval(&Q::zero());
                debug_assert!(!v.is_zero());
                points.push((e, other, PointData {
                    chart: cb.id,
                    location: RealRoot::Rational(Q::zero()),
                    unit_sign: sign_of_q(&v),
                    unit_poly: u,
                }));
            } else {
                let h = restrict(&cb.reduced_strict(), false);
                if h.eval(&Q::zero()).is_zero() {
                    let k_idx = cb
                        .groups
                        .iter()
                        .position(|(_, g)| restrict(g, false).eval(&Q::zero()).is_zero())
                        .expect("branch lies on some group");
                    let k = cb.groups[k_idx].0;
                    let rest = (&cb.unit * &cb.product_of_groups(Some(k_idx))).scale(&cb.constant);
                    let u = restrict(&rest, false);
                    let v = u.eval(&Q::zero());
                    strict_points.push((e, k, PointData {
                        chart: cb.id,
                        location: RealRoot::Rational(Q::zero()),
                        unit_sign: sign_of_q(&v),
                        unit_poly: u,
                    }));
                }
            }
        }
    }
    for (e, other, p) in points {
        let n_i = exceptional[e].0.gcd(&exceptional[other].0);
        let mut comps = vec![e, other];
        comps.sort();
        strata.push(Stratum { components: comps, dim: 0, n_i, line: None, point: Some(p) });
    }
    for (e, k, p) in strict_points {
        let id = components.len();
        components.push(DivisorComponent { id, n: k, nu: 1, exceptional: false });
        strata.push(Stratum {
            components: vec![e, id],
            dim: 0,
            n_i: exceptional[e].0.gcd(&k),
            line: None,
            point: Some(p),
        });
    }
    let mut dual_graph: BTreeMap<usize, Vec<usize>> = components.iter().map(|c| (c.id, vec![])).collect();
    for s in strata.iter().filter(|s| s.dim == 0) {
        let (i, j) = (s.components[0], s.components[1]);
        dual_graph.get_mut(&i).unwrap().push(j);
        dual_graph.get_mut(&j).unwrap().push(i);
    }
    for adj in dual_graph.values_mut() {
        adj.sort();
    }
    let res = ResolutionData {
        germ,
        charts,
        components,
        strata,
        dual_graph,
        blowups,
        exceptional_count: exceptional.len(),
    };
    check_invariants(&res)?;
    Ok(res)
}

fn check_invariants(res: &ResolutionData) -> Result<()> {
    let fail = |m: String| Err(Error::InvalidInput(format!("internal error: {m}")));
    // exceptional components form a connected subgraph
    let exc: Vec<usize> = res.exceptional().map(|c| c.id).collect();
    if let Some(&start) = exc.first() {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &j in &res.dual_graph[&i] {
                if res.is_exceptional(j) && seen.insert(j) {
                    stack.push(j);
                }
            }
        }
        if seen.len() != exc.len() {
            return fail("exceptional divisor is disconnected".into());
        }
    }
    // every real puncture of E^0 is exactly one adjacent point stratum
    for s in res.strata.iter().filter(|s| s.dim == 1) {
        let l = s.line.as_ref().unwrap();
        let e = s.components[0];
        let real = l.punctures.len() + l.infinity_punctured as usize;
        let adjacent = res
            .strata
            .iter()
            .filter(|p| p.dim == 0 && p.components.contains(&e))
            .count();
        if real != adjacent {
            return fail(format!("component {e}: {real} punctures but {adjacent} adjacent points"));
        }
    }
    Ok(())
}

pub fn embedded_resolution(f: &Polynomial) -> Result<ResolutionData> {
    let mut b = Builder::new(f)?;
    // always blow up the origin so the preimage of 0 is divisorial
    let (ca, cb) = b.blowup(0, &Q::zero())?;
    b.run(vec![ca, cb])?;
    b.finish()
}

/// A point on an exceptional component, in its chart-A coordinate
/// (`None` is the point at infinity, the origin of chart B).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtraCenter {
    pub component: usize,
    pub at: Option<Q>,
}

/// Blows up one more point of the exceptional divisor.
pub fn extra_blowup(res: &ResolutionData, center: &ExtraCenter) -> Result<ResolutionData> {
    if center.component >= res.exceptional_count {
        return Err(Error::NonRationalCenter(format!(
            "component {} is not exceptional",
            center.component
        )));
    }
    let mut b = Builder {
        germ: res.germ.clone(),
        charts: res.charts.clone(),
        exceptional: res.exceptional().map(|c| (c.n, c.nu)).collect(),
        blowups: res.blowups,
    };
    let ca = b
        .charts
        .iter()
        .find(|c| c.born == Some(center.component) && c.kind == ChartKind::A)
        .map(|c| c.id)
        .expect("chart A of every component");
    let (chart, s0) = match &center.at {
        Some(s) => (ca, s.clone()),
        None => (ca + 1, Q::zero()),
    };
    if b.charts[chart].centers.contains(&s0) {
        return Err(Error::NonRationalCenter(format!(
            "point {} of component {} is already blown up",
            fmt_q(&s0),
            center.component
        )));
    }
    let (x, y) = b.blowup(chart, &s0)?;
    b.run(vec![x, y])?;
    b.finish()
}

/// The unit of `f∘σ` restricted to a stratum in one of its charts: a
/// polynomial in the line coordinate for curves, a constant for points (the
/// unit polynomial itself when the point is irrational).
pub fn unit_on_stratum(res: &ResolutionData, s: &Stratum, chart: usize) -> Result<Polynomial> {
    let one = |p: &UPoly, v: &str| p.to_poly(&[v.to_string()], 0);
    if let Some(l) = &s.line {
        if chart == l.chart_a {
            return Ok(one(&l.w_a, "b"));
        }
        if chart == l.chart_b {
            return Ok(one(&l.w_b, "a"));
        }
    }
    if let Some(p) = &s.point {
        if chart == p.chart {
            let var = if res.charts[chart].kind == ChartKind::A { "b" } else { "a" };
            return Ok(match p.unit_value() {
                Some(v) => Polynomial::constant_in(&[var.to_string()], v),
                None => one(&p.unit_poly, var),
            });
        }
    }
    Err(Error::NoPresentation(chart))
}
