//! Real motivic zeta functions, motivic Milnor fibres and tubes, and A'Campo
//! Lefschetz numbers, assembled from the strata of an embedded resolution.

use crate::error::{Error, Result};
use crate::motives::{beta_positive_locus, superelliptic_beta, BetaPoly, SignSemantics};
use crate::rational::{qi, Q};
use crate::resolve::{ResolutionData, Stratum};
use crate::upoly::{RealRoot, UPoly};
use crate::Symbol;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverClass {
    /// Index into `ResolutionData::strata`.
    pub stratum: usize,
    pub symbol: Symbol,
    pub beta: BetaPoly,
}

/// `coefficient · ∏ u^{−ν}T^N / (1 − u^{−ν}T^N)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaTerm {
    #[serde(rename = "I")]
    pub components: Vec<usize>,
    pub coefficient: BetaPoly,
    /// `(N, ν)` per component of the stratum.
    pub factors: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaFunction {
    pub symbol: Symbol,
    pub terms: Vec<ZetaTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AcampoVariant {
    /// Sum over single exceptional components (the classical formula).
    Single,
    /// Sum over all nonempty sets of exceptional components.
    Subset,
}

impl std::str::FromStr for AcampoVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(AcampoVariant::Single),
            "subset" => Ok(AcampoVariant::Subset),
            _ => Err(Error::InvalidInput(format!("unknown A'Campo variant `{s}`"))),
        }
    }
}

/// Class of `{t ∈ R* : t^n c ⋄ 0}` or `{t^n c = ±1}` for a point with unit sign `sgn`.
fn point_class(n: u32, sgn: i8, e: Symbol) -> BetaPoly {
    let even = n % 2 == 0;
    let matches = sgn * e.sign() > 0;
    if e.is_tube() {
        match (even, matches) {
            (false, _) => BetaPoly::torus().scale(&BetaPoly::half()),
            (true, true) => BetaPoly::torus(),
            (true, false) => BetaPoly::zero(),
        }
    } else {
        match (even, matches) {
            (false, _) => BetaPoly::one(),
            (true, true) => BetaPoly::int(2),
            (true, false) => BetaPoly::zero(),
        }
    }
}

/// One chart presentation of an exceptional line: cover of `{w ≠ 0} ∖ punctures`.
fn chart_class(n: u32, w: &UPoly, punctures: &[RealRoot], e: Symbol, sem: SignSemantics) -> Result<BetaPoly> {
    if w.is_zero() {
        return Err(Error::UnitVanishesOnStratum("restricted unit is zero".into()));
    }
    if !e.is_tube() {
        return superelliptic_beta(n, w, &qi(e.sign() as i64), punctures);
    }
    let pts = crate::motives::dedup_points(
        &punctures
            .iter()
            .cloned()
            .chain(crate::upoly::real_roots(w))
            .collect::<Vec<_>>(),
    );
    if n % 2 == 1 {
        let base = &BetaPoly::u() - &BetaPoly::int(pts.len() as i64);
        return Ok(&base * &BetaPoly::torus().scale(&BetaPoly::half()));
    }
    let signed = w.scale(&qi(e.sign() as i64));
    Ok(&beta_positive_locus(&signed, &pts, sem) * &BetaPoly::torus())
}

pub fn cover_class(res: &ResolutionData, index: usize, e: Symbol) -> Result<CoverClass> {
    cover_class_with(res, index, e, SignSemantics::default())
}

/// Cover class of one stratum by inclusion–exclusion over its charts.
pub fn cover_class_with(res: &ResolutionData, index: usize, e: Symbol, sem: SignSemantics) -> Result<CoverClass> {
    let s: &Stratum = &res.strata[index];
    if !s.components.iter().any(|&i| res.is_exceptional(i)) {
        return Err(Error::InvalidInput("stratum does not meet the exceptional divisor".into()));
    }
    let beta = if let Some(p) = &s.point {
        if p.unit_sign == 0 {
            return Err(Error::UnitVanishesOnStratum(format!("point {}", p.location.describe())));
        }
        point_class(s.n_i, p.unit_sign, e)
    } else {
        let l = s.line.as_ref().expect("line data on curve strata");
        // chart A misses ∞, chart B misses the chart-A origin
        let a = chart_class(s.n_i, &l.w_a, &l.punctures, e, sem)?;
        let b = chart_class(s.n_i, &l.w_b, &l.chart_b_punctures(), e, sem)?;
        let mut overlap_p = l.punctures.clone();
        overlap_p.push(RealRoot::Rational(Q::from_integer(0.into())));
        let overlap = chart_class(s.n_i, &l.w_a, &overlap_p, e, sem)?;
        &(&a + &b) - &overlap
    };
    Ok(CoverClass { stratum: index, symbol: e, beta })
}

pub fn zeta_rational(res: &ResolutionData, e: Symbol) -> Result<ZetaFunction> {
    zeta_rational_with(res, e, SignSemantics::default())
}

pub fn zeta_rational_with(res: &ResolutionData, e: Symbol, sem: SignSemantics) -> Result<ZetaFunction> {
    let terms = (0..res.strata.len())
        .into_par_iter()
        .map(|i| {
            let s = &res.strata[i];
            let class = cover_class_with(res, i, e, sem)?;
            let coefficient = &BetaPoly::torus().pow(s.components.len() as u32 - 1) * &class.beta;
            let factors = s
                .components
                .iter()
                .map(|&c| (res.component(c).n, res.component(c).nu))
                .collect();
            Ok(ZetaTerm { components: s.components.clone(), coefficient, factors })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZetaFunction { symbol: e, terms })
}

/// `Σ u^{−Σν_i m_i}` over `m_i ≥ 1` with `Σ N_i m_i = k`.
fn factor_coefficient(factors: &[(u32, u32)], k: u32) -> BetaPoly {
    match factors.split_first() {
        None => {
            if k == 0 {
                BetaPoly::one()
            } else {
                BetaPoly::zero()
            }
        }
        Some((&(n, nu), rest)) => {
            let mut acc = BetaPoly::zero();
            let mut m = 1;
            while n * m <= k {
                let tail = factor_coefficient(rest, k - n * m);
                if !tail.is_zero() {
                    acc += &tail.shift(-((nu * m) as i32));
                }
                m += 1;
            }
            acc
        }
    }
}

impl ZetaFunction {
    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient.is_zero())
    }

    /// Coefficient of `T^k`.
    pub fn coefficient(&self, k: u32) -> BetaPoly {
        self.terms
            .iter()
            .filter(|t| !t.coefficient.is_zero())
            .map(|t| &t.coefficient * &factor_coefficient(&t.factors, k))
            .sum()
    }

    /// The formal limit `−lim_{T→∞}`: every factor becomes `−1`.
    pub fn limit(&self) -> BetaPoly {
        self.terms
            .iter()
            .map(|t| {
                let sign = if t.factors.len() % 2 == 0 { 1 } else { -1 };
                t.coefficient.scale(&qi(-sign))
            })
            .sum()
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .filter(|t| !t.coefficient.is_zero())
            .map(|t| {
                let fs: Vec<String> = t
                    .factors
                    .iter()
                    .map(|(n, nu)| format!("u^-{nu}*T^{n}/(1 - u^-{nu}*T^{n})"))
                    .collect();
                format!("({})*{}", t.coefficient, fs.join("*"))
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Coefficients of `T^1 … T^K`.
pub fn series_expand(z: &ZetaFunction, k_max: u32) -> Vec<BetaPoly> {
    (1..=k_max).into_par_iter().map(|k| z.coefficient(k)).collect()
}

pub fn motivic_fibre(res: &ResolutionData, e: Symbol) -> Result<BetaPoly> {
    motivic_fibre_with(res, e, SignSemantics::default())
}

/// `S^ε = Σ (1 − u)^{|I|−1} [Ẽ_I^{0,ε}]`, computed directly from the strata.
pub fn motivic_fibre_with(res: &ResolutionData, e: Symbol, sem: SignSemantics) -> Result<BetaPoly> {
    let one_minus_u = &BetaPoly::one() - &BetaPoly::u();
    (0..res.strata.len())
        .map(|i| {
            let c = cover_class_with(res, i, e, sem)?;
            Ok(&one_minus_u.pow(res.strata[i].components.len() as u32 - 1) * &c.beta)
        })
        .sum()
}

/// Complex Euler characteristic of `E_i^0`.
pub fn complex_euler(res: &ResolutionData, component: usize) -> i64 {
    res.strata
        .iter()
        .find(|s| s.dim == 1 && s.components == [component])
        .and_then(|s| s.line.as_ref())
        .map(|l| 2 - l.complex_punctures as i64)
        .unwrap_or(0)
}

/// `Λ(h^k) = Σ N_I χ(E_I^0)` over exceptional strata with `N_I | k`.
pub fn acampo_lefschetz(res: &ResolutionData, k: u64, variant: AcampoVariant) -> i64 {
    let divides = |n: u32| k % n as u64 == 0;
    let mut total = 0;
    for c in res.exceptional() {
        if divides(c.n) {
            total += c.n as i64 * complex_euler(res, c.id);
        }
    }
    if variant == AcampoVariant::Subset {
        // pairs of exceptional components meet in points (χ = 1); the
        // exceptional divisor is a tree, so no triple intersections occur
        for s in res.strata.iter().filter(|s| s.dim == 0) {
            if s.components.iter().all(|&i| res.is_exceptional(i)) && divides(s.n_i) {
                total += s.n_i as i64;
            }
        }
    }
    total
}

/// `lcm{N_i : i exceptional}`, the period of `k ↦ Λ(h^k)`.
pub fn acampo_period(res: &ResolutionData) -> u64 {
    res.exceptional().fold(1u64, |acc, c| acc.lcm(&(c.n as u64)))
}

/// `χ_c(S^ε)` as an integer (β evaluated at `u = −1`).
pub fn chi_tilde(s: &BetaPoly) -> Result<i64> {
    let v = s.chi_c();
    if !v.is_integer() {
        return Err(Error::InvalidInput(format!("non-integral Euler characteristic {v}")));
    }
    use num_traits::ToPrimitive;
    v.to_integer().to_i64().ok_or_else(|| Error::InvalidInput("Euler characteristic overflow".into()))
}
