//! The closed catalog of formula shapes whose β is computable.

use super::curve::{beta_positive_locus, dedup_points, same_point, superelliptic_beta, SignSemantics};
use super::BetaPoly;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::upoly::{real_roots, RealRoot, UPoly};

/// Right-hand side of the cover equation `t^N w = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveTarget {
    One,
    MinusOne,
}

#[derive(Clone, Debug)]
pub enum CurveDescriptor {
    FinitePoints(u32),
    /// The affine line minus `k` points.
    PuncturedLine(u32),
    /// `{(s, t) : s ∉ punctures, t^n w(s) = ±1}`. Real roots of `w` must be
    /// among the punctures.
    Superelliptic {
        n: u32,
        w: UPoly,
        punctures: Vec<RealRoot>,
        target: CurveTarget,
    },
}

pub fn beta_curve(c: &CurveDescriptor) -> Result<BetaPoly> {
    match c {
        CurveDescriptor::FinitePoints(k) => Ok(BetaPoly::int(*k as i64)),
        CurveDescriptor::PuncturedLine(k) => Ok(&BetaPoly::u() - &BetaPoly::int(*k as i64)),
        CurveDescriptor::Superelliptic { n, w, punctures, target } => {
            for r in real_roots(w) {
                if !punctures.iter().any(|p| same_point(p, &r)) {
                    return Err(Error::UnitVanishesOnStratum(format!(
                        "{w} vanishes at {} which is not a puncture",
                        r.describe()
                    )));
                }
            }
            let c = match target {
                CurveTarget::One => Q::from_integer(1.into()),
                CurveTarget::MinusOne => Q::from_integer((-1).into()),
            };
            superelliptic_beta(*n, w, &c, punctures)
        }
    }
}

#[derive(Clone, Debug)]
pub enum Shape {
    Points(u32),
    /// `A^k`.
    Affine(u32),
    /// `(R*)^k`.
    Torus(u32),
    ProjectiveLine,
    /// `P^1` minus `k` points.
    PuncturedProjectiveLine(u32),
    Curve(CurveDescriptor),
    Product(Vec<Shape>),
    DisjointUnion(Vec<Shape>),
}

pub fn beta_constructible(s: &Shape) -> Result<BetaPoly> {
    Ok(match s {
        Shape::Points(k) => BetaPoly::int(*k as i64),
        Shape::Affine(k) => BetaPoly::u_pow(*k as i32),
        Shape::Torus(k) => BetaPoly::torus().pow(*k),
        Shape::ProjectiveLine => &BetaPoly::u() + &BetaPoly::one(),
        Shape::PuncturedProjectiveLine(k) => {
            &(&BetaPoly::u() + &BetaPoly::one()) - &BetaPoly::int(*k as i64)
        }
        Shape::Curve(c) => beta_curve(c)?,
        Shape::Product(v) => {
            let mut acc = BetaPoly::one();
            for x in v {
                acc = &acc * &beta_constructible(x)?;
            }
            acc
        }
        Shape::DisjointUnion(v) => {
            let mut acc = BetaPoly::zero();
            for x in v {
                acc += &beta_constructible(x)?;
            }
            acc
        }
    })
}

/// Sign condition attached to a [`FormulaAtom`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    Positive,
    Negative,
    Zero,
    NonZero,
}

/// `L × A^affine × (R*)^torus`, where `L` is the line minus rational
/// punctures, optionally cut by one sign condition on a polynomial in the
/// line coordinate.
#[derive(Clone, Debug)]
pub struct FormulaAtom {
    punctures: Vec<Q>,
    affine: u32,
    torus: u32,
    condition: Option<(UPoly, Condition)>,
}

impl FormulaAtom {
    /// `line` selects whether the first factor is a (punctured) line; without
    /// it the atom is a product of affine and torus factors only, and a sign
    /// condition is rejected.
    pub fn new(line_punctures: Option<Vec<Q>>, affine: u32, torus: u32) -> Self {
        match line_punctures {
            Some(p) => FormulaAtom { punctures: p, affine, torus, condition: None },
            // R* = line minus the origin
            None if torus > 0 => FormulaAtom {
                punctures: vec![Q::from_integer(0.into())],
                affine,
                torus: torus - 1,
                condition: None,
            },
            None if affine > 0 => FormulaAtom { punctures: vec![], affine: affine - 1, torus, condition: None },
            None => FormulaAtom { punctures: vec![], affine: 0, torus: 0, condition: None }.point(),
        }
    }

    fn point(mut self) -> Self {
        // encode a point as the line cut by s = 0
        self.condition = Some((UPoly::from_ints(&[0, 1]), Condition::Zero));
        self
    }

    pub fn line() -> Self {
        Self::new(Some(vec![]), 0, 0)
    }

    pub fn with_condition(&self, p: UPoly, c: Condition) -> Result<Self> {
        if self.condition.is_some() {
            return Err(Error::UnsupportedShape("at most one sign condition per atom".into()));
        }
        let mut a = self.clone();
        a.condition = Some((p, c));
        Ok(a)
    }

    fn factor(&self) -> BetaPoly {
        &BetaPoly::u_pow(self.affine as i32) * &BetaPoly::torus().pow(self.torus)
    }

    fn base_points(&self) -> Vec<RealRoot> {
        dedup_points(&self.punctures.iter().cloned().map(RealRoot::Rational).collect::<Vec<_>>())
    }

    fn line_beta(&self) -> BetaPoly {
        &BetaPoly::u() - &BetaPoly::int(self.base_points().len() as i64)
    }

    fn zero_count(&self, p: &UPoly) -> i64 {
        if p.is_zero() {
            return i64::MAX;
        }
        let pts = self.base_points();
        real_roots(p)
            .into_iter()
            .filter(|r| !pts.iter().any(|q| same_point(q, r)))
            .count() as i64
    }

    pub fn beta(&self, sem: SignSemantics) -> BetaPoly {
        let line = match &self.condition {
            None => self.line_beta(),
            Some((p, c)) => {
                let pts = self.base_points();
                match c {
                    Condition::Zero if p.is_zero() => self.line_beta(),
                    Condition::NonZero if p.is_zero() => BetaPoly::zero(),
                    Condition::Zero => BetaPoly::int(self.zero_count(p)),
                    Condition::NonZero => &self.line_beta() - &BetaPoly::int(self.zero_count(p)),
                    Condition::Positive => beta_positive_locus(p, &pts, sem),
                    Condition::Negative => beta_positive_locus(&-p, &pts, sem),
                }
            }
        };
        &line * &self.factor()
    }
}

/// `β([A, p > 0])` by the sign recursion.
pub fn beta_sign_recursion(base: &FormulaAtom, p: &UPoly, sem: SignSemantics) -> Result<BetaPoly> {
    Ok(base.with_condition(p.clone(), Condition::Positive)?.beta(sem))
}

/// Checks `[A, q=0] + [A, q≠0] = [A]` and `[A, q>0] + [A, q<0] + [A, q=0] = [A]`.
pub fn verify_relations(sample: &FormulaAtom, q: &UPoly, sem: SignSemantics) -> Result<bool> {
    if sample.condition.is_some() {
        return Err(Error::UnsupportedShape("relations are checked on unconditioned atoms".into()));
    }
    if q.is_zero() {
        return Err(Error::UnsupportedShape("q must be a nonzero polynomial".into()));
    }
    let whole = sample.beta(sem);
    let with = |c| sample.with_condition(q.clone(), c).map(|a| a.beta(sem));
    let zero = with(Condition::Zero)?;
    let nonzero = with(Condition::NonZero)?;
    let pos = with(Condition::Positive)?;
    let neg = with(Condition::Negative)?;
    let r1 = &zero + &nonzero == whole;
    let r2 = &(&pos + &neg) + &zero == whole;
    Ok(r1 && r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn b(s: &str) -> BetaPoly {
        BetaPoly::parse(s).unwrap()
    }

    #[test]
    fn constructible_examples() {
        let hyperbola = CurveDescriptor::Superelliptic {
            n: 1,
            w: UPoly::from_ints(&[0, 1]),
            punctures: vec![RealRoot::Rational(qi(0))],
            target: CurveTarget::One,
        };
        assert_eq!(beta_curve(&hyperbola).unwrap(), b("u - 1"));
        let two_lines = Shape::DisjointUnion(vec![Shape::Affine(1), Shape::Affine(1)]);
        assert_eq!(beta_constructible(&two_lines).unwrap(), b("2*u"));
        assert_eq!(beta_constructible(&Shape::ProjectiveLine).unwrap(), b("u + 1"));
        assert_eq!(
            beta_constructible(&Shape::Product(vec![Shape::Torus(1), Shape::Affine(2)])).unwrap(),
            b("u^3 - u^2")
        );
    }

    #[test]
    fn curve_examples() {
        let w = UPoly::from_ints(&[0, 1]);
        let c = CurveDescriptor::Superelliptic {
            n: 2,
            w: w.clone(),
            punctures: vec![RealRoot::Rational(qi(0))],
            target: CurveTarget::One,
        };
        assert_eq!(beta_curve(&c).unwrap(), b("u - 1"));
        let bad = CurveDescriptor::Superelliptic { n: 2, w, punctures: vec![], target: CurveTarget::One };
        assert!(matches!(beta_curve(&bad), Err(Error::UnitVanishesOnStratum(_))));
        let neg = CurveDescriptor::Superelliptic {
            n: 2,
            w: UPoly::from_ints(&[1, 0, 1]),
            punctures: vec![],
            target: CurveTarget::MinusOne,
        };
        assert_eq!(beta_curve(&neg).unwrap(), b("0"));
    }

    #[test]
    fn sign_recursion_on_the_line() {
        let line = FormulaAtom::line();
        let s = UPoly::from_ints(&[0, 1]);
        let half = beta_sign_recursion(&line, &s, SignSemantics::Literal).unwrap();
        assert_eq!(half, b("1/2*u - 1/2"));
        assert_eq!(half.chi_c(), qi(-1));
        assert_eq!(beta_sign_recursion(&line, &UPoly::from_ints(&[1]), SignSemantics::Literal).unwrap(), b("u"));
        assert_eq!(beta_sign_recursion(&line, &UPoly::from_ints(&[-1]), SignSemantics::Literal).unwrap(), b("0"));
    }

    #[test]
    fn relation_examples() {
        for sem in [SignSemantics::Literal, SignSemantics::Reduced] {
            let line = FormulaAtom::line();
            assert!(verify_relations(&line, &UPoly::from_ints(&[0, 1]), sem).unwrap());
            assert!(verify_relations(&line, &UPoly::from_ints(&[1]), sem).unwrap());
            let torus2 = FormulaAtom::new(None, 0, 2);
            assert!(verify_relations(&torus2, &UPoly::from_ints(&[0, 1]), sem).unwrap());
            let pos = torus2
                .with_condition(UPoly::from_ints(&[0, 1]), Condition::Positive)
                .unwrap()
                .beta(sem);
            assert_eq!(pos, b("1/2*u^2 - u + 1/2"));
        }
    }
}
